use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

use super::partition::Partition;

/// Basis state `h(-n1)...h(-nk) 1 (x) e_omega`. `omega` is 0-based; text
/// formats print it 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FockState {
    pub partition: Partition,
    pub omega: usize,
}

impl FockState {
    pub fn new(partition: Partition, omega: usize) -> Self {
        FockState { partition, omega }
    }

    pub fn level(&self) -> u32 {
        self.partition.size()
    }
}

/// Finite rational combination of basis states. Zero coefficients are never
/// stored and iteration follows basis order.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct ModuleVector {
    terms: BTreeMap<FockState, Rational>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(state: FockState) -> Self {
        let mut v = Self::zero();
        v.terms.insert(state, Rational::one());
        v
    }

    /// `h(-parts[0]) ... h(-parts[k-1]) 1 (x) e_omega`.
    pub fn monomial(parts: &[u32], omega: usize) -> Result<Self> {
        Ok(Self::basis(FockState::new(Partition::new(parts.to_vec())?, omega)))
    }

    /// `1 (x) e_omega`.
    pub fn vacuum(omega: usize) -> Self {
        Self::basis(FockState::new(Partition::empty(), omega))
    }

    pub fn from_terms<I: IntoIterator<Item = (FockState, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (s, c) in terms {
            v.add_term(s, &c);
        }
        v
    }

    pub fn from_map(terms: BTreeMap<FockState, Rational>) -> Self {
        Self::from_terms(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &Rational)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<FockState, Rational> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<FockState, Rational> {
        self.terms
    }

    pub fn coefficient(&self, s: &FockState) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    /// First term in basis order.
    pub fn leading(&self) -> Option<(&FockState, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, s: FockState, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            self.add_term(s.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> ModuleVector {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect(),
        }
    }

    pub fn min_level(&self) -> Option<u32> {
        self.terms.keys().map(FockState::level).min()
    }

    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(FockState::level).max()
    }

    pub fn max_part(&self) -> u32 {
        self.terms.keys().map(|s| s.partition.max_part()).max().unwrap_or(0)
    }

    /// Component at a single level.
    pub fn level_part(&self, level: u32) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.level() == level)
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into nonzero homogeneous level components.
    pub fn level_components(&self) -> BTreeMap<u32, ModuleVector> {
        let mut out: BTreeMap<u32, ModuleVector> = BTreeMap::new();
        for (s, c) in &self.terms {
            out.entry(s.level())
                .or_default()
                .terms
                .insert(s.clone(), c.clone());
        }
        out
    }

    /// Applies a linear map to the Omega leg: `e_j -> sum_i c_i e_i`.
    pub fn map_omega<F>(&self, mut f: F) -> ModuleVector
    where
        F: FnMut(usize) -> Vec<(usize, Rational)>,
    {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            for (i, x) in f(s.omega) {
                out.add_term(FockState::new(s.partition.clone(), i), &(c * &x));
            }
        }
        out
    }

    /// Multiplies every state by the creation monomial of `p`.
    pub fn create(&self, p: &Partition) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (FockState::new(s.partition.union(p), s.omega), c.clone()))
                .collect(),
        }
    }

    /// Omega indices touched by the vector.
    pub fn omega_support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|s| s.omega).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// One line per term: `n1,...,nk | j | p/q`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (s, c) in &self.terms {
            out.push_str(&format!(
                "{} | {} | {}\n",
                s.partition,
                s.omega + 1,
                format_rational(c)
            ));
        }
        out
    }

    /// Inverse of [`ModuleVector::to_lines`]; blank lines are ignored.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut v = Self::zero();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('|').collect();
            let [p, j, c] = fields.as_slice() else {
                return Err(Error::Parse(format!("line {}: expected 3 fields", no + 1)));
            };
            let partition: Partition = p.parse()?;
            let j: usize = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad omega index", no + 1)))?;
            if j == 0 {
                return Err(Error::Parse(format!("line {}: omega index is 1-based", no + 1)));
            }
            v.add_term(FockState::new(partition, j - 1), &parse_rational(c)?);
        }
        Ok(v)
    }
}

impl Add for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &ModuleVector {
    type Output = ModuleVector;
    fn neg(self) -> ModuleVector {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[{}]e{}", c, s.partition, s.omega + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn no_zero_coefficients_stored() {
        let v = ModuleVector::monomial(&[2, 1], 0).unwrap();
        let w = &v - &v;
        assert!(w.is_zero());
        assert_eq!(w.len(), 0);
        assert!(v.scale(&int(0)).is_zero());
    }

    #[test]
    fn line_format_round_trip() {
        let mut v = ModuleVector::vacuum(1).scale(&rat(-3, 4));
        v.add_scaled(&ModuleVector::monomial(&[1, 3], 0).unwrap(), &int(2));
        let text = v.to_lines();
        assert_eq!(text, "- | 2 | -3/4\n3,1 | 1 | 2\n");
        assert_eq!(ModuleVector::parse_lines(&text).unwrap(), v);
        assert!(ModuleVector::parse_lines("1 | 0 | 1").is_err());
        assert!(ModuleVector::parse_lines("1 | 1").is_err());
    }

    #[test]
    fn level_components_split() {
        let v = &ModuleVector::vacuum(0) + &ModuleVector::monomial(&[1], 0).unwrap();
        let c = v.level_components();
        assert_eq!(c.len(), 2);
        assert_eq!(v.min_level(), Some(0));
        assert_eq!(v.max_level(), Some(1));
    }
}
