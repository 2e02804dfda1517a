use std::fmt::{self, Write as _};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::OmegaSpec;
use crate::scalar::Rational;

use super::{chain_vector, vir_submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Singular,
    Subsingular,
    Subsubsingular,
}

impl Tier {
    pub fn from_index(t: usize) -> Option<Tier> {
        match t {
            1 => Some(Tier::Singular),
            2 => Some(Tier::Subsingular),
            3 => Some(Tier::Subsubsingular),
            _ => None,
        }
    }

    /// Position in the Omega chain, starting at 1.
    pub fn index(self) -> usize {
        match self {
            Tier::Singular => 1,
            Tier::Subsingular => 2,
            Tier::Subsubsingular => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tier::Singular => "singular",
            Tier::Subsingular => "subsingular",
            Tier::Subsubsingular => "subsubsingular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    pub tier: Tier,
    pub m: u32,
    pub weight: u32,
}

impl DiagramNode {
    /// `u^m`, `u^{2,m}` or `u^{3,m}`.
    pub fn label(&self) -> String {
        match self.tier {
            Tier::Singular => format!("u^{}", self.m),
            t => format!("u^{{{},{}}}", t.index(), self.m),
        }
    }
}

/// Nodes `u^{t,m}` with `m^2` within the bound; an arrow `s -> t` means `t`
/// was found in the Virasoro submodule generated by `s`. Only pairs in
/// adjacent tiers are tested, and each tested pair is recorded in `tested`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDiagram {
    pub weight_bound: u32,
    pub nodes: Vec<DiagramNode>,
    pub arrows: Vec<(usize, usize)>,
    pub tested: Vec<(usize, usize)>,
}

impl StructureDiagram {
    pub fn node_index(&self, tier: Tier, m: u32) -> Option<usize> {
        self.nodes.iter().position(|n| n.tier == tier && n.m == m)
    }

    pub fn has_arrow(&self, from: (Tier, u32), to: (Tier, u32)) -> bool {
        match (self.node_index(from.0, from.1), self.node_index(to.0, to.1)) {
            (Some(s), Some(t)) => self.arrows.contains(&(s, t)),
            _ => false,
        }
    }

    /// Arrows as label pairs, in order.
    pub fn arrow_labels(&self) -> Vec<(String, String)> {
        self.arrows
            .iter()
            .map(|&(s, t)| (self.nodes[s].label(), self.nodes[t].label()))
            .collect()
    }

    /// Trivial Graph Format: one `id label` line per node, `#`, then one
    /// `source target` line per arrow. Ids start at 1.
    pub fn to_tgf(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "{} {} {} weight={}", i + 1, n.label(), n.tier.name(), n.weight);
        }
        out.push_str("#\n");
        for (s, t) in &self.arrows {
            let _ = writeln!(out, "{} {}", s + 1, t + 1);
        }
        out
    }
}

impl fmt::Display for StructureDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t) in self.arrow_labels() {
            writeln!(f, "{s} -> {t}")?;
        }
        Ok(())
    }
}

/// Builds the diagram of `M(1) (x) Omega` for a single nilpotent Jordan block
/// of size 2 or 3 (`a = 0`), deciding every adjacent-tier arrow by explicit
/// submodule membership.
pub fn structure_diagram(omega: &OmegaSpec, weight_bound: u32) -> Result<StructureDiagram> {
    let dim = omega.dim();
    if !(2..=3).contains(&dim) || omega.block_sizes() != [dim] || !omega.is_jordan_basis() {
        return Err(Error::InvalidArgument(
            "structure diagrams need one Jordan block of size 2 or 3".into(),
        ));
    }
    if !omega.eigenvalue().is_zero() {
        return Err(Error::InvalidArgument("structure diagrams need lambda = 0".into()));
    }
    let ms: Vec<u32> = (0..).take_while(|m| m * m <= weight_bound).collect();
    let mut nodes = Vec::new();
    let mut vectors = Vec::new();
    for t in 1..=dim {
        let tier = Tier::from_index(t).expect("tier index in 1..=3");
        for &m in &ms {
            nodes.push(DiagramNode {
                tier,
                m,
                weight: m * m,
            });
            vectors.push(chain_vector(m, t, omega)?);
        }
    }
    let a = Rational::zero();
    let mut arrows = Vec::new();
    let mut tested = Vec::new();
    for (s, src) in nodes.iter().enumerate() {
        if src.tier == Tier::Singular {
            continue;
        }
        let sub = vir_submodule(&[vectors[s].clone()], omega, &a, weight_bound);
        for (t, dst) in nodes.iter().enumerate() {
            if dst.tier.index() + 1 != src.tier.index() {
                continue;
            }
            tested.push((s, t));
            if sub.contains(&vectors[t]) {
                arrows.push((s, t));
            }
        }
    }
    Ok(StructureDiagram {
        weight_bound,
        nodes,
        arrows,
        tested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tier::*;

    fn labels(d: &StructureDiagram) -> Vec<(String, String)> {
        d.arrow_labels()
    }

    #[test]
    fn wedge_for_two_dim() {
        let o = OmegaSpec::block(Rational::zero(), 2).unwrap();
        let d = structure_diagram(&o, 4).unwrap();
        assert_eq!(d.nodes.len(), 6);
        let expect: Vec<(String, String)> = [
            ("u^{2,0}", "u^1"),
            ("u^{2,1}", "u^0"),
            ("u^{2,1}", "u^2"),
            ("u^{2,2}", "u^1"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(labels(&d), expect);
        assert!(!d.has_arrow((Subsingular, 0), (Singular, 2)));
    }

    #[test]
    fn three_dim_adds_tier() {
        let o = OmegaSpec::block(Rational::zero(), 3).unwrap();
        let d = structure_diagram(&o, 4).unwrap();
        assert!(d.has_arrow((Subsubsingular, 0), (Subsingular, 1)));
        assert!(d.has_arrow((Subsubsingular, 1), (Subsingular, 0)));
        assert!(d.has_arrow((Subsubsingular, 1), (Subsingular, 2)));
        assert!(!d.has_arrow((Subsubsingular, 0), (Subsingular, 0)));
        assert!(d.has_arrow((Subsingular, 1), (Singular, 2)));
    }

    #[test]
    fn bound_zero_and_tgf() {
        let o = OmegaSpec::block(Rational::zero(), 2).unwrap();
        let d = structure_diagram(&o, 0).unwrap();
        assert_eq!(d.nodes.len(), 2);
        assert!(d.arrows.is_empty());
        assert_eq!(d.to_tgf(), "1 u^0 singular weight=0\n2 u^{2,0} subsingular weight=0\n#\n");
        assert!(structure_diagram(&OmegaSpec::block(Rational::zero(), 1).unwrap(), 4).is_err());
    }
}
