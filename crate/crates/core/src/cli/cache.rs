//! On-disk cache of singular-vector bases. Entries are re-verified on every
//! load and recomputed when anything is off.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::fock::{apply_l, level_basis, ModuleVector, OmegaSpec};
use crate::linalg::EchelonSpan;
use crate::scalar::{format_rational, Rational};
use crate::virstruct::{singular_basis, SingularVector};

/// Bumped whenever the basis order or file layout changes.
pub const BASIS_ORDER_VERSION: u32 = 1;

const SEPARATOR: &str = "---";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    /// No cache configured.
    Disabled,
    Hit,
    Miss,
    /// An entry existed but failed verification.
    Rejected,
}

impl CacheStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheStatus::Disabled => "disabled",
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Rejected => "rejected",
        }
    }
}

pub fn cache_key(a: &Rational, omega: &OmegaSpec, level: u32) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "a={};omega={};level={};order={}",
        format_rational(a),
        omega.fingerprint(),
        level,
        BASIS_ORDER_VERSION
    ));
    format!("{:x}", h.finalize())
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.vec"))
}

fn serialize(vs: &[SingularVector]) -> String {
    let mut out = format!("count {}\n", vs.len());
    for v in vs {
        out.push_str(SEPARATOR);
        out.push('\n');
        out.push_str(&v.vector.to_lines());
    }
    out
}

fn parse(text: &str) -> Option<Vec<ModuleVector>> {
    let sep = format!("{SEPARATOR}\n");
    let mut chunks = text.split(sep.as_str());
    let count: usize = chunks.next()?.trim().strip_prefix("count ")?.parse().ok()?;
    let vs: Vec<ModuleVector> = chunks
        .map(ModuleVector::parse_lines)
        .collect::<Result<_>>()
        .ok()?;
    (vs.len() == count).then_some(vs)
}

/// Annihilated by `L(1)`, `L(2)`, homogeneous at `level`, on valid Omega
/// indices, and linearly independent.
fn verify(vs: &[ModuleVector], omega: &OmegaSpec, a: &Rational, level: u32) -> bool {
    let mut span = EchelonSpan::new();
    vs.iter().all(|v| {
        !v.is_zero()
            && v.min_level() == Some(level)
            && v.max_level() == Some(level)
            && v.omega_support().iter().all(|&j| j < omega.dim())
            && apply_l(1, v, omega, a).is_zero()
            && apply_l(2, v, omega, a).is_zero()
            && span.insert(v.as_map()).is_some()
    }) && vs.len() <= level_basis(level, omega.dim()).len()
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
        std::process::id()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `singular_basis` through the cache at `dir`, if any.
pub fn cached_singular_basis(
    dir: Option<&Path>,
    level: u32,
    omega: &OmegaSpec,
    a: &Rational,
) -> Result<(Vec<SingularVector>, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((singular_basis(level, omega, a), CacheStatus::Disabled));
    };
    let path = entry_path(dir, &cache_key(a, omega, level));
    let mut status = CacheStatus::Miss;
    if let Ok(text) = fs::read_to_string(&path) {
        match parse(&text) {
            Some(vs) if verify(&vs, omega, a, level) => {
                let weight = Rational::from_integer(level.into())
                    + crate::scalar::lowest_weight(omega.eigenvalue(), a);
                let out = vs
                    .into_iter()
                    .map(|vector| SingularVector {
                        vector,
                        level,
                        weight: weight.clone(),
                    })
                    .collect();
                return Ok((out, CacheStatus::Hit));
            }
            _ => status = CacheStatus::Rejected,
        }
    }
    let vs = singular_basis(level, omega, a);
    write_atomic(&path, &serialize(&vs))?;
    Ok((vs, status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn round_trip_and_rejection() {
        let dir = std::env::temp_dir().join(format!("logvoa-cache-unit-{}", std::process::id()));
        let o = OmegaSpec::one_dim(Rational::zero());
        let z = Rational::zero();
        let (v1, s1) = cached_singular_basis(Some(&dir), 4, &o, &z).unwrap();
        assert_eq!(s1, CacheStatus::Miss);
        let (v2, s2) = cached_singular_basis(Some(&dir), 4, &o, &z).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(v1, v2);
        let path = entry_path(&dir, &cache_key(&z, &o, 4));
        fs::write(&path, "count 1\n---\n4 | 1 | 1\n").unwrap();
        let (v3, s3) = cached_singular_basis(Some(&dir), 4, &o, &z).unwrap();
        assert_eq!(s3, CacheStatus::Rejected);
        assert_eq!(v3, v1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
