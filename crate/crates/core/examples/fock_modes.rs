//! Heisenberg and Virasoro modes on `M(1)_a (x) Omega`.

use logvoa::fock::{apply_h, apply_l, jordan_structure_l0, ModuleVector, OmegaSpec};
use logvoa::scalar::rat;

fn main() -> logvoa::Result<()> {
    let omega = OmegaSpec::block(rat(3, 2), 2)?;
    let a = rat(1, 2);
    let v = ModuleVector::monomial(&[2, 1], 1)?;
    println!("v          = {v}");
    println!("h(1) v     = {}", apply_h(1, &v, &omega));
    println!("h(0) v     = {}", apply_h(0, &v, &omega));
    println!("L(-1) v    = {}", apply_l(-1, &v, &omega, &a));
    println!("L(0) v     = {}", apply_l(0, &v, &omega, &a));
    println!("L(2) v     = {}", apply_l(2, &v, &omega, &a));
    for level in 0..=3 {
        for (h, sizes) in jordan_structure_l0(&omega, &a, level) {
            println!("level {level}: generalized weight {h}, L(0) blocks {sizes:?}");
        }
    }
    Ok(())
}
