//! Submodule diagrams for two- and three-dimensional nilpotent `Omega`.

use logvoa::fock::OmegaSpec;
use logvoa::scalar::int;
use logvoa::virstruct::{check_l0_jordan, structure_diagram};

fn main() -> logvoa::Result<()> {
    for dim in [2, 3] {
        let d = structure_diagram(&OmegaSpec::block(int(0), dim)?, 4)?;
        println!("dim Omega = {dim}:\n{d}");
    }
    let d = structure_diagram(&OmegaSpec::block(int(0), 2)?, 4)?;
    println!("TGF:\n{}", d.to_tgf());
    for n in 0..=2 {
        println!("L(0) u^(3,{n}) = {n}^2 u^(3,{n}) + u^{n}/2: {}", check_l0_jordan(n)?);
    }
    Ok(())
}
