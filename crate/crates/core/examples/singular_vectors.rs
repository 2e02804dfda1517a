//! Singular vectors of `M(1)` at `c = 1` and their lifts.

use logvoa::fock::OmegaSpec;
use logvoa::scalar::int;
use logvoa::virstruct::{chain_vector, singular_basis};

fn main() -> logvoa::Result<()> {
    let m1 = OmegaSpec::one_dim(int(0));
    for w in 0..=9 {
        let basis = singular_basis(w, &m1, &int(0));
        match basis.first() {
            Some(u) => println!("weight {w}: {}", u.vector),
            None => println!("weight {w}: none"),
        }
    }
    let o3 = OmegaSpec::block(int(0), 3)?;
    for tier in 1..=3 {
        println!("u^({tier},2) = {}", chain_vector(2, tier, &o3)?);
    }
    Ok(())
}
