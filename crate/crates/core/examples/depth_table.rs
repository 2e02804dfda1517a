//! Measured depth of the canonical operator against the sharp bound.

use logvoa::fock::OmegaSpec;
use logvoa::intertwiner::{depth_bound, IntertwinerSpec, OperatorSeries};
use logvoa::logseries::TruncationWindow;
use logvoa::scalar::{int, rat};

fn main() -> logvoa::Result<()> {
    let values = [int(0), int(1), rat(1, 2), int(-2)];
    let w = TruncationWindow::symmetric(8, 0)?;
    println!("m1 m2 lambda nu depth bound");
    for m1 in 1..=3 {
        for m2 in 1..=3 {
            for lam in &values {
                for nu in &values {
                    let spec = IntertwinerSpec::identity(
                        int(0),
                        OmegaSpec::block(lam.clone(), m1)?,
                        OmegaSpec::block(nu.clone(), m2)?,
                    )?;
                    let d = OperatorSeries::new(spec, w).depth()?;
                    let b = depth_bound(m1, m2, lam, nu);
                    println!("{m1}  {m2}  {lam:>4} {nu:>4}  {d}  {b}{}", if d as usize == b { "" } else { "  MISMATCH" });
                }
            }
        }
    }
    Ok(())
}
