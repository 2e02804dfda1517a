//! Lowering the depth with `d/d(log x)` until the operator is log-free.

use logvoa::fock::{ModuleVector, OmegaSpec};
use logvoa::intertwiner::{check_l_minus1, derived_operator, IntertwinerSpec, OperatorSeries};
use logvoa::logseries::TruncationWindow;
use logvoa::scalar::int;

fn main() -> logvoa::Result<()> {
    let spec = IntertwinerSpec::identity(int(0), OmegaSpec::block(int(1), 3)?, OmegaSpec::block(int(2), 2)?)?;
    let mut op = OperatorSeries::new(spec, TruncationWindow::symmetric(3, 0)?);
    let w1 = ModuleVector::vacuum(2);
    let w2 = ModuleVector::monomial(&[1], 1)?;
    loop {
        println!("lowered {} times: depth {}, L(-1) {}", op.lowered(), op.depth()?, check_l_minus1(&op, &w1, &w2)?);
        match derived_operator(&op) {
            Ok(next) => op = next,
            Err(e) => {
                println!("stop: {e}");
                break;
            }
        }
    }
    Ok(())
}
