//! The explicit logarithmic intertwining operator and its axiom checks.

use logvoa::fock::{ModuleVector, OmegaSpec};
use logvoa::intertwiner::{check_h_bracket, check_l_minus1, f_map, IntertwinerSpec, OperatorSeries};
use logvoa::logseries::TruncationWindow;
use logvoa::scalar::{int, rat};

fn main() -> logvoa::Result<()> {
    let spec = IntertwinerSpec::identity(
        rat(1, 2),
        OmegaSpec::block(int(1), 2)?,
        OmegaSpec::block(rat(1, 2), 2)?,
    )?;
    let op = OperatorSeries::new(spec, TruncationWindow::symmetric(2, 0)?);
    let w1 = ModuleVector::vacuum(1);
    let w2 = ModuleVector::monomial(&[1], 1)?;
    println!("{}", op.spec().summary());
    println!("Y(w1, x) w2 =\n{}\n", op.apply(&w1, &w2)?);
    for n in -2..=2 {
        println!("h({n}) bracket: {}", check_h_bracket(&op, &w1, n, &w2)?);
    }
    println!("L(-1) property: {}", check_l_minus1(&op, &w1, &w2)?);
    for (i, f) in f_map(&op)?.iter().enumerate() {
        println!("F^({i}) = {f:?}");
    }
    Ok(())
}
