//! Truncated series in `x` and `log x` with explicit validity windows.

use logvoa::fock::{ModuleVector, OmegaSpec};
use logvoa::logseries::{LogSeries, Mode, TruncationWindow};
use logvoa::scalar::{int, rat};

fn main() -> logvoa::Result<()> {
    let w = TruncationWindow::new(-2, 2, 1)?;
    let mut s = LogSeries::zero(rat(1, 2), w);
    s.accumulate(-1, 1, &ModuleVector::vacuum(0), &int(3))?;
    s.accumulate(0, 0, &ModuleVector::monomial(&[1], 1)?, &int(1))?;
    s.accumulate(2, 1, &ModuleVector::monomial(&[2], 0)?, &rat(1, 4))?;
    println!("s:\n{s}\n");
    println!("d/dx s:\n{}\n", s.ddx());
    println!("d/dlog s:\n{}\n", s.dlog());
    let omega = OmegaSpec::block(int(1), 2)?;
    println!("h(1) s:\n{}\n", s.apply_mode(Mode::H(1), &omega, &int(0)));
    let t = s.shift(1);
    println!("x s - s differs first at: {:?}", t.first_difference(&s)?.map(|w| w.to_string()));
    Ok(())
}
