//! A depth-one operator between modules whose `L(0)` has Jordan blocks.

use logvoa::logseries::TruncationWindow;
use logvoa::virstruct::{hidden_intertwiner_check, hidden_spec};

fn main() -> logvoa::Result<()> {
    let spec = hidden_spec()?;
    println!("T = {:?}", spec.t());
    let w = TruncationWindow::symmetric(4, 0)?;
    for m in 0..=1 {
        for n in 0..=1 {
            let r = hidden_intertwiner_check(m, n, &w)?;
            println!(
                "(m,n)=({m},{n}) depth {} log^1 witness {:?} log-free neighbours {:?} filtration {}",
                r.depth,
                r.log1_witness.as_ref().map(|(k, v)| format!("x^{k}: {v}")),
                r.log_free,
                r.filtration
            );
        }
    }
    Ok(())
}
