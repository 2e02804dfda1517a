//! The mock operator: log powers grow with the cutoff.

use logvoa::intertwiner::mock_log_check;
use logvoa::logseries::TruncationWindow;
use logvoa::scalar::int;

fn main() -> logvoa::Result<()> {
    let w = TruncationWindow::symmetric(3, 0)?;
    for k in 1..=6 {
        let r = mock_log_check(&int(1), &int(1), &int(0), &w, k)?;
        println!(
            "K={k}: depth {}, L(-1) below cutoff {}, x^0 log^{} coefficient {}",
            r.depth,
            r.l_minus1_pass(),
            k - 1,
            r.top_log
        );
    }
    Ok(())
}
