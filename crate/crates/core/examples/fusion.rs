//! Virasoro span of `Y(u^n, x) u^m` against the predicted decomposition.

use logvoa::virstruct::fusion_span_check;

fn main() -> logvoa::Result<()> {
    for (m, n, bound) in [(1, 1, 8), (2, 1, 9), (2, 2, 8)] {
        let r = fusion_span_check(m, n, bound)?;
        println!("m={m} n={n} summands k={:?} pass={}", r.ks, r.pass());
        for l in &r.levels {
            println!("  weight {:>2}: {:>3} (expected {})", l.weight, l.computed, l.expected);
        }
    }
    Ok(())
}
