//! Graded dimensions and the q-offset of Feigin-Fuchs modules.

use logvoa::scalar::{eta_inverse_series, rat};
use logvoa::virstruct::character_check;

fn main() -> logvoa::Result<()> {
    for (a, lambda) in [(rat(1, 2), rat(1, 2)), (rat(1, 2), rat(0, 1)), (rat(1, 3), rat(1, 3))] {
        let r = character_check(&a, &lambda, 10)?;
        println!(
            "a={a} lambda={lambda}: c={} h={} offset={} dims={:?}",
            r.central_charge, r.lowest_weight, r.q_offset, r.level_dims
        );
    }
    println!("1/eta = {}", eta_inverse_series(10)?);
    Ok(())
}
