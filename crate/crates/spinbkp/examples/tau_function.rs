//! The 2-BKP tau-function of the s=1 completed-cycles weight and its square.

use spinbkp::partitions::Partition;
use spinbkp::taufn::{assemble_bkp, bkp_kp_square_check, tau_bkp, ModelSpec};

fn main() -> spinbkp::Result<()> {
    let degree: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let model = ModelSpec::completed_cycles(1, 4)?;
    let tau = assemble_bkp(&tau_bkp(&model, degree)?)?;
    for (mu, nu) in [(vec![1], vec![1]), (vec![3], vec![1, 1, 1]), (vec![3], vec![3])] {
        let (mu, nu) = (Partition::new(mu), Partition::new(nu));
        println!("[t_{mu} s_{nu}] tau = {}", tau.coeff_ts(&mu, &nu).pretty());
    }
    let rep = bkp_kp_square_check(&model, degree)?;
    println!("tau_KP = tau^2 to degree {degree}: direct {}, dual weight {}", rep.direct.is_none(), rep.dual.is_none());
    Ok(())
}
