//! W_{g,n} as polynomials over Π Q(z_i)^{a_i}, odd and bounded at infinity.

use spinbkp::closedform::loops::{quasi_polynomiality, theta_problems, with_pole_at_infinity};
use spinbkp::closedform::{wgn, CurveFrame};
use spinbkp::taufn::ModelSpec;

fn main() -> spinbkp::Result<()> {
    let frame = CurveFrame::from_model(&ModelSpec::completed_cycles(1, 8)?)?;
    for (g, n) in [(1, 1), (0, 3), (1, 2), (2, 1)] {
        println!("{}", quasi_polynomiality(&frame, g, n)?.line());
    }
    let w = wgn(&frame, 1, 1)?;
    println!("W_{{1,1}} plus z^5: {:?}", theta_problems(&with_pole_at_infinity(&w)));
    Ok(())
}
