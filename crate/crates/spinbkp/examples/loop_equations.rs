//! Linear and quadratic loop equations, the projection property and the
//! [v³] combination, with defects showing each check can fail.

use spinbkp::closedform::loops::{curly_v3_compare, loop_combination_v3};
use spinbkp::closedform::CurveFrame;
use spinbkp::toprec::checks::{curve_from_ints, linear_loop, projection, quadratic_loop, symmetrized_holomorphic, with_replaced, Regularization};
use spinbkp::toprec::{OmegaFn, TopRec};

fn main() -> spinbkp::Result<()> {
    let mut tr = TopRec::new(curve_from_ints(&[0, 0, 1], &[0, 1])?);
    for (g, n) in [(0, 3), (1, 1), (1, 2)] {
        let om = tr.omega(g, n)?;
        println!("{}", linear_loop(&tr, &om)?.line());
        println!("{}", projection(&om, &tr.curve.qtil).line());
    }
    for (g, n) in [(0, 2), (1, 1)] {
        println!("{}", quadratic_loop(&tr, g, n, Regularization::Unregularized)?.line());
    }
    for reg in [Regularization::Unregularized, Regularization::XDiagonal] {
        println!("{}", quadratic_loop(&tr, 1, 0, reg)?.line());
    }
    let qt = tr.curve.qtil.clone();
    let bad = tr.omega(1, 1)?.add(&OmegaFn::pole_defect(1, 1, &qt), &qt);
    println!("with 1/(z-p) defect: {}", linear_loop(&tr, &bad)?.line());
    println!("with 1/(z-p) defect: {}", quadratic_loop(&with_replaced(&tr, bad), 1, 1, Regularization::Unregularized)?.line());

    let frame = CurveFrame::from_curve(&tr.curve.p, &tr.curve.r)?;
    println!("{}", curly_v3_compare(&frame, 1)?.line());
    let c = loop_combination_v3(&frame, 1, 1)?;
    println!("{}", symmetrized_holomorphic(&tr.curve, "[v^3] (1,1) symmetrized".into(), &c)?.line());
    Ok(())
}
