//! Odd topological recursion on P = y², R = z and on the six-point curve R = z³,
//! compared with the closed formulas.

use spinbkp::toprec::checks::{curve_from_ints, gkl_compare};
use spinbkp::toprec::TopRec;
use std::time::Instant;

fn main() -> spinbkp::Result<()> {
    let cases: [(&str, &[i64], &[(u32, usize)]); 2] = [
        ("[0,1]", &[0, 1], &[(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)]),
        ("[0,0,0,1]", &[0, 0, 0, 1], &[(0, 3), (1, 1)]),
    ];
    for (label, r, set) in cases {
        let mut tr = TopRec::new(curve_from_ints(&[0, 0, 1], r)?);
        println!("R = {label}: {} critical points, Qtilde = {:?}", tr.curve.n_critical(), tr.curve.qtil);
        for &(g, n) in set {
            let t = Instant::now();
            let o = gkl_compare(&mut tr, g, n)?;
            println!("  {} [{:.0?}]", o.line(), t.elapsed());
        }
    }
    Ok(())
}
