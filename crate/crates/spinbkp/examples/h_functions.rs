//! H_{g,n} in closed form and the identity D_1…D_n H_{g,n} = W_{g,n}.

use spinbkp::closedform::{apply_d_all, h02_series, hgn, wgn, CurveFrame};
use spinbkp::taufn::ModelSpec;

fn main() -> spinbkp::Result<()> {
    let frame = CurveFrame::from_model(&ModelSpec::completed_cycles(1, 8)?)?;
    for (g, n) in [(0, 1), (1, 1), (2, 1), (0, 3), (1, 2)] {
        let h = hgn(&frame, g, n)?;
        let ok = apply_d_all(&h) == wgn(&frame, g, n)?;
        println!("H_{{{g},{n}}}: Q-powers {:?}, {} numerator terms, D…D H = W: {ok}", h.q_powers(), h.num().len());
    }
    println!("H_{{0,2}} to order 5: {}", h02_series(&frame, 5)?.pretty());
    Ok(())
}
