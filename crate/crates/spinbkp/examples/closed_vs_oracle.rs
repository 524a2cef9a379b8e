//! Compare the closed formulas with the tau-function expansion for the s=1 preset.

use spinbkp::closedform::{w_x_series, CurveFrame};
use spinbkp::npoint::w_gn_oracle;
use spinbkp::taufn::ModelSpec;
use std::time::Instant;

fn main() -> spinbkp::Result<()> {
    let order: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let model = ModelSpec::completed_cycles(1, 8)?;
    let frame = CurveFrame::from_model(&model)?;
    for (g, n) in [(0, 1), (0, 2), (0, 3), (1, 1), (0, 4), (1, 2), (2, 1)] {
        let t = Instant::now();
        let closed = w_x_series(&frame, g, n, order)?;
        let tc = t.elapsed();
        let oracle = w_gn_oracle(&model, g, n, order)?;
        let same = closed == oracle.poly;
        println!("W_{{{g},{n}}} order {order}: {} terms, equal = {same} (closed {:.2?}, oracle {:.2?})", closed.len(), tc, t.elapsed() - tc);
    }
    Ok(())
}
