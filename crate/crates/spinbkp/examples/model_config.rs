//! A model described in the key = value format, fed to the expansion and
//! closed routes.

use spinbkp::closedform::{w_x_series, CurveFrame};
use spinbkp::npoint::w_gn_oracle;
use spinbkp::taufn::ModelSpec;

const CONFIG: &str = "
# P(y) = y^2 + y^4/3, R(z) = z
P = [0, 0, 1, 0, 1/3]
R = [0, 1]
hbar_order = 8
";

fn main() -> spinbkp::Result<()> {
    let model = ModelSpec::parse(CONFIG)?;
    let frame = CurveFrame::from_model(&model)?;
    for (g, n) in [(0, 1), (1, 1), (0, 3)] {
        let closed = w_x_series(&frame, g, n, 7)?;
        let oracle = w_gn_oracle(&model, g, n, 7)?;
        println!("W_{{{g},{n}}}: closed = expansion: {}", closed == oracle.poly);
    }
    Ok(())
}
