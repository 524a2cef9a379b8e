//! Connected correlators W_{g,n} from the tau-function expansion, for any preset.

use spinbkp::npoint::w_gn_oracle;
use spinbkp::taufn::{ModelSpec, Param};
use spinbkp::algebra::rational::rint;

fn main() -> spinbkp::Result<()> {
    let preset = std::env::args().nth(1).unwrap_or_else(|| "log-branch-c".into());
    let model = ModelSpec::preset(&preset, Param::Value(rint(1)), 8, 12)?;
    for (g, n) in [(0, 1), (1, 1), (0, 2), (0, 3)] {
        let w = w_gn_oracle(&model, g, n, 7)?;
        println!("{preset} W_{{{g},{n}}}: odd {}, symmetric {}", w.is_odd(), w.is_symmetric());
        println!("  {}", w.poly.pretty(&["z1", "z2", "z3"]));
    }
    Ok(())
}
