//! Sergeev character table, supermodule dimensions and both orthogonality relations.

use spinbkp::algebra::rational::fmt_rat;
use spinbkp::schurq::{central_character, character_table, check_first_orthogonality, check_second_orthogonality, dim_supermodule};

fn main() -> spinbkp::Result<()> {
    let d: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let t = character_table(d);
    println!("d = {d}: {} strict, {} odd partitions", t.strict.len(), t.odd.len());
    for l in &t.strict {
        let row: Vec<String> = t.odd.iter().map(|m| fmt_rat(&t.zeta(l, m))).collect();
        println!("  zeta^{l}: {}   dim V = {}", row.join(" "), fmt_rat(&dim_supermodule(l)?));
    }
    let l = &t.strict[0];
    for m in &t.odd {
        println!("  f^{l}_{m} = {}", fmt_rat(&central_character(l, m)?));
    }
    println!("first orthogonality: {:?}", check_first_orthogonality(d));
    println!("second orthogonality: {:?}", check_second_orthogonality(d));
    Ok(())
}
