//! Spin Hurwitz numbers, cover genera and weighted counts with symbolic weights.

use spinbkp::algebra::rational::fmt_rat;
use spinbkp::partitions::{odd_partitions, Partition};
use spinbkp::spinhurwitz::{genus_of_cover, spin_hurwitz, weight_r, weighted_spin_hurwitz, WeightFamily};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

fn main() -> spinbkp::Result<()> {
    for (d, profiles) in [
        (2, vec![p(&[1, 1]), p(&[1, 1])]),
        (3, vec![p(&[3]), p(&[3]), p(&[3])]),
        (3, vec![p(&[3]), p(&[3]), p(&[3]), p(&[3])]),
        (5, vec![p(&[3, 1, 1]), p(&[5]), p(&[1, 1, 1, 1, 1])]),
    ] {
        let h = spin_hurwitz(d, &profiles)?;
        let names: Vec<String> = profiles.iter().map(|x| x.to_string()).collect();
        let g = genus_of_cover(&profiles[0], &profiles[1], &profiles[2..]);
        println!("H({}) = {}{}   genus {}", names.join(", "), fmt_rat(&h.value), if h.sqrt2 { "·√2" } else { "" }, fmt_rat(&g));
    }

    // R_μ in symbolic r_1..r_3 (slots 0..2), ħ in slot 7
    let names = ["r1", "r2", "r3", "", "", "", "", "h"];
    let f = WeightFamily::symbolic(3, 0);
    for mu in odd_partitions(3).into_iter().chain([p(&[1]), p(&[1, 1])]) {
        println!("R_{mu} = {}", weight_r(&mu, &f, 7)?.pretty(&names));
    }
    for mu in odd_partitions(3) {
        for nu in odd_partitions(3) {
            println!("H_r({nu}, {mu}) = {}", weighted_spin_hurwitz(3, &nu, &mu, std::slice::from_ref(&f))?.pretty(&names));
        }
    }
    Ok(())
}
