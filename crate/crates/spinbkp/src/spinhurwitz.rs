//! Spin Hurwitz numbers from central characters, weighted combinations and the
//! weight transform R_μ.

use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{factorial, pow2, rint, Rational};
use crate::error::{Error, Result};
use crate::partitions::{colength, delta, odd_partitions, z_mu, Partition};
use crate::schurq::{central_character, character_table, dim_supermodule};
use num_traits::Zero;

/// A rational number times 2^{1/2} when `sqrt2` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinValue {
    pub value: Rational,
    pub sqrt2: bool,
}

impl SpinValue {
    pub fn rational(value: Rational) -> Self {
        SpinValue { value, sqrt2: false }
    }

    /// 2^{e/2}.
    pub fn half_pow2(e: i64) -> Self {
        let sqrt2 = e.rem_euclid(2) == 1;
        SpinValue { value: pow2((e - sqrt2 as i64) / 2), sqrt2 }
    }

    pub fn mul(&self, o: &SpinValue) -> SpinValue {
        let mut value = &self.value * &o.value;
        if self.sqrt2 && o.sqrt2 {
            value *= rint(2);
        }
        SpinValue { value, sqrt2: self.sqrt2 ^ o.sqrt2 }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.sqrt2 && !self.value.is_zero() {
            None
        } else {
            Some(&self.value)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"value": crate::algebra::rational::rat_json(&self.value), "sqrt2": self.sqrt2})
    }
}

fn check_profiles(d: u32, profiles: &[Partition]) -> Result<()> {
    for p in profiles {
        if !p.is_odd() {
            return Err(Error::NotOdd(p.parts().to_vec()));
        }
        if p.size() != d {
            return Err(Error::SizeMismatch { expected: d, got: p.size() });
        }
    }
    Ok(())
}

/// H^θ_d(μ_1,…,μ_k) = 2^{−d−Σℓ*(μ_i)/2} Σ_λ 2^{−δ(λ)} (dim V^λ/d!)² Π_j f^λ_{μ_j}.
pub fn spin_hurwitz(d: u32, profiles: &[Partition]) -> Result<SpinValue> {
    check_profiles(d, profiles)?;
    let t = character_table(d);
    let mut acc = Rational::zero();
    for l in &t.strict {
        let dim = dim_supermodule(l)? / factorial(d);
        let mut term = pow2(-(delta(l) as i64)) * &dim * &dim;
        for m in profiles {
            term *= central_character(l, m)?;
        }
        acc += term;
    }
    let colen: i64 = profiles.iter().map(|m| colength(m) as i64).sum();
    Ok(SpinValue::rational(acc * pow2(-(d as i64))).mul(&SpinValue::half_pow2(-colen)))
}

/// 2 − 2g = ℓ(μ) + ℓ(ν) − Σ ℓ*(μ_i).
pub fn genus_of_cover(mu: &Partition, nu: &Partition, profiles: &[Partition]) -> Rational {
    let chi = mu.len() as i64 + nu.len() as i64 - profiles.iter().map(|p| colength(p) as i64).sum::<i64>();
    Rational::new((2 - chi).into(), 2.into())
}

/// One weight sequence r_1, r_2, … with entries polynomial in some slots.
#[derive(Clone, Debug)]
pub struct WeightFamily {
    r: Vec<MPoly>,
}

impl WeightFamily {
    pub fn new(r: Vec<MPoly>) -> Self {
        WeightFamily { r }
    }

    /// r_m as the variable in slot first_slot + m − 1, for m ≤ d.
    pub fn symbolic(d: u32, first_slot: usize) -> Self {
        WeightFamily { r: (0..d as usize).map(|i| MPoly::var(first_slot + i)).collect() }
    }

    pub fn unit(d: u32) -> Self {
        WeightFamily { r: vec![MPoly::one(); d as usize] }
    }

    pub fn from_fn(d: u32, f: impl Fn(u32) -> MPoly) -> Self {
        WeightFamily { r: (1..=d).map(f).collect() }
    }

    pub fn get(&self, m: u32) -> Result<&MPoly> {
        self.r.get(m as usize - 1).ok_or_else(|| Error::Missing(format!("weight r_{m}")))
    }

    /// r_λ = Π r_{λ_i}.
    pub fn of_partition(&self, lambda: &Partition) -> Result<MPoly> {
        let mut acc = MPoly::one();
        for &k in lambda.parts() {
            acc = acc.mul(self.get(k)?);
        }
        Ok(acc)
    }
}

/// R_μ(r) = ħ^{−ℓ*(μ)} 2^{−ℓ(μ)/2} Σ_σ dim V^σ/(d! 2^{d/2}) 2^{−δ(σ)} ζ^σ_μ r_σ, with ħ in slot `hbar`.
pub fn weight_r(mu: &Partition, r: &WeightFamily, hbar: usize) -> Result<MPoly> {
    if !mu.is_odd() {
        return Err(Error::NotOdd(mu.parts().to_vec()));
    }
    let d = mu.size();
    if d == 0 {
        return Ok(MPoly::one());
    }
    let t = character_table(d);
    // ℓ(μ) ≡ d mod 2, so the 2-power is integral
    let norm = pow2(-((mu.len() as i64 + d as i64) / 2)) / factorial(d);
    let mut acc = MPoly::zero();
    for s in &t.strict {
        let c = &norm * dim_supermodule(s)? * pow2(-(delta(s) as i64)) * t.zeta(s, mu);
        acc.add_scaled(&r.of_partition(s)?, &c);
    }
    Ok(acc.mul_mono(Mono::ONE.with(hbar, -(colength(mu) as i32))))
}

/// H_{d,r}(ν,μ) = 2^{−(ℓ(μ)+ℓ(ν))/2} Σ_λ 2^{−δ(λ)} ζ^λ_μ ζ^λ_ν/(z_μ z_ν) Π_j r^{(j)}_λ.
pub fn weighted_spin_hurwitz(d: u32, nu: &Partition, mu: &Partition, families: &[WeightFamily]) -> Result<MPoly> {
    check_profiles(d, &[nu.clone(), mu.clone()])?;
    let t = character_table(d);
    let norm = pow2(-((mu.len() + nu.len()) as i64 / 2)) / (z_mu(mu) * z_mu(nu));
    let mut acc = MPoly::zero();
    for l in &t.strict {
        let c = &norm * pow2(-(delta(l) as i64)) * t.zeta(l, mu) * t.zeta(l, nu);
        if c.is_zero() {
            continue;
        }
        let mut w = MPoly::one();
        for f in families {
            w = w.mul(&f.of_partition(l)?);
        }
        acc.add_scaled(&w, &c);
    }
    Ok(acc)
}

/// The intermediate-profile sum Σ H(μ_1,…,μ_{k−2},μ,ν) Π R_{μ_j}(r^{(j)}), one
/// family per intermediate branch point. With `dress`, each term is multiplied
/// by ħ^{2g−2+ℓ(μ)+ℓ(ν)} for its own cover genus g.
pub fn weighted_spin_hurwitz_ws(
    d: u32,
    nu: &Partition,
    mu: &Partition,
    families: &[WeightFamily],
    hbar: usize,
    dress: bool,
) -> Result<MPoly> {
    check_profiles(d, &[nu.clone(), mu.clone()])?;
    let ops = odd_partitions(d);
    let rtab: Vec<Vec<MPoly>> = families
        .iter()
        .map(|f| ops.iter().map(|m| weight_r(m, f, hbar)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let k = families.len();
    let mut acc = MPoly::zero();
    let mut idx = vec![0usize; k];
    loop {
        let mut profiles: Vec<Partition> = idx.iter().map(|&i| ops[i].clone()).collect();
        let mut w = MPoly::one();
        for (j, &i) in idx.iter().enumerate() {
            w = w.mul(&rtab[j][i]);
        }
        if dress {
            let g = genus_of_cover(mu, nu, &profiles);
            let e = rint(2) * g - rint(2) + rint((mu.len() + nu.len()) as i64);
            let e: i64 = e.to_integer().try_into().map_err(|_| Error::Unsupported("genus".into()))?;
            w = w.mul_mono(Mono::ONE.with(hbar, e as i32));
        }
        profiles.push(mu.clone());
        profiles.push(nu.clone());
        let h = spin_hurwitz(d, &profiles)?;
        let h = h.as_rational().ok_or_else(|| Error::Unsupported("half-integer genus term".into()))?;
        acc.add_scaled(&w, h);
        // odometer over intermediate profiles
        let mut j = 0;
        loop {
            if j == k {
                return Ok(acc);
            }
            idx[j] += 1;
            if idx[j] < ops.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Σ_μ 2^{−ℓ*(μ)/2} f^λ_μ R_μ(r) ħ^{ℓ*(μ)}; equals r_λ.
pub fn central_weight_sum(lambda: &Partition, r: &WeightFamily, hbar: usize) -> Result<MPoly> {
    let mut acc = MPoly::zero();
    for m in odd_partitions(lambda.size()) {
        let c = pow2(-(colength(&m) as i64) / 2) * central_character(lambda, &m)?;
        let rm = weight_r(&m, r, hbar)?.mul_mono(Mono::ONE.with(hbar, colength(&m) as i32));
        acc.add_scaled(&rm, &c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::partitions::strict_partitions;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    const H: usize = 7;

    fn r(i: usize) -> MPoly {
        MPoly::var(i - 1)
    }

    #[test]
    fn small_hurwitz_numbers() {
        assert_eq!(spin_hurwitz(1, &[p(&[1]), p(&[1])]).unwrap(), SpinValue::rational(rint(1)));
        assert_eq!(spin_hurwitz(2, &[p(&[1, 1]), p(&[1, 1])]).unwrap(), SpinValue::rational(rat(1, 2)));
        assert!(matches!(spin_hurwitz(2, &[p(&[1, 1]), p(&[1])]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn profile_symmetry() {
        let a = spin_hurwitz(5, &[p(&[3, 1, 1]), p(&[5]), p(&[1, 1, 1, 1, 1])]).unwrap();
        let b = spin_hurwitz(5, &[p(&[5]), p(&[1, 1, 1, 1, 1]), p(&[3, 1, 1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_of_cover(&p(&[1]), &p(&[1]), &[]), rint(0));
        assert_eq!(genus_of_cover(&p(&[1, 1, 1]), &p(&[1, 1, 1]), &[p(&[3])]), rint(-1));
        // 2 − 2g = 1 + 1 − 4
        assert_eq!(genus_of_cover(&p(&[3]), &p(&[3]), &[p(&[3]), p(&[3])]), rint(2));
    }

    #[test]
    fn r_table() {
        let f = WeightFamily::symbolic(3, 0);
        let hm2 = MPoly::term(Mono::ONE.with(H, -2), rint(1));
        assert_eq!(weight_r(&p(&[1]), &f, H).unwrap(), r(1));
        assert_eq!(weight_r(&p(&[1, 1]), &WeightFamily::symbolic(2, 0), H).unwrap(), r(2));
        assert_eq!(weight_r(&p(&[3]), &f, H).unwrap(), r(3).sub(&r(2).mul(&r(1))).mul(&hm2).scale(&rat(1, 3)));
        assert_eq!(weight_r(&p(&[1, 1, 1]), &f, H).unwrap(), r(3).scale(&rint(2)).add(&r(2).mul(&r(1))).scale(&rat(1, 3)));
        assert!(weight_r(&p(&[2]), &f, H).is_err());
    }

    #[test]
    fn unit_weights_degenerate() {
        for d in 1..=6 {
            for mu in odd_partitions(d) {
                for nu in odd_partitions(d) {
                    let w = weighted_spin_hurwitz(d, &nu, &mu, &[WeightFamily::unit(d)]).unwrap();
                    let h = spin_hurwitz(d, &[mu.clone(), nu.clone()]).unwrap();
                    assert_eq!(w, MPoly::constant(h.value.clone()));
                    assert!(!h.sqrt2);
                }
            }
        }
    }

    #[test]
    fn single_box_weight() {
        let w = weighted_spin_hurwitz(1, &p(&[1]), &p(&[1]), &[WeightFamily::symbolic(1, 0)]).unwrap();
        assert_eq!(w, r(1));
    }

    #[test]
    fn central_sum_recovers_weight() {
        for d in 1..=5 {
            let f = WeightFamily::symbolic(d, 0);
            for l in strict_partitions(d) {
                assert_eq!(central_weight_sum(&l, &f, H).unwrap(), f.of_partition(&l).unwrap());
            }
        }
    }

    #[test]
    fn ws_route_matches_weight_route() {
        for d in 1..=4 {
            let f = [WeightFamily::symbolic(d, 0)];
            for mu in odd_partitions(d) {
                for nu in odd_partitions(d) {
                    let a = weighted_spin_hurwitz(d, &nu, &mu, &f).unwrap();
                    let b = weighted_spin_hurwitz_ws(d, &nu, &mu, &f, H, true).unwrap();
                    assert_eq!(a, b, "d={d} mu={mu} nu={nu}");
                }
            }
        }
    }

    #[test]
    fn ws_route_two_families() {
        let d = 3;
        let f = [WeightFamily::symbolic(d, 0), WeightFamily::symbolic(d, 3)];
        let mu = p(&[3]);
        let nu = p(&[1, 1, 1]);
        assert_eq!(
            weighted_spin_hurwitz(d, &nu, &mu, &f).unwrap(),
            weighted_spin_hurwitz_ws(d, &nu, &mu, &f, H, true).unwrap()
        );
    }
}
