//! Correlators W_{g,n} read off directly from the tau-function expansion.
//!
//! Slot 0 carries ħ; slots 1..=n carry X_1..X_n.

use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{factorial, pow2, rint, Rational};
use crate::error::{Error, Result};
use crate::partitions::{odd_partitions, Partition};
use crate::schurq::schur_q;
use crate::taufn::{tau_bkp, ModelSpec};
use std::collections::BTreeMap;

pub const HB: usize = 0;

/// Coefficients [t_μ] τ(t, s*) for odd μ, as Laurent polynomials in ħ (slot 0),
/// with s* given by p_k(s*) = [z^k] ȳ / ħ.
#[derive(Clone, Debug)]
pub struct TimeCoefficients {
    pub order: u32,
    pub hbar_max: i32,
    coeffs: BTreeMap<Partition, MPoly>,
}

impl TimeCoefficients {
    pub fn get(&self, mu: &Partition) -> MPoly {
        self.coeffs.get(mu).cloned().unwrap_or_default()
    }
}

fn hpoly(s: &crate::algebra::series::TruncSeries) -> Result<MPoly> {
    // model series live in [h, y, param] with h first
    if s.index("h")? != HB || s.poly().terms().any(|(m, _)| (1..8).any(|j| m.get(j) != 0)) {
        return Err(Error::Unsupported("oracle needs a numeric model parameter".into()));
    }
    Ok(s.poly().clone())
}

/// Compute [t_μ]τ exactly for |μ| ≤ order and ħ-powers ≤ hbar_max.
pub fn time_coefficients(model: &ModelSpec, order: u32, hbar_max: i32) -> Result<TimeCoefficients> {
    // c_λ needs ħ up to hbar_max + |λ| because Q_λ(s*) carries ħ^{−|λ|}
    let model = model.with_hbar_order(hbar_max + order as i32 + 2);
    let table = tau_bkp(&model, order)?;
    let yb = &model.y_bar;
    let zi = yb.index("z")?;
    let hi = yb.index("h")?;
    // p_k(s*) as Laurent polynomials in ħ
    let mut ps: Vec<MPoly> = vec![MPoly::zero(); order as usize + 1];
    for (m, c) in yb.poly().terms() {
        let k = m.get(zi);
        if k >= 1 && (k as u32) <= order {
            ps[k as usize].add_term(Mono::ONE.with(HB, m.get(hi) - 1), c.clone());
        }
    }
    let keep = |m: Mono| m.get(HB) <= hbar_max;
    let mut coeffs: BTreeMap<Partition, MPoly> = BTreeMap::new();
    for (l, c) in &table.coeffs {
        let q = schur_q(l)?;
        // Q_λ(s*/2)
        let mut qs = MPoly::zero();
        for (nu, a) in q.terms() {
            let mut t = MPoly::constant(a * pow2(-(nu.len() as i64)));
            for &k in nu.parts() {
                t = t.mul(&ps[k as usize]);
            }
            qs.add_assign(&t);
        }
        if qs.is_zero() {
            continue;
        }
        let cl = hpoly(c)?;
        let w = cl.mul(&qs).filter(keep);
        for (mu, a) in q.terms() {
            let f: u32 = mu.parts().iter().product();
            let s = a * pow2(-(mu.len() as i64)) * rint(f as i64);
            coeffs.entry(mu.clone()).or_default().add_scaled(&w, &s);
        }
    }
    Ok(TimeCoefficients { order, hbar_max, coeffs })
}

/// W^•_n in the variables at `slots`: Σ Π X_i^{m_i} ∂^n τ/∂t_{m_1}…∂t_{m_n} at t = 0.
pub fn w_disconnected_in(tc: &TimeCoefficients, slots: &[usize]) -> MPoly {
    let n = slots.len();
    let mut out = MPoly::zero();
    let mut ms = vec![1u32; n];
    if n == 0 {
        return MPoly::one();
    }
    loop {
        let total: u32 = ms.iter().sum();
        if total <= tc.order {
            let mu = Partition::new(ms.clone());
            let mut f = Rational::from_integer(1.into());
            for (_, k) in mu.multiplicities() {
                f *= factorial(k);
            }
            let mut mono = Mono::ONE;
            for (j, &s) in slots.iter().enumerate() {
                mono = mono.with(s, ms[j] as i32);
            }
            out.add_assign(&tc.get(&mu).mul_mono(mono).scale(&f));
        }
        // odometer over odd tuples with total ≤ order
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            ms[j] += 2;
            if ms.iter().sum::<u32>() <= tc.order {
                break;
            }
            ms[j] = 1;
            j += 1;
        }
    }
}

/// H^•_n: the same data with X_i^{m_i} divided by m_i for each variable.
pub fn h_disconnected_in(tc: &TimeCoefficients, slots: &[usize]) -> MPoly {
    let w = w_disconnected_in(tc, slots);
    let mut out = MPoly::zero();
    for (m, c) in w.terms() {
        let mut c = c.clone();
        for &s in slots {
            c /= rint(m.get(s) as i64);
        }
        out.add_term(*m, c);
    }
    out
}

/// All set partitions of `items`.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for p in set_partitions(&items[1..]) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p.clone();
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

/// Möbius inversion: connected = Σ_π (−1)^{|π|−1}(|π|−1)! Π_B disc(B).
pub fn connected<F: Fn(&[usize]) -> MPoly>(slots: &[usize], disc: F, keep: impl Fn(Mono) -> bool + Copy) -> Result<MPoly> {
    if slots.len() > 5 {
        return Err(Error::Unsupported("connected parts beyond n = 5".into()));
    }
    let mut cache: BTreeMap<Vec<usize>, MPoly> = BTreeMap::new();
    let mut out = MPoly::zero();
    for pi in set_partitions(slots) {
        let k = pi.len() as i64;
        let mut term = MPoly::constant(if k % 2 == 1 { rint(1) } else { rint(-1) } * factorial(k as u32 - 1));
        for b in &pi {
            let d = cache.entry(b.clone()).or_insert_with(|| disc(b).filter(keep));
            term = term.mul_filter(d, keep);
        }
        out.add_assign(&term);
    }
    Ok(out)
}

/// A correlator W_{g,n} (or H_{g,n}) as a polynomial in X_1..X_n (slots 0..n−1).
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorSeries {
    pub g: u32,
    pub n: usize,
    pub order: u32,
    pub poly: MPoly,
}

impl CorrelatorSeries {
    pub fn is_odd(&self) -> bool {
        (0..self.n).all(|i| self.poly.is_odd_in(i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.poly.swap_vars(i, j) == self.poly))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .map(|(m, c)| serde_json::json!([(0..self.n).map(|i| m.get(i)).collect::<Vec<_>>(), crate::algebra::rational::rat_json(c)]))
            .collect();
        serde_json::json!({"g": self.g, "n": self.n, "order": self.order, "terms": terms})
    }
}

fn extract(g: u32, n: usize, order: u32, conn: &MPoly) -> CorrelatorSeries {
    let k = 2 * g as i32 - 2 + n as i32;
    let perm: Vec<usize> = (0..8).map(|j| if j == 0 { 7 } else { j - 1 }).collect();
    let poly = conn.coeff_of(HB, k).relabel(&perm);
    CorrelatorSeries { g, n, order, poly }
}

fn disc_fn<'a>(tc: &'a TimeCoefficients, h: bool) -> impl Fn(&[usize]) -> MPoly + 'a {
    move |b: &[usize]| {
        let slots: Vec<usize> = b.iter().map(|&i| i + 1).collect();
        if h {
            h_disconnected_in(tc, &slots)
        } else {
            w_disconnected_in(tc, &slots)
        }
    }
}

fn gn_oracle(model: &ModelSpec, g: u32, n: usize, order: u32, h: bool) -> Result<CorrelatorSeries> {
    if n == 0 || n > 5 {
        return Err(Error::Unsupported(format!("n = {n}")));
    }
    let k = 2 * g as i32 - 2 + n as i32;
    let hmax = k + n as i32;
    let tc = time_coefficients(model, order, hmax)?;
    let keep = move |m: Mono| m.get(HB) <= hmax && (1..=n).map(|i| m.get(i)).sum::<i32>() <= order as i32;
    let slots: Vec<usize> = (0..n).collect();
    let conn = connected(&slots, disc_fn(&tc, h), keep)?;
    Ok(extract(g, n, order, &conn))
}

/// [ħ^{2g−2+n}] of the connected W_n, exact for Σ m_i ≤ order.
pub fn w_gn_oracle(model: &ModelSpec, g: u32, n: usize, order: u32) -> Result<CorrelatorSeries> {
    gn_oracle(model, g, n, order, false)
}

/// [ħ^{2g−2+n}] of the connected H_n.
pub fn h_gn_oracle(model: &ModelSpec, g: u32, n: usize, order: u32) -> Result<CorrelatorSeries> {
    gn_oracle(model, g, n, order, true)
}

/// The full disconnected W^•_n over X_1..X_n with ħ in slot 0.
pub fn w_disconnected(model: &ModelSpec, n: usize, order: u32, hbar_max: i32) -> Result<MPoly> {
    let tc = time_coefficients(model, order, hbar_max)?;
    let slots: Vec<usize> = (1..=n).collect();
    Ok(w_disconnected_in(&tc, &slots))
}

/// Odd partitions μ of size ≤ d with [t_μ]τ nonzero.
pub fn support(tc: &TimeCoefficients) -> Vec<Partition> {
    (0..=tc.order).flat_map(odd_partitions).filter(|m| !tc.get(m).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::taufn::Param;

    fn x(i: usize, e: i32) -> Mono {
        Mono::ONE.with(i, e)
    }

    #[test]
    fn set_partition_counts() {
        let bell = [1, 1, 2, 5, 15, 52];
        for n in 0..6 {
            let items: Vec<usize> = (0..n).collect();
            assert_eq!(set_partitions(&items).len(), bell[n]);
        }
    }

    #[test]
    fn free_model_one_point() {
        let m = ModelSpec::constant(Param::Value(rint(0)), 8);
        let w = w_disconnected(&m, 1, 5, 4).unwrap();
        assert_eq!(w.coeff(Mono::ONE.with(HB, -1).with(1, 1)), rat(1, 2));
        let w02 = w_gn_oracle(&m, 0, 2, 7).unwrap();
        assert!(w02.poly.is_zero());
    }

    #[test]
    fn w01_lagrange() {
        let m = ModelSpec::completed_cycles(1, 8).unwrap();
        let w = w_gn_oracle(&m, 0, 1, 7).unwrap();
        assert_eq!(w.poly.coeff(x(0, 1)), rat(1, 2));
        assert_eq!(w.poly.coeff(x(0, 3)), rat(1, 2));
        assert_eq!(w.poly.coeff(x(0, 5)), rat(5, 4));
    }

    #[test]
    fn oddness_and_symmetry() {
        let m = ModelSpec::completed_cycles(1, 8).unwrap();
        let w = w_gn_oracle(&m, 0, 3, 7).unwrap();
        assert!(w.is_odd() && w.is_symmetric());
        assert!(!w.poly.is_zero());
        let w = w_gn_oracle(&m, 1, 2, 6).unwrap();
        assert!(w.is_symmetric());
    }

    #[test]
    fn three_point_moebius() {
        // W_3 = W•_3 − 3 sym(W•_1 W•_2) + 2 W•_1³ on a formal example
        let d = |b: &[usize]| -> MPoly {
            let mut p = MPoly::one();
            for &i in b {
                p = p.mul(&MPoly::var(i).add(&MPoly::one()));
            }
            p.scale(&rint(b.len() as i64))
        };
        let c = connected(&[0, 1, 2], d, |_| true).unwrap();
        let e = |i: usize| MPoly::var(i).add(&MPoly::one());
        let w1 = |i: usize| e(i);
        let w2 = |i: usize, j: usize| e(i).mul(&e(j)).scale(&rint(2));
        let w3 = e(0).mul(&e(1)).mul(&e(2)).scale(&rint(3));
        let expect = w3
            .sub(&w1(0).mul(&w2(1, 2)))
            .sub(&w1(1).mul(&w2(0, 2)))
            .sub(&w1(2).mul(&w2(0, 1)))
            .add(&w1(0).mul(&w1(1)).mul(&w1(2)).scale(&rint(2)));
        assert_eq!(c, expect);
    }
}
