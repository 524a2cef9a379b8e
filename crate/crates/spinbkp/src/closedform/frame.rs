//! The change of variables X = z e^{−2ψ(y(z))} and its companions Q, D, S, B.

use super::ratfunc::{DenomCtx, RatFunc};
use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{rint, Rational};
use crate::algebra::series::{TruncSeries, EXACT};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use crate::taufn::ModelSpec;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

pub use crate::taufn::s_coeff;

/// Polynomial weight data for the closed formulas.
///
/// `psi_bar` lives in slots (ħ, y), `y_bar` in slots (ħ, z).
#[derive(Clone, Debug)]
pub struct CurveFrame {
    pub psi_bar: MPoly,
    pub y_bar: MPoly,
    pub psi: UPoly,
    pub y: UPoly,
    pub q: UPoly,
    /// ħ-degree beyond which the weight data are unknown (EXACT for polynomial models)
    pub hbar_valid: i32,
}

fn at_h0(p: &MPoly) -> UPoly {
    let c = p.coeff_of(0, 0);
    let d = c.max_deg(1).unwrap_or(0).max(0) as usize;
    UPoly::new((0..=d).map(|k| c.coeff(Mono::ONE.with(1, k as i32))).collect())
}

/// Coefficients of 1/S(x) = Σ σ_k x^{2k}.
pub fn inv_s_coeff(kmax: u32) -> Vec<Rational> {
    let s: Vec<Rational> = (0..=kmax).map(s_coeff).collect();
    let mut out: Vec<Rational> = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax as usize {
        let mut acc = if k == 0 { rint(1) } else { Rational::zero() };
        for j in 1..=k {
            acc -= &s[j] * &out[k - j];
        }
        out.push(acc);
    }
    out
}

/// Coefficients of C(x) = cosh(x/2)/S(x) = (x/2)coth(x/2), even in x.
pub fn c_coeff(kmax: u32) -> Vec<Rational> {
    let inv = inv_s_coeff(kmax);
    let ch: Vec<Rational> = (0..=kmax).map(|k| crate::algebra::rational::pow2(-2 * k as i64) / crate::algebra::rational::factorial(2 * k)).collect();
    (0..=kmax as usize).map(|k| (0..=k).map(|j| &ch[j] * &inv[k - j]).sum()).collect()
}

impl CurveFrame {
    pub fn new(psi_bar: MPoly, y_bar: MPoly, hbar_valid: i32) -> Result<Self> {
        let psi = at_h0(&psi_bar);
        let y = at_h0(&y_bar);
        if !psi.is_even() || !y.is_odd() {
            return Err(Error::Assumption { module: "closedform", msg: "ψ must be even and y odd".into() });
        }
        if y.is_zero() {
            return Err(Error::Assumption { module: "closedform", msg: "y must be nonzero".into() });
        }
        // Q = 1 − 2 z ψ'(y(z)) y'(z)
        let dpsi = psi.deriv().compose(&y);
        let q = UPoly::one().sub(&UPoly::x().mul(&dpsi).mul(&y.deriv()).scale(&rint(2)));
        Ok(CurveFrame { psi_bar, y_bar, psi, y, q, hbar_valid })
    }

    /// Frame of a model whose ψ̄ and ȳ are polynomials.
    pub fn from_model(model: &ModelSpec) -> Result<Self> {
        let ps = &model.psi_bar;
        if ps.prec("y") != EXACT || ps.poly().max_deg(2).unwrap_or(0) > 0 {
            return Err(Error::Unsupported("closed formulas need ψ̄ polynomial in y with a numeric parameter".into()));
        }
        if model.y_bar.prec("z") != EXACT {
            return Err(Error::Unsupported("closed formulas need ȳ polynomial in z".into()));
        }
        let hv = if model.curve.is_some() { EXACT } else { model.hbar_order() };
        Self::new(ps.poly().clone(), model.y_bar.poly().clone(), hv)
    }

    /// ψ̄ = ½S(ħ∂_y)P(y), ȳ = R(z), exact in ħ.
    pub fn from_curve(p: &UPoly, r: &UPoly) -> Result<Self> {
        let m = ModelSpec::from_curve(p, r, EXACT)?;
        Self::from_model(&m)
    }

    pub fn check_hbar(&self, needed: i32) -> Result<()> {
        if needed >= self.hbar_valid {
            return Err(Error::OrderOutOfRange(needed));
        }
        Ok(())
    }

    pub fn ctx(&self, n: usize) -> Arc<DenomCtx> {
        DenomCtx::new(n, self.q.clone())
    }

    /// y(z_i) as a polynomial in slot i.
    pub fn y_in(&self, i: usize) -> MPoly {
        MPoly::univariate(i, self.y.coeffs())
    }

    /// [ħ^e] ȳ as a univariate polynomial in z.
    pub fn y_bar_h(&self, e: i32) -> UPoly {
        let c = self.y_bar.coeff_of(0, e);
        let d = c.max_deg(1).unwrap_or(0).max(0) as usize;
        UPoly::new((0..=d).map(|k| c.coeff(Mono::ONE.with(1, k as i32))).collect())
    }

    /// X(z) as a series in z to the given order.
    pub fn x_series(&self, order: i32) -> Result<TruncSeries> {
        let z = TruncSeries::var_in(&["z"], &[order], "z");
        let psi_y = self.psi.compose(&self.y);
        if !psi_y.coeff(0).is_zero() {
            return Err(Error::Unsupported("ψ(0) ≠ 0 makes X irrational over Q".into()));
        }
        let e = TruncSeries::from_poly(&["z"], &[order], MPoly::univariate(0, psi_y.coeffs())).scale(&rint(-2)).exp()?;
        Ok(z.mul(&e))
    }

    /// z(X) as a series in the variable "z" (read as X) to the given order.
    pub fn z_of_x(&self, order: i32) -> Result<TruncSeries> {
        self.x_series(order)?.reversion("z")
    }

    /// Univariate expansions z^k/Q(z)^a in powers of X, indexed by (k, a).
    pub fn x_expander(&self, order: i32) -> Result<XExpander> {
        Ok(XExpander { z_of_x: self.z_of_x(order)?, q: self.q.clone(), order, cache: BTreeMap::new() })
    }
}

/// Expands rational functions without Δ-factors into X-series.
pub struct XExpander {
    z_of_x: TruncSeries,
    q: UPoly,
    order: i32,
    cache: BTreeMap<(i32, i32), Vec<Rational>>,
}

impl XExpander {
    fn univariate(&mut self, k: i32, a: i32) -> Result<Vec<Rational>> {
        if let Some(v) = self.cache.get(&(k, a)) {
            return Ok(v.clone());
        }
        let base = TruncSeries::from_poly(&["z"], &[self.order], MPoly::univariate(0, self.q.coeffs()));
        let qa = base.inverse()?.powi(a as u32);
        let zk = TruncSeries::var_in(&["z"], &[self.order], "z").powi(k as u32);
        let f = zk.mul(&qa).subs("z", &self.z_of_x)?;
        let v: Vec<Rational> = (0..=self.order).map(|e| f.poly().coeff(Mono::ONE.with(0, e))).collect();
        self.cache.insert((k, a), v.clone());
        Ok(v)
    }

    /// Σ over the numerator of Π_i z_i^{k_i}/Q_i^{a_i}, as a polynomial in X_1..X_n
    /// truncated to total degree ≤ order.
    pub fn expand(&mut self, f: &RatFunc) -> Result<MPoly> {
        if f.has_delta() {
            return Err(Error::Assumption { module: "closedform", msg: "diagonal poles did not cancel".into() });
        }
        let n = f.ctx().n;
        let qp = f.q_powers().to_vec();
        let mut out = MPoly::zero();
        let order = self.order;
        let keep = move |m: Mono| m.degree_in((1u32 << n) - 1) <= order;
        for (m, c) in f.num().terms() {
            let mut acc = MPoly::constant(c.clone());
            for i in 0..n {
                let ui = self.univariate(m.get(i), qp[i])?;
                let p = MPoly::univariate(i, &ui);
                acc = acc.mul_filter(&p, keep);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn trivial_frame() {
        let f = CurveFrame::new(MPoly::zero(), MPoly::var(1), EXACT).unwrap();
        assert_eq!(f.q, UPoly::one());
        let x = f.x_series(9).unwrap();
        assert_eq!(x.poly(), &MPoly::var(0));
    }

    #[test]
    fn gaussian_frame() {
        // ψ = y²/2, y = z: X = z e^{−z²}, Q = 1 − 2z²
        let m = ModelSpec::completed_cycles(1, 8).unwrap();
        let f = CurveFrame::from_model(&m).unwrap();
        assert_eq!(f.q, UPoly::new(vec![rint(1), rint(0), rint(-2)]));
        let x = f.x_series(7).unwrap();
        assert_eq!(x.poly().coeff(Mono::ONE.with(0, 3)), rint(-1));
        assert_eq!(x.poly().coeff(Mono::ONE.with(0, 5)), rat(1, 2));
        assert_eq!(f.q.coeff(0), rint(1));
    }

    #[test]
    fn coth_and_inverse_s() {
        let c = c_coeff(2);
        assert_eq!(c, vec![rint(1), rat(1, 12), rat(-1, 720)]);
        let s = inv_s_coeff(1);
        assert_eq!(s, vec![rint(1), rat(-1, 24)]);
    }

    #[test]
    fn w01_lagrange() {
        // y(z(X))/2 for the s=1 preset begins ½(X + X³ + 5/2 X⁵)
        let m = ModelSpec::completed_cycles(1, 8).unwrap();
        let f = CurveFrame::from_model(&m).unwrap();
        let z = f.z_of_x(5).unwrap();
        assert_eq!(z.poly().coeff(Mono::ONE.with(0, 3)), rint(1));
        assert_eq!(z.poly().coeff(Mono::ONE.with(0, 5)), rat(5, 2));
    }
}
