//! Truncated Laurent series in δ = z − w around a generic critical point w,
//! with coefficients in Q[w]/(Q̃(w)) ⊗ Q[z_spectators, 1/Q̃(z_spectators)].

use crate::algebra::mono::{Mono, NVARS};
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{rat, rint, Rational};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};


/// Slot of the critical point w.
pub const W: usize = 0;
/// Slot of the local coordinate δ.
pub const D: usize = 1;

#[derive(Clone, Debug)]
pub struct Local {
    pub poly: MPoly,
    /// all δ-exponents below `lo` vanish
    pub lo: i32,
    /// coefficients are exact up to δ^hi
    pub hi: i32,
    /// power of Q̃(z_slot) dividing the whole series
    pub den: [i32; NVARS],
}

/// Arithmetic context: the modulus Q̃ and its copies in every slot.
#[derive(Clone, Debug)]
pub struct LocalAlg {
    pub qtil: UPoly,
    qw: MPoly,
    deg: i32,
}

fn upoly_in(slot: usize, p: &UPoly) -> MPoly {
    MPoly::univariate(slot, p.coeffs())
}

pub fn to_upoly(p: &MPoly, slot: usize) -> UPoly {
    let d = p.max_deg(slot).unwrap_or(0).max(0) as usize;
    UPoly::new((0..=d).map(|k| p.coeff(Mono::ONE.with(slot, k as i32))).collect())
}

impl LocalAlg {
    pub fn new(qtil: UPoly) -> Self {
        let deg = qtil.degree().unwrap_or(0) as i32;
        let qw = upoly_in(W, &qtil);
        LocalAlg { qtil, qw, deg }
    }

    pub fn reduce(&self, p: MPoly) -> MPoly {
        match p.max_deg(W) {
            Some(d) if d >= self.deg => p.divrem_in(W, &self.qw).1,
            _ => p,
        }
    }

    pub fn q_in(&self, slot: usize) -> MPoly {
        upoly_in(slot, &self.qtil)
    }

    pub fn constant(&self, p: MPoly, hi: i32) -> Local {
        Local { poly: trunc(p, hi), lo: 0, hi, den: [0; NVARS] }
    }

    pub fn zero(&self, hi: i32) -> Local {
        Local { poly: MPoly::zero(), lo: hi + 1, hi, den: [0; NVARS] }
    }

    /// w + δ
    pub fn z_point(&self, hi: i32) -> Local {
        self.constant(MPoly::var(W).add(&MPoly::var(D)), hi)
    }

    fn lift(&self, a: &Local, den: &[i32; NVARS]) -> MPoly {
        let mut p = a.poly.clone();
        for s in 0..NVARS {
            let k = den[s] - a.den[s];
            if k > 0 {
                p = p.mul(&self.q_in(s).pow(k as u32));
            }
        }
        p
    }

    pub fn add(&self, a: &Local, b: &Local) -> Local {
        let hi = a.hi.min(b.hi);
        let mut den = [0; NVARS];
        for s in 0..NVARS {
            den[s] = a.den[s].max(b.den[s]);
        }
        let p = self.lift(a, &den).add(&self.lift(b, &den));
        Local { poly: trunc(p, hi), lo: a.lo.min(b.lo), hi, den }
    }

    pub fn sub(&self, a: &Local, b: &Local) -> Local {
        self.add(a, &self.scale(b, &rint(-1)))
    }

    pub fn scale(&self, a: &Local, c: &Rational) -> Local {
        Local { poly: a.poly.scale(c), ..a.clone() }
    }

    pub fn mul(&self, a: &Local, b: &Local) -> Local {
        let hi = (a.lo + b.hi).min(b.lo + a.hi);
        let mut den = [0; NVARS];
        for s in 0..NVARS {
            den[s] = a.den[s] + b.den[s];
        }
        let p = a.poly.mul_filter(&b.poly, |m| m.get(D) <= hi);
        Local { poly: self.reduce(p), lo: a.lo + b.lo, hi, den }
    }

    pub fn deriv(&self, a: &Local) -> Local {
        Local { poly: a.poly.deriv(D), lo: a.lo - 1, hi: a.hi - 1, den: a.den }
    }

    /// Coefficient of δ^k, as a polynomial in w and the spectators.
    pub fn coeff(&self, a: &Local, k: i32) -> Result<MPoly> {
        if k > a.hi {
            return Err(Error::OrderOutOfRange(k));
        }
        Ok(a.poly.coeff_of(D, k))
    }

    /// Inverse of a series whose leading coefficient lies in Q[w]/(Q̃).
    pub fn inverse(&self, a: &Local) -> Result<Local> {
        if a.den.iter().any(|&d| d != 0) {
            return Err(Error::NotInvertible);
        }
        let v = match a.poly.min_deg(D) {
            Some(v) if v <= a.hi => v,
            _ => return Err(Error::NotInvertible),
        };
        let rel = a.hi - v;
        let ak: Vec<MPoly> = (0..=rel).map(|k| a.poly.coeff_of(D, v + k)).collect();
        let c0 = &ak[0];
        if c0.terms().any(|(m, _)| m.with(W, 0) != Mono::ONE) {
            return Err(Error::NotInvertible);
        }
        let b0 = to_upoly(c0, W).inverse_mod(&self.qtil).ok_or(Error::NotInvertible)?;
        let b0 = upoly_in(W, &b0);
        let mut b: Vec<MPoly> = vec![b0.clone()];
        for k in 1..=rel as usize {
            let mut s = MPoly::zero();
            for j in 1..=k {
                s.add_assign(&ak[j].mul(&b[k - j]));
            }
            b.push(self.reduce(s.mul(&b0).neg()));
        }
        let mut poly = MPoly::zero();
        for (k, bk) in b.iter().enumerate() {
            poly.add_assign(&bk.mul_mono(Mono::ONE.with(D, k as i32 - v)));
        }
        Ok(Local { poly, lo: -v, hi: rel - v, den: [0; NVARS] })
    }

    /// p(x) for a polynomial p, by Horner.
    pub fn eval_upoly(&self, p: &UPoly, x: &Local) -> Local {
        let cs = p.coeffs();
        let mut acc = self.zero(x.hi);
        acc.lo = 0;
        for c in cs.iter().rev() {
            acc = self.mul(&acc, x);
            let cst = self.constant(MPoly::constant(c.clone()), acc.hi);
            acc = self.add(&acc, &cst);
        }
        acc
    }

    /// Substitute slot `slot` of a polynomial by the series x (x.lo ≥ 0, den 0).
    pub fn subs(&self, p: &MPoly, slot: usize, x: &Local) -> Local {
        let parts = p.by_var(slot);
        let maxe = parts.keys().copied().max().unwrap_or(0);
        let mut acc = self.zero(x.hi);
        acc.lo = 0;
        for e in (0..=maxe).rev() {
            acc = self.mul(&acc, x);
            if let Some(c) = parts.get(&e) {
                let cst = self.constant(c.clone(), acc.hi);
                acc.poly = self.reduce(acc.poly.add(&cst.poly));
            }
        }
        acc
    }

    /// 1/(x² − (w+t)²) = Σ_k v^{k+1} (2wt + t²)^k with v = 1/(x² − w²) in `slot`;
    /// t must have lo ≥ 1.
    pub fn inv_diff_sq(&self, slot: usize, t: &Local) -> Local {
        let hi = t.hi;
        let two_w = self.constant(MPoly::var(W).scale(&rint(2)), hi);
        let u = self.mul(&self.add(&two_w, t), t);
        let v = MPoly::var(slot);
        let mut out = self.zero(hi);
        out.lo = 0;
        let mut uk = self.constant(MPoly::one(), hi);
        let mut vk = v.clone();
        for _ in 0..=hi.max(0) {
            out.poly.add_assign(&uk.poly.mul(&vk));
            uk = self.mul(&uk, &u);
            uk.hi = hi;
            vk = vk.mul(&v);
        }
        out.poly = trunc(out.poly, hi);
        out
    }

    /// H(x,w) = (Q̃(x) − Q̃(w))/(x² − w²), so that 1/(x² − w²) = H/Q̃(x) modulo Q̃(w).
    pub fn hdiv(&self, slot: usize) -> MPoly {
        let num = self.q_in(slot).sub(&self.qw);
        let d = MPoly::var(slot).pow(2).sub(&MPoly::var(W).pow(2));
        num.div_exact_in(slot, &d).expect("Q̃ is even")
    }

    /// Rewrite slot `slot` from v = 1/(x² − w²) to x, raising den[slot].
    pub fn v_to_z(&self, p: &MPoly, den: &mut [i32; NVARS], slot: usize) -> MPoly {
        let parts = p.by_var(slot);
        let kmax = parts.keys().copied().max().unwrap_or(0).max(0);
        let h = self.hdiv(slot);
        let q = self.q_in(slot);
        let mut out = MPoly::zero();
        let mut hk = MPoly::one();
        for k in 0..=kmax {
            if let Some(c) = parts.get(&k) {
                let lift = q.pow((kmax - k) as u32);
                out.add_assign(&self.reduce(c.mul(&hk).mul(&lift)));
            }
            hk = self.reduce(hk.mul(&h));
        }
        den[slot] += kmax;
        out
    }

    /// Σ over critical points of a polynomial in w (coefficients in other slots).
    pub fn trace(&self, p: &MPoly, ring: &crate::algebra::quotient::QuotientRing) -> MPoly {
        let p = self.reduce(p.clone());
        let mut out = MPoly::zero();
        for (m, c) in p.terms() {
            let k = m.get(W);
            out.add_term(m.with(W, 0), c * ring.power_sum(k as usize));
        }
        out
    }
}

pub fn trunc(p: MPoly, hi: i32) -> MPoly {
    if p.max_deg(D).is_none_or(|d| d <= hi) {
        p
    } else {
        p.filter(|m| m.get(D) <= hi)
    }
}

/// Dense power series Σ a_k t^k with coefficients in Q[w]/(Q̃), exact to t^{len-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct ASeries(pub Vec<UPoly>);

impl ASeries {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, o: &ASeries, m: &UPoly) -> ASeries {
        let n = self.len().min(o.len());
        let mut c = vec![UPoly::zero(); n];
        for (i, a) in self.0.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        ASeries(c.into_iter().map(|x| x.rem(m)).collect())
    }

    fn add(&self, o: &ASeries) -> ASeries {
        let n = self.len().min(o.len());
        ASeries((0..n).map(|k| self.0[k].add(&o.0[k])).collect())
    }

    fn scale(&self, s: &UPoly, m: &UPoly) -> ASeries {
        ASeries(self.0.iter().map(|a| a.mul(s).rem(m)).collect())
    }

    /// f(g) for g with vanishing constant term.
    fn compose(&self, g: &ASeries, m: &UPoly) -> ASeries {
        let n = self.len().min(g.len());
        let mut acc = ASeries(vec![UPoly::zero(); n]);
        for a in self.0.iter().take(n).rev() {
            acc = acc.mul(g, m);
            acc.0[0] = acc.0[0].add(a);
        }
        acc
    }

    fn deriv(&self) -> ASeries {
        ASeries((1..self.len()).map(|k| self.0[k].scale(&rint(k as i64))).collect())
    }

    fn inverse(&self, m: &UPoly) -> Result<ASeries> {
        let b0 = self.0[0].inverse_mod(m).ok_or(Error::NotInvertible)?;
        let mut b = vec![b0.clone()];
        for k in 1..self.len() {
            let mut s = UPoly::zero();
            for j in 1..=k {
                s = s.add(&self.0[j].mul(&b[k - j]));
            }
            b.push(s.mul(&b0).scale(&rint(-1)).rem(m));
        }
        Ok(ASeries(b))
    }

    /// Square root of a series with constant term 1.
    fn sqrt1(&self, m: &UPoly) -> ASeries {
        let mut b = vec![UPoly::one()];
        for k in 1..self.len() {
            let mut s = self.0[k].clone();
            for j in 1..k {
                s = s.sub(&b[j].mul(&b[k - j]));
            }
            b.push(s.scale(&rat(1, 2)).rem(m));
        }
        ASeries(b)
    }
}

/// The local involution σ(w + δ) = w + s(δ) with X(w + s) = X(w + δ), s = −δ + O(δ²),
/// for X = z e^{−P(R(z))}. Returns s to δ^{len-1}.
pub fn deck_series(p: &UPoly, r: &UPoly, qtil: &UPoly, len: usize) -> Result<ASeries> {
    let m = qtil;
    let big = len + 2;
    let winv = UPoly::x().inverse_mod(m).ok_or(Error::NotInvertible)?;
    // log(1 + t/w)
    let mut lg = vec![UPoly::zero(); big];
    let mut wp = UPoly::one();
    for (k, c) in lg.iter_mut().enumerate().skip(1) {
        wp = wp.mul(&winv).rem(m);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        *c = wp.scale(&rat(sign, k as i64));
    }
    // P(R(w + t)) by Horner over A[[t]]
    let mut shift = vec![UPoly::zero(); big];
    shift[0] = UPoly::x();
    shift[1] = UPoly::one();
    let shift = ASeries(shift);
    let horner = |poly: &UPoly, x: &ASeries| {
        let mut acc = ASeries(vec![UPoly::zero(); big]);
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(x, m);
            acc.0[0] = acc.0[0].add(&UPoly::new(vec![c.clone()]));
        }
        acc
    };
    let rw = horner(r, &shift);
    let prw = horner(p, &rw);
    let mut phi: Vec<UPoly> = (0..big).map(|k| lg[k].sub(&prw.0[k]).rem(m)).collect();
    phi[0] = UPoly::zero();
    if !phi[1].is_zero() {
        return Err(Error::Assumption { module: "toprec", msg: "w is not a critical point of X".into() });
    }
    // Φ = t² φ, ζ = t sqrt(φ/φ(0))
    let phi = ASeries(phi[2..].to_vec());
    let phi0inv = phi.0[0].inverse_mod(m).ok_or_else(|| Error::Assumption {
        module: "toprec",
        msg: "critical point is not simple".into(),
    })?;
    let root = phi.scale(&phi0inv, m).sqrt1(m);
    let mut zeta = vec![UPoly::zero()];
    zeta.extend(root.0.into_iter().take(len - 1));
    let zeta = ASeries(zeta);
    // Newton iteration for the compositional inverse g of ζ
    let mut x = vec![UPoly::zero(); len];
    x[1] = UPoly::one();
    let x = ASeries(x);
    let dzeta = zeta.deriv();
    let mut g = x.clone();
    let mut prec = 2usize;
    while prec < 2 * len {
        let f = zeta.compose(&g, m).add(&x.scale(&UPoly::from_ints(&[-1]), m));
        let mut dz = dzeta.compose(&g, m);
        dz.0.push(UPoly::zero());
        let step = f.mul(&dz.inverse(m)?, m);
        g = g.add(&step.scale(&UPoly::from_ints(&[-1]), m));
        prec *= 2;
    }
    let minus_zeta = zeta.scale(&UPoly::from_ints(&[-1]), m);
    let s = g.compose(&minus_zeta, m);
    Ok(s)
}

impl ASeries {
    pub fn to_local(&self, lo: i32) -> Local {
        let mut poly = MPoly::zero();
        for (k, c) in self.0.iter().enumerate() {
            poly.add_assign(&upoly_in(W, c).mul_mono(Mono::ONE.with(D, k as i32)));
        }
        Local { poly, lo, hi: self.0.len() as i32 - 1, den: [0; NVARS] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> (UPoly, UPoly, UPoly) {
        // P = y², R = z, Q̃ = 1 − 2w²
        (UPoly::from_ints(&[0, 0, 1]), UPoly::x(), UPoly::from_ints(&[1, 0, -2]))
    }

    #[test]
    fn deck_is_an_involution_of_x() {
        let (p, r, q) = gaussian();
        let s = deck_series(&p, &r, &q, 8).unwrap();
        assert_eq!(s.0[0], UPoly::zero());
        assert_eq!(s.0[1], UPoly::from_ints(&[-1]));
        // X(w+s) = X(w+δ): compare log(1+t/w) − (w+t)² at t = s and t = δ
        let alg = LocalAlg::new(q.clone());
        let sl = s.to_local(1);
        let winv = upoly_in(W, &UPoly::x().inverse_mod(&q).unwrap());
        let hi = 7;
        let logx = |t: &Local| {
            let u = alg.mul(t, &alg.constant(winv.clone(), hi));
            let mut acc = alg.zero(hi);
            let mut uk = alg.constant(MPoly::one(), hi);
            for k in 1..=hi {
                uk = alg.mul(&uk, &u);
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc = alg.add(&acc, &alg.scale(&uk, &rat(sign, k as i64)));
            }
            let zt = alg.add(&alg.constant(MPoly::var(W), hi), t);
            alg.sub(&acc, &alg.eval_upoly(&p, &zt))
        };
        let d = alg.constant(MPoly::var(D), hi);
        let diff = alg.sub(&logx(&sl), &logx(&d));
        assert!(trunc(diff.poly, diff.hi).is_zero());
    }

    #[test]
    fn inverse_and_diagonal_expansion() {
        let (_, _, q) = gaussian();
        let alg = LocalAlg::new(q.clone());
        let z = alg.z_point(6);
        let qz = alg.eval_upoly(&q, &z);
        let inv = alg.inverse(&qz).unwrap();
        assert_eq!(inv.lo, -1);
        let prod = alg.mul(&qz, &inv);
        assert_eq!(trunc(prod.poly, prod.hi), MPoly::one());
        // (x² − (w+δ)²)/(x² − (w+δ)²) = 1 once v is rewritten in x
        let d = alg.constant(MPoly::var(D), 6);
        let v = alg.inv_diff_sq(2, &d);
        let mut den = [0; NVARS];
        let p = alg.v_to_z(&v.poly, &mut den, 2);
        let zd = MPoly::var(W).add(&MPoly::var(D));
        let lin = MPoly::var(2).pow(2).sub(&zd.pow(2));
        let prod = alg.reduce(trunc(p.mul(&lin), 6));
        assert_eq!(prod, alg.reduce(alg.q_in(2).pow(den[2] as u32)));
    }
}
