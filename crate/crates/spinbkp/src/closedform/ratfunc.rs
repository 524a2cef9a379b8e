//! Rational functions in z_1..z_n with denominators Π Q(z_i)^{a_i} Π (z_i² − z_j²)^{b_ij}.

use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{rint, Rational};
use crate::algebra::upoly::UPoly;
use std::sync::Arc;

/// The fixed even polynomial Q shared by every variable.
#[derive(Debug)]
pub struct DenomCtx {
    pub n: usize,
    pub q: UPoly,
    dq: UPoly,
}

impl DenomCtx {
    pub fn new(n: usize, q: UPoly) -> Arc<Self> {
        let dq = q.deriv();
        Arc::new(DenomCtx { n, q, dq })
    }

    fn pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // pairs ordered (0,1),(0,2),..,(1,2),..
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    fn pair_of(&self, k: usize) -> (usize, usize) {
        let mut k = k;
        for i in 0..self.n {
            let row = self.n - i - 1;
            if k < row {
                return (i, i + 1 + k);
            }
            k -= row;
        }
        unreachable!()
    }

    pub fn q_in(&self, i: usize) -> MPoly {
        MPoly::univariate(i, self.q.coeffs())
    }

    fn zdq_in(&self, i: usize) -> MPoly {
        MPoly::univariate(i, self.dq.coeffs()).mul_mono(Mono::var(i))
    }

    /// z_i² − z_j² for i < j.
    pub fn delta(&self, i: usize, j: usize) -> MPoly {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        MPoly::var(i).pow(2).sub(&MPoly::var(j).pow(2))
    }
}

#[derive(Clone, Debug)]
pub struct RatFunc {
    ctx: Arc<DenomCtx>,
    num: MPoly,
    qpow: Vec<i32>,
    dpow: Vec<i32>,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).num.is_zero()
    }
}

impl RatFunc {
    pub fn zero(ctx: &Arc<DenomCtx>) -> Self {
        Self::poly(ctx, MPoly::zero())
    }

    pub fn poly(ctx: &Arc<DenomCtx>, num: MPoly) -> Self {
        RatFunc { ctx: ctx.clone(), num, qpow: vec![0; ctx.n], dpow: vec![0; ctx.pairs()] }
    }

    pub fn constant(ctx: &Arc<DenomCtx>, c: Rational) -> Self {
        Self::poly(ctx, MPoly::constant(c))
    }

    pub fn ctx(&self) -> &Arc<DenomCtx> {
        &self.ctx
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn q_powers(&self) -> &[i32] {
        &self.qpow
    }

    pub fn delta_power(&self, i: usize, j: usize) -> i32 {
        self.dpow[self.ctx.pair_index(i, j)]
    }

    pub fn has_delta(&self) -> bool {
        self.dpow.iter().any(|&b| b > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// (num / Q(z_i)^a)·(z_i² − z_j²)^{−b} denominators given explicitly.
    pub fn with_denominator(ctx: &Arc<DenomCtx>, num: MPoly, qpow: Vec<i32>, deltas: &[((usize, usize), i32)]) -> Self {
        let mut r = Self::poly(ctx, num);
        r.qpow = qpow;
        for &((i, j), b) in deltas {
            let k = ctx.pair_index(i, j);
            r.dpow[k] += b;
        }
        r
    }

    fn lift_to(&self, qpow: &[i32], dpow: &[i32]) -> MPoly {
        let mut num = self.num.clone();
        for (i, (&have, &want)) in self.qpow.iter().zip(qpow).enumerate() {
            if want > have {
                num = num.mul(&self.ctx.q_in(i).pow((want - have) as u32));
            }
        }
        for (k, (&have, &want)) in self.dpow.iter().zip(dpow).enumerate() {
            if want > have {
                let (i, j) = self.ctx.pair_of(k);
                num = num.mul(&self.ctx.delta(i, j).pow((want - have) as u32));
            }
        }
        num
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        let qpow: Vec<i32> = self.qpow.iter().zip(&o.qpow).map(|(a, b)| *a.max(b)).collect();
        let dpow: Vec<i32> = self.dpow.iter().zip(&o.dpow).map(|(a, b)| *a.max(b)).collect();
        let num = self.lift_to(&qpow, &dpow).add(&o.lift_to(&qpow, &dpow));
        RatFunc { ctx: self.ctx.clone(), num, qpow, dpow }
    }

    pub fn add_assign(&mut self, o: &RatFunc) {
        *self = self.add(o);
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(s), ..self.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc {
            ctx: self.ctx.clone(),
            num: self.num.mul(&o.num),
            qpow: self.qpow.iter().zip(&o.qpow).map(|(a, b)| a + b).collect(),
            dpow: self.dpow.iter().zip(&o.dpow).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFunc {
        RatFunc { num: self.num.mul(p), ..self.clone() }
    }

    pub fn div_q(&self, i: usize, a: i32) -> RatFunc {
        let mut r = self.clone();
        r.qpow[i] += a;
        r
    }

    /// z_i ∂/∂z_i.
    pub fn euler(&self, i: usize) -> RatFunc {
        if self.num.is_zero() {
            return self.clone();
        }
        // factors depending on z_i with positive exponent: (poly, z_i∂_i poly, exponent, which)
        let mut factors: Vec<(MPoly, MPoly, i32, Option<usize>)> = Vec::new();
        if self.qpow[i] > 0 {
            factors.push((self.ctx.q_in(i), self.ctx.zdq_in(i), self.qpow[i], None));
        }
        for k in 0..self.dpow.len() {
            let (a, b) = self.ctx.pair_of(k);
            if self.dpow[k] > 0 && (a == i || b == i) {
                let d = self.ctx.delta(a, b);
                factors.push((d.clone(), d.euler(i), self.dpow[k], Some(k)));
            }
        }
        if factors.is_empty() {
            return RatFunc { num: self.num.euler(i), ..self.clone() };
        }
        let mut all = MPoly::one();
        for f in &factors {
            all = all.mul(&f.0);
        }
        let mut num = self.num.euler(i).mul(&all);
        for (idx, f) in factors.iter().enumerate() {
            let mut others = MPoly::one();
            for (jdx, g) in factors.iter().enumerate() {
                if jdx != idx {
                    others = others.mul(&g.0);
                }
            }
            num = num.sub(&self.num.mul(&f.1).mul(&others).scale(&rint(f.2 as i64)));
        }
        let mut r = RatFunc { num, ..self.clone() };
        for f in &factors {
            match f.3 {
                None => r.qpow[i] += 1,
                Some(k) => r.dpow[k] += 1,
            }
        }
        r
    }

    /// D_i = Q(z_i)^{−1} z_i∂_i.
    pub fn d_op(&self, i: usize) -> RatFunc {
        self.euler(i).div_q(i, 1)
    }

    /// Cancel every removable factor of the denominator.
    pub fn reduce(&self) -> RatFunc {
        let mut r = self.clone();
        if r.num.is_zero() {
            r.qpow.iter_mut().for_each(|a| *a = 0);
            r.dpow.iter_mut().for_each(|b| *b = 0);
            return r;
        }
        for k in 0..r.dpow.len() {
            let (a, b) = r.ctx.pair_of(k);
            let d = r.ctx.delta(a, b);
            while r.dpow[k] > 0 {
                match r.num.div_exact_in(a, &d) {
                    Some(q) => {
                        r.num = q;
                        r.dpow[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        for i in 0..r.ctx.n {
            let q = r.ctx.q_in(i);
            if q.max_deg(i).unwrap_or(0) == 0 {
                r.qpow[i] = 0;
                continue;
            }
            while r.qpow[i] > 0 {
                match r.num.div_exact_in(i, &q) {
                    Some(p) => {
                        r.num = p;
                        r.qpow[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        r
    }

    /// Multiply numerator and denominator so that the Q-powers equal `qpow` (no Δ allowed).
    pub fn numerator_over(&self, qpow: &[i32]) -> Option<MPoly> {
        if self.has_delta() || self.qpow.iter().zip(qpow).any(|(a, b)| a > b) {
            return None;
        }
        Some(self.lift_to(qpow, &self.dpow))
    }

    /// Swap variables i and j.
    pub fn swap_vars(&self, i: usize, j: usize) -> RatFunc {
        let mut r = RatFunc { num: self.num.swap_vars(i, j), ..self.clone() };
        r.qpow.swap(i, j);
        let mut dpow = vec![0; self.dpow.len()];
        let mut flip = false;
        for k in 0..self.dpow.len() {
            let (a, b) = self.ctx.pair_of(k);
            let t = |x: usize| if x == i { j } else if x == j { i } else { x };
            let (na, nb) = (t(a), t(b));
            if na > nb && self.dpow[k] % 2 == 1 {
                flip = !flip;
            }
            dpow[self.ctx.pair_index(na, nb)] = self.dpow[k];
        }
        r.dpow = dpow;
        if flip {
            r.num = r.num.neg();
        }
        r
    }

    /// z_i → −z_i.
    pub fn reflect(&self, i: usize) -> RatFunc {
        RatFunc { num: self.num.reflect(i), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn ctx(n: usize) -> Arc<DenomCtx> {
        DenomCtx::new(n, UPoly::new(vec![rint(1), rint(0), rint(-2)]))
    }

    #[test]
    fn pair_indexing_roundtrip() {
        let c = DenomCtx::new(5, UPoly::one());
        for k in 0..c.pairs() {
            let (i, j) = c.pair_of(k);
            assert_eq!(c.pair_index(i, j), k);
            assert_eq!(c.pair_index(j, i), k);
        }
    }

    #[test]
    fn sum_over_common_denominator() {
        let c = ctx(1);
        let a = RatFunc::poly(&c, MPoly::one()).div_q(0, 1);
        let b = RatFunc::poly(&c, MPoly::var(0).pow(2).scale(&rint(-2))).div_q(0, 1);
        assert_eq!(a.add(&b).reduce().num, MPoly::one());
        assert_eq!(a.add(&b).reduce().qpow, vec![0]);
    }

    #[test]
    fn euler_of_inverse_q() {
        // z∂(1/Q) = −zQ'/Q² = 4z²/Q²
        let c = ctx(1);
        let a = RatFunc::poly(&c, MPoly::one()).div_q(0, 1).euler(0);
        let expect = RatFunc::poly(&c, MPoly::var(0).pow(2).scale(&rint(4))).div_q(0, 2);
        assert_eq!(a, expect);
    }

    #[test]
    fn euler_of_bergman_like_term() {
        // z_0∂_0 (z_0 z_1 / (z_0² − z_1²)) = −z_0 z_1 (z_0² + z_1²)/(z_0² − z_1²)²
        let c = ctx(2);
        let zz = MPoly::var(0).mul(&MPoly::var(1));
        let f = RatFunc::with_denominator(&c, zz.clone(), vec![0, 0], &[((0, 1), 1)]);
        let g = f.euler(0);
        let s = MPoly::var(0).pow(2).add(&MPoly::var(1).pow(2));
        let expect = RatFunc::with_denominator(&c, zz.mul(&s).neg(), vec![0, 0], &[((0, 1), 2)]);
        assert_eq!(g, expect);
        // and in the second slot the sign flips
        let h = f.euler(1);
        let expect1 = RatFunc::with_denominator(&c, zz.mul(&s), vec![0, 0], &[((0, 1), 2)]);
        assert_eq!(h, expect1);
    }

    #[test]
    fn reduce_cancels_delta() {
        let c = ctx(2);
        let d = c.delta(0, 1);
        let f = RatFunc::with_denominator(&c, d.mul(&MPoly::var(0)).scale(&rat(3, 2)), vec![1, 0], &[((0, 1), 1)]);
        let r = f.reduce();
        assert!(!r.has_delta());
        assert_eq!(r.num, MPoly::var(0).scale(&rat(3, 2)));
    }

    #[test]
    fn swap_tracks_delta_sign() {
        let c = ctx(2);
        let f = RatFunc::with_denominator(&c, MPoly::var(0), vec![0, 0], &[((0, 1), 1)]);
        // z_0/(z_0²−z_1²) swapped is z_1/(z_1²−z_0²) = −z_1/(z_0²−z_1²)
        let g = f.swap_vars(0, 1);
        let expect = RatFunc::with_denominator(&c, MPoly::var(1).neg(), vec![0, 0], &[((0, 1), 1)]);
        assert_eq!(g, expect);
    }
}
