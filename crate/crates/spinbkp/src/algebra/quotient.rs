//! The algebra Q[w]/(m(w)) for square-free m, with traces.

use super::rational::{rint, Rational};
use super::upoly::UPoly;
use crate::error::{Error, Result};
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, PartialEq)]
pub struct QuotientRing {
    modulus: UPoly,
    /// power sums of the roots, p_k = Σ_roots w^k, for k < 2 deg m
    powsums: Vec<Rational>,
}

impl QuotientRing {
    pub fn new(modulus: UPoly) -> Result<Arc<QuotientRing>> {
        let n = modulus.degree().ok_or(Error::NotSquareFree)?;
        if n == 0 || !modulus.is_square_free() {
            return Err(Error::NotSquareFree);
        }
        let powsums = newton_power_sums(&modulus, 2 * n);
        Ok(Arc::new(QuotientRing { modulus, powsums }))
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Σ over roots of w^k.
    pub fn power_sum(&self, k: usize) -> Rational {
        if k < self.powsums.len() {
            return self.powsums[k].clone();
        }
        newton_power_sums(&self.modulus, k + 1)[k].clone()
    }

    pub fn trace_poly(&self, p: &UPoly) -> Rational {
        let r = p.rem(&self.modulus);
        r.coeffs().iter().enumerate().map(|(k, c)| c * self.power_sum(k)).sum()
    }
}

/// Power sums p_0..p_{count-1} of the roots of m, via Newton's identities.
pub fn newton_power_sums(m: &UPoly, count: usize) -> Vec<Rational> {
    let n = m.degree().unwrap();
    let mon = m.monic();
    let a = |j: usize| mon.coeff(j);
    let mut p = vec![Rational::zero(); count];
    if count > 0 {
        p[0] = rint(n as i64);
    }
    for k in 1..count {
        let mut s = Rational::zero();
        for i in 1..=(k - 1).min(n) {
            s += a(n - i) * &p[k - i];
        }
        if k <= n {
            s += a(n - k) * rint(k as i64);
        }
        p[k] = -s;
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientElem {
    ring: Arc<QuotientRing>,
    rep: UPoly,
}

impl QuotientElem {
    pub fn new(ring: &Arc<QuotientRing>, p: UPoly) -> Self {
        let rep = p.rem(ring.modulus());
        QuotientElem { ring: ring.clone(), rep }
    }

    pub fn rep(&self) -> &UPoly {
        &self.rep
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn add(&self, o: &Self) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: self.rep.add(&o.rep) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: self.rep.sub(&o.rep) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        QuotientElem::new(&self.ring, self.rep.mul(&o.rep))
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.rep.inverse_mod(self.ring.modulus()).ok_or(Error::NotInvertible)?;
        Ok(QuotientElem { ring: self.ring.clone(), rep: inv })
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Trace of multiplication by self; equals the sum of self over all roots.
    pub fn trace(&self) -> Rational {
        self.ring.trace_poly(&self.rep)
    }

    /// Trace computed as the trace of the multiplication matrix (slow, independent).
    pub fn trace_matrix(&self) -> Rational {
        let n = self.ring.degree();
        (0..n)
            .map(|k| {
                let col = self.rep.mul(&UPoly::monomial(k, rint(1))).rem(self.ring.modulus());
                col.coeff(k)
            })
            .sum()
    }
}

pub fn quotient_trace(e: &QuotientElem) -> Rational {
    e.trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn ring(c: &[i64]) -> Arc<QuotientRing> {
        QuotientRing::new(UPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn spec_traces() {
        let r = ring(&[1, 0, -2]);
        assert_eq!(QuotientElem::new(&r, UPoly::one()).trace(), rint(2));
        assert_eq!(QuotientElem::new(&r, UPoly::x()).trace(), rint(0));
        assert_eq!(QuotientElem::new(&r, UPoly::from_ints(&[0, 0, 1])).trace(), rint(1));
    }

    #[test]
    fn rejects_non_square_free() {
        assert_eq!(QuotientRing::new(UPoly::from_ints(&[1, -2, 1])).unwrap_err(), Error::NotSquareFree);
    }

    #[test]
    fn newton_matches_matrix_trace() {
        let r = ring(&[3, -1, 4, 0, -2, 5, 1]);
        for k in 0..14 {
            let e = QuotientElem::new(&r, UPoly::monomial(k, rat(1, 1)));
            assert_eq!(e.trace(), e.trace_matrix(), "k={k}");
        }
    }

    #[test]
    fn sextic_power_sums() {
        // 1 - 6 w^6: roots satisfy w^6 = 1/6
        let r = ring(&[1, 0, 0, 0, 0, 0, -6]);
        assert_eq!(r.power_sum(6), rat(1, 1));
        assert_eq!(r.power_sum(12), rat(1, 6));
        assert_eq!(r.power_sum(3), rat(0, 1));
    }
}
