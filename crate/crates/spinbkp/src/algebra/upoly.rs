//! Dense univariate polynomials over Q.

use super::rational::{fmt_rat, rint, Rational};
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Rational>,
}

impl std::fmt::Debug for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}*w^{}", fmt_rat(c), k))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| rint(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Rational::one()] }
    }

    pub fn x() -> Self {
        UPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(k: usize, a: Rational) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = a;
        UPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree None.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, s: &Rational) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn deriv(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(k, x)| x * rint(k as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// self(q(w)).
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::new(vec![c.clone()]));
        }
        acc
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = &r[k] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k - dd + j] -= &f * dj;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of self modulo m, if it exists.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        // extended Euclid on (m, self)
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(t0.scale(&r0.lead().recip()).rem(m))
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.deriv()).degree() == Some(0)
    }

    /// p(-w).
    pub fn reflect(&self) -> UPoly {
        UPoly::new(
            self.c.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }).collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        self.c.iter().enumerate().all(|(k, x)| k % 2 == 0 || x.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.c.iter().enumerate().all(|(k, x)| k % 2 == 1 || x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = UPoly::from_ints(&[1, 2, 3, 4, 5]);
        let d = UPoly::from_ints(&[1, 0, -2]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn inverse_mod_works() {
        let m = UPoly::from_ints(&[1, 0, -2]);
        let w = UPoly::x();
        let inv = w.inverse_mod(&m).unwrap();
        assert_eq!(w.mul(&inv).rem(&m), UPoly::one());
    }

    #[test]
    fn square_free() {
        assert!(UPoly::from_ints(&[1, 0, 0, 0, 0, 0, -6]).is_square_free());
        assert!(!UPoly::from_ints(&[1, -2, 1]).is_square_free());
    }
}
