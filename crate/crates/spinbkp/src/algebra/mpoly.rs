//! Sparse multivariate Laurent polynomials over Q with packed monomials.

use super::mono::{Mono, NVARS};
use super::rational::{fmt_rat, rint, Rational};
use super::ring::Ring;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl std::fmt::Debug for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{:?}", fmt_rat(c), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl MPoly {
    /// Terms as `c*name^e`, slots without a name are skipped.
    pub fn pretty(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = fmt_rat(c);
                for (i, v) in names.iter().enumerate() {
                    let e = m.get(i);
                    if e != 0 && !v.is_empty() {
                        s.push_str(&format!("*{v}^{e}"));
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn term(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::term(Mono::var(i), Rational::one())
    }

    /// Univariate polynomial in slot `i` from a dense coefficient list.
    pub fn univariate(i: usize, coeffs: &[Rational]) -> Self {
        let mut p = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::ONE.with(i, k as i32), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: Mono) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Mono::ONE)
    }

    /// If the polynomial is a constant, return it.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &MPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &MPoly, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul_mono(&self, m: Mono) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        self.mul_filter(o, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`. `keep` must describe a
    /// truncation compatible with multiplication (an order ideal complement).
    pub fn mul_filter<F: Fn(Mono) -> bool>(&self, o: &MPoly, keep: F) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if a.len() == 1 {
            let (m0, c0) = a.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &b.terms {
                let k = m.mul(*m0);
                if keep(k) {
                    terms.insert(k, c * c0);
                }
            }
            return MPoly { terms };
        }
        let mut acc: HashMap<Mono, Rational> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let k = ma.mul(*mb);
                if !keep(k) {
                    continue;
                }
                let prod = ca * cb;
                match acc.entry(k) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                    }
                }
            }
        }
        MPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn filter<F: Fn(Mono) -> bool>(&self, keep: F) -> MPoly {
        MPoly { terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        self.pow_filter(e, |_| true)
    }

    pub fn pow_filter<F: Fn(Mono) -> bool + Copy>(&self, e: u32, keep: F) -> MPoly {
        let mut acc = MPoly::one().filter(keep);
        for _ in 0..e {
            acc = acc.mul_filter(self, keep);
        }
        acc
    }

    /// Partial derivative in slot `i`.
    pub fn deriv(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e != 0 {
                r.add_term(m.with(i, e - 1), c * rint(e as i64));
            }
        }
        r
    }

    /// Euler operator x_i ∂_i.
    pub fn euler(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e != 0 {
                r.terms.insert(*m, c * rint(e as i64));
            }
        }
        r
    }

    /// Coefficient of x_i^e, as a polynomial with slot i set to zero.
    pub fn coeff_of(&self, i: usize, e: i32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.get(i) == e)
                .map(|(m, c)| (m.with(i, 0), c.clone()))
                .collect(),
        }
    }

    /// Split by the exponent of slot i.
    pub fn by_var(&self, i: usize) -> BTreeMap<i32, MPoly> {
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.get(i)).or_default().terms.insert(m.with(i, 0), c.clone());
        }
        out
    }

    pub fn max_deg(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.get(i)).max()
    }

    pub fn min_deg(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.get(i)).min()
    }

    pub fn max_total(&self, mask: u32) -> Option<i32> {
        self.terms.keys().map(|m| m.degree_in(mask)).max()
    }

    pub fn min_total(&self, mask: u32) -> Option<i32> {
        self.terms.keys().map(|m| m.degree_in(mask)).min()
    }

    /// Substitute slot i by q (slot i must carry non-negative exponents).
    pub fn subs(&self, i: usize, q: &MPoly) -> MPoly {
        self.subs_filter(i, q, |_| true)
    }

    pub fn subs_filter<F: Fn(Mono) -> bool + Copy>(&self, i: usize, q: &MPoly, keep: F) -> MPoly {
        let parts = self.by_var(i);
        let maxe = parts.keys().copied().max().unwrap_or(0);
        assert!(parts.keys().all(|&e| e >= 0), "substitution into a Laurent slot");
        // Horner in q.
        let mut acc = MPoly::zero();
        for e in (0..=maxe).rev() {
            acc = acc.mul_filter(q, keep);
            if let Some(c) = parts.get(&e) {
                acc.add_assign(&c.filter(keep));
            }
        }
        acc
    }

    pub fn eval_var(&self, i: usize, x: &Rational) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            let f = super::rational::rpow(x, e as i64);
            r.add_term(m.with(i, 0), c * f);
        }
        r
    }

    /// Relabel slots: slot i goes to perm[i].
    pub fn relabel(&self, perm: &[usize]) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let mut e = [0i32; NVARS];
            for (i, &p) in perm.iter().enumerate() {
                e[p] += m.get(i);
            }
            for (i, ei) in e.iter_mut().enumerate().skip(perm.len()) {
                *ei += m.get(i);
            }
            r.add_term(Mono::from_exps(&e), c.clone());
        }
        r
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())).collect() }
    }

    /// Division with remainder by `d`, viewed as polynomials in slot `i` whose
    /// leading coefficient in slot i is a nonzero rational constant.
    pub fn divrem_in(&self, i: usize, d: &MPoly) -> (MPoly, MPoly) {
        let dd = d.max_deg(i).expect("division by zero");
        let lead = d.coeff_of(i, dd).as_constant().expect("leading coefficient must be constant");
        assert!(!lead.is_zero());
        let inv = lead.recip();
        let tail = d.sub(&d.filter(|m| m.get(i) == dd));
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        loop {
            let top = match rem.max_deg(i) {
                Some(t) if t >= dd => t,
                _ => break,
            };
            let lc = rem.coeff_of(i, top);
            let qpart = lc.scale(&inv).mul_mono(Mono::ONE.with(i, top - dd));
            rem = rem.filter(|m| m.get(i) != top);
            rem = rem.sub(&qpart.mul(&tail));
            quo.add_assign(&qpart);
        }
        (quo, rem)
    }

    /// Exact division; returns None if the remainder is nonzero.
    pub fn div_exact_in(&self, i: usize, d: &MPoly) -> Option<MPoly> {
        let (q, r) = self.divrem_in(i, d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Is the polynomial odd in slot i (only odd exponents)?
    pub fn is_odd_in(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.get(i).rem_euclid(2) == 1)
    }

    pub fn is_even_in(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.get(i).rem_euclid(2) == 0)
    }

    /// Negate slot i: p(.., -x_i, ..).
    pub fn reflect(&self, i: usize) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.get(i).rem_euclid(2) == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Scale slot i by a rational factor: p(.., a x_i, ..).
    pub fn scale_var(&self, i: usize, a: &Rational) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(*m, c * super::rational::rpow(a, m.get(i) as i64));
        }
        r
    }
}

impl Ring for MPoly {
    fn rzero() -> Self {
        MPoly::zero()
    }
    fn rone() -> Self {
        MPoly::one()
    }
    fn from_rat(r: &Rational) -> Self {
        MPoly::constant(r.clone())
    }
    fn ris_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        MPoly::add(self, o)
    }
    fn rsub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn rmul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn rneg(&self) -> Self {
        MPoly::neg(self)
    }
    fn rscale(&self, r: &Rational) -> Self {
        MPoly::scale(self, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn expand_square() {
        let p = x(0).add(&x(1));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(Mono::from_exps(&[1, 1])), rint(2));
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn divide_difference_of_squares() {
        let d = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        let p = d.mul(&x(0).add(&MPoly::constant(rat(3, 2))));
        let q = p.div_exact_in(0, &d).unwrap();
        assert_eq!(q, x(0).add(&MPoly::constant(rat(3, 2))));
        assert!(p.add(&MPoly::one()).div_exact_in(0, &d).is_none());
    }

    #[test]
    fn substitution() {
        // (x+1)^2 with x -> y^2
        let p = x(0).add(&MPoly::one()).pow(2);
        let s = p.subs(0, &x(1).pow(2));
        assert_eq!(s, x(1).pow(4).add(&x(1).pow(2).scale(&rint(2))).add(&MPoly::one()));
    }

    #[test]
    fn euler_operator() {
        let p = x(0).pow(3).scale(&rint(5));
        assert_eq!(p.euler(0), x(0).pow(3).scale(&rint(15)));
    }
}
