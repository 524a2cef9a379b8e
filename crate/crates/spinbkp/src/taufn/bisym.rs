//! Functions of two sets of odd power sums, p(t) and p(s), with series coefficients.

use crate::algebra::rational::{factorial, rint, Rational};
use crate::algebra::series::TruncSeries;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::schurq::SymPoly;
use std::collections::BTreeMap;

/// Σ c_{μν} p_μ(t) p_ν(s), kept for |μ|, |ν| ≤ degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSym {
    degree: u32,
    like: TruncSeries,
    terms: BTreeMap<(Partition, Partition), TruncSeries>,
}

impl BiSym {
    pub fn zero(like: &TruncSeries, degree: u32) -> Self {
        BiSym { degree, like: like.like_const(rint(0)), terms: BTreeMap::new() }
    }

    pub fn one(like: &TruncSeries, degree: u32) -> Self {
        let mut b = Self::zero(like, degree);
        b.add_monomial(Partition::empty(), Partition::empty(), like.like_const(rint(1)));
        b
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &TruncSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition, nu: &Partition) -> TruncSeries {
        self.terms.get(&(mu.clone(), nu.clone())).cloned().unwrap_or_else(|| self.like.clone())
    }

    /// Coefficient of t_μ s_ν, using p_k = k t_k.
    pub fn coeff_ts(&self, mu: &Partition, nu: &Partition) -> TruncSeries {
        let f: u32 = mu.parts().iter().chain(nu.parts()).product();
        self.coeff(mu, nu).scale(&rint(f as i64))
    }

    pub fn add_monomial(&mut self, mu: Partition, nu: Partition, c: TruncSeries) {
        if mu.size() > self.degree || nu.size() > self.degree || c.is_zero() {
            return;
        }
        let key = (mu, nu);
        let v = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add_assign(&mut self, o: &BiSym) {
        for ((a, b), c) in &o.terms {
            self.add_monomial(a.clone(), b.clone(), c.clone());
        }
    }

    /// c · f(p(t)) g(p(s)).
    pub fn outer(f: &SymPoly, g: &SymPoly, c: &TruncSeries, degree: u32) -> BiSym {
        let mut out = BiSym::zero(c, degree);
        for (a, x) in f.terms() {
            for (b, y) in g.terms() {
                out.add_monomial(a.clone(), b.clone(), c.scale(&(x * y)));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> BiSym {
        BiSym { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.scale(r))).filter(|(_, v)| !v.is_zero()).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &BiSym) -> BiSym {
        let degree = self.degree.min(o.degree);
        let mut out = BiSym::zero(&self.like, degree);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                if a1.size() + a2.size() > degree || b1.size() + b2.size() > degree {
                    continue;
                }
                out.add_monomial(a1.union(a2), b1.union(b2), c1.mul(c2));
            }
        }
        out
    }

    /// exp of an element with vanishing (∅,∅) coefficient.
    pub fn exp(&self) -> Result<BiSym> {
        if self.terms.contains_key(&(Partition::empty(), Partition::empty())) {
            return Err(Error::NonZeroConstant);
        }
        let mut acc = BiSym::one(&self.like, self.degree);
        let mut pw = acc.clone();
        for k in 1..=(2 * self.degree + 1) {
            pw = pw.mul(self);
            if pw.terms.is_empty() {
                break;
            }
            acc.add_assign(&pw.scale(&factorial(k).recip()));
        }
        Ok(acc)
    }

    pub fn swap(&self) -> BiSym {
        BiSym { terms: self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())).collect(), ..self.clone() }
    }

    /// First key where the coefficients differ, with a description.
    pub fn first_difference(&self, o: &BiSym) -> Option<(Partition, Partition, String)> {
        let degree = self.degree.min(o.degree);
        let mut keys: Vec<&(Partition, Partition)> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            if k.0.size() > degree || k.1.size() > degree {
                continue;
            }
            let a = self.coeff(&k.0, &k.1);
            let b = o.coeff(&k.0, &k.1);
            let diff = a.sub(&b);
            if !diff.is_zero() {
                return Some((k.0.clone(), k.1.clone(), format!("{} vs {}", a.pretty(), b.pretty())));
            }
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((a, b), _)| serde_json::json!({"t": a.parts(), "s": b.parts(), "coeff_ts": self.coeff_ts(a, b).to_json()}))
            .collect();
        serde_json::json!({"degree": self.degree, "terms": rows})
    }
}
