//! Truncated multivariate formal Laurent series with named variables.
//!
//! Each variable carries a precision: the largest exponent whose coefficients
//! are known. Arithmetic propagates precision and never stores a term beyond it.

use super::mono::{Mono, NVARS};
use super::mpoly::MPoly;
use super::rational::{factorial, rat_json, rint, Rational};
use super::ring::Ring;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::sync::Arc;

pub const EXACT: i32 = i32::MAX;
const NOVAL: i64 = 1 << 20;

#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    vars: Arc<Vec<String>>,
    prec: [i32; NVARS],
    lo: [i32; NVARS],
    poly: MPoly,
}

impl std::fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

fn sat(x: i64) -> i32 {
    x.clamp(i32::MIN as i64, EXACT as i64) as i32
}

impl TruncSeries {
    /// Zero series over the given variables with the given precisions.
    pub fn zero_in(vars: &[&str], prec: &[i32]) -> Self {
        assert!(vars.len() <= NVARS && vars.len() == prec.len());
        let mut p = [EXACT; NVARS];
        p[..prec.len()].copy_from_slice(prec);
        TruncSeries {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            prec: p,
            lo: [i32::MIN; NVARS],
            poly: MPoly::zero(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        TruncSeries { vars: Arc::new(vec![]), prec: [EXACT; NVARS], lo: [i32::MIN; NVARS], poly: MPoly::constant(c) }
    }

    pub fn from_poly_like(like: &TruncSeries, poly: MPoly) -> Self {
        let mut s = TruncSeries { vars: like.vars.clone(), prec: like.prec, lo: like.lo, poly };
        s.clip();
        s
    }

    /// Build a series from a polynomial in the slots of `vars`.
    pub fn from_poly(vars: &[&str], prec: &[i32], poly: MPoly) -> Self {
        let z = Self::zero_in(vars, prec);
        Self::from_poly_like(&z, poly)
    }

    /// Set the lowest admissible exponent of a variable (Laurent window).
    pub fn with_lowest(mut self, var: &str, lo: i32) -> Result<Self> {
        let i = self.index(var)?;
        self.lo[i] = lo;
        self.check_window()?;
        Ok(self)
    }

    fn check_window(&self) -> Result<()> {
        for (m, _) in self.poly.terms() {
            for i in 0..self.nvars() {
                if m.get(i) < self.lo[i] {
                    return Err(Error::OrderOutOfRange(m.get(i)));
                }
            }
        }
        Ok(())
    }

    pub fn var_in(vars: &[&str], prec: &[i32], name: &str) -> Self {
        let z = Self::zero_in(vars, prec);
        let i = z.index(name).expect("unknown variable");
        Self::from_poly_like(&z, MPoly::var(i))
    }

    pub fn like_var(&self, name: &str) -> Self {
        let i = self.index(name).expect("unknown variable");
        Self::from_poly_like(self, MPoly::var(i))
    }

    pub fn like_const(&self, c: Rational) -> Self {
        Self::from_poly_like(self, MPoly::constant(c))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::Missing(format!("variable {name}")))
    }

    pub fn prec(&self, name: &str) -> i32 {
        self.index(name).map(|i| self.prec[i]).unwrap_or(EXACT)
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> Rational {
        self.poly.constant_term()
    }

    pub fn with_prec(&self, name: &str, p: i32) -> Self {
        let mut s = self.clone();
        let i = self.index(name).expect("unknown variable");
        s.prec[i] = s.prec[i].min(p);
        s.clip();
        s
    }

    /// Declare the coefficients known up to exponent p in `name`. The caller
    /// vouches that no further terms exist below p.
    pub fn assume_prec(&self, name: &str, p: i32) -> Self {
        let mut s = self.clone();
        let i = self.index(name).expect("unknown variable");
        s.prec[i] = p;
        s.clip();
        s
    }

    fn clip(&mut self) {
        let prec = self.prec;
        let n = self.vars.len();
        if prec[..n].iter().all(|&p| p == EXACT) {
            return;
        }
        self.poly = self.poly.filter(|m| (0..n).all(|i| m.get(i) <= prec[i]));
    }

    fn val(&self, i: usize) -> i64 {
        self.poly.min_deg(i).map(|x| x as i64).unwrap_or(NOVAL)
    }

    fn align(&self, o: &TruncSeries) -> (TruncSeries, TruncSeries) {
        if Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars {
            return (self.clone(), o.clone());
        }
        if o.vars.is_empty() {
            let o2 = TruncSeries { vars: self.vars.clone(), prec: self.prec, lo: self.lo, poly: o.poly.clone() };
            let mut o2 = o2;
            o2.prec = [EXACT; NVARS];
            return (self.clone(), o2);
        }
        if self.vars.is_empty() {
            let (b, a) = o.align(self);
            return (a, b);
        }
        panic!("incompatible series variables {:?} vs {:?}", self.vars, o.vars);
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let (a, b) = self.align(o);
        let mut prec = [EXACT; NVARS];
        for (i, p) in prec.iter_mut().enumerate() {
            *p = a.prec[i].min(b.prec[i]);
        }
        let lo = if a.vars.is_empty() { b.lo } else { a.lo };
        let mut s = TruncSeries { vars: a.vars.clone(), prec, lo, poly: a.poly.add(&b.poly) };
        s.clip();
        s
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries { poly: self.poly.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> TruncSeries {
        TruncSeries { poly: self.poly.scale(r), ..self.clone() }
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let (a, b) = self.align(o);
        let n = a.vars.len();
        let mut prec = [EXACT; NVARS];
        for i in 0..n {
            let pa = if a.prec[i] == EXACT { EXACT as i64 } else { a.prec[i] as i64 + b.val(i) };
            let pb = if b.prec[i] == EXACT { EXACT as i64 } else { b.prec[i] as i64 + a.val(i) };
            prec[i] = sat(pa.min(pb));
        }
        let poly = a.poly.mul_filter(&b.poly, |m| (0..n).all(|i| m.get(i) <= prec[i]));
        let lo = if a.vars.is_empty() { b.lo } else { a.lo };
        TruncSeries { vars: a.vars.clone(), prec, lo, poly }
    }

    pub fn mul_mono(&self, m: Mono) -> TruncSeries {
        let mut s = self.clone();
        for i in 0..self.nvars() {
            if s.prec[i] != EXACT {
                s.prec[i] += m.get(i);
            }
        }
        s.poly = s.poly.mul_mono(m);
        s
    }

    pub fn powi(&self, e: u32) -> TruncSeries {
        let mut acc = self.like_const(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn nilpotent_sum(&self, coef: impl Fn(usize) -> Rational, start: Rational) -> Result<TruncSeries> {
        let mut acc = self.like_const(start);
        let mut pw = self.like_const(Rational::one());
        for k in 1..10_000 {
            pw = pw.mul(self);
            for i in 0..self.nvars() {
                pw.prec[i] = pw.prec[i].min(self.prec[i]);
            }
            pw.clip();
            if pw.is_zero() {
                // carry the precision of the remaining unknown tail
                for i in 0..self.nvars() {
                    acc.prec[i] = acc.prec[i].min(pw.prec[i]);
                }
                acc.clip();
                return Ok(acc);
            }
            acc = acc.add(&pw.scale(&coef(k)));
        }
        Err(Error::NotNilpotent)
    }

    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        self.nilpotent_sum(|k| factorial(k as u32).recip(), Rational::one())
    }

    /// log f for f with constant term 1.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NonZeroConstant);
        }
        let g = self.sub(&self.like_const(Rational::one()));
        g.nilpotent_sum(|k| if k % 2 == 1 { rint(k as i64).recip() } else { -rint(k as i64).recip() }, Rational::zero())
    }

    /// 1/f for f with a nonzero rational constant term.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible);
        }
        let ci = c.recip();
        let g = self.scale(&ci).sub(&self.like_const(Rational::one()));
        Ok(g.nilpotent_sum(|k| if k % 2 == 0 { Rational::one() } else { -Rational::one() }, Rational::one())?.scale(&ci))
    }

    /// f^a for rational a, f with constant term 1.
    pub fn pow_rat(&self, a: &Rational) -> Result<TruncSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NonZeroConstant);
        }
        let g = self.sub(&self.like_const(Rational::one()));
        let a = a.clone();
        g.nilpotent_sum(
            move |k| {
                let mut c = Rational::one();
                for i in 0..k {
                    c = c * (&a - rint(i as i64)) / rint(i as i64 + 1);
                }
                c
            },
            Rational::one(),
        )
    }

    pub fn deriv(&self, name: &str) -> TruncSeries {
        let i = self.index(name).expect("unknown variable");
        let mut s = TruncSeries { poly: self.poly.deriv(i), ..self.clone() };
        if s.prec[i] != EXACT {
            s.prec[i] -= 1;
        }
        s
    }

    /// Coefficient of name^e, as a series in the remaining variables.
    pub fn coeff(&self, name: &str, e: i32) -> Result<TruncSeries> {
        let i = self.index(name)?;
        if e > self.prec[i] {
            return Err(Error::OrderOutOfRange(e));
        }
        let mut s = TruncSeries { poly: self.poly.coeff_of(i, e), ..self.clone() };
        s.prec[i] = EXACT;
        Ok(s)
    }

    pub fn residue(&self, name: &str) -> Result<TruncSeries> {
        let i = self.index(name)?;
        if self.prec[i] < -1 {
            return Err(Error::ResidueWindow);
        }
        self.coeff(name, -1)
    }

    /// Multiple coefficient extraction, returning a rational.
    pub fn coeff_at(&self, exps: &[(&str, i32)]) -> Result<Rational> {
        let mut m = Mono::ONE;
        for &(v, e) in exps {
            let i = self.index(v)?;
            if e > self.prec[i] {
                return Err(Error::OrderOutOfRange(e));
            }
            m = m.with(i, e);
        }
        Ok(self.poly.coeff(m))
    }

    /// Substitute variable `name` by the series g (non-negative exponents in `name`).
    pub fn subs(&self, name: &str, g: &TruncSeries) -> Result<TruncSeries> {
        let i = self.index(name)?;
        let (f, g) = self.align(g);
        let parts = f.poly.by_var(i);
        if parts.keys().any(|&e| e < 0) {
            return Err(Error::Unsupported("substitution into negative powers".into()));
        }
        let base = TruncSeries { poly: MPoly::zero(), ..f.clone() };
        let mut base = base;
        base.prec[i] = EXACT;
        let maxe = parts.keys().copied().max().unwrap_or(0);
        let mut acc = base.clone();
        for e in (0..=maxe).rev() {
            acc = acc.mul(&g);
            if let Some(c) = parts.get(&e) {
                acc = acc.add(&TruncSeries { poly: c.clone(), ..base.clone() });
            }
        }
        if f.prec[i] != EXACT {
            let k = f.prec[i] as i64 + 1;
            let mut any = false;
            for v in 0..f.nvars() {
                let gv = g.val(v);
                if gv > 0 && gv < NOVAL {
                    any = true;
                    let cmin = f.poly.terms().map(|(m, _)| m.get(v) as i64).min().unwrap_or(0).min(0);
                    acc.prec[v] = acc.prec[v].min(sat(k * gv + cmin - 1));
                }
            }
            if !any {
                return Err(Error::Unsupported("substituted series must have positive valuation".into()));
            }
            acc.clip();
        }
        Ok(acc)
    }

    /// Compositional inverse in the named variable: f(g(x)) = x.
    pub fn reversion(&self, name: &str) -> Result<TruncSeries> {
        let i = self.index(name)?;
        if !self.poly.coeff_of(i, 0).is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let a1 = self.poly.coeff_of(i, 1).as_constant().unwrap_or_else(Rational::zero);
        if a1.is_zero() {
            return Err(Error::VanishingLinear);
        }
        let x = self.like_var(name);
        let inv = a1.recip();
        let nonlin = self.sub(&x.scale(&a1));
        let mut g = x.scale(&inv);
        let steps = if self.prec[i] == EXACT { 64 } else { self.prec[i].max(1) as usize + 1 };
        for _ in 0..steps {
            let ng = x.sub(&nonlin.subs(name, &g)?).scale(&inv);
            if ng == g {
                break;
            }
            g = ng;
        }
        Ok(g)
    }

    pub fn eval_var(&self, name: &str, x: &Rational) -> Result<TruncSeries> {
        let i = self.index(name)?;
        if self.prec[i] != EXACT {
            return Err(Error::Unsupported("evaluating a truncated variable".into()));
        }
        Ok(TruncSeries { poly: self.poly.eval_var(i, x), ..self.clone() })
    }

    /// Rename/extend variables: map this series into `target` variable list.
    pub fn embed(&self, target: &[&str], prec: &[i32]) -> Result<TruncSeries> {
        let mut perm = Vec::new();
        for v in self.vars.iter() {
            perm.push(target.iter().position(|t| t == v).ok_or_else(|| Error::Missing(format!("variable {v}")))?);
        }
        let z = TruncSeries::zero_in(target, prec);
        let mut s = TruncSeries::from_poly_like(&z, self.poly.relabel(&perm));
        for (k, &p) in perm.iter().enumerate() {
            s.prec[p] = s.prec[p].min(self.prec[k]);
        }
        s.clip();
        Ok(s)
    }

    pub fn pretty(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        self.poly.pretty(&names)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.nvars();
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .map(|(m, c)| serde_json::json!([(0..n).map(|i| m.get(i)).collect::<Vec<_>>(), rat_json(c)]))
            .collect();
        serde_json::json!({"vars": *self.vars, "terms": terms})
    }
}

impl Ring for TruncSeries {
    fn rzero() -> Self {
        TruncSeries::constant(Rational::zero())
    }
    fn rone() -> Self {
        TruncSeries::constant(Rational::one())
    }
    fn from_rat(r: &Rational) -> Self {
        TruncSeries::constant(r.clone())
    }
    fn ris_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        TruncSeries::add(self, o)
    }
    fn rsub(&self, o: &Self) -> Self {
        TruncSeries::sub(self, o)
    }
    fn rmul(&self, o: &Self) -> Self {
        TruncSeries::mul(self, o)
    }
    fn rneg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn rscale(&self, r: &Rational) -> Self {
        TruncSeries::scale(self, r)
    }
}

pub fn series_exp(f: &TruncSeries) -> Result<TruncSeries> {
    f.exp()
}

pub fn series_log(f: &TruncSeries) -> Result<TruncSeries> {
    f.log()
}

pub fn series_reversion(f: &TruncSeries, var: &str) -> Result<TruncSeries> {
    f.reversion(var)
}

pub fn residue(f: &TruncSeries, var: &str) -> Result<TruncSeries> {
    f.residue(var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn exp_of_linear() {
        let t = TruncSeries::var_in(&["t", "p1"], &[3, EXACT], "t");
        let p = t.like_var("p1");
        let e = t.mul(&p).scale(&rint(2)).exp().unwrap();
        assert_eq!(e.coeff_at(&[("t", 3), ("p1", 3)]).unwrap(), rat(4, 3));
        assert_eq!(e.coeff_at(&[("t", 2), ("p1", 2)]).unwrap(), rint(2));
        assert!(e.coeff_at(&[("t", 4)]).is_err());
        assert_eq!(t.scale(&rint(0)).exp().unwrap(), t.like_const(rint(1)));
    }

    #[test]
    fn exp_log_inverse_pair() {
        let t = TruncSeries::var_in(&["t"], &[8], "t");
        let one = t.like_const(rint(1));
        let f = one.add(&t);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn reversion_of_lambert_type() {
        let z = TruncSeries::var_in(&["z"], &[5], "z");
        let x = z.mul(&z.mul(&z).neg().exp().unwrap());
        let g = x.reversion("z").unwrap();
        assert_eq!(g.coeff_at(&[("z", 1)]).unwrap(), rint(1));
        assert_eq!(g.coeff_at(&[("z", 3)]).unwrap(), rint(1));
        assert_eq!(g.coeff_at(&[("z", 5)]).unwrap(), rat(5, 2));
        assert_eq!(x.subs("z", &g).unwrap(), z);
    }

    #[test]
    fn residues() {
        let d = TruncSeries::var_in(&["d"], &[4], "d");
        let inv = TruncSeries::from_poly_like(&d, MPoly::term(Mono::from_exps(&[-1]), rint(3)));
        assert_eq!(inv.residue("d").unwrap().constant_term(), rint(3));
        assert_eq!(d.like_const(rint(1)).residue("d").unwrap().constant_term(), rint(0));
        let tight = TruncSeries::zero_in(&["d"], &[-2]);
        assert_eq!(tight.residue("d").unwrap_err(), Error::ResidueWindow);
    }

    #[test]
    fn laurent_precision_drops() {
        let h = TruncSeries::var_in(&["h"], &[4], "h");
        let hinv = TruncSeries::from_poly_like(&h, MPoly::term(Mono::from_exps(&[-2]), rint(1)));
        let p = hinv.mul(&h.like_const(rint(1)).add(&h));
        assert_eq!(p.prec("h"), 2);
    }

    #[test]
    fn rejects_constant_in_exp() {
        assert_eq!(TruncSeries::constant(rint(1)).exp().unwrap_err(), Error::NonZeroConstant);
    }
}
