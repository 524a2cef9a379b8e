//! Odd topological recursion on the spectral curve
//! X = z e^{−P(R(z))}, y = R(z), with involution z ↦ −z.
//!
//! Residues at the zeros of Q̃(z) = 1 − z P'(R(z)) R'(z) are taken in the
//! algebra Q[w]/(Q̃(w)) and summed by a trace, so every ω_{g,n} comes out as an
//! exact rational function.

pub mod checks;
pub mod local;

use crate::algebra::mono::NVARS;
use crate::algebra::mpoly::MPoly;
use crate::algebra::quotient::QuotientRing;
use crate::algebra::rational::{rat, rint, Rational};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use local::{deck_series, Local, LocalAlg, D, W};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Slot of the first (output) variable in local computations; spectators follow.
const Z1: usize = 2;
const TMP_Z: usize = 6;
const TMP_S: usize = 7;

#[derive(Clone, Debug)]
pub struct OddSpectralCurve {
    pub p: UPoly,
    pub r: UPoly,
    pub qtil: UPoly,
    pub ring: Arc<QuotientRing>,
}

impl OddSpectralCurve {
    pub fn new(p: UPoly, r: UPoly) -> Result<Self> {
        if !p.is_even() || !r.is_odd() {
            return Err(Error::Assumption { module: "toprec", msg: "P must be even and R odd".into() });
        }
        let qtil = UPoly::one().sub(&UPoly::x().mul(&p.deriv().compose(&r)).mul(&r.deriv()));
        let ring = QuotientRing::new(qtil.clone())?;
        let rp = r.deriv();
        if rp.inverse_mod(&qtil).is_none() {
            return Err(Error::Assumption { module: "toprec", msg: "dy vanishes at a critical point".into() });
        }
        Ok(OddSpectralCurve { p, r, qtil, ring })
    }

    /// Number of critical points of X.
    pub fn n_critical(&self) -> usize {
        self.ring.degree()
    }
}

/// ω = num(z_1..z_n) / Π Q̃(z_i)^{den_i} dz_1⋯dz_n.
#[derive(Clone, Debug)]
pub struct OmegaFn {
    pub g: u32,
    pub n: usize,
    pub num: MPoly,
    pub den: Vec<i32>,
}

impl OmegaFn {
    /// Cancel common factors of Q̃ between numerator and denominator.
    pub fn reduce(mut self, qtil: &UPoly) -> Self {
        for i in 0..self.n {
            let qi = MPoly::univariate(i, qtil.coeffs());
            while self.den[i] > 0 {
                match self.num.div_exact_in(i, &qi) {
                    Some(q) => {
                        self.num = q;
                        self.den[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Equality as rational functions.
    pub fn same_as(&self, o: &OmegaFn, qtil: &UPoly) -> bool {
        if self.n != o.n {
            return false;
        }
        let mut a = self.num.clone();
        let mut b = o.num.clone();
        for i in 0..self.n {
            let qi = MPoly::univariate(i, qtil.coeffs());
            let m = self.den[i].max(o.den[i]);
            a = a.mul(&qi.pow((m - self.den[i]) as u32));
            b = b.mul(&qi.pow((m - o.den[i]) as u32));
        }
        a == b
    }

    pub fn add(&self, o: &OmegaFn, qtil: &UPoly) -> OmegaFn {
        let mut a = self.num.clone();
        let mut b = o.num.clone();
        let mut den = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let qi = MPoly::univariate(i, qtil.coeffs());
            let m = self.den[i].max(o.den[i]);
            a = a.mul(&qi.pow((m - self.den[i]) as u32));
            b = b.mul(&qi.pow((m - o.den[i]) as u32));
            den.push(m);
        }
        OmegaFn { g: self.g, n: self.n, num: a.add(&b), den }
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> OmegaFn {
        let mut den = self.den.clone();
        den.swap(i, j);
        OmegaFn { num: self.num.swap_vars(i, j), den, ..self.clone() }
    }

    pub fn is_symmetric(&self, qtil: &UPoly) -> bool {
        (1..self.n).all(|j| self.same_as(&self.swap_vars(0, j), qtil))
    }
}

/// Where an argument of ω is evaluated during a residue computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Arg {
    /// the running point w + δ
    Z,
    /// its image w + s(δ) under the local involution
    Sigma,
    /// a spectator variable in the given local slot
    Spec(usize),
}

/// Local expansions shared by all evaluations at one working precision.
pub struct LocalFrame<'a> {
    pub curve: &'a OddSpectralCurve,
    pub alg: LocalAlg,
    /// relative precision of every base series
    pub rel: i32,
    pub z: Local,
    pub s: Local,
    pub sigma: Local,
    pub ds: Local,
    qz_inv: Local,
    qs_inv: Local,
}

impl<'a> LocalFrame<'a> {
    pub fn new(curve: &'a OddSpectralCurve, rel: i32) -> Result<Self> {
        let alg = LocalAlg::new(curve.qtil.clone());
        let len = (rel + 3) as usize;
        let s = deck_series(&curve.p, &curve.r, &curve.qtil, len)?.to_local(1);
        let hi0 = rel + 1;
        let z = alg.z_point(hi0);
        let wv = alg.constant(MPoly::var(W), hi0);
        let sigma = alg.add(&wv, &s);
        let ds = alg.deriv(&s);
        let qz = alg.eval_upoly(&curve.qtil, &z);
        let qs = alg.eval_upoly(&curve.qtil, &sigma);
        let qz_inv = alg.inverse(&qz)?;
        let qs_inv = alg.inverse(&qs)?;
        Ok(LocalFrame { curve, alg, rel, z, s, sigma, ds, qz_inv, qs_inv })
    }

    fn point(&self, a: Arg) -> &Local {
        match a {
            Arg::Z => &self.z,
            Arg::Sigma => &self.sigma,
            Arg::Spec(_) => unreachable!(),
        }
    }

    fn q_inv(&self, a: Arg, k: i32) -> Local {
        let base = if a == Arg::Z { &self.qz_inv } else { &self.qs_inv };
        let mut r = self.alg.constant(MPoly::one(), self.rel + 4);
        for _ in 0..k {
            r = self.alg.mul(&r, base);
        }
        r
    }

    /// a − w as a series with lo = 1.
    fn offset(&self, a: Arg) -> Local {
        let mut t = match a {
            Arg::Z => self.alg.constant(MPoly::var(D), self.rel + 1),
            _ => self.s.clone(),
        };
        t.lo = 1;
        t
    }

    /// 1/(x² − a²) with x a spectator slot in v-form.
    fn inv_diff_sq(&self, x: usize, a: Arg) -> Local {
        self.alg.inv_diff_sq(x, &self.offset(a))
    }

    /// ½(1/(a−b)² + 1/(a+b)²), the coefficient of ω_{0,2}.
    fn omega02(&self, a: Arg, b: Arg) -> Result<Term> {
        let alg = &self.alg;
        match (a, b) {
            (Arg::Spec(_), Arg::Spec(_)) => Err(Error::Unsupported("ω_{0,2} between spectators".into())),
            (Arg::Spec(_), _) => self.omega02(b, a),
            (_, Arg::Spec(x)) => {
                // (x² + a²)/(x² − a²)² = V + 2a²V²
                let v = self.inv_diff_sq(x, a);
                let pa = self.point(a);
                let a2 = alg.mul(pa, pa);
                let v2 = alg.mul(&v, &v);
                let local = alg.add(&v, &alg.scale(&alg.mul(&a2, &v2), &rint(2)));
                Ok(Term { local, vmask: 1 << x })
            }
            _ => {
                let pa = self.point(a);
                let pb = self.point(b);
                let dm = alg.inverse(&alg.sub(pa, pb))?;
                let dp = alg.inverse(&alg.add(pa, pb))?;
                let s = alg.add(&alg.mul(&dm, &dm), &alg.mul(&dp, &dp));
                Ok(Term { local: alg.scale(&s, &rat(1, 2)), vmask: 0 })
            }
        }
    }

    /// The coefficient function of ω evaluated at the given arguments.
    pub fn eval(&self, om: &OmegaFn, args: &[Arg]) -> Result<Term> {
        if om.g == 0 && om.n == 2 {
            return self.omega02(args[0], args[1]);
        }
        let alg = &self.alg;
        let mut perm = vec![0usize; om.n];
        let mut den = [0i32; NVARS];
        let mut local_args = Vec::new();
        for (i, a) in args.iter().enumerate() {
            match a {
                Arg::Spec(x) => {
                    perm[i] = *x;
                    den[*x] += om.den[i];
                }
                Arg::Z => {
                    perm[i] = TMP_Z;
                    local_args.push((TMP_Z, *a, om.den[i]));
                }
                Arg::Sigma => {
                    perm[i] = TMP_S;
                    local_args.push((TMP_S, *a, om.den[i]));
                }
            }
        }
        let num = om.num.relabel(&perm);
        let mut factor = alg.constant(MPoly::one(), self.rel + 4);
        let mut out = alg.constant(num, self.rel + 4);
        for &(slot, a, d) in &local_args {
            factor = alg.mul(&factor, &self.q_inv(a, d));
            let hi = out.hi;
            out = alg.subs(&out.poly, slot, self.point(a));
            out.hi = out.hi.min(hi);
        }
        out.den = den;
        Ok(Term { local: alg.mul(&out, &factor), vmask: 0 })
    }

    /// [σ/(z1²−σ²) − z/(z1²−z²)] / ((R(σ) − R(z)) Q̃(z)/z), with z1 in v-form.
    fn kernel(&self) -> Result<Local> {
        let alg = &self.alg;
        let ks = alg.mul(&self.sigma, &self.inv_diff_sq(Z1, Arg::Sigma));
        let kz = alg.mul(&self.z, &self.inv_diff_sq(Z1, Arg::Z));
        let num = alg.sub(&ks, &kz);
        let ry = alg.sub(&alg.eval_upoly(&self.curve.r, &self.sigma), &alg.eval_upoly(&self.curve.r, &self.z));
        let qz = alg.eval_upoly(&self.curve.qtil, &self.z);
        let den = alg.mul(&ry, &alg.mul(&qz, &alg.inverse(&self.z)?));
        Ok(alg.mul(&num, &alg.inverse(&den)?))
    }
}

/// A local series together with the slots that carry v = 1/(x² − w²) instead of x.
#[derive(Clone, Debug)]
pub struct Term {
    pub local: Local,
    pub vmask: u32,
}

/// Sums of terms, kept apart by v-mask.
#[derive(Clone, Debug, Default)]
pub struct Terms(pub BTreeMap<u32, Local>);

impl Terms {
    fn push(&mut self, alg: &LocalAlg, t: Term) {
        let e = match self.0.remove(&t.vmask) {
            None => t.local,
            Some(prev) => alg.add(&prev, &t.local),
        };
        self.0.insert(t.vmask, e);
    }

    pub fn map(&self, f: impl Fn(&Local) -> Local) -> Terms {
        Terms(self.0.iter().map(|(m, l)| (*m, f(l))).collect())
    }

    pub fn min_hi(&self) -> i32 {
        self.0.values().map(|l| l.hi).min().unwrap_or(i32::MAX)
    }

    /// [δ^k] of the sum in x-form over a common denominator, still a polynomial in w.
    pub fn coeff_zform(&self, alg: &LocalAlg, k: i32) -> Result<(MPoly, [i32; NVARS])> {
        let mut parts = Vec::new();
        for (mask, l) in &self.0 {
            let mut den = l.den;
            let mut c = alg.coeff(l, k)?;
            for s in 0..NVARS {
                if mask >> s & 1 == 1 {
                    c = alg.v_to_z(&c, &mut den, s);
                }
            }
            parts.push((c, den));
        }
        let mut common = [0; NVARS];
        for (_, d) in &parts {
            for s in 0..NVARS {
                common[s] = common[s].max(d[s]);
            }
        }
        let mut out = MPoly::zero();
        for (c, d) in parts {
            let mut c = c;
            for s in 0..NVARS {
                if common[s] > d[s] {
                    c = c.mul(&alg.q_in(s).pow((common[s] - d[s]) as u32));
                }
            }
            out.add_assign(&alg.reduce(c));
        }
        Ok((out, common))
    }
}

/// All ω_{g,n} up to a given stability, computed by the recursion.
pub struct TopRec {
    pub curve: OddSpectralCurve,
    table: BTreeMap<(u32, usize), OmegaFn>,
}

pub fn omega02() -> OmegaFn {
    OmegaFn { g: 0, n: 2, num: MPoly::zero(), den: vec![0, 0] }
}

impl TopRec {
    pub fn new(curve: OddSpectralCurve) -> Self {
        let mut table = BTreeMap::new();
        table.insert((0, 2), omega02());
        TopRec { curve, table }
    }

    pub fn get(&self, g: u32, n: usize) -> Option<&OmegaFn> {
        self.table.get(&(g, n))
    }

    /// ω_{g,n}, computing every ingredient first.
    pub fn omega(&mut self, g: u32, n: usize) -> Result<OmegaFn> {
        if let Some(o) = self.table.get(&(g, n)) {
            return Ok(o.clone());
        }
        if 2 * g as i32 - 2 + n as i32 <= 0 || n == 0 {
            return Err(Error::Unsupported(format!("ω_{{{g},{n}}} is not produced by the recursion")));
        }
        if n > 5 {
            return Err(Error::Unsupported("at most five arguments".into()));
        }
        if g >= 1 {
            self.omega(g - 1, n + 1)?;
        }
        for g1 in 0..=g {
            for n1 in 1..=n {
                let stable = 2 * g1 as i32 - 2 + n1 as i32 > 0 || (g1, n1) == (0, 2);
                let prec = (g1, n1) != (g, n);
                let smaller = 2 * g1 as i32 + n1 as i32 <= 2 * g as i32 + n as i32;
                if stable && prec && smaller && (g1, n1) != (0, 2) {
                    self.omega(g1, n1)?;
                }
            }
        }
        let om = self.recurse(g, n)?;
        self.table.insert((g, n), om.clone());
        Ok(om)
    }

    fn pole_bound(&self, g: u32, n: usize) -> i32 {
        (6 * g as i32 - 4 + 2 * n as i32).max(2)
    }

    fn recurse(&self, g: u32, n: usize) -> Result<OmegaFn> {
        let mut rel = self.pole_bound(g, n) + 2;
        loop {
            match self.recurse_at(g, n, rel)? {
                Some(o) => return Ok(o),
                None => rel += 2,
            }
        }
    }

    /// Integrand ω_{g−1,n+1}(z,σz,J) + Σ' ω(z,I)ω(σz,J∖I), as a coefficient of dz dσ.
    pub fn integrand(&self, lf: &LocalFrame, g: u32, spectators: &[usize], primed: bool) -> Result<Terms> {
        let alg = &lf.alg;
        let k = spectators.len();
        let mut total = Terms::default();
        if g >= 1 {
            let om = self.table.get(&(g - 1, k + 2)).ok_or_else(|| Error::Missing(format!("ω_{{{},{}}}", g - 1, k + 2)))?;
            let mut args = vec![Arg::Z, Arg::Sigma];
            args.extend(spectators.iter().map(|&s| Arg::Spec(s)));
            total.push(alg, lf.eval(om, &args)?);
        }
        for g1 in 0..=g {
            for mask in 0u32..(1 << k) {
                let i1: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| spectators[b]).collect();
                let i2: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 0).map(|b| spectators[b]).collect();
                let g2 = g - g1;
                let (n1, n2) = (i1.len() + 1, i2.len() + 1);
                if primed && ((g1, n1) == (0, 1) || (g2, n2) == (0, 1)) {
                    continue;
                }
                let a = self.factor(lf, g1, Arg::Z, &i1)?;
                let b = self.factor(lf, g2, Arg::Sigma, &i2)?;
                let local = alg.mul(&a.local, &b.local);
                total.push(alg, Term { local, vmask: a.vmask | b.vmask });
            }
        }
        Ok(total)
    }

    fn factor(&self, lf: &LocalFrame, g: u32, first: Arg, rest: &[usize]) -> Result<Term> {
        let n = rest.len() + 1;
        if (g, n) == (0, 1) {
            return Ok(Term { local: omega01_coeff(lf, first)?, vmask: 0 });
        }
        let om = self.table.get(&(g, n)).ok_or_else(|| Error::Missing(format!("ω_{{{g},{n}}}")))?;
        let mut args = vec![first];
        args.extend(rest.iter().map(|&s| Arg::Spec(s)));
        lf.eval(om, &args)
    }

    fn recurse_at(&self, g: u32, n: usize, rel: i32) -> Result<Option<OmegaFn>> {
        let lf = LocalFrame::new(&self.curve, rel)?;
        let alg = &lf.alg;
        let spectators: Vec<usize> = (1..n).map(|j| Z1 + j).collect();
        let k = lf.kernel()?;
        let kds = alg.mul(&k, &lf.ds);
        let terms = self.integrand(&lf, g, &spectators, true)?.map(|f| alg.mul(&kds, f));
        if terms.min_hi() < -1 {
            return Ok(None);
        }
        let mut perm: Vec<usize> = (0..NVARS).collect();
        for j in 0..n {
            perm[Z1 + j] = j;
        }
        perm[W] = 6;
        perm[D] = 7;
        let mut out: Option<OmegaFn> = None;
        for (mask, l) in &terms.0 {
            let mut den = l.den;
            let mut res = alg.coeff(l, -1)?;
            for s in 0..NVARS {
                if (mask | 1 << Z1) >> s & 1 == 1 {
                    res = alg.v_to_z(&res, &mut den, s);
                }
            }
            let tr = alg.trace(&res, &self.curve.ring).scale(&rat(1, 2));
            let part = OmegaFn { g, n, num: tr.relabel(&perm), den: (0..n).map(|j| den[Z1 + j]).collect() };
            let part = part.reduce(&self.curve.qtil);
            out = Some(match out {
                None => part,
                Some(o) => o.add(&part, &self.curve.qtil),
            });
        }
        let out = out.ok_or_else(|| Error::Missing("empty integrand".into()))?;
        Ok(Some(out.reduce(&self.curve.qtil)))
    }
}

/// y dlogX as a coefficient of dz: R(z) Q̃(z)/z.
pub fn omega01_coeff(lf: &LocalFrame, a: Arg) -> Result<Local> {
    let alg = &lf.alg;
    let pt = lf.point(a);
    let num = alg.mul(&alg.eval_upoly(&lf.curve.r, pt), &alg.eval_upoly(&lf.curve.qtil, pt));
    Ok(alg.mul(&num, &alg.inverse(pt)?))
}

/// ω_{0,1} in the same form as the other ω: R(z)Q̃(z)/z dz.
pub fn omega01_fn(curve: &OddSpectralCurve) -> OmegaFn {
    let num = curve.r.mul(&curve.qtil);
    let c: Vec<Rational> = num.coeffs().iter().skip(1).cloned().collect();
    OmegaFn { g: 0, n: 1, num: MPoly::univariate(0, &c), den: vec![0] }
}

#[cfg(test)]
mod tests;
