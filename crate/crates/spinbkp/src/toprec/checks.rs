//! Loop equations, the projection property and the comparison with the
//! closed formulas, each with a synthetic defect to show it can fail.

use super::local::{Local, LocalAlg};
use super::{omega02, Arg, LocalFrame, OddSpectralCurve, OmegaFn, Term, Terms, TopRec, Z1};
pub use crate::check::CheckOutcome;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{pow2, rat, rint};
use crate::algebra::upoly::UPoly;
use crate::closedform::{self, CurveFrame, RatFunc};
use crate::error::{Error, Result};

impl OmegaFn {
    /// Σ_i 1/Q̃(z_i): a simple pole at every critical point in every variable.
    pub fn pole_defect(g: u32, n: usize, qtil: &UPoly) -> OmegaFn {
        let mut num = MPoly::zero();
        for i in 0..n {
            let mut t = MPoly::one();
            for j in (0..n).filter(|&j| j != i) {
                t = t.mul(&MPoly::univariate(j, qtil.coeffs()));
            }
            num.add_assign(&t);
        }
        OmegaFn { g, n, num, den: vec![1; n] }
    }

    /// A holomorphic odd differential Π z_i^0 dz_i.
    pub fn holomorphic_defect(g: u32, n: usize) -> OmegaFn {
        OmegaFn { g, n, num: MPoly::one(), den: vec![0; n] }
    }
}

/// Lowest δ-exponent ≤ `upto` whose coefficient is nonzero at some critical point.
fn first_nonzero(alg: &LocalAlg, t: &Terms, upto: i32) -> Result<Option<i32>> {
    let lo = t.0.values().map(|l| l.lo).min().unwrap_or(upto + 1);
    for k in lo..=upto {
        if !t.coeff_zform(alg, k)?.0.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Build the local sum at increasing precision until δ^upto is exact.
fn at_precision<F>(curve: &OddSpectralCurve, start: i32, upto: i32, build: F) -> Result<Option<i32>>
where
    F: Fn(&LocalFrame) -> Result<Terms>,
{
    let mut rel = start;
    loop {
        let lf = LocalFrame::new(curve, rel)?;
        let t = build(&lf)?;
        if t.min_hi() >= upto {
            return first_nonzero(&lf.alg, &t, upto);
        }
        rel += 2;
    }
}

fn verdict(name: String, bad: Option<i32>, upto: i32) -> CheckOutcome {
    CheckOutcome::new(
        name,
        bad.is_none(),
        match bad {
            None => format!("no δ^k with k ≤ {upto}"),
            Some(k) => format!("nonzero δ^{k}"),
        },
    )
}

/// ω(z,J) + ω(σz,J) is holomorphic at the critical points and vanishes there.
pub fn linear_loop(tr: &TopRec, om: &OmegaFn) -> Result<CheckOutcome> {
    let spec: Vec<Arg> = (1..om.n).map(|j| Arg::Spec(Z1 + j)).collect();
    let bad = at_precision(&tr.curve, tr.pole_bound(om.g, om.n) + 2, 0, |lf| {
        let alg = &lf.alg;
        let mut a1 = vec![Arg::Z];
        a1.extend(spec.iter().copied());
        let mut a2 = vec![Arg::Sigma];
        a2.extend(spec.iter().copied());
        let mut t = Terms::default();
        t.push(alg, lf.eval(om, &a1)?);
        let e2 = lf.eval(om, &a2)?;
        t.push(alg, Term { local: alg.mul(&e2.local, &lf.ds), vmask: e2.vmask });
        Ok(t)
    })?;
    Ok(verdict(format!("linear loop ω_{{{},{}}}", om.g, om.n), bad, 0))
}

/// How the (g,n) = (1,0) equation treats ω_{0,2}(z, σ(z)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regularization {
    /// the X-diagonal value 2W_{0,2}(X,X) dlogX²
    XDiagonal,
    /// ω_{0,2}(z,σ(z)) with no subtraction
    Unregularized,
}

/// 2W_{0,2}(X,X)(dlogX)² as a coefficient of dz²:
/// −(1/12){X,z} + (1/8)(1/z² − (X'/X)²).
fn diagonal_w02(lf: &LocalFrame) -> Result<Local> {
    let alg = &lf.alg;
    let zinv = alg.inverse(&lf.z)?;
    let q = alg.eval_upoly(&lf.curve.qtil, &lf.z);
    let l = alg.mul(&q, &zinv);
    let l1 = alg.deriv(&l);
    let l2 = alg.deriv(&l1);
    let linv = alg.inverse(&l)?;
    let l_sq = alg.mul(&l, &l);
    let t1 = alg.add(&alg.mul(&l_sq, &l), &alg.add(&alg.scale(&alg.mul(&l, &l1), &rat(3, 1)), &l2));
    let t1 = alg.mul(&t1, &linv);
    let t2 = alg.mul(&alg.add(&l_sq, &l1), &linv);
    let schw = alg.sub(&t1, &alg.scale(&alg.mul(&t2, &t2), &rat(3, 2)));
    let z2 = alg.mul(&zinv, &zinv);
    Ok(alg.add(&alg.scale(&schw, &rat(-1, 12)), &alg.scale(&alg.sub(&z2, &l_sq), &rat(1, 8))))
}

/// ω_{g−1,n+2}(z,σz,J) + Σ ω(z,I)ω(σz,J∖I), all terms including ω_{0,1},
/// has a double zero at every critical point.
pub fn quadratic_loop(tr: &TopRec, g: u32, n: usize, reg: Regularization) -> Result<CheckOutcome> {
    let spectators: Vec<usize> = (0..n).map(|j| Z1 + j).collect();
    let bad = at_precision(&tr.curve, tr.pole_bound(g, n + 2) + 2, 1, |lf| {
        let alg = &lf.alg;
        let mut f = tr.integrand(lf, g, &spectators, false)?;
        let mut extra = None;
        if (g, n) == (1, 0) {
            let w02 = lf.eval(&omega02(), &[Arg::Z, Arg::Sigma])?;
            match reg {
                Regularization::XDiagonal => {
                    f.push(alg, Term { local: alg.scale(&w02.local, &rint(-1)), vmask: 0 });
                    extra = Some(diagonal_w02(lf)?);
                }
                Regularization::Unregularized => {}
            }
        }
        let mut f = f.map(|l| alg.mul(l, &lf.ds));
        if let Some(e) = extra {
            f.push(alg, Term { local: e, vmask: 0 });
        }
        Ok(f)
    })?;
    let label = if (g, n) == (1, 0) { format!(" ({reg:?})") } else { String::new() };
    Ok(verdict(format!("quadratic loop (g,n)=({g},{n}){label}"), bad, 1))
}

/// Poles only at critical points, no polynomial part, even in every variable.
pub fn projection(om: &OmegaFn, qtil: &UPoly) -> CheckOutcome {
    let nq = qtil.degree().unwrap_or(0) as i32;
    let mut problems = Vec::new();
    for i in 0..om.n {
        let deg = om.num.max_deg(i).unwrap_or(i32::MIN);
        if deg >= nq * om.den[i] {
            problems.push(format!("polynomial part in z_{}", i + 1));
        }
        if om.num.min_deg(i).unwrap_or(0) < 0 {
            problems.push(format!("pole at z_{} = 0", i + 1));
        }
        if !om.num.is_even_in(i) {
            problems.push(format!("not odd in z_{}", i + 1));
        }
    }
    CheckOutcome::new(
        format!("projection ω_{{{},{}}}", om.g, om.n),
        problems.is_empty(),
        if problems.is_empty() { "sum of principal parts".to_string() } else { problems.join("; ") },
    )
}

/// 2^{1−g} W_{g,n} Π Q(z_i)/z_i dz_i from the closed formulas, as an OmegaFn.
pub fn closed_omega(frame: &CurveFrame, g: u32, n: usize) -> Result<OmegaFn> {
    let w = closedform::wgn(frame, g, n)?.reduce();
    if w.has_delta() {
        return Err(Error::Assumption { module: "toprec", msg: "diagonal poles in W".into() });
    }
    let mut num = w.num().clone();
    let mut den = Vec::with_capacity(n);
    for i in 0..n {
        let zi = MPoly::var(i);
        num = num.div_exact_in(i, &zi).ok_or_else(|| Error::Assumption {
            module: "toprec",
            msg: "W is not divisible by z_i".into(),
        })?;
        den.push(w.q_powers()[i] - 1);
    }
    for (i, d) in den.iter_mut().enumerate() {
        if *d < 0 {
            num = num.mul(&MPoly::univariate(i, frame.q.coeffs()));
            *d = 0;
        }
    }
    let num = num.scale(&pow2(1 - g as i64));
    Ok(OmegaFn { g, n, num, den }.reduce(&frame.q))
}

/// ω_{g,n} from the recursion against the closed formulas.
pub fn gkl_compare(tr: &mut TopRec, g: u32, n: usize) -> Result<CheckOutcome> {
    let frame = CurveFrame::from_curve(&tr.curve.p, &tr.curve.r)?;
    let om = tr.omega(g, n)?;
    let closed = closed_omega(&frame, g, n)?;
    let ok = om.same_as(&closed, &tr.curve.qtil);
    Ok(CheckOutcome::new(
        format!("ω_{{{g},{n}}} = 2^{{1-g}} W_{{{g},{n}}} Π dlogX"),
        ok,
        format!("numerator terms {} vs {}", om.num.len(), closed.num.len()),
    ))
}

/// f(z) + f(σ(z)) is holomorphic at the critical points, for a function f of one variable.
pub fn symmetrized_holomorphic(curve: &OddSpectralCurve, name: String, f: &RatFunc) -> Result<CheckOutcome> {
    let f = f.reduce();
    if f.ctx().n != 1 || f.ctx().q != curve.qtil {
        return Err(Error::Assumption { module: "toprec", msg: "expected a function of one variable over the curve's Q".into() });
    }
    let a = f.q_powers()[0];
    let om = OmegaFn { g: 0, n: 1, num: f.num().clone(), den: vec![a.max(0)] };
    let om = if a < 0 { OmegaFn { num: om.num.mul(&MPoly::univariate(0, curve.qtil.pow((-a) as u32).coeffs())), ..om } } else { om };
    let bad = at_precision(curve, a.max(0) + 2, -1, |lf| {
        let mut t = Terms::default();
        t.push(&lf.alg, lf.eval(&om, &[Arg::Z])?);
        t.push(&lf.alg, lf.eval(&om, &[Arg::Sigma])?);
        Ok(t)
    })?;
    Ok(verdict(name, bad, -1))
}

/// Swap in a modified ω_{g,n} (for defect probes).
pub fn with_replaced(tr: &TopRec, om: OmegaFn) -> TopRec {
    let mut t = TopRec { curve: tr.curve.clone(), table: tr.table.clone() };
    t.table.insert((om.g, om.n), om);
    t
}

pub fn curve_from_ints(p: &[i64], r: &[i64]) -> Result<OddSpectralCurve> {
    OddSpectralCurve::new(UPoly::from_ints(p), UPoly::from_ints(r))
}
