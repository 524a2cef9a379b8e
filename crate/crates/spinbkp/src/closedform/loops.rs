//! The [v³] loop combination from the W's, and membership in the space of
//! rational functions with poles only at zeros of Q.

use super::engine::bergman;
use super::{curly_wg1, upoly_in, wgn, CurveFrame, DenomCtx, RatFunc};
use crate::algebra::rational::{rat, rint};
use crate::algebra::upoly::UPoly;
use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// W_{0,2}(z,z) in slot i:
/// −1/24 − (z²Q'' − 2zQ' + 2Q)/(24Q³) + (zQ' − Q)²/(16Q⁴) + 1/(16Q²).
pub fn w02_diagonal(frame: &CurveFrame, ctx: &Arc<DenomCtx>, i: usize) -> RatFunc {
    let q = &frame.q;
    let z = UPoly::x();
    let q1 = q.deriv();
    let q2 = q1.deriv();
    let a = z.mul(&z).mul(&q2).sub(&z.mul(&q1).scale(&rint(2))).add(&q.scale(&rint(2)));
    let b = z.mul(&q1).sub(q);
    let num = q
        .pow(4)
        .scale(&rat(-1, 24))
        .sub(&a.mul(q).scale(&rat(1, 24)))
        .add(&b.mul(&b).scale(&rat(1, 16)))
        .add(&q.pow(2).scale(&rat(1, 16)));
    let mut qpow = vec![0; ctx.n];
    qpow[i] = 4;
    RatFunc::with_denominator(ctx, upoly_in(i, &num), qpow, &[]).reduce()
}

/// f(z_{slots[0]}, z_{slots[1]}, …) in `ctx`; slots may repeat.
pub fn restrict(f: &RatFunc, slots: &[usize], ctx: &Arc<DenomCtx>) -> Result<RatFunc> {
    let f = f.reduce();
    let m = f.ctx().n;
    if slots.len() != m {
        return Err(Error::SizeMismatch { expected: m as u32, got: slots.len() as u32 });
    }
    let mut qpow = vec![0; ctx.n];
    for (k, &s) in slots.iter().enumerate() {
        qpow[s] += f.q_powers()[k];
    }
    let mut deltas = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let p = f.delta_power(a, b);
            if p == 0 {
                continue;
            }
            let (sa, sb) = (slots[a], slots[b]);
            if sa == sb {
                return Err(Error::Assumption { module: "closedform", msg: "diagonal pole on a repeated argument".into() });
            }
            deltas.push(((sa.min(sb), sa.max(sb)), p));
        }
    }
    Ok(RatFunc::with_denominator(ctx, f.num().relabel(slots), qpow, &deltas))
}

/// W_{h,m} at repeated arguments, with W_{0,2}(X_i,X_j) + ¼B(X_i,X_j) for i ≠ j.
struct Correlators<'a> {
    frame: &'a CurveFrame,
    cache: BTreeMap<(u32, usize), RatFunc>,
}

impl Correlators<'_> {
    fn at(&mut self, h: u32, args: &[usize], ctx: &Arc<DenomCtx>) -> Result<RatFunc> {
        let m = args.len();
        if (h, m) == (0, 2) {
            let (i, j) = (args[0], args[1]);
            if i == j {
                return Ok(w02_diagonal(self.frame, ctx, i));
            }
            return Ok(bergman(ctx, i, j).div_q(i, 1).div_q(j, 1).scale(&rat(1, 4)));
        }
        let f = match self.cache.get(&(h, m)) {
            Some(f) => f.clone(),
            None => {
                let f = wgn(self.frame, h, m)?;
                self.cache.insert((h, m), f.clone());
                f
            }
        };
        restrict(&f, args, ctx)
    }
}

fn split(rest: &[usize], parts: usize) -> Vec<Vec<Vec<usize>>> {
    let total = parts.pow(rest.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut out = vec![Vec::new(); parts];
            for &j in rest {
                out[code % parts].push(j);
                code /= parts;
            }
            out
        })
        .collect()
}

fn with_first(first: &[usize], rest: &[usize]) -> Vec<usize> {
    first.iter().chain(rest).copied().collect()
}

/// [v³] of the curly correlator 𝒲_{g,n} assembled from the W_{g',n'}:
/// (4/3)(W_{g−2,n+2}(z₁,z₁,z₁,J) + 3Σ W(z₁,I₁)W(z₁,z₁,I₂) + Σ W(z₁,I₁)W(z₁,I₂)W(z₁,I₃))
/// + (1/6)(D₁² + 1)W_{g−1,n}.
pub fn loop_combination_v3(frame: &CurveFrame, g: u32, n: usize) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::Unsupported("n must be at least 1".into()));
    }
    let ctx = frame.ctx(n);
    let mut w = Correlators { frame, cache: BTreeMap::new() };
    let rest: Vec<usize> = (1..n).collect();
    let mut inner = RatFunc::zero(&ctx);
    if g >= 2 {
        inner.add_assign(&w.at(g - 2, &with_first(&[0, 0, 0], &rest), &ctx)?);
    }
    if g >= 1 {
        for g1 in 0..g {
            let g2 = g - 1 - g1;
            for parts in split(&rest, 2) {
                let a = w.at(g1, &with_first(&[0], &parts[0]), &ctx)?;
                let b = w.at(g2, &with_first(&[0, 0], &parts[1]), &ctx)?;
                inner.add_assign(&a.mul(&b).scale(&rint(3)));
            }
        }
    }
    for g1 in 0..=g {
        for g2 in 0..=g - g1 {
            let g3 = g - g1 - g2;
            for parts in split(&rest, 3) {
                let mut t = w.at(g1, &with_first(&[0], &parts[0]), &ctx)?;
                t = t.mul(&w.at(g2, &with_first(&[0], &parts[1]), &ctx)?);
                t = t.mul(&w.at(g3, &with_first(&[0], &parts[2]), &ctx)?);
                inner.add_assign(&t);
            }
        }
    }
    let mut out = inner.scale(&rat(4, 3));
    if g >= 1 {
        let all: Vec<usize> = (0..n).collect();
        let lower = w.at(g - 1, &all, &ctx)?;
        out.add_assign(&lower.d_op(0).d_op(0).add(&lower).scale(&rat(1, 6)));
    }
    Ok(out.reduce())
}

/// The combination against [v³] of the curly one-point formula.
pub fn curly_v3_compare(frame: &CurveFrame, g: u32) -> Result<CheckOutcome> {
    let direct = loop_combination_v3(frame, g, 1)?;
    let curly = curly_wg1(frame, g, 3)?;
    let diff = direct.sub(&curly).reduce();
    Ok(CheckOutcome::new(
        format!("[v^3] combination = curly formula, (g,n)=({g},1)"),
        diff.is_zero(),
        if diff.is_zero() { "equal as rational functions".to_string() } else { format!("difference has {} terms", diff.num().len()) },
    ))
}

/// Reasons f fails to be a polynomial over Π Q(z_i)^{a_i}, odd per variable,
/// bounded at infinity.
pub fn theta_problems(f: &RatFunc) -> Vec<String> {
    let f = f.reduce();
    let nq = f.ctx().q.degree().unwrap_or(0) as i32;
    let mut out = Vec::new();
    if f.has_delta() {
        out.push("poles on z_i = ±z_j".to_string());
    }
    for i in 0..f.ctx().n {
        let a = f.q_powers()[i];
        if f.num().min_deg(i).unwrap_or(0) < 0 {
            out.push(format!("pole at z_{} = 0", i + 1));
        }
        if f.num().max_deg(i).unwrap_or(0) > nq * a {
            out.push(format!("pole at z_{} = ∞", i + 1));
        }
        if !f.num().is_odd_in(i) {
            out.push(format!("not odd in z_{}", i + 1));
        }
    }
    out
}

pub fn theta_outcome(name: String, f: &RatFunc) -> CheckOutcome {
    let p = theta_problems(f);
    let detail = if p.is_empty() {
        format!("Q-powers {:?}", f.reduce().q_powers())
    } else {
        p.join("; ")
    };
    CheckOutcome::new(name, p.is_empty(), detail)
}

/// W_{g,n} lies in the space of odd rational functions with poles only at zeros of Q.
pub fn quasi_polynomiality(frame: &CurveFrame, g: u32, n: usize) -> Result<CheckOutcome> {
    let f = wgn(frame, g, n)?;
    Ok(theta_outcome(format!("quasi-polynomiality W_{{{g},{n}}}"), &f))
}

/// f + Π z_i^{a_i deg Q + 1}: odd but unbounded at infinity.
pub fn with_pole_at_infinity(f: &RatFunc) -> RatFunc {
    let f = f.reduce();
    let nq = f.ctx().q.degree().unwrap_or(0) as i32;
    let mut m = crate::algebra::mono::Mono::ONE;
    for i in 0..f.ctx().n {
        m = m.with(i, nq * f.q_powers()[i] + 1);
    }
    let bump = RatFunc::with_denominator(f.ctx(), crate::algebra::mpoly::MPoly::term(m, rint(1)), f.q_powers().to_vec(), &[]);
    f.add(&bump)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mono::Mono;
    use crate::closedform::{w01, w02_series};
    use crate::taufn::ModelSpec;

    fn preset() -> CurveFrame {
        CurveFrame::from_model(&ModelSpec::completed_cycles(1, 8).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_w02_vanishes_without_psi() {
        let f = CurveFrame::new(crate::algebra::mpoly::MPoly::zero(), crate::algebra::mpoly::MPoly::var(1), crate::algebra::series::EXACT).unwrap();
        let ctx = f.ctx(1);
        assert!(w02_diagonal(&f, &ctx, 0).is_zero());
    }

    #[test]
    fn diagonal_w02_matches_series() {
        let f = preset();
        let order = 10;
        let s = w02_series(&f, order).unwrap();
        let mut diag = vec![rint(0); order as usize + 1];
        for (m, c) in s.poly().terms() {
            let k = (m.get(0) + m.get(1)) as usize;
            if k <= order as usize {
                diag[k] += c;
            }
        }
        let ctx = f.ctx(1);
        let d = w02_diagonal(&f, &ctx, 0);
        // expand num/Q^a in z
        let qa = crate::algebra::series::TruncSeries::from_poly(&["z"], &[order], upoly_in(0, &f.q))
            .inverse()
            .unwrap()
            .powi(d.q_powers()[0] as u32);
        let e = crate::algebra::series::TruncSeries::from_poly(&["z"], &[order], d.num().clone()).mul(&qa);
        for (k, c) in diag.iter().enumerate() {
            assert_eq!(&e.poly().coeff(Mono::ONE.with(0, k as i32)), c, "z^{k}");
        }
    }

    #[test]
    fn genus_zero_combination_is_the_cube() {
        let f = preset();
        let c = loop_combination_v3(&f, 0, 1).unwrap();
        let w = w01(&f);
        assert!(c.sub(&w.mul(&w).mul(&w).scale(&rat(4, 3))).reduce().is_zero());
        assert!(c.sub(&curly_wg1(&f, 0, 3).unwrap()).reduce().is_zero());
    }

    #[test]
    fn combination_matches_curly_formula() {
        let f = preset();
        for g in 1..=2 {
            let o = curly_v3_compare(&f, g).unwrap();
            assert!(o.passed, "{}", o.line());
        }
    }

    #[test]
    fn correlators_are_quasi_polynomial() {
        let f = preset();
        for (g, n) in [(1, 1), (0, 3), (1, 2)] {
            let o = quasi_polynomiality(&f, g, n).unwrap();
            assert!(o.passed, "{}", o.line());
            let w = wgn(&f, g, n).unwrap();
            assert!(!theta_problems(&with_pole_at_infinity(&w)).is_empty());
            assert!(!theta_problems(&w.add(&RatFunc::constant(w.ctx(), rint(1)))).is_empty());
        }
    }
}
