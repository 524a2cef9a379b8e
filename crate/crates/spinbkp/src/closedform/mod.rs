//! Closed algebraic formulas for W_{g,n} and H_{g,n} in the coordinate z.

pub mod engine;
pub mod frame;
pub mod loops;
pub mod ratfunc;

use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{rat, rint, Rational};
use crate::algebra::series::TruncSeries;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use engine::{apply_vertices, connected_graphs, edge_cache, full_graph_product, leaf_term, max_u, vertex_factor, Graded, Mode, VertexTable};
pub use frame::{CurveFrame, XExpander};
pub use ratfunc::{DenomCtx, RatFunc};
use std::sync::Arc;

fn stable(g: u32, n: usize) -> Result<i32> {
    let k = 2 * g as i32 - 2 + n as i32;
    if n == 0 || k <= 0 {
        return Err(Error::Unsupported(format!("(g,n) = ({g},{n}) is unstable here")));
    }
    if n > 5 {
        return Err(Error::Unsupported(format!("n = {n} > 5")));
    }
    Ok(k)
}

fn integrate(p: &UPoly) -> UPoly {
    let mut c = vec![Rational::from_integer(0.into())];
    for (k, a) in p.coeffs().iter().enumerate() {
        c.push(a / rint(k as i64 + 1));
    }
    UPoly::new(c)
}

fn upoly_in(i: usize, p: &UPoly) -> MPoly {
    MPoly::univariate(i, p.coeffs())
}

/// W_{0,1} = y(z)/2.
pub fn w01(frame: &CurveFrame) -> RatFunc {
    let ctx = frame.ctx(1);
    RatFunc::poly(&ctx, frame.y_in(0).scale(&rat(1, 2)))
}

/// H_{0,1} = ∫_0^z y Q dz/(2z).
pub fn h01(frame: &CurveFrame) -> RatFunc {
    let ctx = frame.ctx(1);
    let yq = frame.y.mul(&frame.q);
    let shifted = UPoly::new(yq.coeffs().iter().skip(1).cloned().collect());
    RatFunc::poly(&ctx, upoly_in(0, &integrate(&shifted).scale(&rat(1, 2))))
}

/// Σ_{j ≥ j0} D^{j−j0} ([t^j ħ^{2g} v^w] e^{G} · Dy/2), one variable.
fn dy_tail(frame: &CurveFrame, table: &VertexTable, g: u32, j0: i32, vw: i32) -> Result<RatFunc> {
    let ctx = frame.ctx(1);
    // Dy/2 = z y'(z)/(2Q)
    let dy = RatFunc::poly(&ctx, upoly_in(0, &frame.y.deriv()).mul_mono(Mono::var(0)).scale(&rat(1, 2))).div_q(0, 1);
    let mut parts: Vec<RatFunc> = Vec::new();
    for (&(j, e, w), p) in table.row(0)? {
        if e != 2 * g as i32 || w != vw || j < j0 {
            continue;
        }
        let k = (j - j0) as usize;
        if parts.len() <= k {
            parts.resize(k + 1, RatFunc::zero(&ctx));
        }
        parts[k] = parts[k].add(&dy.mul_poly(&upoly_in(0, p)));
    }
    let mut acc = RatFunc::zero(&ctx);
    for p in parts.iter().rev() {
        acc = if acc.is_zero() { p.clone() } else { acc.d_op(0).add(p) };
    }
    Ok(acc.reduce())
}

fn one_vertex(frame: &CurveFrame, g: u32, mode: Mode, vw: i32) -> Result<(RatFunc, VertexTable)> {
    let k = 2 * g as i32 - 1;
    let hmax = k + 1;
    let ctx = frame.ctx(1);
    let pi = vertex_factor(frame, &ctx, 0, hmax, 0)?;
    let rmax = max_u(&pi, 1).max(1);
    let mult = (vw > 0).then(|| engine::curly_multiplier(hmax, vw));
    let table = VertexTable::new(frame, rmax, hmax.max(2 * g as i32), vw, mult.as_ref())?;
    let res = apply_vertices(&pi, &[0], &[&table], mode, k)?;
    let f = res.get(&vw).cloned().unwrap_or_else(|| RatFunc::zero(&ctx));
    Ok((f, table))
}

/// [v^w] of the curly one-point correlator 𝒲_{g,1}, w odd.
pub fn curly_wg1(frame: &CurveFrame, g: u32, w: i32) -> Result<RatFunc> {
    if w <= 0 || w % 2 == 0 {
        return Err(Error::Unsupported(format!("v-degree {w} must be odd and positive")));
    }
    if g == 0 {
        // ½(e^{vy} − e^{−vy})
        let ctx = frame.ctx(1);
        let yw = frame.y.pow(w as u32).scale(&crate::algebra::rational::factorial(w as u32).recip());
        return Ok(RatFunc::poly(&ctx, upoly_in(0, &yw)));
    }
    let (main, table) = one_vertex(frame, g, Mode::W, w)?;
    Ok(main.add(&dy_tail(frame, &table, g, 1, w)?).reduce())
}

/// W_{g,1} for g ≥ 1.
pub fn wg1(frame: &CurveFrame, g: u32) -> Result<RatFunc> {
    if g == 0 {
        return Ok(w01(frame));
    }
    let (main, table) = one_vertex(frame, g, Mode::W, 0)?;
    Ok(main.add(&dy_tail(frame, &table, g, 1, 0)?).reduce())
}

/// H_{g,1} for g ≥ 1, normalized by H_{g,1}(0) = 0.
pub fn hg1(frame: &CurveFrame, g: u32) -> Result<RatFunc> {
    if g == 0 {
        return Ok(h01(frame));
    }
    let (main, table) = one_vertex(frame, g, Mode::H, 0)?;
    let mut acc = main.add(&dy_tail(frame, &table, g, 2, 0)?);
    let ctx = frame.ctx(1);
    // ∫ [ħ^{2g}] (S(ħ∂_y)^{−1} ψ̄ − ψ) y' dz
    let sig = frame::inv_s_coeff(g);
    let mut p = frame.psi_bar.clone();
    let mut corr = MPoly::zero();
    for k in 0..=g as usize {
        if k > 0 {
            p = p.deriv(1).deriv(1);
        }
        let e = 2 * g as i32 - 2 * k as i32;
        corr.add_assign(&p.coeff_of(0, e).scale(&sig[k]));
    }
    let d = corr.max_deg(1).unwrap_or(0).max(0) as usize;
    let cu = UPoly::new((0..=d).map(|e| corr.coeff(Mono::ONE.with(1, e as i32))).collect());
    let integrand = cu.compose(&frame.y).mul(&frame.y.deriv());
    acc = acc.add(&RatFunc::poly(&ctx, upoly_in(0, &integrate(&integrand))));
    // ∫ [ħ^{2g}] (ȳ − y) dz/(2z)
    let yb = frame.y_bar_h(2 * g as i32);
    if !yb.is_zero() {
        let shifted = UPoly::new(yb.coeffs().iter().skip(1).cloned().collect());
        acc = acc.add(&RatFunc::poly(&ctx, upoly_in(0, &integrate(&shifted).scale(&rat(1, 2)))));
    }
    Ok(acc.reduce())
}

/// W_{g,n} for n ≥ 2, (g,n) ≠ (0,2), from the graph sum.
pub fn wgn_graph(frame: &CurveFrame, g: u32, n: usize) -> Result<RatFunc> {
    let k = stable(g, n)?;
    if n < 2 || (g, n) == (0, 2) {
        return Err(Error::Unsupported(format!("graph formula needs n ≥ 2 and (g,n) ≠ (0,2), got ({g},{n})")));
    }
    let hmax = k + n as i32;
    let ctx = frame.ctx(n);
    let pi = full_graph_product(frame, &ctx, hmax, 0)?;
    let table = VertexTable::new(frame, max_u(&pi, n).max(1), hmax, 0, None)?;
    let tables: Vec<&VertexTable> = vec![&table; n];
    let active: Vec<usize> = (0..n).collect();
    let res = apply_vertices(&pi, &active, &tables, Mode::W, k)?;
    Ok(res.get(&0).cloned().unwrap_or_else(|| RatFunc::zero(&ctx)).reduce())
}

/// W_{g,n} as a rational function; (0,2) has no rational form in z and is rejected.
pub fn wgn(frame: &CurveFrame, g: u32, n: usize) -> Result<RatFunc> {
    match (g, n) {
        (0, 1) => Ok(w01(frame)),
        (0, 2) => Err(Error::Unsupported("W_{0,2} involves B(X_1,X_2); use w02_series".into())),
        (_, 1) => wg1(frame, g),
        _ => wgn_graph(frame, g, n),
    }
}

/// H_{g,2} for g ≥ 1.
pub fn hg2(frame: &CurveFrame, g: u32) -> Result<RatFunc> {
    if g == 0 {
        return Err(Error::Unsupported("H_{0,2} involves log X; use h02_series".into()));
    }
    let k = 2 * g as i32;
    let hmax = k + 2;
    let ctx = frame.ctx(2);
    let v0 = vertex_factor(frame, &ctx, 0, hmax, 0)?;
    let v1 = vertex_factor(frame, &ctx, 1, hmax, 0)?;
    let e = engine::edge_factor(&ctx, 0, 1, hmax, 0)?;
    let terms: Vec<(Graded, Vec<usize>)> = vec![
        (v0.mul(&v1).mul(&e), vec![0, 1]),
        (v0.mul(&leaf_term(&ctx, 1, 0, hmax, 0)), vec![0]),
        (v1.mul(&leaf_term(&ctx, 0, 1, hmax, 0)), vec![1]),
    ];
    sum_h_terms(frame, &ctx, terms, hmax, k)
}

fn sum_h_terms(frame: &CurveFrame, ctx: &Arc<DenomCtx>, terms: Vec<(Graded, Vec<usize>)>, hmax: i32, k: i32) -> Result<RatFunc> {
    let rmax = terms.iter().map(|(p, _)| max_u(p, ctx.n)).max().unwrap_or(1).max(1);
    let table = VertexTable::new(frame, rmax, hmax, 0, None)?;
    let mut acc = RatFunc::zero(ctx);
    for (pi, active) in terms {
        let tables: Vec<&VertexTable> = vec![&table; active.len()];
        let res = apply_vertices(&pi, &active, &tables, Mode::H, k)?;
        if let Some(f) = res.get(&0) {
            acc = acc.add(f);
        }
    }
    Ok(acc.reduce())
}

/// H_{g,n} for n ≥ 3 with the leaf replacements.
pub fn hgn_graph(frame: &CurveFrame, g: u32, n: usize) -> Result<RatFunc> {
    let k = stable(g, n)?;
    if n < 3 {
        return Err(Error::Unsupported("graph formula for H needs n ≥ 3".into()));
    }
    let hmax = k + n as i32;
    let ctx = frame.ctx(n);
    let verts: Vec<Graded> = (0..n).map(|i| vertex_factor(frame, &ctx, i, hmax, 0)).collect::<Result<_>>()?;
    let edges = edge_cache(&ctx, n, hmax, 0)?;
    // group contributions by active vertex set
    let mut groups: std::collections::BTreeMap<Vec<usize>, Graded> = std::collections::BTreeMap::new();
    for gamma in connected_graphs(n) {
        if 2 * gamma.len() as i32 > hmax {
            continue;
        }
        let mut deg = vec![0; n];
        for &(a, b) in &gamma {
            deg[a] += 1;
            deg[b] += 1;
        }
        let leaves: Vec<usize> = (0..n).filter(|&i| deg[i] == 1).collect();
        let inner: Vec<usize> = (0..n).filter(|&i| deg[i] >= 2).collect();
        let mut base = Graded::one(&ctx, hmax, 0);
        for &i in &inner {
            base = base.mul(&verts[i]);
        }
        for &(a, b) in &gamma {
            if deg[a] >= 2 && deg[b] >= 2 {
                base = base.mul(&edges[&(a, b)]);
            }
        }
        for mask in 0u32..(1 << leaves.len()) {
            let mut p = base.clone();
            let mut active = inner.clone();
            for (li, &i) in leaves.iter().enumerate() {
                let &(a, b) = gamma.iter().find(|&&(a, b)| a == i || b == i).unwrap();
                let kk = if a == i { b } else { a };
                if mask >> li & 1 == 1 {
                    p = p.mul(&verts[i]).mul(&edges[&(a.min(b), a.max(b))]);
                    active.push(i);
                } else {
                    p = p.mul(&leaf_term(&ctx, i, kk, hmax, 0));
                }
                if p.is_zero() {
                    break;
                }
            }
            if p.is_zero() {
                continue;
            }
            active.sort();
            let slot = groups.entry(active).or_insert_with(|| Graded::zero(&ctx, hmax, 0));
            *slot = slot.add(&p);
        }
    }
    sum_h_terms(frame, &ctx, groups.into_iter().map(|(a, p)| (p, a)).collect(), hmax, k)
}

/// H_{g,n} as a rational function; (0,2) is rejected (logarithmic).
pub fn hgn(frame: &CurveFrame, g: u32, n: usize) -> Result<RatFunc> {
    match (g, n) {
        (0, 1) => Ok(h01(frame)),
        (_, 1) => hg1(frame, g),
        (_, 2) => hg2(frame, g),
        _ => hgn_graph(frame, g, n),
    }
}

/// D_1⋯D_n applied to a rational function.
pub fn apply_d_all(f: &RatFunc) -> RatFunc {
    let mut r = f.clone();
    for i in 0..f.ctx().n {
        r = r.d_op(i).reduce();
    }
    r
}

fn divided_difference(x: &TruncSeries, order: i32, plus: bool) -> Result<TruncSeries> {
    let mut p = MPoly::zero();
    for (m, c) in x.poly().terms() {
        let k = m.get(0);
        for i in 0..k {
            let j = k - 1 - i;
            if i > order || j > order {
                continue;
            }
            let s = if plus && j % 2 == 1 { -c.clone() } else { c.clone() };
            p.add_term(Mono::ONE.with(0, i).with(1, j), s);
        }
    }
    Ok(TruncSeries::from_poly(&["z1", "z2"], &[order, order], p))
}

/// H_{0,2} = ¼ log((z_1 − z_2)(X_1 + X_2)/((z_1 + z_2)(X_1 − X_2))) as a series in z_1, z_2.
pub fn h02_series(frame: &CurveFrame, order: i32) -> Result<TruncSeries> {
    let x = frame.x_series(order + 1)?;
    let am = divided_difference(&x, order, false)?;
    let ap = divided_difference(&x, order, true)?;
    Ok(ap.log()?.sub(&am.log()?).scale(&rat(1, 4)))
}

/// W_{0,2} = D_1 D_2 H_{0,2} as a series in z_1, z_2.
pub fn w02_series(frame: &CurveFrame, order: i32) -> Result<TruncSeries> {
    let h = h02_series(frame, order)?;
    let qinv = |name: &str| -> Result<TruncSeries> {
        let z = h.like_var(name);
        let mut acc = h.like_const(rint(0));
        for (k, c) in frame.q.coeffs().iter().enumerate() {
            acc = acc.add(&z.powi(k as u32).scale(c));
        }
        acc.inverse()
    };
    let (q1, q2) = (qinv("z1")?, qinv("z2")?);
    let d = |f: &TruncSeries, name: &str, q: &TruncSeries| f.deriv(name).mul(&f.like_var(name)).mul(q);
    Ok(d(&d(&h, "z1", &q1), "z2", &q2))
}

/// Substitute z_i = z(X_i) into a two-variable z-series.
fn series2_to_x(frame: &CurveFrame, s: &TruncSeries, order: i32) -> Result<MPoly> {
    let zx = frame.z_of_x(order)?;
    let zx1 = TruncSeries::from_poly(&["z1", "z2"], &[order, order], zx.poly().clone());
    let zx2 = TruncSeries::from_poly(&["z1", "z2"], &[order, order], zx.poly().relabel(&[1, 0]));
    let r = s.subs("z1", &zx1)?.subs("z2", &zx2)?;
    Ok(r.poly().filter(|m| m.get(0) + m.get(1) <= order))
}

/// W_{g,n} expanded in X_1..X_n (slots 0..n−1), total degree ≤ order.
pub fn w_x_series(frame: &CurveFrame, g: u32, n: usize, order: u32) -> Result<MPoly> {
    let o = order as i32;
    if (g, n) == (0, 2) {
        let w = w02_series(frame, o)?;
        return series2_to_x(frame, &w, o);
    }
    let f = wgn(frame, g, n)?;
    frame.x_expander(o)?.expand(&f)
}

/// H_{g,n} expanded in X_1..X_n, total degree ≤ order.
pub fn h_x_series(frame: &CurveFrame, g: u32, n: usize, order: u32) -> Result<MPoly> {
    let o = order as i32;
    if (g, n) == (0, 2) {
        let h = h02_series(frame, o)?;
        return series2_to_x(frame, &h, o);
    }
    let f = hgn(frame, g, n)?;
    frame.x_expander(o)?.expand(&f)
}

#[cfg(test)]
mod tests;
