//! Graph sums with vertex operators Σ_{j,r} D^j [t^j] Q^{−1} e^{−2tψ} ∂_y^r e^{2t S(tħ∂)/S(ħ∂) ψ̄} [u^r].

use super::frame::{c_coeff, inv_s_coeff, s_coeff, CurveFrame};
use super::ratfunc::{DenomCtx, RatFunc};
use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{factorial, rint, Rational};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const H: usize = 0;
pub const V: usize = 7;

pub fn u_slot(i: usize) -> usize {
    1 + i
}

/// A polynomial in ħ, u_1..u_n and v with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct Graded {
    ctx: Arc<DenomCtx>,
    hmax: i32,
    vmax: i32,
    terms: BTreeMap<Mono, RatFunc>,
}

impl Graded {
    pub fn zero(ctx: &Arc<DenomCtx>, hmax: i32, vmax: i32) -> Self {
        Graded { ctx: ctx.clone(), hmax, vmax, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<DenomCtx>, hmax: i32, vmax: i32) -> Self {
        let mut g = Self::zero(ctx, hmax, vmax);
        g.add_term(Mono::ONE, RatFunc::constant(ctx, rint(1)));
        g
    }

    fn keep(&self, m: Mono) -> bool {
        m.get(H) <= self.hmax && m.get(V) <= self.vmax
    }

    pub fn add_term(&mut self, m: Mono, c: RatFunc) {
        if c.is_zero() || !self.keep(m) {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Graded) -> Graded {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Rational) -> Graded {
        let mut r = Graded::zero(&self.ctx, self.hmax, self.vmax);
        for (m, c) in &self.terms {
            r.add_term(*m, c.scale(s));
        }
        r
    }

    pub fn mul(&self, o: &Graded) -> Graded {
        let mut r = Graded::zero(&self.ctx, self.hmax.min(o.hmax), self.vmax.min(o.vmax));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(*m2);
                if r.keep(m) {
                    r.add_term(m, c1.mul(c2));
                }
            }
        }
        r
    }

    /// exp of an element whose terms all carry ħ to a positive power.
    pub fn exp(&self) -> Result<Graded> {
        if self.terms.keys().any(|m| m.get(H) <= 0) {
            return Err(Error::NotNilpotent);
        }
        let mut acc = Graded::one(&self.ctx, self.hmax, self.vmax);
        let mut pw = acc.clone();
        for k in 1..=(self.hmax.max(0) as u32 + 1) {
            pw = pw.mul(self);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw.scale(&factorial(k).recip()));
        }
        Ok(acc)
    }

    fn reduce_all(&self) -> Graded {
        Graded { terms: self.terms.iter().map(|(m, c)| (*m, c.reduce())).collect(), ..self.clone() }
    }
}

/// C(ħu_i) e^{u_i(S(ħu_i z_i∂)ȳ_i − y_i)}: the vertex factor with 1/(2ħu_i) removed.
pub fn vertex_factor(frame: &CurveFrame, ctx: &Arc<DenomCtx>, i: usize, hmax: i32, vmax: i32) -> Result<Graded> {
    let us = u_slot(i);
    let mut expo = Graded::zero(ctx, hmax, vmax);
    let ydeg = frame.y_bar.max_deg(0).unwrap_or(0);
    for e in 0..=ydeg {
        let yb = frame.y_bar_h(e);
        if yb.is_zero() {
            continue;
        }
        let poly0 = MPoly::univariate(i, yb.coeffs());
        // k = 0 term: u(ȳ − y)
        if e > 0 {
            expo.add_term(Mono::ONE.with(H, e).with(us, 1), RatFunc::poly(ctx, poly0.clone()));
        }
        let mut p = poly0;
        for k in 1.. {
            let he = e + 2 * k;
            if he > hmax {
                break;
            }
            p = p.euler(i).euler(i);
            let c = s_coeff(k as u32);
            expo.add_term(Mono::ONE.with(H, he).with(us, 2 * k + 1), RatFunc::poly(ctx, p.scale(&c)));
        }
    }
    let mut cf = Graded::zero(ctx, hmax, vmax);
    let cc = c_coeff((hmax.max(0) / 2) as u32);
    for (k, c) in cc.iter().enumerate() {
        cf.add_term(Mono::ONE.with(H, 2 * k as i32).with(us, 2 * k as i32), RatFunc::constant(ctx, c.clone()));
    }
    Ok(cf.mul(&expo.exp()?))
}

/// B(z_k, z_l) = z_k z_l/(z_k − z_l)² + z_k z_l/(z_k + z_l)².
pub fn bergman(ctx: &Arc<DenomCtx>, k: usize, l: usize) -> RatFunc {
    let zk = MPoly::var(k);
    let zl = MPoly::var(l);
    let num = zk.mul(&zl).mul(&zk.pow(2).add(&zl.pow(2))).scale(&rint(2));
    RatFunc::with_denominator(ctx, num, vec![0; ctx.n], &[((k, l), 2)])
}

/// e^{ħ²u_k u_l S(ħu_k z_k∂_k) S(ħu_l z_l∂_l) B(z_k,z_l)} − 1.
pub fn edge_factor(ctx: &Arc<DenomCtx>, k: usize, l: usize, hmax: i32, vmax: i32) -> Result<Graded> {
    let mut x = Graded::zero(ctx, hmax, vmax);
    let b = bergman(ctx, k, l);
    let amax = ((hmax - 2).max(0) / 2) as usize;
    let mut rows: Vec<RatFunc> = vec![b];
    for a in 1..=amax {
        let prev = rows[a - 1].clone();
        rows.push(prev.euler(k).euler(k));
    }
    for (a, ra) in rows.iter().enumerate() {
        let mut cell = ra.clone();
        for bb in 0..=amax {
            let he = 2 + 2 * a as i32 + 2 * bb as i32;
            if he > hmax {
                break;
            }
            if bb > 0 {
                cell = cell.euler(l).euler(l);
            }
            let c = s_coeff(a as u32) * s_coeff(bb as u32);
            let m = Mono::ONE.with(H, he).with(u_slot(k), 1 + 2 * a as i32).with(u_slot(l), 1 + 2 * bb as i32);
            x.add_term(m, cell.scale(&c));
        }
    }
    let e = x.exp()?;
    let mut out = Graded::zero(ctx, hmax, vmax);
    for (m, c) in e.terms() {
        if !m.is_one() {
            out.add_term(*m, c.clone());
        }
    }
    Ok(out)
}

/// ½ħu_k S(ħu_k z_k∂_k)(z_k/(z_k − z_i) − z_k/(z_k + z_i)) for a leaf i attached to k.
pub fn leaf_term(ctx: &Arc<DenomCtx>, i: usize, k: usize, hmax: i32, vmax: i32) -> Graded {
    let mut out = Graded::zero(ctx, hmax, vmax);
    // z_k z_i/(z_k² − z_i²); Δ is stored as z_min² − z_max²
    let sign = if k < i { 1 } else { -1 };
    let mut f = RatFunc::with_denominator(ctx, MPoly::var(k).mul(&MPoly::var(i)).scale(&rint(sign)), vec![0; ctx.n], &[((i, k), 1)]);
    for a in 0.. {
        let he = 1 + 2 * a;
        if he > hmax {
            break;
        }
        if a > 0 {
            f = f.euler(k).euler(k);
        }
        out.add_term(Mono::ONE.with(H, he).with(u_slot(k), 1 + 2 * a), f.scale(&s_coeff(a as u32)));
    }
    out
}

/// Connected simple graphs on n labelled vertices, as edge lists.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| *e).collect();
        if is_connected(n, &edges) {
            out.push(edges);
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v { b } else if b == v { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Whether vertex operators produce D^j (for W) or D^{j−1} with j ≥ 1 (for H).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    W,
    H,
}

/// Coefficients [t^j ħ^e v^w] of A_r = e^{−2tψ} ∂_y^r (e^{2t S(tħ∂)/S(ħ∂) ψ̄} · m), as polynomials in z.
pub struct VertexTable {
    /// per r: (j, e, w) → polynomial in z
    rows: Vec<BTreeMap<(i32, i32, i32), UPoly>>,
}

const TY: usize = 1;
const TT: usize = 2;
const TV: usize = 3;

fn exp_filter(p: &MPoly, keep: impl Fn(Mono) -> bool + Copy) -> MPoly {
    let mut acc = MPoly::one();
    let mut pw = MPoly::one();
    for k in 1..200u32 {
        pw = pw.mul_filter(p, keep);
        if pw.is_zero() {
            return acc;
        }
        acc.add_assign(&pw.scale(&factorial(k).recip()));
    }
    acc
}

/// The multiplier v S(tħv)(e^{vy} + e^{−vy}) attached to the first vertex of the curly correlators.
pub fn curly_multiplier(hmax: i32, vmax: i32) -> MPoly {
    let mut m = MPoly::zero();
    for a in 0..=vmax {
        for b in 0..=vmax {
            // v · (tħv)^{2a} · 2(vy)^{2b}/(2b)!
            let w = 1 + 2 * a + 2 * b;
            if w > vmax || 2 * a > hmax {
                continue;
            }
            let c = s_coeff(a as u32) * rint(2) / factorial(2 * b as u32);
            m.add_term(Mono::ONE.with(H, 2 * a).with(TT, 2 * a).with(TV, w).with(TY, 2 * b), c);
        }
    }
    m
}

impl VertexTable {
    pub fn new(frame: &CurveFrame, rmax: usize, hmax: i32, vmax: i32, multiplier: Option<&MPoly>) -> Result<Self> {
        frame.check_hbar(hmax)?;
        let keep = move |m: Mono| m.get(H) <= hmax && m.get(TV) <= vmax;
        let psi_bar = frame.psi_bar.filter(|m| m.get(H) <= hmax);
        let psi = MPoly::univariate(TY, frame.psi.coeffs());
        let t = MPoly::var(TT);
        // G = 2t(ψ̄ − ψ) + 2t Σ_{k≥1} ρ_k(t) ħ^{2k} ∂^{2k} ψ̄
        let mut g = psi_bar.sub(&psi);
        let kmax = (hmax / 2).max(0) as u32;
        let sig = inv_s_coeff(kmax);
        let mut dpsi = psi_bar.clone();
        for k in 1..=kmax {
            dpsi = dpsi.deriv(TY).deriv(TY);
            if dpsi.is_zero() {
                break;
            }
            let mut rho = MPoly::zero();
            for a in 0..=k {
                rho.add_term(Mono::ONE.with(TT, 2 * a as i32), s_coeff(a) * &sig[(k - a) as usize]);
            }
            g.add_assign(&rho.mul(&dpsi).mul_mono(Mono::ONE.with(H, 2 * k as i32)));
        }
        let g = g.mul(&t).scale(&rint(2)).filter(keep);
        if g.terms().any(|(m, _)| m.get(H) == 0) {
            return Err(Error::Assumption { module: "closedform", msg: "ψ̄ − ψ must vanish at ħ = 0".into() });
        }
        let mut a = exp_filter(&g, keep);
        if let Some(mm) = multiplier {
            a = a.mul_filter(mm, keep);
        }
        let twodpsi = MPoly::univariate(TY, frame.psi.deriv().coeffs()).mul(&t).scale(&rint(2));
        let mut rows = Vec::with_capacity(rmax + 1);
        for r in 0..=rmax {
            if r > 0 {
                a = a.deriv(TY).add(&a.mul(&twodpsi)).filter(keep);
            }
            let mut row: BTreeMap<(i32, i32, i32), MPoly> = BTreeMap::new();
            for (m, c) in a.terms() {
                let key = (m.get(TT), m.get(H), m.get(TV));
                row.entry(key).or_default().add_term(Mono::ONE.with(TY, m.get(TY)), c.clone());
            }
            let row = row
                .into_iter()
                .map(|(k, p)| {
                    let d = p.max_deg(TY).unwrap_or(0).max(0) as usize;
                    let up = UPoly::new((0..=d).map(|e| p.coeff(Mono::ONE.with(TY, e as i32))).collect());
                    (k, up.compose(&frame.y))
                })
                .collect();
            rows.push(row);
        }
        Ok(VertexTable { rows })
    }

    pub fn rmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, r: usize) -> Result<&BTreeMap<(i32, i32, i32), UPoly>> {
        self.rows.get(r).ok_or_else(|| Error::Missing(format!("vertex table row {r}")))
    }
}

/// The maximal u-exponent in a graded element.
pub fn max_u(g: &Graded, n: usize) -> usize {
    g.terms().map(|(m, _)| (0..n).map(|i| m.get(u_slot(i))).max().unwrap_or(0)).max().unwrap_or(0).max(0) as usize
}

type Key = (i32, i32, Vec<i32>);

/// Apply the vertex operators of the `active` vertices to Π/(Π_{active} 2ħu_i) and
/// collect [ħ^target v^w] for each w ≤ vmax.
pub fn apply_vertices(
    pi: &Graded,
    active: &[usize],
    tables: &[&VertexTable],
    mode: Mode,
    target: i32,
) -> Result<BTreeMap<i32, RatFunc>> {
    let ctx = pi.ctx.clone();
    let n = ctx.n;
    let na = active.len() as i32;
    let scale = crate::algebra::rational::pow2(-(na as i64));
    // keys: (ħ exponent of P, v exponent, remaining r per vertex (−1 = inactive/none))
    let mut cur: BTreeMap<Key, RatFunc> = BTreeMap::new();
    for (m, c) in pi.terms() {
        let e = m.get(H) - na;
        let mut rs = vec![-1; n];
        let mut skip = false;
        for i in 0..n {
            let b = m.get(u_slot(i));
            if active.contains(&i) {
                if b == 0 {
                    skip = true;
                }
                rs[i] = b - 1;
            } else if b != 0 {
                return Err(Error::Assumption { module: "closedform", msg: format!("u_{i} on an inactive vertex") });
            }
        }
        if skip || e > target {
            continue;
        }
        let key = (e, m.get(V), rs);
        let cc = c.scale(&scale);
        match cur.remove(&key) {
            Some(old) => {
                cur.insert(key, old.add(&cc));
            }
            None => {
                cur.insert(key, cc);
            }
        }
    }
    for (slot, &i) in active.iter().enumerate() {
        let table = tables[slot];
        let mut next: BTreeMap<Key, Vec<RatFunc>> = BTreeMap::new();
        for ((e, w, rs), f) in cur {
            let r = rs[i] as usize;
            let row = table.row(r)?;
            let fq = f.div_q(i, 1);
            for (&(j, de, dw), poly) in row {
                if e + de > target || (mode == Mode::H && j == 0) {
                    continue;
                }
                let jj = if mode == Mode::H { j - 1 } else { j } as usize;
                let mut nrs = rs.clone();
                nrs[i] = -1;
                let slotv = next.entry((e + de, w + dw, nrs)).or_default();
                if slotv.len() <= jj {
                    slotv.resize(jj + 1, RatFunc::zero(&ctx));
                }
                slotv[jj] = slotv[jj].add(&fq.mul_poly(&MPoly::univariate(i, poly.coeffs())));
            }
        }
        cur = BTreeMap::new();
        for (key, gs) in next {
            // Σ_j D^j g_j by Horner
            let mut acc = RatFunc::zero(&ctx);
            for g in gs.iter().rev() {
                acc = if acc.is_zero() { g.clone() } else { acc.d_op(i).add(g) };
            }
            let acc = acc.reduce();
            if !acc.is_zero() {
                cur.insert(key, acc);
            }
        }
    }
    let mut out: BTreeMap<i32, RatFunc> = BTreeMap::new();
    for ((e, w, _), f) in cur {
        if e == target {
            let slot = out.entry(w).or_insert_with(|| RatFunc::zero(&ctx));
            *slot = slot.add(&f);
        }
    }
    Ok(out.into_iter().map(|(w, f)| (w, f.reduce())).collect())
}

/// Π = Π_i vertex factors · Σ_γ Π_e edge factors over connected graphs on all n vertices.
pub fn full_graph_product(frame: &CurveFrame, ctx: &Arc<DenomCtx>, hmax: i32, vmax: i32) -> Result<Graded> {
    let n = ctx.n;
    let mut verts = Graded::one(ctx, hmax, vmax);
    for i in 0..n {
        verts = verts.mul(&vertex_factor(frame, ctx, i, hmax, vmax)?);
    }
    if n == 1 {
        return Ok(verts);
    }
    let edges = edge_cache(ctx, n, hmax, vmax)?;
    let mut sum = Graded::zero(ctx, hmax, vmax);
    for gamma in connected_graphs(n) {
        if 2 * gamma.len() as i32 > hmax {
            continue;
        }
        let mut p = Graded::one(ctx, hmax, vmax);
        for e in &gamma {
            p = p.mul(&edges[e]);
            if p.is_zero() {
                break;
            }
        }
        sum = sum.add(&p);
    }
    Ok(verts.mul(&sum).reduce_all())
}

pub fn edge_cache(ctx: &Arc<DenomCtx>, n: usize, hmax: i32, vmax: i32) -> Result<BTreeMap<(usize, usize), Graded>> {
    let mut m = BTreeMap::new();
    for k in 0..n {
        for l in k + 1..n {
            m.insert((k, l), edge_factor(ctx, k, l, hmax, vmax)?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::taufn::ModelSpec;

    #[test]
    fn graph_counts() {
        assert_eq!(connected_graphs(2).len(), 1);
        assert_eq!(connected_graphs(3).len(), 4);
        assert_eq!(connected_graphs(4).len(), 38);
        assert_eq!(connected_graphs(5).len(), 728);
    }

    #[test]
    fn vertex_table_leading_terms() {
        let m = ModelSpec::completed_cycles(1, 8).unwrap();
        let f = CurveFrame::from_model(&m).unwrap();
        let t = VertexTable::new(&f, 2, 2, 0, None).unwrap();
        // A_0 = e^G, [t^0] = 1
        assert_eq!(t.row(0).unwrap()[&(0, 0, 0)], UPoly::one());
        // A_1 = ∂G e^G + 2tψ' e^G: [t^1 ħ^0] = 2ψ'(y(z)) = 2z
        assert_eq!(t.row(1).unwrap()[&(1, 0, 0)], UPoly::new(vec![rint(0), rint(2)]));
        // G = 2t·ħ²/24 + 2t·ρ_1(t)ħ²·1 with ρ_1 = (t² − 1)/24: [t^3 ħ^2] A_0 = 1/12
        assert_eq!(t.row(0).unwrap()[&(3, 2, 0)], UPoly::new(vec![rat(1, 12)]));
        assert!(!t.row(0).unwrap().contains_key(&(1, 2, 0)));
    }

    #[test]
    fn leaf_term_derivative_gives_bergman() {
        // z_i ∂_i of z_k z_i/(z_k² − z_i²) equals B/2
        let c = DenomCtx::new(2, UPoly::one());
        let lt = leaf_term(&c, 1, 0, 1, 0);
        let (m, f) = lt.terms().next().unwrap();
        assert_eq!(m.get(H), 1);
        let d = f.euler(1);
        assert_eq!(d, bergman(&c, 0, 1).scale(&rat(1, 2)));
    }
}
