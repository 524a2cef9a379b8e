//! The acceptance criteria as runnable checks, shared by `check` and the
//! acceptance test.

use crate::algebra::mono::Mono;
use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{pow2, rat, rint};
use crate::algebra::series::{TruncSeries, EXACT};
use crate::check::CheckOutcome;
use crate::closedform::loops::{curly_v3_compare, loop_combination_v3, quasi_polynomiality, theta_problems, with_pole_at_infinity};
use crate::closedform::{apply_d_all, h_x_series, hgn, w_x_series, wgn, CurveFrame, RatFunc};
use crate::error::Result;
use crate::npoint::{h_gn_oracle, w_gn_oracle};
use crate::partitions::{odd_partitions, Partition};
use crate::schurq::{check_first_orthogonality, check_second_orthogonality};
use crate::spinhurwitz::{weight_r, weighted_spin_hurwitz, weighted_spin_hurwitz_ws, WeightFamily};
use crate::taufn::{self, ModelSpec, Param};
use crate::toprec::checks::{curve_from_ints, gkl_compare, linear_loop, projection, quadratic_loop, symmetrized_holomorphic, with_replaced, Regularization};
use crate::toprec::{OddSpectralCurve, OmegaFn, TopRec};
use std::time::Instant;

/// The (g,n) list shared by the oracle, H and recursion criteria.
pub const WGN_SET: [(u32, usize); 7] = [(0, 1), (0, 2), (0, 3), (1, 1), (0, 4), (1, 2), (2, 1)];
pub const TR_SET: [(u32, usize); 5] = [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)];
pub const TR_SET_CUBIC: [(u32, usize); 2] = [(0, 3), (1, 1)];

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub outcomes: Vec<CheckOutcome>,
    pub seconds: f64,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed).collect()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let n = self.outcomes.len();
        let bad = self.failures();
        let tail = if bad.is_empty() {
            format!("{n} checks")
        } else {
            format!("{} of {n} checks failed", bad.len())
        };
        let label = if self.id == 0 { "supplementary check".to_string() } else { format!("criterion {}", self.id) };
        format!("{status} {label} ({}) [{:.1}s]: {tail}", self.title, self.seconds)
    }
}

fn timed(id: u32, title: &'static str, f: impl FnOnce() -> Result<Vec<CheckOutcome>>) -> Result<Criterion> {
    let t = Instant::now();
    let outcomes = f()?;
    Ok(Criterion { id, title, outcomes, seconds: t.elapsed().as_secs_f64() })
}

fn from_string_check(name: String, r: std::result::Result<(), String>) -> CheckOutcome {
    match r {
        Ok(()) => CheckOutcome::new(name, true, "exact"),
        Err(e) => CheckOutcome::new(name, false, e),
    }
}

fn compare(name: String, same: bool, what: &str) -> CheckOutcome {
    CheckOutcome::new(name, same, if same { format!("{what} agree exactly") } else { format!("{what} differ") })
}

/// A falsifiability probe passes when the corrupted input is rejected.
fn probe(name: String, rejected: bool) -> CheckOutcome {
    CheckOutcome::new(format!("probe: {name}"), rejected, if rejected { "defect detected" } else { "defect went unnoticed" })
}

pub fn orthogonality(dmax: u32) -> Result<Criterion> {
    timed(1, "Sergeev orthogonality", || {
        let mut out = Vec::new();
        for d in 1..=dmax {
            out.push(from_string_check(format!("first orthogonality d={d}"), check_first_orthogonality(d)));
            out.push(from_string_check(format!("second orthogonality d={d}"), check_second_orthogonality(d)));
        }
        Ok(out)
    })
}

const HB: usize = 7;

fn rsym(i: usize) -> MPoly {
    MPoly::var(i - 1)
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

/// The four weight identities with symbolic r_1, r_2, r_3 and ħ.
pub fn rtor_identities() -> Result<Vec<(String, MPoly, MPoly)>> {
    let f = WeightFamily::symbolic(3, 0);
    let hm2 = MPoly::term(Mono::ONE.with(HB, -2), rint(1));
    Ok(vec![
        ("R_[1] = r1".into(), weight_r(&p(&[1]), &f, HB)?, rsym(1)),
        ("R_[1,1] = r2".into(), weight_r(&p(&[1, 1]), &f, HB)?, rsym(2)),
        ("R_[3] = (r3 - r2 r1)/(3 h^2)".into(), weight_r(&p(&[3]), &f, HB)?, rsym(3).sub(&rsym(2).mul(&rsym(1))).mul(&hm2).scale(&rat(1, 3))),
        ("R_[1,1,1] = (2 r3 + r2 r1)/3".into(), weight_r(&p(&[1, 1, 1]), &f, HB)?, rsym(3).scale(&rint(2)).add(&rsym(2).mul(&rsym(1))).scale(&rat(1, 3))),
    ])
}

pub fn weights() -> Result<Criterion> {
    timed(2, "weight identities", || {
        let mut out = Vec::new();
        for (name, got, want) in rtor_identities()? {
            out.push(compare(name, got == want, "symbolic polynomials"));
        }
        // log-branch: r_k are polynomials in (h, c), slots 0 and 2
        let m = ModelSpec::log_branch(Param::Symbolic(12), EXACT, 12)?;
        let rs: Vec<MPoly> = (1..=3).map(|k| taufn::weight_from_psi(&m, k).map(|s| s.poly().clone())).collect::<Result<_>>()?;
        let fam = WeightFamily::new(rs);
        let c2h2 = MPoly::term(Mono::ONE.with(0, 2).with(2, 2), rint(1));
        let fac = |a: i64| MPoly::one().add(&c2h2.scale(&rat(a, 8)));
        let c2 = MPoly::term(Mono::ONE.with(2, 2), rint(1));
        let table = [
            ("log-branch R_[1]", p(&[1]), fac(1)),
            ("log-branch R_[1,1]", p(&[1, 1]), fac(1).mul(&fac(9))),
            ("log-branch R_[3]", p(&[3]), c2.mul(&fac(1)).mul(&fac(9))),
            ("log-branch R_[1,1,1]", p(&[1, 1, 1]), fac(1).mul(&fac(9)).mul(&fac(17))),
        ];
        for (name, mu, want) in table {
            let got = weight_r(&mu, &fam, 0)?;
            out.push(compare(name.into(), got == want, "polynomials in c, h"));
        }
        Ok(out)
    })
}

pub fn trivial_tau(degree: u32) -> Result<Criterion> {
    timed(3, "trivial tau", || {
        let c = ModelSpec::constant(Param::Symbolic(degree as i32 + 3), EXACT);
        let tau = taufn::assemble_bkp(&taufn::tau_bkp(&c, degree)?)?;
        let located = |d: Option<(Partition, Partition, String)>| match d {
            None => "agree exactly".to_string(),
            Some((a, b, e)) => format!("first difference at t_{a} s_{b}: {e}"),
        };
        let stated = tau.first_difference(&taufn::trivial_tau_stated_form(&c, degree)?);
        let closed = tau.first_difference(&taufn::trivial_tau_closed_form(&c, degree)?);
        Ok(vec![
            CheckOutcome::new("literal form exp(a Σ k t_k s_k)", stated.is_none(), located(stated)),
            CheckOutcome::new("corrected form exp(½ Σ k e^{2ak} t_k s_k)", closed.is_none(), located(closed)),
        ])
    })
}

pub fn square(degree: u32, hbar: i32) -> Result<Criterion> {
    timed(4, "BKP to KP square", || {
        let m = ModelSpec::completed_cycles(1, hbar)?;
        let rep = taufn::bkp_kp_square_check(&m, degree)?;
        let show = |d: &Option<(Partition, Partition, String)>| match d {
            None => "exact".to_string(),
            Some((a, b, e)) => format!("differs at p_{a} p_{b}: {e}"),
        };
        let mut out = vec![
            CheckOutcome::new(format!("tau_KP(psi(z)) = tau^2, degree {degree}"), rep.direct.is_none(), show(&rep.direct)),
            CheckOutcome::new(format!("tau_KP(psi(-z-h)) = tau^2, degree {degree}"), rep.dual.is_none(), show(&rep.dual)),
        ];
        let mut ts: Vec<TruncSeries> = (1..=3).map(|k| taufn::t_from_psi(&m, k)).collect::<Result<_>>()?;
        ts[2] = ts[2].add(&ts[2].like_var("h").powi(2));
        let bad = taufn::assemble_bkp(&taufn::tau_bkp_from_t(&ts)?)?;
        out.push(probe("perturbed T_3".into(), !taufn::square_check_against(&m, &bad, 3)?.pass()));
        Ok(out)
    })
}

fn s1() -> Result<(ModelSpec, CurveFrame)> {
    let m = ModelSpec::completed_cycles(1, 8)?;
    let f = CurveFrame::from_model(&m)?;
    Ok((m, f))
}

pub fn oracle(order: u32) -> Result<Criterion> {
    timed(5, "closed formula vs oracle", || {
        let (m, f) = s1()?;
        let mut out = Vec::new();
        for (g, n) in WGN_SET {
            let closed = w_x_series(&f, g, n, order)?;
            let or = w_gn_oracle(&m, g, n, order)?;
            out.push(compare(format!("W_{{{g},{n}}} to order {order}"), closed == or.poly, "coefficients"));
        }
        Ok(out)
    })
}

pub fn h_integration(order: u32) -> Result<Criterion> {
    timed(6, "H-integration", || {
        let (m, f) = s1()?;
        let mut out = Vec::new();
        for (g, n) in WGN_SET {
            let name = format!("H_{{{g},{n}}}");
            if (g, n) == (0, 2) {
                let hx = h_x_series(&f, 0, 2, order)?;
                let wx = w_x_series(&f, 0, 2, order)?;
                let dd = hx.euler(0).euler(1).filter(|mm| mm.get(0) + mm.get(1) <= order as i32);
                let wx = wx.filter(|mm| mm.get(0) + mm.get(1) <= order as i32);
                out.push(compare(format!("{name}: X1∂X1 X2∂X2 H = W"), dd == wx, "series"));
                let zero = hx.terms().all(|(mm, _)| mm.get(0) > 0 && mm.get(1) > 0);
                out.push(CheckOutcome::new(format!("{name} vanishes at z_i = 0"), zero, "no term free of X_1 or X_2"));
                let or = h_gn_oracle(&m, 0, 2, order)?;
                out.push(compare(format!("{name} vs oracle"), hx == or.poly, "coefficients"));
                continue;
            }
            let h = hgn(&f, g, n)?;
            let w = wgn(&f, g, n)?;
            out.push(compare(format!("{name}: D_1…D_n H = W"), apply_d_all(&h) == w, "rational functions"));
            let zero = !h.has_delta() && (0..n).all(|i| h.num().is_odd_in(i));
            out.push(CheckOutcome::new(format!("{name} vanishes at z_i = 0"), zero, "numerator odd in every z_i"));
        }
        Ok(out)
    })
}

fn gaussian() -> Result<OddSpectralCurve> {
    curve_from_ints(&[0, 0, 1], &[0, 1])
}

fn cubic() -> Result<OddSpectralCurve> {
    curve_from_ints(&[0, 0, 1], &[0, 0, 0, 1])
}

pub fn gkl() -> Result<Criterion> {
    timed(7, "recursion vs closed formulas", || {
        let mut out = Vec::new();
        let mut tr = TopRec::new(gaussian()?);
        for (g, n) in TR_SET {
            let mut o = gkl_compare(&mut tr, g, n)?;
            o.name = format!("P=y^2 R=z: {}", o.name);
            out.push(o);
        }
        let mut tr = TopRec::new(cubic()?);
        for (g, n) in TR_SET_CUBIC {
            let mut o = gkl_compare(&mut tr, g, n)?;
            o.name = format!("P=y^2 R=z^3: {}", o.name);
            out.push(o);
        }
        Ok(out)
    })
}

fn loops_on(label: &str, tr: &mut TopRec, set: &[(u32, usize)], quad: &[(u32, usize)]) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for &(g, n) in set {
        let om = tr.omega(g, n)?;
        out.push(linear_loop(tr, &om)?);
        out.push(projection(&om, &tr.curve.qtil));
    }
    for &(g, n) in quad {
        out.push(quadratic_loop(tr, g, n, Regularization::Unregularized)?);
    }
    for o in out.iter_mut() {
        o.name = format!("{label}: {}", o.name);
    }
    Ok(out)
}

pub fn loop_equations() -> Result<Criterion> {
    timed(8, "loop equations", || {
        let mut tr = TopRec::new(gaussian()?);
        let mut out = loops_on("P=y^2 R=z", &mut tr, &TR_SET, &[(0, 2), (1, 0), (1, 1), (0, 3), (2, 0)])?;
        let mut tc = TopRec::new(cubic()?);
        out.extend(loops_on("P=y^2 R=z^3", &mut tc, &TR_SET_CUBIC, &[(0, 2), (1, 0)])?);
        // a simple pole at every critical point injected into ω_{1,1}
        let qt = tr.curve.qtil.clone();
        let o11 = tr.omega(1, 1)?;
        let bad = o11.add(&OmegaFn::pole_defect(1, 1, &qt), &qt);
        out.push(probe("1/(z-p) defect, linear loop".into(), !linear_loop(&tr, &bad)?.passed));
        let t2 = with_replaced(&tr, bad);
        out.push(probe("1/(z-p) defect, quadratic loop (1,1)".into(), !quadratic_loop(&t2, 1, 1, Regularization::Unregularized)?.passed));
        out.push(probe("1/(z-p) defect, quadratic loop (1,0)".into(), !quadratic_loop(&t2, 1, 0, Regularization::Unregularized)?.passed));
        let hol = o11.add(&OmegaFn::holomorphic_defect(1, 1), &qt);
        out.push(probe("holomorphic defect, projection".into(), !projection(&hol, &qt).passed));
        Ok(out)
    })
}

pub fn quasi_polynomial() -> Result<Criterion> {
    timed(9, "quasi-polynomiality", || {
        let (_, f) = s1()?;
        let mut out = Vec::new();
        for (g, n) in [(1, 1), (0, 3), (1, 2)] {
            out.push(quasi_polynomiality(&f, g, n)?);
            let w = wgn(&f, g, n)?;
            out.push(probe(format!("pole at infinity added to W_{{{g},{n}}}"), !theta_problems(&with_pole_at_infinity(&w)).is_empty()));
            let even = w.add(&RatFunc::constant(w.ctx(), rint(1)));
            out.push(probe(format!("even term added to W_{{{g},{n}}}"), !theta_problems(&even).is_empty()));
        }
        Ok(out)
    })
}

pub fn bookkeeping(dmax: u32) -> Result<Criterion> {
    timed(10, "spin Hurwitz bookkeeping", || {
        let fam = WeightFamily::symbolic(dmax, 0);
        let names: Vec<String> = (1..=dmax).map(|k| format!("r{k}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let like = TruncSeries::zero_in(&refs, &vec![EXACT; refs.len()]);
        let tau = taufn::tau_with_weights(std::slice::from_ref(&fam), &like, dmax)?;
        let fams = [fam];
        let mut out = Vec::new();
        let mut undressed_differs = false;
        for d in 1..=dmax {
            let mut ok = true;
            let mut first_bad = String::new();
            for mu in odd_partitions(d) {
                for nu in odd_partitions(d) {
                    let got = tau.coeff_ts(&mu, &nu).poly().clone();
                    let two = pow2(-((mu.len() + nu.len()) as i64) / 2);
                    let mult: u32 = mu.parts().iter().chain(nu.parts()).product();
                    let scale = two * rint(mult as i64);
                    let ws = weighted_spin_hurwitz_ws(d, &nu, &mu, &fams, HB, true)?.scale(&scale);
                    let lam = weighted_spin_hurwitz(d, &nu, &mu, &fams)?.scale(&scale);
                    if got != ws || got != lam {
                        ok = false;
                        if first_bad.is_empty() {
                            first_bad = format!("t_{mu} s_{nu}");
                        }
                    }
                    let raw = weighted_spin_hurwitz_ws(d, &nu, &mu, &fams, HB, false)?.scale(&scale);
                    undressed_differs |= raw != got;
                }
            }
            out.push(CheckOutcome::new(format!("degree {d}"), ok, if ok { "all t_mu s_nu agree".to_string() } else { format!("differs at {first_bad}") }));
        }
        out.push(probe("dropping the h-power dressing".into(), undressed_differs));
        Ok(out)
    })
}

/// The [v³] loop combination: its two constructions agree and it symmetrizes to a
/// holomorphic function at the critical points.
pub fn v3_combination() -> Result<Criterion> {
    timed(0, "[v^3] loop combination", || {
        let (_, f) = s1()?;
        let mut out = Vec::new();
        for g in 1..=2 {
            out.push(curly_v3_compare(&f, g)?);
        }
        let w01 = crate::closedform::w01(&f);
        let c01 = loop_combination_v3(&f, 0, 1)?;
        out.push(compare("(0,1) is (4/3) W_{0,1}^3".into(), c01.sub(&w01.mul(&w01).mul(&w01).scale(&rat(4, 3))).reduce().is_zero(), "rational functions"));
        let c = gaussian()?;
        let c11 = loop_combination_v3(&f, 1, 1)?;
        out.push(symmetrized_holomorphic(&c, "(1,1) σ-symmetrization holomorphic".into(), &c11)?);
        Ok(out)
    })
}

/// Default parameters of criteria 1–10, in order.
pub fn run(id: u32) -> Result<Criterion> {
    match id {
        1 => orthogonality(8),
        2 => weights(),
        3 => trivial_tau(9),
        4 => square(8, 6),
        5 => oracle(11),
        6 => h_integration(7),
        7 => gkl(),
        8 => loop_equations(),
        9 => quasi_polynomial(),
        10 => bookkeeping(4),
        0 => v3_combination(),
        _ => Err(crate::error::Error::Config(format!("no criterion {id}"))),
    }
}
