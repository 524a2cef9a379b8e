use super::checks::*;
use super::*;
use crate::closedform::{CurveFrame, RatFunc};

fn gaussian() -> OddSpectralCurve {
    curve_from_ints(&[0, 0, 1], &[0, 1]).unwrap()
}

#[test]
fn critical_points_of_gaussian_curve() {
    let c = gaussian();
    assert_eq!(c.qtil, UPoly::from_ints(&[1, 0, -2]));
    assert_eq!(c.n_critical(), 2);
    let c3 = curve_from_ints(&[0, 0, 1], &[0, 0, 0, 1]).unwrap();
    assert_eq!(c3.qtil, UPoly::from_ints(&[1, 0, 0, 0, 0, 0, -6]));
}

#[test]
fn omega03_and_omega11_match_closed_formulas() {
    let mut tr = TopRec::new(gaussian());
    for (g, n) in [(0, 3), (1, 1)] {
        let o = tr.omega(g, n).unwrap();
        assert!(o.is_symmetric(&tr.curve.qtil));
        let c = gkl_compare(&mut tr, g, n).unwrap();
        assert!(c.passed, "{c:?} {o:?}");
    }
}

#[test]
fn higher_correlators_match_closed_formulas() {
    let mut tr = TopRec::new(gaussian());
    for (g, n) in [(0, 4), (1, 2), (2, 1)] {
        let c = gkl_compare(&mut tr, g, n).unwrap();
        assert!(c.passed, "{c:?}");
        assert!(tr.get(g, n).unwrap().is_symmetric(&tr.curve.qtil));
    }
}

#[test]
fn cubic_curve_matches_closed_formulas() {
    let mut tr = TopRec::new(curve_from_ints(&[0, 0, 1], &[0, 0, 0, 1]).unwrap());
    for (g, n) in [(0, 3), (1, 1)] {
        let c = gkl_compare(&mut tr, g, n).unwrap();
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn loop_equations_and_projection() {
    let mut tr = TopRec::new(gaussian());
    for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)] {
        let o = tr.omega(g, n).unwrap();
        let l = linear_loop(&tr, &o).unwrap();
        assert!(l.passed, "{l:?}");
        let p = projection(&o, &tr.curve.qtil);
        assert!(p.passed, "{p:?}");
    }
    for (g, n) in [(0, 2), (1, 0), (1, 1), (0, 3), (2, 0)] {
        let q = quadratic_loop(&tr, g, n, Regularization::Unregularized).unwrap();
        assert!(q.passed, "{q:?}");
    }
    // the X-diagonal reading of the (1,0) equation leaves a double pole
    let q = quadratic_loop(&tr, 1, 0, Regularization::XDiagonal).unwrap();
    assert!(!q.passed);
}

#[test]
fn cubic_curve_loop_equations() {
    let mut tr = TopRec::new(curve_from_ints(&[0, 0, 1], &[0, 0, 0, 1]).unwrap());
    for (g, n) in [(0, 3), (1, 1)] {
        let o = tr.omega(g, n).unwrap();
        assert!(linear_loop(&tr, &o).unwrap().passed);
        assert!(projection(&o, &tr.curve.qtil).passed);
    }
    for (g, n) in [(0, 2), (1, 0)] {
        let q = quadratic_loop(&tr, g, n, Regularization::Unregularized).unwrap();
        assert!(q.passed, "{q:?}");
    }
}

#[test]
fn defects_are_detected() {
    let mut tr = TopRec::new(gaussian());
    let qt = tr.curve.qtil.clone();
    let o11 = tr.omega(1, 1).unwrap();
    tr.omega(1, 2).unwrap();
    let bad = o11.add(&OmegaFn::pole_defect(1, 1, &qt), &qt);
    assert!(!linear_loop(&tr, &bad).unwrap().passed);
    let hol = o11.add(&OmegaFn::holomorphic_defect(1, 1), &qt);
    assert!(!projection(&hol, &qt).passed);
    let t2 = with_replaced(&tr, bad);
    assert!(!quadratic_loop(&t2, 1, 1, Regularization::Unregularized).unwrap().passed);
    assert!(!quadratic_loop(&t2, 1, 0, Regularization::Unregularized).unwrap().passed);
}

#[test]
fn v3_combination_symmetrizes_to_holomorphic() {
    use crate::closedform::loops::loop_combination_v3;
    let c = gaussian();
    let frame = CurveFrame::from_curve(&c.p, &c.r).unwrap();
    let f = loop_combination_v3(&frame, 1, 1).unwrap();
    let ok = symmetrized_holomorphic(&c, "[v^3] (1,1)".into(), &f).unwrap();
    assert!(ok.passed, "{}", ok.line());
    let defect = RatFunc::with_denominator(f.ctx(), MPoly::var(0), vec![2], &[]);
    let bad = symmetrized_holomorphic(&c, "defect".into(), &f.add(&defect)).unwrap();
    assert!(!bad.passed);
}
