use super::*;
use crate::npoint::w_gn_oracle;
use crate::taufn::ModelSpec;

fn s1() -> (ModelSpec, CurveFrame) {
    let m = ModelSpec::completed_cycles(1, 8).unwrap();
    let f = CurveFrame::from_model(&m).unwrap();
    (m, f)
}

fn against_oracle(g: u32, n: usize, order: u32) {
    let (m, f) = s1();
    let closed = w_x_series(&f, g, n, order).unwrap();
    let oracle = w_gn_oracle(&m, g, n, order).unwrap();
    assert_eq!(closed, oracle.poly, "W_{{{g},{n}}} differs");
}

#[test]
fn w01_matches_oracle() {
    against_oracle(0, 1, 9);
}

#[test]
fn w02_matches_oracle() {
    against_oracle(0, 2, 8);
}

#[test]
fn w11_matches_oracle() {
    against_oracle(1, 1, 9);
}

#[test]
fn w03_matches_oracle() {
    against_oracle(0, 3, 7);
}

#[test]
fn free_model_w02_vanishes() {
    let f = CurveFrame::new(MPoly::zero(), MPoly::var(1), crate::algebra::series::EXACT).unwrap();
    assert!(w02_series(&f, 6).unwrap().is_zero());
}

#[test]
fn w12_matches_oracle() {
    against_oracle(1, 2, 7);
}

#[test]
fn w04_matches_oracle() {
    against_oracle(0, 4, 7);
}

#[test]
fn w21_matches_oracle() {
    against_oracle(2, 1, 9);
}

#[test]
fn outputs_are_nontrivial_and_odd() {
    let (_, f) = s1();
    for (g, n) in [(1u32, 1usize), (2, 1), (0, 3), (1, 2), (0, 4)] {
        let w = wgn(&f, g, n).unwrap();
        assert!(!w.is_zero(), "({g},{n})");
        assert!(!w.has_delta(), "({g},{n}) keeps a diagonal pole");
        for i in 0..n {
            assert!(w.num().is_odd_in(i), "({g},{n}) not odd in z_{i}");
        }
    }
}

#[test]
fn w03_is_symmetric() {
    let (_, f) = s1();
    let w = wgn(&f, 0, 3).unwrap();
    assert_eq!(w.swap_vars(0, 1), w);
    assert_eq!(w.swap_vars(1, 2), w);
}

fn h_integrates(g: u32, n: usize) {
    let (m, f) = s1();
    let h = hgn(&f, g, n).unwrap();
    assert!(!h.has_delta());
    for i in 0..n {
        assert!(h.num().is_odd_in(i), "H_{{{g},{n}}} should vanish at z_{i} = 0");
    }
    let w = wgn(&f, g, n).unwrap();
    assert_eq!(apply_d_all(&h), w, "D…D H_{{{g},{n}}} ≠ W");
    let hx = h_x_series(&f, g, n, 7).unwrap();
    let oracle = crate::npoint::h_gn_oracle(&m, g, n, 7).unwrap();
    assert_eq!(hx, oracle.poly, "H_{{{g},{n}}} vs oracle");
}

#[test]
fn h11_integrates() {
    h_integrates(1, 1);
}

#[test]
fn h21_integrates() {
    h_integrates(2, 1);
}

#[test]
fn h03_integrates() {
    h_integrates(0, 3);
}

#[test]
fn h12_integrates() {
    h_integrates(1, 2);
}

#[test]
fn h04_integrates() {
    h_integrates(0, 4);
}

#[test]
fn h01_integrates() {
    h_integrates(0, 1);
}

#[test]
fn h02_matches_oracle() {
    let (m, f) = s1();
    let hx = h_x_series(&f, 0, 2, 7).unwrap();
    let oracle = crate::npoint::h_gn_oracle(&m, 0, 2, 7).unwrap();
    assert_eq!(hx, oracle.poly);
}
