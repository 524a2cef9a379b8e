use proptest::prelude::*;
use spinbkp::algebra::mono::Mono;
use spinbkp::algebra::mpoly::MPoly;
use spinbkp::algebra::rational::{rat, rint, Rational};
use spinbkp::algebra::series::TruncSeries;
use spinbkp::algebra::upoly::UPoly;
use spinbkp::closedform::{wgn, CurveFrame};
use spinbkp::partitions::{odd_partitions, strict_partitions, Partition};
use spinbkp::spinhurwitz::{central_weight_sum, spin_hurwitz, WeightFamily};
use spinbkp::toprec::checks::{closed_omega, linear_loop};
use spinbkp::toprec::{OddSpectralCurve, TopRec};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 1..=max_len).prop_map(UPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn odd_partitions_have_size_and_length_of_equal_parity(d in 1u32..=12) {
        for mu in odd_partitions(d) {
            prop_assert_eq!((mu.size() + mu.len() as u32) % 2, 0);
        }
    }

    #[test]
    fn partition_display_parses_back(parts in prop::collection::vec(1u32..9, 0..6)) {
        let p = Partition::new(parts);
        prop_assert_eq!(Partition::parse(&p.to_string()), Some(p));
    }

    #[test]
    fn division_with_remainder(a in upoly(7), d in upoly(4)) {
        prop_assume!(!d.is_zero() && d.degree().is_some());
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a);
        if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
            prop_assert!(r.is_zero() || rd < dd);
        }
    }

    #[test]
    fn exp_inverts_log(c in prop::collection::vec(small_rat(), 1..5)) {
        // f = Σ c_k x^{k+1}
        let p = MPoly::from_terms(c.iter().enumerate().map(|(k, a)| (Mono::ONE.with(0, k as i32 + 1), a.clone())));
        let f = TruncSeries::from_poly(&["x"], &[8], p);
        let one = f.like_const(rint(1));
        let g = one.add(&f).log().unwrap().exp().unwrap();
        prop_assert_eq!(g, one.add(&f));
    }

    #[test]
    fn central_sum_recovers_rational_weights(r in prop::collection::vec(small_rat(), 4)) {
        let fam = WeightFamily::new(r.iter().map(|a| MPoly::constant(a.clone())).collect());
        for d in 1..=4 {
            for l in strict_partitions(d) {
                prop_assert_eq!(central_weight_sum(&l, &fam, 7).unwrap(), fam.of_partition(&l).unwrap());
            }
        }
    }

    #[test]
    fn spin_hurwitz_is_symmetric_in_profiles(d in 1u32..=5, i in 0usize..8, j in 0usize..8, k in 0usize..8) {
        let ops = odd_partitions(d);
        let a = ops[i % ops.len()].clone();
        let b = ops[j % ops.len()].clone();
        let c = ops[k % ops.len()].clone();
        let x = spin_hurwitz(d, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let y = spin_hurwitz(d, &[c, a, b]).unwrap();
        prop_assert_eq!(x, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The recursion agrees with the closed formula on curves P = a y², R = z + b z³.
    #[test]
    fn recursion_matches_closed_formula_on_random_curves(a in 1i64..=3, b in -2i64..=2) {
        let p = UPoly::new(vec![rint(0), rint(0), rint(a)]);
        let r = UPoly::new(vec![rint(0), rint(1), rint(0), rint(b)]);
        let curve = OddSpectralCurve::new(p.clone(), r.clone());
        prop_assume!(curve.is_ok());
        let mut tr = TopRec::new(curve.unwrap());
        let frame = CurveFrame::from_curve(&p, &r).unwrap();
        for (g, n) in [(0, 3), (1, 1)] {
            let om = tr.omega(g, n).unwrap();
            prop_assert!(om.same_as(&closed_omega(&frame, g, n).unwrap(), &tr.curve.qtil));
            prop_assert!(linear_loop(&tr, &om).unwrap().passed);
        }
        let w = wgn(&frame, 0, 3).unwrap();
        prop_assert_eq!(w.swap_vars(0, 2), w);
    }
}
