use std::f64::consts::PI;

use mubsic::format::fmt_g;
use mubsic::frames::{point_frame_from_mub, quasi_distribution};
use mubsic::matrix::{hermitian_eigensystem, hs_inner, HermitianOp};
use mubsic::plane::{build_dapg, line_index, Point};
use mubsic::sic::search::Objective;
use mubsic::sic::{
    generate_hw_sic, rank_one_conditions, Fiducial, FiducialSource, ProbabilityVector,
};
use mubsic::weyl::{build_mub, build_weyl_pair};
use mubsic::ComplexMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn ket(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
        .prop_filter("nonzero", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
        })
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn unit(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

fn hermitian(d: usize) -> impl Strategy<Value = HermitianOp> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let m = ComplexMatrix::from_fn(d, |r, c| {
            let (a, b) = v[r * d + c];
            let (a2, b2) = v[c * d + r];
            Complex64::new(a + a2, b - b2) * 0.5
        });
        HermitianOp::new(m).unwrap()
    })
}

fn density(d: usize) -> impl Strategy<Value = HermitianOp> {
    prop::collection::vec(ket(d), 1..4).prop_map(move |ks| {
        let n = ks.len() as f64;
        ks.iter()
            .map(|k| HermitianOp::projector(&unit(k)).scale(1.0 / n))
            .fold(HermitianOp::zeros(d), |a, b| a.add(&b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigensystem_reconstructs(h in (2usize..8).prop_flat_map(hermitian)) {
        let es = hermitian_eigensystem(&h).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(h.mat()) < 1e-10);
        prop_assert!((es.spectrum.sum() - h.trace()).abs() < 1e-10);
        prop_assert!(es.spectrum.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn hs_inner_symmetric_and_lift(a in hermitian(4), b in hermitian(4)) {
        prop_assert!((hs_inner(&a, &b).unwrap() - hs_inner(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert!((a.lift_trace_one().trace() - (4.0 + a.trace()) / 4.0).abs() < 1e-12);
        // traceless_part inverts lift_trace_one
        let lifted = a.lift_trace_one();
        prop_assert!(lifted.traceless_part().mat().max_abs_diff(a.mat()) < 1e-12);
    }

    #[test]
    fn fiducial_phase_is_canonical(v in ket(5), theta in 0.0f64..(2.0 * PI)) {
        let phase = Complex64::from_polar(1.0, theta);
        let a = Fiducial::new(v.clone(), FiducialSource::Searched).unwrap();
        let b = Fiducial::new(v.iter().map(|z| z * phase).collect(), FiducialSource::Searched).unwrap();
        for (x, y) in a.ket().iter().zip(b.ket()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn objective_is_displacement_invariant(v in ket(5), a in 0usize..5, b in 0usize..5) {
        let psi = unit(&v);
        let obj = Objective::new(5);
        let wp = build_weyl_pair(5).unwrap();
        let moved = wp.displacement(a, b).apply(&psi);
        prop_assert!((obj.value(&psi) - obj.value(&moved)).abs() < 1e-12);
        let r1 = rank_one_conditions(&psi);
        let r2 = rank_one_conditions(&moved);
        prop_assert!((r1.full - r2.full).abs() < 1e-12);
    }

    #[test]
    fn reduced_never_exceeds_full(v in ket(7)) {
        let r = rank_one_conditions(&unit(&v));
        prop_assert!(r.reduced <= r.full);
    }

    #[test]
    fn sic_family_is_covariant(a in 0usize..3, b in 0usize..3) {
        let fam = generate_hw_sic(&Fiducial::qutrit());
        let wp = build_weyl_pair(3).unwrap();
        let u = wp.displacement(a, b);
        for (i, p) in fam.projectors().iter().enumerate() {
            let moved = p.conjugate_by(&u);
            let target = fam.projector((i / 3 + a) % 3, (i % 3 + b) % 3);
            prop_assert!(moved.mat().max_abs_diff(target.mat()) < 1e-12);
        }
    }

    #[test]
    fn quasi_line_sums_are_probabilities(rho in density(5)) {
        let mub = build_mub(5).unwrap();
        let pf = point_frame_from_mub(&mub).unwrap();
        let geom = build_dapg(5).unwrap();
        let q = quasi_distribution(&rho, &pf).unwrap();
        let p = q.line_probabilities(&geom).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(q.column_sum_deviation() < 1e-12);
        // MUB points: quasi-probabilities are genuine basis probabilities
        prop_assert!(q.q.iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn dapg_columns_unconnected_others_once(d in prop::sample::select(vec![2usize, 3, 5, 7]),
                                            seed in any::<u64>()) {
        let g = build_dapg(d).unwrap();
        let pts: Vec<Point> = g.points().collect();
        let p = pts[(seed % pts.len() as u64) as usize];
        let q = pts[((seed / 7) % pts.len() as u64) as usize];
        let through_p = g.lines_through(p).unwrap();
        let shared = g.lines_through(q).unwrap().iter().filter(|l| through_p.contains(l)).count();
        let expected = if p == q { d } else if p.j == q.j { 0 } else { 1 };
        prop_assert_eq!(shared, expected);
        prop_assert!(through_p.iter().all(|&l| line_index(d, l) < d * d));
    }

    #[test]
    fn autocorrelations_sum_to_one(raw in prop::collection::vec(0.0f64..1.0, 2..12)) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 1e-6);
        let p = ProbabilityVector::new(raw.iter().map(|x| x / total).collect()).unwrap();
        let s: f64 = (0..p.len()).map(|m| p.autocorrelation(m)).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fmt_g_keeps_twelve_digits(x in prop::num::f64::NORMAL) {
        let y: f64 = fmt_g(x).parse().unwrap();
        prop_assert!(((x - y) / x).abs() < 1e-11);
    }
}
