use means_spectrum::coeffs::{derived_a12, kronecker_sum, one_term_margin, one_term_rhs, A_coefficients};
use means_spectrum::criteria::{
    disks_empty, ellipses_empty, intervals_empty, linear_interval, triple_region_empty, ConvexWitness, EllipseData,
    Region, Verdict, Witness,
};
use means_spectrum::oracle::{asympt_gap, asympt_gap_direct, norm_alpha};
use means_spectrum::specfun::{gamma_ratio, kappa, pochhammer, sigma, KappaMethod, SeriesControl};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn disk(theta: f64, x: f64, y: f64, r: f64) -> ConvexWitness {
    ConvexWitness {
        theta,
        region: Region::Disk { center: Complex64::new(x, y), radius: r },
    }
}

fn ellipse(theta: f64, a: [f64; 5], r: f64) -> ConvexWitness {
    ConvexWitness { theta, region: Region::Ellipse(EllipseData { a, r }) }
}

fn coeffs() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b)), 1..20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_at_beta_zero_is_one(alpha in -0.9..5.0f64) {
        prop_assert!((sigma(alpha, 0.0).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sigma_positive(alpha in -0.9..5.0f64, beta in -0.9..5.0f64) {
        let s = sigma(alpha, beta).unwrap();
        prop_assert!(s > 0.0 && s.is_finite());
    }

    #[test]
    fn gamma_ratio_shift(x in 0.05..40.0f64) {
        let r = gamma_ratio(&[x + 1.0], &[x]).unwrap();
        prop_assert!((r - x).abs() <= 1e-12 * x);
    }

    #[test]
    fn pochhammer_recurrence(a in -5.0..10.0f64, n in 0usize..30) {
        let p = pochhammer(a, n).unwrap();
        let q = pochhammer(a, n + 1).unwrap();
        prop_assert!((q - p * (a + n as f64)).abs() <= 1e-12 * q.abs().max(1e-300));
    }

    #[test]
    fn kappa_two_routes_agree(theta in 0.05..0.99f64, extra in 0.05..6.0f64) {
        let ctl = SeriesControl::default();
        let alpha = 2.0 * theta - 1.0 + extra;
        let s = kappa(alpha, theta, &ctl, KappaMethod::Series).unwrap();
        let h = kappa(alpha, theta, &ctl, KappaMethod::Hyp4F3).unwrap();
        prop_assert!(s > 0.0);
        prop_assert!((s - h).abs() <= 1e-9 * s.abs(), "{} vs {}", s, h);
    }

    #[test]
    fn kronecker_delta(alpha in 0.0..5.0f64, b in -0.9..0.9f64, big_n in 0usize..7) {
        for n in 0..=big_n {
            let want = if n == big_n { 1.0 } else { 0.0 };
            prop_assert!((kronecker_sum(n, big_n, alpha, b) - want).abs() < 1e-9);
        }
    }

    #[test]
    fn row_pipeline_matches_closed_form(theta in 0.05..1.0f64, t in -4.0..4.0f64, beta in 0.05..6.0f64) {
        prop_assume!(t.abs() > 1e-3);
        let ctl = SeriesControl::default();
        let p = A_coefficients(theta, c(t), beta, 2, &ctl).unwrap();
        match derived_a12(theta, c(t), beta, &ctl).unwrap() {
            Some([a1, a2]) => {
                prop_assert!(p.positive);
                prop_assert!((a1 - p.a1).norm() <= 1e-10 * (1.0 + p.a1.norm()));
                prop_assert!((a2 - p.a2).norm() <= 1e-10 * (1.0 + p.a2.norm()));
            }
            None => prop_assert!(!p.positive),
        }
    }

    // the right side vanishes linearly as θ → 1 while K stays above 1, so close
    // enough to 1 (relative to the slope) the condition must fail
    #[test]
    fn one_term_fails_near_one(t in -4.0..4.0f64, beta in 0.01..10.0f64) {
        prop_assume!(t.abs() > 1e-3);
        let ctl = SeriesControl::default();
        let slope = one_term_rhs(c(t), beta, 0.999).unwrap() / 1e-3;
        let h = (0.1 / slope).min(1e-3);
        let m = one_term_margin(c(t), beta, 1.0 - h, &ctl).unwrap();
        prop_assert!(m < 0.0, "h = {}, margin = {}", h, m);
    }

    #[test]
    fn coefficient_gap_nonnegative(co in coeffs(), alpha in -0.9..4.0f64, n in 1usize..4) {
        let g = asympt_gap(&co, alpha, n).unwrap();
        let d = asympt_gap_direct(&co, alpha, n).unwrap();
        prop_assert!(g >= 0.0);
        prop_assert!((g - d).abs() <= 1e-10 * g.abs().max(d.abs()).max(1e-12));
    }

    #[test]
    fn norm_decreases_with_weight(co in coeffs(), alpha in -0.9..4.0f64, da in 0.0..3.0f64) {
        prop_assert!(norm_alpha(&co, alpha + da).unwrap() <= norm_alpha(&co, alpha).unwrap() * (1.0 + 1e-14));
    }

    #[test]
    fn linear_interval_solves(cc in -5.0..5.0f64, l in -5.0..5.0f64, r in 0.0..3.0f64, s in 0.0..1.0f64) {
        if let Region::Interval { lo, hi } = linear_interval(cc, l, r) {
            let x = lo + s * (hi - lo);
            prop_assert!((cc - x * l).abs() <= r * (1.0 + 1e-12) + 1e-12);
            prop_assert!((cc - (hi + 1e-6 * (1.0 + hi.abs())) * l).abs() >= r * (1.0 - 1e-9) || l.abs() < 1e-9);
        }
    }

    #[test]
    fn intervals_brute_force(ivs in prop::collection::vec((-3.0..3.0f64, 0.0..2.0f64), 1..12)) {
        let fam: Vec<ConvexWitness> = ivs
            .iter()
            .enumerate()
            .map(|(i, &(lo, w))| ConvexWitness { theta: i as f64, region: Region::Interval { lo, hi: lo + w } })
            .collect();
        let ev = intervals_empty(&fam);
        let sup = ivs.iter().map(|&(lo, _)| lo).fold(f64::NEG_INFINITY, f64::max);
        let inf = ivs.iter().map(|&(lo, w)| lo + w).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(ev.is_empty(), sup > inf);
        prop_assert!((ev.margin - (sup - inf)).abs() < 1e-12);
    }

    // a found common point lies in every disk; an empty verdict has a triplet
    // with no common point
    #[test]
    fn disks_verdict_consistent(ds in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64, 0.1..2.5f64), 1..10)) {
        let fam: Vec<ConvexWitness> = ds.iter().enumerate().map(|(i, &(x, y, r))| disk(i as f64, x, y, r)).collect();
        let ev = disks_empty(&fam, 1e-9).unwrap();
        match (&ev.verdict, &ev.witness) {
            (Verdict::Nonempty, Witness::CommonPoint { x, y }) => {
                for &(cx, cy, r) in &ds {
                    prop_assert!(((x - cx).powi(2) + (y - cy).powi(2)).sqrt() <= r + 1e-6);
                }
            }
            (Verdict::Empty, Witness::Triplet { margin, .. }) => {
                prop_assert!(*margin > 1e-9);
                let t = triple_region_empty(&ev.family[0], &ev.family[1], &ev.family[2]).unwrap();
                prop_assert!(t.empty);
            }
            (Verdict::Inconclusive, _) => {}
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn triple_test_symmetric(ds in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64, 0.1..2.0f64), 3)) {
        let f: Vec<ConvexWitness> = ds.iter().map(|&(x, y, r)| disk(0.5, x, y, r)).collect();
        let a = triple_region_empty(&f[0], &f[1], &f[2]).unwrap();
        let b = triple_region_empty(&f[2], &f[0], &f[1]).unwrap();
        prop_assert_eq!(a.empty, b.empty);
        if a.empty {
            prop_assert!((a.margin - b.margin).abs() <= 1e-9 * (1.0 + a.margin));
        }
    }

    // with the second-order coefficients zeroed an ellipse is the strip of the
    // corresponding interval, so both tests must agree
    #[test]
    fn flat_ellipses_match_intervals(rows in prop::collection::vec((-2.0..2.0f64, 0.2..2.0f64), 2..10), r in 0.05..1.0f64) {
        let el: Vec<ConvexWitness> = rows.iter().enumerate().map(|(i, &(a1, a2))| ellipse(i as f64, [a1, a2, 0.0, 0.0, 0.0], r)).collect();
        let iv: Vec<ConvexWitness> = rows.iter().enumerate().map(|(i, &(a1, a2))| ConvexWitness { theta: i as f64, region: linear_interval(a1, a2, r) }).collect();
        let e = ellipses_empty(&el, 1e-9).unwrap();
        let i = intervals_empty(&iv);
        // skip near-ties where the guard decides
        prop_assume!(i.margin.abs() > 1e-6);
        prop_assert_eq!(e.is_empty(), i.is_empty(), "ellipse {:?} interval {:?}", e.margin, i.margin);
        if e.is_empty() {
            prop_assert!(e.margin > 1e-9);
        }
    }
}
