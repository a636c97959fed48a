use std::sync::OnceLock;

use gaussian_oscillator::format::sig12;
use gaussian_oscillator::prelude::*;
use proptest::prelude::*;

fn table() -> &'static MatrixElementTable {
    static TABLE: OnceLock<MatrixElementTable> = OnceLock::new();
    TABLE.get_or_init(|| MatrixElementTable::with_default_rule(60).unwrap())
}

fn rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_hermite_rule(160).unwrap())
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Attractive), Just(Sign::Repulsive)]
}

fn level() -> impl Strategy<Value = Level> {
    prop_oneof![Just(Level::Ground), Just(Level::FirstExcited)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_symmetric_and_positive(e in -3.0f64..0.499, v in prop::collection::vec(-1.0f64..1.0, 60)) {
        let k = BsKernel::build(e, table(), &[]).unwrap();
        prop_assert!(k.entries().is_symmetric());
        prop_assert!(k.entries().quadratic_form(&v) >= -1e-12);
    }

    #[test]
    fn reduced_kernel_symmetric(e in -1.0f64..1.49) {
        let k = BsKernel::build(e, table(), &[BasisIndex(0)]).unwrap();
        prop_assert!(k.entries().is_symmetric());
        for j in 0..table().dim() {
            prop_assert_eq!(k.entries()[(0, j)], 0.0);
        }
    }

    #[test]
    fn table_entries_bounded_with_parity(m in 0usize..60, n in 0usize..60) {
        let v = table().get(m, n);
        prop_assert_eq!(v, table().get(n, m));
        prop_assert!(v.abs() <= 1.0);
        if (m + n) % 2 == 1 {
            prop_assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn closed_forms_match_quadrature(n in 0usize..30) {
        let q0 = gaussian_element(0, 2 * n, rule()).unwrap();
        prop_assert!((q0.abs() - gaussian_element_closed_0_2n(n)).abs() < 1e-10);
        let q1 = gaussian_element(1, 2 * n + 1, rule()).unwrap();
        prop_assert!((q1.abs() - gaussian_element_closed_1_odd(n)).abs() < 1e-10);
    }

    #[test]
    fn psi_parity(n in 0usize..80, x in 0.0f64..6.0) {
        let (a, b) = (psi_eval(n, x), psi_eval(n, -x));
        let expected = if n % 2 == 0 { a } else { -a };
        prop_assert!((b - expected).abs() <= 1e-14);
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs());
    }

    #[test]
    fn energy_monotone_in_coupling(a in 0.0f64..1.0, b in 0.0f64..1.0, s in sign(), l in level()) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let t = table().truncated(40).unwrap();
        let e_lo = oracle_energy(Coupling::new(lo, s).unwrap(), &t, l).unwrap().energy;
        let e_hi = oracle_energy(Coupling::new(hi, s).unwrap(), &t, l).unwrap().energy;
        match s {
            Sign::Attractive => prop_assert!(e_hi < e_lo),
            Sign::Repulsive => prop_assert!(e_hi > e_lo),
        }
    }

    #[test]
    fn routes_agree(lambda in 0.01f64..0.95, s in sign(), l in level()) {
        let c = Coupling::new(lambda, s).unwrap();
        let t = table();
        let d = det_energy(c, t, l).unwrap().energy;
        let r = rank_one_energy(c, t, l, 1e-13).unwrap().energy;
        let o = oracle_energy(c, t, l).unwrap().energy;
        prop_assert!((d - o).abs() < 1e-9, "det {d} oracle {o}");
        prop_assert!((r - o).abs() < 1e-9, "rank1 {r} oracle {o}");
    }

    #[test]
    fn det_root_stable_in_truncation(lambda in 0.05f64..1.0, s in sign()) {
        let c = Coupling::new(lambda, s).unwrap();
        let a = det_energy(c, &table().truncated(40).unwrap(), Level::Ground).unwrap().energy;
        let b = det_energy(c, table(), Level::Ground).unwrap().energy;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn det_vanishes_at_oracle_level(lambda in 0.05f64..1.0, s in sign()) {
        let c = Coupling::new(lambda, s).unwrap();
        let t = table().truncated(40).unwrap();
        let e = oracle_energy(c, &t, Level::Ground).unwrap().energy;
        prop_assert!(fredholm_det_sector(e, c, &t, Sector::Even).unwrap().abs() < 1e-8);
    }

    #[test]
    fn second_order_within_cubic_bound(lambda in 0.0f64..0.1, s in sign(), l in level()) {
        let c = Coupling::new(lambda, s).unwrap();
        let o = oracle_energy(c, &table().truncated(40).unwrap(), l).unwrap().energy;
        let p = second_order_energy(c, l).energy;
        prop_assert!((o - p).abs() <= 0.5 * lambda.powi(3) + 1e-13);
    }

    #[test]
    fn twelve_digit_output_round_trips(x in prop::num::f64::NORMAL) {
        let back: f64 = sig12(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
    }
}
