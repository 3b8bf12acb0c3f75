use multibath::oracle::tls_oracle;
use multibath::tls::{reduce_system, TlsBathSpec, TlsDensity, TlsModel, HOLE_SECTOR};
use multibath::{Complex64, Schedule};
use proptest::prelude::*;
use std::f64::consts::PI;

fn model(g1: f64, g2: f64, p1: f64, p2: f64, omega0: f64) -> TlsModel<f64> {
    let sched = Schedule::exponential(g1 + g2).unwrap();
    TlsModel::new(TlsBathSpec::new(p1, g1).unwrap(), TlsBathSpec::new(p2, g2).unwrap(), omega0, sched).unwrap()
}

#[test]
fn corner_phase_at_half_turn() {
    let m = model(1.0, 1.0, 0.5, 0.5, 1.0);
    let w = m.full_propagator(PI).unwrap();
    assert!((w.0[0][0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    assert!((w.0[7][7] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
}

#[test]
fn identity_at_zero_time() {
    let w = model(0.4, 1.1, 0.2, 0.9, 2.0).full_propagator(0.0).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((w.0[i][j] - Complex64::new(want, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn pure_evolution_uses_propagator_columns() {
    let m = model(0.5, 1.5, 0.3, 0.7, 1.2);
    let w = m.full_propagator(0.9).unwrap();
    let mut psi = [Complex64::new(0.0, 0.0); 8];
    psi[HOLE_SECTOR[0]] = Complex64::new(1.0, 0.0);
    let out = m.evolve_pure(&psi, 0.9).unwrap();
    for (i, z) in out.iter().enumerate() {
        assert!((z - w.0[i][HOLE_SECTOR[0]]).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_oracle(
        g1 in 0.05f64..3.0, g2 in 0.05f64..3.0,
        p1 in 0.0f64..1.0, p2 in 0.0f64..1.0,
        omega0 in 0.1f64..4.0, t in 0.0f64..6.0,
        a in 0.0f64..1.0, r in 0.0f64..1.0, phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let m = model(g1, g2, p1, p2, omega0);
        let c = Complex64::from_polar(r * (a * (1.0 - a)).sqrt(), phi);
        let s = TlsDensity::new(a, c).unwrap();
        let closed = m.explicit_components(&s, t).unwrap();
        let o = reduce_system(&tls_oracle(&m, &s, t, 1).unwrap().exact);
        prop_assert!((closed.a - o.a).abs() < 1e-10);
        prop_assert!((closed.c - o.c).norm() < 1e-10);
        let full = m.evolve_density(&s, t).unwrap();
        prop_assert!(full.hermiticity_defect() < 1e-12);
        prop_assert!(m.full_propagator(t).unwrap().leakage() == 0.0);
    }

    #[test]
    fn trace_distance_never_grows_under_exponential_coupling(
        a1 in 0.0f64..1.0, a2 in 0.0f64..1.0, t in 0.01f64..8.0,
    ) {
        let m = model(0.9, 0.6, 0.25, 0.8, 1.0);
        let r1 = TlsDensity::diagonal(a1).unwrap();
        let r2 = TlsDensity::diagonal(a2).unwrap();
        prop_assert!(m.markov_rate(t, &r1, &r2).unwrap() <= 0.0);
    }
}
