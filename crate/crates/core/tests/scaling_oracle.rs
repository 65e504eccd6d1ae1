use xtalk_core::fidelity::{report, Method};
use xtalk_core::perturbation::PerturbationCoefficients;
use xtalk_core::scaling::{
    asymptotic_real, budget, closed_form_real, lambert_w0, log_grid, max_idle_qubits,
    max_idle_qubits_with_x,
};
use xtalk_core::CouplingConfig;

/// Root of `w e^w = z` on `[-1, hi]` by plain bisection.
fn lambert_bisect(z: f64) -> f64 {
    let (mut lo, mut hi) = (-1.0f64, z.max(1.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid.exp() < z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest `n` with `2^N n / (2^N + 1) <= E/(x m^2)`, `N = n + 2`, by counting up.
fn count_up(m: f64, e_thr: f64, x: f64) -> u64 {
    let a = e_thr / (x * m * m);
    let mut n = 0u64;
    loop {
        let next = (n + 1) as f64;
        let d = (next + 2.0).exp2();
        if d * next / (d + 1.0) > a {
            return n;
        }
        n += 1;
    }
}

#[test]
fn lambert_against_bisection() {
    assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
    for z in [-0.35, -0.2, 1e-6, 0.3, 1.0, 2.5, 40.0, 1e4] {
        let w = lambert_w0(z).unwrap();
        assert!(
            (w - lambert_bisect(z)).abs() < 1e-12 * w.abs().max(1.0),
            "z={z}"
        );
    }
}

#[test]
fn integer_solutions_agree_with_direct_count() {
    for m in log_grid(1e-3, 1e-1, 50) {
        let s = max_idle_qubits(m, 1e-3).unwrap();
        assert_eq!(s.n_closed_form, s.n_numeric);
        assert_eq!(s.n_numeric, count_up(m, 1e-3, s.x_used), "m={m}");
    }
}

#[test]
fn golden_values() {
    assert_eq!(max_idle_qubits(1e-2, 1e-3).unwrap().n_closed_form, 4);
    assert_eq!(max_idle_qubits(4e-2, 1e-3).unwrap().n_closed_form, 0);
    let x = PerturbationCoefficients::iswap().x;
    let thousand = max_idle_qubits(1e-3, 1e-3).unwrap();
    assert_eq!(thousand.n_closed_form, count_up(1e-3, 1e-3, x));
    assert!((100..1000).contains(&thousand.n_closed_form));
    // the rounded x = 2.47 moves the boundary by one qubit
    assert_eq!(
        max_idle_qubits_with_x(1e-3, 1e-3, 2.47)
            .unwrap()
            .n_closed_form,
        404
    );
}

#[test]
fn non_increasing_in_m() {
    let ns: Vec<u64> = log_grid(1e-3, 1e-1, 80)
        .into_iter()
        .map(|m| max_idle_qubits(m, 1e-3).unwrap().n_closed_form)
        .collect();
    assert!(ns.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn real_solution_brackets_integer() {
    for m in log_grid(1e-3, 1e-1, 50) {
        let s = max_idle_qubits(m, 1e-3).unwrap();
        let n = s.n_closed_form as f64;
        assert!(s.real_valued_n >= n && s.real_valued_n < n + 1.0, "m={m}");
        let a = budget(m, 1e-3, s.x_used);
        assert!((closed_form_real(a).unwrap() - s.real_valued_n).abs() < 1e-9 * a.max(1.0));
    }
}

#[test]
fn asymptotic_form_within_one() {
    for m in log_grid(1e-3, 1e-2, 30) {
        let a = budget(m, 1e-3, PerturbationCoefficients::iswap().x);
        assert!((asymptotic_real(a) - closed_form_real(a).unwrap()).abs() < 1.0);
    }
}

#[test]
fn consistent_with_perturbative_fidelity() {
    for m in [1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2] {
        let n = max_idle_qubits(m, 1e-3).unwrap().n_closed_form as usize;
        // the budget drops the quadratic term, so compare against its linear part
        let c = PerturbationCoefficients::iswap();
        let linear = |n: usize| {
            let d = ((n + 2) as f64).exp2();
            d * c.x * n as f64 * m * m / (d + 1.0)
        };
        assert!(linear(n) <= 1e-3 && linear(n + 1) > 1e-3, "m={m}");
        let err = |n: usize| {
            report(Method::Perturbative, &CouplingConfig::new(n + 2, m))
                .unwrap()
                .error_rate
        };
        assert!(err(n) <= 1e-3 && err(n + 1) > 1e-3, "m={m}");
    }
}
