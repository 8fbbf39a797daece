use orthopoly::classical::{jacobi_eval, FamilySpec};
use orthopoly::kernel::CdKernel;
use orthopoly::measures::{moments_from_recurrence, named};
use orthopoly::quadrature::{gauss_rule, interlaces, ZeroTable};
use orthopoly::recurrence::RecurrenceTable;
use orthopoly::{Coefficients, Execution, Form, RecurrenceSystem};
use proptest::prelude::*;

/// Monic system with `b_n` in `[-1, 1]` and `c_n` in `[0.1, 2]`.
fn monic_system(max_len: usize) -> impl Strategy<Value = RecurrenceSystem> {
    prop::collection::vec((-1.0..1.0f64, 0.1..2.0f64), 4..max_len).prop_map(|rows| {
        let rows = rows.into_iter().enumerate().map(|(n, (b, c))| Coefficients::new(1.0, b, if n == 0 { 0.0 } else { c }));
        RecurrenceSystem::from_coefficients(Form::Monic, 1.0, rows.collect())
    })
}

fn weakly_interlaces(lower: &[f64], upper: &[f64], tol: f64) -> bool {
    upper.len() == lower.len() + 1
        && lower.iter().enumerate().all(|(k, &x)| {
            let slack = tol * x.abs().max(1.0);
            upper[k] < x + slack && x < upper[k + 1] + slack
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_series_matches_recurrence(alpha in -0.9..3.0f64, beta in -0.9..3.0f64, n in 0usize..25, x in -1.0..1.0f64) {
        let spec = FamilySpec::Jacobi { alpha, beta };
        let rec = spec.recurrence().eval(n, x).unwrap();
        let series = jacobi_eval(n, alpha, beta, x).unwrap();
        let scale = jacobi_eval(n, alpha, beta, 1.0).unwrap().abs().max(jacobi_eval(n, alpha, beta, -1.0).unwrap().abs()).max(1.0);
        prop_assert!((rec - series).abs() <= 1e-11 * scale, "{rec} vs {series}");
    }

    #[test]
    fn positive_recurrences_satisfy_favard(sys in monic_system(24)) {
        let len = sys.len().unwrap();
        prop_assert!(sys.validate_favard(len - 1).all_pass);
    }

    #[test]
    fn zeros_interlace(sys in monic_system(24)) {
        let table = ZeroTable::new(&sys, sys.len().unwrap(), Execution::Sequential).unwrap();
        for pair in table.zeros.windows(2) {
            // isolated zeros of consecutive degrees can coincide to the last bit
            prop_assert!(weakly_interlaces(&pair[0], &pair[1], 1e-12), "{:?}\n{:?}", pair[0], pair[1]);
        }
        let strict = sys.len().unwrap().min(6);
        for pair in table.zeros[..strict].windows(2) {
            prop_assert!(interlaces(&pair[0], &pair[1]));
        }
    }

    #[test]
    fn gauss_weights_are_positive_and_exact(sys in monic_system(16), mu0 in 0.1..10.0f64) {
        // moments through degree 2n - 1 use rows 0..=n
        let n = sys.len().unwrap() - 1;
        let norms = sys.norms_for_mass(mu0, n - 1).unwrap();
        let rule = gauss_rule(&sys, &norms, n).unwrap();
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        let ms = moments_from_recurrence(&sys, 2 * n - 1, mu0).unwrap();
        for j in 0..2 * n {
            let scale = rule.nodes.iter().map(|x| x.abs()).fold(1.0, f64::max).powi(j as i32) * mu0;
            prop_assert!((rule.moment(j) - ms.mu[j]).abs() <= 1e-10 * scale, "j={j}: {} vs {}", rule.moment(j), ms.mu[j]);
        }
    }

    #[test]
    fn kernel_is_symmetric_and_closed_form_agrees(sys in monic_system(20), x in -2.0..2.0f64, y in -2.0..2.0f64) {
        let n = sys.len().unwrap() - 1;
        let norms = sys.norms_for_mass(1.0, n).unwrap();
        let k = CdKernel::new(&sys, &norms, n).unwrap();
        let (xy, yx) = (k.eval(x, y).unwrap(), k.eval(y, x).unwrap());
        let scale = k.diagonal(x).unwrap().abs().max(k.diagonal(y).unwrap().abs()).sqrt().max(1.0);
        prop_assert!((xy.direct - yx.direct).abs() <= 1e-12 * scale * scale);
        prop_assert!((xy.direct - xy.closed).abs() <= 1e-9 * scale * scale, "{xy:?}");
    }

    #[test]
    fn tables_round_trip(sys in monic_system(20)) {
        let len = sys.len().unwrap();
        let table = sys.to_table(len).unwrap();
        let text = serde_json::to_string(&table).unwrap();
        let back: RecurrenceTable = serde_json::from_str(&text).unwrap();
        let rebuilt = RecurrenceSystem::from_table(&back).unwrap();
        for n in 0..len {
            prop_assert_eq!(rebuilt.coeffs(n).unwrap(), sys.coeffs(n).unwrap());
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let sys = FamilySpec::Jacobi { alpha: 0.3, beta: -0.4 }.recurrence();
    let seq = ZeroTable::new(&sys, 40, Execution::Sequential).unwrap();
    let par = ZeroTable::new(&sys, 40, Execution::Parallel).unwrap();
    assert_eq!(seq, par);

    let m = named::jacobi(0.3, -0.4).unwrap();
    assert_eq!(
        m.moments_with(12, Execution::Sequential).unwrap(),
        m.moments_with(12, Execution::Parallel).unwrap()
    );
}

#[test]
fn singular_jacobi_weight_integrates() {
    use statrs::function::gamma::gamma;
    for (alpha, beta) in [(0.3, -0.4), (-0.7, -0.7), (-0.95, 2.0)] {
        let m = named::jacobi(alpha, beta).unwrap();
        let mu0 = m.moments(0).unwrap().mu[0];
        let want = 2f64.powf(alpha + beta + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(alpha + beta + 2.0);
        assert!((mu0 - want).abs() <= 1e-12 * want, "({alpha}, {beta}): {mu0} vs {want}");
    }
}
