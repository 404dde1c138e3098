use proptest::prelude::*;
use thermoprior::models::ModelParams;
use thermoprior::schemes::{classify_numeric, classify_series, lavenda_series, prior_expansion};
use thermoprior::series::{ratio, ConstFactor};
use thermoprior::{registry, ModelId, Scheme, ThermalModel, Verdict};

fn pairs() -> Vec<(ThermalModel, Scheme)> {
    registry()
        .into_iter()
        .flat_map(|m| m.schemes().into_iter().map(move |s| (m.clone(), s)))
        .collect()
}

#[test]
fn expansions_are_stable_under_order() {
    for (model, scheme) in pairs() {
        let low = prior_expansion(&model, scheme, 12).unwrap();
        let high = prior_expansion(&model, scheme, 16).unwrap();
        assert_eq!(low.expansion.order(), 12, "{} {scheme}", model.name());
        assert_eq!(high.expansion.order(), 16, "{} {scheme}", model.name());
        assert!(
            high.expansion.truncate(12).agrees_with(&low.expansion),
            "{} {scheme}: {} vs {}",
            model.name(),
            low.expansion,
            high.expansion
        );
    }
}

#[test]
fn series_and_numeric_classification_agree() {
    for (model, scheme) in pairs() {
        let series = classify_series(&prior_expansion(&model, scheme, 12).unwrap());
        let numeric = classify_numeric(&model, scheme).unwrap();
        assert_eq!(series.verdict, numeric.verdict, "{} {scheme}", model.name());
        let lead = series.leading.as_ref().unwrap().to_f64();
        assert!(
            (numeric.leading_value - lead).abs() < 1e-3 * lead.abs(),
            "{} {scheme}: {} vs {lead}",
            model.name(),
            numeric.leading_value
        );
    }
}

#[test]
fn truncated_series_tracks_closed_form() {
    for (model, scheme) in pairs() {
        let p = prior_expansion(&model, scheme, 16).unwrap();
        for beta in [0.05, 0.2] {
            let e = p.expansion.eval(beta).unwrap();
            let exact = model.omega_eval(beta, scheme).unwrap();
            let slack = 1e-9 * exact.abs();
            assert!(
                (e.value - exact).abs() <= 10.0 * e.truncation + slack,
                "{} {scheme} at {beta}: {} vs {exact}",
                model.name(),
                e.value
            );
        }
    }
}

#[test]
fn published_classifications() {
    use ModelId::*;
    let expected = [
        (SqueezedThermalQuantum, Verdict::Jeffreys),
        (DisplacedThermalQuantum, Verdict::BayesLaplace),
        (DisplacedSqueezedQuantum, Verdict::BayesLaplace),
        (SpinHalfBures, Verdict::BayesLaplace),
        (SpinHalfMaximal, Verdict::BayesLaplace),
        (SqueezedThermalLavenda, Verdict::Jeffreys),
        (IdealGas, Verdict::Jeffreys),
        (HarmonicOscillator, Verdict::Jeffreys),
        (FermiOscillator, Verdict::BayesLaplace),
    ];
    for (id, verdict) in expected {
        let m = ThermalModel::new(id);
        let p = prior_expansion(&m, m.primary_scheme(), 12).unwrap();
        assert_eq!(classify_series(&p).verdict, verdict, "{id}");
    }
    // The spin-one model's defining formulas give a finite constant term.
    let m = ThermalModel::new(SpinOneExtended);
    let p = prior_expansion(&m, Scheme::Lavenda, 12).unwrap();
    assert_eq!(classify_series(&p).verdict, Verdict::BayesLaplace);
}

#[test]
fn lavenda_needs_enough_order() {
    let m = ThermalModel::new(ModelId::FermiOscillator);
    assert!(prior_expansion(&m, Scheme::Lavenda, 4).is_err());
    let z = m.z_series(10).unwrap();
    assert!(lavenda_series(&z, 12).is_err());
    assert!(prior_expansion(&m, Scheme::Quantum, 12).is_err());
}

fn positive() -> impl Strategy<Value = thermoprior::Rational> {
    (1i64..=20, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A constant factor in Z drops out of (log Z)″.
    #[test]
    fn lavenda_ignores_the_constant(id in prop::sample::select(ModelId::ALL.to_vec()), c in positive()) {
        let z = ThermalModel::new(id).z_series(14).unwrap();
        let base = lavenda_series(&z, 12).unwrap();
        let moved = lavenda_series(&z.with_constant(ConstFactor::rational(c)).unwrap(), 12).unwrap();
        prop_assert!(base.agrees_with(&moved));
    }

    /// Energy scales change coefficients but never the verdict.
    #[test]
    fn verdict_is_scale_invariant(nu in positive(), eps in positive()) {
        let params = ModelParams { nu, epsilon0: eps };
        for id in [ModelId::HarmonicOscillator, ModelId::FermiOscillator] {
            let m = ThermalModel::new(id).with_params(params.clone()).unwrap();
            let p = prior_expansion(&m, Scheme::Lavenda, 12).unwrap();
            prop_assert_eq!(classify_series(&p).verdict, m.expected().verdict);
        }
    }

    #[test]
    fn omega_is_positive(id in prop::sample::select(ModelId::ALL.to_vec()), beta in 0.01f64..20.0) {
        let m = ThermalModel::new(id);
        for s in m.schemes() {
            let w = m.omega_eval(beta, s).unwrap();
            prop_assert!(w.is_finite() && w > 0.0, "{id} {s} at {beta}: {w}");
        }
    }
}
