use super::*;
use std::f64::consts::FRAC_PI_2;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[allow(clippy::excessive_precision)]
const E1_1: f64 = 0.219_383_934_395_520_273_677_163_775_46;
#[allow(clippy::excessive_precision)]
const E1_10: f64 = 4.156_968_929_685_324_277_402_859_810_28e-6;
#[allow(clippy::excessive_precision)]
const EI_1: f64 = 1.895_117_816_355_936_755_466_520_934_33;
#[allow(clippy::excessive_precision)]
const SI_1: f64 = 0.946_083_070_367_183_014_941_353_313_82;
#[allow(clippy::excessive_precision)]
const CI_1: f64 = 0.337_403_922_900_968_134_662_646_203_89;
#[allow(clippy::excessive_precision)]
const LI_10: f64 = 6.165_599_504_787_297_937_520_497_346_2;

#[test]
fn known_point_values() {
    assert!(rel(eval_exp(ExpFn::E1, 1.0).unwrap().value, E1_1) < 1e-15);
    assert!(rel(eval_exp(ExpFn::E1, 10.0).unwrap().value, E1_10) < 1e-14);
    assert!(rel(eval_exp(ExpFn::Ei, 1.0).unwrap().value, EI_1) < 1e-15);
    assert!(rel(eval_trig(TrigFn::Si, 1.0).unwrap().value, SI_1) < 1e-15);
    assert!(rel(eval_trig(TrigFn::Ci, 1.0).unwrap().value, CI_1) < 1e-15);
    assert!(rel(eval_log(LogFn::Li, 10.0).unwrap().value, LI_10) < 1e-14);
}

#[test]
fn reflection_between_e1_and_ei() {
    for x in [0.01, 0.5, 3.0, 6.0, 7.5, 30.0, 44.0, 60.0] {
        let e1 = eval_exp(ExpFn::E1, x).unwrap().value;
        let ei = eval_exp(ExpFn::Ei, -x).unwrap().value;
        assert!(rel(e1, -ei) < 1e-12, "x={x}");
    }
}

#[test]
fn ein_bridge() {
    for x in [0.1, 1.0, 5.0, 6.0, 6.5, 20.0] {
        let ein = eval_exp(ExpFn::Ein, x).unwrap().value;
        let e1 = eval_exp(ExpFn::E1, x).unwrap().value;
        assert!(rel(ein, e1 + x.ln() + EULER_GAMMA) < 1e-13, "x={x}");
    }
    assert_eq!(eval_exp(ExpFn::Ein, 0.0).unwrap().value, 0.0);
}

#[test]
fn li_is_ei_of_log() {
    for x in [0.5, 1.5, 2.0, 10.0, 1e6] {
        let li = eval_log(LogFn::Li, x).unwrap().value;
        let ei = eval_exp(ExpFn::Ei, f64::ln(x)).unwrap().value;
        assert_eq!(li, ei);
    }
}

#[test]
fn routes_switch_at_their_seams() {
    let m = |f: ExpFn, x: f64| eval_exp(f, x).unwrap().method;
    assert_eq!(m(ExpFn::E1, 6.0), Method::Series);
    assert_eq!(m(ExpFn::E1, 6.0 + 1e-9), Method::ContinuedFraction);
    assert_eq!(m(ExpFn::E1, 44.0), Method::ContinuedFraction);
    assert_eq!(m(ExpFn::E1, 44.5), Method::Asymptotic);
    assert_eq!(m(ExpFn::Ein, 7.0), Method::Identity);
    let t = |f: TrigFn, x: f64| eval_trig(f, x).unwrap().method;
    assert_eq!(t(TrigFn::Si, 12.0), Method::Series);
    assert_eq!(t(TrigFn::Si, 20.0), Method::Quadrature);
    assert_eq!(t(TrigFn::Ci, 50.0), Method::Asymptotic);
}

#[test]
fn values_are_continuous_across_seams() {
    let ev = Evaluator::default();
    for (f, x) in [
        (Function::Exp(ExpFn::E1), 6.0),
        (Function::Exp(ExpFn::E1), 44.0),
        (Function::Exp(ExpFn::Ein), 6.0),
        (Function::Trig(TrigFn::Si), 12.0),
        (Function::Trig(TrigFn::Ci), 12.0),
        (Function::Trig(TrigFn::Si), 30.0),
        (Function::Trig(TrigFn::Ci), 30.0),
    ] {
        let below = ev.eval(f, x * (1.0 - 1e-12)).unwrap();
        let above = ev.eval(f, x * (1.0 + 1e-12)).unwrap();
        let scale = below.value.abs().max(1e-3);
        assert!(
            (below.value - above.value).abs() < 1e-9 * scale,
            "{f} at {x}"
        );
    }
}

#[test]
fn e1_is_decreasing() {
    let xs: Vec<f64> = (1..=400).map(|k| k as f64 * 0.25).collect();
    let vals: Vec<f64> = xs
        .iter()
        .map(|&x| eval_exp(ExpFn::E1, x).unwrap().value)
        .collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn sine_and_cosine_integrals_settle() {
    let si = eval_trig(TrigFn::Si, 1e4).unwrap().value;
    let ci = eval_trig(TrigFn::Ci, 1e4).unwrap().value;
    assert!((si - FRAC_PI_2).abs() < 2e-4);
    assert!(ci.abs() <= 2e-4);
    assert_eq!(eval_trig(TrigFn::Si, 0.0).unwrap().value, 0.0);
    assert_eq!(
        eval_trig(TrigFn::Si, -2.0).unwrap().value,
        -eval_trig(TrigFn::Si, 2.0).unwrap().value
    );
}

#[test]
fn domain_errors() {
    let err = eval_log(LogFn::Li, 1.0).unwrap_err();
    assert!(err.is_domain());
    assert!(err.to_string().contains("singularity at x = 1"));
    assert!(eval_exp(ExpFn::Ei, 0.0).unwrap_err().is_domain());
    assert!(eval_exp(ExpFn::E1, 0.0).unwrap_err().is_domain());
    assert!(eval_exp(ExpFn::E1, -1.0).unwrap_err().is_domain());
    assert!(eval_trig(TrigFn::Ci, 0.0).unwrap_err().is_domain());
    assert!(eval_log(LogFn::LiOffset, 1.5).unwrap_err().is_domain());
    assert!(eval_log(LogFn::Li1, 1.0).unwrap_err().is_domain());
    assert!(eval_exp(ExpFn::E1, f64::NAN).unwrap_err().is_domain());
}

#[test]
fn exact_special_values() {
    let li2 = eval_log(LogFn::LiOffset, 2.0).unwrap();
    assert_eq!(li2.value, 0.0);
    assert_eq!(li2.method, Method::Identity);
    for n in 2..=6 {
        let r = eval_exp(ExpFn::En(n as f64), 0.0).unwrap();
        assert_eq!(r.value, 1.0 / (n as f64 - 1.0));
    }
}

#[test]
fn en_one_is_e1() {
    let r = eval_exp(ExpFn::En(1.0), 2.0).unwrap().value;
    assert!(rel(r, eval_exp(ExpFn::E1, 2.0).unwrap().value) < 1e-10);
}

#[test]
fn continued_fraction_examples() {
    let r = cf_e1(10.0, 1e-16).unwrap();
    assert!(rel(r.value, E1_10) < 1e-14);
    assert_eq!(r.method, Method::ContinuedFraction);
    // usable well below its home range, if slowly
    let low = cf_e1(1.0, 1e-15).unwrap();
    assert!(rel(low.value, E1_1) < 1e-13);
    assert!(low.terms_or_subdivisions > r.terms_or_subdivisions);
    assert!(cf_e1(0.0, 1e-15).unwrap_err().is_domain());
}

#[test]
fn error_estimates_cover_the_truth() {
    for (r, truth) in [
        (eval_exp(ExpFn::E1, 1.0).unwrap(), E1_1),
        (eval_exp(ExpFn::E1, 10.0).unwrap(), E1_10),
        (eval_exp(ExpFn::Ei, 1.0).unwrap(), EI_1),
        (eval_trig(TrigFn::Ci, 1.0).unwrap(), CI_1),
    ] {
        assert!((r.value - truth).abs() <= r.abs_err_estimate.max(f64::EPSILON * truth.abs()));
    }
}

#[test]
fn method_override() {
    let ev = Evaluator::default();
    let f = Function::Exp(ExpFn::E1);
    for m in [
        Method::Series,
        Method::ContinuedFraction,
        Method::Quadrature,
    ] {
        let r = ev.eval_with(f, 1.0, m).unwrap();
        assert_eq!(r.method, m);
        assert!(rel(r.value, E1_1) < 1e-10, "{m}");
    }
    let asym = ev.eval_with(f, 50.0, Method::Asymptotic).unwrap();
    assert!(rel(asym.value, ev.eval(f, 50.0).unwrap().value) < 1e-12);
    assert!(ev
        .eval_with(Function::Trig(TrigFn::Si), 1.0, Method::ContinuedFraction)
        .is_err());
}

#[test]
fn batch_preserves_order_in_both_modes() {
    let ev = Evaluator::default();
    let xs: Vec<f64> = (1..=50).map(|k| k as f64).collect();
    let f = Function::Exp(ExpFn::E1);
    let seq = ev.eval_many(f, &xs, Exec::Sequential);
    let par = ev.eval_many(f, &xs, Exec::Parallel);
    for ((a, b), &x) in seq.iter().zip(&par).zip(&xs) {
        let a = a.as_ref().unwrap();
        assert_eq!(a.value, b.as_ref().unwrap().value);
        assert_eq!(a.value, ev.eval(f, x).unwrap().value);
    }
}

#[test]
fn function_names_round_trip() {
    for name in ["Ei", "E1", "En:3", "Ein", "Si", "Ci", "li", "li1", "Li"] {
        let f: Function = name.parse().unwrap();
        assert_eq!(f.to_string(), name);
    }
    assert!("sinc".parse::<Function>().is_err());
    assert_eq!(Function::Exp(ExpFn::Ei).poles(), &[0.0]);
}
