//! One line per acceptance criterion; exits non-zero if any fails. Each criterion combines the library's
//! own verifiers with the brute-force oracles in `common`.

mod common;

use num_rational::BigRational;
use qmzv::coeffs::rat;
use qmzv::evaluator::{EvalConfig, Evaluator};
use qmzv::identities::{
    derivation_examples, derivation_family, homomorphism_sweep, named_identities, verify_convergence_bound,
    verify_derivation_examples, verify_euler, verify_limit, verify_limit_of, verify_operator_laws,
    verify_pathways, verify_regularization, verify_regularization_classical, verify_schlesinger,
    verify_shuffle_x_laws, verify_word_laws, CheckReport, EulerCase, WordSample, ZETA2,
};
use qmzv::products::{ProductKind, QLin};
use qmzv::words::{desk_set, Composition, LinComb, YWord};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn gate(reports: &[CheckReport]) -> Outcome {
    let failing: Vec<&CheckReport> = reports.iter().filter(|r| r.gates() && !r.pass).collect();
    let notes = reports.iter().filter(|r| r.advisory && !r.pass).count();
    let mut detail = format!("{} checks, {} failing, {} erratum notes", reports.len(), failing.len(), notes);
    if let Some(f) = failing.first() {
        detail.push_str(&format!("; first: {}", f.to_text()));
    }
    Outcome { ok: failing.is_empty(), detail }
}

fn with_oracle(mut o: Outcome, oracle_ok: bool, what: &str) -> Outcome {
    if !oracle_ok {
        o.ok = false;
        o.detail.push_str(&format!("; oracle disagreement: {what}"));
    }
    o
}

fn zc(w: &[i64]) -> Composition {
    Composition(w.to_vec())
}

fn criterion_1() -> Outcome {
    let sample = WordSample::exhaustive(2, -2, 2).with_random_triples(200, 9, -2, 2, 1);
    let mut reports: Vec<CheckReport> = [ProductKind::QShuffle, ProductKind::QQuasiShuffle]
        .into_iter()
        .map(|k| verify_word_laws(k, &sample))
        .collect();
    reports.push(verify_shuffle_x_laws(4));
    gate(&reports)
}

fn criterion_2() -> Outcome {
    let words = desk_set(2, -3, 3, false);
    let o = gate(&[verify_pathways(&words, 20)]);
    let mut ev = Evaluator::new(20, qmzv::evaluator::Pathway::DirectSum);
    let naive_ok = words.iter().all(|w| common::agrees_int(&ev.zbar(w).unwrap(), &common::zbar(&w.0, 20)));
    with_oracle(o, naive_ok, "direct sum versus brute force")
}

fn criterion_3() -> Outcome {
    let words = desk_set(2, -3, 3, true);
    gate(&homomorphism_sweep(&words, &EvalConfig::with_order(20)).unwrap())
}

fn lin(terms: &[(&[i64], i64)]) -> QLin {
    LinComb::from_terms(terms.iter().map(|(w, c)| (zc(w), rat(*c, 1))))
}

fn criterion_4() -> Outcome {
    let cfg = EvalConfig::with_order(25);
    let mut reports = named_identities(&cfg).unwrap();
    reports.extend(verify_derivation_examples(&cfg).unwrap());
    let o = gate(&reports);

    let n = 25;
    let eq = |l: &[BigRational], r: &[BigRational]| l == r;
    let mut ok = eq(&common::lin(&lin(&[(&[3], 1), (&[2], -1)]), n), &common::lin(&lin(&[(&[2, 1], 1)]), n));
    ok &= eq(&common::lin(&lin(&[(&[2], 1)]), n), &common::lin(&lin(&[(&[1, 0], 1), (&[1], 1)]), n));
    let d2 = common::delta(&common::lin(&lin(&[(&[2], 1)]), n));
    ok &= eq(&d2, &common::lin(&lin(&[(&[3, 1], 4), (&[2, 1], -2), (&[2], -1), (&[3], 3), (&[4], -1)]), n));
    for (_, l, r) in derivation_examples() {
        let side = |d: &qmzv::identities::DeltaComb| common::add(&common::lin(&d.plain, n), &common::delta(&common::lin(&d.delta, n)));
        ok &= eq(&side(&l), &side(&r));
    }
    for a in 2..=5i64 {
        for b in a..=5 {
            let prod: Vec<BigRational> = {
                let (x, y) = (common::lin(&lin(&[(&[a], 1)]), n), common::lin(&lin(&[(&[b], 1)]), n));
                (0..=n).map(|d| (0..=d).map(|i| &x[i] * &y[d - i]).sum()).collect()
            };
            let rhs = lin(&[(&[a, b], 1), (&[b, a], 1), (&[a + b], 1), (&[a, b - 1], -1), (&[b, a - 1], -1), (&[a + b - 1], -1)]);
            ok &= eq(&prod, &common::lin(&rhs, n));
        }
    }
    with_oracle(o, ok, "named identities under brute force")
}

fn criterion_5() -> Outcome {
    let mut reports = Vec::new();
    let cfg = EvalConfig::with_order(25);
    for a in 2..=4 {
        for b in a..=4 {
            reports.extend(verify_operator_laws(a, b, 12, 20, 11));
            for case in EulerCase::ALL {
                reports.extend(verify_euler(a, b, case, &cfg));
            }
        }
    }
    gate(&reports)
}

fn criterion_6() -> Outcome {
    gate(&derivation_family(&EvalConfig::with_order(25), 3, -2, 3))
}

fn criterion_7() -> Outcome {
    let cfg = EvalConfig::with_order(25);
    let mut reports: Vec<CheckReport> =
        [&[2][..], &[3], &[2, 1], &[3, 1]].iter().map(|v| verify_regularization(&zc(v), &cfg)).collect();
    reports.push(verify_regularization_classical(&YWord(vec![2]), 1e-6));
    gate(&reports)
}

fn criterion_8() -> Outcome {
    let cfg = EvalConfig { term_cap: 80, ..EvalConfig::default() };
    let mut reports = Vec::new();
    for q0 in [rat(2, 1), rat(3, 1)] {
        for w in [&[2][..], &[3], &[2, 1]] {
            reports.push(verify_schlesinger(&zc(w), &q0, &cfg));
        }
    }
    gate(&reports)
}

fn criterion_9() -> Outcome {
    let grid = [0.9, 0.99, 0.999];
    let reports = vec![
        verify_limit(&zc(&[2]), &grid, ZETA2, 0.05),
        verify_limit_of("(1-q)(z(1,0) + z(1))", &lin(&[(&[1, 0], 1), (&[1], 1)]), 1, &grid, ZETA2, 0.05),
    ];
    let o = gate(&reports);
    let target = std::f64::consts::PI.powi(2) / 6.0;
    let decreasing = |f: &dyn Fn(f64) -> f64| {
        let errs: Vec<f64> = grid.iter().map(|&q| (f(q) - target).abs()).collect();
        errs.windows(2).all(|p| p[1] < p[0]) && errs[2] < 0.05
    };
    let ok = decreasing(&|q| (1.0 - q).powi(2) * common::zbar_f64(&[2], q))
        && decreasing(&|q| (1.0 - q).powi(2) * (common::zbar_f64(&[1, 0], q) + common::zbar_f64(&[1], q)));
    with_oracle(o, ok, "floating-point brute force")
}

fn criterion_10() -> Outcome {
    let words = desk_set(2, -3, 3, false);
    let o = gate(&[verify_convergence_bound(&words, &[rat(1, 4), rat(1, 2), rat(3, 4)])]);
    let ok = words.iter().all(|w| {
        [0.25f64, 0.5, 0.75].iter().all(|&q0| {
            let k = w.0.len() as i32;
            let wplus: i64 = w.0.iter().map(|&n| n.max(0)).sum();
            let bound = q0.powi(k) * (1.0 - q0).powi(-(wplus as i32) - k);
            common::zbar_f64(&w.0, q0).abs() <= bound * (1.0 + 1e-9)
        })
    });
    with_oracle(o, ok, "floating-point brute force")
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("word laws", criterion_1),
        ("dual-pathway oracle", criterion_2),
        ("homomorphism suites", criterion_3),
        ("named identities", criterion_4),
        ("operator calculus", criterion_5),
        ("derivation family", criterion_6),
        ("q-Hoffman regularization", criterion_7),
        ("Schlesinger diagram", criterion_8),
        ("Abel limit", criterion_9),
        ("convergence bound", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name} ({}; {:.1}s)", i + 1, o.detail, t.elapsed().as_secs_f64());
        if !o.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
