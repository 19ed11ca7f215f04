use serde_json::json;

use crate::coeffs::rat;
use crate::error::{Error, Result};
use num_bigint::BigInt;

use crate::evaluator::{zbar_direct, zbar_jackson, EvalConfig, Evaluator, Pathway};
use crate::products::{ProductKind, QLin};
use crate::words::{desk_set, Composition, LinComb, YWord};
use crate::Rational;

use super::derivation::verify_derivation_examples;
use super::laws::HomContext;
use super::{
    verify_convergence_bound, verify_derivation, verify_euler, verify_limit, verify_limit_of, verify_operator_laws,
    verify_regularization, verify_regularization_classical, verify_schlesinger, verify_shuffle_x_laws,
    verify_word_laws, zc, CheckReport, DeltaComb, DerivationKind, EulerCase, WordSample,
};

/// Knobs shared by the suites.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub order: usize,
    pub max_depth: usize,
    pub lo: i64,
    pub hi: i64,
    pub seed: u64,
    pub term_cap: usize,
    pub tolerance: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            order: 20,
            max_depth: 2,
            lo: -2,
            hi: 2,
            seed: 0,
            term_cap: 80,
            tolerance: 1e-6,
        }
    }
}

impl SuiteConfig {
    fn eval(&self) -> EvalConfig {
        EvalConfig {
            term_cap: self.term_cap,
            ..EvalConfig::with_order(self.order)
        }
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &[
        "word-laws",
        "pathways",
        "homomorphism",
        "operator-laws",
        "euler",
        "derivation",
        "regularization",
        "schlesinger",
        "limits",
        "all",
    ]
}

/// Runs one named suite, or every suite for `all`, in a fixed order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    Ok(match name {
        "word-laws" => word_laws(cfg),
        "pathways" => vec![verify_pathways(&desk_set(cfg.max_depth, cfg.lo, cfg.hi, false), cfg.order)],
        "homomorphism" => homomorphism(cfg)?,
        "operator-laws" => operator_laws(cfg),
        "euler" => euler(cfg)?,
        "derivation" => derivation(cfg)?,
        "regularization" => regularization(cfg),
        "schlesinger" => schlesinger(cfg),
        "limits" => limits(cfg),
        "all" => {
            let mut out = Vec::new();
            for s in suite_names().iter().filter(|s| **s != "all") {
                out.extend(run_suite(s, cfg)?);
            }
            out
        }
        other => {
            return Err(Error::Unsupported(format!(
                "unknown suite {other:?}; expected one of {}",
                suite_names().join(", ")
            )))
        }
    })
}

fn word_laws(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let sample = WordSample::exhaustive(cfg.max_depth, cfg.lo, cfg.hi).with_random_triples(
        200,
        9,
        cfg.lo,
        cfg.hi,
        cfg.seed,
    );
    let mut out: Vec<CheckReport> = [
        ProductKind::QShuffle,
        ProductKind::QQuasiShuffle,
        ProductKind::QuasiShuffle,
        ProductKind::QShuffleGraded,
        ProductKind::QQuasiShuffleGraded,
    ]
    .into_iter()
    .map(|k| verify_word_laws(k, &sample))
    .collect();
    out.push(verify_shuffle_x_laws(4));
    out
}

/// Direct sums and the Jackson pipeline give the same series for every word.
pub fn verify_pathways(words: &[Composition], order: usize) -> CheckReport {
    let parts: Vec<CheckReport> = words
        .iter()
        .map(|w| {
            let d = zbar_direct::<BigInt>(w, order).map(|c| Rational::from_integer(c.clone()));
            let j = zbar_jackson::<BigInt>(w, order).map(|c| Rational::from_integer(c.clone()));
            CheckReport::series(w.format_ytilde(), json!({"word": w.exps()}), &d, &j)
        })
        .collect();
    CheckReport::combine("pathways", json!({"words": words.len(), "order": order}), &parts)
}

/// Every unordered pair from the desk set, all four q-products and the
/// cross relation, one aggregate report per product.
pub fn homomorphism_sweep(words: &[Composition], ecfg: &EvalConfig) -> Result<Vec<CheckReport>> {
    let mut ctx = HomContext::new(ecfg);
    let kinds = [
        ProductKind::QShuffle,
        ProductKind::QQuasiShuffle,
        ProductKind::QShuffleGraded,
        ProductKind::QQuasiShuffleGraded,
    ];
    let mut parts: Vec<Vec<CheckReport>> = vec![Vec::new(); kinds.len() + 1];
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            for (k, kind) in kinds.iter().enumerate() {
                parts[k].push(ctx.product_check(*kind, u, v)?);
            }
            parts[kinds.len()].push(ctx.cross_check(u, v)?);
        }
    }
    let mut out = Vec::new();
    for (k, kind) in kinds.iter().enumerate() {
        let params = json!({"product": kind.name(), "words": words.len(), "order": ecfg.order});
        out.push(CheckReport::combine(format!("homomorphism/{}", kind.name()), params, &parts[k]));
    }
    let params = json!({"words": words.len(), "order": ecfg.order});
    out.push(CheckReport::combine("cross-relation", params, &parts[kinds.len()]));
    Ok(out)
}

fn homomorphism(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let words = desk_set(cfg.max_depth, cfg.lo, cfg.hi, true);
    homomorphism_sweep(&words, &cfg.eval())
}

fn operator_laws(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = verify_operator_laws(1, 1, 12, 20, cfg.seed);
    for a in 2..=4 {
        for b in a..=4 {
            out.extend(verify_operator_laws(a, b, 12, 20, cfg.seed));
        }
    }
    out
}

fn lin(terms: &[(&[i64], i64)]) -> QLin {
    LinComb::from_terms(terms.iter().map(|(w, c)| (zc(w), rat(*c, 1))))
}

/// The displayed product and derivation identities between specific values.
pub fn named_identities(ecfg: &EvalConfig) -> Result<Vec<CheckReport>> {
    let mut ev = Evaluator::from_config(ecfg);
    let mut out = Vec::new();
    let params = json!({"order": ecfg.order});
    let rel = |name: &str, l: QLin, r: QLin, ev: &mut Evaluator| -> Result<CheckReport> {
        let (a, b) = (ev.eval_lincomb(&l, crate::evaluator::Model::Modified)?, ev.eval_lincomb(&r, crate::evaluator::Model::Modified)?);
        Ok(CheckReport::series(name, params.clone(), &a, &b))
    };
    out.push(rel("zbar(3) - zbar(2) = zbar(2,1)", lin(&[(&[3], 1), (&[2], -1)]), lin(&[(&[2, 1], 1)]), &mut ev)?);
    out.push(rel("zbar(2) = zbar(1,0) + zbar(1)", lin(&[(&[2], 1)]), lin(&[(&[1, 0], 1), (&[1], 1)]), &mut ev)?);
    out.push(rel(
        "4zbar(3,1) - 2zbar(2,1) - 2zbar(3,0) + zbar(2,0) = zbar(4) - zbar(3)",
        lin(&[(&[3, 1], 4), (&[2, 1], -2), (&[3, 0], -2), (&[2, 0], 1)]),
        lin(&[(&[4], 1), (&[3], -1)]),
        &mut ev,
    )?);

    let mut d2 = DeltaComb::default();
    d2.add_delta(zc(&[2]), rat(1, 1));
    let rhs = DeltaComb::plain(lin(&[(&[3, 1], 4), (&[2, 1], -2), (&[2], -1), (&[3], 3), (&[4], -1)]));
    let (a, b) = (d2.eval(&mut ev)?, rhs.eval(&mut ev)?);
    out.push(CheckReport::series("delta zbar(2) = 4zbar(3,1) - 2zbar(2,1) - zbar(2) + 3zbar(3) - zbar(4)", params.clone(), &a, &b));

    let mut shuffle_parts = Vec::new();
    for a in 2..=5i64 {
        for b in a..=5 {
            let l = &ev.zbar(&zc(&[a]))? * &ev.zbar(&zc(&[b]))?;
            let r = lin(&[
                (&[a, b], 1),
                (&[b, a], 1),
                (&[a + b], 1),
                (&[a, b - 1], -1),
                (&[b, a - 1], -1),
                (&[a + b - 1], -1),
            ]);
            let rv = ev.eval_lincomb(&r, crate::evaluator::Model::Modified)?;
            shuffle_parts.push(CheckReport::series(format!("zbar({a})zbar({b})"), json!({"a": a, "b": b}), &l, &rv));
        }
    }
    out.push(CheckReport::combine("modified q-stuffle of two values, 2 <= a <= b <= 5", params.clone(), &shuffle_parts));
    Ok(out)
}

fn euler(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let ecfg = cfg.eval();
    let mut out = named_identities(&ecfg)?;
    for a in 2..=4 {
        for b in a..=4 {
            for case in EulerCase::ALL {
                out.extend(verify_euler(a, b, case, &ecfg));
            }
        }
    }
    Ok(out)
}

/// The depth-limited sweep of the general derivation formula plus the
/// listed single, telescoped, kappa and double-shuffle instances.
pub fn derivation_family(ecfg: &EvalConfig, max_depth: usize, lo: i64, hi: i64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let general: Vec<CheckReport> = desk_set(max_depth, lo, hi, false)
        .iter()
        .map(|w| verify_derivation(w, ecfg, DerivationKind::General))
        .collect();
    let params = json!({"max_depth": max_depth, "range": [lo, hi], "order": ecfg.order});
    out.push(CheckReport::combine("derivation/general sweep", params, &general));
    for a in lo.min(-3)..=hi.max(3) {
        out.push(verify_derivation(&zc(&[a]), ecfg, DerivationKind::Single));
    }
    for a in 0..=5 {
        out.push(verify_derivation(&zc(&[a]), ecfg, DerivationKind::Telescoped));
    }
    for k in [&[1][..], &[1, 1], &[2, -1]] {
        out.push(verify_derivation(&zc(k), ecfg, DerivationKind::Kappa));
    }
    for b in 3..=5 {
        out.push(verify_derivation(&zc(&[b]), ecfg, DerivationKind::ShuffleDelta));
    }
    out
}

fn derivation(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let ecfg = cfg.eval();
    let mut out = verify_derivation_examples(&ecfg)?;
    out.extend(derivation_family(&ecfg, cfg.max_depth.min(3), cfg.lo, cfg.hi));
    Ok(out)
}

fn regularization(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ecfg = cfg.eval();
    let mut out: Vec<CheckReport> = [&[2][..], &[3], &[2, 1], &[3, 1]]
        .iter()
        .map(|v| verify_regularization(&zc(v), &ecfg))
        .collect();
    out.push(verify_regularization_classical(&YWord(vec![2]), cfg.tolerance.max(1e-6)));
    out
}

fn schlesinger(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ecfg = EvalConfig {
        term_cap: cfg.term_cap,
        pathway: Pathway::DirectSum,
        ..EvalConfig::default()
    };
    let mut out = Vec::new();
    for q0 in [rat(2, 1), rat(3, 1)] {
        for w in [&[2][..], &[3], &[2, 1]] {
            out.push(verify_schlesinger(&zc(w), &q0, &ecfg));
        }
    }
    out
}

pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_2;

fn limits(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let grid = [0.9, 0.99, 0.999];
    let tol = 0.05;
    let mut out = vec![
        verify_limit(&zc(&[2]), &grid, ZETA2, tol),
        verify_limit(&zc(&[3]), &grid, ZETA3, tol),
        verify_limit(&zc(&[2, 1]), &grid, ZETA3, 2.0 * tol),
        verify_limit_of("(1-q)(z(1,0) + z(1))", &lin(&[(&[1, 0], 1), (&[1], 1)]), 1, &grid, ZETA2, tol),
    ];
    let words = desk_set(cfg.max_depth, cfg.lo.min(-3), cfg.hi.max(3), true);
    out.push(verify_convergence_bound(&words, &[rat(1, 4), rat(1, 2), rat(3, 4)]));
    out
}
