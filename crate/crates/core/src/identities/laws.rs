use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::evaluator::{EvalConfig, Evaluator, Model};
use crate::products::{shuffle, HLin, Multiplier, ProductKind};
use crate::words::{desk_set, Composition, LinComb, XWord};
use crate::{QSeries, Result};

use super::CheckReport;

/// Words for the commutativity sweep and triples for associativity.
#[derive(Clone, Debug, Default)]
pub struct WordSample {
    pub words: Vec<Composition>,
    pub triples: Vec<[Composition; 3]>,
}

impl WordSample {
    /// Every word of depth at most `max_depth` with entries in `lo..=hi`,
    /// the empty word included.
    pub fn exhaustive(max_depth: usize, lo: i64, hi: i64) -> Self {
        WordSample {
            words: desk_set(max_depth, lo, hi, true),
            triples: Vec::new(),
        }
    }

    /// Adds `n` random triples whose combined letter count is at most
    /// `max_len`.
    pub fn with_random_triples(mut self, n: usize, max_len: usize, lo: i64, hi: i64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while self.triples.len() < n {
            let t = [0, 1, 2].map(|_| random_word(&mut rng, 2, lo, hi));
            if t.iter().map(Composition::length).sum::<usize>() <= max_len {
                self.triples.push(t);
            }
        }
        self
    }
}

fn random_word(rng: &mut impl Rng, max_depth: usize, lo: i64, hi: i64) -> Composition {
    let depth = rng.gen_range(0..=max_depth);
    Composition((0..depth).map(|_| rng.gen_range(lo..=hi)).collect())
}

fn h_report(name: &str, params: serde_json::Value, lhs: &HLin, rhs: &HLin) -> CheckReport {
    let mut r = CheckReport::new(name, params);
    let diff = lhs.clone() - rhs.clone();
    if let Some((w, _)) = diff.iter().next() {
        r.pass = false;
        r.witness = Some(super::Witness {
            degree: w.length() as i64,
            lhs: format!("({})*{}", lhs.coeff(w), w.format_w_compact()),
            rhs: format!("({})*{}", rhs.coeff(w), w.format_w_compact()),
        });
    }
    r
}

/// Commutativity on all pairs of `sample.words` and associativity on
/// `sample.triples`.
pub fn verify_word_laws(kind: ProductKind, sample: &WordSample) -> CheckReport {
    let params = json!({
        "product": kind.name(),
        "words": sample.words.len(),
        "triples": sample.triples.len(),
    });
    let mut m = match Multiplier::new(kind) {
        Ok(m) => m,
        Err(_) => return verify_shuffle_x_laws(4).note("x-shuffle runs on x-words of length <= 4"),
    };
    let words = &sample.words;
    let mut checked = 0usize;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            let (uv, vu) = (m.mul(u, v), m.mul(v, u));
            checked += 1;
            if uv != vu {
                let p = json!({"product": kind.name(), "u": u.format_w(), "v": v.format_w()});
                return h_report("commutativity", p, &uv, &vu).note(format!("after {checked} pairs"));
            }
        }
    }
    for [a, b, c] in &sample.triples {
        let ab = m.mul(a, b);
        let left = m.mul_lin(&ab, &LinComb::word(c.clone()));
        let bc = m.mul(b, c);
        let right = m.mul_lin(&LinComb::word(a.clone()), &bc);
        if left != right {
            let p = json!({"product": kind.name(), "u": a.format_w(), "v": b.format_w(), "w": c.format_w()});
            return h_report("associativity", p, &left, &right);
        }
    }
    CheckReport::new(format!("word-laws/{}", kind.name()), params).note(format!(
        "{checked} commuting pairs, {} associative triples",
        sample.triples.len()
    ))
}

fn x_words(max_len: usize) -> Vec<XWord> {
    let mut out = vec![XWord::default()];
    let mut layer = vec![XWord::default()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                [0u8, 1].map(|b| {
                    let mut v = w.0.clone();
                    v.push(b);
                    XWord(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Commutativity and associativity of the classical shuffle on all x-words
/// of length at most `max_len`.
pub fn verify_shuffle_x_laws(max_len: usize) -> CheckReport {
    let ws = x_words(max_len);
    let params = json!({"product": "shuffle", "max_len": max_len});
    for (i, u) in ws.iter().enumerate() {
        for v in &ws[i..] {
            if shuffle(u, v) != shuffle(v, u) {
                return CheckReport::failed("word-laws/shuffle", params, format!("{u} and {v} do not commute"));
            }
        }
    }
    let short: Vec<&XWord> = ws.iter().filter(|w| w.len() <= max_len.min(2)).collect();
    for a in &short {
        for b in &short {
            for c in &short {
                let ab = shuffle(a, b);
                let mut left = LinComb::zero();
                for (w, k) in ab.iter() {
                    left.add_scaled(&shuffle(w, c), k);
                }
                let bc = shuffle(b, c);
                let mut right = LinComb::zero();
                for (w, k) in bc.iter() {
                    right.add_scaled(&shuffle(a, w), k);
                }
                if left != right {
                    return CheckReport::failed("word-laws/shuffle", params, format!("({a},{b},{c}) not associative"));
                }
            }
        }
    }
    CheckReport::new("word-laws/shuffle", params)
}

/// Shared state for many homomorphism checks.
pub(crate) struct HomContext {
    ev: Evaluator,
    qsh: Multiplier,
    qst: Multiplier,
    qsh_g: Multiplier,
    qst_g: Multiplier,
}

impl HomContext {
    pub(crate) fn new(cfg: &EvalConfig) -> Self {
        let m = |k| Multiplier::new(k).expect("composition product");
        HomContext {
            ev: Evaluator::from_config(cfg),
            qsh: m(ProductKind::QShuffle),
            qst: m(ProductKind::QQuasiShuffle),
            qsh_g: m(ProductKind::QShuffleGraded),
            qst_g: m(ProductKind::QQuasiShuffleGraded),
        }
    }

    fn mult(&mut self, kind: ProductKind) -> Option<&mut Multiplier> {
        match kind {
            ProductKind::QShuffle => Some(&mut self.qsh),
            ProductKind::QQuasiShuffle => Some(&mut self.qst),
            ProductKind::QShuffleGraded => Some(&mut self.qsh_g),
            ProductKind::QQuasiShuffleGraded => Some(&mut self.qst_g),
            _ => None,
        }
    }

    fn value(&mut self, w: &Composition, model: Model) -> Result<QSeries> {
        self.ev.eval(w, model)
    }

    /// `eval(u) eval(v) = eval(u * v)` for one product kind. Graded kinds
    /// use the non-modified values with `h = 1 - q`.
    pub(crate) fn product_check(&mut self, kind: ProductKind, u: &Composition, v: &Composition) -> Result<CheckReport> {
        let model = if kind.is_graded() { Model::NonModified } else { Model::Modified };
        let params = json!({"product": kind.name(), "u": u.format_ytilde(), "v": v.format_ytilde()});
        let lhs = &self.value(u, model)? * &self.value(v, model)?;
        let Some(m) = self.mult(kind) else {
            return Ok(CheckReport::failed("homomorphism", params, "not a composition product"));
        };
        let prod = m.mul(u, v);
        let rhs = self.ev.eval_lincomb(&prod, model)?;
        Ok(CheckReport::series("homomorphism", params, &lhs, &rhs))
    }

    /// `eval(r(u) ⧢ r(v) - r(u ⧢- v)) = 0`.
    pub(crate) fn cross_check(&mut self, u: &Composition, v: &Composition) -> Result<CheckReport> {
        let params = json!({"u": u.format_ytilde(), "v": v.format_ytilde()});
        let sh = self.qsh.mul(u, v);
        let st = self.qst.mul(u, v);
        let lhs = self.ev.eval_lincomb(&sh, Model::Modified)?;
        let rhs = self.ev.eval_lincomb(&st, Model::Modified)?;
        Ok(CheckReport::series("cross-relation", params, &lhs, &rhs))
    }
}

/// Evaluation is multiplicative for `kind`, and the two products of `u`
/// and `v` have equal values.
pub fn verify_homomorphism(kind: ProductKind, u: &Composition, v: &Composition, cfg: &EvalConfig) -> CheckReport {
    let params = json!({"product": kind.name(), "u": u.format_ytilde(), "v": v.format_ytilde(), "order": cfg.order});
    let mut ctx = HomContext::new(cfg);
    let res = (|| -> Result<CheckReport> {
        let parts = [ctx.product_check(kind, u, v)?, ctx.cross_check(u, v)?];
        Ok(CheckReport::combine("homomorphism", params.clone(), &parts))
    })();
    CheckReport::from_result("homomorphism", params, res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sample_laws() {
        let s = WordSample::exhaustive(1, -1, 1).with_random_triples(5, 6, -1, 1, 3);
        for kind in [ProductKind::QShuffle, ProductKind::QQuasiShuffle, ProductKind::QShuffleGraded] {
            let r = verify_word_laws(kind, &s);
            assert!(r.pass, "{r:?}");
        }
        assert!(verify_shuffle_x_laws(3).pass);
    }

    #[test]
    fn homomorphism_examples() {
        let cfg = EvalConfig::with_order(12);
        let z = |v: &[i64]| Composition(v.to_vec());
        for kind in ProductKind::ALL.iter().copied().filter(|k| *k != ProductKind::ShuffleX && *k != ProductKind::QuasiShuffle) {
            assert!(verify_homomorphism(kind, &z(&[1]), &z(&[2]), &cfg).pass, "{kind}");
            assert!(verify_homomorphism(kind, &z(&[]), &z(&[2]), &cfg).pass, "{kind}");
            assert!(verify_homomorphism(kind, &z(&[-1, 2]), &z(&[0, -2]), &cfg).pass, "{kind}");
        }
    }
}
