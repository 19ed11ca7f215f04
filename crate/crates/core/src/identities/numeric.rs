use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::coeffs::format_rational;
use crate::error::{Error, Result};
use crate::evaluator::{
    auto_cap, convergence_bound, is_convergent_classical, numeric_eval_in, one_minus_h_qnum, zeta_numeric, zeta_tail,
    EvalConfig, Evaluator, Model,
};
use crate::products::{q_quasi_shuffle, q_quasi_shuffle_graded, quasi_shuffle, shuffle, QLin, QShuffleEngine};
use crate::scalar::pow;
use crate::words::{r_map, s_map, Composition, LinComb, XWord, YWord};
use crate::Rational;

use super::{zc, CheckReport, Witness};

/// The q-analogue of Hoffman's relation for a convergent `v`, for the
/// modified values with the ungraded products and for the non-modified
/// values with the graded products at `h = 1 - q`.
pub fn verify_regularization(v: &Composition, cfg: &EvalConfig) -> CheckReport {
    let params = json!({"v": v.format_ytilde(), "order": cfg.order});
    let res = regularization(v, cfg, &params);
    CheckReport::from_result("regularization", params, res)
}

fn regularization(v: &Composition, cfg: &EvalConfig, params: &serde_json::Value) -> Result<CheckReport> {
    if !is_convergent_classical(v.exps()) {
        return Err(Error::precondition(format!(
            "{} is not convergent: need n1 >= 2 and nj >= 1",
            v.format_ytilde()
        )));
    }
    let z1 = zc(&[1]);
    let mut ev = Evaluator::from_config(cfg);

    let rv = r_map(v);
    let sh = QShuffleEngine::ungraded().product(&z1, &rv);
    let rel: QLin = sh - q_quasi_shuffle(&z1, v).map_words(r_map);
    let lhs = ev.eval_lincomb(&rel, Model::Modified)?;
    let zero = crate::QSeries::zero(cfg.order);
    let modified = CheckReport::series("regularization/modified", params.clone(), &lhs, &zero)
        .note(format!("relation: {}", rel.display_with(Composition::format_ytilde)));

    let sh_g = QShuffleEngine::graded().product(&z1, &rv);
    let rel_g = sh_g - q_quasi_shuffle_graded(&z1, v).map_words(r_map);
    let lhs_g = ev.eval_lincomb(&rel_g, Model::NonModified)?;
    let graded = CheckReport::series("regularization/non-modified", params.clone(), &lhs_g, &zero);

    let mut r = CheckReport::combine("regularization", params.clone(), &[modified.clone(), graded]);
    r.notes.extend(modified.notes.into_iter().filter(|n| n.starts_with("relation")));
    Ok(r)
}

/// `x0^{n-1} x1` blocks back to `y_n`; `None` unless the word ends in `x1`.
fn x_to_y(w: &XWord) -> Option<YWord> {
    let mut out = Vec::new();
    let mut n = 1;
    for &b in &w.0 {
        if b == 0 {
            n += 1;
        } else {
            out.push(n);
            n = 1;
        }
    }
    (n == 1).then_some(YWord(out))
}

/// The classical relation `zeta(x1 ⧢ s(v) - s(y1 * v)) = 0`, checked
/// numerically with rigorous tails at most `tol`.
pub fn verify_regularization_classical(v: &YWord, tol: f64) -> CheckReport {
    let params = json!({"v": v.to_string(), "tol": tol});
    let res = regularization_classical(v, tol, &params);
    CheckReport::from_result("regularization/classical", params, res)
}

fn regularization_classical(v: &YWord, tol: f64, params: &serde_json::Value) -> Result<CheckReport> {
    if !is_convergent_classical(&v.0) {
        return Err(Error::precondition(format!("{v} is not convergent")));
    }
    let x1 = XWord(vec![1]);
    let mut rel: LinComb<XWord, Rational> = shuffle(&x1, &s_map(v));
    for (w, c) in quasi_shuffle::<Rational>(&zc(&[1]), &v.as_composition()).iter() {
        rel.add_term(s_map(&YWord(w.0.clone())), -c.clone());
    }
    let mut terms = Vec::new();
    for (w, c) in rel.iter() {
        match x_to_y(w) {
            Some(y) if is_convergent_classical(&y.0) => terms.push((y, c.to_f64().unwrap_or(f64::NAN))),
            _ => {
                return Ok(CheckReport::failed(
                    "regularization/classical",
                    params.clone(),
                    format!("divergent word {w} survives in the relation"),
                ))
            }
        }
    }
    let tail_of = |cap: usize| -> f64 {
        terms
            .iter()
            .map(|(y, c)| c.abs() * zeta_tail(y.0[0], y.len(), cap))
            .sum()
    };
    let mut cap = 1024usize;
    while tail_of(cap) > tol && cap < (1 << 27) {
        cap *= 2;
    }
    let mut total = 0.0;
    let mut tails = 0.0;
    for (y, c) in &terms {
        let nv = zeta_numeric(y, cap)?;
        total += c * nv.value;
        tails += c.abs() * nv.tail_bound;
    }
    // summation round-off of `cap` positive terms in double precision
    let slack = terms.len() as f64 * cap as f64 * f64::EPSILON;
    let mut r = CheckReport::new("regularization/classical", params.clone());
    r.residual = super::Residual::Numeric(total);
    r.notes.push(format!(
        "relation: {}",
        rel.display_with(|w| x_to_y(w).map(|y| format!("zeta{}", y.to_string().trim_start_matches('y'))).unwrap_or_default())
    ));
    r.notes.push(format!("cap {cap}, |residual| {:.3e}, tail bound {:.3e}", total.abs(), tails));
    if total.abs() > tails + slack || tails > tol {
        r.pass = false;
        r.witness = Some(Witness {
            degree: cap as i64,
            lhs: format!("{total:e}"),
            rhs: format!("0 +- {:e}", tails + slack),
        });
    }
    Ok(r)
}

/// The commuting diagram for Schlesinger values at a rational `|q0| > 1`:
/// `zS(T_q w) = z_q(w)` with `h = 1 - q0`, both legs truncated at
/// `cfg.term_cap` and evaluated exactly.
pub fn verify_schlesinger(w: &Composition, q0: &Rational, cfg: &EvalConfig) -> CheckReport {
    let params = json!({"w": w.format_ytilde(), "q0": format_rational(q0), "term_cap": cfg.term_cap});
    let res = schlesinger(w, q0, cfg, &params);
    CheckReport::from_result("schlesinger", params, res)
}

fn schlesinger(w: &Composition, q0: &Rational, cfg: &EvalConfig, params: &serde_json::Value) -> Result<CheckReport> {
    if !is_convergent_classical(w.exps()) {
        return Err(Error::Domain(format!("{} needs n1 >= 2 and nj >= 1", w.format_ytilde())));
    }
    if q0.abs() <= Rational::one() {
        return Err(Error::Domain(format!("need |q0| > 1, got {}", format_rational(q0))));
    }
    let cap = cfg.term_cap;
    for m in 0..=cap {
        if one_minus_h_qnum(q0, m) != pow(q0, m as u64) {
            return Ok(CheckReport::failed(
                "schlesinger",
                params.clone(),
                format!("1 - (1 - q0)[{m}] differs from q0^{m}"),
            ));
        }
    }
    let h = Rational::one() - q0;
    let n1 = w.exps()[0];
    let lowered = Composition([&[n1 - 1], &w.exps()[1..]].concat());
    let s_full = numeric_eval_in(w, Model::Schlesinger, q0, cap)?;
    let s_low = numeric_eval_in(&lowered, Model::Schlesinger, q0, cap)?;
    let top = &s_full.value - &h * &s_low.value;
    let bottom = numeric_eval_in(w, Model::NonModified, q0, cap)?;

    let diff = (&top - &bottom.value).abs();
    let h_abs = h.abs().to_f64().unwrap_or(f64::INFINITY);
    let tails = s_full.tail_bound + h_abs * s_low.tail_bound + bottom.tail_bound;
    let scale = bottom.value.abs().to_f64().unwrap_or(0.0);
    let rel_tail = tails / scale;
    let diff_f = diff.to_f64().unwrap_or(f64::INFINITY);

    let mut r = CheckReport::new("schlesinger", params.clone());
    r.notes.push(format!("checked 1 - (1 - q0)[m] = q0^m for m <= {cap}"));
    r.notes.push(format!(
        "legs differ by {} exactly; combined tail {:.3e}, relative {:.3e}",
        if diff.is_zero() { "0".to_string() } else { format!("{diff_f:.3e}") },
        tails,
        rel_tail
    ));
    if diff_f > tails || rel_tail > 2f64.powi(-60) {
        r.pass = false;
        r.witness = Some(Witness {
            degree: cap as i64,
            lhs: format!("{:.17e}", top.to_f64().unwrap_or(f64::NAN)),
            rhs: format!("{:.17e}", bottom.value.to_f64().unwrap_or(f64::NAN)),
        });
    }
    r.residual = super::Residual::Numeric(diff_f);
    Ok(r)
}

/// Numeric `(1 - q)^{shift} sum c_w z_q(w)` at `q0 < 1` with tail bound.
fn limit_value(comb: &QLin, shift: i64, q0: f64, tail_target: f64) -> Result<(f64, f64)> {
    let mut value = 0.0;
    let mut tail = 0.0;
    let scale = (1.0 - q0).powi(shift as i32);
    for (w, c) in comb.iter() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let cap = auto_cap(w, Model::NonModified, q0, tail_target / (c.abs() * scale).max(1e-300), 256, 1 << 26)?;
        let nv = numeric_eval_in(w, Model::NonModified, &q0, cap)?;
        value += c * nv.value;
        tail += c.abs() * nv.tail_bound;
    }
    Ok((value * scale, tail * scale))
}

/// `(1 - q)^{shift} sum c_w z_q(w)` approaches `target` along `grid`: the
/// distance shrinks strictly from point to point (after accounting for
/// the tails) and ends within `tol`.
pub fn verify_limit_of(
    label: &str,
    comb: &QLin,
    shift: i64,
    grid: &[f64],
    target: f64,
    tol: f64,
) -> CheckReport {
    let params = json!({"value": label, "grid": grid, "target": target, "tol": tol});
    let res = (|| -> Result<CheckReport> {
        if grid.is_empty() || grid.iter().any(|&q| !(0.0 < q && q < 1.0)) {
            return Err(Error::precondition("grid points must lie in (0, 1)"));
        }
        let mut r = CheckReport::new("limit", params.clone());
        let mut prev: Option<(f64, f64)> = None;
        for &q in grid {
            let (v, t) = limit_value(comb, shift, q, tol * 1e-3)?;
            let err = (v - target).abs();
            r.notes.push(format!("q = {q}: value {v:.9}, error {err:.3e}, tail {t:.1e}"));
            if let Some((pe, pt)) = prev {
                if !(err + t < pe - pt) {
                    r.pass = false;
                    r.notes.push(format!("error does not decrease at q = {q}"));
                }
            }
            prev = Some((err, t));
        }
        let (last_err, last_tail) = prev.expect("non-empty grid");
        if last_err + last_tail >= tol {
            r.pass = false;
            r.witness = Some(Witness {
                degree: 0,
                lhs: format!("{:.9}", target + last_err),
                rhs: format!("{target:.9} +- {tol}"),
            });
        }
        Ok(r)
    })();
    CheckReport::from_result("limit", params, res)
}

/// `(1 - q)^w zbar_q(w) = z_q(w)` approaches `target` as `q -> 1`.
pub fn verify_limit(w: &Composition, grid: &[f64], target: f64, tol: f64) -> CheckReport {
    if !is_convergent_classical(w.exps()) {
        let params = json!({"w": w.format_ytilde()});
        return CheckReport::failed("limit", params, "the classical value diverges");
    }
    verify_limit_of(&w.format_ytilde(), &LinComb::word(w.clone()), 0, grid, target, tol)
}

/// `|zbar_{q0}(w)| <= |q0|^k (1 - |q0|)^{-w+ - k}` for every word and
/// every `q0`.
pub fn verify_convergence_bound(words: &[Composition], q0s: &[Rational]) -> CheckReport {
    let params = json!({"words": words.len(), "q0": q0s.iter().map(format_rational).collect::<Vec<_>>()});
    let res = (|| -> Result<CheckReport> {
        let mut r = CheckReport::new("convergence-bound", params.clone());
        let mut worst: f64 = 0.0;
        for q0 in q0s {
            let q = q0.to_f64().unwrap_or(f64::NAN);
            for w in words {
                let bound = convergence_bound(w, q);
                let cap = auto_cap(w, Model::Modified, q, bound * 1e-12, 64, 1 << 20)?;
                let nv = numeric_eval_in(w, Model::Modified, &q, cap)?;
                let ratio = nv.value.abs() / bound;
                worst = worst.max(ratio);
                if nv.value.abs() > bound * (1.0 + 1e-9) {
                    r.pass = false;
                    r.witness = Some(Witness {
                        degree: w.depth() as i64,
                        lhs: format!("{:.12e}", nv.value.abs()),
                        rhs: format!("{bound:.12e}"),
                    });
                    r.notes.push(format!("bound exceeded for {} at q0 = {}", w.format_ytilde(), format_rational(q0)));
                    return Ok(r);
                }
            }
        }
        r.notes.push(format!("largest |value|/bound: {worst:.6}"));
        Ok(r)
    })();
    CheckReport::from_result("convergence-bound", params, res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    #[test]
    fn x_to_y_blocks() {
        assert_eq!(x_to_y(&XWord(vec![0, 1, 1])), Some(YWord(vec![2, 1])));
        assert_eq!(x_to_y(&XWord(vec![0, 1, 0])), None);
    }

    #[test]
    fn q_relation_for_z2() {
        let r = verify_regularization(&zc(&[2]), &EvalConfig::with_order(15));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn schlesinger_small() {
        let cfg = EvalConfig {
            term_cap: 80,
            ..EvalConfig::default()
        };
        let r = verify_schlesinger(&zc(&[2]), &rat(2, 1), &cfg);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn bound_holds_small_set() {
        let words = crate::words::desk_set(1, -2, 2, true);
        assert!(verify_convergence_bound(&words, &[rat(1, 2)]).pass);
    }
}
