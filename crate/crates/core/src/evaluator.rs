//! Evaluation of words as q-series and as numbers.
//!
//! Series mode computes the modified values
//!
//! ```text
//! zbar(n1, ..., nk) = sum_{m1 > ... > mk > 0} q^{m1} prod (1 - q^{mi})^{-ni}
//! ```
//!
//! either by direct nested summation or by the Jackson pipeline
//! `Z(w)(t = q)`. Both are integral, so they run over big integers and are
//! converted to rationals at the end. The non-modified value is
//! `(1 - q)^{n1 + ... + nk} zbar`.
//!
//! Numeric mode truncates the outer index at `term_cap` and reports a
//! rigorous upper bound for the discarded tail.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeffs::{format_rational, laurent_substitute, LaurentPoly};
use crate::error::{Error, Result};
use crate::jackson::cal_z_series;
use crate::scalar::{pow, RationalAlgebra, Ring, Scalar};
use crate::series::{pow_one_minus_q, Series};
use crate::words::{Composition, LinComb, YWord};
use crate::{QSeries, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pathway {
    DirectSum,
    Jackson,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Modified,
    NonModified,
    Schlesinger,
}

impl FromStr for Pathway {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" | "direct" | "direct_sum" => Ok(Pathway::DirectSum),
            "jackson" => Ok(Pathway::Jackson),
            "both" => Ok(Pathway::Both),
            _ => Err(Error::Unsupported(format!("unknown pathway {s:?}"))),
        }
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modified" => Ok(Model::Modified),
            "nonmodified" | "non-modified" => Ok(Model::NonModified),
            "schlesinger" => Ok(Model::Schlesinger),
            _ => Err(Error::Unsupported(format!("unknown model {s:?}"))),
        }
    }
}

impl fmt::Display for Pathway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pathway::DirectSum => "sum",
            Pathway::Jackson => "jackson",
            Pathway::Both => "both",
        })
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Modified => "modified",
            Model::NonModified => "nonmodified",
            Model::Schlesinger => "schlesinger",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub order: usize,
    pub pathway: Pathway,
    pub model: Model,
    pub q0: Rational,
    pub term_cap: usize,
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            order: 20,
            pathway: Pathway::DirectSum,
            model: Model::Modified,
            q0: Rational::new(1.into(), 2.into()),
            term_cap: 200,
            tolerance: 1e-9,
        }
    }
}

impl EvalConfig {
    pub fn with_order(order: usize) -> Self {
        EvalConfig {
            order,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.term_cap < 1 {
            return Err(Error::precondition("term_cap must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::precondition("tolerance must be positive"));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Series pathways
// ---------------------------------------------------------------------------

/// Direct nested summation, exact modulo `q^{order+1}`.
///
/// `A_k(m) = f(m, n_k)` and `A_j(m) = f(m, n_j) sum_{m' < m} A_{j+1}(m')`
/// with `f(m, n) = (1 - q^m)^{-n}`; the result is `sum_m q^m A_1(m)`.
pub fn zbar_direct<R: Ring>(w: &Composition, order: usize) -> Series<R> {
    let exps = w.exps();
    let k = exps.len();
    if k == 0 {
        return Series::one(order);
    }
    if k > order {
        return Series::zero(order);
    }
    let base = |m: usize, n: i64, from: &Series<R>| {
        let mut s = from.clone();
        s.mul_factor(m, n);
        s
    };
    // level[m] holds A_j(m) for m in 1..=order, starting with j = k
    let one = Series::<R>::one(order);
    let mut level: Vec<Option<Series<R>>> = vec![None; order + 1];
    for (m, slot) in level.iter_mut().enumerate().skip(1) {
        *slot = Some(base(m, exps[k - 1], &one));
    }
    for j in (0..k - 1).rev() {
        let mut prefix = Series::<R>::zero(order);
        let mut next: Vec<Option<Series<R>>> = vec![None; order + 1];
        for m in 1..=order {
            if m > 1 {
                if let Some(prev) = &level[m - 1] {
                    prefix = &prefix + prev;
                }
            }
            if !prefix.is_zero() {
                next[m] = Some(base(m, exps[j], &prefix));
            }
        }
        level = next;
    }
    let mut out = Series::zero(order);
    for (m, a) in level.iter().enumerate().skip(1) {
        if let Some(a) = a {
            out = &out + &a.shift(m);
        }
    }
    out
}

/// Jackson pathway `Z(w)` evaluated at `t = q`.
pub fn zbar_jackson<R: Ring>(w: &Composition, order: usize) -> Series<R> {
    cal_z_series(w, order)
}

fn to_rational(s: &Series<BigInt>) -> QSeries {
    s.map(|c| Rational::from_integer(c.clone()))
}

fn zbar_integral(w: &Composition, order: usize, pathway: Pathway) -> Result<Series<BigInt>> {
    match pathway {
        Pathway::DirectSum => Ok(zbar_direct(w, order)),
        Pathway::Jackson => Ok(zbar_jackson(w, order)),
        Pathway::Both => {
            let direct = zbar_direct::<BigInt>(w, order);
            let jackson = zbar_jackson::<BigInt>(w, order);
            if let Some(d) = direct.first_difference(&jackson) {
                return Err(Error::PathwayMismatch {
                    word: w.format_ytilde(),
                    degree: d,
                    direct: direct.coeff(d).to_string(),
                    jackson: jackson.coeff(d).to_string(),
                });
            }
            Ok(direct)
        }
    }
}

/// Modified value `zbar_q(w)` as a truncated series.
pub fn zbar_series(w: &Composition, cfg: &EvalConfig) -> Result<QSeries> {
    zbar_integral(w, cfg.order, cfg.pathway).map(|s| to_rational(&s))
}

/// Non-modified value `(1 - q)^{weight} zbar_q(w)`.
pub fn z_series(w: &Composition, cfg: &EvalConfig) -> Result<QSeries> {
    let zb = zbar_series(w, cfg)?;
    Ok(&pow_one_minus_q(w.weight(), cfg.order) * &zb)
}

/// Coefficients that can be turned into a q-series (`h` becomes `1 - q`).
pub trait SeriesCoeff: Ring {
    fn to_series(&self, order: usize) -> Result<QSeries>;
    /// Fast path for rational scalars.
    fn as_rational(&self) -> Option<Rational> {
        None
    }
}

impl SeriesCoeff for Rational {
    fn to_series(&self, order: usize) -> Result<QSeries> {
        Ok(QSeries::constant(self.clone(), order))
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl SeriesCoeff for LaurentPoly {
    fn to_series(&self, order: usize) -> Result<QSeries> {
        laurent_substitute(self, &QSeries::from_ints(&[1, -1], order), order)
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.len() {
            0 => Some(Rational::zero()),
            1 if self.min_exp() == Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }
}

/// Cached series evaluator for repeated use on many words.
pub struct Evaluator {
    order: usize,
    pathway: Pathway,
    cache: HashMap<Composition, QSeries>,
}

impl Evaluator {
    pub fn new(order: usize, pathway: Pathway) -> Self {
        Evaluator {
            order,
            pathway,
            cache: HashMap::new(),
        }
    }

    pub fn from_config(cfg: &EvalConfig) -> Self {
        Self::new(cfg.order, cfg.pathway)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cached_words(&self) -> usize {
        self.cache.len()
    }

    pub fn zbar(&mut self, w: &Composition) -> Result<QSeries> {
        if let Some(s) = self.cache.get(w) {
            return Ok(s.clone());
        }
        let s = to_rational(&zbar_integral(w, self.order, self.pathway)?);
        self.cache.insert(w.clone(), s.clone());
        Ok(s)
    }

    pub fn z(&mut self, w: &Composition) -> Result<QSeries> {
        let zb = self.zbar(w)?;
        Ok(&pow_one_minus_q(w.weight(), self.order) * &zb)
    }

    pub fn eval(&mut self, w: &Composition, model: Model) -> Result<QSeries> {
        match model {
            Model::Modified => self.zbar(w),
            Model::NonModified => self.z(w),
            Model::Schlesinger => Err(Error::Unsupported(
                "Schlesinger values are series in 1/q; use numeric evaluation".into(),
            )),
        }
    }

    pub fn eval_lincomb<R: SeriesCoeff>(
        &mut self,
        l: &LinComb<Composition, R>,
        model: Model,
    ) -> Result<QSeries> {
        let mut acc = QSeries::zero(self.order);
        for (w, c) in l.iter() {
            let s = self.eval(w, model)?;
            let term = match c.as_rational() {
                Some(r) => s.scale(&r),
                None => &c.to_series(self.order)? * &s,
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// `sum coeff(w) * value(w)` under the configured model.
pub fn eval_lincomb<R: SeriesCoeff>(l: &LinComb<Composition, R>, cfg: &EvalConfig) -> Result<QSeries> {
    Evaluator::from_config(cfg).eval_lincomb(l, cfg.model)
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

/// Truncated sum together with an upper bound on the discarded tail.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericValue<S> {
    pub value: S,
    pub tail_bound: f64,
    pub terms: usize,
}

impl<S: Scalar> NumericValue<S> {
    pub fn approx(&self) -> f64 {
        self.value.approx()
    }
}

impl NumericValue<Rational> {
    pub fn value_text(&self) -> String {
        format_rational(&self.value)
    }
}

/// Whether the word lies in the classical convergent range `n1 >= 2`,
/// `nj >= 1`.
pub fn is_convergent_classical(w: &[i64]) -> bool {
    !w.is_empty() && w[0] >= 2 && w.iter().all(|&n| n >= 1)
}

fn int_pow<S: Scalar>(x: &S, n: i64) -> S {
    let p = pow(x, n.unsigned_abs());
    if n >= 0 {
        p
    } else {
        S::one() / p
    }
}

/// Nested sum `sum_{cap >= m1 > ... > mk > 0} lead(m1) prod g(m_i, n_i)`.
fn nested_sum<S: Scalar>(
    exps: &[i64],
    cap: usize,
    lead: impl Fn(usize) -> S,
    factor: impl Fn(usize, i64) -> S,
) -> S {
    let k = exps.len();
    if k == 0 {
        return S::one();
    }
    // a[m] = A_j(m) for the current level j
    let mut a: Vec<S> = (0..=cap)
        .map(|m| if m == 0 { S::zero() } else { factor(m, exps[k - 1]) })
        .collect();
    for j in (0..k - 1).rev() {
        let mut prefix = S::zero();
        let mut next = vec![S::zero(); cap + 1];
        for m in 1..=cap {
            prefix = prefix + a[m - 1].clone();
            if !prefix.is_zero() {
                next[m] = factor(m, exps[j]) * prefix.clone();
            }
        }
        a = next;
    }
    let mut total = S::zero();
    for (m, x) in a.into_iter().enumerate().skip(1) {
        if !x.is_zero() {
            total = total + lead(m) * x;
        }
    }
    total
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Tail bound for `sum_{m1 > cap} r^{m1} C(m1 - 1, k - 1) * c`.
fn geometric_binomial_tail(r: f64, k: usize, cap: usize, c: f64) -> f64 {
    let m = cap + 1;
    if m < k {
        // every admissible index is beyond the cap; bound the full sum
        return geometric_binomial_tail(r, k, k - 1, c);
    }
    let first = r.powi(m as i32) * binom_f64(m - 1, k - 1) * c;
    let rho = r * m as f64 / (m + 1 - k) as f64;
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        first / (1.0 - rho)
    }
}

/// Numeric value of `w` under `model` at `q0`, truncated at `cap`.
pub fn numeric_eval_in<S: Scalar>(w: &Composition, model: Model, q0: &S, cap: usize) -> Result<NumericValue<S>> {
    if cap < 1 {
        return Err(Error::precondition("term_cap must be at least 1"));
    }
    let exps = w.exps();
    let k = exps.len();
    let r = q0.approx().abs();
    let one = S::one();
    let qpow = |m: usize| pow(q0, m as u64);
    let qnum = |m: usize| -> S {
        // [m]_q = 1 + q + ... + q^{m-1}
        let mut acc = S::zero();
        let mut p = S::one();
        for _ in 0..m {
            acc = acc + p.clone();
            p = p * q0.clone();
        }
        acc
    };
    match model {
        Model::Modified | Model::NonModified => {
            let big_q = r > 1.0;
            if r == 1.0 || (big_q && model == Model::Modified) {
                return Err(Error::Domain(format!(
                    "{model} values need |q0| < 1, got |q0| = {r}"
                )));
            }
            if big_q && !is_convergent_classical(exps) {
                return Err(Error::Domain(format!(
                    "non-modified values at |q0| > 1 need n1 >= 2 and nj >= 1, got {}",
                    w.format_ytilde()
                )));
            }
            let factor = |m: usize, n: i64| int_pow(&(one.clone() - qpow(m)), -n);
            let raw = nested_sum(exps, cap, qpow, factor);
            let w_total = w.weight();
            let (value, tail) = if model == Model::NonModified {
                let scale = int_pow(&(one.clone() - q0.clone()), w_total);
                let tail = if big_q {
                    nonmodified_large_q_tail(exps, r, (1.0 - q0.approx()).abs(), cap)
                } else {
                    modified_tail(exps, r, cap) * scale.approx().abs()
                };
                (raw * scale, tail)
            } else {
                (raw, modified_tail(exps, r, cap))
            };
            Ok(NumericValue {
                value,
                tail_bound: if k == 0 { 0.0 } else { tail },
                terms: cap,
            })
        }
        Model::Schlesinger => {
            if r <= 1.0 {
                return Err(Error::Domain(format!(
                    "Schlesinger values need |q0| > 1, got |q0| = {r}"
                )));
            }
            // at |q| > 1 every [m]^{-1} decays geometrically, so n1 = 1 is fine
            if exps.is_empty() || exps.iter().any(|&n| n < 1) {
                return Err(Error::Domain(format!(
                    "Schlesinger values need nj >= 1, got {}",
                    w.format_ytilde()
                )));
            }
            let factor = |m: usize, n: i64| int_pow(&qnum(m), -n);
            let value = nested_sum(exps, cap, |_| S::one(), factor);
            let kappa = (r - 1.0) / (q0.approx() - 1.0).abs();
            Ok(NumericValue {
                value,
                tail_bound: schlesinger_tail(exps, r, kappa, cap),
                terms: cap,
            })
        }
    }
}

/// `|1 - q^m|^{-n}` bounded uniformly in `m` for `|q| = r < 1`.
fn factor_bound(n: i64, r: f64) -> f64 {
    if n > 0 {
        (1.0 - r).powi(-(n as i32))
    } else {
        (1.0 + r).powi((-n) as i32)
    }
}

fn modified_tail(exps: &[i64], r: f64, cap: usize) -> f64 {
    if exps.is_empty() {
        return 0.0;
    }
    let c: f64 = exps.iter().map(|&n| factor_bound(n, r)).product();
    geometric_binomial_tail(r, exps.len(), cap, c)
}

/// `sum_{m >= 1} (r^{m-1} kappa)^{-n}` for `n >= 1`.
fn inverse_qnum_sum(n: i64, r: f64, kappa: f64) -> f64 {
    kappa.powi(-(n as i32)) / (1.0 - r.powi(-(n as i32)))
}

/// Uses `|[m]_q| >= r^{m-1} kappa` with `kappa = (r - 1)/|q - 1|`.
fn schlesinger_tail(exps: &[i64], r: f64, kappa: f64, cap: usize) -> f64 {
    let n1 = exps[0];
    let inner: f64 = exps[1..].iter().map(|&n| inverse_qnum_sum(n, r, kappa)).product();
    let lead = kappa.powi(-(n1 as i32)) * r.powi(-(n1 as i32) * cap as i32) / (1.0 - r.powi(-(n1 as i32)));
    inner * lead
}

/// Non-modified summand `q^{m1} / prod [m_i]^{n_i}` at `|q| > 1`.
fn nonmodified_large_q_tail(exps: &[i64], r: f64, abs_one_minus_q: f64, cap: usize) -> f64 {
    let kappa = (r - 1.0) / abs_one_minus_q;
    let n1 = exps[0];
    let inner: f64 = exps[1..].iter().map(|&n| inverse_qnum_sum(n, r, kappa)).product();
    // |q^m / [m]^{n1}| <= r^{n1} kappa^{-n1} r^{-m (n1 - 1)}
    let e = (n1 - 1) as i32;
    let lead = r.powi(n1 as i32) * kappa.powi(-(n1 as i32)) * r.powi(-e * (cap as i32 + 1)) / (1.0 - r.powi(-e));
    inner * lead
}

/// Numeric evaluation per configuration, in `f64`.
pub fn numeric_eval(w: &Composition, cfg: &EvalConfig) -> Result<NumericValue<f64>> {
    cfg.validate()?;
    let q0 = cfg.q0.to_f64().unwrap_or(f64::NAN);
    numeric_eval_in(w, cfg.model, &q0, cfg.term_cap)
}

/// Numeric evaluation per configuration, exact in the rationals.
pub fn numeric_eval_exact(w: &Composition, cfg: &EvalConfig) -> Result<NumericValue<Rational>> {
    cfg.validate()?;
    numeric_eval_in(w, cfg.model, &cfg.q0, cfg.term_cap)
}

/// Smallest power-of-two multiple of `start` whose tail bound is below
/// `target`, capped at `limit`.
pub fn auto_cap(w: &Composition, model: Model, q0: f64, target: f64, start: usize, limit: usize) -> Result<usize> {
    let mut cap = start.max(1);
    loop {
        let tail = match model {
            Model::Modified => modified_tail(w.exps(), q0.abs(), cap),
            Model::NonModified if q0.abs() < 1.0 => {
                modified_tail(w.exps(), q0.abs(), cap) * (1.0 - q0).abs().powi(w.weight() as i32)
            }
            _ => numeric_eval_in(w, model, &q0, cap)?.tail_bound,
        };
        if tail <= target || cap >= limit {
            return Ok(cap);
        }
        cap = (cap * 2).min(limit);
    }
}

/// Classical multiple zeta value `sum_{m1 > ... > mk >= 1} prod m_i^{-n_i}`.
pub fn zeta_numeric(u: &YWord, cap: usize) -> Result<NumericValue<f64>> {
    let exps = &u.0;
    if exps.is_empty() {
        return Ok(NumericValue {
            value: 1.0,
            tail_bound: 0.0,
            terms: 0,
        });
    }
    if exps[0] < 2 {
        return Err(Error::Domain(format!(
            "{} diverges: the first entry must be at least 2",
            u
        )));
    }
    let value = nested_sum(exps, cap, |_| 1.0, |m, n| (m as f64).powi(-(n as i32)));
    Ok(NumericValue {
        value,
        tail_bound: zeta_tail(exps[0], exps.len(), cap),
        terms: cap,
    })
}

/// `int_N^inf (1 + ln x)^j x^{-s} dx` with `j = k - 1`, bounding the terms
/// with `m1 > N` (the inner nested sum is at most `(1 + ln m1)^{k-1}`).
pub fn zeta_tail(s: i64, k: usize, cap: usize) -> f64 {
    let n = cap as f64;
    let l = n.ln();
    let s1 = (s - 1) as f64;
    let j = k - 1;
    let mut acc = 0.0;
    let mut falling = 1.0;
    for i in 0..=j {
        if i > 0 {
            falling *= (j - i + 1) as f64;
        }
        acc += falling * (1.0 + l).powi((j - i) as i32) / s1.powi(i as i32 + 1);
    }
    (-s1 * l).exp() * acc
}

/// `(1 - q0)^w` as an `f64`.
pub fn one_minus_q_pow(q0: f64, w: i64) -> f64 {
    (1.0 - q0).powi(w as i32)
}

/// `|q0|^k (1 - |q0|)^{-wplus - k}`.
pub fn convergence_bound(w: &Composition, q0: f64) -> f64 {
    let r = q0.abs();
    let k = w.depth() as i32;
    r.powi(k) * (1.0 - r).powi(-(w.weight_plus() as i32) - k)
}

/// Embeds an exact rational into any rational algebra.
pub fn embed<S: RationalAlgebra>(r: &Rational) -> S {
    S::from_rational(r)
}

/// `1 - (1 - q)[m]_q`, which equals `q^m`.
pub fn one_minus_h_qnum(q0: &Rational, m: usize) -> Rational {
    let mut qn = Rational::zero();
    let mut p = Rational::one();
    for _ in 0..m {
        qn += &p;
        p *= q0;
    }
    Rational::one() - (Rational::one() - q0) * qn
}

/// Magnitude helper shared by reports.
pub fn abs_f64(r: &Rational) -> f64 {
    r.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn w(v: &[i64]) -> Composition {
        Composition(v.to_vec())
    }

    fn cfg(order: usize, pathway: Pathway) -> EvalConfig {
        EvalConfig {
            order,
            pathway,
            ..EvalConfig::default()
        }
    }

    #[test]
    fn series_examples() {
        for p in [Pathway::DirectSum, Pathway::Jackson, Pathway::Both] {
            let c = cfg(5, p);
            assert_eq!(zbar_series(&w(&[0]), &c).unwrap(), QSeries::from_ints(&[0, 1, 1, 1, 1, 1], 5));
            assert_eq!(zbar_series(&w(&[0, 0]), &c).unwrap(), QSeries::from_ints(&[0, 0, 1, 2, 3, 4], 5));
            assert_eq!(zbar_series(&w(&[2]), &c).unwrap(), QSeries::from_ints(&[0, 1, 3, 4, 7, 6], 5));
            let c6 = cfg(6, p);
            assert_eq!(zbar_series(&w(&[-1]), &c6).unwrap(), QSeries::from_ints(&[0, 1, 0, 1, 0, 1, 0], 6));
            assert_eq!(zbar_series(&w(&[]), &c).unwrap(), QSeries::one(5));
        }
    }

    #[test]
    fn z_series_examples() {
        let c = cfg(3, Pathway::DirectSum);
        assert_eq!(z_series(&w(&[2]), &c).unwrap(), QSeries::from_ints(&[0, 1, 1, -1], 3));
        assert_eq!(z_series(&w(&[0]), &c).unwrap(), QSeries::from_ints(&[0, 1, 1, 1], 3));
        assert_eq!(z_series(&w(&[]), &c).unwrap(), QSeries::one(3));
    }

    #[test]
    fn lincomb_examples() {
        let c = cfg(12, Pathway::DirectSum);
        let l = LinComb::from_terms([(w(&[3]), rat(1, 1)), (w(&[2]), rat(-1, 1)), (w(&[2, 1]), rat(-1, 1))]);
        assert!(eval_lincomb(&l, &c).unwrap().is_zero());
        let hl = LinComb::term(w(&[2]), LaurentPoly::h());
        let want = &QSeries::from_ints(&[1, -1], 12) * &zbar_series(&w(&[2]), &c).unwrap();
        assert_eq!(eval_lincomb(&hl, &c).unwrap(), want);
    }

    #[test]
    fn numeric_matches_truncated_series() {
        let order = 60;
        let s = zbar_series(&w(&[2]), &cfg(order, Pathway::DirectSum)).unwrap();
        let poly = s.eval_at(&rat(1, 2));
        let c = EvalConfig {
            term_cap: 60,
            ..EvalConfig::default()
        };
        let v = numeric_eval(&w(&[2]), &c).unwrap();
        assert!((v.value - poly.to_f64().unwrap()).abs() < 2f64.powi(-50));
        assert!(v.tail_bound < 1e-12);
    }

    #[test]
    fn schlesinger_domain() {
        let c = EvalConfig {
            model: Model::Schlesinger,
            q0: rat(2, 1),
            term_cap: 40,
            ..EvalConfig::default()
        };
        let v = numeric_eval(&w(&[2]), &c).unwrap();
        assert!(v.value > 1.0 && v.value < 1.644_934_07);
        let bad = EvalConfig { q0: rat(1, 2), ..c };
        assert!(matches!(numeric_eval(&w(&[2]), &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_examples() {
        let z2 = zeta_numeric(&YWord(vec![2]), 100_000).unwrap();
        assert!((z2.value - std::f64::consts::PI.powi(2) / 6.0).abs() <= z2.tail_bound);
        assert!(matches!(zeta_numeric(&YWord(vec![1]), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn qnum_identity() {
        assert_eq!(one_minus_h_qnum(&rat(2, 1), 3), rat(8, 1));
        for m in 0..10 {
            assert_eq!(one_minus_h_qnum(&rat(-3, 2), m), pow(&rat(-3, 2), m as u64));
        }
    }
}
