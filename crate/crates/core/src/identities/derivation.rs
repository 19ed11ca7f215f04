use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::json;

use crate::coeffs::{binomial, rat};
use crate::error::{Error, Result};
use crate::evaluator::{EvalConfig, Evaluator};
use crate::products::QLin;
use crate::words::{Composition, LinComb};
use crate::{QSeries, Rational};

use super::{zc, CheckReport, DeltaComb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivationKind {
    Single,
    Telescoped,
    General,
    Kappa,
    ShuffleDelta,
}

impl DerivationKind {
    pub const ALL: [DerivationKind; 5] = [
        DerivationKind::Single,
        DerivationKind::Telescoped,
        DerivationKind::General,
        DerivationKind::Kappa,
        DerivationKind::ShuffleDelta,
    ];
}

impl fmt::Display for DerivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivationKind::Single => "single",
            DerivationKind::Telescoped => "telescoped",
            DerivationKind::General => "general",
            DerivationKind::Kappa => "kappa",
            DerivationKind::ShuffleDelta => "shuffle-delta",
        })
    }
}

impl FromStr for DerivationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DerivationKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown derivation check {s:?}")))
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `zbar(a, 0) + zbar(a)` with weight `c`.
fn pair(out: &mut QLin, a: i64, c: Rational) {
    out.add_term(zc(&[a, 0]), c.clone());
    out.add_term(zc(&[a]), c);
}

/// `delta zbar(a) = (1 - a)(zbar(a,0) + zbar(a)) + a (zbar(a+1,0) + zbar(a+1))`.
pub fn single_delta(a: i64) -> QLin {
    let mut out = LinComb::zero();
    pair(&mut out, a, r(1 - a));
    pair(&mut out, a + 1, r(a));
    out
}

/// Right-hand side of `delta zbar(a_1, ..., a_k)` in plain values.
pub fn general_delta(args: &Composition) -> QLin {
    let a = args.exps();
    let k = a.len() as i64;
    let mut out = LinComb::zero();
    let bump = |r: usize| {
        let mut v = a.to_vec();
        v[r] += 1;
        v
    };
    let insert_zero = |mut v: Vec<i64>, s: usize| {
        v.insert(s + 1, 0);
        Composition(v)
    };
    let weighted: i64 = a.iter().enumerate().map(|(r, &x)| x * (k - r as i64)).sum();
    out.add_term(args.clone(), Rational::from_integer((k - weighted).into()));
    for (r, &x) in a.iter().enumerate() {
        out.add_term(Composition(bump(r)), Rational::from_integer((x * (k - r as i64)).into()));
    }
    let mut partial = 0;
    for s in 0..a.len() {
        partial += a[s];
        out.add_term(insert_zero(a.to_vec(), s), Rational::from_integer((1 - partial).into()));
    }
    for s in 0..a.len() {
        for (r, &x) in a.iter().enumerate().take(s + 1) {
            out.add_term(insert_zero(bump(r), s), Rational::from_integer(x.into()));
        }
    }
    out
}

/// The displayed examples of the derivation formula and its corollaries,
/// as `(label, lhs, rhs)`.
pub fn derivation_examples() -> Vec<(String, DeltaComb, DeltaComb)> {
    let delta = |a: i64| {
        let mut d = DeltaComb::default();
        d.add_delta(zc(&[a]), r(1));
        d
    };
    let pairs = |terms: &[(i64, i64)]| {
        let mut l = LinComb::zero();
        for &(a, c) in terms {
            pair(&mut l, a, r(c));
        }
        DeltaComb::plain(l)
    };
    let mut out = vec![
        ("delta zbar(2)".to_string(), delta(2), pairs(&[(2, -1), (3, 2)])),
        ("delta zbar(1)".to_string(), delta(1), pairs(&[(2, 1)])),
        ("delta zbar(0)".to_string(), delta(0), pairs(&[(0, 1)])),
        ("delta zbar(-1)".to_string(), delta(-1), pairs(&[(-1, 2), (0, -1)])),
        ("delta zbar(-2)".to_string(), delta(-2), pairs(&[(-2, 3), (-1, -2)])),
    ];

    let mut lhs = DeltaComb::default();
    lhs.add_plain(zc(&[-1, 0]), r(1));
    let mut rhs = DeltaComb::default();
    rhs.add_delta(zc(&[-1]), rat(1, 2));
    rhs.add_plain(zc(&[-1]), r(-1));
    pair(&mut rhs.plain, 0, rat(1, 2));
    out.push(("zbar(-1,0)".to_string(), lhs, rhs));

    let mut lhs = DeltaComb::default();
    lhs.add_plain(zc(&[-1, 0]), r(-2));
    lhs.add_plain(zc(&[-2, 0]), r(1));
    let mut rhs = DeltaComb::default();
    rhs.add_delta(zc(&[-1]), rat(-2, 3));
    rhs.add_delta(zc(&[-2]), rat(1, 3));
    rhs.add_plain(zc(&[-2]), r(-1));
    rhs.add_plain(zc(&[-1]), r(2));
    pair(&mut rhs.plain, 0, rat(-2, 3));
    out.push(("-2 zbar(-1,0) + zbar(-2,0)".to_string(), lhs, rhs));
    out
}

/// The displayed closed forms `zbar(0) = q/(1-q)` and
/// `zbar(0,0) = (q/(1-q))^2`.
pub(crate) fn closed_series_examples(cfg: &EvalConfig) -> Result<Vec<CheckReport>> {
    let n = cfg.order;
    let geo = QSeries::from_coeffs((0..=n).map(|k| r(i64::from(k > 0))).collect(), n);
    let mut ev = Evaluator::from_config(cfg);
    Ok(vec![
        CheckReport::series("example/zbar(0)", json!({"order": n}), &ev.zbar(&zc(&[0]))?, &geo),
        CheckReport::series("example/zbar(0,0)", json!({"order": n}), &ev.zbar(&zc(&[0, 0]))?, &(&geo * &geo)),
    ])
}

fn compare(ev: &mut Evaluator, name: String, params: serde_json::Value, lhs: &DeltaComb, rhs: &DeltaComb) -> Result<CheckReport> {
    let (l, r) = (lhs.eval(ev)?, rhs.eval(ev)?);
    Ok(CheckReport::series(name, params, &l, &r).note(format!("{} = {}", lhs.display(), rhs.display())))
}

/// All displayed examples, each as its own report.
pub fn verify_derivation_examples(cfg: &EvalConfig) -> Result<Vec<CheckReport>> {
    let mut ev = Evaluator::from_config(cfg);
    let mut out = Vec::new();
    for (label, lhs, rhs) in derivation_examples() {
        out.push(compare(&mut ev, format!("example/{label}"), json!({"order": cfg.order}), &lhs, &rhs)?);
    }
    out.extend(closed_series_examples(cfg)?);
    Ok(out)
}

/// `delta` of a single value on the left, a plain combination on the right.
fn delta_of(w: Composition) -> DeltaComb {
    let mut d = DeltaComb::default();
    d.add_delta(w, r(1));
    d
}

fn telescoped(a: i64) -> Result<Vec<(String, DeltaComb, DeltaComb)>> {
    if a < 0 {
        return Err(Error::precondition(format!("telescoped forms need a >= 0, got {a}")));
    }
    let mut out = Vec::new();
    if a >= 2 {
        let mut lhs = DeltaComb::default();
        pair(&mut lhs.plain, a, r(1));
        let mut rhs = DeltaComb::default();
        let s = rat(1, a - 1);
        for j in 2..a {
            rhs.add_delta(zc(&[j]), s.clone());
        }
        pair(&mut rhs.plain, 2, s);
        out.push((format!("positive a={a}"), lhs, rhs));
    }
    let mut lhs = DeltaComb::default();
    pair(&mut lhs.plain, -a, r(1));
    let mut rhs = DeltaComb::default();
    let s = rat(1, a + 1);
    for j in 1..=a {
        rhs.add_delta(zc(&[-j]), s.clone());
    }
    pair(&mut rhs.plain, 0, s);
    out.push((format!("negative a={a}"), lhs, rhs));
    if a >= 1 {
        let mut lhs = DeltaComb::default();
        pair(&mut lhs.plain, a + 1, r(1));
        let mut rhs = DeltaComb::default();
        rhs.add_delta(zc(&[a]), rat(1, a));
        pair(&mut rhs.plain, a, rat(a - 1, a));
        out.push((format!("recursion a={a}"), lhs, rhs));
    }
    Ok(out)
}

/// `sum kappa_i zbar(-i, 0)` rewritten with derivation terms.
fn kappa(k: &[i64]) -> Result<(DeltaComb, DeltaComb)> {
    if k.is_empty() {
        return Err(Error::precondition("kappa needs at least one coefficient"));
    }
    let n = k.len() as i64;
    let kap = |i: i64| r(k[(i - 1) as usize]);
    let mut lhs = DeltaComb::default();
    let mut rhs = DeltaComb::default();
    let mut last = Rational::zero();
    for i in 1..=n {
        lhs.add_plain(zc(&[-i, 0]), kap(i));
        let mut c = Rational::zero();
        for j in 1..=n - i + 1 {
            c += kap(n + 1 - j) / r(n + 2 - j);
        }
        rhs.add_delta(zc(&[-i]), c);
        rhs.add_plain(zc(&[-i]), -kap(i));
        last += kap(i) / r(i + 1);
    }
    pair(&mut rhs.plain, 0, last);
    Ok((lhs, rhs))
}

/// `delta zbar(b)` for `b > 2` in plain values.
fn shuffle_delta(b: i64) -> Result<QLin> {
    if b <= 2 {
        return Err(Error::precondition(format!("the expression needs b > 2, got {b}")));
    }
    let mut out = LinComb::zero();
    out.add_term(zc(&[b + 1]), r(b + 1));
    out.add_term(zc(&[b]), r(1 - b));
    out.add_term(zc(&[b + 2]), r(-1));
    out.add_term(zc(&[b + 1, 1]), r(2 * b));
    out.add_term(zc(&[b, 1]), r(1 - b));
    out.add_term(zc(&[2, b - 1]), r(-1));
    out.add_term(zc(&[2, b - 2]), r(1));
    for l in 1..=b - 2 {
        for k in 0..=2.min(b - 1 - l) {
            let c = Rational::from_integer(binomial(2, k)) * r((l + 1) * if k % 2 == 0 { 1 } else { -1 });
            out.add_term(zc(&[2 + l, b - l - k]), c);
        }
    }
    Ok(out)
}

/// Checks one member of the derivation family; `args` is the argument
/// list (`single`, `general`), `[a]` (`telescoped`, `shuffle-delta`), or the
/// coefficient vector `kappa`.
pub fn verify_derivation(args: &Composition, cfg: &EvalConfig, which: DerivationKind) -> CheckReport {
    let name = format!("derivation/{which}");
    let params = json!({"args": args.exps(), "order": cfg.order});
    let res = derivation(args, cfg, which, &name, &params);
    CheckReport::from_result(&name, params, res)
}

fn derivation(
    args: &Composition,
    cfg: &EvalConfig,
    which: DerivationKind,
    name: &str,
    params: &serde_json::Value,
) -> Result<CheckReport> {
    let mut ev = Evaluator::from_config(cfg);
    let first = || {
        args.first()
            .ok_or_else(|| Error::precondition(format!("{which} needs an argument")))
    };
    match which {
        DerivationKind::Single => {
            if args.depth() != 1 {
                return Err(Error::precondition("single needs exactly one argument"));
            }
            let rhs = DeltaComb::plain(single_delta(first()?));
            compare(&mut ev, name.to_string(), params.clone(), &delta_of(args.clone()), &rhs)
        }
        DerivationKind::General => {
            let rhs = DeltaComb::plain(general_delta(args));
            compare(&mut ev, name.to_string(), params.clone(), &delta_of(args.clone()), &rhs)
        }
        DerivationKind::Telescoped => {
            let mut parts = Vec::new();
            for (label, lhs, rhs) in telescoped(first()?)? {
                parts.push(compare(&mut ev, format!("{name}/{label}"), params.clone(), &lhs, &rhs)?);
            }
            Ok(CheckReport::combine(name, params.clone(), &parts))
        }
        DerivationKind::Kappa => {
            let (lhs, rhs) = kappa(args.exps())?;
            compare(&mut ev, name.to_string(), params.clone(), &lhs, &rhs)
        }
        DerivationKind::ShuffleDelta => {
            let b = first()?;
            let rhs = DeltaComb::plain(shuffle_delta(b)?);
            compare(&mut ev, name.to_string(), params.clone(), &delta_of(zc(&[b])), &rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_examples() {
        let l = single_delta(1);
        assert_eq!(l.len(), 2);
        assert_eq!(l.coeff(&zc(&[2, 0])), r(1));
        assert_eq!(l.coeff(&zc(&[2])), r(1));
    }

    #[test]
    fn general_reduces_to_single() {
        for a in -3..=3 {
            assert_eq!(general_delta(&zc(&[a])), single_delta(a), "a = {a}");
        }
    }

    #[test]
    fn family_passes_at_small_order() {
        let cfg = EvalConfig::with_order(12);
        assert!(verify_derivation(&zc(&[2, 1]), &cfg, DerivationKind::General).pass);
        assert!(verify_derivation(&zc(&[3]), &cfg, DerivationKind::Telescoped).pass);
        assert!(verify_derivation(&zc(&[2, -1]), &cfg, DerivationKind::Kappa).pass);
        assert!(verify_derivation(&zc(&[4]), &cfg, DerivationKind::ShuffleDelta).pass);
        for r in verify_derivation_examples(&cfg).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn preconditions_named() {
        let cfg = EvalConfig::with_order(6);
        let r = verify_derivation(&zc(&[2]), &cfg, DerivationKind::ShuffleDelta);
        assert!(!r.pass);
        assert!(r.notes[0].contains("b > 2"));
    }
}
