use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::json;

use crate::coeffs::{binomial, multinomial};
use crate::error::{Error, Result};
use crate::evaluator::{EvalConfig, Evaluator};
use crate::products::QLin;
use crate::words::LinComb;
use crate::Rational;

use super::elimination::{build_elimination_expansion, dd_slim, EliminationKind};
use super::{zc, CheckReport, DeltaComb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerCase {
    /// `zbar(a) zbar(b)`
    PosPos,
    /// `zbar(-a) zbar(-b)`
    NegNeg,
    /// `zbar(-a) zbar(b)`
    NegPos,
}

impl EulerCase {
    pub const ALL: [EulerCase; 3] = [EulerCase::PosPos, EulerCase::NegNeg, EulerCase::NegPos];

    fn kind(self) -> EliminationKind {
        match self {
            EulerCase::PosPos => EliminationKind::PP,
            EulerCase::NegNeg => EliminationKind::DD,
            EulerCase::NegPos => EliminationKind::DP,
        }
    }

    fn factors(self, a: i64, b: i64) -> (i64, i64) {
        match self {
            EulerCase::PosPos => (a, b),
            EulerCase::NegNeg => (-a, -b),
            EulerCase::NegPos => (-a, b),
        }
    }
}

impl fmt::Display for EulerCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EulerCase::PosPos => "pos_pos",
            EulerCase::NegNeg => "neg_neg",
            EulerCase::NegPos => "neg_pos",
        })
    }
}

impl FromStr for EulerCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos_pos" => Ok(EulerCase::PosPos),
            "neg_neg" => Ok(EulerCase::NegNeg),
            "neg_pos" => Ok(EulerCase::NegPos),
            _ => Err(Error::Unsupported(format!("unknown Euler case {s:?}"))),
        }
    }
}

/// The coefficients `beta_j` and `alpha_k` of the positive decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCoefficients {
    pub a: i64,
    pub b: i64,
    pub beta: BTreeMap<i64, Rational>,
    pub alpha: BTreeMap<i64, Rational>,
}

impl EulerCoefficients {
    /// `beta_j` for `0 <= j < a` and `alpha_k` for `b <= k <= a + b - 2`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if !(1 < a && a <= b) {
            return Err(Error::precondition(format!("need 1 < a <= b, got ({a}, {b})")));
        }
        let beta = (0..a).map(|j| (j, Self::beta_at(a, b, j))).collect();
        let alpha = (b..=a + b - 2).map(|k| (k, Self::alpha_at(a, b, k))).collect();
        Ok(EulerCoefficients { a, b, beta, alpha })
    }

    fn beta_at(a: i64, b: i64, j: i64) -> Rational {
        let m = multinomial(j + b - 1, &[j, j + b - a, a - j - 1]);
        sign(a - j) * Rational::from_integer(m)
    }

    fn alpha_at(a: i64, b: i64, k: i64) -> Rational {
        let mut acc = Rational::zero();
        for j in b..=k {
            let m = multinomial(j - 1, &[j - b, j - a, a + b - j - 1]);
            acc += sign(a + b - j) * Rational::new(m, (1 - j).into());
        }
        acc
    }

    pub fn beta(&self, j: i64) -> Rational {
        self.beta.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn alpha(&self, k: i64) -> Rational {
        self.alpha.get(&k).cloned().unwrap_or_else(Rational::zero)
    }
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn int(b: num_bigint::BigInt) -> Rational {
    Rational::from_integer(b)
}

/// Right-hand side of the positive decomposition with its derivation terms.
pub(crate) fn z_euler_printed(a: i64, b: i64) -> Result<DeltaComb> {
    let co = EulerCoefficients::new(a, b)?;
    let mut out = DeltaComb::default();
    for l in 0..a {
        for k in 0..=a - 1 - l {
            let c = binomial(l + b - 1, b - 1) * binomial(b, k);
            out.add_plain(zc(&[b + l, a - l - k]), sign(k) * int(c));
        }
    }
    for l in 0..b {
        for k in 0..=a.min(b - 1 - l) {
            let c = binomial(l + a - 1, a - 1) * binomial(a, k);
            out.add_plain(zc(&[a + l, b - l - k]), sign(k) * int(c));
        }
    }
    for k in 1..=a {
        out.add_plain(zc(&[a + b - k]), -co.beta(a - k));
    }
    for j in 1..a {
        out.add_delta(zc(&[a + b - 1 - j]), co.alpha(a + b - 1 - j));
    }
    Ok(out)
}

/// Right-hand side for `zbar(-a) zbar(b)` as displayed for values.
pub(crate) fn neg_pos_printed(a: i64, b: i64) -> QLin {
    let mut out = LinComb::zero();
    for j in 0..=a {
        for i in 1..=b - a + j {
            let c = binomial(b - 1 - i + j, a - 1) * binomial(a, j);
            out.add_term(zc(&[-j, i]), sign(a - j) * int(c));
        }
    }
    for k in 1..=a {
        for i in 1..=k {
            let c = binomial(b - 1 - i + k, b - 1) * binomial(b, a - k);
            out.add_term(zc(&[-k + 1, -i]), sign(a - k) * int(c));
        }
    }
    for j in 0..=(a - 1).min(b - a + 1) {
        let c = multinomial(b - 1 + j, &[j, a - 1 - j, b - a - j]);
        out.add_term(zc(&[-j, 0]), sign(a - j) * int(c));
    }
    out
}

/// The decomposition of `zbar(+-a) zbar(+-b)`.
///
/// Returns two reports. The first gates: the elimination expansion
/// specialised to `f = g = ybar` reproduces the product. The second,
/// advisory, instantiates the displayed right-hand side (derivation terms
/// evaluated exactly on the series) and names the first discrepant degree.
pub fn verify_euler(a: i64, b: i64, case: EulerCase, cfg: &EvalConfig) -> Vec<CheckReport> {
    let params = json!({"a": a, "b": b, "case": case.to_string(), "order": cfg.order});
    match euler(a, b, case, cfg) {
        Ok(v) => v,
        Err(e) => vec![CheckReport::failed(format!("euler/{case}"), params, format!("error: {e}"))],
    }
}

fn euler(a: i64, b: i64, case: EulerCase, cfg: &EvalConfig) -> Result<Vec<CheckReport>> {
    if !(1 < a && a <= b) {
        return Err(Error::precondition(format!("need 1 < a <= b, got ({a}, {b})")));
    }
    let params = json!({"a": a, "b": b, "case": case.to_string(), "order": cfg.order});
    let mut ev = Evaluator::from_config(cfg);
    let (x, y) = case.factors(a, b);
    let lhs = &ev.zbar(&zc(&[x]))? * &ev.zbar(&zc(&[y]))?;

    let oracle = build_elimination_expansion(a, b, case.kind())?.to_zbar();
    let oracle_val = ev.eval_lincomb(&oracle, crate::evaluator::Model::Modified)?;
    let gate = CheckReport::series(format!("euler/{case}/elimination"), params.clone(), &lhs, &oracle_val);

    let printed = match case {
        EulerCase::PosPos => z_euler_printed(a, b)?,
        EulerCase::NegNeg => DeltaComb::plain(dd_slim(a, b).to_zbar()),
        EulerCase::NegPos => DeltaComb::plain(neg_pos_printed(a, b)),
    };
    let printed_val = printed.eval(&mut ev)?;
    let mut adv = CheckReport::series(format!("euler/{case}/printed"), params, &lhs, &printed_val).advisory();
    if !adv.pass {
        adv.notes.push("erratum candidate: the displayed right-hand side differs from the product".into());
    }
    Ok(vec![gate, adv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    #[test]
    fn coefficients_two_two() {
        let c = EulerCoefficients::new(2, 2).unwrap();
        // beta_0 = multinomial(1; 0, 0, 1), beta_1 = -multinomial(2; 1, 1, 0)
        assert_eq!(c.beta(0), rat(1, 1));
        assert_eq!(c.beta(1), rat(-2, 1));
        // alpha_2 = 1/(1-2) * multinomial(1; 0, 0, 1)
        assert_eq!(c.alpha(2), rat(-1, 1));
        assert!(EulerCoefficients::new(3, 2).is_err());
    }

    #[test]
    fn oracle_gates_pass() {
        let cfg = EvalConfig::with_order(14);
        for case in EulerCase::ALL {
            let r = verify_euler(2, 3, case, &cfg);
            assert!(r[0].pass, "{case}: {:?}", r[0]);
            assert!(r[1].advisory);
        }
    }
}
