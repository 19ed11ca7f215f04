//! Verifiers for the identities of the theory.
//!
//! Every check returns a [`CheckReport`]. Series checks compare two exact
//! truncated q-series and name the first degree where they differ; numeric
//! checks compare within the declared tolerance plus rigorous tail bounds.
//!
//! Printed closed forms whose index ranges are suspect are marked
//! `advisory`: a mismatch is reported as an erratum candidate and does not
//! make a suite fail. The oracle-based identities they are compared against
//! always gate.

mod derivation;
mod elimination;
mod euler;
mod laws;
mod numeric;
mod operators;
mod suites;

pub use derivation::{
    derivation_examples, general_delta, single_delta, verify_derivation, verify_derivation_examples, DerivationKind,
};
pub use elimination::{
    build_elimination_expansion, dd_slim, dd_theorem, dp_slim, gamma_direct, EliminationKind, GammaExpansion,
    GammaShape,
};
pub use euler::{verify_euler, EulerCase, EulerCoefficients};
pub use laws::{verify_homomorphism, verify_shuffle_x_laws, verify_word_laws, WordSample};
pub use numeric::{
    verify_convergence_bound, verify_limit, verify_limit_of, verify_regularization, verify_regularization_classical,
    verify_schlesinger,
};
pub use operators::{random_bi_series, verify_operator_laws};
pub use suites::{
    derivation_family, homomorphism_sweep, named_identities, run_suite, suite_names, verify_pathways, SuiteConfig, ZETA2,
    ZETA3,
};

use serde_json::{json, Value};

use crate::coeffs::format_rational;
use crate::evaluator::Evaluator;
use crate::products::QLin;
use crate::words::{Composition, LinComb};
use crate::{QSeries, Rational, Result, TQSeries};

/// Location of the first disagreement between the two sides of a check.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub degree: i64,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({"degree": self.degree, "lhs": self.lhs, "rhs": self.rhs})
    }
}

/// What should vanish for the check to pass.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    None,
    Series(QSeries),
    Words(QLin),
    Bivariate(TQSeries),
    Numeric(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub params: Value,
    pub pass: bool,
    /// Erratum-candidate comparisons that never fail a run.
    pub advisory: bool,
    pub residual: Residual,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, params: Value) -> Self {
        CheckReport {
            name: name.into(),
            params,
            pass: true,
            advisory: false,
            residual: Residual::None,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn failed(name: impl Into<String>, params: Value, note: impl Into<String>) -> Self {
        let mut r = Self::new(name, params);
        r.pass = false;
        r.notes.push(note.into());
        r
    }

    /// Turns an evaluation error into a failing report.
    pub fn from_result(name: &str, params: Value, res: Result<CheckReport>) -> CheckReport {
        res.unwrap_or_else(|e| Self::failed(name, params, format!("error: {e}")))
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    /// Counts towards the verdict of a run.
    pub fn gates(&self) -> bool {
        !self.advisory
    }

    /// Exact comparison of two truncated series.
    pub fn series(name: impl Into<String>, params: Value, lhs: &QSeries, rhs: &QSeries) -> Self {
        let mut r = Self::new(name, params);
        let residual = lhs - rhs;
        if let Some(d) = lhs.first_difference(rhs) {
            r.pass = false;
            r.witness = Some(Witness {
                degree: d as i64,
                lhs: format_rational(&lhs.coeff(d)),
                rhs: format_rational(&rhs.coeff(d)),
            });
        }
        r.notes.push(format!("compared to order {}", residual.order()));
        r.residual = Residual::Series(residual);
        r
    }

    /// Exact comparison of two word combinations; the witness degree is the
    /// letter count of the first differing word.
    pub fn words(name: impl Into<String>, params: Value, lhs: &QLin, rhs: &QLin) -> Self {
        let mut r = Self::new(name, params);
        let residual = lhs.clone() - rhs.clone();
        if let Some((w, _)) = residual.iter().next() {
            r.pass = false;
            r.witness = Some(Witness {
                degree: w.length() as i64,
                lhs: format!("{}*{}", format_rational(&lhs.coeff(w)), w.format_w_compact()),
                rhs: format!("{}*{}", format_rational(&rhs.coeff(w)), w.format_w_compact()),
            });
        }
        r.residual = Residual::Words(residual);
        r
    }

    /// Exact comparison of two bivariate series; the witness degree is the
    /// total degree `i + j`.
    pub fn bivariate(name: impl Into<String>, params: Value, lhs: &TQSeries, rhs: &TQSeries) -> Self {
        let mut r = Self::new(name, params);
        let residual = lhs - rhs;
        if let Some((i, j, _)) = residual.terms().min_by_key(|(i, j, _)| (i + j, *i)) {
            r.pass = false;
            r.witness = Some(Witness {
                degree: (i + j) as i64,
                lhs: format_rational(&lhs.coeff(i, j)),
                rhs: format_rational(&rhs.coeff(i, j)),
            });
            r.notes.push(format!("first difference at t^{i} q^{j}"));
        }
        r.residual = Residual::Bivariate(residual);
        r
    }

    /// Aggregate of sub-checks: passes when every gating part passes. The
    /// witness and notes of the first failing part are kept.
    pub fn combine(name: impl Into<String>, params: Value, parts: &[CheckReport]) -> Self {
        let mut r = Self::new(name, params);
        let failing: Vec<&CheckReport> = parts.iter().filter(|p| p.gates() && !p.pass).collect();
        r.notes.push(format!(
            "{} sub-checks, {} failing",
            parts.iter().filter(|p| p.gates()).count(),
            failing.len()
        ));
        if let Some(first) = failing.first() {
            r.pass = false;
            r.witness = first.witness.clone();
            r.residual = first.residual.clone();
            r.notes.push(format!("first failure: {}", first.name));
            r.notes.extend(first.notes.iter().cloned());
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "params": self.params,
            "pass": self.pass,
            "witness": self.witness.as_ref().map(Witness::to_json),
            "notes": self.notes,
        });
        if self.advisory {
            v["advisory"] = Value::Bool(true);
        }
        v
    }

    /// One line: `PASS name params` followed by the witness, if any.
    pub fn to_text(&self) -> String {
        let status = match (self.pass, self.advisory) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "NOTE",
        };
        let mut line = format!("{status} {} {}", self.name, self.params);
        if let Some(w) = &self.witness {
            line.push_str(&format!(" [degree {}: lhs {} rhs {}]", w.degree, w.lhs, w.rhs));
        }
        line
    }
}

/// Sum of plain values and `delta = q d/dq` applied to values:
/// `sum c_w zbar(w) + sum d_w delta zbar(w)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeltaComb {
    pub plain: QLin,
    pub delta: QLin,
}

impl DeltaComb {
    pub fn plain(l: QLin) -> Self {
        DeltaComb {
            plain: l,
            delta: LinComb::zero(),
        }
    }

    pub fn add_plain(&mut self, w: impl Into<Composition>, c: Rational) {
        self.plain.add_term(w.into(), c);
    }

    pub fn add_delta(&mut self, w: impl Into<Composition>, c: Rational) {
        self.delta.add_term(w.into(), c);
    }

    pub fn eval(&self, ev: &mut Evaluator) -> Result<QSeries> {
        let model = crate::evaluator::Model::Modified;
        let p = ev.eval_lincomb(&self.plain, model)?;
        let d = ev.eval_lincomb(&self.delta, model)?.delta();
        Ok(&p + &d)
    }

    pub fn display(&self) -> String {
        let p = self.plain.display_with(|w| format!("z{}", paren(w)));
        let d = self.delta.display_with(|w| format!("dz{}", paren(w)));
        match (self.plain.is_zero(), self.delta.is_zero()) {
            (_, true) => p,
            (true, false) => d,
            (false, false) => format!("{p} + {d}"),
        }
    }
}

fn paren(w: &Composition) -> String {
    let inner: Vec<String> = w.exps().iter().map(|n| n.to_string()).collect();
    format!("({})", inner.join(","))
}

pub(crate) fn zc(exps: &[i64]) -> Composition {
    Composition(exps.to_vec())
}
