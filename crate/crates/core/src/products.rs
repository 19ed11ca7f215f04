//! Word products: shuffle on `{x0, x1}`, quasi-shuffle on integer letters,
//! the q-shuffle on `{p, d, y}` words, the q-quasi-shuffle, and the graded
//! versions of the last two over Laurent polynomials in `h`.
//!
//! The q-products are written once, generic over the coefficient ring and
//! parametrised by the value of `h`. Passing `h = 1` in the rationals gives
//! the ungraded products; passing the indeterminate `h` in [`LaurentPoly`]
//! gives the graded ones.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::coeffs::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::words::{Composition, LinComb, XWord};
use crate::Rational;

pub type QLin = LinComb<Composition, Rational>;
pub type HLin = LinComb<Composition, LaurentPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    ShuffleX,
    QuasiShuffle,
    QShuffle,
    QQuasiShuffle,
    QShuffleGraded,
    QQuasiShuffleGraded,
}

impl ProductKind {
    pub const ALL: [ProductKind; 6] = [
        ProductKind::ShuffleX,
        ProductKind::QuasiShuffle,
        ProductKind::QShuffle,
        ProductKind::QQuasiShuffle,
        ProductKind::QShuffleGraded,
        ProductKind::QQuasiShuffleGraded,
    ];

    pub fn is_graded(self) -> bool {
        matches!(self, ProductKind::QShuffleGraded | ProductKind::QQuasiShuffleGraded)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::ShuffleX => "shuffle",
            ProductKind::QuasiShuffle => "stuffle",
            ProductKind::QShuffle => "qshuffle",
            ProductKind::QQuasiShuffle => "qstuffle",
            ProductKind::QShuffleGraded => "qshuffle-graded",
            ProductKind::QQuasiShuffleGraded => "qstuffle-graded",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "shuffle" | "shuffle-x" => ProductKind::ShuffleX,
            "stuffle" | "quasi-shuffle" | "quasishuffle" => ProductKind::QuasiShuffle,
            "qshuffle" | "q-shuffle" => ProductKind::QShuffle,
            "qstuffle" | "q-quasi-shuffle" | "qquasishuffle" => ProductKind::QQuasiShuffle,
            "qshuffle-graded" | "q-shuffle-graded" => ProductKind::QShuffleGraded,
            "qstuffle-graded" | "q-quasi-shuffle-graded" | "qquasishuffle-graded" => {
                ProductKind::QQuasiShuffleGraded
            }
            other => return Err(Error::Unsupported(format!("unknown product {other:?}"))),
        })
    }
}

// ---------------------------------------------------------------------------
// Helpers on linear combinations of compositions
// ---------------------------------------------------------------------------

fn prepend_letter<R: Ring>(l: &LinComb<Composition, R>, n: i64) -> LinComb<Composition, R> {
    l.map_words(|w| w.prepend(n))
}

/// Left multiplication by `p` (`delta = 1`) or `d` (`delta = -1`) on
/// non-empty words: shifts the first exponent.
fn shift_first<R: Ring>(l: &LinComb<Composition, R>, delta: i64) -> LinComb<Composition, R> {
    l.map_words(|w| {
        let mut v = w.0.clone();
        v[0] += delta;
        Composition(v)
    })
}

fn with_first(w: &Composition, n: i64) -> Composition {
    let mut v = w.0.clone();
    v[0] = n;
    Composition(v)
}

/// Extends a product on basis words bilinearly.
pub fn bilinear<R: Ring>(
    a: &LinComb<Composition, R>,
    b: &LinComb<Composition, R>,
    mut f: impl FnMut(&Composition, &Composition) -> LinComb<Composition, R>,
) -> LinComb<Composition, R> {
    let mut out = LinComb::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_scaled(&f(u, v), &(cu.clone() * cv.clone()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Classical shuffle on {x0, x1}
// ---------------------------------------------------------------------------

/// `au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)`, empty word as unit.
pub fn shuffle(u: &XWord, v: &XWord) -> LinComb<XWord, Rational> {
    fn go(
        u: &[u8],
        v: &[u8],
        memo: &mut HashMap<(usize, usize), LinComb<XWord, Rational>>,
    ) -> LinComb<XWord, Rational> {
        if u.is_empty() || v.is_empty() {
            let w = if u.is_empty() { v } else { u };
            return LinComb::word(XWord(w.to_vec()));
        }
        let key = (u.len(), v.len());
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let push = |l: LinComb<XWord, Rational>, a: u8| {
            l.map_words(|w| {
                let mut x = Vec::with_capacity(w.0.len() + 1);
                x.push(a);
                x.extend_from_slice(&w.0);
                XWord(x)
            })
        };
        let left = push(go(&u[1..], v, memo), u[0]);
        let right = push(go(u, &v[1..], memo), v[0]);
        let r = left + right;
        memo.insert(key, r.clone());
        r
    }
    go(&u.0, &v.0, &mut HashMap::new())
}

// ---------------------------------------------------------------------------
// Quasi-shuffle with [z_i z_j] = z_{i+j}
// ---------------------------------------------------------------------------

/// `z_a u * z_b v = z_a(u * z_b v) + z_b(z_a u * v) + z_{a+b}(u * v)`.
pub fn quasi_shuffle<R: Ring>(u: &Composition, v: &Composition) -> LinComb<Composition, R> {
    fn go<R: Ring>(
        u: &[i64],
        v: &[i64],
        memo: &mut HashMap<(usize, usize), LinComb<Composition, R>>,
    ) -> LinComb<Composition, R> {
        if u.is_empty() || v.is_empty() {
            let w = if u.is_empty() { v } else { u };
            return LinComb::word(Composition(w.to_vec()));
        }
        let key = (u.len(), v.len());
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let r = prepend_letter(&go(&u[1..], v, memo), u[0])
            + prepend_letter(&go(u, &v[1..], memo), v[0])
            + prepend_letter(&go(&u[1..], &v[1..], memo), u[0] + v[0]);
        memo.insert(key, r.clone());
        r
    }
    go(&u.0, &v.0, &mut HashMap::new())
}

pub fn quasi_shuffle_lin<R: Ring>(
    a: &LinComb<Composition, R>,
    b: &LinComb<Composition, R>,
) -> LinComb<Composition, R> {
    bilinear(a, b, quasi_shuffle::<R>)
}

// ---------------------------------------------------------------------------
// T, T_q and H_q
// ---------------------------------------------------------------------------

/// `T(z_n v) = z_n v - c z_{n-1} v` on a single word; the empty word is fixed.
fn t_word<R: Ring>(w: &Composition, c: &R) -> LinComb<Composition, R> {
    match w.first() {
        None => LinComb::word(w.clone()),
        Some(n) => {
            let mut l = LinComb::word(w.clone());
            l.add_term(with_first(w, n - 1), -c.clone());
            l
        }
    }
}

/// `T` with a caller-chosen coefficient in front of `z_{n-1}`.
pub fn apply_t_with<R: Ring>(l: &LinComb<Composition, R>, c: &R) -> LinComb<Composition, R> {
    l.apply_linear(|w| t_word(w, c))
}

/// The ungraded operator `T`.
pub fn apply_t(l: &QLin) -> QLin {
    apply_t_with(l, &Rational::from_i64(1))
}

/// The graded operator `T_q`, coefficient `-h`.
pub fn apply_tq(l: &HLin) -> HLin {
    apply_t_with(l, &LaurentPoly::h())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `H_q(u) = h^{w(u)} u`, or its inverse.
pub fn apply_h(l: &HLin, direction: Direction) -> HLin {
    let sign = match direction {
        Direction::Forward => 1,
        Direction::Inverse => -1,
    };
    LinComb::from_terms(
        l.iter()
            .map(|(w, c)| (w.clone(), c.shift(sign * w.weight()))),
    )
}

// ---------------------------------------------------------------------------
// q-quasi-shuffle
// ---------------------------------------------------------------------------

/// `z_m u ⧢- z_n v = z_m(u * T(z_n v)) + z_n(T(z_m u) * v) + T(z_{m+n}(u * v))`
/// with `T` using the coefficient `h`.
pub fn q_quasi_shuffle_with<R: Ring>(u: &Composition, v: &Composition, h: &R) -> LinComb<Composition, R> {
    let (m, n) = match (u.first(), v.first()) {
        (None, _) => return LinComb::word(v.clone()),
        (_, None) => return LinComb::word(u.clone()),
        (Some(m), Some(n)) => (m, n),
    };
    let (u1, v1) = (u.tail(), v.tail());
    let tu = t_word(u, h);
    let tv = t_word(v, h);
    let a = prepend_letter(&quasi_shuffle_lin(&LinComb::word(u1.clone()), &tv), m);
    let b = prepend_letter(&quasi_shuffle_lin(&tu, &LinComb::word(v1.clone())), n);
    let c = apply_t_with(&prepend_letter(&quasi_shuffle::<R>(&u1, &v1), m + n), h);
    a + b + c
}

pub fn q_quasi_shuffle(u: &Composition, v: &Composition) -> QLin {
    q_quasi_shuffle_with(u, v, &Rational::from_i64(1))
}

pub fn q_quasi_shuffle_graded(u: &Composition, v: &Composition) -> HLin {
    q_quasi_shuffle_with(u, v, &LaurentPoly::h())
}

// ---------------------------------------------------------------------------
// q-shuffle
// ---------------------------------------------------------------------------

/// Memoised q-shuffle on normal-form words over `{p, d, y}`.
///
/// The engine keeps its table between calls, so reusing one engine across
/// many products shares the work on common suffixes.
pub struct QShuffleEngine<R> {
    h: R,
    h_inv: R,
    memo: HashMap<(Composition, Composition), LinComb<Composition, R>>,
}

impl QShuffleEngine<Rational> {
    pub fn ungraded() -> Self {
        let one = Rational::from_i64(1);
        Self::with_h(one.clone(), one)
    }
}

impl QShuffleEngine<LaurentPoly> {
    pub fn graded() -> Self {
        Self::with_h(LaurentPoly::h(), LaurentPoly::h_pow(-1))
    }
}

impl<R: Ring> QShuffleEngine<R> {
    pub fn with_h(h: R, h_inv: R) -> Self {
        QShuffleEngine {
            h,
            h_inv,
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn product(&mut self, u: &Composition, v: &Composition) -> LinComb<Composition, R> {
        if u.is_empty() {
            return LinComb::word(v.clone());
        }
        if v.is_empty() {
            return LinComb::word(u.clone());
        }
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let r = self.expand(&key.0, &key.1);
        self.memo.insert(key, r.clone());
        r
    }

    pub fn product_lin(
        &mut self,
        a: &LinComb<Composition, R>,
        b: &LinComb<Composition, R>,
    ) -> LinComb<Composition, R> {
        bilinear(a, b, |u, v| self.product(u, v))
    }

    fn expand(&mut self, u: &Composition, v: &Composition) -> LinComb<Composition, R> {
        let (a, b) = (u.0[0], v.0[0]);
        // y in front of either factor comes out in front of the product
        if a == 0 {
            return prepend_letter(&self.product(&u.tail(), v), 0);
        }
        if b == 0 {
            return prepend_letter(&self.product(u, &v.tail()), 0);
        }
        match (a > 0, b > 0) {
            (true, true) => {
                let (u1, v1) = (with_first(u, a - 1), with_first(v, b - 1));
                let mut r = self.product(&u1, v);
                r = r + self.product(u, &v1);
                let cross = self.product(&u1, &v1);
                r.add_scaled(&cross, &-self.h.clone());
                shift_first(&r, 1)
            }
            (false, false) => {
                let (u1, v1) = (with_first(u, a + 1), with_first(v, b + 1));
                let mut r = self.product(&u1, v);
                r = r + self.product(u, &v1);
                r = r - shift_first(&self.product(&u1, &v1), -1);
                r.scale(&self.h_inv)
            }
            _ => {
                // orient as d-word times p-word
                let (dw, pw) = if a < 0 { (u, v) } else { (v, u) };
                let d1 = with_first(dw, dw.0[0] + 1);
                let p1 = with_first(pw, pw.0[0] - 1);
                let mut r = shift_first(&self.product(&d1, pw), -1);
                r = r - self.product(&d1, &p1);
                let last = self.product(dw, &p1);
                r.add_scaled(&last, &self.h.clone());
                r
            }
        }
    }
}

pub fn q_shuffle(u: &Composition, v: &Composition) -> QLin {
    QShuffleEngine::ungraded().product(u, v)
}

pub fn q_shuffle_graded(u: &Composition, v: &Composition) -> HLin {
    QShuffleEngine::graded().product(u, v)
}

/// Product of two compositions with Laurent coefficients for any q-product
/// kind; ungraded kinds embed their rational result.
pub fn q_product_h(kind: ProductKind, u: &Composition, v: &Composition) -> Result<HLin> {
    Ok(match kind {
        ProductKind::QuasiShuffle => quasi_shuffle(u, v),
        ProductKind::QShuffle => q_shuffle(u, v).to_laurent(),
        ProductKind::QQuasiShuffle => q_quasi_shuffle(u, v).to_laurent(),
        ProductKind::QShuffleGraded => q_shuffle_graded(u, v),
        ProductKind::QQuasiShuffleGraded => q_quasi_shuffle_graded(u, v),
        ProductKind::ShuffleX => {
            return Err(Error::Unsupported("the x-shuffle acts on x-words, not compositions".into()))
        }
    })
}

/// Product of two compositions with rational coefficients for the ungraded
/// kinds.
pub fn q_product(kind: ProductKind, u: &Composition, v: &Composition) -> Result<QLin> {
    Ok(match kind {
        ProductKind::QuasiShuffle => quasi_shuffle(u, v),
        ProductKind::QShuffle => q_shuffle(u, v),
        ProductKind::QQuasiShuffle => q_quasi_shuffle(u, v),
        other => {
            return Err(Error::Unsupported(format!(
                "{other} has Laurent coefficients or acts on x-words"
            )))
        }
    })
}

/// Product dispatcher that keeps one memo table per q-shuffle flavour, so a
/// long run of products over related words reuses earlier expansions.
pub struct Multiplier {
    kind: ProductKind,
    ungraded: QShuffleEngine<Rational>,
    graded: QShuffleEngine<LaurentPoly>,
}

impl Multiplier {
    pub fn new(kind: ProductKind) -> Result<Self> {
        if kind == ProductKind::ShuffleX {
            return Err(Error::Unsupported("the x-shuffle acts on x-words, not compositions".into()));
        }
        Ok(Multiplier {
            kind,
            ungraded: QShuffleEngine::ungraded(),
            graded: QShuffleEngine::graded(),
        })
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn mul(&mut self, u: &Composition, v: &Composition) -> HLin {
        match self.kind {
            ProductKind::QShuffle => self.ungraded.product(u, v).to_laurent(),
            ProductKind::QShuffleGraded => self.graded.product(u, v),
            // checked in the constructor
            kind => q_product_h(kind, u, v).expect("composition product"),
        }
    }

    pub fn mul_lin(&mut self, a: &HLin, b: &HLin) -> HLin {
        bilinear(a, b, |u, v| self.mul(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn c(v: &[i64]) -> Composition {
        Composition(v.to_vec())
    }

    fn lin(terms: &[(&[i64], i64)]) -> QLin {
        LinComb::from_terms(terms.iter().map(|(w, k)| (c(w), rat(*k, 1))))
    }

    #[test]
    fn shuffle_examples() {
        let x01 = XWord(vec![0, 1]);
        let r = shuffle(&x01, &x01);
        let want = LinComb::from_terms([
            (XWord(vec![0, 1, 0, 1]), rat(2, 1)),
            (XWord(vec![0, 0, 1, 1]), rat(4, 1)),
        ]);
        assert_eq!(r, want);
        assert_eq!(shuffle(&XWord(vec![1]), &XWord(vec![])), LinComb::word(XWord(vec![1])));
        let r = shuffle(&XWord(vec![1]), &x01);
        let want = LinComb::from_terms([
            (XWord(vec![1, 0, 1]), rat(1, 1)),
            (XWord(vec![0, 1, 1]), rat(2, 1)),
        ]);
        assert_eq!(r, want);
    }

    #[test]
    fn quasi_shuffle_examples() {
        let r: QLin = quasi_shuffle(&c(&[2]), &c(&[2]));
        assert_eq!(r, lin(&[(&[2, 2], 2), (&[4], 1)]));
        let r: QLin = quasi_shuffle(&c(&[1]), &c(&[2]));
        assert_eq!(r, lin(&[(&[1, 2], 1), (&[2, 1], 1), (&[3], 1)]));
        let r: QLin = quasi_shuffle(&c(&[5]), &c(&[]));
        assert_eq!(r, lin(&[(&[5], 1)]));
    }

    #[test]
    fn t_examples() {
        assert_eq!(apply_t(&lin(&[(&[2], 1)])), lin(&[(&[2], 1), (&[1], -1)]));
        let tq = apply_tq(&lin(&[(&[2, 1], 1)]).to_laurent());
        let mut want = HLin::word(c(&[2, 1]));
        want.add_term(c(&[1, 1]), -LaurentPoly::h());
        assert_eq!(tq, want);
        assert_eq!(apply_t(&lin(&[(&[0], 3)])), lin(&[(&[0], 3), (&[-1], -3)]));
        assert_eq!(apply_t(&lin(&[(&[], 1)])), lin(&[(&[], 1)]));
    }

    #[test]
    fn q_quasi_shuffle_examples() {
        let (m, n) = (3, -1);
        let r = q_quasi_shuffle(&c(&[m]), &c(&[n]));
        let want = lin(&[
            (&[m, n], 1),
            (&[n, m], 1),
            (&[m + n], 1),
            (&[m, n - 1], -1),
            (&[n, m - 1], -1),
            (&[m + n - 1], -1),
        ]);
        assert_eq!(r, want);
        assert_eq!(q_quasi_shuffle(&c(&[]), &c(&[2, 1])), lin(&[(&[2, 1], 1)]));
        let r = q_quasi_shuffle(&c(&[2]), &c(&[2]));
        assert_eq!(r, lin(&[(&[2, 2], 2), (&[4], 1), (&[2, 1], -2), (&[3], -1)]));
    }

    #[test]
    fn q_shuffle_examples() {
        assert_eq!(q_shuffle(&c(&[1]), &c(&[1])), lin(&[(&[1, 1], 2), (&[1, 0], -1)]));
        // y is the generator: y ⧢ y is the single word yy
        assert_eq!(q_shuffle(&c(&[0]), &c(&[0])), lin(&[(&[0, 0], 1)]));
        let r = q_shuffle(&c(&[2]), &c(&[2]));
        let want = lin(&[
            (&[2, 2], 2),
            (&[3, 1], 4),
            (&[2, 1], -4),
            (&[3, 0], -2),
            (&[2, 0], 1),
        ]);
        assert_eq!(r, want);
    }

    #[test]
    fn graded_degenerates_at_h_one() {
        let words = crate::words::desk_set(2, -2, 2, true);
        let mut g = QShuffleEngine::graded();
        let mut u = QShuffleEngine::ungraded();
        for a in &words {
            for b in &words {
                assert_eq!(g.product(a, b).at_h_one(), u.product(a, b), "{a:?} {b:?}");
                assert_eq!(q_quasi_shuffle_graded(a, b).at_h_one(), q_quasi_shuffle(a, b));
            }
        }
    }

    #[test]
    fn h_examples() {
        let l = HLin::word(c(&[2, -1]));
        assert_eq!(apply_h(&l, Direction::Forward), HLin::term(c(&[2, -1]), LaurentPoly::h()));
        assert_eq!(apply_h(&apply_h(&l, Direction::Forward), Direction::Inverse), l);
        let e = HLin::word(c(&[]));
        assert_eq!(apply_h(&e, Direction::Forward), e);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ProductKind::ALL {
            assert_eq!(k.name().parse::<ProductKind>().unwrap(), k);
        }
        assert!("nope".parse::<ProductKind>().is_err());
    }
}
