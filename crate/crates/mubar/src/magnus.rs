//! Exact integer arithmetic in the ring of power series in non-commuting
//! variables `X1, .., Xm`, truncated above a fixed total degree, and the
//! Magnus expansion of free-group words (`a_j -> 1 + X_j`).
//!
//! Series are sparse: a term map from monomials (index sequences) to nonzero
//! arbitrary-precision integers. Iteration order over terms is the
//! lexicographic order of the index sequences and is part of the output
//! contract (serialization is deterministic).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

/// Variable index, 1-based: `1` prints as `X1`.
pub type Var = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MagnusError {
    #[error("monomial of degree {degree} exceeds the truncation cap {cap}")]
    MonomialTooLong { degree: usize, cap: usize },
    #[error("variable X{var} out of range (ring has {vars} variables)")]
    VarOutOfRange { var: Var, vars: u8 },
    #[error("word alphabet {alphabet} does not fit a meridian ring with {vars} variables")]
    AlphabetMismatch { alphabet: String, vars: u8 },
}

/// A word in the free monoid on `{X1..Xm}`; the empty word is the constant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(vars: impl AsRef<[Var]>) -> Self {
        Monomial(vars.as_ref().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    /// Number of occurrences of the variable `j`.
    pub fn count(&self, j: Var) -> usize {
        self.0.iter().filter(|&&v| v == j).count()
    }

    fn concat(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("X{v}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for Monomial {
    type Err = String;

    /// Parses the serialized key form: `""` is the constant, otherwise
    /// dot-separated `X<j>` factors, e.g. `"X1.X2.X1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Monomial::empty());
        }
        let mut vars = Vec::new();
        for part in s.split('.') {
            let digits = part
                .strip_prefix('X')
                .ok_or_else(|| format!("bad monomial factor `{part}`"))?;
            let v: Var = digits
                .parse()
                .map_err(|_| format!("bad variable index `{digits}`"))?;
            if v == 0 {
                return Err("variable indices are 1-based".into());
            }
            vars.push(v);
        }
        Ok(Monomial(vars))
    }
}

/// An element of Z<X1..Xm> / (degree > cap).
///
/// Binary operations panic when the operands disagree on `(vars, cap)`;
/// mixing rings is a programming error, not a data error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusSeries {
    vars: u8,
    cap: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusSeries {
    /// The constant series 1.
    pub fn unit(vars: u8, cap: usize) -> Self {
        assert!(vars >= 1, "ring needs at least one variable");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::empty(), BigInt::one());
        MagnusSeries { vars, cap, terms }
    }

    pub fn zero(vars: u8, cap: usize) -> Self {
        MagnusSeries { vars, cap, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        vars: u8,
        cap: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut s = Self::zero(vars, cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn vars(&self) -> u8 {
        self.vars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit_series(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::empty()).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `mono`, zero when absent. Errors only when the
    /// monomial does not even live in the truncated ring.
    pub fn coefficient(&self, mono: &Monomial) -> Result<BigInt, MagnusError> {
        if mono.degree() > self.cap {
            return Err(MagnusError::MonomialTooLong { degree: mono.degree(), cap: self.cap });
        }
        Ok(self.get_coefficient(mono))
    }

    pub(crate) fn get_coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() || mono.degree() > self.cap {
            return;
        }
        debug_assert!(mono.vars().iter().all(|&v| v >= 1 && v <= self.vars));
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(
            (self.vars, self.cap),
            (other.vars, other.cap),
            "series from different rings: ({}, {}) vs ({}, {})",
            self.vars,
            self.cap,
            other.vars,
            other.cap
        );
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars, self.cap);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        MagnusSeries { vars: self.vars, cap: self.cap, terms }
    }

    /// Sub-series of terms whose monomials contain the variable `j` at least
    /// `min_count` times.
    pub fn filter_var_count(&self, j: Var, min_count: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.count(j) >= min_count)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MagnusSeries { vars: self.vars, cap: self.cap, terms }
    }

    /// Two-sided inverse in the truncated ring.
    ///
    /// Panics unless the constant term is +1 or -1 (only such series are
    /// units here).
    pub fn invert(&self) -> Self {
        let c0 = self.constant_term();
        assert!(
            c0.clone().abs().is_one(),
            "cannot invert a series with constant term {c0}"
        );
        // S = c0 (1 + f) with f constant-free, so S^-1 = c0 (1 + f)^-1
        // and (1 + f)^-1 = 1 - f + f^2 - ... exactly, after `cap` steps.
        let mut f = self.scale(&c0); // c0^2 = 1
        f.terms.remove(&Monomial::empty());
        let one = Self::unit(self.vars, self.cap);
        let mut t = one.clone();
        for _ in 0..self.cap {
            t = &one - &(&f * &t);
        }
        t.scale(&c0)
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.invert() } else { self.clone() };
        let mut acc = Self::unit(self.vars, self.cap);
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Magnus expansion of a single generator: `E(a_j) = 1 + X_j`,
    /// `E(a_j^-1) = 1 - X_j + X_j^2 - ...` truncated.
    pub fn expand_generator(j: Var, exponent: i8, vars: u8, cap: usize) -> Result<Self, MagnusError> {
        if j == 0 || j > vars {
            return Err(MagnusError::VarOutOfRange { var: j, vars });
        }
        assert!(exponent == 1 || exponent == -1, "exponent must be +1 or -1");
        let mut gen = Self::unit(vars, cap);
        gen.add_term(Monomial::new([j]), BigInt::one());
        if exponent == 1 {
            Ok(gen)
        } else {
            Ok(gen.invert())
        }
    }

    /// Magnus expansion of a word in the meridian alphabet: the ordered
    /// product of generator expansions. The empty word expands to 1.
    pub fn expand_word(word: &GroupWord, vars: u8, cap: usize) -> Result<Self, MagnusError> {
        match word.alphabet() {
            Alphabet::Meridians(m) if m <= vars => {}
            other => {
                return Err(MagnusError::AlphabetMismatch {
                    alphabet: format!("{other:?}"),
                    vars,
                })
            }
        }
        let mut acc = Self::unit(vars, cap);
        for &(j, e) in word.letters() {
            acc = &acc * &Self::expand_generator(j, e, vars, cap)?;
        }
        Ok(acc)
    }
}

impl Add for &MagnusSeries {
    type Output = MagnusSeries;

    fn add(self, rhs: &MagnusSeries) -> MagnusSeries {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MagnusSeries {
    type Output = MagnusSeries;

    fn sub(self, rhs: &MagnusSeries) -> MagnusSeries {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MagnusSeries {
    type Output = MagnusSeries;

    fn neg(self) -> MagnusSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &MagnusSeries {
    type Output = MagnusSeries;

    /// Truncated product: monomials of degree > cap are discarded.
    fn mul(self, rhs: &MagnusSeries) -> MagnusSeries {
        self.assert_compatible(rhs);
        let mut out = MagnusSeries::zero(self.vars, self.cap);
        for (ma, ca) in self.terms.iter() {
            let budget = self.cap - ma.degree();
            for (mb, cb) in rhs.terms.range(..) {
                if mb.degree() > budget {
                    continue;
                }
                out.add_term(ma.concat(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let mag = c.clone().abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for MagnusSeries {
    /// JSON object mapping monomial strings (`"X1.X2.X1"`, `""` for the
    /// constant) to integer strings, in lexicographic key order.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter() {
            let key = if m.degree() == 0 {
                String::new()
            } else {
                m.vars().iter().map(|v| format!("X{v}")).collect::<Vec<_>>().join(".")
            };
            map.serialize_entry(&key, &c.to_string())?;
        }
        map.end()
    }
}

/// Which generating set a word is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Alphabet {
    /// One generator per link component, `1..=m`.
    Meridians(u8),
    /// One generator per diagram arc (used by the Wirtinger machinery).
    Arcs(usize),
}

/// A word in signed generators, kept as written; free reduction is explicit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupWord {
    alphabet: Alphabet,
    letters: Vec<(Var, i8)>,
}

impl GroupWord {
    pub fn new(alphabet: Alphabet, letters: Vec<(Var, i8)>) -> Result<Self, MagnusError> {
        let bound = match alphabet {
            Alphabet::Meridians(m) => m as usize,
            Alphabet::Arcs(n) => n,
        };
        for &(g, e) in &letters {
            assert!(e == 1 || e == -1, "letter exponents must be +1 or -1");
            if g == 0 || g as usize > bound {
                return Err(MagnusError::VarOutOfRange { var: g, vars: bound.min(255) as u8 });
            }
        }
        Ok(GroupWord { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        GroupWord { alphabet, letters: Vec::new() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[(Var, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancels adjacent inverse pairs until none remain; idempotent.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<(Var, i8)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            if let Some(&(tg, te)) = stack.last() {
                if tg == g && te == -e {
                    stack.pop();
                    continue;
                }
            }
            stack.push((g, e));
        }
        GroupWord { alphabet: self.alphabet, letters: stack }
    }

    /// The formal inverse: letters reversed with exponents flipped.
    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        GroupWord { alphabet: self.alphabet, letters }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.alphabet, other.alphabet, "cannot concatenate words over different alphabets");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { alphabet: self.alphabet, letters }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e == 1 { format!("a{g}") } else { format!("a{g}^-1") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(vars: u8, cap: usize, j: Var) -> MagnusSeries {
        MagnusSeries::from_terms(vars, cap, [(Monomial::new([j]), BigInt::one())])
    }

    #[test]
    fn unit_has_only_constant() {
        let one = MagnusSeries::unit(2, 4);
        assert_eq!(one.term_count(), 1);
        assert_eq!(one.constant_term(), BigInt::one());
        assert_eq!(one.coefficient(&Monomial::new([1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn unit_is_neutral() {
        let one = MagnusSeries::unit(2, 3);
        let s = &(&one + &x(2, 3, 1)) * &(&one + &x(2, 3, 2));
        assert_eq!(&one * &s, s);
        assert_eq!(&s * &one, s);
    }

    #[test]
    fn geometric_inverse_truncates_to_one() {
        // (1+X1)(1 - X1 + X1^2) = 1 + X1^3 = 1 at cap 2
        let one = MagnusSeries::unit(1, 2);
        let a = &one + &x(1, 2, 1);
        let b = a.invert();
        assert_eq!(&a * &b, one);
        assert_eq!(&b * &a, one);
    }

    #[test]
    fn product_is_noncommutative() {
        let f = MagnusSeries::from_terms(2, 4, [(Monomial::new([1, 2]), BigInt::one())]);
        let g = MagnusSeries::from_terms(2, 4, [(Monomial::new([2, 1]), BigInt::one())]);
        let fg = &f * &g;
        let gf = &g * &f;
        assert_eq!(fg.get_coefficient(&Monomial::new([1, 2, 2, 1])), BigInt::one());
        assert_eq!(gf.get_coefficient(&Monomial::new([2, 1, 1, 2])), BigInt::one());
        assert_ne!(fg, gf);
    }

    #[test]
    fn binomial_product() {
        let one = MagnusSeries::unit(2, 2);
        let p = &(&one + &x(2, 2, 1)) * &(&one + &x(2, 2, 2));
        assert_eq!(p.get_coefficient(&Monomial::empty()), BigInt::one());
        assert_eq!(p.get_coefficient(&Monomial::new([1])), BigInt::one());
        assert_eq!(p.get_coefficient(&Monomial::new([2])), BigInt::one());
        assert_eq!(p.get_coefficient(&Monomial::new([1, 2])), BigInt::one());
        assert_eq!(p.get_coefficient(&Monomial::new([2, 1])), BigInt::zero());
        assert_eq!(p.term_count(), 4);
    }

    #[test]
    fn expand_generator_matches_substitution() {
        let e = MagnusSeries::expand_generator(1, 1, 2, 3).unwrap();
        assert_eq!(e.term_count(), 2);
        assert_eq!(e.get_coefficient(&Monomial::new([1])), BigInt::one());

        // 1 - X1 + X1^2 - X1^3
        let e = MagnusSeries::expand_generator(1, -1, 2, 3).unwrap();
        assert_eq!(e.get_coefficient(&Monomial::empty()), BigInt::one());
        assert_eq!(e.get_coefficient(&Monomial::new([1])), BigInt::from(-1));
        assert_eq!(e.get_coefficient(&Monomial::new([1, 1])), BigInt::one());
        assert_eq!(e.get_coefficient(&Monomial::new([1, 1, 1])), BigInt::from(-1));
        assert_eq!(e.term_count(), 4);

        assert_eq!(
            MagnusSeries::expand_generator(3, 1, 2, 3),
            Err(MagnusError::VarOutOfRange { var: 3, vars: 2 })
        );
    }

    #[test]
    fn generator_inverse_pair_cancels() {
        let one = MagnusSeries::unit(2, 5);
        let a = MagnusSeries::expand_generator(1, 1, 2, 5).unwrap();
        let b = MagnusSeries::expand_generator(1, -1, 2, 5).unwrap();
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn commutator_expansion() {
        // E(a1 a2 a1^-1 a2^-1) = 1 + X1X2 - X2X1 at cap 2 (hand multiplication)
        let w = GroupWord::new(
            Alphabet::Meridians(2),
            vec![(1, 1), (2, 1), (1, -1), (2, -1)],
        )
        .unwrap();
        let e = MagnusSeries::expand_word(&w, 2, 2).unwrap();
        let expected = MagnusSeries::from_terms(
            2,
            2,
            [
                (Monomial::empty(), BigInt::one()),
                (Monomial::new([1, 2]), BigInt::one()),
                (Monomial::new([2, 1]), BigInt::from(-1)),
            ],
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn empty_word_expands_to_one() {
        let w = GroupWord::empty(Alphabet::Meridians(2));
        assert_eq!(MagnusSeries::expand_word(&w, 2, 4).unwrap(), MagnusSeries::unit(2, 4));
    }

    #[test]
    fn reducible_word_expands_to_one() {
        let w = GroupWord::new(Alphabet::Meridians(2), vec![(1, -1), (1, 1)]).unwrap();
        assert_eq!(MagnusSeries::expand_word(&w, 2, 4).unwrap(), MagnusSeries::unit(2, 4));
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let w = GroupWord::new(Alphabet::Arcs(4), vec![(3, 1)]).unwrap();
        assert!(MagnusSeries::expand_word(&w, 4, 2).is_err());
        let w = GroupWord::new(Alphabet::Meridians(5), vec![(5, 1)]).unwrap();
        assert!(MagnusSeries::expand_word(&w, 4, 2).is_err());
    }

    #[test]
    fn coefficient_respects_cap() {
        let one = MagnusSeries::unit(2, 2);
        assert_eq!(
            one.coefficient(&Monomial::new([1, 2, 1])),
            Err(MagnusError::MonomialTooLong { degree: 3, cap: 2 })
        );
        assert_eq!(one.coefficient(&Monomial::new([1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn coefficient_order_sensitivity() {
        let w = GroupWord::new(Alphabet::Meridians(2), vec![(1, 1), (2, 1)]).unwrap();
        let e = MagnusSeries::expand_word(&w, 2, 3).unwrap();
        assert_eq!(e.get_coefficient(&Monomial::new([1, 2])), BigInt::one());
        assert_eq!(e.get_coefficient(&Monomial::new([2, 1])), BigInt::zero());
    }

    #[test]
    fn filter_by_variable_count() {
        let s = MagnusSeries::from_terms(
            2,
            3,
            [
                (Monomial::empty(), BigInt::one()),
                (Monomial::new([1]), BigInt::one()),
                (Monomial::new([1, 2, 1]), BigInt::one()),
            ],
        );
        let f = s.filter_var_count(1, 2);
        assert_eq!(f.term_count(), 1);
        assert_eq!(f.get_coefficient(&Monomial::new([1, 2, 1])), BigInt::one());
        assert_eq!(s.filter_var_count(1, 0), s);
    }

    #[test]
    fn free_reduction_is_idempotent() {
        let w = GroupWord::new(
            Alphabet::Meridians(2),
            vec![(1, 1), (2, 1), (2, -1), (1, -1), (1, 1)],
        )
        .unwrap();
        let r = w.free_reduce();
        assert_eq!(r.letters(), &[(1, 1)]);
        assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn series_json_shape() {
        let s = MagnusSeries::from_terms(
            2,
            2,
            [
                (Monomial::empty(), BigInt::one()),
                (Monomial::new([1, 2]), BigInt::from(-3)),
            ],
        );
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"":"1","X1.X2":"-3"}"#);
    }

    #[test]
    fn monomial_string_round_trip() {
        let m = Monomial::new([1, 2, 1]);
        assert_eq!(m.to_string(), "X1.X2.X1");
        assert_eq!("X1.X2.X1".parse::<Monomial>().unwrap(), m);
        assert_eq!("".parse::<Monomial>().unwrap(), Monomial::empty());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        const VARS: u8 = 3;
        const CAP: usize = 4;

        fn arb_monomial() -> impl Strategy<Value = Monomial> {
            prop::collection::vec(1..=VARS, 0..=CAP).prop_map(Monomial::new)
        }

        fn arb_series() -> impl Strategy<Value = MagnusSeries> {
            prop::collection::vec((arb_monomial(), -4i64..=4), 0..6).prop_map(|terms| {
                MagnusSeries::from_terms(
                    VARS,
                    CAP,
                    terms.into_iter().map(|(m, c)| (m, BigInt::from(c))),
                )
            })
        }

        fn arb_constant_free() -> impl Strategy<Value = MagnusSeries> {
            arb_series().prop_map(|s| {
                let terms: Vec<_> = s
                    .terms()
                    .filter(|(m, _)| m.degree() > 0)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                MagnusSeries::from_terms(VARS, CAP, terms)
            })
        }

        fn arb_word() -> impl Strategy<Value = GroupWord> {
            prop::collection::vec((1..=VARS, prop::bool::ANY), 0..30).prop_map(|ls| {
                GroupWord::new(
                    Alphabet::Meridians(VARS),
                    ls.into_iter().map(|(g, pos)| (g, if pos { 1 } else { -1 })).collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #[test]
            fn mul_is_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }

            #[test]
            fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            }

            #[test]
            fn expand_word_is_morphism(u in arb_word(), v in arb_word()) {
                let uv = u.concat(&v);
                let sides = (
                    MagnusSeries::expand_word(&uv, VARS, 6).unwrap(),
                    &MagnusSeries::expand_word(&u, VARS, 6).unwrap()
                        * &MagnusSeries::expand_word(&v, VARS, 6).unwrap(),
                );
                prop_assert_eq!(sides.0, sides.1);
            }

            #[test]
            fn word_inverse_cancels(w in arb_word()) {
                let e = MagnusSeries::expand_word(&w, VARS, 6).unwrap();
                let einv = MagnusSeries::expand_word(&w.inverse(), VARS, 6).unwrap();
                prop_assert_eq!(&e * &einv, MagnusSeries::unit(VARS, 6));
                prop_assert_eq!(einv, e.invert());
            }

            #[test]
            fn double_inverse_is_identity(f in arb_constant_free()) {
                let s = &MagnusSeries::unit(VARS, CAP) + &f;
                prop_assert_eq!(s.invert().invert(), s);
            }

            #[test]
            fn inverse_correction_identity(f in arb_constant_free()) {
                // with 1+g := (1+f)^-1 we get f + g = -fg = -gf
                let one = MagnusSeries::unit(VARS, CAP);
                let g = &(&one + &f).invert() - &one;
                let sum = &f + &g;
                prop_assert_eq!(&sum, &-&(&f * &g));
                prop_assert_eq!(&sum, &-&(&g * &f));
            }
        }
    }
}
