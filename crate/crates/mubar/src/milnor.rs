//! Milnor invariants from a link diagram.
//!
//! The pipeline: a Wirtinger presentation (one generator per arc, one
//! conjugation relation per crossing), an iterated substitution that
//! rewrites every arc generator as a conjugate of its component's base
//! meridian inside the truncated Magnus ring, the preferred longitude of
//! each component as a product of over-arc expansions with a framing
//! correction, and finally the coefficients `mu(I)`, the gcd indeterminacy
//! `delta(I)`, and the residue `mu_bar(I)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::diagram::{ArcId, LinkDiagram};
use crate::magnus::{MagnusSeries, Monomial, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MilnorError {
    #[error("multi-index of length {len} exceeds the degree cap {cap}")]
    LengthExceedsCap { len: usize, cap: usize },
    #[error("multi-index entry {entry} out of range 1..={m}")]
    EntryOutOfRange { entry: u8, m: usize },
    #[error("table would evaluate {needed} indices, over the ceiling {ceiling}")]
    IndexCeiling { needed: usize, ceiling: usize },
    #[error("multi-index must be nonempty")]
    EmptyIndex,
    #[error("bad multi-index string `{0}`")]
    BadIndexString(String),
}

/// A sequence of component indices `i_1 .. i_k`, the argument of `mu_bar`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<u8>>) -> Result<Self, MilnorError> {
        let entries = entries.into();
        if entries.is_empty() {
            return Err(MilnorError::EmptyIndex);
        }
        if let Some(&e) = entries.iter().find(|&&e| e == 0) {
            return Err(MilnorError::EntryOutOfRange { entry: e, m: 255 });
        }
        Ok(MultiIndex(entries))
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn last(&self) -> u8 {
        *self.0.last().unwrap()
    }

    /// All entries but the last; the monomial whose coefficient is `mu`.
    pub fn prefix(&self) -> &[u8] {
        &self.0[..self.0.len() - 1]
    }

    /// Maximum multiplicity of any entry (`r(I)`).
    pub fn repeat_count(&self) -> usize {
        let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
        for &e in &self.0 {
            *counts.entry(e).or_insert(0) += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub fn rotation(&self, by: usize) -> Self {
        let k = self.0.len();
        let mut v = Vec::with_capacity(k);
        for t in 0..k {
            v.push(self.0[(t + by) % k]);
        }
        MultiIndex(v)
    }

    /// Every index obtained by removing at least one entry (by position) and
    /// cyclically rotating the remainder, deduplicated, length >= 2 only.
    pub fn removal_rotations(&self) -> BTreeSet<MultiIndex> {
        let k = self.0.len();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << k) {
            let kept: Vec<u8> = (0..k).filter(|t| mask & (1 << t) == 0).map(|t| self.0[t]).collect();
            if kept.len() < 2 {
                continue;
            }
            let j = MultiIndex(kept);
            for by in 0..j.len() {
                out.insert(j.rotation(by));
            }
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    /// Digits when every entry fits one digit (`"1123"`), else dotted
    /// (`"10.2.1"`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&e| e <= 9) {
            for e in &self.0 {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl FromStr for MultiIndex {
    type Err = MilnorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries: Vec<u8> = if s.contains('.') {
            s.split('.')
                .map(|p| p.parse().map_err(|_| MilnorError::BadIndexString(s.into())))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(MilnorError::BadIndexString(s.into())))
                .collect::<Result<_, _>>()?
        };
        MultiIndex::new(entries)
    }
}

/// `mu(I)` together with its indeterminacy: `mu_bar` is `mu` itself when
/// `delta = 0` and the canonical residue in `[0, delta)` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MilnorValue {
    pub index: MultiIndex,
    pub mu: BigInt,
    pub delta: BigInt,
    pub mu_bar: BigInt,
}

impl MilnorValue {
    fn assemble(index: MultiIndex, mu: BigInt, delta: BigInt) -> Self {
        debug_assert!(!delta.is_negative());
        let mu_bar = if delta.is_zero() { mu.clone() } else { mu.mod_floor(&delta) };
        MilnorValue { index, mu, delta, mu_bar }
    }

    /// True when the residue class is zero (`mu_bar = 0`).
    pub fn vanishes(&self) -> bool {
        self.mu_bar.is_zero()
    }

    /// Does the integer `expected` land in this residue class?
    pub fn matches(&self, expected: &BigInt) -> bool {
        if self.delta.is_zero() {
            self.mu == *expected
        } else {
            (&self.mu - expected).mod_floor(&self.delta).is_zero()
        }
    }
}

impl fmt::Display for MilnorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.delta.is_zero() {
            write!(f, "mu_bar({}) = {}", self.index, self.mu)
        } else {
            write!(f, "mu_bar({}) = {} mod {} (mu = {})", self.index, self.mu_bar, self.delta, self.mu)
        }
    }
}

impl Serialize for MilnorValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MilnorValue", 4)?;
        st.serialize_field("index", &self.index.to_string())?;
        st.serialize_field("mu", &json_int(&self.mu))?;
        st.serialize_field("delta", &json_int(&self.delta))?;
        st.serialize_field("mu_bar", &json_int(&self.mu_bar))?;
        st.end()
    }
}

/// Arbitrary-precision integers as plain JSON numbers.
pub(crate) fn json_int(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integer string is a valid JSON number")
}

/// One generator per arc, one conjugation relation per crossing:
/// `g_out = g_over^(-sign) g_in g_over^(sign)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerPresentation {
    arc_components: Vec<usize>,
    relations: Vec<WirtingerRelation>,
    base_arcs: Vec<ArcId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WirtingerRelation {
    pub out_arc: ArcId,
    pub in_arc: ArcId,
    pub over_arc: ArcId,
    pub sign: i8,
}

impl WirtingerPresentation {
    pub fn generator_count(&self) -> usize {
        self.arc_components.len()
    }

    pub fn component_of_generator(&self, arc: ArcId) -> usize {
        self.arc_components[arc]
    }

    pub fn relations(&self) -> &[WirtingerRelation] {
        &self.relations
    }

    /// Base arc per component, indexed by component - 1; these generators
    /// are the meridians.
    pub fn base_arcs(&self) -> &[ArcId] {
        &self.base_arcs
    }
}

/// Reads the Wirtinger presentation off a validated diagram.
pub fn wirtinger(d: &LinkDiagram) -> WirtingerPresentation {
    let arc_components = d.arcs().iter().map(|a| a.component()).collect();
    let relations = (0..d.crossing_count())
        .map(|ci| WirtingerRelation {
            out_arc: d.under_out_arc(ci),
            in_arc: d.under_in_arc(ci),
            over_arc: d.over_arc(ci),
            sign: d.crossings()[ci].sign(),
        })
        .collect();
    let base_arcs = (1..=d.component_count()).map(|i| d.base_arc(i)).collect();
    WirtingerPresentation { arc_components, relations, base_arcs }
}

struct WalkStep {
    to_arc: ArcId,
    over_arc: ArcId,
    sign: i8,
}

/// The cached reduction of one diagram at one degree cap: every arc
/// generator expanded as a series conjugate to its base meridian, and the
/// preferred longitude of every component.
///
/// Building the engine runs the full fixpoint iteration once; `mu`,
/// `indeterminacy` and the table queries are then coefficient lookups.
pub struct MilnorEngine {
    m: usize,
    cap: usize,
    arc_series: Vec<MagnusSeries>,
    longitudes: Vec<MagnusSeries>,
}

impl MilnorEngine {
    pub fn new(d: &LinkDiagram, cap: usize) -> Self {
        assert!(cap >= 1, "degree cap must be at least 1");
        let m = d.component_count();
        assert!(m <= u8::MAX as usize, "too many components");
        let mv = m as u8;
        let n_arcs = d.arcs().len();

        let meridian = |c: usize| {
            MagnusSeries::expand_generator(c as Var, 1, mv, cap).expect("component index in range")
        };

        // walk structure per component
        let mut walks: Vec<Vec<WalkStep>> = Vec::with_capacity(m);
        for i in 1..=m {
            let crossings = d.under_passes_from_base(i);
            let steps: Vec<WalkStep> = crossings
                .iter()
                .map(|&ci| WalkStep {
                    to_arc: d.under_out_arc(ci),
                    over_arc: d.over_arc(ci),
                    sign: d.crossings()[ci].sign(),
                })
                .collect();
            if let Some(last) = steps.last() {
                debug_assert_eq!(last.to_arc, d.base_arc(i), "component walk must close at the base arc");
            }
            walks.push(steps);
        }
        let over_arcs: BTreeSet<ArcId> =
            walks.iter().flatten().map(|s| s.over_arc).collect();

        // iteration 0: every arc generator is its base meridian
        let mut cur: Vec<MagnusSeries> =
            d.arcs().iter().map(|a| meridian(a.component())).collect();

        // `cap` substitution passes, then one more that must change nothing
        for pass in 0..=cap {
            let mut inverses: BTreeMap<ArcId, MagnusSeries> = BTreeMap::new();
            for &a in &over_arcs {
                inverses.insert(a, cur[a].invert());
            }
            let mut next: Vec<MagnusSeries> = vec![MagnusSeries::zero(mv, cap); n_arcs];
            for i in 1..=m {
                let base = d.base_arc(i);
                let mut series = meridian(i);
                next[base] = series.clone();
                let steps = &walks[i - 1];
                for (t, step) in steps.iter().enumerate() {
                    let conj = &cur[step.over_arc];
                    let conj_inv = &inverses[&step.over_arc];
                    series = if step.sign == 1 {
                        &(conj_inv * &series) * conj
                    } else {
                        &(conj * &series) * conj_inv
                    };
                    if t + 1 < steps.len() {
                        next[step.to_arc] = series.clone();
                    }
                    // the final relation re-derives the base arc; it is the
                    // redundant one and is not applied
                }
            }
            if pass == cap {
                assert_eq!(next, cur, "meridian reduction did not reach its fixpoint");
            }
            cur = next;
        }

        // preferred longitudes: over-arc expansions along the walk, then the
        // framing correction (1 + X_i)^(-w_i)
        let mut longitudes = Vec::with_capacity(m);
        for i in 1..=m {
            let mut series = MagnusSeries::unit(mv, cap);
            for step in &walks[i - 1] {
                let over = &cur[step.over_arc];
                series = if step.sign == 1 { &series * over } else { &series * &over.invert() };
            }
            let w = d.self_writhe(i).expect("component index in range");
            series = &series * &meridian(i).pow(-w);
            let self_coeff = series
                .coefficient(&Monomial::new([i as Var]))
                .expect("degree-one monomial fits any cap");
            assert!(
                self_coeff.is_zero(),
                "longitude of component {i} is not preferred (X_{i} coefficient {self_coeff})"
            );
            longitudes.push(series);
        }

        MilnorEngine { m, cap, arc_series: cur, longitudes }
    }

    pub fn component_count(&self) -> usize {
        self.m
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn arc_series(&self, arc: ArcId) -> &MagnusSeries {
        &self.arc_series[arc]
    }

    pub fn arc_series_map(&self) -> BTreeMap<ArcId, MagnusSeries> {
        self.arc_series.iter().cloned().enumerate().collect()
    }

    /// Magnus expansion of the preferred longitude of component `i`.
    pub fn longitude(&self, i: usize) -> &MagnusSeries {
        &self.longitudes[i - 1]
    }

    fn check_index(&self, index: &MultiIndex) -> Result<(), MilnorError> {
        if index.len() > self.cap {
            return Err(MilnorError::LengthExceedsCap { len: index.len(), cap: self.cap });
        }
        if let Some(&e) = index.entries().iter().find(|&&e| e as usize > self.m) {
            return Err(MilnorError::EntryOutOfRange { entry: e, m: self.m });
        }
        Ok(())
    }

    /// The coefficient of `X_{i_1} .. X_{i_{k-1}}` in the longitude
    /// expansion of component `i_k`.
    pub fn mu(&self, index: &MultiIndex) -> Result<BigInt, MilnorError> {
        self.check_index(index)?;
        let mono = Monomial::new(index.prefix());
        Ok(self.longitude(index.last() as usize).get_coefficient(&mono))
    }

    /// gcd of `|mu(J)|` over all indices obtained from `I` by removing at
    /// least one entry and cyclically permuting the rest; zero when every
    /// such value vanishes (in particular for `|I| <= 2`).
    pub fn indeterminacy(&self, index: &MultiIndex) -> Result<BigInt, MilnorError> {
        self.check_index(index)?;
        let mut g = BigInt::zero();
        for j in index.removal_rotations() {
            g = g.gcd(&self.mu(&j)?);
        }
        Ok(g)
    }

    pub fn mu_bar(&self, index: &MultiIndex) -> Result<MilnorValue, MilnorError> {
        let mu = self.mu(index)?;
        let delta = self.indeterminacy(index)?;
        Ok(MilnorValue::assemble(index.clone(), mu, delta))
    }

    /// All values for `2 <= |I| <= max_length` in shortlex order, optionally
    /// restricted to `r(I) <= repeat_bound`. Refuses to enumerate more than
    /// `ceiling` indices.
    pub fn invariant_table(
        &self,
        max_length: usize,
        repeat_bound: Option<usize>,
        ceiling: usize,
    ) -> Result<Vec<MilnorValue>, MilnorError> {
        if max_length > self.cap {
            return Err(MilnorError::LengthExceedsCap { len: max_length, cap: self.cap });
        }
        let mut needed = 0usize;
        for k in 2..=max_length {
            needed = needed.saturating_add(self.m.saturating_pow(k as u32));
        }
        if needed > ceiling {
            return Err(MilnorError::IndexCeiling { needed, ceiling });
        }

        let mut out = Vec::new();
        for k in 2..=max_length {
            let mut entries = vec![1u8; k];
            loop {
                let index = MultiIndex::new(entries.clone()).unwrap();
                if repeat_bound.map_or(true, |r| index.repeat_count() <= r) {
                    out.push(self.mu_bar(&index)?);
                }
                // next index in lexicographic order
                let mut pos = k;
                while pos > 0 {
                    if (entries[pos - 1] as usize) < self.m {
                        entries[pos - 1] += 1;
                        break;
                    }
                    entries[pos - 1] = 1;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Default guard for table enumeration; the CLI can override it.
pub const DEFAULT_INDEX_CEILING: usize = 2_000_000;

/// Arc-generator series for every arc of the diagram (the fixpoint of the
/// substitution), keyed by arc id.
pub fn reduce_to_meridians(d: &LinkDiagram, cap: usize) -> BTreeMap<ArcId, MagnusSeries> {
    MilnorEngine::new(d, cap).arc_series_map()
}

pub fn longitude_series(d: &LinkDiagram, i: usize, cap: usize) -> MagnusSeries {
    MilnorEngine::new(d, cap).longitude(i).clone()
}

pub fn mu(d: &LinkDiagram, index: &MultiIndex, cap: usize) -> Result<BigInt, MilnorError> {
    MilnorEngine::new(d, cap).mu(index)
}

pub fn indeterminacy(d: &LinkDiagram, index: &MultiIndex, cap: usize) -> Result<BigInt, MilnorError> {
    MilnorEngine::new(d, cap).indeterminacy(index)
}

pub fn mu_bar(d: &LinkDiagram, index: &MultiIndex, cap: usize) -> Result<MilnorValue, MilnorError> {
    MilnorEngine::new(d, cap).mu_bar(index)
}

pub fn invariant_table(
    d: &LinkDiagram,
    max_length: usize,
    repeat_bound: Option<usize>,
) -> Result<Vec<MilnorValue>, MilnorError> {
    MilnorEngine::new(d, max_length.max(1)).invariant_table(
        max_length,
        repeat_bound,
        DEFAULT_INDEX_CEILING,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn wirtinger_counts() {
        let hopf = links::hopf_positive();
        let p = wirtinger(&hopf);
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relations().len(), 2);
        assert_eq!(p.base_arcs().len(), 2);

        let unknot = links::unknot();
        let p = wirtinger(&unknot);
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relations().len(), 0);

        let kink = links::unknot_kinked(&[1]);
        let p = wirtinger(&kink);
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relations().len(), 1);

        let trefoil = links::trefoil();
        let p = wirtinger(&trefoil);
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relations().len(), 3);
        // every open arc is the out-arc of exactly one relation
        for arc in 0..3 {
            assert_eq!(p.relations().iter().filter(|r| r.out_arc == arc).count(), 1);
        }
    }

    #[test]
    fn unknot_reduces_to_meridian() {
        let d = links::unknot();
        let map = reduce_to_meridians(&d, 3);
        let expected = MagnusSeries::expand_generator(1, 1, 1, 3).unwrap();
        assert_eq!(map[&0], expected);
    }

    #[test]
    fn arc_series_are_meridian_conjugates() {
        for d in [links::trefoil(), links::borromean(), links::hopf_four_crossing()] {
            let engine = MilnorEngine::new(&d, 4);
            for (aid, arc) in d.arcs().iter().enumerate() {
                let s = engine.arc_series(aid);
                assert_eq!(s.constant_term(), 1.into());
                let c = arc.component() as Var;
                assert_eq!(s.get_coefficient(&Monomial::new([c])), 1.into());
                // degree-1 part is exactly X_c
                for v in 1..=d.component_count() as Var {
                    if v != c {
                        assert_eq!(s.get_coefficient(&Monomial::new([v])), 0.into());
                    }
                }
            }
        }
    }

    #[test]
    fn longitudes_of_split_components_are_trivial() {
        let d = links::unlink(3);
        let engine = MilnorEngine::new(&d, 4);
        for i in 1..=3 {
            assert!(engine.longitude(i).is_unit_series());
        }
    }

    #[test]
    fn hopf_longitude_reads_linking_number() {
        let d = links::hopf_positive();
        let engine = MilnorEngine::new(&d, 3);
        assert_eq!(engine.longitude(2).get_coefficient(&Monomial::new([1])), 1.into());
        assert_eq!(engine.longitude(1).get_coefficient(&Monomial::new([2])), 1.into());
    }

    #[test]
    fn trefoil_longitude_is_preferred() {
        let d = links::trefoil();
        let engine = MilnorEngine::new(&d, 4);
        assert_eq!(engine.longitude(1).get_coefficient(&Monomial::new([1])), 0.into());
    }

    #[test]
    fn mu_matches_linking_number_oracle() {
        let diagrams = [
            links::hopf_positive(),
            links::hopf_negative(),
            links::hopf_four_crossing(),
            links::borromean(),
            links::unlink(2),
            links::unlink_crossed(),
        ];
        for d in &diagrams {
            let engine = MilnorEngine::new(d, 3);
            for i in 1..=d.component_count() {
                for j in 1..=d.component_count() {
                    if i == j {
                        continue;
                    }
                    let index = MultiIndex::new([i as u8, j as u8]).unwrap();
                    assert_eq!(
                        engine.mu(&index).unwrap(),
                        BigInt::from(d.linking_number(i, j).unwrap()),
                        "mu({i}{j}) vs lk on {}",
                        d.to_pd_string()
                    );
                }
            }
        }
    }

    #[test]
    fn mu_ii_vanishes() {
        for d in [links::trefoil(), links::unknot_kinked(&[1, 1, -1]), links::hopf_positive()] {
            let engine = MilnorEngine::new(&d, 2);
            for i in 1..=d.component_count() {
                let index = MultiIndex::new([i as u8, i as u8]).unwrap();
                assert_eq!(engine.mu(&index).unwrap(), BigInt::zero());
            }
        }
    }

    #[test]
    fn borromean_triple_linking() {
        let d = links::borromean();
        let engine = MilnorEngine::new(&d, 3);
        let v = engine.mu_bar(&idx("123")).unwrap();
        assert_eq!(v.mu.clone().abs(), 1.into());
        assert_eq!(v.delta, 0.into());
        assert_eq!(v.mu_bar, v.mu);
        // cyclic symmetry: delta is 0 here, so plain equality
        assert_eq!(engine.mu(&idx("231")).unwrap(), v.mu);
        assert_eq!(engine.mu(&idx("312")).unwrap(), v.mu);
    }

    #[test]
    fn mu_is_stable_in_the_cap() {
        let checks = [
            (links::hopf_positive(), "12"),
            (links::borromean(), "123"),
            (links::borromean(), "1233"),
        ];
        for (d, s) in checks {
            let i = idx(s);
            let small = MilnorEngine::new(&d, i.len()).mu(&i).unwrap();
            for cap in (i.len() + 1)..=(i.len() + 3) {
                assert_eq!(MilnorEngine::new(&d, cap).mu(&i).unwrap(), small, "cap {cap} on {s}");
            }
        }
    }

    #[test]
    fn indeterminacy_by_definition() {
        let hopf = links::hopf_positive();
        let engine = MilnorEngine::new(&hopf, 4);
        // any length-2 index has no sub-index of length >= 2 left
        assert_eq!(engine.indeterminacy(&idx("12")).unwrap(), BigInt::zero());
        // 1122 removes to 12 (mu = 1) among others, so the gcd is 1
        assert_eq!(engine.indeterminacy(&idx("1122")).unwrap(), 1.into());
        let v = engine.mu_bar(&idx("1122")).unwrap();
        assert!(v.vanishes());

        // Borromean: 1233 removes to 123 with mu = +-1, so the gcd is 1 and
        // the residue class is trivial; 123 itself has only vanishing
        // sub-indices (the pairwise linking numbers), so it is an integer.
        let b = links::borromean();
        let engine = MilnorEngine::new(&b, 4);
        assert_eq!(engine.indeterminacy(&idx("1233")).unwrap(), 1.into());
        assert_eq!(engine.indeterminacy(&idx("123")).unwrap(), BigInt::zero());
    }

    #[test]
    fn unlink_table_is_zero() {
        let d = links::unlink(2);
        let table = invariant_table(&d, 4, None).unwrap();
        assert!(table.iter().all(|v| v.vanishes() && v.mu.is_zero()));
    }

    #[test]
    fn hopf_table_has_exactly_the_linking_numbers() {
        let d = links::hopf_positive();
        let table = invariant_table(&d, 2, None).unwrap();
        let nonzero: Vec<String> = table
            .iter()
            .filter(|v| !v.vanishes())
            .map(|v| v.index.to_string())
            .collect();
        assert_eq!(nonzero, vec!["12".to_string(), "21".to_string()]);
    }

    #[test]
    fn borromean_homotopy_table() {
        let d = links::borromean();
        let table =
            MilnorEngine::new(&d, 3).invariant_table(3, Some(1), DEFAULT_INDEX_CEILING).unwrap();
        let nonzero: BTreeSet<String> =
            table.iter().filter(|v| !v.vanishes()).map(|v| v.index.to_string()).collect();
        let expected: BTreeSet<String> =
            ["123", "132", "213", "231", "312", "321"].iter().map(|s| s.to_string()).collect();
        assert_eq!(nonzero, expected);
    }

    #[test]
    fn mirror_negates_even_lengths() {
        let d = links::hopf_positive();
        let m = d.mirror();
        assert_eq!(
            mu(&m, &idx("12"), 2).unwrap(),
            -mu(&d, &idx("12"), 2).unwrap()
        );
        // odd length: the Borromean triple coefficient survives mirroring
        let b = links::borromean();
        let bm = b.mirror();
        assert_eq!(mu(&bm, &idx("123"), 3).unwrap(), mu(&b, &idx("123"), 3).unwrap());
    }

    #[test]
    fn diagram_independence_on_the_golden_set() {
        // two diagrams of the positive Hopf link
        let a = links::hopf_positive();
        let b = links::hopf_four_crossing();
        let ta = invariant_table(&a, 4, None).unwrap();
        let tb = invariant_table(&b, 4, None).unwrap();
        for (va, vb) in ta.iter().zip(&tb) {
            assert_eq!(va.index, vb.index);
            assert_eq!(va.delta, vb.delta, "delta at {}", va.index);
            assert_eq!(va.mu_bar, vb.mu_bar, "residue at {}", va.index);
        }

        // unknot diagrams with different kinks
        for d in [links::unknot_kinked(&[1, -1]), links::unknot_kinked(&[1, 1]), links::unknot()] {
            let t = invariant_table(&d, 4, None).unwrap();
            assert!(t.iter().all(|v| v.mu.is_zero()));
        }
    }

    #[test]
    fn table_respects_the_ceiling() {
        let d = links::borromean();
        let engine = MilnorEngine::new(&d, 3);
        match engine.invariant_table(3, None, 10) {
            Err(MilnorError::IndexCeiling { needed, ceiling: 10 }) => {
                assert_eq!(needed, 9 + 27);
            }
            other => panic!("expected ceiling error, got {other:?}"),
        }
    }

    #[test]
    fn index_parsing_and_r() {
        assert_eq!(idx("1123").repeat_count(), 2);
        assert_eq!(idx("1233212").repeat_count(), 3);
        assert_eq!(idx("123").entries(), &[1, 2, 3]);
        assert_eq!("10.2.1".parse::<MultiIndex>().unwrap().entries(), &[10, 2, 1]);
        assert!("".parse::<MultiIndex>().is_err());
        assert!("1a3".parse::<MultiIndex>().is_err());
    }

    #[test]
    fn removal_rotations_literal() {
        let js = idx("123").removal_rotations();
        let expected: BTreeSet<MultiIndex> =
            ["12", "21", "13", "31", "23", "32"].iter().map(|s| idx(s)).collect();
        assert_eq!(js, expected);
        assert!(idx("12").removal_rotations().is_empty());
    }

    #[test]
    fn errors_are_reported() {
        let d = links::hopf_positive();
        let engine = MilnorEngine::new(&d, 2);
        assert!(matches!(
            engine.mu(&idx("1212")),
            Err(MilnorError::LengthExceedsCap { len: 4, cap: 2 })
        ));
        assert!(matches!(
            engine.mu(&idx("13")),
            Err(MilnorError::EntryOutOfRange { entry: 3, m: 2 })
        ));
    }
}
