//! Oriented link diagrams from planar diagram codes.
//!
//! The text grammar is `X[a,b,c,d]` terms (edge labels listed
//! counterclockwise starting from the incoming under-strand) separated by
//! semicolons or newlines, with an optional per-crossing sign suffix `+`/`-`,
//! plus `O[a]` terms for crossingless components. Signed Gauss codes are
//! accepted with a `G:` prefix and converted to the same internal form.
//!
//! Orientation conventions, fixed once for the whole crate:
//!
//! - Each edge label appears exactly twice; the under-strand runs `a -> c`.
//! - A crossing is positive when the over-strand enters at slot `d`
//!   (equivalently: rotating the over direction a quarter turn
//!   counterclockwise gives the under direction).
//! - Components are numbered 1..m by the first textual appearance of any of
//!   their edges. Arcs (maximal runs between under-passes) are numbered by
//!   their smallest edge; the base arc of a component is its smallest arc.
//! - A component that never passes under anything (including `O[a]` loops)
//!   is a single closed arc. Its orientation cannot be read off the
//!   under-strand slots, so it is fixed canonically: the smallest edge of
//!   the component runs from its first textual occurrence to its second.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type EdgeId = usize;
pub type ArcId = usize;

#[derive(Debug, Error)]
pub enum PdError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inconsistent diagram: {}", format_violations(.0))]
    Inconsistent(Vec<Violation>),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A structural defect found while assembling a diagram. Violations are
/// data, not failures: `validate` reports them, `from_data` refuses on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// An edge label must occur exactly twice among crossing slots.
    EdgeUseCount { label: u32, uses: usize },
    /// A crossingless-loop label may not also appear in a crossing.
    LoopEdgeInCrossing { label: u32 },
    DuplicateLoop { label: u32 },
    /// The strand directions forced by the under-slots cannot be satisfied.
    OrientationConflict { label: u32 },
    SignMismatch { crossing: usize, declared: i8, computed: i8 },
    NoComponents,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeUseCount { label, uses } => {
                write!(f, "edge {label} used {uses} times (expected exactly 2)")
            }
            Violation::LoopEdgeInCrossing { label } => {
                write!(f, "loop edge {label} also appears in a crossing")
            }
            Violation::DuplicateLoop { label } => write!(f, "duplicate loop label {label}"),
            Violation::OrientationConflict { label } => {
                write!(f, "no consistent orientation for edge {label}")
            }
            Violation::SignMismatch { crossing, declared, computed } => write!(
                f,
                "crossing {crossing}: declared sign {declared:+} contradicts orientation (computed {computed:+})"
            ),
            Violation::NoComponents => write!(f, "diagram has no components"),
        }
    }
}

/// Raw crossing as written: four edge labels counterclockwise from the
/// incoming under-strand, plus an optional declared sign to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCrossing {
    pub slots: [u32; 4],
    pub sign: Option<i8>,
}

/// One term of a diagram code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Crossing(RawCrossing),
    Loop(u32),
}

/// Unvalidated diagram data; the raw form behind both text grammars and the
/// doubling surgery. Term order matters: components are numbered by the
/// first appearance of any of their edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramData {
    pub terms: Vec<Term>,
}

impl DiagramData {
    pub fn push_crossing(&mut self, rc: RawCrossing) {
        self.terms.push(Term::Crossing(rc));
    }

    pub fn push_loop(&mut self, label: u32) {
        self.terms.push(Term::Loop(label));
    }

    pub fn crossings(&self) -> impl Iterator<Item = &RawCrossing> {
        self.terms.iter().filter_map(|t| match t {
            Term::Crossing(rc) => Some(rc),
            Term::Loop(_) => None,
        })
    }

    pub fn loops(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().filter_map(|t| match t {
            Term::Crossing(_) => None,
            Term::Loop(l) => Some(*l),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Orientation pin used by diagram-producing code: the edge sitting at
/// `(crossing, slot)` has its head (its terminal endpoint) there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OrientationHint {
    pub crossing: usize,
    pub slot: usize,
}

/// A validated crossing. `slots` are internal edge ids; the under-strand
/// runs `slots[0] -> slots[2]`, and `over_in_slot` (1 or 3) marks where the
/// over-strand enters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    slots: [EdgeId; 4],
    sign: i8,
    over_in_slot: u8,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn under_in(&self) -> EdgeId {
        self.slots[0]
    }

    pub fn under_out(&self) -> EdgeId {
        self.slots[2]
    }

    pub fn over_in(&self) -> EdgeId {
        self.slots[self.over_in_slot as usize]
    }

    pub fn over_out(&self) -> EdgeId {
        self.slots[4 - self.over_in_slot as usize]
    }
}

/// Maximal strand run between two under-passes, or a closed loop for a
/// component that never dives under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    component: usize,
    edges: Vec<EdgeId>,
    closed: bool,
}

impl Arc {
    pub fn component(&self) -> usize {
        self.component
    }

    /// Edges in traversal order; for an open arc the first edge leaves the
    /// starting under-crossing and the last edge dives under the ending one.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }
}

/// An oriented, ordered link diagram with all combinatorial structure
/// resolved. Immutable after construction; every query is pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    m: usize,
    crossings: Vec<Crossing>,
    loops: Vec<EdgeId>,
    labels: Vec<u32>,
    edge_comp: Vec<usize>,
    edge_succ: Vec<EdgeId>,
    edge_arc: Vec<ArcId>,
    arcs: Vec<Arc>,
}

impl LinkDiagram {
    /// Parses either grammar; Gauss codes are detected by the `G:` prefix.
    pub fn parse(text: &str) -> Result<Self, PdError> {
        if text.trim_start().starts_with("G:") {
            Self::parse_gauss(text)
        } else {
            Self::parse_pd(text)
        }
    }

    pub fn parse_pd(text: &str) -> Result<Self, PdError> {
        let data = parse_pd_text(text)?;
        Self::from_data(&data).map_err(PdError::Inconsistent)
    }

    pub fn parse_gauss(text: &str) -> Result<Self, PdError> {
        let data = parse_gauss_text(text)?;
        Self::from_data(&data).map_err(PdError::Inconsistent)
    }

    pub fn from_data(data: &DiagramData) -> Result<Self, Vec<Violation>> {
        Self::build(data, &[])
    }

    pub(crate) fn from_data_with_hints(
        data: &DiagramData,
        hints: &[OrientationHint],
    ) -> Result<Self, Vec<Violation>> {
        Self::build(data, hints)
    }

    /// Re-checks every structural invariant against the stored data.
    /// Construction already enforces them, so this returns `[]` unless the
    /// machinery itself is broken; it exists so producers of diagrams
    /// (doubling, Gauss conversion) can be audited cheaply.
    pub fn validate(&self) -> Vec<Violation> {
        validate_data(&self.to_data())
    }

    /// The raw data form: normalized labels, declared signs filled in.
    pub fn to_data(&self) -> DiagramData {
        let mut data = DiagramData::default();
        for c in &self.crossings {
            data.push_crossing(RawCrossing {
                slots: [
                    self.labels[c.slots[0]],
                    self.labels[c.slots[1]],
                    self.labels[c.slots[2]],
                    self.labels[c.slots[3]],
                ],
                sign: Some(c.sign),
            });
        }
        for &e in &self.loops {
            data.push_loop(self.labels[e]);
        }
        data
    }

    fn build(data: &DiagramData, hints: &[OrientationHint]) -> Result<Self, Vec<Violation>> {
        let b = Builder::assemble(data, hints)?;
        Ok(b)
    }

    pub fn component_count(&self) -> usize {
        self.m
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_of_edge(&self, e: EdgeId) -> ArcId {
        self.edge_arc[e]
    }

    pub fn component_of_edge(&self, e: EdgeId) -> usize {
        self.edge_comp[e]
    }

    pub fn successor(&self, e: EdgeId) -> EdgeId {
        self.edge_succ[e]
    }

    pub fn edge_label(&self, e: EdgeId) -> u32 {
        self.labels[e]
    }

    /// The arc the crossing's over-strand belongs to.
    pub fn over_arc(&self, crossing: usize) -> ArcId {
        self.edge_arc[self.crossings[crossing].over_in()]
    }

    pub fn under_in_arc(&self, crossing: usize) -> ArcId {
        self.edge_arc[self.crossings[crossing].under_in()]
    }

    pub fn under_out_arc(&self, crossing: usize) -> ArcId {
        self.edge_arc[self.crossings[crossing].under_out()]
    }

    /// Arc ids of component `i`, ascending; the first is the base arc.
    pub fn component_arcs(&self, i: usize) -> Vec<ArcId> {
        (0..self.arcs.len()).filter(|&a| self.arcs[a].component == i).collect()
    }

    /// The designated meridian arc of component `i`: its smallest arc id.
    pub fn base_arc(&self, i: usize) -> ArcId {
        self.check_component(i).expect("component index out of range");
        self.component_arcs(i)[0]
    }

    fn check_component(&self, i: usize) -> Result<(), DiagramQueryError> {
        if i == 0 || i > self.m {
            Err(DiagramQueryError::ComponentOutOfRange { index: i, m: self.m })
        } else {
            Ok(())
        }
    }

    /// Edges of component `i` in traversal order starting from `start`.
    pub fn component_cycle_from(&self, start: EdgeId) -> Vec<EdgeId> {
        let mut cycle = vec![start];
        let mut e = self.edge_succ[start];
        while e != start {
            cycle.push(e);
            e = self.edge_succ[e];
        }
        cycle
    }

    /// Crossings where component `i` dives under, in traversal order
    /// starting from the base arc's starting edge.
    pub fn under_passes_from_base(&self, i: usize) -> Vec<usize> {
        let base = &self.arcs[self.base_arc(i)];
        let start = base.edges[0];
        let mut head_at: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            head_at.insert(c.under_in(), ci);
        }
        self.component_cycle_from(start)
            .into_iter()
            .filter_map(|e| head_at.get(&e).copied())
            .collect()
    }

    /// Blackboard framing of component `i`: sum of signs over its
    /// self-crossings.
    pub fn self_writhe(&self, i: usize) -> Result<i64, DiagramQueryError> {
        self.check_component(i)?;
        Ok(self
            .crossings
            .iter()
            .filter(|c| {
                self.edge_comp[c.under_in()] == i && self.edge_comp[c.over_in()] == i
            })
            .map(|c| c.sign as i64)
            .sum())
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramQueryError> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(DiagramQueryError::SelfLinking { index: i });
        }
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let (u, o) = (self.edge_comp[c.under_in()], self.edge_comp[c.over_in()]);
                (u, o) == (i, j) || (u, o) == (j, i)
            })
            .map(|c| c.sign as i64)
            .sum();
        assert!(total % 2 == 0, "odd signed crossing count between components {i} and {j}");
        Ok(total / 2)
    }

    /// The mirror image: over and under strands swap at every crossing, so
    /// all signs flip.
    pub fn mirror(&self) -> Self {
        let mut data = DiagramData::default();
        let mut hints = Vec::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            let sign = -c.sign;
            let (ui, uo, oi, oo) = (
                self.labels[c.over_in()],
                self.labels[c.over_out()],
                self.labels[c.under_in()],
                self.labels[c.under_out()],
            );
            data.push_crossing(emit_crossing(ui, uo, oi, oo, sign));
            hints.push(OrientationHint { crossing: ci, slot: over_in_slot_for(sign) });
        }
        for &e in &self.loops {
            data.push_loop(self.labels[e]);
        }
        Self::from_data_with_hints(&data, &hints)
            .expect("mirror of a valid diagram is valid")
            .with_component_representatives(&self.component_representatives())
    }

    /// One edge label per component, indexed by component - 1.
    pub fn component_representatives(&self) -> Vec<u32> {
        let mut reps = vec![None; self.m];
        for e in 0..self.labels.len() {
            let c = self.edge_comp[e];
            if reps[c - 1].is_none() {
                reps[c - 1] = Some(self.labels[e]);
            }
        }
        reps.into_iter().map(|r| r.expect("every component has an edge")).collect()
    }

    /// Renumbers components so that the component containing label `reps[k]`
    /// becomes component `k+1`. Panics unless `reps` hits each component
    /// exactly once.
    pub fn with_component_representatives(mut self, reps: &[u32]) -> Self {
        assert_eq!(reps.len(), self.m, "need exactly one representative per component");
        let label_to_edge: BTreeMap<u32, EdgeId> =
            self.labels.iter().enumerate().map(|(e, &l)| (l, e)).collect();
        let mut perm = vec![0usize; self.m + 1];
        let mut seen = vec![false; self.m + 1];
        for (k, &label) in reps.iter().enumerate() {
            let e = *label_to_edge.get(&label).expect("representative label not in diagram");
            let old = self.edge_comp[e];
            assert!(!seen[old], "two representatives in one component");
            seen[old] = true;
            perm[old] = k + 1;
        }
        for c in self.edge_comp.iter_mut() {
            *c = perm[*c];
        }
        for a in self.arcs.iter_mut() {
            a.component = perm[a.component];
        }
        self
    }

    /// Euler-characteristic defect of the diagram's rotation system: 0 when
    /// every connected piece of the underlying 4-valent projection embeds
    /// in the sphere as the slot order claims. The slot order at a crossing
    /// (counterclockwise from the incoming under-strand) is an embedding
    /// datum, so a nonzero defect means the crossing data does not describe
    /// a planar diagram.
    pub fn planar_defect(&self) -> i64 {
        if self.crossings.is_empty() {
            return 0; // bare loops are embedded circles
        }
        // darts are (crossing, slot); rotation advances one slot
        // counterclockwise, the involution jumps to the edge's other end
        let nc = self.crossings.len();
        let dart = |ci: usize, si: usize| ci * 4 + si;
        let mut partner: Vec<usize> = vec![usize::MAX; nc * 4];
        let mut occ_of_edge: Vec<Vec<usize>> = vec![Vec::new(); self.labels.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for (si, &e) in c.slots.iter().enumerate() {
                occ_of_edge[e].push(dart(ci, si));
            }
        }
        for occ in &occ_of_edge {
            if occ.len() == 2 {
                partner[occ[0]] = occ[1];
                partner[occ[1]] = occ[0];
            }
        }

        // faces: orbits of rotation-then-involution
        let mut seen = vec![false; nc * 4];
        let mut faces = 0i64;
        for start in 0..nc * 4 {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let (ci, si) = (cur / 4, cur % 4);
                cur = partner[dart(ci, (si + 1) % 4)];
                if cur == start {
                    break;
                }
            }
        }

        // connected pieces of the projection graph (loops excluded)
        let mut comp = vec![usize::MAX; nc];
        let mut pieces = 0usize;
        for c0 in 0..nc {
            if comp[c0] != usize::MAX {
                continue;
            }
            pieces += 1;
            let mut stack = vec![c0];
            while let Some(ci) = stack.pop() {
                if comp[ci] != usize::MAX {
                    continue;
                }
                comp[ci] = pieces;
                for si in 0..4 {
                    let p = partner[dart(ci, si)];
                    stack.push(p / 4);
                }
            }
        }

        // per piece: vertices - edges + faces = 2 on the sphere
        let vertices = nc as i64;
        let edges = 2 * nc as i64;
        vertices - edges + faces - 2 * pieces as i64
    }

    /// Normalized PD text; `parse(to_pd_string())` reproduces the diagram.
    pub fn to_pd_string(&self) -> String {
        let mut terms: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                format!(
                    "X[{},{},{},{}]",
                    self.labels[c.slots[0]],
                    self.labels[c.slots[1]],
                    self.labels[c.slots[2]],
                    self.labels[c.slots[3]]
                )
            })
            .collect();
        terms.extend(self.loops.iter().map(|&e| format!("O[{}]", self.labels[e])));
        terms.join(";")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramQueryError {
    #[error("component index {index} out of range 1..={m}")]
    ComponentOutOfRange { index: usize, m: usize },
    #[error("self-linking of component {index} requested; use self_writhe")]
    SelfLinking { index: usize },
}

/// Slot layout for a crossing with the given resolved strands and sign.
pub(crate) fn emit_crossing(ui: u32, uo: u32, oi: u32, oo: u32, sign: i8) -> RawCrossing {
    let (b, d) = if sign == 1 { (oo, oi) } else { (oi, oo) };
    RawCrossing { slots: [ui, b, uo, d], sign: Some(sign) }
}

pub(crate) fn over_in_slot_for(sign: i8) -> usize {
    if sign == 1 {
        3
    } else {
        1
    }
}

/// Reports every violation in the raw data without constructing a diagram.
pub fn validate_data(data: &DiagramData) -> Vec<Violation> {
    match Builder::assemble(data, &[]) {
        Ok(_) => Vec::new(),
        Err(vs) => vs,
    }
}

// ---------------------------------------------------------------------------
// assembly

struct Builder;

impl Builder {
    fn assemble(data: &DiagramData, hints: &[OrientationHint]) -> Result<LinkDiagram, Vec<Violation>> {
        let mut violations = Vec::new();

        if data.is_empty() {
            return Err(vec![Violation::NoComponents]);
        }

        // normalize labels in textual (term) order
        let mut label_of: Vec<u32> = Vec::new();
        let mut id_of: BTreeMap<u32, EdgeId> = BTreeMap::new();
        let intern = |label: u32, label_of: &mut Vec<u32>, id_of: &mut BTreeMap<u32, EdgeId>| {
            *id_of.entry(label).or_insert_with(|| {
                label_of.push(label);
                label_of.len() - 1
            })
        };
        let mut loop_edges: Vec<EdgeId> = Vec::new();
        let mut crossings_raw: Vec<&RawCrossing> = Vec::new();
        for term in &data.terms {
            match term {
                Term::Crossing(rc) => {
                    for &l in &rc.slots {
                        intern(l, &mut label_of, &mut id_of);
                    }
                    crossings_raw.push(rc);
                }
                Term::Loop(l) => {
                    let e = intern(*l, &mut label_of, &mut id_of);
                    if loop_edges.contains(&e) {
                        violations.push(Violation::DuplicateLoop { label: *l });
                    }
                    loop_edges.push(e);
                }
            }
        }
        let n_edges = label_of.len();

        // occurrence lists: (crossing, slot) per edge
        let mut occs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_edges];
        for (ci, rc) in crossings_raw.iter().enumerate() {
            for (si, &l) in rc.slots.iter().enumerate() {
                occs[id_of[&l]].push((ci, si));
            }
        }
        for (e, o) in occs.iter().enumerate() {
            if loop_edges.contains(&e) {
                if !o.is_empty() {
                    violations.push(Violation::LoopEdgeInCrossing { label: label_of[e] });
                }
                continue;
            }
            if o.len() != 2 {
                violations.push(Violation::EdgeUseCount { label: label_of[e], uses: o.len() });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // Orientation: a boolean per occurrence slot, true = the edge's head
        // (terminal end) sits at this (crossing, slot). Constraints:
        //   - slot 0 is a head, slot 2 is a tail;
        //   - the two occurrences of one edge have opposite booleans;
        //   - the two over slots (1 and 3) of a crossing have opposite booleans.
        let nc = crossings_raw.len();
        let occ_index = |ci: usize, si: usize| ci * 4 + si;
        let mut head: Vec<Option<bool>> = vec![None; nc * 4];
        let mut queue: Vec<(usize, bool)> = Vec::new();
        for ci in 0..nc {
            queue.push((occ_index(ci, 0), true));
            queue.push((occ_index(ci, 2), false));
        }
        for h in hints {
            queue.push((occ_index(h.crossing, h.slot), true));
        }

        // neighbor map: same-edge partner and same-crossing over partner
        let mut edge_partner: Vec<Option<usize>> = vec![None; nc * 4];
        for o in occs.iter() {
            if o.len() == 2 {
                let (a, b) = (occ_index(o[0].0, o[0].1), occ_index(o[1].0, o[1].1));
                edge_partner[a] = Some(b);
                edge_partner[b] = Some(a);
            }
        }

        let mut conflict_edges: Vec<u32> = Vec::new();
        let propagate = |start: (usize, bool),
                             head: &mut Vec<Option<bool>>,
                             conflicts: &mut Vec<u32>| {
            let mut stack = vec![start];
            while let Some((idx, val)) = stack.pop() {
                match head[idx] {
                    Some(v) if v == val => continue,
                    Some(_) => {
                        let (ci, si) = (idx / 4, idx % 4);
                        let l = crossings_raw[ci].slots[si];
                        if !conflicts.contains(&l) {
                            conflicts.push(l);
                        }
                        continue;
                    }
                    None => head[idx] = Some(val),
                }
                if let Some(p) = edge_partner[idx] {
                    stack.push((p, !val));
                }
                let (ci, si) = (idx / 4, idx % 4);
                if si == 1 || si == 3 {
                    stack.push((occ_index(ci, 4 - si), !val));
                }
            }
        };
        for start in queue {
            propagate(start, &mut head, &mut conflict_edges);
        }

        // canonical orientation for clusters the under-slots cannot reach
        loop {
            let mut free: Option<EdgeId> = None;
            for e in 0..n_edges {
                if loop_edges.contains(&e) {
                    continue;
                }
                let (ci, si) = occs[e][0];
                if head[occ_index(ci, si)].is_none() {
                    free = Some(e);
                    break;
                }
            }
            match free {
                None => break,
                Some(e) => {
                    // smallest edge id in textual order: direct it from its
                    // first occurrence (tail) to its second (head)
                    let (ci, si) = occs[e][0];
                    propagate((occ_index(ci, si), false), &mut head, &mut conflict_edges);
                }
            }
        }

        for l in conflict_edges {
            violations.push(Violation::OrientationConflict { label: l });
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // resolved crossings and computed signs
        let mut crossings = Vec::with_capacity(nc);
        for (ci, rc) in crossings_raw.iter().enumerate() {
            let over_in_slot: u8 = if head[occ_index(ci, 3)] == Some(true) { 3 } else { 1 };
            let computed: i8 = if over_in_slot == 3 { 1 } else { -1 };
            if let Some(declared) = rc.sign {
                if declared != computed {
                    violations.push(Violation::SignMismatch { crossing: ci, declared, computed });
                }
            }
            crossings.push(Crossing {
                slots: [
                    id_of[&rc.slots[0]],
                    id_of[&rc.slots[1]],
                    id_of[&rc.slots[2]],
                    id_of[&rc.slots[3]],
                ],
                sign: computed,
                over_in_slot,
            });
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // strand successors
        let mut edge_succ: Vec<EdgeId> = vec![usize::MAX; n_edges];
        for (ci, c) in crossings.iter().enumerate() {
            // the head of under_in meets the tail of under_out, etc.
            let _ = ci;
            edge_succ[c.under_in()] = c.under_out();
            edge_succ[c.over_in()] = c.over_out();
        }
        for &e in &loop_edges {
            edge_succ[e] = e;
        }
        debug_assert!(edge_succ.iter().all(|&s| s != usize::MAX));

        // components by first-appearing edge
        let mut edge_comp: Vec<usize> = vec![0; n_edges];
        let mut m = 0usize;
        for e in 0..n_edges {
            if edge_comp[e] != 0 {
                continue;
            }
            m += 1;
            let mut cur = e;
            loop {
                edge_comp[cur] = m;
                cur = edge_succ[cur];
                if cur == e {
                    break;
                }
            }
        }

        // arcs: cut the strand at every under-pass head
        let mut dives_under: Vec<bool> = vec![false; n_edges];
        let mut starts_arc: Vec<bool> = vec![false; n_edges];
        for c in crossings.iter() {
            dives_under[c.under_in()] = true;
            starts_arc[c.under_out()] = true;
        }
        let mut arc_runs: Vec<(Vec<EdgeId>, bool)> = Vec::new();
        let mut in_arc: Vec<bool> = vec![false; n_edges];
        for e in 0..n_edges {
            if !starts_arc[e] {
                continue;
            }
            let mut run = vec![e];
            in_arc[e] = true;
            let mut cur = e;
            while !dives_under[cur] {
                cur = edge_succ[cur];
                if cur == e {
                    break; // closed over-only cycle reached its start
                }
                run.push(cur);
                in_arc[cur] = true;
            }
            arc_runs.push((run, false));
        }
        for e in 0..n_edges {
            if in_arc[e] {
                continue;
            }
            // component with no under-pass: one closed arc
            let cycle = {
                let mut cyc = vec![e];
                let mut cur = edge_succ[e];
                while cur != e {
                    cyc.push(cur);
                    cur = edge_succ[cur];
                }
                cyc
            };
            if cycle.iter().any(|&x| in_arc[x]) {
                continue;
            }
            for &x in &cycle {
                in_arc[x] = true;
            }
            arc_runs.push((cycle, true));
        }
        arc_runs.sort_by_key(|(run, _)| run.iter().min().copied());

        let mut arcs = Vec::with_capacity(arc_runs.len());
        let mut edge_arc: Vec<ArcId> = vec![usize::MAX, ].repeat(n_edges);
        for (aid, (run, closed)) in arc_runs.into_iter().enumerate() {
            for &e in &run {
                edge_arc[e] = aid;
            }
            arcs.push(Arc { component: edge_comp[run[0]], edges: run, closed });
        }

        Ok(LinkDiagram {
            m,
            crossings,
            loops: loop_edges,
            labels: label_of,
            edge_comp,
            edge_succ,
            edge_arc,
            arcs,
        })
    }
}

// ---------------------------------------------------------------------------
// PD text grammar

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ';');
        self.pos += rest.len() - trimmed.len();
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PdError> {
        Err(PdError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), PdError> {
        self.skip_inner_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn skip_inner_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace());
        self.pos += rest.len() - trimmed.len();
    }

    fn number(&mut self) -> Result<u32, PdError> {
        self.skip_inner_ws();
        let rest = &self.text[self.pos..];
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected a positive integer");
        }
        self.pos += digits.len();
        let n: u32 = digits.parse().map_err(|_| PdError::Syntax {
            pos: self.pos,
            msg: format!("integer `{digits}` out of range"),
        })?;
        if n == 0 {
            return self.err("edge labels are positive");
        }
        Ok(n)
    }

    fn opt_sign(&mut self) -> Option<i8> {
        self.skip_inner_ws();
        self.attached_sign()
    }

    /// A sign character directly at the cursor, no whitespace skipping;
    /// distinguishes a crossing-sign suffix from the next entry's lead sign.
    fn attached_sign(&mut self) -> Option<i8> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(1)
            }
            Some('-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }
}

fn parse_pd_text(text: &str) -> Result<DiagramData, PdError> {
    let mut s = Scanner::new(text);
    let mut data = DiagramData::default();
    if s.done() {
        return s.err("empty input");
    }
    while !s.done() {
        match s.peek() {
            Some('X') | Some('x') => {
                s.pos += 1;
                s.expect('[')?;
                let a = s.number()?;
                s.expect(',')?;
                let b = s.number()?;
                s.expect(',')?;
                let c = s.number()?;
                s.expect(',')?;
                let d = s.number()?;
                s.expect(']')?;
                let sign = s.opt_sign();
                data.push_crossing(RawCrossing { slots: [a, b, c, d], sign });
            }
            Some('O') | Some('o') => {
                s.pos += 1;
                s.expect('[')?;
                let a = s.number()?;
                s.expect(']')?;
                data.push_loop(a);
            }
            _ => return s.err("expected an `X[a,b,c,d]` or `O[a]` term"),
        }
    }
    Ok(data)
}

// ---------------------------------------------------------------------------
// signed Gauss codes
//
// `G: <component> / <component> / ...`, one entry per strand pass:
// `+k` passes over crossing k, `-k` passes under it. Each crossing label
// appears exactly twice, once over and once under. The crossing sign is
// written as a trailing `+`/`-` on at least one of the two entries
// (`+1- -2+ ...`); when both entries carry it they must agree.

fn parse_gauss_text(text: &str) -> Result<DiagramData, PdError> {
    let mut s = Scanner::new(text);
    s.skip_inner_ws();
    if !s.text[s.pos..].starts_with("G:") {
        return s.err("Gauss code must start with `G:`");
    }
    s.pos += 2;

    struct Pass {
        label: u32,
        over: bool,
        sign: Option<i8>,
    }
    let mut components: Vec<Vec<Pass>> = Vec::new();
    let mut current: Vec<Pass> = Vec::new();
    loop {
        s.skip_inner_ws();
        match s.peek() {
            None => {
                components.push(current);
                break;
            }
            Some('/') => {
                s.pos += 1;
                components.push(std::mem::take(&mut current));
            }
            Some('+') | Some('-') => {
                let over = s.opt_sign().unwrap() == 1;
                let label = s.number()?;
                let sign = s.attached_sign();
                current.push(Pass { label, over, sign });
            }
            Some(_) => return s.err("expected `+k`, `-k`, `/`, or end of input"),
        }
    }
    if components.iter().all(|c| c.is_empty()) {
        return s.err("empty Gauss code");
    }

    // resolve crossing signs
    let mut sign_of: BTreeMap<u32, i8> = BTreeMap::new();
    let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new(); // label -> (over count, under count)
    for comp in &components {
        for p in comp {
            let counts = seen.entry(p.label).or_insert((0, 0));
            if p.over {
                counts.0 += 1;
            } else {
                counts.1 += 1;
            }
            if let Some(sg) = p.sign {
                match sign_of.get(&p.label) {
                    Some(&prev) if prev != sg => {
                        return Err(PdError::Syntax {
                            pos: 0,
                            msg: format!("crossing {} has contradictory signs", p.label),
                        })
                    }
                    _ => {
                        sign_of.insert(p.label, sg);
                    }
                }
            }
        }
    }
    for (&label, &(over, under)) in &seen {
        if over != 1 || under != 1 {
            return Err(PdError::Syntax {
                pos: 0,
                msg: format!(
                    "crossing {label} must appear exactly once over and once under (got {over} over, {under} under)"
                ),
            });
        }
        if !sign_of.contains_key(&label) {
            return Err(PdError::Syntax {
                pos: 0,
                msg: format!("crossing {label} has no sign; append `+` or `-` to one of its entries"),
            });
        }
    }

    // lay out edges along each component and collect the four strand ends
    // per crossing
    #[derive(Default, Clone)]
    struct Ends {
        under: Option<(u32, u32)>, // (in, out)
        over: Option<(u32, u32)>,
    }
    let mut next_edge: u32 = 1;
    let mut ends: BTreeMap<u32, Ends> = BTreeMap::new();
    let mut data = DiagramData::default();
    for comp in &components {
        if comp.is_empty() {
            data.push_loop(next_edge);
            next_edge += 1;
            continue;
        }
        let p = comp.len();
        let first_edge = next_edge;
        next_edge += p as u32;
        // edge t (0-based) runs from pass t to pass t+1 (cyclically)
        for (t, pass) in comp.iter().enumerate() {
            let incoming = first_edge + ((t + p - 1) % p) as u32;
            let outgoing = first_edge + t as u32;
            let slot = ends.entry(pass.label).or_default();
            if pass.over {
                slot.over = Some((incoming, outgoing));
            } else {
                slot.under = Some((incoming, outgoing));
            }
        }
    }
    for (label, e) in ends {
        let (ui, uo) = e.under.expect("checked above");
        let (oi, oo) = e.over.expect("checked above");
        data.push_crossing(emit_crossing(ui, uo, oi, oo, sign_of[&label]));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const HOPF_POS: &str = "X[1,3,2,4];X[3,1,4,2]";

    #[test]
    fn parse_positive_hopf() {
        let d = LinkDiagram::parse_pd(HOPF_POS).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 2);
        assert!(d.crossings().iter().all(|c| c.sign() == 1));
        assert_eq!(d.linking_number(1, 2).unwrap(), 1);
        assert_eq!(d.linking_number(2, 1).unwrap(), 1);
        assert_eq!(d.self_writhe(1).unwrap(), 0);
        assert_eq!(d.arcs().len(), 2);
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        assert!(matches!(LinkDiagram::parse_pd(""), Err(PdError::Syntax { .. })));
        assert!(matches!(LinkDiagram::parse_pd("  \n "), Err(PdError::Syntax { .. })));
    }

    #[test]
    fn one_kink_unknot() {
        let d = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.self_writhe(1).unwrap(), 1);
        assert_eq!(d.arcs().len(), 1);
    }

    #[test]
    fn negative_kink_unknot() {
        let d = LinkDiagram::parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.self_writhe(1).unwrap(), -1);
    }

    #[test]
    fn crossingless_component() {
        let d = LinkDiagram::parse_pd("O[1]").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.arcs().len(), 1);
        assert!(d.arcs()[0].is_closed());

        let d = LinkDiagram::parse_pd("X[1,3,2,4];X[3,1,4,2];O[9]").unwrap();
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.linking_number(1, 3).unwrap(), 0);
    }

    #[test]
    fn component_order_follows_text() {
        let d = LinkDiagram::parse_pd("O[7];X[1,3,2,4];X[3,1,4,2]").unwrap();
        // the loop appears first, so it is component 1
        assert_eq!(d.component_count(), 3);
        assert!(d.arcs().iter().any(|a| a.component() == 1 && a.is_closed()));
    }

    #[test]
    fn declared_signs_are_checked() {
        assert!(LinkDiagram::parse_pd("X[1,3,2,4]+;X[3,1,4,2]+").is_ok());
        let e = LinkDiagram::parse_pd("X[1,3,2,4]-;X[3,1,4,2]+");
        match e {
            Err(PdError::Inconsistent(vs)) => {
                assert!(vs.iter().any(|v| matches!(v, Violation::SignMismatch { .. })));
            }
            other => panic!("expected sign violation, got {other:?}"),
        }
    }

    #[test]
    fn edge_multiplicity_violation() {
        let mut data = DiagramData::default();
        data.push_crossing(RawCrossing { slots: [1, 3, 2, 4], sign: None });
        data.push_crossing(RawCrossing { slots: [1, 3, 2, 4], sign: None });
        data.push_crossing(RawCrossing { slots: [1, 2, 5, 6], sign: None });
        let vs = validate_data(&data);
        assert!(vs.iter().any(|v| matches!(v, Violation::EdgeUseCount { .. })));
    }

    #[test]
    fn valid_diagram_validates_clean() {
        let d = LinkDiagram::parse_pd(HOPF_POS).unwrap();
        assert!(d.validate().is_empty());
    }

    #[test]
    fn pd_round_trip_preserves_combinatorics() {
        for code in [HOPF_POS, "X[1,1,2,2]", "O[1]", "X[1,3,2,4];X[3,1,4,2];O[9]"] {
            let d1 = LinkDiagram::parse(code).unwrap();
            let d2 = LinkDiagram::parse(&d1.to_pd_string()).unwrap();
            assert_eq!(d1.to_pd_string(), d2.to_pd_string());
            assert_eq!(d1.component_count(), d2.component_count());
            assert_eq!(d1.crossing_count(), d2.crossing_count());
            for c in d1.crossings().iter().zip(d2.crossings()) {
                assert_eq!(c.0.sign(), c.1.sign());
            }
        }
    }

    #[test]
    fn mirror_negates_signs_and_linking() {
        let d = LinkDiagram::parse_pd(HOPF_POS).unwrap();
        let m = d.mirror();
        assert!(m.validate().is_empty());
        assert_eq!(m.linking_number(1, 2).unwrap(), -1);
        assert!(m.crossings().iter().all(|c| c.sign() == -1));

        let k = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(k.mirror().self_writhe(1).unwrap(), -1);
    }

    #[test]
    fn gauss_trefoil_matches_pd() {
        // O1 U2 O3 U1 O2 U3 with all crossings positive
        let g = LinkDiagram::parse_gauss("G: +1+ -2+ +3+ -1+ +2+ -3+").unwrap();
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.crossing_count(), 3);
        assert_eq!(g.self_writhe(1).unwrap(), 3);
        assert_eq!(g.arcs().len(), 3);
    }

    #[test]
    fn gauss_two_components() {
        // Hopf link as a Gauss code: each component passes over once and
        // under once
        let g = LinkDiagram::parse_gauss("G: +1+ -2+ / +2 -1").unwrap();
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.linking_number(1, 2).unwrap(), 1);
    }

    #[test]
    fn gauss_empty_component_is_a_loop() {
        let g = LinkDiagram::parse_gauss("G: +1+ -1+ /").unwrap();
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn gauss_errors() {
        assert!(LinkDiagram::parse_gauss("G: +1 -1").is_err()); // no sign
        assert!(LinkDiagram::parse_gauss("G: +1+ +1+ -2 -2").is_err()); // twice over
        assert!(LinkDiagram::parse_gauss("G: +1+ -1-").is_err()); // contradictory signs
        assert!(LinkDiagram::parse_gauss("G:").is_err());
        assert!(LinkDiagram::parse_gauss("X[1,1,2,2]").is_err());
    }

    #[test]
    fn under_passes_walk_hopf() {
        let d = LinkDiagram::parse_pd(HOPF_POS).unwrap();
        // each component dives under exactly once
        assert_eq!(d.under_passes_from_base(1).len(), 1);
        assert_eq!(d.under_passes_from_base(2).len(), 1);
        let ci = d.under_passes_from_base(2)[0];
        // component 2 passes under an arc of component 1
        assert_eq!(d.arcs()[d.over_arc(ci)].component(), 1);
    }

    #[test]
    fn query_errors() {
        let d = LinkDiagram::parse_pd(HOPF_POS).unwrap();
        assert!(d.linking_number(1, 1).is_err());
        assert!(d.linking_number(0, 1).is_err());
        assert!(d.linking_number(1, 3).is_err());
        assert!(d.self_writhe(5).is_err());
    }
}
