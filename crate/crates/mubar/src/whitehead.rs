//! Whitehead doubling as local surgery on diagram codes.
//!
//! Doubling component `i` replaces it by two blackboard-parallel copies
//! joined through a splice gadget on a chosen arc. For the full-twist
//! double the copies run in opposite directions and the gadget is a clasp
//! plus `n` full twists; for the odd variant the copies run parallel and
//! the gadget is `2p+1` half twists. In both cases `-w_i` framing
//! correction twists are spliced in first so the companion is 0-framed.
//!
//! Conventions fixed here (they pin the global sign of every doubled
//! invariant): the second copy runs on the left of the original direction;
//! one right-handed full twist between the antiparallel strands of a
//! doubled region shows up as two negative crossings; the clasp hooks so
//! that the (-1)-twisted double of the positive Hopf link is the Whitehead
//! link with Sato-Levine invariant -1.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{
    emit_crossing, over_in_slot_for, ArcId, DiagramData, EdgeId, LinkDiagram, OrientationHint,
};

/// Crossing sign produced by one right-handed full twist between
/// antiparallel strands (the reversed-copy kind).
const ANTI_TWIST_SIGN: i8 = -1;

/// Handedness of the clasp hook in the full-twist pattern.
const CLASP_SIGN: i8 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DoubleError {
    #[error("component index {index} out of range 1..={m}")]
    BadComponent { index: usize, m: usize },
    #[error("insertion site arc {arc} does not belong to component {component}")]
    BadSite { arc: ArcId, component: usize },
    #[error("odd double needs a positive odd half-twist count, got {0}")]
    BadHalfTwists(u64),
    #[error("sign parameter must be +1 or -1")]
    BadSign,
    #[error("operation expects a {expected} spec")]
    WrongKind { expected: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleKind {
    /// Clasp plus `twists` full twists; the doubled strands are
    /// antiparallel and the result is null-homologous in the companion
    /// torus.
    FullTwist { twists: i64 },
    /// An odd number of half twists and no clasp; the doubled strands are
    /// parallel, winding twice around the companion torus.
    OddHalfTwist { half_twists: u64, sign: i8 },
}

/// Where and how to double.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleSpec {
    pub component: usize,
    pub kind: DoubleKind,
    /// Arc of the doubled component carrying the splice region; the
    /// component's base arc when absent.
    pub insertion_site: Option<ArcId>,
}

impl DoubleSpec {
    pub fn full(component: usize, twists: i64) -> Self {
        DoubleSpec { component, kind: DoubleKind::FullTwist { twists }, insertion_site: None }
    }

    pub fn odd(component: usize, half_twists: u64, sign: i8) -> Self {
        DoubleSpec {
            component,
            kind: DoubleKind::OddHalfTwist { half_twists, sign },
            insertion_site: None,
        }
    }

    pub fn at_site(mut self, arc: ArcId) -> Self {
        self.insertion_site = Some(arc);
        self
    }

    fn check(&self, d: &LinkDiagram) -> Result<EdgeId, DoubleError> {
        let m = d.component_count();
        if self.component == 0 || self.component > m {
            return Err(DoubleError::BadComponent { index: self.component, m });
        }
        match self.kind {
            DoubleKind::FullTwist { .. } => {}
            DoubleKind::OddHalfTwist { half_twists, sign } => {
                if half_twists % 2 == 0 || half_twists == 0 {
                    return Err(DoubleError::BadHalfTwists(half_twists));
                }
                if sign != 1 && sign != -1 {
                    return Err(DoubleError::BadSign);
                }
            }
        }
        let arc = self.insertion_site.unwrap_or_else(|| d.base_arc(self.component));
        if arc >= d.arcs().len() || d.arcs()[arc].component() != self.component {
            return Err(DoubleError::BadSite { arc, component: self.component });
        }
        Ok(d.arcs()[arc].edges()[0])
    }
}

/// The Whitehead n-double of one component (clasp plus n full twists).
///
/// Component count and ordering are preserved; the doubled component keeps
/// its index. `n = 0` is the clasp-only double, accepted here even though
/// the vanishing statement requires nonzero twisting.
pub fn whitehead_double(d: &LinkDiagram, spec: &DoubleSpec) -> Result<LinkDiagram, DoubleError> {
    match spec.kind {
        DoubleKind::FullTwist { .. } => Surgeon::run(d, spec, GadgetMode::Pattern),
        DoubleKind::OddHalfTwist { .. } => Err(DoubleError::WrongKind { expected: "full-twist" }),
    }
}

/// The odd-half-twist double (`2p+1` half twists in place of the clasp and
/// full twists; the pattern winds twice around the companion torus).
pub fn whitehead_odd_double(d: &LinkDiagram, spec: &DoubleSpec) -> Result<LinkDiagram, DoubleError> {
    match spec.kind {
        DoubleKind::OddHalfTwist { .. } => Surgeon::run(d, spec, GadgetMode::Pattern),
        DoubleKind::FullTwist { .. } => Err(DoubleError::WrongKind { expected: "odd-half-twist" }),
    }
}

/// Two doubles in order; the component indices refer to the intermediate
/// results, so doubling the same index twice re-doubles the new pattern.
pub fn double_twice(
    d: &LinkDiagram,
    first: &DoubleSpec,
    second: &DoubleSpec,
) -> Result<LinkDiagram, DoubleError> {
    let mid = apply(d, first)?;
    apply(&mid, second)
}

fn apply(d: &LinkDiagram, spec: &DoubleSpec) -> Result<LinkDiagram, DoubleError> {
    match spec.kind {
        DoubleKind::FullTwist { .. } => whitehead_double(d, spec),
        DoubleKind::OddHalfTwist { .. } => whitehead_odd_double(d, spec),
    }
}

/// Debug view of the doubling: the two parallel copies with their framing
/// correction twists, each closed onto itself instead of spliced into one
/// pattern. The copy keeps index `i`; its partner becomes component `m+1`.
/// Their linking number is the companion framing and must be zero.
pub fn doubled_strands_sublink(d: &LinkDiagram, spec: &DoubleSpec) -> Result<LinkDiagram, DoubleError> {
    Surgeon::run(d, spec, GadgetMode::FramingSublink)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum GadgetMode {
    Pattern,
    FramingSublink,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Copy {
    P, // same direction as the original strand
    M, // the companion copy, on the left of the original direction
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    Over,
    Under,
}

impl Role {
    fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

struct Surgeon<'a> {
    d: &'a LinkDiagram,
    comp: usize,
    reversed: bool, // the M copy runs against the original orientation
    fresh: u32,
    data: DiagramData,
    hints: Vec<OrientationHint>,
    k_label: BTreeMap<EdgeId, u32>,
    p_label: BTreeMap<EdgeId, u32>,
    m_label: BTreeMap<EdgeId, u32>,
    site: EdgeId,
    // site-edge pieces around the gadget, in original orientation:
    // pa = tail-side +copy, pb = head-side +copy, ma/mb the partner pieces
    pa: u32,
    pb: u32,
    ma: u32,
    mb: u32,
}

impl<'a> Surgeon<'a> {
    fn run(d: &'a LinkDiagram, spec: &DoubleSpec, mode: GadgetMode) -> Result<LinkDiagram, DoubleError> {
        let site = spec.check(d)?;
        let comp = spec.component;
        let reversed = matches!(spec.kind, DoubleKind::FullTwist { .. });
        let w = d.self_writhe(comp).expect("validated component");
        // with no splice crossings at all, each copy of the site edge is a
        // single wire, so both pieces share one label
        let fuse_site = mode == GadgetMode::FramingSublink && w == 0;

        let mut s = Surgeon {
            d,
            comp,
            reversed,
            fresh: 0,
            data: DiagramData::default(),
            hints: Vec::new(),
            k_label: BTreeMap::new(),
            p_label: BTreeMap::new(),
            m_label: BTreeMap::new(),
            site,
            pa: 0,
            pb: 0,
            ma: 0,
            mb: 0,
        };
        s.allocate_labels(fuse_site);
        for ci in 0..d.crossing_count() {
            s.translate_crossing(ci);
        }
        match mode {
            GadgetMode::Pattern => match spec.kind {
                DoubleKind::FullTwist { twists } => s.gadget_full(-w, twists),
                DoubleKind::OddHalfTwist { half_twists, sign } => {
                    s.gadget_odd(-w, half_twists, sign)
                }
            },
            GadgetMode::FramingSublink => s.gadget_framing_only(-w),
        }
        // copies of a crossingless companion with no splice crossings are
        // bare loops
        let copy_loops = s.site_is_loop() && mode == GadgetMode::FramingSublink;
        s.push_loops(copy_loops);

        let out = LinkDiagram::from_data_with_hints(&s.data, &s.hints)
            .expect("doubling surgery emits consistent diagrams");

        // component i keeps its index; the others keep theirs
        let mut reps: Vec<u32> = Vec::new();
        for j in 1..=d.component_count() {
            if j == comp {
                reps.push(s.pa);
            } else {
                let e = d.arcs()[d.base_arc(j)].edges()[0];
                reps.push(s.k_label[&e]);
            }
        }
        if mode == GadgetMode::FramingSublink {
            reps.push(s.ma);
        }
        Ok(out.with_component_representatives(&reps))
    }

    fn next(&mut self) -> u32 {
        self.fresh += 1;
        self.fresh
    }

    fn allocate_labels(&mut self, fuse_site: bool) {
        for e in 0..self.d.edge_count() {
            if self.d.component_of_edge(e) == self.comp {
                if e != self.site {
                    let p = self.next();
                    let m = self.next();
                    self.p_label.insert(e, p);
                    self.m_label.insert(e, m);
                }
            } else {
                let k = self.next();
                self.k_label.insert(e, k);
            }
        }
        if self.site_is_loop() || fuse_site {
            // one wire per copy runs through the splice region
            self.pa = self.next();
            self.pb = self.pa;
            self.ma = self.next();
            self.mb = self.ma;
        } else {
            self.pa = self.next();
            self.pb = self.next();
            self.ma = self.next();
            self.mb = self.next();
        }
    }

    fn site_is_loop(&self) -> bool {
        let arc = self.d.arc_of_edge(self.site);
        self.d.arcs()[arc].is_closed() && self.d.arcs()[arc].edges().len() == 1
            && self.d.successor(self.site) == self.site
    }

    fn label(&self, e: EdgeId, copy: Copy, end: End) -> u32 {
        if e == self.site {
            match (copy, end) {
                (Copy::P, End::Tail) => self.pa,
                (Copy::P, End::Head) => self.pb,
                (Copy::M, End::Tail) => self.ma,
                (Copy::M, End::Head) => self.mb,
            }
        } else {
            match copy {
                Copy::P => self.p_label[&e],
                Copy::M => self.m_label[&e],
            }
        }
    }

    fn emit(&mut self, ui: u32, uo: u32, oi: u32, oo: u32, sign: i8) {
        self.hints.push(OrientationHint {
            crossing: self.data.crossings().count(),
            slot: over_in_slot_for(sign),
        });
        self.data.push_crossing(emit_crossing(ui, uo, oi, oo, sign));
    }

    /// Under-strand endpoints and sign for the copy of an under pass
    /// `u -> v` at a crossing of sign `eps`.
    fn under_pass(&self, copy: Copy, u: EdgeId, v: EdgeId, eps: i8) -> (u32, u32, i8) {
        match copy {
            Copy::P => (self.label(u, Copy::P, End::Head), self.label(v, Copy::P, End::Tail), eps),
            Copy::M if self.reversed => {
                (self.label(v, Copy::M, End::Tail), self.label(u, Copy::M, End::Head), -eps)
            }
            Copy::M => (self.label(u, Copy::M, End::Head), self.label(v, Copy::M, End::Tail), eps),
        }
    }

    /// Over-strand endpoints and sign for the copy of an over pass
    /// `p -> q`.
    fn over_pass(&self, copy: Copy, p: EdgeId, q: EdgeId, eps: i8) -> (u32, u32, i8) {
        match copy {
            Copy::P => (self.label(p, Copy::P, End::Head), self.label(q, Copy::P, End::Tail), eps),
            Copy::M if self.reversed => {
                (self.label(q, Copy::M, End::Tail), self.label(p, Copy::M, End::Head), -eps)
            }
            Copy::M => (self.label(p, Copy::M, End::Head), self.label(q, Copy::M, End::Tail), eps),
        }
    }

    /// Which under-strand copy an over strand meets first, for a crossing
    /// of sign `eps` (the M copy runs left of the original direction).
    fn over_meets_first(&self, eps: i8) -> Copy {
        let first_for_positive = Copy::M;
        match (eps, self.reversed) {
            (1, _) => first_for_positive,
            (-1, _) => Copy::P,
            _ => unreachable!(),
        }
    }

    /// Which over-strand copy an under strand meets first.
    fn under_meets_first(&self, eps: i8) -> Copy {
        if eps == 1 {
            Copy::P
        } else {
            Copy::M
        }
    }

    /// Order in which the under path of copy `x` meets the two over-strand
    /// copies at a doubled self-crossing.
    fn under_order(&self, x: Copy, eps: i8) -> [Copy; 2] {
        let base = if eps == 1 { [Copy::P, Copy::M] } else { [Copy::M, Copy::P] };
        if x == Copy::M && self.reversed {
            [base[1], base[0]]
        } else {
            base
        }
    }

    /// Order in which the over path of copy `y` meets the two under-strand
    /// copies at a doubled self-crossing.
    fn over_order(&self, y: Copy, eps: i8) -> [Copy; 2] {
        let base = if eps == 1 { [Copy::M, Copy::P] } else { [Copy::P, Copy::M] };
        if y == Copy::M && self.reversed {
            [base[1], base[0]]
        } else {
            base
        }
    }

    fn translate_crossing(&mut self, ci: usize) {
        let c = &self.d.crossings()[ci];
        let (u, v, p, q) = (c.under_in(), c.under_out(), c.over_in(), c.over_out());
        let eps = c.sign();
        let under_on_i = self.d.component_of_edge(u) == self.comp;
        let over_on_i = self.d.component_of_edge(p) == self.comp;

        match (under_on_i, over_on_i) {
            (false, false) => {
                let (ui, uo, oi, oo) =
                    (self.k_label[&u], self.k_label[&v], self.k_label[&p], self.k_label[&q]);
                self.emit(ui, uo, oi, oo, eps);
            }
            (true, false) => {
                // the over strand of another component crosses both copies
                let mid = self.next();
                let first = self.over_meets_first(eps);
                let (kp, kq) = (self.k_label[&p], self.k_label[&q]);
                for (t, copy) in [first, other(first)].into_iter().enumerate() {
                    let (oi, oo) = if t == 0 { (kp, mid) } else { (mid, kq) };
                    let (ui, uo, s) = self.under_pass(copy, u, v, eps);
                    self.emit(ui, uo, oi, oo, s);
                }
            }
            (false, true) => {
                // the under strand of another component dives below both
                // copies
                let mid = self.next();
                let first = self.under_meets_first(eps);
                let (ku, kv) = (self.k_label[&u], self.k_label[&v]);
                for (t, copy) in [first, other(first)].into_iter().enumerate() {
                    let (ui, uo) = if t == 0 { (ku, mid) } else { (mid, kv) };
                    let (oi, oo, s) = self.over_pass(copy, p, q, eps);
                    self.emit(ui, uo, oi, oo, s);
                }
            }
            (true, true) => {
                // self-crossing: a 2x2 grid of crossings between the copies
                let mut under_sides: BTreeMap<(u8, u8), (u32, u32)> = BTreeMap::new();
                let mut over_sides: BTreeMap<(u8, u8), (u32, u32)> = BTreeMap::new();
                let mut signs: BTreeMap<(u8, u8), i8> = BTreeMap::new();
                for x in [Copy::P, Copy::M] {
                    let (start, end, s) = self.under_pass(x, u, v, eps);
                    let mid = self.next();
                    let order = self.under_order(x, eps);
                    under_sides.insert(key(x, order[0]), (start, mid));
                    under_sides.insert(key(x, order[1]), (mid, end));
                    // the sign of crossing (x, y) composes both copy signs
                    let _ = s;
                    for y in [Copy::P, Copy::M] {
                        signs.insert(key(x, y), eps * flip_sign(x, self.reversed) * flip_sign(y, self.reversed));
                    }
                }
                for y in [Copy::P, Copy::M] {
                    let (start, end, _) = self.over_pass(y, p, q, eps);
                    let mid = self.next();
                    let order = self.over_order(y, eps);
                    over_sides.insert(key(order[0], y), (start, mid));
                    over_sides.insert(key(order[1], y), (mid, end));
                }
                for x in [Copy::P, Copy::M] {
                    for y in [Copy::P, Copy::M] {
                        let (ui, uo) = under_sides[&key(x, y)];
                        let (oi, oo) = over_sides[&key(x, y)];
                        self.emit(ui, uo, oi, oo, signs[&key(x, y)]);
                    }
                }
            }
        }
    }

    // ----- gadgets ------------------------------------------------------

    /// First-pass role at position `j` of a twist region between
    /// antiparallel strands: the planar screw couples the alternation
    /// parity to the crossing sign.
    fn anti_role(j: usize, sign: i8) -> Role {
        if (j % 2 == 0) == (sign == 1) {
            Role::Over
        } else {
            Role::Under
        }
    }

    /// Same coupling for parallel strands (opposite parity).
    fn par_role(j: usize, sign: i8) -> Role {
        if (j % 2 == 0) == (sign == -1) {
            Role::Over
        } else {
            Role::Under
        }
    }

    /// Clasp plus twist regions for the reversed-copy double. Both gadget
    /// strands are folds: S_a carries the incoming +copy out to its tip and
    /// back, S_b is the short fold threading through S_a's eye. The pattern
    /// twists sit between the threading and S_a's tip, where they cannot
    /// slide out around the companion.
    fn gadget_full(&mut self, correction: i64, pattern: i64) {
        let n_corr = 2 * correction.unsigned_abs() as usize;
        let n_pat = 2 * pattern.unsigned_abs() as usize;
        let corr_sign = ANTI_TWIST_SIGN * sign_of(correction);
        let pat_sign = ANTI_TWIST_SIGN * sign_of(pattern);

        // gadget crossing keys: correction region, pattern region, clasp
        let clasp1 = n_corr + n_pat;
        let clasp2 = clasp1 + 1;
        let mut signs: Vec<i8> = Vec::new();
        signs.extend(std::iter::repeat(corr_sign).take(n_corr));
        signs.extend(std::iter::repeat(pat_sign).take(n_pat));
        signs.push(CLASP_SIGN);
        signs.push(CLASP_SIGN);

        let a_role_c2 = if CLASP_SIGN == 1 { Role::Under } else { Role::Over };
        let a_role_c1 = a_role_c2.flip();

        // S_a: correction twists (escapable band twists), the threading,
        // then the captive pattern twists, the tip, and back.
        let mut sa: Vec<(usize, Role)> = Vec::new();
        for j in 0..n_corr {
            sa.push((j, Self::anti_role(j, corr_sign)));
        }
        sa.push((clasp2, a_role_c2));
        for j in 0..n_pat {
            sa.push((n_corr + j, Self::anti_role(j, pat_sign)));
        }
        for j in (0..n_pat).rev() {
            sa.push((n_corr + j, Self::anti_role(j, pat_sign).flip()));
        }
        sa.push((clasp1, a_role_c1));
        for j in (0..n_corr).rev() {
            sa.push((j, Self::anti_role(j, corr_sign).flip()));
        }
        let sb: Vec<(usize, Role)> = vec![(clasp1, a_role_c1.flip()), (clasp2, a_role_c2.flip())];

        let (pa, pb, ma, mb) = (self.pa, self.pb, self.ma, self.mb);
        self.build_gadget(&signs, &[(sa, pa, ma), (sb, mb, pb)]);
    }

    /// Half-twist region for the parallel-copy double: both strands pass
    /// straight through, crossing each other an odd number of times.
    fn gadget_odd(&mut self, correction: i64, half_twists: u64, sign: i8) {
        let n_corr = 2 * correction.unsigned_abs() as usize;
        let n_half = half_twists as usize;
        let corr_sign = sign_of(correction); // parallel strands: sign = handedness

        let mut signs: Vec<i8> = Vec::new();
        signs.extend(std::iter::repeat(corr_sign).take(n_corr));
        signs.extend(std::iter::repeat(sign).take(n_half));

        let mut sa: Vec<(usize, Role)> = Vec::new();
        let mut sb: Vec<(usize, Role)> = Vec::new();
        for j in 0..n_corr {
            sa.push((j, Self::par_role(j, corr_sign)));
            sb.push((j, Self::par_role(j, corr_sign).flip()));
        }
        for j in 0..n_half {
            sa.push((n_corr + j, Self::par_role(j, sign)));
            sb.push((n_corr + j, Self::par_role(j, sign).flip()));
        }

        let (pa, pb, ma, mb) = (self.pa, self.pb, self.ma, self.mb);
        self.build_gadget(&signs, &[(sa, pa, mb), (sb, ma, pb)]);
    }

    /// Correction twists only, with each copy closed onto itself; used by
    /// the framing-sublink debug view.
    fn gadget_framing_only(&mut self, correction: i64) {
        let n_corr = 2 * correction.unsigned_abs() as usize;
        let (corr_sign, strands): (i8, [(Vec<(usize, Role)>, u32, u32); 2]) = if self.reversed {
            let s = ANTI_TWIST_SIGN * sign_of(correction);
            let sa: Vec<(usize, Role)> =
                (0..n_corr).map(|j| (j, Self::anti_role(j, s))).collect();
            // the partner strand runs against S_a, meeting the region in
            // reverse order
            let sb: Vec<(usize, Role)> =
                (0..n_corr).rev().map(|j| (j, Self::anti_role(j, s).flip())).collect();
            (s, [(sa, self.pa, self.pb), (sb, self.mb, self.ma)])
        } else {
            let s = sign_of(correction);
            let sa: Vec<(usize, Role)> = (0..n_corr).map(|j| (j, Self::par_role(j, s))).collect();
            let sb: Vec<(usize, Role)> =
                (0..n_corr).map(|j| (j, Self::par_role(j, s).flip())).collect();
            (s, [(sa, self.pa, self.pb), (sb, self.ma, self.mb)])
        };
        let signs: Vec<i8> = std::iter::repeat(corr_sign).take(n_corr).collect();
        self.build_gadget(&signs, &strands);
    }

    /// Lays out gadget strands: each strand is a (crossing key, role)
    /// sequence with fixed entry and exit wire labels; consecutive events
    /// get fresh connector edges.
    fn build_gadget(&mut self, signs: &[i8], strands: &[(Vec<(usize, Role)>, u32, u32)]) {
        let mut passes: BTreeMap<usize, Vec<(Role, u32, u32)>> = BTreeMap::new();
        for (events, entry, exit) in strands {
            if events.is_empty() {
                // nothing to cross: the entry wire must BE the exit wire
                assert_eq!(entry, exit, "gadget strand without crossings needs one label");
                continue;
            }
            let mut cur = *entry;
            for (t, (kk, role)) in events.iter().enumerate() {
                let nxt = if t + 1 == events.len() { *exit } else { self.next() };
                passes.entry(*kk).or_default().push((*role, cur, nxt));
                cur = nxt;
            }
        }
        for (kk, ps) in passes {
            assert_eq!(ps.len(), 2, "gadget crossing {kk} needs exactly two passes");
            let over = ps.iter().find(|(r, _, _)| *r == Role::Over).expect("one over pass");
            let under = ps.iter().find(|(r, _, _)| *r == Role::Under).expect("one under pass");
            self.emit(under.1, under.2, over.1, over.2, signs[kk]);
        }
    }

    fn push_loops(&mut self, copy_loops: bool) {
        let loops: Vec<u32> = (0..self.d.edge_count())
            .filter(|&e| {
                self.d.component_of_edge(e) != self.comp && self.d.successor(e) == e
            })
            .map(|e| self.k_label[&e])
            .collect();
        for l in loops {
            self.data.push_loop(l);
        }
        if copy_loops {
            let (pa, ma) = (self.pa, self.ma);
            self.data.push_loop(pa);
            self.data.push_loop(ma);
        }
    }
}

fn other(c: Copy) -> Copy {
    match c {
        Copy::P => Copy::M,
        Copy::M => Copy::P,
    }
}

fn key(x: Copy, y: Copy) -> (u8, u8) {
    let f = |c: Copy| if c == Copy::P { 0u8 } else { 1u8 };
    (f(x), f(y))
}

fn flip_sign(c: Copy, reversed: bool) -> i8 {
    if c == Copy::M && reversed {
        -1
    } else {
        1
    }
}

fn sign_of(x: i64) -> i8 {
    match x.cmp(&0) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 1, // unused: zero-length regions
    }
}

/// Crossings of the doubled diagram in terms of the input: every crossing
/// not on the component survives, mixed crossings double, self-crossings
/// quadruple, and the splice contributes the correction and pattern
/// regions.
pub fn expected_crossing_count(d: &LinkDiagram, spec: &DoubleSpec) -> usize {
    let i = spec.component;
    let mut selfc = 0usize;
    let mut inter = 0usize;
    for c in d.crossings() {
        let under = d.component_of_edge(c.under_in()) == i;
        let over = d.component_of_edge(c.over_in()) == i;
        match (under, over) {
            (true, true) => selfc += 1,
            (false, false) => {}
            _ => inter += 1,
        }
    }
    let w = d.self_writhe(i).expect("valid component") as i64;
    let corr = 2 * w.unsigned_abs() as usize;
    let pattern = match spec.kind {
        DoubleKind::FullTwist { twists } => 2 + 2 * twists.unsigned_abs() as usize,
        DoubleKind::OddHalfTwist { half_twists, .. } => half_twists as usize,
    };
    d.crossing_count() + inter + 3 * selfc + corr + pattern
}
