//! A small catalog of reference diagrams, plus a braid-closure builder.
//!
//! Braid letters: `+j` crosses positions `j, j+1` with the strand entering
//! from position `j+1` passing over (a positive crossing); `-j` is the
//! mirror letter. Strand closure joins each final position back to its
//! initial edge, so the closure of `[1, 1]` on two strands is the positive
//! Hopf link and `[1, -2, 1, -2, 1, -2]` on three strands gives the
//! Borromean rings.

use crate::diagram::{
    emit_crossing, over_in_slot_for, DiagramData, LinkDiagram, OrientationHint, RawCrossing,
};

/// Closure of a braid word on `strands` strands.
///
/// Components are numbered by their smallest participating strand.
pub fn closed_braid(strands: usize, word: &[i32]) -> LinkDiagram {
    assert!(strands >= 1, "need at least one strand");
    for &l in word {
        let a = l.unsigned_abs() as usize;
        assert!(l != 0 && a + 1 <= strands, "letter {l} out of range for {strands} strands");
    }

    let init: Vec<u32> = (1..=strands as u32).collect();
    let mut cur = init.clone();
    let mut fresh = strands as u32;
    let mut crossings: Vec<RawCrossing> = Vec::new();
    let mut hints: Vec<OrientationHint> = Vec::new();

    for &l in word {
        let a = l.unsigned_abs() as usize - 1; // left position, 0-based
        let mut new_edge = || {
            fresh += 1;
            fresh
        };
        let (ci, co) = (new_edge(), new_edge());
        let sign: i8 = if l > 0 { 1 } else { -1 };
        let (ui, uo, oi, oo) = if l > 0 {
            // right strand over; the under strand lands on the right
            (cur[a], ci, cur[a + 1], co)
        } else {
            (cur[a + 1], ci, cur[a], co)
        };
        hints.push(OrientationHint { crossing: crossings.len(), slot: over_in_slot_for(sign) });
        crossings.push(emit_crossing(ui, uo, oi, oo, sign));
        if l > 0 {
            cur[a] = co;
            cur[a + 1] = ci;
        } else {
            cur[a] = ci;
            cur[a + 1] = co;
        }
    }

    // close up: the edge leaving position p at the bottom is the edge that
    // entered it at the top
    let mut data = DiagramData::default();
    let relabel = |l: u32| -> u32 {
        for p in 0..strands {
            if cur[p] != init[p] && l == cur[p] {
                return init[p];
            }
        }
        l
    };
    for rc in crossings {
        data.push_crossing(RawCrossing {
            slots: [
                relabel(rc.slots[0]),
                relabel(rc.slots[1]),
                relabel(rc.slots[2]),
                relabel(rc.slots[3]),
            ],
            sign: rc.sign,
        });
    }
    for p in 0..strands {
        if cur[p] == init[p] {
            data.push_loop(init[p]); // strand with no crossings
        }
    }

    let d = LinkDiagram::from_data_with_hints(&data, &hints)
        .expect("braid closures are always consistent");

    // components ordered by smallest strand: strand p starts on edge p+1
    let mut reps: Vec<u32> = Vec::new();
    let mut seen_comp = Vec::new();
    for p in 0..strands as u32 {
        let e = (0..d.edge_count())
            .find(|&e| d.edge_label(e) == p + 1)
            .expect("initial strand edges survive");
        let c = d.component_of_edge(e);
        if !seen_comp.contains(&c) {
            seen_comp.push(c);
            reps.push(p + 1);
        }
    }
    d.with_component_representatives(&reps)
}

/// The crossingless unknot `O[1]`.
pub fn unknot() -> LinkDiagram {
    LinkDiagram::parse_pd("O[1]").unwrap()
}

/// An unknot diagram with the given sequence of Reidemeister-I kinks.
pub fn unknot_kinked(kinks: &[i8]) -> LinkDiagram {
    if kinks.is_empty() {
        return unknot();
    }
    let t = kinks.len() as u32;
    let mut terms = Vec::new();
    for (i, &s) in kinks.iter().enumerate() {
        assert!(s == 1 || s == -1);
        let i = i as u32;
        let inc = 2 * i + 1;
        let lp = 2 * i + 2;
        let out = (2 * i + 2) % (2 * t) + 1;
        if s == 1 {
            terms.push(format!("X[{inc},{out},{lp},{lp}]"));
        } else {
            terms.push(format!("X[{inc},{lp},{lp},{out}]"));
        }
    }
    LinkDiagram::parse_pd(&terms.join(";")).unwrap()
}

/// The m-component crossingless unlink.
pub fn unlink(m: usize) -> LinkDiagram {
    assert!(m >= 1);
    let code: Vec<String> = (1..=m).map(|i| format!("O[{i}]")).collect();
    LinkDiagram::parse_pd(&code.join(";")).unwrap()
}

/// The 2-crossing positive Hopf link (`lk = +1`).
pub fn hopf_positive() -> LinkDiagram {
    LinkDiagram::parse_pd("X[1,3,2,4];X[3,1,4,2]").unwrap()
}

pub fn hopf_negative() -> LinkDiagram {
    hopf_positive().mirror()
}

/// A 4-crossing diagram of the positive Hopf link (one cancelling
/// Reidemeister-II pair inserted).
pub fn hopf_four_crossing() -> LinkDiagram {
    closed_braid(2, &[1, 1, 1, -1])
}

/// The right-handed trefoil as the closure of a 3-letter braid.
pub fn trefoil() -> LinkDiagram {
    closed_braid(2, &[1, 1, 1])
}

/// The Borromean rings: pairwise unlinked, globally linked.
pub fn borromean() -> LinkDiagram {
    closed_braid(3, &[1, -2, 1, -2, 1, -2])
}

/// A 2-component unlink diagram with one cancelling crossing pair.
pub fn unlink_crossed() -> LinkDiagram {
    closed_braid(2, &[1, -1])
}
