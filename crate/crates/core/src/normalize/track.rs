//! Tracked replay: frame geometry (feeds, consumers, subtree leaves), the
//! absorbed-braid loop invariant, occurrence tracing, and the
//! top-string-normal-form predicate.

use crate::braid::{block_crossing, BraidWord, GarsideNf, Letter};
use crate::gray::{CellKind, Computad, Diagram, Subregion};
use crate::movie::{Dir, Movie, MovieError, Step, StepKind};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// What feeds a wire from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feed {
    /// A generating cell at this level.
    Cell(usize),
    /// An ambient wire of the source boundary.
    Ambient(usize),
}

fn arity(c: &Computad, cell: &CellKind) -> (usize, usize) {
    Diagram::width_change(c, cell).expect("frame already typechecked")
}

/// Walk down from position `wire` at the boundary below level `level`
/// (boundary index = `level`), through braidings, to the generating cell
/// or ambient wire feeding it.
pub fn feed_of(c: &Computad, frame: &Diagram, level: usize, wire: usize) -> Feed {
    let mut pos = wire;
    let mut lvl = level;
    while lvl > 0 {
        lvl -= 1;
        let l = &frame.levels[lvl];
        let (p, q) = arity(c, &l.cell);
        let a = l.offset;
        if pos >= a && pos < a + q {
            match &l.cell {
                CellKind::Gen(_) => return Feed::Cell(lvl),
                CellKind::Braid(_) => {
                    pos = if pos == a { a + 1 } else { a };
                }
            }
        } else if pos >= a + q {
            pos = pos - q + p;
        }
    }
    Feed::Ambient(pos)
}

/// Walk up from the output of the cell at `level` to the generating cell
/// consuming it, if any, returning `(consumer_level, which_input)`.
pub fn consumer_of(c: &Computad, frame: &Diagram, level: usize) -> Option<(usize, usize)> {
    let mut pos = frame.levels[level].offset;
    for lvl in level + 1..frame.levels.len() {
        let l = &frame.levels[lvl];
        let (p, q) = arity(c, &l.cell);
        let a = l.offset;
        if pos >= a && pos < a + p {
            match &l.cell {
                CellKind::Gen(_) => return Some((lvl, pos - a)),
                CellKind::Braid(_) => {
                    pos = if pos == a { a + 1 } else { a };
                }
            }
        } else if pos >= a + p {
            pos = pos - p + q;
        }
    }
    None
}

/// Positions of a cell's output string at each boundary from just above
/// the cell to the consumer (inclusive) or the roof.
pub fn string_positions(
    c: &Computad,
    frame: &Diagram,
    level: usize,
) -> (Vec<(usize, usize)>, Option<usize>) {
    let mut out = Vec::new();
    let mut pos = frame.levels[level].offset;
    out.push((level + 1, pos));
    for lvl in level + 1..frame.levels.len() {
        let l = &frame.levels[lvl];
        let (p, q) = arity(c, &l.cell);
        let a = l.offset;
        if pos >= a && pos < a + p {
            match &l.cell {
                CellKind::Gen(_) => return (out, Some(lvl)),
                CellKind::Braid(_) => {
                    pos = if pos == a { a + 1 } else { a };
                }
            }
        } else if pos >= a + p {
            pos = pos - p + q;
        }
        out.push((lvl + 1, pos));
    }
    (out, None)
}

/// In-order ambient leaves of the subtree rooted at the cell at `level`
/// (unit cells contribute no leaves).
pub fn cell_leaves(c: &Computad, frame: &Diagram, level: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let l = &frame.levels[level];
    let (p, _) = arity(c, &l.cell);
    for input in 0..p {
        descend(c, frame, level, l.offset + input, &mut out);
    }
    out
}

fn descend(c: &Computad, frame: &Diagram, level: usize, wire: usize, out: &mut Vec<usize>) {
    match feed_of(c, frame, level, wire) {
        Feed::Ambient(pos) => out.push(pos),
        Feed::Cell(lvl) => {
            let l = &frame.levels[lvl];
            let (p, _) = arity(c, &l.cell);
            for input in 0..p {
                descend(c, frame, lvl, l.offset + input, out);
            }
        }
    }
}

/// Root of the tree containing the cell at `level` (topmost consumer).
pub fn root_of(c: &Computad, frame: &Diagram, level: usize) -> usize {
    let mut cur = level;
    while let Some((up, _)) = consumer_of(c, frame, cur) {
        cur = up;
    }
    cur
}

// ---------------------------------------------------------------------------
// The absorbed-braid invariant
// ---------------------------------------------------------------------------

/// One tree of the loop's source frame: its position at the target
/// boundary and the ambient wires forming its real leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceTree {
    pub target_position: usize,
    pub leaves: Vec<usize>,
}

/// The per-tree absorbed braids, canonicalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEntry {
    pub target_position: usize,
    pub strands: usize,
    pub absorbed: GarsideNf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorbedInvariant {
    pub trees: Vec<TreeEntry>,
}

impl AbsorbedInvariant {
    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(|t| t.absorbed.is_trivial())
    }

    /// Whether the invariant is trivial after imposing σ_i² = 1 (the free
    /// quotient to the symmetric group, where every pure braid dies).
    pub fn is_trivial_mod_squares(&self) -> bool {
        // entries are pure, and pure braids are precisely the kernel of
        // B_n → S_n, so the reduction is always trivial; kept explicit for
        // the decision table's readability
        self.trees.iter().all(|t| {
            t.absorbed
                .to_word()
                .underlying_permutation()
                .is_identity()
        })
    }

    pub fn equal(&self, other: &AbsorbedInvariant) -> bool {
        self.trees.len() == other.trees.len()
            && self
                .trees
                .iter()
                .zip(&other.trees)
                .all(|(a, b)| a.strands == b.strands && a.absorbed == b.absorbed)
    }
}

/// The tree registry of a frame: one entry per target-boundary position,
/// rooted either at a generating cell or at a bare ambient strand.
pub fn source_trees(c: &Computad, frame: &Diagram) -> Result<Vec<SourceTree>, MovieError> {
    let target = frame.typecheck(c)?;
    let top = frame.levels.len();
    let mut out = Vec::with_capacity(target.len());
    for wire in 0..target.len() {
        let leaves = match feed_of(c, frame, top, wire) {
            Feed::Ambient(pos) => vec![pos],
            Feed::Cell(lvl) => cell_leaves(c, frame, lvl),
        };
        out.push(SourceTree {
            target_position: wire,
            leaves,
        });
    }
    Ok(out)
}

fn is_pseudomonoid_computad(c: &Computad) -> bool {
    c.gen1("m")
        .is_some_and(|g| g.source.len() == 2 && g.target.len() == 1)
        && c.gen1("u")
            .is_some_and(|g| g.source.is_empty() && g.target.len() == 1)
}

/// The commutator events of one step: `(crossing_level, frame_to_read,
/// invert)`.
fn commutator_event(step: &Step) -> Option<(bool, Subregion)> {
    match &step.kind {
        StepKind::Gen2 { name, dir } if name == "c" => Some((*dir == Dir::Rev, step.at)),
        _ => None,
    }
}

/// Semantic tracked replay computing the absorbed-braid invariant of a
/// loop over a pseudomonoid computad.
pub fn loop_invariant(c: &Computad, m: &Movie) -> Result<AbsorbedInvariant, MovieError> {
    let (trees, accum) = absorbed_words(c, m)?;
    let mut out = Vec::with_capacity(trees.len());
    for (i, t) in trees.iter().enumerate() {
        let word = BraidWord::new(t.leaves.len(), accum[i].clone())
            .map_err(|e| MovieError::MoveFailed(format!("absorbed word invalid: {e}")))?;
        if !word.is_pure() {
            return Err(MovieError::MoveFailed(String::from(
                "absorbed word of a loop must be pure",
            )));
        }
        out.push(TreeEntry {
            target_position: t.target_position,
            strands: t.leaves.len(),
            absorbed: word.normal_form(),
        });
    }
    Ok(AbsorbedInvariant { trees: out })
}

/// The raw absorbed words of a loop, one per source tree, in slot
/// coordinates and temporal order.
pub fn absorbed_words(
    c: &Computad,
    m: &Movie,
) -> Result<(Vec<SourceTree>, Vec<Vec<Letter>>), MovieError> {
    if !is_pseudomonoid_computad(c) {
        return Err(MovieError::MoveFailed(String::from(
            "invariant requires a pseudomonoid computad",
        )));
    }
    let frames = m.frames(c)?;
    if frames.first() != frames.last() {
        return Err(MovieError::MoveFailed(String::from(
            "invariant requires a loop",
        )));
    }
    let trees = source_trees(c, &m.source)?;
    let mut owner = alloc::collections::BTreeMap::new();
    for (i, t) in trees.iter().enumerate() {
        for &leaf in &t.leaves {
            owner.insert(leaf, i);
        }
    }
    let mut accum: Vec<Vec<Letter>> = trees.iter().map(|_| Vec::new()).collect();
    for (k, step) in m.steps.iter().enumerate() {
        let Some((invert, at)) = commutator_event(step) else {
            continue;
        };
        // read the bundles in the frame where the crossing is absent (after
        // an absorption, before an emission): the multiplication multiplies
        // the two bundles directly there, and the tree's in-order leaf list
        // in that frame is the interface the absorbed letters live on
        let frame = if invert { &frames[k] } else { &frames[k + 1] };
        let m_level = at.lo;
        let m_off = frame.levels[m_level].offset;
        debug_assert_eq!(
            frame.levels[m_level].cell,
            CellKind::Gen(String::from("m"))
        );
        let mut left_leaves = Vec::new();
        descend(c, frame, m_level, m_off, &mut left_leaves);
        let mut right_leaves = Vec::new();
        descend(c, frame, m_level, m_off + 1, &mut right_leaves);
        let (w_l, w_r) = (left_leaves.len(), right_leaves.len());
        if w_l == 0 || w_r == 0 {
            continue; // a ghost bundle contributes an empty block
        }
        let probe = left_leaves[0];
        let tree_idx = *owner.get(&probe).ok_or_else(|| {
            MovieError::MoveFailed(format!("ambient wire {probe} belongs to no tree"))
        })?;
        for &leaf in left_leaves.iter().chain(&right_leaves) {
            if owner.get(&leaf) != Some(&tree_idx) {
                return Err(MovieError::MoveFailed(String::from(
                    "commutator spans two source trees",
                )));
            }
        }
        // base: leaves of the tree strictly left of the left bundle in the
        // tree's in-order at this frame
        let root = root_of(c, frame, m_level);
        let in_order = cell_leaves(c, frame, root);
        let base = in_order
            .iter()
            .position(|&x| x == probe)
            .ok_or_else(|| MovieError::MoveFailed(String::from("bundle leaf not under root")))?;
        let block = block_crossing(w_l, w_r, 1);
        let mut letters: Vec<Letter> = block
            .letters()
            .iter()
            .map(|&x| {
                if x > 0 {
                    x + base as Letter
                } else {
                    x - base as Letter
                }
            })
            .collect();
        if invert {
            letters = letters.iter().rev().map(|&x| -x).collect();
        }
        // absorbed crossings compose below the already absorbed braid
        letters.extend(accum[tree_idx].iter().copied());
        accum[tree_idx] = letters;
    }
    Ok((trees, accum))
}

// ---------------------------------------------------------------------------
// Occurrence tracing and the TSNF predicate
// ---------------------------------------------------------------------------

/// Persistent ids for the level occurrences of every frame of a movie.
pub struct LevelTrace {
    pub per_frame: Vec<Vec<u64>>,
}

impl LevelTrace {
    /// The level of occurrence `id` in frame `k`, if alive.
    pub fn level_in(&self, k: usize, id: u64) -> Option<usize> {
        self.per_frame[k].iter().position(|&x| x == id)
    }
}

/// Thread persistent ids through a replay. Identity is positional per step
/// kind; cells created by a step get fresh ids.
pub fn trace_levels(c: &Computad, m: &Movie) -> Result<LevelTrace, MovieError> {
    let frames = m.frames(c)?;
    let mut next: u64 = 1;
    let fresh = |n: &mut u64| {
        let v = *n;
        *n += 1;
        v
    };
    let mut cur: Vec<u64> = (0..m.source.levels.len())
        .map(|_| fresh(&mut next))
        .collect();
    let mut per_frame = vec![cur.clone()];
    for (k, step) in m.steps.iter().enumerate() {
        let (src, tgt) = crate::movie::step_patterns(c, &frames[k], step)?;
        let (lo, s_len, t_len) = (step.at.lo, src.levels.len(), tgt.levels.len());
        let old: Vec<u64> = cur[lo..lo + s_len].to_vec();
        let new: Vec<u64> = match &step.kind {
            StepKind::Gen2 { name, dir } => match (name.as_str(), dir) {
                ("alpha", _) => old.clone(),
                ("lambda", Dir::Fwd) | ("rho", Dir::Fwd) => Vec::new(),
                ("lambda", Dir::Rev) | ("rho", Dir::Rev) => {
                    vec![fresh(&mut next), fresh(&mut next)]
                }
                ("c", Dir::Fwd) => vec![old[1]],
                ("c", Dir::Rev) => vec![fresh(&mut next), old[0]],
                _ => (0..t_len).map(|_| fresh(&mut next)).collect(),
            },
            StepKind::Interchange => vec![old[1], old[0]],
            StepKind::InverseInsert { .. } => vec![fresh(&mut next), fresh(&mut next)],
            StepKind::Cancel { .. } => Vec::new(),
            StepKind::Syllepsis { dir } => match dir {
                Dir::Fwd => Vec::new(),
                Dir::Rev => vec![fresh(&mut next), fresh(&mut next)],
            },
            StepKind::Pull { dir, .. } => match dir {
                Dir::Fwd => {
                    let mut v: Vec<u64> = (0..t_len - 1).map(|_| fresh(&mut next)).collect();
                    v.push(old[0]);
                    v
                }
                Dir::Rev => {
                    let mut v = vec![*old.last().expect("pull band nonempty")];
                    v.extend((0..t_len - 1).map(|_| fresh(&mut next)));
                    v
                }
            },
        };
        let mut updated: Vec<u64> = cur[..lo].to_vec();
        updated.extend(new);
        updated.extend(cur[lo + s_len..].iter().copied());
        cur = updated;
        per_frame.push(cur.clone());
    }
    Ok(LevelTrace { per_frame })
}

/// The machine-checkable TSNF predicate for the occurrence with persistent
/// id `occ` (from `trace`): no step whose pattern involves neither the
/// occurrence nor its consumer acts on a window meeting the occurrence's
/// output string strictly between them.
pub fn output_string_clear(
    c: &Computad,
    m: &Movie,
    trace: &LevelTrace,
    occ: u64,
) -> Result<bool, MovieError> {
    let frames = m.frames(c)?;
    for (k, step) in m.steps.iter().enumerate() {
        let Some(occ_level) = trace.level_in(k, occ) else {
            continue; // occurrence not alive at this frame
        };
        let (lo, hi) = (step.at.lo, step.at.hi);
        if occ_level >= lo && occ_level < hi {
            continue; // the step moves the occurrence itself
        }
        let (positions, consumer) = string_positions(c, &frames[k], occ_level);
        if let Some(cons) = consumer {
            if cons >= lo && cons < hi {
                continue; // the step moves the string's consumer
            }
        }
        // window width evolves through the band
        let mut width = step.at.win_hi - step.at.win_lo;
        let mut widths = vec![width]; // at boundary lo..=hi
        for lvl in lo..hi {
            let (p, q) = arity(c, &frames[k].levels[lvl].cell);
            width = width + q - p;
            widths.push(width);
        }
        for &(boundary, pos) in &positions {
            if boundary >= lo && boundary <= hi {
                let w = widths[boundary - lo];
                if pos >= step.at.win_lo && pos < step.at.win_lo + w {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
