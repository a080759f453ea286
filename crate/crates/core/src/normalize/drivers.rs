//! The rewriting drivers: insert-IPI, top-string normalization, unitor
//! elimination, the normal form N, structural-loop contraction, and the
//! 2-cell equality decision.
//!
//! Every driver returns a certificate of the moves it performed and checks
//! endpoint and invariant preservation before returning; budgets guard
//! against bugs (the procedures provably terminate on valid input).

use crate::braid::{BraidWord, Letter};
use crate::gray::{CellKind, Computad, Diagram, GrayFlavor};
use crate::movie::{apply_move, Dir, Move, Movie, MovieBuilder, MovieError, Step, StepKind};
use crate::normalize::standard::raise_all;
use crate::normalize::track::{
    absorbed_words, loop_invariant, output_string_clear, trace_levels, AbsorbedInvariant,
};
use crate::pseudomonoid::{absorb_braid, render_word_move, Builtin};
use crate::wordpath;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    Movie(MovieError),
    Precondition(String),
    Budget(&'static str),
    Blocked(String),
    NotParallel,
    InvalidTableEntry,
}

impl core::fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NormalizeError::Movie(e) => write!(f, "movie: {e}"),
            NormalizeError::Precondition(s) => write!(f, "precondition violated: {s}"),
            NormalizeError::Budget(s) => write!(f, "step budget exceeded in {s}"),
            NormalizeError::Blocked(s) => write!(f, "rewriting blocked: {s}"),
            NormalizeError::NotParallel => write!(f, "movies are not parallel"),
            NormalizeError::InvalidTableEntry => write!(f, "invalid row/column pair"),
        }
    }
}

impl From<MovieError> for NormalizeError {
    fn from(e: MovieError) -> Self {
        NormalizeError::Movie(e)
    }
}

impl From<crate::gray::DiagramError> for NormalizeError {
    fn from(e: crate::gray::DiagramError) -> Self {
        NormalizeError::Movie(MovieError::Diagram(e))
    }
}

/// One certified rewriting event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertMove {
    /// A structural identification of movies (Type I/II/III or a computad
    /// equality).
    Structural(Move),
    /// Replacement of the clip `[from, to)` by a canonical parallel clip,
    /// justified by the named coherence result whose hypotheses were
    /// validated at application time.
    ReplaceClip {
        from: usize,
        to: usize,
        justification: &'static str,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub moves: Vec<CertMove>,
}

/// A movie together with the movie it was derived from must share
/// endpoints; checked by every driver.
fn check_same_endpoints(c: &Computad, a: &Movie, b: &Movie) -> Result<(), NormalizeError> {
    if a.source != b.source || a.target(c)? != b.target(c)? {
        return Err(NormalizeError::Blocked(String::from(
            "rewriting changed the endpoints",
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Insert IPI
// ---------------------------------------------------------------------------

/// Build the clip moving the cell at `level` up by `levels` steps (pulls
/// and interchanges), if unobstructed.
fn rise_clip(
    c: &Computad,
    frame: &Diagram,
    level: usize,
    levels: usize,
) -> Result<Movie, NormalizeError> {
    let mut b = MovieBuilder::new(c, frame.clone())?;
    let mut lvl = level;
    let mut remaining = levels;
    while remaining > 0 {
        if lvl + 1 >= b.frame().levels.len() {
            return Err(NormalizeError::Blocked(String::from(
                "rise reached the top of the diagram",
            )));
        }
        let above = b.frame().levels[lvl + 1].clone();
        let out_pos = b.frame().levels[lvl].offset;
        match &above.cell {
            CellKind::Braid(_) if above.offset == out_pos || above.offset + 1 == out_pos => {
                let (p, _) = Diagram::width_change(c, &b.frame().levels[lvl].cell)?;
                b.pull(lvl, Dir::Fwd)?;
                // the pulled cell sits above the p copied crossings
                lvl += p;
            }
            CellKind::Braid(_) => {
                b.interchange(lvl)?;
                lvl += 1;
            }
            CellKind::Gen(_) => {
                // obstruction if connected
                let (p, _) = Diagram::width_change(c, &above.cell)?;
                if out_pos >= above.offset && out_pos < above.offset + p {
                    return Err(NormalizeError::Blocked(String::from(
                        "path obstructed by a connected generator",
                    )));
                }
                b.interchange(lvl)?;
                lvl += 1;
            }
        }
        remaining -= 1;
    }
    Ok(b.finish())
}

/// Insert a cancelling up-and-back excursion of the occurrence at
/// `occ_level` (a level of frame `at`) over `path` levels, at step index
/// `at`. The result represents the same 2-cell.
pub fn insert_ipi(
    c: &Computad,
    m: &Movie,
    at: usize,
    occ_level: usize,
    path: usize,
) -> Result<Movie, NormalizeError> {
    if at > m.steps.len() {
        return Err(NormalizeError::Precondition(String::from(
            "step index out of range",
        )));
    }
    let frames = m.frames(c)?;
    if occ_level >= frames[at].levels.len() {
        return Err(NormalizeError::Precondition(String::from(
            "occurrence level out of range",
        )));
    }
    let clip = rise_clip(c, &frames[at], occ_level, path)?;
    let back = clip.invert(c)?;
    let excursion = clip.then(c, &back)?;
    let mut steps = m.steps[..at].to_vec();
    steps.extend(excursion.steps.iter().cloned());
    steps.extend(m.steps[at..].iter().cloned());
    let out = Movie {
        source: m.source.clone(),
        steps,
    };
    out.frames(c)?;
    check_same_endpoints(c, m, &out)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical structural clips
// ---------------------------------------------------------------------------

/// The braid-word regime of an ambient flavor.
fn word_regime(c: &Computad) -> GrayFlavor {
    c.flavor
}

/// Construct the canonical structural clip between two parallel frames
/// that are structurally connected: raise all cells, bridge the braid
/// words, descend. Errors if the frames are not structurally compatible.
pub fn canonical_structural_clip(
    c: &Computad,
    x: &Diagram,
    y: &Diagram,
) -> Result<Movie, NormalizeError> {
    let mut bx = MovieBuilder::new(c, x.clone())?;
    raise_all(c, &mut bx)?;
    let mut by = MovieBuilder::new(c, y.clone())?;
    raise_all(c, &mut by)?;
    let (fx, fy) = (bx.frame().clone(), by.frame().clone());
    // split braid zone / cell stack
    let split = |f: &Diagram| {
        let cells_from = f
            .levels
            .iter()
            .position(|l| matches!(l.cell, CellKind::Gen(_)))
            .unwrap_or(f.levels.len());
        (f.levels[..cells_from].to_vec(), f.levels[cells_from..].to_vec())
    };
    let (bz_x, stack_x) = split(&fx);
    let (bz_y, stack_y) = split(&fy);
    if stack_x != stack_y {
        return Err(NormalizeError::Blocked(String::from(
            "frames have different cell stacks",
        )));
    }
    let to_word = |levels: &[crate::gray::Level]| -> Vec<Letter> {
        levels
            .iter()
            .map(|l| {
                let k = (l.offset + 1) as Letter;
                match l.cell {
                    CellKind::Braid(crate::gray::Sign::Pos) => k,
                    CellKind::Braid(crate::gray::Sign::Neg) => -k,
                    _ => unreachable!(),
                }
            })
            .collect()
    };
    let wx = to_word(&bz_x);
    let wy = to_word(&bz_y);
    let rx = bx.finish();
    let ry = by.finish();
    let mut movie = rx;
    if wx != wy {
        let trace = match word_regime(c) {
            GrayFlavor::Symmetric => {
                wordpath::path_between_symmetric(x.source.len(), &wx, &wy)
                    .map_err(|e| NormalizeError::Blocked(String::from(e)))?
            }
            GrayFlavor::Braided => {
                let (ta, ca) = wordpath::canonicalize_braided(x.source.len(), &wx)
                    .map_err(|e| NormalizeError::Blocked(String::from(e)))?;
                let (tb, cb) = wordpath::canonicalize_braided(x.source.len(), &wy)
                    .map_err(|e| NormalizeError::Blocked(String::from(e)))?;
                if ca != cb {
                    return Err(NormalizeError::Blocked(String::from(
                        "braid parts are not equal in the braid group",
                    )));
                }
                let mut t = ta;
                t.extend(wordpath::invert_trace(&wy, &tb));
                t
            }
            GrayFlavor::Naked => {
                return Err(NormalizeError::Blocked(String::from(
                    "distinct braid words in a naked diagram",
                )))
            }
        };
        let mut b = MovieBuilder::new(c, movie.target(c)?)?;
        for mv in &trace {
            render_word_move(&mut b, 0, 0, mv)?;
        }
        movie = movie.then(c, &b.finish())?;
    }
    movie = movie.then(c, &ry.invert(c)?)?;
    if movie.source != *x || movie.target(c)? != *y {
        return Err(NormalizeError::Blocked(String::from(
            "canonical clip endpoints mismatch",
        )));
    }
    Ok(movie)
}

// ---------------------------------------------------------------------------
// TSNF
// ---------------------------------------------------------------------------

/// Put the occurrence at `occ_level` of the source frame into top-string
/// normal form: the output string must reach the roof; offending
/// structural clips are replaced by canonical clips that move the
/// occurrence out of the way first.
pub fn tsnf(
    c: &Computad,
    m: &Movie,
    occ_level: usize,
) -> Result<(Movie, Certificate), NormalizeError> {
    let mut cur = m.clone();
    let mut cert = Certificate::default();
    let budget = 200usize;
    for _ in 0..budget {
        let trace = trace_levels(c, &cur)?;
        let occ = *trace.per_frame[0]
            .get(occ_level)
            .ok_or_else(|| NormalizeError::Precondition(String::from("bad occurrence level")))?;
        // precondition: no non-structural step may touch the string
        let frames = cur.frames(c)?;
        let mut first_bad: Option<usize> = None;
        for (k, step) in cur.steps.iter().enumerate() {
            if violates(c, &frames, &trace, occ, k, step)? {
                if !step.kind.is_structural() {
                    return Err(NormalizeError::Precondition(String::from(
                        "a non-structural 2-cell acts on the output string",
                    )));
                }
                first_bad = Some(k);
                break;
            }
        }
        let Some(bad) = first_bad else {
            let final_trace = trace_levels(c, &cur)?;
            let occ_final = final_trace.per_frame[0][occ_level];
            debug_assert!(output_string_clear(c, &cur, &final_trace, occ_final)?);
            check_same_endpoints(c, m, &cur)?;
            return Ok((cur, cert));
        };
        // the maximal structural clip around the offender
        let mut lo = bad;
        while lo > 0 && cur.steps[lo - 1].kind.is_structural() {
            lo -= 1;
        }
        let mut hi = bad + 1;
        while hi < cur.steps.len() && cur.steps[hi].kind.is_structural() {
            hi += 1;
        }
        let replacement = string_avoiding_clip(c, &frames[lo], &frames[hi], &trace, lo, hi, occ)
            .map_err(|e| {
                NormalizeError::Blocked(format!(
                    "clip [{lo},{hi}) X={:?} Y={:?}: {e}",
                    frames[lo].levels, frames[hi].levels
                ))
            })?;
        let mut steps = cur.steps[..lo].to_vec();
        steps.extend(replacement.steps.iter().cloned());
        steps.extend(cur.steps[hi..].iter().cloned());
        let next = Movie {
            source: cur.source.clone(),
            steps,
        };
        next.frames(c)?;
        check_same_endpoints(c, &cur, &next)?;
        cert.moves.push(CertMove::ReplaceClip {
            from: lo,
            to: hi,
            justification: "extended coherence for structural clips",
        });
        cur = next;
    }
    Err(NormalizeError::Budget("tsnf"))
}

fn violates(
    c: &Computad,
    frames: &[Diagram],
    trace: &crate::normalize::track::LevelTrace,
    occ: u64,
    k: usize,
    step: &Step,
) -> Result<bool, NormalizeError> {
    // single-step version of the predicate in track::output_string_clear
    let probe = Movie {
        source: frames[k].clone(),
        steps: alloc::vec![step.clone()],
    };
    let Some(level) = trace.level_in(k, occ) else {
        return Ok(false);
    };
    let sub_trace = trace_levels(c, &probe)?;
    let sub_occ = sub_trace.per_frame[0][level];
    Ok(!output_string_clear(c, &probe, &sub_trace, sub_occ)?)
}

/// A canonical structural clip X ⇒ Y that never touches the occurrence's
/// roof-bound output string: the occurrence rises to the top, the
/// truncated diagrams are bridged canonically, and the occurrence returns.
fn string_avoiding_clip(
    c: &Computad,
    x: &Diagram,
    y: &Diagram,
    trace: &crate::normalize::track::LevelTrace,
    lo: usize,
    hi: usize,
    occ: u64,
) -> Result<Movie, NormalizeError> {
    let occ_x = trace
        .level_in(lo, occ)
        .ok_or_else(|| NormalizeError::Blocked(String::from("occurrence dead at clip start")))?;
    let occ_y = trace
        .level_in(hi, occ)
        .ok_or_else(|| NormalizeError::Blocked(String::from("occurrence dead at clip end")))?;
    let rise_x = rise_to_top(c, x, occ_x)
        .map_err(|e| NormalizeError::Blocked(format!("rise at clip start: {e}")))?;
    let rise_y = rise_to_top(c, y, occ_y)
        .map_err(|e| NormalizeError::Blocked(format!("rise at clip end: {e}")))?;
    let xx = rise_x.target(c)?;
    let yy = rise_y.target(c)?;
    // bridge the diagrams below the pinned top cell
    let truncate = |d: &Diagram| Diagram {
        source: d.source.clone(),
        levels: d.levels[..d.levels.len() - 1].to_vec(),
    };
    let (tx, ty) = (truncate(&xx), truncate(&yy));
    if xx.levels.last() != yy.levels.last() {
        return Err(NormalizeError::Blocked(String::from(
            "occurrence lands at different positions",
        )));
    }
    let bridge = canonical_structural_clip(c, &tx, &ty)
        .map_err(|e| NormalizeError::Blocked(format!("bridge: {e}")))?;
    let embedded = Movie {
        source: xx.clone(),
        steps: bridge.steps.clone(),
    };
    embedded
        .frames(c)
        .map_err(|e| NormalizeError::Blocked(format!("embedding: {e}")))?;
    let movie = rise_x
        .then(c, &embedded)?
        .then(c, &rise_y.invert(c)?)?;
    Ok(movie)
}

/// Rise the cell at `level` to the very top of the diagram.
fn rise_to_top(c: &Computad, frame: &Diagram, level: usize) -> Result<Movie, NormalizeError> {
    let mut b = MovieBuilder::new(c, frame.clone())?;
    let mut lvl = level;
    let budget = 20 * frame.levels.len() * frame.levels.len() + 100;
    let mut spent = 0;
    loop {
        spent += 1;
        if spent > budget {
            return Err(NormalizeError::Budget("rise to top"));
        }
        if lvl + 1 >= b.frame().levels.len() {
            return Ok(b.finish());
        }
        let above = b.frame().levels[lvl + 1].clone();
        let out_pos = b.frame().levels[lvl].offset;
        match &above.cell {
            CellKind::Braid(_) if above.offset == out_pos || above.offset + 1 == out_pos => {
                let (p, _) = Diagram::width_change(c, &b.frame().levels[lvl].cell)?;
                b.pull(lvl, Dir::Fwd)?;
                lvl += p;
            }
            CellKind::Gen(_) => {
                let (p, _) = Diagram::width_change(c, &above.cell)?;
                if out_pos >= above.offset && out_pos < above.offset + p {
                    return Err(NormalizeError::Blocked(String::from(
                        "occurrence output is consumed; its string does not reach the roof",
                    )));
                }
                b.interchange(lvl)?;
                lvl += 1;
            }
            _ => {
                b.interchange(lvl)?;
                lvl += 1;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Unit elimination
// ---------------------------------------------------------------------------

fn is_unit_step(step: &Step) -> Option<Dir> {
    match &step.kind {
        StepKind::Gen2 { name, dir } if name == "lambda" || name == "rho" => Some(*dir),
        _ => None,
    }
}

/// Greedy cancellation: transport each step rightward past disjoint steps
/// until it meets its inverse, then delete the pair. Runs to a fixpoint.
fn simplify_cancelling_pairs(
    c: &Computad,
    m: &Movie,
    cert: &mut Certificate,
) -> Result<Movie, NormalizeError> {
    let mut cur = m.clone();
    let budget = 40 * (cur.steps.len() + 2) * (cur.steps.len() + 2);
    let mut spent = 0usize;
    'outer: loop {
        for start in 0..cur.steps.len().saturating_sub(1) {
            // walk this step rightward, cancelling if its inverse appears
            let mut probe = cur.clone();
            let mut probe_cert: Vec<CertMove> = Vec::new();
            let mut pos = start;
            loop {
                spent += 1;
                if spent > budget {
                    return Err(NormalizeError::Budget("simplify"));
                }
                if pos + 1 >= probe.steps.len() {
                    break;
                }
                if let Ok(next) = apply_move(c, &probe, &Move::TypeIIDelete { index: pos }) {
                    probe_cert.push(CertMove::Structural(Move::TypeIIDelete { index: pos }));
                    cur = next;
                    cert.moves.append(&mut probe_cert);
                    continue 'outer;
                }
                match apply_move(c, &probe, &Move::TypeI { index: pos }) {
                    Ok(next) => {
                        probe_cert.push(CertMove::Structural(Move::TypeI { index: pos }));
                        probe = next;
                        pos += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        return Ok(cur);
    }
}

/// Remove every unitor step from a loop by transporting each creation to
/// its paired destruction and cancelling.
pub fn eliminate_units(
    c: &Computad,
    m: &Movie,
) -> Result<(Movie, Certificate), NormalizeError> {
    let before_inv = loop_invariant(c, m).ok();
    let mut cur = m.clone();
    let mut cert = Certificate::default();
    cur = simplify_cancelling_pairs(c, &cur, &mut cert)?;
    let budget = 400usize;
    for _ in 0..budget {
        // the last creation (a reverse unitor)
        let Some(i) = cur
            .steps
            .iter()
            .rposition(|s| is_unit_step(s) == Some(Dir::Rev))
        else {
            if cur.steps.iter().any(|s| is_unit_step(s).is_some()) {
                return Err(NormalizeError::Blocked(String::from(
                    "destruction without creation",
                )));
            }
            check_same_endpoints(c, m, &cur)?;
            if let (Some(b), Ok(a)) = (&before_inv, loop_invariant(c, &cur)) {
                if !b.equal(&a) {
                    return Err(NormalizeError::Blocked(String::from(
                        "unit elimination changed the invariant",
                    )));
                }
            }
            return Ok((cur, cert));
        };
        let trace = trace_levels(c, &cur)?;
        let u_id = trace.per_frame[i + 1][cur.steps[i].at.lo];
        let m_id = trace.per_frame[i + 1][cur.steps[i].at.lo + 1];
        // find the destruction consuming this pair
        let mut dest = None;
        for (j, s) in cur.steps.iter().enumerate().skip(i + 1) {
            if is_unit_step(s) == Some(Dir::Fwd) {
                let ids = (
                    trace.per_frame[j][s.at.lo],
                    trace.per_frame[j][s.at.lo + 1],
                );
                if ids == (u_id, m_id) {
                    dest = Some(j);
                    break;
                }
            }
            // any other step involving the created cells blocks transport
            let (lo, hi) = (s.at.lo, s.at.hi);
            let touches = trace.per_frame[j][lo..hi]
                .iter()
                .any(|&x| x == u_id || x == m_id);
            if touches {
                return Err(NormalizeError::Blocked(format!(
                    "step {j} acts on the created unit before its destruction",
                )));
            }
        }
        let Some(j) = dest else {
            return Err(NormalizeError::Blocked(String::from(
                "creation without destruction in a loop",
            )));
        };
        // transport the creation forward to j-1 by Type I (and Type III)
        let mut pos = i;
        let mut target = j;
        while pos + 1 < target {
            match apply_move(c, &cur, &Move::TypeI { index: pos }) {
                Ok(next) => {
                    cert.moves.push(CertMove::Structural(Move::TypeI { index: pos }));
                    cur = next;
                    pos += 1;
                }
                Err(_) => match apply_move(c, &cur, &Move::TypeIII { index: pos }) {
                    Ok(next) => {
                        cert.moves
                            .push(CertMove::Structural(Move::TypeIII { index: pos }));
                        cur = next;
                        pos += 1;
                    }
                    Err(e) => {
                        return Err(NormalizeError::Blocked(format!(
                            "transport blocked at step {pos}: {e}"
                        )))
                    }
                },
            }
            let _ = &mut target;
        }
        // cancel the adjacent pair
        match apply_move(c, &cur, &Move::TypeIIDelete { index: pos }) {
            Ok(next) => {
                cert.moves
                    .push(CertMove::Structural(Move::TypeIIDelete { index: pos }));
                cur = next;
            }
            Err(e) => {
                return Err(NormalizeError::Blocked(format!(
                    "creation and destruction do not cancel: {e}"
                )))
            }
        }
    }
    Err(NormalizeError::Budget("eliminate_units"))
}

// ---------------------------------------------------------------------------
// Normal form N
// ---------------------------------------------------------------------------

/// Construct the normal-form movie: per tree left to right, create the
/// braid beneath the tree, then absorb it per the canonical absorption.
pub fn normal_form_movie(
    c: &Computad,
    source: &Diagram,
    words: &[(usize, usize, usize, Vec<Letter>)], // (zone_lo, wire_base, leaves, word)
) -> Result<Movie, NormalizeError> {
    let mut b = MovieBuilder::new(c, source.clone())?;
    for (zone_lo, wire_base, leaves, word) in words {
        if word.is_empty() {
            continue;
        }
        let (reduction, canon) = wordpath::canonicalize_symmetric(*leaves, word)
            .map_err(|e| NormalizeError::Blocked(String::from(e)))?;
        if !canon.is_empty() {
            return Err(NormalizeError::Blocked(String::from(
                "absorbed word is not pure",
            )));
        }
        let creation = wordpath::invert_trace(word, &reduction);
        for mv in &creation {
            render_word_move(&mut b, *zone_lo, *wire_base, mv)?;
        }
        absorb_braid(&mut b, *zone_lo, *wire_base, *leaves, word)?;
    }
    Ok(b.finish())
}

fn strands_of_word(word: &[Letter]) -> usize {
    word.iter()
        .map(|l| l.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1)
}

/// Tree zones of an F-image frame: for each tree with at least one cell,
/// the level of its first cell and the left edge of its leaf span.
fn image_tree_zones(c: &Computad, frame: &Diagram) -> Result<Vec<(usize, usize, usize)>, NormalizeError> {
    // returns (zone_lo, wire_base, leaf_count) per target position
    let trees = crate::normalize::track::source_trees(c, frame)?;
    let mut out = Vec::new();
    let mut first_cell_level = frame
        .levels
        .iter()
        .position(|l| matches!(l.cell, CellKind::Gen(_)))
        .unwrap_or(frame.levels.len());
    for (i, t) in trees.iter().enumerate() {
        let p = t.leaves.len();
        let cells = if p == 0 { 1 } else { p.saturating_sub(1) };
        // earlier trees are collapsed to one wire each at this height
        out.push((first_cell_level, i, p));
        first_cell_level += cells;
    }
    Ok(out)
}

/// The normal-form-N shape predicate: the movie equals the canonical
/// reconstruction from its own absorbed words.
pub fn is_normal_form(c: &Computad, m: &Movie) -> Result<bool, NormalizeError> {
    let (_, words) = absorbed_words(c, m)?;
    let zones = image_tree_zones(c, &m.source)?;
    let mut spec = Vec::new();
    for (i, (zone_lo, wire_base, p)) in zones.iter().enumerate() {
        let w = &words[i];
        if !w.is_empty() && strands_of_word(w) > *p {
            return Ok(false);
        }
        spec.push((*zone_lo, *wire_base, (*p).max(1), w.clone()));
    }
    let rebuilt = normal_form_movie(c, &m.source, &spec)?;
    Ok(&rebuilt == m)
}

/// Rewrite a unit-free loop on a standard-form image into normal form N,
/// with the construction certificate; endpoint and invariant preservation
/// are verified.
#[allow(non_snake_case)]
pub fn to_normal_form_N(
    c: &Computad,
    m: &Movie,
) -> Result<(Movie, Certificate), NormalizeError> {
    if m.steps.iter().any(|s| is_unit_step(s).is_some()) {
        return Err(NormalizeError::Precondition(String::from(
            "unitor steps present; run unit elimination first",
        )));
    }
    if m.target(c)? != m.source {
        return Err(NormalizeError::Precondition(String::from("not a loop")));
    }
    let (trees, words) = absorbed_words(c, m)?;
    let zones = image_tree_zones(c, &m.source)?;
    if zones.len() != trees.len() {
        return Err(NormalizeError::Blocked(String::from("tree census mismatch")));
    }
    let mut spec = Vec::new();
    for (i, (zone_lo, wire_base, p)) in zones.iter().enumerate() {
        let w = &words[i];
        if !w.is_empty() && strands_of_word(w) > *p {
            return Err(NormalizeError::Blocked(String::from(
                "absorbed word wider than its tree",
            )));
        }
        // absorbed words live on the tree's full leaf count
        let n = (*p).max(1);
        let word = BraidWord::new(n, w.clone())
            .map_err(|e| NormalizeError::Blocked(format!("{e}")))?;
        spec.push((*zone_lo, *wire_base, n, word.letters().to_vec()));
    }
    let normal = normal_form_movie(c, &m.source, &spec)?;
    // validation: endpoints, shape, and the semantic invariant
    check_same_endpoints(c, m, &normal)?;
    if !is_normal_form(c, &normal)? {
        return Err(NormalizeError::Blocked(String::from(
            "reconstruction failed its own shape predicate",
        )));
    }
    let inv_in = loop_invariant(c, m)?;
    let inv_out = loop_invariant(c, &normal)?;
    if !inv_in.equal(&inv_out) {
        return Err(NormalizeError::Blocked(String::from(
            "normal form changed the invariant",
        )));
    }
    let cert = Certificate {
        moves: alloc::vec![CertMove::ReplaceClip {
            from: 0,
            to: m.steps.len(),
            justification: "fullness staging: braid per tree created then absorbed",
        }],
    };
    Ok((normal, cert))
}

// ---------------------------------------------------------------------------
// Structural-loop contraction
// ---------------------------------------------------------------------------

/// Contract a structural-only loop to the empty movie, emitting the
/// move-by-move certificate: one coherence replacement to a cancelling
/// excursion, then Type II deletions.
pub fn contract_structural_clip(
    c: &Computad,
    m: &Movie,
) -> Result<(Movie, Certificate), NormalizeError> {
    if m.steps.iter().any(|s| !s.kind.is_structural()) {
        return Err(NormalizeError::Precondition(String::from(
            "loop contains non-structural steps",
        )));
    }
    if m.target(c)? != m.source {
        return Err(NormalizeError::Precondition(String::from("not a loop")));
    }
    for g in &c.gen1 {
        if g.target.len() != 1 {
            return Err(NormalizeError::Precondition(String::from(
                "contraction requires single-object outputs",
            )));
        }
    }
    let mut cert = Certificate::default();
    // canonical cancelling excursion: raise everything, then invert
    let mut b = MovieBuilder::new(c, m.source.clone())?;
    raise_all(c, &mut b)?;
    let rise = b.finish();
    let excursion = rise.then(c, &rise.invert(c)?)?;
    check_same_endpoints(c, m, &excursion)?;
    cert.moves.push(CertMove::ReplaceClip {
        from: 0,
        to: m.steps.len(),
        justification: "extended coherence: parallel structural 2-cells are equal",
    });
    let mut cur = excursion;
    let half = rise_len(&cur) / 2;
    for _ in 0..half {
        let idx = cur.steps.len() / 2 - 1;
        cur = apply_move(c, &cur, &Move::TypeIIDelete { index: idx })
            .map_err(NormalizeError::Movie)?;
        cert.moves
            .push(CertMove::Structural(Move::TypeIIDelete { index: idx }));
    }
    if !cur.steps.is_empty() {
        return Err(NormalizeError::Blocked(String::from(
            "contraction left residual steps",
        )));
    }
    Ok((cur, cert))
}

fn rise_len(m: &Movie) -> usize {
    m.steps.len()
}

// ---------------------------------------------------------------------------
// The decision table
// ---------------------------------------------------------------------------

pub type TableRow = GrayFlavor;
pub type TableCol = Builtin;

/// The 2-cell equality decision of the collapse table. Returns the verdict
/// and, for the invariant-based case, the two invariants.
pub fn decide_2cell_equality(
    c: &Computad,
    a: &Movie,
    b: &Movie,
    row: TableRow,
    col: TableCol,
) -> Result<(bool, Option<(AbsorbedInvariant, AbsorbedInvariant)>), NormalizeError> {
    if crate::normalize::standard::table_computad(row, col).is_none() {
        return Err(NormalizeError::InvalidTableEntry);
    }
    if c.flavor != row {
        return Err(NormalizeError::InvalidTableEntry);
    }
    if a.source != b.source || a.target(c)? != b.target(c)? {
        return Err(NormalizeError::NotParallel);
    }
    match (row, col) {
        (GrayFlavor::Symmetric, Builtin::Pbr) => {
            let ia = loop_or_pair_invariant(c, a, b)?;
            let (inv_a, inv_b) = ia;
            Ok((inv_a.equal(&inv_b), Some((inv_a, inv_b))))
        }
        (GrayFlavor::Symmetric, Builtin::Psym) => {
            // all pure braids are trivialized under σ² = 1
            let (inv_a, inv_b) = loop_or_pair_invariant(c, a, b)?;
            let verdict = inv_a.is_trivial_mod_squares() && inv_b.is_trivial_mod_squares();
            Ok((verdict, Some((inv_a, inv_b))))
        }
        _ => {
            // locally discrete targets: parallel 2-cells are equal
            Ok((true, None))
        }
    }
}

/// Invariants of two parallel movies, computed on the loops a·a⁻¹-style:
/// when the movies are loops the invariants are taken directly; otherwise
/// each is closed with the other's inverse.
fn loop_or_pair_invariant(
    c: &Computad,
    a: &Movie,
    b: &Movie,
) -> Result<(AbsorbedInvariant, AbsorbedInvariant), NormalizeError> {
    if a.target(c)? == a.source {
        Ok((loop_invariant(c, a)?, loop_invariant(c, b)?))
    } else {
        let closed_a = a.then(c, &b.invert(c)?)?;
        let ia = loop_invariant(c, &closed_a)?;
        let trivial = AbsorbedInvariant {
            trees: ia
                .trees
                .iter()
                .map(|t| crate::normalize::track::TreeEntry {
                    target_position: t.target_position,
                    strands: t.strands,
                    absorbed: BraidWord::identity(t.strands).normal_form(),
                })
                .collect(),
        };
        Ok((ia, trivial))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::combinat::FsMap;
    use crate::gray::Sign;
    use crate::normalize::standard::table_computad;
    use crate::procat::FsBr2Cell;
    use crate::pseudomonoid::{f_2cell, standard_form};

    fn psym() -> Computad {
        table_computad(GrayFlavor::Symmetric, Builtin::Psym).unwrap()
    }

    #[test]
    fn contract_examples() {
        let c = psym();
        let d = standard_form(&BraidWord::identity(2), &[2]);
        // empty loop
        let (out, cert) = contract_structural_clip(&c, &Movie::identity(d.clone())).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(cert.moves.len(), 1);
        // interchanger pair
        let mut b = MovieBuilder::new(&c, standard_form(&BraidWord::identity(4), &[2, 2])).unwrap();
        b.interchange(0).unwrap();
        b.interchange(0).unwrap();
        let (out, cert) = contract_structural_clip(&c, &b.finish()).unwrap();
        assert!(out.steps.is_empty());
        assert!(!cert.moves.is_empty());
        // a loop of pullthroughs and interchangers around two generators
        let mut b = MovieBuilder::new(&c, standard_form(&BraidWord::identity(4), &[2, 2])).unwrap();
        b.insert(Sign::Pos, 2, 0).unwrap();
        b.pull(1, Dir::Fwd).unwrap();
        b.pull(0, Dir::Fwd).unwrap();
        let half = b.finish();
        let m = half.then(&c, &half.invert(&c).unwrap()).unwrap();
        assert!(m.is_loop(&c).unwrap());
        let (out, _cert) = contract_structural_clip(&c, &m).unwrap();
        assert!(out.steps.is_empty());
        // non-structural loops rejected
        let mut b = MovieBuilder::new(&c, standard_form(&BraidWord::identity(3), &[3])).unwrap();
        b.gen2("alpha", Dir::Fwd, 0, 0).unwrap();
        b.gen2("alpha", Dir::Rev, 0, 0).unwrap();
        assert!(matches!(
            contract_structural_clip(&c, &b.finish()),
            Err(NormalizeError::Precondition(_))
        ));
    }

    #[test]
    fn tsnf_examples() {
        let c = psym();
        // already in TSNF: unchanged
        let d = standard_form(&BraidWord::identity(2), &[2, 0]);
        let m = Movie::identity(d.clone());
        let (out, cert) = tsnf(&c, &m, 1).unwrap();
        assert_eq!(out, m);
        assert!(cert.moves.is_empty());
        // events on the u's string: cancellation, inverse-insert, pull
        let mut b = MovieBuilder::new(&c, d.clone()).unwrap();
        b.insert(Sign::Pos, 2, 0).unwrap();
        b.pull(1, Dir::Fwd).unwrap();
        let half = b.finish();
        let m = half.then(&c, &half.invert(&c).unwrap()).unwrap();
        let trace = trace_levels(&c, &m).unwrap();
        let u_id = trace.per_frame[0][1];
        assert!(!output_string_clear(&c, &m, &trace, u_id).unwrap());
        let (out, cert) = tsnf(&c, &m, 1).unwrap();
        let trace = trace_levels(&c, &out).unwrap();
        let u_id = trace.per_frame[0][1];
        assert!(output_string_clear(&c, &out, &trace, u_id).unwrap());
        assert!(!cert.moves.is_empty());
        assert_eq!(out.source, m.source);
        assert_eq!(out.target(&c).unwrap(), m.target(&c).unwrap());
    }

    #[test]
    fn eliminate_units_examples() {
        let c = psym();
        let d = standard_form(&BraidWord::identity(2), &[2]);
        // unit-free loop: unchanged
        let m = Movie::identity(d.clone());
        let (out, cert) = eliminate_units(&c, &m).unwrap();
        assert_eq!(out, m);
        assert!(cert.moves.is_empty());
        // adjacent creation/destruction pair
        let mut b = MovieBuilder::new(&c, d.clone()).unwrap();
        b.gen2("rho", Dir::Rev, 1, 0).unwrap();
        b.gen2("rho", Dir::Fwd, 1, 0).unwrap();
        let m = b.finish();
        let (out, _) = eliminate_units(&c, &m).unwrap();
        assert!(out.steps.is_empty());
        // pair separated by a disjoint structural step
        let mut b = MovieBuilder::new(&c, d.clone()).unwrap();
        b.gen2("rho", Dir::Rev, 1, 0).unwrap();
        b.insert(Sign::Pos, 0, 0).unwrap();
        b.cancel(0).unwrap();
        b.gen2("rho", Dir::Fwd, 1, 0).unwrap();
        let m = b.finish();
        let (out, cert) = eliminate_units(&c, &m).unwrap();
        assert!(out.steps.iter().all(|s| is_unit_step(s).is_none()));
        assert!(!cert.moves.is_empty());
        assert!(out.is_loop(&c).unwrap());
    }

    #[test]
    fn normal_form_round_trip() {
        let c = psym();
        let base = FsMap::new(1, vec![0, 0, 0]).unwrap();
        let tuple = vec![BraidWord::new(3, vec![1, 2, 1, 1, 2, 1]).unwrap()];
        let cell = FsBr2Cell::new(base, tuple).unwrap();
        let m = f_2cell(&c, &cell).unwrap();
        // F-image loops are already in normal form
        assert!(is_normal_form(&c, &m).unwrap());
        let (out, _) = to_normal_form_N(&c, &m).unwrap();
        assert_eq!(out, m);
        // identity loop
        let idm = Movie::identity(m.source.clone());
        let (out, _) = to_normal_form_N(&c, &idm).unwrap();
        assert!(out.steps.is_empty());
    }

    #[test]
    fn normal_form_of_scrambled_loop() {
        let c = psym();
        let base = FsMap::new(1, vec![0, 0]).unwrap();
        let tuple = vec![BraidWord::new(2, vec![1, 1]).unwrap()];
        let cell = FsBr2Cell::new(base, tuple.clone()).unwrap();
        let m = f_2cell(&c, &cell).unwrap();
        // conjugate by a structural excursion
        let mut b = MovieBuilder::new(&c, m.source.clone()).unwrap();
        b.insert(Sign::Neg, 0, 0).unwrap();
        let rise = b.finish();
        let scrambled = rise
            .clone()
            .then(&c, &rise.invert(&c).unwrap())
            .unwrap()
            .then(&c, &m)
            .unwrap();
        assert!(!is_normal_form(&c, &scrambled).unwrap());
        let (out, _) = to_normal_form_N(&c, &scrambled).unwrap();
        assert!(is_normal_form(&c, &out).unwrap());
        let inv = loop_invariant(&c, &out).unwrap();
        assert_eq!(inv.trees[0].absorbed, tuple[0].normal_form());
    }

    #[test]
    fn insert_ipi_examples() {
        let c = psym();
        let d = standard_form(&BraidWord::identity(2), &[2, 0]);
        let m = Movie::identity(d);
        // zero-length path: unchanged
        let out = insert_ipi(&c, &m, 0, 1, 0).unwrap();
        assert_eq!(out, m);
        // the u at level 1 has nothing above: rising fails
        assert!(insert_ipi(&c, &m, 0, 1, 1).is_err());
        // the m at level 0 rises past the u
        let out = insert_ipi(&c, &m, 0, 0, 1).unwrap();
        assert_eq!(out.steps.len(), 2);
        assert!(out.is_loop(&c).unwrap());
    }

    #[test]
    fn decide_examples() {
        let c = psym();
        let base = FsMap::new(1, vec![0, 0]).unwrap();
        let loop_11 = f_2cell(
            &c,
            &FsBr2Cell::new(base.clone(), vec![BraidWord::new(2, vec![1, 1]).unwrap()]).unwrap(),
        )
        .unwrap();
        let idm = Movie::identity(loop_11.source.clone());
        // reflexivity
        assert!(
            decide_2cell_equality(&c, &loop_11, &loop_11, GrayFlavor::Symmetric, Builtin::Pbr)
                .unwrap()
                .0
        );
        // symmetric/Pbr distinguishes the absorbed square from the identity
        let cbr = table_computad(GrayFlavor::Symmetric, Builtin::Pbr).unwrap();
        let loop_in_pbr = f_2cell(&c, &FsBr2Cell::new(base, vec![BraidWord::new(2, vec![1, 1]).unwrap()]).unwrap()).unwrap();
        let _ = &cbr;
        assert!(
            !decide_2cell_equality(&c, &loop_in_pbr, &idm, GrayFlavor::Symmetric, Builtin::Pbr)
                .unwrap()
                .0
        );
        // symmetric/Psym trivializes it
        assert!(
            decide_2cell_equality(&c, &loop_in_pbr, &idm, GrayFlavor::Symmetric, Builtin::Psym)
                .unwrap()
                .0
        );
        // invalid table entry
        assert!(matches!(
            decide_2cell_equality(&c, &loop_11, &idm, GrayFlavor::Naked, Builtin::Pbr),
            Err(NormalizeError::InvalidTableEntry)
        ));
    }
}
