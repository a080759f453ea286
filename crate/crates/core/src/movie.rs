//! Movies: 2-cells of a Gray monoid as replayable sequences of generating
//! 2-cell applications at addressed rectangular subregions.
//!
//! The structural generating 2-cells of braided and symmetric Gray monoids
//! (interchangers, braiding inverse-inserts and cancellations,
//! pull-overs/unders, syllepses) are first-class step kinds; computad
//! 2-cells are steps by name with a direction. Every step application is
//! checked: the subregion's extract must match the step's source pattern
//! exactly.

use crate::gray::{
    subregion_extract, subregion_replace, CellKind, Computad, Diagram, DiagramError, GrayFlavor,
    Level, Sign, Subregion,
};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Fwd,
    Rev,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Rev,
            Dir::Rev => Dir::Fwd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The kind of a movie step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// A computad 2-cell applied forward or in reverse.
    Gen2 { name: String, dir: Dir },
    /// Swap two vertically adjacent unconnected cells.
    Interchange,
    /// Insert a cancelling pair of braidings: `sign` below, its inverse
    /// above.
    InverseInsert { sign: Sign },
    /// Remove a cancelling pair (`sign` below, inverse above).
    Cancel { sign: Sign },
    /// A cell passes through one braiding: `side` names where the single
    /// strand sits relative to the cell, `over` whether the cell's strands
    /// pass over it, `dir` whether the cell moves up (fwd) or down (rev).
    Pull { over: bool, side: Side, dir: Dir },
    /// The double positive braiding collapses to the identity (fwd), or is
    /// created (rev). Symmetric Gray monoids only.
    Syllepsis { dir: Dir },
}

impl StepKind {
    pub fn inverse(&self) -> StepKind {
        match self {
            StepKind::Gen2 { name, dir } => StepKind::Gen2 {
                name: name.clone(),
                dir: dir.flip(),
            },
            StepKind::Interchange => StepKind::Interchange,
            StepKind::InverseInsert { sign } => StepKind::Cancel { sign: *sign },
            StepKind::Cancel { sign } => StepKind::InverseInsert { sign: *sign },
            StepKind::Pull { over, side, dir } => StepKind::Pull {
                over: *over,
                side: *side,
                dir: dir.flip(),
            },
            StepKind::Syllepsis { dir } => StepKind::Syllepsis { dir: dir.flip() },
        }
    }

    pub fn is_structural(&self) -> bool {
        !matches!(self, StepKind::Gen2 { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub kind: StepKind,
    pub at: Subregion,
}

/// A movie: a source frame and a list of checked steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Movie {
    pub source: Diagram,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MovieError {
    Diagram(DiagramError),
    StepFailed { index: usize, why: String },
    BoundaryMismatch,
    NotInvertible(String),
    FlavorForbids(&'static str),
    UnknownEquality(String),
    MoveFailed(String),
}

impl fmt::Display for MovieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MovieError::Diagram(e) => write!(f, "diagram: {e}"),
            MovieError::StepFailed { index, why } => {
                write!(f, "step {index} failed: {why}")
            }
            MovieError::BoundaryMismatch => write!(f, "movie boundary mismatch"),
            MovieError::NotInvertible(n) => write!(f, "2-cell {n} is not invertible"),
            MovieError::FlavorForbids(what) => {
                write!(f, "structural cell {what} not available in this flavor")
            }
            MovieError::UnknownEquality(n) => write!(f, "unknown equality {n}"),
            MovieError::MoveFailed(why) => write!(f, "move failed: {why}"),
        }
    }
}

impl From<DiagramError> for MovieError {
    fn from(e: DiagramError) -> Self {
        MovieError::Diagram(e)
    }
}

/// The source and target pattern of a step, as diagrams relative to the
/// step's window. Both patterns share the window's boundary as source.
pub fn step_patterns(
    c: &Computad,
    frame: &Diagram,
    step: &Step,
) -> Result<(Diagram, Diagram), MovieError> {
    let r = &step.at;
    let boundaries = frame.boundaries(c)?;
    if r.lo > frame.levels.len() || r.hi > frame.levels.len() || r.lo > r.hi {
        return Err(MovieError::StepFailed {
            index: 0,
            why: String::from("subregion out of range"),
        });
    }
    if r.win_hi > boundaries[r.lo].len() || r.win_lo > r.win_hi {
        return Err(MovieError::StepFailed {
            index: 0,
            why: String::from("window out of range"),
        });
    }
    let window: Vec<_> = boundaries[r.lo][r.win_lo..r.win_hi].to_vec();
    let rel = |levels: Vec<Level>| Diagram {
        source: window.clone(),
        levels,
    };
    let fail = |why: &str| MovieError::StepFailed {
        index: 0,
        why: String::from(why),
    };
    match &step.kind {
        StepKind::Gen2 { name, dir } => {
            let g = c
                .gen2(name)
                .ok_or_else(|| MovieError::StepFailed {
                    index: 0,
                    why: format!("unknown 2-cell {name}"),
                })?;
            if *dir == Dir::Rev && !g.invertible {
                return Err(MovieError::NotInvertible(name.clone()));
            }
            let (src, tgt) = match dir {
                Dir::Fwd => (g.source.clone(), g.target.clone()),
                Dir::Rev => (g.target.clone(), g.source.clone()),
            };
            if src.source != window || tgt.source != window {
                return Err(fail("window labels do not match the 2-cell boundary"));
            }
            Ok((src, tgt))
        }
        StepKind::Interchange => {
            if r.hi != r.lo + 2 {
                return Err(fail("interchange spans two levels"));
            }
            let inner = subregion_extract(c, frame, r)?;
            let x = &inner.levels[0];
            let y = &inner.levels[1];
            let (px, qx) = Diagram::width_change(c, &x.cell)?;
            let (py, qy) = Diagram::width_change(c, &y.cell)?;
            let (xa, xb) = (x.offset, x.offset + qx); // x's output interval
            let (ya, yb) = (y.offset, y.offset + py); // y's input interval
            let tgt = if ya >= xb {
                // y to the right of x
                vec![
                    Level {
                        cell: y.cell.clone(),
                        offset: ya + px - qx,
                    },
                    Level {
                        cell: x.cell.clone(),
                        offset: x.offset,
                    },
                ]
            } else if yb <= xa {
                // y to the left of x
                vec![
                    Level {
                        cell: y.cell.clone(),
                        offset: y.offset,
                    },
                    Level {
                        cell: x.cell.clone(),
                        offset: x.offset + qy - py,
                    },
                ]
            } else {
                return Err(fail("interchange cells are connected"));
            };
            Ok((inner.clone(), rel(tgt)))
        }
        StepKind::InverseInsert { sign } => {
            require_braided(c)?;
            if r.hi != r.lo || r.win_hi != r.win_lo + 2 {
                return Err(fail("inverse-insert needs an empty band and a 2-wire window"));
            }
            let src = rel(Vec::new());
            let tgt = rel(vec![Level::braid(*sign, 0), Level::braid(sign.flip(), 0)]);
            Ok((src, tgt))
        }
        StepKind::Cancel { sign } => {
            require_braided(c)?;
            if r.hi != r.lo + 2 || r.win_hi != r.win_lo + 2 {
                return Err(fail("cancel needs a 2-level band and a 2-wire window"));
            }
            let src = rel(vec![Level::braid(*sign, 0), Level::braid(sign.flip(), 0)]);
            let tgt = rel(Vec::new());
            Ok((src, tgt))
        }
        StepKind::Syllepsis { dir } => {
            if c.flavor != GrayFlavor::Symmetric {
                return Err(MovieError::FlavorForbids("syllepsis"));
            }
            if r.win_hi != r.win_lo + 2 {
                return Err(fail("syllepsis needs a 2-wire window"));
            }
            let pair = vec![Level::braid(Sign::Pos, 0), Level::braid(Sign::Pos, 0)];
            match dir {
                Dir::Fwd => {
                    if r.hi != r.lo + 2 {
                        return Err(fail("syllepsis fwd needs a 2-level band"));
                    }
                    Ok((rel(pair), rel(Vec::new())))
                }
                Dir::Rev => {
                    if r.hi != r.lo {
                        return Err(fail("syllepsis rev needs an empty band"));
                    }
                    Ok((rel(Vec::new()), rel(pair)))
                }
            }
        }
        StepKind::Pull { over, side, dir } => {
            require_braided(c)?;
            let inner = subregion_extract(c, frame, r)?;
            if inner.levels.is_empty() {
                return Err(fail("pull band is empty"));
            }
            // locate the moving cell: bottom level for fwd, top for rev
            let x = match dir {
                Dir::Fwd => inner.levels[0].clone(),
                Dir::Rev => inner.levels[inner.levels.len() - 1].clone(),
            };
            let (p, q) = Diagram::width_change(c, &x.cell)?;
            // reconstruct the cell's fwd-source offset
            let rpos = match dir {
                Dir::Fwd => x.offset,
                Dir::Rev => match side {
                    Side::Right => x.offset - 1,
                    Side::Left => x.offset + 1,
                },
            };
            let (src, tgt) = pull_patterns(&x.cell, p, q, rpos, *side, *over)
                .map_err(|why| fail(why))?;
            match dir {
                Dir::Fwd => Ok((rel(src), rel(tgt))),
                Dir::Rev => Ok((rel(tgt), rel(src))),
            }
        }
    }
}

fn require_braided(c: &Computad) -> Result<(), MovieError> {
    if c.flavor == GrayFlavor::Naked {
        Err(MovieError::FlavorForbids("braiding"))
    } else {
        Ok(())
    }
}

/// Source and target level lists of the forward pull of cell `x`
/// (arities p→q) at window-relative offset `rpos`, through one strand on
/// the given side. Forward means the cell starts below the crossing.
fn pull_patterns(
    x: &CellKind,
    p: usize,
    q: usize,
    rpos: usize,
    side: Side,
    over: bool,
) -> Result<(Vec<Level>, Vec<Level>), &'static str> {
    let mk = |cell: &CellKind, off: usize| Level {
        cell: cell.clone(),
        offset: off,
    };
    match side {
        Side::Right => {
            // crossings of the strand at rpos+q (resp. rpos+p) with the
            // cell's outputs (resp. inputs); cell's strands over => Pos
            let sign = if over { Sign::Pos } else { Sign::Neg };
            let mut src = vec![mk(x, rpos)];
            for j in (0..q).rev() {
                src.push(Level::braid(sign, rpos + j));
            }
            let mut tgt = Vec::new();
            for j in (0..p).rev() {
                tgt.push(Level::braid(sign, rpos + j));
            }
            tgt.push(mk(x, rpos + 1));
            Ok((src, tgt))
        }
        Side::Left => {
            if rpos == 0 {
                return Err("no strand to the left");
            }
            let sign = if over { Sign::Neg } else { Sign::Pos };
            let mut src = vec![mk(x, rpos)];
            for j in 0..q {
                src.push(Level::braid(sign, rpos - 1 + j));
            }
            let mut tgt = Vec::new();
            for j in 0..p {
                tgt.push(Level::braid(sign, rpos - 1 + j));
            }
            tgt.push(mk(x, rpos - 1));
            Ok((src, tgt))
        }
    }
}

/// Apply one step to a frame, validating the pattern match.
pub fn apply_step(c: &Computad, frame: &Diagram, step: &Step) -> Result<Diagram, MovieError> {
    let (src, tgt) = step_patterns(c, frame, step)?;
    let extracted = subregion_extract(c, frame, &step.at)?;
    if extracted != src {
        return Err(MovieError::StepFailed {
            index: 0,
            why: format!(
                "pattern mismatch: expected {:?}, found {:?} at {:?}",
                src, extracted, step.at
            ),
        });
    }
    Ok(subregion_replace(c, frame, &step.at, &tgt)?)
}

impl Movie {
    pub fn identity(source: Diagram) -> Movie {
        Movie {
            source,
            steps: Vec::new(),
        }
    }

    /// All frames, source first. Every intermediate frame typechecks.
    pub fn frames(&self, c: &Computad) -> Result<Vec<Diagram>, MovieError> {
        self.source.typecheck(c)?;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.source.clone());
        let mut cur = self.source.clone();
        for (i, step) in self.steps.iter().enumerate() {
            cur = apply_step(c, &cur, step).map_err(|e| match e {
                MovieError::StepFailed { why, .. } => MovieError::StepFailed { index: i, why },
                other => other,
            })?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Replay and return the target frame.
    pub fn target(&self, c: &Computad) -> Result<Diagram, MovieError> {
        Ok(self.frames(c)?.pop().expect("frames nonempty"))
    }

    pub fn is_loop(&self, c: &Computad) -> Result<bool, MovieError> {
        Ok(self.target(c)? == self.source)
    }

    /// Reverse the movie: each step is inverted and the order flipped.
    pub fn invert(&self, c: &Computad) -> Result<Movie, MovieError> {
        let frames = self.frames(c)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate().rev() {
            if let StepKind::Gen2 { name, .. } = &step.kind {
                let g = c.gen2(name).ok_or_else(|| MovieError::StepFailed {
                    index: i,
                    why: format!("unknown 2-cell {name}"),
                })?;
                if !g.invertible {
                    return Err(MovieError::NotInvertible(name.clone()));
                }
            }
            let (src, tgt) = step_patterns(c, &frames[i], step)?;
            let _ = src;
            steps.push(Step {
                kind: step.kind.inverse(),
                at: Subregion::new(
                    step.at.lo,
                    step.at.lo + tgt.levels.len(),
                    step.at.win_lo,
                    step.at.win_hi,
                ),
            });
        }
        Ok(Movie {
            source: frames.last().expect("nonempty").clone(),
            steps,
        })
    }

    /// Vertical pasting: `self` then `next` (target of self = source of
    /// next).
    pub fn then(&self, c: &Computad, next: &Movie) -> Result<Movie, MovieError> {
        if self.target(c)? != next.source {
            return Err(MovieError::BoundaryMismatch);
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(Movie {
            source: self.source.clone(),
            steps,
        })
    }

    /// Horizontal composition along objects: `self` on the lower 1-cell,
    /// `upper` on the upper; the earlier (lower) factor's steps first.
    pub fn beside(&self, c: &Computad, upper: &Movie) -> Result<Movie, MovieError> {
        let lower_target = self.target(c)?;
        if lower_target.typecheck(c)? != upper.source.source {
            return Err(MovieError::BoundaryMismatch);
        }
        let source = self.source.compose(c, &upper.source)?;
        let shift = lower_target.levels.len();
        // self's steps act on the lower band; before they run, the upper
        // band still holds upper.source above self's evolving frames, so
        // their addresses are unchanged; upper's steps act after the lower
        // band has settled into lower_target.
        let mut steps = self.steps.clone();
        steps.extend(upper.steps.iter().map(|s| Step {
            kind: s.kind.clone(),
            at: Subregion::new(
                s.at.lo + shift,
                s.at.hi + shift,
                s.at.win_lo,
                s.at.win_hi,
            ),
        }));
        Ok(Movie { source, steps })
    }

    /// Monoidal product: `self` on the left factor, `right` on the right.
    pub fn tensor(&self, c: &Computad, right: &Movie) -> Result<Movie, MovieError> {
        let left_target = self.target(c)?;
        let source = self.source.tensor(c, &right.source)?;
        let level_shift = left_target.levels.len();
        let wire_shift = left_target.typecheck(c)?.len();
        let mut steps = self.steps.clone();
        steps.extend(right.steps.iter().map(|s| Step {
            kind: s.kind.clone(),
            at: Subregion::new(
                s.at.lo + level_shift,
                s.at.hi + level_shift,
                s.at.win_lo + wire_shift,
                s.at.win_hi + wire_shift,
            ),
        }));
        Ok(Movie { source, steps })
    }
}

// ---------------------------------------------------------------------------
// Moves: the structural identifications of movies
// ---------------------------------------------------------------------------

/// A rewrite of a movie that preserves the 2-cell it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Swap the steps at `index` and `index+1` (disjoint level bands).
    TypeI { index: usize },
    /// Insert `step` followed by its inverse at `index`.
    TypeIIInsert { index: usize, step: Step },
    /// Delete the mutually inverse steps at `index`, `index+1`.
    TypeIIDelete { index: usize },
    /// Commute the step at `index+1` before the step at `index` when one
    /// is an interchanger involving the other's cells.
    TypeIII { index: usize },
    /// Replace the clip starting at `at_step` matching one side of the
    /// named computad equality (translated by `d_level`, `d_wire`) with
    /// the other side.
    Equality {
        name: String,
        at_step: usize,
        d_level: isize,
        d_wire: isize,
        rhs_to_lhs: bool,
    },
}

fn translate_sub(at: &Subregion, d_level: isize, d_wire: isize) -> Subregion {
    Subregion::new(
        (at.lo as isize + d_level) as usize,
        (at.hi as isize + d_level) as usize,
        (at.win_lo as isize + d_wire) as usize,
        (at.win_hi as isize + d_wire) as usize,
    )
}

/// The level band a step rewrites: `(lo, src_len, tgt_len)`.
fn step_band(c: &Computad, frame: &Diagram, step: &Step) -> Result<(usize, usize, usize), MovieError> {
    let (src, tgt) = step_patterns(c, frame, step)?;
    Ok((step.at.lo, src.levels.len(), tgt.levels.len()))
}

/// Apply a structural move; the result represents the same 2-cell and is
/// validated by replay (same endpoints).
pub fn apply_move(c: &Computad, movie: &Movie, mv: &Move) -> Result<Movie, MovieError> {
    let frames = movie.frames(c)?;
    let out = match mv {
        Move::TypeI { index } => {
            let i = *index;
            if i + 1 >= movie.steps.len() {
                return Err(MovieError::MoveFailed(String::from("index out of range")));
            }
            let (lo1, s1, t1) = step_band(c, &frames[i], &movie.steps[i])?;
            let (lo2, s2, _t2) = step_band(c, &frames[i + 1], &movie.steps[i + 1])?;
            let mut steps = movie.steps.clone();
            if lo2 >= lo1 + t1 {
                // second band above the first's rewritten band
                let delta = t1 as isize - s1 as isize;
                let mut a = movie.steps[i + 1].clone();
                a.at = translate_sub(&a.at, -delta, 0);
                let b = movie.steps[i].clone();
                steps[i] = a;
                steps[i + 1] = b;
            } else if lo2 + s2 <= lo1 {
                // second band below the first
                let a = movie.steps[i + 1].clone();
                let mut b = movie.steps[i].clone();
                let (_, s2b, t2b) = step_band(c, &frames[i + 1], &movie.steps[i + 1])?;
                let delta = t2b as isize - s2b as isize;
                b.at = translate_sub(&b.at, delta, 0);
                steps[i] = a;
                steps[i + 1] = b;
            } else {
                return Err(MovieError::MoveFailed(String::from(
                    "bands overlap; not a Type I pair",
                )));
            }
            Movie {
                source: movie.source.clone(),
                steps,
            }
        }
        Move::TypeIIInsert { index, step } => {
            let mut steps = movie.steps.clone();
            if *index > steps.len() {
                return Err(MovieError::MoveFailed(String::from("index out of range")));
            }
            let frame = &frames[*index];
            let (_src, tgt) = step_patterns(c, frame, step)?;
            let inv = Step {
                kind: step.kind.inverse(),
                at: Subregion::new(
                    step.at.lo,
                    step.at.lo + tgt.levels.len(),
                    step.at.win_lo,
                    step.at.win_hi,
                ),
            };
            steps.insert(*index, inv);
            steps.insert(*index, step.clone());
            Movie {
                source: movie.source.clone(),
                steps,
            }
        }
        Move::TypeIIDelete { index } => {
            let i = *index;
            if i + 1 >= movie.steps.len() {
                return Err(MovieError::MoveFailed(String::from("index out of range")));
            }
            if frames[i] != frames[i + 2] {
                return Err(MovieError::MoveFailed(String::from(
                    "steps are not mutually inverse",
                )));
            }
            let a = &movie.steps[i];
            let b = &movie.steps[i + 1];
            if a.kind.inverse() != b.kind || a.at.lo != b.at.lo || a.at.win_lo != b.at.win_lo {
                return Err(MovieError::MoveFailed(String::from(
                    "steps are not an inverse pair at the same address",
                )));
            }
            let mut steps = movie.steps.clone();
            steps.drain(i..i + 2);
            Movie {
                source: movie.source.clone(),
                steps,
            }
        }
        Move::TypeIII { index } => {
            let i = *index;
            if i + 1 >= movie.steps.len() {
                return Err(MovieError::MoveFailed(String::from("index out of range")));
            }
            // bounded search for the commuted pair with adjusted addresses
            let target = &frames[i + 2];
            let kinds_involve_interchange = matches!(movie.steps[i].kind, StepKind::Interchange)
                || matches!(movie.steps[i + 1].kind, StepKind::Interchange);
            if !kinds_involve_interchange {
                return Err(MovieError::MoveFailed(String::from(
                    "Type III needs an interchanger in the pair",
                )));
            }
            let mut found: Option<(Step, Step)> = None;
            'search: for dl2 in -3isize..=3 {
                for dw2 in -3isize..=3 {
                    let cand2 = Step {
                        kind: movie.steps[i + 1].kind.clone(),
                        at: try_translate(&movie.steps[i + 1].at, dl2, dw2),
                    };
                    let Ok(mid) = apply_step(c, &frames[i], &cand2) else {
                        continue;
                    };
                    for dl1 in -3isize..=3 {
                        for dw1 in -3isize..=3 {
                            let cand1 = Step {
                                kind: movie.steps[i].kind.clone(),
                                at: try_translate(&movie.steps[i].at, dl1, dw1),
                            };
                            if let Ok(end) = apply_step(c, &mid, &cand1) {
                                if &end == target {
                                    found = Some((cand2, cand1));
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
            let (a, b) = found.ok_or_else(|| {
                MovieError::MoveFailed(String::from("no valid Type III commutation found"))
            })?;
            let mut steps = movie.steps.clone();
            steps[i] = a;
            steps[i + 1] = b;
            Movie {
                source: movie.source.clone(),
                steps,
            }
        }
        Move::Equality {
            name,
            at_step,
            d_level,
            d_wire,
            rhs_to_lhs,
        } => {
            let eq = c
                .equality(name)
                .ok_or_else(|| MovieError::UnknownEquality(name.clone()))?;
            let (from, to) = if *rhs_to_lhs {
                (&eq.rhs, &eq.lhs)
            } else {
                (&eq.lhs, &eq.rhs)
            };
            let i = *at_step;
            if i + from.steps.len() > movie.steps.len() {
                return Err(MovieError::MoveFailed(String::from(
                    "clip extends past the end of the movie",
                )));
            }
            for (j, s) in from.steps.iter().enumerate() {
                let expected = Step {
                    kind: s.kind.clone(),
                    at: translate_sub(&s.at, *d_level, *d_wire),
                };
                if movie.steps[i + j] != expected {
                    return Err(MovieError::MoveFailed(format!(
                        "clip step {j} does not match the equality side"
                    )));
                }
            }
            let mut steps: Vec<Step> = movie.steps[..i].to_vec();
            steps.extend(to.steps.iter().map(|s| Step {
                kind: s.kind.clone(),
                at: translate_sub(&s.at, *d_level, *d_wire),
            }));
            steps.extend(movie.steps[i + from.steps.len()..].iter().cloned());
            Movie {
                source: movie.source.clone(),
                steps,
            }
        }
    };
    // every move preserves endpoints; validate by replay
    let new_frames = out.frames(c).map_err(|e| {
        MovieError::MoveFailed(format!("rewritten movie does not replay: {e}"))
    })?;
    if new_frames.last() != frames.last() {
        return Err(MovieError::MoveFailed(String::from(
            "move changed the target frame",
        )));
    }
    Ok(out)
}

fn try_translate(at: &Subregion, d_level: isize, d_wire: isize) -> Subregion {
    let lo = at.lo as isize + d_level;
    let hi = at.hi as isize + d_level;
    let wl = at.win_lo as isize + d_wire;
    let wh = at.win_hi as isize + d_wire;
    if lo < 0 || hi < 0 || wl < 0 || wh < 0 {
        // out-of-range translations yield an address that will simply fail
        Subregion::new(usize::MAX, usize::MAX, usize::MAX, usize::MAX)
    } else {
        Subregion::new(lo as usize, hi as usize, wl as usize, wh as usize)
    }
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

/// Incremental movie construction with automatic subregion bookkeeping.
pub struct MovieBuilder<'a> {
    c: &'a Computad,
    source: Diagram,
    frame: Diagram,
    steps: Vec<Step>,
}

impl<'a> MovieBuilder<'a> {
    pub fn new(c: &'a Computad, source: Diagram) -> Result<Self, MovieError> {
        source.typecheck(c)?;
        Ok(MovieBuilder {
            c,
            frame: source.clone(),
            source,
            steps: Vec::new(),
        })
    }

    pub fn frame(&self) -> &Diagram {
        &self.frame
    }

    pub fn finish(self) -> Movie {
        Movie {
            source: self.source,
            steps: self.steps,
        }
    }

    fn push(&mut self, step: Step) -> Result<&mut Self, MovieError> {
        self.frame = apply_step(self.c, &self.frame, &step)?;
        self.steps.push(step);
        Ok(self)
    }

    /// Apply a computad 2-cell whose pattern starts at `lo` with its
    /// window at `win_lo`.
    pub fn gen2(&mut self, name: &str, dir: Dir, lo: usize, win_lo: usize) -> Result<&mut Self, MovieError> {
        let g = self.c.gen2(name).ok_or_else(|| MovieError::StepFailed {
            index: 0,
            why: format!("unknown 2-cell {name}"),
        })?;
        let pat = match dir {
            Dir::Fwd => &g.source,
            Dir::Rev => &g.target,
        };
        let at = Subregion::new(
            lo,
            lo + pat.levels.len(),
            win_lo,
            win_lo + pat.source.len(),
        );
        self.push(Step {
            kind: StepKind::Gen2 {
                name: String::from(name),
                dir,
            },
            at,
        })
    }

    /// Interchange levels `lo` and `lo+1`, window computed automatically.
    pub fn interchange(&mut self, lo: usize) -> Result<&mut Self, MovieError> {
        let c = self.c;
        let x = &self.frame.levels[lo];
        let y = &self.frame.levels[lo + 1];
        let (px, qx) = Diagram::width_change(c, &x.cell)?;
        let (py, _qy) = Diagram::width_change(c, &y.cell)?;
        // y's footprint at the band's bottom boundary
        let (ya, yb) = if y.offset >= x.offset + qx {
            (y.offset + px - qx, y.offset + px - qx + py)
        } else {
            (y.offset, y.offset + py)
        };
        let win_lo = x.offset.min(ya);
        let win_hi = (x.offset + px).max(yb);
        self.push(Step {
            kind: StepKind::Interchange,
            at: Subregion::new(lo, lo + 2, win_lo, win_hi),
        })
    }

    pub fn insert(&mut self, sign: Sign, lo: usize, wire: usize) -> Result<&mut Self, MovieError> {
        self.push(Step {
            kind: StepKind::InverseInsert { sign },
            at: Subregion::new(lo, lo, wire, wire + 2),
        })
    }

    pub fn cancel(&mut self, lo: usize) -> Result<&mut Self, MovieError> {
        let level = &self.frame.levels[lo];
        let CellKind::Braid(sign) = level.cell else {
            return Err(MovieError::MoveFailed(String::from(
                "cancel must start at a braiding",
            )));
        };
        let wire = level.offset;
        self.push(Step {
            kind: StepKind::Cancel { sign },
            at: Subregion::new(lo, lo + 2, wire, wire + 2),
        })
    }

    pub fn syllepsis(&mut self, lo: usize) -> Result<&mut Self, MovieError> {
        let wire = self.frame.levels[lo].offset;
        self.push(Step {
            kind: StepKind::Syllepsis { dir: Dir::Fwd },
            at: Subregion::new(lo, lo + 2, wire, wire + 2),
        })
    }

    pub fn syllepsis_rev(&mut self, lo: usize, wire: usize) -> Result<&mut Self, MovieError> {
        self.push(Step {
            kind: StepKind::Syllepsis { dir: Dir::Rev },
            at: Subregion::new(lo, lo, wire, wire + 2),
        })
    }

    /// Pull the cell at level `x_level` up (fwd) or down (rev) through the
    /// adjacent braiding; side and over/under are inferred by trying the
    /// four geometries.
    pub fn pull(&mut self, x_level: usize, dir: Dir) -> Result<&mut Self, MovieError> {
        let c = self.c;
        let x = self.frame.levels[x_level].clone();
        let (p, q) = Diagram::width_change(c, &x.cell)?;
        let band = match dir {
            Dir::Fwd => Some((x_level, x_level + 1 + q)),
            Dir::Rev => x_level.checked_sub(p).map(|lo| (lo, x_level + 1)),
        };
        let Some((lo, hi)) = band else {
            return Err(MovieError::MoveFailed(String::from("pull band underflow")));
        };
        if hi > self.frame.levels.len() {
            return Err(MovieError::MoveFailed(String::from("pull band overflow")));
        }
        let Some(win) = self.band_window(lo, hi) else {
            return Err(MovieError::MoveFailed(String::from("pull band not rectangular")));
        };
        for side in [Side::Right, Side::Left] {
            for over in [true, false] {
                let step = Step {
                    kind: StepKind::Pull { over, side, dir },
                    at: Subregion::new(lo, hi, win.0, win.1),
                };
                if let Ok(next) = apply_step(c, &self.frame, &step) {
                    self.frame = next;
                    self.steps.push(step);
                    return Ok(self);
                }
            }
        }
        Err(MovieError::MoveFailed(format!(
            "no pull geometry matches at level {x_level}"
        )))
    }

    /// Minimal wire window (at the band's bottom boundary) containing all
    /// the levels of `[lo, hi)`. The left edge is the least level offset;
    /// the right edge accounts for width changes inside the band.
    fn band_window(&self, lo: usize, hi: usize) -> Option<(usize, usize)> {
        let c = self.c;
        let mut win_lo = usize::MAX;
        let mut need_hi: isize = 0;
        let mut shift: isize = 0; // accumulated width change inside the band
        for i in lo..hi {
            let level = &self.frame.levels[i];
            let (p, q) = Diagram::width_change(c, &level.cell).ok()?;
            win_lo = win_lo.min(level.offset);
            need_hi = need_hi.max(level.offset as isize + p as isize - shift);
            shift += q as isize - p as isize;
        }
        if win_lo == usize::MAX {
            None
        } else {
            Some((win_lo, need_hi.max(win_lo as isize + 1) as usize))
        }
    }
}
