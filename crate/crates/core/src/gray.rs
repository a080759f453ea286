//! Gray monoid computads and their 1-cells as ordered string diagrams.
//!
//! A diagram is a typed list of levels, exactly one generating or braiding
//! 1-cell per level at a wire offset; the representation is canonical, so
//! ordered-planar-isotopy classes are syntactic equality and diagram
//! equality is field equality.

use crate::movie::Movie;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Label = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrayFlavor {
    Naked,
    Braided,
    Symmetric,
}

/// One level of an ordered string diagram: a generating 1-cell by name, or
/// a braiding of two adjacent generating objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CellKind {
    Gen(String),
    Braid(Sign),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Level {
    pub cell: CellKind,
    pub offset: usize,
}

impl Level {
    pub fn gen(name: &str, offset: usize) -> Level {
        Level {
            cell: CellKind::Gen(String::from(name)),
            offset,
        }
    }

    pub fn braid(sign: Sign, offset: usize) -> Level {
        Level {
            cell: CellKind::Braid(sign),
            offset,
        }
    }
}

/// A generating 1-cell of a computad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen1 {
    pub name: String,
    pub source: Vec<Label>,
    pub target: Vec<Label>,
}

/// A generating 2-cell of a computad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen2 {
    pub name: String,
    pub source: Diagram,
    pub target: Diagram,
    pub invertible: bool,
}

/// An equality of 2-cells: two parallel movies declared equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub name: String,
    pub lhs: Movie,
    pub rhs: Movie,
}

/// Generating data for a (braided/symmetric) Gray monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computad {
    pub flavor: GrayFlavor,
    pub gen0: Vec<Label>,
    pub gen1: Vec<Gen1>,
    pub gen2: Vec<Gen2>,
    pub equalities: Vec<Equality>,
}

impl Computad {
    pub fn gen1(&self, name: &str) -> Option<&Gen1> {
        self.gen1.iter().find(|g| g.name == name)
    }

    pub fn gen2(&self, name: &str) -> Option<&Gen2> {
        self.gen2.iter().find(|g| g.name == name)
    }

    pub fn equality(&self, name: &str) -> Option<&Equality> {
        self.equalities.iter().find(|e| e.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    UnknownGenerator(String),
    OffsetOutOfRange { level: usize },
    SourceMismatch { level: usize },
    BraidNeedsTwoWires { level: usize },
    BoundaryMismatch,
    BadSubregion(&'static str),
    NotBraidedFlavor,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::UnknownGenerator(n) => write!(f, "unknown generating 1-cell {n}"),
            DiagramError::OffsetOutOfRange { level } => {
                write!(f, "offset out of range at level {level}")
            }
            DiagramError::SourceMismatch { level } => {
                write!(f, "cell source does not match wires at level {level}")
            }
            DiagramError::BraidNeedsTwoWires { level } => {
                write!(f, "braiding needs two adjacent wires at level {level}")
            }
            DiagramError::BoundaryMismatch => write!(f, "diagram boundary mismatch"),
            DiagramError::BadSubregion(why) => write!(f, "invalid subregion: {why}"),
            DiagramError::NotBraidedFlavor => {
                write!(f, "braiding cell in a naked Gray monoid diagram")
            }
        }
    }
}

/// An ordered string diagram (a 1-cell).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub source: Vec<Label>,
    pub levels: Vec<Level>,
}

impl Diagram {
    pub fn identity(source: Vec<Label>) -> Diagram {
        Diagram {
            source,
            levels: Vec::new(),
        }
    }

    pub fn width_change(c: &Computad, cell: &CellKind) -> Result<(usize, usize), DiagramError> {
        match cell {
            CellKind::Gen(name) => {
                let g = c
                    .gen1(name)
                    .ok_or_else(|| DiagramError::UnknownGenerator(name.clone()))?;
                Ok((g.source.len(), g.target.len()))
            }
            CellKind::Braid(_) => {
                if c.flavor == GrayFlavor::Naked {
                    return Err(DiagramError::NotBraidedFlavor);
                }
                Ok((2, 2))
            }
        }
    }

    /// Apply one level to a boundary in place; checks labels and offsets.
    fn step_boundary(
        c: &Computad,
        boundary: &mut Vec<Label>,
        level: &Level,
        index: usize,
    ) -> Result<(), DiagramError> {
        match &level.cell {
            CellKind::Gen(name) => {
                let g = c
                    .gen1(name)
                    .ok_or_else(|| DiagramError::UnknownGenerator(name.clone()))?;
                let (p, _) = (g.source.len(), g.target.len());
                if level.offset + p > boundary.len() {
                    return Err(DiagramError::OffsetOutOfRange { level: index });
                }
                if boundary[level.offset..level.offset + p] != g.source[..] {
                    return Err(DiagramError::SourceMismatch { level: index });
                }
                boundary.splice(
                    level.offset..level.offset + p,
                    g.target.iter().cloned(),
                );
            }
            CellKind::Braid(_) => {
                if c.flavor == GrayFlavor::Naked {
                    return Err(DiagramError::NotBraidedFlavor);
                }
                if level.offset + 2 > boundary.len() {
                    return Err(DiagramError::BraidNeedsTwoWires { level: index });
                }
                boundary.swap(level.offset, level.offset + 1);
            }
        }
        Ok(())
    }

    /// Typecheck against a computad; returns the target boundary.
    pub fn typecheck(&self, c: &Computad) -> Result<Vec<Label>, DiagramError> {
        let mut boundary = self.source.clone();
        for (i, level) in self.levels.iter().enumerate() {
            Self::step_boundary(c, &mut boundary, level, i)?;
        }
        Ok(boundary)
    }

    /// All intermediate boundaries, from the source (index 0) to the
    /// target (index levels.len()).
    pub fn boundaries(&self, c: &Computad) -> Result<Vec<Vec<Label>>, DiagramError> {
        let mut out = Vec::with_capacity(self.levels.len() + 1);
        let mut boundary = self.source.clone();
        out.push(boundary.clone());
        for (i, level) in self.levels.iter().enumerate() {
            Self::step_boundary(c, &mut boundary, level, i)?;
            out.push(boundary.clone());
        }
        Ok(out)
    }

    /// Vertical composition: `self` below, `g` above.
    pub fn compose(&self, c: &Computad, g: &Diagram) -> Result<Diagram, DiagramError> {
        if self.typecheck(c)? != g.source {
            return Err(DiagramError::BoundaryMismatch);
        }
        let mut levels = self.levels.clone();
        levels.extend(g.levels.iter().cloned());
        Ok(Diagram {
            source: self.source.clone(),
            levels,
        })
    }

    /// Monoidal product: `self`'s levels first, then `g`'s with offsets
    /// shifted by the width of `self`'s target boundary.
    pub fn tensor(&self, c: &Computad, g: &Diagram) -> Result<Diagram, DiagramError> {
        let t = self.typecheck(c)?;
        let shift = t.len();
        let mut source = self.source.clone();
        source.extend(g.source.iter().cloned());
        let mut levels = self.levels.clone();
        levels.extend(g.levels.iter().map(|l| Level {
            cell: l.cell.clone(),
            offset: l.offset + shift,
        }));
        Ok(Diagram { source, levels })
    }

    /// The wire interval a level occupies at its lower boundary.
    pub fn level_interval(&self, c: &Computad, index: usize) -> Result<(usize, usize), DiagramError> {
        let level = &self.levels[index];
        let (p, _) = Self::width_change(c, &level.cell)?;
        Ok((level.offset, level.offset + p))
    }
}

/// A rectangular subregion of a diagram: a range of levels together with a
/// wire window at the range's lower boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subregion {
    pub lo: usize,
    pub hi: usize,
    pub win_lo: usize,
    pub win_hi: usize,
}

impl Subregion {
    pub fn new(lo: usize, hi: usize, win_lo: usize, win_hi: usize) -> Subregion {
        Subregion {
            lo,
            hi,
            win_lo,
            win_hi,
        }
    }
}

/// Extract the inner diagram of a rectangular subregion. The window must
/// contain every generating 1-cell occurring at the spanned levels
/// (Def. of rectangular subregions), which also rules out side crossings.
pub fn subregion_extract(
    c: &Computad,
    d: &Diagram,
    r: &Subregion,
) -> Result<Diagram, DiagramError> {
    if r.lo > r.hi || r.hi > d.levels.len() {
        return Err(DiagramError::BadSubregion("level range out of bounds"));
    }
    let boundaries = d.boundaries(c)?;
    if r.win_hi > boundaries[r.lo].len() || r.win_lo > r.win_hi {
        return Err(DiagramError::BadSubregion("window out of bounds"));
    }
    let mut win_len = r.win_hi - r.win_lo;
    let source: Vec<Label> = boundaries[r.lo][r.win_lo..r.win_hi].to_vec();
    let mut levels = Vec::with_capacity(r.hi - r.lo);
    for i in r.lo..r.hi {
        let (a, b) = d.level_interval(c, i)?;
        if a < r.win_lo || b > r.win_lo + win_len {
            return Err(DiagramError::BadSubregion(
                "level not contained in the window",
            ));
        }
        let (p, q) = Diagram::width_change(c, &d.levels[i].cell)?;
        let _ = p;
        win_len = win_len + q - (b - a);
        levels.push(Level {
            cell: d.levels[i].cell.clone(),
            offset: d.levels[i].offset - r.win_lo,
        });
    }
    Ok(Diagram { source, levels })
}

/// Replace the contents of a valid subregion with a parallel diagram
/// (same source and target boundaries within the window). Used by movie
/// replay.
pub fn subregion_replace(
    c: &Computad,
    d: &Diagram,
    r: &Subregion,
    replacement: &Diagram,
) -> Result<Diagram, DiagramError> {
    let inner = subregion_extract(c, d, r)?;
    if replacement.source != inner.source {
        return Err(DiagramError::BadSubregion("replacement source mismatch"));
    }
    if replacement.typecheck(c)? != inner.typecheck(c)? {
        return Err(DiagramError::BadSubregion("replacement target mismatch"));
    }
    let mut levels: Vec<Level> = d.levels[..r.lo].to_vec();
    levels.extend(replacement.levels.iter().map(|l| Level {
        cell: l.cell.clone(),
        offset: l.offset + r.win_lo,
    }));
    levels.extend(d.levels[r.hi..].iter().cloned());
    let out = Diagram {
        source: d.source.clone(),
        levels,
    };
    debug_assert_eq!(out.typecheck(c).ok(), d.typecheck(c).ok());
    Ok(out)
}
