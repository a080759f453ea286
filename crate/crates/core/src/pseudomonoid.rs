//! The built-in pseudomonoid computads P, P^br, P^sym, the biequivalence
//! maps on 0-, 1- and 2-cells, and the MacLane coherence checker.

use crate::braid::{BraidWord, Letter, Permutation};

use crate::gray::{
    Computad, Diagram, Equality, Gen1, Gen2, GrayFlavor, Label, Level, Sign,
};
use crate::movie::{Dir, Movie, MovieBuilder, MovieError};
use crate::procat::{FsBr2Cell, ProMorphism};
use crate::wordpath::{self, WordMove};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// The pseudomonoid computad (naked).
    P,
    /// The braided pseudomonoid computad.
    Pbr,
    /// The symmetric pseudomonoid computad.
    Psym,
}

pub fn obj(n: usize) -> Vec<Label> {
    (0..n).map(|_| String::from("C")).collect()
}

fn diagram(n: usize, levels: Vec<Level>) -> Diagram {
    Diagram {
        source: obj(n),
        levels,
    }
}

/// The built-in computad in its own ambient flavor.
pub fn builtin_computad(which: Builtin) -> Computad {
    let flavor = match which {
        Builtin::P => GrayFlavor::Naked,
        Builtin::Pbr => GrayFlavor::Braided,
        Builtin::Psym => GrayFlavor::Symmetric,
    };
    builtin_cells(which, flavor)
}

/// The built-in computad read in an ambient flavor at least as rich as its
/// own: generating cells m, u; 2-cells α, λ, ρ (+ c); equalities pentagon,
/// triangle (+ hexagons; + symmetry), each a pair of parallel movies.
pub fn builtin_cells(which: Builtin, flavor: GrayFlavor) -> Computad {
    let mut gen2 = vec![
        Gen2 {
            name: String::from("alpha"),
            source: diagram(3, vec![Level::gen("m", 0), Level::gen("m", 0)]),
            target: diagram(3, vec![Level::gen("m", 1), Level::gen("m", 0)]),
            invertible: true,
        },
        Gen2 {
            name: String::from("lambda"),
            source: diagram(1, vec![Level::gen("u", 0), Level::gen("m", 0)]),
            target: diagram(1, vec![]),
            invertible: true,
        },
        Gen2 {
            name: String::from("rho"),
            source: diagram(1, vec![Level::gen("u", 1), Level::gen("m", 0)]),
            target: diagram(1, vec![]),
            invertible: true,
        },
    ];
    if which != Builtin::P {
        gen2.push(Gen2 {
            name: String::from("c"),
            source: diagram(2, vec![Level::braid(Sign::Pos, 0), Level::gen("m", 0)]),
            target: diagram(2, vec![Level::gen("m", 0)]),
            invertible: true,
        });
    }
    let mut c = Computad {
        flavor,
        gen0: vec![String::from("C")],
        gen1: vec![
            Gen1 {
                name: String::from("m"),
                source: obj(2),
                target: obj(1),
            },
            Gen1 {
                name: String::from("u"),
                source: obj(0),
                target: obj(1),
            },
        ],
        gen2,
        equalities: Vec::new(),
    };
    c.equalities = computad_equalities(&c, which).expect("builtin equalities replay");
    c
}

fn computad_equalities(c: &Computad, which: Builtin) -> Result<Vec<Equality>, MovieError> {
    let mut out = Vec::new();
    // pentagon: two routes from the left comb on four wires to the right
    // comb; the first route needs one interchanger
    {
        let src = diagram(4, vec![Level::gen("m", 0), Level::gen("m", 0), Level::gen("m", 0)]);
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.gen2("alpha", Dir::Fwd, 1, 0)?;
        lhs.interchange(0)?;
        lhs.gen2("alpha", Dir::Fwd, 1, 0)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.gen2("alpha", Dir::Fwd, 0, 0)?;
        rhs.gen2("alpha", Dir::Fwd, 1, 0)?;
        rhs.gen2("alpha", Dir::Fwd, 0, 1)?;
        out.push(check_pair("pentagon", c, lhs.finish(), rhs.finish())?);
    }
    // triangle
    {
        let src = diagram(2, vec![Level::gen("u", 1), Level::gen("m", 0), Level::gen("m", 0)]);
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.gen2("alpha", Dir::Fwd, 1, 0)?;
        lhs.gen2("lambda", Dir::Fwd, 0, 1)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.gen2("rho", Dir::Fwd, 0, 0)?;
        out.push(check_pair("triangle", c, lhs.finish(), rhs.finish())?);
    }
    if which == Builtin::P {
        return Ok(out);
    }
    // hexagon 1: absorbing the two crossings of a strand passing right
    {
        let src = diagram(
            3,
            vec![
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 1),
                Level::gen("m", 1),
                Level::gen("m", 0),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.gen2("c", Dir::Fwd, 1, 1)?;
        lhs.gen2("alpha", Dir::Rev, 1, 0)?;
        lhs.gen2("c", Dir::Fwd, 0, 0)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.gen2("alpha", Dir::Rev, 2, 0)?;
        rhs.pull(2, Dir::Rev)?;
        rhs.gen2("c", Dir::Fwd, 1, 0)?;
        rhs.gen2("alpha", Dir::Rev, 0, 0)?;
        out.push(check_pair("hexagon1", c, lhs.finish(), rhs.finish())?);
    }
    // hexagon 2: the mirror, a block passing right over one strand
    {
        let src = diagram(
            3,
            vec![
                Level::braid(Sign::Pos, 1),
                Level::braid(Sign::Pos, 0),
                Level::gen("m", 0),
                Level::gen("m", 0),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.gen2("alpha", Dir::Fwd, 2, 0)?;
        lhs.pull(2, Dir::Rev)?;
        lhs.gen2("c", Dir::Fwd, 1, 0)?;
        lhs.gen2("alpha", Dir::Fwd, 0, 0)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.gen2("c", Dir::Fwd, 1, 0)?;
        rhs.gen2("alpha", Dir::Fwd, 1, 0)?;
        rhs.gen2("c", Dir::Fwd, 0, 1)?;
        out.push(check_pair("hexagon2", c, lhs.finish(), rhs.finish())?);
    }
    if which == Builtin::Pbr {
        return Ok(out);
    }
    // symmetry: the identity movie equals creating the double braiding and
    // absorbing it with two commutators
    {
        let src = diagram(2, vec![Level::gen("m", 0)]);
        let lhs = Movie::identity(src.clone());
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.syllepsis_rev(0, 0)?;
        rhs.gen2("c", Dir::Fwd, 1, 0)?;
        rhs.gen2("c", Dir::Fwd, 0, 0)?;
        out.push(check_pair("symmetry", c, lhs, rhs.finish())?);
    }
    Ok(out)
}

fn check_pair(name: &str, c: &Computad, lhs: Movie, rhs: Movie) -> Result<Equality, MovieError> {
    if lhs.source != rhs.source || lhs.target(c)? != rhs.target(c)? {
        return Err(MovieError::BoundaryMismatch);
    }
    Ok(Equality {
        name: String::from(name),
        lhs,
        rhs,
    })
}

/// The structural-equality library over a builtin computad: coherence
/// equalities of the (braided/symmetric) Gray monoid, instantiated at the
/// computad's cells, each a verified pair of parallel movies.
pub fn structural_library(c: &Computad) -> Result<Vec<Equality>, MovieError> {
    let mut out = Vec::new();
    if c.flavor == GrayFlavor::Naked {
        return Ok(out);
    }
    // ADJ: the two snake cancellations are the identity 2-cell
    for (name, sign) in [("adj:plus", Sign::Pos), ("adj:minus", Sign::Neg)] {
        let src = diagram(2, vec![Level::braid(sign, 0)]);
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.insert(sign, 0, 0)?;
        lhs.cancel(1)?;
        out.push(check_pair(name, c, lhs.finish(), Movie::identity(src))?);
    }
    // S+ = S-: the two instantiations of the braid move
    {
        let src = diagram(
            3,
            vec![
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 1),
                Level::braid(Sign::Pos, 0),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.pull(0, Dir::Fwd)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.pull(2, Dir::Rev)?;
        out.push(check_pair("braid-move", c, lhs.finish(), rhs.finish())?);
    }
    // PT-B, all four variants (cell m, single strand on either side)
    {
        // strand on the left of the cell
        for (name, sign) in [("pt-b:plus:left", Sign::Pos), ("pt-b:minus:left", Sign::Neg)] {
            let src = diagram(3, vec![Level::gen("m", 1)]);
            let mut lhs = MovieBuilder::new(c, src.clone())?;
            lhs.insert(sign, 1, 0)?;
            lhs.pull(0, Dir::Fwd)?;
            let mut rhs = MovieBuilder::new(c, src)?;
            rhs.insert(sign, 0, 0)?;
            rhs.insert(sign, 1, 1)?;
            rhs.pull(4, Dir::Rev)?;
            out.push(check_pair(name, c, lhs.finish(), rhs.finish())?);
        }
        // strand on the right of the cell
        for (name, sign) in [
            ("pt-b:plus:right", Sign::Pos),
            ("pt-b:minus:right", Sign::Neg),
        ] {
            let src = diagram(3, vec![Level::gen("m", 0)]);
            let mut lhs = MovieBuilder::new(c, src.clone())?;
            lhs.insert(sign, 1, 0)?;
            lhs.pull(0, Dir::Fwd)?;
            let mut rhs = MovieBuilder::new(c, src)?;
            rhs.insert(sign, 0, 1)?;
            rhs.insert(sign, 1, 0)?;
            rhs.pull(4, Dir::Rev)?;
            out.push(check_pair(name, c, lhs.finish(), rhs.finish())?);
        }
    }
    // pulling two cells through one crossing, in either order
    {
        let src = diagram(
            4,
            vec![Level::gen("m", 0), Level::gen("m", 1), Level::braid(Sign::Pos, 0)],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.pull(1, Dir::Fwd)?;
        lhs.pull(0, Dir::Fwd)?;
        lhs.pull(2, Dir::Fwd)?;
        lhs.interchange(4)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.interchange(0)?;
        rhs.pull(1, Dir::Fwd)?;
        rhs.pull(0, Dir::Fwd)?;
        rhs.pull(2, Dir::Fwd)?;
        rhs.interchange(1)?;
        out.push(check_pair("pull-both", c, lhs.finish(), rhs.finish())?);
    }
    // a 2-cell slides past a pullthrough, on either side of the strand
    if c.flavor != GrayFlavor::Naked && c.gen2("c").is_some() {
        {
            let src = diagram(
                3,
                vec![
                    Level::braid(Sign::Pos, 1),
                    Level::gen("m", 1),
                    Level::braid(Sign::Pos, 0),
                ],
            );
            let mut lhs = MovieBuilder::new(c, src.clone())?;
            lhs.gen2("c", Dir::Fwd, 0, 1)?;
            lhs.pull(0, Dir::Fwd)?;
            let mut rhs = MovieBuilder::new(c, src)?;
            rhs.pull(1, Dir::Fwd)?;
            rhs.pull(0, Dir::Fwd)?;
            rhs.gen2("c", Dir::Fwd, 2, 0)?;
            out.push(check_pair("cell-past-pull:left", c, lhs.finish(), rhs.finish())?);
        }
        {
            let src = diagram(
                3,
                vec![
                    Level::braid(Sign::Pos, 0),
                    Level::gen("m", 0),
                    Level::braid(Sign::Pos, 0),
                ],
            );
            let mut lhs = MovieBuilder::new(c, src.clone())?;
            lhs.gen2("c", Dir::Fwd, 0, 0)?;
            lhs.pull(0, Dir::Fwd)?;
            let mut rhs = MovieBuilder::new(c, src)?;
            rhs.pull(1, Dir::Fwd)?;
            rhs.pull(0, Dir::Fwd)?;
            rhs.gen2("c", Dir::Fwd, 2, 1)?;
            out.push(check_pair("cell-past-pull:right", c, lhs.finish(), rhs.finish())?);
        }
    }
    // pulling a composite through a crossing equals the sequence of pulls,
    // with an inert inserted pair as the alternative route
    {
        let src = diagram(
            4,
            vec![Level::gen("m", 0), Level::gen("m", 0), Level::braid(Sign::Pos, 0)],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.pull(1, Dir::Fwd)?;
        lhs.interchange(0)?;
        lhs.pull(1, Dir::Fwd)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.insert(Sign::Pos, 3, 0)?;
        rhs.pull(1, Dir::Fwd)?;
        rhs.interchange(0)?;
        rhs.pull(1, Dir::Fwd)?;
        rhs.cancel(5)?;
        out.push(check_pair("pull-composite:right", c, lhs.finish(), rhs.finish())?);
    }
    {
        let src = diagram(
            4,
            vec![Level::gen("m", 1), Level::gen("m", 1), Level::braid(Sign::Pos, 0)],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.pull(1, Dir::Fwd)?;
        lhs.pull(0, Dir::Fwd)?;
        lhs.interchange(2)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.insert(Sign::Pos, 3, 0)?;
        rhs.pull(1, Dir::Fwd)?;
        rhs.pull(0, Dir::Fwd)?;
        rhs.interchange(2)?;
        rhs.cancel(5)?;
        out.push(check_pair("pull-composite:left", c, lhs.finish(), rhs.finish())?);
    }
    // monoidality of the inverse-inserts: two expansion orders of a block
    // insert
    for (name, sign) in [
        ("block-insert:plus", Sign::Pos),
        ("block-insert:minus", Sign::Neg),
    ] {
        let src = diagram(3, vec![]);
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.insert(sign, 0, 0)?;
        lhs.insert(sign, 1, 1)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.insert(sign, 0, 1)?;
        rhs.insert(sign, 2, 0)?;
        rhs.cancel(0)?;
        rhs.insert(sign, 1, 1)?;
        out.push(check_pair(name, c, lhs.finish(), rhs.finish())?);
    }
    if c.flavor != GrayFlavor::Symmetric {
        return Ok(out);
    }
    // PT-SYL, both variants
    {
        let src = diagram(
            3,
            vec![
                Level::gen("m", 1),
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 0),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.syllepsis(1)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.pull(0, Dir::Fwd)?;
        rhs.pull(2, Dir::Fwd)?;
        rhs.syllepsis(1)?;
        rhs.syllepsis(0)?;
        out.push(check_pair("pt-syl:left", c, lhs.finish(), rhs.finish())?);
    }
    {
        let src = diagram(
            3,
            vec![
                Level::gen("m", 0),
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 0),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.syllepsis(1)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.pull(0, Dir::Fwd)?;
        rhs.pull(2, Dir::Fwd)?;
        rhs.syllepsis(1)?;
        rhs.syllepsis(0)?;
        out.push(check_pair("pt-syl:right", c, lhs.finish(), rhs.finish())?);
    }
    // SYM: two routes collapsing the double braiding
    {
        let src = diagram(2, vec![Level::braid(Sign::Pos, 0), Level::braid(Sign::Pos, 0)]);
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.syllepsis(0)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.insert(Sign::Neg, 1, 0)?;
        rhs.syllepsis(2)?;
        rhs.cancel(0)?;
        out.push(check_pair("sym", c, lhs.finish(), rhs.finish())?);
    }
    // monoidality of the syllepsis: collapsing a block double crossing
    {
        let src = diagram(
            3,
            vec![
                Level::braid(Sign::Pos, 1),
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 0),
                Level::braid(Sign::Pos, 1),
            ],
        );
        let mut lhs = MovieBuilder::new(c, src.clone())?;
        lhs.syllepsis(1)?;
        lhs.syllepsis(0)?;
        let mut rhs = MovieBuilder::new(c, src)?;
        rhs.syllepsis(1)?;
        rhs.syllepsis_rev(1, 0)?;
        rhs.syllepsis(1)?;
        rhs.syllepsis(0)?;
        out.push(check_pair("block-syllepsis", c, lhs.finish(), rhs.finish())?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The biequivalence maps
// ---------------------------------------------------------------------------

/// The standard-form diagram of a braid word followed by multiplication
/// trees with the given fiber sizes (heights rising left to right).
pub fn standard_form(braid: &BraidWord, fibers: &[usize]) -> Diagram {
    let mut levels: Vec<Level> = braid
        .letters()
        .iter()
        .map(|&l| {
            Level::braid(
                if l > 0 { Sign::Pos } else { Sign::Neg },
                l.unsigned_abs() as usize - 1,
            )
        })
        .collect();
    for (i, &p) in fibers.iter().enumerate() {
        if p == 0 {
            levels.push(Level::gen("u", i));
        } else {
            for _ in 0..p.saturating_sub(1) {
                levels.push(Level::gen("m", i));
            }
        }
    }
    diagram(braid.strands(), levels)
}

/// The biequivalence on 1-cells: the representative-word braid below, then
/// the standard-form trees.
pub fn f_1cell(x: &ProMorphism) -> Diagram {
    // representative word per flavor: the canonicalization stored in the
    // morphism is exactly the representative (NF word for ΒΔ/ΒΔ∼, sweep
    // word for SΔ/FS)
    let rep = match x.flavor() {
        crate::procat::ProFlavor::BDelta => x.braid().normal_form().to_word(),
        _ => x.braid().clone(),
    };
    standard_form(&rep, x.map().fibers().widths())
}

/// Level index of the first cell of each tree in a standard-form diagram,
/// given the braid length and fiber sizes, together with each tree's
/// wire base.
fn tree_zones(braid_len: usize, fibers: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(fibers.len());
    let mut level = braid_len;
    for (i, &p) in fibers.iter().enumerate() {
        out.push((level, i));
        level += if p == 0 { 1 } else { p.saturating_sub(1) };
    }
    out
}

/// Render a word-rewriting move as a movie step inside the braid-creation
/// zone starting at `zone_lo` over wires based at `wire_base`.
pub fn render_word_move(
    b: &mut MovieBuilder<'_>,
    zone_lo: usize,
    wire_base: usize,
    mv: &WordMove,
) -> Result<(), MovieError> {
    match *mv {
        WordMove::Cancel { t } => {
            b.cancel(zone_lo + t)?;
        }
        WordMove::Insert { t, k, positive } => {
            b.insert(
                if positive { Sign::Pos } else { Sign::Neg },
                zone_lo + t,
                wire_base + k - 1,
            )?;
        }
        WordMove::Syllepsis { t } => {
            b.syllepsis(zone_lo + t)?;
        }
        WordMove::SyllepsisRev { t, k } => {
            b.syllepsis_rev(zone_lo + t, wire_base + k - 1)?;
        }
        WordMove::Swap { t } => {
            b.interchange(zone_lo + t)?;
        }
        WordMove::Yb { t } => {
            b.pull(zone_lo + t, Dir::Fwd)?;
        }
        WordMove::YbRev { t } => {
            b.pull(zone_lo + t + 2, Dir::Rev)?;
        }
    }
    Ok(())
}

/// The biequivalence on 2-cells (symmetric ambient, braided pseudomonoid):
/// per tree left to right, create the tuple braid beneath the tree with
/// structural cells, then absorb it crossing by crossing with commutators.
/// The result is a loop on `f_1cell` of the base.
pub fn f_2cell(c: &Computad, x: &FsBr2Cell) -> Result<Movie, MovieError> {
    if c.flavor != GrayFlavor::Symmetric {
        return Err(MovieError::FlavorForbids(
            "braid creation needs the symmetric structure",
        ));
    }
    let pm = ProMorphism::from_function(x.base());
    let src = f_1cell(&pm);
    let fibers = x.base().fibers();
    let zones = tree_zones(pm.braid().len(), fibers.widths());
    let mut b = MovieBuilder::new(c, src.clone())?;
    for (i, entry) in x.tuple().iter().enumerate() {
        if entry.is_empty() {
            continue;
        }
        let (zone_lo, wire_base) = zones[i];
        let p = fibers.widths()[i];
        // creation: the reverse of the traced reduction of the word (pure
        // words canonicalize to the empty word)
        let (reduction, canon) = wordpath::canonicalize_symmetric(p, entry.letters())
            .map_err(|e| MovieError::MoveFailed(String::from(e)))?;
        debug_assert!(canon.is_empty());
        let creation = wordpath::invert_trace(entry.letters(), &reduction);
        // the creation trace starts from the empty word
        for mv in &creation {
            render_word_move(&mut b, zone_lo, wire_base, mv)?;
        }
        // absorption per Def 3.9
        absorb_braid(&mut b, zone_lo, wire_base, p, entry.letters())?;
    }
    let movie = b.finish();
    debug_assert_eq!(movie.target(c)?, src);
    Ok(movie)
}

/// Absorb the braid standing at `[zone_lo, zone_lo+len)` into the tree
/// directly above it: associate the bottom multiplication down to the top
/// crossing, remove it with a commutator (negative crossings emit then
/// cancel), associate back, repeat.
pub fn absorb_braid(
    b: &mut MovieBuilder<'_>,
    zone_lo: usize,
    wire_base: usize,
    leaves: usize,
    word: &[Letter],
) -> Result<(), MovieError> {
    let mut len = word.len();
    let mut remaining: Vec<Letter> = word.to_vec();
    while len > 0 {
        let letter = remaining[len - 1];
        let k = letter.unsigned_abs() as usize;
        let tree_lo = zone_lo + len;
        // (a) associate the bottom cell to the right, iteratively, until
        // the bottom multiplication consumes the crossed wires
        let target = Level::gen("m", wire_base + k - 1);
        let mut alist: Vec<(usize, usize)> = Vec::new();
        let mut guard = 0usize;
        while b.frame().levels[tree_lo] != target {
            guard += 1;
            if guard > leaves * leaves + 8 {
                return Err(MovieError::MoveFailed(String::from(
                    "association loop did not reach the crossing",
                )));
            }
            let mut applied = false;
            for j in 0..leaves.saturating_sub(1) {
                let lower = &b.frame().levels[tree_lo + j];
                let upper = &b.frame().levels[tree_lo + j + 1];
                if lower.offset == upper.offset {
                    let win = lower.offset;
                    b.gen2("alpha", Dir::Fwd, tree_lo + j, win)?;
                    alist.push((tree_lo + j, win));
                    applied = true;
                    break;
                }
            }
            if !applied {
                return Err(MovieError::MoveFailed(String::from(
                    "no associator applies while seeking the crossing",
                )));
            }
        }
        // (b) commutator (or emission then cancellation)
        if letter > 0 {
            b.gen2("c", Dir::Fwd, tree_lo - 1, wire_base + k - 1)?;
        } else {
            b.gen2("c", Dir::Rev, tree_lo, wire_base + k - 1)?;
            b.cancel(tree_lo - 1)?;
        }
        len -= 1;
        remaining.truncate(len);
        // (c) associate back (the tree sits one level lower now)
        for &(level, win) in alist.iter().rev() {
            b.gen2("alpha", Dir::Rev, level - 1, win)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// MacLane checker
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafKind {
    /// A real input (they are numbered by position, left to right).
    Input,
    /// A unit leaf.
    Unit,
}

/// A bracketing over the leaf sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(LeafKind),
    Node(alloc::boxed::Box<Bracketing>, alloc::boxed::Box<Bracketing>),
}

impl Bracketing {
    /// Left comb over `leaves`.
    pub fn left_comb(leaves: Vec<LeafKind>) -> Option<Bracketing> {
        let mut it = leaves.into_iter();
        let first = it.next()?;
        let mut acc = Bracketing::Leaf(first);
        for leaf in it {
            acc = Bracketing::Node(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(Bracketing::Leaf(leaf)));
        }
        Some(acc)
    }

    pub fn leaves(&self) -> Vec<LeafKind> {
        match self {
            Bracketing::Leaf(k) => vec![k.clone()],
            Bracketing::Node(l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }

    fn input_count(&self) -> usize {
        self.leaves()
            .iter()
            .filter(|k| matches!(k, LeafKind::Input))
            .count()
    }

    /// Pre-order list of internal node addresses.
    fn nodes(&self) -> usize {
        match self {
            Bracketing::Leaf(_) => 0,
            Bracketing::Node(l, r) => 1 + l.nodes() + r.nodes(),
        }
    }

    fn subtree_mut(&mut self, pos: usize) -> Option<&mut Bracketing> {
        fn walk<'a>(t: &'a mut Bracketing, pos: &mut usize) -> Option<&'a mut Bracketing> {
            if *pos == 0 {
                return Some(t);
            }
            *pos -= 1;
            match t {
                Bracketing::Leaf(_) => None,
                Bracketing::Node(l, r) => walk(l, pos).or_else(|| walk(r, pos)),
            }
        }
        // positions address all subtrees in pre-order (nodes and leaves)
        let mut p = pos;
        walk(self, &mut p)
    }

    fn subtree_count(&self) -> usize {
        match self {
            Bracketing::Leaf(_) => 1,
            Bracketing::Node(l, r) => 1 + l.subtree_count() + r.subtree_count(),
        }
    }

    /// Number of input leaves strictly left of the subtree at `pos`.
    fn inputs_before(&self, pos: usize) -> Option<usize> {
        fn walk(t: &Bracketing, pos: &mut usize, acc: &mut usize) -> Option<usize> {
            if *pos == 0 {
                return Some(*acc);
            }
            *pos -= 1;
            match t {
                Bracketing::Leaf(k) => {
                    if matches!(k, LeafKind::Input) {
                        *acc += 1;
                    }
                    None
                }
                Bracketing::Node(l, r) => walk(l, pos, acc).or_else(|| walk(r, pos, acc)),
            }
        }
        let mut p = pos;
        let mut acc = 0;
        walk(self, &mut p, &mut acc)
    }
}

/// The 1-cell data internal to a monoidal category: the arrangement of the
/// inputs, the unit placements, and the bracketing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalData {
    /// Arrangement of the m inputs (position of each input).
    pub arrangement: Permutation,
    /// The bracketing over inputs and units.
    pub bracketing: Bracketing,
}

impl InternalData {
    /// Unit counts per gap (both ends included): length = inputs + 1.
    pub fn unit_vector(&self) -> Vec<usize> {
        let mut gaps = vec![0usize];
        for k in self.bracketing.leaves() {
            match k {
                LeafKind::Input => gaps.push(0),
                LeafKind::Unit => *gaps.last_mut().expect("nonempty") += 1,
            }
        }
        gaps
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InternalMove {
    /// Rotate the node at `pos`: positive takes ((AB)C) to (A(BC)).
    Associate { pos: usize, positive: bool },
    /// Replace the subtree S at `pos` by (unit·S) or (S·unit).
    UnitCreate { pos: usize, left: bool },
    /// Collapse (unit·S) → S at `pos` (`left`) or (S·unit) → S.
    UnitDestroy { pos: usize, left: bool },
    /// Swap the two children of the node at `pos`; contributes a block
    /// crossing of the input bundles with the given sign.
    Commute { pos: usize, positive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MacLaneError {
    InvalidMove { index: usize, why: &'static str },
    TargetsDiffer,
    NotBraidedOrSymmetric,
}

impl fmt::Display for MacLaneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacLaneError::InvalidMove { index, why } => {
                write!(f, "invalid internal move at index {index}: {why}")
            }
            MacLaneError::TargetsDiffer => write!(f, "the two routes have different endpoints"),
            MacLaneError::NotBraidedOrSymmetric => write!(f, "flavor must be braided or symmetric"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacLaneFlavor {
    Braided,
    Symmetric,
}

/// Apply a move; returns the crossing contributed (in input coordinates)
/// if the move was a commutator.
fn apply_internal(
    data: &mut InternalData,
    mv: &InternalMove,
    index: usize,
) -> Result<Option<BraidWord>, MacLaneError> {
    let fail = |why| MacLaneError::InvalidMove { index, why };
    match mv {
        InternalMove::Associate { pos, positive } => {
            let t = data
                .bracketing
                .subtree_mut(*pos)
                .ok_or(fail("position out of range"))?;
            let current = core::mem::replace(t, Bracketing::Leaf(LeafKind::Unit));
            let rebuilt = match (current, positive) {
                (Bracketing::Node(l, r), true) => match *l {
                    Bracketing::Node(a, b) => Bracketing::Node(
                        a,
                        alloc::boxed::Box::new(Bracketing::Node(b, r)),
                    ),
                    other => {
                        *t = Bracketing::Node(alloc::boxed::Box::new(other), r);
                        return Err(fail("left child is not a node"));
                    }
                },
                (Bracketing::Node(l, r), false) => match *r {
                    Bracketing::Node(b, c2) => Bracketing::Node(
                        alloc::boxed::Box::new(Bracketing::Node(l, b)),
                        c2,
                    ),
                    other => {
                        *t = Bracketing::Node(l, alloc::boxed::Box::new(other));
                        return Err(fail("right child is not a node"));
                    }
                },
                (leaf, _) => {
                    *t = leaf;
                    return Err(fail("cannot associate at a leaf"));
                }
            };
            *t = rebuilt;
            Ok(None)
        }
        InternalMove::UnitCreate { pos, left } => {
            let t = data
                .bracketing
                .subtree_mut(*pos)
                .ok_or(fail("position out of range"))?;
            let current = core::mem::replace(t, Bracketing::Leaf(LeafKind::Unit));
            let unit = alloc::boxed::Box::new(Bracketing::Leaf(LeafKind::Unit));
            *t = if *left {
                Bracketing::Node(unit, alloc::boxed::Box::new(current))
            } else {
                Bracketing::Node(alloc::boxed::Box::new(current), unit)
            };
            Ok(None)
        }
        InternalMove::UnitDestroy { pos, left } => {
            let t = data
                .bracketing
                .subtree_mut(*pos)
                .ok_or(fail("position out of range"))?;
            let current = core::mem::replace(t, Bracketing::Leaf(LeafKind::Unit));
            match (current, left) {
                (Bracketing::Node(l, r), true) => {
                    if matches!(*l, Bracketing::Leaf(LeafKind::Unit)) {
                        *t = *r;
                        Ok(None)
                    } else {
                        *t = Bracketing::Node(l, r);
                        Err(fail("left child is not a unit"))
                    }
                }
                (Bracketing::Node(l, r), false) => {
                    if matches!(*r, Bracketing::Leaf(LeafKind::Unit)) {
                        *t = *l;
                        Ok(None)
                    } else {
                        *t = Bracketing::Node(l, r);
                        Err(fail("right child is not a unit"))
                    }
                }
                (leaf, _) => {
                    *t = leaf;
                    Err(fail("cannot destroy at a leaf"))
                }
            }
        }
        InternalMove::Commute { pos, positive } => {
            let m = data.arrangement.size();
            let base = data
                .bracketing
                .inputs_before(*pos)
                .ok_or(fail("position out of range"))?;
            let t = data
                .bracketing
                .subtree_mut(*pos)
                .ok_or(fail("position out of range"))?;
            let current = core::mem::replace(t, Bracketing::Leaf(LeafKind::Unit));
            let Bracketing::Node(l, r) = current else {
                *t = current_restore(current_placeholder());
                return Err(fail("cannot commute at a leaf"));
            };
            let w1 = l.input_count();
            let w2 = r.input_count();
            *t = Bracketing::Node(r, l);
            // crossing in input coordinates
            let block = crate::braid::block_crossing(w1, w2, if *positive { 1 } else { -1 });
            let mut letters = Vec::new();
            for &x in block.letters() {
                let shifted = if x > 0 {
                    x + base as Letter
                } else {
                    x - base as Letter
                };
                letters.push(shifted);
            }
            let crossing = BraidWord::new(m, letters).expect("letters in range");
            // update the arrangement: inputs in the two bundles swap blocks
            data.arrangement = data
                .arrangement
                .then(&crossing.underlying_permutation());
            Ok(Some(crossing))
        }
    }
}

fn current_placeholder() -> Bracketing {
    Bracketing::Leaf(LeafKind::Unit)
}

fn current_restore(b: Bracketing) -> Bracketing {
    b
}

/// Run a move list from a source, returning the final data and the
/// composed crossing braid (in input coordinates of the evolving data).
pub fn run_internal(
    src: &InternalData,
    moves: &[InternalMove],
) -> Result<(InternalData, BraidWord), MacLaneError> {
    let mut data = src.clone();
    let m = src.arrangement.size();
    let mut braid = BraidWord::identity(m);
    for (i, mv) in moves.iter().enumerate() {
        if let Some(crossing) = apply_internal(&mut data, mv, i)? {
            braid = braid.multiply(&crossing).expect("same strand count");
        }
    }
    Ok((data, braid))
}

/// The MacLane coherence check: do two internal-move routes with equal
/// endpoints denote the same 2-cell?
pub fn maclane_check(
    flavor: MacLaneFlavor,
    src: &InternalData,
    l1: &[InternalMove],
    l2: &[InternalMove],
) -> Result<bool, MacLaneError> {
    let (t1, b1) = run_internal(src, l1)?;
    let (t2, b2) = run_internal(src, l2)?;
    if t1 != t2 {
        return Err(MacLaneError::TargetsDiffer);
    }
    Ok(match flavor {
        MacLaneFlavor::Symmetric => true,
        MacLaneFlavor::Braided => b1.equals(&b2),
    })
}
