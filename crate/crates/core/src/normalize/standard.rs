//! Standardization of 1-cells: raising cells above braidings into the
//! canonical stacked order, decomposition of diagrams into combinatorial
//! morphisms with a witnessing movie, 1-cell isomorphism, and the
//! composition 2-cell.

use crate::braid::{BraidWord, Letter, Permutation};
use crate::combinat::{perm_representative_word, FsMap};
use crate::gray::{CellKind, Computad, Diagram, GrayFlavor, Sign};
use crate::movie::{Dir, Movie, MovieBuilder, MovieError};
use crate::normalize::track::{cell_leaves, consumer_of, feed_of, Feed};
use crate::procat::{pro_equal, ProFlavor, ProMorphism};
use crate::pseudomonoid::{
    absorb_braid, builtin_cells, f_1cell, render_word_move, Builtin,
};
use crate::wordpath;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// The computad of a Table-2 entry: the `col` pseudomonoid computad read
/// in the `row` ambient flavor. None for invalid pairs.
pub fn table_computad(row: GrayFlavor, col: Builtin) -> Option<Computad> {
    let ok = match (row, col) {
        (GrayFlavor::Naked, Builtin::P) => true,
        (GrayFlavor::Braided, Builtin::P | Builtin::Pbr) => true,
        (GrayFlavor::Symmetric, _) => true,
        _ => false,
    };
    if ok {
        Some(builtin_cells(col, row))
    } else {
        None
    }
}

/// The combinatorial-morphism flavor classifying 1-cells of a Table-2
/// entry.
fn entry_flavor(row: GrayFlavor, col: Builtin) -> Option<ProFlavor> {
    Some(match (row, col) {
        (GrayFlavor::Naked, Builtin::P) => ProFlavor::BDelta,
        (GrayFlavor::Braided, Builtin::P) => ProFlavor::BDelta,
        (GrayFlavor::Symmetric, Builtin::P) => ProFlavor::SDelta,
        (GrayFlavor::Braided, Builtin::Pbr) => ProFlavor::BDeltaMod,
        (GrayFlavor::Symmetric, Builtin::Pbr | Builtin::Psym) => ProFlavor::Fs,
        _ => return None,
    })
}

/// A decomposed 1-cell: the combinatorial morphism (the FS cases also
/// carry the underlying function).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposed {
    pub morphism: ProMorphism,
    pub function: Option<FsMap>,
}

/// Post-order cell levels of the tree rooted at `root` in `frame`.
fn post_order(c: &Computad, frame: &Diagram, root: usize, out: &mut Vec<usize>) {
    let l = &frame.levels[root];
    let (p, _) = Diagram::width_change(c, &l.cell).expect("typechecked");
    for input in 0..p {
        if let Feed::Cell(child) = feed_of(c, frame, root, l.offset + input) {
            post_order(c, frame, child, out);
        }
    }
    out.push(root);
}

/// The canonical cell order of a frame: trees by target position, cells in
/// post-order. Returns current levels, bottom of the canonical stack
/// first.
fn canonical_cells(c: &Computad, frame: &Diagram) -> Result<Vec<usize>, MovieError> {
    let target = frame.typecheck(c)?;
    let mut out = Vec::new();
    for wire in 0..target.len() {
        if let Feed::Cell(root) = feed_of(c, frame, frame.levels.len(), wire) {
            post_order(c, frame, root, &mut out);
        }
    }
    Ok(out)
}

fn gen_cell_count(frame: &Diagram) -> usize {
    frame
        .levels
        .iter()
        .filter(|l| matches!(l.cell, CellKind::Gen(_)))
        .count()
}

/// Raise every generating cell above every braiding, into the canonical
/// stacked order, by pulls and interchanges.
pub fn raise_all(c: &Computad, b: &mut MovieBuilder<'_>) -> Result<(), MovieError> {
    let total = gen_cell_count(b.frame());
    let budget = 40 * (b.frame().levels.len() + 2) * (b.frame().levels.len() + 2) + 400;
    let mut spent = 0usize;
    for placed in 0..total {
        loop {
            spent += 1;
            if spent > budget {
                return Err(MovieError::MoveFailed(String::from(
                    "raising budget exceeded",
                )));
            }
            let order = canonical_cells(c, b.frame())?;
            debug_assert_eq!(order.len(), total);
            let lvl = order[total - 1 - placed];
            let ceiling = if placed == 0 {
                b.frame().levels.len()
            } else {
                order[total - placed]
            };
            if lvl + 1 == ceiling {
                break;
            }
            let above = &b.frame().levels[lvl + 1];
            match &above.cell {
                CellKind::Braid(_) => {
                    let out_pos = b.frame().levels[lvl].offset;
                    if above.offset == out_pos || above.offset + 1 == out_pos {
                        b.pull(lvl, Dir::Fwd)?;
                    } else {
                        b.interchange(lvl)?;
                    }
                }
                CellKind::Gen(_) => {
                    b.interchange(lvl)?;
                }
            }
        }
    }
    Ok(())
}

/// Destroy every attached unit: raise each unit to its consuming
/// multiplication and apply the unitor.
pub fn destroy_attached_units(c: &Computad, b: &mut MovieBuilder<'_>) -> Result<(), MovieError> {
    let budget = 60 * (b.frame().levels.len() + 2) * (b.frame().levels.len() + 2) + 400;
    let mut spent = 0usize;
    loop {
        // find an attached unit
        let frame = b.frame().clone();
        let mut found = None;
        for (lvl, l) in frame.levels.iter().enumerate() {
            if l.cell == CellKind::Gen(String::from("u"))
                && consumer_of(c, &frame, lvl).is_some()
            {
                found = Some(lvl);
                break;
            }
        }
        let Some(mut u_level) = found else {
            return Ok(());
        };
        loop {
            spent += 1;
            if spent > budget {
                return Err(MovieError::MoveFailed(String::from(
                    "unit destruction budget exceeded",
                )));
            }
            let frame = b.frame().clone();
            let (cons, _which) = consumer_of(c, &frame, u_level).expect("attached");
            if cons == u_level + 1 {
                let m_off = frame.levels[cons].offset;
                let u_off = frame.levels[u_level].offset;
                let name = if u_off == m_off { "lambda" } else { "rho" };
                b.gen2(name, Dir::Fwd, u_level, m_off)?;
                break;
            }
            let above = &frame.levels[u_level + 1];
            let out_pos = frame.levels[u_level].offset;
            match &above.cell {
                CellKind::Braid(_) if above.offset == out_pos || above.offset + 1 == out_pos => {
                    b.pull(u_level, Dir::Fwd)?;
                    // a unit pull keeps its level index
                }
                _ => {
                    b.interchange(u_level)?;
                    u_level += 1;
                }
            }
        }
    }
}

/// Left-bracket every tree with inverse associators.
pub fn left_bracket(_c: &Computad, b: &mut MovieBuilder<'_>) -> Result<(), MovieError> {
    let budget = 10 * (b.frame().levels.len() + 2) * (b.frame().levels.len() + 2) + 100;
    let mut spent = 0usize;
    loop {
        spent += 1;
        if spent > budget {
            return Err(MovieError::MoveFailed(String::from(
                "bracketing budget exceeded",
            )));
        }
        let frame = b.frame();
        let mut applied = false;
        for lvl in 0..frame.levels.len().saturating_sub(1) {
            let (a, bb) = (&frame.levels[lvl], &frame.levels[lvl + 1]);
            if a.cell == CellKind::Gen(String::from("m"))
                && bb.cell == CellKind::Gen(String::from("m"))
                && a.offset == bb.offset + 1
            {
                b.gen2("alpha", Dir::Rev, lvl, bb.offset)?;
                applied = true;
                break;
            }
        }
        if !applied {
            return Ok(());
        }
    }
}

/// Read the braid word of the leading braiding levels; errors if a
/// braiding occurs above a generating cell.
fn leading_braid_word(_c: &Computad, frame: &Diagram) -> Result<BraidWord, MovieError> {
    let n = frame.source.len();
    let mut letters: Vec<Letter> = Vec::new();
    let mut seen_cell = false;
    for l in &frame.levels {
        match &l.cell {
            CellKind::Braid(s) => {
                if seen_cell {
                    return Err(MovieError::MoveFailed(String::from(
                        "braiding above a generating cell after standardization",
                    )));
                }
                let k = (l.offset + 1) as Letter;
                letters.push(if *s == Sign::Pos { k } else { -k });
            }
            CellKind::Gen(_) => seen_cell = true,
        }
    }
    BraidWord::new(n, letters).map_err(|e| MovieError::MoveFailed(alloc::format!("{e}")))
}

/// Fiber sizes per target position of a standardized frame.
fn standard_fibers(c: &Computad, frame: &Diagram) -> Result<Vec<usize>, MovieError> {
    let target = frame.typecheck(c)?;
    let mut out = Vec::with_capacity(target.len());
    for wire in 0..target.len() {
        match feed_of(c, frame, frame.levels.len(), wire) {
            Feed::Ambient(_) => out.push(1),
            Feed::Cell(root) => out.push(cell_leaves(c, frame, root).len()),
        }
    }
    Ok(out)
}

/// Decompose a 1-cell diagram over a Table-2 computad into its
/// combinatorial morphism and a canonical movie to the morphism's
/// standard-form image.
pub fn decompose_1cell(
    c: &Computad,
    d: &Diagram,
    col: Builtin,
) -> Result<(Decomposed, Movie), MovieError> {
    let flavor = entry_flavor(c.flavor, col).ok_or_else(|| {
        MovieError::MoveFailed(String::from("invalid Table-2 row/column pair"))
    })?;
    let mut b = MovieBuilder::new(c, d.clone())?;
    destroy_attached_units(c, &mut b)?;
    raise_all(c, &mut b)?;
    left_bracket(c, &mut b)?;
    let w = leading_braid_word(c, b.frame())?;
    let fibers = standard_fibers(c, b.frame())?;
    let mono = crate::combinat::MonotoneMap::from_fibers(&fibers);
    let n = w.strands();
    let decomposed = match flavor {
        ProFlavor::BDelta | ProFlavor::SDelta | ProFlavor::BDeltaMod => {
            let x = ProMorphism::new(flavor, w.clone(), mono.clone())
                .map_err(|e| MovieError::MoveFailed(alloc::format!("{e}")))?;
            // braid path from w to the representative word
            let target: Vec<Letter> = x.braid().letters().to_vec();
            let trace = match flavor {
                ProFlavor::SDelta => {
                    wordpath::path_between_symmetric(n, w.letters(), &target)
                        .map_err(|e| MovieError::MoveFailed(String::from(e)))?
                }
                _ => {
                    let (t, canon) = wordpath::canonicalize_braided(n, w.letters())
                        .map_err(|e| MovieError::MoveFailed(String::from(e)))?;
                    debug_assert_eq!(canon, target);
                    t
                }
            };
            for mv in &trace {
                render_word_move(&mut b, 0, 0, mv)?;
            }
            Decomposed {
                morphism: x,
                function: None,
            }
        }
        ProFlavor::Fs => {
            // the function: ambient wire ↦ its tree's target position
            let trees = crate::normalize::track::source_trees(c, d)?;
            let mut values = vec![0usize; n];
            for t in &trees {
                for &leaf in &t.leaves {
                    values[leaf] = t.target_position;
                }
            }
            let f = FsMap::new(trees.len(), values)
                .map_err(|e| MovieError::MoveFailed(alloc::format!("{e}")))?;
            let (sigma_f, _f_delta) = f.decompose();
            // target word: sweep(σ_f), then the in-fiber residues in
            // reverse tree order so that tree 0's residue ends at the top
            // of the braid zone
            let pi = w.underlying_permutation();
            let tau = compose_perm(&sigma_f.inverse(), &pi); // σ_f then τ = π
            let sweep = perm_representative_word(&sigma_f);
            let mut tau_words: Vec<(usize, usize, Vec<Letter>)> = Vec::new(); // (base, width, word)
            let mut base = 0usize;
            for &p in &fibers {
                let imgs: Vec<usize> = (0..p)
                    .map(|i| {
                        tau.apply(base + i)
                            .checked_sub(base)
                            .filter(|&v| v < p)
                            .ok_or(())
                    })
                    .collect::<Result<Vec<usize>, ()>>()
                    .map_err(|_| {
                        MovieError::MoveFailed(String::from(
                            "residue permutation does not preserve fibers",
                        ))
                    })?;
                let local = Permutation::from_images(imgs)
                    .map_err(|_| MovieError::MoveFailed(String::from("bad residue")))?;
                let word: Vec<Letter> = perm_representative_word(&local).letters().to_vec();
                tau_words.push((base, p, word));
                base += p;
            }
            let mut target: Vec<Letter> = sweep.letters().to_vec();
            for (fiber_base, _, word) in tau_words.iter().rev() {
                for &x in word {
                    target.push(if x > 0 {
                        x + *fiber_base as Letter
                    } else {
                        x - *fiber_base as Letter
                    });
                }
            }
            let trace = wordpath::path_between_symmetric(n, w.letters(), &target)
                .map_err(|e| MovieError::MoveFailed(String::from(e)))?;
            for mv in &trace {
                render_word_move(&mut b, 0, 0, mv)?;
            }
            // absorb residues tree by tree; tree i's residue block is the
            // topmost remaining braiding run, lifted past the cells of the
            // earlier trees
            for (i, (fiber_base, p, word)) in tau_words.iter().enumerate() {
                if word.is_empty() {
                    continue;
                }
                let k = word.len();
                // locate the block: the topmost braiding levels
                let frame = b.frame();
                let top_braid = frame
                    .levels
                    .iter()
                    .rposition(|l| matches!(l.cell, CellKind::Braid(_)))
                    .ok_or_else(|| {
                        MovieError::MoveFailed(String::from("residue block missing"))
                    })?;
                let mut z = top_braid + 1 - k;
                for lvl in z..z + k {
                    if !matches!(frame.levels[lvl].cell, CellKind::Braid(_)) {
                        return Err(MovieError::MoveFailed(String::from(
                            "residue block not contiguous",
                        )));
                    }
                }
                let cells_below: usize = fibers[..i]
                    .iter()
                    .map(|&q| if q == 0 { 1 } else { q.saturating_sub(1) })
                    .sum();
                for _ in 0..cells_below {
                    for j in (z..z + k).rev() {
                        b.interchange(j)?;
                    }
                    z += 1;
                }
                absorb_braid(&mut b, z, *fiber_base, *p, word)?;
            }
            let x = ProMorphism::from_function(&f);
            Decomposed {
                morphism: x,
                function: Some(f),
            }
        }
    };
    let movie = b.finish();
    // the movie must land exactly on the standard-form image
    let expect = f_1cell(&decomposed.morphism);
    let got = movie.target(c)?;
    if got != expect {
        return Err(MovieError::MoveFailed(alloc::format!(
            "decomposition did not reach the standard form: {:?} vs {:?}",
            got,
            expect
        )));
    }
    Ok((decomposed, movie))
}

/// `p` then `q` as permutations (temporal order).
fn compose_perm(p: &Permutation, q: &Permutation) -> Permutation {
    p.then(q)
}

/// 1-cell isomorphism per the Table-2 classification.
pub fn iso_1cells(
    c: &Computad,
    col: Builtin,
    a: &Diagram,
    b: &Diagram,
) -> Result<bool, MovieError> {
    if a.source != b.source || a.typecheck(c)? != b.typecheck(c)? {
        return Ok(false);
    }
    let (da, _) = decompose_1cell(c, a, col)?;
    let (db, _) = decompose_1cell(c, b, col)?;
    match (&da.function, &db.function) {
        (Some(fa), Some(fb)) => Ok(fa == fb),
        _ => pro_equal(&da.morphism, &db.morphism)
            .map_err(|e| MovieError::MoveFailed(alloc::format!("{e}"))),
    }
}

/// The composition 2-cell: a movie from `g ∘ f` (f below) to the standard
/// form of the composite combinatorial morphism.
pub fn composition_iso(
    c: &Computad,
    f: &Diagram,
    g: &Diagram,
    col: Builtin,
) -> Result<(Decomposed, Movie), MovieError> {
    // both inputs must already be standard-form images
    for d in [f, g] {
        let (x, movie) = decompose_1cell(c, d, col)?;
        if !movie.steps.is_empty() || &f_1cell(&x.morphism) != d {
            return Err(MovieError::MoveFailed(String::from(
                "input is not a standard-form image",
            )));
        }
    }
    let composite = f.compose(c, g)?;
    decompose_1cell(c, &composite, col)
}
