//! Deterministic ASCII rendering of diagrams and movies.

use graycalc_core::gray::{CellKind, Computad, Diagram, Sign};
use graycalc_core::movie::{Dir, Movie, Side, StepKind};

const COL: usize = 4;

fn wire_row(width: usize) -> String {
    let mut s = String::new();
    for _ in 0..width {
        s.push('|');
        s.push_str(&" ".repeat(COL - 1));
    }
    s.trim_end().to_string()
}

/// Render one diagram bottom-to-top (the first printed line is the source
/// boundary).
pub fn render_diagram(c: &Computad, d: &Diagram) -> Result<String, String> {
    let boundaries = d.boundaries(c).map_err(|e| e.to_string())?;
    let mut out = String::new();
    out.push_str(&wire_row(boundaries[0].len()));
    out.push('\n');
    for (i, level) in d.levels.iter().enumerate() {
        let (p, q) = Diagram::width_change(c, &level.cell).map_err(|e| e.to_string())?;
        let before = boundaries[i].len();
        let mut row = String::new();
        for w in 0..level.offset {
            let _ = w;
            row.push('|');
            row.push_str(&" ".repeat(COL - 1));
        }
        let span = p.max(q).max(1) * COL - 1;
        let label = match &level.cell {
            CellKind::Gen(name) => format!("[{name}]"),
            CellKind::Braid(Sign::Pos) => String::from(">X<"),
            CellKind::Braid(Sign::Neg) => String::from("<X>"),
        };
        let mut cell = label;
        while cell.len() < span {
            cell.push(' ');
        }
        row.push_str(&cell[..span.max(cell.len()).min(cell.len())]);
        for _ in level.offset + p.max(1)..before.max(level.offset + p.max(1)) {
            row.push('|');
            row.push_str(&" ".repeat(COL - 1));
        }
        out.push_str(row.trim_end());
        out.push('\n');
        out.push_str(&wire_row(boundaries[i + 1].len()));
        out.push('\n');
    }
    Ok(out)
}

fn step_label(kind: &StepKind) -> String {
    match kind {
        StepKind::Gen2 { name, dir } => format!(
            "{}{}",
            name,
            if *dir == Dir::Rev { "^-1" } else { "" }
        ),
        StepKind::Interchange => String::from("interchange"),
        StepKind::InverseInsert { sign } => format!(
            "insert{}",
            if *sign == Sign::Pos { "+" } else { "-" }
        ),
        StepKind::Cancel { sign } => format!(
            "cancel{}",
            if *sign == Sign::Pos { "+" } else { "-" }
        ),
        StepKind::Pull { over, side, dir } => format!(
            "pull-{}-{}{}",
            if *over { "over" } else { "under" },
            match side {
                Side::Left => "left",
                Side::Right => "right",
            },
            if *dir == Dir::Rev { " (down)" } else { "" }
        ),
        StepKind::Syllepsis { dir } => format!(
            "syllepsis{}",
            if *dir == Dir::Rev { "^-1" } else { "" }
        ),
    }
}

/// Render a movie as a frame strip.
pub fn render_movie(c: &Computad, m: &Movie) -> Result<String, String> {
    let frames = m.frames(c).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for (i, frame) in frames.iter().enumerate() {
        out.push_str(&format!("frame {i}:\n"));
        out.push_str(&render_diagram(c, frame)?);
        if i < m.steps.len() {
            out.push_str(&format!(
                "== {} at levels [{}, {}) window [{}, {}) ==>\n",
                step_label(&m.steps[i].kind),
                m.steps[i].at.lo,
                m.steps[i].at.hi,
                m.steps[i].at.win_lo,
                m.steps[i].at.win_hi,
            ));
        }
    }
    Ok(out)
}
