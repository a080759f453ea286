//! JSON wire formats. Everything user-facing is 1-indexed; conversion to
//! the core's 0-indexed types happens here.

use graycalc_core::braid::{BraidWord, GarsideNf, Permutation};
use graycalc_core::combinat::{FsMap, MonotoneMap};
use graycalc_core::gray::{CellKind, Diagram, GrayFlavor, Level, Sign, Subregion};
use graycalc_core::movie::{Dir, Movie, Side, Step, StepKind};
use graycalc_core::normalize::AbsorbedInvariant;
use graycalc_core::procat::{FsBr2Cell, ProFlavor, ProMorphism};
use graycalc_core::pseudomonoid::{Bracketing, Builtin, InternalData, InternalMove, LeafKind};
use serde::{Deserialize, Serialize};

pub type Error = String;

// ---------------------------------------------------------------------------
// Braids, permutations, maps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidDto {
    pub n: usize,
    pub word: Vec<i32>,
}

impl BraidDto {
    pub fn to_core(&self) -> Result<BraidWord, Error> {
        BraidWord::new(self.n, self.word.clone()).map_err(|e| e.to_string())
    }

    pub fn from_core(w: &BraidWord) -> Self {
        BraidDto {
            n: w.strands(),
            word: w.letters().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GarsideDto {
    pub n: usize,
    pub inf: i64,
    pub factors: Vec<Vec<usize>>, // 1-indexed image lists
}

impl GarsideDto {
    pub fn from_core(nf: &GarsideNf) -> Self {
        GarsideDto {
            n: nf.strands(),
            inf: nf.infimum(),
            factors: nf
                .factors()
                .iter()
                .map(|p| p.images().iter().map(|&v| v + 1).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDto {
    pub dom: usize,
    pub cod: usize,
    pub values: Vec<usize>, // 1-indexed
    pub flavor: String,     // "monotone" | "fs"
}

impl MapDto {
    pub fn to_monotone(&self) -> Result<MonotoneMap, Error> {
        self.check()?;
        MonotoneMap::new(self.cod, self.values.iter().map(|&v| v - 1).collect())
            .map_err(|e| e.to_string())
    }

    pub fn to_fs(&self) -> Result<FsMap, Error> {
        self.check()?;
        FsMap::new(self.cod, self.values.iter().map(|&v| v - 1).collect())
            .map_err(|e| e.to_string())
    }

    fn check(&self) -> Result<(), Error> {
        if self.values.len() != self.dom {
            return Err(format!(
                "map has {} values but dom {}",
                self.values.len(),
                self.dom
            ));
        }
        if self.values.iter().any(|&v| v == 0) {
            return Err(String::from("map values are 1-indexed"));
        }
        Ok(())
    }

    pub fn from_monotone(m: &MonotoneMap) -> Self {
        MapDto {
            dom: m.dom(),
            cod: m.cod(),
            values: m.values().iter().map(|&v| v + 1).collect(),
            flavor: String::from("monotone"),
        }
    }

    pub fn from_fs(m: &FsMap) -> Self {
        MapDto {
            dom: m.dom(),
            cod: m.cod(),
            values: m.values().iter().map(|&v| v + 1).collect(),
            flavor: String::from("fs"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProMorphismDto {
    pub flavor: String, // "bdelta" | "sdelta" | "bdeltamod" | "fs"
    pub braid: BraidDto,
    pub map: MapDto,
}

pub fn pro_flavor(name: &str) -> Result<ProFlavor, Error> {
    Ok(match name {
        "bdelta" => ProFlavor::BDelta,
        "sdelta" => ProFlavor::SDelta,
        "bdeltamod" => ProFlavor::BDeltaMod,
        "fs" => ProFlavor::Fs,
        other => return Err(format!("unknown flavor {other}")),
    })
}

impl ProMorphismDto {
    pub fn to_core(&self) -> Result<ProMorphism, Error> {
        ProMorphism::new(
            pro_flavor(&self.flavor)?,
            self.braid.to_core()?,
            self.map.to_monotone()?,
        )
        .map_err(|e| e.to_string())
    }

    pub fn from_core(m: &ProMorphism) -> Self {
        let flavor = match m.flavor() {
            ProFlavor::BDelta => "bdelta",
            ProFlavor::SDelta => "sdelta",
            ProFlavor::BDeltaMod => "bdeltamod",
            ProFlavor::Fs => "fs",
        };
        ProMorphismDto {
            flavor: String::from(flavor),
            braid: BraidDto::from_core(m.braid()),
            map: MapDto::from_monotone(m.map()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FsBr2CellDto {
    pub base: MapDto,
    pub tuple: Vec<BraidDto>,
}

impl FsBr2CellDto {
    pub fn to_core(&self) -> Result<FsBr2Cell, Error> {
        let base = self.base.to_fs()?;
        let tuple = self
            .tuple
            .iter()
            .map(|b| b.to_core())
            .collect::<Result<Vec<_>, _>>()?;
        FsBr2Cell::new(base, tuple).map_err(|e| e.to_string())
    }

    pub fn from_core(x: &FsBr2Cell) -> Self {
        FsBr2CellDto {
            base: MapDto::from_fs(x.base()),
            tuple: x.tuple().iter().map(BraidDto::from_core).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Diagrams and movies
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelDto {
    pub cell: String, // generator name, or "R+"/"R-"
    pub offset: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramDto {
    pub source: Vec<String>,
    pub levels: Vec<LevelDto>,
}

impl DiagramDto {
    pub fn to_core(&self) -> Result<Diagram, Error> {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let cell = match l.cell.as_str() {
                    "R+" => CellKind::Braid(Sign::Pos),
                    "R-" => CellKind::Braid(Sign::Neg),
                    name => CellKind::Gen(String::from(name)),
                };
                Level {
                    cell,
                    offset: l.offset,
                }
            })
            .collect();
        Ok(Diagram {
            source: self.source.clone(),
            levels,
        })
    }

    pub fn from_core(d: &Diagram) -> Self {
        DiagramDto {
            source: d.source.clone(),
            levels: d
                .levels
                .iter()
                .map(|l| LevelDto {
                    cell: match &l.cell {
                        CellKind::Gen(name) => name.clone(),
                        CellKind::Braid(Sign::Pos) => String::from("R+"),
                        CellKind::Braid(Sign::Neg) => String::from("R-"),
                    },
                    offset: l.offset,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubregionDto {
    pub lo: usize,
    pub hi: usize,
    pub win: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepDto {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>, // "fwd" | "rev"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>, // +1 | -1
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>, // "left" | "right"
    pub at: SubregionDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MovieDto {
    pub source: DiagramDto,
    pub steps: Vec<StepDto>,
}

fn dir_of(s: &Option<String>) -> Result<Dir, Error> {
    match s.as_deref() {
        Some("fwd") | None => Ok(Dir::Fwd),
        Some("rev") => Ok(Dir::Rev),
        Some(other) => Err(format!("unknown direction {other}")),
    }
}

fn sign_of(s: &Option<i32>) -> Result<Sign, Error> {
    match s {
        Some(1) => Ok(Sign::Pos),
        Some(-1) => Ok(Sign::Neg),
        _ => Err(String::from("sign must be 1 or -1")),
    }
}

impl MovieDto {
    pub fn to_core(&self) -> Result<Movie, Error> {
        let source = self.source.to_core()?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let kind = match s.kind.as_str() {
                    "gen2" => StepKind::Gen2 {
                        name: s.name.clone().ok_or("gen2 needs a name")?,
                        dir: dir_of(&s.dir)?,
                    },
                    "interchange" => StepKind::Interchange,
                    "insert" => StepKind::InverseInsert {
                        sign: sign_of(&s.sign)?,
                    },
                    "cancel" => StepKind::Cancel {
                        sign: sign_of(&s.sign)?,
                    },
                    "pull" => StepKind::Pull {
                        over: s.over.ok_or("pull needs over")?,
                        side: match s.side.as_deref() {
                            Some("left") => Side::Left,
                            Some("right") => Side::Right,
                            _ => return Err(String::from("pull needs side left|right")),
                        },
                        dir: dir_of(&s.dir)?,
                    },
                    "syllepsis" => StepKind::Syllepsis {
                        dir: dir_of(&s.dir)?,
                    },
                    other => return Err(format!("unknown step kind {other}")),
                };
                Ok(Step {
                    kind,
                    at: Subregion::new(s.at.lo, s.at.hi, s.at.win[0], s.at.win[1]),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Movie { source, steps })
    }

    pub fn from_core(m: &Movie) -> Self {
        let steps = m
            .steps
            .iter()
            .map(|s| {
                let at = SubregionDto {
                    lo: s.at.lo,
                    hi: s.at.hi,
                    win: [s.at.win_lo, s.at.win_hi],
                };
                let dirs = |d: &Dir| {
                    Some(String::from(match d {
                        Dir::Fwd => "fwd",
                        Dir::Rev => "rev",
                    }))
                };
                match &s.kind {
                    StepKind::Gen2 { name, dir } => StepDto {
                        kind: String::from("gen2"),
                        name: Some(name.clone()),
                        dir: dirs(dir),
                        sign: None,
                        over: None,
                        side: None,
                        at,
                    },
                    StepKind::Interchange => StepDto {
                        kind: String::from("interchange"),
                        name: None,
                        dir: None,
                        sign: None,
                        over: None,
                        side: None,
                        at,
                    },
                    StepKind::InverseInsert { sign } => StepDto {
                        kind: String::from("insert"),
                        name: None,
                        dir: None,
                        sign: Some(sign.as_i32()),
                        over: None,
                        side: None,
                        at,
                    },
                    StepKind::Cancel { sign } => StepDto {
                        kind: String::from("cancel"),
                        name: None,
                        dir: None,
                        sign: Some(sign.as_i32()),
                        over: None,
                        side: None,
                        at,
                    },
                    StepKind::Pull { over, side, dir } => StepDto {
                        kind: String::from("pull"),
                        name: None,
                        dir: dirs(dir),
                        sign: None,
                        over: Some(*over),
                        side: Some(String::from(match side {
                            Side::Left => "left",
                            Side::Right => "right",
                        })),
                        at,
                    },
                    StepKind::Syllepsis { dir } => StepDto {
                        kind: String::from("syllepsis"),
                        name: None,
                        dir: dirs(dir),
                        sign: None,
                        over: None,
                        side: None,
                        at,
                    },
                }
            })
            .collect();
        MovieDto {
            source: DiagramDto::from_core(&m.source),
            steps,
        }
    }
}

// ---------------------------------------------------------------------------
// Internal data for the coherence checker
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BracketingDto {
    Leaf(String), // "x" input, "u" unit
    Node(Vec<BracketingDto>),
}

impl BracketingDto {
    fn to_core(&self) -> Result<Bracketing, Error> {
        match self {
            BracketingDto::Leaf(s) => match s.as_str() {
                "x" => Ok(Bracketing::Leaf(LeafKind::Input)),
                "u" => Ok(Bracketing::Leaf(LeafKind::Unit)),
                other => Err(format!("unknown leaf {other}")),
            },
            BracketingDto::Node(children) => {
                if children.len() != 2 {
                    return Err(String::from("bracketing nodes are binary"));
                }
                Ok(Bracketing::Node(
                    Box::new(children[0].to_core()?),
                    Box::new(children[1].to_core()?),
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InternalDataDto {
    /// 1-indexed arrangement: position of each input.
    pub arrangement: Vec<usize>,
    pub bracketing: BracketingDto,
}

impl InternalDataDto {
    pub fn to_core(&self) -> Result<InternalData, Error> {
        let arrangement = Permutation::from_images(
            self.arrangement.iter().map(|&v| v.wrapping_sub(1)).collect(),
        )
        .map_err(|e| e.to_string())?;
        Ok(InternalData {
            arrangement,
            bracketing: self.bracketing.to_core()?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InternalMoveDto {
    pub kind: String, // associate | unit-create | unit-destroy | commute
    pub pos: usize,
    #[serde(default)]
    pub positive: Option<bool>,
    #[serde(default)]
    pub left: Option<bool>,
}

impl InternalMoveDto {
    pub fn to_core(&self) -> Result<InternalMove, Error> {
        Ok(match self.kind.as_str() {
            "associate" => InternalMove::Associate {
                pos: self.pos,
                positive: self.positive.unwrap_or(true),
            },
            "unit-create" => InternalMove::UnitCreate {
                pos: self.pos,
                left: self.left.unwrap_or(true),
            },
            "unit-destroy" => InternalMove::UnitDestroy {
                pos: self.pos,
                left: self.left.unwrap_or(true),
            },
            "commute" => InternalMove::Commute {
                pos: self.pos,
                positive: self.positive.unwrap_or(true),
            },
            other => return Err(format!("unknown internal move {other}")),
        })
    }
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct TreeDto {
    pub root: usize, // 1-indexed target position
    pub strands: usize,
    pub absorbed: BraidDto,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantDto {
    pub trees: Vec<TreeDto>,
}

impl InvariantDto {
    pub fn from_core(inv: &AbsorbedInvariant) -> Self {
        InvariantDto {
            trees: inv
                .trees
                .iter()
                .map(|t| TreeDto {
                    root: t.target_position + 1,
                    strands: t.strands,
                    absorbed: BraidDto::from_core(&t.absorbed.to_word()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDto {
    pub ok: bool,
    pub detail: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

// ---------------------------------------------------------------------------
// Row/column parsing
// ---------------------------------------------------------------------------

pub fn parse_row(s: &str) -> Result<GrayFlavor, Error> {
    Ok(match s {
        "naked" => GrayFlavor::Naked,
        "braided" => GrayFlavor::Braided,
        "symmetric" => GrayFlavor::Symmetric,
        other => return Err(format!("unknown row {other}")),
    })
}

pub fn parse_col(s: &str) -> Result<Builtin, Error> {
    Ok(match s {
        "p" => Builtin::P,
        "pbr" => Builtin::Pbr,
        "psym" => Builtin::Psym,
        other => return Err(format!("unknown column {other}")),
    })
}
