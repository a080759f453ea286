//! Finite ordinals and the maps between them: weakly monotone maps (the
//! simplicial flavour), arbitrary functions (the FS flavour), fibers, the
//! permutation/monotone decomposition, and representative braid words for
//! permutations.

use crate::braid::{BlockPartition, BraidWord, Letter, Permutation};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    OutOfRange,
    NotMonotone,
    BoundaryMismatch { left: usize, right: usize },
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::OutOfRange => write!(f, "value out of codomain range"),
            MapError::NotMonotone => write!(f, "values are not weakly increasing"),
            MapError::BoundaryMismatch { left, right } => {
                write!(f, "boundary mismatch: {left} vs {right}")
            }
        }
    }
}

/// A weakly order-preserving map `{0..dom} → {0..cod}`.
///
/// The defining inequality is weak: `values[i] ≤ values[j]` for `i < j`.
/// (Read strictly it would exclude the multiplication trees built from
/// these maps, so strictness is treated as a typo.)
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    cod: usize,
    values: Vec<usize>,
}

/// An arbitrary function `{0..dom} → {0..cod}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FsMap {
    cod: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self, MapError> {
        if values.iter().any(|&v| v >= cod) {
            return Err(MapError::OutOfRange);
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(MapError::NotMonotone);
        }
        Ok(MonotoneMap { cod, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            cod: n,
            values: (0..n).collect(),
        }
    }

    /// The monotone map with the given fiber sizes (zero sizes allowed).
    pub fn from_fibers(fibers: &[usize]) -> Self {
        let mut values = Vec::new();
        for (i, &p) in fibers.iter().enumerate() {
            for _ in 0..p {
                values.push(i);
            }
        }
        MonotoneMap {
            cod: fibers.len(),
            values,
        }
    }

    pub fn dom(&self) -> usize {
        self.values.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self` first, then `g`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap, MapError> {
        if self.cod != g.dom() {
            return Err(MapError::BoundaryMismatch {
                left: self.cod,
                right: g.dom(),
            });
        }
        Ok(MonotoneMap {
            cod: g.cod,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    pub fn tensor(&self, g: &MonotoneMap) -> MonotoneMap {
        let mut values = self.values.clone();
        values.extend(g.values.iter().map(|&v| v + self.cod));
        MonotoneMap {
            cod: self.cod + g.cod,
            values,
        }
    }

    pub fn fibers(&self) -> BlockPartition {
        fibers_of(self.cod, &self.values)
    }

    pub fn as_fs(&self) -> FsMap {
        FsMap {
            cod: self.cod,
            values: self.values.clone(),
        }
    }
}

impl FsMap {
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self, MapError> {
        if values.iter().any(|&v| v >= cod) {
            return Err(MapError::OutOfRange);
        }
        Ok(FsMap { cod, values })
    }

    pub fn identity(n: usize) -> Self {
        FsMap {
            cod: n,
            values: (0..n).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.values.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn then(&self, g: &FsMap) -> Result<FsMap, MapError> {
        if self.cod != g.dom() {
            return Err(MapError::BoundaryMismatch {
                left: self.cod,
                right: g.dom(),
            });
        }
        Ok(FsMap {
            cod: g.cod,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    pub fn tensor(&self, g: &FsMap) -> FsMap {
        let mut values = self.values.clone();
        values.extend(g.values.iter().map(|&v| v + self.cod));
        FsMap {
            cod: self.cod + g.cod,
            values,
        }
    }

    pub fn fibers(&self) -> BlockPartition {
        fibers_of(self.cod, &self.values)
    }

    /// The canonical decomposition `f = f_Δ ∘ σ_f` with `σ_f` the
    /// fiber-sorting permutation (fibers listed in ascending order) and
    /// `f_Δ` monotone with the same fiber sizes.
    pub fn decompose(&self) -> (Permutation, MonotoneMap) {
        let mut order: Vec<usize> = Vec::with_capacity(self.dom());
        for target in 0..self.cod {
            for (i, &v) in self.values.iter().enumerate() {
                if v == target {
                    order.push(i);
                }
            }
        }
        // order[k] = the k-th element in fiber-sorted sequence; σ_f sends
        // element order[k] to position k
        let mut images = vec![0usize; self.dom()];
        for (k, &elt) in order.iter().enumerate() {
            images[elt] = k;
        }
        let sigma = Permutation::from_images(images).expect("bijection by construction");
        let monotone = MonotoneMap::from_fibers(self.fibers().widths());
        (sigma, monotone)
    }
}

fn fibers_of(cod: usize, values: &[usize]) -> BlockPartition {
    let mut widths = vec![0usize; cod];
    for &v in values {
        widths[v] += 1;
    }
    BlockPartition::new(widths)
}

/// The sweep word of a permutation: the positive braid word read off the
/// straight-line diagram, crossings ordered by height with ties broken
/// leftmost-first. Its underlying permutation is `s` and its length is the
/// inversion count of `s`.
pub fn perm_representative_word(s: &Permutation) -> BraidWord {
    let letters: Vec<Letter> = s.sweep_word();
    BraidWord::new(s.size(), letters).expect("sweep word is valid")
}
