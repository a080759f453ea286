//! The combinatorial (2-)categories built from braids and monotone maps:
//! ΒΔ, SΔ, ΒΔ/∼ ≅ the commutative-monoid PROB, FS ≅ SΔ/∼, and the locally
//! totally disconnected 2-category FS^br whose 2-cells are tuples of pure
//! braids indexed by fibers.

use crate::braid::{
    cable, parabolic_member, BlockPartition, BraidError, BraidWord, Letter, Permutation,
};
use crate::combinat::{perm_representative_word, FsMap, MapError, MonotoneMap};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProFlavor {
    /// Pairs (σ ∈ B_m, monotone f); the free braided monoidal category on
    /// a monoid.
    BDelta,
    /// Pairs (s ∈ S_m, monotone f); the symmetric version.
    SDelta,
    /// ΒΔ modulo the postcomposition action of the block subgroups — the
    /// commutative-monoid PROB.
    BDeltaMod,
    /// Functions between finite sets, stored as the canonical
    /// (σ_f, f_Δ) decomposition.
    Fs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProError {
    Braid(BraidError),
    Map(MapError),
    FlavorMismatch,
    BoundaryMismatch,
    NotPure,
    BaseMismatch,
}

impl fmt::Display for ProError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProError::Braid(e) => write!(f, "braid: {e}"),
            ProError::Map(e) => write!(f, "map: {e}"),
            ProError::FlavorMismatch => write!(f, "flavor mismatch"),
            ProError::BoundaryMismatch => write!(f, "object boundary mismatch"),
            ProError::NotPure => write!(f, "tuple entry is not a pure braid"),
            ProError::BaseMismatch => write!(f, "2-cells have different base 1-cells"),
        }
    }
}

impl From<BraidError> for ProError {
    fn from(e: BraidError) -> Self {
        ProError::Braid(e)
    }
}

impl From<MapError> for ProError {
    fn from(e: MapError) -> Self {
        ProError::Map(e)
    }
}

/// A 1-cell of one of the combinatorial categories: a braid part on the
/// domain together with a monotone map part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProMorphism {
    flavor: ProFlavor,
    braid: BraidWord,
    map: MonotoneMap,
}

impl ProMorphism {
    pub fn new(flavor: ProFlavor, braid: BraidWord, map: MonotoneMap) -> Result<Self, ProError> {
        if braid.strands() != map.dom() {
            return Err(ProError::BoundaryMismatch);
        }
        let mut m = ProMorphism { flavor, braid, map };
        m.canonicalize();
        Ok(m)
    }

    pub fn identity(flavor: ProFlavor, n: usize) -> Self {
        ProMorphism {
            flavor,
            braid: BraidWord::identity(n),
            map: MonotoneMap::identity(n),
        }
    }

    /// A pure-braiding morphism (σ, id).
    pub fn braiding(flavor: ProFlavor, braid: BraidWord) -> Self {
        let n = braid.strands();
        ProMorphism::new(flavor, braid, MonotoneMap::identity(n)).expect("boundaries agree")
    }

    /// The FS morphism of a function, stored in (σ_f, f_Δ) form.
    pub fn from_function(f: &FsMap) -> Self {
        let (sigma, mono) = f.decompose();
        ProMorphism {
            flavor: ProFlavor::Fs,
            braid: perm_representative_word(&sigma),
            map: mono,
        }
    }

    pub fn flavor(&self) -> ProFlavor {
        self.flavor
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    pub fn dom(&self) -> usize {
        self.map.dom()
    }

    pub fn cod(&self) -> usize {
        self.map.cod()
    }

    /// The function this morphism represents, for the SΔ/FS flavors.
    pub fn as_function(&self) -> FsMap {
        let perm = self.braid.underlying_permutation();
        let values = (0..self.dom())
            .map(|i| self.map.apply(perm.apply(i)))
            .collect();
        FsMap::new(self.cod(), values).expect("in range")
    }

    /// The fiber-sorting permutation of the braid part.
    pub fn permutation(&self) -> Permutation {
        self.braid.underlying_permutation()
    }

    fn canonicalize(&mut self) {
        match self.flavor {
            ProFlavor::BDelta => {}
            ProFlavor::SDelta => {
                self.braid = perm_representative_word(&self.braid.underlying_permutation());
            }
            ProFlavor::BDeltaMod => {
                self.braid = self.braid.normal_form().to_word();
            }
            ProFlavor::Fs => {
                let f = self.as_function();
                let (sigma, mono) = f.decompose();
                self.braid = perm_representative_word(&sigma);
                self.map = mono;
            }
        }
    }
}

/// The distributive law: given a braid on `f`'s codomain, produce the
/// permuted monotone map and the cabled braid with `b ∘ f = f' ∘ b'`.
pub fn delta_law(b: &BraidWord, f: &MonotoneMap) -> Result<(MonotoneMap, BraidWord), ProError> {
    if b.strands() != f.cod() {
        return Err(ProError::BoundaryMismatch);
    }
    let fibers = f.fibers();
    let perm = b.underlying_permutation();
    let inv = perm.inverse();
    let widths: Vec<usize> = (0..f.cod()).map(|j| fibers.widths()[inv.apply(j)]).collect();
    let cabled = cable(&fibers, b)?;
    Ok((MonotoneMap::from_fibers(&widths), cabled))
}

/// Composition `g ∘ f` (f first) via the distributive law.
pub fn pro_compose(g: &ProMorphism, f: &ProMorphism) -> Result<ProMorphism, ProError> {
    if g.flavor != f.flavor {
        return Err(ProError::FlavorMismatch);
    }
    if f.cod() != g.dom() {
        return Err(ProError::BoundaryMismatch);
    }
    let (map_pushed, braid_pulled) = delta_law(&g.braid, &f.map)?;
    let braid = f.braid.multiply(&braid_pulled)?;
    let map = map_pushed.then(&g.map)?;
    ProMorphism::new(f.flavor, braid, map)
}

/// Monoidal product: braid parts juxtaposed, map parts tensored.
pub fn pro_tensor(f: &ProMorphism, g: &ProMorphism) -> Result<ProMorphism, ProError> {
    if g.flavor != f.flavor {
        return Err(ProError::FlavorMismatch);
    }
    ProMorphism::new(f.flavor, f.braid.tensor(&g.braid), f.map.tensor(&g.map))
}

/// Equality per flavor: ΒΔ compares braid normal forms and maps; SΔ the
/// underlying permutations; FS the functions; ΒΔ/∼ the block-subgroup
/// orbit.
pub fn pro_equal(a: &ProMorphism, b: &ProMorphism) -> Result<bool, ProError> {
    if a.flavor != b.flavor {
        return Err(ProError::FlavorMismatch);
    }
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Err(ProError::BoundaryMismatch);
    }
    Ok(match a.flavor {
        ProFlavor::BDelta => a.map == b.map && a.braid.equals(&b.braid),
        ProFlavor::SDelta => {
            a.map == b.map
                && a.braid.underlying_permutation() == b.braid.underlying_permutation()
        }
        ProFlavor::Fs => a.as_function() == b.as_function(),
        ProFlavor::BDeltaMod => {
            if a.map != b.map {
                false
            } else {
                // orbit test: b = a · c for c in the block subgroup of the
                // fibers, i.e. a⁻¹ b lies in the standard parabolic
                let c = a.braid.inverse().multiply(&b.braid)?;
                parabolic_member(&c, &a.map.fibers())?
            }
        }
    })
}

// ---------------------------------------------------------------------------
// FS^br 2-cells
// ---------------------------------------------------------------------------

/// A 2-cell of FS^br: an endomorphism of `base` given by one pure braid
/// per fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsBr2Cell {
    base: FsMap,
    tuple: Vec<BraidWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsBrMode {
    Horizontal,
    Vertical,
    Tensor,
}

impl FsBr2Cell {
    pub fn new(base: FsMap, tuple: Vec<BraidWord>) -> Result<Self, ProError> {
        let fibers = base.fibers();
        if tuple.len() != fibers.len() {
            return Err(ProError::BaseMismatch);
        }
        for (entry, &width) in tuple.iter().zip(fibers.widths()) {
            if entry.strands() != width {
                return Err(ProError::BoundaryMismatch);
            }
            if !entry.is_pure() {
                return Err(ProError::NotPure);
            }
        }
        Ok(FsBr2Cell { base, tuple })
    }

    pub fn identity(base: FsMap) -> Self {
        let tuple = base
            .fibers()
            .widths()
            .iter()
            .map(|&w| BraidWord::identity(w))
            .collect();
        FsBr2Cell { base, tuple }
    }

    pub fn base(&self) -> &FsMap {
        &self.base
    }

    pub fn tuple(&self) -> &[BraidWord] {
        &self.tuple
    }

    /// Entry-wise Garside canonicalization (for equality of 2-cells).
    pub fn canonical(&self) -> FsBr2Cell {
        FsBr2Cell {
            base: self.base.clone(),
            tuple: self.tuple.iter().map(|w| w.normal_form().to_word()).collect(),
        }
    }

    pub fn equal(&self, other: &FsBr2Cell) -> bool {
        self.base == other.base
            && self.tuple.len() == other.tuple.len()
            && self
                .tuple
                .iter()
                .zip(&other.tuple)
                .all(|(a, b)| a.equals(b))
    }

    /// Embed the tuple as one pure braid on the whole domain, blocks laid
    /// end to end.
    pub fn embedded(&self) -> BraidWord {
        embed_tuple(&self.base.fibers(), &self.tuple)
    }
}

fn embed_tuple(fibers: &BlockPartition, tuple: &[BraidWord]) -> BraidWord {
    let mut whole = BraidWord::identity(0);
    for entry in tuple {
        whole = whole.tensor(entry);
    }
    debug_assert_eq!(whole.strands(), fibers.total());
    whole
}

/// Split a braid supported inside the blocks back into per-block words.
fn split_tuple(fibers: &BlockPartition, braid: &BraidWord) -> Result<Vec<BraidWord>, ProError> {
    let mut bases = Vec::with_capacity(fibers.len());
    let mut acc = 0usize;
    for &w in fibers.widths() {
        bases.push(acc);
        acc += w;
    }
    let mut words: Vec<Vec<Letter>> = fibers.widths().iter().map(|_| Vec::new()).collect();
    'letters: for &l in braid.letters() {
        let k = l.unsigned_abs() as usize; // crosses strands k-1, k
        for (j, &base) in bases.iter().enumerate() {
            let width = fibers.widths()[j];
            if k >= base + 1 && k + 1 <= base + width {
                let shifted = (k - base) as Letter;
                words[j].push(if l > 0 { shifted } else { -shifted });
                continue 'letters;
            }
        }
        return Err(ProError::BoundaryMismatch); // letter crosses a block boundary
    }
    let mut out = Vec::with_capacity(words.len());
    for (j, w) in words.into_iter().enumerate() {
        out.push(BraidWord::new(fibers.widths()[j], w)?);
    }
    Ok(out)
}

/// Horizontal (within a hom-set), vertical (along objects, `y` over `x`)
/// and monoidal composition of FS^br 2-cells.
pub fn fsbr_compose(mode: FsBrMode, x: &FsBr2Cell, y: &FsBr2Cell) -> Result<FsBr2Cell, ProError> {
    match mode {
        FsBrMode::Horizontal => {
            if x.base != y.base {
                return Err(ProError::BaseMismatch);
            }
            let tuple = x
                .tuple
                .iter()
                .zip(&y.tuple)
                .map(|(a, b)| a.multiply(b))
                .collect::<Result<Vec<_>, _>>()?;
            FsBr2Cell::new(x.base.clone(), tuple)
        }
        FsBrMode::Vertical => {
            if x.base.cod() != y.base.dom() {
                return Err(ProError::BoundaryMismatch);
            }
            let composite = x.base.then(&y.base)?;
            let upper = y.embedded(); // pure braid on the middle wires
            // cable it through x's fibers, viewed as blocks over the wires;
            // the wires of the middle boundary carry x's fibers in order
            let cabled = cable(&x.base.fibers(), &upper)?;
            let total = x.embedded().multiply(&cabled)?;
            if !total.is_pure() {
                return Err(ProError::NotPure);
            }
            let tuple = split_tuple(&composite.fibers(), &total)?;
            FsBr2Cell::new(composite, tuple)
        }
        FsBrMode::Tensor => {
            let base = x.base.tensor(&y.base);
            let mut tuple = x.tuple.clone();
            tuple.extend(y.tuple.iter().cloned());
            FsBr2Cell::new(base, tuple)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use alloc::vec;
    use alloc::vec::Vec;

    fn bw(n: usize, ls: &[Letter]) -> BraidWord {
        BraidWord::new(n, ls.to_vec()).unwrap()
    }

    fn mono(cod: usize, vals: &[usize]) -> MonotoneMap {
        MonotoneMap::new(cod, vals.to_vec()).unwrap()
    }

    #[test]
    fn delta_law_examples() {
        // identity braid: nothing happens
        let f = mono(2, &[0, 0, 1]);
        let (f2, b2) = delta_law(&BraidWord::identity(2), &f).unwrap();
        assert_eq!(f2, f);
        assert!(b2.is_empty());
        // f fibers (2,1), b=[1] in B2 -> fibers (1,2), cabled [2,1]
        let (f2, b2) = delta_law(&bw(2, &[1]), &f).unwrap();
        assert_eq!(f2.fibers().widths(), &[1, 2]);
        assert_eq!(b2.letters(), &[2, 1]);
        // identity map: braid passes through unchanged
        let idm = MonotoneMap::identity(2);
        let (f2, b2) = delta_law(&bw(2, &[1]), &idm).unwrap();
        assert_eq!(f2, idm);
        assert_eq!(b2.letters(), &[1]);
    }

    #[test]
    fn pro_compose_examples() {
        use ProFlavor::BDelta;
        let id2 = ProMorphism::identity(BDelta, 2);
        assert_eq!(pro_compose(&id2, &id2).unwrap(), id2);
        // (ε, μ) ∘ ([1], id2) = ([1], μ)
        let mu = ProMorphism::new(BDelta, BraidWord::identity(2), mono(1, &[0, 0])).unwrap();
        let br = ProMorphism::braiding(BDelta, bw(2, &[1]));
        let c = pro_compose(&mu, &br).unwrap();
        assert_eq!(c.braid().letters(), &[1]);
        assert_eq!(c.map(), &mono(1, &[0, 0]));
        // ([1] ∈ B2, id2) ∘ (ε, f fibers (2,1)) = ([2,1], f' fibers (1,2))
        let f = ProMorphism::new(BDelta, BraidWord::identity(3), mono(2, &[0, 0, 1])).unwrap();
        let g = ProMorphism::braiding(BDelta, bw(2, &[1]));
        let c = pro_compose(&g, &f).unwrap();
        assert_eq!(c.braid().letters(), &[2, 1]);
        assert_eq!(c.map().fibers().widths(), &[1, 2]);
    }

    #[test]
    fn pro_tensor_examples() {
        use ProFlavor::BDelta;
        let f = ProMorphism::braiding(BDelta, bw(2, &[1]));
        let unit0 = ProMorphism::identity(BDelta, 0);
        assert_eq!(pro_tensor(&f, &unit0).unwrap(), f);
        let t = pro_tensor(&f, &f).unwrap();
        assert_eq!(t.braid().letters(), &[1, 3]);
        // ([1], μ) ⊗ (ε, u)
        let mu = ProMorphism::new(BDelta, bw(2, &[1]), mono(1, &[0, 0])).unwrap();
        let u = ProMorphism::new(BDelta, BraidWord::identity(0), mono(1, &[])).unwrap();
        let t = pro_tensor(&mu, &u).unwrap();
        assert_eq!(t.map().values(), &[0, 0]);
        assert_eq!(t.map().cod(), 2);
        assert_eq!(t.braid().letters(), &[1]);
    }

    #[test]
    fn pro_equal_examples() {
        use ProFlavor::*;
        let a = ProMorphism::new(BDelta, bw(3, &[1, 2, 1]), mono(1, &[0, 0, 0])).unwrap();
        assert!(pro_equal(&a, &a).unwrap());
        let b = ProMorphism::new(BDelta, bw(3, &[2, 1, 2]), mono(1, &[0, 0, 0])).unwrap();
        assert!(pro_equal(&a, &b).unwrap());
        // Fig. 5: emission of σ₂⁻¹ from a single tree: ([-2], μ³) ~ (ε, μ³)
        let lhs = ProMorphism::new(BDeltaMod, bw(3, &[-2]), mono(1, &[0, 0, 0])).unwrap();
        let rhs =
            ProMorphism::new(BDeltaMod, BraidWord::identity(3), mono(1, &[0, 0, 0])).unwrap();
        assert!(pro_equal(&lhs, &rhs).unwrap());
        // but a braiding across trivial blocks is not in the orbit
        let lhs = ProMorphism::new(BDeltaMod, bw(2, &[1]), MonotoneMap::identity(2)).unwrap();
        let rhs = ProMorphism::identity(BDeltaMod, 2);
        assert!(!pro_equal(&lhs, &rhs).unwrap());
        // SΔ: only the permutation matters
        let lhs = ProMorphism::new(SDelta, bw(2, &[1, 1, 1]), mono(1, &[0, 0])).unwrap();
        let rhs = ProMorphism::new(SDelta, bw(2, &[-1]), mono(1, &[0, 0])).unwrap();
        assert!(pro_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn braiding_morphisms_compose_as_braids() {
        use ProFlavor::BDelta;
        let mut rng = Rng::new(8);
        for _ in 0..100 {
            let n = rng.range(2, 5);
            let la: Vec<Letter> = (0..rng.below(4)).filter_map(|_| rng.letter(n)).collect();
            let lb: Vec<Letter> = (0..rng.below(4)).filter_map(|_| rng.letter(n)).collect();
            let a = ProMorphism::braiding(BDelta, bw(n, &la));
            let b = ProMorphism::braiding(BDelta, bw(n, &lb));
            let c = pro_compose(&b, &a).unwrap();
            assert!(c
                .braid()
                .equals(&bw(n, &la).multiply(&bw(n, &lb)).unwrap()));
        }
    }

    /// Composition is associative and unital on enumerated small instances.
    #[test]
    fn pro_compose_associative_small() {
        use ProFlavor::*;
        for flavor in [BDelta, SDelta, BDeltaMod, Fs] {
            let morphs = enumerate_morphisms(flavor, 3, 2);
            for f in &morphs {
                let idd = ProMorphism::identity(flavor, f.dom());
                let idc = ProMorphism::identity(flavor, f.cod());
                assert!(pro_equal(&pro_compose(f, &idd).unwrap(), f).unwrap());
                assert!(pro_equal(&pro_compose(&idc, f).unwrap(), f).unwrap());
            }
            // triples with matching boundaries
            let mut count = 0;
            'outer: for f in &morphs {
                for g in &morphs {
                    if g.dom() != f.cod() {
                        continue;
                    }
                    for h in &morphs {
                        if h.dom() != g.cod() {
                            continue;
                        }
                        let lhs = pro_compose(h, &pro_compose(g, f).unwrap()).unwrap();
                        let rhs = pro_compose(&pro_compose(h, g).unwrap(), f).unwrap();
                        assert!(pro_equal(&lhs, &rhs).unwrap());
                        count += 1;
                        if count > 3000 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }

    /// A small deterministic census of morphisms with objects ≤ max_obj and
    /// braid words of length ≤ max_word.
    fn enumerate_morphisms(flavor: ProFlavor, max_obj: usize, max_word: usize) -> Vec<ProMorphism> {
        let mut out = Vec::new();
        for m in 0..=max_obj {
            for n in 0..=max_obj {
                let maps = all_monotone(m, n);
                let words = all_words(m, max_word);
                for map in &maps {
                    for word in &words {
                        out.push(ProMorphism::new(flavor, word.clone(), map.clone()).unwrap());
                    }
                }
            }
        }
        out
    }

    fn all_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
        if m == 0 {
            return vec![MonotoneMap::new(n, Vec::new()).unwrap()];
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let total = n.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut values = Vec::with_capacity(m);
            for _ in 0..m {
                values.push(c % n);
                c /= n;
            }
            if let Ok(map) = MonotoneMap::new(n, values) {
                out.push(map);
            }
        }
        out
    }

    fn all_words(n: usize, max_len: usize) -> Vec<BraidWord> {
        let letters: Vec<Letter> = (1..n as Letter).flat_map(|k| [k, -k]).collect();
        let mut words = vec![BraidWord::identity(n)];
        let mut frontier = vec![Vec::<Letter>::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            words.extend(next.iter().map(|ls| BraidWord::new(n, ls.clone()).unwrap()));
            frontier = next;
        }
        words
    }

    /// ΒΔ/∼ equality is an equivalence relation and a congruence for
    /// composition on a small enumerated set.
    #[test]
    fn bdelta_mod_congruence() {
        let morphs = enumerate_morphisms(ProFlavor::BDeltaMod, 2, 2);
        let mut rng = Rng::new(10);
        for _ in 0..200 {
            let a = &morphs[rng.below(morphs.len())];
            let b = &morphs[rng.below(morphs.len())];
            if a.dom() == b.dom() && a.cod() == b.cod() {
                assert_eq!(pro_equal(a, b).unwrap(), pro_equal(b, a).unwrap());
            }
        }
        // congruence: if f ~ f' then g∘f ~ g∘f'
        for f in morphs.iter().take(40) {
            for f2 in morphs.iter().take(40) {
                if f.dom() != f2.dom() || f.cod() != f2.cod() {
                    continue;
                }
                if !pro_equal(f, f2).unwrap() {
                    continue;
                }
                for g in morphs.iter().take(40) {
                    if g.dom() != f.cod() {
                        continue;
                    }
                    let c1 = pro_compose(g, f).unwrap();
                    let c2 = pro_compose(g, f2).unwrap();
                    assert!(pro_equal(&c1, &c2).unwrap(), "congruence failure");
                }
            }
        }
    }

    #[test]
    fn fsbr_examples() {
        // horizontal with identity tuple
        let base = FsMap::new(1, vec![0, 0]).unwrap();
        let x = FsBr2Cell::new(base.clone(), vec![bw(2, &[1, 1])]).unwrap();
        let idc = FsBr2Cell::identity(base.clone());
        let h = fsbr_compose(FsBrMode::Horizontal, &x, &idc).unwrap();
        assert!(h.equal(&x));
        // vertical with identity cabling: f = id2, g = μ, σ_n = [1,1]
        let f = FsBr2Cell::identity(FsMap::identity(2));
        let g = FsBr2Cell::new(FsMap::new(1, vec![0, 0]).unwrap(), vec![bw(2, &[1, 1])]).unwrap();
        let v = fsbr_compose(FsBrMode::Vertical, &f, &g).unwrap();
        assert_eq!(v.base(), &FsMap::new(1, vec![0, 0]).unwrap());
        assert!(v.tuple()[0].equals(&bw(2, &[1, 1])));
        // vertical with fibers (2,2): tuple = cable((2,2),[1,1])
        let f = FsBr2Cell::identity(FsMap::new(2, vec![0, 0, 1, 1]).unwrap());
        let v = fsbr_compose(FsBrMode::Vertical, &f, &g).unwrap();
        let expected = cable(&BlockPartition::new(vec![2, 2]), &bw(2, &[1, 1])).unwrap();
        assert!(v.tuple()[0].equals(&expected));
        assert!(v.tuple()[0].is_pure());
        // purity validation on construction
        assert!(FsBr2Cell::new(FsMap::new(1, vec![0, 0]).unwrap(), vec![bw(2, &[1])]).is_err());
    }

    fn random_pure(rng: &mut Rng, w: usize, pieces: usize) -> BraidWord {
        let mut word = BraidWord::identity(w);
        for _ in 0..pieces {
            if let Some(l) = rng.letter(w) {
                word = word.multiply(&bw(w, &[l, l])).unwrap();
            }
        }
        word
    }

    /// Interchange: (x2 ∘H x1) ∘V (y2 ∘H y1) = (x2 ∘V y2) ∘H (x1 ∘V y1)
    /// on small random instances.
    #[test]
    fn fsbr_interchange() {
        let mut rng = Rng::new(77);
        for _ in 0..120 {
            let n = rng.range(1, 3);
            let o = rng.range(1, 3);
            let fvals: Vec<usize> = (0..rng.below(5)).map(|_| rng.below(n)).collect();
            let gvals: Vec<usize> = (0..n).map(|_| rng.below(o)).collect();
            let f = FsMap::new(n, fvals).unwrap();
            let g = FsMap::new(o, gvals).unwrap();
            let mk = |rng: &mut Rng, base: &FsMap| {
                let tuple = base
                    .fibers()
                    .widths()
                    .iter()
                    .map(|&w| { let p = rng.below(3); random_pure(rng, w, p) })
                    .collect();
                FsBr2Cell::new(base.clone(), tuple).unwrap()
            };
            let x1 = mk(&mut rng, &f);
            let x2 = mk(&mut rng, &f);
            let y1 = mk(&mut rng, &g);
            let y2 = mk(&mut rng, &g);
            let h = |a: &FsBr2Cell, b: &FsBr2Cell| fsbr_compose(FsBrMode::Horizontal, a, b).unwrap();
            let v = |a: &FsBr2Cell, b: &FsBr2Cell| fsbr_compose(FsBrMode::Vertical, a, b).unwrap();
            let lhs = v(&h(&x1, &x2), &h(&y1, &y2));
            let rhs = h(&v(&x1, &y1), &v(&x2, &y2));
            assert!(lhs.equal(&rhs), "interchange failed");
        }
    }

    /// Vertical composition is associative across three levels.
    #[test]
    fn fsbr_vertical_associative() {
        let mut rng = Rng::new(123);
        for _ in 0..60 {
            let n = rng.range(1, 3);
            let o = rng.range(1, 3);
            let p = rng.range(1, 3);
            let fvals: Vec<usize> = (0..rng.below(4)).map(|_| rng.below(n)).collect();
            let gvals: Vec<usize> = (0..n).map(|_| rng.below(o)).collect();
            let hvals: Vec<usize> = (0..o).map(|_| rng.below(p)).collect();
            let f = FsMap::new(n, fvals).unwrap();
            let g = FsMap::new(o, gvals).unwrap();
            let hh = FsMap::new(p, hvals).unwrap();
            let mk = |rng: &mut Rng, base: &FsMap| {
                let tuple = base
                    .fibers()
                    .widths()
                    .iter()
                    .map(|&w| { let p = rng.below(2); random_pure(rng, w, p) })
                    .collect();
                FsBr2Cell::new(base.clone(), tuple).unwrap()
            };
            let x = mk(&mut rng, &f);
            let y = mk(&mut rng, &g);
            let z = mk(&mut rng, &hh);
            let v = |a: &FsBr2Cell, b: &FsBr2Cell| fsbr_compose(FsBrMode::Vertical, a, b).unwrap();
            let lhs = v(&v(&x, &y), &z);
            let rhs = v(&x, &v(&y, &z));
            assert!(lhs.equal(&rhs), "vertical associativity failed");
        }
    }
}
