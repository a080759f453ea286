//! Traced rewriting of braid words.
//!
//! Produces move-by-move witnesses for word equalities. In the symmetric
//! regime (σ_i² = 1) any word reaches the canonical sweep word of its
//! underlying permutation; in the braided regime any word reaches its
//! Garside normal-form word via traced handle reduction. Every trace move
//! is an elementary identification realizable as one structural movie
//! step.

use crate::braid::{BraidWord, Letter, Permutation};
use crate::combinat::perm_representative_word;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

/// An elementary rewrite of a braid word at a letter position. Positions
/// refer to the word as it is at the time the move applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordMove {
    /// Remove letters (t, t+1) = (±k, ∓k).
    Cancel { t: usize },
    /// Insert (sign·k, −sign·k) at position t.
    Insert { t: usize, k: usize, positive: bool },
    /// Remove letters (t, t+1) = (+k, +k). Symmetric regime only.
    Syllepsis { t: usize },
    /// Insert (+k, +k) at position t. Symmetric regime only.
    SyllepsisRev { t: usize, k: usize },
    /// Swap far-commuting letters (t, t+1).
    Swap { t: usize },
    /// Braid move on (t, t+1, t+2): `(s·k, u·m, u·k) → (u·m, u·k, s·m)`,
    /// |k−m| = 1 — the bottom crossing pulls up through the other two.
    Yb { t: usize },
    /// The mirror braid move: `(u·m, u·k, s·m) → (s·k, u·m, u·k)` — the
    /// top crossing pulls down. Inverse of [`WordMove::Yb`].
    YbRev { t: usize },
}

/// Apply a move to a word, validating the pattern.
pub fn apply_word_move(word: &mut Vec<Letter>, mv: &WordMove) -> Result<(), &'static str> {
    match *mv {
        WordMove::Cancel { t } => {
            if t + 1 >= word.len() || word[t] != -word[t + 1] {
                return Err("cancel pattern mismatch");
            }
            word.drain(t..t + 2);
        }
        WordMove::Insert { t, k, positive } => {
            if t > word.len() || k == 0 {
                return Err("insert out of range");
            }
            let s = if positive { k as Letter } else { -(k as Letter) };
            word.splice(t..t, [s, -s]);
        }
        WordMove::Syllepsis { t } => {
            if t + 1 >= word.len() || word[t] <= 0 || word[t] != word[t + 1] {
                return Err("syllepsis pattern mismatch");
            }
            word.drain(t..t + 2);
        }
        WordMove::SyllepsisRev { t, k } => {
            if t > word.len() || k == 0 {
                return Err("syllepsis insert out of range");
            }
            word.splice(t..t, [k as Letter, k as Letter]);
        }
        WordMove::Swap { t } => {
            if t + 1 >= word.len()
                || (word[t].unsigned_abs() as i64 - word[t + 1].unsigned_abs() as i64).abs() < 2
            {
                return Err("swap pattern mismatch");
            }
            word.swap(t, t + 1);
        }
        WordMove::Yb { t } => {
            if t + 2 >= word.len() {
                return Err("yb out of range");
            }
            let (a, b, c) = (word[t], word[t + 1], word[t + 2]);
            let (ka, kb) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
            if a.unsigned_abs() != c.unsigned_abs()
                || (ka as i64 - kb as i64).abs() != 1
                || b.signum() != c.signum()
            {
                return Err("yb pattern mismatch");
            }
            let (s, u) = (a.signum(), b.signum());
            word[t] = u * kb as Letter;
            word[t + 1] = u * ka as Letter;
            word[t + 2] = s * kb as Letter;
        }
        WordMove::YbRev { t } => {
            if t + 2 >= word.len() {
                return Err("yb-rev out of range");
            }
            // pattern (u·m, u·k, s·m) → (s·k, u·m, u·k)
            let (a, b, c) = (word[t], word[t + 1], word[t + 2]);
            let (km, kk) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
            if a.unsigned_abs() != c.unsigned_abs()
                || (km as i64 - kk as i64).abs() != 1
                || a.signum() != b.signum()
            {
                return Err("yb-rev pattern mismatch");
            }
            let (u, s) = (a.signum(), c.signum());
            word[t] = s * kk as Letter;
            word[t + 1] = u * km as Letter;
            word[t + 2] = u * kk as Letter;
        }
    }
    Ok(())
}

/// Replay a trace.
pub fn replay_trace(word: &[Letter], trace: &[WordMove]) -> Result<Vec<Letter>, &'static str> {
    let mut w = word.to_vec();
    for mv in trace {
        apply_word_move(&mut w, mv)?;
    }
    Ok(w)
}

/// The trace taking the end word of `trace` (applied to `word`) back to
/// `word`.
pub fn invert_trace(word: &[Letter], trace: &[WordMove]) -> Vec<WordMove> {
    let mut w = word.to_vec();
    let mut inverses: Vec<WordMove> = Vec::with_capacity(trace.len());
    for mv in trace {
        let inv = match *mv {
            WordMove::Cancel { t } => WordMove::Insert {
                t,
                k: w[t].unsigned_abs() as usize,
                positive: w[t] > 0,
            },
            WordMove::Insert { t, .. } => WordMove::Cancel { t },
            WordMove::Syllepsis { t } => WordMove::SyllepsisRev {
                t,
                k: w[t].unsigned_abs() as usize,
            },
            WordMove::SyllepsisRev { t, .. } => WordMove::Syllepsis { t },
            WordMove::Swap { t } => WordMove::Swap { t },
            WordMove::Yb { t } => WordMove::YbRev { t },
            WordMove::YbRev { t } => WordMove::Yb { t },
        };
        apply_word_move(&mut w, mv).expect("trace valid");
        inverses.push(inv);
    }
    inverses.reverse();
    inverses
}

fn perm_of(n: usize, word: &[Letter]) -> Permutation {
    BraidWord::new(n, word.to_vec())
        .expect("letters in range")
        .underlying_permutation()
}

struct Tracer {
    word: Vec<Letter>,
    trace: Vec<WordMove>,
}

impl Tracer {
    fn new(word: &[Letter]) -> Tracer {
        Tracer {
            word: word.to_vec(),
            trace: Vec::new(),
        }
    }

    fn push(&mut self, mv: WordMove) -> Result<(), &'static str> {
        apply_word_move(&mut self.word, &mv)?;
        self.trace.push(mv);
        Ok(())
    }
}

/// Reduce to the canonical sweep word of the underlying permutation in the
/// symmetric regime. Returns the trace and the canonical word.
pub fn canonicalize_symmetric(
    n: usize,
    word: &[Letter],
) -> Result<(Vec<WordMove>, Vec<Letter>), &'static str> {
    let target: Vec<Letter> = perm_representative_word(&perm_of(n, word))
        .letters()
        .to_vec();
    let mut tr = Tracer::new(word);
    let budget = 20_000 + word.len() * word.len() * 60;
    let mut spent = 0usize;
    loop {
        spent += 1;
        if spent > budget {
            return Err("symmetric canonicalization budget exceeded");
        }
        let w = &tr.word;
        // adjacent same-index pairs
        if let Some(t) =
            (0..w.len().saturating_sub(1)).find(|&t| w[t].unsigned_abs() == w[t + 1].unsigned_abs())
        {
            let (a, b) = (w[t], w[t + 1]);
            if a == -b {
                tr.push(WordMove::Cancel { t })?;
            } else if a > 0 && b > 0 {
                tr.push(WordMove::Syllepsis { t })?;
            } else {
                let k = a.unsigned_abs() as usize;
                tr.push(WordMove::SyllepsisRev { t: t + 1, k })?;
                // (a, +k, +k, b): a<0 or b<0; cancel pairs inward
                if a < 0 {
                    tr.push(WordMove::Cancel { t })?;
                    // leaves (+k, b); if b<0 cancel, else syllepsis next pass
                } else {
                    // a>0, b<0: (a,+k,+k,b): cancel (t+2, t+3)
                    tr.push(WordMove::Cancel { t: t + 2 })?;
                }
            }
            continue;
        }
        // flip remaining negative letters
        if let Some(t) = tr.word.iter().position(|&l| l < 0) {
            let k = tr.word[t].unsigned_abs() as usize;
            tr.push(WordMove::SyllepsisRev { t, k })?;
            tr.push(WordMove::Cancel { t: t + 1 })?;
            continue;
        }
        // all positive, square-free: shorten until reduced
        let w = &tr.word;
        let mut prefix = Permutation::identity(n);
        let mut drop_at = None;
        for (t, &l) in w.iter().enumerate() {
            let k = l.unsigned_abs() as usize;
            let next = prefix.then(&Permutation::transposition(n, k - 1));
            if next.inversion_count() < prefix.inversion_count() + 1 {
                drop_at = Some(t);
                break;
            }
            prefix = next;
        }
        if let Some(t) = drop_at {
            let k_t = tr.word[t].unsigned_abs() as usize;
            let path = tits_path(n, &tr.word[..t], Goal::EndsWith(k_t))?;
            for mv in path {
                tr.push(mv)?;
            }
            tr.push(WordMove::Syllepsis { t: t - 1 })?;
            continue;
        }
        // reduced positive word: transport to the sweep word
        if tr.word == target {
            return Ok((tr.trace, target));
        }
        let path = tits_path(n, &tr.word.clone(), Goal::Equals(&target))?;
        for mv in path {
            tr.push(mv)?;
        }
        debug_assert_eq!(tr.word, target);
        return Ok((tr.trace, target));
    }
}

/// A traced path between two words with the same underlying permutation
/// (symmetric regime).
pub fn path_between_symmetric(
    n: usize,
    a: &[Letter],
    b: &[Letter],
) -> Result<Vec<WordMove>, &'static str> {
    if perm_of(n, a) != perm_of(n, b) {
        return Err("words have different underlying permutations");
    }
    let (mut trace, canon_a) = canonicalize_symmetric(n, a)?;
    let (trace_b, canon_b) = canonicalize_symmetric(n, b)?;
    debug_assert_eq!(canon_a, canon_b);
    trace.extend(invert_trace(b, &trace_b));
    Ok(trace)
}

enum Goal<'a> {
    EndsWith(usize),
    Equals(&'a [Letter]),
}

/// BFS over reduced positive words of one permutation via Swap and Yb
/// moves (Tits' theorem guarantees connectivity).
fn tits_path(n: usize, start: &[Letter], goal: Goal<'_>) -> Result<Vec<WordMove>, &'static str> {
    let _ = n;
    let start: Vec<Letter> = start.to_vec();
    let done = |w: &[Letter]| match goal {
        Goal::EndsWith(k) => w.last().is_some_and(|&l| l.unsigned_abs() as usize == k),
        Goal::Equals(v) => w == v,
    };
    if done(&start) {
        return Ok(Vec::new());
    }
    let mut parent: BTreeMap<Vec<Letter>, (Vec<Letter>, WordMove)> = BTreeMap::new();
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    queue.push_back(start.clone());
    let mut visited = 0usize;
    while let Some(w) = queue.pop_front() {
        visited += 1;
        if visited > 3_000_000 {
            return Err("tits search budget exceeded");
        }
        let mut neighbours: Vec<(WordMove, Vec<Letter>)> = Vec::new();
        for t in 0..w.len().saturating_sub(1) {
            if (w[t].unsigned_abs() as i64 - w[t + 1].unsigned_abs() as i64).abs() >= 2 {
                let mut v = w.clone();
                v.swap(t, t + 1);
                neighbours.push((WordMove::Swap { t }, v));
            }
        }
        for t in 0..w.len().saturating_sub(2) {
            let (a, b, c) = (w[t], w[t + 1], w[t + 2]);
            if a == c && (a.unsigned_abs() as i64 - b.unsigned_abs() as i64).abs() == 1 {
                let mut v = w.clone();
                v[t] = b;
                v[t + 1] = a;
                v[t + 2] = b;
                neighbours.push((WordMove::Yb { t }, v));
            }
        }
        for (mv, v) in neighbours {
            if parent.contains_key(&v) || v == start {
                continue;
            }
            parent.insert(v.clone(), (w.clone(), mv));
            if done(&v) {
                // backtrack
                let mut path = Vec::new();
                let mut cur = v;
                while cur != start {
                    let (prev, mv) = parent.get(&cur).expect("chain").clone();
                    path.push(mv);
                    cur = prev;
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(v);
        }
    }
    Err("no path found among reduced words")
}

/// Traced handle reduction: reduce a word representing the identity braid
/// to the empty word (braided regime: no syllepses used).
pub fn reduce_braided(n: usize, word: &[Letter]) -> Result<Vec<WordMove>, &'static str> {
    if !BraidWord::new(n, word.to_vec())
        .map_err(|_| "letters out of range")?
        .normal_form()
        .is_trivial()
    {
        return Err("word is not the identity braid");
    }
    let mut tr = Tracer::new(word);
    let budget = 500_000 + word.len() * word.len() * 800;
    let mut spent = 0usize;
    loop {
        spent += 1;
        if spent > budget {
            return Err("handle reduction budget exceeded");
        }
        if let Some(t) =
            (0..tr.word.len().saturating_sub(1)).find(|&t| tr.word[t] == -tr.word[t + 1])
        {
            tr.push(WordMove::Cancel { t })?;
            continue;
        }
        if tr.word.is_empty() {
            return Ok(tr.trace);
        }
        let Some((h1, h2)) = innermost_handle(&tr.word) else {
            return Err("handle-free nonempty word claimed trivial");
        };
        // transport the letter at h1 rightward to meet h2
        let mut pos = h1;
        let mut end = h2;
        while pos + 1 < end {
            let k = tr.word[pos].unsigned_abs() as usize;
            let e_pos = tr.word[pos] > 0;
            let b = tr.word[pos + 1];
            let kb = b.unsigned_abs() as usize;
            if (kb as i64 - k as i64).abs() >= 2 {
                tr.push(WordMove::Swap { t: pos })?;
                pos += 1;
                continue;
            }
            let d_pos = b > 0;
            if d_pos == e_pos {
                // σ_k^e σ_m^e = σ_m^{-e} σ_k^e σ_m^e σ_k^e
                tr.push(WordMove::Insert {
                    t: pos,
                    k: kb,
                    positive: !d_pos,
                })?;
                tr.push(WordMove::Yb { t: pos + 1 })?;
            } else {
                // σ_k^e σ_m^{-e} = σ_m^{-e} σ_k^{-e} σ_m^{e} σ_k^{e}
                tr.push(WordMove::Insert {
                    t: pos + 2,
                    k,
                    positive: !e_pos,
                })?;
                tr.push(WordMove::Yb { t: pos })?;
            }
            pos += 3;
            end += 2;
        }
        debug_assert_eq!(tr.word[pos], -tr.word[pos + 1]);
        tr.push(WordMove::Cancel { t: pos })?;
    }
}

/// A permitted handle: its interior contains only strictly higher
/// generator indices and no handles at all. Found by stripping the lowest
/// index of each region recursively (the classical terminating strategy).
fn innermost_handle(w: &[Letter]) -> Option<(usize, usize)> {
    fn search(w: &[Letter], lo: usize, hi: usize) -> Option<(usize, usize)> {
        if lo >= hi {
            return None;
        }
        let m = w[lo..hi].iter().map(|l| l.unsigned_abs()).min()?;
        // leftmost pair of consecutive σ_m occurrences with opposite signs
        let mut prev: Option<usize> = None;
        for t in lo..hi {
            if w[t].unsigned_abs() == m {
                if let Some(p) = prev {
                    if w[t] == -w[p] {
                        // descend into the interior (no σ_m there)
                        return search(w, p + 1, t).or(Some((p, t)));
                    }
                }
                prev = Some(t);
            }
        }
        // σ_m is sign-definite here: recurse into the segments between its
        // occurrences
        let mut seg_lo = lo;
        for t in lo..hi {
            if w[t].unsigned_abs() == m {
                if let Some(h) = search(w, seg_lo, t) {
                    return Some(h);
                }
                seg_lo = t + 1;
            }
        }
        search(w, seg_lo, hi)
    }
    search(w, 0, w.len())
}

/// Traced path from `word` to its Garside normal-form word in the braided
/// regime.
pub fn canonicalize_braided(
    n: usize,
    word: &[Letter],
) -> Result<(Vec<WordMove>, Vec<Letter>), &'static str> {
    let bw = BraidWord::new(n, word.to_vec()).map_err(|_| "letters out of range")?;
    let target: Vec<Letter> = bw.normal_form().to_word().letters().to_vec();
    if target == word {
        return Ok((Vec::new(), target));
    }
    let mut tr = Tracer::new(word);
    // append v⁻¹·v at the end, built outside-in: pair j sits at depth
    // m-1-j, each pair being (−v_j, v_j)
    let m = target.len();
    for (j, &vj) in target.iter().enumerate().rev() {
        let t = word.len() + (m - 1 - j);
        tr.push(WordMove::Insert {
            t,
            k: vj.unsigned_abs() as usize,
            positive: vj < 0,
        })?;
    }
    debug_assert_eq!(tr.word.len(), word.len() + 2 * m);
    // the prefix word · v⁻¹ is the identity braid; reduce it standalone and
    // replay the trace here (moves are position-local, the tail is beyond)
    let prefix: Vec<Letter> = tr.word[..word.len() + m].to_vec();
    let trace = reduce_braided(n, &prefix)?;
    for mv in trace {
        tr.push(mv)?;
    }
    debug_assert_eq!(tr.word, target);
    Ok((tr.trace, target))
}
