//! Built-in verification suites, shared by `selftest` and the acceptance
//! tests.

use graycalc_core::braid::{dynnikov_equal, parabolic_member, parabolic_member_brute, BlockPartition, BraidWord};
use graycalc_core::combinat::FsMap;
use graycalc_core::gray::GrayFlavor;
use graycalc_core::movie::Movie;
use graycalc_core::normalize::{loop_invariant, table_computad};
use graycalc_core::procat::FsBr2Cell;
use graycalc_core::pseudomonoid::{builtin_computad, f_2cell, structural_library, Builtin};
use graycalc_core::rng::Rng;

pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            passed: 0,
            failed: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.notes.push(what());
        }
    }
}

/// All built-in computad and structural equalities replay to identical
/// endpoints, and their closed loops have trivial invariant in the
/// computad's own regime.
pub fn suite_equalities() -> SuiteReport {
    let mut r = SuiteReport::new("equalities");
    for which in [Builtin::P, Builtin::Pbr, Builtin::Psym] {
        let c = builtin_computad(which);
        let mut all = c.equalities.clone();
        all.extend(structural_library(&c).expect("library builds"));
        for eq in &all {
            let lhs_t = eq.lhs.target(&c);
            let rhs_t = eq.rhs.target(&c);
            r.check(
                lhs_t.is_ok() && rhs_t.is_ok() && lhs_t.unwrap() == rhs_t.unwrap()
                    && eq.lhs.source == eq.rhs.source,
                || format!("{:?}/{} endpoints", which, eq.name),
            );
            // close into a loop and check the invariant in the computad's
            // own regime
            if which == Builtin::P {
                continue;
            }
            let Ok(back) = eq.rhs.invert(&c) else {
                r.check(false, || format!("{:?}/{} inverts", which, eq.name));
                continue;
            };
            let Ok(closed) = eq.lhs.then(&c, &back) else {
                r.check(false, || format!("{:?}/{} closes", which, eq.name));
                continue;
            };
            match loop_invariant(&c, &closed) {
                Ok(inv) => {
                    let ok = if which == Builtin::Psym {
                        inv.is_trivial_mod_squares()
                    } else {
                        inv.is_trivial()
                    };
                    r.check(ok, || format!("{:?}/{} invariant", which, eq.name));
                }
                Err(e) => r.check(false, || format!("{:?}/{}: {e}", which, eq.name)),
            }
        }
    }
    r
}

/// Fullness round trip: the invariant of the constructed loop is the
/// tuple, exactly, under Garside normal form.
pub fn suite_roundtrip(seed: u64, max_fiber: usize, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("roundtrip");
    let c = table_computad(GrayFlavor::Symmetric, Builtin::Psym).expect("valid entry");
    let mut rng = Rng::new(seed);
    // exhaustive short pure words on 2..=3 strands
    for n in 2..=3usize {
        let letters: Vec<i32> = (1..n as i32).flat_map(|k| [k, -k]).collect();
        let mut words = vec![Vec::new()];
        let mut frontier = vec![Vec::<i32>::new()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for ls in words {
            let w = BraidWord::new(n, ls).unwrap();
            if !w.is_pure() {
                continue;
            }
            let base = FsMap::new(1, vec![0; n]).unwrap();
            let cell = FsBr2Cell::new(base, vec![w.clone()]).unwrap();
            let ok = check_roundtrip(&c, &cell);
            r.check(ok, || format!("exhaustive word {:?}", w.letters()));
        }
    }
    // randomized tuples
    let mut done = 0usize;
    while done < cases {
        let trees = rng.range(1, 3);
        let mut fibers = Vec::new();
        for _ in 0..trees {
            fibers.push(rng.range(1, max_fiber + 1));
        }
        let values: Vec<usize> = fibers
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| core::iter::repeat(i).take(p))
            .collect();
        let base = FsMap::new(trees, values).unwrap();
        let tuple: Vec<BraidWord> = fibers
            .iter()
            .map(|&p| random_pure_word(&mut rng, p, 6))
            .collect();
        let Ok(cell) = FsBr2Cell::new(base, tuple) else {
            continue;
        };
        r.check(check_roundtrip(&c, &cell), || String::from("random tuple"));
        done += 1;
    }
    r
}

fn check_roundtrip(c: &graycalc_core::gray::Computad, cell: &FsBr2Cell) -> bool {
    let Ok(m) = f_2cell(c, cell) else {
        return false;
    };
    let Ok(inv) = loop_invariant(c, &m) else {
        return false;
    };
    inv.trees.len() == cell.tuple().len()
        && inv
            .trees
            .iter()
            .zip(cell.tuple())
            .all(|(t, w)| t.absorbed == w.normal_form())
}

/// A random pure braid word on `n` strands with at most `max_len` letters.
pub fn random_pure_word(rng: &mut Rng, n: usize, max_len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n);
    }
    // random word, then close it to a pure braid by appending the sweep
    // word inverse of its permutation; truncate-retry to respect max_len
    for _ in 0..20 {
        let len = rng.below(max_len / 2 + 1);
        let letters: Vec<i32> = (0..len).filter_map(|_| rng.letter(n)).collect();
        let w = BraidWord::new(n, letters).unwrap();
        let fix = graycalc_core::combinat::perm_representative_word(
            &w.underlying_permutation().inverse(),
        );
        let closed = w.multiply(&fix).unwrap();
        if closed.len() <= max_len && closed.is_pure() {
            return closed;
        }
    }
    BraidWord::identity(n)
}

/// Garside vs Dynnikov agreement, and parabolic membership vs brute force.
pub fn suite_braid_oracle(seed: u64, pairs: usize) -> SuiteReport {
    let mut r = SuiteReport::new("braid-oracle");
    let mut rng = Rng::new(seed);
    for _ in 0..pairs {
        let n = rng.range(2, 6);
        let la: Vec<i32> = (0..rng.below(13)).filter_map(|_| rng.letter(n)).collect();
        let lb: Vec<i32> = (0..rng.below(13)).filter_map(|_| rng.letter(n)).collect();
        let a = BraidWord::new(n, la).unwrap();
        let b = BraidWord::new(n, lb).unwrap();
        let garside = a.equals(&b);
        let dynnikov = dynnikov_equal(&a, &b).unwrap();
        r.check(garside == dynnikov, || {
            format!("garside={garside} dynnikov={dynnikov} on {:?} vs {:?}", a, b)
        });
        // also force some equal pairs
        let conj = {
            let t: Vec<i32> = (0..rng.below(4)).filter_map(|_| rng.letter(n)).collect();
            let t = BraidWord::new(n, t).unwrap();
            t.inverse().multiply(&a).unwrap().multiply(&t).unwrap()
        };
        let equal_words = a
            .multiply(&BraidWord::identity(n))
            .unwrap();
        let _ = conj;
        r.check(
            dynnikov_equal(&a, &equal_words).unwrap(),
            || String::from("identity-padded pair"),
        );
    }
    // parabolic membership against bounded brute force
    let mut done = 0usize;
    while done < 40 {
        let m = rng.range(2, 6);
        let mut widths = Vec::new();
        let mut left = m;
        while left > 0 {
            let take = rng.range(1, left + 1);
            widths.push(take);
            left -= take;
        }
        let blocks = BlockPartition::new(widths);
        let ls: Vec<i32> = (0..rng.below(6)).filter_map(|_| rng.letter(m)).collect();
        let w = BraidWord::new(m, ls).unwrap();
        let fast = parabolic_member(&w, &blocks).unwrap();
        let bound = (2 * w.normal_form().to_word().len()).clamp(2, 8);
        let slow = parabolic_member_brute(&w, &blocks, bound);
        if fast || slow {
            r.check(fast == slow, || format!("parabolic mismatch on {:?}", w));
        }
        done += 1;
    }
    r
}

pub fn run_suite(name: &str, seed: u64, max_fiber: usize, budget: usize) -> Vec<SuiteReport> {
    let scale = budget.clamp(1, 100);
    match name {
        "equalities" => vec![suite_equalities()],
        "roundtrip" => vec![suite_roundtrip(seed, max_fiber, 50 * scale.min(4))],
        "braid-oracle" => vec![suite_braid_oracle(seed, 50 * scale.min(4))],
        _ => vec![
            suite_equalities(),
            suite_roundtrip(seed, max_fiber, 100),
            suite_braid_oracle(seed, 100),
        ],
    }
}

/// Close an equality into the loop lhs ∘ rhs⁻¹.
pub fn closed_loop(
    c: &graycalc_core::gray::Computad,
    eq: &graycalc_core::gray::Equality,
) -> Option<Movie> {
    let back = eq.rhs.invert(c).ok()?;
    eq.lhs.then(c, &back).ok()
}
