use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use subshift::extension::{cocycle, extension_trace, EntryMode};
use subshift::permutation::Permutation;
use subshift::returnwords::return_words;
use subshift::shiftspaces::{complexity, fixed_point_prefix, mechanical_prefix, Substitution, SturmianSpec};
use subshift::speedup::{orbit_coloring, JumpFunction, LandingMap};
use subshift::words::{occurrences, Alphabet, OrbitSegment, Word};

fn binary(letters: Vec<u32>) -> Word {
    Word::new(Alphabet::binary(), letters).unwrap()
}

fn fib(len: usize) -> OrbitSegment {
    fixed_point_prefix(&Substitution::fibonacci(), 0, len).unwrap()
}

fn sturmian(quotients: Vec<u64>, len: usize) -> OrbitSegment {
    let zero = BigRational::from_integer(BigInt::from(0));
    mechanical_prefix(&SturmianSpec::new(quotients, zero).unwrap(), len).unwrap()
}

fn occurrences_in(hay: &[u32], needle: &[u32]) -> Vec<usize> {
    (0..=hay.len() - needle.len()).filter(|&i| hay[i..i + needle.len()] == *needle).collect()
}

/// Orbit labels by walking landing chains forwards and backwards.
fn chain_labels(seg: &OrbitSegment, jump: &JumpFunction) -> Vec<Option<usize>> {
    let letters = seg.letters();
    let k = jump.radius();
    let len = letters.len();
    let mut next = vec![None; len];
    let mut prev = vec![None; len];
    for i in k..len.saturating_sub(k) {
        let t = i + jump.value(&letters[i - k..=i + k]).unwrap();
        if t < len {
            next[i] = Some(t);
            prev[t] = Some(i);
        }
    }
    let mut labels = vec![None; len];
    let mut count = 0;
    for i in len / 4..3 * len / 4 {
        if labels[i].is_some() {
            continue;
        }
        labels[i] = Some(count);
        let mut j = i;
        while let Some(t) = next[j] {
            labels[t] = Some(count);
            j = t;
        }
        let mut j = i;
        while let Some(t) = prev[j] {
            labels[t] = Some(count);
            j = t;
        }
        count += 1;
    }
    labels
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn occurrences_match_naive_scan(
        hay in prop::collection::vec(0u32..2, 1..200),
        needle in prop::collection::vec(0u32..2, 1..6),
    ) {
        let seg = OrbitSegment::from_word(binary(hay.clone()));
        let w = binary(needle.clone());
        let naive: Vec<usize> = if needle.len() > hay.len() {
            Vec::new()
        } else {
            (0..=hay.len() - needle.len()).filter(|&i| hay[i..i + needle.len()] == needle[..]).collect()
        };
        match occurrences(&seg, &w) {
            Ok(found) => prop_assert_eq!(found, naive),
            Err(_) => prop_assert!(needle.len() > hay.len()),
        }
    }

    #[test]
    fn fixed_point_prefixes_nest(a in 1usize..400, b in 1usize..400) {
        for sub in [Substitution::fibonacci(), Substitution::thue_morse()] {
            let (short, long) = (a.min(b), a.max(b));
            let x = fixed_point_prefix(&sub, 0, short).unwrap();
            let y = fixed_point_prefix(&sub, 0, long).unwrap();
            prop_assert_eq!(x.letters(), &y.letters()[..short]);
        }
    }

    #[test]
    fn mechanical_words_are_balanced(quotients in prop::collection::vec(1u64..5, 1..6), n in 1usize..20) {
        let s = sturmian(quotients, 300);
        let ones: Vec<u32> = s.letters().windows(n).map(|w| w.iter().sum()).collect();
        let (lo, hi) = (ones.iter().min().unwrap(), ones.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
    }

    #[test]
    fn complexity_is_non_decreasing(quotients in prop::collection::vec(1u64..4, 1..5)) {
        let s = sturmian(quotients, 4000);
        if let Ok(p) = complexity(&s, 12) {
            prop_assert!(p.is_monotone());
            for n in 1..=12 {
                prop_assert!(p.get(n).unwrap() <= n + 1);
            }
        }
    }

    #[test]
    fn landings_add_jump_values(p0 in 1usize..4, p1 in 1usize..4, start in 0usize..50) {
        let seg = fib(500);
        let jump = JumpFunction::table(Alphabet::binary(), 0, [(vec![0], p0), (vec![1], p1)]).unwrap();
        let map = LandingMap::new(&seg, &jump).unwrap();
        let orbit = map.orbit_from(start);
        for pair in orbit.windows(2) {
            let p = jump.value(&seg.letters()[pair[0]..=pair[0]]).unwrap();
            prop_assert_eq!(pair[1], pair[0] + p);
        }
        let last = *orbit.last().unwrap();
        prop_assert!(last + jump.value(&seg.letters()[last..=last]).unwrap() >= seg.len());
    }

    #[test]
    fn coloring_matches_chain_oracle(k in 1usize..5, len in 2000usize..5000) {
        let seg = fib(len);
        let jump = JumpFunction::constant(k).unwrap();
        let coloring = orbit_coloring(&seg, &jump).unwrap();
        let oracle = chain_labels(&seg, &jump);
        for i in coloring.central() {
            prop_assert_eq!(coloring.label(i), oracle[i]);
        }
        prop_assert_eq!(coloring.c(), k);
    }

    #[test]
    fn returns_rebuild_the_window(quotients in prop::collection::vec(1u64..4, 1..5), wl in 1usize..5, at in 0usize..100) {
        let s = sturmian(quotients, 3000);
        let w = Word::new(Alphabet::binary(), s.letters()[at..at + wl].to_vec()).unwrap();
        if let Ok(sys) = return_words(&s, &w) {
            let occ = sys.occurrences();
            prop_assert_eq!(sys.reconstruct(), s.letters()[occ[0]..*occ.last().unwrap()].to_vec());
            for r in sys.returns() {
                let rw: Vec<u32> = r.letters().iter().chain(w.letters()).copied().collect();
                prop_assert!(rw.starts_with(w.letters()));
                prop_assert_eq!(occurrences_in(&rw, w.letters()), vec![0, r.len()]);
            }
        }
    }

    #[test]
    fn cocycle_is_additive(k in 2usize..4, m in -200i64..200, n in -200i64..200) {
        let trace = extension_trace(&fib(5000), &JumpFunction::constant(k).unwrap(), &binary(vec![1, 0, 0, 1]), EntryMode::Relaxed).unwrap();
        let o = trace.origin() as i64;
        let len = trace.len() as i64;
        prop_assume!((0..=len).contains(&(o + m)) && (0..=len).contains(&(o + m + n)));
        let lhs = cocycle(&trace, m + n).unwrap();
        let rhs = &cocycle(&trace, m).unwrap() * &cocycle(&trace.shifted(m).unwrap(), n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn fibonacci_complexity_is_n_plus_one() {
    let p = complexity(&fib(10_000), 25).unwrap();
    for n in 1..=25 {
        assert_eq!(p.get(n), Some(n + 1));
    }
}

#[test]
fn permutation_depends_only_on_return_word() {
    for k in 1..=4 {
        let trace = extension_trace(&fib(10_000), &JumpFunction::constant(k).unwrap(), &binary(vec![1, 0, 0, 1]), EntryMode::Relaxed)
            .unwrap();
        assert!(trace.permutation_table().values().all(|ps| ps.len() == 1));
    }
}

#[test]
fn cumulative_matches_composed_steps() {
    let trace =
        extension_trace(&fib(10_000), &JumpFunction::constant(3).unwrap(), &binary(vec![1, 0, 0, 1]), EntryMode::Relaxed).unwrap();
    let mut acc = Permutation::identity(trace.degree());
    assert_eq!(trace.cumulative()[0], acc);
    for (k, p) in trace.perms().iter().enumerate() {
        acc = &acc * p;
        assert_eq!(trace.cumulative()[k + 1], acc);
    }
}

#[test]
fn local_group_is_constant_along_nested_anchors() {
    let seg = fib(10_000);
    let trace =
        extension_trace(&seg, &JumpFunction::constant(3).unwrap(), &binary(vec![1, 0, 0, 1]), EntryMode::Relaxed).unwrap();
    // 1001 ⊂ 10010 ⊂ 100101 ⊂ 1001010 ⊂ 10010100
    let full = "10010100";
    let groups: Vec<_> = (5..=full.len())
        .map(|l| trace.local_group(&seg, &Word::parse(&Alphabet::binary(), &full[..l]).unwrap()).unwrap().elements)
        .collect();
    assert!(groups.windows(2).all(|g| g[0] == g[1]));
}

#[test]
fn larger_windows_agree() {
    let jump = JumpFunction::first_return(&fib(20_000), 3).unwrap();
    let small = orbit_coloring(&fib(10_000), &jump).unwrap().c();
    let large = orbit_coloring(&fib(40_000), &jump).unwrap().c();
    assert_eq!(small, large);
    let a = complexity(&fib(5_000), 15).unwrap();
    let b = complexity(&fib(50_000), 15).unwrap();
    assert_eq!(a, b);
}

#[test]
fn first_return_orbit_number_matches_chain_oracle() {
    let seg = fib(20_000);
    let jump = JumpFunction::first_return(&seg, 3).unwrap();
    let coloring = orbit_coloring(&seg, &jump).unwrap();
    let oracle = chain_labels(&seg, &jump);
    let mut distinct: HashMap<usize, ()> = HashMap::new();
    for i in coloring.central() {
        assert_eq!(coloring.label(i), oracle[i]);
        distinct.insert(oracle[i].unwrap(), ());
    }
    assert_eq!(distinct.len(), 2);
}
