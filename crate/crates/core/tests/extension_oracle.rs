//! For a constant jump `k` the S-orbits are residue classes mod `k`, so the
//! step permutation over a return word `R` is the rotation `j -> j - |R|`
//! of the entry block and loop products are rotations by occurrence distances.

use std::collections::BTreeSet;

use subshift::extension::{anchor_words, entry_positions, extension_trace, EntryMode};
use subshift::permutation::Permutation;
use subshift::shiftspaces::{fixed_point_prefix, Substitution};
use subshift::speedup::JumpFunction;
use subshift::words::{occurrences, Alphabet, OrbitSegment, Word};

fn fib(len: usize) -> OrbitSegment {
    fixed_point_prefix(&Substitution::fibonacci(), 0, len).unwrap()
}

fn rotation(k: usize, shift: usize) -> Permutation {
    Permutation::new((0..k).map(|j| (j + k - shift % k) % k).collect()).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn step_permutations_are_rotations_by_return_length() {
    let seg = fib(10_000);
    for w in ["1001", "0100", "00101"] {
        let w = Word::parse(&Alphabet::binary(), w).unwrap();
        for k in 1..=4 {
            let trace = extension_trace(&seg, &JumpFunction::constant(k).unwrap(), &w, EntryMode::Relaxed).unwrap();
            assert_eq!(trace.degree(), k);
            for (step, perm) in trace.perms().iter().enumerate() {
                let r = trace.occurrences()[step + 1] - trace.occurrences()[step];
                assert_eq!(*perm, rotation(k, r), "k = {k}, step {step}");
            }
        }
    }
}

#[test]
fn entry_positions_fill_the_block() {
    let seg = fib(10_000);
    let w = Word::parse(&Alphabet::binary(), "1001").unwrap();
    for k in 1..=4 {
        let e = entry_positions(&seg, &JumpFunction::constant(k).unwrap(), &w, EntryMode::Relaxed).unwrap();
        assert_eq!(e.positions, (1..=k).collect::<Vec<_>>());
    }
}

#[test]
fn local_groups_are_rotation_groups_of_loop_lengths() {
    let seg = fib(10_000);
    let w = Word::parse(&Alphabet::binary(), "1001").unwrap();
    for k in 2..=4 {
        let trace = extension_trace(&seg, &JumpFunction::constant(k).unwrap(), &w, EntryMode::Relaxed).unwrap();
        let covered: BTreeSet<usize> = trace.occurrences().iter().copied().collect();
        for anchor in anchor_words(&seg, &w, 6).unwrap() {
            let visits: Vec<usize> = occurrences(&seg, &anchor)
                .unwrap()
                .into_iter()
                .filter(|o| covered.contains(o))
                .collect();
            let g = visits[1..].iter().fold(k, |g, &o| gcd(g, o - visits[0]));
            let expected: BTreeSet<Permutation> = (0..k / g).map(|m| rotation(k, m * g)).collect();
            let estimate = trace.local_group(&seg, &anchor).unwrap();
            assert_eq!(estimate.elements, expected, "k = {k}, anchor {anchor}");
        }
    }
}
