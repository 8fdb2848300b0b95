//! Values frozen from `tests/oracles/derived.py`.

use subshift::lr::recurrence_profile;
use subshift::returnwords::{return_bound_check, return_words};
use subshift::shiftspaces::{complexity, fixed_point_prefix, mechanical_prefix, Substitution, SturmianSpec};
use subshift::words::{occurrences, subwords, Alphabet, OrbitSegment, Word};

fn fib(len: usize) -> OrbitSegment {
    fixed_point_prefix(&Substitution::fibonacci(), 0, len).unwrap()
}

fn tm(len: usize) -> OrbitSegment {
    fixed_point_prefix(&Substitution::thue_morse(), 0, len).unwrap()
}

fn word(text: &str) -> Word {
    Word::parse(&Alphabet::binary(), text).unwrap()
}

#[test]
fn fibonacci_0101_occurrences() {
    let occ = occurrences(&fib(10_000), &word("0101")).unwrap();
    assert_eq!(occ.len(), 1459);
    assert_eq!(&occ[..8], &[3, 11, 16, 24, 32, 37, 45, 50]);
    assert_eq!(*occ.last().unwrap(), 9996);
    assert_eq!(occ.iter().sum::<usize>(), 7_294_992);
}

#[test]
fn fibonacci_1001_occurrences() {
    let occ = occurrences(&fib(10_000), &word("1001")).unwrap();
    assert_eq!(&occ[..8], &[1, 6, 9, 14, 19, 22, 27, 30]);
}

#[test]
fn fibonacci_short_factors() {
    let s = fib(10_000);
    let show = |n| subwords(&s, n).unwrap().iter().map(|w| w.to_string()).collect::<Vec<_>>();
    assert_eq!(show(2), ["00", "01", "10"]);
    assert_eq!(show(3), ["001", "010", "100", "101"]);
}

#[test]
fn thue_morse_prefix_and_complexity() {
    assert_eq!(tm(8).to_string(), "01101001");
    let p = complexity(&tm(10_000), 10).unwrap();
    assert_eq!(p.counts(), &[2, 4, 6, 10, 12, 16, 20, 22, 24, 28]);
    assert_eq!(p.get(3), Some(6));
}

#[test]
fn mechanical_words() {
    let golden = SturmianSpec::parse("sturmian:1,1,1,1,1,1,1,1@0").unwrap();
    assert_eq!(golden.rotation().to_string(), "21/34");
    assert_eq!(mechanical_prefix(&golden, 12).unwrap().to_string(), "010110101101");
    let half = SturmianSpec::parse("sturmian:2@0").unwrap();
    assert_eq!(mechanical_prefix(&half, 4).unwrap().to_string(), "0101");
}

#[test]
fn thue_morse_010_return_system() {
    let s = tm(10_000);
    let sys = return_words(&s, &word("010")).unwrap();
    let rets: Vec<String> = sys.returns().iter().map(|r| r.to_string()).collect();
    assert_eq!(rets, ["0100110", "01011", "010", "010110011"]);
    let l_hat = recurrence_profile(&s, 10).unwrap().max_ratio();
    assert_eq!(l_hat.to_string(), "36/5");
    assert!(return_bound_check(&sys, l_hat).holds());
}

#[test]
fn fibonacci_1001_return_bound() {
    let s = fib(10_000);
    let sys = return_words(&s, &word("1001")).unwrap();
    let l_hat = recurrence_profile(&s, 10).unwrap().max_ratio();
    let b = return_bound_check(&sys, l_hat);
    assert!(b.count_ok() && b.len_ok());
}
