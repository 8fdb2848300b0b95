//! Return words of a base word and the derived (return-word index) sequence.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{occurrences, Alphabet, Letter, OrbitSegment, Word};
use crate::Rational;

/// Return words of `base` in a window, numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnWordSystem {
    base: Word,
    returns: Vec<Word>,
    /// 0-based return-word index for each complete return in the window.
    derived: Vec<usize>,
    /// Occurrence starts of `base`; `derived[k]` spans `occurrences[k]..occurrences[k + 1]`.
    occurrences: Vec<usize>,
}

impl ReturnWordSystem {
    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn returns(&self) -> &[Word] {
        &self.returns
    }

    pub fn derived(&self) -> &[usize] {
        &self.derived
    }

    pub fn occurrences(&self) -> &[usize] {
        &self.occurrences
    }

    /// The return word used between occurrence `k` and `k + 1`.
    pub fn return_at(&self, k: usize) -> &Word {
        &self.returns[self.derived[k]]
    }

    pub fn max_return_len(&self) -> usize {
        self.returns.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Concatenation of the returns in derived order, i.e. the window from the
    /// first occurrence of `base` up to (excluding) the last one.
    pub fn reconstruct(&self) -> Vec<Letter> {
        self.derived
            .iter()
            .flat_map(|&d| self.returns[d].letters().iter().copied())
            .collect()
    }

    /// Largest gap, in derived letters, between consecutive uses of the same
    /// return word. `None` when some return word is used only once.
    pub fn max_derived_gap(&self) -> Option<usize> {
        let mut last: Vec<Option<usize>> = vec![None; self.returns.len()];
        let mut uses = vec![0usize; self.returns.len()];
        let mut best = 0;
        for (k, &d) in self.derived.iter().enumerate() {
            if let Some(prev) = last[d].replace(k) {
                best = best.max(k - prev);
            }
            uses[d] += 1;
        }
        uses.iter().all(|&u| u >= 2).then_some(best)
    }
}

impl fmt::Display for ReturnWordSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.base)?;
        for r in &self.returns {
            writeln!(f, "{r}")?;
        }
        let derived: Vec<String> = self.derived.iter().map(|d| (d + 1).to_string()).collect();
        writeln!(f, "{}", derived.join(" "))
    }
}

/// Splits the window between consecutive occurrences of `w` into return words.
pub fn return_words(segment: &OrbitSegment, w: &Word) -> Result<ReturnWordSystem> {
    let occ = occurrences(segment, w)?;
    if occ.len() < 3 {
        return Err(Error::TooFewOccurrences { word: w.to_string(), found: occ.len(), needed: 3 });
    }
    let mut index: HashMap<&[Letter], usize> = HashMap::new();
    let mut returns = Vec::new();
    let mut derived = Vec::with_capacity(occ.len() - 1);
    for pair in occ.windows(2) {
        let slice = &segment.letters()[pair[0]..pair[1]];
        let next = returns.len();
        let d = *index.entry(slice).or_insert_with(|| {
            returns.push(Word::from_slice_unchecked(segment.alphabet(), slice));
            next
        });
        derived.push(d);
    }
    Ok(ReturnWordSystem { base: w.clone(), returns, derived, occurrences: occ })
}

/// Result of [`return_bound_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnBound {
    pub count: usize,
    pub count_bound: Rational,
    pub max_len: usize,
    pub len_bound: Rational,
}

impl ReturnBound {
    pub fn count_ok(&self) -> bool {
        Rational::from_integer(self.count as u64) <= self.count_bound
    }

    pub fn len_ok(&self) -> bool {
        Rational::from_integer(self.max_len as u64) <= self.len_bound
    }

    pub fn holds(&self) -> bool {
        self.count_ok() && self.len_ok()
    }
}

/// Checks `N <= L(L+1)^2` and `max |R| <= L |w|` for an empirical constant `L`.
pub fn return_bound_check(system: &ReturnWordSystem, l_hat: Rational) -> ReturnBound {
    let one = Rational::from_integer(1);
    ReturnBound {
        count: system.returns.len(),
        count_bound: l_hat * (l_hat + one) * (l_hat + one),
        max_len: system.max_return_len(),
        len_bound: l_hat * Rational::from_integer(system.base.len() as u64),
    }
}

/// The derived sequence over the alphabet `{1, ..., N}`.
pub fn derived_segment(system: &ReturnWordSystem) -> Result<OrbitSegment> {
    let alphabet = Alphabet::numbered(system.returns.len())?;
    let letters = system.derived.iter().map(|&d| d as Letter).collect();
    Ok(OrbitSegment::from_word(Word::new(alphabet, letters)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shiftspaces::{fixed_point_prefix, Substitution};

    fn fib(len: usize) -> OrbitSegment {
        fixed_point_prefix(&Substitution::fibonacci(), 0, len).unwrap()
    }

    fn word(text: &str) -> Word {
        Word::parse(&Alphabet::binary(), text).unwrap()
    }

    #[test]
    fn fibonacci_returns_of_1001() {
        let sys = return_words(&fib(200), &word("1001")).unwrap();
        let rets: Vec<String> = sys.returns().iter().map(|r| r.to_string()).collect();
        assert_eq!(rets, vec!["10010", "100"]);
        assert_eq!(&sys.derived()[..7], &[0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(sys.occurrences()[0], 1);
    }

    #[test]
    fn derived_segment_prints_first_occurrence_numbering() {
        let sys = return_words(&fib(200), &word("1001")).unwrap();
        let d = derived_segment(&sys).unwrap();
        assert!(d.to_string().starts_with("1211212"));
        assert_eq!(d.alphabet().len(), 2);
    }

    #[test]
    fn constant_sequence_has_single_return() {
        let a = Alphabet::from_chars("a").unwrap();
        let s = OrbitSegment::parse(&a, "aaaaaa").unwrap();
        let sys = return_words(&s, &Word::parse(&a, "a").unwrap()).unwrap();
        assert_eq!(sys.returns().len(), 1);
        assert!(sys.derived().iter().all(|&d| d == 0));
        assert!(return_bound_check(&sys, Rational::from_integer(1)).holds());
    }

    #[test]
    fn return_words_of_zero_follow_gap_pattern() {
        let sys = return_words(&fib(200), &word("0")).unwrap();
        let lens: Vec<usize> = (0..5).map(|k| sys.return_at(k).len()).collect();
        assert_eq!(lens, vec![2, 1, 2, 2, 1]);
        let rets: Vec<String> = sys.returns().iter().map(|r| r.to_string()).collect();
        assert_eq!(rets, vec!["01", "0"]);
    }

    #[test]
    fn too_few_occurrences() {
        let err = return_words(&fib(12), &word("1001")).unwrap_err();
        assert!(matches!(err, Error::TooFewOccurrences { found: 2, .. }));
    }

    #[test]
    fn text_format() {
        let sys = return_words(&fib(30), &word("1001")).unwrap();
        let text = sys.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "1001");
        assert_eq!(lines[1], "10010");
        assert_eq!(lines[2], "100");
        assert!(lines[3].starts_with("1 2 1"));
    }
}
