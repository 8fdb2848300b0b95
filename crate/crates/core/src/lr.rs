//! Empirical linear-recurrence profiles of a shift and of its speedup.
//!
//! All ratios are exact. Gaps are measured between consecutive occurrence
//! starts inside the window; the gap before the first and after the last
//! occurrence is never counted.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::shiftspaces::complexity;
use crate::speedup::{
    check_pattern_stability, orbit_coloring, pattern_keys, pattern_span, JumpFunction, LandingMap,
    OrbitColoring,
};
use crate::words::{Letter, OrbitSegment};
use crate::Rational;

/// Number of S-iterates per class (as a multiple of `n`) that
/// [`minimality_probe`] inspects.
pub const MINIMALITY_SPAN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub n: usize,
    pub max_gap: usize,
    /// `max_gap / n`.
    pub ratio: Rational,
}

/// `n -> max gap / n` for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceProfile {
    pub rows: Vec<RecurrenceRow>,
}

impl RecurrenceProfile {
    pub fn max_ratio(&self) -> Rational {
        self.rows.iter().map(|r| r.ratio).max().unwrap_or_else(|| Rational::from_integer(0))
    }

    /// Largest ratio over `n >= from`.
    pub fn max_ratio_from(&self, from: usize) -> Rational {
        self.rows
            .iter()
            .filter(|r| r.n >= from)
            .map(|r| r.ratio)
            .max()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    pub fn get(&self, n: usize) -> Option<&RecurrenceRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// CSV `n,max_gap,ratio_num,ratio_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,max_gap,ratio_num,ratio_den\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.n, r.max_gap, r.ratio.numer(), r.ratio.denom());
        }
        out
    }
}

fn row(n: usize, max_gap: usize) -> RecurrenceRow {
    RecurrenceRow { n, max_gap, ratio: Rational::new(max_gap as u64, n as u64) }
}

/// Largest gap between consecutive occurrences of any length-`n` word.
fn max_word_gap(letters: &[Letter], n: usize) -> usize {
    let mut last: HashMap<&[Letter], usize> = HashMap::new();
    let mut best = 0;
    for (i, w) in letters.windows(n).enumerate() {
        if let Some(prev) = last.insert(w, i) {
            best = best.max(i - prev);
        }
    }
    best
}

/// Max-gap ratios of the base shift over the window.
pub fn recurrence_profile(segment: &OrbitSegment, n_max: usize) -> Result<RecurrenceProfile> {
    complexity(segment, n_max)?;
    let rows = (1..=n_max)
        .map(|n| match max_word_gap(segment.letters(), n) {
            0 => Err(Error::WindowTooShort { what: "recurrence", n }),
            gap => Ok(row(n, gap)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecurrenceProfile { rows })
}

/// Window indices of each class, increasing; consecutive entries are
/// consecutive S-iterates.
fn class_orbits(coloring: &OrbitColoring) -> Vec<Vec<usize>> {
    let mut orbits = vec![Vec::new(); coloring.c()];
    for (i, label) in coloring.labels().iter().enumerate() {
        if let Some(c) = label {
            orbits[*c].push(i);
        }
    }
    orbits
}

/// Gaps in S-iterates between reoccurrences of each S-pattern within a
/// single orbit class, maximised over patterns and classes.
pub fn speedup_recurrence_profile(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    n_max: usize,
) -> Result<RecurrenceProfile> {
    let coloring = orbit_coloring(segment, jump)?;
    complexity(segment, n_max)?;
    check_pattern_stability(segment.letters(), jump, n_max)?;
    let map = LandingMap::new(segment, jump)?;
    let letters = segment.letters();
    let orbits = class_orbits(&coloring);
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut best = 0;
        for orbit in &orbits {
            let mut last: HashMap<&[Letter], usize> = HashMap::new();
            for (k, &i) in orbit.iter().enumerate() {
                let Some((lo, hi)) = pattern_span(&map, i, n) else { continue };
                if let Some(prev) = last.insert(&letters[lo..hi], k) {
                    best = best.max(k - prev);
                }
            }
        }
        if best == 0 {
            return Err(Error::WindowTooShort { what: "speedup recurrence", n });
        }
        rows.push(row(n, best));
    }
    Ok(RecurrenceProfile { rows })
}

/// Result of [`minimality_probe`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub n: usize,
    /// Distinct S-patterns of length `n` in the whole window.
    pub patterns: usize,
    /// For each class, how many of those patterns its sub-window misses.
    pub missing_per_class: Vec<usize>,
}

impl MinimalityVerdict {
    pub fn holds(&self) -> bool {
        self.missing_per_class.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for MinimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S-patterns of length {}: {}", self.n, self.patterns)?;
        for (c, m) in self.missing_per_class.iter().enumerate() {
            writeln!(f, "class {c}: {m} missing")?;
        }
        writeln!(f, "minimal (window probe): {}", if self.holds() { "yes" } else { "NO" })
    }
}

/// True iff every length-`n` S-pattern of the window shows up in each class's
/// run of `MINIMALITY_SPAN * n` iterates starting at the central window.
pub fn minimality_probe(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    n: usize,
) -> Result<MinimalityVerdict> {
    if n == 0 {
        return Err(Error::LengthOutOfRange { n, len: segment.len() });
    }
    let coloring = orbit_coloring(segment, jump)?;
    let map = LandingMap::new(segment, jump)?;
    let letters = segment.letters();
    let all = pattern_keys(letters, &map, n);
    let span = MINIMALITY_SPAN * n;
    let central_start = coloring.central().start;
    let mut missing_per_class = Vec::with_capacity(coloring.c());
    for orbit in class_orbits(&coloring) {
        let from = orbit.partition_point(|&i| i < central_start);
        if orbit.len() < from + span {
            return Err(Error::WindowTooShort { what: "minimality probe", n });
        }
        let seen: BTreeSet<&[Letter]> = orbit[from..from + span]
            .iter()
            .filter_map(|&i| pattern_span(&map, i, n))
            .map(|(lo, hi)| &letters[lo..hi])
            .collect();
        missing_per_class.push(all.iter().filter(|p| !seen.contains(*p)).count());
    }
    Ok(MinimalityVerdict { n, patterns: all.len(), missing_per_class })
}

/// One row of the proof-bound check `gap <= 2 L* L p_max n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofBoundRow {
    pub n: usize,
    pub gap: usize,
    pub bound: Rational,
}

impl ProofBoundRow {
    pub fn holds(&self) -> bool {
        Rational::from_integer(self.gap as u64) <= self.bound
    }
}

/// Compares every speedup gap against `2 L̂* L̂ p_max |v|`.
pub fn proof_bound_check(
    speedup: &RecurrenceProfile,
    l_hat: Rational,
    l_star: Rational,
    p_max: usize,
) -> Vec<ProofBoundRow> {
    let factor = Rational::from_integer(2 * p_max as u64) * l_hat * l_star;
    speedup
        .rows
        .iter()
        .map(|r| ProofBoundRow { n: r.n, gap: r.max_gap, bound: factor * Rational::from_integer(r.n as u64) })
        .collect()
}

/// Frozen maxima of the recurrence profiles for reference inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrGolden {
    /// Shift name as accepted by the command line (`fibonacci`, ...).
    pub shift: &'static str,
    pub jump: usize,
    pub window: usize,
    pub base_n_max: usize,
    pub speedup_n_max: usize,
    /// `(numerator, denominator)` of the base profile maximum.
    pub base_max: (u64, u64),
    pub speedup_max: (u64, u64),
}

impl LrGolden {
    pub fn base_max(&self) -> Rational {
        Rational::new(self.base_max.0, self.base_max.1)
    }

    pub fn speedup_max(&self) -> Rational {
        Rational::new(self.speedup_max.0, self.speedup_max.1)
    }
}

/// Reference values, produced by an independent scan of a `10^5` window
/// (`tests/oracles/lr_goldens.py`).
pub const GOLDENS: &[LrGolden] = &[
    LrGolden {
        shift: "fibonacci",
        jump: 2,
        window: 100_000,
        base_n_max: 20,
        speedup_n_max: 15,
        base_max: (3, 1),
        speedup_max: (55, 7),
    },
    LrGolden {
        shift: "fibonacci",
        jump: 3,
        window: 100_000,
        base_n_max: 20,
        speedup_n_max: 15,
        base_max: (3, 1),
        speedup_max: (185, 12),
    },
];

pub fn golden_for(shift: &str, jump: usize) -> Option<&'static LrGolden> {
    GOLDENS.iter().find(|g| g.shift == shift && g.jump == jump)
}
