//! Group extension of the derived shift by the permutations S-orbits undergo
//! between consecutive occurrences of a base word.
//!
//! Classes are the S-orbit labels of [`OrbitColoring`]. At each occurrence of
//! `w`, the *entry block* is the run of `p_max` in-word positions starting at
//! 1-based position `2K + 1`; every class lands in it at least once, and its
//! first landing there is its entry position. Entry positions are numbered
//! `1..=c` from left to right.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permutation::{find_conjugator, generate, Permutation};
use crate::returnwords::return_words;
use crate::speedup::{orbit_coloring, JumpFunction, Landing, LandingMap, OrbitColoring};
use crate::words::{occurrences_in, OrbitSegment, Word};
use crate::Rational;

/// How strictly the minimal word length is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntryMode {
    /// Require `|w| >= p_max + 4K + 2`.
    Strict,
    /// Accept shorter words and read entries off the window.
    #[default]
    Relaxed,
}

/// Entry positions of the S-orbit classes at one occurrence of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryProfile {
    pub word: Word,
    /// Window index of the occurrence.
    pub occurrence: usize,
    /// 1-based in-word positions, increasing.
    pub positions: Vec<usize>,
    /// Orbit-class label entering at each position.
    pub classes: Vec<usize>,
}

impl fmt::Display for EntryProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {} at index {}", self.word, self.occurrence)?;
        for (j, (pos, class)) in self.positions.iter().zip(&self.classes).enumerate() {
            writeln!(f, "entry {}: position {} (orbit class {})", j + 1, pos, class + 1)?;
        }
        Ok(())
    }
}

/// Shared state for scanning occurrences of one word under one jump.
struct Scanner<'a> {
    segment: &'a OrbitSegment,
    word: Word,
    coloring: OrbitColoring,
    map: LandingMap,
    block_offset: usize,
    block_len: usize,
}

impl<'a> Scanner<'a> {
    fn new(
        segment: &'a OrbitSegment,
        jump: &JumpFunction,
        w: &Word,
        mode: EntryMode,
    ) -> Result<Self> {
        if segment.alphabet() != w.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let coloring = orbit_coloring(segment, jump)?;
        let p_max = coloring.p_max();
        let k = jump.radius();
        if mode == EntryMode::Strict && w.len() < p_max + 4 * k + 2 {
            return Err(Error::WordTooShort { len: w.len(), min: p_max + 4 * k + 2 });
        }
        Ok(Scanner {
            segment,
            word: w.clone(),
            map: LandingMap::new(segment, jump)?,
            coloring,
            block_offset: 2 * k,
            block_len: p_max,
        })
    }

    fn occurrences(&self) -> Vec<usize> {
        occurrences_in(self.segment.letters(), self.word.letters())
    }

    /// `(window index, class)` of each entry at the occurrence `occ`, or
    /// `None` when the block is not fully labelled.
    fn entries_at(&self, occ: usize) -> Option<Vec<(usize, usize)>> {
        let start = occ + self.block_offset;
        if start + self.block_len > self.segment.len() {
            return None;
        }
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for i in start..start + self.block_len {
            first.entry(self.coloring.label(i)?).or_insert(i);
        }
        if first.len() != self.coloring.c() {
            return None;
        }
        let mut entries: Vec<(usize, usize)> = first.into_iter().map(|(c, i)| (i, c)).collect();
        entries.sort_unstable();
        Some(entries)
    }

    fn profile(&self, occ: usize) -> Option<EntryProfile> {
        let entries = self.entries_at(occ)?;
        Some(EntryProfile {
            word: self.word.clone(),
            occurrence: occ,
            positions: entries.iter().map(|&(i, _)| i - occ + 1).collect(),
            classes: entries.iter().map(|&(_, c)| c).collect(),
        })
    }

    /// Follows each entry orbit at `from` until it reaches the block of `to`.
    fn transition(&self, from: usize, to: usize) -> Result<Permutation> {
        let target = to + self.block_offset;
        let src = self.entries_at(from).ok_or(Error::OrbitExitsWindow { target: from })?;
        let dst = self.entries_at(to).ok_or(Error::OrbitExitsWindow { target })?;
        let mut images = Vec::with_capacity(src.len());
        for &(start, _) in &src {
            let mut cur = start;
            while cur < target {
                cur = match self.map.landing(cur) {
                    Some(Landing::Inside(next)) => next,
                    _ => return Err(Error::OrbitExitsWindow { target }),
                };
            }
            let j = dst.iter().position(|&(i, _)| i == cur).ok_or_else(|| {
                Error::NotBijective(format!("orbit from {start} enters at {cur}, not an entry position"))
            })?;
            images.push(j);
        }
        Permutation::new(images)
    }
}

/// Entry positions at the first occurrence of `w` whose entry block is fully labelled.
pub fn entry_positions(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    w: &Word,
    mode: EntryMode,
) -> Result<EntryProfile> {
    let scanner = Scanner::new(segment, jump, w, mode)?;
    let occ = scanner.occurrences();
    if occ.is_empty() {
        return Err(Error::NoOccurrence(w.to_string()));
    }
    occ.iter()
        .find_map(|&o| scanner.profile(o))
        .ok_or(Error::OrbitExitsWindow { target: occ[0] })
}

/// `ψ` between consecutive occurrences `i < j` of `w`: entry `s` at `i`
/// maps to the entry at `j` that its S-orbit reaches.
pub fn transition_permutation(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    w: &Word,
    (i, j): (usize, usize),
    mode: EntryMode,
) -> Result<Permutation> {
    let scanner = Scanner::new(segment, jump, w, mode)?;
    let occ = scanner.occurrences();
    let pos = occ.binary_search(&i).map_err(|_| Error::NotConsecutive(i, j))?;
    if occ.get(pos + 1) != Some(&j) {
        return Err(Error::NotConsecutive(i, j));
    }
    scanner.transition(i, j)
}

/// Step permutations and running cocycle products along the occurrences of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionTrace {
    word: Word,
    degree: usize,
    /// Distinct return words, numbered by first occurrence in the whole window.
    returns: Arc<Vec<Word>>,
    /// Window indices of the occurrences covered by the trace.
    occurrences: Arc<Vec<usize>>,
    derived: Arc<Vec<usize>>,
    perms: Arc<Vec<Permutation>>,
    cumulative: Arc<Vec<Permutation>>,
    origin: usize,
}

impl ExtensionTrace {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Orbit number `c`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn returns(&self) -> &[Word] {
        &self.returns
    }

    pub fn occurrences(&self) -> &[usize] {
        &self.occurrences
    }

    pub fn derived(&self) -> &[usize] {
        &self.derived
    }

    /// `perms[k]` is the permutation between occurrences `k` and `k + 1`.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// `cumulative[k] = perms[0] * ... * perms[k-1]`.
    pub fn cumulative(&self) -> &[Permutation] {
        &self.cumulative
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Occurrence index playing the role of position 0 for [`cocycle`].
    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn with_origin(&self, origin: usize) -> Result<Self> {
        if origin > self.len() {
            return Err(Error::CocycleOutOfRange {
                n: origin as i64,
                min: 0,
                max: self.len() as i64,
            });
        }
        Ok(ExtensionTrace { origin, ..self.clone() })
    }

    /// The same trace with position 0 moved `m` steps.
    pub fn shifted(&self, m: i64) -> Result<Self> {
        let origin = self.origin as i64 + m;
        if origin < 0 {
            return Err(self.range_error(m));
        }
        self.with_origin(origin as usize).map_err(|_| self.range_error(m))
    }

    fn range_error(&self, n: i64) -> Error {
        Error::CocycleOutOfRange {
            n,
            min: -(self.origin as i64),
            max: (self.len() - self.origin) as i64,
        }
    }

    /// Subgroup generated by all step permutations.
    pub fn generated_group(&self) -> BTreeSet<Permutation> {
        generate(self.degree, self.perms.iter()).expect("trace permutations share a degree")
    }

    /// CSV rows `occurrence,position,return_word,step,cumulative`; `cumulative`
    /// is the product through the row's step.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("occurrence,position,return_word,step,cumulative\n");
        for (k, perm) in self.perms.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                k,
                self.occurrences[k],
                self.returns[self.derived[k]],
                perm,
                self.cumulative[k + 1]
            );
        }
        out
    }

    /// `ψ` observed for each return word; more than one entry for a return
    /// word means the permutation is not determined by the word alone.
    pub fn permutation_table(&self) -> BTreeMap<usize, BTreeSet<Permutation>> {
        let mut table: BTreeMap<usize, BTreeSet<Permutation>> = BTreeMap::new();
        for (d, p) in self.derived.iter().zip(self.perms.iter()) {
            table.entry(*d).or_default().insert(p.clone());
        }
        table
    }
}

/// Builds the trace over the longest run of consecutive occurrences of `w`
/// whose transitions stay inside the window. Position 0 is the middle occurrence.
pub fn extension_trace(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    w: &Word,
    mode: EntryMode,
) -> Result<ExtensionTrace> {
    let scanner = Scanner::new(segment, jump, w, mode)?;
    let system = return_words(segment, w)?;
    let occ = system.occurrences();
    let steps: Vec<Option<Permutation>> = occ
        .windows(2)
        .map(|pair| scanner.transition(pair[0], pair[1]).ok())
        .collect();
    // Longest run of successful steps.
    let (mut best, mut run_start) = ((0, 0), 0);
    for (k, step) in steps.iter().enumerate() {
        if step.is_none() {
            run_start = k + 1;
        } else if k + 1 - run_start > best.1 - best.0 {
            best = (run_start, k + 1);
        }
    }
    let (lo, hi) = best;
    if hi - lo < 2 {
        return Err(Error::TooFewOccurrences {
            word: w.to_string(),
            found: hi - lo + 1,
            needed: 3,
        });
    }
    let perms: Vec<Permutation> = steps[lo..hi].iter().map(|p| p.clone().expect("in run")).collect();
    let degree = scanner.coloring.c();
    let mut cumulative = Vec::with_capacity(perms.len() + 1);
    cumulative.push(Permutation::identity(degree));
    for p in &perms {
        let next = cumulative.last().expect("non-empty") * p;
        cumulative.push(next);
    }
    Ok(ExtensionTrace {
        word: w.clone(),
        degree,
        returns: Arc::new(system.returns().to_vec()),
        occurrences: Arc::new(occ[lo..=hi].to_vec()),
        derived: Arc::new(system.derived()[lo..hi].to_vec()),
        origin: (hi - lo) / 2,
        perms: Arc::new(perms),
        cumulative: Arc::new(cumulative),
    })
}

/// Cocycle over `n` steps from the trace origin `o`:
/// `ψ_o ... ψ_{o+n-1}` for `n > 0`, the identity for `n = 0`, and
/// `(ψ_{o+n} ... ψ_{o-1})^-1` for `n < 0`.
pub fn cocycle(trace: &ExtensionTrace, n: i64) -> Result<Permutation> {
    let o = trace.origin as i64;
    if o + n < 0 || o + n > trace.len() as i64 {
        return Err(trace.range_error(n));
    }
    let product = |range: std::ops::Range<usize>| {
        trace.perms[range]
            .iter()
            .fold(Permutation::identity(trace.degree), |acc, p| &acc * p)
    };
    Ok(match n {
        0 => Permutation::identity(trace.degree),
        n if n > 0 => product(trace.origin..(o + n) as usize),
        n => product((o + n) as usize..trace.origin).inverse(),
    })
}

/// Where a generator of a [`SubgroupEstimate`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    /// Window indices of the anchor occurrences the loop runs between.
    pub from: usize,
    pub to: usize,
}

/// Lower estimate of the local group: generated by observed loop products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupEstimate {
    pub degree: usize,
    pub generators: Vec<(Permutation, Provenance)>,
    pub elements: BTreeSet<Permutation>,
    /// Length of the window the estimate was read from.
    pub window: usize,
}

impl SubgroupEstimate {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn from_generators(degree: usize, gens: &[Permutation], window: usize) -> Result<Self> {
        Ok(SubgroupEstimate {
            degree,
            generators: gens
                .iter()
                .map(|g| (g.clone(), Provenance { from: 0, to: 0 }))
                .collect(),
            elements: generate(degree, gens.iter())?,
            window,
        })
    }
}

impl fmt::Display for SubgroupEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}} (order {}, estimate from window {})", elems.join(", "), self.order(), self.window)
    }
}

impl ExtensionTrace {
    /// Subgroup generated by cocycle products along loops from the first
    /// occurrence of `anchor` to each later one. `anchor` must contain the base word.
    pub fn local_group(&self, segment: &OrbitSegment, anchor: &Word) -> Result<SubgroupEstimate> {
        let offset = occurrences_in(anchor.letters(), self.word.letters())
            .first()
            .copied()
            .ok_or_else(|| {
                Error::InvalidSpec(format!("anchor `{anchor}` does not contain `{}`", self.word))
            })?;
        let index: HashMap<usize, usize> =
            self.occurrences.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let visits: Vec<(usize, usize)> = occurrences_in(segment.letters(), anchor.letters())
            .into_iter()
            .filter_map(|q| index.get(&(q + offset)).map(|&k| (q, k)))
            .collect();
        if visits.len() < 3 {
            return Err(Error::TooFewOccurrences {
                word: anchor.to_string(),
                found: visits.len(),
                needed: 3,
            });
        }
        let (q0, k0) = visits[0];
        let back = self.cumulative[k0].inverse();
        let mut generators: Vec<(Permutation, Provenance)> = Vec::new();
        for &(q, k) in &visits[1..] {
            let loop_product = &back * &self.cumulative[k];
            if !loop_product.is_identity() && !generators.iter().any(|(g, _)| *g == loop_product) {
                generators.push((loop_product, Provenance { from: q0, to: q }));
            }
        }
        let elements = generate(self.degree, generators.iter().map(|(g, _)| g))?;
        Ok(SubgroupEstimate { degree: self.degree, generators, elements, window: segment.len() })
    }
}

/// Local group estimate at the anchor word `anchor` (an extension of `w`).
pub fn local_group(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    w: &Word,
    anchor: &Word,
    mode: EntryMode,
) -> Result<SubgroupEstimate> {
    extension_trace(segment, jump, w, mode)?.local_group(segment, anchor)
}

/// Up to `count` distinct right extensions of `w` (words starting with `w`,
/// one letter longer, then two, ...) that occur at least three times in the
/// window, in order of length and then of first occurrence.
pub fn anchor_words(segment: &OrbitSegment, w: &Word, count: usize) -> Result<Vec<Word>> {
    let occ = crate::words::occurrences(segment, w)?;
    let letters = segment.letters();
    let mut out = Vec::new();
    let mut extra = 1;
    while out.len() < count && extra <= letters.len() {
        let mut seen: HashMap<&[crate::words::Letter], usize> = HashMap::new();
        let mut order = Vec::new();
        for &o in &occ {
            let Some(u) = letters.get(o..o + w.len() + extra) else { break };
            let hits = seen.entry(u).or_insert(0);
            if *hits == 0 {
                order.push(u);
            }
            *hits += 1;
        }
        if order.is_empty() {
            break;
        }
        for u in order {
            if seen[u] >= 3 && out.len() < count {
                out.push(Word::from_slice_unchecked(segment.alphabet(), u));
            }
        }
        extra += 1;
    }
    Ok(out)
}

/// Some `g` with `h2 = g h1 g^-1`, or `None` when the subgroups are not conjugate.
pub fn conjugacy_check(h1: &SubgroupEstimate, h2: &SubgroupEstimate) -> Result<Option<Permutation>> {
    if h1.degree != h2.degree {
        return Err(Error::DegreeMismatch(h1.degree, h2.degree));
    }
    Ok(find_conjugator(h1.degree, &h1.elements, &h2.elements))
}

/// Reoccurrence of one group element in the cumulative cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementGap {
    pub element: Permutation,
    pub visits: usize,
    /// Largest gap between consecutive visits, in derived-sequence steps.
    pub max_gap_steps: Option<usize>,
    /// The same gap measured in σ-shifts.
    pub max_gap_shifts: Option<usize>,
}

/// Result of [`extension_gap_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapScan {
    pub word_len: usize,
    pub elements: Vec<ElementGap>,
    /// Elements of the generated subgroup never seen twice.
    pub unobserved: Vec<Permutation>,
    /// `max_s (σ-gap of s) / |w|`.
    pub ratio: Rational,
}

impl GapScan {
    pub fn all_observed(&self) -> bool {
        self.unobserved.is_empty()
    }
}

impl fmt::Display for GapScan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            let show = |g: Option<usize>| g.map_or_else(|| String::from("-"), |g| g.to_string());
            writeln!(
                f,
                "{}: visits {}, max gap {} steps / {} shifts",
                e.element,
                e.visits,
                show(e.max_gap_steps),
                show(e.max_gap_shifts)
            )?;
        }
        for u in &self.unobserved {
            writeln!(f, "{u}: unobserved")?;
        }
        writeln!(f, "max shift gap / |w| = {}", self.ratio)
    }
}

impl ExtensionTrace {
    pub fn gap_scan(&self) -> GapScan {
        let group = self.generated_group();
        let mut last: HashMap<&Permutation, usize> = HashMap::new();
        let mut stats: BTreeMap<&Permutation, (usize, Option<usize>, Option<usize>)> =
            group.iter().map(|g| (g, (0, None, None))).collect();
        for (k, s) in self.cumulative.iter().enumerate() {
            let entry = stats.get_mut(s).expect("cumulative lies in the generated group");
            entry.0 += 1;
            if let Some(prev) = last.insert(s, k) {
                let steps = k - prev;
                let shifts = self.occurrences[k] - self.occurrences[prev];
                entry.1 = entry.1.max(Some(steps));
                entry.2 = entry.2.max(Some(shifts));
            }
        }
        let mut elements = Vec::new();
        let mut unobserved = Vec::new();
        let mut worst = 0;
        for (g, (visits, steps, shifts)) in stats {
            if shifts.is_none() {
                unobserved.push(g.clone());
            }
            worst = worst.max(shifts.unwrap_or(0));
            elements.push(ElementGap {
                element: g.clone(),
                visits,
                max_gap_steps: steps,
                max_gap_shifts: shifts,
            });
        }
        GapScan {
            word_len: self.word.len(),
            elements,
            unobserved,
            ratio: Rational::new(worst as u64, self.word.len() as u64),
        }
    }
}

/// Maximal reoccurrence gap of every element of the generated subgroup.
pub fn extension_gap_scan(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    w: &Word,
    mode: EntryMode,
) -> Result<GapScan> {
    Ok(extension_trace(segment, jump, w, mode)?.gap_scan())
}
