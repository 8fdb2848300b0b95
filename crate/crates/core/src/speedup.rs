//! Jump functions and the speedup `S = σ^p` on finite windows.
//!
//! A jump function is constant on centered `(2K+1)`-cylinders. On a window,
//! index `i` is *interior* when it has at least `K` letters of margin on both
//! sides; only interior indices have a jump value, and `i` lands on `i + p(i)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::shiftspaces::{complexity, ComplexityProfile};
use crate::unionfind::UnionFind;
use crate::words::{factor_count, Alphabet, Letter, OrbitSegment, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rule {
    Constant(usize),
    Table { alphabet: Alphabet, values: HashMap<Box<[Letter]>, usize> },
}

/// Jump function `p`, constant on centered `(2K+1)`-words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpFunction {
    radius: usize,
    rule: Rule,
}

impl JumpFunction {
    /// The degenerate jump `p ≡ k`.
    pub fn constant(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroJump(String::from("constant")));
        }
        Ok(JumpFunction { radius: 0, rule: Rule::Constant(k) })
    }

    /// A table jump; every key must be a centered word of length `2*radius + 1`.
    pub fn table<I>(alphabet: Alphabet, radius: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Letter>, usize)>,
    {
        let width = 2 * radius + 1;
        let mut values = HashMap::new();
        for (word, value) in entries {
            let text = alphabet.render(&word);
            if word.len() != width {
                return Err(Error::InvalidSpec(format!(
                    "jump word `{text}` has length {}, expected {width}",
                    word.len()
                )));
            }
            if word.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::UnknownSymbol(text));
            }
            if value == 0 {
                return Err(Error::ZeroJump(text));
            }
            if values.insert(word.into_boxed_slice(), value).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate jump word `{text}`")));
            }
        }
        Ok(JumpFunction { radius, rule: Rule::Table { alphabet, values } })
    }

    /// `p(x)` = first return time of `x` to the cylinder `[x_0]`, tabulated
    /// from the centered words seen in `segment`.
    pub fn first_return(segment: &OrbitSegment, radius: usize) -> Result<Self> {
        let width = 2 * radius + 1;
        if segment.len() < width {
            return Err(Error::LengthOutOfRange { n: width, len: segment.len() });
        }
        let mut entries: HashMap<Vec<Letter>, usize> = HashMap::new();
        for win in segment.letters().windows(width) {
            if entries.contains_key(win) {
                continue;
            }
            let centre = win[radius];
            let ret = (1..=radius).find(|&k| win[radius + k] == centre).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "no return to `{}` within radius {radius} in `{}`",
                    segment.alphabet().symbol(centre),
                    segment.alphabet().render(win)
                ))
            })?;
            entries.insert(win.to_vec(), ret);
        }
        Self::table(segment.alphabet().clone(), radius, entries)
    }

    /// Parses the jump file format: `constant <k>` or `K <radius>` followed by
    /// `<word> <value>` lines. `#` starts a comment.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, msg: "empty jump file".into() })?;
        let parse_int = |line: usize, s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse { line, msg: format!("expected an integer, got `{s}`") })
        };
        let mut head = header.split_whitespace();
        match (head.next(), head.next(), head.next()) {
            (Some("constant"), Some(k), None) => {
                let k = parse_int(first_no, k)?;
                if let Some((line, _)) = lines.next() {
                    return Err(Error::Parse { line, msg: "constant jump takes no table".into() });
                }
                Self::constant(k)
            }
            (Some("K"), Some(r), None) => {
                let radius = parse_int(first_no, r)?;
                let mut entries = Vec::new();
                for (line, l) in lines {
                    let (word, value) = l.rsplit_once(char::is_whitespace).ok_or_else(|| {
                        Error::Parse { line, msg: "expected `<word> <value>`".into() }
                    })?;
                    let letters = alphabet
                        .parse_letters(word)
                        .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
                    entries.push((letters, parse_int(line, value.trim())?));
                }
                Self::table(alphabet.clone(), radius, entries)
            }
            _ => Err(Error::Parse {
                line: first_no,
                msg: "expected `constant <k>` or `K <radius>`".into(),
            }),
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn constant_value(&self) -> Option<usize> {
        match self.rule {
            Rule::Constant(k) => Some(k),
            Rule::Table { .. } => None,
        }
    }

    /// Largest value in the rule (over the whole table, not just observed words).
    pub fn max_value(&self) -> usize {
        match &self.rule {
            Rule::Constant(k) => *k,
            Rule::Table { values, .. } => values.values().copied().max().unwrap_or(1),
        }
    }

    /// Sorted `(word, value)` entries; empty for constant jumps.
    pub fn entries(&self) -> Vec<(Vec<Letter>, usize)> {
        match &self.rule {
            Rule::Constant(_) => Vec::new(),
            Rule::Table { values, .. } => {
                let mut out: Vec<_> = values.iter().map(|(k, &v)| (k.to_vec(), v)).collect();
                out.sort();
                out
            }
        }
    }

    pub(crate) fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match &self.rule {
            Rule::Table { alphabet: a, .. } if a != alphabet => Err(Error::AlphabetMismatch),
            _ => Ok(()),
        }
    }

    /// Value on a centered word of length `2K+1`.
    pub fn value(&self, centered: &[Letter]) -> Result<usize> {
        match &self.rule {
            Rule::Constant(k) => Ok(*k),
            Rule::Table { alphabet, values } => values
                .get(centered)
                .copied()
                .ok_or_else(|| Error::MissingJump(alphabet.render(centered))),
        }
    }

    /// Value at index `i` of `letters`, or `None` without enough margin.
    pub(crate) fn value_at(&self, letters: &[Letter], i: usize) -> Result<Option<usize>> {
        let k = self.radius;
        if i < k || i + k >= letters.len() {
            return Ok(None);
        }
        self.value(&letters[i - k..=i + k]).map(Some)
    }

    /// Smallest `N <= K` such that the value only depends on the centered
    /// `(2N+1)`-subword, over the given centered `(2K+1)`-words.
    pub fn effective_radius<'a, I>(&self, words: I) -> Result<usize>
    where
        I: IntoIterator<Item = &'a [Letter]>,
    {
        if self.constant_value().is_some() {
            return Ok(0);
        }
        let words: Vec<&[Letter]> = words.into_iter().collect();
        let k = self.radius;
        'radius: for n in 0..k {
            let mut seen: HashMap<&[Letter], usize> = HashMap::new();
            for w in &words {
                let v = self.value(w)?;
                let core = &w[k - n..=k + n];
                if *seen.entry(core).or_insert(v) != v {
                    continue 'radius;
                }
            }
            return Ok(n);
        }
        Ok(k)
    }

    /// Maximum jump over the centered words that occur in `letters`.
    pub(crate) fn p_max_on(&self, letters: &[Letter]) -> Result<usize> {
        if let Some(k) = self.constant_value() {
            return Ok(k);
        }
        let width = 2 * self.radius + 1;
        let mut best = 0;
        for w in letters.windows(width) {
            best = best.max(self.value(w)?);
        }
        Ok(best.max(1))
    }
}

impl fmt::Display for JumpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Constant(k) => writeln!(f, "constant {k}"),
            Rule::Table { alphabet, .. } => {
                writeln!(f, "K {}", self.radius)?;
                for (word, value) in self.entries() {
                    writeln!(f, "{} {value}", alphabet.render(&word))?;
                }
                Ok(())
            }
        }
    }
}

/// Where an interior index lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Landing {
    Inside(usize),
    Exits,
}

/// Jump values for every interior index of a window.
#[derive(Debug, Clone)]
pub struct LandingMap {
    radius: usize,
    jumps: Vec<Option<usize>>,
}

impl LandingMap {
    pub fn new(segment: &OrbitSegment, jump: &JumpFunction) -> Result<Self> {
        jump.check_alphabet(segment.alphabet())?;
        Self::from_letters(segment.letters(), jump)
    }

    pub(crate) fn from_letters(letters: &[Letter], jump: &JumpFunction) -> Result<Self> {
        let jumps = (0..letters.len())
            .map(|i| jump.value_at(letters, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(LandingMap { radius: jump.radius(), jumps })
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn jump(&self, i: usize) -> Option<usize> {
        self.jumps.get(i).copied().flatten()
    }

    pub fn landing(&self, i: usize) -> Option<Landing> {
        let p = self.jump(i)?;
        Some(if i + p < self.len() { Landing::Inside(i + p) } else { Landing::Exits })
    }

    pub fn interior(&self) -> Range<usize> {
        let k = self.radius;
        k.min(self.len())..self.len().saturating_sub(k)
    }

    /// Landing sequence `start, start + p(start), ...` while inside the window.
    pub fn orbit_from(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut cur = start;
        while let Some(Landing::Inside(next)) = self.landing(cur) {
            out.push(next);
            cur = next;
        }
        out
    }

    /// First collision `(a, b, target)` of the interior landing map, and the
    /// first index past the `p_max` boundary zone that no interior index hits.
    fn bijectivity(&self, p_max: usize) -> (Option<(usize, usize, usize)>, Option<usize>) {
        let len = self.len();
        let mut hit: Vec<Option<usize>> = vec![None; len];
        let mut collision = None;
        for i in self.interior() {
            if let Some(Landing::Inside(t)) = self.landing(i) {
                match hit[t] {
                    Some(a) if collision.is_none() => collision = Some((a, i, t)),
                    Some(_) => {}
                    None => hit[t] = Some(i),
                }
            }
        }
        let k = self.radius;
        let unreached = (k + p_max..len.saturating_sub(k)).find(|&j| hit[j].is_none());
        (collision, unreached)
    }
}

/// Injectivity / surjectivity of the landing map on one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCheck {
    pub len: usize,
    pub collision: Option<(usize, usize, usize)>,
    pub unreached: Option<usize>,
}

impl WindowCheck {
    pub fn injective(&self) -> bool {
        self.collision.is_none()
    }

    pub fn surjective(&self) -> bool {
        self.unreached.is_none()
    }
}

/// Result of [`validate_jump`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpValidation {
    /// First centered word of the window without a jump value, if any.
    pub missing: Option<String>,
    pub p_max: usize,
    /// Checks on the first half of the window and on the whole window.
    pub windows: Vec<WindowCheck>,
}

impl JumpValidation {
    pub fn total(&self) -> bool {
        self.missing.is_none()
    }

    pub fn injective(&self) -> bool {
        self.total() && self.windows.iter().all(WindowCheck::injective)
    }

    pub fn surjective(&self) -> bool {
        self.total() && self.windows.iter().all(WindowCheck::surjective)
    }

    /// Accepted as a homeomorphic speedup on this window (finite-window certificate only).
    pub fn is_homeomorphic(&self) -> bool {
        self.injective() && self.surjective()
    }

    pub fn collision(&self) -> Option<(usize, usize, usize)> {
        self.windows.iter().rev().find_map(|w| w.collision)
    }
}

impl fmt::Display for JumpValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "yes" } else { "NO" };
        match &self.missing {
            None => writeln!(f, "total: yes")?,
            Some(w) => writeln!(f, "total: NO (no value for `{w}`)")?,
        }
        writeln!(f, "p_max: {}", self.p_max)?;
        for w in &self.windows {
            write!(f, "window {}: injective {}", w.len, verdict(w.injective()))?;
            if let Some((a, b, t)) = w.collision {
                write!(f, " (indices {a} and {b} both land on {t})")?;
            }
            write!(f, ", surjective {}", verdict(w.surjective()))?;
            if let Some(j) = w.unreached {
                write!(f, " (index {j} has no predecessor)")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "homeomorphic speedup (window certificate): {}",
            verdict(self.is_homeomorphic())
        )
    }
}

fn check_centered_words_stable(letters: &[Letter], radius: usize) -> Result<()> {
    let width = 2 * radius + 1;
    let half = &letters[..letters.len() / 2];
    if half.len() < width || factor_count(half, width) != factor_count(letters, width) {
        return Err(Error::WindowTooShort { what: "centered jump words", n: width });
    }
    Ok(())
}

/// Totality, `p_max`, injectivity and surjectivity on windows of length L/2 and L.
pub fn validate_jump(jump: &JumpFunction, segment: &OrbitSegment) -> Result<JumpValidation> {
    jump.check_alphabet(segment.alphabet())?;
    let letters = segment.letters();
    check_centered_words_stable(letters, jump.radius())?;
    let width = 2 * jump.radius() + 1;
    let missing = letters
        .windows(width)
        .find(|w| jump.value(w).is_err())
        .map(|w| segment.alphabet().render(w));
    if missing.is_some() {
        return Ok(JumpValidation { missing, p_max: 0, windows: Vec::new() });
    }
    let p_max = jump.p_max_on(letters)?;
    let windows = [letters.len() / 2, letters.len()]
        .into_iter()
        .map(|len| {
            let map = LandingMap::from_letters(&letters[..len], jump)?;
            let (collision, unreached) = map.bijectivity(p_max);
            Ok(WindowCheck { len, collision, unreached })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpValidation { missing, p_max, windows })
}

pub(crate) fn require_bijective(jump: &JumpFunction, segment: &OrbitSegment) -> Result<usize> {
    let report = validate_jump(jump, segment)?;
    if let Some(w) = report.missing {
        return Err(Error::MissingJump(w));
    }
    if !report.is_homeomorphic() {
        let detail = match (report.collision(), report.windows.iter().find_map(|w| w.unreached)) {
            (Some((a, b, t)), _) => format!("indices {a} and {b} both land on {t}"),
            (None, Some(j)) => format!("index {j} has no predecessor"),
            (None, None) => String::from("landing map is not a bijection"),
        };
        return Err(Error::NotBijective(detail));
    }
    Ok(report.p_max)
}

/// Landing indices `i_0 = start, i_{m+1} = i_m + p(i_m)` while inside the window.
pub fn s_orbit(segment: &OrbitSegment, jump: &JumpFunction, start: usize) -> Result<Vec<usize>> {
    jump.check_alphabet(segment.alphabet())?;
    let k = jump.radius();
    if start < k || start + k >= segment.len() {
        return Err(Error::InsufficientMargin { index: start, radius: k });
    }
    Ok(LandingMap::new(segment, jump)?.orbit_from(start))
}

/// Partition of a window into S-orbit classes, labelled `0..c` in order of
/// first appearance inside the central half of the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitColoring {
    c: usize,
    p_max: usize,
    central: Range<usize>,
    labels: Vec<Option<usize>>,
}

impl OrbitColoring {
    /// Orbit number.
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    /// Canonical window whose classes define the labels.
    pub fn central(&self) -> Range<usize> {
        self.central.clone()
    }

    /// Class label of index `i`; `None` for fragments that never reach the
    /// central window (only possible near the window edges).
    pub fn label(&self, i: usize) -> Option<usize> {
        self.labels.get(i).copied().flatten()
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }
}

fn color_window(letters: &[Letter], jump: &JumpFunction, p_max: usize) -> Result<OrbitColoring> {
    let map = LandingMap::from_letters(letters, jump)?;
    let len = letters.len();
    let mut uf = UnionFind::new(len);
    for i in map.interior() {
        if let Some(Landing::Inside(t)) = map.landing(i) {
            uf.union(i, t);
        }
    }
    let central = len / 4..(3 * len / 4).max(len / 4 + 1).min(len);
    let mut root_label: HashMap<usize, usize> = HashMap::new();
    for i in central.clone() {
        let r = uf.find(i);
        let next = root_label.len();
        root_label.entry(r).or_insert(next);
    }
    let labels = (0..len).map(|i| root_label.get(&uf.find(i)).copied()).collect();
    Ok(OrbitColoring { c: root_label.len(), p_max, central, labels })
}

/// Orbit coloring of the whole window; the class count must agree with the
/// first half of the window.
pub fn orbit_coloring(segment: &OrbitSegment, jump: &JumpFunction) -> Result<OrbitColoring> {
    let p_max = require_bijective(jump, segment)?;
    let letters = segment.letters();
    if letters.len() < 8 * (p_max + 2 * jump.radius()) {
        return Err(Error::WindowTooShort { what: "orbit number", n: letters.len() });
    }
    let full = color_window(letters, jump, p_max)?;
    let half = color_window(&letters[..letters.len() / 2], jump, p_max)?;
    if half.c != full.c {
        return Err(Error::WindowTooShort { what: "orbit number", n: letters.len() / 2 });
    }
    debug_assert!(full.c <= p_max);
    Ok(full)
}

/// Number of S-orbits the σ-orbit of the window splits into.
pub fn orbit_number(segment: &OrbitSegment, jump: &JumpFunction) -> Result<usize> {
    orbit_coloring(segment, jump).map(|c| c.c())
}

/// The σ-word spanned by `n` consecutive S-steps, with `K` letters of margin
/// on both sides, and the relative landing offsets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SPattern {
    spanned: Word,
    offsets: Vec<usize>,
}

impl SPattern {
    pub fn spanned(&self) -> &Word {
        &self.spanned
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Number of S-steps.
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Rebuilds a pattern from its spanned word, reading offsets from `jump`.
    pub fn from_spanned(spanned: Word, jump: &JumpFunction, n: usize) -> Result<Self> {
        let letters = spanned.letters();
        let k = jump.radius();
        let mut offsets = Vec::with_capacity(n);
        let mut pos = k;
        for _ in 0..n {
            offsets.push(pos);
            let p = jump
                .value_at(letters, pos)?
                .ok_or(Error::InsufficientMargin { index: pos, radius: k })?;
            pos += p;
        }
        if pos + k != letters.len() {
            return Err(Error::InvalidSpec(format!(
                "`{spanned}` does not span exactly {n} S-steps"
            )));
        }
        Ok(SPattern { spanned, offsets })
    }
}

impl fmt::Display for SPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offs: Vec<String> = self.offsets.iter().map(|o| o.to_string()).collect();
        write!(f, "{}@{}", self.spanned, offs.join("."))
    }
}

/// Span `[lo, hi)` of the pattern of `n` steps starting at `start`, if it fits.
pub(crate) fn pattern_span(map: &LandingMap, start: usize, n: usize) -> Option<(usize, usize)> {
    let k = map.radius();
    if start < k {
        return None;
    }
    let mut cur = start;
    for _ in 0..n {
        cur += map.jump(cur)?;
    }
    (cur + k <= map.len()).then_some((start - k, cur + k))
}

/// The S-pattern of `n` steps starting at landing index `start`.
pub fn spattern(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    start: usize,
    n: usize,
) -> Result<SPattern> {
    let map = LandingMap::new(segment, jump)?;
    let (lo, hi) = pattern_span(&map, start, n)
        .ok_or(Error::InsufficientMargin { index: start, radius: jump.radius() })?;
    let offsets = map.orbit_from(start).into_iter().take(n).map(|i| i - lo).collect();
    Ok(SPattern { spanned: segment.subword(lo, hi - lo)?, offsets })
}

/// Fails unless S-pattern counts agree on the first half and the whole window
/// for every `n <= n_max`.
pub(crate) fn check_pattern_stability(letters: &[Letter], jump: &JumpFunction, n_max: usize) -> Result<()> {
    let full_map = LandingMap::from_letters(letters, jump)?;
    let half = &letters[..letters.len() / 2];
    let half_map = LandingMap::from_letters(half, jump)?;
    for n in 1..=n_max {
        if pattern_keys(half, &half_map, n).len() != pattern_keys(letters, &full_map, n).len() {
            return Err(Error::WindowTooShort { what: "S-pattern set", n });
        }
    }
    Ok(())
}

pub(crate) fn pattern_keys<'a>(letters: &'a [Letter], map: &LandingMap, n: usize) -> HashSet<&'a [Letter]> {
    (0..letters.len())
        .filter_map(|i| pattern_span(map, i, n))
        .map(|(lo, hi)| &letters[lo..hi])
        .collect()
}

/// Every S-pattern of `n` steps that fits in the window, from any start.
pub fn spatterns(segment: &OrbitSegment, jump: &JumpFunction, n: usize) -> Result<BTreeSet<SPattern>> {
    if n == 0 {
        return Err(Error::LengthOutOfRange { n, len: segment.len() });
    }
    let map = LandingMap::new(segment, jump)?;
    pattern_keys(segment.letters(), &map, n)
        .into_iter()
        .map(|l| SPattern::from_spanned(Word::from_slice_unchecked(segment.alphabet(), l), jump, n))
        .collect()
}

/// One row of the word-complexity bound `p_S(n) <= K' p_σ(p_max n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: usize,
    pub speedup_count: usize,
    pub base_count: usize,
    pub bound: u128,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.speedup_count as u128 <= self.bound
    }
}

/// Result of [`speedup_complexity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedupComplexity {
    /// S-pattern counts.
    pub profile: ComplexityProfile,
    /// σ-word counts up to `p_max * n_max`.
    pub base: ComplexityProfile,
    /// Smallest radius on which the jump is constant (`N`).
    pub radius: usize,
    pub p_max: usize,
    /// `K' = |A|^(2N) * p_max`.
    pub k_prime: u128,
    pub checks: Vec<BoundCheck>,
}

impl SpeedupComplexity {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(BoundCheck::holds)
    }
}

/// Counts distinct S-patterns for `n = 1..=n_max` and checks them against
/// `|A|^(2N) p_max · p_σ(p_max n)`.
pub fn speedup_complexity(
    segment: &OrbitSegment,
    jump: &JumpFunction,
    n_max: usize,
) -> Result<SpeedupComplexity> {
    let p_max = require_bijective(jump, segment)?;
    let letters = segment.letters();
    let width = 2 * jump.radius() + 1;
    let radius = jump.effective_radius(letters.windows(width))?;
    let base = complexity(segment, p_max * n_max)?;
    let full_map = LandingMap::from_letters(letters, jump)?;
    let half = &letters[..letters.len() / 2];
    let half_map = LandingMap::from_letters(half, jump)?;
    let k_prime = (segment.alphabet().len() as u128).pow(2 * radius as u32) * p_max as u128;
    let mut counts = Vec::with_capacity(n_max);
    let mut checks = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let count = pattern_keys(letters, &full_map, n).len();
        if pattern_keys(half, &half_map, n).len() != count {
            return Err(Error::WindowTooShort { what: "S-pattern set", n });
        }
        let base_count = base.get(p_max * n).expect("profile covers p_max * n_max");
        counts.push(count);
        checks.push(BoundCheck { n, speedup_count: count, base_count, bound: k_prime * base_count as u128 });
    }
    Ok(SpeedupComplexity {
        profile: ComplexityProfile::from_counts(counts),
        base,
        radius,
        p_max,
        k_prime,
        checks,
    })
}
