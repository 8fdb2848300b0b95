//! Generators for substitution and Sturmian shifts, plus factor complexity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{factor_count, Alphabet, Letter, OrbitSegment, Word};

/// A substitution `symbol -> image` on a finite alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    /// `images[i]` is the image of letter `i`.
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidSpec(format!(
                "{} images for {} symbols",
                images.len(),
                alphabet.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "empty image for `{}`",
                    alphabet.symbol(i as Letter)
                )));
            }
            if img.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::InvalidSpec("image uses unknown letter".into()));
            }
        }
        let sub = Substitution { alphabet, images };
        if sub.default_seed().is_none() {
            return Err(Error::InvalidSpec("no self-prolongable symbol".into()));
        }
        Ok(sub)
    }

    /// Fibonacci substitution `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        Self::new(Alphabet::binary(), vec![vec![0, 1], vec![0]]).expect("static substitution")
    }

    /// Thue–Morse substitution `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Self::new(Alphabet::binary(), vec![vec![0, 1], vec![1, 0]]).expect("static substitution")
    }

    /// Parses the rule-file format: one `symbol -> image` per line, `#` comments.
    /// Symbols are ordered by first appearance on the left-hand sides.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules: Vec<(usize, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: lineno + 1,
                msg: "expected `symbol -> image`".into(),
            })?;
            rules.push((lineno + 1, lhs.trim().to_string(), rhs.trim().to_string()));
        }
        if rules.is_empty() {
            return Err(Error::Parse { line: 0, msg: "no rules".into() });
        }
        let alphabet = Alphabet::new(rules.iter().map(|(_, l, _)| l.clone())).map_err(|e| {
            Error::Parse { line: 0, msg: e.to_string() }
        })?;
        let images = rules
            .iter()
            .map(|(line, _, rhs)| {
                let rhs = rhs.split_whitespace().collect::<Vec<_>>().join("");
                alphabet
                    .parse_letters(&rhs)
                    .map_err(|e| Error::Parse { line: *line, msg: e.to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    /// First symbol whose image begins with itself and has length at least two.
    pub fn default_seed(&self) -> Option<Letter> {
        (0..self.alphabet.len() as Letter).find(|&a| self.is_self_prolongable(a))
    }

    pub fn is_self_prolongable(&self, a: Letter) -> bool {
        let img = self.image(a);
        img.len() >= 2 && img[0] == a
    }

    pub fn apply(&self, letters: &[Letter]) -> Vec<Letter> {
        letters.iter().flat_map(|&l| self.image(l).iter().copied()).collect()
    }

    /// `m[i][j]` = number of occurrences of letter `i` in the image of `j`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.alphabet.len();
        let mut m = vec![vec![0u64; n]; n];
        for (j, img) in self.images.iter().enumerate() {
            for &i in img {
                m[i as usize][j] += 1;
            }
        }
        m
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", self.alphabet.symbol(i as Letter), self.alphabet.render(img))?;
        }
        Ok(())
    }
}

/// First `length` letters of the fixed point `lim sub^k(seed)`.
pub fn fixed_point_prefix(sub: &Substitution, seed: Letter, length: usize) -> Result<OrbitSegment> {
    if seed as usize >= sub.alphabet().len() {
        return Err(Error::UnknownSymbol(format!("#{seed}")));
    }
    if length == 0 {
        return Err(Error::EmptyWord);
    }
    if !sub.is_self_prolongable(seed) {
        return Err(Error::NotSelfProlongable(sub.alphabet().symbol(seed).to_string()));
    }
    let mut current = vec![seed];
    while current.len() < length {
        // sub(prefix) is a prefix of sub(fixed point), so truncating is safe.
        let mut next = sub.apply(&current);
        next.truncate(length);
        current = next;
    }
    current.truncate(length);
    Ok(OrbitSegment::from_word(Word::new(sub.alphabet().clone(), current)?))
}

/// Result of [`primitivity_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Smallest power of the incidence matrix that is entrywise positive.
    pub witness_power: Option<usize>,
}

/// Searches powers of the incidence pattern up to the Wielandt bound `(d-1)^2 + 1`.
pub fn primitivity_check(sub: &Substitution) -> Primitivity {
    let d = sub.alphabet().len();
    let base: Vec<Vec<bool>> = sub
        .incidence_matrix()
        .iter()
        .map(|row| row.iter().map(|&v| v > 0).collect())
        .collect();
    let bound = (d - 1) * (d - 1) + 1;
    let mut power = base.clone();
    for k in 1..=bound {
        if power.iter().all(|row| row.iter().all(|&b| b)) {
            return Primitivity { primitive: true, witness_power: Some(k) };
        }
        power = bool_mul(&power, &base);
    }
    Primitivity { primitive: false, witness_power: None }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

/// Rotation given by a truncated continued fraction `[0; a1, a2, ...]` and an
/// intercept in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianSpec {
    partial_quotients: Vec<u64>,
    intercept: BigRational,
}

impl SturmianSpec {
    pub fn new(partial_quotients: Vec<u64>, intercept: BigRational) -> Result<Self> {
        if partial_quotients.is_empty() {
            return Err(Error::InvalidSpec("need at least one partial quotient".into()));
        }
        if partial_quotients.contains(&0) {
            return Err(Error::InvalidSpec("partial quotients must be positive".into()));
        }
        if intercept < BigRational::zero() || intercept >= BigRational::one() {
            return Err(Error::InvalidSpec("intercept must lie in [0, 1)".into()));
        }
        Ok(SturmianSpec { partial_quotients, intercept })
    }

    /// Parses `a1,a2,...[@p/q]`, optionally prefixed by `sturmian:`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix("sturmian:").unwrap_or(text);
        let (quotients, intercept) = match text.split_once('@') {
            Some((q, b)) => (q, Some(b)),
            None => (text, None),
        };
        let bad = |what: &str| Error::InvalidSpec(format!("bad {what} in `{text}`"));
        let partial_quotients = quotients
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad("partial quotient")))
            .collect::<Result<Vec<_>>>()?;
        let intercept = match intercept {
            None => BigRational::zero(),
            Some(b) => {
                let (num, den) = b.split_once('/').unwrap_or((b, "1"));
                let num: BigInt = num.trim().parse().map_err(|_| bad("intercept"))?;
                let den: BigInt = den.trim().parse().map_err(|_| bad("intercept"))?;
                if den.is_zero() {
                    return Err(bad("intercept"));
                }
                BigRational::new(num, den)
            }
        };
        Self::new(partial_quotients, intercept)
    }

    pub fn partial_quotients(&self) -> &[u64] {
        &self.partial_quotients
    }

    pub fn intercept(&self) -> &BigRational {
        &self.intercept
    }

    /// The convergent `[0; a1, ..., ak]` as an exact rational.
    pub fn rotation(&self) -> BigRational {
        let mut value = BigRational::zero();
        for &a in self.partial_quotients.iter().rev() {
            value = (BigRational::from_integer(BigInt::from(a)) + value).recip();
        }
        value
    }
}

/// `s_n = floor((n+1)a + b) - floor(n a + b)` for `n = 0..length`, exact.
pub fn mechanical_prefix(spec: &SturmianSpec, length: usize) -> Result<OrbitSegment> {
    if length == 0 {
        return Err(Error::EmptyWord);
    }
    let alpha = spec.rotation();
    let (p, q) = (alpha.numer().clone(), alpha.denom().clone());
    // Work with integers: floor((n a + b)) = floor((n p + b q) / q).
    let beta_q = spec.intercept() * BigRational::from_integer(q.clone());
    let floor_at = |n: usize| -> BigInt {
        let x = BigRational::from_integer(&p * BigInt::from(n)) + &beta_q;
        x.numer().div_floor(&(x.denom() * &q))
    };
    let mut prev = floor_at(0);
    let mut letters = Vec::with_capacity(length);
    for n in 0..length {
        let next = floor_at(n + 1);
        letters.push(if next > prev { 1 } else { 0 });
        prev = next;
    }
    Ok(OrbitSegment::from_word(Word::new(Alphabet::binary(), letters)?))
}

/// Factor counts `n -> p(n)` for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    counts: Vec<usize>,
}

impl ComplexityProfile {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        ComplexityProfile { counts }
    }

    /// Count at length `n` (1-based); `None` outside the profile.
    pub fn get(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }

    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_monotone(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Exact factor counts, certified by agreement between the first half of the
/// window and the whole window.
pub fn complexity(segment: &OrbitSegment, n_max: usize) -> Result<ComplexityProfile> {
    let letters = segment.letters();
    let half = &letters[..letters.len() / 2];
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > half.len() {
            return Err(Error::WindowTooShort { what: "factor set", n });
        }
        let full = factor_count(letters, n);
        if factor_count(half, n) != full {
            return Err(Error::WindowTooShort { what: "factor set", n });
        }
        counts.push(full);
    }
    Ok(ComplexityProfile { counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix_matches_display() {
        let s = fixed_point_prefix(&Substitution::fibonacci(), 0, 16).unwrap();
        assert_eq!(s.to_string(), "0100101001001010");
    }

    #[test]
    fn length_one_prefix_is_seed() {
        let s = fixed_point_prefix(&Substitution::thue_morse(), 0, 1).unwrap();
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn thue_morse_prefix() {
        let s = fixed_point_prefix(&Substitution::thue_morse(), 0, 8).unwrap();
        assert_eq!(s.to_string(), "01101001");
    }

    #[test]
    fn non_prolongable_seed_is_rejected() {
        let err = fixed_point_prefix(&Substitution::fibonacci(), 1, 5).unwrap_err();
        assert_eq!(err, Error::NotSelfProlongable("1".into()));
    }

    #[test]
    fn parse_rule_file() {
        let sub = Substitution::parse("# fib\n0 -> 01\n1 -> 0  # comment\n").unwrap();
        assert_eq!(sub, Substitution::fibonacci());
        assert_eq!(sub.default_seed(), Some(0));
        assert!(Substitution::parse("0 => 1").is_err());
        assert!(Substitution::parse("0 -> 02\n1 -> 0").is_err());
        assert!(Substitution::parse("0 -> 1\n1 -> 0").is_err());
    }

    #[test]
    fn parse_multichar_rules() {
        let sub = Substitution::parse("a1 -> a1,b2\nb2 -> a1").unwrap();
        assert_eq!(sub.image(0), &[0, 1]);
        let s = fixed_point_prefix(&sub, 0, 4).unwrap();
        assert_eq!(s.to_string(), "a1,b2,a1,a1");
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(
            primitivity_check(&Substitution::fibonacci()),
            Primitivity { primitive: true, witness_power: Some(2) }
        );
        assert_eq!(
            primitivity_check(&Substitution::thue_morse()),
            Primitivity { primitive: true, witness_power: Some(1) }
        );
        let reducible = Substitution::parse("0 -> 01\n1 -> 1").unwrap();
        assert_eq!(
            primitivity_check(&reducible),
            Primitivity { primitive: false, witness_power: None }
        );
    }

    #[test]
    fn constant_sequence_complexity_is_one() {
        let a = Alphabet::from_chars("a").unwrap();
        let s = OrbitSegment::parse(&a, &"a".repeat(100)).unwrap();
        let p = complexity(&s, 10).unwrap();
        assert!(p.counts().iter().all(|&c| c == 1));
    }

    #[test]
    fn short_window_names_offending_length() {
        let s = fixed_point_prefix(&Substitution::fibonacci(), 0, 40).unwrap();
        match complexity(&s, 30) {
            Err(Error::WindowTooShort { n, .. }) => assert!(n <= 20),
            other => panic!("expected window-too-short, got {other:?}"),
        }
    }

    #[test]
    fn rotation_of_convergents() {
        let half = SturmianSpec::parse("2").unwrap();
        assert_eq!(half.rotation(), BigRational::new(1.into(), 2.into()));
        let golden = SturmianSpec::parse("sturmian:1,1,1,1,1,1,1,1").unwrap();
        assert_eq!(golden.rotation(), BigRational::new(21.into(), 34.into()));
        assert!(SturmianSpec::parse("1,0").is_err());
        assert!(SturmianSpec::parse("1,2@3/2").is_err());
        assert!(SturmianSpec::parse("").is_err());
    }

    #[test]
    fn mechanical_half_rotation_alternates() {
        let s = mechanical_prefix(&SturmianSpec::parse("2").unwrap(), 4).unwrap();
        assert_eq!(s.to_string(), "0101");
        let one = mechanical_prefix(&SturmianSpec::parse("3,2@1/5").unwrap(), 1).unwrap();
        assert_eq!(one.len(), 1);
    }
}
