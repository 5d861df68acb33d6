//! Infinite words over the positive integers.
//!
//! Three families are built in: the arithmetic word `1 2 | 1 2 3 | 1 2 3 4 | ...`,
//! the power words `kappa(q)` indexed by the lowest non-zero base-`q` digit, and
//! the Fibonacci-type word `eta` indexed by the smallest Zeckendorf summand.
//! Explicit periodic words are supported for counterexamples.
//!
//! Every family has two independent realisations: a closed-form letter lookup
//! ([`InfiniteWordSpec::letter_at`]) and a streaming generator ([`prefix`])
//! that follows the concatenation or substitution definition. Positions are
//! 1-based everywhere.

mod intervals;
mod nested;
mod zeckendorf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};

pub use intervals::find_increasing_intervals;
pub use nested::{is_nested, NestednessReport, NestednessViolation};
pub use zeckendorf::{fibonacci, zeckendorf, ZeckendorfRep};

pub type Letter = u32;

/// A named infinite word family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InfiniteWordSpec {
    /// `nu = 12 123 1234 ...`
    Arithmetic,
    /// `kappa(q)`, `q >= 2`.
    Power(u32),
    /// `eta`
    FibonacciType,
    /// `pattern` repeated forever.
    ExplicitPeriodic(Vec<Letter>),
}

impl InfiniteWordSpec {
    pub fn power(q: u32) -> Result<Self> {
        let spec = InfiniteWordSpec::Power(q);
        spec.validate()?;
        Ok(spec)
    }

    pub fn periodic(pattern: Vec<Letter>) -> Result<Self> {
        let spec = InfiniteWordSpec::ExplicitPeriodic(pattern);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InfiniteWordSpec::Power(q) if *q < 2 => {
                Err(Error::invalid(format!("power word needs q >= 2, got {q}")))
            }
            InfiniteWordSpec::ExplicitPeriodic(p) if p.is_empty() => {
                Err(Error::invalid("periodic pattern must be non-empty"))
            }
            InfiniteWordSpec::ExplicitPeriodic(p) if p.contains(&0) => {
                Err(Error::invalid("periodic letters must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Closed-form letter at 1-based position `n`.
    pub fn letter_at(&self, n: usize) -> Result<Letter> {
        self.validate()?;
        match self {
            InfiniteWordSpec::Arithmetic => nu_letter(n),
            InfiniteWordSpec::Power(q) => kappa_letter(*q, n),
            InfiniteWordSpec::FibonacciType => eta_letter(n),
            InfiniteWordSpec::ExplicitPeriodic(p) => {
                if n == 0 {
                    return Err(Error::InvalidPosition(n));
                }
                Ok(p[(n - 1) % p.len()])
            }
        }
    }
}

impl fmt::Display for InfiniteWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteWordSpec::Arithmetic => write!(f, "nu"),
            InfiniteWordSpec::Power(q) => write!(f, "kappa:{q}"),
            InfiniteWordSpec::FibonacciType => write!(f, "eta"),
            InfiniteWordSpec::ExplicitPeriodic(p) => {
                let parts: Vec<String> = p.iter().map(|l| l.to_string()).collect();
                write!(f, "periodic:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for InfiniteWordSpec {
    type Err = Error;

    /// `nu | kappa:q | eta | periodic:a,b,c`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let parse_num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in family {s:?}")))
        };
        let spec = match (head, tail) {
            ("nu", None) => InfiniteWordSpec::Arithmetic,
            ("eta", None) => InfiniteWordSpec::FibonacciType,
            ("kappa", Some(q)) => InfiniteWordSpec::Power(parse_num(q)?),
            ("periodic", Some(p)) => InfiniteWordSpec::ExplicitPeriodic(
                p.split(',').map(parse_num).collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Parse(format!("unknown word family {s:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for InfiniteWordSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InfiniteWordSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where a finite word was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordOrigin {
    pub family: InfiniteWordSpec,
    pub start: usize,
}

/// A finite word; when `origin` is set, the letters are the family's letters
/// at `start ..= start + len - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteWord {
    pub letters: Vec<Letter>,
    pub origin: Option<WordOrigin>,
}

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord {
            letters,
            origin: None,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Absolute position of the 1-based index `i` into this word.
    pub fn absolute_position(&self, i: usize) -> usize {
        match &self.origin {
            Some(o) => o.start + i - 1,
            None => i,
        }
    }

    /// True if `needle` occurs as a factor.
    pub fn contains_factor(&self, needle: &[Letter]) -> bool {
        needle.is_empty() || self.letters.windows(needle.len()).any(|w| w == needle)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| match t.parse::<Letter>() {
                Ok(l) if l > 0 => Ok(l),
                _ => Err(Error::Parse(format!("bad letter {t:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(FiniteWord::new(letters))
    }
}

/// Letter of the arithmetic word at position `n`.
///
/// Block `b >= 2` is `1 2 ... b` and starts at position `b(b-1)/2`.
pub fn nu_letter(n: usize) -> Result<Letter> {
    if n == 0 {
        return Err(Error::InvalidPosition(n));
    }
    let block_start = |b: u128| b * (b - 1) / 2;
    let n128 = n as u128;
    // float estimate, then settle on the largest b with block_start(b) <= n
    let mut b = ((1.0 + (1.0 + 8.0 * n as f64).sqrt()) / 2.0) as u128;
    b = b.max(2);
    while block_start(b) > n128 {
        b -= 1;
    }
    while block_start(b + 1) <= n128 {
        b += 1;
    }
    Ok((n128 - block_start(b) + 1) as Letter)
}

/// Letter of `kappa(q)` at position `n`: with `n = j q^k + m q^(k+1)` and
/// `1 <= j <= q-1`, the letter is `k(q-1) + j`.
pub fn kappa_letter(q: u32, n: usize) -> Result<Letter> {
    if q < 2 {
        return Err(Error::invalid(format!("power word needs q >= 2, got {q}")));
    }
    if n == 0 {
        return Err(Error::InvalidPosition(n));
    }
    let q = q as usize;
    let (mut rest, mut k) = (n, 0usize);
    while rest % q == 0 {
        rest /= q;
        k += 1;
    }
    let j = rest % q;
    Ok((k * (q - 1) + j) as Letter)
}

/// Letter of `eta` at position `n`: one less than the index of the smallest
/// Zeckendorf summand of `n`.
pub fn eta_letter(n: usize) -> Result<Letter> {
    if n == 0 {
        return Err(Error::InvalidPosition(n));
    }
    Ok(zeckendorf(n as u64)?.lowest_index() - 1)
}

/// First `len` letters, produced by the family's generating process rather
/// than the closed form.
pub fn prefix(spec: &InfiniteWordSpec, len: usize, caps: &Caps) -> Result<FiniteWord> {
    spec.validate()?;
    if len > caps.word_len {
        return Err(Error::limit("word prefix length", len, caps.word_len));
    }
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    match spec {
        InfiniteWordSpec::Arithmetic => {
            let mut b = 2;
            while letters.len() < len {
                letters.extend((1..=b).take(len - letters.len()));
                b += 1;
            }
        }
        InfiniteWordSpec::Power(q) => {
            letters = kappa_substitution(*q, None, len);
        }
        InfiniteWordSpec::FibonacciType => {
            letters = eta_substitution(None, len);
        }
        InfiniteWordSpec::ExplicitPeriodic(p) => {
            letters.extend(p.iter().copied().cycle().take(len));
        }
    }
    letters.truncate(len);
    Ok(FiniteWord {
        letters,
        origin: Some(WordOrigin {
            family: spec.clone(),
            start: 1,
        }),
    })
}

/// Letters at `start ..= end` via the generator.
pub fn factor(spec: &InfiniteWordSpec, start: usize, end: usize, caps: &Caps) -> Result<FiniteWord> {
    if start == 0 {
        return Err(Error::InvalidPosition(0));
    }
    if end < start {
        return Ok(FiniteWord {
            letters: Vec::new(),
            origin: Some(WordOrigin {
                family: spec.clone(),
                start,
            }),
        });
    }
    let mut word = prefix(spec, end, caps)?;
    word.letters.drain(..start - 1);
    word.origin = Some(WordOrigin {
        family: spec.clone(),
        start,
    });
    Ok(word)
}

/// `kappa(q)^n` by substitution: `kappa^1 = 1 2 ... (q-1)` and
/// `kappa^n = kappa^(n-1) L_1 kappa^(n-1) L_2 ... L_(q-1) kappa^(n-1)` with
/// `L_i = (n-1)(q-1) + i`.
pub fn kappa_iterate(q: u32, n: u32, caps: &Caps) -> Result<FiniteWord> {
    if q < 2 || n == 0 {
        return Err(Error::invalid(format!("kappa iterate needs q >= 2 and n >= 1 (q = {q}, n = {n})")));
    }
    let len = (q as usize)
        .checked_pow(n)
        .map(|p| p - 1)
        .filter(|&l| l <= caps.word_len)
        .ok_or_else(|| Error::limit("kappa iterate length", usize::MAX, caps.word_len))?;
    let letters = kappa_substitution(q, Some(n), len);
    debug_assert_eq!(letters.len(), len);
    Ok(FiniteWord::new(letters))
}

/// `eta^n` by substitution: `eta^1 = 1`, `eta^2 = 1 2`,
/// `eta^n = eta^(n-1) n eta^(n-2)`.
pub fn eta_iterate(n: u32, caps: &Caps) -> Result<FiniteWord> {
    if n == 0 {
        return Err(Error::invalid("eta iterate needs n >= 1"));
    }
    let len = fibonacci(n + 2)
        .map(|f| f as usize - 1)
        .filter(|&l| l <= caps.word_len)
        .ok_or_else(|| Error::limit("eta iterate length", usize::MAX, caps.word_len))?;
    let letters = eta_substitution(Some(n), len);
    debug_assert_eq!(letters.len(), len);
    Ok(FiniteWord::new(letters))
}

// Runs the substitution until either `level` iterates are done or at least
// `min_len` letters exist.
fn kappa_substitution(q: u32, level: Option<u32>, min_len: usize) -> Vec<Letter> {
    let mut word: Vec<Letter> = (1..q).collect();
    let mut n = 1;
    loop {
        let done = match level {
            Some(l) => n >= l,
            None => word.len() >= min_len,
        };
        if done {
            return word;
        }
        let base = word.clone();
        for j in 1..q {
            if level.is_none() && word.len() >= min_len {
                break;
            }
            word.push(n * (q - 1) + j);
            word.extend_from_slice(&base);
        }
        n += 1;
    }
}

fn eta_substitution(level: Option<u32>, min_len: usize) -> Vec<Letter> {
    let mut older: Vec<Letter> = vec![1];
    if level == Some(1) {
        return older;
    }
    let mut newer: Vec<Letter> = vec![1, 2];
    let mut n = 2;
    loop {
        let done = match level {
            Some(l) => n >= l,
            None => newer.len() >= min_len,
        };
        if done {
            return newer;
        }
        n += 1;
        let mut next = Vec::with_capacity(newer.len() + older.len() + 1);
        next.extend_from_slice(&newer);
        next.push(n);
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut newer, next);
    }
}
