//! Avoidance predicates for squares and fractional powers.
//!
//! A spec `(l, p)` forbids squares `yy` with `|y| >= l` together with every
//! factor whose exponent crosses the power threshold `p`. The checker scans
//! incrementally: extending a word by one letter only examines factors that
//! end at the new last position, so a whole word is checked in O(n^2).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::Word;

/// Exponent threshold: either unbounded (forbids nothing) or a rational bound.
///
/// `inclusive = true` forbids exponents `e >= bound` ("avoids p powers");
/// `inclusive = false` forbids only `e > bound` ("avoids p+ powers").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentThreshold {
    Unbounded,
    Bounded { bound: Rational, inclusive: bool },
}

impl ExponentThreshold {
    pub fn unbounded() -> Self {
        ExponentThreshold::Unbounded
    }

    /// Forbids every factor of exponent `>= bound`. Requires `bound > 1`.
    pub fn inclusive(bound: Rational) -> Result<Self> {
        Self::bounded(bound, true)
    }

    /// Forbids every factor of exponent `> bound`. Requires `bound > 1`.
    pub fn exclusive(bound: Rational) -> Result<Self> {
        Self::bounded(bound, false)
    }

    pub fn bounded(bound: Rational, inclusive: bool) -> Result<Self> {
        if bound <= Rational::integer(1) {
            return Err(Error::ThresholdTooLow(bound.to_string()));
        }
        Ok(ExponentThreshold::Bounded { bound, inclusive })
    }

    /// Does a factor of the given length and minimal period cross the threshold?
    pub fn forbids(&self, length: usize, period: usize) -> bool {
        match *self {
            ExponentThreshold::Unbounded => false,
            ExponentThreshold::Bounded { bound, inclusive } => {
                // length/period vs bound by exact cross multiplication.
                let lhs = length as u128 * bound.denominator() as u128;
                let rhs = bound.numerator() as u128 * period as u128;
                lhs > rhs || (inclusive && lhs == rhs)
            }
        }
    }
}

impl fmt::Display for ExponentThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentThreshold::Unbounded => write!(f, "inf"),
            ExponentThreshold::Bounded { bound, inclusive } => {
                write!(f, "{bound}{}", if *inclusive { "" } else { "+" })
            }
        }
    }
}

impl FromStr for ExponentThreshold {
    type Err = Error;

    /// Grammar: `inf` | `N` | `N+` | `P/Q` | `P/Q+`; the `+` marks the
    /// exclusive ("p-plus") threshold.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "inf" {
            return Ok(ExponentThreshold::Unbounded);
        }
        let (body, inclusive) = match text.strip_suffix('+') {
            Some(body) => (body, false),
            None => (text, true),
        };
        let bound: Rational = body.parse()?;
        ExponentThreshold::bounded(bound, inclusive)
    }
}

/// Simultaneous constraint: squares `yy` with `|y| >= min_square_period` plus
/// the power threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AvoidanceSpec {
    min_square_period: usize,
    power: ExponentThreshold,
}

impl AvoidanceSpec {
    pub fn new(min_square_period: usize, power: ExponentThreshold) -> Result<Self> {
        if min_square_period == 0 {
            return Err(Error::InvalidMinSquarePeriod);
        }
        Ok(AvoidanceSpec {
            min_square_period,
            power,
        })
    }

    pub fn min_square_period(&self) -> usize {
        self.min_square_period
    }

    pub fn power(&self) -> ExponentThreshold {
        self.power
    }
}

impl fmt::Display for AvoidanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.min_square_period, self.power)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    LargeSquare,
    ForbiddenPower,
}

/// Witness of a failed avoidance check. The factor `w[start .. start+length)`
/// has the reported period, and `exponent = length/period` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub start: usize,
    pub length: usize,
    pub period: usize,
    pub exponent: Rational,
}

/// Incremental checker over a word known to avoid the spec.
///
/// Cloning is cheap enough for branching searches; `advance`/`retract` give a
/// zero-allocation path for depth-first traversal.
#[derive(Debug, Clone)]
pub struct CheckerState {
    word: Vec<u8>,
    alphabet_size: u8,
    spec: AvoidanceSpec,
    // Scratch for the border array of the reversed word, reused per extension.
    rev: Vec<u8>,
    border: Vec<usize>,
}

impl CheckerState {
    /// Empty binary word under the given spec.
    pub fn new(spec: AvoidanceSpec) -> Self {
        CheckerState {
            word: Vec::new(),
            alphabet_size: 2,
            spec,
            rev: Vec::new(),
            border: Vec::new(),
        }
    }

    pub fn with_alphabet(spec: AvoidanceSpec, alphabet_size: u8) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > crate::word::MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(alphabet_size));
        }
        Ok(CheckerState {
            word: Vec::new(),
            alphabet_size,
            spec,
            rev: Vec::new(),
            border: Vec::new(),
        })
    }

    /// Seeds the checker with a word, refusing words that already violate.
    pub fn for_word(word: &Word, spec: AvoidanceSpec) -> Result<Self> {
        let mut state = CheckerState::with_alphabet(spec, word.alphabet_size())?;
        for &s in word.symbols() {
            if let Some(v) = state.advance(s)? {
                return Err(Error::SeedViolation(v));
            }
        }
        Ok(state)
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn spec(&self) -> AvoidanceSpec {
        self.spec
    }

    /// Appends a symbol and reports the first violation ending at the new
    /// position, if any. The symbol stays appended either way; callers that
    /// backtrack call `retract`.
    pub fn advance(&mut self, symbol: u8) -> Result<Option<Violation>> {
        if symbol >= self.alphabet_size {
            return Err(Error::InvalidSymbol {
                symbol,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(self.advance_unchecked(symbol))
    }

    pub(crate) fn advance_unchecked(&mut self, symbol: u8) -> Option<Violation> {
        self.word.push(symbol);
        self.scan_last()
    }

    /// Removes the last symbol, undoing one `advance`.
    pub fn retract(&mut self) -> Option<u8> {
        self.word.pop()
    }

    /// Functional form of `advance`: returns the extended state along with
    /// the violation, if any.
    pub fn extended(&self, symbol: u8) -> Result<(CheckerState, Option<Violation>)> {
        let mut next = self.clone();
        let violation = next.advance(symbol)?;
        Ok((next, violation))
    }

    /// Checks all factors ending at the last position, shortest first.
    /// At equal length a large square is reported before a forbidden power,
    /// which fixes the tie-break order of the whole-word scan as well.
    fn scan_last(&mut self) -> Option<Violation> {
        let n = self.word.len();
        let l = self.spec.min_square_period;
        let (num, den, inclusive, bounded) = match self.spec.power {
            ExponentThreshold::Unbounded => (0, 0, false, false),
            ExponentThreshold::Bounded { bound, inclusive } => {
                (bound.numerator(), bound.denominator(), inclusive, true)
            }
        };

        // Border array of the reversed word: border[m-1] is the longest
        // proper border of the length-m suffix, so that suffix has minimal
        // period m - border[m-1].
        if bounded {
            self.rev.clear();
            self.rev.extend(self.word.iter().rev());
            self.border.clear();
            self.border.resize(n, 0);
            let mut k = 0usize;
            for i in 1..n {
                while k > 0 && self.rev[i] != self.rev[k] {
                    k = self.border[k - 1];
                }
                if self.rev[i] == self.rev[k] {
                    k += 1;
                }
                self.border[i] = k;
            }
        }

        for m in 1..=n {
            if m % 2 == 0 {
                let q = m / 2;
                if q >= l && self.word[n - m..n - q] == self.word[n - q..n] {
                    return Some(Violation {
                        kind: ViolationKind::LargeSquare,
                        start: n - m,
                        length: m,
                        period: q,
                        exponent: Rational::integer(2),
                    });
                }
            }
            if bounded {
                let period = m - self.border[m - 1];
                let lhs = m as u128 * den as u128;
                let rhs = num as u128 * period as u128;
                if lhs > rhs || (inclusive && lhs == rhs) {
                    return Some(Violation {
                        kind: ViolationKind::ForbiddenPower,
                        start: n - m,
                        length: m,
                        period,
                        exponent: Rational::new(m as u64, period as u64)
                            .expect("period is positive"),
                    });
                }
            }
        }
        None
    }
}

/// Smallest period of a nonempty word: the least `p >= 1` with
/// `w[i] = w[i+p]` for all valid `i`.
pub fn minimal_period(word: &Word) -> Result<usize> {
    let w = word.symbols();
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    // KMP failure function; minimal period = n - longest border.
    let mut border = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = border[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k;
    }
    Ok(n - border[n - 1])
}

/// Largest exponent `e` such that the word is an `e`-power:
/// exactly `|w| / minimal_period(w)`.
pub fn max_exponent(word: &Word) -> Result<Rational> {
    let p = minimal_period(word)?;
    Rational::new(word.len() as u64, p as u64)
}

/// Scans the whole word and returns the violation with the smallest end
/// index, ties broken by smallest length, then squares before powers.
/// The empty word vacuously avoids every spec.
pub fn find_violation(word: &Word, spec: &AvoidanceSpec) -> Option<Violation> {
    let mut state = CheckerState {
        word: Vec::with_capacity(word.len()),
        alphabet_size: word.alphabet_size(),
        spec: *spec,
        rev: Vec::new(),
        border: Vec::new(),
    };
    for &s in word.symbols() {
        if let Some(v) = state.advance_unchecked(s) {
            return Some(v);
        }
    }
    None
}
