//! Brute-force oracles, independent of the library's scan kernels: periods by
//! direct candidate scan, squares by direct half-vs-half comparison over
//! every (start, period) pair, violations by the definition with the same
//! tie-break order (smallest end, then smallest length, squares first).

use replab::{AvoidanceSpec, ExponentThreshold, Rational, Violation, ViolationKind, Word};

pub fn brute_minimal_period(w: &[u8]) -> usize {
    let n = w.len();
    assert!(n > 0);
    (1..=n)
        .find(|&p| (0..n - p).all(|i| w[i] == w[i + p]))
        .expect("n is always a period")
}

pub fn brute_has_square(w: &[u8], min_period: usize) -> bool {
    let n = w.len();
    for q in min_period..=n / 2 {
        for s in 0..=n - 2 * q {
            if w[s..s + q] == w[s + q..s + 2 * q] {
                return true;
            }
        }
    }
    false
}

pub fn brute_find_violation(w: &[u8], spec: &AvoidanceSpec) -> Option<Violation> {
    let l = spec.min_square_period();
    let (num, den, inclusive, bounded) = match spec.power() {
        ExponentThreshold::Unbounded => (0, 0, false, false),
        ExponentThreshold::Bounded { bound, inclusive } => {
            (bound.numerator(), bound.denominator(), inclusive, true)
        }
    };
    let n = w.len();
    for end in 1..=n {
        for m in 1..=end {
            let s = end - m;
            let u = &w[s..end];
            if m % 2 == 0 {
                let q = m / 2;
                if q >= l && u[..q] == u[q..] {
                    return Some(Violation {
                        kind: ViolationKind::LargeSquare,
                        start: s,
                        length: m,
                        period: q,
                        exponent: Rational::integer(2),
                    });
                }
            }
            if bounded {
                let p = brute_minimal_period(u);
                let lhs = m as u128 * den as u128;
                let rhs = num as u128 * p as u128;
                if lhs > rhs || (inclusive && lhs == rhs) {
                    return Some(Violation {
                        kind: ViolationKind::ForbiddenPower,
                        start: s,
                        length: m,
                        period: p,
                        exponent: Rational::new(m as u64, p as u64).expect("positive period"),
                    });
                }
            }
        }
    }
    None
}

pub fn spec(l: usize, power: &str) -> AvoidanceSpec {
    AvoidanceSpec::new(l, power.parse().expect("threshold parses")).expect("spec is valid")
}

pub fn bin(text: &str) -> Word {
    Word::parse(text, 2).expect("binary digits")
}

/// Binary word from the low bits of `bits`, least significant first.
pub fn word_from_bits(bits: u32, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((bits >> i) & 1) as u8).collect()
}

/// Small deterministic generator for pseudorandom word sampling.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) as u32
    }

    pub fn word(&mut self, len: usize, alphabet: u8) -> Vec<u8> {
        (0..len)
            .map(|_| (self.next_u32() % alphabet as u32) as u8)
            .collect()
    }
}
