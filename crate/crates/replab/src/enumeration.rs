//! Exact enumeration of avoiding words and growth-rate bounds.
//!
//! Upper bounds come from a de-Bruijn-style automaton over a finite set of
//! forbidden factors: states are the avoiding words of length L-1, and the
//! dominant eigenvalue of the transition matrix bounds the growth of the full
//! avoidance language from above. Lower bounds come from morphism widths.

use std::collections::{HashMap, HashSet};

use crate::avoidance::{find_violation, AvoidanceSpec, CheckerState};
use crate::error::{Error, Result};
use crate::tree;
use crate::word::Word;

/// counts[n] = number of binary words of length n in the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Exact counts of avoiding words by exhaustive extension.
pub fn count_avoiding(spec: AvoidanceSpec, n_max: usize) -> CountTable {
    count_avoiding_with_threads(spec, n_max, 1)
}

pub fn count_avoiding_with_threads(spec: AvoidanceSpec, n_max: usize, threads: usize) -> CountTable {
    let stats = tree::scan_tree(spec, n_max, threads);
    CountTable {
        counts: stats.per_depth,
    }
}

/// A set of minimal violators: each member violates the spec while every
/// proper factor avoids it. No member is a factor of another, and the set is
/// closed under the 0↔1 complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    words: Vec<Word>,
    max_len: usize,
}

impl ForbiddenSet {
    /// Builds a set from explicit binary words, validating the invariants.
    pub fn new(words: Vec<Word>) -> Result<Self> {
        let mut words = words;
        words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        words.dedup();
        let set: HashSet<&Word> = words.iter().collect();
        for w in &words {
            if w.is_empty() {
                return Err(Error::InvalidForbiddenSet("empty member".into()));
            }
            if w.alphabet_size() != 2 {
                return Err(Error::InvalidForbiddenSet(format!(
                    "member {w} is not binary"
                )));
            }
            if !set.contains(&w.complemented()) {
                return Err(Error::InvalidForbiddenSet(format!(
                    "member {w} has no complement in the set"
                )));
            }
        }
        for a in &words {
            for b in &words {
                if a != b && a.is_factor_of(b) {
                    return Err(Error::InvalidForbiddenSet(format!(
                        "member {a} is a factor of member {b}"
                    )));
                }
            }
        }
        let max_len = words.iter().map(Word::len).max().unwrap_or(0);
        Ok(ForbiddenSet { words, max_len })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// All minimal violators of the spec up to the given length: words that
/// violate while both maximal proper factors (and hence all proper factors)
/// avoid.
pub fn minimal_forbidden(spec: AvoidanceSpec, max_len: usize) -> Result<ForbiddenSet> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let mut found: Vec<Word> = Vec::new();
    let mut checker = CheckerState::new(spec);
    // DFS over avoiding words u of length < max_len; each violating child u·a
    // is minimal iff its suffix u[1..]·a also avoids.
    let mut next: Vec<u8> = vec![0];
    loop {
        let Some(slot) = next.last_mut() else { break };
        let symbol = *slot;
        if symbol >= 2 {
            next.pop();
            if !next.is_empty() {
                checker.retract();
            }
            continue;
        }
        *slot += 1;
        let violates = checker.advance_unchecked(symbol).is_some();
        let word = checker.word();
        if violates {
            let suffix = Word::binary(word[1..].to_vec()).expect("binary symbols");
            if find_violation(&suffix, &spec).is_none() {
                found.push(Word::binary(word.to_vec()).expect("binary symbols"));
            }
            checker.retract();
        } else if word.len() == max_len {
            checker.retract();
        } else {
            next.push(0);
        }
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    ForbiddenSet::new(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthKind {
    UpperAutomaton,
    LowerMorphism,
    RecurrenceRoot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub kind: GrowthKind,
    pub value: f64,
    pub certified_digits: u32,
    /// Automaton kinds only.
    pub state_count: Option<usize>,
}

/// Factor automaton for a finite forbidden set: states are the words of
/// length L-1 avoiding every member as a factor; the transition on letter a
/// exists iff appending a introduces no member.
struct FactorAutomaton {
    states: Vec<Vec<u8>>,
    transitions: Vec<[Option<usize>; 2]>,
}

impl FactorAutomaton {
    fn build(forbidden: &ForbiddenSet) -> Self {
        let member_set: HashSet<&[u8]> =
            forbidden.words().iter().map(|w| w.symbols()).collect();
        let mut member_lengths: Vec<usize> =
            forbidden.words().iter().map(Word::len).collect();
        member_lengths.sort_unstable();
        member_lengths.dedup();

        let ends_in_member = |w: &[u8]| -> bool {
            member_lengths
                .iter()
                .take_while(|&&m| m <= w.len())
                .any(|&m| member_set.contains(&w[w.len() - m..]))
        };

        let state_len = forbidden.max_len().saturating_sub(1);
        // Enumerate avoiding words of length L-1 by DFS.
        let mut states: Vec<Vec<u8>> = Vec::new();
        let mut current: Vec<u8> = Vec::new();
        fn enumerate(
            current: &mut Vec<u8>,
            state_len: usize,
            ends_in_member: &dyn Fn(&[u8]) -> bool,
            states: &mut Vec<Vec<u8>>,
        ) {
            if current.len() == state_len {
                states.push(current.clone());
                return;
            }
            for s in 0..2u8 {
                current.push(s);
                if !ends_in_member(current) {
                    enumerate(current, state_len, ends_in_member, states);
                }
                current.pop();
            }
        }
        enumerate(&mut current, state_len, &ends_in_member, &mut states);

        let index: HashMap<&[u8], usize> = states
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i))
            .collect();
        let transitions = states
            .iter()
            .map(|state| {
                let mut row = [None, None];
                for (a, slot) in row.iter_mut().enumerate() {
                    let mut extended = state.clone();
                    extended.push(a as u8);
                    if !ends_in_member(&extended) {
                        *slot = index.get(&extended[1..]).copied();
                        debug_assert!(slot.is_some(), "suffix of an avoiding word avoids");
                    }
                }
                row
            })
            .collect();
        FactorAutomaton {
            states,
            transitions,
        }
    }

    /// Indices of states that survive iterated removal of dead ends.
    fn live_states(&self) -> Vec<usize> {
        let n = self.states.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for i in 0..n {
                if !alive[i] {
                    continue;
                }
                let has_exit = self.transitions[i]
                    .iter()
                    .flatten()
                    .any(|&t| alive[t]);
                if !has_exit {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&i| alive[i]).collect()
    }
}

/// Dominant eigenvalue of the factor automaton's transition matrix, by power
/// iteration on the shifted matrix A + I (the shift removes periodicity
/// without moving the eigenvector). This upper-bounds the growth rate of any
/// language whose violators include the forbidden set.
pub fn growth_upper(forbidden: &ForbiddenSet) -> Result<GrowthEstimate> {
    if forbidden.is_empty() {
        return Err(Error::EmptyForbiddenSet);
    }
    let automaton = FactorAutomaton::build(forbidden);
    let state_count = automaton.states.len();
    let live = automaton.live_states();
    if live.is_empty() {
        return Ok(GrowthEstimate {
            kind: GrowthKind::UpperAutomaton,
            value: 0.0,
            certified_digits: 15,
            state_count: Some(state_count),
        });
    }
    let position: HashMap<usize, usize> =
        live.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let rows: Vec<Vec<usize>> = live
        .iter()
        .map(|&i| {
            automaton.transitions[i]
                .iter()
                .flatten()
                .filter_map(|t| position.get(t).copied())
                .collect()
        })
        .collect();

    let n = live.len();
    let mut v = vec![1.0f64; n];
    let mut w = vec![0.0f64; n];
    let mut rayleigh_prev = f64::INFINITY;
    let mut bracket = (0.0f64, f64::INFINITY);
    for _ in 0..200_000 {
        let mut dot_wv = 0.0;
        let mut dot_vv = 0.0;
        let mut ratio_min = f64::INFINITY;
        let mut ratio_max = 0.0f64;
        for i in 0..n {
            // (A + I) v
            let sum: f64 = v[i] + rows[i].iter().map(|&j| v[j]).sum::<f64>();
            w[i] = sum;
            dot_wv += sum * v[i];
            dot_vv += v[i] * v[i];
            let ratio = sum / v[i];
            ratio_min = ratio_min.min(ratio);
            ratio_max = ratio_max.max(ratio);
        }
        let rayleigh = dot_wv / dot_vv;
        bracket = (ratio_min - 1.0, ratio_max - 1.0);
        let scale = 1.0 / ratio_max;
        for i in 0..n {
            v[i] = w[i] * scale;
        }
        if (rayleigh - rayleigh_prev).abs() <= 1e-10 {
            rayleigh_prev = rayleigh;
            break;
        }
        rayleigh_prev = rayleigh;
    }
    let value = rayleigh_prev - 1.0;
    Ok(GrowthEstimate {
        kind: GrowthKind::UpperAutomaton,
        value,
        certified_digits: digits_from_width(bracket.1 - bracket.0),
        state_count: Some(state_count),
    })
}

fn digits_from_width(width: f64) -> u32 {
    if !(width > 0.0) {
        return 15;
    }
    let digits = -width.log10();
    digits.floor().clamp(0.0, 15.0) as u32
}

/// Lower bound `base^(1/width)` on the growth rate, from a width-uniform
/// morphism applied to a language growing like `base^n`.
pub fn growth_lower_from_morphism(width: usize, base: f64) -> Result<GrowthEstimate> {
    if width == 0 {
        return Err(Error::InvalidArgument("width must be at least 1".into()));
    }
    if !(base > 1.0) {
        return Err(Error::InvalidArgument("base must exceed 1".into()));
    }
    Ok(GrowthEstimate {
        kind: GrowthKind::LowerMorphism,
        value: base.powf(1.0 / width as f64),
        certified_digits: 12,
        state_count: None,
    })
}

/// Dominant root of `x^k = c_1 x^(k-1) + ... + c_k`, the characteristic
/// polynomial of the recurrence with the given coefficients, by bisection.
pub fn recurrence_dominant_root(coefficients: &[u64]) -> Result<GrowthEstimate> {
    if coefficients.is_empty() || coefficients.iter().all(|&c| c == 0) {
        return Err(Error::InvalidArgument(
            "recurrence needs a nonzero coefficient".into(),
        ));
    }
    let k = coefficients.len() as i32;
    let p = |x: f64| -> f64 {
        let mut value = x.powi(k);
        for (i, &c) in coefficients.iter().enumerate() {
            value -= c as f64 * x.powi(k - 1 - i as i32);
        }
        value
    };
    // For nonnegative coefficients p has a single root above the largest
    // coefficient sum bound; bracket and bisect.
    let mut lo = 0.0f64;
    let mut hi = 1.0 + coefficients.iter().sum::<u64>() as f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(GrowthEstimate {
        kind: GrowthKind::RecurrenceRoot,
        value: 0.5 * (lo + hi),
        certified_digits: 14,
        state_count: None,
    })
}

/// Exact counts of binary words avoiding only the finite forbidden set, via
/// integer matrix-vector iteration on the factor automaton (direct extension
/// below the automaton's state length).
pub fn automaton_counts(forbidden: &ForbiddenSet, n_max: usize) -> Result<CountTable> {
    let mut counts: Vec<u64> = Vec::with_capacity(n_max + 1);
    if forbidden.is_empty() {
        for n in 0..=n_max {
            if n >= 64 {
                return Err(Error::CountOverflow);
            }
            counts.push(1u64 << n);
        }
        return Ok(CountTable { counts });
    }

    let automaton = FactorAutomaton::build(forbidden);
    let state_len = forbidden.max_len() - 1;

    // Direct counts for lengths below the state length.
    if state_len > 0 {
        let member_set: HashSet<&[u8]> =
            forbidden.words().iter().map(|w| w.symbols()).collect();
        let mut member_lengths: Vec<usize> = forbidden.words().iter().map(Word::len).collect();
        member_lengths.sort_unstable();
        member_lengths.dedup();
        let ends_in_member = |w: &[u8]| -> bool {
            member_lengths
                .iter()
                .take_while(|&&m| m <= w.len())
                .any(|&m| member_set.contains(&w[w.len() - m..]))
        };
        let direct_cap = n_max.min(state_len - 1);
        let mut per_len = vec![0u64; direct_cap + 1];
        per_len[0] = 1;
        let mut current: Vec<u8> = Vec::new();
        fn count_direct(
            current: &mut Vec<u8>,
            cap: usize,
            ends_in_member: &dyn Fn(&[u8]) -> bool,
            per_len: &mut [u64],
        ) {
            if current.len() == cap {
                return;
            }
            for s in 0..2u8 {
                current.push(s);
                if !ends_in_member(current) {
                    per_len[current.len()] += 1;
                    count_direct(current, cap, ends_in_member, per_len);
                }
                current.pop();
            }
        }
        count_direct(&mut current, direct_cap, &ends_in_member, &mut per_len);
        counts.extend_from_slice(&per_len);
        if n_max < state_len {
            return Ok(CountTable { counts });
        }
    }

    // counts[state_len + k] = total number of k-step paths in the automaton.
    let mut paths: Vec<u64> = vec![1; automaton.states.len()];
    let total = |paths: &[u64]| -> Result<u64> {
        paths
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(p).ok_or(Error::CountOverflow))
    };
    counts.push(total(&paths)?);
    for _ in state_len + 1..=n_max {
        let next: Vec<u64> = automaton
            .transitions
            .iter()
            .map(|row| {
                row.iter()
                    .flatten()
                    .try_fold(0u64, |acc, &t| {
                        acc.checked_add(paths[t]).ok_or(Error::CountOverflow)
                    })
            })
            .collect::<Result<Vec<u64>>>()?;
        paths = next;
        counts.push(total(&paths)?);
    }
    Ok(CountTable { counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: usize, power: &str) -> AvoidanceSpec {
        AvoidanceSpec::new(l, power.parse().unwrap()).unwrap()
    }

    fn forbidden(words: &[&str]) -> ForbiddenSet {
        ForbiddenSet::new(
            words
                .iter()
                .map(|w| Word::parse(w, 2).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_count_rows() {
        // B_5 = 16 and C_4 = 10.
        assert_eq!(count_avoiding(spec(4, "5/2+"), 5).counts[5], 16);
        let c = count_avoiding(spec(7, "7/3+"), 4);
        assert_eq!(c.counts[4], 10);
        // Exactly the 6 words containing 000 or 111 are excluded at n = 4.
        assert_eq!(16 - c.counts[4], 6);
    }

    #[test]
    fn count_invariants() {
        let table = count_avoiding(spec(3, "3+"), 12);
        assert_eq!(table.counts[0], 1);
        for n in 1..=12 {
            assert_eq!(table.counts[n] % 2, 0, "counts must come in complement pairs");
            assert!(table.counts[n] <= 2 * table.counts[n - 1]);
        }
    }

    #[test]
    fn minimal_forbidden_contains_known_members() {
        let f4 = minimal_forbidden(spec(3, "3+"), 4).unwrap();
        let w = |t: &str| Word::parse(t, 2).unwrap();
        assert!(f4.words().contains(&w("0000")));
        assert!(f4.words().contains(&w("1111")));
        let f7 = minimal_forbidden(spec(3, "3+"), 7).unwrap();
        assert!(f7.words().contains(&w("0101010")));
        assert!(f7.words().contains(&w("1010101")));
    }

    #[test]
    fn minimal_forbidden_invariants() {
        let set = minimal_forbidden(spec(3, "3+"), 8).unwrap();
        for a in set.words() {
            assert!(set.words().contains(&a.complemented()));
            for b in set.words() {
                if a != b {
                    assert!(!a.is_factor_of(b), "{a} is a factor of {b}");
                }
            }
        }
    }

    #[test]
    fn forbidden_set_validation() {
        assert!(matches!(
            ForbiddenSet::new(vec![Word::parse("00", 2).unwrap()]),
            Err(Error::InvalidForbiddenSet(_))
        ));
        assert!(matches!(
            ForbiddenSet::new(vec![
                Word::parse("00", 2).unwrap(),
                Word::parse("11", 2).unwrap(),
                Word::parse("001", 2).unwrap(),
                Word::parse("110", 2).unwrap(),
            ]),
            Err(Error::InvalidForbiddenSet(_))
        ));
    }

    #[test]
    fn tribonacci_growth() {
        let estimate = growth_upper(&forbidden(&["0000", "1111"])).unwrap();
        assert!((estimate.value - 1.8392867552141612).abs() < 1e-6);
        assert!(estimate.value < 1.84);
        assert_eq!(estimate.state_count, Some(8));
        let root = recurrence_dominant_root(&[1, 1, 1]).unwrap();
        assert!((root.value - estimate.value).abs() < 1e-6);
    }

    #[test]
    fn everything_forbidden_gives_zero() {
        let estimate = growth_upper(&forbidden(&["0", "1"])).unwrap();
        assert_eq!(estimate.value, 0.0);
    }

    #[test]
    fn empty_set_rejected_for_growth() {
        let empty = ForbiddenSet::new(vec![]).unwrap();
        assert_eq!(growth_upper(&empty), Err(Error::EmptyForbiddenSet));
    }

    #[test]
    fn lower_bound_values() {
        let b = growth_lower_from_morphism(10, 1.109999).unwrap();
        assert!((b.value - 1.0104898).abs() < 1e-6);
        assert!(matches!(
            growth_lower_from_morphism(0, 1.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            growth_lower_from_morphism(10, 1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn automaton_counts_recurrence() {
        let table = automaton_counts(&forbidden(&["0000", "1111"]), 20).unwrap();
        assert_eq!(&table.counts[..4], &[1, 2, 4, 8]);
        for n in 4..=20 {
            assert_eq!(
                table.counts[n],
                table.counts[n - 1] + table.counts[n - 2] + table.counts[n - 3]
            );
        }
    }

    #[test]
    fn automaton_counts_empty_set() {
        let empty = ForbiddenSet::new(vec![]).unwrap();
        let table = automaton_counts(&empty, 10).unwrap();
        for n in 0..=10 {
            assert_eq!(table.counts[n], 1 << n);
        }
    }

    #[test]
    fn automaton_counts_dead_language() {
        let table = automaton_counts(&forbidden(&["0", "1"]), 5).unwrap();
        assert_eq!(table.counts, vec![1, 0, 0, 0, 0, 0]);
    }
}
