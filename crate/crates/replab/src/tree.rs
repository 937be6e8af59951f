//! Exhaustive search of the tree of binary words avoiding a spec.
//!
//! The root is the empty word; a node is internal iff its label avoids the
//! spec, and an internal node's children append 0 then 1. No infinite
//! avoiding word exists iff the tree is finite, and the tree's shape encodes
//! exact statistics about the finite avoiding words.

use crate::avoidance::{AvoidanceSpec, CheckerState};
use crate::error::{Error, Result};
use crate::word::Word;

/// Exact statistics of a finite avoidance tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    /// Number of leaves; one more than the number of internal nodes.
    pub leaves: u64,
    /// Height: smallest h such that no word of length >= h avoids the spec.
    pub height: usize,
    /// Number of internal nodes at depth height-1 (the maximal words).
    pub maximal_count: u64,
    /// The maximal words that start with 0, sorted; the rest are their
    /// 0↔1 complements.
    pub maximal_words_starting_with_zero: Vec<Word>,
    pub internal_count: u64,
    /// Internal node counts by depth, 0..height.
    pub per_depth_counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Finite(TreeReport),
    /// The depth cutoff was hit while some branch was still alive.
    Inconclusive {
        depth_reached: usize,
        frontier_size: u64,
    },
}

#[derive(Debug, Default, Clone)]
pub(crate) struct ScanStats {
    /// Internal (avoiding) node counts per depth, indices 0..=cap.
    pub per_depth: Vec<u64>,
    pub leaves: u64,
    /// Internal nodes at the cutoff depth, left unexpanded.
    pub frontier: u64,
}

impl ScanStats {
    fn new(cap: usize) -> Self {
        ScanStats {
            per_depth: vec![0; cap + 1],
            leaves: 0,
            frontier: 0,
        }
    }

    fn merge(&mut self, other: &ScanStats) {
        for (d, &c) in other.per_depth.iter().enumerate() {
            self.per_depth[d] += c;
        }
        self.leaves += other.leaves;
        self.frontier += other.frontier;
    }
}

/// Iterative depth-first scan of the subtree rooted at the checker's word.
/// The root itself must already be counted by the caller.
fn scan_subtree(checker: &mut CheckerState, cap: usize, stats: &mut ScanStats) {
    if checker.len() >= cap {
        stats.frontier += 1;
        return;
    }
    // next[i] = next child symbol to try for the node at depth base + i.
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
        if checker.advance_unchecked(symbol).is_some() {
            stats.leaves += 1;
            checker.retract();
            continue;
        }
        let depth = checker.len();
        stats.per_depth[depth] += 1;
        if depth == cap {
            stats.frontier += 1;
            checker.retract();
        } else {
            next.push(0);
        }
    }
}

/// Scans the whole avoidance tree down to `cap`. With `threads > 1` the
/// subtrees below a shallow frontier are processed in parallel; the merged
/// statistics are identical to the sequential ones.
pub(crate) fn scan_tree(spec: AvoidanceSpec, cap: usize, threads: usize) -> ScanStats {
    let mut stats = ScanStats::new(cap);
    stats.per_depth[0] = 1; // the empty word avoids every valid spec
    if cap == 0 {
        stats.frontier = 1;
        return stats;
    }

    let split_depth = 6usize;
    if threads <= 1 || cap <= split_depth {
        let mut checker = CheckerState::new(spec);
        scan_subtree(&mut checker, cap, &mut stats);
        return stats;
    }

    // Shallow pass: count depths 1..=split_depth and gather the live frontier.
    let mut seeds: Vec<Vec<u8>> = Vec::new();
    let mut checker = CheckerState::new(spec);
    collect_frontier(&mut checker, split_depth, &mut stats, &mut seeds);

    let chunks: Vec<Vec<Vec<u8>>> = split_round_robin(seeds, threads);
    let partials: Vec<ScanStats> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut local = ScanStats::new(cap);
                    for seed in chunk {
                        let mut checker = CheckerState::new(spec);
                        for &s in &seed {
                            let violation = checker.advance_unchecked(s);
                            debug_assert!(violation.is_none());
                        }
                        scan_subtree(&mut checker, cap, &mut local);
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    for partial in &partials {
        stats.merge(partial);
    }
    stats
}

/// Depth-limited scan that also returns the internal words at the limit.
fn collect_frontier(
    checker: &mut CheckerState,
    limit: usize,
    stats: &mut ScanStats,
    out: &mut Vec<Vec<u8>>,
) {
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
        if checker.advance_unchecked(symbol).is_some() {
            stats.leaves += 1;
            checker.retract();
            continue;
        }
        let depth = checker.len();
        stats.per_depth[depth] += 1;
        if depth == limit {
            out.push(checker.word().to_vec());
            checker.retract();
        } else {
            next.push(0);
        }
    }
}

fn split_round_robin<T>(items: Vec<T>, parts: usize) -> Vec<Vec<T>> {
    let parts = parts.max(1);
    let mut chunks: Vec<Vec<T>> = (0..parts).map(|_| Vec::new()).collect();
    for (i, item) in items.into_iter().enumerate() {
        chunks[i % parts].push(item);
    }
    chunks
}

/// All avoiding words of exactly the given length, in lexicographic order.
pub(crate) fn avoiding_words_of_length(spec: AvoidanceSpec, length: usize) -> Vec<Word> {
    if length == 0 {
        return vec![Word::empty(2).expect("binary alphabet is valid")];
    }
    let mut checker = CheckerState::new(spec);
    let mut words = Vec::new();
    collect_frontier(&mut checker, length, &mut ScanStats::new(length), &mut words);
    let mut out: Vec<Word> = words
        .into_iter()
        .map(|symbols| Word::binary(symbols).expect("search emits binary symbols"))
        .collect();
    out.sort();
    out
}

/// Complete search of the avoidance tree, reported exactly when every branch
/// dies at depth <= max_depth.
pub fn explore(spec: AvoidanceSpec, max_depth: usize) -> Result<SearchOutcome> {
    explore_with_threads(spec, max_depth, 1)
}

pub fn explore_with_threads(
    spec: AvoidanceSpec,
    max_depth: usize,
    threads: usize,
) -> Result<SearchOutcome> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument(
            "max_depth must be at least 1".into(),
        ));
    }
    let stats = scan_tree(spec, max_depth, threads);
    if stats.frontier > 0 {
        return Ok(SearchOutcome::Inconclusive {
            depth_reached: max_depth,
            frontier_size: stats.frontier,
        });
    }
    let deepest = stats
        .per_depth
        .iter()
        .rposition(|&c| c > 0)
        .expect("the root is always internal");
    let height = deepest + 1;
    let per_depth_counts: Vec<u64> = stats.per_depth[..height].to_vec();
    let internal_count: u64 = per_depth_counts.iter().sum();
    let maximal_count = per_depth_counts[height - 1];
    let maximal_words_starting_with_zero: Vec<Word> = avoiding_words_of_length(spec, height - 1)
        .into_iter()
        .filter(|w| w.symbols().first() == Some(&0))
        .collect();
    debug_assert_eq!(stats.leaves, internal_count + 1);
    Ok(SearchOutcome::Finite(TreeReport {
        leaves: stats.leaves,
        height,
        maximal_count,
        maximal_words_starting_with_zero,
        internal_count,
        per_depth_counts,
    }))
}

/// All maximal avoiding words (both complement classes), sorted
/// lexicographically. Errors if the search is inconclusive.
pub fn longest_avoiding_words(spec: AvoidanceSpec, max_depth: usize) -> Result<Vec<Word>> {
    match explore(spec, max_depth)? {
        SearchOutcome::Finite(report) => {
            Ok(avoiding_words_of_length(spec, report.height - 1))
        }
        SearchOutcome::Inconclusive {
            depth_reached,
            frontier_size,
        } => Err(Error::NotFinite {
            depth_reached,
            frontier_size,
        }),
    }
}
