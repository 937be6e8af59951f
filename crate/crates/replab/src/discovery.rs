//! Heuristic discovery of candidate uniform morphisms.
//!
//! The procedure: enumerate avoiding words whose aligned k-blocks form a
//! small set, read candidate blocks off the longest survivors, then test
//! every alphabet-sized block subset against the inclusion, interchange and
//! image-avoidance checks. Avoided-block inference runs the image checker
//! over short source words to find the blocks a morphism must never produce.

use std::collections::{BTreeMap, BTreeSet};

use crate::avoidance::{find_violation, AvoidanceSpec, CheckerState};
use crate::error::{Error, Result};
use crate::morphism::UniformMorphism;
use crate::word::Word;

/// Outcome of the block filter at one block size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAnalysis {
    pub block_size: usize,
    pub max_blocks: usize,
    /// Union of the aligned-block sets of the longest survivors, sorted.
    pub candidate_blocks: Vec<Word>,
    /// Survivor count at each multiple of the block size up to max_len.
    pub surviving_word_count_by_length: BTreeMap<usize, u64>,
    /// True when some stage had no survivors.
    pub exhausted: bool,
}

/// Enumerates avoiding words of lengths k, 2k, ..., max_len that look like
/// morphism images of squarefree source words: the aligned k-blocks form a
/// set of at most `max_blocks` distinct words, and the block sequence itself
/// is squarefree (a square of blocks cannot come from a squarefree source).
pub fn block_filter(
    spec: AvoidanceSpec,
    block_size: usize,
    max_blocks: usize,
    max_len: usize,
) -> Result<BlockAnalysis> {
    if block_size == 0 || max_blocks == 0 {
        return Err(Error::InvalidArgument(
            "block size and block budget must be positive".into(),
        ));
    }
    if max_len == 0 || max_len % block_size != 0 {
        return Err(Error::InvalidArgument(format!(
            "max_len {max_len} must be a positive multiple of the block size {block_size}"
        )));
    }

    let mut counts: BTreeMap<usize, u64> = (1..=max_len / block_size)
        .map(|j| (j * block_size, 0))
        .collect();
    let mut block_unions: BTreeMap<usize, BTreeSet<Vec<u8>>> = BTreeMap::new();

    struct Ctx {
        block_size: usize,
        max_blocks: usize,
        max_len: usize,
    }
    let ctx = Ctx {
        block_size,
        max_blocks,
        max_len,
    };

    fn sequence_has_square_at_end(ids: &[usize]) -> bool {
        let n = ids.len();
        (1..=n / 2).any(|j| ids[n - 2 * j..n - j] == ids[n - j..])
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        ctx: &Ctx,
        checker: &mut CheckerState,
        blocks: &mut Vec<Vec<u8>>,
        sequence: &mut Vec<usize>,
        counts: &mut BTreeMap<usize, u64>,
        unions: &mut BTreeMap<usize, BTreeSet<Vec<u8>>>,
    ) {
        let depth = checker.len();
        let mut added_block = false;
        if depth > 0 && depth % ctx.block_size == 0 {
            let block = checker.word()[depth - ctx.block_size..].to_vec();
            let id = match blocks.iter().position(|b| *b == block) {
                Some(id) => id,
                None => {
                    // the prefix pruning below keeps the budget; this is the
                    // depth where a genuinely new block is committed
                    blocks.push(block);
                    added_block = true;
                    blocks.len() - 1
                }
            };
            sequence.push(id);
            if sequence_has_square_at_end(sequence) {
                sequence.pop();
                if added_block {
                    blocks.pop();
                }
                return;
            }
            *counts.get_mut(&depth).expect("stage preset") += 1;
            unions
                .entry(depth)
                .or_default()
                .extend(blocks.iter().cloned());
        }
        if depth < ctx.max_len {
            let position = depth % ctx.block_size;
            for symbol in 0..2u8 {
                if blocks.len() == ctx.max_blocks {
                    // Every further block must repeat an existing one, so the
                    // open partial block must extend some known block.
                    let partial = &checker.word()[depth - position..];
                    let extends_known = blocks.iter().any(|b| {
                        b[..position] == *partial && b[position] == symbol
                    });
                    if !extends_known {
                        continue;
                    }
                }
                if checker.advance_unchecked(symbol).is_none() {
                    descend(ctx, checker, blocks, sequence, counts, unions);
                }
                checker.retract();
            }
        }
        if depth > 0 && depth % ctx.block_size == 0 {
            sequence.pop();
        }
        if added_block {
            blocks.pop();
        }
    }

    let mut checker = CheckerState::new(spec);
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    let mut sequence: Vec<usize> = Vec::new();
    descend(
        &ctx,
        &mut checker,
        &mut blocks,
        &mut sequence,
        &mut counts,
        &mut block_unions,
    );

    let exhausted = counts.values().any(|&c| c == 0);
    let last_live_stage = counts
        .iter()
        .rev()
        .find(|(_, &c)| c > 0)
        .map(|(&stage, _)| stage);
    let candidate_blocks = last_live_stage
        .and_then(|stage| block_unions.get(&stage))
        .map(|set| {
            set.iter()
                .map(|b| Word::binary(b.clone()).expect("blocks are binary"))
                .collect()
        })
        .unwrap_or_default();

    Ok(BlockAnalysis {
        block_size,
        max_blocks,
        candidate_blocks,
        surviving_word_count_by_length: counts,
        exhausted,
    })
}

/// Source-alphabet blocks whose images violate the spec while the images of
/// all their proper factors do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidedBlockReport {
    pub morphism: String,
    pub spec: AvoidanceSpec,
    pub window: usize,
    pub avoided: Vec<Word>,
}

/// Finds every minimal avoided block of length at most `window`.
pub fn infer_avoided_blocks(
    morphism: &UniformMorphism,
    spec: &AvoidanceSpec,
    window: usize,
) -> AvoidedBlockReport {
    let alphabet = morphism.source_alphabet();
    let mut avoided = Vec::new();
    for len in 1..=window {
        let mut word = vec![0u8; len];
        loop {
            let source = Word::new(word.clone(), alphabet).expect("symbols in range");
            if image_violates(morphism, spec, &source)
                && !image_violates(morphism, spec, &drop_first(&source))
                && !image_violates(morphism, spec, &drop_last(&source))
            {
                avoided.push(source);
            }
            // odometer over the source alphabet
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < alphabet {
                    break;
                }
                word[i] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    avoided.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    AvoidedBlockReport {
        morphism: morphism.name().to_string(),
        spec: *spec,
        window,
        avoided,
    }
}

fn image_violates(morphism: &UniformMorphism, spec: &AvoidanceSpec, source: &Word) -> bool {
    let image = morphism
        .apply(source)
        .expect("enumerated words lie in the source alphabet");
    find_violation(&image, spec).is_some()
}

fn drop_first(word: &Word) -> Word {
    Word::new(word.symbols()[1..].to_vec(), word.alphabet_size()).expect("still in range")
}

fn drop_last(word: &Word) -> Word {
    word.prefix(word.len().saturating_sub(1))
}

/// Runs the block filter and returns every alphabet-sized subset of the
/// candidate blocks that passes the full verification pipeline, with letters
/// assigned in lexicographic block order.
pub fn propose_morphisms(
    spec: AvoidanceSpec,
    block_size: usize,
    alphabet: u8,
    corpus_len: usize,
) -> Result<Vec<UniformMorphism>> {
    if alphabet < 2 {
        return Err(Error::InvalidArgument(
            "candidate alphabet must have at least 2 letters".into(),
        ));
    }
    let analysis = block_filter(spec, block_size, alphabet as usize, corpus_len)?;
    if analysis.exhausted {
        return Ok(Vec::new());
    }
    let blocks = analysis.candidate_blocks;
    if blocks.len() < alphabet as usize {
        return Ok(Vec::new());
    }

    let mut candidates: Vec<UniformMorphism> = Vec::new();
    for combo in combinations(blocks.len(), alphabet as usize) {
        let images: Vec<Word> = combo.iter().map(|&i| blocks[i].clone()).collect();
        let morphism = UniformMorphism::new("candidate", alphabet, 2, images)
            .expect("distinct equal-width blocks form a morphism");
        if morphism.check_inclusion().is_empty()
            && morphism.check_interchange().is_empty()
            && morphism.images_avoid_quick(&spec, 5)
        {
            let name = format!("candidate-{}", candidates.len());
            candidates.push(morphism.renamed(name));
        }
    }
    Ok(candidates)
}

/// All size-r index subsets of 0..n in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        out.push(combo.clone());
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..r {
            combo[j] = combo[j - 1] + 1;
        }
    }
}
