//! Uniform morphisms: application, composition, the verification checks that
//! reduce infinite avoidance claims to finite computations, and generation of
//! infinite avoiding words from the squarefree ternary fixed point.

use serde::{Deserialize, Serialize};

use crate::avoidance::{find_violation, AvoidanceSpec, Violation};
use crate::error::{Error, Result};
use crate::word::Word;

/// A k-uniform morphism: every letter of the source alphabet maps to a word
/// of length exactly k over the target alphabet. Images are pairwise distinct,
/// so the morphism is injective on letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    name: String,
    source_alphabet: u8,
    target_alphabet: u8,
    width: usize,
    images: Vec<Word>,
}

impl UniformMorphism {
    pub fn new(
        name: impl Into<String>,
        source_alphabet: u8,
        target_alphabet: u8,
        images: Vec<Word>,
    ) -> Result<Self> {
        let name = name.into();
        if source_alphabet == 0 || source_alphabet > crate::word::MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(source_alphabet));
        }
        if images.len() != source_alphabet as usize {
            return Err(Error::InvalidMorphism(format!(
                "{name}: expected {source_alphabet} images, got {}",
                images.len()
            )));
        }
        let width = images[0].len();
        if width == 0 {
            return Err(Error::InvalidMorphism(format!("{name}: empty image")));
        }
        for image in &images {
            if image.len() != width {
                return Err(Error::InvalidMorphism(format!(
                    "{name}: images have unequal lengths {} and {width}",
                    image.len()
                )));
            }
            if let Some(&s) = image.symbols().iter().find(|&&s| s >= target_alphabet) {
                return Err(Error::InvalidMorphism(format!(
                    "{name}: image symbol {s} outside target alphabet of size {target_alphabet}"
                )));
            }
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i] == images[j] {
                    return Err(Error::InvalidMorphism(format!(
                        "{name}: images of letters {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(UniformMorphism {
            name,
            source_alphabet,
            target_alphabet,
            width,
            images,
        })
    }

    /// The identity on an alphabet, as a 1-uniform morphism.
    pub fn identity(alphabet_size: u8) -> Result<Self> {
        let images = (0..alphabet_size)
            .map(|s| Word::new(vec![s], alphabet_size))
            .collect::<Result<Vec<_>>>()?;
        UniformMorphism::new(format!("id{alphabet_size}"), alphabet_size, alphabet_size, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source_alphabet(&self) -> u8 {
        self.source_alphabet
    }

    pub fn target_alphabet(&self) -> u8 {
        self.target_alphabet
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: u8) -> Result<&Word> {
        self.images.get(letter as usize).ok_or(Error::InvalidSymbol {
            symbol: letter,
            alphabet_size: self.source_alphabet,
        })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Concatenates the images of the letters of `word`.
    pub fn apply(&self, word: &Word) -> Result<Word> {
        let mut symbols = Vec::with_capacity(self.width * word.len());
        for &s in word.symbols() {
            symbols.extend_from_slice(self.image(s)?.symbols());
        }
        Word::new(symbols, self.target_alphabet)
    }

    /// Composition `self ∘ inner`: `inner` is applied first. The result's
    /// width is the product of the two widths.
    pub fn compose(&self, inner: &UniformMorphism) -> Result<UniformMorphism> {
        if inner.target_alphabet > self.source_alphabet {
            return Err(Error::AlphabetMismatch {
                outer_source: self.source_alphabet,
                inner_target: inner.target_alphabet,
            });
        }
        let images = inner
            .images
            .iter()
            .map(|image| self.apply(image))
            .collect::<Result<Vec<_>>>()?;
        UniformMorphism::new(
            format!("{}*{}", self.name, inner.name),
            inner.source_alphabet,
            self.target_alphabet,
            images,
        )
    }

    /// Inclusion property: every occurrence of an image inside a two-letter
    /// image block sits at offset 0 or k. Returns all nontrivial occurrences.
    pub fn check_inclusion(&self) -> Vec<InclusionCounterexample> {
        let k = self.width;
        let mut failures = Vec::new();
        for (a, ia) in self.images.iter().enumerate() {
            for (b, ib) in self.images.iter().enumerate() {
                let mut pair = ia.symbols().to_vec();
                pair.extend_from_slice(ib.symbols());
                for (c, ic) in self.images.iter().enumerate() {
                    for offset in 0..=k {
                        if offset != 0
                            && offset != k
                            && &pair[offset..offset + k] == ic.symbols()
                        {
                            failures.push(InclusionCounterexample {
                                a: a as u8,
                                b: b as u8,
                                c: c as u8,
                                offset,
                            });
                        }
                    }
                }
            }
        }
        failures
    }

    /// Interchange property: if an image equals a prefix of one image glued
    /// to a suffix of another, letter identity must force it.
    pub fn check_interchange(&self) -> Vec<InterchangeCounterexample> {
        let k = self.width;
        let mut failures = Vec::new();
        for (a, ia) in self.images.iter().enumerate() {
            for (b, ib) in self.images.iter().enumerate() {
                for (c, ic) in self.images.iter().enumerate() {
                    if a == c || b == c {
                        continue;
                    }
                    for split in 0..=k {
                        if ic.symbols()[..split] == ia.symbols()[..split]
                            && ic.symbols()[split..] == ib.symbols()[split..]
                        {
                            failures.push(InterchangeCounterexample {
                                a: a as u8,
                                b: b as u8,
                                c: c as u8,
                                split,
                            });
                        }
                    }
                }
            }
        }
        failures
    }

    /// Longest prefix shared by two distinct images.
    pub fn longest_shared_prefix(&self) -> usize {
        self.longest_shared(|image| image.symbols().to_vec())
    }

    /// Longest suffix shared by two distinct images.
    pub fn longest_shared_suffix(&self) -> usize {
        self.longest_shared(|image| {
            let mut rev = image.symbols().to_vec();
            rev.reverse();
            rev
        })
    }

    fn longest_shared(&self, view: impl Fn(&Word) -> Vec<u8>) -> usize {
        let views: Vec<Vec<u8>> = self.images.iter().map(view).collect();
        let mut longest = 0;
        for i in 0..views.len() {
            for j in i + 1..views.len() {
                let common = views[i]
                    .iter()
                    .zip(&views[j])
                    .take_while(|(x, y)| x == y)
                    .count();
                longest = longest.max(common);
            }
        }
        longest
    }

    /// Applies the morphism to every squarefree source word of length at
    /// most `source_len` and checks the image against the spec.
    pub fn check_images_avoid(
        &self,
        spec: &AvoidanceSpec,
        source_len: usize,
    ) -> Vec<ImageCounterexample> {
        let mut failures = Vec::new();
        for len in 1..=source_len {
            for source in squarefree_words(self.source_alphabet, len) {
                let image = self
                    .apply(&source)
                    .expect("enumerated words lie in the source alphabet");
                if let Some(violation) = find_violation(&image, spec) {
                    failures.push(ImageCounterexample { source, violation });
                }
            }
        }
        failures
    }

    /// Early-exit form of check_images_avoid for bulk candidate screening.
    pub(crate) fn images_avoid_quick(&self, spec: &AvoidanceSpec, source_len: usize) -> bool {
        for len in 1..=source_len {
            for source in squarefree_words(self.source_alphabet, len) {
                let image = self
                    .apply(&source)
                    .expect("enumerated words lie in the source alphabet");
                if find_violation(&image, spec).is_some() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionCounterexample {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterchangeCounterexample {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub split: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageCounterexample {
    pub source: Word,
    pub violation: Violation,
}

/// All squarefree words of exactly the given length, lexicographically,
/// by backtracking with on-line square rejection.
pub fn squarefree_words(alphabet_size: u8, length: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(length);
    fn has_square_at_end(w: &[u8]) -> bool {
        let n = w.len();
        (1..=n / 2).any(|q| w[n - 2 * q..n - q] == w[n - q..])
    }
    fn extend(current: &mut Vec<u8>, alphabet_size: u8, length: usize, out: &mut Vec<Word>) {
        if current.len() == length {
            out.push(Word::new(current.clone(), alphabet_size).expect("symbols in range"));
            return;
        }
        for s in 0..alphabet_size {
            current.push(s);
            if !has_square_at_end(current) {
                extend(current, alphabet_size, length, out);
            }
            current.pop();
        }
    }
    if length == 0 {
        if let Ok(empty) = Word::empty(alphabet_size) {
            out.push(empty);
        }
        return out;
    }
    extend(&mut current, alphabet_size, length, &mut out);
    out
}

/// Length-n prefix of the squarefree ternary fixed point of
/// 2 -> 210, 1 -> 20, 0 -> 1, iterated from the seed letter 2.
pub fn squarefree_ternary(n: usize) -> Word {
    if n == 0 {
        return Word::empty(3).expect("ternary alphabet is valid");
    }
    let mut word = vec![2u8];
    while word.len() < n {
        let mut next = Vec::with_capacity(word.len() * 3);
        for &s in &word {
            match s {
                2 => next.extend_from_slice(&[2, 1, 0]),
                1 => next.extend_from_slice(&[2, 0]),
                _ => next.push(1),
            }
        }
        word = next;
    }
    word.truncate(n);
    Word::new(word, 3).expect("fixed point is ternary")
}

/// Length-n prefix of the image of the squarefree ternary fixed point under
/// a morphism with ternary source alphabet.
pub fn generate_prefix(morphism: &UniformMorphism, n: usize) -> Result<Word> {
    if morphism.source_alphabet() != 3 {
        return Err(Error::InvalidArgument(format!(
            "generation needs a ternary source alphabet; {} has {}",
            morphism.name(),
            morphism.source_alphabet()
        )));
    }
    if n == 0 {
        return Word::empty(morphism.target_alphabet());
    }
    let source_letters = n.div_ceil(morphism.width());
    let image = morphism.apply(&squarefree_ternary(source_letters))?;
    Ok(image.prefix(n))
}

/// Registry entry as serialized in the morphism registry JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub name: String,
    pub width: usize,
    pub source_alphabet: u8,
    pub target_alphabet: u8,
    pub images: Vec<String>,
}

/// The named morphisms: the six displayed letter maps plus the composites
/// g = g1∘g2∘g3 and h = h1∘h2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismRegistry {
    entries: Vec<UniformMorphism>,
}

const F_IMAGES: [&str; 3] = ["0010111010", "0010101110", "0011101010"];

const G1_IMAGES: [&str; 8] = [
    "0011010010110",
    "0011010110010",
    "0011011001011",
    "0100110110010",
    "0110100101100",
    "1001101011001",
    "1001101100101",
    "1010011011001",
];

const G2_IMAGES: [&str; 4] = [
    "03523503523453461467",
    "03523503523453467167",
    "16703523503523461467",
    "03523503523461467167",
];

const G3_IMAGES: [&str; 3] = ["010203", "010313", "021013"];

const H1_IMAGES: [&str; 5] = [
    "00110100101100",
    "00110100110010",
    "01001100101100",
    "10011011001011",
    "11010011011001",
];

const H2_IMAGES: [&str; 3] = [
    "032303241403240314",
    "032314041403240314",
    "032414032303240314",
];

fn table(name: &str, source: u8, target: u8, images: &[&str]) -> UniformMorphism {
    let images = images
        .iter()
        .map(|text| Word::parse(text, target).expect("builtin image data is valid"))
        .collect();
    UniformMorphism::new(name, source, target, images).expect("builtin morphism data is valid")
}

impl MorphismRegistry {
    pub fn builtin() -> Self {
        let f = table("f", 3, 2, &F_IMAGES);
        let g1 = table("g1", 8, 2, &G1_IMAGES);
        let g2 = table("g2", 4, 8, &G2_IMAGES);
        let g3 = table("g3", 3, 4, &G3_IMAGES);
        let h1 = table("h1", 5, 2, &H1_IMAGES);
        let h2 = table("h2", 3, 5, &H2_IMAGES);
        let g = g1
            .compose(&g2)
            .and_then(|g12| g12.compose(&g3))
            .expect("builtin alphabets are compatible")
            .renamed("g");
        let h = h1
            .compose(&h2)
            .expect("builtin alphabets are compatible")
            .renamed("h");
        let mut entries = vec![f, g, g1, g2, g3, h, h1, h2];
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        MorphismRegistry { entries }
    }

    pub fn from_entries(entries: Vec<UniformMorphism>) -> Self {
        let mut entries = entries;
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        MorphismRegistry { entries }
    }

    pub fn get(&self, name: &str) -> Option<&UniformMorphism> {
        self.entries.iter().find(|m| m.name == name)
    }

    pub fn entries(&self) -> &[UniformMorphism] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|m| m.name.as_str()).collect()
    }

    /// The spec each headline morphism was built for; the finite checks and
    /// generated words are verified against it.
    pub fn canonical_spec(name: &str) -> Option<AvoidanceSpec> {
        let spec = |l: usize, power: &str| {
            AvoidanceSpec::new(l, power.parse().expect("static threshold parses"))
                .expect("static spec is valid")
        };
        match name {
            "f" => Some(spec(3, "3+")),
            "g" => Some(spec(4, "5/2+")),
            "h" => Some(spec(7, "7/3+")),
            _ => None,
        }
    }

    /// Length-n prefix of the avoiding word generated by a named morphism.
    pub fn generate(&self, name: &str, n: usize) -> Result<Word> {
        let morphism = self
            .get(name)
            .ok_or_else(|| Error::UnknownMorphism(name.into()))?;
        generate_prefix(morphism, n)
    }

    pub fn to_entries(&self) -> Vec<MorphismEntry> {
        self.entries
            .iter()
            .map(|m| MorphismEntry {
                name: m.name.clone(),
                width: m.width,
                source_alphabet: m.source_alphabet,
                target_alphabet: m.target_alphabet,
                images: m.images.iter().map(|w| w.to_string()).collect(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_entries()).expect("registry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<MorphismEntry> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("registry JSON: {e}")))?;
        let morphisms = entries
            .into_iter()
            .map(|entry| {
                let images = entry
                    .images
                    .iter()
                    .map(|text| Word::parse(text, entry.target_alphabet))
                    .collect::<Result<Vec<_>>>()?;
                let m = UniformMorphism::new(
                    entry.name.clone(),
                    entry.source_alphabet,
                    entry.target_alphabet,
                    images,
                )?;
                if m.width() != entry.width {
                    return Err(Error::InvalidMorphism(format!(
                        "{}: declared width {} but images have length {}",
                        entry.name,
                        entry.width,
                        m.width()
                    )));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismRegistry::from_entries(morphisms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry() -> MorphismRegistry {
        MorphismRegistry::builtin()
    }

    fn word(text: &str, k: u8) -> Word {
        Word::parse(text, k).unwrap()
    }

    #[test]
    fn apply_examples() {
        let reg = registry();
        let f = reg.get("f").unwrap();
        assert_eq!(f.apply(&word("0", 3)).unwrap(), word("0010111010", 2));
        assert_eq!(f.apply(&Word::empty(3).unwrap()).unwrap(), Word::empty(2).unwrap());
        let g3 = reg.get("g3").unwrap();
        assert_eq!(g3.apply(&word("2", 3)).unwrap(), word("021013", 4));
    }

    #[test]
    fn composite_widths() {
        let reg = registry();
        assert_eq!(reg.get("g").unwrap().width(), 1560);
        assert_eq!(reg.get("h").unwrap().width(), 252);
        let h = reg.get("h1").unwrap().compose(reg.get("h2").unwrap()).unwrap();
        assert_eq!(h.width(), 252);
        let g12 = reg.get("g2").unwrap().compose(reg.get("g3").unwrap()).unwrap();
        let g = reg.get("g1").unwrap().compose(&g12).unwrap();
        assert_eq!(g.width(), 1560);
        assert_eq!(g.images(), reg.get("g").unwrap().images());
    }

    #[test]
    fn identity_composition() {
        let reg = registry();
        let f = reg.get("f").unwrap();
        let id = UniformMorphism::identity(2).unwrap();
        let composed = id.compose(f).unwrap();
        assert_eq!(composed.images(), f.images());
        assert_eq!(composed.width(), f.width());
    }

    #[test]
    fn compose_alphabet_mismatch() {
        let reg = registry();
        let f = reg.get("f").unwrap(); // source 3
        let g1 = reg.get("g1").unwrap(); // target 2
        assert!(f.compose(g1).is_ok()); // 2 <= 3
        let g2 = reg.get("g2").unwrap(); // target 8
        assert_eq!(
            f.compose(g2),
            Err(Error::AlphabetMismatch {
                outer_source: 3,
                inner_target: 8
            })
        );
    }

    #[test]
    fn inclusion_and_interchange_hold_for_f() {
        let reg = registry();
        let f = reg.get("f").unwrap();
        assert!(f.check_inclusion().is_empty());
        assert!(f.check_interchange().is_empty());
        // No two distinct images share a length-6 prefix or a length-5 suffix.
        assert!(f.longest_shared_prefix() < 6);
        assert!(f.longest_shared_suffix() < 5);
    }

    #[test]
    fn interchange_fails_without_distinct_images() {
        // Two equal images are rejected at construction.
        let images = vec![word("0101", 2), word("0101", 2), word("0011", 2)];
        assert!(matches!(
            UniformMorphism::new("dup", 3, 2, images),
            Err(Error::InvalidMorphism(_))
        ));
        // A near-duplicate pair fails interchange: c's image splits across a and b.
        let m = UniformMorphism::new(
            "bad",
            3,
            2,
            vec![word("0100", 2), word("0111", 2), word("0101", 2)],
        )
        .unwrap();
        assert!(!m.check_interchange().is_empty());
    }

    #[test]
    fn squarefree_word_counts() {
        assert_eq!(squarefree_words(3, 1).len(), 3);
        assert_eq!(squarefree_words(3, 2).len(), 6);
        assert_eq!(squarefree_words(3, 3).len(), 12);
        assert_eq!(squarefree_words(3, 4).len(), 18);
        assert_eq!(squarefree_words(3, 5).len(), 30);
    }

    #[test]
    fn images_avoid_for_f() {
        let reg = registry();
        let f = reg.get("f").unwrap();
        let spec = MorphismRegistry::canonical_spec("f").unwrap();
        assert!(f.check_images_avoid(&spec, 5).is_empty());
    }

    #[test]
    fn fixed_point_prefixes() {
        assert!(squarefree_ternary(0).is_empty());
        assert_eq!(squarefree_ternary(3), word("210", 3));
        assert_eq!(squarefree_ternary(6), word("210201", 3));
        let long = squarefree_ternary(60);
        assert_eq!(long.prefix(6), squarefree_ternary(6));
    }

    #[test]
    fn generate_first_block() {
        let reg = registry();
        // The fixed point starts with 2, so the first block is f(2).
        assert_eq!(reg.generate("f", 10).unwrap(), word("0011101010", 2));
        assert!(reg.generate("g", 0).unwrap().is_empty());
        assert_eq!(
            reg.generate("nope", 4),
            Err(Error::UnknownMorphism("nope".into()))
        );
        assert!(matches!(
            generate_prefix(reg.get("g1").unwrap(), 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn registry_json_round_trip() {
        let reg = registry();
        let parsed = MorphismRegistry::from_json(&reg.to_json()).unwrap();
        assert_eq!(parsed, reg);
    }

    #[test]
    fn registry_file_matches_builtin() {
        let file = include_str!("../data/morphisms.json");
        let parsed = MorphismRegistry::from_json(file).unwrap();
        assert_eq!(parsed, MorphismRegistry::builtin());
    }
}
