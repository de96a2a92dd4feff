use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rank expressible in the text encoding (`a`..`z`).
pub const MAX_TEXT_RANK: usize = 26;

/// A signed generator of the free group.
///
/// Letters are stored as `2 * generator + inverse`, so the derived ordering is
/// the canonicalization order `a1 < a1^-1 < a2 < a2^-1 < ...` and inversion is a
/// single bit flip.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    /// `generator` is zero-based.
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator < 128);
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn from_code(code: u8) -> Self {
        Letter(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator() as u8) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Letter::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator() < MAX_TEXT_RANK {
            write!(f, "{}", self.to_char())
        } else {
            write!(
                f,
                "x{}{}",
                self.generator() + 1,
                if self.is_inverse() { "'" } else { "" }
            )
        }
    }
}

/// Freely reduced element of the free group of a given rank.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    rank: u8,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank: rank as u8,
            letters: Vec::new(),
        }
    }

    /// The `generator`-th standard basis element (zero-based).
    pub fn generator(rank: usize, generator: usize) -> Self {
        assert!(
            generator < rank,
            "generator {generator} out of range for rank {rank}"
        );
        Word {
            rank: rank as u8,
            letters: vec![Letter::new(generator, false)],
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            if letter.generator() >= rank {
                return Err(Error::LetterOutOfRange {
                    index: letter.generator() + 1,
                    rank,
                });
            }
            push_reducing(&mut letters, letter);
        }
        Ok(Word {
            rank: rank as u8,
            letters,
        })
    }

    /// Builds from letters already known to be reduced and in range.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(is_reduced(&letters));
        debug_assert!(letters.iter().all(|l| l.generator() < rank));
        Word {
            rank: rank as u8,
            letters,
        }
    }

    /// Parses the text encoding, reducing the result.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let mut raw = Vec::with_capacity(text.len());
        for c in text.chars() {
            match Letter::from_char(c) {
                Some(l) => raw.push(l),
                None => {
                    return Err(Error::Parse {
                        text: text.to_string(),
                        reason: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        Word::reduce(rank, raw)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product without the rank check; callers guarantee equal ranks.
    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let cancel = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(x, y)| x.inverse() == **y)
            .count();
        let keep = self.letters.len() - cancel;
        let mut letters = Vec::with_capacity(keep + other.letters.len() - cancel);
        letters.extend_from_slice(&self.letters[..keep]);
        letters.extend_from_slice(&other.letters[cancel..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn power(&self, n: u32) -> Word {
        if n == 0 || self.is_identity() {
            return Word::identity(self.rank());
        }
        let (core, conjugator) = self.cyclic_reduce();
        let mut letters = Vec::with_capacity(2 * conjugator.len() + core.len() * n as usize);
        letters.extend_from_slice(&conjugator.letters);
        for _ in 0..n {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conjugator.letters.iter().rev().map(|l| l.inverse()));
        Word::from_reduced(self.rank(), letters)
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].inverse() == self.letters[n - 1 - k] {
            k += 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            rank: self.rank,
            letters: self.letters[..k].to_vec(),
        };
        (core, conjugator)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f.inverse() != l,
            _ => true,
        }
    }

    /// Length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].inverse() == self.letters[n - 1 - k] {
            k += 1;
        }
        n - 2 * k
    }

    /// Length of the longest common prefix with `other`.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Rotation by `k` letters; only meaningful for cyclically reduced words.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn to_text(&self) -> String {
        self.letters.iter().map(|l| l.to_char()).collect()
    }
}

#[inline]
fn push_reducing(letters: &mut Vec<Letter>, letter: Letter) {
    if letters.last() == Some(&letter.inverse()) {
        letters.pop();
    } else {
        letters.push(letter);
    }
}

pub(crate) fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0].inverse() != w[1])
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.to_text())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}; rank {})", self, self.rank)
    }
}

/// Parsed with rank equal to the largest generator used (at least 1).
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rank = s
            .chars()
            .filter_map(Letter::from_char)
            .map(|l| l.generator() + 1)
            .max()
            .unwrap_or(1);
        Word::parse(rank, s)
    }
}

/// Text form used in config files; the rank is supplied by the surrounding context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordText(pub String);

impl WordText {
    pub fn to_word(&self, rank: usize) -> Result<Word> {
        Word::parse(rank, &self.0)
    }
}

impl Serialize for WordText {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for WordText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer).map(WordText)
    }
}

impl From<&str> for WordText {
    fn from(s: &str) -> Self {
        WordText(s.to_string())
    }
}
