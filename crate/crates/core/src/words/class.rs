use std::fmt;

use crate::error::{Error, Result};

use super::word::{Letter, Word};

/// Canonical representative of a conjugacy class (a free homotopy class of curves).
///
/// The stored word is cyclically reduced and lexicographically least among its
/// rotations, and also among the rotations of its inverse when `oriented` is false.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    word: Word,
    oriented: bool,
}

impl CyclicClass {
    pub fn new(u: &Word, oriented: bool) -> Result<Self> {
        if u.is_identity() {
            return Err(Error::IdentityClass);
        }
        let (core, _) = u.cyclic_reduce();
        Ok(Self::from_cyclically_reduced(core, oriented))
    }

    /// Canonicalizes a word known to be cyclically reduced and nonempty.
    pub(crate) fn from_cyclically_reduced(core: Word, oriented: bool) -> Self {
        debug_assert!(!core.is_identity() && core.is_cyclically_reduced());
        let rank = core.rank();
        let forward = least_rotation(core.letters());
        let word = if oriented {
            forward
        } else {
            let inv: Vec<Letter> = core.letters().iter().rev().map(|l| l.inverse()).collect();
            let backward = least_rotation(&inv);
            forward.min(backward)
        };
        CyclicClass {
            word: Word::from_reduced(rank, word),
            oriented,
        }
    }

    pub fn parse(rank: usize, text: &str, oriented: bool) -> Result<Self> {
        CyclicClass::new(&Word::parse(rank, text)?, oriented)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn rank(&self) -> usize {
        self.word.rank()
    }

    /// Length of the cyclically reduced representative in the standard basis.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Class of the inverse curve; equal to `self` for unoriented classes.
    pub fn inverse(&self) -> CyclicClass {
        if !self.oriented {
            return self.clone();
        }
        CyclicClass::from_cyclically_reduced(self.word.inverse(), true)
    }

    /// Same curve with the other identification policy.
    pub fn with_orientation(&self, oriented: bool) -> CyclicClass {
        if oriented == self.oriented {
            return self.clone();
        }
        CyclicClass::from_cyclically_reduced(self.word.clone(), oriented)
    }

    /// Class of the `n`-th power (n >= 1).
    pub fn power(&self, n: u32) -> CyclicClass {
        assert!(n >= 1);
        let mut letters = Vec::with_capacity(self.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(self.word.letters());
        }
        CyclicClass::from_cyclically_reduced(
            Word::from_reduced(self.rank(), letters),
            self.oriented,
        )
    }

    /// Returns `(root, k)` with `self` equal to the class of `root^k` and `root` primitive.
    pub fn primitive_root(&self) -> (CyclicClass, u32) {
        let letters = self.word.letters();
        let n = letters.len();
        let period = smallest_period(letters);
        let root = Word::from_reduced(self.rank(), letters[..period].to_vec());
        (
            CyclicClass::from_cyclically_reduced(root, self.oriented),
            (n / period) as u32,
        )
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.word)
    }
}

impl fmt::Debug for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CyclicClass({}{})",
            self.word,
            if self.oriented { ", oriented" } else { "" }
        )
    }
}

/// Smallest `p` dividing `n` with `s` invariant under rotation by `p`.
pub(crate) fn smallest_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|&p| n.is_multiple_of(p))
        .find(|&p| (p..n).all(|i| s[i] == s[i - p]))
        .unwrap_or(n)
}

/// Lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation<T: Ord + Copy>(s: &[T]) -> Vec<T> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let start = least_rotation_index(s);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&s[start..]);
    out.extend_from_slice(&s[..start]);
    out
}

pub(crate) fn least_rotation_index<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    let mut failure = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = failure[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if sj != at(k + (i + 1) as usize) {
            // i == -1 here
            if sj < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str, oriented: bool) -> CyclicClass {
        CyclicClass::parse(2, s, oriented).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(class("ba", false).word().to_text(), "ab");
        assert_eq!(class("baB", false).word().to_text(), "a");
        // candidates: aB, Ba, bA, Ab
        assert_eq!(class("aB", false).word().to_text(), "aB");
        assert!(matches!(
            CyclicClass::parse(2, "aA", false),
            Err(Error::IdentityClass)
        ));
    }

    #[test]
    fn oriented_keeps_direction() {
        assert_eq!(class("BA", true).word().to_text(), "AB");
        assert_eq!(class("BA", false).word().to_text(), "ab");
        assert_eq!(class("ab", true).inverse(), class("BA", true));
    }

    #[test]
    fn booth_matches_brute_force() {
        let samples: &[&[u8]] = &[
            &[3, 1, 2, 1, 2],
            &[0, 0, 0],
            &[2, 1, 2, 1],
            &[1, 0, 1, 0, 0, 1, 0],
            &[5, 4, 3, 2, 1],
            &[0, 1, 0, 0, 1, 0, 0, 1],
        ];
        for s in samples {
            let brute = (0..s.len())
                .map(|k| {
                    let mut r = s.to_vec();
                    r.rotate_left(k);
                    r
                })
                .min()
                .unwrap();
            assert_eq!(least_rotation(s), brute, "{s:?}");
        }
    }

    #[test]
    fn primitive_root_of_powers() {
        let (root, k) = class("abab", false).primitive_root();
        assert_eq!((root, k), (class("ab", false), 2));
        let (root, k) = class("aab", false).primitive_root();
        assert_eq!((root, k), (class("aab", false), 1));
        assert_eq!(class("ab", false).power(3), class("bababa", false));
    }
}
