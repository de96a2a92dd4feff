use std::fmt;

use crate::error::{Error, Result};

use super::class::CyclicClass;
use super::word::{Letter, Word};

/// Automorphism of the free group given by the images of the standard generators.
///
/// Construction derives the inverse by Nielsen reduction and checks that both
/// composites fix every generator, so a value of this type is always invertible.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeAutomorphism {
    name: String,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn new(name: impl Into<String>, images: Vec<Word>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidAutomorphism {
            name: name.clone(),
            reason,
        };
        let rank = images.len();
        if rank == 0 {
            return Err(invalid("no images".into()));
        }
        if let Some(bad) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: bad.rank(),
            });
        }
        let inverse_images = nielsen_inverse(&images).ok_or_else(|| {
            invalid("images do not form a basis (Nielsen reduction failed)".into())
        })?;
        let f = FreeAutomorphism {
            name: name.clone(),
            images,
            inverse_images,
        };
        for g in 0..rank {
            let x = Word::generator(rank, g);
            let there_and_back = f.apply_inverse_unchecked(&f.apply_unchecked(&x));
            let back_and_there = f.apply_unchecked(&f.apply_inverse_unchecked(&x));
            if there_and_back != x || back_and_there != x {
                return Err(invalid(format!(
                    "derived inverse does not fix generator {x}"
                )));
            }
        }
        Ok(f)
    }

    /// Parses images in the text encoding; the rank is the number of images.
    pub fn parse(name: impl Into<String>, images: &[&str]) -> Result<Self> {
        let rank = images.len();
        let words = images
            .iter()
            .map(|s| Word::parse(rank, s))
            .collect::<Result<Vec<_>>>()?;
        FreeAutomorphism::new(name, words)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism {
            name: inverse_name(&self.name),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn apply(&self, u: &Word) -> Result<Word> {
        if u.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: u.rank(),
            });
        }
        Ok(self.apply_unchecked(u))
    }

    fn apply_unchecked(&self, u: &Word) -> Word {
        substitute(&self.images, u)
    }

    fn apply_inverse_unchecked(&self, u: &Word) -> Word {
        substitute(&self.inverse_images, u)
    }

    /// Action on conjugacy classes; preserves the orientation policy of `c`.
    pub fn apply_class(&self, c: &CyclicClass) -> CyclicClass {
        let image = self.apply_unchecked(c.word());
        CyclicClass::new(&image, c.is_oriented())
            .expect("automorphisms map nontrivial words to nontrivial words")
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(FreeAutomorphism {
            name: format!("{}*{}", self.name, other.name),
            images: other
                .images
                .iter()
                .map(|w| self.apply_unchecked(w))
                .collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| other.apply_inverse_unchecked(w))
                .collect(),
        })
    }
}

impl fmt::Debug for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        let mut first = true;
        for (g, image) in self.images.iter().enumerate() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{:?}->{}", Letter::new(g, false), image)?;
        }
        Ok(())
    }
}

fn inverse_name(name: &str) -> String {
    match name.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None => format!("{name}^-1"),
    }
}

fn substitute(images: &[Word], u: &Word) -> Word {
    let rank = images.len();
    let mut out: Vec<Letter> = Vec::with_capacity(u.len() * 2);
    let mut push = |l: Letter| {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    };
    for &l in u.letters() {
        let image = &images[l.generator()];
        if l.is_inverse() {
            for &m in image.letters().iter().rev() {
                push(m.inverse());
            }
        } else {
            for &m in image.letters() {
                push(m);
            }
        }
    }
    Word::from_reduced(rank, out)
}

/// Inverse images via Nielsen reduction of the image tuple.
///
/// Keeps pairs `(t_i, p_i)` with `phi(p_i) = t_i`; elementary moves act on both.
/// Once every `t_i` is a signed generator, the `p_i` give `phi^-1`.
fn nielsen_inverse(images: &[Word]) -> Option<Vec<Word>> {
    let rank = images.len();
    let mut targets: Vec<Word> = images.to_vec();
    let mut preimages: Vec<Word> = (0..rank).map(|g| Word::generator(rank, g)).collect();
    let total = |ts: &[Word]| ts.iter().map(Word::len).sum::<usize>();
    // Every reducing step lowers the total length, so this bound is never hit for bases.
    let max_steps = 64 * (total(&targets) + rank) + 64;
    for _ in 0..max_steps {
        if targets.iter().all(|t| t.len() == 1) {
            break;
        }
        if targets.iter().any(Word::is_identity) {
            return None;
        }
        let current = total(&targets);
        let step = best_move(&targets, current).or_else(|| lookahead_move(&targets, current))?;
        apply_move(&mut targets, &mut preimages, step);
    }
    if !targets.iter().all(|t| t.len() == 1) {
        return None;
    }
    let mut inverse: Vec<Option<Word>> = vec![None; rank];
    for (t, p) in targets.iter().zip(preimages) {
        let l = t.first()?;
        let slot = &mut inverse[l.generator()];
        if slot.is_some() {
            return None;
        }
        *slot = Some(if l.is_inverse() { p.inverse() } else { p });
    }
    inverse.into_iter().collect()
}

#[derive(Clone, Copy, Debug)]
struct Move {
    target: usize,
    by: usize,
    inverse: bool,
    left: bool,
}

fn moved(targets: &[Word], m: Move) -> Word {
    let other = if m.inverse {
        targets[m.by].inverse()
    } else {
        targets[m.by].clone()
    };
    if m.left {
        other.mul_unchecked(&targets[m.target])
    } else {
        targets[m.target].mul_unchecked(&other)
    }
}

fn all_moves(rank: usize) -> impl Iterator<Item = Move> {
    (0..rank).flat_map(move |target| {
        (0..rank)
            .filter(move |&by| by != target)
            .flat_map(move |by| {
                [(false, false), (false, true), (true, false), (true, true)]
                    .into_iter()
                    .map(move |(inverse, left)| Move {
                        target,
                        by,
                        inverse,
                        left,
                    })
            })
    })
}

fn best_move(targets: &[Word], current: usize) -> Option<Move> {
    all_moves(targets.len())
        .map(|m| {
            let new_len = current - targets[m.target].len() + moved(targets, m).len();
            (new_len, m)
        })
        .filter(|(len, _)| *len < current)
        .min_by_key(|(len, _)| *len)
        .map(|(_, m)| m)
}

/// Length-preserving move that unlocks a strict reduction on the next step.
fn lookahead_move(targets: &[Word], current: usize) -> Option<Move> {
    for m in all_moves(targets.len()) {
        let candidate = moved(targets, m);
        if current - targets[m.target].len() + candidate.len() != current {
            continue;
        }
        let mut next = targets.to_vec();
        next[m.target] = candidate;
        if best_move(&next, current).is_some() {
            return Some(m);
        }
    }
    None
}

fn apply_move(targets: &mut [Word], preimages: &mut [Word], m: Move) {
    targets[m.target] = moved(targets, m);
    preimages[m.target] = moved(preimages, m);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = FreeAutomorphism::parse("Tb", &["ab", "b"]).unwrap();
        assert_eq!(f.apply(&w("a")).unwrap(), w("ab"));
        assert!(f.apply(&w("")).unwrap().is_identity());
        assert_eq!(f.apply(&w("abAB")).unwrap(), w("abAB"));
    }

    #[test]
    fn inverse_is_derived() {
        let f = FreeAutomorphism::parse("Ta", &["a", "ba"]).unwrap();
        let g = f.inverse();
        assert_eq!(g.images(), &[w("a"), w("bA")]);
        for s in ["a", "b", "abAAB", "bbaBa"] {
            assert_eq!(g.apply(&f.apply(&w(s)).unwrap()).unwrap(), w(s));
        }
        assert_eq!(g.name(), "Ta^-1");
        assert_eq!(g.inverse().name(), "Ta");
    }

    #[test]
    fn longer_basis_is_inverted() {
        let t = FreeAutomorphism::parse("T", &["ab", "b"]).unwrap();
        let s = FreeAutomorphism::parse("S", &["a", "ba"]).unwrap();
        let mut f = t.clone();
        for _ in 0..4 {
            f = s.compose(&f).unwrap().compose(&t).unwrap();
        }
        let again = FreeAutomorphism::new("again", f.images().to_vec()).unwrap();
        for s in ["a", "b", "aBBa"] {
            assert_eq!(
                again.inverse().apply(&f.apply(&w(s)).unwrap()).unwrap(),
                w(s)
            );
        }
    }

    #[test]
    fn non_basis_rejected() {
        assert!(matches!(
            FreeAutomorphism::parse("bad", &["aa", "b"]),
            Err(Error::InvalidAutomorphism { .. })
        ));
        assert!(matches!(
            FreeAutomorphism::parse("bad", &["ab", "ab"]),
            Err(Error::InvalidAutomorphism { .. })
        ));
    }

    #[test]
    fn rank_three_permutation() {
        let f = FreeAutomorphism::parse("p", &["b", "C", "a"]).unwrap();
        let x = Word::parse(3, "abc").unwrap();
        assert_eq!(f.inverse().apply(&f.apply(&x).unwrap()).unwrap(), x);
    }
}
