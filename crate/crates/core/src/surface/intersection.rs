use crate::words::{CyclicClass, Letter};

use super::SurfaceSig;

/// One-vertex ribbon graph whose thickening is the surface.
///
/// Half-edges are letters: `x` leaves the vertex along edge `x`, and `X` is the
/// other end of the same edge. Faces are read by the permutation
/// `h -> rotation(h^-1)`: one face reads `[a1,b1] ... [ag,bg] d1 ... d(r-1)`
/// and each `D_j` bounds a monogon, giving one face per boundary component.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    /// Position of each half-edge (by letter code) in the cyclic order.
    position: Vec<usize>,
}

impl RibbonGraph {
    pub fn new(sig: &SurfaceSig) -> Self {
        let rank = sig.rank();
        let half_edges = 2 * rank;
        let mut big_face: Vec<Letter> = Vec::with_capacity(half_edges);
        for i in 0..sig.genus() as usize {
            let (a, b) = (Letter::new(2 * i, false), Letter::new(2 * i + 1, false));
            big_face.extend([a, b, a.inverse(), b.inverse()]);
        }
        for j in 0..sig.boundary() as usize - 1 {
            big_face.push(Letter::new(2 * sig.genus() as usize + j, false));
        }
        let mut face: Vec<u8> = (0..half_edges as u8).collect();
        for (k, h) in big_face.iter().enumerate() {
            face[h.code() as usize] = big_face[(k + 1) % big_face.len()].code();
        }
        let rotation = |h: u8| face[(h ^ 1) as usize];

        let mut position = vec![usize::MAX; half_edges];
        let mut h = 0u8;
        for k in 0..half_edges {
            assert_eq!(
                position[h as usize],
                usize::MAX,
                "rotation is not a single cycle"
            );
            position[h as usize] = k;
            h = rotation(h);
        }
        assert_eq!(h, 0, "rotation is not a single cycle");
        RibbonGraph { position }
    }

    /// Half-edges in cyclic order starting from `a`.
    pub fn cyclic_order(&self) -> Vec<Letter> {
        let mut order = vec![Letter::from_code(0); self.position.len()];
        for (code, &p) in self.position.iter().enumerate() {
            order[p] = Letter::from_code(code as u8);
        }
        order
    }

    /// Steps from `from` to `to` in the cyclic order.
    fn offset(&self, from: Letter, to: Letter) -> usize {
        let n = self.position.len();
        (self.position[to.code() as usize] + n - self.position[from.code() as usize]) % n
    }

    /// Whether `x` comes before `y` going around from `start`.
    fn before(&self, start: Letter, x: Letter, y: Letter) -> bool {
        self.offset(start, x) < self.offset(start, y)
    }

    /// Whether the pairs `{p, q}` and `{s, t}` of distinct half-edges interleave.
    fn interleaved(&self, p: Letter, q: Letter, s: Letter, t: Letter) -> bool {
        let between = |x| self.offset(p, x) < self.offset(p, q);
        between(s) != between(t)
    }
}

/// One lift of the curve through the vertex: the forward and backward rays.
#[derive(Clone, Copy)]
struct Lift<'a> {
    word: &'a [Letter],
    at: usize,
    reversed: bool,
}

impl Lift<'_> {
    fn letter(&self, i: isize) -> Letter {
        let n = self.word.len() as isize;
        self.word[(self.at as isize + i).rem_euclid(n) as usize]
    }

    fn forward(&self, t: usize) -> Letter {
        if self.reversed {
            self.letter(-1 - t as isize).inverse()
        } else {
            self.letter(t as isize)
        }
    }

    fn backward(&self, t: usize) -> Letter {
        if self.reversed {
            self.letter(t as isize)
        } else {
            self.letter(-1 - t as isize).inverse()
        }
    }
}

/// Ordered pairs of positions whose lifts cross, each crossing counted at
/// the start of the two lifts' shared segment. Twice the intersection number.
fn linked_pairs(ribbon: &RibbonGraph, word: &[Letter]) -> u64 {
    let n = word.len();
    let mut count = 0;
    for i in 0..n {
        let first = Lift {
            word,
            at: i,
            reversed: false,
        };
        let b1 = first.backward(0);
        for j in (0..n).filter(|&j| j != i) {
            let mut second = Lift {
                word,
                at: j,
                reversed: false,
            };
            if b1 == second.backward(0) || b1 == second.forward(0) {
                continue;
            }
            if first.forward(0) == second.backward(0) {
                second.reversed = true;
            }
            let (f1, f2, b2) = (first.forward(0), second.forward(0), second.backward(0));
            let linked = if f1 != f2 {
                ribbon.interleaved(f1, b1, f2, b2)
            } else {
                let mut k = 1;
                while k < n && first.forward(k) == second.forward(k) {
                    k += 1;
                }
                debug_assert!(
                    k < n,
                    "distinct lifts of a primitive curve share a full period"
                );
                let start = ribbon.before(f1, b1, b2);
                let end = ribbon.before(
                    first.forward(k - 1).inverse(),
                    first.forward(k),
                    second.forward(k),
                );
                start == end
            };
            count += linked as u64;
        }
    }
    count
}

/// Minimal self-intersection number of the free homotopy class `c`.
///
/// Primitive classes are handled by counting linked pairs of positions in the
/// cyclic word; a `k`-th power of a primitive class with intersection number
/// `i` has `k^2 i + k - 1`.
pub fn self_intersection(c: &CyclicClass, sig: &SurfaceSig) -> u64 {
    assert_eq!(c.rank(), sig.rank(), "class and surface ranks differ");
    let ribbon = RibbonGraph::new(sig);
    let (root, k) = c.primitive_root();
    let primitive = linked_pairs(&ribbon, root.word().letters()) / 2;
    let k = k as u64;
    k * k * primitive + k - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_surface;

    fn class(rank: usize, s: &str) -> CyclicClass {
        CyclicClass::parse(rank, s, false).unwrap()
    }

    fn torus() -> SurfaceSig {
        make_surface(1, 1).unwrap().0
    }

    #[test]
    fn torus_rotation() {
        let order: String = RibbonGraph::new(&torus())
            .cyclic_order()
            .iter()
            .map(|l| l.to_char())
            .collect();
        assert_eq!(order, "aBAb");
    }

    #[test]
    fn rotations_are_single_cycles() {
        for (g, r) in [(0, 4), (0, 6), (1, 2), (2, 1), (2, 3), (3, 1)] {
            let sig = make_surface(g, r).unwrap().0;
            assert_eq!(RibbonGraph::new(&sig).cyclic_order().len(), 2 * sig.rank());
        }
    }

    #[test]
    fn simple_curves_on_the_torus() {
        for w in ["a", "b", "ab", "aB", "aab", "abb", "abAB"] {
            assert_eq!(self_intersection(&class(2, w), &torus()), 0, "{w}");
        }
    }

    #[test]
    fn powers() {
        assert_eq!(self_intersection(&class(2, "aa"), &torus()), 1);
        assert_eq!(self_intersection(&class(2, "aaa"), &torus()), 2);
        assert_eq!(self_intersection(&class(2, "abABabAB"), &torus()), 1);
    }

    #[test]
    fn figure_eight_on_the_torus() {
        assert_eq!(self_intersection(&class(2, "abAb"), &torus()), 1);
    }

    #[test]
    fn planar_examples() {
        let sig = make_surface(0, 4).unwrap().0;
        for w in ["a", "b", "c", "ab", "bc", "abc"] {
            assert_eq!(self_intersection(&class(3, w), &sig), 0, "{w}");
        }
        assert_eq!(self_intersection(&class(3, "aB"), &sig), 1);
    }

    #[test]
    fn inversion_invariant() {
        let t = torus();
        for w in ["aabb", "aabAB", "abbAAB", "aaBaB"] {
            let c = CyclicClass::parse(2, w, true).unwrap();
            assert_eq!(
                self_intersection(&c, &t),
                self_intersection(&c.inverse(), &t),
                "{w}"
            );
        }
    }
}
