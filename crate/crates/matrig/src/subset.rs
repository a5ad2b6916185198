//! Ground-set subsets as fixed-width bitmasks, and simplicial complexes
//! stored as sorted face lists.

use std::fmt;

/// A subset of a ground set {0..n-1}, packed into a u32 bitmask.
/// Bits at or above the ground-set size must be zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_elems(elems: &[usize]) -> Subset {
        Subset(elems.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of a ground set of size n, in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        debug_assert!(n < 32);
        (0u32..1 << n).map(Subset)
    }

    /// All nonempty subsets of self, in increasing bitmask order.
    pub fn proper_and_improper_subsets(self) -> impl Iterator<Item = Subset> {
        // standard submask enumeration, ascending
        let m = self.0;
        let mut cur: Option<u32> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == m { None } else { Some((c.wrapping_sub(m)) & m) };
            Some(Subset(c))
        })
        .skip(1)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An abstract simplicial complex on ground set {0..n-1}, stored as the
/// sorted list of all faces (always downward closed).
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ground_n: usize,
    faces: Vec<Subset>,
}

impl Complex {
    /// Build from an arbitrary face list; sorts, dedups and checks closure
    /// downward.
    pub fn from_faces(ground_n: usize, mut faces: Vec<Subset>) -> Complex {
        faces.sort();
        faces.dedup();
        let c = Complex { ground_n, faces };
        debug_assert!(c.is_downward_closed());
        c
    }

    /// Build by evaluating a predicate on every subset. The predicate must
    /// be hereditary; this is checked.
    pub fn from_predicate(ground_n: usize, mut pred: impl FnMut(Subset) -> bool) -> Complex {
        let faces: Vec<Subset> = Subset::all(ground_n).filter(|&s| pred(s)).collect();
        let c = Complex { ground_n, faces };
        assert!(c.is_downward_closed(), "predicate was not hereditary");
        c
    }

    /// The full simplex 2^E.
    pub fn full_simplex(ground_n: usize) -> Complex {
        Complex {
            ground_n,
            faces: Subset::all(ground_n).collect(),
        }
    }

    /// The uniform matroid complex U(s, n): all subsets of size <= s.
    pub fn uniform(s: usize, ground_n: usize) -> Complex {
        Complex {
            ground_n,
            faces: Subset::all(ground_n).filter(|a| a.len() <= s).collect(),
        }
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn faces(&self) -> &[Subset] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.faces.binary_search(&s).is_ok()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|&f| {
            f.iter().all(|i| self.contains(f.remove(i)))
        }) && (self.faces.is_empty() || self.contains(Subset::EMPTY))
    }

    /// Maximal faces, sorted.
    pub fn facets(&self) -> Vec<Subset> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                (0..self.ground_n).all(|i| f.contains(i) || !self.contains(f.insert(i)))
            })
            .collect()
    }

    /// First face of self that is not a face of other, if any.
    pub fn subcomplex_violation(&self, other: &Complex) -> Option<Subset> {
        self.faces.iter().copied().find(|&f| !other.contains(f))
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.subcomplex_violation(other).is_none()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex(n={}, {} faces, facets {:?})",
            self.ground_n,
            self.faces.len(),
            self.facets()
        )
    }
}
