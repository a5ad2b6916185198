//! Linear (represented) matroids: rank, closure and flat oracles, minor
//! operations, and constructors for the example matroids used throughout
//! the crate.
//!
//! A matroid is a set of column vectors over a finite field; the ground
//! set is identified with {0..n-1}. Loops (zero columns) are permitted
//! and flagged; the operations that need looplessness reject them.

use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::{FFMatrix, FieldElement, FiniteField};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidError {
    /// A column had the wrong length for the ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// An enumeration guard was exceeded.
    GroundSetTooLarge { n: usize, max: usize },
    /// A graph edge referenced a vertex outside the declared range.
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    /// The field has too few elements for the requested construction.
    FieldTooSmall,
    /// laman_counterexample was called with an integer slope.
    IntegerSlope,
    /// The slope must lie strictly between 1 and infinity.
    SlopeOutOfRange,
    /// u24 requires mu outside {0, 1}.
    InvalidMu,
    /// Operands of a direct sum must share a field.
    FieldMismatch,
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::DimensionMismatch { expected, got } => {
                write!(f, "column length {got} does not match ambient dimension {expected}")
            }
            MatroidError::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds the enumeration guard {max}")
            }
            MatroidError::VertexOutOfRange { vertex, n_vertices } => {
                write!(f, "edge endpoint {vertex} out of range for {n_vertices} vertices")
            }
            MatroidError::FieldTooSmall => write!(f, "field too small for this construction"),
            MatroidError::IntegerSlope => write!(f, "slope m is an integer"),
            MatroidError::SlopeOutOfRange => write!(f, "slope m must satisfy m > 1"),
            MatroidError::InvalidMu => write!(f, "mu must avoid 0 and 1"),
            MatroidError::FieldMismatch => write!(f, "matroids are over different fields"),
        }
    }
}

impl std::error::Error for MatroidError {}

/// Exhaustive post-condition checks (rank identities for minors, uniform
/// rank verification) run whenever the ground set is at most this large.
const VERIFY_LIMIT: usize = 12;

/// A matroid represented by explicit vectors over a finite field.
/// Immutable after construction; all oracles are pure.
#[derive(Clone)]
pub struct LinearMatroid {
    field: FiniteField,
    /// column i is v_{i+1}; each has length r_ambient
    columns: Vec<Vec<FieldElement>>,
    r_ambient: usize,
}

impl fmt::Debug for LinearMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearMatroid(n={}, r_ambient={}, field={:?})",
            self.columns.len(),
            self.r_ambient,
            self.field
        )
    }
}

impl LinearMatroid {
    /// Build from explicit column vectors.
    pub fn from_matrix(
        field: &FiniteField,
        columns: Vec<Vec<FieldElement>>,
        r_ambient: usize,
    ) -> Result<LinearMatroid, MatroidError> {
        for c in &columns {
            if c.len() != r_ambient {
                return Err(MatroidError::DimensionMismatch {
                    expected: r_ambient,
                    got: c.len(),
                });
            }
        }
        Ok(LinearMatroid {
            field: field.clone(),
            columns,
            r_ambient,
        })
    }

    /// Convenience constructor from integer entries (reduced into the field).
    pub fn from_int_columns(
        field: &FiniteField,
        columns: &[Vec<i64>],
        r_ambient: usize,
    ) -> Result<LinearMatroid, MatroidError> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_matrix(field, cols, r_ambient)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn r_ambient(&self) -> usize {
        self.r_ambient
    }

    pub fn columns(&self) -> &[Vec<FieldElement>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[FieldElement] {
        &self.columns[i]
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n())
    }

    fn submatrix(&self, a: Subset) -> FFMatrix {
        // columns of A as a r_ambient x |A| matrix (explicit shape, so an
        // ambient dimension of zero still yields 0 x |A|)
        let mut mat = FFMatrix::zeros(&self.field, self.r_ambient, a.len());
        for (j, i) in a.iter().enumerate() {
            for r in 0..self.r_ambient {
                mat.set(r, j, self.columns[i][r].clone());
            }
        }
        mat
    }

    /// Rank of a subset of the ground set; rank_of(empty) = 0.
    pub fn rank_of(&self, a: Subset) -> usize {
        if a.is_empty() {
            return 0;
        }
        self.submatrix(a).rank()
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank_of(self.ground_set())
    }

    pub fn is_independent(&self, a: Subset) -> bool {
        self.rank_of(a) == a.len()
    }

    /// The set of loops (zero columns).
    pub fn loops(&self) -> Subset {
        let mut s = Subset::EMPTY;
        for (i, c) in self.columns.iter().enumerate() {
            if c.iter().all(|x| self.field.is_zero(x)) {
                s = s.insert(i);
            }
        }
        s
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// Does column j lie in the span of the given columns?
    fn in_span(&self, j: usize, basis: Subset) -> bool {
        let with = basis.insert(j);
        if with == basis {
            return true;
        }
        self.rank_of(with) == basis.len()
    }

    /// Ranks of every subset, indexed by bitmask. Computed incrementally:
    /// each subset extends its predecessor by one element, so a single
    /// span-membership test per subset suffices.
    pub fn rank_table(&self) -> Result<Vec<u8>, MatroidError> {
        let n = self.n();
        if n > 22 {
            return Err(MatroidError::GroundSetTooLarge { n, max: 22 });
        }
        let mut basis = vec![0u32; 1 << n];
        let mut rank = vec![0u8; 1 << n];
        let mut span_cache: HashMap<(u32, usize), bool> = HashMap::new();
        for mask in 1u32..(1 << n) {
            let j = mask.trailing_zeros() as usize;
            let prev = mask & (mask - 1);
            let b = basis[prev as usize];
            let in_span = *span_cache
                .entry((b, j))
                .or_insert_with(|| self.in_span(j, Subset(b)));
            if in_span {
                basis[mask as usize] = b;
                rank[mask as usize] = rank[prev as usize];
            } else {
                basis[mask as usize] = b | (1 << j);
                rank[mask as usize] = rank[prev as usize] + 1;
            }
        }
        Ok(rank)
    }

    /// Matroid closure: all i with rank(A + i) = rank(A). Contains A and
    /// every loop; idempotent.
    pub fn closure(&self, a: Subset) -> Subset {
        // greedy independent spanning subset of A
        let mut basis = Subset::EMPTY;
        for i in a.iter() {
            if !self.in_span(i, basis) {
                basis = basis.insert(i);
            }
        }
        let mut cl = a;
        for i in 0..self.n() {
            if !cl.contains(i) && self.in_span(i, basis) {
                cl = cl.insert(i);
            }
        }
        cl
    }

    /// All flats (closed sets), sorted by cardinality then bitmask. The
    /// result equals the image of `closure` over every subset; it is
    /// generated by the standard cover walk up the flat lattice.
    pub fn flats(&self) -> Result<Vec<Subset>, MatroidError> {
        let n = self.n();
        if n > 25 {
            return Err(MatroidError::GroundSetTooLarge { n, max: 25 });
        }
        let bottom = self.closure(Subset::EMPTY);
        let mut seen: std::collections::BTreeSet<Subset> = [bottom].into();
        let mut work = vec![bottom];
        while let Some(f) = work.pop() {
            for i in 0..n {
                if !f.contains(i) {
                    let g = self.closure(f.insert(i));
                    if seen.insert(g) {
                        work.push(g);
                    }
                }
            }
        }
        let mut flats: Vec<Subset> = seen.into_iter().collect();
        flats.sort_by_key(|f| (f.len(), f.0));
        Ok(flats)
    }

    /// Deletion M \ A: drop the columns of A, preserving order.
    pub fn delete(&self, a: Subset) -> LinearMatroid {
        let columns = (0..self.n())
            .filter(|&i| !a.contains(i))
            .map(|i| self.columns[i].clone())
            .collect();
        LinearMatroid {
            field: self.field.clone(),
            columns,
            r_ambient: self.r_ambient,
        }
    }

    /// Restriction M|_A: drop everything outside A.
    pub fn restriction(&self, a: Subset) -> LinearMatroid {
        self.delete(self.ground_set().minus(a))
    }

    /// Contraction M / A, realized by projecting the surviving columns to
    /// a complement of span(A). The rank identity
    /// r_{M/A}(B) = r(A u B) - r(A) is verified exhaustively on small
    /// ground sets.
    pub fn contract(&self, a: Subset) -> LinearMatroid {
        // RREF basis of span(columns of A), rows of |A| x r_ambient
        let vectors: Vec<Vec<FieldElement>> =
            a.iter().map(|i| self.columns[i].clone()).collect();
        let (rref, pivots) = if vectors.is_empty() {
            (FFMatrix::zeros(&self.field, 0, self.r_ambient), vec![])
        } else {
            FFMatrix::from_rows(&self.field, vectors).rref()
        };
        let k = pivots.len();
        let f = &self.field;
        let keep: Vec<usize> = (0..self.r_ambient).filter(|c| !pivots.contains(c)).collect();
        let survivors: Vec<usize> = (0..self.n()).filter(|&i| !a.contains(i)).collect();
        let columns: Vec<Vec<FieldElement>> = survivors
            .iter()
            .map(|&i| {
                let mut v = self.columns[i].clone();
                for (r, &p) in pivots.iter().enumerate() {
                    let factor = v[p].clone();
                    if f.is_zero(&factor) {
                        continue;
                    }
                    for c in 0..self.r_ambient {
                        let delta = f.mul(&factor, rref.at(r, c));
                        v[c] = f.sub(&v[c], &delta);
                    }
                }
                keep.iter().map(|&c| v[c].clone()).collect()
            })
            .collect();
        let minor = LinearMatroid {
            field: self.field.clone(),
            columns,
            r_ambient: self.r_ambient - k,
        };
        if minor.n() <= VERIFY_LIMIT {
            let ra = self.rank_of(a);
            for b in Subset::all(minor.n()) {
                let orig: Subset = b
                    .iter()
                    .fold(a, |acc, j| acc.insert(survivors[j]));
                assert_eq!(
                    minor.rank_of(b),
                    self.rank_of(orig) - ra,
                    "contraction rank identity failed"
                );
            }
        }
        minor
    }

    /// The spanning reduction: the same matroid re-coordinatized so that
    /// its columns span the ambient space. Returns the reduced matroid and
    /// the ambient deficiency r_ambient - r(M).
    pub fn spanning_reduction(&self) -> (LinearMatroid, usize) {
        let full = self.submatrix(self.ground_set());
        let (rref, pivots) = full.rref();
        let r = pivots.len();
        if r == self.r_ambient {
            return (self.clone(), 0);
        }
        // row operations preserve column dependencies, so the nonzero rows
        // of the RREF represent the same matroid
        let columns: Vec<Vec<FieldElement>> = (0..self.n())
            .map(|j| (0..r).map(|i| rref.at(i, j).clone()).collect())
            .collect();
        (
            LinearMatroid {
                field: self.field.clone(),
                columns,
                r_ambient: r,
            },
            self.r_ambient - r,
        )
    }

    /// The dual matroid, represented by a basis of the nullspace of the
    /// (spanning-reduced) representation matrix.
    pub fn dual(&self) -> LinearMatroid {
        let (reduced, _) = self.spanning_reduction();
        let n = reduced.n();
        if n == 0 {
            return LinearMatroid {
                field: self.field.clone(),
                columns: vec![],
                r_ambient: 0,
            };
        }
        let m = reduced.submatrix(reduced.ground_set());
        let basis = m.nullspace_basis();
        let co_r = basis.len();
        debug_assert_eq!(co_r, n - reduced.r_ambient());
        let columns: Vec<Vec<FieldElement>> = (0..n)
            .map(|j| basis.iter().map(|v| v[j].clone()).collect())
            .collect();
        let dual = LinearMatroid {
            field: self.field.clone(),
            columns,
            r_ambient: co_r,
        };
        if n <= VERIFY_LIMIT {
            let r_e = self.rank();
            for b in Subset::all(n) {
                let complement = Subset::full(n).minus(b);
                assert_eq!(
                    dual.rank_of(b),
                    b.len() + self.rank_of(complement) - r_e,
                    "dual rank identity failed"
                );
            }
        }
        dual
    }

    /// Direct sum: block-diagonal stacking of the two representations.
    pub fn direct_sum(&self, other: &LinearMatroid) -> Result<LinearMatroid, MatroidError> {
        if self.field != other.field {
            return Err(MatroidError::FieldMismatch);
        }
        let f = &self.field;
        let r = self.r_ambient + other.r_ambient;
        let mut columns = Vec::with_capacity(self.n() + other.n());
        for c in &self.columns {
            let mut v = c.clone();
            v.extend(std::iter::repeat_with(|| f.zero()).take(other.r_ambient));
            columns.push(v);
        }
        for c in &other.columns {
            let mut v: Vec<FieldElement> =
                std::iter::repeat_with(|| f.zero()).take(self.r_ambient).collect();
            v.extend(c.iter().cloned());
            columns.push(v);
        }
        Ok(LinearMatroid {
            field: self.field.clone(),
            columns,
            r_ambient: r,
        })
    }

    /// The t-fold parallel extension: each column duplicated t times, copies
    /// of element i occupying positions t*i .. t*i+t-1.
    pub fn parallel_extension(&self, t: usize) -> LinearMatroid {
        assert!(t >= 1, "parallel extension needs at least one copy");
        let columns = self
            .columns
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.clone(), t))
            .collect();
        LinearMatroid {
            field: self.field.clone(),
            columns,
            r_ambient: self.r_ambient,
        }
    }
}

// ---------------------------------------------------------------------------
// constructors for the example matroids
// ---------------------------------------------------------------------------

/// The graphic matroid of a graph: column e_i - e_j per edge {i, j}.
/// Self-loops become zero columns.
pub fn graphic(
    n_vertices: usize,
    edges: &[(usize, usize)],
    field: &FiniteField,
) -> Result<LinearMatroid, MatroidError> {
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n_vertices {
                return Err(MatroidError::VertexOutOfRange { vertex: w, n_vertices });
            }
        }
    }
    let columns = edges
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![field.zero(); n_vertices];
            c[u] = field.add(&c[u], &field.one());
            c[v] = field.sub(&c[v], &field.one());
            c
        })
        .collect();
    LinearMatroid::from_matrix(field, columns, n_vertices)
}

/// The uniform matroid U(r, n) realized by Vandermonde columns
/// (1, t, t^2, ..., t^{r-1}) at n distinct field points. Requires a field
/// with at least n elements; uniformity is verified on construction for
/// n <= 12.
pub fn uniform(r: usize, n: usize, field: &FiniteField) -> Result<LinearMatroid, MatroidError> {
    if field.order_u128().is_some_and(|q| q < n as u128) {
        return Err(MatroidError::FieldTooSmall);
    }
    let columns: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            let t = field.element_from_index(i as u64);
            let mut c = Vec::with_capacity(r);
            let mut power = field.one();
            for _ in 0..r {
                c.push(power.clone());
                power = field.mul(&power, &t);
            }
            c
        })
        .collect();
    let m = LinearMatroid::from_matrix(field, columns, r)?;
    if n <= VERIFY_LIMIT {
        for a in Subset::all(n) {
            assert_eq!(
                m.rank_of(a),
                a.len().min(r),
                "Vandermonde construction failed to be uniform"
            );
        }
    }
    Ok(m)
}

/// U(2,3) by its standard representation {e1, e1+e2, e2} (valid over any
/// field).
pub fn u23(field: &FiniteField) -> LinearMatroid {
    LinearMatroid::from_int_columns(field, &[vec![1, 0], vec![1, 1], vec![0, 1]], 2).unwrap()
}

/// U(2,4) by the representation {e1, e1+e2, e2, e1+mu*e2}; mu must avoid
/// 0 and 1, so the field needs more than two elements.
pub fn u24(field: &FiniteField, mu: &FieldElement) -> Result<LinearMatroid, MatroidError> {
    if field.is_zero(mu) || *mu == field.one() {
        return Err(MatroidError::InvalidMu);
    }
    let one = field.one();
    let zero = field.zero();
    LinearMatroid::from_matrix(
        field,
        vec![
            vec![one.clone(), zero.clone()],
            vec![one.clone(), one.clone()],
            vec![zero.clone(), one.clone()],
            vec![one.clone(), mu.clone()],
        ],
        2,
    )
}

/// The Fano matroid: the seven nonzero vectors of GF(2)^3, column i being
/// the binary digits of i+1.
pub fn fano() -> LinearMatroid {
    let f2 = FiniteField::new(2, 1).unwrap();
    let columns = (1u64..8)
        .map(|v| (0..3).map(|bit| f2.from_u64((v >> bit) & 1)).collect())
        .collect();
    LinearMatroid::from_matrix(&f2, columns, 3).unwrap()
}

const GRID_E: [[i64; 3]; 9] = [
    [1, 0, 0], [1, 0, 1], [1, 0, 2],
    [1, 1, 0], [1, 1, 1], [1, 1, 2],
    [1, 2, 0], [1, 2, 1], [1, 2, 2],
];

const GRID_E_PRIME: [[i64; 3]; 9] = [
    [1, 0, 0], [1, 0, 1], [1, 0, 3],
    [1, 2, 0], [1, 2, 1], [1, 2, 3],
    [1, 3, 0], [1, 4, 1], [1, 6, 3],
];

/// The two projectively inequivalent nine-point planar configurations,
/// embedded in a prime field with p > 7 (10007 by default elsewhere).
/// Both are rank 3 with exactly eight 3-point lines; this is verified on
/// construction.
pub fn grid_examples(
    field: &FiniteField,
) -> Result<(LinearMatroid, LinearMatroid), MatroidError> {
    if field.degree() != 1 || field.characteristic() <= 7 {
        return Err(MatroidError::FieldTooSmall);
    }
    let build = |pts: &[[i64; 3]; 9]| -> Result<LinearMatroid, MatroidError> {
        let cols: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
        let m = LinearMatroid::from_int_columns(field, &cols, 3)?;
        assert_eq!(m.rank(), 3);
        let lines: Vec<Subset> = m
            .flats()?
            .into_iter()
            .filter(|&fl| m.rank_of(fl) == 2 && fl.len() >= 3)
            .collect();
        assert_eq!(lines.len(), 8, "grid example must have exactly 8 lines");
        assert!(lines.iter().all(|l| l.len() == 3));
        Ok(m)
    };
    Ok((build(&GRID_E)?, build(&GRID_E_PRIME)?))
}

/// The represented matroid M_{a,b,c} whose m-Laman complex violates the
/// exchange axiom for a non-integer slope m = num/den > 1. The parameters
/// (b, r) are the least pair with (2r-1)/(2b-1) < m - floor(m) <= r/b,
/// a = b*floor(m) + r, and the ground set is c collinear points on the
/// intersection line of two b-dimensional subspaces of F^(2b-1) together
/// with a - c generic points in each subspace.
pub fn laman_counterexample(
    m_num: u64,
    m_den: u64,
    field: &FiniteField,
    seed: u64,
) -> Result<LinearMatroid, MatroidError> {
    assert!(m_den > 0);
    let g = num_integer::gcd(m_num, m_den);
    let (num, den) = (m_num / g, m_den / g);
    if num <= den {
        return Err(MatroidError::SlopeOutOfRange);
    }
    if den == 1 {
        return Err(MatroidError::IntegerSlope);
    }
    let c = num / den;
    let frac_num = num - c * den; // fractional part = frac_num / den, in (0,1)
    let mut bb = 0u64;
    let mut rr = 0u64;
    for b in 1..=1_000_000u64 {
        let r = (frac_num * b).div_ceil(den); // least r with frac <= r/b
        if (2 * r - 1) * den < frac_num * (2 * b - 1) {
            bb = b;
            rr = r;
            break;
        }
    }
    assert!(bb > 0, "interval exhaustion failed to terminate");
    let (b, r) = (bb as usize, rr as usize);
    let a = b * c as usize + r;
    let dim = 2 * b - 1;
    if field.order_u128().is_some_and(|q| q <= c as u128) {
        return Err(MatroidError::FieldTooSmall);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'resample: for _attempt in 0..64 {
        let mut columns: Vec<Vec<FieldElement>> = Vec::new();
        // X: c distinct nonzero multiples of e_b (coordinate b-1)
        for k in 0..c {
            let mut v = vec![field.zero(); dim];
            v[b - 1] = field.from_u64(k + 1);
            columns.push(v);
        }
        // Y_1 in coordinates {0..b-1}, Y_2 in coordinates {b-1..2b-2}
        let mut sides: Vec<Vec<Vec<FieldElement>>> = Vec::new();
        for side in 0..2 {
            let offset = if side == 0 { 0 } else { b - 1 };
            let mut ys = Vec::new();
            for _ in 0..(a - c as usize) {
                let mut v = vec![field.zero(); dim];
                for coord in 0..b {
                    v[offset + coord] = field.random(&mut rng);
                }
                ys.push(v);
            }
            sides.push(ys);
        }
        // validate genericity of each Y_i (optionally augmented by e_b)
        let mut e_b = vec![field.zero(); dim];
        e_b[b - 1] = field.one();
        for ys in &sides {
            let mut vectors = ys.clone();
            vectors.push(e_b.clone());
            let probe = LinearMatroid::from_matrix(field, vectors, dim)?;
            for j in Subset::all(probe.n()) {
                if probe.rank_of(j) != j.len().min(b) {
                    continue 'resample;
                }
            }
        }
        for ys in sides {
            columns.extend(ys);
        }
        return LinearMatroid::from_matrix(field, columns, dim);
    }
    Err(MatroidError::FieldTooSmall)
}
