//! Brute-force enumeration of the photo space X_{k,d}(M) over small
//! finite fields, cellule bookkeeping, and the cellule-dimension
//! criterion for slope independence.
//!
//! A (k,d)-photo is a pair (phi, W_1..W_n) with phi: F^r -> F^d linear
//! and each W_i a k-plane containing phi(v_i). The census iterates every
//! phi and multiplies per-element plane counts; photos are counted, never
//! materialized, except in the fully literal validation mode. Nothing
//! here touches the Tutte polynomial, so the census is an independent
//! oracle for the counting formula.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf::{FFMatrix, FieldElement};
use crate::matroid::{LinearMatroid, MatroidError};
use crate::subset::Subset;
use crate::tutte::qbinomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhotoError {
    /// The enumeration would exceed the guard.
    TooLarge { work: u128, max: u128 },
    /// Need 0 < k < d.
    BadDimensions { k: u32, d: u32 },
    GroundSetTooLarge { n: usize, max: usize },
}

impl fmt::Display for PhotoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhotoError::TooLarge { work, max } => {
                write!(f, "enumeration of {work} states exceeds the guard {max}")
            }
            PhotoError::BadDimensions { k, d } => write!(f, "need 0 < k < d, got k={k}, d={d}"),
            PhotoError::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds the enumeration guard {max}")
            }
        }
    }
}

impl std::error::Error for PhotoError {}

impl From<MatroidError> for PhotoError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::GroundSetTooLarge { n, max } => PhotoError::GroundSetTooLarge { n, max },
            other => panic!("unexpected matroid error: {other}"),
        }
    }
}

/// Photo counts, total and broken down by cellule (the flat cut out of E
/// by the kernel of phi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhotoCensus {
    pub total: BigUint,
    pub by_flat: BTreeMap<Subset, BigUint>,
    pub q: u64,
    pub k: u32,
    pub d: u32,
}

impl PhotoCensus {
    /// Deterministic JSON rendering with big integers as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "total": self.total.to_string(),
            "cellules": self
                .by_flat
                .iter()
                .map(|(flat, count)| {
                    serde_json::json!({ "flat": flat.0, "count": count.to_string() })
                })
                .collect::<Vec<_>>(),
        })
    }
}

fn field_order_checked(m: &LinearMatroid) -> Result<u64, PhotoError> {
    match m.field().order_u128() {
        Some(q) if q <= 1 << 24 => Ok(q as u64),
        _ => Err(PhotoError::TooLarge { work: u128::MAX, max: 1 << 24 }),
    }
}

/// Enumerate the photo space by iterating every map phi in
/// Hom(F^r_ambient, F^d) and multiplying per-element k-plane counts:
/// [d, k]_q planes when phi(v_i) = 0, else [d-1, k-1]_q (the k-planes
/// through a fixed nonzero vector). Counts accrue into the cellule of
/// the kernel set {i : phi(v_i) = 0}, which is asserted to be a flat.
pub fn photo_count_brute(m: &LinearMatroid, k: u32, d: u32) -> Result<PhotoCensus, PhotoError> {
    if k == 0 || k >= d {
        return Err(PhotoError::BadDimensions { k, d });
    }
    let q = field_order_checked(m)?;
    let r = m.r_ambient();
    let n = m.n();
    let states = (q as u128)
        .checked_pow(d * r as u32)
        .filter(|&w| w <= 1 << 24)
        .ok_or(PhotoError::TooLarge { work: u128::MAX, max: 1 << 24 })?;

    let field = m.field().clone();
    let gr_all = qbinomial(d, k, q).expect("0 < k < d");
    let gr_through = qbinomial(d - 1, k - 1, q).expect("k-1 <= d-1");
    // powers of the two plane counts, up to n
    let mut pow_all = vec![BigUint::one()];
    let mut pow_through = vec![BigUint::one()];
    for i in 1..=n {
        pow_all.push(&pow_all[i - 1] * &gr_all);
        pow_through.push(&pow_through[i - 1] * &gr_through);
    }

    let mut total = BigUint::zero();
    let mut by_flat: BTreeMap<Subset, BigUint> = BTreeMap::new();
    let mut known_flats: HashSet<Subset> = HashSet::new();
    let mut phi: Vec<Vec<FieldElement>> = vec![vec![field.zero(); r]; d as usize];
    for state in 0..states {
        // decode the state into the d x r matrix phi
        let mut v = state;
        for row in phi.iter_mut() {
            for entry in row.iter_mut() {
                *entry = field.element_from_index((v % q as u128) as u64);
                v /= q as u128;
            }
        }
        let mut kernel = Subset::EMPTY;
        for i in 0..n {
            let col = m.column(i);
            let mut all_zero = true;
            for row in &phi {
                let mut acc = field.zero();
                for (a, entry) in row.iter().enumerate() {
                    acc = field.add(&acc, &field.mul(entry, &col[a]));
                }
                if !field.is_zero(&acc) {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                kernel = kernel.insert(i);
            }
        }
        if known_flats.insert(kernel) {
            assert_eq!(m.closure(kernel), kernel, "kernel set must be a flat");
        }
        let z = kernel.len();
        let count = &pow_all[z] * &pow_through[n - z];
        total += &count;
        *by_flat.entry(kernel).or_insert_with(BigUint::zero) += count;
    }
    Ok(PhotoCensus { total, by_flat, q, k, d })
}

/// All k-dimensional subspaces of F^d, as RREF basis matrices.
fn enumerate_subspaces(m: &LinearMatroid, k: u32, d: u32, q: u64) -> Vec<FFMatrix> {
    let field = m.field().clone();
    let states = (q as u128).pow(k * d);
    let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    let mut out = Vec::new();
    for state in 0..states {
        let mut v = state;
        let rows: Vec<Vec<FieldElement>> = (0..k)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let e = field.element_from_index((v % q as u128) as u64);
                        v /= q as u128;
                        e
                    })
                    .collect()
            })
            .collect();
        let mat = FFMatrix::from_rows(&field, rows);
        if mat.rank() != k as usize {
            continue;
        }
        let (rref, _) = mat.rref();
        let canonical: Vec<Vec<u64>> = (0..k as usize)
            .map(|i| {
                (0..d as usize)
                    .flat_map(|j| field.coeffs(rref.at(i, j)))
                    .collect()
            })
            .collect();
        if seen.insert(canonical) {
            out.push(rref);
        }
    }
    out
}

/// Fully literal census: iterate every phi AND count the marking planes
/// by explicit membership tests against an enumerated Grassmannian,
/// validating the closed-form plane counts used by the fast census.
pub fn photo_count_literal(m: &LinearMatroid, k: u32, d: u32) -> Result<PhotoCensus, PhotoError> {
    if k == 0 || k >= d {
        return Err(PhotoError::BadDimensions { k, d });
    }
    let q = field_order_checked(m)?;
    let r = m.r_ambient();
    let n = m.n();
    let gr = qbinomial(d, k, q).expect("0 < k < d");
    let work = (q as u128)
        .checked_pow(d * r as u32)
        .and_then(|maps| {
            let planes: u128 = gr.clone().try_into().ok()?;
            maps.checked_mul(planes.checked_pow(n as u32)?)
        })
        .filter(|&w| w <= 1 << 22)
        .ok_or(PhotoError::TooLarge { work: u128::MAX, max: 1 << 22 })?;
    let _ = work;

    let field = m.field().clone();
    let subspaces = enumerate_subspaces(m, k, d, q);
    assert_eq!(BigUint::from(subspaces.len()), gr, "Grassmannian size check");

    let contains = |w: &FFMatrix, x: &[FieldElement]| -> bool {
        let mut rows: Vec<Vec<FieldElement>> = (0..k as usize)
            .map(|i| (0..d as usize).map(|j| w.at(i, j).clone()).collect())
            .collect();
        rows.push(x.to_vec());
        FFMatrix::from_rows(&field, rows).rank() == k as usize
    };

    let states = (q as u128).pow(d * r as u32);
    let mut total = BigUint::zero();
    let mut by_flat: BTreeMap<Subset, BigUint> = BTreeMap::new();
    for state in 0..states {
        let mut v = state;
        let phi: Vec<Vec<FieldElement>> = (0..d as usize)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let e = field.element_from_index((v % q as u128) as u64);
                        v /= q as u128;
                        e
                    })
                    .collect()
            })
            .collect();
        let mut kernel = Subset::EMPTY;
        let mut count = BigUint::one();
        for i in 0..n {
            let col = m.column(i);
            let image: Vec<FieldElement> = phi
                .iter()
                .map(|row| {
                    let mut acc = field.zero();
                    for (a, entry) in row.iter().enumerate() {
                        acc = field.add(&acc, &field.mul(entry, &col[a]));
                    }
                    acc
                })
                .collect();
            if image.iter().all(|x| field.is_zero(x)) {
                kernel = kernel.insert(i);
            }
            let planes = subspaces.iter().filter(|w| contains(w, &image)).count();
            count *= BigUint::from(planes);
        }
        total += &count;
        *by_flat.entry(kernel).or_insert_with(BigUint::zero) += count;
    }
    Ok(PhotoCensus { total, by_flat, q, k, d })
}

/// Integer dimensions of the cellules, per flat:
/// dim X^F = d (r - r(F)) + (n - |F|)(k-1)(d-k) + |F| k (d-k),
/// with r the rank of the spanning reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CelluleDims {
    pub dims: BTreeMap<Subset, u64>,
    pub k: u32,
    pub d: u32,
}

pub fn cellule_dims(m: &LinearMatroid, k: u32, d: u32) -> Result<CelluleDims, PhotoError> {
    if k == 0 || k >= d {
        return Err(PhotoError::BadDimensions { k, d });
    }
    let n = m.n();
    if n > 20 {
        return Err(PhotoError::GroundSetTooLarge { n, max: 20 });
    }
    let r = m.rank() as u64;
    let (k, d, n) = (k as u64, d as u64, n as u64);
    let mut dims = BTreeMap::new();
    for flat in m.flats()? {
        let rf = m.rank_of(flat) as u64;
        let size = flat.len() as u64;
        let dim = d * (r - rf) + (n - size) * (k - 1) * (d - k) + size * k * (d - k);
        dims.insert(flat, dim);
    }
    Ok(CelluleDims { dims, k: k as u32, d: d as u32 })
}

/// The dimension criterion for slope independence: every nonempty flat's
/// cellule must be strictly smaller than the non-annihilating cellule.
/// With loops present the non-annihilating cellule is empty and the
/// matroid is slope dependent outright.
pub fn slope_independent_via_dims(m: &LinearMatroid, k: u32, d: u32) -> Result<bool, PhotoError> {
    if !m.is_loopless() {
        if k == 0 || k >= d {
            return Err(PhotoError::BadDimensions { k, d });
        }
        return Ok(false);
    }
    let dims = cellule_dims(m, k, d)?;
    let empty_dim = dims.dims[&Subset::EMPTY];
    Ok(dims
        .dims
        .iter()
        .all(|(flat, &dim)| flat.is_empty() || dim < empty_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::laman::slope_complex;
    use crate::matroid;
    use crate::tutte::photo_count_formula;

    fn f(p: u64) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    #[test]
    fn loop_and_isthmus_counts() {
        let f2 = f(2);
        let lp = LinearMatroid::from_int_columns(&f2, &[vec![]], 0).unwrap();
        let census = photo_count_brute(&lp, 1, 2).unwrap();
        assert_eq!(census.total, BigUint::from(3u32));
        assert_eq!(census.by_flat[&Subset::singleton(0)], BigUint::from(3u32));

        let iso = LinearMatroid::from_int_columns(&f2, &[vec![1]], 1).unwrap();
        let census = photo_count_brute(&iso, 1, 2).unwrap();
        assert_eq!(census.total, BigUint::from(6u32));
        // kernel empty for the 1 nonzero map images... 1 zero map contributes Gr
        assert_eq!(census.by_flat[&Subset::EMPTY], BigUint::from(3u32));
        assert_eq!(census.by_flat[&Subset::singleton(0)], BigUint::from(3u32));
    }

    #[test]
    fn u23_matches_formula() {
        let m = matroid::u23(&f(2));
        let census = photo_count_brute(&m, 1, 2).unwrap();
        assert_eq!(census.total, photo_count_formula(&m, 1, 2, 2).unwrap());
    }

    #[test]
    fn census_consistency() {
        let m = matroid::u23(&f(3));
        let census = photo_count_brute(&m, 1, 2).unwrap();
        let sum: BigUint = census.by_flat.values().sum();
        assert_eq!(sum, census.total);
        for flat in census.by_flat.keys() {
            assert_eq!(m.closure(*flat), *flat);
        }
        // degenerate cellule: the zero map contributes the full power of
        // the Grassmannian
        let gr = qbinomial(2, 1, 3).unwrap();
        assert_eq!(census.by_flat[&Subset::full(3)], gr.pow(3));
    }

    #[test]
    fn padded_zero_row_multiplies_by_q_to_the_d() {
        let field = f(3);
        let m = matroid::u23(&field);
        let padded_cols: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 0]];
        let padded = LinearMatroid::from_int_columns(&field, &padded_cols, 3).unwrap();
        for (k, d) in [(1u32, 2u32), (1, 3), (2, 3)] {
            let base = photo_count_brute(&m, k, d).unwrap().total;
            let bigger = photo_count_brute(&padded, k, d).unwrap().total;
            assert_eq!(bigger, base * BigUint::from(3u64).pow(d));
        }
    }

    #[test]
    fn literal_mode_agrees_with_counting_shortcut() {
        let f2 = f(2);
        for (m, k, d) in [
            (matroid::u23(&f2), 1u32, 2u32),
            (LinearMatroid::from_int_columns(&f2, &[vec![1], vec![1]], 1).unwrap(), 1, 2),
            (matroid::u23(&f(3)), 1, 2),
        ] {
            let fast = photo_count_brute(&m, k, d).unwrap();
            let literal = photo_count_literal(&m, k, d).unwrap();
            assert_eq!(fast, literal);
        }
    }

    #[test]
    fn formula_agrees_over_an_extension_field() {
        // GF(4): the enumeration walks packed coefficient vectors
        let f4 = FiniteField::new(2, 2).unwrap();
        let m = matroid::u23(&f4);
        for (k, d) in [(1u32, 2u32), (1, 3), (2, 3)] {
            let census = photo_count_brute(&m, k, d).unwrap();
            assert_eq!(census.total, photo_count_formula(&m, k, d, 4).unwrap());
        }
    }

    #[test]
    fn formula_agrees_with_loops_and_isthmuses_mixed() {
        let f2 = f(2);
        let cols: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![0, 1]];
        let m = LinearMatroid::from_int_columns(&f2, &cols, 2).unwrap();
        for (k, d) in [(1u32, 2u32), (1, 3), (2, 3)] {
            let census = photo_count_brute(&m, k, d).unwrap();
            assert_eq!(census.total, photo_count_formula(&m, k, d, 2).unwrap());
            let sum: BigUint = census.by_flat.values().sum();
            assert_eq!(sum, census.total);
            // every kernel flat contains the loop
            assert!(census.by_flat.keys().all(|flat| flat.contains(0)));
        }
    }

    #[test]
    fn cellule_dimension_formula() {
        let m = matroid::u23(&f(5));
        let dims = cellule_dims(&m, 1, 2).unwrap();
        // F = empty: dr + n(k-1)(d-k) = 2*2 + 0 = 4
        assert_eq!(dims.dims[&Subset::EMPTY], 4);
        // F = a point: d(r - 1) + 0 + 1*k(d-k) = 2 + 1 = 3
        assert_eq!(dims.dims[&Subset::singleton(0)], 3);
        // F = E: nk(d-k) = 3 (the degenerate cellule Gr(k)^n)
        assert_eq!(dims.dims[&Subset::full(3)], 3);
    }

    #[test]
    fn dimension_criterion_examples() {
        let field = f(10007);
        assert!(slope_independent_via_dims(&matroid::u23(&field), 1, 2).unwrap());
        let k4 = matroid::graphic(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)],
            &field,
        )
        .unwrap();
        assert!(!slope_independent_via_dims(&k4, 1, 2).unwrap());
        let u24 = matroid::uniform(2, 4, &field).unwrap();
        assert!(!slope_independent_via_dims(&u24, 1, 3).unwrap());
    }

    #[test]
    fn dimension_criterion_matches_slope_complex_membership() {
        let field = f(10007);
        let suite = [
            matroid::u23(&field),
            matroid::uniform(2, 4, &field).unwrap(),
            matroid::uniform(3, 5, &field).unwrap(),
            matroid::fano(),
        ];
        for m in &suite {
            for (k, d) in [(1u32, 2u32), (1, 3), (2, 3)] {
                let via_dims = slope_independent_via_dims(m, k, d).unwrap();
                let complex = slope_complex(m, k as usize, d as usize).unwrap();
                assert_eq!(via_dims, complex.contains(m.ground_set()));
            }
        }
    }

    #[test]
    fn guards() {
        let m = matroid::u23(&f(10007));
        assert!(matches!(
            photo_count_brute(&m, 1, 2),
            Err(PhotoError::TooLarge { .. })
        ));
        assert!(matches!(
            photo_count_brute(&matroid::u23(&f(2)), 0, 2),
            Err(PhotoError::BadDimensions { .. })
        ));
    }
}
