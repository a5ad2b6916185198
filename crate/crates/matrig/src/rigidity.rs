//! Randomized-generic computation of the rigidity, hyperplane-marking and
//! parallel matroids, their nullspace witnesses, the nesting checker,
//! stabilization, and the projective-invariance probe.
//!
//! Genericity is realized by random specialization over a field of order
//! at least 2^60 with the same characteristic as the matroid, instead of
//! symbolic arithmetic in the transcendentals. Every certificate is a
//! determinant of total degree at most n in the transcendentals, so by
//! Schwartz-Zippel a declared complex is a subcomplex of the true one in
//! each trial and equals it except with probability at most the reported
//! failure bound. Declared independence is always sound; only spurious
//! dependence is probabilistic, and extra trials only grow the complex.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::{FFMatrix, FieldElement, FiniteField};
use crate::laman::{laman_complex, slope_complex, LamanError, RationalSlope};
use crate::matroid::{self, LinearMatroid, MatroidError};
use crate::subset::{Complex, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityError {
    LoopPresent,
    /// mu must avoid 0 and 1 for the U(2,4) representation.
    BadMu,
    GroundSetTooLarge { n: usize, max: usize },
    BadDimensions(String),
    /// Randomized complexes need at least two trials.
    TooFewTrials,
    /// The quadratic-form reading of the rigidity nullspace needs
    /// characteristic different from 2.
    CharacteristicTwoQuadratic,
    /// Sampling lifts matroid entries into a big field of the same
    /// characteristic; representations over proper extension fields have
    /// no canonical lift and are not supported here.
    UnsupportedSamplingField,
    Laman(String),
}

impl fmt::Display for RigidityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityError::LoopPresent => write!(f, "matroid must be loopless"),
            RigidityError::BadMu => write!(f, "mu must avoid 0 and 1"),
            RigidityError::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds the enumeration guard {max}")
            }
            RigidityError::BadDimensions(why) => write!(f, "bad dimensions: {why}"),
            RigidityError::TooFewTrials => write!(f, "need at least 2 trials"),
            RigidityError::CharacteristicTwoQuadratic => {
                write!(f, "quadratic-form interpretation needs characteristic != 2")
            }
            RigidityError::UnsupportedSamplingField => {
                write!(f, "sampling requires a matroid over a prime field")
            }
            RigidityError::Laman(why) => write!(f, "laman: {why}"),
        }
    }
}

impl std::error::Error for RigidityError {}

impl From<LamanError> for RigidityError {
    fn from(e: LamanError) -> Self {
        RigidityError::Laman(e.to_string())
    }
}

impl From<MatroidError> for RigidityError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::GroundSetTooLarge { n, max } => {
                RigidityError::GroundSetTooLarge { n, max }
            }
            other => panic!("unexpected matroid error: {other}"),
        }
    }
}

/// splitmix64, used to derive independent subseeds per (trial, purpose).
fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A sampling field of the same characteristic as the given field, with
/// order at least 2^60. Matroids over proper extension fields are
/// rejected: their entries have no canonical lift into an independently
/// chosen bigger extension.
pub fn sampling_field_for(field: &FiniteField) -> Result<FiniteField, RigidityError> {
    if field.degree() != 1 {
        return Err(RigidityError::UnsupportedSamplingField);
    }
    let p = field.characteristic();
    if (p as u128) >= (1 << 60) {
        return Ok(field.clone());
    }
    let mut order: u128 = 1;
    let mut s = 0u32;
    while order < (1 << 60) {
        order *= p as u128;
        s += 1;
    }
    Ok(FiniteField::new(p, s).expect("p is prime"))
}

/// One generic specialization: a random map phi together with exact
/// normals eta_i to each image phi(v_i), over a field of order >= 2^60.
#[derive(Clone, Debug)]
pub struct GenericSample {
    pub field: FiniteField,
    pub d: usize,
    /// the matroid's columns lifted into the sampling field
    pub columns: Vec<Vec<FieldElement>>,
    /// d x r matrix, row major
    pub phi: Vec<Vec<FieldElement>>,
    /// images phi(v_i), one vector of length d per element
    pub images: Vec<Vec<FieldElement>>,
    /// nonzero normals with <eta_i, phi(v_i)> = 0, exactly
    pub etas: Vec<Vec<FieldElement>>,
    pub seed: u64,
    pub trials: u32,
}

impl GenericSample {
    /// The values Q(phi(v_i)) of the standard quadratic form, available
    /// only away from characteristic 2 where Q carries the rigidity
    /// interpretation.
    pub fn quadratic_values(&self) -> Result<Vec<FieldElement>, RigidityError> {
        if self.field.characteristic() == 2 {
            return Err(RigidityError::CharacteristicTwoQuadratic);
        }
        Ok(self
            .images
            .iter()
            .map(|x| {
                let mut acc = self.field.zero();
                for xi in x {
                    acc = self.field.add(&acc, &self.field.mul(xi, xi));
                }
                acc
            })
            .collect())
    }
}

fn apply_matrix(
    field: &FiniteField,
    mat: &[Vec<FieldElement>],
    v: &[FieldElement],
) -> Vec<FieldElement> {
    mat.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (a, entry) in row.iter().enumerate() {
                acc = field.add(&acc, &field.mul(entry, &v[a]));
            }
            acc
        })
        .collect()
}

/// Draw phi uniformly (resampling the measure-zero event that some
/// phi(v_i) vanishes) and each eta_i uniformly from the punctured
/// hyperplane normal to phi(v_i), via a solved basis of that hyperplane.
pub fn sample_generic(
    m: &LinearMatroid,
    d: usize,
    seed: u64,
) -> Result<GenericSample, RigidityError> {
    if !m.is_loopless() {
        return Err(RigidityError::LoopPresent);
    }
    assert!(d >= 1, "dimension must be positive");
    let fs = sampling_field_for(m.field())?;
    let r = m.r_ambient();
    let columns: Vec<Vec<FieldElement>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|e| fs.from_u64(m.field().coeffs(e)[0])).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, PHI_TAG));
    let mut phi;
    let mut images: Vec<Vec<FieldElement>>;
    let mut attempts = 0;
    loop {
        phi = (0..d)
            .map(|_| (0..r).map(|_| fs.random(&mut rng)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        images = columns.iter().map(|c| apply_matrix(&fs, &phi, c)).collect();
        if images.iter().all(|x| x.iter().any(|e| !fs.is_zero(e))) {
            break;
        }
        attempts += 1;
        assert!(attempts < 256, "resampling failed; field far too small");
    }

    // normals exist only for d >= 2 (a punctured line has no nonzero
    // vector orthogonal to itself generically)
    let mut eta_rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, ETA_TAG));
    let etas: Vec<Vec<FieldElement>> = if d >= 2 {
        images
            .iter()
            .map(|image| sample_normal(&fs, image, d, &mut eta_rng))
            .collect()
    } else {
        Vec::new()
    };
    for (image, eta) in images.iter().zip(&etas) {
        let mut dot = fs.zero();
        for (x, y) in image.iter().zip(eta) {
            dot = fs.add(&dot, &fs.mul(x, y));
        }
        assert!(fs.is_zero(&dot), "normal constraint violated");
        assert!(eta.iter().any(|e| !fs.is_zero(e)), "normal must be nonzero");
    }

    Ok(GenericSample {
        field: fs,
        d,
        columns,
        phi,
        images,
        etas,
        seed,
        trials: 1,
    })
}

const PHI_TAG: u64 = 1;
const ETA_TAG: u64 = 2;

/// Uniform nonzero vector in the hyperplane {x : <x, w> = 0}, built from
/// the solved basis b_j = e_j - (w_j / w_j*) e_j* at a pivot j*.
fn sample_normal(
    fs: &FiniteField,
    w: &[FieldElement],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<FieldElement> {
    debug_assert!(d >= 2);
    let pivot = w
        .iter()
        .position(|e| !fs.is_zero(e))
        .expect("image must be nonzero");
    let inv = fs.inv(&w[pivot]);
    loop {
        let coeffs: Vec<FieldElement> =
            (0..d - 1).map(|_| fs.random(rng)).collect();
        if coeffs.iter().all(|c| fs.is_zero(c)) {
            continue;
        }
        // eta = sum_j c_j (e_j - (w_j / w_pivot) e_pivot), j != pivot
        let mut eta = vec![fs.zero(); d];
        let mut pivot_acc = fs.zero();
        let mut idx = 0;
        for j in 0..d {
            if j == pivot {
                continue;
            }
            eta[j] = coeffs[idx].clone();
            let scaled = fs.mul(&coeffs[idx], &fs.mul(&w[j], &inv));
            pivot_acc = fs.add(&pivot_acc, &scaled);
            idx += 1;
        }
        eta[pivot] = fs.neg(&pivot_acc);
        return eta;
    }
}

/// Rows v_i (x) phi(v_i) of the rigidity matrix, an n x (d r) matrix in
/// d blocks of r columns (block j holds v_i scaled by the j-th image
/// coordinate).
pub fn rigidity_rows(m: &LinearMatroid, sample: &GenericSample) -> FFMatrix {
    kronecker_rows(m, sample, &sample.images)
}

/// Rows v_i (x) eta_i of the hyperplane-marking matrix; needs d >= 2.
pub fn hyperplane_rows(m: &LinearMatroid, sample: &GenericSample) -> FFMatrix {
    assert!(sample.d >= 2 || m.n() == 0, "normals need d >= 2");
    kronecker_rows(m, sample, &sample.etas)
}

fn kronecker_rows(
    m: &LinearMatroid,
    sample: &GenericSample,
    right: &[Vec<FieldElement>],
) -> FFMatrix {
    let fs = &sample.field;
    let r = m.r_ambient();
    let rows: Vec<Vec<FieldElement>> = (0..m.n())
        .map(|i| {
            let v = &sample.columns[i];
            let mut row = Vec::with_capacity(sample.d * r);
            for j in 0..sample.d {
                for a in 0..r {
                    row.push(fs.mul(&v[a], &right[i][j]));
                }
            }
            row
        })
        .collect();
    FFMatrix::from_rows(fs, rows)
}

/// Which generic matroid to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatroidKind {
    Rigidity,
    Hyperplane,
    /// The parallel matroid P^d(M) = H^d of the (d-1)-fold parallel
    /// extension; its ground set has (d-1) n elements.
    Parallel,
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidKind::Rigidity => write!(f, "R"),
            MatroidKind::Hyperplane => write!(f, "H"),
            MatroidKind::Parallel => write!(f, "P"),
        }
    }
}

/// A randomized generic complex together with everything needed to
/// reproduce it and to bound its error probability.
#[derive(Clone)]
pub struct GenericComplexReport {
    pub complex: Complex,
    pub d: usize,
    pub kind: MatroidKind,
    pub field_order: BigUint,
    pub trials: u32,
    /// (n 2^n / field order)^trials, a union bound over the at most 2^n
    /// minors of degree at most n per trial.
    pub failure_bound: BigRational,
    pub seed: u64,
}

impl fmt::Debug for GenericComplexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GenericComplexReport({}^{}, {} faces, trials={}, seed={})",
            self.kind,
            self.d,
            self.complex.len(),
            self.trials,
            self.seed
        )
    }
}

/// Declare each subset independent iff some trial realizes full row rank
/// at its random specialization. One phi is shared by all subsets within
/// a trial; each trial draws a fresh phi.
pub fn generic_complex(
    m: &LinearMatroid,
    d: usize,
    kind: MatroidKind,
    trials: u32,
    seed: u64,
) -> Result<GenericComplexReport, RigidityError> {
    if trials < 2 {
        return Err(RigidityError::TooFewTrials);
    }
    let target = match kind {
        MatroidKind::Rigidity | MatroidKind::Hyperplane => m.clone(),
        MatroidKind::Parallel => {
            if d < 2 {
                return Err(RigidityError::BadDimensions(
                    "the parallel matroid needs d >= 2".into(),
                ));
            }
            m.parallel_extension(d - 1)
        }
    };
    if !target.is_loopless() {
        return Err(RigidityError::LoopPresent);
    }
    if kind != MatroidKind::Rigidity && d < 2 {
        return Err(RigidityError::BadDimensions(
            "normal vectors need d >= 2".into(),
        ));
    }
    let n = target.n();
    if n > 18 {
        return Err(RigidityError::GroundSetTooLarge { n, max: 18 });
    }

    let mut declared = vec![false; 1 << n];
    let mut field_order = BigUint::zero();
    for trial in 0..trials {
        let sample = sample_generic(&target, d, mix_seed(seed, 0x100 + trial as u64))?;
        field_order = sample.field.order();
        let rows = match kind {
            MatroidKind::Rigidity => rigidity_rows(&target, &sample),
            MatroidKind::Hyperplane | MatroidKind::Parallel => {
                hyperplane_rows(&target, &sample)
            }
        };
        // the rows, viewed as columns of a row matroid, give a per-trial
        // rank table in one sweep
        let row_vectors: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| (0..rows.cols()).map(|j| rows.at(i, j).clone()).collect())
            .collect();
        let row_matroid =
            LinearMatroid::from_matrix(&sample.field, row_vectors, rows.cols()).expect("square");
        let table = row_matroid.rank_table()?;
        for mask in 0..(1usize << n) {
            if table[mask] as u32 == (mask as u32).count_ones() {
                declared[mask] = true;
            }
        }
    }
    let faces: Vec<Subset> = (0..(1u32 << n))
        .filter(|&mask| declared[mask as usize])
        .map(Subset)
        .collect();
    let complex = Complex::from_faces(n, faces);

    let per_trial = BigRational::new(
        BigInt::from(n as u64 * (1u64 << n)),
        BigInt::from(field_order.clone()),
    );
    let failure_bound = per_trial.pow(trials as i32);
    Ok(GenericComplexReport { complex, d, kind, field_order, trials, failure_bound, seed })
}

/// Evaluate the explicit linear dependence
/// (mu - 1) w_1 - mu w_2 + (mu - mu^2) w_3 + w_4 = 0
/// among the rigidity rows of the standard U(2,4) representation
/// {e1, e1+e2, e2, e1 + mu e2}, at a freshly sampled phi. Returns whether
/// the combination vanishes exactly (it must, in every dimension d >= 2).
pub fn dependence_witness_u24(mu: u64, d: usize, seed: u64) -> Result<bool, RigidityError> {
    let field = FiniteField::new((1 << 61) - 1, 1).expect("Mersenne prime");
    let mu_elem = field.from_u64(mu);
    if field.is_zero(&mu_elem) || mu_elem == field.one() {
        return Err(RigidityError::BadMu);
    }
    let m = matroid::u24(&field, &mu_elem).map_err(|_| RigidityError::BadMu)?;
    let sample = sample_generic(&m, d, seed)?;
    let fs = &sample.field;
    let rows = rigidity_rows(&m, &sample);
    let mu_s = fs.from_u64(mu);
    let coeffs = [
        fs.sub(&mu_s, &fs.one()),
        fs.neg(&mu_s),
        fs.sub(&mu_s, &fs.mul(&mu_s, &mu_s)),
        fs.one(),
    ];
    for col in 0..rows.cols() {
        let mut acc = fs.zero();
        for (i, c) in coeffs.iter().enumerate() {
            acc = fs.add(&acc, &fs.mul(c, rows.at(i, col)));
        }
        if !fs.is_zero(&acc) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A d x d skew-symmetric matrix (zero diagonal; alternating in every
/// characteristic, as the specialization of an integral skew matrix).
pub struct SkewMatrix {
    pub entries: Vec<Vec<FieldElement>>,
}

impl SkewMatrix {
    pub fn random(field: &FiniteField, d: usize, rng: &mut ChaCha8Rng) -> SkewMatrix {
        let mut entries = vec![vec![field.zero(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let x = field.random(rng);
                entries[i][j] = x.clone();
                entries[j][i] = field.neg(&x);
            }
        }
        SkewMatrix { entries }
    }
}

/// Outcome of the obvious-nullvector checks at one sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullvectorReport {
    /// R^d(M) . vec(sigma o phi) = 0 for three random skew sigma.
    pub skew_products_zero: Vec<bool>,
    /// vec(phi) lies in the nullspace of the hyperplane matrix.
    pub phi_in_hyperplane_nullspace: bool,
    /// every subset declared rigidity-independent at this sample obeys
    /// |A| <= d r(A) - C(d,2) whenever d r(A) >= C(d,2).
    pub independence_bound_ok: bool,
}

impl NullvectorReport {
    pub fn all_ok(&self) -> bool {
        self.skew_products_zero.iter().all(|&b| b)
            && self.phi_in_hyperplane_nullspace
            && self.independence_bound_ok
    }
}

/// Check the structural nullvectors of the rigidity and hyperplane
/// matrices at the given sample, and the C(d,2) cap they impose on
/// rigidity-independent sets.
pub fn nullvector_checks(
    m: &LinearMatroid,
    sample: &GenericSample,
) -> Result<NullvectorReport, RigidityError> {
    let n = m.n();
    if n > 18 {
        return Err(RigidityError::GroundSetTooLarge { n, max: 18 });
    }
    let fs = &sample.field;
    let d = sample.d;
    let r = m.r_ambient();
    let rig = rigidity_rows(m, sample);
    let hyp = hyperplane_rows(m, sample);

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(sample.seed, 0x5157));
    let mut skew_products_zero = Vec::new();
    for _ in 0..3 {
        let sigma = SkewMatrix::random(fs, d, &mut rng);
        // vec(sigma o phi) in the same block layout as the rows
        let mut vec_sp = Vec::with_capacity(d * r);
        for j in 0..d {
            for a in 0..r {
                let mut acc = fs.zero();
                for l in 0..d {
                    acc = fs.add(&acc, &fs.mul(&sigma.entries[j][l], &sample.phi[l][a]));
                }
                vec_sp.push(acc);
            }
        }
        let product = rig.mul_vec(&vec_sp);
        skew_products_zero.push(product.iter().all(|x| fs.is_zero(x)));
    }

    let mut vec_phi = Vec::with_capacity(d * r);
    for j in 0..d {
        for a in 0..r {
            vec_phi.push(sample.phi[j][a].clone());
        }
    }
    let phi_in_hyperplane_nullspace = hyp.mul_vec(&vec_phi).iter().all(|x| fs.is_zero(x));

    // declared-independent subsets are truly independent, so the skew
    // nullspace caps their size: restricted to span(A) the maps sigma o phi
    // sweep a space of dimension C(d,2) - C(d - r(A), 2) (skew matrices
    // killing the generic r(A)-dimensional image survive), all inside the
    // nullspace of the restricted rigidity matrix.
    let row_vectors: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| (0..rig.cols()).map(|j| rig.at(i, j).clone()).collect())
        .collect();
    let row_matroid = LinearMatroid::from_matrix(fs, row_vectors, rig.cols()).expect("shape");
    let table = row_matroid.rank_table()?;
    let base_table = m.rank_table()?;
    let choose2 = |x: usize| x * x.saturating_sub(1) / 2;
    let mut independence_bound_ok = true;
    for mask in 1..(1usize << n) {
        if table[mask] as u32 != (mask as u32).count_ones() {
            continue;
        }
        let ra = base_table[mask] as usize;
        let cap = d * ra + choose2(d.saturating_sub(ra)) - choose2(d);
        if (mask as u32).count_ones() as usize > cap {
            independence_bound_ok = false;
        }
    }

    Ok(NullvectorReport {
        skew_products_zero,
        phi_in_hyperplane_nullspace,
        independence_bound_ok,
    })
}

/// The nesting chain at one dimension, with every complex materialized
/// and each inclusion checked face by face.
pub struct NestingReport {
    pub d: usize,
    pub s_complex: Complex,
    pub r_complex: GenericComplexReport,
    pub l_complex: Complex,
    pub h_complex: GenericComplexReport,
    /// present only at d = 2, where the chain collapses to equality
    pub p_complex: Option<GenericComplexReport>,
    /// named inclusion/equality failures with an offending subset
    pub violations: Vec<(String, Subset)>,
}

impl NestingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify S^(1,d) subset R^d subset L^d = H^d, and at d = 2 the collapse
/// of the whole chain (including P^2) to a single complex.
pub fn nesting_check(
    m: &LinearMatroid,
    d: usize,
    trials: u32,
    seed: u64,
) -> Result<NestingReport, RigidityError> {
    if d < 2 {
        return Err(RigidityError::BadDimensions("nesting needs d >= 2".into()));
    }
    let n = m.n();
    if n > 16 {
        return Err(RigidityError::GroundSetTooLarge { n, max: 16 });
    }
    let s_complex = slope_complex(m, 1, d)?;
    let r_complex = generic_complex(m, d, MatroidKind::Rigidity, trials, mix_seed(seed, 21))?;
    let l_complex = laman_complex(m, RationalSlope::integer(d as u64)?)?;
    let h_complex = generic_complex(m, d, MatroidKind::Hyperplane, trials, mix_seed(seed, 22))?;

    let mut violations = Vec::new();
    if let Some(w) = s_complex.subcomplex_violation(&r_complex.complex) {
        violations.push(("S^{1,d} not within R^d".to_string(), w));
    }
    if let Some(w) = r_complex.complex.subcomplex_violation(&l_complex) {
        violations.push(("R^d not within L^d".to_string(), w));
    }
    if let Some(w) = l_complex.subcomplex_violation(&h_complex.complex) {
        violations.push(("L^d not within H^d".to_string(), w));
    }
    if let Some(w) = h_complex.complex.subcomplex_violation(&l_complex) {
        violations.push(("H^d not within L^d".to_string(), w));
    }

    // at d = 2 the chain collapses: S^{1,2} and L^2 coincide by
    // construction (same slope), so R^2 within S^{1,2} closes the loop,
    // and P^2 = H^2 of the one-fold extension is checked both ways
    let p_complex = if d == 2 {
        let p = generic_complex(m, d, MatroidKind::Parallel, trials, mix_seed(seed, 23))?;
        if let Some(w) = p.complex.subcomplex_violation(&h_complex.complex) {
            violations.push(("P^2 not within H^2".to_string(), w));
        }
        if let Some(w) = h_complex.complex.subcomplex_violation(&p.complex) {
            violations.push(("H^2 not within P^2".to_string(), w));
        }
        if let Some(w) = r_complex.complex.subcomplex_violation(&s_complex) {
            violations.push(("R^2 not within S^{1,2}".to_string(), w));
        }
        Some(p)
    } else {
        None
    };

    Ok(NestingReport { d, s_complex, r_complex, l_complex, h_complex, p_complex, violations })
}

/// R^d(M) computed at d = r(M), r(M)+1, r(M)+2 must coincide.
pub struct StabilizationReport {
    pub r: usize,
    pub complexes: Vec<GenericComplexReport>,
    pub stable: bool,
}

pub fn stabilization_check(
    m: &LinearMatroid,
    trials: u32,
    seed: u64,
) -> Result<StabilizationReport, RigidityError> {
    let (reduced, _) = m.spanning_reduction();
    let r = reduced.rank();
    assert!(r >= 1, "stabilization needs a matroid of positive rank");
    let mut complexes = Vec::new();
    for (i, d) in (r..r + 3).enumerate() {
        complexes.push(generic_complex(
            &reduced,
            d,
            MatroidKind::Rigidity,
            trials,
            mix_seed(seed, 31 + i as u64),
        )?);
    }
    let stable = complexes.windows(2).all(|w| w[0].complex == w[1].complex);
    Ok(StabilizationReport { r, complexes, stable })
}

/// For a graph on v vertices, R^v of its graphic matroid must be the full
/// simplex (independent of the field; checked over a large prime field).
pub fn graphic_boolean_check(
    n_vertices: usize,
    edges: &[(usize, usize)],
    trials: u32,
    seed: u64,
) -> Result<bool, RigidityError> {
    if n_vertices > 6 {
        return Err(RigidityError::BadDimensions(
            "graphic Boolean check is guarded at 6 vertices".into(),
        ));
    }
    let field = FiniteField::new((1 << 61) - 1, 1).expect("Mersenne prime");
    let m = matroid::graphic(n_vertices, edges, &field)?;
    let report = generic_complex(&m, n_vertices, MatroidKind::Rigidity, trials, seed)?;
    Ok(report.complex == Complex::full_simplex(edges.len()))
}

/// Projective invariance probe: rescale every column by a random nonzero
/// scalar and apply a random invertible map, then compare the two
/// rigidity complexes computed with independent randomness.
pub struct ProbeReport {
    pub base: GenericComplexReport,
    pub transformed: GenericComplexReport,
}

impl ProbeReport {
    pub fn equal(&self) -> bool {
        self.base.complex == self.transformed.complex
    }
}

pub fn projective_probe(
    m: &LinearMatroid,
    d: usize,
    trials: u32,
    seed: u64,
) -> Result<ProbeReport, RigidityError> {
    let field = m.field().clone();
    let r = m.r_ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 41));
    // random invertible g
    let g = loop {
        let candidate: Vec<Vec<FieldElement>> = (0..r)
            .map(|_| (0..r).map(|_| field.random(&mut rng)).collect())
            .collect();
        let mat = FFMatrix::from_rows(&field, candidate.clone());
        if mat.rank() == r {
            break candidate;
        }
    };
    let columns: Vec<Vec<FieldElement>> = m
        .columns()
        .iter()
        .map(|c| {
            let scale = field.random_nonzero(&mut rng);
            let scaled: Vec<FieldElement> = c.iter().map(|e| field.mul(e, &scale)).collect();
            apply_matrix(&field, &g, &scaled)
        })
        .collect();
    let transformed_m = LinearMatroid::from_matrix(&field, columns, r).expect("same shape");

    let base = generic_complex(m, d, MatroidKind::Rigidity, trials, mix_seed(seed, 42))?;
    let transformed =
        generic_complex(&transformed_m, d, MatroidKind::Rigidity, trials, mix_seed(seed, 43))?;
    Ok(ProbeReport { base, transformed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mersenne() -> FiniteField {
        FiniteField::new((1 << 61) - 1, 1).unwrap()
    }

    fn k4(field: &FiniteField) -> LinearMatroid {
        matroid::graphic(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)], field).unwrap()
    }

    #[test]
    fn sampling_fields_preserve_characteristic() {
        assert_eq!(
            sampling_field_for(&FiniteField::new(2, 1).unwrap()).unwrap(),
            FiniteField::new(2, 60).unwrap()
        );
        assert_eq!(
            sampling_field_for(&FiniteField::new(10007, 1).unwrap()).unwrap(),
            FiniteField::new(10007, 5).unwrap()
        );
        let big = mersenne();
        assert_eq!(sampling_field_for(&big).unwrap(), big);
        assert_eq!(
            sampling_field_for(&FiniteField::new(2, 2).unwrap()),
            Err(RigidityError::UnsupportedSamplingField)
        );
    }

    #[test]
    fn sample_constraints_hold_exactly() {
        let m = matroid::u23(&FiniteField::new(2, 1).unwrap());
        let sample = sample_generic(&m, 2, 7).unwrap();
        assert_eq!(sample.field, FiniteField::new(2, 60).unwrap());
        // normality is asserted inside sample_generic; spot-check shapes
        assert_eq!(sample.images.len(), 3);
        assert_eq!(sample.etas.len(), 3);

        let loopy = LinearMatroid::from_int_columns(
            &FiniteField::new(3, 1).unwrap(),
            &[vec![0], vec![1]],
            1,
        )
        .unwrap();
        assert_eq!(
            sample_generic(&loopy, 2, 1).unwrap_err(),
            RigidityError::LoopPresent
        );
    }

    #[test]
    fn rigidity_of_u23_is_boolean_from_d2() {
        let m = matroid::u23(&mersenne());
        for d in [2usize, 3] {
            let rep = generic_complex(&m, d, MatroidKind::Rigidity, 2, 11).unwrap();
            assert_eq!(rep.complex, Complex::full_simplex(3), "R^{d}(U23) = 2^E");
        }
        // at d = 1 the rigidity matroid is the matroid itself
        let rep = generic_complex(&m, 1, MatroidKind::Rigidity, 2, 11).unwrap();
        assert_eq!(rep.complex, Complex::uniform(2, 3));
    }

    #[test]
    fn rigidity_of_u24_is_u34() {
        let mu = mersenne().from_u64(2);
        let m = matroid::u24(&mersenne(), &mu).unwrap();
        for d in [2usize, 3] {
            let rep = generic_complex(&m, d, MatroidKind::Rigidity, 2, 13).unwrap();
            assert_eq!(rep.complex, Complex::uniform(3, 4), "R^{d}(U24) = U(3,4)");
        }
    }

    #[test]
    fn fano_rigidity_jumps_at_d3() {
        let m = matroid::fano();
        let r2 = generic_complex(&m, 2, MatroidKind::Rigidity, 2, 17).unwrap();
        assert_eq!(r2.complex, Complex::uniform(5, 7), "R^2(F) = U(5,7)");
        let r3 = generic_complex(&m, 3, MatroidKind::Rigidity, 2, 17).unwrap();
        assert_eq!(r3.complex, Complex::uniform(6, 7), "R^3(F) = U(6,7)");
    }

    #[test]
    fn k4_rigidity_matrix_is_6_by_16_with_two_entries_per_block() {
        let edges = [(0usize, 1usize), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
        let m = matroid::graphic(4, &edges, &mersenne()).unwrap();
        let sample = sample_generic(&m, 4, 59).unwrap();
        let rows = rigidity_rows(&m, &sample);
        assert_eq!((rows.rows(), rows.cols()), (6, 16));
        // row e = {u,v} is (e_u - e_v) (x) phi(v_e): within each of the
        // four blocks only positions u and v are nonzero
        for (i, &(u, v)) in edges.iter().enumerate() {
            for j in 0..4 {
                for a in 0..4 {
                    let nonzero = !sample.field.is_zero(rows.at(i, j * 4 + a));
                    assert_eq!(nonzero, a == u || a == v);
                }
            }
        }
    }

    #[test]
    fn k4_rigidity_facets_are_the_five_edge_subsets() {
        let m = k4(&mersenne());
        let rep = generic_complex(&m, 2, MatroidKind::Rigidity, 2, 19).unwrap();
        let facets = rep.complex.facets();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|f| f.len() == 5));
    }

    #[test]
    fn trials_only_grow_the_complex() {
        let m = k4(&mersenne());
        let two = generic_complex(&m, 2, MatroidKind::Rigidity, 2, 23).unwrap();
        let three = generic_complex(&m, 2, MatroidKind::Rigidity, 3, 23).unwrap();
        assert!(two.complex.is_subcomplex_of(&three.complex));
        assert!(generic_complex(&m, 2, MatroidKind::Rigidity, 1, 23).is_err());
    }

    #[test]
    fn failure_bound_is_tiny() {
        let m = k4(&mersenne());
        let rep = generic_complex(&m, 2, MatroidKind::Rigidity, 3, 29).unwrap();
        let bound = BigRational::new(BigInt::from(1), BigInt::from(2u8).pow(80u32));
        assert!(rep.failure_bound < bound, "documented bound must be below 2^-80");
    }

    #[test]
    fn u24_dependence_identity() {
        assert!(dependence_witness_u24(2, 2, 3).unwrap());
        assert!(dependence_witness_u24(2, 3, 3).unwrap());
        assert!(dependence_witness_u24(7, 4, 3).unwrap());
        assert_eq!(dependence_witness_u24(1, 2, 3), Err(RigidityError::BadMu));
        assert_eq!(dependence_witness_u24(0, 2, 3), Err(RigidityError::BadMu));
    }

    #[test]
    fn nullvector_checks_pass() {
        for (m, d) in [
            (matroid::u23(&mersenne()), 2usize),
            (matroid::u23(&mersenne()), 3),
            (k4(&mersenne()), 2),
            (k4(&mersenne()), 3),
            (matroid::fano(), 3),
        ] {
            let sample = sample_generic(&m, d, 31).unwrap();
            let report = nullvector_checks(&m, &sample).unwrap();
            assert!(report.all_ok(), "nullvector checks failed for {m:?} at d={d}");
        }
    }

    #[test]
    fn quadratic_values_respect_characteristic() {
        let m = matroid::fano();
        let sample = sample_generic(&m, 2, 1).unwrap();
        assert_eq!(
            sample.quadratic_values(),
            Err(RigidityError::CharacteristicTwoQuadratic)
        );
        let m = matroid::u23(&mersenne());
        let sample = sample_generic(&m, 2, 1).unwrap();
        assert_eq!(sample.quadratic_values().unwrap().len(), 3);
    }

    #[test]
    fn nesting_examples() {
        let mu = mersenne().from_u64(2);
        let u24 = matroid::u24(&mersenne(), &mu).unwrap();
        let rep = nesting_check(&u24, 2, 2, 37).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.r_complex.complex, Complex::uniform(3, 4));
        assert_eq!(rep.l_complex, Complex::uniform(3, 4));

        let u23 = matroid::u23(&mersenne());
        let rep = nesting_check(&u23, 3, 2, 37).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.s_complex, Complex::uniform(2, 3), "S^{{1,3}} = U(2,3)");
        assert_eq!(rep.r_complex.complex, Complex::full_simplex(3));
        assert_eq!(rep.l_complex, Complex::full_simplex(3));
    }

    #[test]
    fn stabilization_and_boolean_graphs() {
        let m = matroid::u23(&mersenne());
        let rep = stabilization_check(&m, 2, 41).unwrap();
        assert_eq!(rep.r, 2);
        assert!(rep.stable);

        assert!(graphic_boolean_check(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)],
            2,
            43
        )
        .unwrap());
    }

    #[test]
    fn projective_probe_on_u24() {
        let mu = mersenne().from_u64(2);
        let m = matroid::u24(&mersenne(), &mu).unwrap();
        let probe = projective_probe(&m, 2, 2, 47).unwrap();
        assert!(probe.equal());
    }

    #[test]
    fn explicit_rescaling_2357_preserves_r2() {
        let field = mersenne();
        let mu = field.from_u64(2);
        let m = matroid::u24(&field, &mu).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let g: Vec<Vec<FieldElement>> = loop {
            let cand: Vec<Vec<FieldElement>> = (0..2)
                .map(|_| (0..2).map(|_| field.random(&mut rng)).collect())
                .collect();
            if FFMatrix::from_rows(&field, cand.clone()).rank() == 2 {
                break cand;
            }
        };
        let scales = [2u64, 3, 5, 7];
        let columns: Vec<Vec<FieldElement>> = m
            .columns()
            .iter()
            .zip(scales)
            .map(|(c, s)| {
                let scaled: Vec<FieldElement> =
                    c.iter().map(|e| field.mul(e, &field.from_u64(s))).collect();
                apply_matrix(&field, &g, &scaled)
            })
            .collect();
        let transformed = LinearMatroid::from_matrix(&field, columns, 2).unwrap();
        let a = generic_complex(&m, 2, MatroidKind::Rigidity, 2, 103).unwrap();
        let b = generic_complex(&transformed, 2, MatroidKind::Rigidity, 2, 104).unwrap();
        assert_eq!(a.complex, b.complex);
    }

    #[test]
    fn rigidity_complexes_grow_with_d() {
        let mu = mersenne().from_u64(2);
        for m in [
            matroid::u23(&mersenne()),
            matroid::u24(&mersenne(), &mu).unwrap(),
            k4(&mersenne()),
            matroid::fano(),
        ] {
            let complexes: Vec<Complex> = (1..=4)
                .map(|d| {
                    generic_complex(&m, d, MatroidKind::Rigidity, 2, 53)
                        .unwrap()
                        .complex
                })
                .collect();
            for w in complexes.windows(2) {
                assert!(w[0].is_subcomplex_of(&w[1]), "R^d must grow with d");
            }
        }
    }

    #[test]
    fn u23_rigidity_nullspace_contains_the_skew_image() {
        // R^2(U(2,3)) is a 3x4 matrix of rank 3, so its nullspace is one
        // dimensional, and sigma o phi spans it
        let m = matroid::u23(&mersenne());
        let sample = sample_generic(&m, 2, 61).unwrap();
        let rows = rigidity_rows(&m, &sample);
        assert_eq!(rows.rank(), 3);
        let basis = rows.nullspace_basis();
        assert_eq!(basis.len(), 1);
        let report = nullvector_checks(&m, &sample).unwrap();
        assert!(report.all_ok());
    }

    #[test]
    fn shared_types_are_thread_safe() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FiniteField>();
        assert_send_sync::<LinearMatroid>();
        assert_send_sync::<Complex>();
        assert_send_sync::<GenericSample>();
    }
}
