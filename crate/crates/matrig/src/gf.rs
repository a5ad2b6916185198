//! Exact arithmetic and linear algebra over prime fields GF(p) and
//! extension fields GF(p^s).
//!
//! All computation is exact; there is no floating point anywhere in this
//! crate. Extension fields are represented as polynomial quotient rings
//! GF(p)[x]/(f) where f is the lexicographically least monic irreducible
//! of degree s, so that a field is determined by (p, s) alone and every
//! seeded experiment is reproducible.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// The requested characteristic is not a prime number.
    NonPrimeModulus(u64),
    /// No irreducible modulus was found within the search bound; this
    /// signals an internal bug, not a user error.
    NoIrreducibleFound { p: u64, s: u32 },
    /// A coefficient vector had the wrong length for the field.
    BadCoefficients { expected: u32, got: usize },
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NonPrimeModulus(p) => write!(f, "{p} is not prime"),
            GfError::NoIrreducibleFound { p, s } => {
                write!(f, "no irreducible of degree {s} over GF({p}) found (internal bug)")
            }
            GfError::BadCoefficients { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
        }
    }
}

impl std::error::Error for GfError {}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// scalar arithmetic mod p (u64 values, u128 intermediates)
// ---------------------------------------------------------------------------

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invm(a: u64, p: u64) -> u64 {
    // extended Euclid; a != 0 mod p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "attempted inverse of a non-unit");
    (t0.rem_euclid(p as i128)) as u64
}

// ---------------------------------------------------------------------------
// dense polynomials over GF(p): Vec<u64>, coefficient i of x^i, trimmed
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(ai, bj, p), p);
        }
    }
    ptrim(&mut out);
    out
}

/// Remainder of a modulo monic f.
fn prem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    debug_assert!(*f.last().unwrap() == 1, "modulus must be monic");
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for (i, &fi) in f.iter().enumerate() {
                r[i + shift] = subm(r[i + shift], mulm(lead, fi, p), p);
            }
        }
        r.pop();
        ptrim(&mut r);
        if r.len() <= df {
            break;
        }
    }
    ptrim(&mut r);
    r
}

fn pmulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    prem(&pmul(a, b, p), f, p)
}

fn ppowmod(base: &[u64], exp: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = prem(base, f, p);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            acc = pmulmod(&acc, &b, f, p);
        }
        if i + 1 < exp.bits() {
            b = pmulmod(&b, &b, f, p);
        }
    }
    acc
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        // make b monic before using it as a divisor
        let inv_lead = invm(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| mulm(c, inv_lead, p)).collect();
        let r = prem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

/// Distinct-degree irreducibility test for a monic f of degree s >= 2:
/// f is irreducible iff it shares no factor with x^(p^k) - x for any
/// k <= s/2 (that product covers every irreducible of degree <= s/2).
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let s = f.len() - 1;
    debug_assert!(s >= 2);
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0u64, 1];
    for k in 1..=s / 2 {
        let e = BigUint::from(p).pow(k as u32);
        let xq = ppowmod(&x, &e, f, p);
        // xq - x
        let mut g = xq;
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = subm(g[1], 1, p);
        ptrim(&mut g);
        let d = pgcd(&g, f, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// packed polynomials over GF(2): bit i of a u64/u128 is the coefficient of x^i
// ---------------------------------------------------------------------------

fn gf2_deg(a: u128) -> i32 {
    127 - a.leading_zeros() as i32 // -1 convention not needed; callers check a != 0
}

fn gf2_mul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let mut shift = 0u32;
    while a != 0 {
        let tz = a.trailing_zeros();
        shift += tz;
        acc ^= (b as u128) << shift;
        a >>= tz + 1;
        shift += 1;
    }
    acc
}

/// Reduce a packed product modulo monic f of degree s (bit s of f is set).
fn gf2_rem(mut a: u128, f: u128, s: u32) -> u64 {
    while a >> s != 0 {
        let d = gf2_deg(a) as u32;
        a ^= f << (d - s);
    }
    a as u64
}

fn gf2_mulmod(a: u64, b: u64, f: u128, s: u32) -> u64 {
    gf2_rem(gf2_mul(a, b), f, s)
}

fn gf2_powmod(base: u64, exp: &BigUint, f: u128, s: u32) -> u64 {
    let mut acc = 1u64;
    let mut b = base;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            acc = gf2_mulmod(acc, b, f, s);
        }
        if i + 1 < exp.bits() {
            b = gf2_mulmod(b, b, f, s);
        }
    }
    acc
}

fn gf2_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let (da, db) = (gf2_deg(a), gf2_deg(b));
        if a == 0 || da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        a ^= b << (da - db) as u32;
    }
    a
}

fn gf2_is_irreducible(f: u128, s: u32) -> bool {
    if f & 1 == 0 {
        return false;
    }
    for k in 1..=s / 2 {
        let e = BigUint::one() << (k as u64); // 2^k
        let xq = gf2_powmod(2, &e, f, s); // x^(2^k) mod f
        let g = (xq ^ 2) as u128; // x^(2^k) - x
        let d = if g == 0 { f } else { gf2_gcd(f, g) };
        if d != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// FiniteField / FieldElement
// ---------------------------------------------------------------------------

#[derive(Debug, PartialEq, Eq)]
enum Repr {
    /// s = 1: elements are single residues mod p.
    Scalar,
    /// p = 2, 2 <= s <= 63: coefficients packed as bits of a u64.
    Packed { modulus: u128 },
    /// general extension: dense coefficient vectors.
    Dense,
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    s: u32,
    /// monic modulus as a coefficient vector of length s+1; the identity
    /// placeholder `x` when s = 1
    modulus_poly: Vec<u64>,
    repr: Repr,
}

/// A finite field GF(p^s), cheap to clone.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.s == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.s)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.s == other.inner.s
    }
}
impl Eq for FiniteField {}

/// An element of a finite field. Elements do not carry a field pointer;
/// all arithmetic goes through [`FiniteField`] methods.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Elem);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Elem {
    Scalar(u64),
    Packed(u64),
    Dense(Vec<u64>),
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Elem::Scalar(v) => write!(f, "{v}"),
            Elem::Packed(bits) => write!(f, "0b{bits:b}"),
            Elem::Dense(c) => write!(f, "{c:?}"),
        }
    }
}

type ModulusCache = Mutex<std::collections::HashMap<(u64, u32), Vec<u64>>>;

fn modulus_cache() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()))
}

impl FiniteField {
    /// Construct GF(p^s). The modulus is the lexicographically least monic
    /// irreducible of degree s over GF(p) (ordering candidate lower
    /// coefficient vectors as base-p integers), so two calls with equal
    /// (p, s) always yield the identical field.
    pub fn new(p: u64, s: u32) -> Result<FiniteField, GfError> {
        if !is_prime_u64(p) {
            return Err(GfError::NonPrimeModulus(p));
        }
        assert!(s >= 1, "extension degree must be >= 1");
        if s == 1 {
            return Ok(FiniteField {
                inner: Arc::new(FieldInner {
                    p,
                    s,
                    modulus_poly: vec![0, 1],
                    repr: Repr::Scalar,
                }),
            });
        }
        if let Some(m) = modulus_cache().lock().unwrap().get(&(p, s)) {
            return Ok(Self::assemble(p, s, m.clone()));
        }
        let modulus = Self::least_irreducible(p, s)?;
        modulus_cache().lock().unwrap().insert((p, s), modulus.clone());
        Ok(Self::assemble(p, s, modulus))
    }

    fn assemble(p: u64, s: u32, modulus_poly: Vec<u64>) -> FiniteField {
        let repr = if p == 2 && s <= 63 {
            let mut packed = 0u128;
            for (i, &c) in modulus_poly.iter().enumerate() {
                if c != 0 {
                    packed |= 1 << i;
                }
            }
            Repr::Packed { modulus: packed }
        } else {
            Repr::Dense
        };
        FiniteField {
            inner: Arc::new(FieldInner { p, s, modulus_poly, repr }),
        }
    }

    fn least_irreducible(p: u64, s: u32) -> Result<Vec<u64>, GfError> {
        // candidate = x^s + (digits of idx in base p as lower coefficients)
        let bound: u128 = (1u128 << 24).min(
            (p as u128).checked_pow(s).unwrap_or(u128::MAX),
        );
        for idx in 1..bound {
            if idx % (p as u128) == 0 {
                continue; // constant term zero: divisible by x
            }
            let mut coeffs = vec![0u64; s as usize + 1];
            let mut v = idx;
            for c in coeffs.iter_mut().take(s as usize) {
                *c = (v % p as u128) as u64;
                v /= p as u128;
            }
            coeffs[s as usize] = 1;
            let irreducible = if p == 2 && s <= 63 {
                let mut packed = 0u128;
                for (i, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        packed |= 1 << i;
                    }
                }
                gf2_is_irreducible(packed, s)
            } else {
                poly_is_irreducible(&coeffs, p)
            };
            if irreducible {
                return Ok(coeffs);
            }
        }
        Err(GfError::NoIrreducibleFound { p, s })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.s
    }

    /// The monic modulus as a coefficient vector of length s+1.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.inner.modulus_poly
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.inner.p).pow(self.inner.s)
    }

    /// Field order when it fits in a u128.
    pub fn order_u128(&self) -> Option<u128> {
        (self.inner.p as u128).checked_pow(self.inner.s)
    }

    pub fn zero(&self) -> FieldElement {
        match self.inner.repr {
            Repr::Scalar => FieldElement(Elem::Scalar(0)),
            Repr::Packed { .. } => FieldElement(Elem::Packed(0)),
            Repr::Dense => FieldElement(Elem::Dense(vec![0; self.inner.s as usize])),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The constant element with value v mod p.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        let v = v % self.inner.p;
        match self.inner.repr {
            Repr::Scalar => FieldElement(Elem::Scalar(v)),
            Repr::Packed { .. } => FieldElement(Elem::Packed(v)),
            Repr::Dense => {
                let mut c = vec![0; self.inner.s as usize];
                c[0] = v;
                FieldElement(Elem::Dense(c))
            }
        }
    }

    /// The constant element with value v, accepting negatives (v mod p).
    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.inner.p as i128;
        self.from_u64(((v as i128).rem_euclid(p)) as u64)
    }

    /// Build an element from s coefficients in [0, p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.inner.s as usize {
            return Err(GfError::BadCoefficients {
                expected: self.inner.s,
                got: coeffs.len(),
            });
        }
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.inner.p).collect();
        Ok(match self.inner.repr {
            Repr::Scalar => FieldElement(Elem::Scalar(reduced[0])),
            Repr::Packed { .. } => {
                let mut bits = 0u64;
                for (i, &c) in reduced.iter().enumerate() {
                    if c != 0 {
                        bits |= 1 << i;
                    }
                }
                FieldElement(Elem::Packed(bits))
            }
            Repr::Dense => FieldElement(Elem::Dense(reduced)),
        })
    }

    /// Canonical coefficient vector (length s, entries in [0, p)).
    pub fn coeffs(&self, a: &FieldElement) -> Vec<u64> {
        match &a.0 {
            Elem::Scalar(v) => vec![*v],
            Elem::Packed(bits) => (0..self.inner.s).map(|i| (bits >> i) & 1).collect(),
            Elem::Dense(c) => c.clone(),
        }
    }

    /// The idx-th element in the canonical enumeration (base-p digits of
    /// idx as coefficients). Used to iterate small fields exhaustively.
    pub fn element_from_index(&self, idx: u64) -> FieldElement {
        match self.inner.repr {
            Repr::Scalar => FieldElement(Elem::Scalar(idx % self.inner.p)),
            Repr::Packed { .. } => FieldElement(Elem::Packed(idx & ((1 << self.inner.s) - 1))),
            Repr::Dense => {
                let mut c = vec![0; self.inner.s as usize];
                let mut v = idx;
                for ci in c.iter_mut() {
                    *ci = v % self.inner.p;
                    v /= self.inner.p;
                }
                FieldElement(Elem::Dense(c))
            }
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match &a.0 {
            Elem::Scalar(v) => *v == 0,
            Elem::Packed(bits) => *bits == 0,
            Elem::Dense(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        FieldElement(match (&a.0, &b.0) {
            (Elem::Scalar(x), Elem::Scalar(y)) => Elem::Scalar(addm(*x, *y, p)),
            (Elem::Packed(x), Elem::Packed(y)) => Elem::Packed(x ^ y),
            (Elem::Dense(x), Elem::Dense(y)) => {
                Elem::Dense(x.iter().zip(y).map(|(&u, &v)| addm(u, v, p)).collect())
            }
            _ => panic!("mixed field element representations"),
        })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        FieldElement(match (&a.0, &b.0) {
            (Elem::Scalar(x), Elem::Scalar(y)) => Elem::Scalar(subm(*x, *y, p)),
            (Elem::Packed(x), Elem::Packed(y)) => Elem::Packed(x ^ y),
            (Elem::Dense(x), Elem::Dense(y)) => {
                Elem::Dense(x.iter().zip(y).map(|(&u, &v)| subm(u, v, p)).collect())
            }
            _ => panic!("mixed field element representations"),
        })
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        FieldElement(match (&a.0, &b.0) {
            (Elem::Scalar(x), Elem::Scalar(y)) => Elem::Scalar(mulm(*x, *y, p)),
            (Elem::Packed(x), Elem::Packed(y)) => {
                let Repr::Packed { modulus } = self.inner.repr else {
                    panic!("packed element in non-packed field")
                };
                Elem::Packed(gf2_mulmod(*x, *y, modulus, self.inner.s))
            }
            (Elem::Dense(x), Elem::Dense(y)) => {
                let mut r = pmulmod(x, y, &self.inner.modulus_poly, p);
                r.resize(self.inner.s as usize, 0);
                Elem::Dense(r)
            }
            _ => panic!("mixed field element representations"),
        })
    }

    pub fn inv(&self, a: &FieldElement) -> FieldElement {
        assert!(!self.is_zero(a), "attempted inverse of zero");
        match &a.0 {
            Elem::Scalar(v) => FieldElement(Elem::Scalar(invm(*v, self.inner.p))),
            _ => {
                // Fermat: a^(q-2). Inversions are rare (pivot normalization,
                // hyperplane solving); rank computation is division-free.
                let e = self.order() - BigUint::from(2u32);
                self.pow(a, &e)
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &b);
            }
            if i + 1 < e.bits() {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FieldElement {
        match self.inner.repr {
            Repr::Scalar => FieldElement(Elem::Scalar(rng.gen_range(0..self.inner.p))),
            Repr::Packed { .. } => {
                let mask = if self.inner.s == 63 { u64::MAX >> 1 } else { (1 << self.inner.s) - 1 };
                FieldElement(Elem::Packed(rng.gen::<u64>() & mask))
            }
            Repr::Dense => FieldElement(Elem::Dense(
                (0..self.inner.s).map(|_| rng.gen_range(0..self.inner.p)).collect(),
            )),
        }
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Lift a scalar from the prime subfield GF(p) into this field.
    pub fn lift_scalar(&self, value_mod_p: u64) -> FieldElement {
        self.from_u64(value_mod_p)
    }

    pub fn format_element(&self, a: &FieldElement) -> String {
        let c = self.coeffs(a);
        if self.inner.s == 1 {
            format!("{}", c[0])
        } else {
            format!(
                "[{}]",
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        }
    }
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

/// A dense rows x cols matrix over a finite field, row major.
#[derive(Clone, Debug)]
pub struct FFMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FFMatrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> FFMatrix {
        FFMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<FieldElement>>) -> FFMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        FFMatrix {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Row rank by exact Gaussian elimination with first-nonzero pivoting.
    /// Elimination is division-free: rows are cross-scaled by pivots, which
    /// preserves rank over a field.
    pub fn rank(&self) -> usize {
        let f = self.field.clone();
        let mut w = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let idx = |i: usize, j: usize| i * cols + j;
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(&w[idx(i, c)])) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    w.swap(idx(pr, j), idx(r, j));
                }
            }
            for i in r + 1..rows {
                if f.is_zero(&w[idx(i, c)]) {
                    continue;
                }
                let factor = w[idx(i, c)].clone();
                let pivot = w[idx(r, c)].clone();
                for j in c..cols {
                    let v = f.sub(
                        &f.mul(&pivot, &w[idx(i, j)]),
                        &f.mul(&factor, &w[idx(r, j)]),
                    );
                    w[idx(i, j)] = v;
                }
            }
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut w = self.entries.clone();
        let idx = |i: usize, j: usize| i * cols + j;
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(&w[idx(i, c)])) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    w.swap(idx(pr, j), idx(r, j));
                }
            }
            let inv = f.inv(&w[idx(r, c)]);
            for j in 0..cols {
                w[idx(r, j)] = f.mul(&w[idx(r, j)], &inv);
            }
            for i in 0..rows {
                if i != r && !f.is_zero(&w[idx(i, c)]) {
                    let factor = w[idx(i, c)].clone();
                    for j in 0..cols {
                        let v = f.sub(&w[idx(i, j)], &f.mul(&factor, &w[idx(r, j)]));
                        w[idx(i, j)] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        (
            FFMatrix { field: f, rows, cols, entries: w },
            pivot_cols,
        )
    }

    /// A basis of the right nullspace: cols - rank vectors v with self.v = 0.
    pub fn nullspace_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field.clone();
        let cols = self.cols;
        let (rr, pivot_cols) = self.rref();
        let w = rr.entries;
        let idx = |i: usize, j: usize| i * cols + j;
        let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(&w[idx(ri, free)]);
            }
            debug_assert!(self.mul_vec(&v).iter().all(|x| f.is_zero(x)));
            basis.push(v);
        }
        basis
    }
}

/// Row rank of a matrix (free-function form of [`FFMatrix::rank`]).
pub fn rank(m: &FFMatrix) -> usize {
    m.rank()
}

/// Basis of the right nullspace (free-function form).
pub fn nullspace_basis(m: &FFMatrix) -> Vec<Vec<FieldElement>> {
    m.nullspace_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn reject_non_prime() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), GfError::NonPrimeModulus(4));
        assert_eq!(FiniteField::new(1, 1).unwrap_err(), GfError::NonPrimeModulus(1));
        assert!(FiniteField::new(2, 1).is_ok());
        assert!(FiniteField::new(10007, 1).is_ok());
    }

    #[test]
    fn gf2_basics() {
        let f = FiniteField::new(2, 1).unwrap();
        let one = f.one();
        assert!(f.is_zero(&f.add(&one, &one)));
        assert_eq!(f.mul(&one, &one), one);
    }

    /// Trial-division oracle: test irreducibility of a packed GF(2) poly of
    /// degree s by dividing by every monic polynomial of degree 1..=s/2.
    fn gf2_irreducible_by_trial_division(f: u128, s: u32) -> bool {
        for d in 1..=s / 2 {
            for low in 0..(1u128 << d) {
                let g = (1u128 << d) | low;
                // long division remainder of f by g
                let mut r = f;
                while r != 0 && gf2_deg(r) as u32 >= d {
                    r ^= g << (gf2_deg(r) as u32 - d);
                }
                if r == 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gf256_modulus_matches_trial_division_oracle() {
        // independently enumerate monic degree-8 candidates in the same
        // order and take the first irreducible by trial division
        let mut expected: Option<u128> = None;
        for idx in 1u128..256 {
            if idx % 2 == 0 {
                continue;
            }
            let cand = (1u128 << 8) | idx;
            if gf2_irreducible_by_trial_division(cand, 8) {
                expected = Some(cand);
                break;
            }
        }
        let f = FiniteField::new(2, 8).unwrap();
        let mut packed = 0u128;
        for (i, &c) in f.modulus_poly().iter().enumerate() {
            if c != 0 {
                packed |= 1 << i;
            }
        }
        assert_eq!(packed, expected.unwrap());
    }

    #[test]
    fn field_new_is_deterministic() {
        let a = FiniteField::new(3, 4).unwrap();
        let b = FiniteField::new(3, 4).unwrap();
        assert_eq!(a.modulus_poly(), b.modulus_poly());
        let c = FiniteField::new(2, 60).unwrap();
        let d = FiniteField::new(2, 60).unwrap();
        assert_eq!(c.modulus_poly(), d.modulus_poly());
    }

    #[test]
    fn gf4_is_the_quotient_by_x2_x_1() {
        // candidates of degree 2 over GF(2): x^2+1 reducible, x^2+x skipped
        // (zero constant term), x^2+x+1 irreducible
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus_poly(), &[1, 1, 1]);
        // the generator x satisfies x^2 = x + 1
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x2 = f.mul(&x, &x);
        assert_eq!(f.coeffs(&x2), vec![1, 1]);
    }

    #[test]
    fn large_fields_invert() {
        for field in [
            FiniteField::new(2, 60).unwrap(),
            FiniteField::new(10007, 5).unwrap(),
            FiniteField::new((1 << 61) - 1, 1).unwrap(),
        ] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..8 {
                let a = field.random_nonzero(&mut rng);
                let prod = field.mul(&a, &field.inv(&a));
                assert_eq!(prod, field.one());
            }
        }
    }

    #[test]
    fn sampling_field_orders_reach_2_to_60() {
        assert!(FiniteField::new(2, 60).unwrap().order() >= BigUint::one() << 60);
        assert!(FiniteField::new(10007, 5).unwrap().order() >= BigUint::one() << 60);
        assert!(FiniteField::new(3, 38).unwrap().order() >= BigUint::one() << 60);
    }

    fn fano_matrix(field: &FiniteField) -> FFMatrix {
        // all nonzero vectors of GF(2)^3 as columns, i.e. a 3x7 matrix
        let rows: Vec<Vec<FieldElement>> = (0..3)
            .map(|bit| {
                (1u64..8)
                    .map(|v| field.from_u64((v >> bit) & 1))
                    .collect()
            })
            .collect();
        FFMatrix::from_rows(field, rows)
    }

    #[test]
    fn rank_examples() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let z = FFMatrix::zeros(&f2, 3, 3);
        assert_eq!(z.rank(), 0);

        let f5 = FiniteField::new(5, 1).unwrap();
        let mut id = FFMatrix::zeros(&f5, 3, 3);
        for i in 0..3 {
            id.set(i, i, f5.one());
        }
        assert_eq!(id.rank(), 3);

        assert_eq!(fano_matrix(&f2).rank(), 3);
    }

    #[test]
    fn nullspace_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let mut id = FFMatrix::zeros(&f3, 2, 2);
        id.set(0, 0, f3.one());
        id.set(1, 1, f3.one());
        assert!(id.nullspace_basis().is_empty());

        let f2 = FiniteField::new(2, 1).unwrap();
        let m = FFMatrix::from_rows(&f2, vec![vec![f2.one(), f2.one()]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![f2.one(), f2.one()]);
    }

    #[test]
    fn nullspace_dimension_plus_rank_is_cols() {
        use rand::Rng as _;
        let f = FiniteField::new(7, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m = FFMatrix::from_rows(
                &f,
                (0..rows)
                    .map(|_| (0..cols).map(|_| f.random(&mut rng)).collect())
                    .collect(),
            );
            let r = m.rank();
            let basis = m.nullspace_basis();
            assert_eq!(basis.len(), cols - r);
            for v in &basis {
                assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
            }
        }
    }

    fn arb_field() -> impl Strategy<Value = FiniteField> {
        prop_oneof![
            Just(FiniteField::new(2, 1).unwrap()),
            Just(FiniteField::new(3, 1).unwrap()),
            Just(FiniteField::new(5, 1).unwrap()),
            Just(FiniteField::new(10007, 1).unwrap()),
            Just(FiniteField::new(2, 8).unwrap()),
            Just(FiniteField::new(3, 3).unwrap()),
            Just(FiniteField::new((1 << 61) - 1, 1).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms_on_random_triples(field in arb_field(), seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = field.random(&mut rng);
            let b = field.random(&mut rng);
            let c = field.random(&mut rng);
            // associativity and commutativity
            prop_assert_eq!(field.add(&field.add(&a, &b), &c), field.add(&a, &field.add(&b, &c)));
            prop_assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
            prop_assert_eq!(field.add(&a, &b), field.add(&b, &a));
            prop_assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
            // distributivity
            prop_assert_eq!(
                field.mul(&a, &field.add(&b, &c)),
                field.add(&field.mul(&a, &b), &field.mul(&a, &c))
            );
            // identities and inverses
            prop_assert_eq!(field.add(&a, &field.zero()), a.clone());
            prop_assert_eq!(field.mul(&a, &field.one()), a.clone());
            prop_assert!(field.is_zero(&field.add(&a, &field.neg(&a))));
            if !field.is_zero(&a) {
                prop_assert_eq!(field.mul(&a, &field.inv(&a)), field.one());
            }
        }

        #[test]
        fn rank_equals_rank_of_transpose(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
            let f = FiniteField::new(5, 1).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = FFMatrix::from_rows(
                &f,
                (0..rows).map(|_| (0..cols).map(|_| f.random(&mut rng)).collect()).collect(),
            );
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
