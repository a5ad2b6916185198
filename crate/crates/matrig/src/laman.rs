//! m-Laman independence for rational slopes m > 1, the Laman and slope
//! complexes, basis-exchange verification, and the associated polymatroid
//! rank.
//!
//! The defining inequality m * r(A') > |A'| is always evaluated as
//! num * r > den * |A'| in exact integers; there is no epsilon anywhere.
//! Irrational slopes are not representable (the complex is locally
//! constant in m, so a nearby rational gives the same complex).

use std::fmt;

use num_rational::Rational64;

use crate::matroid::{LinearMatroid, MatroidError};
use crate::subset::{Complex, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LamanError {
    /// A finite slope must satisfy m > 1.
    SlopeOutOfRange,
    /// This operation requires a finite slope.
    InfiniteSlope,
    GroundSetTooLarge { n: usize, max: usize },
    /// slope_complex needs 0 < k < d.
    BadDimensions { k: usize, d: usize },
    LoopPresent,
    /// polymatroid_rank needs 0 < eps < 1/r(M).
    EpsOutOfRange,
}

impl fmt::Display for LamanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LamanError::SlopeOutOfRange => write!(f, "slope must satisfy m > 1"),
            LamanError::InfiniteSlope => write!(f, "operation requires a finite slope"),
            LamanError::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds the enumeration guard {max}")
            }
            LamanError::BadDimensions { k, d } => {
                write!(f, "need 0 < k < d, got k={k}, d={d}")
            }
            LamanError::LoopPresent => write!(f, "matroid must be loopless"),
            LamanError::EpsOutOfRange => write!(f, "eps must lie in (0, 1/r(M))"),
        }
    }
}

impl std::error::Error for LamanError {}

impl From<MatroidError> for LamanError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::GroundSetTooLarge { n, max } => LamanError::GroundSetTooLarge { n, max },
            other => panic!("unexpected matroid error: {other}"),
        }
    }
}

/// A slope m in (1, infinity]: a reduced fraction num/den with
/// num > den >= 1, or the distinguished value Infinity (the limit complex
/// L^infinity, which on a loopless matroid is the full power set).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum RationalSlope {
    Finite { num: u64, den: u64 },
    Infinity,
}

impl RationalSlope {
    pub fn new(num: u64, den: u64) -> Result<RationalSlope, LamanError> {
        if den == 0 {
            return Err(LamanError::SlopeOutOfRange);
        }
        let g = num_integer::gcd(num, den);
        let (num, den) = (num / g, den / g);
        if num <= den {
            return Err(LamanError::SlopeOutOfRange);
        }
        Ok(RationalSlope::Finite { num, den })
    }

    pub fn integer(d: u64) -> Result<RationalSlope, LamanError> {
        RationalSlope::new(d, 1)
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, RationalSlope::Finite { den: 1, .. })
    }

    /// num * r > den * size, the defining inequality.
    fn count_ok(&self, rank: usize, size: usize) -> bool {
        match *self {
            RationalSlope::Finite { num, den } => {
                (num as u128) * (rank as u128) > (den as u128) * (size as u128)
            }
            RationalSlope::Infinity => rank > 0 || size == 0,
        }
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalSlope::Finite { num, den } => write!(f, "{num}/{den}"),
            RationalSlope::Infinity => write!(f, "infinity"),
        }
    }
}

impl fmt::Debug for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of an m-Laman independence test. When dependent, the witness
/// is a violating subset (a flat of the restriction) with
/// num * r(witness) <= den * |witness|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LamanReport {
    pub independent: bool,
    pub witness: Subset,
}

/// Decide whether A is m-Laman independent in M.
///
/// The fast path quantifies only over the flats of the restriction M|_A,
/// which suffices because rank is constant on closures while cardinality
/// grows. When |A| <= 15 an all-subsets brute force double-checks the
/// verdict.
pub fn is_laman_independent(m: &LinearMatroid, slope: RationalSlope, a: Subset) -> LamanReport {
    let report = flat_restricted_test(m, slope, a);
    if a.len() <= 15 {
        let brute = a
            .proper_and_improper_subsets()
            .all(|s| slope.count_ok(m.rank_of(s), s.len()));
        assert_eq!(
            report.independent, brute,
            "flat-restricted Laman test disagrees with the brute-force oracle"
        );
    }
    report
}

fn flat_restricted_test(m: &LinearMatroid, slope: RationalSlope, a: Subset) -> LamanReport {
    // walk the flats of M|_A (closures within A) from the bottom up
    let bottom = m.closure(Subset::EMPTY).intersect(a);
    let mut seen: std::collections::BTreeSet<Subset> = [bottom].into();
    let mut work = vec![bottom];
    while let Some(f) = work.pop() {
        if !f.is_empty() && !slope.count_ok(m.rank_of(f), f.len()) {
            return LamanReport { independent: false, witness: f };
        }
        for i in a.minus(f).iter() {
            let g = m.closure(f.insert(i)).intersect(a);
            if seen.insert(g) {
                work.push(g);
            }
        }
    }
    LamanReport { independent: true, witness: Subset::EMPTY }
}

/// The m-Laman complex: all m-Laman independent subsets of the ground set.
pub fn laman_complex(m: &LinearMatroid, slope: RationalSlope) -> Result<Complex, LamanError> {
    let n = m.n();
    if n > 22 {
        return Err(LamanError::GroundSetTooLarge { n, max: 22 });
    }
    let rt = m.rank_table()?;
    let mut indep = vec![false; 1 << n];
    indep[0] = true;
    let mut faces = vec![Subset::EMPTY];
    for mask in 1u32..(1 << n) {
        let hereditary = {
            let mut ok = true;
            let mut rest = mask;
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                if !indep[(mask ^ b) as usize] {
                    ok = false;
                    break;
                }
                rest ^= b;
            }
            ok
        };
        if hereditary && slope.count_ok(rt[mask as usize] as usize, mask.count_ones() as usize) {
            indep[mask as usize] = true;
            faces.push(Subset(mask));
        }
    }
    Ok(Complex::from_faces(n, faces))
}

/// The (k,d)-slope complex, which equals the Laman complex at
/// m = d/(d-k).
pub fn slope_complex(m: &LinearMatroid, k: usize, d: usize) -> Result<Complex, LamanError> {
    if k == 0 || k >= d {
        return Err(LamanError::BadDimensions { k, d });
    }
    let slope = RationalSlope::new(d as u64, (d - k) as u64)?;
    laman_complex(m, slope)
}

/// Result of checking the basis-exchange axiom on a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExchangeCheck {
    Passes,
    Fails { smaller: Subset, larger: Subset },
}

impl ExchangeCheck {
    pub fn passes(&self) -> bool {
        matches!(self, ExchangeCheck::Passes)
    }
}

/// Check the basis-exchange axiom: for faces I, J with |I| < |J|, some
/// x in J \ I has I + x a face. For a downward-closed complex it is
/// enough to check |J| = |I| + 1, and any violation at that level is a
/// violation of the general axiom.
pub fn verify_exchange(c: &Complex) -> ExchangeCheck {
    assert!(c.is_downward_closed(), "exchange check needs all faces");
    let max_size = c.faces().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<Vec<Subset>> = vec![Vec::new(); max_size + 1];
    for &f in c.faces() {
        by_size[f.len()].push(f);
    }
    for s in 0..max_size {
        for &small in &by_size[s] {
            'pair: for &large in &by_size[s + 1] {
                for x in large.minus(small).iter() {
                    if c.contains(small.insert(x)) {
                        continue 'pair;
                    }
                }
                return ExchangeCheck::Fails { smaller: small, larger: large };
            }
        }
    }
    ExchangeCheck::Passes
}

/// The polymatroid rank rho(A) = min over A' of (m - eps) r(A') + |A \ A'|,
/// in exact rational arithmetic. For eps in (0, 1/r(M)), rho(A) = |A| iff
/// A is m-Laman independent.
pub fn polymatroid_rank(
    m: &LinearMatroid,
    slope: RationalSlope,
    eps: Rational64,
    a: Subset,
) -> Result<Rational64, LamanError> {
    if !m.is_loopless() {
        return Err(LamanError::LoopPresent);
    }
    let RationalSlope::Finite { num, den } = slope else {
        return Err(LamanError::InfiniteSlope);
    };
    let r_m = m.rank() as i64;
    let upper = if r_m == 0 {
        Rational64::new(1, 1)
    } else {
        Rational64::new(1, r_m)
    };
    if eps <= Rational64::new(0, 1) || eps >= upper {
        return Err(LamanError::EpsOutOfRange);
    }
    let coeff = Rational64::new(num as i64, den as i64) - eps;
    let mut best = Rational64::from_integer(a.len() as i64); // A' = empty
    for s in a.proper_and_improper_subsets() {
        let value = coeff * Rational64::from_integer(m.rank_of(s) as i64)
            + Rational64::from_integer((a.len() - s.len()) as i64);
        best = best.min(value);
    }
    Ok(best)
}

/// The default eps for [`polymatroid_rank`], inside the open interval and
/// small enough that rho characterizes m-Laman independence.
///
/// For m = num/den the smallest positive value of m*r(A) - |A| is 1/den,
/// so the characterization needs eps*r(A) <= 1/den for every A; any
/// eps <= 1/(den*r(M)) works. An eps that is merely below 1/r(M) is not
/// enough when den > 1 (take a 4-cycle of K4 at m = 3/2 with eps = 1/4).
pub fn default_eps(m: &LinearMatroid, slope: RationalSlope) -> Result<Rational64, LamanError> {
    let RationalSlope::Finite { den, .. } = slope else {
        return Err(LamanError::InfiniteSlope);
    };
    Ok(Rational64::new(1, den as i64 * (m.rank() as i64 + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::matroid;

    fn f(p: u64) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    fn k4(field: &FiniteField) -> LinearMatroid {
        matroid::graphic(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)], field).unwrap()
    }

    fn slope(num: u64, den: u64) -> RationalSlope {
        RationalSlope::new(num, den).unwrap()
    }

    #[test]
    fn slope_validation() {
        assert!(RationalSlope::new(1, 1).is_err());
        assert!(RationalSlope::new(2, 3).is_err());
        assert!(RationalSlope::new(4, 2).unwrap().is_integer());
        assert_eq!(slope(6, 4), slope(3, 2));
    }

    #[test]
    fn k4_full_edge_set_is_2_laman_dependent_with_witness_e() {
        let m = k4(&f(5));
        let rep = is_laman_independent(&m, slope(2, 1), Subset::full(6));
        assert!(!rep.independent);
        assert_eq!(rep.witness, Subset::full(6));
        // invariant: num * r(witness) <= den * |witness|
        assert!(2 * m.rank_of(rep.witness) <= rep.witness.len());
    }

    #[test]
    fn k4_minus_any_edge_is_2_laman_independent() {
        let m = k4(&f(5));
        for e in 0..6 {
            let a = Subset::full(6).remove(e);
            assert!(is_laman_independent(&m, slope(2, 1), a).independent);
        }
    }

    #[test]
    fn u24_at_three_halves_is_dependent() {
        let field = f(5);
        let m = matroid::uniform(2, 4, &field).unwrap();
        let rep = is_laman_independent(&m, slope(3, 2), Subset::full(4));
        assert!(!rep.independent);
        assert_eq!(rep.witness, Subset::full(4));
    }

    #[test]
    fn laman_complex_of_u24_at_2_is_u34() {
        let m = matroid::uniform(2, 4, &f(5)).unwrap();
        let c = laman_complex(&m, slope(2, 1)).unwrap();
        assert_eq!(c, Complex::uniform(3, 4));
    }

    #[test]
    fn laman_complex_of_u23_is_full_above_three_halves() {
        let m = matroid::u23(&f(5));
        assert_eq!(
            laman_complex(&m, slope(2, 1)).unwrap(),
            Complex::full_simplex(3)
        );
        assert_eq!(
            laman_complex(&m, slope(7, 4)).unwrap(),
            Complex::full_simplex(3)
        );
        // at exactly 3/2 the whole set fails: 3*2 = 6 is not > 2*3
        assert_eq!(
            laman_complex(&m, slope(3, 2)).unwrap(),
            Complex::uniform(2, 3)
        );
    }

    #[test]
    fn laman_complex_with_a_loop_avoids_it() {
        let field = f(5);
        let m = LinearMatroid::from_int_columns(&field, &[vec![0], vec![1]], 1).unwrap();
        let c = laman_complex(&m, slope(2, 1)).unwrap();
        assert_eq!(c.faces(), &[Subset::EMPTY, Subset::singleton(1)]);
        // and the infinite slope gives exactly the loop-free subsets
        let ci = laman_complex(&m, RationalSlope::Infinity).unwrap();
        assert_eq!(ci.faces(), &[Subset::EMPTY, Subset::singleton(1)]);
    }

    #[test]
    fn infinity_on_loopless_is_full() {
        let m = matroid::u23(&f(5));
        assert_eq!(
            laman_complex(&m, RationalSlope::Infinity).unwrap(),
            Complex::full_simplex(3)
        );
    }

    #[test]
    fn slope_complex_examples() {
        let field = f(5);
        let u24 = matroid::uniform(2, 4, &field).unwrap();
        assert_eq!(slope_complex(&u24, 1, 2).unwrap(), Complex::uniform(3, 4));
        let u23 = matroid::u23(&field);
        assert_eq!(slope_complex(&u23, 1, 3).unwrap(), Complex::uniform(2, 3));
        assert!(matches!(
            slope_complex(&u23, 2, 2),
            Err(LamanError::BadDimensions { .. })
        ));
        // scaling invariance
        for m in [&u24, &u23] {
            assert_eq!(slope_complex(m, 2, 4).unwrap(), slope_complex(m, 1, 2).unwrap());
            for (k, d) in [(1usize, 2usize), (1, 3), (2, 3)] {
                for lambda in [2usize, 3] {
                    assert_eq!(
                        slope_complex(m, k, d).unwrap(),
                        slope_complex(m, lambda * k, lambda * d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn exchange_passes_on_matroidal_complexes() {
        let m = k4(&f(5));
        assert!(verify_exchange(&laman_complex(&m, slope(2, 1)).unwrap()).passes());
        assert!(verify_exchange(&Complex::full_simplex(5)).passes());
    }

    #[test]
    fn exchange_fails_on_the_counterexample() {
        let field = f(10007);
        let m = matroid::laman_counterexample(3, 2, &field, 7).unwrap();
        let c = laman_complex(&m, slope(3, 2)).unwrap();
        let check = verify_exchange(&c);
        let ExchangeCheck::Fails { smaller, larger } = check else {
            panic!("expected an exchange violation for the 3/2 counterexample");
        };
        // the violating pair is a genuine counterexample
        assert!(smaller.len() < larger.len());
        assert!(larger
            .minus(smaller)
            .iter()
            .all(|x| !c.contains(smaller.insert(x))));
    }

    #[test]
    fn exchange_fails_at_five_halves_too() {
        let field = f(10007);
        let m = matroid::laman_counterexample(5, 2, &field, 11).unwrap();
        let c = laman_complex(&m, slope(5, 2)).unwrap();
        assert!(!verify_exchange(&c).passes());
    }

    #[test]
    fn laman_complex_matches_brute_definition_on_suite() {
        let field = f(10007);
        let suite: Vec<LinearMatroid> = vec![
            matroid::u23(&field),
            matroid::uniform(2, 4, &field).unwrap(),
            matroid::uniform(3, 5, &field).unwrap(),
            k4(&field),
            matroid::fano(),
        ];
        let slopes = [slope(3, 2), slope(2, 1), slope(5, 2), slope(3, 1)];
        for m in &suite {
            let rt = m.rank_table().unwrap();
            for &s in &slopes {
                let c = laman_complex(m, s).unwrap();
                for a in Subset::all(m.n()) {
                    let brute = a
                        .proper_and_improper_subsets()
                        .all(|t| s.count_ok(rt[t.0 as usize] as usize, t.len()));
                    assert_eq!(c.contains(a), brute);
                }
            }
        }
    }

    #[test]
    fn monotone_in_m() {
        let field = f(10007);
        for m in [matroid::uniform(2, 5, &field).unwrap(), k4(&field), matroid::fano()] {
            let slopes = [slope(3, 2), slope(2, 1), slope(5, 2), slope(3, 1)];
            for w in slopes.windows(2) {
                let lo = laman_complex(&m, w[0]).unwrap();
                let hi = laman_complex(&m, w[1]).unwrap();
                assert!(lo.is_subcomplex_of(&hi));
            }
        }
    }

    #[test]
    fn polymatroid_rank_examples() {
        let field = f(5);
        let u23 = matroid::u23(&field);
        assert_eq!(
            polymatroid_rank(&u23, slope(2, 1), Rational64::new(1, 3), Subset::EMPTY).unwrap(),
            Rational64::from_integer(0)
        );
        assert_eq!(
            polymatroid_rank(&u23, slope(2, 1), Rational64::new(1, 3), Subset::full(3)).unwrap(),
            Rational64::from_integer(3)
        );
        let m = k4(&field);
        let rho =
            polymatroid_rank(&m, slope(2, 1), Rational64::new(1, 4), Subset::full(6)).unwrap();
        assert!(rho < Rational64::from_integer(6));
        assert_eq!(rho, Rational64::new(21, 4));
    }

    #[test]
    fn polymatroid_rank_validation() {
        let field = f(5);
        let u23 = matroid::u23(&field);
        assert_eq!(
            polymatroid_rank(&u23, slope(2, 1), Rational64::new(1, 2), Subset::EMPTY),
            Err(LamanError::EpsOutOfRange)
        );
        let with_loop = LinearMatroid::from_int_columns(&field, &[vec![0]], 1).unwrap();
        assert_eq!(
            polymatroid_rank(&with_loop, slope(2, 1), Rational64::new(1, 4), Subset::EMPTY),
            Err(LamanError::LoopPresent)
        );
    }

    #[test]
    fn polymatroid_axioms_and_independence_equivalence() {
        let field = f(10007);
        for m in [matroid::u23(&field), matroid::uniform(2, 4, &field).unwrap(), k4(&field)] {
            for s in [slope(3, 2), slope(2, 1)] {
                let eps = default_eps(&m, s).unwrap();
                let n = m.n();
                let rho: Vec<Rational64> = Subset::all(n)
                    .map(|a| polymatroid_rank(&m, s, eps, a).unwrap())
                    .collect();
                assert_eq!(rho[0], Rational64::from_integer(0), "normalized");
                for a in Subset::all(n) {
                    for b in Subset::all(n) {
                        if a.is_subset_of(b) {
                            assert!(rho[a.0 as usize] <= rho[b.0 as usize], "monotone");
                        }
                        let lhs = rho[a.union(b).0 as usize] + rho[a.intersect(b).0 as usize];
                        assert!(lhs <= rho[a.0 as usize] + rho[b.0 as usize], "submodular");
                    }
                }
                for a in Subset::all(n) {
                    let indep = is_laman_independent(&m, s, a).independent;
                    assert_eq!(
                        rho[a.0 as usize] == Rational64::from_integer(a.len() as i64),
                        indep,
                        "rho(A) = |A| must characterize m-Laman independence"
                    );
                }
            }
        }
    }
}
