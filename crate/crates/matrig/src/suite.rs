//! The standard suite of example matroids and the acceptance battery:
//! twelve named criteria, each a self-contained check that reports
//! pass/fail with a detail string. The CLI `suite` subcommand and the
//! acceptance integration tests both run these.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Pow;

use crate::gf::FiniteField;
use crate::laman::{
    default_eps, is_laman_independent, laman_complex, polymatroid_rank, verify_exchange,
    ExchangeCheck, RationalSlope,
};
use crate::matroid::{self, LinearMatroid};
use crate::partition::equivalence_report;
use crate::photospace::photo_count_brute;
use crate::rigidity::{
    generic_complex, graphic_boolean_check, nesting_check, stabilization_check, MatroidKind,
};
use crate::subset::{Complex, Subset};
use crate::tutte::{
    dual_symmetry_check, laman_via_tutte, photo_count_formula, tutte_corank_nullity,
    tutte_recursive,
};

/// The Mersenne prime 2^61 - 1: a prime field of order >= 2^60, so
/// integer-vector matroids built over it can be sampled in place.
pub const BIG_PRIME: u64 = (1 << 61) - 1;

pub fn big_prime_field() -> FiniteField {
    FiniteField::new(BIG_PRIME, 1).expect("Mersenne prime")
}

pub fn k4_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
}

#[derive(Clone)]
pub struct SuiteMatroid {
    pub name: String,
    pub matroid: LinearMatroid,
}

fn named(name: &str, matroid: LinearMatroid) -> SuiteMatroid {
    SuiteMatroid { name: name.to_string(), matroid }
}

/// Every named example used across the acceptance battery. All are
/// loopless except the explicit loop.
pub fn standard_suite() -> Vec<SuiteMatroid> {
    let big = big_prime_field();
    let (grid_e, grid_e_prime) =
        matroid::grid_examples(&FiniteField::new(10007, 1).unwrap()).unwrap();
    let mu = big.from_u64(2);
    vec![
        named("loop", LinearMatroid::from_int_columns(&big, &[vec![]], 0).unwrap()),
        named("isthmus", LinearMatroid::from_int_columns(&big, &[vec![1]], 1).unwrap()),
        named("U(1,2)", LinearMatroid::from_int_columns(&big, &[vec![1], vec![1]], 1).unwrap()),
        named("U(2,3)", matroid::u23(&big)),
        named("U(2,4)", matroid::u24(&big, &mu).unwrap()),
        named("U(2,5)", matroid::uniform(2, 5, &big).unwrap()),
        named("U(3,5)", matroid::uniform(3, 5, &big).unwrap()),
        named("U(3,6)", matroid::uniform(3, 6, &big).unwrap()),
        named("M(K3)", matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)], &big).unwrap()),
        named("M(K4)", matroid::graphic(4, &k4_edges(), &big).unwrap()),
        named(
            "M(K4)-e",
            matroid::graphic(4, &k4_edges()[..5], &big).unwrap(),
        ),
        named("Fano", matroid::fano()),
        named("grid E", grid_e),
        named("grid E'", grid_e_prime),
    ]
}

/// The loopless members, optionally capped by ground-set size.
pub fn loopless_suite(max_n: usize) -> Vec<SuiteMatroid> {
    standard_suite()
        .into_iter()
        .filter(|s| s.matroid.is_loopless() && s.matroid.n() <= max_n && s.matroid.n() > 0)
        .collect()
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} [{}] {} ({} ms){}{}",
            self.index,
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.millis,
            if self.details.is_empty() { "" } else { " - " },
            self.details
        )
    }

    /// Like [`line`](Self::line) but without the timing, for reports that
    /// must be byte-identical across runs.
    pub fn line_stable(&self) -> String {
        format!(
            "criterion {:02} [{}] {}{}{}",
            self.index,
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            if self.details.is_empty() { "" } else { " - " },
            self.details
        )
    }
}

pub const CRITERION_COUNT: usize = 12;

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERION_COUNT).map(|i| run_criterion(i, seed)).collect()
}

pub fn run_criterion(index: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let (name, outcome) = match index {
        1 => ("tutte oracle equivalence", criterion_tutte_oracles()),
        2 => ("photo-count formula vs enumeration", criterion_photo_counts()),
        3 => ("photo-count duality", criterion_duality()),
        4 => ("planar trinity on small graphs", criterion_planar_trinity(seed)),
        5 => ("generic rigidity facts", criterion_rigidity_facts(seed)),
        6 => ("nesting chain", criterion_nesting(seed)),
        7 => ("laman matroidality and counterexample", criterion_exchange(seed)),
        8 => ("partition equivalence", criterion_equivalence()),
        9 => ("uniform laman formula", criterion_uniform_formula()),
        10 => ("stabilization and boolean collapse", criterion_stabilization(seed)),
        11 => ("tutte-laman criterion", criterion_tutte_laman()),
        12 => ("polymatroid characterization", criterion_polymatroid()),
        _ => panic!("no criterion {index}"),
    };
    let millis = start.elapsed().as_millis();
    let (mut passed, details) = outcome;
    // stated runtime budgets are part of the acceptance contract
    let budget_ms: Option<u128> = match index {
        1 => Some(10_000),
        2 => Some(60_000),
        5 => Some(300_000),
        _ => None,
    };
    if let Some(limit) = budget_ms {
        if millis >= limit {
            passed = false;
        }
    }
    CriterionResult { index, name, passed, details, millis }
}

fn summarize(failures: Vec<String>, checked: usize) -> (bool, String) {
    if failures.is_empty() {
        (true, format!("{checked} checks"))
    } else {
        let mut detail = failures[..failures.len().min(3)].join("; ");
        if failures.len() > 3 {
            detail.push_str(&format!(" (+{} more)", failures.len() - 3));
        }
        (false, detail)
    }
}

// 1. tutte_recursive = tutte_corank_nullity coefficient-for-coefficient
fn criterion_tutte_oracles() -> (bool, String) {
    let f11 = FiniteField::new(11, 1).unwrap();
    let mut instances: Vec<SuiteMatroid> = Vec::new();
    for r in 1..=4usize {
        for n in r..=8usize {
            instances.push(named(
                &format!("U({r},{n})"),
                matroid::uniform(r, n, &f11).unwrap(),
            ));
        }
    }
    let by_name: std::collections::HashSet<&str> =
        ["M(K4)", "M(K4)-e", "Fano", "grid E", "grid E'"].into();
    instances.extend(
        standard_suite()
            .into_iter()
            .filter(|s| by_name.contains(s.name.as_str())),
    );
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in &instances {
        let a = tutte_corank_nullity(&inst.matroid).unwrap();
        let b = tutte_recursive(&inst.matroid).unwrap();
        checked += 1;
        if a != b {
            failures.push(format!("{}: algorithms disagree", inst.name));
        }
    }
    summarize(failures, checked)
}

/// The photo-count acceptance grid: q in {2,3}, d in {2,3}, 0 < k < d.
fn photo_grid_instances(q: u64) -> Vec<SuiteMatroid> {
    let fq = FiniteField::new(q, 1).unwrap();
    let mut out = vec![
        named("loop", LinearMatroid::from_int_columns(&fq, &[vec![]], 0).unwrap()),
        named("isthmus", LinearMatroid::from_int_columns(&fq, &[vec![1]], 1).unwrap()),
        named("U(1,2)", LinearMatroid::from_int_columns(&fq, &[vec![1], vec![1]], 1).unwrap()),
        named("U(2,3)", matroid::u23(&fq)),
        named("M(K3)", matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)], &fq).unwrap()),
        named("M(K4)", matroid::graphic(4, &k4_edges(), &fq).unwrap()),
    ];
    if q == 2 {
        out.push(named("Fano", matroid::fano()));
    }
    out
}

fn criterion_photo_counts() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in [2u64, 3] {
        for d in [2u32, 3] {
            for k in 1..d {
                for inst in photo_grid_instances(q) {
                    let work = (q as u128)
                        .checked_pow(d * inst.matroid.r_ambient() as u32);
                    if work.is_none() || work.unwrap() > 1 << 24 {
                        continue;
                    }
                    let brute = photo_count_brute(&inst.matroid, k, d).unwrap();
                    let formula = photo_count_formula(&inst.matroid, k, d, q).unwrap();
                    checked += 1;
                    if brute.total != formula {
                        failures.push(format!(
                            "{} q={q} k={k} d={d}: brute {} vs formula {}",
                            inst.name, brute.total, formula
                        ));
                    }
                }
            }
        }
    }
    summarize(failures, checked)
}

fn criterion_duality() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in [2u64, 3] {
        for d in [2u32, 3] {
            for k in 1..d {
                for inst in photo_grid_instances(q) {
                    let sym = dual_symmetry_check(&inst.matroid, k, d, q).unwrap();
                    checked += 1;
                    if !sym.holds() {
                        failures.push(format!(
                            "{} q={q} k={k} d={d}: {} vs {}",
                            inst.name, sym.lhs, sym.rhs
                        ));
                    }
                }
            }
        }
    }
    summarize(failures, checked)
}

/// One representative edge set of K5 per isomorphism class of graphs on
/// <= 5 vertices. The complexes under comparison are all equivariant
/// under relabeling, so class representatives carry the full content.
pub fn small_graph_representatives() -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = (0..5)
        .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
        .collect();
    let mut edge_index = [[usize::MAX; 5]; 5];
    for (i, &(u, v)) in edges.iter().enumerate() {
        edge_index[u][v] = i;
        edge_index[v][u] = i;
    }
    // all 120 permutations of 5 vertices
    let mut perms: Vec<[usize; 5]> = Vec::new();
    let mut items = [0usize, 1, 2, 3, 4];
    fn heap(k: usize, items: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 1 {
            out.push(*items);
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(5, &mut items, &mut perms);

    let mut reps = Vec::new();
    for mask in 0u32..1 << 10 {
        let canonical = perms
            .iter()
            .map(|p| {
                let mut remapped = 0u32;
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        remapped |= 1 << edge_index[p[u]][p[v]];
                    }
                }
                remapped
            })
            .min()
            .unwrap();
        if canonical == mask {
            reps.push(
                (0..10)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect(),
            );
        }
    }
    reps
}

fn classical_laman_complex(n_vertices: usize, edges: &[(usize, usize)]) -> Complex {
    let count_ok = |a: Subset| -> bool {
        let mut touched = 0u32;
        for e in a.iter() {
            let (u, v) = edges[e];
            touched |= 1 << u;
            touched |= 1 << v;
        }
        let nv = touched.count_ones() as i64;
        let _ = n_vertices;
        2 * nv - 3 >= a.len() as i64
    };
    Complex::from_predicate(edges.len(), |a| {
        a.proper_and_improper_subsets().all(count_ok)
    })
}

fn criterion_planar_trinity(seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    let big = big_prime_field();
    let bound = BigRational::new(BigInt::from(1), BigInt::from(2u8).pow(80u32));
    let mut graphs = small_graph_representatives();
    graphs.push(k4_edges());
    for edges in &graphs {
        let m = matroid::graphic(5, edges, &big).unwrap();
        let rep = match nesting_check(&m, 2, 3, seed) {
            Ok(rep) => rep,
            Err(e) => {
                failures.push(format!("{edges:?}: {e}"));
                continue;
            }
        };
        checked += 1;
        if !rep.ok() {
            failures.push(format!("{edges:?}: {:?}", rep.violations));
        }
        for report in [&rep.r_complex, &rep.h_complex] {
            if report.failure_bound >= bound {
                failures.push(format!("{edges:?}: failure bound too large"));
            }
        }
        let classical = classical_laman_complex(5, edges);
        if rep.l_complex != classical {
            failures.push(format!("{edges:?}: L^2 differs from the classical count"));
        }
    }
    summarize(failures, checked)
}

fn criterion_rigidity_facts(seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    let big = big_prime_field();
    let mut expect = |name: &str, m: &LinearMatroid, d: usize, want: &Complex| {
        let rep = generic_complex(m, d, MatroidKind::Rigidity, 3, seed).unwrap();
        checked += 1;
        if rep.complex != *want {
            failures.push(format!("R^{d}({name}) unexpected"));
        }
    };
    expect("U(2,3)", &matroid::u23(&big), 2, &Complex::full_simplex(3));
    let mu = big.from_u64(2);
    let u24 = matroid::u24(&big, &mu).unwrap();
    expect("U(2,4)", &u24, 2, &Complex::uniform(3, 4));
    expect("U(2,4)", &u24, 3, &Complex::uniform(3, 4));
    let fano = matroid::fano();
    expect("Fano", &fano, 2, &Complex::uniform(5, 7));
    expect("Fano", &fano, 3, &Complex::uniform(6, 7));

    let (grid_e, grid_e_prime) =
        matroid::grid_examples(&FiniteField::new(10007, 1).unwrap()).unwrap();
    expect("grid E", &grid_e, 2, &Complex::uniform(5, 9));
    expect("grid E'", &grid_e_prime, 2, &Complex::uniform(5, 9));

    // R^3 of both grids: bases are the 6-subsets other than the eight
    // line complements
    let lines: Vec<Subset> = grid_e
        .flats()
        .unwrap()
        .into_iter()
        .filter(|&fl| grid_e.rank_of(fl) == 2 && fl.len() == 3)
        .collect();
    let expected_faces: Vec<Subset> = Subset::all(9)
        .filter(|a| {
            if a.len() > 6 {
                return false;
            }
            // a face iff contained in some admissible basis; since the
            // complex is a matroid of rank 6, faces are subsets of bases
            if a.len() == 6 {
                !lines.iter().any(|l| *a == Subset::full(9).minus(*l))
            } else {
                true
            }
        })
        .collect();
    // subsets of size < 6 are faces iff they extend to an admissible
    // 6-set; with only 8 of 84 six-sets excluded every 5-set extends
    let expected = Complex::from_faces(9, expected_faces);
    let r3_e = generic_complex(&grid_e, 3, MatroidKind::Rigidity, 3, seed).unwrap();
    let r3_e_prime = generic_complex(&grid_e_prime, 3, MatroidKind::Rigidity, 3, seed + 1).unwrap();
    checked += 2;
    if r3_e.complex != expected {
        failures.push("R^3(grid E) differs from the eight-line description".into());
    }
    if r3_e.complex != r3_e_prime.complex {
        failures.push("R^3 of the two grids differ".into());
    }
    summarize(failures, checked)
}

fn criterion_nesting(seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(9) {
        for d in [2usize, 3, 4] {
            match nesting_check(&inst.matroid, d, 3, seed) {
                Ok(rep) => {
                    checked += 1;
                    if !rep.ok() {
                        failures.push(format!("{} d={d}: {:?}", inst.name, rep.violations));
                    }
                }
                Err(e) => failures.push(format!("{} d={d}: {e}", inst.name)),
            }
        }
    }
    summarize(failures, checked)
}

fn criterion_exchange(seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(9) {
        for d in [2u64, 3] {
            let c = laman_complex(&inst.matroid, RationalSlope::integer(d).unwrap()).unwrap();
            checked += 1;
            if !verify_exchange(&c).passes() {
                failures.push(format!("{} d={d}: exchange failed on a matroid", inst.name));
            }
        }
    }
    // the non-integer slope 3/2 must produce an explicit violation
    let field = FiniteField::new(10007, 1).unwrap();
    let counter = matroid::laman_counterexample(3, 2, &field, seed).unwrap();
    let c = laman_complex(&counter, RationalSlope::new(3, 2).unwrap()).unwrap();
    checked += 1;
    match verify_exchange(&c) {
        ExchangeCheck::Fails { smaller, larger } => {
            if !(smaller.len() < larger.len()
                && larger.minus(smaller).iter().all(|x| !c.contains(smaller.insert(x))))
            {
                failures.push("counterexample violation pair is not genuine".into());
            }
        }
        ExchangeCheck::Passes => {
            failures.push("L^{3/2} of the counterexample unexpectedly passed exchange".into())
        }
    }
    summarize(failures, checked)
}

fn criterion_equivalence() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(9) {
        for d in [1usize, 2, 3] {
            match equivalence_report(&inst.matroid, d) {
                Ok(rep) => {
                    checked += 1;
                    if !rep.agree {
                        failures.push(format!("{} d={d}: three-way disagreement", inst.name));
                    }
                    if inst.name == "M(K4)" && d == 2 && rep.laman_independent {
                        failures.push("M(K4) must be fully dependent at d=2".into());
                    }
                    if inst.name == "M(K4)-e" && d == 2 && !rep.laman_independent {
                        failures.push("M(K4)-e must be independent at d=2".into());
                    }
                }
                Err(e) => failures.push(format!("{} d={d}: {e}", inst.name)),
            }
        }
    }
    summarize(failures, checked)
}

fn criterion_uniform_formula() -> (bool, String) {
    let f11 = FiniteField::new(11, 1).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in 1..=3usize {
        for n in r..=7usize {
            let m = matroid::uniform(r, n, &f11).unwrap();
            for (num, den) in [(3u64, 2u64), (2, 1), (5, 2), (3, 1)] {
                let slope = RationalSlope::new(num, den).unwrap();
                let c = laman_complex(&m, slope).unwrap();
                // s = min(ceil(m r - 1), n) = min((num r - 1) div den, n)
                let s = (((num * r as u64) - 1) / den).min(n as u64) as usize;
                checked += 1;
                if c != Complex::uniform(s, n) {
                    failures.push(format!("U({r},{n}) at m={num}/{den}: not U({s},{n})"));
                }
            }
        }
    }
    summarize(failures, checked)
}

fn criterion_stabilization(seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(9) {
        match stabilization_check(&inst.matroid, 2, seed) {
            Ok(rep) => {
                checked += 1;
                if !rep.stable {
                    failures.push(format!("{}: R^d moves beyond d = r", inst.name));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", inst.name)),
        }
        // R^1 must reproduce the matroid itself
        let m = &inst.matroid;
        let r1 = generic_complex(m, 1, MatroidKind::Rigidity, 2, seed).unwrap();
        let own = Complex::from_predicate(m.n(), |a| m.is_independent(a));
        checked += 1;
        if r1.complex != own {
            failures.push(format!("{}: R^1 differs from the matroid", inst.name));
        }
    }
    match graphic_boolean_check(4, &k4_edges(), 2, seed) {
        Ok(true) => checked += 1,
        Ok(false) => failures.push("R^4(M(K4)) is not the full power set".into()),
        Err(e) => failures.push(format!("graphic boolean: {e}")),
    }
    summarize(failures, checked)
}

fn criterion_tutte_laman() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(9) {
        for d in [2u32, 3] {
            let via_tutte = laman_via_tutte(&inst.matroid, d).unwrap();
            let direct = is_laman_independent(
                &inst.matroid,
                RationalSlope::integer(d as u64).unwrap(),
                inst.matroid.ground_set(),
            )
            .independent;
            checked += 1;
            if via_tutte != direct {
                failures.push(format!("{} d={d}: criterion disagrees", inst.name));
            }
        }
    }
    // L^d(Fano) is Boolean for d > 7/3, checked at d = 3
    let fano = matroid::fano();
    let l3 = laman_complex(&fano, RationalSlope::integer(3).unwrap()).unwrap();
    checked += 1;
    if l3 != Complex::full_simplex(7) {
        failures.push("L^3(Fano) is not Boolean".into());
    }
    summarize(failures, checked)
}

fn criterion_polymatroid() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in loopless_suite(8) {
        for (num, den) in [(3u64, 2u64), (2, 1)] {
            let slope = RationalSlope::new(num, den).unwrap();
            let eps: Rational64 = default_eps(&inst.matroid, slope).unwrap();
            for a in Subset::all(inst.matroid.n()) {
                let rho = polymatroid_rank(&inst.matroid, slope, eps, a).unwrap();
                let indep = is_laman_independent(&inst.matroid, slope, a).independent;
                checked += 1;
                if (rho == Rational64::from_integer(a.len() as i64)) != indep {
                    failures.push(format!(
                        "{} m={num}/{den} A={a}: rho and Laman disagree",
                        inst.name
                    ));
                }
            }
        }
    }
    summarize(failures, checked)
}
