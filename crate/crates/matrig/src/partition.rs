//! Matroid partitioning into d independent sets, d-Edmonds decompositions,
//! d-Recski independence, and the harness asserting their three-way
//! equivalence with d-Laman independence.
//!
//! The partition algorithm is the classical matroid-union augmenting-path
//! scheme: to place an uncovered element, BFS over the exchange graph
//! whose arcs y -> z (z in part I_j) mean that z lies in the circuit of
//! I_j + y, so swapping z out admits y. Both outcomes self-verify before
//! they are returned.

use std::collections::HashMap;
use std::fmt;

use crate::laman::{is_laman_independent, RationalSlope};
use crate::matroid::LinearMatroid;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    /// The supplied parts are not a disjoint independent cover of E.
    PartsInvalid(String),
    GroundSetTooLarge { n: usize, max: usize },
    /// The decomposition check adopts the loopless reading of the
    /// sub-tuple quantifier and rejects loops outright.
    LoopPresent,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::PartsInvalid(why) => write!(f, "invalid parts: {why}"),
            PartitionError::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds the enumeration guard {max}")
            }
            PartitionError::LoopPresent => write!(f, "matroid must be loopless"),
        }
    }
}

impl std::error::Error for PartitionError {}

/// A partition of the ground set into d disjoint independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Subset>,
}

/// Either a full decomposition or a violating subset A with d*r(A) < |A|.
/// Exactly one branch is possible, by Edmonds' theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionCertificate {
    Decomposition(Decomposition),
    Violator(Subset),
}

impl PartitionCertificate {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            PartitionCertificate::Decomposition(d) => Some(d),
            PartitionCertificate::Violator(_) => None,
        }
    }

    pub fn violator(&self) -> Option<Subset> {
        match self {
            PartitionCertificate::Violator(v) => Some(*v),
            PartitionCertificate::Decomposition(_) => None,
        }
    }
}

/// Partition E into d independent sets, or produce a violator.
///
/// Both branches are checked before returning: a decomposition's parts are
/// disjoint, covering and independent; a violator genuinely satisfies
/// d*r(A) < |A| (it is the closure of the set reachable in the exchange
/// graph from the stuck element, the standard min-max witness).
pub fn matroid_partition(m: &LinearMatroid, d: usize) -> PartitionCertificate {
    assert!(d >= 1, "need at least one part");
    let n = m.n();
    let mut parts: Vec<Subset> = vec![Subset::EMPTY; d];

    'elements: for e in 0..n {
        // BFS over the exchange graph from e
        let mut prev: HashMap<usize, (usize, usize)> = HashMap::new(); // node -> (parent, part of node)
        let mut visited = Subset::singleton(e);
        let mut queue = std::collections::VecDeque::from([e]);
        while let Some(y) = queue.pop_front() {
            // direct insertion into a part not already holding y?
            for (j, part) in parts.iter().enumerate() {
                if part.contains(y) {
                    continue;
                }
                if m.is_independent(part.insert(y)) {
                    // unwind: move y into part j, then walk the path back,
                    // each ancestor replacing the element it reached
                    let mut part_j = j;
                    let mut node = y;
                    loop {
                        parts[part_j] = parts[part_j].insert(node);
                        match prev.get(&node) {
                            Some(&(parent, node_part)) => {
                                parts[node_part] = parts[node_part].remove(node);
                                part_j = node_part;
                                node = parent;
                            }
                            None => break,
                        }
                    }
                    for part in &parts {
                        debug_assert!(m.is_independent(*part));
                    }
                    continue 'elements;
                }
            }
            // otherwise expand along circuits
            for (j, part) in parts.iter().enumerate() {
                if part.contains(y) {
                    continue;
                }
                // I_j + y is dependent; its unique circuit is
                // { z in I_j : I_j + y - z is independent } + y
                let with = part.insert(y);
                for z in part.iter() {
                    if !visited.contains(z) && m.is_independent(with.remove(z)) {
                        visited = visited.insert(z);
                        prev.insert(z, (y, j));
                        queue.push_back(z);
                    }
                }
            }
        }
        // stuck: the closure of the reachable set is a violator
        let witness = m.closure(visited);
        assert!(
            d * m.rank_of(witness) < witness.len(),
            "exchange-graph witness failed to violate"
        );
        return PartitionCertificate::Violator(witness);
    }

    // self-verify the decomposition
    let mut union = Subset::EMPTY;
    for part in &parts {
        assert!(union.intersect(*part).is_empty(), "parts overlap");
        union = union.union(*part);
        assert!(m.is_independent(*part), "part not independent");
    }
    assert_eq!(union, m.ground_set(), "parts do not cover");
    PartitionCertificate::Decomposition(Decomposition { parts })
}

/// Result of testing for a d-Edmonds decomposition: either no
/// nonempty-overall tuple of part subsets shares a common span, or a
/// violating tuple is produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdmondsCheck {
    pub is_decomposition: bool,
    /// A tuple (I'_1, ..., I'_d), not all empty, with equal closures.
    pub violating_tuple: Option<Vec<Subset>>,
}

/// Check whether a valid partition is a d-Edmonds decomposition: no
/// choice of subsets I'_j of the parts, not all empty, may have all
/// closures equal. Implemented by bucketing the nonempty subsets of each
/// part by closure and intersecting the key sets; under looplessness a
/// mixed tuple (some parts empty) can never violate, because a nonempty
/// subset of an independent set cannot close to the empty flat.
pub fn is_edmonds_decomposition(
    m: &LinearMatroid,
    parts: &[Subset],
) -> Result<EdmondsCheck, PartitionError> {
    if !m.is_loopless() {
        return Err(PartitionError::LoopPresent);
    }
    let n = m.n();
    if n > 18 {
        return Err(PartitionError::GroundSetTooLarge { n, max: 18 });
    }
    let mut union = Subset::EMPTY;
    for part in parts {
        if !union.intersect(*part).is_empty() {
            return Err(PartitionError::PartsInvalid("parts overlap".into()));
        }
        union = union.union(*part);
        if !m.is_independent(*part) {
            return Err(PartitionError::PartsInvalid(format!(
                "part {part} is dependent"
            )));
        }
    }
    if union != m.ground_set() {
        return Err(PartitionError::PartsInvalid("parts do not cover E".into()));
    }

    // closure -> example nonempty achiever, per part (ordered, so the
    // reported tuple is deterministic)
    let buckets: Vec<std::collections::BTreeMap<Subset, Subset>> = parts
        .iter()
        .map(|part| {
            let mut map = std::collections::BTreeMap::new();
            for s in part.proper_and_improper_subsets() {
                map.entry(m.closure(s)).or_insert(s);
            }
            map
        })
        .collect();
    if let Some(first) = buckets.first() {
        for (&cl, &achiever) in first {
            let mut tuple = vec![achiever];
            let mut all = true;
            for bucket in &buckets[1..] {
                match bucket.get(&cl) {
                    Some(&s) => tuple.push(s),
                    None => {
                        all = false;
                        break;
                    }
                }
            }
            if all {
                return Ok(EdmondsCheck {
                    is_decomposition: false,
                    violating_tuple: Some(tuple),
                });
            }
        }
    }
    Ok(EdmondsCheck { is_decomposition: true, violating_tuple: None })
}

/// Result of the d-Recski test: every single-element clone of the ground
/// set must still partition into d independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecskiReport {
    pub independent: bool,
    /// On failure, the failing element together with the violator found in
    /// the cloned matroid (whose ground set appends the clone at index n).
    pub failure: Option<(usize, Subset)>,
}

/// Clone each element in turn (an exact parallel copy of its column) and
/// try to partition the extended matroid.
pub fn is_recski_independent(m: &LinearMatroid, d: usize) -> RecskiReport {
    for e in 0..m.n() {
        let mut columns: Vec<Vec<crate::gf::FieldElement>> = m.columns().to_vec();
        columns.push(m.column(e).to_vec());
        let extended =
            LinearMatroid::from_matrix(m.field(), columns, m.r_ambient()).expect("same ambient");
        if let PartitionCertificate::Violator(v) = matroid_partition(&extended, d) {
            return RecskiReport { independent: false, failure: Some((e, v)) };
        }
    }
    RecskiReport { independent: true, failure: None }
}

/// The three equivalent independence predicates, computed separately.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub d: usize,
    pub has_edmonds_decomposition: bool,
    /// A decomposition that passed the check, if one exists.
    pub edmonds_witness: Option<Vec<Subset>>,
    pub laman_independent: bool,
    pub laman_witness: Subset,
    pub recski_independent: bool,
    pub recski_failure: Option<(usize, Subset)>,
    /// Whether the exhaustive all-partitions search ran (n <= 12).
    pub exhaustive: bool,
    pub agree: bool,
}

/// Enumerate every ordered partition of E into d independent parts,
/// invoking the visitor until it returns true.
fn any_partition(
    m: &LinearMatroid,
    d: usize,
    visit: &mut impl FnMut(&[Subset]) -> bool,
) -> bool {
    fn go(
        m: &LinearMatroid,
        d: usize,
        e: usize,
        parts: &mut Vec<Subset>,
        visit: &mut impl FnMut(&[Subset]) -> bool,
    ) -> bool {
        if e == m.n() {
            return visit(parts);
        }
        for j in 0..d {
            let with = parts[j].insert(e);
            if m.is_independent(with) {
                parts[j] = with;
                if go(m, d, e + 1, parts, visit) {
                    return true;
                }
                parts[j] = parts[j].remove(e);
            }
        }
        false
    }
    go(m, d, 0, &mut vec![Subset::EMPTY; d], visit)
}

/// Compute d-Edmonds-decomposition existence, d-Laman independence of E
/// and d-Recski independence, and report whether all three agree (they
/// must; a disagreement is surfaced in the report, never hidden).
pub fn equivalence_report(m: &LinearMatroid, d: usize) -> Result<EquivalenceReport, PartitionError> {
    let n = m.n();
    if n > 18 {
        return Err(PartitionError::GroundSetTooLarge { n, max: 18 });
    }
    let laman = if let Ok(slope) = RationalSlope::integer(d as u64) {
        is_laman_independent(m, slope, m.ground_set())
    } else {
        // d = 1: the literal inequality 1*r(A) > |A| holds only for A empty
        crate::laman::LamanReport {
            independent: n == 0,
            witness: if n == 0 { Subset::EMPTY } else { Subset::singleton(0) },
        }
    };
    let recski = is_recski_independent(m, d);

    let exhaustive = n <= 12;
    let (has_edmonds, edmonds_witness) = match matroid_partition(m, d) {
        PartitionCertificate::Violator(_) => (false, None),
        PartitionCertificate::Decomposition(dec) => {
            let first = is_edmonds_decomposition(m, &dec.parts)?;
            if first.is_decomposition {
                (true, Some(dec.parts))
            } else if exhaustive {
                // retry over every partition before concluding none exists
                let mut witness = None;
                any_partition(m, d, &mut |parts| {
                    match is_edmonds_decomposition(m, parts) {
                        Ok(check) if check.is_decomposition => {
                            witness = Some(parts.to_vec());
                            true
                        }
                        _ => false,
                    }
                });
                (witness.is_some(), witness)
            } else {
                (false, None)
            }
        }
    };

    let agree =
        has_edmonds == laman.independent && laman.independent == recski.independent;
    Ok(EquivalenceReport {
        d,
        has_edmonds_decomposition: has_edmonds,
        edmonds_witness,
        laman_independent: laman.independent,
        laman_witness: laman.witness,
        recski_independent: recski.independent,
        recski_failure: recski.failure,
        exhaustive,
        agree,
    })
}
