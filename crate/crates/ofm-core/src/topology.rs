//! Finite topological spaces: validation, base-generated topologies, the T0
//! property, specialization order, continuous maps, and the Scott space of a
//! poset.
//!
//! Topologies are stored extensionally, every open listed, so the closure
//! laws and continuity are total checks rather than lazy constructions. The
//! specialization order is oriented so that opens are upper sets: `x <= y`
//! iff every open containing `x` also contains `y`. The opposite convention
//! exists in the literature; this one is the orientation under which the
//! algebra checks in [`crate::algebra`] come out right, so it is fixed
//! crate-wide.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bits::BitSet;
use crate::order::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceViolation {
    MissingEmptyOpen,
    MissingFullOpen,
    NotClosedUnderUnion(Vec<String>, Vec<String>),
    NotClosedUnderIntersection(Vec<String>, Vec<String>),
    UnknownPointInOpen(String),
}

impl fmt::Display for SpaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceViolation::MissingEmptyOpen => write!(f, "the empty set is not an open"),
            SpaceViolation::MissingFullOpen => write!(f, "the full point set is not an open"),
            SpaceViolation::NotClosedUnderUnion(a, b) => {
                write!(f, "union of {a:?} and {b:?} is not an open")
            }
            SpaceViolation::NotClosedUnderIntersection(a, b) => {
                write!(f, "intersection of {a:?} and {b:?} is not an open")
            }
            SpaceViolation::UnknownPointInOpen(p) => {
                write!(f, "open mentions unknown point `{p}`")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("invalid topology: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTopology(Vec<SpaceViolation>),
    #[error("space is not T0: `{0}` and `{1}` have the same open neighborhoods")]
    NotT0(String, String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("base does not cover point `{0}`")]
    BaseDoesNotCover(String),
    #[error("intersection of base sets {0:?} and {1:?} is not a union of base sets")]
    IntersectionNotUnionOfBase(Vec<String>, Vec<String>),
    #[error("assignment misses point `{0}`")]
    MissingAssignment(String),
    #[error("assignment maps point `{0}` twice")]
    DuplicateAssignment(String),
    #[error("map is not continuous: preimage of open {open:?} is not open")]
    NotContinuous { open: Vec<String> },
    #[error("generated topology exceeds {cap} opens ({reached} reached)")]
    TopologyTooLarge { reached: usize, cap: usize },
}

/// A finite point set with an explicit finite topology.
///
/// Opens are kept in canonical order (size first, then lexicographic on the
/// member list), so structurally equal spaces compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    opens: Vec<BitSet>,
    open_index: HashMap<BitSet, usize>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteSpace({:?}, {} opens)",
            self.points,
            self.opens.len()
        )
    }
}

impl FiniteSpace {
    /// Validates a raw topology, reporting every violated closure condition.
    pub fn new(points: Vec<String>, raw_opens: &[Vec<String>]) -> Result<Self, SpaceError> {
        let index = point_index(&points)?;
        let n = points.len();
        let mut violations = Vec::new();
        let mut opens: Vec<BitSet> = Vec::new();
        for raw in raw_opens {
            match resolve_subset(&index, n, raw) {
                Ok(s) => {
                    if !opens.contains(&s) {
                        opens.push(s);
                    }
                }
                Err(p) => violations.push(SpaceViolation::UnknownPointInOpen(p)),
            }
        }
        if !opens.contains(&BitSet::empty(n)) {
            violations.push(SpaceViolation::MissingEmptyOpen);
        }
        if !opens.contains(&BitSet::full(n)) {
            violations.push(SpaceViolation::MissingFullOpen);
        }
        let names = |s: &BitSet| -> Vec<String> {
            s.iter().map(|i| points[i].clone()).collect()
        };
        'union: for a in &opens {
            for b in &opens {
                if !opens.contains(&a.union(b)) {
                    violations.push(SpaceViolation::NotClosedUnderUnion(names(a), names(b)));
                    break 'union;
                }
            }
        }
        'inter: for a in &opens {
            for b in &opens {
                if !opens.contains(&a.intersect(b)) {
                    violations
                        .push(SpaceViolation::NotClosedUnderIntersection(names(a), names(b)));
                    break 'inter;
                }
            }
        }
        if !violations.is_empty() {
            return Err(SpaceError::InvalidTopology(violations));
        }
        Ok(Self::from_open_sets(points, opens))
    }

    /// Generates the topology from a base: the empty set together with all
    /// unions of base subfamilies. The base must cover the points and be
    /// intersection-compatible in the usual sense.
    pub fn from_base(points: Vec<String>, raw_base: &[Vec<String>]) -> Result<Self, SpaceError> {
        let index = point_index(&points)?;
        let n = points.len();
        let mut base = Vec::new();
        for raw in raw_base {
            let s = resolve_subset(&index, n, raw).map_err(SpaceError::UnknownPoint)?;
            if !base.contains(&s) {
                base.push(s);
            }
        }
        Self::from_base_sets(points, base, None)
    }

    pub(crate) fn from_base_sets(
        points: Vec<String>,
        base: Vec<BitSet>,
        cap: Option<usize>,
    ) -> Result<Self, SpaceError> {
        let n = points.len();
        let names = |s: &BitSet| -> Vec<String> {
            s.iter().map(|i| points[i].clone()).collect()
        };
        let mut cover = BitSet::empty(n);
        for b in &base {
            cover.union_with(b);
        }
        if cover != BitSet::full(n) {
            let missing = BitSet::full(n)
                .iter()
                .find(|&p| !cover.contains(p))
                .expect("some point is uncovered");
            return Err(SpaceError::BaseDoesNotCover(points[missing].clone()));
        }
        for a in &base {
            for b in &base {
                let inter = a.intersect(b);
                let mut u = BitSet::empty(n);
                for c in base.iter().filter(|c| c.is_subset(&inter)) {
                    u.union_with(c);
                }
                if u != inter {
                    return Err(SpaceError::IntersectionNotUnionOfBase(names(a), names(b)));
                }
            }
        }
        let opens = if n <= 64 {
            // mask fast path; the closure loop is quadratic in the topology size
            let mut opens: Vec<u64> = vec![0];
            let mut seen: std::collections::HashSet<u64> = opens.iter().copied().collect();
            for b in &base {
                let m = b.as_mask();
                if seen.insert(m) {
                    if let Some(cap) = cap {
                        if opens.len() + 1 > cap {
                            return Err(SpaceError::TopologyTooLarge {
                                reached: opens.len() + 1,
                                cap,
                            });
                        }
                    }
                    opens.push(m);
                }
            }
            let mut head = 1;
            while head < opens.len() {
                let cur = opens[head];
                head += 1;
                let snapshot = opens.len();
                for i in 0..snapshot {
                    let u = opens[i] | cur;
                    if seen.insert(u) {
                        if let Some(cap) = cap {
                            if opens.len() + 1 > cap {
                                return Err(SpaceError::TopologyTooLarge {
                                    reached: opens.len() + 1,
                                    cap,
                                });
                            }
                        }
                        opens.push(u);
                    }
                }
            }
            opens.into_iter().map(|m| BitSet::from_mask(n, m)).collect()
        } else {
            let mut opens: Vec<BitSet> = vec![BitSet::empty(n)];
            let mut seen: HashMap<BitSet, ()> =
                opens.iter().cloned().map(|o| (o, ())).collect();
            let mut queue: Vec<BitSet> = Vec::new();
            for b in base {
                if seen.insert(b.clone(), ()).is_none() {
                    if let Some(cap) = cap {
                        if opens.len() + 1 > cap {
                            return Err(SpaceError::TopologyTooLarge {
                                reached: opens.len() + 1,
                                cap,
                            });
                        }
                    }
                    queue.push(b.clone());
                    opens.push(b);
                }
            }
            let mut head = 0;
            while head < queue.len() {
                let cur = queue[head].clone();
                head += 1;
                let snapshot = opens.len();
                for i in 0..snapshot {
                    let u = opens[i].union(&cur);
                    if seen.insert(u.clone(), ()).is_none() {
                        if let Some(cap) = cap {
                            if opens.len() + 1 > cap {
                                return Err(SpaceError::TopologyTooLarge {
                                    reached: opens.len() + 1,
                                    cap,
                                });
                            }
                        }
                        opens.push(u.clone());
                        queue.push(u);
                    }
                }
            }
            opens
        };
        Ok(Self::from_open_sets(points, opens))
    }

    /// Trusted constructor; sorts canonically and indexes. Debug builds
    /// re-validate the closure laws.
    pub(crate) fn from_open_sets(points: Vec<String>, mut opens: Vec<BitSet>) -> Self {
        opens.sort();
        opens.dedup();
        let open_index = opens
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let space = FiniteSpace {
            points,
            index,
            opens,
            open_index,
        };
        // the re-validation is quadratic in the open count, so only sane sizes
        debug_assert!(
            space.opens.len() > 512 || space.closure_laws_hold(),
            "constructed topology is invalid"
        );
        space
    }

    fn closure_laws_hold(&self) -> bool {
        let n = self.points.len();
        self.open_index.contains_key(&BitSet::empty(n))
            && self.open_index.contains_key(&BitSet::full(n))
            && self.opens.iter().all(|a| {
                self.opens.iter().all(|b| {
                    self.open_index.contains_key(&a.union(b))
                        && self.open_index.contains_key(&a.intersect(b))
                })
            })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn point_name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    pub fn open_index(&self, s: &BitSet) -> Option<usize> {
        self.open_index.get(s).copied()
    }

    pub fn is_open(&self, s: &BitSet) -> bool {
        self.open_index.contains_key(s)
    }

    pub fn open_names(&self, s: &BitSet) -> Vec<String> {
        s.iter().map(|i| self.points[i].clone()).collect()
    }

    /// The smallest open neighborhood of `p` (finite intersections of opens
    /// stay open).
    pub fn min_neighborhood(&self, p: usize) -> BitSet {
        let mut m = BitSet::full(self.len());
        for o in &self.opens {
            if o.contains(p) {
                m.intersect_with(o);
            }
        }
        m
    }

    /// Distinct points have distinct systems of open neighborhoods.
    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// A pair of topologically indistinguishable points, if any.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let separated = self
                    .opens
                    .iter()
                    .any(|o| o.contains(i) != o.contains(j));
                if !separated {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The specialization order: `x <= y` iff every open containing `x`
    /// contains `y`. Requires T0, which is exactly antisymmetry here.
    pub fn specialization_order(&self) -> Result<FinitePoset, SpaceError> {
        if let Some((i, j)) = self.t0_witness() {
            return Err(SpaceError::NotT0(
                self.points[i].clone(),
                self.points[j].clone(),
            ));
        }
        let rows: Vec<BitSet> = (0..self.len()).map(|p| self.min_neighborhood(p)).collect();
        Ok(FinitePoset::from_up_rows(self.points.clone(), rows))
    }
}

fn point_index(points: &[String]) -> Result<HashMap<String, usize>, SpaceError> {
    let mut index = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(SpaceError::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

fn resolve_subset(
    index: &HashMap<String, usize>,
    n: usize,
    raw: &[String],
) -> Result<BitSet, String> {
    let mut s = BitSet::empty(n);
    for p in raw {
        match index.get(p) {
            Some(&i) => s.insert(i),
            None => return Err(p.clone()),
        }
    }
    Ok(s)
}

/// The Scott space of a poset: same carrier, opens are the Scott opens.
pub fn scott_space(p: &FinitePoset) -> FiniteSpace {
    FiniteSpace::from_open_sets(p.elements().to_vec(), p.scott_opens())
}

/// A verified continuous map between finite spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    assignment: Vec<usize>,
}

impl fmt::Debug for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                format!(
                    "{}->{}",
                    self.domain.point_name(i),
                    self.codomain.point_name(j)
                )
            })
            .collect();
        write!(f, "ContinuousMap[{}]", pairs.join(", "))
    }
}

impl ContinuousMap {
    pub fn new(
        domain: FiniteSpace,
        codomain: FiniteSpace,
        pairs: &[(String, String)],
    ) -> Result<Self, SpaceError> {
        let mut assignment = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            let i = domain
                .point_index(a)
                .ok_or_else(|| SpaceError::UnknownPoint(a.clone()))?;
            let j = codomain
                .point_index(b)
                .ok_or_else(|| SpaceError::UnknownPoint(b.clone()))?;
            if assignment[i] != usize::MAX {
                return Err(SpaceError::DuplicateAssignment(a.clone()));
            }
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(SpaceError::MissingAssignment(
                domain.point_name(i).to_string(),
            ));
        }
        Self::from_assignment(domain, codomain, assignment)
    }

    pub fn from_assignment(
        domain: FiniteSpace,
        codomain: FiniteSpace,
        assignment: Vec<usize>,
    ) -> Result<Self, SpaceError> {
        if let Some(o) = continuity_witness(&domain, &codomain, &assignment) {
            return Err(SpaceError::NotContinuous {
                open: codomain.open_names(&codomain.opens()[o]),
            });
        }
        Ok(ContinuousMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        ContinuousMap {
            domain: space.clone(),
            codomain: space.clone(),
            assignment: (0..space.len()).collect(),
        }
    }

    /// `f.then(g)` is the composite `g . f`; `None` when carriers mismatch.
    pub fn then(&self, g: &ContinuousMap) -> Option<ContinuousMap> {
        if self.codomain != g.domain {
            return None;
        }
        Some(ContinuousMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            assignment: self.assignment.iter().map(|&i| g.assignment[i]).collect(),
        })
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assignment[p]
    }
}

/// True when every preimage of a codomain open is a domain open.
pub fn is_continuous(domain: &FiniteSpace, codomain: &FiniteSpace, assignment: &[usize]) -> bool {
    continuity_witness(domain, codomain, assignment).is_none()
}

/// Index of a codomain open whose preimage fails to be open, if any.
pub fn continuity_witness(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    assignment: &[usize],
) -> Option<usize> {
    (0..codomain.opens().len())
        .find(|&o| !domain.is_open(&preimage(assignment, domain.len(), &codomain.opens()[o])))
}

pub fn preimage(assignment: &[usize], domain_size: usize, set: &BitSet) -> BitSet {
    BitSet::from_indices(
        domain_size,
        (0..domain_size).filter(|&i| set.contains(assignment[i])),
    )
}

pub fn image(assignment: &[usize], codomain_size: usize, set: &BitSet) -> BitSet {
    BitSet::from_indices(codomain_size, set.iter().map(|i| assignment[i]))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn space(points: &[&str], opens: &[&[&str]]) -> FiniteSpace {
        FiniteSpace::new(
            points.iter().map(|s| s.to_string()).collect(),
            &opens
                .iter()
                .map(|o| o.iter().map(|s| s.to_string()).collect())
                .collect::<Vec<Vec<String>>>(),
        )
        .unwrap()
    }

    pub(crate) fn sierpinski() -> FiniteSpace {
        space(&["0", "1"], &[&[], &["1"], &["0", "1"]])
    }

    pub(crate) fn point_space() -> FiniteSpace {
        space(&["p"], &[&[], &["p"]])
    }

    pub(crate) fn discrete2() -> FiniteSpace {
        space(&["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]])
    }

    #[test]
    fn validation_accepts_and_rejects() {
        assert_eq!(sierpinski().opens().len(), 3);
        assert_eq!(point_space().opens().len(), 2);
        let err = FiniteSpace::new(
            vec!["0".into(), "1".into()],
            &[vec![], vec!["0".into()], vec!["1".into()]],
        )
        .unwrap_err();
        match err {
            SpaceError::InvalidTopology(v) => {
                assert!(v.contains(&SpaceViolation::MissingFullOpen));
                assert!(v
                    .iter()
                    .any(|x| matches!(x, SpaceViolation::NotClosedUnderUnion(_, _))));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn base_generation() {
        let s = FiniteSpace::from_base(
            vec!["0".into(), "1".into()],
            &[vec!["1".into()], vec!["0".into(), "1".into()]],
        )
        .unwrap();
        assert_eq!(s, sierpinski());
        let d = FiniteSpace::from_base(
            vec!["a".into(), "b".into()],
            &[vec!["a".into()], vec!["b".into()]],
        )
        .unwrap();
        assert_eq!(d, discrete2());
        let err = FiniteSpace::from_base(vec!["a".into(), "b".into()], &[vec!["a".into()]])
            .unwrap_err();
        assert!(matches!(err, SpaceError::BaseDoesNotCover(_)));
    }

    #[test]
    fn t0_checks() {
        assert!(sierpinski().is_t0());
        assert!(discrete2().is_t0());
        let indiscrete = space(&["a", "b"], &[&[], &["a", "b"]]);
        assert!(!indiscrete.is_t0());
        assert!(matches!(
            indiscrete.specialization_order(),
            Err(SpaceError::NotT0(_, _))
        ));
    }

    #[test]
    fn specialization_examples() {
        let p = sierpinski().specialization_order().unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0), "0 below 1 in the Sierpinski space");
        let d = discrete2().specialization_order().unwrap();
        assert!(!d.leq(0, 1) && !d.leq(1, 0));
    }

    #[test]
    fn scott_space_roundtrip() {
        let ch2 = FinitePoset::new(
            vec!["bot".into(), "top".into()],
            &[("bot".into(), "top".into())],
        )
        .unwrap();
        let s = scott_space(&ch2);
        assert_eq!(s.opens().len(), 3);
        assert_eq!(s.specialization_order().unwrap(), ch2);
        let diamond = FinitePoset::new(
            vec!["bot".into(), "a".into(), "b".into(), "top".into()],
            &[
                ("bot".into(), "a".into()),
                ("bot".into(), "b".into()),
                ("a".into(), "top".into()),
                ("b".into(), "top".into()),
            ],
        )
        .unwrap();
        let ds = scott_space(&diamond);
        assert_eq!(ds.opens().len(), 6);
        assert_eq!(ds.specialization_order().unwrap(), diamond);
    }

    #[test]
    fn continuity_examples() {
        let s = sierpinski();
        assert!(is_continuous(&s, &s, &[0, 1]));
        let pt = point_space();
        // constant map into the top point of the Sierpinski space
        assert!(is_continuous(&pt, &s, &[1]));
        assert!(is_continuous(&pt, &s, &[0]));
        // the swap is not continuous: preimage of {1} is {0}
        assert!(!is_continuous(&s, &s, &[1, 0]));
        assert!(ContinuousMap::from_assignment(s.clone(), s.clone(), vec![1, 0]).is_err());
    }

    #[test]
    fn composition_preserves_continuity() {
        let s = sierpinski();
        let pt = point_space();
        let f = ContinuousMap::from_assignment(pt.clone(), s.clone(), vec![1]).unwrap();
        let g = ContinuousMap::identity(&s);
        let h = f.then(&g).unwrap();
        assert_eq!(h.assignment(), &[1]);
        assert!(f.then(&ContinuousMap::identity(&pt)).is_none());
    }
}
