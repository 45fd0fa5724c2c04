//! Finite posets and the order theory used throughout the crate: ideals,
//! suprema and infima, the way-below relation, continuity, Scott opens and
//! lower-bound sets.
//!
//! Way-below and Scott openness are computed by quantifying over the literal
//! ideal enumeration. On finite carriers both admit shortcuts (`<<` collapses
//! to `<=`, Scott opens are exactly the upper sets); the shortcuts are kept as
//! independent cross-checks in the test suites, never as the implementation.

use std::collections::HashMap;

use thiserror::Error;

use crate::bits::{subsets, BitSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}` in order pair")]
    UnknownElement(String),
    #[error("antisymmetry violation: `{0}` and `{1}` are distinct but mutually related")]
    AntisymmetryViolation(String, String),
    #[error("not a complete lattice: {0}")]
    NotCompleteLattice(String),
    #[error("an ideal must be nonempty")]
    EmptyIdeal,
    #[error("not a lower set: contains `{member}` but not `{below}` below it")]
    NotLowerSet { member: String, below: String },
    #[error("not directed: `{0}` and `{1}` have no upper bound inside the subset")]
    NotDirected(String, String),
}

/// A finite partially ordered set over opaque string identifiers.
///
/// The relation is stored in full (reflexive and transitive); constructors
/// close arbitrary input pairs before validating antisymmetry, so callers may
/// supply Hasse-style cover pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<BitSet>,   // up[i] = { j | i <= j }
    down: Vec<BitSet>, // down[i] = { j | j <= i }
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinitePoset({:?})", self.elements)
    }
}

impl FinitePoset {
    /// Validates raw input: closes the pair relation reflexively and
    /// transitively, then rejects duplicates, unknown elements and
    /// antisymmetry violations.
    pub fn new(elements: Vec<String>, pairs: &[(String, String)]) -> Result<Self, PosetError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::singleton(n, i)).collect();
        for (a, b) in pairs {
            let i = *index
                .get(a)
                .ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            up[i].insert(j);
        }
        // transitive closure, Warshall style on bit rows
        for k in 0..n {
            let row = up[k].clone();
            for r in up.iter_mut() {
                if r.contains(k) {
                    r.union_with(&row);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i].contains(j) && up[j].contains(i) {
                    return Err(PosetError::AntisymmetryViolation(
                        elements[i].clone(),
                        elements[j].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_closed_rows(elements, index, up))
    }

    /// Trusted constructor from already reflexive-transitive rows.
    pub(crate) fn from_up_rows(elements: Vec<String>, up: Vec<BitSet>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self::from_closed_rows(elements, index, up)
    }

    fn from_closed_rows(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<BitSet>,
    ) -> Self {
        let n = elements.len();
        let mut down = vec![BitSet::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            debug_assert!(row.contains(i), "relation must be reflexive");
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        FinitePoset {
            elements,
            index,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn names(&self, s: &BitSet) -> Vec<String> {
        s.iter().map(|i| self.elements[i].clone()).collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// The principal upper set `{ j | i <= j }`.
    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// The principal lower set `{ j | j <= i }`.
    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub fn is_lower_set(&self, s: &BitSet) -> bool {
        s.iter().all(|j| self.down[j].is_subset(s))
    }

    pub fn is_upper_set(&self, s: &BitSet) -> bool {
        s.iter().all(|j| self.up[j].is_subset(s))
    }

    /// Every pair of members has an upper bound among the members.
    pub fn is_directed(&self, s: &BitSet) -> bool {
        let members = s.indices();
        members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| self.up[a].intersect(&self.up[b]).intersects(s))
        })
    }

    /// All ideals (nonempty directed lower sets), canonically ordered.
    pub fn ideals(&self) -> Vec<Ideal> {
        self.ideal_sets()
            .into_iter()
            .map(|members| Ideal { members })
            .collect()
    }

    fn ideal_sets(&self) -> Vec<BitSet> {
        let mut out: Vec<BitSet> = subsets(self.len())
            .filter(|s| !s.is_empty() && self.is_lower_set(s) && self.is_directed(s))
            .collect();
        out.sort();
        out
    }

    /// Elements above every member of `s`.
    pub fn upper_bounds(&self, s: &BitSet) -> BitSet {
        let mut ub = BitSet::full(self.len());
        for a in s.iter() {
            ub.intersect_with(&self.up[a]);
        }
        ub
    }

    /// Elements below every member of `s`. For the empty subset this is the
    /// whole carrier (the inclusion is vacuous).
    pub fn lower_bounds(&self, s: &BitSet) -> BitSet {
        let mut lb = BitSet::full(self.len());
        for a in s.iter() {
            lb.intersect_with(&self.down[a]);
        }
        lb
    }

    /// Least upper bound of `s` when it exists. `sup(empty)` is the bottom
    /// element when the poset has one.
    pub fn sup(&self, s: &BitSet) -> Option<usize> {
        let ub = self.upper_bounds(s);
        ub.indices().into_iter().find(|&u| ub.is_subset(&self.up[u]))
    }

    /// Greatest lower bound of `s` when it exists. `inf(empty)` is the top
    /// element when the poset has one.
    pub fn inf(&self, s: &BitSet) -> Option<usize> {
        let lb = self.lower_bounds(s);
        lb.indices().into_iter().find(|&u| lb.is_subset(&self.down[u]))
    }

    /// True when every subset, including the empty one, has both a supremum
    /// and an infimum.
    pub fn is_complete_lattice(&self) -> bool {
        subsets(self.len()).all(|s| self.sup(&s).is_some() && self.inf(&s).is_some())
    }

    /// `x << y`: every ideal whose supremum dominates `y` contains `x`.
    /// Quantifies over the literal ideal enumeration.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        let ideals = self.ideal_sets();
        self.way_below_in(&ideals, x, y)
    }

    fn way_below_in(&self, ideals: &[BitSet], x: usize, y: usize) -> bool {
        ideals.iter().all(|i| match self.sup(i) {
            Some(s) if self.leq(y, s) => i.contains(x),
            _ => true,
        })
    }

    /// The set `{ y | y << x }`.
    pub fn way_below_set(&self, x: usize) -> BitSet {
        let ideals = self.ideal_sets();
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&y| self.way_below_in(&ideals, y, x)),
        )
    }

    /// The set `{ y | x << y }`.
    pub fn way_above_set(&self, x: usize) -> BitSet {
        let ideals = self.ideal_sets();
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&y| self.way_below_in(&ideals, x, y)),
        )
    }

    /// A complete lattice is continuous when every element is the supremum of
    /// the elements way below it.
    pub fn is_continuous_lattice(&self) -> Result<bool, PosetError> {
        if !self.is_complete_lattice() {
            return Err(PosetError::NotCompleteLattice(
                "continuity is only defined for complete lattices".into(),
            ));
        }
        let ideals = self.ideal_sets();
        Ok((0..self.len()).all(|x| {
            let wb = BitSet::from_indices(
                self.len(),
                (0..self.len()).filter(|&y| self.way_below_in(&ideals, y, x)),
            );
            self.sup(&wb) == Some(x)
        }))
    }

    /// Scott opens by the literal definition: upper sets meeting every ideal
    /// whose supremum they contain. Canonically ordered.
    pub fn scott_opens(&self) -> Vec<BitSet> {
        let ideals = self.ideal_sets();
        let mut out: Vec<BitSet> = subsets(self.len())
            .filter(|v| {
                self.is_upper_set(v)
                    && ideals.iter().all(|i| match self.sup(i) {
                        Some(s) if v.contains(s) => i.intersects(v),
                        _ => true,
                    })
            })
            .collect();
        out.sort();
        out
    }

    /// All upper sets, canonically ordered. Kept as the independent route the
    /// tests compare against `scott_opens`.
    pub fn upper_sets(&self) -> Vec<BitSet> {
        let mut out: Vec<BitSet> = subsets(self.len())
            .filter(|v| self.is_upper_set(v))
            .collect();
        out.sort();
        out
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    let between = (0..n)
                        .any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                    if !between {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    }

    /// Interpolation and basis facts of continuous lattices: between any two
    /// way-below related elements sits an interpolant, and the way-above sets
    /// form a base of the Scott topology.
    pub fn check_interpolation(&self) -> Result<InterpolationReport, PosetError> {
        if !self.is_complete_lattice() {
            return Err(PosetError::NotCompleteLattice(
                "interpolation check requires a complete lattice".into(),
            ));
        }
        let ideals = self.ideal_sets();
        let n = self.len();
        let mut interpolants = Vec::new();
        let mut missing = None;
        for x in 0..n {
            for y in 0..n {
                if self.way_below_in(&ideals, x, y) {
                    match (0..n).find(|&z| {
                        self.way_below_in(&ideals, x, z) && self.way_below_in(&ideals, z, y)
                    }) {
                        Some(z) => interpolants.push((
                            self.elements[x].clone(),
                            self.elements[y].clone(),
                            self.elements[z].clone(),
                        )),
                        None => {
                            missing = Some((self.elements[x].clone(), self.elements[y].clone()));
                        }
                    }
                }
            }
        }
        let way_above: Vec<BitSet> = (0..n).map(|x| self.way_above_set(x)).collect();
        let mut non_basic = None;
        for v in self.scott_opens() {
            let mut covered = BitSet::empty(n);
            for wa in &way_above {
                if wa.is_subset(&v) {
                    covered.union_with(wa);
                }
            }
            if covered != v {
                non_basic = Some(self.names(&v));
                break;
            }
        }
        Ok(InterpolationReport {
            interpolation_holds: missing.is_none(),
            missing_interpolant: missing,
            interpolants,
            basis_holds: non_basic.is_none(),
            non_basic_open: non_basic,
        })
    }
}

/// Outcome of [`FinitePoset::check_interpolation`].
#[derive(Debug, Clone)]
pub struct InterpolationReport {
    pub interpolation_holds: bool,
    /// One interpolant per way-below related pair, as `(x, y, z)` with
    /// `x << z << y`.
    pub interpolants: Vec<(String, String, String)>,
    pub missing_interpolant: Option<(String, String)>,
    pub basis_holds: bool,
    pub non_basic_open: Option<Vec<String>>,
}

impl InterpolationReport {
    pub fn holds(&self) -> bool {
        self.interpolation_holds && self.basis_holds
    }
}

/// A nonempty directed lower subset of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    members: BitSet,
}

impl Ideal {
    pub fn new(poset: &FinitePoset, members: BitSet) -> Result<Self, PosetError> {
        if members.is_empty() {
            return Err(PosetError::EmptyIdeal);
        }
        for j in members.iter() {
            if let Some(i) = poset.down_set(j).iter().find(|&i| !members.contains(i)) {
                return Err(PosetError::NotLowerSet {
                    member: poset.name(j).to_string(),
                    below: poset.name(i).to_string(),
                });
            }
        }
        let m = members.indices();
        for &a in &m {
            for &b in &m {
                if !poset.up_set(a).intersect(poset.up_set(b)).intersects(&members) {
                    return Err(PosetError::NotDirected(
                        poset.name(a).to_string(),
                        poset.name(b).to_string(),
                    ));
                }
            }
        }
        Ok(Ideal { members })
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }
}
