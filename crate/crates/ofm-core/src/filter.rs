//! The open filter monad on finite spaces.
//!
//! An open filter of a space is a set `u` of opens satisfying condition (F):
//! `A /\ B` is in `u` exactly when both `A` and `B` are, for all opens `A`,
//! `B`. By the convention fixed here filters contain the full open (so they
//! are nonempty), and the improper filter consisting of all opens is
//! admitted. The optional [`FilterConvention`] switch can admit the empty
//! family for exploratory use; every law suite runs with the standard
//! convention.
//!
//! [`FilterSpace`] packages the full filter enumeration of a space together
//! with the topology generated by the base `{ phi(A) }`, where `phi(A)` is
//! the set of filters containing `A`. Iterating the construction yields the
//! second and third filter iterates used by the law checks; they are always
//! materialized as honest filter enumerations of honest filter spaces.

use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bits::{subsets, BitSet};
use crate::limits::{FeasibilityError, Limits};
use crate::report::LawEntry;
use crate::topology::{continuity_witness, preimage, ContinuousMap, FiniteSpace, SpaceError};

/// Above this many opens the membership check switches from the pairwise
/// condition (F) to the minimum-open characterization; the two agree on
/// finite spaces and the test suite cross-checks them.
const PAIRWISE_LIMIT: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("set {0:?} is not an open of the space")]
    NotAnOpen(Vec<String>),
    #[error("not an open filter: {reason}")]
    NotAFilter { reason: String },
    #[error("family is not directed: filters {0} and {1} have no upper bound in it")]
    NotDirected(usize, usize),
    #[error("family is empty")]
    EmptyFamily,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convention switch: whether the empty set of opens counts as a filter.
/// It vacuously satisfies condition (F) but lacks the full open; all law
/// suites keep it excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FilterConvention {
    pub admit_empty: bool,
}

/// An open filter, stored as the set of indices of its member opens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpenFilter {
    members: BitSet,
}

impl fmt::Debug for OpenFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpenFilter({:?})", self.members)
    }
}

impl Ord for OpenFilter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.canonical_cmp(&other.members)
    }
}

impl PartialOrd for OpenFilter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl OpenFilter {
    /// Verified constructor.
    pub fn from_members(space: &FiniteSpace, members: BitSet) -> Result<Self, FilterError> {
        if !is_open_filter(space, &members) {
            return Err(FilterError::NotAFilter {
                reason: format!("member set {members:?} violates condition (F)"),
            });
        }
        Ok(OpenFilter { members })
    }

    pub(crate) fn from_members_unchecked(members: BitSet) -> Self {
        OpenFilter { members }
    }

    /// Indices into the opens of the owning space.
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    /// Intersection of all member opens; for a filter on a finite space this
    /// is its least member.
    pub fn min_open(&self, space: &FiniteSpace) -> BitSet {
        let mut m = BitSet::full(space.len());
        for a in self.members.iter() {
            m.intersect_with(&space.opens()[a]);
        }
        m
    }

    /// The member opens as point-name lists, in canonical order.
    pub fn member_names(&self, space: &FiniteSpace) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|a| space.open_names(&space.opens()[a]))
            .collect()
    }
}

/// Condition (F) under the standard convention (full open required).
pub fn is_open_filter(space: &FiniteSpace, members: &BitSet) -> bool {
    is_open_filter_with(space, members, FilterConvention::default())
}

pub fn is_open_filter_with(
    space: &FiniteSpace,
    members: &BitSet,
    convention: FilterConvention,
) -> bool {
    if members.is_empty() {
        return convention.admit_empty;
    }
    if space.opens().len() <= PAIRWISE_LIMIT {
        is_open_filter_pairwise(space, members)
    } else {
        is_open_filter_minimum(space, members)
    }
}

/// The literal quantification of condition (F) over all pairs of opens,
/// plus the full-open requirement.
pub fn is_open_filter_pairwise(space: &FiniteSpace, members: &BitSet) -> bool {
    let full = space
        .open_index(&BitSet::full(space.len()))
        .expect("a topology contains the full open");
    if !members.contains(full) {
        return false;
    }
    let n = space.opens().len();
    for a in 0..n {
        for b in a..n {
            let c = space
                .open_index(&space.opens()[a].intersect(&space.opens()[b]))
                .expect("a topology is closed under intersections");
            let both = members.contains(a) && members.contains(b);
            if members.contains(c) != both {
                return false;
            }
        }
    }
    true
}

/// Equivalent characterization on finite spaces: the family is exactly the
/// set of opens above its own intersection.
fn is_open_filter_minimum(space: &FiniteSpace, members: &BitSet) -> bool {
    let mut min = BitSet::full(space.len());
    for a in members.iter() {
        min.intersect_with(&space.opens()[a]);
    }
    match space.open_index(&min) {
        None => false,
        Some(i) if !members.contains(i) => false,
        Some(_) => (0..space.opens().len())
            .all(|b| members.contains(b) == min.is_subset(&space.opens()[b])),
    }
}

/// All open filters of the space under the standard convention, canonically
/// ordered (set size first, then lexicographic).
pub fn open_filters(space: &FiniteSpace) -> Vec<OpenFilter> {
    open_filters_with(space, FilterConvention::default())
}

pub fn open_filters_with(space: &FiniteSpace, convention: FilterConvention) -> Vec<OpenFilter> {
    let n = space.opens().len();
    let mut out: Vec<BitSet> = Vec::with_capacity(n + 1);
    if space.len() <= 64 {
        let masks: Vec<u64> = space.opens().iter().map(|o| o.as_mask()).collect();
        for &a in &masks {
            let members =
                BitSet::from_indices(n, (0..n).filter(|&b| a & !masks[b] == 0));
            out.push(members);
        }
    } else {
        for a in 0..n {
            let members = BitSet::from_indices(
                n,
                (0..n).filter(|&b| space.opens()[a].is_subset(&space.opens()[b])),
            );
            out.push(members);
        }
    }
    if cfg!(debug_assertions) && n <= 128 {
        for members in &out {
            assert!(is_open_filter_pairwise(space, members));
        }
    }
    if convention.admit_empty {
        out.push(BitSet::empty(n));
    }
    out.sort();
    out.dedup();
    out.into_iter()
        .map(OpenFilter::from_members_unchecked)
        .collect()
}

/// Reference enumeration: scans every subset of the opens against the
/// pairwise condition (F). Only usable on spaces with few opens; kept as the
/// independent route the tests compare against [`open_filters`].
pub fn open_filters_exhaustive(
    space: &FiniteSpace,
    convention: FilterConvention,
) -> Vec<OpenFilter> {
    let n = space.opens().len();
    assert!(n <= 20, "exhaustive filter enumeration needs a small open set");
    let mut out: Vec<BitSet> = subsets(n)
        .filter(|s| {
            if s.is_empty() {
                convention.admit_empty
            } else {
                is_open_filter_pairwise(space, s)
            }
        })
        .collect();
    out.sort();
    out.into_iter()
        .map(OpenFilter::from_members_unchecked)
        .collect()
}

/// The filter of all opens containing `subset` (which need not be open).
pub fn principal_filter(space: &FiniteSpace, subset: &BitSet) -> OpenFilter {
    let n = space.opens().len();
    OpenFilter::from_members_unchecked(BitSet::from_indices(
        n,
        (0..n).filter(|&b| subset.is_subset(&space.opens()[b])),
    ))
}

/// The monad unit at a point: the principal filter of the singleton.
pub fn eta(space: &FiniteSpace, point: usize) -> OpenFilter {
    principal_filter(space, &BitSet::singleton(space.len(), point))
}

/// The set of open filters of a space together with the topology generated
/// by the base `{ phi(A) | A open }`. Points of `topology()` are the filters
/// themselves, named by their canonical index.
#[derive(Clone)]
pub struct FilterSpace {
    base: FiniteSpace,
    filters: Vec<OpenFilter>,
    filter_index: HashMap<BitSet, usize>,
    topology: FiniteSpace,
    phi_sets: Vec<BitSet>,
    phi_open: Vec<usize>,
    eta_points: Vec<usize>,
}

impl fmt::Debug for FilterSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FilterSpace({} filters over {:?})",
            self.filters.len(),
            self.base
        )
    }
}

impl FilterSpace {
    /// Enumerates the filters and generates the filter-space topology.
    /// `filter_cap` bounds the number of filters, `topology_cap` the number
    /// of generated opens (which is the size of the next filter iterate).
    pub fn build(
        space: &FiniteSpace,
        filter_cap: Option<usize>,
        topology_cap: Option<usize>,
    ) -> Result<Self, FeasibilityError> {
        let filters = open_filters(space);
        if let Some(cap) = filter_cap {
            if filters.len() > cap {
                return Err(FeasibilityError::new("open filter count", filters.len(), cap));
            }
        }
        let k = filters.len();
        let n = space.opens().len();
        let phi_sets: Vec<BitSet> = (0..n)
            .map(|a| {
                BitSet::from_indices(
                    k,
                    filters
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.members().contains(a))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let topology = FiniteSpace::from_base_sets(names, phi_sets.clone(), topology_cap)
            .map_err(|e| match e {
                SpaceError::TopologyTooLarge { reached, cap } => {
                    FeasibilityError::new("filter space topology", reached, cap)
                }
                other => panic!("phi base is always a valid base: {other}"),
            })?;
        let phi_open: Vec<usize> = phi_sets
            .iter()
            .map(|s| topology.open_index(s).expect("base sets are opens"))
            .collect();
        let filter_index: HashMap<BitSet, usize> = filters
            .iter()
            .enumerate()
            .map(|(i, f)| (f.members().clone(), i))
            .collect();
        let eta_points: Vec<usize> = (0..space.len())
            .map(|p| {
                let e = eta(space, p);
                *filter_index
                    .get(e.members())
                    .expect("principal filters are filters")
            })
            .collect();
        let fs = FilterSpace {
            base: space.clone(),
            filters,
            filter_index,
            topology,
            phi_sets,
            phi_open,
            eta_points,
        };
        debug_assert!(fs.topology.is_t0(), "filter space topology must be T0");
        debug_assert!(fs.opens_are_upper_sets());
        Ok(fs)
    }

    fn opens_are_upper_sets(&self) -> bool {
        self.topology.opens().iter().all(|w| {
            w.iter().all(|v| {
                (0..self.filters.len()).all(|u| {
                    !self.filters[v].members().is_subset(self.filters[u].members())
                        || w.contains(u)
                })
            })
        })
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn filters(&self) -> &[OpenFilter] {
        &self.filters
    }

    pub fn topology(&self) -> &FiniteSpace {
        &self.topology
    }

    pub fn filter_index(&self, members: &BitSet) -> Option<usize> {
        self.filter_index.get(members).copied()
    }

    /// `phi(A)`: the set of filters containing the open with index `a`.
    pub fn phi(&self, a: usize) -> &BitSet {
        &self.phi_sets[a]
    }

    /// Index of `phi(A)` among the opens of the filter-space topology.
    pub fn phi_open_index(&self, a: usize) -> usize {
        self.phi_open[a]
    }

    /// Index of the principal filter of a point.
    pub fn eta_index(&self, point: usize) -> usize {
        self.eta_points[point]
    }
}

/// The monad multiplication: `A` belongs to `mu(alpha)` exactly when
/// `phi(A)` belongs to `alpha`. `alpha` must be a filter on the filter-space
/// topology; the result is a verified filter on the base space.
pub fn mu(fs: &FilterSpace, alpha: &OpenFilter) -> Result<OpenFilter, FilterError> {
    let n = fs.base().opens().len();
    let members = BitSet::from_indices(
        n,
        (0..n).filter(|&a| alpha.members().contains(fs.phi_open_index(a))),
    );
    OpenFilter::from_members(fs.base(), members)
}

/// The functor on morphisms, applied to one filter: `B` belongs to the image
/// exactly when the preimage of `B` belongs to `u`.
pub fn phi_map_filter(f: &ContinuousMap, u: &OpenFilter) -> Result<OpenFilter, FilterError> {
    let dom = f.domain();
    let cod = f.codomain();
    let n = cod.opens().len();
    let mut m = BitSet::empty(n);
    for b in 0..n {
        let pre = preimage(f.assignment(), dom.len(), &cod.opens()[b]);
        let idx = dom.open_index(&pre).ok_or_else(|| {
            FilterError::Internal("preimage of an open under a continuous map is open".into())
        })?;
        if u.members().contains(idx) {
            m.insert(b);
        }
    }
    OpenFilter::from_members(cod, m)
}

/// The functor on morphisms as a point map between filter enumerations.
pub fn phi_map(
    f: &ContinuousMap,
    fs_dom: &FilterSpace,
    fs_cod: &FilterSpace,
) -> Result<Vec<usize>, FilterError> {
    fs_dom
        .filters()
        .iter()
        .map(|u| {
            let v = phi_map_filter(f, u)?;
            fs_cod
                .filter_index(v.members())
                .ok_or_else(|| FilterError::Internal("functor image is a filter".into()))
        })
        .collect()
}

/// Witness pair violating directedness of a family of filters, if any.
pub fn directedness_witness(filters: &[OpenFilter], family: &BitSet) -> Option<(usize, usize)> {
    let members = family.indices();
    for &a in &members {
        for &b in &members {
            let bounded = members.iter().any(|&c| {
                filters[a].members().is_subset(filters[c].members())
                    && filters[b].members().is_subset(filters[c].members())
            });
            if !bounded {
                return Some((a, b));
            }
        }
    }
    None
}

/// The filter of filter-space opens that meet a directed family. The result
/// is a verified element of the second filter iterate, and applying [`mu`]
/// to it recovers the union of the family.
pub fn meets_filter(fs: &FilterSpace, family: &BitSet) -> Result<OpenFilter, FilterError> {
    if family.is_empty() {
        return Err(FilterError::EmptyFamily);
    }
    if let Some((a, b)) = directedness_witness(fs.filters(), family) {
        return Err(FilterError::NotDirected(a, b));
    }
    let opens = fs.topology().opens();
    let members = BitSet::from_indices(
        opens.len(),
        (0..opens.len()).filter(|&w| opens[w].intersects(family)),
    );
    OpenFilter::from_members(fs.topology(), members)
}

/// The directed family of principal filters of the members of `v`; its union
/// is `v` again.
pub fn principal_family(space: &FiniteSpace, v: &OpenFilter) -> Vec<OpenFilter> {
    v.members()
        .iter()
        .map(|a| principal_filter(space, &space.opens()[a]))
        .collect()
}

/// All nonempty directed subfamilies of the filters, as index sets.
pub fn directed_families(fs: &FilterSpace) -> Vec<BitSet> {
    let k = fs.filters().len();
    subsets(k)
        .filter(|s| !s.is_empty() && directedness_witness(fs.filters(), s).is_none())
        .collect()
}

/// All nonempty chains of the filter order, as index sets. The canonical
/// filter order is a linear extension of inclusion, so chains are built by
/// extending with inclusion-larger filters only.
pub fn chains(fs: &FilterSpace, budget: usize) -> Result<Vec<BitSet>, FeasibilityError> {
    let k = fs.filters().len();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = (0..k).map(|i| (vec![i], i)).collect();
    while let Some((chain, last)) = stack.pop() {
        if out.len() >= budget {
            return Err(FeasibilityError::new("chain enumeration", out.len() + 1, budget));
        }
        out.push(BitSet::from_indices(k, chain.iter().copied()));
        for j in (last + 1)..k {
            if fs.filters()[last]
                .members()
                .is_subset(fs.filters()[j].members())
            {
                let mut next = chain.clone();
                next.push(j);
                stack.push((next, j));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The directed-completeness of the filter order: every directed family has
/// its union as least upper bound, and that union is again a filter. Run in
/// full only while the filter count is small; above the bound the entry is
/// reported as skipped rather than silently sampled.
pub fn check_directed_union_closure(fs: &FilterSpace, limits: &Limits) -> LawEntry {
    let k = fs.filters().len();
    if k > limits.directed_full_bound {
        return LawEntry::skipped(
            "filters-directed-union-closure",
            format!(
                "{k} filters exceed the full-regime bound {}",
                limits.directed_full_bound
            ),
        );
    }
    for family in directed_families(fs) {
        let mut union = BitSet::empty(fs.base().opens().len());
        for i in family.iter() {
            union.union_with(fs.filters()[i].members());
        }
        if fs.filter_index(&union).is_none() {
            return LawEntry::fail(
                "filters-directed-union-closure",
                json!({
                    "family": family.indices(),
                    "union": union.indices(),
                }),
            )
            .with_regime("all-directed-subfamilies");
        }
    }
    LawEntry::pass("filters-directed-union-closure").with_regime("all-directed-subfamilies")
}

#[derive(Debug, Error)]
pub enum MonadError {
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error("space is not T0: `{0}` and `{1}` have the same open neighborhoods")]
    NotT0(String, String),
    #[error(transparent)]
    Filter(#[from] FilterError),
}

/// A test map for the naturality squares. Unlike [`ContinuousMap`] this is
/// not pre-verified; continuity is one of the reported checks, and a
/// non-continuous candidate fails its entry and skips its squares.
#[derive(Debug, Clone)]
pub struct MapCandidate {
    pub label: String,
    pub domain: FiniteSpace,
    pub codomain: FiniteSpace,
    pub assignment: Vec<usize>,
}

impl MapCandidate {
    pub fn from_map(label: impl Into<String>, map: &ContinuousMap) -> Self {
        MapCandidate {
            label: label.into(),
            domain: map.domain().clone(),
            codomain: map.codomain().clone(),
            assignment: map.assignment().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CarrierSizes {
    pub points: usize,
    pub opens: usize,
    pub filters: usize,
    pub phi2: usize,
    pub phi3: usize,
}

/// Outcome of [`check_monad_laws`].
#[derive(Debug, Clone, Serialize)]
pub struct MonadLawReport {
    pub sizes: CarrierSizes,
    pub laws: Vec<LawEntry>,
}

impl MonadLawReport {
    /// Every law passed outright.
    pub fn all_pass(&self) -> bool {
        self.laws
            .iter()
            .all(|l| l.status == crate::report::Status::Pass)
    }

    pub fn no_failures(&self) -> bool {
        self.laws
            .iter()
            .all(|l| l.status != crate::report::Status::Fail)
    }

    pub fn get(&self, law: &str) -> Option<&LawEntry> {
        self.laws.iter().find(|l| l.law == law)
    }
}

/// Checks the full monad-law battery on one space: continuity of the unit
/// and the multiplication, both unit laws, associativity over the entire
/// third filter iterate, directed-union closure of the filter order, and
/// the naturality squares for every supplied test map.
pub fn check_monad_laws(
    space: &FiniteSpace,
    maps: &[MapCandidate],
    limits: &Limits,
) -> Result<MonadLawReport, MonadError> {
    if let Some((i, j)) = space.t0_witness() {
        return Err(MonadError::NotT0(
            space.point_name(i).to_string(),
            space.point_name(j).to_string(),
        ));
    }
    let fs = FilterSpace::build(space, None, Some(limits.max_phi2))?;
    let fs2 = FilterSpace::build(fs.topology(), Some(limits.max_phi2), Some(limits.max_phi3))?;
    let gammas = open_filters(fs2.topology());
    let sizes = CarrierSizes {
        points: space.len(),
        opens: space.opens().len(),
        filters: fs.filters().len(),
        phi2: fs2.filters().len(),
        phi3: gammas.len(),
    };
    let mut laws = Vec::new();

    // continuity of the unit
    let eta_assign: Vec<usize> = (0..space.len()).map(|p| fs.eta_index(p)).collect();
    let eta_continuous = continuity_witness(space, fs.topology(), &eta_assign);
    match eta_continuous {
        None => laws.push(LawEntry::pass("eta-continuous")),
        Some(o) => laws.push(LawEntry::fail(
            "eta-continuous",
            json!({ "open": fs.topology().opens()[o].indices() }),
        )),
    }

    // continuity of the multiplication as a point map phi2 -> phi
    let mut mu_assign = Vec::with_capacity(fs2.filters().len());
    for alpha in fs2.filters() {
        let m = mu(&fs, alpha)?;
        mu_assign.push(
            fs.filter_index(m.members())
                .ok_or_else(|| FilterError::Internal("mu image is a filter".into()))?,
        );
    }
    let mu_continuous = continuity_witness(fs2.topology(), fs.topology(), &mu_assign);
    match mu_continuous {
        None => laws.push(LawEntry::pass("mu-continuous")),
        Some(o) => laws.push(LawEntry::fail(
            "mu-continuous",
            json!({ "open": fs.topology().opens()[o].indices() }),
        )),
    }

    laws.push(check_directed_union_closure(&fs, limits));

    // unit laws
    let mut left = LawEntry::pass("unit-law-eta-at-filter-space");
    for (vi, v) in fs.filters().iter().enumerate() {
        let eta_v = eta(fs.topology(), vi);
        let back = mu(&fs, &eta_v)?;
        if back.members() != v.members() {
            left = LawEntry::fail(
                "unit-law-eta-at-filter-space",
                json!({
                    "filter": vi,
                    "members": v.member_names(space),
                    "mu_of_eta": back.member_names(space),
                }),
            );
            break;
        }
    }
    laws.push(left);

    if eta_continuous.is_some() {
        laws.push(LawEntry::skipped(
            "unit-law-phi-of-eta",
            "unit is not continuous, functor image undefined",
        ));
    } else {
        let mut right = LawEntry::pass("unit-law-phi-of-eta");
        let n_phix = fs.topology().opens().len();
        for (vi, v) in fs.filters().iter().enumerate() {
            let mut m = BitSet::empty(n_phix);
            for w in 0..n_phix {
                let pre = preimage(&eta_assign, space.len(), &fs.topology().opens()[w]);
                let idx = space
                    .open_index(&pre)
                    .ok_or_else(|| FilterError::Internal("eta preimage is open".into()))?;
                if v.members().contains(idx) {
                    m.insert(w);
                }
            }
            let back = mu(&fs, &OpenFilter::from_members(fs.topology(), m)?)?;
            if back.members() != v.members() {
                right = LawEntry::fail(
                    "unit-law-phi-of-eta",
                    json!({
                        "filter": vi,
                        "members": v.member_names(space),
                        "mu_of_phi_eta": back.member_names(space),
                    }),
                );
                break;
            }
        }
        laws.push(right);
    }

    // associativity over the entire third iterate
    if mu_continuous.is_some() {
        laws.push(LawEntry::skipped(
            "associativity",
            "multiplication is not continuous, functor image undefined",
        ));
    } else {
        let n_phix = fs.topology().opens().len();
        let mu_pre: Vec<usize> = (0..n_phix)
            .map(|w| {
                fs2.topology()
                    .open_index(&preimage(
                        &mu_assign,
                        fs2.filters().len(),
                        &fs.topology().opens()[w],
                    ))
                    .expect("mu is continuous here")
            })
            .collect();
        let mut assoc = LawEntry::pass("associativity");
        for (gi, gamma) in gammas.iter().enumerate() {
            let mut l = BitSet::empty(n_phix);
            let mut r = BitSet::empty(n_phix);
            for w in 0..n_phix {
                if gamma.members().contains(mu_pre[w]) {
                    l.insert(w);
                }
                if gamma.members().contains(fs2.phi_open_index(w)) {
                    r.insert(w);
                }
            }
            let lhs = mu(&fs, &OpenFilter::from_members(fs.topology(), l)?)?;
            let rhs = mu(&fs, &OpenFilter::from_members(fs.topology(), r)?)?;
            if lhs.members() != rhs.members() {
                assoc = LawEntry::fail(
                    "associativity",
                    json!({
                        "gamma": gi,
                        "mu_after_phi_mu": lhs.member_names(space),
                        "mu_after_mu": rhs.member_names(space),
                    }),
                );
                break;
            }
        }
        laws.push(assoc);
    }

    // naturality squares for the supplied maps
    for cand in maps {
        check_naturality(cand, limits, &mut laws)?;
    }

    Ok(MonadLawReport { sizes, laws })
}

fn check_naturality(
    cand: &MapCandidate,
    limits: &Limits,
    laws: &mut Vec<LawEntry>,
) -> Result<(), MonadError> {
    let tag = &cand.label;
    let continuous_entry = format!("test-map-continuous[{tag}]");
    let phi_entry = format!("phi-map-continuous[{tag}]");
    let eta_entry = format!("naturality-eta[{tag}]");
    let mu_entry = format!("naturality-mu[{tag}]");

    if let Some(o) = continuity_witness(&cand.domain, &cand.codomain, &cand.assignment) {
        laws.push(LawEntry::fail(
            &continuous_entry,
            json!({ "open": cand.codomain.open_names(&cand.codomain.opens()[o]) }),
        ));
        laws.push(LawEntry::skipped(&phi_entry, "test map is not continuous"));
        laws.push(LawEntry::skipped(&eta_entry, "test map is not continuous"));
        laws.push(LawEntry::skipped(&mu_entry, "test map is not continuous"));
        return Ok(());
    }
    laws.push(LawEntry::pass(&continuous_entry));
    let f = ContinuousMap::from_assignment(
        cand.domain.clone(),
        cand.codomain.clone(),
        cand.assignment.clone(),
    )
    .expect("continuity already verified");

    let fs_dom = FilterSpace::build(&cand.domain, None, Some(limits.max_phi2))?;
    let fs_cod = FilterSpace::build(&cand.codomain, None, Some(limits.max_phi2))?;
    let g = phi_map(&f, &fs_dom, &fs_cod)?;

    match continuity_witness(fs_dom.topology(), fs_cod.topology(), &g) {
        None => laws.push(LawEntry::pass(&phi_entry)),
        Some(o) => {
            laws.push(LawEntry::fail(
                &phi_entry,
                json!({ "open": fs_cod.topology().opens()[o].indices() }),
            ));
            laws.push(LawEntry::skipped(&eta_entry, "functor image is not continuous"));
            laws.push(LawEntry::skipped(&mu_entry, "functor image is not continuous"));
            return Ok(());
        }
    }

    // unit square: Phi(f) . eta = eta . f
    let mut eta_sq = LawEntry::pass(&eta_entry);
    for p in 0..cand.domain.len() {
        if g[fs_dom.eta_index(p)] != fs_cod.eta_index(cand.assignment[p]) {
            eta_sq = LawEntry::fail(
                &eta_entry,
                json!({ "point": cand.domain.point_name(p) }),
            );
            break;
        }
    }
    laws.push(eta_sq);

    // multiplication square: Phi(f) . mu = mu . Phi(Phi(f)), on every element
    // of the second iterate of the domain
    let alphas = open_filters(fs_dom.topology());
    if alphas.len() > limits.max_phi2 {
        return Err(MonadError::Feasibility(FeasibilityError::new(
            "second filter iterate of a test-map domain",
            alphas.len(),
            limits.max_phi2,
        )));
    }
    let mut mu_sq = LawEntry::pass(&mu_entry);
    for (ai, alpha) in alphas.iter().enumerate() {
        let lhs = {
            let m = mu(&fs_dom, alpha)?;
            let idx = fs_dom
                .filter_index(m.members())
                .ok_or_else(|| FilterError::Internal("mu image is a filter".into()))?;
            g[idx]
        };
        let rhs = {
            // Phi(Phi(f))(alpha) as a filter on the codomain filter space
            let n = fs_cod.topology().opens().len();
            let mut m = BitSet::empty(n);
            for w in 0..n {
                let pre = preimage(&g, fs_dom.filters().len(), &fs_cod.topology().opens()[w]);
                let idx = fs_dom.topology().open_index(&pre).ok_or_else(|| {
                    FilterError::Internal("functor image preimage is open".into())
                })?;
                if alpha.members().contains(idx) {
                    m.insert(w);
                }
            }
            let beta = OpenFilter::from_members(fs_cod.topology(), m)?;
            let out = mu(&fs_cod, &beta)?;
            fs_cod
                .filter_index(out.members())
                .ok_or_else(|| FilterError::Internal("mu image is a filter".into()))?
        };
        if lhs != rhs {
            mu_sq = LawEntry::fail(&mu_entry, json!({ "alpha": ai }));
            break;
        }
    }
    laws.push(mu_sq);
    Ok(())
}
