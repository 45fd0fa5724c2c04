//! Algebras of the open filter monad and their equivalence with continuous
//! lattices on finite carriers.
//!
//! One direction builds the structure map of a complete lattice from its
//! Scott space: `r(v)` is the supremum of the union of lower-bound sets of
//! the members of `v`. The other direction recovers the lattice from any
//! verified algebra through the specialization order. [`check_theorem_suite`]
//! checks the full battery of supporting facts on a concrete algebra, with a
//! claim-level skip (never a silent pass) whenever a precondition fails.

use serde_json::json;
use thiserror::Error;

use crate::bits::{subsets, BitSet};
use crate::filter::{
    chains, directed_families, eta, meets_filter, mu, open_filters, principal_filter, FilterError,
    FilterSpace, OpenFilter,
};
use crate::limits::{FeasibilityError, Limits};
use crate::order::{FinitePoset, PosetError};
use crate::report::{ClaimEntry, TheoremReport};
use crate::topology::{
    continuity_witness, image, preimage, scott_space, FiniteSpace, SpaceError,
};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("not a complete lattice: {0}")]
    NotCompleteLattice(String),
    #[error("space is not T0: `{0}` and `{1}` have the same open neighborhoods")]
    NotT0(String, String),
    #[error("algebra laws violated")]
    LawViolation(Box<TheoremReport>),
    #[error("structure map must assign every filter: expected {expected} entries, got {got}")]
    StructureSizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A verified Eilenberg-Moore algebra of the open filter monad: a T0 space
/// together with a structure map from its filters to its points that is
/// continuous and satisfies both algebra laws.
#[derive(Debug, Clone)]
pub struct PhiAlgebra {
    space: FiniteSpace,
    filter_space: FilterSpace,
    structure: Vec<usize>,
}

impl PhiAlgebra {
    /// Builds and verifies an algebra; fails with the offending report when
    /// any law does not hold.
    pub fn new(
        space: FiniteSpace,
        structure: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self, AlgebraError> {
        if let Some((i, j)) = space.t0_witness() {
            return Err(AlgebraError::NotT0(
                space.point_name(i).to_string(),
                space.point_name(j).to_string(),
            ));
        }
        let fs = FilterSpace::build(&space, None, Some(limits.max_phi2))?;
        if structure.len() != fs.filters().len() {
            return Err(AlgebraError::StructureSizeMismatch {
                expected: fs.filters().len(),
                got: structure.len(),
            });
        }
        let report = check_algebra_with(&fs, &structure, limits)?;
        if !report.all_pass() {
            return Err(AlgebraError::LawViolation(Box::new(report)));
        }
        Ok(PhiAlgebra {
            space,
            filter_space: fs,
            structure,
        })
    }

    pub(crate) fn from_verified_parts(
        space: FiniteSpace,
        filter_space: FilterSpace,
        structure: Vec<usize>,
    ) -> Self {
        PhiAlgebra {
            space,
            filter_space,
            structure,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn filter_space(&self) -> &FilterSpace {
        &self.filter_space
    }

    /// The structure map as filter index to point index.
    pub fn structure(&self) -> &[usize] {
        &self.structure
    }

    pub fn apply(&self, filter_idx: usize) -> usize {
        self.structure[filter_idx]
    }
}

/// The union of the lower-bound sets of the members of `v`, an ideal of the
/// lattice when the space is the Scott space of a complete lattice.
pub fn filter_lower_bounds(
    poset: &FinitePoset,
    space: &FiniteSpace,
    v: &OpenFilter,
) -> Result<BitSet, AlgebraError> {
    debug_assert_eq!(poset.elements(), space.points(), "carriers must agree");
    let mut out = BitSet::empty(poset.len());
    for a in v.members().iter() {
        out.union_with(&poset.lower_bounds(&space.opens()[a]));
    }
    if out.is_empty() || !poset.is_lower_set(&out) || !poset.is_directed(&out) {
        return Err(AlgebraError::Internal(format!(
            "lower-bound union {out:?} of a filter is not an ideal"
        )));
    }
    Ok(out)
}

/// Builds the algebra of a complete lattice: the Scott space together with
/// the structure map sending each filter to the supremum of its lower-bound
/// union. All algebra laws are verified at construction; a violation would
/// indicate a bug and is surfaced, never swallowed.
pub fn algebra_from_lattice(
    poset: &FinitePoset,
    limits: &Limits,
) -> Result<PhiAlgebra, AlgebraError> {
    if !poset.is_complete_lattice() {
        return Err(AlgebraError::NotCompleteLattice(
            "the algebra construction needs suprema and infima of every subset".into(),
        ));
    }
    if !poset.is_continuous_lattice()? {
        return Err(AlgebraError::Internal(
            "a finite complete lattice must be continuous".into(),
        ));
    }
    let space = scott_space(poset);
    let fs = FilterSpace::build(&space, None, Some(limits.max_phi2))?;
    let mut structure = Vec::with_capacity(fs.filters().len());
    for v in fs.filters() {
        let below = filter_lower_bounds(poset, &space, v)?;
        let s = poset
            .sup(&below)
            .ok_or_else(|| AlgebraError::Internal("ideal without supremum".into()))?;
        structure.push(s);
    }
    let report = check_algebra_with(&fs, &structure, limits)?;
    if !report.all_pass() {
        return Err(AlgebraError::LawViolation(Box::new(report)));
    }
    Ok(PhiAlgebra::from_verified_parts(space, fs, structure))
}

/// Checks the three algebra laws of a candidate structure map: continuity,
/// the unit law on every point, and the multiplication law on every element
/// of the second filter iterate.
pub fn check_algebra(
    space: &FiniteSpace,
    structure: &[usize],
    limits: &Limits,
) -> Result<TheoremReport, AlgebraError> {
    if let Some((i, j)) = space.t0_witness() {
        return Err(AlgebraError::NotT0(
            space.point_name(i).to_string(),
            space.point_name(j).to_string(),
        ));
    }
    let fs = FilterSpace::build(space, None, Some(limits.max_phi2))?;
    if structure.len() != fs.filters().len() {
        return Err(AlgebraError::StructureSizeMismatch {
            expected: fs.filters().len(),
            got: structure.len(),
        });
    }
    check_algebra_with(&fs, structure, limits)
}

/// Same as [`check_algebra`] over an already-built filter space.
pub fn check_algebra_with(
    fs: &FilterSpace,
    structure: &[usize],
    limits: &Limits,
) -> Result<TheoremReport, AlgebraError> {
    let space = fs.base();
    let k = fs.filters().len();
    let mut claims = Vec::new();

    let cont = continuity_witness(fs.topology(), space, structure);
    match cont {
        None => claims.push(ClaimEntry::pass("structure-map-continuous")),
        Some(o) => claims.push(ClaimEntry::fail(
            "structure-map-continuous",
            json!({
                "open": space.open_names(&space.opens()[o]),
                "preimage": preimage(structure, k, &space.opens()[o]).indices(),
            }),
        )),
    }

    let mut unit = ClaimEntry::pass("unit-law");
    for x in 0..space.len() {
        let got = structure[fs.eta_index(x)];
        if got != x {
            unit = ClaimEntry::fail(
                "unit-law",
                json!({
                    "point": space.point_name(x),
                    "got": space.point_name(got),
                }),
            );
            break;
        }
    }
    claims.push(unit);

    if cont.is_some() {
        claims.push(ClaimEntry::skipped(
            "multiplication-law",
            "structure map is not continuous, functor image undefined",
        ));
    } else {
        let alphas = open_filters(fs.topology());
        if alphas.len() > limits.max_phi2 {
            return Err(AlgebraError::Feasibility(FeasibilityError::new(
                "second filter iterate",
                alphas.len(),
                limits.max_phi2,
            )));
        }
        let pre_r: Vec<usize> = (0..space.opens().len())
            .map(|a| {
                fs.topology()
                    .open_index(&preimage(structure, k, &space.opens()[a]))
                    .expect("structure map is continuous here")
            })
            .collect();
        let mut mult = ClaimEntry::pass("multiplication-law");
        for (ai, alpha) in alphas.iter().enumerate() {
            match multiplication_mismatch(fs, structure, &pre_r, alpha)? {
                None => {}
                Some((lhs, rhs)) => {
                    mult = ClaimEntry::fail(
                        "multiplication-law",
                        json!({
                            "alpha": ai,
                            "r_after_phi_r": space.point_name(lhs),
                            "r_after_mu": space.point_name(rhs),
                        }),
                    );
                    break;
                }
            }
        }
        claims.push(mult);
    }

    Ok(TheoremReport::new(claims))
}

/// Points `r(Phi(r)(alpha))` and `r(mu(alpha))` when they differ.
fn multiplication_mismatch(
    fs: &FilterSpace,
    structure: &[usize],
    pre_r: &[usize],
    alpha: &OpenFilter,
) -> Result<Option<(usize, usize)>, AlgebraError> {
    let space = fs.base();
    let n = space.opens().len();
    let phi_r = BitSet::from_indices(
        n,
        (0..n).filter(|&a| alpha.members().contains(pre_r[a])),
    );
    let lhs_idx = fs
        .filter_index(&phi_r)
        .ok_or_else(|| AlgebraError::Internal("functor image of a filter is a filter".into()))?;
    let mu_alpha = mu(fs, alpha)?;
    let rhs_idx = fs
        .filter_index(mu_alpha.members())
        .ok_or_else(|| AlgebraError::Internal("mu image is a filter".into()))?;
    let lhs = structure[lhs_idx];
    let rhs = structure[rhs_idx];
    Ok(if lhs == rhs { None } else { Some((lhs, rhs)) })
}

/// Recovers the lattice of a verified algebra: the specialization order of
/// its space, reported complete, continuous, and with the structure map
/// given by suprema of lower-bound unions.
pub fn lattice_from_algebra(
    alg: &PhiAlgebra,
    _limits: &Limits,
) -> Result<(FinitePoset, TheoremReport), AlgebraError> {
    let poset = alg.space().specialization_order()?;
    let mut claims = Vec::new();

    let complete = poset.is_complete_lattice();
    claims.push(if complete {
        ClaimEntry::pass("specialization-complete-lattice")
    } else {
        ClaimEntry::fail("specialization-complete-lattice", json!({}))
    });

    if complete {
        match poset.is_continuous_lattice() {
            Ok(true) => claims.push(ClaimEntry::pass("specialization-continuous-lattice")),
            Ok(false) => {
                claims.push(ClaimEntry::fail("specialization-continuous-lattice", json!({})))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        claims.push(ClaimEntry::skipped(
            "specialization-continuous-lattice",
            "specialization order is not a complete lattice",
        ));
    }

    claims.push(structure_is_sup_of_lower_bounds(alg, &poset)?);

    Ok((poset, TheoremReport::new(claims)))
}

fn structure_is_sup_of_lower_bounds(
    alg: &PhiAlgebra,
    poset: &FinitePoset,
) -> Result<ClaimEntry, AlgebraError> {
    for (vi, v) in alg.filter_space().filters().iter().enumerate() {
        let below = match filter_lower_bounds(poset, alg.space(), v) {
            Ok(b) => b,
            Err(AlgebraError::Internal(reason)) => {
                return Ok(ClaimEntry::fail(
                    "structure-map-is-sup-of-lower-bounds",
                    json!({ "filter": vi, "reason": reason }),
                ))
            }
            Err(e) => return Err(e),
        };
        if poset.sup(&below) != Some(alg.apply(vi)) {
            return Ok(ClaimEntry::fail(
                "structure-map-is-sup-of-lower-bounds",
                json!({
                    "filter": vi,
                    "lower_bounds": poset.names(&below),
                    "r": alg.space().point_name(alg.apply(vi)),
                }),
            ));
        }
    }
    Ok(ClaimEntry::pass("structure-map-is-sup-of-lower-bounds"))
}

/// The eight supporting facts checked on a concrete verified algebra.
/// Claims whose preconditions fail are reported as skipped with the reason.
pub fn check_theorem_suite(
    alg: &PhiAlgebra,
    limits: &Limits,
) -> Result<TheoremReport, AlgebraError> {
    let space = alg.space();
    let fs = alg.filter_space();
    let r = alg.structure();
    let k = fs.filters().len();
    let poset = space.specialization_order()?;
    let complete = poset.is_complete_lattice();
    let scott_matches = scott_space(&poset) == *space;
    let mut claims = Vec::new();

    // r-preimages of opens only contain filters holding the open
    if complete && scott_matches {
        let mut c = ClaimEntry::pass("structure-preimage-inside-phi");
        'outer: for (ai, a) in space.opens().iter().enumerate() {
            let pre = preimage(r, k, a);
            if !pre.is_subset(fs.phi(ai)) {
                let bad = pre.iter().find(|&v| !fs.phi(ai).contains(v)).unwrap();
                c = ClaimEntry::fail(
                    "structure-preimage-inside-phi",
                    json!({ "open": space.open_names(a), "filter": bad }),
                );
                break 'outer;
            }
        }
        claims.push(c);
    } else {
        claims.push(ClaimEntry::skipped(
            "structure-preimage-inside-phi",
            "space is not the Scott space of a complete lattice",
        ));
    }

    // filters holding an open land way above anything way below its infimum
    if complete && scott_matches {
        let mut c = ClaimEntry::pass("phi-inside-preimage-of-way-up");
        'outer2: for (ai, a) in space.opens().iter().enumerate() {
            let m = poset
                .inf(a)
                .ok_or_else(|| AlgebraError::Internal("complete lattice lost an inf".into()))?;
            for x in 0..poset.len() {
                if poset.way_below(x, m) {
                    let way_up = poset.way_above_set(x);
                    let pre = preimage(r, k, &way_up);
                    if !fs.phi(ai).is_subset(&pre) {
                        c = ClaimEntry::fail(
                            "phi-inside-preimage-of-way-up",
                            json!({
                                "open": space.open_names(a),
                                "x": poset.name(x),
                            }),
                        );
                        break 'outer2;
                    }
                }
            }
        }
        claims.push(c);
    } else {
        claims.push(ClaimEntry::skipped(
            "phi-inside-preimage-of-way-up",
            "space is not the Scott space of a complete lattice",
        ));
    }

    // every open is covered by the image of its phi set
    let mut c = ClaimEntry::pass("open-covered-by-image-of-phi");
    for (ai, a) in space.opens().iter().enumerate() {
        let img = image(r, space.len(), fs.phi(ai));
        if !a.is_subset(&img) {
            c = ClaimEntry::fail(
                "open-covered-by-image-of-phi",
                json!({ "open": space.open_names(a) }),
            );
            break;
        }
    }
    claims.push(c);

    // the structure map is monotone for inclusion
    let mut c = ClaimEntry::pass("structure-map-monotone");
    'mono: for v in 0..k {
        for w in 0..k {
            if fs.filters()[v].members().is_subset(fs.filters()[w].members())
                && !poset.leq(r[v], r[w])
            {
                c = ClaimEntry::fail(
                    "structure-map-monotone",
                    json!({ "smaller": v, "larger": w }),
                );
                break 'mono;
            }
        }
    }
    claims.push(c);

    // infima of arbitrary point subsets are the structure map on principal filters
    let mut c = ClaimEntry::pass("infima-from-principal-filters");
    for a in subsets(space.len()) {
        let principal = principal_filter(space, &a);
        let idx = fs
            .filter_index(principal.members())
            .ok_or_else(|| AlgebraError::Internal("principal filters are filters".into()))?;
        let got = r[idx];
        if poset.inf(&a) != Some(got) {
            c = ClaimEntry::fail(
                "infima-from-principal-filters",
                json!({
                    "subset": space.open_names(&a),
                    "r_of_principal": space.point_name(got),
                    "inf": poset.inf(&a).map(|i| space.point_name(i).to_string()),
                }),
            );
            break;
        }
    }
    claims.push(c);

    // directed suprema are preserved, with the meets-filter route cross-checked
    claims.push(directed_sup_claim(alg, &poset, limits)?);

    // the structure map is the supremum of lower bounds
    claims.push(structure_is_sup_of_lower_bounds(alg, &poset)?);

    // the specialization order is a continuous lattice
    if complete {
        match poset.is_continuous_lattice() {
            Ok(true) => claims.push(ClaimEntry::pass("specialization-order-continuous-lattice")),
            Ok(false) => claims.push(ClaimEntry::fail(
                "specialization-order-continuous-lattice",
                json!({}),
            )),
            Err(e) => return Err(e.into()),
        }
    } else {
        claims.push(ClaimEntry::fail(
            "specialization-order-continuous-lattice",
            json!({ "reason": "specialization order is not a complete lattice" }),
        ));
    }

    Ok(TheoremReport::new(claims))
}

fn directed_sup_claim(
    alg: &PhiAlgebra,
    poset: &FinitePoset,
    limits: &Limits,
) -> Result<ClaimEntry, AlgebraError> {
    let fs = alg.filter_space();
    let r = alg.structure();
    let k = fs.filters().len();
    let (families, regime) = if k <= limits.directed_full_bound {
        (directed_families(fs), "all-directed-subfamilies")
    } else {
        (chains(fs, limits.chain_budget)?, "chains")
    };
    let claim = "structure-map-preserves-directed-sups";
    for family in &families {
        let mut union = BitSet::empty(fs.base().opens().len());
        for i in family.iter() {
            union.union_with(fs.filters()[i].members());
        }
        let Some(uidx) = fs.filter_index(&union) else {
            return Ok(ClaimEntry::fail(
                claim,
                json!({ "family": family.indices(), "reason": "union is not a filter" }),
            )
            .with_regime(regime));
        };
        // the multiplication of the meets-filter recovers the same union
        let tilde = meets_filter(fs, family)?;
        let via_mu = mu(fs, &tilde)?;
        if via_mu.members() != &union {
            return Ok(ClaimEntry::fail(
                claim,
                json!({
                    "family": family.indices(),
                    "reason": "meets-filter route disagrees with the union",
                }),
            )
            .with_regime(regime));
        }
        let image_points = BitSet::from_indices(poset.len(), family.iter().map(|i| r[i]));
        let rhs = poset.sup(&image_points);
        if rhs != Some(r[uidx]) {
            return Ok(ClaimEntry::fail(
                claim,
                json!({
                    "family": family.indices(),
                    "r_of_union": alg.space().point_name(r[uidx]),
                    "sup_of_image": rhs.map(|i| alg.space().point_name(i).to_string()),
                }),
            )
            .with_regime(regime));
        }
    }
    Ok(ClaimEntry::pass(claim).with_regime(regime))
}

/// Whether every element is the supremum of the lower-bound union of its
/// principal filter; checked to coincide with lattice continuity.
pub fn check_principal_filter_criterion(poset: &FinitePoset) -> Result<bool, AlgebraError> {
    if !poset.is_complete_lattice() {
        return Err(AlgebraError::NotCompleteLattice(
            "the criterion is stated for complete lattices".into(),
        ));
    }
    let space = scott_space(poset);
    let mut holds = true;
    for x in 0..poset.len() {
        let e = eta(&space, x);
        let below = filter_lower_bounds(poset, &space, &e)?;
        if poset.sup(&below) != Some(x) {
            holds = false;
            break;
        }
    }
    let continuous = poset.is_continuous_lattice()?;
    if holds != continuous {
        return Err(AlgebraError::Internal(
            "principal-filter criterion must coincide with continuity".into(),
        ));
    }
    Ok(holds)
}

/// Exhaustive search for structure maps: every total assignment from filters
/// to points is tested against continuity and both algebra laws. Returns the
/// verified algebras in lexicographic assignment order.
pub fn structure_search(
    space: &FiniteSpace,
    limits: &Limits,
) -> Result<Vec<PhiAlgebra>, AlgebraError> {
    if let Some((i, j)) = space.t0_witness() {
        return Err(AlgebraError::NotT0(
            space.point_name(i).to_string(),
            space.point_name(j).to_string(),
        ));
    }
    let fs = FilterSpace::build(space, None, Some(limits.max_phi2))?;
    let k = fs.filters().len();
    let n = space.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let total = (n as u128)
        .checked_pow(k as u32)
        .filter(|&t| t <= limits.max_candidates as u128)
        .ok_or_else(|| {
            FeasibilityError::new("structure-map candidates", usize::MAX, limits.max_candidates)
        })?;
    let _ = total;
    let alphas = open_filters(fs.topology());
    let mut mu_idx = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        let m = mu(&fs, alpha)?;
        mu_idx.push(
            fs.filter_index(m.members())
                .ok_or_else(|| AlgebraError::Internal("mu image is a filter".into()))?,
        );
    }
    let mut out = Vec::new();
    let mut candidate = vec![0usize; k];
    loop {
        if candidate_is_algebra(&fs, &candidate, &alphas, &mu_idx) {
            out.push(PhiAlgebra::from_verified_parts(
                space.clone(),
                fs.clone(),
                candidate.clone(),
            ));
        }
        // odometer step
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            candidate[pos] += 1;
            if candidate[pos] < n {
                break;
            }
            candidate[pos] = 0;
        }
    }
}

fn candidate_is_algebra(
    fs: &FilterSpace,
    structure: &[usize],
    alphas: &[OpenFilter],
    mu_idx: &[usize],
) -> bool {
    let space = fs.base();
    let k = fs.filters().len();
    for x in 0..space.len() {
        if structure[fs.eta_index(x)] != x {
            return false;
        }
    }
    if continuity_witness(fs.topology(), space, structure).is_some() {
        return false;
    }
    let pre_r: Vec<usize> = (0..space.opens().len())
        .map(|a| {
            fs.topology()
                .open_index(&preimage(structure, k, &space.opens()[a]))
                .expect("continuity just checked")
        })
        .collect();
    let n = space.opens().len();
    for (ai, alpha) in alphas.iter().enumerate() {
        let phi_r = BitSet::from_indices(
            n,
            (0..n).filter(|&a| alpha.members().contains(pre_r[a])),
        );
        let Some(lhs_idx) = fs.filter_index(&phi_r) else {
            return false;
        };
        if structure[lhs_idx] != structure[mu_idx[ai]] {
            return false;
        }
    }
    true
}

/// Builds the algebra of a complete lattice and recovers the lattice again:
/// true when the recovered order equals the input identically and every
/// claim of the theorem suite passes.
pub fn roundtrip_check(poset: &FinitePoset, limits: &Limits) -> Result<bool, AlgebraError> {
    let alg = algebra_from_lattice(poset, limits)?;
    let (recovered, report) = lattice_from_algebra(&alg, limits)?;
    let suite = check_theorem_suite(&alg, limits)?;
    Ok(recovered == *poset && report.all_pass() && suite.all_pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests::poset;
    use crate::report::Status;
    use crate::topology::tests::{discrete2, point_space, sierpinski};

    fn ch2() -> FinitePoset {
        poset(&["bot", "top"], &[("bot", "top")])
    }

    fn diamond() -> FinitePoset {
        poset(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
    }

    #[test]
    fn lower_bound_union_examples() {
        let p = ch2();
        let space = scott_space(&p);
        let fs = FilterSpace::build(&space, None, None).unwrap();
        // canonical order: [bot] = {X}, [top] = {X, {top}}, improper = all
        let vals: Vec<BitSet> = fs
            .filters()
            .iter()
            .map(|v| filter_lower_bounds(&p, &space, v).unwrap())
            .collect();
        assert_eq!(vals[0], BitSet::singleton(2, 0));
        assert_eq!(vals[1], BitSet::full(2));
        assert_eq!(vals[2], BitSet::full(2), "empty open contributes everything");
    }

    #[test]
    fn algebra_of_the_two_chain() {
        let limits = Limits::default();
        let alg = algebra_from_lattice(&ch2(), &limits).unwrap();
        assert_eq!(alg.structure(), &[0, 1, 1], "bot, top, top");
        let single = algebra_from_lattice(&poset(&["p"], &[]), &limits).unwrap();
        assert_eq!(single.structure(), &[0, 0]);
    }

    #[test]
    fn algebra_of_the_diamond_sends_principal_filters_back() {
        let limits = Limits::default();
        let p = diamond();
        let alg = algebra_from_lattice(&p, &limits).unwrap();
        let space = alg.space();
        for x in 0..p.len() {
            let e = eta(space, x);
            let idx = alg.filter_space().filter_index(e.members()).unwrap();
            assert_eq!(alg.apply(idx), x);
        }
        // principal filter of {a} maps to a
        let a = space.point_index("a").unwrap();
        let pa = principal_filter(space, &BitSet::singleton(space.len(), a));
        let idx = alg.filter_space().filter_index(pa.members()).unwrap();
        assert_eq!(alg.apply(idx), a);
    }

    #[test]
    fn non_lattices_are_rejected() {
        let limits = Limits::default();
        let anti = poset(&["a", "b"], &[]);
        assert!(matches!(
            algebra_from_lattice(&anti, &limits),
            Err(AlgebraError::NotCompleteLattice(_))
        ));
    }

    #[test]
    fn check_algebra_flags_corruption() {
        let limits = Limits::default();
        let s = sierpinski();
        // valid structure on the Sierpinski space
        let good = check_algebra(&s, &[0, 1, 1], &limits).unwrap();
        assert!(good.all_pass());
        // constant-to-top map breaks the unit law at the bottom point
        let bad = check_algebra(&s, &[1, 1, 1], &limits).unwrap();
        let unit = bad.get("unit-law").unwrap();
        assert_eq!(unit.status, Status::Fail);
        assert_eq!(unit.witness.as_ref().unwrap()["point"], "0");
    }

    #[test]
    fn no_structure_map_on_the_discrete_pair() {
        let limits = Limits::default();
        let d = discrete2();
        // exhaustively: every one of the 16 assignments fails some law
        let fs = FilterSpace::build(&d, None, None).unwrap();
        let mut count = 0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for e in 0..2 {
                        let rep = check_algebra_with(&fs, &[a, b, c, e], &limits).unwrap();
                        assert!(!rep.all_pass());
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 16);
        assert!(structure_search(&d, &limits).unwrap().is_empty());
    }

    #[test]
    fn search_finds_exactly_the_known_algebras() {
        let limits = Limits::default();
        let found = structure_search(&sierpinski(), &limits).unwrap();
        assert_eq!(found.len(), 1);
        let from_lattice = algebra_from_lattice(&ch2(), &limits).unwrap();
        assert_eq!(found[0].structure(), from_lattice.structure());
        assert_eq!(structure_search(&point_space(), &limits).unwrap().len(), 1);
    }

    #[test]
    fn theorem_suite_passes_on_lattice_algebras() {
        let limits = Limits::default();
        for p in [ch2(), diamond()] {
            let alg = algebra_from_lattice(&p, &limits).unwrap();
            let suite = check_theorem_suite(&alg, &limits).unwrap();
            assert_eq!(suite.claims.len(), 8);
            assert!(suite.all_pass(), "{suite:?}");
            assert!(roundtrip_check(&p, &limits).unwrap());
        }
    }

    #[test]
    fn corrupted_structure_fails_some_claim() {
        let limits = Limits::default();
        let alg = algebra_from_lattice(&ch2(), &limits).unwrap();
        let fs = alg.filter_space();
        for i in 0..alg.structure().len() {
            for q in 0..alg.space().len() {
                if q == alg.structure()[i] {
                    continue;
                }
                let mut corrupted = alg.structure().to_vec();
                corrupted[i] = q;
                let rep = check_algebra_with(fs, &corrupted, &limits).unwrap();
                assert!(!rep.all_pass(), "corruption at {i} -> {q} slipped through");
            }
        }
    }

    #[test]
    fn principal_filter_criterion_matches_continuity() {
        for p in [ch2(), diamond(), poset(&["p"], &[])] {
            assert!(check_principal_filter_criterion(&p).unwrap());
        }
        assert!(matches!(
            check_principal_filter_criterion(&poset(&["a", "b"], &[])),
            Err(AlgebraError::NotCompleteLattice(_))
        ));
    }

    #[test]
    fn lattice_recovery_is_identity() {
        let limits = Limits::default();
        let p = diamond();
        let alg = algebra_from_lattice(&p, &limits).unwrap();
        let (q, rep) = lattice_from_algebra(&alg, &limits).unwrap();
        assert!(rep.all_pass());
        assert_eq!(q, p);
    }
}
