//! Acceptance suite. One test per gate criterion; each prints a single
//! `[acceptance] <name>: PASS/FAIL` line (run with `--nocapture` to see the
//! lines on success). Every tolerance and ceiling is pinned here in code.

use std::time::Instant;

use ofm_core::algebra::{
    algebra_from_lattice, check_algebra_with, check_theorem_suite, lattice_from_algebra,
    roundtrip_check, structure_search, PhiAlgebra,
};
use ofm_core::bits::BitSet;
use ofm_core::catalog::{
    complete_lattice_catalog, generate_poset_catalog, generate_space_catalog, poset_catalog,
    t0_space_catalog, CatalogKind, CatalogSpec,
};
use ofm_core::filter::{
    chains, check_monad_laws, directed_families, directedness_witness, meets_filter, mu,
    open_filters, principal_family, FilterSpace, MapCandidate, MonadError,
};
use ofm_core::limits::Limits;
use ofm_core::topology::{is_continuous, scott_space, FiniteSpace};

fn criterion<F: FnOnce() -> Result<String, String>>(name: &str, body: F) {
    match body() {
        Ok(detail) => println!("[acceptance] {name}: PASS ({detail})"),
        Err(msg) => {
            println!("[acceptance] {name}: FAIL ({msg})");
            panic!("{name}: {msg}");
        }
    }
}

fn space(points: &[&str], opens: &[&[&str]]) -> FiniteSpace {
    FiniteSpace::new(
        points.iter().map(|s| s.to_string()).collect(),
        &opens
            .iter()
            .map(|o| o.iter().map(|s| s.to_string()).collect())
            .collect::<Vec<Vec<String>>>(),
    )
    .unwrap()
}

fn sierpinski() -> FiniteSpace {
    space(&["0", "1"], &[&[], &["1"], &["0", "1"]])
}

fn point_space() -> FiniteSpace {
    space(&["p"], &[&[], &["p"]])
}

fn discrete2() -> FiniteSpace {
    space(&["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]])
}

/// Every continuous map between every ordered pair of the given spaces.
fn all_continuous_maps(spaces: &[FiniteSpace]) -> Vec<MapCandidate> {
    let mut out = Vec::new();
    for (di, dom) in spaces.iter().enumerate() {
        for (ci, cod) in spaces.iter().enumerate() {
            let n = dom.len();
            let m = cod.len();
            if m == 0 {
                continue;
            }
            for serial in 0..m.pow(n as u32) {
                let mut acc = serial;
                let assignment: Vec<usize> = (0..n)
                    .map(|_| {
                        let digit = acc % m;
                        acc /= m;
                        digit
                    })
                    .collect();
                if is_continuous(dom, cod, &assignment) {
                    out.push(MapCandidate {
                        label: format!("{di}to{ci}n{serial}"),
                        domain: dom.clone(),
                        codomain: cod.clone(),
                        assignment,
                    });
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_monad_law_suite() {
    criterion("monad-laws", || {
        let limits = Limits::default();
        let started = Instant::now();
        // all T0 spaces with at most two points up to homeomorphism, plus
        // the named spaces explicitly
        let mut spaces = t0_space_catalog(2).map_err(|e| e.to_string())?;
        spaces.push(sierpinski());
        spaces.push(point_space());
        let maps = all_continuous_maps(&spaces);
        let mut laws_checked = 0usize;
        for s in &spaces {
            let mine: Vec<MapCandidate> = maps
                .iter()
                .filter(|m| &m.domain == s || &m.codomain == s)
                .cloned()
                .collect();
            let report = check_monad_laws(s, &mine, &limits).map_err(|e| e.to_string())?;
            if !report.all_pass() {
                return Err(format!(
                    "law failure on a {}-point space: {:?}",
                    s.len(),
                    report
                        .laws
                        .iter()
                        .find(|l| l.status != ofm_core::report::Status::Pass)
                ));
            }
            laws_checked += report.laws.len();
        }
        let small_elapsed = started.elapsed();
        if small_elapsed.as_secs() >= 30 {
            return Err(format!("two-point suite took {small_elapsed:?}, budget 30s"));
        }
        // all T0 spaces with three points: run wherever the third iterate
        // stays under its ceiling, and require a pass wherever it runs
        let three = t0_space_catalog(3).map_err(|e| e.to_string())?;
        let maps3 = all_continuous_maps(&three);
        let mut ran = 0usize;
        let mut skipped = 0usize;
        for s in &three {
            let mine: Vec<MapCandidate> = maps3
                .iter()
                .filter(|m| &m.domain == s || &m.codomain == s)
                .cloned()
                .collect();
            match check_monad_laws(s, &mine, &limits) {
                Ok(report) => {
                    ran += 1;
                    laws_checked += report.laws.len();
                    if !report.all_pass() {
                        return Err(format!(
                            "law failure on a 3-point space: {:?}",
                            report
                                .laws
                                .iter()
                                .find(|l| l.status != ofm_core::report::Status::Pass)
                        ));
                    }
                }
                Err(MonadError::Feasibility(f)) => {
                    skipped += 1;
                    eprintln!("3-point space skipped: {f}");
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(format!(
            "{} small spaces and {ran} three-point spaces ({skipped} over ceiling), {laws_checked} law entries, {:?}",
            spaces.len(),
            started.elapsed()
        ))
    });
}

fn lattice_algebras(limits: &Limits) -> Result<Vec<(usize, PhiAlgebra)>, String> {
    let lattices = complete_lattice_catalog(5).map_err(|e| e.to_string())?;
    if lattices.len() != 1 + 1 + 1 + 2 + 5 {
        return Err(format!(
            "expected 10 complete lattices with at most 5 elements, found {}",
            lattices.len()
        ));
    }
    lattices
        .iter()
        .map(|p| {
            algebra_from_lattice(p, limits)
                .map(|a| (p.len(), a))
                .map_err(|e| format!("lattice of size {}: {e}", p.len()))
        })
        .collect()
}

#[test]
fn criterion_2_lattices_yield_verified_algebras() {
    criterion("lattice-to-algebra", || {
        let limits = Limits::default();
        let started = Instant::now();
        let algebras = lattice_algebras(&limits)?;
        // construction already verifies continuity and both laws over the
        // full second iterate; re-check explicitly and pin the two
        // Scott-space inclusion facts as well
        for (size, alg) in &algebras {
            let report = check_algebra_with(alg.filter_space(), alg.structure(), &limits)
                .map_err(|e| e.to_string())?;
            if !report.all_pass() {
                return Err(format!("algebra laws failed on a {size}-element lattice"));
            }
            let suite = check_theorem_suite(alg, &limits).map_err(|e| e.to_string())?;
            for claim in ["structure-preimage-inside-phi", "phi-inside-preimage-of-way-up"] {
                let entry = suite.get(claim).ok_or_else(|| format!("missing {claim}"))?;
                if entry.status != ofm_core::report::Status::Pass {
                    return Err(format!("{claim} failed on a {size}-element lattice"));
                }
            }
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs() >= 300 {
            return Err(format!("suite took {elapsed:?}, budget 5 minutes"));
        }
        Ok(format!("10 lattices, {elapsed:?}"))
    });
}

#[test]
fn criterion_3_algebras_recover_their_lattices() {
    criterion("algebra-to-lattice", || {
        let limits = Limits::default();
        let lattices = complete_lattice_catalog(5).map_err(|e| e.to_string())?;
        let mut claims = 0usize;
        for p in &lattices {
            let alg = algebra_from_lattice(p, &limits).map_err(|e| e.to_string())?;
            let suite = check_theorem_suite(&alg, &limits).map_err(|e| e.to_string())?;
            if suite.claims.len() != 8 {
                return Err(format!("expected 8 claims, got {}", suite.claims.len()));
            }
            if !suite.all_pass() {
                let bad = suite
                    .claims
                    .iter()
                    .find(|c| c.status != ofm_core::report::Status::Pass)
                    .unwrap();
                return Err(format!(
                    "claim {} did not pass on a {}-element lattice",
                    bad.claim,
                    p.len()
                ));
            }
            claims += suite.claims.len();
            let (recovered, report) =
                lattice_from_algebra(&alg, &limits).map_err(|e| e.to_string())?;
            if !(recovered == *p && report.all_pass()) {
                return Err(format!("recovery failed on a {}-element lattice", p.len()));
            }
            if !roundtrip_check(p, &limits).map_err(|e| e.to_string())? {
                return Err(format!("roundtrip failed on a {}-element lattice", p.len()));
            }
        }
        Ok(format!("{} lattices, {claims} claims", lattices.len()))
    });
}

#[test]
fn criterion_4_correspondence_probe() {
    criterion("correspondence-probe", || {
        let limits = Limits::default();
        let mut spaces = t0_space_catalog(3).map_err(|e| e.to_string())?;
        spaces.push(sierpinski());
        spaces.push(point_space());
        spaces.push(discrete2());
        let mut with_algebra = 0usize;
        for s in &spaces {
            let found = structure_search(s, &limits).map_err(|e| e.to_string())?;
            let p = s.specialization_order().map_err(|e| e.to_string())?;
            let expected = if p.is_complete_lattice() && scott_space(&p) == *s {
                1
            } else {
                0
            };
            if found.len() != expected {
                return Err(format!(
                    "{}-point space: expected {expected} algebras, found {}",
                    s.len(),
                    found.len()
                ));
            }
            with_algebra += expected;
        }
        // the named examples, explicitly
        let sier = structure_search(&sierpinski(), &limits).map_err(|e| e.to_string())?;
        let pt = structure_search(&point_space(), &limits).map_err(|e| e.to_string())?;
        let disc = structure_search(&discrete2(), &limits).map_err(|e| e.to_string())?;
        if sier.len() != 1 || pt.len() != 1 || !disc.is_empty() {
            return Err("named example counts are wrong".into());
        }
        Ok(format!(
            "{} spaces probed, {with_algebra} carry an algebra",
            spaces.len()
        ))
    });
}

#[test]
fn criterion_5_way_below_and_scott_oracles() {
    criterion("finite-way-below-oracle", || {
        let posets = poset_catalog(5).map_err(|e| e.to_string())?;
        if posets.len() != 1 + 2 + 5 + 16 + 63 {
            return Err(format!("expected 87 posets, found {}", posets.len()));
        }
        let mut pairs = 0usize;
        for p in &posets {
            for x in 0..p.len() {
                for y in 0..p.len() {
                    if p.way_below(x, y) != p.leq(x, y) {
                        return Err(format!(
                            "way-below disagrees with the order at ({}, {})",
                            p.name(x),
                            p.name(y)
                        ));
                    }
                    pairs += 1;
                }
            }
            if p.scott_opens() != p.upper_sets() {
                return Err("Scott opens differ from the upper sets".into());
            }
        }
        Ok(format!("{} posets, {pairs} pairs", posets.len()))
    });
}

#[test]
fn criterion_6_mutation_sensitivity() {
    criterion("mutation-sensitivity", || {
        let limits = Limits::default();
        let mut algebras: Vec<PhiAlgebra> =
            lattice_algebras(&limits)?.into_iter().map(|(_, a)| a).collect();
        for s in t0_space_catalog(3).map_err(|e| e.to_string())? {
            algebras.extend(structure_search(&s, &limits).map_err(|e| e.to_string())?);
        }
        let mut mutations = 0usize;
        for alg in &algebras {
            let n = alg.space().len();
            if n < 2 {
                continue;
            }
            for i in 0..alg.structure().len() {
                for q in 0..n {
                    if q == alg.structure()[i] {
                        continue;
                    }
                    let mut corrupted = alg.structure().to_vec();
                    corrupted[i] = q;
                    let report = check_algebra_with(alg.filter_space(), &corrupted, &limits)
                        .map_err(|e| e.to_string())?;
                    if report.no_failures() {
                        return Err(format!(
                            "corruption of entry {i} to point {q} on a {n}-point space passed"
                        ));
                    }
                    mutations += 1;
                }
            }
        }
        Ok(format!(
            "{} algebras, {mutations} corruptions, all rejected",
            algebras.len()
        ))
    });
}

#[test]
fn criterion_7_meets_filter_and_principal_family_composites() {
    criterion("directed-family-composites", || {
        let limits = Limits::default();
        let mut spaces = t0_space_catalog(3).map_err(|e| e.to_string())?;
        for p in poset_catalog(5).map_err(|e| e.to_string())? {
            spaces.push(scott_space(&p));
        }
        let mut full_regime = 0usize;
        let mut chain_regime = 0usize;
        let mut families_checked = 0usize;
        let mut filters_checked = 0usize;
        for s in &spaces {
            let fs = FilterSpace::build(s, None, Some(limits.max_phi2))
                .map_err(|e| e.to_string())?;
            let k = fs.filters().len();
            let families = if k <= limits.directed_full_bound {
                full_regime += 1;
                directed_families(&fs)
            } else {
                chain_regime += 1;
                chains(&fs, limits.chain_budget).map_err(|e| e.to_string())?
            };
            for family in &families {
                let tilde = meets_filter(&fs, family).map_err(|e| e.to_string())?;
                let back = mu(&fs, &tilde).map_err(|e| e.to_string())?;
                let mut union = BitSet::empty(s.opens().len());
                for i in family.iter() {
                    union.union_with(fs.filters()[i].members());
                }
                if back.members() != &union {
                    return Err("multiplying the meets-filter missed the union".into());
                }
                if fs.filter_index(&union).is_none() {
                    return Err("a directed union of filters is not a filter".into());
                }
                families_checked += 1;
            }
            for v in fs.filters() {
                let family = principal_family(s, v);
                let all = BitSet::full(family.len());
                if directedness_witness(&family, &all).is_some() {
                    return Err("a principal family is not directed".into());
                }
                let mut union = BitSet::empty(s.opens().len());
                for f in &family {
                    union.union_with(f.members());
                }
                if &union != v.members() {
                    return Err("principal family does not union back to its filter".into());
                }
                filters_checked += 1;
            }
        }
        Ok(format!(
            "{} spaces ({full_regime} full regime, {chain_regime} chain regime), {families_checked} families, {filters_checked} filters",
            spaces.len()
        ))
    });
}

/// The composite suite report used by the determinism criterion: catalogs
/// with their self-checks, the monad-law reports of the two-point catalog,
/// and the theorem suites of the lattices with at most four elements.
fn full_suite_json(limits: &Limits) -> Result<String, String> {
    let mut parts = Vec::new();
    for kind in [CatalogKind::Poset, CatalogKind::Space] {
        let spec = CatalogSpec {
            kind,
            max_size: match kind {
                CatalogKind::Poset => 4,
                CatalogKind::Space => 3,
            },
            t0: true,
            complete_lattice: false,
            up_to_iso: true,
        };
        match kind {
            CatalogKind::Poset => {
                let cat = generate_poset_catalog(&spec).map_err(|e| e.to_string())?;
                let sizes: Vec<_> = cat.by_size.iter().map(|(n, v)| (n, v.len())).collect();
                parts.push(serde_json::json!({
                    "catalog": "poset",
                    "sizes": sizes,
                    "self_check": cat.self_check.ok,
                }));
            }
            CatalogKind::Space => {
                let cat = generate_space_catalog(&spec).map_err(|e| e.to_string())?;
                let sizes: Vec<_> = cat.by_size.iter().map(|(n, v)| (n, v.len())).collect();
                parts.push(serde_json::json!({
                    "catalog": "space",
                    "sizes": sizes,
                    "self_check": cat.self_check.ok,
                }));
            }
        }
    }
    let mut spaces = t0_space_catalog(2).map_err(|e| e.to_string())?;
    spaces.push(sierpinski());
    let maps = all_continuous_maps(&spaces);
    for s in &spaces {
        let mine: Vec<MapCandidate> = maps
            .iter()
            .filter(|m| &m.domain == s || &m.codomain == s)
            .cloned()
            .collect();
        let report = check_monad_laws(s, &mine, limits).map_err(|e| e.to_string())?;
        parts.push(serde_json::to_value(&report).map_err(|e| e.to_string())?);
        let filters = open_filters(s);
        parts.push(serde_json::to_value(ofm_core::io::filter_report(s, &filters, None))
            .map_err(|e| e.to_string())?);
    }
    for p in complete_lattice_catalog(4).map_err(|e| e.to_string())? {
        let alg = algebra_from_lattice(&p, limits).map_err(|e| e.to_string())?;
        let suite = check_theorem_suite(&alg, limits).map_err(|e| e.to_string())?;
        parts.push(serde_json::to_value(&suite).map_err(|e| e.to_string())?);
        parts.push(serde_json::to_value(ofm_core::io::algebra_to_file(&alg))
            .map_err(|e| e.to_string())?);
    }
    serde_json::to_string_pretty(&parts).map_err(|e| e.to_string())
}

#[test]
fn criterion_8_reports_are_byte_identical() {
    criterion("determinism", || {
        let limits = Limits::default();
        let first = full_suite_json(&limits)?;
        let second = full_suite_json(&limits)?;
        if first != second {
            return Err("consecutive runs produced different report bytes".into());
        }
        // all checks are single threaded by construction, so scheduling
        // cannot perturb the output; two full regenerations cover rerun
        // stability
        Ok(format!("{} report bytes reproduced", first.len()))
    });
}
