//! Exhaustive catalogs of small posets and finite spaces.
//!
//! Two independent generators back every catalog. Posets come primarily from
//! transitively closed relations below a fixed linear extension (every poset
//! admits one), cross-checked against a scan of all off-diagonal relations.
//! Spaces come primarily from a scan of all families of subsets filtered by
//! the topology axioms, cross-checked against up-set families of preorders.
//! Deduplication uses the lexicographically least relation or open-family
//! encoding over all carrier permutations, so catalog order is stable.

use std::collections::BTreeSet;

use crate::bits::BitSet;
use crate::limits::FeasibilityError;
use crate::order::FinitePoset;
use crate::topology::FiniteSpace;

/// Hard algorithmic caps; the CLI applies its own softer ceilings below
/// these.
pub const POSET_HARD_CAP: usize = 6;
pub const SPACE_HARD_CAP: usize = 4;
const POSET_SCAN_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogKind {
    Poset,
    Space,
}

#[derive(Debug, Clone)]
pub struct CatalogSpec {
    pub kind: CatalogKind,
    pub max_size: usize,
    pub t0: bool,
    pub complete_lattice: bool,
    pub up_to_iso: bool,
}

/// Result of the in-process comparison against the independent generator.
#[derive(Debug, Clone)]
pub struct SelfCheck {
    pub ok: bool,
    pub note: String,
}

#[derive(Debug)]
pub struct PosetCatalog {
    pub by_size: Vec<(usize, Vec<FinitePoset>)>,
    pub self_check: SelfCheck,
}

#[derive(Debug)]
pub struct SpaceCatalog {
    pub by_size: Vec<(usize, Vec<FiniteSpace>)>,
    pub self_check: SelfCheck,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute_rec(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute_rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_rec(items, k + 1, out);
        items.swap(k, i);
    }
}

// relations are stored as one u64 row per element, bit j of row i meaning
// i <= j

fn rows_transitive(rows: &[u64], n: usize) -> bool {
    for i in 0..n {
        let mut m = rows[i];
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            if rows[j] & !rows[i] != 0 {
                return false;
            }
        }
    }
    let _ = n;
    true
}

fn rows_antisymmetric(rows: &[u64], n: usize) -> bool {
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i] >> j & 1 == 1 && rows[j] >> i & 1 == 1 {
                return false;
            }
        }
    }
    true
}

fn relation_key(rows: &[u64], n: usize, perm: &[usize]) -> u64 {
    let mut key = 0u64;
    for i in 0..n {
        for j in 0..n {
            if rows[perm[i]] >> perm[j] & 1 == 1 {
                key |= 1 << (i * n + j);
            }
        }
    }
    key
}

fn canonical_relation_key(rows: &[u64], n: usize, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| relation_key(rows, n, p))
        .min()
        .expect("at least the identity permutation")
}

fn poset_from_relation_key(n: usize, key: u64) -> FinitePoset {
    let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let rows: Vec<BitSet> = (0..n)
        .map(|i| {
            BitSet::from_indices(n, (0..n).filter(|&j| key >> (i * n + j) & 1 == 1))
        })
        .collect();
    FinitePoset::from_up_rows(elements, rows)
}

/// Canonical relation encodings of all posets of size `n` up to isomorphism.
/// Primary generator: transitively closed relations below the index order.
pub fn poset_keys(n: usize) -> Result<BTreeSet<u64>, FeasibilityError> {
    if n > POSET_HARD_CAP {
        return Err(FeasibilityError::new("poset catalog size", n, POSET_HARD_CAP));
    }
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        if rows_transitive(&rows, n) {
            keys.insert(canonical_relation_key(&rows, n, &perms));
        }
    }
    Ok(keys)
}

/// Independent generator: scans every off-diagonal relation and keeps the
/// reflexive, transitive, antisymmetric ones.
pub fn poset_keys_full_scan(n: usize) -> Result<BTreeSet<u64>, FeasibilityError> {
    if n > POSET_SCAN_CAP {
        return Err(FeasibilityError::new("poset relation scan", n, POSET_SCAN_CAP));
    }
    let perms = permutations(n);
    let offdiag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1u64 << offdiag.len()) {
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (b, &(i, j)) in offdiag.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        if rows_antisymmetric(&rows, n) && rows_transitive(&rows, n) {
            keys.insert(canonical_relation_key(&rows, n, &perms));
        }
    }
    Ok(keys)
}

/// All labeled posets of size `n` as relation encodings under the identity
/// labeling, generated by permuting the canonical representatives.
pub fn labeled_poset_keys(n: usize) -> Result<BTreeSet<u64>, FeasibilityError> {
    let canonical = poset_keys(n)?;
    let perms = permutations(n);
    let mut keys = BTreeSet::new();
    for &key in &canonical {
        let rows: Vec<u64> = (0..n)
            .map(|i| {
                let mut r = 0u64;
                for j in 0..n {
                    if key >> (i * n + j) & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        for p in &perms {
            keys.insert(relation_key(&rows, n, p));
        }
    }
    Ok(keys)
}

/// Posets of sizes `1..=max_size` up to isomorphism, self-checked against the
/// full relation scan wherever the scan is feasible.
pub fn generate_poset_catalog(spec: &CatalogSpec) -> Result<PosetCatalog, FeasibilityError> {
    let mut by_size = Vec::new();
    let mut check_ok = true;
    let mut notes = Vec::new();
    for n in 1..=spec.max_size {
        let keys: Vec<u64> = if spec.up_to_iso {
            poset_keys(n)?.into_iter().collect()
        } else {
            labeled_poset_keys(n)?.into_iter().collect()
        };
        if n <= POSET_SCAN_CAP {
            let scan = poset_keys_full_scan(n)?;
            let primary = poset_keys(n)?;
            if scan != primary {
                check_ok = false;
                notes.push(format!("size {n}: generators disagree"));
            }
            if !spec.up_to_iso {
                // orbit counting gives the labeled total independently
                let perms = permutations(n);
                let mut labeled_total = 0usize;
                for &key in &primary {
                    let rows: Vec<u64> = (0..n)
                        .map(|i| {
                            let mut r = 0u64;
                            for j in 0..n {
                                if key >> (i * n + j) & 1 == 1 {
                                    r |= 1 << j;
                                }
                            }
                            r
                        })
                        .collect();
                    let stab = perms
                        .iter()
                        .filter(|p| relation_key(&rows, n, p) == key)
                        .count();
                    labeled_total += perms.len() / stab;
                }
                if labeled_total != keys.len() {
                    check_ok = false;
                    notes.push(format!("size {n}: labeled orbit count disagrees"));
                }
            }
        } else {
            notes.push(format!("size {n}: relation scan beyond its cap, not cross-checked"));
        }
        let mut posets: Vec<FinitePoset> = keys
            .into_iter()
            .map(|k| poset_from_relation_key(n, k))
            .collect();
        if spec.complete_lattice {
            posets.retain(|p| p.is_complete_lattice());
        }
        by_size.push((n, posets));
    }
    Ok(PosetCatalog {
        by_size,
        self_check: SelfCheck {
            ok: check_ok,
            note: if notes.is_empty() {
                "generators agree".into()
            } else {
                notes.join("; ")
            },
        },
    })
}

// spaces are encoded as a family bitmask over all subset masks of the points

fn family_is_topology(family: u64, n: usize) -> bool {
    let full = (1usize << n) - 1;
    if family & 1 == 0 || family >> full & 1 == 0 {
        return false;
    }
    let mut opens = Vec::new();
    for m in 0..=full {
        if family >> m & 1 == 1 {
            opens.push(m);
        }
    }
    for &a in &opens {
        for &b in &opens {
            if family >> (a | b) & 1 == 0 || family >> (a & b) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

fn family_is_t0(family: u64, n: usize) -> bool {
    let full = (1usize << n) - 1;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut separated = false;
            for m in 0..=full {
                if family >> m & 1 == 1 && (m >> i ^ m >> j) & 1 == 1 {
                    separated = true;
                    break;
                }
            }
            if !separated {
                return false;
            }
        }
    }
    true
}

fn permute_subset_mask(m: usize, perm: &[usize]) -> usize {
    let mut out = 0usize;
    for (p, &image) in perm.iter().enumerate() {
        if m >> p & 1 == 1 {
            out |= 1 << image;
        }
    }
    out
}

fn family_key(family: u64, n: usize, perm: &[usize]) -> u64 {
    let full = (1usize << n) - 1;
    let mut out = 0u64;
    for m in 0..=full {
        if family >> m & 1 == 1 {
            out |= 1 << permute_subset_mask(m, perm);
        }
    }
    out
}

fn canonical_family_key(family: u64, n: usize, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| family_key(family, n, p))
        .min()
        .expect("at least the identity permutation")
}

fn space_from_family(n: usize, family: u64) -> FiniteSpace {
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let full = (1usize << n) - 1;
    let opens: Vec<BitSet> = (0..=full)
        .filter(|&m| family >> m & 1 == 1)
        .map(|m| BitSet::from_mask(n, m as u64))
        .collect();
    FiniteSpace::from_open_sets(points, opens)
}

/// Canonical open-family encodings of all topologies on `n` points up to
/// homeomorphism. Primary generator: scan of every family of subsets.
pub fn space_keys(n: usize, t0: bool) -> Result<BTreeSet<u64>, FeasibilityError> {
    if n > SPACE_HARD_CAP {
        return Err(FeasibilityError::new("space catalog size", n, SPACE_HARD_CAP));
    }
    let perms = permutations(n);
    let mut keys = BTreeSet::new();
    let families = 1u128 << (1usize << n);
    let mut family = 0u128;
    while family < families {
        let f = family as u64;
        if family_is_topology(f, n) && (!t0 || family_is_t0(f, n)) {
            keys.insert(canonical_family_key(f, n, &perms));
        }
        family += 1;
    }
    Ok(keys)
}

/// Independent generator: up-set families of reflexive transitive relations.
pub fn space_keys_via_preorders(n: usize, t0: bool) -> Result<BTreeSet<u64>, FeasibilityError> {
    if n > SPACE_HARD_CAP {
        return Err(FeasibilityError::new("space preorder scan", n, SPACE_HARD_CAP));
    }
    let perms = permutations(n);
    let offdiag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let full = (1usize << n) - 1;
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1u64 << offdiag.len()) {
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (b, &(i, j)) in offdiag.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        if !rows_transitive(&rows, n) {
            continue;
        }
        if t0 && !rows_antisymmetric(&rows, n) {
            continue;
        }
        let mut family = 0u64;
        for m in 0..=full {
            let up_closed = (0..n)
                .all(|i| m >> i & 1 == 0 || rows[i] & !(m as u64) == 0);
            if up_closed {
                family |= 1 << m;
            }
        }
        keys.insert(canonical_family_key(family, n, &perms));
    }
    Ok(keys)
}

/// All labeled topologies of size `n`, generated by permuting the canonical
/// representatives.
pub fn labeled_space_keys(n: usize, t0: bool) -> Result<BTreeSet<u64>, FeasibilityError> {
    let canonical = space_keys(n, t0)?;
    let perms = permutations(n);
    let mut keys = BTreeSet::new();
    for &key in &canonical {
        for p in &perms {
            keys.insert(family_key(key, n, p));
        }
    }
    Ok(keys)
}

/// Spaces of sizes `1..=max_size`, self-checked against the preorder route.
pub fn generate_space_catalog(spec: &CatalogSpec) -> Result<SpaceCatalog, FeasibilityError> {
    let mut by_size = Vec::new();
    let mut check_ok = true;
    let mut notes = Vec::new();
    for n in 1..=spec.max_size {
        let keys: Vec<u64> = if spec.up_to_iso {
            space_keys(n, spec.t0)?.into_iter().collect()
        } else {
            labeled_space_keys(n, spec.t0)?.into_iter().collect()
        };
        let oracle = space_keys_via_preorders(n, spec.t0)?;
        let primary = space_keys(n, spec.t0)?;
        if oracle != primary {
            check_ok = false;
            notes.push(format!("size {n}: generators disagree"));
        }
        if !spec.up_to_iso {
            let perms = permutations(n);
            let mut labeled_total = 0usize;
            for &key in &primary {
                let stab = perms.iter().filter(|p| family_key(key, n, p) == key).count();
                labeled_total += perms.len() / stab;
            }
            if labeled_total != keys.len() {
                check_ok = false;
                notes.push(format!("size {n}: labeled orbit count disagrees"));
            }
        }
        let mut spaces: Vec<FiniteSpace> = keys
            .into_iter()
            .map(|k| space_from_family(n, k))
            .collect();
        if spec.complete_lattice {
            spaces.retain(|s| {
                s.specialization_order()
                    .map(|p| p.is_complete_lattice())
                    .unwrap_or(false)
            });
        }
        by_size.push((n, spaces));
    }
    Ok(SpaceCatalog {
        by_size,
        self_check: SelfCheck {
            ok: check_ok,
            note: if notes.is_empty() {
                "generators agree".into()
            } else {
                notes.join("; ")
            },
        },
    })
}

/// Convenience: all posets up to isomorphism with at most `max_size`
/// elements, flattened in catalog order.
pub fn poset_catalog(max_size: usize) -> Result<Vec<FinitePoset>, FeasibilityError> {
    let spec = CatalogSpec {
        kind: CatalogKind::Poset,
        max_size,
        t0: false,
        complete_lattice: false,
        up_to_iso: true,
    };
    let cat = generate_poset_catalog(&spec)?;
    Ok(cat.by_size.into_iter().flat_map(|(_, v)| v).collect())
}

/// All complete lattices up to isomorphism with at most `max_size` elements.
pub fn complete_lattice_catalog(max_size: usize) -> Result<Vec<FinitePoset>, FeasibilityError> {
    let spec = CatalogSpec {
        kind: CatalogKind::Poset,
        max_size,
        t0: false,
        complete_lattice: true,
        up_to_iso: true,
    };
    let cat = generate_poset_catalog(&spec)?;
    Ok(cat.by_size.into_iter().flat_map(|(_, v)| v).collect())
}

/// All T0 spaces up to homeomorphism with at most `max_size` points.
pub fn t0_space_catalog(max_size: usize) -> Result<Vec<FiniteSpace>, FeasibilityError> {
    let spec = CatalogSpec {
        kind: CatalogKind::Space,
        max_size,
        t0: true,
        complete_lattice: false,
        up_to_iso: true,
    };
    let cat = generate_space_catalog(&spec)?;
    Ok(cat.by_size.into_iter().flat_map(|(_, v)| v).collect())
}
