//! JSON file formats and parsing.
//!
//! All structured input and output is UTF-8 JSON. Poset files list elements
//! and order pairs (closed reflexively and transitively on load). Space
//! files give either the full open family or a base to generate from. Map
//! and algebra files may reference their spaces inline or by path; the pure
//! `parse_*` entry points never touch the filesystem, path resolution is a
//! separate step.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::PhiAlgebra;
use crate::bits::BitSet;
use crate::filter::{FilterSpace, OpenFilter};
use crate::order::{FinitePoset, PosetError};
use crate::topology::{ContinuousMap, FiniteSpace, SpaceError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("space file must give exactly one of `opens` or `base`")]
    OpensOrBase,
    #[error("cannot resolve space path `{0}` without a base directory")]
    NoBaseDir(String),
    #[error("algebra entry {index}: {reason}")]
    BadAlgebraEntry { index: usize, reason: String },
    #[error("algebra map must cover every filter exactly once: {missing} missing")]
    MissingFilterEntries { missing: usize },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Vec<String>>>,
}

/// A space given inline or as a path to another space file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: SpaceRef,
    pub codomain: SpaceRef,
    pub assignment: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraEntry {
    /// The filter, extensionally: each member open as a list of points.
    pub filter: Vec<Vec<String>>,
    pub point: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub space: SpaceRef,
    pub r: Vec<AlgebraEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterEntry {
    pub index: usize,
    pub members: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterReport {
    pub space: SpaceFile,
    pub filters: Vec<FilterEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<SpaceFile>,
}

pub fn parse_poset(bytes: &[u8]) -> Result<FinitePoset, IoError> {
    let file: PosetFile = serde_json::from_slice(bytes)?;
    Ok(FinitePoset::new(file.elements, &file.leq)?)
}

pub fn space_from_file(file: &SpaceFile) -> Result<FiniteSpace, IoError> {
    match (&file.opens, &file.base) {
        (Some(opens), None) => Ok(FiniteSpace::new(file.points.clone(), opens)?),
        (None, Some(base)) => Ok(FiniteSpace::from_base(file.points.clone(), base)?),
        _ => Err(IoError::OpensOrBase),
    }
}

pub fn parse_space(bytes: &[u8]) -> Result<FiniteSpace, IoError> {
    let file: SpaceFile = serde_json::from_slice(bytes)?;
    space_from_file(&file)
}

/// Parses a map file without resolving path references.
pub fn parse_map(bytes: &[u8]) -> Result<MapFile, IoError> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Parses an algebra file without resolving path references.
pub fn parse_algebra(bytes: &[u8]) -> Result<AlgebraFile, IoError> {
    Ok(serde_json::from_slice(bytes)?)
}

pub fn resolve_space(re: &SpaceRef, base_dir: Option<&Path>) -> Result<FiniteSpace, IoError> {
    match re {
        SpaceRef::Inline(file) => space_from_file(file),
        SpaceRef::Path(p) => {
            let dir = base_dir.ok_or_else(|| IoError::NoBaseDir(p.clone()))?;
            load_space(&dir.join(p))
        }
    }
}

pub fn load_poset(path: &Path) -> Result<FinitePoset, IoError> {
    parse_poset(&std::fs::read(path)?)
}

pub fn load_space(path: &Path) -> Result<FiniteSpace, IoError> {
    parse_space(&std::fs::read(path)?)
}

fn parent_dir(path: &Path) -> PathBuf {
    path.parent()
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Loads and verifies a continuous map; inline or sibling-path spaces.
pub fn load_map(path: &Path) -> Result<ContinuousMap, IoError> {
    let file = parse_map(&std::fs::read(path)?)?;
    let dir = parent_dir(path);
    let domain = resolve_space(&file.domain, Some(&dir))?;
    let codomain = resolve_space(&file.codomain, Some(&dir))?;
    Ok(ContinuousMap::new(domain, codomain, &file.assignment)?)
}

/// Loads a map file without requiring continuity; the law checker reports
/// the continuity verdict itself.
pub fn load_map_candidate(
    path: &Path,
) -> Result<(FiniteSpace, FiniteSpace, Vec<usize>), IoError> {
    let file = parse_map(&std::fs::read(path)?)?;
    let dir = parent_dir(path);
    let domain = resolve_space(&file.domain, Some(&dir))?;
    let codomain = resolve_space(&file.codomain, Some(&dir))?;
    let mut assignment = vec![usize::MAX; domain.len()];
    for (a, b) in &file.assignment {
        let i = domain
            .point_index(a)
            .ok_or_else(|| IoError::UnknownPoint(a.clone()))?;
        let j = codomain
            .point_index(b)
            .ok_or_else(|| IoError::UnknownPoint(b.clone()))?;
        if assignment[i] != usize::MAX {
            return Err(SpaceError::DuplicateAssignment(a.clone()).into());
        }
        assignment[i] = j;
    }
    if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
        return Err(SpaceError::MissingAssignment(domain.point_name(i).to_string()).into());
    }
    Ok((domain, codomain, assignment))
}

/// Matches the extensional filter entries of an algebra file against the
/// canonical filter enumeration, producing the structure map by index.
/// Every filter must be covered exactly once.
pub fn match_structure(fs: &FilterSpace, entries: &[AlgebraEntry]) -> Result<Vec<usize>, IoError> {
    let space = fs.base();
    let mut structure: Vec<Option<usize>> = vec![None; fs.filters().len()];
    for (index, entry) in entries.iter().enumerate() {
        let mut members = BitSet::empty(space.opens().len());
        for open in &entry.filter {
            let mut set = BitSet::empty(space.len());
            for p in open {
                let i = space
                    .point_index(p)
                    .ok_or_else(|| IoError::BadAlgebraEntry {
                        index,
                        reason: format!("unknown point `{p}` in a member open"),
                    })?;
                set.insert(i);
            }
            let o = space.open_index(&set).ok_or_else(|| IoError::BadAlgebraEntry {
                index,
                reason: format!("{open:?} is not an open of the space"),
            })?;
            members.insert(o);
        }
        let f = fs
            .filter_index(&members)
            .ok_or_else(|| IoError::BadAlgebraEntry {
                index,
                reason: "member family is not an open filter of the space".into(),
            })?;
        let target = space
            .point_index(&entry.point)
            .ok_or_else(|| IoError::BadAlgebraEntry {
                index,
                reason: format!("unknown point `{}`", entry.point),
            })?;
        if structure[f].is_some() {
            return Err(IoError::BadAlgebraEntry {
                index,
                reason: "filter already assigned by an earlier entry".into(),
            });
        }
        structure[f] = Some(target);
    }
    let missing = structure.iter().filter(|s| s.is_none()).count();
    if missing > 0 {
        return Err(IoError::MissingFilterEntries { missing });
    }
    Ok(structure.into_iter().map(|s| s.unwrap()).collect())
}

pub fn poset_to_file(p: &FinitePoset) -> PosetFile {
    let mut covers = p.covers();
    covers.sort();
    PosetFile {
        elements: p.elements().to_vec(),
        leq: covers
            .into_iter()
            .map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
            .collect(),
    }
}

pub fn space_to_file(s: &FiniteSpace) -> SpaceFile {
    SpaceFile {
        points: s.points().to_vec(),
        opens: Some(s.opens().iter().map(|o| s.open_names(o)).collect()),
        base: None,
    }
}

pub fn filter_report(
    space: &FiniteSpace,
    filters: &[OpenFilter],
    topology: Option<&FiniteSpace>,
) -> FilterReport {
    FilterReport {
        space: space_to_file(space),
        filters: filters
            .iter()
            .enumerate()
            .map(|(index, f)| FilterEntry {
                index,
                members: f.member_names(space),
            })
            .collect(),
        topology: topology.map(space_to_file),
    }
}

pub fn algebra_to_file(alg: &PhiAlgebra) -> AlgebraFile {
    let space = alg.space();
    AlgebraFile {
        space: SpaceRef::Inline(space_to_file(space)),
        r: alg
            .filter_space()
            .filters()
            .iter()
            .enumerate()
            .map(|(i, f)| AlgebraEntry {
                filter: f.member_names(space),
                point: space.point_name(alg.apply(i)).to_string(),
            })
            .collect(),
    }
}
