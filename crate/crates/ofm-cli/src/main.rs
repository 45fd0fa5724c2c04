//! `ofm`: command-line surface of the open filter monad laboratory.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical claim fails
//! (a witness is part of the report), 2 on input or feasibility errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ofm_core::algebra::{
    algebra_from_lattice, check_algebra_with, check_theorem_suite, lattice_from_algebra,
    structure_search, PhiAlgebra,
};
use ofm_core::catalog::{
    generate_poset_catalog, generate_space_catalog, CatalogKind, CatalogSpec, POSET_HARD_CAP,
    SPACE_HARD_CAP,
};
use ofm_core::dot::{filters_dot, hasse_dot, topology_dot};
use ofm_core::filter::{
    check_monad_laws, open_filters_with, FilterConvention, FilterSpace,
    MapCandidate, MonadLawReport,
};
use ofm_core::io::{
    algebra_to_file, filter_report, load_map_candidate, load_poset, load_space, match_structure,
    parse_algebra, poset_to_file, resolve_space, space_to_file,
};
use ofm_core::limits::Limits;
use ofm_core::order::FinitePoset;
use ofm_core::report::{Status, TheoremReport};
use ofm_core::topology::FiniteSpace;

#[derive(Parser)]
#[command(name = "ofm", version, about = "Open filter monad laboratory on finite carriers")]
struct Cli {
    /// Report format; JSON is the contract, text is best effort
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the open filters of a space
    Filters {
        space: PathBuf,
        /// Print only the number of filters
        #[arg(long)]
        count: bool,
        /// Also emit the generated filter-space topology
        #[arg(long, conflicts_with = "admit_empty_filter")]
        topology: bool,
        /// Admit spaces that are not T0
        #[arg(long)]
        allow_non_t0: bool,
        /// Count the empty family as a filter (exploration only)
        #[arg(long)]
        admit_empty_filter: bool,
    },
    /// Run the monad-law suite on a space, with optional naturality test maps
    CheckMonad {
        space: PathBuf,
        maps: Vec<PathBuf>,
    },
    /// Algebra constructions and checks
    Algebra {
        #[command(subcommand)]
        command: AlgebraCmd,
    },
    /// Generate catalogs of small posets or spaces
    Catalog {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        max_size: usize,
        /// Keep only T0 spaces
        #[arg(long)]
        t0: bool,
        /// Keep only carriers whose order is a complete lattice
        #[arg(long)]
        complete_lattice: bool,
        /// Deduplicate up to isomorphism (homeomorphism for spaces)
        #[arg(long)]
        up_to_iso: bool,
        /// Write one JSON file per instance into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Emit a DOT diagram
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: WhatArg,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Build the algebra of a complete lattice and emit its map file
    FromLattice {
        poset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a structure map file against the algebra laws and theorem suite
    Verify {
        space: PathBuf,
        map: PathBuf,
    },
    /// Exhaustively search for structure maps on a space
    Search {
        space: PathBuf,
    },
    /// Build the algebra of a lattice and recover the lattice again
    Roundtrip {
        poset: PathBuf,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Poset,
    Space,
}

#[derive(Copy, Clone, ValueEnum)]
enum WhatArg {
    Hasse,
    Filters,
    Topology,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command, format) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn env_usize(key: &str, default: usize) -> usize {
    std::env::var(key)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn load_poset_checked(path: &Path) -> Result<FinitePoset, String> {
    let p = load_poset(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cap = env_usize("OFM_MAX_ELEMENTS", 12);
    if p.len() > cap {
        return Err(format!(
            "feasibility exceeded: poset has {} elements (bound {cap}, override with OFM_MAX_ELEMENTS)",
            p.len()
        ));
    }
    Ok(p)
}

fn load_space_checked(path: &Path) -> Result<FiniteSpace, String> {
    let s = load_space(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cap = env_usize("OFM_MAX_POINTS", 10);
    if s.len() > cap {
        return Err(format!(
            "feasibility exceeded: space has {} points (bound {cap}, override with OFM_MAX_POINTS)",
            s.len()
        ));
    }
    Ok(s)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn run(command: Cmd, format: Format) -> Result<u8, String> {
    let limits = Limits::from_env();
    match command {
        Cmd::Filters {
            space,
            count,
            topology,
            allow_non_t0,
            admit_empty_filter,
        } => {
            let s = load_space_checked(&space)?;
            if !allow_non_t0 && !s.is_t0() {
                return Err("space is not T0 (pass --allow-non-t0 to explore anyway)".into());
            }
            let convention = FilterConvention {
                admit_empty: admit_empty_filter,
            };
            let filters = open_filters_with(&s, convention);
            if count {
                println!("{}", filters.len());
                return Ok(0);
            }
            let topo;
            let report = if topology {
                let fs = FilterSpace::build(&s, None, Some(limits.max_phi2))
                    .map_err(|e| e.to_string())?;
                topo = fs.topology().clone();
                filter_report(&s, &filters, Some(&topo))
            } else {
                filter_report(&s, &filters, None)
            };
            match format {
                Format::Json => print_json(&report)?,
                Format::Text => {
                    println!("{} filters", report.filters.len());
                    for f in &report.filters {
                        let members: Vec<String> = f
                            .members
                            .iter()
                            .map(|o| format!("{{{}}}", o.join(",")))
                            .collect();
                        println!("  [{}] {}", f.index, members.join(" "));
                    }
                    if let Some(t) = &report.topology {
                        println!("topology: {} opens", t.opens.as_ref().map_or(0, |o| o.len()));
                    }
                }
            }
            Ok(0)
        }
        Cmd::CheckMonad { space, maps } => {
            let s = load_space_checked(&space)?;
            let mut candidates = Vec::new();
            for path in &maps {
                let (domain, codomain, assignment) =
                    load_map_candidate(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let label = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                candidates.push(MapCandidate {
                    label,
                    domain,
                    codomain,
                    assignment,
                });
            }
            let report = check_monad_laws(&s, &candidates, &limits).map_err(|e| e.to_string())?;
            print_monad_report(&report, format)?;
            Ok(if report.no_failures() { 0 } else { 1 })
        }
        Cmd::Algebra { command } => run_algebra(command, format, &limits),
        Cmd::Catalog {
            kind,
            max_size,
            t0,
            complete_lattice,
            up_to_iso,
            out_dir,
        } => run_catalog(kind, max_size, t0, complete_lattice, up_to_iso, out_dir, format),
        Cmd::ExportDot { file, what } => {
            let dot = match what {
                WhatArg::Hasse => hasse_dot(&load_poset_checked(&file)?),
                WhatArg::Topology => topology_dot(&load_space_checked(&file)?),
                WhatArg::Filters => {
                    let s = load_space_checked(&file)?;
                    let fs = FilterSpace::build(&s, None, Some(limits.max_phi2))
                        .map_err(|e| e.to_string())?;
                    filters_dot(&fs)
                }
            };
            print!("{dot}");
            Ok(0)
        }
    }
}

fn run_algebra(command: AlgebraCmd, format: Format, limits: &Limits) -> Result<u8, String> {
    match command {
        AlgebraCmd::FromLattice { poset, out } => {
            let p = load_poset_checked(&poset)?;
            let alg = algebra_from_lattice(&p, limits).map_err(|e| e.to_string())?;
            let file = algebra_to_file(&alg);
            let json = serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?;
            match out {
                Some(path) => {
                    std::fs::write(&path, json + "\n").map_err(|e| e.to_string())?;
                }
                None => println!("{json}"),
            }
            Ok(0)
        }
        AlgebraCmd::Verify { space, map } => {
            let s = load_space_checked(&space)?;
            let bytes = std::fs::read(&map).map_err(|e| format!("{}: {e}", map.display()))?;
            let file = parse_algebra(&bytes).map_err(|e| e.to_string())?;
            let dir = map.parent().map(|p| p.to_path_buf());
            let declared = resolve_space(&file.space, dir.as_deref()).map_err(|e| e.to_string())?;
            if declared != s {
                return Err("the map file's space differs from the given space".into());
            }
            let fs = FilterSpace::build(&s, None, Some(limits.max_phi2))
                .map_err(|e| e.to_string())?;
            let structure = match_structure(&fs, &file.r).map_err(|e| e.to_string())?;
            let algebra_report =
                check_algebra_with(&fs, &structure, limits).map_err(|e| e.to_string())?;
            if !algebra_report.all_pass() {
                print_verify_reports(&algebra_report, None, format)?;
                return Ok(1);
            }
            let alg = PhiAlgebra::new(s, structure, limits).map_err(|e| e.to_string())?;
            let suite = check_theorem_suite(&alg, limits).map_err(|e| e.to_string())?;
            let ok = suite.all_pass();
            print_verify_reports(&algebra_report, Some(&suite), format)?;
            Ok(if ok { 0 } else { 1 })
        }
        AlgebraCmd::Search { space } => {
            let s = load_space_checked(&space)?;
            let found = structure_search(&s, limits).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let algebras: Vec<_> = found.iter().map(algebra_to_file).collect();
                    print_json(&serde_json::json!({
                        "algebras_found": found.len(),
                        "algebras": algebras,
                    }))?;
                }
                Format::Text => {
                    println!("{} algebras found", found.len());
                }
            }
            Ok(0)
        }
        AlgebraCmd::Roundtrip { poset } => {
            let p = load_poset_checked(&poset)?;
            let alg = algebra_from_lattice(&p, limits).map_err(|e| e.to_string())?;
            let (recovered, recovery) =
                lattice_from_algebra(&alg, limits).map_err(|e| e.to_string())?;
            let suite = check_theorem_suite(&alg, limits).map_err(|e| e.to_string())?;
            let identical = recovered == p;
            let ok = identical && recovery.all_pass() && suite.all_pass();
            match format {
                Format::Json => print_json(&serde_json::json!({
                    "roundtrip": ok,
                    "order_recovered_identically": identical,
                    "recovery": recovery,
                    "suite": suite,
                }))?,
                Format::Text => {
                    println!("roundtrip: {ok}");
                    print_theorem_text(&recovery);
                    print_theorem_text(&suite);
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_catalog(
    kind: KindArg,
    max_size: usize,
    t0: bool,
    complete_lattice: bool,
    up_to_iso: bool,
    out_dir: Option<PathBuf>,
    format: Format,
) -> Result<u8, String> {
    let (ceiling, hard) = match kind {
        KindArg::Poset => (env_usize("OFM_MAX_CATALOG_POSET", 5), POSET_HARD_CAP),
        KindArg::Space => (env_usize("OFM_MAX_CATALOG_SPACE", 3), SPACE_HARD_CAP),
    };
    let ceiling = ceiling.min(hard);
    if max_size == 0 || max_size > ceiling {
        return Err(format!(
            "feasibility exceeded: catalog size {max_size} outside 1..={ceiling}"
        ));
    }
    let spec = CatalogSpec {
        kind: match kind {
            KindArg::Poset => CatalogKind::Poset,
            KindArg::Space => CatalogKind::Space,
        },
        max_size,
        t0,
        complete_lattice,
        up_to_iso,
    };
    let mut sizes = Vec::new();
    let mut files = Vec::new();
    let self_check;
    match spec.kind {
        CatalogKind::Poset => {
            let cat = generate_poset_catalog(&spec).map_err(|e| e.to_string())?;
            self_check = cat.self_check.clone();
            for (n, posets) in &cat.by_size {
                sizes.push(serde_json::json!({ "size": n, "count": posets.len() }));
                if let Some(dir) = &out_dir {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                    for (i, p) in posets.iter().enumerate() {
                        let name = format!("poset_{n}_{i:03}.json");
                        let body = serde_json::to_string_pretty(&poset_to_file(p))
                            .map_err(|e| e.to_string())?;
                        std::fs::write(dir.join(&name), body + "\n")
                            .map_err(|e| e.to_string())?;
                        files.push(name);
                    }
                }
            }
        }
        CatalogKind::Space => {
            let cat = generate_space_catalog(&spec).map_err(|e| e.to_string())?;
            self_check = cat.self_check.clone();
            for (n, spaces) in &cat.by_size {
                sizes.push(serde_json::json!({ "size": n, "count": spaces.len() }));
                if let Some(dir) = &out_dir {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                    for (i, s) in spaces.iter().enumerate() {
                        let name = format!("space_{n}_{i:03}.json");
                        let body = serde_json::to_string_pretty(&space_to_file(s))
                            .map_err(|e| e.to_string())?;
                        std::fs::write(dir.join(&name), body + "\n")
                            .map_err(|e| e.to_string())?;
                        files.push(name);
                    }
                }
            }
        }
    }
    let total: usize = sizes
        .iter()
        .map(|s| s["count"].as_u64().unwrap_or(0) as usize)
        .sum();
    match format {
        Format::Json => print_json(&serde_json::json!({
            "kind": match kind { KindArg::Poset => "poset", KindArg::Space => "space" },
            "max_size": max_size,
            "t0": t0,
            "complete_lattice": complete_lattice,
            "up_to_iso": up_to_iso,
            "sizes": sizes,
            "total": total,
            "self_check": { "ok": self_check.ok, "note": self_check.note },
            "files": files,
        }))?,
        Format::Text => {
            for s in &sizes {
                println!("size {}: {}", s["size"], s["count"]);
            }
            println!("total: {total}");
            println!(
                "self-check: {} ({})",
                if self_check.ok { "ok" } else { "MISMATCH" },
                self_check.note
            );
        }
    }
    Ok(if self_check.ok { 0 } else { 1 })
}

fn print_monad_report(report: &MonadLawReport, format: Format) -> Result<(), String> {
    match format {
        Format::Json => print_json(report),
        Format::Text => {
            println!(
                "carriers: {} points, {} opens, {} filters, {} second, {} third",
                report.sizes.points,
                report.sizes.opens,
                report.sizes.filters,
                report.sizes.phi2,
                report.sizes.phi3
            );
            for law in &report.laws {
                println!("{} {}", status_str(law.status), law.law);
                if let Some(w) = &law.witness {
                    println!("    witness: {w}");
                }
            }
            Ok(())
        }
    }
}

fn print_verify_reports(
    algebra: &TheoremReport,
    suite: Option<&TheoremReport>,
    format: Format,
) -> Result<(), String> {
    match format {
        Format::Json => print_json(&serde_json::json!({
            "algebra": algebra,
            "suite": suite,
        })),
        Format::Text => {
            print_theorem_text(algebra);
            if let Some(s) = suite {
                print_theorem_text(s);
            }
            Ok(())
        }
    }
}

fn print_theorem_text(report: &TheoremReport) {
    for c in &report.claims {
        println!("{} {}", status_str(c.status), c.claim);
        if let Some(w) = &c.witness {
            println!("    witness: {w}");
        }
        if let Some(r) = &c.reason {
            println!("    reason: {r}");
        }
    }
}

fn status_str(status: Status) -> &'static str {
    match status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    }
}
