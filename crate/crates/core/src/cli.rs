//! Command-line driver: load the input files, run one routing variant and
//! render the report. Kept free of process concerns so it can be tested
//! directly; `main` only maps arguments onto [`RunConfig`] and prints.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::format::{parse_exceptions, parse_graph, NamedGraph};
use crate::graph::VertexId;
use crate::oracle::{AnyHit, Earliest, ExceptionStore, Oracle, PrefixSearch};
use crate::reference::ProductSearch;
use crate::router::{route_all, route_single, AllRoutes, RouteOutcome, RouterConfig, RunStats};
use crate::surgery::PruneMode;
use crate::weak::route_weak;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    All,
    Weak,
    Verify,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum OracleKind {
    #[default]
    Earliest,
    Any,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph_path: PathBuf,
    pub exceptions_path: Option<PathBuf>,
    pub source: String,
    pub target: Option<String>,
    pub mode: Mode,
    pub oracle: OracleKind,
    pub stats: bool,
    pub undirected: bool,
    pub prune: PruneMode,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        match (self.mode, &self.target) {
            (Mode::Single, None) => Err("route needs --target".into()),
            (Mode::Single, Some(_)) | (_, None) => Ok(()),
            (_, Some(_)) => Err("--target is only accepted by route".into()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Report {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

struct Instance {
    named: NamedGraph,
    store: ExceptionStore,
    source: VertexId,
    target: Option<VertexId>,
}

fn load(config: &RunConfig) -> Result<Instance, String> {
    config.validate()?;
    let read =
        |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let gtext = read(&config.graph_path)?;
    let named = parse_graph(&gtext, config.undirected)
        .map_err(|e| format!("{}: {e}", config.graph_path.display()))?;
    let store = match &config.exceptions_path {
        Some(p) => {
            parse_exceptions(&read(p)?, &named).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => ExceptionStore::empty(),
    };
    let lookup = |name: &str| {
        named
            .symbols
            .id(name)
            .ok_or_else(|| format!("unknown vertex `{name}`"))
    };
    let source = lookup(&config.source)?;
    let target = config.target.as_deref().map(lookup).transpose()?;
    Ok(Instance {
        named,
        store,
        source,
        target,
    })
}

/// Oracle handed to the strong-oracle router. An any-exception oracle is
/// wrapped so it answers with the earliest-ending exception.
fn strong_oracle<'a>(kind: OracleKind, store: &'a ExceptionStore) -> Box<dyn Oracle + 'a> {
    match kind {
        OracleKind::Earliest => Box::new(Earliest(store)),
        OracleKind::Any => Box::new(PrefixSearch(AnyHit(store))),
    }
}

fn weak_oracle<'a>(kind: OracleKind, store: &'a ExceptionStore) -> Box<dyn Oracle + 'a> {
    match kind {
        OracleKind::Earliest => Box::new(Earliest(store)),
        OracleKind::Any => Box::new(AnyHit(store)),
    }
}

pub fn run(config: &RunConfig) -> Report {
    let inst = match load(config) {
        Ok(i) => i,
        Err(e) => return Report::input_error(e),
    };
    let rc = RouterConfig {
        prune: config.prune,
    };
    let g = &inst.named.graph;
    let mut out = String::new();
    let code = match config.mode {
        Mode::Single => {
            let target = inst.target.expect("validated");
            let res = route_single(
                g,
                inst.source,
                target,
                strong_oracle(config.oracle, &inst.store),
                rc,
            );
            match res {
                Err(e) => return Report::input_error(e),
                Ok(o) => {
                    let code = if o.is_feasible() {
                        EXIT_OK
                    } else {
                        EXIT_INFEASIBLE
                    };
                    match &o.path {
                        Some(p) => {
                            let _ = writeln!(out, "PATH {}", inst.named.symbols.render(p));
                            let _ = writeln!(out, "LENGTH {}", o.length);
                        }
                        None => out.push_str("INFEASIBLE\n"),
                    }
                    if config.stats {
                        write_stats(&mut out, &o.stats);
                    }
                    code
                }
            }
        }
        Mode::All | Mode::Weak => {
            let res = if config.mode == Mode::All {
                route_all(
                    g,
                    inst.source,
                    strong_oracle(config.oracle, &inst.store),
                    rc,
                )
            } else {
                route_weak(g, inst.source, weak_oracle(config.oracle, &inst.store), rc)
            };
            match res {
                Err(e) => return Report::input_error(e),
                Ok(all) => {
                    write_all(&mut out, &inst.named, &all);
                    if config.stats {
                        write_stats(&mut out, &all.stats);
                    }
                    EXIT_OK
                }
            }
        }
        Mode::Verify => {
            let problems = verify(&inst, config.oracle, rc);
            if problems.is_empty() {
                out.push_str("MATCH\n");
                EXIT_OK
            } else {
                for p in &problems {
                    let _ = writeln!(out, "MISMATCH {p}");
                }
                EXIT_MISMATCH
            }
        }
    };
    Report {
        code,
        stdout: out,
        stderr: String::new(),
    }
}

fn write_stats(out: &mut String, s: &RunStats) {
    let _ = writeln!(out, "ITERATIONS {}", s.iterations);
    let _ = writeln!(out, "QUERIES {}", s.oracle_queries);
    let _ = writeln!(out, "REPLICAS {}", s.replicas_created);
}

fn write_all(out: &mut String, named: &NamedGraph, all: &AllRoutes) {
    for o in &all.outcomes {
        let name = named.symbols.name(o.target);
        match &o.path {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "TO {name} LENGTH {} PATH {}",
                    o.length,
                    named.symbols.render(p)
                );
            }
            None => {
                let _ = writeln!(out, "TO {name} INFEASIBLE");
            }
        }
    }
}

/// Checks one outcome against the reference distance: the length must match,
/// and a returned walk must exist in the input graph, have that length and
/// avoid every exception.
fn check_outcome(
    inst: &Instance,
    variant: &str,
    o: &RouteOutcome,
    want: f64,
    problems: &mut Vec<String>,
) {
    let name = inst.named.symbols.name(o.target);
    if o.length != want {
        problems.push(format!(
            "{variant} {name} router={} reference={want}",
            o.length
        ));
        return;
    }
    let Some(p) = &o.path else { return };
    let g = &inst.named.graph;
    match crate::graph::PathSeq::new(g, p.clone()) {
        Err(e) => problems.push(format!("{variant} {name} walk is not in the graph: {e}")),
        Ok(seq) if seq.length() != want => {
            problems.push(format!(
                "{variant} {name} walk length {} != {want}",
                seq.length()
            ));
        }
        Ok(_) if !inst.store.scan(p).is_clear() => {
            problems.push(format!("{variant} {name} walk contains an exception"));
        }
        Ok(_) => {}
    }
}

fn verify(inst: &Instance, kind: OracleKind, rc: RouterConfig) -> Vec<String> {
    let g = &inst.named.graph;
    let want =
        ProductSearch::run(g, inst.source, inst.store.automaton()).distances(g.vertex_count());
    let mut problems = Vec::new();
    for t in g.vertices() {
        match route_single(g, inst.source, t, strong_oracle(kind, &inst.store), rc) {
            Ok(o) => check_outcome(inst, "route", &o, want[t.index()], &mut problems),
            Err(e) => problems.push(format!("route {} error: {e}", inst.named.symbols.name(t))),
        }
    }
    let all = route_all(g, inst.source, strong_oracle(kind, &inst.store), rc);
    let weak = route_weak(g, inst.source, weak_oracle(kind, &inst.store), rc);
    for (variant, res) in [("route-all", all), ("route-weak", weak)] {
        match res {
            Ok(all) => {
                for o in &all.outcomes {
                    check_outcome(inst, variant, o, want[o.target.index()], &mut problems);
                }
            }
            Err(e) => problems.push(format!("{variant} error: {e}")),
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mode: Mode, target: Option<&str>) -> RunConfig {
        RunConfig {
            graph_path: "g".into(),
            exceptions_path: None,
            source: "s".into(),
            target: target.map(String::from),
            mode,
            oracle: OracleKind::Earliest,
            stats: false,
            undirected: false,
            prune: PruneMode::Freeze,
        }
    }

    #[test]
    fn target_iff_single() {
        assert!(config(Mode::Single, None).validate().is_err());
        assert!(config(Mode::Single, Some("t")).validate().is_ok());
        assert!(config(Mode::All, None).validate().is_ok());
        assert!(config(Mode::Verify, Some("t")).validate().is_err());
    }

    #[test]
    fn missing_target_exits_two() {
        let r = run(&config(Mode::Single, None));
        assert_eq!(r.code, EXIT_INPUT);
        assert!(r.stderr.contains("--target"));
    }

    #[test]
    fn missing_file_exits_two() {
        let r = run(&config(Mode::All, None));
        assert_eq!(r.code, EXIT_INPUT);
    }
}
