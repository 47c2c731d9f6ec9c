//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 verified negative result, 2 usage or input
//! error, 3 budget or limit exhausted.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::cert::{check_certificate, Certificate, GraphSpec};
use crate::error::{Error, Result};
use crate::gap::{gap_exact, gap_formula, psi, psi_ratio, qs_exact, qs_exhaustive, qv_exact, GapFormula, GapOptions, QReport};
use crate::gf::FieldSpec;
use crate::graph::{
    chromatic_number, find_homomorphism, hyper_chromatic_number, hyper_chromatic_number_direct, ChromaticResult,
    HomResult, UGraph, UGraphJson, DEFAULT_SEARCH_BUDGET,
};
use crate::ic::{ic_bound, ic_is_valid, ic_search, IndependentConfiguration};
use crate::lincode::{extend_solution, search_solution, verify_solution, CodeJson, NetworkCode, SearchOutcome};
use crate::mds::{find_codebook, rs_code, Codebook, LinearCode, MAX_CODEBOOK_SEARCH};
use crate::network::{
    butterfly, combination_with_limit, extend_messages, kneser_with_limits, parallelize, KneserMode, KneserNetwork,
    Network, DEFAULT_TERMINAL_CANDIDATE_LIMIT,
};
use crate::qkneser::{canonical_coloring, known_chromatic_number, qkneser_hyper_with_limits, qkneser_with_limit};
use crate::skeleton::{reverse_skeleton, skeleton};
use crate::subspace::{Subspace, DEFAULT_SUBSPACE_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "netgap", version, about = "Scalar and vector linear network coding toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for each search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Largest subspace enumeration allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSPACE_LIMIT)]
    max_subspaces: u128,
    /// Wall-clock limit for q_s / q_v candidate scans.
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
    /// Reserved; all algorithms are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for certificate files.
    #[arg(long, global = true, default_value = ".")]
    cert_dir: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a network and print it as JSON (or DOT).
    #[command(subcommand)]
    Build(BuildCmd),
    /// Edge classes and skeleton graph of a network.
    Skeleton {
        #[command(flatten)]
        net: NetSource,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        dimacs: bool,
    },
    /// Exact chromatic number with certificates.
    Chi {
        #[command(flatten)]
        graph: GraphSource,
        /// Hypergraphs: search hyperedge colorings directly.
        #[arg(long)]
        direct: bool,
    },
    /// Search a graph homomorphism. Graphs: qkneser:Q:N:M, complete:N or a file.
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Canonical coloring of qK_{n:m}.
    Coloring {
        #[arg(long, num_args = 3, value_names = ["Q", "N", "M"], required = true)]
        qkneser: Vec<u64>,
    },
    /// Search a (q, t)-linear solution.
    Solve {
        #[command(flatten)]
        net: NetSource,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Write the code JSON here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a network code.
    Verify {
        #[command(flatten)]
        net: NetSource,
        #[arg(long)]
        code: PathBuf,
    },
    /// Classical codes and combination networks.
    #[command(subcommand)]
    Mds(MdsCmd),
    /// Independent configurations.
    #[command(subcommand)]
    Ic(IcCmd),
    /// Smallest prime power at least N (or N/DEN).
    Psi {
        n: u64,
        #[arg(long)]
        den: Option<u64>,
    },
    /// Smallest scalar field size.
    Qs {
        #[command(flatten)]
        net: NetSource,
        /// Skip the skeleton method and scan solutions directly.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Smallest vector alphabet size q^t.
    Qv {
        #[command(flatten)]
        net: NetSource,
        #[arg(long)]
        max_value: Option<u64>,
    },
    /// q_s, q_v and their difference; or a closed-form bound with --formula.
    Gap {
        #[command(flatten)]
        net: NetSource,
        /// kneser-exact, minimal-upper, kneser-lower, many-messages or combination.
        #[arg(long, requires = "params")]
        formula: Option<String>,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<u64>>,
    },
    /// CSV table of gap(K_{q,t;2}).
    GapTable {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
        t: Vec<usize>,
    },
    /// Re-verify a certificate file.
    CheckCert { path: PathBuf },
}

#[derive(Args, Debug, Default)]
#[group(multiple = false)]
struct NetSource {
    /// Network JSON file.
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long, num_args = 3, value_names = ["Q", "T", "H"])]
    kneser: Option<Vec<u64>>,
    #[arg(long, num_args = 3, value_names = ["H", "R", "S"])]
    comb: Option<Vec<usize>>,
    #[arg(long)]
    butterfly: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    #[arg(long, num_args = 3, value_names = ["Q", "N", "M"])]
    qkneser: Option<Vec<u64>>,
    /// The hypergraph qK^h_{ht:t}.
    #[arg(long, num_args = 3, value_names = ["Q", "T", "H"])]
    hyper: Option<Vec<u64>>,
    /// Graph file (JSON or DIMACS).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Skeleton of a network file.
    #[arg(long)]
    skeleton_of: Option<PathBuf>,
    #[arg(long)]
    complete: Option<usize>,
}

#[derive(Args, Debug)]
struct BuildOut {
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    Butterfly {
        #[command(flatten)]
        out: BuildOut,
    },
    /// Combination network N_{h,r,s}.
    Comb {
        h: usize,
        r: usize,
        s: usize,
        #[command(flatten)]
        out: BuildOut,
    },
    /// Kneser network K_{q,t;h}.
    Kneser {
        q: u64,
        t: usize,
        h: usize,
        /// Only report sizes; do not list terminals.
        #[arg(long)]
        implicit: bool,
        #[command(flatten)]
        out: BuildOut,
    },
    /// Network whose skeleton is the given graph.
    FromGraph {
        graph: PathBuf,
        #[command(flatten)]
        out: BuildOut,
    },
    /// Raise the number of messages to H.
    Extend {
        network: PathBuf,
        h: usize,
        /// Lift this solution as well.
        #[arg(long, requires = "code_out")]
        code: Option<PathBuf>,
        #[arg(long)]
        code_out: Option<PathBuf>,
        #[command(flatten)]
        out: BuildOut,
    },
    /// Replace every edge by M parallel edges.
    Parallelize {
        network: PathBuf,
        m: usize,
        #[command(flatten)]
        out: BuildOut,
    },
}

#[derive(Subcommand, Debug)]
enum MdsCmd {
    /// Reed-Solomon generator with its minimum distance.
    Rs { q: u64, r: usize, h: usize },
    /// Minimum distance of a code file: {"q": .., "generator": [[..]]} or {"q": .., "words": [[..]]}.
    Distance { path: PathBuf },
    /// Is N_{h,r,s} solvable over F_q?
    Check { h: usize, r: usize, s: usize, q: u64 },
}

#[derive(Subcommand, Debug)]
enum IcCmd {
    /// Largest (t; h, alpha)_q configuration.
    Search {
        q: u64,
        t: usize,
        h: usize,
        alpha: usize,
        /// Stop once this many members are found.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Validate an IC certificate file.
    Check {
        path: PathBuf,
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// Size ceiling for (t; h, alpha)_q configurations.
    Bound { q: u64, t: usize, h: usize, alpha: usize },
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Output goes to stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        g: cli.global,
        out: String::new(),
    };
    let code = match dispatch(&mut ctx, cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::LimitExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    };
    let _ = out.write_all(ctx.out.as_bytes());
    code
}

struct Ctx {
    g: Global,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    /// Human text, or the JSON value under `--json`.
    fn emit(&mut self, human: impl AsRef<str>, value: Json) -> Result<()> {
        if self.g.json {
            let s = serde_json::to_string_pretty(&value)?;
            self.line(s);
        } else {
            self.line(human);
        }
        Ok(())
    }

    fn write_cert(&self, name: &str, cert: &Certificate) -> Result<PathBuf> {
        fs::create_dir_all(&self.g.cert_dir)?;
        let path = self.g.cert_dir.join(format!("{name}.{}.json", cert.kind()));
        fs::write(&path, cert.to_json_string()?)?;
        Ok(path)
    }

    fn gap_options(&self) -> GapOptions {
        GapOptions {
            budget: self.g.budget,
            max_subspaces: self.g.max_subspaces,
            deadline: self.g.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn write_or_print(ctx: &mut Ctx, output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => ctx.line(text.trim_end()),
    }
    Ok(())
}

fn load_network_file(path: &Path) -> Result<Network> {
    Network::from_json_str(&read(path)?)
}

fn load_network(ctx: &Ctx, src: &NetSource) -> Result<(String, Network)> {
    if let Some(p) = &src.network {
        let name = p.file_stem().map_or("network".into(), |s| s.to_string_lossy().into_owned());
        return Ok((name, load_network_file(p)?));
    }
    if let Some(v) = &src.kneser {
        let (q, t, h) = (v[0], v[1] as usize, v[2] as usize);
        let net = build_kneser(ctx, q, t, h, KneserMode::Materialized)?
            .into_network()
            .ok_or_else(|| usage("Kneser network too large to materialize"))?;
        return Ok((format!("kneser-{q}-{t}-{h}"), net));
    }
    if let Some(v) = &src.comb {
        let net = combination_with_limit(v[0], v[1], v[2], DEFAULT_TERMINAL_CANDIDATE_LIMIT)?;
        return Ok((format!("comb-{}-{}-{}", v[0], v[1], v[2]), net));
    }
    if src.butterfly {
        return Ok(("butterfly".into(), butterfly()));
    }
    Err(usage("choose a network: --network FILE, --kneser Q T H, --comb H R S or --butterfly"))
}

fn build_kneser(ctx: &Ctx, q: u64, t: usize, h: usize, mode: KneserMode) -> Result<KneserNetwork> {
    kneser_with_limits(q, t, h, mode, ctx.g.max_subspaces, DEFAULT_TERMINAL_CANDIDATE_LIMIT)
}

fn parse_graph_text(text: &str) -> Result<UGraph> {
    if text.trim_start().starts_with('{') {
        let j: UGraphJson = serde_json::from_str(text)?;
        return UGraph::from_json(&j);
    }
    let mut g: Option<UGraph> = None;
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("p") => {
                let n: usize = it
                    .nth(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| usage("bad DIMACS problem line"))?;
                g = Some(UGraph::new(n));
            }
            Some("e") => {
                let g = g.as_mut().ok_or_else(|| usage("DIMACS edge before problem line"))?;
                let mut num = || -> Result<usize> {
                    it.next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| usage("bad DIMACS edge line"))
                };
                let (u, v) = (num()? - 1, num()? - 1);
                if u >= g.len() || v >= g.len() {
                    return Err(usage("DIMACS edge names an unknown vertex"));
                }
                if !g.has_edge(u, v) {
                    g.add_edge(u, v)?;
                }
            }
            _ => {}
        }
    }
    g.ok_or_else(|| usage("graph file has neither JSON nor a DIMACS problem line"))
}

/// Graph plus a description the certificate checker can rebuild.
fn load_graph_spec(ctx: &Ctx, spec: &str) -> Result<(UGraph, GraphSpec)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = |k: usize| -> Result<Vec<u64>> {
        if parts.len() != k + 1 {
            return Err(usage(format!("expected {} numbers in {spec}", k)));
        }
        parts[1..]
            .iter()
            .map(|s| s.parse::<u64>().map_err(|_| usage(format!("bad number in {spec}"))))
            .collect()
    };
    match parts[0] {
        "qkneser" => {
            let v = nums(3)?;
            let (q, n, m) = (v[0], v[1] as usize, v[2] as usize);
            Ok((qkneser_with_limit(q, n, m, ctx.g.max_subspaces)?, GraphSpec::Qkneser { q, n, m }))
        }
        "complete" => {
            let n = nums(1)?[0] as usize;
            Ok((UGraph::complete(n), GraphSpec::Complete { n }))
        }
        _ => {
            let g = parse_graph_text(&read(Path::new(spec))?)?;
            let j = g.to_json();
            Ok((g, GraphSpec::Explicit(j)))
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Result<i32> {
    match cmd {
        Command::Build(b) => cmd_build(ctx, b),
        Command::Skeleton { net, dot, dimacs } => cmd_skeleton(ctx, &net, dot, dimacs),
        Command::Chi { graph, direct } => cmd_chi(ctx, &graph, direct),
        Command::Hom { from, to } => cmd_hom(ctx, &from, &to),
        Command::Coloring { qkneser } => cmd_coloring(ctx, qkneser[0], qkneser[1] as usize, qkneser[2] as usize),
        Command::Solve { net, q, t, output } => cmd_solve(ctx, &net, q, t, &output),
        Command::Verify { net, code } => cmd_verify(ctx, &net, &code),
        Command::Mds(m) => cmd_mds(ctx, m),
        Command::Ic(i) => cmd_ic(ctx, i),
        Command::Psi { n, den } => {
            let v = match den {
                Some(d) => psi_ratio(n, d)?,
                None => psi(n)?,
            };
            ctx.emit(v.to_string(), json!({ "psi": v }))?;
            Ok(EXIT_OK)
        }
        Command::Qs { net, exhaustive } => {
            let (name, n) = load_network(ctx, &net)?;
            let opts = ctx.gap_options();
            let r = if exhaustive {
                qs_exhaustive(&n, &opts)?
            } else {
                qs_exact(&n, &opts)?
            };
            report_q(ctx, "q_s", &format!("qs-{name}"), &r)
        }
        Command::Qv { net, max_value } => {
            let (name, n) = load_network(ctx, &net)?;
            let r = qv_exact(&n, &ctx.gap_options(), max_value)?;
            report_q(ctx, "q_v", &format!("qv-{name}"), &r)
        }
        Command::Gap { net, formula, params } => match formula {
            Some(f) => cmd_formula(ctx, &f, &params.unwrap_or_default()),
            None => cmd_gap(ctx, &net),
        },
        Command::GapTable { q, t } => cmd_gap_table(ctx, &q, &t),
        Command::CheckCert { path } => {
            let c = Certificate::from_json_str(&read(&path)?)?;
            let r = check_certificate(&c)?;
            let word = if r.ok { "ok" } else { "FAIL" };
            ctx.emit(
                format!("{word} ({}): {}", c.kind(), r.summary),
                json!({ "ok": r.ok, "kind": c.kind(), "summary": r.summary }),
            )?;
            Ok(if r.ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn emit_network(ctx: &mut Ctx, net: &Network, out: &BuildOut) -> Result<i32> {
    let text = if out.dot { net.to_dot() } else { net.to_json_string() };
    write_or_print(ctx, &out.output, &text)?;
    Ok(EXIT_OK)
}

fn cmd_build(ctx: &mut Ctx, b: BuildCmd) -> Result<i32> {
    match b {
        BuildCmd::Butterfly { out } => emit_network(ctx, &butterfly(), &out),
        BuildCmd::Comb { h, r, s, out } => {
            emit_network(ctx, &combination_with_limit(h, r, s, DEFAULT_TERMINAL_CANDIDATE_LIMIT)?, &out)
        }
        BuildCmd::Kneser {
            q,
            t,
            h,
            implicit,
            out,
        } => {
            let mode = if implicit {
                KneserMode::Implicit
            } else {
                KneserMode::Materialized
            };
            match build_kneser(ctx, q, t, h, mode)? {
                KneserNetwork::Materialized(n) => emit_network(ctx, &n, &out),
                KneserNetwork::Implicit(k) => {
                    let terminals = k.terminal_sets().map(|it| it.count()).ok();
                    let shown = terminals.map_or("not enumerable".into(), |c| c.to_string());
                    ctx.emit(
                        format!("K_{{{q},{t};{h}}}: {} middle nodes, {shown} terminals", k.middle_count),
                        json!({ "q": q, "t": t, "h": h, "middle": k.middle_count as u64, "terminals": terminals }),
                    )?;
                    Ok(EXIT_OK)
                }
            }
        }
        BuildCmd::FromGraph { graph, out } => {
            let g = parse_graph_text(&read(&graph)?)?;
            emit_network(ctx, &reverse_skeleton(&g)?, &out)
        }
        BuildCmd::Extend {
            network,
            h,
            code,
            code_out,
            out,
        } => {
            let net = load_network_file(&network)?;
            match (code, code_out) {
                (Some(c), Some(co)) => {
                    let j: CodeJson = serde_json::from_str(&read(&c)?)?;
                    let (ext, lifted) = extend_solution(&net, &NetworkCode::from_json(&j)?, h)?;
                    fs::write(co, serde_json::to_string_pretty(&lifted.to_json())?)?;
                    emit_network(ctx, &ext, &out)
                }
                _ => emit_network(ctx, &extend_messages(&net, h)?, &out),
            }
        }
        BuildCmd::Parallelize { network, m, out } => {
            emit_network(ctx, &parallelize(&load_network_file(&network)?, m)?, &out)
        }
    }
}

fn cmd_skeleton(ctx: &mut Ctx, src: &NetSource, dot: bool, dimacs: bool) -> Result<i32> {
    let (_, net) = load_network(ctx, src)?;
    let sk = skeleton(&net);
    if dot {
        ctx.line(sk.graph.to_dot().trim_end());
        return Ok(EXIT_OK);
    }
    if dimacs {
        ctx.line(sk.graph.to_dimacs().trim_end());
        return Ok(EXIT_OK);
    }
    let mut human = format!("{} classes, {} skeleton edges\n", sk.classes.len(), sk.graph.edge_count());
    for (id, members) in &sk.classes {
        let list: Vec<String> = members.iter().map(|e| format!("e{}", e.0)).collect();
        let _ = writeln!(human, "T(e{}) = {{{}}}", id.0, list.join(", "));
    }
    let classes: Vec<Json> = sk
        .classes
        .iter()
        .map(|(id, m)| json!({ "id": id.0, "edges": m.iter().map(|e| e.0).collect::<Vec<_>>() }))
        .collect();
    ctx.emit(human.trim_end(), json!({ "classes": classes, "graph": sk.graph.to_json() }))?;
    Ok(EXIT_OK)
}

fn chi_summary(ctx: &mut Ctx, r: &ChromaticResult, known: Option<u128>, paths: &[PathBuf]) -> Result<i32> {
    let mut human = match r.value() {
        Some(v) => format!("chi = {v}"),
        None => format!("chi in [{}, {}] (budget exhausted)", r.lower, r.upper),
    };
    let _ = write!(human, "\nclique: {}, search nodes: {}", r.clique.len(), r.expansions);
    if let Some(k) = known {
        let _ = write!(human, "\nknown value: {k}");
    }
    for p in paths {
        let _ = write!(human, "\ncertificate: {}", p.display());
    }
    let certs: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
    ctx.emit(
        human,
        json!({
            "chi": r.value(), "lower": r.lower, "upper": r.upper, "exact": r.exact,
            "clique": r.clique, "expansions": r.expansions, "known": known.map(|k| k as u64),
            "certificates": certs,
        }),
    )?;
    Ok(if r.exact { EXIT_OK } else { EXIT_BUDGET })
}

fn cmd_chi(ctx: &mut Ctx, src: &GraphSource, direct: bool) -> Result<i32> {
    if let Some(v) = &src.hyper {
        let (q, t, h) = (v[0], v[1] as usize, v[2] as usize);
        let hg = qkneser_hyper_with_limits(q, t, h, ctx.g.max_subspaces, DEFAULT_TERMINAL_CANDIDATE_LIMIT)?;
        let r = if direct {
            hyper_chromatic_number_direct(&hg, ctx.g.budget)
        } else {
            hyper_chromatic_number(&hg, ctx.g.budget)
        };
        let cert = Certificate::HyperColoring {
            q,
            t,
            h,
            colors: r.witness.colors.clone(),
        };
        let p = ctx.write_cert(&format!("chi-hyper-{q}-{t}-{h}"), &cert)?;
        return chi_summary(ctx, &r, None, &[p]);
    }
    let (g, spec, name, known) = if let Some(v) = &src.qkneser {
        let (q, n, m) = (v[0], v[1] as usize, v[2] as usize);
        (
            qkneser_with_limit(q, n, m, ctx.g.max_subspaces)?,
            GraphSpec::Qkneser { q, n, m },
            format!("chi-qkneser-{q}-{n}-{m}"),
            known_chromatic_number(q, n, m),
        )
    } else if let Some(n) = src.complete {
        (UGraph::complete(n), GraphSpec::Complete { n }, format!("chi-complete-{n}"), None)
    } else if let Some(p) = &src.graph {
        let g = parse_graph_text(&read(p)?)?;
        let j = g.to_json();
        (g, GraphSpec::Explicit(j), "chi-graph".into(), None)
    } else if let Some(p) = &src.skeleton_of {
        let g = skeleton(&load_network_file(p)?).graph;
        let j = g.to_json();
        (g, GraphSpec::Explicit(j), "chi-skeleton".into(), None)
    } else {
        return Err(usage("choose a graph"));
    };
    let r = chromatic_number(&g, ctx.g.budget);
    let coloring = Certificate::Coloring {
        graph: spec.clone(),
        colors: r.witness.colors.clone(),
    };
    let clique = Certificate::Clique {
        graph: spec,
        vertices: r.clique.clone(),
    };
    let paths = vec![ctx.write_cert(&name, &coloring)?, ctx.write_cert(&name, &clique)?];
    chi_summary(ctx, &r, known, &paths)
}

fn cmd_hom(ctx: &mut Ctx, from: &str, to: &str) -> Result<i32> {
    let (g1, s1) = load_graph_spec(ctx, from)?;
    let (g2, s2) = load_graph_spec(ctx, to)?;
    let (r, used) = find_homomorphism(&g1, &g2, ctx.g.budget);
    match r {
        HomResult::Found(map) => {
            let cert = Certificate::Homomorphism {
                source: s1,
                target: s2,
                map: map.clone(),
            };
            let p = ctx.write_cert("hom", &cert)?;
            ctx.emit(
                format!("homomorphism found ({used} nodes)\ncertificate: {}", p.display()),
                json!({ "result": "found", "map": map, "expansions": used, "certificate": p }),
            )?;
            Ok(EXIT_OK)
        }
        HomResult::None => {
            ctx.emit(
                format!("no homomorphism (complete search, {used} nodes)"),
                json!({ "result": "none", "expansions": used }),
            )?;
            Ok(EXIT_NEGATIVE)
        }
        HomResult::Unknown => {
            ctx.emit(
                format!("undecided: budget exhausted after {used} nodes"),
                json!({ "result": "unknown", "expansions": used }),
            )?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_coloring(ctx: &mut Ctx, q: u64, n: usize, m: usize) -> Result<i32> {
    let c = canonical_coloring(q, n, m)?;
    let g = qkneser_with_limit(q, n, m, ctx.g.max_subspaces)?;
    let proper = c.is_proper(&g);
    let cert = Certificate::Coloring {
        graph: GraphSpec::Qkneser { q, n, m },
        colors: c.colors.clone(),
    };
    let p = ctx.write_cert(&format!("coloring-{q}-{n}-{m}"), &cert)?;
    ctx.emit(
        format!(
            "{} colors on {} vertices, proper: {proper}\ncertificate: {}",
            c.distinct_colors(),
            g.len(),
            p.display()
        ),
        json!({ "colors": c.distinct_colors(), "vertices": g.len(), "proper": proper, "certificate": p }),
    )?;
    Ok(if proper { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_solve(ctx: &mut Ctx, src: &NetSource, q: u64, t: usize, output: &Option<PathBuf>) -> Result<i32> {
    let (name, net) = load_network(ctx, src)?;
    let field = FieldSpec::from_order(q)?;
    let (outcome, stats) = search_solution(&net, &field, t, ctx.g.budget)?;
    match outcome {
        SearchOutcome::Found(code) => {
            let text = serde_json::to_string_pretty(&code.to_json())?;
            let cert = Certificate::Solution {
                network: net.to_json(),
                code: code.to_json(),
            };
            let p = ctx.write_cert(&format!("solve-{name}-{q}-{t}"), &cert)?;
            if ctx.g.json || output.is_none() {
                write_or_print(ctx, output, &text)?;
            } else {
                write_or_print(ctx, output, &text)?;
                ctx.line(format!("solution found ({} nodes)\ncertificate: {}", stats.expansions, p.display()));
            }
            Ok(EXIT_OK)
        }
        SearchOutcome::NoSolution => {
            ctx.emit(
                format!("no ({q}, {t})-linear solution (complete search, {} nodes)", stats.expansions),
                json!({ "result": "none", "expansions": stats.expansions }),
            )?;
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::Unknown => {
            ctx.emit(
                format!("undecided: budget exhausted after {} nodes", stats.expansions),
                json!({ "result": "unknown", "expansions": stats.expansions }),
            )?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_verify(ctx: &mut Ctx, src: &NetSource, code: &Path) -> Result<i32> {
    let (_, net) = load_network(ctx, src)?;
    let j: CodeJson = serde_json::from_str(&read(code)?)?;
    let v = verify_solution(&net, &NetworkCode::from_json(&j)?)?;
    let human = match &v.violation {
        None => "accept".to_string(),
        Some(x) => format!("reject: {}", serde_json::to_string(x)?),
    };
    ctx.emit(human, serde_json::to_value(&v)?)?;
    Ok(if v.accepted() { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(serde::Deserialize)]
struct CodeFile {
    q: u64,
    #[serde(default)]
    generator: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    words: Option<Vec<Vec<u32>>>,
}

fn cmd_mds(ctx: &mut Ctx, m: MdsCmd) -> Result<i32> {
    match m {
        MdsCmd::Rs { q, r, h } => {
            let c = rs_code(q, r, h)?;
            let d = c.min_distance(crate::mds::DEFAULT_CODEWORD_LIMIT)?;
            let rows = c.generator().to_codes();
            let mut human = format!("[{r}, {h}, {d}]_{q} Reed-Solomon generator:");
            for row in &rows {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                let _ = write!(human, "\n  {}", cells.join(" "));
            }
            ctx.emit(human, json!({ "q": q, "r": r, "h": h, "distance": d, "generator": rows }))?;
            Ok(EXIT_OK)
        }
        MdsCmd::Distance { path } => {
            let f: CodeFile = serde_json::from_str(&read(&path)?)?;
            let field = FieldSpec::from_order(f.q)?;
            let d = match (f.generator, f.words) {
                (Some(g), None) => {
                    let cols = g.first().map_or(0, Vec::len);
                    LinearCode::new(crate::gf::Matrix::from_codes(&field, cols, &g)?)?
                        .min_distance(crate::mds::DEFAULT_CODEWORD_LIMIT)?
                }
                (None, Some(w)) => Codebook::from_codes(&field, &w)?.min_distance(crate::mds::DEFAULT_CODEWORD_LIMIT)?,
                _ => return Err(usage("code file needs exactly one of \"generator\" or \"words\"")),
            };
            ctx.emit(format!("minimum distance {d}"), json!({ "distance": d }))?;
            Ok(EXIT_OK)
        }
        MdsCmd::Check { h, r, s, q } => mds_check(ctx, h, r, s, q),
    }
}

fn mds_check(ctx: &mut Ctx, h: usize, r: usize, s: usize, q: u64) -> Result<i32> {
    let net = combination_with_limit(h, r, s, DEFAULT_TERMINAL_CANDIDATE_LIMIT)?;
    let name = format!("mds-comb-{h}-{r}-{s}-{q}");
    if s < h {
        ctx.emit(
            format!("N_{{{h},{r},{s}}} has terminals with only {s} < {h} incoming edges: unsolvable"),
            json!({ "solvable": false, "reason": "cut" }),
        )?;
        return Ok(EXIT_NEGATIVE);
    }
    if r as u64 <= q + 1 {
        let c = rs_code(q, r, h)?;
        let code = crate::lincode::solution_from_classical_code(&net, c.generator())?;
        let ok = verify_solution(&net, &code)?.accepted();
        let cert = Certificate::Solution {
            network: net.to_json(),
            code: code.to_json(),
        };
        let p = ctx.write_cert(&name, &cert)?;
        ctx.emit(
            format!(
                "solvable over F_{q}: [{r}, {h}, {}] Reed-Solomon code, verified: {ok}\ncertificate: {}",
                r - h + 1,
                p.display()
            ),
            json!({ "solvable": true, "method": "reed_solomon", "verified": ok, "certificate": p }),
        )?;
        return Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let size = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if size.saturating_mul(r as u128) <= MAX_CODEBOOK_SEARCH as u128 {
        return match find_codebook(q, r, size as usize, r + 1 - s, ctx.g.budget)? {
            Some(Some(book)) => {
                let words: Vec<Vec<u32>> = book.words().iter().map(|w| w.iter().map(|x| x.0).collect()).collect();
                ctx.emit(
                    format!("solvable over an alphabet of size {q} by a nonlinear forwarding code"),
                    json!({ "solvable": true, "method": "codebook", "words": words }),
                )?;
                Ok(EXIT_OK)
            }
            Some(None) => {
                ctx.emit(
                    format!(
                        "no ({r}, {size}, {})_{q} code exists: N_{{{h},{r},{s}}} is not solvable over alphabet size {q}",
                        r + 1 - s
                    ),
                    json!({ "solvable": false, "method": "codebook" }),
                )?;
                Ok(EXIT_NEGATIVE)
            }
            None => {
                ctx.emit("undecided: codebook search budget exhausted", json!({ "solvable": null }))?;
                Ok(EXIT_BUDGET)
            }
        };
    }
    let (outcome, stats) = search_solution(&net, &FieldSpec::from_order(q)?, 1, ctx.g.budget)?;
    match outcome {
        SearchOutcome::Found(code) => {
            let cert = Certificate::Solution {
                network: net.to_json(),
                code: code.to_json(),
            };
            let p = ctx.write_cert(&name, &cert)?;
            ctx.emit(
                format!("scalar solution over F_{q} found\ncertificate: {}", p.display()),
                json!({ "solvable": true, "method": "search", "certificate": p }),
            )?;
            Ok(EXIT_OK)
        }
        SearchOutcome::NoSolution => {
            ctx.emit(
                format!("no scalar linear solution over F_{q} (complete search, {} nodes)", stats.expansions),
                json!({ "solvable": false, "method": "search", "expansions": stats.expansions }),
            )?;
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::Unknown => {
            ctx.emit("undecided: search budget exhausted", json!({ "solvable": null }))?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_ic(ctx: &mut Ctx, i: IcCmd) -> Result<i32> {
    match i {
        IcCmd::Bound { q, t, h, alpha } => {
            let b = ic_bound(q, t, h, alpha)?;
            ctx.emit(b.to_string(), json!({ "bound": b as u64 }))?;
            Ok(EXIT_OK)
        }
        IcCmd::Search {
            q,
            t,
            h,
            alpha,
            target,
        } => {
            let r = ic_search(q, t, h, alpha, target, ctx.g.budget, ctx.g.max_subspaces)?;
            let members: Vec<Vec<Vec<u32>>> = r.witness.members().iter().map(|m| m.basis().to_codes()).collect();
            let cert = Certificate::Ic {
                q,
                t,
                h,
                alpha,
                members,
            };
            let p = ctx.write_cert(&format!("ic-{q}-{t}-{h}-{alpha}"), &cert)?;
            let status = if r.exact { "exact" } else { "lower bound, budget exhausted" };
            ctx.emit(
                format!(
                    "size {} ({status}), bound {}, {} nodes\ncertificate: {}",
                    r.size,
                    r.bound,
                    r.expansions,
                    p.display()
                ),
                json!({ "size": r.size, "exact": r.exact, "bound": r.bound as u64, "expansions": r.expansions, "certificate": p }),
            )?;
            Ok(if r.exact { EXIT_OK } else { EXIT_BUDGET })
        }
        IcCmd::Check { path, alpha } => {
            let c = Certificate::from_json_str(&read(&path)?)?;
            let Certificate::Ic {
                q,
                t,
                h,
                alpha: declared,
                members,
            } = c
            else {
                return Err(usage("not an IC certificate"));
            };
            let field = FieldSpec::from_order(q)?;
            let spaces = members
                .iter()
                .map(|rows| Subspace::from_codes(&field, h * t, rows))
                .collect::<Result<Vec<_>>>()?;
            let ic = IndependentConfiguration::new(&field, t, h, spaces)?;
            let a = alpha.unwrap_or(declared);
            let ok = ic_is_valid(&ic, a)?;
            ctx.emit(
                format!("{} members, valid for alpha = {a}: {ok}", ic.len()),
                json!({ "size": ic.len(), "alpha": a, "valid": ok }),
            )?;
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn report_q(ctx: &mut Ctx, label: &str, name: &str, r: &QReport) -> Result<i32> {
    let paths = write_report_certs(ctx, name, r)?;
    let mut human = format!("{label} = {} ({})", r.value, r.method);
    if let (Some(q), Some(t)) = (r.q, r.t) {
        let _ = write!(human, "\nwitness: (q, t) = ({q}, {t})");
    }
    for n in &r.notes {
        let _ = write!(human, "\n  {n}");
    }
    for p in &paths {
        let _ = write!(human, "\ncertificate: {}", p.display());
    }
    let mut j = serde_json::to_value(r)?;
    j["certificate_files"] = json!(paths);
    ctx.emit(human, j)?;
    Ok(if r.value.exact().is_some() { EXIT_OK } else { EXIT_BUDGET })
}

fn write_report_certs(ctx: &Ctx, name: &str, r: &QReport) -> Result<Vec<PathBuf>> {
    r.certificates
        .iter()
        .enumerate()
        .map(|(i, c)| ctx.write_cert(&format!("{name}-{i}"), c))
        .collect()
}

fn cmd_gap(ctx: &mut Ctx, src: &NetSource) -> Result<i32> {
    let (name, net) = load_network(ctx, src)?;
    let r = gap_exact(&name, &net, &ctx.gap_options())?;
    let mut paths = write_report_certs(ctx, &format!("gap-{name}-qs"), &r.qs)?;
    paths.extend(write_report_certs(ctx, &format!("gap-{name}-qv"), &r.qv)?);
    let mut human = format!(
        "{name}: q_v={} q_s={} gap={}\nmethods: q_v {}, q_s {}",
        r.qv.value, r.qs.value, r.gap, r.qv.method, r.qs.method
    );
    if let (Some(q), Some(t)) = (r.qv.q, r.qv.t) {
        let _ = write!(human, "\nvector witness: (q, t) = ({q}, {t})");
    }
    for p in &paths {
        let _ = write!(human, "\ncertificate: {}", p.display());
    }
    let mut j = serde_json::to_value(&r)?;
    j["certificate_files"] = json!(paths);
    ctx.emit(human, j)?;
    Ok(if r.gap.exact().is_some() { EXIT_OK } else { EXIT_BUDGET })
}

fn cmd_formula(ctx: &mut Ctx, name: &str, p: &[u64]) -> Result<i32> {
    let need = |k: usize| -> Result<()> {
        if p.len() != k {
            return Err(usage(format!("formula {name} takes {k} parameters")));
        }
        Ok(())
    };
    let t32 = |x: u64| u32::try_from(x).map_err(|_| usage("parameter too large"));
    let f = match name {
        "kneser-exact" => {
            need(2)?;
            GapFormula::KneserExact { q: p[0], t: t32(p[1])? }
        }
        "minimal-upper" => {
            need(2)?;
            GapFormula::MinimalUpper { q: p[0], t: t32(p[1])? }
        }
        "kneser-lower" => {
            need(2)?;
            GapFormula::KneserLower { q: p[0], t: t32(p[1])? }
        }
        "many-messages" => {
            need(3)?;
            GapFormula::ManyMessages {
                q: p[0],
                t: t32(p[1])?,
                h: t32(p[2])?,
            }
        }
        "combination" => {
            need(2)?;
            GapFormula::Combination { h: p[0], r: p[1] }
        }
        _ => return Err(usage(format!("unknown formula {name}"))),
    };
    let v = gap_formula(f)?;
    let mut human = format!("{name}: {}", v.value);
    if let Some(n) = &v.note {
        let _ = write!(human, " ({n})");
    }
    ctx.emit(human, serde_json::to_value(&v)?)?;
    Ok(EXIT_OK)
}

fn csv_cell(s: String) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s
    }
}

fn cmd_gap_table(ctx: &mut Ctx, qs: &[u64], ts: &[usize]) -> Result<i32> {
    let mut rows = Vec::new();
    let mut all_exact = true;
    let mut csv = String::from("network,q_v,q_s,gap,methods,runtime");
    for &q in qs {
        for &t in ts {
            let start = Instant::now();
            let name = format!("K_{{{q},{t};2}}");
            let net = build_kneser(ctx, q, t, 2, KneserMode::Materialized)?
                .into_network()
                .ok_or_else(|| usage("Kneser network too large to materialize"))?;
            let r = gap_exact(&name, &net, &ctx.gap_options())?;
            let secs = start.elapsed().as_secs_f64();
            all_exact &= r.gap.exact().is_some();
            let methods = format!("q_v:{} q_s:{}", r.qv.method, r.qs.method);
            let _ = write!(
                csv,
                "\n{},{},{},{},{},{:.3}",
                csv_cell(name.clone()),
                csv_cell(r.qv.value.to_string()),
                csv_cell(r.qs.value.to_string()),
                csv_cell(r.gap.to_string()),
                methods,
                secs
            );
            rows.push(json!({
                "network": name, "q_v": r.qv.value, "q_s": r.qs.value, "gap": r.gap,
                "methods": methods, "runtime": secs,
            }));
        }
    }
    ctx.emit(csv, Json::Array(rows))?;
    Ok(if all_exact { EXIT_OK } else { EXIT_BUDGET })
}
