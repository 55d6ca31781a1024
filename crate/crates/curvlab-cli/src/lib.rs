//! `curvlab`: build PCC graphs, audit them, run the discharging, find and
//! cut red-triangle chains, and check the weight scenarios.
//!
//! Exit codes: 0 when everything checked passes, 1 when an audit or check
//! fails, 2 on usage, input or parse errors.

pub mod audit;

// Output that tolerates a closed pipe (`curvlab ... | head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outp {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

use clap::{Parser, Subcommand, ValueEnum};
use curvlab_core::admissibility::{enumerate_admissible, transcribed_table};
use curvlab_core::certify;
use curvlab_core::chains::{chain_surgery, find_chains};
use curvlab_core::discharging::{audit_discharge, Discharge};
use curvlab_core::pairing::EntryView;
use curvlab_core::rational::{decimal, exact, parse};
use curvlab_core::refinement::all_refinements;
use curvlab_core::report::AuditReport;
use curvlab_core::PlanarMap;
use curvlab_gen::{export_dot, export_rotmap, import_rotmap, Registry};
use curvlab_lp::{perturb, solve, verify_paper_weights, LpError};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "curvlab", version, about = "Planar graphs with positive combinatorial curvature")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Generate a map: prism N, antiprism N, gN N, ring N, g208, platonic solids.
    Gen {
        /// Generator name; `--list` shows them all.
        name: Option<String>,
        /// Size argument for sized generators.
        size: Option<usize>,
        /// Write the rotation map here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Validate rotation-map files and run every audit on them.
    Audit {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Build the pairing and report contributions of every target.
    Discharge {
        #[arg(long)]
        input: PathBuf,
        /// Write the full JSON report (with pairing provenance) here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List every face with its contribution.
        #[arg(long)]
        per_face: bool,
        /// Show the edge-level decompositions of the large faces.
        #[arg(long)]
        refine: bool,
    },
    /// Find chains of red triangles.
    Chains { input: PathBuf },
    /// Replace the smaller side of a closed chain by a mirrored copy of the other.
    Surgery {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        chain: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the admissible face-vector table and compare with the transcription.
    Table {
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Certify the decimal constants of the face analyses exactly.
    Certify,
    /// Check the weight scenarios; optionally optimize or perturb the weights.
    Lp {
        /// Scenario file or directory; the shipped scenarios by default.
        #[arg(long)]
        scenarios: Option<PathBuf>,
        /// File of `name = value` lines overriding the default weights.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Maximize the smallest slack over the weight box.
        #[arg(long)]
        optimize: bool,
        /// Change one weight, `name=value`, and list the cases that break.
        #[arg(long)]
        perturb: Option<String>,
    },
}

/// Usage or input problem: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Usage(msg)) => {
            eprintln!("curvlab: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let f = cli.format;
    match cli.cmd {
        Cmd::Gen { name, size, out, dot, list } => gen(f, name, size, out, dot, list),
        Cmd::Audit { inputs } => audit_cmd(f, &inputs),
        Cmd::Discharge { input, report, per_face, refine } => discharge(f, &input, report, per_face, refine),
        Cmd::Chains { input } => chains(f, &input),
        Cmd::Surgery { input, chain, out } => surgery(f, &input, chain, out),
        Cmd::Table { json } => table(if json { Format::Json } else { f }),
        Cmd::Certify => certify_cmd(f),
        Cmd::Lp { scenarios, weights, optimize, perturb } => lp(f, scenarios, weights, optimize, perturb),
    }
}

fn print_json<T: Serialize>(v: &T) {
    out!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn load(path: &Path) -> Result<PlanarMap, Usage> {
    Ok(import_rotmap(path)?)
}

fn gen(f: Format, name: Option<String>, size: Option<usize>, out: Option<PathBuf>, dot: Option<PathBuf>, list: bool) -> Outcome {
    let reg = Registry::standard();
    let Some(name) = name.filter(|_| !list) else {
        for n in reg.names() {
            let g = reg.get(n).expect("listed");
            out!("{:<14}{}{}", n, g.summary(), if g.takes_size() { " (takes N)" } else { "" });
        }
        return Ok(true);
    };
    let m = reg.generate(&name, size)?;
    let label = match size {
        Some(n) => format!("{name} {n}"),
        None => name.clone(),
    };
    let comment = format!("curvlab gen {label}");
    if let Some(p) = &dot {
        export_dot(&m, p, &name)?;
    }
    match &out {
        Some(p) => {
            export_rotmap(&m, p, Some(&comment))?;
            match f {
                Format::Json => print_json(&serde_json::json!({
                    "generator": label, "out": p, "vertices": m.num_vertices(),
                    "edges": m.num_edges(), "faces": m.num_faces(), "max_face": m.max_face_size(),
                })),
                Format::Text => out!(
                    "{label}: V={} E={} F={} max face {} -> {}",
                    m.num_vertices(),
                    m.num_edges(),
                    m.num_faces(),
                    m.max_face_size(),
                    p.display()
                ),
            }
        }
        None => outp!("{}", curvlab_core::io::write_rotmap(&m, Some(&comment))),
    }
    Ok(true)
}

/// Worker count for audits: `CURVLAB_THREADS` if set, else the machine's
/// parallelism.
pub fn threads() -> usize {
    std::env::var("CURVLAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

#[derive(Serialize)]
struct AuditOut {
    input: String,
    #[serde(flatten)]
    report: AuditReport,
    census: audit::Census,
}

/// Audits maps on up to `threads` scoped workers; results keep input order.
pub fn audit_many(maps: &[PlanarMap], threads: usize) -> Vec<AuditReport> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<AuditReport>>> = maps.iter().map(|_| Default::default()).collect();
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, maps.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= maps.len() {
                    break;
                }
                let r = audit::full_audit(&maps[i]);
                *slots[i].lock().expect("slot") = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot").expect("audited")).collect()
}

fn audit_cmd(f: Format, inputs: &[PathBuf]) -> Outcome {
    let maps = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let reports = audit_many(&maps, threads());
    let ok = reports.iter().all(AuditReport::passed);
    let outs: Vec<AuditOut> = inputs
        .iter()
        .zip(&maps)
        .zip(reports)
        .map(|((p, m), report)| AuditOut { input: p.display().to_string(), report, census: audit::census(m) })
        .collect();
    match f {
        Format::Json if outs.len() == 1 => print_json(&outs[0]),
        Format::Json => print_json(&outs),
        Format::Text => {
            for o in &outs {
                let c = &o.census;
                out!("== {}: V={} E={} F={}", o.input, c.vertices, c.edges, c.faces);
                out!("faces: {}", join_counts(&c.face_sizes));
                out!("vertex types: {}", join_counts(&c.vtypes));
                outp!("{}", o.report.to_text());
            }
        }
    }
    Ok(ok)
}

fn join_counts<K: std::fmt::Display>(m: &std::collections::BTreeMap<K, usize>) -> String {
    m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct DischargeOut {
    input: String,
    vertices: usize,
    total: String,
    expected: String,
    targets: Vec<curvlab_core::discharging::TargetRow>,
    refinements: Vec<curvlab_core::refinement::DecompositionView>,
    audit: AuditReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pairing: Vec<EntryView>,
}

fn discharge(f: Format, input: &Path, report: Option<PathBuf>, per_face: bool, refine: bool) -> Outcome {
    let m = load(input)?;
    let d = Discharge::new(&m)?;
    let aud = audit_discharge(&m, &d);
    let rows = d.rows(&m);
    let expected = curvlab_core::rational::q(2 * (209 - m.num_vertices() as i64), 209);
    let refinements: Vec<_> = all_refinements(&m, &d).into_iter().filter_map(Result::ok).map(|x| x.view(&m)).collect();
    let mut out = DischargeOut {
        input: input.display().to_string(),
        vertices: m.num_vertices(),
        total: exact(&d.total()),
        expected: exact(&expected),
        targets: rows,
        refinements,
        audit: aud,
        pairing: d.pairing.entries.iter().map(EntryView::from).collect(),
    };
    if let Some(p) = &report {
        std::fs::write(p, serde_json::to_string_pretty(&out).expect("serializes"))?;
    }
    let ok = out.audit.passed();
    match f {
        Format::Json => {
            if !per_face {
                out.targets.retain(|r| r.size.is_none() || r.mass.exact != "0");
            }
            if !refine {
                out.refinements.clear();
            }
            out.pairing.clear();
            print_json(&out);
        }
        Format::Text => {
            out!("{}: V={}  sum c = {}  2(209-V)/209 = {}", out.input, out.vertices, out.total, out.expected);
            for r in &out.targets {
                let show = per_face || r.size.is_none() || (r.mass.exact != "0" && !r.meets_bound);
                if show {
                    out!(
                        "  {:<10} size {:>4}  mass {:>6}  c = {:<18} bound {}{}",
                        r.target,
                        r.size.map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                        r.mass.exact,
                        r.c.exact,
                        r.bound.as_ref().map(|b| b.exact.clone()).unwrap_or_else(|| "-".into()),
                        if r.meets_bound { "" } else { "  VIOLATED" }
                    );
                }
            }
            if refine {
                for v in &out.refinements {
                    out!("  face {} (size {}): c = {}, edge sum = {}", v.face, v.size, v.c_face.exact, v.sum.exact);
                    for s in &v.slots {
                        out!("    {:<24} {}", s.slot, s.c.exact);
                    }
                }
            }
            outp!("{}", out.audit.to_text());
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct ChainOut {
    index: usize,
    closed: bool,
    length: usize,
    triangles: Vec<usize>,
    laws: Option<curvlab_core::chains::ChainLaws>,
    ends: Vec<curvlab_core::chains::BrokenChain>,
}

fn chains(f: Format, input: &Path) -> Outcome {
    let m = load(input)?;
    let outs: Vec<ChainOut> = find_chains(&m)
        .into_iter()
        .enumerate()
        .map(|(i, c)| ChainOut {
            index: i,
            closed: c.closed,
            length: c.len(),
            laws: c.closed.then(|| c.count_laws(&m)),
            triangles: c.triangles.clone(),
            ends: c.ends.clone(),
        })
        .collect();
    let ok = outs.iter().all(|c| c.laws.as_ref().is_none_or(|l| l.holds));
    match f {
        Format::Json => print_json(&outs),
        Format::Text => {
            out!("{} chains", outs.len());
            for c in &outs {
                match &c.laws {
                    Some(l) => out!(
                        "  chain {}: closed, L = {} (m = {}), {} edges, {} vertices, laws {}",
                        c.index,
                        l.length,
                        l.m,
                        l.edges,
                        l.vertices,
                        if l.holds { "hold" } else { "FAIL" }
                    ),
                    None => {
                        out!("  chain {}: open, {} triangles", c.index, c.length);
                        for e in &c.ends {
                            out!("    end at face {}: {}", e.face, e.reason);
                        }
                    }
                }
            }
        }
    }
    Ok(ok)
}

fn surgery(f: Format, input: &Path, index: usize, out: Option<PathBuf>) -> Outcome {
    let m = load(input)?;
    let all = find_chains(&m);
    let c = all.get(index).ok_or_else(|| Usage(format!("no chain {index}; the map has {}", all.len())))?;
    let (g, info) = chain_surgery(&m, c)?;
    let pcc = curvlab_core::validate::validate_pcc(&g).passed();
    if let Some(p) = &out {
        export_rotmap(&g, p, Some(&format!("surgery on chain {index} of {}", input.display())))?;
    }
    match f {
        Format::Json => print_json(&serde_json::json!({ "surgery": info, "pcc": pcc, "out": out })),
        Format::Text => {
            out!(
                "n1 = {}, n2 = {}, m = {}: {} vertices (2*n1 + 6m), {}, shift {}; output {}",
                info.n1,
                info.n2,
                info.m,
                info.vertices,
                if info.mirrored { "mirrored" } else { "orientation kept" },
                info.shift,
                if pcc { "is PCC" } else { "is NOT PCC" }
            );
            if out.is_none() {
                outp!("{}", curvlab_core::io::write_rotmap(&g, None));
            }
        }
    }
    Ok(pcc)
}

fn table(f: Format) -> Outcome {
    let got = enumerate_admissible();
    let want = transcribed_table();
    let ok = got == want;
    match f {
        Format::Json => print_json(&serde_json::json!({
            "families": got.len(), "matches_transcription": ok, "rows": got,
        })),
        Format::Text => {
            for r in &got {
                let limit = r.limit().map(|l| format!("  K -> {}", exact(&l))).unwrap_or_default();
                out!("{r}{limit}");
            }
            out!("{} families, {}", got.len(), if ok { "matches the transcription" } else { "DIFFERS from the transcription" });
        }
    }
    Ok(ok)
}

fn certify_cmd(f: Format) -> Outcome {
    let c = certify::certify(&certify::shipped());
    match f {
        Format::Json => print_json(&c),
        Format::Text => outp!("{c}"),
    }
    Ok(c.passed())
}

fn lp(f: Format, scenarios: Option<PathBuf>, weights: Option<PathBuf>, optimize: bool, change: Option<String>) -> Outcome {
    let mut set = match &scenarios {
        Some(p) => curvlab_lp::load_scenarios(p)?,
        None => curvlab_lp::shipped(),
    };
    if let Some(p) = &weights {
        let text = std::fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display())))?;
        set.override_weights(&text, &p.display().to_string())?;
    }
    if let Some(spec) = change {
        let (name, value) = spec.split_once('=').ok_or_else(|| Usage("--perturb expects name=value".into()))?;
        let value = parse(value).ok_or_else(|| Usage(format!("bad value {value:?}")))?;
        let p = perturb(&set, name.trim(), value)?;
        match f {
            Format::Json => print_json(&p),
            Format::Text => {
                out!("{} = {}", p.weight, exact(&p.value));
                for c in p.report.cases.iter().filter(|c| !c.pass) {
                    out!("  FAIL {:>2} {:<28} value {} <= {}", c.section, c.case, decimal(&c.value, 4), c.quoted);
                }
                out!("cases broken by the change: {}", if p.flipped.is_empty() { "none".into() } else { p.flipped.join(", ") });
            }
        }
        return Ok(p.flipped.is_empty());
    }
    if optimize {
        return match solve(&set) {
            Ok(sol) => {
                match f {
                    Format::Json => print_json(&sol),
                    Format::Text => {
                        for (n, v) in &sol.weights {
                            out!("  {n:<8} = {} ({})", exact(v), decimal(v, 6));
                        }
                        match &sol.margin {
                            Some(m) => out!("max min slack = {} ({})", exact(m), decimal(m, 4)),
                            None => out!("no constraints"),
                        }
                        out!("binding: {}", sol.binding.join(", "));
                        out!("certificate: {}", if sol.certified { "primal and dual verified" } else { "FAILED" });
                    }
                }
                Ok(sol.certified)
            }
            Err(e @ LpError::Infeasible { .. }) => {
                match f {
                    Format::Json => print_json(&serde_json::json!({ "infeasible": e.to_string() })),
                    Format::Text => out!("{e}"),
                }
                Ok(false)
            }
            Err(e) => Err(Usage(e.to_string())),
        };
    }
    let rep = verify_paper_weights(&set);
    match f {
        Format::Json => print_json(&rep),
        Format::Text => {
            let w: Vec<String> = rep.weights.iter().map(|(n, v)| format!("{n}={}", exact(v))).collect();
            out!("weights: {}", w.join(" "));
            for c in &rep.cases {
                out!(
                    "  {} {:>2} {:<28} {:>12} > {:<8} {}",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.section,
                    c.case,
                    decimal(&c.value, 4),
                    c.quoted,
                    c.cite
                );
            }
            for s in &rep.sections {
                out!(
                    "section {:>2}: min {} ({}) at {}, conclusion {}",
                    s.section,
                    decimal(&s.min_value, 4),
                    exact(&s.min_value),
                    s.min_case,
                    s.conclusion.as_ref().map(|q| decimal(q, 4)).unwrap_or_else(|| "-".into())
                );
            }
        }
    }
    Ok(rep.passed())
}
