//! `hforge`: verify, construct, search and ledger workflows over JSON files.
//!
//! Exit codes: 0 success, 1 verified false or no witness, 2 usage or data error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hforge_core::constructions::{base_to_t, golay_double, golay_to_normal};
use hforge_core::data::DATA_DIR_ENV;
use hforge_core::ledger::{
    classify_range, decompose, delta_report, extra_cases_report, table1_verify, Baseline, KnowledgeBase, Status,
};
use hforge_core::objects::{BaseQuad, FormalArray, Object, WtFile};
use hforge_core::plugin::{hm_from_od_wt, od_from_bhw, pipeline, Check, ParamTuple, PipelineConfig};
use hforge_core::search::{
    canonical_form, enumerate_base, enumerate_nn, enumerate_ns, find_golay, merge, search_golay, search_williamson,
    ts_oracle, ClassificationReport, Group, SearchConfig,
};
use hforge_core::{DataSource, Error, Witnesses};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hforge", version, about = "Hadamard matrices from complementary sequences")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches and checks.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory with data files; overrides the shipped copies.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an object file with the verifier for its kind.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Expected kind (gs, bs, ns, nn, ts, od, bhw, wt, hm).
        #[arg(long)]
        kind: Option<String>,
    },
    /// Build objects from other objects.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Canonical representative and orbit size of a quad.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Existence oracles.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Existence ledger.
    Ledger {
        #[command(subcommand)]
        cmd: LedgerCmd,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// (A,B) -> (A‖B, A‖-B).
    GolayDouble {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Golay pair -> normal sequences.
    GolayToNormal {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Base sequences -> T-sequences.
    BaseToT {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T-sequences plugged into an array -> orthogonal design.
    Od {
        #[arg(long = "in")]
        input: PathBuf,
        /// Array file; the 4x4 template when absent.
        #[arg(long)]
        bhw_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal design and Williamson-type matrices -> Hadamard matrix.
    Hm {
        #[arg(long = "in")]
        input: PathBuf,
        /// Williamson-type matrices; order 1 when absent.
        #[arg(long)]
        wt_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// HM(4n) for n = y h (r+s) w.
    Pipeline {
        #[arg(long)]
        y: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        bhw_file: Option<PathBuf>,
        #[arg(long)]
        wt_file: Option<PathBuf>,
        /// Check every row pair whatever the order.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = Check::DEFAULT_PAIRS)]
        sample_pairs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchOpts {
    #[arg(long, global = true, default_value_t = 1)]
    shards: usize,
    #[arg(long, global = true, default_value_t = 0)]
    shard: usize,
    /// Node cap.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 8)]
    prefix_bits: u32,
    /// Largest number of free entries a classification may have.
    #[arg(long, global = true, default_value_t = 40)]
    max_bits: usize,
    /// Record wall time in reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Write the report or object here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Golay pairs of length g.
    Golay {
        #[arg(long)]
        g: usize,
        /// Stop at the first pair.
        #[arg(long)]
        first: bool,
    },
    /// Base sequences BS(r,s).
    Base {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Normal sequences NS(n).
    Ns {
        #[arg(long)]
        n: usize,
    },
    /// Near-normal sequences NN(n).
    Nn {
        #[arg(long)]
        n: usize,
    },
    /// Symmetric circulant Williamson matrices of order w.
    Williamson {
        #[arg(long)]
        w: usize,
    },
    /// Combine shard reports.
    Merge {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Whether T-sequences of length t exist.
    Ts {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LedgerCmd {
    /// Witness tuples for the values of Δ.
    Delta {
        /// Drop the closed-form Williamson families.
        #[arg(long)]
        explicit_only: bool,
    },
    /// Check every row of Table 1.
    Table1,
    /// The four further cases.
    Extra,
    /// Decompositions of one n.
    Decompose {
        #[arg(long)]
        n: u64,
    },
    /// Good and bad odd n up to a bound.
    Classify {
        #[arg(long)]
        max: u64,
        /// Bad cases of an external table: {"bad":[n or {"n":..,"t":..}, ...]}.
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
}

/// A command's result: what to print and the exit code.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: Value, ok: bool) -> Self {
        Report { text: text.into(), json, ok }
    }
}

type Res<T> = Result<T, Error>;

struct Ctx {
    json: bool,
    threads: Option<usize>,
    data: DataSource,
}

fn load(path: &Path) -> Res<Object> {
    Object::load(path)
}

fn expect_quad(obj: Object, path: &Path) -> Res<BaseQuad> {
    match obj {
        Object::Quad(q) => Ok(q),
        other => {
            Err(Error::InvalidInput(format!("{}: expected BS, NS or NN, found {}", path.display(), other.kind_tag())))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    fs::write(path, format!("{text}\n")).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Writes `obj` to `out`, or returns it as the report when there is no file.
fn emit(obj: &Object, out: Option<&Path>, summary: String) -> Res<Report> {
    let text = obj.to_json();
    let value: Value = serde_json::from_str(&text)?;
    match out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(Report::new(format!("{summary}; wrote {}", p.display()), json!({"summary": summary, "out": p}), true))
        }
        None => Ok(Report::new(text, value, true)),
    }
}

fn verify(input: &Path, kind: Option<&str>) -> Res<Report> {
    let obj = load(input)?;
    let tag = obj.kind_tag();
    if let Some(k) = kind {
        if !k.eq_ignore_ascii_case(tag) {
            return Err(Error::InvalidInput(format!("{}: expected {k}, found {tag}", input.display())));
        }
    }
    let ok = obj.verify()?;
    let word = if ok { "valid" } else { "invalid" };
    Ok(Report::new(format!("{tag}: {word}"), json!({"kind": tag, "valid": ok}), ok))
}

fn construct(ctx: &Ctx, cmd: ConstructCmd) -> Res<Report> {
    match cmd {
        ConstructCmd::GolayDouble { input, out } => match load(&input)? {
            Object::Golay(gp) => {
                let d = golay_double(&gp)?;
                let summary = format!("GS({})", d.len());
                emit(&Object::Golay(d), out.as_deref(), summary)
            }
            other => Err(Error::InvalidInput(format!("expected GS, found {}", other.kind_tag()))),
        },
        ConstructCmd::GolayToNormal { input, out } => match load(&input)? {
            Object::Golay(gp) => {
                let q = golay_to_normal(&gp)?;
                let summary = format!("NS({})", q.s());
                emit(&Object::Quad(q), out.as_deref(), summary)
            }
            other => Err(Error::InvalidInput(format!("expected GS, found {}", other.kind_tag()))),
        },
        ConstructCmd::BaseToT { input, out } => {
            let q = expect_quad(load(&input)?, &input)?;
            let t = base_to_t(&q)?;
            let summary = format!("TS({})", t.len());
            emit(&Object::T(t), out.as_deref(), summary)
        }
        ConstructCmd::Od { input, bhw_file, out } => {
            let ts = match load(&input)? {
                Object::T(t) => t,
                other => return Err(Error::InvalidInput(format!("expected TS, found {}", other.kind_tag()))),
            };
            let (array, h) = match bhw_file {
                Some(p) => match load(&p)? {
                    Object::Bhw { array, h } => (array, h),
                    other => return Err(Error::InvalidInput(format!("expected BHW, found {}", other.kind_tag()))),
                },
                None => (Witnesses::new(ctx.data.clone()).bhw(1)?, 1),
            };
            let od = od_from_bhw(&array, h, &ts)?;
            let weight = h * ts.len();
            let summary = format!("OD({}; {weight},{weight},{weight},{weight})", od.order());
            emit(&Object::Od { array: od, weight }, out.as_deref(), summary)
        }
        ConstructCmd::Hm { input, wt_file, out } => {
            let (od, weight): (FormalArray, usize) = match load(&input)? {
                Object::Od { array, weight } => (array, weight),
                other => return Err(Error::InvalidInput(format!("expected OD, found {}", other.kind_tag()))),
            };
            let wt = match wt_file {
                Some(p) => WtFile::load(&p)?,
                None => hforge_core::objects::MatrixQuad::unit(),
            };
            let order = od.order() * wt.order();
            let check = Check::auto(order, Check::DEFAULT_PAIRS);
            let hm = ctx_install(ctx, || hm_from_od_wt(&od, weight, &wt, check))?;
            emit(&Object::Hm(hm), out.as_deref(), format!("HM({order}), {}", check_label(check)))
        }
        ConstructCmd::Pipeline { y, h, r, s, w, bhw_file, wt_file, full, sample_pairs, out } => {
            let mut wit = Witnesses::new(ctx.data.clone());
            if let Some(p) = bhw_file {
                match load(&p)? {
                    Object::Bhw { array, h } => wit = wit.with_bhw(h, array)?,
                    other => return Err(Error::InvalidInput(format!("expected BHW, found {}", other.kind_tag()))),
                }
            }
            if let Some(p) = wt_file {
                wit = wit.with_wt(WtFile::load(&p)?)?;
            }
            let p = ParamTuple::new(y, h, r, s, w);
            let cfg = PipelineConfig { sample_pairs, force_full: full };
            let res = ctx_install(ctx, || pipeline(&p, &wit, &cfg))?;
            let order = res.hm.order();
            let summary = format!("HM({order}) from {p}, {}", check_label(res.check));
            match out {
                Some(path) => {
                    write_file(&path, &Object::Hm(res.hm).to_json())?;
                    Ok(Report::new(
                        format!("{summary}; wrote {}", path.display()),
                        json!({"params": p, "order": order, "check": check_label(res.check),
                               "od_checked": res.od_checked, "out": path}),
                        true,
                    ))
                }
                None if ctx.json => Ok(Report::new(
                    "",
                    json!({"params": p, "order": order, "check": check_label(res.check),
                           "od_checked": res.od_checked, "fingerprint": format!("{:016x}", res.hm.fingerprint())}),
                    true,
                )),
                None => {
                    Ok(Report::new(format!("{summary}, fingerprint {:016x}", res.hm.fingerprint()), Value::Null, true))
                }
            }
        }
    }
}

fn ctx_install<T: Send>(ctx: &Ctx, f: impl FnOnce() -> T + Send) -> T {
    SearchConfig { threads: ctx.threads, ..SearchConfig::default() }.install(f)
}

fn check_label(c: Check) -> String {
    match c {
        Check::Full => "all row pairs checked".into(),
        Check::Sampled { pairs, seed } => format!("{pairs} sampled row pairs (seed {seed:#x})"),
    }
}

fn class_report(rep: &ClassificationReport, out: Option<&Path>) -> Res<Report> {
    let text = rep.to_json();
    let mut lines = vec![format!(
        "{}({},{}): {} quads, {} classes, {} nodes",
        tag(rep),
        rep.r,
        rep.s,
        rep.raw_count,
        rep.class_count,
        rep.stats.nodes
    )];
    lines.extend(rep.classes.iter().map(|c| {
        format!(
            "  {};{};{};{}  x{}",
            c.representative.a, c.representative.b, c.representative.c, c.representative.d, c.orbit_size
        )
    }));
    if let Some(p) = out {
        write_file(p, &text)?;
        lines.push(format!("wrote {}", p.display()));
    }
    Ok(Report::new(lines.join("\n"), serde_json::from_str(&text)?, true))
}

fn tag(rep: &ClassificationReport) -> &'static str {
    match rep.kind {
        hforge_core::objects::QuadKind::Plain => "BS",
        hforge_core::objects::QuadKind::Normal => "NS",
        hforge_core::objects::QuadKind::NearNormal => "NN",
    }
}

fn search(ctx: &Ctx, cmd: SearchCmd, opts: SearchOpts) -> Res<Report> {
    let cfg = SearchConfig {
        threads: ctx.threads,
        shards: opts.shards,
        shard: opts.shard,
        budget: opts.budget,
        max_free_bits: opts.max_bits,
        prefix_bits: opts.prefix_bits,
        timing: opts.timing,
    };
    let out = opts.out.as_deref();
    match cmd {
        SearchCmd::Golay { g, first } => {
            let pairs = if first { find_golay(g, &cfg)?.into_iter().collect() } else { search_golay(g, &cfg)? };
            let objs: Vec<Value> = pairs
                .iter()
                .map(|p| serde_json::from_str(&Object::Golay(p.clone()).to_json()))
                .collect::<Result<_, _>>()?;
            let value = json!({"g": g, "count": pairs.len(), "pairs": objs});
            if let Some(p) = out {
                write_file(p, &serde_json::to_string_pretty(&value)?)?;
            }
            let mut lines = vec![format!("GS({g}): {} pairs", pairs.len())];
            lines.extend(pairs.iter().map(|p| format!("  {} {}", p.a, p.b)));
            Ok(Report::new(lines.join("\n"), value, !pairs.is_empty()))
        }
        SearchCmd::Base { r, s } => class_report(&enumerate_base(r, s, &cfg)?, out),
        SearchCmd::Ns { n } => class_report(&enumerate_ns(n, &cfg)?, out),
        SearchCmd::Nn { n } => class_report(&enumerate_nn(n, &cfg)?, out),
        SearchCmd::Williamson { w } => {
            let found = ctx_install(ctx, || search_williamson(w))?;
            let objs: Vec<Value> = found
                .iter()
                .map(|q| serde_json::from_str(&Object::Wt(q.clone()).to_json()))
                .collect::<Result<_, _>>()?;
            let value = json!({"w": w, "count": found.len(), "matrices": objs});
            if let Some(p) = out {
                write_file(p, &serde_json::to_string_pretty(&value)?)?;
            }
            Ok(Report::new(format!("WT({w}): {} quadruples", found.len()), value, !found.is_empty()))
        }
        SearchCmd::Merge { inputs } => {
            let reports = inputs
                .iter()
                .map(|p| {
                    let text = fs::read_to_string(p).map_err(|source| Error::Io { path: p.clone(), source })?;
                    Ok(serde_json::from_str::<ClassificationReport>(&text)?)
                })
                .collect::<Res<Vec<_>>>()?;
            class_report(&merge(&reports)?, out)
        }
    }
}

fn classify(input: &Path) -> Res<Report> {
    let q = expect_quad(load(input)?, input)?;
    let canon = canonical_form(&q);
    let flat = q.flatten();
    let group = Group::new(q.kind, q.r(), q.s());
    let orbit = group.orbit(&flat).len();
    let text = format!("canonical {canon}, orbit {orbit}, group order {}", group.order());
    let rep: Value = serde_json::from_str(&Object::Quad(canon).to_json())?;
    Ok(Report::new(text, json!({"canonical": rep, "orbit_size": orbit, "group_order": group.order()}), true))
}

fn oracle(cmd: OracleCmd) -> Res<Report> {
    let OracleCmd::Ts { t, out } = cmd;
    match ts_oracle(t)? {
        Some(ts) => {
            let obj = Object::T(ts);
            if let Some(p) = &out {
                write_file(p, &obj.to_json())?;
            }
            let value = json!({"t": t, "exists": true, "witness": serde_json::from_str::<Value>(&obj.to_json())?});
            Ok(Report::new(format!("TS({t}) exists"), value, true))
        }
        None => Ok(Report::new(format!("no TS({t})"), json!({"t": t, "exists": false}), false)),
    }
}

fn ledger(ctx: &Ctx, cmd: LedgerCmd) -> Res<Report> {
    let kb = KnowledgeBase::load(&ctx.data)?;
    match cmd {
        LedgerCmd::Delta { explicit_only } => {
            let kb = if explicit_only { kb.without_wt_rules() } else { kb };
            let rep = delta_report(&kb, &ctx.data)?;
            let mut text = format!("{}/{} good", rep.good, rep.total);
            if !rep.missing.is_empty() {
                text.push_str(&format!("\nmissing: {:?}", rep.missing));
            }
            Ok(Report::new(text, serde_json::to_value(&rep)?, rep.all_good()))
        }
        LedgerCmd::Table1 => {
            let rep = table1_verify(&kb, &ctx.data)?;
            let mut lines = vec![format!("{}/{} rows pass", rep.passed, rep.total)];
            for g in &rep.groups {
                for c in &g.rows {
                    let mark = if c.pass { "ok" } else { "FAIL" };
                    lines.push(format!("  {:>5} {} {mark}", c.row.n, c.row.params()));
                }
            }
            Ok(Report::new(lines.join("\n"), serde_json::to_value(&rep)?, rep.all_pass()))
        }
        LedgerCmd::Extra => {
            let rep = extra_cases_report(&kb);
            let lines: Vec<String> = rep
                .entries
                .iter()
                .map(|e| match (&e.expected, &e.special) {
                    (Some(p), _) => format!("{:>5} {p} {}", e.n, if e.found { "ok" } else { "MISSING" }),
                    (None, Some(s)) => format!("{:>5} {s}", e.n),
                    (None, None) => format!("{:>5} unresolved", e.n),
                })
                .collect();
            Ok(Report::new(lines.join("\n"), serde_json::to_value(&rep)?, rep.all_found()))
        }
        LedgerCmd::Decompose { n } => {
            let all = decompose(n, &kb);
            let special = kb.special(n).map(|f| f.prov.clone());
            let mut lines: Vec<String> = all.iter().map(ToString::to_string).collect();
            if let Some(s) = &special {
                lines.push(format!("special: {s}"));
            }
            if lines.is_empty() {
                lines.push(format!("no decomposition of {n}"));
            }
            let ok = !all.is_empty() || special.is_some();
            Ok(Report::new(lines.join("\n"), json!({"n": n, "tuples": all, "special": special}), ok))
        }
        LedgerCmd::Classify { max, baseline } => {
            let baseline = baseline.map(|p| Baseline::load(&p)).transpose()?;
            let rep = ctx_install(ctx, || classify_range(max, &kb, baseline.as_ref()));
            let bad: Vec<String> =
                rep.entries.iter().filter(|e| e.status == Status::Bad).map(|e| e.n.to_string()).collect();
            let mut text = format!("odd n <= {max}: {} good, {} bad", rep.good, rep.bad);
            if let (Some(b), Some(e)) = (rep.baseline_bad, rep.eliminated) {
                text.push_str(&format!("\nbaseline lists {b} bad, {e} now good"));
            }
            if !bad.is_empty() {
                text.push_str(&format!("\nbad: {}", bad.join(" ")));
            }
            Ok(Report::new(text, serde_json::to_value(&rep)?, true))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoConstructiveWitness(_) | Error::MissingBhwData(_) | Error::VerificationFailed(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let data = match &cli.data_dir {
        Some(d) if !d.as_os_str().is_empty() => DataSource::dir(d),
        _ => DataSource::embedded(),
    };
    let ctx = Ctx { json: cli.json, threads: cli.threads, data };
    let res = match cli.cmd {
        Cmd::Verify { input, kind } => verify(&input, kind.as_deref()),
        Cmd::Construct { cmd } => construct(&ctx, cmd),
        Cmd::Search { cmd, opts } => search(&ctx, cmd, opts),
        Cmd::Classify { input } => classify(&input),
        Cmd::Oracle { cmd } => oracle(cmd),
        Cmd::Ledger { cmd } => ledger(&ctx, cmd),
    };
    match res {
        Ok(rep) => {
            let text = if ctx.json { serde_json::to_string_pretty(&rep.json).expect("json value") } else { rep.text };
            if !text.is_empty() {
                // A closed pipe is not an error for a report.
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            ExitCode::from(if rep.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("hforge: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
