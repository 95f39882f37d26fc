use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use wmodchar::characters::{
    admissible_vacuum_character, boundary_affine_character, boundary_slice_character, principal_qhr_character,
    qhr_admissible_character, wmin_character, wmin_character_along, CharacterResult,
};
use wmodchar::liealg::{AffineWeight, NilpotentSlice, RootSystem, WeylGroup, DEFAULT_WEYL_CAP};
use wmodchar::modular::TransformReport;
use wmodchar::report;
use wmodchar::verify::{self, ExactCheck, Sampling};
use wmodchar::{Error, Q};

/// Environment variable naming the directory that relative `--output` paths resolve against.
const OUT_DIR_ENV: &str = "WMODCHAR_OUT_DIR";

#[derive(Parser)]
#[command(name = "wmodchar", version, about = "Characters of affine and W-algebras as exact q-series, and checks of their modular laws")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a character as a truncated q-series.
    Character {
        #[arg(value_enum)]
        kind: CharKind,
        #[command(flatten)]
        job: Job,
    },
    /// Run an identity or transformation check.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        #[command(flatten)]
        job: Job,
        /// Which Ψ law to check, e.g. S-plain or T-minus (default: all six).
        #[arg(long)]
        which: Option<String>,
        /// Run the desk-scale suite (used by `verify all`).
        #[arg(long)]
        desk: bool,
        /// Include the long E6 computations.
        #[arg(long)]
        slow: bool,
    },
    /// Describe a root system or a nilpotent slice.
    Info {
        #[arg(value_enum)]
        what: InfoKind,
        #[command(flatten)]
        job: Job,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CharKind {
    Wmin,
    Qhr,
    Boundary,
    Principal,
    AdmissibleVacuum,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum VerifyKind {
    Theorem1,
    Theorem2,
    Theorem4b,
    Remark4,
    Theta,
    F,
    Denominator,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum InfoKind {
    Algebra,
    Slice,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Job {
    /// Cartan type and rank, e.g. A1, D4, E6.
    #[arg(long, default_value = "A1")]
    algebra: String,
    /// Level k (integer).
    #[arg(long, allow_hyphen_values = true)]
    level: Option<i64>,
    /// Numerator of k + h^vee = p/u.
    #[arg(long)]
    p: Option<i64>,
    /// Denominator of k + h^vee = p/u.
    #[arg(long)]
    u: Option<i64>,
    /// minimal, principal, or comma-separated weighted Dynkin labels.
    #[arg(long)]
    nilpotent: Option<String>,
    /// q-order N past the leading exponent.
    #[arg(short = 'N', long = "order", default_value_t = 6)]
    order: i64,
    /// Jet order U in the direction parameter.
    #[arg(short = 'U', long = "jet", default_value_t = 8)]
    jet: usize,
    /// Tolerance for numerical checks.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Level n of the theta functions (`verify theta`).
    #[arg(long)]
    n: Option<i64>,
    /// Number of sample points for numerical checks.
    #[arg(long, default_value_t = 5)]
    points: usize,
    /// Seed for the sample points.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated direction z0 in simple-root coordinates, replacing the default choice.
    #[arg(long, allow_hyphen_values = true)]
    seed_direction: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Output file; relative paths resolve under $WMODCHAR_OUT_DIR when it is set.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Cap on the Weyl group order.
    #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
    weyl_cap: u128,
}

type Res<T> = Result<T, String>;

fn lib(e: Error) -> String {
    e.to_string()
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Res<T> {
    v.ok_or_else(|| format!("precondition violated: {what} requires --{flag}"))
}

fn parse_q(s: &str) -> Res<Q> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad(s))?, b.trim().parse().map_err(|_| bad(s))?);
            if b == 0 {
                return Err(bad(s));
            }
            Q::new(a, b)
        }
        None => Q::from_integer(s.parse().map_err(|_| bad(s))?),
    };
    Ok(r)
}

fn bad(s: &str) -> String {
    format!("precondition violated: '{s}' is not a rational number")
}

impl Job {
    fn root_system(&self) -> Res<RootSystem> {
        RootSystem::from_name(&self.algebra).map_err(lib)
    }

    fn weyl(&self, rs: &RootSystem) -> Res<WeylGroup> {
        WeylGroup::new(rs, self.weyl_cap).map_err(lib)
    }

    fn slice(&self, rs: &RootSystem, default: &str) -> Res<NilpotentSlice> {
        let sel = self.nilpotent.as_deref().unwrap_or(default);
        match sel {
            "minimal" | "min" => Ok(NilpotentSlice::minimal(rs)),
            "principal" | "pr" => Ok(NilpotentSlice::principal(rs)),
            labels => {
                let ls: Vec<u8> = labels
                    .split(',')
                    .map(|t| t.trim().parse::<u8>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| format!("precondition violated: --nilpotent must be minimal, principal or labels like 2,0,2,2; got {labels}"))?;
                NilpotentSlice::dynkin(rs, &ls).map_err(lib)
            }
        }
    }

    fn direction(&self) -> Res<Option<Vec<Q>>> {
        self.seed_direction.as_deref().map(|s| s.split(',').map(parse_q).collect()).transpose()
    }

    fn rel(&self) -> Res<Q> {
        if self.order < 0 {
            return Err("precondition violated: q-order N must be non-negative".into());
        }
        Ok(Q::from_integer(self.order))
    }

    fn sampling(&self) -> Res<Sampling> {
        if !(self.eps > 0.0) {
            return Err("precondition violated: eps must be positive".into());
        }
        if self.points == 0 {
            return Err("precondition violated: --points must be at least 1".into());
        }
        Ok(Sampling { points: self.points, seed: self.seed, eps: self.eps })
    }

    fn emit(&self, text: String) -> Res<()> {
        match &self.output {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(p) => {
                let path = match std::env::var_os(OUT_DIR_ENV) {
                    Some(d) if p.is_relative() => PathBuf::from(d).join(p),
                    _ => p.clone(),
                };
                if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent).map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
                }
                std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
            }
        }
    }
}

fn render_character(job: &Job, r: &CharacterResult) -> String {
    match job.format {
        Format::Plain => report::character_text(r),
        Format::Json => report::to_pretty(&report::character_json(r)),
        Format::Csv => report::series_csv(&r.series),
    }
}

fn character(kind: CharKind, job: &Job) -> Res<()> {
    let rs = job.root_system()?;
    let rel = job.rel()?;
    let r = match kind {
        CharKind::Wmin => {
            let k = need(job.level, "level", "character wmin")?;
            let wg = job.weyl(&rs)?;
            match job.direction()? {
                Some(z) => wmin_character_along(&rs, &wg, k, z, rel, job.jet),
                None => wmin_character(&rs, &wg, k, rel, job.jet),
            }
            .map_err(lib)?
        }
        CharKind::Qhr => {
            let p = need(job.p, "p", "character qhr")?;
            let u = need(job.u, "u", "character qhr")?;
            let wg = job.weyl(&rs)?;
            let slice = job.slice(&rs, "minimal")?;
            let lam0 = AffineWeight::lambda0(rs.rank(), Q::from_integer(p - rs.dual_coxeter));
            qhr_admissible_character(&rs, &wg, &slice, p, u, &lam0, rel).map_err(lib)?
        }
        CharKind::Boundary => {
            let u = need(job.u, "u", "character boundary")?;
            match job.nilpotent {
                None => boundary_affine_character(&rs, u, rel).map_err(lib)?,
                Some(_) => boundary_slice_character(&rs, &job.slice(&rs, "minimal")?, u, rel).map_err(lib)?,
            }
        }
        CharKind::Principal => {
            let p = need(job.p, "p", "character principal")?;
            let lam0 = AffineWeight::lambda0(rs.rank(), Q::from_integer(p - rs.dual_coxeter));
            principal_qhr_character(&rs, p, &lam0, rel).map_err(lib)?
        }
        CharKind::AdmissibleVacuum => {
            let p = need(job.p, "p", "character admissible-vacuum")?;
            let u = need(job.u, "u", "character admissible-vacuum")?;
            admissible_vacuum_character(&rs, p, u, rel).map_err(lib)?
        }
    };
    job.emit(render_character(job, &r))
}

/// Collected outcome of one verify run.
#[derive(Default)]
struct Outcome {
    exact: Vec<(String, ExactCheck)>,
    numeric: Vec<(String, Vec<TransformReport>)>,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.exact.iter().all(|(_, c)| c.pass) && self.numeric.iter().all(|(_, r)| r.iter().all(|x| x.pass))
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (label, c) in &self.exact {
            s += &format!(
                "{} {label} {}: exact through q^{} at jet {} ({})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.identity,
                c.upto,
                c.jet,
                c.detail
            );
        }
        for (label, reps) in &self.numeric {
            let max = reps.iter().map(|r| r.rel_dev).fold(0.0, f64::max);
            let tail = reps.iter().map(|r| r.tail_bound).fold(0.0, f64::max);
            let ok = reps.iter().all(|r| r.pass);
            s += &format!(
                "{} {label}: {} checks, max deviation {max:.3e}, max tail bound {tail:.3e}\n",
                if ok { "PASS" } else { "FAIL" },
                reps.len()
            );
            for r in reps.iter().filter(|r| !r.pass) {
                s += &format!("  {}\n", report::report_text(r));
            }
        }
        s
    }

    fn json(&self) -> serde_json::Value {
        let exact: Vec<_> = self
            .exact
            .iter()
            .map(|(l, c)| {
                json!({"label": l, "identity": c.identity, "pass": c.pass, "upto": c.upto.to_string(),
                       "jet": c.jet, "detail": c.detail})
            })
            .collect();
        let numeric: Vec<_> = self.numeric.iter().map(|(l, r)| json!({"label": l, "result": report::reports_json(r)})).collect();
        json!({"schema": report::SCHEMA_VERSION, "kind": "verify", "pass": self.pass(), "exact": exact, "numeric": numeric})
    }
}

fn run_verify(what: VerifyKind, job: &Job, which: Option<&str>, slow: bool, out: &mut Outcome) -> Res<()> {
    let rs = job.root_system()?;
    let label = job.algebra.clone();
    match what {
        VerifyKind::Theorem1 => {
            let k = need(job.level, "level", "verify theorem1")?;
            let wg = job.weyl(&rs)?;
            let spec = verify::theorem1_spec(&rs, k, job.direction()?).map_err(lib)?;
            let c = verify::theorem1(&rs, &wg, &spec, job.rel()?, job.jet).map_err(lib)?;
            out.exact.push((format!("{label} k={k}"), c));
        }
        VerifyKind::Remark4 => {
            if rs.cartan_type.letter == 'E' && !slow {
                return Err("precondition violated: remark4 on E-types is a long run; pass --slow".into());
            }
            let wg = job.weyl(&rs)?;
            let c = verify::remark4(&rs, &wg, job.rel()?, job.jet).map_err(lib)?;
            out.exact.push((label, c));
        }
        VerifyKind::Theorem2 => {
            let k = need(job.level, "level", "verify theorem2")?;
            let wg = job.weyl(&rs)?;
            let spec = verify::theorem1_spec(&rs, k, job.direction()?).map_err(lib)?;
            let laws = match which {
                Some(w) => vec![verify::parse_which(w).map_err(lib)?],
                None => verify::all_which(),
            };
            let reps = verify::theorem2(&rs, &wg, &spec, &laws, &job.sampling()?).map_err(lib)?;
            out.numeric.push((format!("{label} k={k} theorem2 {}", which.unwrap_or("all")), reps));
        }
        VerifyKind::Theorem4b => {
            let p = need(job.p, "p", "verify theorem4b")?;
            let u = need(job.u, "u", "verify theorem4b")?;
            let wg = job.weyl(&rs)?;
            let slice = job.slice(&rs, "minimal")?;
            let reps = verify::theorem4b(&rs, &wg, &slice, p, u, &job.sampling()?).map_err(lib)?;
            out.numeric.push((format!("{label} {} p={p} u={u} theorem4b", slice.kind_name()), reps));
        }
        VerifyKind::Theta => {
            let n = need(job.n, "n", "verify theta")?;
            let reps = verify::theta(&rs, n, &job.sampling()?).map_err(lib)?;
            out.numeric.push((format!("{label} n={n} theta"), reps));
        }
        VerifyKind::F => {
            let k = need(job.level, "level", "verify f")?;
            let wg = job.weyl(&rs)?;
            let reps = verify::f_laws(&rs, &wg, k, &job.sampling()?).map_err(lib)?;
            out.numeric.push((format!("{label} k={k} f"), reps));
        }
        VerifyKind::Denominator => {
            let slice = job.slice(&rs, "minimal")?;
            let reps = verify::denominator(&rs, &slice, &job.sampling()?).map_err(lib)?;
            out.numeric.push((format!("{label} {} denominator", slice.kind_name()), reps));
        }
        VerifyKind::All => {
            for step in desk_suite(job, slow) {
                run_verify(step.0, &step.1, step.2, slow, out)?;
            }
        }
    }
    Ok(())
}

/// The desk-scale suite behind `verify all`.
fn desk_suite(base: &Job, slow: bool) -> Vec<(VerifyKind, Job, Option<&'static str>)> {
    let mk = |alg: &str, level: Option<i64>, p: Option<i64>, u: Option<i64>, nil: Option<&str>, n: Option<i64>, order: i64, jet: usize| {
        let mut j = base.clone();
        j.algebra = alg.into();
        j.level = level;
        j.p = p;
        j.u = u;
        j.nilpotent = nil.map(String::from);
        j.n = n;
        j.order = order;
        j.jet = jet;
        j.seed_direction = None;
        j
    };
    let mut v = vec![
        (VerifyKind::Theorem1, mk("A1", Some(-1), None, None, None, None, 4, 6), None),
        (VerifyKind::Theorem1, mk("D4", Some(-1), None, None, None, None, 4, 6), None),
        (VerifyKind::Theorem1, mk("D4", Some(-2), None, None, None, None, 4, 6), None),
        (VerifyKind::Remark4, mk("D4", None, None, None, None, None, 4, 6), None),
        (VerifyKind::Theta, mk("A1", None, None, None, None, Some(2), 0, 0), None),
        (VerifyKind::Theta, mk("D4", None, None, None, None, Some(2), 0, 0), None),
        (VerifyKind::F, mk("A1", Some(1), None, None, None, None, 0, 0), None),
        (VerifyKind::F, mk("D4", Some(-2), None, None, None, None, 0, 0), None),
        (VerifyKind::Denominator, mk("A1", None, None, None, Some("minimal"), None, 0, 0), None),
        (VerifyKind::Denominator, mk("D4", None, None, None, Some("minimal"), None, 0, 0), None),
        (VerifyKind::Theorem2, mk("D4", Some(-2), None, None, None, None, 0, 0), None),
        (VerifyKind::Theorem4b, mk("A1", None, Some(4), Some(3), Some("minimal"), None, 0, 0), None),
        (VerifyKind::Theorem4b, mk("A2", None, Some(5), Some(3), Some("principal"), None, 0, 0), None),
    ];
    if slow {
        v.push((VerifyKind::Remark4, mk("E6", None, None, None, None, None, 3, 3), None));
    }
    v
}

fn verify_cmd(what: VerifyKind, job: &Job, which: Option<&str>, desk: bool, slow: bool) -> Res<bool> {
    if what == VerifyKind::All && !desk && !slow {
        eprintln!("note: verify all runs the desk-scale suite");
    }
    let mut out = Outcome::default();
    run_verify(what, job, which, slow, &mut out)?;
    let text = match job.format {
        Format::Json => report::to_pretty(&out.json()),
        Format::Plain => out.text(),
        Format::Csv => return Err("precondition violated: verify output supports plain or json, not csv".into()),
    };
    job.emit(text)?;
    Ok(out.pass())
}

fn info(what: InfoKind, job: &Job) -> Res<()> {
    let rs = job.root_system()?;
    let v = match what {
        InfoKind::Algebra => report::algebra_json(&rs),
        InfoKind::Slice => report::slice_json(&rs, &job.slice(&rs, "minimal")?),
    };
    if job.format == Format::Csv {
        return Err("precondition violated: info output supports plain or json, not csv".into());
    }
    job.emit(report::to_pretty(&v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Command::Character { kind, job } => character(*kind, job).map(|_| true),
        Command::Verify { what, job, which, desk, slow } => verify_cmd(*what, job, which.as_deref(), *desk, *slow),
        Command::Info { what, job } => info(*what, job).map(|_| true),
    };
    match r {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
