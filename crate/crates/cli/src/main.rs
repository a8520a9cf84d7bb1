use clap::{Parser, Subcommand, ValueEnum};
use cogalois::catalog::identify;
use cogalois::classify::{enumerate_mncg, enumerate_mnk, Bounds, Filter};
use cogalois::cocycle::{Triple, TripleJson};
use cogalois::group::{FiniteGroup, GroupJson};
use cogalois::kneser::is_cogalois_triple;
use cogalois::operator::{GammaGroup, GammaGroupJson};
use cogalois::rings::{build_local_ring, principal_unit_triples, quadratic_family, EisensteinData, RingClass};
use cogalois::selfaction::{adequate_units, deform, deformation_classes, SelfAction, UnitMethod};
use cogalois::verify::{run_suite, triple_report, SuiteConfig, SUITES};
use cogalois::Error;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "cogalois", version, about = "Finite operator groups, 1-cocycles and coGalois connexions")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// write the JSON result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Criterion,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a group, operator-group or triple file
    Validate { path: PathBuf },
    /// Kneser / coGalois / mnK / mncG report for a triple
    Check { path: PathBuf },
    /// Run a theorem-verification suite (or `all`)
    Verify { suite: String },
    /// Enumerate minimal non-Kneser triples
    EnumMnk(EnumArgs),
    /// Enumerate minimal non-coGalois triples
    EnumMncg(EnumArgs),
    /// Adequate units of Z/n
    AdequateUnits {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Deform a group by an adequate self-action
    Deform {
        group: PathBuf,
        /// cyclic group: ω(x)(y) = u^x·y
        #[arg(long, conflicts_with = "action")]
        unit: Option<usize>,
        /// JSON list of automorphism rows, one per element
        #[arg(long)]
        action: Option<PathBuf>,
        /// list all deformation classes instead
        #[arg(long)]
        classes: bool,
    },
    /// Principal local ring from Eisenstein data, with its principal-unit triples
    Ring {
        /// p,n,e,t,a0,...,a_{e-1}
        #[arg(long, value_delimiter = ',', required = true)]
        eisenstein: Vec<usize>,
        /// write the canonical triple here
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Quadratic-form family over F_p ⊕ W
    QuadFamily {
        p: usize,
        s: usize,
        /// symmetric matrix, rows separated by ';'
        #[arg(long)]
        lambda: String,
        #[arg(long, value_delimiter = ',')]
        lambda0: Option<Vec<usize>>,
    },
}

#[derive(clap::Args)]
struct EnumArgs {
    #[arg(long, default_value_t = 16)]
    max_gamma: usize,
    #[arg(long, default_value_t = 16)]
    max_g: usize,
    #[arg(long, default_value = "all")]
    filter: String,
    #[arg(long)]
    max_exponent: Option<usize>,
    #[arg(long)]
    coprime: bool,
}

/// Exit 1: mathematical violation; 2: input error; 3: bound exceeded.
#[derive(Debug)]
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderBoundExceeded { .. } => 3,
            Error::Inconsistent(_) => 1,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

fn input(msg: impl std::fmt::Display) -> Fail {
    Fail(2, msg.to_string())
}

fn read_json(path: &Path) -> Result<Value, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Fail> {
    serde_json::from_value(v).map_err(|e| input(format!("not a {what}: {e}")))
}

fn load_triple(path: &Path) -> Result<Triple, Fail> {
    let j: TripleJson = parse(read_json(path)?, "triple")?;
    Ok(Triple::from_json(&j)?)
}

fn load_group(path: &Path) -> Result<FiniteGroup, Fail> {
    let j: GroupJson = parse(read_json(path)?, "group")?;
    Ok(FiniteGroup::from_json(&j)?)
}

struct Output {
    format: Format,
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) -> Result<(), Fail> {
        let body = serde_json::to_string_pretty(value).expect("serializable");
        if let Some(p) = &self.out {
            std::fs::write(p, body + "\n").map_err(|e| input(format!("{}: {e}", p.display())))?;
            if matches!(self.format, Format::Text) {
                println!("{}", text());
            }
            return Ok(());
        }
        match self.format {
            Format::Json => println!("{body}"),
            Format::Text => println!("{}", text()),
        }
        Ok(())
    }
}

fn validate(path: &Path) -> Result<(), Fail> {
    let v = read_json(path)?;
    let kind = if v.get("gamma_group").is_some() {
        "triple"
    } else if v.get("action").is_some() {
        "gamma-group"
    } else {
        "group"
    };
    let checked = match kind {
        "triple" => Triple::from_json(&parse::<TripleJson>(v, kind)?).map(|_| ()),
        "gamma-group" => GammaGroup::from_json(&parse::<GammaGroupJson>(v, kind)?).map(|_| ()),
        _ => FiniteGroup::from_json(&parse::<GroupJson>(v, kind)?).map(|_| ()),
    };
    match checked {
        Ok(()) => {
            println!("{}: valid {kind}", path.display());
            Ok(())
        }
        Err(e @ Error::OrderBoundExceeded { .. }) => Err(e.into()),
        Err(e) => Err(Fail(1, format!("{}: invalid {kind}: {e}", path.display()))),
    }
}

fn enumerate(kind: &str, a: &EnumArgs, workers: usize, out: &Output) -> Result<(), Fail> {
    let filter: Filter = a.filter.parse()?;
    let bounds = Bounds { max_exponent: a.max_exponent, coprime: a.coprime, ..Bounds::new(a.max_gamma, a.max_g) };
    let run = if kind == "mnk" { enumerate_mnk(&bounds, filter, workers)? } else { enumerate_mncg(&bounds, filter, workers)? };
    let value = serde_json::to_value(run.to_json()).expect("serializable");
    out.emit(&value, || {
        let mut s = format!("{kind}: examined {} cocycles, {} hits, {} classes", run.examined, run.hits, run.classes.len());
        for c in &run.classes {
            s += &format!(
                "\n  |Γ|={:>2} {:<8} |𝔊|={:>2} {:<8} members={}",
                c.rep.gamma().order(),
                c.rep.gamma().name().unwrap_or("-"),
                c.rep.g().order(),
                c.rep.g().name().unwrap_or("-"),
                c.members
            );
        }
        s
    })?;
    if run.report.passed() {
        Ok(())
    } else {
        Err(Fail(1, format!("{} violations: {:?}", run.report.violations.len(), run.report.violations)))
    }
}

fn verify(suite: &str, cfg: &SuiteConfig, out: &Output) -> Result<(), Fail> {
    let ids: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    if ids.iter().any(|id| !SUITES.contains(id)) {
        return Err(input(format!("unknown suite {suite}; known: {}", SUITES.join(", "))));
    }
    let mut outcomes = Vec::new();
    for id in ids {
        outcomes.push(run_suite(id, cfg)?);
    }
    let value = serde_json::to_value(&outcomes).expect("serializable");
    out.emit(&value, || {
        outcomes
            .iter()
            .map(|o| {
                let mut s = format!(
                    "{} {:<15} {} checks, {} violations",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.suite,
                    o.report.checked,
                    o.report.violations.len()
                );
                for n in &o.notes {
                    s += &format!("\n    {n}");
                }
                for v in o.report.violations.iter().take(5) {
                    s += &format!("\n    ! {v}");
                }
                s
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(Fail(1, "violations found".into()))
    }
}

fn deform_cmd(group: &Path, unit: Option<usize>, action: Option<&Path>, classes: bool, out: &Output) -> Result<(), Fail> {
    let gamma = Arc::new(load_group(group)?);
    if classes {
        let cs = deformation_classes(&gamma)?;
        let value = json!(cs
            .iter()
            .map(|c| json!({"name": c.name, "actions": c.actions, "group": c.group.to_json()}))
            .collect::<Vec<_>>());
        return out.emit(&value, || {
            cs.iter().map(|c| format!("{} ({} actions)", c.name.as_deref().unwrap_or("?"), c.actions)).collect::<Vec<_>>().join("\n")
        });
    }
    let sa = match (unit, action) {
        (Some(u), _) => {
            let n = gamma.order();
            if !gamma.element_orders().contains(&n) {
                return Err(input("--unit needs a cyclic group"));
            }
            SelfAction::cyclic_unit(n, u)?
        }
        (None, Some(p)) => {
            let maps: Vec<Vec<u32>> = parse(read_json(p)?, "list of automorphism rows")?;
            SelfAction::new(gamma.clone(), maps)?
        }
        _ => return Err(input("give --unit, --action or --classes")),
    };
    let d = deform(&sa)?;
    let fwd = is_cogalois_triple(&d.forward)?;
    let back = is_cogalois_triple(&d.backward)?;
    let name = identify(&d.bullet).and_then(|i| cogalois::catalog::catalog()[i].name().map(str::to_string));
    let value = json!({
        "bullet": d.bullet.to_json(),
        "bullet_name": name,
        "forward": d.forward.to_json(),
        "backward": d.backward.to_json(),
        "forward_cogalois": fwd.cogalois,
        "backward_kneser": d.backward.is_surjective(),
        "backward_cogalois": back.cogalois,
    });
    let report = d.check();
    out.emit(&value, || {
        format!(
            "Γ_ω ≅ {}\nforward coGalois: {}\nbackward Kneser: {}, coGalois: {}",
            name.as_deref().unwrap_or("?"),
            fwd.cogalois,
            d.backward.is_surjective(),
            back.cogalois
        )
    })?;
    if report.passed() {
        Ok(())
    } else {
        Err(Fail(1, format!("{:?}", report.violations)))
    }
}

fn ring_cmd(data: &[usize], emit: Option<&Path>, out: &Output) -> Result<(), Fail> {
    if data.len() < 5 {
        return Err(input("--eisenstein needs p,n,e,t,a0,..."));
    }
    let d = EisensteinData::new(data[0], data[1], data[2], data[3], data[4..].to_vec())?;
    let ring = build_local_ring(&d)?;
    let u = principal_unit_triples(&ring)?;
    let canonical = u.mnk_triples().next().or(u.injective.first());
    if let (Some(path), Some(t)) = (emit, canonical) {
        let body = serde_json::to_string_pretty(&t.to_json()).expect("serializable");
        std::fs::write(path, body + "\n").map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    let value = json!({
        "data": d,
        "order": ring.len(),
        "nilpotency": ring.nilpotency(),
        "class": u.class,
        "injective": u.injective.len(),
        "mnk": u.mnk_count(),
        "predicted_mnk": u.predicted_mnk_count,
        "redundancy_classes": u.redundancy_classes.len(),
        "mnk_redundancy_classes": u.mnk_classes(),
        "iso_classes": u.iso_classes.len(),
        "pairing_nondegenerate": u.pairing_nondegenerate,
        "canonical": canonical.map(|t| t.eta.to_vec()),
    });
    out.emit(&value, || {
        format!(
            "|R| = {}, m = {}, {}\ninjective cocycles: {}, mnK: {} (predicted {:?}), redundancy classes: {} ({} with mnK), iso classes: {}",
            ring.len(),
            ring.nilpotency(),
            u.class,
            u.injective.len(),
            u.mnk_count(),
            u.predicted_mnk_count,
            u.redundancy_classes.len(),
            u.mnk_classes(),
            u.iso_classes.len()
        )
    })?;
    let covered = matches!(u.class, RingClass::Principal { case: Some(_), .. });
    let consistent = !covered || (u.mnk_classes() == 1 && u.predicted_mnk_count == Some(u.mnk_count()));
    if consistent {
        Ok(())
    } else {
        Err(Fail(1, "redundancy count disagrees with prediction".into()))
    }
}

fn quad_cmd(p: usize, s: usize, lambda: &str, lambda0: Option<Vec<usize>>, out: &Output) -> Result<(), Fail> {
    let lam: Vec<Vec<usize>> = lambda
        .split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| input(format!("--lambda: {e}")))).collect())
        .collect::<Result<_, _>>()?;
    let l0 = lambda0.unwrap_or_else(|| vec![0; s]);
    let v = quadratic_family(p, s, &l0, &lam)?;
    let value = json!({
        "det": v.det,
        "mnk_by_det": v.mnk_by_det,
        "mnk": v.mnk,
        "square_discriminant": v.square_discriminant,
        "triple": v.triple.to_json(),
    });
    out.emit(&value, || format!("det Λ = {}; mnK: {} (det criterion: {})", v.det, v.mnk, v.mnk_by_det))?;
    if v.agree() {
        Ok(())
    } else {
        Err(Fail(1, "is_mnk disagrees with det Λ".into()))
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    if cli.workers == 0 {
        return Err(input("--workers must be at least 1"));
    }
    let out = Output { format: cli.report, out: cli.out.clone() };
    match cli.cmd {
        Cmd::Validate { path } => validate(&path),
        Cmd::Check { path } => {
            let t = load_triple(&path)?;
            let rep = triple_report(&t)?;
            let value = serde_json::to_value(&rep).expect("serializable");
            out.emit(&value, || {
                let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
                format!(
                    "|Γ|={} |𝔊|={} generating={} normalized={}\nkneser={} cogalois={} mnk={} mncg={}\nideals={} nk_max={:?} ncg_max={:?}",
                    rep.gamma_order,
                    rep.g_order,
                    rep.generating,
                    rep.normalized,
                    rep.kneser,
                    opt(rep.cogalois),
                    opt(rep.mnk),
                    opt(rep.mncg),
                    rep.ideals.len(),
                    rep.nk_max,
                    rep.ncg_max
                )
            })?;
            if rep.violations.is_empty() {
                Ok(())
            } else {
                Err(Fail(1, format!("{:?}", rep.violations)))
            }
        }
        Cmd::Verify { suite } => verify(&suite, &SuiteConfig { workers: cli.workers, seed: cli.seed }, &out),
        Cmd::EnumMnk(a) => enumerate("mnk", &a, cli.workers, &out),
        Cmd::EnumMncg(a) => enumerate("mncg", &a, cli.workers, &out),
        Cmd::AdequateUnits { n, method } => {
            let m = match method {
                Method::Brute => UnitMethod::Brute,
                Method::Criterion => UnitMethod::Criterion,
                Method::Both => UnitMethod::Both,
            };
            let units = adequate_units(n, m)?;
            out.emit(&json!({"n": n, "units": units}), || format!("{units:?}"))
        }
        Cmd::Deform { group, unit, action, classes } => deform_cmd(&group, unit, action.as_deref(), classes, &out),
        Cmd::Ring { eisenstein, emit } => ring_cmd(&eisenstein, emit.as_deref(), &out),
        Cmd::QuadFamily { p, s, lambda, lambda0 } => quad_cmd(p, s, &lambda, lambda0, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
