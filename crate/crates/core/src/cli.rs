//! Command-line front end. The binary only forwards its arguments to
//! [`run`]; everything is reachable in-process for testing.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cache::{content_key, Cache};
use crate::canonical::{label_key, BasisTableFile, CanonicalBasis, Label};
use crate::checks::{self, Violation};
use crate::cluster::{verify_conjecture, VerifyConfig};
use crate::error::{Error, Result};
use crate::preproj::{enumerate_modules, indecomposables, mutate_rigid, PreprojModule};
use crate::presets::{self, Preset};
use crate::quiver::{WeightVector, WeylWord};
use crate::report::{emit_report, Format, Record, Report, ReportItem};

#[derive(Parser, Debug)]
#[command(name = "uqbasis", version, about = "Canonical bases, crystals and quantum cluster checks in small simply-laced types")]
pub struct Cli {
    /// Worker threads; 0 uses one per core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Preset name: A2, A3, A4, D4 (a "-w0" suffix is accepted).
    #[arg(long = "type", visible_alias = "preset", default_value = "A2")]
    pub preset: String,
    /// Height bound; defaults to the preset's.
    #[arg(long)]
    pub height: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical basis tables for every weight up to the height.
    Basis {
        #[command(flatten)]
        common: Common,
        /// Reduced word of w0 overriding the preset's i0, e.g. 2,1,2.
        #[arg(long)]
        word: Option<String>,
        /// A single weight instead of all weights up to the height.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Crystal data of one label or of all labels up to the height.
    Crystal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        label: Option<String>,
    },
    /// B(w) by PBW monomials and by the crystal recursion, compared.
    Bw {
        #[command(flatten)]
        common: Common,
        /// Reduced word of w.
        #[arg(long)]
        word: String,
    },
    /// Preprojective modules: indecomposables, rigidity against open
    /// orbits, or a mutation of the preset's rigid collection.
    Preproj {
        #[command(flatten)]
        common: Common,
        /// Enumerate every class of this dimension vector instead.
        #[arg(long)]
        dim: Option<String>,
        /// Mutate the preset collection at this summand (1-based).
        #[arg(long)]
        mutate: Option<usize>,
    },
    /// Checks that quantum cluster monomials are dual canonical.
    ClusterVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        exp: u32,
        /// Only cluster variables, not all monomials.
        #[arg(long)]
        vars_only: bool,
    },
    /// The epsilon bound set of a label and its desk checks.
    SsBound {
        #[command(flatten)]
        common: Common,
        /// Defaults to b(f_i) for the first letter i of i0.
        #[arg(long)]
        label: Option<String>,
    },
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

#[derive(Serialize)]
struct FailureReport<'a> {
    command: &'a str,
    status: &'static str,
    violations: &'a [Violation],
}

/// Parsed result before writing: the payload and any violations.
struct Produced {
    payload: Vec<u8>,
    violations: Vec<Violation>,
}

fn usage(code: i32, msg: &str) -> Outcome {
    Outcome { code, stdout: Vec::new(), stderr: format!("error: {msg}\n").into_bytes() }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownPreset(_)
            | Error::NotReduced(_)
            | Error::BadVertex(_)
            | Error::InvalidArgument(_)
            | Error::Shape(_)
            | Error::Frozen(_)
            | Error::UnsupportedType(_)
            | Error::HeightBound(..)
    )
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string().into_bytes();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: Vec::new() }
            } else {
                Outcome { code, stdout: Vec::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => return usage(2, &e.to_string()),
    };
    let name = command_name(&cli.command);
    match pool.install(|| execute(&cli.command)) {
        Ok((p, common)) => finish(name, p, &common),
        Err(e) if is_usage_error(&e) => usage(2, &e.to_string()),
        Err(e) => {
            let v = vec![Violation::new("computation", e.to_string())];
            failure(name, Vec::new(), &v)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Basis { .. } => "basis",
        Command::Crystal { .. } => "crystal",
        Command::Bw { .. } => "bw",
        Command::Preproj { .. } => "preproj",
        Command::ClusterVerify { .. } => "cluster-verify",
        Command::SsBound { .. } => "ss-bound",
    }
}

fn failure(name: &str, stdout: Vec<u8>, v: &[Violation]) -> Outcome {
    let rep = FailureReport { command: name, status: "fail", violations: v };
    let mut stderr = serde_json::to_vec_pretty(&rep).unwrap_or_default();
    stderr.push(b'\n');
    Outcome { code: 1, stdout, stderr }
}

fn finish(name: &str, p: Produced, common: &Common) -> Outcome {
    let stdout = match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &p.payload) {
                return usage(2, &format!("cannot write {}: {e}", path.display()));
            }
            Vec::new()
        }
        None => p.payload,
    };
    if p.violations.is_empty() {
        Outcome { code: 0, stdout, stderr: Vec::new() }
    } else {
        failure(name, stdout, &p.violations)
    }
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad {what} {s:?}"))))
        .collect()
}

fn parse_label(cb: &CanonicalBasis, s: &str) -> Result<Label> {
    let v = parse_ints(s, "label")?;
    if v.len() != cb.word().len() || v.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!("label {s:?} needs {} nonnegative entries", cb.word().len())));
    }
    Ok(v.into_iter().map(|x| x as u32).collect())
}

fn parse_weight(rank: usize, s: &str) -> Result<WeightVector> {
    let v = WeightVector(parse_ints(s, "weight")?);
    if v.rank() != rank || !v.is_nonnegative() {
        return Err(Error::InvalidArgument(format!("weight {s:?} needs {rank} nonnegative entries")));
    }
    Ok(v)
}

fn height_of(common: &Common, p: &Preset) -> Result<i64> {
    let h = common.height.unwrap_or(p.height_bound);
    if h < 0 {
        return Err(Error::InvalidArgument("height must be nonnegative".into()));
    }
    Ok(h)
}

fn produce(report: Report, common: &Common, violations: Vec<Violation>) -> Result<Produced> {
    Ok(Produced { payload: emit_report(&report, common.format)?, violations })
}

fn execute(cmd: &Command) -> Result<(Produced, Common)> {
    match cmd {
        Command::Basis { common, word, weight } => basis(common, word.as_deref(), weight.as_deref()),
        Command::Crystal { common, label } => crystal(common, label.as_deref()),
        Command::Bw { common, word } => bw(common, word),
        Command::Preproj { common, dim, mutate } => preproj(common, dim.as_deref(), *mutate),
        Command::ClusterVerify { common, depth, exp, vars_only } => cluster(common, *depth, *exp, *vars_only),
        Command::SsBound { common, label } => ss_bound(common, label.as_deref()),
    }
    .map(|p| (p, command_common(cmd).clone()))
}

fn command_common(cmd: &Command) -> &Common {
    match cmd {
        Command::Basis { common, .. }
        | Command::Crystal { common, .. }
        | Command::Bw { common, .. }
        | Command::Preproj { common, .. }
        | Command::ClusterVerify { common, .. }
        | Command::SsBound { common, .. } => common,
    }
}

/// The preset's canonical basis, refused up front where the PBW bootstrap
/// is out of reach.
fn canonical(p: &Preset) -> Result<CanonicalBasis> {
    if !p.canonical {
        return Err(Error::UnsupportedType(p.name.clone()));
    }
    CanonicalBasis::preset(&p.name)
}

fn basis_for(p: &Preset, word: Option<&str>) -> Result<CanonicalBasis> {
    if !p.canonical {
        return Err(Error::UnsupportedType(p.name.clone()));
    }
    match word {
        None => canonical(p),
        Some(w) => {
            let w = WeylWord::parse(w)?;
            let d = p.datum()?;
            if !d.is_reduced(&w) {
                return Err(Error::NotReduced(w.letters));
            }
            if w.len() != p.word.len() {
                return Err(Error::InvalidArgument(format!("{w} is not a word for w0")));
            }
            CanonicalBasis::with_word(d, &w)
        }
    }
}

#[derive(Serialize, serde::Deserialize)]
struct CachedTable {
    table: BasisTableFile,
    violations: Vec<Violation>,
}

fn basis(common: &Common, word: Option<&str>, weight: Option<&str>) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let cb = basis_for(&p, word)?;
    let weights = match weight {
        Some(s) => vec![parse_weight(p.rank, s)?],
        None => checks::weights_up_to(&cb, height_of(common, &p)?),
    };
    let cache = Cache::from_env();
    let src = presets::source(&common.preset)?;
    let word_key = label_key(&cb.word().letters.iter().map(|&x| x as u32).collect::<Vec<_>>());
    let mut items = Vec::new();
    let mut violations = Vec::new();
    for nu in &weights {
        let key = content_key(&[src.as_bytes(), word_key.as_bytes(), serde_json::to_string(nu)?.as_bytes()]);
        let entry: CachedTable = cache.get_or_compute("basis", &key, || {
            let violations = checks::table_integrity(&cb, nu)?;
            Ok(CachedTable { table: cb.basis_table_json(&p.name, nu)?, violations })
        })?;
        violations.extend(entry.violations);
        items.push(ReportItem::BasisTable(entry.table));
    }
    produce(Report { items }, common, violations)
}

fn crystal(common: &Common, label: Option<&str>) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let cb = canonical(&p)?;
    let labels = match label {
        Some(s) => vec![parse_label(&cb, s)?],
        None => cb.labels_up_to(height_of(common, &p)?),
    };
    let vs: Vec<_> = cb.datum().vertices().collect();
    let mut items = Vec::new();
    let mut violations = Vec::new();
    for c in &labels {
        let mut eps = Vec::new();
        let mut eps_star = Vec::new();
        let mut phi = Vec::new();
        let mut e = Vec::new();
        let mut f = Vec::new();
        for &i in &vs {
            eps.push(cb.epsilon(i, c)?);
            eps_star.push(cb.epsilon_star(i, c)?);
            phi.push(cb.phi(i, c)?);
            let ei = cb.e_tilde(i, c)?;
            let fi = cb.f_tilde(i, c)?;
            if cb.e_tilde(i, &fi)?.as_ref() != Some(c) {
                violations.push(Violation::new("e_i f_i = id", format!("i = {i}, {}", label_key(c))));
            }
            e.push(ei.map(|x| label_key(&x)));
            f.push(label_key(&fi));
        }
        let r = Record::new("crystal")
            .with("label", label_key(c))
            .with("weight", &cb.weight_of(c))
            .with("epsilon", eps)
            .with("epsilon_star", eps_star)
            .with("phi", phi)
            .with("e", e)
            .with("f", f)
            .with("star", label_key(&cb.star_label(c)?));
        items.push(ReportItem::Record(r));
    }
    produce(Report { items }, common, violations)
}

fn bw(common: &Common, word: &str) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let w = WeylWord::parse(word)?;
    let cb = canonical(&p)?;
    if !cb.datum().is_reduced(&w) {
        return Err(Error::NotReduced(w.letters));
    }
    let h = common.height.unwrap_or(6);
    let violations = checks::bw_route_agreement(&cb, &w, h)?;
    let members = cb.bw_members_crystal(&w, h)?;
    let r = Record::new("bw")
        .with("word", &w.letters)
        .with("height", h)
        .with("count", members.len())
        .with("members", members.iter().map(|c| label_key(c)).collect::<Vec<_>>())
        .with("routes_agree", violations.is_empty());
    produce(Report { items: vec![ReportItem::Record(r)] }, common, violations)
}

fn module_record(cb: &CanonicalBasis, m: &PreprojModule) -> Result<(Record, Option<Violation>)> {
    let rigid = m.is_rigid()?;
    let open = m.is_open_orbit()?;
    let mut r = Record::new("module")
        .with("dim", &m.dim().0)
        .with("indecomposable", m.is_indecomposable()?)
        .with("rigid", rigid)
        .with("open_orbit", open)
        .with("module", m.to_file());
    if m.is_indecomposable()? && cb.datum().rank() <= 3 {
        r = r.with("label", label_key(&m.crystal_label(cb)?));
    }
    let v = (rigid != open).then(|| Violation::new("rigid iff open orbit", serde_json::to_string(&m.to_file()).unwrap_or_default()));
    Ok((r, v))
}

fn preproj(common: &Common, dim: Option<&str>, mutate: Option<usize>) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let d = p.datum()?;
    let o = p.orientation()?;
    let bounds = p.enumeration.clone().ok_or_else(|| Error::UnsupportedType(p.name.clone()))?;
    let cb = canonical(&p)?;
    let mut items = Vec::new();
    let mut violations = Vec::new();
    if let Some(k) = mutate {
        let t = p.rigid_collection()?.ok_or_else(|| Error::InvalidArgument(format!("{} has no rigid collection", p.name)))?;
        if k == 0 || k > t.len() {
            return Err(Error::InvalidArgument(format!("summand {k} out of range 1..={}", t.len())));
        }
        let mu = mutate_rigid(&t, k - 1)?;
        let back = mutate_rigid(&mu.collection, k - 1)?;
        if !back.collection.same_up_to_iso(&t)? {
            violations.push(Violation::new("mutation involutive", format!("summand {k}")));
        }
        let lab = |m: &PreprojModule| -> Result<String> { Ok(label_key(&m.crystal_label(&cb)?)) };
        let names = |mult: &[usize]| -> Vec<String> {
            mult.iter()
                .zip(t.summands())
                .filter(|(&n, _)| n > 0)
                .map(|(&n, s)| if n == 1 { s.label.clone() } else { format!("{}^{n}", s.label) })
                .collect()
        };
        let r = Record::new("mutation")
            .with("k", k)
            .with("old", &t.summands()[k - 1].label)
            .with("old_label", lab(&t.summands()[k - 1].module)?)
            .with("new_label", lab(&mu.complement)?)
            .with("complement", mu.complement.to_file())
            .with("t_prime", names(&mu.t_prime_mult))
            .with("t_double_prime", names(&mu.t_double_prime_mult))
            .with("t_prime_label", lab(&mu.t_prime)?)
            .with("t_double_prime_label", lab(&mu.t_double_prime)?)
            .with("collection", mu.collection.to_files());
        items.push(ReportItem::Record(r));
        return produce(Report { items }, common, violations);
    }
    let modules = match dim {
        Some(s) => enumerate_modules(&d, &o, &parse_weight(p.rank, s)?, &bounds.entries)?,
        None => indecomposables(&d, &o, &WeightVector(bounds.bound.clone()), &bounds.entries)?,
    };
    for m in &modules {
        let (r, v) = module_record(&cb, m)?;
        items.push(ReportItem::Record(r));
        violations.extend(v);
    }
    produce(Report { items }, common, violations)
}

fn cluster(common: &Common, depth: usize, exp: u32, vars_only: bool) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let cb = canonical(&p)?;
    let cfg = VerifyConfig { depth, exp_bound: exp, variables_only: vars_only };
    let rep = verify_conjecture(&cb, &common.preset, &p.i0(), &cfg)?;
    let mut violations = Vec::new();
    for m in rep.monomials.iter().filter(|m| m.status != "pass") {
        violations.push(Violation::new("cluster monomial is dual canonical", format!("{:?}: {}", m.exponents, m.status)));
    }
    for e in rep.exchange_log.iter().filter(|e| e.status != "pass") {
        violations.push(Violation::new("exchange identity", format!("seed {} k {}: {}", e.seed, e.k, e.status)));
    }
    let payload = match common.format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&rep)?;
            v.push(b'\n');
            v
        }
        f => emit_report(&Report { items: vec![ReportItem::Verification(rep)] }, f)?,
    };
    Ok(Produced { payload, violations })
}

fn ss_bound(common: &Common, label: Option<&str>) -> Result<Produced> {
    let p = Preset::load(&common.preset)?;
    let cb = canonical(&p)?;
    let h = common.height.unwrap_or(6);
    let c = match label {
        Some(s) => parse_label(&cb, s)?,
        None => cb.f_tilde(cb.word().letters[0], &cb.zero_label())?,
    };
    if cb.weight_of(&c).height() > h {
        return Err(Error::InvalidArgument(format!("height {h} is below the height of {}", label_key(&c))));
    }
    let set = cb.epsilon_bound_set(&c, h)?;
    let violations = checks::epsilon_bound_checks(&cb, h)?;
    let r = Record::new("epsilon_bound_set")
        .with("label", label_key(&c))
        .with("height", h)
        .with("count", set.len())
        .with("members", set.iter().map(|x| label_key(x)).collect::<Vec<_>>());
    produce(Report { items: vec![ReportItem::Record(r)] }, common, violations)
}
