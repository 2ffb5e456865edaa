use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use novikov_core::classify::{
    classify_k1, generate_instance, k2_condition, k2_params_of, make_family, make_k2,
    random_k2_params, scramble, ClassifyError,
};
use novikov_core::exactlin::{format_rational, Mat, Rational};
use novikov_core::{
    find_nondegenerate, invariant_form_space, is_invariant, isotropy_check, theorem_check,
    CanonError, FormError, SymForm, TheoremReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{matrix_strings, parse, serialize, FileError, Metadata, Parsed};

#[derive(Debug, Parser)]
#[command(name = "novikov", version, about = "Exact checks for fermionic Novikov algebras with invariant forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the left-symmetric, fermionic and Novikov identity checks.
    Check(InputArgs),
    /// Print the invariant form space and a nondegenerate member.
    Forms(InputArgs),
    /// Build the canonical basis and check every structure claim.
    Canon(InputArgs),
    /// Print the derived dimension and the family for k = 1.
    Classify(InputArgs),
    /// Run the full check over a generated, scrambled corpus.
    Verify(VerifyArgs),
    /// Write a family file.
    Gen(GenArgs),
    /// Write the input in a seeded random basis.
    Scramble(ScrambleArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Print a JSON report.
    #[arg(long)]
    pub json: bool,
    /// Random seed.
    #[arg(long, env = "NOVIKOV_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Algebra file, or `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of corpus instances.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Family 0, 1, 2, 3, or `k2` for a random derived-dimension-two algebra.
    #[arg(long)]
    pub variant: String,
    #[arg(long)]
    pub dim: usize,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ScrambleArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    File(#[from] FileError),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error("form is degenerate ({zero} zero directions)")]
    DegenerateForm { zero: usize },
    #[error("form has dimension {found}, algebra has dimension {expected}")]
    FormDimension { expected: usize, found: usize },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::File(e) => e.kind(),
            CliError::Read { .. } => "read",
            CliError::Write { .. } => "write",
            CliError::DegenerateForm { .. } => "degenerate-form",
            CliError::FormDimension { .. } => "form-dimension",
            CliError::Usage(_) => "usage",
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::Degenerate { zero } => CliError::DegenerateForm { zero },
            FormError::DimensionMismatch { expected, found } => CliError::FormDimension { expected, found },
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }
}

/// A finished command: its status, a text rendering and a JSON report.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Command {
    pub fn json(&self) -> bool {
        self.common().json
    }

    fn common(&self) -> &CommonArgs {
        match self {
            Command::Check(a) | Command::Forms(a) | Command::Canon(a) | Command::Classify(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Gen(a) => &a.common,
            Command::Scramble(a) => &a.common,
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Check(args) => check(&load(&args.input)?),
        Command::Forms(args) => forms(&load(&args.input)?, args.common.seed),
        Command::Canon(args) => canon(&load(&args.input)?, args.common.seed),
        Command::Classify(args) => classify(&load(&args.input)?),
        Command::Verify(args) => Ok(verify(args.common.seed, args.count)),
        Command::Gen(args) => gen(args),
        Command::Scramble(args) => scramble_file(args),
    }
}

fn load(path: &Path) -> Result<Parsed, CliError> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map_err(|e| CliError::Read {
            path: "-".into(),
            message: e.to_string(),
        })?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?
    };
    Ok(parse(&bytes)?)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_text(m: &Mat) -> String {
    let rows = matrix_strings(m);
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

pub fn check(parsed: &Parsed) -> Result<Outcome, CliError> {
    let a = &parsed.algebra;
    let (ls, fe, nv) = (a.check_left_symmetric(), a.check_fermionic(), a.check_novikov());
    Ok(Outcome {
        status: Status::of(ls && fe && nv),
        text: format!("left-symmetric: {ls}\nfermionic: {fe}\nnovikov: {nv}\n"),
        json: json!({
            "command": "check",
            "dim": a.dim(),
            "left_symmetric": ls,
            "fermionic": fe,
            "novikov": nv,
        }),
    })
}

pub fn forms(parsed: &Parsed, seed: u64) -> Result<Outcome, CliError> {
    let a = &parsed.algebra;
    let space = invariant_form_space(a);
    let found = find_nondegenerate(&space, seed);
    let mut text = format!("invariant form space dimension: {}\n", space.len());
    match &found {
        Some(f) => {
            let (plus, minus) = f.form_type();
            let _ = write!(text, "nondegenerate member, type ({plus}, {minus}):\n{}", matrix_text(f.matrix()));
        }
        None => text.push_str("no nondegenerate member found\n"),
    }
    let given = match &parsed.form {
        Some(f) => {
            let invariant = is_invariant(a, f)?;
            let _ = writeln!(
                text,
                "given form: invariant {invariant}, nondegenerate {}",
                f.is_nondegenerate()
            );
            json!({
                "invariant": invariant,
                "nondegenerate": f.is_nondegenerate(),
                "form_type": f.form_type(),
            })
        }
        None => Value::Null,
    };
    Ok(Outcome {
        status: Status::of(found.is_some()),
        text,
        json: json!({
            "command": "forms",
            "dim": a.dim(),
            "space_dimension": space.len(),
            "basis": space.iter().map(matrix_strings).collect::<Vec<_>>(),
            "nondegenerate": found.as_ref().map(|f| matrix_strings(f.matrix())),
            "form_type": found.as_ref().map(SymForm::form_type),
            "given_form": given,
        }),
    })
}

/// The form a command works with: the file's own, else a found one.
fn working_form(parsed: &Parsed, seed: u64) -> Result<Option<SymForm>, CliError> {
    match &parsed.form {
        Some(f) if f.dim() != parsed.algebra.dim() => Err(CliError::FormDimension {
            expected: parsed.algebra.dim(),
            found: f.dim(),
        }),
        Some(f) if !f.is_nondegenerate() => Err(CliError::DegenerateForm { zero: f.signature().zero }),
        Some(f) => Ok(Some(f.clone())),
        None => Ok(find_nondegenerate(&invariant_form_space(&parsed.algebra), seed)),
    }
}

fn failure(command: &str, reason: String) -> Outcome {
    Outcome {
        status: Status::Fail,
        text: format!("{reason}\n"),
        json: json!({ "command": command, "failure": reason }),
    }
}

/// Property failures become a failing outcome; input problems stay errors.
fn canon_failure(command: &str, e: CanonError) -> Result<Outcome, CliError> {
    match e {
        CanonError::Form(f) => Err(f.into()),
        CanonError::Algebra(a) => Err(CliError::Usage(a.to_string())),
        other => Ok(failure(command, other.to_string())),
    }
}

fn theorem_json(r: &TheoremReport) -> Value {
    let rep = &r.report;
    json!({
        "form_type": r.form_type,
        "k": r.k,
        "x0": strings(rep.x0.coords()),
        "basis": matrix_strings(&rep.basis),
        "pair_weights": strings(&rep.pair_weights),
        "pair_signs": rep.pair_signs,
        "complement_diag": strings(&rep.complement_diag),
        "d_forms": rep.d_forms.iter().map(matrix_strings).collect::<Vec<_>>(),
        "claims": r.claims.named().iter().map(|(n, ok)| (n.to_string(), json!(ok))).collect::<serde_json::Map<_, _>>(),
        "rank_within_negative_index": r.rank_within_negative_index,
        "novikov": r.novikov,
        "derived_dim": r.derived_dim,
        "holds": r.holds(),
    })
}

pub fn canon(parsed: &Parsed, seed: u64) -> Result<Outcome, CliError> {
    let Some(form) = working_form(parsed, seed)? else {
        return Ok(failure("canon", "no nondegenerate invariant form found".into()));
    };
    let r = match theorem_check(&parsed.algebra, &form, seed) {
        Ok(r) => r,
        Err(e) => return canon_failure("canon", e),
    };
    let rep = &r.report;
    let mut text = String::new();
    let _ = writeln!(text, "form type: ({}, {})", r.form_type.0, r.form_type.1);
    let _ = writeln!(text, "k: {}", r.k);
    let _ = writeln!(text, "x0: [{}]", strings(rep.x0.coords()).join(", "));
    let _ = write!(text, "basis (columns u1, w1, ..., complement):\n{}", matrix_text(&rep.basis));
    let _ = writeln!(text, "pair weights: [{}]", strings(&rep.pair_weights).join(", "));
    let _ = writeln!(text, "pair signs: {:?}", rep.pair_signs);
    let _ = writeln!(text, "complement norms: [{}]", strings(&rep.complement_diag).join(", "));
    for (j, d) in rep.d_forms.iter().enumerate() {
        if !d.is_zero() {
            let _ = write!(text, "d for e'{}:\n{}", j + 1, matrix_text(d));
        }
    }
    for (name, ok) in r.claims.named() {
        let _ = writeln!(text, "{name}: {ok}");
    }
    let _ = writeln!(text, "rank within negative index: {}", r.rank_within_negative_index);
    let _ = writeln!(text, "novikov: {}", r.novikov);
    let _ = writeln!(text, "dim AA: {}", r.derived_dim);
    let mut j = theorem_json(&r);
    j["command"] = json!("canon");
    Ok(Outcome {
        status: Status::of(r.holds()),
        text,
        json: j,
    })
}

pub fn classify(parsed: &Parsed) -> Result<Outcome, CliError> {
    let a = &parsed.algebra;
    let k = a.derived_dim();
    let mut j = json!({ "command": "classify", "k": k });
    let class = match k {
        0 => "k=0".to_string(),
        1 => match classify_k1(a) {
            Ok(v) => {
                j["variant"] = json!(v.number());
                format!("variant {}", v.number())
            }
            Err(ClassifyError::Algebra(e)) => return Err(CliError::Usage(e.to_string())),
            Err(e) => return Ok(failure("classify", e.to_string())),
        },
        _ => {
            let shape = k2_params_of(a).is_some();
            j["k2_shape"] = json!(shape);
            if shape {
                j["k2_condition"] = json!(k2_condition(a).expect("shape checked"));
            }
            "k>=2".to_string()
        }
    };
    j["class"] = json!(class);
    let mut text = format!("k: {k}\nclass: {}\n", class.replace(">=", "≥"));
    if let Some(c) = j.get("k2_condition") {
        let _ = writeln!(text, "k2 condition: {c}");
    }
    Ok(Outcome {
        status: Status::Pass,
        text,
        json: j,
    })
}

/// One corpus instance checked end to end.
fn verify_instance(seed: u64, index: usize) -> (bool, Value, String) {
    let inst = match generate_instance(seed, index) {
        Ok(inst) => inst,
        Err(e) => {
            let reason = e.to_string();
            return (
                false,
                json!({ "index": index, "pass": false, "failure": reason }),
                format!("instance {index}: generation failed: {reason}"),
            );
        }
    };
    let theorem = theorem_check(&inst.algebra, &inst.form, inst.seed);
    let iso = isotropy_check(&inst.algebra, &inst.form);
    match (theorem, iso) {
        (Ok(r), Ok(iso)) => {
            let pass = r.holds() && iso.images_isotropic && iso.ranks_within_negative_index;
            let mut j = theorem_json(&r);
            let obj = j.as_object_mut().expect("object");
            for key in ["basis", "d_forms", "x0", "pair_weights", "complement_diag"] {
                obj.remove(key);
            }
            obj.insert("index".into(), json!(index));
            obj.insert("label".into(), json!(inst.label));
            obj.insert("dim".into(), json!(inst.algebra.dim()));
            obj.insert("images_isotropic".into(), json!(iso.images_isotropic));
            obj.insert("ranks_within_negative_index".into(), json!(iso.ranks_within_negative_index));
            obj.insert("pass".into(), json!(pass));
            let line = format!(
                "instance {index}: {} type ({}, {}) k={} {}",
                inst.label,
                r.form_type.0,
                r.form_type.1,
                r.k,
                if pass { "pass" } else { "FAIL" }
            );
            (pass, j, line)
        }
        (Err(e), _) | (_, Err(e)) => {
            let reason = e.to_string();
            (
                false,
                json!({ "index": index, "label": inst.label, "pass": false, "failure": reason }),
                format!("instance {index}: {} FAIL: {reason}", inst.label),
            )
        }
    }
}

pub fn verify(seed: u64, count: usize) -> Outcome {
    let mut text = String::new();
    let mut instances = Vec::with_capacity(count);
    let mut passed = 0;
    for index in 0..count {
        let (pass, j, line) = verify_instance(seed, index);
        passed += usize::from(pass);
        instances.push(j);
        text.push_str(&line);
        text.push('\n');
    }
    let _ = writeln!(text, "{passed}/{count} pass");
    Outcome {
        status: Status::of(passed == count),
        text,
        json: json!({
            "command": "verify",
            "seed": seed,
            "count": count,
            "passed": passed,
            "instances": instances,
        }),
    }
}

fn emit_file(contents: String, output: Option<&Path>, command: &str) -> Result<Outcome, CliError> {
    match output {
        None => Ok(Outcome {
            status: Status::Pass,
            json: serde_json::from_str(&contents).expect("serialized file is JSON"),
            text: contents,
        }),
        Some(path) => {
            std::fs::write(path, &contents).map_err(|e| CliError::Write {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(Outcome {
                status: Status::Pass,
                text: format!("wrote {}\n", path.display()),
                json: json!({ "command": command, "output": path.display().to_string() }),
            })
        }
    }
}

fn gen(args: &GenArgs) -> Result<Outcome, CliError> {
    let seed = args.common.seed;
    let (name, algebra) = if args.variant == "k2" {
        if args.dim < 5 {
            return Err(CliError::Usage(format!("k2 needs dimension at least 5, got {}", args.dim)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ("k2".to_string(), make_k2(&random_k2_params(&mut rng, args.dim)))
    } else {
        let variant: u8 = args
            .variant
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown variant {:?}", args.variant)))?;
        let algebra = make_family(variant, args.dim).map_err(|e| CliError::Usage(e.to_string()))?;
        (format!("family {variant}"), algebra)
    };
    let form = find_nondegenerate(&invariant_form_space(&algebra), seed);
    let metadata = Metadata {
        name: Some(format!("{name} n={}", args.dim)),
        seed: Some(seed),
    };
    emit_file(serialize(&algebra, form.as_ref(), Some(metadata)), args.output.as_deref(), "gen")
}

fn scramble_file(args: &ScrambleArgs) -> Result<Outcome, CliError> {
    let parsed = load(&args.input)?;
    let n = parsed.algebra.dim();
    if let Some(f) = &parsed.form {
        if f.dim() != n {
            return Err(CliError::FormDimension { expected: n, found: f.dim() });
        }
    }
    let carrier = parsed
        .form
        .clone()
        .unwrap_or_else(|| SymForm::new(Mat::identity(n)).expect("identity is symmetric"));
    let (algebra, form, _) =
        scramble(&parsed.algebra, &carrier, args.common.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let name = parsed.metadata.as_ref().and_then(|m| m.name.clone());
    let metadata = Metadata {
        name: Some(match name {
            Some(n) => format!("{n} (scrambled)"),
            None => "scrambled".to_string(),
        }),
        seed: Some(args.common.seed),
    };
    let form = parsed.form.as_ref().map(|_| form);
    emit_file(serialize(&algebra, form.as_ref(), Some(metadata)), args.output.as_deref(), "scramble")
}

