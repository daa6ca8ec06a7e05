//! Command-line adapter: argument parsing, file loading and JSON output.
//! All numerics are delegated to the library modules.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::builder::{
    build, canonical_words, matching_branches, recover_coordinates, verify_relations, Branch, LiftMode,
    SurfaceRepresentation,
};
use crate::coordinates::{domain_violation, one_holed_traces, EdgeParams};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::fuchsian::{from_fenchel_nielsen, to_fenchel_nielsen, FnParams};
use crate::moves::{apply_move, Automorphism, Direction, Move, MoveKind};
use crate::projective::{MoebiusMap, ProjectivePoint, C64};
use crate::sampling::{rng, sample_params, SampleMode};
use crate::shearbend::{
    one_holed_to_shear, one_holed_triangulation, pants_shear_params, recover_pants_eigen, shear_traces_squared,
};
use crate::surface::{format_word, parse_word, PantsSurface, Word};
use crate::symmetry::{act_epsilon, flip_eigenvalue};

#[derive(Parser, Debug)]
#[command(name = "eigentwist", version, about = "Surface group representations from eigenvalue-twist coordinates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Inputs {
    /// Surface JSON file.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    /// Built-in surface instead of a file: four-holed, one-holed or genus2.
    #[arg(long, conflicts_with = "surface")]
    pub fixture: Option<String>,
    /// Parameter JSON file.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Reverse,
    DehnRight,
    DehnLeft,
    Vertex,
    Automorphism,
    FourHoled,
    OneHoled,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a surface (and parameters, if given).
    Validate(Inputs),
    /// Generator matrices and relation residuals.
    Generators(Inputs),
    /// Traces of the standard word list, or of the given words.
    Traces {
        #[command(flatten)]
        inputs: Inputs,
        /// A word such as "alpha1 beta1^-1"; repeatable.
        #[arg(long = "word")]
        words: Vec<String>,
    },
    /// Coordinates from generator matrices (or a rebuilt representation).
    Recover {
        #[command(flatten)]
        inputs: Inputs,
        /// JSON with a "generators" object as written by `generators`.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Eigenvalue flip or sign action.
    Act {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        flip: Option<usize>,
        /// Comma-separated edge ids whose eigenvalues change sign.
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<usize>,
    },
    /// Apply a move.
    Move {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        target: usize,
        /// Eigenvalue hint `re,im` for the new curve of an elementary move.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        branch: Option<C64>,
        /// Automorphism JSON for `--kind automorphism`.
        #[arg(long)]
        automorphism: Option<PathBuf>,
    },
    /// Fenchel-Nielsen conversion.
    Fn {
        #[command(flatten)]
        inputs: Inputs,
        /// Read Fenchel-Nielsen parameters and convert back.
        #[arg(long)]
        inverse: bool,
    },
    /// Shear-bend coordinates of a one-holed torus, or of a pants triple.
    Shearbend {
        #[command(flatten)]
        inputs: Inputs,
        /// Three eigenvalues `re,im` of a pants; repeat three times.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, num_args = 1)]
        pants: Vec<C64>,
    },
    /// Random domain points with a relation-residual report.
    Sample {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
    },
    /// Emit a built-in surface, a parameter template and its matrices.
    Example {
        #[arg(value_parser = ["four-holed", "one-holed", "genus2"])]
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fuchsian,
    General,
}

/// A finished command: JSON result and exit status.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub exit: i32,
}

/// `re,im` or `re`.
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {s:?}")),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn load_surface(inputs: &Inputs) -> Result<(PantsSurface, [ProjectivePoint; 3])> {
    match (&inputs.surface, &inputs.fixture) {
        (Some(p), _) => Ok((PantsSurface::from_json(&read(p)?)?, fixtures::default_base())),
        (None, Some(name)) => fixtures::by_name(name).ok_or_else(|| Error::Schema(format!("unknown fixture {name:?}"))),
        (None, None) => Err(Error::Schema("--surface or --fixture is required".into())),
    }
}

fn load_params(inputs: &Inputs) -> Result<EdgeParams> {
    let p = inputs.params.as_ref().ok_or_else(|| Error::Schema("--params is required".into()))?;
    EdgeParams::from_json(&read(p)?)
}

fn valid_surface(inputs: &Inputs) -> Result<(PantsSurface, [ProjectivePoint; 3])> {
    let (s, base) = load_surface(inputs)?;
    s.ensure_valid()?;
    Ok((s, base))
}

fn representation(s: &PantsSurface, base: &[ProjectivePoint; 3], p: &EdgeParams) -> Result<SurfaceRepresentation> {
    build(s, &s.tree_or_default()?, p, base, LiftMode::Sl)
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &MoebiusMap) -> Value {
    json!([[c_json(m.a), c_json(m.b)], [c_json(m.c), c_json(m.d)]])
}

fn generators_json(rep: &SurfaceRepresentation) -> Value {
    let gens: serde_json::Map<String, Value> =
        rep.images.iter().map(|(g, m)| (g.to_string(), matrix_json(m))).collect();
    let rel: Vec<Value> =
        verify_relations(rep).into_iter().map(|r| json!({"relation": r.relation, "residual": r.residual})).collect();
    json!({"generators": gens, "relations": rel})
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ok(json: Value) -> Result<Outcome> {
    Ok(Outcome { json, exit: 0 })
}

fn validate(inputs: &Inputs) -> Result<Outcome> {
    let (s, _) = load_surface(inputs)?;
    let violations = s.validate();
    if !violations.is_empty() {
        return Ok(Outcome { json: json!({"valid": false, "violations": to_value(&violations)}), exit: 2 });
    }
    let mut out = json!({"valid": true, "violations": [], "genus": s.genus, "boundary": s.boundary});
    if inputs.params.is_some() {
        let p = load_params(inputs)?;
        if let Some(why) = domain_violation(&p, &s)? {
            return Err(Error::Domain(why));
        }
        out["params"] = json!("in domain");
    }
    ok(out)
}

fn generators(inputs: &Inputs) -> Result<Outcome> {
    let (s, base) = valid_surface(inputs)?;
    let rep = representation(&s, &base, &load_params(inputs)?)?;
    ok(generators_json(&rep))
}

fn traces(inputs: &Inputs, words: &[String]) -> Result<Outcome> {
    let (s, base) = valid_surface(inputs)?;
    let rep = representation(&s, &base, &load_params(inputs)?)?;
    let list: Vec<Word> = if words.is_empty() {
        canonical_words(&rep.presentation)
    } else {
        words.iter().map(|w| parse_word(w)).collect::<Result<_>>()?
    };
    let known = rep.presentation.generators();
    let mut rows = vec![];
    for w in &list {
        if let Some(l) = w.iter().find(|l| !known.contains(&l.gen)) {
            return Err(Error::Schema(format!("generator {} is not in the presentation", l.gen)));
        }
        let m = rep.eval(w);
        let tr = m.trace();
        rows.push(json!({"word": format_word(w), "trace": c_json(tr), "trace_squared": c_json(tr * tr / m.det())}));
    }
    ok(json!({"traces": rows}))
}

fn parse_matrix(v: &Value) -> Result<MoebiusMap> {
    let bad = || Error::Schema(format!("matrix must be [[[re,im],[re,im]],[[re,im],[re,im]]], got {v}"));
    let z = |x: &Value| -> Result<C64> {
        let a = x.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        Ok(C64::new(a[0].as_f64().ok_or_else(bad)?, a[1].as_f64().ok_or_else(bad)?))
    };
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let r0 = rows[0].as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let r1 = rows[1].as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    Ok(MoebiusMap::new(z(&r0[0])?, z(&r0[1])?, z(&r1[0])?, z(&r1[1])?))
}

fn recover(inputs: &Inputs, generators: Option<&PathBuf>) -> Result<Outcome> {
    let (s, base) = valid_surface(inputs)?;
    let tree: BTreeSet<usize> = s.tree_or_default()?;
    let (rep, choice) = match generators {
        Some(path) => {
            let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Error::Schema(e.to_string()))?;
            let obj = v.get("generators").and_then(Value::as_object).ok_or_else(|| Error::Schema("missing \"generators\" object".into()))?;
            let presentation = s.presentation(&tree)?;
            let mut images = BTreeMap::new();
            for g in presentation.generators() {
                let m = obj.get(&g.to_string()).ok_or_else(|| Error::Schema(format!("missing generator {g}")))?;
                images.insert(g, parse_matrix(m)?);
            }
            let beta_signs = (1..=presentation.betas.len()).map(|i| (i, 1)).collect();
            let rep = SurfaceRepresentation { presentation, images, lift_mode: LiftMode::Sl, beta_signs, fixed: BTreeMap::new() };
            (rep, BTreeMap::<usize, Branch>::new())
        }
        None => {
            let p = load_params(inputs)?;
            (representation(&s, &base, &p)?, matching_branches(&p))
        }
    };
    let recovered = recover_coordinates(&rep, &s, &tree, &choice)?;
    let mut out = json!({"params": to_value(&recovered)});
    if generators.is_none() {
        let p = load_params(inputs)?;
        let diff = recovered.max_rel_diff(&p);
        out["round_trip_error"] = json!(diff);
        out["pass"] = json!(diff <= inputs.tol.max(1e-8));
    }
    ok(out)
}

fn act(inputs: &Inputs, flip: Option<usize>, epsilon: &[usize]) -> Result<Outcome> {
    let (s, _) = valid_surface(inputs)?;
    let p = load_params(inputs)?;
    let out = match (flip, epsilon.is_empty()) {
        (Some(edge), true) => flip_eigenvalue(&p, &s, edge)?,
        (None, false) => {
            let eps: BTreeMap<usize, i8> = epsilon.iter().map(|&k| (k, -1)).collect();
            act_epsilon(&p, &s, &eps)?
        }
        _ => return Err(Error::Schema("give exactly one of --flip and --epsilon".into())),
    };
    ok(json!({"params": to_value(&out)}))
}

fn do_move(inputs: &Inputs, kind: KindArg, target: usize, branch: Option<C64>, automorphism: Option<&PathBuf>) -> Result<Outcome> {
    let (s, _) = valid_surface(inputs)?;
    let p = load_params(inputs)?;
    let kind = match kind {
        KindArg::Reverse => MoveKind::ReverseEdge,
        KindArg::DehnRight => MoveKind::DehnTwist(Direction::Right),
        KindArg::DehnLeft => MoveKind::DehnTwist(Direction::Left),
        KindArg::Vertex => MoveKind::VertexMove,
        KindArg::FourHoled => MoveKind::ElementaryFourHoled,
        KindArg::OneHoled => MoveKind::ElementaryOneHoled,
        KindArg::Automorphism => {
            let path = automorphism.ok_or_else(|| Error::Schema("--automorphism is required".into()))?;
            let a: Automorphism = serde_json::from_str(&read(path)?).map_err(|e| Error::Schema(e.to_string()))?;
            MoveKind::GraphAutomorphism(a)
        }
    };
    let mv = Move { kind, target, branch };
    let (s1, p1) = apply_move(&s, &p, &mv)?;
    ok(json!({"move": to_value(&mv), "surface": to_value(&s1), "params": to_value(&p1)}))
}

fn fenchel_nielsen(inputs: &Inputs, inverse: bool) -> Result<Outcome> {
    let (s, _) = valid_surface(inputs)?;
    if inverse {
        let path = inputs.params.as_ref().ok_or_else(|| Error::Schema("--params is required".into()))?;
        let fnp: FnParams = serde_json::from_str(&read(path)?).map_err(|e| Error::Schema(e.to_string()))?;
        return ok(json!({"params": to_value(&from_fenchel_nielsen(&fnp, &s)?)}));
    }
    ok(to_value(&to_fenchel_nielsen(&load_params(inputs)?, &s)?))
}

fn shearbend(inputs: &Inputs, pants: &[C64]) -> Result<Outcome> {
    if !pants.is_empty() {
        let e: [C64; 3] = pants.try_into().map_err(|_| Error::Schema("--pants takes exactly three eigenvalues".into()))?;
        let p = pants_shear_params(e)?;
        let back = recover_pants_eigen(p)?;
        return ok(json!({
            "edge_params": p.map(c_json),
            "recovered_eigen": back.map(c_json),
        }));
    }
    let p = load_params(inputs)?;
    let get = |m: &BTreeMap<usize, C64>, k: usize, what: &str| {
        m.get(&k).copied().ok_or_else(|| Error::Schema(format!("one-holed parameters need {what} of edge {k}")))
    };
    let (e1, e2, t1) = (get(&p.eigen, 1, "eigenvalue")?, get(&p.eigen, 2, "eigenvalue")?, get(&p.twist, 1, "twist")?);
    let sh = one_holed_to_shear(e1, e2, t1)?;
    let tri = one_holed_triangulation(e1, e2, t1)?;
    let residuals: Vec<f64> = tri.residuals()?.iter().map(|r| r.norm()).collect();
    let (ta, tb) = shear_traces_squared(sh.a, sh.b, sh.c)?;
    let (tr_b, _, _) = one_holed_traces(e1, e2, t1)?;
    let chi = e1 + e1.inv();
    let err_a = (ta - chi * chi).norm() / (chi * chi).norm().max(1.0);
    let err_b = (tb - tr_b * tr_b).norm() / (tr_b * tr_b).norm().max(1.0);
    let tol = inputs.tol;
    ok(json!({
        "a": c_json(sh.a), "b": c_json(sh.b), "c": c_json(sh.c), "z1": c_json(sh.z1), "z2": c_json(sh.z2),
        "gluing_residuals": residuals,
        "trace_check": {
            "alpha1_squared": c_json(ta), "alpha1_error": err_a,
            "beta1_squared": c_json(tb), "beta1_error": err_b,
            "pass": err_a <= tol && err_b <= tol && residuals.iter().all(|r| *r <= tol.max(1e-10)),
        },
    }))
}

fn sample(inputs: &Inputs, n: usize, mode: ModeArg) -> Result<Outcome> {
    let (s, base) = valid_surface(inputs)?;
    let mode = match mode {
        ModeArg::Fuchsian => SampleMode::Fuchsian,
        ModeArg::General => SampleMode::General,
    };
    let mut r = rng(inputs.seed);
    let mut worst = 0.0f64;
    let mut passed = 0;
    for _ in 0..n {
        let p = sample_params(&s, &mut r, mode)?;
        let rep = representation(&s, &base, &p)?;
        let m = verify_relations(&rep).iter().map(|x| x.residual).fold(0.0, f64::max);
        worst = worst.max(m);
        if m < inputs.tol {
            passed += 1;
        }
    }
    ok(json!({"n": n, "seed": inputs.seed, "passed": passed, "max_residual": worst, "tol": inputs.tol}))
}

fn example(name: &str, seed: u64) -> Result<Outcome> {
    let (s, base) = fixtures::by_name(name).ok_or_else(|| Error::Schema(format!("unknown example {name:?}")))?;
    let p = sample_params(&s, &mut rng(seed), SampleMode::General)?;
    let rep = representation(&s, &base, &p)?;
    let base_json: Vec<Value> = base.iter().map(|q| json!([c_json(q.num), c_json(q.den)])).collect();
    ok(json!({
        "name": name,
        "surface": to_value(&s),
        "base": base_json,
        "params": to_value(&p),
        "representation": generators_json(&rep),
    }))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(i) => validate(i),
        Command::Generators(i) => generators(i),
        Command::Traces { inputs, words } => traces(inputs, words),
        Command::Recover { inputs, generators } => recover(inputs, generators.as_ref()),
        Command::Act { inputs, flip, epsilon } => act(inputs, *flip, epsilon),
        Command::Move { inputs, kind, target, branch, automorphism } => {
            do_move(inputs, *kind, *target, *branch, automorphism.as_ref())
        }
        Command::Fn { inputs, inverse } => fenchel_nielsen(inputs, *inverse),
        Command::Shearbend { inputs, pants } => shearbend(inputs, pants),
        Command::Sample { inputs, n, mode } => sample(inputs, *n, *mode),
        Command::Example { name, seed } => example(name, *seed),
    }
}

/// Structured diagnostic for a failed command.
pub fn diagnostic(err: &Error) -> Value {
    let factor = match err {
        Error::Degenerate(f) => Some(f.clone()),
        _ => None,
    };
    json!({"error": err.kind(), "message": err.to_string(), "factor": factor, "exit_code": err.exit_code()})
}

/// Runs a command line; returns (stdout, stderr, exit status).
pub fn main_with<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (e.to_string(), String::new(), 0) } else { (String::new(), e.to_string(), code) };
        }
    };
    let (body, err, code) = match run(&cli) {
        Ok(o) => (o.json, String::new(), o.exit),
        Err(e) => (Value::Null, serde_json::to_string_pretty(&diagnostic(&e)).expect("json") + "\n", e.exit_code()),
    };
    if body.is_null() {
        return (String::new(), err, code);
    }
    let text = serde_json::to_string_pretty(&body).expect("json") + "\n";
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (String::new(), err, code),
            Err(e) => (String::new(), diagnostic(&Error::Schema(format!("{}: {e}", path.display()))).to_string(), 2),
        },
        None => (text, err, code),
    }
}

