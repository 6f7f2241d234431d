use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use partopus_core::composition::{compose_multi, compose_pair, Operator};
use partopus_core::identity::{master_identity, IdentityOptions};
use partopus_core::models::library::{self, describe};
use partopus_core::models::numeric::coherence;
use partopus_core::models::phi::{self, Superalgebra};
use partopus_core::models::prelie::{check_pre_lie, Cochains, Partitions, Side};
use partopus_core::models::{checks, hochschild::HochschildComplex, seeded, CheckResult, ModelAlgebra, Report};
use partopus_core::partition::{higher_product, partitions_bounded, regular_up_to, star, star_raw};
use partopus_core::{FormalSum, MapSymbol, Partition, PartitionVector, SignRule};

use crate::json::{self as js, parse_filter};
use crate::model_file::{model_from_json, model_to_json};
use crate::Error;

const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Bigraded,
    Total,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hochschild,
    Phi,
    Ainfinity,
    Prelie,
    Coherence,
}

#[derive(Parser, Debug)]
#[command(name = "partopus", version, about = "Partition products, partitioned composition and G∞ identities")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// The reduced product of two partitions, e.g. `product "(3)" "(2|4)"`.
    Product {
        left: String,
        right: String,
        /// Keep multiplicities.
        #[arg(long)]
        raw: bool,
    },
    /// `N(shape){head|inners}`; inners are grouped by the slots of the shape after the first.
    Nprod {
        shape: String,
        head: String,
        #[arg(required = true)]
        inners: Vec<String>,
    },
    /// Expand `{x}{y1,...}` per component, e.g. `compose "x(3)" "y(2|4)"`.
    Compose {
        outer: String,
        #[arg(required = true)]
        inners: Vec<String>,
        /// Only this component.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value = "bigraded")]
        rule: Rule,
    },
    /// The component of the master identity at a regular partition.
    Identity {
        target: String,
        /// Drop the Type II coefficients.
        #[arg(long)]
        kvz: bool,
        /// all, singletons or ones.
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Run a verification suite on a model.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Library name or path to a model file.
        #[arg(long)]
        model: Option<String>,
        /// Falls back to PARTOPUS_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        arity_cap: usize,
        #[arg(long, default_value_t = 4)]
        dim_cap: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// List the built-in models, or show one (`--model`).
    Models {
        #[arg(long)]
        model: Option<String>,
    },
}

/// Exit status and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: 0, stdout, stderr: String::new() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn partition(s: &str) -> Result<Partition, Error> {
    s.parse().map_err(|e| Error::parse(s, e))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn render_vector(v: &PartitionVector, f: Format) -> String {
    match f {
        Format::Json => json_line(&js::vector_to_json(v)),
        _ => format!("{v}\n"),
    }
}

fn render_sum(s: &FormalSum, f: Format) -> String {
    match f {
        Format::Text => s.render(false),
        Format::Latex => s.render(true),
        Format::Json => serde_json::to_string(&js::sum_to_json(s)).expect("serializable"),
    }
}

/// `x(3)`, `id(1|0)`; `m(π)` gets the structure-map degree, other names a
/// symbolic one.
fn operator(s: &str) -> Result<Operator, Error> {
    let t = s.trim();
    let open = t.find('(').ok_or_else(|| {
        Error::parse(s, partopus_core::ParseError::new(t.len(), "expected a map like x(2|3)"))
    })?;
    let name = &t[..open];
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::parse(s, partopus_core::ParseError::new(0, "expected a map name")));
    }
    let ty: Partition = t[open..]
        .parse()
        .map_err(|e: partopus_core::ParseError| Error::parse(s, partopus_core::ParseError::new(open + e.position, &e.message)))?;
    let sym = match name {
        "id" => MapSymbol::identity(ty),
        "m" => MapSymbol::structure(ty),
        _ => MapSymbol::symbolic(name, ty),
    };
    Ok(Operator::symbol(sym))
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let f = cli.format;
    match &cli.verb {
        Verb::Product { left, right, raw } => {
            let (a, b) = (partition(left)?, partition(right)?);
            let v = if *raw { star_raw(&a, &b) } else { star(&a, &b) };
            Ok(Outcome::ok(render_vector(&v, f)))
        }
        Verb::Nprod { shape, head, inners } => {
            let shape = partition(shape)?;
            let head = partition(head)?;
            let inners: Vec<Partition> = inners.iter().map(|s| partition(s)).collect::<Result<_, _>>()?;
            let sizes = shape.slots().get(1..).unwrap_or(&[]);
            if sizes.iter().sum::<usize>() != inners.len() {
                return Err(partopus_core::Error::ShapeMismatch.into());
            }
            let mut groups = Vec::new();
            let mut it = inners.into_iter();
            for &k in sizes {
                groups.push(it.by_ref().take(k).collect::<Vec<_>>());
            }
            Ok(Outcome::ok(render_vector(&higher_product(&shape, &head, &groups)?, f)))
        }
        Verb::Compose { outer, inners, target, rule } => {
            let x = operator(outer)?;
            let ys: Vec<Operator> = inners.iter().map(|s| operator(s)).collect::<Result<_, _>>()?;
            let rule = match rule {
                Rule::Bigraded => SignRule::Bigraded,
                Rule::Total => SignRule::Total,
            };
            let mut comps = if ys.len() == 1 { compose_pair(rule, &x, &ys[0])? } else { compose_multi(rule, &x, &ys)? };
            if let Some(t) = target {
                let t = partition(t)?;
                comps.retain(|k, _| *k == t);
            }
            if f == Format::Json {
                let obj: serde_json::Map<String, Value> =
                    comps.iter().map(|(k, s)| (k.to_string(), js::sum_to_json(s))).collect();
                return Ok(Outcome::ok(json_line(&Value::Object(obj))));
            }
            let mut out = String::new();
            for (k, s) in &comps {
                out.push_str(&format!("{k} [{} terms]: {}\n", s.len(), render_sum(s, f)));
            }
            if comps.is_empty() {
                out.push_str("0\n");
            }
            Ok(Outcome::ok(out))
        }
        Verb::Identity { target, kvz, filter } => {
            let t = partition(target)?;
            let options = IdentityOptions { include_type_ii_coefficients: !kvz, filter: parse_filter(filter)? };
            let r = master_identity(&t, options)?;
            Ok(Outcome::ok(match f {
                Format::Json => json_line(&js::identity_to_json(&r)),
                Format::Latex => r.render(true),
                Format::Text => r.render(false),
            }))
        }
        Verb::Verify { suite, model, seed, arity_cap, dim_cap, samples } => {
            let seed = match seed {
                Some(s) => *s,
                None => match std::env::var("PARTOPUS_SEED") {
                    Ok(v) => v.trim().parse().map_err(|_| Error::Schema(format!("PARTOPUS_SEED=`{v}` is not a u64")))?,
                    Err(_) => DEFAULT_SEED,
                },
            };
            let report = verify(*suite, model.as_deref(), seed, *arity_cap, *dim_cap, *samples)?;
            let text = match f {
                Format::Json => json_line(&js::report_to_json(&report)),
                _ => report.render(),
            };
            let status = if report.passed() { 0 } else { 1 };
            let stderr = if report.passed() {
                String::new()
            } else {
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("failed: {} ({})\n", c.name, c.witness.as_deref().unwrap_or("no witness")))
                    .collect()
            };
            Ok(Outcome { status, stdout: text, stderr })
        }
        Verb::Models { model } => {
            let algs: Vec<ModelAlgebra> = match model {
                Some(m) => vec![load_model(m)?],
                None => library::NAMES.iter().map(|n| library::by_name(n)).collect::<Result<_, _>>()?,
            };
            if f == Format::Json {
                let v: Vec<Value> = algs.iter().map(model_to_json).collect();
                return Ok(Outcome::ok(json_line(&json!(v))));
            }
            Ok(Outcome::ok(algs.iter().map(|a| describe(a) + "\n").collect()))
        }
    }
}

/// A library name, or a path to a model file.
pub fn load_model(spec: &str) -> Result<ModelAlgebra, Error> {
    if let Ok(m) = library::by_name(spec) {
        return Ok(m);
    }
    if spec.ends_with(".json") || std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{spec}: {e}")))?;
        return model_from_json(&v);
    }
    Ok(library::by_name(spec)?)
}

fn verify(
    suite: Suite,
    model: Option<&str>,
    seed: u64,
    arity_cap: usize,
    dim_cap: usize,
    samples: usize,
) -> Result<Report, Error> {
    let load = |default: &str| -> Result<ModelAlgebra, Error> {
        let alg = load_model(model.unwrap_or(default))?;
        if alg.dim() > dim_cap {
            return Err(Error::Schema(format!("model {} has dimension {} > --dim-cap {dim_cap}", alg.name, alg.dim())));
        }
        Ok(alg)
    };
    match suite {
        Suite::Hochschild => Ok(HochschildComplex::new(load("dual-numbers")?, arity_cap)?.verify(seed, samples)),
        Suite::Phi => {
            if model == Some("random") {
                let alg = Superalgebra::random(&mut seeded(seed));
                return Ok(phi::verify(&alg, "random superalgebra", seed, samples));
            }
            let m = load("grassmann2")?;
            Ok(phi::verify(&Superalgebra::from_model(&m)?, &m.name, seed, samples))
        }
        Suite::Ainfinity => Ok(checks::verify(seed, samples, arity_cap.max(1))?),
        Suite::Prelie => {
            let alg = load("dual-numbers")?;
            let name = alg.name.clone();
            let family = regular_up_to(arity_cap + 1);
            let r = check_pre_lie(&Partitions(family.clone()), Side::Right);
            let mut out = vec![CheckResult::vanishing(
                &format!("right pre-Lie on regular partitions with d ≤ {}", arity_cap + 1),
                r.triples,
                r.failures.first().cloned(),
            )];
            let mut with_zero = regular_up_to(arity_cap.min(2));
            with_zero.push(Partition::singleton(0));
            let r = check_pre_lie(&Partitions(with_zero), Side::Right);
            out.push(CheckResult::failing("pre-Lie fails once (0) is allowed", r.triples, r.failures.first().cloned()));
            let h = HochschildComplex::new(alg, arity_cap)?;
            let r = check_pre_lie(&Cochains::random(&h, samples.min(8), seed), Side::Right);
            out.push(CheckResult::vanishing("right pre-Lie on Hochschild cochains", r.triples, r.failures.first().cloned()));
            Ok(Report { suite: "prelie".into(), model: name, seed, checks: out })
        }
        Suite::Coherence => {
            let seeds: Vec<u64> = (seed..seed + samples as u64).collect();
            let mut out = Vec::new();
            for t in partitions_bounded(arity_cap, arity_cap, true) {
                let c = coherence(&t, &seeds)?;
                let w = c.mismatches.first().map(|s| format!("seed {s}"));
                out.push(CheckResult::vanishing(&format!("symbolic = stepwise numeric at {t}"), seeds.len(), w));
            }
            Ok(Report { suite: "coherence".into(), model: "random Z/2-graded, dim 3".into(), seed, checks: out })
        }
    }
}
