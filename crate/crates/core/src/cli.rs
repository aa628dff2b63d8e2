//! Command-line driver. `main` parses arguments into a [`JobConfig`] and
//! hands it to [`run`], which writes everything to the given sink so tests
//! can capture it.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::audit::{
    binary_orbits, effectiveness, fix_orthogonality_check, mask_to_vector, verify_fundamental_domain,
    AuditLimits, DEFAULT_BINARY_CAP, DEFAULT_VERIFY_BINARY_CAP,
};
use crate::constructions::{Construction, GammaStrategy};
use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, RatVec};
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::io;
use crate::lexmax::{in_closure_lex, in_lex, lex_max_in_orbit};
use crate::sampling::{trial_rng, RationalGrid};

pub const EXIT_AXIOM_FAILURE: i32 = 7;
pub const EXIT_GOLDEN_MISMATCH: i32 = 8;

#[derive(Parser, Debug)]
#[command(name = "fundom", version, about = "Fundamental domains for permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Build an inequality system and write it as JSON (and optionally cuts).
    Gen {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        build: BuildArgs,
        /// Also write the plain-text cut format to this file.
        #[arg(long)]
        cuts: Option<PathBuf>,
    },
    /// Check the fundamental-domain axioms of a construction by sampling.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BINARY_CAP)]
        binary_cap: usize,
    },
    /// Worst-case number of representatives per orbit of {0,1}^n.
    Effectiveness {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long, default_value_t = DEFAULT_BINARY_CAP)]
        binary_cap: usize,
    },
    /// Compare lexicographic closure membership with the Schreier-Sims polyhedron.
    Lexcheck {
        #[command(flatten)]
        common: CommonArgs,
        /// JSON list of vectors; sampled from the seeded grid if absent.
        #[arg(long)]
        vectors: Option<PathBuf>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Degree, order, coordinate orbits and stabilizer chain shape.
    Info {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the orbits of {0,1}^n.
    Orbits {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BINARY_CAP)]
        binary_cap: usize,
    },
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Group file (JSON).
    #[arg(long)]
    pub group: PathBuf,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Compare the main output with this file instead of writing it.
    #[arg(long)]
    pub check_golden: Option<PathBuf>,
    /// Largest group order whose elements are enumerated in full.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = positive)]
    pub enum_cap: usize,
    /// Largest orbit enumerated point by point.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = positive)]
    pub orbit_cap: usize,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// dirichlet | ssp | ssp-reduced | gdd
    #[arg(long, default_value = "ssp")]
    pub construction: String,
    /// canonical | orbit-weights:<base> | k-universal:<k> | file:<path>
    #[arg(long)]
    pub gamma: Option<String>,
    /// Audit this inequality file instead of building a construction.
    #[arg(long, conflicts_with_all = ["construction", "gamma"])]
    pub ineqs: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Gen,
    Verify,
    Effectiveness,
    Lexcheck,
    Info,
    Orbits,
}

#[derive(Clone, Debug)]
pub struct Caps {
    pub enumeration: usize,
    pub orbit: usize,
    pub binary: usize,
}

/// Everything one invocation needs, independent of how it was parsed.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub verb: Verb,
    pub group_path: PathBuf,
    pub construction: Construction,
    pub construction_label: String,
    /// Inequality file used in place of `construction`.
    pub ineqs_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub cuts_path: Option<PathBuf>,
    pub golden_path: Option<PathBuf>,
    pub vectors_path: Option<PathBuf>,
    pub seed: u64,
    pub trials: usize,
    pub caps: Caps,
}

/// Parses `--gamma`. `None` picks the per-construction default: orbit
/// weights with base 2 for gdd, the 2-universal vector for dirichlet.
pub fn parse_gamma(spec: Option<&str>, construction: &str) -> Result<GammaStrategy> {
    let Some(spec) = spec else {
        return Ok(match construction {
            "dirichlet" => GammaStrategy::KUniversal(2),
            _ => GammaStrategy::PerOrbitWeights(2),
        });
    };
    let number = |v: &str| {
        v.parse::<u64>()
            .map_err(|_| Error::InvalidStrategy(format!("`{v}` in --gamma {spec} is not a whole number")))
    };
    match spec.split_once(':') {
        None if spec == "canonical" => Ok(GammaStrategy::CanonicalBasis),
        Some(("orbit-weights", b)) => Ok(GammaStrategy::PerOrbitWeights(number(b)?)),
        Some(("k-universal", k)) => Ok(GammaStrategy::KUniversal(number(k)?)),
        Some(("file", path)) => Ok(GammaStrategy::Explicit(io::read_vectors(path.as_ref())?)),
        _ => Err(Error::InvalidStrategy(format!(
            "unknown --gamma `{spec}`; expected canonical, orbit-weights:<base>, k-universal:<k> or file:<path>"
        ))),
    }
}

pub fn parse_construction(name: &str, gamma: Option<&str>) -> Result<Construction> {
    match name {
        "ssp" | "ssp-reduced" if gamma.is_some() => Err(Error::InvalidStrategy(format!(
            "--gamma does not apply to --construction {name}"
        ))),
        "ssp" => Ok(Construction::Ssp),
        "ssp-reduced" => Ok(Construction::SspReduced),
        "gdd" => Ok(Construction::Gdd(parse_gamma(gamma, name)?)),
        "dirichlet" => Ok(Construction::Dirichlet(parse_gamma(gamma, name)?)),
        other => Err(Error::InvalidStrategy(format!(
            "unknown --construction `{other}`; expected dirichlet, ssp, ssp-reduced or gdd"
        ))),
    }
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<JobConfig> {
        let mut cfg = JobConfig {
            verb: Verb::Info,
            group_path: PathBuf::new(),
            construction: Construction::Ssp,
            construction_label: "ssp".into(),
            ineqs_path: None,
            output_path: None,
            cuts_path: None,
            golden_path: None,
            vectors_path: None,
            seed: 1,
            trials: 1000,
            caps: Caps {
                enumeration: DEFAULT_ENUMERATION_CAP,
                orbit: DEFAULT_ENUMERATION_CAP,
                binary: DEFAULT_VERIFY_BINARY_CAP,
            },
        };
        let apply_common = |cfg: &mut JobConfig, c: CommonArgs| {
            cfg.group_path = c.group;
            cfg.output_path = c.output;
            cfg.golden_path = c.check_golden;
            cfg.caps.enumeration = c.enum_cap;
            cfg.caps.orbit = c.orbit_cap;
        };
        let apply_build = |cfg: &mut JobConfig, b: BuildArgs| -> Result<()> {
            cfg.construction = parse_construction(&b.construction, b.gamma.as_deref())?;
            cfg.construction_label = match (&b.ineqs, &b.gamma) {
                (Some(path), _) => format!("file:{}", path.display()),
                (None, Some(g)) => format!("{} --gamma {g}", b.construction),
                (None, None) => b.construction,
            };
            cfg.ineqs_path = b.ineqs;
            Ok(())
        };
        match cli.command {
            CliCommand::Gen { common, build, cuts } => {
                cfg.verb = Verb::Gen;
                apply_common(&mut cfg, common);
                apply_build(&mut cfg, build)?;
                cfg.cuts_path = cuts;
            }
            CliCommand::Verify {
                common,
                build,
                sampling,
                binary_cap,
            } => {
                cfg.verb = Verb::Verify;
                apply_common(&mut cfg, common);
                apply_build(&mut cfg, build)?;
                cfg.seed = sampling.seed;
                cfg.trials = sampling.trials;
                cfg.caps.binary = binary_cap;
            }
            CliCommand::Effectiveness {
                common,
                build,
                binary_cap,
            } => {
                cfg.verb = Verb::Effectiveness;
                apply_common(&mut cfg, common);
                apply_build(&mut cfg, build)?;
                cfg.caps.binary = binary_cap;
            }
            CliCommand::Lexcheck {
                common,
                vectors,
                sampling,
            } => {
                cfg.verb = Verb::Lexcheck;
                apply_common(&mut cfg, common);
                cfg.vectors_path = vectors;
                cfg.seed = sampling.seed;
                cfg.trials = sampling.trials;
            }
            CliCommand::Info { common } => {
                cfg.verb = Verb::Info;
                apply_common(&mut cfg, common);
            }
            CliCommand::Orbits { common, binary_cap } => {
                cfg.verb = Verb::Orbits;
                apply_common(&mut cfg, common);
                cfg.caps.binary = binary_cap;
            }
        }
        Ok(cfg)
    }
}

fn build_cone(group: &PermGroup, cfg: &JobConfig) -> Result<ConeSystem> {
    match &cfg.ineqs_path {
        Some(path) => {
            let cone = io::read_cone(path)?;
            if cone.dim() != group.degree() {
                return Err(Error::DimensionMismatch {
                    expected: group.degree(),
                    found: cone.dim(),
                });
            }
            Ok(cone)
        }
        None => {
            // The Dirichlet domain lists every group element; gdd only walks orbits.
            let cap = match cfg.construction {
                Construction::Dirichlet(_) => cfg.caps.enumeration,
                _ => cfg.caps.orbit,
            };
            cfg.construction.build(group, cap)
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn one_based(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

/// Runs one job. Reports go to `output_path` or `out`; the returned value
/// is the process exit status (0, [`EXIT_AXIOM_FAILURE`] or
/// [`EXIT_GOLDEN_MISMATCH`]). Errors map to codes via [`Error::exit_code`].
pub fn run(cfg: &JobConfig, out: &mut dyn Write) -> Result<i32> {
    let group = io::read_group(&cfg.group_path)?;
    let n = group.degree();
    let (text, ok) = match cfg.verb {
        Verb::Gen => {
            let cone = build_cone(&group, cfg)?;
            if let Some(path) = &cfg.cuts_path {
                fs::write(path, cone.cut_format())?;
            }
            (io::cone_to_json(&cone), true)
        }
        Verb::Info => (info(&group), true),
        Verb::Verify => {
            let cone = build_cone(&group, cfg)?;
            let limits = AuditLimits {
                enumeration_cap: cfg.caps.enumeration,
                orbit_cap: cfg.caps.orbit,
                binary_cap: cfg.caps.binary,
                ..AuditLimits::default()
            };
            let report = verify_fundamental_domain(&group, &cone, cfg.trials, cfg.seed, &limits)?;
            let fix_orthogonal = fix_orthogonality_check(&cone);
            let ok = report.passed() && fix_orthogonal;
            let doc = json!({
                "construction": cfg.construction_label,
                "n": n,
                "inequalities": cone.len(),
                "passed": ok,
                "fix_orthogonal": fix_orthogonal,
                "report": report,
            });
            (pretty(&doc), ok)
        }
        Verb::Effectiveness => {
            let cone = build_cone(&group, cfg)?;
            let report = effectiveness(&group, &cone, cfg.caps.binary)?;
            let ok = report.orbits_without_rep == 0;
            let doc = json!({
                "construction": cfg.construction_label,
                "n": n,
                "inequalities": cone.len(),
                "lambda": report.lambda,
                "orbit_count": report.orbit_count,
                "orbits_without_rep": report.orbits_without_rep,
                "histogram": report.histogram,
                "witness_orbit": report.witness_orbit.iter().map(|v| bits(v)).collect::<Vec<_>>(),
                "witness_representatives":
                    report.witness_representatives.iter().map(|v| bits(v)).collect::<Vec<_>>(),
            });
            (pretty(&doc), ok)
        }
        Verb::Lexcheck => {
            let (doc, ok) = lexcheck(&group, cfg)?;
            (pretty(&doc), ok)
        }
        Verb::Orbits => {
            let orbits = binary_orbits(&group, cfg.caps.binary)?;
            let listed: Vec<Vec<String>> = orbits
                .iter()
                .map(|o| o.iter().map(|&m| bits(&mask_to_vector(m, n))).collect())
                .collect();
            let doc = json!({ "n": n, "orbit_count": orbits.len(), "orbits": listed });
            (pretty(&doc), true)
        }
    };

    if let Some(golden) = &cfg.golden_path {
        let expected = fs::read_to_string(golden)?;
        if expected != text {
            writeln!(out, "golden mismatch: output differs from {}", golden.display())?;
            return Ok(EXIT_GOLDEN_MISMATCH);
        }
        writeln!(out, "golden match: {}", golden.display())?;
    } else if let Some(path) = &cfg.output_path {
        fs::write(path, &text)?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(if ok { 0 } else { EXIT_AXIOM_FAILURE })
}

fn info(group: &PermGroup) -> String {
    let chain = group.chain();
    let levels: Vec<_> = chain
        .levels()
        .iter()
        .filter(|l| l.orbit().len() > 1)
        .map(|l| json!({ "base_point": l.base_point() + 1, "orbit_length": l.orbit().len() }))
        .collect();
    pretty(&json!({
        "n": group.degree(),
        "order": group.order().to_string(),
        "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "orbits": one_based(&group.orbits_on_indices()),
        "chain": levels,
        "lex_closed": crate::lexmax::is_lex_closed(group),
    }))
}

fn lexcheck(group: &PermGroup, cfg: &JobConfig) -> Result<(serde_json::Value, bool)> {
    let n = group.degree();
    let vectors: Vec<RatVec> = match &cfg.vectors_path {
        Some(path) => io::read_vectors(path)?,
        None => {
            let grid = RationalGrid::default();
            (0..cfg.trials)
                .map(|t| grid.sample(n, &mut trial_rng(cfg.seed, t as u64)))
                .collect()
        }
    };
    let ssp = crate::constructions::ssp(group);
    let mut rows = Vec::with_capacity(vectors.len());
    let mut all_agree = true;
    for v in &vectors {
        v.check_dim(n)?;
        let in_closure = in_closure_lex(group, v, cfg.caps.orbit)?;
        let ssp_member = ssp.classify(v)?.is_member();
        all_agree &= in_closure == ssp_member;
        rows.push(json!({
            "vector": v.to_strings(),
            "in_lex": in_lex(group, v, cfg.caps.orbit)?,
            "in_closure": in_closure,
            "lex_max": lex_max_in_orbit(group, v, cfg.caps.orbit)?.to_strings(),
            "ssp_member": ssp_member,
            "agree": in_closure == ssp_member,
        }));
    }
    Ok((serde_json::Value::Array(rows), all_agree))
}
