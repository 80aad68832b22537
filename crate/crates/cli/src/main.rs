use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use monodec::catalog::{Direction, EdgeRule, LayerRule};
use monodec::verify::{run_suite, Suite, SuiteConfig};
use monodec::{
    ages, bounds_up_to, classify_growth, components_via_oracle, dichotomy_witness,
    dichotomy_witness_all, generate, invariant_restriction, monomorphic_partition,
    profile_series, profile_series_generic, random_structure, CatalogOptions, CatalogSpec,
    Equivalence, ErrorClass, FEquivalence, Family, GrowthConfig, Kind, ProfileSeries,
    RandomOptions, Signature, Structure,
};
use serde_json::json;

/// Monomorphic decompositions, profiles and extraction experiments.
#[derive(Parser)]
#[command(name = "monodec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or emit catalog structures.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Monomorphic components (or ≃_≤k classes) as JSON.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use ≃_≤K instead of the full relation.
        #[arg(long)]
        kmax: Option<usize>,
        /// Compute maximal blocks with the brute-force oracle instead.
        #[arg(long, conflicts_with = "kmax")]
        oracle: bool,
        /// Require the isomorphism to fix F pointwise.
        #[arg(long)]
        pointwise: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profile series of a structure's age as `n,phi` CSV.
    Profile {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Count with permutation-minimized codes even for ordered input.
        #[arg(long)]
        generic: bool,
    },
    /// Growth verdict for an `n,phi` CSV.
    Classify {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        #[arg(long)]
        tail_start: Option<usize>,
        #[arg(long, default_value_t = 1.3)]
        ratio: f64,
    },
    /// Bounds of the age of a structure up to a size.
    Bounds {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        nmax: usize,
        /// Structure kind candidates range over; inferred when omitted.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dichotomy witness for an ordered digraph, with its validation transcript.
    Witness {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: usize,
        /// Report every alternative found, not only the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant restriction of an ordered structure.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        target: usize,
        /// Also emit the extension to this many rows.
        #[arg(long)]
        extend: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Component counts and profiles over a range of prefix sizes, as CSV.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        sizes: RangeInclusive<usize>,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suites and print a pass/fail table.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest domain size (suite default when omitted).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the reports as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Registered family names.
    List,
    /// Write one catalog prefix in the structure format.
    Emit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random structure.
    Random {
        /// Comma-separated arities.
        #[arg(long, default_value = "2")]
        signature: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        ordered: bool,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        irreflexive: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    reflexive: bool,
    /// eq, le or ne.
    #[arg(long)]
    base_rule: Option<EdgeRule>,
    /// Rules of the two layers, e.g. `full,empty`.
    #[arg(long)]
    layers: Option<String>,
    /// both, forward or backward.
    #[arg(long)]
    direction: Option<Direction>,
    /// Extra least vertex adjacent to: isolated, a, b or both.
    #[arg(long)]
    apex: Option<String>,
    #[arg(long)]
    reverse_order: bool,
    /// Number of intervals for chain_marked.
    #[arg(long)]
    parts: Option<usize>,
}

impl FamilyArgs {
    fn spec(&self, size: usize) -> anyhow::Result<CatalogSpec> {
        let family: Family = self.family.parse()?;
        let mut o = CatalogOptions {
            reflexive: self.reflexive,
            reverse_order: self.reverse_order,
            ..Default::default()
        };
        if let Some(r) = self.base_rule {
            o.base_rule = r;
        }
        if let Some(d) = self.direction {
            o.direction = d;
        }
        if let Some(p) = self.parts {
            o.parts = p;
        }
        if let Some(l) = &self.layers {
            let Some((a, b)) = l.split_once(',') else {
                bail!(monodec::Error::InvalidArgument(format!("layers `{l}`: expected two rules")));
            };
            o.layers = (a.parse::<LayerRule>()?, b.parse::<LayerRule>()?);
        }
        if let Some(a) = &self.apex {
            o.apex = Some(match a.as_str() {
                "isolated" => (false, false),
                "a" => (true, false),
                "b" => (false, true),
                "both" => (true, true),
                other => bail!(monodec::Error::InvalidArgument(format!("apex `{other}`"))),
            });
        }
        let spec = CatalogSpec::with_options(family, size, o);
        spec.validate()?;
        Ok(spec)
    }
}

/// A structure given by file or by catalog family.
#[derive(Args)]
struct Source {
    #[arg(long = "in", conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, requires = "family")]
    size: Option<usize>,
}

impl Source {
    fn load(&self) -> anyhow::Result<Structure> {
        match (&self.input, &self.family) {
            (Some(p), _) => read_structure(p),
            (None, Some(f)) => {
                let size = self.size.context("--size is required with --family")?;
                let spec = CatalogSpec::new(f.parse()?, size);
                Ok(generate(&spec)?)
            }
            (None, None) => bail!(monodec::Error::InvalidArgument(
                "give --in or --family".into()
            )),
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn read_structure(path: &Path) -> anyhow::Result<Structure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Structure::from_json(&text)?)
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Catalog(CatalogCommand::List) => {
            for f in Family::ALL {
                println!("{f}\t{}", f.description());
            }
        }
        Command::Catalog(CatalogCommand::Emit { family, size, out }) => {
            let s = generate(&family.spec(size)?)?;
            emit(&out, &format!("{}\n", s.to_json()))?;
        }
        Command::Catalog(CatalogCommand::Random {
            signature,
            n,
            density,
            ordered,
            symmetric,
            irreflexive,
            seed,
            out,
        }) => {
            let arities = signature
                .split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| monodec::Error::InvalidArgument(format!("signature: {e}")))?;
            let sig = Signature::new(arities)?;
            let opts = RandomOptions {
                symmetric,
                irreflexive,
            };
            let s = random_structure(&sig, n, density, ordered, seed, opts)?;
            emit(&out, &format!("{}\n", s.to_json()))?;
        }
        Command::Decompose {
            input,
            kmax,
            oracle,
            pointwise,
            out,
        } => {
            let r = read_structure(&input)?;
            let eq = Equivalence {
                mode: if pointwise {
                    FEquivalence::Pointwise
                } else {
                    FEquivalence::Abstract
                },
                threshold: None,
            };
            let p = if oracle {
                components_via_oracle(&r)?
            } else if let Some(k) = kmax {
                eq.equivalence_partition(&r, k)?
            } else {
                eq.monomorphic_partition(&r)?
            };
            emit(&out, &format!("{}\n", p.to_json()))?;
        }
        Command::Profile {
            input,
            nmax,
            csv,
            generic,
        } => {
            let r = read_structure(&input)?;
            let series = if generic {
                profile_series_generic(&r, nmax)?
            } else {
                profile_series(&r, nmax)?
            };
            emit(&csv, &series.to_csv())?;
        }
        Command::Classify {
            csv,
            dmax,
            pmax,
            tail_start,
            ratio,
        } => {
            let text = fs::read_to_string(&csv).with_context(|| format!("reading {}", csv.display()))?;
            let series = ProfileSeries::from_csv(&text)?;
            let config = GrowthConfig {
                d_max: dmax,
                p_max: pmax,
                tail_start,
                ratio_threshold: ratio,
                ..Default::default()
            };
            print!("{}", pretty(&classify_growth(&series, &config)));
        }
        Command::Bounds {
            source,
            nmax,
            kind,
            out,
        } => {
            let r = source.load()?;
            let kind = match kind {
                Some(k) => k.parse::<Kind>()?,
                None => Kind::infer(&r).ok_or_else(|| {
                    monodec::Error::InvalidArgument("no registered kind admits the input; pass --kind".into())
                })?,
            };
            let levels = ages(&r, nmax)?;
            let bounds = bounds_up_to(&levels, kind, nmax)?;
            let sig = kind.signature();
            let listed = bounds
                .iter()
                .map(|c| {
                    Ok(json!({
                        "size": c.n(),
                        "code": c.to_hex(),
                        "structure": c.decode(&sig)?,
                    }))
                })
                .collect::<monodec::Result<Vec<_>>>()?;
            emit(&out, &pretty(&json!({ "kind": kind.to_string(), "nmax": nmax, "bounds": listed })))?;
        }
        Command::Witness {
            input,
            target,
            all,
            out,
        } => {
            let g = read_structure(&input)?;
            let text = if all {
                let found = dichotomy_witness_all(&g, target)?;
                if found.is_empty() {
                    bail!(monodec::Error::SearchFailed(format!(
                        "neither alternative realized at size {target}"
                    )));
                }
                pretty(&found)
            } else {
                pretty(&dichotomy_witness(&g, target)?)
            };
            emit(&out, &text)?;
        }
        Command::Extract {
            input,
            k,
            target,
            extend,
            out,
        } => {
            let r = read_structure(&input)?;
            let res = invariant_restriction(&r, k, target)?;
            let extension = extend.map(|rows| res.extend(rows)).transpose()?;
            emit(
                &out,
                &pretty(&json!({ "restriction": res, "extension": extension })),
            )?;
        }
        Command::Sweep {
            family,
            sizes,
            nmax,
            out,
        } => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["family", "k", "n", "phi", "components"])?;
            for k in sizes {
                let spec = family.spec(k)?;
                let r = generate(&spec)?;
                let components = monomorphic_partition(&r)?.len();
                let series = profile_series(&r, nmax.min(r.n()))?;
                for (n, phi) in series.values().iter().enumerate() {
                    w.serialize((&family.family, k, n, phi, components))?;
                }
            }
            let text = String::from_utf8(w.into_inner()?)?;
            emit(&out, &text)?;
        }
        Command::Verify {
            suite,
            samples,
            n,
            seed,
            json,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut reports = Vec::new();
            println!("{:<16} {:>8} {:>10}  result", "suite", "samples", "violations");
            for s in suites {
                let config = SuiteConfig {
                    samples,
                    n: n.unwrap_or(s.default_n()),
                    seed,
                };
                let r = run_suite(s, &config)?;
                let result = match (r.asserts, r.passed()) {
                    (false, _) => "report",
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                };
                println!("{:<16} {:>8} {:>10}  {result}", s.name(), r.samples, r.violations);
                if r.asserts {
                    for d in &r.details {
                        println!("    {d}");
                    }
                }
                reports.push(r);
            }
            if let Some(p) = json {
                write_atomic(&p, &pretty(&reports))?;
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<monodec::Error>().map(monodec::Error::class) {
        Some(ErrorClass::SearchFailure) => 2,
        Some(ErrorClass::Defect) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
