mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bongard_core::likelihood::CompatibilityReport;
use bongard_core::report::{solve_problem, DEFAULT_TOP};
use bongard_core::{
    build_problem_with, compatibility, load_binary_image, load_problem, make_problem, ProblemContext, RuleAst, Template,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::Settings;

#[derive(Parser)]
#[command(name = "bongard", version, about = "Bayesian rule induction for Bongard problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the posterior over rules and print the most probable ones per side.
    Solve(SolveArgs),
    /// Evaluate one rule on the twelve images.
    Eval(EvalArgs),
    /// Render a synthetic problem to PNG files plus a manifest.
    Synth(SynthArgs),
    /// List the figures found in each image with their attributes.
    Features(FeaturesArgs),
}

/// Where the twelve images come from.
#[derive(Args)]
struct ProblemSource {
    /// Manifest naming six left and six right images.
    #[arg(long, value_name = "PATH", conflicts_with = "template")]
    manifest: Option<PathBuf>,
    /// Generate a synthetic problem in memory instead.
    #[arg(long, value_name = "NAME")]
    template: Option<Template>,
    /// Seed for --template.
    #[arg(long, value_name = "N", default_value_t = 1, requires = "template")]
    template_seed: u64,
    /// Settings file (TOML, or JSON by extension) with [sampler], [ingest] and [semantics] tables.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

impl ProblemSource {
    fn settings(&self) -> Result<Settings> {
        self.config
            .as_deref()
            .map_or_else(|| Ok(Settings::default()), Settings::load)
    }

    fn load(&self, settings: &Settings) -> Result<(String, ProblemContext)> {
        match (&self.manifest, self.template) {
            (Some(path), _) => {
                let ctx = load_problem(path, &settings.ingest, settings.semantics.clone())?;
                Ok((path.display().to_string(), ctx))
            }
            (None, Some(t)) => {
                let p = make_problem(t, self.template_seed)?;
                let ctx = build_problem_with(&p.left, &p.right, &settings.ingest, settings.semantics.clone())?;
                Ok((format!("{t} (seed {})", self.template_seed), ctx))
            }
            (None, None) => bail!("give --manifest PATH or --template NAME"),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: ProblemSource,
    #[arg(long)]
    chains: Option<usize>,
    /// Retained samples per chain.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    thinning: Option<usize>,
    #[arg(long)]
    burn_in: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Keep productions the examples cannot license.
    #[arg(long)]
    no_prune: bool,
    /// Rules listed per side.
    #[arg(long, default_value_t = DEFAULT_TOP)]
    top: usize,
    /// Also write the report as JSON ("-" for standard output).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    source: ProblemSource,
    /// Rule text, e.g. "LEFT:EXISTS(OUTLINE(FIGURES))".
    rule: String,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Template name; see --list.
    #[arg(required_unless_present = "list")]
    template: Option<Template>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory.
    #[arg(long, value_name = "DIR", required_unless_present = "list")]
    out: Option<PathBuf>,
    /// Print the available templates and their intended rules.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct FeaturesArgs {
    #[command(flatten)]
    source: ProblemSource,
    /// A single image instead of a whole problem.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["manifest", "template"])]
    image: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

/// Writes to standard output; a reader that went away early is not an error.
fn emit(text: &str) -> Result<()> {
    let mut stdout = io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e).context("cannot write to standard output"),
        _ => Ok(()),
    }
}

fn write_json(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        emit(&format!("{text}\n"))
    } else {
        fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display()))
    }
}

fn solve(args: SolveArgs) -> Result<()> {
    let settings = args.source.settings()?;
    let mut config = settings.sampler.clone();
    for (slot, value) in [
        (&mut config.chains, args.chains),
        (&mut config.samples_per_chain, args.samples),
        (&mut config.thinning, args.thinning),
        (&mut config.burn_in, args.burn_in),
    ] {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(e) = args.epsilon {
        config.epsilon = e;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if args.no_prune {
        config.prune = false;
    }
    config.validate()?;
    let (name, ctx) = args.source.load(&settings)?;
    let report = solve_problem(&name, &ctx, &config, args.top)?;
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        emit(&report.to_text())?;
    }
    if let Some(path) = &args.json {
        write_json(path, &report.to_json())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    rule: String,
    #[serde(flatten)]
    report: &'a CompatibilityReport,
}

fn eval(args: EvalArgs) -> Result<()> {
    let rule = RuleAst::parse(&args.rule).map_err(|e| anyhow::anyhow!("cannot parse rule: {e}"))?;
    let settings = args.source.settings()?;
    let (_, ctx) = args.source.load(&settings)?;
    let report = compatibility(&rule, &ctx);
    let truth = report.truth_string();
    let mut out = String::new();
    writeln!(out, "{rule}")?;
    writeln!(out, "truth:        {truth}")?;
    writeln!(out, "mistakes:     {}", report.mistakes)?;
    writeln!(out, "undefined:    {}", report.undefined_hit)?;
    writeln!(out, "informative:  {}", report.informative)?;
    writeln!(out, "compatible:   {}", report.compatible)?;
    emit(&out)?;
    if let Some(path) = &args.json {
        let out = EvalOutput {
            rule: rule.to_string(),
            report: &report,
        };
        write_json(path, &serde_json::to_string_pretty(&out)?)?;
    }
    Ok(())
}

fn synth(args: SynthArgs) -> Result<()> {
    if args.list {
        for t in Template::ALL {
            emit(&format!("{:<28} {}\n", t.name(), t.intended_rules().join("  ")))?;
        }
        return Ok(());
    }
    let (Some(t), Some(out)) = (args.template, args.out) else {
        bail!("give a template and --out DIR");
    };
    let problem = make_problem(t, args.seed)?;
    let manifest = problem.write(&out)?;
    emit(&format!("{}\n", manifest.display()))?;
    Ok(())
}

#[derive(Serialize)]
struct FigureRow {
    image: String,
    id: usize,
    shape: bongard_core::ShapeClass,
    fill: bongard_core::FillClass,
    pixels: usize,
    centroid: (f64, f64),
    attributes: bongard_core::AttributeVector,
}

fn figure_rows(label: &str, objects: &[bongard_core::FigureObject]) -> Vec<FigureRow> {
    objects
        .iter()
        .map(|o| FigureRow {
            image: label.to_string(),
            id: o.id,
            shape: o.shape,
            fill: o.fill,
            pixels: o.pixel_count,
            centroid: o.centroid,
            attributes: o.attributes,
        })
        .collect()
}

fn features(args: FeaturesArgs) -> Result<()> {
    let settings = args.source.settings()?;
    let rows = if let Some(path) = &args.image {
        let img = load_binary_image(path, settings.ingest.threshold)?;
        figure_rows(
            &path.display().to_string(),
            &bongard_core::ingest::segment_with(&img, settings.ingest.min_pixels),
        )
    } else {
        let (_, ctx) = args.source.load(&settings)?;
        ctx.scenes()
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                let label = if i < 6 {
                    format!("left_{i}")
                } else {
                    format!("right_{}", i - 6)
                };
                figure_rows(&label, &s.objects)
            })
            .collect()
    };
    let mut out = String::new();
    writeln!(
        out,
        "{:<10} {:>3} {:<9} {:<7} {:>6} {:>7} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>3}",
        "image",
        "id",
        "shape",
        "fill",
        "pixels",
        "x",
        "y",
        "size",
        "orient",
        "convex",
        "compact",
        "elong",
        "color",
        "nc"
    )?;
    for r in &rows {
        let a = &r.attributes;
        writeln!(
            out,
            "{:<10} {:>3} {:<9} {:<7} {:>6} {:>7.1} {:>7.1} {:>6.2} {:>6.2} {:>6.3} {:>6.3} {:>6.2} {:>6.3} {:>3}",
            r.image,
            r.id,
            format!("{:?}", r.shape).to_lowercase(),
            format!("{:?}", r.fill).to_lowercase(),
            r.pixels,
            a.xpos,
            a.ypos,
            a.size,
            a.orientation,
            a.convexity,
            a.compactness,
            a.elongation,
            a.color,
            a.ncorners
        )?;
    }
    emit(&out)?;
    if let Some(path) = &args.json {
        write_json(path, &serde_json::to_string_pretty(&rows)?)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Eval(a) => eval(a),
        Command::Synth(a) => synth(a),
        Command::Features(a) => features(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
