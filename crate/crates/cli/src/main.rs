mod format;
mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netphonon::bounds::{self, ClassifyOptions, Verdict};
use netphonon::capacity::{kirchhoff_index, CapacitySolver};
use netphonon::circulant::circulant_eigenvalues;
use netphonon::graph::{self, GeneratorSpec};
use netphonon::spectral::NormalModes;
use netphonon::sweep;
use netphonon::thermo;

use crate::format::number;
use crate::svg::{Plot, Series};

/// Phonon thermodynamics of harmonic oscillator networks.
#[derive(Parser)]
#[command(name = "netphonon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Laplacian spectrum, average Wiener capacity and Kirchhoff index.
    Spectrum {
        #[command(flatten)]
        source: Source,
    },
    /// Phonon number, energy, specific heat and their capacity bounds.
    Thermo {
        #[command(flatten)]
        source: Source,
        /// Inverse temperature.
        #[arg(long, value_parser = positive)]
        beta: f64,
        /// Volume in the quantum-regime indicator.
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        volume: f64,
    },
    /// Circulant parameter sweeps written as CSV and SVG.
    Sweep(SweepArgs),
    /// Bound constants alpha_N(k) and alpha_E.
    Constants,
    /// Bounded/divergent verdict for a graph family.
    Classify {
        /// complete, path, cycle or circulant-power:R with R in [0, 1].
        #[arg(long)]
        family: Family,
        /// Sample sizes as a:b:step or a comma list.
        #[arg(long, default_value = "10:200:10", value_parser = int_list)]
        ns: IntList,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generator: path:n, cycle:n, complete:n or circulant:n,l.
    #[arg(long = "gen")]
    generator: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    #[value(name = "phonons_vs_n")]
    PhononsVsN,
    #[value(name = "cap_vs_n")]
    CapVsN,
    #[value(name = "heat_vs_l")]
    HeatVsL,
    #[value(name = "bound_vs_T")]
    BoundVsT,
}

#[derive(Args)]
struct SweepArgs {
    experiment: Experiment,
    /// Graph sizes for phonons_vs_n and cap_vs_n [default: 10:1000:10].
    #[arg(long, value_parser = int_list)]
    ns: Option<IntList>,
    /// Powers r in l = floor((n/2)^r).
    #[arg(long, value_delimiter = ',', default_value = "0,0.2,0.4,0.6,0.8,1", value_parser = unit_interval)]
    r_values: Vec<f64>,
    /// Inverse temperature for phonons_vs_n and heat_vs_l.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    beta: f64,
    /// Graph size for heat_vs_l and bound_vs_T.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Neighbour counts [default: 1:499:1 for heat_vs_l, 100,200,300,400 for bound_vs_T].
    #[arg(long, value_parser = int_list)]
    l_values: Option<IntList>,
    /// Temperatures for bound_vs_T as a:b:step.
    #[arg(long, default_value = "0.01:3:0.01", value_parser = float_range)]
    t_range: FloatList,
    /// Append the complete graph K_n to heat_vs_l.
    #[arg(long)]
    include_complete: bool,
    /// Logarithmic y axis in the plots.
    #[arg(long)]
    log_y: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone)]
enum Family {
    Complete,
    Path,
    Cycle,
    CirculantPower(f64),
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "complete" => Ok(Family::Complete),
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            _ => {
                let r = s
                    .strip_prefix("circulant-power:")
                    .ok_or_else(|| format!("unknown family `{s}`"))?;
                Ok(Family::CirculantPower(unit_interval(r)?))
            }
        }
    }
}

#[derive(Clone)]
struct IntList(Vec<usize>);

#[derive(Clone)]
struct FloatList(Vec<f64>);

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive and finite, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn unit_interval(s: &str) -> std::result::Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        Ok(v) => Err(format!("must lie in [0, 1], got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

/// `a:b:step`, `a:b` or `x,y,z`.
fn int_list(s: &str) -> std::result::Result<IntList, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (a, b, step) = match parts.as_slice() {
            [a, b] => (parse(a)?, parse(b)?, 1),
            [a, b, c] => (parse(a)?, parse(b)?, parse(c)?),
            _ => return Err(format!("expected a:b:step, got `{s}`")),
        };
        if step == 0 {
            return Err("step must be positive".into());
        }
        (a..=b).step_by(step).collect()
    } else {
        s.split(',').map(parse).collect::<std::result::Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(IntList(values))
}

fn float_range(s: &str) -> std::result::Result<FloatList, String> {
    let parts = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("expected a:b:step, got `{s}`"));
    };
    if !(*a > 0.0) {
        return Err(format!("range must start above zero, got {a}"));
    }
    sweep::float_grid(*a, *b, *step)
        .map(FloatList)
        .map_err(|e| e.to_string())
}

/// Spectral data for one graph.
struct Analysis {
    eigenvalues: Vec<f64>,
    modes: NormalModes,
    cap_bar: f64,
    kirchhoff: f64,
}

fn analyse(source: &Source) -> Result<Analysis> {
    let g = match (&source.file, &source.generator) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            graph::parse_edge_list(&text)?
        }
        (None, Some(gen)) => {
            let spec: GeneratorSpec = gen.parse()?;
            if let GeneratorSpec::Circulant { n, l } = spec {
                let cs = circulant_eigenvalues(n, l)?;
                let modes = cs.modes();
                let kirchhoff = kirchhoff_index(&modes);
                return Ok(Analysis {
                    eigenvalues: cs.sorted(),
                    modes,
                    cap_bar: kirchhoff,
                    kirchhoff,
                });
            }
            graph::generate(&spec)?
        }
        (None, None) => unreachable!("clap enforces one graph source"),
    };
    let solver = CapacitySolver::new(&g)?;
    let profile = solver.profile()?;
    Ok(Analysis {
        eigenvalues: solver.spectrum().eigenvalues().to_vec(),
        modes: solver.spectrum().modes(),
        cap_bar: profile.average,
        kirchhoff: profile.kirchhoff,
    })
}

fn cmd_spectrum(source: &Source) -> Result<()> {
    let a = analyse(source)?;
    let n = a.eigenvalues.len();
    let eig: Vec<String> = a.eigenvalues.iter().map(|&v| number(v)).collect();
    println!("n = {n}");
    println!("eigenvalues = {}", eig.join(" "));
    println!("cap_bar = {}", number(a.cap_bar));
    println!("kirchhoff = {}", number(a.kirchhoff));
    println!("cap_over_n = {}", number(a.cap_bar / n as f64));
    Ok(())
}

fn cmd_thermo(source: &Source, beta: f64, volume: f64) -> Result<()> {
    let a = analyse(source)?;
    let tp = thermo::thermo_point(&a.modes, beta)?;
    let regime = thermo::regime_indicator(&tp, volume)?;
    let report = bounds::bound_report(&a.modes, beta)?;
    let opt = |v: Option<String>| v.unwrap_or_else(|| "not_applicable".into());
    println!("beta = {}", number(beta));
    println!("avg_N = {}", number(tp.avg_n));
    println!("avg_H = {}", number(tp.avg_h));
    println!("heat = {}", number(tp.heat));
    println!("regime_indicator = {}", number(regime.value));
    println!("cap_over_n = {}", number(report.cap_ratio));
    println!("phonon_bound = {}", number(report.phonon_bound));
    println!("holds_N = {}", report.holds_n);
    println!("heat_bound = {}", opt(report.heat_bound.map(number)));
    println!("holds_c = {}", opt(report.holds_c.map(|b| b.to_string())));
    println!("heat_bound_termwise = {}", number(bounds::heat_bound_termwise(&a.modes, beta)?));
    Ok(())
}

fn cmd_constants() -> Result<()> {
    let c = bounds::constants();
    for (k, v) in &c.alpha_n {
        println!("alpha_N({k}) = {}", number(*v));
    }
    println!("alpha_E = {}", number(c.alpha_e));
    println!("x_star_E = {}", number(c.x_star_e));
    Ok(())
}

fn cmd_classify(family: &Family, ns: &[usize]) -> Result<()> {
    let (name, min_n) = match family {
        Family::Complete => ("complete".to_string(), 2),
        Family::Path => ("path".to_string(), 2),
        Family::Cycle => ("cycle".to_string(), 3),
        Family::CirculantPower(r) => (format!("circulant-power:{r}"), 3),
    };
    if let Some(&n) = ns.iter().find(|&&n| n < min_n) {
        anyhow::bail!(UsageError(format!("family {name} needs n >= {min_n}, got {n}")));
    }
    let family = family.clone();
    let result = bounds::classify_family(
        &name,
        move |n| match family {
            Family::Complete => GeneratorSpec::Complete { n },
            Family::Path => GeneratorSpec::Path { n },
            Family::Cycle => GeneratorSpec::Cycle { n },
            Family::CirculantPower(r) => GeneratorSpec::Circulant {
                n,
                l: sweep::neighbours_for_power(n, r).expect("n >= 3 and r in [0, 1]"),
            },
        },
        ns,
        ClassifyOptions::default(),
    )?;
    println!("n,cap_over_n");
    for (n, ratio) in &result.samples {
        println!("{n},{}", number(*ratio));
    }
    println!("family = {}", result.family);
    println!("slope = {}", number(result.slope));
    let verdict = match result.verdict {
        Verdict::Bounded => "bounded",
        Verdict::Divergent => "divergent",
    };
    println!("verdict = {verdict}");
    Ok(())
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

struct Output<'a> {
    dir: &'a Path,
}

impl Output<'_> {
    fn write(&self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        println!("{}", path.display());
        Ok(())
    }

    fn plot(&self, name: &str, plot: &Plot) -> Result<()> {
        self.write(name, &plot.render())
    }
}

/// Splits rows into one series per key, in order of first appearance.
fn series_by<R, K: Ord + Copy>(
    rows: &[R],
    key: impl Fn(&R) -> K,
    label: impl Fn(K) -> String,
    point: impl Fn(&R) -> (f64, f64),
) -> Vec<Series> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<K, Vec<(f64, f64)>> = BTreeMap::new();
    for row in rows {
        let k = key(row);
        groups
            .entry(k)
            .or_insert_with(|| {
                order.push(k);
                Vec::new()
            })
            .push(point(row));
    }
    order
        .into_iter()
        .map(|k| Series::line(label(k), groups.remove(&k).unwrap_or_default()))
        .collect()
}

/// Orders an `r` value for grouping; sweep r values are finite.
fn r_key(r: f64) -> u64 {
    r.to_bits()
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create output directory {}", args.out.display()))?;
    let out = Output { dir: &args.out };
    let ns = args.ns.clone().unwrap_or_else(|| IntList((10..=1000).step_by(10).collect())).0;
    let r_label = |k: u64| format!("r = {}", f64::from_bits(k));
    let with_log = |mut p: Plot| {
        p.log_y = args.log_y;
        p
    };

    match args.experiment {
        Experiment::PhononsVsN => {
            let rows = sweep::phonons_vs_n(&ns, &args.r_values, args.beta)?;
            out.write("phonons_vs_n.csv", &format::csv(&rows))?;
            let title = format!("beta = {}", number(args.beta));
            let mut p = with_log(Plot::new(format!("<N>, {title}"), "n", "<N>"));
            p.series = series_by(&rows, |r| r_key(r.r), r_label, |r| (r.n as f64, r.avg_n));
            out.plot("phonons_vs_n_avg_n.svg", &p)?;
            let mut p = with_log(Plot::new(format!("c(beta), {title}"), "n", "c"));
            p.series = series_by(&rows, |r| r_key(r.r), r_label, |r| (r.n as f64, r.heat));
            out.plot("phonons_vs_n_heat.svg", &p)?;
        }
        Experiment::CapVsN => {
            let rows = sweep::cap_vs_n(&ns, &args.r_values)?;
            out.write("cap_vs_n.csv", &format::csv(&rows))?;
            let mut p = with_log(Plot::new("Average Wiener capacity over n", "n", "cap/n"));
            p.series = series_by(&rows, |r| r_key(r.r), r_label, |r| (r.n as f64, r.cap_ratio));
            out.plot("cap_vs_n.svg", &p)?;
        }
        Experiment::HeatVsL => {
            let n = args.n;
            let ls = args
                .l_values
                .clone()
                .unwrap_or_else(|| IntList((1..=(n.saturating_sub(1)) / 2).collect()))
                .0;
            let rows = sweep::heat_vs_l(n, &ls, args.beta, args.include_complete)?;
            out.write("heat_vs_l.csv", &format::csv(&rows))?;
            let mut p = with_log(Plot::new(
                format!("c(beta) at n = {n}, beta = {}", number(args.beta)),
                "l",
                "c",
            ));
            let circulant = rows.iter().filter(|r| !r.complete).map(|r| (r.l as f64, r.heat)).collect();
            p.series.push(Series::line(format!("Ci({n}, l)"), circulant));
            let complete: Vec<_> = rows.iter().filter(|r| r.complete).map(|r| (r.l as f64, r.heat)).collect();
            if !complete.is_empty() {
                p.series.push(Series { label: format!("K_{n}"), points: complete, markers: true });
            }
            out.plot("heat_vs_l.svg", &p)?;
        }
        Experiment::BoundVsT => {
            let n = args.n;
            let ls = args.l_values.clone().unwrap_or_else(|| IntList(vec![100, 200, 300, 400])).0;
            let rows = sweep::bound_vs_t(n, &ls, &args.t_range.0)?;
            out.write("bound_vs_T.csv", &format::csv(&rows))?;
            for &l in &ls {
                let block: Vec<_> = rows.iter().filter(|r| r.l == l).collect();
                let mut p = with_log(Plot::new(format!("Ci({n}, {l})"), "T", "c"));
                p.series.push(Series::line("exact", block.iter().map(|r| (r.temperature, r.exact)).collect()));
                p.series.push(Series::line("bound", block.iter().map(|r| (r.temperature, r.bound)).collect()));
                if let Some(first) = block.first() {
                    p.vlines.push((first.threshold, format!("T = {}", number_short(first.threshold))));
                }
                out.plot(&format!("bound_vs_T_l{l}.svg"), &p)?;
            }
        }
    }
    Ok(())
}

fn number_short(v: f64) -> String {
    format!("{v:.3}")
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Spectrum { source } => cmd_spectrum(source),
        Command::Thermo { source, beta, volume } => cmd_thermo(source, *beta, *volume),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Constants => cmd_constants(),
        Command::Classify { family, ns } => cmd_classify(family, &ns.0),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match e.downcast_ref::<netphonon::Error>() {
        Some(err) if !err.is_input_error() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
