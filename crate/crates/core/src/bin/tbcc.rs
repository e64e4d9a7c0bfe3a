use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tbcc::codec::{catalog, validate_code, CodeSpec, LlrPlanes};
use tbcc::graph::{build_region_graph, build_tanner, RegionMode};
use tbcc::harness::{run_wer, DecoderConfig, ExperimentPlan, PreparedDecoder};
use tbcc::spectrum::{
    beast_spectrum, bruteforce_spectrum, union_bound, BeastCaps, SpectrumSidecar, SpherePacking,
    WeightSpectrum,
};

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "tbcc",
    version,
    about = "Two-dimensional tail-biting convolutional codes"
)]
struct Cli {
    /// Seed for every random choice the command makes.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Beast,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Kikuchi,
    Modified,
}

#[derive(clap::Args)]
struct CodeArg {
    /// Catalog name (c1..c7, ex4) or a code-spec file.
    code: String,
    /// Override the information support, e.g. `4x4`.
    #[arg(long, value_name = "N1xN2")]
    info: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check non-degeneracy, coprimality, invertibility and the parity matrix.
    Validate {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        json: bool,
    },
    /// Low-weight spectrum as CSV.
    Spectrum {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum, default_value = "beast")]
        method: Method,
        #[arg(long, default_value_t = 10)]
        w_max: usize,
        /// Write the CSV here, with a `.json` sidecar next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union bound of a code or the sphere-packing bound, as CSV.
    Bounds {
        /// Code for the union bound.
        #[arg(long, value_name = "CODE", conflicts_with = "splb")]
        union: Option<String>,
        #[arg(long, requires_all = ["n", "k"])]
        splb: bool,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 10)]
        w_max: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
    /// Region graph used by GBP.
    Regions {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum, default_value = "modified")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Decode one received word given as whitespace-separated LLRs, plane
    /// by plane in row-major order.
    Decode {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, default_value = "viterbi")]
        decoder: String,
        #[arg(long)]
        llr: PathBuf,
    },
    /// Monte-Carlo WER curve from a plan file.
    Simulate {
        plan: PathBuf,
        /// Overrides the plan's output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_code(arg: &CodeArg) -> Result<CodeSpec, Box<dyn Error>> {
    let spec = match catalog::get(&arg.code) {
        Some(s) => s,
        None => std::fs::read_to_string(&arg.code)
            .map_err(|e| format!("{}: {e}", arg.code))?
            .parse::<CodeSpec>()?,
    };
    match &arg.info {
        None => Ok(spec),
        Some(s) => {
            let (a, b) = s
                .split_once('x')
                .ok_or_else(|| format!("--info {s:?}: expected N1xN2"))?;
            Ok(spec.with_info(a.trim().parse()?, b.trim().parse()?)?)
        }
    }
}

fn validate(code: &CodeArg, json: bool) -> CliResult {
    let report = validate_code(&load_code(code)?)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn spectrum(code: &CodeArg, method: Method, w_max: usize, out: Option<&Path>) -> CliResult {
    let spec = load_code(code)?;
    let t = Instant::now();
    let s = match method {
        Method::Beast => beast_spectrum(&spec, w_max, BeastCaps::default())?,
        Method::Bruteforce => bruteforce_spectrum(&spec, w_max)?,
    };
    let csv = s.to_csv();
    match out {
        None => print!("{csv}"),
        Some(path) => {
            std::fs::write(path, &csv)?;
            let sidecar = SpectrumSidecar {
                spec_sha256: spec.content_hash(),
                method: match method {
                    Method::Beast => "beast",
                    Method::Bruteforce => "bruteforce",
                }
                .into(),
                w_max,
                exhaustive: s.exhaustive,
                wall_time_s: t.elapsed().as_secs_f64(),
            };
            std::fs::write(
                path.with_extension("json"),
                serde_json::to_string_pretty(&sidecar)?,
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn db_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Box<dyn Error>> {
    if !(step > 0.0 && to >= from) {
        return Err("need --step > 0 and --to >= --from".into());
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + i as f64 * step).collect())
}

fn bounds(
    union: Option<&str>,
    splb: Option<(usize, usize)>,
    w_max: usize,
    grid: &[f64],
) -> CliResult {
    let curve: Box<dyn Fn(f64) -> f64> = match (union, splb) {
        (Some(code), None) => {
            let spec = load_code(&CodeArg {
                code: code.into(),
                info: None,
            })?;
            let s: WeightSpectrum = beast_spectrum(&spec, w_max, BeastCaps::default())?;
            let rate = spec.rate();
            Box::new(move |db| union_bound(&s, rate, db))
        }
        (None, Some((n, k))) => {
            let sp = SpherePacking::new(n, k)?;
            Box::new(move |db| sp.eval(db))
        }
        _ => return Err("give exactly one of --union CODE or --splb -n N -k K".into()),
    };
    println!("ebn0_db,bound");
    for &db in grid {
        println!("{db},{:e}", curve(db));
    }
    Ok(ExitCode::SUCCESS)
}

fn regions(code: &CodeArg, mode: Mode, json: bool) -> CliResult {
    let spec = load_code(code)?;
    let graph = build_tanner(&tbcc::codec::build_parity_check(&spec)?);
    let mode = match mode {
        Mode::Kikuchi => RegionMode::Kikuchi,
        Mode::Modified => RegionMode::Modified,
    };
    let rg = build_region_graph(&graph, mode);
    if json {
        println!("{}", serde_json::to_string_pretty(&rg)?);
    } else {
        let layers: Vec<String> = rg.layer_sizes().iter().map(usize::to_string).collect();
        println!(
            "# {} regions, layers {}",
            rg.regions.len(),
            layers.join("/")
        );
        print!("{}", rg.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn decode(code: &CodeArg, decoder: &str, llr: &Path, seed: u64) -> CliResult {
    let spec = load_code(code)?;
    let cfg: DecoderConfig = toml::from_str(&format!("kind = {decoder:?}"))
        .map_err(|_| format!("unknown decoder {decoder:?}"))?;
    let values = std::fs::read_to_string(llr)?
        .split_whitespace()
        .map(str::parse::<f64>)
        .collect::<Result<Vec<_>, _>>()?;
    let (n1, n2) = spec.info();
    let planes = LlrPlanes::from_flat(spec.n(), n1, n2, &values)?;
    let dec = PreparedDecoder::new(&spec, &cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let out = dec.decode(&planes, &mut rng)?;
    let rows: Vec<String> = (0..n1)
        .map(|k1| {
            (0..n2)
                .map(|k2| char::from(b'0' + out.info.get(k1, k2)))
                .collect()
        })
        .collect();
    let report = serde_json::json!({
        "decoder": cfg.name(),
        "info": rows,
        "iterations": out.iterations,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn simulate(plan: &Path, out: Option<&Path>, seed: Option<u64>) -> CliResult {
    let text = std::fs::read_to_string(plan).map_err(|e| format!("{}: {e}", plan.display()))?;
    let mut p = ExperimentPlan::from_toml(&text)?;
    if let Some(s) = seed {
        p.seed = s;
    }
    let resolved = p.resolve(plan.parent().unwrap_or(Path::new(".")))?;
    let curve = run_wer(&resolved)?;
    let csv = curve.to_csv();
    match out.map(Path::to_path_buf).or(resolved.output) {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Validate { code, json } => validate(code, *json),
        Command::Spectrum {
            code,
            method,
            w_max,
            out,
        } => spectrum(code, *method, *w_max, out.as_deref()),
        Command::Bounds {
            union,
            splb,
            n,
            k,
            w_max,
            from,
            to,
            step,
        } => {
            let sp = if *splb { n.zip(*k) } else { None };
            bounds(union.as_deref(), sp, *w_max, &db_grid(*from, *to, *step)?)
        }
        Command::Regions { code, mode, json } => regions(code, *mode, *json),
        Command::Decode { code, decoder, llr } => decode(code, decoder, llr, seed),
        Command::Simulate { plan, out } => simulate(plan, out.as_deref(), cli.seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
