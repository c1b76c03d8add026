mod baseline;
mod error;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lipaffine::pnm::read_pgm_with_header;
use lipaffine::{
    apply_image, apply_image_counting, compute_stats, decode_image, encode_image,
    estimate_transform, sample_curve, to_pgm_bytes, AffineTransform, EnhanceError, GrayLevel,
    PnmFormat, RawImage, TargetStats,
};

use crate::error::CliError;
use crate::report::{format_significant, Report, ReportFormat};

#[derive(Parser)]
#[command(
    name = "lipaffine",
    version,
    about = "Automatic image enhancement with logarithmic affine transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate and apply the normalizing transform to a PGM image
    Enhance(EnhanceArgs),
    /// Print log-domain statistics and the transform enhance would use
    Stats(StatsArgs),
    /// Apply a given transform alpha <x> (v <+> beta) to a PGM image
    Apply(ApplyArgs),
    /// Print the transfer curve of a transform as CSV
    Curve(CurveArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// Target log-mean, in (-1, 1)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    target_mean: f64,
    /// Target log-variance, positive
    #[arg(long = "target-var", default_value_t = 1.0 / 3.0)]
    target_var: f64,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Decimals shown in text reports
    #[arg(long, default_value_t = 2)]
    decimals: usize,
}

#[derive(Args)]
struct EnhanceArgs {
    input: PathBuf,
    output: PathBuf,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    report: ReportArgs,
    /// Also run a naive linear stretch and report how many pixels it clips
    #[arg(long)]
    baseline: bool,
    /// Where to write the baseline-stretched image (implies --baseline)
    #[arg(long)]
    baseline_out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    input: PathBuf,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
}

#[derive(Args)]
struct ApplyArgs {
    input: PathBuf,
    output: PathBuf,
    #[command(flatten)]
    transform: TransformArgs,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    transform: TransformArgs,
    #[arg(long, default_value_t = 256)]
    samples: usize,
}

impl TargetArgs {
    fn target(&self) -> Result<TargetStats, CliError> {
        let mean = GrayLevel::new(self.target_mean)
            .map_err(|e| CliError::InvalidArg(format!("--target-mean: {e}")))?;
        TargetStats::new(mean, self.target_var)
            .map_err(|e| CliError::InvalidArg(format!("--target-var: {e}")))
    }
}

impl TransformArgs {
    fn transform(&self) -> Result<AffineTransform, CliError> {
        let (alpha, beta) = match (self.alpha, self.beta) {
            (Some(a), Some(b)) => (a, b),
            (None, None) => {
                return Err(CliError::MissingParam(
                    "--alpha and --beta are required".into(),
                ))
            }
            (None, _) => return Err(CliError::MissingParam("--alpha is required".into())),
            (_, None) => return Err(CliError::MissingParam("--beta is required".into())),
        };
        let beta =
            GrayLevel::new(beta).map_err(|e| CliError::InvalidArg(format!("--beta: {e}")))?;
        AffineTransform::new(alpha, beta).map_err(|e| CliError::InvalidArg(format!("--alpha: {e}")))
    }
}

fn load(path: &Path) -> Result<(PnmFormat, RawImage), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let (header, img) = read_pgm_with_header(&bytes).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })?;
    Ok((header.format, img))
}

fn save(path: &Path, img: &RawImage, format: PnmFormat) -> Result<(), CliError> {
    fs::write(path, to_pgm_bytes(img, format)).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn print(text: &str) -> Result<(), CliError> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn cmd_enhance(args: &EnhanceArgs) -> Result<(), CliError> {
    let target = args.target.target()?;
    let (format, raw) = load(&args.input)?;
    let gray = decode_image(&raw);
    let stats = compute_stats(&gray)?;
    let transform = estimate_transform(&stats, &target)?;
    let (enhanced, lip_clipped) = apply_image_counting(&transform, &gray);
    save(
        &args.output,
        &encode_image(&enhanced, raw.maxval())?,
        format,
    )?;

    let mut report = Report::new(&stats, Some(transform));
    if args.baseline || args.baseline_out.is_some() {
        let stretch = baseline::linear_stretch(&raw, &target)
            .ok_or(EnhanceError::ConstantImage { variance: 0.0 })?;
        if let Some(path) = &args.baseline_out {
            save(path, &stretch.image, format)?;
        }
        report.lip_clipped = Some(lip_clipped);
        report.baseline_clipped = Some(stretch.clipped);
    }
    print(&report.render(args.report.report, args.report.decimals))
}

fn cmd_stats(args: &StatsArgs) -> Result<(), CliError> {
    let target = args.target.target()?;
    let (_, raw) = load(&args.input)?;
    let stats = compute_stats(&decode_image(&raw))?;
    let transform = match estimate_transform(&stats, &target) {
        Ok(t) => Some(t),
        Err(EnhanceError::ConstantImage { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    print(&Report::new(&stats, transform).render(args.report.report, args.report.decimals))
}

fn cmd_apply(args: &ApplyArgs) -> Result<(), CliError> {
    let transform = args.transform.transform()?;
    let (format, raw) = load(&args.input)?;
    let out = apply_image(&transform, &decode_image(&raw));
    save(&args.output, &encode_image(&out, raw.maxval())?, format)
}

fn cmd_curve(args: &CurveArgs) -> Result<(), CliError> {
    let transform = args.transform.transform()?;
    let samples = sample_curve(&transform, args.samples)?;
    let mut csv = String::from("v,psi_v\n");
    for (v, psi) in samples {
        csv.push_str(&format_significant(v.value(), 9));
        csv.push(',');
        csv.push_str(&format_significant(psi.value(), 9));
        csv.push('\n');
    }
    print(&csv)
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return Ok(());
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid usage");
            return Err(CliError::Usage(
                first.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    match &cli.command {
        Command::Enhance(args) => cmd_enhance(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Curve(args) => cmd_curve(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("lipaffine: error[{}]: {msg}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
