// SPDX-License-Identifier: Apache-2.0

//! Job model behind the `alphabezier` binary.
//!
//! Command-line flags are parsed into [`Args`], validated into a
//! [`JobConfig`], and executed by [`execute`], which returns the documents to
//! write without touching the filesystem. [`run`] adds the I/O.

pub mod output;
pub mod svg;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{self, FitResult};
use crate::basis::{BasisSpec, MAX_DEGREE};
use crate::curve::{uniform_params, BezierCurve, MAX_SUBDIVISION_DEPTH};
use crate::error::Error;
use crate::homography::{Alpha, HomographyMap, ReparamKind};
use crate::point::ControlPolygon;
use crate::presets;

use output::{fmt_num, Check, JobOutput, Params, Sample};
use svg::{Svg, Viewport, PALETTE};

/// Environment variable holding the seed of the randomized self test.
pub const SEED_ENV: &str = "ALPHABEZIER_SEED";

/// Indices drawn side by side when `--alpha` is not given for figures.
pub const FIGURE_ALPHAS: [Alpha; 4] = [
    Alpha::Finite(-1.0),
    Alpha::Finite(2.0),
    Alpha::Finite(5.0),
    Alpha::Infinity,
];

/// Index used by single-curve commands when `--alpha` is omitted.
pub const DEFAULT_ALPHA: Alpha = Alpha::Finite(2.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Tabulate or plot the basis functions.
    Basis,
    /// Sample or plot a curve over a control polygon.
    Curve,
    /// Recursive midpoint subdivision of a curve.
    Subdivide,
    /// Degree elevation of a curve.
    Elevate,
    /// Fit a named scalar function in the basis.
    Fit,
    /// Randomized identity checks seeded from ALPHABEZIER_SEED.
    Selftest,
    /// Write every figure family into the --out directory.
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitMethod {
    Collocation,
    LeastSquares,
}

/// Rational Bernstein bases and Bézier curves indexed by a homography.
#[derive(Debug, Clone, Parser)]
#[command(name = "alphabezier", version, about)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Basis degree n (curve commands take it from the polygon).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Index: a number outside [0, 1] or "inf"; comma-separated for
    /// multi-panel basis plots.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Parameter interval "a,b".
    #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
    pub interval: String,
    /// Preset letter a..i, inline "x,y;x,y;...", or a file (JSON array or
    /// one point per line).
    #[arg(long)]
    pub polygon: Option<String>,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Output format; inferred from the --out extension, else json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (directory for `figures`); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Function for `fit`: conic, conic-cos, sin, exp, runge, homography.
    #[arg(long, default_value = "conic")]
    pub function: String,
    #[arg(long, value_enum, default_value = "least-squares")]
    pub method: FitMethod,
}

/// Failure of a CLI job, mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad user input; exit code 2.
    Validation { field: &'static str, message: String },
    /// Filesystem failure; exit code 1.
    Io(std::io::Error),
    /// Unexpected library failure; exit code 1.
    Internal(Error),
}

impl CliError {
    fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Validation {
            field,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation { field, message } => write!(f, "invalid --{field}: {message}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Internal(e) => write!(f, "internal error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Internal(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Where a polygon came from, kept for the JSON `params` block.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonInput {
    pub label: String,
    pub polygon: ControlPolygon,
}

/// A fully validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub degree: Option<usize>,
    pub alphas: Vec<Alpha>,
    pub alpha_given: bool,
    pub interval: (f64, f64),
    pub polygon: Option<PolygonInput>,
    pub samples: usize,
    pub depth: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub function: String,
    pub method: FitMethod,
    pub seed: u64,
}

fn parse_alphas(raw: &str) -> Result<Vec<Alpha>, CliError> {
    let list = raw
        .split(',')
        .map(|t| t.parse::<Alpha>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::invalid("alpha", e.to_string()))?;
    if list.is_empty() {
        return Err(CliError::invalid("alpha", "no index given"));
    }
    Ok(list)
}

fn parse_interval(raw: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(CliError::invalid("interval", format!("expected \"a,b\", got {raw:?}")));
    };
    let a: f64 = a
        .parse()
        .map_err(|_| CliError::invalid("interval", format!("bad number {a:?}")))?;
    let b: f64 = b
        .parse()
        .map_err(|_| CliError::invalid("interval", format!("bad number {b:?}")))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(CliError::invalid("interval", format!("need finite a < b, got [{a}, {b}]")));
    }
    Ok((a, b))
}

fn parse_point_row(line: &str) -> Result<Vec<f64>, CliError> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::invalid("polygon", format!("bad coordinate {t:?}")))
        })
        .collect()
}

fn polygon_from_rows(rows: Vec<Vec<f64>>) -> Result<ControlPolygon, CliError> {
    ControlPolygon::from_coords(&rows).map_err(|e| CliError::invalid("polygon", e.to_string()))
}

/// Resolves a `--polygon` value: preset, inline list, or file.
pub fn load_polygon(raw: &str) -> Result<PolygonInput, CliError> {
    if let Some(p) = presets::preset(raw) {
        return Ok(PolygonInput {
            label: format!("pi_{}", raw.trim().to_ascii_lowercase().trim_start_matches("pi_")),
            polygon: p,
        });
    }
    if raw.contains(';') {
        let rows = raw
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_point_row)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(PolygonInput {
            label: "inline".into(),
            polygon: polygon_from_rows(rows)?,
        });
    }
    let path = Path::new(raw);
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::invalid("polygon", format!("{raw:?} is not a preset and cannot be read: {e}"))
    })?;
    let polygon = if text.trim_start().starts_with('[') {
        serde_json::from_str::<ControlPolygon>(&text)
            .map_err(|e| CliError::invalid("polygon", e.to_string()))?
    } else {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_point_row)
            .collect::<Result<Vec<_>, _>>()?;
        polygon_from_rows(rows)?
    };
    Ok(PolygonInput {
        label: raw.to_string(),
        polygon,
    })
}

impl JobConfig {
    /// Validates parsed flags against the preconditions of the command.
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let alpha_given = args.alpha.is_some();
        let alphas = match &args.alpha {
            Some(raw) => parse_alphas(raw)?,
            None if args.command == Command::Basis => FIGURE_ALPHAS.to_vec(),
            None => vec![DEFAULT_ALPHA],
        };
        let interval = parse_interval(&args.interval)?;
        let format = match args.format {
            Some(f) => f,
            None => match args.out.as_deref().and_then(Path::extension).and_then(|e| e.to_str()) {
                Some("csv") => Format::Csv,
                Some("svg") => Format::Svg,
                _ => Format::Json,
            },
        };
        let polygon = args.polygon.as_deref().map(load_polygon).transpose()?;
        let seed = match std::env::var(SEED_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::invalid("seed", format!("{SEED_ENV}={s:?} is not a u64")))?,
            Err(_) => 0,
        };

        let cfg = Self {
            command: args.command,
            degree: args.degree,
            alphas,
            alpha_given,
            interval,
            polygon,
            samples: args.samples,
            depth: args.depth,
            format,
            out: args.out,
            function: args.function,
            method: args.method,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(n) = self.degree {
            if n == 0 || n > MAX_DEGREE {
                return Err(CliError::invalid("degree", format!("must be in 1..={MAX_DEGREE}, got {n}")));
            }
        }
        if self.samples < 2 {
            return Err(CliError::invalid("samples", "need at least 2 samples"));
        }
        let single_alpha = |what: &str| {
            if self.alphas.len() != 1 {
                Err(CliError::invalid("alpha", format!("{what} takes a single index")))
            } else {
                Ok(())
            }
        };
        match self.command {
            Command::Basis => {
                if self.degree.is_none() {
                    return Err(CliError::invalid("degree", "required for the basis command"));
                }
                if self.format != Format::Svg {
                    single_alpha("csv/json output")?;
                }
            }
            Command::Curve | Command::Subdivide | Command::Elevate => {
                let Some(p) = &self.polygon else {
                    return Err(CliError::invalid("polygon", "required for curve commands"));
                };
                if let Some(n) = self.degree {
                    if n != p.polygon.degree() {
                        return Err(CliError::invalid(
                            "degree",
                            format!("polygon has degree {}, not {n}", p.polygon.degree()),
                        ));
                    }
                }
                if p.polygon.degree() > MAX_DEGREE - 1 {
                    return Err(CliError::invalid("polygon", "too many control points"));
                }
                single_alpha("curve commands")?;
                if self.command == Command::Subdivide && self.depth > MAX_SUBDIVISION_DEPTH {
                    return Err(CliError::invalid(
                        "depth",
                        format!("must be <= {MAX_SUBDIVISION_DEPTH}, got {}", self.depth),
                    ));
                }
            }
            Command::Fit => {
                single_alpha("fit")?;
                let _ = named_function(&self.function, &self.map(self.alphas[0])?)?;
                let n = self.degree.unwrap_or(6);
                if self.method == FitMethod::Collocation && n > approx::MAX_COLLOCATION_DEGREE {
                    return Err(CliError::invalid("degree", "collocation fit supports degree <= 30"));
                }
                if self.method == FitMethod::LeastSquares && self.samples < n + 1 {
                    return Err(CliError::invalid("samples", "need at least degree + 1 samples"));
                }
            }
            Command::Selftest => {}
            Command::Figures => {
                if self.out.is_none() {
                    return Err(CliError::invalid("out", "figures needs an output directory"));
                }
            }
        }
        for &al in &self.alphas {
            self.map(al)?;
        }
        Ok(())
    }

    fn map(&self, alpha: Alpha) -> Result<HomographyMap, CliError> {
        HomographyMap::new(self.interval.0, self.interval.1, alpha)
            .map_err(|e| CliError::invalid("alpha", e.to_string()))
    }

    fn params(&self) -> Params {
        Params {
            command: format!("{:?}", self.command).to_ascii_lowercase(),
            degree: self.degree,
            alpha: self.alphas.clone(),
            interval: [self.interval.0, self.interval.1],
            samples: self.samples,
            depth: (self.command == Command::Subdivide).then_some(self.depth),
            polygon: self.polygon.as_ref().map(|p| p.label.clone()),
            function: (self.command == Command::Fit).then(|| self.function.clone()),
            seed: (self.command == Command::Selftest).then_some(self.seed),
        }
    }

    fn curve(&self) -> Result<BezierCurve, CliError> {
        let p = self.polygon.as_ref().expect("validated");
        Ok(BezierCurve::with_map(p.polygon.clone(), self.map(self.alphas[0])?)?)
    }
}

/// A rendered document and where it should go (`None` = stdout).
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub contents: String,
}

/// Runs a validated job and returns its documents.
pub fn execute(cfg: &JobConfig) -> Result<Vec<Artifact>, CliError> {
    let single = |contents: String| {
        Ok(vec![Artifact {
            path: cfg.out.clone(),
            contents,
        }])
    };
    match cfg.command {
        Command::Basis => single(cmd_basis(cfg)?),
        Command::Curve => single(cmd_curve(cfg)?),
        Command::Subdivide => single(cmd_subdivide(cfg)?),
        Command::Elevate => single(cmd_elevate(cfg)?),
        Command::Fit => single(cmd_fit(cfg)?),
        Command::Selftest => single(cmd_selftest(cfg)?),
        Command::Figures => cmd_figures(cfg),
    }
}

/// Parses, executes and writes; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = JobConfig::from_args(args).and_then(|cfg| {
        let docs = execute(&cfg)?;
        write_artifacts(&docs)?;
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("alphabezier: {e}");
            e.exit_code()
        }
    }
}

pub fn write_artifacts(docs: &[Artifact]) -> Result<(), CliError> {
    use std::io::Write as _;
    for doc in docs {
        match &doc.path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(p, &doc.contents)?;
            }
            None => std::io::stdout().write_all(doc.contents.as_bytes())?,
        }
    }
    Ok(())
}

fn csv_line(cells: impl IntoIterator<Item = String>) -> String {
    let mut s = cells.into_iter().collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

fn xy(p: &crate::point::Point) -> [f64; 2] {
    [p[0], if p.dim() > 1 { p[1] } else { 0.0 }]
}

fn coord_header(dim: usize) -> impl Iterator<Item = String> {
    (0..dim).map(|k| format!("p{k}"))
}

// ---------------------------------------------------------------- basis

fn cmd_basis(cfg: &JobConfig) -> Result<String, CliError> {
    let n = cfg.degree.expect("validated");
    match cfg.format {
        Format::Svg => basis_svg(cfg, n, &cfg.alphas),
        Format::Csv => {
            let spec = BasisSpec::new(n, cfg.map(cfg.alphas[0])?)?;
            let mut out = csv_line(std::iter::once("x".to_string()).chain((0..=n).map(|i| format!("B_{i}"))));
            for x in uniform_params(cfg.interval.0, cfg.interval.1, cfg.samples) {
                let vals = spec.eval(x)?;
                out.push_str(&csv_line(std::iter::once(fmt_num(x)).chain(vals.into_iter().map(fmt_num))));
            }
            Ok(out)
        }
        Format::Json => {
            let spec = BasisSpec::new(n, cfg.map(cfg.alphas[0])?)?;
            let samples = uniform_params(cfg.interval.0, cfg.interval.1, cfg.samples)
                .into_iter()
                .map(|x| Ok(Sample::values(x, spec.eval(x)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let doc = JobOutput {
                params: cfg.params(),
                samples,
                polygons: Vec::new(),
                maxima: Some(spec.maxima()),
                ..Default::default()
            };
            Ok(doc.to_json())
        }
    }
}

/// One panel per index, each with every `B_i` on `[a, b] × [0, 1]`.
pub fn basis_svg(cfg: &JobConfig, n: usize, alphas: &[Alpha]) -> Result<String, CliError> {
    let (pw, ph, margin) = (420.0, 300.0, 40.0);
    let cols = if alphas.len() > 1 { 2 } else { 1 };
    let rows = alphas.len().div_ceil(cols);
    let mut doc = Svg::new(cols as f64 * pw, rows as f64 * ph);
    let xs = uniform_params(cfg.interval.0, cfg.interval.1, cfg.samples);
    for (k, &al) in alphas.iter().enumerate() {
        let spec = BasisSpec::new(n, cfg.map(al)?)?;
        let (ox, oy) = ((k % cols) as f64 * pw, (k / cols) as f64 * ph);
        let vp = Viewport {
            x0: ox + margin,
            y0: oy + margin,
            width: pw - 2.0 * margin,
            height: ph - 2.0 * margin,
            xmin: cfg.interval.0,
            xmax: cfg.interval.1,
            ymin: 0.0,
            ymax: 1.0,
        };
        doc.rect(vp.x0, vp.y0, vp.width, vp.height, "#444444", "none");
        doc.text(ox + pw / 2.0, oy + margin - 12.0, 14.0, "middle", &format!("n = {n}, alpha = {al}"));
        doc.text(vp.x0, vp.y0 + vp.height + 16.0, 11.0, "middle", &fmt_num(cfg.interval.0));
        doc.text(vp.x0 + vp.width, vp.y0 + vp.height + 16.0, 11.0, "middle", &fmt_num(cfg.interval.1));
        doc.text(vp.x0 - 6.0, vp.y0 + vp.height + 4.0, 11.0, "end", "0");
        doc.text(vp.x0 - 6.0, vp.y0 + 4.0, 11.0, "end", "1");
        let table = xs
            .iter()
            .map(|&x| spec.eval(x))
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..=n {
            let line: Vec<[f64; 2]> = xs.iter().zip(&table).map(|(&x, v)| [x, v[i]]).collect();
            doc.polyline(&vp, &line, PALETTE[i % PALETTE.len()], 1.5, None);
        }
    }
    Ok(doc.finish())
}

// ---------------------------------------------------------------- curve

fn cmd_curve(cfg: &JobConfig) -> Result<String, CliError> {
    let curve = cfg.curve()?;
    let samples = curve.sample(cfg.samples)?;
    match cfg.format {
        Format::Svg => Ok(curve_svg(&curve, &samples, &[], "curve")),
        Format::Csv => {
            let mut out = csv_line(std::iter::once("x".to_string()).chain(coord_header(curve.dim())));
            for (x, p) in &samples {
                out.push_str(&csv_line(
                    std::iter::once(fmt_num(*x)).chain(p.coords().iter().map(|c| fmt_num(*c))),
                ));
            }
            Ok(out)
        }
        Format::Json => Ok(JobOutput {
            params: cfg.params(),
            samples: samples.iter().map(|(x, p)| Sample::point(*x, p)).collect(),
            polygons: vec![output::polygon_rows(curve.polygon())],
            ..Default::default()
        }
        .to_json()),
    }
}

/// Curve with its control polygon, plus optional extra polygon layers
/// (one color per layer).
fn curve_svg(
    curve: &BezierCurve,
    samples: &[(f64, crate::point::Point)],
    layers: &[Vec<ControlPolygon>],
    title: &str,
) -> String {
    let (w, h) = (640.0, 520.0);
    let mut pts: Vec<[f64; 2]> = curve.polygon().points().iter().map(xy).collect();
    pts.extend(samples.iter().map(|(_, p)| xy(p)));
    let vp = Viewport::fit_equal(30.0, 40.0, w - 60.0, h - 70.0, &pts, 0.05);
    let mut doc = Svg::new(w, h);
    doc.text(w / 2.0, 24.0, 15.0, "middle", title);
    let poly: Vec<[f64; 2]> = curve.polygon().points().iter().map(xy).collect();
    doc.polyline(&vp, &poly, "#888888", 1.0, Some("4 3"));
    for p in &poly {
        doc.circle(&vp, *p, 3.0, "#444444");
    }
    for (k, layer) in layers.iter().enumerate() {
        let color = PALETTE[(k + 1) % PALETTE.len()];
        for sub in layer {
            let line: Vec<[f64; 2]> = sub.points().iter().map(xy).collect();
            doc.polyline(&vp, &line, color, 0.8, None);
            for p in &line {
                doc.circle(&vp, *p, 1.6, color);
            }
        }
    }
    let line: Vec<[f64; 2]> = samples.iter().map(|(_, p)| xy(p)).collect();
    doc.polyline(&vp, &line, "#000000", 2.0, None);
    doc.finish()
}

fn cmd_subdivide(cfg: &JobConfig) -> Result<String, CliError> {
    let curve = cfg.curve()?;
    let levels = curve.subdivision_levels(cfg.depth)?;
    match cfg.format {
        Format::Svg => Ok(subdivision_svg(&curve, cfg.samples, &levels)?),
        Format::Csv => {
            let mut out = csv_line(
                ["level", "index", "vertex"].into_iter().map(String::from).chain(coord_header(curve.dim())),
            );
            for (lvl, polys) in levels.iter().enumerate() {
                for (idx, poly) in polys.iter().enumerate() {
                    for (v, p) in poly.points().iter().enumerate() {
                        out.push_str(&csv_line(
                            [lvl.to_string(), idx.to_string(), v.to_string()]
                                .into_iter()
                                .chain(p.coords().iter().map(|c| fmt_num(*c))),
                        ));
                    }
                }
            }
            Ok(out)
        }
        Format::Json => {
            let last = levels.last().expect("level 0 present");
            Ok(JobOutput {
                params: cfg.params(),
                samples: Vec::new(),
                polygons: last.iter().map(output::polygon_rows).collect(),
                ..Default::default()
            }
            .to_json())
        }
    }
}

fn subdivision_svg(
    curve: &BezierCurve,
    samples: usize,
    levels: &[Vec<ControlPolygon>],
) -> Result<String, CliError> {
    let pts = curve.sample(samples)?;
    let depth = levels.len() - 1;
    let title = format!(
        "alpha = {}: control sub-polygons on levels up to {depth}",
        curve.map().alpha()
    );
    Ok(curve_svg(curve, &pts, &levels[1..], &title))
}

fn cmd_elevate(cfg: &JobConfig) -> Result<String, CliError> {
    let curve = cfg.curve()?;
    let raised = curve.elevate_degree()?;
    match cfg.format {
        Format::Svg => {
            let pts = curve.sample(cfg.samples)?;
            Ok(curve_svg(
                &curve,
                &pts,
                &[vec![raised.polygon().clone()]],
                &format!("degree {} -> {}", curve.degree(), raised.degree()),
            ))
        }
        Format::Csv => {
            let mut out = csv_line(std::iter::once("i".to_string()).chain(coord_header(curve.dim())));
            for (i, p) in raised.polygon().points().iter().enumerate() {
                out.push_str(&csv_line(
                    std::iter::once(i.to_string()).chain(p.coords().iter().map(|c| fmt_num(*c))),
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let samples = raised.sample(cfg.samples)?;
            Ok(JobOutput {
                params: cfg.params(),
                samples: samples.iter().map(|(x, p)| Sample::point(*x, p)).collect(),
                polygons: vec![
                    output::polygon_rows(curve.polygon()),
                    output::polygon_rows(raised.polygon()),
                ],
                ..Default::default()
            }
            .to_json())
        }
    }
}

// ---------------------------------------------------------------- fit

/// Scalar test functions available to `fit`.
pub fn named_function(
    name: &str,
    map: &HomographyMap,
) -> Result<Box<dyn Fn(f64) -> f64 + Send + Sync>, CliError> {
    let map = *map;
    Ok(match name {
        "conic" => Box::new(|t| t / (1.0 + t * t)),
        "conic-cos" => Box::new(|t| (1.0 - t * t) / (1.0 + t * t)),
        "sin" => Box::new(|t| (std::f64::consts::PI * t).sin()),
        "exp" => Box::new(f64::exp),
        "runge" => Box::new(|t| 1.0 / (1.0 + 25.0 * t * t)),
        "homography" => Box::new(move |t| map.eval(t).unwrap_or(f64::NAN)),
        other => {
            return Err(CliError::invalid(
                "function",
                format!("unknown function {other:?} (conic, conic-cos, sin, exp, runge, homography)"),
            ))
        }
    })
}

fn cmd_fit(cfg: &JobConfig) -> Result<String, CliError> {
    let n = cfg.degree.unwrap_or(6);
    let map = cfg.map(cfg.alphas[0])?;
    let spec = BasisSpec::new(n, map)?;
    let f = named_function(&cfg.function, &map)?;
    let fit: FitResult = match cfg.method {
        FitMethod::Collocation => approx::fit_collocation(&f, &spec)?,
        FitMethod::LeastSquares => approx::fit_least_squares(&f, &spec, cfg.samples)?,
    };
    let xs = uniform_params(cfg.interval.0, cfg.interval.1, cfg.samples);
    let rows = xs
        .iter()
        .map(|&x| Ok((x, f(x), fit.eval(&spec, x)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    match cfg.format {
        Format::Csv => {
            let mut out = csv_line(["x", "f", "fit", "error"].map(String::from));
            for (x, v, p) in rows {
                out.push_str(&csv_line([fmt_num(x), fmt_num(v), fmt_num(p), fmt_num(v - p)]));
            }
            Ok(out)
        }
        Format::Json => Ok(JobOutput {
            params: cfg.params(),
            samples: rows.into_iter().map(|(x, v, p)| Sample::fit(x, v, p)).collect(),
            fit: Some(fit),
            ..Default::default()
        }
        .to_json()),
        Format::Svg => {
            let (w, h, m) = (640.0, 420.0, 45.0);
            let lo = rows.iter().map(|r| r.1.min(r.2)).fold(f64::INFINITY, f64::min);
            let hi = rows.iter().map(|r| r.1.max(r.2)).fold(f64::NEG_INFINITY, f64::max);
            let pad = 0.05 * (hi - lo).max(1e-9);
            let vp = Viewport {
                x0: m,
                y0: m,
                width: w - 2.0 * m,
                height: h - 2.0 * m,
                xmin: cfg.interval.0,
                xmax: cfg.interval.1,
                ymin: lo - pad,
                ymax: hi + pad,
            };
            let mut doc = Svg::new(w, h);
            doc.rect(vp.x0, vp.y0, vp.width, vp.height, "#444444", "none");
            doc.text(
                w / 2.0,
                28.0,
                14.0,
                "middle",
                &format!(
                    "{} fitted with n = {n}, alpha = {}: max error {}",
                    cfg.function,
                    map.alpha(),
                    fmt_num(fit.max_error)
                ),
            );
            let fl: Vec<[f64; 2]> = rows.iter().map(|r| [r.0, r.1]).collect();
            let pl: Vec<[f64; 2]> = rows.iter().map(|r| [r.0, r.2]).collect();
            doc.polyline(&vp, &fl, PALETTE[0], 2.0, None);
            doc.polyline(&vp, &pl, PALETTE[1], 1.5, Some("5 3"));
            Ok(doc.finish())
        }
    }
}

// ---------------------------------------------------------------- selftest

/// Randomized identity checks: partition of unity, symmetry, de Casteljau
/// versus direct evaluation, degree elevation and subdivision.
pub fn self_test(seed: u64, draws: usize) -> Result<Vec<Check>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [-5.0, -1.0, 2.0, 5.0, 1e6, f64::INFINITY];
    let mut worst = [0.0f64; 5];
    for _ in 0..draws {
        let n = rng.gen_range(1..=8);
        let alpha = Alpha::from(pool[rng.gen_range(0..pool.len())]);
        let a = rng.gen_range(-3.0..3.0);
        let b = a + rng.gen_range(0.1..4.0);
        let map = HomographyMap::new(a, b, alpha)?;
        let spec = BasisSpec::new(n, map)?;
        let x = rng.gen_range(a..=b);

        let vals = spec.eval(x)?;
        worst[0] = worst[0].max((vals.iter().sum::<f64>() - 1.0).abs());

        let mirror = spec.mirrored().eval((a + b - x).clamp(a, b))?;
        for i in 0..=n {
            worst[1] = worst[1].max((mirror[n - i] - vals[i]).abs());
        }

        let pts: Vec<Vec<f64>> = (0..=n)
            .map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)])
            .collect();
        let poly = ControlPolygon::from_coords(&pts)?;
        let diam = poly.diameter().max(f64::MIN_POSITIVE);
        let curve = BezierCurve::new(poly, spec)?;
        let direct = curve.eval(x)?;
        let (apex, _) = curve.eval_decasteljau(x)?;
        worst[2] = worst[2].max(direct.distance(&apex) / diam);

        let raised = curve.elevate_degree()?;
        worst[3] = worst[3].max(raised.eval(x)?.distance(&direct) / diam);

        let c = rng.gen_range(a + 0.05 * (b - a)..b - 0.05 * (b - a));
        let split = curve.subdivide(c)?;
        let u = map.reparam(c, ReparamKind::LeftU)?;
        let v = map.reparam(c, ReparamKind::RightV)?;
        let dl = split.left.eval(x)?.distance(&curve.eval(u.eval(x)?)?);
        let dr = split.right.eval(x)?.distance(&curve.eval(v.eval(x)?)?);
        worst[4] = worst[4].max(dl.max(dr) / diam);
    }
    let names = [
        ("partition_of_unity", 1e-12),
        ("symmetry", 1e-12),
        ("decasteljau_vs_direct", 1e-12),
        ("degree_elevation", 1e-12),
        ("subdivision_reparam", 1e-10),
    ];
    Ok(names
        .iter()
        .zip(worst)
        .map(|(&(name, tol), w)| Check {
            name: name.to_string(),
            max_residual: w,
            tolerance: tol,
            pass: w <= tol,
        })
        .collect())
}

fn cmd_selftest(cfg: &JobConfig) -> Result<String, CliError> {
    let checks = self_test(cfg.seed, cfg.samples)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let text = match cfg.format {
        Format::Json => JobOutput {
            params: cfg.params(),
            checks: Some(checks),
            ..Default::default()
        }
        .to_json(),
        _ => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "{} {} max_residual={} tolerance={}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    fmt_num(c.max_residual),
                    fmt_num(c.tolerance)
                ));
            }
            s
        }
    };
    if failed > 0 {
        eprint!("{text}");
        return Err(CliError::Internal(Error::Argument(format!("{failed} self-test check(s) failed"))));
    }
    Ok(text)
}

// ---------------------------------------------------------------- figures

/// File names and contents of every figure family: basis plots for
/// `n = 1..=5`, curves over all presets per index, and depth-`depth`
/// subdivisions of preset `g` per index.
pub fn figure_set(samples: usize, depth: usize) -> Result<Vec<(String, String)>, CliError> {
    let base = JobConfig {
        command: Command::Basis,
        degree: None,
        alphas: FIGURE_ALPHAS.to_vec(),
        alpha_given: false,
        interval: (0.0, 1.0),
        polygon: None,
        samples,
        depth,
        format: Format::Svg,
        out: None,
        function: String::new(),
        method: FitMethod::LeastSquares,
        seed: 0,
    };
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("basis_n{n}.svg"), basis_svg(&base, n, &FIGURE_ALPHAS)?));
    }
    for &al in &FIGURE_ALPHAS {
        let map = base.map(al)?;
        let tag = alpha_tag(al);
        for (name, poly) in presets::all() {
            let curve = BezierCurve::with_map(poly, map)?;
            let pts = curve.sample(samples)?;
            out.push((
                format!("curve_{name}_alpha_{tag}.svg"),
                curve_svg(&curve, &pts, &[], &format!("pi_{name}, alpha = {al}")),
            ));
        }
        let curve = BezierCurve::with_map(presets::preset("g").expect("preset g"), map)?;
        let levels = curve.subdivision_levels(depth)?;
        out.push((
            format!("subdivision_g_alpha_{tag}.svg"),
            subdivision_svg(&curve, samples, &levels)?,
        ));
    }
    Ok(out)
}

fn alpha_tag(al: Alpha) -> String {
    match al {
        Alpha::Infinity => "inf".into(),
        Alpha::Finite(v) => format!("{v}").replace('-', "m"),
    }
}

fn cmd_figures(cfg: &JobConfig) -> Result<Vec<Artifact>, CliError> {
    let dir = cfg.out.clone().expect("validated");
    Ok(figure_set(cfg.samples, cfg.depth)?
        .into_iter()
        .map(|(name, contents)| Artifact {
            path: Some(dir.join(name)),
            contents,
        })
        .collect())
}
