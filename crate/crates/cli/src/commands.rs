//! Subcommands. Each returns its stdout text plus stderr notes, so the
//! binary and the tests share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csjacket_core::capacity::{
    confinement_factor, fit_hoop_stress, nominal_capacity, post_peak_crossing, strength_index, ultimate_capacity,
    ultimate_capacity_at, yield_point, FitClamp, HoopStressSource,
};
use csjacket_core::dataset_validation::{
    best_fixed_hoop_stress, build_specimen, coupon, load_dataset, record, validate_capacity_model, HoopStressPolicy,
    SWEEP_HOOP_STRESSES,
};
use csjacket_core::materials::{CouponClass, DEFAULT_E_S, DEFAULT_FP_RATIO, DEFAULT_MU_S};
use csjacket_core::stress_analysis::{analyze_trace, GaugeLocation};
use csjacket_core::{
    AnalysisConfig, CapacityReport, LoadDisplacementCurve, Specimen, SteelProperties, StrainSample, StrengthModel,
    ValidationSummary,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::specfile::SpecDocument;
use crate::table::{
    read_curve, read_trace, write_csv, CapacityRow, IndicesRow, ModelRow, StressRow, SweepRow, ValidationRow,
};

#[derive(Debug, Parser)]
#[command(
    name = "csjacket",
    version,
    about = "Capacity and jacket stress analysis of corrugated steel jacketed columns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ultimate capacity of one specimen.
    Capacity(CapacityArgs),
    /// Jacket stresses from a strain gauge trace.
    Stress(StressArgs),
    /// Run a strength model over the built-in test series.
    Validate(ValidateArgs),
    /// Vary one specimen parameter and report capacity.
    Sweep(SweepArgs),
    /// List the confined strength models.
    Models(ModelsArgs),
    /// Strength, confinement and ductility indices.
    Indices(IndicesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

fn parse_model(s: &str) -> Result<StrengthModel, String> {
    StrengthModel::from_id(s).ok_or_else(|| {
        let ids: Vec<&str> = StrengthModel::ALL.iter().map(|m| m.id()).collect();
        format!("unknown model `{s}`; expected one of {}", ids.join(", "))
    })
}

fn parse_policy(s: &str) -> Result<HoopStressPolicy, String> {
    HoopStressPolicy::parse(s).ok_or_else(|| format!("expected fitted, per_specimen or fixed:<MPa>, found `{s}`"))
}

fn parse_non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a non-negative number, found `{s}`")),
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, found `{s}`")),
    }
}

/// Specimen from a file or from the built-in series.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SpecimenSource {
    /// Specimen file.
    pub spec: Option<PathBuf>,
    /// Name of a built-in specimen, e.g. CS-D-2-0.4.
    #[arg(long)]
    pub dataset: Option<String>,
}

impl SpecimenSource {
    fn document(&self) -> CliResult<Option<SpecDocument>> {
        self.spec.as_deref().map(SpecDocument::read).transpose()
    }

    fn load(&self) -> CliResult<Specimen> {
        match (&self.spec, &self.dataset) {
            (Some(_), _) => self.document()?.expect("spec path set").specimen(),
            (None, Some(name)) => dataset_specimen(name),
            (None, None) => Err(CliError::Usage("a specimen file or --dataset is required".into())),
        }
    }
}

pub fn dataset_specimen(name: &str) -> CliResult<Specimen> {
    let rec = record(name).ok_or_else(|| {
        let names: Vec<&str> = load_dataset().iter().map(|r| r.name).collect();
        CliError::Usage(format!("unknown specimen `{name}`; built-in: {}", names.join(", ")))
    })?;
    Ok(build_specimen(rec)?)
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub source: SpecimenSource,
    #[arg(long, default_value = "lim2014", value_parser = parse_model)]
    pub model: StrengthModel,
    /// Hoop stress at ultimate, MPa.
    #[arg(long, value_parser = parse_non_negative, conflicts_with = "fit")]
    pub hoop_stress: Option<f64>,
    /// Back-calculate the hoop stress from the measured load.
    #[arg(long)]
    pub fit: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Omit the timestamp footer of text reports.
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Debug, Args)]
pub struct StressArgs {
    /// Trace CSV with header load_kN,location,eps_h,eps_v.
    pub trace: PathBuf,
    /// Built-in coupon as class:size, e.g. corrugated_segment:2.0.
    #[arg(long, conflicts_with = "fy", required_unless_present = "fy")]
    pub steel: Option<String>,
    /// Yield strength, MPa.
    #[arg(long, value_parser = parse_positive)]
    pub fy: Option<f64>,
    /// Ultimate strength, MPa.
    #[arg(long, value_parser = parse_positive, requires = "fy")]
    pub fu: Option<f64>,
    /// Elastic modulus, MPa.
    #[arg(long = "E", alias = "e-s", value_parser = parse_positive)]
    pub e_s: Option<f64>,
    /// Poisson ratio.
    #[arg(long, value_parser = parse_positive)]
    pub mu: Option<f64>,
    /// Proportional limit, MPa.
    #[arg(long, value_parser = parse_positive)]
    pub fp: Option<f64>,
    /// Substeps per sample increment.
    #[arg(long, default_value_t = 10)]
    pub substeps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: DataFormat,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = "lim2014", value_parser = parse_model)]
    pub model: StrengthModel,
    /// fitted, per_specimen or fixed:<MPa>.
    #[arg(long, default_value = "fitted", value_parser = parse_policy)]
    pub sigma_h_policy: HoopStressPolicy,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: SpecimenSource,
    /// key=start:stop:n, with n evenly spaced values including both ends.
    #[arg(long)]
    pub vary: String,
    #[arg(long, default_value = "lim2014", value_parser = parse_model)]
    pub model: StrengthModel,
    /// Hoop stress at ultimate, MPa.
    #[arg(long, value_parser = parse_non_negative)]
    pub hoop_stress: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: DataFormat,
}

#[derive(Debug, Args)]
pub struct ModelsArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct IndicesArgs {
    #[command(flatten)]
    pub source: SpecimenSource,
    /// Load-displacement CSV with header displacement_mm,load_kN.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Ultimate load to use for SI, kN.
    #[arg(long, value_parser = parse_positive)]
    pub nu: Option<f64>,
    #[arg(long, default_value = "lim2014", value_parser = parse_model)]
    pub model: StrengthModel,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub no_meta: bool,
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: Vec<String>,
    /// Error raised after some output was produced.
    pub failure: Option<CliError>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Capacity(a) => capacity(a),
        Command::Stress(a) => stress(a),
        Command::Validate(a) => validate(a),
        Command::Sweep(a) => sweep(a),
        Command::Models(a) => models(a),
        Command::Indices(a) => indices(a),
    }
}

fn footer(no_meta: bool) -> String {
    if no_meta {
        return String::new();
    }
    let now = time::OffsetDateTime::now_utc()
        .format(&time::format_description::well_known::Rfc3339)
        .unwrap_or_default();
    format!("\ngenerated {now} by csjacket {}\n", env!("CARGO_PKG_VERSION"))
}

fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn clamp_label(c: Option<FitClamp>) -> Option<String> {
    c.map(|c| match c {
        FitClamp::Lower => "lower".to_string(),
        FitClamp::Upper => "upper".to_string(),
    })
}

fn capacity_row(r: &CapacityReport, clamp: Option<FitClamp>) -> CapacityRow {
    let b = &r.breakdown;
    let p = &r.partition;
    CapacityRow {
        specimen: r.specimen.clone(),
        model: r.model.id().to_string(),
        sigma_h: r.sigma_h,
        sigma_h_source: r.sigma_h_source.as_str().to_string(),
        f_r: r.f_r,
        f_c_damaged: r.f_c_damaged,
        f_cc: r.f_cc,
        f_cc_grout: r.f_cc_grout,
        a1: p.a1,
        a2: p.a2,
        a3: p.a3,
        a4: p.a4,
        a_corner: p.a_corner,
        confined_core: b.confined_core,
        unconfined_core: b.unconfined_core,
        confined_grout: b.confined_grout,
        unconfined_grout: b.unconfined_grout,
        angle: b.angle,
        rebar: b.rebar,
        n_u_pred: r.n_u_pred,
        nominal: r.nominal,
        strength_index: r.strength_index,
        zeta: r.zeta,
        measured_nu: r.measured_nu,
        error_vs_measured: r.error_vs_measured,
        fit_clamp: clamp_label(clamp),
        warnings: r.warnings.join("; "),
    }
}

/// Capacity report for a specimen, with the fit clamp if `fit` was asked.
pub fn compute_capacity(
    s: &Specimen,
    model: StrengthModel,
    hoop_stress: Option<f64>,
    fit: bool,
) -> CliResult<(CapacityReport, Option<FitClamp>)> {
    if fit {
        if s.measured_nu.is_none() {
            return Err(CliError::Usage(format!(
                "--fit needs a measured load; specimen `{}` has no measured_Nu_kN",
                s.name
            )));
        }
        let f = fit_hoop_stress(s, model)?;
        let mut r = ultimate_capacity_at(s, model, f.sigma_h)?;
        r.sigma_h_source = HoopStressSource::Fitted;
        if let Some(c) = f.clamped {
            r.warnings.push(format!(
                "no hoop stress in [0, f_y] reproduces the measured load; clamped at the {} bound, residual {:+.1} kN",
                clamp_label(Some(c)).unwrap_or_default(),
                f.residual
            ));
        }
        return Ok((r, f.clamped));
    }
    let r = match hoop_stress {
        Some(v) => ultimate_capacity_at(s, model, v)?,
        None => ultimate_capacity(s, model)?,
    };
    Ok((r, None))
}

fn capacity_text(r: &CapacityReport) -> String {
    let mut o = String::new();
    let p = &r.partition;
    let b = &r.breakdown;
    let _ = writeln!(o, "Specimen {}  (model {})", r.specimen, r.model.id());
    let _ = writeln!(o);
    let _ = writeln!(
        o,
        "  hoop stress sigma_h      {:>10.2} MPa  ({})",
        r.sigma_h,
        r.sigma_h_source.as_str()
    );
    let _ = writeln!(o, "  confining stress f_r     {:>10.3} MPa", r.f_r);
    let _ = writeln!(o, "  damaged core f'c         {:>10.2} MPa", r.f_c_damaged);
    let _ = writeln!(o, "  confined core f'cc       {:>10.2} MPa", r.f_cc);
    let _ = writeln!(o, "  confined grout fcc,g     {:>10.2} MPa", r.f_cc_grout);
    let _ = writeln!(o);
    let _ = writeln!(
        o,
        "  areas, mm²: A1 {:.1}  A2 {:.1}  A3 {:.1}  A4 {:.1}  corners {:.1}",
        p.a1, p.a2, p.a3, p.a4, p.a_corner
    );
    let _ = writeln!(o);
    let _ = writeln!(o, "  confined core     {:>10.1} kN", b.confined_core);
    let _ = writeln!(o, "  unconfined core   {:>10.1} kN", b.unconfined_core);
    let _ = writeln!(o, "  confined grout    {:>10.1} kN", b.confined_grout);
    let _ = writeln!(o, "  unconfined grout  {:>10.1} kN", b.unconfined_grout);
    let _ = writeln!(o, "  corner angles     {:>10.1} kN", b.angle);
    let _ = writeln!(o, "  longitudinal bars {:>10.1} kN", b.rebar);
    let _ = writeln!(o, "  N_u,pred          {:>10.1} kN", r.n_u_pred);
    let _ = writeln!(o);
    let _ = writeln!(o, "  nominal N_0       {:>10.1} kN", r.nominal);
    let _ = writeln!(o, "  SI = N_u,pred/N_0 {:>10.3}", r.strength_index);
    let _ = writeln!(o, "  zeta              {:>10.3}", r.zeta);
    if let (Some(m), Some(e)) = (r.measured_nu, r.error_vs_measured) {
        let _ = writeln!(o, "  measured N_u      {:>10.1} kN  (error {:+.2}%)", m, 100.0 * e);
    }
    for w in &r.warnings {
        let _ = writeln!(o, "  warning: {w}");
    }
    o
}

pub fn capacity(a: &CapacityArgs) -> CliResult<Output> {
    let s = a.source.load()?;
    let (r, clamp) = compute_capacity(&s, a.model, a.hoop_stress, a.fit)?;
    let stdout = match a.format {
        Format::Text => capacity_text(&r) + &footer(a.no_meta),
        Format::Csv => write_csv(&[capacity_row(&r, clamp)])?,
        Format::Json => json(&capacity_row(&r, clamp))?,
    };
    let stderr = r.warnings.iter().map(|w| format!("warning: {w}")).collect();
    Ok(Output {
        stdout,
        stderr,
        failure: None,
    })
}

fn stress_steel(a: &StressArgs) -> CliResult<SteelProperties> {
    let (class, size, f_y, f_u) = match (&a.steel, a.fy) {
        (Some(spec), _) => {
            let (class, size) = spec
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("--steel expects class:size, found `{spec}`")))?;
            let class = CouponClass::parse(class).ok_or_else(|| {
                let names: Vec<&str> = CouponClass::ALL.iter().map(|c| c.as_str()).collect();
                CliError::Usage(format!(
                    "unknown coupon class `{class}`; expected one of {}",
                    names.join(", ")
                ))
            })?;
            let size: f64 = size
                .parse()
                .map_err(|_| CliError::Usage(format!("--steel size `{size}` is not a number")))?;
            let c = coupon(class, size)
                .ok_or_else(|| CliError::Usage(format!("no built-in coupon {}:{size}", class.as_str())))?;
            (class, size, c.f_y, c.f_u)
        }
        // f_u does not enter the stress analysis
        (None, Some(f_y)) => (CouponClass::CorrugatedSegment, 1.0, f_y, a.fu.unwrap_or(f64::INFINITY)),
        (None, None) => return Err(CliError::Usage("either --steel or --fy is required".into())),
    };
    Ok(SteelProperties::new(
        class,
        size,
        f_y,
        f_u,
        a.e_s.unwrap_or(DEFAULT_E_S),
        a.mu.unwrap_or(DEFAULT_MU_S),
        a.fp.unwrap_or(f_y * DEFAULT_FP_RATIO),
    )?)
}

pub fn stress(a: &StressArgs) -> CliResult<Output> {
    let steel = stress_steel(a)?;
    let rows = read_trace(&a.trace)?;
    let mut samples = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let location = GaugeLocation::parse(&r.location).ok_or_else(|| {
            CliError::parse(
                &a.trace,
                i + 2,
                format!("unknown location `{}`; expected crest, flat or trough", r.location),
            )
        })?;
        samples.push(StrainSample {
            load: r.load_kn,
            eps_h: r.eps_h,
            eps_v: r.eps_v,
            location,
            side: String::new(),
        });
    }
    let mut cfg = AnalysisConfig::new(steel);
    cfg.substeps = a.substeps;
    cfg.validate()?;

    // each location is its own history
    let mut groups: BTreeMap<&'static str, Vec<usize>> = BTreeMap::new();
    for (i, s) in samples.iter().enumerate() {
        groups.entry(s.location.as_str()).or_default().push(i);
    }
    let mut results: Vec<Option<StressRow>> = vec![None; samples.len()];
    let mut out = Output::default();
    let mut failure: Option<(usize, CliError)> = None;
    for idx in groups.values() {
        let history: Vec<StrainSample> = idx.iter().map(|&i| samples[i].clone()).collect();
        let analysis = analyze_trace(&history, &cfg)?;
        for p in &analysis.points {
            let i = idx[p.index];
            results[i] = Some(StressRow {
                load_kn: p.load,
                location: samples[i].location.as_str().to_string(),
                sigma_h: p.state.sigma_h,
                sigma_v: p.state.sigma_v,
                sigma_mises: p.state.sigma_z,
                stage: p.state.stage.as_str().to_string(),
            });
        }
        for rej in &analysis.rejected {
            out.stderr.push(format!(
                "warning: {}:{}: sample skipped, {}",
                a.trace.display(),
                idx[rej.index] + 2,
                rej.reason
            ));
        }
        if let Some((k, e)) = analysis.truncated {
            let line = idx[k] + 2;
            if failure.as_ref().is_none_or(|(l, _)| line < *l) {
                failure = Some((line, CliError::Core(e)));
            }
        }
    }
    let rows: Vec<StressRow> = results.into_iter().flatten().collect();
    out.stdout = match a.format {
        DataFormat::Csv => {
            if rows.is_empty() {
                "load_kN,location,sigma_h,sigma_v,sigma_mises,stage\n".to_string()
            } else {
                write_csv(&rows)?
            }
        }
        DataFormat::Json => json(&rows)?,
    };
    if let Some((line, e)) = failure {
        out.stderr.push(format!(
            "error: {}:{line}: integration stopped, later samples of that location omitted",
            a.trace.display()
        ));
        out.failure = Some(e);
    }
    Ok(out)
}

fn validation_rows(s: &ValidationSummary) -> Vec<ValidationRow> {
    s.rows
        .iter()
        .map(|r| ValidationRow {
            specimen: r.name.clone(),
            sigma_h: r.sigma_h,
            sigma_h_source: r.sigma_h_source.as_str().to_string(),
            fit_clamp: clamp_label(r.clamped),
            predicted: r.predicted,
            measured: r.measured,
            residual: r.residual,
            rel_error: r.rel_error,
            f_r: r.f_r,
            f_cc: r.f_cc,
            nominal: r.nominal,
            zeta: r.zeta,
            xi: r.xi,
            warnings: r.warnings.join("; "),
        })
        .collect()
}

fn validation_text(s: &ValidationSummary) -> CliResult<String> {
    let mut o = String::new();
    let _ = writeln!(o, "Model {}  hoop stress policy {}", s.model.id(), s.policy.label());
    let _ = writeln!(o);
    let _ = writeln!(
        o,
        "{:<12} {:>9} {:<9} {:>10} {:>10} {:>9} {:>8} {:>7} {:>7}",
        "specimen", "sigma_h", "source", "N_u,pred", "N_u,test", "residual", "error", "zeta", "xi"
    );
    for r in &s.rows {
        let source = match r.clamped {
            Some(FitClamp::Lower) => "clamp-lo",
            Some(FitClamp::Upper) => "clamp-hi",
            None => r.sigma_h_source.as_str(),
        };
        let _ = writeln!(
            o,
            "{:<12} {:>9.2} {:<9} {:>10.1} {:>10.1} {:>+9.1} {:>+7.2}% {:>7.3} {:>7.3}",
            r.name,
            r.sigma_h,
            source,
            r.predicted,
            r.measured,
            r.residual,
            100.0 * r.rel_error,
            r.zeta,
            r.xi
        );
    }
    let _ = writeln!(o);
    let _ = writeln!(
        o,
        "mean |error| over {} specimens: {:.2}%",
        s.rows.len(),
        100.0 * s.mean_abs_error
    );
    if let (Some(m), Some(u), Some(l)) = (s.mean_fitted_sigma_h, s.uniform_mean_error, s.leave_one_out_error) {
        let _ = writeln!(o, "mean fitted sigma_h: {m:.2} MPa");
        let _ = writeln!(o, "mean |error| with that value for every specimen: {:.2}%", 100.0 * u);
        let _ = writeln!(o, "mean |error| leave-one-out: {:.2}%", 100.0 * l);
    }
    let best = best_fixed_hoop_stress(s.model, &SWEEP_HOOP_STRESSES)?;
    let _ = writeln!(
        o,
        "best fixed sigma_h over {:?} MPa: {} MPa, mean |error| {:.2}%",
        SWEEP_HOOP_STRESSES,
        best.sigma_h,
        100.0 * best.mean_abs_error
    );
    let _ = writeln!(
        o,
        "strengthening gain over the RC column: {:.1}%–{:.1}% ({} to {})",
        100.0 * s.gain_min.gain,
        100.0 * s.gain_max.gain,
        s.gain_min.name,
        s.gain_max.name
    );
    let ok = s.consistency.iter().filter(|c| c.ok).count();
    let _ = writeln!(o, "tabulated SI consistent with N_u/N_0: {ok}/{}", s.consistency.len());
    for c in s.consistency.iter().filter(|c| !c.ok) {
        let _ = writeln!(o, "  {}: N_u/N_0 = {:.4}, SI = {:.3}", c.name, c.ratio, c.si);
    }
    for r in s.rows.iter().filter(|r| !r.warnings.is_empty()) {
        for w in &r.warnings {
            let _ = writeln!(o, "warning: {}: {w}", r.name);
        }
    }
    Ok(o)
}

pub fn validate(a: &ValidateArgs) -> CliResult<Output> {
    let s = validate_capacity_model(a.model, a.sigma_h_policy)?;
    let stdout = match a.format {
        Format::Text => validation_text(&s)? + &footer(a.no_meta),
        Format::Csv => write_csv(&validation_rows(&s))?,
        Format::Json => json(&s)?,
    };
    Ok(Output::text(stdout))
}

/// Parses `key=start:stop:n`.
pub fn parse_vary(s: &str) -> CliResult<(String, Vec<f64>)> {
    let bad = || CliError::Usage(format!("--vary expects key=start:stop:n, found `{s}`"));
    let (key, range) = s.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, n] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !(start.is_finite() && stop.is_finite()) || n == 0 || key.trim().is_empty() {
        return Err(bad());
    }
    let values = if n == 1 {
        vec![start]
    } else {
        (0..n)
            .map(|i| match i {
                0 => start,
                i if i == n - 1 => stop,
                i => start + (stop - start) * (i as f64 / (n - 1) as f64),
            })
            .collect()
    };
    Ok((key.trim().to_string(), values))
}

pub fn sweep(a: &SweepArgs) -> CliResult<Output> {
    let (key, values) = parse_vary(&a.vary)?;
    let Some(doc) = a.source.document()? else {
        return Err(CliError::Usage("sweep needs a specimen file to vary".into()));
    };
    let (section, name) = doc.resolve_key(&key)?;
    let label = format!("{section}.{name}");
    let mut rows = Vec::with_capacity(values.len());
    for v in values {
        let mut d = doc.clone();
        d.set_number(section, name, v);
        let s = d.specimen()?;
        let (r, _) = compute_capacity(&s, a.model, a.hoop_stress, false)?;
        rows.push(SweepRow {
            key: label.clone(),
            value: v,
            n_u_pred: r.n_u_pred,
            f_r: r.f_r,
            f_cc: r.f_cc,
        });
    }
    let stdout = match a.format {
        DataFormat::Csv => write_csv(&rows)?,
        DataFormat::Json => json(&rows)?,
    };
    Ok(Output::text(stdout))
}

pub fn model_rows() -> Vec<ModelRow> {
    StrengthModel::ALL
        .iter()
        .map(|m| ModelRow {
            id: m.id().to_string(),
            kind: format!("{:?}", m.kind()).to_lowercase(),
            formula: m.formula().to_string(),
            description: m.description().to_string(),
            validity: m.validity_note().to_string(),
        })
        .collect()
}

pub fn models(a: &ModelsArgs) -> CliResult<Output> {
    let rows = model_rows();
    let stdout = match a.format {
        Format::Text => {
            let mut o = String::new();
            for r in &rows {
                let _ = writeln!(o, "{:<15} {:<14} {}", r.id, r.kind, r.formula);
                if !r.validity.is_empty() {
                    let _ = writeln!(o, "{:<15} {:<14} ({})", "", "", r.validity);
                }
            }
            o
        }
        Format::Csv => write_csv(&rows)?,
        Format::Json => json(&rows)?,
    };
    Ok(Output::text(stdout))
}

pub fn indices(a: &IndicesArgs) -> CliResult<Output> {
    let s = a.source.load()?;
    let (n_u, source) = match (a.nu, s.measured_nu) {
        (Some(v), _) => (v, "override"),
        (None, Some(v)) => (v, "measured"),
        (None, None) => (ultimate_capacity(&s, a.model)?.n_u_pred, "predicted"),
    };
    let mut row = IndicesRow {
        specimen: s.name.clone(),
        n_u,
        n_u_source: source.to_string(),
        nominal: nominal_capacity(&s)?,
        strength_index: strength_index(n_u, &s)?,
        zeta: confinement_factor(&s)?,
        yield_displacement_mm: None,
        yield_load: None,
        peak_load: None,
        d85_mm: None,
        ductility_index: None,
    };
    if let Some(path) = &a.curve {
        let points = read_curve(path)?
            .into_iter()
            .map(|r| (r.displacement_mm, r.load_kn))
            .collect();
        let curve = LoadDisplacementCurve::new(points)?;
        let (dy, ny) = yield_point(&curve)?;
        let d85 = post_peak_crossing(&curve, 0.85)?;
        row.yield_displacement_mm = Some(dy);
        row.yield_load = Some(ny);
        row.peak_load = Some(curve.points()[curve.peak_index()].1);
        row.d85_mm = Some(d85);
        row.ductility_index = Some(d85 / dy);
    }
    let stdout = match a.format {
        Format::Text => {
            let mut o = String::new();
            let _ = writeln!(o, "Specimen {}", row.specimen);
            let _ = writeln!(o, "  N_u  {:>10.1} kN ({})", row.n_u, row.n_u_source);
            let _ = writeln!(o, "  N_0  {:>10.1} kN", row.nominal);
            let _ = writeln!(o, "  SI   {:>10.3}", row.strength_index);
            let _ = writeln!(o, "  zeta {:>10.3}", row.zeta);
            if let (Some(dy), Some(ny), Some(np), Some(d85), Some(di)) = (
                row.yield_displacement_mm,
                row.yield_load,
                row.peak_load,
                row.d85_mm,
                row.ductility_index,
            ) {
                let _ = writeln!(o, "  yield point     {dy:.3} mm at {ny:.1} kN");
                let _ = writeln!(o, "  peak load       {np:.1} kN");
                let _ = writeln!(o, "  85% post-peak   {d85:.3} mm");
                let _ = writeln!(o, "  DI              {di:.3}");
            }
            o + &footer(a.no_meta)
        }
        Format::Csv => write_csv(&[row])?,
        Format::Json => json(&row)?,
    };
    Ok(Output::text(stdout))
}
