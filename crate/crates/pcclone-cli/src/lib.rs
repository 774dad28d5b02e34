//! Command implementations and output formatting for the `pcclone`
//! binary.
//!
//! Every emitting command renders the same numbers into CSV, TSV, or
//! JSON. Floats are printed with Rust's shortest round-trip
//! representation, negative zero normalized away, so output bytes are
//! deterministic for a given build and numerically identical across
//! formats.

use serde::Serialize;
use serde_json::json;

use pcclone_core::channels::{
    compose, covariance_constraint_residual, depolarizing_qubit_channel, gamma_from_channel,
    identity_channel, phase_unitary, shrink_from_gamma, unitary_channel,
};
use pcclone_core::cloners::{
    bound_fidelity, bound_table, clone, concatenation_check, optimal_12_clones_channel,
    optimal_coefficients, OutputCopies,
};
use pcclone_core::estimation::{
    canonical_povm, default_nodes, measure_prepare_channel, pe_fidelity_closed,
    pe_fidelity_numeric,
};
use pcclone_core::optimizer::{optimize, verify_overlaps};
use pcclone_core::qlinalg::{bloch_from_density, ComplexMatrix};
use pcclone_core::states::EquatorConvention;
use pcclone_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Convention {
    /// Equator of the x–y plane: (|0> + e^{iφ}|1>)/√2.
    Xy,
    /// Equator of the x–z plane: cos(φ/2)|0> + sin(φ/2)|1>.
    Xz,
}

impl From<Convention> for EquatorConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Xy => EquatorConvention::Xy,
            Convention::Xz => EquatorConvention::Xz,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Γ-matrix covariance structure and shrink factors of reference channels.
    Covariance,
    /// Multiplicativity of equatorial shrink under channel concatenation.
    Concatenation,
    /// Discretized phase estimation against its closed form.
    Estimation,
    /// Numerical optimizer against the analytic cloner amplitudes.
    Optimum,
    /// Everything above.
    All,
}

/// Shortest round-trip decimal form, with negative zero folded into zero
/// so equal values always print identically.
pub fn fmt_num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Rectangular output table; CSV and TSV are the two renderings.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self, sep: char) -> String {
        let mut out = String::new();
        let sep = sep.to_string();
        out.push_str(&self.header.join(&sep));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(&sep));
            out.push('\n');
        }
        out
    }
}

fn render(table: Table, json_doc: serde_json::Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => table.render(','),
        OutputFormat::Tsv => table.render('\t'),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json_doc).expect("serializable document");
            s.push('\n');
            s
        }
    }
}

#[derive(Serialize)]
struct MatrixOut {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl MatrixOut {
    fn new(m: &ComplexMatrix) -> Self {
        let mut re = Vec::with_capacity(m.rows());
        let mut im = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let mut re_row = Vec::with_capacity(m.cols());
            let mut im_row = Vec::with_capacity(m.cols());
            for c in 0..m.cols() {
                let z = m[(r, c)];
                re_row.push(clean(z.re));
                im_row.push(clean(z.im));
            }
            re.push(re_row);
            im.push(im_row);
        }
        Self { re, im }
    }
}

/// Append `key,row,col,re,im` lines for every entry of a matrix.
fn push_matrix(rows: &mut Vec<Vec<String>>, key: &str, m: &ComplexMatrix) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m[(r, c)];
            rows.push(vec![
                key.to_string(),
                r.to_string(),
                c.to_string(),
                fmt_num(z.re),
                fmt_num(z.im),
            ]);
        }
    }
}

fn push_scalar(rows: &mut Vec<Vec<String>>, key: &str, v: f64) {
    rows.push(vec![
        key.to_string(),
        String::new(),
        String::new(),
        fmt_num(v),
        fmt_num(0.0),
    ]);
}

// ---------------------------------------------------------------------
// bound / figure
// ---------------------------------------------------------------------

fn bound_rows_json(n: u32, m_max: u32) -> Result<Vec<serde_json::Value>> {
    Ok(bound_table(n, m_max)?
        .iter()
        .map(|row| {
            let m = match row.m_out {
                OutputCopies::Finite(m) => json!(m),
                OutputCopies::Infinite => json!("inf"),
            };
            json!({
                "n": row.n_in,
                "m": m,
                "f_pcc_bound": clean(row.f_pcc_bound),
                "f_universal": clean(row.f_universal),
            })
        })
        .collect())
}

fn bound_csv_table(n: u32, m_max: u32) -> Result<Table> {
    let header = ["N", "M", "F_pcc_bound", "F_universal"]
        .map(String::from)
        .to_vec();
    let rows = bound_table(n, m_max)?
        .iter()
        .map(|row| {
            vec![
                row.n_in.to_string(),
                row.m_out.to_string(),
                fmt_num(row.f_pcc_bound),
                fmt_num(row.f_universal),
            ]
        })
        .collect();
    Ok(Table { header, rows })
}

/// Table of optimal equatorial-cloning fidelity bounds for `m` from `n`
/// up to `m_max`, closed by the measure-and-prepare limit row, with the
/// universal-cloner fidelity alongside for comparison.
pub fn cmd_bound(n: u32, m_max: u32, format: OutputFormat) -> Result<String> {
    let doc = json!({
        "command": "bound",
        "params": { "n": n, "m_max": m_max },
        "rows": bound_rows_json(n, m_max)?,
    });
    Ok(render(bound_csv_table(n, m_max)?, doc, format))
}

/// The single-input-copy slice of the bound table — the two fidelity
/// columns are the two curves one plots against M, and the limit values
/// both curves decay to ride along as metadata.
pub fn cmd_figure(m_max: u32, format: OutputFormat) -> Result<String> {
    let doc = json!({
        "command": "figure",
        "params": {
            "n": 1,
            "m_max": m_max,
            "asymptote_f_pcc": clean(bound_fidelity(1, OutputCopies::Infinite)?),
            "asymptote_f_universal": clean(2.0 / 3.0),
        },
        "rows": bound_rows_json(1, m_max)?,
    });
    Ok(render(bound_csv_table(1, m_max)?, doc, format))
}

// ---------------------------------------------------------------------
// clone
// ---------------------------------------------------------------------

/// Run the optimal symmetric cloner on one equatorial input and emit the
/// two clone states, the machine state, and the per-clone fidelity. The
/// two clones are the same state, and their printed blocks agree byte
/// for byte.
pub fn cmd_clone(phi: f64, convention: Convention, format: OutputFormat) -> Result<String> {
    let result = clone(phi, convention.into())?;
    let doc = json!({
        "command": "clone",
        "params": {
            "phi": clean(phi),
            "convention": match convention { Convention::Xy => "xy", Convention::Xz => "xz" },
        },
        "report": {
            "input_phi": clean(result.input_phi),
            "fidelity": clean(result.fidelity),
            "clone_a": MatrixOut::new(&result.clone_a),
            "clone_b": MatrixOut::new(&result.clone_b),
            "ancilla": MatrixOut::new(&result.ancilla),
        },
    });
    let header = ["key", "row", "col", "re", "im"].map(String::from).to_vec();
    let mut rows = Vec::new();
    push_scalar(&mut rows, "input_phi", result.input_phi);
    push_scalar(&mut rows, "fidelity", result.fidelity);
    push_matrix(&mut rows, "clone_a", &result.clone_a);
    push_matrix(&mut rows, "clone_b", &result.clone_b);
    push_matrix(&mut rows, "ancilla", &result.ancilla);
    Ok(render(Table { header, rows }, doc, format))
}

// ---------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------

/// Run the discretized covariant phase measurement on n copies and
/// report the numeric mean fidelity next to its closed form, plus the
/// average reprepared state for a phase-zero input.
pub fn cmd_estimate(n: u32, nodes: u32, format: OutputFormat) -> Result<String> {
    let report = pe_fidelity_numeric(n, nodes)?;
    let closed = pe_fidelity_closed(n)?;
    let doc = json!({
        "command": "estimate",
        "params": { "n": n, "nodes": nodes },
        "report": {
            "n": n,
            "nodes": nodes,
            "mean_fidelity": clean(report.mean_fidelity),
            "shrink": clean(report.shrink),
            "closed_form": clean(closed),
            "reconstructed_state": MatrixOut::new(&report.reconstructed_state),
        },
    });
    let header = ["key", "row", "col", "re", "im"].map(String::from).to_vec();
    let mut rows = Vec::new();
    push_scalar(&mut rows, "n", n as f64);
    push_scalar(&mut rows, "nodes", nodes as f64);
    push_scalar(&mut rows, "mean_fidelity", report.mean_fidelity);
    push_scalar(&mut rows, "shrink", report.shrink);
    push_scalar(&mut rows, "closed_form", closed);
    push_matrix(&mut rows, "reconstructed_state", &report.reconstructed_state);
    Ok(render(Table { header, rows }, doc, format))
}

// ---------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------

/// Re-derive the optimal cloner amplitudes by constrained numerical
/// maximization and report them with the overlap-system residuals.
pub fn cmd_optimize(format: OutputFormat) -> Result<String> {
    let opt = optimize()?;
    let overlaps = verify_overlaps(&opt.coeffs);
    let doc = json!({
        "command": "optimize",
        "params": {},
        "report": {
            "a": clean(opt.coeffs.a),
            "b": clean(opt.coeffs.b),
            "c": clean(opt.coeffs.c),
            "fidelity": clean(opt.fidelity),
            "iterations": opt.iterations,
            "converged": opt.converged,
            "unitarity_residual": clean(overlaps.unitarity_residual),
            "overlap_fidelity": clean(overlaps.overlap_fidelity),
            "stationarity_residual": clean(overlaps.stationarity_residual),
        },
    });
    let header = ["key", "value"].map(String::from).to_vec();
    let kv = |k: &str, v: String| vec![k.to_string(), v];
    let rows = vec![
        kv("a", fmt_num(opt.coeffs.a)),
        kv("b", fmt_num(opt.coeffs.b)),
        kv("c", fmt_num(opt.coeffs.c)),
        kv("fidelity", fmt_num(opt.fidelity)),
        kv("iterations", opt.iterations.to_string()),
        kv("converged", opt.converged.to_string()),
        kv("unitarity_residual", fmt_num(overlaps.unitarity_residual)),
        kv("overlap_fidelity", fmt_num(overlaps.overlap_fidelity)),
        kv(
            "stationarity_residual",
            fmt_num(overlaps.stationarity_residual),
        ),
    ];
    Ok(render(Table { header, rows }, doc, format))
}

// ---------------------------------------------------------------------
// bb84
// ---------------------------------------------------------------------

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Eavesdropping figures for symmetric cloning attacks on the four
/// phase-basis protocol states: the clone fidelity an optimal attack
/// achieves, the disturbance it necessarily inflicts, and the
/// legitimate parties' remaining mutual information per bit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Bb84Report {
    pub fidelity: f64,
    pub disturbance: f64,
    pub mutual_info_ab: f64,
}

pub fn bb84_report() -> Result<Bb84Report> {
    let fidelity = bound_fidelity(1, OutputCopies::Finite(2))?;
    let disturbance = 1.0 - fidelity;
    Ok(Bb84Report {
        fidelity,
        disturbance,
        mutual_info_ab: 1.0 - binary_entropy(disturbance),
    })
}

pub fn cmd_bb84(format: OutputFormat) -> Result<String> {
    let r = bb84_report()?;
    let doc = json!({
        "command": "bb84",
        "params": {},
        "report": {
            "fidelity": clean(r.fidelity),
            "disturbance": clean(r.disturbance),
            "mutual_info_ab": clean(r.mutual_info_ab),
        },
    });
    let header = ["fidelity", "disturbance", "mutual_info_ab"]
        .map(String::from)
        .to_vec();
    let rows = vec![vec![
        fmt_num(r.fidelity),
        fmt_num(r.disturbance),
        fmt_num(r.mutual_info_ab),
    ]];
    Ok(render(Table { header, rows }, doc, format))
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

/// One named verification check: a computed residual against the
/// tolerance in force.
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tol: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.tol
    }
}

struct Checks {
    tol_override: Option<f64>,
    list: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: &'static str, residual: f64, default_tol: f64) {
        self.list.push(Check {
            name,
            residual,
            tol: self.tol_override.unwrap_or(default_tol),
        });
    }
}

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn covariance_checks(out: &mut Checks) -> Result<()> {
    let cloner = optimal_12_clones_channel()?;
    let g = gamma_from_channel(&cloner)?;
    out.push(
        "cloner_map_covariance",
        covariance_constraint_residual(&g),
        1e-10,
    );
    let s = shrink_from_gamma(&g)?;
    out.push("cloner_map_eta_xy", (s.eta_xy - INV_SQRT2).abs(), 1e-10);
    out.push("cloner_map_eta_z", (s.eta_z - 0.5).abs(), 1e-10);
    out.push("cloner_map_phi_rot", s.phi_rot.abs(), 1e-10);
    out.push("cloner_map_z_offset", s.z_offset.abs(), 1e-10);

    let id = shrink_from_gamma(&gamma_from_channel(&identity_channel(1))?)?;
    out.push(
        "identity_shrink",
        (id.eta_xy - 1.0).abs().max((id.eta_z - 1.0).abs()),
        1e-12,
    );

    let mp = measure_prepare_channel(1, 1, default_nodes(1))?;
    let smp = shrink_from_gamma(&gamma_from_channel(&mp)?)?;
    out.push(
        "measure_prepare_shrink",
        (smp.eta_xy - 0.5).abs().max(smp.eta_z.abs()),
        1e-8,
    );
    Ok(())
}

fn concatenation_checks(out: &mut Checks) -> Result<()> {
    let cloner = optimal_12_clones_channel()?;
    let mp11 = measure_prepare_channel(1, 1, default_nodes(1))?;
    let mp12 = measure_prepare_channel(1, 2, default_nodes(1))?;
    let mp21 = measure_prepare_channel(2, 1, default_nodes(2))?;

    let r = concatenation_check(&cloner, &mp21)?;
    out.push("cloner_then_reduce_residual", r.residual, 1e-8);
    out.push(
        "cloner_then_reduce_eta",
        (r.eta_measured - 0.5).abs(),
        1e-8,
    );

    let r = concatenation_check(&mp12, &mp21)?;
    out.push("expand_then_reduce_residual", r.residual, 1e-8);
    out.push(
        "expand_then_reduce_eta",
        (r.eta_measured - 0.5 * INV_SQRT2).abs(),
        1e-8,
    );

    let r = concatenation_check(&mp11, &mp11)?;
    out.push("repeated_estimation_residual", r.residual, 1e-8);

    let rotation = unitary_channel(&phase_unitary(0.7))?;
    let r = concatenation_check(&rotation, &mp11)?;
    out.push("rotate_then_estimate_residual", r.residual, 1e-8);

    // The fully depolarizing channel is the zero point of the shrink scale.
    let s = shrink_from_gamma(&gamma_from_channel(&depolarizing_qubit_channel())?)?;
    out.push("depolarizing_shrink_zero", s.eta_xy.abs(), 1e-12);

    // Sanity: the composite of covariant channels stays covariant.
    let comp = compose(&cloner, &mp21)?;
    out.push(
        "composite_covariance",
        covariance_constraint_residual(&gamma_from_channel(&comp)?),
        1e-8,
    );
    Ok(())
}

fn estimation_checks(out: &mut Checks) -> Result<()> {
    let mut worst = 0.0f64;
    for n in 1..=8 {
        let closed = pe_fidelity_closed(n)?;
        let numeric = pe_fidelity_numeric(n, default_nodes(n))?.mean_fidelity;
        worst = worst.max((closed - numeric).abs());
    }
    out.push("closed_vs_numeric_max_n1_8", worst, 1e-10);

    let mut worst = 0.0f64;
    for n in 1..=4 {
        worst = worst.max(canonical_povm(n, default_nodes(n))?.completeness_residual()?);
    }
    out.push("povm_completeness_max_n1_4", worst, 1e-10);

    let report = pe_fidelity_numeric(3, default_nodes(3))?;
    let b = bloch_from_density(&report.reconstructed_state)?;
    out.push(
        "reprepared_state_alignment",
        (b.x - report.shrink).abs().max(b.y.abs()).max(b.z.abs()),
        1e-10,
    );
    Ok(())
}

fn optimum_checks(out: &mut Checks) -> Result<()> {
    let (a_ref, b_ref, c_ref) = optimal_coefficients();
    let opt = optimize()?;
    let coeff_err = (opt.coeffs.a - a_ref)
        .abs()
        .max((opt.coeffs.b - b_ref).abs())
        .max((opt.coeffs.c - c_ref).abs());
    out.push("optimizer_coefficients", coeff_err, 1e-6);
    out.push(
        "optimizer_fidelity",
        (opt.fidelity - bound_fidelity(1, OutputCopies::Finite(2))?).abs(),
        1e-9,
    );
    out.push(
        "optimizer_converged",
        if opt.converged { 0.0 } else { 1.0 },
        0.5,
    );
    let overlaps = verify_overlaps(&opt.coeffs);
    out.push("overlap_unitarity", overlaps.unitarity_residual, 1e-10);
    out.push("overlap_stationarity", overlaps.stationarity_residual, 1e-10);
    out.push(
        "overlap_fidelity_consistency",
        (overlaps.overlap_fidelity - opt.fidelity).abs(),
        1e-9,
    );
    Ok(())
}

/// Compute the checks of one suite. `tol_override`, when given, replaces
/// every default tolerance.
pub fn run_suite(suite: Suite, tol_override: Option<f64>) -> Result<Vec<Check>> {
    let mut checks = Checks {
        tol_override,
        list: Vec::new(),
    };
    match suite {
        Suite::Covariance => covariance_checks(&mut checks)?,
        Suite::Concatenation => concatenation_checks(&mut checks)?,
        Suite::Estimation => estimation_checks(&mut checks)?,
        Suite::Optimum => optimum_checks(&mut checks)?,
        Suite::All => {
            covariance_checks(&mut checks)?;
            concatenation_checks(&mut checks)?;
            estimation_checks(&mut checks)?;
            optimum_checks(&mut checks)?;
        }
    }
    Ok(checks.list)
}

/// Render one check as its report line.
pub fn check_line(c: &Check) -> String {
    format!(
        "{}: residual={:e} tol={:e} {}",
        c.name,
        c.residual,
        c.tol,
        if c.pass() { "PASS" } else { "FAIL" }
    )
}
