//! Command dispatch shared by the binary and the integration tests.
//!
//! Everything here returns strings and exit codes instead of printing, so
//! the whole surface is testable in-process. Output contract: JSON bodies
//! are `serde_json::to_string_pretty` of an envelope
//! `{command, inputs, results, warnings}` whose key order is stable, so a
//! parse/serialize round trip is byte-identical; CSV bodies are LF-joined
//! with a fixed header per command and numbers rendered with the same
//! formatter JSON uses.

use crate::exact::{fmt_rat, parse_rational, precision_bits, rat_i, rat_to_f64, Rat};
use crate::functional::{eh_case1_closed, eh_value, vol_h_pi2_coeff, yamabe_bounds};
use crate::moduli::{enumerate_components, witness_class, Manifold, ModuliError, ModuliScan};
use crate::surface::{
    solve_case1, solve_case2, thresholds, CaseTwoSolutions, EMCandidate, KahlerClass,
    RuledSurface, SurfaceError,
};
use crate::verify::run_all;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Case2,
    Thresholds,
    Sweep,
    Moduli,
    Verify,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Case2 => "case2",
            Command::Thresholds => "thresholds",
            Command::Sweep => "sweep",
            Command::Moduli => "moduli",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// One resolved invocation. The binary builds this from flags; tests build
/// it directly.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub genus: u32,
    pub degree: u32,
    /// Fiber ratio, as typed (fraction or decimal), for solve/case2.
    pub x: Option<String>,
    /// Polarization parameter for moduli scans.
    pub p: Option<String>,
    /// Witness-search target count, alternative to `p`.
    pub witness: Option<usize>,
    pub manifold: Manifold,
    pub samples: usize,
    pub tol: f64,
    pub format: OutputFormat,
    /// Significant digits kept in reported floats.
    pub precision: u32,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Verify,
            genus: 0,
            degree: 1,
            x: None,
            p: None,
            witness: None,
            manifold: Manifold::Product,
            samples: 1001,
            tol: 1e-12,
            format: OutputFormat::Json,
            precision: 15,
            out: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Finished command: body text plus the process exit code to use.
#[derive(Clone, Debug)]
pub struct Dispatch {
    pub body: String,
    pub exit_code: i32,
}

/// Round to `digits` significant decimal digits, so reported values are
/// stable across platforms and independent of internal evaluation order.
pub fn round_sig(v: f64, digits: u32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let d = digits.clamp(1, 17) as usize - 1;
    format!("{v:.d$e}").parse().unwrap_or(v)
}

/// Render a float exactly the way `serde_json` renders it, so CSV cells and
/// JSON numbers agree byte for byte.
pub fn fmt_f64(v: f64) -> String {
    match serde_json::Number::from_f64(v) {
        Some(n) => n.to_string(),
        None => "null".to_string(),
    }
}

pub fn parse_manifold(s: &str) -> Result<Manifold, CliError> {
    match s {
        "product" => Ok(Manifold::Product),
        "twisted" => Ok(Manifold::Twisted),
        other => Err(CliError::Usage(format!(
            "unknown manifold {other:?}: expected product or twisted"
        ))),
    }
}

pub fn parse_format(s: &str) -> Result<OutputFormat, CliError> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(CliError::Usage(format!(
            "unknown format {other:?}: expected json or csv"
        ))),
    }
}

struct ParsedX {
    value: Rat,
    input_echo: Option<String>,
    warning: Option<String>,
}

fn parse_x(raw: &str, what: &str) -> Result<ParsedX, CliError> {
    let parsed = parse_rational(raw).map_err(|e| CliError::Domain(e.to_string()))?;
    let warning = if parsed.approximated {
        Some(format!(
            "{what} {raw} is not exactly representable at denominator <= 10^6; \
             using nearest rational {}",
            fmt_rat(&parsed.value)
        ))
    } else {
        None
    };
    Ok(ParsedX {
        input_echo: parsed.decimal_input.clone(),
        value: parsed.value,
        warning,
    })
}

fn envelope(command: Command, inputs: Value, results: Value, warnings: Vec<String>) -> Value {
    json!({
        "command": command.as_str(),
        "inputs": inputs,
        "results": results,
        "warnings": warnings,
    })
}

fn verdict_json(cand: &EMCandidate, digits: u32) -> Value {
    json!({
        "status": cand.verdict().status.as_str(),
        "witness": cand.verdict().witness.map(|w| round_sig(w, digits)),
    })
}

fn eh_json(cand: &EMCandidate, surface: &RuledSurface, digits: u32) -> Value {
    match eh_value(cand, surface) {
        Ok(r) => {
            let vol_exact = vol_h_pi2_coeff(cand.x(), cand.b_exact(), surface.degree());
            json!({
                "scal_h": round_sig(r.scal_h, digits),
                "vol_h": round_sig(r.vol_h, digits),
                "vol_pi2_coeff": vol_exact.as_rat().map(|q| fmt_rat(&q)),
                "eh": round_sig(r.eh, digits),
                "kahler_yamabe_bound": round_sig(r.kahler_yamabe_bound, digits),
                "aubin_bound": round_sig(r.aubin_bound, digits),
                "exceeds_aubin": r.exceeds_aubin,
                "improves_bound": r.improves_bound,
                "negative_eh": r.negative_eh,
            })
        }
        Err(_) => Value::Null,
    }
}

fn candidate_json(cand: &EMCandidate, surface: &RuledSurface, digits: u32) -> Value {
    json!({
        "case": cand.case().as_str(),
        "b": round_sig(cand.b_f64(), digits),
        "b_exact": cand.b_exact().to_string(),
        "c": round_sig(cand.c_f64(), digits),
        "c_exact": cand.c_exact().to_string(),
        "scal_h": round_sig(cand.scal_h_f64(), digits),
        "scal_h_exact": cand.scal_h_exact().to_string(),
        "profile": cand
            .profile_real()
            .coeffs()
            .iter()
            .map(|&v| round_sig(v, digits))
            .collect::<Vec<f64>>(),
        "verdict": verdict_json(cand, digits),
        "eh": eh_json(cand, surface, digits),
    })
}

fn class_json(x: &Rat, degree: u32) -> Value {
    match KahlerClass::from_fiber_ratio(x.clone(), degree) {
        Ok(class) => {
            let (parity, k) = match class.parity() {
                crate::surface::ClassParity::Even { k } => ("even", k),
                crate::surface::ClassParity::Odd { k } => ("odd", k),
            };
            json!({
                "parity": parity,
                "k": k,
                "p": fmt_rat(class.p()),
            })
        }
        Err(_) => Value::Null,
    }
}

fn sweep_row(x: &Rat, surface: &RuledSurface, digits: u32) -> Value {
    let cand = solve_case1(x, surface);
    let xf = rat_to_f64(x);
    let eh = eh_case1_closed(xf, surface);
    let bounds = yamabe_bounds(xf, surface);
    json!({
        "x": round_sig(xf, digits),
        "x_exact": fmt_rat(x),
        "b": round_sig(cand.b_f64(), digits),
        "c": round_sig(cand.c_f64(), digits),
        "A": round_sig(cand.scal_h_f64(), digits),
        "verdict": cand.verdict().status.as_str(),
        "eh": round_sig(eh, digits),
        "kahler_bound": round_sig(bounds.kahler_bound, digits),
        "aubin": round_sig(bounds.aubin_bound, digits),
        "exceeds_aubin": eh > bounds.aubin_bound,
        "negative_eh": eh < 0.0,
    })
}

pub const SWEEP_CSV_HEADER: &str = "x,b,c,A,verdict,eh,kahler_bound,aubin,exceeds_aubin,negative_eh";

fn sweep_csv(rows: &[Value]) -> String {
    let mut lines = vec![SWEEP_CSV_HEADER.to_string()];
    for row in rows {
        let g = |k: &str| row.get(k).cloned().unwrap_or(Value::Null);
        let num = |k: &str| match g(k) {
            Value::Number(n) => n.to_string(),
            other => other.to_string(),
        };
        lines.push(format!(
            "{},{},{},{},{},{},{},{},{},{}",
            num("x"),
            num("b"),
            num("c"),
            num("A"),
            g("verdict").as_str().unwrap_or(""),
            num("eh"),
            num("kahler_bound"),
            num("aubin"),
            g("exceeds_aubin"),
            g("negative_eh"),
        ));
    }
    lines.join("\n") + "\n"
}

const MODULI_CSV_HEADER: &str = "k,degree,x,b,c,verdict,eh,admitted";

fn moduli_json(scan: &ModuliScan, digits: u32) -> Value {
    let entries: Vec<Value> = scan
        .entries
        .iter()
        .map(|e| {
            json!({
                "k": e.k,
                "degree": e.degree,
                "x": e.x.as_ref().map(fmt_rat),
                "x_f64": e.x.as_ref().map(|x| round_sig(rat_to_f64(x), digits)),
                "b": e.candidate.as_ref().map(|c| round_sig(c.b_f64(), digits)),
                "c": e.candidate.as_ref().map(|c| round_sig(c.c_f64(), digits)),
                "verdict": e.verdict().map(|v| v.as_str()),
                "eh": round_sig(e.eh, digits),
                "admitted": e.admitted,
            })
        })
        .collect();
    json!({
        "manifold": scan.manifold.as_str(),
        "genus": scan.genus,
        "p": fmt_rat(&scan.p),
        "distinct_count": scan.distinct_count,
        "entries": entries,
    })
}

fn moduli_csv(scan: &ModuliScan, digits: u32) -> String {
    let mut lines = vec![MODULI_CSV_HEADER.to_string()];
    for e in &scan.entries {
        lines.push(format!(
            "{},{},{},{},{},{},{},{}",
            e.k,
            e.degree,
            e.x.as_ref().map(fmt_rat).unwrap_or_default(),
            e.candidate
                .as_ref()
                .map(|c| fmt_f64(round_sig(c.b_f64(), digits)))
                .unwrap_or_default(),
            e.candidate
                .as_ref()
                .map(|c| fmt_f64(round_sig(c.c_f64(), digits)))
                .unwrap_or_default(),
            e.verdict().map(|v| v.as_str()).unwrap_or(""),
            fmt_f64(round_sig(e.eh, digits)),
            e.admitted,
        ));
    }
    lines.join("\n") + "\n"
}

fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("envelope serializes") + "\n"
}

/// Execute one command. `Err` means the input never produced output (usage
/// or domain failure); `Ok` carries the body and the exit code, which is
/// nonzero only for `verify` with failed checks.
pub fn dispatch(config: &RunConfig) -> Result<Dispatch, CliError> {
    let digits = config.precision;
    match config.command {
        Command::Solve => {
            let raw = config
                .x
                .as_ref()
                .ok_or_else(|| CliError::Usage("solve requires --x".into()))?;
            let px = parse_x(raw, "fiber ratio")?;
            let surface = RuledSurface::new(config.genus, config.degree)?;
            // Reject ratios outside the open cone before solving.
            KahlerClass::from_fiber_ratio(px.value.clone(), config.degree)?;
            let cand = solve_case1(&px.value, &surface);
            let mut inputs = json!({
                "genus": config.genus,
                "degree": config.degree,
                "x": fmt_rat(&px.value),
                "precision_bits": precision_bits(),
            });
            if let Some(echo) = &px.input_echo {
                inputs["x_input"] = json!(echo);
            }
            let results = json!({
                "s_sigma": fmt_rat(surface.s_sigma()),
                "class": class_json(&px.value, config.degree),
                "candidate": candidate_json(&cand, &surface, digits),
            });
            let warnings = px.warning.into_iter().collect();
            let body = match config.format {
                OutputFormat::Json => {
                    render(&envelope(Command::Solve, inputs, results, warnings))
                }
                OutputFormat::Csv => sweep_csv(&[sweep_row(&px.value, &surface, digits)]),
            };
            Ok(Dispatch {
                body,
                exit_code: EXIT_OK,
            })
        }
        Command::Case2 => {
            let raw = config
                .x
                .as_ref()
                .ok_or_else(|| CliError::Usage("case2 requires --x".into()))?;
            let px = parse_x(raw, "fiber ratio")?;
            let surface = RuledSurface::new(config.genus, config.degree)?;
            let solutions = solve_case2(&px.value, &surface)?;
            let branches: Vec<&EMCandidate> = match &solutions {
                CaseTwoSolutions::Pair { plus, minus } => vec![plus, minus],
                CaseTwoSolutions::Coincident(cand) => vec![cand],
            };
            let mut inputs = json!({
                "genus": config.genus,
                "degree": config.degree,
                "x": fmt_rat(&px.value),
                "precision_bits": precision_bits(),
            });
            if let Some(echo) = &px.input_echo {
                inputs["x_input"] = json!(echo);
            }
            let results = json!({
                "s_sigma": fmt_rat(surface.s_sigma()),
                "coincident": matches!(solutions, CaseTwoSolutions::Coincident(_)),
                "branches": branches
                    .iter()
                    .map(|cand| candidate_json(cand, &surface, digits))
                    .collect::<Vec<Value>>(),
            });
            let warnings = px.warning.into_iter().collect();
            let body = match config.format {
                OutputFormat::Json => {
                    render(&envelope(Command::Case2, inputs, results, warnings))
                }
                OutputFormat::Csv => {
                    let rows: Vec<Value> = branches
                        .iter()
                        .map(|cand| {
                            let mut row = sweep_row(&px.value, &surface, digits);
                            // sweep_row solves the first family; overwrite
                            // with this branch's data.
                            row["b"] = json!(round_sig(cand.b_f64(), digits));
                            row["c"] = json!(round_sig(cand.c_f64(), digits));
                            row["A"] = json!(round_sig(cand.scal_h_f64(), digits));
                            row["verdict"] = json!(cand.verdict().status.as_str());
                            row
                        })
                        .collect();
                    sweep_csv(&rows)
                }
            };
            Ok(Dispatch {
                body,
                exit_code: EXIT_OK,
            })
        }
        Command::Thresholds => {
            let surface = RuledSurface::new(config.genus, config.degree)?;
            let t = thresholds(&surface)?;
            let inputs = json!({
                "genus": config.genus,
                "degree": config.degree,
            });
            let results = json!({
                "s_sigma": fmt_rat(surface.s_sigma()),
                "x1": round_sig(t.x1, digits),
                "x2": round_sig(t.x2, digits),
                "lemma_lower_bound": fmt_rat(&t.lemma_lower_bound()),
                "lemma_lower_bound_f64": round_sig(rat_to_f64(&t.lemma_lower_bound()), digits),
            });
            let body = match config.format {
                OutputFormat::Json => {
                    render(&envelope(Command::Thresholds, inputs, results, Vec::new()))
                }
                OutputFormat::Csv => {
                    let mut lines = vec!["s_sigma,x1,x2,lemma_lower_bound".to_string()];
                    lines.push(format!(
                        "{},{},{},{}",
                        fmt_rat(surface.s_sigma()),
                        fmt_f64(round_sig(t.x1, digits)),
                        fmt_f64(round_sig(t.x2, digits)),
                        fmt_rat(&t.lemma_lower_bound()),
                    ));
                    lines.join("\n") + "\n"
                }
            };
            Ok(Dispatch {
                body,
                exit_code: EXIT_OK,
            })
        }
        Command::Sweep => {
            if config.samples == 0 {
                return Err(CliError::Usage("sweep requires samples >= 1".into()));
            }
            let surface = RuledSurface::new(config.genus, config.degree)?;
            let den = config.samples as i64 + 1;
            let rows: Vec<Value> = (1..=config.samples as i64)
                .into_par_iter()
                .map(|i| sweep_row(&(rat_i(i) / rat_i(den)), &surface, digits))
                .collect();
            let inputs = json!({
                "genus": config.genus,
                "degree": config.degree,
                "samples": config.samples,
            });
            let body = match config.format {
                OutputFormat::Json => render(&envelope(
                    Command::Sweep,
                    inputs,
                    json!({ "rows": rows }),
                    Vec::new(),
                )),
                OutputFormat::Csv => sweep_csv(&rows),
            };
            Ok(Dispatch {
                body,
                exit_code: EXIT_OK,
            })
        }
        Command::Moduli => {
            if config.genus == 0 {
                return Err(CliError::Domain(
                    ModuliError::UnsupportedGenus(0).to_string(),
                ));
            }
            let (scan, inputs) = match (&config.p, config.witness) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "moduli takes either --p or --witness, not both".into(),
                    ))
                }
                (None, None) => {
                    return Err(CliError::Usage("moduli requires --p or --witness".into()))
                }
                (Some(raw), None) => {
                    let pp = parse_x(raw, "polarization parameter")?;
                    if !pp.value.is_positive() {
                        return Err(CliError::Domain(format!(
                            "polarization parameter must be positive, got {}",
                            fmt_rat(&pp.value)
                        )));
                    }
                    let scan = enumerate_components(config.manifold, config.genus, &pp.value)?;
                    let inputs = json!({
                        "manifold": config.manifold.as_str(),
                        "genus": config.genus,
                        "p": fmt_rat(&pp.value),
                    });
                    (scan, inputs)
                }
                (None, Some(target)) => {
                    if target == 0 {
                        return Err(CliError::Usage("witness target must be >= 1".into()));
                    }
                    let scan = witness_class(config.manifold, config.genus, target)?;
                    let inputs = json!({
                        "manifold": config.manifold.as_str(),
                        "genus": config.genus,
                        "witness_target": target,
                    });
                    (scan, inputs)
                }
            };
            let warnings = scan.warnings.clone();
            let body = match config.format {
                OutputFormat::Json => render(&envelope(
                    Command::Moduli,
                    inputs,
                    moduli_json(&scan, digits),
                    warnings,
                )),
                OutputFormat::Csv => moduli_csv(&scan, digits),
            };
            Ok(Dispatch {
                body,
                exit_code: EXIT_OK,
            })
        }
        Command::Verify => {
            let report = run_all(config.samples, config.tol);
            let exit_code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
            let body = match config.format {
                OutputFormat::Json => {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "passed": c.passed,
                                "detail": c.detail,
                            })
                        })
                        .collect();
                    let inputs = json!({
                        "samples": config.samples,
                        "tol": config.tol,
                    });
                    let results = json!({
                        "passed": report.passed(),
                        "failures": report.failures(),
                        "checks": checks,
                    });
                    render(&envelope(Command::Verify, inputs, results, Vec::new()))
                }
                OutputFormat::Csv => {
                    let mut lines: Vec<String> = report
                        .checks
                        .iter()
                        .map(|c| {
                            format!(
                                "{} {} — {}",
                                if c.passed { "PASS" } else { "FAIL" },
                                c.name,
                                c.detail
                            )
                        })
                        .collect();
                    lines.push(format!(
                        "{} of {} checks passed",
                        report.checks.len() - report.failures(),
                        report.checks.len()
                    ));
                    lines.join("\n") + "\n"
                }
            };
            Ok(Dispatch { body, exit_code })
        }
    }
}

/// Dispatch plus output delivery: returns the process exit code.
pub fn execute(config: &RunConfig) -> i32 {
    match dispatch(config) {
        Ok(d) => {
            if let Some(path) = &config.out {
                if let Err(e) = std::fs::write(path, &d.body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_DOMAIN;
                }
            } else {
                print!("{}", d.body);
            }
            d.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_config(x: &str) -> RunConfig {
        RunConfig {
            command: Command::Solve,
            genus: 1,
            degree: 1,
            x: Some(x.to_string()),
            ..RunConfig::default()
        }
    }

    #[test]
    fn round_sig_truncates() {
        assert_eq!(round_sig(1.0 / 3.0, 3), 0.333);
        assert_eq!(round_sig(123456.789, 4), 123500.0);
        assert_eq!(round_sig(0.0, 5), 0.0);
        assert_eq!(round_sig(-2.718281828, 2), -2.7);
    }

    #[test]
    fn fmt_matches_serde_json() {
        for v in [0.6, 1.0 / 3.0, 123456.0, -1e-9, 19.715747283434843] {
            let via_json = serde_json::to_string(&serde_json::json!(v)).unwrap();
            assert_eq!(fmt_f64(v), via_json);
        }
    }

    #[test]
    fn solve_worked_example_fields() {
        let d = dispatch(&solve_config("3/5")).unwrap();
        assert_eq!(d.exit_code, EXIT_OK);
        let v: Value = serde_json::from_str(&d.body).unwrap();
        assert_eq!(v["command"], "solve");
        assert_eq!(v["inputs"]["x"], "3/5");
        let cand = &v["results"]["candidate"];
        assert_eq!(cand["b_exact"], "3");
        assert_eq!(cand["c_exact"], "11/130");
        assert_eq!(cand["verdict"]["status"], "strictly_positive");
        assert_eq!(cand["eh"]["vol_pi2_coeff"], "13/72");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for config in [
            solve_config("3/5"),
            solve_config("0.6"),
            RunConfig {
                command: Command::Thresholds,
                genus: 2,
                degree: 1,
                ..RunConfig::default()
            },
            RunConfig {
                command: Command::Moduli,
                genus: 1,
                p: Some("11/2".into()),
                ..RunConfig::default()
            },
        ] {
            let d = dispatch(&config).unwrap();
            let v: Value = serde_json::from_str(&d.body).unwrap();
            let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
            assert_eq!(d.body, again, "round trip changed bytes");
        }
    }

    #[test]
    fn decimal_input_is_echoed() {
        let d = dispatch(&solve_config("0.6")).unwrap();
        let v: Value = serde_json::from_str(&d.body).unwrap();
        assert_eq!(v["inputs"]["x"], "3/5");
        assert_eq!(v["inputs"]["x_input"], "0.6");
        assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn sweep_csv_has_exact_header() {
        let d = dispatch(&RunConfig {
            command: Command::Sweep,
            genus: 1,
            degree: 1,
            samples: 9,
            format: OutputFormat::Csv,
            ..RunConfig::default()
        })
        .unwrap();
        let mut lines = d.body.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x,b,c,A,verdict,eh,kahler_bound,aubin,exceeds_aubin,negative_eh"
        );
        assert_eq!(lines.count(), 9);
        assert!(!d.body.contains('\r'));
    }

    #[test]
    fn sweep_csv_numbers_equal_json_numbers() {
        let base = RunConfig {
            command: Command::Sweep,
            genus: 2,
            degree: 1,
            samples: 7,
            ..RunConfig::default()
        };
        let json_body = dispatch(&base).unwrap().body;
        let csv_body = dispatch(&RunConfig {
            format: OutputFormat::Csv,
            ..base
        })
        .unwrap()
        .body;
        let v: Value = serde_json::from_str(&json_body).unwrap();
        let rows = v["results"]["rows"].as_array().unwrap();
        let lines: Vec<&str> = csv_body.lines().skip(1).collect();
        assert_eq!(rows.len(), lines.len());
        for (row, line) in rows.iter().zip(lines) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[0], row["x"].to_string());
            assert_eq!(cells[1], row["b"].to_string());
            assert_eq!(cells[5], row["eh"].to_string());
            assert_eq!(cells[8], row["exceeds_aubin"].to_string());
        }
    }

    #[test]
    fn domain_errors_exit_two() {
        let err = dispatch(&solve_config("7/5")).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_DOMAIN);
        let err = dispatch(&RunConfig {
            command: Command::Thresholds,
            genus: 1,
            degree: 1,
            ..RunConfig::default()
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_DOMAIN);
    }

    #[test]
    fn usage_errors_exit_one() {
        let err = dispatch(&RunConfig {
            command: Command::Solve,
            x: None,
            ..RunConfig::default()
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err = dispatch(&RunConfig {
            command: Command::Moduli,
            genus: 1,
            p: Some("3".into()),
            witness: Some(2),
            ..RunConfig::default()
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn moduli_csv_shape() {
        let d = dispatch(&RunConfig {
            command: Command::Moduli,
            genus: 1,
            p: Some("5/2".into()),
            format: OutputFormat::Csv,
            ..RunConfig::default()
        })
        .unwrap();
        let lines: Vec<&str> = d.body.lines().collect();
        assert_eq!(lines[0], "k,degree,x,b,c,verdict,eh,admitted");
        assert_eq!(lines.len(), 4); // header + k = 0, 1, 2
        assert!(lines[1].starts_with("0,0,,,,")); // reference row
    }
}
