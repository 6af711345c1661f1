use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::gates::{
    bell_prep, cnot, entangling_phase_from_fock, entangling_phase_qubit, ideal_cnot, init_register,
    measure, run_schedule, Backend, GateUnitary, PairCoupling, RunReport,
};
use crate::model::{bitstring, PulseSchedule};
use crate::numfmt::{round6, sig6};
use crate::params::tables::{csv_err, into_string};
use crate::params::{build_frequency_table, build_rate_table, consistency_rows, ConsistencyRow};

/// What a command wrote and what it has to say.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
    pub report: Option<GateReport>,
}

fn write_file(out: &Path, name: &str, format: OutputFormat, body: String) -> Result<PathBuf> {
    std::fs::create_dir_all(out)?;
    let path = out.join(format!("{name}.{}", format.extension()));
    std::fs::write(&path, body)?;
    Ok(path)
}

/// Frequency and rate tables for the selected species, plus the
/// rate-from-frequency consistency residuals.
pub fn cmd_tables(config: &RunConfig, out: &Path) -> Result<Outcome> {
    let catalog = config.catalog()?;
    let lattice = config.lattice()?;
    let field = config.field()?;
    let freq = build_frequency_table(&catalog, &field, &lattice, config.field.convention)?;
    let rates = build_rate_table(&catalog, &lattice)?;
    let rows = consistency_rows(&freq, &rates)?;
    let f = config.format;
    let (fb, rb, cb) = match f {
        OutputFormat::Csv => (
            freq.to_csv()?,
            rates.to_csv()?,
            ConsistencyRow::rows_to_csv(&rows)?,
        ),
        OutputFormat::Json => (
            freq.to_json(),
            rates.to_json(),
            ConsistencyRow::rows_to_json(&rows),
        ),
    };
    let files = vec![
        write_file(out, "frequencies", f, fb)?,
        write_file(out, "rates", f, rb)?,
        write_file(out, "consistency", f, cb)?,
    ];
    let worst = rows.iter().map(|r| r.relative_residual).fold(0.0, f64::max);
    Ok(Outcome {
        files,
        lines: vec![format!(
            "{} species, max consistency residual {}",
            rows.len(),
            sig6(worst)
        )],
        report: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckRow {
    fn new(check: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            residual,
            tolerance,
        }
    }

    /// NaN residuals fail.
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateReport {
    pub rows: Vec<CheckRow>,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "residual", "tolerance", "pass"])
            .map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.check.clone(),
                sig6(r.residual),
                sig6(r.tolerance),
                r.passed().to_string(),
            ])
            .map_err(csv_err)?;
        }
        into_string(w)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            check: &'a str,
            residual: f64,
            tolerance: f64,
            pass: bool,
        }
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                check: &r.check,
                residual: round6(r.residual),
                tolerance: r.tolerance,
                pass: r.passed(),
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("report rows serialize")
    }
}

pub const CNOT_TOLERANCE: f64 = 1e-12;
pub const BELL_TOLERANCE: f64 = 1e-10;
pub const PHASE_TOLERANCE: f64 = 1e-10;
pub const LEAKAGE_TOLERANCE: f64 = 1e-10;

/// Entangling coupling used when the config gives none.
const DEFAULT_CHECK_DIPOLE: f64 = 1.0;

fn load_schedule(config: &RunConfig) -> Result<PulseSchedule> {
    match &config.schedule {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            PulseSchedule::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
        None => Ok(PulseSchedule::empty()),
    }
}

/// CNOT identity, Bell preparation and the entangling phase at
/// `t = π / D`, on the configured backend. A configured schedule is also run
/// and its leakage checked.
pub fn cmd_gatecheck(config: &RunConfig, out: &Path) -> Result<Outcome> {
    let schedule = config
        .schedule
        .as_ref()
        .map(|_| load_schedule(config))
        .transpose()?;

    let mut rows = Vec::new();
    let composed = cnot(2, 0, 1)?;
    rows.push(CheckRow::new(
        "cnot_identity",
        composed.distance(&ideal_cnot(2, 0, 1)?),
        CNOT_TOLERANCE,
    ));
    rows.push(CheckRow::new(
        "cnot_involution",
        composed
            .then_after(&composed)?
            .distance(&GateUnitary::identity(2)),
        CNOT_TOLERANCE,
    ));
    let bell = bell_prep()?;
    rows.push(CheckRow::new(
        "bell_concurrence",
        (1.0 - bell.concurrence).abs(),
        BELL_TOLERANCE,
    ));
    rows.push(CheckRow::new(
        "bell_fidelity",
        (1.0 - bell.fidelity).abs(),
        BELL_TOLERANCE,
    ));

    let mut pair = config.hamiltonian(2)?;
    let d = config.dipole()?.unwrap_or(DEFAULT_CHECK_DIPOLE);
    if !(d.is_finite() && d != 0.0) {
        return Err(Error::InvalidArgument(format!(
            "entangling check needs a nonzero dipole coupling, got {d}"
        )));
    }
    pair.set_uniform_dipole(d);
    let t = PI / d.abs();
    let phi = match config.backend {
        Backend::Qubit => entangling_phase_qubit(
            &[PairCoupling {
                i: 0,
                j: 1,
                strength: d,
            }],
            t,
        )?,
        Backend::Fock => entangling_phase_from_fock(&pair, t)?,
    };
    rows.push(CheckRow::new(
        "entangling_phase",
        (phi.abs() - PI).abs(),
        PHASE_TOLERANCE,
    ));

    if let Some(schedule) = schedule {
        let n = config.lattice.sites;
        let report = run_schedule(
            &schedule,
            config.backend,
            &config.hamiltonian(n)?,
            &init_register(n)?,
        )?;
        rows.push(CheckRow::new(
            "schedule_norm",
            (report.state.norm() - 1.0).abs(),
            LEAKAGE_TOLERANCE,
        ));
        rows.push(CheckRow::new(
            "schedule_leakage",
            report.leakage,
            LEAKAGE_TOLERANCE,
        ));
    }

    let report = GateReport { rows };
    let body = match config.format {
        OutputFormat::Csv => report.to_csv()?,
        OutputFormat::Json => report.to_json(),
    };
    let file = write_file(out, "gatecheck", config.format, body)?;
    let lines = report
        .rows
        .iter()
        .map(|r| {
            format!(
                "{} {} residual={} tolerance={}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.check,
                sig6(r.residual),
                sig6(r.tolerance)
            )
        })
        .collect();
    Ok(Outcome {
        files: vec![file],
        lines,
        report: Some(report),
    })
}

fn state_csv(report: &RunReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "re", "im"]).map_err(csv_err)?;
    for (i, a) in report.state.amplitudes().iter().enumerate() {
        w.write_record([i.to_string(), sig6(a.re), sig6(a.im)])
            .map_err(csv_err)?;
    }
    into_string(w)
}

fn summary_csv(report: &RunReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value"]).map_err(csv_err)?;
    w.write_record(["leakage", &sig6(report.leakage)])
        .map_err(csv_err)?;
    w.write_record(["norm", &sig6(report.state.norm())])
        .map_err(csv_err)?;
    into_string(w)
}

fn state_json(report: &RunReport) -> String {
    #[derive(Serialize)]
    struct Amp {
        index: usize,
        re: f64,
        im: f64,
    }
    #[derive(Serialize)]
    struct Dump {
        amplitudes: Vec<Amp>,
        leakage: f64,
        norm: f64,
    }
    let dump = Dump {
        amplitudes: report
            .state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(index, a)| Amp {
                index,
                re: round6(a.re),
                im: round6(a.im),
            })
            .collect(),
        leakage: round6(report.leakage),
        norm: round6(report.state.norm()),
    };
    serde_json::to_string_pretty(&dump).expect("state dump serializes")
}

/// Runs the schedule from `|0…0⟩` and dumps the final amplitudes, leakage
/// and, if `shots > 0`, the measurement record.
pub fn cmd_simulate(config: &RunConfig, out: &Path) -> Result<Outcome> {
    let schedule = load_schedule(config)?;
    let n = config.lattice.sites;
    let initial = init_register(n)?;
    let params = config.hamiltonian(n)?;
    let report = run_schedule(&schedule, config.backend, &params, &initial)?;

    let f = config.format;
    let mut files = Vec::new();
    match f {
        OutputFormat::Csv => {
            files.push(write_file(out, "state", f, state_csv(&report)?)?);
            files.push(write_file(out, "summary", f, summary_csv(&report)?)?);
        }
        OutputFormat::Json => files.push(write_file(out, "state", f, state_json(&report))?),
    }
    let mut lines = vec![format!(
        "{} sites, {} steps, leakage {}",
        n,
        schedule.steps().len(),
        sig6(report.leakage)
    )];
    if config.shots > 0 {
        let seed = config
            .seed
            .ok_or_else(|| Error::InvalidArgument("shots requested without a seed".into()))?;
        let record = measure(&report.state, config.shots, seed)?;
        let body = match f {
            OutputFormat::Csv => record.to_csv()?,
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct Shots {
                    seed: u64,
                    shots: usize,
                    outcomes: Vec<String>,
                }
                serde_json::to_string_pretty(&Shots {
                    seed,
                    shots: record.shots(),
                    outcomes: record.bitstrings().collect(),
                })
                .expect("shots serialize")
            }
        };
        files.push(write_file(out, "measurements", f, body)?);
        let counts = record.counts();
        let summary: Vec<String> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, c)| format!("{}:{c}", bitstring(k, n)))
            .collect();
        lines.push(format!(
            "{} shots, seed {seed}: {}",
            record.shots(),
            summary.join(" ")
        ));
    }
    Ok(Outcome {
        files,
        lines,
        report: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(p: &Path) -> String {
        std::fs::read_to_string(p).unwrap()
    }

    #[test]
    fn tables_default_writes_three_csvs() {
        let dir = tempfile::tempdir().unwrap();
        let o = cmd_tables(&RunConfig::default(), dir.path()).unwrap();
        assert_eq!(o.files.len(), 3);
        let freq = read(&dir.path().join("frequencies.csv"));
        assert_eq!(freq.lines().count(), 11);
        assert!(freq.starts_with("species,value,unit\n"));
    }

    #[test]
    fn tables_empty_selection() {
        let dir = tempfile::tempdir().unwrap();
        let c = RunConfig::parse("species = []").unwrap();
        cmd_tables(&c, dir.path()).unwrap();
        assert_eq!(read(&dir.path().join("rates.csv")), "species,value,unit\n");
    }

    #[test]
    fn gatecheck_qubit_passes() {
        let dir = tempfile::tempdir().unwrap();
        let o = cmd_gatecheck(&RunConfig::default(), dir.path()).unwrap();
        let report = o.report.unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.rows.len(), 5);
    }

    #[test]
    fn gatecheck_fock_rejects_tunneling() {
        let dir = tempfile::tempdir().unwrap();
        let c = RunConfig::parse("backend = \"fock\"\n[hamiltonian]\ntunneling = [0.1, 0.0, 0.0]")
            .unwrap();
        assert!(matches!(
            cmd_gatecheck(&c, dir.path()),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!CheckRow::new("x", f64::NAN, 1.0).passed());
    }

    #[test]
    fn simulate_empty_schedule_dumps_initial_state() {
        let dir = tempfile::tempdir().unwrap();
        cmd_simulate(&RunConfig::default(), dir.path()).unwrap();
        assert_eq!(
            read(&dir.path().join("state.csv")),
            "index,re,im\n0,1,0\n1,0,0\n2,0,0\n3,0,0\n"
        );
        assert!(read(&dir.path().join("summary.csv")).contains("leakage,0\n"));
    }

    #[test]
    fn simulate_resource_guard() {
        let dir = tempfile::tempdir().unwrap();
        let c =
            RunConfig::parse("backend = \"fock\"\n[lattice]\nsites = 6\nspacing = 4e-7").unwrap();
        assert!(matches!(
            cmd_simulate(&c, dir.path()),
            Err(Error::ResourceLimit(_))
        ));
    }
}
