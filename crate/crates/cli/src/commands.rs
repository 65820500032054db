use std::io::Write as _;

use ehp_core::molecules::{self, MoleculeSpec};
use ehp_core::oracle::{GridPolicy, GridSpec};
use ehp_core::report::{
    linspace, sweep_csv, table1_csv, table1_rows, table3_csv, table3_rows, table4_csv, table4_rows,
    wavefunction_csv, TableRow, ValidationReport,
};
use ehp_core::spectra::Model;
use ehp_core::wavefunction::{build_wavefunction, normalize};
use ehp_core::{Error, PhysicalContext, PotentialParams, QuantumNumbers, Variant};

use crate::config::RunFile;
use crate::{
    EnergyArgs, Failure, IoArgs, PotentialArgs, Preset, SweepArgs, TableArgs, UnitArgs, Units,
    ValidateArgs, WavefunctionArgs,
};

/// Strength values as given by flags or the run file, before defaults.
#[derive(Debug, Default, Clone, Copy)]
struct Given {
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    d: Option<f64>,
    alpha: Option<f64>,
}

impl Given {
    fn get(&self, key: &str) -> Option<f64> {
        match key {
            "A" => self.a,
            "B" => self.b,
            "C" => self.c,
            "D" => self.d,
            "alpha" => self.alpha,
            _ => None,
        }
    }

    fn any_strength(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().any(Option::is_some)
    }

    fn params(&self, defaults: [f64; 5]) -> Result<PotentialParams, Failure> {
        PotentialParams::new(
            self.a.unwrap_or(defaults[0]),
            self.b.unwrap_or(defaults[1]),
            self.c.unwrap_or(defaults[2]),
            self.d.unwrap_or(defaults[3]),
            self.alpha.unwrap_or(defaults[4]),
        )
        .map_err(usage)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn core_failure(e: Error) -> Failure {
    match e {
        Error::NoBoundState { .. }
        | Error::SupercriticalBarrier { .. }
        | Error::NotBoundRegime { .. } => Failure::NoBoundState(e.to_string()),
        Error::Domain(_) | Error::Validation { .. } | Error::Parse { .. } => {
            Failure::Usage(e.to_string())
        }
        _ => Failure::Runtime(e.to_string()),
    }
}

fn gather(
    p: &PotentialArgs,
    file: &RunFile,
    alpha_from_units: Option<f64>,
) -> Result<Given, Failure> {
    let alpha = file.pick(p.alpha, "alpha")?;
    if alpha.is_some() && alpha_from_units.is_some() {
        return Err(Failure::Usage(
            "in physical units alpha comes from --molecule or --alpha-anginv; drop --alpha".into(),
        ));
    }
    Ok(Given {
        a: file.pick(p.a, "A")?,
        b: file.pick(p.b, "B")?,
        c: file.pick(p.c, "C")?,
        d: file.pick(p.d, "D")?,
        alpha: alpha.or(alpha_from_units),
    })
}

fn model(p: &PotentialArgs, file: &RunFile) -> Result<Model, Failure> {
    let name = file.pick_or(p.model.clone(), "model", "ehp".to_string())?;
    name.parse().map_err(usage)
}

fn variant(io: &IoArgs, file: &RunFile) -> Result<Variant, Failure> {
    match file.pick(io.variant.clone(), "variant")? {
        Some(v) => v.parse().map_err(usage),
        None => Ok(Variant::Rederived),
    }
}

/// Every flag the model needs, as a usage error naming the missing ones.
fn require(model: Model, given: &Given) -> Result<(), Failure> {
    let missing: Vec<String> = model
        .required()
        .iter()
        .filter(|k| given.get(k).is_none())
        .map(|k| format!("--{k}"))
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "model {model:?} needs {} (missing: {})",
            model
                .required()
                .iter()
                .map(|k| format!("--{k}"))
                .collect::<Vec<_>>()
                .join(" "),
            missing.join(" ")
        )))
    }
}

fn load_catalog(path: Option<String>) -> Result<Vec<MoleculeSpec>, Failure> {
    match path {
        None => Ok(molecules::builtin_catalog()),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Failure::Usage(format!("cannot read catalog {p}: {e}")))?;
            molecules::load_catalog(&text).map_err(usage)
        }
    }
}

/// Unit context and, in physical units, the molecule's screening parameter.
fn units(u: &UnitArgs, file: &RunFile) -> Result<(PhysicalContext, Option<f64>), Failure> {
    let mode = match file.pick(u.units.map(|m| format!("{m:?}").to_lowercase()), "units")? {
        None => None,
        Some(s) => match s.to_ascii_lowercase().as_str() {
            "natural" => Some(Units::Natural),
            "physical" => Some(Units::Physical),
            other => {
                return Err(Failure::Usage(format!(
                    "unknown units {other:?}; use natural or physical"
                )))
            }
        },
    };
    let molecule = file.pick(u.molecule.clone(), "molecule")?;
    let mu_amu = file.pick(u.mu_amu, "mu-amu")?;
    let alpha_anginv = file.pick(u.alpha_anginv, "alpha-anginv")?;
    let hbar = file.pick(u.hbar, "hbar")?;
    let mu = file.pick(u.mu, "mu")?;
    let molecular = molecule.is_some() || mu_amu.is_some() || alpha_anginv.is_some();
    let physical = match mode {
        Some(Units::Physical) => true,
        Some(Units::Natural) if molecular => {
            return Err(Failure::Usage(
                "molecule flags need --units physical".into(),
            ));
        }
        Some(Units::Natural) => false,
        None => molecular,
    };
    if !physical {
        let ctx =
            PhysicalContext::natural(hbar.unwrap_or(1.0), mu.unwrap_or(1.0)).map_err(usage)?;
        return Ok((ctx, None));
    }
    if hbar.is_some() || mu.is_some() {
        return Err(Failure::Usage(
            "--hbar and --mu apply to natural units only".into(),
        ));
    }
    let spec = match (molecule, mu_amu, alpha_anginv) {
        (Some(name), None, None) => {
            let catalog = load_catalog(file.pick(u.catalog.clone(), "catalog")?)?;
            molecules::find(&catalog, &name)
                .cloned()
                .ok_or_else(|| Failure::Usage(format!("molecule {name:?} is not in the catalog")))?
        }
        (None, Some(m), Some(a)) => MoleculeSpec::new("custom", m, a).map_err(usage)?,
        (Some(_), _, _) => {
            return Err(Failure::Usage(
                "give either --molecule or --mu-amu with --alpha-anginv, not both".into(),
            ));
        }
        _ => {
            return Err(Failure::Usage(
                "physical units need --molecule NAME or both --mu-amu and --alpha-anginv".into(),
            ));
        }
    };
    let ctx = molecules::context_for(&spec).map_err(usage)?;
    Ok((ctx, Some(spec.alpha)))
}

fn parse_states(list: &str) -> Result<Vec<QuantumNumbers>, Failure> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let qn = match item.split_once(':') {
            Some((n, l)) => {
                let parse = |s: &str| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|e| Failure::Usage(format!("bad state {item:?}: {e}")))
                };
                QuantumNumbers::new(parse(n)?, parse(l)?)
            }
            None => QuantumNumbers::from_label(item).map_err(usage)?,
        };
        out.push(qn);
    }
    if out.is_empty() {
        return Err(Failure::Usage(
            "state list is empty; pass e.g. --states 0:0,1:0".into(),
        ));
    }
    Ok(out)
}

fn emit(out: Option<String>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Twelve significant digits, positional where that stays readable.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.11}");
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

pub fn energy(args: &EnergyArgs) -> Result<(), Failure> {
    let file = RunFile::load(args.io.config.as_deref())?;
    let model = model(&args.potential, &file)?;
    let (ctx, alpha) = units(&args.units, &file)?;
    let given = gather(&args.potential, &file, alpha)?;
    require(model, &given)?;
    // strengths the model ignores default to zero; alpha only matters when required
    let params = given.params([0.0, 0.0, 0.0, 0.0, 1.0])?;
    let qn = QuantumNumbers::new(
        file.pick_or(args.state.n, "n", 0)?,
        file.pick_or(args.state.l, "l", 0)?,
    );
    let variant = variant(&args.io, &file)?;
    let level = match model.energy(&params, qn, &ctx, variant) {
        Ok(level) => level,
        Err(e) => {
            let failure = core_failure(e);
            if matches!(failure, Failure::NoBoundState(_)) {
                emit(args.io.out.clone(), "NoBoundState\n")?;
            }
            return Err(failure);
        }
    };
    let status = if level.bound { "bound" } else { "NoBoundState" };
    emit(
        args.io.out.clone(),
        &format!("{}\n{status}\n", sig12(level.energy)),
    )?;
    if level.bound {
        Ok(())
    } else {
        Err(Failure::NoBoundState(format!(
            "{} level {} lies at or above the continuum threshold",
            variant,
            qn.label()
        )))
    }
}

fn max_gap(rows: &[TableRow], variant: Variant) -> String {
    let gaps: Vec<f64> = rows.iter().filter_map(|r| r.gap(variant)).collect();
    let worst = gaps.iter().copied().fold(0.0f64, f64::max);
    format!(
        "{} of {} cells computed, max gap {worst:.3e} ({variant})",
        gaps.len(),
        rows.len()
    )
}

pub fn table(args: &TableArgs) -> Result<(), Failure> {
    let file = RunFile::load(args.io.config.as_deref())?;
    let variant = variant(&args.io, &file)?;
    let csv = match args.preset {
        Preset::Table4 => {
            let rows = table4_rows();
            eprintln!("table4: {}", max_gap(&rows, variant));
            table4_csv(&rows, variant)
        }
        Preset::Table1 => {
            let rows = table1_rows();
            eprintln!("table1: {}", max_gap(&rows, variant));
            table1_csv(&rows, variant)
        }
        Preset::Table3 => {
            let given = gather(&args.potential, &file, None)?;
            let strengths = (given.a, given.b, given.c, given.d);
            let (Some(a), Some(b), Some(c), Some(d)) = strengths else {
                return Err(Failure::Usage(
                    "table3 needs --A --B --C --D: the published molecular table does not state the \
                     potential strengths it used, so it cannot be regenerated; supply candidate \
                     strengths (eV, eV Angstrom) to compute levels for the catalog molecules"
                        .into(),
                ));
            };
            if given.alpha.is_some() {
                return Err(Failure::Usage(
                    "table3 takes alpha from each molecule; drop --alpha".into(),
                ));
            }
            let catalog = load_catalog(file.pick(args.catalog.clone(), "catalog")?)?;
            let rows = table3_rows((a, b, c, d), &catalog).map_err(usage)?;
            eprintln!(
                "table3: computed for supplied strengths; no published values to compare against"
            );
            table3_csv(&rows, &catalog)
        }
    };
    emit(args.io.out.clone(), &csv)
}

/// Caption values of the published sweeps; used for parameters not swept.
const SWEEP_DEFAULTS: [f64; 5] = [1.0, -1.0, 4.0, -4.0, 0.025];

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let file = RunFile::load(args.io.config.as_deref())?;
    let param = file
        .pick(args.param.clone(), "param")?
        .ok_or_else(|| Failure::Usage("sweep needs --param (A, B, C, D or alpha)".into()))?;
    let from = file.pick(args.from, "from")?;
    let to = file.pick(args.to, "to")?;
    let (Some(from), Some(to)) = (from, to) else {
        return Err(Failure::Usage("sweep needs --from and --to".into()));
    };
    let samples = file.pick_or(args.samples, "samples", 51)?;
    let states = parse_states(&file.pick_or(args.states.clone(), "states", String::new())?)?;
    let (ctx, alpha) = units(&args.units, &file)?;
    let base = gather(&args.potential, &file, alpha)?.params(SWEEP_DEFAULTS)?;
    let values = linspace(from, to, samples).map_err(usage)?;
    let variant = variant(&args.io, &file)?;
    let csv = sweep_csv(&base, &param, &values, &states, &ctx, variant).map_err(usage)?;
    emit(args.io.out.clone(), &csv)
}

fn default_validation_states() -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for big_n in 1..=4u32 {
        for l in 0..big_n {
            out.push(QuantumNumbers::new(big_n - 1 - l, l));
        }
    }
    out
}

pub fn validate(args: &ValidateArgs) -> Result<(), Failure> {
    let file = RunFile::load(args.io.config.as_deref())?;
    let (ctx, alpha) = units(&args.units, &file)?;
    let given = gather(&args.potential, &file, alpha)?;
    if !given.any_strength() || given.alpha.is_none() {
        return Err(Failure::Usage(
            "validate needs a parameter block: at least one of --A --B --C --D, and --alpha".into(),
        ));
    }
    if args.potential.model.is_some() || file.pick::<String>(None, "model")?.is_some() {
        require(model(&args.potential, &file)?, &given)?;
    }
    let params = given.params([0.0; 5])?;
    let states = match file.pick(args.states.clone(), "states")? {
        Some(list) => parse_states(&list)?,
        None => default_validation_states(),
    };
    let policy = GridPolicy {
        points: file.pick_or(
            args.grid.grid_points,
            "grid-points",
            GridPolicy::default().points,
        )?,
        r_min: file.pick_or(args.grid.r_min, "r-min", 0.0)?,
        r_max: file.pick(args.grid.r_max, "r-max")?,
    };
    let report = ValidationReport::run(&params, &states, &ctx, &policy).map_err(|e| match e {
        Error::Domain(_) | Error::Validation { .. } => usage(e),
        other => Failure::Runtime(format!("oracle failed: {other}")),
    })?;
    emit(args.io.out.clone(), &report.csv())?;
    eprintln!("{}", report.summary());
    if report.passed() {
        Ok(())
    } else {
        let bad: Vec<String> = report
            .rows
            .iter()
            .filter(|r| !r.rederived_ok())
            .map(|r| r.qn.label())
            .collect();
        Err(Failure::Mismatch(format!(
            "rederived levels disagree with the oracle for {}",
            bad.join(", ")
        )))
    }
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<(), Failure> {
    let file = RunFile::load(args.io.config.as_deref())?;
    let model = model(&args.potential, &file)?;
    let (ctx, alpha) = units(&args.units, &file)?;
    let given = gather(&args.potential, &file, alpha)?;
    require(model, &given)?;
    if given.alpha.is_none() {
        return Err(Failure::Usage("wavefunction needs --alpha".into()));
    }
    let params = given.params([0.0; 5])?;
    let qn = QuantumNumbers::new(
        file.pick_or(args.state.n, "n", 0)?,
        file.pick_or(args.state.l, "l", 0)?,
    );
    if file
        .pick(args.io.variant.clone(), "variant")?
        .is_some_and(|v| v != "rederived")
    {
        return Err(Failure::Usage(
            "wavefunctions exist only for the rederived quantisation; drop --variant".into(),
        ));
    }
    let wf = build_wavefunction(&params, qn, &ctx)
        .and_then(|w| normalize(&w))
        .map_err(core_failure)?;
    let r_max = match file.pick(args.grid.r_max, "r-max")? {
        Some(r) => r,
        None => wf.support().1,
    };
    let grid = GridSpec::new(
        file.pick_or(args.grid.r_min, "r-min", 0.0)?,
        r_max,
        file.pick_or(args.grid.grid_points, "grid-points", 4095)?,
    )
    .map_err(usage)?;
    let (csv, nodes) = wavefunction_csv(&wf, &grid);
    if !nodes.resolved {
        eprintln!("ehp: node count changes on a finer grid; increase --grid-points");
    }
    emit(args.io.out.clone(), &csv)
}
