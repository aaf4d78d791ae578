use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use dirac_hydro::algebra::conventions_sheet;
use dirac_hydro::gordon::DEFAULT_KAPPA;
use dirac_hydro::{
    build_chiral_basis, check_fierz, check_spinor_constraints, compute_bilinears, equivalence_probe, evaluate_point,
    guidance_at, kinematic_velocity, lorentz_exp, momentum_from_velocity, parse_config, polar_decompose,
    polar_reconstruct, verify_basis, all_residuals, batch_integrate, CliffordBasis64, FieldSpec, FourVector, GridField64,
    IdentityReport, IntegrationSettings64, LorentzParams, OutputFormat, RunConfig, Spinor64, VelocityMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{num, Record};

/// What a subcommand produced: records to print and, when something is
/// out of tolerance, a description of the worst offender.
pub struct Outcome {
    pub records: Vec<Record>,
    pub format: Option<OutputFormat>,
    pub violation: Option<String>,
}

pub fn parse_numbers<const N: usize>(s: &str, what: &str) -> anyhow::Result<[f64; N]> {
    let parts: Vec<&str> = s.split([',', ' ', '\t']).filter(|p| !p.is_empty()).collect();
    if parts.len() != N {
        bail!("{what}: expected {N} numbers, got {}", parts.len());
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| anyhow!("{what}: `{p}` is not a number"))?;
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> anyhow::Result<RunConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    parse_config(&text, path.parent()).map_err(|e| anyhow!("invalid config {}:\n{e}", path.display()))
}

fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor64 {
    Spinor64::from_interleaved(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

fn report_records(kind: &str, report: &IdentityReport, tol: f64, records: &mut Vec<Record>) -> Option<(String, f64)> {
    let mut worst: Option<(String, f64)> = None;
    for r in &report.entries {
        records.push(
            Record::new(kind)
                .with("identity", r.name.as_str())
                .with("max_residual", r.value)
                .with("pass", r.value <= tol),
        );
        if worst.as_ref().is_none_or(|w| r.value > w.1) {
            worst = Some((r.name.clone(), r.value));
        }
    }
    worst
}

pub fn identities(n: usize, seed: u64, tol: f64, conventions: bool) -> anyhow::Result<(String, Outcome)> {
    let basis = build_chiral_basis::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();

    let mut basis_report = verify_basis(&basis);
    let mut lorentz = IdentityReport::new();
    let mut worst_conj = 0.0f64;
    let mut worst_orth = 0.0f64;
    for _ in 0..n {
        let p = LorentzParams(std::array::from_fn(|_| rng.random_range(-2.0..2.0)));
        let pair = lorentz_exp(&p, &basis);
        worst_conj = worst_conj.max(pair.conjugation_residual(&basis));
        worst_orth = worst_orth.max(pair.orthogonality_residual());
    }
    lorentz.push("lorentz_conjugation", worst_conj);
    lorentz.push("lorentz_orthogonality", worst_orth);
    basis_report.merge_max(&lorentz);

    let mut fierz = IdentityReport::new();
    let mut skipped = 0usize;
    for _ in 0..n {
        let psi = random_spinor(&mut rng);
        let b = compute_bilinears(&psi, &basis);
        if polar_decompose(&psi, &basis).is_err() {
            skipped += 1;
            continue;
        }
        fierz.merge_max(&check_fierz(&b));
        fierz.merge_max(&check_spinor_constraints(&psi, &b, &basis));
    }

    let mut worst = report_records("identity", &basis_report, tol, &mut records);
    if let Some(w) = report_records("identity", &fierz, tol, &mut records) {
        if worst.as_ref().is_none_or(|c| w.1 > c.1) {
            worst = Some(w);
        }
    }
    records.push(
        Record::new("summary")
            .with("spinors", n)
            .with("singular_skipped", skipped)
            .with("lorentz_draws", n)
            .with("seed", seed as usize)
            .with("tolerance", tol),
    );
    let violation = worst.filter(|w| !(w.1 <= tol)).map(|(name, v)| format!("{name} = {} exceeds {}", num(v), num(tol)));
    let preface = if conventions { conventions_sheet() + "\n" } else { String::new() };
    Ok((
        preface,
        Outcome {
            records,
            format: None,
            violation,
        },
    ))
}

pub fn polar(spinor: &str, tol: f64) -> anyhow::Result<Outcome> {
    let basis = build_chiral_basis::<f64>();
    let psi = Spinor64::from_interleaved(parse_numbers::<8>(spinor, "--spinor")?);
    let pd = polar_decompose(&psi, &basis)?;
    let back = polar_reconstruct(&pd, &basis);
    let round_trip = (back - psi).norm() / psi.norm();
    let ku = kinematic_velocity(&pd);
    let kin = (0..4).map(|k| (ku[k] - pd.u[k]).abs()).fold(0.0, f64::max);
    let l_vec: Vec<f64> = pd.l_vec.0.iter().flatten().copied().collect();
    let l_spin: Vec<f64> = pd.l_spin.0.iter().flatten().flat_map(|z| [z.re, z.im]).collect();
    let rec = Record::new("polar")
        .with("phi", pd.phi)
        .with("beta", pd.beta)
        .with("u", pd.u)
        .with("s", pd.s)
        .with("residual_phase", pd.residual_phase)
        .with("l_vec", l_vec)
        .with("l_spin", l_spin)
        .with("round_trip_residual", round_trip)
        .with("kinematic_velocity_residual", kin);
    let violation = if !(round_trip <= tol) {
        Some(format!("round_trip_residual = {} exceeds {}", num(round_trip), num(tol)))
    } else if !(kin <= tol) {
        Some(format!("kinematic_velocity_residual = {} exceeds {}", num(kin), num(tol)))
    } else {
        None
    };
    Ok(Outcome {
        records: vec![rec],
        format: None,
        violation,
    })
}

/// Box the sample points are drawn from: [-half_width, half_width]^4 for
/// analytic fields, the grid interior (minus a stencil margin) for grids.
fn sampling_box(cfg: &RunConfig, half_width: f64) -> anyhow::Result<([f64; 4], [f64; 4])> {
    match &cfg.field {
        FieldSpec::Waves(_) => Ok(([-half_width; 4], [half_width; 4])),
        FieldSpec::Grid(path) => {
            let g = GridField64::parse(&std::fs::read_to_string(path)?)?;
            let mut lo = [0.0; 4];
            let mut hi = [0.0; 4];
            for k in 0..4 {
                let margin = 2.0 * g.spacing[k] + 2.0 * cfg.h;
                lo[k] = g.origin[k] + margin;
                hi[k] = g.origin[k] + g.spacing[k] * (g.dims[k] - 1) as f64 - margin;
                if !(hi[k] > lo[k]) {
                    bail!("grid axis {k} is too short to hold a derivative stencil");
                }
            }
            Ok((lo, hi))
        }
    }
}

pub fn gordon(config: &Path, points: usize, seed: Option<u64>, h: Option<f64>, half_width: f64) -> anyhow::Result<Outcome> {
    let mut cfg = load_config(config)?;
    if let Some(h) = h {
        if !(h > 0.0) {
            bail!("--h must be positive");
        }
        cfg.h = h;
    }
    let seed = seed.unwrap_or(cfg.seed);
    let field = cfg.build_field()?;
    let (lo, hi) = sampling_box(&cfg, half_width)?;
    let basis: CliffordBasis64 = build_chiral_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<FourVector<f64>> = (0..points)
        .map(|_| std::array::from_fn(|k| lo[k] + (hi[k] - lo[k]) * rng.random::<f64>()))
        .collect();

    let tol = cfg.tolerance;
    let mut records = Vec::new();
    let mut worst: Option<(String, f64, usize)> = None;
    let mut dirac_max = 0.0f64;
    let mut singular = 0usize;
    for (i, x) in xs.iter().enumerate() {
        match all_residuals(field.as_ref(), x, &cfg.background, &basis, cfg.h) {
            Ok(res) => {
                for (eq, v) in &res.entries {
                    records.push(
                        Record::new("residual")
                            .with("point", i)
                            .with("equation", eq.label())
                            .with("group", eq.group())
                            .with("residual", *v)
                            .with("pass", *v <= tol),
                    );
                    if worst.as_ref().is_none_or(|w| *v > w.1 || v.is_nan()) {
                        worst = Some((eq.label().to_string(), *v, i));
                    }
                }
                dirac_max = dirac_max.max(res.get(dirac_hydro::Equation::Dirac).unwrap_or(0.0));
            }
            Err(e) => {
                singular += 1;
                records.push(Record::new("singular_point").with("point", i).with("x", *x).with("error", e.to_string()));
            }
        }
    }
    let probe = equivalence_probe(field.as_ref(), &cfg.background, &xs, tol, DEFAULT_KAPPA, &basis, cfg.h);
    for (i, x) in xs.iter().enumerate() {
        records.push(Record::new("point").with("point", i).with("x", *x));
    }
    records.push(
        Record::new("summary")
            .with("points", points)
            .with("singular_points", singular)
            .with("seed", seed as usize)
            .with("h", cfg.h)
            .with("tolerance", tol)
            .with("max_dirac_residual", dirac_max)
            .with("dirac_flagged", !(dirac_max <= tol))
            .with("probe_consistent", probe.consistent())
            .with("probe_dirac_passes", probe.dirac_passes())
            .with("probe_measured_c", probe.measured_c),
    );
    let violation = worst.filter(|w| !(w.1 <= tol)).map(|(label, v, i)| {
        let mut s = format!("worst residual {label} = {} at point {i} exceeds {}", num(v), num(tol));
        if !(dirac_max <= tol) {
            let _ = write!(s, "; dirac residual {} flagged", num(dirac_max));
        }
        s
    });
    Ok(Outcome {
        records,
        format: Some(cfg.format),
        violation,
    })
}

pub fn guidance(config: &Path, at: &str) -> anyhow::Result<Outcome> {
    let cfg = load_config(config)?;
    let x = parse_numbers::<4>(at, "--at")?;
    let field = cfg.build_field()?;
    let basis: CliffordBasis64 = build_chiral_basis();
    let pt = evaluate_point(field.as_ref(), &x, &cfg.background, &basis, cfg.h)?;
    let g = guidance_at(&pt, &cfg.background)?;
    let p_kin = momentum_from_velocity(&g.kinematic_u, &pt.state.polar.s, &g.forms);
    let sup = |a: &[f64; 4], b: &[f64; 4]| (0..4).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max);
    let du = sup(&g.kinematic_u, &g.guidance_u.u);
    let dp = sup(&g.momentum, &p_kin);
    let rec = Record::new("guidance")
        .with("x", x)
        .with("momentum_lower", pt.connection.p)
        .with("momentum_upper", g.momentum)
        .with("u_bilinear", g.kinematic_u)
        .with("u_inverted", g.guidance_u.u)
        .with("u_inverted_norm", g.guidance_u.norm)
        .with("zeta", g.forms.zeta)
        .with("xs", g.forms.xs)
        .with("y", g.forms.y)
        .with("z", g.forms.z)
        .with("velocity_discrepancy", du)
        .with("momentum_discrepancy", dp)
        .with("tolerance", cfg.tolerance);
    let violation = if !(du <= cfg.tolerance) {
        Some(format!("velocity_discrepancy = {} exceeds {}", num(du), num(cfg.tolerance)))
    } else if !(dp <= cfg.tolerance) {
        Some(format!("momentum_discrepancy = {} exceeds {}", num(dp), num(cfg.tolerance)))
    } else {
        None
    };
    Ok(Outcome {
        records: vec![rec],
        format: Some(cfg.format),
        violation,
    })
}

pub fn read_seeds(path: &Path) -> anyhow::Result<Vec<FourVector<f64>>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read seeds {}", path.display()))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_numbers::<4>(line, &format!("{}:{}", path.display(), n + 1))?);
    }
    if out.is_empty() {
        bail!("no seed points in {}", path.display());
    }
    Ok(out)
}

pub struct TrajectoryArgs {
    pub config: PathBuf,
    pub seeds: PathBuf,
    pub mode: VelocityMode,
    pub steps: usize,
    pub h_tau: Option<f64>,
    pub out: Option<PathBuf>,
    pub compare: bool,
}

pub fn trajectory(args: &TrajectoryArgs) -> anyhow::Result<(String, Outcome)> {
    let cfg = load_config(&args.config)?;
    let seeds = read_seeds(&args.seeds)?;
    let h_tau = args.h_tau.unwrap_or(cfg.h_tau);
    if !(h_tau > 0.0) {
        bail!("--htau must be positive");
    }
    let field = cfg.build_field()?;
    let basis: CliffordBasis64 = build_chiral_basis();
    let mut settings = IntegrationSettings64::new(args.mode, h_tau, args.steps);
    settings.stencil_h = cfg.h;
    settings.compare_modes = args.compare;
    let results = batch_integrate(field.as_ref(), &cfg.background, &basis, &seeds, &settings);

    let mut table = String::from("# seed tau x0 x1 x2 x3 u0 u1 u2 u3\n");
    let mut records = Vec::new();
    let mut worst: Option<(usize, f64)> = None;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(t) => {
                for s in &t.samples {
                    let _ = write!(table, "{i} {}", num(s.tau));
                    for v in s.x.iter().chain(&s.u) {
                        let _ = write!(table, " {}", num(*v));
                    }
                    table.push('\n');
                }
                if let Some(e) = &t.stopped {
                    let _ = writeln!(table, "# seed {i} stopped at tau {}: {e}", num(t.last().tau));
                }
                let mut rec = Record::new("trajectory")
                    .with("seed", i)
                    .with("mode", args.mode.to_string())
                    .with("steps", t.samples.len() - 1)
                    .with("tau_end", t.last().tau)
                    .with("completed", t.completed())
                    .with("max_norm_defect", t.max_norm_defect);
                if let Some(d) = t.mode_discrepancy {
                    rec = rec.with("mode_discrepancy", d);
                }
                rec = rec.with("stopped", t.stopped.as_ref().map(|e| e.to_string()).unwrap_or_default());
                records.push(rec);
                if worst.is_none_or(|w| t.max_norm_defect > w.1) {
                    worst = Some((i, t.max_norm_defect));
                }
            }
            Err(e) => {
                let _ = writeln!(table, "# seed {i} error: {e}");
                records.push(Record::new("trajectory_error").with("seed", i).with("error", e.to_string()));
            }
        }
    }
    let violation = worst
        .filter(|w| !(w.1 <= cfg.tolerance))
        .map(|(i, v)| format!("max |u.u - 1| = {} on seed {i} exceeds {}", num(v), num(cfg.tolerance)));
    let stdout_table = match &args.out {
        Some(p) => {
            std::fs::write(p, &table).with_context(|| format!("cannot write {}", p.display()))?;
            String::new()
        }
        None => table,
    };
    Ok((
        stdout_table,
        Outcome {
            records,
            format: Some(cfg.format),
            violation,
        },
    ))
}

pub fn grid_export(config: &Path, origin: &str, spacing: &str, dims: &str, out: &Path) -> anyhow::Result<Outcome> {
    let cfg = load_config(config)?;
    let origin = parse_numbers::<4>(origin, "--origin")?;
    let spacing = parse_numbers::<4>(spacing, "--spacing")?;
    let d = parse_numbers::<4>(dims, "--dims")?;
    if d.iter().any(|v| v.fract() != 0.0 || *v < 2.0) {
        bail!("--dims: expected four integers >= 2");
    }
    let dims = d.map(|v| v as usize);
    let field = cfg.build_field()?;
    let grid = GridField64::sample(field.as_ref(), origin, spacing, dims)?;
    std::fs::write(out, grid.to_text()).with_context(|| format!("cannot write {}", out.display()))?;
    Ok(Outcome {
        records: vec![Record::new("grid")
            .with("path", out.display().to_string())
            .with("dims", d)
            .with("origin", origin)
            .with("spacing", spacing)],
        format: Some(cfg.format),
        violation: None,
    })
}
