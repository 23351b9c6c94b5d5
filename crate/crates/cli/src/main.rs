//! entangler-lab: run the reproduction suite, figure sweeps, single-channel
//! evaluations, and the two optimality-bound searches from the command line.
//!
//! Exit status: 0 all checks pass, 1 a reproduction check failed (or I/O
//! error), 2 usage/configuration error.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use entangler_core::entanglers::{
    antisymmetric_entangler, apply_optimal_entangler, apply_unot_entangler,
    measurement_entangler_averaged, swap_post_select, unot_ideal_target,
};
use entangler_core::experiments::{
    entropy_curves, measurement_strategy_bound, nosignaling_bound_search, ppt_curves,
    reproduce_all, Curve, ExperimentReport,
};
use entangler_core::metrics::{
    bures_distance, fidelity_pure, ppt_min_eigenvalue, von_neumann_entropy, MetricValue,
};
use entangler_core::states::{
    antisymmetrized_ideal, bell_states, ket_from_bloch, symmetrized_ideal, BlochAngles,
    DensityMatrix, PureState,
};

const USAGE: &str = "\
entangler-lab <reproduce|sweep|channel|bound> [flags]

commands:
  reproduce                 run every reproduction check and emit a report
  sweep <fig1|fig2|fig3>    emit one figure curve as CSV
  channel <name>            evaluate one channel on one input state
                            (names: optimal, unot, swap, measurement, antisym)
  bound <measurement|nosignaling>
                            run one of the two bound searches

flags:
  --seed N          master seed for all sampled checks      (default 0)
  --quad-theta N    polar quadrature nodes, N >= 2          (default 64)
  --quad-phi N      azimuthal quadrature nodes, N >= 2      (default 64)
  --grid-points N   figure grid points, N >= 2              (default 201)
  --format F        reproduce output: table | csv | json    (default table)
  --out PATH        write the output to PATH instead of stdout
  --theta X         channel input polar angle, radians in [0, pi]   (default 0)
  --phi X           channel input azimuth, radians in [0, 2*pi)     (default 0)
";

#[derive(Debug, Clone, PartialEq)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
struct RunConfig {
    seed: u64,
    quad_theta: usize,
    quad_phi: usize,
    grid_points: usize,
    format: Format,
    out: Option<String>,
    theta: f64,
    phi: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            quad_theta: 64,
            quad_phi: 64,
            grid_points: 201,
            format: Format::Table,
            out: None,
            theta: 0.0,
            phi: 0.0,
        }
    }
}

struct UsageError(String);

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, UsageError> {
    if args.is_empty() {
        return Err(UsageError("missing command".into()));
    }
    if args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        println!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let command = args[0].as_str();
    let mut positional = Vec::new();
    let mut config = RunConfig::default();

    let mut i = 1;
    while i < args.len() {
        let arg = args[i].as_str();
        let mut take_value = || -> Result<&str, UsageError> {
            i += 1;
            args.get(i)
                .map(|s| s.as_str())
                .ok_or_else(|| UsageError(format!("flag {arg} needs a value")))
        };
        match arg {
            "--seed" => config.seed = parse(take_value()?, "seed")?,
            "--quad-theta" => config.quad_theta = parse(take_value()?, "quad-theta")?,
            "--quad-phi" => config.quad_phi = parse(take_value()?, "quad-phi")?,
            "--grid-points" => config.grid_points = parse(take_value()?, "grid-points")?,
            "--theta" => config.theta = parse(take_value()?, "theta")?,
            "--phi" => config.phi = parse(take_value()?, "phi")?,
            "--out" => config.out = Some(take_value()?.to_string()),
            "--format" => {
                config.format = match take_value()? {
                    "table" => Format::Table,
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(UsageError(format!("unknown format `{other}`"))),
                }
            }
            flag if flag.starts_with("--") => {
                return Err(UsageError(format!("unknown flag `{flag}`")));
            }
            value => positional.push(value.to_string()),
        }
        i += 1;
    }

    if config.quad_theta < 2 || config.quad_phi < 2 {
        return Err(UsageError(format!(
            "quadrature orders must be at least 2 (got {} x {})",
            config.quad_theta, config.quad_phi
        )));
    }
    if config.grid_points < 2 {
        return Err(UsageError(format!(
            "grid must have at least 2 points (got {})",
            config.grid_points
        )));
    }

    match command {
        "reproduce" => {
            expect_no_positionals(&positional)?;
            cmd_reproduce(&config)
        }
        "sweep" => {
            let curve = one_positional(&positional, "sweep needs a curve name (fig1|fig2|fig3)")?;
            cmd_sweep(&config, &curve)
        }
        "channel" => {
            let name = one_positional(
                &positional,
                "channel needs a name (optimal|unot|swap|measurement|antisym)",
            )?;
            cmd_channel(&config, &name)
        }
        "bound" => {
            let which = one_positional(
                &positional,
                "bound needs a selector (measurement|nosignaling)",
            )?;
            cmd_bound(&config, &which)
        }
        other => Err(UsageError(format!("unknown command `{other}`"))),
    }
}

fn parse<T: std::str::FromStr>(value: &str, flag: &str) -> Result<T, UsageError> {
    value
        .parse()
        .map_err(|_| UsageError(format!("cannot parse `{value}` for --{flag}")))
}

fn expect_no_positionals(positional: &[String]) -> Result<(), UsageError> {
    if let Some(extra) = positional.first() {
        return Err(UsageError(format!("unexpected argument `{extra}`")));
    }
    Ok(())
}

fn one_positional(positional: &[String], msg: &str) -> Result<String, UsageError> {
    match positional {
        [one] => Ok(one.clone()),
        _ => Err(UsageError(msg.into())),
    }
}

fn input_angles(config: &RunConfig) -> Result<BlochAngles, UsageError> {
    BlochAngles::new(config.theta, config.phi)
        .map_err(|e| UsageError(format!("invalid input angles: {e}")))
}

/// 12 significant digits, locale-independent.
fn sig12(v: f64) -> String {
    format!("{:.11e}", v)
}

fn emit(config: &RunConfig, payload: &str) -> Result<ExitCode, ExitCode> {
    match &config.out {
        None => {
            print!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
        Some(path) => match std::fs::write(path, payload) {
            Ok(()) => Ok(ExitCode::SUCCESS),
            Err(e) => {
                eprintln!("error: cannot write `{path}`: {e}");
                Err(ExitCode::FAILURE)
            }
        },
    }
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

fn cmd_reproduce(config: &RunConfig) -> Result<ExitCode, UsageError> {
    let started = Instant::now();
    let report = reproduce_all(
        config.seed,
        config.quad_theta,
        config.quad_phi,
        config.grid_points,
    )
    .map_err(|e| UsageError(format!("reproduction failed to run: {e}")))?;
    let elapsed = started.elapsed();

    let payload = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report_csv(&report),
        Format::Table => report_table(&report, elapsed.as_secs_f64()),
    };
    let all_pass = report.all_pass();
    match emit(config, &payload) {
        Ok(_) => Ok(if all_pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }),
        Err(code) => Ok(code),
    }
}

fn report_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("name,computed,expected,tolerance,pass\n");
    for sc in &report.scalars {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            sc.name,
            sig12(sc.value),
            sig12(sc.expected),
            sig12(sc.tolerance),
            sc.pass
        );
    }
    s
}

fn report_table(report: &ExperimentReport, elapsed_s: f64) -> String {
    let name_width = report
        .scalars
        .iter()
        .map(|s| s.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut s = format!(
        "reproduction report  (seed {}, quadrature {}x{}, grid {})\n\n",
        report.metadata.seed,
        report.metadata.quad_theta,
        report.metadata.quad_phi,
        report.metadata.grid_points
    );
    let _ = writeln!(
        s,
        "{:<name_width$}  {:>18}  {:>18}  {:>9}  status",
        "name", "computed", "expected", "tol"
    );
    for sc in &report.scalars {
        let _ = writeln!(
            s,
            "{:<name_width$}  {:>18.12}  {:>18.12}  {:>9.1e}  {}",
            sc.name,
            sc.value,
            sc.expected,
            sc.tolerance,
            if sc.pass { "PASS" } else { "FAIL" }
        );
    }
    s.push('\n');
    for curve in &report.curves {
        let _ = writeln!(
            s,
            "curve {}: {} points over {}, series [{}]",
            curve.name,
            curve.grid.len(),
            curve.parameter,
            curve
                .series
                .iter()
                .map(|ser| ser.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    s.push('\n');
    let annotated: Vec<_> = report
        .scalars
        .iter()
        .filter(|sc| !sc.note.is_empty())
        .collect();
    if !annotated.is_empty() {
        s.push_str("annotations:\n");
        for sc in annotated {
            let _ = writeln!(s, "  {}: {}", sc.name, sc.note);
        }
        s.push('\n');
    }
    let passed = report.scalars.iter().filter(|sc| sc.pass).count();
    let _ = writeln!(
        s,
        "runtime {:.2} s; RESULT: {} ({passed}/{} checks)",
        elapsed_s,
        if report.all_pass() { "PASS" } else { "FAIL" },
        report.scalars.len()
    );
    s
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(config: &RunConfig, curve_name: &str) -> Result<ExitCode, UsageError> {
    let curve: Curve = match curve_name {
        "fig1" => {
            entropy_curves(config.grid_points)
                .map_err(|e| UsageError(e.to_string()))?
                .0
        }
        "fig2" => {
            entropy_curves(config.grid_points)
                .map_err(|e| UsageError(e.to_string()))?
                .1
        }
        "fig3" => ppt_curves(config.grid_points).map_err(|e| UsageError(e.to_string()))?,
        other => return Err(UsageError(format!("unknown curve `{other}`"))),
    };
    let mut s = String::new();
    let header: Vec<&str> = std::iter::once(curve.parameter.as_str())
        .chain(curve.series.iter().map(|ser| ser.name.as_str()))
        .collect();
    let _ = writeln!(s, "{}", header.join(","));
    for (i, &x) in curve.grid.iter().enumerate() {
        let mut row = vec![sig12(x)];
        for series in &curve.series {
            row.push(sig12(series.values[i]));
        }
        let _ = writeln!(s, "{}", row.join(","));
    }
    Ok(emit(config, &s).unwrap_or_else(|code| code))
}

// ---------------------------------------------------------------------------
// channel
// ---------------------------------------------------------------------------

fn cmd_channel(config: &RunConfig, name: &str) -> Result<ExitCode, UsageError> {
    let angles = input_angles(config)?;
    let psi = ket_from_bloch(angles);
    let zero = PureState::qubit_zero();

    let mut s = format!(
        "channel {name}  (input theta {:.6}, phi {:.6})\n\n",
        config.theta, config.phi
    );

    let (rho, target): (DensityMatrix, Option<PureState>) = match name {
        "optimal" => {
            let rho = apply_optimal_entangler(&psi).map_err(|e| UsageError(e.to_string()))?;
            let target = symmetrized_ideal(&psi, &zero).map_err(|e| UsageError(e.to_string()))?;
            (rho, Some(target))
        }
        "unot" => {
            let (ab, c, _) = apply_unot_entangler(&psi).map_err(|e| UsageError(e.to_string()))?;
            let target = unot_ideal_target(&psi).map_err(|e| UsageError(e.to_string()))?;
            let _ = writeln!(
                s,
                "complement-qubit output diag: ({:.6}, {:.6})\n",
                c.matrix().get(0, 0).re,
                c.matrix().get(1, 1).re
            );
            (ab, Some(target))
        }
        "swap" => {
            let (sym, anti) =
                swap_post_select(&psi, &zero).map_err(|e| UsageError(e.to_string()))?;
            let _ = writeln!(
                s,
                "post-selection on the reference |0>: symmetric branch p = {:.12}, antisymmetric p = {:.12}\n",
                sym.probability, anti.probability
            );
            let state = sym
                .state
                .ok_or_else(|| UsageError("symmetric branch vanished".into()))?;
            let target = symmetrized_ideal(&psi, &zero).map_err(|e| UsageError(e.to_string()))?;
            (state.density(), Some(target))
        }
        "measurement" => {
            let rho = measurement_entangler_averaged(&psi, config.quad_theta, config.quad_phi)
                .map_err(|e| UsageError(e.to_string()))?;
            let target = symmetrized_ideal(&psi, &zero).map_err(|e| UsageError(e.to_string()))?;
            (rho, Some(target))
        }
        "antisym" | "antisymmetric" => {
            let rho = antisymmetric_entangler(&psi).map_err(|e| UsageError(e.to_string()))?;
            // the target is the antisymmetric Bell state itself; for inputs
            // parallel to the reference the two-sided ideal degenerates
            let target = antisymmetrized_ideal(&psi, &zero)
                .ok()
                .or_else(|| Some(bell_states().1));
            (rho, target)
        }
        other => return Err(UsageError(format!("unknown channel `{other}`"))),
    };

    s.push_str("output density matrix (re | im):\n");
    s.push_str(&matrix_block(&rho));
    s.push('\n');

    let input_tag = format!("{name} on theta {:.6}, phi {:.6}", config.theta, config.phi);
    let mut metrics: Vec<MetricValue> = Vec::new();
    if let Some(target) = target {
        let f = fidelity_pure(&rho, &target).map_err(|e| UsageError(e.to_string()))?;
        metrics.push(MetricValue::new("fidelity to ideal", f, &input_tag));
        let d = bures_distance(&rho, &target.density()).map_err(|e| UsageError(e.to_string()))?;
        metrics.push(MetricValue::new("bures distance", d, &input_tag));
    }
    let entropy = von_neumann_entropy(&rho).map_err(|e| UsageError(e.to_string()))?;
    metrics.push(MetricValue::new("von neumann entropy", entropy, &input_tag));
    let ppt = ppt_min_eigenvalue(&rho).map_err(|e| UsageError(e.to_string()))?;
    metrics.push(MetricValue::new("ppt min eigenvalue", ppt, &input_tag));
    for m in &metrics {
        let _ = writeln!(s, "{:<19} {:.12}", m.name, m.value);
    }

    Ok(emit(config, &s).unwrap_or_else(|code| code))
}

fn matrix_block(rho: &DensityMatrix) -> String {
    let n = rho.dim();
    let mut s = String::new();
    for i in 0..n {
        let mut re_row = Vec::with_capacity(n);
        let mut im_row = Vec::with_capacity(n);
        for j in 0..n {
            let e = rho.matrix().get(i, j);
            re_row.push(format!("{:>10.6}", e.re));
            im_row.push(format!("{:>10.6}", e.im));
        }
        let _ = writeln!(s, "  [{}]   [{}]", re_row.join(" "), im_row.join(" "));
    }
    s
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

fn cmd_bound(config: &RunConfig, which: &str) -> Result<ExitCode, UsageError> {
    let mut s = String::new();
    match which {
        "measurement" => {
            let b = measurement_strategy_bound();
            let _ = writeln!(s, "measurement-strategy upper bound");
            let _ = writeln!(
                s,
                "  f0 max {:.9} at theta_prime {:.6}, theta_double {:.6}",
                b.f0.value, b.f0.theta_prime, b.f0.theta_double
            );
            let _ = writeln!(
                s,
                "  f1 max {:.9} at theta_prime {:.6}, theta_double {:.6}",
                b.f1.value, b.f1.theta_prime, b.f1.theta_double
            );
            let _ = writeln!(
                s,
                "  bound f0+f1 = {:.9}  (4 ln 2 - 2 = {:.9})",
                b.bound,
                4.0 * std::f64::consts::LN_2 - 2.0
            );
        }
        "nosignaling" => {
            let r = nosignaling_bound_search(1001).map_err(|e| UsageError(e.to_string()))?;
            let _ = writeln!(s, "no-signaling fidelity bound");
            let _ = writeln!(s, "  F*    = {:.9}", r.f_star);
            let _ = writeln!(s, "  t*    = {:.9}", r.t_star);
            let _ = writeln!(s, "  t_xy* = {:.9}", r.t_xy_star);
            let _ = writeln!(
                s,
                "  eta*  = {:.9}  (feasible-interval midpoint)",
                r.eta_star
            );
            let _ = writeln!(
                s,
                "  active constraint (1 - t - 2 sqrt(t^2 + t_xy^2))/4 = {:.3e}",
                r.active_constraint
            );
            let _ = writeln!(
                s,
                "  min eigenvalue of the explicit output matrix = {:.3e}",
                r.psd_min_eigenvalue
            );
        }
        other => return Err(UsageError(format!("unknown bound selector `{other}`"))),
    }
    Ok(emit(config, &s).unwrap_or_else(|code| code))
}
