use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use setmink::scenario::{run, Outcome, Scenario};
use setmink::subpaving::PointLocator;
use setmink::{BoxClass, IntervalBox};

/// Set computations with interval separators: pavings, Minkowski sums and
/// differences, sonar simulation and pose localization.
#[derive(Parser)]
#[command(name = "setmink", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        opts: Overrides,
    },
    /// Minkowski sum or difference of two shapes, e.g. `diff "disk 0 0 5" "rect 0 0 2 1"`.
    /// `diff B A` computes B ⊖ A; `sum A B` computes A ⊕ B.
    Minkowski {
        op: MinkOp,
        first: String,
        second: String,
        #[command(flatten)]
        opts: Overrides,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MinkOp {
    Sum,
    Diff,
}

#[derive(Args, Default)]
struct Overrides {
    /// Bisection stop width.
    #[arg(long)]
    eps: Option<f64>,
    /// Projection resolution for Minkowski and localization separators.
    #[arg(long = "eps-a")]
    eps_a: Option<f64>,
    /// Search domain, e.g. "[-6,6] [-6,6]".
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Subpaving output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG output file.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for the sampling self-check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random points checked against the separator after paving.
    #[arg(long, default_value_t = 0)]
    check: usize,
}

enum Failure {
    Input(String),
    Empty,
    Check(String),
}

impl Overrides {
    fn apply(&self, sc: &mut Scenario) -> Result<(), String> {
        if let Some(e) = self.eps {
            if !(e > 0.0 && e.is_finite()) {
                return Err(format!("--eps must be positive, got {e}"));
            }
            sc.eps = e;
        }
        if let Some(e) = self.eps_a {
            if !(e > 0.0 && e.is_finite()) {
                return Err(format!("--eps-a must be positive, got {e}"));
            }
            sc.eps_a = Some(e);
        }
        if let Some(d) = &self.domain {
            let b: IntervalBox = d.parse().map_err(|e| format!("--domain: {e}"))?;
            if b.dim() != 2 || b.is_empty() || !b.is_bounded() {
                return Err("--domain must be a bounded 2-D box".into());
            }
            sc.domain = Some(b);
        }
        if let Some(t) = self.threads {
            if t == 0 {
                return Err("--threads must be at least 1".into());
            }
            sc.threads = t;
        }
        if self.out.is_some() {
            sc.out = self.out.clone();
        }
        if self.svg.is_some() {
            sc.svg = self.svg.clone();
        }
        Ok(())
    }
}

fn self_check(out: &Outcome, n: usize, seed: u64) -> Result<(), String> {
    let (Some(sp), Some(sep)) = (&out.paving, &out.separator) else {
        return Ok(());
    };
    let loc = PointLocator::new(sp);
    let d = sp.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..n {
        let p: Vec<f64> = d.iter().map(|c| rng.gen_range(c.lo()..=c.hi())).collect();
        let pt = IntervalBox::point(&p);
        for class in loc.classify(&p) {
            let wrong = match class {
                BoxClass::Inside => sep.outer(&pt).is_empty(),
                BoxClass::Outside => sep.inner(&pt).is_empty(),
                BoxClass::Boundary => false,
            };
            bad += usize::from(wrong);
        }
    }
    if bad > 0 {
        return Err(format!("self-check: {bad} of {n} samples contradict the separator"));
    }
    println!("self-check: {n} samples consistent");
    Ok(())
}

fn report(sc: &Scenario, out: &Outcome, secs: f64) {
    if let Some(r) = &out.range {
        if r.no_echo {
            println!("range: no echo up to {}", r.range.hi());
        } else {
            println!("range: {} (width {:.6})", r.range, r.range.width());
        }
    }
    if let Some(sp) = &out.paving {
        let s = sp.stats();
        println!(
            "boxes: {} (inside {}, outside {}, boundary {})",
            s.total(),
            s.inside,
            s.outside,
            s.boundary
        );
        println!(
            "area: inside {:.6}, outside {:.6}, boundary {:.6}",
            s.inside_area, s.outside_area, s.boundary_area
        );
    }
    for m in &out.measurements {
        println!(
            "measurement: alpha {:.6} gamma {:.6} range {} d_max {}",
            m.alpha, m.gamma, m.d_range, m.d_max
        );
    }
    println!("eps: {}", sc.eps);
    println!("wall time: {secs:.3} s");
}

fn artifacts(sc: &Scenario, out: &Outcome) -> Result<(), String> {
    let write = |path: &Path, text: String| {
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
    };
    if let Some(path) = &sc.out {
        if let Some(sp) = &out.paving {
            write(path, sp.to_text())?;
        } else if let Some(r) = &out.range {
            let tag = if r.no_echo { " no-echo" } else { "" };
            write(path, format!("{} {}{tag}\n", r.range.lo(), r.range.hi()))?;
        }
    }
    if let (Some(path), Some(sp)) = (&sc.svg, &out.paving) {
        write(path, setmink::svg::render(sp, &out.markers))?;
    }
    Ok(())
}

fn execute(mut sc: Scenario, base: &Path, opts: &Overrides) -> Result<(), Failure> {
    opts.apply(&mut sc).map_err(Failure::Input)?;
    let t = Instant::now();
    let out = run(&sc, base).map_err(|e| Failure::Input(e.to_string()))?;
    report(&sc, &out, t.elapsed().as_secs_f64());
    if opts.check > 0 {
        self_check(&out, opts.check, opts.seed).map_err(Failure::Check)?;
    }
    artifacts(&sc, &out).map_err(Failure::Input)?;
    if sc.expect_nonempty && out.is_empty() {
        return Err(Failure::Empty);
    }
    Ok(())
}

fn minkowski_scenario(op: MinkOp, first: &str, second: &str) -> String {
    let cmd = match op {
        MinkOp::Sum => "minkowski-sum",
        MinkOp::Diff => "minkowski-diff",
    };
    format!("let first = {first}\nlet second = {second}\n{cmd} first second\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Run { scenario, opts } => match std::fs::read_to_string(scenario) {
            Err(e) => Err(Failure::Input(format!("{}: {e}", scenario.display()))),
            Ok(text) => match Scenario::parse(&text) {
                Err(e) => Err(Failure::Input(format!("{}: {e}", scenario.display()))),
                Ok(sc) => {
                    let base = scenario.parent().unwrap_or(Path::new("."));
                    execute(sc, base, opts)
                }
            },
        },
        Cmd::Minkowski { op, first, second, opts } => {
            // The domain is mandatory in scenarios; a flag supplies it here.
            let text = minkowski_scenario(*op, first, second);
            let text = match &opts.domain {
                Some(d) => format!("domain {d}\n{text}"),
                None => text,
            };
            match Scenario::parse(&text) {
                Err(e) => Err(Failure::Input(e.to_string())),
                Ok(sc) => execute(sc, Path::new("."), opts),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Empty) => {
            eprintln!("error: result is empty but the scenario expects a nonempty set");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
