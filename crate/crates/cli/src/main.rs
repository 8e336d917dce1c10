//! `dilog` — evaluate the enhanced Rogers dilogarithm, lift paths on the
//! Z²-cover, compute line-bundle holonomy and run the verification suites.
//!
//! Exit codes: 0 success, 2 parse error, 3 verification failure, 4 domain
//! error.

use clap::{Parser, Subcommand, ValueEnum};
use dilog_core::io::{
    fmt_complex, fmt_cover_point, fmt_f64, fmt_holonomy, fmt_sample_row, fmt_suite_report,
    fmt_tate, parse_cover_point, parse_path_spec, SAMPLE_CSV_HEADER,
};
use dilog_core::{
    deck_act, eval_l_closed_with, eval_l_path, lift_path, lift_principal, parallel_transport,
    phi_with, principal_log, run_suite_detailed, transition_factor, BasePoint, Complex, CoverPoint,
    DeckElement, Error, Li2Config, QuadratureConfig, SpinForm, SuiteKind, SuiteTolerances,
};
use std::io::Read;

/// Agreement threshold between the two L evaluators.
const EVAL_AGREEMENT_TOL: f64 = 1e-9;

const EXIT_OK: i32 = 0;
const EXIT_PARSE: i32 = 2;
const EXIT_VERIFY: i32 = 3;
const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "dilog", version, about = "Enhanced Rogers dilogarithm toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tail tolerance of the Li2 kernel series.
    #[arg(long, global = true, default_value_t = 1e-16)]
    li2_tol: f64,

    /// Absolute tolerance of adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    quad_tol: f64,

    /// Spin structure bits "a,b" of the quadratic form n1*n2 + a*n1 + b*n2.
    #[arg(long, global = true, default_value = "0,0", value_parser = parse_spin)]
    spin: SpinForm,

    /// RNG seed for verification suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Sample count override for verification suites.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L and phi at a cover point given as JSON ("-" reads stdin).
    Eval { point: String },
    /// Lift a base path; prints endpoints and deck shift.
    Lift {
        /// Path spec JSON ("-" reads stdin).
        path: String,
        /// Start cover point JSON; defaults to a principal-branch lift of path(0).
        #[arg(long)]
        start: Option<String>,
        /// Initial discretization per smooth piece.
        #[arg(long, default_value_t = 64)]
        steps: usize,
    },
    /// Holonomy of the line bundle around a closed loop.
    Holonomy {
        /// Loop spec JSON ("-" reads stdin).
        r#loop: String,
        /// Threshold on |factor - 1| for the exit code.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run a verification suite (or "all").
    Verify { suite: String },
    /// Evaluate L and phi on a grid, as CSV for plotting.
    Sample {
        /// Grid "re0,re1,nre,im0,im1,nim".
        #[arg(long)]
        grid: String,
        /// Deck element "n1,n2" applied to every grid point.
        #[arg(long, default_value = "0,0")]
        deck: String,
    },
}

fn parse_spin(s: &str) -> Result<SpinForm, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated bits, e.g. 0,1".into());
    }
    let bit = |p: &str| -> Result<bool, String> {
        match p.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(format!("spin bit must be 0 or 1, got '{other}'")),
        }
    };
    Ok(SpinForm::new(bit(parts[0])?, bit(parts[1])?))
}

fn parse_deck(s: &str) -> Result<DeckElement, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("deck must be 'n1,n2', got '{s}'")));
    }
    let n1 = parts[0]
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::Parse(format!("deck n1: {e}")))?;
    let n2 = parts[1]
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::Parse(format!("deck n2: {e}")))?;
    Ok(DeckElement::new(n1, n2))
}

struct Grid {
    re0: f64,
    re1: f64,
    nre: usize,
    im0: f64,
    im1: f64,
    nim: usize,
}

fn parse_grid(s: &str) -> Result<Grid, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(Error::Parse(format!(
            "grid must be 're0,re1,nre,im0,im1,nim', got '{s}'"
        )));
    }
    let f = |p: &str| -> Result<f64, Error> {
        p.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("grid bound '{p}': {e}")))
    };
    let n = |p: &str| -> Result<usize, Error> {
        p.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("grid count '{p}': {e}")))
    };
    Ok(Grid {
        re0: f(parts[0])?,
        re1: f(parts[1])?,
        nre: n(parts[2])?,
        im0: f(parts[3])?,
        im1: f(parts[4])?,
        nim: n(parts[5])?,
    })
}

/// Fetch an argument's payload, reading stdin when it is "-".
fn read_payload(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        Ok(arg.to_string())
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let li2_cfg = Li2Config {
        tail_tol: cli.li2_tol,
        ..Li2Config::default()
    };
    let quad = QuadratureConfig {
        abs_tol: cli.quad_tol,
        ..QuadratureConfig::default()
    };
    match &cli.command {
        Command::Eval { point } => cmd_eval(cli, &li2_cfg, &quad, point),
        Command::Lift { path, start, steps } => cmd_lift(cli, path, start.as_deref(), *steps),
        Command::Holonomy { r#loop, tol } => cmd_holonomy(cli, &quad, r#loop, *tol),
        Command::Verify { suite } => cmd_verify(cli, &quad, suite),
        Command::Sample { grid, deck } => cmd_sample(&li2_cfg, grid, deck),
    }
}

fn cmd_eval(
    cli: &Cli,
    li2_cfg: &Li2Config,
    quad: &QuadratureConfig,
    point: &str,
) -> Result<i32, Error> {
    let p = parse_cover_point(&read_payload(point)?)?;
    let closed = eval_l_closed_with(&p, li2_cfg)?;
    let path = eval_l_path(&p, quad)?;
    let defect = closed.defect(&path);
    let phi = phi_with(&p, li2_cfg)?;
    let deck = dilog_core::deck_decompose(&p).ok().map(|(n, _)| n);
    match cli.format {
        Format::Json => {
            let deck_field = deck
                .map(|n| format!(",\"deck\":[{},{}]", n.n1, n.n2))
                .unwrap_or_default();
            println!(
                "{{\"closed\":{},\"path\":{},\"defect\":{},\"phi\":{}{}}}",
                fmt_tate(&closed),
                fmt_tate(&path),
                fmt_f64(defect),
                fmt_complex(phi),
                deck_field
            );
        }
        Format::Csv => {
            println!("closed_re,closed_im,path_re,path_im,defect,phi_re,phi_im");
            println!(
                "{},{},{},{},{},{},{}",
                fmt_f64(closed.rep().re),
                fmt_f64(closed.rep().im),
                fmt_f64(path.rep().re),
                fmt_f64(path.rep().im),
                fmt_f64(defect),
                fmt_f64(phi.re),
                fmt_f64(phi.im)
            );
        }
    }
    Ok(if defect <= EVAL_AGREEMENT_TOL {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_lift(cli: &Cli, path: &str, start: Option<&str>, steps: usize) -> Result<i32, Error> {
    let spec = parse_path_spec(&read_payload(path)?)?;
    let start = match start {
        Some(text) => parse_cover_point(&read_payload(text)?)?,
        None => lift_principal(&BasePoint::new(spec.at(0.0))?)?,
    };
    let lifted = lift_path(&spec, &start, steps)?;
    match cli.format {
        Format::Json => {
            println!(
                "{{\"start\":{},\"end\":{},\"deck\":[{},{}],\"samples\":{}}}",
                fmt_cover_point(lifted.start()),
                fmt_cover_point(lifted.end()),
                lifted.deck_shift().n1,
                lifted.deck_shift().n2,
                lifted.samples().len()
            );
        }
        Format::Csv => {
            println!("t,u1_re,u1_im,u2_re,u2_im");
            for (t, p) in lifted.samples() {
                println!(
                    "{},{},{},{},{}",
                    fmt_f64(*t),
                    fmt_f64(p.u1().re),
                    fmt_f64(p.u1().im),
                    fmt_f64(p.u2().re),
                    fmt_f64(p.u2().im)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_holonomy(
    cli: &Cli,
    quad: &QuadratureConfig,
    loop_arg: &str,
    tol: f64,
) -> Result<i32, Error> {
    let spec = parse_path_spec(&read_payload(loop_arg)?)?;
    if !spec.is_closed() {
        return Err(Error::Domain("loop specification is not closed".into()));
    }
    spec.check_punctures(dilog_core::tol::EXCL_MARGIN)?;
    // Any branch pair over the base point will do: holonomy is independent of
    // the starting lift.
    let z0 = spec.at(0.0);
    let start = CoverPoint::new(
        principal_log(z0)?,
        principal_log(Complex::new(1.0, 0.0) - z0)?,
    )?;
    let lifted = lift_path(&spec, &start, 64)?;
    let transport = parallel_transport(&lifted, quad)?;
    let factor = transport.factor * transition_factor(lifted.deck_shift(), lifted.end(), cli.spin);
    let deck = lifted.deck_shift();
    match cli.format {
        Format::Json => println!(
            "{}",
            fmt_holonomy(factor, (deck.n1, deck.n2), transport.err_estimate)
        ),
        Format::Csv => {
            println!("factor_re,factor_im,n1,n2,err");
            println!(
                "{},{},{},{},{}",
                fmt_f64(factor.re),
                fmt_f64(factor.im),
                deck.n1,
                deck.n2,
                fmt_f64(transport.err_estimate)
            );
        }
    }
    let trivial = (factor - Complex::new(1.0, 0.0)).norm() <= tol;
    Ok(if trivial { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_verify(cli: &Cli, quad: &QuadratureConfig, suite: &str) -> Result<i32, Error> {
    let tols = SuiteTolerances {
        quad: *quad,
        ..SuiteTolerances::default()
    };
    let kinds: Vec<SuiteKind> = if suite == "all" {
        SuiteKind::ALL.to_vec()
    } else {
        vec![suite.parse::<SuiteKind>().map_err(|_| {
            Error::Parse(format!(
                "unknown suite '{suite}' (expected a suite name or 'all')"
            ))
        })?]
    };
    let mut all_pass = true;
    let mut csv_started = false;
    for kind in kinds {
        let samples = cli.samples.unwrap_or_else(|| kind.default_samples());
        let (report, rows) = run_suite_detailed(kind, samples, cli.seed, &tols);
        all_pass &= report.pass;
        match cli.format {
            Format::Json => println!("{}", fmt_suite_report(&report)),
            Format::Csv => {
                if !csv_started {
                    println!("{SAMPLE_CSV_HEADER}");
                    csv_started = true;
                }
                for row in &rows {
                    println!("{}", fmt_sample_row(row));
                }
            }
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

// Sample output is CSV regardless of --format: it exists for plotting.
fn cmd_sample(li2_cfg: &Li2Config, grid: &str, deck: &str) -> Result<i32, Error> {
    let grid = parse_grid(grid)?;
    let deck = parse_deck(deck)?;
    println!("z_re,z_im,n1,n2,L_re,L_im,phi_re,phi_im");
    for iy in 0..grid.nim {
        let im = if grid.nim == 1 {
            grid.im0
        } else {
            grid.im0 + (grid.im1 - grid.im0) * iy as f64 / (grid.nim - 1) as f64
        };
        for ix in 0..grid.nre {
            let re = if grid.nre == 1 {
                grid.re0
            } else {
                grid.re0 + (grid.re1 - grid.re0) * ix as f64 / (grid.nre - 1) as f64
            };
            let z = Complex::new(re, im);
            let p = deck_act(deck, &lift_principal(&BasePoint::new(z)?)?);
            let l = eval_l_closed_with(&p, li2_cfg)?;
            let phi = phi_with(&p, li2_cfg)?;
            println!(
                "{},{},{},{},{},{},{},{}",
                fmt_f64(z.re),
                fmt_f64(z.im),
                deck.n1,
                deck.n2,
                fmt_f64(l.rep().re),
                fmt_f64(l.rep().im),
                fmt_f64(phi.re),
                fmt_f64(phi.im)
            );
        }
    }
    Ok(EXIT_OK)
}
