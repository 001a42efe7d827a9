//! Command-line surface for the jet conformal Minkowski geometry engine.
//!
//! Subcommands: `eval`, `validate`, `scan`, `extremal`, `diag`.
//! Exit codes: 0 ok, 1 validation breach, 2 config error, 3 domain error.

mod commands;
mod config;
mod output;

use clap::{value_parser, Arg, ArgAction, Command};
use jetfinsler::error::Error;
use std::process::ExitCode;

fn shared_field_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("config")
            .long("config")
            .value_name("PATH")
            .help("Config file (flat key=value lines; inline flags override)"),
    )
    .arg(
        Arg::new("sigma.kind")
            .long("sigma.kind")
            .value_name("KIND")
            .help("constant | linear | quadratic | polynomial"),
    )
    .arg(
        Arg::new("sigma.coeffs")
            .long("sigma.coeffs")
            .value_name("REALS")
            .help("Comma-separated coefficients for the chosen kind"),
    )
    .arg(
        Arg::new("sigma.terms")
            .long("sigma.terms")
            .value_name("TERMS")
            .help("Polynomial monomials e1.e2.e3.e4:coeff, comma-separated"),
    )
    .arg(
        Arg::new("h.kind")
            .long("h.kind")
            .value_name("KIND")
            .help("constant | power | exponential"),
    )
    .arg(
        Arg::new("h.params")
            .long("h.params")
            .value_name("REAL")
            .help("h11 parameter (h0 / k / lambda)"),
    )
    .arg(
        Arg::new("K")
            .long("K")
            .value_name("REAL")
            .value_parser(value_parser!(f64))
            .default_value("1")
            .help("Einstein constant"),
    )
    .arg(
        Arg::new("json")
            .long("json")
            .value_name("PATH")
            .help("Write JSON output to PATH (atomic) instead of stdout"),
    )
    .arg(
        Arg::new("csv")
            .long("csv")
            .value_name("PATH")
            .help("Write CSV output to PATH (atomic) instead of stdout"),
    )
}

fn point_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("t")
            .long("t")
            .value_name("REAL")
            .value_parser(value_parser!(f64))
            .default_value("1"),
    )
    .arg(
        Arg::new("x")
            .long("x")
            .value_name("X1,X2,X3,X4")
            .default_value("0,0,0,0"),
    )
    .arg(
        Arg::new("y")
            .long("y")
            .value_name("Y1,Y2,Y3,Y4")
            .default_value("1,1,1,1"),
    )
}

fn cli() -> Command {
    let eval = point_args(shared_field_args(Command::new("eval").about(
        "Evaluate every geometric object at one jet point (JSON)",
    )));
    let validate = shared_field_args(
        Command::new("validate")
            .about("Cross-validate closed forms against the generic engine (JSON report)")
            .arg(
                Arg::new("samples")
                    .long("samples")
                    .value_name("N")
                    .value_parser(value_parser!(usize))
                    .default_value("100"),
            )
            .arg(
                Arg::new("seed")
                    .long("seed")
                    .value_name("U64")
                    .value_parser(value_parser!(u64))
                    .default_value("0"),
            )
            .arg(
                Arg::new("tolerance")
                    .long("tolerance")
                    .value_name("REAL")
                    .value_parser(value_parser!(f64))
                    .default_value("1e-6"),
            ),
    );
    let scan = shared_field_args(
        Command::new("scan")
            .about("Scalar curvature and Ricci eigen-summaries over an x-grid (CSV)")
            .arg(
                Arg::new("grid")
                    .long("grid")
                    .value_name("xI=START:STOP:COUNT")
                    .action(ArgAction::Append)
                    .help("Scanned axis; repeatable, unscanned axes taken from --x"),
            )
            .arg(
                Arg::new("x")
                    .long("x")
                    .value_name("X1,X2,X3,X4")
                    .default_value("0,0,0,0")
                    .help("Base point for unscanned axes"),
            ),
    );
    let extremal = point_args(shared_field_args(
        Command::new("extremal")
            .about("Integrate an Euler-Lagrange extremal (CSV trajectory + residual)")
            .arg(
                Arg::new("t-end")
                    .long("t-end")
                    .value_name("REAL")
                    .value_parser(value_parser!(f64))
                    .default_value("1"),
            )
            .arg(
                Arg::new("steps")
                    .long("steps")
                    .value_name("N")
                    .value_parser(value_parser!(usize))
                    .default_value("100"),
            ),
    ))
    .mut_arg("t", |a| a.default_value("0"));
    let diag = shared_field_args(Command::new("diag").about(
        "Verify the congruence transform diagonalizing G11 to the Minkowski signature (JSON)",
    ));

    Command::new("jetfinsler")
        .about("Finsler-like geometry of the jet conformal Minkowski metric")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(eval)
        .subcommand(validate)
        .subcommand(scan)
        .subcommand(extremal)
        .subcommand(diag)
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::MalformedField(_) | Error::InvalidConstant(_) => 2,
        Error::Domain(_)
        | Error::DomainExit { .. }
        | Error::NonInvertibleMetric(_)
        | Error::SingularMatrix(_) => 3,
        Error::SignatureMismatch { .. } => 1,
    }
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    let result = match matches.subcommand() {
        Some(("eval", m)) => commands::cmd_eval(m),
        Some(("validate", m)) => commands::cmd_validate(m),
        Some(("scan", m)) => commands::cmd_scan(m),
        Some(("extremal", m)) => commands::cmd_extremal(m),
        Some(("diag", m)) => commands::cmd_diag(m),
        _ => unreachable!("subcommand required"),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
