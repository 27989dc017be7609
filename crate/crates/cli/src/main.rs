//! Command line for the principal-series computations: carry sets,
//! constituent tables, the submodule-type graph, spins of basis vectors, and
//! the verification suites.

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use psgl_cli::{checks, export, session::canonical_r, session::Session};
use psgl_core::nmonoid::NMonoid;
use psgl_core::weights::{upsilon, BorelCharacter, GammaGraph, JhCalc, ThetaElem};
use psgl_core::Variant;

#[derive(Parser)]
#[command(
    name = "psgl",
    about = "Exact computations with principal series of GL2 over length-two local rings",
    long_about = "Exact computations with principal series of GL2 over the rings O/m^2.\n\
        The character exponent passed via --r is an integer and is reduced\n\
        modulo q - 1 = p^f - 1 with the convention 0 -> q - 1: exponents of\n\
        the residue character live in the non-zero exponent classes."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum VariantArg {
    Equalchar,
    Witt,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Equalchar => Variant::EqualChar,
            VariantArg::Witt => Variant::Witt,
        }
    }
}

#[derive(Args)]
struct FieldArgs {
    /// Odd prime residue characteristic
    #[arg(long)]
    p: u64,
    /// Residue degree
    #[arg(long, default_value_t = 1)]
    f: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Carry set of the addition of two exponent classes
    Carry {
        #[command(flatten)]
        field: FieldArgs,
        /// First summand (integer, taken as its exponent class)
        #[arg(long)]
        alpha: u64,
        /// Second summand
        #[arg(long)]
        beta: u64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Constituent table of the level-n principal series
    Jh {
        #[command(flatten)]
        field: FieldArgs,
        /// Ring variant (the table itself is variant-independent)
        #[arg(long, value_enum, default_value = "equalchar")]
        variant: VariantArg,
        /// Level of the quotient ring
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Character exponent
        #[arg(long)]
        r: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// The graph of submodule types with its level functions
    Poset {
        #[command(flatten)]
        field: FieldArgs,
        /// Character exponent
        #[arg(long)]
        r: u64,
        /// Output format: dot or json
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Spin of one basis vector of the level-two space
    Spin {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "equalchar")]
        variant: VariantArg,
        /// Character exponent
        #[arg(long)]
        r: u64,
        /// Basis label "j0,j1" with j0 an integer or "inf"
        #[arg(long)]
        label: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run verification suites and exit non-zero on any failure
    Verify {
        /// Suite name (repeatable); "all" runs every suite
        #[arg(long)]
        suite: Vec<String>,
        /// Seed for the randomized components, recorded in the reports
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output format of the per-check lines: jsonl or text
        #[arg(long, default_value = "jsonl")]
        format: String,
    },
}

fn parse_label(m: &NMonoid, text: &str) -> Result<ThetaElem> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("label must be of the form 'j0,j1' (j0 may be 'inf')");
    }
    let j1 = m.from_integer(parts[1].parse::<u64>()?);
    if parts[0].eq_ignore_ascii_case("inf") {
        Ok(ThetaElem::infinity(j1))
    } else {
        Ok(ThetaElem::finite(m.from_integer(parts[0].parse::<u64>()?), j1))
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Carry { field, alpha, beta, format } => {
            let m = NMonoid::new(field.p, field.f);
            if field.p < 3 || field.f < 1 || field.f > 4 {
                bail!("supported parameters: odd prime p, 1 <= f <= 4");
            }
            let a = m.from_integer(alpha);
            let b = m.from_integer(beta);
            let set = m.carry_set(a, b);
            match format.as_str() {
                "json" => println!(
                    "{}",
                    json!({
                        "alpha": export::nclass_json(&m, a),
                        "beta": export::nclass_json(&m, b),
                        "sum": export::nclass_json(&m, m.add(a, b)),
                        "carry_set": export::carry_set_json(field.f, set),
                    })
                ),
                "text" => println!("carry set: {}", set.display(field.f)),
                other => bail!("unknown format '{other}'"),
            }
        }
        Cmd::Jh { field, variant: _, n, r, format } => {
            let m = NMonoid::new(field.p, field.f);
            let r = canonical_r(&m, r);
            let mut calc = JhCalc::new(&m);
            let ms = calc.jh_multiset(n, BorelCharacter::new(&m, m.zero(), r));
            match format.as_str() {
                "json" => println!("{}", export::jh_json(&m, &ms)),
                "text" => print!("{}", export::jh_text(&m, &ms)),
                other => bail!("unknown format '{other}'"),
            }
        }
        Cmd::Poset { field, r, format } => {
            let m = NMonoid::new(field.p, field.f);
            let r = canonical_r(&m, r);
            let graph = GammaGraph::build(&m, r);
            match format.as_str() {
                "dot" => print!("{}", export::poset_dot(&m, &graph)),
                "json" => println!("{}", export::poset_json(&m, &graph)),
                other => bail!("unknown format '{other}'"),
            }
        }
        Cmd::Spin { field, variant, r, label, format } => {
            let session = Session::new(field.p, field.f, variant.into())?;
            let m = session.monoid;
            let r = canonical_r(&m, r);
            let space = session.space(2, r);
            let label = parse_label(&m, &label)?;
            let seed_vec = space
                .f_vector(label)
                .map_err(|e| anyhow!("invalid label: {e}"))?;
            let spun = session.spin(&space, &[seed_vec]);
            let contained: Vec<String> = space
                .f_labels()
                .iter()
                .filter(|&&l| {
                    spun.contains(session.field.as_ref(), &space.f_vector(l).unwrap())
                })
                .map(|l| l.display(&m))
                .collect();
            let spans_exactly = contained.len() == spun.dim();
            match format.as_str() {
                "json" => println!(
                    "{}",
                    json!({
                        "field": export::fieldspec_json(&session.field),
                        "r": export::nclass_json(&m, r),
                        "label": label.display(&m),
                        "type": upsilon(&m, label, r).display(&m),
                        "dim": spun.dim(),
                        "basis_labels_contained": contained,
                        "equals_their_span": spans_exactly,
                    })
                ),
                "text" => {
                    println!("dim {} ; labels contained: {}", spun.dim(), contained.join(" "));
                }
                other => bail!("unknown format '{other}'"),
            }
        }
        Cmd::Verify { suite, seed, format } => {
            let names = if suite.is_empty() || suite.iter().any(|s| s == "all") {
                checks::SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suite
            };
            let mut all = Vec::new();
            for name in &names {
                all.extend(checks::run_suite(name, seed)?);
            }
            let mut failed = 0usize;
            for report in &all {
                match format.as_str() {
                    "jsonl" => println!("{}", report.to_json_line()),
                    "text" => println!("{}", report.summary_row()),
                    other => bail!("unknown format '{other}'"),
                }
                if report.status != psgl_cli::report::Status::Pass {
                    failed += 1;
                }
            }
            eprintln!();
            for report in &all {
                eprintln!("{}", report.summary_row());
            }
            eprintln!("\n{} checks, {} not passing", all.len(), failed);
            if failed > 0 {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}
