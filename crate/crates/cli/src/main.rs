//! `bct` — command-line front end for the bicyclic monoid engine.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use bct_core::verify::{self, CheckOptions, Claim, ContinuityOutcome, Verdict};
use bct_core::{BicyclicElement, Region, Topology, Window};

use output::{element_json, grid, region_json, Format};

#[derive(Parser)]
#[command(
    name = "bct",
    about = "Exact queries and verification suites for the bicyclic monoid and its topologies",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Grid,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Grid => Format::Grid,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements.
    Mul { a: String, b: String },
    /// Invert an element.
    Inv { a: String },
    /// The idempotent pair (x·x⁻¹, x⁻¹·x).
    Trace { a: String },
    /// Natural partial order: is A ⪯ B?
    Leq { a: String, b: String },
    /// The order sets of an element: up, down, strict down, and the
    /// comparability class.
    OrderSets {
        a: String,
        #[arg(long, default_value_t = 12)]
        window: u64,
    },
    /// A basic neighborhood basic(point, n).
    Nbhd {
        #[arg(long)]
        topology: Topology,
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 12)]
        window: u64,
    },
    /// Closure of a region in a topology.
    Closure(RegionOp),
    /// Interior of a region in a topology.
    Interior(RegionOp),
    /// Is the region equal to the interior of its closure?
    RegularOpen {
        #[arg(long)]
        topology: Topology,
        /// Basic neighborhood "ELEMENT,N".
        #[arg(long)]
        basic: String,
        #[arg(long, default_value_t = 12)]
        window: u64,
    },
    /// Solve A·X = B, X·C = D, or A·X·C = B exactly.
    Solve {
        /// Left factor A of A·X = RHS.
        #[arg(long, conflicts_with_all = ["right", "two_sided"])]
        left: Option<String>,
        /// Right factor C of X·C = RHS.
        #[arg(long, conflicts_with = "two_sided")]
        right: Option<String>,
        /// Pair "A,C" of outer factors of A·X·C = RHS.
        #[arg(long)]
        two_sided: Option<String>,
        /// The right-hand side.
        #[arg(long)]
        rhs: String,
        /// Also confirm the solution set against a brute-force window.
        #[arg(long)]
        window: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        /// One of: prop1 prop2 prop3 lemma2 lemma3 lemma4 thm1 quasireg
        /// semireg subcover-tauc subcover-updown joint-cont all.
        claim: String,
        /// Sweep bound for the suite.
        #[arg(long, env = "BCT_MAX_BOUND", default_value_t = 8)]
        max: u64,
        /// Confirm sampled symbolic steps against the window oracle.
        #[arg(long)]
        crosscheck: bool,
        /// Window used by the oracle confirmations.
        #[arg(long, default_value_t = 40)]
        window: u64,
    },
    /// Render a region file as an ASCII grid.
    Render {
        #[arg(long)]
        region: PathBuf,
        #[arg(long, default_value_t = 20)]
        window: u64,
    },
    /// Minimal separate-continuity witness parameter.
    ContinuityWitness {
        #[arg(long)]
        topology: Topology,
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = ["left", "right"], default_value = "left")]
        side: String,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
}

#[derive(Args)]
struct RegionOp {
    #[arg(long)]
    topology: Topology,
    /// A region file in the JSON schema.
    #[arg(long, conflicts_with = "basic")]
    region: Option<PathBuf>,
    /// Basic neighborhood "ELEMENT,N".
    #[arg(long)]
    basic: Option<String>,
    #[arg(long, default_value_t = 12)]
    window: u64,
}

/// A CLI-level failure: message plus exit code.
struct Failure {
    message: String,
    code: u8,
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 2,
    }
}

fn parse_element(src: &str) -> Result<BicyclicElement, Failure> {
    BicyclicElement::from_str(src).map_err(|err| {
        let caret = " ".repeat(err.pos);
        usage_error(format!("invalid element syntax: {err}\n  {src}\n  {caret}^"))
    })
}

fn parse_nat(src: &str) -> Result<BigUint, Failure> {
    BigUint::from_str(src.trim())
        .map_err(|_| usage_error(format!("invalid non-negative integer {src:?}")))
}

/// Split "ELEMENT,N" at the last comma.
fn parse_basic_arg(src: &str) -> Result<(BicyclicElement, BigUint), Failure> {
    let comma = src
        .rfind(',')
        .ok_or_else(|| usage_error(format!("expected \"ELEMENT,N\", got {src:?}")))?;
    Ok((parse_element(&src[..comma])?, parse_nat(&src[comma + 1..])?))
}

/// Split "A,C" at the top-level comma (commas inside parentheses bind
/// to the pair notation).
fn parse_element_pair(src: &str) -> Result<(BicyclicElement, BicyclicElement), Failure> {
    let mut depth = 0usize;
    for (pos, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                return Ok((parse_element(&src[..pos])?, parse_element(&src[pos + 1..])?));
            }
            _ => {}
        }
    }
    Err(usage_error(format!("expected \"A,C\", got {src:?}")))
}

fn load_region(path: &PathBuf) -> Result<Region, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(format!("cannot read {}: {e}", path.display())))?;
    Region::from_json_str(&text)
        .map_err(|e| usage_error(format!("cannot parse {}: {e}", path.display())))
}

fn region_operand(op: &RegionOp) -> Result<Region, Failure> {
    match (&op.region, &op.basic) {
        (Some(path), None) => load_region(path),
        (None, Some(basic)) => {
            let (x, n) = parse_basic_arg(basic)?;
            Ok(op.topology.basic(&x, &n))
        }
        _ => Err(usage_error("exactly one of --region or --basic is required")),
    }
}

fn print_region(r: &Region, format: Format, window: u64) -> Result<(), Failure> {
    match format {
        Format::Text => println!("{r}"),
        Format::Json => println!("{}", region_json(r).map_err(|e| usage_error(e.to_string()))?),
        Format::Grid => print!("{}", grid(r, window)),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Mul { a, b } => {
            let r = parse_element(&a)?.mul(&parse_element(&b)?);
            match format {
                Format::Json => println!("{}", element_json(&r)),
                _ => println!("{r}"),
            }
        }
        Command::Inv { a } => {
            let r = parse_element(&a)?.inv();
            match format {
                Format::Json => println!("{}", element_json(&r)),
                _ => println!("{r}"),
            }
        }
        Command::Trace { a } => {
            let (l, r) = parse_element(&a)?.trace();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"left": element_json(&l), "right": element_json(&r)})
                ),
                _ => println!("({l}, {r})"),
            }
        }
        Command::Leq { a, b } => {
            let result = parse_element(&a)?.leq(&parse_element(&b)?);
            match format {
                Format::Json => println!("{}", serde_json::json!({ "leq": result })),
                _ => println!("{result}"),
            }
        }
        Command::OrderSets { a, window } => {
            let x = parse_element(&a)?;
            let sets = [
                ("up", x.up_set()),
                ("down", x.down_set()),
                ("strict_down", x.strict_down_set()),
                ("updown", x.updown_set()),
            ];
            match format {
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    for (name, r) in &sets {
                        obj.insert(
                            name.to_string(),
                            region_json(r).map_err(|e| usage_error(e.to_string()))?,
                        );
                    }
                    println!("{}", serde_json::Value::Object(obj));
                }
                Format::Text => {
                    for (name, r) in &sets {
                        println!("{name}: {r}");
                    }
                }
                Format::Grid => {
                    for (name, r) in &sets {
                        println!("{name}:");
                        print!("{}", grid(r, window));
                    }
                }
            }
        }
        Command::Nbhd {
            topology,
            point,
            n,
            window,
        } => {
            let x = parse_element(&point)?;
            let n = parse_nat(&n)?;
            print_region(&topology.basic(&x, &n), format, window)?;
        }
        Command::Closure(op) => {
            let r = region_operand(&op)?;
            print_region(&op.topology.closure(&r), format, op.window)?;
        }
        Command::Interior(op) => {
            let r = region_operand(&op)?;
            print_region(&op.topology.interior(&r), format, op.window)?;
        }
        Command::RegularOpen {
            topology,
            basic,
            window,
        } => {
            let (x, n) = parse_basic_arg(&basic)?;
            let r = topology.basic(&x, &n);
            let int_cl = topology.interior(&topology.closure(&r));
            let regular = int_cl == r;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "regular_open": regular,
                        "int_cl": region_json(&int_cl).map_err(|e| usage_error(e.to_string()))?,
                    })
                ),
                Format::Text => println!("{regular}"),
                Format::Grid => {
                    println!("int(cl(basic)):");
                    print!("{}", grid(&int_cl, window));
                    println!("regular open: {regular}");
                }
            }
        }
        Command::Solve {
            left,
            right,
            two_sided,
            rhs,
            window,
        } => {
            let rhs = parse_element(&rhs)?;
            let (solutions, check): (Vec<BicyclicElement>, Box<dyn Fn(&BicyclicElement) -> bool>) =
                match (&left, &right, &two_sided) {
                    (Some(a), None, None) => {
                        let a = parse_element(a)?;
                        let sols = bct_core::solve_left(&a, &rhs);
                        let rhs = rhs.clone();
                        (sols, Box::new(move |x| a.mul(x) == rhs))
                    }
                    (None, Some(c), None) => {
                        let c = parse_element(c)?;
                        let sols = bct_core::solve_right(&c, &rhs);
                        let rhs = rhs.clone();
                        (sols, Box::new(move |x| x.mul(&c) == rhs))
                    }
                    (None, None, Some(pair)) => {
                        let (a, c) = parse_element_pair(pair)?;
                        let sols = bct_core::solve_two_sided(&a, &c, &rhs);
                        let rhs = rhs.clone();
                        (sols, Box::new(move |x| a.mul(x).mul(&c) == rhs))
                    }
                    _ => {
                        return Err(usage_error(
                            "exactly one of --left, --right, --two-sided is required",
                        ))
                    }
                };
            let window_check = window.map(|n| {
                Window::new(n).points().all(|(s, t)| {
                    let x = BicyclicElement::from_u64(s, t);
                    check(&x) == solutions.contains(&x)
                })
            });
            match format {
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert(
                        "solutions".into(),
                        solutions.iter().map(element_json).collect(),
                    );
                    if let Some(ok) = window_check {
                        obj.insert(
                            "window_check".into(),
                            if ok { "pass" } else { "fail" }.into(),
                        );
                    }
                    println!("{}", serde_json::Value::Object(obj));
                }
                _ => {
                    for x in &solutions {
                        println!("{x}");
                    }
                    if solutions.is_empty() {
                        println!("(no solutions)");
                    }
                    if let Some(ok) = window_check {
                        println!("window check: {}", if ok { "pass" } else { "fail" });
                    }
                }
            }
            if window_check == Some(false) {
                return Ok(1);
            }
        }
        Command::Verify {
            claim,
            max,
            crosscheck,
            window,
        } => {
            let claim = Claim::from_str(&claim).map_err(usage_error)?;
            let opt = CheckOptions { crosscheck, window };
            let reports = verify::run_claim(claim, max, &opt);
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
                }
                _ => {
                    for t in &reports {
                        print!("{}", t.report.render_text());
                        println!("  elapsed_ms = {}", t.elapsed_ms);
                    }
                }
            }
            let code = if reports
                .iter()
                .any(|t| t.report.verdict == Verdict::Counterexample)
            {
                1
            } else if reports
                .iter()
                .any(|t| t.report.verdict == Verdict::InconclusiveBudget)
            {
                3
            } else {
                0
            };
            return Ok(code);
        }
        Command::Render { region, window } => {
            let r = load_region(&region)?;
            match format {
                Format::Json => {
                    println!("{}", region_json(&r).map_err(|e| usage_error(e.to_string()))?)
                }
                _ => print!("{}", grid(&r, window)),
            }
        }
        Command::ContinuityWitness {
            topology,
            a,
            x,
            n,
            side,
            budget,
        } => {
            let a = parse_element(&a)?;
            let x = parse_element(&x)?;
            let side = if side == "left" {
                verify::Side::Left
            } else {
                verify::Side::Right
            };
            match verify::continuity_witness(topology, &a, &x, n, side, budget) {
                ContinuityOutcome::MinimalK(k) => match format {
                    Format::Json => println!("{}", serde_json::json!({ "minimal_k": k })),
                    _ => println!("{k}"),
                },
                ContinuityOutcome::InconclusiveBudget => {
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::json!({"outcome": "inconclusive_budget"}))
                        }
                        _ => println!("inconclusive within budget {budget}"),
                    }
                    return Ok(3);
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
