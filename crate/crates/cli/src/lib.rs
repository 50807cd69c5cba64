//! Command-line front end. Every subcommand writes deterministic output to `out`;
//! diagnostics go to `err`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use sp_strata::counting::{
    brute_force_isotropic, count_isotropic, neighbours_of_type_zero, nu, rz_first_page,
    strata_incidence, CaseSpec, Direction, FormSpace, GramMatrix, Kind, SplitCase,
};
use sp_strata::coxeter::{coxeter_graded, verify_restriction_recursion};
use sp_strata::hc::{induce, restrict, SymbolMultiset};
use sp_strata::stratum::{
    e1_page_with, euler_check, survival_bounds_with, weight_table, SurvivalOptions,
};
use sp_strata::symbols::enumerate_symbols;
use sp_strata::{Exec, Symbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Parser, Debug)]
#[command(
    name = "sp-strata",
    version,
    about = "Unipotent symbols of Sp(2θ, F_q) and the strata S_θ"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Pretty)]
    format: Format,
    /// Worker threads for independent sweeps; 1 keeps everything sequential.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long)]
    n: u32,
    /// odd, even-split or even-nonsplit; inferred when n is odd.
    #[arg(long)]
    case: Option<SplitCase>,
    #[arg(long)]
    p: u64,
}

impl CaseArgs {
    fn spec(&self) -> sp_strata::Result<CaseSpec> {
        CaseSpec::infer(self.n, self.case, self.p)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All unipotent symbols of rank θ.
    Symbols {
        #[arg(long)]
        rank: u32,
    },
    /// Generic degree of a symbol, optionally evaluated at q = q0.
    Degree {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        at: Option<i64>,
    },
    /// Harish-Chandra induction from GL(a) × Sp(2θ').
    Induce {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        by: u32,
    },
    /// Harish-Chandra restriction to Sp(2(θ - a)).
    Restrict {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        by: u32,
    },
    /// Cohomology of the Coxeter variety of Sp(2k).
    Coxeter {
        #[arg(long)]
        k: u32,
        /// Also check the restriction recursion against the table.
        #[arg(long)]
        verify: bool,
    },
    /// First page of the stratification spectral sequence of S_θ.
    StratumPage {
        #[arg(long)]
        theta: u32,
    },
    /// Guaranteed and ambiguous constituents of each H^k_c(S_θ) eigenspace.
    StratumBounds {
        #[arg(long)]
        theta: u32,
        /// Use the neighbour matcher alone, without the H^0 and corner refinements.
        #[arg(long)]
        no_sharpen: bool,
        /// Also check the row Euler characteristics against the bounds.
        #[arg(long)]
        verify: bool,
    },
    /// Dimension bounds and weights per eigenspace of H^*_c(S_θ).
    WeightTable {
        #[arg(long)]
        theta: u32,
    },
    /// Totally isotropic r-subspaces of a nondegenerate space over F_p.
    Count {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u64,
        /// Compare against exhaustive enumeration.
        #[arg(long)]
        brute: bool,
        /// Lift the size guard on the enumeration.
        #[arg(long)]
        force: bool,
    },
    /// Vertex lattices of type 2θ' incident to a fixed one of type 2θ.
    Incidence {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        theta: u32,
        #[arg(long = "theta-prime")]
        theta_prime: u32,
        /// below or above
        #[arg(long)]
        direction: Direction,
    },
    /// The multiplicity ν of the type-0 piece.
    Nu {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// First page of the Čech spectral sequence for the cover by maximal strata.
    RzPage {
        #[command(flatten)]
        case: CaseArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Verify(String),
}

impl From<sp_strata::Error> for Failure {
    fn from(e: sp_strata::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(format!("write failed: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn parse_symbol(text: &str) -> std::result::Result<Symbol, Failure> {
    let t = text.trim();
    let parsed = if t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| e.to_string())
    } else {
        t.parse::<Symbol>().map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::Invalid(format!("malformed symbol {text:?}: {e}")))
}

fn is_odd_prime_power(n: i64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut p = 3;
    while p * p <= n && n % p != 0 {
        p += 2;
    }
    let p = if p * p > n { n } else { p };
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn json<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Invalid(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<R: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = R>) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| Failure::Invalid(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn csv_record(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    for r in rows {
        w.write_record(r)
            .map_err(|e| Failure::Invalid(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn row_text(row: &[u32]) -> String {
    row.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn multiset_rows(m: &SymbolMultiset) -> Vec<Vec<String>> {
    m.iter()
        .map(|(s, k)| vec![s.to_string(), k.to_string()])
        .collect()
}

fn emit_multiset(out: &mut dyn Write, format: Format, m: &SymbolMultiset) -> Outcome {
    match format {
        Format::Json => json(out, m),
        Format::Csv => csv_record(out, &["symbol", "mult"], &multiset_rows(m)),
        Format::Pretty => {
            for (s, k) in m.iter() {
                if k == 1 {
                    writeln!(out, "{s}")?;
                } else {
                    writeln!(out, "{s} ×{k}")?;
                }
            }
            Ok(())
        }
    }
}

fn emit_scalar(out: &mut dyn Write, format: Format, key: &str, value: &BigUint) -> Outcome {
    match format {
        Format::Json => json(out, &serde_json::json!({ key: value.to_string() })),
        Format::Csv => csv_record(out, &[key], &[vec![value.to_string()]]),
        Format::Pretty => Ok(writeln!(out, "{value}")?),
    }
}

fn cmd_symbols(out: &mut dyn Write, format: Format, rank: u32) -> Outcome {
    let all = enumerate_symbols(rank);
    match format {
        Format::Json => json(out, &all),
        Format::Csv => {
            let rows: Vec<Vec<String>> = all
                .iter()
                .map(|s| {
                    vec![
                        row_text(s.first()),
                        row_text(s.second()),
                        s.rank().to_string(),
                        s.defect().to_string(),
                    ]
                })
                .collect();
            csv_record(out, &["X", "Y", "rank", "defect"], &rows)
        }
        Format::Pretty => {
            for s in &all {
                writeln!(out, "{s}")?;
            }
            Ok(())
        }
    }
}

fn cmd_degree(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: Format,
    symbol: &str,
    at: Option<i64>,
) -> Outcome {
    let s = parse_symbol(symbol)?;
    let degree = s.degree()?;
    let value = match at {
        Some(q0) if q0 < 2 => return Err(Failure::Invalid(format!("--at needs q0 ≥ 2, got {q0}"))),
        Some(q0) => {
            if !is_odd_prime_power(q0) {
                writeln!(err, "warning: q0 = {q0} is not a power of an odd prime")?;
            }
            let v = degree.eval_int(q0);
            Some(if v.is_integer() {
                v.numer().to_string()
            } else {
                v.to_string()
            })
        }
        None => None,
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct DegreeOut<'a> {
                symbol: &'a Symbol,
                degree: &'a sp_strata::RatPoly,
                #[serde(skip_serializing_if = "Option::is_none")]
                at: Option<i64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                value: Option<String>,
            }
            json(
                out,
                &DegreeOut {
                    symbol: &s,
                    degree: &degree,
                    at,
                    value,
                },
            )
        }
        Format::Csv => {
            let row = vec![
                s.to_string(),
                degree.to_string(),
                at.map(|q| q.to_string()).unwrap_or_default(),
                value.unwrap_or_default(),
            ];
            csv_record(out, &["symbol", "degree", "at", "value"], &[row])
        }
        Format::Pretty => match value {
            Some(v) => Ok(writeln!(out, "{v}")?),
            None => Ok(writeln!(out, "{degree}")?),
        },
    }
}

fn cmd_coxeter(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: Format,
    k: u32,
    verify: bool,
) -> Outcome {
    let rep = coxeter_graded(k);
    match format {
        Format::Json => json(out, &rep)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for (deg, cells) in &rep.by_degree {
                for (label, m) in cells {
                    for (s, mult) in m.iter() {
                        rows.push(vec![
                            deg.to_string(),
                            label.to_string(),
                            s.to_string(),
                            mult.to_string(),
                        ]);
                    }
                }
            }
            csv_record(out, &["degree", "eigenvalue", "symbol", "mult"], &rows)?;
        }
        Format::Pretty => {
            for (deg, cells) in &rep.by_degree {
                for (label, m) in cells {
                    let items: Vec<String> = m.symbols().map(Symbol::to_string).collect();
                    writeln!(out, "H^{deg}_c [{label}]: {}", items.join(", "))?;
                }
            }
        }
    }
    if verify {
        let report = verify_restriction_recursion(k)?;
        if !report.passed() {
            return Err(Failure::Verify(format!(
                "restriction recursion fails at k = {k}: {:?}",
                report.mismatches
            )));
        }
        writeln!(
            err,
            "restriction recursion verified for k = {k} ({} cells)",
            report.cells_checked
        )?;
    }
    Ok(())
}

fn cmd_stratum_page(out: &mut dyn Write, format: Format, theta: u32, exec: Exec) -> Outcome {
    let page = e1_page_with(theta, exec);
    match format {
        Format::Json => json(out, &page),
        Format::Csv => {
            let mut rows = Vec::new();
            for ((a, b), cells) in &page.cells {
                for (label, m) in cells {
                    for (s, mult) in m.iter() {
                        rows.push(vec![
                            a.to_string(),
                            b.to_string(),
                            label.to_string(),
                            s.to_string(),
                            mult.to_string(),
                        ]);
                    }
                }
            }
            csv_record(out, &["a", "b", "eigenvalue", "symbol", "mult"], &rows)
        }
        Format::Pretty => {
            for ((a, b), cells) in &page.cells {
                for (label, m) in cells {
                    let items: Vec<String> = m.symbols().map(Symbol::to_string).collect();
                    writeln!(out, "E1[{a},{b}] [{label}]: {}", items.join(", "))?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_stratum_bounds(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: Format,
    theta: u32,
    no_sharpen: bool,
    verify: bool,
    exec: Exec,
) -> Outcome {
    let opts = if no_sharpen {
        SurvivalOptions::generic()
    } else {
        SurvivalOptions::default()
    };
    let report = survival_bounds_with(&e1_page_with(theta, exec), opts)?;
    match format {
        Format::Json => json(out, &report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for c in &report.cells {
                for (status, m) in [("guaranteed", &c.guaranteed), ("ambiguous", &c.ambiguous)] {
                    for (s, mult) in m.iter() {
                        rows.push(vec![
                            c.degree.to_string(),
                            c.a.to_string(),
                            c.b.to_string(),
                            c.eigenvalue.to_string(),
                            status.to_string(),
                            s.to_string(),
                            mult.to_string(),
                            c.exact.to_string(),
                            c.beyond_theorem.to_string(),
                        ]);
                    }
                }
            }
            csv_record(
                out,
                &[
                    "degree",
                    "a",
                    "b",
                    "eigenvalue",
                    "status",
                    "symbol",
                    "mult",
                    "exact",
                    "beyond_theorem",
                ],
                &rows,
            )?;
        }
        Format::Pretty => {
            for c in &report.cells {
                let list = |m: &SymbolMultiset| {
                    m.symbols()
                        .map(Symbol::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let mut tags = Vec::new();
                if c.exact {
                    tags.push("exact");
                }
                if c.beyond_theorem {
                    tags.push("beyond theorem");
                }
                writeln!(
                    out,
                    "H^{}_c [{}] (E[{},{}]){}: ⊇ {{{}}}; ambiguous {{{}}}",
                    c.degree,
                    c.eigenvalue,
                    c.a,
                    c.b,
                    if tags.is_empty() {
                        String::new()
                    } else {
                        format!(" [{}]", tags.join(", "))
                    },
                    list(&c.guaranteed),
                    list(&c.ambiguous)
                )?;
            }
        }
    }
    if verify {
        let e = euler_check(theta)?;
        if !e.passed() {
            let bad: Vec<String> = e
                .rows
                .iter()
                .filter(|r| !r.ok)
                .map(|r| format!("row {} [{}]", r.b, r.eigenvalue))
                .collect();
            return Err(Failure::Verify(format!(
                "Euler characteristic outside bounds: {}",
                bad.join(", ")
            )));
        }
        writeln!(
            err,
            "Euler characteristics consistent on {} rows",
            e.rows.len()
        )?;
    }
    Ok(())
}

fn cmd_weight_table(out: &mut dyn Write, format: Format, theta: u32) -> Outcome {
    let rows = weight_table(theta)?;
    #[derive(Serialize)]
    struct Flat {
        degree: u32,
        eigenvalue: String,
        weight: u32,
        min_dim: String,
        max_dim: String,
        exact: bool,
        beyond_theorem: bool,
        non_purity_witness: bool,
    }
    let flat = rows.iter().map(|w| Flat {
        degree: w.degree,
        eigenvalue: w.eigenvalue.to_string(),
        weight: w.eigenvalue.weight(),
        min_dim: w.min_dim.to_string(),
        max_dim: w.max_dim.to_string(),
        exact: w.exact,
        beyond_theorem: w.beyond_theorem,
        non_purity_witness: w.non_purity_witness,
    });
    match format {
        Format::Json => json(out, &rows),
        Format::Csv => csv_rows(out, flat),
        Format::Pretty => {
            for f in flat {
                let mark = if f.non_purity_witness {
                    "  *non-pure*"
                } else {
                    ""
                };
                if f.exact {
                    writeln!(
                        out,
                        "H^{} [{}] weight {}: dim = {}{mark}",
                        f.degree, f.eigenvalue, f.weight, f.min_dim
                    )?;
                } else {
                    writeln!(
                        out,
                        "H^{} [{}] weight {}: {} ≤ dim ≤ {}{mark}",
                        f.degree, f.eigenvalue, f.weight, f.min_dim, f.max_dim
                    )?;
                }
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    out: &mut dyn Write,
    format: Format,
    kind: Kind,
    dim: u32,
    r: u32,
    p: u64,
    brute: bool,
    force: bool,
    exec: Exec,
) -> Outcome {
    let space = FormSpace::new(kind, dim)?;
    let formula = count_isotropic(space, r, p)?;
    if !brute {
        return emit_scalar(out, format, "count", &formula);
    }
    let g = GramMatrix::standard(space, p)?;
    let enumerated = brute_force_isotropic(&g, r, exec, force)?;
    let matches = formula == BigUint::from(enumerated);
    match format {
        Format::Json => json(
            out,
            &serde_json::json!({
                "kind": kind, "dim": dim, "r": r, "p": p,
                "formula": formula.to_string(), "brute_force": enumerated, "match": matches,
            }),
        )?,
        Format::Csv => csv_record(
            out,
            &["kind", "dim", "r", "p", "formula", "brute_force", "match"],
            &[vec![
                kind.to_string(),
                dim.to_string(),
                r.to_string(),
                p.to_string(),
                formula.to_string(),
                enumerated.to_string(),
                matches.to_string(),
            ]],
        )?,
        Format::Pretty => writeln!(out, "formula {formula}, enumerated {enumerated}")?,
    }
    if matches {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "formula {formula} ≠ enumeration {enumerated}"
        )))
    }
}

fn cmd_nu(out: &mut dyn Write, format: Format, case: CaseSpec) -> Outcome {
    let v = nu(case)?;
    let n = neighbours_of_type_zero(case)?;
    match format {
        Format::Json => json(
            out,
            &serde_json::json!({ "case": case, "N": n.to_string(), "nu": v.to_string() }),
        ),
        Format::Csv => csv_record(out, &["N", "nu"], &[vec![n.to_string(), v.to_string()]]),
        Format::Pretty => Ok(writeln!(out, "{v}")?),
    }
}

fn cmd_rz_page(out: &mut dyn Write, format: Format, case: CaseSpec) -> Outcome {
    let page = rz_first_page(case)?;
    match format {
        Format::Json => json(out, &page),
        Format::Csv => {
            let mut rows = Vec::new();
            for c in &page.cells {
                for t in &c.terms {
                    rows.push(vec![
                        c.a.to_string(),
                        c.b.to_string(),
                        t.multiplicity.to_string(),
                        t.inducing_theta.to_string(),
                        t.frobenius_exponent.to_string(),
                    ]);
                }
            }
            csv_record(
                out,
                &[
                    "a",
                    "b",
                    "multiplicity",
                    "inducing_theta",
                    "frobenius_exponent",
                ],
                &rows,
            )
        }
        Format::Pretty => {
            writeln!(
                out,
                "n = {}, {:?}, p = {}: k(s,0) = C(N,s), N = {}",
                case.n,
                case.split_case,
                case.p,
                neighbours_of_type_zero(case)?
            )?;
            for c in page.cells.iter().filter(|c| !c.terms.is_empty()) {
                let terms: Vec<String> = c.terms.iter().map(|t| t.to_string()).collect();
                writeln!(out, "E1[{},{}]: {}", c.a, c.b, terms.join(" ⊕ "))?;
            }
            Ok(())
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let exec = if cli.jobs > 1 {
        Exec::Parallel
    } else {
        Exec::Sequential
    };
    let format = cli.format;
    match cli.command {
        Command::Symbols { rank } => cmd_symbols(out, format, rank),
        Command::Degree { symbol, at } => cmd_degree(out, err, format, &symbol, at),
        Command::Induce { symbol, by } => {
            emit_multiset(out, format, &induce(&parse_symbol(&symbol)?, by))
        }
        Command::Restrict { symbol, by } => {
            emit_multiset(out, format, &restrict(&parse_symbol(&symbol)?, by)?)
        }
        Command::Coxeter { k, verify } => cmd_coxeter(out, err, format, k, verify),
        Command::StratumPage { theta } => cmd_stratum_page(out, format, theta, exec),
        Command::StratumBounds {
            theta,
            no_sharpen,
            verify,
        } => cmd_stratum_bounds(out, err, format, theta, no_sharpen, verify, exec),
        Command::WeightTable { theta } => cmd_weight_table(out, format, theta),
        Command::Count {
            kind,
            dim,
            r,
            p,
            brute,
            force,
        } => cmd_count(out, format, kind, dim, r, p, brute, force, exec),
        Command::Incidence {
            case,
            theta,
            theta_prime,
            direction,
        } => {
            let spec = case.spec()?;
            let count = strata_incidence(spec, theta, theta_prime, direction)?;
            emit_scalar(out, format, "incidence", &count)
        }
        Command::Nu { case } => cmd_nu(out, format, case.spec()?),
        Command::RzPage { case } => cmd_rz_page(out, format, case.spec()?),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let jobs = cli.jobs as usize;
    let outcome = if jobs > 1 {
        // the pool needs Send writers, so buffer and copy out afterwards
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(cli, &mut o, &mut e)),
            Err(x) => Err(Failure::Invalid(format!(
                "cannot start {jobs} workers: {x}"
            ))),
        };
        let _ = out.write_all(&o);
        let _ = err.write_all(&e);
        r
    } else {
        dispatch(cli, out, err)
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}
