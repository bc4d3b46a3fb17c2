//! `ncplane`: batch front-end for the ncplane library.
//!
//! Every run echoes its configuration. Exit status is 0 when the checked identity holds,
//! 1 when a residual or violation is found or a computation fails, 2 on usage errors.

mod regression;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncplane::algebra::{pair_product, parse_word, rewrite_normalize, AlgebraMatrix, NCPolynomial, ThetaParams};
use ncplane::arith::{parse_rational, GaussianRational, Rational, DEFAULT_PRECISION};
use ncplane::projector::{
    band4_forced_zeros, band_membership, beta_orthogonality, beta_orthogonality_4d, dual_path_report, projector_residual, Banded,
    CoeffGrid2D, CoeffGrid4D,
};
use ncplane::random::Fuzz;
use ncplane::selfadjoint::{sa_check_necessary, sa_complete, sa_converse_residual, sa_iterative_oracle, sa_residual, RealCoeffGrid};
use ncplane::sequences::{
    aaa_residuals, ac_residuals, all_zero, b_identity_residuals, bernoulli_a_seq, decay_probe, enumerate_p0, mfam_search,
    parse_branch_signs, solve_b_of_p, solve_power_recurrence, FloatSeq,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Serialize)]
#[command(name = "ncplane", version, about = "Exact computations in the noncommutative plane algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// θ of a generator pair as p/q; repeat once per pair.
    #[arg(long = "theta", global = true, value_name = "P/Q")]
    theta: Vec<String>,

    /// Working precision in decimal digits for numeric branches.
    #[arg(long, global = true, env = "NCPLANE_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: usize,

    /// Emit one JSON document.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit plain text (default).
    #[arg(long, global = true)]
    table: bool,

    /// Seed for `--random` inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Generate the input from `--seed` instead of reading it.
    #[arg(long, global = true)]
    random: bool,

    /// JSON input file; stdin when absent or `-`.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Normal form of yⁿxᵐ.
    NormalOrder {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Normal form of a word such as "yyx" or "x4 x2 x3 x1".
    Rewrite {
        #[arg(long)]
        word: String,
    },
    /// Product of the two polynomials in a JSON array.
    Multiply,
    Adjoint,
    /// Degree and principal symbol.
    Symbol,
    /// M² − M and M* − M for a matrix.
    CheckProjector,
    /// Checks that a projector matrix has only scalar entries.
    ScalarCheck,
    /// Idempotency and adjoint residuals of a γ-normalized 2D grid.
    GridResidual,
    /// Band membership of a 2D or 4D grid.
    BandCheck {
        #[arg(long)]
        k: u32,
    },
    /// Gap-k orthogonality of the β-sequence.
    BetaOrth {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Forced zeros on the band edges of a 4D grid.
    Band4Zeros {
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// T − T* and the coefficient identities it implies.
    SaCheck,
    /// Self-adjoint element with the given real parts.
    SaComplete,
    /// Iterative solution of the self-adjointness system, compared with the completion.
    SaOracle,
    /// The weights a_0..a_N.
    BernoulliA {
        #[arg(long = "N")]
        n: usize,
    },
    /// b_1(p)..b_N(p).
    BOfP {
        #[arg(long)]
        p: u32,
        #[arg(long = "N")]
        n: usize,
    },
    /// Choice strings whose last values vanish.
    P0Enum {
        #[arg(long, default_value_t = 24)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        tail_window: usize,
    },
    /// Diagonal projector equation of the n-pair algebra along one branch.
    PowerRec {
        #[arg(long)]
        power: u32,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        b1: u8,
        /// One sign per step from m = 2, e.g. "-+-".
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        branch: String,
    },
    /// Band-one diagonal system along one branch, with the truncated adjoint residuals.
    MfamSearch {
        #[arg(long)]
        depth: usize,
        /// One sign per index from 0.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        branch: String,
    },
    /// Alternating transform of a damped periodic pattern.
    DecayProbe {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        pattern: Vec<i8>,
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long, default_value_t = 1)]
        gap: usize,
        #[arg(long = "N", default_value_t = 300)]
        n: usize,
    },
    /// Checks every reference value; exits 0 iff all match.
    PaperRegression,
}

enum Failure {
    Usage(String),
    Math(ncplane::Error),
}

impl From<ncplane::Error> for Failure {
    fn from(e: ncplane::Error) -> Self {
        match e {
            ncplane::Error::InvalidArgument(_) | ncplane::Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Report {
    value: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(value: impl Serialize, text: String, ok: bool) -> Outcome<Self> {
        let value = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(Report { value, text, ok })
    }
}

fn thetas(cli: &Cli) -> Outcome<Vec<Rational>> {
    if cli.theta.is_empty() {
        return Ok(vec![Rational::from_integer(1.into())]);
    }
    cli.theta.iter().map(|s| parse_rational(s).map_err(|e| Failure::Usage(format!("--theta {s}: {e}")))).collect()
}

fn params(cli: &Cli) -> Outcome<ThetaParams> {
    Ok(ThetaParams::new(thetas(cli)?)?)
}

fn single_theta(cli: &Cli) -> Outcome<Rational> {
    let t = thetas(cli)?;
    if t.len() != 1 {
        return Err(Failure::Usage("this subcommand takes a single --theta".into()));
    }
    Ok(t[0].clone())
}

fn read_text(cli: &Cli) -> Outcome<String> {
    let mut s = String::new();
    match &cli.input {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("--input {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn read_input<T: DeserializeOwned>(cli: &Cli) -> Outcome<T> {
    serde_json::from_str(&read_text(cli)?).map_err(|e| Failure::Usage(format!("input: {e}")))
}

/// The input, or a seeded random one when `--random` is set.
fn input_or<T: DeserializeOwned>(cli: &Cli, gen: impl FnOnce(&mut Fuzz) -> Outcome<T>) -> Outcome<T> {
    if cli.random {
        gen(&mut Fuzz::new(cli.seed))
    } else {
        read_input(cli)
    }
}

fn no_random<T: DeserializeOwned>(cli: &Cli) -> Outcome<T> {
    if cli.random {
        return Err(Failure::Usage("--random is not supported by this subcommand".into()));
    }
    read_input(cli)
}

enum Grid {
    Two(CoeffGrid2D),
    Four(CoeffGrid4D),
}

fn read_grid(cli: &Cli, k: u32) -> Outcome<Grid> {
    if cli.random {
        let mut f = Fuzz::new(cli.seed);
        return Ok(Grid::Two(f.band_grid2d(single_theta(cli)?, 6, 4, k)));
    }
    let v: Value = read_input(cli)?;
    let bad = |e: serde_json::Error| Failure::Usage(format!("input: {e}"));
    if v.get("thetas").is_some() {
        Ok(Grid::Four(serde_json::from_value(v).map_err(bad)?))
    } else {
        Ok(Grid::Two(serde_json::from_value(v).map_err(bad)?))
    }
}

fn fmt_grid(g: &CoeffGrid2D) -> String {
    if g.is_zero() {
        return "  0\n".into();
    }
    g.entries().iter().map(|((p, q), c)| format!("  [{p},{q}] {c}\n")).collect()
}

fn fmt_matrix(m: &AlgebraMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn fmt_floats(f: &FloatSeq, digits: usize) -> String {
    f.values.iter().enumerate().map(|(i, v)| format!("  {i}: {}\n", v.to_string_digits(digits))).collect()
}

/// Residuals in scientific notation; they only need their magnitude shown.
fn fmt_residuals(f: &FloatSeq, first: usize) -> String {
    f.values.iter().enumerate().map(|(i, v)| format!("  {}: {:.3e}\n", i + first, v.to_f64())).collect()
}

fn poly_report(p: &NCPolynomial) -> Outcome<Report> {
    Report::new(p, format!("{p}\n"), true)
}

/// `c·a^k·x^p y^q` terms of `yⁿxᵐ` with the commutator left symbolic.
fn symbolic_normal_order(n: u32, m: u32) -> String {
    let mut terms = pair_product(0, n, m, 0, &GaussianRational::from_int(1));
    terms.sort_by_key(|((p, q), _)| (p + q, *p));
    let parts: Vec<String> = terms
        .into_iter()
        .map(|((p, q), c)| {
            let k = m - p;
            let mut f: Vec<String> = Vec::new();
            if c != GaussianRational::from_int(1) {
                f.push(c.to_string());
            }
            match k {
                0 => {}
                1 => f.push("a".into()),
                _ => f.push(format!("a^{k}")),
            }
            for (name, e) in [("x", p), ("y", q)] {
                match e {
                    0 => {}
                    1 => f.push(name.into()),
                    _ => f.push(format!("{name}^{e}")),
                }
            }
            if f.is_empty() {
                "1".into()
            } else {
                f.join("·")
            }
        })
        .collect();
    parts.join(" + ")
}

fn run(cli: &Cli) -> Outcome<Report> {
    let digits = cli.precision.min(40);
    match &cli.command {
        Command::NormalOrder { n, m } => {
            let th = single_theta(cli)?;
            let p = ncplane::algebra::normal_order_pow(*n, *m, &th)?;
            let sym = symbolic_normal_order(*n, *m);
            let text = format!("y^{n} x^{m} = {sym}\n  with a = iθ: {p}\n");
            Report::new(json!({ "symbolic": sym, "value": p }), text, true)
        }
        Command::Rewrite { word } => {
            let tp = params(cli)?;
            let w = parse_word(word, tp.generators())?;
            poly_report(&rewrite_normalize(&w, &tp)?)
        }
        Command::Multiply => {
            let [a, b]: [NCPolynomial; 2] = input_or(cli, |f| {
                let tp = params(cli)?;
                Ok([f.polynomial(&tp, 4, 3), f.polynomial(&tp, 4, 3)])
            })?;
            let p = a.nc_multiply(&b)?;
            Report::new(json!({ "left": a, "right": b, "product": p }), format!("({a})·({b})\n  = {p}\n"), true)
        }
        Command::Adjoint => {
            let t: NCPolynomial = input_or(cli, |f| Ok(f.polynomial(&params(cli)?, 4, 3)))?;
            let s = t.adjoint();
            Report::new(json!({ "input": t, "adjoint": s }), format!("({t})* = {s}\n"), true)
        }
        Command::Symbol => {
            let t: NCPolynomial = input_or(cli, |f| Ok(f.polynomial(&params(cli)?, 4, 3)))?;
            let (d, s) = t.degree_and_symbol()?;
            Report::new(json!({ "degree": d, "symbol": s }), format!("degree {d}\nsymbol {s}\n"), true)
        }
        Command::CheckProjector => {
            let m: AlgebraMatrix = input_or(cli, |f| Ok(f.scalar_projector(3, &params(cli)?)))?;
            let r = m.is_projector()?;
            let text = format!(
                "projector: {}\nM² − M:\n{}M* − M:\n{}",
                r.ok,
                fmt_matrix(&r.idempotent_residual),
                fmt_matrix(&r.selfadjoint_residual)
            );
            let ok = r.ok;
            Report::new(r, text, ok)
        }
        Command::ScalarCheck => {
            let m: AlgebraMatrix = input_or(cli, |f| Ok(f.scalar_projector(3, &params(cli)?)))?;
            let r = m.assert_scalar_projector()?;
            let mut text = format!("all entries scalar: {}\n", r.all_scalar);
            if let Some((i, j, p)) = &r.offending {
                let _ = writeln!(text, "  entry ({i},{j}) = {p}");
            }
            let ok = r.all_scalar;
            Report::new(r, text, ok)
        }
        Command::GridResidual => {
            let g: CoeffGrid2D = input_or(cli, |f| Ok(f.grid2d(single_theta(cli)?, 5, 4)))?;
            let r = projector_residual(&g);
            let dual = dual_path_report(&g)?;
            let text = format!(
                "projector equations hold: {}\nidempotency residual:\n{}adjoint residual:\n{}formula and algebra agree: {}\n",
                r.ok,
                fmt_grid(&r.idem),
                fmt_grid(&r.adj),
                dual.idem_match && dual.adj_match
            );
            let ok = r.ok && dual.idem_match && dual.adj_match;
            Report::new(json!({ "residual": r, "dual_path_agrees": dual.idem_match && dual.adj_match }), text, ok)
        }
        Command::BandCheck { k } => {
            let (ok, bad) = match read_grid(cli, *k)? {
                Grid::Two(g) => (band_membership(&g, *k), g.band_violations(*k)),
                Grid::Four(g) => (band_membership(&g, *k), g.band_violations(*k)),
            };
            let mut text = format!("inside band {k}: {ok}\n");
            for idx in &bad {
                let _ = writeln!(text, "  outside: {idx:?}");
            }
            Report::new(json!({ "k": k, "in_band": ok, "outside": bad }), text, ok)
        }
        Command::BetaOrth { k, depth } => match read_grid(cli, *k)? {
            Grid::Two(g) => {
                let r = beta_orthogonality(&g, *k, *depth)?;
                let mut text = format!("b_n b_(n+{k}) = 0 for all n: {}\n", r.ok);
                for (n, (b, p)) in r.b.iter().zip(&r.products).enumerate() {
                    let _ = writeln!(text, "  n={n}: b={b}  product={p}");
                }
                let ok = r.ok;
                Report::new(r, text, ok)
            }
            Grid::Four(g) => {
                let r = beta_orthogonality_4d(&g, *k, *depth)?;
                let mut text = format!("β_n β_(n+{k}) = 0 for all n: {}\n", r.ok);
                for (n, p) in r.products.iter().enumerate() {
                    let _ = writeln!(text, "  n={n}: {p}");
                }
                let ok = r.ok;
                Report::new(r, text, ok)
            }
        },
        Command::Band4Zeros { k } => {
            let g: CoeffGrid4D = no_random(cli)?;
            let r = band4_forced_zeros(&g, *k)?;
            let mut text = format!("clean: {}\n", r.is_clean());
            for v in &r.violations {
                let _ = writeln!(text, "  forced zero {:?} by {}", v.index, v.constraint);
            }
            for u in &r.unresolved {
                let _ = writeln!(text, "  unresolved {u:?}");
            }
            let ok = r.is_clean();
            Report::new(r, text, ok)
        }
        Command::SaCheck => {
            let t: NCPolynomial = input_or(cli, |f| Ok(f.selfadjoint_polynomial(&params(cli)?, 5, 4)))?;
            let res = sa_residual(&t)?;
            if !res.is_zero() {
                return Report::new(json!({ "selfadjoint": false, "residual": res }), format!("self-adjoint: false\nT − T* = {res}\n"), false);
            }
            let r = sa_check_necessary(&t)?;
            let text = format!("self-adjoint: true\ncoefficient identities checked: {}\nall hold: {}\n", r.checked, r.ok);
            let ok = r.ok;
            Report::new(json!({ "selfadjoint": true, "identities": r }), text, ok)
        }
        Command::SaComplete => {
            let g: RealCoeffGrid = input_or(cli, |f| Ok(f.real_grid(single_theta(cli)?, 6, 5)))?;
            let t = sa_complete(&g);
            let conv = sa_converse_residual(&g);
            let ok = conv.is_zero();
            let text = format!("T = {t}\nT − T* = {conv}\n");
            Report::new(json!({ "completion": t, "residual": conv }), text, ok)
        }
        Command::SaOracle => {
            let g: RealCoeffGrid = input_or(cli, |f| Ok(f.real_grid(single_theta(cli)?, 6, 5)))?;
            let o = sa_iterative_oracle(&g)?;
            let t = sa_complete(&g);
            let ok = o == t;
            let text = format!("oracle     {o}\ncompletion {t}\nagree: {ok}\n");
            Report::new(json!({ "oracle": o, "completion": t, "agree": ok }), text, ok)
        }
        Command::BernoulliA { n } => {
            let a = bernoulli_a_seq(*n);
            let ok = all_zero(&ac_residuals(&a)) && all_zero(&aaa_residuals(*n));
            Report::new(json!({ "a": a, "identities_hold": ok }), format!("{}\n", a.to_plain()), ok)
        }
        Command::BOfP { p, n } => {
            let b = solve_b_of_p(*p, *n);
            let ok = all_zero(&b_identity_residuals(*p, &b));
            Report::new(json!({ "p": p, "b": b, "identity_holds": ok }), format!("{}\n", b.to_plain()), ok)
        }
        Command::P0Enum { depth, tail_window } => {
            let t = enumerate_p0(*depth, *tail_window)?;
            // Only the zero path and (1, 0, 0, …) are expected to end in zeros.
            let ok = t.flagged.iter().all(|p| p.values.iter().skip(1).all(|v| *v == 0));
            let mut text = format!("nodes visited: {}\nflagged: {}\n", t.nodes_visited, t.flagged.len());
            for p in &t.flagged {
                let head: Vec<String> = p.values.iter().take(8).map(|v| v.to_string()).collect();
                let _ = writeln!(text, "  {}  {} …  nonnegative={}", p.choices, head.join(" "), p.nonnegative);
            }
            Report::new(t, text, ok)
        }
        Command::PowerRec { power, depth, b1, branch } => {
            let signs = parse_branch_signs(branch)?;
            let r = solve_power_recurrence(*power, *depth, *b1, &signs, cli.precision)?;
            let text = format!(
                "branch {}\nexact prefix: {}\nvalues:\n{}step residuals:\n{}",
                r.branch,
                r.exact_prefix.to_plain(),
                fmt_floats(&r.seq, digits),
                fmt_residuals(&r.step_residuals, 2)
            );
            Report::new(r, text, true)
        }
        Command::MfamSearch { depth, branch } => {
            let signs = parse_branch_signs(branch)?;
            let r = mfam_search(*depth, &signs, cli.precision)?;
            let text = format!(
                "branch {}\nexact prefix: {}\nvalues:\n{}truncated residuals:\n{}all vanish: {}\n",
                r.run.branch,
                r.run.exact_prefix.to_plain(),
                fmt_floats(&r.run.seq, digits),
                fmt_residuals(&r.mfam20_residuals, 0),
                r.all_vanish
            );
            Report::new(r, text, true)
        }
        Command::DecayProbe { pattern, base, gap, n } => {
            let base = parse_rational(base).map_err(|e| Failure::Usage(format!("--base: {e}")))?;
            let r = decay_probe(pattern, &base, *n, *gap)?;
            let text = format!(
                "gap_ok: {}\ndivisor_zero_ok: {}\nrate: {:.6}\n",
                r.gap_ok, r.divisor_zero_ok, r.rate
            );
            let ok = r.gap_ok;
            Report::new(r, text, ok)
        }
        Command::PaperRegression => {
            let rows = regression::table(cli.precision.max(64));
            let ok = rows.iter().all(|r| r.ok);
            let mut text = String::new();
            for r in &rows {
                let mark = if r.ok { "ok  " } else { "FAIL" };
                let _ = writeln!(text, "{mark} {}: {}", r.id, r.got);
                if !r.ok {
                    let _ = writeln!(text, "     expected {}", r.expected);
                }
            }
            let _ = writeln!(text, "{} of {} match", rows.iter().filter(|r| r.ok).count(), rows.len());
            Report::new(rows, text, ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = serde_json::to_value(&cli).expect("config serializes");
    let outcome = run(&cli);
    match outcome {
        Ok(r) => {
            if cli.json {
                let doc = json!({ "config": config, "result": r.value, "ok": r.ok });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                println!("# config {config}");
                print!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("# config {config}");
            let (msg, code) = match f {
                Failure::Usage(m) => (m, 2),
                Failure::Math(e) => (e.to_string(), 1),
            };
            if cli.json {
                println!("{}", json!({ "config": config, "error": msg, "ok": false }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
