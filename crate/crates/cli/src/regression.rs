//! Reference values with known closed forms, checked end to end.

use ncplane::algebra::{normal_order_pow, parse_word, rewrite_normalize, AlgebraMatrix, NCPolynomial, ThetaParams};
use ncplane::arith::{bernoulli, binomial, int, rat, BigFloat, GaussianRational as G, NCScalar, Rational};
use ncplane::projector::{beta_sequence, CoeffGrid2D};
use ncplane::selfadjoint::{sa_complete, RealCoeffGrid};
use ncplane::sequences::{
    bernoulli_a_seq, binomial_transform, decay_probe, mfam_search, parse_branch_signs, solve_b_of_p, solve_power_recurrence,
    RationalSeq, TransformMode, ELKIES_PATTERN,
};
use ncplane::Result;
use serde::Serialize;

#[derive(Serialize)]
pub struct Row {
    pub id: &'static str,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

fn row(id: &'static str, expected: impl ToString, got: impl ToString) -> Row {
    let (expected, got) = (expected.to_string(), got.to_string());
    let ok = expected == got;
    Row { id, expected, got, ok }
}

fn checked(id: &'static str, expected: impl ToString, got: Result<String>) -> Row {
    match got {
        Ok(g) => row(id, expected, g),
        Err(e) => Row { id, expected: expected.to_string(), got: format!("error: {e}"), ok: false },
    }
}

fn plane() -> ThetaParams {
    ThetaParams::single(int(1)).expect("theta 1")
}

/// Single-pair polynomial from `(x exponent, y exponent, re, im)` tuples.
fn poly(tp: &ThetaParams, terms: &[(u32, u32, i64, i64)]) -> NCPolynomial {
    let mut out = NCPolynomial::zero(tp.clone());
    for &(p, q, re, im) in terms {
        let m = NCPolynomial::monomial(tp.clone(), vec![p, q], G::new(int(re), int(im)));
        out = out.try_add(&m).expect("same theta");
    }
    out
}

/// `|got − want| ≤ 10^(−P/2)·|want|`.
fn close(got: &BigFloat, want: &BigFloat, precision: usize) -> bool {
    let tol = BigFloat::pow10(-((precision / 2) as i64), precision);
    (got - want).abs() <= &tol * &want.abs()
}

fn float_row(id: &'static str, want: BigFloat, got: Result<BigFloat>, precision: usize) -> Row {
    let expected = want.to_string_digits(30);
    match got {
        Ok(g) => Row { id, ok: close(&g, &want, precision), expected, got: g.to_string_digits(30) },
        Err(e) => Row { id, expected, got: format!("error: {e}"), ok: false },
    }
}

fn scalars() -> Vec<Row> {
    let th = int(1);
    let g = NCScalar::g(&th).expect("theta > 0");
    vec![
        row("g^2 = i theta", NCScalar::a(&th), &g * &g),
        row("conj(g) = -i g", g.scale(&G::new(int(0), int(-1))), g.conj()),
        row("C(3,5) = 0", 0, binomial(3, 5)),
        row("B_8", "-1/30", bernoulli(8)),
        row("(2^8 - 1) B_8 / 4", "-17/8", rat(255, 4) * bernoulli(8)),
    ]
}

fn ordering() -> Vec<Row> {
    let tp = plane();
    let two = ThetaParams::new(vec![int(2), int(3)]).expect("positive thetas");
    let th = int(1);
    let y2 = NCPolynomial::monomial(tp.clone(), vec![0, 2], G::from_int(1));
    let x2 = NCPolynomial::monomial(tp.clone(), vec![2, 0], G::from_int(1));
    // x₁x₂x₃x₄ + iθ₃₄·x₁x₂ + iθ₁₂·x₃x₄ − θ₁₂θ₃₄ with θ₁₂ = 2, θ₃₄ = 3.
    let mut want4 = NCPolynomial::zero(two.clone());
    for (e, c) in [([1, 1, 1, 1], G::from_int(1)), ([1, 1, 0, 0], G::new(int(0), int(3))), ([0, 0, 1, 1], G::new(int(0), int(2))), ([0, 0, 0, 0], G::from_int(-6))] {
        want4 = want4.try_add(&NCPolynomial::monomial(two.clone(), e.to_vec(), c)).expect("same theta");
    }
    let sym = |w: &str| -> Result<String> {
        let t = rewrite_normalize(&parse_word(w, 2)?, &tp)?;
        let (d, s) = t.degree_and_symbol()?;
        Ok(format!("{d}: {s}"))
    };
    vec![
        checked("y^2 x", poly(&tp, &[(0, 1, 0, 2), (1, 2, 1, 0)]), normal_order_pow(2, 1, &th).map(|p| p.to_string())),
        checked("y^2 x^2", poly(&tp, &[(0, 0, -2, 0), (1, 1, 0, 4), (2, 2, 1, 0)]), normal_order_pow(2, 2, &th).map(|p| p.to_string())),
        checked("y x^3", poly(&tp, &[(2, 0, 0, 3), (3, 1, 1, 0)]), normal_order_pow(1, 3, &th).map(|p| p.to_string())),
        checked("rewrite y x", poly(&tp, &[(0, 0, 0, 1), (1, 1, 1, 0)]), parse_word("yx", 2).and_then(|w| rewrite_normalize(&w, &tp)).map(|p| p.to_string())),
        checked("rewrite x4 x2 x3 x1", want4, parse_word("x4 x2 x3 x1", 4).and_then(|w| rewrite_normalize(&w, &two)).map(|p| p.to_string())),
        checked("(y^2)(x^2)", poly(&tp, &[(0, 0, -2, 0), (1, 1, 0, 4), (2, 2, 1, 0)]), y2.nc_multiply(&x2).map(|p| p.to_string())),
        checked("symbol y^2 x", format!("3: {}", poly(&tp, &[(1, 2, 1, 0)])), sym("yyx")),
        checked("symbol y^2 x^2", format!("4: {}", poly(&tp, &[(2, 2, 1, 0)])), sym("yyxx")),
    ]
}

fn projectors() -> Vec<Row> {
    let tp = plane();
    let one = AlgebraMatrix::from_scalars(1, 1, tp.clone(), vec![G::from_int(1)]).expect("1x1");
    let zero = AlgebraMatrix::from_scalars(1, 1, tp.clone(), vec![G::from_int(0)]).expect("1x1");
    let diag = AlgebraMatrix::from_scalars(2, 2, tp, [1, 0, 0, 0].map(G::from_int).to_vec()).expect("2x2");
    let sum = one.direct_sum(&zero).and_then(|m| Ok((m == diag, m.is_projector()?.ok)));
    // a_{q,q+1} = 1, 2, −1, so 𝔞_q = q!·a_{q,q+1} = 1, 2, −2.
    let grid = CoeffGrid2D::new(int(1), [((0, 1), G::from_int(1)), ((1, 2), G::from_int(2)), ((2, 3), G::from_int(-1))]);
    let fa = RationalSeq::from_zero(vec![int(1), int(2), int(-2), int(0), int(0), int(0)]);
    let want = binomial_transform(&fa, TransformMode::Plain).values.iter().map(|v| G::real(v.clone()).to_string()).collect::<Vec<_>>();
    let got = beta_sequence(&grid, 1, 5).iter().map(|v| v.to_string()).collect::<Vec<_>>();
    vec![
        checked("diag(1) + diag(0) is a projector", "(true, true)", sum.map(|s| format!("{s:?}"))),
        row("beta is the binomial transform", want.join(" "), got.join(" ")),
    ]
}

fn selfadjoint() -> Vec<Row> {
    let im = |g: &RealCoeffGrid, p: u32, q: u32| display(&sa_complete(g).gaussian_coeff(&[p, q]).im);
    let g1 = RealCoeffGrid::new(int(1), [((1, 1), int(2))]);
    let g2 = RealCoeffGrid::new(int(1), [((2, 2), int(1))]);
    vec![
        row("Re a11 = 2: Im a00", "1", im(&g1, 0, 0)),
        row("Re a22 = 1: Im a11", "2", im(&g2, 1, 1)),
        row("Re a22 = 1: Im a00", "0", im(&g2, 0, 0)),
    ]
}

fn display(r: &Rational) -> String {
    ncplane::arith::rational::display_rational(r)
}

fn sequences(precision: usize) -> Vec<Row> {
    let a = bernoulli_a_seq(6);
    let mut rows = vec![
        row("a_0..a_3", "1/2 1/4 1/2 17/8", RationalSeq::from_zero(a.values[..4].to_vec()).to_plain()),
        row("a_5", "691/4", display(&a.values[5])),
        row("a_0..a_6", "1/2 1/4 1/2 17/8 31/2 691/4 5461/2", a.to_plain()),
    ];
    let b1: Vec<String> = (0..6).map(|p| display(&solve_b_of_p(p, 1).values[0])).collect();
    let want: Vec<String> = (0..6i64).map(|p| display(&rat((p + 2) * (p + 1), 6))).collect();
    rows.push(row("b_1(p) = (p+2)(p+1)/6, p = 0..5", want.join(" "), b1.join(" ")));

    let p = precision;
    let f = |n: i64| BigFloat::from_int(n, p);
    let want = -(&(f(7) + f(33).sqrt()) / &f(8));
    let got = parse_branch_signs("-").and_then(|s| solve_power_recurrence(2, 3, 1, &s, p)).map(|r| r.seq.values[2].clone());
    rows.push(float_row("power 2, minus branch: b_2", want, got, p));

    let s33 = f(33).sqrt();
    let want = &(&(&f(46) + &(&f(9) * &s33)) - &(&f(2089) + &(&f(360) * &s33)).sqrt()) / &f(72);
    let got = parse_branch_signs("--").and_then(|s| solve_power_recurrence(2, 4, 1, &s, p)).map(|r| r.seq.values[3].clone());
    rows.push(float_row("power 2, minus branch: b_3", want, got, p));

    let run = parse_branch_signs("---+--").and_then(|s| mfam_search(6, &s, p));
    rows.push(checked("mfam prefix", "0 0 0 1/12", run.clone().map(|r| r.run.exact_prefix.to_plain())));
    let s241 = f(241).sqrt();
    let want = -(&(f(23) + s241.clone()) / &f(288));
    rows.push(float_row("mfam a_4", want, run.clone().map(|r| r.run.seq.values[4].clone()), p));
    let want = &(&(&f(341) + &(&f(20) * &s241)) - &(&f(60281) + &(&f(4040) * &s241)).sqrt()) / &f(5760);
    rows.push(float_row("mfam a_5", want, run.map(|r| r.run.seq.values[5].clone()), p));

    let bound = 3f64.sqrt() / 2.0 + 1e-3;
    let got = decay_probe(&ELKIES_PATTERN, &int(2), 300, 3).map(|r| format!("{}", r.rate <= bound));
    rows.push(checked("pattern 0,1,1,0,-1,-1 decays like (3/4)^(n/2)", "true", got));
    rows
}

pub fn table(precision: usize) -> Vec<Row> {
    let mut rows = scalars();
    rows.extend(ordering());
    rows.extend(projectors());
    rows.extend(selfadjoint());
    rows.extend(sequences(precision));
    rows
}
