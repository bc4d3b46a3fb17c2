//! Step-by-step quadratic recurrences with explicit root selection.
//!
//! At step `m` the unknown `x` satisfies `x = A·x² + B·x + C`, where `B` is linear and `C`
//! quadratic in earlier terms. The chosen root is `(1 − B ± √D)/(2A)` with
//! `D = (B − 1)² − 4AC`. Terms stay rational while `D` is a rational square.

use num_traits::Signed;
use serde::Serialize;

use super::seq::{FloatSeq, RationalSeq};
use crate::arith::{binomial, exact_sqrt, factorial, falling, int, BigFloat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

/// Parses a sign string such as `"--+-"`; `−` is accepted for minus.
pub fn parse_branch_signs(s: &str) -> Result<Vec<Branch>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '+' => Ok(Branch::Plus),
            '-' | '−' => Ok(Branch::Minus),
            _ => Err(Error::Parse(format!("branch sign must be + or -, got {c:?}"))),
        })
        .collect()
}

pub fn format_branch_signs(b: &[Branch]) -> String {
    b.iter().map(|b| if *b == Branch::Plus { '+' } else { '-' }).collect()
}

/// Coefficients of one step as weights on earlier terms.
struct StepForm {
    a: Rational,
    lin: Vec<(usize, Rational)>,
    quad: Vec<(usize, usize, Rational)>,
}

fn eval_exact(f: &StepForm, v: &[Rational]) -> (Rational, Rational) {
    let b = f.lin.iter().map(|(i, w)| w * &v[*i]).sum();
    let c = f.quad.iter().map(|(i, j, w)| w * &v[*i] * &v[*j]).sum();
    (b, c)
}

fn eval_float(f: &StepForm, v: &[BigFloat], p: usize) -> (BigFloat, BigFloat) {
    let mut b = BigFloat::zero(p);
    for (i, w) in &f.lin {
        b = b + &BigFloat::from_rational(w, p) * &v[*i];
    }
    let mut c = BigFloat::zero(p);
    for (i, j, w) in &f.quad {
        c = c + &(&BigFloat::from_rational(w, p) * &v[*i]) * &v[*j];
    }
    (b, c)
}

/// Output of a branch run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchRun {
    pub branch: String,
    pub precision: usize,
    /// Leading terms that are exactly rational.
    pub exact_prefix: RationalSeq,
    pub seq: FloatSeq,
    /// Per solved step, `|A x² + (B−1) x + C|` relative to the largest of its three terms.
    pub step_residuals: FloatSeq,
}

fn solve_steps(
    init: Vec<Rational>,
    depth: usize,
    signs: &[Branch],
    precision: usize,
    form: impl Fn(usize) -> StepForm,
) -> Result<BranchRun> {
    if precision < 64 {
        return Err(Error::InvalidArgument("precision must be at least 64 digits".into()));
    }
    let start = init.len();
    let steps = depth.saturating_sub(start);
    if signs.len() < steps {
        return Err(Error::InvalidArgument(format!("need {steps} branch signs, got {}", signs.len())));
    }
    let p = precision;
    let tol = BigFloat::pow10(-((p / 2) as i64), p);
    let mut exact = init;
    let mut floats: Option<Vec<BigFloat>> = None;
    let mut residuals = Vec::with_capacity(steps);
    for (step, m) in (start..depth).enumerate() {
        let f = form(m);
        let sign = signs[step].sign();
        if floats.is_none() {
            let (b, c) = eval_exact(&f, &exact);
            let bm1 = b - int(1);
            let d = &bm1 * &bm1 - int(4) * &f.a * &c;
            if d.is_negative() {
                return Err(Error::ComplexRoot { step: m });
            }
            if let Some(s) = exact_sqrt(&d) {
                exact.push((-bm1 + s * int(sign)) / (int(2) * &f.a));
                residuals.push(BigFloat::zero(p));
                continue;
            }
            floats = Some(exact.iter().map(|r| BigFloat::from_rational(r, p)).collect());
        }
        let v = floats.as_mut().expect("numeric mode");
        let (b, c) = eval_float(&f, v, p);
        let a = BigFloat::from_rational(&f.a, p);
        let bm1 = b - BigFloat::from_int(1, p);
        let d = &bm1 * &bm1 - &(&BigFloat::from_int(4, p) * &a) * &c;
        if d.is_negative() {
            return Err(Error::ComplexRoot { step: m });
        }
        let root = &d.sqrt() * &BigFloat::from_int(sign, p);
        let x = &(&root - &bm1) / &(&BigFloat::from_int(2, p) * &a);
        let t2 = &(&a * &x) * &x;
        let t1 = &bm1 * &x;
        let scale = [t2.abs(), t1.abs(), c.abs(), BigFloat::from_int(1, p)]
            .into_iter()
            .fold(BigFloat::zero(p), |acc, t| if t > acc { t } else { acc });
        let res = (&(&t2 + &t1) + &c).abs() / scale;
        if res > tol {
            return Err(Error::PrecisionExhausted { step: m, residual: res.to_string_digits(10) });
        }
        residuals.push(res);
        v.push(x);
    }
    let values = floats.unwrap_or_else(|| exact.iter().map(|r| BigFloat::from_rational(r, p)).collect());
    Ok(BranchRun {
        branch: format_branch_signs(&signs[..steps]),
        precision: p,
        exact_prefix: RationalSeq::from_zero(exact),
        seq: FloatSeq { precision: p, values },
        step_residuals: FloatSeq { precision: p, values: residuals },
    })
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// Step `m ≥ 2` of `b_m = Σ_{r≤m} Σ_{h≤r} (C(r,h)·(m+h−r)!/(m−r)!)^n·b_{m+h−r}·b_r`.
fn power_form(n: u32, m: usize) -> StepForm {
    let pw = |r: Rational| num_traits::pow(r, n as usize);
    let a = pw(fact(m));
    let lin = (0..m).map(|r| (r, int(2) * pw(fact(m) / fact(m - r)))).collect();
    let mut quad = Vec::new();
    for r in 1..m {
        for h in 0..r {
            let (mi, ri, hi) = (m as i64, r as i64, h as i64);
            let w = binomial(ri, hi) * Rational::from_integer(falling(mi + hi - ri, hi));
            quad.push((m + h - r, r, pw(w)));
        }
    }
    StepForm { a, lin, quad }
}

/// Solves the diagonal projector equation of the `n`-pair algebra, `b_m = 𝔟_{m,n}/(m!)ⁿ`,
/// from `b_0 = 0`, `b_1 = b1_choice`; `branch_signs[i]` picks the root at step `m = i + 2`.
pub fn solve_power_recurrence(power: u32, depth: usize, b1_choice: u8, branch_signs: &[Branch], precision: usize) -> Result<BranchRun> {
    if b1_choice > 1 {
        return Err(Error::InvalidArgument("b1 choice must be 0 or 1".into()));
    }
    solve_power_recurrence_from(power, depth, int(0), int(b1_choice as i64), branch_signs, precision)
}

/// As [`solve_power_recurrence`] with arbitrary starting values; they must solve steps 0 and 1.
pub fn solve_power_recurrence_from(
    power: u32,
    depth: usize,
    b0: Rational,
    b1: Rational,
    branch_signs: &[Branch],
    precision: usize,
) -> Result<BranchRun> {
    if power == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if &b0 * &b0 != b0 || &b1 * &b1 + int(2) * &b0 * &b1 != b1 {
        return Err(Error::InvalidArgument("b0, b1 do not solve the first two steps".into()));
    }
    let init: Vec<Rational> = [b0, b1].into_iter().take(depth).collect();
    solve_steps(init, depth, branch_signs, precision, move |m| power_form(power, m))
}

/// Step `m` of the `(m, m, m−1, m−1)` diagonal system of the two-pair band problem.
fn mfam_form(m: usize) -> StepForm {
    if m == 0 {
        return StepForm { a: int(1), lin: Vec::new(), quad: Vec::new() };
    }
    let fm = fact(m) * fact(m - 1);
    let mut lin = vec![(0, int(2))];
    for r in 1..m {
        let d = fact(m - r);
        lin.push((r, int(2) * &fm / (&d * &d)));
    }
    // Left factor 𝔞_{m+h−r}, right factor 𝔞_r; h contractions in the first pair, h − 1 in the second.
    // The h = r terms are linear in 𝔞_m and sit in `lin`.
    let mut quad = Vec::new();
    for r in 1..m {
        for h in 1..r {
            let (mi, ri, hi) = (m as i64, r as i64, h as i64);
            let w1 = binomial(ri, hi) * Rational::from_integer(falling(mi + hi - ri, hi));
            let w2 = binomial(ri - 1, hi - 1) * Rational::from_integer(falling(mi + hi - ri - 1, hi - 1));
            quad.push((m + h - r, r, w1 * w2));
        }
    }
    StepForm { a: fm, lin, quad }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MfamReport {
    pub run: BranchRun,
    /// Truncated adjoint-equation residuals, one per index.
    pub mfam20_residuals: FloatSeq,
    /// Weight that multiplies the first omitted term of each truncated sum.
    pub next_weights: FloatSeq,
    /// True when every residual is below `10^(−precision/2)`.
    pub all_vanish: bool,
}

/// Weight of `𝔞_{m+h}` in the adjoint equation at index `m`.
fn mfam20_weight(m: usize, h: usize) -> Rational {
    let (mi, hi) = (m as i64, h as i64);
    if m == 0 {
        return fact(h) * fact(h);
    }
    binomial(mi + hi, mi) * Rational::from_integer(falling(mi + hi, hi)) * binomial(mi + hi - 1, mi - 1) * Rational::from_integer(falling(mi + hi - 1, hi))
}

/// Generates the branch named by `branch_signs` (one sign per index from 0) and
/// evaluates the adjoint equations truncated at `depth`.
pub fn mfam_search(depth: usize, branch_signs: &[Branch], precision: usize) -> Result<MfamReport> {
    let run = solve_steps(Vec::new(), depth, branch_signs, precision, mfam_form)?;
    let p = precision;
    let v = &run.seq.values;
    let mut res = Vec::with_capacity(v.len());
    let mut next = Vec::with_capacity(v.len());
    for m in 0..v.len() {
        let mut s = BigFloat::zero(p);
        for h in 0..v.len() - m {
            s = s + &BigFloat::from_rational(&mfam20_weight(m, h), p) * &v[m + h];
        }
        // For m ≥ 1 the equation reads 𝔞_m = −Σ, for m = 0 it reads 𝔞_0 = Σ.
        let r = if m == 0 { &v[m] - &s } else { &v[m] + &s };
        res.push(r);
        next.push(BigFloat::from_rational(&mfam20_weight(m, v.len() - m), p));
    }
    let tol = BigFloat::pow10(-((p / 2) as i64), p);
    let all_vanish = res.iter().all(|r| r.abs() <= tol);
    Ok(MfamReport {
        run,
        mfam20_residuals: FloatSeq { precision: p, values: res },
        next_weights: FloatSeq { precision: p, values: next },
        all_vanish,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, DEFAULT_PRECISION};
    use num_traits::Zero;

    fn close(a: &BigFloat, b: &BigFloat, digits: i64) -> bool {
        (a - b).abs() < BigFloat::pow10(-digits, a.precision())
    }

    #[test]
    fn power_two_branches() {
        let p = DEFAULT_PRECISION;
        let minus = solve_power_recurrence(2, 3, 1, &parse_branch_signs("-").unwrap(), p).unwrap();
        let s33 = BigFloat::from_int(33, p).sqrt();
        let want = -(&(BigFloat::from_int(7, p) + s33.clone()) / &BigFloat::from_int(8, p));
        assert!(close(&minus.seq.values[2], &want, 100));
        assert_eq!(minus.exact_prefix.values, vec![int(0), int(1)]);
        let plus = solve_power_recurrence(2, 3, 1, &[Branch::Plus], p).unwrap();
        let want = &(s33 - BigFloat::from_int(7, p)) / &BigFloat::from_int(8, p);
        assert!(close(&plus.seq.values[2], &want, 100));
    }

    #[test]
    fn power_one_is_integral() {
        let r = solve_power_recurrence(1, 3, 1, &[Branch::Minus], 64).unwrap();
        assert_eq!(r.exact_prefix.values, vec![int(0), int(1), int(-1)]);
        let z = solve_power_recurrence(1, 6, 0, &parse_branch_signs("----").unwrap(), 64).unwrap();
        assert!(z.exact_prefix.values.iter().all(|v| v.is_zero()));
        let one = solve_power_recurrence_from(1, 6, int(1), int(0), &parse_branch_signs("++++").unwrap(), 64).unwrap();
        assert_eq!(one.exact_prefix.values, vec![int(1), int(0), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn mfam_values() {
        let p = DEFAULT_PRECISION;
        let r = mfam_search(5, &parse_branch_signs("−−−+−").unwrap(), p).unwrap();
        assert_eq!(r.run.exact_prefix.values, vec![int(0), int(0), int(0), rat(1, 12)]);
        let s = BigFloat::from_int(241, p).sqrt();
        let want = -(&(BigFloat::from_int(23, p) + s) / &BigFloat::from_int(288, p));
        assert!(close(&r.run.seq.values[4], &want, 100));
        assert!(!r.all_vanish);
        let z = mfam_search(6, &parse_branch_signs("------").unwrap(), p).unwrap();
        assert!(z.all_vanish && z.mfam20_residuals.values.iter().all(|v| v.is_zero()));
    }

    /// Diagonal coefficient of `P·P` at step `m`, straight from the pairwise normal-ordering rule.
    fn mfam_product_oracle(v: &[Rational], m: usize) -> Rational {
        let one = crate::arith::GaussianRational::from_int(1);
        let second = |s: u32| s.saturating_sub(1);
        let mut acc = Rational::zero();
        for (s, vs) in v.iter().enumerate() {
            for (r, vr) in v.iter().enumerate() {
                let (s, r) = (s as u32, r as u32);
                let first = crate::algebra::pair_product(s, s, r, r, &one);
                let other = crate::algebra::pair_product(second(s), second(s), second(r), second(r), &one);
                let pick = |t: &[((u32, u32), crate::arith::GaussianRational)], d: u32| {
                    t.iter().find(|(e, _)| *e == (d, d)).map(|(_, c)| c.re.clone()).unwrap_or_else(Rational::zero)
                };
                acc += pick(&first, m as u32) * pick(&other, second(m as u32)) * vs * vr;
            }
        }
        acc
    }

    #[test]
    fn mfam_step_matches_product_oracle() {
        let v: Vec<Rational> = [3, -1, 2, 5, -4, 1, 7, -2].iter().enumerate().map(|(i, n)| rat(*n, i as i64 + 1)).collect();
        for m in 0..v.len() {
            let f = mfam_form(m);
            let (b, c) = eval_exact(&f, &v[..m]);
            let x = &v[m];
            let want = mfam_product_oracle(&v[..=m], m);
            assert_eq!(&f.a * x * x + b * x + c, want, "m={m}");
        }
    }

    #[test]
    fn fifth_mfam_term() {
        let p = DEFAULT_PRECISION;
        let r = mfam_search(6, &parse_branch_signs("---+--").unwrap(), p).unwrap();
        let s = BigFloat::from_int(241, p).sqrt();
        let f = |n: i64| BigFloat::from_int(n, p);
        let inner = (&f(60281) + &(&f(4040) * &s)).sqrt();
        let want = &(&(&f(341) + &(&f(20) * &s)) - &inner) / &f(5760);
        assert!(close(&r.run.seq.values[5], &want, 100), "{}", r.run.seq.values[5]);
    }

    #[test]
    fn third_power_two_term() {
        let p = DEFAULT_PRECISION;
        let r = solve_power_recurrence(2, 4, 1, &parse_branch_signs("--").unwrap(), p).unwrap();
        let s = BigFloat::from_int(33, p).sqrt();
        let f = |n: i64| BigFloat::from_int(n, p);
        let inner = (&f(2089) + &(&f(360) * &s)).sqrt();
        let want = &(&(&f(46) + &(&f(9) * &s)) - &inner) / &f(72);
        assert!(close(&r.seq.values[3], &want, 100), "{}", r.seq.values[3]);
    }

    #[test]
    fn guards() {
        assert!(matches!(solve_power_recurrence(2, 5, 1, &[Branch::Minus], 128), Err(Error::InvalidArgument(_))));
        assert!(solve_power_recurrence(2, 3, 1, &[Branch::Minus], 32).is_err());
        assert!(parse_branch_signs("+x").is_err());
    }
}
