//! One line per acceptance criterion. Run with `--nocapture` to see the table.

use std::time::{Duration, Instant};

use ncplane::algebra::{normal_order_pow, parse_word, rewrite_normalize, AlgebraMatrix, MultiIndex, NCPolynomial, ThetaParams};
use ncplane::arith::{int, rat, BigFloat, GaussianRational as G, NCScalar, Rational};
use ncplane::projector::{band4_forced_zeros, dual_path_report, CoeffGrid4D};
use ncplane::random::Fuzz;
use ncplane::selfadjoint::{sa_check_necessary, sa_complete, sa_iterative_oracle, sa_residual, RealCoeffGrid};
use ncplane::sequences::{
    aaa_residuals, ac_residuals, aggregate_identity_residuals, all_zero, b_identity_residuals, bernoulli_a_seq, decay_probe,
    enumerate_p0, mfam_search, parse_branch_signs, solve_b_of_p, solve_power_recurrence, ELKIES_PATTERN,
};
use num_traits::Zero;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (pass, detail) = f();
    Outcome { id, pass, detail, elapsed: t.elapsed() }
}

fn plane(th: Rational) -> ThetaParams {
    ThetaParams::single(th).unwrap()
}

fn poly(tp: &ThetaParams, terms: &[(&[u32], G)]) -> NCPolynomial {
    let th = tp.coeff_theta().clone();
    NCPolynomial::from_terms(tp.clone(), terms.iter().map(|(e, c)| (MultiIndex(e.to_vec()), NCScalar::from_gaussian(c.clone(), &th))))
}

fn c1_normal_ordering() -> (bool, String) {
    let mut cases = 0;
    for th in [rat(1, 3), int(1), rat(5, 2)] {
        let tp = plane(th.clone());
        for n in 0..=10u32 {
            for m in 0..=10u32 {
                let mut w = vec![1usize; n as usize];
                w.extend(std::iter::repeat(0).take(m as usize));
                if rewrite_normalize(&w, &tp).unwrap() != normal_order_pow(n, m, &th).unwrap() {
                    return (false, format!("mismatch at n={n} m={m} theta={th}"));
                }
                cases += 1;
            }
        }
    }
    (true, format!("{cases} cases"))
}

fn c2_worked_examples() -> (bool, String) {
    let th = rat(3, 7);
    let tp = plane(th.clone());
    let a = G::imag(th.clone());
    let one = G::from_int(1);
    let checks = [
        ("y y x", poly(&tp, &[(&[0, 1], a.scale(&int(2))), (&[1, 2], one.clone())])),
        ("y y x x", poly(&tp, &[(&[0, 0], (&a * &a).scale(&int(2))), (&[1, 1], a.scale(&int(4))), (&[2, 2], one.clone())])),
        ("y x x x", poly(&tp, &[(&[2, 0], a.scale(&int(3))), (&[3, 1], one.clone())])),
    ];
    for (w, want) in &checks {
        if rewrite_normalize(&parse_word(w, 2).unwrap(), &tp).unwrap() != *want {
            return (false, format!("{w} differs"));
        }
    }
    let (t12, t34) = (rat(2, 3), int(5));
    let tp4 = ThetaParams::new(vec![t12.clone(), t34.clone()]).unwrap();
    let want = poly(
        &tp4,
        &[
            (&[1, 1, 1, 1], one.clone()),
            (&[1, 1, 0, 0], G::imag(t34.clone())),
            (&[0, 0, 1, 1], G::imag(t12.clone())),
            (&[0, 0, 0, 0], G::real(-(&t12 * &t34))),
        ],
    );
    let got = rewrite_normalize(&parse_word("x4 x2 x3 x1", 4).unwrap(), &tp4).unwrap();
    (got == want, "y²x, y²x², yx³, x₄x₂x₃x₁".into())
}

fn c3_axioms() -> (bool, String) {
    let mut f = Fuzz::new(3);
    for i in 0..500 {
        let tp = if i % 2 == 0 { plane(f.theta()) } else { ThetaParams::new(vec![f.theta(), f.theta()]).unwrap() };
        let (a, b, c) = (f.polynomial(&tp, 3, 2), f.polynomial(&tp, 3, 2), f.polynomial(&tp, 3, 2));
        let ab = a.nc_multiply(&b).unwrap();
        if ab.nc_multiply(&c).unwrap() != a.nc_multiply(&b.nc_multiply(&c).unwrap()).unwrap() {
            return (false, format!("associativity case {i}"));
        }
        if ab.adjoint() != b.adjoint().nc_multiply(&a.adjoint()).unwrap() || a.adjoint().adjoint() != a {
            return (false, format!("adjoint case {i}"));
        }
        let th = f.theta();
        let tp1 = plane(th.clone());
        let x = NCPolynomial::generator(tp1.clone(), 0);
        let y = NCPolynomial::generator(tp1.clone(), 1);
        let comm = y.nc_multiply(&x).unwrap().try_sub(&x.nc_multiply(&y).unwrap()).unwrap();
        if comm != NCPolynomial::constant(tp1, G::imag(th)) {
            return (false, format!("commutator case {i}"));
        }
        let tp0 = plane(int(0));
        let (p, q) = (f.polynomial(&tp0, 4, 3), f.polynomial(&tp0, 4, 3));
        if p.nc_multiply(&q).unwrap() != p.commutative_product(&q).unwrap() {
            return (false, format!("theta=0 case {i}"));
        }
    }
    (true, "500 cases each".into())
}

fn c4_dual_path() -> (bool, String) {
    let mut f = Fuzz::new(4);
    for i in 0..50 {
        let th = f.theta();
        let g = f.grid2d(th, 8, 5);
        let r = dual_path_report(&g).unwrap();
        if !(r.idem_match && r.adj_match) {
            return (false, format!("grid {i}"));
        }
    }
    (true, "50 grids, idem and adj".into())
}

fn c5_bernoulli() -> (bool, String) {
    let want = [
        rat(1, 2),
        rat(1, 4),
        rat(1, 2),
        rat(17, 8),
        rat(31, 2),
        rat(691, 4),
        rat(5461, 2),
        rat(929569, 16),
        rat(3202291, 2),
        rat(221930581, 4),
        rat(4722116521, 2),
    ];
    if bernoulli_a_seq(10).values != want {
        return (false, "a_0..a_10 differ".into());
    }
    if !all_zero(&ac_residuals(&bernoulli_a_seq(50))) || !all_zero(&aaa_residuals(30)) {
        return (false, "recurrence residual".into());
    }
    for p in 0..=10 {
        let b = solve_b_of_p(p, 15);
        if !all_zero(&b_identity_residuals(p, &b)) {
            return (false, format!("defining identity p={p}"));
        }
        if !aggregate_identity_residuals(p, &b).iter().all(|(x, y)| x.is_zero() && y.is_zero()) {
            return (false, format!("aggregate identity p={p}"));
        }
    }
    (true, "a_0..a_10, ac m<=50, aaa n<=30, b_k(p) p<=10 n<=15".into())
}

/// Criterion 6 plus the converse experiment count.
fn c6_selfadjoint() -> (bool, String) {
    let mut grids = 0;
    let mut converse_nonzero = Vec::new();
    let mut f = Fuzz::new(6);
    for th in [rat(1, 2), int(1), rat(7, 3)] {
        let mut all: Vec<RealCoeffGrid> = Vec::new();
        for p in 0..=12 {
            for q in 0..=12 {
                all.push(RealCoeffGrid::new(th.clone(), [((p, q), int(1))]));
            }
        }
        for _ in 0..20 {
            all.push(f.real_grid(th.clone(), 10, 12));
        }
        let dense = (0..=12).flat_map(|p| (0..=12).map(move |q| ((p, q), rat(p as i64 - q as i64, 1 + p as i64 + q as i64))));
        all.push(RealCoeffGrid::new(th.clone(), dense));
        for g in &all {
            let c = sa_complete(g);
            match sa_iterative_oracle(g) {
                Ok(o) if o == c => {}
                Ok(_) => return (false, format!("completion differs from oracle on {:?}", g.re_entries().keys().next())),
                Err(e) => return (false, format!("oracle error {e}")),
            }
            if !sa_residual(&c).unwrap().is_zero() {
                converse_nonzero.push(g.clone());
            }
            grids += 1;
        }
    }
    let tp = plane(rat(2, 5));
    for i in 0..100 {
        let t = f.selfadjoint_polynomial(&tp, 6, 6);
        if !sa_check_necessary(&t).map(|r| r.ok).unwrap_or(false) {
            return (false, format!("S + S* case {i} fails the necessary check"));
        }
    }
    (true, format!("{grids} grids equal to oracle; 100 S+S* pass; converse T - T* nonzero on {} grids", converse_nonzero.len()))
}

fn c7_branches() -> (bool, String) {
    let p = 128;
    let tol = BigFloat::pow10(-30, p);
    let r = solve_power_recurrence(2, 3, 1, &parse_branch_signs("-").unwrap(), p).unwrap();
    let want = -(&(BigFloat::from_int(7, p) + BigFloat::from_int(33, p).sqrt()) / &BigFloat::from_int(8, p));
    let d1 = (&r.seq.values[2] - &want).abs();
    let f = |n: i64| BigFloat::from_int(n, p);
    let m = mfam_search(6, &parse_branch_signs("---+--").unwrap(), p).unwrap();
    let exact3 = m.run.exact_prefix.get(3) == Some(&rat(1, 12));
    let s241 = f(241).sqrt();
    let want4 = -(&(f(23) + s241.clone()) / &f(288));
    let d2 = (&m.run.seq.values[4] - &want4).abs();
    // Next terms on the same branches.
    let r3 = solve_power_recurrence(2, 4, 1, &parse_branch_signs("--").unwrap(), p).unwrap();
    let s33 = f(33).sqrt();
    let want3 = &(&(&f(46) + &(&f(9) * &s33)) - &(&f(2089) + &(&f(360) * &s33)).sqrt()) / &f(72);
    let d3 = (&r3.seq.values[3] - &want3).abs();
    let want5 = &(&(&f(341) + &(&f(20) * &s241)) - &(&f(60281) + &(&f(4040) * &s241)).sqrt()) / &f(5760);
    let d5 = (&m.run.seq.values[5] - &want5).abs();
    let pass = d1 < tol && exact3 && d2 < tol && d3 < tol && d5 < tol;
    (
        pass,
        format!(
            "b2 = {} (err {:.1e}), b3 err {:.1e}, a3 = 1/12 exact: {exact3}, a4 err {:.1e}, a5 err {:.1e}",
            r.seq.values[2].to_string_digits(20),
            d1.to_f64(),
            d3.to_f64(),
            d2.to_f64(),
            d5.to_f64()
        ),
    )
}

fn c8_p0() -> (bool, String) {
    let t = enumerate_p0(24, 8).unwrap();
    let zero = vec![0i128; 24];
    let mut one = vec![0i128; 24];
    one[0] = 1;
    let got: Vec<_> = t.flagged.iter().map(|p| p.values.clone()).collect();
    (got == vec![zero, one], format!("{} flagged, {} nodes", t.flagged.len(), t.nodes_visited))
}

/// Returns `(strict gap product, weaker divisibility constraint and rate)`.
fn c9_elkies() -> ((bool, String), (bool, String)) {
    let r = decay_probe(&ELKIES_PATTERN, &int(2), 300, 3).unwrap();
    let bound = 3f64.sqrt() / 2.0 + 1e-3;
    let prod = &r.b.values[1] * &r.b.values[4];
    (
        (r.gap_ok, format!("b_n b_(n+3) = 0 for all n: {}; b_1 b_4 = {prod}", r.gap_ok)),
        (r.divisor_zero_ok && r.rate <= bound, format!("b_n = 0 for 3 | n: {}; rate {:.6} <= {:.6}", r.divisor_zero_ok, r.rate, bound)),
    )
}

fn c10_band4() -> (bool, String) {
    let th = (int(1), rat(2, 3));
    let mut seeded = 0;
    for p in 0..=3u32 {
        for (u, v) in [(p, p), (p, p + 1), (p + 1, p), (p + 1, p + 1)] {
            for idx in [[p, p + 1, u, v], [p + 1, p, u, v]] {
                let g = CoeffGrid4D::new(th.clone(), [(idx, G::from_int(1))]);
                let r = band4_forced_zeros(&g, 1).unwrap();
                if !r.violations.iter().any(|z| z.index == idx) {
                    return (false, format!("{idx:?} not flagged"));
                }
                seeded += 1;
            }
        }
    }
    let chain = CoeffGrid4D::new(th.clone(), [([0, 1, 0, 1], G::from_int(1)), ([0, 1, 1, 1], G::from_int(2))]);
    let r = band4_forced_zeros(&chain, 1).unwrap();
    let ids: Vec<_> = r.violations.iter().map(|z| (z.index, z.constraint.as_str())).collect();
    if ids != vec![([0, 1, 0, 1], "mm2"), ([0, 1, 1, 1], "mm0111")] {
        return (false, format!("chain order {ids:?}"));
    }
    let clean = band4_forced_zeros(&CoeffGrid4D::new(th, [([0, 0, 0, 0], G::from_int(1))]), 1).unwrap().is_clean();
    (clean, format!("{seeded} seeded edge entries flagged; mm2 then mm0111; constant 1 clean: {clean}"))
}

fn c11_fuzz() -> (bool, String) {
    let mut f = Fuzz::new(11);
    for i in 0..1000 {
        let tp = plane(f.theta());
        let n = 1 + i % 2;
        let m = f.selfadjoint_matrix(n, &tp, 3);
        if m.mul(&m).unwrap() == m {
            return (false, format!("candidate {i} is idempotent"));
        }
    }
    let tp = plane(int(1));
    for i in 0..50 {
        let a = f.scalar_projector(2, &tp);
        let b = f.scalar_projector(1 + i % 3, &tp);
        let s: AlgebraMatrix = a.direct_sum(&b).unwrap();
        if !s.assert_scalar_projector().map(|r| r.all_scalar).unwrap_or(false) {
            return (false, format!("constructed projector {i}"));
        }
    }
    (true, "1000 candidates, none idempotent; 50 constructed projectors scalar".into())
}

// Runs without the libtest harness so the criterion lines always reach the output.
fn main() {
    let mut out = vec![
        run("1 normal ordering oracle", c1_normal_ordering),
        run("2 worked examples", c2_worked_examples),
        run("3 algebra axioms", c3_axioms),
        run("4 dual-path residuals", c4_dual_path),
        run("5 Bernoulli suite", c5_bernoulli),
        run("6 self-adjoint completion", c6_selfadjoint),
        run("7 branch values", c7_branches),
        run("8 P0 enumeration", c8_p0),
    ];
    let t = Instant::now();
    let (strict, weak) = c9_elkies();
    let e = t.elapsed();
    out.push(Outcome { id: "9a Elkies gap-3 products", pass: strict.0, detail: strict.1, elapsed: e });
    out.push(Outcome { id: "9b Elkies vanishing and rate", pass: weak.0, detail: weak.1, elapsed: e });
    out.push(run("10 R4 forced zeros", c10_band4));
    out.push(run("11 projector fuzz", c11_fuzz));

    for o in &out {
        println!("{} {:<30} {:>8.2?}  {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.elapsed, o.detail);
    }
    let limits = [("1 normal ordering oracle", 60), ("5 Bernoulli suite", 10), ("8 P0 enumeration", 120)];
    for (id, secs) in limits {
        let o = out.iter().find(|o| o.id == id).unwrap();
        assert!(o.elapsed < Duration::from_secs(secs), "{id} took {:?}", o.elapsed);
    }
    // The Elkies pattern meets b_n = 0 for 3 | n, not b_n·b_(n+3) = 0: b_1·b_4 = −1/32.
    let strict = out.iter().find(|o| o.id.starts_with("9a")).unwrap();
    assert!(!strict.pass && strict.detail.ends_with("-1/32"));
    let failed: Vec<_> = out.iter().filter(|o| !o.pass && !o.id.starts_with("9a")).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
