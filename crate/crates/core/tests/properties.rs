use ncplane::algebra::{rewrite_normalize, normal_order_pow, GammaDirection, NCPolynomial, ThetaParams};
use ncplane::arith::{int, rat, GaussianRational, NCScalar, Rational};
use ncplane::projector::{
    beta_orthogonality_4d, dual_path_report, projector_residual, CoeffGrid2D, CoeffGrid4D,
};
use ncplane::random::Fuzz;
use ncplane::selfadjoint::{sa_check_necessary, sa_complete, sa_iterative_oracle, sa_residual};
use ncplane::sequences::{
    bfrak_to_b, binomial_transform, bm_residuals, decay_probe, p0_path, prob_residuals, RationalSeq, TransformMode,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn plane(th: Rational) -> ThetaParams {
    ThetaParams::single(th).unwrap()
}

fn two_pairs(a: Rational, b: Rational) -> ThetaParams {
    ThetaParams::new(vec![a, b]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let th = f.theta();
        let x = NCScalar::new(f.gaussian(), f.gaussian(), th.clone()).unwrap();
        let y = NCScalar::new(f.gaussian(), f.gaussian(), th.clone()).unwrap();
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.try_mul(&y).unwrap().conj(), x.conj().try_mul(&y.conj()).unwrap());
        if let Ok(inv) = x.inv() {
            prop_assert!(x.try_mul(&inv).unwrap().is_one());
        }
    }

    #[test]
    fn ring_and_star_laws(seed in any::<u64>(), two in any::<bool>()) {
        let mut f = Fuzz::new(seed);
        let tp = if two { two_pairs(f.theta(), f.theta()) } else { plane(f.theta()) };
        let a = f.polynomial(&tp, 3, 2);
        let b = f.polynomial(&tp, 3, 2);
        let c = f.polynomial(&tp, 3, 2);
        let ab = a.nc_multiply(&b).unwrap();
        prop_assert_eq!(ab.nc_multiply(&c).unwrap(), a.nc_multiply(&b.nc_multiply(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.adjoint(), b.adjoint().nc_multiply(&a.adjoint()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let lhs = a.nc_multiply(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.try_add(&a.nc_multiply(&c).unwrap()).unwrap());
    }

    #[test]
    fn gamma_round_trip(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let th = f.theta();
        let tp = two_pairs(th.clone(), th);
        let a = f.polynomial(&tp, 4, 3);
        let n = a.gamma_convert(GammaDirection::Normalize).unwrap();
        prop_assert_eq!(n.gamma_convert(GammaDirection::Denormalize).unwrap(), a);
    }

    #[test]
    fn rewriting_matches_closed_form(n in 0u32..6, m in 0u32..6, num in 1i64..6, den in 1i64..4) {
        let th = rat(num, den);
        let mut w = vec![1usize; n as usize];
        w.extend(std::iter::repeat(0usize).take(m as usize));
        prop_assert_eq!(rewrite_normalize(&w, &plane(th.clone())).unwrap(), normal_order_pow(n, m, &th).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let tp = plane(f.theta());
        let a = f.nonconstant_polynomial(&tp, 3, 3);
        let b = f.nonconstant_polynomial(&tp, 3, 3);
        let (da, sa) = a.degree_and_symbol().unwrap();
        let (db, sb) = b.degree_and_symbol().unwrap();
        let (dab, sab) = a.nc_multiply(&b).unwrap().degree_and_symbol().unwrap();
        prop_assert_eq!(dab, da + db);
        prop_assert_eq!(sab, sa.commutative_product(&sb).unwrap());
    }

    #[test]
    fn residual_formulas_match_engine(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let th = f.theta();
        let g = f.grid2d(th, 5, 4);
        let r = dual_path_report(&g).unwrap();
        prop_assert!(r.idem_match && r.adj_match);
    }

    #[test]
    fn transforms_invert(vals in proptest::collection::vec((-20i64..20, 1i64..9), 0..64)) {
        let s = RationalSeq::from_zero(vals.iter().map(|&(n, d)| rat(n, d)).collect());
        let p = binomial_transform(&s, TransformMode::Plain);
        prop_assert_eq!(binomial_transform(&p, TransformMode::Inverse), s.clone());
        prop_assert_eq!(binomial_transform(&binomial_transform(&s, TransformMode::Inverse), TransformMode::Plain), s);
    }

    #[test]
    fn p0_paths_are_integral_with_binary_partial_sums(choices in "[01]{1,20}") {
        let path = p0_path(&choices).unwrap();
        let b: Vec<Rational> = path.values.iter().map(|v| int(*v as i64)).collect();
        let sums = binomial_transform(&RationalSeq::from_zero(b), TransformMode::Plain);
        for (c, s) in choices.chars().zip(&sums.values) {
            prop_assert_eq!(s, &int(if c == '1' { 1 } else { 0 }));
        }
        // Every path solves the idempotency equation; only finite ones can solve the adjoint one.
        prop_assert!(prob_residuals(&bfrak_to_b(&path.values)).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn selfadjoint_necessary_direction(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let tp = plane(f.theta());
        let t = f.selfadjoint_polynomial(&tp, 5, 5);
        prop_assert!(sa_residual(&t).unwrap().is_zero());
        prop_assert!(sa_check_necessary(&t).unwrap().ok);
    }

    #[test]
    fn completion_matches_oracle_and_is_selfadjoint(seed in any::<u64>()) {
        let mut f = Fuzz::new(seed);
        let th = f.theta();
        let g = f.real_grid(th, 6, 7);
        let t = sa_complete(&g);
        prop_assert_eq!(sa_iterative_oracle(&g).unwrap(), t.clone());
        prop_assert!(sa_residual(&t).unwrap().is_zero());
    }

    #[test]
    fn admissible_patterns_certify_gap(len in 2usize..8, gap in 1usize..4, seed in any::<u64>()) {
        // Nonzero entries only at positions ≡ 0 mod (gap + 1) within a period divisible by gap + 1.
        let mut f = Fuzz::new(seed);
        let period = len * (gap + 1);
        let pattern: Vec<i8> = (0..period)
            .map(|i| if i % (gap + 1) == 0 { [-1i8, 1][f.rng().gen_range(0..2)] } else { 0 })
            .collect();
        let r = decay_probe(&pattern, &int(3), 60, gap).unwrap();
        prop_assert!(r.gap_ok);
    }
}

#[test]
fn diagonal_grids_match_the_p0_equations() {
    // On a diagonal grid the projector residuals reduce to the scalar P₀ equations.
    for choices in ["0", "1", "01", "010", "0110", "1001", "10000"] {
        let path = p0_path(choices).unwrap();
        let b = bfrak_to_b(&path.values);
        let grid = CoeffGrid2D::new(rat(1, 1), b.iter().enumerate().map(|(m, v)| ((m as u32, m as u32), GaussianRational::real(v.clone()))));
        let r = projector_residual(&grid);
        let prob = prob_residuals(&b);
        for m in 0..b.len() as u32 {
            assert_eq!(r.idem.get(m, m), GaussianRational::real(prob[m as usize].clone()));
        }
        let bf: Vec<Rational> = path.values.iter().map(|v| int(*v as i64)).collect();
        let bm = bm_residuals(&bf);
        for m in 0..b.len() as u32 {
            // adj[m,m] = b_m − (−1)^m Σ_h (−1)^h C(m+h,m)(m+h)!/m!·b_{m+h} = (𝔟_m-residual)/m!
            let f = ncplane::arith::factorial(m as u64);
            assert_eq!(r.adj.get(m, m), GaussianRational::real(&bm[m as usize].residual / Rational::from_integer(f)));
        }
        assert!(r.idem.entries().keys().all(|(p, q)| p == q));
    }
}

#[test]
fn mm2_coefficient_matches_closed_form() {
    // Entries a_{p,p+1,p,p+1} only; the x₃^m x₄^{m+2} coefficient of β_n β_{n+1}.
    let mut f = Fuzz::new(11);
    for _ in 0..6 {
        let vals: Vec<(u32, GaussianRational)> = (0..3u32).map(|p| (p, f.gaussian())).collect();
        let grid = CoeffGrid4D::new((rat(1, 1), rat(2, 3)), vals.iter().map(|(p, c)| ([*p, p + 1, *p, p + 1], c.clone())));
        let a = |p: i64| vals.iter().find(|(q, _)| *q as i64 == p).map(|(_, c)| c.clone()).unwrap_or_else(GaussianRational::zero);
        let r = beta_orthogonality_4d(&grid, 1, 8).unwrap();
        for n in 0..7i64 {
            for m in 0..6i64 {
                let mut want = GaussianRational::zero();
                for p in 0..=m {
                    for q in (m - p).max(0)..=m + 1 {
                        if p > n || q > n + 1 {
                            continue;
                        }
                        let w = ncplane::arith::falling(n, p)
                            * ncplane::arith::falling(n + 1, q)
                            * ncplane::arith::binomial_int(q, m - p)
                            * ncplane::arith::factorial((p + 1) as u64)
                            / ncplane::arith::factorial((m + 1 - q) as u64);
                        want += &(&a(p) * &a(q)).scale_int(&w);
                    }
                }
                let got = r.products[n as usize].coeff(&[m as u32, m as u32 + 2]).and_then(|c| c.as_gaussian().cloned()).unwrap_or_else(GaussianRational::zero);
                assert_eq!(got, want, "n={n} m={m}");
            }
        }
    }
}

#[test]
fn commutative_degeneration() {
    let mut f = Fuzz::new(5);
    let tp = plane(rat(0, 1));
    for _ in 0..20 {
        let a = f.polynomial(&tp, 4, 3);
        let b = f.polynomial(&tp, 4, 3);
        assert_eq!(a.nc_multiply(&b).unwrap(), a.commutative_product(&b).unwrap());
    }
    let x = NCPolynomial::generator(tp.clone(), 0);
    let y = NCPolynomial::generator(tp, 1);
    assert!(y.nc_multiply(&x).unwrap().try_sub(&x.nc_multiply(&y).unwrap()).unwrap().is_zero());
}
