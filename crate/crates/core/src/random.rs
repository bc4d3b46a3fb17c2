//! Seeded generators for randomized checks. The same seed always yields the same objects.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraMatrix, MultiIndex, NCPolynomial, ThetaParams};
use crate::arith::{rat, GaussianRational, NCScalar, Rational};
use crate::projector::{CoeffGrid2D, CoeffGrid4D};
use crate::selfadjoint::RealCoeffGrid;

pub struct Fuzz {
    rng: ChaCha8Rng,
}

impl Fuzz {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `n/d` with `|n| ≤ 5`, `1 ≤ d ≤ 4`.
    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != rat(0, 1) {
                return r;
            }
        }
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        GaussianRational::new(self.rational(), self.rational())
    }

    pub fn nonzero_gaussian(&mut self) -> GaussianRational {
        GaussianRational::new(self.nonzero_rational(), self.rational())
    }

    /// Positive theta from a small set of denominators.
    pub fn theta(&mut self) -> Rational {
        rat(self.rng.gen_range(1..=7), self.rng.gen_range(1..=3))
    }

    /// Up to `max_terms` terms, each exponent at most `max_exp`.
    pub fn polynomial(&mut self, tp: &ThetaParams, max_terms: usize, max_exp: u32) -> NCPolynomial {
        let n = self.rng.gen_range(0..=max_terms);
        let th = tp.coeff_theta().clone();
        let terms: Vec<_> = (0..n)
            .map(|_| {
                let e: Vec<u32> = (0..tp.generators()).map(|_| self.rng.gen_range(0..=max_exp)).collect();
                (MultiIndex(e), NCScalar::from_gaussian(self.gaussian(), &th))
            })
            .collect();
        NCPolynomial::from_terms(tp.clone(), terms)
    }

    /// Single-pair polynomial of total degree at most `deg` with a nonzero top-degree term.
    pub fn nonconstant_polynomial(&mut self, tp: &ThetaParams, max_terms: usize, deg: u32) -> NCPolynomial {
        let th = tp.coeff_theta().clone();
        let top = self.rng.gen_range(1..=deg);
        let p = self.rng.gen_range(0..=top);
        let mut terms = vec![(MultiIndex(vec![p, top - p]), NCScalar::from_gaussian(self.nonzero_gaussian(), &th))];
        for _ in 0..self.rng.gen_range(0..max_terms) {
            let d = self.rng.gen_range(0..top);
            let p = self.rng.gen_range(0..=d);
            terms.push((MultiIndex(vec![p, d - p]), NCScalar::from_gaussian(self.gaussian(), &th)));
        }
        NCPolynomial::from_terms(tp.clone(), terms)
    }

    pub fn grid2d(&mut self, theta: Rational, max_entries: usize, max_exp: u32) -> CoeffGrid2D {
        let n = self.rng.gen_range(0..=max_entries);
        let entries: Vec<_> =
            (0..n).map(|_| ((self.rng.gen_range(0..=max_exp), self.rng.gen_range(0..=max_exp)), self.gaussian())).collect();
        CoeffGrid2D::new(theta, entries)
    }

    /// Entries inside the band of width `k` around the diagonal.
    pub fn band_grid2d(&mut self, theta: Rational, max_entries: usize, max_exp: u32, k: u32) -> CoeffGrid2D {
        let n = self.rng.gen_range(0..=max_entries);
        let entries: Vec<_> = (0..n)
            .map(|_| {
                let p = self.rng.gen_range(0..=max_exp);
                let lo = p.saturating_sub(k);
                let q = self.rng.gen_range(lo..=p + k);
                ((p, q), self.gaussian())
            })
            .collect();
        CoeffGrid2D::new(theta, entries)
    }

    pub fn grid4d(&mut self, thetas: (Rational, Rational), max_entries: usize, max_exp: u32) -> CoeffGrid4D {
        let n = self.rng.gen_range(0..=max_entries);
        let entries: Vec<_> = (0..n)
            .map(|_| {
                let idx = [(); 4].map(|_| self.rng.gen_range(0..=max_exp));
                (idx, self.gaussian())
            })
            .collect();
        CoeffGrid4D::new(thetas, entries)
    }

    pub fn real_grid(&mut self, theta: Rational, max_entries: usize, max_index: u32) -> RealCoeffGrid {
        let n = self.rng.gen_range(0..=max_entries);
        let entries: Vec<_> =
            (0..n).map(|_| ((self.rng.gen_range(0..=max_index), self.rng.gen_range(0..=max_index)), self.rational())).collect();
        RealCoeffGrid::new(theta, entries)
    }

    /// `S + S*` for a random `S`; self-adjoint by construction.
    pub fn selfadjoint_polynomial(&mut self, tp: &ThetaParams, max_terms: usize, max_exp: u32) -> NCPolynomial {
        let s = self.polynomial(tp, max_terms, max_exp);
        s.try_add(&s.adjoint()).expect("same theta")
    }

    /// `S + S*` for an `n × n` matrix `S` whose entries have degree at most `deg`; at least one entry is nonconstant.
    pub fn selfadjoint_matrix(&mut self, n: usize, tp: &ThetaParams, deg: u32) -> AlgebraMatrix {
        loop {
            let entries: Vec<NCPolynomial> = (0..n * n)
                .map(|_| {
                    if self.rng.gen_bool(0.5) {
                        self.nonconstant_polynomial(tp, 3, deg)
                    } else {
                        NCPolynomial::constant(tp.clone(), self.gaussian())
                    }
                })
                .collect();
            let s = AlgebraMatrix::new(n, n, entries).expect("square");
            let m = s.add(&s.adjoint()).expect("same shape");
            if m.entries().iter().any(|e| !e.is_scalar()) {
                return m;
            }
        }
    }

    /// Rank-one projector `v v*/(v* v)` or a diagonal 0/1 matrix, with scalar entries.
    pub fn scalar_projector(&mut self, n: usize, tp: &ThetaParams) -> AlgebraMatrix {
        if self.rng.gen_bool(0.5) {
            let d: Vec<GaussianRational> = (0..n * n)
                .map(|k| if k % (n + 1) == 0 && self.rng.gen_bool(0.5) { GaussianRational::from_int(1) } else { GaussianRational::from_int(0) })
                .collect();
            return AlgebraMatrix::from_scalars(n, n, tp.clone(), d).expect("square");
        }
        let v: Vec<GaussianRational> = loop {
            let v: Vec<_> = (0..n).map(|_| self.gaussian()).collect();
            if v.iter().any(|z| !num_traits::Zero::is_zero(z)) {
                break v;
            }
        };
        let norm: Rational = v.iter().map(|z| z.norm_sqr()).sum();
        let inv = norm.recip();
        let vals = (0..n * n).map(|k| (&v[k / n] * &v[k % n].conj()).scale(&inv)).collect();
        AlgebraMatrix::from_scalars(n, n, tp.clone(), vals).expect("square")
    }
}
