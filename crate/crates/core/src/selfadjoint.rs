//! Self-adjoint elements of the two-generator plane, in raw coefficients.
//!
//! `T = Σ a_{p,q} x^p y^q` is self-adjoint iff
//! `a_{p,q} = Σ_h C(p+h,h)·(q+h)!/q!·(iθ)^h·conj(a_{p+h,q+h})` for all `p, q`.
//! Solving this for the imaginary parts gives a Bernoulli-weighted sum over the
//! real parts on odd diagonal shifts, which [`sa_complete`] evaluates directly and
//! [`sa_iterative_oracle`] recovers by back-substitution.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiIndex, NCPolynomial, ThetaParams};
use crate::arith::rational::{serde_rational, Rational};
use crate::arith::{binomial_int, falling, GaussianRational, NCScalar};
use crate::error::{Error, Result};
use crate::sequences::bernoulli_a_seq;

/// Prescribed real parts `Re a_{p,q}` of a raw single-pair element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RealGridJson", into = "RealGridJson")]
pub struct RealCoeffGrid {
    theta: Rational,
    re_entries: BTreeMap<(u32, u32), Rational>,
}

impl RealCoeffGrid {
    pub fn new(theta: Rational, entries: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut re_entries: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, v) in entries {
            *re_entries.entry(k).or_insert_with(Rational::zero) += v;
        }
        re_entries.retain(|_, v| !v.is_zero());
        Self { theta, re_entries }
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn re_entries(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.re_entries
    }

    pub fn get(&self, p: u32, q: u32) -> Rational {
        self.re_entries.get(&(p, q)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_indices(&self) -> (u32, u32) {
        self.re_entries.keys().fold((0, 0), |(a, b), &(p, q)| (a.max(p), b.max(q)))
    }
}

#[derive(Serialize, Deserialize)]
struct RealGridJson {
    #[serde(with = "serde_rational")]
    theta: Rational,
    entries: Vec<RealEntry>,
}

#[derive(Serialize, Deserialize)]
struct RealEntry {
    idx: [u32; 2],
    #[serde(with = "serde_rational")]
    re: Rational,
}

impl TryFrom<RealGridJson> for RealCoeffGrid {
    type Error = Error;
    fn try_from(j: RealGridJson) -> Result<Self> {
        if j.theta < Rational::zero() {
            return Err(Error::InvalidArgument("theta must be nonnegative".into()));
        }
        Ok(Self::new(j.theta, j.entries.into_iter().map(|e| ((e.idx[0], e.idx[1]), e.re))))
    }
}

impl From<RealCoeffGrid> for RealGridJson {
    fn from(g: RealCoeffGrid) -> Self {
        let entries = g.re_entries.into_iter().map(|((p, q), re)| RealEntry { idx: [p, q], re }).collect();
        RealGridJson { theta: g.theta, entries }
    }
}

/// The weights `a_0..=a_N` of the completion formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliWeights {
    #[serde(with = "crate::arith::rational::serde_rational_vec")]
    pub a: Vec<Rational>,
}

impl BernoulliWeights {
    pub fn new(n_max: usize) -> Self {
        Self { a: bernoulli_a_seq(n_max).values }
    }
}

fn single_pair(t: &NCPolynomial) -> Result<&Rational> {
    if t.theta().pairs() != 1 {
        return Err(Error::DimensionMismatch("expected a single generator pair".into()));
    }
    Ok(t.theta().theta(0))
}

/// Raw coefficients `a_{p,q}` of `T`; they must lie in ℚ(i).
fn raw_coeffs(t: &NCPolynomial) -> Result<BTreeMap<(u32, u32), GaussianRational>> {
    t.terms()
        .iter()
        .map(|(e, c)| {
            let g = c.as_gaussian().cloned().ok_or_else(|| Error::InvalidArgument("raw coefficient has a gamma part".into()))?;
            Ok(((e.0[0], e.0[1]), g))
        })
        .collect()
}

fn from_coeffs(theta: &Rational, coeffs: impl IntoIterator<Item = ((u32, u32), GaussianRational)>) -> NCPolynomial {
    let tp = ThetaParams::single(theta.clone()).expect("theta is nonnegative");
    NCPolynomial::from_terms(
        tp,
        coeffs.into_iter().map(|((p, q), c)| (MultiIndex(vec![p, q]), NCScalar::from_gaussian(c, theta))),
    )
}

/// Exact `T − T*`.
pub fn sa_residual(t: &NCPolynomial) -> Result<NCPolynomial> {
    single_pair(t)?;
    t.try_sub(&t.adjoint())
}

fn get(m: &BTreeMap<(u32, u32), GaussianRational>, p: u32, q: u32) -> GaussianRational {
    m.get(&(p, q)).cloned().unwrap_or_else(GaussianRational::zero)
}

/// `Σ_{h≥h0} C(p+h,h)·(q+h)!/q!·(iθ)^h·conj(a_{p+h,q+h})` over the stored coefficients.
fn adjoint_sum(coeffs: &BTreeMap<(u32, u32), GaussianRational>, theta: &Rational, p: u32, q: u32, h0: u32, h_max: u32) -> GaussianRational {
    let a = GaussianRational::imag(theta.clone());
    let mut s = GaussianRational::zero();
    for h in h0..=h_max {
        let c = get(coeffs, p + h, q + h);
        if c.is_zero() {
            continue;
        }
        let (pi, qi, hi) = (p as i64, q as i64, h as i64);
        let w = binomial_int(pi + hi, hi) * falling(qi + hi, hi);
        s += &(&a.pow(h) * &c.conj()).scale_int(&w);
    }
    s
}

/// `Σ_k a_k·C(p+2k+1, 2k+1)·(q+2k+1)!/q!·θ^{2k+1}·Re a_{p+2k+1,q+2k+1}`.
fn completion_sum(re: impl Fn(u32, u32) -> Rational, theta: &Rational, w: &BernoulliWeights, p: u32, q: u32, h_max: u32) -> Rational {
    let mut s = Rational::zero();
    let mut k = 0u32;
    while 2 * k + 1 <= h_max {
        let h = 2 * k + 1;
        let r = re(p + h, q + h);
        if !r.is_zero() {
            let (pi, qi, hi) = (p as i64, q as i64, h as i64);
            let c = Rational::from_integer(binomial_int(pi + hi, hi) * falling(qi + hi, hi));
            s += &w.a[k as usize] * c * num_traits::pow(theta.clone(), h as usize) * r;
        }
        k += 1;
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpqResidual {
    pub idx: [u32; 2],
    pub residual: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PqimaResidual {
    pub idx: [u32; 2],
    #[serde(with = "serde_rational")]
    pub residual: Rational,
}

/// Nonzero residuals of both identity families over the support box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaNecessaryReport {
    /// Number of `(p, q)` positions examined.
    pub checked: usize,
    pub fpq_residuals: Vec<FpqResidual>,
    pub pqima_residuals: Vec<PqimaResidual>,
    pub ok: bool,
}

/// Checks the coefficient identity and the completion formula on a self-adjoint `T`.
pub fn sa_check_necessary(t: &NCPolynomial) -> Result<SaNecessaryReport> {
    let theta = single_pair(t)?.clone();
    if !sa_residual(t)?.is_zero() {
        return Err(Error::NotSelfAdjoint);
    }
    let coeffs = raw_coeffs(t)?;
    let (pm, qm) = coeffs.keys().fold((0, 0), |(a, b), &(p, q)| (a.max(p), b.max(q)));
    let w = BernoulliWeights::new((pm.min(qm) / 2 + 1) as usize);
    let mut fpq_residuals = Vec::new();
    let mut pqima_residuals = Vec::new();
    let mut checked = 0;
    for p in 0..=pm {
        for q in 0..=qm {
            checked += 1;
            let h_max = (pm - p).min(qm - q);
            let a = get(&coeffs, p, q);
            let r = &a - &adjoint_sum(&coeffs, &theta, p, q, 0, h_max);
            if !r.is_zero() {
                fpq_residuals.push(FpqResidual { idx: [p, q], residual: r });
            }
            let im = completion_sum(|i, j| get(&coeffs, i, j).re, &theta, &w, p, q, h_max);
            let r = &a.im - im;
            if !r.is_zero() {
                pqima_residuals.push(PqimaResidual { idx: [p, q], residual: r });
            }
        }
    }
    let ok = fpq_residuals.is_empty() && pqima_residuals.is_empty();
    Ok(SaNecessaryReport { checked, fpq_residuals, pqima_residuals, ok })
}

/// Completes prescribed real parts with the Bernoulli-weighted imaginary parts.
pub fn sa_complete(grid: &RealCoeffGrid) -> NCPolynomial {
    let theta = grid.theta();
    let (pm, qm) = grid.max_indices();
    let w = BernoulliWeights::new((pm.min(qm) / 2 + 1) as usize);
    let mut out = Vec::new();
    if !grid.re_entries().is_empty() {
        for p in 0..=pm {
            for q in 0..=qm {
                let im = completion_sum(|i, j| grid.get(i, j), theta, &w, p, q, (pm - p).min(qm - q));
                out.push(((p, q), GaussianRational::new(grid.get(p, q), im)));
            }
        }
    }
    from_coeffs(theta, out)
}

/// Imaginary parts by back-substitution through the coefficient identity, largest `p + q` first.
///
/// At `(p, q)` the identity reads `2i·Im a_{p,q} = S` with `S` the sum over `h ≥ 1`, whose
/// terms are already known. A nonzero real part of `S` means no completion exists.
pub fn sa_iterative_oracle(grid: &RealCoeffGrid) -> Result<NCPolynomial> {
    let theta = grid.theta();
    let (pm, qm) = grid.max_indices();
    let mut coeffs: BTreeMap<(u32, u32), GaussianRational> = BTreeMap::new();
    if grid.re_entries().is_empty() {
        return Ok(from_coeffs(theta, []));
    }
    let mut order: Vec<(u32, u32)> = (0..=pm).flat_map(|p| (0..=qm).map(move |q| (p, q))).collect();
    order.sort_by_key(|&(p, q)| std::cmp::Reverse(p + q));
    let two = Rational::one() + Rational::one();
    for (p, q) in order {
        let s = adjoint_sum(&coeffs, theta, p, q, 1, (pm - p).min(qm - q));
        if !s.re.is_zero() {
            return Err(Error::InconsistentSystem((p, q)));
        }
        let c = GaussianRational::new(grid.get(p, q), &s.im / &two);
        if !c.is_zero() {
            coeffs.insert((p, q), c);
        }
    }
    Ok(from_coeffs(theta, coeffs))
}

/// `T − T*` of the completed element; zero whenever the completion is self-adjoint.
pub fn sa_converse_residual(grid: &RealCoeffGrid) -> NCPolynomial {
    sa_residual(&sa_complete(grid)).expect("completion is a single-pair element")
}
