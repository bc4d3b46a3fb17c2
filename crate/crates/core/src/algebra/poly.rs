use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ordering::pair_product;
use super::theta::{MultiIndex, ThetaParams};
use crate::arith::rational::parse_rational;
use crate::arith::{GaussianRational, NCScalar};
use crate::error::{Error, Result};

/// Direction for [`NCPolynomial::gamma_convert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaDirection {
    /// Multiply the coefficient of `x^E` by `g^{|E|}`.
    Normalize,
    /// Divide it back out.
    Denormalize,
}

/// A normal-ordered element `Σ c_E x^E` with finite support and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct NCPolynomial {
    theta: ThetaParams,
    terms: BTreeMap<MultiIndex, NCScalar>,
}

type Expansion = Vec<(Vec<u32>, GaussianRational)>;

// Tensor product of per-pair expansions.
fn combine(parts: Vec<Vec<((u32, u32), GaussianRational)>>) -> Expansion {
    let mut acc: Expansion = vec![(Vec::new(), GaussianRational::one())];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for (e, c) in &acc {
            for ((x, y), d) in &part {
                let mut e2 = e.clone();
                e2.push(*x);
                e2.push(*y);
                next.push((e2, c * d));
            }
        }
        acc = next;
    }
    acc
}

impl NCPolynomial {
    pub fn zero(theta: ThetaParams) -> Self {
        Self { theta, terms: BTreeMap::new() }
    }

    pub fn constant(theta: ThetaParams, c: GaussianRational) -> Self {
        let n = theta.generators();
        let ct = theta.coeff_theta().clone();
        Self::from_terms(theta, [(MultiIndex::zero(n), NCScalar::from_gaussian(c, &ct))])
    }

    pub fn one(theta: ThetaParams) -> Self {
        Self::constant(theta, GaussianRational::one())
    }

    /// The generator `x_{idx+1}`.
    pub fn generator(theta: ThetaParams, idx: usize) -> Self {
        let mut e = vec![0; theta.generators()];
        e[idx] = 1;
        Self::monomial(theta, e, GaussianRational::one())
    }

    pub fn monomial(theta: ThetaParams, exp: Vec<u32>, c: GaussianRational) -> Self {
        let ct = theta.coeff_theta().clone();
        Self::from_terms(theta, [(MultiIndex(exp), NCScalar::from_gaussian(c, &ct))])
    }

    /// Sums like terms and drops zeros. Panics on malformed terms; see [`Self::try_from_terms`].
    pub fn from_terms(theta: ThetaParams, terms: impl IntoIterator<Item = (MultiIndex, NCScalar)>) -> Self {
        Self::try_from_terms(theta, terms).expect("well-formed terms")
    }

    pub fn try_from_terms(theta: ThetaParams, terms: impl IntoIterator<Item = (MultiIndex, NCScalar)>) -> Result<Self> {
        let mut p = Self::zero(theta);
        for (e, c) in terms {
            if e.len() != p.theta.generators() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} for {} generators",
                    e.len(),
                    p.theta.generators()
                )));
            }
            if c.theta() != p.theta.coeff_theta() {
                return Err(Error::ThetaMismatch);
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: MultiIndex, c: &NCScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add_gaussian_term(&mut self, e: Vec<u32>, c: &NCScalar, z: &GaussianRational) {
        if !z.is_zero() {
            self.add_term(MultiIndex(e), &c.scale(z));
        }
    }

    pub fn theta(&self) -> &ThetaParams {
        &self.theta
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, NCScalar> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&NCScalar> {
        self.terms.get(&MultiIndex(e.to_vec()))
    }

    /// Coefficient as an element of ℚ(i); zero if absent or if it has a `g` part.
    pub fn gaussian_coeff(&self, e: &[u32]) -> GaussianRational {
        self.coeff(e)
            .and_then(|c| c.as_gaussian().cloned())
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term has total degree 0.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    fn same_theta(&self, o: &Self) -> Result<()> {
        if self.theta == o.theta {
            Ok(())
        } else {
            Err(Error::ThetaMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_theta(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { theta: self.theta.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, z: &GaussianRational) -> Self {
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &c.scale(z));
        }
        out
    }

    pub fn scale_scalar(&self, s: &NCScalar) -> Result<Self> {
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &c.try_mul(s)?);
        }
        Ok(out)
    }

    /// Exact normal-ordered product.
    pub fn nc_multiply(&self, o: &Self) -> Result<Self> {
        self.same_theta(o)?;
        let pairs = self.theta.pairs();
        let a: Vec<GaussianRational> = (0..pairs).map(|m| self.theta.a(m)).collect();
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                let cd = c * d;
                let parts = (0..pairs)
                    .map(|m| pair_product(e.0[2 * m], e.0[2 * m + 1], f.0[2 * m], f.0[2 * m + 1], &a[m]))
                    .collect();
                for (g, z) in combine(parts) {
                    out.add_gaussian_term(g, &cd, &z);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.theta.clone());
        for _ in 0..k {
            acc = acc.nc_multiply(self).expect("same theta");
        }
        acc
    }

    /// `T*`: conjugate coefficients, reverse every monomial, renormalize.
    pub fn adjoint(&self) -> Self {
        let pairs = self.theta.pairs();
        let a: Vec<GaussianRational> = (0..pairs).map(|m| self.theta.a(m)).collect();
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            let cc = c.conj();
            let parts = (0..pairs).map(|m| pair_product(0, e.0[2 * m + 1], e.0[2 * m], 0, &a[m])).collect();
            for (g, z) in combine(parts) {
                out.add_gaussian_term(g, &cc, &z);
            }
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Total degree and the sum of the top-degree terms.
    pub fn degree_and_symbol(&self) -> Result<(u32, Self)> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let terms = self.terms.iter().filter(|(e, _)| e.degree() == d).map(|(e, c)| (e.clone(), c.clone()));
        Ok((d, Self::from_terms(self.theta.clone(), terms)))
    }

    /// Product in the commutative polynomial ring on the same exponent vectors.
    pub fn commutative_product(&self, o: &Self) -> Result<Self> {
        self.same_theta(o)?;
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.add_term(e.add(f), &(c * d));
            }
        }
        Ok(out)
    }

    /// Switches between raw coefficients and γ-normalized ones (`γ² = iθ`).
    ///
    /// Needs every pair to share one θ > 0, since a single `g` is adjoined.
    pub fn gamma_convert(&self, dir: GammaDirection) -> Result<Self> {
        let th = self.theta.coeff_theta();
        if self.theta.thetas().iter().any(|t| t.is_zero()) {
            return Err(Error::ThetaZero);
        }
        if self.theta.thetas().iter().any(|t| t != th) {
            return Err(Error::InvalidArgument("gamma normalization needs equal thetas on all pairs".into()));
        }
        let sign = match dir {
            GammaDirection::Normalize => 1,
            GammaDirection::Denormalize => -1,
        };
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            let g = NCScalar::gamma_pow(sign * e.degree() as i64, th)?;
            out.add_term(e.clone(), &(c * &g));
        }
        Ok(out)
    }

    /// The *-automorphism `x ↦ y, y ↦ −x` applied to one pair.
    pub fn pair_rotation(&self, pair: usize) -> Self {
        let a = self.theta.a(pair);
        let mut out = Self::zero(self.theta.clone());
        for (e, c) in &self.terms {
            let (p, q) = (e.0[2 * pair], e.0[2 * pair + 1]);
            let c = if q % 2 == 1 { -c } else { c.clone() };
            for ((x, y), z) in pair_product(0, p, q, 0, &a) {
                let mut f = e.0.clone();
                f[2 * pair] = x;
                f[2 * pair + 1] = y;
                out.add_gaussian_term(f, &c, &z);
            }
        }
        out
    }

    /// Human-readable monomial for an exponent vector.
    pub fn monomial_label(&self, e: &MultiIndex) -> String {
        let names: Vec<String> = if self.theta.pairs() == 1 {
            vec!["x".into(), "y".into()]
        } else {
            (1..=self.theta.generators()).map(|k| format!("x{k}")).collect()
        };
        let parts: Vec<String> = e
            .0
            .iter()
            .zip(&names)
            .filter(|(p, _)| **p > 0)
            .map(|(p, n)| if *p == 1 { n.clone() } else { format!("{n}^{p}") })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then(a.cmp(b)));
        let parts: Vec<String> = items
            .into_iter()
            .map(|(e, c)| {
                let m = self.monomial_label(e);
                match (m.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => m,
                    (false, false) => format!("{c}·{m}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    theta: ThetaParams,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: CoeffJson,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    c0: GaussianRational,
    #[serde(default = "GaussianRational::zero")]
    c1: GaussianRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
}

impl TryFrom<PolyJson> for NCPolynomial {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        let ct = j.theta.coeff_theta().clone();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let th = match t.coeff.theta {
                Some(s) => parse_rational(&s)?,
                None => ct.clone(),
            };
            terms.push((MultiIndex(t.exp), NCScalar::new(t.coeff.c0, t.coeff.c1, th)?));
        }
        NCPolynomial::try_from_terms(j.theta, terms)
    }
}

impl From<NCPolynomial> for PolyJson {
    fn from(p: NCPolynomial) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.0.clone(),
                coeff: CoeffJson {
                    c0: c.c0().clone(),
                    c1: c.c1().clone(),
                    theta: Some(crate::arith::format_rational(c.theta())),
                },
            })
            .collect();
        PolyJson { theta: p.theta, terms }
    }
}
