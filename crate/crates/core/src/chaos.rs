//! Truncated Wiener-Itô chaos expansions on `ℝ^d` and their algebra.
//!
//! A [`ChaosExpansion`] stores `f = Σ a_α H_α` in the monic tensor Hermite
//! basis. In this basis the second quantization `Γ(λ)` multiplies degree-`k`
//! coefficients by `λ^k`, the Wick product is the additive-index convolution
//! `H_α ◇ H_β = H_{α+β}`, and the `L²(μ)` norm is `Σ α! a_α²`.
//!
//! `tail_bound` tracks the squared `L²` mass dropped by truncation or by the
//! coefficient threshold. For `Γ`, the mixture generator and exponential
//! vectors it is a rigorous bound. For Wick products it is a propagated
//! estimate, since `◇` is unbounded on `L²`.

use std::collections::{BTreeMap, HashMap};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hermite::{hermite_table, MultiIndex, DEFAULT_MAX_DEGREE};

/// Terms with `√(α!) |a_α| <= DROP_THRESHOLD` are removed after every
/// operation. The threshold applies to the `L²` contribution rather than the
/// raw coefficient: at degree 20, `|a_α| = 1e-15` is a term of norm `1e-6`.
pub const DROP_THRESHOLD: f64 = 1e-15;

/// Truncation cap applied to Wick products when none is given.
pub const DEFAULT_DEGREE_CAP: usize = DEFAULT_MAX_DEGREE;

/// Tolerance on `a_∅ = 1` for an expansion to count as a probability density.
pub const DENSITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ChaosExpansion {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
    truncation: usize,
    tail_bound: f64,
}

impl ChaosExpansion {
    /// The constant function 1, i.e. the density of `μ` itself.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, 1.0)
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        if value != 0.0 {
            coeffs.insert(MultiIndex::zero(dim), value);
        }
        Self {
            dim,
            coeffs,
            truncation: 0,
            tail_bound: 0.0,
        }
    }

    /// Builds an expansion from `(α, a_α)` pairs. Repeated indices are summed;
    /// the truncation degree is the largest total degree supplied.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, f64)>,
    {
        let mut coeffs = BTreeMap::new();
        let mut truncation = 0;
        for (alpha, a) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            if !a.is_finite() {
                return Err(Error::Domain {
                    what: "coefficient",
                    value: a,
                    domain: "finite reals",
                });
            }
            truncation = truncation.max(alpha.total_degree());
            *coeffs.entry(alpha).or_insert(0.0) += a;
        }
        Ok(Self::assemble(dim, coeffs, truncation, 0.0))
    }

    /// Sets an explicit truncation degree, moving any higher terms into the tail.
    pub fn with_truncation(self, degree: usize) -> Self {
        let Self {
            dim,
            coeffs,
            tail_bound,
            ..
        } = self;
        Self::assemble(dim, coeffs, degree, tail_bound)
    }

    pub fn with_tail_bound(mut self, tail_bound: f64) -> Self {
        self.tail_bound = tail_bound.max(0.0);
        self
    }

    // Applies the drop threshold and truncation, charging removed mass to the tail.
    pub(crate) fn assemble(
        dim: usize,
        mut coeffs: BTreeMap<MultiIndex, f64>,
        truncation: usize,
        mut tail_bound: f64,
    ) -> Self {
        coeffs.retain(|alpha, a| {
            let keep = alpha.total_degree() <= truncation
                && (alpha.is_zero() && *a != 0.0
                    || alpha.factorial().sqrt() * a.abs() > DROP_THRESHOLD);
            if !keep {
                tail_bound += alpha.factorial() * *a * *a;
            }
            keep
        });
        Self {
            dim,
            coeffs,
            truncation,
            tail_bound,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest total degree actually present.
    pub fn max_degree(&self) -> usize {
        self.coeffs
            .keys()
            .next_back()
            .map_or(0, MultiIndex::total_degree)
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> f64 {
        self.coeffs.get(alpha).copied().unwrap_or(0.0)
    }

    /// `a_∅ = ∫ f dμ`.
    pub fn constant_term(&self) -> f64 {
        self.coefficient(&MultiIndex::zero(self.dim))
    }

    /// Terms in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> + '_ {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_density(&self) -> bool {
        (self.constant_term() - 1.0).abs() <= DENSITY_TOLERANCE
    }

    pub fn ensure_density(&self) -> Result<()> {
        if self.is_density() {
            Ok(())
        } else {
            Err(Error::NotADensity {
                constant: self.constant_term(),
            })
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), c * v))
            .collect();
        Self::assemble(self.dim, coeffs, self.truncation, c * c * self.tail_bound)
    }

    /// Pointwise sum; the tail bounds add in norm.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            *coeffs.entry(k.clone()).or_insert(0.0) += v;
        }
        let tail = (self.tail_bound.sqrt() + other.tail_bound.sqrt()).powi(2);
        Ok(Self::assemble(
            self.dim,
            coeffs,
            self.truncation.max(other.truncation),
            tail,
        ))
    }

    /// `Γ(λ)`: multiplies the order-`k` chaos by `λ^k`.
    pub fn gamma(&self, lambda: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&lambda) {
            return Err(Error::Domain {
                what: "lambda",
                value: lambda,
                domain: "[-1, 1]",
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), lambda.powi(k.total_degree() as i32) * v))
            .collect();
        // dropped mass never sits in chaos 0, so it contracts by at least λ²
        Ok(Self::assemble(
            self.dim,
            coeffs,
            self.truncation,
            lambda * lambda * self.tail_bound,
        ))
    }

    /// `J_n`: keeps exactly the terms of total degree `n`.
    pub fn project_chaos(&self, n: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| k.total_degree() == n)
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        Self {
            dim: self.dim,
            coeffs,
            truncation: self.truncation,
            tail_bound: 0.0,
        }
    }

    /// `‖f‖₂² = Σ α! a_α²` over retained terms.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|(k, v)| k.factorial() * v * v).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// `Σ_{|α|=k} α! a_α²`, which is `k! ‖𝔥_k‖²` for the order-`k` kernel.
    pub fn chaos_norm_of_order(&self, k: usize) -> f64 {
        self.coeffs
            .iter()
            .filter(|(a, _)| a.total_degree() == k)
            .map(|(a, v)| a.factorial() * v * v)
            .sum()
    }

    /// `S f(h) = Σ a_α h^α = ∫ f ℰ(h) dμ` on retained terms.
    pub fn s_transform(&self, h: &[f64]) -> Result<f64> {
        if h.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: h.len(),
            });
        }
        Ok(self.coeffs.iter().map(|(k, v)| v * k.monomial(h)).sum())
    }

    /// Pointwise value `Σ a_α H_α(x)`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        ChaosEvaluator::new(self)?.eval(x)
    }
}

/// Wick product truncated at `min(D_f + D_g, DEFAULT_DEGREE_CAP)`.
pub fn wick_product(f: &ChaosExpansion, g: &ChaosExpansion) -> Result<ChaosExpansion> {
    wick_product_capped(f, g, DEFAULT_DEGREE_CAP)
}

/// Wick product `c_γ = Σ_{α+β=γ} a_α b_β`, truncated at
/// `min(D_f + D_g, cap)` with the discarded mass added to the tail.
pub fn wick_product_capped(
    f: &ChaosExpansion,
    g: &ChaosExpansion,
    cap: usize,
) -> Result<ChaosExpansion> {
    f.check_dim(g)?;
    let truncation = (f.truncation + g.truncation).min(cap);
    let mut acc: HashMap<MultiIndex, f64> = HashMap::with_capacity(f.len() * g.len());
    for (alpha, a) in &f.coeffs {
        for (beta, b) in &g.coeffs {
            *acc.entry(alpha.add_unchecked(beta)).or_insert(0.0) += a * b;
        }
    }
    let propagated = (f.tail_bound.sqrt() * g.l2_norm()
        + f.l2_norm() * g.tail_bound.sqrt()
        + (f.tail_bound * g.tail_bound).sqrt())
    .powi(2);
    Ok(ChaosExpansion::assemble(
        f.dim,
        acc.into_iter().collect(),
        truncation,
        propagated,
    ))
}

/// `f^{◇n}` by binary exponentiation, default degree cap.
pub fn wick_power(f: &ChaosExpansion, n: usize) -> Result<ChaosExpansion> {
    wick_power_capped(f, n, DEFAULT_DEGREE_CAP)
}

pub fn wick_power_capped(f: &ChaosExpansion, n: usize, cap: usize) -> Result<ChaosExpansion> {
    if n == 0 {
        return Err(Error::Domain {
            what: "wick power",
            value: 0.0,
            domain: "n >= 1",
        });
    }
    let mut result: Option<ChaosExpansion> = None;
    let mut base = f.clone();
    let mut e = n;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => wick_product_capped(&r, &base, cap)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = wick_product_capped(&base, &base, cap)?;
    }
    Ok(result.expect("n >= 1"))
}

/// `ℰ(h) = exp(δ(h) − ½‖h‖²)` truncated at degree `degree`:
/// `a_α = h^α / α!`, tail `Σ_{N>D} ‖h‖^{2N} / N!`.
pub fn exponential_vector(h: &[f64], degree: usize) -> ChaosExpansion {
    let dim = h.len();
    let coeffs = crate::hermite::multiindex_iter(dim, degree)
        .into_iter()
        .map(|alpha| {
            let a = alpha.monomial(h) / alpha.factorial();
            (alpha, a)
        })
        .collect();
    let r: f64 = h.iter().map(|x| x * x).sum();
    let mut tail = 0.0;
    if r > 0.0 {
        // term_N = r^N / N!, summed from N = D+1 until negligible
        let mut term = (1..=degree + 1).fold(1.0, |t, n| t * r / n as f64);
        let mut n = degree + 1;
        while term > 1e-300 {
            tail += term;
            n += 1;
            term *= r / n as f64;
            if term < tail * 1e-18 && (n as f64) > r {
                break;
            }
        }
    }
    ChaosExpansion::assemble(dim, coeffs, degree, tail)
}

/// Flattened expansion prepared for repeated pointwise evaluation.
#[derive(Clone, Debug)]
pub struct ChaosEvaluator {
    dim: usize,
    // per coordinate, the highest degree that appears
    max_per_axis: Vec<usize>,
    indices: Vec<u16>,
    coeffs: Vec<f64>,
}

impl ChaosEvaluator {
    pub fn new(f: &ChaosExpansion) -> Result<Self> {
        let dim = f.dim;
        let mut max_per_axis = vec![0usize; dim];
        let mut indices = Vec::with_capacity(f.len() * dim);
        let mut coeffs = Vec::with_capacity(f.len());
        for (alpha, a) in f.iter() {
            for (m, &deg) in max_per_axis.iter_mut().zip(alpha.degrees()) {
                *m = (*m).max(deg as usize);
            }
            indices.extend_from_slice(alpha.degrees());
            coeffs.push(a);
        }
        if let Some(&worst) = max_per_axis.iter().max() {
            if worst > DEFAULT_MAX_DEGREE {
                return Err(Error::DegreeOverflow {
                    degree: worst,
                    cap: DEFAULT_MAX_DEGREE,
                });
            }
        }
        Ok(Self {
            dim,
            max_per_axis,
            indices,
            coeffs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let stride = self.max_per_axis.iter().max().map_or(1, |m| m + 1);
        let mut table = vec![0.0; stride * self.dim];
        for (axis, (&xi, &m)) in x.iter().zip(&self.max_per_axis).enumerate() {
            hermite_table(xi, &mut table[axis * stride..axis * stride + m + 1]);
        }
        if self.dim == 0 {
            return self.coeffs.iter().sum();
        }
        self.coeffs
            .iter()
            .zip(self.indices.chunks_exact(self.dim))
            .map(|(a, alpha)| {
                alpha.iter().enumerate().fold(*a, |acc, (axis, &deg)| {
                    acc * table[axis * stride + deg as usize]
                })
            })
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    alpha: Vec<u16>,
    a: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionRepr {
    d: usize,
    coeffs: Vec<TermRepr>,
    tail_bound: f64,
}

impl Serialize for ChaosExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionRepr {
            d: self.dim,
            coeffs: self
                .iter()
                .map(|(alpha, a)| TermRepr {
                    alpha: alpha.degrees().to_vec(),
                    a,
                })
                .collect(),
            tail_bound: self.tail_bound,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChaosExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExpansionRepr::deserialize(deserializer)?;
        let f = ChaosExpansion::from_terms(
            repr.d,
            repr.coeffs
                .into_iter()
                .map(|t| (MultiIndex::from(t.alpha), t.a)),
        )
        .map_err(D::Error::custom)?;
        if !(repr.tail_bound >= 0.0) {
            return Err(D::Error::custom("tail_bound must be non-negative"));
        }
        Ok(f.with_tail_bound(repr.tail_bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_d(terms: &[(u16, f64)]) -> ChaosExpansion {
        ChaosExpansion::from_terms(1, terms.iter().map(|&(n, a)| (MultiIndex::from([n]), a)))
            .unwrap()
    }

    #[test]
    fn gamma_examples() {
        let f = one_d(&[(0, 1.0), (3, 0.2)]);
        assert_eq!(f.gamma(1.0).unwrap(), f);
        let half = f.gamma(0.5).unwrap();
        assert!((half.coefficient(&MultiIndex::from([3])) - 0.025).abs() < 1e-17);
        assert_eq!(half.constant_term(), 1.0);
        let zero = f.gamma(0.0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.constant_term(), 1.0);
        assert!(matches!(f.gamma(1.5), Err(Error::Domain { .. })));
        assert!(matches!(f.gamma(-1.0001), Err(Error::Domain { .. })));
    }

    #[test]
    fn projections() {
        let f = one_d(&[(0, 1.0), (3, 0.2)]);
        assert_eq!(
            f.project_chaos(0).iter().collect::<Vec<_>>(),
            vec![(&MultiIndex::from([0]), 1.0)]
        );
        assert_eq!(
            f.project_chaos(3).iter().collect::<Vec<_>>(),
            vec![(&MultiIndex::from([3]), 0.2)]
        );
        assert!(f.project_chaos(2).is_empty());
        let p = f.project_chaos(3);
        assert_eq!(p.project_chaos(3), p);
    }

    #[test]
    fn wick_examples() {
        let he1 = one_d(&[(1, 1.0)]);
        let sq = wick_product(&he1, &he1).unwrap();
        assert_eq!(
            sq.iter().collect::<Vec<_>>(),
            vec![(&MultiIndex::from([2]), 1.0)]
        );

        let f = one_d(&[(3, 0.2)]);
        let ff = wick_product(&f, &f).unwrap();
        assert_eq!(ff.len(), 1);
        assert!((ff.coefficient(&MultiIndex::from([6])) - 0.04).abs() < 1e-17);

        let g = one_d(&[(0, 1.0), (2, -0.3), (5, 0.7)]);
        let unit = ChaosExpansion::one(1);
        assert_eq!(
            wick_product(&g, &unit).unwrap().iter().collect::<Vec<_>>(),
            g.iter().collect::<Vec<_>>()
        );
        assert!(wick_product(&g, &ChaosExpansion::one(2)).is_err());
    }

    #[test]
    fn wick_power_examples() {
        let a = 0.2;
        let f = one_d(&[(0, 1.0), (3, a)]);
        let sq = wick_power(&f, 2).unwrap();
        assert_eq!(sq.constant_term(), 1.0);
        assert!((sq.coefficient(&MultiIndex::from([3])) - 2.0 * a).abs() < 1e-16);
        assert!((sq.coefficient(&MultiIndex::from([6])) - a * a).abs() < 1e-16);
        assert_eq!(wick_power(&f, 1).unwrap(), f);
        let one = ChaosExpansion::one(1);
        assert_eq!(
            wick_power(&one, 17).unwrap().iter().collect::<Vec<_>>(),
            one.iter().collect::<Vec<_>>()
        );
        assert!(wick_power(&f, 0).is_err());

        // binary powering matches the naive loop
        let g = one_d(&[(0, 1.0), (1, 0.1), (3, -0.05), (4, 0.02)]);
        for n in 1..=9 {
            let fast = wick_power(&g, n).unwrap();
            let mut slow = g.clone();
            for _ in 1..n {
                slow = wick_product(&slow, &g).unwrap();
            }
            for (k, v) in slow.iter() {
                assert!((fast.coefficient(k) - v).abs() <= 1e-12, "n={n} {k:?}");
            }
            assert_eq!(fast.len(), slow.len());
        }
    }

    #[test]
    fn norms() {
        let f = one_d(&[(0, 1.0), (3, 0.2)]);
        assert!((f.l2_norm_sq() - 1.24).abs() < 1e-15);
        assert!((f.chaos_norm_of_order(3) - 0.24).abs() < 1e-15);
        assert_eq!(ChaosExpansion::one(3).l2_norm(), 1.0);
    }

    #[test]
    fn s_transform_examples() {
        let f = one_d(&[(0, 1.0), (3, 0.2)]);
        assert!((f.s_transform(&[1.0]).unwrap() - 1.2).abs() < 1e-15);
        assert_eq!(
            ChaosExpansion::one(2).s_transform(&[0.3, -2.0]).unwrap(),
            1.0
        );
        assert!(f.s_transform(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn exponential_vectors() {
        let e0 = exponential_vector(&[0.0, 0.0], 10);
        assert_eq!(e0.len(), 1);
        assert_eq!(e0.constant_term(), 1.0);
        assert_eq!(e0.tail_bound(), 0.0);

        // <ℰ(t), ℰ(s)> = Σ α! a_α b_α → e^{ts}
        let (t, s) = (0.8, 1.3);
        for degree in [5usize, 10, 20, 30] {
            let et = exponential_vector(&[t], degree);
            let es = exponential_vector(&[s], degree);
            let inner: f64 = et
                .iter()
                .map(|(k, a)| k.factorial() * a * es.coefficient(k))
                .sum();
            let partial: f64 = (0..=degree)
                .map(|n| (t * s).powi(n as i32) / (1..=n).map(|v| v as f64).product::<f64>())
                .sum();
            assert!((inner - partial).abs() < 1e-13 * partial);
            if degree == 30 {
                assert!((inner - (t * s).exp()).abs() < 1e-14);
            }
        }

        // l2 mass + tail = e^{‖h‖²}
        let h = [0.7, -0.4];
        let e = exponential_vector(&h, 6);
        let total = e.l2_norm_sq() + e.tail_bound();
        assert!((total - (0.65f64).exp()).abs() < 1e-13);

        // Γ(λ)ℰ(h) = ℰ(λh)
        let lam = 0.35;
        let lhs = exponential_vector(&h, 12).gamma(lam).unwrap();
        let rhs = exponential_vector(&[lam * h[0], lam * h[1]], 12);
        for (k, v) in rhs.iter() {
            assert!((lhs.coefficient(k) - v).abs() < 1e-16);
        }
    }

    #[test]
    fn truncation_charges_tail() {
        let f = one_d(&[(0, 1.0), (2, 0.5), (5, 0.1)]).with_truncation(3);
        assert_eq!(f.len(), 2);
        assert!((f.tail_bound() - 120.0 * 0.01).abs() < 1e-12);
        let tiny = one_d(&[(0, 1.0), (4, 1e-16)]);
        assert_eq!(tiny.len(), 1);
        assert!(tiny.tail_bound() > 0.0);
    }

    #[test]
    fn wick_truncation_cap() {
        let f = one_d(&[(0, 1.0), (4, 0.5)]);
        let p = wick_product_capped(&f, &f, 4).unwrap();
        assert_eq!(p.truncation(), 4);
        assert_eq!(p.max_degree(), 4);
        assert!((p.tail_bound() - 40320.0 * 0.25 * 0.25).abs() < 1e-9);
    }

    #[test]
    fn evaluation() {
        let f = one_d(&[(0, 1.0), (3, 0.2)]);
        // He_3(2) = 2
        assert!((f.eval(&[2.0]).unwrap() - 1.4).abs() < 1e-15);
        let g = ChaosExpansion::from_terms(2, [(MultiIndex::from([1, 2]), 3.0)]).unwrap();
        assert!((g.eval(&[2.0, 0.0]).unwrap() + 6.0).abs() < 1e-15);
        assert!(g.eval(&[1.0]).is_err());
    }

    #[test]
    fn json_shape() {
        let f = ChaosExpansion::from_terms(
            2,
            [
                (MultiIndex::from([0, 1]), -0.5),
                (MultiIndex::from([0, 0]), 1.0),
                (MultiIndex::from([1, 0]), 0.25),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"d":2,"coeffs":[{"alpha":[0,0],"a":1.0},{"alpha":[1,0],"a":0.25},{"alpha":[0,1],"a":-0.5}],"tail_bound":0.0}"#
        );
        let back: ChaosExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<ChaosExpansion>(
            r#"{"d":1,"coeffs":[{"alpha":[0,1],"a":1.0}],"tail_bound":0.0}"#
        )
        .is_err());
    }
}
