//! Probabilists' Hermite polynomials, multi-indices and Gauss-Hermite rules.
//!
//! Everything here is normalized against the standard Gaussian probability
//! measure `μ`: `He_n` is monic, `∫ He_m He_n dμ = δ_mn n!`, and quadrature
//! weights sum to one.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default cap on the Hermite degree accepted by [`hermite_eval`].
pub const DEFAULT_MAX_DEGREE: usize = 60;
/// Default cap on the number of nodes in a tensor grid.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;
/// Largest supported 1-d Gauss-Hermite rule.
pub const MAX_RULE_NODES: usize = 200;

// Fixed chunk size for node reductions; keeps sums bit-reproducible
// regardless of the number of worker threads.
const REDUCTION_CHUNK: usize = 2048;

/// `He_n(x)` with the default degree cap.
pub fn hermite_eval(n: usize, x: f64) -> Result<f64> {
    hermite_eval_with_cap(n, x, DEFAULT_MAX_DEGREE)
}

/// `He_n(x)` via `He_{n+1} = x He_n - n He_{n-1}`.
pub fn hermite_eval_with_cap(n: usize, x: f64, cap: usize) -> Result<f64> {
    if n > cap {
        return Err(Error::DegreeOverflow { degree: n, cap });
    }
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Fills `out[k] = He_k(x)` for `k < out.len()`.
pub(crate) fn hermite_table(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 2..out.len() {
        out[k] = x * out[k - 1] - (k - 1) as f64 * out[k - 2];
    }
}

/// Degree vector `α ∈ ℕ₀^d` indexing the tensor basis element
/// `H_α(x) = Π He_{α_i}(x_i)`.
///
/// Ordered graded-lexicographically: total degree first, then by degree
/// vector with larger leading entries first, so `(1,0)` precedes `(0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(SmallVec<[u16; 4]>);

impl MultiIndex {
    pub fn new<I: IntoIterator<Item = u16>>(degrees: I) -> Self {
        Self(degrees.into_iter().collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(SmallVec::from_elem(0, dim))
    }

    /// `e_i` in dimension `dim`, i.e. `He_1(x_i)`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut idx = Self::zero(dim);
        idx.0[axis] = 1;
        idx
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degrees(&self) -> &[u16] {
        &self.0
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `α! = Π α_i!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&a| (2..=a as u32).map(f64::from).product::<f64>())
            .product()
    }

    /// `α!` in exact integer arithmetic; `None` on overflow (total degree > 34).
    pub fn factorial_exact(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &a| {
            (2..=a as u128).try_fold(acc, |p, k| p.checked_mul(k))
        })
    }

    /// Index sum `α + β`.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `h^α = Π h_i^{α_i}`.
    pub fn monomial(&self, h: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(h)
            .map(|(&a, &x)| x.powi(a as i32))
            .product()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<Vec<u16>> for MultiIndex {
    fn from(v: Vec<u16>) -> Self {
        Self(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[u16; N]> for MultiIndex {
    fn from(v: [u16; N]) -> Self {
        Self::new(v)
    }
}

/// `H_α(x) = Π He_{α_i}(x_i)`.
pub fn multi_hermite_eval(alpha: &MultiIndex, x: &[f64]) -> Result<f64> {
    if alpha.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: x.len(),
        });
    }
    alpha
        .degrees()
        .iter()
        .zip(x)
        .try_fold(
            1.0,
            |acc, (&a, &xi)| Ok(acc * hermite_eval(a as usize, xi)?),
        )
}

/// All multi-indices with `|α| <= max_total_degree`, in graded-lex order.
///
/// The count is `C(dim + max_total_degree, dim)`.
pub fn multiindex_iter(dim: usize, max_total_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut buf = vec![0u16; dim];
    for total in 0..=max_total_degree {
        compositions(total, 0, &mut buf, &mut out);
    }
    out
}

// Compositions of `remaining` into buf[pos..], leading entry descending.
fn compositions(remaining: usize, pos: usize, buf: &mut [u16], out: &mut Vec<MultiIndex>) {
    if pos + 1 >= buf.len() {
        if let Some(last) = buf.last_mut() {
            *last = remaining as u16;
            out.push(MultiIndex::new(buf.iter().copied()));
        } else if remaining == 0 {
            out.push(MultiIndex::zero(0));
        }
        return;
    }
    for lead in (0..=remaining).rev() {
        buf[pos] = lead as u16;
        compositions(remaining - lead, pos + 1, buf, out);
    }
}

/// Nodes and probability weights integrating against `μ` on `ℝ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    dim: usize,
    // row-major, `len() * dim` entries
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Builds a rule from flat row-major nodes and matching weights.
    pub fn from_parts(dim: usize, nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 || nodes.len() != weights.len() * dim {
            return Err(Error::DimensionMismatch {
                expected: weights.len() * dim.max(1),
                got: nodes.len(),
            });
        }
        Ok(Self {
            dim,
            nodes,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(x_i)`, reduced in fixed-size chunks so the result does not
    /// depend on thread scheduling.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let partials: Vec<f64> = (0..self.len())
            .into_par_iter()
            .step_by(REDUCTION_CHUNK)
            .map(|start| {
                let end = (start + REDUCTION_CHUNK).min(self.len());
                (start..end)
                    .map(|i| self.weights[i] * f(self.node(i)))
                    .sum::<f64>()
            })
            .collect();
        partials.iter().sum()
    }
}

/// `k`-node Gauss-Hermite rule for the standard Gaussian probability measure.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix with
/// off-diagonal `√i`, polished by Newton steps on the orthonormal
/// recurrence; weights are `1 / (k ψ_{k-1}(x)²)` with `ψ_n = He_n / √(n!)`.
/// Mirror pairs are averaged so the rule is exactly symmetric.
pub fn gauss_hermite_rule(k: usize) -> Result<QuadratureRule> {
    if k == 0 || k > MAX_RULE_NODES {
        return Err(Error::NodeCount {
            k,
            max: MAX_RULE_NODES,
        });
    }
    if k == 1 {
        return QuadratureRule::from_parts(1, vec![0.0], vec![1.0]);
    }

    let jacobi = DMatrix::from_fn(k, k, |i, j| {
        if i + 1 == j {
            (j as f64).sqrt()
        } else if j + 1 == i {
            (i as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig =
        SymmetricEigen::try_new(jacobi, f64::EPSILON, 100 * k).ok_or(Error::NodeSolver { k })?;
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let mut weights = Vec::with_capacity(k);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pk, pkm1) = orthonormal_pair(k, *x);
            let step = pk / ((k as f64).sqrt() * pkm1);
            if !step.is_finite() {
                return Err(Error::NodeSolver { k });
            }
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
        let (_, pkm1) = orthonormal_pair(k, *x);
        weights.push(1.0 / (k as f64 * pkm1 * pkm1));
    }

    for i in 0..k / 2 {
        let j = k - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
        return Err(Error::NodeSolver { k });
    }
    QuadratureRule::from_parts(1, nodes, weights)
}

// (ψ_k(x), ψ_{k-1}(x)) for the orthonormal probabilists' Hermite functions
// without the Gaussian factor.
fn orthonormal_pair(k: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, x);
    for n in 1..k {
        let next = (x * cur - (n as f64).sqrt() * prev) / ((n + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Full tensor product of a 1-d rule, with the default node budget.
pub fn tensor_rule(rule_1d: &QuadratureRule, dim: usize) -> Result<QuadratureRule> {
    tensor_rule_with_budget(rule_1d, dim, DEFAULT_NODE_BUDGET)
}

pub fn tensor_rule_with_budget(
    rule_1d: &QuadratureRule,
    dim: usize,
    budget: usize,
) -> Result<QuadratureRule> {
    if rule_1d.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: rule_1d.dim(),
        });
    }
    if dim == 0 {
        return Err(Error::Domain {
            what: "dimension",
            value: 0.0,
            domain: "d >= 1",
        });
    }
    let k = rule_1d.len();
    let total = (k as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::NodeBudget {
            nodes: total,
            budget,
        });
    }
    let total = total as usize;
    let mut nodes = Vec::with_capacity(total * dim);
    let mut weights = Vec::with_capacity(total);
    let mut digits = vec![0usize; dim];
    for _ in 0..total {
        let mut w = 1.0;
        for &i in &digits {
            nodes.push(rule_1d.nodes[i]);
            w *= rule_1d.weights[i];
        }
        weights.push(w);
        // odometer, last coordinate fastest
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < k {
                break;
            }
            *slot = 0;
        }
    }
    QuadratureRule::from_parts(dim, nodes, weights)
}

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite_eval(2, 0.0).unwrap(), -1.0);
        assert_eq!(hermite_eval(3, 2.0).unwrap(), 2.0);
        assert_eq!(hermite_eval(4, 1.0).unwrap(), -2.0);
        assert_eq!(hermite_eval(0, 7.5).unwrap(), 1.0);
    }

    #[test]
    fn degree_cap() {
        assert!(hermite_eval(60, 1.0).is_ok());
        assert_eq!(
            hermite_eval(61, 1.0),
            Err(Error::DegreeOverflow {
                degree: 61,
                cap: 60
            })
        );
        assert!(hermite_eval_with_cap(61, 1.0, 80).is_ok());
    }

    #[test]
    fn recurrence_matches_monomial_expansion() {
        // He_n coefficients from the explicit sum n! Σ (-1)^m x^{n-2m} / (m! (n-2m)! 2^m)
        let explicit = |n: usize, x: f64| {
            let mut s = 0.0;
            for m in 0..=n / 2 {
                let c = (-1f64).powi(m as i32) * (1..=n).map(|v| v as f64).product::<f64>()
                    / ((1..=m).map(|v| v as f64).product::<f64>()
                        * (1..=n - 2 * m).map(|v| v as f64).product::<f64>()
                        * 2f64.powi(m as i32));
                s += c * x.powi((n - 2 * m) as i32);
            }
            s
        };
        let mut state = 12345u64;
        for _ in 0..100 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let x = ((state >> 11) as f64 / (1u64 << 53) as f64) * 8.0 - 4.0;
            for n in 0..=8 {
                let a = hermite_eval(n, x).unwrap();
                let b = explicit(n, x);
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn multi_index_basics() {
        let a = MultiIndex::from([1, 2]);
        assert_eq!(a.total_degree(), 3);
        assert_eq!(a.factorial(), 2.0);
        assert_eq!(MultiIndex::from([3, 4]).factorial_exact(), Some(144));
        assert_eq!(
            MultiIndex::from([30]).factorial_exact(),
            Some(265_252_859_812_191_058_636_308_480_000_000)
        );
        assert!(MultiIndex::from([1])
            .checked_add(&MultiIndex::from([1, 0]))
            .is_err());
    }

    #[test]
    fn multi_hermite_values() {
        assert_eq!(
            multi_hermite_eval(&MultiIndex::from([1, 2]), &[2.0, 0.0]).unwrap(),
            -2.0
        );
        assert_eq!(
            multi_hermite_eval(&MultiIndex::zero(3), &[0.3, -9.0, 4.0]).unwrap(),
            1.0
        );
        assert_eq!(
            multi_hermite_eval(&MultiIndex::from([2, 0]), &[3.0, -1.7]).unwrap(),
            8.0
        );
        assert!(multi_hermite_eval(&MultiIndex::from([2, 0]), &[3.0]).is_err());
    }

    #[test]
    fn graded_lex_listing() {
        let one = multiindex_iter(1, 3);
        assert_eq!(
            one,
            (0..=3).map(|n| MultiIndex::from([n])).collect::<Vec<_>>()
        );
        let two = multiindex_iter(2, 1);
        assert_eq!(
            two,
            vec![
                MultiIndex::from([0, 0]),
                MultiIndex::from([1, 0]),
                MultiIndex::from([0, 1])
            ]
        );
        assert_eq!(multiindex_iter(3, 4).len(), 35);
        for d in 1..=4 {
            for deg in 0..=6 {
                let all = multiindex_iter(d, deg);
                assert_eq!(all.len() as f64, binomial(d + deg, d));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn small_rules() {
        let r1 = gauss_hermite_rule(1).unwrap();
        assert_eq!(r1.node(0), &[0.0]);
        assert_eq!(r1.weights(), &[1.0]);

        let r2 = gauss_hermite_rule(2).unwrap();
        assert_relative_eq!(r2.node(0)[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(r2.node(1)[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(r2.weights()[0], 0.5, epsilon = 1e-14);
        assert_relative_eq!(r2.integrate(|x| x[0] * x[0]), 1.0, epsilon = 1e-14);
        // degree 4 is beyond exactness: rule gives 1, the true moment is 3
        assert_relative_eq!(r2.integrate(|x| x[0].powi(4)), 1.0, epsilon = 1e-14);

        let r10 = gauss_hermite_rule(10).unwrap();
        let v = r10.integrate(|x| hermite_eval(6, x[0]).unwrap().powi(2));
        assert!((v - 720.0).abs() < 1e-9);
    }

    #[test]
    fn rule_bounds() {
        assert!(matches!(
            gauss_hermite_rule(0),
            Err(Error::NodeCount { .. })
        ));
        assert!(matches!(
            gauss_hermite_rule(201),
            Err(Error::NodeCount { .. })
        ));
        for k in [3, 17, 64, 128, 200] {
            let r = gauss_hermite_rule(k).unwrap();
            let total: f64 = r.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "k={k} sum={total}");
            assert!(r.weights().iter().all(|&w| w > 0.0));
            for i in 0..k {
                assert_eq!(r.node(i)[0], -r.node(k - 1 - i)[0]);
            }
        }
    }

    #[test]
    fn rule_exactness() {
        for k in [2usize, 5, 8, 12, 20] {
            let r = gauss_hermite_rule(k).unwrap();
            let odd = r.integrate(|x| x[0].powi(2 * k as i32 - 1));
            let scale = r.integrate(|x| x[0].abs().powi(2 * k as i32 - 1));
            assert!(odd.abs() <= 1e-13 * scale, "k={k}");
            // (2k-3)!!
            let even_exact: f64 = (1..=(2 * k - 3)).step_by(2).map(|v| v as f64).product();
            let even = r.integrate(|x| x[0].powi(2 * k as i32 - 2));
            assert!((even - even_exact).abs() <= 1e-10 * even_exact, "k={k}");
        }
    }

    #[test]
    fn orthogonality_through_degree_twelve() {
        let r = gauss_hermite_rule(13).unwrap();
        for m in 0..=12 {
            for n in 0..=12 {
                let v = r
                    .integrate(|x| hermite_eval(m, x[0]).unwrap() * hermite_eval(n, x[0]).unwrap());
                let fact: f64 = (1..=n).map(|v| v as f64).product();
                let expect = if m == n { fact } else { 0.0 };
                assert!((v - expect).abs() <= 1e-9 * fact, "m={m} n={n} v={v}");
            }
        }
    }

    #[test]
    fn tensor_rules() {
        let r1 = gauss_hermite_rule(1).unwrap();
        let t = tensor_rule(&r1, 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.node(0), &[0.0, 0.0, 0.0]);
        assert_eq!(t.weights(), &[1.0]);

        let r2 = gauss_hermite_rule(2).unwrap();
        let t = tensor_rule(&r2, 2).unwrap();
        assert_eq!(t.len(), 4);
        for (x, w) in t.iter() {
            assert!((x[0].abs() - 1.0).abs() < 1e-14 && (x[1].abs() - 1.0).abs() < 1e-14);
            assert!((w - 0.25).abs() < 1e-15);
        }
        assert!(t.integrate(|x| x[0] * x[1]).abs() < 1e-15);

        let r64 = gauss_hermite_rule(64).unwrap();
        assert!(matches!(
            tensor_rule(&r64, 4),
            Err(Error::NodeBudget { .. })
        ));
        assert!(tensor_rule_with_budget(&r2, 3, 7).is_err());
    }
}
