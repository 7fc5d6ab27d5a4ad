//! `L^p(μ)` norms, `L¹` distance to the Gaussian density and total variation.
//!
//! Every estimate carries an error proxy: for tensor Gauss-Hermite grids the
//! difference between the `k`-node and `2k`-node results, for quasi-Monte
//! Carlo the difference between the two half samples.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::chaos::{ChaosEvaluator, ChaosExpansion};
use crate::error::{Error, Result};
use crate::hermite::{gauss_hermite_rule, tensor_rule, QuadratureRule, MAX_RULE_NODES};

/// Default 1-d node count (doubled for the error estimate).
pub const DEFAULT_NODES_1D: usize = 64;
/// Default point count for quasi-Monte Carlo integration in `d >= 3`.
pub const DEFAULT_QMC_POINTS: usize = 200_000;

/// A real function on `ℝ^d`.
pub trait Evaluator: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;
}

impl Evaluator for ChaosEvaluator {
    fn dim(&self) -> usize {
        ChaosEvaluator::dim(self)
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.eval_unchecked(x)
    }
}

/// Wraps a closure as an [`Evaluator`].
pub struct FnEvaluator<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnEvaluator<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Evaluator for FnEvaluator<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// How integrals against `μ` are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum QuadratureSpec {
    Gauss { nodes_1d: usize },
    QuasiMonteCarlo { qmc_points: usize },
}

impl QuadratureSpec {
    /// Tensor Gauss-Hermite for `d <= 2`, quasi-Monte Carlo above.
    pub fn default_for(dim: usize) -> Self {
        if dim <= 2 {
            Self::Gauss {
                nodes_1d: DEFAULT_NODES_1D,
            }
        } else {
            Self::QuasiMonteCarlo {
                qmc_points: DEFAULT_QMC_POINTS,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub nodes_used: usize,
}

/// A pair of rules whose disagreement estimates the integration error.
///
/// In one dimension with a Gauss spec, integrals of `|g|^p` are split at
/// the sign changes of `g` and done segment-wise with Gauss-Legendre, since
/// the kinks ruin the spectral convergence of Gauss-Hermite.
#[derive(Clone, Debug)]
pub struct Integrator {
    spec: QuadratureSpec,
    coarse: QuadratureRule,
    fine: QuadratureRule,
    legendre: Option<(LegendreRule, LegendreRule)>,
}

// Gauss-Legendre on [-1, 1].
#[derive(Clone, Debug)]
struct LegendreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl LegendreRule {
    fn new(k: usize) -> Result<Self> {
        let mut jacobi = DMatrix::<f64>::zeros(k, k);
        for i in 1..k {
            let b = i as f64 / ((4 * i * i - 1) as f64).sqrt();
            jacobi[(i, i - 1)] = b;
            jacobi[(i - 1, i)] = b;
        }
        let eig = SymmetricEigen::try_new(jacobi, 1e-15, 10_000).ok_or(Error::NodeSolver { k })?;
        let mut pairs: Vec<(f64, f64)> = (0..k)
            .map(|j| (eig.eigenvalues[j], 2.0 * eig.eigenvectors[(0, j)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w * f(mid + half * t))
            .sum::<f64>()
    }
}

// Piecewise scheme parameters: half-width of the window, scan resolution and
// the longest segment handed to one Legendre rule.
const WINDOW: f64 = 14.0;
const SCAN_CELLS: usize = 4096;
const MAX_SEGMENT: f64 = 2.0;

impl Integrator {
    pub fn new(spec: QuadratureSpec, dim: usize) -> Result<Self> {
        match spec {
            QuadratureSpec::Gauss { nodes_1d } => {
                if nodes_1d == 0 || 2 * nodes_1d > MAX_RULE_NODES {
                    return Err(Error::NodeCount {
                        k: nodes_1d,
                        max: MAX_RULE_NODES / 2,
                    });
                }
                let coarse = tensor_rule(&gauss_hermite_rule(nodes_1d)?, dim)?;
                let fine = tensor_rule(&gauss_hermite_rule(2 * nodes_1d)?, dim)?;
                let legendre = if dim == 1 {
                    let k = nodes_1d.clamp(16, 64);
                    Some((LegendreRule::new(k)?, LegendreRule::new(2 * k)?))
                } else {
                    None
                };
                Ok(Self {
                    spec,
                    coarse,
                    fine,
                    legendre,
                })
            }
            QuadratureSpec::QuasiMonteCarlo { qmc_points } => {
                if qmc_points < 2 {
                    return Err(Error::Domain {
                        what: "qmc_points",
                        value: qmc_points as f64,
                        domain: ">= 2",
                    });
                }
                let half = qmc_points / 2;
                let first = halton_gaussian(dim, 0, half)?;
                let second = halton_gaussian(dim, half, half)?;
                Ok(Self {
                    spec,
                    coarse: first,
                    fine: second,
                    legendre: None,
                })
            }
        }
    }

    /// Gauss-Hermite pair with `nodes_1d` and `2 nodes_1d` nodes per axis.
    pub fn gauss(dim: usize, nodes_1d: usize) -> Result<Self> {
        Self::new(QuadratureSpec::Gauss { nodes_1d }, dim)
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.fine.dim()
    }

    /// The more accurate of the two rules.
    pub fn rule(&self) -> &QuadratureRule {
        &self.fine
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: dim,
            });
        }
        Ok(())
    }

    /// `∫ g dμ` with its error estimate.
    pub fn estimate<G>(&self, g: G) -> IntegralEstimate
    where
        G: Fn(&[f64]) -> f64 + Sync,
    {
        self.estimate_mapped(g, |v| v)
    }

    // Integrates `g` on both rules and reports `post` of the result.
    fn estimate_mapped<G, P>(&self, g: G, post: P) -> IntegralEstimate
    where
        G: Fn(&[f64]) -> f64 + Sync,
        P: Fn(f64) -> f64,
    {
        let a = self.coarse.integrate(&g);
        let b = self.fine.integrate(&g);
        match self.spec {
            QuadratureSpec::Gauss { .. } => IntegralEstimate {
                value: post(b),
                error_estimate: (post(a) - post(b)).abs(),
                nodes_used: self.fine.len(),
            },
            QuadratureSpec::QuasiMonteCarlo { .. } => IntegralEstimate {
                value: post(0.5 * (a + b)),
                error_estimate: (post(a) - post(b)).abs(),
                nodes_used: self.coarse.len() + self.fine.len(),
            },
        }
    }

    /// `∫ |g|^p dμ`, reported through `post`.
    fn estimate_abs_pow<G, P>(&self, g: G, p: f64, post: P) -> IntegralEstimate
    where
        G: Fn(&[f64]) -> f64 + Sync,
        P: Fn(f64) -> f64,
    {
        // even integer powers are smooth
        let smooth = p % 2.0 == 0.0;
        let (Some((coarse, fine)), false) = (&self.legendre, smooth) else {
            return self.estimate_mapped(|x| g(x).abs().powf(p), post);
        };
        let h = |x: f64| g(&[x]);
        let density = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut breaks = vec![-WINDOW];
        let step = 2.0 * WINDOW / SCAN_CELLS as f64;
        let mut evals = SCAN_CELLS + 1;
        let mut prev = (-WINDOW, h(-WINDOW));
        for i in 1..=SCAN_CELLS {
            let x = -WINDOW + i as f64 * step;
            let v = h(x);
            if v == 0.0 {
                // only where a run of exact zeros starts
                if prev.1 != 0.0 {
                    breaks.push(x);
                }
            } else if prev.1 != 0.0 && (v > 0.0) != (prev.1 > 0.0) {
                let (root, n) = bisect(&h, prev.0, x, prev.1);
                evals += n;
                breaks.push(root);
            }
            prev = (x, v);
        }
        breaks.push(WINDOW);
        breaks.dedup();

        let (mut a, mut b) = (0.0, 0.0);
        for w in breaks.windows(2) {
            let pieces = ((w[1] - w[0]) / MAX_SEGMENT).ceil().max(1.0) as usize;
            let len = (w[1] - w[0]) / pieces as f64;
            for j in 0..pieces {
                let lo = w[0] + j as f64 * len;
                let hi = if j + 1 == pieces { w[1] } else { lo + len };
                let f = |x: f64| h(x).abs().powf(p) * density(x);
                a += coarse.integrate(lo, hi, f);
                b += fine.integrate(lo, hi, f);
                evals += coarse.nodes.len() + fine.nodes.len();
            }
        }
        IntegralEstimate {
            value: post(b),
            error_estimate: (post(a) - post(b)).abs(),
            nodes_used: evals,
        }
    }
}

fn bisect<F: Fn(f64) -> f64>(h: &F, mut lo: f64, mut hi: f64, f_lo: f64) -> (f64, usize) {
    let lo_positive = f_lo > 0.0;
    let mut n = 0;
    while hi - lo > 1e-15 * (1.0 + lo.abs()) && n < 80 {
        let mid = 0.5 * (lo + hi);
        let v = h(mid);
        n += 1;
        if v == 0.0 {
            return (mid, n);
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), n)
}

// Halton points (indices start..start+count, skipping 0) mapped to N(0, I).
fn halton_gaussian(dim: usize, start: usize, count: usize) -> Result<QuadratureRule> {
    const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    if dim == 0 || dim > PRIMES.len() {
        return Err(Error::Domain {
            what: "qmc dimension",
            value: dim as f64,
            domain: "1..=16",
        });
    }
    let normal = Normal::standard();
    let mut nodes = Vec::with_capacity(count * dim);
    for i in 0..count {
        let index = (start + i + 1) as u64;
        for &base in &PRIMES[..dim] {
            nodes.push(normal.inverse_cdf(radical_inverse(index, base)));
        }
    }
    let weights = vec![1.0 / count as f64; count];
    QuadratureRule::from_parts(dim, nodes, weights)
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut acc = 0.0;
    while index > 0 {
        acc += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    acc
}

/// `‖f‖_p = (∫ |f|^p dμ)^{1/p}`.
pub fn lp_norm<E: Evaluator + ?Sized>(
    f: &E,
    p: f64,
    integrator: &Integrator,
) -> Result<IntegralEstimate> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "[1, ∞)",
        });
    }
    integrator.check(f.dim())?;
    Ok(integrator.estimate_abs_pow(|x| f.eval(x), p, |v| v.powf(1.0 / p)))
}

/// [`lp_norm`] for a chaos expansion.
pub fn lp_norm_chaos(
    f: &ChaosExpansion,
    p: f64,
    integrator: &Integrator,
) -> Result<IntegralEstimate> {
    lp_norm(&ChaosEvaluator::new(f)?, p, integrator)
}

/// `∫ |f − 1| dμ`.
pub fn l1_distance_to_one(f: &ChaosExpansion, integrator: &Integrator) -> Result<IntegralEstimate> {
    l1_distance_to_one_eval(&ChaosEvaluator::new(f)?, integrator)
}

pub fn l1_distance_to_one_eval<E: Evaluator + ?Sized>(
    f: &E,
    integrator: &Integrator,
) -> Result<IntegralEstimate> {
    integrator.check(f.dim())?;
    Ok(integrator.estimate_abs_pow(|x| f.eval(x) - 1.0, 1.0, |v| v))
}

/// Total variation between the law with `μ`-density `f` and `μ`:
/// half of [`l1_distance_to_one`].
pub fn tv_distance(f: &ChaosExpansion, integrator: &Integrator) -> Result<IntegralEstimate> {
    f.ensure_density()?;
    let l1 = l1_distance_to_one(f, integrator)?;
    Ok(IntegralEstimate {
        value: 0.5 * l1.value,
        error_estimate: 0.5 * l1.error_estimate,
        nodes_used: l1.nodes_used,
    })
}
