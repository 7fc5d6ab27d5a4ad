//! Finite Gaussian mixtures with diagonal covariances.
//!
//! These laws have closed-form `μ`-densities, closed-form chaos
//! coefficients, exact moments, and are closed under the linear operations
//! that `Γ` and `◇` model, so every downstream quantity can be checked
//! against an independent closed form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::chaos::ChaosExpansion;
use crate::error::{Error, Result};
use crate::hermite::{multiindex_iter, QuadratureRule};
use crate::integrate::Evaluator;

/// Default truncation degree for corpus expansions.
pub const DEFAULT_TRUNCATION: usize = 24;

/// Coordinate variances must lie strictly inside this range.
pub const MIN_VARIANCE: f64 = 0.5;
pub const MAX_VARIANCE: f64 = 2.0;

/// Tolerance for the moment checks.
pub const MOMENT_TOLERANCE: f64 = 1e-12;

/// Extra degrees summed past the truncation when bounding the tail.
const TAIL_HORIZON: usize = 300;
/// Largest mixture produced by [`GaussianMixtureLaw::normalized_sum`] and friends.
const COMPONENT_BUDGET: usize = 200_000;
/// Monte Carlo sample count for `E‖X‖³` when `d > 1`.
const BETA_SAMPLES: usize = 100_000;
const BETA_STREAM: u64 = 0xBE7A;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub p: f64,
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "LawRepr")]
pub struct GaussianMixtureLaw {
    d: usize,
    components: Vec<MixtureComponent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LawRepr {
    d: usize,
    components: Vec<MixtureComponent>,
}

impl TryFrom<LawRepr> for GaussianMixtureLaw {
    type Error = Error;

    fn try_from(r: LawRepr) -> Result<Self> {
        Self::new(r.d, r.components)
    }
}

/// Exact first three moments of a mixture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentCheck {
    pub mean_ok: bool,
    pub cov_ok: bool,
    pub mean: Vec<f64>,
    /// `E[X Xᵀ]`, row-major.
    pub second_moment: Vec<f64>,
    /// `E[X_i³]` per coordinate.
    pub third_moment: Vec<f64>,
}

impl GaussianMixtureLaw {
    pub fn new(d: usize, components: Vec<MixtureComponent>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidLaw("dimension must be at least 1".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidLaw(
                "a mixture needs at least one component".into(),
            ));
        }
        let mut total = 0.0;
        for (j, c) in components.iter().enumerate() {
            if !(c.p > 0.0 && c.p.is_finite()) {
                return Err(Error::InvalidLaw(format!(
                    "component {j}: weight {} is not positive",
                    c.p
                )));
            }
            if c.mean.len() != d || c.var.len() != d {
                return Err(Error::InvalidLaw(format!(
                    "component {j}: mean/var length must equal d = {d}"
                )));
            }
            if c.mean.iter().any(|m| !m.is_finite()) {
                return Err(Error::InvalidLaw(format!("component {j}: non-finite mean")));
            }
            if c.var.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::InvalidLaw(format!(
                    "component {j}: variances must be positive"
                )));
            }
            total += c.p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidLaw(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { d, components })
    }

    pub fn gaussian(mean: Vec<f64>, var: Vec<f64>) -> Result<Self> {
        Self::new(mean.len(), vec![MixtureComponent { p: 1.0, mean, var }])
    }

    pub fn standard_normal(d: usize) -> Self {
        Self::gaussian(vec![0.0; d], vec![1.0; d]).expect("valid")
    }

    /// `½ N(m, s²) + ½ N(−m, s²)`.
    pub fn symmetric_pair(mean: Vec<f64>, var: Vec<f64>) -> Result<Self> {
        let neg = mean.iter().map(|m| -m).collect();
        Self::new(
            mean.len(),
            vec![
                MixtureComponent {
                    p: 0.5,
                    mean,
                    var: var.clone(),
                },
                MixtureComponent {
                    p: 0.5,
                    mean: neg,
                    var,
                },
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Law of `(X, Y)` for independent `X ~ self`, `Y ~ other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut comps = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                comps.push(MixtureComponent {
                    p: a.p * b.p,
                    mean: a.mean.iter().chain(&b.mean).copied().collect(),
                    var: a.var.iter().chain(&b.var).copied().collect(),
                });
            }
        }
        Self::new(self.d + other.d, renormalized(comps))
    }

    /// `d` independent copies of this law stacked into one vector.
    pub fn iid_power(&self, d: usize) -> Result<Self> {
        let mut law = self.clone();
        for _ in 1..d {
            law = law.product(self)?;
        }
        Ok(law)
    }

    /// `f(x) = dν/dμ (x)`.
    pub fn density_ratio(&self, x: &[f64]) -> f64 {
        let base: f64 = x.iter().map(|v| 0.5 * v * v).sum();
        self.components
            .iter()
            .map(|c| {
                let mut log = base + c.p.ln();
                for ((xi, m), s2) in x.iter().zip(&c.mean).zip(&c.var) {
                    log -= 0.5 * s2.ln() + (xi - m) * (xi - m) / (2.0 * s2);
                }
                log.exp()
            })
            .sum()
    }

    /// Requires every coordinate variance in `(1/2, 2)`.
    pub fn check_integrable(&self) -> Result<()> {
        for (j, c) in self.components.iter().enumerate() {
            for (i, &s2) in c.var.iter().enumerate() {
                if !(s2 > MIN_VARIANCE && s2 < MAX_VARIANCE) {
                    return Err(Error::Integrability {
                        component: j,
                        coordinate: i,
                        variance: s2,
                    });
                }
            }
        }
        Ok(())
    }

    /// Chaos coefficients `a_α = E[H_α(X)] / α!` up to total degree `degree`.
    ///
    /// Per coordinate, `Σ_n tⁿ E[He_n(Y)]/n! = exp(t m + t²(s² − 1)/2)` for
    /// `Y ~ N(m, s²)`, giving `(n+1) c_{n+1} = m c_n + (s² − 1) c_{n−1}`.
    /// The tail bound is `(Σ_j p_j √T_j)²`, with `T_j` the exact tail energy
    /// of component `j` summed well past the truncation.
    pub fn chaos_coefficients(&self, degree: usize) -> Result<ChaosExpansion> {
        self.check_integrable()?;
        let per_component: Vec<Vec<Vec<f64>>> = self
            .components
            .iter()
            .map(|c| {
                c.mean
                    .iter()
                    .zip(&c.var)
                    .map(|(&m, &s2)| axis_coefficients(m, s2, degree))
                    .collect()
            })
            .collect();
        let terms = multiindex_iter(self.d, degree).into_iter().map(|alpha| {
            let a: f64 = self
                .components
                .iter()
                .zip(&per_component)
                .map(|(c, axes)| {
                    c.p * alpha
                        .degrees()
                        .iter()
                        .zip(axes)
                        .map(|(&k, coef)| coef[k as usize])
                        .product::<f64>()
                })
                .sum();
            (alpha, a)
        });
        let expansion = ChaosExpansion::from_terms(self.d, terms)?.with_truncation(degree);
        let dropped = expansion.tail_bound();

        let mut root_tail = 0.0;
        for c in &self.components {
            let horizon = degree + TAIL_HORIZON;
            let mut total = vec![1.0];
            for (&m, &s2) in c.mean.iter().zip(&c.var) {
                total = convolve(&total, &axis_energy(m, s2, horizon), horizon);
            }
            root_tail += c.p * tail_sum(&total, degree)?.sqrt();
        }
        Ok(expansion.with_tail_bound(root_tail * root_tail + dropped))
    }

    pub fn moments(&self) -> MomentCheck {
        let d = self.d;
        let mut mean = vec![0.0; d];
        let mut second = vec![0.0; d * d];
        let mut third = vec![0.0; d];
        for c in &self.components {
            for i in 0..d {
                let (m, s2) = (c.mean[i], c.var[i]);
                mean[i] += c.p * m;
                third[i] += c.p * (m * m * m + 3.0 * m * s2);
                for j in 0..d {
                    let diag = if i == j { s2 } else { 0.0 };
                    second[i * d + j] += c.p * (m * c.mean[j] + diag);
                }
            }
        }
        let mean_ok = mean.iter().all(|m| m.abs() <= MOMENT_TOLERANCE);
        let cov_ok = (0..d).all(|i| {
            (0..d).all(|j| {
                let target = if i == j { 1.0 } else { 0.0 };
                (second[i * d + j] - target).abs() <= MOMENT_TOLERANCE
            })
        });
        MomentCheck {
            mean_ok,
            cov_ok,
            mean,
            second_moment: second,
            third_moment: third,
        }
    }

    pub fn is_standardized(&self) -> bool {
        let m = self.moments();
        m.mean_ok && m.cov_ok
    }

    /// Base law `X` with `self = √α X + √(1−α) Z`: means `m/√α`, variances
    /// `(s² − (1−α))/α`, which must stay above 1/2.
    pub fn smoothness_decompose(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain {
                what: "alpha",
                value: alpha,
                domain: "(0, 1]",
            });
        }
        let root = alpha.sqrt();
        let mut comps = Vec::with_capacity(self.components.len());
        for (j, c) in self.components.iter().enumerate() {
            let mut var = Vec::with_capacity(self.d);
            for (i, &s2) in c.var.iter().enumerate() {
                let base = (s2 - (1.0 - alpha)) / alpha;
                if !(base > MIN_VARIANCE) {
                    return Err(Error::Smoothness {
                        alpha,
                        component: j,
                        coordinate: i,
                        base_variance: base,
                    });
                }
                var.push(base);
            }
            comps.push(MixtureComponent {
                p: c.p,
                mean: c.mean.iter().map(|m| m / root).collect(),
                var,
            });
        }
        Self::new(self.d, comps)
    }

    /// Law of `λX + √(1−λ²) Z`, whose `μ`-density is `Γ(λ)f`.
    pub fn smoothed(&self, lambda: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&lambda) {
            return Err(Error::Domain {
                what: "lambda",
                value: lambda,
                domain: "[-1, 1]",
            });
        }
        let noise = 1.0 - lambda * lambda;
        let comps = self
            .components
            .iter()
            .map(|c| MixtureComponent {
                p: c.p,
                mean: c.mean.iter().map(|m| lambda * m).collect(),
                var: c
                    .var
                    .iter()
                    .map(|s2| lambda * lambda * s2 + noise)
                    .collect(),
            })
            .collect();
        Self::new(self.d, comps)
    }

    /// Law of `aX + bY + √(1−a²−b²) Z` for independent `X ~ self`, `Y ~ other`;
    /// its `μ`-density is `Γ(a)f ◇ Γ(b)g`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let noise = 1.0 - a * a - b * b;
        if noise < -1e-12 {
            return Err(Error::Domain {
                what: "a² + b²",
                value: a * a + b * b,
                domain: "<= 1",
            });
        }
        let noise = noise.max(0.0);
        if self.components.len() * other.components.len() > COMPONENT_BUDGET {
            return Err(Error::Budget("combined mixture is too large".into()));
        }
        let mut comps = Vec::new();
        for x in &self.components {
            for y in &other.components {
                comps.push(MixtureComponent {
                    p: x.p * y.p,
                    mean: x
                        .mean
                        .iter()
                        .zip(&y.mean)
                        .map(|(mx, my)| a * mx + b * my)
                        .collect(),
                    var: x
                        .var
                        .iter()
                        .zip(&y.var)
                        .map(|(vx, vy)| a * a * vx + b * b * vy + noise)
                        .collect(),
                });
            }
        }
        Self::new(self.d, renormalized(comps))
    }

    /// Exact law of `(X_1 + … + X_n)/√n` for i.i.d. `X_i ~ self`.
    ///
    /// Components are indexed by how many summands pick each mixture
    /// component, so there are `C(n+K−1, K−1)` of them.
    pub fn normalized_sum(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain {
                what: "n",
                value: 0.0,
                domain: "n >= 1",
            });
        }
        let k = self.components.len();
        let count = crate::hermite::binomial(n + k - 1, k - 1);
        if count > COMPONENT_BUDGET as f64 {
            return Err(Error::Budget(format!(
                "normalized sum needs {count} mixture components"
            )));
        }
        let scale = (n as f64).sqrt();
        let log_weights: Vec<f64> = self.components.iter().map(|c| c.p.ln()).collect();
        let mut comps = Vec::with_capacity(count as usize);
        let mut counts = vec![0usize; k];
        for_each_composition(n, &mut counts, 0, &mut |counts| {
            let mut lw = ln_factorial(n as u64);
            for (c, lp) in counts.iter().zip(&log_weights) {
                lw += *c as f64 * lp - ln_factorial(*c as u64);
            }
            let mut mean = vec![0.0; self.d];
            let mut var = vec![0.0; self.d];
            for (c, comp) in counts.iter().zip(&self.components) {
                let c = *c as f64;
                for i in 0..self.d {
                    mean[i] += c * comp.mean[i] / scale;
                    var[i] += c * comp.var[i] / n as f64;
                }
            }
            comps.push(MixtureComponent {
                p: lw.exp(),
                mean,
                var,
            });
        });
        Self::new(self.d, renormalized(comps))
    }

    /// `β = E‖X‖³`: closed form for `d = 1`, seeded Monte Carlo otherwise.
    pub fn abs_third_moment(&self, seed: u64) -> f64 {
        if self.d == 1 {
            return self
                .components
                .iter()
                .map(|c| {
                    let s = c.var[0].sqrt();
                    let r = c.mean[0] / s;
                    let folded = (r * r * r + 3.0 * r) * (1.0 - 2.0 * normal_cdf(-r))
                        + 2.0 * (r * r + 2.0) * normal_pdf(r);
                    c.p * s * s * s * folded
                })
                .sum();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(BETA_STREAM);
        let mut x = vec![0.0; self.d];
        let mut acc = 0.0;
        for _ in 0..BETA_SAMPLES {
            self.sample_into(&mut rng, &mut x);
            acc += x.iter().map(|v| v * v).sum::<f64>().powf(1.5);
        }
        acc / BETA_SAMPLES as f64
    }

    /// Draws one point: component by weight, then independent coordinates.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut pick = &self.components[self.components.len() - 1];
        for c in &self.components {
            acc += c.p;
            if u < acc {
                pick = c;
                break;
            }
        }
        for ((o, m), s2) in out.iter_mut().zip(&pick.mean).zip(&pick.var) {
            let z: f64 = rng.sample(StandardNormal);
            *o = m + s2.sqrt() * z;
        }
    }
}

impl Evaluator for GaussianMixtureLaw {
    fn dim(&self) -> usize {
        self.d
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.density_ratio(x)
    }
}

/// `Φ(x)` to full double precision.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn renormalized(mut comps: Vec<MixtureComponent>) -> Vec<MixtureComponent> {
    let total: f64 = comps.iter().map(|c| c.p).sum();
    for c in &mut comps {
        c.p /= total;
    }
    comps
}

fn for_each_composition<F: FnMut(&[usize])>(
    remaining: usize,
    counts: &mut [usize],
    pos: usize,
    f: &mut F,
) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        f(counts);
        return;
    }
    for c in (0..=remaining).rev() {
        counts[pos] = c;
        for_each_composition(remaining - c, counts, pos + 1, f);
    }
}

// c_n = E[He_n(Y)]/n!, Y ~ N(m, s2), n = 0..=degree
fn axis_coefficients(m: f64, s2: f64, degree: usize) -> Vec<f64> {
    let two_c = s2 - 1.0;
    let mut c = Vec::with_capacity(degree + 1);
    c.push(1.0);
    if degree >= 1 {
        c.push(m);
    }
    for n in 1..degree {
        let next = (m * c[n] + two_c * c[n - 1]) / (n + 1) as f64;
        c.push(next);
    }
    c
}

// e_n = n! c_n², via b_n = √(n!) c_n which stays O(1)
fn axis_energy(m: f64, s2: f64, horizon: usize) -> Vec<f64> {
    let two_c = s2 - 1.0;
    let mut b = Vec::with_capacity(horizon + 1);
    b.push(1.0);
    b.push(m);
    for n in 1..horizon {
        let nf = n as f64;
        let next = m * b[n] / (nf + 1.0).sqrt() + two_c * b[n - 1] * (nf / (nf + 1.0)).sqrt();
        b.push(next);
    }
    b.truncate(horizon + 1);
    b.into_iter().map(|v| v * v).collect()
}

fn convolve(a: &[f64], b: &[f64], horizon: usize) -> Vec<f64> {
    let len = (a.len() + b.len() - 1).min(horizon + 1);
    let mut out = vec![0.0; len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

// Σ_{N > degree} energy_N, plus a geometric bound on what lies past the horizon.
fn tail_sum(energy: &[f64], degree: usize) -> Result<f64> {
    let head: f64 = energy.iter().skip(degree + 1).sum();
    let n = energy.len();
    if n < 4 {
        return Ok(head);
    }
    let last = energy[n - 1] + energy[n - 2];
    let prev = energy[n - 3] + energy[n - 4];
    if last == 0.0 {
        return Ok(head);
    }
    let ratio = last / prev;
    if !(ratio < 1.0) {
        return Err(Error::Inconsistent(
            "chaos energy does not decay; law is not square integrable".into(),
        ));
    }
    Ok(head + last * ratio / (1.0 - ratio))
}

/// `f(x)` for the law's `μ`-density.
pub fn density_ratio_eval(law: &GaussianMixtureLaw, x: &[f64]) -> Result<f64> {
    if x.len() != law.dim() {
        return Err(Error::DimensionMismatch {
            expected: law.dim(),
            got: x.len(),
        });
    }
    Ok(law.density_ratio(x))
}

pub fn mixture_chaos_coefficients(
    law: &GaussianMixtureLaw,
    degree: usize,
) -> Result<ChaosExpansion> {
    law.chaos_coefficients(degree)
}

pub fn standardize_check(law: &GaussianMixtureLaw) -> MomentCheck {
    law.moments()
}

pub fn smoothness_decompose(law: &GaussianMixtureLaw, alpha: f64) -> Result<GaussianMixtureLaw> {
    law.smoothness_decompose(alpha)
}

/// `(Γ(λ)f)(x) = Σ_i w_i f(λx + √(1−λ²) y_i)`, the Mehler formula on a rule.
pub fn mehler_smooth_numeric<E: Evaluator + ?Sized>(
    f: &E,
    lambda: f64,
    x: &[f64],
    rule: &QuadratureRule,
) -> Result<f64> {
    if x.len() != f.dim() || rule.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: if x.len() != f.dim() {
                x.len()
            } else {
                rule.dim()
            },
        });
    }
    if !(-1.0..=1.0).contains(&lambda) {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
            domain: "[-1, 1]",
        });
    }
    let spread = (1.0 - lambda * lambda).sqrt();
    let mut y = vec![0.0; x.len()];
    let mut acc = 0.0;
    for (node, w) in rule.iter() {
        for ((yi, xi), ni) in y.iter_mut().zip(x).zip(node) {
            *yi = lambda * xi + spread * ni;
        }
        acc += w * f.eval(&y);
    }
    Ok(acc)
}

/// `½ N(±√(1−s²), s²)` with `s² = 0.9`: symmetric, standardized, and
/// smoothable at `α = 1/2`. Lowest non-trivial chaos is order 4.
pub fn symmetric_bimodal() -> GaussianMixtureLaw {
    let s2: f64 = 0.9;
    GaussianMixtureLaw::symmetric_pair(vec![(1.0 - s2).sqrt()], vec![s2]).expect("valid")
}

/// Two-component standardized law with weights `w`, `1−w` and common
/// variance `s2`, solved from `Σ p_j m_j = 0` and `Σ p_j (m_j² + s2) = 1`:
/// `m_1 = √((1−s2)(1−w)/w)`, `m_2 = −w m_1/(1−w)`. Its third moment is
/// non-zero whenever `w ≠ 1/2`, so its lowest non-trivial chaos is order 3.
pub fn asymmetric_standardized(w: f64, s2: f64) -> Result<GaussianMixtureLaw> {
    if !(w > 0.0 && w < 1.0) || !(s2 > 0.0 && s2 < 1.0) {
        return Err(Error::InvalidLaw(format!(
            "asymmetric law needs 0 < w < 1 and 0 < s2 < 1, got w = {w}, s2 = {s2}"
        )));
    }
    let m1 = ((1.0 - s2) * (1.0 - w) / w).sqrt();
    let m2 = -w * m1 / (1.0 - w);
    GaussianMixtureLaw::new(
        1,
        vec![
            MixtureComponent {
                p: w,
                mean: vec![m1],
                var: vec![s2],
            },
            MixtureComponent {
                p: 1.0 - w,
                mean: vec![m2],
                var: vec![s2],
            },
        ],
    )
}

/// The asymmetric corpus member used in the rate experiments.
pub fn skewed_bimodal() -> GaussianMixtureLaw {
    asymmetric_standardized(0.2, 0.9).expect("valid")
}

/// Named laws used by the property suites.
pub fn shipped_corpus() -> Vec<(&'static str, GaussianMixtureLaw)> {
    let sym = symmetric_bimodal();
    let skew = skewed_bimodal();
    let pair =
        |m: f64, s2: f64| GaussianMixtureLaw::symmetric_pair(vec![m], vec![s2]).expect("valid");
    let single = |m: f64, s2: f64| GaussianMixtureLaw::gaussian(vec![m], vec![s2]).expect("valid");
    vec![
        ("standard_normal", GaussianMixtureLaw::standard_normal(1)),
        ("symmetric_bimodal", sym.clone()),
        ("skewed_bimodal", skew.clone()),
        ("narrow_bimodal", pair(0.6, 0.64)),
        ("shifted_gaussian", single(0.3, 1.0)),
        ("narrow_gaussian", single(0.0, 0.8)),
        ("wide_gaussian", single(0.0, 1.3)),
        (
            "trimodal",
            GaussianMixtureLaw::new(
                1,
                vec![
                    MixtureComponent {
                        p: 0.3,
                        mean: vec![-0.5],
                        var: vec![0.85],
                    },
                    MixtureComponent {
                        p: 0.4,
                        mean: vec![0.0],
                        var: vec![0.85],
                    },
                    MixtureComponent {
                        p: 0.3,
                        mean: vec![0.5],
                        var: vec![0.85],
                    },
                ],
            )
            .expect("valid"),
        ),
        ("symmetric_x_skewed", sym.product(&skew).expect("valid")),
        (
            "correlated_pair",
            GaussianMixtureLaw::symmetric_pair(vec![0.3, -0.3], vec![0.91, 0.91]).expect("valid"),
        ),
        ("symmetric_cube", sym.iid_power(3).expect("valid")),
    ]
}
