//! Independent implementations used to validate the main pipeline.
//!
//! Every routine here reaches its answer by a different computational path
//! than the library code it checks: quadrature instead of coefficient
//! algebra, dense arrays instead of sparse maps, sampling instead of
//! integration, closed-form mixture algebra instead of either.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chaos::{wick_product_capped, ChaosEvaluator, ChaosExpansion, DEFAULT_DEGREE_CAP};
use crate::corpus::{mehler_smooth_numeric, normal_cdf, shipped_corpus, GaussianMixtureLaw};
use crate::error::{Error, Result};
use crate::hermite::{
    gauss_hermite_rule, hermite_eval, multiindex_iter, MultiIndex, QuadratureRule,
};
use crate::integrate::{lp_norm, Evaluator, FnEvaluator, Integrator};

/// Samples per independent random stream in [`mc_expectation`].
pub const MC_BLOCK: usize = 4096;
pub const MIN_MC_SAMPLES: usize = 10_000;
/// Dense Wick storage limits.
pub const DENSE_MAX_DIM: usize = 3;
pub const DENSE_MAX_DEGREE: usize = 40;
/// Relative slack allowed in the hypercontractivity checks.
pub const PROPERTY_SLACK: f64 = 1e-6;

/// `Σ_i w_i f(αx + β y_i) g(βx − α y_i)`: the `μ`-density of `αX + βY` at `x`
/// for independent `X`, `Y` with `μ`-densities `f`, `g` and `α² + β² = 1`.
pub fn rotation_convolution_oracle<F, G>(
    f: &F,
    g: &G,
    alpha: f64,
    beta: f64,
    x: &[f64],
    rule: &QuadratureRule,
) -> Result<f64>
where
    F: Evaluator + ?Sized,
    G: Evaluator + ?Sized,
{
    if ((alpha * alpha + beta * beta) - 1.0).abs() > 1e-12 {
        return Err(Error::Domain {
            what: "alpha² + beta²",
            value: alpha * alpha + beta * beta,
            domain: "= 1",
        });
    }
    let d = x.len();
    if f.dim() != d || g.dim() != d || rule.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: if f.dim() != d {
                f.dim()
            } else if g.dim() != d {
                g.dim()
            } else {
                rule.dim()
            },
        });
    }
    let mut u = vec![0.0; d];
    let mut v = vec![0.0; d];
    let mut acc = 0.0;
    for (y, w) in rule.iter() {
        for i in 0..d {
            u[i] = alpha * x[i] + beta * y[i];
            v[i] = beta * x[i] - alpha * y[i];
        }
        acc += w * f.eval(&u) * g.eval(&v);
    }
    Ok(acc)
}

/// Wick product by full convolution over dense per-axis degree grids.
pub fn dense_wick_oracle(f: &ChaosExpansion, g: &ChaosExpansion) -> Result<ChaosExpansion> {
    let d = f.dim();
    if g.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: g.dim(),
        });
    }
    let (df, dg) = (f.max_degree(), g.max_degree());
    if d > DENSE_MAX_DIM || df > DENSE_MAX_DEGREE || dg > DENSE_MAX_DEGREE {
        return Err(Error::Budget(format!(
            "dense Wick oracle handles d <= {DENSE_MAX_DIM} and degree <= {DENSE_MAX_DEGREE}, got d = {d}, degrees {df} and {dg}"
        )));
    }
    let dense = |e: &ChaosExpansion, side: usize| {
        let mut a = vec![0.0; side.pow(d as u32)];
        for (k, v) in e.iter() {
            a[flat(k.degrees(), side)] = v;
        }
        a
    };
    let (sf, sg) = (df + 1, dg + 1);
    let so = df + dg + 1;
    let (af, ag) = (dense(f, sf), dense(g, sg));
    let mut out = vec![0.0; so.pow(d as u32)];
    let mut ia = vec![0usize; d];
    let mut ib = vec![0usize; d];
    let mut ic = vec![0usize; d];
    for (i, a) in af.iter().enumerate() {
        unflat(i, sf, &mut ia);
        for (j, b) in ag.iter().enumerate() {
            unflat(j, sg, &mut ib);
            for t in 0..d {
                ic[t] = ia[t] + ib[t];
            }
            out[flat_usize(&ic, so)] += a * b;
        }
    }
    let cap = (df + dg).min(DEFAULT_DEGREE_CAP);
    let mut idx = vec![0usize; d];
    let terms: Vec<(MultiIndex, f64)> = out
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| {
            unflat(i, so, &mut idx);
            (idx.iter().sum::<usize>() <= cap && v != 0.0)
                .then(|| (MultiIndex::new(idx.iter().map(|&k| k as u16)), v))
        })
        .collect();
    Ok(ChaosExpansion::from_terms(d, terms)?.with_truncation(cap))
}

fn flat(k: &[u16], side: usize) -> usize {
    k.iter().fold(0, |acc, &v| acc * side + v as usize)
}

fn flat_usize(k: &[usize], side: usize) -> usize {
    k.iter().fold(0, |acc, &v| acc * side + v)
}

fn unflat(mut i: usize, side: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = i % side;
        i /= side;
    }
}

/// `S(f ◇ g)(h)` against `S f(h) · S g(h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CharfunCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

pub fn charfun_check(f: &ChaosExpansion, g: &ChaosExpansion, h: &[f64]) -> Result<CharfunCheck> {
    let lhs = wick_product_capped(f, g, DEFAULT_DEGREE_CAP)?.s_transform(h)?;
    let rhs = f.s_transform(h)? * g.s_transform(h)?;
    Ok(CharfunCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// Points drawn from one seeded stream; regenerating reproduces them exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub seed: u64,
    pub stream: u64,
    pub dim: usize,
    pub points: Vec<f64>,
}

impl SampleBatch {
    /// `count` draws of the normalized sum of `n` i.i.d. copies of `law`.
    pub fn normalized_sum(
        law: &GaussianMixtureLaw,
        n: usize,
        count: usize,
        seed: u64,
        stream: u64,
    ) -> Self {
        let d = law.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let scale = 1.0 / (n as f64).sqrt();
        let mut points = vec![0.0; count * d];
        let mut x = vec![0.0; d];
        for p in points.chunks_exact_mut(d) {
            for _ in 0..n {
                law.sample_into(&mut rng, &mut x);
                for (pi, xi) in p.iter_mut().zip(&x) {
                    *pi += xi;
                }
            }
            p.iter_mut().for_each(|v| *v *= scale);
        }
        Self {
            seed,
            stream,
            dim: d,
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo `E[t(S_n)]` from direct mixture sampling. Blocks of
/// [`MC_BLOCK`] samples use consecutive stream ids, so the result does not
/// depend on thread scheduling.
pub fn mc_expectation<T>(
    law: &GaussianMixtureLaw,
    n: usize,
    test_fn: T,
    samples: usize,
    seed: u64,
) -> Result<McEstimate>
where
    T: Fn(&[f64]) -> f64 + Sync,
{
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Precondition(format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain {
            what: "n",
            value: 0.0,
            domain: "n >= 1",
        });
    }
    let blocks = samples.div_ceil(MC_BLOCK);
    let partial: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let batch = SampleBatch::normalized_sum(law, n, count, seed, b as u64);
            batch.iter().fold((0.0, 0.0), |(s, s2), x| {
                let v = test_fn(x);
                (s + v, s2 + v * v)
            })
        })
        .collect();
    let (s, s2) = partial
        .iter()
        .fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let m = samples as f64;
    let mean = s / m;
    let var = ((s2 / m - mean * mean) * m / (m - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: mean,
        std_error: (var / m).sqrt(),
        samples,
    })
}

/// Total variation between `N(μ, I)` and `N(0, I)`: `2Φ(|μ|/2) − 1`.
pub fn gaussian_tv_mean_shift(mean: &[f64]) -> f64 {
    let r = mean.iter().map(|m| m * m).sum::<f64>().sqrt();
    2.0 * normal_cdf(0.5 * r) - 1.0
}

/// Total variation between `N(0, s²)` and `N(0, 1)` on the line.
pub fn gaussian_tv_scale(var: f64) -> f64 {
    if (var - 1.0).abs() < 1e-15 {
        return 0.0;
    }
    let sigma = var.sqrt();
    let cross = (2.0 * var * sigma.ln() / (var - 1.0)).sqrt();
    2.0 * (normal_cdf(cross / sigma) - normal_cdf(cross)).abs()
}

/// Largest `|∫ He_m He_n dμ − δ_{mn} n!| / max(1, n!)` for `m, n <= max_degree`.
pub fn orthogonality_gap(max_degree: usize, rule: &QuadratureRule) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 0..=max_degree {
        for n in 0..=max_degree {
            let v = rule.integrate(|x| {
                hermite_eval(m, x[0]).unwrap_or(f64::NAN)
                    * hermite_eval(n, x[0]).unwrap_or(f64::NAN)
            });
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let target = if m == n { fact } else { 0.0 };
            worst = worst.max((v - target).abs() / fact.max(1.0));
        }
    }
    if worst.is_nan() {
        return Err(Error::Inconsistent(
            "orthogonality check produced NaN".into(),
        ));
    }
    Ok(worst)
}

/// An inequality `lhs <= rhs (1 + slack)` observed numerically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub property: String,
    pub subject: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Quadrature error of `lhs` plus that of `rhs`.
    pub quad_error: f64,
    pub passed: bool,
}

impl PropertyCheck {
    fn inequality(property: String, subject: String, lhs: f64, rhs: f64, quad_error: f64) -> Self {
        let passed = lhs <= rhs * (1.0 + PROPERTY_SLACK) + quad_error;
        Self {
            property,
            subject,
            lhs,
            rhs,
            quad_error,
            passed,
        }
    }

    fn equality(property: String, subject: String, lhs: f64, rhs: f64, tol: f64) -> Self {
        let passed = (lhs - rhs).abs() <= tol;
        Self {
            property,
            subject,
            lhs,
            rhs,
            quad_error: 0.0,
            passed,
        }
    }
}

/// Nelson: `‖Γ(λ)f‖_q <= ‖f‖_p` at `λ = √((p−1)/(q−1))`.
pub fn nelson_check<F, G>(
    subject: &str,
    f: &F,
    smoothed: &G,
    p: f64,
    q: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck>
where
    F: Evaluator + ?Sized,
    G: Evaluator + ?Sized,
{
    let lhs = lp_norm(smoothed, q, integrator)?;
    let rhs = lp_norm(f, p, integrator)?;
    Ok(PropertyCheck::inequality(
        format!("nelson(p={p},q={q})"),
        subject.to_string(),
        lhs.value,
        rhs.value,
        lhs.error_estimate + rhs.error_estimate,
    ))
}

/// `λ` on the hypercontractive boundary.
pub fn nelson_lambda(p: f64, q: f64) -> f64 {
    ((p - 1.0) / (q - 1.0)).sqrt()
}

/// Nelson for a corpus law, with `Γ(λ)f` from the exact smoothed mixture.
pub fn nelson_check_law(
    name: &str,
    law: &GaussianMixtureLaw,
    p: f64,
    q: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck> {
    let smoothed = law.smoothed(nelson_lambda(p, q))?;
    nelson_check(name, law, &smoothed, p, q, integrator)
}

/// Nelson for an expansion, with `Γ(λ)f` in coefficient space.
pub fn nelson_check_expansion(
    name: &str,
    f: &ChaosExpansion,
    p: f64,
    q: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck> {
    let smoothed = f.gamma(nelson_lambda(p, q))?;
    nelson_check(
        name,
        &ChaosEvaluator::new(f)?,
        &ChaosEvaluator::new(&smoothed)?,
        p,
        q,
        integrator,
    )
}

/// Hölder-Young-Lieb (HYL): `‖Γ(a)f ◇ Γ(b)g‖_p <= ‖f‖_p ‖g‖_p` for `a² + b² <= 1`.
pub fn hyl_check<F, G, H>(
    subject: &str,
    f: &F,
    g: &G,
    product: &H,
    p: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck>
where
    F: Evaluator + ?Sized,
    G: Evaluator + ?Sized,
    H: Evaluator + ?Sized,
{
    let lhs = lp_norm(product, p, integrator)?;
    let nf = lp_norm(f, p, integrator)?;
    let ng = lp_norm(g, p, integrator)?;
    Ok(PropertyCheck::inequality(
        format!("hyl(p={p})"),
        subject.to_string(),
        lhs.value,
        nf.value * ng.value,
        lhs.error_estimate + nf.error_estimate * ng.value + ng.error_estimate * nf.value,
    ))
}

/// HYL for two corpus laws: the product is the exact combined mixture.
pub fn hyl_check_laws(
    name: &str,
    x: &GaussianMixtureLaw,
    y: &GaussianMixtureLaw,
    a: f64,
    b: f64,
    p: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck> {
    let combined = x.combine(a, y, b)?;
    hyl_check(name, x, y, &combined, p, integrator)
}

/// HYL for expansions, with `Γ` and `◇` in coefficient space.
pub fn hyl_check_expansions(
    name: &str,
    f: &ChaosExpansion,
    g: &ChaosExpansion,
    a: f64,
    b: f64,
    p: f64,
    integrator: &Integrator,
) -> Result<PropertyCheck> {
    let product = wick_product_capped(&f.gamma(a)?, &g.gamma(b)?, DEFAULT_DEGREE_CAP)?;
    hyl_check(
        name,
        &ChaosEvaluator::new(f)?,
        &ChaosEvaluator::new(g)?,
        &ChaosEvaluator::new(&product)?,
        p,
        integrator,
    )
}

/// Largest gap between coefficient-space `Γ(λ)f` and quadrature smoothing
/// on the points `grid`.
pub fn mehler_gap(
    law: &GaussianMixtureLaw,
    f: &ChaosExpansion,
    lambda: f64,
    grid: &[Vec<f64>],
    rule: &QuadratureRule,
) -> Result<f64> {
    let smoothed = ChaosEvaluator::new(&f.gamma(lambda)?)?;
    let mut worst: f64 = 0.0;
    for x in grid {
        let a = smoothed.eval(x)?;
        let b = mehler_smooth_numeric(law, lambda, x, rule)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// `count` equally spaced points `t·(1, …, 1)` with `t` in `[lo, hi]`.
pub fn diagonal_grid(dim: usize, lo: f64, hi: f64, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let t = if count == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            };
            vec![t; dim]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoSummandRow {
    pub x: Vec<f64>,
    pub chaos: f64,
    pub oracle: f64,
    pub closed_form: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoSummandReport {
    pub a: f64,
    pub b: f64,
    pub truncation: usize,
    pub rows: Vec<TwoSummandRow>,
    pub max_gap: f64,
    /// Largest gap between the exact mixture density and the chaos density.
    pub max_closed_form_gap: f64,
}

/// Tolerance for pointwise agreement of the two-summand densities.
pub const TWO_SUMMAND_TOLERANCE: f64 = 1e-8;

impl TwoSummandReport {
    pub fn passed(&self) -> bool {
        self.max_gap <= TWO_SUMMAND_TOLERANCE && self.max_closed_form_gap <= TWO_SUMMAND_TOLERANCE
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,chaos,oracle,closed_form,gap\n");
        for r in &self.rows {
            let x: Vec<String> = r.x.iter().map(|v| crate::llt::fmt_float(*v)).collect();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                x.join(";"),
                crate::llt::fmt_float(r.chaos),
                crate::llt::fmt_float(r.oracle),
                crate::llt::fmt_float(r.closed_form),
                crate::llt::fmt_float(r.gap)
            ));
        }
        out.push_str(&format!(
            "# max_gap={}\n",
            crate::llt::fmt_float(self.max_gap)
        ));
        out
    }
}

/// The `μ`-density of `aX + bY` three ways: `Γ(a)f ◇ Γ(b)g` in coefficient
/// space, the rotation oracle on the mixture densities, and the exact
/// combined mixture.
pub fn two_summand_check(
    x: &GaussianMixtureLaw,
    y: &GaussianMixtureLaw,
    a: f64,
    b: f64,
    truncation: usize,
    grid: &[Vec<f64>],
    rule: &QuadratureRule,
) -> Result<TwoSummandReport> {
    let f = x.chaos_coefficients(truncation)?;
    let g = y.chaos_coefficients(truncation)?;
    let product = wick_product_capped(&f.gamma(a)?, &g.gamma(b)?, truncation)?;
    let chaos = ChaosEvaluator::new(&product)?;
    let combined = x.combine(a, y, b)?;
    let rows = grid
        .par_iter()
        .map(|pt| {
            let c = chaos.eval(pt)?;
            let o = rotation_convolution_oracle(x, y, a, b, pt, rule)?;
            Ok(TwoSummandRow {
                x: pt.clone(),
                chaos: c,
                oracle: o,
                closed_form: combined.density_ratio(pt),
                gap: (c - o).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_gap = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
    let max_closed_form_gap = rows
        .iter()
        .map(|r| (r.closed_form - r.chaos).abs())
        .fold(0.0, f64::max);
    Ok(TwoSummandReport {
        a,
        b,
        truncation,
        rows,
        max_gap,
        max_closed_form_gap,
    })
}

/// Random expansion with `terms` non-zero coefficients of total degree
/// `1..=degree` and constant term 1, scaled so that `‖f − 1‖ = spread`.
pub fn random_expansion<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: usize,
    terms: usize,
    spread: f64,
) -> ChaosExpansion {
    let pool: Vec<MultiIndex> = multiindex_iter(dim, degree).into_iter().skip(1).collect();
    let mut chosen: Vec<(MultiIndex, f64)> = Vec::with_capacity(terms);
    for _ in 0..terms.min(pool.len()) {
        let k = pool[rng.random_range(0..pool.len())].clone();
        if chosen.iter().any(|(c, _)| *c == k) {
            continue;
        }
        let v: f64 = rng.random_range(-1.0..1.0);
        chosen.push((k, v));
    }
    let norm: f64 = chosen
        .iter()
        .map(|(k, v)| k.factorial() * v * v)
        .sum::<f64>()
        .sqrt();
    let scale = if norm > 0.0 { spread / norm } else { 0.0 };
    let terms = std::iter::once((MultiIndex::zero(dim), 1.0))
        .chain(chosen.into_iter().map(|(k, v)| (k, v * scale)));
    ChaosExpansion::from_terms(dim, terms).expect("valid expansion")
}

/// Integrator used by the property suites: tensor Gauss up to `d = 3`.
pub fn property_integrator(dim: usize) -> Result<Integrator> {
    match dim {
        1 => Integrator::gauss(1, 64),
        2 => Integrator::gauss(2, 48),
        _ => Integrator::gauss(dim, 24),
    }
}

pub const NELSON_PAIRS: [(f64, f64); 3] = [(2.0, 4.0), (2.0, 10.0), (1.5, 2.0)];
/// `(a, b)` on the unit circle, where the HYL inequality is tightest.
pub const HYL_BOUNDARY: (f64, f64) = (0.6, 0.8);

/// Nelson and HYL on every corpus member plus `random` random expansions,
/// orthogonality, Mehler equivalence and the moment bridge.
pub fn property_suite(random: usize, seed: u64) -> Result<Vec<PropertyCheck>> {
    let corpus = shipped_corpus();
    let mut checks = Vec::new();

    let rule = gauss_hermite_rule(64)?;
    checks.push(PropertyCheck::equality(
        "hermite-orthogonality".into(),
        "m,n<=12".into(),
        orthogonality_gap(12, &rule)?,
        0.0,
        1e-9,
    ));

    for (name, law) in &corpus {
        let integ = property_integrator(law.dim())?;
        for (p, q) in NELSON_PAIRS {
            checks.push(nelson_check_law(name, law, p, q, &integ)?);
        }
        for p in [1.0, 2.0] {
            let (a, b) = HYL_BOUNDARY;
            checks.push(hyl_check_laws(
                &format!("{name} x {name}"),
                law,
                law,
                a,
                b,
                p,
                &integ,
            )?);
        }
        let m = law.moments();
        let f = law.chaos_coefficients(8)?;
        let vanishing =
            f.chaos_norm_of_order(1).sqrt() <= 1e-12 && f.chaos_norm_of_order(2).sqrt() <= 1e-12;
        checks.push(PropertyCheck::equality(
            "moment-bridge".into(),
            name.to_string(),
            vanishing as u8 as f64,
            (m.mean_ok && m.cov_ok) as u8 as f64,
            0.0,
        ));
        if law.dim() == 1 {
            let f = law.chaos_coefficients(48)?;
            let grid = diagonal_grid(1, -4.0, 4.0, 41);
            for lambda in [0.2, 0.6, 0.9] {
                checks.push(PropertyCheck::equality(
                    format!("mehler(lambda={lambda})"),
                    name.to_string(),
                    mehler_gap(law, &f, lambda, &grid, &gauss_hermite_rule(100)?)?,
                    0.0,
                    1e-8,
                ));
            }
        }
    }
    // distinct pairs of one-dimensional laws
    let ones: Vec<_> = corpus.iter().filter(|(_, l)| l.dim() == 1).collect();
    let integ = property_integrator(1)?;
    for w in ones.windows(2) {
        let (a, b) = HYL_BOUNDARY;
        for p in [1.0, 2.0] {
            checks.push(hyl_check_laws(
                &format!("{} x {}", w[0].0, w[1].0),
                &w[0].1,
                &w[1].1,
                a,
                b,
                p,
                &integ,
            )?);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let dim = 1 + i % 2;
        let f = random_expansion(&mut rng, dim, 5, 6, 0.5);
        let g = random_expansion(&mut rng, dim, 5, 6, 0.5);
        let integ = property_integrator(dim)?;
        let name = format!("random#{i}");
        for (p, q) in NELSON_PAIRS {
            checks.push(nelson_check_expansion(&name, &f, p, q, &integ)?);
        }
        let (a, b) = HYL_BOUNDARY;
        for p in [1.0, 2.0] {
            checks.push(hyl_check_expansions(&name, &f, &g, a, b, p, &integ)?);
        }
    }
    Ok(checks)
}

/// Adapter for closures in the oracle signatures.
pub fn evaluator<F: Fn(&[f64]) -> f64 + Sync>(dim: usize, f: F) -> FnEvaluator<F> {
    FnEvaluator::new(dim, f)
}
