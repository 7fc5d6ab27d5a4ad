//! The local limit pipeline: density of the normalized sum, its `L¹(μ)`
//! distance to the Gaussian, the explicit bounds, and rate fits.
//!
//! For i.i.d. `X_i = √α X⁰_i + √(1−α) Z_i` with `X⁰` having `μ`-density
//! `f₀`, the normalized sum `S_n` has `μ`-density `(Γ(√(α/n)) f₀)^{◇n}`.

mod config;
mod report;

pub use config::{Experiment, LltConfig};
pub use report::{
    fmt_float, BoundsRow, BoundsTable, ExperimentReport, ProbeReport, ProbeRow, RateFit, Status,
    SweepRow,
};

use rayon::prelude::*;

use crate::chaos::{wick_power_capped, ChaosExpansion};
use crate::corpus::GaussianMixtureLaw;
use crate::error::{Error, Result};
use crate::integrate::{l1_distance_to_one, Integrator};

/// Largest admissible tail of a normalized-sum density.
pub const SN_TAIL_LIMIT: f64 = 1e-6;
/// Rate fits only use distances above this multiple of their error.
pub const NOISE_FLOOR_FACTOR: f64 = 10.0;
pub const MIN_FIT_POINTS: usize = 4;
/// Distance floor asserted by the necessary-condition probe.
pub const PROBE_FLOOR: f64 = 0.05;
/// Chaos components below this norm count as absent.
pub const CHAOS_ZERO: f64 = 1e-12;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "(0, 1)",
        });
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            what: "n",
            value: 0.0,
            domain: "n >= 1",
        });
    }
    Ok(())
}

/// `(Γ(√(α/n)) f₀)^{◇n}`, damped before powering and truncated at the
/// degree of `f₀`.
pub fn sn_density(f0: &ChaosExpansion, alpha: f64, n: usize) -> Result<ChaosExpansion> {
    check_alpha(alpha)?;
    check_n(n)?;
    f0.ensure_density()?;
    let damped = f0.gamma((alpha / n as f64).sqrt())?;
    let out = wick_power_capped(&damped, n, f0.truncation())?;
    if out.tail_bound() > SN_TAIL_LIMIT {
        return Err(Error::Truncation {
            n,
            tail: out.tail_bound(),
            limit: SN_TAIL_LIMIT,
        });
    }
    Ok(out)
}

/// `Γ(√(α/n)) (f₀^{◇n})`: powers first, damps after. Agrees with
/// [`sn_density`] on every retained coefficient; its tail is not meaningful
/// because the undamped power inflates it.
pub fn sn_density_functor_route(
    f0: &ChaosExpansion,
    alpha: f64,
    n: usize,
) -> Result<ChaosExpansion> {
    check_alpha(alpha)?;
    check_n(n)?;
    f0.ensure_density()?;
    wick_power_capped(f0, n, f0.truncation())?.gamma((alpha / n as f64).sqrt())
}

/// `αγ/(1−α)`.
pub fn eligibility_threshold(alpha: f64, gamma: f64) -> f64 {
    alpha * gamma / (1.0 - alpha)
}

pub fn is_bound_eligible(alpha: f64, gamma: f64, n: usize) -> bool {
    n as f64 >= eligibility_threshold(alpha, gamma) * (1.0 - 1e-12)
}

/// Smoothing exponent for `f₀ ∈ L^p`: `γ = 1/(p−1)` for `p < 2`, else 1.
pub fn nelson_gamma(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "(1, ∞)",
        });
    }
    Ok(if p >= 2.0 { 1.0 } else { 1.0 / (p - 1.0) })
}

/// `n^{−1/2} (αγ/(1−α))^{3/2} (Σ_{k≥3} k!‖𝔥_k‖²)^{1/2}` with `𝔥_k` the
/// kernels of `Γ(1/√γ) f₀`. The truncation tail is added to the sum.
pub fn theorem_bound(f0: &ChaosExpansion, alpha: f64, gamma: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    check_n(n)?;
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return Err(Error::Domain {
            what: "gamma",
            value: gamma,
            domain: "[1, ∞)",
        });
    }
    if !is_bound_eligible(alpha, gamma, n) {
        return Err(Error::BoundIneligible {
            n,
            threshold: eligibility_threshold(alpha, gamma),
        });
    }
    let h = f0.gamma(1.0 / gamma.sqrt())?;
    let high: f64 = (3..=h.max_degree())
        .map(|k| h.chaos_norm_of_order(k))
        .sum::<f64>()
        + h.tail_bound();
    Ok((n as f64).powf(-0.5) * eligibility_threshold(alpha, gamma).powf(1.5) * high.sqrt())
}

/// `½ n^{−1/2} (α/(1−α))^{3/2} (‖f₀‖² − 1)^{1/2}`, a total variation bound.
pub fn corollary_bound(f0: &ChaosExpansion, alpha: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    check_n(n)?;
    if !is_bound_eligible(alpha, 1.0, n) {
        return Err(Error::BoundIneligible {
            n,
            threshold: eligibility_threshold(alpha, 1.0),
        });
    }
    let norm_sq = f0.l2_norm_sq() + f0.tail_bound();
    if norm_sq < 1.0 - 1e-12 {
        return Err(Error::Inconsistent(format!(
            "squared L2 norm {norm_sq} of a density is below 1"
        )));
    }
    Ok(0.5
        * (n as f64).powf(-0.5)
        * eligibility_threshold(alpha, 1.0).powf(1.5)
        * (norm_sq - 1.0).max(0.0).sqrt())
}

/// `400 β d^{1/4} / √n`, for comparison only.
pub fn bentkus_bound(beta: f64, d: usize, n: usize) -> f64 {
    400.0 * beta * (d as f64).powf(0.25) / (n as f64).sqrt()
}

/// Least squares of `log distance` on `log n`, over points whose distance
/// exceeds [`NOISE_FLOOR_FACTOR`] times its error.
pub fn rate_fit(n_values: &[usize], distances: &[f64], errors: &[f64]) -> Result<RateFit> {
    if n_values.len() != distances.len() || n_values.len() != errors.len() {
        return Err(Error::DimensionMismatch {
            expected: n_values.len(),
            got: distances.len().min(errors.len()),
        });
    }
    let points: Vec<(f64, f64)> = n_values
        .iter()
        .zip(distances)
        .zip(errors)
        .filter(|((_, d), e)| **d > NOISE_FLOOR_FACTOR * **e && **d > 0.0)
        .map(|((n, d), _)| ((*n as f64).ln(), d.ln()))
        .collect();
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::NoiseFloor {
            usable: points.len(),
            needed: MIN_FIT_POINTS,
        });
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition(
            "rate fit needs distinct n values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(RateFit {
        slope,
        intercept,
        residual,
        points_used: points.len(),
    })
}

/// Lowest `k >= 1` whose chaos component is non-zero.
pub fn leading_chaos_order(f: &ChaosExpansion) -> Option<usize> {
    (1..=f.max_degree()).find(|&k| f.chaos_norm_of_order(k).sqrt() > CHAOS_ZERO)
}

/// Sweep for an `f₀` with a non-zero first or second chaos: the distances
/// should stay bounded away from zero.
pub fn necessary_condition_probe(
    f0: &ChaosExpansion,
    alpha: f64,
    n_values: &[usize],
    integrator: &Integrator,
) -> Result<ProbeReport> {
    check_alpha(alpha)?;
    let j1 = f0.chaos_norm_of_order(1).sqrt();
    let j2 = f0.chaos_norm_of_order(2).sqrt();
    if j1 <= CHAOS_ZERO && j2 <= CHAOS_ZERO {
        return Err(Error::Precondition(
            "probe needs a density with a non-zero first or second chaos".into(),
        ));
    }
    let rows = n_values
        .par_iter()
        .map(|&n| {
            let s = sn_density(f0, alpha, n)?;
            let l1 = l1_distance_to_one(&s, integrator)?;
            Ok(ProbeRow {
                n,
                l1_distance: l1.value,
                quad_error: l1.error_estimate,
                tail_bound: s.tail_bound(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_distance = rows
        .iter()
        .map(|r| r.l1_distance)
        .fold(f64::INFINITY, f64::min);
    let status = if min_distance >= PROBE_FLOOR {
        Status::Passed
    } else {
        Status::Failed
    };
    Ok(ProbeReport {
        alpha,
        first_chaos_norm: j1,
        second_chaos_norm: j2,
        floor: PROBE_FLOOR,
        min_distance,
        rows,
        status,
    })
}

/// `f₀` for a summand law: the base law of its smoothness decomposition.
pub fn base_density(
    law: &GaussianMixtureLaw,
    alpha: f64,
    truncation: usize,
) -> Result<ChaosExpansion> {
    law.smoothness_decompose(alpha)?
        .chaos_coefficients(truncation)
}

/// Runs the n-sweep described by `config`. Rows are computed in parallel
/// and merged in `n` order, so the report only depends on the config.
pub fn run_llt_sweep(config: &LltConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let law = &config.law;
    let alpha = config.alpha;
    let f0 = base_density(law, alpha, config.truncation)?;
    let integrator = Integrator::new(config.quadrature, law.dim())?;
    let beta = law.abs_third_moment(config.seed);
    let d = law.dim();

    let rows = config
        .n_values
        .par_iter()
        .map(|&n| {
            let s = sn_density(&f0, alpha, n)?;
            let l1 = l1_distance_to_one(&s, &integrator)?;
            let eligible = is_bound_eligible(alpha, 1.0, n);
            let (theorem, corollary) = if eligible {
                (
                    theorem_bound(&f0, alpha, 1.0, n)?,
                    corollary_bound(&f0, alpha, n)?,
                )
            } else {
                (f64::NAN, f64::NAN)
            };
            Ok(SweepRow {
                n,
                eligible,
                l1_distance: l1.value,
                tv_distance: 0.5 * l1.value,
                theorem_bound: theorem,
                corollary_bound: corollary,
                bentkus_bound: bentkus_bound(beta, d, n),
                quad_error: l1.error_estimate,
                tail_bound: s.tail_bound(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for r in rows.iter().filter(|r| r.eligible) {
        if r.l1_distance > r.theorem_bound + r.quad_error {
            failures.push(format!(
                "n = {}: l1 distance {:e} exceeds theorem bound {:e}",
                r.n, r.l1_distance, r.theorem_bound
            ));
        }
        if r.tv_distance > r.corollary_bound + 0.5 * r.quad_error {
            failures.push(format!(
                "n = {}: tv distance {:e} exceeds corollary bound {:e}",
                r.n, r.tv_distance, r.corollary_bound
            ));
        }
    }
    let fit = rate_fit(
        &rows.iter().map(|r| r.n).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.l1_distance).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.quad_error).collect::<Vec<_>>(),
    )
    .ok();
    let leading = leading_chaos_order(&f0);
    Ok(ExperimentReport {
        alpha,
        gamma: 1.0,
        dim: d,
        truncation: config.truncation,
        f0_norm_sq: f0.l2_norm_sq(),
        beta,
        leading_chaos_order: leading,
        expected_slope: leading.filter(|&k| k >= 3).map(|k| 1.0 - k as f64 / 2.0),
        fit,
        status: if failures.is_empty() {
            Status::Passed
        } else {
            Status::Failed
        },
        failures,
        rows,
    })
}

/// Bound columns for the summand law stacked to `d` coordinates two ways:
/// with standard normal padding (fixed `‖f₀‖²`) and as i.i.d. copies.
pub fn bounds_table(config: &LltConfig, dims: &[usize]) -> Result<BoundsTable> {
    config.validate()?;
    let law = &config.law;
    let alpha = config.alpha;
    let mut rows = Vec::new();
    for &d in dims {
        let (padded, iid) = if law.dim() == 1 {
            let pad = if d > 1 {
                law.product(&GaussianMixtureLaw::standard_normal(d - 1))?
            } else {
                law.clone()
            };
            (pad, law.iid_power(d)?)
        } else if d == law.dim() {
            (law.clone(), law.clone())
        } else {
            return Err(Error::Config(format!(
                "bounds table dimension {d} needs a one-dimensional law"
            )));
        };
        let f_pad = base_density(&padded, alpha, config.truncation)?;
        let f_iid = base_density(&iid, alpha, config.truncation)?;
        let beta = iid.abs_third_moment(config.seed);
        for &n in &config.n_values {
            let eligible = is_bound_eligible(alpha, 1.0, n);
            let bound = |f: &ChaosExpansion, which: u8| -> Result<f64> {
                if !eligible {
                    return Ok(f64::NAN);
                }
                match which {
                    0 => theorem_bound(f, alpha, 1.0, n),
                    _ => corollary_bound(f, alpha, n),
                }
            };
            rows.push(BoundsRow {
                n,
                d,
                eligible,
                theorem_bound: bound(&f_iid, 0)?,
                corollary_bound: bound(&f_iid, 1)?,
                corollary_bound_fixed_norm: bound(&f_pad, 1)?,
                bentkus_bound: bentkus_bound(beta, d, n),
            });
        }
    }
    Ok(BoundsTable { alpha, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::wick_product;
    use crate::corpus::{skewed_bimodal, symmetric_bimodal};
    use crate::hermite::MultiIndex;

    fn one_d(terms: &[(u16, f64)]) -> ChaosExpansion {
        ChaosExpansion::from_terms(1, terms.iter().map(|&(n, a)| (MultiIndex::from([n]), a)))
            .unwrap()
    }

    #[test]
    fn sn_density_trivial_cases() {
        let one = ChaosExpansion::one(2).with_truncation(24);
        for n in [1, 3, 64] {
            assert_eq!(sn_density(&one, 0.3, n).unwrap().len(), 1);
        }
        let f0 = base_density(&symmetric_bimodal(), 0.5, 24).unwrap();
        let g = sn_density(&f0, 0.5, 1).unwrap();
        let direct = f0.gamma(0.5f64.sqrt()).unwrap();
        for (k, v) in direct.iter() {
            assert!((g.coefficient(k) - v).abs() < 1e-16);
        }
        assert!(sn_density(&f0, 1.0, 2).is_err());
        assert!(sn_density(&f0, 0.5, 0).is_err());
    }

    #[test]
    fn sn_density_matches_exact_mixture_law() {
        // the law of S_n is itself a mixture, so its coefficients are known exactly
        for law in [symmetric_bimodal(), skewed_bimodal()] {
            let f0 = base_density(&law, 0.5, 24).unwrap();
            for n in [2, 5, 16] {
                let s = sn_density(&f0, 0.5, n).unwrap();
                let exact = law
                    .normalized_sum(n)
                    .unwrap()
                    .chaos_coefficients(24)
                    .unwrap();
                for (k, v) in exact.iter() {
                    assert!((s.coefficient(k) - v).abs() < 1e-12, "n={n} {k:?}");
                }
            }
        }
    }

    #[test]
    fn both_routes_agree() {
        let f0 = base_density(&skewed_bimodal(), 0.5, 24).unwrap();
        for n in [2, 7, 64] {
            let a = sn_density(&f0, 0.5, n).unwrap();
            let b = sn_density_functor_route(&f0, 0.5, n).unwrap();
            for (k, v) in a.iter() {
                assert!((b.coefficient(k) - v).abs() < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn fourth_coefficient_scaling() {
        // symmetric f0 has no first three chaoses, so a_4(S_n) = n (α/n)² a_4(f0)
        let f0 = base_density(&symmetric_bimodal(), 0.5, 24).unwrap();
        let a4 = f0.coefficient(&MultiIndex::from([4]));
        let s = sn_density(&f0, 0.5, 4).unwrap();
        let expect = 4.0 * (0.5f64 / 4.0).powi(2) * a4;
        assert!((s.coefficient(&MultiIndex::from([4])) - expect).abs() < 1e-15);
        // and it equals the plain power of the damped density
        let damped = f0.gamma((0.5f64 / 4.0).sqrt()).unwrap();
        let mut p = damped.clone();
        for _ in 1..4 {
            p = wick_product(&p, &damped).unwrap();
        }
        assert!((p.coefficient(&MultiIndex::from([4])) - expect).abs() < 1e-15);
    }

    #[test]
    fn truncation_error_surfaces() {
        // a wide law at a tiny truncation cannot meet the tail limit
        let law = GaussianMixtureLaw::gaussian(vec![0.0], vec![1.9]).unwrap();
        let f0 = base_density(&law, 0.9, 2).unwrap();
        assert!(matches!(
            sn_density(&f0, 0.9, 2),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn theorem_bound_examples() {
        let f0 = one_d(&[(0, 1.0), (3, 0.2)]);
        assert!((f0.chaos_norm_of_order(3) - 0.24).abs() < 1e-15);
        let b = theorem_bound(&f0, 0.5, 1.0, 16).unwrap();
        assert!((b - 0.25 * 0.24f64.sqrt()).abs() < 1e-15);
        assert!((b - 0.1224745).abs() < 1e-7);
        let b32 = theorem_bound(&f0, 0.5, 1.0, 32).unwrap();
        assert!((b / b32 - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(
            theorem_bound(&ChaosExpansion::one(1), 0.5, 1.0, 16).unwrap(),
            0.0
        );
        assert!(matches!(
            theorem_bound(&f0, 0.8, 1.0, 3),
            Err(Error::BoundIneligible { .. })
        ));
        // γ = 2 damps the third chaos by 2^{-3} and raises the prefactor by 2^{3/2}
        let b2 = theorem_bound(&f0, 0.5, 2.0, 16).unwrap();
        let expect = 0.25 * 2f64.powf(1.5) * (0.24f64 / 8.0).sqrt();
        assert!((b2 - expect).abs() < 1e-15);
    }

    #[test]
    fn corollary_bound_examples() {
        let f0 = one_d(&[(0, 1.0), (3, 0.2)]);
        let b = corollary_bound(&f0, 0.5, 16).unwrap();
        assert!((b - 0.125 * 0.24f64.sqrt()).abs() < 1e-15);
        assert!((b - 0.0612372).abs() < 1e-7);
        assert_eq!(
            corollary_bound(&ChaosExpansion::one(1), 0.5, 16).unwrap(),
            0.0
        );
        assert!(corollary_bound(&f0, 0.5, 1).is_ok());
        assert!(matches!(
            corollary_bound(&f0, 0.75, 2),
            Err(Error::BoundIneligible { .. })
        ));
        let bad = ChaosExpansion::constant(1, 0.5);
        assert!(corollary_bound(&bad, 0.5, 4).is_err());
    }

    #[test]
    fn bentkus_examples() {
        assert!((bentkus_bound(3.0, 16, 400) - 120.0).abs() < 1e-12);
        let a = bentkus_bound(1.7, 3, 10);
        assert!((bentkus_bound(1.7, 3, 40) - a / 2.0).abs() < 1e-14);
    }

    #[test]
    fn nelson_gamma_values() {
        assert_eq!(nelson_gamma(2.0).unwrap(), 1.0);
        assert_eq!(nelson_gamma(1.5).unwrap(), 2.0);
        assert!(nelson_gamma(1.0).is_err());
    }

    #[test]
    fn rate_fit_examples() {
        let ns = [2usize, 4, 8, 16, 32, 64];
        let errs = [0.0; 6];
        let half: Vec<f64> = ns.iter().map(|&n| 0.3 / (n as f64).sqrt()).collect();
        let fit = rate_fit(&ns, &half, &errs).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-13);
        assert!((fit.intercept - 0.3f64.ln()).abs() < 1e-13);
        assert!(fit.residual < 1e-13);
        let inv: Vec<f64> = ns.iter().map(|&n| 2.0 / n as f64).collect();
        assert!((rate_fit(&ns, &inv, &errs).unwrap().slope + 1.0).abs() < 1e-13);
        let noisy = [0.01, 0.01, 0.01, 0.1, 0.1, 0.1];
        assert!(matches!(
            rate_fit(&ns, &inv, &noisy),
            Err(Error::NoiseFloor { .. })
        ));
    }

    #[test]
    fn probe_refuses_compliant_density() {
        let f0 = base_density(&symmetric_bimodal(), 0.5, 24).unwrap();
        let integ = Integrator::gauss(1, 64).unwrap();
        assert!(matches!(
            necessary_condition_probe(&f0, 0.5, &[2, 4], &integ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn leading_orders() {
        let sym = base_density(&symmetric_bimodal(), 0.5, 24).unwrap();
        let skew = base_density(&skewed_bimodal(), 0.5, 24).unwrap();
        assert_eq!(leading_chaos_order(&sym), Some(4));
        assert_eq!(leading_chaos_order(&skew), Some(3));
        assert_eq!(leading_chaos_order(&ChaosExpansion::one(1)), None);
    }
}
