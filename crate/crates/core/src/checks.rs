//! Cross-module verification suites behind the CLI `verify` command: series
//! identities, the Theorem-1 equivalence, the ray-integral offset constancy,
//! normalization, PDE and factorization residuals, and the Laplace pairs.
//!
//! `run_fast` covers every family of checks at desk scale; `run_full` adds the
//! grid-refinement and sensitivity studies.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::fractional::{caputo_derivative, factorization_residual_1d, pde_residual_1d, rl_integral, FactorSign, TimeGrid};
use crate::green::{
    green_1d, green_hat_kd, green_hat_kd_complex, green_kd, green_kd_at_projection,
    green_kd_derivative_form, normalization_1d, orthant_integral_hat, GreenSpec, UnitVector,
};
use crate::laplace::{caputo_transform_check, laplace_forward, talbot_inverse, verify_pair, LaplacePair, TalbotConfig};
use crate::quad::{integrate_semi_infinite, QuadratureConfig};
use crate::special::{erfc, gamma, rgamma};
use crate::wright::{bessel_j_relation_check, m_wright, wright, wright_antiderivative, wright_derivative, WrightParams};
use crate::wright_quad::{integral_wright, integral_wright_raw, m_wright_integral};
use crate::Error;

/// Outcome of one named verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn assert(name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult { name, passed, detail }
    }

    fn bounded(name: &'static str, value: f64, bound: f64) -> Self {
        CheckResult {
            name,
            passed: value.is_finite() && value <= bound,
            detail: format!("{value:.3e} (bound {bound:.1e})"),
        }
    }
}

fn params(lambda: f64, mu: f64) -> WrightParams<f64> {
    WrightParams::new(lambda, mu).expect("valid params")
}

/// `wright(lambda, mu, 0) = 1/Gamma(mu)`, including exact zeros at poles.
fn check_series_at_zero() -> CheckResult {
    let mut worst = 0.0f64;
    for &lambda in &[-0.45, -0.25, 0.0, 0.5, 1.0] {
        for &mu in &[-3.0, -1.0, 0.0, 0.25, 1.0, 2.5] {
            let v = wright(&params(lambda, mu), 0.0).map(|r| r.value).unwrap_or(f64::NAN);
            worst = worst.max((v - rgamma(mu)).abs());
        }
    }
    CheckResult::bounded("series value at z=0 is 1/Gamma(mu)", worst, 0.0)
}

fn check_exponential_row() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let z = -20.0 + i as f64;
        let r = wright(&params(0.0, 1.0), z).unwrap();
        worst = worst.max((r.value - z.exp()).abs() / z.exp().max(r.abs_error_estimate));
    }
    CheckResult::bounded("W(0,1;z) = e^z on |z| <= 20", worst, 1e-12)
}

fn derivative_grid() -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let lambdas: Vec<f64> = (0..5).map(|i| -0.45 + i as f64 * (1.45 / 4.0)).collect();
    let mus: Vec<f64> = (0..5).map(|i| 0.5 + i as f64 * 0.5).collect();
    let zs: Vec<f64> = (0..7).map(|i| -1.5 + i as f64 * 0.5).collect();
    (lambdas, mus, zs)
}

/// Finite difference of `wright` vs `wright_derivative` on the 5x5x7 grid.
fn check_derivative_identity() -> CheckResult {
    let (lambdas, mus, zs) = derivative_grid();
    let h = 1e-5;
    let mut worst = 0.0f64;
    for &l in &lambdas {
        for &m in &mus {
            let p = params(l, m);
            for &z in &zs {
                let fd = (wright(&p, z + h).unwrap().value - wright(&p, z - h).unwrap().value) / (2.0 * h);
                let an = wright_derivative(&p, z, 1).unwrap().value;
                worst = worst.max((fd - an).abs());
            }
        }
    }
    CheckResult::bounded("derivative identity vs finite difference", worst, 1e-6)
}

/// Finite difference of the antiderivative recovers the function.
fn check_antiderivative_identity() -> CheckResult {
    let (lambdas, mus, zs) = derivative_grid();
    let h = 1e-5;
    let mut worst = 0.0f64;
    for &l in &lambdas {
        for &m in &mus {
            let p = params(l, m);
            for &z in &zs {
                let fd = (wright_antiderivative(&p, z + h).unwrap().value
                    - wright_antiderivative(&p, z - h).unwrap().value)
                    / (2.0 * h);
                let direct = wright(&p, z).unwrap().value;
                worst = worst.max((fd - direct).abs());
            }
        }
    }
    CheckResult::bounded("antiderivative closure vs finite difference", worst, 1e-6)
}

fn check_m_wright_consistency() -> CheckResult {
    let mut exact = true;
    for &nu in &[0.0, 0.25, 1.0 / 3.0, 0.5, 0.75] {
        for i in 0..=20 {
            let z = i as f64 * 0.35;
            let a = m_wright(nu, z).map(|r| r.value);
            let b = wright(&params(-nu, 1.0 - nu), -z).map(|r| r.value);
            match (a, b) {
                (Ok(x), Ok(y)) => exact &= x == y,
                (Err(_), Err(_)) => {}
                _ => exact = false,
            }
        }
    }
    CheckResult::assert("m_wright == wright(-nu,1-nu;-z) bitwise", exact, String::from(if exact { "identical dispatch" } else { "mismatch" }))
}

fn check_m_wright_closed_forms() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let z = i as f64 * 10.0 / 49.0;
        let g = m_wright(0.5, z).unwrap().value;
        let gt = (-z * z / 4.0).exp() / std::f64::consts::PI.sqrt();
        worst = worst.max((g - gt).abs() / gt);
        let e = m_wright(0.0, z).unwrap().value;
        let et = (-z).exp();
        worst = worst.max((e - et).abs() / et);
    }
    CheckResult::bounded("M-Wright closed forms (nu=0, 1/2)", worst, 1e-10)
}

fn check_m_wright_positivity() -> CheckResult {
    let mut ok = true;
    let mut evaluated = 0usize;
    for &nu in &[0.25, 0.5, 0.75] {
        for i in 0..=50 {
            let z = i as f64 * 0.2;
            match crate::wright_quad::m_wright_robust(nu, z, 1e-8, 1e-9) {
                Ok(r) => {
                    evaluated += 1;
                    ok &= r.value >= -(r.abs_error_estimate + 1e-12);
                }
                Err(Error::ToleranceNotMet { .. }) => {}
                Err(_) => ok = false,
            }
        }
    }
    CheckResult::assert(
        "M-Wright nonnegative on [0,10]",
        ok && evaluated > 120,
        format!("{evaluated} points evaluated"),
    )
}

fn check_gamma_pole_convention() -> CheckResult {
    gamma_pole_convention_holds(|lambda, mu, z| wright(&params(lambda, mu), z).map(|r| r.value).unwrap_or(f64::NAN))
}

/// The pole convention is visible in W(-1/2, 1/2; z): odd terms hit Gamma
/// poles and must vanish, making the function even. A broken convention (e.g.
/// reflection-formula reciprocal without the exact zero) shifts the value.
pub fn gamma_pole_convention_holds<F: Fn(f64, f64, f64) -> f64>(eval: F) -> CheckResult {
    let mut worst = 0.0f64;
    for &z in &[-2.0, -1.0, 1.0, 2.0] {
        let v = eval(-0.5, 0.5, z);
        let gt = (-z * z / 4.0).exp() / std::f64::consts::PI.sqrt();
        worst = worst.max((v - gt).abs() / gt);
        // evenness
        worst = worst.max((eval(-0.5, 0.5, z) - eval(-0.5, 0.5, -z)).abs() / gt);
    }
    // and the exact zero at mu = -2
    let z0 = eval(0.5, -2.0, 0.0);
    if z0 != 0.0 {
        worst = worst.max(1.0);
    }
    CheckResult::bounded("Gamma-pole convention (zero terms at poles)", worst, 1e-10)
}

fn check_bessel_relation() -> CheckResult {
    let worst = [std::f64::consts::PI, 1.0, 2.5]
        .iter()
        .map(|&z| bessel_j_relation_check(0.5, z).unwrap())
        .fold(0.0f64, f64::max);
    CheckResult::bounded("generalized-Bessel relation at nu=1/2", worst, 1e-10)
}

fn check_engine_examples() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-10, 1e-10).unwrap();
    let mut worst = 0.0f64;
    let r = integrate_semi_infinite(|x: f64| (-x).exp(), &cfg).unwrap();
    worst = worst.max((r.value - 1.0).abs());
    let r = integrate_semi_infinite(|x: f64| (-x * x).exp(), &cfg).unwrap();
    worst = worst.max((r.value - 0.8862269254527580).abs());
    let r = integrate_semi_infinite(|x: f64| (-x).exp() * x.sqrt().sin() / x, &cfg).unwrap();
    worst = worst.max((r.value - 1.635198592331852018885971).abs());
    CheckResult::bounded("semi-infinite engine reference integrals", worst, 1e-9)
}

/// Offset constancy of the ray representation: series - raw = 1/2.
fn check_theorem2_offset() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let mut worst_std = 0.0f64;
    let mut worst_mean = 0.0f64;
    for &beta in &[0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0] {
        let mut diffs = Vec::new();
        for i in 0..=20 {
            let z = i as f64 * 0.25;
            let raw = integral_wright_raw(beta, z, &cfg).unwrap().value;
            let ser = wright(&params(-beta / 2.0, 1.0), -z).unwrap().value;
            diffs.push(ser - raw);
        }
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (diffs.len() - 1) as f64;
        worst_std = worst_std.max(var.sqrt());
        worst_mean = worst_mean.max((mean - 0.5).abs());
    }
    CheckResult::assert(
        "ray-integral offset constant (measured 1/2)",
        worst_std < 1e-6 && worst_mean < 1e-6,
        format!("std {worst_std:.2e}, |mean-1/2| {worst_mean:.2e}"),
    )
}

fn check_theorem2_erfc() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=20 {
        let z = i as f64 * 0.25;
        let v = integral_wright(1.0, z, &cfg).unwrap().value;
        worst = worst.max((v - erfc(z / 2.0)).abs());
    }
    CheckResult::bounded("ray integral at beta=1 matches erfc(z/2)", worst, 1e-6)
}

/// Continuity across z = 0: the jump beyond the true (series) variation.
fn check_branch_continuity() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-10, 1e-10).unwrap();
    let eps = 1e-4;
    let mut worst = 0.0f64;
    for &beta in &[0.25, 0.5, 2.0 / 3.0, 1.0] {
        let plus = integral_wright(beta, eps, &cfg).unwrap().value;
        let minus = integral_wright(beta, -eps, &cfg).unwrap().value;
        let s_plus = wright(&params(-beta / 2.0, 1.0), -eps).unwrap().value;
        let s_minus = wright(&params(-beta / 2.0, 1.0), eps).unwrap().value;
        worst = worst.max(((plus - minus) - (s_plus - s_minus)).abs());
    }
    CheckResult::bounded("ray-integral branch continuity across z=0", worst, 1e-8)
}

fn check_integral_wright_monotone() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let mut ok = true;
    let mut tail = 0.0f64;
    for &beta in &[0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0] {
        let mut last = f64::INFINITY;
        for i in 0..=40 {
            let z = i as f64 * 0.25;
            let v = integral_wright(beta, z, &cfg).unwrap().value;
            ok &= v < last;
            last = v;
        }
        tail = tail.max(last); // value at z = 10
    }
    CheckResult::assert(
        "integral Wright strictly decreasing, small at z=10",
        ok && tail < 0.05,
        format!("value at z=10 <= {tail:.3e}"),
    )
}

fn check_luchko_vs_series() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let mut worst = 0.0f64;
    for &(nu, zmax) in &[(0.25, 5.0), (1.0 / 3.0, 5.0), (0.45, 4.0), (0.75, 2.0)] {
        for i in 1..=8 {
            let z = zmax * i as f64 / 8.0;
            let q = m_wright_integral(nu, z, &cfg).unwrap().value;
            let s = m_wright(nu, z).unwrap().value;
            worst = worst.max((q - s).abs());
        }
    }
    CheckResult::bounded("kernel-integral M-Wright matches series", worst, 1e-6)
}

fn axis_spec(beta: f64, d: f64, dim: usize) -> GreenSpec<f64> {
    GreenSpec::new(beta, d, dim, UnitVector::axis(dim, 0).unwrap()).unwrap()
}

fn check_green_reduction_and_symmetry() -> CheckResult {
    let mut worst = 0.0f64;
    let sp = axis_spec(0.6, 1.0, 1);
    for i in 0..=10 {
        let x = -2.5 + i as f64 * 0.5;
        let a = green_kd(&[x], 0.7, &sp).unwrap();
        let b = green_1d(x, 0.7, 0.6, 1.0).unwrap();
        worst = worst.max((a - b).abs() / b.max(1e-30));
        // evenness
        let c = green_1d(-x, 0.7, 0.6, 1.0).unwrap();
        worst = worst.max((b - c).abs() / b.max(1e-30));
    }
    CheckResult::bounded("green_kd(k=1) == green_1d, even in x", worst, 1e-12)
}

fn check_green_reflection_and_hyperplane() -> CheckResult {
    let mut rng = StdRng::seed_from_u64(4242);
    let sp = GreenSpec::new(0.5, 1.3, 3, UnitVector::normalized(vec![1.0, -2.0, 0.5]).unwrap()).unwrap();
    let n: Vec<f64> = sp.direction().components().to_vec();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let r: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let u: f64 = n.iter().zip(&r).map(|(a, b)| a * b).sum();
        // reflected point r' with n.r' = -u
        let rp: Vec<f64> = (0..3).map(|i| r[i] - 2.0 * u * n[i]).collect();
        let a = green_kd(&r, 0.9, &sp).unwrap();
        let b = green_kd(&rp, 0.9, &sp).unwrap();
        worst = worst.max((a - b).abs() / a.abs().max(1e-30));
        // translation within the hyperplane: v orthogonal to n
        let mut v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vn: f64 = v.iter().zip(&n).map(|(a, b)| a * b).sum();
        for i in 0..3 {
            v[i] -= vn * n[i];
        }
        let rt: Vec<f64> = (0..3).map(|i| r[i] + v[i]).collect();
        let c = green_kd(&rt, 0.9, &sp).unwrap();
        worst = worst.max((a - c).abs() / a.abs().max(1e-30));
    }
    CheckResult::bounded("hyperplanar symmetry (reflection + translation)", worst, 1e-12)
}

fn check_green_self_similarity() -> CheckResult {
    let mut worst = 0.0f64;
    for &beta in &[0.3, 0.7, 1.0] {
        for i in 1..=10 {
            let x = i as f64 * 0.4;
            for &t in &[0.5, 1.7] {
                let lhs = green_1d(x, t, beta, 1.0).unwrap();
                let scale = t.powf(-beta / 2.0);
                let rhs = scale * green_1d(x * scale, 1.0, beta, 1.0).unwrap();
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1e-30));
            }
        }
    }
    CheckResult::bounded("green_1d scale self-similarity", worst, 1e-10)
}

fn check_heat_kernel_limit() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..=50 {
        let x = -5.0 + i as f64 * 0.2;
        let g = green_1d(x, 1.3, 1.0, 0.8).unwrap();
        let gt = (-x * x / (4.0 * 0.8 * 1.3)).exp() / (2.0 * (std::f64::consts::PI * 0.8 * 1.3).sqrt());
        worst = worst.max((g - gt).abs());
    }
    CheckResult::bounded("beta=1 classical heat kernel", worst, 1e-10)
}

/// Theorem-1 equivalence on randomized inputs.
fn check_theorem1_equivalence() -> CheckResult {
    let mut rng = StdRng::seed_from_u64(20260809);
    let betas = [0.25, 0.5, 0.75, 1.0];
    let mut worst = 0.0f64;
    for (ki, &k) in [1usize, 2, 3].iter().enumerate() {
        for trial in 0..100 {
            let beta = betas[(trial + ki) % betas.len()];
            let mut n: Vec<f64>;
            loop {
                let cand: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let norm2: f64 = cand.iter().map(|c| c * c).sum();
                if norm2 > 1e-3 {
                    n = cand;
                    let norm = norm2.sqrt();
                    n.iter_mut().for_each(|c| *c /= norm);
                    break;
                }
            }
            let sp = GreenSpec::new(beta, rng.gen_range(0.5..2.0), k, UnitVector::new(n.clone()).unwrap()).unwrap();
            let t = rng.gen_range(0.3..2.0);
            let mut r: Vec<f64>;
            loop {
                r = (0..k).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let u: f64 = n.iter().zip(&r).map(|(a, b)| a * b).sum();
                if u.abs() > 1e-3 {
                    break;
                }
            }
            let a = green_kd(&r, t, &sp).unwrap();
            let b = green_kd_derivative_form(&r, t, &sp).unwrap();
            worst = worst.max((a - b).abs() / a.abs().max(1e-30));
        }
    }
    CheckResult::bounded("Theorem-1 derivative form == explicit form", worst, 1e-8)
}

fn check_normalization() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-7, 1e-7).unwrap();
    let mut worst = 0.0f64;
    for &beta in &[0.25f64, 0.5, 0.75, 1.0] {
        let m = normalization_1d(beta, 1.0, 1.0, &cfg).unwrap();
        worst = worst.max((m.value - 1.0).abs());
    }
    CheckResult::bounded("1D mass normalization", worst, 1e-6)
}

fn check_green_hat_values() -> CheckResult {
    let mut worst = 0.0f64;
    let sp1 = axis_spec(1.0, 1.0, 1);
    worst = worst.max((green_hat_kd(1.0, 0.0, &sp1).unwrap() - 0.5).abs());
    let sp3 = axis_spec(0.5, 1.0, 3);
    worst = worst.max((green_hat_kd(1.0, 0.0, &sp3).unwrap() - 0.125).abs());
    let spq = axis_spec(0.5, 1.0, 1);
    worst = worst.max((green_hat_kd(2.0, 1.0, &spq).unwrap() - 0.09051726427657829956428499).abs());
    CheckResult::bounded("Laplace-domain Green values", worst, 1e-13)
}

fn check_orthant_integral() -> CheckResult {
    let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
    let sp = GreenSpec::new(0.5, 1.0, 3, UnitVector::new(vec![inv_sqrt3; 3]).unwrap()).unwrap();
    let o = orthant_integral_hat(&sp, 1.0).unwrap();
    let sp2 = GreenSpec::new(0.5f64, 1.0, 2, UnitVector::new(vec![0.6, 0.8]).unwrap()).unwrap();
    let o2 = orthant_integral_hat(&sp2, 2.0).unwrap();
    let worst = (o.conventional - 0.125)
        .abs()
        .max((o.direction_factor - 3.0f64.powf(-1.5)).abs())
        .max((o2.conventional - 0.125).abs());
    CheckResult::bounded("orthant integral conventions", worst, 1e-13)
}

fn check_caputo_kernel_and_power_rule() -> CheckResult {
    let grid = TimeGrid::new(0.0, 1.0, 2000).unwrap();
    let constant = vec![2.2f64; 2001];
    let c = caputo_derivative(&constant, 0.5, &grid).unwrap();
    let zero_ok = c.iter().all(|&v| v == 0.0);
    let f: Vec<f64> = grid.nodes();
    let c = caputo_derivative(&f, 0.5, &grid).unwrap();
    let worst = (c[1999] - 1.1283791670955126).abs();
    CheckResult::assert(
        "Caputo annihilates constants; power rule",
        zero_ok && worst < 1e-4,
        format!("power-rule err {worst:.2e}"),
    )
}

fn check_rl_semigroup() -> CheckResult {
    let grid = TimeGrid::new(0.0, 1.0, 800).unwrap();
    let f: Vec<f64> = grid.nodes();
    let once = rl_integral(&f, 0.5, &grid).unwrap();
    let twice = rl_integral(&once, 0.5, &grid).unwrap();
    let direct = rl_integral(&f, 1.0, &grid).unwrap();
    let worst = (twice[800] - direct[800]).abs();
    CheckResult::bounded("R-L semigroup I^1/2 I^1/2 = I^1 (f=t)", worst, 5e-4)
}

fn check_pde_residual_fast() -> CheckResult {
    let sp = axis_spec(0.5, 1.0, 1);
    let grid = TimeGrid::new(1e-6, 2.0, 1000).unwrap();
    let r = pde_residual_1d(&sp, 1.0, &grid).unwrap();
    let rel = r.max_relative_in(0.5, 2.0);
    CheckResult::bounded("PDE residual (beta=0.5, coarse grid)", rel, 5e-3)
}

fn check_factorization_fast() -> CheckResult {
    let sp = axis_spec(0.5, 1.0, 1);
    let grid = TimeGrid::new(1e-6, 2.0, 1000).unwrap();
    let matched = factorization_residual_1d(&sp, 2.0, &grid, FactorSign::Plus).unwrap();
    let wrong = factorization_residual_1d(&sp, 2.0, &grid, FactorSign::Minus).unwrap();
    let rel = matched.max_relative_in(0.5, 2.0);
    let ratio = wrong.max_abs_in(0.5, 2.0) / matched.max_abs_in(0.5, 2.0).max(1e-300);
    CheckResult::assert(
        "factorization residual + negative control",
        rel < 5e-3 && ratio >= 10.0,
        format!("rel {rel:.2e}, wrong-sign ratio {ratio:.1}"),
    )
}

fn check_laplace_pairs_fast() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let mut worst = 0.0f64;
    let chk = verify_pair(LaplacePair::MScaled, 0.5, 1.0, &[1.0, 2.0], &cfg).unwrap();
    worst = worst.max(chk.max_rel_discrepancy);
    let chk = verify_pair(LaplacePair::MDensity, 0.5, 1.0, &[4.0], &cfg).unwrap();
    worst = worst.max(chk.max_rel_discrepancy);
    let chk = verify_pair(LaplacePair::WrightPower { mu: 0.5 }, 0.5, 1.0, &[1.0], &cfg).unwrap();
    worst = worst.max(chk.max_rel_discrepancy);
    CheckResult::bounded("Laplace pair identities (spot)", worst, 1e-5)
}

fn check_caputo_transform() -> CheckResult {
    let mut worst: f64 = caputo_transform_check(&[3.0f64], 0.5, 1.3).unwrap();
    worst = worst.max(caputo_transform_check(&[0.0, 1.0], 0.5, 1.0).unwrap() / 10.0); // 1e-3 contract
    worst = worst.max(caputo_transform_check(&[0.0, 0.0, 1.0], 0.25, 2.0).unwrap() / 50.0); // 5e-3 contract
    CheckResult::bounded("Caputo transform rule", worst, 1e-4)
}

fn check_talbot() -> CheckResult {
    let tc = TalbotConfig::<f64>::default();
    let mut worst = (talbot_inverse(|s| s.inv(), 3.0, &tc).unwrap() - 1.0).abs();
    worst = worst.max((talbot_inverse(|s| (s * s).inv(), 2.0, &tc).unwrap() - 2.0).abs());
    CheckResult::bounded("Talbot inversion of 1/s, 1/s^2", worst, 1e-8)
}

fn check_talbot_green_consistency() -> CheckResult {
    let tc = TalbotConfig::default();
    let mut worst = 0.0f64;
    for &(k, beta, t, u) in &[(1usize, 0.5f64, 1.0f64, 1.0f64), (2, 0.5, 1.0, 0.5), (3, 1.0, 0.5, 0.5), (2, 1.0, 2.0, 1.0)] {
        let sp = axis_spec(beta, 1.0, k);
        let inv = talbot_inverse(|s| green_hat_kd_complex(s, u, &sp).unwrap(), t, &tc).unwrap();
        let td = green_kd_at_projection(u, t, &sp).unwrap();
        worst = worst.max((inv - td).abs() / td.abs().max(1e-30));
    }
    CheckResult::bounded("Talbot(green_hat) == time-domain Green (spot)", worst, 1e-5)
}

fn check_forward_laplace_trivial() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-10, 1e-10).unwrap();
    let mut worst = (laplace_forward(|_| 1.0f64, 2.0, &cfg).unwrap() - 0.5).abs();
    worst = worst.max((laplace_forward(|t: f64| t, 1.0, &cfg).unwrap() - 1.0).abs());
    CheckResult::bounded("forward transform of 1 and t", worst, 1e-8)
}

/// The fast suite: every check family at desk scale.
pub fn run_fast() -> Vec<CheckResult> {
    vec![
        check_series_at_zero(),
        check_exponential_row(),
        check_derivative_identity(),
        check_antiderivative_identity(),
        check_m_wright_consistency(),
        check_m_wright_closed_forms(),
        check_m_wright_positivity(),
        check_gamma_pole_convention(),
        check_bessel_relation(),
        check_engine_examples(),
        check_theorem2_offset(),
        check_theorem2_erfc(),
        check_branch_continuity(),
        check_integral_wright_monotone(),
        check_luchko_vs_series(),
        check_green_reduction_and_symmetry(),
        check_green_reflection_and_hyperplane(),
        check_green_self_similarity(),
        check_heat_kernel_limit(),
        check_theorem1_equivalence(),
        check_normalization(),
        check_green_hat_values(),
        check_orthant_integral(),
        check_caputo_kernel_and_power_rule(),
        check_rl_semigroup(),
        check_pde_residual_fast(),
        check_factorization_fast(),
        check_laplace_pairs_fast(),
        check_caputo_transform(),
        check_talbot(),
        check_talbot_green_consistency(),
        check_forward_laplace_trivial(),
    ]
}

fn check_pde_refinement() -> CheckResult {
    let mut ok = true;
    let mut detail = String::new();
    for &(beta, d, x) in &[(0.5, 1.0, 1.0), (0.75, 2.0, 0.5)] {
        let sp = axis_spec(beta, d, 1);
        let coarse = pde_residual_1d(&sp, x, &TimeGrid::new(1e-6, 2.0, 2000).unwrap()).unwrap();
        let fine = pde_residual_1d(&sp, x, &TimeGrid::new(1e-6, 2.0, 4000).unwrap()).unwrap();
        let rc = coarse.max_relative_in(0.5, 2.0);
        let rf = fine.max_relative_in(0.5, 2.0);
        ok &= rc <= 5e-3 && rc / rf >= 1.5;
        detail.push_str(&format!("(beta={beta}: {rc:.2e} -> {rf:.2e}) "));
    }
    CheckResult::assert("PDE residual halves under refinement", ok, detail)
}

fn check_factorization_refinement() -> CheckResult {
    let sp = axis_spec(0.5, 1.0, 1);
    let coarse = factorization_residual_1d(&sp, 2.0, &TimeGrid::new(1e-6, 2.0, 2000).unwrap(), FactorSign::Plus).unwrap();
    let fine = factorization_residual_1d(&sp, 2.0, &TimeGrid::new(1e-6, 2.0, 4000).unwrap(), FactorSign::Plus).unwrap();
    let rc = coarse.max_relative_in(0.5, 2.0);
    let rf = fine.max_relative_in(0.5, 2.0);
    CheckResult::assert(
        "factorization residual halves under refinement",
        rc <= 1e-2 && rc / rf >= 1.5,
        format!("{rc:.2e} -> {rf:.2e}"),
    )
}

fn check_l1_order() -> CheckResult {
    let exact = 2.0 / gamma(2.75f64);
    let mut errs = Vec::new();
    for &n in &[100usize, 200, 400] {
        let grid = TimeGrid::new(0.0, 1.0, n).unwrap();
        let f: Vec<f64> = grid.nodes().iter().map(|&t| t * t).collect();
        let c = caputo_derivative(&f, 0.5, &grid).unwrap();
        errs.push((c[n - 1] - 2.0 / gamma(2.5f64) * 1.0f64).abs());
        let _ = exact;
    }
    let o1 = (errs[0] / errs[1]).log2();
    let o2 = (errs[1] / errs[2]).log2();
    CheckResult::assert(
        "empirical L1 order >= 1.5 (f = t^2, beta = 0.5)",
        o1 >= 1.5 && o2 >= 1.5,
        format!("orders {o1:.2}, {o2:.2}"),
    )
}

fn check_pairs_full_grid() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-9, 1e-9).unwrap();
    let s_grid = [0.5, 1.0, 2.0, 4.0];
    let mut worst = 0.0f64;
    for &nu in &[0.3, 0.5, 0.7] {
        for &k in &[0.5, 1.0, 2.0] {
            let chk = verify_pair(LaplacePair::MScaled, nu, k, &s_grid, &cfg).unwrap();
            worst = worst.max(chk.max_rel_discrepancy);
        }
    }
    CheckResult::bounded("pair-2 identity over full nu/k/s grid", worst, 1e-5)
}

fn check_normalization_full() -> CheckResult {
    let cfg = QuadratureConfig::with_tolerance(1e-7, 1e-7).unwrap();
    let mut worst = 0.0f64;
    for &beta in &[0.25f64, 0.5, 0.75, 1.0] {
        for &t in &[0.5, 1.0, 2.0] {
            for &d in &[1.0, 3.0] {
                let m = normalization_1d(beta, d, t, &cfg).unwrap();
                worst = worst.max((m.value - 1.0).abs());
            }
        }
    }
    CheckResult::bounded("1D mass normalization (full grid)", worst, 1e-6)
}

fn check_t_start_sensitivity() -> CheckResult {
    // history-truncation sensitivity report: the residual floor must drop as
    // t_start decreases (it is the h-independent history term)
    let sp = axis_spec(0.5, 1.0, 1);
    let r4 = pde_residual_1d(&sp, 1.0, &TimeGrid::new(1e-4, 2.0, 2000).unwrap()).unwrap().max_relative_in(0.5, 2.0);
    let r6 = pde_residual_1d(&sp, 1.0, &TimeGrid::new(1e-6, 2.0, 2000).unwrap()).unwrap().max_relative_in(0.5, 2.0);
    CheckResult::assert(
        "t_start sensitivity (history floor drops)",
        r6 < r4,
        format!("rel residual {r4:.2e} @ t_start=1e-4 -> {r6:.2e} @ 1e-6"),
    )
}

/// The full suite: everything in `run_fast` plus refinement-order and
/// sensitivity studies.
pub fn run_full() -> Vec<CheckResult> {
    let mut all = run_fast();
    all.push(check_pde_refinement());
    all.push(check_factorization_refinement());
    all.push(check_l1_order());
    all.push(check_pairs_full_grid());
    all.push(check_normalization_full());
    all.push(check_t_start_sensitivity());
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_reports_enough_checks() {
        assert!(run_fast().len() >= 12);
    }

    #[test]
    fn broken_pole_convention_is_detected() {
        // a deliberately broken evaluator: reciprocal Gamma via naive
        // reflection, no exact zero at poles (the pole terms leak)
        let broken = |lambda: f64, mu: f64, z: f64| -> f64 {
            let mut sum = 0.0;
            let mut p = 1.0;
            for k in 0..200 {
                let x = lambda * k as f64 + mu;
                // sin(pi x) Gamma(1-x) / pi without argument reduction
                let rg = if x > 0.5 {
                    1.0 / gamma(x)
                } else {
                    (std::f64::consts::PI * x).sin() * gamma(1.0 - x) / std::f64::consts::PI
                };
                sum += p * rg;
                p *= z / (k as f64 + 1.0);
            }
            sum
        };
        let result = gamma_pole_convention_holds(broken);
        assert!(!result.passed, "mutated evaluator must fail the check: {}", result.detail);
    }
}
