//! Wright-type functions by real-line kernel integrals over `[0, inf)`: the
//! deformed Hankel-ray representation of the Integral Wright function
//! `W_I(z, beta) = W(-beta/2, 1; -z)` and the (symbol-fixed) kernel
//! representation of the M-Wright function and its derivatives.
//!
//! Conventions, fixed by requiring agreement with the series:
//!
//! * `integral_wright_raw` evaluates `1/2 + (1/pi) int_0^inf K(a, z, r) dr`
//!   with `a = -beta/2` and `K` the displayed ray kernel, for **all** real z
//!   (the same kernel-argument convention as the published z < 0 branch; the
//!   published z >= 0 branch reproduces the series only at `beta = 1`). The
//!   raw value is offset from the series by a constant `-1/2` (the discarded
//!   ray-circle contribution); [`integral_wright`] adds the `+1/2` back and
//!   agrees with the series everywhere.
//! * `m_wright_integral` evaluates
//!   `M_nu(z) = 1/(pi nu) int_0^inf exp(-r z cos(pi nu) - r^(1/nu)) sin(pi nu - r z sin(pi nu)) dr`
//!   (single integration variable `r`, order parameter `nu` throughout,
//!   normalization pinned by the `nu = 1/2` Gaussian). Exact for
//!   `nu <= ~0.6`; for larger `nu` the representation itself degrades as `z`
//!   grows (a saddle contribution crosses the ray) - fine at the module's
//!   validated points, documented here rather than hidden.

use crate::cst;
use crate::error::{Error, Result};
use crate::quad::{adaptive_finite, QuadratureConfig};
use crate::scalar::Real;
use crate::wright::{m_wright_params, wright_tol, EvalMethod, EvalResult, WrightParams};

/// Ray kernel of the Integral Wright representation, exactly as displayed:
/// `K(a, z, r) = exp(-cos(pi a) z / r^a - r) * sin(sin(pi a) z / r^a) / r`.
pub fn theorem2_kernel<R: Real>(a: R, z: R, r: R) -> Result<R> {
    if !(a < R::zero()) {
        return Err(Error::InvalidParameter { what: "theorem2 kernel requires a < 0" });
    }
    if !(r > R::zero()) {
        return Err(Error::InvalidParameter { what: "theorem2 kernel requires r > 0" });
    }
    let pi: R = cst(std::f64::consts::PI);
    let phase_scale = z * r.powf(-a); // z / r^a
    Ok(((-(pi * a).cos() * phase_scale) - r).exp() * ((pi * a).sin() * phase_scale).sin() / r)
}

/// Raw ray-integral value `1/2 + (1/pi) int K(a, z, r) dr` (no series offset).
///
/// The integral is evaluated under the substitution `y = r^{|a|}`, which makes
/// the integrand bounded with endpoint limit `sin(pi a) z / |a|` at `y = 0`.
pub fn integral_wright_raw<R: Real>(beta: R, z: R, config: &QuadratureConfig<R>) -> Result<EvalResult<R>> {
    if !(beta > R::zero() && beta <= R::one()) {
        return Err(Error::InvalidParameter { what: "integral_wright requires beta in (0, 1]" });
    }
    let a = -beta * cst::<R>(0.5);
    let q = -a; // |a| in (0, 1/2]
    let pi: R = cst(std::f64::consts::PI);
    let ca = (pi * a).cos();
    let sa = (pi * a).sin();
    let inv_q = q.recip();

    // upper limit in y: need y^{1/q} - max(0, -ca*z)*y >= L
    let l_target = (cst::<R>(10.0) / config.abs_tol()).ln() + cst(5.0);
    let growth = (-ca * z).max(R::zero()); // positive when z < 0
    let mut y_max = l_target.powf(q) + R::one();
    for _ in 0..60 {
        let next = (l_target + growth * y_max).powf(q) + R::one();
        if (next - y_max).abs() < cst::<R>(1e-3) * y_max {
            y_max = next;
            break;
        }
        y_max = next;
    }
    y_max = y_max.max(config.truncation_radius().powf(q));
    let tail_exponent = y_max.powf(inv_q) - growth * y_max;
    let tail = (-tail_exponent).exp();

    let limit0 = sa * z * inv_q;
    let integrand = move |y: R| {
        if y == R::zero() {
            return limit0;
        }
        inv_q * (-ca * z * y - y.powf(inv_q)).exp() * (sa * z * y).sin() / y
    };
    let seeds = [y_max * cst(0.05), y_max * cst(0.2), y_max * cst(0.5)];
    let (v, e, nodes) = adaptive_finite(
        &integrand,
        R::zero(),
        y_max,
        config.abs_tol() * cst(0.5),
        config.rel_tol() * cst(0.5),
        config.max_nodes(),
        &seeds,
    )?;
    let value = cst::<R>(0.5) + v / pi;
    let err = e / pi + tail;
    let target = config.abs_tol().max(config.rel_tol() * value.abs());
    if err > target {
        return Err(Error::ToleranceNotMet {
            value: value.to_f64().unwrap_or(f64::NAN),
            abs_error_estimate: err.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(EvalResult { value, abs_error_estimate: err, effort: nodes, method: EvalMethod::Quadrature })
}

/// Integral Wright function `W_I(z, beta) = W(-beta/2, 1; -z)` via the ray
/// representation, with the calibrated `+1/2` offset applied so the value
/// agrees with the series (which gives `W_I(0) = 1`, whereas the raw ray
/// formula gives `1/2`).
pub fn integral_wright<R: Real>(beta: R, z: R, config: &QuadratureConfig<R>) -> Result<EvalResult<R>> {
    let raw = integral_wright_raw(beta, z, config)?;
    Ok(EvalResult {
        value: raw.value + cst(0.5),
        abs_error_estimate: raw.abs_error_estimate,
        effort: raw.effort,
        method: raw.method,
    })
}

/// Decay bound exponent for the M-Wright family: `M_nu(z)` and its first few
/// derivatives are bounded by `poly * exp(-b(nu) z^{1/(1-nu)})`,
/// `b = (1-nu) nu^{nu/(1-nu)}`. The 0.95 slack plus e^25 cushion dominates the
/// polynomial prefactor wherever the guard can fire. Used only as an underflow
/// guard, never as an evaluator.
fn asymptotic_ln_bound<R: Real>(nu: R, z: R) -> R {
    let one = R::one();
    let b = (one - nu) * nu.powf(nu / (one - nu));
    -cst::<R>(0.95) * b * z.powf((one - nu).recip()) + cst(25.0)
}

/// Kernel-integral evaluation of `W(-nu, 1-(m+1)nu; -z) = (-1)^m M_nu^{(m)}(z)`
/// for `z >= 0`:
/// `(1/(pi nu)) int_0^inf r^m exp(-r z cos(pi nu) - r^{1/nu}) sin((m+1) pi nu - r z sin(pi nu)) dr`.
pub(crate) fn m_family_quad<R: Real>(
    nu: R,
    order: u32,
    z: R,
    abs_tol: R,
    rel_tol: R,
    max_nodes: u32,
) -> Result<(R, R, u32)> {
    let pi: R = cst(std::f64::consts::PI);
    let c = (pi * nu).cos();
    let s = (pi * nu).sin();
    let phase0 = pi * nu * cst(order as f64 + 1.0);
    let m_r: R = cst(order as f64);
    let inv_nu = nu.recip();

    // truncation radius: r^{1/nu} - max(0,-c) z r - m ln r >= L
    let l_target = (cst::<R>(10.0) / abs_tol).ln() + cst(5.0);
    let growth = (-c * z).max(R::zero());
    let mut r_max = l_target.powf(nu) + cst(2.0);
    for _ in 0..80 {
        let next = (l_target + growth * r_max + m_r * r_max.max(cst(1.5)).ln()).powf(nu) + cst(2.0);
        if (next - r_max).abs() < cst::<R>(1e-3) * r_max {
            r_max = next;
            break;
        }
        r_max = next;
    }
    // cancellation noise pre-check: peak of the exponent on [0, r_max]
    let peak_exp = if growth > R::zero() {
        let r_star = (nu * growth).powf(nu / (R::one() - nu));
        growth * r_star - r_star.powf(inv_nu) + m_r * r_star.max(R::one()).ln()
    } else {
        R::zero()
    };
    if peak_exp > cst(600.0) {
        return Err(Error::ToleranceNotMet { value: 0.0, abs_error_estimate: f64::MAX });
    }
    let tail = (-(r_max.powf(inv_nu) - growth * r_max - m_r * r_max.ln())).exp();

    let integrand = move |r: R| {
        if r == R::zero() {
            return if order == 0 { phase0.sin() } else { R::zero() };
        }
        r.powf(m_r) * (-r * z * c - r.powf(inv_nu)).exp() * (phase0 - r * z * s).sin()
    };
    let seeds = [r_max * cst(0.05), r_max * cst(0.2), r_max * cst(0.5)];
    let (v, e, nodes) = adaptive_finite(
        &integrand,
        R::zero(),
        r_max,
        abs_tol * pi * nu * cst(0.5),
        rel_tol * cst(0.5),
        max_nodes,
        &seeds,
    )?;
    let norm = (pi * nu).recip();
    Ok((v * norm, (e + tail) * norm, nodes))
}

/// M-Wright function by the real-line kernel integral (`z >= 0`).
pub fn m_wright_integral<R: Real>(nu: R, z: R, config: &QuadratureConfig<R>) -> Result<EvalResult<R>> {
    if !(nu > R::zero() && nu < R::one()) {
        return Err(Error::InvalidParameter { what: "m_wright_integral requires nu in (0, 1)" });
    }
    if !(z >= R::zero()) {
        return Err(Error::InvalidParameter { what: "m_wright_integral requires z >= 0" });
    }
    let (value, err, nodes) = m_family_quad(nu, 0, z, config.abs_tol(), config.rel_tol(), config.max_nodes())?;
    let target = config.abs_tol().max(config.rel_tol() * value.abs());
    if err > target {
        return Err(Error::ToleranceNotMet {
            value: value.to_f64().unwrap_or(f64::NAN),
            abs_error_estimate: err.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(EvalResult { value, abs_error_estimate: err, effort: nodes, method: EvalMethod::Quadrature })
}

/// Robust evaluation of `W(-nu, 1-(m+1)nu; -z)` for `z >= 0` with explicit
/// tolerance targets: series (escalating to double-word) where conditioned,
/// then the rigorous decay bound as an underflow guard, then the kernel
/// integral. This is the evaluation path the Green's functions use.
pub(crate) fn eval_m_family_robust<R: Real>(
    nu: R,
    order: u32,
    z: R,
    rel_tol: R,
    abs_tol: R,
) -> Result<EvalResult<R>> {
    debug_assert!(z >= R::zero());
    let one = R::one();
    let params = WrightParams::new(-nu, one - cst::<R>(order as f64 + 1.0) * nu)?;
    match wright_tol(&params, -z, rel_tol, abs_tol) {
        Ok(r) if r.abs_error_estimate <= abs_tol.max(rel_tol * r.value.abs()) * cst(2.0) => {
            return Ok(r);
        }
        Ok(_) | Err(Error::NonConvergence { .. }) => {}
        Err(e) => return Err(e),
    }
    if z > one {
        let ln_bound = asymptotic_ln_bound(nu, z);
        if ln_bound < (abs_tol * cst(0.1)).ln() {
            return Ok(EvalResult {
                value: R::zero(),
                abs_error_estimate: ln_bound.exp(),
                effort: 0,
                method: EvalMethod::ClosedForm,
            });
        }
    }
    let (value, err, nodes) = m_family_quad(nu, order, z, abs_tol * cst(0.5), rel_tol * cst(0.5), 400_000)?;
    if err <= abs_tol.max(rel_tol * value.abs()) {
        Ok(EvalResult { value, abs_error_estimate: err, effort: nodes, method: EvalMethod::Quadrature })
    } else {
        Err(Error::ToleranceNotMet {
            value: value.to_f64().unwrap_or(f64::NAN),
            abs_error_estimate: err.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Robust M-Wright with tolerance targets (series, guard, then kernel).
pub(crate) fn m_wright_robust<R: Real>(nu: R, z: R, rel_tol: R, abs_tol: R) -> Result<EvalResult<R>> {
    let params = m_wright_params(nu)?;
    if z < R::zero() {
        // left half-line: series only (the kernel form needs z >= 0)
        return wright_tol(&params, -z, rel_tol, abs_tol);
    }
    if nu == R::zero() {
        return wright_tol(&params, -z, rel_tol, abs_tol);
    }
    eval_m_family_robust(nu, 0, z, rel_tol, abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wright::{m_wright, wright};
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::with_tolerance(1e-10, 1e-10).unwrap()
    }

    #[test]
    fn kernel_values() {
        // z = 0 makes the kernel vanish
        assert_eq!(theorem2_kernel(-0.5, 0.0, 1.0).unwrap(), 0.0);
        // a=-1/2, z=1, r=1 -> -e^{-1} sin 1 (cos(-pi/2) = 0 up to rounding)
        assert_relative_eq!(
            theorem2_kernel(-0.5, 1.0, 1.0).unwrap(),
            -0.3095598756531121984439128,
            max_relative = 1e-13
        );
        // frozen direct-formula oracle at a=-0.25, z=1, r=1
        assert_relative_eq!(
            theorem2_kernel(-0.25, 1.0, 1.0).unwrap(),
            -0.1178375369620146464132854,
            max_relative = 1e-13
        );
        assert!(theorem2_kernel(0.25, 1.0, 1.0).is_err());
        assert!(theorem2_kernel(-0.25, 1.0, 0.0).is_err());
    }

    #[test]
    fn raw_value_at_zero_is_half() {
        let r = integral_wright_raw(0.5, 0.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 0.5, epsilon = 1e-10);
        let r = integral_wright(0.7, 0.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn beta_one_is_erfc() {
        for &z in &[0.5, 2.0, 4.0] {
            let r = integral_wright(1.0, z, &cfg()).unwrap();
            assert_relative_eq!(r.value, crate::special::erfc(z / 2.0), epsilon = 1e-8);
        }
        // (beta=1, z=2) -> erfc(1), frozen value
        let r = integral_wright(1.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 0.1572992070502851306587794, epsilon = 1e-8);
    }

    #[test]
    fn matches_series_both_signs() {
        // (beta=0.5, z=1.5) vs series W(-0.25, 1, -1.5)
        let r = integral_wright(0.5, 1.5, &cfg()).unwrap();
        let s = wright(&WrightParams::new(-0.25, 1.0).unwrap(), -1.5).unwrap();
        assert!((r.value - s.value).abs() < 1e-6);
        // negative z branch
        let r = integral_wright(0.5, -1.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 2.141980892059161, epsilon = 1e-8);
    }

    #[test]
    fn luchko_closed_forms() {
        // nu = 1/2: Gaussian
        let r = m_wright_integral(0.5, 1.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 0.439391289467722397046862, epsilon = 1e-9);
        let r = m_wright_integral(0.5, 0.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 0.5641895835477562869480795, epsilon = 1e-9);
        assert_eq!(r.method, EvalMethod::Quadrature);
    }

    #[test]
    fn luchko_matches_series() {
        // (nu=0.75, z=2): representation defect ~1.5e-6... spec tolerance 1e-6;
        // the known intrinsic defect at this point is 2.4e-8 (high-precision quad),
        // our engine tolerance adds the rest.
        let r = m_wright_integral(0.75, 2.0, &cfg()).unwrap();
        let s = m_wright(0.75, 2.0).unwrap();
        assert!((r.value - s.value).abs() < 1e-6, "diff {:e}", (r.value - s.value).abs());
        for &(nu, z) in &[(0.25, 1.0), (0.25, 3.0), (1.0 / 3.0, 2.0), (0.45, 4.0)] {
            let r = m_wright_integral(nu, z, &cfg()).unwrap();
            let s = m_wright(nu, z).unwrap();
            assert!((r.value - s.value).abs() < 1e-8, "nu={nu} z={z} diff {:e}", (r.value - s.value).abs());
        }
    }

    #[test]
    fn derivative_kernel_matches_series() {
        // W(-nu, 1-2nu; -z) and W(-nu, 1-3nu; -z) against the series
        for &(nu, z) in &[(0.25, 1.0), (0.25, 4.0), (0.375, 2.0), (0.5, 1.0)] {
            for order in 1u32..=2 {
                let (v, e, _) = m_family_quad(nu, order, z, 1e-11, 1e-11, 400_000).unwrap();
                let p = WrightParams::new(-nu, 1.0 - (order as f64 + 1.0) * nu).unwrap();
                let s = wright(&p, -z).unwrap();
                assert!(
                    (v - s.value).abs() < 1e-8 + 10.0 * e,
                    "nu={nu} m={order} z={z}: {v} vs {}",
                    s.value
                );
            }
        }
    }

    #[test]
    fn robust_path_covers_extreme_arguments() {
        // far beyond the series guard: w = 50 at nu = 0.25
        let r = eval_m_family_robust(0.25f64, 1, 50.0, 1e-9, 1e-12).unwrap();
        assert!(r.value.abs() < 1e-12);
        // mid-range where the f64 series is hopeless but dd or quadrature works
        let r = eval_m_family_robust(0.375f64, 0, 20.0, 1e-9, 1e-12).unwrap();
        assert!(r.value.abs() < 1e-6);
        assert!(r.abs_error_estimate <= 1e-9f64.max(1e-12 / r.value.abs().max(1e-300)));
    }

    #[test]
    fn domain_errors() {
        assert!(integral_wright(0.0, 1.0, &cfg()).is_err());
        assert!(integral_wright(1.5, 1.0, &cfg()).is_err());
        assert!(m_wright_integral(0.5, -1.0, &cfg()).is_err());
        assert!(m_wright_integral(1.0, 1.0, &cfg()).is_err());
    }
}
