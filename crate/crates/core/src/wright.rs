//! Wright function `W(lambda, mu; z)` and the M-Wright specialization by the
//! defining power series, with closed-form fast paths.
//!
//! The series `sum_k z^k / (k! Gamma(lambda k + mu))` is entire for
//! `lambda > -1`, but for `lambda < 0` it is alternating-by-blocks and loses
//! digits to cancellation as `|z|` grows. Evaluation escalates through three
//! stages: native-precision summation, double-word summation when the native
//! rounding floor exceeds the requested tolerance, and `NonConvergence` past
//! the cancellation guard so callers can switch to the kernel-integral
//! representations in [`crate::wright_quad`].

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{ln_abs_rgamma, rgamma, rgamma_dd};
use crate::cst;

/// Parameter pair `(lambda, mu)` of the Wright series, `lambda > -1`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WrightParams<R> {
    lambda: R,
    mu: R,
}

impl<R: Real> WrightParams<R> {
    pub fn new(lambda: R, mu: R) -> Result<Self> {
        if !(lambda > -R::one()) || !lambda.is_finite() {
            return Err(Error::InvalidParameter { what: "lambda must be finite and > -1" });
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter { what: "mu must be finite" });
        }
        Ok(WrightParams { lambda, mu })
    }

    pub fn lambda(&self) -> R {
        self.lambda
    }

    pub fn mu(&self) -> R {
        self.mu
    }

    /// Cancellation guard: largest |z| the series accepts for lambda < 0.
    pub fn z_switch(&self) -> R {
        if self.lambda < R::zero() {
            cst::<R>(30.0) * (R::one() + self.lambda)
        } else {
            R::infinity()
        }
    }
}

/// How a scalar evaluation was produced.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EvalMethod {
    Series,
    ClosedForm,
    Quadrature,
}

/// Value with error estimate and evaluation metadata.
#[derive(Copy, Clone, Debug)]
pub struct EvalResult<R> {
    pub value: R,
    pub abs_error_estimate: R,
    /// Terms summed or quadrature nodes used.
    pub effort: u32,
    pub method: EvalMethod,
}

impl<R: Real> EvalResult<R> {
    fn closed(value: R) -> Self {
        EvalResult {
            value,
            abs_error_estimate: value.abs() * R::epsilon() * cst(4.0),
            effort: 1,
            method: EvalMethod::ClosedForm,
        }
    }
}

const TERM_CAP: usize = 10_000;

struct SeriesOut<R> {
    sum: R,
    abs_sum: R,
    trunc_bound: R,
    terms: u32,
    converged: bool,
}

/// Native-precision summation. `rel/abs` drive the triple-small-term stop.
fn series_native<R: Real>(lambda: R, mu: R, z: R, rel: R, abs: R) -> SeriesOut<R> {
    let ln_abs_z = z.abs().ln();
    let neg_z = z < R::zero();
    let gamma_arg_cut: R = cst(26.0);
    let mut p = R::one(); // z^k / k!
    let mut lp = R::zero(); // ln |z^k / k!|
    let mut sum = R::zero();
    let mut abs_sum = R::zero();
    let mut small_run = 0usize;
    let mut terms = 0u32;
    for k in 0..TERM_CAP {
        let x = lambda * cst(k as f64) + mu;
        let t = if x.abs() <= gamma_arg_cut {
            p * rgamma(x)
        } else {
            let (sign_rg, ln_rg) = ln_abs_rgamma(x);
            if sign_rg == R::zero() {
                R::zero()
            } else {
                let e = lp + ln_rg;
                if e > cst(700.0) {
                    // term overflows: hopeless, bail out
                    return SeriesOut { sum, abs_sum: R::infinity(), trunc_bound: R::infinity(), terms, converged: false };
                }
                let sign_p = if neg_z && k % 2 == 1 { -R::one() } else { R::one() };
                sign_p * sign_rg * e.exp()
            }
        };
        if !t.is_finite() {
            return SeriesOut { sum, abs_sum: R::infinity(), trunc_bound: R::infinity(), terms, converged: false };
        }
        sum += t;
        abs_sum += t.abs();
        terms = k as u32 + 1;
        let threshold = rel * sum.abs() + abs;
        if t.abs() <= threshold {
            small_run += 1;
            if small_run >= 3 && k >= 8 {
                return SeriesOut { sum, abs_sum, trunc_bound: cst::<R>(10.0) * threshold, terms, converged: true };
            }
        } else {
            small_run = 0;
        }
        p = p * z / cst(k as f64 + 1.0);
        lp = lp + ln_abs_z - cst((k as f64 + 1.0).ln());
    }
    SeriesOut { sum, abs_sum, trunc_bound: R::infinity(), terms: TERM_CAP as u32, converged: false }
}

/// Double-word summation; power-of-two scaling keeps the reciprocal-Gamma
/// factors in range even when individual factors would overflow.
fn series_dd<R: Real>(lambda: R, mu: R, z: R) -> SeriesOut<R> {
    let mut p = Dd::<R>::one();
    let mut p_exp: i32 = 0;
    let mut sum = Dd::<R>::zero();
    let mut abs_sum = R::zero();
    let mut small_run = 0usize;
    let mut terms = 0u32;
    let stop_rel: R = R::epsilon() * cst(1e-2);
    let renorm_hi: R = cst((2.0f64).powi(80));
    let renorm_lo: R = cst((2.0f64).powi(-80));
    for k in 0..TERM_CAP {
        let x = Dd::from_product(lambda, cst(k as f64)).add_scalar(mu);
        let rg = rgamma_dd(x);
        let total_exp = p_exp + rg.exp2;
        let t = if rg.mantissa.hi == R::zero() || total_exp < -1060 {
            Dd::zero()
        } else if total_exp > 1020 {
            return SeriesOut { sum: sum.to_scalar(), abs_sum: R::infinity(), trunc_bound: R::infinity(), terms, converged: false };
        } else {
            let raw = p.mul(rg.mantissa);
            if total_exp == 0 {
                raw
            } else {
                raw.mul_scalar(cst((2.0f64).powi(total_exp)))
            }
        };
        if !t.is_finite() {
            return SeriesOut { sum: sum.to_scalar(), abs_sum: R::infinity(), trunc_bound: R::infinity(), terms, converged: false };
        }
        sum = sum.add(t);
        abs_sum += t.hi.abs();
        terms = k as u32 + 1;
        let threshold = stop_rel * sum.hi.abs() + cst(1e-320);
        if t.hi.abs() <= threshold {
            small_run += 1;
            if small_run >= 3 && k >= 8 {
                return SeriesOut { sum: sum.to_scalar(), abs_sum, trunc_bound: cst::<R>(10.0) * threshold, terms, converged: true };
            }
        } else {
            small_run = 0;
        }
        p = p.mul_scalar(z).div_scalar(cst(k as f64 + 1.0));
        let ahi = p.hi.abs();
        if ahi != R::zero() {
            if ahi > renorm_hi {
                p = p.mul_scalar(renorm_lo);
                p_exp += 80;
            } else if ahi < renorm_lo {
                p = p.mul_scalar(renorm_hi);
                p_exp -= 80;
            }
        }
    }
    SeriesOut { sum: sum.to_scalar(), abs_sum, trunc_bound: R::infinity(), terms: TERM_CAP as u32, converged: false }
}

/// Series evaluation with explicit tolerance targets. Internal callers use
/// looser targets than the public default to avoid needless double-word work.
pub(crate) fn wright_tol<R: Real>(params: &WrightParams<R>, z: R, rel_tol: R, abs_tol: R) -> Result<EvalResult<R>> {
    if !z.is_finite() {
        return Err(Error::InvalidParameter { what: "z must be finite" });
    }
    let (lambda, mu) = (params.lambda, params.mu);
    if z == R::zero() {
        return Ok(EvalResult::closed(rgamma(mu)));
    }
    if lambda == R::zero() {
        // W(0, mu; z) = e^z / Gamma(mu)
        return Ok(EvalResult::closed(z.exp() * rgamma(mu)));
    }
    if lambda == cst(-0.5) && mu == cst(0.5) {
        // W(-1/2, 1/2; z) = e^{-z^2/4} / sqrt(pi)  (even in z)
        let inv_sqrt_pi: R = cst(0.5641895835477563);
        return Ok(EvalResult::closed((-z * z * cst(0.25)).exp() * inv_sqrt_pi));
    }
    if lambda < R::zero() && z.abs() > params.z_switch() {
        return Err(Error::NonConvergence { terms: 0 });
    }

    let native = series_native(lambda, mu, z, rel_tol.max(R::epsilon()), abs_tol);
    if !native.converged {
        return Err(Error::NonConvergence { terms: native.terms as usize });
    }
    let eps = R::epsilon();
    let floor = cst::<R>(8.0) * eps * native.abs_sum;
    let needed = abs_tol.max(rel_tol * native.sum.abs());
    if floor <= needed * cst(0.5) {
        return Ok(EvalResult {
            value: native.sum,
            abs_error_estimate: native.trunc_bound + floor,
            effort: native.terms,
            method: EvalMethod::Series,
        });
    }
    // Escalate to double-word summation when that materially improves the
    // rounding floor; the truncation (stop) criterion itself already held.
    let dd_pred = cst::<R>(1e3) * eps * eps * native.abs_sum;
    if dd_pred <= (needed * cst(0.5)).max(native.sum.abs() * cst(0.1)) {
        let ddo = series_dd(lambda, mu, z);
        if ddo.converged && ddo.abs_sum.is_finite() {
            let floor_dd = cst::<R>(1e3) * eps * eps * ddo.abs_sum;
            return Ok(EvalResult {
                value: ddo.sum,
                abs_error_estimate: ddo.trunc_bound.max(eps * cst(0.01) * ddo.sum.abs()) + floor_dd,
                effort: ddo.terms,
                method: EvalMethod::Series,
            });
        }
        return Err(Error::NonConvergence { terms: ddo.terms as usize });
    }
    // double precision cannot meet the target either: report the native sum
    // with its honest rounding floor
    Ok(EvalResult {
        value: native.sum,
        abs_error_estimate: native.trunc_bound + floor,
        effort: native.terms,
        method: EvalMethod::Series,
    })
}

/// Wright function `W(lambda, mu; z) = sum_k z^k / (k! Gamma(lambda k + mu))`.
///
/// Terms whose Gamma argument sits at a nonpositive integer contribute zero
/// (reciprocal-Gamma convention). Raises [`Error::NonConvergence`] when the
/// cancellation guard trips; use the quadrature representations then.
pub fn wright<R: Real>(params: &WrightParams<R>, z: R) -> Result<EvalResult<R>> {
    wright_tol(params, z, cst(1e-14), cst(1e-300))
}

/// M-Wright (Mainardi) function `M_nu(z) = W(-nu, 1-nu; -z)`.
///
/// `nu = 0` is accepted as the `nu -> 0+` limit `e^{-z}`; `nu = 1/2` takes the
/// Gaussian closed form. Both go through the same dispatch as `wright`, so the
/// consistency `m_wright(nu, z) == wright(-nu, 1-nu, -z)` is exact.
pub fn m_wright<R: Real>(nu: R, z: R) -> Result<EvalResult<R>> {
    let params = m_wright_params(nu)?;
    wright(&params, -z)
}

pub(crate) fn m_wright_params<R: Real>(nu: R) -> Result<WrightParams<R>> {
    if !(nu >= R::zero() && nu < R::one()) {
        return Err(Error::InvalidParameter { what: "nu must lie in [0, 1)" });
    }
    WrightParams::new(-nu, R::one() - nu)
}

/// `d^order/dz^order W(lambda, mu; z) = W(lambda, order*lambda + mu; z)`.
pub fn wright_derivative<R: Real>(params: &WrightParams<R>, z: R, order: u32) -> Result<EvalResult<R>> {
    if order == 0 {
        return Err(Error::InvalidParameter { what: "derivative order must be >= 1" });
    }
    let shifted = WrightParams::new(params.lambda, params.mu + cst::<R>(order as f64) * params.lambda)?;
    wright(&shifted, z)
}

/// Antiderivative `W(lambda, mu - lambda; z)`, normalized so that its value at
/// `z = 0` is the series value `1/Gamma(mu - lambda)` (integration constant
/// fixed there) and `d/dz` of the result is `W(lambda, mu; z)`.
pub fn wright_antiderivative<R: Real>(params: &WrightParams<R>, z: R) -> Result<EvalResult<R>> {
    let shifted = WrightParams::new(params.lambda, params.mu - params.lambda)?;
    wright(&shifted, z)
}

/// Absolute discrepancy `|W(1, nu+1; -z^2/4) - (z/2)^{-nu} J_nu(z)|`.
///
/// For `nu = 1/2` the Bessel side is the elementary `sqrt(2/(pi z)) sin z`
/// (an independent oracle); other `nu` use the Bessel power series directly.
pub fn bessel_j_relation_check<R: Real>(nu: R, z: R) -> Result<R> {
    if !(z > R::zero()) {
        return Err(Error::InvalidParameter { what: "bessel check requires z > 0" });
    }
    let params = WrightParams::new(R::one(), nu + R::one())?;
    let w = wright(&params, -z * z * cst(0.25))?;
    let j_scaled = if (nu - cst(0.5)).abs() < cst(1e-14) {
        // (z/2)^{-1/2} * sqrt(2/(pi z)) * sin z = 2 sin z / (z sqrt(pi))
        let sqrt_pi: R = cst(1.7724538509055159);
        cst::<R>(2.0) * z.sin() / (z * sqrt_pi)
    } else {
        // sum_m (-1)^m (z^2/4)^m / (m! Gamma(m + nu + 1))
        let q = z * z * cst(0.25);
        let mut term = R::one();
        let mut sum = R::zero();
        let mut m = 0usize;
        loop {
            let contrib = term * rgamma(cst::<R>(m as f64) + nu + R::one());
            sum += contrib;
            if contrib.abs() < sum.abs() * R::epsilon() && m > 4 {
                break;
            }
            term = -term * q / cst(m as f64 + 1.0);
            m += 1;
            if m > 500 {
                break;
            }
        }
        sum
    };
    Ok((w.value - j_scaled).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p64(lambda: f64, mu: f64) -> WrightParams<f64> {
        WrightParams::new(lambda, mu).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(WrightParams::new(-1.0, 1.0).is_err());
        assert!(WrightParams::new(-1.5, 1.0).is_err());
        assert!(WrightParams::new(f64::NAN, 1.0).is_err());
        assert!(WrightParams::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn value_at_zero_is_reciprocal_gamma() {
        // (lambda=-0.25, mu=1, z=0) -> 1
        let r = wright(&p64(-0.25, 1.0), 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        // mu at a pole -> exactly 0
        let r = wright(&p64(0.5, -3.0), 0.0).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn lambda_zero_is_exponential() {
        let r = wright(&p64(0.0, 1.0), -1.0).unwrap();
        assert_relative_eq!(r.value, (-1.0f64).exp(), max_relative = 1e-14);
        assert_eq!(r.method, EvalMethod::ClosedForm);
        for &z in &[-20.0, -3.2, 0.7, 12.0, 20.0] {
            let r = wright(&p64(0.0, 1.0), z).unwrap();
            assert_relative_eq!(r.value, z.exp(), max_relative = 1e-13);
            assert!(r.abs_error_estimate >= 0.0 && r.abs_error_estimate.is_finite());
        }
    }

    #[test]
    fn series_oracle_value() {
        // frozen 200-term arbitrary-precision oracle: W(-0.25, 1, -1)
        let r = wright(&p64(-0.25, 1.0), -1.0).unwrap();
        assert_relative_eq!(r.value, 0.4214253280337983843311946, max_relative = 1e-13);
        assert_eq!(r.method, EvalMethod::Series);
        assert!(r.abs_error_estimate < 1e-12);
        let r = wright(&p64(-0.25, 1.0), -1.5).unwrap();
        assert_relative_eq!(r.value, 0.2646210973263092093089445, max_relative = 1e-13);
        // z < 0 branch-side spot value used by the Theorem-2 checks
        let r = wright(&p64(-0.25, 1.0), 1.0).unwrap();
        assert_relative_eq!(r.value, 2.141980892059161, max_relative = 1e-12);
    }

    #[test]
    fn m_wright_closed_forms() {
        // nu = 1/2, z = 1 -> e^{-1/4}/sqrt(pi)
        let r = m_wright(0.5, 1.0).unwrap();
        assert_relative_eq!(r.value, 0.439391289467722397046862, max_relative = 1e-14);
        assert_eq!(r.method, EvalMethod::ClosedForm);
        // nu -> 0 limit, z = 2 -> e^{-2}
        let r = m_wright(0.0, 2.0).unwrap();
        assert_relative_eq!(r.value, (-2.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn m_wright_airy_case_by_series() {
        // frozen: M_{1/3}(1) = 3^{2/3} Ai(3^{-1/3})
        let r = m_wright(1.0 / 3.0, 1.0).unwrap();
        assert_relative_eq!(r.value, 0.3962394797065025905655879, max_relative = 1e-12);
        // deep cancellation regime needs the double-word path
        let r = m_wright(1.0 / 3.0, 10.0).unwrap();
        assert_relative_eq!(r.value, 1.861179368829085232779272e-6, max_relative = 1e-10);
        assert!(r.abs_error_estimate < 1e-15);
    }

    #[test]
    fn m_wright_matches_raw_wright_exactly() {
        for &(nu, z) in &[(0.25, 1.3), (0.5, 2.0), (0.75, 1.1), (1.0 / 3.0, 4.0)] {
            let a = m_wright(nu, z).unwrap();
            let b = wright(&p64(-nu, 1.0 - nu), -z).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.method, b.method);
        }
    }

    #[test]
    fn derivative_identity_examples() {
        // (lambda=0, mu=1, z=-1, order=1) -> e^{-1}
        let r = wright_derivative(&p64(0.0, 1.0), -1.0, 1).unwrap();
        assert_relative_eq!(r.value, (-1.0f64).exp(), max_relative = 1e-14);
        // (lambda=-0.25, mu=1, z=0, order=2) -> 1/Gamma(0.5) = 1/sqrt(pi)
        let r = wright_derivative(&p64(-0.25, 1.0), 0.0, 2).unwrap();
        assert_relative_eq!(r.value, 0.5641895835477562869480795, max_relative = 1e-14);
        // finite-difference cross-check at (lambda=-0.25, mu=1, z=-0.5)
        let h = 1e-5;
        let fd = (wright(&p64(-0.25, 1.0), -0.5 + h).unwrap().value
            - wright(&p64(-0.25, 1.0), -0.5 - h).unwrap().value)
            / (2.0 * h);
        let an = wright_derivative(&p64(-0.25, 1.0), -0.5, 1).unwrap().value;
        assert!((fd - an).abs() <= 1e-6, "fd={fd} an={an}");
        assert!(wright_derivative(&p64(0.0, 1.0), 0.0, 0).is_err());
    }

    #[test]
    fn antiderivative_examples() {
        // (lambda=-0.25, mu=0.75, z=0) -> 1/Gamma(1) = 1
        let r = wright_antiderivative(&p64(-0.25, 0.75), 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        // lambda = 0 fixed point
        let r = wright_antiderivative(&p64(0.0, 1.0), -1.0).unwrap();
        assert_relative_eq!(r.value, (-1.0f64).exp(), max_relative = 1e-14);
        // fundamental-theorem closure at (lambda=-0.25, mu=0.875, z=-0.7)
        let h = 1e-5;
        let fd = (wright_antiderivative(&p64(-0.25, 0.875), -0.7 + h).unwrap().value
            - wright_antiderivative(&p64(-0.25, 0.875), -0.7 - h).unwrap().value)
            / (2.0 * h);
        let direct = wright(&p64(-0.25, 0.875), -0.7).unwrap().value;
        assert!((fd - direct).abs() <= 1e-6);
    }

    #[test]
    fn cancellation_guard_raises_nonconvergence() {
        // z_switch(-0.5) = 15
        let err = wright(&p64(-0.5, 0.75), -16.0).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn bessel_relation_half_order() {
        // nu=1/2, z=pi: both sides ~ 0
        assert!(bessel_j_relation_check(0.5, std::f64::consts::PI).unwrap() <= 1e-10);
        assert!(bessel_j_relation_check(0.5, 1.0).unwrap() <= 1e-10);
        assert!(bessel_j_relation_check(0.5, 0.01).unwrap() <= 1e-9);
        assert!(bessel_j_relation_check(0.5, -1.0).is_err());
    }

    #[test]
    fn error_estimate_is_finite_nonnegative() {
        for &z in &[-5.0, -1.0, -0.1, 0.0, 0.4, 3.0] {
            let r = wright(&p64(-0.3, 0.8), z).unwrap();
            assert!(r.abs_error_estimate.is_finite());
            assert!(r.abs_error_estimate >= 0.0);
        }
    }

    #[test]
    fn f32_instantiation_smoke() {
        let p = WrightParams::<f32>::new(-0.25, 1.0).unwrap();
        let r = wright(&p, -1.0f32).unwrap();
        assert!((r.value - 0.42142534).abs() < 1e-4);
    }
}
