//! Forward numerical Laplace transform and Talbot-contour inversion, used to
//! verify the Laplace-domain formulas and transform pairs independently of the
//! series path.

use num_complex::Complex;

use crate::cst;
use crate::error::{Error, Result};
use crate::fractional::{caputo_derivative, TimeGrid};
use crate::quad::{integrate_semi_infinite, QuadratureConfig};
use crate::scalar::Real;
use crate::wright::{wright_tol, WrightParams};
use crate::wright_quad::m_wright_robust;

/// Forward transform `int_0^inf e^{-st} f(t) dt` for real `s > 0`.
///
/// Evaluated in the scaled variable `tau = s t` (so the config's truncation
/// radius applies to `e^{-tau}`), with a square-root-substituted panel near
/// `t = 0` that keeps power-law integrands `~ t^{mu-1}`, `mu >= 1/2`, bounded.
pub fn laplace_forward<R: Real, F: Fn(R) -> R>(f: F, s: R, config: &QuadratureConfig<R>) -> Result<R> {
    if !(s > R::zero()) || !s.is_finite() {
        return Err(Error::InvalidLaplaceVariable { s: s.to_f64().unwrap_or(f64::NAN) });
    }
    let g = move |tau: R| (-tau).exp() * f(tau / s) / s;
    Ok(integrate_semi_infinite(g, config)?.value)
}

/// Talbot contour parameters: node count (even, >= 16) and a scale multiplier
/// on the standard `mu = nodes / t` contour radius.
#[derive(Copy, Clone, Debug)]
pub struct TalbotConfig<R> {
    nodes: u32,
    scale: R,
}

impl<R: Real> TalbotConfig<R> {
    pub fn new(nodes: u32, scale: R) -> Result<Self> {
        if nodes < 16 || nodes % 2 != 0 {
            return Err(Error::InvalidParameter { what: "talbot nodes must be even and >= 16" });
        }
        if !(scale > R::zero()) || !scale.is_finite() {
            return Err(Error::InvalidParameter { what: "talbot scale must be positive and finite" });
        }
        Ok(TalbotConfig { nodes, scale })
    }

    pub fn nodes(&self) -> u32 {
        self.nodes
    }

    pub fn scale(&self) -> R {
        self.scale
    }
}

impl<R: Real> Default for TalbotConfig<R> {
    fn default() -> Self {
        TalbotConfig { nodes: 48, scale: R::one() }
    }
}

/// Numerical inverse Laplace transform at `t > 0` on the fixed cot-shaped
/// Talbot contour `s = mu (-0.6122 + 0.5017 theta cot(0.6407 theta) + 0.2645 i theta)`,
/// midpoint rule, `mu = scale * nodes / t`. `F` must be analytic to the right
/// of a vertical line and real-symmetric (`F(conj s) = conj F(s)`).
pub fn talbot_inverse<R: Real, F: Fn(Complex<R>) -> Complex<R>>(
    f: F,
    t: R,
    config: &TalbotConfig<R>,
) -> Result<R> {
    if !(t > R::zero()) || !t.is_finite() {
        return Err(Error::InvalidTime { t: t.to_f64().unwrap_or(f64::NAN) });
    }
    let n = config.nodes;
    let mu = config.scale * cst::<R>(n as f64) / t;
    let pi: R = cst(std::f64::consts::PI);
    let (c0, c1, c2, c3): (R, R, R, R) = (cst(-0.6122), cst(0.5017), cst(0.6407), cst(0.2645));
    let mut acc = R::zero();
    for j in 0..n / 2 {
        let theta = cst::<R>(2.0 * j as f64 + 1.0) * pi / cst(n as f64);
        let w = c2 * theta;
        let cot = w.cos() / w.sin();
        let sigma = Complex::new(c0 + c1 * theta * cot, c3 * theta);
        // d/dtheta [c1 theta cot(c2 theta)] = c1 cot(c2 theta) - c1 c2 theta / sin^2(c2 theta)
        let dsigma = Complex::new(c1 * cot - c1 * c2 * theta / (w.sin() * w.sin()), c3);
        let s = sigma * Complex::new(mu, R::zero());
        let term = (s * Complex::new(t, R::zero())).exp() * f(s) * dsigma * Complex::new(mu, R::zero());
        if !term.re.is_finite() || !term.im.is_finite() {
            return Err(Error::NonFiniteResult);
        }
        acc += term.im;
    }
    Ok(cst::<R>(2.0) * acc / cst(n as f64))
}

/// Transform-pair rows checked by [`verify_pair`].
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum LaplacePair<R> {
    /// Row 1: `nu k t^{-nu-1} M_nu(k t^{-nu})  <->  exp(-k s^nu)`.
    MDensity,
    /// Row 2: `t^{-nu} M_nu(k t^{-nu})  <->  s^{nu-1} exp(-k s^nu)`.
    MScaled,
    /// Row 3 as printed: `t^{mu-1} W(-nu, mu; k t^{-nu})  <->  s^{-mu} exp(-k s^nu)`;
    /// the negative-argument variant `W(-nu, mu; -k t^{-nu})` is checked too.
    WrightPower { mu: R },
}

/// Outcome of a transform-pair verification over an s-grid.
#[derive(Clone, Debug)]
pub struct PairCheck<R> {
    /// Max over the grid of |forward(time side) - closed| / |closed| for the
    /// pair as printed (infinite when the printed form fails to evaluate).
    pub max_rel_discrepancy: R,
    /// Set when the printed time-domain side could not even be evaluated
    /// (diverging argument of the Wright series).
    pub printed_form_failed: bool,
    /// For row 3: same discrepancy for the negative-argument variant.
    pub variant_max_rel_discrepancy: Option<R>,
    /// Spot check of the closed s-side through `talbot_inverse` at t = 1
    /// against the time-domain side (rows 1 and 2).
    pub inverse_spot_rel: Option<R>,
}

fn m_nu_or_nan<R: Real>(nu: R, z: R) -> R {
    m_wright_robust(nu, z, cst(1e-8), cst(1e-11)).map(|r| r.value).unwrap_or(R::nan())
}

/// Checks one transform-pair row numerically: the time-domain side is forward
/// transformed at each `s` in the grid and compared with the closed
/// s-domain side. `0 < nu < 1`, `k_coeff > 0`.
pub fn verify_pair<R: Real>(
    pair: LaplacePair<R>,
    nu: R,
    k_coeff: R,
    s_grid: &[R],
    config: &QuadratureConfig<R>,
) -> Result<PairCheck<R>> {
    if !(nu > R::zero() && nu < R::one()) {
        return Err(Error::InvalidParameter { what: "pair check requires 0 < nu < 1" });
    }
    if !(k_coeff > R::zero()) {
        return Err(Error::InvalidParameter { what: "pair check requires k > 0" });
    }
    if s_grid.is_empty() {
        return Err(Error::InvalidParameter { what: "pair check needs a nonempty s grid" });
    }

    let time_side = |t: R| -> R {
        if t <= R::zero() {
            return R::zero();
        }
        let arg = k_coeff * t.powf(-nu);
        match pair {
            LaplacePair::MDensity => nu * k_coeff * t.powf(-nu - R::one()) * m_nu_or_nan(nu, arg),
            LaplacePair::MScaled => t.powf(-nu) * m_nu_or_nan(nu, arg),
            LaplacePair::WrightPower { mu } => {
                // printed form: positive series argument
                let w = WrightParams::new(-nu, mu)
                    .and_then(|p| wright_tol(&p, arg, cst(1e-10), cst(1e-13)))
                    .map(|r| r.value)
                    .unwrap_or(R::nan());
                t.powf(mu - R::one()) * w
            }
        }
    };
    let closed_side = |s: R| -> R {
        let e = (-k_coeff * s.powf(nu)).exp();
        match pair {
            LaplacePair::MDensity => e,
            LaplacePair::MScaled => s.powf(nu - R::one()) * e,
            LaplacePair::WrightPower { mu } => s.powf(-mu) * e,
        }
    };

    let mut max_rel = R::zero();
    let mut printed_failed = false;
    for &s in s_grid {
        let closed = closed_side(s);
        match laplace_forward(&time_side, s, config) {
            Ok(fwd) => {
                let rel = (fwd - closed).abs() / closed.abs().max(cst(1e-300));
                max_rel = max_rel.max(rel);
            }
            Err(_) => {
                printed_failed = true;
                max_rel = R::infinity();
            }
        }
    }

    let variant = if let LaplacePair::WrightPower { mu } = pair {
        let params = WrightParams::new(-nu, mu)?;
        let variant_side = move |t: R| -> R {
            if t <= R::zero() {
                return R::zero();
            }
            let arg = k_coeff * t.powf(-nu);
            // beyond the series' conditioning the value is superexponentially
            // small on the pair's scale; clamp to zero there
            let w = match wright_tol(&params, -arg, cst(1e-10), cst(1e-13)) {
                Ok(r) if r.abs_error_estimate <= cst(1e-8) => r.value,
                Ok(_) | Err(Error::NonConvergence { .. }) => R::zero(),
                Err(_) => R::nan(),
            };
            t.powf(mu - R::one()) * w
        };
        let mut vmax = R::zero();
        for &s in s_grid {
            let closed = closed_side(s);
            let fwd = laplace_forward(&variant_side, s, config)?;
            vmax = vmax.max((fwd - closed).abs() / closed.abs().max(cst(1e-300)));
        }
        Some(vmax)
    } else {
        None
    };

    let inverse_spot = match pair {
        LaplacePair::WrightPower { .. } => None,
        _ => {
            let tcfg = TalbotConfig::default();
            let inv = talbot_inverse(
                |s: Complex<R>| {
                    let e = (s.powf(nu) * Complex::new(-k_coeff, R::zero())).exp();
                    match pair {
                        LaplacePair::MDensity => e,
                        LaplacePair::MScaled => s.powf(nu - R::one()) * e,
                        LaplacePair::WrightPower { .. } => unreachable!(),
                    }
                },
                R::one(),
                &tcfg,
            )?;
            let td = time_side(R::one());
            Some((inv - td).abs() / td.abs().max(cst(1e-300)))
        }
    };

    Ok(PairCheck {
        max_rel_discrepancy: max_rel,
        printed_form_failed: printed_failed,
        variant_max_rel_discrepancy: variant,
        inverse_spot_rel: inverse_spot,
    })
}

/// Compares `laplace_forward(caputo_derivative(f))` against the transform rule
/// `s^beta f_hat(s) - s^{beta-1} f(0+)` for a polynomial `f` given by its
/// coefficients (ascending powers). Returns the relative discrepancy.
pub fn caputo_transform_check<R: Real>(coeffs: &[R], beta: R, s: R) -> Result<R> {
    if !(beta > R::zero() && beta < R::one()) {
        return Err(Error::OrderOutOfRange { what: "caputo transform check requires 0 < beta < 1" });
    }
    if !(s > R::zero()) {
        return Err(Error::InvalidLaplaceVariable { s: s.to_f64().unwrap_or(f64::NAN) });
    }
    if coeffs.is_empty() {
        return Err(Error::InvalidParameter { what: "polynomial needs at least one coefficient" });
    }
    let eval = |t: R| -> R {
        let mut acc = R::zero();
        for &c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    // L1 Caputo on [0, T], then the exact transform of its linear interpolant
    let t_end = cst::<R>(40.0) / s;
    let steps = 4000usize;
    let grid = TimeGrid::new(R::zero(), t_end, steps)?;
    let samples: Vec<R> = grid.nodes().iter().map(|&t| eval(t)).collect();
    let cap = caputo_derivative(&samples, beta, &grid)?;
    let h = grid.h();
    // node values of the derivative, prepending the t=0 limit (0 for
    // polynomials: d^beta t^m ~ t^{m-beta} -> 0, constants are annihilated)
    let mut left = R::zero();
    let mut val_left = R::zero();
    let mut acc = R::zero();
    for (i, &val_right) in cap.iter().enumerate() {
        let t_left = left;
        let slope = (val_right - val_left) / h;
        // int_{t_l}^{t_l + h} e^{-st}(a + slope (t - t_l)) dt
        let e_l = (-s * t_left).exp();
        let e_r = (-s * (t_left + h)).exp();
        let int_const = (e_l - e_r) / s;
        let int_lin = e_l * (R::one() - (R::one() + s * h) * (-s * h).exp()) / (s * s);
        acc += val_left * int_const + slope * int_lin;
        left = grid.node(i + 1);
        val_left = val_right;
    }
    // closed right side: s^beta f_hat - s^{beta-1} f(0+)
    let mut f_hat = R::zero();
    let mut factorial = R::one();
    for (j, &c) in coeffs.iter().enumerate() {
        if j > 0 {
            factorial = factorial * cst(j as f64);
        }
        f_hat += c * factorial / s.powi(j as i32 + 1);
    }
    let rhs = s.powf(beta) * f_hat - s.powf(beta - R::one()) * coeffs[0];
    Ok((acc - rhs).abs() / rhs.abs().max(cst(1e-6)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::with_tolerance(1e-10, 1e-10).unwrap()
    }

    #[test]
    fn forward_trivial_transforms() {
        assert_relative_eq!(laplace_forward(|_| 1.0, 2.0, &cfg()).unwrap(), 0.5, epsilon = 1e-9);
        assert_relative_eq!(laplace_forward(|t: f64| t, 1.0, &cfg()).unwrap(), 1.0, epsilon = 1e-9);
        assert!(laplace_forward(|_| 1.0, 0.0, &cfg()).is_err());
    }

    #[test]
    fn forward_m_wright_pair_row() {
        // f(t) = M_{1/2}(t)/t^{1/2} at s = 1 -> s^{-1/2} e^{-sqrt(s)} = e^{-1}
        let f = |t: f64| {
            if t <= 0.0 {
                0.0
            } else {
                t.powf(-0.5) * m_nu_or_nan(0.5, t.powf(-0.5))
            }
        };
        let v = laplace_forward(f, 1.0, &cfg()).unwrap();
        assert_relative_eq!(v, (-1.0f64).exp(), epsilon = 1e-7);
    }

    #[test]
    fn talbot_trivial_inverses() {
        let tc = TalbotConfig::default();
        assert_relative_eq!(talbot_inverse(|s| s.inv(), 3.0, &tc).unwrap(), 1.0, epsilon = 1e-8);
        assert_relative_eq!(talbot_inverse(|s| (s * s).inv(), 2.0, &tc).unwrap(), 2.0, epsilon = 1e-8);
        assert!(talbot_inverse(|s| s.inv(), 0.0, &tc).is_err());
        assert!(TalbotConfig::<f64>::new(15, 1.0).is_err());
        assert!(TalbotConfig::<f64>::new(18, 0.0).is_err());
    }

    #[test]
    fn talbot_exponentials_round_trip_targets() {
        let tc = TalbotConfig::default();
        for &t in &[0.1f64, 0.5, 1.0, 2.5, 5.0] {
            let inv = talbot_inverse(|s| (s + 1.0).inv(), t, &tc).unwrap();
            assert!((inv - (-t).exp()).abs() < 1e-5 * (1.0 + (-t).exp()));
            let inv2 = talbot_inverse(|s| ((s + 1.0) * (s + 1.0)).inv(), t, &tc).unwrap();
            assert!((inv2 - t * (-t).exp()).abs() < 1e-5);
        }
    }

    #[test]
    fn talbot_inverts_green_hat() {
        use crate::green::{green_1d, green_hat_kd_complex, GreenSpec, UnitVector};
        let sp = GreenSpec::new(0.5f64, 1.0, 1, UnitVector::new(vec![1.0]).unwrap()).unwrap();
        let tc = TalbotConfig::default();
        let inv = talbot_inverse(|s| green_hat_kd_complex(s, 1.0, &sp).unwrap(), 1.0, &tc).unwrap();
        let td = green_1d(1.0, 1.0, 0.5, 1.0).unwrap();
        assert!((inv - td).abs() <= 1e-6 * td.max(1.0), "inv {inv} td {td}");
    }

    #[test]
    fn pair_two_identity() {
        let chk = verify_pair(LaplacePair::MScaled, 0.5, 1.0, &[1.0], &cfg()).unwrap();
        assert!(chk.max_rel_discrepancy <= 1e-6, "rel {:e}", chk.max_rel_discrepancy);
        assert!(!chk.printed_form_failed);
        assert!(chk.inverse_spot_rel.unwrap() < 1e-5);
    }

    #[test]
    fn pair_one_identity() {
        let chk = verify_pair(LaplacePair::MDensity, 0.5, 1.0, &[4.0], &cfg()).unwrap();
        // both sides e^{-2} at s=4
        assert!(chk.max_rel_discrepancy <= 1e-6);
    }

    #[test]
    fn pair_three_even_case_passes_as_printed() {
        // nu = mu = 1/2: W(-1/2, 1/2; .) is even, the printed sign is immaterial
        let chk = verify_pair(LaplacePair::WrightPower { mu: 0.5 }, 0.5, 1.0, &[1.0], &cfg()).unwrap();
        assert!(chk.max_rel_discrepancy <= 1e-5, "rel {:e}", chk.max_rel_discrepancy);
        assert!(chk.variant_max_rel_discrepancy.unwrap() <= 1e-5);
    }

    #[test]
    fn pair_three_general_case_flags_printed_form() {
        // nu=0.3, mu=0.7: the printed positive-argument form diverges at small t,
        // the negative-argument variant matches the closed side.
        let chk = verify_pair(LaplacePair::WrightPower { mu: 0.7 }, 0.3, 1.0, &[1.0], &cfg()).unwrap();
        assert!(chk.printed_form_failed || chk.max_rel_discrepancy > 1e-2);
        assert!(chk.variant_max_rel_discrepancy.unwrap() <= 1e-5);
    }

    #[test]
    fn caputo_transform_examples() {
        // constants: both sides zero
        let d = caputo_transform_check(&[3.0], 0.5, 1.3).unwrap();
        assert!(d <= 1e-8, "{d:e}");
        // f(t) = t, beta = 0.5, s = 1: right side 1
        let d = caputo_transform_check(&[0.0, 1.0], 0.5, 1.0).unwrap();
        assert!(d <= 1e-3, "{d:e}");
        // f(t) = t^2, beta = 0.25, s = 2
        let d = caputo_transform_check(&[0.0, 0.0, 1.0], 0.25, 2.0).unwrap();
        assert!(d <= 5e-3, "{d:e}");
        assert!(caputo_transform_check(&[1.0], 1.0, 1.0).is_err());
    }
}
