//! Fundamental solutions of the time-fractional diffusion equation
//! `d_t^beta c = D laplacian(c)`, `0 < beta <= 1`: the 1D Green's function and
//! the k-dimensional anisotropic hyperplanar Green's function, in explicit
//! Wright form, directional-derivative form, and Laplace-domain form.
//!
//! The hyperplanar solution depends on position only through `u = n . r` for a
//! constant unit direction `n`, and is continued to all directions by
//! reflection across the source hyperplane.

use num_complex::Complex;

use crate::cst;
use crate::error::{Error, Result};
use crate::quad::{adaptive_finite, QuadratureConfig, QuadResult};
use crate::scalar::Real;
use crate::wright_quad::eval_m_family_robust;
use crate::wright::{wright_derivative, EvalResult, WrightParams};

/// Direction `n` with unit Euclidean norm (within 1e-12, or a few ulps for
/// narrower scalar types).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector<R> {
    components: Vec<R>,
}

impl<R: Real> UnitVector<R> {
    pub fn new(components: Vec<R>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter { what: "direction needs k >= 1 components" });
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter { what: "direction components must be finite" });
        }
        let norm2 = components.iter().fold(R::zero(), |acc, &c| acc + c * c);
        let tol = cst::<R>(1e-12).max(R::epsilon() * cst(8.0));
        if (norm2.sqrt() - R::one()).abs() > tol {
            return Err(Error::InvalidParameter { what: "direction must have unit norm (within 1e-12)" });
        }
        Ok(UnitVector { components })
    }

    /// Normalize an arbitrary nonzero vector into a unit direction.
    pub fn normalized(mut components: Vec<R>) -> Result<Self> {
        let norm2 = components.iter().fold(R::zero(), |acc, &c| acc + c * c);
        if !(norm2 > R::zero()) || !norm2.is_finite() {
            return Err(Error::InvalidParameter { what: "cannot normalize a zero or non-finite vector" });
        }
        let inv = norm2.sqrt().recip();
        for c in &mut components {
            *c = *c * inv;
        }
        UnitVector::new(components)
    }

    /// Coordinate axis `e_index` in `dim` dimensions.
    pub fn axis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter { what: "axis index out of range" });
        }
        let mut c = vec![R::zero(); dim];
        c[index] = R::one();
        UnitVector::new(c)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[R] {
        &self.components
    }

    pub fn dot(&self, r: &[R]) -> Result<R> {
        if r.len() != self.components.len() {
            return Err(Error::DimensionMismatch { expected: self.components.len(), got: r.len() });
        }
        Ok(self
            .components
            .iter()
            .zip(r)
            .fold(R::zero(), |acc, (&n, &x)| acc + n * x))
    }
}

/// Parameters of a fractional-diffusion Green's function: order `beta` in
/// (0, 1], diffusivity `D > 0` (length^2 / time^beta), dimension `k`, and the
/// unit direction `n`.
#[derive(Clone, Debug)]
pub struct GreenSpec<R> {
    beta: R,
    diffusivity: R,
    dim: usize,
    direction: UnitVector<R>,
}

impl<R: Real> GreenSpec<R> {
    pub fn new(beta: R, diffusivity: R, dim: usize, direction: UnitVector<R>) -> Result<Self> {
        if !(beta > R::zero() && beta <= R::one()) {
            return Err(Error::InvalidParameter { what: "beta must lie in (0, 1]" });
        }
        if !(diffusivity > R::zero()) || !diffusivity.is_finite() {
            return Err(Error::InvalidParameter { what: "diffusivity must be positive and finite" });
        }
        if dim == 0 {
            return Err(Error::InvalidParameter { what: "dimension must be >= 1" });
        }
        if direction.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: direction.dim() });
        }
        Ok(GreenSpec { beta, diffusivity, dim, direction })
    }

    pub fn beta(&self) -> R {
        self.beta
    }

    pub fn diffusivity(&self) -> R {
        self.diffusivity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn direction(&self) -> &UnitVector<R> {
        &self.direction
    }
}

fn check_time<R: Real>(t: R) -> Result<()> {
    if !(t > R::zero()) || !t.is_finite() {
        return Err(Error::InvalidTime { t: t.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

/// Similarity scale `c = sqrt(D) t^{beta/2}`.
fn scale<R: Real>(beta: R, diffusivity: R, t: R) -> R {
    diffusivity.sqrt() * t.powf(beta * cst(0.5))
}

pub(crate) fn green_1d_with<R: Real>(x: R, t: R, beta: R, diffusivity: R, rel_tol: R, abs_tol: R) -> Result<R> {
    check_time(t)?;
    if !(beta > R::zero() && beta <= R::one()) {
        return Err(Error::InvalidParameter { what: "beta must lie in (0, 1]" });
    }
    if !(diffusivity > R::zero()) {
        return Err(Error::InvalidParameter { what: "diffusivity must be positive" });
    }
    let c = scale(beta, diffusivity, t);
    let w = x.abs() / c;
    let m = eval_m_family_robust(beta * cst(0.5), 0, w, rel_tol, abs_tol)?;
    Ok(m.value / (cst::<R>(2.0) * c))
}

/// 1D Green's function
/// `G(x, t) = M_{beta/2}(|x| / (sqrt(D) t^{beta/2})) / (2 sqrt(D) t^{beta/2})`,
/// even in `x` and nonnegative. Requires `t > 0`.
pub fn green_1d<R: Real>(x: R, t: R, beta: R, diffusivity: R) -> Result<R> {
    green_1d_with(x, t, beta, diffusivity, cst(1e-11), cst(3e-14))
}

/// k-dimensional hyperplanar Green's function in explicit Wright form:
/// `G = W(-beta/2, 1 - k beta/2; -|n.r| / (sqrt(D) t^{beta/2})) / (2 sqrt(D) t^{beta/2})^k`.
/// Depends on `r` only through `u = n.r`; invariant under `u -> -u`.
pub fn green_kd<R: Real>(r: &[R], t: R, spec: &GreenSpec<R>) -> Result<R> {
    check_time(t)?;
    let u = spec.direction.dot(r)?;
    green_kd_at_projection(u, t, spec)
}

/// Same as [`green_kd`] but taking the projection `u = n.r` directly.
pub fn green_kd_at_projection<R: Real>(u: R, t: R, spec: &GreenSpec<R>) -> Result<R> {
    check_time(t)?;
    let c = scale(spec.beta, spec.diffusivity, t);
    let w = u.abs() / c;
    let nu = spec.beta * cst(0.5);
    let m = eval_m_family_robust(nu, spec.dim as u32 - 1, w, cst(1e-11), cst(3e-14))?;
    let denom = (cst::<R>(2.0) * c).powi(spec.dim as i32);
    Ok(m.value / denom)
}

/// Evaluation side for the one-sided directional-derivative form.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BranchSide {
    Left,
    Right,
}

/// Theorem-1 form: `(-1/2)^k (n.grad)^k W(-beta/2, 1; -|n.r|/(sqrt(D) t^{beta/2}))`,
/// evaluated analytically by applying the derivative identity
/// `d/dz W(lambda, mu; z) = W(lambda, lambda + mu; z)` k times together with
/// the chain rule for the directional derivative. The reflected (right-branch)
/// rule is used at and across `n.r = 0`, where both one-sided values agree;
/// the result equals [`green_kd`] everywhere.
pub fn green_kd_derivative_form<R: Real>(r: &[R], t: R, spec: &GreenSpec<R>) -> Result<R> {
    check_time(t)?;
    let u = spec.direction.dot(r)?;
    derivative_form_impl(u, t, spec, R::one())
}

/// One-sided variant of [`green_kd_derivative_form`]: applies the chain rule
/// with `d|u|/du := +1` (right) or `-1` (left). Errors with
/// [`Error::KinkPoint`] at `n.r = 0`, where `|.|` is not differentiable and a
/// one-sided reading was explicitly requested. For odd `k` the left branch is
/// the sign-flipped analytic continuation.
pub fn green_kd_derivative_form_sided<R: Real>(
    r: &[R],
    t: R,
    spec: &GreenSpec<R>,
    side: BranchSide,
) -> Result<R> {
    check_time(t)?;
    let u = spec.direction.dot(r)?;
    if u == R::zero() {
        return Err(Error::KinkPoint);
    }
    let sigma = match side {
        BranchSide::Right => R::one(),
        BranchSide::Left => -R::one(),
    };
    derivative_form_impl(u, t, spec, sigma)
}

fn derivative_form_impl<R: Real>(u: R, t: R, spec: &GreenSpec<R>, sigma: R) -> Result<R> {
    let k = spec.dim as u32;
    let c = scale(spec.beta, spec.diffusivity, t);
    let w = u.abs() / c;
    let lambda = -spec.beta * cst::<R>(0.5);
    let base = WrightParams::new(lambda, R::one())?;
    // (n.grad)^k W(lambda, 1; -|u|/c) = (-sigma/c)^k W(lambda, 1 + k lambda; -|u|/c)
    let dk: EvalResult<R> = match wright_derivative(&base, -w, k) {
        Ok(v) if v.abs_error_estimate <= cst::<R>(1e-10) * v.value.abs().max(cst(1e-4)) => v,
        Ok(_) | Err(Error::NonConvergence { .. }) => {
            // same shifted parameters through the kernel-integral route
            eval_m_family_robust(spec.beta * cst(0.5), k - 1, w, cst(1e-11), cst(3e-14))?
        }
        Err(e) => return Err(e),
    };
    let factor = (sigma / (cst::<R>(2.0) * c)).powi(k as i32);
    Ok(factor * dk.value)
}

/// Laplace-domain hyperplanar solution
/// `G_hat(s) = s^{k beta/2 - 1} e^{-u s^{beta/2} / sqrt(D)} / (2 sqrt(D))^k`
/// for `s > 0` and `u = n.r >= 0`.
pub fn green_hat_kd<R: Real>(s: R, u: R, spec: &GreenSpec<R>) -> Result<R> {
    if !(s > R::zero()) || !s.is_finite() {
        return Err(Error::InvalidLaplaceVariable { s: s.to_f64().unwrap_or(f64::NAN) });
    }
    if !(u >= R::zero()) {
        return Err(Error::InvalidParameter { what: "green_hat requires u = n.r >= 0" });
    }
    let sqrt_d = spec.diffusivity.sqrt();
    let half_beta = spec.beta * cst::<R>(0.5);
    let k: R = cst(spec.dim as f64);
    let pre = s.powf(k * half_beta - R::one()) / (cst::<R>(2.0) * sqrt_d).powi(spec.dim as i32);
    Ok(pre * (-u * s.powf(half_beta) / sqrt_d).exp())
}

/// Complex-argument continuation of [`green_hat_kd`] (principal branch
/// powers), used by the Talbot-inversion cross-checks. Not part of the real-s
/// evaluation API.
pub fn green_hat_kd_complex<R: Real>(s: Complex<R>, u: R, spec: &GreenSpec<R>) -> Result<Complex<R>> {
    if s.norm_sqr() == R::zero() {
        return Err(Error::InvalidLaplaceVariable { s: 0.0 });
    }
    if !(u >= R::zero()) {
        return Err(Error::InvalidParameter { what: "green_hat requires u = n.r >= 0" });
    }
    let sqrt_d = spec.diffusivity.sqrt();
    let half_beta = spec.beta * cst::<R>(0.5);
    let k: R = cst(spec.dim as f64);
    let pre = s.powf(k * half_beta - R::one()) / Complex::new((cst::<R>(2.0) * sqrt_d).powi(spec.dim as i32), R::zero());
    let arg = s.powf(half_beta) * Complex::new(-u / sqrt_d, R::zero());
    Ok(pre * arg.exp())
}

/// Mass of the 1D Green's function: numerically integrates `green_1d` over the
/// real line (target 1 for every admissible `beta`, `D`, `t`).
pub fn normalization_1d<R: Real>(
    beta: R,
    diffusivity: R,
    t: R,
    config: &QuadratureConfig<R>,
) -> Result<QuadResult<R>> {
    check_time(t)?;
    if !(beta > R::zero() && beta <= R::one()) {
        return Err(Error::InvalidParameter { what: "beta must lie in (0, 1]" });
    }
    let nu = beta * cst::<R>(0.5);
    let c = scale(beta, diffusivity, t);
    // similarity radius from the decay bound exp(-b w^{1/(1-nu)})
    let b = (R::one() - nu) * nu.powf(nu / (R::one() - nu));
    let l_target = (cst::<R>(10.0) / config.abs_tol()).ln() + cst(5.0);
    let w_max = (l_target / b).powf(R::one() - nu) + R::one();
    let x_max = w_max * c;
    let integrand = |x: R| {
        green_1d_with(x, t, beta, diffusivity, cst(1e-9), cst(1e-14)).unwrap_or(R::nan())
    };
    let seeds: Vec<R> = (1..8).map(|i| x_max * cst(i as f64 / 8.0)).collect();
    let (v, e, nodes) = adaptive_finite(
        &integrand,
        R::zero(),
        x_max,
        config.abs_tol() * cst(0.25),
        config.rel_tol() * cst(0.5),
        config.max_nodes(),
        &seeds,
    )?;
    let tail = config.abs_tol() * cst(0.05);
    let value = cst::<R>(2.0) * v;
    let err = cst::<R>(2.0) * e + tail;
    let target = config.abs_tol().max(config.rel_tol() * value.abs());
    if err > target {
        return Err(Error::ToleranceNotMet {
            value: value.to_f64().unwrap_or(f64::NAN),
            abs_error_estimate: err.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(QuadResult { value, abs_error_estimate: err, nodes_used: nodes, truncated_tail_bound: tail })
}

/// Positive-orthant integral of the separable Laplace-domain solution:
/// the absorbed-constant convention gives `1/(2^k s)`; the raw separable
/// integral carries the direction factor `prod n_i`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct OrthantIntegral<R> {
    /// `1/(2^k s)` under the paper-style absorbed-constant convention.
    pub conventional: R,
    /// Raw value `1/(2^k s prod n_i)` of the separable integral.
    pub raw: R,
    /// The direction factor `prod n_i`.
    pub direction_factor: R,
}

pub fn orthant_integral_hat<R: Real>(spec: &GreenSpec<R>, s: R) -> Result<OrthantIntegral<R>> {
    if !(s > R::zero()) || !s.is_finite() {
        return Err(Error::InvalidLaplaceVariable { s: s.to_f64().unwrap_or(f64::NAN) });
    }
    let mut factor = R::one();
    for (i, &n) in spec.direction.components().iter().enumerate() {
        if !(n > R::zero()) {
            return Err(Error::InvalidDirection { index: i });
        }
        factor = factor * n;
    }
    let conventional = ((cst::<R>(2.0)).powi(spec.dim as i32) * s).recip();
    Ok(OrthantIntegral { conventional, raw: conventional / factor, direction_factor: factor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(beta: f64, d: f64, n: Vec<f64>) -> GreenSpec<f64> {
        let dim = n.len();
        GreenSpec::new(beta, d, dim, UnitVector::new(n).unwrap()).unwrap()
    }

    #[test]
    fn unit_vector_invariants() {
        assert!(UnitVector::new(vec![1.0f64]).is_ok());
        assert!(UnitVector::new(vec![0.6f64, 0.8]).is_ok());
        assert!(UnitVector::new(vec![0.6f64, 0.81]).is_err());
        assert!(UnitVector::new(Vec::<f64>::new()).is_err());
        let n = UnitVector::normalized(vec![1.0f64, 1.0, 1.0]).unwrap();
        assert_relative_eq!(n.components()[0], 1.0 / 3.0f64.sqrt(), max_relative = 1e-15);
        assert!(n.dot(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn heat_kernel_values() {
        // beta = 1: classical heat kernel
        assert_relative_eq!(green_1d(0.0, 1.0, 1.0, 1.0).unwrap(), 0.2820947917738781434740397, max_relative = 1e-12);
        assert_relative_eq!(green_1d(2.0, 1.0, 1.0, 1.0).unwrap(), 0.1037768743551486758350671, max_relative = 1e-12);
        // sub-diffusive: frozen (1/2) M_{1/4}(1)
        assert_relative_eq!(green_1d(1.0, 1.0, 0.5, 1.0).unwrap(), 0.1916677082853417678876167, max_relative = 1e-11);
        assert!(green_1d(1.0, 0.0, 0.5, 1.0).is_err());
        assert!(green_1d(1.0, -1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn kd_reduces_to_1d() {
        let sp = spec(1.0, 1.0, vec![1.0]);
        assert_relative_eq!(green_kd(&[0.0], 1.0, &sp).unwrap(), 0.2820947917738781434740397, max_relative = 1e-12);
        for &x in &[0.0, 0.5, 1.5, 3.0] {
            let sp = spec(0.7, 2.0, vec![1.0]);
            assert_relative_eq!(
                green_kd(&[x], 0.8, &sp).unwrap(),
                green_1d(x, 0.8, 0.7, 2.0).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn kd_perpendicular_position_frozen_value() {
        // k=3, n = e_x, r = (0,0,5): n.r = 0 -> 1/(8 Gamma(1/4))
        let sp = spec(0.5, 1.0, vec![1.0, 0.0, 0.0]);
        assert_relative_eq!(
            green_kd(&[0.0, 0.0, 5.0], 1.0, &sp).unwrap(),
            0.03447695785377616429499319,
            max_relative = 1e-12
        );
        assert!(green_kd(&[0.0, 0.0], 1.0, &sp).is_err());
    }

    #[test]
    fn kd_decays_at_extreme_projection() {
        // |n.r|/c = 50 -> 0 within 1e-12
        let sp = spec(0.5, 1.0, vec![0.6, 0.8]);
        let u = 50.0;
        let v = green_kd_at_projection(u, 1.0, &sp).unwrap();
        assert!(v.abs() < 1e-12, "v = {v:e}");
    }

    #[test]
    fn derivative_form_equals_explicit() {
        // k=1 heat kernel cross-check
        let sp = spec(1.0, 1.0, vec![1.0]);
        assert_relative_eq!(
            green_kd_derivative_form(&[1.0], 1.0, &sp).unwrap(),
            0.219695644733861198523431,
            max_relative = 1e-10
        );
        // k=2
        let sp = spec(0.5, 1.0, vec![1.0, 0.0]);
        let a = green_kd_derivative_form(&[1.0, 3.0], 1.0, &sp).unwrap();
        let b = green_kd(&[1.0, 3.0], 1.0, &sp).unwrap();
        assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
        // k=3
        let sp = spec(2.0 / 3.0, 2.0, vec![0.0, 0.0, 1.0]);
        let a = green_kd_derivative_form(&[1.0, 1.0, 2.0], 0.5, &sp).unwrap();
        let b = green_kd(&[1.0, 1.0, 2.0], 0.5, &sp).unwrap();
        assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
    }

    #[test]
    fn sided_branch_semantics() {
        let sp = spec(0.5, 1.0, vec![1.0, 0.0, 0.0]);
        // kink point
        assert!(matches!(
            green_kd_derivative_form_sided(&[0.0, 1.0, 0.0], 1.0, &sp, BranchSide::Right),
            Err(Error::KinkPoint)
        ));
        // right side matches explicit, left side flips sign for odd k
        let g: f64 = green_kd(&[0.5, 0.0, 0.0], 1.0, &sp).unwrap();
        let r = green_kd_derivative_form_sided(&[0.5, 0.0, 0.0], 1.0, &sp, BranchSide::Right).unwrap();
        let l = green_kd_derivative_form_sided(&[0.5, 0.0, 0.0], 1.0, &sp, BranchSide::Left).unwrap();
        assert_relative_eq!(r, g, max_relative = 1e-10);
        assert_relative_eq!(l, -g, max_relative = 1e-10);
        // symmetric form has no kink error
        assert!(green_kd_derivative_form(&[0.0, 1.0, 0.0], 1.0, &sp).is_ok());
    }

    #[test]
    fn hat_values() {
        let sp1 = spec(1.0, 1.0, vec![1.0]);
        assert_relative_eq!(green_hat_kd(1.0, 0.0, &sp1).unwrap(), 0.5, max_relative = 1e-14);
        let sp3 = spec(0.5, 1.0, vec![1.0, 0.0, 0.0]);
        assert_relative_eq!(green_hat_kd(1.0, 0.0, &sp3).unwrap(), 0.125, max_relative = 1e-14);
        // frozen: k=1, beta=0.5, D=1, s=2, u=1
        let sp = spec(0.5, 1.0, vec![1.0]);
        assert_relative_eq!(green_hat_kd(2.0, 1.0, &sp).unwrap(), 0.09051726427657829956428499, max_relative = 1e-13);
        assert!(green_hat_kd(0.0, 0.0, &sp).is_err());
        assert!(green_hat_kd(-1.0, 0.0, &sp).is_err());
    }

    #[test]
    fn normalization_examples() {
        let cfg = QuadratureConfig::<f64>::with_tolerance(1e-8, 1e-8).unwrap();
        let m = normalization_1d(1.0, 1.0, 1.0, &cfg).unwrap();
        assert!((m.value - 1.0).abs() < 1e-8, "mass = {}", m.value);
        let cfg = QuadratureConfig::<f64>::with_tolerance(1e-7, 1e-7).unwrap();
        let m = normalization_1d(0.5, 1.0, 1.0, &cfg).unwrap();
        assert!((m.value - 1.0).abs() < 1e-6);
        let m = normalization_1d(0.75, 3.0, 2.0, &cfg).unwrap();
        assert!((m.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn orthant_values() {
        // zero component rejected
        let sp = spec(0.5, 1.0, vec![1.0, 0.0, 0.0]);
        assert!(matches!(orthant_integral_hat(&sp, 1.0), Err(Error::InvalidDirection { index: 1 })));
        // symmetric diagonal direction
        let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
        let sp = spec(0.5, 1.0, vec![inv_sqrt3; 3]);
        let o = orthant_integral_hat(&sp, 1.0).unwrap();
        assert_relative_eq!(o.conventional, 0.125, max_relative = 1e-14);
        assert_relative_eq!(o.direction_factor, 3.0f64.powf(-1.5), max_relative = 1e-13);
        // k=2 example at s=2
        let sp = spec(0.5, 1.0, vec![0.6, 0.8]);
        let o = orthant_integral_hat(&sp, 2.0).unwrap();
        assert_relative_eq!(o.conventional, 0.125, max_relative = 1e-14);
        assert_relative_eq!(o.raw, 0.125 / 0.48, max_relative = 1e-13);
    }

    #[test]
    fn k3_green_is_negative_near_hyperplane() {
        // the hyperplanar solution is not pointwise nonnegative for k = 3:
        // at u = 0, beta = 1 the value is 1/Gamma(-1/2)/(8 t^{3/2}) < 0
        let sp = spec(1.0, 1.0, vec![1.0, 0.0, 0.0]);
        let v = green_kd(&[0.0, 1.0, 1.0], 1.0, &sp).unwrap();
        let expect = 1.0 / (-2.0 * std::f64::consts::PI.sqrt()) / 8.0;
        assert_relative_eq!(v, expect, max_relative = 1e-11);
        assert!(v < 0.0);
    }
}
