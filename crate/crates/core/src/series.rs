//! The discrete series representation `π_ξ` of `SU(1,1)` on `A²_ξ`.
//!
//! At group level `π_ξ(x)` is composition with the Möbius map of `x^{-1}`
//! times the multiplier `(-conj(β) z + α)^{-(ξ+2)}`. At algebra level
//! `π_ξ(U)` is the first-order operator obtained by differentiating along
//! `exp(tU)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::operators::FirstOrderOp;
use crate::quadrature::{check_in_disc, principal_inv_pow};
use crate::su11::{GroupElement, LieElement};
use crate::weight::WeightParam;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Numerator of the Möbius argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Numerator {
    /// `conj(α) z - β`: the inverse Möbius map, consistent with the derived operators.
    #[default]
    Corrected,
    /// `α z - β`, kept for side-by-side comparison reports.
    Printed,
}

/// How the multiplier power is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchPolicy {
    /// Integer `ξ`: an integer power, valid on all of `SU(1,1)`.
    IntegerExact,
    /// Non-integer `ξ`: principal branch, only near the identity (`Re α > |β|`).
    Principal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepContext {
    pub xi: WeightParam,
    pub numerator: Numerator,
}

impl RepContext {
    pub fn new(xi: WeightParam) -> Self {
        Self {
            xi,
            numerator: Numerator::Corrected,
        }
    }

    pub fn with_numerator(self, numerator: Numerator) -> Self {
        Self { numerator, ..self }
    }

    pub fn branch(&self) -> BranchPolicy {
        if self.xi.is_integer() {
            BranchPolicy::IntegerExact
        } else {
            BranchPolicy::Principal
        }
    }

    /// `Re α > |β|` keeps `Re(-conj(β) z + α) > 0` on the disc.
    pub fn check_branch(&self, x: GroupElement) -> Result<()> {
        if self.branch() == BranchPolicy::Principal && x.alpha().re <= x.beta().norm() {
            return Err(Error::BranchViolation {
                re_alpha: x.alpha().re,
                abs_beta: x.beta().norm(),
            });
        }
        Ok(())
    }
}

/// `π_ξ(x) f(z) = (-conj(β) z + α)^{-(ξ+2)} f((conj(α) z - β)/(-conj(β) z + α))`.
pub fn group_act<F>(x: GroupElement, f: F, z: Complex64, ctx: &RepContext) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    check_in_disc(z)?;
    ctx.check_branch(x)?;
    let (alpha, beta) = (x.alpha(), x.beta());
    let denom = alpha - beta.conj() * z;
    let numer = match ctx.numerator {
        Numerator::Corrected => alpha.conj() * z - beta,
        Numerator::Printed => alpha * z - beta,
    };
    Ok(principal_inv_pow(denom, ctx.xi.shifted()) * f(numer / denom))
}

/// [`group_act`] on a polynomial.
pub fn group_act_poly(x: GroupElement, f: &CoeffVector, z: Complex64, ctx: &RepContext) -> Result<Complex64> {
    group_act(x, |w| f.eval(w), z, ctx)
}

/// `π_ξ(U) = p·d/dz + q` with, for `(σ, τ, λ)` the coordinates of `U`,
///
/// `p = (τ+iλ) z² - 2i(σ+λ) z + (-τ+iλ)`,
/// `q = (ξ+2)(τ+iλ) z - (ξ+2) i (σ+λ)`.
pub fn derived_op(u: LieElement, xi: WeightParam) -> FirstOrderOp {
    let k = u.coords();
    let h = xi.shifted();
    let quad = Complex64::new(k.tau, k.lambda);
    let lin = -2.0 * I * (k.sigma + k.lambda);
    let cons = Complex64::new(-k.tau, k.lambda);
    FirstOrderOp::new(
        CoeffVector::new(vec![cons, lin, quad]),
        CoeffVector::new(vec![-I * h * (k.sigma + k.lambda), quad * h]),
    )
}

/// Largest error between the central difference
/// `(π(exp(tU)) f - π(exp(-tU)) f) / 2t` and `π_ξ(U) f` over `points`.
pub fn derivative_check(u: LieElement, f: &CoeffVector, t: f64, ctx: &RepContext, points: &[Complex64]) -> Result<f64> {
    if !(t > 0.0 && t <= 1e-3) {
        return Err(Error::InvalidStep(t));
    }
    let forward = u.exp_at(t);
    let backward = u.exp_at(-t);
    let exact = derived_op(u, ctx.xi).apply(f, f.degree() + 2);
    let mut worst = 0.0f64;
    for &z in points {
        let diff = (group_act_poly(forward, f, z, ctx)? - group_act_poly(backward, f, z, ctx)?) / (2.0 * t);
        worst = worst.max((diff - exact.eval(z)).norm());
    }
    Ok(worst)
}

/// Errors at `t` and `t/2` with the observed order `log2(e(t)/e(t/2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceOrder {
    pub err_t: f64,
    pub err_half: f64,
    /// `None` when both errors are exactly zero.
    pub order: Option<f64>,
}

pub fn derivative_order(
    u: LieElement,
    f: &CoeffVector,
    t: f64,
    ctx: &RepContext,
    points: &[Complex64],
) -> Result<ConvergenceOrder> {
    let err_t = derivative_check(u, f, t, ctx, points)?;
    let err_half = derivative_check(u, f, t / 2.0, ctx, points)?;
    let order = (err_t > 0.0 || err_half > 0.0).then(|| (err_t / err_half).log2());
    Ok(ConvergenceOrder { err_t, err_half, order })
}

/// `‖π_ξ(𝔛) f‖²_ξ = Σ (2k+ξ+2)² |a_k|² k!/(ξ+2)_k`.
pub fn xnorm_sq(f: &CoeffVector, xi: WeightParam) -> f64 {
    let norms = xi.norm_table(f.degree());
    f.coeffs()
        .iter()
        .zip(&norms)
        .enumerate()
        .map(|(k, (a, m))| (2.0 * k as f64 + xi.shifted()).powi(2) * a.norm_sqr() * m)
        .sum()
}
