//! Exact coefficient-space arithmetic for the weighted Bergman space `A²_ξ`.
//!
//! Monomials are orthogonal with `‖z^k‖²_ξ = k!/(ξ+2)_k`, so every norm and
//! inner product reduces to a weighted sum over Taylor coefficients.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};

/// Upper end of the supported weight range.
pub const XI_MAX: f64 = 100.0;

/// Degrees up to this bound use direct products; beyond it log-gamma.
const PRODUCT_CUTOFF: usize = 64;
const LOG_SUM_CUTOFF: usize = 1 << 20;

/// The weight `ξ > -1` of the measure `dν_ξ = ((ξ+1)/π)(1-|z|²)^ξ dA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightParam(f64);

impl WeightParam {
    pub fn new(xi: f64) -> Result<Self> {
        if xi.is_finite() && xi > -1.0 && xi <= XI_MAX {
            Ok(Self(xi))
        } else {
            Err(Error::InvalidWeight(xi))
        }
    }

    pub fn xi(self) -> f64 {
        self.0
    }

    /// `ξ + 2`, the multiplier weight of the discrete series.
    pub fn shifted(self) -> f64 {
        self.0 + 2.0
    }

    /// Whether `ξ` is an integer (the group acts without a covering).
    pub fn is_integer(self) -> bool {
        self.0.fract() == 0.0
    }

    /// `A²_{ξ+step}`, if still a valid weight.
    pub fn offset(self, step: f64) -> Result<Self> {
        Self::new(self.0 + step)
    }

    /// `‖z^k‖²_ξ` for `k = 0..=degree`, built by the ratio recurrence.
    pub fn norm_table(self, degree: usize) -> Vec<f64> {
        let mut table = Vec::with_capacity(degree + 1);
        let mut m = 1.0;
        table.push(m);
        for k in 1..=degree {
            m *= k as f64 / (k as f64 + self.0 + 1.0);
            table.push(m);
        }
        table
    }
}

impl<'de> Deserialize<'de> for WeightParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let xi = f64::deserialize(d)?;
        Self::new(xi).map_err(serde::de::Error::custom)
    }
}

/// Working degree and tolerances shared by the verification routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub degree: usize,
    /// Relative tolerance for coefficient-space identities.
    pub tol_exact: f64,
    /// Absolute tolerance for quadrature comparisons.
    pub tol_quad: f64,
}

impl TruncationPolicy {
    pub fn new(degree: usize, tol_exact: f64, tol_quad: f64) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidPolicy("degree must be at least 1".into()));
        }
        if !(tol_exact > 0.0 && tol_exact <= tol_quad) {
            return Err(Error::InvalidPolicy(format!(
                "need 0 < tol_exact <= tol_quad, got tol_exact = {tol_exact:e}, tol_quad = {tol_quad:e}"
            )));
        }
        Ok(Self {
            degree,
            tol_exact,
            tol_quad,
        })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            degree: 24,
            tol_exact: 1e-10,
            tol_quad: 1e-6,
        }
    }
}

/// Rising factorial `(ξ+2)_k = Γ(k+ξ+2)/Γ(ξ+2)`.
pub fn pochhammer(xi: WeightParam, k: usize) -> Result<f64> {
    let x = xi.shifted();
    let value = if k <= PRODUCT_CUTOFF {
        (0..k).map(|j| x + j as f64).product::<f64>()
    } else {
        (ln_gamma(x + k as f64) - ln_gamma(x)).exp()
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Range {
            what: "pochhammer",
            xi: xi.xi(),
            k,
        })
    }
}

/// `‖z^k‖²_ξ = k!/(ξ+2)_k`.
///
/// Computed as a ratio so it stays finite where the Pochhammer symbol itself
/// overflows.
pub fn monomial_norm_sq(xi: WeightParam, k: usize) -> f64 {
    let s = xi.xi() + 1.0;
    if k <= PRODUCT_CUTOFF {
        (1..=k).map(|j| j as f64 / (j as f64 + s)).product()
    } else if k <= LOG_SUM_CUTOFF {
        // The log-gamma difference loses digits to cancellation at moderate k.
        (-(1..=k).map(|j| (s / j as f64).ln_1p()).sum::<f64>()).exp()
    } else {
        let kf = k as f64;
        (ln_gamma(kf + 1.0) + ln_gamma(s + 1.0) - ln_gamma(kf + s + 1.0)).exp()
    }
}

/// `⟨f, g⟩_ξ = Σ a_k conj(b_k) ‖z^k‖²_ξ`.
pub fn inner_product(f: &CoeffVector, g: &CoeffVector, xi: WeightParam) -> Complex64 {
    let n = f.coeffs().len().min(g.coeffs().len());
    let norms = xi.norm_table(n.saturating_sub(1));
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .zip(&norms)
        .map(|((a, b), m)| a * b.conj() * m)
        .sum()
}

fn weighted_sum(f: &CoeffVector, xi: WeightParam, weight: impl Fn(usize) -> f64) -> f64 {
    let norms = xi.norm_table(f.degree());
    f.coeffs()
        .iter()
        .zip(&norms)
        .enumerate()
        .map(|(k, (a, m))| a.norm_sqr() * m * weight(k))
        .sum()
}

/// `‖f‖²_ξ`.
pub fn bergman_norm_sq(f: &CoeffVector, xi: WeightParam) -> f64 {
    weighted_sum(f, xi, |_| 1.0)
}

/// `‖f‖²_{ξ,n} = |b_0|² + Σ_{k≥1} |b_k|² k^{2n} k!/(ξ+2)_k`.
pub fn sobolev_norm_sq(f: &CoeffVector, xi: WeightParam, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("Sobolev order must be at least 1".into()));
    }
    Ok(weighted_sum(f, xi, |k| {
        if k == 0 {
            1.0
        } else {
            (k as f64).powi(2 * n as i32)
        }
    }))
}

/// `Σ |a_k|² ‖z^k‖²_ξ (ξ(ξ+2) + 2k)^{2m}`, the seminorms cutting out smooth vectors.
pub fn smooth_seminorm_sq(f: &CoeffVector, xi: WeightParam, m: u32) -> f64 {
    let x = xi.xi();
    let casimir = x * (x + 2.0);
    weighted_sum(f, xi, |k| (casimir + 2.0 * k as f64).powi(2 * m as i32))
}

/// `√((ξ+2)_n/n!)`, the factor relating `e_n` to `z^n`.
fn basis_scale(norm_sq: f64) -> f64 {
    norm_sq.sqrt().recip()
}

/// Coordinates in the orthonormal basis `e_n = √((ξ+2)_n/n!) z^n` to Taylor coefficients.
pub fn basis_to_taylor(basis: &CoeffVector, xi: WeightParam) -> CoeffVector {
    let norms = xi.norm_table(basis.degree());
    basis.map_indexed(|k, c| c * basis_scale(norms[k]))
}

/// Inverse of [`basis_to_taylor`].
pub fn taylor_to_basis(taylor: &CoeffVector, xi: WeightParam) -> CoeffVector {
    let norms = xi.norm_table(taylor.degree());
    taylor.map_indexed(|k, c| c * norms[k].sqrt())
}

/// Taylor coefficients of the basis vector `e_n`.
pub fn basis_vector(n: usize, xi: WeightParam) -> CoeffVector {
    CoeffVector::monomial(n).scale(Complex64::new(basis_scale(monomial_norm_sq(xi, n)), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn w(xi: f64) -> WeightParam {
        WeightParam::new(xi).unwrap()
    }

    #[test]
    fn weight_rejects_out_of_range() {
        assert!(WeightParam::new(-1.0).is_err());
        assert!(WeightParam::new(f64::NAN).is_err());
        assert!(WeightParam::new(100.5).is_err());
        assert!(WeightParam::new(-0.999).is_ok());
    }

    #[test]
    fn policy_checks_ordering() {
        assert!(TruncationPolicy::new(0, 1e-10, 1e-6).is_err());
        assert!(TruncationPolicy::new(4, 1e-5, 1e-6).is_err());
        assert!(TruncationPolicy::new(4, 0.0, 1e-6).is_err());
        assert!(TruncationPolicy::new(4, 1e-30, 1e-6).is_ok());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(w(0.0), 0).unwrap(), 1.0);
        assert_eq!(pochhammer(w(0.0), 2).unwrap(), 6.0);
        assert_relative_eq!(pochhammer(w(0.5), 1).unwrap(), 2.5, max_relative = 1e-15);
    }

    #[test]
    fn pochhammer_log_gamma_branch_matches_product() {
        // (2)_k = (k+1)!; compare across the cutoff against an exact product.
        for k in [65usize, 80, 120, 160] {
            let exact: f64 = (2..=k + 1).map(|j| j as f64).product();
            assert_relative_eq!(pochhammer(w(0.0), k).unwrap(), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn pochhammer_overflow_is_range_error() {
        assert!(matches!(pochhammer(w(50.0), 10_000), Err(Error::Range { .. })));
    }

    #[test]
    fn monomial_norm_examples() {
        for xi in [-0.5, 0.0, 3.0] {
            assert_eq!(monomial_norm_sq(w(xi), 0), 1.0);
        }
        assert_relative_eq!(monomial_norm_sq(w(0.0), 1), 0.5);
        assert_relative_eq!(monomial_norm_sq(w(0.0), 2), 1.0 / 3.0, max_relative = 1e-15);
        // ξ = 0 gives 1/(k+1) exactly; check both branches.
        for k in [10usize, 64, 65, 1000, 10_000] {
            assert_relative_eq!(
                monomial_norm_sq(w(0.0), k),
                1.0 / (k as f64 + 1.0),
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn norm_ratio_recurrence() {
        for xi in [-0.9, -0.5, 0.0, 1.0, 2.5, 40.0] {
            let p = w(xi);
            for k in (1..=200).chain([500, 1000, 5000]) {
                let lhs = monomial_norm_sq(p, k - 1);
                let rhs = (xi + 1.0 + k as f64) / k as f64 * monomial_norm_sq(p, k);
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn shift_ratio_tends_to_one_monotonically() {
        for xi in [-0.5, 0.0, 2.5] {
            let p = w(xi);
            for l in [1usize, 3] {
                let mut prev_gap = f64::INFINITY;
                for k in (0..=1000).step_by(10) {
                    let gap = (monomial_norm_sq(p, k + l) / monomial_norm_sq(p, k) - 1.0).abs();
                    assert!(gap <= prev_gap + 1e-15, "xi={xi} l={l} k={k}");
                    prev_gap = gap;
                }
                assert!(prev_gap < 0.02);
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let z = CoeffVector::monomial(1);
        let z2 = CoeffVector::monomial(2);
        assert_eq!(inner_product(&z, &z2, w(0.7)), Complex64::new(0.0, 0.0));
        let f = CoeffVector::from_reals(&[1.0, 1.0]);
        assert_relative_eq!(inner_product(&f, &f, w(0.0)).re, 1.5);
        assert_relative_eq!(bergman_norm_sq(&f, w(0.0)), 1.5);
        assert_eq!(bergman_norm_sq(&CoeffVector::zeros(3), w(0.0)), 0.0);
    }

    #[test]
    fn basis_vectors_have_unit_norm() {
        for xi in [-0.5, 0.0, 2.0] {
            for n in 0..30 {
                assert_relative_eq!(
                    bergman_norm_sq(&basis_vector(n, w(xi)), w(xi)),
                    1.0,
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn sobolev_examples() {
        let c = CoeffVector::constant(Complex64::new(3.0, 4.0));
        assert_relative_eq!(sobolev_norm_sq(&c, w(1.0), 3).unwrap(), 25.0);
        assert_relative_eq!(sobolev_norm_sq(&CoeffVector::monomial(1), w(0.0), 1).unwrap(), 0.5);
        assert_relative_eq!(
            sobolev_norm_sq(&CoeffVector::monomial(2), w(0.0), 2).unwrap(),
            16.0 / 3.0,
            max_relative = 1e-15
        );
        assert!(sobolev_norm_sq(&c, w(0.0), 0).is_err());
    }

    #[test]
    fn smooth_seminorm_examples() {
        let one = CoeffVector::constant(Complex64::new(1.0, 0.0));
        assert_eq!(smooth_seminorm_sq(&one, w(0.0), 1), 0.0);
        assert_relative_eq!(smooth_seminorm_sq(&one, w(1.0), 1), 9.0);
        let f = CoeffVector::from_reals(&[0.3, -1.0, 2.0, 0.5]);
        assert_relative_eq!(smooth_seminorm_sq(&f, w(0.4), 0), bergman_norm_sq(&f, w(0.4)));
    }

    #[test]
    fn basis_conversion_examples() {
        let e0 = CoeffVector::monomial(0);
        assert_eq!(
            basis_to_taylor(&e0, w(0.3)),
            CoeffVector::constant(Complex64::new(1.0, 0.0))
        );
        let e1 = CoeffVector::monomial(1);
        assert_relative_eq!(
            basis_to_taylor(&e1, w(0.0)).get(1).re,
            2f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn first_sobolev_norm_is_equivalent_to_derivative_norm() {
        // ‖·‖_{ξ,1} weights k² against the integral weight k(k+ξ+1); the ratio
        // k/(k+ξ+1) is bounded on k ≥ 1 by its values at k = 1 and k → ∞.
        for xi in [-0.5, 0.0, 1.0, 2.5] {
            let (lo, hi) = (1..=2000)
                .map(|k| k as f64 / (k as f64 + xi + 1.0))
                .fold((1.0f64, 1.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
            let p = w(xi);
            let f = CoeffVector::new(
                (0..40)
                    .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
                    .collect(),
            );
            let integral: f64 = f.coeffs()[0].norm_sqr()
                + (1..40)
                    .map(|k| k as f64 * (k as f64 + xi + 1.0) * f.get(k).norm_sqr() * monomial_norm_sq(p, k))
                    .sum::<f64>();
            let sob = sobolev_norm_sq(&f, p, 1).unwrap();
            assert!(lo * integral <= sob * (1.0 + 1e-12));
            assert!(sob <= hi * integral * (1.0 + 1e-12));
        }
    }
}
