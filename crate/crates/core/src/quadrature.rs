//! Brute-force integration over the unit disc against `dν_ξ`.
//!
//! This is the independent check for the coefficient formulas in
//! [`crate::weight`]: nothing here uses monomial norms or Pochhammer symbols.
//!
//! With `z = r e^{iθ}` and `s = r²`, the measure factors as
//! `dν_ξ = (ξ+1)(1-s)^ξ ds · dθ/2π`. The radial factor is a Jacobi weight on
//! `[0, 1]`, integrated by a Gauss–Jacobi rule so the endpoint singularity for
//! `ξ < 0` is absorbed into the weights. The angular factor uses the
//! trapezoid rule, which is exact for trigonometric polynomials of degree
//! below `M`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::weight::WeightParam;

pub const DEFAULT_RADIAL: usize = 64;
pub const DEFAULT_ANGULAR: usize = 256;
pub const MIN_RADIAL: usize = 8;
pub const MIN_ANGULAR: usize = 16;

/// Product rule for `∫_𝔻 F dν_ξ`.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    xi: WeightParam,
    /// `(s_j, w_j)` with `Σ w_j = 1`.
    radial: Vec<(f64, f64)>,
    /// `(e^{iθ_l}, r_j)` samples are formed on demand from these.
    angles: Vec<Complex64>,
}

impl QuadratureGrid {
    pub fn new(xi: WeightParam, radial: usize, angular: usize) -> Result<Self> {
        if radial < MIN_RADIAL {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_RADIAL} radial nodes, got {radial}"
            )));
        }
        if angular < MIN_ANGULAR {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_ANGULAR} angular nodes, got {angular}"
            )));
        }
        let radial = gauss_jacobi_unit(radial, xi.xi())?;
        let angles = (0..angular)
            .map(|l| Complex64::from_polar(1.0, TAU * l as f64 / angular as f64))
            .collect();
        Ok(Self { xi, radial, angles })
    }

    pub fn with_defaults(xi: WeightParam) -> Result<Self> {
        Self::new(xi, DEFAULT_RADIAL, DEFAULT_ANGULAR)
    }

    pub fn xi(&self) -> WeightParam {
        self.xi
    }

    pub fn radial_count(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_count(&self) -> usize {
        self.angles.len()
    }

    /// Radial nodes and weights in the variable `s = r²`.
    pub fn radial_rule(&self) -> &[(f64, f64)] {
        &self.radial
    }

    /// `∫_𝔻 F dν_ξ`, failing on the first non-finite sample.
    pub fn integrate<F>(&self, mut integrand: F) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let m = self.angles.len() as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for &(s, w) in &self.radial {
            let r = s.sqrt();
            let mut ring = Complex64::new(0.0, 0.0);
            for &u in &self.angles {
                let z = u * r;
                let v = integrand(z);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::PoisonedSample {
                        re: z.re,
                        im: z.im,
                        value: v.to_string(),
                    });
                }
                ring += v;
            }
            total += ring * (w / m);
        }
        Ok(total)
    }

    /// `⟨f, g⟩_ξ` by quadrature of `f · conj(g)`.
    pub fn inner_product(&self, f: &CoeffVector, g: &CoeffVector) -> Result<Complex64> {
        self.integrate(|z| f.eval(z) * g.eval(z).conj())
    }

    /// `‖F‖²_ξ` for an arbitrary sampleable function.
    pub fn norm_sq<F>(&self, mut func: F) -> Result<f64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        Ok(self.integrate(|z| Complex64::new(func(z).norm_sqr(), 0.0))?.re)
    }
}

/// Gauss–Jacobi rule on `[0, 1]` for the probability weight `(ξ+1)(1-s)^ξ`.
///
/// Golub–Welsch on the Jacobi matrix of `P^{(ξ, 0)}` over `[-1, 1]`, mapped
/// through `s = (1+x)/2`. Nodes ascend.
pub fn gauss_jacobi_unit(n: usize, xi: f64) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::InvalidGrid("empty radial rule".into()));
    }
    let (a, b) = (xi, 0.0);
    let ab = a + b;
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            let t = 2.0 * kf + ab;
            (b * b - a * a) / (t * (t + 2.0))
        };
        jacobi[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let t = 2.0 * j + ab;
            // (j+a+b) and (t-1) coincide at j = 1 when b = 0; keep them paired.
            let num = 4.0 * j * (j + a) * (j + b) * (j + ab);
            let den = t * t * (t + 1.0) * (t - 1.0);
            let off = (num / den).sqrt();
            jacobi[(k, k + 1)] = off;
            jacobi[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut rule: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.row(0).iter())
        .map(|(&x, &v0)| ((1.0 + x) / 2.0, v0 * v0))
        .collect();
    rule.sort_by(|p, q| p.0.total_cmp(&q.0));
    let total: f64 = rule.iter().map(|p| p.1).sum();
    for p in &mut rule {
        p.1 /= total;
    }
    Ok(rule)
}

/// A point `w` of the open disc parametrizing the kernel `K_ξ(·, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint(Complex64);

impl KernelPoint {
    pub fn new(w: Complex64) -> Result<Self> {
        check_in_disc(w)?;
        Ok(Self(w))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

pub(crate) fn check_in_disc(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisc { re: z.re, im: z.im })
    }
}

/// `u^{-p}` on the principal branch; integer exponents use repeated multiplication.
pub(crate) fn principal_inv_pow(u: Complex64, p: f64) -> Complex64 {
    if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
        u.powi(-(p as i32))
    } else {
        (-p * u.ln()).exp()
    }
}

/// `K_ξ(z, w) = (1 - z w̄)^{-(ξ+2)}`.
///
/// `Re(1 - z w̄) > 0` on `𝔻 × 𝔻`, so the principal branch is continuous there.
pub fn kernel_eval(z: Complex64, w: KernelPoint, xi: WeightParam) -> Result<Complex64> {
    check_in_disc(z)?;
    Ok(kernel_unchecked(z, w.value(), xi))
}

fn kernel_unchecked(z: Complex64, w: Complex64, xi: WeightParam) -> Complex64 {
    principal_inv_pow(Complex64::new(1.0, 0.0) - z * w.conj(), xi.shifted())
}

/// `⟨f, K^w_ξ⟩_ξ` by quadrature; should reproduce `f(w)`.
pub fn reproduce(f: &CoeffVector, w: KernelPoint, grid: &QuadratureGrid) -> Result<Complex64> {
    if grid.radial_count() < f.degree() + 4 {
        return Err(Error::InvalidGrid(format!(
            "radial count {} too small for degree {}",
            grid.radial_count(),
            f.degree()
        )));
    }
    let xi = grid.xi();
    let wv = w.value();
    grid.integrate(|z| f.eval(z) * kernel_unchecked(z, wv, xi).conj())
}

/// Partial sum `Σ_{k≤terms} ((ξ+2)_k/k!) (z w̄)^k` of the kernel series.
pub fn kernel_partial_sum(z: Complex64, w: KernelPoint, xi: WeightParam, terms: usize) -> Complex64 {
    let x = z * w.value().conj();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..=terms {
        term *= x * ((xi.shifted() + k as f64 - 1.0) / k as f64);
        sum += term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn w(xi: f64) -> WeightParam {
        WeightParam::new(xi).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `∫_0^1 (ξ+1)(1-s)^ξ s^k ds = k! Γ(ξ+2)/Γ(k+ξ+2)` as a direct product.
    fn beta_moment(xi: f64, k: usize) -> f64 {
        (1..=k).map(|j| j as f64 / (j as f64 + xi + 1.0)).product()
    }

    #[test]
    fn grid_size_limits() {
        assert!(QuadratureGrid::new(w(0.0), 7, 16).is_err());
        assert!(QuadratureGrid::new(w(0.0), 8, 15).is_err());
        assert!(QuadratureGrid::new(w(0.0), 8, 16).is_ok());
    }

    #[test]
    fn constant_integrates_to_one() {
        for xi in [-0.9, -0.5, 0.0, 1.0, 2.5, 50.0] {
            let grid = QuadratureGrid::new(w(xi), 16, 16).unwrap();
            let total = grid.integrate(|_| c(1.0, 0.0)).unwrap();
            assert_abs_diff_eq!(total.re, 1.0, epsilon = 1e-12);
            assert_eq!(total.im, 0.0);
        }
    }

    #[test]
    fn radial_rule_is_exact_to_degree_2r_minus_1() {
        for xi in [0.0, 1.0, 2.0, -0.5, 2.5] {
            let r = 12;
            let rule = gauss_jacobi_unit(r, xi).unwrap();
            for k in 0..2 * r {
                let q: f64 = rule.iter().map(|&(s, wt)| wt * s.powi(k as i32)).sum();
                assert_abs_diff_eq!(q, beta_moment(xi, k), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn angular_rule_annihilates_nonzero_frequencies() {
        let grid = QuadratureGrid::new(w(0.0), 8, 32).unwrap();
        for k in 1..32 {
            let v = grid.integrate(|z| (z / z.norm().max(1e-300)).powi(k)).unwrap();
            assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn integrate_examples() {
        let grid = QuadratureGrid::with_defaults(w(0.0)).unwrap();
        assert_abs_diff_eq!(
            grid.integrate(|z| c(z.norm_sqr(), 0.0)).unwrap().re,
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(grid.integrate(|z| z).unwrap().norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn poisoned_sample_names_the_node() {
        let grid = QuadratureGrid::new(w(0.0), 8, 16).unwrap();
        let err = grid
            .integrate(|z| if z.re > 0.5 { c(f64::NAN, 0.0) } else { z })
            .unwrap_err();
        match err {
            Error::PoisonedSample { re, .. } => assert!(re > 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kernel_examples() {
        let zero = KernelPoint::new(c(0.0, 0.0)).unwrap();
        assert_eq!(kernel_eval(c(0.3, -0.2), zero, w(1.5)).unwrap(), c(1.0, 0.0));
        let half = KernelPoint::new(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(
            kernel_eval(c(0.5, 0.0), half, w(0.0)).unwrap().re,
            16.0 / 9.0,
            epsilon = 1e-15
        );
        assert!(KernelPoint::new(c(1.0, 0.0)).is_err());
        assert!(kernel_eval(c(0.0, 1.0), half, w(0.0)).is_err());
    }

    #[test]
    fn kernel_is_hermitian() {
        let pts = [c(0.3, 0.4), c(-0.7, 0.1), c(0.0, -0.95)];
        for xi in [0.0, 0.5, 2.3] {
            for &z in &pts {
                for &v in &pts {
                    let k_zw = kernel_eval(z, KernelPoint::new(v).unwrap(), w(xi)).unwrap();
                    let k_wz = kernel_eval(v, KernelPoint::new(z).unwrap(), w(xi)).unwrap();
                    assert_abs_diff_eq!((k_zw - k_wz.conj()).norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn kernel_series_converges_geometrically() {
        let z = c(0.5, 0.2);
        let wp = KernelPoint::new(c(0.6, -0.3)).unwrap();
        let rate = (z * wp.value().conj()).norm();
        for xi in [0.0, 1.5] {
            let exact = kernel_eval(z, wp, w(xi)).unwrap();
            let mut prev = f64::INFINITY;
            for terms in (10..=80).step_by(10) {
                let err = (kernel_partial_sum(z, wp, w(xi), terms) - exact).norm();
                assert!(err < prev || err < 1e-13);
                // Tail bound with a polynomial prefactor for the Pochhammer growth.
                assert!(err < 1e3 * (terms as f64).powf(xi + 2.0) * rate.powi(terms as i32 + 1) + 1e-13);
                prev = err;
            }
        }
    }

    #[test]
    fn reproduce_examples() {
        let grid = QuadratureGrid::with_defaults(w(0.0)).unwrap();
        let wp = KernelPoint::new(c(0.3, 0.2)).unwrap();
        let one = CoeffVector::constant(c(1.0, 0.0));
        assert_abs_diff_eq!((reproduce(&one, wp, &grid).unwrap() - 1.0).norm(), 0.0, epsilon = 1e-12);
        let cube = CoeffVector::monomial(3);
        let got = reproduce(&cube, wp, &grid).unwrap();
        assert_abs_diff_eq!((got - wp.value().powi(3)).norm(), 0.0, epsilon = 1e-6);
        let e2 = crate::weight::basis_vector(2, w(0.0));
        let origin = KernelPoint::new(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(reproduce(&e2, origin, &grid).unwrap().norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reproduce_needs_enough_radial_nodes() {
        let grid = QuadratureGrid::new(w(0.0), 8, 16).unwrap();
        let f = CoeffVector::monomial(5);
        assert!(reproduce(&f, KernelPoint::new(c(0.1, 0.0)).unwrap(), &grid).is_err());
    }
}
