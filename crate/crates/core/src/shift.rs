//! The operator `z·d/dz + c` as an isomorphism `A²_ξ → A²_{ξ+2}`, and the
//! related kernel identity between weights `ξ` and `ξ+1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::quadrature::KernelPoint;
use crate::weight::WeightParam;

const FORBIDDEN_GAP: f64 = 1e-12;

/// `L̃ = z·d/dz + c`, acting as `a_k ↦ (k + c) a_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftOp {
    #[serde(serialize_with = "ser_complex")]
    c: Complex64,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

impl ShiftOp {
    /// Rejects `c` within `1e-12` of `0, -1, -2, ...`.
    pub fn new(c: Complex64) -> Result<Self> {
        let nearest = c.re.round().min(0.0);
        if (c - nearest).norm() <= FORBIDDEN_GAP {
            return Err(Error::ForbiddenShift { re: c.re, im: c.im });
        }
        Ok(Self { c })
    }

    /// Skips validation; `c = 0` gives `z·d/dz`, which kills constants.
    pub fn new_unchecked(c: Complex64) -> Self {
        Self { c }
    }

    pub fn c(self) -> Complex64 {
        self.c
    }

    pub fn apply(self, f: &CoeffVector) -> CoeffVector {
        f.map_indexed(|k, a| a * (k as f64 + self.c))
    }

    pub fn invert(self, f: &CoeffVector) -> CoeffVector {
        f.map_indexed(|k, a| a / (k as f64 + self.c))
    }

    /// `r_k = (ξ+3)(ξ+2)|k+c|² / ((k+ξ+3)(k+ξ+2))`, the ratio `‖L̃ z^k‖²_{ξ+2} / ‖z^k‖²_ξ`.
    pub fn ratio(self, xi: WeightParam, k: usize) -> f64 {
        let (x, kf) = (xi.xi(), k as f64);
        (x + 3.0) * (x + 2.0) * (kf + self.c).norm_sqr() / ((kf + x + 3.0) * (kf + x + 2.0))
    }
}

pub fn shift_apply(op: ShiftOp, f: &CoeffVector) -> CoeffVector {
    op.apply(f)
}

pub fn shift_invert(op: ShiftOp, f: &CoeffVector) -> CoeffVector {
    op.invert(f)
}

/// Two-sided bounds `m‖f‖²_ξ ≤ ‖L̃f‖²_{ξ+2} ≤ M‖f‖²_ξ` on degrees `≤ k_range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameConstants {
    pub lower: f64,
    pub upper: f64,
    pub k_range: usize,
}

/// Scan `r_k` for `k ≤ k_range` together with its limit `(ξ+3)(ξ+2)`.
pub fn frame_constants(op: ShiftOp, xi: WeightParam, k_range: usize) -> FrameConstants {
    let tail = (xi.xi() + 3.0) * (xi.xi() + 2.0);
    let (lower, upper) = (0..=k_range)
        .map(|k| op.ratio(xi, k))
        .fold((tail, tail), |(lo, hi), r| (lo.min(r), hi.max(r)));
    FrameConstants { lower, upper, k_range }
}

/// Degree-`degree` Taylor expansion of `K_ξ(·, w) = Σ ((ξ+2)_k/k!) conj(w)^k z^k`.
pub fn kernel_expansion(w: KernelPoint, xi: WeightParam, degree: usize) -> CoeffVector {
    let wc = w.value().conj();
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut term = Complex64::new(1.0, 0.0);
    coeffs.push(term);
    for k in 1..=degree {
        term *= wc * ((xi.shifted() + k as f64 - 1.0) / k as f64);
        coeffs.push(term);
    }
    CoeffVector::new(coeffs)
}

/// Coefficient distance between `(α z·d/dz + 1) K_ξ(·, w)` and `K_{ξ+1}(·, w)`,
/// both expanded to degree `degree`.
pub fn kernel_shift_residual(alpha: f64, w: KernelPoint, xi: WeightParam, degree: usize) -> Result<f64> {
    let next = xi.offset(1.0)?;
    let shifted = kernel_expansion(w, xi, degree).map_indexed(|k, a| a * (alpha * k as f64 + 1.0));
    Ok(shifted.l2_distance(&kernel_expansion(w, next, degree)))
}

/// The constant making the kernel identity exact: `1/(ξ+2)`.
pub fn kernel_shift_alpha(xi: WeightParam) -> f64 {
    xi.shifted().recip()
}

/// The alternative constant `2/(ξ+2)`, kept for comparison reports.
pub fn kernel_shift_alpha_printed(xi: WeightParam) -> f64 {
    2.0 / xi.shifted()
}

/// Residuals at the derived and printed constants, side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelShiftComparison {
    pub xi: f64,
    pub w_re: f64,
    pub w_im: f64,
    pub degree: usize,
    pub alpha_derived: f64,
    pub residual_derived: f64,
    pub alpha_printed: f64,
    pub residual_printed: f64,
}

pub fn compare_kernel_shift(w: KernelPoint, xi: WeightParam, degree: usize) -> Result<KernelShiftComparison> {
    let alpha_derived = kernel_shift_alpha(xi);
    let alpha_printed = kernel_shift_alpha_printed(xi);
    Ok(KernelShiftComparison {
        xi: xi.xi(),
        w_re: w.value().re,
        w_im: w.value().im,
        degree,
        alpha_derived,
        residual_derived: kernel_shift_residual(alpha_derived, w, xi, degree)?,
        alpha_printed,
        residual_printed: kernel_shift_residual(alpha_printed, w, xi, degree)?,
    })
}

/// Bounds on `‖z^k‖²_{ξ-2} / (k² ‖z^k‖²_ξ) = (ξ+k)(ξ+k+1) / (k² ξ (ξ+1))` for
/// `1 ≤ k ≤ k_range` and the limit `1/(ξ(ξ+1))`.
pub fn domain_identification_check(xi: WeightParam, k_range: usize) -> Result<(f64, f64)> {
    let x = xi.xi();
    if x <= 1.0 {
        return Err(Error::DomainXi(x));
    }
    let tail = 1.0 / (x * (x + 1.0));
    Ok((1..=k_range.max(1))
        .map(|k| domain_ratio(x, k))
        .fold((tail, tail), |(lo, hi), r| (lo.min(r), hi.max(r))))
}

fn domain_ratio(x: f64, k: usize) -> f64 {
    let kf = k as f64;
    (x + kf) * (x + kf + 1.0) / (kf * kf * x * (x + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{bergman_norm_sq, monomial_norm_sq, sobolev_norm_sq};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(xi: f64) -> WeightParam {
        WeightParam::new(xi).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `(ξ+3)_k / (ξ+2)_k` by direct products.
    fn pochhammer_ratio(xi: f64, k: usize) -> f64 {
        (0..k).map(|j| (xi + 3.0 + j as f64) / (xi + 2.0 + j as f64)).product()
    }

    #[test]
    fn forbidden_constants() {
        for bad in [0.0, -1.0, -2.0, -7.0, -3.0 + 1e-13] {
            assert!(ShiftOp::new(c(bad, 0.0)).is_err(), "{bad}");
        }
        for ok in [1.0, -0.5, 0.5, 2.0] {
            assert!(ShiftOp::new(c(ok, 0.0)).is_ok());
        }
        assert!(ShiftOp::new(c(-1.0, 1e-6)).is_ok());
    }

    #[test]
    fn apply_invert_examples() {
        let op = ShiftOp::new(c(1.0, 0.0)).unwrap();
        assert_eq!(
            op.apply(&CoeffVector::from_reals(&[1.0, 1.0])),
            CoeffVector::from_reals(&[1.0, 2.0])
        );
        assert!(op.apply(&CoeffVector::zeros(4)).is_zero());
        assert_eq!(
            op.invert(&CoeffVector::from_reals(&[1.0, 2.0])),
            CoeffVector::from_reals(&[1.0, 1.0])
        );
        let op = ShiftOp::new(c(0.5, -2.0)).unwrap();
        let inv = op.invert(&CoeffVector::monomial(3));
        assert_abs_diff_eq!((inv.get(3) - c(1.0, 0.0) / c(3.5, -2.0)).norm(), 0.0, epsilon = 1e-16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = CoeffVector::random(&mut rng, 30);
        assert!(op.invert(&op.apply(&f)).max_abs_diff(&f) < 1e-14);
    }

    #[test]
    fn frame_examples() {
        let fc = frame_constants(ShiftOp::new(c(1.0, 0.0)).unwrap(), w(0.0), 64);
        assert_abs_diff_eq!(fc.lower, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fc.upper, 6.0, epsilon = 1e-15);
        for xi in [0.0, 0.5, 3.0] {
            let op = ShiftOp::new(c(xi + 2.0, 0.0)).unwrap();
            for k in 0..50 {
                let kf = k as f64;
                let simplified = (xi + 3.0) * (xi + 2.0) * (kf + xi + 2.0) / (kf + xi + 3.0);
                assert_abs_diff_eq!(op.ratio(w(xi), k), simplified, epsilon = 1e-12 * simplified);
            }
            let fc = frame_constants(op, w(xi), 100);
            assert_abs_diff_eq!(fc.lower, op.ratio(w(xi), 0), epsilon = 1e-15);
            assert_abs_diff_eq!(fc.upper, (xi + 3.0) * (xi + 2.0), epsilon = 1e-15);
        }
    }

    #[test]
    fn ratio_is_norm_quotient() {
        let op = ShiftOp::new(c(0.3, 1.1)).unwrap();
        for xi in [-0.5, 0.0, 2.0] {
            let up = w(xi + 2.0);
            for k in 0..40 {
                let q = (k as f64 + op.c()).norm_sqr() * monomial_norm_sq(up, k) / monomial_norm_sq(w(xi), k);
                assert_abs_diff_eq!(op.ratio(w(xi), k), q, epsilon = 1e-12 * q);
            }
        }
    }

    #[test]
    fn frame_sandwich_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (cv, xi) in [(c(1.0, 0.0), 0.0), (c(-0.5, 0.3), 1.0), (c(4.0, -2.0), 2.5)] {
            let op = ShiftOp::new(cv).unwrap();
            let fc = frame_constants(op, w(xi), 40);
            for _ in 0..50 {
                let deg = rng.random_range(0..=40);
                let f = CoeffVector::random(&mut rng, deg);
                let n0 = bergman_norm_sq(&f, w(xi));
                let n1 = bergman_norm_sq(&op.apply(&f), w(xi + 2.0));
                assert!(fc.lower * n0 <= n1 * (1.0 + 1e-12));
                assert!(n1 <= fc.upper * n0 * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn tail_gap_shrinks() {
        for (cv, xi) in [(c(1.0, 0.0), 0.0), (c(0.2, 3.0), 1.5), (c(7.0, 0.0), 0.5)] {
            let op = ShiftOp::new(cv).unwrap();
            let tail = (xi + 3.0) * (xi + 2.0);
            let start = (2.0 * xi + 2.0 * cv.norm() + 10.0).ceil() as usize;
            let mut prev = f64::INFINITY;
            for k in start..start + 500 {
                let gap = (op.ratio(w(xi), k) - tail).abs();
                assert!(gap <= prev);
                prev = gap;
            }
        }
    }

    #[test]
    fn kernel_shift_examples() {
        let origin = KernelPoint::new(c(0.0, 0.0)).unwrap();
        for alpha in [0.0, 0.5, 3.0] {
            assert_eq!(kernel_shift_residual(alpha, origin, w(0.0), 20).unwrap(), 0.0);
        }
        let wp = KernelPoint::new(c(0.4, 0.0)).unwrap();
        assert!(kernel_shift_residual(0.5, wp, w(0.0), 40).unwrap() <= 1e-12);
        assert!(kernel_shift_residual(1.0, wp, w(0.0), 40).unwrap() > 1e-3);
    }

    #[test]
    fn kernel_term_identity_matches_pochhammer_oracle() {
        // (ξ+3)_k = (1 + k/(ξ+2)) (ξ+2)_k.
        for xi in [0.0, 0.5, 1.0, 3.0] {
            for k in 0..60 {
                assert_abs_diff_eq!(
                    pochhammer_ratio(xi, k),
                    1.0 + k as f64 / (xi + 2.0),
                    epsilon = 1e-12 * (k as f64 + 1.0)
                );
            }
        }
    }

    #[test]
    fn zero_shift_kills_constants() {
        let op = ShiftOp::new_unchecked(c(0.0, 0.0));
        assert!(op.apply(&CoeffVector::constant(c(3.0, 1.0))).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = &CoeffVector::random(&mut rng, 10) - &CoeffVector::constant(CoeffVector::random(&mut rng, 0).get(0));
        let g = g.map_indexed(|k, a| if k == 0 { c(0.0, 0.0) } else { a });
        // Every function vanishing at 0 is hit: invert on the nonconstant modes.
        let pre = g.map_indexed(|k, a| if k == 0 { c(0.0, 0.0) } else { a / k as f64 });
        assert!(op.apply(&pre).max_abs_diff(&g) < 1e-15);
        assert_eq!(op.apply(&CoeffVector::random(&mut rng, 5)).get(0), c(0.0, 0.0));
    }

    #[test]
    fn domain_identification_examples() {
        let (lo, hi) = domain_identification_check(w(2.0), 256).unwrap();
        assert!(lo > 0.0 && hi.is_finite() && lo <= hi);
        assert_abs_diff_eq!(domain_ratio(2.0, 1), 3.0 * 4.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(domain_ratio(2.0, 1_000_000), 1.0 / 6.0, epsilon = 1e-6);
        assert!(domain_identification_check(w(1.0), 10).is_err());
        // Ratio of the two weights computed from norms directly.
        let xi = w(2.5);
        let lower = w(0.5);
        for k in 1..20 {
            let direct = monomial_norm_sq(lower, k) / ((k * k) as f64 * monomial_norm_sq(xi, k));
            assert_abs_diff_eq!(domain_ratio(2.5, k), direct, epsilon = 1e-12 * direct);
            let f = CoeffVector::monomial(k);
            let via = bergman_norm_sq(&f, lower) / sobolev_norm_sq(&f, xi, 1).unwrap();
            assert_abs_diff_eq!(via, direct, epsilon = 1e-12 * direct);
        }
    }
}
