//! Both sides of the Lie-algebraic uncertainty inequality
//! `|⟨π([U,V])u, u⟩| ≤ 2‖(π(U)+x)u‖ ‖(π(V)+y)u‖` and its Bergman-space form.

use num_complex::Complex64;
use serde::Serialize;

use crate::coeff::CoeffVector;
use crate::operators::FirstOrderOp;
use crate::series::derived_op;
use crate::su11::{bracket, LieElement};
use crate::weight::{bergman_norm_sq, inner_product, WeightParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UncertaintyKind {
    /// Generic pair `(U, V)` with shifts `(x, y)`.
    Lie,
    /// The `(𝔚, 𝔜)` specialization with shifts `(w, y)`.
    Bergman,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub kind: UncertaintyKind,
    pub xi: f64,
    pub degree: usize,
    /// `x` for [`UncertaintyKind::Lie`], `w` for [`UncertaintyKind::Bergman`].
    pub shift_first: f64,
    pub shift_second: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<LieElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<LieElement>,
    pub f: CoeffVector,
    pub lhs: f64,
    /// Imaginary part discarded from the Bergman left side (zero in exact arithmetic).
    pub lhs_imag: f64,
    pub rhs: f64,
    pub slack: f64,
}

fn norm(f: &CoeffVector, xi: WeightParam) -> f64 {
    bergman_norm_sq(f, xi).sqrt()
}

pub fn lie_up(u: LieElement, v: LieElement, f: &CoeffVector, x: f64, y: f64, xi: WeightParam) -> UncertaintyReport {
    let work = f.degree() + 2;
    let comm = derived_op(bracket(u, v), xi).apply(f, work);
    let lhs = inner_product(&comm, f, xi).norm();
    let first = derived_op(u, xi).plus_scalar(Complex64::new(x, 0.0)).apply(f, work);
    let second = derived_op(v, xi).plus_scalar(Complex64::new(y, 0.0)).apply(f, work);
    let rhs = 2.0 * norm(&first, xi) * norm(&second, xi);
    UncertaintyReport {
        kind: UncertaintyKind::Lie,
        xi: xi.xi(),
        degree: f.degree(),
        shift_first: x,
        shift_second: y,
        u: Some(u),
        v: Some(v),
        f: f.clone(),
        lhs,
        lhs_imag: 0.0,
        rhs,
        slack: rhs - lhs,
    }
}

/// `(1+z²) d/dz + (ξ+2) z + i w`.
fn rotation_factor(xi: WeightParam, w: f64) -> FirstOrderOp {
    FirstOrderOp::new(
        CoeffVector::from_reals(&[1.0, 0.0, 1.0]),
        CoeffVector::new(vec![Complex64::new(0.0, w), Complex64::new(xi.shifted(), 0.0)]),
    )
}

/// `(z²-1) d/dz + (ξ+2) z + y`.
fn boost_factor(xi: WeightParam, y: f64) -> FirstOrderOp {
    FirstOrderOp::new(
        CoeffVector::from_reals(&[-1.0, 0.0, 1.0]),
        CoeffVector::from_reals(&[y, xi.shifted()]),
    )
}

fn bergman_rhs(f: &CoeffVector, w: f64, y: f64, xi: WeightParam) -> f64 {
    let work = f.degree() + 1;
    norm(&rotation_factor(xi, w).apply(f, work), xi) * norm(&boost_factor(xi, y).apply(f, work), xi)
}

/// `(ξ+2)‖f‖² + 2⟨z f', f⟩ ≤ ‖(1+z²)f' + ((ξ+2)z + iw) f‖ ‖(z²-1)f' + ((ξ+2)z + y) f‖`.
pub fn soltani_up(f: &CoeffVector, w: f64, y: f64, xi: WeightParam) -> UncertaintyReport {
    let zf = f.derivative().shift_up();
    let lhs_c = Complex64::new(xi.shifted() * bergman_norm_sq(f, xi), 0.0) + 2.0 * inner_product(&zf, f, xi);
    let rhs = bergman_rhs(f, w, y, xi);
    UncertaintyReport {
        kind: UncertaintyKind::Bergman,
        xi: xi.xi(),
        degree: f.degree(),
        shift_first: w,
        shift_second: y,
        u: None,
        v: None,
        f: f.clone(),
        lhs: lhs_c.re,
        lhs_imag: lhs_c.im,
        rhs,
        slack: rhs - lhs_c.re,
    }
}

/// Recompute [`soltani_up`] through [`lie_up`] with `(U, V) = (𝔚, 𝔜)`, `x = -w`.
///
/// Both sides of the Lie form carry an extra factor 2. Returns the larger of
/// the two side discrepancies.
pub fn consistency_check(f: &CoeffVector, w: f64, y: f64, xi: WeightParam) -> f64 {
    let direct = soltani_up(f, w, y, xi);
    let via = lie_up(LieElement::w(), LieElement::y(), f, -w, y, xi);
    (direct.lhs - via.lhs / 2.0)
        .abs()
        .max((direct.rhs - via.rhs / 2.0).abs())
}

/// Golden-section minimum of a unimodal function on `[lo, hi]`.
pub fn golden_section_min(mut g: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut gc, mut gd) = (g(c), g(d));
    while hi - lo > tol {
        if gc < gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - inv_phi * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + inv_phi * (hi - lo);
            gd = g(d);
        }
    }
    (lo + hi) / 2.0
}

/// Which shift [`minimize_shift`] varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    W,
    Y,
}

/// Report at the shift minimizing the right side, the other shift held fixed.
///
/// The right side is a product of a fixed norm and the norm of an affine
/// function of the shift, hence convex in it.
pub fn minimize_shift(f: &CoeffVector, fixed: f64, which: Shift, xi: WeightParam) -> UncertaintyReport {
    let scale = norm(f, xi).max(f64::MIN_POSITIVE);
    let bound = 10.0 * (norm(&f.derivative(), xi) / scale + xi.shifted() + 1.0);
    let objective = |s: f64| match which {
        Shift::W => bergman_rhs(f, s, fixed, xi),
        Shift::Y => bergman_rhs(f, fixed, s, xi),
    };
    let best = golden_section_min(objective, -bound, bound, 1e-10 * bound);
    match which {
        Shift::W => soltani_up(f, best, fixed, xi),
        Shift::Y => soltani_up(f, fixed, best, xi),
    }
}
