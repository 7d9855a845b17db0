//! First-order differential operators `f·d/dz + g` acting on polynomials.
//!
//! Matrices are indexed as `G[(n, m)] = ⟨L e_n, e_m⟩_ξ` in the orthonormal
//! basis `e_n`: the row is the input basis vector, the column the output
//! component. `L` is symmetric on polynomials iff `G` is Hermitian.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::series::derived_op;
use crate::su11::{bracket, BasisCoords, LieElement};
use crate::weight::{basis_vector, inner_product, WeightParam};

pub type ComplexMatrix = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `L = f·d/dz + g` with polynomial `f`, `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderOp {
    pub f: CoeffVector,
    pub g: CoeffVector,
}

impl FirstOrderOp {
    pub fn new(f: CoeffVector, g: CoeffVector) -> Self {
        Self { f, g }
    }

    /// Multiplication by the constant `c`.
    pub fn scalar(c: Complex64) -> Self {
        Self::new(CoeffVector::zeros(0), CoeffVector::constant(c))
    }

    /// `z·d/dz`, diagonal on monomials.
    pub fn euler() -> Self {
        Self::new(CoeffVector::monomial(1), CoeffVector::zeros(0))
    }

    /// How far `L` can raise the degree of a polynomial: `max(deg f - 1, deg g)`.
    pub fn degree_raise(&self) -> isize {
        let df = self.f.effective_degree().map_or(isize::MIN, |d| d as isize - 1);
        let dg = self.g.effective_degree().map_or(isize::MIN, |d| d as isize);
        df.max(dg)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.f.scale(s), self.g.scale(s))
    }

    /// `L + d` for a scalar `d`.
    pub fn plus_scalar(&self, d: Complex64) -> Self {
        Self::new(self.f.clone(), &self.g + &CoeffVector::constant(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.f + &other.f, &self.g + &other.g)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.f - &other.f, &self.g - &other.g)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.f.max_abs_diff(&other.f).max(self.g.max_abs_diff(&other.g))
    }

    /// `f h' + g h`, truncated at degree `max_degree`.
    pub fn apply(&self, h: &CoeffVector, max_degree: usize) -> CoeffVector {
        let fh = self.f.mul_truncated(&h.derivative(), max_degree);
        let gh = self.g.mul_truncated(h, max_degree);
        (&fh + &gh).truncated(max_degree)
    }

    /// `⟨L e_n, e_m⟩_ξ` for `0 ≤ n, m ≤ degree`.
    pub fn gram_matrix(&self, xi: WeightParam, degree: usize) -> ComplexMatrix {
        let basis: Vec<CoeffVector> = (0..=degree).map(|n| basis_vector(n, xi)).collect();
        let mut g = ComplexMatrix::zeros(degree + 1, degree + 1);
        for (n, en) in basis.iter().enumerate() {
            let image = self.apply(en, degree);
            for (m, em) in basis.iter().enumerate() {
                g[(n, m)] = inner_product(&image, em, xi);
            }
        }
        g
    }
}

/// Largest `|G[(n,m)] - conj(G[(m,n)])|` and where it occurs.
pub fn hermitian_defect(g: &ComplexMatrix) -> (f64, (usize, usize)) {
    let mut worst = (0.0, (0, 0));
    for n in 0..g.nrows() {
        for m in n..g.ncols() {
            let d = (g[(n, m)] - g[(m, n)].conj()).norm();
            if d > worst.0 {
                worst = (d, (n, m));
            }
        }
    }
    worst
}

/// Largest `|G[(n,m)] + conj(G[(m,n)])|`.
pub fn skew_hermitian_defect(g: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for n in 0..g.nrows() {
        for m in n..g.ncols() {
            worst = worst.max((g[(n, m)] + g[(m, n)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The symmetric operators on polynomials:
/// `f = a0 + a1 z + conj(a0) z²`, `g = b0 + (ξ+2) conj(a0) z` with `a1, b0` real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricForm {
    pub a0: Complex64,
    pub a1: f64,
    pub b0: f64,
    pub xi: WeightParam,
}

impl SymmetricForm {
    pub fn to_op(self) -> FirstOrderOp {
        let ca0 = self.a0.conj();
        FirstOrderOp::new(
            CoeffVector::new(vec![self.a0, Complex64::new(self.a1, 0.0), ca0]),
            CoeffVector::new(vec![Complex64::new(self.b0, 0.0), ca0 * self.xi.shifted()]),
        )
    }

    /// Entries of the tridiagonal Gram matrix.
    pub fn tridiagonal(self, degree: usize) -> TriDiag {
        let xi = self.xi.xi();
        let sub = (1..=degree)
            .map(|n| {
                let n = n as f64;
                self.a0 * (n * (n + xi + 1.0)).sqrt()
            })
            .collect();
        let diag = (0..=degree)
            .map(|n| Complex64::new(n as f64 * self.a1 + self.b0, 0.0))
            .collect();
        let sup = (0..degree)
            .map(|n| {
                let n = n as f64;
                self.a0.conj() * ((n + xi + 2.0) * (n + 1.0)).sqrt()
            })
            .collect();
        TriDiag { sub, diag, sup }
    }

    pub fn params(self) -> SelfAdjointParams {
        SelfAdjointParams {
            a: self.a1,
            b: self.b0,
            c: self.a0.conj(),
        }
    }
}

/// Tridiagonal Gram matrix of a [`SymmetricForm`].
///
/// `sub[n-1] = ⟨L e_n, e_{n-1}⟩`, `diag[n] = ⟨L e_n, e_n⟩`, `sup[n] = ⟨L e_n, e_{n+1}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriDiag {
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    pub sup: Vec<Complex64>,
}

impl TriDiag {
    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.diag.len();
        let mut g = ComplexMatrix::zeros(n, n);
        for (k, &d) in self.diag.iter().enumerate() {
            g[(k, k)] = d;
        }
        for (k, &s) in self.sub.iter().enumerate() {
            g[(k + 1, k)] = s;
        }
        for (k, &s) in self.sup.iter().enumerate() {
            g[(k, k + 1)] = s;
        }
        g
    }

    pub fn is_hermitian(&self) -> bool {
        self.diag.iter().all(|d| d.im == 0.0) && self.sup.iter().zip(&self.sub).all(|(s, t)| *s == t.conj())
    }
}

pub fn symmetric_tridiagonal(sf: SymmetricForm, degree: usize) -> TriDiag {
    sf.tridiagonal(degree)
}

/// Which symmetry condition failed, with the offending coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryCondition {
    FDegree,
    GDegree,
    A1NotReal,
    B0NotReal,
    FQuadraticMismatch,
    GLinearMismatch,
}

impl SymmetryCondition {
    pub fn describe(self) -> &'static str {
        match self {
            Self::FDegree => "f has degree above 2",
            Self::GDegree => "g has degree above 1",
            Self::A1NotReal => "a1 not real",
            Self::B0NotReal => "b0 not real",
            Self::FQuadraticMismatch => "f2 != conj(f0)",
            Self::GLinearMismatch => "g1 != (xi+2) conj(f0)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub condition: SymmetryCondition,
    /// `"f"` or `"g"`.
    pub function: &'static str,
    pub index: usize,
    /// Size of the violation.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Symmetric { form: SymmetricForm },
    NotSymmetric { witness: Witness },
}

impl Verdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Self::Symmetric { .. })
    }
}

/// Decide whether `L` is symmetric on polynomials, reading the answer off
/// the coefficients of `f` and `g`.
pub fn classify_symmetric(op: &FirstOrderOp, xi: WeightParam, tol: f64) -> Verdict {
    let fail = |condition, function, index, defect| Verdict::NotSymmetric {
        witness: Witness {
            condition,
            function,
            index,
            defect,
        },
    };
    let (f, g) = (&op.f, &op.g);
    for k in 3..f.coeffs().len() {
        if f.get(k).norm() > tol {
            return fail(SymmetryCondition::FDegree, "f", k, f.get(k).norm());
        }
    }
    for k in 2..g.coeffs().len() {
        if g.get(k).norm() > tol {
            return fail(SymmetryCondition::GDegree, "g", k, g.get(k).norm());
        }
    }
    if f.get(1).im.abs() > tol {
        return fail(SymmetryCondition::A1NotReal, "f", 1, f.get(1).im.abs());
    }
    if g.get(0).im.abs() > tol {
        return fail(SymmetryCondition::B0NotReal, "g", 0, g.get(0).im.abs());
    }
    let a0 = f.get(0);
    let d = (f.get(2) - a0.conj()).norm();
    if d > tol {
        return fail(SymmetryCondition::FQuadraticMismatch, "f", 2, d);
    }
    let d = (g.get(1) - a0.conj() * xi.shifted()).norm();
    if d > tol {
        return fail(SymmetryCondition::GLinearMismatch, "g", 1, d);
    }
    Verdict::Symmetric {
        form: SymmetricForm {
            a0,
            a1: f.get(1).re,
            b0: g.get(0).re,
            xi,
        },
    }
}

/// `L = (c z² + a z + conj(c))·d/dz + ((ξ+2) c z + b)` with `a, b` real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfAdjointParams {
    pub a: f64,
    pub b: f64,
    #[serde(with = "crate::coeff::complex_pair")]
    pub c: Complex64,
}

impl SelfAdjointParams {
    pub fn form(self, xi: WeightParam) -> SymmetricForm {
        SymmetricForm {
            a0: self.c.conj(),
            a1: self.a,
            b0: self.b,
            xi,
        }
    }

    pub fn to_op(self, xi: WeightParam) -> FirstOrderOp {
        self.form(xi).to_op()
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).norm())
    }
}

/// `L = i·π_ξ(U) + d` with `U` given by basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepDecomposition {
    pub coords: BasisCoords,
    pub d: f64,
}

impl RepDecomposition {
    pub fn to_op(self, xi: WeightParam) -> FirstOrderOp {
        derived_op(LieElement::from_coords(self.coords), xi)
            .scale(I)
            .plus_scalar(Complex64::new(self.d, 0.0))
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        let (p, q) = (self.coords, other.coords);
        (p.sigma - q.sigma)
            .abs()
            .max((p.tau - q.tau).abs())
            .max((p.lambda - q.lambda).abs())
            .max((self.d - other.d).abs())
    }
}

/// Coefficient matching of `L` against `i·π_ξ(U) + d`.
pub fn to_rep(p: SelfAdjointParams, xi: WeightParam) -> RepDecomposition {
    RepDecomposition {
        coords: BasisCoords {
            sigma: p.a / 2.0 + p.c.re,
            tau: p.c.im,
            lambda: -p.c.re,
        },
        d: p.b - xi.shifted() * p.a / 2.0,
    }
}

/// Inverse of [`to_rep`].
pub fn from_rep(r: RepDecomposition, xi: WeightParam) -> SelfAdjointParams {
    let BasisCoords { sigma, tau, lambda } = r.coords;
    let a = 2.0 * (sigma + lambda);
    SelfAdjointParams {
        a,
        b: r.d + xi.shifted() * a / 2.0,
        c: Complex64::new(-lambda, tau),
    }
}

/// Gram matrix of `L1 L2 - L2 L1` on `e_0..e_degree`.
///
/// First-order operators lower degree by at most one, so applying both with
/// working degree `degree + 2` leaves every entry in the window exact.
pub fn commutator_matrix(l1: &FirstOrderOp, l2: &FirstOrderOp, xi: WeightParam, degree: usize) -> ComplexMatrix {
    let work = degree + 2;
    let basis: Vec<CoeffVector> = (0..=degree).map(|n| basis_vector(n, xi)).collect();
    let mut g = ComplexMatrix::zeros(degree + 1, degree + 1);
    for (n, en) in basis.iter().enumerate() {
        let h = &l1.apply(&l2.apply(en, work), work) - &l2.apply(&l1.apply(en, work), work);
        for (m, em) in basis.iter().enumerate() {
            g[(n, m)] = inner_product(&h, em, xi);
        }
    }
    g
}

/// `Some(η)` when `L` is within `tol` of multiplication by `η`.
pub fn is_scalar_op(op: &FirstOrderOp, tol: f64) -> Option<Complex64> {
    let f_small = op.f.coeffs().iter().all(|c| c.norm() <= tol);
    let g_small = op.g.coeffs().iter().skip(1).all(|c| c.norm() <= tol);
    (f_small && g_small).then(|| op.g.get(0))
}

/// `Some(η)` when the matrix is within `tol` of `η·I`.
pub fn is_scalar_matrix(m: &ComplexMatrix, tol: f64) -> Option<Complex64> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return None;
    }
    let eta = m[(0, 0)];
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { eta } else { Complex64::new(0.0, 0.0) };
            if (m[(i, j)] - target).norm() > tol {
                return None;
            }
        }
    }
    Some(eta)
}

/// Distance from scalar: largest non-constant coefficient.
pub fn off_scalar_margin(op: &FirstOrderOp) -> f64 {
    op.f.coeffs()
        .iter()
        .chain(op.g.coeffs().iter().skip(1))
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZhuReport {
    pub xi: f64,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    /// Samples whose commutator was scalar (necessarily zero).
    pub scalar_hits: usize,
    pub violations: usize,
    /// Smallest distance from scalar among non-scalar commutators.
    pub min_margin: f64,
    pub max_margin: f64,
    pub mean_margin: f64,
}

/// Draw random pairs `(U, V)` and confirm `π_ξ([U, V])` is never a nonzero scalar.
///
/// Every 50th sample uses `V = 2U` so the zero-bracket path is exercised.
/// A nonzero scalar is reported as [`Error::ScalarCommutator`].
pub fn zhu_scan(samples: usize, xi: WeightParam, seed: u64, tol: f64) -> Result<ZhuReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ZhuReport {
        xi: xi.xi(),
        seed,
        samples,
        tol,
        scalar_hits: 0,
        violations: 0,
        min_margin: f64::INFINITY,
        max_margin: 0.0,
        mean_margin: 0.0,
    };
    let mut margin_sum = 0.0;
    let mut counted = 0usize;
    for sample in 0..samples {
        let u = LieElement::random(&mut rng, 1.0);
        let v = if sample % 50 == 49 {
            u.scale(2.0)
        } else {
            LieElement::random(&mut rng, 1.0)
        };
        let op = derived_op(bracket(u, v), xi);
        match is_scalar_op(&op, tol) {
            Some(eta) if eta.norm() > tol => {
                return Err(Error::ScalarCommutator {
                    sample,
                    re: eta.re,
                    im: eta.im,
                });
            }
            Some(_) => report.scalar_hits += 1,
            None => {
                let m = off_scalar_margin(&op);
                report.min_margin = report.min_margin.min(m);
                report.max_margin = report.max_margin.max(m);
                margin_sum += m;
                counted += 1;
            }
        }
    }
    if counted > 0 {
        report.mean_margin = margin_sum / counted as f64;
    }
    Ok(report)
}
