//! `su(1,1)` and `SU(1,1)` as concrete 2×2 matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GROUP_TOL: f64 = 1e-8;

/// The Lie algebra element `[[i a, b], [conj(b), -i a]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieElement {
    pub a: f64,
    pub b: Complex64,
}

/// Coordinates `(σ, τ, λ)` in the basis `(𝔛, 𝔜, ℨ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisCoords {
    pub sigma: f64,
    pub tau: f64,
    pub lambda: f64,
}

impl LieElement {
    pub const ZERO: Self = Self::new(0.0, Complex64::new(0.0, 0.0));

    pub const fn new(a: f64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// `𝔛 = diag(i, -i)`, generator of the rotations.
    pub const fn x() -> Self {
        Self::new(1.0, Complex64::new(0.0, 0.0))
    }

    /// `𝔜 = [[0, 1], [1, 0]]`.
    pub const fn y() -> Self {
        Self::new(0.0, Complex64::new(1.0, 0.0))
    }

    /// `ℨ = [[i, -i], [i, -i]]`, nilpotent.
    pub const fn z() -> Self {
        Self::new(1.0, Complex64::new(0.0, -1.0))
    }

    /// `𝔚 = [[0, -i], [i, 0]] = ℨ - 𝔛`.
    pub const fn w() -> Self {
        Self::new(0.0, Complex64::new(0.0, -1.0))
    }

    /// Entries `a` uniform in [-scale, scale], `b` in the square of the same half-width.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        Self::new(
            rng.random_range(-scale..=scale),
            Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale)),
        )
    }

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let ia = Complex64::new(0.0, self.a);
        [[ia, self.b], [self.b.conj(), -ia]]
    }

    /// Read `(a, b)` off a matrix of the su(1,1) shape.
    ///
    /// Only the upper row is used; [`is_su11_shape`] checks the rest.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Self {
        Self::new(m[0][0].im, m[0][1])
    }

    pub fn coords(self) -> BasisCoords {
        BasisCoords {
            sigma: self.a + self.b.im,
            tau: self.b.re,
            lambda: -self.b.im,
        }
    }

    pub fn from_coords(c: BasisCoords) -> Self {
        Self::new(c.sigma + c.lambda, Complex64::new(c.tau, -c.lambda))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s)
    }

    /// `|b|² - a²`; the matrix squares to this multiple of the identity.
    pub fn square_scalar(self) -> f64 {
        self.b.norm_sqr() - self.a * self.a
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).norm())
    }

    /// `exp(tU)` in closed form.
    pub fn exp_at(self, t: f64) -> GroupElement {
        // U² = μ² I, so exp(tU) = cosh(tμ) I + sinh(tμ)/μ U. With μ complex the
        // formula covers both signs of μ²; both factors are real.
        let mu = Complex64::new(self.square_scalar(), 0.0).sqrt();
        let (ch, sh_over_mu) = if mu.norm() * t.abs() < 1e-4 {
            let x2 = self.square_scalar() * t * t;
            (1.0 + x2 / 2.0 + x2 * x2 / 24.0, t * (1.0 + x2 / 6.0 + x2 * x2 / 120.0))
        } else {
            let tm = mu * t;
            (tm.cosh().re, (tm.sinh() / mu).re)
        };
        GroupElement {
            alpha: Complex64::new(ch, self.a * sh_over_mu),
            beta: self.b * sh_over_mu,
        }
    }
}

impl Add for LieElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for LieElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

fn matmul(p: [[Complex64; 2]; 2], q: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    out
}

/// Trace zero, imaginary diagonal, conjugate-symmetric off-diagonal.
pub fn is_su11_shape(m: [[Complex64; 2]; 2]) -> bool {
    m[0][0].re == 0.0 && m[1][1] == -m[0][0] && m[1][0] == m[0][1].conj()
}

/// Matrix commutator `UV - VU`.
pub fn bracket(u: LieElement, v: LieElement) -> LieElement {
    let (p, q) = (u.matrix(), v.matrix());
    let uv = matmul(p, q);
    let vu = matmul(q, p);
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = uv[i][j] - vu[i][j];
        }
    }
    LieElement::from_matrix(m)
}

/// The four named elements `(𝔛, 𝔜, ℨ, 𝔚)`.
pub fn derived_basis_constants() -> [LieElement; 4] {
    [LieElement::x(), LieElement::y(), LieElement::z(), LieElement::w()]
}

/// The group element `[[α, β], [conj(β), conj(α)]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    alpha: Complex64,
    beta: Complex64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Validates `|α|² - |β|² = 1`, rescaling when within `1e-8`.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        let defect = (det - 1.0).abs();
        if !defect.is_finite() || defect > GROUP_TOL {
            return Err(Error::NotInGroup(defect));
        }
        let s = det.sqrt().recip();
        Ok(Self {
            alpha: alpha * s,
            beta: beta * s,
        })
    }

    pub fn alpha(self) -> Complex64 {
        self.alpha
    }

    pub fn beta(self) -> Complex64 {
        self.beta
    }

    pub fn det(self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn inverse(self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Matrix product followed by renormalization.
    pub fn compose(self, rhs: Self) -> Result<Self> {
        Self::new(
            self.alpha * rhs.alpha + self.beta * rhs.beta.conj(),
            self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        )
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.alpha - other.alpha).norm().max((self.beta - other.beta).norm())
    }

    /// Random element `exp(U)` with `U` drawn at the given scale.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        LieElement::random(rng, scale).exp_at(1.0)
    }
}

impl Mul for GroupElement {
    type Output = Result<Self>;
    fn mul(self, rhs: Self) -> Result<Self> {
        self.compose(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct LieElementRepr {
    a: f64,
    b_re: f64,
    b_im: f64,
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieElementRepr {
            a: self.a,
            b_re: self.b.re,
            b_im: self.b.im,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LieElementRepr::deserialize(d)?;
        Ok(Self::new(r.a, Complex64::new(r.b_re, r.b_im)))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupElementRepr {
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupElementRepr {
            alpha_re: self.alpha.re,
            alpha_im: self.alpha.im,
            beta_re: self.beta.re,
            beta_im: self.beta.im,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupElementRepr::deserialize(d)?;
        Self::new(
            Complex64::new(r.alpha_re, r.alpha_im),
            Complex64::new(r.beta_re, r.beta_im),
        )
        .map_err(serde::de::Error::custom)
    }
}
