//! Holomorphic functions stored as finite Taylor-coefficient sequences.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Taylor coefficients `a_0, ..., a_N` of a polynomial at the origin.
///
/// The truncation degree is an artifact of storage: two vectors compare
/// equal when they agree after trailing zeros are dropped.
#[derive(Debug, Clone, Default)]
pub struct CoeffVector {
    coeffs: Vec<Complex64>,
}

impl CoeffVector {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_reals(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero function stored at degree `degree`.
    pub fn zeros(degree: usize) -> Self {
        Self::new(vec![ZERO; degree + 1])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut v = Self::zeros(k);
        v.coeffs[k] = Complex64::new(1.0, 0.0);
        v
    }

    /// Random coefficients with real and imaginary parts uniform in [-1, 1].
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Self {
        Self::new(
            (0..=degree)
                .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Storage degree `N` (length minus one); an empty vector has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Largest index with a nonzero coefficient, `None` for the zero function.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    /// Coefficient of `z^k`, zero beyond the stored range.
    pub fn get(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Drop trailing zeros (keeps at least the constant slot).
    pub fn normalized(&self) -> Self {
        let len = self.effective_degree().map_or(1, |d| d + 1);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, ZERO);
        Self::new(coeffs)
    }

    /// Keep degrees `0..=degree`, zero-padding when shorter.
    pub fn truncated(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, ZERO);
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zeros(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Multiply by `z`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficientwise map `a_k -> m(k) a_k`.
    pub fn map_indexed(&self, mut m: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, &c)| m(k, c)).collect())
    }

    /// Cauchy product, truncated at `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let len = (self.coeffs.len() + other.coeffs.len())
            .saturating_sub(1)
            .min(max_degree + 1);
        let mut out = vec![ZERO; len.max(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).map(|k| (self.get(k) - other.get(k)).norm()).fold(0.0, f64::max)
    }

    /// Euclidean distance of the coefficient sequences.
    pub fn l2_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.get(k) - other.get(k)).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl PartialEq for CoeffVector {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.get(k) == other.get(k))
    }
}

impl From<Vec<Complex64>> for CoeffVector {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs)
    }
}

fn zip_with(a: &CoeffVector, b: &CoeffVector, op: impl Fn(Complex64, Complex64) -> Complex64) -> CoeffVector {
    let n = a.coeffs.len().max(b.coeffs.len());
    CoeffVector::new((0..n).map(|k| op(a.get(k), b.get(k))).collect())
}

impl Add for &CoeffVector {
    type Output = CoeffVector;
    fn add(self, rhs: Self) -> CoeffVector {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &CoeffVector {
    type Output = CoeffVector;
    fn sub(self, rhs: Self) -> CoeffVector {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &CoeffVector {
    type Output = CoeffVector;
    fn neg(self) -> CoeffVector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &CoeffVector {
    type Output = CoeffVector;
    fn mul(self, rhs: Complex64) -> CoeffVector {
        self.scale(rhs)
    }
}

pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Pair([f64; 2]),
        Real(f64),
    }

    impl From<Repr> for Complex64 {
        fn from(r: Repr) -> Self {
            match r {
                Repr::Pair([re, im]) => Complex64::new(re, im),
                Repr::Real(re) => Complex64::new(re, 0.0),
            }
        }
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    /// Accepts `[re, im]` or a bare real.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Repr::deserialize(d).map(Complex64::from)
    }
}

// JSON form: array of [re, im] pairs indexed by Taylor degree; bare reals are accepted on input.
impl Serialize for CoeffVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<complex_pair::Repr>::deserialize(deserializer)?;
        Ok(Self::new(entries.into_iter().map(Complex64::from).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trailing_zeros_do_not_affect_equality() {
        let a = CoeffVector::from_reals(&[1.0, 2.0]);
        let b = CoeffVector::from_reals(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(a, b);
        assert_eq!(b.normalized().degree(), 1);
        assert_ne!(a, CoeffVector::from_reals(&[1.0, 2.0, 1e-300]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = CoeffVector::from_reals(&[1.0, 0.0, 3.0]);
        assert_eq!(f.derivative(), CoeffVector::from_reals(&[0.0, 6.0]));
        assert_eq!(f.eval(c(2.0, 0.0)), c(13.0, 0.0));
        assert!(CoeffVector::constant(c(4.0, 1.0)).derivative().is_zero());
    }

    #[test]
    fn cauchy_product_truncates() {
        let f = CoeffVector::from_reals(&[1.0, 1.0]);
        let sq = f.mul_truncated(&f, 10);
        assert_eq!(sq, CoeffVector::from_reals(&[1.0, 2.0, 1.0]));
        assert_eq!(f.mul_truncated(&f, 1), CoeffVector::from_reals(&[1.0, 2.0]));
    }

    #[test]
    fn json_round_trip_uses_pairs() {
        let f = CoeffVector::new(vec![c(1.0, 0.0), c(0.0, -2.5)]);
        let text = serde_json::to_string(&f).unwrap();
        let back: CoeffVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let mixed: CoeffVector = serde_json::from_str("[0.5,[0,2]]").unwrap();
        assert_eq!(mixed, CoeffVector::new(vec![c(0.5, 0.0), c(0.0, 2.0)]));
        let parsed: CoeffVector = serde_json::from_str("[[0,0],[1,0]]").unwrap();
        assert_eq!(parsed, CoeffVector::monomial(1));
    }
}
