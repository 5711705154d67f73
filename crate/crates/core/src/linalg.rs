//! Fixed-arity complex linear algebra for one and two qubits.
//!
//! Only 2×2 and 4×4 operators exist here. Two-qubit vectors use the basis
//! `|00⟩, |01⟩, |10⟩, |11⟩` with the right-going particle as the first
//! (most significant) factor, so `Mat4::kron(right, left)` acts on the right
//! particle with `right` and on the left particle with `left`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used for every amplitude and matrix entry.
pub type ComplexScalar = Complex64;

/// Max-norm defect below which an operator counts as unitary.
pub const UNITARY_TOL: f64 = 1e-12;

/// Allowed deviation of Σ|amplitude|² from one.
pub const NORM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn all_finite<'a>(it: impl IntoIterator<Item = &'a Complex64>) -> bool {
    it.into_iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Operations shared by [`Mat2`] and [`Mat4`].
pub trait Operator: Copy + Mul<Output = Self> {
    fn identity() -> Self;
    fn adjoint(&self) -> Self;
    /// `max |a_ij - b_ij|`.
    fn max_abs_diff(&self, other: &Self) -> f64;
    fn is_finite(&self) -> bool;

    /// `‖M†M − I‖_max`.
    fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }
}

/// Free-function form of [`Operator::unitarity_defect`].
pub fn unitarity_defect<M: Operator>(m: &M) -> f64 {
    m.unitarity_defect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Mat2(entries)
    }

    pub fn diag(d0: Complex64, d1: Complex64) -> Self {
        Mat2([[d0, ZERO], [ZERO, d1]])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    pub fn apply(&self, v: &StateVec2) -> StateVec2 {
        let m = &self.0;
        let [a, b] = v.0;
        StateVec2([m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Operator for Mat2 {
    fn identity() -> Self {
        Mat2::diag(ONE, ONE)
    }

    fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        all_finite(self.0.iter().flatten())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[Complex64; 4]; 4]);

impl Mat4 {
    /// Kronecker product `a ⊗ b`: `a` acts on the first (right-going)
    /// particle, `b` on the second (left-going) one.
    pub fn kron(a: &Mat2, b: &Mat2) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a.0[i / 2][j / 2] * b.0[i % 2][j % 2];
            }
        }
        Mat4(out)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = self.0;
        out.iter_mut().flatten().for_each(|z| *z *= k);
        Mat4(out)
    }

    /// Matrix-vector product. Rejects non-finite or non-unitary operators so
    /// the result is always a normalized state.
    pub fn apply(&self, v: &StateVec4) -> Result<StateVec4> {
        if !self.is_finite() {
            return Err(Error::NonFinite("operator"));
        }
        let defect = self.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(StateVec4(self.apply_unchecked(&v.0)))
    }

    fn apply_unchecked(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v).map(|(m, x)| m * x).sum();
        }
        out
    }
}

/// Kronecker product of two single-qubit operators.
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::kron(a, b)
}

/// Applies a unitary two-qubit operator to a state.
pub fn apply4(m: &Mat4, v: &StateVec4) -> Result<StateVec4> {
    m.apply(v)
}

impl Mul for Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat4(out)
    }
}

impl Operator for Mat4 {
    fn identity() -> Self {
        let mut out = [[ZERO; 4]; 4];
        (0..4).for_each(|i| out[i][i] = ONE);
        Mat4(out)
    }

    fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[j][i].conj();
            }
        }
        Mat4(out)
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        all_finite(self.0.iter().flatten())
    }
}

/// Single-qubit amplitude pair `(⟨0|ψ⟩, ⟨1|ψ⟩)`. Not required to be normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVec2(pub [Complex64; 2]);

impl StateVec2 {
    pub fn real(a: f64, b: f64) -> Self {
        StateVec2([Complex64::new(a, 0.0), Complex64::new(b, 0.0)])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVec2) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// Tensor product `self ⊗ other` as raw (unchecked) amplitudes.
    pub fn tensor(&self, other: &StateVec2) -> [Complex64; 4] {
        let [a0, a1] = self.0;
        let [b0, b1] = other.0;
        [a0 * b0, a0 * b1, a1 * b0, a1 * b1]
    }
}

/// Normalized two-qubit pure state.
///
/// Construction checks finiteness and unit norm within [`NORM_TOL`]; every
/// value of this type therefore satisfies both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVec4([Complex64; 4]);

impl StateVec4 {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if !all_finite(&amplitudes) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(StateVec4(amplitudes))
    }

    pub fn from_real(amplitudes: [f64; 4]) -> Result<Self> {
        Self::new(amplitudes.map(|a| Complex64::new(a, 0.0)))
    }

    /// Scales arbitrary non-zero finite amplitudes to unit norm.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        if !all_finite(&amplitudes) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n: f64 = amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt();
        if n == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(amplitudes.map(|a| a / n))
    }

    /// Computational basis vector `|ij⟩` with `index = 2i + j`. Panics if
    /// `index > 3`.
    pub fn basis(index: usize) -> Self {
        let mut a = [ZERO; 4];
        a[index] = ONE;
        StateVec4(a)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVec4) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    /// Computational-basis probabilities `|⟨ij|ψ⟩|²`.
    pub fn probabilities(&self) -> [f64; 4] {
        self.0.map(|a| a.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &StateVec4) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bs() -> Mat2 {
        Mat2([[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(1.0, 0.0)]]).scale(c(FRAC_1_SQRT_2, 0.0))
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i4 = kron2(&Mat2::identity(), &Mat2::identity());
        assert_eq!(i4.max_abs_diff(&Mat4::identity()), 0.0);
    }

    #[test]
    fn kron_bs_bs_on_ground_state() {
        // (BS|0⟩) ⊗ (BS|0⟩) = ½(1, i, i, −1)
        let out = apply4(&kron2(&bs(), &bs()), &StateVec4::basis(0)).unwrap();
        let expected = [c(0.5, 0.0), c(0.0, 0.5), c(0.0, 0.5), c(-0.5, 0.0)];
        let exp = StateVec4::new(expected).unwrap();
        assert!(out.max_abs_diff(&exp) < 1e-15);
    }

    #[test]
    fn kron_matches_tensor_of_vectors() {
        let a = bs();
        let b = Mat2::diag(c(0.0, 1.0), c(1.0, 0.0)) * bs();
        let u = StateVec2::real(0.6, 0.8);
        let v = StateVec2([c(0.0, 1.0), c(0.0, 0.0)]);
        let lhs = kron2(&a, &b).apply_unchecked(&u.tensor(&v));
        let rhs = a.apply(&u).tensor(&b.apply(&v));
        for k in 0..4 {
            assert!((lhs[k] - rhs[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn apply_identity_is_noop() {
        let v = StateVec4::from_real([0.5, 0.5, 0.5, 0.5]).unwrap();
        assert_eq!(apply4(&Mat4::identity(), &v).unwrap(), v);
    }

    #[test]
    fn defect_of_scaled_identity() {
        assert_eq!(Mat2::identity().scale(c(2.0, 0.0)).unitarity_defect(), 3.0);
        assert_eq!(unitarity_defect(&Mat4::identity().scale(c(2.0, 0.0))), 3.0);
        assert!(bs().unitarity_defect() <= 1e-15);
    }

    #[test]
    fn apply_rejects_bad_operators() {
        let v = StateVec4::basis(1);
        let twice = Mat4::identity().scale(c(2.0, 0.0));
        assert!(matches!(twice.apply(&v), Err(Error::NotUnitary(_))));
        let mut nan = Mat4::identity();
        nan.0[2][3] = c(f64::NAN, 0.0);
        assert_eq!(nan.apply(&v), Err(Error::NonFinite("operator")));
    }

    #[test]
    fn state_construction_checks() {
        assert!(matches!(
            StateVec4::from_real([1.0, 1.0, 0.0, 0.0]),
            Err(Error::NotNormalized(_))
        ));
        assert!(StateVec4::from_real([f64::INFINITY, 0.0, 0.0, 0.0]).is_err());
        assert!(StateVec4::normalized([ZERO; 4]).is_err());
        let v = StateVec4::normalized([ONE; 4]).unwrap();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-15);
    }
}
