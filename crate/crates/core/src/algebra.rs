//! Real Cayley-Dickson algebras: structure constants, amplitude arithmetic,
//! quadratic, bilinear and trace forms, inverses.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::scalar::{Rational, Scalar};

/// The seven real composition algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    R,
    C,
    SplitC,
    H,
    SplitH,
    O,
    SplitO,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 7] = [
        AlgebraKind::R,
        AlgebraKind::C,
        AlgebraKind::SplitC,
        AlgebraKind::H,
        AlgebraKind::SplitH,
        AlgebraKind::O,
        AlgebraKind::SplitO,
    ];

    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::R => 1,
            AlgebraKind::C | AlgebraKind::SplitC => 2,
            AlgebraKind::H | AlgebraKind::SplitH => 4,
            AlgebraKind::O | AlgebraKind::SplitO => 8,
        }
    }

    pub fn is_split(self) -> bool {
        matches!(
            self,
            AlgebraKind::SplitC | AlgebraKind::SplitH | AlgebraKind::SplitO
        )
    }

    pub fn is_associative(self) -> bool {
        !matches!(self, AlgebraKind::O | AlgebraKind::SplitO)
    }

    /// Q is positive definite.
    pub fn is_positive_definite(self) -> bool {
        matches!(self, AlgebraKind::R | AlgebraKind::C | AlgebraKind::H)
    }

    /// Doubling parameters mu, innermost first: `(a,b)(c,d) = (ac + mu d*b, da + bc*)`.
    fn doubling_params(self) -> &'static [i64] {
        match self {
            AlgebraKind::R => &[],
            AlgebraKind::C => &[-1],
            AlgebraKind::SplitC => &[1],
            AlgebraKind::H => &[-1, -1],
            AlgebraKind::SplitH => &[-1, 1],
            AlgebraKind::O => &[-1, -1, -1],
            AlgebraKind::SplitO => &[-1, -1, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::R => "R",
            AlgebraKind::C => "C",
            AlgebraKind::SplitC => "C'",
            AlgebraKind::H => "H",
            AlgebraKind::SplitH => "H'",
            AlgebraKind::O => "O",
            AlgebraKind::SplitO => "O'",
        }
    }

    /// Identifier-safe spelling.
    pub fn tag(self) -> &'static str {
        match self {
            AlgebraKind::SplitC => "SplitC",
            AlgebraKind::SplitH => "SplitH",
            AlgebraKind::SplitO => "SplitO",
            k => k.name(),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error(
    "unknown algebra kind `{0}` (expected one of R, C, C', H, H', O, O' or SplitC, SplitH, SplitO)"
)]
pub struct UnknownAlgebraKind(pub alloc::string::String);

impl FromStr for AlgebraKind {
    type Err = UnknownAlgebraKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.tag() == s)
            .ok_or_else(|| UnknownAlgebraKind(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: AlgebraKind,
        found: AlgebraKind,
    },
    #[error("{kind} amplitudes have {expected} coefficients, got {found}")]
    WrongLength {
        kind: AlgebraKind,
        expected: usize,
        found: usize,
    },
    #[error("a * conj(a) has a non-real part")]
    NonScalarProduct,
    #[error("a + conj(a) has a non-real part")]
    NonScalarSum,
    #[error("amplitude is not invertible (Q(a) = 0)")]
    NotInvertible,
}

/// Coefficient vector over an algebra basis `e_0 .. e_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude<S> {
    kind: AlgebraKind,
    coeffs: Vec<S>,
}

impl<S: Scalar> Amplitude<S> {
    pub fn new(kind: AlgebraKind, coeffs: Vec<S>) -> Result<Self, AlgebraError> {
        if coeffs.len() != kind.dim() {
            return Err(AlgebraError::WrongLength {
                kind,
                expected: kind.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Amplitude { kind, coeffs })
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Amplitude {
            kind,
            coeffs: vec![S::zero(); kind.dim()],
        }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::scalar(kind, S::one())
    }

    /// `value * e_0`.
    pub fn scalar(kind: AlgebraKind, value: S) -> Self {
        let mut a = Self::zero(kind);
        a.coeffs[0] = value;
        a
    }

    /// Basis element `e_r`.
    ///
    /// # Panics
    /// If `r` is not below the dimension.
    pub fn basis(kind: AlgebraKind, r: usize) -> Self {
        let mut a = Self::zero(kind);
        a.coeffs[r] = S::one();
        a
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// All non-real coefficients vanish (exactly, or relative to the squared norm).
    pub fn is_scalar(&self) -> bool {
        let scale = self.norm_scale();
        self.coeffs[1..].iter().all(|c| c.is_negligible(&scale))
    }

    /// Sum of squared coefficients; the reference size for float tolerances.
    pub fn norm_scale(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn real_part(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn conj(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            *c = -c.clone();
        }
        Amplitude {
            kind: self.kind,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Amplitude {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, lambda: &S) -> Self {
        Amplitude {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * lambda.clone())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_kind(other)?;
        Ok(Amplitude {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_kind(other)?;
        Ok(Amplitude {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// Coefficient-wise closeness (exact equality for rationals).
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        self.kind == other.kind
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.close_to(b, tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Amplitude<T> {
        Amplitude {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn same_kind(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch {
                expected: self.kind,
                found: other.kind,
            })
        }
    }
}

impl<S: Scalar> fmt::Display for Amplitude<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A Cayley-Dickson algebra with its basis multiplication table.
///
/// Every product of two basis elements is a signed basis element, so the
/// table stores `e_i e_j = sign * e_k` as `(k, sign)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    kind: AlgebraKind,
    table: Vec<(usize, i8)>,
}

impl Algebra {
    pub fn new(kind: AlgebraKind) -> Self {
        let n = kind.dim();
        let params = kind.doubling_params();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut x = vec![0i64; n];
                let mut y = vec![0i64; n];
                x[i] = 1;
                y[j] = 1;
                let p = cd_mul(&x, &y, params);
                let mut nonzero = p.iter().enumerate().filter(|(_, v)| **v != 0);
                let (k, v) = nonzero.next().expect("basis product vanished");
                debug_assert!(nonzero.next().is_none() && v.abs() == 1);
                table.push((k, *v as i8));
            }
        }
        Algebra { kind, table }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// `e_i e_j = sign * e_k`.
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        self.table[i * self.dim() + j]
    }

    /// Structure constant `f_ijk` in `e_i e_j = sum_k f_ijk e_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> i8 {
        let (kk, s) = self.basis_product(i, j);
        if kk == k {
            s
        } else {
            0
        }
    }

    /// Action of conjugation on `e_r`.
    pub fn conj_sign(&self, r: usize) -> i8 {
        if r == 0 {
            1
        } else {
            -1
        }
    }

    pub fn check<S: Scalar>(&self, a: &Amplitude<S>) -> Result<(), AlgebraError> {
        if a.kind == self.kind {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch {
                expected: self.kind,
                found: a.kind,
            })
        }
    }

    pub fn mul<S: Scalar>(
        &self,
        a: &Amplitude<S>,
        b: &Amplitude<S>,
    ) -> Result<Amplitude<S>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let out = S::structured_product(&a.coeffs, &b.coeffs, &self.table);
        Ok(Amplitude {
            kind: self.kind,
            coeffs: out,
        })
    }

    pub fn add<S: Scalar>(
        &self,
        a: &Amplitude<S>,
        b: &Amplitude<S>,
    ) -> Result<Amplitude<S>, AlgebraError> {
        self.check(a)?;
        a.add(b)
    }

    pub fn neg<S: Scalar>(&self, a: &Amplitude<S>) -> Result<Amplitude<S>, AlgebraError> {
        self.check(a)?;
        Ok(a.neg())
    }

    pub fn conj<S: Scalar>(&self, a: &Amplitude<S>) -> Result<Amplitude<S>, AlgebraError> {
        self.check(a)?;
        Ok(a.conj())
    }

    /// `Q(a)` with `Q(a) 1 = a conj(a)`.
    pub fn quadratic_form<S: Scalar>(&self, a: &Amplitude<S>) -> Result<S, AlgebraError> {
        let p = self.mul(a, &a.conj())?;
        let scale = a.norm_scale();
        if p.coeffs[1..].iter().all(|c| c.is_negligible(&scale)) {
            Ok(p.coeffs[0].clone())
        } else {
            Err(AlgebraError::NonScalarProduct)
        }
    }

    /// `B(a, b) = Q(a + b) - Q(a) - Q(b)`.
    pub fn bilinear_form<S: Scalar>(
        &self,
        a: &Amplitude<S>,
        b: &Amplitude<S>,
    ) -> Result<S, AlgebraError> {
        let s = self.add(a, b)?;
        Ok(self.quadratic_form(&s)? - self.quadratic_form(a)? - self.quadratic_form(b)?)
    }

    /// `T(a)` with `T(a) 1 = a + conj(a)`.
    pub fn trace_form<S: Scalar>(&self, a: &Amplitude<S>) -> Result<S, AlgebraError> {
        let s = self.add(a, &a.conj())?;
        let scale = a.norm_scale();
        if s.coeffs[1..].iter().all(|c| c.is_negligible(&scale)) {
            Ok(s.coeffs[0].clone())
        } else {
            Err(AlgebraError::NonScalarSum)
        }
    }

    /// `conj(a) / Q(a)`.
    pub fn inverse<S: Scalar>(&self, a: &Amplitude<S>) -> Result<Amplitude<S>, AlgebraError> {
        let q = self.quadratic_form(a)?;
        if q.is_negligible(&S::one()) {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(a.conj().scale(&(S::one() / q)))
    }

    /// Matrix `G_rs = B(e_r, e_s)`.
    pub fn gram_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|s| {
                        self.bilinear_form(
                            &Amplitude::basis(self.kind, r),
                            &Amplitude::basis(self.kind, s),
                        )
                        .expect("basis forms are scalar")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn gram_determinant(&self) -> Rational {
        determinant(self.gram_matrix())
    }
}

/// Cayley-Dickson product on integer coefficient vectors of length `2^params.len()`.
fn cd_mul(x: &[i64], y: &[i64], params: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let inner = &params[..params.len() - 1];
    let mu = params[params.len() - 1];
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c, inner);
    let db = cd_mul(&cd_conj(d), b, inner);
    let da = cd_mul(d, a, inner);
    let bc = cd_mul(b, &cd_conj(c), inner);
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p + mu * q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { *v } else { -*v })
        .collect()
}

/// Gaussian elimination over the rationals.
pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / p.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= src.clone() * f.clone();
            }
        }
    }
    det
}
