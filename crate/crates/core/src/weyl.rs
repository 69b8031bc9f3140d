//! 2×2 complex matrices in the (s, p) polarization basis.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A 2×2 complex matrix indexed by polarization `(s, p) × (s, p)`.
///
/// Row/column 0 is s, 1 is p.
#[derive(Clone, Copy, PartialEq)]
pub struct WeylMatrix(pub [[C64; 2]; 2]);

impl WeylMatrix {
    pub const ZERO: WeylMatrix = WeylMatrix([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: WeylMatrix = WeylMatrix([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(ss: C64, sp: C64, ps: C64, pp: C64) -> Self {
        WeylMatrix([[ss, sp], [ps, pp]])
    }

    pub fn diag(s: C64, p: C64) -> Self {
        WeylMatrix([[s, ZERO], [ZERO, p]])
    }

    pub fn real_diag(s: f64, p: f64) -> Self {
        Self::diag(C64::new(s, 0.0), C64::new(p, 0.0))
    }

    pub fn ss(&self) -> C64 {
        self.0[0][0]
    }
    pub fn sp(&self) -> C64 {
        self.0[0][1]
    }
    pub fn ps(&self) -> C64 {
        self.0[1][0]
    }
    pub fn pp(&self) -> C64 {
        self.0[1][1]
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse, or `None` when `|det| <= floor`.
    pub fn try_inverse(&self, floor: f64) -> Option<WeylMatrix> {
        let det = self.det();
        if !(det.norm() > floor) {
            return None;
        }
        let inv = det.inv();
        let [[a, b], [c, d]] = self.0;
        Some(WeylMatrix([[d * inv, -b * inv], [-c * inv, a * inv]]))
    }

    pub fn transpose(&self) -> WeylMatrix {
        let [[a, b], [c, d]] = self.0;
        WeylMatrix([[a, c], [b, d]])
    }

    /// Element-wise complex conjugate.
    pub fn conj(&self) -> WeylMatrix {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> WeylMatrix {
        self.transpose().conj()
    }

    pub fn scale(&self, k: C64) -> WeylMatrix {
        self.map(|x| x * k)
    }

    pub fn scale_re(&self, k: f64) -> WeylMatrix {
        self.map(|x| x * k)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> WeylMatrix {
        let [[a, b], [c, d]] = self.0;
        WeylMatrix([[f(a), f(b)], [f(c), f(d)]])
    }

    pub fn is_diagonal(&self) -> bool {
        self.0[0][1] == ZERO && self.0[1][0] == ZERO
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Default for WeylMatrix {
    fn default() -> Self {
        WeylMatrix::ZERO
    }
}

impl fmt::Debug for WeylMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Add for WeylMatrix {
    type Output = WeylMatrix;
    fn add(self, rhs: WeylMatrix) -> WeylMatrix {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for WeylMatrix {
    fn add_assign(&mut self, rhs: WeylMatrix) {
        for i in 0..2 {
            for j in 0..2 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for WeylMatrix {
    type Output = WeylMatrix;
    fn sub(self, rhs: WeylMatrix) -> WeylMatrix {
        self + (-rhs)
    }
}

impl Neg for WeylMatrix {
    type Output = WeylMatrix;
    fn neg(self) -> WeylMatrix {
        self.map(|x| -x)
    }
}

impl Mul for WeylMatrix {
    type Output = WeylMatrix;
    fn mul(self, rhs: WeylMatrix) -> WeylMatrix {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        WeylMatrix(out)
    }
}

impl Mul<C64> for WeylMatrix {
    type Output = WeylMatrix;
    fn mul(self, k: C64) -> WeylMatrix {
        self.scale(k)
    }
}

impl Mul<f64> for WeylMatrix {
    type Output = WeylMatrix;
    fn mul(self, k: f64) -> WeylMatrix {
        self.scale_re(k)
    }
}
