//! Forward-mode automatic differentiation scalars.
//!
//! [`Dual`] carries one directional derivative, [`HyperDual`] carries two
//! first-order directions plus the mixed second derivative (the classical
//! hyper-dual construction).  Both are generic over their component scalar,
//! so they nest: `HyperDual<Dual<f64>>` yields exact third directional
//! derivatives, `HyperDual<Dual<Dual<f64>>>` exact fourth, and so on.  The
//! generic engine differentiates entire field pipelines (metric, semispray,
//! connection) by instantiating them at nested types, which keeps every
//! geometric object at machine precision instead of stacking finite
//! differences.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar contract required by every differentiable computation in the crate.
pub trait AdScalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    /// Innermost real part (recurses through nesting levels).
    fn re(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;

    /// Non-negative integer power by repeated multiplication; exact for
    /// polynomial evaluation at any nesting depth.
    fn powu(self, mut k: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Real constant power via exp/ln; requires a positive real part.
    fn powf_c(self, e: f64) -> Self {
        (self.ln() * Self::from_f64(e)).exp()
    }

    /// Multiplication by an f64 constant.
    fn scale(self, c: f64) -> Self {
        self * Self::from_f64(c)
    }
}

impl AdScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

/// First-order dual number `re + ε·du` with `ε² = 0`.
#[derive(Debug, Clone, Copy)]
pub struct Dual<T> {
    pub re: T,
    pub du: T,
}

impl<T: AdScalar> Dual<T> {
    pub fn constant(v: T) -> Self {
        Dual {
            re: v,
            du: T::zero(),
        }
    }

    pub fn seeded(v: T, d: T) -> Self {
        Dual { re: v, du: d }
    }

    /// Variable with unit seed.
    pub fn var(v: T) -> Self {
        Dual {
            re: v,
            du: T::one(),
        }
    }

    /// Chain rule for a unary function given f(v) and f'(v).
    fn lift(self, f0: T, f1: T) -> Self {
        Dual {
            re: f0,
            du: self.du * f1,
        }
    }
}

impl<T: AdScalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            re: self.re + o.re,
            du: self.du + o.du,
        }
    }
}

impl<T: AdScalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            re: self.re - o.re,
            du: self.du - o.du,
        }
    }
}

impl<T: AdScalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re * o.re,
            du: self.du * o.re + self.re * o.du,
        }
    }
}

impl<T: AdScalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Dual {
            re: self.re / o.re,
            du: (self.du * o.re - self.re * o.du) / (o.re * o.re),
        }
    }
}

impl<T: AdScalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            du: -self.du,
        }
    }
}

impl<T: AdScalar> AdScalar for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_f64(v: f64) -> Self {
        Dual::constant(T::from_f64(v))
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.lift(e, e)
    }
    fn ln(self) -> Self {
        self.lift(self.re.ln(), T::one() / self.re)
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.lift(s, T::one() / (s.scale(2.0)))
    }
}

/// Hyper-dual number `re + ε₁·e1 + ε₂·e2 + ε₁ε₂·e12` with
/// `ε₁² = ε₂² = (ε₁ε₂)² = 0`.  Seeding `e1`, `e2` along unit directions
/// yields the exact mixed second derivative in `e12`.
#[derive(Debug, Clone, Copy)]
pub struct HyperDual<T> {
    pub re: T,
    pub e1: T,
    pub e2: T,
    pub e12: T,
}

impl<T: AdScalar> HyperDual<T> {
    pub fn constant(v: T) -> Self {
        HyperDual {
            re: v,
            e1: T::zero(),
            e2: T::zero(),
            e12: T::zero(),
        }
    }

    pub fn seeded(v: T, d1: T, d2: T) -> Self {
        HyperDual {
            re: v,
            e1: d1,
            e2: d2,
            e12: T::zero(),
        }
    }

    /// Chain rule for a unary function given f(v), f'(v), f''(v).
    fn lift(self, f0: T, f1: T, f2: T) -> Self {
        HyperDual {
            re: f0,
            e1: self.e1 * f1,
            e2: self.e2 * f1,
            e12: self.e12 * f1 + self.e1 * self.e2 * f2,
        }
    }
}

impl<T: AdScalar> Add for HyperDual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        HyperDual {
            re: self.re + o.re,
            e1: self.e1 + o.e1,
            e2: self.e2 + o.e2,
            e12: self.e12 + o.e12,
        }
    }
}

impl<T: AdScalar> Sub for HyperDual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        HyperDual {
            re: self.re - o.re,
            e1: self.e1 - o.e1,
            e2: self.e2 - o.e2,
            e12: self.e12 - o.e12,
        }
    }
}

impl<T: AdScalar> Mul for HyperDual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        HyperDual {
            re: self.re * o.re,
            e1: self.e1 * o.re + self.re * o.e1,
            e2: self.e2 * o.re + self.re * o.e2,
            e12: self.e12 * o.re + self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1,
        }
    }
}

impl<T: AdScalar> Div for HyperDual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = o.re;
        let inv = T::one() / v;
        let inv2 = inv * inv;
        // d/dx (1/x) = -1/x², d²/dx² (1/x) = 2/x³
        let recip = o.lift(inv, -inv2, inv2 * inv * T::from_f64(2.0));
        self * recip
    }
}

impl<T: AdScalar> Neg for HyperDual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        HyperDual {
            re: -self.re,
            e1: -self.e1,
            e2: -self.e2,
            e12: -self.e12,
        }
    }
}

impl<T: AdScalar> AdScalar for HyperDual<T> {
    fn zero() -> Self {
        HyperDual::constant(T::zero())
    }
    fn one() -> Self {
        HyperDual::constant(T::one())
    }
    fn from_f64(v: f64) -> Self {
        HyperDual::constant(T::from_f64(v))
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.lift(e, e, e)
    }
    fn ln(self) -> Self {
        let v = self.re;
        let inv = T::one() / v;
        self.lift(v.ln(), inv, -(inv * inv))
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        let half_inv_s = T::one() / s.scale(2.0);
        // f'' = -1/(4 v^{3/2})
        let f2 = -(T::one() / (s * self.re.scale(4.0)));
        self.lift(s, half_inv_s, f2)
    }
}
