//! The curve `y^2 = x (x + (r+s)N) (x - (r-s)N) = x^3 + A x^2 + B x` with
//! `A = 2sN` and `B = -(r^2 - s^2) N^2`, and its group law.

use std::fmt;

use num_traits::Signed;

use crate::geometry::embed;
use crate::scalar::Scalar;
use crate::{Angle, Error, Int, Result};

/// Torsion points over the rationals have order at most 12.
pub const MAX_TORSION_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Scalar> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    /// A finite point with `y = 0`.
    pub fn is_two_torsion(&self) -> bool {
        matches!(self, Point::Affine { y, .. } if y.is_zero())
    }

    pub fn neg(&self) -> Self {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: -y.clone() },
        }
    }
}

impl<F: Scalar> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Order of a rational point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve<F> {
    angle: Angle,
    n: Int,
    a2: F,
    a4: F,
    roots: [F; 3],
}

impl<F: Scalar> Curve<F> {
    pub fn new(angle: &Angle, n: &Int) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::InvalidArgument(format!("N = {n} must be positive")));
        }
        let a2 = embed(&(Int::from(2) * angle.s() * n))?;
        let a4 = embed(&(-angle.sin_squared_numer() * n * n))?;
        let roots = [
            F::zero(),
            embed(&(-angle.alpha() * n))?,
            embed(&(angle.beta() * n))?,
        ];
        Ok(Curve { angle: angle.clone(), n: n.clone(), a2, a4, roots })
    }

    pub fn angle(&self) -> &Angle {
        &self.angle
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    /// Coefficient of `x^2`, `2sN`.
    pub fn a(&self) -> &F {
        &self.a2
    }

    /// Coefficient of `x`, `-(r^2 - s^2) N^2`.
    pub fn b(&self) -> &F {
        &self.a4
    }

    /// The roots `0`, `-(r+s)N`, `(r-s)N` of the cubic.
    pub fn roots(&self) -> &[F; 3] {
        &self.roots
    }

    /// `x^3 + A x^2 + B x`
    pub fn rhs(&self, x: &F) -> F {
        ((x.clone() + self.a2.clone()) * x.clone() + self.a4.clone()) * x.clone()
    }

    pub fn on_curve(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.clone() * y.clone() == self.rhs(x),
        }
    }

    fn check(&self, p: &Point<F>) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn add(&self, p0: &Point<F>, p1: &Point<F>) -> Result<Point<F>> {
        self.check(p0)?;
        self.check(p1)?;
        Ok(self.add_unchecked(p0, p1))
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        Ok(self.double_unchecked(p))
    }

    pub(crate) fn add_unchecked(&self, p0: &Point<F>, p1: &Point<F>) -> Point<F> {
        let (x0, y0, x1, y1) = match (p0, p1) {
            (Point::Infinity, _) => return p1.clone(),
            (_, Point::Infinity) => return p0.clone(),
            (Point::Affine { x: x0, y: y0 }, Point::Affine { x: x1, y: y1 }) => (x0, y0, x1, y1),
        };
        if x0 == x1 {
            // vertical chord, or the tangent when the points coincide
            return if y0 == y1 && !y0.is_zero() {
                self.double_unchecked(p0)
            } else {
                Point::Infinity
            };
        }
        let lambda = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
        let nu = y0.clone() - lambda.clone() * x0.clone();
        let x2 = lambda.clone() * lambda.clone() - self.a2.clone() - x0.clone() - x1.clone();
        let y2 = -(lambda * x2.clone() + nu);
        Point::Affine { x: x2, y: y2 }
    }

    pub(crate) fn double_unchecked(&self, p: &Point<F>) -> Point<F> {
        let (x0, y0) = match p {
            Point::Affine { x, y } if !y.is_zero() => (x, y),
            _ => return Point::Infinity,
        };
        let two = F::one() + F::one();
        let three = two.clone() + F::one();
        let lambda = (three.clone() * x0.clone() * x0.clone()
            + two.clone() * self.a2.clone() * x0.clone()
            + self.a4.clone())
            / (two.clone() * y0.clone());
        let x2 = lambda.clone() * lambda.clone() - self.a2.clone() - two * x0.clone();
        let y2 = -lambda.clone() * lambda.clone() * lambda.clone()
            + (three * x0.clone() + self.a2.clone()) * lambda
            - y0.clone();
        Point::Affine { x: x2, y: y2 }
    }

    /// `[k] p` by double-and-add; negative `k` negates.
    pub fn scalar_mul(&self, k: &Int, p: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        let base = if k.is_negative() { p.neg() } else { p.clone() };
        let k = k.magnitude();
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double_unchecked(&acc);
            if k.bit(i) {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        Ok(acc)
    }

    /// Exact order when some `[k] p = inf` with `k <= 12`, otherwise infinite:
    /// no rational torsion point has larger order.
    pub fn order_bounded(&self, p: &Point<F>) -> Result<Order> {
        self.check(p)?;
        let mut acc = p.clone();
        for k in 1..=MAX_TORSION_ORDER {
            if acc.is_infinity() {
                return Ok(Order::Finite(k));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(Order::Infinite)
    }

    /// `{inf, (0,0), (-(r+s)N, 0), ((r-s)N, 0)}`
    pub fn two_torsion(&self) -> Vec<Point<F>> {
        std::iter::once(Point::Infinity)
            .chain(self.roots.iter().map(|e| Point::new(e.clone(), F::zero())))
            .collect()
    }
}

impl<F: Scalar> fmt::Display for Curve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x(x + {})(x - {})",
            self.angle.alpha() * &self.n,
            self.angle.beta() * &self.n
        )
    }
}
