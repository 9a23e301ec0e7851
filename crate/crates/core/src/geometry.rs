//! Angles with rational cosine and the rational triples that witness
//! theta-congruence.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{self, exact_sqrt, rat_to_int};
use crate::scalar::{from_rat, Scalar};
use crate::{Error, Int, Rat, Result};

/// An angle `theta` in `(0, pi)` with `cos theta = s / r`, `gcd(r, s) = 1`
/// and `0 <= |s| < r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    r: Int,
    s: Int,
}

impl Angle {
    pub fn new(s: impl Into<Int>, r: impl Into<Int>) -> Result<Self> {
        let (s, r) = (s.into(), r.into());
        if !r.is_positive() {
            return Err(Error::InvalidAngle(format!("r = {r} must be positive")));
        }
        if s.abs() >= r {
            return Err(Error::InvalidAngle(format!("|s| = {} must be below r = {r}", s.abs())));
        }
        if !s.gcd(&r).is_one() {
            return Err(Error::InvalidAngle(format!("gcd(r, s) = {} is not 1", s.gcd(&r))));
        }
        Ok(Angle { r, s })
    }

    pub fn right() -> Self {
        Angle { r: Int::one(), s: Int::zero() }
    }

    /// `theta = pi / 3`, i.e. `cos theta = 1/2`.
    pub fn third_turn_half() -> Self {
        Angle { r: Int::from(2), s: Int::one() }
    }

    pub fn r(&self) -> &Int {
        &self.r
    }

    pub fn s(&self) -> &Int {
        &self.s
    }

    /// `r + s`
    pub fn alpha(&self) -> Int {
        &self.r + &self.s
    }

    /// `r - s`
    pub fn beta(&self) -> Int {
        &self.r - &self.s
    }

    /// `r^2 - s^2`, always positive.
    pub fn sin_squared_numer(&self) -> Int {
        &self.r * &self.r - &self.s * &self.s
    }

    pub fn cos(&self) -> Rat {
        Rat::new(self.s.clone(), self.r.clone())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cos={}/{}", self.s, self.r)
    }
}

pub(crate) fn embed<F: Scalar>(n: &Int) -> Result<F> {
    F::from_int(n).ok_or(Error::Overflow)
}

/// An ordered rational triple `(a, b, c)` with
/// `a^2 + b^2 - (2s/r) a b = c^2` and `a b = 2 r N` for a positive integer `N`.
///
/// Signs are kept: `(a, b, c)`, `(a, b, -c)`, `(-a, -b, c)` and `(-a, -b, -c)`
/// are distinct triples with the same triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaTriple<F> {
    a: F,
    b: F,
    c: F,
    angle: Angle,
    n: Int,
}

impl<F: Scalar> ThetaTriple<F> {
    pub fn new(angle: &Angle, a: F, b: F, c: F) -> Result<Self> {
        let n = verify_triple(angle, &a, &b, &c)?;
        Ok(ThetaTriple { a, b, c, angle: angle.clone(), n })
    }

    pub(crate) fn new_unchecked(angle: &Angle, a: F, b: F, c: F, n: Int) -> Self {
        debug_assert_eq!(verify_triple(angle, &a, &b, &c).as_ref(), Ok(&n));
        ThetaTriple { a, b, c, angle: angle.clone(), n }
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn c(&self) -> &F {
        &self.c
    }

    pub fn angle(&self) -> &Angle {
        &self.angle
    }

    /// The witnessed theta-congruent number.
    pub fn n(&self) -> &Int {
        &self.n
    }

    /// Squared area `N^2 (r^2 - s^2)`; the area itself is irrational in general.
    pub fn area_squared(&self) -> Int {
        &self.n * &self.n * self.angle.sin_squared_numer()
    }

    pub fn swapped(&self) -> Self {
        ThetaTriple { a: self.b.clone(), b: self.a.clone(), ..self.clone() }
    }

    /// Whether both triples give the same triangle, up to the `(a, b)` swap and
    /// componentwise sign.
    pub fn same_triangle(&self, other: &Self) -> bool {
        if self.angle != other.angle || self.n != other.n {
            return false;
        }
        let (a0, b0, c0) = (self.a.abs(), self.b.abs(), self.c.abs());
        let (a1, b1, c1) = (other.a.abs(), other.b.abs(), other.c.abs());
        c0 == c1 && ((a0 == a1 && b0 == b1) || (a0 == b1 && b0 == a1))
    }

    pub fn components(&self) -> (&F, &F, &F) {
        (&self.a, &self.b, &self.c)
    }
}

impl<F: Scalar> fmt::Display for ThetaTriple<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Checks both defining relations and returns the witnessed `N`.
pub fn verify_triple<F: Scalar>(angle: &Angle, a: &F, b: &F, c: &F) -> Result<Int> {
    let r: F = embed(angle.r())?;
    let s: F = embed(angle.s())?;
    let two = F::one() + F::one();
    let ab = a.clone() * b.clone();
    let lhs = a.clone() * a.clone() + b.clone() * b.clone() - two.clone() * s * ab.clone() / r.clone();
    if lhs != c.clone() * c.clone() {
        return Err(Error::InvalidTriple(format!(
            "a^2 + b^2 - (2s/r)ab = {lhs} but c^2 = {}",
            c.clone() * c.clone()
        )));
    }
    let n = (ab / (two * r)).to_rat();
    match rat_to_int(&n) {
        Some(n) if n.is_positive() => Ok(n),
        _ => Err(Error::InvalidTriple(format!("ab/(2r) = {n} is not a positive integer"))),
    }
}

/// Componentwise absolute value: the rational triangle of a triple.
pub fn triangle_of<F: Scalar>(t: &ThetaTriple<F>) -> Result<(F, F, F)> {
    if t.c.is_zero() {
        return Err(Error::Degenerate("c = 0".into()));
    }
    Ok((t.a.abs(), t.b.abs(), t.c.abs()))
}

/// Raw output of the `(m, n)` parametrization: `(X, Y, Z)` with
/// `X^2 + Y^2 - (2s/r) X Y = Z^2` and `N0 = |XY / (2r)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrized<F> {
    pub x: F,
    pub y: F,
    pub z: F,
    pub n0: F,
    pub angle: Angle,
}

/// ```text
/// X = m^2 - ((r^2 - s^2)/r^2) n^2 + 2smn/r,  Y = 2mn,  Z = m^2 + ((r^2 - s^2)/r^2) n^2
/// ```
pub fn generate_from_mn<F: Scalar>(angle: &Angle, m: &F, n: &F) -> Result<Parametrized<F>> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::InvalidArgument("m and n must be nonzero".into()));
    }
    let r: F = embed(angle.r())?;
    let s: F = embed(angle.s())?;
    let k: F = embed::<F>(&angle.sin_squared_numer())? / (r.clone() * r.clone());
    let two = F::one() + F::one();
    let m2 = m.clone() * m.clone();
    let kn2 = k * n.clone() * n.clone();
    let x = m2.clone() - kn2.clone() + two.clone() * s * m.clone() * n.clone() / r.clone();
    let y = two.clone() * m.clone() * n.clone();
    let z = m2 + kn2;
    if x.is_zero() {
        return Err(Error::Degenerate("X = 0".into()));
    }
    let n0 = (x.clone() * y.clone() / (two * r)).abs();
    Ok(Parametrized { x, y, z, n0, angle: angle.clone() })
}

impl<F: Scalar> Parametrized<F> {
    /// Scales `(X, Y, Z)` by the rational `m` that makes `N0 m^2` the smallest
    /// possible integer (the square-free part of `N0`'s numerator times
    /// denominator).
    ///
    /// Fails when `X Y < 0`: such a triple satisfies the relation for the
    /// supplementary angle, not for this one.
    pub fn into_triple(self) -> Result<ThetaTriple<F>> {
        if (self.x.clone() * self.y.clone()).is_negative() {
            return Err(Error::Degenerate(
                "X*Y < 0: the triple belongs to the supplementary angle".into(),
            ));
        }
        let n0 = self.n0.to_rat();
        let pq = n0.numer() * n0.denom();
        let n = numeric::square_free_part(&pq)?;
        let k = exact_sqrt(&(&pq / &n)).ok_or_else(|| {
            Error::InternalInconsistency("pq / squarefree(pq) is not a square".into())
        })?;
        let m: F = from_rat(&Rat::new(n0.denom().clone(), k)).ok_or(Error::Overflow)?;
        let t = ThetaTriple::new(
            &self.angle,
            self.x * m.clone(),
            self.y * m.clone(),
            self.z * m,
        )?;
        debug_assert_eq!(t.n, n);
        Ok(t)
    }
}

/// Sign pattern of an isoceles triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Isoceles {
    /// `a = b`, exists iff `2rN` and `(r - s) N` are squares.
    Equal,
    /// `a = -b`, exists iff `2rN` and `(r + s) N` are squares. Here `ab = -2rN`,
    /// so this is a solution of the quadratic relation only, not a theta-triple.
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsocelesTriple {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub pattern: Isoceles,
}

impl IsocelesTriple {
    pub fn as_theta_triple(&self, angle: &Angle) -> Result<ThetaTriple<Rat>> {
        ThetaTriple::new(angle, self.a.clone(), self.b.clone(), self.c.clone())
    }
}

/// Triples with `|a| = |b|`: `(sqrt(2rN), ±sqrt(2rN), 2 sqrt((r ∓ s) N))`
/// whenever the square roots are rational.
pub fn isoceles_triples(angle: &Angle, n: &Int) -> Result<Vec<IsocelesTriple>> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("N = {n} must be positive")));
    }
    let mut out = Vec::new();
    let Some(a) = exact_sqrt(&(Int::from(2) * angle.r() * n)) else {
        return Ok(out);
    };
    let a = Rat::from_integer(a);
    let two = Rat::from_integer(Int::from(2));
    if let Some(h) = exact_sqrt(&(angle.beta() * n)) {
        out.push(IsocelesTriple {
            a: a.clone(),
            b: a.clone(),
            c: &two * Rat::from_integer(h),
            pattern: Isoceles::Equal,
        });
    }
    if let Some(h) = exact_sqrt(&(angle.alpha() * n)) {
        out.push(IsocelesTriple {
            a: a.clone(),
            b: -a.clone(),
            c: &two * Rat::from_integer(h),
            pattern: Isoceles::Opposite,
        });
    }
    Ok(out)
}

/// `(ma, mb, mc)`, a triple for `N m^2`.
pub fn scale<F: Scalar>(t: &ThetaTriple<F>, m: &F) -> Result<ThetaTriple<F>> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("scale factor must be nonzero".into()));
    }
    let n_new = embed::<F>(&t.n)? * m.clone() * m.clone();
    if rat_to_int(&n_new.to_rat()).is_none() {
        return Err(Error::InvalidArgument(format!("N m^2 = {n_new} is not an integer")));
    }
    ThetaTriple::new(
        &t.angle,
        t.a.clone() * m.clone(),
        t.b.clone() * m.clone(),
        t.c.clone() * m.clone(),
    )
}
