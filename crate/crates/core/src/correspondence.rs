//! The bijection between theta-triples for `N` and affine points with `y != 0`.
//!
//! ```text
//! psi: (a, b, c) -> ( rN(a + c - sb/r) / b,  2 r^2 N^2 (a + c - sb/r) / b^2 )
//! phi: (x, y)    -> ( y/x,  2rxN / y,  (x^2 + (r^2 - s^2) N^2) / y )
//! ```
//!
//! Neither map touches signs; `(a, b, c)` and `(b, a, c)` land on different
//! points.

use crate::curve::{Curve, Point};
use crate::geometry::{embed, ThetaTriple};
use crate::scalar::Scalar;
use crate::{Error, Result};

pub fn psi<F: Scalar>(t: &ThetaTriple<F>) -> Result<Point<F>> {
    let (a, b, c) = t.components();
    if b.is_zero() {
        return Err(Error::Degenerate("b = 0".into()));
    }
    let angle = t.angle();
    let r: F = embed(angle.r())?;
    let s: F = embed(angle.s())?;
    let n: F = embed(t.n())?;
    let two = F::one() + F::one();
    let w = a.clone() + c.clone() - s * b.clone() / r.clone();
    let rn = r * n;
    let x = rn.clone() * w.clone() / b.clone();
    let y = two * rn.clone() * rn * w / (b.clone() * b.clone());
    Ok(Point::new(x, y))
}

pub fn phi<F: Scalar>(curve: &Curve<F>, p: &Point<F>) -> Result<ThetaTriple<F>> {
    let (x, y) = match p {
        Point::Infinity => return Err(Error::PointAtInfinity),
        Point::Affine { x, y } => (x, y),
    };
    if !curve.on_curve(p) {
        return Err(Error::OffCurve);
    }
    if y.is_zero() {
        return Err(Error::TwoTorsionPoint);
    }
    let angle = curve.angle();
    let r: F = embed(angle.r())?;
    let n: F = embed(curve.n())?;
    let d: F = embed(&angle.sin_squared_numer())?;
    let two = F::one() + F::one();
    let a = y.clone() / x.clone();
    let b = two * r * x.clone() * n.clone() / y.clone();
    let c = (x.clone() * x.clone() + d * n.clone() * n) / y.clone();
    Ok(ThetaTriple::new_unchecked(angle, a, b, c, curve.n().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::{Angle, Int, Rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    fn triple(angle: &Angle, a: Rat, b: Rat, c: Rat) -> ThetaTriple<Rat> {
        ThetaTriple::new(angle, a, b, c).unwrap()
    }

    #[test]
    fn psi_examples() {
        let t = triple(&Angle::right(), q(3), q(4), q(5));
        assert_eq!(psi(&t).unwrap(), Point::new(q(12), q(36)));

        let t = triple(&Angle::third_turn_half(), q(5), q(8), q(7));
        let p = psi(&t).unwrap();
        assert_eq!(p, Point::new(q(20), q(100)));
        let c = Curve::new(&Angle::third_turn_half(), &Int::from(10)).unwrap();
        assert!(c.on_curve(&p));

        let t = triple(&Angle::right(), rat(7, 10), rat(120, 7), rat(1201, 70));
        assert_eq!(psi(&t).unwrap(), Point::new(rat(25, 4), rat(35, 8)));
    }

    #[test]
    fn phi_examples() {
        let c = Curve::new(&Angle::right(), &Int::from(6)).unwrap();
        let t = phi(&c, &Point::new(q(12), q(36))).unwrap();
        assert_eq!(t.components(), (&q(3), &q(4), &q(5)));

        let c5 = Curve::new(&Angle::right(), &Int::from(5)).unwrap();
        let t = phi(&c5, &Point::new(q(-4), q(6))).unwrap();
        assert_eq!(t.components(), (&rat(-3, 2), &rat(-20, 3), &rat(41, 6)));
        assert_eq!(t.n(), &Int::from(5));

        assert_eq!(phi(&c, &Point::new(q(6), q(0))), Err(Error::TwoTorsionPoint));
        assert_eq!(phi(&c, &Point::Infinity), Err(Error::PointAtInfinity));
        assert_eq!(phi(&c, &Point::new(q(1), q(1))), Err(Error::OffCurve));
    }

    #[test]
    fn swapping_a_and_b_moves_the_point() {
        let c = Curve::new(&Angle::right(), &Int::from(6)).unwrap();
        let p = psi(&triple(&Angle::right(), q(3), q(4), q(5))).unwrap();
        let p_swapped = psi(&triple(&Angle::right(), q(4), q(3), q(5))).unwrap();
        assert_eq!(p_swapped, Point::new(q(18), q(72)));
        assert!(c.on_curve(&p) && c.on_curve(&p_swapped));
        assert_ne!(p, p_swapped);
    }

    #[test]
    fn positive_triangles_map_to_positive_quadrant() {
        let ang = Angle::new(11, 16).unwrap();
        let p = psi(&triple(&ang, q(8), q(4), q(6))).unwrap();
        assert!(p.x().unwrap() > &Rat::zero() && p.y().unwrap() > &Rat::zero());
    }

    fn angles() -> impl Strategy<Value = Angle> {
        (1i64..15, -14i64..15).prop_filter_map("invalid angle", |(r, s)| Angle::new(s, r).ok())
    }

    proptest! {
        #[test]
        fn phi_then_psi_round_trips(ang in angles(), m in 1i64..30, n in 1i64..30, flip_c in any::<bool>(), neg in any::<bool>()) {
            let Ok(g) = crate::geometry::generate_from_mn(&ang, &q(m), &q(n)) else { return Ok(()); };
            let Ok(t) = g.into_triple() else { return Ok(()); };
            let (a, b, c) = t.components();
            let sa = if neg { -a.clone() } else { a.clone() };
            let sb = if neg { -b.clone() } else { b.clone() };
            let sc = if flip_c { -c.clone() } else { c.clone() };
            let t = triple(&ang, sa, sb, sc);
            let curve = Curve::new(&ang, t.n()).unwrap();
            let p = psi(&t).unwrap();
            prop_assert!(curve.on_curve(&p));
            prop_assert!(!p.y().unwrap().is_zero());
            prop_assert_eq!(phi(&curve, &p).unwrap(), t);
        }

        #[test]
        fn psi_then_phi_round_trips(ang in angles(), k in 1i64..6, m in 1i64..30, l in 1i64..30) {
            // points from multiples of the image of a generated triple
            let Ok(g) = crate::geometry::generate_from_mn(&ang, &q(m), &q(l)) else { return Ok(()); };
            let Ok(t) = g.into_triple() else { return Ok(()); };
            let curve = Curve::new(&ang, t.n()).unwrap();
            let p = curve.scalar_mul(&Int::from(k), &psi(&t).unwrap()).unwrap();
            if p.is_infinity() || p.is_two_torsion() { return Ok(()); }
            let back = phi(&curve, &p).unwrap();
            prop_assert!(crate::geometry::verify_triple(&ang, back.a(), back.b(), back.c()).is_ok());
            prop_assert_eq!(psi(&back).unwrap(), p);
        }
    }
}
