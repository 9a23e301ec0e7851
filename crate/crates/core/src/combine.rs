//! A third triple from two triples for the same `(angle, N)`, by adding their
//! points.
//!
//! The group-law route `phi(psi(t0) + psi(t1))` is authoritative. A closed form
//! in `t_i = a_i (a_i + c_i)` is evaluated alongside it:
//!
//! ```text
//! x_i = t_i/2 - sN,   y_i = a_i x_i
//! lambda = (a0 t0 - a1 t1 - 2sN (a0 - a1)) / (t0 - t1)
//! x2 = (a0 - a1)^2 (t0 - 2sN)(t1 - 2sN) / (t0 - t1)^2
//! a2 = -lambda - (x1 - x0) / (a0 - a1),  b2 = 2rN / a2,  c2 = (x2^2 + (r^2 - s^2) N^2) / (a2 x2)
//! ```
//!
//! The quantity `T = 4r^2N^2 + t0 t1 + a0 a1 (t0 + t1 - 4sN)` and the
//! candidate `T / ((a0 - a1)(t0 - t1))` for `a2` are recorded for comparison
//! only; that candidate does not agree with the group law in general.

use crate::correspondence::{phi, psi};
use crate::curve::{Curve, Point};
use crate::geometry::{embed, ThetaTriple};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombineRecord<F> {
    pub t0: ThetaTriple<F>,
    pub t1: ThetaTriple<F>,
    /// `(t_0, t_1)` with `t_i = a_i (a_i + c_i)`.
    pub tvals: (F, F),
    pub p0: Point<F>,
    pub p1: Point<F>,
    pub sum: Point<F>,
    /// Group-law result.
    pub result: ThetaTriple<F>,
    /// Closed-form result; absent when `a0 = a1`.
    pub closed_form: Option<ThetaTriple<F>>,
    /// Closed-form `x2`; absent when `a0 = a1`.
    pub closed_form_x: Option<F>,
    pub printed_t: F,
    /// `T / ((a0 - a1)(t0 - t1))`; absent when the denominator vanishes.
    pub printed_a2: Option<F>,
}

impl<F: Scalar> CombineRecord<F> {
    /// Both routes produced the same triple.
    pub fn paths_agree(&self) -> bool {
        self.closed_form.as_ref() == Some(&self.result)
    }

    pub fn printed_t_matches(&self) -> bool {
        self.printed_a2.as_ref() == Some(self.result.a())
    }
}

pub fn combine<F: Scalar>(t0: &ThetaTriple<F>, t1: &ThetaTriple<F>) -> Result<ThetaTriple<F>> {
    combine_record(t0, t1).map(|rec| rec.result)
}

pub fn combine_record<F: Scalar>(t0: &ThetaTriple<F>, t1: &ThetaTriple<F>) -> Result<CombineRecord<F>> {
    if t0.angle() != t1.angle() || t0.n() != t1.n() {
        return Err(Error::MismatchedContext);
    }
    let curve = Curve::new(t0.angle(), t0.n())?;
    let p0 = psi(t0)?;
    let p1 = psi(t1)?;
    let sum = curve.add(&p0, &p1)?;
    let result = match &sum {
        Point::Infinity => return Err(Error::SumAtInfinity),
        p if p.is_two_torsion() => return Err(Error::SumIsTwoTorsion),
        p => phi(&curve, p)?,
    };

    let angle = t0.angle();
    let r: F = embed(angle.r())?;
    let s: F = embed(angle.s())?;
    let n: F = embed(t0.n())?;
    let k: F = embed(&angle.sin_squared_numer())?;
    let two = F::from_i64(2);
    let sn = s * n.clone();
    let (a0, c0) = (t0.a().clone(), t0.c().clone());
    let (a1, c1) = (t1.a().clone(), t1.c().clone());
    let tv0 = a0.clone() * (a0.clone() + c0);
    let tv1 = a1.clone() * (a1.clone() + c1);

    let printed_t = F::from_i64(4) * r.clone() * r.clone() * n.clone() * n.clone()
        + tv0.clone() * tv1.clone()
        + a0.clone() * a1.clone() * (tv0.clone() + tv1.clone() - F::from_i64(4) * sn.clone());
    let printed_den = (a0.clone() - a1.clone()) * (tv0.clone() - tv1.clone());
    let printed_a2 = (!printed_den.is_zero()).then(|| printed_t.clone() / printed_den);

    let mut closed_form = None;
    let mut closed_form_x = None;
    let da = a0.clone() - a1.clone();
    let dt = tv0.clone() - tv1.clone();
    if !da.is_zero() && !dt.is_zero() {
        let two_sn = two.clone() * sn.clone();
        let x0 = tv0.clone() / two.clone() - sn.clone();
        let x1 = tv1.clone() / two.clone() - sn;
        let lambda = (a0 * tv0.clone() - a1 * tv1.clone() - two_sn.clone() * da.clone()) / dt.clone();
        let x2 = da.clone() * da.clone() * (tv0.clone() - two_sn.clone()) * (tv1.clone() - two_sn)
            / (dt.clone() * dt);
        let a2 = -lambda - (x1 - x0) / da;
        if !a2.is_zero() && !x2.is_zero() {
            let b2 = two * r * n.clone() / a2.clone();
            let y2 = a2.clone() * x2.clone();
            let c2 = (x2.clone() * x2.clone() + k * n.clone() * n) / y2;
            closed_form = ThetaTriple::new(angle, a2, b2, c2).ok();
        }
        closed_form_x = Some(x2);
    }

    Ok(CombineRecord {
        t0: t0.clone(),
        t1: t1.clone(),
        tvals: (tv0, tv1),
        p0,
        p1,
        sum,
        result,
        closed_form,
        closed_form_x,
        printed_t,
        printed_a2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::{Angle, Int, Rat};

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    fn triple(angle: &Angle, a: Rat, b: Rat, c: Rat) -> ThetaTriple<Rat> {
        ThetaTriple::new(angle, a, b, c).unwrap()
    }

    #[test]
    fn worked_instance() {
        let ang = Angle::right();
        let t0 = triple(&ang, q(3), q(4), q(5));
        let t1 = triple(&ang, rat(120, 7), rat(7, 10), rat(1201, 70));
        let rec = combine_record(&t0, &t1).unwrap();
        assert_eq!(rec.p0, Point::new(q(12), q(36)));
        assert_eq!(rec.p1, Point::new(q(294), q(5040)));
        assert_eq!(rec.sum, Point::new(rat(19602, 2209), rat(2021976, 103823)));
        assert_eq!(
            rec.result.components(),
            (&rat(3404, 1551), &rat(4653, 851), &rat(7776485, 1319901))
        );
        assert!(rec.paths_agree());
        assert_eq!(rec.closed_form_x.as_ref(), rec.sum.x());
        assert_eq!(rec.printed_a2, Some(rat(2964, 517)));
        assert!(!rec.printed_t_matches());
    }

    #[test]
    fn opposite_c_sums_to_two_torsion() {
        // psi(3,4,-5) = (-3,-9); the chord through (12,36) meets (0,0)
        let ang = Angle::right();
        let t0 = triple(&ang, q(3), q(4), q(5));
        let t1 = triple(&ang, q(3), q(4), q(-5));
        assert_eq!(psi(&t1).unwrap(), Point::new(q(-3), q(-9)));
        assert_eq!(combine(&t0, &t1), Err(Error::SumIsTwoTorsion));
    }

    #[test]
    fn opposite_points_sum_to_infinity() {
        // psi(-3,-4,5) = (12,-36) = -psi(3,4,5)
        let ang = Angle::right();
        let t0 = triple(&ang, q(3), q(4), q(5));
        let t1 = triple(&ang, q(-3), q(-4), q(-5));
        assert_eq!(psi(&t1).unwrap(), psi(&t0).unwrap().neg());
        assert_eq!(combine(&t0, &t1), Err(Error::SumAtInfinity));
    }

    #[test]
    fn mismatched_context() {
        let t0 = triple(&Angle::right(), q(3), q(4), q(5));
        let t1 = triple(&Angle::third_turn_half(), q(5), q(8), q(7));
        assert_eq!(combine(&t0, &t1), Err(Error::MismatchedContext));
        let t2 = triple(&Angle::right(), q(6), q(8), q(10));
        assert_eq!(combine(&t0, &t2), Err(Error::MismatchedContext));
    }

    #[test]
    fn identical_triples_double() {
        let ang = Angle::right();
        let t0 = triple(&ang, q(3), q(4), q(5));
        let rec = combine_record(&t0, &t0).unwrap();
        let curve = Curve::new(&ang, &Int::from(6)).unwrap();
        assert_eq!(rec.sum, curve.double(&psi(&t0).unwrap()).unwrap());
        assert!(rec.closed_form.is_none());
    }
}
