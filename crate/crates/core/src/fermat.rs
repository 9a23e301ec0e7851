//! The Fermat-type step: a new triple for the same `N` from a single triple.
//!
//! With the signed `d = b^2 - a^2`,
//!
//! ```text
//! (a, b, c) -> ( d / 2c,  4rcN / d,  (c^4 + 16 N^2 (r^2 - s^2)) / 2cd )
//! ```
//!
//! On the curve this is doubling: `[2] psi(t) = -psi(next_triple(t))`.

use crate::geometry::{embed, ThetaTriple};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Digit counts roughly quadruple per step, so orbits are capped.
pub const DEFAULT_MAX_ORBIT_STEPS: usize = 8;

/// One application of [`next_triple`], with the signed `d` it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatStepRecord<F> {
    pub input: ThetaTriple<F>,
    pub d: F,
    pub output: ThetaTriple<F>,
}

impl<F: Scalar> FermatStepRecord<F> {
    /// `c^4 + 8sNc^2 - 16 N^2 (r^2 - s^2)`, which equals `d^2`.
    pub fn radicand(&self) -> Result<F> {
        let t = &self.input;
        let s: F = embed(t.angle().s())?;
        let n: F = embed(t.n())?;
        let k: F = embed(&t.angle().sin_squared_numer())?;
        let c2 = t.c().clone() * t.c().clone();
        let eight = F::from_i64(8);
        let sixteen = F::from_i64(16);
        Ok(c2.clone() * c2.clone() + eight * s * n.clone() * c2 - sixteen * n.clone() * n * k)
    }

    /// Whether `|d|` is the exact square root of [`radicand`](Self::radicand).
    pub fn radical_agrees(&self) -> Result<bool> {
        Ok(self.radicand()?.sqrt_exact() == Some(self.d.abs()))
    }

    /// The step returned the input unchanged, which happens exactly when
    /// `b^2 - a^2 = 2ac`.
    pub fn is_fixed(&self) -> bool {
        self.input == self.output
    }
}

pub fn next_triple<F: Scalar>(t: &ThetaTriple<F>) -> Result<ThetaTriple<F>> {
    step(t).map(|rec| rec.output)
}

pub fn step<F: Scalar>(t: &ThetaTriple<F>) -> Result<FermatStepRecord<F>> {
    let (a, b, c) = t.components();
    if c.is_zero() {
        return Err(Error::DegenerateC);
    }
    let d = b.clone() * b.clone() - a.clone() * a.clone();
    if d.is_zero() {
        return Err(Error::DegenerateIsoceles);
    }
    let angle = t.angle();
    let r: F = embed(angle.r())?;
    let n: F = embed(t.n())?;
    let k: F = embed(&angle.sin_squared_numer())?;
    let two = F::from_i64(2);
    let c2 = c.clone() * c.clone();
    let a1 = d.clone() / (two.clone() * c.clone());
    let b1 = F::from_i64(4) * r * c.clone() * n.clone() / d.clone();
    let c1 = (c2.clone() * c2 + F::from_i64(16) * n.clone() * n * k) / (two * c.clone() * d.clone());
    let output = ThetaTriple::new_unchecked(angle, a1, b1, c1, t.n().clone());
    Ok(FermatStepRecord { input: t.clone(), d, output })
}

/// An orbit that may have stopped before the requested length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport<F> {
    pub triples: Vec<ThetaTriple<F>>,
    /// The index of the last triple and the reason it could not be stepped.
    pub stopped: Option<(usize, Error)>,
}

/// `[t, next(t), next^2(t), ...]` with `steps` entries past `t`, or the
/// index and reason of the first step that failed.
pub fn orbit<F: Scalar>(t: &ThetaTriple<F>, steps: usize) -> Result<Vec<ThetaTriple<F>>> {
    let report = orbit_report(t, steps, DEFAULT_MAX_ORBIT_STEPS)?;
    match report.stopped {
        None => Ok(report.triples),
        Some((index, source)) => Err(Error::OrbitStopped { index, source: Box::new(source) }),
    }
}

pub fn orbit_report<F: Scalar>(
    t: &ThetaTriple<F>,
    steps: usize,
    max_steps: usize,
) -> Result<OrbitReport<F>> {
    if steps > max_steps {
        return Err(Error::InvalidArgument(format!(
            "orbit of {steps} steps exceeds the cap of {max_steps}"
        )));
    }
    let mut triples = vec![t.clone()];
    for index in 0..steps {
        match next_triple(&triples[index]) {
            Ok(next) => triples.push(next),
            Err(e) => return Ok(OrbitReport { triples, stopped: Some((index, e)) }),
        }
    }
    Ok(OrbitReport { triples, stopped: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::psi;
    use crate::curve::Curve;
    use crate::numeric::{rat, two_adic_valuation};
    use crate::{Angle, Int, Rat};
    use num_rational::Ratio;

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    #[test]
    fn classic_step() {
        let t = ThetaTriple::new(&Angle::right(), q(3), q(4), q(5)).unwrap();
        let rec = step(&t).unwrap();
        assert_eq!(rec.d, q(7));
        assert_eq!(rec.output.components(), (&rat(7, 10), &rat(120, 7), &rat(1201, 70)));
        assert!(rec.radical_agrees().unwrap());
        // the classical right-angle form a1 = 2 c a b / (b^2 - a^2), up to the swap
        assert_eq!(q(2) * q(5) * q(3) * q(4) / q(7), rat(120, 7));
    }

    #[test]
    fn isoceles_input_is_degenerate() {
        let t = ThetaTriple::new(&Angle::third_turn_half(), q(2), q(2), q(2)).unwrap();
        assert_eq!(next_triple(&t), Err(Error::DegenerateIsoceles));
    }

    #[test]
    fn negative_d_swaps_the_triangle() {
        let ang = Angle::new(11, 16).unwrap();
        let t = ThetaTriple::new(&ang, q(8), q(4), q(6)).unwrap();
        let rec = step(&t).unwrap();
        assert_eq!(rec.d, q(-48));
        assert_eq!(rec.output.components(), (&q(-4), &q(-8), &q(-6)));
        assert!(rec.output.same_triangle(&t));
        assert!(rec.radical_agrees().unwrap());
    }

    #[test]
    fn orbits() {
        let t = ThetaTriple::new(&Angle::right(), q(3), q(4), q(5)).unwrap();
        let o = orbit(&t, 1).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o[1].components(), (&rat(7, 10), &rat(120, 7), &rat(1201, 70)));
        assert_eq!(orbit(&t, 0).unwrap(), vec![t.clone()]);
        assert!(orbit(&t, DEFAULT_MAX_ORBIT_STEPS + 1).is_err());

        let iso = ThetaTriple::new(&Angle::third_turn_half(), q(2), q(2), q(2)).unwrap();
        match orbit(&iso, 1) {
            Err(Error::OrbitStopped { index, source }) => {
                assert_eq!(index, 0);
                assert_eq!(*source, Error::DegenerateIsoceles);
            }
            other => panic!("unexpected {other:?}"),
        }
        let report = orbit_report(&iso, 3, 8).unwrap();
        assert_eq!(report.triples.len(), 1);
        assert_eq!(report.stopped, Some((0, Error::DegenerateIsoceles)));
    }

    #[test]
    fn doubling_and_product_along_an_orbit() {
        let ang = Angle::new(3, 7).unwrap();
        let g = crate::geometry::generate_from_mn(&ang, &q(3), &q(2)).unwrap();
        let t = g.into_triple().unwrap();
        let curve = Curve::new(&ang, t.n()).unwrap();
        let o = orbit(&t, 3).unwrap();
        for w in o.windows(2) {
            let doubled = curve.double(&psi(&w[0]).unwrap()).unwrap();
            assert_eq!(doubled, psi(&w[1]).unwrap().neg());
            assert_eq!(w[0].a() * w[0].b(), w[1].a() * w[1].b());
            let v0 = two_adic_valuation(w[0].c()).unwrap();
            let v1 = two_adic_valuation(w[1].c()).unwrap();
            if v0 <= 0 {
                assert_eq!(v1, v0 - 1);
            } else {
                assert!(v1 < v0);
            }
        }
    }

    #[test]
    fn works_over_machine_ratios() {
        let t = ThetaTriple::<Ratio<i128>>::new(
            &Angle::right(),
            Ratio::from_integer(3),
            Ratio::from_integer(4),
            Ratio::from_integer(5),
        )
        .unwrap();
        let u = next_triple(&t).unwrap();
        assert_eq!(u.c(), &Ratio::new(1201, 70));
        assert_eq!(u.n(), &Int::from(6));
    }
}
