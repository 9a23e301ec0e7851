//! Witness search for theta-congruence.
//!
//! `N` is theta-congruent exactly when the curve has a rational point of order
//! greater than two. Torsion settles that part completely; beyond it the only
//! evidence is a point of infinite order, which a bounded search may or may not
//! find. Failure to find one is reported as [`Verdict::Unknown`], never as a
//! proof of non-congruence.

use std::collections::BTreeMap;

use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::correspondence::phi;
use crate::curve::Order;
use crate::geometry::{generate_from_mn, ThetaTriple};
use crate::numeric::exact_sqrt;
use crate::torsion::torsion_subgroup;
use crate::{Angle, Curve, Error, Int, Point, Rat, Result};

/// Every affine point with `x = p/q^2`, `|p| <= bound`, `1 <= q <= sqrt(bound)`,
/// `gcd(p, q) = 1` and rational `y`. Ordered by `q`, then `p`, then `y`
/// descending (`+y` before `-y`).
pub fn search_points(curve: &Curve, height_bound: u64) -> Result<Vec<Point>> {
    if height_bound < 1 {
        return Err(Error::InvalidArgument("height bound must be at least 1".into()));
    }
    let a = curve.a().to_integer();
    let b = curve.b().to_integer();
    let bound = height_bound as i64;
    let q_max = height_bound.sqrt() as i64;
    let mut out = Vec::new();
    for q in 1..=q_max {
        let q = Int::from(q);
        let q2 = &q * &q;
        let q4 = &q2 * &q2;
        let found: Vec<Vec<Point>> = (-bound..=bound)
            .into_par_iter()
            .map(|p| {
                let p = Int::from(p);
                if !p.gcd(&q).to_i64().is_some_and(|g| g == 1) {
                    return Vec::new();
                }
                // y^2 q^6 = p (p^2 + A p q^2 + B q^4)
                let num = &p * (&p * &p + &a * &p * &q2 + &b * &q4);
                let Some(root) = exact_sqrt(&num) else {
                    return Vec::new();
                };
                let x = Rat::new(p.clone(), q2.clone());
                let y = Rat::new(root, &q2 * &q);
                if y.is_zero() {
                    vec![Point::new(x, y)]
                } else {
                    vec![Point::new(x.clone(), y.clone()), Point::new(x, -y)]
                }
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    debug_assert!(out.iter().all(|p| curve.on_curve(p)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// A torsion point of the given order (> 2).
    Torsion(u32),
    /// A searched point of infinite order.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Congruent {
        witness: ThetaTriple<Rat>,
        point: Point,
        source: WitnessSource,
    },
    /// Nothing found up to `bound`. `not_by_torsion` is set when `N | 6`: then
    /// torsion alone could have witnessed congruence, and was checked to have
    /// no point of order above two.
    Unknown { bound: u64, not_by_torsion: bool },
}

impl Verdict {
    pub fn is_congruent(&self) -> bool {
        matches!(self, Verdict::Congruent { .. })
    }

    pub fn witness(&self) -> Option<&ThetaTriple<Rat>> {
        match self {
            Verdict::Congruent { witness, .. } => Some(witness),
            Verdict::Unknown { .. } => None,
        }
    }
}

pub fn decide(angle: &Angle, n: &Int, height_bound: u64) -> Result<Verdict> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("N = {n} must be positive")));
    }
    let curve = Curve::new(angle, n)?;
    let group = torsion_subgroup(&curve)?;
    let candidates: Vec<_> = group.points.iter().filter(|p| p.order > 2).collect();
    let positive = candidates.iter().find(|p| {
        p.point.x().is_some_and(|x| x.is_positive()) && p.point.y().is_some_and(|y| y.is_positive())
    });
    if let Some(tp) = positive.or(candidates.first()) {
        return Ok(Verdict::Congruent {
            witness: phi(&curve, &tp.point)?,
            point: tp.point.clone(),
            source: WitnessSource::Torsion(tp.order),
        });
    }
    for p in search_points(&curve, height_bound)? {
        if p.is_two_torsion() {
            continue;
        }
        if curve.order_bounded(&p)? == Order::Infinite {
            return Ok(Verdict::Congruent {
                witness: phi(&curve, &p)?,
                point: p,
                source: WitnessSource::Search,
            });
        }
    }
    Ok(Verdict::Unknown {
        bound: height_bound,
        not_by_torsion: (Int::from(6) % n).is_zero(),
    })
}

/// For integers `1 <= m, n <= mn_bound`, the `(m, n)` triple scaled to its
/// square-free `N`; per `N` keeps the witness of smallest `|c|` (first found on
/// ties, sweeping `m` then `n`).
pub fn enumerate_table(angle: &Angle, mn_bound: u64) -> Result<BTreeMap<Int, ThetaTriple<Rat>>> {
    if mn_bound < 1 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let bound = mn_bound as i64;
    let pairs: Vec<(i64, i64)> = (1..=bound).flat_map(|m| (1..=bound).map(move |n| (m, n))).collect();
    let triples: Vec<Option<ThetaTriple<Rat>>> = pairs
        .into_par_iter()
        .map(|(m, n)| {
            let m = Rat::from_integer(Int::from(m));
            let n = Rat::from_integer(Int::from(n));
            match generate_from_mn(angle, &m, &n) {
                Ok(g) => match g.into_triple() {
                    Ok(t) => Ok(Some(t)),
                    Err(Error::Degenerate(_)) => Ok(None),
                    Err(e) => Err(e),
                },
                Err(Error::Degenerate(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let mut table: BTreeMap<Int, ThetaTriple<Rat>> = BTreeMap::new();
    for t in triples.into_iter().flatten() {
        match table.get(t.n()) {
            Some(best) if best.c().abs() <= t.c().abs() => {}
            _ => {
                table.insert(t.n().clone(), t);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::triangle_of;
    use crate::numeric::rat;

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    fn congruent(n: i64) -> Curve {
        Curve::new(&Angle::right(), &Int::from(n)).unwrap()
    }

    #[test]
    fn finds_small_points() {
        // (-4)^3 - 25 (-4) = 36
        let pts = search_points(&congruent(5), 100).unwrap();
        assert!(pts.contains(&Point::new(q(-4), q(6))));
        let pts = search_points(&congruent(6), 100).unwrap();
        assert!(pts.contains(&Point::new(q(12), q(36))));
        assert!(pts.contains(&Point::new(q(18), q(72))));
        let pts = search_points(&congruent(1), 100).unwrap();
        assert!(pts.iter().all(|p| p.is_two_torsion()));
        assert_eq!(pts.len(), 3);
        assert!(search_points(&congruent(1), 0).is_err());
    }

    #[test]
    fn search_results_are_deterministic_and_on_curve() {
        let c = Curve::new(&Angle::new(1, 3).unwrap(), &Int::from(7)).unwrap();
        let a = search_points(&c, 200).unwrap();
        let b = search_points(&c, 200).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| c.on_curve(p)));
    }

    #[test]
    fn verdicts() {
        let v = decide(&Angle::right(), &Int::from(5), 100).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.components(), (&rat(-3, 2), &rat(-20, 3), &rat(41, 6)));
        assert_eq!(triangle_of(w).unwrap(), (rat(3, 2), rat(20, 3), rat(41, 6)));

        let v = decide(&Angle::third_turn_half(), &Int::from(1), 1).unwrap();
        assert!(matches!(v, Verdict::Congruent { source: WitnessSource::Torsion(4), .. }));
        assert_eq!(triangle_of(v.witness().unwrap()).unwrap(), (q(2), q(2), q(2)));

        let v = decide(&Angle::right(), &Int::from(1), 100).unwrap();
        assert_eq!(v, Verdict::Unknown { bound: 100, not_by_torsion: true });
        let v = decide(&Angle::right(), &Int::from(11), 5).unwrap();
        assert!(matches!(v, Verdict::Unknown { not_by_torsion: false, .. }));
        assert!(decide(&Angle::right(), &Int::from(0), 5).is_err());
    }

    #[test]
    fn tables() {
        let t = enumerate_table(&Angle::right(), 3).unwrap();
        assert_eq!(t[&Int::from(6)].components(), (&q(3), &q(4), &q(5)));
        let t = enumerate_table(&Angle::third_turn_half(), 3).unwrap();
        assert_eq!(t[&Int::from(10)].components(), (&q(5), &q(8), &q(7)));
        assert!(enumerate_table(&Angle::right(), 1).unwrap().is_empty());
        for (n, w) in enumerate_table(&Angle::new(-2, 5).unwrap(), 8).unwrap() {
            assert_eq!(
                crate::geometry::verify_triple(w.angle(), w.a(), w.b(), w.c()).unwrap(),
                n
            );
        }
    }
}
