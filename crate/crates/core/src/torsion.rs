//! Rational torsion of the theta-congruent curves.
//!
//! All four 2-torsion points are rational, so the torsion subgroup is
//! `Z/2 x Z/2n` with `n` in `1..=4`. It is assembled from the curve itself:
//! order-4 and order-8 points by halving, order-3 points from the rational
//! roots of the 3-division polynomial, order-6 points as sums. The case
//! decoder in [`classify_case`] is a separate reading of the arithmetic
//! conditions on `(r, s, N)` and is cross-checked against the computed shape.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::phi;
use crate::curve::Order;
use crate::geometry::ThetaTriple;
use crate::numeric::{divisors, exact_sqrt, factorize, integer_nth_root, is_square, square_free_part};
use crate::{Angle, Curve, Error, Int, Point, Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    Z2xZ2,
    Z2xZ4,
    Z2xZ6,
    Z2xZ8,
}

impl Shape {
    /// Order of the cyclic factor `Z/2n`.
    pub fn exponent(self) -> u32 {
        match self {
            Shape::Z2xZ2 => 2,
            Shape::Z2xZ4 => 4,
            Shape::Z2xZ6 => 6,
            Shape::Z2xZ8 => 8,
        }
    }

    pub fn size(self) -> usize {
        2 * self.exponent() as usize
    }

    fn from_exponent(e: u32) -> Option<Self> {
        match e {
            2 => Some(Shape::Z2xZ2),
            4 => Some(Shape::Z2xZ4),
            6 => Some(Shape::Z2xZ6),
            8 => Some(Shape::Z2xZ8),
            _ => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2xZ{}", self.exponent())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPoint {
    pub point: Point,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionGroup {
    pub shape: Shape,
    /// Every torsion point, sorted by order and then coordinates.
    pub points: Vec<TorsionPoint>,
    /// A point of maximal order and a 2-torsion point outside its span.
    pub generators: (Point, Point),
}

impl TorsionGroup {
    pub fn points_of_order(&self, order: u32) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(move |p| p.order == order).map(|p| &p.point)
    }

    /// Distinct x-coordinates of the points of the given order.
    pub fn x_coordinates(&self, order: u32) -> BTreeSet<Rat> {
        self.points_of_order(order).filter_map(|p| p.x().cloned()).collect()
    }

    pub fn has_point_above_two(&self) -> bool {
        self.shape != Shape::Z2xZ2
    }
}

/// `{inf, (0,0), (-(r+s)N, 0), ((r-s)N, 0)}`
pub fn two_torsion(curve: &Curve) -> Vec<Point> {
    curve.two_torsion()
}

/// Points of order 3: rational roots of
/// `3x^4 + 8Ns x^3 - 6N^2(r^2-s^2) x^2 - N^4(r^2-s^2)^2` where the curve has a
/// rational `y`.
pub fn three_torsion(curve: &Curve) -> Vec<Point> {
    let n = curve.n();
    let a = Int::from(2) * curve.angle().s() * n;
    let d = curve.angle().sin_squared_numer() * n * n;
    let d2 = &d * &d;
    let four_a = Int::from(4) * &a;
    let six_d = Int::from(6) * &d;

    // root bound 2 * max(|4A/3|, sqrt(6D/3), (D^2/3)^(1/4))
    let bound = Int::from(2)
        * [
            (four_a.abs() + 2) / 3 + 1,
            (Int::from(2) * &d).sqrt() + 1,
            Int::nth_root(&(&d2 / 3), 4) + 1,
        ]
        .into_iter()
        .max()
        .expect("nonempty");

    let mut fd2 = factorize(&d);
    for f in &mut fd2 {
        f.1 *= 2;
    }
    let mut out = BTreeSet::new();
    for den in [Int::one(), Int::from(3)] {
        let limit = &bound * &den;
        for p in divisors(&fd2).into_iter().take_while(|p| *p <= limit) {
            for p in [p.clone(), -p] {
                if !p.gcd(&den).is_one() {
                    continue;
                }
                let (p2, q2) = (&p * &p, &den * &den);
                let value = Int::from(3) * &p2 * &p2 + &four_a * &p2 * &p * &den
                    - &six_d * &p2 * &q2
                    - &d2 * &q2 * &q2;
                if !value.is_zero() {
                    continue;
                }
                let x = Rat::new(p, den.clone());
                if let Some(y) = is_square(&curve.rhs(&x)).filter(|y| !y.is_zero()) {
                    out.insert((x.clone(), y.clone()));
                    out.insert((x, -y));
                }
            }
        }
    }
    out.into_iter().map(|(x, y)| Point::new(x, y)).collect()
}

/// All `P` with `[2]P = q`. With `e_i` the roots of the cubic, `q` halves iff
/// each `x_q - e_i` is a rational square; the halves have
/// `x = x_q + a1 a2 + a1 a3 + a2 a3` over signs `a_i = ±sqrt(x_q - e_i)` with
/// `a1 a2 a3 = y_q`.
pub fn halve_point(curve: &Curve, q: &Point) -> Result<Vec<Point>> {
    let (xq, yq) = match q {
        Point::Infinity => {
            return Err(Error::InvalidArgument("halving expects an affine point".into()))
        }
        Point::Affine { x, y } => (x, y),
    };
    if !curve.on_curve(q) {
        return Err(Error::OffCurve);
    }
    let mut alphas = Vec::with_capacity(3);
    for e in curve.roots() {
        match is_square(&(xq - e)) {
            Some(a) => alphas.push(a),
            None => return Ok(Vec::new()),
        }
    }
    let mut xs = BTreeSet::new();
    for signs in 0u8..8 {
        let a: Vec<Rat> = (0..3)
            .map(|i| if signs >> i & 1 == 1 { -alphas[i].clone() } else { alphas[i].clone() })
            .collect();
        if &a[0] * &a[1] * &a[2] != *yq {
            continue;
        }
        xs.insert(xq + &a[0] * &a[1] + &a[0] * &a[2] + &a[1] * &a[2]);
    }
    let mut out = BTreeSet::new();
    for x in xs {
        let Some(y) = is_square(&curve.rhs(&x)) else {
            return Err(Error::InternalInconsistency(format!("half x = {x} has no rational y")));
        };
        for y in [y.clone(), -y] {
            let p = Point::new(x.clone(), y);
            if curve.double(&p)? == *q {
                out.insert(sort_key(&p));
            }
        }
    }
    Ok(out.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

fn sort_key(p: &Point) -> (Rat, Rat) {
    match p {
        Point::Affine { x, y } => (x.clone(), y.clone()),
        Point::Infinity => unreachable!("affine only"),
    }
}

pub fn torsion_subgroup(curve: &Curve) -> Result<TorsionGroup> {
    let inconsistent = |msg: String| Err(Error::InternalInconsistency(msg));
    let finite_two: Vec<Point> = curve.two_torsion().into_iter().skip(1).collect();

    let mut by_order: Vec<(Point, u32)> = vec![(Point::Infinity, 1)];
    by_order.extend(finite_two.iter().map(|p| (p.clone(), 2)));

    let mut order4 = Vec::new();
    for t in &finite_two {
        order4.extend(halve_point(curve, t)?);
    }
    let mut order8 = Vec::new();
    for p in &order4 {
        order8.extend(halve_point(curve, p)?);
    }
    for p in &order8 {
        if !halve_point(curve, p)?.is_empty() {
            return inconsistent(format!("{p} has a rational half: order 16"));
        }
    }
    let order3 = three_torsion(curve);
    if !order3.is_empty() && !order4.is_empty() {
        return inconsistent("points of order 3 and 4 together: order 12".into());
    }
    let mut order6 = Vec::new();
    for p in &order3 {
        for t in &finite_two {
            order6.push(curve.add(p, t)?);
        }
    }
    by_order.extend(order4.into_iter().map(|p| (p, 4)));
    by_order.extend(order8.into_iter().map(|p| (p, 8)));
    by_order.extend(order3.into_iter().map(|p| (p, 3)));
    by_order.extend(order6.into_iter().map(|p| (p, 6)));

    let exponent = by_order.iter().map(|(_, o)| *o).max().unwrap_or(1);
    let Some(shape) = Shape::from_exponent(exponent) else {
        return inconsistent(format!("maximal order {exponent} is not admissible"));
    };
    for (p, claimed) in &by_order {
        if curve.order_bounded(p)? != Order::Finite(*claimed) {
            return inconsistent(format!("{p} does not have order {claimed}"));
        }
    }
    by_order.sort_by(|(p, o), (q, o2)| o.cmp(o2).then_with(|| p.x().cmp(&q.x())).then_with(|| p.y().cmp(&q.y())));
    by_order.dedup();
    if by_order.len() != shape.size() {
        return inconsistent(format!("{} points for shape {shape}", by_order.len()));
    }

    let points: Vec<TorsionPoint> =
        by_order.into_iter().map(|(point, order)| TorsionPoint { point, order }).collect();
    let set: BTreeSet<(Option<Rat>, Option<Rat>)> =
        points.iter().map(|p| (p.point.x().cloned(), p.point.y().cloned())).collect();
    let key = |p: &Point| (p.x().cloned(), p.y().cloned());
    for p in &points {
        for q in &points {
            if !set.contains(&key(&curve.add(&p.point, &q.point)?)) {
                return inconsistent(format!("{} + {} leaves the torsion set", p.point, q.point));
            }
        }
    }

    let gen = points
        .iter()
        .rev()
        .find(|p| p.order == exponent)
        .map(|p| p.point.clone())
        .expect("a point of maximal order exists");
    let mut span = BTreeSet::new();
    let mut acc = Point::Infinity;
    for _ in 0..exponent {
        span.insert(key(&acc));
        acc = curve.add(&acc, &gen)?;
    }
    let Some(second) = finite_two.into_iter().find(|t| !span.contains(&key(t))) else {
        return inconsistent(format!("2-torsion lies inside the span of {gen}"));
    };

    Ok(TorsionGroup { shape, points, generators: (gen, second) })
}

/// The cases of the torsion classification for square-free `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    C1i,
    C1ii,
    C2i,
    C2ii,
    C2iii,
    C2iv,
    C3i,
    C3ii,
    C4,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::C1i,
        CaseLabel::C1ii,
        CaseLabel::C2i,
        CaseLabel::C2ii,
        CaseLabel::C2iii,
        CaseLabel::C2iv,
        CaseLabel::C3i,
        CaseLabel::C3ii,
        CaseLabel::C4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::C1i => "1i",
            CaseLabel::C1ii => "1ii",
            CaseLabel::C2i => "2i",
            CaseLabel::C2ii => "2ii",
            CaseLabel::C2iii => "2iii",
            CaseLabel::C2iv => "2iv",
            CaseLabel::C3i => "3i",
            CaseLabel::C3ii => "3ii",
            CaseLabel::C4 => "4",
        }
    }

    /// The torsion shape the case promises.
    pub fn shape(self) -> Shape {
        match self {
            CaseLabel::C1i | CaseLabel::C1ii => Shape::Z2xZ8,
            CaseLabel::C2i | CaseLabel::C2ii | CaseLabel::C2iii | CaseLabel::C2iv => Shape::Z2xZ6,
            CaseLabel::C3i | CaseLabel::C3ii => Shape::Z2xZ4,
            CaseLabel::C4 => Shape::Z2xZ2,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown case label {s:?}")))
    }
}

/// A member of one of the constructive families, with its seed triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub case: CaseLabel,
    pub u: Int,
    pub v: Int,
    pub angle: Angle,
    pub n: Int,
    pub seed_triple: ThetaTriple<Rat>,
}

fn i(n: i64) -> Int {
    Int::from(n)
}

fn pow(x: &Int, k: usize) -> Int {
    num_traits::pow(x.clone(), k)
}

/// Builds `(N, r, s)` and the seed triple of a family member, checking every
/// side condition. Irrational bounds are tested in integer form:
/// `u < (1 + sqrt 2) v` as `(u - v)^2 < 2v^2`.
pub fn family_instance(case: CaseLabel, u: &Int, v: &Int) -> Result<FamilyInstance> {
    let fail = |cond: &str| Err(Error::constraint(case, cond));
    if !u.is_positive() || !v.is_positive() {
        return fail("u, v > 0");
    }
    if !u.gcd(v).is_one() {
        return fail("gcd(u, v) = 1");
    }
    let (u2, v2) = (u * u, v * v);
    let uv = u * v;
    let (n, r, s, seed): (Int, Int, Int, [Int; 3]) = match case {
        CaseLabel::C1i | CaseLabel::C1ii => {
            if u.is_odd() == v.is_odd() {
                return fail("u and v have opposite parity");
            }
            let gap = pow(&(u - v), 2);
            let two_v2 = i(2) * &v2;
            if case == CaseLabel::C1i {
                if !(u > v && gap < two_v2) {
                    return fail("(1 + sqrt 2) v > u > v");
                }
                let r = i(8) * pow(&uv, 4);
                let s = &r - pow(&(&u2 - &v2), 4);
                let seed = [i(4) * u * pow(v, 3), i(4) * pow(u, 3) * v, i(2) * (pow(u, 4) - pow(v, 4))];
                (i(1), r, s, seed)
            } else {
                if !(u > v && gap > two_v2) {
                    return fail("u > (1 + sqrt 2) v");
                }
                let r = pow(&(&u2 - &v2), 4);
                let s = &r - i(32) * pow(&uv, 4);
                let seed = [
                    i(2) * (u + v) * pow(&(u - v), 3),
                    i(2) * pow(&(u + v), 3) * (u - v),
                    i(8) * &uv * (&u2 + &v2),
                ];
                (i(2), r, s, seed)
            }
        }
        CaseLabel::C2i | CaseLabel::C2ii | CaseLabel::C2iii | CaseLabel::C2iv => {
            if *u <= i(2) * v {
                return fail("u > 2v");
            }
            let big_r = pow(&(u - v), 3) * (u + v);
            let big_rs = pow(u, 3) * (u - i(2) * v);
            let (n, r_div, rs_mul, rs_div) = match case {
                CaseLabel::C2i => (1, 2, 1, 1),
                CaseLabel::C2ii => (2, 1, 2, 1),
                CaseLabel::C2iii => (3, 6, 1, 3),
                _ => (6, 3, 2, 3),
            };
            let (r, rem) = big_r.div_rem(&i(r_div));
            if !rem.is_zero() {
                return fail(&format!("(u - v)^3 (u + v) divisible by {r_div}"));
            }
            let (rs, rem) = (big_rs * i(rs_mul)).div_rem(&i(rs_div));
            if !rem.is_zero() {
                return fail(&format!("u^3 (u - 2v) divisible by {rs_div}"));
            }
            let k = if n % 2 == 0 { i(2) } else { i(1) };
            let seed = [&k * (&u2 - &v2), &k * pow(&(u - v), 2), i(2) * &k * &uv];
            let s = rs - &r;
            (i(n), r, s, seed)
        }
        CaseLabel::C3i => {
            let r = i(2) * &u2;
            let s = &r - &v2;
            if decode_8(&r, &s, &i(1)).is_some() {
                return fail("not of case 1i");
            }
            (i(1), r, s, [i(2) * u, i(2) * u, i(2) * v])
        }
        CaseLabel::C3ii => {
            let r = u2.clone();
            let s = &r - i(2) * &v2;
            if decode_8(&r, &s, &i(2)).is_some() {
                return fail("not of case 1ii");
            }
            (i(2), r, s, [i(2) * u, i(2) * u, i(4) * v])
        }
        CaseLabel::C4 => return fail("case 4 is the complement of the families"),
    };
    let angle = match Angle::new(s, r) {
        Ok(a) => a,
        Err(e) => return fail(&e.to_string()),
    };
    let [a, b, c] = seed.map(Rat::from_integer);
    let seed_triple = ThetaTriple::new(&angle, a, b, c)?;
    if *seed_triple.n() != n {
        return Err(Error::InternalInconsistency(format!(
            "seed triple witnesses N = {} instead of {n}",
            seed_triple.n()
        )));
    }
    Ok(FamilyInstance { case, u: u.clone(), v: v.clone(), angle, n, seed_triple })
}

/// `(u, v)` from `u^2 + v^2 = sqrt((u^2 - v^2)^2 + 4 (uv)^2)`.
fn uv_from_difference_and_product(diff: &Int, prod: &Int) -> Option<(Int, Int)> {
    let sum = exact_sqrt(&(diff * diff + i(4) * prod * prod))?;
    let u = exact_sqrt(&(&sum + diff).div_exact_or_none(&i(2))?)?;
    let v = exact_sqrt(&(&sum - diff).div_exact_or_none(&i(2))?)?;
    Some((u, v))
}

trait DivExact: Sized {
    fn div_exact_or_none(&self, d: &Self) -> Option<Self>;
}

impl DivExact for Int {
    fn div_exact_or_none(&self, d: &Int) -> Option<Int> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

/// Inverts the order-8 families: `1i` when `N = 1`, `1ii` when `N = 2`.
fn decode_8(r: &Int, s: &Int, n: &Int) -> Option<(CaseLabel, Int, Int)> {
    let (case, diff4, prod4) = if n.is_one() {
        (CaseLabel::C1i, r - s, r.div_exact_or_none(&i(8))?)
    } else if *n == i(2) {
        (CaseLabel::C1ii, r.clone(), (r - s).div_exact_or_none(&i(32))?)
    } else {
        return None;
    };
    let diff = integer_nth_root(&diff4, 4)?;
    let prod = integer_nth_root(&prod4, 4)?;
    let (u, v) = uv_from_difference_and_product(&diff, &prod)?;
    let inst = family_instance(case, &u, &v).ok()?;
    (inst.angle.r() == r && inst.angle.s() == s).then_some((case, u, v))
}

/// Inverts the order-6 families by enumerating `u - v` with `(u - v)^3 | k r`.
fn decode_6(r: &Int, s: &Int, n: &Int) -> Option<(CaseLabel, Int, Int)> {
    let (case, k) = match n.to_i64()? {
        1 => (CaseLabel::C2i, 2),
        2 => (CaseLabel::C2ii, 1),
        3 => (CaseLabel::C2iii, 6),
        6 => (CaseLabel::C2iv, 3),
        _ => return None,
    };
    let m = r * i(k);
    let mut g = i(1);
    while pow(&g, 3) <= m {
        if let Some(sum) = m.div_exact_or_none(&pow(&g, 3)) {
            let twice_u = &sum + &g;
            if twice_u.is_even() {
                let u = twice_u / 2;
                let v = &u - &g;
                if let Ok(inst) = family_instance(case, &u, &v) {
                    if inst.angle.r() == r && inst.angle.s() == s {
                        return Some((case, u, v));
                    }
                }
            }
        }
        g += 1;
    }
    None
}

/// Case label of `(angle, N)`. Torsion depends only on the square-free part of
/// `N`, so the arithmetic conditions are read at that part.
pub fn classify_case(angle: &Angle, n: &Int) -> Result<CaseLabel> {
    let d = square_free_part(n)?;
    let curve = Curve::new(angle, &d)?;
    let shape = torsion_subgroup(&curve)?.shape;
    let (r, s) = (angle.r(), angle.s());
    let mismatch = || {
        Err(Error::InternalInconsistency(format!(
            "torsion {shape} for r = {r}, s = {s}, N = {n} matches no case condition"
        )))
    };
    match shape {
        Shape::Z2xZ2 => Ok(CaseLabel::C4),
        Shape::Z2xZ8 => decode_8(r, s, &d).map(|(c, _, _)| c).map_or_else(mismatch, Ok),
        Shape::Z2xZ6 => decode_6(r, s, &d).map(|(c, _, _)| c).map_or_else(mismatch, Ok),
        Shape::Z2xZ4 => {
            let sq = |x: Int| exact_sqrt(&x).is_some();
            if d.is_one() && sq(i(2) * r) && sq(r - s) {
                Ok(CaseLabel::C3i)
            } else if d == i(2) && sq(r.clone()) && sq(i(2) * (r - s)) {
                Ok(CaseLabel::C3ii)
            } else {
                mismatch()
            }
        }
    }
}

/// Triples for every torsion point of order greater than two.
pub fn torsion_triples(curve: &Curve, group: &TorsionGroup) -> Result<Vec<(Point, ThetaTriple<Rat>)>> {
    group
        .points
        .iter()
        .filter(|p| p.order > 2)
        .map(|p| Ok((p.point.clone(), phi(curve, &p.point)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub r: i64,
    pub s: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub shape: Shape,
    pub case: String,
}

/// Shape and case of every valid `(r, s, N)` with `r <= r_max`, `N <= n_max`.
pub fn atlas(r_max: i64, n_max: i64) -> Result<Vec<AtlasRow>> {
    let jobs: Vec<(i64, i64, i64)> = (1..=r_max)
        .flat_map(|r| (1 - r..r).map(move |s| (r, s)))
        .filter(|(r, s)| s.gcd(r) == 1)
        .flat_map(|(r, s)| (1..=n_max).map(move |n| (r, s, n)))
        .collect();
    jobs.into_par_iter()
        .map(|(r, s, n)| {
            let angle = Angle::new(s, r)?;
            let shape = torsion_subgroup(&Curve::new(&angle, &i(n))?)?.shape;
            let case = classify_case(&angle, &i(n))?;
            Ok(AtlasRow { r, s, n, shape, case: case.to_string() })
        })
        .collect()
}
