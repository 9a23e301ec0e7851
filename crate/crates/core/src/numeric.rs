//! Integer and rational predicates shared by every other module.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Int, Rat, Result};

/// Trial division bound used by [`factorize`] before falling back to Pollard rho.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 16;

/// Nonnegative exact square root of `q`, if `q` is the square of a rational.
pub fn is_square(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let num = exact_sqrt(q.numer())?;
    let den = exact_sqrt(q.denom())?;
    Some(Rat::new(num, den))
}

/// Exact integer square root of a nonnegative integer.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let t = n.sqrt();
    (&t * &t == *n).then_some(t)
}

/// The exponent `v` with `q = 2^v * (odd / odd)`.
pub fn two_adic_valuation(q: &Rat) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::InvalidArgument("2-adic valuation of zero".into()));
    }
    let num = q.numer().trailing_zeros().unwrap_or(0) as i64;
    let den = q.denom().trailing_zeros().unwrap_or(0) as i64;
    Ok(num - den)
}

/// The unique square-free `d` with `n = d * m^2`.
pub fn square_free_part(n: &Int) -> Result<Int> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "square-free part needs a positive integer, got {n}"
        )));
    }
    Ok(factorize(n)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product())
}

/// `t` with `t^k = n`, if one exists.
pub fn integer_nth_root(n: &Int, k: u32) -> Option<Int> {
    if n.is_negative() || k < 2 {
        return None;
    }
    let t = n.nth_root(k);
    (num_traits::pow(t.clone(), k as usize) == *n).then_some(t)
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
/// `0` and `±1` factor to the empty list.
pub fn factorize(n: &Int) -> Vec<(Int, u32)> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}

pub fn factorize_with_bound(n: &Int, trial_bound: u64) -> Vec<(Int, u32)> {
    let mut rest = n.abs();
    let mut out: Vec<(Int, u32)> = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let push = |p: Int, out: &mut Vec<(Int, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };

    let mut d = 2u64;
    while d <= trial_bound {
        let dd = Int::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            push(dd.clone(), &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }

    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            let mu = m.magnitude();
            if is_probable_prime(mu) {
                push(m, &mut out);
                continue;
            }
            let f = BigInt::from_biguint(Sign::Plus, pollard_brent(mu));
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    out.sort();
    out
}

/// All positive divisors of a factored integer.
pub fn divisors(factors: &[(Int, u32)]) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc *= p;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases. Deterministic below
/// 3.3 * 10^24, probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of a composite `n` (Brent's variant of Pollard rho).
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// Parses the canonical `num/den` (or bare `num`) text form.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    text.parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))
}

pub fn parse_int(text: &str) -> Result<Int> {
    let text = text.trim();
    text.parse::<Int>()
        .map_err(|e| Error::Parse(format!("bad integer {text:?}: {e}")))
}

/// Converts a rational to an integer when its denominator is one.
pub fn rat_to_int(q: &Rat) -> Option<Int> {
    q.is_integer().then(|| q.numer().clone())
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int_rat(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Number of decimal digits in the larger of numerator and denominator.
pub fn height_digits(q: &Rat) -> usize {
    let n = q.numer().abs().to_string().len();
    let d = q.denom().to_string().len();
    n.max(d)
}

pub fn to_i64(n: &Int) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn squares() {
        assert_eq!(is_square(&rat(25, 4)), Some(rat(5, 2)));
        assert_eq!(is_square(&rat(3, 1)), None);
        assert_eq!(41 * 41, 1681);
        assert_eq!(is_square(&rat(1681, 36)), Some(rat(41, 6)));
        assert_eq!(is_square(&rat(-4, 1)), None);
        assert_eq!(is_square(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic_valuation(&rat(120, 7)).unwrap(), 3);
        assert_eq!(two_adic_valuation(&rat(7, 10)).unwrap(), -1);
        assert_eq!(two_adic_valuation(&rat(1, 1)).unwrap(), 0);
        assert!(two_adic_valuation(&rat(0, 1)).is_err());
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_part(&int(12)).unwrap(), int(3));
        assert_eq!(square_free_part(&int(1)).unwrap(), int(1));
        assert_eq!(square_free_part(&int(48)).unwrap(), int(3));
        assert!(square_free_part(&int(0)).is_err());
        assert!(square_free_part(&int(-5)).is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(integer_nth_root(&int(81), 4), Some(int(3)));
        assert_eq!(integer_nth_root(&int(16), 4), Some(int(2)));
        assert_eq!(integer_nth_root(&int(7), 2), None);
        assert_eq!(integer_nth_root(&int(0), 3), Some(int(0)));
    }

    #[test]
    fn factorization_falls_back_past_trial_bound() {
        // 1000003 * 1000033, both prime and above the trial bound below
        let n = int(1_000_003) * int(1_000_033);
        let f = factorize_with_bound(&n, 100);
        assert_eq!(f, vec![(int(1_000_003), 1), (int(1_000_033), 1)]);
        let n = int(2).pow(5) * int(1_000_003).pow(2);
        assert_eq!(
            factorize_with_bound(&n, 10),
            vec![(int(2), 5), (int(1_000_003), 2)]
        );
    }

    #[test]
    fn divisor_listing() {
        let d = divisors(&factorize(&int(12)));
        assert_eq!(d, [1, 2, 3, 4, 6, 12].map(int).to_vec());
    }

    #[test]
    fn parses_canonical_text() {
        assert_eq!(parse_rat("7/10").unwrap(), rat(7, 10));
        assert_eq!(parse_rat("-14/20").unwrap(), rat(-7, 10));
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(rat(-7, 10).to_string(), "-7/10");
        assert_eq!(rat(6, 1).to_string(), "6");
    }

    fn trial_square_free(n: u64) -> bool {
        (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, c in 1i64..100_000, d in 1i64..100_000) {
            let p = rat(a, b);
            let q = rat(-c, d);
            let lhs = two_adic_valuation(&(&p * &q)).unwrap();
            prop_assert_eq!(lhs, two_adic_valuation(&p).unwrap() + two_adic_valuation(&q).unwrap());
        }

        #[test]
        fn square_root_squares_back(a in 0i64..1_000_000, b in 1i64..1_000_000) {
            let q = rat(a, b);
            if let Some(t) = is_square(&q) {
                prop_assert!(!t.is_negative());
                prop_assert_eq!(&t * &t, q.clone());
            }
            let sq = &q * &q;
            prop_assert_eq!(is_square(&sq), Some(q));
        }

        #[test]
        fn square_free_part_divides_out_a_square(n in 1u64..5_000_000) {
            let d = square_free_part(&Int::from(n)).unwrap().to_u64().unwrap();
            prop_assert_eq!(n % d, 0);
            let m2 = n / d;
            prop_assert!(exact_sqrt(&Int::from(m2)).is_some());
            prop_assert!(trial_square_free(d));
        }
    }
}
