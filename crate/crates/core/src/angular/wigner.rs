//! Wigner 3j and 6j symbols evaluated by the Racah sum.
//!
//! Factorials are exact big integers and the alternating sum is accumulated in
//! exact rational arithmetic, so there is no cancellation error; the result is
//! converted to `f64` once at the end.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::AngularError;

/// Quantum numbers are carried internally as twice their value, so that
/// half-integers stay exact.
pub(crate) type Twice = i64;

/// Converts a half-integer given as `f64` into its exact doubled value.
pub(crate) fn twice(x: f64) -> Result<Twice, AngularError> {
    let doubled = 2.0 * x;
    let rounded = doubled.round();
    if !rounded.is_finite() || (doubled - rounded).abs() > 1e-9 {
        return Err(AngularError::NotHalfInteger(x));
    }
    Ok(rounded as Twice)
}

fn factorial(n: i64) -> BigInt {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut v = vec![BigInt::one()];
        for k in 1..128u64 {
            let next = v.last().unwrap() * k;
            v.push(next);
        }
        v
    });
    let n = usize::try_from(n).expect("factorial argument must be non-negative");
    if n < table.len() {
        table[n].clone()
    } else {
        let mut acc = table.last().unwrap().clone();
        for k in table.len()..=n {
            acc *= k as u64;
        }
        acc
    }
}

/// A triad (a, b, c) couples iff it satisfies the triangle rule and has an
/// integer sum. Arguments in doubled units.
fn triad_ok(a: Twice, b: Twice, c: Twice) -> bool {
    (a + b + c) % 2 == 0 && a + b >= c && a + c >= b && b + c >= a
}

/// Triangle coefficient Delta(a,b,c) as an exact rational.
fn triangle_coeff(a: Twice, b: Twice, c: Twice) -> BigRational {
    let num = factorial((a + b - c) / 2) * factorial((a - b + c) / 2) * factorial((-a + b + c) / 2);
    let den = factorial((a + b + c) / 2 + 1);
    BigRational::new(num, den)
}

pub(crate) fn wigner_3j_twice(
    tj1: Twice,
    tj2: Twice,
    tj3: Twice,
    tm1: Twice,
    tm2: Twice,
    tm3: Twice,
) -> f64 {
    if tm1 + tm2 + tm3 != 0 || !triad_ok(tj1, tj2, tj3) {
        return 0.0;
    }
    // Each projection must lie in range and differ from its j by an integer.
    for (tj, tm) in [(tj1, tm1), (tj2, tm2), (tj3, tm3)] {
        if tm.abs() > tj || (tj + tm) % 2 != 0 {
            return 0.0;
        }
    }

    let k_min = [0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2]
        .into_iter()
        .max()
        .unwrap();
    let k_max = [
        (tj1 + tj2 - tj3) / 2,
        (tj1 - tm1) / 2,
        (tj2 + tm2) / 2,
    ]
    .into_iter()
    .min()
    .unwrap();
    if k_min > k_max {
        return 0.0;
    }

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial((tj1 + tj2 - tj3) / 2 - k)
            * factorial((tj1 - tm1) / 2 - k)
            * factorial((tj2 + tm2) / 2 - k)
            * factorial((tj3 - tj2 + tm1) / 2 + k)
            * factorial((tj3 - tj1 - tm2) / 2 + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return 0.0;
    }

    let weight = triangle_coeff(tj1, tj2, tj3)
        * factorial((tj1 + tm1) / 2)
        * factorial((tj1 - tm1) / 2)
        * factorial((tj2 + tm2) / 2)
        * factorial((tj2 - tm2) / 2)
        * factorial((tj3 + tm3) / 2)
        * factorial((tj3 - tm3) / 2);

    let phase = if (tj1 - tj2 - tm3) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    phase * sum.to_f64().unwrap() * weight.to_f64().unwrap().sqrt()
}

pub(crate) fn wigner_6j_twice(tj: [Twice; 6]) -> f64 {
    let (sum, weight) = wigner_6j_parts(tj);
    if sum.is_zero() {
        return 0.0;
    }
    sum.to_f64().unwrap() * weight.to_f64().unwrap().sqrt()
}

/// Exact pieces of a 6j symbol: the symbol equals `sum * sqrt(weight)`.
///
/// `weight` is the product of the four triangle coefficients (a non-negative
/// rational); `sum` is the alternating Racah sum (rational). Violated triads
/// yield `(0, 1)`.
pub(crate) fn wigner_6j_parts(tj: [Twice; 6]) -> (BigRational, BigRational) {
    let [a, b, c, d, e, f] = tj;
    let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
    if triads.iter().any(|&(x, y, z)| !triad_ok(x, y, z)) {
        return (BigRational::zero(), BigRational::one());
    }
    let t: Vec<i64> = triads.iter().map(|&(x, y, z)| (x + y + z) / 2).collect();
    let q = [
        (a + b + d + e) / 2,
        (b + c + e + f) / 2,
        (a + c + d + f) / 2,
    ];
    let k_min = *t.iter().max().unwrap();
    let k_max = *q.iter().min().unwrap();
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = t.iter().map(|ti| factorial(k - ti)).product::<BigInt>()
            * q.iter().map(|qi| factorial(qi - k)).product::<BigInt>();
        let term = BigRational::new(factorial(k + 1), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let weight: BigRational = triads
        .iter()
        .map(|&(x, y, z)| triangle_coeff(x, y, z))
        .product();
    (sum, weight)
}

/// `sqrt` of a non-negative rational when it is itself rational.
pub(crate) fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    use num_integer::Roots;
    let (num, den) = (x.numer(), x.denom());
    if num.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let sqrt_num = num.sqrt();
    let sqrt_den = den.sqrt();
    if &(&sqrt_num * &sqrt_num) == num && &(&sqrt_den * &sqrt_den) == den {
        Some(BigRational::new(sqrt_num, sqrt_den))
    } else {
        None
    }
}

fn check_spin(j: f64) -> Result<Twice, AngularError> {
    let tj = twice(j)?;
    if tj < 0 {
        return Err(AngularError::InvalidSpin(j));
    }
    Ok(tj)
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`.
///
/// Returns exactly 0 whenever the triangle rule, the projection sum rule, or
/// the `|m| <= j` range is violated; rejects arguments that are not
/// half-integers.
pub fn wigner_3j(j1: f64, j2: f64, j3: f64, m1: f64, m2: f64, m3: f64) -> Result<f64, AngularError> {
    let (tj1, tj2, tj3) = (check_spin(j1)?, check_spin(j2)?, check_spin(j3)?);
    let (tm1, tm2, tm3) = (twice(m1)?, twice(m2)?, twice(m3)?);
    Ok(wigner_3j_twice(tj1, tj2, tj3, tm1, tm2, tm3))
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`; zero on any violated triad.
pub fn wigner_6j(j1: f64, j2: f64, j3: f64, j4: f64, j5: f64, j6: f64) -> Result<f64, AngularError> {
    let tj = [
        check_spin(j1)?,
        check_spin(j2)?,
        check_spin(j3)?,
        check_spin(j4)?,
        check_spin(j5)?,
        check_spin(j6)?,
    ];
    Ok(wigner_6j_twice(tj))
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    const TOL: f64 = 1e-14;

    #[test]
    fn threej_known_values() {
        // Frozen against an exact-rational evaluation (independent CAS).
        let cases = [
            ((1.0, 1.0, 0.0, 0.0, 0.0, 0.0), -(1.0f64 / 3.0).sqrt()),
            ((1.0, 1.0, 2.0, 1.0, -1.0, 0.0), (30.0f64).sqrt() / 30.0),
            ((1.5, 1.0, 1.5, 0.5, 0.0, -0.5), -(15.0f64).sqrt() / 30.0),
            ((2.0, 2.0, 2.0, 1.0, -1.0, 0.0), (70.0f64).sqrt() / 70.0),
            ((2.5, 2.0, 1.5, -0.5, 1.0, -0.5), -(105.0f64).sqrt() / 42.0),
            ((4.0, 4.0, 4.0, 2.0, -3.0, 1.0), -(715.0f64).sqrt() / 429.0),
            ((4.0, 3.5, 1.5, 2.0, -2.5, 0.5), -11.0 * (70.0f64).sqrt() / 420.0),
        ];
        for ((j1, j2, j3, m1, m2, m3), expect) in cases {
            let got = wigner_3j(j1, j2, j3, m1, m2, m3).unwrap();
            assert_relative_eq!(got, expect, max_relative = TOL);
        }
    }

    #[test]
    fn threej_zeros() {
        // odd-sum symmetry at m = 0
        assert_eq!(wigner_3j(1.0, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        // triangle violation
        assert_eq!(wigner_3j(2.0, 1.0, 5.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        // m-sum violation
        assert_eq!(wigner_3j(1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap(), 0.0);
        // |m| > j
        assert_eq!(wigner_3j(1.0, 1.0, 2.0, 2.0, -1.0, -1.0).unwrap(), 0.0);
        // half-integer total spin cannot couple
        assert_eq!(wigner_3j(0.5, 1.0, 1.0, 0.5, -0.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn sixj_known_values() {
        let cases = [
            (([1.0, 1.0, 0.0, 1.0, 1.0, 1.0]), -1.0 / 3.0),
            (([1.0, 1.0, 1.0, 1.0, 1.0, 1.0]), 1.0 / 6.0),
            (([1.0, 1.0, 2.0, 1.0, 1.0, 2.0]), 1.0 / 30.0),
            (([1.5, 1.0, 1.5, 1.5, 1.0, 0.5]), 1.0 / 6.0),
            (([2.0, 2.0, 2.0, 2.0, 2.0, 2.0]), -3.0 / 70.0),
            (([1.5, 1.5, 1.0, 1.5, 1.5, 2.0]), 1.0 / 20.0),
            (([2.5, 1.5, 1.0, 0.5, 1.5, 2.0]), (105.0f64).sqrt() / 60.0),
        ];
        for (j, expect) in cases {
            let got = wigner_6j(j[0], j[1], j[2], j[3], j[4], j[5]).unwrap();
            assert_relative_eq!(got, expect, max_relative = TOL);
        }
    }

    #[test]
    fn sixj_zero_with_spin_closed_form() {
        // {0 j j; 0 j j} = (-1)^{2j} / (2j + 1)
        for tj in 0..=8i64 {
            let j = tj as f64 / 2.0;
            let got = wigner_6j(0.0, j, j, 0.0, j, j).unwrap();
            let sign = if tj % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(got, sign / (tj as f64 + 1.0), max_relative = TOL);
        }
    }

    #[test]
    fn sixj_triad_violations_are_zero() {
        assert_eq!(wigner_6j(1.0, 1.0, 3.0, 1.0, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(wigner_6j(1.0, 1.0, 1.0, 0.5, 0.5, 2.5).unwrap(), 0.0);
        // integer + half-integer triad cannot couple
        assert_eq!(wigner_6j(0.5, 1.0, 1.0, 1.0, 0.5, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_half_integers() {
        assert!(wigner_3j(1.2, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(wigner_3j(1.0, 1.0, 1.0, 0.3, -0.3, 0.0).is_err());
        assert!(wigner_6j(1.0, 1.0, 1.0, 1.0, 0.75, 1.0).is_err());
        assert!(wigner_3j(-1.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }
}
