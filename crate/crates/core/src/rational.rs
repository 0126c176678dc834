//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator, arbitrary precision, no rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Whitespace around the parts is ignored.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale through the integer part.
        let int_part = x.trunc();
        let rest = x - &int_part;
        int_part.to_integer().to_f64().unwrap_or(f64::NAN) + rest.to_f64().unwrap_or(0.0)
    })
}

/// Nearest rational with the given denominator (ties round up).
pub fn round_to_denominator(x: f64, denominator: u64) -> Rational {
    let scaled = (x * denominator as f64 + 0.5).floor();
    Rational::new(BigInt::from(scaled as i128), BigInt::from(denominator))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

pub fn signum(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_examples() {
        assert_eq!(frac(&rat(5, 4)), rat(1, 4));
        assert_eq!(frac(&rat(-3, 2)), rat(1, 2));
        assert_eq!(frac(&int(7)), int(0));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("5/4"), Some(rat(5, 4)));
        assert_eq!(parse_rational(" -6/8 "), Some(rat(-3, 4)));
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a/2"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-8, 4)), "-2");
    }

    #[test]
    fn rounding_to_dyadic() {
        let r = round_to_denominator(0.125, 1 << 20);
        assert_eq!(r, rat(1, 8));
        let r = round_to_denominator(std::f64::consts::FRAC_1_PI, 1 << 20);
        assert!((to_f64(&r) - std::f64::consts::FRAC_1_PI).abs() <= 0.5 / (1u64 << 20) as f64);
    }

    proptest::proptest! {
        #[test]
        fn frac_is_idempotent_and_in_range(n in -10_000i64..10_000, d in 1i64..500) {
            let x = rat(n, d);
            let f = frac(&x);
            proptest::prop_assert_eq!(frac(&f), f.clone());
            proptest::prop_assert!(f >= int(0) && f < int(1));
            proptest::prop_assert!((x - f).is_integer());
        }
    }
}
