//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"p"`, or `"-p/q"`.
pub fn parse(token: &str) -> Result<Rational> {
    let token = token.trim();
    let bad = || Error::Parse(format!("not a rational: '{token}'"));
    let value = match token.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{token}'")));
            }
            Rational::new(num, den)
        }
        None => Rational::from_integer(token.parse().map_err(|_| bad())?),
    };
    Ok(value)
}

/// Formats as `"p/q"`, or `"p"` when the value is an integer.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(zero(), |acc, v| acc + v)
}

pub fn dot(lhs: &[Rational], rhs: &[Rational]) -> Rational {
    lhs.iter()
        .zip(rhs)
        .filter(|(l, r)| !l.is_zero() && !r.is_zero())
        .fold(zero(), |acc, (l, r)| acc + l * r)
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

pub fn is_positive(v: &Rational) -> bool {
    v.is_positive()
}

pub fn is_negative(v: &Rational) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/12").unwrap(), frac(1, 4));
        assert_eq!(parse("-2").unwrap(), int(-2));
        assert_eq!(format(&frac(2, 8)), "1/4");
        assert_eq!(format(&int(0)), "0");
        assert_eq!(format(&frac(-3, 1)), "-3");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn primitive_vector_clears_denominators() {
        let v = vec![frac(1, 2), frac(-1, 3), zero()];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::zero()]);
    }
}
