use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational numbers used for realisation coordinates and distances.
pub type Q = Ratio<i64>;

/// Accepts `"a/b"`, integers and finite decimals such as `"-0.7"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: i64 = match int.trim() {
            "" | "-" | "+" => 0,
            t => t.parse().map_err(|_| bad())?,
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = Q::from_integer(int_part.abs()) + Q::new(num, den);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<i64>().map(Q::from_integer).map_err(|_| bad())
}

pub fn format_rational(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal form when the expansion terminates, `num/den` otherwise.
pub fn format_decimal(q: Q) -> String {
    let mut d = *q.denom();
    let mut digits = 0;
    let (mut twos, mut fives) = (0, 0);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format_rational(q);
    }
    digits += twos.max(fives);
    if digits == 0 {
        return q.numer().to_string();
    }
    let scale = 10i64.pow(digits);
    let scaled = (q * Q::from_integer(scale)).to_integer();
    let sign = if q < Q::zero() { "-" } else { "" };
    let a = scaled.abs();
    format!("{sign}{}.{:0width$}", a / scale, a % scale, width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_formatting() {
        assert_eq!(parse_rational("-1/2").unwrap(), Q::new(-1, 2));
        assert_eq!(parse_rational("-0.7").unwrap(), Q::new(-7, 10));
        assert_eq!(parse_rational("-.25").unwrap(), Q::new(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), Q::from_integer(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(Q::new(-2, 4)), "-1/2");
        assert_eq!(format_decimal(Q::new(1, 2)), "0.5");
        assert_eq!(format_decimal(Q::new(-3, 40)), "-0.075");
        assert_eq!(format_decimal(Q::new(1, 3)), "1/3");
        assert_eq!(format_decimal(Q::from_integer(0)), "0");
    }
}
