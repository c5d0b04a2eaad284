//! Exact rational and complex argument parsing.

use anyhow::{anyhow, bail, Result};
use num_complex::Complex64;
use riaho_core::scalar::Q;

fn pow10(k: u32) -> Result<i128> {
    10i128.checked_pow(k).ok_or_else(|| anyhow!("exponent too large"))
}

fn parse_decimal(s: &str) -> Result<Q> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| anyhow!("bad exponent in '{}'", s))?),
        None => (s, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        bail!("not a number: '{}'", s);
    }
    let mut num: i128 = 0;
    for c in int.chars().chain(frac.chars()) {
        num = num
            .checked_mul(10)
            .and_then(|n| n.checked_add(c.to_digit(10).unwrap() as i128))
            .ok_or_else(|| anyhow!("'{}' has too many digits", s))?;
    }
    if neg {
        num = -num;
    }
    let e = exp - frac.len() as i32;
    Ok(if e >= 0 {
        Q::from_integer(num.checked_mul(pow10(e as u32)?).ok_or_else(|| anyhow!("'{}' overflows", s))?)
    } else {
        Q::new(num, pow10((-e) as u32)?)
    })
}

/// `"num/den"`, an integer, or a decimal such as `0.25` or `1.5e-3`, all exact.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n = parse_decimal(a.trim())?;
            let d = parse_decimal(b.trim())?;
            if d == Q::from_integer(0) {
                bail!("zero denominator in '{}'", s);
            }
            Ok(n / d)
        }
        None => parse_decimal(s),
    }
}

/// `"re,im"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("complex value must be 're,im', got '{}'", s))?;
    let re: f64 = a.trim().parse().map_err(|_| anyhow!("bad real part in '{}'", s))?;
    let im: f64 = b.trim().parse().map_err(|_| anyhow!("bad imaginary part in '{}'", s))?;
    if !(re.is_finite() && im.is_finite()) {
        bail!("complex value must be finite: '{}'", s);
    }
    Ok(Complex64::new(re, im))
}

/// Finite float.
pub fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| anyhow!("not a number: '{}'", s))?;
    if !v.is_finite() {
        bail!("value must be finite: '{}'", s);
    }
    Ok(v)
}

/// `lo:hi:count` with `count >= 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.lo + (self.hi - self.lo) * k as f64 / (self.count - 1) as f64)
    }
}

pub fn parse_grid(s: &str) -> Result<Grid> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("grid must be 'lo:hi:count', got '{}'", s);
    }
    let lo = parse_f64(parts[0])?;
    let hi = parse_f64(parts[1])?;
    let count: usize = parts[2].trim().parse().map_err(|_| anyhow!("bad point count in '{}'", s))?;
    if count < 2 || hi <= lo {
        bail!("grid needs hi > lo and at least 2 points: '{}'", s);
    }
    Ok(Grid { lo, hi, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128, b: i128) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/3").unwrap(), q(2, 3));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), q(-2, 3));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e2").unwrap(), q(-125, 1));
        assert_eq!(parse_rational("5e-3").unwrap(), q(1, 200));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "1/0", "a", "1//2", "1.2.3", "-", "1e"] {
            assert!(parse_rational(bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn complexes_and_grids() {
        assert_eq!(parse_complex("1,-0.5").unwrap(), Complex64::new(1.0, -0.5));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("1,x").is_err());
        assert!(parse_complex("inf,0").is_err());
        let g = parse_grid("-1:1:3").unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1:1").is_err());
    }
}
