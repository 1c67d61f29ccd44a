//! θ literals: decimals (`0.5`, `1e-3`) or exact ratios (`p/q`).

use std::fmt;
use std::str::FromStr;

use ggd_core::Theta;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaArg {
    pub literal: String,
    pub value: f64,
    /// Exact value when the literal is a ratio or a plain decimal.
    pub exact: Option<BigRational>,
}

impl ThetaArg {
    pub fn theta(&self) -> anyhow::Result<Theta> {
        Ok(Theta::new(self.value)?)
    }
}

impl fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal)
    }
}

fn ratio(num: BigInt, den: BigInt) -> (f64, BigRational) {
    let r = BigRational::new(num, den);
    let v = num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN);
    (v, r)
}

impl FromStr for ThetaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let literal = s.trim().to_string();
        if literal.is_empty() {
            return Err("empty theta".into());
        }
        let (value, exact) = if let Some((p, q)) = literal.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in '{literal}'"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in '{literal}'"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in '{literal}'"));
            }
            let (v, r) = ratio(p, q);
            (v, Some(r))
        } else {
            let v: f64 = literal.parse().map_err(|_| format!("cannot parse theta '{literal}'"))?;
            (v, decimal_ratio(&literal))
        };
        if !(value >= 0.0 && value.is_finite()) {
            return Err(format!("theta must be finite and >= 0, got '{literal}'"));
        }
        Ok(Self { literal, value, exact })
    }
}

/// `"0.125"` → 125/1000; `None` for exponents or other syntax.
fn decimal_ratio(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    Some(ratio(digits, den).1)
}

/// Comma-separated list of θ literals.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaList(pub Vec<ThetaArg>);

impl FromStr for ThetaList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let items: Vec<ThetaArg> = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        if items.is_empty() {
            return Err("empty theta list".into());
        }
        Ok(Self(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_are_exact() {
        let t: ThetaArg = "1/6".parse().unwrap();
        assert_eq!(t.value, 1.0 / 6.0);
        assert_eq!(t.exact.unwrap(), BigRational::new(1.into(), 6.into()));
        let t: ThetaArg = "0.125".parse().unwrap();
        assert_eq!(t.exact.unwrap(), BigRational::new(1.into(), 8.into()));
        let t: ThetaArg = "1e-3".parse().unwrap();
        assert!(t.exact.is_none());
        assert_eq!(t.value, 1e-3);
    }

    #[test]
    fn rejects_invalid() {
        assert!("-1".parse::<ThetaArg>().is_err());
        assert!("1/0".parse::<ThetaArg>().is_err());
        assert!("abc".parse::<ThetaArg>().is_err());
        assert!("inf".parse::<ThetaArg>().is_err());
    }

    #[test]
    fn lists() {
        let v = "0.5,2, 1/3".parse::<ThetaList>().unwrap().0;
        assert_eq!(v.len(), 3);
        assert!("".parse::<ThetaList>().is_err());
        assert_eq!(v[2].literal, "1/3");
    }
}
