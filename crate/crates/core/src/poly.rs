use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer Laurent polynomial `sum_k coeffs[k] * t^(lowest + k)`.
///
/// Always trimmed: the first and last coefficients are nonzero, and the zero
/// polynomial has no coefficients and `lowest == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    lowest: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn new(lowest: i64, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPolynomial { lowest: lowest + lead_zeros as i64, coeffs }
    }

    pub fn from_i64s(lowest: i64, coeffs: &[i64]) -> Self {
        Self::new(lowest, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPolynomial { lowest: 0, coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.lowest
    }

    pub fn highest_exponent(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        let k = exponent - self.lowest;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Representative of the class up to units `±t^k`: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let flip = self.coeffs.last().unwrap().is_negative();
        let coeffs = self.coeffs.iter().map(|c| if flip { -c } else { c.clone() }).collect();
        LaurentPolynomial { lowest: 0, coeffs }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.lowest == 0 && self.coeffs.last().unwrap().is_positive())
    }

    /// Value at `t = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn value_at_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if (self.lowest + k as i64).rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Value at an integer point, for polynomials without negative exponents.
    pub fn evaluate(&self, x: &BigInt) -> Option<BigInt> {
        if self.lowest < 0 {
            return None;
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Some(acc * num_traits::pow(x.clone(), self.lowest as usize))
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Descending exponents, e.g. `t^2 - 3*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.lowest + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match e {
                0 => None,
                1 => Some("t".to_string()),
                e => Some(format!("t^{e}")),
            };
            match var {
                None => write!(f, "{mag}")?,
                Some(v) if mag.is_one() => f.write_str(&v)?,
                Some(v) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

/// JSON form `{"lowest": k, "coeffs": [...]}`; coefficients that fit in
/// `i64` are numbers, larger ones decimal strings.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            lowest: i64,
            coeffs: Vec<serde_json::Value>,
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        Repr { lowest: self.lowest, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            lowest: i64,
            coeffs: Vec<serde_json::Value>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("non-integer coefficient"))
                }
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("coefficient must be a number or string")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPolynomial::new(repr.lowest, coeffs))
    }
}
