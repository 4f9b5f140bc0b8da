use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Integer polynomial in z, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> IntPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        IntPoly(c)
    }

    /// c z^k.
    pub fn monomial(c: i64, k: usize) -> IntPoly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPoly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    /// z * self.
    pub fn shift(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        IntPoly(v)
    }

    pub fn scale(&self, k: i64) -> IntPoly {
        IntPoly::from_coeffs(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

/// "1 + z^2", "-3z^3", "0".
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}
