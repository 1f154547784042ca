use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::Serialize;

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

/// Ascending powers, every term signed: `-q^-9 + q^-5 + q^-3 + q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (t, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (t, sign) {
                (0, "+") => {}
                (0, _) => f.write_str(sign)?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            let body = match (a, e) {
                (_, 0) => a.to_string(),
                (1, 1) => "q".to_string(),
                (1, _) => format!("q^{e}"),
                (_, 1) => format!("{a}q"),
                _ => format!("{a}q^{e}"),
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// `{"exponent": coefficient}`.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.terms().map(|(e, c)| (e.to_string(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let q = LaurentPoly::monomial(1, 1);
        let qi = LaurentPoly::monomial(1, -1);
        let s = &q + &qi;
        assert_eq!(s.to_string(), "q^-1 + q");
        let sq = s.pow(2);
        assert_eq!(sq, LaurentPoly::from_terms([(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(sq.to_string(), "q^-2 + 2 + q^2");
        assert_eq!((-&sq).to_string(), "-q^-2 - 2 - q^2");
        assert_eq!(LaurentPoly::monomial(3, -5).bar(), LaurentPoly::monomial(3, 5));
        assert!((&s + &(-&s)).is_zero());
    }
}
