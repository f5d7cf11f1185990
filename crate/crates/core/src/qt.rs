//! Laurent polynomials in q, t and an optional a variable with integer
//! coefficients, used for graded characters.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent triple (q, t, a).
pub type Exp = (i64, i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QtPolynomial {
    terms: BTreeMap<Exp, BigInt>,
}

impl serde::Serialize for QtPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(i64, i64, i64, String)> = self
            .terms
            .iter()
            .map(|(&(q, t, a), c)| (q, t, a, c.to_string()))
            .collect();
        entries.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for QtPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<(i64, i64, i64, String)>::deserialize(d)?;
        let mut out = QtPolynomial::zero();
        for (q, t, a, c) in entries {
            let coeff: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            out.add_term((q, t, a), coeff);
        }
        Ok(out)
    }
}

impl QtPolynomial {
    pub fn zero() -> Self {
        QtPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 0, 1)
    }

    pub fn monomial(q: i64, t: i64, a: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((q, t, a), BigInt::from(coeff));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, q: i64, t: i64, a: i64) -> BigInt {
        self.terms.get(&(q, t, a)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exp: Exp, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((q1, t1, a1), c1) in &self.terms {
            for ((q2, t2, a2), c2) in &other.terms {
                out.add_term((q1 + q2, t1 + t2, a1 + a2), c1 * c2);
            }
        }
        out
    }

    pub fn scale_exponents(&self, dq: i64, dt: i64, da: i64) -> Self {
        let mut out = Self::zero();
        for ((q, t, a), c) in &self.terms {
            out.add_term((q + dq, t + dt, a + da), c.clone());
        }
        out
    }

    /// Exchanges the q and t exponents.
    pub fn swap_qt(&self) -> Self {
        let mut out = Self::zero();
        for ((q, t, a), c) in &self.terms {
            out.add_term((*t, *q, *a), c.clone());
        }
        out
    }

    /// Substitutes q -> q, t -> q t^2 style monomial maps: each exponent pair
    /// (e_q, e_t) becomes (e_q*qq + e_t*tq, e_q*qt + e_t*tt).
    pub fn monomial_substitution(&self, qq: i64, qt: i64, tq: i64, tt: i64) -> Self {
        let mut out = Self::zero();
        for ((q, t, a), c) in &self.terms {
            out.add_term((q * qq + t * tq, q * qt + t * tt, *a), c.clone());
        }
        out
    }

    pub fn specialize_t_one(&self) -> Self {
        let mut out = Self::zero();
        for ((q, _, a), c) in &self.terms {
            out.add_term((*q, 0, *a), c.clone());
        }
        out
    }

    pub fn specialize_all_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

fn power(var: &str, e: i64, out: &mut Vec<String>) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{}^{}", var, e)),
    }
}

impl fmt::Display for QtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((q, t, a), c) in &self.terms {
            let mut parts = Vec::new();
            power("q", *q, &mut parts);
            power("t", *t, &mut parts);
            power("a", *a, &mut parts);
            let coeff_str = if parts.is_empty() {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if (-c).is_one() {
                "-".to_string()
            } else {
                format!("{}*", c)
            };
            let body = format!("{}{}", coeff_str, parts.join("*"));
            if first {
                write!(f, "{}", body)?;
                first = false;
            } else if body.starts_with('-') {
                write!(f, " - {}", &body[1..])?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_cancellation() {
        let mut p = QtPolynomial::monomial(1, 0, 0, 2);
        p.add_term((1, 0, 0), BigInt::from(-2));
        assert!(p.is_zero());

        let q = QtPolynomial::monomial(1, 0, 0, 1);
        let t = QtPolynomial::monomial(0, 1, 0, 1);
        let s = q.add(&t);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(1, 1, 0), BigInt::from(2));
        assert_eq!(sq.specialize_all_one(), BigInt::from(4));
    }

    #[test]
    fn substitution_sends_t_to_q_t_squared() {
        // q^i t^j -> q^(i+j) t^(2j)
        let p = QtPolynomial::monomial(1, 1, 0, 1);
        let got = p.monomial_substitution(1, 0, 1, 2);
        assert_eq!(got, QtPolynomial::monomial(2, 2, 0, 1));
    }

    #[test]
    fn display_format() {
        let mut p = QtPolynomial::monomial(-1, 0, 0, 1);
        p.add_term((1, 0, 0), BigInt::from(1));
        p.add_term((0, 1, 0), BigInt::from(-3));
        assert_eq!(p.to_string(), "q^-1 - 3*t + q");
        assert_eq!(QtPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn swap_and_specialize() {
        let p = QtPolynomial::monomial(2, 1, 0, 5);
        assert_eq!(p.swap_qt(), QtPolynomial::monomial(1, 2, 0, 5));
        assert_eq!(p.specialize_t_one(), QtPolynomial::monomial(2, 0, 0, 5));
    }

    #[test]
    fn serde_round_trip() {
        let mut p = QtPolynomial::monomial(3, 0, 2, 7);
        p.add_term((0, -1, 0), BigInt::from(11));
        let s = serde_json::to_string(&p).unwrap();
        let back: QtPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}
