//! Truncated power series in one formal variable with polynomial coefficients.

use crate::poly::{q, Poly, Rational};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series must have constant term 1")]
    NotUnital,
    #[error("coefficient arity mismatch")]
    ArityMismatch,
    #[error("empty series")]
    Empty,
}

/// Coefficients of a series sum c_k z^k, truncated after the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesCoeffs {
    arity: usize,
    coeffs: Vec<Poly>,
}

impl PowerSeriesCoeffs {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self, SeriesError> {
        let arity = coeffs.first().ok_or(SeriesError::Empty)?.arity();
        if coeffs.iter().any(|c| c.arity() != arity) {
            return Err(SeriesError::ArityMismatch);
        }
        Ok(PowerSeriesCoeffs { arity, coeffs })
    }

    /// The truncated product of (1 - f z) over the given linear slot polynomials.
    pub fn product_of_one_minus(factors: &[Poly], order: usize) -> Result<Self, SeriesError> {
        let arity = factors.first().ok_or(SeriesError::Empty)?.arity();
        if factors.iter().any(|f| f.arity() != arity) {
            return Err(SeriesError::ArityMismatch);
        }
        let mut coeffs = vec![Poly::one(arity)];
        for f in factors {
            let prev = coeffs;
            let len = (prev.len() + 1).min(order + 1);
            let mut next = vec![Poly::zero(arity); len];
            for (k, c) in prev.iter().enumerate() {
                if k < len {
                    next[k] = &next[k] + c;
                }
                if k + 1 < len {
                    let shifted = &next[k + 1] - &(c * f);
                    next[k + 1] = shifted;
                }
            }
            coeffs = next;
        }
        coeffs.resize(order + 1, Poly::zero(arity));
        Ok(PowerSeriesCoeffs { arity, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^k; zero beyond the truncation order.
    pub fn coefficient_of_z(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(self.arity))
    }

    pub fn mul(&self, other: &PowerSeriesCoeffs, order: usize) -> Result<Self, SeriesError> {
        if self.arity != other.arity {
            return Err(SeriesError::ArityMismatch);
        }
        let mut coeffs = vec![Poly::zero(self.arity); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                let t = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = t;
            }
        }
        Ok(PowerSeriesCoeffs { arity: self.arity, coeffs })
    }

    /// Raises a unital series to the rational power `c`.
    ///
    /// Uses the log-derivative recurrence k v_k = sum_{j=1..k} ((c+1)j - k) u_j v_{k-j},
    /// which stays inside polynomial coefficients for any rational exponent.
    pub fn fractional_power(&self, c: &Rational, order: usize) -> Result<Self, SeriesError> {
        if !self.coefficient_of_z(0).eq(&Poly::one(self.arity)) {
            return Err(SeriesError::NotUnital);
        }
        let mut v = Vec::with_capacity(order + 1);
        v.push(Poly::one(self.arity));
        let c_plus_1 = c + q(1);
        for k in 1..=order {
            let mut acc = Poly::zero(self.arity);
            for j in 1..=k {
                let u_j = self.coefficient_of_z(j);
                if u_j.is_zero() {
                    continue;
                }
                let factor = &c_plus_1 * q(j as i64) - q(k as i64);
                if factor.is_zero() {
                    continue;
                }
                acc.add_scaled(&(&u_j * &v[k - j]), &factor);
            }
            v.push(acc.scale(&q(k as i64).recip()));
        }
        Ok(PowerSeriesCoeffs { arity: self.arity, coeffs: v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;

    fn scalar_series(vals: &[Rational]) -> PowerSeriesCoeffs {
        PowerSeriesCoeffs::new(vals.iter().map(|v| Poly::constant(v.clone(), 1)).collect())
            .unwrap()
    }

    fn one_plus_z() -> PowerSeriesCoeffs {
        scalar_series(&[q(1), q(1), q(0), q(0), q(0)])
    }

    #[test]
    fn binomial_series_half_power() {
        // (1+z)^(1/2) = 1 + z/2 - z^2/8 + z^3/16 - 5 z^4/128 + ...
        let s = one_plus_z().fractional_power(&q_ratio(1, 2), 4).unwrap();
        let expect = [q(1), q_ratio(1, 2), q_ratio(-1, 8), q_ratio(1, 16), q_ratio(-5, 128)];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coefficient_of_z(k).constant_term(), *e);
        }
    }

    #[test]
    fn binomial_series_three_halves_power() {
        // (1+z)^(3/2) = 1 + 3z/2 + 3z^2/8 - z^3/16 + 3 z^4/128 + ...
        let s = one_plus_z().fractional_power(&q_ratio(3, 2), 4).unwrap();
        let expect = [q(1), q_ratio(3, 2), q_ratio(3, 8), q_ratio(-1, 16), q_ratio(3, 128)];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coefficient_of_z(k).constant_term(), *e);
        }
    }

    #[test]
    fn fractional_powers_compose_multiplicatively() {
        let u = PowerSeriesCoeffs::product_of_one_minus(
            &[Poly::var(0, 2), Poly::var(1, 2), &Poly::var(0, 2) + &Poly::var(1, 2)],
            6,
        )
        .unwrap();
        let c = q_ratio(4, 3);
        let a = u.fractional_power(&c, 6).unwrap();
        let b = u.fractional_power(&(q(1) - &c), 6).unwrap();
        let prod = a.mul(&b, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(prod.coefficient_of_z(k), u.coefficient_of_z(k), "z^{}", k);
        }
    }

    #[test]
    fn integer_power_matches_repeated_multiplication() {
        let u = PowerSeriesCoeffs::product_of_one_minus(&[Poly::var(0, 1)], 5).unwrap();
        let sq = u.fractional_power(&q(2), 5).unwrap();
        let direct = u.mul(&u, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(sq.coefficient_of_z(k), direct.coefficient_of_z(k));
        }
    }

    #[test]
    fn negative_power_inverts() {
        let u = scalar_series(&[q(1), q(3), q(-2), q(0), q(0)]);
        let inv = u.fractional_power(&q(-1), 4).unwrap();
        let prod = u.mul(&inv, 4).unwrap();
        assert_eq!(prod.coefficient_of_z(0).constant_term(), q(1));
        for k in 1..=4 {
            assert!(prod.coefficient_of_z(k).is_zero(), "z^{}", k);
        }
    }

    #[test]
    fn non_unital_series_is_rejected() {
        let u = scalar_series(&[q(2), q(1)]);
        assert_eq!(
            u.fractional_power(&q_ratio(1, 2), 1),
            Err(SeriesError::NotUnital)
        );
    }

    #[test]
    fn product_of_one_minus_gives_signed_elementary_symmetric() {
        let n = 3;
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(i, n)).collect();
        let u = PowerSeriesCoeffs::product_of_one_minus(&xs, 3).unwrap();
        // u_1 = -(x1+x2+x3), u_2 = e2, u_3 = -x1 x2 x3.
        let e1 = &(&xs[0] + &xs[1]) + &xs[2];
        let e2 = &(&(&xs[0] * &xs[1]) + &(&xs[0] * &xs[2])) + &(&xs[1] * &xs[2]);
        let e3 = &(&xs[0] * &xs[1]) * &xs[2];
        assert_eq!(u.coefficient_of_z(1), -&e1);
        assert_eq!(u.coefficient_of_z(2), e2);
        assert_eq!(u.coefficient_of_z(3), -&e3);
    }
}
