//! Rational Dyck path combinatorics: path enumeration, area and dinv
//! statistics, and the rational q,t-Catalan polynomial. Serves as an
//! independent oracle for invariant dimensions and bigraded characters.

use crate::dunkl::DunklError;
use crate::irrep::IrrepError;
use crate::qt::QtPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;

/// Lattice path from (0,0) to (n,m) with n east and m north steps, staying
/// weakly below the line ny = mx. Stored as the height of each east step,
/// so heights are weakly increasing and n*height[j] <= m*j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckPath {
    m: usize,
    n: usize,
    heights: Vec<usize>,
}

fn check_coprime(m: usize, n: usize) -> Result<(), IrrepError> {
    if m < 1 || n < 1 || m.gcd(&n) != 1 {
        return Err(IrrepError::Param(DunklError::NotCoprime(m, n)));
    }
    Ok(())
}

impl DyckPath {
    pub fn new(m: usize, n: usize, heights: Vec<usize>) -> Result<Self, IrrepError> {
        check_coprime(m, n)?;
        if heights.len() != n {
            return Err(IrrepError::DegreeMismatch);
        }
        let mut prev = 0usize;
        for (j, &h) in heights.iter().enumerate() {
            if h < prev || h > m || n * h > m * j {
                return Err(IrrepError::ParameterOutOfRange(format!(
                    "east step {} at height {} crosses the diagonal",
                    j + 1,
                    h
                )));
            }
            prev = h;
        }
        Ok(DyckPath { m, n, heights })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Full lattice cells between the path and the diagonal.
    pub fn area(&self) -> usize {
        (0..self.n)
            .map(|j| self.m * j / self.n - self.heights[j])
            .sum()
    }

    /// Cells of the partition under the path whose arm and leg straddle the
    /// slope: arm/(leg+1) < m/n <= (arm+1)/leg, compared exactly by
    /// cross-multiplication.
    pub fn dinv(&self) -> usize {
        let lam: Vec<usize> = self
            .heights
            .iter()
            .rev()
            .copied()
            .filter(|&h| h > 0)
            .collect();
        let mut count = 0usize;
        for (i, &len) in lam.iter().enumerate() {
            for p in 0..len {
                let arm = len - 1 - p;
                let leg = lam[i + 1..].iter().filter(|&&l| l > p).count();
                if arm * self.n < self.m * (leg + 1) && self.m * leg <= self.n * (arm + 1) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn statistics(&self) -> (usize, usize) {
        (self.area(), self.dinv())
    }
}

/// All (m,n)-Dyck paths, ordered lexicographically by height sequence.
pub fn enumerate_paths(m: usize, n: usize) -> Result<Vec<DyckPath>, IrrepError> {
    check_coprime(m, n)?;
    let mut out = Vec::new();
    let mut heights = vec![0usize; n];
    extend(m, n, 1, &mut heights, &mut out);
    Ok(out)
}

fn extend(m: usize, n: usize, j: usize, heights: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
    if j == n {
        out.push(DyckPath {
            m,
            n,
            heights: heights.clone(),
        });
        return;
    }
    for h in heights[j - 1]..=(m * j / n) {
        heights[j] = h;
        extend(m, n, j + 1, heights, out);
    }
    heights[j] = heights[j - 1];
}

/// (1/(m+n)) * C(m+n, n), the number of (m,n)-Dyck paths.
pub fn rational_catalan_number(m: usize, n: usize) -> Result<BigInt, IrrepError> {
    check_coprime(m, n)?;
    let binom = num_integer::binomial(BigInt::from(m + n), BigInt::from(n));
    Ok(binom / BigInt::from(m + n))
}

/// Sum of q^dinv t^area over all (m,n)-Dyck paths.
pub fn qt_catalan(m: usize, n: usize) -> Result<QtPolynomial, IrrepError> {
    let mut poly = QtPolynomial::zero();
    for path in enumerate_paths(m, n)? {
        poly.add_term((path.dinv() as i64, path.area() as i64, 0), BigInt::from(1));
    }
    Ok(poly)
}
