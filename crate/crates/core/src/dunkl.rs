//! Dunkl operators, the rational parameter, and the contravariant pairing.
//!
//! Polynomials on the reflection representation of S_n are modelled in the
//! difference variables z_k = x_k - x_{k+1}; `embed` and `retract` move
//! between that model and honest x polynomials.

use crate::linalg::QMat;
use crate::poly::{monomials_of_degree, q, Monomial, Poly, Rational};
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DunklError {
    #[error("parameters {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("rank parameter {0} is out of range")]
    InvalidRank(usize),
    #[error("polynomial is not translation invariant")]
    NotTranslationInvariant,
    #[error("degree {0} exceeds table bound {1}")]
    DegreeOutOfRange(usize, usize),
}

/// The pair (m, n) of coprime positive integers fixing c = m/n for S_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct CherednikParam {
    pub m: usize,
    pub n: usize,
}

impl CherednikParam {
    pub fn new(m: usize, n: usize) -> Result<Self, DunklError> {
        if n < 2 {
            return Err(DunklError::InvalidRank(n));
        }
        if m < 1 || m.gcd(&n) != 1 {
            return Err(DunklError::NotCoprime(m, n));
        }
        Ok(CherednikParam { m, n })
    }

    pub fn c(&self) -> Rational {
        Rational::new((self.m as i64).into(), (self.n as i64).into())
    }

    /// Half the top degree, (m-1)(n-1)/2.
    pub fn mu(&self) -> usize {
        (self.m - 1) * (self.n - 1) / 2
    }

    pub fn top_degree(&self) -> usize {
        (self.m - 1) * (self.n - 1)
    }

    pub fn dimension(&self) -> u64 {
        (self.m as u64).pow(self.n as u32 - 1)
    }

    /// h-weight of the degree d component, d - mu.
    pub fn weight(&self, d: usize) -> i64 {
        d as i64 - self.mu() as i64
    }

    /// The parameter for c - 1, defined when c > 1.
    pub fn minus_one(&self) -> Option<CherednikParam> {
        if self.m > self.n {
            Some(CherednikParam { m: self.m - self.n, n: self.n })
        } else {
            None
        }
    }

    /// The parameter with numerator and denominator exchanged.
    pub fn flip(&self) -> Option<CherednikParam> {
        if self.m >= 2 {
            Some(CherednikParam { m: self.n, n: self.m })
        } else {
            None
        }
    }
}

/// Number of z variables for rank n.
pub fn z_arity(n: usize) -> usize {
    n - 1
}

/// x_i - x_j as a z polynomial.
pub fn root_difference_z(i: usize, j: usize, n: usize) -> Poly {
    let zn = n - 1;
    let mut f = Poly::zero(zn);
    if i == j {
        return f;
    }
    let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    for k in lo..hi {
        f = &f + &Poly::var(k, zn);
    }
    f.scale(&q(sign))
}

/// The coordinate function x_i restricted to the reflection representation,
/// x_i - (x_1 + .. + x_n)/n, as a z polynomial.
pub fn xbar_z(i: usize, n: usize) -> Poly {
    let mut f = Poly::zero(n - 1);
    for j in 0..n {
        f = &f + &root_difference_z(i, j, n);
    }
    f.scale(&Rational::new(1.into(), (n as i64).into()))
}

/// Power sum restricted to the reflection representation.
pub fn power_sum_z(k: usize, n: usize) -> Poly {
    let mut f = Poly::zero(n - 1);
    for i in 0..n {
        f = &f + &xbar_z(i, n).pow(k);
    }
    f
}

/// Vandermonde determinant prod_{i<j} (x_i - x_j) as a z polynomial.
pub fn vandermonde_z(n: usize) -> Poly {
    let mut f = Poly::one(n - 1);
    for i in 0..n {
        for j in i + 1..n {
            f = &f * &root_difference_z(i, j, n);
        }
    }
    f
}

/// Rewrites a polynomial in z_1, .., z_{n-1} as an x polynomial via
/// z_k = x_k - x_{k+1}.
pub fn embed(f: &Poly) -> Poly {
    let zn = f.arity();
    let n = zn + 1;
    let images: Vec<Poly> = (0..zn)
        .map(|k| &Poly::var(k, n) - &Poly::var(k + 1, n))
        .collect();
    f.substitute(&images).expect("embed substitution")
}

/// Inverse of `embed` on translation invariant polynomials.
pub fn retract(f: &Poly) -> Result<Poly, DunklError> {
    let n = f.arity();
    let mut deriv_sum = Poly::zero(n);
    for i in 0..n {
        deriv_sum = &deriv_sum + &f.partial_derivative(i);
    }
    if !deriv_sum.is_zero() {
        return Err(DunklError::NotTranslationInvariant);
    }
    let zn = n - 1;
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut s = Poly::zero(zn);
            for j in i..zn {
                s = &s + &Poly::var(j, zn);
            }
            s
        })
        .collect();
    Ok(f.substitute(&images).expect("retract substitution"))
}

/// Dunkl operator y_i on x polynomials.
pub fn dunkl_x(i: usize, f: &Poly, c: &Rational) -> Poly {
    let n = f.arity();
    let mut out = f.partial_derivative(i);
    for j in 0..n {
        if j != i {
            out = &out - &f.divided_difference(i, j).scale(c);
        }
    }
    out
}

/// Dunkl operator y_i transported to the z model.
pub fn dunkl_z(i: usize, f: &Poly, c: &Rational) -> Poly {
    retract(&dunkl_x(i, &embed(f), c)).expect("Dunkl preserves translation invariants")
}

/// The difference y_k - y_{k+1} on the z model, dual to multiplication by z_k.
pub fn dunkl_difference_z(k: usize, f: &Poly, c: &Rational) -> Poly {
    &dunkl_z(k, f, c) - &dunkl_z(k + 1, f, c)
}

/// Degree graded tables for one value of c: monomial bases of the z model,
/// Dunkl matrices, and Gram matrices of the contravariant form.
pub struct DunklContext {
    n: usize,
    c: Rational,
    max_degree: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    y_mats: Vec<Vec<QMat>>,
    diff_mats: Vec<Vec<QMat>>,
    grams: Vec<QMat>,
}

impl DunklContext {
    pub fn new(n: usize, c: Rational, max_degree: usize) -> Self {
        assert!(n >= 2);
        let zn = n - 1;
        let bases: Vec<Vec<Monomial>> =
            (0..=max_degree).map(|d| monomials_of_degree(zn, d)).collect();
        let index: Vec<HashMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();

        let mut y_mats: Vec<Vec<QMat>> = vec![Vec::new()];
        let mut diff_mats: Vec<Vec<QMat>> = vec![Vec::new()];
        for d in 1..=max_degree {
            let rows_src = &bases[d];
            let cols = bases[d - 1].len();
            let mats: Vec<QMat> = (0..n)
                .map(|i| {
                    let rows: Vec<Vec<Rational>> = rows_src
                        .par_iter()
                        .map(|mono| {
                            let f = Poly::monomial(mono.clone(), q(1));
                            let img = dunkl_z(i, &f, &c);
                            coords_of(&img, &index[d - 1], cols)
                        })
                        .collect();
                    QMat::from_rows_cols(rows, cols)
                })
                .collect();
            let diffs: Vec<QMat> =
                (0..zn).map(|k| mats[k].sub(&mats[k + 1])).collect();
            y_mats.push(mats);
            diff_mats.push(diffs);
        }

        let mut grams: Vec<QMat> = vec![QMat::identity(1)];
        for d in 1..=max_degree {
            let nd = bases[d].len();
            let trans: Vec<QMat> = diff_mats[d].iter().map(|m| m.transpose()).collect();
            let prev = &grams[d - 1];
            let rows: Vec<Vec<Rational>> = bases[d]
                .par_iter()
                .map(|alpha| {
                    let k = alpha.0.iter().position(|&e| e > 0).expect("positive degree");
                    let mut lower = alpha.clone();
                    lower.0[k] -= 1;
                    let li = index[d - 1][&lower];
                    trans[k].mul_row_vec(&prev.row_vec(li))
                })
                .collect();
            grams.push(QMat::from_rows_cols(rows, nd));
        }

        DunklContext { n, c, max_degree, bases, index, y_mats, diff_mats, grams }
    }

    pub fn for_param(param: &CherednikParam) -> Self {
        DunklContext::new(param.n, param.c(), param.top_degree())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z_arity(&self) -> usize {
        self.n - 1
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.bases[d]
    }

    pub fn dim_of_degree(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn index_of(&self, d: usize, mono: &Monomial) -> usize {
        self.index[d][mono]
    }

    /// Coordinates of a homogeneous degree d polynomial in the monomial basis.
    pub fn coords(&self, f: &Poly, d: usize) -> Vec<Rational> {
        coords_of(f, &self.index[d], self.bases[d].len())
    }

    pub fn from_coords(&self, d: usize, v: &[Rational]) -> Poly {
        let mut f = Poly::zero(self.z_arity());
        for (mono, coeff) in self.bases[d].iter().zip(v) {
            if !coeff.is_zero() {
                f.add_term(mono.clone(), coeff.clone());
            }
        }
        f
    }

    /// Matrix of y_i from degree d to degree d-1, rows indexed by the source basis.
    pub fn y_matrix(&self, d: usize, i: usize) -> &QMat {
        &self.y_mats[d][i]
    }

    /// Matrix of y_k - y_{k+1} from degree d to degree d-1.
    pub fn diff_matrix(&self, d: usize, k: usize) -> &QMat {
        &self.diff_mats[d][k]
    }

    /// Gram matrix of the contravariant form on the degree d monomials.
    pub fn gram(&self, d: usize) -> &QMat {
        &self.grams[d]
    }

    /// Contravariant pairing through the cached Gram matrices.
    pub fn pairing(&self, f: &Poly, g: &Poly) -> Rational {
        let mut acc = Rational::zero();
        let top = f.degree().min(g.degree()).min(self.max_degree);
        for d in 0..=top {
            let fc = f.homogeneous_component(d);
            let gc = g.homogeneous_component(d);
            if fc.is_zero() || gc.is_zero() {
                continue;
            }
            let vf = self.coords(&fc, d);
            let vg = self.coords(&gc, d);
            let mid = self.grams[d].mul_row_vec(&vf);
            for (a, b) in mid.iter().zip(&vg) {
                acc += a * b;
            }
        }
        acc
    }

    /// Contravariant pairing by direct operator application: apply f with each
    /// z_k replaced by y_k - y_{k+1}, then take the constant term of the result.
    pub fn pairing_direct(&self, f: &Poly, g: &Poly) -> Rational {
        let mut acc = Rational::zero();
        for (mono, coeff) in f.terms() {
            let mut cur = g.clone();
            for (k, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    if cur.is_zero() {
                        break;
                    }
                    cur = dunkl_difference_z(k, &cur, &self.c);
                }
            }
            acc += coeff * cur.constant_term();
        }
        acc
    }

    /// Applies phi(y_1, .., y_n) to a z model polynomial, where phi is a
    /// translation invariant x polynomial.
    pub fn apply_symmetric_fourier(&self, phi: &Poly, f: &Poly) -> Poly {
        assert_eq!(phi.arity(), self.n);
        let mut acc = Poly::zero(self.z_arity());
        for (mono, coeff) in phi.terms() {
            let mut cur = f.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    if cur.is_zero() {
                        break;
                    }
                    cur = dunkl_z(i, &cur, &self.c);
                }
            }
            acc = &acc + &cur.scale(coeff);
        }
        acc
    }
}

fn coords_of(f: &Poly, index: &HashMap<Monomial, usize>, len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (mono, coeff) in f.terms() {
        v[index[mono]] = coeff.clone();
    }
    v
}
