//! The coinvariant algebra R = C[x_1..x_n]/(symmetric polynomials of positive
//! degree) and the kernel bookkeeping it carries: normal forms on the Artin
//! basis, the multiplication matrices A and B between copies of R, the
//! submodules V_i they generate, rank and dimension counts, distributivity of
//! the subspace lattice, and the dimension of the minimal Springer fiber.
//!
//! Everything is scalar linear algebra in the Artin basis x^a, a_k <= n-1-k
//! (zero based), carved out by the Groebner basis h_{n-k}(x_k, .., x_{n-1}).

use crate::irrep::IrrepError;
use crate::linalg::{QMat, Subspace};
use crate::poly::{monomials_of_degree, q, Monomial, Poly, Rational};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Complete homogeneous symmetric polynomial of degree d in the first
/// `vars` variables, inside arity `n`.
fn complete_homogeneous(d: usize, vars: usize, n: usize) -> Poly {
    let mut f = Poly::zero(n);
    for m in monomials_of_degree(vars, d) {
        let mut e = vec![0u16; n];
        e[..vars].copy_from_slice(&m.0);
        f.add_term(Monomial(e), q(1));
    }
    f
}

/// Degree first, then lexicographic from the last variable. The Groebner
/// leading terms x_k^{n-k} live on the right, so division needs this order
/// rather than the one Poly::leading uses.
fn tau_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
            let o = x.cmp(y);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

fn tau_leading(f: &Poly) -> Option<(Monomial, Rational)> {
    f.terms()
        .max_by(|(a, _), (b, _)| tau_cmp(a, b))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// The coinvariant algebra of n variables with its Artin monomial basis and
/// the closed form Groebner basis h_{n-k}(x_0, .., x_k) for k = 0..n.
pub struct CoinvAlgebra {
    n: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    gb: Vec<Poly>,
    var_mats: Vec<QMat>,
}

impl CoinvAlgebra {
    pub fn new(n: usize) -> Result<Self, IrrepError> {
        if n == 0 {
            return Err(IrrepError::ParameterOutOfRange(
                "the coinvariant algebra needs at least one variable".into(),
            ));
        }
        let gb: Vec<Poly> = (0..n).map(|k| complete_homogeneous(n - k, k + 1, n)).collect();
        let mut basis = vec![Monomial::one(n)];
        for k in 0..n {
            let mut next = Vec::new();
            for b in &basis {
                for e in 0..(n - k) as u16 {
                    let mut exps = b.0.clone();
                    exps[k] = e;
                    next.push(Monomial(exps));
                }
            }
            basis = next;
        }
        basis.sort();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        let mut alg = CoinvAlgebra {
            n,
            basis,
            index,
            gb,
            var_mats: Vec::new(),
        };
        alg.var_mats = (0..n)
            .map(|k| alg.poly_matrix(&Poly::var(k, n)))
            .collect();
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Index of the socle monomial x_0^{n-1} x_1^{n-2} .. x_{n-2}.
    pub fn top_index(&self) -> usize {
        let e: Vec<u16> = (0..self.n).map(|k| (self.n - 1 - k) as u16).collect();
        self.index[&Monomial(e)]
    }

    /// The fully reduced representative supported on standard monomials.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.arity(), self.n, "arity mismatch");
        let mut work = f.clone();
        let mut out = Poly::zero(self.n);
        while let Some((mono, coeff)) = tau_leading(&work) {
            match (0..self.n).find(|&k| mono.0[k] as usize >= self.n - k) {
                Some(k) => {
                    let mut e = mono.0.clone();
                    e[k] -= (self.n - k) as u16;
                    let shift = Poly::monomial(Monomial(e), coeff);
                    work = &work - &(&shift * &self.gb[k]);
                }
                None => {
                    out.add_term(mono.clone(), coeff.clone());
                    work.add_term(mono, -coeff);
                }
            }
        }
        out
    }

    pub fn coords(&self, f: &Poly) -> Vec<Rational> {
        let nf = self.normal_form(f);
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn from_coords(&self, v: &[Rational]) -> Poly {
        let mut f = Poly::zero(self.n);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                f.add_term(self.basis[i].clone(), c.clone());
            }
        }
        f
    }

    /// Multiplication by g on the Artin basis, acting on row vectors.
    pub fn poly_matrix(&self, g: &Poly) -> QMat {
        let g = self.normal_form(g);
        let rows = self
            .basis
            .iter()
            .map(|b| self.coords(&(&Poly::monomial(b.clone(), q(1)) * &g)))
            .collect();
        QMat::from_rows_cols(rows, self.dim())
    }

    pub fn var_matrix(&self, k: usize) -> &QMat {
        &self.var_mats[k]
    }

    /// Pairing against the socle: entry (i, j) is the coefficient of the top
    /// monomial in the product of the i-th and j-th basis classes.
    pub fn pairing_matrix(&self) -> QMat {
        let top = self.top_index();
        let mut p = QMat::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            let bi = Poly::monomial(self.basis[i].clone(), q(1));
            for j in i..self.dim() {
                let prod = &bi * &Poly::monomial(self.basis[j].clone(), q(1));
                let c = self.coords(&prod)[top].clone();
                p[(i, j)] = c.clone();
                p[(j, i)] = c;
            }
        }
        p
    }
}

fn check_params(m: usize, n: usize) -> Result<usize, IrrepError> {
    if n < 2 || m <= n || m >= 2 * n || m.gcd(&n) != 1 {
        return Err(IrrepError::ParameterOutOfRange(format!(
            "need coprime n < m < 2n, got m = {m}, n = {n}"
        )));
    }
    Ok(2 * n - m)
}

/// Powers of the variable matrices, highest exponent first for A and lowest
/// first for B.
fn var_powers(alg: &CoinvAlgebra, i: usize, exps: impl Iterator<Item = usize>) -> Vec<QMat> {
    exps.map(|e| {
        let mut acc = QMat::identity(alg.dim());
        for _ in 0..e {
            acc = acc.mul(alg.var_matrix(i));
        }
        acc
    })
    .collect()
}

/// The matrices of the two row vector multiplication maps
/// R^n -> R^{2n-m} -> R^n with blocks x_i^{n-1}, .., x_i^{m-n} and
/// x_i^{m-n}, .., x_i^{n-1}, realized as scalar matrices on Artin coordinates.
pub fn matrix_ab(m: usize, n: usize) -> Result<(QMat, QMat), IrrepError> {
    let r = check_params(m, n)?;
    let alg = CoinvAlgebra::new(n)?;
    let d = alg.dim();
    let mut a_rows = Vec::with_capacity(n * d);
    for i in 0..n {
        let pows = var_powers(&alg, i, (m - n..n).rev());
        for s in 0..d {
            let mut row = Vec::with_capacity(r * d);
            for p in &pows {
                row.extend_from_slice(p.row(s));
            }
            a_rows.push(row);
        }
    }
    let mut b_rows = Vec::with_capacity(r * d);
    let pows: Vec<Vec<QMat>> = (0..n)
        .map(|i| var_powers(&alg, i, m - n..n))
        .collect();
    for t in 0..r {
        for s in 0..d {
            let mut row = Vec::with_capacity(n * d);
            for col in pows.iter() {
                row.extend_from_slice(col[t].row(s));
            }
            b_rows.push(row);
        }
    }
    Ok((
        QMat::from_rows_cols(a_rows, r * d),
        QMat::from_rows_cols(b_rows, n * d),
    ))
}

fn v_space(alg: &CoinvAlgebra, m: usize, i: usize) -> Subspace {
    let n = alg.n();
    let r = 2 * n - m;
    let d = alg.dim();
    let pows = var_powers(alg, i, (m - n..n).rev());
    let rows = (0..d)
        .map(|s| {
            let mut row = Vec::with_capacity(r * d);
            for p in &pows {
                row.extend_from_slice(p.row(s));
            }
            row
        })
        .collect();
    Subspace::from_rows(r * d, rows)
}

/// The span of all R multiples of the tuple (x_i^{n-1}, .., x_i^{m-n}) inside
/// R^{2n-m}.
pub fn subspace_v(m: usize, n: usize, i: usize) -> Result<Subspace, IrrepError> {
    check_params(m, n)?;
    if i >= n {
        return Err(IrrepError::IndexOutOfRange(i));
    }
    let alg = CoinvAlgebra::new(n)?;
    Ok(v_space(&alg, m, i))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeIdentity {
    pub label: String,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeReport {
    pub identities: Vec<LatticeIdentity>,
    pub counterexample: Option<String>,
}

impl LatticeReport {
    fn record(&mut self, label: String, lhs_dim: usize, rhs_dim: usize, equal: bool) {
        if !equal && self.counterexample.is_none() {
            self.counterexample = Some(label.clone());
        }
        self.identities.push(LatticeIdentity {
            label,
            lhs_dim,
            rhs_dim,
        });
    }
}

fn sum_all(spaces: &[&Subspace]) -> Subspace {
    let mut acc = spaces[0].clone();
    for s in &spaces[1..] {
        acc = acc.sum(s);
    }
    acc
}

/// Verifies the dimension decomposition of the subspace tuple (V_1, .., V_n):
/// generator and pairwise intersection dimensions, the partial sum counts,
/// and the chain identities dim(V_1 ^ .. ^ V_j ^ (V_{j+1} + .. + V_i)) equal
/// to the sum of the meet dimensions one step deeper. The tuple decomposes
/// only in dimension: the pairwise intersections overlap, so the literal sum
/// of meets sits strictly inside the meet of the sum.
pub fn lattice_check(m: usize, n: usize) -> Result<LatticeReport, IrrepError> {
    let r = check_params(m, n)?;
    let alg = CoinvAlgebra::new(n)?;
    let vs: Vec<Subspace> = (0..n).map(|i| v_space(&alg, m, i)).collect();
    let mut report = LatticeReport {
        identities: Vec::new(),
        counterexample: None,
    };
    let fact2: usize = (1..=n.saturating_sub(2)).product();
    for (i, v) in vs.iter().enumerate() {
        let expected = r * fact2 * (n - 1);
        report.record(format!("dim V{}", i + 1), v.dim(), expected, v.dim() == expected);
    }
    for i in 0..n {
        for j in 0..i {
            let dim = vs[i].intersect(&vs[j]).dim();
            report.record(
                format!("dim(V{} ^ V{})", j + 1, i + 1),
                dim,
                r * fact2,
                dim == r * fact2,
            );
        }
    }
    for k in 1..=n {
        let head: Vec<&Subspace> = vs[..k].iter().collect();
        let dim = sum_all(&head).dim();
        let expected = r * k * (2 * n - 1 - k) * fact2 / 2;
        report.record(format!("dim(V1+..+V{k})"), dim, expected, dim == expected);
    }
    for j in 1..n {
        let mut meet = vs[0].clone();
        for v in &vs[1..j] {
            meet = meet.intersect(v);
        }
        for i in j + 1..=n {
            let tail: Vec<&Subspace> = vs[j..i].iter().collect();
            let lhs = meet.intersect(&sum_all(&tail)).dim();
            let rhs: usize = vs[j..i].iter().map(|v| meet.intersect(v).dim()).sum();
            let prefix = (1..=j).map(|t| format!("V{t}")).collect::<Vec<_>>().join("^");
            report.record(
                format!("dim({prefix} ^ (V{}+..+V{i}))", j + 1),
                lhs,
                rhs,
                lhs == rhs,
            );
        }
    }
    Ok(report)
}

/// The j-th generator of the kernel of x_1 - x_2 on R, one based in j.
pub fn psi_polynomial(n: usize, j: usize) -> Poly {
    let mut f = Poly::zero(n);
    for t in 0..n - j {
        let mut e = vec![0u16; n];
        e[0] = (j + t) as u16;
        e[1] = (n - 2 - t) as u16;
        f.add_term(Monomial(e), q(t as i64 + 1));
    }
    f
}

/// The kernel of multiplication by x_1 - x_2 on R, spanned by the psi_j times
/// the Artin monomials in the last n - 2 variables.
pub fn ker_difference(n: usize) -> Result<Subspace, IrrepError> {
    if n < 2 {
        return Err(IrrepError::ParameterOutOfRange(
            "the difference kernel needs two variables".into(),
        ));
    }
    let alg = CoinvAlgebra::new(n)?;
    let small: Vec<Monomial> = alg
        .basis()
        .iter()
        .filter(|b| b.0[0] == 0 && b.0[1] == 0)
        .cloned()
        .collect();
    let mut rows = Vec::new();
    for j in 1..n {
        let psi = psi_polynomial(n, j);
        for t in &small {
            rows.push(alg.coords(&(&psi * &Poly::monomial(t.clone(), q(1)))));
        }
    }
    Ok(Subspace::from_rows(alg.dim(), rows))
}

/// Dimension of C[h] /((positive degree invariants) + (x_1^{n-1}, .., x_n^{n-1})),
/// the cohomology of the Springer fiber at a minimal nilpotent.
pub fn springer_min_dim(n: usize) -> Result<usize, IrrepError> {
    if n < 2 {
        return Err(IrrepError::ParameterOutOfRange(
            "the minimal orbit needs n >= 2".into(),
        ));
    }
    let alg = CoinvAlgebra::new(n)?;
    let mut rows = Vec::new();
    for i in 0..n {
        let p = var_powers(&alg, i, std::iter::once(n - 1)).pop().unwrap();
        rows.extend(p.to_rows());
    }
    Ok(alg.dim() - Subspace::from_rows(alg.dim(), rows).dim())
}

/// Whether Im(A) is Lagrangian for the socle pairing on R^{2n-m}: isotropic
/// and of half the total dimension. The copies of R carry shifted gradings,
/// so the form couples complementary components: block t pairs with block
/// r-1-t, making the pairing of two A rows the matching entry of AB.
pub fn poincare_isotropy(m: usize, n: usize) -> Result<bool, IrrepError> {
    let r = check_params(m, n)?;
    let alg = CoinvAlgebra::new(n)?;
    let (a, _) = matrix_ab(m, n)?;
    let im_a = Subspace::from_rows(r * alg.dim(), a.to_rows());
    let pairing = socle_pairing(&alg.pairing_matrix(), r);
    Ok(is_lagrangian(&im_a, &pairing))
}

/// The pairing matrix on R^r coupling complementary components.
pub fn socle_pairing(p: &QMat, blocks: usize) -> QMat {
    let d = p.rows;
    let mut out = QMat::zeros(blocks * d, blocks * d);
    for t in 0..blocks {
        let s = blocks - 1 - t;
        for i in 0..d {
            for j in 0..d {
                out[(t * d + i, s * d + j)] = p[(i, j)].clone();
            }
        }
    }
    out
}

/// Isotropy plus the half dimension count against a symmetric pairing.
pub fn is_lagrangian(space: &Subspace, pairing: &QMat) -> bool {
    if 2 * space.dim() != pairing.rows {
        return false;
    }
    let b = QMat::from_rows_cols(space.basis().to_vec(), pairing.rows);
    b.mul(pairing).mul(&b.transpose()).is_zero()
}
