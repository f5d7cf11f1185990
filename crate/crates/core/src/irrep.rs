//! The irreducible lowest weight module L_c for c = m/n, realized as the
//! quotient of the z model by the radical of the contravariant form.
//!
//! Classes are represented by the non-pivot monomials of the radical's row
//! echelon basis, degree by degree. The standard operators (coordinate and
//! power sum multiplication, Dunkl operators, the sl_2 pair, the symmetric
//! group) are stored or rebuilt as matrices on the graded pieces, acting on
//! row vectors.

use crate::dunkl::{
    dunkl_z, embed, power_sum_z, retract, root_difference_z, vandermonde_z, xbar_z, z_arity,
    CherednikParam, DunklContext, DunklError,
};
use crate::linalg::{QMat, Subspace};
use crate::poly::{monomials_of_degree, q, q_ratio, Monomial, Poly, Rational};
use crate::qt::QtPolynomial;
use crate::series::PowerSeriesCoeffs;
use crate::symgroup::{
    class_representative, isotypic_projector, CharacterTable, Partition, Permutation, SymError,
};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IrrepError {
    #[error(transparent)]
    Param(#[from] DunklError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("series order {0} is too small, need at least {1}")]
    OrderTooSmall(usize, usize),
    #[error("polynomial does not sit in the expected graded piece")]
    DegreeMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    Gram,
    Generators,
}

/// One subspace of L_c per degree 0..=top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pieces: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn zero(dims: &[usize]) -> Self {
        GradedSubspace { pieces: dims.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    pub fn full(dims: &[usize]) -> Self {
        GradedSubspace { pieces: dims.iter().map(|&d| Subspace::full(d)).collect() }
    }

    pub fn from_pieces(pieces: Vec<Subspace>) -> Self {
        assert!(!pieces.is_empty());
        GradedSubspace { pieces }
    }

    pub fn top(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, d: usize) -> &Subspace {
        &self.pieces[d]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    pub fn dim_at(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        assert_eq!(self.pieces.len(), other.pieces.len());
        GradedSubspace {
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    pub fn intersect(&self, other: &GradedSubspace) -> GradedSubspace {
        assert_eq!(self.pieces.len(), other.pieces.len());
        GradedSubspace {
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.intersect(b)).collect(),
        }
    }

    pub fn contains_space(&self, other: &GradedSubspace) -> bool {
        assert_eq!(self.pieces.len(), other.pieces.len());
        self.pieces.iter().zip(&other.pieces).all(|(a, b)| a.contains_space(b))
    }

    /// Degreewise orthogonal complement under the induced form on L_c.
    pub fn perp(&self, model: &IrrepModel) -> GradedSubspace {
        assert_eq!(self.pieces.len(), model.top_degree() + 1);
        GradedSubspace {
            pieces: self
                .pieces
                .iter()
                .enumerate()
                .map(|(d, p)| p.perp(model.quotient_gram(d)))
                .collect(),
        }
    }
}

/// The module L_c with cached graded operator matrices.
pub struct IrrepModel {
    param: CherednikParam,
    table: CharacterTable,
    ctx: DunklContext,
    kernels: Vec<Subspace>,
    rep_indices: Vec<Vec<usize>>,
    rep_monos: Vec<Vec<Monomial>>,
    dims: Vec<usize>,
    zmul: Vec<Vec<QMat>>,
    pmul: Vec<Vec<QMat>>,
    qy: Vec<Vec<QMat>>,
    qdiff: Vec<Vec<QMat>>,
    e_mats: Vec<QMat>,
    f_mats: Vec<QMat>,
    qgrams: Vec<QMat>,
}

fn class_from_ambient(
    kernels: &[Subspace],
    rep_indices: &[Vec<usize>],
    d: usize,
    amb: &[Rational],
) -> Vec<Rational> {
    let red = kernels[d].reduce(amb);
    rep_indices[d].iter().map(|&j| red[j].clone()).collect()
}

fn mult_rows(
    ctx: &DunklContext,
    kernels: &[Subspace],
    rep_indices: &[Vec<usize>],
    rep_monos: &[Vec<Monomial>],
    dims: &[usize],
    top: usize,
    d: usize,
    phi: &Poly,
) -> QMat {
    let k = phi.homogeneous_degree().expect("multiplier must be homogeneous");
    let target = d + k;
    if target > top {
        return QMat::zeros(dims[d], 0);
    }
    let rows: Vec<Vec<Rational>> = rep_monos[d]
        .par_iter()
        .map(|mono| {
            let prod = phi * &Poly::monomial(mono.clone(), q(1));
            class_from_ambient(kernels, rep_indices, target, &ctx.coords(&prod, target))
        })
        .collect();
    QMat::from_rows_cols(rows, dims[target])
}

impl IrrepModel {
    pub fn build_mn(m: usize, n: usize) -> Result<IrrepModel, IrrepError> {
        IrrepModel::build(CherednikParam::new(m, n)?)
    }

    pub fn build(param: CherednikParam) -> Result<IrrepModel, IrrepError> {
        let n = param.n;
        let table = CharacterTable::new(n)?;
        let ctx = DunklContext::for_param(&param);
        let top = param.top_degree();
        let zn = z_arity(n);

        let kernels: Vec<Subspace> =
            (0..=top).into_par_iter().map(|d| ctx.gram(d).nullspace()).collect();
        let rep_indices: Vec<Vec<usize>> = (0..=top)
            .map(|d| {
                let pivots: HashSet<usize> = kernels[d].pivots().iter().copied().collect();
                (0..ctx.dim_of_degree(d)).filter(|j| !pivots.contains(j)).collect()
            })
            .collect();
        let rep_monos: Vec<Vec<Monomial>> = (0..=top)
            .map(|d| rep_indices[d].iter().map(|&j| ctx.basis(d)[j].clone()).collect())
            .collect();
        let dims: Vec<usize> = rep_indices.iter().map(|r| r.len()).collect();

        let zmul: Vec<Vec<QMat>> = (0..=top)
            .map(|d| {
                (0..zn)
                    .map(|k| {
                        mult_rows(
                            &ctx,
                            &kernels,
                            &rep_indices,
                            &rep_monos,
                            &dims,
                            top,
                            d,
                            &Poly::var(k, zn),
                        )
                    })
                    .collect()
            })
            .collect();
        let pmul: Vec<Vec<QMat>> = (0..=top)
            .map(|d| {
                (2..=n)
                    .map(|i| {
                        mult_rows(
                            &ctx,
                            &kernels,
                            &rep_indices,
                            &rep_monos,
                            &dims,
                            top,
                            d,
                            &power_sum_z(i, n),
                        )
                    })
                    .collect()
            })
            .collect();

        let e_poly = sl2_raising_poly(n);
        let e_mats: Vec<QMat> = (0..=top)
            .map(|d| mult_rows(&ctx, &kernels, &rep_indices, &rep_monos, &dims, top, d, &e_poly))
            .collect();

        let qy: Vec<Vec<QMat>> = (0..=top)
            .map(|d| {
                (0..n)
                    .map(|i| {
                        if d == 0 {
                            return QMat::zeros(dims[0], 0);
                        }
                        let rows: Vec<Vec<Rational>> = rep_indices[d]
                            .iter()
                            .map(|&ri| {
                                class_from_ambient(
                                    &kernels,
                                    &rep_indices,
                                    d - 1,
                                    ctx.y_matrix(d, i).row(ri),
                                )
                            })
                            .collect();
                        QMat::from_rows_cols(rows, dims[d - 1])
                    })
                    .collect()
            })
            .collect();
        let qdiff: Vec<Vec<QMat>> = (0..=top)
            .map(|d| (0..zn).map(|k| qy[d][k].sub(&qy[d][k + 1])).collect())
            .collect();

        let f_mats: Vec<QMat> = (0..=top)
            .map(|d| {
                if d < 2 {
                    return QMat::zeros(dims[d], 0);
                }
                let mut acc = QMat::zeros(ctx.dim_of_degree(d), ctx.dim_of_degree(d - 2));
                for i in 0..n {
                    for j in i + 1..n {
                        let hi = ctx.y_matrix(d, i).sub(ctx.y_matrix(d, j));
                        let lo = ctx.y_matrix(d - 1, i).sub(ctx.y_matrix(d - 1, j));
                        acc = acc.add(&hi.mul(&lo));
                    }
                }
                let amb = acc.scale(&q_ratio(-1, 2 * n as i64));
                let rows: Vec<Vec<Rational>> = rep_indices[d]
                    .iter()
                    .map(|&ri| class_from_ambient(&kernels, &rep_indices, d - 2, amb.row(ri)))
                    .collect();
                QMat::from_rows_cols(rows, dims[d - 2])
            })
            .collect();

        let qgrams: Vec<QMat> = (0..=top)
            .map(|d| {
                let g = ctx.gram(d);
                let mut out = QMat::zeros(dims[d], dims[d]);
                for (a, &ia) in rep_indices[d].iter().enumerate() {
                    for (b, &ib) in rep_indices[d].iter().enumerate() {
                        out[(a, b)] = g[(ia, ib)].clone();
                    }
                }
                out
            })
            .collect();

        Ok(IrrepModel {
            param,
            table,
            ctx,
            kernels,
            rep_indices,
            rep_monos,
            dims,
            zmul,
            pmul,
            qy,
            qdiff,
            e_mats,
            f_mats,
            qgrams,
        })
    }

    pub fn param(&self) -> &CherednikParam {
        &self.param
    }

    pub fn context(&self) -> &DunklContext {
        &self.ctx
    }

    pub fn character_table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn mu(&self) -> usize {
        self.param.mu()
    }

    pub fn top_degree(&self) -> usize {
        self.param.top_degree()
    }

    pub fn weight(&self, d: usize) -> i64 {
        self.param.weight(d)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn basis_monomials(&self, d: usize) -> &[Monomial] {
        &self.rep_monos[d]
    }

    pub fn representative_indices(&self, d: usize) -> &[usize] {
        &self.rep_indices[d]
    }

    /// Radical of the contravariant form on the ambient degree d monomials.
    pub fn kernel(&self, d: usize) -> &Subspace {
        &self.kernels[d]
    }

    /// Degree d piece of the ideal spanned by the n distinguished generators.
    pub fn kernel_via_generators(&self, d: usize) -> Subspace {
        let amb = self.ctx.dim_of_degree(d);
        let m = self.param.m;
        if d < m {
            return Subspace::zero(amb);
        }
        let fs = f_generators(&self.param);
        let betas = monomials_of_degree(self.ctx.z_arity(), d - m);
        let rows: Vec<Vec<Rational>> = betas
            .par_iter()
            .flat_map(|beta| {
                let bp = Poly::monomial(beta.clone(), q(1));
                fs.iter().map(|f| self.ctx.coords(&(f * &bp), d)).collect::<Vec<_>>()
            })
            .collect();
        Subspace::from_rows(amb, rows)
    }

    pub fn kernel_degree(&self, d: usize, method: KernelMethod) -> Subspace {
        match method {
            KernelMethod::Gram => self.kernel(d).clone(),
            KernelMethod::Generators => self.kernel_via_generators(d),
        }
    }

    /// Class coordinates of an ambient coordinate vector at degree d.
    pub fn class_of_ambient(&self, d: usize, amb: &[Rational]) -> Vec<Rational> {
        class_from_ambient(&self.kernels, &self.rep_indices, d, amb)
    }

    /// Class coordinates of a homogeneous degree d polynomial in the z model.
    pub fn class_coords(&self, d: usize, f: &Poly) -> Result<Vec<Rational>, IrrepError> {
        assert!(d <= self.top_degree());
        if f.arity() != self.ctx.z_arity() {
            return Err(IrrepError::DegreeMismatch);
        }
        if f.is_zero() {
            return Ok(vec![Rational::zero(); self.dims[d]]);
        }
        match f.homogeneous_degree() {
            Ok(k) if k == d => Ok(self.class_of_ambient(d, &self.ctx.coords(f, d))),
            _ => Err(IrrepError::DegreeMismatch),
        }
    }

    /// Canonical polynomial representative of a class coordinate vector.
    pub fn representative(&self, d: usize, cls: &[Rational]) -> Poly {
        assert_eq!(cls.len(), self.dims[d]);
        let mut f = Poly::zero(self.ctx.z_arity());
        for (mono, coeff) in self.rep_monos[d].iter().zip(cls) {
            if !coeff.is_zero() {
                f.add_term(mono.clone(), coeff.clone());
            }
        }
        f
    }

    /// Ambient coordinates of the canonical representative.
    pub fn ambient_coords(&self, d: usize, cls: &[Rational]) -> Vec<Rational> {
        assert_eq!(cls.len(), self.dims[d]);
        let mut out = vec![Rational::zero(); self.ctx.dim_of_degree(d)];
        for (&j, coeff) in self.rep_indices[d].iter().zip(cls) {
            out[j] = coeff.clone();
        }
        out
    }

    /// Multiplication by z_k from L(d) to L(d+1).
    pub fn zmul_matrix(&self, d: usize, k: usize) -> &QMat {
        &self.zmul[d][k]
    }

    /// Multiplication by the power sum of degree i, for i in 2..=n.
    pub fn pmul_matrix(&self, d: usize, i: usize) -> &QMat {
        &self.pmul[d][i - 2]
    }

    /// The Dunkl operator y_i from L(d) to L(d-1).
    pub fn y_quotient_matrix(&self, d: usize, i: usize) -> &QMat {
        &self.qy[d][i]
    }

    /// y_k - y_{k+1} from L(d) to L(d-1).
    pub fn diff_quotient_matrix(&self, d: usize, k: usize) -> &QMat {
        &self.qdiff[d][k]
    }

    pub fn e_matrix(&self, d: usize) -> &QMat {
        &self.e_mats[d]
    }

    pub fn f_matrix(&self, d: usize) -> &QMat {
        &self.f_mats[d]
    }

    /// Gram matrix of the induced form on the degree d classes.
    pub fn quotient_gram(&self, d: usize) -> &QMat {
        &self.qgrams[d]
    }

    /// Multiplication by an arbitrary homogeneous z polynomial.
    pub fn mult_matrix(&self, phi: &Poly, d: usize) -> Result<QMat, IrrepError> {
        if phi.arity() != self.ctx.z_arity() || phi.homogeneous_degree().is_err() {
            return Err(IrrepError::DegreeMismatch);
        }
        Ok(mult_rows(
            &self.ctx,
            &self.kernels,
            &self.rep_indices,
            &self.rep_monos,
            &self.dims,
            self.top_degree(),
            d,
            phi,
        ))
    }

    /// phi(y_1, .., y_n) from L(d) to L(d - deg phi), for a homogeneous
    /// x polynomial phi.
    pub fn dunkl_symmetric_matrix(&self, phi: &Poly, d: usize) -> Result<QMat, IrrepError> {
        if phi.arity() != self.param.n {
            return Err(IrrepError::DegreeMismatch);
        }
        let k = phi.homogeneous_degree().map_err(|_| IrrepError::DegreeMismatch)?;
        if k > d {
            return Ok(QMat::zeros(self.dims[d], 0));
        }
        let target = d - k;
        let rows: Vec<Vec<Rational>> = self.rep_monos[d]
            .par_iter()
            .map(|mono| {
                let img = self
                    .ctx
                    .apply_symmetric_fourier(phi, &Poly::monomial(mono.clone(), q(1)));
                self.class_of_ambient(target, &self.ctx.coords(&img, target))
            })
            .collect();
        Ok(QMat::from_rows_cols(rows, self.dims[target]))
    }

    /// Matrix of w on L(d), acting on row vectors.
    pub fn weyl_matrix(&self, w: &Permutation, d: usize) -> QMat {
        assert_eq!(w.n(), self.param.n);
        let rows: Vec<Vec<Rational>> = self.rep_monos[d]
            .par_iter()
            .map(|mono| {
                let f = Poly::monomial(mono.clone(), q(1));
                let g = retract(&w.act(&embed(&f))).expect("permutations preserve the z model");
                self.class_of_ambient(d, &self.ctx.coords(&g, d))
            })
            .collect();
        QMat::from_rows_cols(rows, self.dims[d])
    }

    /// Traces of one representative per conjugacy class, in character table order.
    pub fn class_traces(&self, d: usize) -> Vec<Rational> {
        self.table
            .partitions
            .iter()
            .map(|cls| self.weyl_matrix(&class_representative(cls), d).trace())
            .collect()
    }

    pub fn isotypic_multiplicity(&self, irrep: &Partition, d: usize) -> Rational {
        self.table.multiplicity(irrep, &self.class_traces(d))
    }

    pub fn isotypic_subspace(&self, irrep: &Partition, d: usize) -> Subspace {
        let proj = isotypic_projector(&self.table, irrep, &|w| self.weyl_matrix(w, d));
        Subspace::from_rows(self.dims[d], proj.to_rows())
    }

    /// The degree d invariants, spanned by classes of power sum products.
    pub fn invariant_classes(&self, d: usize) -> Subspace {
        let n = self.param.n;
        let rows: Vec<Vec<Rational>> = partitions_with_parts(d, 2, n)
            .iter()
            .map(|lambda| {
                let mut f = Poly::one(self.ctx.z_arity());
                for &part in lambda {
                    f = &f * &power_sum_z(part, n);
                }
                self.class_of_ambient(d, &self.ctx.coords(&f, d))
            })
            .collect();
        Subspace::from_rows(self.dims[d], rows)
    }

    /// Classes of the Dunkl images of the Vandermonde over the exponent box,
    /// defined for c > 1.
    pub fn harmonics(&self) -> Result<GradedSubspace, IrrepError> {
        let n = self.param.n;
        if self.param.m <= n {
            return Err(IrrepError::ParameterOutOfRange(format!(
                "harmonic basis needs c > 1, got {}/{}",
                self.param.m, n
            )));
        }
        let staircase = n * (n - 1) / 2;
        let mut rows: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); self.top_degree() + 1];
        let mut a = vec![0usize; n];
        loop {
            let mut h = vandermonde_z(n);
            for (v, &e) in a.iter().enumerate().skip(1) {
                for _ in 0..e {
                    h = dunkl_z(v, &h, self.ctx.c());
                }
            }
            let d = staircase - a.iter().sum::<usize>();
            if !h.is_zero() {
                rows[d].push(self.class_of_ambient(d, &self.ctx.coords(&h, d)));
            }
            let mut v = 1;
            while v < n {
                if a[v] < v {
                    a[v] += 1;
                    break;
                }
                a[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
        }
        Ok(GradedSubspace::from_pieces(
            rows.into_iter()
                .enumerate()
                .map(|(d, r)| Subspace::from_rows(self.dims[d], r))
                .collect(),
        ))
    }

    /// Degree and class of the Vandermonde.
    pub fn delta_class(&self) -> (usize, Vec<Rational>) {
        let n = self.param.n;
        let d = n * (n - 1) / 2;
        let delta = vandermonde_z(n);
        (d, self.class_of_ambient(d, &self.ctx.coords(&delta, d)))
    }

    /// Matrix of the Fourier flip from L(d) to L(2 mu - d): the appropriate
    /// power of e on negative weights and of f on positive ones.
    pub fn fourier_matrix(&self, d: usize) -> QMat {
        let k = self.param.weight(d);
        let mut m = QMat::identity(self.dims[d]);
        let mut cur = d;
        if k < 0 {
            for _ in 0..(-k) {
                m = m.mul(&self.e_mats[cur]);
                cur += 2;
            }
        } else {
            for _ in 0..k {
                m = m.mul(&self.f_mats[cur]);
                cur -= 2;
            }
        }
        m
    }

    /// Image degree and coordinates of a degree d class under the flip.
    pub fn fourier_on_irrep(&self, d: usize, v: &[Rational]) -> (usize, Vec<Rational>) {
        assert_eq!(v.len(), self.dims[d]);
        let target = 2 * self.mu() - d;
        (target, self.fourier_matrix(d).mul_row_vec(v))
    }

    /// Graded multiplicity of the i-th exterior power of the standard
    /// representation, as a Laurent polynomial in q with exponents the weights.
    pub fn hook_character(&self, i: usize) -> Result<QtPolynomial, IrrepError> {
        let n = self.param.n;
        if i >= n {
            return Err(IrrepError::IndexOutOfRange(i));
        }
        let lambda = Partition::hook(n, i);
        let mut out = QtPolynomial::zero();
        for d in 0..=self.top_degree() {
            let mult = self.isotypic_multiplicity(&lambda, d);
            assert!(mult.is_integer(), "non-integral multiplicity");
            out.add_term((self.weight(d), 0, 0), mult.to_integer());
        }
        Ok(out)
    }

    /// Checks [e, f] = h with h acting by d - mu on every graded piece.
    pub fn sl2_relations_hold(&self) -> bool {
        let top = self.top_degree();
        let mu = self.mu() as i64;
        for d in 0..=top {
            let nd = self.dims[d];
            let ef = if d >= 2 {
                self.f_mats[d].mul(&self.e_mats[d - 2])
            } else {
                QMat::zeros(nd, nd)
            };
            let fe = if d + 2 <= top {
                self.e_mats[d].mul(&self.f_mats[d + 2])
            } else {
                QMat::zeros(nd, nd)
            };
            let h = QMat::identity(nd).scale(&q(d as i64 - mu));
            if !ef.sub(&fe).sub(&h).is_zero() {
                return false;
            }
        }
        true
    }

    /// Checks the deformed Euler operator A = (1/n) sum_{i<j} (x_i-x_j)(y_i-y_j)
    /// on every graded piece: A equals (d - mu - |S|/n) + c sum_s s as matrices,
    /// and restricts to multiplication by d on the invariants.
    pub fn euler_identity_holds(&self) -> bool {
        let n = self.param.n;
        let mu = self.mu() as i64;
        let refl = (n * (n - 1) / 2) as i64;
        for d in 1..=self.top_degree() {
            let nd = self.dims[d];
            let mut acc = QMat::zeros(nd, nd);
            let mut refl_sum = QMat::zeros(nd, nd);
            for i in 0..n {
                for j in i + 1..n {
                    let mut diff = QMat::zeros(nd, self.dims[d - 1]);
                    let mut zmul = QMat::zeros(self.dims[d - 1], nd);
                    for k in i..j {
                        diff = diff.add(&self.qdiff[d][k]);
                        zmul = zmul.add(&self.zmul[d - 1][k]);
                    }
                    acc = acc.add(&diff.mul(&zmul));
                    refl_sum = refl_sum.add(&self.weyl_matrix(&Permutation::transposition(n, i, j), d));
                }
            }
            let lhs = acc.scale(&q_ratio(1, n as i64));
            let scalar = q(d as i64 - mu) - q_ratio(refl, n as i64);
            let rhs = QMat::identity(nd).scale(&scalar).add(&refl_sum.scale(self.ctx.c()));
            if !lhs.sub(&rhs).is_zero() {
                return false;
            }
            let inv = self.invariant_classes(d);
            match inv.restriction(&lhs) {
                Some(r) => {
                    if !r.sub(&QMat::identity(inv.dim()).scale(&q(d as i64))).is_zero() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    pub fn to_doc(&self) -> IrrepDoc {
        IrrepDoc {
            schema_version: SCHEMA_VERSION,
            m: self.param.m,
            n: self.param.n,
            c: self.param.c().to_string(),
            mu: self.mu(),
            total_dim: self.total_dim(),
            graded_dims: self.dims.clone(),
            weights: (0..=self.top_degree()).map(|d| self.weight(d)).collect(),
            basis: self
                .rep_monos
                .iter()
                .map(|ms| ms.iter().map(|m| m.0.clone()).collect())
                .collect(),
            kernel_dims: self.kernels.iter().map(|k| k.dim()).collect(),
            kernel_bases: self
                .kernels
                .iter()
                .map(|k| {
                    k.basis()
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Serializable summary of a built module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepDoc {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub c: String,
    pub mu: usize,
    pub total_dim: usize,
    pub graded_dims: Vec<usize>,
    pub weights: Vec<i64>,
    pub basis: Vec<Vec<Vec<u16>>>,
    pub kernel_dims: Vec<usize>,
    pub kernel_bases: Vec<Vec<Vec<String>>>,
}

/// (1/2n) sum_{i<j} (x_i - x_j)^2 in the z model.
pub fn sl2_raising_poly(n: usize) -> Poly {
    let mut s = Poly::zero(z_arity(n));
    for i in 0..n {
        for j in i + 1..n {
            let rd = root_difference_z(i, j, n);
            s = &s + &(&rd * &rd);
        }
    }
    s.scale(&q_ratio(1, 2 * n as i64))
}

/// Partitions of d with parts between lo and hi, each a descending list.
pub fn partitions_with_parts(d: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, max: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        let mut p = max.min(d);
        while p >= lo {
            cur.push(p);
            go(d - p, p, lo, cur, out);
            cur.pop();
            if p == lo {
                break;
            }
            p -= 1;
        }
    }
    let mut out = Vec::new();
    go(d, hi, lo.max(1), &mut Vec::new(), &mut out);
    out
}

fn u_series(n: usize, order: usize) -> PowerSeriesCoeffs {
    let factors: Vec<Poly> = (0..n).map(|i| xbar_z(i, n)).collect();
    PowerSeriesCoeffs::product_of_one_minus(&factors, order).expect("nonempty factor list")
}

/// Coefficients u_0, .., u_order of prod_i (1 - xbar_i t).
pub fn u_coefficients(n: usize, order: usize) -> Vec<Poly> {
    let u = u_series(n, order);
    (0..=order).map(|k| u.coefficient_of_z(k)).collect()
}

fn v_series(param: &CherednikParam, shift: i64, order: usize) -> Vec<Poly> {
    let exponent = param.c() + q(shift);
    let v = u_series(param.n, order)
        .fractional_power(&exponent, order)
        .expect("unit constant term");
    (0..=order).map(|k| v.coefficient_of_z(k)).collect()
}

/// Coefficients of the c + shift power of the u series, shift 0 or -1.
/// The order must reach m + n so that all downstream identities make sense.
pub fn v_coefficients(
    param: &CherednikParam,
    shift: i64,
    order: usize,
) -> Result<Vec<Poly>, IrrepError> {
    if shift != 0 && shift != -1 {
        return Err(IrrepError::ParameterOutOfRange(format!("shift {shift} not in {{0, -1}}")));
    }
    let need = param.m + param.n;
    if order < need {
        return Err(IrrepError::OrderTooSmall(order, need));
    }
    Ok(v_series(param, shift, order))
}

/// The n generators f_i = sum_j xbar_i^j v_{m-j} of the defining ideal.
pub fn f_generators(param: &CherednikParam) -> Vec<Poly> {
    let (m, n) = (param.m, param.n);
    let zn = z_arity(n);
    let v = v_series(param, 0, m);
    (0..n)
        .map(|i| {
            let xb = xbar_z(i, n);
            let mut f = Poly::zero(zn);
            let mut pw = Poly::one(zn);
            for j in 0..=m {
                f = &f + &(&pw * &v[m - j]);
                pw = &pw * &xb;
            }
            f
        })
        .collect()
}

/// Checks sum_i xbar_i^ell f_i = -((m + ell)/c) v_{m+ell}
///                               - sum_{j=1}^{ell-1} v_{m+j} pbar_{ell-j}
/// for 0 <= ell <= n.
pub fn arc_identity_check(param: &CherednikParam, ell: usize) -> Result<bool, IrrepError> {
    let (m, n) = (param.m, param.n);
    if ell > n {
        return Err(IrrepError::IndexOutOfRange(ell));
    }
    let zn = z_arity(n);
    let v = v_coefficients(param, 0, m + n)?;
    let fs = f_generators(param);
    let mut lhs = Poly::zero(zn);
    for (i, f) in fs.iter().enumerate() {
        lhs = &lhs + &(&xbar_z(i, n).pow(ell) * f);
    }
    let lead = -(q((m + ell) as i64) / param.c());
    let mut rhs = v[m + ell].scale(&lead);
    for j in 1..ell {
        rhs = &rhs - &(&v[m + j] * &power_sum_z(ell - j, n));
    }
    Ok((&lhs - &rhs).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;
    use crate::symgroup::all_permutations;

    fn model(m: usize, n: usize) -> IrrepModel {
        IrrepModel::build_mn(m, n).unwrap()
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(matches!(
            IrrepModel::build_mn(6, 3),
            Err(IrrepError::Param(DunklError::NotCoprime(6, 3)))
        ));
        assert!(matches!(
            IrrepModel::build_mn(3, 1),
            Err(IrrepError::Param(DunklError::InvalidRank(1)))
        ));
    }

    #[test]
    fn rank_two_profiles() {
        let md = model(3, 2);
        assert_eq!(md.graded_dims(), &[1, 1, 1]);
        assert_eq!(md.total_dim(), 3);
        assert_eq!(md.weight(0), -1);
        assert_eq!(md.weight(2), 1);
        let md5 = model(5, 2);
        assert_eq!(md5.graded_dims(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn small_c_profile() {
        let md = model(2, 3);
        assert_eq!(md.graded_dims(), &[1, 2, 1]);
        assert_eq!(md.total_dim(), 4);
    }

    #[test]
    fn four_three_profile_matches_kernel_dims() {
        let md = model(4, 3);
        assert_eq!(md.graded_dims(), &[1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(md.total_dim(), 16);
        for d in 0..=md.top_degree() {
            assert_eq!(
                md.kernel(d).dim() + md.dim_at(d),
                md.context().dim_of_degree(d),
                "degree {d}"
            );
        }
    }

    #[test]
    fn kernel_generator_route_matches_gram() {
        for (m, n) in [(3usize, 2usize), (4, 3)] {
            let md = model(m, n);
            for d in 0..=md.top_degree() {
                assert_eq!(
                    md.kernel_via_generators(d),
                    *md.kernel(d),
                    "({m},{n}) degree {d}"
                );
                assert_eq!(
                    md.kernel_degree(d, KernelMethod::Gram),
                    md.kernel_degree(d, KernelMethod::Generators)
                );
            }
        }
    }

    #[test]
    fn sl2_and_euler_relations() {
        for (m, n) in [(3usize, 2usize), (4, 3), (2, 3)] {
            let md = model(m, n);
            assert!(md.sl2_relations_hold(), "({m},{n}) sl2");
            assert!(md.euler_identity_holds(), "({m},{n}) euler");
        }
    }

    #[test]
    fn quotient_gram_is_symmetric_nondegenerate() {
        let md = model(4, 3);
        for d in 0..=md.top_degree() {
            let g = md.quotient_gram(d);
            assert!(g.sub(&g.transpose()).is_zero());
            assert_eq!(g.rank(), md.dim_at(d), "degree {d}");
        }
    }

    #[test]
    fn fourier_maps_between_opposite_weights() {
        let md = model(4, 3);
        let mu = md.mu();
        for d in 0..=md.top_degree() {
            let f = md.fourier_matrix(d);
            assert_eq!(f.rank(), md.dim_at(d), "degree {d}");
            let v: Vec<Rational> = (0..md.dim_at(d)).map(|i| q(i as i64 + 1)).collect();
            let (target, img) = md.fourier_on_irrep(d, &v);
            assert_eq!(target, 2 * mu - d);
            assert_eq!(img.len(), md.dim_at(target));
        }
        let mid = md.fourier_matrix(mu);
        assert!(mid.sub(&QMat::identity(md.dim_at(mu))).is_zero());
    }

    #[test]
    fn harmonic_classes_have_factorial_dimension() {
        let md = model(4, 3);
        let h = md.harmonics().unwrap();
        assert_eq!(h.total_dim(), 6);
        assert_eq!(h.dims()[0..4], [1, 2, 2, 1]);
        assert!(h.dims()[4..].iter().all(|&d| d == 0));
        assert!(matches!(
            model(2, 3).harmonics(),
            Err(IrrepError::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn top_dunkl_powers_of_vandermonde_vanish_off_staircase() {
        let c = q_ratio(4, 3);
        let delta = vandermonde_z(3);
        let apply = |b1: usize, b2: usize| {
            let mut h = delta.clone();
            for _ in 0..b1 {
                h = dunkl_z(1, &h, &c);
            }
            for _ in 0..b2 {
                h = dunkl_z(2, &h, &c);
            }
            h
        };
        assert!(apply(3, 0).is_zero());
        assert!(apply(0, 3).is_zero());
        assert!(!apply(2, 1).is_zero());
        assert!(!apply(1, 2).is_zero());
    }

    #[test]
    fn vandermonde_class_is_alternating() {
        let md = model(4, 3);
        let (d, cls) = md.delta_class();
        assert_eq!(d, 3);
        assert!(cls.iter().any(|x| !x.is_zero()));
        for w in all_permutations(3) {
            let img = md.weyl_matrix(&w, d).mul_row_vec(&cls);
            let expect: Vec<Rational> = cls.iter().map(|x| x * q(w.sign())).collect();
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn hook_characters_of_the_cube() {
        let md = model(3, 2);
        let chi0 = md.hook_character(0).unwrap();
        let expect0 = QtPolynomial::monomial(-1, 0, 0, 1).add(&QtPolynomial::monomial(1, 0, 0, 1));
        assert_eq!(chi0, expect0);
        let chi1 = md.hook_character(1).unwrap();
        assert_eq!(chi1, QtPolynomial::monomial(0, 0, 0, 1));
        assert!(matches!(md.hook_character(2), Err(IrrepError::IndexOutOfRange(2))));
    }

    #[test]
    fn isotypic_multiplicities_fill_the_dimension() {
        let md = model(4, 3);
        let parts = md.character_table().partitions.clone();
        for d in 0..=md.top_degree() {
            let mut total = Rational::zero();
            for lam in &parts {
                let mult = md.isotypic_multiplicity(lam, d);
                assert!(mult.is_integer());
                total += mult * q(lam.dimension() as i64);
            }
            assert_eq!(total, q(md.dim_at(d) as i64), "degree {d}");
        }
        let std = Partition::new(vec![2, 1]);
        assert_eq!(md.isotypic_multiplicity(&std, 1), q(1));
        assert_eq!(md.isotypic_multiplicity(&Partition::new(vec![3]), 1), q(0));
    }

    #[test]
    fn invariant_classes_match_the_projector() {
        let md = model(4, 3);
        let triv = Partition::new(vec![3]);
        let expected = [1usize, 0, 1, 1, 1, 0, 1];
        for d in 0..=md.top_degree() {
            let inv = md.invariant_classes(d);
            assert_eq!(inv.dim(), expected[d], "degree {d}");
            let proj = md.isotypic_subspace(&triv, d);
            assert_eq!(inv, proj, "degree {d}");
            assert_eq!(
                md.isotypic_multiplicity(&triv, d),
                q(expected[d] as i64)
            );
        }
    }

    #[test]
    fn class_traces_on_the_standard_piece() {
        let md = model(4, 3);
        assert_eq!(md.class_traces(1), vec![q(-1), q(0), q(2)]);
    }

    #[test]
    fn u_and_v_series_low_terms() {
        let param = CherednikParam::new(3, 2).unwrap();
        let u = u_coefficients(2, 5);
        let v = v_coefficients(&param, 0, 5).unwrap();
        assert!((&v[0] - &Poly::one(1)).is_zero());
        assert!(v[1].is_zero());
        assert!(v[3].is_zero());
        assert!((&v[2] - &u[2].scale(&param.c())).is_zero());
        assert_eq!(v[2].coefficient_of(&Monomial(vec![2])), q_ratio(-3, 8));
        assert!(matches!(
            v_coefficients(&param, 0, 3),
            Err(IrrepError::OrderTooSmall(3, 5))
        ));
        assert!(matches!(
            v_coefficients(&param, 2, 9),
            Err(IrrepError::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn v_congruent_to_scaled_u_modulo_double_products() {
        let param = CherednikParam::new(5, 4).unwrap();
        let u = u_coefficients(4, 9);
        let v = v_coefficients(&param, 0, 9).unwrap();
        for k in 2..=3usize {
            assert!((&v[k] - &u[k].scale(&param.c())).is_zero(), "k = {k}");
        }
        let diff = &v[4] - &u[4].scale(&param.c());
        let monos = monomials_of_degree(3, 4);
        let index: std::collections::HashMap<_, _> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let coords = |f: &Poly| {
            let mut out = vec![Rational::zero(); monos.len()];
            for (m, c) in f.terms() {
                out[index[m]] = c.clone();
            }
            out
        };
        let p2 = power_sum_z(2, 4);
        let span = Subspace::from_rows(monos.len(), vec![coords(&(&p2 * &p2))]);
        assert!(span.contains(&coords(&diff)));
        assert!(!diff.is_zero());
    }

    #[test]
    fn rank_two_generators_span_the_cube_ideal() {
        let param = CherednikParam::new(3, 2).unwrap();
        let fs = f_generators(&param);
        assert_eq!(fs.len(), 2);
        let z3 = Monomial(vec![3]);
        assert_eq!(fs[0].coefficient_of(&z3), q_ratio(-1, 16));
        assert_eq!(fs[1].coefficient_of(&z3), q_ratio(1, 16));
        for f in &fs {
            assert_eq!(f.num_terms(), 1);
        }
    }

    #[test]
    fn generators_are_permuted_by_the_weyl_group() {
        let param = CherednikParam::new(4, 3).unwrap();
        let fs = f_generators(&param);
        for w in all_permutations(3) {
            for (i, f) in fs.iter().enumerate() {
                let lhs = w.act(&embed(f));
                let rhs = embed(&fs[w.apply(i)]);
                assert!((&lhs - &rhs).is_zero());
            }
        }
    }

    #[test]
    fn generators_expand_through_the_shifted_series() {
        let param = CherednikParam::new(4, 3).unwrap();
        let (m, n) = (param.m, param.n);
        let u = u_coefficients(n, n - 1);
        let vs = v_coefficients(&param, -1, m + n).unwrap();
        let fs = f_generators(&param);
        for (i, f) in fs.iter().enumerate() {
            let xb = xbar_z(i, n);
            let mut alt = Poly::zero(z_arity(n));
            for j in 0..n {
                let mut inner = Poly::zero(z_arity(n));
                for t in 0..=j {
                    inner = &inner + &(&xb.pow(j - t) * &u[t]);
                }
                alt = &alt + &(&inner * &vs[m - j]);
            }
            assert!((f - &alt).is_zero(), "generator {i}");
        }
    }

    #[test]
    fn arc_identities_hold_through_rank() {
        for (m, n) in [(3usize, 2usize), (4, 3)] {
            let param = CherednikParam::new(m, n).unwrap();
            for ell in 1..=n {
                assert!(arc_identity_check(&param, ell).unwrap(), "({m},{n}) ell {ell}");
            }
            assert!(matches!(
                arc_identity_check(&param, n + 1),
                Err(IrrepError::IndexOutOfRange(_))
            ));
        }
        // At ell = 0 both sides reduce to multiples of v_m; the stated form
        // holds exactly when v_m vanishes, as it does for n = 2 and odd m.
        let p32 = CherednikParam::new(3, 2).unwrap();
        assert!(arc_identity_check(&p32, 0).unwrap());
        let p43 = CherednikParam::new(4, 3).unwrap();
        assert!(!arc_identity_check(&p43, 0).unwrap());
        let sum: Poly = f_generators(&p43).iter().fold(Poly::zero(2), |acc, f| &acc + f);
        assert!(sum.is_zero());
    }

    #[test]
    fn excess_series_terms_lie_in_the_kernel() {
        let md = model(4, 3);
        let param = *md.param();
        let v = v_coefficients(&param, 0, 7).unwrap();
        for k in [5usize, 6] {
            assert!(!v[k].is_zero());
            let cls = md.class_coords(k, &v[k]).unwrap();
            assert!(cls.iter().all(|x| x.is_zero()), "v_{k}");
        }
    }

    #[test]
    fn dunkl_symmetric_matrix_pairs_invariants() {
        let md = model(4, 3);
        let p2x = crate::symgroup::power_sum(2, 3);
        let op = md.dunkl_symmetric_matrix(&p2x, 2).unwrap();
        let cls = md.class_coords(2, &power_sum_z(2, 3)).unwrap();
        let img = op.mul_row_vec(&cls);
        assert!(img.iter().any(|x| !x.is_zero()));
        let low = md.dunkl_symmetric_matrix(&p2x, 1).unwrap();
        assert_eq!(low.mul_row_vec(&md.class_coords(1, &Poly::var(0, 2)).unwrap()), vec![]);
    }

    #[test]
    fn partitions_with_parts_enumerates_windows() {
        assert_eq!(partitions_with_parts(0, 2, 3), vec![Vec::<usize>::new()]);
        assert_eq!(partitions_with_parts(1, 2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(partitions_with_parts(5, 2, 3), vec![vec![3, 2]]);
        assert_eq!(partitions_with_parts(6, 2, 3), vec![vec![3, 3], vec![2, 2, 2]]);
    }

    #[test]
    fn doc_round_trips_through_json() {
        let md = model(4, 3);
        let doc = md.to_doc();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.graded_dims, vec![1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(doc.c, "4/3");
        let json = serde_json::to_string(&doc).unwrap();
        let back: IrrepDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn graded_subspace_algebra() {
        let md = model(4, 3);
        let full = GradedSubspace::full(md.graded_dims());
        let zero = GradedSubspace::zero(md.graded_dims());
        assert!(full.contains_space(&zero));
        assert_eq!(full.intersect(&zero), zero);
        assert_eq!(full.sum(&zero), full);
        assert_eq!(zero.perp(&md), full);
        assert_eq!(full.perp(&md), zero);
        assert_eq!(full.total_dim(), 16);
    }
}
