//! Filtrations on L_c: the one by powers of the augmentation ideal, its
//! Kazhdan companion, the orthocomplement form of that companion, and the
//! inductive filtration built along the Euclidean chain of parameters.
//!
//! Every filtration is stored as an ascending list of graded subspaces of the
//! quotient model. Levels are weight graded, so each level is a subspace per
//! degree and membership questions reduce to row reduction.

use crate::dunkl::{power_sum_z, vandermonde_z, z_arity, CherednikParam, DunklContext};
use crate::irrep::{
    partitions_with_parts, GradedSubspace, IrrepError, IrrepModel, SCHEMA_VERSION,
};
use crate::linalg::{QMat, Subspace};
use crate::poly::{Poly, Rational};
use crate::qt::QtPolynomial;
use crate::symgroup::{class_representative, Partition, Permutation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiltrationError {
    #[error(transparent)]
    Irrep(#[from] IrrepError),
    #[error("vector does not lie in the invariant part")]
    NotInvariant,
    #[error("invariant parts differ in dimension at degree {0}")]
    DimensionMismatch(usize),
    #[error("models do not match: {0}")]
    ModelMismatch(String),
    #[error("parameter chain is invalid: {0}")]
    ChainInvalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiltrationKind {
    Power,
    Algebraic,
    AlgebraicPrime,
    Inductive,
    InductivePrime,
}

impl FiltrationKind {
    pub fn label(self) -> &'static str {
        match self {
            FiltrationKind::Power => "a",
            FiltrationKind::Algebraic => "alg",
            FiltrationKind::AlgebraicPrime => "alg-prime",
            FiltrationKind::Inductive => "ind",
            FiltrationKind::InductivePrime => "ind-prime",
        }
    }
}

/// An ascending chain of graded subspaces of L_c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    kind: FiltrationKind,
    levels: Vec<GradedSubspace>,
}

impl Filtration {
    pub fn from_levels(kind: FiltrationKind, levels: Vec<GradedSubspace>) -> Filtration {
        assert!(!levels.is_empty(), "a filtration needs at least one level");
        for w in levels.windows(2) {
            assert!(w[1].contains_space(&w[0]), "levels must ascend");
        }
        Filtration { kind, levels }
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[GradedSubspace] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &GradedSubspace {
        &self.levels[i]
    }

    fn level_clamped(&self, i: usize) -> &GradedSubspace {
        &self.levels[i.min(self.levels.len() - 1)]
    }

    pub fn is_ascending(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].contains_space(&w[0]))
    }

    /// The smallest level containing the class, if any level does.
    pub fn level_of(&self, d: usize, v: &[Rational]) -> Option<usize> {
        self.levels.iter().position(|lvl| lvl.piece(d).contains(v))
    }

    pub fn level_dims(&self) -> Vec<Vec<usize>> {
        self.levels.iter().map(|l| l.dims()).collect()
    }

    pub fn cumulative_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.total_dim()).collect()
    }

    pub fn to_doc(&self, model: &IrrepModel) -> FiltrationDoc {
        let mut rows = Vec::new();
        for (i, lvl) in self.levels.iter().enumerate() {
            for d in 0..=lvl.top() {
                let piece = lvl.piece(d);
                if piece.is_zero() {
                    continue;
                }
                rows.push(FiltrationRow {
                    level: i,
                    degree: d,
                    weight: model.weight(d),
                    dimension: piece.dim(),
                    basis: piece.pivots().to_vec(),
                });
            }
        }
        FiltrationDoc {
            schema_version: SCHEMA_VERSION,
            kind: self.kind.label().to_string(),
            m: model.param().m,
            n: model.param().n,
            levels: self.levels.len(),
            rows,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationDoc {
    pub schema_version: u32,
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub levels: usize,
    pub rows: Vec<FiltrationRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationRow {
    pub level: usize,
    pub degree: usize,
    pub weight: i64,
    pub dimension: usize,
    pub basis: Vec<usize>,
}

/// The invariant classes in every degree, as one graded subspace.
pub fn invariant_graded(model: &IrrepModel) -> GradedSubspace {
    GradedSubspace::from_pieces(
        (0..=model.top_degree()).map(|d| model.invariant_classes(d)).collect(),
    )
}

/// Degreewise image under the weight flip.
pub fn graded_fourier(model: &IrrepModel, g: &GradedSubspace) -> GradedSubspace {
    let dims = model.graded_dims();
    let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 0..=model.top_degree() {
        let p = g.piece(d);
        if p.is_zero() {
            continue;
        }
        let t = 2 * model.mu() - d;
        pieces[t] = pieces[t].sum(&p.apply(&model.fourier_matrix(d)));
    }
    GradedSubspace::from_pieces(pieces)
}

pub fn graded_apply_e(model: &IrrepModel, g: &GradedSubspace) -> GradedSubspace {
    let dims = model.graded_dims();
    let top = model.top_degree();
    let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 0..=top {
        if d + 2 > top {
            break;
        }
        let p = g.piece(d);
        if p.is_zero() {
            continue;
        }
        pieces[d + 2] = pieces[d + 2].sum(&p.apply(model.e_matrix(d)));
    }
    GradedSubspace::from_pieces(pieces)
}

pub fn graded_apply_f(model: &IrrepModel, g: &GradedSubspace) -> GradedSubspace {
    let dims = model.graded_dims();
    let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 2..=model.top_degree() {
        let p = g.piece(d);
        if p.is_zero() {
            continue;
        }
        pieces[d - 2] = pieces[d - 2].sum(&p.apply(model.f_matrix(d)));
    }
    GradedSubspace::from_pieces(pieces)
}

/// Degreewise image under the k-th Dunkl difference y_k - y_{k+1}.
pub fn graded_apply_diff(model: &IrrepModel, g: &GradedSubspace, k: usize) -> GradedSubspace {
    let dims = model.graded_dims();
    let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 1..=model.top_degree() {
        let p = g.piece(d);
        if p.is_zero() {
            continue;
        }
        pieces[d - 1] = pieces[d - 1].sum(&p.apply(model.diff_quotient_matrix(d, k)));
    }
    GradedSubspace::from_pieces(pieces)
}

fn a_step(model: &IrrepModel, prev: &GradedSubspace) -> GradedSubspace {
    let dims = model.graded_dims();
    let n = model.param().n;
    let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 0..=model.top_degree() {
        for i in 2..=n.min(d) {
            let src = prev.piece(d - i);
            if src.is_zero() {
                continue;
            }
            pieces[d] = pieces[d].sum(&src.apply(model.pmul_matrix(d - i, i)));
        }
    }
    GradedSubspace::from_pieces(pieces)
}

/// The image of the j-th power of the augmentation ideal in L_c.
pub fn a_power(model: &IrrepModel, j: usize) -> GradedSubspace {
    let mut cur = GradedSubspace::full(model.graded_dims());
    for _ in 0..j {
        if cur.is_zero() {
            break;
        }
        cur = a_step(model, &cur);
    }
    cur
}

/// The smallest j with a^j = 0 in L_c.
pub fn a_nilpotence(model: &IrrepModel) -> usize {
    let mut cur = GradedSubspace::full(model.graded_dims());
    let mut j = 0;
    while !cur.is_zero() {
        cur = a_step(model, &cur);
        j += 1;
    }
    j
}

/// Degreewise orthogonal complement under the induced form.
pub fn ortho_complement(model: &IrrepModel, s: &GradedSubspace) -> GradedSubspace {
    s.perp(model)
}

fn factor_multisets(j: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(lo: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in lo..=n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(2, n, j, &mut Vec::new(), &mut out);
    out
}

fn power_sum_x(k: usize, n: usize) -> Poly {
    let mut f = Poly::zero(n);
    for i in 0..n {
        f = &f + &Poly::var(i, n).pow(k);
    }
    f
}

fn p_lambda_poly(lam: &[usize], n: usize) -> Poly {
    let mut f = Poly::one(z_arity(n));
    for &part in lam {
        f = &f * &power_sum_z(part, n);
    }
    f
}

/// Classes killed by every product of j power sums in the Dunkl operators.
/// This is the second description of the orthocomplement of a^j.
pub fn annihilator_space(model: &IrrepModel, j: usize) -> GradedSubspace {
    let n = model.param().n;
    let dims = model.graded_dims();
    let combos = factor_multisets(j, n);
    let pieces = (0..=model.top_degree())
        .map(|d| {
            let mut cond_rows: Vec<Vec<Rational>> = Vec::new();
            for combo in &combos {
                let k: usize = combo.iter().sum();
                if k > d {
                    continue;
                }
                let mut phi = Poly::one(n);
                for &i in combo {
                    phi = &phi * &power_sum_x(i, n);
                }
                let mat = model
                    .dunkl_symmetric_matrix(&phi, d)
                    .expect("power sum products are symmetric and homogeneous");
                cond_rows.extend(mat.transpose().to_rows());
            }
            if cond_rows.is_empty() {
                return Subspace::full(dims[d]);
            }
            QMat::from_rows_cols(cond_rows, dims[d]).nullspace()
        })
        .collect();
    GradedSubspace::from_pieces(pieces)
}

/// The filtration with i-th level the flip image of the orthocomplement of
/// a^{i+1}.
pub fn filtration_a(model: &IrrepModel) -> Filtration {
    let total = model.total_dim();
    let mut levels = Vec::new();
    let mut apow = a_step(model, &GradedSubspace::full(model.graded_dims()));
    loop {
        let lvl = graded_fourier(model, &ortho_complement(model, &apow));
        let done = lvl.total_dim() == total;
        levels.push(lvl);
        if done {
            break;
        }
        apow = a_step(model, &apow);
    }
    Filtration { kind: FiltrationKind::Power, levels }
}

/// The Kazhdan regrading: level i collects F_j in weight k whenever
/// 2j + k <= i.
pub fn kazhdan(model: &IrrepModel, filt: &Filtration) -> Filtration {
    let kind = match filt.kind() {
        FiltrationKind::Power => FiltrationKind::Algebraic,
        FiltrationKind::Inductive => FiltrationKind::InductivePrime,
        other => other,
    };
    let dims = model.graded_dims();
    let top_level = filt.num_levels() - 1;
    let target = filt.levels().last().unwrap().total_dim();
    let bound = 2 * top_level as i64 + model.mu() as i64 + 1;
    let mut levels = Vec::new();
    let mut i: i64 = 0;
    loop {
        let pieces = (0..=model.top_degree())
            .map(|d| {
                let k = model.weight(d);
                if i < k {
                    return Subspace::zero(dims[d]);
                }
                let j = ((i - k) / 2) as usize;
                filt.level(j.min(top_level)).piece(d).clone()
            })
            .collect();
        let lvl = GradedSubspace::from_pieces(pieces);
        let done = lvl.total_dim() == target;
        levels.push(lvl);
        if done {
            break;
        }
        i += 1;
        assert!(i <= bound, "the Kazhdan regrading failed to exhaust");
    }
    Filtration { kind, levels }
}

/// The same filtration computed without the weight flip: in weight k the
/// i-th level is the orthocomplement of a^ceil((i+k+1)/2).
pub fn filtration_alg_prime(model: &IrrepModel) -> Filtration {
    let dims = model.graded_dims();
    let top = model.top_degree();
    let total = model.total_dim();
    let mut perps: Vec<GradedSubspace> = Vec::new();
    let mut apow = a_step(model, &GradedSubspace::full(dims));
    loop {
        perps.push(ortho_complement(model, &apow));
        if apow.is_zero() {
            break;
        }
        apow = a_step(model, &apow);
    }
    let nil = perps.len();
    let bound = 2 * nil as i64 + model.mu() as i64 + 2;
    let mut levels = Vec::new();
    let mut i: i64 = 0;
    loop {
        let pieces = (0..=top)
            .map(|d| {
                let k = model.weight(d);
                let j0 = (i + k + 2).div_euclid(2);
                if j0 <= 0 {
                    Subspace::zero(dims[d])
                } else {
                    perps[(j0 as usize).min(nil) - 1].piece(d).clone()
                }
            })
            .collect();
        let lvl = GradedSubspace::from_pieces(pieces);
        let done = lvl.total_dim() == total;
        levels.push(lvl);
        if done {
            break;
        }
        i += 1;
        assert!(i <= bound, "the orthocomplement regrading failed to exhaust");
    }
    Filtration { kind: FiltrationKind::AlgebraicPrime, levels }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainStep {
    AddOne,
    Flip,
}

/// The Euclidean chain from 1/k up to the target parameter. Each step either
/// adds one to c or flips m/n to n/m.
#[derive(Debug, Clone)]
pub struct FractionChain {
    params: Vec<CherednikParam>,
    steps: Vec<ChainStep>,
}

impl FractionChain {
    pub fn new(target: &CherednikParam) -> Result<FractionChain, FiltrationError> {
        let mut params = vec![*target];
        let mut steps = Vec::new();
        let mut cur = *target;
        while cur.m != 1 {
            let (step, prev) = if cur.m > cur.n {
                (ChainStep::AddOne, cur.minus_one())
            } else {
                (ChainStep::Flip, cur.flip())
            };
            let prev = prev.ok_or_else(|| {
                FiltrationError::ChainInvalid(format!("no step below {}/{}", cur.m, cur.n))
            })?;
            steps.push(step);
            params.push(prev);
            cur = prev;
        }
        params.reverse();
        steps.reverse();
        Ok(FractionChain { params, steps })
    }

    pub fn params(&self) -> &[CherednikParam] {
        &self.params
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn base(&self) -> &CherednikParam {
        &self.params[0]
    }

    pub fn target(&self) -> &CherednikParam {
        self.params.last().unwrap()
    }
}

/// Writes an invariant class as a polynomial in the power sums. The result
/// is a genuinely invariant representative, not just any coset member.
fn invariant_representative(model: &IrrepModel, d: usize, v: &[Rational]) -> Option<Poly> {
    let n = model.param().n;
    let lams = partitions_with_parts(d, 2, n);
    let polys: Vec<Poly> = lams.iter().map(|lam| p_lambda_poly(lam, n)).collect();
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|f| model.class_coords(d, f).expect("power sums are homogeneous"))
        .collect();
    let pmat = QMat::from_rows_cols(rows, model.dim_at(d));
    let x = pmat.transpose().solve(v)?;
    let mut out = Poly::zero(z_arity(n));
    for (xi, f) in x.iter().zip(&polys) {
        out.add_scaled(f, xi);
    }
    Some(out)
}

/// Multiplies an invariant class of the previous parameter by the Vandermonde
/// and reads the result in the current model. The class must be invariant,
/// otherwise the image would depend on the chosen representative.
pub fn shift_lift(
    prev: &IrrepModel,
    cur: &IrrepModel,
    d: usize,
    v: &[Rational],
) -> Result<(usize, Vec<Rational>), FiltrationError> {
    let expected = cur
        .param()
        .minus_one()
        .ok_or_else(|| FiltrationError::ModelMismatch("the shift needs c > 1".into()))?;
    if &expected != prev.param() {
        return Err(FiltrationError::ModelMismatch(format!(
            "expected the model at {}/{} one step below {}/{}",
            expected.m,
            expected.n,
            cur.param().m,
            cur.param().n
        )));
    }
    if d > prev.top_degree() {
        return Err(FiltrationError::NotInvariant);
    }
    let n = cur.param().n;
    let target = d + n * (n - 1) / 2;
    let psi = invariant_representative(prev, d, v).ok_or(FiltrationError::NotInvariant)?;
    if psi.is_zero() {
        return Ok((target, vec![Rational::zero(); cur.dim_at(target)]));
    }
    let cls = cur.class_coords(target, &(&vandermonde_z(n) * &psi))?;
    Ok((target, cls))
}

/// Transport of invariant classes between L_{m/n} and L_{n/m}, matching
/// power sums to power sums degree by degree.
pub struct FlipMap {
    src: CherednikParam,
    dst: CherednikParam,
    mats: Vec<(QMat, QMat)>,
}

impl FlipMap {
    pub fn src_param(&self) -> &CherednikParam {
        &self.src
    }

    pub fn dst_param(&self) -> &CherednikParam {
        &self.dst
    }

    /// None when the vector is not an invariant class.
    pub fn apply(&self, d: usize, v: &[Rational]) -> Option<Vec<Rational>> {
        let (ps, pd) = &self.mats[d];
        let x = ps.transpose().solve(v)?;
        Some(pd.mul_row_vec(&x))
    }

    pub fn apply_subspace(&self, d: usize, s: &Subspace) -> Option<Subspace> {
        let mut rows = Vec::with_capacity(s.dim());
        for r in s.basis() {
            rows.push(self.apply(d, r)?);
        }
        Some(Subspace::from_rows(self.mats[d].1.cols, rows))
    }
}

fn rational_nth_root(v: &Rational, d: i64) -> Option<Rational> {
    let (v, k) = if d < 0 {
        (v.recip(), (-d) as u32)
    } else {
        (v.clone(), d as u32)
    };
    if k == 1 {
        return Some(v);
    }
    let neg = v < Rational::zero();
    if neg && k % 2 == 0 {
        return None;
    }
    let num = num_integer::Roots::nth_root(&v.numer().abs(), k);
    let den = num_integer::Roots::nth_root(&v.denom().abs(), k);
    if num.pow(k) != v.numer().abs() || den.pow(k) != v.denom().abs() {
        return None;
    }
    let num = if neg { -num } else { num };
    Some(Rational::new(num, den))
}

/// Solve alpha^row = val for every accumulated constraint, multiplicative in
/// the unknowns. Diagonalizes the exponent matrix by integer row and column
/// operations, mirroring the row operations on the values, then reads the
/// unknowns off the diagonal. None when the system forces an irrational or
/// inconsistent choice.
fn solve_scalar_system(
    nvars: usize,
    constraints: Vec<(Vec<i64>, Rational)>,
) -> Option<Vec<Rational>> {
    let p = constraints.len();
    let mut a: Vec<Vec<i64>> = constraints.iter().map(|(e, _)| e.clone()).collect();
    let mut vals: Vec<Rational> = constraints.into_iter().map(|(_, v)| v).collect();
    let mut x: Vec<Vec<i64>> = (0..nvars)
        .map(|i| (0..nvars).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut t = 0usize;
    while t < p.min(nvars) {
        let Some((bi, bj)) = (t..p)
            .flat_map(|i| (t..nvars).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, bi);
        vals.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        for row in x.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..p {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                for j in 0..nvars {
                    a[i][j] -= q * a[t][j];
                }
                vals[i] = &vals[i] / vals[t].pow(q as i32);
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..nvars {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in x.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if clean {
            t += 1;
        }
    }
    let mut gammas = vec![Rational::one(); nvars];
    for i in 0..p {
        if i < nvars && a[i][i] != 0 {
            gammas[i] = rational_nth_root(&vals[i], a[i][i])?;
        } else if !vals[i].is_one() {
            return None;
        }
    }
    Some(
        x.iter()
            .map(|row| {
                row.iter()
                    .zip(&gammas)
                    .map(|(&e, g)| g.pow(e as i32))
                    .product()
            })
            .collect(),
    )
}

pub fn flip(src: &IrrepModel, dst: &IrrepModel) -> Result<FlipMap, FiltrationError> {
    let sp = *src.param();
    let dp = *dst.param();
    if sp.m != dp.n || sp.n != dp.m {
        return Err(FiltrationError::ModelMismatch(format!(
            "{}/{} does not flip onto {}/{}",
            sp.m, sp.n, dp.m, dp.n
        )));
    }
    let top = src.top_degree();
    // only power sums seen by both sides can carry the identification; higher
    // ones collapse on the smaller variable count (p_4 = p_2^2/2 when n = 3)
    let hi = sp.m.min(sp.n);
    let nvars = hi.saturating_sub(1);
    let mut stage = Vec::with_capacity(top + 1);
    let mut constraints: Vec<(Vec<i64>, Rational)> = Vec::new();
    for d in 0..=top {
        let lams = partitions_with_parts(d, 2, hi);
        let rows_src: Vec<Vec<Rational>> = lams
            .iter()
            .map(|lam| {
                src.class_coords(d, &p_lambda_poly(lam, sp.n))
                    .expect("power sums are homogeneous")
            })
            .collect();
        let rows_dst: Vec<Vec<Rational>> = lams
            .iter()
            .map(|lam| {
                dst.class_coords(d, &p_lambda_poly(lam, dp.n))
                    .expect("power sums are homogeneous")
            })
            .collect();
        let span_src = Subspace::from_rows(src.dim_at(d), rows_src.clone());
        let span_dst = Subspace::from_rows(dst.dim_at(d), rows_dst.clone());
        if span_src.dim() != span_dst.dim() {
            return Err(FiltrationError::DimensionMismatch(d));
        }
        // matching relations on the two sides constrain the rescaling of
        // each power sum the transport is allowed to make
        let rel_src = QMat::from_rows_cols(rows_src.clone(), src.dim_at(d))
            .transpose()
            .nullspace();
        let rel_dst = QMat::from_rows_cols(rows_dst.clone(), dst.dim_at(d))
            .transpose()
            .nullspace();
        if rel_src.pivots() != rel_dst.pivots() {
            return Err(FiltrationError::ModelMismatch(
                "the power sum relations do not transport".into(),
            ));
        }
        for (k, (r, rp)) in rel_src.basis().iter().zip(rel_dst.basis()).enumerate() {
            let pivot = rel_src.pivots()[k];
            for idx in 0..lams.len() {
                if r[idx].is_zero() != rp[idx].is_zero() {
                    return Err(FiltrationError::ModelMismatch(
                        "the power sum relations do not transport".into(),
                    ));
                }
                if idx == pivot || r[idx].is_zero() {
                    continue;
                }
                let mut evec = vec![0i64; nvars];
                for &part in &lams[idx] {
                    evec[part - 2] += 1;
                }
                for &part in &lams[pivot] {
                    evec[part - 2] -= 1;
                }
                constraints.push((evec, &rp[idx] / &r[idx]));
            }
        }
        stage.push((lams, rows_src, rows_dst));
    }
    let alphas = solve_scalar_system(nvars, constraints).ok_or_else(|| {
        FiltrationError::ModelMismatch("no rational power sum rescaling transports the relations".into())
    })?;
    let mut mats = Vec::with_capacity(top + 1);
    for (d, (lams, rows_src, rows_dst)) in stage.into_iter().enumerate() {
        let scaled: Vec<Vec<Rational>> = lams
            .iter()
            .zip(rows_dst)
            .map(|(lam, row)| {
                let t: Rational = lam.iter().map(|&part| alphas[part - 2].clone()).product();
                row.into_iter().map(|x| &t * &x).collect()
            })
            .collect();
        mats.push((
            QMat::from_rows_cols(rows_src, src.dim_at(d)),
            QMat::from_rows_cols(scaled, dst.dim_at(d)),
        ));
    }
    Ok(FlipMap { src: sp, dst: dp, mats })
}

/// Span of all x^a w y^b v with at most alpha Dunkl factors, v running over
/// the start space. Products are taken in that normal order.
fn order_closure(
    model: &IrrepModel,
    start: &GradedSubspace,
    alpha: usize,
    weyl: &[Vec<QMat>],
) -> GradedSubspace {
    let n = model.param().n;
    let top = model.top_degree();
    let dims = model.graded_dims();
    let mut acc: Vec<Subspace> = start.pieces().to_vec();
    let mut frontier = acc.clone();
    for _ in 0..alpha {
        let mut next: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
        let mut alive = false;
        for d in 1..=top {
            if frontier[d].is_zero() {
                continue;
            }
            for i in 0..n {
                let img = frontier[d].apply(model.y_quotient_matrix(d, i));
                if !img.is_zero() {
                    alive = true;
                }
                next[d - 1] = next[d - 1].sum(&img);
            }
        }
        frontier = next;
        for d in 0..=top {
            acc[d] = acc[d].sum(&frontier[d]);
        }
        if !alive {
            break;
        }
    }
    loop {
        let before: usize = acc.iter().map(|p| p.dim()).sum();
        for d in 0..=top {
            if acc[d].is_zero() {
                continue;
            }
            for w in &weyl[d] {
                let img = acc[d].apply(w);
                acc[d] = acc[d].sum(&img);
            }
        }
        let after: usize = acc.iter().map(|p| p.dim()).sum();
        if after == before {
            break;
        }
    }
    let zn = model.context().z_arity();
    for d in 0..top {
        if acc[d].is_zero() {
            continue;
        }
        for k in 0..zn {
            let img = acc[d].apply(model.zmul_matrix(d, k));
            acc[d + 1] = acc[d + 1].sum(&img);
        }
    }
    GradedSubspace::from_pieces(acc)
}

fn ind_shift_levels(
    prev: &IrrepModel,
    cur: &IrrepModel,
    inv_prev: &[GradedSubspace],
) -> Result<Vec<GradedSubspace>, FiltrationError> {
    let n = cur.param().n;
    let dims = cur.graded_dims();
    let top = cur.top_degree();
    let total = cur.total_dim();
    let starts: Vec<GradedSubspace> = inv_prev
        .iter()
        .map(|lvl| {
            let mut rows: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); top + 1];
            for d in 0..=prev.top_degree() {
                for row in lvl.piece(d).basis() {
                    let (t, cls) = shift_lift(prev, cur, d, row)?;
                    rows[t].push(cls);
                }
            }
            Ok(GradedSubspace::from_pieces(
                rows.into_iter()
                    .enumerate()
                    .map(|(d, r)| Subspace::from_rows(dims[d], r))
                    .collect(),
            ))
        })
        .collect::<Result<_, FiltrationError>>()?;
    let weyl: Vec<Vec<QMat>> = (0..=top)
        .map(|d| {
            (0..n - 1)
                .map(|k| cur.weyl_matrix(&Permutation::transposition(n, k, k + 1), d))
                .collect()
        })
        .collect();
    let nprev = starts.len();
    let mut levels: Vec<GradedSubspace> = Vec::new();
    let mut j = 0usize;
    loop {
        let mut lvl = GradedSubspace::zero(dims);
        for beta in 0..=j.min(nprev - 1) {
            lvl = lvl.sum(&order_closure(cur, &starts[beta], j - beta, &weyl));
        }
        let done = lvl.total_dim() == total;
        levels.push(lvl);
        if done {
            return Ok(levels);
        }
        j += 1;
        if j > 2 * total + 4 {
            return Err(FiltrationError::ChainInvalid(
                "the inductive filtration does not exhaust the module".into(),
            ));
        }
    }
}

/// The inductive filtration. For m > n it lives on all of L_c, for m < n
/// only the invariant part carries it, and for m = 1 everything sits in
/// level zero.
pub fn filtration_ind(model: &IrrepModel) -> Result<Filtration, FiltrationError> {
    let chain = FractionChain::new(model.param())?;
    let k = chain.params().len();
    let mut owned: Vec<IrrepModel> = Vec::with_capacity(k.saturating_sub(1));
    for p in &chain.params()[..k - 1] {
        owned.push(IrrepModel::build(*p)?);
    }
    let views: Vec<&IrrepModel> = owned.iter().chain(std::iter::once(model)).collect();
    let base = views[0];
    let mut full_levels: Vec<GradedSubspace> =
        vec![GradedSubspace::full(base.graded_dims())];
    let mut inv_levels: Vec<GradedSubspace> = vec![invariant_graded(base)];
    for (idx, step) in chain.steps().iter().enumerate() {
        let prev = views[idx];
        let cur = views[idx + 1];
        match step {
            ChainStep::AddOne => {
                full_levels = ind_shift_levels(prev, cur, &inv_levels)?;
                let inv = invariant_graded(cur);
                inv_levels = full_levels.iter().map(|l| l.intersect(&inv)).collect();
            }
            ChainStep::Flip => {
                let fm = flip(prev, cur)?;
                let mut out = Vec::with_capacity(inv_levels.len());
                for lvl in &inv_levels {
                    let mut pieces = Vec::with_capacity(cur.top_degree() + 1);
                    for d in 0..=cur.top_degree() {
                        let img = fm.apply_subspace(d, lvl.piece(d)).ok_or_else(|| {
                            FiltrationError::ChainInvalid(
                                "a flip step met a class outside the invariant part".into(),
                            )
                        })?;
                        pieces.push(img);
                    }
                    out.push(GradedSubspace::from_pieces(pieces));
                }
                inv_levels = out;
                full_levels = inv_levels.clone();
            }
        }
    }
    let p = model.param();
    let levels = if p.m > p.n || p.m == 1 { full_levels } else { inv_levels };
    Ok(Filtration { kind: FiltrationKind::Inductive, levels })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub kind_a: String,
    pub kind_b: String,
    pub levels: usize,
    pub dims_a: Vec<Vec<usize>>,
    pub dims_b: Vec<Vec<usize>>,
    pub level_equal: Vec<bool>,
    pub all_equal: bool,
    pub first_discrepancy: Option<(usize, usize)>,
}

/// Levelwise comparison. A shorter filtration is held at its top level, so
/// two chains of different length can still agree as filtrations.
pub fn compare(a: &Filtration, b: &Filtration) -> Result<CompareReport, FiltrationError> {
    let ta = a.levels.last().unwrap();
    let tb = b.levels.last().unwrap();
    if ta.pieces().len() != tb.pieces().len() {
        return Err(FiltrationError::ModelMismatch(
            "the filtrations grade different degree ranges".into(),
        ));
    }
    for d in 0..ta.pieces().len() {
        if ta.piece(d).ambient != tb.piece(d).ambient {
            return Err(FiltrationError::ModelMismatch(format!(
                "ambient dimensions differ in degree {d}"
            )));
        }
    }
    let levels = a.num_levels().max(b.num_levels());
    let mut dims_a = Vec::with_capacity(levels);
    let mut dims_b = Vec::with_capacity(levels);
    let mut level_equal = Vec::with_capacity(levels);
    let mut first_discrepancy = None;
    for i in 0..levels {
        let la = a.level_clamped(i);
        let lb = b.level_clamped(i);
        dims_a.push(la.dims());
        dims_b.push(lb.dims());
        let mut eq = true;
        for d in 0..ta.pieces().len() {
            if la.piece(d) != lb.piece(d) {
                eq = false;
                if first_discrepancy.is_none() {
                    first_discrepancy = Some((i, d));
                }
            }
        }
        level_equal.push(eq);
    }
    let all_equal = level_equal.iter().all(|&x| x);
    Ok(CompareReport {
        kind_a: a.kind.label().to_string(),
        kind_b: b.kind.label().to_string(),
        levels,
        dims_a,
        dims_b,
        level_equal,
        all_equal,
        first_discrepancy,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrComponent {
    All,
    Super,
    Hook(usize),
    Irrep(Partition),
}

/// Character of the associated graded module: q records the weight, t the
/// level. Hook components carry the extra exponent 2 mu + 2i on a, and the
/// super series sums them.
pub fn gr_character(model: &IrrepModel, filt: &Filtration, component: &GrComponent) -> QtPolynomial {
    match component {
        GrComponent::All => {
            let mut out = QtPolynomial::zero();
            for (i, lvl) in filt.levels.iter().enumerate() {
                for d in 0..=model.top_degree() {
                    let prev = if i == 0 { 0 } else { filt.levels[i - 1].dim_at(d) };
                    let cur = lvl.dim_at(d);
                    if cur > prev {
                        out.add_term(
                            (model.weight(d), i as i64, 0),
                            BigInt::from((cur - prev) as i64),
                        );
                    }
                }
            }
            out
        }
        GrComponent::Irrep(lam) => component_series(model, filt, lam, 0),
        GrComponent::Hook(i) => {
            assert!(*i < model.param().n, "hook index out of range");
            component_series(
                model,
                filt,
                &Partition::hook(model.param().n, *i),
                (2 * model.mu() + 2 * i) as i64,
            )
        }
        GrComponent::Super => {
            let mut out = QtPolynomial::zero();
            for i in 0..model.param().n {
                out = out.add(&gr_character(model, filt, &GrComponent::Hook(i)));
            }
            out
        }
    }
}

fn component_series(
    model: &IrrepModel,
    filt: &Filtration,
    lam: &Partition,
    a: i64,
) -> QtPolynomial {
    let table = model.character_table();
    let reps: Vec<Permutation> = table.partitions.iter().map(class_representative).collect();
    let top = model.top_degree();
    let weyl: Vec<Vec<QMat>> = (0..=top)
        .map(|d| reps.iter().map(|w| model.weyl_matrix(w, d)).collect())
        .collect();
    let mut out = QtPolynomial::zero();
    let mut prev: Vec<Rational> = vec![Rational::zero(); top + 1];
    for (i, lvl) in filt.levels.iter().enumerate() {
        for d in 0..=top {
            let piece = lvl.piece(d);
            let mult = if piece.is_zero() {
                Rational::zero()
            } else {
                let traces: Vec<Rational> = weyl[d]
                    .iter()
                    .map(|w| piece.trace_restriction(w).expect("filtration level is not stable"))
                    .collect();
                table.multiplicity(lam, &traces)
            };
            let diff = mult.clone() - prev[d].clone();
            if !diff.is_zero() {
                assert!(diff.is_integer(), "graded multiplicity is not integral");
                out.add_term((model.weight(d), i as i64, a), diff.to_integer());
            }
            prev[d] = mult;
        }
    }
    out
}

/// Invariant polynomials with at least j power sum factors, as an ambient
/// subspace in degree d.
pub fn symmetric_power_span(ctx: &DunklContext, n: usize, j: usize, d: usize) -> Subspace {
    let rows: Vec<Vec<Rational>> = partitions_with_parts(d, 2, n)
        .iter()
        .filter(|lam| lam.len() >= j)
        .map(|lam| ctx.coords(&p_lambda_poly(lam, n), d))
        .collect();
    Subspace::from_rows(ctx.dim_of_degree(d), rows)
}

fn prev_kernel(prev: &IrrepModel, ambient: usize, d: usize) -> Subspace {
    if d > prev.top_degree() {
        Subspace::full(ambient)
    } else {
        prev.kernel(d).clone()
    }
}

fn lift_onto(perp: &Subspace, power: &Subspace, v: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(perp.dim() + power.dim(), v.len());
    let mut rows: Vec<Vec<Rational>> = perp.basis().to_vec();
    rows.extend(power.basis().iter().cloned());
    let b = QMat::from_rows_cols(rows, v.len());
    let x = b
        .transpose()
        .solve(v)
        .expect("the orthocomplement and the ideal power span the piece");
    let mut out = vec![Rational::zero(); v.len()];
    for (xi, row) in x.iter().take(perp.dim()).zip(perp.basis()) {
        if xi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += xi * r;
        }
    }
    out
}

/// The two pieces the window between the orthocomplements of a^j and a^{j+1}
/// splits into. The first collects orthogonal representatives of harmonic
/// multiples of the previous kernel's invariants, kept when they land in the
/// window. The second applies Dunkl differences to delta times the invariant
/// window classes orthogonal to the previous kernel. Inside the window the
/// second piece is the orthocomplement of the first.
pub fn s_spaces(
    model: &IrrepModel,
    prev: &IrrepModel,
    j: usize,
) -> Result<(GradedSubspace, GradedSubspace), FiltrationError> {
    let expected = model
        .param()
        .minus_one()
        .ok_or_else(|| FiltrationError::ModelMismatch("the shift construction needs c > 1".into()))?;
    if &expected != prev.param() {
        return Err(FiltrationError::ModelMismatch(format!(
            "expected the model at {}/{} one step below {}/{}",
            expected.m,
            expected.n,
            model.param().m,
            model.param().n
        )));
    }
    let ctx = model.context();
    let n = model.param().n;
    let top = model.top_degree();
    let dims = model.graded_dims();
    let harm = model.harmonics()?;
    let power_hi = a_power(model, j + 1);
    let perp_hi = ortho_complement(model, &power_hi);
    let power_lo = a_power(model, j);
    let mut rows_ideal: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); top + 1];
    for dpsi in 0..=top {
        let invs = symmetric_power_span(ctx, n, 0, dpsi);
        if invs.is_zero() {
            continue;
        }
        let pool = prev_kernel(prev, ctx.dim_of_degree(dpsi), dpsi).intersect(&invs);
        for coords in pool.basis() {
            let psi = ctx.from_coords(dpsi, coords);
            for dh in 0..=(top - dpsi) {
                for hrow in harm.piece(dh).basis() {
                    let h = model.representative(dh, hrow);
                    let d = dh + dpsi;
                    let cls = model.class_coords(d, &(&h * &psi))?;
                    if cls.iter().all(Zero::is_zero) {
                        continue;
                    }
                    rows_ideal[d].push(cls);
                }
            }
        }
    }
    let ideal_side = GradedSubspace::from_pieces(
        rows_ideal
            .into_iter()
            .enumerate()
            .map(|(d, r)| {
                let lifted: Vec<Vec<Rational>> = r
                    .into_iter()
                    .map(|v| lift_onto(perp_hi.piece(d), power_hi.piece(d), &v))
                    .collect();
                Subspace::from_rows(dims[d], lifted).intersect(power_lo.piece(d))
            })
            .collect(),
    );
    let delta = vandermonde_z(n);
    let ddeg = n * (n - 1) / 2;
    let zn = ctx.z_arity();
    let mut acc: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
    for d in 0..=top.saturating_sub(ddeg) {
        let w = perp_hi
            .piece(d)
            .intersect(power_lo.piece(d))
            .intersect(&model.invariant_classes(d));
        if w.is_zero() {
            continue;
        }
        let kcls: Vec<Vec<Rational>> = prev_kernel(prev, ctx.dim_of_degree(d), d)
            .basis()
            .iter()
            .map(|row| model.class_of_ambient(d, row))
            .collect();
        let kcls = Subspace::from_rows(model.dim_at(d), kcls);
        let pool = w.intersect(&kcls.perp(model.quotient_gram(d)));
        for v in pool.basis() {
            let rep = model.representative(d, v);
            let cls = model.class_coords(d + ddeg, &(&rep * &delta))?;
            acc[d + ddeg] = acc[d + ddeg].sum(&Subspace::from_rows(dims[d + ddeg], vec![cls]));
        }
    }
    let mut frontier = acc.clone();
    let mut alive = true;
    while alive {
        alive = false;
        let mut next: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
        for d in 1..=top {
            if frontier[d].is_zero() {
                continue;
            }
            for k in 0..zn {
                let img = frontier[d].apply(model.diff_quotient_matrix(d, k));
                let grown = acc[d - 1].sum(&img);
                if grown.dim() > acc[d - 1].dim() {
                    next[d - 1] = next[d - 1].sum(&img);
                    acc[d - 1] = grown;
                    alive = true;
                }
            }
        }
        frontier = next;
    }
    let perp_side = GradedSubspace::from_pieces(
        acc.into_iter()
            .enumerate()
            .map(|(d, s)| s.intersect(perp_hi.piece(d)).intersect(power_lo.piece(d)))
            .collect(),
    );
    Ok((ideal_side, perp_side))
}

#[derive(Debug, Clone, Serialize)]
pub struct DropReport {
    pub levels: usize,
    pub checked: usize,
    pub holds: bool,
    pub failures: Vec<(usize, usize, usize)>,
}

/// For c < 1, each Dunkl difference sends the invariant classes of level ell
/// of the power filtration into level ell - 1. The drop is a statement about
/// the spherical part: classes outside the invariant isotype can stay at
/// their level, and the invariant images at level zero vanish outright.
pub fn c_less_one_levels(model: &IrrepModel) -> Result<DropReport, FiltrationError> {
    let p = model.param();
    if p.m >= p.n {
        return Err(FiltrationError::ModelMismatch(format!(
            "the level drop needs c < 1, got {}/{}",
            p.m, p.n
        )));
    }
    let nlev = a_nilpotence(model);
    let top = model.top_degree();
    let zn = model.context().z_arity();
    let mut pre: Vec<GradedSubspace> = Vec::with_capacity(nlev);
    for ell in 0..nlev {
        pre.push(ortho_complement(model, &a_power(model, ell + 1)));
    }
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for ell in 1..nlev {
        for d in 1..=top {
            let piece = pre[ell].piece(d).intersect(&model.invariant_classes(d));
            if piece.is_zero() {
                continue;
            }
            for k in 0..zn {
                for phi in piece.basis() {
                    let img = model.diff_quotient_matrix(d, k).mul_row_vec(phi);
                    checked += 1;
                    if img.iter().all(Zero::is_zero) {
                        continue;
                    }
                    if !pre[ell - 1].piece(d - 1).contains(&img) {
                        failures.push((ell, d, k));
                    }
                }
            }
        }
    }
    Ok(DropReport { levels: nlev, checked, holds: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{monomials_of_degree, q};

    fn model(m: usize, n: usize) -> IrrepModel {
        IrrepModel::build_mn(m, n).unwrap()
    }

    #[test]
    fn power_ideal_dimensions() {
        let md = model(4, 3);
        assert_eq!(a_power(&md, 0), GradedSubspace::full(md.graded_dims()));
        assert_eq!(a_power(&md, 1).total_dim(), 10);
        assert_eq!(a_nilpotence(&md), 4);
        assert!(a_power(&md, 4).is_zero());
        assert!(!a_power(&md, 3).is_zero());
        for j in 0..4 {
            assert!(a_power(&md, j).contains_space(&a_power(&md, j + 1)));
        }
    }

    #[test]
    fn orthocomplement_involution() {
        let md = model(4, 3);
        assert_eq!(ortho_complement(&md, &a_power(&md, 1)), md.harmonics().unwrap());
        for j in 0..=4 {
            let aj = a_power(&md, j);
            let perp = ortho_complement(&md, &aj);
            for d in 0..=md.top_degree() {
                assert_eq!(aj.dim_at(d) + perp.dim_at(d), md.dim_at(d), "j {j} degree {d}");
            }
            assert_eq!(ortho_complement(&md, &perp), aj);
        }
    }

    #[test]
    fn annihilator_matches_orthocomplement() {
        let md = model(4, 3);
        for j in 0..=4 {
            assert_eq!(
                annihilator_space(&md, j),
                ortho_complement(&md, &a_power(&md, j)),
                "j {j}"
            );
        }
        let p3 = md.class_coords(3, &power_sum_z(3, 3)).unwrap();
        assert!(annihilator_space(&md, 2).piece(3).contains(&p3));
        assert!(!md.harmonics().unwrap().piece(3).contains(&p3));
    }

    #[test]
    fn power_filtration_profiles() {
        let md = model(4, 3);
        let f = filtration_a(&md);
        assert_eq!(f.kind(), FiltrationKind::Power);
        assert!(f.is_ascending());
        assert_eq!(f.cumulative_dims(), vec![6, 12, 15, 16]);
        assert_eq!(f.level(0).dims(), vec![0, 0, 0, 1, 2, 2, 1]);
        let f32 = filtration_a(&model(3, 2));
        assert_eq!(f32.cumulative_dims(), vec![2, 3]);
        assert_eq!(f32.level(0).dims(), vec![0, 1, 1]);
        let f53 = filtration_a(&model(5, 3));
        assert_eq!(f53.cumulative_dims(), vec![6, 15, 21, 24, 25]);
    }

    #[test]
    fn kazhdan_cutoffs_on_a_single_level() {
        let md = model(4, 3);
        let triv = Filtration::from_levels(
            FiltrationKind::Power,
            vec![GradedSubspace::full(md.graded_dims())],
        );
        let k = kazhdan(&md, &triv);
        for (i, lvl) in k.levels().iter().enumerate() {
            for d in 0..=md.top_degree() {
                let expect = if md.weight(d) <= i as i64 { md.dim_at(d) } else { 0 };
                assert_eq!(lvl.dim_at(d), expect, "level {i} degree {d}");
            }
        }
        assert_eq!(k.num_levels(), md.mu() + 1);
    }

    #[test]
    fn algebraic_filtration_profiles() {
        let md = model(4, 3);
        let alg = kazhdan(&md, &filtration_a(&md));
        assert_eq!(alg.kind(), FiltrationKind::Algebraic);
        assert_eq!(alg.cumulative_dims(), vec![1, 5, 12, 16]);
        let (dd, dcls) = md.delta_class();
        assert_eq!(alg.level(0).total_dim(), 1);
        assert!(alg.level(0).piece(dd).contains(&dcls));
        let md53 = model(5, 3);
        let alg53 = kazhdan(&md53, &filtration_a(&md53));
        assert_eq!(alg53.cumulative_dims(), vec![0, 2, 10, 20, 25]);
    }

    #[test]
    fn alg_prime_matches_the_kazhdan_construction() {
        for (m, n) in [(4usize, 3usize), (5, 3), (5, 2), (3, 2)] {
            let md = model(m, n);
            let alg = kazhdan(&md, &filtration_a(&md));
            let prime = filtration_alg_prime(&md);
            let rep = compare(&alg, &prime).unwrap();
            assert!(rep.all_equal, "({m},{n}): {:?}", rep.first_discrepancy);
        }
    }

    #[test]
    fn fraction_chain_follows_euclid() {
        let chain = FractionChain::new(&CherednikParam::new(13, 5).unwrap()).unwrap();
        let mn: Vec<(usize, usize)> = chain.params().iter().map(|p| (p.m, p.n)).collect();
        assert_eq!(mn, vec![(1, 2), (3, 2), (2, 3), (5, 3), (3, 5), (8, 5), (13, 5)]);
        assert_eq!(
            chain.steps(),
            &[
                ChainStep::AddOne,
                ChainStep::Flip,
                ChainStep::AddOne,
                ChainStep::Flip,
                ChainStep::AddOne,
                ChainStep::AddOne,
            ]
        );
        assert_eq!((chain.base().m, chain.base().n), (1, 2));
        assert_eq!((chain.target().m, chain.target().n), (13, 5));
        let single = FractionChain::new(&CherednikParam::new(1, 4).unwrap()).unwrap();
        assert_eq!(single.params().len(), 1);
        assert!(single.steps().is_empty());
    }

    #[test]
    fn shift_lift_lands_on_delta_multiples() {
        let cur = model(4, 3);
        let prev = model(1, 3);
        let (d, cls) = shift_lift(&prev, &cur, 0, &[q(1)]).unwrap();
        let (dd, dcls) = cur.delta_class();
        assert_eq!(d, dd);
        assert_eq!(cls, dcls);
        // invariants inside the previous kernel die after the shift
        let dead2 = cur.class_coords(5, &(&vandermonde_z(3) * &power_sum_z(2, 3))).unwrap();
        assert!(dead2.iter().all(|x| x.is_zero()));
        let dead3 = cur.class_coords(6, &(&vandermonde_z(3) * &power_sum_z(3, 3))).unwrap();
        assert!(dead3.iter().all(|x| x.is_zero()));
        let cur53 = model(5, 3);
        let prev23 = model(2, 3);
        assert!(matches!(
            shift_lift(&prev23, &cur53, 1, &[q(1), q(0)]),
            Err(FiltrationError::NotInvariant)
        ));
        assert!(matches!(
            shift_lift(&prev23, &cur, 0, &[q(1)]),
            Err(FiltrationError::ModelMismatch(_))
        ));
        let p2 = prev23.class_coords(2, &power_sum_z(2, 3)).unwrap();
        let (d5, cls5) = shift_lift(&prev23, &cur53, 2, &p2).unwrap();
        assert_eq!(d5, 5);
        assert!(!cls5.iter().all(|x| x.is_zero()));
        // sign isotypic dimensions of the big module match the invariant
        // dimensions of the small one, shifted by the Vandermonde degree
        let sgn = Partition::new(vec![1, 1, 1]);
        for d in 0..=cur53.top_degree() - 3 {
            let lhs = cur53.isotypic_multiplicity(&sgn, d + 3);
            let rhs = if d <= prev23.top_degree() {
                prev23.invariant_classes(d).dim()
            } else {
                0
            };
            assert_eq!(lhs, q(rhs as i64), "degree {d}");
        }
    }

    #[test]
    fn flip_transports_the_invariant_part() {
        let a = model(4, 3);
        let b = model(3, 4);
        let fm = flip(&a, &b).unwrap();
        let mut total = 0;
        for d in 0..=a.top_degree() {
            let ia = a.invariant_classes(d);
            let ib = b.invariant_classes(d);
            assert_eq!(ia.dim(), ib.dim(), "degree {d}");
            total += ia.dim();
            assert_eq!(fm.apply_subspace(d, &ia).unwrap(), ib, "degree {d}");
        }
        assert_eq!(total, 5);
        fn scalar_ratio(w: &[Rational], u: &[Rational]) -> Rational {
            let i = u.iter().position(|x| !x.is_zero()).unwrap();
            let r = &w[i] / &u[i];
            assert!(!r.is_zero());
            for (wi, ui) in w.iter().zip(u) {
                assert_eq!(wi, &(&r * ui));
            }
            r
        }
        // each power sum goes to a multiple of its mirror image, and the
        // degree six relations on the two sides pin the combination of the
        // two scalars while products of power sums pick up products
        let w2 = fm.apply(2, &a.class_coords(2, &power_sum_z(2, 3)).unwrap()).unwrap();
        let a2 = scalar_ratio(&w2, &b.class_coords(2, &power_sum_z(2, 4)).unwrap());
        let w3 = fm.apply(3, &a.class_coords(3, &power_sum_z(3, 3)).unwrap()).unwrap();
        let a3 = scalar_ratio(&w3, &b.class_coords(3, &power_sum_z(3, 4)).unwrap());
        assert_eq!(a2.pow(3), a3.pow(2) * q(3) / q(4));
        let p22 = &power_sum_z(2, 3) * &power_sum_z(2, 3);
        let w4 = fm.apply(4, &a.class_coords(4, &p22).unwrap()).unwrap();
        let p22b = &power_sum_z(2, 4) * &power_sum_z(2, 4);
        assert_eq!(scalar_ratio(&w4, &b.class_coords(4, &p22b).unwrap()), a2.pow(2));
        // the reverse map undoes the transport
        let back = flip(&b, &a).unwrap();
        for d in 0..=a.top_degree() {
            for row in a.invariant_classes(d).basis() {
                let there = fm.apply(d, row).unwrap();
                assert_eq!(&back.apply(d, &there).unwrap(), row);
            }
        }
        assert!(fm.apply(1, &[q(1), q(0)]).is_none());
        let mut small = 0;
        let f2 = flip(&model(3, 2), &model(2, 3)).unwrap();
        for d in 0..=2 {
            let inv = model(3, 2).invariant_classes(d);
            small += inv.dim();
            let _ = f2.apply_subspace(d, &inv).unwrap();
        }
        assert_eq!(small, 2);
    }

    #[test]
    fn inductive_equals_power_for_c_above_one() {
        let md = model(4, 3);
        let find = filtration_ind(&md).unwrap();
        assert_eq!(find.kind(), FiltrationKind::Inductive);
        let rep = compare(&find, &filtration_a(&md)).unwrap();
        assert!(rep.all_equal, "{:?}", rep.first_discrepancy);
        // the degree three power sum shows up exactly at level one
        let p3 = md.class_coords(3, &power_sum_z(3, 3)).unwrap();
        assert_eq!(find.level_of(3, &p3), Some(1));
        let md52 = model(5, 2);
        let rep52 = compare(&filtration_ind(&md52).unwrap(), &filtration_a(&md52)).unwrap();
        assert!(rep52.all_equal, "{:?}", rep52.first_discrepancy);
    }

    #[test]
    fn inductive_on_the_invariant_part_for_small_c() {
        let md = model(2, 3);
        let find = filtration_ind(&md).unwrap();
        assert_eq!(find.num_levels(), 2);
        let inv = invariant_graded(&md);
        for lvl in find.levels() {
            assert!(inv.contains_space(lvl));
        }
        let fa = filtration_a(&md);
        let restricted: Vec<GradedSubspace> =
            fa.levels().iter().map(|l| l.intersect(&inv)).collect();
        for (i, lvl) in find.levels().iter().enumerate() {
            assert_eq!(lvl, &restricted[i.min(restricted.len() - 1)], "level {i}");
        }
    }

    #[test]
    fn inductive_prime_is_the_kazhdan_companion() {
        let md = model(4, 3);
        let prime = kazhdan(&md, &filtration_ind(&md).unwrap());
        assert_eq!(prime.kind(), FiltrationKind::InductivePrime);
        let alg = kazhdan(&md, &filtration_a(&md));
        assert!(compare(&prime, &alg).unwrap().all_equal);
    }

    #[test]
    fn raising_and_lowering_shift_levels_by_one() {
        for (m, n) in [(4usize, 3usize), (2, 3)] {
            let md = model(m, n);
            let fa = filtration_a(&md);
            let zero = GradedSubspace::zero(md.graded_dims());
            for (i, lvl) in fa.levels().iter().enumerate() {
                let up = graded_apply_f(&md, lvl);
                let bound = fa.level_clamped(i + 1);
                assert!(bound.contains_space(&up), "({m},{n}) f at level {i}");
                let down = graded_apply_e(&md, lvl);
                let target = if i == 0 { &zero } else { fa.level(i - 1) };
                assert!(target.contains_space(&down), "({m},{n}) e at level {i}");
            }
        }
    }

    #[test]
    fn sl2_and_fourier_preserve_the_kazhdan_levels() {
        let md = model(4, 3);
        let alg = kazhdan(&md, &filtration_a(&md));
        for lvl in alg.levels() {
            assert!(lvl.contains_space(&graded_apply_e(&md, lvl)));
            assert!(lvl.contains_space(&graded_apply_f(&md, lvl)));
            assert_eq!(&graded_fourier(&md, lvl), lvl);
        }
    }

    #[test]
    fn highest_weight_strings_track_levels() {
        let md = model(4, 3);
        let fa = filtration_a(&md);
        let alg = kazhdan(&md, &fa);
        let harm = md.harmonics().unwrap();
        for dh in 0..=3usize {
            for row in harm.piece(dh).basis() {
                let start = 2 * md.mu() - dh;
                let v0 = md.fourier_matrix(dh).mul_row_vec(row);
                assert_eq!(fa.level_of(start, &v0), Some(0));
                let alg_level = alg.level_of(start, &v0);
                assert!(alg_level.is_some());
                let mut v = v0;
                let mut d = start;
                let mut i = 0usize;
                while d >= 2 {
                    let next = md.f_matrix(d).mul_row_vec(&v);
                    if next.iter().all(|x| x.is_zero()) {
                        break;
                    }
                    d -= 2;
                    i += 1;
                    v = next;
                    assert_eq!(fa.level_of(d, &v), Some(i), "degree {d}");
                    assert_eq!(alg.level_of(d, &v), alg_level, "degree {d}");
                }
                // the string closes exactly at the mirrored degree
                assert_eq!(d, dh);
            }
        }
    }

    #[test]
    fn euler_field_and_delta_stay_in_the_window() {
        for (m, n) in [(4usize, 3usize), (5, 3)] {
            let md = model(m, n);
            let inv = invariant_graded(&md);
            let nil = a_nilpotence(&md);
            for j in 0..=nil {
                let perp_hi = ortho_complement(&md, &a_power(&md, j + 1));
                let perp_lo = ortho_complement(&md, &a_power(&md, j));
                let inv_hi = perp_hi.intersect(&inv);
                for k in 0..n - 1 {
                    assert!(
                        perp_lo.contains_space(&graded_apply_diff(&md, &inv_hi, k)),
                        "({m},{n}) j {j} k {k}"
                    );
                }
                // Vandermonde multiples of invariant window classes stay put
                for d in 0..=md.top_degree() {
                    let t = d + n * (n - 1) / 2;
                    if t > md.top_degree() {
                        continue;
                    }
                    let piece = perp_lo.piece(d).intersect(&md.invariant_classes(d));
                    for row in piece.basis() {
                        let rep = md.representative(d, row);
                        let cls = md.class_coords(t, &(&vandermonde_z(n) * &rep)).unwrap();
                        assert!(perp_lo.piece(t).contains(&cls), "({m},{n}) j {j} degree {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_recursion_across_the_shift() {
        for (m, n) in [(4usize, 3usize), (5, 3)] {
            let param = CherednikParam::new(m, n).unwrap();
            let shift = n * (n - 1) / 2;
            let ctx_c = DunklContext::new(n, param.c(), 2 * shift + 6);
            let ctx_p = DunklContext::new(n, param.c() - q(1), 3);
            let delta = vandermonde_z(n);
            let dd = ctx_c.pairing(&delta, &delta);
            assert!(!dd.is_zero());
            for d in 0..=3usize {
                for lam in partitions_with_parts(d, 2, n) {
                    for mu in partitions_with_parts(d, 2, n) {
                        let psi = p_lambda_poly(&lam, n);
                        let eta = p_lambda_poly(&mu, n);
                        let lhs = ctx_c.pairing(&(&delta * &psi), &(&delta * &eta));
                        let rhs = dd.clone() * ctx_p.pairing(&psi, &eta);
                        assert_eq!(lhs, rhs, "({m},{n}) {lam:?} {mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn s_spaces_pin_the_kernel_pieces() {
        let md = model(4, 3);
        let prev = model(1, 3);
        let (s0, s0p) = s_spaces(&md, &prev, 0).unwrap();
        assert!(s0.is_zero());
        assert_eq!(s0p, md.harmonics().unwrap());
        let (s1, _) = s_spaces(&md, &prev, 1).unwrap();
        let p3 = md.class_coords(3, &power_sum_z(3, 3)).unwrap();
        assert!(s1.piece(3).contains(&p3));
        for j in 0..=2usize {
            let (sj, sjp) = s_spaces(&md, &prev, j).unwrap();
            let window = ortho_complement(&md, &a_power(&md, j + 1)).intersect(&a_power(&md, j));
            assert_eq!(sj.sum(&sjp), window, "window j {j}");
            assert_eq!(sjp, sj.perp(&md).intersect(&window), "perp j {j}");
        }
        let (s9, s9p) = s_spaces(&md, &prev, 9).unwrap();
        assert!(s9.is_zero() && s9p.is_zero());
        assert!(matches!(
            s_spaces(&model(5, 3), &prev, 1),
            Err(FiltrationError::ModelMismatch(_))
        ));
        // with a nontrivial previous kernel the same decomposition holds
        let md53 = model(5, 3);
        let prev23 = model(2, 3);
        for j in 0..=2usize {
            let (sj, sjp) = s_spaces(&md53, &prev23, j).unwrap();
            let window =
                ortho_complement(&md53, &a_power(&md53, j + 1)).intersect(&a_power(&md53, j));
            assert_eq!(sj.sum(&sjp), window, "(5,3) window j {j}");
            assert_eq!(sjp, sj.perp(&md53).intersect(&window), "(5,3) perp j {j}");
        }
    }

    #[test]
    fn proposition_equivalence_spot_check() {
        let md = model(5, 3);
        let prev = model(2, 3);
        let j = 1usize;
        let (sj, _) = s_spaces(&md, &prev, j).unwrap();
        let perp_j = ortho_complement(&md, &a_power(&md, j));
        let power_j = a_power(&md, j);
        let dims = md.graded_dims();
        let zn = md.context().z_arity();
        // the coordinate multiples of the smaller orthocomplement
        let mut pieces: Vec<Subspace> = dims.iter().map(|&x| Subspace::zero(x)).collect();
        for d in 0..md.top_degree() {
            let p = perp_j.piece(d);
            if p.is_zero() {
                continue;
            }
            for k in 0..zn {
                pieces[d + 1] = pieces[d + 1].sum(&p.apply(md.zmul_matrix(d, k)));
            }
        }
        let xspan = GradedSubspace::from_pieces(pieces);
        let xperp = xspan.perp(&md);
        // the adjunction between coordinate multiplication and the Dunkl
        // differences identifies the perp of those multiples with the classes
        // whose differences all drop into the ideal power
        for d in 0..dims.len() {
            let drop = if d == 0 {
                Subspace::full(dims[0])
            } else {
                let rows: Vec<Vec<Rational>> = (0..dims[d])
                    .map(|i| {
                        let mut e = vec![q(0); dims[d]];
                        e[i] = q(1);
                        let mut row = Vec::new();
                        for k in 0..zn {
                            let img = md.diff_quotient_matrix(d, k).mul_row_vec(&e);
                            row.extend(power_j.piece(d - 1).reduce(&img));
                        }
                        row
                    })
                    .collect();
                QMat::from_rows_cols(rows, zn * dims[d - 1])
                    .transpose()
                    .nullspace()
            };
            assert_eq!(xperp.piece(d), &drop, "degree {d}");
        }
        // nothing in the product space meets that perp, while the stronger
        // claim that all its differences stay inside the orthocomplement
        // fails here on classes with nonzero Fourier images
        assert!(sj.intersect(&xperp).is_zero());
        let mut escapes = 0usize;
        for d in 1..=md.top_degree() {
            for phi in sj.piece(d).basis() {
                for k in 0..zn {
                    let img = md.diff_quotient_matrix(d, k).mul_row_vec(phi);
                    if !img.iter().all(|x| x.is_zero()) && !perp_j.piece(d - 1).contains(&img) {
                        escapes += 1;
                        let f = md.fourier_matrix(d).mul_row_vec(phi);
                        assert!(!f.iter().all(|x| x.is_zero()));
                    }
                }
            }
        }
        assert!(escapes > 0);
    }

    #[test]
    fn dunkl_differences_drop_levels_below_one() {
        for (m, n) in [(2usize, 3usize), (3, 4)] {
            let md = model(m, n);
            let rep = c_less_one_levels(&md).unwrap();
            assert!(rep.holds, "({m},{n}): {:?}", rep.failures);
            assert!(rep.checked > 0);
        }
        let md23 = model(2, 3);
        assert_eq!(c_less_one_levels(&md23).unwrap().levels, 2);
        assert!(matches!(c_less_one_levels(&model(3, 2)), Err(FiltrationError::ModelMismatch(_))));
        // at level zero the images genuinely escape, so the bound is sharp
        let h = ortho_complement(&md23, &a_power(&md23, 1));
        let mut escaped = false;
        for d in 1..=md23.top_degree() {
            for k in 0..2 {
                if !h.piece(d).apply(md23.diff_quotient_matrix(d, k)).is_zero() {
                    escaped = true;
                }
            }
        }
        assert!(escaped);
        // and outside the invariant isotype the drop can fail outright, so
        // the restriction in the statement is doing real work
        let md34 = model(3, 4);
        let hi = ortho_complement(&md34, &a_power(&md34, 2));
        let lo = ortho_complement(&md34, &a_power(&md34, 1));
        let mut leaves = false;
        'witness: for d in 1..=md34.top_degree() {
            for k in 0..md34.context().z_arity() {
                for phi in hi.piece(d).basis() {
                    let img = md34.diff_quotient_matrix(d, k).mul_row_vec(phi);
                    if !img.iter().all(|x| x.is_zero()) && !lo.piece(d - 1).contains(&img) {
                        leaves = true;
                        break 'witness;
                    }
                }
            }
        }
        assert!(leaves);
    }

    #[test]
    fn graded_character_of_the_associated_graded() {
        let md = model(4, 3);
        let fa = filtration_a(&md);
        let all = gr_character(&md, &fa, &GrComponent::All);
        assert_eq!(all.specialize_all_one(), BigInt::from(16));
        let weights = all.specialize_t_one();
        for (d, expect) in [1i64, 2, 3, 4, 3, 2, 1].iter().enumerate() {
            assert_eq!(weights.coefficient(d as i64 - 3, 0, 0), BigInt::from(*expect));
        }
        let triv = gr_character(&md, &fa, &GrComponent::Irrep(Partition::new(vec![3])));
        assert_eq!(triv.num_terms(), 5);
        for (w, l) in [(3i64, 0i64), (1, 1), (0, 1), (-1, 2), (-3, 3)] {
            assert_eq!(triv.coefficient(w, l, 0), BigInt::from(1), "({w},{l})");
        }
        let h0 = gr_character(&md, &fa, &GrComponent::Hook(0));
        assert_eq!(h0.num_terms(), 5);
        for (w, l) in [(3i64, 0i64), (1, 1), (0, 1), (-1, 2), (-3, 3)] {
            assert_eq!(h0.coefficient(w, l, 6), BigInt::from(1), "({w},{l})");
        }
        let sup = gr_character(&md, &fa, &GrComponent::Super);
        assert_eq!(sup.specialize_all_one(), BigInt::from(11));
        for (exp, _) in sup.terms() {
            assert!(matches!(exp.2, 6 | 8 | 10), "a exponent {}", exp.2);
        }
    }

    #[test]
    fn compare_reports_the_first_discrepancy() {
        let md = model(4, 3);
        let fa = filtration_a(&md);
        let selfcmp = compare(&fa, &fa).unwrap();
        assert!(selfcmp.all_equal);
        assert!(selfcmp.first_discrepancy.is_none());
        let alg = kazhdan(&md, &fa);
        let rep = compare(&fa, &alg).unwrap();
        assert!(!rep.all_equal);
        assert_eq!(rep.first_discrepancy, Some((0, 4)));
        assert_eq!(rep.levels, 4);
        assert_eq!(rep.dims_a[0], vec![0, 0, 0, 1, 2, 2, 1]);
        assert!(matches!(
            compare(&fa, &filtration_a(&model(3, 2))),
            Err(FiltrationError::ModelMismatch(_))
        ));
    }

    #[test]
    fn filtration_doc_round_trips() {
        let md = model(3, 2);
        let fa = filtration_a(&md);
        let doc = fa.to_doc(&md);
        assert_eq!(doc.kind, "a");
        assert_eq!(doc.levels, 2);
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        let json = serde_json::to_string(&doc).unwrap();
        let back: FiltrationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rows.len(), doc.rows.len());
        assert_eq!(back.m, 3);
    }

    #[test]
    fn symmetric_power_span_is_the_invariant_ideal_layer() {
        let md = model(4, 3);
        let ctx = md.context();
        let n = 3;
        for j in 1..=2usize {
            for d in 0..=md.top_degree() {
                let mut rows = Vec::new();
                for k in (2 * j)..=d {
                    for lam in partitions_with_parts(k, 2, n) {
                        if lam.len() != j {
                            continue;
                        }
                        let base = p_lambda_poly(&lam, n);
                        for mono in monomials_of_degree(ctx.z_arity(), d - k) {
                            rows.push(ctx.coords(&(&base * &Poly::monomial(mono, q(1))), d));
                        }
                    }
                }
                let ideal = Subspace::from_rows(ctx.dim_of_degree(d), rows);
                let inv_rows: Vec<Vec<Rational>> = partitions_with_parts(d, 2, n)
                    .iter()
                    .map(|lam| ctx.coords(&p_lambda_poly(lam, n), d))
                    .collect();
                let inv = Subspace::from_rows(ctx.dim_of_degree(d), inv_rows);
                assert_eq!(
                    ideal.intersect(&inv),
                    symmetric_power_span(ctx, n, j, d),
                    "j {j} degree {d}"
                );
            }
        }
    }
}
