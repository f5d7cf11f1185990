//! Symmetric group combinatorics: permutations, partitions, exact characters.

use crate::linalg::QMat;
use crate::poly::{q, q_ratio, Poly, Rational};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("symmetric group degree {0} out of supported range")]
    DegreeOutOfRange(usize),
    #[error("partition does not sum to {0}")]
    PartitionSizeMismatch(usize),
}

/// Permutation of {0, .., n-1} in one-line image notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting left to right on points: (a.compose(b))(i) = a(b(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: (0..self.n()).map(|i| self.images[other.images[i]]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        let even_cycles = ct.parts().iter().filter(|&&p| p % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// Variable substitution x_i -> x_{w(i)}.
    pub fn act(&self, f: &Poly) -> Poly {
        assert_eq!(self.n(), f.arity());
        f.permute_vars(&self.images)
    }
}

/// All n! permutations, identity first.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    out.push(Permutation { images: a.clone() });
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation { images: a.clone() });
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// A permutation with the given cycle type, built from consecutive cycles.
pub fn class_representative(lambda: &Partition) -> Permutation {
    let n = lambda.size();
    let mut images: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &part in lambda.parts() {
        for k in 0..part {
            images[start + k] = start + (k + 1) % part;
        }
        start += part;
    }
    Permutation { images }
}

/// Integer partition with parts stored in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hook(n: usize, leg: usize) -> Self {
        assert!(leg < n);
        let mut parts = vec![n - leg];
        parts.extend(std::iter::repeat(1).take(leg));
        Partition::new(parts)
    }

    /// Centralizer order of the conjugacy class with this cycle type.
    pub fn centralizer_order(&self) -> u64 {
        let mut mult: HashMap<usize, u64> = HashMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_insert(0) += 1;
        }
        let mut z = 1u64;
        for (p, m) in mult {
            z *= (p as u64).pow(m as u32);
            for k in 1..=m {
                z *= k;
            }
        }
        z
    }

    pub fn class_size(&self) -> u64 {
        factorial(self.size()) / self.centralizer_order()
    }

    /// Irreducible dimension by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.size();
        if n == 0 {
            return 1;
        }
        let rows = &self.0;
        let mut prod = 1u128;
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..r {
                let arm = r - j - 1;
                let leg = rows.iter().skip(i + 1).filter(|&&rr| rr > j).count();
                prod *= (arm + leg + 1) as u128;
            }
        }
        (factorial(n) as u128 / prod) as u64
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All partitions of n in reverse lexicographic order, [n] first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Character table of S_n with rows and columns indexed by `partitions(n)`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self, SymError> {
        if n == 0 || n > 8 {
            return Err(SymError::DegreeOutOfRange(n));
        }
        let parts = partitions(n);
        let index: HashMap<Partition, usize> =
            parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut memo = HashMap::new();
        let values = parts
            .iter()
            .map(|irrep| {
                parts
                    .iter()
                    .map(|class| mn_character(irrep, class.parts(), &mut memo))
                    .collect()
            })
            .collect();
        Ok(CharacterTable { n, partitions: parts, values, index })
    }

    pub fn value(&self, irrep: &Partition, class: &Partition) -> i64 {
        let i = self.index[irrep];
        let j = self.index[class];
        self.values[i][j]
    }

    pub fn row(&self, irrep: &Partition) -> &[i64] {
        &self.values[self.index[irrep]]
    }

    /// Multiplicity of `irrep` in a representation with the given class traces.
    /// Traces are indexed like `self.partitions`.
    pub fn multiplicity(&self, irrep: &Partition, traces: &[Rational]) -> Rational {
        assert_eq!(traces.len(), self.partitions.len());
        let row = self.row(irrep);
        let mut acc = Rational::from_integer(0.into());
        for ((chi, class), tr) in row.iter().zip(self.partitions.iter()).zip(traces) {
            acc += q(*chi) * q(class.class_size() as i64) * tr;
        }
        acc / q(factorial(self.n) as i64)
    }
}

/// Murnaghan-Nakayama value of the irreducible character.
fn mn_character(
    irrep: &Partition,
    class: &[usize],
    memo: &mut HashMap<(Partition, Vec<usize>), i64>,
) -> i64 {
    if irrep.is_empty() {
        return if class.is_empty() { 1 } else { 0 };
    }
    if class.is_empty() {
        return 0;
    }
    let key = (irrep.clone(), class.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = class[0];
    let rest = &class[1..];
    // Beta-set of the padded partition; rim hooks of size r are moves b -> b - r.
    let ell = irrep.len();
    let beta: Vec<usize> = irrep
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (ell - 1 - i))
        .collect();
    let mut total = 0i64;
    for (pos, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let crossings = beta.iter().filter(|&&x| target < x && x < b).count();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[pos] = target;
        nb.sort_unstable_by(|a, c| c.cmp(a));
        let parts: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (nb.len() - 1 - i))
            .collect();
        let sub = Partition::new(parts);
        total += sign * mn_character(&sub, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Projector onto the isotypic component, assembled from the full group action.
pub fn isotypic_projector(
    table: &CharacterTable,
    irrep: &Partition,
    act: &dyn Fn(&Permutation) -> QMat,
) -> QMat {
    let n = table.n;
    let dim_irrep = irrep.dimension() as i64;
    let order = factorial(n) as i64;
    let mut acc: Option<QMat> = None;
    for w in all_permutations(n) {
        let chi = table.value(irrep, &w.cycle_type());
        if chi == 0 {
            continue;
        }
        let m = act(&w).scale(&q(chi));
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m),
        });
    }
    acc.expect("nonempty group").scale(&q_ratio(dim_irrep, order))
}

/// k-th power sum in n variables.
pub fn power_sum(k: usize, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for i in 0..n {
        p = &p + &Poly::var(i, n).pow(k);
    }
    p
}

/// k-th elementary symmetric polynomial in n variables.
pub fn elementary(k: usize, n: usize) -> Poly {
    if k > n {
        return Poly::zero(n);
    }
    let mut out = Poly::zero(n);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut term = Poly::one(n);
        for &i in &idx {
            term = &term * &Poly::var(i, n);
        }
        out = &out + &term;
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Power sum p_k written in the variables u_i, where prod (1 - x_i z) = sum u_i z^i.
/// Variable slot i of the output stands for u_{i+1}.
pub fn power_sum_in_u(k: usize, n: usize) -> Poly {
    assert!(k >= 1);
    // p_k = -k u_k - sum_{i=1}^{k-1} u_i p_{k-i}.
    let mut table: Vec<Poly> = Vec::with_capacity(k);
    for kk in 1..=k {
        let mut acc = if kk <= n {
            Poly::var(kk - 1, n).scale(&q(-(kk as i64)))
        } else {
            Poly::zero(n)
        };
        for i in 1..kk {
            if i <= n {
                let u_i = Poly::var(i - 1, n);
                acc = &acc - &(&u_i * &table[kk - i - 1]);
            }
        }
        table.push(acc);
    }
    table.pop().unwrap()
}

/// Drops all terms of degree two or more, the reduction modulo squares of the
/// invariant ideal.
pub fn truncate_linear(f: &Poly) -> Poly {
    let mut out = Poly::zero(f.arity());
    for (m, c) in f.terms() {
        if m.degree() <= 1 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}
