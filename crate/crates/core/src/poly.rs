//! Sparse multivariate polynomials with exact rational coefficients.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = num_rational::BigRational;

/// Integer rational constructor.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Ratio constructor, panics on zero denominator.
pub fn q_ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// Exponent vector; the variable count is its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(i: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

/// Graded lexicographic order: total degree first, then exponents from the left.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(Rational::one(), arity)
    }

    pub fn constant(c: Rational, arity: usize) -> Self {
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity);
        let mut p = Poly::zero(arity);
        p.terms.insert(Monomial::var(i, arity), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let arity = m.arity();
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient_of(&Monomial::one(self.arity))
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_degree(&self) -> Result<usize, PolyError> {
        if self.is_homogeneous() {
            Ok(self.degree())
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Poly {
        let mut p = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            if m.degree() == d {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rational) {
        assert_eq!(self.arity, other.arity);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut p = Poly::zero(self.arity);
        if !s.is_zero() {
            for (m, c) in &self.terms {
                p.terms.insert(m.clone(), c * s);
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut out = Poly::one(self.arity);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        assert!(i < self.arity);
        let mut p = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] = e - 1;
                p.add_term(m2, c * q(e as i64));
            }
        }
        p
    }

    /// Leading term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Substitutes images[i] for variable i; all images share one arity.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.arity {
            return Err(PolyError::ArityMismatch(images.len(), self.arity));
        }
        let target = match images.first() {
            Some(p) => p.arity,
            None => return Ok(Poly::constant(self.constant_term(), 0)),
        };
        if images.iter().any(|p| p.arity != target) {
            return Err(PolyError::ArityMismatch(images[0].arity, target));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), target);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as usize);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn permute_vars(&self, images: &[usize]) -> Poly {
        assert_eq!(images.len(), self.arity);
        let mut p = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.arity];
            for (i, &exp) in m.0.iter().enumerate() {
                e[images[i]] = exp;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        let mut images: Vec<usize> = (0..self.arity).collect();
        images.swap(i, j);
        self.permute_vars(&images)
    }

    /// Exact division, erroring unless the remainder vanishes.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.arity != divisor.arity {
            return Err(PolyError::ArityMismatch(self.arity, divisor.arity));
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.arity);
        while let Some((lm, lc)) = rem.leading() {
            let Some(qm) = lm.try_div(dm) else {
                return Err(PolyError::NotDivisible(format!(
                    "leading term {} not divisible",
                    lm_string(lm)
                )));
            };
            let qc = lc / dc;
            quot.add_term(qm.clone(), qc.clone());
            let piece = Poly::monomial(qm, qc);
            rem = &rem - &(&piece * divisor);
        }
        Ok(quot)
    }

    /// (f - f with x_i, x_j swapped) / (x_i - x_j), computed termwise.
    pub fn divided_difference(&self, i: usize, j: usize) -> Poly {
        assert!(i != j && i < self.arity && j < self.arity);
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let (p, qe) = (m.0[i], m.0[j]);
            if p == qe {
                continue;
            }
            let (lo, hi, sign) = if p > qe { (qe, p, 1) } else { (p, qe, -1) };
            let d = (hi - lo) as i64;
            for t in 0..d {
                let mut e = m.0.clone();
                e[i] = lo + t as u16;
                e[j] = lo + (d - 1 - t) as u16;
                out.add_term(Monomial(e), c * q(sign));
            }
        }
        out
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{}", name(i), e)),
                }
            }
            let body = factors.join("*");
            let piece = if body.is_empty() {
                format!("{}", c)
            } else if c.is_one() {
                body
            } else if (-c.clone()).is_one() {
                format!("-{}", body)
            } else {
                format!("{}*{}", c, body)
            };
            parts.push(piece);
        }
        let mut s = String::new();
        for (k, piece) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(piece);
            }
        }
        s
    }
}

fn lm_string(m: &Monomial) -> String {
    format!("{:?}", m.0)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&|i| format!("x{}", i + 1)))
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = Poly::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&q(-1))
    }
}

/// All monomials of the given arity and total degree, ascending graded lex.
pub fn monomials_of_degree(arity: usize, degree: usize) -> Vec<Monomial> {
    fn rec(arity: usize, degree: usize, idx: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if idx == arity {
            if degree == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        if idx + 1 == arity {
            cur.push(degree as u16);
            rec(arity, 0, idx + 1, cur, out);
            cur.pop();
            return;
        }
        for e in 0..=degree {
            cur.push(e as u16);
            rec(arity, degree - e, idx + 1, cur, out);
            cur.pop();
        }
    }
    if arity == 0 {
        return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(arity, degree, 0, &mut cur, &mut out);
    out.sort();
    out
}
