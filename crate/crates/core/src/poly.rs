//! Sparse multivariate polynomials on a grid of variables `X_{si}`.
//!
//! A [`PolyRing`] fixes the variable grid, the monomial order and the
//! coefficient field. Polynomials keep their terms sorted in decreasing
//! order under the ring's monomial order and never store a zero coefficient.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Debug, Display};
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::field::Field;

/// Variable layout: `blocks` copies of an `rows x cols` grid.
///
/// Block `b`, row `s`, column `i` (all 0-based) is the flat variable
/// `b * rows * cols + s * cols + i`. A single block is the ordinary
/// polynomial ring `k[X_si]`; two or three blocks model tensor powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub blocks: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Grid {
    pub fn new(rows: usize, cols: usize) -> Self {
        Grid { blocks: 1, rows, cols }
    }

    pub fn block_size(&self) -> usize {
        self.rows * self.cols
    }

    pub fn nvars(&self) -> usize {
        self.blocks * self.block_size()
    }

    /// Same grid repeated `k` times.
    pub fn power(&self, k: usize) -> Grid {
        Grid {
            blocks: self.blocks * k,
            ..*self
        }
    }

    pub fn var(&self, block: usize, s: usize, i: usize) -> usize {
        assert!(
            block < self.blocks && s < self.rows && i < self.cols,
            "variable out of grid"
        );
        block * self.block_size() + s * self.cols + i
    }

    pub fn coords(&self, v: usize) -> (usize, usize, usize) {
        let b = v / self.block_size();
        let r = v % self.block_size();
        (b, r / self.cols, r % self.cols)
    }

    pub fn var_name(&self, v: usize) -> String {
        let (b, s, i) = self.coords(v);
        let base = if self.rows < 10 && self.cols < 10 {
            format!("X{}{}", s + 1, i + 1)
        } else {
            format!("X{}_{}", s + 1, i + 1)
        };
        if self.blocks == 1 {
            base
        } else {
            format!("{base}@{}", b + 1)
        }
    }
}

/// Dense exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: 1,
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Nonzero `(variable, exponent)` pairs in increasing variable order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (v, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u32> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps: exps.into_boxed_slice(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exponents(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Move variable `v` to `v + offset` inside a ring with `nvars` variables.
    pub fn shifted(&self, offset: usize, nvars: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        for (v, e) in self.support() {
            exps[v + offset] = e;
        }
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree,
        }
    }
}

/// Monomial order. Variables are ranked by flat index (`X11 > X12 > ... `)
/// unless an explicit ranking is given; `ranking[0]` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    LexRanked(Arc<[usize]>),
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex | MonomialOrder::LexRanked(_) => "lex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    /// The order on `k` stacked copies of a ring with `block_size` variables.
    pub fn power(&self, k: usize, block_size: usize) -> Self {
        match self {
            MonomialOrder::LexRanked(r) => {
                MonomialOrder::LexRanked((0..k).flat_map(|b| r.iter().map(move |v| v + b * block_size)).collect())
            }
            other => other.clone(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(b.exps.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::LexRanked(ranking) => {
                for &v in ranking.iter() {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

/// Polynomial ring `k[X]` over a grid, with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    pub grid: Grid,
    pub order: MonomialOrder,
    pub field: F::Desc,
}

impl<F: Field> PolyRing<F> {
    pub fn new(grid: Grid, order: MonomialOrder, field: F::Desc) -> Arc<Self> {
        if let MonomialOrder::LexRanked(r) = &order {
            let mut seen = vec![false; grid.nvars()];
            for &v in r.iter() {
                assert!(
                    v < seen.len() && !seen[v],
                    "ranking must be a permutation of the variables"
                );
                seen[v] = true;
            }
            assert!(seen.iter().all(|&s| s), "ranking must list every variable");
        }
        Arc::new(PolyRing { grid, order, field })
    }

    pub fn nvars(&self) -> usize {
        self.grid.nvars()
    }

    /// Ring on `k` copies of the variables with the induced order.
    pub fn power(&self, k: usize) -> Arc<Self> {
        PolyRing::new(
            self.grid.power(k),
            self.order.power(k, self.grid.nvars()),
            self.field.clone(),
        )
    }
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, F::one(&ring.field))
    }

    /// Flat variable `v`.
    pub fn var(ring: &Arc<PolyRing<F>>, v: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), v), F::one(&ring.field))],
        }
    }

    /// `X_{si}` in block 0, with 1-based `s` and `i`.
    pub fn x(ring: &Arc<PolyRing<F>>, s: usize, i: usize) -> Self {
        Self::var(ring, ring.grid.var(0, s - 1, i - 1))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial, c: F) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Build from arbitrary terms: combines like monomials, drops zeros, sorts.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial has the wrong number of variables");
            match acc.get_mut(&m) {
                Some(x) => *x = x.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = &ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    pub(crate) fn drop_leading(&mut self) {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Coefficient of the monomial `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| F::zero(&self.ring.field))
    }

    /// Scale so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self - c * m * other`, the elementary step of multivariate division.
    pub fn sub_mul_term(&self, other: &Self, m: &Monomial, c: &F) -> Self {
        self.assert_ring(other);
        let order = &self.ring.order;
        let scaled = other.terms.iter().map(|(t, x)| (t.mul(m), -(x.clone() * c.clone())));
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_desc(order, &self.terms, scaled),
        }
    }

    fn assert_ring(&self, other: &Self) {
        assert!(self.same_ring(other), "polynomials live in different rings");
    }

    /// Evaluate with `values[v]` substituted for variable `v` in any
    /// commutative target; `one` is the unit of the target.
    pub fn eval<T: Evaluate<F>>(&self, values: &[T], one: &T) -> T {
        assert_eq!(values.len(), self.ring.nvars(), "wrong number of values");
        let zero = one.scale(&F::zero(&self.ring.field));
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut prod = one.clone();
            for (v, e) in m.support() {
                for _ in 0..e {
                    prod = prod.mul(&values[v]);
                }
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    /// Algebra map into `target` sending variable `v` to `images[v]`.
    pub fn substitute(&self, images: &[Polynomial<F>], target: &Arc<PolyRing<F>>) -> Polynomial<F> {
        self.eval(images, &Polynomial::one(target))
    }

    /// Re-home into a ring with more variables, shifting every variable by `offset`.
    pub fn embed(&self, target: &Arc<PolyRing<F>>, offset: usize) -> Polynomial<F> {
        assert!(offset + self.ring.nvars() <= target.nvars(), "embedding out of range");
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.shifted(offset, n), c.clone()))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Variables appearing with nonzero exponent, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (v, _) in m.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(v, _)| v).collect()
    }
}

/// Merge two decreasing term lists, adding coefficients of equal monomials.
fn merge_desc<F: Field>(
    order: &MonomialOrder,
    a: &[(Monomial, F)],
    b: impl IntoIterator<Item = (Monomial, F)>,
) -> Vec<(Monomial, F)> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut ia = a.iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => out.push(ia.next().unwrap().clone()),
                Ordering::Less => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (m, c) = ia.next().unwrap().clone();
                    let (_, d) = ib.next().unwrap();
                    let s = c + d;
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            },
        }
    }
    out
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.assert_ring(rhs);
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_desc(&self.ring.order, &self.terms, rhs.terms.iter().cloned()),
        }
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.assert_ring(rhs);
        let neg = rhs.terms.iter().map(|(m, c)| (m.clone(), -c.clone()));
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_desc(&self.ring.order, &self.terms, neg),
        }
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.assert_ring(rhs);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                terms.push((m.mul(n), c.clone() * d.clone()));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Field> Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .support()
                .map(|(v, e)| {
                    let name = self.ring.grid.var_name(v);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A commutative `F`-algebra that polynomials can be evaluated in.
pub trait Evaluate<F: Field>: Clone {
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &F) -> Self;
}

impl<F: Field> Evaluate<F> for F {
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn scale(&self, c: &F) -> Self {
        self.clone() * c.clone()
    }
}

impl<F: Field> Evaluate<F> for Polynomial<F> {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &F) -> Self {
        Polynomial::scale(self, c)
    }
}
