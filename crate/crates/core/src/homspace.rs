//! Characters of the universal algebra and the Leibniz maps they encode.
//!
//! A character is stored as its matrix `d[s][i] = θ(x_si)`; the map it
//! encodes, `f(f_i) = Σ_s d_si e_s`, has the same matrix.

use std::sync::Arc;

use rayon::prelude::*;

use crate::commutative::{AlgebraElement, CommutativeAlgebra, FiniteQuotient};
use crate::error::{Error, Result};
use crate::field::{Field, FieldError, Fp};
use crate::leibniz::{current_algebra, gl, is_hom, LeibnizAlgebra, LinearMap};
use crate::linalg::Matrix;
use crate::poly::{MonomialOrder, Polynomial};
use crate::universal::Presentation;

/// Default bound on `p^(number of matrix entries)` for exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "UAL_BUDGET";

/// Upper bound on the raw candidate count of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// [`DEFAULT_BUDGET`] unless the environment variable holds a number.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    /// `p^entries`, or an error when it exceeds the budget.
    pub fn check(&self, p: u64, entries: usize) -> Result<u128> {
        let candidates = u32::try_from(entries)
            .ok()
            .and_then(|e| (p as u128).checked_pow(e))
            .unwrap_or(u128::MAX);
        if candidates > self.0 {
            Err(Error::BudgetExceeded {
                candidates,
                budget: self.0,
            })
        } else {
            Ok(candidates)
        }
    }
}

/// A field-valued point of `A(h, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character<F: Field> {
    d: Matrix<F>,
}

impl<F: Field> Character<F> {
    /// Checked against the relations of `pres`.
    pub fn new(d: Matrix<F>, pres: &Presentation<F>) -> Result<Self> {
        if verify_character(&d, pres)? {
            Ok(Character { d })
        } else {
            Err(Error::InvalidCharacter(format!(
                "{d:?} violates the universal relations"
            )))
        }
    }

    /// The counit `ε`, whose matrix is the identity (square case).
    pub fn counit(pres: &Presentation<F>) -> Result<Self> {
        if !pres.is_square() {
            return Err(Error::NotSquare);
        }
        Ok(Character {
            d: Matrix::identity(pres.h().dim(), &pres.ring().field),
        })
    }

    pub fn zero(pres: &Presentation<F>) -> Self {
        Character {
            d: Matrix::zeros(pres.h().dim(), pres.g().dim(), &pres.ring().field),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.d
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.d
    }
}

fn check_shape<F: Field>(d: &Matrix<F>, pres: &Presentation<F>) -> Result<()> {
    let (n, m) = (pres.h().dim(), pres.g().dim());
    if d.rows() != n || d.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}x{m} matrix, got {}x{}",
            d.rows(),
            d.cols()
        )));
    }
    let field = &pres.ring().field;
    if let Some(x) = d.entries().iter().find(|x| x.desc() != *field) {
        return Err(FieldError::Mismatch(F::kind(&x.desc()), F::kind(field)).into());
    }
    Ok(())
}

/// Whether every universal polynomial vanishes at `X_si = d[s][i]`.
pub fn verify_character<F: Field>(d: &Matrix<F>, pres: &Presentation<F>) -> Result<bool> {
    check_shape(d, pres)?;
    let one = F::one(&pres.ring().field);
    Ok(pres
        .universal_polys()
        .iter()
        .all(|p| p.poly.eval(d.entries(), &one).is_zero()))
}

/// The map `g → h` encoded by a character.
pub fn gamma<F: Field>(theta: &Character<F>) -> LinearMap<F> {
    theta.d.clone()
}

/// Inverse of [`gamma`] on homomorphisms `g → h`.
pub fn lift_scalar<F: Field>(f: &LinearMap<F>, pres: &Presentation<F>) -> Result<Character<F>> {
    if !is_hom(f, pres.g(), pres.h())? {
        return Err(Error::NotHomomorphism("map does not preserve brackets".into()));
    }
    Character::new(f.clone(), pres)
}

/// Matrix `d` with entries in a finite-dimensional commutative algebra `A`;
/// `entries[s * |I| + i]` is the coordinate vector of `d_si`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraValuedPoint<F: Field> {
    algebra: Arc<CommutativeAlgebra<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraElement<F>>,
}

impl<F: Field> AlgebraValuedPoint<F> {
    pub fn new(pres: &Presentation<F>, entries: Vec<AlgebraElement<F>>) -> Result<Self> {
        let (rows, cols) = (pres.h().dim(), pres.g().dim());
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("expected {} entries", rows * cols)));
        }
        let algebra = match entries.first() {
            Some(e) => e.algebra().clone(),
            None => return Err(Error::DimensionMismatch("empty point".into())),
        };
        if entries.iter().any(|e| **e.algebra() != *algebra) {
            return Err(Error::InvalidCharacter("entries live in different algebras".into()));
        }
        let point = AlgebraValuedPoint {
            algebra,
            rows,
            cols,
            entries,
        };
        if !point.satisfies(pres) {
            return Err(Error::InvalidCharacter("universal relations fail in A".into()));
        }
        Ok(point)
    }

    /// The point `X_si ↦ [x_si]` in a finite quotient of `A(h, g)`.
    pub fn generic(pres: &Presentation<F>, quotient: &FiniteQuotient<F>) -> Result<Self> {
        Self::new(pres, quotient.generators()?)
    }

    pub fn zero(pres: &Presentation<F>, algebra: &Arc<CommutativeAlgebra<F>>) -> Self {
        let (rows, cols) = (pres.h().dim(), pres.g().dim());
        AlgebraValuedPoint {
            algebra: algebra.clone(),
            rows,
            cols,
            entries: vec![AlgebraElement::zero(algebra); rows * cols],
        }
    }

    pub fn algebra(&self) -> &Arc<CommutativeAlgebra<F>> {
        &self.algebra
    }

    /// `d_si`, 0-based.
    pub fn entry(&self, s: usize, i: usize) -> &AlgebraElement<F> {
        &self.entries[s * self.cols + i]
    }

    pub fn satisfies(&self, pres: &Presentation<F>) -> bool {
        let one = AlgebraElement::one(&self.algebra);
        pres.universal_polys()
            .iter()
            .all(|p| p.poly.eval(&self.entries, &one).is_zero())
    }
}

/// The map `g → h ⊗ A`, `f(f_i) = Σ_s e_s ⊗ d_si`, on the basis of
/// [`current_algebra`] (index `s * dim A + a`).
pub fn gamma_point<F: Field>(point: &AlgebraValuedPoint<F>) -> LinearMap<F> {
    let m = point.algebra.dim();
    let field = point.algebra.field();
    let mut f = Matrix::zeros(point.rows * m, point.cols, field);
    for s in 0..point.rows {
        for i in 0..point.cols {
            for (a, c) in point.entry(s, i).coords().iter().enumerate() {
                f.set(s * m + a, i, c.clone());
            }
        }
    }
    f
}

/// Inverse of [`gamma_point`] on homomorphisms `g → h ⊗ A`.
pub fn lift<F: Field>(
    f: &LinearMap<F>,
    pres: &Presentation<F>,
    algebra: &Arc<CommutativeAlgebra<F>>,
) -> Result<AlgebraValuedPoint<F>> {
    let current = current_algebra(pres.h(), algebra)?;
    if !is_hom(f, pres.g(), &current)? {
        return Err(Error::NotHomomorphism("map does not preserve brackets in h ⊗ A".into()));
    }
    let m = algebra.dim();
    let (rows, cols) = (pres.h().dim(), pres.g().dim());
    let mut entries = Vec::with_capacity(rows * cols);
    for s in 0..rows {
        for i in 0..cols {
            let coords = (0..m).map(|a| f.get(s * m + a, i).clone()).collect();
            entries.push(AlgebraElement::new(algebra, coords));
        }
    }
    AlgebraValuedPoint::new(pres, entries)
}

/// A polynomial flattened to `(coefficient, [(variable, exponent)])` for
/// repeated evaluation.
struct Compiled<F: Field> {
    terms: Vec<(F, Vec<(usize, u32)>)>,
}

impl<F: Field> Compiled<F> {
    fn new(p: &Polynomial<F>) -> Self {
        Compiled {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (c.clone(), m.support().collect()))
                .collect(),
        }
    }

    fn vanishes(&self, values: &[F], zero: &F) -> bool {
        let mut acc = zero.clone();
        for (c, vars) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in vars {
                for _ in 0..e {
                    t = t * values[v].clone();
                }
            }
            acc = acc + t;
        }
        acc.is_zero()
    }
}

/// Relations grouped by their highest variable, so each is tested as soon
/// as all of its variables are assigned.
struct Search<'a, F: Field> {
    elements: &'a [F],
    checks: Vec<Vec<Compiled<F>>>,
    zero: F,
}

impl<F: Field> Search<'_, F> {
    fn consistent(&self, values: &[F], v: usize) -> bool {
        self.checks[v].iter().all(|c| c.vanishes(values, &self.zero))
    }

    fn extend(&self, values: &mut Vec<F>, stop: usize, out: &mut Vec<Vec<F>>) {
        let v = values.len();
        if v == stop {
            out.push(values.clone());
            return;
        }
        for x in self.elements {
            values.push(x.clone());
            if self.consistent(values, v) {
                self.extend(values, stop, out);
            }
            values.pop();
        }
    }
}

/// All matrices over `elements` satisfying the relations of `pres`, in
/// row-major lexicographic order of `elements`.
fn search<F: Field>(pres: &Presentation<F>, elements: &[F]) -> Vec<Matrix<F>> {
    let (n, m) = (pres.h().dim(), pres.g().dim());
    let nv = n * m;
    let mut checks: Vec<Vec<Compiled<F>>> = (0..nv).map(|_| Vec::new()).collect();
    let zero = F::zero(&pres.ring().field);
    let mut constant_failure = false;
    for p in pres.universal_polys() {
        if p.poly.is_zero() {
            continue;
        }
        match p.poly.variables().last() {
            Some(&v) => checks[v].push(Compiled::new(&p.poly)),
            None => constant_failure = true,
        }
    }
    if constant_failure {
        return Vec::new();
    }
    let search = Search { elements, checks, zero };
    let mut prefixes = Vec::new();
    search.extend(&mut Vec::with_capacity(nv), m.min(nv), &mut prefixes);
    let parts: Vec<Vec<Vec<F>>> = prefixes
        .into_par_iter()
        .map(|mut prefix| {
            let mut out = Vec::new();
            search.extend(&mut prefix, nv, &mut out);
            out
        })
        .collect();
    parts
        .into_iter()
        .flatten()
        .map(|values| Matrix::from_rows(values.chunks(m).map(<[F]>::to_vec).collect()).expect("rectangular"))
        .collect()
}

/// Every character of `A(h, g)` over its prime field, row-major
/// lexicographic in the residues.
pub fn enumerate_characters(pres: &Presentation<Fp>, budget: Budget) -> Result<Vec<Character<Fp>>> {
    let field = pres.ring().field;
    budget.check(field.modulus(), pres.h().dim() * pres.g().dim())?;
    let elements: Vec<Fp> = field.elements().collect();
    Ok(search(pres, &elements).into_iter().map(|d| Character { d }).collect())
}

/// Endomorphisms of `h` as images of the characters of `A(h)`.
pub fn enumerate_endomorphisms(h: &LeibnizAlgebra<Fp>, budget: Budget) -> Result<Vec<LinearMap<Fp>>> {
    let pres = Presentation::build(h, h, MonomialOrder::DegRevLex)?;
    Ok(enumerate_characters(&pres, budget)?.iter().map(gamma).collect())
}

/// Endomorphisms with an invertible matrix.
pub fn enumerate_automorphisms(h: &LeibnizAlgebra<Fp>, budget: Budget) -> Result<Vec<LinearMap<Fp>>> {
    Ok(enumerate_endomorphisms(h, budget)?
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect())
}

/// `(θ1 ⋆ θ2)(x_sj) = Σ_t θ1(x_st) θ2(x_tj)`.
pub fn convolution<F: Field>(t1: &Character<F>, t2: &Character<F>, pres: &Presentation<F>) -> Result<Character<F>> {
    if !pres.is_square() {
        return Err(Error::NotSquare);
    }
    check_shape(&t1.d, pres)?;
    check_shape(&t2.d, pres)?;
    Character::new(t1.d.mul(&t2.d)?, pres)
}

/// The `⋆`-inverse, present exactly when the matrix is invertible.
pub fn convolution_inverse<F: Field>(t: &Character<F>, pres: &Presentation<F>) -> Result<Option<Character<F>>> {
    if !pres.is_square() {
        return Err(Error::NotSquare);
    }
    check_shape(&t.d, pres)?;
    match t.d.inverse() {
        Some(inv) => Ok(Some(Character::new(inv, pres)?)),
        None => Ok(None),
    }
}

/// `m`-dimensional representations of a Lie algebra `g` over its prime
/// field, as maps `g → gl(m)` (a `m² x dim g` matrix on the basis `E_ab`,
/// index `a * m + b`).
pub fn enumerate_representations(g: &LeibnizAlgebra<Fp>, m: usize, budget: Budget) -> Result<Vec<LinearMap<Fp>>> {
    if !g.check_lie() {
        return Err(Error::InvalidAlgebra("representations need a Lie algebra".into()));
    }
    let target = gl(m, g.field())?;
    budget.check(g.field().modulus(), m * m * g.dim())?;
    let pres = Presentation::build(&target, g, MonomialOrder::DegRevLex)?;
    let reps: Vec<LinearMap<Fp>> = enumerate_characters(&pres, budget)?.iter().map(gamma).collect();
    for f in &reps {
        if !is_hom(f, g, &target)? {
            return Err(Error::NotHomomorphism(format!(
                "enumerated {f:?} is not a representation"
            )));
        }
    }
    Ok(reps)
}
