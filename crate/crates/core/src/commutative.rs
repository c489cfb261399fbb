//! Finite-dimensional commutative unital algebras given by a multiplication
//! table, and finite quotients of polynomial rings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldError};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{Evaluate, Monomial, Polynomial};

/// Basis `f_0, …, f_{m-1}` with `f_a f_b = Σ_c μ_{a,b}^c f_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeAlgebra<F: Field> {
    dim: usize,
    table: Vec<Vec<F>>,
    unit: Vec<F>,
    field: F::Desc,
}

impl<F: Field> CommutativeAlgebra<F> {
    /// `table[a * dim + b]` is the coordinate vector of `f_a f_b`.
    /// Commutativity, associativity and the unit law are checked.
    pub fn new(dim: usize, field: F::Desc, table: Vec<Vec<F>>, unit: Vec<F>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("commutative algebra of dimension 0".into()));
        }
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table for dimension {dim}"
            )));
        }
        for x in table.iter().flatten().chain(&unit) {
            if x.desc() != field {
                return Err(FieldError::Mismatch(F::kind(&x.desc()), F::kind(&field)).into());
            }
        }
        let alg = CommutativeAlgebra {
            dim,
            table,
            unit,
            field,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let m = self.dim;
        for a in 0..m {
            let fa = self.basis_vector(a);
            if self.mul(&self.unit, &fa) != fa {
                return Err(Error::InvalidAlgebra(format!("unit law fails on f{}", a + 1)));
            }
            for b in 0..m {
                if self.product_basis(a, b) != self.product_basis(b, a) {
                    return Err(Error::InvalidAlgebra(format!(
                        "f{} f{} != f{} f{}",
                        a + 1,
                        b + 1,
                        b + 1,
                        a + 1
                    )));
                }
                for c in 0..m {
                    let left = self.mul(self.product_basis(a, b), &self.basis_vector(c));
                    let right = self.mul(&fa, self.product_basis(b, c));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on (f{}, f{}, f{})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &F::Desc) -> Self {
        CommutativeAlgebra {
            dim: 1,
            table: vec![vec![F::one(field)]],
            unit: vec![F::one(field)],
            field: field.clone(),
        }
    }

    /// `k[t]/(t^m)` on the basis `1, t, …, t^{m-1}`.
    pub fn truncated(m: usize, field: &F::Desc) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("k[t]/(t^m) needs m >= 1".into()));
        }
        let mut table = vec![vec![F::zero(field); m]; m * m];
        for a in 0..m {
            for b in 0..m {
                if a + b < m {
                    table[a * m + b][a + b] = F::one(field);
                }
            }
        }
        let mut unit = vec![F::zero(field); m];
        unit[0] = F::one(field);
        Ok(CommutativeAlgebra {
            dim: m,
            table,
            unit,
            field: field.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &F::Desc {
        &self.field
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn product_basis(&self, a: usize, b: usize) -> &[F] {
        &self.table[a * self.dim + b]
    }

    pub fn basis_vector(&self, a: usize) -> Vec<F> {
        let mut v = vec![F::zero(&self.field); self.dim];
        v[a] = F::one(&self.field);
        v
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(&self.field); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa.clone() * yb.clone();
                for (c, mu) in self.product_basis(a, b).iter().enumerate() {
                    if !mu.is_zero() {
                        out[c] = out[c].clone() + f.clone() * mu.clone();
                    }
                }
            }
        }
        out
    }
}

/// Element of a shared [`CommutativeAlgebra`], usable as an evaluation target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<F: Field> {
    algebra: Arc<CommutativeAlgebra<F>>,
    coords: Vec<F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn new(algebra: &Arc<CommutativeAlgebra<F>>, coords: Vec<F>) -> Self {
        assert_eq!(coords.len(), algebra.dim(), "coordinate length");
        AlgebraElement {
            algebra: algebra.clone(),
            coords,
        }
    }

    pub fn one(algebra: &Arc<CommutativeAlgebra<F>>) -> Self {
        Self::new(algebra, algebra.unit().to_vec())
    }

    pub fn zero(algebra: &Arc<CommutativeAlgebra<F>>) -> Self {
        Self::new(algebra, vec![F::zero(algebra.field()); algebra.dim()])
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<CommutativeAlgebra<F>> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl<F: Field> Evaluate<F> for AlgebraElement<F> {
    fn add(&self, rhs: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: self.algebra.mul(&self.coords, &rhs.coords),
        }
    }
    fn scale(&self, c: &F) -> Self {
        let coords = self.coords.iter().map(|a| a.clone() * c.clone()).collect();
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords,
        }
    }
}

/// `k[X]/I` for a zero-dimensional ideal, on the basis of standard monomials.
#[derive(Debug, Clone)]
pub struct FiniteQuotient<F: Field> {
    algebra: Arc<CommutativeAlgebra<F>>,
    basis: Vec<Monomial>,
    gb: GroebnerBasis<F>,
}

impl<F: Field> FiniteQuotient<F> {
    /// Fails with [`Error::NotFiniteDimensional`] unless every variable has a
    /// pure power among the leading monomials.
    pub fn new(gb: GroebnerBasis<F>) -> Result<Self> {
        if gb.is_unit_ideal() {
            return Err(Error::InvalidAlgebra(
                "quotient by the unit ideal is the zero ring".into(),
            ));
        }
        let ring = gb.ring().clone();
        let n = ring.nvars();
        let mut bound = 0u32;
        for v in 0..n {
            let pure = gb
                .leading_monomials()
                .into_iter()
                .filter_map(|m| {
                    let mut support = m.support();
                    match (support.next(), support.next()) {
                        (Some((w, e)), None) if w == v => Some(e),
                        _ => None,
                    }
                })
                .min();
            match pure {
                Some(e) => bound += e - 1,
                None => return Err(Error::NotFiniteDimensional),
            }
        }
        let basis = gb.standard_monomials(bound);
        let m = basis.len();
        let field = ring.field.clone();
        let mut quotient = FiniteQuotient {
            algebra: Arc::new(CommutativeAlgebra::ground(&field)),
            basis,
            gb,
        };
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let p = Polynomial::monomial(&ring, quotient.basis[a].mul(&quotient.basis[b]), F::one(&field));
                table.push(quotient.coords(&p)?);
            }
        }
        let unit = quotient.coords(&Polynomial::one(&ring))?;
        quotient.algebra = Arc::new(CommutativeAlgebra::new(m, field, table, unit)?);
        Ok(quotient)
    }

    /// `k[X] / (I + (all monomials of degree degree+1))`.
    pub fn truncated(gb: &GroebnerBasis<F>, degree: u32) -> Result<Self> {
        let ring = gb.ring().clone();
        let mut gens = gb.generators().to_vec();
        let one = F::one(&ring.field);
        let n = ring.nvars();
        let mut exps = vec![0u32; n];
        fn rec(v: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if v + 1 == exps.len() {
                exps[v] = left;
                out.push(Monomial::from_exponents(exps.clone()));
                exps[v] = 0;
                return;
            }
            for e in 0..=left {
                exps[v] = e;
                rec(v + 1, left - e, exps, out);
            }
            exps[v] = 0;
        }
        let mut monomials = Vec::new();
        if n > 0 {
            rec(0, degree + 1, &mut exps, &mut monomials);
        }
        gens.extend(
            monomials
                .into_iter()
                .map(|m| Polynomial::monomial(&ring, m, one.clone())),
        );
        Self::new(buchberger(&gens, &ring)?)
    }

    pub fn algebra(&self) -> &Arc<CommutativeAlgebra<F>> {
        &self.algebra
    }

    /// Standard monomials, ascending in the ring order (the unit first).
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of `p` on the standard-monomial basis.
    pub fn coords(&self, p: &Polynomial<F>) -> Result<Vec<F>> {
        let nf = self.gb.normal_form(p)?;
        let field = &self.gb.ring().field;
        let mut out = vec![F::zero(field); self.basis.len()];
        for (m, c) in nf.terms() {
            let idx = self
                .basis
                .iter()
                .position(|b| b == m)
                .expect("normal form lies in the standard-monomial span");
            out[idx] = c.clone();
        }
        Ok(out)
    }

    pub fn element(&self, p: &Polynomial<F>) -> Result<AlgebraElement<F>> {
        Ok(AlgebraElement::new(&self.algebra, self.coords(p)?))
    }

    /// Classes of the ring variables.
    pub fn generators(&self) -> Result<Vec<AlgebraElement<F>>> {
        let ring = self.gb.ring();
        (0..ring.nvars())
            .map(|v| self.element(&Polynomial::var(ring, v)))
            .collect()
    }
}
