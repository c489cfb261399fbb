//! Universal polynomials, the presentation of the universal algebra
//! `A(h, g) = k[X_si] / J`, the unit coaction and the bialgebra structure
//! in the square case.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldError};
use crate::groebner::{buchberger, normal_form, tensor_square_basis, GroebnerBasis};
use crate::leibniz::{abelian, LeibnizAlgebra};
use crate::linalg::Matrix;
use crate::poly::{Grid, Monomial, MonomialOrder, PolyRing, Polynomial};

/// `P_(a,i,j)` with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedPoly<F: Field> {
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub poly: Polynomial<F>,
}

/// Polynomial ring `k[X_si]` with `s` ranging over a basis of `h` (rows)
/// and `i` over a basis of `g` (columns).
pub fn universal_ring<F: Field>(
    h: &LeibnizAlgebra<F>,
    g: &LeibnizAlgebra<F>,
    order: MonomialOrder,
) -> Result<Arc<PolyRing<F>>> {
    if h.field() != g.field() {
        return Err(FieldError::Mismatch(F::kind(h.field()), F::kind(g.field())).into());
    }
    Ok(PolyRing::new(Grid::new(h.dim(), g.dim()), order, h.field().clone()))
}

/// All `n * |I|^2` polynomials
/// `P_(a,i,j) = Σ_u β_ij^u X_au - Σ_{s,t} τ_st^a X_si X_tj`, ordered by `(a, i, j)`.
pub fn universal_polynomials<F: Field>(
    h: &LeibnizAlgebra<F>,
    g: &LeibnizAlgebra<F>,
    ring: &Arc<PolyRing<F>>,
) -> Result<Vec<IndexedPoly<F>>> {
    if h.field() != g.field() {
        return Err(FieldError::Mismatch(F::kind(h.field()), F::kind(g.field())).into());
    }
    if ring.grid != Grid::new(h.dim(), g.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "ring grid {:?} for algebras of dims {} and {}",
            ring.grid,
            h.dim(),
            g.dim()
        )));
    }
    let n = h.dim();
    let m = g.dim();
    let nv = ring.nvars();
    let var = |s: usize, i: usize| ring.grid.var(0, s, i);
    let mut out = Vec::with_capacity(n * m * m);
    for a in 0..n {
        for i in 0..m {
            for j in 0..m {
                let mut terms = Vec::new();
                for (u, beta) in g.bracket_basis(i, j).into_iter().enumerate() {
                    if !beta.is_zero() {
                        terms.push((Monomial::var(nv, var(a, u)), beta));
                    }
                }
                for (&(s, t), bracket) in h.nonzero_brackets() {
                    if let Some(tau) = bracket.get(&a) {
                        let mono = Monomial::var(nv, var(s, i)).mul(&Monomial::var(nv, var(t, j)));
                        terms.push((mono, -tau.clone()));
                    }
                }
                out.push(IndexedPoly {
                    a: a + 1,
                    i: i + 1,
                    j: j + 1,
                    poly: Polynomial::from_terms(ring, terms),
                });
            }
        }
    }
    Ok(out)
}

/// One checked identity: `residue` must be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry<F: Field> {
    pub label: String,
    pub residue: Polynomial<F>,
}

/// A list of reductions; the identity holds when every residue vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<F: Field> {
    pub entries: Vec<CertificateEntry<F>>,
}

impl<F: Field> Certificate<F> {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.residue.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CertificateEntry<F>> {
        self.entries.iter().filter(|e| !e.residue.is_zero())
    }
}

/// `η(f_i) = Σ_s e_s ⊗ x_si`: `images[i]` lists `(s, x_si)` with 0-based `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coaction<F: Field> {
    pub images: Vec<Vec<(usize, Polynomial<F>)>>,
}

/// `Δ(x_ij) = Σ_s x_is ⊗ x_sj` on the doubled grid and `ε(x_ij) = δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comultiplication<F: Field> {
    n: usize,
    delta: Vec<Polynomial<F>>,
    pub epsilon: Matrix<F>,
    pub certificate: Certificate<F>,
}

impl<F: Field> Comultiplication<F> {
    /// `Δ(x_ij)`, 0-based.
    pub fn delta(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.delta[i * self.n + j]
    }
}

/// Outcome of [`Presentation::verify_comodule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComoduleReport {
    pub eta_coassociative: bool,
    pub eta_counit: bool,
    pub coassociative: bool,
    pub counit: bool,
    pub projection: bool,
}

impl ComoduleReport {
    pub fn holds(&self) -> bool {
        self.eta_coassociative && self.eta_counit && self.coassociative && self.counit && self.projection
    }
}

/// `A(h, g)` presented by the universal polynomials.
#[derive(Debug)]
pub struct Presentation<F: Field> {
    h: LeibnizAlgebra<F>,
    g: LeibnizAlgebra<F>,
    ring: Arc<PolyRing<F>>,
    polys: Vec<IndexedPoly<F>>,
    gb: GroebnerBasis<F>,
    tensor_gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn build(h: &LeibnizAlgebra<F>, g: &LeibnizAlgebra<F>, order: MonomialOrder) -> Result<Self> {
        let ring = universal_ring(h, g, order)?;
        let polys = universal_polynomials(h, g, &ring)?;
        let gens: Vec<Polynomial<F>> = polys
            .iter()
            .filter(|p| !p.poly.is_zero())
            .map(|p| p.poly.clone())
            .collect();
        let gb = buchberger(&gens, &ring)?;
        Ok(Presentation {
            h: h.clone(),
            g: g.clone(),
            ring,
            polys,
            gb,
            tensor_gb: OnceLock::new(),
        })
    }

    pub fn h(&self) -> &LeibnizAlgebra<F> {
        &self.h
    }

    pub fn g(&self) -> &LeibnizAlgebra<F> {
        &self.g
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ring.order
    }

    pub fn universal_polys(&self) -> &[IndexedPoly<F>] {
        &self.polys
    }

    /// `P_(a,i,j)`, 1-based.
    pub fn universal_poly(&self, a: usize, i: usize, j: usize) -> &Polynomial<F> {
        let m = self.g.dim();
        &self.polys[((a - 1) * m + (i - 1)) * m + (j - 1)].poly
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn is_square(&self) -> bool {
        self.h.same_constants(&self.g)
    }

    /// Class of `X_si` (1-based) as a polynomial.
    pub fn x(&self, s: usize, i: usize) -> Polynomial<F> {
        Polynomial::x(&self.ring, s, i)
    }

    /// Every universal polynomial reduces to zero modulo the basis.
    pub fn relations_hold(&self) -> Result<bool> {
        for p in &self.polys {
            if !self.gb.contains(&p.poly)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn eta(&self) -> Coaction<F> {
        let images = (1..=self.g.dim())
            .map(|i| (1..=self.h.dim()).map(|s| (s - 1, self.x(s, i))).collect())
            .collect();
        Coaction { images }
    }

    /// Checks `[η(f_i), η(f_j)] = η([f_i, f_j])` componentwise modulo `J`.
    pub fn verify_eta_hom(&self) -> Result<Certificate<F>> {
        let n = self.h.dim();
        let m = self.g.dim();
        let eta = self.eta();
        let zero = Polynomial::zero(&self.ring);
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..m {
                // Σ_{s,t} [e_s, e_t] ⊗ x_si x_tj
                let mut lhs = vec![zero.clone(); n];
                for (s, xs) in &eta.images[i] {
                    for (t, xt) in &eta.images[j] {
                        let prod = xs * xt;
                        for (a, c) in self.h.bracket_basis(*s, *t).iter().enumerate() {
                            if !c.is_zero() {
                                lhs[a] = &lhs[a] + &prod.scale(c);
                            }
                        }
                    }
                }
                // Σ_u β_ij^u η(f_u)
                let mut rhs = vec![zero.clone(); n];
                for (u, beta) in self.g.bracket_basis(i, j).iter().enumerate() {
                    if beta.is_zero() {
                        continue;
                    }
                    for (a, xa) in &eta.images[u] {
                        rhs[*a] = &rhs[*a] + &xa.scale(beta);
                    }
                }
                for a in 0..n {
                    let residue = self.gb.normal_form(&(&lhs[a] - &rhs[a]))?;
                    entries.push(CertificateEntry {
                        label: format!("eta[{},{}]_{}", i + 1, j + 1, a + 1),
                        residue,
                    });
                }
            }
        }
        Ok(Certificate { entries })
    }

    /// Gröbner basis of `J ⊗ 1 + 1 ⊗ J` on the doubled grid, computed once.
    pub fn tensor_basis(&self) -> &GroebnerBasis<F> {
        self.tensor_gb.get_or_init(|| {
            tensor_square_basis(self.gb.generators(), &self.ring).expect("basis lives in the presentation ring")
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare)
        }
    }

    fn delta_images(&self) -> (Arc<PolyRing<F>>, Vec<Polynomial<F>>) {
        let n = self.h.dim();
        let doubled = self.ring.power(2);
        let grid = doubled.grid;
        let nv = doubled.nvars();
        let one = F::one(&self.ring.field);
        let mut images = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let terms = (0..n)
                    .map(|s| {
                        let m = Monomial::var(nv, grid.var(0, i, s)).mul(&Monomial::var(nv, grid.var(1, s, j)));
                        (m, one.clone())
                    })
                    .collect();
                images.push(Polynomial::from_terms(&doubled, terms));
            }
        }
        (doubled, images)
    }

    fn identity_values(&self) -> Vec<F> {
        let n = self.h.dim();
        let field = &self.ring.field;
        (0..n * n)
            .map(|v| if v / n == v % n { F::one(field) } else { F::zero(field) })
            .collect()
    }

    /// Formulas for `Δ` and `ε` and the certificate that both vanish on `J`.
    pub fn comultiplication(&self) -> Result<Comultiplication<F>> {
        self.require_square()?;
        let n = self.h.dim();
        let (doubled, delta) = self.delta_images();
        let tensor = self.tensor_basis();
        let ident = self.identity_values();
        let field = self.ring.field.clone();
        let mut entries: Vec<CertificateEntry<F>> = self
            .polys
            .par_iter()
            .filter(|p| !p.poly.is_zero())
            .map(|p| {
                let image = p.poly.substitute(&delta, &doubled);
                let residue = normal_form(&image, tensor)?;
                Ok(CertificateEntry {
                    label: format!("delta P({},{},{})", p.a, p.i, p.j),
                    residue,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for p in self.polys.iter().filter(|p| !p.poly.is_zero()) {
            let value: F = p.poly.eval(&ident, &F::one(&field));
            entries.push(CertificateEntry {
                label: format!("epsilon P({},{},{})", p.a, p.i, p.j),
                residue: Polynomial::constant(&self.ring, value),
            });
        }
        Ok(Comultiplication {
            n,
            delta,
            epsilon: Matrix::identity(n, &field),
            certificate: Certificate { entries },
        })
    }

    /// Coassociativity and counit on generators, the comodule diagrams of `η`,
    /// and agreement of `Δ`, `ε` with the matrix-coalgebra formulas after
    /// projection.
    pub fn verify_comodule(&self) -> Result<ComoduleReport> {
        self.require_square()?;
        let n = self.h.dim();
        let field = self.ring.field.clone();
        let (doubled, delta) = self.delta_images();
        let triple = self.ring.power(3);
        let g2 = doubled.grid;
        let g3 = triple.grid;
        let var3 = |b: usize, s: usize, i: usize| Polynomial::var(&triple, g3.var(b, s, i));
        let delta3 = |b0: usize, b1: usize, i: usize, j: usize| {
            (0..n).fold(Polynomial::zero(&triple), |acc, s| {
                &acc + &(&var3(b0, i, s) * &var3(b1, s, j))
            })
        };
        // (Δ ⊗ id) and (id ⊗ Δ) as substitutions from the doubled grid.
        let mut left_images = vec![Polynomial::zero(&triple); doubled.nvars()];
        let mut right_images = left_images.clone();
        for i in 0..n {
            for j in 0..n {
                left_images[g2.var(0, i, j)] = delta3(0, 1, i, j);
                left_images[g2.var(1, i, j)] = var3(2, i, j);
                right_images[g2.var(0, i, j)] = var3(0, i, j);
                right_images[g2.var(1, i, j)] = delta3(1, 2, i, j);
            }
        }
        let single = |s: usize, i: usize| Polynomial::x(&self.ring, s + 1, i + 1);
        let scalar = |i: usize, j: usize| {
            Polynomial::constant(&self.ring, if i == j { F::one(&field) } else { F::zero(&field) })
        };
        let mut eps_left = vec![Polynomial::zero(&self.ring); doubled.nvars()];
        let mut eps_right = eps_left.clone();
        for i in 0..n {
            for j in 0..n {
                eps_left[g2.var(0, i, j)] = scalar(i, j);
                eps_left[g2.var(1, i, j)] = single(i, j);
                eps_right[g2.var(0, i, j)] = single(i, j);
                eps_right[g2.var(1, i, j)] = scalar(i, j);
            }
        }
        let mut coassociative = true;
        let mut counit = true;
        for i in 0..n {
            for j in 0..n {
                let d = &delta[i * n + j];
                if d.substitute(&left_images, &triple) != d.substitute(&right_images, &triple) {
                    coassociative = false;
                }
                let x = single(i, j);
                if d.substitute(&eps_left, &self.ring) != x || d.substitute(&eps_right, &self.ring) != x {
                    counit = false;
                }
            }
        }

        // (id ⊗ Δ)η(f_i) against (η ⊗ id)η(f_i) = Σ_t e_t ⊗ Σ_s x_ts ⊗ x_si.
        let eta = self.eta();
        let mut eta_coassociative = true;
        let mut eta_counit = true;
        let ident = self.identity_values();
        for (i, image) in eta.images.iter().enumerate() {
            let mut via_delta = vec![Polynomial::zero(&doubled); n];
            for (s, x) in image {
                via_delta[*s] = x.substitute(&delta, &doubled);
            }
            for (t, lhs) in via_delta.iter().enumerate() {
                let rhs = (0..n).fold(Polynomial::zero(&doubled), |acc, s| {
                    &acc + &(&Polynomial::var(&doubled, g2.var(0, t, s)) * &Polynomial::var(&doubled, g2.var(1, s, i)))
                });
                if *lhs != rhs {
                    eta_coassociative = false;
                }
            }
            for (s, x) in image {
                let value: F = x.eval(&ident, &F::one(&field));
                if value != if *s == i { F::one(&field) } else { F::zero(&field) } {
                    eta_counit = false;
                }
            }
        }

        // π is a coalgebra map: Δ_M(x_ij) and Δ_A(π x_ij) agree modulo J ⊗ 1 + 1 ⊗ J,
        // and ε_M(x_ij) = ε_A(π x_ij).
        let free_ring = self.ring.clone();
        let mut projection = true;
        let tensor = self.tensor_basis();
        for i in 0..n {
            for j in 0..n {
                let free = (0..n).fold(Polynomial::zero(&doubled), |acc, s| {
                    let a = Polynomial::x(&free_ring, i + 1, s + 1).embed(&doubled, 0);
                    let b = Polynomial::x(&free_ring, s + 1, j + 1).embed(&doubled, free_ring.nvars());
                    &acc + &(&a * &b)
                });
                let projected = self.gb.normal_form(&single(i, j))?.substitute(&delta, &doubled);
                if normal_form(&(&free - &projected), tensor)?.is_zero() {
                    continue;
                }
                projection = false;
            }
        }
        Ok(ComoduleReport {
            eta_coassociative,
            eta_counit,
            coassociative,
            counit,
            projection,
        })
    }
}

/// Outcome of [`symmetric_algebra_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricAlgebraReport {
    /// Every basis element of `J` has degree at most one.
    pub linear: bool,
    pub span_dim: usize,
    pub derived_dim: usize,
    /// Number of polynomial generators of the quotient.
    pub free_generators: usize,
}

impl SymmetricAlgebraReport {
    pub fn holds(&self) -> bool {
        self.linear && self.span_dim == self.derived_dim
    }
}

/// For `A(k, g)`: `J` is generated by linear forms spanning a space of
/// dimension `dim [g, g]`, so the quotient is a polynomial ring on
/// `dim g - dim [g, g]` generators.
pub fn symmetric_algebra_check<F: Field>(
    g: &LeibnizAlgebra<F>,
    order: MonomialOrder,
) -> Result<SymmetricAlgebraReport> {
    let k = abelian(1, g.field())?;
    let pres = Presentation::build(&k, g, order)?;
    let gens = pres.groebner_basis().generators();
    let linear = gens.iter().all(|p| p.total_degree() <= 1);
    let nv = pres.ring().nvars();
    let rows: Vec<Vec<F>> = gens
        .iter()
        .map(|p| (0..nv).map(|v| p.coeff(&Monomial::var(nv, v))).collect())
        .collect();
    let span_dim = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows)?.rank()
    };
    Ok(SymmetricAlgebraReport {
        linear,
        span_dim,
        derived_dim: g.derived_subalgebra().cols(),
        free_generators: g.dim() - span_dim,
    })
}
