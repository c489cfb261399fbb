//! Brute-force oracles that share nothing with the library beyond its
//! matrix type: structure constants are typed out here and homomorphisms
//! are found by trying every matrix.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use ualg::groebner::{is_groebner_basis, is_reduced_basis, normal_form, reduce, s_polynomial};
use ualg::{
    buchberger, BigRational, Field, Fp, Grid, Matrix, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField,
};

/// `(i, j, s, c)` meaning `[e_i, e_j]` has `c` on `e_s`, 0-based.
pub struct Table {
    pub name: &'static str,
    pub dim: usize,
    pub entries: &'static [(usize, usize, usize, i64)],
}

pub const AFF2: Table = Table {
    name: "aff2",
    dim: 2,
    entries: &[(0, 1, 0, 1), (1, 0, 0, -1)],
};

pub const SL2: Table = Table {
    name: "sl2",
    dim: 3,
    entries: &[
        (0, 1, 2, 1),
        (1, 0, 2, -1),
        (2, 0, 0, 2),
        (0, 2, 0, -2),
        (2, 1, 1, -2),
        (1, 2, 1, 2),
    ],
};

fn modp(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

impl Table {
    /// `[x, y]` on coordinate vectors mod `p`.
    pub fn bracket(&self, x: &[i64], y: &[i64], p: i64) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for &(i, j, s, c) in self.entries {
            out[s] = modp(out[s] + x[i] * y[j] * c, p);
        }
        out
    }
}

/// `f` as a `rows x cols` row-major list applied to a vector.
fn apply(f: &[i64], rows: usize, cols: usize, v: &[i64], p: i64) -> Vec<i64> {
    (0..rows)
        .map(|r| modp((0..cols).map(|c| f[r * cols + c] * v[c]).sum(), p))
        .collect()
}

/// Whether `f: g -> h` (a `dim h x dim g` matrix) preserves brackets on basis pairs.
pub fn preserves(f: &[i64], g: &Table, h: &Table, p: i64) -> bool {
    let unit = |i: usize| -> Vec<i64> { (0..g.dim).map(|k| i64::from(k == i)).collect() };
    for i in 0..g.dim {
        for j in 0..g.dim {
            let lhs = apply(f, h.dim, g.dim, &g.bracket(&unit(i), &unit(j), p), p);
            let fi = apply(f, h.dim, g.dim, &unit(i), p);
            let fj = apply(f, h.dim, g.dim, &unit(j), p);
            if lhs != h.bracket(&fi, &fj, p) {
                return false;
            }
        }
    }
    true
}

/// Every `rows x cols` matrix over `F_p`, row-major, in lexicographic order.
pub fn all_matrices(rows: usize, cols: usize, p: i64) -> Vec<Vec<i64>> {
    let n = rows * cols;
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut m = vec![0; n];
            for slot in m.iter_mut().rev() {
                *slot = (k % p as usize) as i64;
                k /= p as usize;
            }
            m
        })
        .collect()
}

pub fn brute_force_homs(g: &Table, h: &Table, p: i64) -> Vec<Vec<i64>> {
    all_matrices(h.dim, g.dim, p)
        .into_iter()
        .filter(|f| preserves(f, g, h, p))
        .collect()
}

fn det(m: &[i64], n: usize, p: i64) -> i64 {
    if n == 1 {
        return modp(m[0], p);
    }
    let mut total = 0;
    for c in 0..n {
        let minor: Vec<i64> = (1..n)
            .flat_map(|r| (0..n).filter(move |&k| k != c).map(move |k| m[r * n + k]))
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[c] * det(&minor, n - 1, p);
    }
    modp(total, p)
}

pub fn brute_force_automorphisms(h: &Table, p: i64) -> Vec<Vec<i64>> {
    brute_force_homs(h, h, p)
        .into_iter()
        .filter(|f| det(f, h.dim, p) != 0)
        .collect()
}

/// Degree maps `basis -> Z_m` under which every nonzero bracket is homogeneous.
pub fn brute_force_degree_maps(h: &Table, m: usize, p: i64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..m.pow(h.dim as u32) {
        let d: Vec<usize> = (0..h.dim).map(|i| (k / m.pow(i as u32)) % m).collect();
        if h.entries
            .iter()
            .all(|&(i, j, s, c)| modp(c, p) == 0 || d[s] == (d[i] + d[j]) % m)
        {
            out.push(d);
        }
    }
    out.sort();
    out
}

pub fn matrix(entries: &[i64], rows: usize, cols: usize, f: &PrimeField) -> Matrix<Fp> {
    Matrix::from_rows(
        (0..rows)
            .map(|r| (0..cols).map(|c| f.element(entries[r * cols + c])).collect())
            .collect(),
    )
    .unwrap()
}

pub fn residues(m: &Matrix<Fp>) -> Vec<i64> {
    m.entries().iter().map(|x| x.residue() as i64).collect()
}

type RawPoly = Vec<([u32; 3], i64)>;

fn raw_poly() -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..2], -3i64..=3), 1..4)
}

/// Generators, two test polynomials, two scalars and an order.
pub type GroebnerCase = (bool, Vec<RawPoly>, RawPoly, RawPoly, i64, i64);

pub fn groebner_case() -> impl Strategy<Value = GroebnerCase> {
    (
        any::<bool>(),
        prop::collection::vec(raw_poly(), 0..4),
        raw_poly(),
        raw_poly(),
        -4i64..5,
        -4i64..5,
    )
}

fn build<F: Field>(ring: &Arc<PolyRing<F>>, raw: &RawPoly) -> Polynomial<F> {
    let terms = raw
        .iter()
        .map(|(e, c)| (Monomial::from_exponents(e.to_vec()), F::from_i64(*c, &ring.field)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn laws<F: Field>(desc: F::Desc, case: &GroebnerCase) -> Result<(), TestCaseError> {
    let (lex, gens, f, g, a, b) = case;
    let order = if *lex {
        MonomialOrder::Lex
    } else {
        MonomialOrder::DegRevLex
    };
    let ring = PolyRing::new(Grid::new(1, 3), order, desc);
    let gens: Vec<Polynomial<F>> = gens.iter().map(|r| build(&ring, r)).collect();
    let gb = buchberger(&gens, &ring).unwrap();
    let basis = gb.generators();
    for x in basis {
        for y in basis {
            prop_assert!(reduce(&s_polynomial(x, y), basis).is_zero());
        }
    }
    prop_assert!(is_groebner_basis(basis) && is_reduced_basis(basis));
    let (f, g) = (build(&ring, f), build(&ring, g));
    let nf = normal_form(&f, &gb).unwrap();
    prop_assert_eq!(normal_form(&nf, &gb).unwrap(), nf.clone());
    prop_assert!(gb.contains(&(&f - &nf)).unwrap());
    let (a, b) = (F::from_i64(*a, &ring.field), F::from_i64(*b, &ring.field));
    let lhs = normal_form(&(&f.scale(&a) + &g.scale(&b)), &gb).unwrap();
    let rhs = &nf.scale(&a) + &normal_form(&g, &gb).unwrap().scale(&b);
    prop_assert_eq!(lhs, rhs);
    let again = buchberger(basis, &ring).unwrap();
    prop_assert_eq!(again.generators(), basis);
    Ok(())
}

pub fn groebner_laws_f5(case: &GroebnerCase) -> Result<(), TestCaseError> {
    laws::<Fp>(PrimeField::new(5).unwrap(), case)
}

pub fn groebner_laws_q(case: &GroebnerCase) -> Result<(), TestCaseError> {
    laws::<BigRational>((), case)
}
