//! Buchberger's algorithm, reduced Gröbner bases and normal forms.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial. The zero ideal is the empty basis and the unit ideal
/// is `{1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(p, self)
    }

    /// Ideal membership.
    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    /// Monomials not divisible by any leading monomial, up to total degree
    /// `max_degree`. They form a vector-space basis of the quotient in
    /// that degree range.
    pub fn standard_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(v: usize, left: u32, exps: &mut Vec<u32>, lms: &[&Monomial], out: &mut Vec<Monomial>) {
            if v == exps.len() {
                let m = Monomial::from_exponents(exps.clone());
                if !lms.iter().any(|l| l.divides(&m)) {
                    out.push(m);
                }
                return;
            }
            for e in 0..=left {
                exps[v] = e;
                rec(v + 1, left - e, exps, lms, out);
            }
            exps[v] = 0;
        }
        rec(0, max_degree, &mut exps, &lms, &mut out);
        let order = &self.ring.order;
        out.sort_by(|a, b| order.cmp(a, b));
        out
    }
}

fn check_ring<F: Field>(p: &Polynomial<F>, ring: &Arc<PolyRing<F>>) -> Result<()> {
    if Arc::ptr_eq(p.ring(), ring) || **p.ring() == **ring {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "polynomial ring {:?}/{:?} does not match {:?}/{:?}",
            p.ring().grid,
            p.ring().order,
            ring.grid,
            ring.order
        )))
    }
}

/// Remainder of multivariate division of `p` by `divisors`; no monomial of
/// the result is divisible by any divisor's leading monomial.
pub fn reduce<F: Field>(p: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = p.ring().clone();
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, F)> = Vec::new();
    'outer: while let Some((m, c)) = rest.leading_term().cloned() {
        for g in divisors {
            let Some(lm) = g.leading_monomial() else { continue };
            if let Some(q) = lm.quotient_of(&m) {
                let lc = g.leading_coeff().unwrap();
                let factor = c.div(lc).expect("leading coefficient is nonzero");
                rest = rest.sub_mul_term(g, &q, &factor);
                continue 'outer;
            }
        }
        remainder.push((m, c));
        rest.drop_leading();
    }
    Polynomial::from_terms(&ring, remainder)
}

pub fn normal_form<F: Field>(p: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    check_ring(p, &gb.ring)?;
    Ok(reduce(p, &gb.generators))
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return Polynomial::zero(f.ring());
    };
    let l = mf.lcm(mg);
    let a = mf.quotient_of(&l).unwrap();
    let b = mg.quotient_of(&l).unwrap();
    let left = f.mul_term(&a, &cf.inv().unwrap());
    left.sub_mul_term(g, &b, &cg.inv().unwrap())
}

/// Whether every S-polynomial of the given set reduces to zero.
pub fn is_groebner_basis<F: Field>(polys: &[Polynomial<F>]) -> bool {
    let nonzero: Vec<_> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..nonzero.len() {
        for j in (i + 1)..nonzero.len() {
            if !reduce(&s_polynomial(&nonzero[i], &nonzero[j]), &nonzero).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether the set is a reduced Gröbner basis.
pub fn is_reduced_basis<F: Field>(polys: &[Polynomial<F>]) -> bool {
    if !is_groebner_basis(polys) {
        return false;
    }
    for (i, g) in polys.iter().enumerate() {
        if g.is_zero() || !g.leading_coeff().unwrap().is_one() {
            return false;
        }
        for (j, h) in polys.iter().enumerate() {
            if i == j {
                continue;
            }
            let lm = h.leading_monomial().unwrap();
            if g.terms().iter().any(|(m, _)| lm.divides(m)) {
                return false;
            }
        }
    }
    true
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
///
/// Pairs are taken by the normal strategy (smallest lcm first); pairs with
/// coprime leading monomials and pairs caught by the chain criterion are
/// skipped.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], ring: &Arc<PolyRing<F>>) -> Result<GroebnerBasis<F>> {
    for g in gens {
        check_ring(g, ring)?;
    }
    let order = ring.order.clone();
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let m = g.monic();
        if m.is_constant() {
            return Ok(unit_ideal(ring));
        }
        if !basis.contains(&m) {
            basis.push(m);
        }
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(usize, usize, Monomial)> = Vec::new();
    let push_pairs = |basis: &Vec<Polynomial<F>>,
                      k: usize,
                      queue: &mut Vec<(usize, usize, Monomial)>,
                      pending: &mut HashSet<(usize, usize)>| {
        let lk = basis[k].leading_monomial().unwrap();
        for (i, bi) in basis.iter().enumerate().take(k) {
            let li = bi.leading_monomial().unwrap();
            queue.push((i, k, li.lcm(lk)));
            pending.insert((i, k));
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    while !queue.is_empty() {
        // normal selection strategy, deterministic tie-break on indices
        let mut best = 0;
        for idx in 1..queue.len() {
            let (a, b) = (&queue[idx], &queue[best]);
            let ord =
                a.2.degree()
                    .cmp(&b.2.degree())
                    .then_with(|| order.cmp(&a.2, &b.2))
                    .then_with(|| (a.0, a.1).cmp(&(b.0, b.1)));
            if ord == Ordering::Less {
                best = idx;
            }
        }
        let (i, j, lcm) = queue.swap_remove(best);
        pending.remove(&(i, j));

        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        if li.coprime(lj) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(unit_ideal(ring));
        }
        basis.push(r);
        let k = basis.len() - 1;
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: interreduce(basis, &order),
    })
}

fn unit_ideal<F: Field>(ring: &Arc<PolyRing<F>>) -> GroebnerBasis<F> {
    GroebnerBasis {
        ring: ring.clone(),
        generators: vec![Polynomial::one(ring)],
    }
}

fn interreduce<F: Field>(mut basis: Vec<Polynomial<F>>, order: &crate::poly::MonomialOrder) -> Vec<Polynomial<F>> {
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // minimal basis: a divisor's leading monomial is never larger
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    for k in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        minimal[k] = reduce(&minimal[k], &others).monic();
    }
    minimal
}

/// Gröbner basis of `{q ⊗ 1, 1 ⊗ q : q ∈ gens}` in the doubled ring.
pub fn tensor_square_basis<F: Field>(gens: &[Polynomial<F>], ring: &Arc<PolyRing<F>>) -> Result<GroebnerBasis<F>> {
    for g in gens {
        check_ring(g, ring)?;
    }
    if ring.grid.blocks != 1 {
        return Err(Error::DimensionMismatch("tensor square of a tensor ring".into()));
    }
    let doubled = ring.power(2);
    let n = ring.nvars();
    let mut lifted = Vec::with_capacity(2 * gens.len());
    for g in gens {
        lifted.push(g.embed(&doubled, 0));
        lifted.push(g.embed(&doubled, n));
    }
    buchberger(&lifted, &doubled)
}

/// Normal form of `p` (a polynomial on the doubled grid) modulo the ideal
/// generated by `q ⊗ 1` and `1 ⊗ q` for `q` in `gens`.
pub fn reduce_in_tensor_square<F: Field>(
    p: &Polynomial<F>,
    gens: &[Polynomial<F>],
    ring: &Arc<PolyRing<F>>,
) -> Result<Polynomial<F>> {
    let gb = tensor_square_basis(gens, ring)?;
    normal_form(p, &gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField};
    use crate::poly::{Grid, MonomialOrder};
    use num_rational::BigRational;

    type Q = BigRational;

    fn ring(order: MonomialOrder) -> Arc<PolyRing<Q>> {
        PolyRing::new(Grid::new(2, 2), order, ())
    }

    fn x(r: &Arc<PolyRing<Q>>, s: usize, i: usize) -> Polynomial<Q> {
        Polynomial::x(r, s, i)
    }

    /// The basis {X21, X11 X22 - X11} written down directly.
    fn aff2_basis(r: &Arc<PolyRing<Q>>) -> GroebnerBasis<Q> {
        GroebnerBasis {
            ring: r.clone(),
            generators: vec![x(r, 2, 1), &(&x(r, 1, 1) * &x(r, 2, 2)) - &x(r, 1, 1)],
        }
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(MonomialOrder::Lex);
        let gb = aff2_basis(&r);
        assert!(gb.normal_form(&(&x(&r, 1, 2) * &x(&r, 2, 1))).unwrap().is_zero());
        assert_eq!(gb.normal_form(&x(&r, 1, 1)).unwrap(), x(&r, 1, 1));
        let p = &(&x(&r, 1, 1) * &x(&r, 2, 2)) * &x(&r, 2, 2);
        assert_eq!(gb.normal_form(&p).unwrap(), x(&r, 1, 1));
    }

    #[test]
    fn empty_and_single_generator() {
        let r = ring(MonomialOrder::DegRevLex);
        let gb = buchberger(&[], &r).unwrap();
        assert!(gb.is_zero_ideal());
        // X - Y*Z with X = X11, Y = X12, Z = X21 under lex
        let r = ring(MonomialOrder::Lex);
        let p = &x(&r, 1, 1) - &(&x(&r, 1, 2) * &x(&r, 2, 1));
        let gb = buchberger(std::slice::from_ref(&p), &r).unwrap();
        assert_eq!(gb.generators(), &[p]);
    }

    #[test]
    fn aff2_generators_give_two_element_basis() {
        let r = ring(MonomialOrder::Lex);
        let p1 = x(&r, 2, 1);
        let p2 = &(&x(&r, 1, 1) - &(&x(&r, 1, 1) * &x(&r, 2, 2))) + &(&x(&r, 1, 2) * &x(&r, 2, 1));
        let gb = buchberger(&[p1, p2], &r).unwrap();
        assert_eq!(gb, aff2_basis(&r));
        assert!(is_reduced_basis(gb.generators()));
    }

    #[test]
    fn unit_ideal_is_flagged() {
        let r = ring(MonomialOrder::DegRevLex);
        let a = x(&r, 1, 1);
        let b = &x(&r, 1, 1) - &Polynomial::one(&r);
        let gb = buchberger(&[a, b], &r).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.generators(), &[Polynomial::one(&r)]);
    }

    #[test]
    fn mismatched_ring_is_rejected() {
        let r = ring(MonomialOrder::DegRevLex);
        let other = PolyRing::new(Grid::new(3, 3), MonomialOrder::DegRevLex, ());
        let gb = buchberger(&[x(&r, 1, 1)], &r).unwrap();
        assert!(matches!(
            gb.normal_form(&Polynomial::x(&other, 1, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn cyclic_three_over_f5() {
        // x+y+z, xy+yz+zx, xyz-1 : known reduced basis size 3 under lex
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::<Fp>::new(Grid::new(1, 3), MonomialOrder::Lex, f5);
        let (a, b, c) = (
            Polynomial::x(&r, 1, 1),
            Polynomial::x(&r, 1, 2),
            Polynomial::x(&r, 1, 3),
        );
        let g1 = &(&a + &b) + &c;
        let g2 = &(&(&a * &b) + &(&b * &c)) + &(&c * &a);
        let g3 = &(&(&a * &b) * &c) - &Polynomial::one(&r);
        let gb = buchberger(&[g1, g2, g3], &r).unwrap();
        assert!(is_reduced_basis(gb.generators()));
        assert_eq!(gb.len(), 3);
        assert_eq!(gb.generators()[0].to_string(), "X13^3 + 4");
    }

    #[test]
    fn tensor_square_reduction() {
        let r = ring(MonomialOrder::DegRevLex);
        let gens = vec![x(&r, 2, 1)];
        let doubled = r.power(2);
        let left = x(&r, 2, 1).embed(&doubled, 0);
        assert!(reduce_in_tensor_square(&left, &gens, &r).unwrap().is_zero());
        let zero = Polynomial::zero(&doubled);
        assert!(reduce_in_tensor_square(&zero, &gens, &r).unwrap().is_zero());
        let other = x(&r, 1, 1).embed(&doubled, 4);
        assert_eq!(reduce_in_tensor_square(&other, &gens, &r).unwrap(), other);
    }
}
