//! Leibniz and Lie algebras given by structure constants.
//!
//! Indices are 0-based in the API; violation reports and file formats use
//! 1-based indices.

use std::collections::BTreeMap;

use crate::commutative::CommutativeAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, FieldError};
use crate::linalg::Matrix;

/// Column `j` is the image of source basis vector `j`.
pub type LinearMap<F> = Matrix<F>;

/// Structure constants `[e_i, e_j] = Σ_s τ_{i,j}^s e_s`, stored sparsely.
/// Pairs without an entry bracket to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra<F: Field> {
    dim: usize,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, F>>,
    field: F::Desc,
    name: Option<String>,
}

/// Outcome of [`LeibnizAlgebra::check_leibniz`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizCheck {
    /// 1-based `(i, j, l)` for which `[e_i,[e_j,e_l]] ≠ [[e_i,e_j],e_l] - [[e_i,e_l],e_j]`.
    pub violations: Vec<(usize, usize, usize)>,
}

impl LeibnizCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<F: Field> LeibnizAlgebra<F> {
    /// Structure constants without the Leibniz check. Entries are
    /// `(i, j, s, τ_{i,j}^s)`, 0-based; repeated entries add up.
    pub fn candidate(
        dim: usize,
        field: F::Desc,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut brackets: BTreeMap<(usize, usize), BTreeMap<usize, F>> = BTreeMap::new();
        for (i, j, s, c) in entries {
            if i >= dim || j >= dim || s >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index ({}, {}, {}) outside 1..{dim}",
                    i + 1,
                    j + 1,
                    s + 1
                )));
            }
            if c.desc() != field {
                return Err(FieldError::Mismatch(F::kind(&c.desc()), F::kind(&field)).into());
            }
            let slot = brackets.entry((i, j)).or_default();
            let v = slot.remove(&s).map_or(c.clone(), |x| x + c);
            if !v.is_zero() {
                slot.insert(s, v);
            }
        }
        brackets.retain(|_, v| !v.is_empty());
        Ok(LeibnizAlgebra {
            dim,
            brackets,
            field,
            name: None,
        })
    }

    /// Structure constants that must satisfy the Leibniz identity.
    pub fn new(
        dim: usize,
        field: F::Desc,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let alg = Self::candidate(dim, field, entries)?;
        alg.validated()
    }

    /// Fails with the violating triples unless the Leibniz identity holds.
    pub fn validated(self) -> Result<Self> {
        let check = self.check_leibniz();
        if check.holds() {
            Ok(self)
        } else {
            Err(Error::LeibnizViolation(check.violations))
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &F::Desc {
        &self.field
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn tau(&self, i: usize, j: usize, s: usize) -> F {
        self.brackets
            .get(&(i, j))
            .and_then(|v| v.get(&s))
            .cloned()
            .unwrap_or_else(|| F::zero(&self.field))
    }

    /// Nonzero `((i, j), {s: τ_{i,j}^s})` entries in index order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &BTreeMap<usize, F>)> {
        self.brackets.iter()
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = vec![F::zero(&self.field); self.dim];
        if let Some(entry) = self.brackets.get(&(i, j)) {
            for (&s, c) in entry {
                v[s] = c.clone();
            }
        }
        v
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length");
        let mut out = vec![F::zero(&self.field); self.dim];
        for (&(i, j), entry) in &self.brackets {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let f = x[i].clone() * y[j].clone();
            for (&s, c) in entry {
                out[s] = out[s].clone() + f.clone() * c.clone();
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(&self.field); self.dim];
        v[i] = F::one(&self.field);
        v
    }

    /// Checks `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on all basis triples.
    pub fn check_leibniz(&self) -> LeibnizCheck {
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            let ei = self.basis_vector(i);
            for j in 0..n {
                let eij = self.bracket_basis(i, j);
                for l in 0..n {
                    let lhs = self.bracket(&ei, &self.bracket_basis(j, l));
                    let a = self.bracket(&eij, &self.basis_vector(l));
                    let b = self.bracket(&self.bracket_basis(i, l), &self.basis_vector(j));
                    let ok = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .all(|(x, (y, z))| (x.clone() - (y.clone() - z.clone())).is_zero());
                    if !ok {
                        violations.push((i + 1, j + 1, l + 1));
                    }
                }
            }
        }
        LeibnizCheck { violations }
    }

    /// `τ_{i,i}^s = 0` and `τ_{i,j}^s = -τ_{j,i}^s` for all indices.
    pub fn check_lie(&self) -> bool {
        for (&(i, j), entry) in &self.brackets {
            if i == j {
                return false;
            }
            for (&s, c) in entry {
                if !(c.clone() + self.tau(j, i, s)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced column echelon basis of `[h, h]`, as a `dim x r` matrix.
    pub fn derived_subalgebra(&self) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self.brackets.keys().map(|&(i, j)| self.bracket_basis(i, j)).collect();
        Matrix::from_columns(self.dim, &cols, &self.field).column_space(&self.field)
    }

    /// Whether `f: g → self` (a `dim(self) x dim(g)` matrix) preserves brackets.
    pub fn is_hom_from(&self, f: &LinearMap<F>, g: &LeibnizAlgebra<F>) -> Result<bool> {
        is_hom(f, g, self)
    }

    /// Bracket-preserving test used as an oracle for bijections.
    pub fn same_constants(&self, other: &Self) -> bool {
        self.dim == other.dim && self.brackets == other.brackets && self.field == other.field
    }
}

/// Whether `f: g → h` satisfies `f([x,y]_g) = [f(x), f(y)]_h` on basis pairs.
pub fn is_hom<F: Field>(f: &LinearMap<F>, g: &LeibnizAlgebra<F>, h: &LeibnizAlgebra<F>) -> Result<bool> {
    if f.rows() != h.dim() || f.cols() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, algebras have dims {} -> {}",
            f.rows(),
            f.cols(),
            g.dim(),
            h.dim()
        )));
    }
    if g.field() != h.field() {
        return Err(FieldError::Mismatch(F::kind(g.field()), F::kind(h.field())).into());
    }
    let images: Vec<Vec<F>> = (0..g.dim()).map(|j| f.column(j)).collect();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let lhs = f.apply(&g.bracket_basis(i, j));
            let rhs = h.bracket(&images[i], &images[j]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The current algebra `h ⊗ A` on the basis `e_i ⊗ f_a` (index `i * m + a`)
/// with `[e_i⊗f_a, e_j⊗f_b] = [e_i, e_j] ⊗ f_a f_b`.
pub fn current_algebra<F: Field>(h: &LeibnizAlgebra<F>, a: &CommutativeAlgebra<F>) -> Result<LeibnizAlgebra<F>> {
    if h.field() != a.field() {
        return Err(FieldError::Mismatch(F::kind(h.field()), F::kind(a.field())).into());
    }
    let m = a.dim();
    let mut entries = Vec::new();
    for (&(i, j), bracket) in h.nonzero_brackets() {
        for x in 0..m {
            for y in 0..m {
                let prod = a.product_basis(x, y);
                for (c, mu) in prod.iter().enumerate() {
                    if mu.is_zero() {
                        continue;
                    }
                    for (&s, t) in bracket {
                        entries.push((i * m + x, j * m + y, s * m + c, t.clone() * mu.clone()));
                    }
                }
            }
        }
    }
    let mut out = LeibnizAlgebra::candidate(h.dim() * m, h.field().clone(), entries)?;
    if let Some(name) = h.name() {
        out = out.with_name(format!("{name}⊗A{m}"));
    }
    Ok(out)
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["abelian(n)", "aff2", "sl2", "gl(m)", "heisenberg"];

/// Parse a builtin name such as `sl2`, `abelian(3)` or `gl(2)`.
pub fn builtin<F: Field>(name: &str, field: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    let name = name.trim();
    let param = |prefix: &str| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?;
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        Some(
            inner
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("{name}: expected a positive integer"))),
        )
    };
    match name {
        "aff2" => Ok(aff2(field)),
        "sl2" => Ok(sl2(field)),
        "heisenberg" => Ok(heisenberg(field)),
        _ => {
            if let Some(n) = param("abelian") {
                abelian(n?, field)
            } else if let Some(m) = param("gl") {
                gl(m?, field)
            } else {
                Err(Error::UnknownBuiltin(name.to_string()))
            }
        }
    }
}

fn from_ints<F: Field>(dim: usize, field: &F::Desc, entries: &[(usize, usize, usize, i64)]) -> LeibnizAlgebra<F> {
    LeibnizAlgebra::candidate(
        dim,
        field.clone(),
        entries.iter().map(|&(i, j, s, c)| (i, j, s, F::from_i64(c, field))),
    )
    .expect("builtin constants are in range")
}

pub fn abelian<F: Field>(n: usize, field: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("abelian(n) needs n >= 1".into()));
    }
    Ok(from_ints(n, field, &[]).with_name(format!("abelian({n})")))
}

/// `[e1, e2] = e1`.
pub fn aff2<F: Field>(field: &F::Desc) -> LeibnizAlgebra<F> {
    from_ints(2, field, &[(0, 1, 0, 1), (1, 0, 0, -1)]).with_name("aff2")
}

/// `[e1, e2] = e3`, `[e3, e2] = -2 e2`, `[e3, e1] = 2 e1` and antisymmetric mates.
pub fn sl2<F: Field>(field: &F::Desc) -> LeibnizAlgebra<F> {
    from_ints(
        3,
        field,
        &[
            (0, 1, 2, 1),
            (1, 0, 2, -1),
            (2, 1, 1, -2),
            (1, 2, 1, 2),
            (2, 0, 0, 2),
            (0, 2, 0, -2),
        ],
    )
    .with_name("sl2")
}

/// `[e1, e2] = e3`, `e3` central.
pub fn heisenberg<F: Field>(field: &F::Desc) -> LeibnizAlgebra<F> {
    from_ints(3, field, &[(0, 1, 2, 1), (1, 0, 2, -1)]).with_name("heisenberg")
}

/// Commutator on the matrix units `E_{ab}` (index `a * m + b`):
/// `[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`.
pub fn gl<F: Field>(m: usize, field: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    if m == 0 {
        return Err(Error::InvalidParameter("gl(m) needs m >= 1".into()));
    }
    let idx = |a: usize, b: usize| a * m + b;
    let mut entries = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if b == c {
                        entries.push((idx(a, b), idx(c, d), idx(a, d), 1));
                    }
                    if d == a {
                        entries.push((idx(a, b), idx(c, d), idx(c, b), -1));
                    }
                }
            }
        }
    }
    Ok(from_ints(m * m, field, &entries).with_name(format!("gl({m})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField};
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn builtins_satisfy_leibniz() {
        for name in ["abelian(3)", "aff2", "sl2", "gl(2)", "gl(3)", "heisenberg"] {
            let h: LeibnizAlgebra<Q> = builtin(name, &()).unwrap();
            assert!(h.check_leibniz().holds(), "{name}");
            assert!(h.check_lie(), "{name}");
        }
        let f2 = PrimeField::new(2).unwrap();
        let h: LeibnizAlgebra<Fp> = builtin("sl2", &f2).unwrap();
        assert!(h.check_leibniz().holds());
    }

    #[test]
    fn builtin_constants() {
        let a: LeibnizAlgebra<Q> = aff2(&());
        assert_eq!(a.dim(), 2);
        assert_eq!(a.tau(0, 1, 0), qi(1));
        assert_eq!(a.tau(1, 0, 0), qi(-1));
        let s: LeibnizAlgebra<Q> = sl2(&());
        assert_eq!(s.tau(0, 1, 2), qi(1));
        assert_eq!(s.tau(2, 1, 1), qi(-2));
        assert_eq!(s.tau(2, 0, 0), qi(2));
        let g: LeibnizAlgebra<Q> = gl(2, &()).unwrap();
        // [E11, E12] = E12, [E12, E21] = E11 - E22
        assert_eq!(g.bracket_basis(0, 1), vec![qi(0), qi(1), qi(0), qi(0)]);
        assert_eq!(g.bracket_basis(1, 2), vec![qi(1), qi(0), qi(0), qi(-1)]);
    }

    #[test]
    fn builtin_name_errors() {
        assert!(matches!(builtin::<Q>("so3", &()), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(
            builtin::<Q>("abelian(x)", &()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(builtin::<Q>("gl(0)", &()), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn one_dim_self_bracket_violates_leibniz() {
        let h = LeibnizAlgebra::<Q>::candidate(1, (), [(0, 0, 0, qi(1))]).unwrap();
        assert_eq!(h.check_leibniz().violations, vec![(1, 1, 1)]);
        assert!(matches!(h.validated(), Err(Error::LeibnizViolation(_))));
    }

    #[test]
    fn non_lie_leibniz_algebra() {
        // [e1, e1] = e2
        let h = LeibnizAlgebra::<Q>::new(2, (), [(0, 0, 1, qi(1))]).unwrap();
        assert!(h.check_leibniz().holds());
        assert!(!h.check_lie());
    }

    #[test]
    fn derived_subalgebras() {
        assert_eq!(abelian::<Q>(3, &()).unwrap().derived_subalgebra().cols(), 0);
        assert_eq!(sl2::<Q>(&()).derived_subalgebra().cols(), 3);
        let d = aff2::<Q>(&()).derived_subalgebra();
        assert_eq!(d, Matrix::from_rows(vec![vec![qi(1)], vec![qi(0)]]).unwrap());
        assert_eq!(heisenberg::<Q>(&()).derived_subalgebra().cols(), 1);
    }

    #[test]
    fn homomorphisms_of_aff2_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let h: LeibnizAlgebra<Fp> = aff2(&f2);
        let e = |x| f2.element(x);
        let good = Matrix::from_rows(vec![vec![e(1), e(1)], vec![e(0), e(1)]]).unwrap();
        assert!(is_hom(&good, &h, &h).unwrap());
        let bad = Matrix::from_rows(vec![vec![e(1), e(0)], vec![e(0), e(0)]]).unwrap();
        assert!(!is_hom(&bad, &h, &h).unwrap());
        assert!(is_hom(&Matrix::zeros(2, 2, &f2), &h, &h).unwrap());
        assert!(is_hom(&Matrix::identity(2, &f2), &h, &h).unwrap());
        assert!(matches!(
            is_hom(&Matrix::identity(3, &f2), &h, &h),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn current_algebra_examples() {
        let h: LeibnizAlgebra<Q> = aff2(&());
        let k = CommutativeAlgebra::<Q>::ground(&());
        assert!(current_algebra(&h, &k).unwrap().same_constants(&h));

        let dual = CommutativeAlgebra::<Q>::truncated(2, &()).unwrap();
        let c = current_algebra(&h, &dual).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(c.check_leibniz().holds());
        // [e1⊗1, e2⊗t] = e1⊗t ; index i*m + a
        assert_eq!(c.bracket_basis(0, 3), vec![qi(0), qi(1), qi(0), qi(0)]);
        // derived: dim h' * dim(A·A) = 1 * 2
        assert_eq!(c.derived_subalgebra().cols(), 2);

        let ab = abelian::<Q>(2, &()).unwrap();
        let c = current_algebra(&ab, &dual).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.nonzero_brackets().count(), 0);
    }
}
