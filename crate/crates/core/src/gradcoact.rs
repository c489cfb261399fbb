//! Finite abelian groups, the bialgebras `k[G]` and `k[G]*`, gradings and
//! group actions as bialgebra maps out of the universal algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::homspace::{enumerate_automorphisms, Budget};
use crate::leibniz::LeibnizAlgebra;
use crate::linalg::Matrix;
use crate::poly::Evaluate;
use crate::universal::Presentation;

/// `Z_{m_1} x … x Z_{m_k}`; elements are residue tuples, indexed in
/// lexicographic order (the first factor is most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor Z{m}: orders must be at least 2"
            )));
        }
        let order = factors.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m));
        match order {
            Some(o) if o <= 1 << 20 => Ok(FiniteAbelianGroup { factors }),
            _ => Err(Error::InvalidGroup("group order above 2^20".into())),
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// `"Z2"`, `"Z2xZ4"`; `"1"` is the trivial group.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" {
            return Ok(Self::trivial());
        }
        let factors = t
            .split(['x', '×'])
            .map(|part| {
                part.trim()
                    .strip_prefix('Z')
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidGroup(format!("cannot parse {part:?} in {text:?}; expected Zm")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Residues of the element with the given index.
    pub fn residues(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (k, &m) in self.factors.iter().enumerate().rev() {
            out[k] = index as u64 % m;
            index /= m as usize;
        }
        out
    }

    pub fn index(&self, residues: &[u64]) -> Result<usize> {
        if residues.len() != self.factors.len() || residues.iter().zip(&self.factors).any(|(r, m)| r >= m) {
            return Err(Error::InvalidGroup(format!("{residues:?} is not an element of {self}")));
        }
        Ok(residues
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&r, &m)| acc * m as usize + r as usize))
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let sum: Vec<u64> = ra
            .iter()
            .zip(&rb)
            .zip(&self.factors)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        self.index(&sum).expect("residues are reduced")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let r: Vec<u64> = self
            .residues(a)
            .iter()
            .zip(&self.factors)
            .map(|(x, m)| (m - x) % m)
            .collect();
        self.index(&r).expect("residues are reduced")
    }

    /// Index of the generator of the `k`-th cyclic factor.
    pub fn generator(&self, k: usize) -> usize {
        let mut r = vec![0; self.factors.len()];
        r[k] = 1;
        self.index(&r).expect("generator residues")
    }

    pub fn element_name(&self, index: usize) -> String {
        let r: Vec<String> = self.residues(index).iter().map(u64::to_string).collect();
        format!("({})", r.join(","))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Which bialgebra structure a [`GroupAlgebraElement`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupBialgebra {
    /// `k[G]`: basis `G`, `g h = gh`, `Δ(g) = g ⊗ g`, `ε(g) = 1`.
    GroupAlgebra,
    /// `k[G]*`: dual basis `p_g`, `p_g p_h = δ_{g,h} p_g`,
    /// `Δ(p_g) = Σ_{uv=g} p_u ⊗ p_v`, `ε(p_g) = δ_{g,e}`.
    Dual,
}

impl GroupBialgebra {
    pub fn name(&self) -> &'static str {
        match self {
            GroupBialgebra::GroupAlgebra => "group_algebra",
            GroupBialgebra::Dual => "dual",
        }
    }
}

/// Element `Σ_g c_g b_g` of `k[G]` or `k[G]*`, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement<F: Field> {
    kind: GroupBialgebra,
    group: Arc<FiniteAbelianGroup>,
    field: F::Desc,
    coeffs: BTreeMap<usize, F>,
}

/// Sparse element of `B ⊗ B` keyed by pairs of basis indices.
pub type TensorElement<F> = BTreeMap<(usize, usize), F>;

fn add_into<K: Ord, F: Field>(map: &mut BTreeMap<K, F>, key: K, c: F) {
    let v = match map.remove(&key) {
        Some(x) => x + c,
        None => c,
    };
    if !v.is_zero() {
        map.insert(key, v);
    }
}

impl<F: Field> GroupAlgebraElement<F> {
    pub fn zero(kind: GroupBialgebra, group: &Arc<FiniteAbelianGroup>, field: &F::Desc) -> Self {
        GroupAlgebraElement {
            kind,
            group: group.clone(),
            field: field.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(kind: GroupBialgebra, group: &Arc<FiniteAbelianGroup>, field: &F::Desc) -> Self {
        let mut x = Self::zero(kind, group, field);
        match kind {
            GroupBialgebra::GroupAlgebra => x.coeffs.insert(group.identity(), F::one(field)),
            GroupBialgebra::Dual => {
                for g in 0..group.order() {
                    x.coeffs.insert(g, F::one(field));
                }
                None
            }
        };
        x
    }

    /// `c · b_g`.
    pub fn basis(kind: GroupBialgebra, group: &Arc<FiniteAbelianGroup>, g: usize, c: F) -> Self {
        let field = c.desc();
        let mut x = Self::zero(kind, group, &field);
        if !c.is_zero() {
            x.coeffs.insert(g, c);
        }
        x
    }

    pub fn from_coeffs(
        kind: GroupBialgebra,
        group: &Arc<FiniteAbelianGroup>,
        field: &F::Desc,
        coeffs: impl IntoIterator<Item = (usize, F)>,
    ) -> Result<Self> {
        let mut x = Self::zero(kind, group, field);
        for (g, c) in coeffs {
            if g >= group.order() {
                return Err(Error::InvalidGroup(format!("element index {g} outside {}", group)));
            }
            add_into(&mut x.coeffs, g, c);
        }
        Ok(x)
    }

    pub fn kind(&self) -> GroupBialgebra {
        self.kind
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, F> {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> F {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| F::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Evaluate::add(self, &other.scale(&-F::one(&self.field)))
    }

    pub fn delta(&self) -> TensorElement<F> {
        let mut out = BTreeMap::new();
        for (&g, c) in &self.coeffs {
            match self.kind {
                GroupBialgebra::GroupAlgebra => add_into(&mut out, (g, g), c.clone()),
                GroupBialgebra::Dual => {
                    for u in 0..self.group.order() {
                        let v = self.group.op(self.group.inverse(u), g);
                        add_into(&mut out, (u, v), c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn counit(&self) -> F {
        match self.kind {
            GroupBialgebra::GroupAlgebra => self
                .coeffs
                .values()
                .fold(F::zero(&self.field), |acc, c| acc + c.clone()),
            GroupBialgebra::Dual => self.coeff(self.group.identity()),
        }
    }

    pub fn tensor(&self, other: &Self) -> TensorElement<F> {
        let mut out = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                add_into(&mut out, (a, b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for GroupAlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let symbol = match self.kind {
            GroupBialgebra::GroupAlgebra => "",
            GroupBialgebra::Dual => "p",
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&g, c)| format!("{c}*{symbol}{}", self.group.element_name(g)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> Evaluate<F> for GroupAlgebraElement<F> {
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&g, c) in &rhs.coeffs {
            add_into(&mut out.coeffs, g, c.clone());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.kind, &self.group, &self.field);
        for (&a, x) in &self.coeffs {
            match self.kind {
                GroupBialgebra::GroupAlgebra => {
                    for (&b, y) in &rhs.coeffs {
                        add_into(&mut out.coeffs, self.group.op(a, b), x.clone() * y.clone());
                    }
                }
                GroupBialgebra::Dual => {
                    if let Some(y) = rhs.coeffs.get(&a) {
                        add_into(&mut out.coeffs, a, x.clone() * y.clone());
                    }
                }
            }
        }
        out
    }

    fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.kind, &self.group, &self.field);
        if !c.is_zero() {
            for (&g, x) in &self.coeffs {
                out.coeffs.insert(g, x.clone() * c.clone());
            }
        }
        out
    }
}

/// Images `θ(x_si)` of the generators of `A(h)` in `k[G]` or `k[G]*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraHom<F: Field> {
    n: usize,
    kind: GroupBialgebra,
    group: Arc<FiniteAbelianGroup>,
    images: Vec<GroupAlgebraElement<F>>,
}

impl<F: Field> BialgebraHom<F> {
    /// `images[s * n + i] = θ(x_si)`; all in the same bialgebra.
    pub fn new(n: usize, images: Vec<GroupAlgebraElement<F>>) -> Result<Self> {
        if images.len() != n * n || n == 0 {
            return Err(Error::InvalidBialgebraHom(format!(
                "expected {} images, got {}",
                n * n,
                images.len()
            )));
        }
        let (kind, group) = (images[0].kind, images[0].group.clone());
        if images.iter().any(|x| x.kind != kind || x.group != group) {
            return Err(Error::InvalidBialgebraHom("images live in different bialgebras".into()));
        }
        Ok(BialgebraHom { n, kind, group, images })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupBialgebra {
        self.kind
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    /// `θ(x_si)`, 0-based.
    pub fn image(&self, s: usize, i: usize) -> &GroupAlgebraElement<F> {
        &self.images[s * self.n + i]
    }

    pub fn images(&self) -> &[GroupAlgebraElement<F>] {
        &self.images
    }

    /// Coefficient matrix `C_g[s][i] = ⟨θ(x_si), b_g⟩`.
    pub fn coefficient_matrix(&self, g: usize, field: &F::Desc) -> Matrix<F> {
        let mut m = Matrix::zeros(self.n, self.n, field);
        for s in 0..self.n {
            for i in 0..self.n {
                m.set(s, i, self.image(s, i).coeff(g));
            }
        }
        m
    }

    /// `W Θ W⁻¹` for an invertible scalar matrix `W`.
    pub fn conjugate(&self, w: &Matrix<F>) -> Result<Self> {
        let winv = w
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("conjugating matrix is singular".into()))?;
        let left = matrix_times(w, self);
        let images = (0..self.n * self.n)
            .map(|k| {
                let (s, i) = (k / self.n, k % self.n);
                (0..self.n).fold(self.zero(), |acc, t| {
                    Evaluate::add(&acc, &left[s * self.n + t].scale(winv.get(t, i)))
                })
            })
            .collect();
        BialgebraHom::new(self.n, images)
    }

    fn zero(&self) -> GroupAlgebraElement<F> {
        GroupAlgebraElement::zero(self.kind, &self.group, &self.images[0].field)
    }
}

/// Entries of `W Θ` for a scalar matrix `W`.
fn matrix_times<F: Field>(w: &Matrix<F>, theta: &BialgebraHom<F>) -> Vec<GroupAlgebraElement<F>> {
    let n = theta.n;
    (0..n * n)
        .map(|k| {
            let (s, i) = (k / n, k % n);
            (0..n).fold(theta.zero(), |acc, t| {
                Evaluate::add(&acc, &theta.image(t, i).scale(w.get(s, t)))
            })
        })
        .collect()
}

/// Failed checks of [`verify_bialgebra_hom`], empty when `θ` is a bialgebra map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BihomReport {
    pub failures: Vec<String>,
}

impl BihomReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Algebra-map condition (every universal polynomial vanishes) and the
/// coalgebra conditions `Δθ(x_ij) = Σ_s θ(x_is) ⊗ θ(x_sj)`, `εθ(x_ij) = δ_ij`.
pub fn verify_bialgebra_hom<F: Field>(theta: &BialgebraHom<F>, pres: &Presentation<F>) -> Result<BihomReport> {
    if !pres.is_square() {
        return Err(Error::NotSquare);
    }
    let n = pres.h().dim();
    let field = pres.ring().field.clone();
    if theta.n != n {
        return Err(Error::InvalidBialgebraHom(format!(
            "hom has {} generators per row, algebra has dim {n}",
            theta.n
        )));
    }
    if theta.images[0].field != field {
        return Err(Error::InvalidBialgebraHom(
            "field of the images differs from the presentation".into(),
        ));
    }
    let mut failures = Vec::new();
    let one = GroupAlgebraElement::one(theta.kind, &theta.group, &field);
    for p in pres.universal_polys() {
        if !p.poly.eval(&theta.images, &one).is_zero() {
            failures.push(format!("P({},{},{}) does not vanish", p.a, p.i, p.j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = theta.image(i, j).delta();
            let mut rhs = BTreeMap::new();
            for s in 0..n {
                for (k, c) in theta.image(i, s).tensor(theta.image(s, j)) {
                    add_into(&mut rhs, k, c);
                }
            }
            if lhs != rhs {
                failures.push(format!("comultiplication fails on x{}{}", i + 1, j + 1));
            }
            let expected = if i == j { F::one(&field) } else { F::zero(&field) };
            if theta.image(i, j).counit() != expected {
                failures.push(format!("counit fails on x{}{}", i + 1, j + 1));
            }
        }
    }
    Ok(BihomReport { failures })
}

/// `h = ⊕_σ h_σ`; `components[σ]` is a reduced column echelon basis of
/// `h_σ` (possibly with no columns), one entry per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading<F: Field> {
    group: Arc<FiniteAbelianGroup>,
    components: Vec<Matrix<F>>,
    degree_map: Option<Vec<usize>>,
}

impl<F: Field> Grading<F> {
    /// Checks the direct-sum and bracket-compatibility conditions.
    pub fn new(h: &LeibnizAlgebra<F>, group: &Arc<FiniteAbelianGroup>, components: Vec<Matrix<F>>) -> Result<Self> {
        let field = h.field();
        if components.len() != group.order() {
            return Err(Error::InvalidGrading(format!(
                "{} components for a group of order {}",
                components.len(),
                group.order()
            )));
        }
        if components.iter().any(|c| c.rows() != h.dim()) {
            return Err(Error::InvalidGrading("component vectors have the wrong length".into()));
        }
        let components: Vec<Matrix<F>> = components.iter().map(|c| c.column_space(field)).collect();
        let all = components
            .iter()
            .try_fold(Matrix::zeros(h.dim(), 0, field), |acc, c| acc.hconcat(c))?;
        if all.cols() != h.dim() || !all.is_invertible() {
            return Err(Error::InvalidGrading(
                "components do not form a direct sum decomposition".into(),
            ));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let target = &components[group.op(a, b)];
                for x in 0..components[a].cols() {
                    for y in 0..components[b].cols() {
                        let br = h.bracket(&components[a].column(x), &components[b].column(y));
                        if !target.spans(&br) {
                            return Err(Error::InvalidGrading(format!(
                                "[h_{}, h_{}] is not contained in h_{}",
                                group.element_name(a),
                                group.element_name(b),
                                group.element_name(group.op(a, b))
                            )));
                        }
                    }
                }
            }
        }
        let mut grading = Grading {
            group: group.clone(),
            components,
            degree_map: None,
        };
        grading.degree_map = grading.find_degree_map(h.dim(), field);
        Ok(grading)
    }

    /// The grading with `e_i ∈ h_{d(i)}`.
    pub fn from_degree_map(h: &LeibnizAlgebra<F>, group: &Arc<FiniteAbelianGroup>, degrees: &[usize]) -> Result<Self> {
        if degrees.len() != h.dim() || degrees.iter().any(|&d| d >= group.order()) {
            return Err(Error::InvalidGrading("degree map has the wrong length or range".into()));
        }
        let components = (0..group.order())
            .map(|g| {
                let cols: Vec<Vec<F>> = (0..h.dim())
                    .filter(|&i| degrees[i] == g)
                    .map(|i| h.basis_vector(i))
                    .collect();
                Matrix::from_columns(h.dim(), &cols, h.field())
            })
            .collect();
        Self::new(h, group, components)
    }

    fn find_degree_map(&self, n: usize, field: &F::Desc) -> Option<Vec<usize>> {
        (0..n)
            .map(|i| {
                let mut e = vec![F::zero(field); n];
                e[i] = F::one(field);
                self.components.iter().position(|c| c.spans(&e))
            })
            .collect()
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn component(&self, g: usize) -> &Matrix<F> {
        &self.components[g]
    }

    pub fn components(&self) -> &[Matrix<F>] {
        &self.components
    }

    /// `Some(d)` when every basis vector `e_i` is homogeneous of degree `d[i]`.
    pub fn degree_map(&self) -> Option<&[usize]> {
        self.degree_map.as_deref()
    }

    pub fn is_diagonal(&self) -> bool {
        self.degree_map.is_some()
    }

    /// Dimensions of the components, indexed by group element.
    pub fn dimensions(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::cols).collect()
    }

    /// Image under an automorphism `w`: components `w(h_σ)`.
    pub fn conjugate(&self, h: &LeibnizAlgebra<F>, w: &Matrix<F>) -> Result<Self> {
        let comps = self.components.iter().map(|c| w.mul(c)).collect::<Result<Vec<_>>>()?;
        Self::new(h, &self.group, comps)
    }
}

/// Every degree map `d` with `τ_{i,j}^s ≠ 0 ⇒ d(s) = d(i) d(j)`, as
/// gradings, in lexicographic order of `(d(1), …, d(n))`.
pub fn diagonal_gradings<F: Field>(
    h: &LeibnizAlgebra<F>,
    group: &Arc<FiniteAbelianGroup>,
    budget: Budget,
) -> Result<Vec<Grading<F>>> {
    let n = h.dim();
    budget.check(group.order() as u64, n)?;
    let constraints: Vec<(usize, usize, usize)> = h
        .nonzero_brackets()
        .flat_map(|(&(i, j), entry)| entry.keys().map(move |&s| (i, j, s)))
        .collect();
    let mut out = Vec::new();
    let mut d = vec![0usize; n];
    loop {
        if constraints.iter().all(|&(i, j, s)| d[s] == group.op(d[i], d[j])) {
            out.push(Grading::from_degree_map(h, group, &d)?);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            d[k] += 1;
            if d[k] < group.order() {
                break;
            }
            d[k] = 0;
        }
    }
}

/// `θ(x_si) = Σ_k B[s][k] B⁻¹[k][i] σ_k` where the columns `b_k` of `B`
/// run through homogeneous bases of the components.
pub fn grading_to_bihom<F: Field>(gr: &Grading<F>, pres: &Presentation<F>) -> Result<BialgebraHom<F>> {
    let n = pres.h().dim();
    let field = pres.ring().field.clone();
    let mut columns = Vec::new();
    let mut degrees = Vec::new();
    for (g, comp) in gr.components.iter().enumerate() {
        for c in 0..comp.cols() {
            columns.push(comp.column(c));
            degrees.push(g);
        }
    }
    if columns.len() != n {
        return Err(Error::InvalidGrading(format!(
            "grading of a {}-dimensional space used with dim {n}",
            columns.len()
        )));
    }
    let b = Matrix::from_columns(n, &columns, &field);
    let binv = b
        .inverse()
        .ok_or_else(|| Error::InvalidGrading("components are not independent".into()))?;
    let mut images = Vec::with_capacity(n * n);
    for s in 0..n {
        for i in 0..n {
            let coeffs = (0..n).map(|k| (degrees[k], b.get(s, k).clone() * binv.get(k, i).clone()));
            images.push(GroupAlgebraElement::from_coeffs(
                GroupBialgebra::GroupAlgebra,
                &gr.group,
                &field,
                coeffs,
            )?);
        }
    }
    let theta = BialgebraHom::new(n, images)?;
    let report = verify_bialgebra_hom(&theta, pres)?;
    if !report.holds() {
        return Err(Error::InvalidGrading(report.failures.join("; ")));
    }
    Ok(theta)
}

/// `h_σ = {x : (id ⊗ θ) η(x) = x ⊗ σ}`: vectors fixed by `C_σ` and killed by
/// every other coefficient matrix.
pub fn bihom_to_grading<F: Field>(theta: &BialgebraHom<F>, pres: &Presentation<F>) -> Result<Grading<F>> {
    if theta.kind != GroupBialgebra::GroupAlgebra {
        return Err(Error::InvalidBialgebraHom("gradings come from maps into k[G]".into()));
    }
    let report = verify_bialgebra_hom(theta, pres)?;
    if !report.holds() {
        return Err(Error::InvalidBialgebraHom(report.failures.join("; ")));
    }
    let n = pres.h().dim();
    let field = pres.ring().field.clone();
    let group = &theta.group;
    let coeff: Vec<Matrix<F>> = (0..group.order())
        .map(|g| theta.coefficient_matrix(g, &field))
        .collect();
    let ident = Matrix::<F>::identity(n, &field);
    let components = (0..group.order())
        .map(|sigma| {
            let mut rows = Vec::new();
            for (g, c) in coeff.iter().enumerate() {
                for r in 0..n {
                    let row: Vec<F> = (0..n)
                        .map(|k| {
                            if g == sigma {
                                c.get(r, k).clone() - ident.get(r, k).clone()
                            } else {
                                c.get(r, k).clone()
                            }
                        })
                        .collect();
                    rows.push(row);
                }
            }
            let kernel = Matrix::from_rows(rows)?.kernel(&field);
            Ok(Matrix::from_columns(n, &kernel, &field))
        })
        .collect::<Result<Vec<_>>>()?;
    Grading::new(pres.h(), group, components)
}

/// Automorphism `w` (from `autos`) with `W Θ1 = Θ2 W`, i.e. `w(h_σ^1) = h_σ^2`.
pub fn gradings_isomorphic<F: Field>(
    t1: &BialgebraHom<F>,
    t2: &BialgebraHom<F>,
    autos: &[Matrix<F>],
) -> Option<Matrix<F>> {
    if t1.n != t2.n || t1.group != t2.group || t1.kind != t2.kind {
        return None;
    }
    autos
        .iter()
        .find(|w| {
            let left = matrix_times(w, t1);
            let right = (0..t2.n * t2.n).map(|k| {
                let (s, i) = (k / t2.n, k % t2.n);
                (0..t2.n).fold(t2.zero(), |acc, t| {
                    Evaluate::add(&acc, &t2.image(s, t).scale(w.get(t, i)))
                })
            });
            left.iter().zip(right).all(|(a, b)| *a == b)
        })
        .cloned()
}

/// One isomorphism class of gradings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingClass<F: Field> {
    pub representative: Grading<F>,
    pub members: Vec<Grading<F>>,
}

/// Classes of the diagonal gradings and all their conjugates under `Aut(h)`.
/// Gradings without a homogeneous basis in their orbit are out of scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification<F: Field> {
    pub classes: Vec<GradingClass<F>>,
    pub automorphisms: usize,
    pub diagonal: usize,
}

/// Orbits of the diagonal gradings under the automorphism group over `F_p`.
pub fn classify_gradings(
    h: &LeibnizAlgebra<Fp>,
    group: &Arc<FiniteAbelianGroup>,
    budget: Budget,
) -> Result<Classification<Fp>> {
    let diagonal = diagonal_gradings(h, group, budget)?;
    let autos = enumerate_automorphisms(h, budget)?;
    let mut seen: Vec<Grading<Fp>> = diagonal.clone();
    for gr in &diagonal {
        for w in &autos {
            let c = gr.conjugate(h, w)?;
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
    }
    let mut assigned = vec![false; seen.len()];
    let mut classes = Vec::new();
    for k in 0..seen.len() {
        if assigned[k] {
            continue;
        }
        let mut members = Vec::new();
        for w in &autos {
            let c = seen[k].conjugate(h, w)?;
            if let Some(pos) = seen.iter().position(|x| *x == c) {
                if !assigned[pos] {
                    assigned[pos] = true;
                    members.push(seen[pos].clone());
                }
            }
        }
        classes.push(GradingClass {
            representative: seen[k].clone(),
            members,
        });
    }
    Ok(Classification {
        classes,
        automorphisms: autos.len(),
        diagonal: diagonal.len(),
    })
}

/// A homomorphism `φ: G → Aut(h)`, stored as `images[g] = φ(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction<F: Field> {
    group: Arc<FiniteAbelianGroup>,
    images: Vec<Matrix<F>>,
}

impl<F: Field> GroupAction<F> {
    /// Checks `φ(e) = id`, `φ(gh) = φ(g) φ(h)` and that every `φ(g)` is an
    /// automorphism.
    pub fn new(group: &Arc<FiniteAbelianGroup>, images: Vec<Matrix<F>>, pres: &Presentation<F>) -> Result<Self> {
        if !pres.is_square() {
            return Err(Error::NotSquare);
        }
        let n = pres.h().dim();
        let field = pres.ring().field.clone();
        if images.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        for (g, m) in images.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidAction(format!(
                    "image of {} is not {n}x{n}",
                    group.element_name(g)
                )));
            }
            if !m.is_invertible() || !crate::homspace::verify_character(m, pres)? {
                return Err(Error::InvalidAction(format!(
                    "image of {} is not an automorphism",
                    group.element_name(g)
                )));
            }
        }
        if images[group.identity()] != Matrix::identity(n, &field) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if images[group.op(a, b)] != images[a].mul(&images[b])? {
                    return Err(Error::InvalidAction(format!(
                        "phi({}) != phi({}) phi({})",
                        group.element_name(group.op(a, b)),
                        group.element_name(a),
                        group.element_name(b)
                    )));
                }
            }
        }
        Ok(GroupAction {
            group: group.clone(),
            images,
        })
    }

    /// The action with `φ(generator k) = generators[k]`.
    pub fn from_generators(
        group: &Arc<FiniteAbelianGroup>,
        generators: &[Matrix<F>],
        pres: &Presentation<F>,
    ) -> Result<Self> {
        if generators.len() != group.factors().len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} factors",
                generators.len(),
                group.factors().len()
            )));
        }
        let n = pres.h().dim();
        let field = pres.ring().field.clone();
        let images = (0..group.order())
            .map(|g| {
                let mut m = Matrix::identity(n, &field);
                for (k, r) in group.residues(g).into_iter().enumerate() {
                    for _ in 0..r {
                        m = m.mul(&generators[k])?;
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, images, pres)
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn image(&self, g: usize) -> &Matrix<F> {
        &self.images[g]
    }

    pub fn images(&self) -> &[Matrix<F>] {
        &self.images
    }
}

/// `θ(x_si) = Σ_g φ(g)[s][i] p_g` in `k[G]*`.
pub fn action_to_bihom<F: Field>(phi: &GroupAction<F>, pres: &Presentation<F>) -> Result<BialgebraHom<F>> {
    let n = pres.h().dim();
    let field = pres.ring().field.clone();
    let mut images = Vec::with_capacity(n * n);
    for s in 0..n {
        for i in 0..n {
            let coeffs = phi.images.iter().enumerate().map(|(g, m)| (g, m.get(s, i).clone()));
            images.push(GroupAlgebraElement::from_coeffs(
                GroupBialgebra::Dual,
                &phi.group,
                &field,
                coeffs,
            )?);
        }
    }
    let theta = BialgebraHom::new(n, images)?;
    let report = verify_bialgebra_hom(&theta, pres)?;
    if !report.holds() {
        return Err(Error::InvalidAction(report.failures.join("; ")));
    }
    Ok(theta)
}

/// `φ(g)[s][i] = ⟨θ(x_si), g⟩`.
pub fn bihom_to_action<F: Field>(theta: &BialgebraHom<F>, pres: &Presentation<F>) -> Result<GroupAction<F>> {
    if theta.kind != GroupBialgebra::Dual {
        return Err(Error::InvalidAction("actions come from maps into k[G]*".into()));
    }
    let report = verify_bialgebra_hom(theta, pres)?;
    if !report.holds() {
        return Err(Error::InvalidAction(report.failures.join("; ")));
    }
    let field = pres.ring().field.clone();
    let images = (0..theta.group.order())
        .map(|g| theta.coefficient_matrix(g, &field))
        .collect();
    GroupAction::new(&theta.group, images, pres)
}

/// All actions of `G` on `h` over `F_p`, by generator images among the
/// automorphisms, in lexicographic order of those choices.
pub fn enumerate_actions(
    h: &LeibnizAlgebra<Fp>,
    group: &Arc<FiniteAbelianGroup>,
    budget: Budget,
) -> Result<Vec<GroupAction<Fp>>> {
    let pres = Presentation::build(h, h, crate::poly::MonomialOrder::DegRevLex)?;
    let autos = enumerate_automorphisms(h, budget)?;
    let k = group.factors().len();
    let combos = (autos.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if combos > budget.0 {
        return Err(Error::BudgetExceeded {
            candidates: combos,
            budget: budget.0,
        });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let gens: Vec<Matrix<Fp>> = choice.iter().map(|&c| autos[c].clone()).collect();
        if let Ok(action) = GroupAction::from_generators(group, &gens, &pres) {
            out.push(action);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < autos.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}
