//! JSON forms of algebras, polynomials, presentations, matrices, gradings,
//! bialgebra maps and group actions. Indices are 1-based; coefficients are
//! strings (`"3"`, `"-1/2"`) except matrix entries over `F_p`, which are
//! integer residues.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::gradcoact::{BialgebraHom, FiniteAbelianGroup, Grading, GroupAction, GroupAlgebraElement, GroupBialgebra};
use crate::leibniz::LeibnizAlgebra;
use crate::linalg::Matrix;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::universal::Presentation;

/// A coefficient as written in a file: a JSON integer or a `"n"`/`"n/d"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Integer(i64),
    Text(String),
}

impl Coefficient {
    pub fn to_field<F: Field>(&self, desc: &F::Desc) -> Result<F> {
        match self {
            Coefficient::Integer(n) => Ok(F::from_i64(*n, desc)),
            Coefficient::Text(t) => Ok(F::parse(t, desc)?),
        }
    }
}

/// `[i, j, [[s, coeff], ...]]`: `[e_i, e_j] = Σ coeff e_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry(pub usize, pub usize, pub Vec<(usize, Coefficient)>);

/// On-disk description of a Leibniz algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub field: FieldKind,
    #[serde(default)]
    pub lie_autocomplete: bool,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("algebra file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize")
    }

    /// Every nonzero structure constant, written out in full.
    pub fn from_algebra<F: Field>(h: &LeibnizAlgebra<F>, name: &str) -> Self {
        let brackets = h
            .nonzero_brackets()
            .map(|(&(i, j), entry)| {
                BracketEntry(
                    i + 1,
                    j + 1,
                    entry
                        .iter()
                        .map(|(&s, c)| (s + 1, Coefficient::Text(c.to_string())))
                        .collect(),
                )
            })
            .collect();
        AlgebraFile {
            name: name.to_string(),
            dim: h.dim(),
            field: F::kind(h.field()),
            lie_autocomplete: false,
            brackets,
        }
    }

    /// Structure constants without the Leibniz check, after antisymmetric
    /// completion when requested. Conflicting mates are an error.
    pub fn candidate<F: Field>(&self, desc: &F::Desc) -> Result<LeibnizAlgebra<F>> {
        if F::kind(desc) != self.field {
            return Err(Error::Input(format!(
                "file declares {} but {} was requested",
                self.field,
                F::kind(desc)
            )));
        }
        let mut declared: std::collections::BTreeMap<(usize, usize, usize), F> = std::collections::BTreeMap::new();
        for BracketEntry(i, j, terms) in &self.brackets {
            for (s, c) in terms {
                for &k in [i, j, s] {
                    if k == 0 || k > self.dim {
                        return Err(Error::InvalidAlgebra(format!("index {k} outside 1..{}", self.dim)));
                    }
                }
                let v: F = c.to_field(desc)?;
                let key = (i - 1, j - 1, s - 1);
                let total = match declared.remove(&key) {
                    Some(x) => x + v,
                    None => v,
                };
                declared.insert(key, total);
            }
        }
        let mut entries: Vec<(usize, usize, usize, F)> =
            declared.iter().map(|(&(i, j, s), c)| (i, j, s, c.clone())).collect();
        if self.lie_autocomplete {
            for (&(i, j, s), c) in &declared {
                if c.is_zero() {
                    continue;
                }
                if i == j {
                    return Err(Error::InvalidAlgebra(format!(
                        "[e{0}, e{0}] must vanish in a Lie algebra",
                        i + 1
                    )));
                }
                match declared.get(&(j, i, s)) {
                    Some(mate) if (mate.clone() + c.clone()).is_zero() => {}
                    Some(_) => {
                        return Err(Error::InvalidAlgebra(format!(
                            "[e{}, e{}] and [e{}, e{}] are not antisymmetric in e{}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1,
                            s + 1
                        )))
                    }
                    None => entries.push((j, i, s, -c.clone())),
                }
            }
        }
        Ok(LeibnizAlgebra::candidate(self.dim, desc.clone(), entries)?.with_name(self.name.clone()))
    }

    /// As [`AlgebraFile::candidate`], then the Leibniz identity is enforced.
    pub fn build<F: Field>(&self, desc: &F::Desc) -> Result<LeibnizAlgebra<F>> {
        self.candidate(desc)?.validated()
    }
}

pub fn coefficient_text<F: Field>(c: &F) -> String {
    c.to_string()
}

/// `[[[s, i, e], ...], "coeff"]` per term, leading term first; four-element
/// variable entries `[block, s, i, e]` on tensor grids.
pub fn polynomial_to_json<F: Field>(p: &Polynomial<F>) -> Value {
    let grid = p.ring().grid;
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let vars: Vec<Value> = m
                .support()
                .map(|(v, e)| {
                    let (b, s, i) = grid.coords(v);
                    if grid.blocks == 1 {
                        json!([s + 1, i + 1, e])
                    } else {
                        json!([b + 1, s + 1, i + 1, e])
                    }
                })
                .collect();
            json!([vars, coefficient_text(c)])
        })
        .collect();
    Value::Array(terms)
}

fn input<T>(what: &str) -> Result<T> {
    Err(Error::Input(what.to_string()))
}

fn as_index(v: &Value, bound: usize, what: &str) -> Result<usize> {
    match v.as_u64() {
        Some(k) if k >= 1 && (k as usize) <= bound => Ok(k as usize - 1),
        _ => input(&format!("{what} {v} outside 1..{bound}")),
    }
}

pub fn coefficient_from_json<F: Field>(v: &Value, desc: &F::Desc) -> Result<F> {
    let c: Coefficient =
        serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("coefficient {v}: {e}")))?;
    c.to_field(desc)
}

pub fn polynomial_from_json<F: Field>(v: &Value, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    let grid = ring.grid;
    let nv = ring.nvars();
    let Some(terms) = v.as_array() else {
        return input("polynomial must be an array of terms");
    };
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2);
        let Some(pair) = pair else {
            return input("term must be [variables, coefficient]");
        };
        let Some(vars) = pair[0].as_array() else {
            return input("term variables must be an array");
        };
        let mut exps = vec![0u32; nv];
        for var in vars {
            let parts = var.as_array().cloned().unwrap_or_default();
            let (b, rest) = match (grid.blocks, parts.len()) {
                (1, 3) => (0, &parts[..]),
                (k, 4) if k > 1 => (as_index(&parts[0], k, "block")?, &parts[1..]),
                _ => return input(&format!("variable entry {var} does not fit the ring")),
            };
            let s = as_index(&rest[0], grid.rows, "row")?;
            let i = as_index(&rest[1], grid.cols, "column")?;
            let Some(e) = rest[2].as_u64().and_then(|e| u32::try_from(e).ok()) else {
                return input("exponent must be a non-negative integer");
            };
            exps[grid.var(b, s, i)] += e;
        }
        out.push((
            Monomial::from_exponents(exps),
            coefficient_from_json(&pair[1], &ring.field)?,
        ));
    }
    Ok(Polynomial::from_terms(ring, out))
}

fn entry_json<F: Field>(c: &F) -> Value {
    let text = c.to_string();
    match F::kind(&c.desc()) {
        FieldKind::Prime { .. } => text.parse::<u64>().map(Value::from).unwrap_or(Value::String(text)),
        FieldKind::Rational => Value::String(text),
    }
}

/// Row-major array of rows.
pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(entry_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<F: Field>(v: &Value, desc: &F::Desc) -> Result<Matrix<F>> {
    let Some(rows) = v.as_array() else {
        return input("matrix must be an array of rows");
    };
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Input("matrix row must be an array".into()))?
                .iter()
                .map(|c| coefficient_from_json(c, desc))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| Error::Input(e.to_string()))
}

/// Universal polynomials and reduced Gröbner basis of a presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub h: String,
    pub g: String,
    pub dims: [usize; 2],
    pub field: FieldKind,
    pub order: String,
    pub universal_polys: Vec<IndexedPolyFile>,
    pub groebner_basis: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedPolyFile {
    pub index: [usize; 3],
    pub poly: Value,
}

impl PresentationFile {
    pub fn from_presentation<F: Field>(pres: &Presentation<F>) -> Self {
        PresentationFile {
            h: pres.h().name().unwrap_or("h").to_string(),
            g: pres.g().name().unwrap_or("g").to_string(),
            dims: [pres.h().dim(), pres.g().dim()],
            field: F::kind(&pres.ring().field),
            order: pres.order().name().to_string(),
            universal_polys: pres
                .universal_polys()
                .iter()
                .map(|p| IndexedPolyFile {
                    index: [p.a, p.i, p.j],
                    poly: polynomial_to_json(&p.poly),
                })
                .collect(),
            groebner_basis: pres
                .groebner_basis()
                .generators()
                .iter()
                .map(polynomial_to_json)
                .collect(),
        }
    }

    pub fn ring<F: Field>(&self, desc: &F::Desc) -> Result<Arc<PolyRing<F>>> {
        let order = MonomialOrder::from_name(&self.order)
            .ok_or_else(|| Error::Input(format!("unknown monomial order {:?}", self.order)))?;
        Ok(PolyRing::new(
            crate::poly::Grid::new(self.dims[0], self.dims[1]),
            order,
            desc.clone(),
        ))
    }

    pub fn groebner_polynomials<F: Field>(&self, ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>> {
        self.groebner_basis
            .iter()
            .map(|p| polynomial_from_json(p, ring))
            .collect()
    }
}

fn group_element_json(group: &FiniteAbelianGroup, g: usize) -> Value {
    json!(group.residues(g))
}

fn group_element_from_json(group: &FiniteAbelianGroup, v: &Value) -> Result<usize> {
    let residues: Vec<u64> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("group element {v}: {e}")))?;
    group.index(&residues).map_err(|e| Error::Input(e.to_string()))
}

fn group_from_json(v: &Value) -> Result<Arc<FiniteAbelianGroup>> {
    let Some(text) = v.as_str() else {
        return input("group must be a string such as \"Z2xZ4\"");
    };
    Ok(Arc::new(FiniteAbelianGroup::parse(text)?))
}

pub fn grading_to_json<F: Field>(gr: &Grading<F>) -> Value {
    let group = gr.group();
    let components: Vec<Value> = gr
        .components()
        .iter()
        .enumerate()
        .map(|(g, basis)| {
            let columns: Vec<Value> = (0..basis.cols())
                .map(|c| Value::Array(basis.column(c).iter().map(entry_json).collect()))
                .collect();
            json!({"element": group_element_json(group, g), "basis": columns})
        })
        .collect();
    let degree_map = gr
        .degree_map()
        .map(|d| Value::Array(d.iter().map(|&g| group_element_json(group, g)).collect()))
        .unwrap_or(Value::Null);
    json!({
        "group": group.to_string(),
        "components": components,
        "diagonal": gr.is_diagonal(),
        "degree_map": degree_map,
    })
}

/// Component bases are lists of column vectors.
pub fn grading_from_json<F: Field>(v: &Value, h: &LeibnizAlgebra<F>) -> Result<Grading<F>> {
    let group = group_from_json(&v["group"])?;
    let n = h.dim();
    let mut comps: Vec<Option<Matrix<F>>> = vec![None; group.order()];
    let Some(list) = v["components"].as_array() else {
        return input("grading needs a components array");
    };
    for c in list {
        let g = group_element_from_json(&group, &c["element"])?;
        let Some(cols) = c["basis"].as_array() else {
            return input("component basis must be an array of vectors");
        };
        let cols = cols
            .iter()
            .map(|col| {
                let m = matrix_from_json::<F>(&json!([col]), h.field())?;
                if m.cols() != n {
                    return input(&format!("basis vector of length {} in dimension {n}", m.cols()));
                }
                Ok(m.row(0).to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        comps[g] = Some(Matrix::from_columns(n, &cols, h.field()));
    }
    let comps = comps
        .into_iter()
        .map(|c| c.unwrap_or_else(|| Matrix::zeros(n, 0, h.field())))
        .collect();
    Grading::new(h, &group, comps)
}

fn element_to_json<F: Field>(x: &GroupAlgebraElement<F>) -> Value {
    Value::Array(
        x.coeffs()
            .iter()
            .map(|(&g, c)| json!([group_element_json(x.group(), g), coefficient_text(c)]))
            .collect(),
    )
}

pub fn bihom_to_json<F: Field>(theta: &BialgebraHom<F>) -> Value {
    let n = theta.dim();
    let rows: Vec<Value> = (0..n)
        .map(|s| Value::Array((0..n).map(|i| element_to_json(theta.image(s, i))).collect()))
        .collect();
    json!({"group": theta.group().to_string(), "codomain": theta.kind().name(), "images": rows})
}

pub fn bihom_from_json<F: Field>(v: &Value, desc: &F::Desc) -> Result<BialgebraHom<F>> {
    let group = group_from_json(&v["group"])?;
    let kind = match v["codomain"].as_str() {
        Some("group_algebra") => GroupBialgebra::GroupAlgebra,
        Some("dual") => GroupBialgebra::Dual,
        _ => return input("codomain must be \"group_algebra\" or \"dual\""),
    };
    let Some(rows) = v["images"].as_array() else {
        return input("images must be a matrix");
    };
    let n = rows.len();
    let mut images = Vec::with_capacity(n * n);
    for row in rows {
        let Some(row) = row.as_array().filter(|r| r.len() == n) else {
            return input("images must be square");
        };
        for entry in row {
            let Some(terms) = entry.as_array() else {
                return input("image must be a list of [element, coeff]");
            };
            let coeffs = terms
                .iter()
                .map(|t| {
                    let pair = t
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::Input("term must be [element, coeff]".into()))?;
                    Ok((
                        group_element_from_json(&group, &pair[0])?,
                        coefficient_from_json::<F>(&pair[1], desc)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            images.push(GroupAlgebraElement::from_coeffs(kind, &group, desc, coeffs)?);
        }
    }
    BialgebraHom::new(n, images)
}

pub fn action_to_json<F: Field>(phi: &GroupAction<F>) -> Value {
    let group = phi.group();
    let images: Vec<Value> = phi
        .images()
        .iter()
        .enumerate()
        .map(|(g, m)| json!({"element": group_element_json(group, g), "matrix": matrix_to_json(m)}))
        .collect();
    json!({"group": group.to_string(), "images": images})
}

pub fn action_from_json<F: Field>(v: &Value, pres: &Presentation<F>) -> Result<GroupAction<F>> {
    let group = group_from_json(&v["group"])?;
    let n = pres.h().dim();
    let mut images: Vec<Option<Matrix<F>>> = vec![None; group.order()];
    let Some(list) = v["images"].as_array() else {
        return input("action needs an images array");
    };
    for entry in list {
        let g = group_element_from_json(&group, &entry["element"])?;
        images[g] = Some(matrix_from_json(&entry["matrix"], &pres.ring().field)?);
    }
    let images = images
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::Input(format!("action must list all {} elements", group.order()))))
        .collect::<Result<Vec<_>>>()?;
    if images.iter().any(|m| m.rows() != n || m.cols() != n) {
        return input(&format!("action matrices must be {n}x{n}"));
    }
    GroupAction::new(&group, images, pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField};
    use crate::gradcoact::{action_to_bihom, diagonal_gradings, grading_to_bihom};
    use crate::homspace::Budget;
    use crate::leibniz::{aff2, sl2};
    use num_rational::BigRational;

    type Q = BigRational;

    const SL2: &str = r#"{
        "name": "sl2", "dim": 3, "field": {"type": "rational"}, "lie_autocomplete": true,
        "brackets": [[1, 2, [[3, "1"]]], [3, 2, [[2, "-2"]]], [3, 1, [[1, "2"]]]]
    }"#;

    #[test]
    fn autocomplete_matches_builtin() {
        let file = AlgebraFile::from_json(SL2).unwrap();
        let h: LeibnizAlgebra<Q> = file.build(&()).unwrap();
        assert!(h.same_constants(&sl2(&())));
        let f3 = PrimeField::new(3).unwrap();
        let file = AlgebraFile {
            field: FieldKind::Prime { p: 3 },
            ..file
        };
        let h: LeibnizAlgebra<Fp> = file.build(&f3).unwrap();
        assert!(h.same_constants(&sl2(&f3)));
    }

    #[test]
    fn algebra_file_errors() {
        let bad_mate = SL2.replace(r#"[3, 1, [[1, "2"]]]"#, r#"[3, 1, [[1, "2"]]], [1, 3, [[1, "2"]]]"#);
        let file = AlgebraFile::from_json(&bad_mate).unwrap();
        assert!(matches!(file.build::<Q>(&()), Err(Error::InvalidAlgebra(_))));
        let out_of_range = SL2.replace(r#"[[3, "1"]]"#, r#"[[4, "1"]]"#);
        assert!(matches!(
            AlgebraFile::from_json(&out_of_range).unwrap().build::<Q>(&()),
            Err(Error::InvalidAlgebra(_))
        ));
        let not_leibniz = r#"{"name": "x", "dim": 1, "field": {"type": "rational"}, "brackets": [[1, 1, [[1, "1"]]]]}"#;
        assert!(matches!(
            AlgebraFile::from_json(not_leibniz).unwrap().build::<Q>(&()),
            Err(Error::LeibnizViolation(_))
        ));
        assert!(matches!(AlgebraFile::from_json("{"), Err(Error::Input(_))));
    }

    #[test]
    fn algebra_round_trip() {
        let h: LeibnizAlgebra<Q> = sl2(&());
        let text = AlgebraFile::from_algebra(&h, "sl2").to_json();
        let back: LeibnizAlgebra<Q> = AlgebraFile::from_json(&text).unwrap().build(&()).unwrap();
        assert!(back.same_constants(&h));
    }

    #[test]
    fn polynomial_round_trip() {
        let h: LeibnizAlgebra<Q> = sl2(&());
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        for p in pres.universal_polys() {
            let v = polynomial_to_json(&p.poly);
            assert_eq!(polynomial_from_json(&v, pres.ring()).unwrap(), p.poly);
        }
        let file = PresentationFile::from_presentation(&pres);
        let text = serde_json::to_string(&file).unwrap();
        let back: PresentationFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let ring = back.ring::<Q>(&()).unwrap();
        assert_eq!(
            back.groebner_polynomials(&ring).unwrap(),
            pres.groebner_basis().generators()
        );
    }

    #[test]
    fn polynomial_json_shape() {
        let h: LeibnizAlgebra<Q> = aff2(&());
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        let v = polynomial_to_json(pres.universal_poly(1, 1, 2));
        assert_eq!(
            v,
            json!([
                [[[1, 2, 1], [2, 1, 1]], "1"],
                [[[1, 1, 1], [2, 2, 1]], "-1"],
                [[[1, 1, 1]], "1"]
            ])
        );
    }

    #[test]
    fn grading_bihom_action_round_trips() {
        let f3 = PrimeField::new(3).unwrap();
        let h = sl2::<Fp>(&f3);
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        let g = Arc::new(FiniteAbelianGroup::cyclic(2).unwrap());
        for gr in diagonal_gradings(&h, &g, Budget::default()).unwrap() {
            assert_eq!(grading_from_json(&grading_to_json(&gr), &h).unwrap(), gr);
            let theta = grading_to_bihom(&gr, &pres).unwrap();
            assert_eq!(bihom_from_json::<Fp>(&bihom_to_json(&theta), &f3).unwrap(), theta);
        }
        let a = aff2::<Fp>(&f3);
        let pres = Presentation::build(&a, &a, MonomialOrder::DegRevLex).unwrap();
        let flip = Matrix::from_rows(vec![
            vec![f3.element(2), f3.element(0)],
            vec![f3.element(0), f3.element(1)],
        ])
        .unwrap();
        let phi = GroupAction::from_generators(&g, &[flip], &pres).unwrap();
        assert_eq!(action_from_json(&action_to_json(&phi), &pres).unwrap(), phi);
        let theta = action_to_bihom(&phi, &pres).unwrap();
        assert_eq!(bihom_from_json::<Fp>(&bihom_to_json(&theta), &f3).unwrap(), theta);
        assert_eq!(matrix_to_json(phi.image(1)), json!([[2, 0], [0, 1]]));
    }
}
