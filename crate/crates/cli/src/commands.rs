use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use ualg::gradcoact::{
    action_to_bihom, classify_gradings, diagonal_gradings, enumerate_actions, grading_to_bihom, verify_bialgebra_hom,
};
use ualg::homspace::{
    enumerate_automorphisms, enumerate_characters, enumerate_endomorphisms, enumerate_representations,
};
use ualg::leibniz::{builtin, current_algebra};
use ualg::serial::{
    action_to_json, bihom_to_json, grading_to_json, matrix_to_json, polynomial_to_json, AlgebraFile, PresentationFile,
};
use ualg::universal::{universal_polynomials, universal_ring};
use ualg::{
    BigRational, Budget, CommutativeAlgebra, Error, Field, FieldKind, FiniteAbelianGroup, Fp, LeibnizAlgebra,
    MonomialOrder, Polynomial, Presentation, PrimeField, Result,
};

use crate::args::{AlgebraArg, Command, OrderArg};

/// Payload of a finished command; `valid` is false when a mathematical
/// check failed.
pub struct Report {
    pub valid: bool,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn ok(payload: Value) -> Self {
        Report {
            valid: true,
            payload,
            diagnostics: Vec::new(),
        }
    }
}

const GRADING_SCOPE: &str =
    "diagonal gradings in the given basis and their conjugates under Aut(h); gradings with no homogeneous basis in that orbit are not enumerated";

/// Runs `$body` with `$desc` bound to the field descriptor of `$kind` and
/// `$f` naming its element type.
macro_rules! with_field {
    ($kind:expr, $f:ident, $desc:ident => $body:expr) => {
        match $kind {
            FieldKind::Rational => {
                type $f = BigRational;
                let $desc = ();
                $body
            }
            FieldKind::Prime { p } => {
                type $f = Fp;
                let $desc = PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Check(h) => with_field!(field_of(h)?, F, desc => check::<F>(&h.algebra, &desc)),
        Command::Upoly { h, g, all } => {
            with_field!(field_of(h)?, F, desc => upoly::<F>(&h.algebra, g.as_deref(), *all, &desc))
        }
        Command::Present { h, g, order } => {
            let order = match order {
                OrderArg::Degrevlex => MonomialOrder::DegRevLex,
                OrderArg::Lex => MonomialOrder::Lex,
            };
            with_field!(field_of(h)?, F, desc => present::<F>(&h.algebra, g.as_deref(), order, &desc))
        }
        Command::BialgebraCheck(h) => with_field!(field_of(h)?, F, desc => bialgebra_check::<F>(&h.algebra, &desc)),
        Command::Chars { h, g } => chars(&h.algebra, g.as_deref(), &prime_field(h)?),
        Command::Autos { h, endomorphisms } => autos(&h.algebra, *endomorphisms, &prime_field(h)?),
        Command::Reps { g, dim } => reps(&g.algebra, *dim, &prime_field(g)?),
        Command::Gradings { h, group } => {
            let group = parse_group(group)?;
            with_field!(field_of(h)?, F, desc => gradings::<F>(&h.algebra, &group, &desc))
        }
        Command::ClassifyGradings { h, group } => classify(&h.algebra, &parse_group(group)?, &prime_field(h)?),
        Command::Actions { h, group } => actions(&h.algebra, &parse_group(group)?, &prime_field(h)?),
        Command::Current { h, truncated } => {
            with_field!(field_of(h)?, F, desc => current::<F>(&h.algebra, *truncated, &desc))
        }
    }
}

fn read_file(algebra: &str) -> Result<Option<AlgebraFile>> {
    let path = Path::new(algebra);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{algebra}: {e}")))?;
        return AlgebraFile::from_json(&text).map(Some);
    }
    if path.extension().is_some_and(|e| e == "json") {
        return Err(Error::Input(format!("{algebra}: no such file")));
    }
    Ok(None)
}

/// `--prime` wins; otherwise the field the file declares, and Q for builtins.
fn field_of(arg: &AlgebraArg) -> Result<FieldKind> {
    if let Some(p) = arg.prime {
        PrimeField::new(p)?;
        return Ok(FieldKind::Prime { p });
    }
    Ok(read_file(&arg.algebra)?.map_or(FieldKind::Rational, |f| f.field))
}

fn prime_field(arg: &AlgebraArg) -> Result<PrimeField> {
    match field_of(arg)? {
        FieldKind::Prime { p } => Ok(PrimeField::new(p)?),
        FieldKind::Rational => Err(Error::Input("enumeration runs over F_p: pass --prime".into())),
    }
}

fn parse_group(text: &str) -> Result<Arc<FiniteAbelianGroup>> {
    FiniteAbelianGroup::parse(text)
        .map(Arc::new)
        .map_err(|e| Error::Input(e.to_string()))
}

/// Structure constants from a file or builtin, without the Leibniz check.
fn candidate<F: Field>(algebra: &str, desc: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    match read_file(algebra)? {
        Some(mut file) => {
            file.field = F::kind(desc);
            file.candidate(desc)
        }
        None => builtin(algebra, desc),
    }
}

fn load<F: Field>(algebra: &str, desc: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    candidate(algebra, desc)?.validated()
}

fn name_of<F: Field>(h: &LeibnizAlgebra<F>) -> String {
    h.name().unwrap_or("h").to_string()
}

fn poly_json<F: Field>(p: &Polynomial<F>) -> Value {
    json!({ "poly": polynomial_to_json(p), "text": p.to_string() })
}

fn check<F: Field>(algebra: &str, desc: &F::Desc) -> Result<Report> {
    let h = candidate::<F>(algebra, desc)?;
    let leibniz = h.check_leibniz();
    let violations: Vec<[usize; 3]> = leibniz.violations.iter().map(|&(i, j, l)| [i, j, l]).collect();
    let lie = leibniz.holds() && h.check_lie();
    let mut report = Report::ok(json!({
        "name": name_of(&h),
        "dim": h.dim(),
        "field": F::kind(desc),
        "leibniz": leibniz.holds(),
        "lie": lie,
        "violations": violations,
        "derived_dim": h.derived_subalgebra().cols(),
    }));
    if !leibniz.holds() {
        report.valid = false;
        report.diagnostics.push(format!(
            "Leibniz identity fails on {} basis triple(s)",
            violations.len()
        ));
    }
    Ok(report)
}

fn source<F: Field>(h: &LeibnizAlgebra<F>, g: Option<&str>, desc: &F::Desc) -> Result<LeibnizAlgebra<F>> {
    match g {
        Some(algebra) => load(algebra, desc),
        None => Ok(h.clone()),
    }
}

fn upoly<F: Field>(algebra: &str, g: Option<&str>, all: bool, desc: &F::Desc) -> Result<Report> {
    let h = load::<F>(algebra, desc)?;
    let g = source(&h, g, desc)?;
    let ring = universal_ring(&h, &g, MonomialOrder::DegRevLex)?;
    let polys = universal_polynomials(&h, &g, &ring)?;
    let mut kept: Vec<(&ualg::universal::IndexedPoly<F>, Value)> = Vec::new();
    let mut seen: Vec<&Polynomial<F>> = Vec::new();
    for p in &polys {
        if !all {
            if p.poly.is_zero() || seen.iter().any(|q| **q == p.poly || (*q + &p.poly).is_zero()) {
                continue;
            }
            seen.push(&p.poly);
        }
        kept.push((p, poly_json(&p.poly)));
    }
    let list: Vec<Value> = kept
        .into_iter()
        .map(|(p, mut v)| {
            v["index"] = json!([p.a, p.i, p.j]);
            v
        })
        .collect();
    Ok(Report::ok(json!({
        "h": name_of(&h),
        "g": name_of(&g),
        "dims": [h.dim(), g.dim()],
        "field": F::kind(desc),
        "selection": if all { "all" } else { "nonzero, one per sign class" },
        "count": list.len(),
        "polynomials": list,
    })))
}

fn present<F: Field>(algebra: &str, g: Option<&str>, order: MonomialOrder, desc: &F::Desc) -> Result<Report> {
    let h = load::<F>(algebra, desc)?;
    let g = source(&h, g, desc)?;
    let pres = Presentation::build(&h, &g, order)?;
    let mut payload =
        serde_json::to_value(PresentationFile::from_presentation(&pres)).expect("presentations serialize");
    let text: Vec<String> = pres
        .groebner_basis()
        .generators()
        .iter()
        .map(|p| p.to_string())
        .collect();
    payload["groebner_text"] = json!(text);
    Ok(Report::ok(payload))
}

fn bialgebra_check<F: Field>(algebra: &str, desc: &F::Desc) -> Result<Report> {
    let h = load::<F>(algebra, desc)?;
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex)?;
    let eta = pres.verify_eta_hom()?;
    let comult = pres.comultiplication()?;
    let comodule = pres.verify_comodule()?;
    let n = h.dim();
    let delta: Vec<Value> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut v = poly_json(comult.delta(i, j));
            v["index"] = json!([i + 1, j + 1]);
            v
        })
        .collect();
    let labels = |c: &ualg::universal::Certificate<F>| c.failures().map(|e| e.label.clone()).collect::<Vec<_>>();
    let mut diagnostics: Vec<String> = labels(&eta).into_iter().map(|l| format!("eta: {l}")).collect();
    diagnostics.extend(
        labels(&comult.certificate)
            .into_iter()
            .map(|l| format!("delta/epsilon: {l}")),
    );
    let payload = json!({
        "h": name_of(&h),
        "field": F::kind(desc),
        "eta_hom": eta.holds(),
        "delta_epsilon_well_defined": comult.certificate.holds(),
        "checked_identities": eta.entries.len() + comult.certificate.entries.len(),
        "coassociative": comodule.coassociative,
        "counit": comodule.counit,
        "eta_coassociative": comodule.eta_coassociative,
        "eta_counit": comodule.eta_counit,
        "projection": comodule.projection,
        "delta": delta,
        "epsilon": matrix_to_json(&comult.epsilon),
    });
    let valid = eta.holds() && comult.certificate.holds() && comodule.holds();
    if !comodule.holds() {
        diagnostics.push("a comodule or bialgebra axiom fails".into());
    }
    Ok(Report {
        valid,
        payload,
        diagnostics,
    })
}

fn chars(algebra: &str, g: Option<&str>, f: &PrimeField) -> Result<Report> {
    let h = load::<Fp>(algebra, f)?;
    let g = source(&h, g, f)?;
    let pres = Presentation::build(&h, &g, MonomialOrder::DegRevLex)?;
    let found = enumerate_characters(&pres, Budget::from_env())?;
    let list: Vec<Value> = found.iter().map(|c| matrix_to_json(c.matrix())).collect();
    Ok(Report::ok(json!({
        "h": name_of(&h),
        "g": name_of(&g),
        "field": FieldKind::Prime { p: f.modulus() },
        "count": list.len(),
        "characters": list,
    })))
}

fn autos(algebra: &str, endomorphisms: bool, f: &PrimeField) -> Result<Report> {
    let h = load::<Fp>(algebra, f)?;
    let found = if endomorphisms {
        enumerate_endomorphisms(&h, Budget::from_env())?
    } else {
        enumerate_automorphisms(&h, Budget::from_env())?
    };
    let list: Vec<Value> = found.iter().map(matrix_to_json).collect();
    Ok(Report::ok(json!({
        "h": name_of(&h),
        "field": FieldKind::Prime { p: f.modulus() },
        "kind": if endomorphisms { "endomorphisms" } else { "automorphisms" },
        "count": list.len(),
        "elements": list,
    })))
}

fn reps(algebra: &str, m: usize, f: &PrimeField) -> Result<Report> {
    let g = load::<Fp>(algebra, f)?;
    if !g.check_lie() {
        return Ok(Report {
            valid: false,
            payload: json!({ "g": name_of(&g), "lie": false }),
            diagnostics: vec!["representations need a Lie algebra".into()],
        });
    }
    let found = enumerate_representations(&g, m, Budget::from_env())?;
    let list: Vec<Value> = found.iter().map(matrix_to_json).collect();
    Ok(Report::ok(json!({
        "g": name_of(&g),
        "field": FieldKind::Prime { p: f.modulus() },
        "dim": m,
        "count": list.len(),
        "representations": list,
    })))
}

fn gradings<F: Field>(algebra: &str, group: &Arc<FiniteAbelianGroup>, desc: &F::Desc) -> Result<Report> {
    let h = load::<F>(algebra, desc)?;
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex)?;
    let mut list = Vec::new();
    let mut valid = true;
    for gr in diagonal_gradings(&h, group, Budget::from_env())? {
        let theta = grading_to_bihom(&gr, &pres)?;
        let verified = verify_bialgebra_hom(&theta, &pres)?.holds();
        valid &= verified;
        list.push(
            json!({ "grading": grading_to_json(&gr), "bialgebra_hom": bihom_to_json(&theta), "verified": verified }),
        );
    }
    let mut report = Report::ok(json!({
        "h": name_of(&h),
        "group": group.to_string(),
        "field": F::kind(desc),
        "scope": "diagonal gradings in the given basis",
        "count": list.len(),
        "gradings": list,
    }));
    if !valid {
        report.valid = false;
        report
            .diagnostics
            .push("an induced map failed the bialgebra checks".into());
    }
    Ok(report)
}

fn classify(algebra: &str, group: &Arc<FiniteAbelianGroup>, f: &PrimeField) -> Result<Report> {
    let h = load::<Fp>(algebra, f)?;
    let classification = classify_gradings(&h, group, Budget::from_env())?;
    let classes: Vec<Value> = classification
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": grading_to_json(&c.representative),
                "dimensions": c.representative.dimensions(),
                "size": c.members.len(),
            })
        })
        .collect();
    Ok(Report::ok(json!({
        "h": name_of(&h),
        "group": group.to_string(),
        "field": FieldKind::Prime { p: f.modulus() },
        "scope": GRADING_SCOPE,
        "automorphisms": classification.automorphisms,
        "diagonal": classification.diagonal,
        "count": classes.len(),
        "classes": classes,
    })))
}

fn actions(algebra: &str, group: &Arc<FiniteAbelianGroup>, f: &PrimeField) -> Result<Report> {
    let h = load::<Fp>(algebra, f)?;
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex)?;
    let mut list = Vec::new();
    let mut valid = true;
    for phi in enumerate_actions(&h, group, Budget::from_env())? {
        let theta = action_to_bihom(&phi, &pres)?;
        let verified = verify_bialgebra_hom(&theta, &pres)?.holds();
        valid &= verified;
        list.push(
            json!({ "action": action_to_json(&phi), "bialgebra_hom": bihom_to_json(&theta), "verified": verified }),
        );
    }
    let mut report = Report::ok(json!({
        "h": name_of(&h),
        "group": group.to_string(),
        "field": FieldKind::Prime { p: f.modulus() },
        "count": list.len(),
        "actions": list,
    }));
    if !valid {
        report.valid = false;
        report
            .diagnostics
            .push("an induced map failed the bialgebra checks".into());
    }
    Ok(report)
}

fn current<F: Field>(algebra: &str, m: usize, desc: &F::Desc) -> Result<Report> {
    let h = load::<F>(algebra, desc)?;
    let a = CommutativeAlgebra::truncated(m, desc)?;
    let c = current_algebra(&h, &a)?;
    let name = format!("{}_t{m}", name_of(&h));
    let leibniz = c.check_leibniz().holds();
    let file = serde_json::to_value(AlgebraFile::from_algebra(&c, &name)).expect("algebra files serialize");
    let mut report = Report::ok(json!({
        "name": name,
        "dim": c.dim(),
        "basis": "e_i t^a at index i*m + a",
        "leibniz": leibniz,
        "algebra": file,
    }));
    if !leibniz {
        report.valid = false;
        report
            .diagnostics
            .push("current algebra fails the Leibniz identity".into());
    }
    Ok(report)
}
