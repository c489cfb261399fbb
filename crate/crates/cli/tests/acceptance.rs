//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is always printed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{
    all_matrices, brute_force_automorphisms, brute_force_degree_maps, brute_force_homs, groebner_case,
    groebner_laws_f5, groebner_laws_q, matrix, preserves, residues, Table, AFF2, SL2,
};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;
use ualg::gradcoact::{
    action_to_bihom, bihom_to_action, bihom_to_grading, classify_gradings, diagonal_gradings, grading_to_bihom,
    verify_bialgebra_hom,
};
use ualg::homspace::{
    convolution, convolution_inverse, enumerate_automorphisms, enumerate_characters, gamma, lift_scalar,
    verify_character,
};
use ualg::leibniz::{abelian, aff2, builtin, gl, heisenberg, is_hom, sl2, LeibnizAlgebra};
use ualg::universal::{symmetric_algebra_check, universal_polynomials, universal_ring};
use ualg::{
    buchberger, BigRational, Budget, Character, Field, FiniteAbelianGroup, Fp, GroupAction, GroupBialgebra, Matrix,
    Monomial, MonomialOrder, PolyRing, Polynomial, Presentation, PrimeField,
};

type Q = BigRational;

fn algebra_path(name: &str) -> String {
    format!("{}/algebras/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn library_algebra(table: &Table, f: &PrimeField) -> LeibnizAlgebra<Fp> {
    builtin(table.name, f).unwrap()
}

/// `c * Π X_{s i}` with 1-based indices, as sorted `(s, i, e)` triples.
type Term = (i64, &'static [(usize, usize)]);

/// `(sorted (s, i, e) triples, coefficient)` per term.
type TermSet = BTreeSet<(Vec<(u64, u64, u64)>, i64)>;

fn canonical(terms: &[Term]) -> TermSet {
    terms
        .iter()
        .map(|&(c, vars)| {
            let mut m: Vec<(u64, u64, u64)> = Vec::new();
            for &(s, i) in vars {
                match m.iter_mut().find(|(a, b, _)| (*a, *b) == (s as u64, i as u64)) {
                    Some(t) => t.2 += 1,
                    None => m.push((s as u64, i as u64, 1)),
                }
            }
            m.sort();
            (m, c)
        })
        .collect()
}

fn from_json(poly: &Value) -> TermSet {
    poly.as_array()
        .unwrap()
        .iter()
        .map(|term| {
            let mut m: Vec<(u64, u64, u64)> = term[0]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| (v[0].as_u64().unwrap(), v[1].as_u64().unwrap(), v[2].as_u64().unwrap()))
                .collect();
            m.sort();
            (m, term[1].as_str().unwrap().parse::<i64>().unwrap())
        })
        .collect()
}

fn negate(p: &TermSet) -> TermSet {
    p.iter().map(|(m, c)| (m.clone(), -c)).collect()
}

fn sl2_universal_polynomials() {
    let expected: [&[Term]; 9] = [
        &[(1, &[(1, 3)]), (-2, &[(1, 2), (3, 1)]), (2, &[(1, 1), (3, 2)])],
        &[(2, &[(1, 1)]), (-2, &[(1, 1), (3, 3)]), (2, &[(1, 3), (3, 1)])],
        &[(2, &[(1, 2)]), (-2, &[(1, 3), (3, 2)]), (2, &[(1, 2), (3, 3)])],
        &[(1, &[(2, 3)]), (-2, &[(2, 1), (3, 2)]), (2, &[(2, 2), (3, 1)])],
        &[(2, &[(2, 1)]), (-2, &[(2, 3), (3, 1)]), (2, &[(2, 1), (3, 3)])],
        &[(2, &[(2, 2)]), (-2, &[(2, 2), (3, 3)]), (2, &[(2, 3), (3, 2)])],
        &[(1, &[(3, 3)]), (-1, &[(1, 1), (2, 2)]), (1, &[(1, 2), (2, 1)])],
        &[(2, &[(3, 1)]), (-1, &[(2, 1), (1, 3)]), (1, &[(1, 1), (2, 3)])],
        &[(2, &[(3, 2)]), (-1, &[(1, 2), (2, 3)]), (1, &[(1, 3), (2, 2)])],
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_ual"))
        .args(["upoly", &algebra_path("sl2.json")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let result: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(result["status"], "ok");
    let emitted: Vec<_> = result["payload"]["polynomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| from_json(&p["poly"]))
        .collect();
    assert_eq!(emitted.len(), 9);
    let mut unmatched: Vec<_> = expected.iter().map(|e| canonical(e)).collect();
    for p in &emitted {
        let pos = unmatched
            .iter()
            .position(|e| e == p || *e == negate(p))
            .expect("emitted polynomial not in the list");
        unmatched.remove(pos);
    }
    assert!(unmatched.is_empty());
}

fn lie_symmetry() {
    for h in [aff2::<Q>(&()), sl2(&()), gl(2, &()).unwrap()] {
        let ring = universal_ring(&h, &h, MonomialOrder::DegRevLex).unwrap();
        let polys = universal_polynomials(&h, &h, &ring).unwrap();
        let n = h.dim();
        let at = |a: usize, i: usize, j: usize| &polys[((a - 1) * n + (i - 1)) * n + (j - 1)];
        for a in 1..=n {
            for i in 1..=n {
                assert!(at(a, i, i).poly.is_zero());
                for j in 1..=n {
                    assert_eq!((at(a, i, j).a, at(a, i, j).i, at(a, i, j).j), (a, i, j));
                    assert!((&at(a, i, j).poly + &at(a, j, i).poly).is_zero());
                }
            }
        }
    }
}

fn abelian_freeness() {
    for n in 1..=3 {
        let h = abelian::<Q>(n, &()).unwrap();
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        assert!(pres.groebner_basis().is_empty());
        assert!(pres.universal_polys().iter().all(|p| p.poly.is_zero()));
    }
}

/// The quadrics `Σ τ_st^a X_s X_t`, built straight from the table.
fn quadrics(table: &Table, ring: &Arc<PolyRing<Q>>) -> Vec<Polynomial<Q>> {
    (0..table.dim)
        .map(|a| {
            let terms = table
                .entries
                .iter()
                .filter(|e| e.2 == a)
                .map(|&(s, t, _, c)| {
                    let x = |k: usize| Monomial::var(ring.nvars(), ring.grid.var(0, k, 0));
                    (x(s).mul(&x(t)), Q::from_integer(c.into()))
                })
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

fn line_quadrics() {
    const LEIBNIZ2: Table = Table {
        name: "leibniz2",
        dim: 2,
        entries: &[(1, 1, 0, 1)],
    };
    let leibniz2 = LeibnizAlgebra::<Q>::new(2, (), [(1, 1, 0, Q::from_integer(1.into()))]).unwrap();
    let k = abelian::<Q>(1, &()).unwrap();
    for (h, table) in [(sl2::<Q>(&()), &SL2), (leibniz2, &LEIBNIZ2)] {
        let pres = Presentation::build(&h, &k, MonomialOrder::DegRevLex).unwrap();
        let qs = quadrics(table, pres.ring());
        for (a, q) in qs.iter().enumerate() {
            assert!((pres.universal_poly(a + 1, 1, 1) + q).is_zero());
        }
        let oracle = buchberger(&qs, pres.ring()).unwrap();
        assert_eq!(oracle.generators(), pres.groebner_basis().generators());
    }
}

fn symmetric_algebras() {
    let k = abelian::<Q>(1, &()).unwrap();
    let heis = heisenberg::<Q>(&());
    let report = symmetric_algebra_check(&heis, MonomialOrder::DegRevLex).unwrap();
    assert!(report.holds() && report.free_generators == 2);
    let pres = Presentation::build(&k, &heis, MonomialOrder::DegRevLex).unwrap();
    let x13 = Polynomial::x(pres.ring(), 1, 3);
    assert_eq!(pres.groebner_basis().generators(), [x13]);

    let s = sl2::<Q>(&());
    let report = symmetric_algebra_check(&s, MonomialOrder::DegRevLex).unwrap();
    assert!(report.holds() && report.free_generators == 0);
    let pres = Presentation::build(&k, &s, MonomialOrder::DegRevLex).unwrap();
    let mut gens: Vec<_> = pres.groebner_basis().generators().to_vec();
    gens.sort_by_key(|p| p.to_string());
    let vars: Vec<_> = (1..=3).map(|i| Polynomial::x(pres.ring(), 1, i)).collect();
    assert_eq!(gens, vars);
}

fn bialgebra_structure() {
    for h in [aff2::<Q>(&()), sl2(&())] {
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        assert!(pres.verify_eta_hom().unwrap().holds());
        let comult = pres.comultiplication().unwrap();
        assert!(!comult.certificate.entries.is_empty() && comult.certificate.holds());
        assert_eq!(comult.epsilon, Matrix::identity(h.dim(), &()));
        let report = pres.verify_comodule().unwrap();
        assert!(report.coassociative && report.counit && report.eta_coassociative && report.eta_counit);
        assert!(report.holds());
    }
}

fn characters_are_homomorphisms() {
    let f2 = field(2);
    for (h, g) in [(&AFF2, &AFF2), (&SL2, &SL2), (&AFF2, &SL2)] {
        let (hl, gl_) = (library_algebra(h, &f2), library_algebra(g, &f2));
        let pres = Presentation::build(&hl, &gl_, MonomialOrder::DegRevLex).unwrap();
        let chars = enumerate_characters(&pres, Budget::default()).unwrap();
        let oracle: BTreeSet<Vec<i64>> = brute_force_homs(g, h, 2).into_iter().collect();
        let images: BTreeSet<Vec<i64>> = chars.iter().map(|c| residues(&gamma(c))).collect();
        assert_eq!(chars.len(), oracle.len());
        assert_eq!(images, oracle);
        for c in &chars {
            assert_eq!(&lift_scalar(&gamma(c), &pres).unwrap(), c);
        }
    }
    let h = aff2::<Fp>(&f2);
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
    assert_eq!(enumerate_characters(&pres, Budget::default()).unwrap().len(), 6);
    let mut count = 0;
    for m in all_matrices(2, 2, 2) {
        let d = matrix(&m, 2, 2, &f2);
        let oracle = preserves(&m, &AFF2, &AFF2, 2);
        assert_eq!(verify_character(&d, &pres).unwrap(), oracle);
        assert_eq!(is_hom(&d, &h, &h).unwrap(), oracle);
        count += usize::from(oracle);
    }
    assert_eq!(count, 6);
}

fn automorphism_groups() {
    for p in [2, 3] {
        let f = field(p);
        for table in [&AFF2, &SL2] {
            let h = library_algebra(table, &f);
            let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
            let autos = enumerate_automorphisms(&h, Budget::default()).unwrap();
            let oracle: BTreeSet<Vec<i64>> = brute_force_automorphisms(table, p as i64).into_iter().collect();
            assert_eq!(autos.iter().map(residues).collect::<BTreeSet<_>>(), oracle);
            let chars: Vec<Character<Fp>> = autos.into_iter().map(|m| Character::new(m, &pres).unwrap()).collect();
            let eps = Character::counit(&pres).unwrap();
            assert!(chars.contains(&eps));
            for a in &chars {
                let inv = convolution_inverse(a, &pres)
                    .unwrap()
                    .expect("automorphisms are invertible");
                assert!(chars.contains(&inv));
                assert_eq!(convolution(a, &inv, &pres).unwrap(), eps);
                for b in &chars {
                    let ab = convolution(a, b, &pres).unwrap();
                    assert!(chars.contains(&ab));
                    assert_eq!(gamma(&ab), gamma(a).mul(&gamma(b)).unwrap());
                }
            }
        }
    }
    let aff2_f2 = brute_force_automorphisms(&AFF2, 2);
    assert_eq!(aff2_f2.len(), 2);
    assert_eq!(
        enumerate_automorphisms(&aff2(&field(2)), Budget::default())
            .unwrap()
            .len(),
        2
    );
}

fn sl2_gradings() {
    let f3 = field(3);
    let h = sl2::<Fp>(&f3);
    let z2 = Arc::new(FiniteAbelianGroup::cyclic(2).unwrap());
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
    let grads = diagonal_gradings(&h, &z2, Budget::default()).unwrap();
    let found: Vec<Vec<usize>> = grads.iter().map(|g| g.degree_map().unwrap().to_vec()).collect();
    assert_eq!(found, brute_force_degree_maps(&SL2, 2, 3));
    assert_eq!(found.len(), 2);
    for gr in &grads {
        let theta = grading_to_bihom(gr, &pres).unwrap();
        assert_eq!(theta.kind(), GroupBialgebra::GroupAlgebra);
        assert!(verify_bialgebra_hom(&theta, &pres).unwrap().holds());
        assert_eq!(&bihom_to_grading(&theta, &pres).unwrap(), gr);
    }
    let classification = classify_gradings(&h, &z2, Budget::default()).unwrap();
    assert_eq!(classification.classes.len(), 2);
}

fn z2_action_on_aff2() {
    let f3 = field(3);
    let h = aff2::<Fp>(&f3);
    let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
    let z2 = Arc::new(FiniteAbelianGroup::cyclic(2).unwrap());
    let flip = matrix(&[-1, 0, 0, 1], 2, 2, &f3);
    let phi = GroupAction::from_generators(&z2, std::slice::from_ref(&flip), &pres).unwrap();
    assert_eq!(phi.image(1), &flip);
    assert_eq!(phi.image(0), &Matrix::identity(2, &f3));
    let theta = action_to_bihom(&phi, &pres).unwrap();
    assert_eq!(theta.kind(), GroupBialgebra::Dual);
    assert!(verify_bialgebra_hom(&theta, &pres).unwrap().holds());
    assert_eq!(bihom_to_action(&theta, &pres).unwrap(), phi);
}

fn aff2_divergence() {
    let h = aff2::<Q>(&());
    let ring = universal_ring(&h, &h, MonomialOrder::DegRevLex).unwrap();
    let polys = universal_polynomials(&h, &h, &ring).unwrap();
    let x = |s, i| Polynomial::x(&ring, s, i);
    let ours = &(&x(1, 1) - &(&x(1, 1) * &x(2, 2))) + &(&x(1, 2) * &x(2, 1));
    let printed = &(&x(1, 1) - &(&x(1, 2) * &x(2, 2))) + &(&x(1, 2) * &x(2, 1));
    assert_eq!(polys[1].poly, ours);

    // Over F_3 the formula's system cuts out exactly the endomorphisms; the
    // printed variant does not.
    let f3 = field(3);
    let h3 = aff2::<Fp>(&f3);
    let ring3 = universal_ring(&h3, &h3, MonomialOrder::DegRevLex).unwrap();
    let system: Vec<Polynomial<Fp>> = universal_polynomials(&h3, &h3, &ring3)
        .unwrap()
        .into_iter()
        .map(|p| p.poly)
        .collect();
    let to_f3 = |p: &Polynomial<Q>| {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), f3.element(c.to_integer().try_into().unwrap())))
            .collect();
        Polynomial::from_terms(&ring3, terms)
    };
    let mut variant = system.clone();
    variant[1] = to_f3(&printed);
    variant[2] = -to_f3(&printed);
    let vanishes = |sys: &[Polynomial<Fp>], m: &[i64]| {
        let values: Vec<Fp> = m.iter().map(|&v| f3.element(v)).collect();
        sys.iter().all(|p| p.eval(&values, &Fp::one(&f3)).is_zero())
    };
    let mut disagreements = 0;
    for m in all_matrices(2, 2, 3) {
        let oracle = preserves(&m, &AFF2, &AFF2, 3);
        assert_eq!(vanishes(&system, &m), oracle);
        disagreements += usize::from(vanishes(&variant, &m) != oracle);
    }
    assert!(disagreements > 0);
}

fn groebner_suite() {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    for laws in [groebner_laws_f5, groebner_laws_q] {
        let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
        let mut runner = TestRunner::new_with_rng(config.clone(), rng);
        runner.run(&groebner_case(), |case| laws(&case)).unwrap();
    }
}

fn main() {
    let criteria: [(&str, u64, fn()); 12] = [
        ("sl2 universal polynomials", 1, sl2_universal_polynomials),
        ("Lie symmetry of universal polynomials", 1, lie_symmetry),
        ("abelian algebras are free", 1, abelian_freeness),
        ("quadrics of A(h, k)", 1, line_quadrics),
        ("symmetric algebras A(k, g)", 1, symmetric_algebras),
        ("bialgebra and comodule certificates", 30, bialgebra_structure),
        (
            "characters match brute-force homomorphisms",
            60,
            characters_are_homomorphisms,
        ),
        ("automorphism groups under convolution", 60, automorphism_groups),
        ("sl2 Z2-gradings and classes", 10, sl2_gradings),
        ("Z2 action on aff2", 1, z2_action_on_aff2),
        ("aff2 P(1,1,2) needs X11*X22", 1, aff2_divergence),
        ("Groebner property suite", 60, groebner_suite),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let verdict = match (&outcome, in_time) {
            (Ok(()), true) => "PASS",
            _ => "FAIL",
        };
        let note = if outcome.is_ok() && !in_time {
            format!(" over the {limit}s limit")
        } else {
            String::new()
        };
        println!("{verdict} {:>2} {name} ({:.2}s){note}", k + 1, elapsed.as_secs_f64());
        failed += usize::from(verdict == "FAIL");
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
