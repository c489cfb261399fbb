use std::sync::Arc;

use ualg::gradcoact::{
    action_to_bihom, bihom_to_action, bihom_to_grading, classify_gradings, diagonal_gradings, enumerate_actions,
    grading_to_bihom, gradings_isomorphic,
};
use ualg::homspace::{convolution, convolution_inverse, enumerate_automorphisms, enumerate_characters, gamma};
use ualg::leibniz::{abelian, aff2, builtin, gl, heisenberg, sl2, LeibnizAlgebra};
use ualg::{BigRational, Budget, Character, FiniteAbelianGroup, Fp, MonomialOrder, Presentation, PrimeField};

fn square(h: &LeibnizAlgebra<Fp>) -> Presentation<Fp> {
    Presentation::build(h, h, MonomialOrder::DegRevLex).unwrap()
}

fn z(m: u64) -> Arc<FiniteAbelianGroup> {
    Arc::new(FiniteAbelianGroup::cyclic(m).unwrap())
}

#[test]
fn every_builtin_presentation_is_consistent() {
    for name in ["abelian(2)", "aff2", "sl2", "heisenberg", "gl(2)"] {
        let h: LeibnizAlgebra<BigRational> = builtin(name, &()).unwrap();
        let pres = Presentation::build(&h, &h, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(pres.universal_polys().len(), h.dim().pow(3), "{name}");
        assert!(pres.relations_hold().unwrap(), "{name}");
        assert!(pres.verify_eta_hom().unwrap().holds(), "{name}");
        assert!(pres.comultiplication().unwrap().certificate.holds(), "{name}");
        assert!(pres.verify_comodule().unwrap().holds(), "{name}");
    }
}

#[test]
fn convolution_is_an_associative_unital_product() {
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        for h in [aff2::<Fp>(&f), heisenberg(&f)] {
            let pres = square(&h);
            let chars = enumerate_characters(&pres, Budget::default()).unwrap();
            let eps = Character::counit(&pres).unwrap();
            assert_eq!(gamma(&eps), ualg::Matrix::identity(h.dim(), &f));
            let sample: Vec<&Character<Fp>> = chars.iter().step_by(1 + chars.len() / 12).collect();
            for a in &sample {
                assert_eq!(convolution(a, &eps, &pres).unwrap(), **a);
                assert_eq!(convolution(&eps, a, &pres).unwrap(), **a);
                for b in &sample {
                    let ab = convolution(a, b, &pres).unwrap();
                    assert_eq!(gamma(&ab), gamma(a).mul(&gamma(b)).unwrap());
                    for c in &sample {
                        let left = convolution(&ab, c, &pres).unwrap();
                        let right = convolution(a, &convolution(b, c, &pres).unwrap(), &pres).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }
}

#[test]
fn automorphisms_form_a_group_under_convolution() {
    let f3 = PrimeField::new(3).unwrap();
    let h = sl2::<Fp>(&f3);
    let pres = square(&h);
    let autos: Vec<Character<Fp>> = enumerate_automorphisms(&h, Budget::default())
        .unwrap()
        .into_iter()
        .map(|m| Character::new(m, &pres).unwrap())
        .collect();
    // Aut(sl2) over F_3 is PGL_2(F_3) of order 24
    assert_eq!(autos.len(), 24);
    for a in &autos {
        let inv = convolution_inverse(a, &pres).unwrap().unwrap();
        assert_eq!(convolution(a, &inv, &pres).unwrap(), Character::counit(&pres).unwrap());
        for b in autos.iter().take(6) {
            assert!(autos.contains(&convolution(a, b, &pres).unwrap()));
        }
    }
}

#[test]
fn grading_isomorphism_is_an_equivalence_and_sound() {
    let f2 = PrimeField::new(2).unwrap();
    let h = abelian::<Fp>(2, &f2).unwrap();
    let pres = square(&h);
    let autos = enumerate_automorphisms(&h, Budget::default()).unwrap();
    let g = z(2);
    let h = &h;
    let homs: Vec<_> = diagonal_gradings(h, &g, Budget::default())
        .unwrap()
        .iter()
        .flat_map(|gr| autos.iter().map(move |w| gr.conjugate(h, w).unwrap()))
        .map(|gr| grading_to_bihom(&gr, &pres).unwrap())
        .collect();
    for t1 in &homs {
        assert!(gradings_isomorphic(t1, t1, &autos).is_some());
        for t2 in &homs {
            let forward = gradings_isomorphic(t1, t2, &autos);
            assert_eq!(forward.is_some(), gradings_isomorphic(t2, t1, &autos).is_some());
            if let Some(w) = forward {
                let (g1, g2) = (
                    bihom_to_grading(t1, &pres).unwrap(),
                    bihom_to_grading(t2, &pres).unwrap(),
                );
                for sigma in 0..g.order() {
                    let image = w.mul(g1.component(sigma)).unwrap().column_space(&f2);
                    assert_eq!(&image, g2.component(sigma));
                }
                for t3 in &homs {
                    if gradings_isomorphic(t2, t3, &autos).is_some() {
                        assert!(gradings_isomorphic(t1, t3, &autos).is_some());
                    }
                }
            }
        }
    }
}

#[test]
fn classes_agree_with_pairwise_isomorphism() {
    let f3 = PrimeField::new(3).unwrap();
    let h = sl2::<Fp>(&f3);
    let pres = square(&h);
    let autos = enumerate_automorphisms(&h, Budget::default()).unwrap();
    let classes = classify_gradings(&h, &z(2), Budget::default()).unwrap().classes;
    let homs: Vec<Vec<_>> = classes
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|gr| grading_to_bihom(gr, &pres).unwrap())
                .collect()
        })
        .collect();
    for (a, class_a) in homs.iter().enumerate() {
        for (b, class_b) in homs.iter().enumerate() {
            for t1 in class_a {
                for t2 in class_b {
                    assert_eq!(gradings_isomorphic(t1, t2, &autos).is_some(), a == b);
                }
            }
        }
    }
}

#[test]
fn actions_round_trip() {
    let f3 = PrimeField::new(3).unwrap();
    for h in [aff2::<Fp>(&f3), heisenberg(&f3)] {
        let pres = square(&h);
        let actions = enumerate_actions(&h, &z(2), Budget::default()).unwrap();
        assert!(!actions.is_empty());
        for phi in actions {
            let theta = action_to_bihom(&phi, &pres).unwrap();
            assert_eq!(bihom_to_action(&theta, &pres).unwrap(), phi);
        }
    }
}

#[test]
fn gradings_by_z2_x_z2() {
    let f3 = PrimeField::new(3).unwrap();
    let g = Arc::new(FiniteAbelianGroup::parse("Z2xZ2").unwrap());
    let h = gl::<Fp>(2, &f3).unwrap();
    let pres = square(&h);
    let grads = diagonal_gradings(&h, &g, Budget::default()).unwrap();
    assert!(!grads.is_empty());
    for gr in grads {
        let theta = grading_to_bihom(&gr, &pres).unwrap();
        assert_eq!(bihom_to_grading(&theta, &pres).unwrap(), gr);
    }
}
