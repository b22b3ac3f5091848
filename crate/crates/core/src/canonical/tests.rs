use super::*;
use crate::quiver::WeylWord;

fn a2() -> CanonicalBasis {
    CanonicalBasis::preset("A2").unwrap()
}

fn wv(v: &[i64]) -> WeightVector {
    WeightVector(v.to_vec())
}

#[test]
fn pbw_index_examples() {
    let cb = a2();
    let w = WeylWord::new(vec![1, 2, 1]);
    assert_eq!(cb.pbw_indices(&w, &wv(&[1, 0])).unwrap(), vec![vec![1, 0, 0]]);
    assert_eq!(cb.pbw_indices(&w, &wv(&[1, 1])).unwrap(), vec![vec![0, 1, 0], vec![1, 0, 1]]);
    assert_eq!(cb.pbw_indices(&w, &wv(&[0, 0])).unwrap(), vec![vec![0, 0, 0]]);
}

fn word_set_matches(cb: &CanonicalBasis, nu: &WeightVector, expect: &[WordElement]) {
    let uq = cb.uqminus();
    let got: Vec<WordElement> = cb.labels(nu).iter().map(|c| cb.canonical_word_element(c).unwrap()).collect();
    assert_eq!(got.len(), expect.len());
    for e in expect {
        assert!(got.iter().any(|g| uq.equals(g, e).unwrap()), "missing {e:?}");
    }
}

#[test]
fn canonical_examples() {
    let cb = a2();
    let uq = cb.uqminus();
    word_set_matches(&cb, &wv(&[1, 1]), &[uq.word(&[1, 2]), uq.word(&[2, 1])]);
    let d = uq.divided_power(1, 2);
    word_set_matches(&cb, &wv(&[2, 1]), &[d.concat(&uq.generator(2)), uq.generator(2).concat(&d)]);
    word_set_matches(&cb, &wv(&[0, 0]), &[uq.unit()]);
    // the labels attached to those elements
    assert!(uq.equals(&cb.canonical_word_element(&[0, 1, 0]).unwrap(), &uq.word(&[2, 1])).unwrap());
    assert!(uq.equals(&cb.canonical_word_element(&[1, 0, 1]).unwrap(), &uq.word(&[1, 2])).unwrap());
}

#[test]
fn identify_examples() {
    let cb = a2();
    let l = cb.pbw().pbw_basis_element(&[1, 1, 0]);
    let (c, rem) = cb.identify(&l).unwrap();
    assert_eq!(c, vec![1, 1, 0]);
    assert!(rem.is_zero());
    let b = cb.canonical_element(&[0, 1, 0]).unwrap();
    let (c, rem) = cb.identify(&b).unwrap();
    assert_eq!(c, vec![0, 1, 0]);
    for v in cb.pbw().l_coords(&rem).values() {
        assert!(v.valuation().unwrap() > 0);
    }
    assert!(matches!(cb.identify(&l.scale(&RatFunc::q_pow(1))), Err(Error::NotCongruent(_))));
    assert!(matches!(cb.identify(&l.scale(&RatFunc::q_pow(-1))), Err(Error::NotLattice(_))));
}

#[test]
fn word_level_pbw_elements_identify() {
    let cb = a2();
    let w = cb.word().clone();
    // L(0,1,0) reduces to the crystal label of itself
    let l = cb.uqfull().pbw_element(&w, &[0, 1, 0]).unwrap();
    assert_eq!(cb.identify_word(&l).unwrap().0, vec![0, 1, 0]);
    let l = cb.uqfull().pbw_element(&w, &[1, 0, 0]).unwrap();
    assert!(cb.uqminus().equals(&l, &cb.uqminus().generator(1)).unwrap());
}

#[test]
fn crystal_examples() {
    let cb = a2();
    let u = cb.zero_label();
    assert_eq!(cb.f_tilde(1, &u).unwrap(), vec![1, 0, 0]);
    assert_eq!(cb.e_tilde(1, &[1, 0, 1]).unwrap(), Some(vec![0, 0, 1]));
    assert_eq!(cb.e_tilde(1, &u).unwrap(), None);
    assert_eq!(cb.epsilon(1, &[3, 0, 0]).unwrap(), 3);
    assert_eq!(cb.star_label(&[1, 0, 1]).unwrap(), vec![0, 1, 0]);
}

#[test]
fn saito_examples() {
    let cb = a2();
    let u = cb.zero_label();
    assert_eq!(cb.saito_reflection(1, &u, Direction::Forward).unwrap(), u);
    assert_eq!(cb.saito_reflection(1, &[0, 0, 1], Direction::Forward).unwrap(), vec![0, 1, 0]);
    assert!(matches!(cb.saito_reflection(1, &[1, 0, 0], Direction::Forward), Err(Error::Precondition(_))));
    assert_eq!(cb.saito_reflection(1, &[0, 1, 0], Direction::Inverse).unwrap(), vec![0, 0, 1]);
}

#[test]
fn saito_round_trip() {
    for name in ["A2", "A3"] {
        let cb = CanonicalBasis::preset(name).unwrap();
        for c in cb.labels_up_to(4) {
            for i in cb.datum().vertices() {
                if cb.epsilon_star(i, &c).unwrap() == 0 {
                    let b = cb.saito_reflection(i, &c, Direction::Forward).unwrap();
                    assert_eq!(cb.epsilon(i, &b).unwrap(), 0);
                    assert_eq!(cb.saito_reflection(i, &b, Direction::Inverse).unwrap(), c);
                }
            }
        }
    }
}

#[test]
fn crystal_operators_are_inverse() {
    let cb = CanonicalBasis::preset("A3").unwrap();
    for c in cb.labels_up_to(4) {
        for i in cb.datum().vertices() {
            let f = cb.f_tilde(i, &c).unwrap();
            assert_eq!(cb.e_tilde(i, &f).unwrap(), Some(c.clone()));
            assert_eq!(cb.epsilon(i, &f).unwrap(), cb.epsilon(i, &c).unwrap() + 1);
            if let Some(e) = cb.e_tilde(i, &c).unwrap() {
                assert_eq!(cb.f_tilde(i, &e).unwrap(), c);
            }
        }
    }
}

#[test]
fn epsilon_of_first_letter_is_first_exponent() {
    for (name, h) in [("A2", 6), ("A3", 5)] {
        let cb = CanonicalBasis::preset(name).unwrap();
        let i1 = cb.word().letters[0];
        for c in cb.labels_up_to(h) {
            assert_eq!(cb.epsilon(i1, &c).unwrap(), c[0], "{name} {c:?}");
        }
    }
}

#[test]
fn bw_examples() {
    let cb = a2();
    let e = WeylWord::new(vec![]);
    let one: BTreeSet<Label> = [cb.zero_label()].into_iter().collect();
    assert_eq!(cb.bw_members_pbw(&e, 3).unwrap(), one);
    assert_eq!(cb.bw_members_crystal(&e, 3).unwrap(), one);
    let s1 = WeylWord::new(vec![1]);
    let expect: BTreeSet<Label> = (0..=3).map(|n| vec![n, 0, 0]).collect();
    assert_eq!(cb.bw_members_pbw(&s1, 3).unwrap(), expect);
    assert_eq!(cb.bw_members_crystal(&s1, 3).unwrap(), expect);
    let s12 = WeylWord::new(vec![1, 2]);
    assert!(!cb.bw_members_pbw(&s12, 3).unwrap().contains(&vec![0, 0, 1]));
    assert!(matches!(cb.bw_members_crystal(&WeylWord::new(vec![1, 1]), 2), Err(Error::NotReduced(_))));
    let w0 = cb.word().clone();
    assert_eq!(cb.bw_members_pbw(&w0, 4).unwrap(), cb.bw_members_crystal(&w0, 4).unwrap());
    assert_eq!(cb.bw_members_pbw(&w0, 4).unwrap().len(), cb.labels_up_to(4).len());
}

#[test]
fn structure_constant_examples() {
    let cb = a2();
    let f1 = vec![1, 0, 0];
    let f2 = vec![0, 0, 1];
    let sc = cb.structure_constants(&f1, &f2).unwrap();
    assert!(sc[&vec![1, 0, 1]].is_one());
    let sc = cb.structure_constants(&f2, &f1).unwrap();
    assert_eq!(sc[&vec![1, 0, 1]], LaurentPoly::q());
    assert!(sc[&vec![0, 1, 0]].is_one());
    for b in cb.labels_up_to(3) {
        let sc = cb.structure_constants(&b, &cb.zero_label()).unwrap();
        assert_eq!(sc.len(), 1);
        assert!(sc[&b].is_one());
    }
    let sq = cb.structure_constants(&f1, &f1).unwrap();
    assert_eq!(sq[&vec![2, 0, 0]], LaurentPoly::monomial(-1, 1));
}

#[test]
fn structure_constant_routes_agree_small() {
    let cb = a2();
    let labels = cb.labels_up_to(3);
    for b1 in &labels {
        for b2 in &labels {
            if cb.weight_of(b1).height() + cb.weight_of(b2).height() <= 3 {
                assert_eq!(
                    cb.structure_constants(b1, b2).unwrap(),
                    cb.structure_constants_coproduct(b1, b2).unwrap(),
                    "{b1:?} {b2:?}"
                );
            }
        }
    }
}

#[test]
fn epsilon_bound_examples() {
    let cb = a2();
    let all: BTreeSet<Label> = cb.labels_up_to(4).into_iter().collect();
    assert_eq!(cb.epsilon_bound_set(&cb.zero_label(), 4).unwrap(), all);
    let f1 = vec![1, 0, 0];
    let s = cb.epsilon_bound_set(&f1, 4).unwrap();
    assert!(s.contains(&f1));
    let cut: BTreeSet<Label> = all.into_iter().filter(|b| cb.epsilon(1, b).unwrap() >= 1).collect();
    assert_eq!(s, cut);
}

#[test]
fn table_json_shape() {
    let cb = a2();
    let t = cb.basis_table_json("A2", &wv(&[1, 1])).unwrap();
    let v: serde_json::Value = serde_json::to_value(&t).unwrap();
    for k in ["type", "word", "weight", "pbw_gram", "transition", "canonical"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["type"], "A2");
    assert_eq!(v["canonical"].as_array().unwrap().len(), 2);
    assert_eq!(v["word"], serde_json::json!([1, 2, 1]));
}

#[test]
fn dual_basis_is_dual() {
    let cb = a2();
    for nu in [wv(&[1, 1]), wv(&[2, 1]), wv(&[2, 2])] {
        let labels = cb.labels(&nu);
        for a in &labels {
            for b in &labels {
                let p = cb.pbw().pairing(&cb.dual_canonical_element(a).unwrap(), &cb.canonical_element(b).unwrap());
                assert_eq!(p.is_one(), a == b);
                assert!(a == b || p.is_zero());
            }
        }
    }
}

#[test]
fn bw_membership_matches_enumeration() {
    let cb = a2();
    let d = cb.datum().clone();
    let all = cb.labels_up_to(5);
    for w in d.weyl_elements() {
        let members = cb.bw_members_crystal(&w, 5).unwrap();
        for c in &all {
            assert_eq!(cb.bw_contains(&w, c).unwrap(), members.contains(c), "{w:?} {c:?}");
        }
    }
    assert!(matches!(cb.bw_contains(&WeylWord::new(vec![2, 2]), &[0, 0, 0]), Err(Error::NotReduced(_))));
}
