use super::*;
use crate::quiver::WeylWord;

const ENTRIES: &[i64] = &[-1, 0, 1];

struct A2 {
    d: CartanDatum,
    o: Orientation,
}

impl A2 {
    fn new() -> Self {
        let d = CartanDatum::preset("A2").unwrap();
        let o = Orientation::standard(&d);
        A2 { d, o }
    }
    fn s(&self, i: Vertex) -> PreprojModule {
        PreprojModule::simple(&self.d, &self.o, i).unwrap()
    }
    /// The (1,1)-module with top `S_i`.
    fn p(&self, i: Vertex) -> PreprojModule {
        let j = 3 - i;
        PreprojModule::from_ints(&self.d, &self.o, &[1, 1], &[((i, j), vec![1])]).unwrap()
    }
    fn collection(&self) -> RigidCollection {
        let sum = |label: &str, module, frozen| Summand { label: label.into(), module, frozen };
        RigidCollection::new(
            &self.d,
            &self.o,
            vec![sum("S1", self.s(1), false), sum("P2", self.p(2), true), sum("P1", self.p(1), true)],
        )
        .unwrap()
    }
}

#[test]
fn moment_examples() {
    let a = A2::new();
    let m = a.p(1);
    assert!(m.moment_residual().iter().all(QMat::is_zero));
    assert!(m.is_nilpotent() && m.is_module());
    let bad = PreprojModule::from_ints(&a.d, &a.o, &[1, 1], &[((1, 2), vec![1]), ((2, 1), vec![1])]).unwrap();
    assert!(!bad.moment_residual().iter().all(QMat::is_zero));
    assert!(!bad.is_module());
    let z = PreprojModule::zero(&a.d, &a.o);
    assert!(z.is_module());
    assert!(matches!(
        PreprojModule::from_ints(&a.d, &a.o, &[1, 1], &[((1, 2), vec![1, 0])]),
        Err(Error::Shape(_))
    ));
}

#[test]
fn non_nilpotent_cycle_is_rejected() {
    let d = CartanDatum::preset("A3").unwrap();
    let o = Orientation::standard(&d);
    let m = PreprojModule::from_ints(
        &d,
        &o,
        &[1, 1, 1],
        &[((1, 2), vec![1]), ((2, 1), vec![1]), ((2, 3), vec![1]), ((3, 2), vec![1])],
    )
    .unwrap();
    // mu_2 vanishes, mu_1 = -B_21 B_12 does not, and the cycle never dies
    assert!(!m.moment_residual()[0].is_zero());
    assert!(!m.is_nilpotent());
}

#[test]
fn hom_examples() {
    let a = A2::new();
    assert_eq!(a.s(1).hom_dim(&a.s(1)).unwrap(), 1);
    assert_eq!(a.s(1).hom_dim(&a.s(2)).unwrap(), 0);
    assert_eq!(a.p(1).hom_dim(&a.s(1)).unwrap(), 1);
    assert_eq!(a.p(1).hom_dim(&a.s(2)).unwrap(), 0);
    assert_eq!(a.s(2).hom_dim(&a.p(1)).unwrap(), 1);
    // top of P1 onto the socle of P2
    assert_eq!(a.p(1).hom_dim(&a.p(2)).unwrap(), 1);
    assert_eq!(a.p(1).hom_dim(&a.p(1)).unwrap(), 1);
}

#[test]
fn ext_examples() {
    let a = A2::new();
    let z = PreprojModule::zero(&a.d, &a.o);
    assert_eq!(a.s(1).ext1_dim(&a.s(1)).unwrap(), 0);
    assert_eq!(a.s(1).ext1_dim(&a.s(2)).unwrap(), 1);
    assert_eq!(z.ext1_dim(&a.p(1)).unwrap(), 0);
    assert!(a.p(1).is_rigid().unwrap() && a.p(1).is_open_orbit().unwrap());
    let ss = a.s(1).direct_sum(&a.s(2)).unwrap();
    assert!(!ss.is_rigid().unwrap());
    assert!(z.is_rigid().unwrap());
}

#[test]
fn enumeration_examples() {
    let a = A2::new();
    let list = enumerate_modules(&a.d, &a.o, &WeightVector(vec![1, 1]), ENTRIES).unwrap();
    assert_eq!(list.len(), 3);
    let ss = a.s(1).direct_sum(&a.s(2)).unwrap();
    for m in [&ss, &a.p(1), &a.p(2)] {
        assert_eq!(list.iter().filter(|x| x.is_isomorphic(m).unwrap()).count(), 1);
    }
    let one = enumerate_modules(&a.d, &a.o, &WeightVector(vec![1, 0]), ENTRIES).unwrap();
    assert_eq!(one.len(), 1);
    assert!(one[0].is_isomorphic(&a.s(1)).unwrap());
    let d4 = CartanDatum::preset("D4").unwrap();
    assert!(matches!(
        enumerate_modules(&d4, &Orientation::standard(&d4), &WeightVector(vec![1, 0, 0, 0]), ENTRIES),
        Err(Error::UnsupportedType(_))
    ));
}

#[test]
fn indecomposable_counts() {
    let a = A2::new();
    assert_eq!(indecomposables(&a.d, &a.o, &WeightVector(vec![2, 2]), ENTRIES).unwrap().len(), 4);
    let d = CartanDatum::preset("A3").unwrap();
    let o = Orientation::standard(&d);
    assert_eq!(indecomposables(&d, &o, &WeightVector(vec![1, 2, 1]), ENTRIES).unwrap().len(), 12);
}

#[test]
fn isomorphism_detects_base_change() {
    let a = A2::new();
    let m = PreprojModule::from_ints(&a.d, &a.o, &[1, 1], &[((1, 2), vec![-3])]).unwrap();
    assert!(m.is_isomorphic(&a.p(1)).unwrap());
    assert!(!m.is_isomorphic(&a.p(2)).unwrap());
}

#[test]
fn rigid_iff_open_orbit() {
    let a = A2::new();
    let d3 = CartanDatum::preset("A3").unwrap();
    let o3 = Orientation::standard(&d3);
    let mut all = Vec::new();
    for d in enumerate::dims_below(&WeightVector(vec![2, 2])) {
        all.extend(enumerate_modules(&a.d, &a.o, &d, ENTRIES).unwrap());
    }
    for d in enumerate::dims_below(&WeightVector(vec![1, 1, 1])) {
        all.extend(enumerate_modules(&d3, &o3, &d, ENTRIES).unwrap());
    }
    for m in &all {
        assert_eq!(m.is_rigid().unwrap(), m.is_open_orbit().unwrap(), "{:?}", m.to_file());
        assert!(m.orbit_dim().unwrap() <= m.lagrangian_dim());
    }
}

#[test]
fn ext_is_symmetric_and_additive() {
    let a = A2::new();
    let ind = indecomposables(&a.d, &a.o, &WeightVector(vec![1, 1]), ENTRIES).unwrap();
    for x in &ind {
        for y in &ind {
            assert_eq!(x.ext1_dim(y).unwrap(), y.ext1_dim(x).unwrap());
            for z in &ind {
                let s = x.direct_sum(y).unwrap();
                assert_eq!(s.ext1_dim(z).unwrap(), x.ext1_dim(z).unwrap() + y.ext1_dim(z).unwrap());
            }
        }
    }
}

#[test]
fn mutation_example() {
    let a = A2::new();
    let t = a.collection();
    let mu = mutate_rigid(&t, 0).unwrap();
    assert!(mu.complement.is_isomorphic(&a.s(2)).unwrap());
    assert!(mu.collection.summands()[0].module.is_isomorphic(&a.s(2)).unwrap());
    assert_eq!(mu.collection.summands()[0].label, "S1*");
    // 0 -> S1 -> P2 -> S2 -> 0 and 0 -> S2 -> P1 -> S1 -> 0
    assert!(mu.t_prime.is_isomorphic(&a.p(2)).unwrap());
    assert!(mu.t_double_prime.is_isomorphic(&a.p(1)).unwrap());
    assert_eq!(mu.t_prime_mult, vec![0, 1, 0]);
    assert_eq!(mu.t_double_prime_mult, vec![0, 0, 1]);
    assert!(matches!(mutate_rigid(&t, 1), Err(Error::Frozen(1))));
}

#[test]
fn mutation_is_involutive() {
    let a = A2::new();
    let t = a.collection();
    let back = mutate_rigid(&mutate_rigid(&t, 0).unwrap().collection, 0).unwrap().collection;
    assert!(back.same_up_to_iso(&t).unwrap());
    assert_eq!(back.summands()[0].label, "S1");
}

#[test]
fn maximal_rigid_examples() {
    let a = A2::new();
    let w0 = WeylWord::new(vec![1, 2, 1]);
    let bound = WeightVector(vec![2, 2]);
    assert!(maximal_rigid_check(&a.collection(), &w0, &bound, ENTRIES).unwrap());
    let sum = |label: &str, module| Summand { label: label.into(), module, frozen: true };
    let pp = RigidCollection::new(&a.d, &a.o, vec![sum("P1", a.p(1)), sum("P2", a.p(2))]).unwrap();
    assert!(!maximal_rigid_check(&pp, &w0, &bound, ENTRIES).unwrap());
    assert_eq!(pp.total().unwrap().direct_sum(&a.s(1)).unwrap().ext1_dim(&a.s(1)).unwrap(), 0);
    let empty = RigidCollection::new(&a.d, &a.o, vec![]).unwrap();
    assert!(!maximal_rigid_check(&empty, &w0, &bound, ENTRIES).unwrap());
    assert!(matches!(
        maximal_rigid_check(&empty, &WeylWord::new(vec![1, 2]), &bound, ENTRIES),
        Err(Error::UnsupportedCw)
    ));
}

#[test]
fn component_lemma_at_dim_11() {
    let a = A2::new();
    let tests = indecomposables(&a.d, &a.o, &WeightVector(vec![1, 1]), ENTRIES).unwrap();
    let origin = a.s(1).direct_sum(&a.s(2)).unwrap();
    let comps = component_closures_containing(&origin, &tests, ENTRIES).unwrap();
    assert_eq!(comps.len(), 2);
    let mu = mutate_rigid(&a.collection(), 0).unwrap();
    for m in [&mu.t_prime, &mu.t_double_prime] {
        assert_eq!(comps.iter().filter(|c| c.is_isomorphic(m).unwrap()).count(), 1);
    }
}

#[test]
fn hom_is_upper_semicontinuous_along_family() {
    let a = A2::new();
    let fam = |t: i64| PreprojModule::from_ints(&a.d, &a.o, &[1, 1], &[((1, 2), vec![t])]).unwrap();
    let tests = indecomposables(&a.d, &a.o, &WeightVector(vec![2, 2]), ENTRIES).unwrap();
    for n in &tests {
        assert!(fam(0).hom_dim(n).unwrap() >= fam(1).hom_dim(n).unwrap());
        assert!(n.hom_dim(&fam(0)).unwrap() >= n.hom_dim(&fam(1)).unwrap());
    }
    assert!(hom_order_le(&fam(1), &fam(0), &tests).unwrap());
    assert!(!hom_order_le(&fam(0), &fam(1), &tests).unwrap());
}

#[test]
fn crystal_labels_of_a2_modules() {
    let a = A2::new();
    let cb = CanonicalBasis::preset("A2").unwrap();
    assert_eq!(a.s(1).crystal_label(&cb).unwrap(), vec![1, 0, 0]);
    assert_eq!(a.s(2).crystal_label(&cb).unwrap(), vec![0, 0, 1]);
    assert_eq!(a.p(1).crystal_label(&cb).unwrap(), vec![1, 0, 1]);
    assert_eq!(a.p(2).crystal_label(&cb).unwrap(), vec![0, 1, 0]);
}

#[test]
fn crystal_labels_are_a_bijection_on_rigid_modules() {
    // distinct rigid modules of the same dimension are distinct components
    let d = CartanDatum::preset("A3").unwrap();
    let o = Orientation::standard(&d);
    let cb = CanonicalBasis::preset("A3").unwrap();
    for dim in enumerate::dims_below(&WeightVector(vec![1, 1, 1])) {
        let rigid: Vec<PreprojModule> = enumerate_modules(&d, &o, &dim, ENTRIES)
            .unwrap()
            .into_iter()
            .filter(|m| m.is_rigid().unwrap())
            .collect();
        let labels: std::collections::BTreeSet<Label> = rigid.iter().map(|m| m.crystal_label(&cb).unwrap()).collect();
        assert_eq!(labels.len(), rigid.len());
        assert_eq!(labels.len(), cb.labels(&dim).len(), "{dim:?}");
    }
}

#[test]
fn module_json_round_trip() {
    let a = A2::new();
    let m = PreprojModule::from_ints(&a.d, &a.o, &[1, 1], &[((2, 1), vec![-2])]).unwrap();
    let f = m.to_file();
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(s, r#"{"dim":[1,1],"arrows":{"1>2":[["0"]],"2>1":[["-2"]]}}"#);
    let back: ModuleFile = serde_json::from_str(&s).unwrap();
    assert_eq!(PreprojModule::from_file(&a.d, &a.o, &back).unwrap(), m);
    let half: ModuleFile = serde_json::from_str(r#"{"dim":[1,1],"arrows":{"1>2":[["1/2"]]}}"#).unwrap();
    assert!(PreprojModule::from_file(&a.d, &a.o, &half).unwrap().is_isomorphic(&a.p(1)).unwrap());
}
