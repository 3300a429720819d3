use proptest::prelude::*;

use qgauge_core::abgrp::{is_surjective, FGAbelianGroup, GroupHom};
use qgauge_core::kring::{
    branching_morphism, ext_mul, hopf_comul, su_k_tower, tensor_map, tensor_mul, Boundary, ExtAlgebra, ExtElement,
    Parity, Subset,
};

type E = ExtElement<i64>;

fn element(alg: ExtAlgebra) -> impl Strategy<Value = E> {
    let basis = alg.basis();
    proptest::collection::vec((proptest::sample::select(basis), -3i64..=3), 0..5)
        .prop_map(move |terms| E::from_coords(alg, terms))
}

fn algebra() -> impl Strategy<Value = ExtAlgebra> {
    (1usize..=8).prop_map(ExtAlgebra::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graded_commutativity(alg in algebra(), a in any::<u64>(), b in any::<u64>()) {
        let mask: Subset = (1u64 << alg.num_generators()) - 1;
        let (s, t) = (a & mask, b & mask);
        let st = ext_mul(&E::basis(alg, s), &E::basis(alg, t));
        let ts = ext_mul(&E::basis(alg, t), &E::basis(alg, s));
        let sign = if s.count_ones() * t.count_ones() % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(st, ts.scale(&sign));
        if s & t != 0 {
            prop_assert!(ext_mul(&E::basis(alg, s), &E::basis(alg, t)).is_zero());
        }
    }

    #[test]
    fn associativity_and_unit((x, y, z) in algebra().prop_flat_map(|a| (element(a), element(a), element(a)))) {
        let alg = x.algebra();
        prop_assert_eq!(ext_mul(&ext_mul(&x, &y), &z), ext_mul(&x, &ext_mul(&y, &z)));
        prop_assert_eq!(ext_mul(&E::one(alg), &x), x.clone());
        prop_assert_eq!(ext_mul(&x, &y.add(&z)), ext_mul(&x, &y).add(&ext_mul(&x, &z)));
    }

    #[test]
    fn comultiplication_is_multiplicative((x, y) in algebra().prop_flat_map(|a| (element(a), element(a)))) {
        prop_assert_eq!(hopf_comul(&ext_mul(&x, &y)), tensor_mul(&hopf_comul(&x), &hopf_comul(&y)));
    }
}

#[test]
fn generators_square_to_zero_and_are_primitive() {
    for n in 2..=8 {
        let alg = ExtAlgebra::new(n);
        for i in 1..n {
            let r = E::generator(alg, i);
            assert!(ext_mul(&r, &r).is_zero());
            assert_eq!(hopf_comul(&r).to_string(), format!("1 (x) r{i} + r{i} (x) 1"));
        }
    }
}

#[test]
fn ranks_and_parity_split() {
    for n in 2..=8 {
        let alg = ExtAlgebra::new(n);
        assert_eq!(alg.rank(), 1 << (n - 1));
        assert_eq!(alg.basis_of(Parity::Even).len(), 1 << (n - 2));
        assert_eq!(alg.basis_of(Parity::Odd).len(), 1 << (n - 2));
    }
}

/// Every branching map up to level 8 is a graded Hopf morphism, checked on the whole basis.
#[test]
fn branching_maps_are_hopf_morphisms() {
    for n in 2..=8 {
        let f = branching_morphism::<i64>(n, Boundary::Zero).unwrap();
        assert!(f.is_graded());
        let alg = ExtAlgebra::new(n);
        let basis = alg.basis();
        for &s in &basis {
            let x = E::basis(alg, s);
            assert_eq!(hopf_comul(&f.apply(&x)), tensor_map(&f, &hopf_comul(&x)), "n={} s={:b}", n, s);
            for &t in basis.iter().step_by(3) {
                let y = E::basis(alg, t);
                assert_eq!(f.apply(&ext_mul(&x, &y)), ext_mul(&f.apply(&x), &f.apply(&y)));
            }
        }
    }
}

#[test]
fn induced_matrices_are_surjective() {
    for n in 3..=8 {
        let f = branching_morphism::<i64>(n, Boundary::Zero).unwrap();
        for p in [Parity::Even, Parity::Odd] {
            let m = f.induced_matrix(p).unwrap();
            let h = GroupHom::new(FGAbelianGroup::free(m.cols()), FGAbelianGroup::free(m.rows()), m).unwrap();
            assert!(is_surjective(&h), "n={} {:?}", n, p);
        }
    }
    let (k0, k1) = su_k_tower::<i64>(8).unwrap();
    for n in 3..=8 {
        assert!(is_surjective(k0.map(n).unwrap()) && is_surjective(k1.map(n).unwrap()));
    }
}

#[test]
fn literal_unit_boundary_breaks_grading() {
    let f = branching_morphism::<i64>(3, Boundary::LiteralUnit).unwrap();
    assert!(!f.is_graded());
    assert!(f.induced_matrix(Parity::Odd).is_err());
}

#[test]
fn induced_matrices_compose_along_the_tower() {
    let (k0, k1) = su_k_tower::<i64>(7).unwrap();
    for top in 4..=7 {
        for bottom in 2..top - 1 {
            let mut f = branching_morphism::<i64>(top, Boundary::Zero).unwrap();
            for n in (bottom + 1..top).rev() {
                f = branching_morphism::<i64>(n, Boundary::Zero).unwrap().compose(&f).unwrap();
            }
            assert_eq!(f.target(), ExtAlgebra::new(bottom));
            for (p, tower) in [(Parity::Even, &k0), (Parity::Odd, &k1)] {
                let composite = tower.composite(top, bottom).unwrap();
                assert_eq!(composite.matrix(), &f.induced_matrix(p).unwrap(), "{}->{} {:?}", top, bottom, p);
            }
        }
    }
}
