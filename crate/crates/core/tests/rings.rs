mod common;

use ladders_core::qalgebra::{BasisLabel, Field};
use ladders_core::rings::{Partition, RingPresentation, RingSpec};
use proptest::prelude::*;

fn grass(k: u32, n: u32) -> RingPresentation {
    RingPresentation::grassmannian(k, n, Field::Rationals).unwrap()
}

fn schubert(parts: &[u32]) -> BasisLabel {
    BasisLabel::Schubert(Partition::new(parts.to_vec()))
}

#[test]
fn classical_part_matches_schur_oracle() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 6)] {
        let ring = grass(k, n);
        let parts = common::box_partitions(k as usize, n - k);
        for a in &parts {
            for b in &parts {
                let got = ring
                    .quantum_product(&ring.class_of(schubert(a)), &ring.class_of(schubert(b)))
                    .unwrap()
                    .classical_part();
                let mut want = ring.zero();
                for (nu, c) in common::lr_oracle(a, b, k as usize) {
                    if nu.first().copied().unwrap_or(0) <= n - k {
                        want = want
                            .add(&ring.class_of(schubert(&nu)).scale_int(c))
                            .unwrap();
                    }
                }
                assert_eq!(got, want, "G({k},{n}) s{a:?} * s{b:?}");
            }
        }
    }
}

#[test]
fn small_quantum_products_in_g24() {
    let r = grass(2, 4);
    let mul = |a: &str, b: &str| {
        r.quantum_product(&r.parse_class(a).unwrap(), &r.parse_class(b).unwrap())
            .unwrap()
    };
    let c = |lit: &str| r.parse_class(lit).unwrap();
    assert_eq!(mul("s[1]", "s[2,1]"), c("s[2,2] + q*1"));
    assert_eq!(mul("s[1]", "s[2,2]"), c("q*s[1]"));
    assert_eq!(mul("s[2]", "s[2]"), c("s[2,2]"));
    assert_eq!(mul("s[1,1]", "s[1,1]"), c("s[2,2]"));
    assert_eq!(mul("s[2]", "s[1,1]"), c("q*1"));
    assert_eq!(mul("s[2,2]", "s[2,2]"), c("q^2*1"));
}

#[test]
fn cpn_powers_follow_the_relation() {
    for n in 1..=6 {
        let r = RingPresentation::projective_space(n, Field::Rationals).unwrap();
        let u = r.first_chern_generator();
        for d in 0..=3 * (n + 1) {
            let (e, q) = common::cpn_power(n, d);
            let want = r.class_of(BasisLabel::Power(e)).q_shift(q);
            assert_eq!(r.power(&u, d).unwrap(), want, "CP^{n} u^{d}");
        }
    }
}

#[test]
fn products_of_projective_spaces() {
    let cp1 = RingPresentation::projective_space(1, Field::Rationals).unwrap();
    let cp3 = RingPresentation::projective_space(3, Field::Rationals).unwrap();
    assert!(RingPresentation::kunneth(&cp1, &cp3).is_err());
    let pp = RingPresentation::kunneth(&cp1, &cp1).unwrap();
    assert_eq!(pp.chern(), 2);
    let a = pp.parse_class("u ox 1").unwrap();
    let b = pp.parse_class("1 ox u").unwrap();
    assert_eq!(pp.quantum_product(&a, &a).unwrap(), pp.unit().q_shift(1));
    assert_eq!(pp.quantum_product(&a, &b).unwrap(), pp.parse_class("u ox u").unwrap());
    let u = pp.first_chern_generator();
    // Binomial expansion with a² = b² = q.
    let u2 = pp.power(&u, 2).unwrap();
    assert_eq!(u2, pp.parse_class("2*q + 2*u ox u").unwrap());
    let u4 = pp.power(&u, 4).unwrap();
    assert_eq!(u4, pp.parse_class("8*q^2 + 8*q*u ox u").unwrap());
}

#[test]
fn spec_round_trip() {
    let cases = [
        r#"{"kind":"cpn","n":2}"#,
        r#"{"kind":"grassmannian","k":2,"N":4,"field":"Fp:2"}"#,
        r#"{"kind":"product","factors":[{"kind":"cpn","n":1},{"kind":"cpn","n":1}]}"#,
    ];
    for text in cases {
        let spec: RingSpec = serde_json::from_str(text).unwrap();
        let ring = RingPresentation::from_spec(&spec, None).unwrap();
        let again = RingPresentation::from_spec(&ring.to_spec(), None).unwrap();
        assert_eq!(ring, again, "{text}");
    }
    assert!(serde_json::from_str::<RingSpec>(r#"{"kind":"cpn","n":2,"bogus":1}"#).is_err());
}

#[test]
fn quantum_pieri_agrees_with_products() {
    for (k, n) in [(1, 4), (2, 5), (3, 6)] {
        let r = grass(k, n);
        for parts in common::box_partitions(k as usize, n - k) {
            let lam = Partition::new(parts);
            for p in 1..=n - k {
                let via_pieri = r.quantum_pieri(&lam, p).unwrap();
                let via_lr = r
                    .quantum_product(
                        &r.class_of(BasisLabel::Schubert(lam.clone())),
                        &r.class_of(schubert(&[p])),
                    )
                    .unwrap();
                assert_eq!(via_pieri, via_lr, "G({k},{n}) {lam} * s[{p}]");
            }
        }
    }
}

fn ring_strategy() -> impl Strategy<Value = RingPresentation> {
    prop_oneof![
        (1u32..=5).prop_map(|n| RingPresentation::projective_space(n, Field::Rationals).unwrap()),
        Just(grass(2, 4)),
        Just(grass(2, 5)),
        Just(grass(3, 6)),
        Just(RingPresentation::grassmannian(2, 4, Field::prime(3).unwrap()).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_associative_and_commutative(ring in ring_strategy(), i in 0usize..100, j in 0usize..100, l in 0usize..100) {
        let basis = ring.full_basis();
        let pick = |x: usize| ring.class_of(basis[x % basis.len()].clone());
        let (a, b, c) = (pick(i), pick(j), pick(l));
        let ab = ring.quantum_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ring.quantum_product(&b, &a).unwrap());
        let left = ring.quantum_product(&ab, &c).unwrap();
        let right = ring.quantum_product(&a, &ring.quantum_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_are_homogeneous(ring in ring_strategy(), i in 0usize..100, j in 0usize..100) {
        let basis = ring.full_basis();
        let a = ring.class_of(basis[i % basis.len()].clone());
        let b = ring.class_of(basis[j % basis.len()].clone());
        let ab = ring.quantum_product(&a, &b).unwrap();
        if !ab.is_zero() {
            prop_assert_eq!(ab.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        }
    }

    #[test]
    fn literals_round_trip(ring in ring_strategy(), i in 0usize..100, j in 0usize..100, c in -5i64..5, q in -3i64..3) {
        let basis = ring.full_basis();
        let a = ring.class_of(basis[i % basis.len()].clone()).scale_int(c).q_shift(q);
        let b = ring.class_of(basis[j % basis.len()].clone());
        let x = a.add(&b).unwrap();
        prop_assert_eq!(ring.parse_class(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn unit_is_neutral(ring in ring_strategy(), i in 0usize..100) {
        let basis = ring.full_basis();
        let a = ring.class_of(basis[i % basis.len()].clone());
        prop_assert_eq!(ring.quantum_product(&ring.unit(), &a).unwrap(), a);
    }
}
