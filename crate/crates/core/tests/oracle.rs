use std::sync::Arc;

use ccc_core::oracle::{brute_dual, brute_ideals, code_set, descriptor_ideal, verify, SmallRing};
use ccc_core::{
    enumerate_ideals, expand_codewords, ChainElement, CyclicCode, Decomposition, Error, FieldSpec, IdealDescriptor,
    IdealKind, Polynomial,
};

fn decomp(m: u32, n: usize, k: u32) -> Arc<Decomposition> {
    Arc::new(Decomposition::new(FieldSpec::default_for(m).unwrap(), n, k).unwrap())
}

fn assert_verified(m: u32, n: usize, k: u32) {
    let report = verify(&decomp(m, n, k)).unwrap();
    for c in &report.checks {
        assert!(c.pass, "(m,n,k)=({m},{n},{k}) {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    assert!(report.pass);
}

#[test]
fn verify_binary_small() {
    assert_verified(1, 1, 2);
    assert_verified(1, 3, 2);
    assert_verified(1, 1, 3);
    assert_verified(1, 1, 4);
    assert_verified(1, 1, 5);
}

#[test]
fn verify_larger_fields() {
    assert_verified(2, 1, 2);
    assert_verified(3, 1, 2);
    assert_verified(2, 1, 3);
}

#[test]
fn sampled_duals_with_nontrivial_reciprocal_constants() {
    // over F_4, x^3 - 1 = (x+1)(x+a)(x+a^2) and the last two are a reciprocal
    // pair with e_j = a, a^2; the full sweep is 729 codes over a 2^24 space
    let d = decomp(2, 3, 2);
    assert_eq!((d.lambda, d.eps_pairs), (1, 1));
    assert!(d.e.iter().any(|e| e.bits() > 1));
    for c in ccc_core::sample_codes(&d, 3, 20).unwrap() {
        assert_eq!(brute_dual(&c).unwrap(), code_set(&c.dual().unwrap()).unwrap(), "{}", c.to_json());
    }
}

#[test]
fn verify_rejects_large_parameters() {
    let err = verify(&decomp(1, 7, 4)).unwrap_err();
    assert!(matches!(err, Error::OutOfOracleRange(_)));
    assert!(err.to_string().starts_with("out of oracle range"));
}

#[test]
fn every_ring_has_trivial_ideals() {
    let f = Polynomial::parse_binary(FieldSpec::binary(), "x^2+x+1").unwrap();
    let ring = SmallRing::new(&f, 2).unwrap();
    let ideals = brute_ideals(&ring).unwrap();
    assert_eq!(ideals.len(), 9);
    assert_eq!(ideals[0].rank(), 0);
    assert_eq!(ideals.last().unwrap().rank(), ring.size_log2());
}

#[test]
fn generated_ideal_sizes() {
    let f = Polynomial::parse_binary(FieldSpec::binary(), "x+1").unwrap();
    let ring = SmallRing::new(&f, 2).unwrap();
    let v = IdealDescriptor::new(IdealKind::V { i: 1, s: 0 }, 1, 2).unwrap();
    assert_eq!(descriptor_ideal(&ring, &v, &f).unwrap().rank(), 3);
    let iii = IdealDescriptor::new(IdealKind::III { i: 1, t: 0, omega: ChainElement::one(1, 1) }, 1, 2).unwrap();
    assert_eq!(descriptor_ideal(&ring, &iii, &f).unwrap().rank(), 2);
    let all: Vec<_> = enumerate_ideals(1, 1, 2).unwrap().collect();
    assert_eq!(all.len(), 7);
}

#[test]
fn brute_dual_of_principal_code() {
    let d = decomp(1, 1, 2);
    let iii = IdealDescriptor::new(IdealKind::III { i: 1, t: 0, omega: ChainElement::one(1, 1) }, 1, 2).unwrap();
    let c = CyclicCode::new(d.clone(), vec![iii]).unwrap();
    let brute = brute_dual(&c).unwrap();
    assert_eq!(brute, code_set(&c.dual().unwrap()).unwrap());
    assert_eq!(expand_codewords(&c, None).unwrap().count(), 4);
    assert_eq!(brute_dual(&CyclicCode::zero(d.clone())).unwrap().rank(), 4);
}
