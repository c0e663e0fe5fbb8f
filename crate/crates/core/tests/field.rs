mod common;

use proptest::prelude::*;
use twosource::gf2q::{default_modulus, is_irreducible, BinaryPoly, GfContext, MAX_DEGREE};

use common::{axiom_failures, mask, reference_mul};

#[test]
fn every_default_modulus_is_irreducible() {
    for q in 1..=MAX_DEGREE {
        let m = default_modulus(q).unwrap();
        assert_eq!(m.degree(), Some(q));
        assert!(is_irreducible(&m).unwrap(), "q = {q}");
    }
}

#[test]
fn small_fields_satisfy_the_axioms_exhaustively() {
    for q in 1..=3 {
        let ctx = GfContext::new(q).unwrap();
        let s = 1u128 << q;
        let all = (0..s).flat_map(|a| (0..s).flat_map(move |b| (0..s).map(move |c| (a, b, c))));
        assert_eq!(axiom_failures(&ctx, all), 0, "q = {q}");
    }
}

#[test]
fn squaring_q_times_is_the_identity() {
    // a^(2^q) = a for every a
    for q in 1..=10u32 {
        let ctx = GfContext::new(q).unwrap();
        for a in ctx.elements().unwrap() {
            let mut acc = a;
            for _ in 0..q {
                acc = ctx.mul(acc, acc).unwrap();
            }
            assert_eq!(acc, a, "q = {q}");
        }
    }
}

#[test]
fn aes_field_product() {
    let ctx = GfContext::with_modulus(&BinaryPoly::from_exponents(&[8, 4, 3, 1, 0])).unwrap();
    let p = ctx
        .mul(ctx.element(0x57).unwrap(), ctx.element(0x83).unwrap())
        .unwrap();
    assert_eq!(p.bits(), 0xc1);
}

#[test]
fn out_of_range_inputs_are_rejected() {
    assert!(GfContext::new(0).is_err());
    assert!(GfContext::new(129).is_err());
    let ctx = GfContext::new(5).unwrap();
    assert!(ctx.element(32).is_err());
    assert!(GfContext::with_modulus(&BinaryPoly::from_exponents(&[4, 0])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn axioms_hold_for_random_triples(q in 1u32..=128, a: u128, b: u128, c: u128) {
        let ctx = GfContext::new(q).unwrap();
        let m = mask(q);
        prop_assert_eq!(axiom_failures(&ctx, std::iter::once((a & m, b & m, c & m))), 0);
    }

    #[test]
    fn inverse_round_trips(q in 1u32..=128, a: u128) {
        let ctx = GfContext::new(q).unwrap();
        let a = a & mask(q);
        match ctx.inverse(ctx.element(a).unwrap()).unwrap() {
            None => prop_assert_eq!(a, 0),
            Some(inv) => prop_assert_eq!(reference_mul(q, a, inv.bits()), 1),
        }
    }
}
