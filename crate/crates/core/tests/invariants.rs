use std::sync::OnceLock;

use proptest::prelude::*;

use rank3kit::analyzer::{analyze, Rank3Report};
use rank3kit::catalog::construct::hyperoval_triple_cover;
use rank3kit::exec::Execution;
use rank3kit::json::JsonReport;
use rank3kit::linear::examples::{
    build_affine_example, build_extraspecial_holomorph, build_sum_zero_example, AffineExample,
};
use rank3kit::linear::family::delta_action;
use rank3kit::linear::field::Field;
use rank3kit::numtheory::{factorize, gcd, lcm};
use rank3kit::perm::oracle::{enumerate_elements, is_block, orbits_on_pairs};
use rank3kit::perm::text::{format_group_file, parse_group_file};
use rank3kit::perm::{nontrivial_block_systems, PermGroup, Permutation, DEFAULT_ENUMERATION_CAP as CAP};
use rank3kit::structure::structure_flags;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// A degree and one to three generators on it.
fn small_group() -> impl Strategy<Value = PermGroup> {
    (2usize..9)
        .prop_flat_map(|n| prop::collection::vec(perm(n), 1..4).prop_map(move |g| PermGroup::new(n, g).unwrap()))
}

fn rank3_corpus() -> &'static [(&'static str, PermGroup)] {
    static CORPUS: OnceLock<Vec<(&'static str, PermGroup)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        vec![
            ("affine-g1", build_affine_example(AffineExample::G1).unwrap()),
            ("affine-g2", build_affine_example(AffineExample::G2).unwrap()),
            (
                "holomorph",
                build_extraspecial_holomorph(3, 1, CAP, Execution::Sequential).unwrap().group,
            ),
            ("sum-zero", build_sum_zero_example(2, 2, 3).unwrap()),
            ("3.S6", hyperoval_triple_cover().unwrap()),
            ("d=2,q=7,r=2", delta_action(&"d=2,q=7,r=2,gens=delta".parse().unwrap()).unwrap()),
        ]
    })
}

/// Everything in a report that does not name a point.
fn label_free(r: &Rank3Report) -> String {
    let mut r = r.clone();
    if let Some(i) = r.imprimitivity.as_mut() {
        i.first_block.clear();
    }
    serde_json::to_string(&r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_with_inverses(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
        prop_assert_eq!(a.pow(a.order()), Permutation::identity(9));
    }

    #[test]
    fn chain_agrees_with_brute_force(g in small_group()) {
        let elements = enumerate_elements(g.degree(), g.generators(), 50_000).unwrap();
        prop_assert_eq!(elements.len() as u128, g.order());
        for x in elements.iter().take(20) {
            prop_assert!(g.contains(x));
        }
        if g.is_transitive() {
            prop_assert_eq!(g.rank().unwrap(), orbits_on_pairs(g.degree(), g.generators()));
            prop_assert_eq!(g.subdegrees().unwrap().iter().sum::<usize>(), g.degree());
        }
    }

    #[test]
    fn group_file_round_trip(g in small_group()) {
        let text = format_group_file(g.degree(), g.generators());
        let back = parse_group_file(&text).unwrap();
        prop_assert_eq!(back.generators(), g.generators());
    }

    #[test]
    fn block_systems_are_blocks(g in small_group()) {
        prop_assume!(g.is_transitive());
        for sys in nontrivial_block_systems(&g).unwrap() {
            prop_assert!(sys.is_invariant_under(&g));
            prop_assert!(is_block(g.degree(), g.generators(), sys.block(0)));
            let k = sys.kernel(&g).unwrap();
            prop_assert_eq!(k.order() * sys.block_action(&g).order(), g.order());
        }
    }

    #[test]
    fn structure_flags_form_a_chain(g in small_group()) {
        prop_assume!(g.is_transitive());
        let f = structure_flags(&g, CAP).unwrap();
        prop_assert!(f.implication_chain_holds());
    }

    #[test]
    fn field_axioms(a in 0u32..9, b in 0u32..9, c in 1u32..9) {
        let k = Field::new(3, 2).unwrap();
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(c, k.inv(c)), 1);
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        prop_assert_eq!(k.frobenius(k.mul(a, b), 1), k.mul(k.frobenius(a, 1), k.frobenius(b, 1)));
    }

    #[test]
    fn gcd_lcm_factorize(a in 1u64..5000, b in 1u64..5000) {
        prop_assert_eq!(gcd(a, b) * lcm(a, b), a * b);
        prop_assert_eq!(factorize(a).iter().map(|&(p, e)| p.pow(e)).product::<u64>(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classifier_is_invariant_under_relabelling(pick in 0usize..6, seed in any::<u64>()) {
        let (name, g) = &rank3_corpus()[pick];
        let n = g.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            images.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let sigma = Permutation::new(images).unwrap();
        let a = analyze(g, CAP).unwrap();
        let b = analyze(&g.conjugate(&sigma), CAP).unwrap();
        prop_assert_eq!(label_free(&a), label_free(&b), "{}", name);
        let json = JsonReport::new(b.clone(), String::new()).to_json().unwrap();
        prop_assert_eq!(JsonReport::from_json(&json).unwrap().report, b);
    }
}
