use bentkit::affine::{AffineMap, EaTransform};
use bentkit::designs::{
    addition_design, addition_design_concat, addition_design_via_dual, dev_graph, dev_support,
    dev_support_parameters, validate_parameters, IncidenceStructure,
};
use bentkit::function::direct_sum;
use bentkit::gf2::BitMatrix;
use bentkit::invariants::{
    are_isomorphic, canonical_form, ea_class_hash, smith_normal_form, smith_normal_form_exact,
};
use bentkit::walsh::{dual, is_bent, is_bent_boolean, walsh_transform};
use bentkit::{Anf, BooleanFunction, VectorialFunction};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(n: usize) -> impl Strategy<Value = BooleanFunction> {
    prop::collection::vec(any::<u64>(), (1usize << n).div_ceil(64)).prop_map(move |mut w| {
        if n < 6 {
            w[0] &= (1u64 << (1 << n)) - 1;
        }
        BooleanFunction::from_words(n, w).unwrap()
    })
}

/// A random bent function: an affine image of a quadratic or cubic seed.
fn bent(n: usize) -> impl Strategy<Value = BooleanFunction> {
    let seeds: Vec<&'static str> = match n {
        4 => vec!["x1*x2 + x3*x4"],
        6 => vec!["x1*x2 + x3*x4 + x5*x6", "x1*x2*x3 + x1*x4 + x2*x5 + x3*x6"],
        _ => unreachable!(),
    };
    (prop::sample::select(seeds), any::<u64>()).prop_map(move |(s, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = VectorialFunction::parse(n, &[s], false).unwrap();
        EaTransform::random(n, 1, &mut rng)
            .apply(&f)
            .unwrap()
            .coord(0)
            .clone()
    })
}

fn shuffled(d: &IncidenceStructure, seed: u64) -> IncidenceStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pm: Vec<usize> = (0..d.points()).collect();
    let mut bm: Vec<usize> = (0..d.num_blocks()).collect();
    pm.shuffle(&mut rng);
    bm.shuffle(&mut rng);
    d.relabel(&pm, &bm).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anf_round_trips(f in table(7)) {
        let a = Anf::from_table(&f);
        prop_assert_eq!(a.to_table(), f.clone());
        let text = a.to_string();
        prop_assert_eq!(Anf::parse(7, &text).unwrap(), a.clone());
        prop_assert_eq!(Anf::parse_digits(7, &a.to_digit_string()).unwrap(), a);
    }

    #[test]
    fn parseval_holds(f in table(6)) {
        prop_assert_eq!(walsh_transform(&f).parseval_sum(), 1i64 << 12);
    }

    #[test]
    fn bentness_is_affine_invariant(f in bent(6), seed in any::<u64>()) {
        prop_assert!(is_bent_boolean(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = AffineMap::random_invertible(6, &mut rng);
        prop_assert!(is_bent_boolean(&f.compose(|x| a.apply(x))));
        let d = dual(&f).unwrap();
        prop_assert!(is_bent_boolean(&d));
        prop_assert_eq!(dual(&d).unwrap(), f);
    }

    #[test]
    fn direct_sums_of_bent_are_bent(f in bent(4), g in bent(6)) {
        let h = direct_sum(&f, &g).unwrap();
        prop_assert_eq!(h.num_vars(), 10);
        prop_assert!(is_bent_boolean(&h));
    }

    #[test]
    fn support_designs_of_bent_functions_are_symmetric_designs(f in bent(6)) {
        let d = dev_support(&f);
        let params = dev_support_parameters(&f).unwrap();
        prop_assert!(validate_parameters(&d, params).passed);
        prop_assert_eq!(d.infer_parameters(), Some(params));
    }

    #[test]
    fn matrix_exports_round_trip(rows in 1usize..20, cols in 1usize..70, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = BitMatrix::from_fn(rows, cols, |_, _| rand::Rng::gen_bool(&mut rng, 0.5));
        prop_assert_eq!(BitMatrix::parse(&m.to_text()).unwrap(), m.clone());
        prop_assert_eq!(BitMatrix::parse(&m.to_hex()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn snf_routes_agree_on_translation_designs(f in bent(4), seed in any::<u64>()) {
        let g = VectorialFunction::from_boolean(f);
        let d = shuffled(&dev_graph(&g), seed);
        let fast = smith_normal_form(d.matrix());
        prop_assert_eq!(&fast, &smith_normal_form_exact(d.matrix()));
        prop_assert_eq!(fast.multiplicity(1), d.matrix().rank_gf2());
    }

    #[test]
    fn canonical_form_ignores_labels(f in bent(6), seed in any::<u64>()) {
        let d = dev_support(&f);
        let e = shuffled(&d, seed);
        prop_assert_eq!(canonical_form(&d).unwrap().matrix, canonical_form(&e).unwrap().matrix);
        let w = are_isomorphic(&d, &e, 1_000_000).unwrap().expect("relabeled copy");
        prop_assert!(w.verify(&d, &e));
    }

    #[test]
    fn addition_design_constructions_agree(f in bent(6)) {
        let g = VectorialFunction::from_boolean(f.clone());
        let a = addition_design(&g).unwrap().block_multiset();
        prop_assert_eq!(&a, &addition_design_via_dual(&f).unwrap().block_multiset());
        prop_assert_eq!(&a, &addition_design_concat(&g).unwrap().block_multiset());
    }

    #[test]
    fn ea_class_hash_is_an_ea_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = VectorialFunction::parse(4, &["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2*x4"], false)
            .unwrap();
        let g = EaTransform::random(4, 2, &mut rng).apply(&f).unwrap();
        prop_assert!(is_bent(&g));
        prop_assert_eq!(ea_class_hash(&f, 1_000_000).unwrap(), ea_class_hash(&g, 1_000_000).unwrap());
    }
}
