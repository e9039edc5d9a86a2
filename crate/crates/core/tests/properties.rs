use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossprod::algstruct::PointedSpace;
use crossprod::bialgeq::{random_lazy_twist, verify_bialgebra_equivalence};
use crossprod::corpus::{bialgebra_bases, random_normalized_crossed, random_point, small_algebras};
use crossprod::crossed::{brz_checks, build_crossed_product, BRZ, CROSSED_BRUTE_FORCE};
use crossprod::exactlin::{solve_linear, FieldSpec, LinMap, Scalar, Shape, Tensor};
use crossprod::twisteq::{build_phi, derive_twisted_data, extract_twisting_pair, random_pair, verify_crossed_equivalence};

const Q: FieldSpec = FieldSpec::Rationals;

fn fp() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_map(|p| FieldSpec::prime(p).unwrap())
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), fp()]
}

fn scalar(f: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..7).prop_map(move |(n, d)| match f {
        FieldSpec::Rationals => f.from_ratio(n, d).unwrap(),
        _ => f.from_i64(n),
    })
}

fn matrix(f: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = LinMap> {
    prop::collection::vec(scalar(f), rows * cols)
        .prop_map(move |e| LinMap::from_entries(f, Shape::new([cols]), Shape::new([rows]), e).unwrap())
}

proptest! {
    #[test]
    fn field_laws((f, a, b, c) in field().prop_flat_map(|f| (Just(f), scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(i) = a.inv() {
            prop_assert!((&a * &i).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        let printed = f.parse_scalar(&a.to_string()).unwrap();
        prop_assert_eq!(printed, a);
    }

    #[test]
    fn compose_is_associative((_, x, y, z) in field().prop_flat_map(|f| (Just(f), matrix(f, 2, 3), matrix(f, 3, 4), matrix(f, 4, 2)))) {
        let left = x.compose(&y).unwrap().compose(&z).unwrap();
        let right = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.compose(&y).unwrap().transpose(), y.transpose().compose(&x.transpose()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided((f, m) in field().prop_flat_map(|f| (Just(f), matrix(f, 3, 3)))) {
        if let Some(inv) = m.inverse() {
            prop_assert!(m.compose(&inv).unwrap().is_identity());
            prop_assert!(inv.compose(&m).unwrap().is_identity());
        } else {
            let zero = vec![f.zero(); 3];
            prop_assert!(solve_linear(&m, &zero).unwrap().unique().is_none());
        }
    }

    /// Applying `g` to leg 1 and then `h` to leg 0 is the dense `h ⊗ g`.
    #[test]
    fn sparse_apply_matches_dense_tensor(
        (f, g, h, v) in field().prop_flat_map(|f| (Just(f), matrix(f, 3, 2), matrix(f, 2, 2), prop::collection::vec(scalar(f), 4)))
    ) {
        let t = Tensor::from_dense(f, Shape::new([2, 2]), &v).unwrap();
        let sparse = t.apply(&g, 1).unwrap().apply(&h, 0).unwrap();
        let dense = h.tensor(&g).unwrap().apply(&v).unwrap();
        prop_assert_eq!(sparse.to_dense(), dense);
        let swapped = t.permute(&[1, 0]);
        prop_assert_eq!(swapped.permute(&[1, 0]), t);
    }

    #[test]
    fn sampled_solutions_solve((f, m, x, seed) in fp().prop_flat_map(|f| (Just(f), matrix(f, 3, 4), prop::collection::vec(scalar(f), 4), any::<u64>()))) {
        let rhs = m.apply(&x).unwrap();
        let sol = solve_linear(&m, &rhs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = sol.sample(f, &mut rng).unwrap();
        prop_assert_eq!(m.apply(&y).unwrap(), rhs);
    }
}

fn small_crossed_base(f: FieldSpec, pick: (usize, usize), rng: &mut ChaCha8Rng) -> crossprod::crossed::CrossedData {
    let algebras = small_algebras(f);
    let a = &algebras[pick.0 % algebras.len()].1;
    let v = &algebras[pick.1 % algebras.len()].1;
    let point = PointedSpace::element(f, v.unit.clone()).unwrap();
    random_normalized_crossed(a, &point, rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn brz_decides_brute_force(seed in any::<u64>(), pick in (0usize..9, 0usize..9)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = small_crossed_base(FieldSpec::prime(3).unwrap(), pick, &mut rng);
        let (_, r) = build_crossed_product(&d).unwrap();
        prop_assert_eq!(brz_checks(&d).unwrap().all_pass(&BRZ), r.all_pass(&CROSSED_BRUTE_FORCE));
    }

    /// Tensor product algebras are valid crossed products; any pair passing
    /// the twisting conditions yields an equivalent crossed product whose
    /// witness gives the pair back.
    #[test]
    fn twisting_round_trips(seed in any::<u64>(), pick in (0usize..9, 0usize..9)) {
        let f = FieldSpec::prime(5).unwrap();
        let algebras = small_algebras(f);
        let (a, b) = (&algebras[pick.0].1, &algebras[pick.1].1);
        prop_assume!(a.dim * b.dim <= 6);
        let base = crossprod::corpus::tensor_product_crossed(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(p) = random_pair(&base, &mut rng).unwrap() else { return Ok(()) };
        let (primed, r) = derive_twisted_data(&base, &p).unwrap();
        prop_assume!(r.all_pass(&["cros1", "cros2", "cros3", "cros4"]));
        prop_assert!(r.passed(), "{}", r);
        let w = build_phi(&base, &p).unwrap();
        prop_assert!(verify_crossed_equivalence(&primed, &base, &w).unwrap().passed());
        let (back, er) = extract_twisting_pair(&primed, &base, &w.phi, &w.phi_inv).unwrap();
        prop_assert!(er.passed());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn lazy_twists_are_equivalences(seed in any::<u64>(), which in 0usize..5) {
        let f = FieldSpec::prime(5).unwrap();
        let (_, base) = bialgebra_bases(f).unwrap().swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(p) = random_lazy_twist(&base, &mut rng).unwrap() else { return Ok(()) };
        let (_, rep) = verify_bialgebra_equivalence(&base, &p).unwrap();
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn random_points_are_nonzero(seed in any::<u64>(), dim in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_point(FieldSpec::prime(2).unwrap(), dim, &mut rng);
        prop_assert_eq!(v.len(), dim);
        prop_assert!(v.iter().any(|x| !x.is_zero()));
    }
}
