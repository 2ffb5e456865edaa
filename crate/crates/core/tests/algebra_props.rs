use novikov_core::classify::{
    classify_k1, generate_instance, k2_condition, make_family, make_k2, scramble, K1Variant,
    K2Params,
};
use novikov_core::exactlin::{rat, Mat, Rational};
use novikov_core::{find_nondegenerate, invariant_form_space, Algebra, Element};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_algebra(rng: &mut impl Rng, n: usize) -> Algebra {
    Algebra::from_fn(n, |_, _, _| rat(rng.gen_range(-2..=2)))
}

fn random_element(rng: &mut impl Rng, n: usize) -> Element {
    Element::new((0..n).map(|_| rat(rng.gen_range(-4..=4))).collect())
}

fn invertible(rng: &mut impl Rng, n: usize) -> Mat {
    loop {
        let p = Mat::from_fn(n, n, |_, _| rat(rng.gen_range(-2..=2)));
        if p.determinant() != rat(0) {
            return p;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_bilinear(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, n);
        let (x, y, z) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
        let c = rat(rng.gen_range(-3..=3));
        let xy_z = a.multiply(&(&x + &y), &z).unwrap();
        prop_assert_eq!(xy_z, &a.multiply(&x, &z).unwrap() + &a.multiply(&y, &z).unwrap());
        let z_xy = a.multiply(&z, &(&x + &y)).unwrap();
        prop_assert_eq!(z_xy, &a.multiply(&z, &x).unwrap() + &a.multiply(&z, &y).unwrap());
        prop_assert_eq!(a.multiply(&x.scale(&c), &y).unwrap(), a.multiply(&x, &y).unwrap().scale(&c));
    }

    #[test]
    fn operators_match_products(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, n);
        let (x, y) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let rx = a.right_op(&x).unwrap();
        let lx = a.left_op(&x).unwrap();
        prop_assert_eq!(rx.mul_vec(y.coords()), a.multiply(&y, &x).unwrap().into_coords());
        prop_assert_eq!(lx.mul_vec(y.coords()), a.multiply(&x, &y).unwrap().into_coords());
        // Linearity in the operator argument.
        let sum = a.right_op(&(&x + &y)).unwrap();
        prop_assert_eq!(sum, &rx + &a.right_op(&y).unwrap());
        let sum = a.left_op(&(&x + &y)).unwrap();
        prop_assert_eq!(sum, &lx + &a.left_op(&y).unwrap());
    }

    #[test]
    fn identity_checks_survive_basis_change(seed in any::<u64>(), index in 0usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = generate_instance(seed % 7, index).unwrap();
        let n = inst.algebra.dim();
        let p = invertible(&mut rng, n);
        let moved = inst.algebra.transport(&p).unwrap();
        prop_assert!(moved.check_left_symmetric());
        prop_assert!(moved.check_fermionic());
        prop_assert_eq!(moved.check_novikov(), inst.algebra.check_novikov());
        prop_assert_eq!(moved.derived_dim(), inst.algebra.derived_dim());
        let back = moved.transport(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, inst.algebra);
    }

    #[test]
    fn random_tensor_identities_survive_basis_change(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, n);
        let moved = a.transport(&invertible(&mut rng, n)).unwrap();
        prop_assert_eq!(moved.check_left_symmetric(), a.check_left_symmetric());
        prop_assert_eq!(moved.check_fermionic(), a.check_fermionic());
        prop_assert_eq!(moved.check_novikov(), a.check_novikov());
    }

    #[test]
    fn k1_classification_ignores_the_basis(seed in any::<u64>(), variant in 1u8..=3, n in 3usize..=6) {
        let a = make_family(variant, n).unwrap();
        let form = find_nondegenerate(&invariant_form_space(&a), seed).unwrap();
        let (scrambled, _, _) = scramble(&a, &form, seed).unwrap();
        let expected = classify_k1(&a).unwrap();
        prop_assert_eq!(expected.number(), variant);
        prop_assert_eq!(classify_k1(&scrambled).unwrap(), expected);
    }

    #[test]
    fn k2_condition_is_left_symmetry(seed in any::<u64>(), n in 5usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> { (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect() };
        let params = K2Params::new(draw(&mut rng), draw(&mut rng), draw(&mut rng)).unwrap();
        let a = make_k2(&params);
        prop_assert!(a.check_fermionic());
        prop_assert_eq!(k2_condition(&a).unwrap(), a.check_left_symmetric());
    }
}

/// `(xy)z - x(yz) - (yx)z + y(xz)`, `(xy)z + (xz)y` and `(xy)z - (xz)y`
/// for full elements.
fn identity_defects(a: &Algebra, x: &Element, y: &Element, z: &Element) -> [Element; 3] {
    let m = |u: &Element, v: &Element| a.multiply(u, v).unwrap();
    let xy_z = m(&m(x, y), z);
    let xz_y = m(&m(x, z), y);
    let assoc_xy = &xy_z - &m(x, &m(y, z));
    let assoc_yx = &m(&m(y, x), z) - &m(y, &m(x, z));
    [&assoc_xy - &assoc_yx, &xy_z + &xz_y, &xy_z - &xz_y]
}

#[test]
fn full_element_identities_agree_with_basis_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for index in 0..12 {
        let a = generate_instance(5, index).unwrap().algebra;
        let n = a.dim();
        for _ in 0..4 {
            let (x, y, z) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
            let [ls, fe, nv] = identity_defects(&a, &x, &y, &z);
            assert!(ls.is_zero() && fe.is_zero() && nv.is_zero());
        }
    }
    // Random tensors: a defect on elements always shows up on the basis.
    for _ in 0..40 {
        let a = random_algebra(&mut rng, 2);
        let (x, y, z) = (random_element(&mut rng, 2), random_element(&mut rng, 2), random_element(&mut rng, 2));
        let [ls, fe, nv] = identity_defects(&a, &x, &y, &z);
        assert!(ls.is_zero() || !a.check_left_symmetric());
        assert!(fe.is_zero() || !a.check_fermionic());
        assert!(nv.is_zero() || !a.check_novikov());
    }
}

#[test]
fn classifier_reference_variants() {
    assert_eq!(classify_k1(&make_family(1, 2).unwrap()).unwrap(), K1Variant::Square);
    assert_eq!(classify_k1(&make_family(2, 2).unwrap()).unwrap(), K1Variant::Absorbing);
    assert_eq!(classify_k1(&make_family(3, 3).unwrap()).unwrap(), K1Variant::Heisenberg);
}

#[test]
fn k2_with_noncommuting_left_operators_is_not_left_symmetric() {
    // e1e2 = e2, e3e2 = e4: L3 L1 e2 = e4 while L1 L3 = 0.
    let mut lambda = vec![rat(0); 5];
    let mu = vec![rat(0); 5];
    let mut gamma = vec![rat(0); 5];
    lambda[1] = rat(1);
    gamma[1] = rat(1);
    let a = make_k2(&K2Params::new(lambda, mu, gamma).unwrap());
    assert!(!k2_condition(&a).unwrap());
    assert!(!a.check_left_symmetric());
    assert!(a.check_fermionic());
}
