use novikov_core::exactlin::{
    congruent_diagonalize, find_generic_point, format_rational, frac, parse_rational, rat,
    signature, Mat, ParseRationalError, PolyMat, Rational, Signature,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_mat(rng: &mut impl Rng, rows: usize, cols: usize, r: i64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rat(rng.gen_range(-r..=r)))
}

fn sym_mat(rng: &mut impl Rng, n: usize, r: i64) -> Mat {
    let a = int_mat(rng, n, n, r);
    Mat::from_fn(n, n, |i, j| if i <= j { a[(i, j)].clone() } else { a[(j, i)].clone() })
}

/// Characteristic polynomial coefficients `c_0 .. c_n` of `det(xI - A)`
/// by the Faddeev-LeVerrier recursion.
fn char_poly(a: &Mat) -> Vec<Rational> {
    let n = a.rows();
    let mut coeffs = vec![rat(0); n + 1];
    coeffs[n] = rat(1);
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        let mut next = &(a * &m) + &Mat::identity(n).scale(&coeffs[n - k + 1]);
        std::mem::swap(&mut m, &mut next);
        let am = a * &m;
        let trace = (0..n).fold(rat(0), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -trace / rat(k as i64);
    }
    coeffs
}

fn sign_changes(coeffs: &[Rational]) -> usize {
    let nonzero: Vec<bool> = coeffs.iter().filter(|c| **c != rat(0)).map(|c| *c > rat(0)).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Signature from eigenvalue signs. The characteristic polynomial of a
/// symmetric matrix is real-rooted, so Descartes' rule counts exactly.
fn descartes_signature(s: &Mat) -> Signature {
    let p = char_poly(s);
    let zero = p.iter().position(|c| *c != rat(0)).unwrap_or(0);
    let shifted = &p[zero..];
    let mirrored: Vec<Rational> = shifted
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    Signature {
        positive: sign_changes(shifted),
        negative: sign_changes(&mirrored),
        zero,
    }
}

#[test]
fn descartes_oracle_on_known_forms() {
    let c2 = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
    assert_eq!(descartes_signature(&c2), Signature { positive: 1, negative: 1, zero: 0 });
    let d = Mat::from_i64_rows(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -5]]);
    assert_eq!(descartes_signature(&d), Signature { positive: 1, negative: 1, zero: 1 });
}

#[test]
fn sylvester_law_for_fifty_congruences_per_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5171);
    for n in 1..=5 {
        let mut tested = 0;
        while tested < 50 {
            let s = sym_mat(&mut rng, n, 3);
            let q = int_mat(&mut rng, n, n, 3);
            if q.determinant() == rat(0) {
                continue;
            }
            let t = &(&q.transpose() * &s) * &q;
            assert_eq!(signature(&t), signature(&s));
            assert_eq!(signature(&s), descartes_signature(&s));
            tested += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_diagonalizes(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sym_mat(&mut rng, n, 4);
        let c = congruent_diagonalize(&s);
        prop_assert!(c.p.determinant() != rat(0));
        prop_assert!(c.d.is_diagonal());
        prop_assert_eq!(&(&c.p.transpose() * &s) * &c.p, c.d.clone());
        prop_assert_eq!(signature(&s), descartes_signature(&s));
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Low-rank products are common enough to exercise nullity.
        let inner = rng.gen_range(1..=rows.min(cols));
        let m = &int_mat(&mut rng, rows, inner, 2) * &int_mat(&mut rng, inner, cols, 2);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
        prop_assert_eq!(Mat::from_columns(cols, &kernel).rank(), kernel.len());
    }

    #[test]
    fn inverse_and_solve(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = int_mat(&mut rng, n, n, 3);
        let b: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(&a * &inv, Mat::identity(n));
                prop_assert!(a.determinant() != rat(0));
                prop_assert_eq!(a.solve(&b), Some(inv.mul_vec(&b)));
            }
            None => prop_assert_eq!(a.determinant(), rat(0)),
        }
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = int_mat(&mut rng, n, n, 3);
        let b = int_mat(&mut rng, n, n, 3);
        prop_assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn generic_rank_bounds_every_specialization(
        seed in any::<u64>(),
        rows in 1usize..=4,
        cols in 1usize..=4,
        vars in 1usize..=3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coefficients: Vec<Mat> = (0..vars).map(|_| int_mat(&mut rng, rows, cols, 1)).collect();
        let pencil = PolyMat::linear_pencil(rows, cols, &coefficients);
        let g = pencil.generic_rank();
        for _ in 0..8 {
            let point: Vec<Rational> = (0..vars).map(|_| rat(rng.gen_range(-4..=4))).collect();
            prop_assert!(pencil.eval(&point).rank() <= g);
        }
        let generic = find_generic_point(&pencil, g, seed).unwrap();
        prop_assert_eq!(pencil.eval(&generic).rank(), g);
        prop_assert!(find_generic_point(&pencil, g + 1, seed).is_err());
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..=1000, d in 1i64..=1000) {
        let q = frac(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
}

#[test]
fn rational_parse_errors() {
    assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
    assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
    assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
    assert!(matches!(parse_rational("0.5"), Err(ParseRationalError::Malformed(_))));
    assert!(matches!(parse_rational("1/2/3"), Err(ParseRationalError::Malformed(_))));
}
