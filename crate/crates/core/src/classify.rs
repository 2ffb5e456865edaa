//! Constructors and the classifier for small derived dimension, the
//! parametric derived-dimension-two family, and basis scrambling.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::exactlin::{rat, Mat, Rational};
use crate::forms::{find_nondegenerate, invariant_form_space, FormError, SymForm};

/// Attempts at drawing an invertible scrambling matrix.
pub const SCRAMBLE_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("variant {variant} needs dimension at least {min}, got {dim}")]
    DimensionTooSmall { variant: u8, dim: usize, min: usize },
    #[error("unknown family variant {0}")]
    UnknownVariant(u8),
    #[error("parameters need dimension at least 5 and vectors of length n, got n = {n}")]
    InvalidParams { n: usize },
    #[error("algebra is not left-symmetric")]
    NotLeftSymmetric,
    #[error("algebra is not fermionic")]
    NotFermionic,
    #[error("derived dimension is {0}, expected 1")]
    DerivedDimension(usize),
    #[error("algebra admits no nondegenerate invariant form")]
    NoNondegenerateForm,
    #[error("algebra is not of the parametric derived-dimension-two shape")]
    NotK2Shape,
    #[error("no invertible scrambling matrix after {0} attempts")]
    ScrambleExhausted(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Smallest dimension in which `variant` exists.
pub fn min_dim(variant: u8) -> Result<usize, ClassifyError> {
    match variant {
        0 => Ok(0),
        1 | 2 => Ok(2),
        3 => Ok(3),
        v => Err(ClassifyError::UnknownVariant(v)),
    }
}

/// Variant 0 is the zero product; variants 1, 2, 3 have the single nonzero
/// product `e1e1 = e2`, `e1e2 = e2`, `e1e3 = e2` respectively.
pub fn make_family(variant: u8, dim: usize) -> Result<Algebra, ClassifyError> {
    let min = min_dim(variant)?;
    if dim < min {
        return Err(ClassifyError::DimensionTooSmall { variant, dim, min });
    }
    let mut a = Algebra::zero(dim);
    match variant {
        1 => a.set_constant(0, 0, 1, rat(1)),
        2 => a.set_constant(0, 1, 1, rat(1)),
        3 => a.set_constant(0, 2, 1, rat(1)),
        _ => {}
    }
    Ok(a)
}

/// Which of the three derived-dimension-one families an algebra belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K1Variant {
    /// `e1e1 = e2`: commutative.
    Square = 1,
    /// `e1e2 = e2`: `A(AA) != 0`.
    Absorbing = 2,
    /// `e1e3 = e2`: noncommutative with `A(AA) = 0`.
    Heisenberg = 3,
}

impl K1Variant {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Decides the family by isomorphism invariants: commutativity first, then
/// whether left multiplication by `A` kills the derived subspace.
pub fn classify_k1(algebra: &Algebra) -> Result<K1Variant, ClassifyError> {
    if !algebra.check_left_symmetric() {
        return Err(ClassifyError::NotLeftSymmetric);
    }
    if !algebra.check_fermionic() {
        return Err(ClassifyError::NotFermionic);
    }
    let derived = algebra.derived_dim();
    if derived != 1 {
        return Err(ClassifyError::DerivedDimension(derived));
    }
    if find_nondegenerate(&invariant_form_space(algebra), 0).is_none() {
        return Err(ClassifyError::NoNondegenerateForm);
    }
    if algebra.is_commutative() {
        return Ok(K1Variant::Square);
    }
    let derived_basis = algebra.derived_basis();
    let lefts = algebra.left_basis_ops();
    let kills_derived = lefts
        .iter()
        .all(|l| derived_basis.iter().all(|v| l.mul_vec(v.coords()).iter().all(Zero::is_zero)));
    Ok(if kills_derived { K1Variant::Heisenberg } else { K1Variant::Absorbing })
}

/// Coefficients of `e1 e_i = lambda_i e2 + mu_i e4` and
/// `e3 e_i = mu_i e2 + gamma_i e4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K2Params {
    n: usize,
    lambda: Vec<Rational>,
    mu: Vec<Rational>,
    gamma: Vec<Rational>,
}

impl K2Params {
    pub fn new(
        lambda: Vec<Rational>,
        mu: Vec<Rational>,
        gamma: Vec<Rational>,
    ) -> Result<Self, ClassifyError> {
        let n = lambda.len();
        if n < 5 || mu.len() != n || gamma.len() != n {
            return Err(ClassifyError::InvalidParams { n });
        }
        Ok(K2Params {
            n,
            lambda,
            mu,
            gamma,
        })
    }

    pub fn zero(n: usize) -> Result<Self, ClassifyError> {
        K2Params::new(vec![rat(0); n], vec![rat(0); n], vec![rat(0); n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }
}

pub fn make_k2(params: &K2Params) -> Algebra {
    let mut a = Algebra::zero(params.n);
    for i in 0..params.n {
        a.set_constant(0, i, 1, params.lambda[i].clone());
        a.set_constant(0, i, 3, params.mu[i].clone());
        a.set_constant(2, i, 1, params.mu[i].clone());
        a.set_constant(2, i, 3, params.gamma[i].clone());
    }
    a
}

/// Recovers the parameters when `algebra` has the shape `make_k2` produces.
pub fn k2_params_of(algebra: &Algebra) -> Option<K2Params> {
    let n = algebra.dim();
    if n < 5 {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let allowed = (i == 0 || i == 2) && (m == 1 || m == 3);
                if !allowed && !algebra.constant(i, j, m).is_zero() {
                    return None;
                }
            }
        }
        if algebra.constant(0, i, 3) != algebra.constant(2, i, 1) {
            return None;
        }
    }
    let col = |row: usize, m: usize| (0..n).map(|i| algebra.constant(row, i, m).clone()).collect();
    K2Params::new(col(0, 1), col(0, 3), col(2, 3)).ok()
}

/// `L_{e1} L_{e3} = L_{e3} L_{e1}`; on this family it is equivalent to
/// left symmetry.
pub fn k2_condition(algebra: &Algebra) -> Result<bool, ClassifyError> {
    k2_params_of(algebra).ok_or(ClassifyError::NotK2Shape)?;
    let lefts = algebra.left_basis_ops();
    Ok(&lefts[0] * &lefts[2] == &lefts[2] * &lefts[0])
}

/// The algebra and form written in a seeded random basis with integer
/// entries in `[-3, 3]`, together with the basis matrix.
pub fn scramble(
    algebra: &Algebra,
    form: &SymForm,
    seed: u64,
) -> Result<(Algebra, SymForm, Mat), ClassifyError> {
    let n = algebra.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SCRAMBLE_ATTEMPTS {
        let p = Mat::from_fn(n, n, |_, _| rat(rng.gen_range(-3..=3)));
        if p.determinant().is_zero() {
            continue;
        }
        let (a, b) = scramble_with(algebra, form, &p)?;
        return Ok((a, b, p));
    }
    Err(ClassifyError::ScrambleExhausted(SCRAMBLE_ATTEMPTS))
}

/// Transport by a given invertible basis matrix.
pub fn scramble_with(
    algebra: &Algebra,
    form: &SymForm,
    p: &Mat,
) -> Result<(Algebra, SymForm), ClassifyError> {
    Ok((algebra.transport(p)?, form.transport(p)?))
}

/// One generated algebra with a nondegenerate invariant form.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub algebra: Algebra,
    pub form: SymForm,
    pub seed: u64,
}

/// Largest dimension used by [`generate_instance`].
pub const CORPUS_MAX_DIM: usize = 8;

/// Deterministic corpus member `index` for `seed`: a family of variant 0-3
/// padded to a random dimension, or (every fourth index) a random
/// derived-dimension-two algebra satisfying the commutation condition;
/// either way equipped with a found nondegenerate invariant form and then
/// scrambled.
pub fn generate_instance(seed: u64, index: usize) -> Result<Instance, ClassifyError> {
    let (label, algebra, inst_seed) = instance_base(seed, index)?;
    let form = find_nondegenerate(&invariant_form_space(&algebra), inst_seed)
        .ok_or(ClassifyError::NoNondegenerateForm)?;
    let (algebra, form, _) = scramble(&algebra, &form, inst_seed ^ 0x5CA7)?;
    Ok(Instance {
        label: format!("{label} (scrambled)"),
        algebra,
        form,
        seed: inst_seed,
    })
}

/// The unscrambled algebra behind [`generate_instance`], with its label and
/// per-instance seed.
pub fn instance_base(seed: u64, index: usize) -> Result<(String, Algebra, u64), ClassifyError> {
    let inst_seed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(inst_seed);
    if index % 4 == 3 {
        let n = rng.gen_range(5..=CORPUS_MAX_DIM);
        let params = random_k2_params(&mut rng, n);
        Ok((format!("k2 n={n}"), make_k2(&params), inst_seed))
    } else {
        let variant: u8 = rng.gen_range(0..=3);
        let n = rng.gen_range(min_dim(variant)?.max(1)..=CORPUS_MAX_DIM);
        Ok((format!("family {variant} n={n}"), make_family(variant, n)?, inst_seed))
    }
}

/// Random parameters satisfying the commutation condition.
///
/// Draws small integers and keeps them when the condition holds; otherwise
/// clears the coefficients at indices 2 and 4, which makes both sides of
/// the condition vanish.
pub fn random_k2_params(rng: &mut impl Rng, n: usize) -> K2Params {
    assert!(n >= 5);
    let lambda = small_ints(rng, n);
    let mu = small_ints(rng, n);
    let gamma = small_ints(rng, n);
    let params = K2Params::new(lambda, mu, gamma).expect("n >= 5");
    if k2_condition(&make_k2(&params)).expect("k2 shape") {
        return params;
    }
    let clear = |mut v: Vec<Rational>| {
        v[1] = rat(0);
        v[3] = rat(0);
        v
    };
    K2Params::new(clear(params.lambda), clear(params.mu), clear(params.gamma)).expect("n >= 5")
}

fn small_ints(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_have_the_stated_single_product() {
        let a = make_family(1, 2).unwrap();
        assert_eq!(*a.constant(0, 0, 1), rat(1));
        assert_eq!(
            (0..8).filter(|&t| !a.constant(t / 4, (t / 2) % 2, t % 2).is_zero()).count(),
            1
        );
        assert_eq!(make_family(0, 5).unwrap(), Algebra::zero(5));
        let c = make_family(3, 4).unwrap();
        assert_eq!(*c.constant(0, 2, 1), rat(1));
        assert_eq!(c.derived_dim(), 1);
    }

    #[test]
    fn family_dimension_errors() {
        assert_eq!(
            make_family(3, 2),
            Err(ClassifyError::DimensionTooSmall { variant: 3, dim: 2, min: 3 })
        );
        assert_eq!(
            make_family(1, 1),
            Err(ClassifyError::DimensionTooSmall { variant: 1, dim: 1, min: 2 })
        );
        assert_eq!(make_family(4, 6), Err(ClassifyError::UnknownVariant(4)));
    }

    #[test]
    fn classifier_on_reference_families() {
        assert_eq!(classify_k1(&make_family(1, 3).unwrap()), Ok(K1Variant::Square));
        assert_eq!(classify_k1(&make_family(2, 3).unwrap()), Ok(K1Variant::Absorbing));
        assert_eq!(classify_k1(&make_family(3, 3).unwrap()), Ok(K1Variant::Heisenberg));
        assert_eq!(
            classify_k1(&make_family(0, 3).unwrap()),
            Err(ClassifyError::DerivedDimension(0))
        );
    }

    #[test]
    fn k2_constructor_and_shape_recovery() {
        let zero = make_k2(&K2Params::zero(5).unwrap());
        assert_eq!(zero, Algebra::zero(5));
        assert_eq!(k2_condition(&zero), Ok(true));

        let mut lambda = vec![rat(0); 5];
        lambda[1] = rat(1);
        let p = K2Params::new(lambda, vec![rat(0); 5], vec![rat(0); 5]).unwrap();
        let a = make_k2(&p);
        assert_eq!(*a.constant(0, 1, 1), rat(1));
        assert_eq!(a.derived_dim(), 1);
        assert_eq!(k2_params_of(&a), Some(p));

        assert_eq!(K2Params::zero(4), Err(ClassifyError::InvalidParams { n: 4 }));
        // Family 1 is itself a member (lambda_1 = 1); a product e2e1 is not.
        assert_eq!(k2_condition(&make_family(1, 5).unwrap()), Ok(true));
        let mut other = Algebra::zero(5);
        other.set_constant(1, 0, 1, rat(1));
        assert_eq!(k2_condition(&other), Err(ClassifyError::NotK2Shape));
    }

    #[test]
    fn identity_scramble_is_a_no_op() {
        let a = make_family(3, 4).unwrap();
        let b = SymForm::new(Mat::identity(4)).unwrap();
        let (a2, b2) = scramble_with(&a, &b, &Mat::identity(4)).unwrap();
        assert_eq!(a2, a);
        assert_eq!(b2, b);
    }

    #[test]
    fn scramble_is_deterministic_and_invertible() {
        let a = make_family(2, 4).unwrap();
        let b = find_nondegenerate(&invariant_form_space(&a), 1).unwrap();
        let (a1, b1, p1) = scramble(&a, &b, 42).unwrap();
        let (a2, b2, p2) = scramble(&a, &b, 42).unwrap();
        assert_eq!((&a1, &b1, &p1), (&a2, &b2, &p2));
        assert!(p1.entries().iter().all(|v| *v <= rat(3) && *v >= rat(-3)));
        assert!(!p1.determinant().is_zero());
    }

    #[test]
    fn random_k2_params_satisfy_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 5..=8 {
            let p = random_k2_params(&mut rng, n);
            assert_eq!(k2_condition(&make_k2(&p)), Ok(true));
        }
    }
}
