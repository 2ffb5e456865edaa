//! Square-zero canonical basis for right multiplications and the structure
//! claims it makes checkable.
//!
//! Given a fermionic left-symmetric algebra with an invariant nondegenerate
//! form, pick `x0` with `dim Im R_{x0} = k` maximal. Because `R_{x0}^2 = 0`
//! and `R_{x0}` is self-adjoint, the space splits as `k` hyperbolic pairs
//! `(u_i, w_i = R_{x0} u_i)` plus an orthogonal complement killed by
//! `R_{x0}`. In that basis every right multiplication is confined to the
//! lower-left corner of its pair blocks, and any two right multiplications
//! compose to zero.
//!
//! Over the rationals the pair pairing `<u_i, w_i> = omega_i` is kept as a
//! nonzero weight rather than scaled to 1.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exactlin::{
    congruent_diagonalize, find_generic_point, rat, sign, GenericPointError, Mat, PolyMat,
    Rational,
};
use crate::forms::{is_invariant, normalize_orientation, FormError, SymForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("algebra is not left-symmetric")]
    NotLeftSymmetric,
    #[error("algebra is not fermionic")]
    NotFermionic,
    #[error("form is not invariant")]
    FormNotInvariant,
    #[error("form orientation has more negative than positive directions")]
    OrientationNotNormalized,
    #[error("R_x0 does not square to zero")]
    NotSquareZero,
    #[error("pairing between preimages and images is degenerate")]
    PairingDegenerate,
    #[error("x0 does not have maximal rank: direction e{direction} reaches rank above {k}")]
    RankNotMaximal { direction: usize, k: usize },
    #[error("canonical basis invariant violated: {0}")]
    InvariantViolated(&'static str),
    #[error("report does not match algebra: {0}")]
    ReportMismatch(&'static str),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    GenericPoint(#[from] GenericPointError),
}

/// An element whose right multiplication has maximal rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRank {
    pub x0: Element,
    pub k: usize,
    /// Number of `(direction, l)` evaluations in the maximality certificate.
    pub certificate_points: usize,
}

/// Picks `x0` attaining the generic rank `k` of the pencil `sum_j t_j R_{e_j}`.
///
/// The certificate: for every basis direction `y` and each of `k + 2`
/// distinct values `l`, `rank R_{x0 + l y} <= k`. Each `(k+1)`-minor of
/// `R_{x0} + l R_y` is a polynomial of degree at most `k + 1` in `l`, so
/// vanishing at `k + 2` points makes it vanish identically.
pub fn max_rank_element(algebra: &Algebra, seed: u64) -> Result<MaxRank, CanonError> {
    if !algebra.check_fermionic() {
        return Err(CanonError::NotFermionic);
    }
    let n = algebra.dim();
    let rights = algebra.right_basis_ops();
    let pencil = PolyMat::linear_pencil(n, n, &rights);
    let k = pencil.generic_rank();
    if k == 0 {
        return Ok(MaxRank {
            x0: Element::zero(n),
            k,
            certificate_points: 0,
        });
    }
    let x0 = Element::new(find_generic_point(&pencil, k, seed)?);
    let r0 = algebra.right_op(&x0)?;
    let mut checked = 0;
    for (direction, ry) in rights.iter().enumerate() {
        for l in 1..=(k as i64 + 2) {
            checked += 1;
            if (&r0 + &ry.scale(&rat(l))).rank() > k {
                return Err(CanonError::RankNotMaximal { direction: direction + 1, k });
            }
        }
    }
    Ok(MaxRank {
        x0,
        k,
        certificate_points: checked,
    })
}

/// Canonical basis data for one `(algebra, form, x0)` triple.
///
/// Columns of `basis` are `u_1, w_1, ..., u_k, w_k` followed by the
/// complement, negative-norm vectors first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonReport {
    pub x0: Element,
    pub k: usize,
    pub basis: Mat,
    /// `omega_i = <u_i, w_i>`.
    pub pair_weights: Vec<Rational>,
    /// `sign(omega_i)`.
    pub pair_signs: Vec<i8>,
    /// Norms of the complement basis vectors.
    pub complement_diag: Vec<Rational>,
    /// For each new basis vector `e'_j`, the `k x k` matrix `d_{ab}`: the
    /// coefficient of `w_a` in `R_{e'_j} u_b`.
    pub d_forms: Vec<Mat>,
}

impl CanonReport {
    /// The metric the basis is supposed to produce: weighted hyperbolic
    /// blocks followed by the diagonal complement.
    pub fn expected_metric(&self) -> Mat {
        let n = self.basis.rows();
        let mut g = Mat::zeros(n, n);
        for (i, w) in self.pair_weights.iter().enumerate() {
            g[(2 * i, 2 * i + 1)] = w.clone();
            g[(2 * i + 1, 2 * i)] = w.clone();
        }
        for (i, v) in self.complement_diag.iter().enumerate() {
            g[(2 * self.k + i, 2 * self.k + i)] = v.clone();
        }
        g
    }
}

fn check_preconditions(algebra: &Algebra, form: &SymForm) -> Result<(), CanonError> {
    if !is_invariant(algebra, form)? {
        return Err(CanonError::FormNotInvariant);
    }
    if !form.is_nondegenerate() {
        return Err(FormError::Degenerate {
            zero: form.signature().zero,
        }
        .into());
    }
    let (plus, minus) = form.form_type();
    if minus > plus {
        return Err(CanonError::OrientationNotNormalized);
    }
    Ok(())
}

/// Builds the hyperbolic-pair basis adapted to `R_{x0}`.
///
/// Preimages `u_i` are the standard basis vectors at the pivot columns of
/// `R_{x0}`, so `w_i = R_{x0} u_i` is a basis of the image. The pairing
/// `G_ij = <u_i, w_j>` is congruence-diagonalized, each `u_i` is made
/// isotropic by subtracting `H_ij / (2 omega_j) w_j` where `H` is the Gram
/// matrix of the `u`'s, and the orthogonal complement of the pairs is
/// congruence-diagonalized.
pub fn canonical_basis(
    algebra: &Algebra,
    form: &SymForm,
    x0: &Element,
) -> Result<CanonReport, CanonError> {
    check_preconditions(algebra, form)?;
    let n = algebra.dim();
    let b = form.matrix();
    let r0 = algebra.right_op(x0)?;
    if !(&r0 * &r0).is_zero() {
        return Err(CanonError::NotSquareZero);
    }

    // Im R_{x0} is totally isotropic and is the orthogonal complement of Ker R_{x0}.
    if !(&(&r0.transpose() * b) * &r0).is_zero() {
        return Err(CanonError::InvariantViolated("image of R_x0 is not isotropic"));
    }
    let pivots = r0.echelon().pivots;
    let k = pivots.len();
    let kernel = r0.kernel_basis();
    let image: Vec<Vec<Rational>> = pivots.iter().map(|&c| r0.column(c)).collect();
    let image_perp_kernel = image
        .iter()
        .all(|w| kernel.iter().all(|z| form.pair(w, z).is_zero()));
    if !image_perp_kernel || kernel.len() + k != n {
        return Err(CanonError::InvariantViolated("image of R_x0 is not the complement of its kernel"));
    }

    let (pairs, weights) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        hyperbolic_pairs(form, &r0, &pivots)?
    };

    // Complement: vectors orthogonal to every u_i and w_i.
    let mut constraints = Vec::with_capacity(2 * k);
    for (u, w) in &pairs {
        constraints.push(b.mul_vec(u));
        constraints.push(b.mul_vec(w));
    }
    let complement_raw = if k == 0 {
        (0..n).map(|j| Element::basis(n, j).into_coords()).collect()
    } else {
        Mat::from_rows(constraints).kernel_basis()
    };
    if complement_raw.len() != n - 2 * k {
        return Err(CanonError::InvariantViolated("pair span is degenerate"));
    }
    let c = Mat::from_columns(n, &complement_raw);
    let restricted = &(&c.transpose() * b) * &c;
    let diag = congruent_diagonalize(&restricted);
    let complement_basis = &c * &diag.p;
    let mut complement: Vec<(Vec<Rational>, Rational)> = (0..complement_basis.cols())
        .map(|j| (complement_basis.column(j), diag.d[(j, j)].clone()))
        .collect();
    if complement.iter().any(|(_, v)| v.is_zero()) {
        return Err(CanonError::InvariantViolated("complement is degenerate"));
    }
    complement.sort_by_key(|(_, v)| sign(v) > 0);

    let mut columns = Vec::with_capacity(n);
    for (u, w) in &pairs {
        columns.push(u.clone());
        columns.push(w.clone());
    }
    columns.extend(complement.iter().map(|(v, _)| v.clone()));
    let basis = Mat::from_columns(n, &columns);

    let mut report = CanonReport {
        x0: x0.clone(),
        k,
        basis,
        pair_signs: weights.iter().map(sign).collect(),
        pair_weights: weights,
        complement_diag: complement.into_iter().map(|(_, v)| v).collect(),
        d_forms: Vec::new(),
    };

    let gram = &(&report.basis.transpose() * b) * &report.basis;
    if gram != report.expected_metric() {
        return Err(CanonError::InvariantViolated("metric is not in block form"));
    }
    let transported = algebra.transport(&report.basis)?;
    report.d_forms = extract_d_forms(&transported, k);
    Ok(report)
}

/// Isotropic preimages `u_i` with `w_i = R u_i` and `<u_i, w_j> = omega_i delta_ij`.
#[allow(clippy::type_complexity)]
fn hyperbolic_pairs(
    form: &SymForm,
    r0: &Mat,
    pivots: &[usize],
) -> Result<(Vec<(Vec<Rational>, Vec<Rational>)>, Vec<Rational>), CanonError> {
    let n = r0.rows();
    let k = pivots.len();
    let u = Mat::from_columns(
        n,
        &pivots.iter().map(|&c| Element::basis(n, c).into_coords()).collect::<Vec<_>>(),
    );
    let w = r0 * &u;
    let b = form.matrix();
    let pairing = &(&u.transpose() * b) * &w;
    if !pairing.is_symmetric() {
        return Err(CanonError::InvariantViolated("pairing is not symmetric"));
    }
    if pairing.rank() != k {
        return Err(CanonError::PairingDegenerate);
    }
    let diag = congruent_diagonalize(&pairing);
    let u = &u * &diag.p;
    let w = &w * &diag.p;
    let weights = diag.diagonal();

    // <u_i - sum_s a_is w_s, u_j - sum_t a_jt w_t> = H_ij - a_ji omega_i - a_ij omega_j
    let h = &(&u.transpose() * b) * &u;
    let mut pairs = Vec::with_capacity(k);
    for i in 0..k {
        let mut ui = u.column(i);
        for j in 0..k {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = &h[(i, j)] / (&weights[j] * rat(2));
            for (slot, wv) in ui.iter_mut().zip(w.column(j)) {
                *slot -= &a * wv;
            }
        }
        pairs.push((ui, w.column(i)));
    }
    Ok((pairs, weights))
}

/// `d_{ab}(e'_j)` read from the transported right multiplications.
fn extract_d_forms(transported: &Algebra, k: usize) -> Vec<Mat> {
    transported
        .right_basis_ops()
        .iter()
        .map(|r| Mat::from_fn(k, k, |a, b| r[(2 * a + 1, 2 * b)].clone()))
        .collect()
}

/// Truth value of each structural claim about right multiplications in the
/// canonical basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct StructureClaims {
    /// `R_{x0}` sends `u_i -> w_i` and kills every other basis vector.
    pub x0_jordan_shape: bool,
    /// `transpose(P) B P` equals the weighted block metric.
    pub metric_block_form: bool,
    /// (a) complement-to-complement block of every `R_x` vanishes.
    pub complement_block_zero: bool,
    /// (b) pair-to-complement and complement-to-pair blocks vanish.
    pub side_blocks_zero: bool,
    /// (c) each 2x2 pair block has the shape `[[0, 0], [d, 0]]`.
    pub core_block_shape: bool,
    /// (d) `d_ab omega_a = d_ba omega_b`.
    pub weighted_symmetry: bool,
    /// (e) `R_x R_y = 0` for all x, y.
    pub products_vanish: bool,
    /// The report's `d_forms` agree with a recomputation.
    pub d_forms_consistent: bool,
}

impl StructureClaims {
    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, v)| *v)
    }

    pub fn named(&self) -> [(&'static str, bool); 8] {
        [
            ("x0_jordan_shape", self.x0_jordan_shape),
            ("metric_block_form", self.metric_block_form),
            ("complement_block_zero", self.complement_block_zero),
            ("side_blocks_zero", self.side_blocks_zero),
            ("core_block_shape", self.core_block_shape),
            ("weighted_symmetry", self.weighted_symmetry),
            ("products_vanish", self.products_vanish),
            ("d_forms_consistent", self.d_forms_consistent),
        ]
    }
}

/// Recomputes every structure claim from scratch in the report's basis.
pub fn verify_structure(
    algebra: &Algebra,
    form: &SymForm,
    report: &CanonReport,
) -> Result<StructureClaims, CanonError> {
    let n = algebra.dim();
    let k = report.k;
    if form.dim() != n || report.basis.rows() != n || report.basis.cols() != n {
        return Err(CanonError::ReportMismatch("dimensions differ"));
    }
    if 2 * k > n
        || report.pair_weights.len() != k
        || report.complement_diag.len() != n - 2 * k
        || report.x0.dim() != n
    {
        return Err(CanonError::ReportMismatch("pair and complement counts are inconsistent"));
    }
    let p_inv = report
        .basis
        .inverse()
        .ok_or(CanonError::ReportMismatch("basis is singular"))?;
    let transported = algebra.transport(&report.basis)?;
    let rights = transported.right_basis_ops();

    let gram = &(&report.basis.transpose() * form.matrix()) * &report.basis;
    let metric_block_form = gram == report.expected_metric();

    let x0_new = Element::new(p_inv.mul_vec(report.x0.coords()));
    let r0 = transported.right_op(&x0_new)?;
    let x0_jordan_shape = (0..n).all(|i| {
        (0..n).all(|j| {
            let expect_one = j < 2 * k && j % 2 == 0 && i == j + 1;
            if expect_one { r0[(i, j)] == rat(1) } else { r0[(i, j)].is_zero() }
        })
    });

    let pair = 2 * k;
    let complement_block_zero = rights
        .iter()
        .all(|r| (pair..n).all(|i| (pair..n).all(|j| r[(i, j)].is_zero())));
    let side_blocks_zero = rights.iter().all(|r| {
        (0..pair).all(|i| (pair..n).all(|j| r[(i, j)].is_zero()))
            && (pair..n).all(|i| (0..pair).all(|j| r[(i, j)].is_zero()))
    });
    let core_block_shape = rights.iter().all(|r| {
        (0..k).all(|a| {
            (0..k).all(|b| {
                r[(2 * a, 2 * b)].is_zero()
                    && r[(2 * a, 2 * b + 1)].is_zero()
                    && r[(2 * a + 1, 2 * b + 1)].is_zero()
            })
        })
    });
    let recomputed = extract_d_forms(&transported, k);
    let weighted_symmetry = recomputed.iter().all(|d| {
        (0..k).all(|a| {
            (0..k).all(|b| &d[(a, b)] * &report.pair_weights[a] == &d[(b, a)] * &report.pair_weights[b])
        })
    });
    let products_vanish = rights.iter().all(|a| rights.iter().all(|b| (a * b).is_zero()));
    let d_forms_consistent = recomputed == report.d_forms;

    Ok(StructureClaims {
        x0_jordan_shape,
        metric_block_form,
        complement_block_zero,
        side_blocks_zero,
        core_block_shape,
        weighted_symmetry,
        products_vanish,
        d_forms_consistent,
    })
}

/// Outcome of the full reduction on one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    /// `(n - p, p)` after orientation normalization.
    pub form_type: (usize, usize),
    pub k: usize,
    pub report: CanonReport,
    pub claims: StructureClaims,
    /// `k <= p`.
    pub rank_within_negative_index: bool,
    pub novikov: bool,
    pub derived_dim: usize,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.claims.all()
            && self.novikov
            && self.rank_within_negative_index
            && self.derived_dim == self.k
    }
}

/// Runs orientation normalization, rank maximization, the canonical basis
/// and every structure claim, then confirms the Novikov identity and
/// `dim AA = k`.
pub fn theorem_check(
    algebra: &Algebra,
    form: &SymForm,
    seed: u64,
) -> Result<TheoremReport, CanonError> {
    if !algebra.check_left_symmetric() {
        return Err(CanonError::NotLeftSymmetric);
    }
    if !algebra.check_fermionic() {
        return Err(CanonError::NotFermionic);
    }
    if !is_invariant(algebra, form)? {
        return Err(CanonError::FormNotInvariant);
    }
    let oriented = normalize_orientation(form)?;
    let MaxRank { x0, k, .. } = max_rank_element(algebra, seed)?;
    let report = canonical_basis(algebra, &oriented, &x0)?;
    let claims = verify_structure(algebra, &oriented, &report)?;
    Ok(TheoremReport {
        form_type: oriented.form_type(),
        k,
        rank_within_negative_index: k <= oriented.negative_index(),
        claims,
        report,
        novikov: algebra.check_novikov(),
        derived_dim: algebra.derived_dim(),
    })
}

/// Image isotropy and the rank bound for every basis right multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotropyCheck {
    /// `<Im R_x, Im R_x> = 0` for all basis x.
    pub images_isotropic: bool,
    /// `dim Im R_x <= p` for all basis x, with `p` taken after orientation
    /// normalization.
    pub ranks_within_negative_index: bool,
}

pub fn isotropy_check(algebra: &Algebra, form: &SymForm) -> Result<IsotropyCheck, CanonError> {
    let oriented = normalize_orientation(form)?;
    if oriented.dim() != algebra.dim() {
        return Err(FormError::DimensionMismatch {
            expected: algebra.dim(),
            found: oriented.dim(),
        }
        .into());
    }
    let p = oriented.negative_index();
    let rights = algebra.right_basis_ops();
    Ok(IsotropyCheck {
        images_isotropic: rights
            .iter()
            .all(|r| (&(&r.transpose() * oriented.matrix()) * r).is_zero()),
        ranks_within_negative_index: rights.iter().all(|r| r.rank() <= p),
    })
}
