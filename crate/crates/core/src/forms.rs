//! Symmetric bilinear forms invariant under right multiplication.
//!
//! A form `B` is invariant when `<R_x y, z> = <y, R_x z>` for all x, y, z,
//! i.e. `transpose(R_x) B = B R_x`. Linearity in `x` reduces this to the
//! basis operators `R_{e_j}`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::exactlin::{rat, signature, Mat, Rational, Signature};

/// Largest form-space dimension for which the exhaustive `{-1, 0, 1}`
/// coefficient sweep runs before random sampling.
pub const SWEEP_DIMENSION_CAP: usize = 12;

/// Random combinations tried after the sweep.
pub const RANDOM_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("form matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate (signature has {zero} zero directions)")]
    Degenerate { zero: usize },
    #[error("form has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A symmetric bilinear form with its cached signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    matrix: Mat,
    signature: Signature,
}

impl SymForm {
    pub fn new(matrix: Mat) -> Result<Self, FormError> {
        if !matrix.is_square() {
            return Err(FormError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        let signature = signature(&matrix);
        Ok(SymForm { matrix, signature })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.signature.is_nondegenerate()
    }

    /// `(n - p, p)`: counts of positive and negative directions.
    pub fn form_type(&self) -> (usize, usize) {
        self.signature.form_type()
    }

    /// The number `p` of negative directions.
    pub fn negative_index(&self) -> usize {
        self.signature.negative
    }

    pub fn negate(&self) -> SymForm {
        SymForm {
            matrix: -&self.matrix,
            signature: Signature {
                positive: self.signature.negative,
                negative: self.signature.positive,
                zero: self.signature.zero,
            },
        }
    }

    /// `<x, y>`.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let by = self.matrix.mul_vec(y);
        x.iter().zip(&by).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The form in the basis given by the columns of `p`: `transpose(p) B p`.
    pub fn transport(&self, p: &Mat) -> Result<SymForm, FormError> {
        if p.rows() != self.dim() {
            return Err(FormError::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        SymForm::new(&(&p.transpose() * &self.matrix) * p)
    }

    fn check_dim(&self, algebra: &Algebra) -> Result<(), FormError> {
        if self.dim() == algebra.dim() {
            Ok(())
        } else {
            Err(FormError::DimensionMismatch {
                expected: algebra.dim(),
                found: self.dim(),
            })
        }
    }
}

/// Whether every right multiplication is self-adjoint for `form`.
pub fn is_invariant(algebra: &Algebra, form: &SymForm) -> Result<bool, FormError> {
    form.check_dim(algebra)?;
    let b = form.matrix();
    Ok(algebra
        .right_basis_ops()
        .iter()
        .all(|r| &r.transpose() * b == b * r))
}

/// Basis of the space of invariant symmetric forms.
///
/// Unknowns are the upper-triangle entries `b_{ij}`, `i <= j`, in row-major
/// order; equations are the entries of `transpose(R_{e_j}) B - B R_{e_j}`,
/// operator by operator, each in row-major order.
pub fn invariant_form_space(algebra: &Algebra) -> Vec<Mat> {
    let n = algebra.dim();
    let coords: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let unknown = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        coords.iter().position(|&c| c == (a, b)).expect("upper-triangle coordinate")
    };

    let mut equations: Vec<Vec<Rational>> = Vec::new();
    for r in algebra.right_basis_ops() {
        if r.is_zero() {
            continue;
        }
        for row in 0..n {
            for col in 0..n {
                // (R^T B)[row][col] - (B R)[row][col]
                //   = sum_s R[s][row] B[s][col] - sum_s B[row][s] R[s][col]
                let mut eq = vec![Rational::zero(); coords.len()];
                for s in 0..n {
                    if !r[(s, row)].is_zero() {
                        eq[unknown(s, col)] += &r[(s, row)];
                    }
                    if !r[(s, col)].is_zero() {
                        eq[unknown(row, s)] -= &r[(s, col)];
                    }
                }
                if eq.iter().any(|v| !v.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }

    let system = if equations.is_empty() {
        Mat::zeros(0, coords.len())
    } else {
        Mat::from_rows(equations)
    };
    system
        .kernel_basis()
        .into_iter()
        .map(|v| symmetric_from_upper(n, &coords, &v))
        .collect()
}

fn symmetric_from_upper(n: usize, coords: &[(usize, usize)], values: &[Rational]) -> Mat {
    let mut m = Mat::zeros(n, n);
    for (&(i, j), v) in coords.iter().zip(values) {
        m[(i, j)] = v.clone();
        m[(j, i)] = v.clone();
    }
    m
}

fn combine(space: &[Mat], coefficients: &[Rational]) -> Mat {
    let n = space[0].rows();
    space
        .iter()
        .zip(coefficients)
        .filter(|(_, c)| !c.is_zero())
        .fold(Mat::zeros(n, n), |acc, (m, c)| &acc + &m.scale(c))
}

/// A nondegenerate member of the span of `space`, if one is found.
///
/// For spaces of dimension at most [`SWEEP_DIMENSION_CAP`], every
/// coefficient vector in `{-1, 0, 1}^d` is tried first, ordered by support
/// size and then lexicographically (with `1` before `-1`). Afterwards
/// [`RANDOM_ATTEMPTS`] seeded integer combinations from widening boxes are
/// tried. If the determinant is not identically zero on the span, the random
/// phase fails with probability below `n / 2^(a+2)` at attempt `a`.
pub fn find_nondegenerate(space: &[Mat], seed: u64) -> Option<SymForm> {
    if space.is_empty() {
        return None;
    }
    let d = space.len();
    let accept = |coeffs: &[Rational]| -> Option<SymForm> {
        let m = combine(space, coeffs);
        if m.determinant().is_zero() {
            None
        } else {
            SymForm::new(m).ok()
        }
    };

    if d <= SWEEP_DIMENSION_CAP {
        for support in 1..=d {
            let mut found = None;
            for_each_sign_vector(d, support, &mut |coeffs| {
                found = accept(coeffs);
                found.is_some()
            });
            if found.is_some() {
                return found;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..RANDOM_ATTEMPTS {
        let half_width: i64 = 2 << attempt.min(40);
        let coeffs: Vec<Rational> = (0..d)
            .map(|_| rat(rng.gen_range(-half_width..=half_width)))
            .collect();
        if let Some(f) = accept(&coeffs) {
            return Some(f);
        }
    }
    None
}

/// Calls `visit` on each vector in `{-1,0,1}^d` with exactly `support`
/// nonzero entries until it returns `true`.
fn for_each_sign_vector(d: usize, support: usize, visit: &mut dyn FnMut(&[Rational]) -> bool) {
    fn positions(
        d: usize,
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if left == 0 {
            return visit(chosen);
        }
        for p in start..=d - left {
            chosen.push(p);
            if positions(d, p + 1, left - 1, chosen, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    positions(d, 0, support, &mut Vec::new(), &mut |chosen| {
        for signs in 0u32..(1 << chosen.len()) {
            let mut coeffs = vec![Rational::zero(); d];
            for (bit, &p) in chosen.iter().enumerate() {
                coeffs[p] = if signs >> (chosen.len() - 1 - bit) & 1 == 0 { rat(1) } else { rat(-1) };
            }
            if visit(&coeffs) {
                return true;
            }
        }
        false
    });
}

/// Returns `form` when it has at most as many negative as positive
/// directions, and `-form` otherwise, so that `p <= n - p`.
pub fn normalize_orientation(form: &SymForm) -> Result<SymForm, FormError> {
    if !form.is_nondegenerate() {
        return Err(FormError::Degenerate {
            zero: form.signature().zero,
        });
    }
    let (plus, minus) = form.form_type();
    Ok(if minus <= plus { form.clone() } else { form.negate() })
}
