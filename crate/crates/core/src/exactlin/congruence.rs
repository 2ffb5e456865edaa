//! Rational congruence diagonalization of symmetric matrices and the
//! signature (Sylvester inertia) it determines.

use num_traits::{One, Signed, Zero};

use super::mat::Mat;
use super::rational::Rational;

/// `transpose(p) * s * p == d` with `d` diagonal and `p` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub p: Mat,
    pub d: Mat,
}

impl Congruence {
    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.d.rows()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    /// `(n - p, p)` for a nondegenerate form.
    pub fn form_type(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn of_diagonal<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut sig = Signature {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for v in entries {
            if v.is_zero() {
                sig.zero += 1;
            } else if v.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
        }
        sig
    }
}

/// Symmetric Gaussian elimination: every row operation is mirrored by the
/// same column operation and recorded in the columns of `p`.
///
/// When the current diagonal entry vanishes, a later nonzero diagonal entry
/// is swapped in; failing that, a later column with a nonzero coupling is
/// added, which makes the pivot `2 * s[i][j]`.
///
/// Panics if `s` is not symmetric.
pub fn congruent_diagonalize(s: &Mat) -> Congruence {
    assert!(s.is_symmetric(), "congruent_diagonalize requires a symmetric matrix");
    let n = s.rows();
    let mut a = s.clone();
    let mut p = Mat::identity(n);

    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                a.swap_rows(i, j);
                a.swap_cols(i, j);
                p.swap_cols(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
                add_multiple(&mut a, &mut p, i, j, &Rational::one());
            } else {
                continue;
            }
        }
        let pivot = a[(i, i)].clone();
        for j in i + 1..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            let factor = -(&a[(i, j)] / &pivot);
            add_multiple(&mut a, &mut p, j, i, &factor);
        }
    }

    debug_assert!(a.is_diagonal());
    Congruence { p, d: a }
}

/// Column/row `target += factor * source` applied congruently.
fn add_multiple(a: &mut Mat, p: &mut Mat, target: usize, source: usize, factor: &Rational) {
    let n = a.rows();
    for r in 0..n {
        let v = &a[(r, source)] * factor;
        a[(r, target)] += v;
    }
    for c in 0..n {
        let v = &a[(source, c)] * factor;
        a[(target, c)] += v;
    }
    for r in 0..n {
        let v = &p[(r, source)] * factor;
        p[(r, target)] += v;
    }
}

pub fn signature(s: &Mat) -> Signature {
    Signature::of_diagonal(congruent_diagonalize(s).diagonal().iter())
}
