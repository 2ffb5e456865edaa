//! Matrices of multivariate polynomials: generic rank over the rational
//! function field and rational points that attain it.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::mat::Mat;
use super::poly::Poly;
use super::rational::{rat, Rational};

/// Sampling attempts before [`find_generic_point`] gives up.
pub const GENERIC_POINT_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericPointError {
    #[error("no point of rank {target} found after {attempts} sampling attempts")]
    Exhausted { target: usize, attempts: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars, "entry has the wrong indeterminate set");
                entries.push(p);
            }
        }
        PolyMat {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    /// `sum_j t_j * coefficients[j]`, one indeterminate per coefficient matrix.
    pub fn linear_pencil(rows: usize, cols: usize, coefficients: &[Mat]) -> Self {
        let nvars = coefficients.len();
        for m in coefficients {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "pencil shape mismatch");
        }
        PolyMat::from_fn(rows, cols, nvars, |i, j| {
            let mut p = Poly::zero(nvars);
            for (v, m) in coefficients.iter().enumerate() {
                if !m[(i, j)].is_zero() {
                    p = &p + &Poly::var(nvars, v, m[(i, j)].clone());
                }
            }
            p
        })
    }

    /// `base + l * direction` in the single indeterminate `l`.
    pub fn affine_pencil(base: &Mat, direction: &Mat) -> Self {
        assert_eq!((base.rows(), base.cols()), (direction.rows(), direction.cols()));
        PolyMat::from_fn(base.rows(), base.cols(), 1, |i, j| {
            &Poly::constant(1, base[(i, j)].clone()) + &Poly::var(1, 0, direction[(i, j)].clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn eval(&self, point: &[Rational]) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(point))
    }

    /// Rank over the field of rational functions, by fraction-free
    /// (Bareiss) elimination. After `r` pivots every trailing entry is an
    /// `(r+1)`-minor of the input, so each division by the previous pivot is
    /// exact.
    pub fn generic_rank(&self) -> usize {
        let mut m: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let one = Poly::constant(self.nvars, rat(1));
        let mut prev = one;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let lead = row[c].clone();
                for j in c + 1..self.cols {
                    let num = &(&pivot_row[c] * &row[j]) - &(&lead * &pivot_row[j]);
                    row[j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division must be exact");
                }
                row[c] = Poly::zero(self.nvars);
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }
}

/// A rational assignment of the indeterminates at which `m` attains rank
/// `target` (normally its generic rank).
///
/// Attempt `a` draws each coordinate uniformly from the integer box
/// `[-2^(a+1), 2^(a+1)]` (width capped at 2^41). By Schwartz-Zippel a
/// nonzero `(target)`-minor of total degree `d` vanishes at a random box
/// point with probability at most `d / (2^(a+2) + 1)`, so exhaustion only
/// happens when `target` exceeds the generic rank.
pub fn find_generic_point(
    m: &PolyMat,
    target: usize,
    seed: u64,
) -> Result<Vec<Rational>, GenericPointError> {
    if target == 0 {
        return Ok(vec![Rational::zero(); m.nvars()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..GENERIC_POINT_ATTEMPTS {
        let half_width: i64 = 2 << attempt.min(40);
        let point: Vec<Rational> = (0..m.nvars())
            .map(|_| rat(rng.gen_range(-half_width..=half_width)))
            .collect();
        if m.eval(&point).rank() == target {
            return Ok(point);
        }
    }
    Err(GenericPointError::Exhausted {
        target,
        attempts: GENERIC_POINT_ATTEMPTS,
    })
}

impl std::fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMat{}x{} in {} vars", self.rows, self.cols, self.nvars)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
