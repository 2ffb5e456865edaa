//! Algebras given by structure constants, and checkers for the identities
//! that define left-symmetric, fermionic Novikov and Novikov algebras.
//!
//! Basis indices are 0-based here: index `i` is the basis vector `e_{i+1}`.
//! Every identity is trilinear, so checking it on basis triples decides it
//! for all elements. The checks are phrased through the multiplication
//! operators `L_x(y) = xy` and `R_x(y) = yx`:
//!
//! * left symmetry `(xy)z - x(yz) = (yx)z - y(xz)` is `L_{xy-yx} = [L_x, L_y]`;
//! * the fermionic identity `(xy)z = -(xz)y` is `R_z R_y + R_y R_z = 0`;
//! * the Novikov identity `(xy)z = (xz)y` is `R_z R_y = R_y R_z`.

use std::ops::{Add, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{Mat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: algebra has dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis change must be an invertible {0}x{0} matrix")]
    SingularBasisChange(usize),
}

/// Coordinate vector of an algebra element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Rational>);

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![Rational::zero(); dim])
    }

    /// Basis vector `e_{index+1}`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Element::zero(dim);
        v.0[index] = crate::exactlin::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element(self.0.iter().map(|v| v * c).collect())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// A bilinear product on `Q^n`: `e_i e_j = sum_m c[i][j][m] e_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    dim: usize,
    constants: Vec<Rational>,
}

impl Algebra {
    /// The algebra with every product zero.
    pub fn zero(dim: usize) -> Self {
        Algebra {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut a = Algebra::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for m in 0..dim {
                    a.constants[(i * dim + j) * dim + m] = f(i, j, m);
                }
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `e_m` in `e_i e_j`.
    pub fn constant(&self, i: usize, j: usize, m: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + m]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, m: usize, value: Rational) {
        let n = self.dim;
        self.constants[(i * n + j) * n + m] = value;
    }

    /// `e_i e_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = (i * self.dim + j) * self.dim;
        Element(self.constants[start..start + self.dim].to_vec())
    }

    fn check_dim(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (m, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, m);
                    if !c.is_zero() {
                        *slot += &w * c;
                    }
                }
            }
        }
        Ok(Element(out))
    }

    /// Matrix of `y -> yx` in the standard basis.
    pub fn right_op(&self, x: &Element) -> Result<Mat, AlgebraError> {
        self.check_dim(x)?;
        let n = self.dim;
        let mut r = Mat::zeros(n, n);
        for (j, xj) in x.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for i in 0..n {
                for m in 0..n {
                    let c = self.constant(i, j, m);
                    if !c.is_zero() {
                        r[(m, i)] += xj * c;
                    }
                }
            }
        }
        Ok(r)
    }

    /// Matrix of `y -> xy` in the standard basis.
    pub fn left_op(&self, x: &Element) -> Result<Mat, AlgebraError> {
        self.check_dim(x)?;
        let n = self.dim;
        let mut l = Mat::zeros(n, n);
        for (i, xi) in x.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..n {
                for m in 0..n {
                    let c = self.constant(i, j, m);
                    if !c.is_zero() {
                        l[(m, j)] += xi * c;
                    }
                }
            }
        }
        Ok(l)
    }

    /// `R_{e_1}, ..., R_{e_n}`.
    pub fn right_basis_ops(&self) -> Vec<Mat> {
        (0..self.dim)
            .map(|j| self.right_op(&Element::basis(self.dim, j)).expect("basis dimension"))
            .collect()
    }

    /// `L_{e_1}, ..., L_{e_n}`.
    pub fn left_basis_ops(&self) -> Vec<Mat> {
        (0..self.dim)
            .map(|i| self.left_op(&Element::basis(self.dim, i)).expect("basis dimension"))
            .collect()
    }

    /// `(xy)z - x(yz) = (yx)z - y(xz)` for all x, y, z.
    pub fn check_left_symmetric(&self) -> bool {
        let n = self.dim;
        let lefts = self.left_basis_ops();
        for a in 0..n {
            for b in a + 1..n {
                let bracket = &self.basis_product(a, b) - &self.basis_product(b, a);
                let l_bracket = self.left_op(&bracket).expect("bracket dimension");
                let comm = &(&lefts[a] * &lefts[b]) - &(&lefts[b] * &lefts[a]);
                if l_bracket != comm {
                    return false;
                }
            }
        }
        true
    }

    /// `(xy)z = -(xz)y` for all x, y, z. Implies `R_x^2 = 0`.
    pub fn check_fermionic(&self) -> bool {
        let rights = self.right_basis_ops();
        pairwise(&rights, |a, b| (&(a * b) + &(b * a)).is_zero())
    }

    /// `(xy)z = (xz)y` for all x, y, z.
    pub fn check_novikov(&self) -> bool {
        let rights = self.right_basis_ops();
        pairwise(&rights, |a, b| a * b == b * a)
    }

    /// Whether every pair of left multiplications commutes.
    pub fn left_ops_commute(&self) -> bool {
        let lefts = self.left_basis_ops();
        pairwise(&lefts, |a, b| a * b == b * a)
    }

    /// Whether every product of two right multiplications vanishes.
    pub fn right_products_vanish(&self) -> bool {
        let rights = self.right_basis_ops();
        rights.iter().all(|a| rights.iter().all(|b| (a * b).is_zero()))
    }

    /// `[x, y] = xy - yx` on basis pairs.
    pub fn commutator(&self, a: usize, b: usize) -> Element {
        &self.basis_product(a, b) - &self.basis_product(b, a)
    }

    /// Jacobi identity for the commutator bracket. Holds whenever the
    /// algebra is left-symmetric.
    pub fn commutator_check(&self) -> bool {
        let n = self.dim;
        let brackets: Vec<Vec<Element>> = (0..n)
            .map(|a| (0..n).map(|b| self.commutator(a, b)).collect())
            .collect();
        // [u, e_c] for an arbitrary element u, by linearity in u.
        let bracket_with = |u: &Element, c: usize| -> Element {
            let mut out = Element::zero(n);
            for (s, us) in u.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out = &out + &brackets[s][c].scale(us);
            }
            out
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t1 = bracket_with(&brackets[a][b], c);
                    let t2 = bracket_with(&brackets[b][c], a);
                    let t3 = bracket_with(&brackets[c][a], b);
                    if !(&(&t1 + &t2) + &t3).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| (a + 1..n).all(|b| self.commutator(a, b).is_zero()))
    }

    /// Matrix whose columns are all basis products `e_i e_j`.
    fn product_span(&self) -> Mat {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_product(i, j).into_coords())
            .collect();
        Mat::from_columns(n, &cols)
    }

    /// `dim AA`.
    pub fn derived_dim(&self) -> usize {
        self.product_span().rank()
    }

    /// Basis of the derived subspace `AA`.
    pub fn derived_basis(&self) -> Vec<Element> {
        let span = self.product_span();
        span.echelon()
            .pivots
            .into_iter()
            .map(|c| Element(span.column(c)))
            .collect()
    }

    /// The same algebra written in the basis formed by the columns of `p`.
    pub fn transport(&self, p: &Mat) -> Result<Algebra, AlgebraError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let p_inv = p.inverse().ok_or(AlgebraError::SingularBasisChange(n))?;
        let new_basis: Vec<Element> = (0..n).map(|j| Element(p.column(j))).collect();
        let mut out = Algebra::zero(n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.multiply(&new_basis[i], &new_basis[j])?;
                let coords = p_inv.mul_vec(prod.coords());
                for (m, v) in coords.into_iter().enumerate() {
                    out.set_constant(i, j, m, v);
                }
            }
        }
        Ok(out)
    }
}

fn pairwise(ops: &[Mat], pred: impl Fn(&Mat, &Mat) -> bool) -> bool {
    (0..ops.len()).all(|a| (a..ops.len()).all(|b| pred(&ops[a], &ops[b])))
}
