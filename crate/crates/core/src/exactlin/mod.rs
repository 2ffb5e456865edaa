//! Exact linear algebra over the rationals and over rational polynomial rings.

mod congruence;
mod mat;
mod poly;
mod polymat;
mod rational;

pub use congruence::{congruent_diagonalize, signature, Congruence, Signature};
pub use mat::{Echelon, Mat};
pub use poly::{Monomial, Poly};
pub use polymat::{find_generic_point, GenericPointError, PolyMat, GENERIC_POINT_ATTEMPTS};
pub use rational::{
    format_rational, frac, one, parse_rational, rat, sign, zero, ParseRationalError, Rational,
};
