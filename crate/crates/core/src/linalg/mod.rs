//! Exact integer linear algebra: matrices, Smith and Hermite forms, lattices
//! and integer polynomials.

mod factor;
mod hermite;
mod matrix;
mod modp;
mod poly;
mod smith;
mod unit_part;

pub use factor::{cyclotomic, cyclotomic_index, factor_over_z, Factorization};
pub use hermite::{
    hermite_basis, integer_kernel, lattice_contains, lattice_intersect, lattice_sum, solve_integer,
    Lattice,
};
pub use matrix::IntMatrix;
pub use poly::{char_poly, IntPolynomial};
pub use smith::{smith_normal_form, SmithForm};
pub use unit_part::{image_chain, unit_factor, unit_part_lattice, ImageChain};
