//! Independent numerical references: adaptive quadrature, finite differences and a
//! shooting eigen-solver. They share no code with the closed forms they check.

mod fd;
mod quadrature;
mod shooting;

pub use fd::{finite_difference, FdResult};
pub use quadrature::{quadrature, quadrature_semi_infinite, quadrature_with, QuadOptions, QuadResult};
pub use shooting::{shoot_eigenvalue, RadialProblem, ShootOptions, ShootResult, Window};
