//! Arithmetic of Fourier coefficients of Hilbert modular forms over Q and real
//! quadratic fields: ideals and zeta coefficients, Hecke coefficient systems
//! and operators, Sato-Tate angles and non-vanishing densities, Rankin-Selberg
//! series, and a q-expansion oracle for level one forms over Q.

pub mod arith;
pub mod dirichlet;
pub mod forms;
pub mod oracle;
pub mod quadfield;
pub mod satotate;
pub mod zeta;

pub use forms::Rational;
pub use quadfield::{Field, Ideal, PrimeIdeal, SplitType};
