//! Exact-arithmetic toolkit for the rotation algebra `A_θ` and its
//! noncommutative Fourier transform.

pub mod error;
pub mod algebra;
pub mod chern;
pub mod cli;
pub mod exact;
pub mod expr;
pub mod gclass;
pub mod matrix;
pub mod traces;

pub use error::{Error, Result};

use num_bigint::BigInt;

pub type Rat = num_rational::Ratio<BigInt>;
pub type GaussRat = exact::GaussRat<BigInt>;
pub type PhaseScalar = exact::PhaseScalar<BigInt>;
pub type ThetaLinear = exact::ThetaLinear<BigInt>;
pub type ThetaPoly = exact::ThetaPoly<BigInt>;
pub type Interval = exact::Interval<BigInt>;
pub type Param = algebra::Param<BigInt>;
pub type NCElement = algebra::NCElement<BigInt>;
pub type TopVector = chern::TopVector<BigInt>;
pub type ChernVector = chern::ChernVector<BigInt>;
pub type SeedParams = gclass::SeedParams<BigInt>;
pub type DerivedParams = gclass::DerivedParams<BigInt>;
pub type Kappas = gclass::Kappas<BigInt>;
pub type Certificate = gclass::Certificate<BigInt>;
pub type CMatrix = matrix::CMatrix<f64>;
