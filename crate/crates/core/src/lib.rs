pub mod arith;
pub mod duality;
pub mod family;
pub mod jantzen;
pub mod spectrum;

pub use num_rational::BigRational;

pub use arith::{ArithError, GaussianRational, Order, Poly, RatFunc, RationalPoint};
pub use duality::{intertwiner, pairing, DualityError, Intertwiner};
pub use family::{build_family, FamilyError, FamilyModule, Generator, WeightWindow};
pub use jantzen::{
    analyze_at, classify_layer, distinguished_points, filtration_oracle, layer_module, JantzenAnalysis, JantzenError,
    RationalInterval, RealForm, Verdict,
};
pub use spectrum::{parse_casimir, render, sweep, Format, SpectrumError, SpectrumReport, SweepConfig};
