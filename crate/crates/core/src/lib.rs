//! Exact fixed-point computation of Spin^c quantization characters for
//! circle actions on three-manifolds and surfaces.
//!
//! - [`charring`]: virtual characters in `z^(1/2)` with exact division
//! - [`fpdata`]: fixed-point data, manifests and example families
//! - [`localize`]: the fixed point formulas and the up map
//! - [`surgery`]: connected sums, cutting, reduction
//! - [`checks`]: seeded randomized suites for the structural identities

pub mod charring;
pub mod checks;
pub mod error;
pub mod fpdata;
pub mod localize;
pub mod surgery;

pub use charring::{RationalCharacter, VirtualCharacter};
pub use error::{Error, Result};
pub use fpdata::{
    emit_manifest, generate, parse_manifest, AlphaData, EvenManifoldData, Family, FixedCircle, IsolatedFixedPoint,
    Manifest, OddManifoldData, Sign,
};
pub use localize::{
    quantize_even_isolated, quantize_odd3, quantize_odd3_rational, up_surface_to_3, CodimSign, Convention,
    NormalFactor,
};
pub use surgery::{connected_sum, correction_d, cut_split, qr_report, reduce_circles, ConSumSpec, CutSpec, QrReport, SeamRecord};
