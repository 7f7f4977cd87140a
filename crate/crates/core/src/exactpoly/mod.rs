//! Exact polynomial arithmetic: integer polynomials in ξ, rational polynomials
//! in the twist variables m and n, and truncated power series in z.

mod bipoly;
mod series;
mod upoly;

pub use bipoly::BiPoly;
pub use series::{trunc_product, Factor, FactorSide, TruncSeries};
pub use upoly::{geometric_poly, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("denominator factor has no constant term 1 in z")]
    NonInvertibleFactor,
}
