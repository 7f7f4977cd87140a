//! Exact computations for moduli of one-dimensional sheaves on `P¹ × P¹`:
//! line-bundle cohomology, dimension chases along exact sequences, Ext groups
//! of sheaves and pairs, wall-crossing for pairs, and Poincaré polynomials.

pub mod betticalc;
pub mod exactpoly;
pub mod extcalc;
pub mod lesolve;
pub mod report;
pub mod sexpr;
pub mod sheafalg;
pub mod surfcoh;
pub mod wallfind;

pub use betticalc::{poincare, BettiError, PipelineConfig, SpaceExpr};
pub use exactpoly::{BiPoly, PolyError, UPoly};
pub use extcalc::{ExtError, HomFacts, PairExpr};
pub use lesolve::{Dim, ExactSeq, MapKind, SolveError, Status};
pub use report::{verify_all, CheckResult, CheckStatus, Report};
pub use sexpr::ParseError;
pub use sheafalg::{LinPoly, SheafError, SheafExpr};
pub use surfcoh::{BiDegree, CohDims, CohError, CurveClass, LineClass};
pub use wallfind::{PairPoly, Wall, WallError};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Coh(#[from] CohError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Betti(#[from] BettiError),
}
