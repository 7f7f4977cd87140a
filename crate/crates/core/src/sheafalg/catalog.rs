//! The resolutions and extensions describing the strata of `M(4m+2n+1)` and
//! the sheaves that appear at the walls.

use super::{Hypothesis, LesMap, SheafExpr};
use crate::lesolve::MapKind;
use crate::surfcoh::LineClass;

/// Structure sheaf of a quintic of class (2, 3), twisted by `O(a, b)`.
pub fn quintic(a: i64, b: i64) -> SheafExpr {
    SheafExpr::curve(2, 3, a, b).expect("valid class")
}

/// `O_L(a, b)` for a line of class (0, 1).
pub fn ruling_line(a: i64, b: i64) -> SheafExpr {
    SheafExpr::line(LineClass::ZeroOne, a, b)
}

/// The open stratum: a three-by-three resolution whose two degree-(0,1)
/// entries are independent, making the map on H¹ injective.
pub fn generic_resolution() -> SheafExpr {
    SheafExpr::resolution(
        &[(-1, -3), (0, -3), (-1, -2)],
        &[(0, -2), (0, -2), (0, 0)],
        vec![Hypothesis::new("independent-entries", LesMap::Left(1), MapKind::Injective)],
    )
}

/// Extensions of a point sheaf by `O_C(0, 1)` for a (2, 4)-curve, as a resolution.
pub fn point_on_curve_resolution() -> SheafExpr {
    SheafExpr::resolution(&[(-2, -2), (-1, -3)], &[(-1, -2), (0, 1)], vec![])
}

/// Extensions of the structure sheaf of a length-3 subscheme on a (1,0)/(0,3) complete intersection.
pub fn subscheme_resolution() -> SheafExpr {
    SheafExpr::resolution(&[(-2, -1), (-1, -4)], &[(-1, -1), (0, 0)], vec![])
}

/// `0 → O_Q → E → C_p → 0`, written as its resolution.
pub fn quintic_with_point() -> SheafExpr {
    SheafExpr::resolution(&[(-2, -2), (-1, -3)], &[(-1, -2), (0, 0)], vec![])
}

/// `0 → O_C(0, 1) → F → C_p → 0` for a (2, 4)-curve.
pub fn curve_point_extension() -> SheafExpr {
    SheafExpr::extension(SheafExpr::curve(2, 4, 0, 1).expect("valid class"), SheafExpr::Skyscraper(1), vec![])
}

/// `0 → O_Q(0, 1) → F → O_L(-1, 0) → 0`.
pub fn quintic_line_extension() -> SheafExpr {
    SheafExpr::extension(quintic(0, 1), ruling_line(-1, 0), vec![])
}

fn sections_from_sub() -> Hypothesis {
    Hypothesis::new("sections-from-sub", LesMap::Right(0), MapKind::Zero)
}

/// `0 → O_Q → F → O_L(1, 0) → 0` with every section coming from `O_Q`.
pub fn quintic_line_twist_extension() -> SheafExpr {
    SheafExpr::extension(quintic(0, 0), ruling_line(1, 0), vec![sections_from_sub()])
}

/// `0 → E → F → O_L → 0` with every section coming from `E`.
pub fn quintic_point_line_extension() -> SheafExpr {
    SheafExpr::extension(quintic_with_point(), ruling_line(0, 0), vec![sections_from_sub()])
}
