use serde::Serialize;

use super::{PolyError, UPoly};

/// Power series in z with `UPoly` coefficients, truncated above `z^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<UPoly>,
}

/// Whether a factor multiplies or divides the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSide {
    Numerator,
    Denominator,
}

/// The factor `(1 − coeff·z^z_power)`, placed on one side of the fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub side: FactorSide,
    pub coeff: UPoly,
    pub z_power: usize,
}

impl Factor {
    pub fn numerator(coeff: UPoly, z_power: usize) -> Self {
        Factor { side: FactorSide::Numerator, coeff, z_power }
    }

    pub fn denominator(coeff: UPoly, z_power: usize) -> Self {
        Factor { side: FactorSide::Denominator, coeff, z_power }
    }
}

impl TruncSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![UPoly::zero(); order + 1];
        coeffs[0] = UPoly::one();
        TruncSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &UPoly {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order.min(other.order);
        let mut coeffs = vec![UPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncSeries { order, coeffs }
    }

    fn from_factor(f: &Factor, order: usize) -> Result<TruncSeries, PolyError> {
        let mut s = TruncSeries::one(order);
        if f.z_power == 0 {
            if f.side == FactorSide::Denominator && !f.coeff.is_zero() {
                return Err(PolyError::NonInvertibleFactor);
            }
            let c0 = &UPoly::one() - &f.coeff;
            s.coeffs[0] = c0;
            return Ok(s);
        }
        match f.side {
            FactorSide::Numerator => {
                if f.z_power <= order {
                    s.coeffs[f.z_power] = -&f.coeff;
                }
            }
            FactorSide::Denominator => {
                let mut power = UPoly::one();
                let mut k = f.z_power;
                while k <= order {
                    power = &power * &f.coeff;
                    s.coeffs[k] = power.clone();
                    k += f.z_power;
                }
            }
        }
        Ok(s)
    }
}

/// Exact product of the given factors to order `order` in z.
pub fn trunc_product(factors: &[Factor], order: usize) -> Result<TruncSeries, PolyError> {
    let mut acc = TruncSeries::one(order);
    for f in factors {
        acc = acc.mul(&TruncSeries::from_factor(f, order)?);
    }
    Ok(acc)
}
