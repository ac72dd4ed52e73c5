//! Generating series for Hilbert schemes of points on a surface, the
//! incidence varieties `S_{m,m+1}`, and the moduli spaces `I_{m,1}` of ideal
//! sheaves on a fibered 3-fold, together with their Euler specializations and
//! the Donaldson-Thomas invariants `N_{m,1}`.
//!
//! # Indexing
//!
//! The product `q/(1 - stq) * e(.) * prod ...` has no `q^0` term, while
//! `I_{0,1} = X` and `S_{0,1} = S` are nonempty. All series here therefore
//! place `e(I_{m,1})` (resp. `e(S_{m,m+1})`) at `q^(m+1)`; coefficient `0`
//! is always zero. Use [`moduli_index`] to translate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{e_polynomial, euler_number, fibration_e_polynomial, FibrationSpec, GeometryError, HodgeDiamond};
use crate::poly::BivariatePolynomial;
use crate::series::{series_factor, series_product, ProductFactor, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("N_{{m,1}} is only defined here for X = S x C with K_S = 0 and C elliptic: {0}")]
    DtHypothesis(String),
}

/// Moduli label `m` carried by the coefficient of `q^index` in the incidence
/// and `I_{m,1}` series, or `None` for the empty `q^0` slot.
pub fn moduli_index(index: usize) -> Option<usize> {
    index.checked_sub(1)
}

/// Factors `(i+k-1, j+k-1, k, e^{i,j}(S))` for `1 <= k <= q_max`.
pub fn hilb_factors(surface: &HodgeDiamond, q_max: usize) -> Result<Vec<ProductFactor>, GeometryError> {
    surface.ensure_surface()?;
    let mut factors = Vec::new();
    for k in 1..=q_max {
        for i in 0..=2 {
            for j in 0..=2 {
                let e = surface.signed(i, j);
                if e != 0 {
                    let shift = (k - 1) as u32;
                    factors.push(ProductFactor::new(i as u32 + shift, j as u32 + shift, k, e));
                }
            }
        }
    }
    Ok(factors)
}

/// `prod_k prod_{i,j} (1 - s^(i+k-1) t^(j+k-1) q^k)^(-e^{i,j}(S))`; the
/// coefficient of `q^m` is `e(S^[m]; s, t)`.
pub fn hilb_kernel(surface: &HodgeDiamond, q_max: usize) -> Result<TruncatedSeries, GeometryError> {
    Ok(series_product(&hilb_factors(surface, q_max)?, q_max))
}

/// `chi(S^[m])` for `m = 0..=q_max`.
pub fn hilb_euler_series(surface: &HodgeDiamond, q_max: usize) -> Result<Vec<BigInt>, GeometryError> {
    Ok(hilb_kernel(surface, q_max)?.eval_one())
}

/// `chi(I_{m,0}) = chi(S^[m])`.
pub fn hilb_im0_euler(surface: &HodgeDiamond, m: usize) -> Result<BigInt, GeometryError> {
    Ok(hilb_euler_series(surface, m)?.swap_remove(m))
}

/// `q/(1 - stq) * leading * kernel`.
fn incidence_shape(leading: &BivariatePolynomial, kernel: &TruncatedSeries) -> TruncatedSeries {
    let geometric = series_factor(1, 1, 1, 1, kernel.q_max());
    geometric
        .mul(kernel)
        .expect("same truncation order")
        .scale(leading)
        .shift_q()
}

/// Hodge series of the incidence varieties: `e(S_{m,m+1})` at `q^(m+1)`.
pub fn cheah_series(surface: &HodgeDiamond, q_max: usize) -> Result<TruncatedSeries, GeometryError> {
    let kernel = hilb_kernel(surface, q_max)?;
    Ok(incidence_shape(&e_polynomial(surface), &kernel))
}

/// Hodge series of `I_{m,1}`: `e(I_{m,1})` at `q^(m+1)`.
pub fn moduli_im1_series(x: &FibrationSpec, q_max: usize) -> Result<TruncatedSeries, GeometryError> {
    let kernel = hilb_kernel(x.base(), q_max)?;
    Ok(incidence_shape(&fibration_e_polynomial(x), &kernel))
}

/// `chi(I_{m,1})`.
pub fn euler_im1(x: &FibrationSpec, m: usize) -> Result<BigInt, GeometryError> {
    let series = moduli_im1_series(x, m + 1)?;
    Ok(series.coeffs()[m + 1].eval_one())
}

/// `dim I_{m,1}`: the blow-up of the `(2m + 3)`-dimensional `S^[m] x X`.
pub fn moduli_im1_dimension(m: usize) -> usize {
    2 * m + 3
}

/// `N_{m,1} = (-1)^(dim I_{m,1}) chi(I_{m,1})` for `X = S x C`, `K_S = 0`,
/// `C` elliptic.
pub fn dt_invariant_nm1(x: &FibrationSpec, m: usize) -> Result<BigInt, FormulaError> {
    if !x.has_trivial_canonical_base() {
        return Err(FormulaError::DtHypothesis("the base surface must have K_S = 0".into()));
    }
    if x.fiber_genus() != 1 {
        return Err(FormulaError::DtHypothesis(format!(
            "the fiber must be an elliptic curve, got genus {}",
            x.fiber_genus()
        )));
    }
    if x.beta_dot_kx() != 0 {
        return Err(FormulaError::DtHypothesis(format!(
            "beta.K_X must vanish, got {}",
            x.beta_dot_kx()
        )));
    }
    let chi = euler_im1(x, m)?;
    let sign = if moduli_im1_dimension(m).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(sign * chi)
}

/// Coefficients of `prod_{k>=1} (1 - q^k)^(-chi)` up to `q^q_max`, computed
/// with plain integers through the divisor-sum recurrence
/// `m a_m = chi sum_{j=1}^m sigma(j) a_{m-j}`.
pub fn goettsche_euler_direct(chi: &BigInt, q_max: usize) -> Vec<BigInt> {
    let sigma: Vec<BigInt> = (0..=q_max)
        .map(|j| {
            if j == 0 {
                BigInt::zero()
            } else {
                BigInt::from((1..=j).filter(|d| j % d == 0).sum::<usize>())
            }
        })
        .collect();
    let mut a = vec![BigInt::one()];
    for m in 1..=q_max {
        let acc: BigInt = (1..=m).map(|j| &sigma[j] * &a[m - j]).sum();
        let (value, rem) = (chi * acc).div_rem(&BigInt::from(m));
        debug_assert!(rem.is_zero());
        a.push(value);
    }
    a
}

/// `q/(1 - q) * leading * prod_k (1 - q^k)^(-chi_s)` with integers.
pub fn incidence_euler_direct(leading: &BigInt, chi_s: &BigInt, q_max: usize) -> Vec<BigInt> {
    let kernel = goettsche_euler_direct(chi_s, q_max);
    let mut out = vec![BigInt::zero(); q_max + 1];
    let mut running = BigInt::zero();
    for m in 1..=q_max {
        running += &kernel[m - 1];
        out[m] = leading * &running;
    }
    out
}

/// Euler series of `I_{m,1}` straight from `chi(X)` and `chi(S)`.
pub fn im1_euler_direct(x: &FibrationSpec, q_max: usize) -> Vec<BigInt> {
    let chi_x = fibration_e_polynomial(x).eval_one();
    incidence_euler_direct(&chi_x, &euler_number(x.base()), q_max)
}
