//! Elliptic modulus from the nome, the complete elliptic integral `K(k)` by
//! the arithmetic-geometric mean, and the Jacobi Zeta function.
//!
//! With `q = exp(-π² t)`:
//!
//! ```text
//! k  = (θ2(0,t)/θ3(0,t))²        k' = (θ4(0,t)/θ3(0,t))²
//! K  = ∫₀^{π/2} dx / √(1 − k² sin²x) = π / (2 · AGM(1, k'))
//! Zn(z) = (2π/K) Σ_{n≥1} qⁿ/(1 − q²ⁿ) sin(nπz/K)
//!       = d/dz log θ4(z/(2K), t) = (1/(2K)) ∂u log θ4(u, t) at u = z/(2K)
//! ```

use std::f64::consts::PI;

use crate::config::{AGM_MAX_ITER, AGM_REL_TOL};
use crate::error::{Error, Result};
use crate::log_deriv::dlog_theta_du;
use crate::theta::theta;
use crate::types::{check_t, EvalPoint, SeriesTruncation, ThetaIndex};

/// Modulus, complementary modulus and quarter period for one nome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub k_modulus: f64,
    pub k_complementary: f64,
    /// Complete elliptic integral of the first kind, `K(k)`.
    pub k_complete: f64,
}

/// `k = (θ2(0,t)/θ3(0,t))²`, strictly decreasing from 1 to 0 in `t`.
pub fn modulus_from_t(t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let p = EvalPoint::new(0.0, t)?;
    let ratio = theta(ThetaIndex::Two, p, trunc)? / theta(ThetaIndex::Three, p, trunc)?;
    Ok(ratio * ratio)
}

/// `k' = (θ4(0,t)/θ3(0,t))²`, computed directly so that `k → 1` keeps
/// full relative accuracy in `k'`.
pub fn complementary_modulus_from_t(t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let p = EvalPoint::new(0.0, t)?;
    let ratio = theta(ThetaIndex::Four, p, trunc)? / theta(ThetaIndex::Three, p, trunc)?;
    Ok(ratio * ratio)
}

pub fn elliptic_params(t: f64, trunc: SeriesTruncation) -> Result<EllipticParams> {
    let k_modulus = modulus_from_t(t, trunc)?;
    let k_complementary = complementary_modulus_from_t(t, trunc)?;
    Ok(EllipticParams {
        k_modulus,
        k_complementary,
        k_complete: PI / (2.0 * agm(1.0, k_complementary)?),
    })
}

/// Arithmetic-geometric mean, stopping at `|a − b| ≤ 1e-15·a`.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::domain(
            "agm",
            format!("arguments ({a}, {b}) must be positive"),
        ));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_REL_TOL * a {
            return Ok(a);
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    Err(Error::Convergence {
        op: "agm",
        terms: AGM_MAX_ITER,
    })
}

/// Complete elliptic integral of the first kind, `K(k) = π/(2·AGM(1, √(1−k²)))`.
/// Defined for `0 ≤ k < 1`; `K(0) = π/2`.
pub fn elliptic_k(k_modulus: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k_modulus) {
        return Err(Error::domain(
            "elliptic_K",
            format!("modulus {k_modulus} not in [0, 1)"),
        ));
    }
    Ok(PI / (2.0 * agm(1.0, (1.0 - k_modulus * k_modulus).sqrt())?))
}

/// Nome from the modulus, `q = exp(−π K(k')/K(k))`.
pub fn nome_from_modulus(k_modulus: f64) -> Result<f64> {
    if !(k_modulus > 0.0 && k_modulus < 1.0) {
        return Err(Error::domain(
            "nome_from_modulus",
            format!("modulus {k_modulus} not in (0, 1)"),
        ));
    }
    let kp = (1.0 - k_modulus * k_modulus).sqrt();
    Ok((-PI * elliptic_k(kp)? / elliptic_k(k_modulus)?).exp())
}

/// Jacobi Zeta from its Fourier expansion in the nome of `t`.
pub fn jacobi_zeta(z: f64, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    check_t("jacobi_zeta", t)?;
    if !z.is_finite() {
        return Err(Error::domain(
            "jacobi_zeta",
            format!("z = {z} is not finite"),
        ));
    }
    let big_k = elliptic_params(t, trunc)?.k_complete;
    let rate = -PI * PI * t;
    let mut total = 0.0;
    for n in 1..=trunc.max_terms {
        let nf = n as f64;
        // qⁿ / (1 − q²ⁿ)
        let weight = (rate * nf).exp() / -(2.0 * rate * nf).exp_m1();
        total += weight * (nf * PI * z / big_k).sin();
        if n >= 3 && weight < trunc.tail_tol {
            return Ok(2.0 * PI / big_k * total);
        }
    }
    Err(Error::Convergence {
        op: "jacobi_zeta",
        terms: trunc.max_terms,
    })
}

/// Jacobi Zeta as the z-derivative of `log θ4(z/(2K), t)`.
pub fn jacobi_zeta_from_theta(z: f64, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let big_k = elliptic_params(t, trunc)?.k_complete;
    let u = z / (2.0 * big_k);
    Ok(dlog_theta_du(ThetaIndex::Four, EvalPoint::new(u, t)?, trunc)? / (2.0 * big_k))
}
