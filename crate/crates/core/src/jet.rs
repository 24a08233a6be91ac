//! Truncated Taylor arithmetic in one variable.
//!
//! A [`Jet`] of order `K` at `t₀` stores `coeffs[m] = f⁽ᵐ⁾(t₀) / m!` for
//! `m = 0..=K`. Arithmetic and the elementary functions below are exact to
//! the truncation order; derivatives are recovered with [`Jet::derivative`].

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: f64,
    coeffs: Vec<f64>,
}

/// Binary operations accepted by [`jet_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Elementary functions accepted by [`jet_fn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetFn {
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Coth,
    Reciprocal,
}

impl JetFn {
    pub const ALL: [JetFn; 8] = [
        JetFn::Exp,
        JetFn::Log,
        JetFn::Sin,
        JetFn::Cos,
        JetFn::Sinh,
        JetFn::Cosh,
        JetFn::Coth,
        JetFn::Reciprocal,
    ];

    /// Plain scalar evaluation, for finite-difference comparisons.
    pub fn eval(self, x: f64) -> f64 {
        match self {
            JetFn::Exp => x.exp(),
            JetFn::Log => x.ln(),
            JetFn::Sin => x.sin(),
            JetFn::Cos => x.cos(),
            JetFn::Sinh => x.sinh(),
            JetFn::Cosh => x.cosh(),
            JetFn::Coth => 1.0 / x.tanh(),
            JetFn::Reciprocal => 1.0 / x,
        }
    }
}

pub fn jet_arith(a: &Jet, b: &Jet, op: JetOp) -> Result<Jet> {
    match op {
        JetOp::Add => a.checked_add(b),
        JetOp::Sub => a.checked_sub(b),
        JetOp::Mul => a.checked_mul(b),
        JetOp::Div => a.checked_div(b),
    }
}

pub fn jet_fn(a: &Jet, f: JetFn) -> Result<Jet> {
    match f {
        JetFn::Exp => Ok(a.exp()),
        JetFn::Log => a.ln(),
        JetFn::Sin => Ok(a.sin()),
        JetFn::Cos => Ok(a.cos()),
        JetFn::Sinh => Ok(a.sinh()),
        JetFn::Cosh => Ok(a.cosh()),
        JetFn::Coth => a.coth(),
        JetFn::Reciprocal => a.recip(),
    }
}

impl Jet {
    /// Build from raw Taylor coefficients; all must be finite.
    pub fn from_coeffs(base: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::JetMismatch(
                "a jet needs at least one coefficient".into(),
            ));
        }
        if let Some(m) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::singularity(
                "Jet::from_coeffs",
                format!("coefficient {m} is not finite"),
            ));
        }
        Ok(Jet { base, coeffs })
    }

    pub fn constant(base: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Jet { base, coeffs }
    }

    /// The identity function `t ↦ t` expanded at `base`.
    pub fn variable(base: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = base;
        if order > 0 {
            coeffs[1] = 1.0;
        }
        Jet { base, coeffs }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> f64 {
        self.coeffs[m]
    }

    /// `m! · coeffs[m]`, the m-th derivative at the base point.
    pub fn derivative(&self, m: usize) -> f64 {
        self.coeffs[m] * factorial(m)
    }

    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order()).map(|m| self.derivative(m)).collect()
    }

    /// Keep coefficients up to `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        let keep = (order + 1).min(self.coeffs.len());
        Jet {
            base: self.base,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// The jet of `f'`, one order lower. A constant jet differentiates to a
    /// zero jet of order 0.
    pub fn differentiate(&self) -> Jet {
        if self.order() == 0 {
            return Jet::constant(self.base, 0.0, 0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| m as f64 * c)
            .collect();
        Jet {
            base: self.base,
            coeffs,
        }
    }

    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn offset(&self, shift: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += shift;
        out
    }

    fn check_compatible(&self, other: &Jet) -> Result<()> {
        if self.base != other.base {
            return Err(Error::JetMismatch(format!(
                "base points {} and {} differ",
                self.base, other.base
            )));
        }
        if self.order() != other.order() {
            return Err(Error::JetMismatch(format!(
                "orders {} and {} differ",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Ok(Jet {
            base: self.base,
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let b0 = other.coeffs[0];
        if b0 == 0.0 || !b0.is_finite() {
            return Err(Error::singularity(
                "Jet::checked_div",
                format!("divisor has constant term {b0}"),
            ));
        }
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for k in 0..n {
            let conv: f64 = (1..=k).map(|i| other.coeffs[i] * out[k - i]).sum();
            out[k] = (self.coeffs[k] - conv) / b0;
        }
        Jet::from_coeffs(self.base, out)
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        Jet {
            base: self.base,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(self.base, 1.0, self.order()).checked_div(self)
    }

    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let n = a.len();
        let mut e = vec![0.0; n];
        e[0] = a[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|i| i as f64 * a[i] * e[k - i]).sum();
            e[k] = s / k as f64;
        }
        Jet {
            base: self.base,
            coeffs: e,
        }
    }

    pub fn ln(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0].is_nan() || a[0] <= 0.0 {
            return Err(Error::singularity(
                "Jet::ln",
                format!("constant term {} is not positive", a[0]),
            ));
        }
        let n = a.len();
        let mut l = vec![0.0; n];
        l[0] = a[0].ln();
        for k in 1..n {
            let s: f64 = (1..k).map(|i| i as f64 * l[i] * a[k - i]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Jet::from_coeffs(self.base, l)
    }

    /// `(sin a, cos a)` by the coupled recurrence.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let n = a.len();
        let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
        (s[0], c[0]) = a[0].sin_cos();
        for k in 1..n {
            let (mut ds, mut dc) = (0.0, 0.0);
            for i in 1..=k {
                let w = i as f64 * a[i];
                ds += w * c[k - i];
                dc += w * s[k - i];
            }
            s[k] = ds / k as f64;
            c[k] = -dc / k as f64;
        }
        (
            Jet {
                base: self.base,
                coeffs: s,
            },
            Jet {
                base: self.base,
                coeffs: c,
            },
        )
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// `(sinh a, cosh a)` by the coupled recurrence.
    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let n = a.len();
        let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..n {
            let (mut ds, mut dc) = (0.0, 0.0);
            for i in 1..=k {
                let w = i as f64 * a[i];
                ds += w * c[k - i];
                dc += w * s[k - i];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (
            Jet {
                base: self.base,
                coeffs: s,
            },
            Jet {
                base: self.base,
                coeffs: c,
            },
        )
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    /// `cosh / sinh`; fails where the constant term of `sinh a` vanishes.
    pub fn coth(&self) -> Result<Jet> {
        let (s, c) = self.sinh_cosh();
        c.checked_div(&s)
    }
}

pub(crate) fn factorial(m: usize) -> f64 {
    (2..=m).fold(1.0, |acc, i| acc * i as f64)
}
