//! Exact coefficient rings.
//!
//! Everything is expressed in the quarter-power units `v = q^{1/4}` and
//! `b = a^{1/4}` so that vertex weights (quarter powers of `q`) and cycle
//! coefficients (half powers of `a`) carry integer exponents.

mod bivariate;
mod laurent;
mod quantum;
mod rseries;

pub use bivariate::QALaurent;
pub use laurent::QLaurent;
pub use quantum::{qbinom, qfact, qint, qmultinom};
pub use rseries::{TruncatedRSeries, WindowedLaurent};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("exact division failed: nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(i64, i64),
    #[error("invalid quantum binomial arguments: n={n}, k={k}")]
    BadBinomial { n: i64, k: i64 },
}

/// Coefficient ring usable inside skew-commuting (quantum torus) algebras.
///
/// The only ring-specific operation the torus needs beyond ring arithmetic is
/// multiplication by a power of `v`, produced when monomials are reordered.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiply by `v^k`.
    fn shift_v(&self, k: i64) -> Self;
    /// Evaluate at `v = 1` (and `b = 1` where applicable) to an integer.
    fn at_one(&self) -> BigInt;
}

impl Coeff for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn one() -> Self {
        QLaurent::one()
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn shift_v(&self, k: i64) -> Self {
        QLaurent::shift_v(self, k)
    }
    fn at_one(&self) -> BigInt {
        self.eval_at_one()
    }
}

impl Coeff for QALaurent {
    fn zero() -> Self {
        QALaurent::zero()
    }
    fn one() -> Self {
        QALaurent::one()
    }
    fn is_zero(&self) -> bool {
        QALaurent::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn shift_v(&self, k: i64) -> Self {
        QALaurent::shift_v(self, k)
    }
    fn at_one(&self) -> BigInt {
        self.eval_at_one()
    }
}

/// Render `q^{e/4}` for a v-exponent `e`.
///
/// With `halves` set every exponent is known to be even and the power is
/// written in reduced half-integer form (`q`, `q^{1/2}`, `q^{-3/2}`); otherwise
/// quarter notation `q^{k/4}` is used verbatim.
pub(crate) fn fmt_power(var: &str, e: i64, halves: bool) -> String {
    if e == 0 {
        return String::new();
    }
    if halves {
        debug_assert!(e % 2 == 0);
        let k = e / 2;
        if k % 2 == 0 {
            let n = k / 2;
            match n {
                1 => var.to_string(),
                2..=9 => format!("{var}^{n}"),
                _ => format!("{var}^{{{n}}}"),
            }
        } else {
            format!("{var}^{{{k}/2}}")
        }
    } else {
        format!("{var}^{{{e}/4}}")
    }
}

/// Join `(coefficient, monomial-string)` pairs into `c1 m1 + c2 m2 - ...`.
pub(crate) fn join_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (BigInt, String)>,
{
    use num_traits::{One, Signed};
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
