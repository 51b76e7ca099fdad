use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{QALaurent, QError, QLaurent};

/// Element of `Z[[q^{1/2}]][a^{±1/2}]` known up to (and including) the
/// v-exponent `order`.
///
/// Keys are `(b-exponent, v-exponent)`; no stored term has v-exponent above
/// `order`. For operands whose v-exponents are nonnegative, truncation is a
/// ring homomorphism onto the quotient by `v^{order+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedRSeries {
    order: i64,
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl TruncatedRSeries {
    pub fn zero(order: i64) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::from_qalaurent(&QALaurent::one(), order)
    }

    pub fn from_qalaurent(p: &QALaurent, order: i64) -> Self {
        let mut out = Self::zero(order);
        for (v, b, c) in p.terms() {
            out.add_term(b, v, c.clone());
        }
        out
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn add_term(&mut self, be: i64, ve: i64, c: BigInt) {
        if ve > self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((be, ve)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(be, ve));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, be: i64, ve: i64) -> BigInt {
        self.terms.get(&(be, ve)).cloned().unwrap_or_default()
    }

    /// Terms as `(b-exponent, v-exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(|((b, v), c)| (*b, *v, c))
    }

    pub fn min_v(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).min()
    }

    pub fn min_b(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_b(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn to_qalaurent(&self) -> QALaurent {
        let mut p = QALaurent::zero();
        for ((b, v), c) in &self.terms {
            p.add_term(*v, *b, c.clone());
        }
        p
    }

    /// Re-truncate to a smaller order.
    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        let mut out = Self::zero(order);
        for ((b, v), c) in &self.terms {
            out.add_term(*b, *v, c.clone());
        }
        out
    }

    fn check_order(&self, other: &Self) -> Result<(), QError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(QError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for ((b, v), c) in &other.terms {
            out.add_term(*b, *v, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for ((b1, v1), c1) in &self.terms {
            for ((b2, v2), c2) in &other.terms {
                out.add_term(b1 + b2, v1 + v2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.order);
        for ((b, v), c) in &self.terms {
            out.add_term(*b, *v, c * s);
        }
        out
    }

    /// Substitute `a = q^n`.
    ///
    /// `tail_b_min` is a lower bound for the b-exponents of the unknown part
    /// of the series (terms beyond `order`); it determines how far the exact
    /// window of the result extends.
    pub fn substitute_a(&self, n: i64, tail_b_min: i64) -> WindowedLaurent {
        let window = self.order + n * tail_b_min.min(0);
        let mut poly = QLaurent::zero();
        for ((b, v), c) in &self.terms {
            poly.add_term(v + n * b, c.clone());
        }
        WindowedLaurent {
            poly: poly.truncate_above(window),
            window,
        }
    }
}

impl fmt::Display for TruncatedRSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_qalaurent();
        if p.is_zero() {
            write!(f, "O(q^{{{}/4}})", self.order + 1)
        } else {
            write!(f, "{p} + O(q^{{{}/4}})", self.order + 1)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BVTerm {
    b: i64,
    v: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct RSeriesRepr {
    order: i64,
    terms: Vec<BVTerm>,
}

impl Serialize for TruncatedRSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RSeriesRepr {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|((b, v), c)| BVTerm {
                    b: *b,
                    v: *v,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedRSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RSeriesRepr::deserialize(d)?;
        let mut out = TruncatedRSeries::zero(raw.order);
        for t in raw.terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            out.add_term(t.b, t.v, c);
        }
        Ok(out)
    }
}

/// A Laurent polynomial in `v` that is only known for exponents `<= window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowedLaurent {
    pub poly: QLaurent,
    pub window: i64,
}

impl WindowedLaurent {
    /// True when `exact` agrees with `self` on every exponent `<= window`.
    pub fn agrees_with(&self, exact: &QLaurent) -> bool {
        exact.truncate_above(self.window) == self.poly
    }

    /// True when the window reaches the top term of `exact`, so agreement
    /// means full equality.
    pub fn covers(&self, exact: &QLaurent) -> bool {
        exact.max_exp().is_none_or(|m| m <= self.window)
    }
}
