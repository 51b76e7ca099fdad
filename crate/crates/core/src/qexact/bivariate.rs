use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_power, join_terms, QLaurent};

/// Laurent polynomial in `v = q^{1/4}` and `b = a^{1/4}`.
///
/// Keys are `(v-exponent, b-exponent)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QALaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl QALaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// `c * v^ve * b^be`.
    pub fn monomial(ve: i64, be: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(ve, be, c.into());
        p
    }

    pub fn from_laurent(p: &QLaurent) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(e, 0, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, ve: i64, be: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((ve, be)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(ve, be));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, ve: i64, be: i64) -> BigInt {
        self.terms.get(&(ve, be)).cloned().unwrap_or_default()
    }

    /// Terms as `(v-exponent, b-exponent, coefficient)`, ordered by `(v, b)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(|((v, b), c)| (*v, *b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_v(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_v(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn min_b(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).min()
    }

    pub fn max_b(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn shift_v(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((v, b), c)| ((v + k, *b), c.clone()))
                .collect(),
        }
    }

    /// Drop every term with v-exponent above `order`.
    pub fn truncate_above(&self, order: i64) -> Self {
        Self {
            terms: self
                .terms
                .range(..=(order, i64::MAX))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Substitute `a = q^n`: the b-exponent `k` becomes an extra v-exponent `n*k`.
    pub fn substitute_a(&self, n: i64) -> QLaurent {
        let mut out = QLaurent::zero();
        for ((v, b), c) in &self.terms {
            out.add_term(v + n * b, c.clone());
        }
        out
    }

    /// Substitute `a -> q^s a`, keeping `a` symbolic: `b^k` gains `v^{s k}`.
    pub fn scale_a_by_q(&self, s: i64) -> Self {
        let mut out = Self::zero();
        for ((v, b), c) in &self.terms {
            out.add_term(v + s * b, *b, c.clone());
        }
        out
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for QALaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qhalves = self.terms.keys().all(|k| k.0 % 2 == 0);
        let ahalves = self.terms.keys().all(|k| k.1 % 2 == 0);
        // descending in q, then in a
        let s = join_terms(self.terms.iter().rev().map(|((v, b), c)| {
            let mut m = fmt_power("a", *b, ahalves);
            m.push_str(&fmt_power("q", *v, qhalves));
            (c.clone(), m)
        }));
        f.write_str(&s)
    }
}

impl fmt::Debug for QALaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QALaurent(")?;
        let mut first = true;
        for ((v, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}v^{v}b^{b}")?;
        }
        write!(f, ")")
    }
}

impl<'a> AddAssign<&'a QALaurent> for QALaurent {
    fn add_assign(&mut self, rhs: &'a QALaurent) {
        for ((v, b), c) in &rhs.terms {
            self.add_term(*v, *b, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a QALaurent> for QALaurent {
    fn sub_assign(&mut self, rhs: &'a QALaurent) {
        for ((v, b), c) in &rhs.terms {
            self.add_term(*v, *b, -c);
        }
    }
}

impl<'a> Add<&'a QALaurent> for &'a QALaurent {
    type Output = QALaurent;
    fn add(self, rhs: &'a QALaurent) -> QALaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a QALaurent> for &'a QALaurent {
    type Output = QALaurent;
    fn sub(self, rhs: &'a QALaurent) -> QALaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a QALaurent> for &'a QALaurent {
    type Output = QALaurent;
    fn mul(self, rhs: &'a QALaurent) -> QALaurent {
        let mut out = QALaurent::zero();
        for ((v1, b1), c1) in &self.terms {
            for ((v2, b2), c2) in &rhs.terms {
                out.add_term(v1 + v2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Add for QALaurent {
    type Output = QALaurent;
    fn add(self, rhs: QALaurent) -> QALaurent {
        &self + &rhs
    }
}

impl Sub for QALaurent {
    type Output = QALaurent;
    fn sub(self, rhs: QALaurent) -> QALaurent {
        &self - &rhs
    }
}

impl Mul for QALaurent {
    type Output = QALaurent;
    fn mul(self, rhs: QALaurent) -> QALaurent {
        &self * &rhs
    }
}

impl Neg for &QALaurent {
    type Output = QALaurent;
    fn neg(self) -> QALaurent {
        QALaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for QALaurent {
    type Output = QALaurent;
    fn neg(self) -> QALaurent {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct VBTerm {
    v: i64,
    b: i64,
    c: String,
}

impl Serialize for QALaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<VBTerm> = self
            .terms
            .iter()
            .map(|((v, b), c)| VBTerm {
                v: *v,
                b: *b,
                c: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QALaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<VBTerm>::deserialize(d)?;
        let mut p = QALaurent::zero();
        for t in raw {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(t.v, t.b, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_a_bookkeeping() {
        // a^{-1/2} q^{1/2} at a = q^2 is q^{-1/2}
        let p = QALaurent::monomial(2, -2, 1);
        assert_eq!(p.substitute_a(2), QLaurent::v_pow(-2));
        // at a = q it is 1
        assert_eq!(p.substitute_a(1), QLaurent::one());
    }

    #[test]
    fn scale_a_matches_substitution() {
        // substituting a = q^n after a -> q^s a equals substituting a = q^{n+s}
        let p = &QALaurent::monomial(2, -2, 3) + &QALaurent::monomial(-1, 4, -2);
        for s in -2..=2 {
            for n in 0..4 {
                assert_eq!(p.scale_a_by_q(s).substitute_a(n), p.substitute_a(n + s));
            }
        }
    }

    #[test]
    fn printing() {
        assert_eq!(QALaurent::monomial(2, -2, 1).to_string(), "a^{-1/2}q^{1/2}");
        let p = &QALaurent::one() + &QALaurent::monomial(4, 4, -2);
        assert_eq!(p.to_string(), "-2aq + 1");
        let r = &QALaurent::monomial(2, 2, 1) + &QALaurent::monomial(2, -2, 1);
        assert_eq!(r.to_string(), "a^{1/2}q^{1/2} + a^{-1/2}q^{1/2}");
    }
}
