//! Symmetric quantum integers, factorials, binomials and multinomials.
//!
//! `[n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`, computed by exact
//! division so that these serve as an independent oracle for the state sum.

use super::{QError, QLaurent};

pub fn qint(n: u32) -> QLaurent {
    let n = i64::from(n);
    let num = &QLaurent::v_pow(2 * n) - &QLaurent::v_pow(-2 * n);
    let den = &QLaurent::v_pow(2) - &QLaurent::v_pow(-2);
    num.div_exact(&den)
        .expect("q^{n/2} - q^{-n/2} is divisible by q^{1/2} - q^{-1/2}")
}

pub fn qfact(n: u32) -> QLaurent {
    (1..=n).fold(QLaurent::one(), |acc, j| &acc * &qint(j))
}

pub fn qbinom(n: u32, k: u32) -> Result<QLaurent, QError> {
    if k > n {
        return Err(QError::BadBinomial {
            n: n.into(),
            k: k.into(),
        });
    }
    let den = &qfact(k) * &qfact(n - k);
    qfact(n).div_exact(&den)
}

/// `[n; k_1, ..., k_m]`. When the parts sum to less than `n` the remainder is
/// treated as one more implicit part.
pub fn qmultinom(n: u32, parts: &[u32]) -> Result<QLaurent, QError> {
    let total: u64 = parts.iter().map(|&k| u64::from(k)).sum();
    if total > u64::from(n) {
        return Err(QError::BadBinomial {
            n: n.into(),
            k: total as i64,
        });
    }
    let rest = n - total as u32;
    let den = parts
        .iter()
        .chain(std::iter::once(&rest))
        .fold(QLaurent::one(), |acc, &k| &acc * &qfact(k));
    qfact(n).div_exact(&den)
}
