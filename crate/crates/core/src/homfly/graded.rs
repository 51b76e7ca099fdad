//! Series in a quantum torus, graded by a nonnegative degree and truncated
//! in `v` separately at each degree.
//!
//! Degree `d` carries a precision `prec[d]`: every stored coefficient is
//! exact for v-exponents `<= prec[d]`, and nothing above it is stored. The
//! grading must be additive under multiplication, and the signature must
//! satisfy `reorder_exponent(α, β) >= -kappa * d(α) * d(β)` on the monomials
//! that occur; both are the caller's responsibility.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::qexact::QALaurent;
use crate::qtorus::TorusSignature;

/// Precision of a degree known exactly.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub prec: i64,
    pub terms: BTreeMap<Vec<u32>, QALaurent>,
}

impl Layer {
    fn exact() -> Self {
        Layer {
            prec: EXACT,
            terms: BTreeMap::new(),
        }
    }

    /// Lowest v-exponent the full (untruncated) degree can have.
    pub fn valuation(&self) -> i64 {
        self.terms
            .values()
            .filter_map(QALaurent::min_v)
            .min()
            .unwrap_or(EXACT)
            .min(self.prec.saturating_add(1))
    }

    fn add_term(&mut self, exp: Vec<u32>, c: QALaurent) {
        let c = c.truncate_above(self.prec);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries {
    sig: Arc<TorusSignature>,
    kappa: i64,
    layers: Vec<Layer>,
}

impl GradedSeries {
    /// The exact zero series through degree `max_degree`.
    pub fn zero(sig: &Arc<TorusSignature>, kappa: i64, max_degree: usize) -> Self {
        GradedSeries {
            sig: sig.clone(),
            kappa,
            layers: vec![Layer::exact(); max_degree + 1],
        }
    }

    pub fn one(sig: &Arc<TorusSignature>, kappa: i64, max_degree: usize) -> Self {
        let mut s = Self::zero(sig, kappa, max_degree);
        s.layers[0]
            .terms
            .insert(vec![0; sig.len()], QALaurent::one());
        s
    }

    /// An exact series from `(degree, exponent, coefficient)` triples; terms
    /// above `max_degree` are dropped.
    pub fn from_terms(
        sig: &Arc<TorusSignature>,
        kappa: i64,
        max_degree: usize,
        terms: impl IntoIterator<Item = (usize, Vec<u32>, QALaurent)>,
    ) -> Self {
        let mut s = Self::zero(sig, kappa, max_degree);
        for (d, exp, c) in terms {
            if d <= max_degree {
                s.layers[d].add_term(exp, c);
            }
        }
        s
    }

    /// A zero series that is only known up to `prec(d)` at degree `d >= 1`,
    /// with constant term 1.
    pub fn one_up_to(
        sig: &Arc<TorusSignature>,
        kappa: i64,
        max_degree: usize,
        prec: impl Fn(usize) -> i64,
    ) -> Self {
        let mut s = Self::one(sig, kappa, max_degree);
        for (d, layer) in s.layers.iter_mut().enumerate().skip(1) {
            layer.prec = prec(d);
        }
        s
    }

    pub fn signature(&self) -> &Arc<TorusSignature> {
        &self.sig
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn max_degree(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, d: usize) -> &Layer {
        &self.layers[d]
    }

    /// All stored terms with their degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Vec<u32>, &QALaurent)> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.terms.iter().map(move |(e, c)| (d, e, c)))
    }

    pub fn min_precision(&self) -> i64 {
        self.layers.iter().map(|l| l.prec).min().unwrap_or(EXACT)
    }

    pub fn has_unit_constant(&self) -> bool {
        let l = &self.layers[0];
        l.prec >= 0
            && l.terms.len() == 1
            && l.terms
                .get(&vec![0; self.sig.len()])
                .is_some_and(QALaurent::is_one)
    }

    /// Lower every precision to at most `order` and drop the terms above it.
    pub fn truncate(&self, order: i64) -> Self {
        self.map_layers(|_, l| {
            let prec = l.prec.min(order);
            Layer {
                prec,
                terms: retain_nonzero(
                    l.terms
                        .iter()
                        .map(|(e, c)| (e.clone(), c.truncate_above(prec))),
                ),
            }
        })
    }

    /// Drop the degrees above `max_degree`.
    pub fn restrict(&self, max_degree: usize) -> Self {
        let mut s = self.clone();
        s.layers.truncate(max_degree + 1);
        s
    }

    fn map_layers(&self, f: impl Fn(usize, &Layer) -> Layer) -> Self {
        GradedSeries {
            sig: self.sig.clone(),
            kappa: self.kappa,
            layers: self
                .layers
                .iter()
                .enumerate()
                .map(|(d, l)| f(d, l))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig,
            "graded series over different signatures"
        );
        assert_eq!(
            self.max_degree(),
            other.max_degree(),
            "graded series of different degree"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        self.check_compatible(other);
        self.map_layers(|d, a| {
            let b = &other.layers[d];
            let mut out = Layer {
                prec: a.prec.min(b.prec),
                terms: BTreeMap::new(),
            };
            for (e, c) in &a.terms {
                out.add_term(e.clone(), c.clone());
            }
            for (e, c) in &b.terms {
                out.add_term(e.clone(), if negate { -c } else { c.clone() });
            }
            out
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let kappa = self.kappa.max(other.kappa);
        let top = self.max_degree();
        let va: Vec<i64> = self.layers.iter().map(Layer::valuation).collect();
        let vb: Vec<i64> = other.layers.iter().map(Layer::valuation).collect();
        let mut out = Self::zero(&self.sig, kappa, top);
        for d in 0..=top {
            let mut prec = EXACT;
            for (d1, a) in self.layers[..=d].iter().enumerate() {
                let d2 = d - d1;
                let b = &other.layers[d2];
                let loss = kappa.saturating_mul((d1 * d2) as i64);
                let p = a
                    .prec
                    .saturating_add(vb[d2])
                    .min(va[d1].saturating_add(b.prec))
                    .saturating_sub(loss);
                prec = prec.min(p);
            }
            out.layers[d].prec = settle(prec);
        }
        for d1 in 0..=top {
            for d2 in 0..=top - d1 {
                let prec = out.layers[d1 + d2].prec;
                for (ea, ca) in &self.layers[d1].terms {
                    let min_a = ca.min_v().unwrap_or(0);
                    for (eb, cb) in &other.layers[d2].terms {
                        let (exp, shift) = self.sig.mono_mul(&(ea.clone(), 0), &(eb.clone(), 0));
                        if min_a + cb.min_v().unwrap_or(0) + shift > prec {
                            continue;
                        }
                        let c = (ca * cb).shift_v(shift);
                        out.layers[d1 + d2].add_term(exp, c);
                    }
                }
            }
        }
        out
    }

    /// Two-sided inverse of a series with constant term 1, as the geometric
    /// series in `1 - S` (which vanishes at degree 0).
    pub fn invert(&self) -> Option<Self> {
        if !self.has_unit_constant() {
            return None;
        }
        let one = Self::one(&self.sig, self.kappa, self.max_degree());
        let t = one.sub(self);
        let mut r = one.clone();
        for _ in 0..self.max_degree() {
            r = one.add(&t.mul(&r));
        }
        Some(r)
    }

    /// Apply a monomial map degree by degree: `f(exp)` gives the image
    /// exponent and a v-shift. `loss(d)` bounds how far below zero the shift
    /// can go at degree `d`.
    pub fn map_monomials(
        &self,
        sig: &Arc<TorusSignature>,
        kappa: i64,
        f: impl Fn(&[u32]) -> (Vec<u32>, i64),
        loss: impl Fn(usize) -> i64,
    ) -> Self {
        let mut out = Self::zero(sig, kappa, self.max_degree());
        for (d, l) in self.layers.iter().enumerate() {
            out.layers[d].prec = settle(l.prec.saturating_sub(loss(d)));
            for (e, c) in &l.terms {
                let (exp, shift) = f(e);
                out.layers[d].add_term(exp, c.shift_v(shift));
            }
        }
        out
    }

    /// Substitute `a -> q^s a`, given that degree `d` has b-exponents in
    /// `[-2d, 2d]`.
    pub fn scale_a_by_q(&self, s: i64) -> Self {
        self.map_layers(|d, l| {
            let prec = settle(l.prec.saturating_sub(2 * s.abs() * d as i64));
            Layer {
                prec,
                terms: retain_nonzero(
                    l.terms
                        .iter()
                        .map(|(e, c)| (e.clone(), c.scale_a_by_q(s).truncate_above(prec))),
                ),
            }
        })
    }

    /// True when every stored coefficient vanishes, i.e. the series is zero
    /// as far as it is known.
    pub fn is_zero_as_known(&self) -> bool {
        self.layers.iter().all(|l| l.terms.is_empty())
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.layers.iter().map(|l| l.terms.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Precisions that are exact up to a finite loss stay exact.
fn settle(prec: i64) -> i64 {
    if prec >= EXACT / 2 {
        EXACT
    } else {
        prec
    }
}

fn retain_nonzero(
    it: impl Iterator<Item = (Vec<u32>, QALaurent)>,
) -> BTreeMap<Vec<u32>, QALaurent> {
    it.filter(|(_, c)| !c.is_zero()).collect()
}
