//! Quantum tori: monomials in variables obeying `u_i u_j = v^{c(i,j)} u_j u_i`.
//!
//! Two signatures are built from a diagram: one variable `x_C` per cycle,
//! with `c = 4⟨C, C'⟩`, and the flag variables `z_{v,s}`, `Z_{v,s}` together
//! with one commuting pair per circle. [`mu`] maps the first into the second.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{intersection_pairing, CycleSet};
use crate::diagram::{CircleId, Coloring, Flag, PlanarDiagram, Side};
use crate::qexact::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("pairing matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("pairing matrix has wrong shape")]
    BadShape,
    #[error("elements belong to different signatures")]
    SignatureMismatch,
}

/// Ordered variables with an antisymmetric exponent matrix (in v-units).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSignature {
    names: Vec<String>,
    c: Vec<Vec<i64>>,
}

/// An exponent vector together with the power of `v` it carries.
pub type Monomial = (Vec<u32>, i64);

impl TorusSignature {
    pub fn new(names: Vec<String>, c: Vec<Vec<i64>>) -> Result<Self, TorusError> {
        let n = names.len();
        if c.len() != n || c.iter().any(|row| row.len() != n) {
            return Err(TorusError::BadShape);
        }
        for (i, row) in c.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i + 1) {
                if *x != -c[j][i] {
                    return Err(TorusError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Self { names, c })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    /// Exponent of `v` in `u^α u^β = v^e u^{α+β}`: `Σ_{i>j} α_i β_j c(i,j)`.
    pub fn reorder_exponent(&self, alpha: &[u32], beta: &[u32]) -> i64 {
        let mut e = 0;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta[..i].iter().enumerate() {
                if b != 0 {
                    e += i64::from(a) * i64::from(b) * self.c[i][j];
                }
            }
        }
        e
    }

    /// Product of two monomials (each with its own `v` power).
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let exp = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        (exp, a.1 + b.1 + self.reorder_exponent(&a.0, &b.0))
    }

    pub fn unit(&self) -> Monomial {
        (vec![0; self.len()], 0)
    }

    /// The largest `max(0, -c(i,j))` over `i > j`, and the sum of all of them.
    pub fn skew_bounds(&self) -> (i64, i64) {
        let mut max = 0;
        let mut sum = 0;
        for i in 0..self.len() {
            for j in 0..i {
                let neg = (-self.c[i][j]).max(0);
                max = max.max(neg);
                sum += neg;
            }
        }
        (max, sum)
    }

    pub fn format_monomial(&self, exp: &[u32]) -> String {
        let parts: Vec<String> = exp
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// The flag signature of a diagram plus the index of each variable.
#[derive(Clone, Debug)]
pub struct FlagSignature {
    pub sig: Arc<TorusSignature>,
    z: BTreeMap<Flag, usize>,
    upper: BTreeMap<Flag, usize>,
    circles: BTreeMap<CircleId, (usize, usize)>,
}

impl FlagSignature {
    /// Index of `z_{v,s}`.
    pub fn z(&self, f: Flag) -> usize {
        self.z[&f]
    }

    /// Index of `Z_{v,s}`.
    pub fn upper_z(&self, f: Flag) -> usize {
        self.upper[&f]
    }

    /// Indices of the pair `(z_o, Z_o)` of a circle.
    pub fn circle(&self, id: CircleId) -> (usize, usize) {
        self.circles[&id]
    }
}

/// Variables `z_{v,l} < z_{v,m} < z_{v,r} < Z_{v,r} < Z_{v,m} < Z_{v,l}` per
/// vertex in id order, then `z_o < Z_o` per circle. The only nonzero
/// entries are `z_{v,r} z_{v,l} = v^{-1} z_{v,l} z_{v,r}` and the same for
/// the `Z` pair.
pub fn flag_signature(d: &PlanarDiagram) -> FlagSignature {
    let mut names = Vec::new();
    let mut z = BTreeMap::new();
    let mut upper = BTreeMap::new();
    let mut skew = Vec::new();
    for v in d.vertices() {
        let base = names.len();
        for (k, s) in [Side::L, Side::M, Side::R].into_iter().enumerate() {
            names.push(format!("z_{{{},{}}}", v.id, s.as_str()));
            z.insert(Flag::new(v.id, s), base + k);
        }
        for (k, s) in [Side::R, Side::M, Side::L].into_iter().enumerate() {
            names.push(format!("Z_{{{},{}}}", v.id, s.as_str().to_uppercase()));
            upper.insert(Flag::new(v.id, s), base + 3 + k);
        }
        // (later, earlier, c): z_r after z_l; Z_l after Z_r
        skew.push((base + 2, base, -1));
        skew.push((base + 5, base + 3, 1));
    }
    let mut circles = BTreeMap::new();
    for c in d.circles() {
        let i = names.len();
        names.push(format!("z_{{o{}}}", c.id));
        names.push(format!("Z_{{o{}}}", c.id));
        circles.insert(c.id, (i, i + 1));
    }
    let n = names.len();
    let mut m = vec![vec![0; n]; n];
    for (i, j, c) in skew {
        m[i][j] = c;
        m[j][i] = -c;
    }
    FlagSignature {
        sig: Arc::new(TorusSignature::new(names, m).expect("antisymmetric by construction")),
        z,
        upper,
        circles,
    }
}

/// One variable `x_{C_i}` per nonempty cycle (variable `i - 1` for cycle
/// `i`), `c = 4⟨C_i, C_j⟩`. The empty cycle is the unit.
pub fn cycle_signature(cycles: &CycleSet) -> Arc<TorusSignature> {
    let nonempty = &cycles.as_slice()[1..];
    let names = (1..cycles.len()).map(|i| format!("x_{{C{i}}}")).collect();
    let c = nonempty
        .iter()
        .map(|a| {
            nonempty
                .iter()
                .map(|b| 2 * intersection_pairing(a, b))
                .collect()
        })
        .collect();
    Arc::new(TorusSignature::new(names, c).expect("pairing is antisymmetric"))
}

/// A finite linear combination of normal-ordered monomials.
#[derive(Clone, Debug)]
pub struct TorusElement<R> {
    sig: Arc<TorusSignature>,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Coeff> PartialEq for TorusElement<R> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig) && self.terms == other.terms
    }
}

impl<R: Coeff> TorusElement<R> {
    pub fn zero(sig: &Arc<TorusSignature>) -> Self {
        Self {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<TorusSignature>) -> Self {
        Self::monomial(sig, vec![0; sig.len()], R::one())
    }

    pub fn monomial(sig: &Arc<TorusSignature>, exp: Vec<u32>, c: R) -> Self {
        assert_eq!(exp.len(), sig.len(), "exponent vector length");
        let mut out = Self::zero(sig);
        out.add_term(exp, c);
        out
    }

    /// The single variable `u_i`.
    pub fn var(sig: &Arc<TorusSignature>, i: usize) -> Self {
        let mut exp = vec![0; sig.len()];
        exp[i] = 1;
        Self::monomial(sig, exp, R::one())
    }

    pub fn signature(&self) -> &Arc<TorusSignature> {
        &self.sig
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> R {
        self.terms.get(exp).cloned().unwrap_or_else(R::zero)
    }

    fn same_sig(&self, other: &Self) -> Result<(), TorusError> {
        if Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig {
            Ok(())
        } else {
            Err(TorusError::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TorusError> {
        self.same_sig(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, TorusError> {
        self.same_sig(other)?;
        let mut out = Self::zero(&self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let shift = self.sig.reorder_exponent(a, b);
                let exp = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca.mul_ref(cb).shift_v(shift));
            }
        }
        Ok(out)
    }

    /// Panics on a signature mismatch; see [`TorusElement::try_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same signature")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same signature")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map_coeffs(|c| c.mul_ref(s))
    }

    /// Apply a map to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> TorusElement<S> {
        let mut out = TorusElement::zero(&self.sig);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Coefficients evaluated at `v = 1`: the commutative shadow.
    pub fn at_one(&self) -> BTreeMap<Vec<u32>, num_bigint::BigInt> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let x = c.at_one();
            if x != num_bigint::BigInt::from(0) {
                out.insert(e.clone(), x);
            }
        }
        out
    }
}

impl<R: Coeff> fmt::Display for TorusElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono = self.sig.format_monomial(e);
            let coeff = c.to_string();
            match (mono.is_empty(), coeff.as_str()) {
                (true, _) => write!(f, "({coeff})")?,
                (false, "1") => f.write_str(&mono)?,
                (false, _) => write!(f, "({coeff}) {mono}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<R> {
    exp: Vec<u32>,
    coeff: R,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr<R> {
    legend: Vec<String>,
    terms: Vec<TermRepr<R>>,
}

impl<R: Coeff + Serialize> Serialize for TorusElement<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementRepr {
            legend: self.sig.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// `μ(x_C) = z^C Z^C` as an exponent vector over the flag signature.
pub fn mu_of_cycle(fs: &FlagSignature, cycle: &crate::cycles::Cycle) -> Vec<u32> {
    let mut exp = vec![0; fs.sig.len()];
    for f in &cycle.halfedges {
        exp[fs.z(*f)] += 1;
        exp[fs.upper_z(*f)] += 1;
    }
    for c in &cycle.circles {
        let (i, j) = fs.circle(*c);
        exp[i] += 1;
        exp[j] += 1;
    }
    exp
}

/// `μ(x_C)` for every nonempty cycle, indexed like the cycle signature.
pub fn mu_images(cycles: &CycleSet, fs: &FlagSignature) -> Vec<Vec<u32>> {
    cycles.iter().skip(1).map(|c| mu_of_cycle(fs, c)).collect()
}

/// Image of the monomial `x^α` (normal ordered) under μ.
pub fn mu_monomial(fs: &FlagSignature, images: &[Vec<u32>], alpha: &[u32]) -> Monomial {
    let mut acc = fs.sig.unit();
    for (i, &a) in alpha.iter().enumerate() {
        let step = (images[i].clone(), 0);
        for _ in 0..a {
            acc = fs.sig.mono_mul(&acc, &step);
        }
    }
    acc
}

/// Apply μ term by term to an element of the cycle algebra.
pub fn mu<R: Coeff>(m: &TorusElement<R>, cycles: &CycleSet, fs: &FlagSignature) -> TorusElement<R> {
    let images = mu_images(cycles, fs);
    let mut out = TorusElement::zero(&fs.sig);
    for (alpha, c) in m.terms() {
        let (exp, shift) = mu_monomial(fs, &images, alpha);
        out.add_term(exp, c.shift_v(shift));
    }
    out
}

/// The flow carried by a flag monomial: accepted when, for every edge, the
/// `z` and `Z` exponents at both of its flags agree (and likewise for each
/// circle's pair).
pub fn flow_of_monomial(d: &PlanarDiagram, fs: &FlagSignature, exp: &[u32]) -> Option<Coloring> {
    let mut out = Coloring::zero(d);
    for e in d.edges() {
        let g = exp[fs.z(e.tail)];
        let all = [
            exp[fs.z(e.head)],
            exp[fs.upper_z(e.tail)],
            exp[fs.upper_z(e.head)],
        ];
        if all.iter().any(|x| *x != g) {
            return None;
        }
        out.edges.insert(e.id, u64::from(g));
    }
    for c in d.circles() {
        let (i, j) = fs.circle(c.id);
        if exp[i] != exp[j] {
            return None;
        }
        out.circles.insert(c.id, u64::from(exp[i]));
    }
    Some(out)
}
