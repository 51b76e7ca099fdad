//! Generating series built from cycle polynomials.
//!
//! Classically `(Σ_C w^C)^N` collects the evaluations at `q = 1`. In the
//! quantum case the cycle polynomial `P = Σ_C (a^{-1/2} q^{1/2})^{rot C} x_C`
//! lives in the cycle torus, the `N` twisted copies are multiplied in order
//! and μ carries the product to flag monomials, whose exponents are flows.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cycles::CycleSet;
use crate::diagram::{Coloring, PlanarDiagram};
use crate::qexact::{Coeff, QALaurent, QLaurent};
use crate::qtorus::{
    cycle_signature, flag_signature, flow_of_monomial, mu, TorusElement, TorusSignature,
};

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Cycles(#[from] crate::cycles::CycleError),
    #[error("flag monomial {0} is not the image of a flow")]
    NotAFlow(String),
}

/// `Σ_C w^C`, keyed by the indicator flow of each cycle.
pub fn classical_cycle_polynomial(
    d: &PlanarDiagram,
    cycles: &CycleSet,
) -> BTreeMap<Coloring, BigInt> {
    let mut out = BTreeMap::new();
    for c in cycles {
        *out.entry(c.flow(d)).or_insert_with(BigInt::zero) += 1;
    }
    out
}

/// `(Σ_C w^C)^N`, keyed by flow.
pub fn classical_series(
    d: &PlanarDiagram,
    cycles: &CycleSet,
    n: u32,
) -> BTreeMap<Coloring, BigInt> {
    let p = classical_cycle_polynomial(d, cycles);
    let mut acc = BTreeMap::from([(Coloring::zero(d), BigInt::from(1))]);
    for _ in 0..n {
        let mut next: BTreeMap<Coloring, BigInt> = BTreeMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &p {
                let mut k = a.clone();
                k.add_assign(b);
                *next.entry(k).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc = next;
    }
    acc
}

/// Render a classical polynomial in the variables `w_e` (and `w_o` for circles).
pub fn format_classical(p: &BTreeMap<Coloring, BigInt>) -> String {
    let terms = p.iter().map(|(k, c)| {
        let mono: Vec<String> = k
            .edges
            .iter()
            .map(|(id, e)| (format!("w_{id}"), *e))
            .chain(k.circles.iter().map(|(id, e)| (format!("w_o{id}"), *e)))
            .filter(|(_, e)| *e > 0)
            .map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") })
            .collect();
        (c.clone(), mono.join(" "))
    });
    crate::qexact::join_terms(terms)
}

/// Rotation number of each variable of the cycle signature.
pub fn variable_rots(cycles: &CycleSet) -> Vec<i64> {
    cycles.iter().skip(1).map(|c| c.rot).collect()
}

/// `P` evaluated at `q ↦ q^ε`, `a ↦ q^s a^σ`: the coefficient of `x_C` is
/// `v^{(2ε - 2s) rot} b^{-2σ rot}`. `(1, 0, 1)` is the cycle polynomial itself.
pub fn cycle_polynomial_at(
    cycles: &CycleSet,
    sig: &Arc<TorusSignature>,
    eps: i64,
    s: i64,
    sigma: i64,
) -> TorusElement<QALaurent> {
    let mut p = TorusElement::one(sig);
    for (i, rot) in variable_rots(cycles).into_iter().enumerate() {
        let mut exp = vec![0; sig.len()];
        exp[i] = 1;
        p.add_term(
            exp,
            QALaurent::monomial((2 * eps - 2 * s) * rot, -2 * sigma * rot, 1),
        );
    }
    p
}

/// `P_Γ(q, a, x) = Σ_C (a^{-1/2} q^{1/2})^{rot C} x_C`.
pub fn cycle_polynomial(cycles: &CycleSet, sig: &Arc<TorusSignature>) -> TorusElement<QALaurent> {
    cycle_polynomial_at(cycles, sig, 1, 0, 1)
}

/// Substitution `x_C ↦ q^{k rot C} x_C`, extended multiplicatively.
pub fn twist<R: Coeff>(p: &TorusElement<R>, rots: &[i64], k: i64) -> TorusElement<R> {
    let mut out = TorusElement::zero(p.signature());
    for (exp, c) in p.terms() {
        let deg: i64 = exp.iter().zip(rots).map(|(e, r)| i64::from(*e) * r).sum();
        out.add_term(exp.clone(), c.shift_v(4 * k * deg));
    }
    out
}

/// `(P, q)_N = ∏_{k=0}^{N-1} twist(P, k)`, factors multiplied left to right.
pub fn pochhammer_n<R: Coeff>(p: &TorusElement<R>, rots: &[i64], n: u32) -> TorusElement<R> {
    (0..i64::from(n)).fold(TorusElement::one(p.signature()), |acc, k| {
        acc.mul(&twist(p, rots, k))
    })
}

/// `F_{Γ,N}`: μ of `(P(q, q^N, x), q)_N`, collected by flow.
pub fn generating_series_n(
    d: &PlanarDiagram,
    cycles: &CycleSet,
    n: u32,
) -> Result<BTreeMap<Coloring, QLaurent>, SeriesError> {
    let sig = cycle_signature(cycles);
    let p = cycle_polynomial(cycles, &sig).map_coeffs(|c| c.substitute_a(i64::from(n)));
    let prod = pochhammer_n(&p, &variable_rots(cycles), n);
    let fs = flag_signature(d);
    let image = mu(&prod, cycles, &fs);
    let mut out: BTreeMap<Coloring, QLaurent> = BTreeMap::new();
    for (exp, c) in image.terms() {
        let flow = flow_of_monomial(d, &fs, exp)
            .ok_or_else(|| SeriesError::NotAFlow(fs.sig.format_monomial(exp)))?;
        *out.entry(flow).or_insert_with(QLaurent::zero) += c;
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}
