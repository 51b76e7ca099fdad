//! The HOMFLY generating series of a positive diagram, at finite truncation.
//!
//! Series live in the cycle algebra or the flag algebra with coefficients in
//! `v` and `b`. They are graded by rotation number: `x_C` has degree
//! `rot(C)`, and a flag monomial has the rotation number of its flow. A
//! truncation `(D, Q)` keeps degrees `<= D` and v-exponents `<= Q`.
//!
//! `F` is obtained from `F · μ((P(q,a⁻¹,x),q)_∞) = μ((P(q,a,x),q)_∞)` by
//! inverting on the right. Intermediate products lose precision to the
//! commutation factors, so every computation runs at a working precision that
//! is raised until the result is exact through `Q`.

pub mod graded;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{all_cycles, flow_rotation, is_positive, CycleError, CycleSet};
use crate::diagram::{Coloring, PlanarDiagram};
use crate::qexact::{QALaurent, QLaurent, TruncatedRSeries, WindowedLaurent};
use crate::qtorus::{
    cycle_signature, flag_signature, flow_of_monomial, mu_images, mu_monomial, FlagSignature,
    TorusSignature,
};
use crate::report::CheckReport;
use graded::GradedSeries;

#[derive(Debug, Error)]
pub enum HomflyError {
    #[error("diagram is not positive: cycle {0} has a clockwise component")]
    NotPositive(String),
    #[error(transparent)]
    Cycles(#[from] CycleError),
    #[error("series to invert does not have constant term 1")]
    NotInvertible,
    #[error("flag monomial {0} is not the image of a flow")]
    NotAFlow(String),
    #[error(
        "q-order {q_order} is too small to specialize to N = {n} at degree {degree}: need at least {needed}"
    )]
    WindowTooSmall {
        n: u32,
        degree: usize,
        q_order: i64,
        needed: i64,
    },
    #[error("N must be at least 1")]
    ZeroN,
}

/// Degree bound `D` (rotation-weighted) and v-order bound `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub max_degree: usize,
    pub q_order: i64,
}

/// The cycle polynomial at `q ↦ q^eps`, `a ↦ q^s a^sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PArgs {
    pub eps: i64,
    pub s: i64,
    pub sigma: i64,
}

impl PArgs {
    /// `P(q, a, x)`.
    pub const PLAIN: PArgs = PArgs {
        eps: 1,
        s: 0,
        sigma: 1,
    };
    /// `P(q, a⁻¹, x)`.
    pub const INVERTED: PArgs = PArgs {
        eps: 1,
        s: 0,
        sigma: -1,
    };
    /// `P(q⁻¹, a, x)`.
    pub const Q_INVERTED: PArgs = PArgs {
        eps: -1,
        s: 0,
        sigma: 1,
    };

    /// v-exponent per unit of rotation in the coefficient of `x_C`.
    fn base(self) -> i64 {
        2 * self.eps - 2 * self.s
    }

    fn coeff(self, rot: i64, k: i64) -> QALaurent {
        QALaurent::monomial((self.base() + 4 * k) * rot, -2 * self.sigma * rot, 1)
    }
}

/// Everything derived from a positive diagram that the series need.
pub struct Context<'a> {
    pub diagram: &'a PlanarDiagram,
    pub cycles: CycleSet,
    pub xsig: Arc<TorusSignature>,
    pub flags: FlagSignature,
    images: Vec<Vec<u32>>,
    rots: Vec<usize>,
    kappa_x: i64,
    kappa_flag: i64,
}

impl<'a> Context<'a> {
    pub fn new(d: &'a PlanarDiagram) -> Result<Self, HomflyError> {
        let cycles = all_cycles(d)?;
        if !is_positive(&cycles) {
            let bad = cycles
                .iter()
                .find(|c| c.components.iter().any(|k| k.rot != 1))
                .map(|c| c.to_string())
                .unwrap_or_default();
            return Err(HomflyError::NotPositive(bad));
        }
        let xsig = cycle_signature(&cycles);
        let flags = flag_signature(d);
        let images = mu_images(&cycles, &flags);
        let rots = cycles.iter().skip(1).map(|c| c.rot as usize).collect();
        // x-monomials of degree d have at most d factors; flag monomials of
        // degree d have every exponent at most d.
        let kappa_x = xsig.skew_bounds().0;
        let kappa_flag = flags.sig.skew_bounds().1;
        Ok(Context {
            diagram: d,
            cycles,
            xsig,
            flags,
            images,
            rots,
            kappa_x,
            kappa_flag,
        })
    }

    fn unit_vector(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.xsig.len()];
        e[i] = 1;
        e
    }

    /// The `k`-th twisted copy of `P`, exactly.
    pub fn factor(&self, args: PArgs, k: i64, max_degree: usize) -> GradedSeries {
        let mut terms = vec![(0, vec![0; self.xsig.len()], QALaurent::one())];
        for (i, &r) in self.rots.iter().enumerate() {
            terms.push((r, self.unit_vector(i), args.coeff(r as i64, k)));
        }
        GradedSeries::from_terms(&self.xsig, self.kappa_x, max_degree, terms)
    }

    /// `∏_{k>=0} twist(P, k)` at working precision `w`.
    ///
    /// The finite product is extended until the remaining factors, whose
    /// degree-`d` terms start at `v^{(base + 4(K+1)) d}`, no longer limit the
    /// precision.
    pub fn pochhammer_inf_at(&self, args: PArgs, max_degree: usize, w: i64) -> GradedSeries {
        let base = args.base();
        let kappa = self.kappa_x;
        let top = max_degree as i64;
        let mut acc = GradedSeries::one(&self.xsig, kappa, max_degree);
        let mut k = 0;
        loop {
            acc = acc.mul(&self.factor(args, k, max_degree)).truncate(w);
            let slope = base + 4 * (k + 1);
            let tail = GradedSeries::one_up_to(&self.xsig, kappa, max_degree, |d| {
                let d = d as i64;
                slope * d - kappa * d * d - 1
            });
            let full = acc.mul(&tail);
            let settled = slope > kappa * top
                && full
                    .layers()
                    .iter()
                    .zip(acc.layers())
                    .all(|(a, b)| a.prec >= b.prec);
            if settled || slope > w + kappa * top * top + 1 {
                return full.truncate(w);
            }
            k += 1;
        }
    }

    /// μ applied to a cycle-algebra series.
    pub fn mu_series(&self, s: &GradedSeries) -> GradedSeries {
        let kappa = self.kappa_flag;
        s.map_monomials(
            &self.flags.sig,
            kappa,
            |alpha| mu_monomial(&self.flags, &self.images, alpha),
            |d| kappa * (d * d) as i64,
        )
    }

    /// A single factor `μ(P(...))`, exactly.
    pub fn mu_factor(&self, args: PArgs, max_degree: usize) -> GradedSeries {
        self.mu_series(&self.factor(args, 0, max_degree))
    }

    /// `F` at working precision `w`.
    pub fn homfly_at(&self, max_degree: usize, w: i64) -> Result<GradedSeries, HomflyError> {
        let a = self.mu_series(&self.pochhammer_inf_at(PArgs::PLAIN, max_degree, w));
        let b = self.mu_series(&self.pochhammer_inf_at(PArgs::INVERTED, max_degree, w));
        let inv = b.invert().ok_or(HomflyError::NotInvertible)?;
        Ok(a.mul(&inv))
    }

    /// Degree of a flow.
    pub fn degree(&self, gamma: &Coloring) -> i64 {
        flow_rotation(self.diagram, gamma)
    }
}

/// Run `f` at increasing working precision until its result is exact
/// through `q` at every degree, and truncate it there.
pub fn at_precision<E>(
    q: i64,
    f: impl Fn(i64) -> Result<GradedSeries, E>,
) -> Result<GradedSeries, E> {
    let mut w = q.max(0);
    loop {
        let s = f(w)?;
        let got = s.min_precision();
        if got >= q {
            return Ok(s.truncate(q));
        }
        w += q - got;
    }
}

/// `(P(q,a,x),q)_∞`, or `(P(q,a⁻¹,x),q)_∞` when `a_inverted`.
pub fn pochhammer_inf(
    d: &PlanarDiagram,
    a_inverted: bool,
    t: Truncation,
) -> Result<GradedSeries, HomflyError> {
    let ctx = Context::new(d)?;
    let args = if a_inverted {
        PArgs::INVERTED
    } else {
        PArgs::PLAIN
    };
    at_precision(t.q_order, |w| {
        Ok(ctx.pochhammer_inf_at(args, t.max_degree, w))
    })
}

pub fn series_invert(s: &GradedSeries) -> Result<GradedSeries, HomflyError> {
    s.invert().ok_or(HomflyError::NotInvertible)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomflyCoeff {
    pub degree: usize,
    pub coeff: TruncatedRSeries,
}

/// `F` over the flag algebra together with its coefficients by coloring.
#[derive(Clone, Debug)]
pub struct HomflySeries {
    pub truncation: Truncation,
    pub series: GradedSeries,
    pub table: BTreeMap<Coloring, HomflyCoeff>,
}

pub fn homfly_series(d: &PlanarDiagram, t: Truncation) -> Result<HomflySeries, HomflyError> {
    let ctx = Context::new(d)?;
    let series = at_precision(t.q_order, |w| ctx.homfly_at(t.max_degree, w))?;
    let mut table = BTreeMap::new();
    for (degree, exp, c) in series.terms() {
        let flow = flow_of_monomial(d, &ctx.flags, exp)
            .ok_or_else(|| HomflyError::NotAFlow(ctx.flags.sig.format_monomial(exp)))?;
        table.insert(
            flow,
            HomflyCoeff {
                degree,
                coeff: TruncatedRSeries::from_qalaurent(c, t.q_order),
            },
        );
    }
    Ok(HomflySeries {
        truncation: t,
        series,
        table,
    })
}

fn residual_line(report: &mut CheckReport, label: &str, r: &GradedSeries, q: i64) {
    let nonzero = r.truncate(q).len();
    let prec = r.min_precision();
    let pass = prec >= q && nonzero == 0;
    let detail = if pass {
        format!("residual 0 through v^{q} in degrees 0..={}", r.max_degree())
    } else if prec < q {
        format!("residual only known through v^{prec}")
    } else {
        format!("{nonzero} nonzero residual coefficients")
    };
    report.push(label, pass, detail);
}

/// Both sides of `F · μ((P(q,a⁻¹,x),q)_∞) = μ((P(q,a,x),q)_∞)`.
pub fn check_fphi(d: &PlanarDiagram, t: Truncation) -> Result<CheckReport, HomflyError> {
    let ctx = Context::new(d)?;
    let (top, q) = (t.max_degree, t.q_order);
    let mut report = CheckReport::new(format!("product identity for F (D={top}, Q={q})"));
    let residual = at_precision(q, |w| {
        let f = ctx.homfly_at(top, w)?;
        let a = ctx.mu_series(&ctx.pochhammer_inf_at(PArgs::PLAIN, top, w));
        let b = ctx.mu_series(&ctx.pochhammer_inf_at(PArgs::INVERTED, top, w));
        Ok::<_, HomflyError>(f.mul(&b).sub(&a))
    })?;
    residual_line(
        &mut report,
        "F·μ((P(q,a⁻¹,x),q)_∞) − μ((P(q,a,x),q)_∞)",
        &residual,
        q,
    );

    let f = homfly_series(d, t)?.series;
    let bigger = at_precision(q + 4, |w| ctx.homfly_at(top + 1, w))?;
    let coherent = bigger.restrict(top).truncate(q) == f;
    report.push(
        "truncation coherence",
        coherent,
        format!(
            "F at (D={}, Q={}) truncates to F at (D={top}, Q={q})",
            top + 1,
            q + 4
        ),
    );
    Ok(report)
}

/// `F(q,q²a) = μ(P(q⁻¹,a,x)) F(q,a) μ(P(q,a⁻¹,x))` and the two factor
/// identities behind it.
pub fn check_shift(d: &PlanarDiagram, t: Truncation) -> Result<CheckReport, HomflyError> {
    let ctx = Context::new(d)?;
    let (top, q) = (t.max_degree, t.q_order);
    let mut report = CheckReport::new(format!("shift identity for F (D={top}, Q={q})"));
    report.note(
        "the right-hand side uses the single factors μ(P(q⁻¹,a,x)) and μ(P(q,a⁻¹,x)), not their infinite products",
    );

    let shift = at_precision(q, |w| {
        let f = ctx.homfly_at(top, w)?;
        let lhs = f.scale_a_by_q(2);
        let left = ctx.mu_factor(PArgs::Q_INVERTED, top);
        let right = ctx.mu_factor(PArgs::INVERTED, top);
        Ok::<_, HomflyError>(lhs.sub(&left.mul(&f).mul(&right)))
    })?;
    residual_line(
        &mut report,
        "F(q,q²a) − μ(P(q⁻¹,a,x)) F μ(P(q,a⁻¹,x))",
        &shift,
        q,
    );

    let square3 = at_precision(q, |w| {
        let lhs = ctx.pochhammer_inf_at(
            PArgs {
                eps: 1,
                s: 2,
                sigma: 1,
            },
            top,
            w,
        );
        let rhs = ctx
            .factor(PArgs::Q_INVERTED, 0, top)
            .mul(&ctx.pochhammer_inf_at(PArgs::PLAIN, top, w));
        Ok::<_, HomflyError>(lhs.sub(&rhs))
    })?;
    residual_line(
        &mut report,
        "(P(q,q²a,x),q)_∞ − P(q⁻¹,a,x)(P(q,a,x),q)_∞",
        &square3,
        q,
    );

    let square4 = at_precision(q, |w| {
        let lhs = ctx
            .factor(PArgs::INVERTED, 0, top)
            .mul(&ctx.pochhammer_inf_at(
                PArgs {
                    eps: 1,
                    s: -2,
                    sigma: -1,
                },
                top,
                w,
            ));
        let rhs = ctx.pochhammer_inf_at(PArgs::INVERTED, top, w);
        Ok::<_, HomflyError>(lhs.sub(&rhs))
    })?;
    residual_line(
        &mut report,
        "P(q,a⁻¹,x)(P(q,q⁻²a⁻¹,x),q)_∞ − (P(q,a⁻¹,x),q)_∞",
        &square4,
        q,
    );
    Ok(report)
}

/// Substitute `a = q^N` in every coefficient. Degree `d` has b-exponents
/// `>= -2d`, so its coefficients are exact through `v^{Q - 2Nd}`.
pub fn specialize_to_n(
    f: &HomflySeries,
    n: u32,
) -> Result<BTreeMap<Coloring, WindowedLaurent>, HomflyError> {
    if n == 0 {
        return Err(HomflyError::ZeroN);
    }
    let t = f.truncation;
    let n64 = i64::from(n);
    let worst = 2 * n64 * t.max_degree as i64;
    if t.q_order < worst {
        return Err(HomflyError::WindowTooSmall {
            n,
            degree: t.max_degree,
            q_order: t.q_order,
            needed: worst,
        });
    }
    Ok(f.table
        .iter()
        .map(|(k, c)| (k.clone(), c.coeff.substitute_a(n64, -2 * c.degree as i64)))
        .collect())
}

/// Compare the specialization of `F` with an exact table of evaluations on
/// every coloring of degree `<= D`.
pub fn compare_specialization(
    d: &PlanarDiagram,
    f: &HomflySeries,
    n: u32,
    exact: &BTreeMap<Coloring, QLaurent>,
) -> Result<CheckReport, HomflyError> {
    let ctx = Context::new(d)?;
    let special = specialize_to_n(f, n)?;
    let t = f.truncation;
    let mut report = CheckReport::new(format!(
        "specialization a = q^{n} (D={}, Q={})",
        t.max_degree, t.q_order
    ));
    let mut keys: Vec<&Coloring> = special.keys().chain(exact.keys()).collect();
    keys.sort();
    keys.dedup();
    for gamma in keys {
        let degree = ctx.degree(gamma);
        if degree > t.max_degree as i64 {
            continue;
        }
        let window = t.q_order - 2 * i64::from(n) * degree;
        let got = special.get(gamma).cloned().unwrap_or(WindowedLaurent {
            poly: QLaurent::zero(),
            window,
        });
        let want = exact.get(gamma).cloned().unwrap_or_else(QLaurent::zero);
        let pass = got.agrees_with(&want);
        let detail = if pass {
            format!("{} (through v^{})", got.poly, got.window)
        } else {
            format!(
                "got {} but expected {} through v^{}",
                got.poly,
                want.truncate_above(got.window),
                got.window
            )
        };
        report.push(gamma.to_string(), pass, detail);
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
