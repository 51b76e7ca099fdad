//! Invariant suites that compare independent computations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cycles::{all_cycles, intersection_pairing, CycleError, CycleSet};
use crate::diagram::{Coloring, PlanarDiagram};
use crate::genseries::{classical_series, generating_series_n, SeriesError};
use crate::homfly::{
    check_fphi, check_shift, compare_specialization, homfly_series, HomflyError, Truncation,
};
use crate::qexact::QLaurent;
use crate::qtorus::{flag_signature, mu_of_cycle};
use crate::report::CheckReport;
use crate::statesum::StateSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Weights,
    Mu,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Weights,
        Suite::Mu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Weights => "weights",
            Suite::Mu => "mu",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!("unknown suite '{s}' (expected thm1, thm2, thm3, weights or mu)")
            })
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Cycles(#[from] CycleError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Homfly(#[from] HomflyError),
}

pub fn run_suite(d: &PlanarDiagram, suite: Suite, n: u32) -> Result<CheckReport, CheckError> {
    let cycles = all_cycles(d)?;
    Ok(match suite {
        Suite::Thm1 => classical_report(d, &cycles, n),
        Suite::Thm2 => series_report(d, &cycles, n)?,
        Suite::Thm3 => homfly_report(d, n)?,
        Suite::Weights => weights_report(d, &cycles, n),
        Suite::Mu => mu_report(d, &cycles, |i, j| {
            intersection_pairing(cycles.get(i), cycles.get(j))
        }),
    })
}

/// Compare two tables on the union of their keys.
pub fn compare_tables<V: PartialEq + fmt::Display>(
    report: &mut CheckReport,
    got: &BTreeMap<Coloring, V>,
    want: &BTreeMap<Coloring, V>,
    zero: V,
) {
    let mut keys: Vec<&Coloring> = got.keys().chain(want.keys()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        let g = got.get(k).unwrap_or(&zero);
        let w = want.get(k).unwrap_or(&zero);
        if g == w {
            report.push(k.to_string(), true, g.to_string());
        } else {
            report.push(
                k.to_string(),
                false,
                format!("series gives {g}, state sum gives {w}"),
            );
        }
    }
}

/// `(Σ_C w^C)^N` against the state sum at `q = 1`.
pub fn classical_report(d: &PlanarDiagram, cycles: &CycleSet, n: u32) -> CheckReport {
    let mut report = CheckReport::new(format!("classical expansion, N={n}"));
    let series = classical_series(d, cycles, n);
    let states: BTreeMap<Coloring, BigInt> = StateSum::new(d, cycles)
        .table(n)
        .into_iter()
        .map(|(k, p)| (k, p.eval_at_one()))
        .collect();
    compare_tables(&mut report, &series, &states, BigInt::from(0));
    let total: BigInt = states.values().sum();
    let count = BigInt::from(cycles.len()).pow(n);
    report.push(
        "state count",
        total == count,
        format!("Σ_γ = {total}, |C|^N = {count}"),
    );
    report
}

/// The twisted product of cycle polynomials against the state sum.
pub fn series_report(
    d: &PlanarDiagram,
    cycles: &CycleSet,
    n: u32,
) -> Result<CheckReport, SeriesError> {
    let mut report = CheckReport::new(format!("cycle polynomial product, N={n}"));
    let series = generating_series_n(d, cycles, n)?;
    let table = StateSum::new(d, cycles).table(n);
    compare_tables(&mut report, &series, &table, QLaurent::zero());
    let at_one: BTreeMap<Coloring, BigInt> = series
        .iter()
        .map(|(k, p)| (k.clone(), p.eval_at_one()))
        .collect();
    let classical = classical_series(d, cycles, n);
    report.push(
        "q = 1",
        at_one == classical,
        "matches the classical expansion",
    );
    Ok(report)
}

/// Default truncation for the HOMFLY suite at a given `N`.
pub fn homfly_truncation(n: u32) -> Truncation {
    let max_degree = 2;
    Truncation {
        max_degree,
        q_order: 2 * i64::from(n) * max_degree as i64 + 8,
    }
}

pub fn homfly_report(d: &PlanarDiagram, n: u32) -> Result<CheckReport, HomflyError> {
    let t = homfly_truncation(n);
    let mut report = check_fphi(d, t)?;
    let shift = check_shift(d, t)?;
    let f = homfly_series(d, t)?;
    let special = compare_specialization(
        d,
        &f,
        n,
        &crate::statesum::eval_table(d, n).expect("cycles already computed"),
    )?;
    for r in [shift, special] {
        report.notes.extend(r.notes);
        report
            .lines
            .extend(r.lines.into_iter().map(|l| crate::report::CheckLine {
                label: format!("{}: {}", r.title, l.label),
                ..l
            }));
    }
    report.title = format!("HOMFLY series (D={}, Q={}), N={n}", t.max_degree, t.q_order);
    Ok(report)
}

/// Both vertex weight formulas, and the shape of every value.
pub fn weights_report(d: &PlanarDiagram, cycles: &CycleSet, n: u32) -> CheckReport {
    let mut report = CheckReport::new(format!("vertex weight formulas, N={n}"));
    let s = StateSum::new(d, cycles);
    for (gamma, p) in s.table(n) {
        let alt = s.eval_alt(&gamma, n);
        let shape = p.is_nonnegative() && p.in_half_powers() && p.is_symmetric();
        let pass = alt == p && shape;
        let detail = if alt != p {
            format!("difference form {p}, product form {alt}")
        } else if !shape {
            format!("{p} is not a symmetric nonnegative polynomial in q^(1/2)")
        } else {
            p.to_string()
        };
        report.push(gamma.to_string(), pass, detail);
    }
    report
}

/// `μ(x_C) μ(x_C') = v^{2 p(C, C')} μ(x_C') μ(x_C)` for every ordered pair,
/// where `p(i, j)` is the pairing in half-units.
pub fn mu_report(
    d: &PlanarDiagram,
    cycles: &CycleSet,
    pairing: impl Fn(usize, usize) -> i64,
) -> CheckReport {
    let mut report = CheckReport::new("flag images commute like cycles");
    let fs = flag_signature(d);
    let images: Vec<Vec<u32>> = cycles.iter().map(|c| mu_of_cycle(&fs, c)).collect();
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            let ab = fs.sig.mono_mul(&(a.clone(), 0), &(b.clone(), 0));
            let ba = fs.sig.mono_mul(&(b.clone(), 0), &(a.clone(), 0));
            let want = 2 * pairing(i, j);
            let got = ab.1 - ba.1;
            report.push(
                format!("{} {}", cycles.get(i), cycles.get(j)),
                ab.0 == ba.0 && got == want,
                format!("v^{got}, expected v^{want}"),
            );
        }
    }
    report
}
