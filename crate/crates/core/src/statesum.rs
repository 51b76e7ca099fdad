//! Direct evaluation by summing over states.
//!
//! A state assigns every label of `A_N = {-(N-1)/2, ..., (N-1)/2}` to one
//! cycle (possibly the empty one). Labels are stored doubled so they are
//! integers of the same parity as `N - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cycles::CycleSet;
use crate::diagram::{validate_coloring, Coloring, PlanarDiagram, Side, VertexId};
use crate::qexact::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelSet {
    n: u32,
}

impl LabelSet {
    pub fn new(n: u32) -> Self {
        Self { n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Doubled labels in ascending order.
    pub fn doubled(&self) -> Vec<i64> {
        let n = i64::from(self.n);
        (0..n).map(|k| 2 * k - (n - 1)).collect()
    }
}

/// `assignment[k]` is the cycle index given to the `k`-th label (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub labels: LabelSet,
    pub assignment: Vec<usize>,
}

impl State {
    pub fn empty(n: u32) -> Self {
        Self {
            labels: LabelSet::new(n),
            assignment: vec![0; n as usize],
        }
    }

    /// Doubled labels assigned to cycles containing `side` at vertex `v`.
    fn at_flag(&self, cycles: &CycleSet, v: VertexId, side: Side) -> Vec<i64> {
        let flag = crate::diagram::Flag::new(v, side);
        self.labels
            .doubled()
            .into_iter()
            .zip(&self.assignment)
            .filter(|(_, c)| cycles.get(**c).halfedges.contains(&flag))
            .map(|(j, _)| j)
            .collect()
    }
}

/// Flow induced by a state: the number of labels sitting on each edge.
pub fn state_flow(d: &PlanarDiagram, cycles: &CycleSet, s: &State) -> Coloring {
    let mut out = Coloring::zero(d);
    for &c in &s.assignment {
        out.add_assign(&cycles.get(c).flow(d));
    }
    out
}

/// `2 rot(σ) = Σ_j 2j · rot(σ(j))`.
pub fn state_rot(cycles: &CycleSet, s: &State) -> i64 {
    s.labels
        .doubled()
        .into_iter()
        .zip(&s.assignment)
        .map(|(j, c)| j * cycles.get(*c).rot)
        .sum()
}

/// `(L, R)`: pairs in `σ(v,l) × σ(v,r)` with `a > b`, resp. `a < b`.
fn inversions(cycles: &CycleSet, v: VertexId, s: &State) -> (i64, i64, i64) {
    let l = s.at_flag(cycles, v, Side::L);
    let r = s.at_flag(cycles, v, Side::R);
    let mut big_l = 0;
    let mut big_r = 0;
    for a in &l {
        for b in &r {
            if a > b {
                big_l += 1;
            } else if a < b {
                big_r += 1;
            }
        }
    }
    (big_l, big_r, (l.len() * r.len()) as i64)
}

/// `wt(v; σ) = q^{(R - L)/4}`.
pub fn vertex_weight(cycles: &CycleSet, v: VertexId, s: &State) -> QLaurent {
    let (l, r, _) = inversions(cycles, v, s);
    QLaurent::v_pow(r - l)
}

/// `wt(v; σ) = q^{(|σ(v,l)| |σ(v,r)| - 2L)/4}`.
pub fn vertex_weight_alt(cycles: &CycleSet, v: VertexId, s: &State) -> QLaurent {
    let (l, _, prod) = inversions(cycles, v, s);
    QLaurent::v_pow(prod - 2 * l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFormula {
    Difference,
    Product,
}

/// Exponent of `v` in `q^{rot(σ)} ∏_v wt(v; σ)`.
fn state_exponent(d: &PlanarDiagram, cycles: &CycleSet, s: &State, w: WeightFormula) -> i64 {
    let mut e = 2 * state_rot(cycles, s);
    for v in d.vertices() {
        let (l, r, prod) = inversions(cycles, v.id, s);
        e += match w {
            WeightFormula::Difference => r - l,
            WeightFormula::Product => prod - 2 * l,
        };
    }
    e
}

/// Enumerates states for one diagram.
pub struct StateSum<'a> {
    d: &'a PlanarDiagram,
    cycles: &'a CycleSet,
    /// Per cycle, dense indicator over edges then circles.
    usage: Vec<Vec<usize>>,
    slots: usize,
}

impl<'a> StateSum<'a> {
    pub fn new(d: &'a PlanarDiagram, cycles: &'a CycleSet) -> Self {
        let slots: BTreeMap<u32, usize> = d
            .edges()
            .iter()
            .map(|e| e.id)
            .chain(d.circles().iter().map(|c| c.id))
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        let usage = cycles
            .iter()
            .map(|c| {
                c.edges
                    .iter()
                    .chain(c.circles.iter())
                    .map(|id| slots[id])
                    .collect()
            })
            .collect();
        Self {
            d,
            cycles,
            usage,
            slots: slots.len(),
        }
    }

    fn target(&self, gamma: &Coloring) -> Vec<u64> {
        gamma.values().collect()
    }

    /// Visit every state whose flow is at most `cap` slotwise.
    fn visit(&self, n: u32, cap: Option<&[u64]>, f: &mut impl FnMut(&State)) {
        let mut load = vec![0u64; self.slots];
        let mut state = State::empty(n);
        self.descend(0, cap, &mut load, &mut state, f);
    }

    fn descend(
        &self,
        k: usize,
        cap: Option<&[u64]>,
        load: &mut [u64],
        state: &mut State,
        f: &mut impl FnMut(&State),
    ) {
        if k == state.assignment.len() {
            f(state);
            return;
        }
        for c in 0..self.cycles.len() {
            let fits = cap.is_none_or(|cap| self.usage[c].iter().all(|&i| load[i] < cap[i]));
            if !fits {
                continue;
            }
            for &i in &self.usage[c] {
                load[i] += 1;
            }
            state.assignment[k] = c;
            self.descend(k + 1, cap, load, state, f);
            for &i in &self.usage[c] {
                load[i] -= 1;
            }
        }
    }

    fn eval_with(&self, gamma: &Coloring, n: u32, w: WeightFormula) -> QLaurent {
        let target = self.target(gamma);
        let mut out = QLaurent::zero();
        let usage = &self.usage;
        self.visit(n, Some(&target), &mut |s| {
            let mut load = vec![0u64; target.len()];
            for &c in &s.assignment {
                for &i in &usage[c] {
                    load[i] += 1;
                }
            }
            if load == target {
                out.add_term(state_exponent(self.d, self.cycles, s, w), BigInt::from(1));
            }
        });
        out
    }

    /// `Σ_{|σ| = γ} q^{rot(σ)} ∏_v q^{(R - L)/4}`.
    pub fn eval(&self, gamma: &Coloring, n: u32) -> QLaurent {
        self.eval_with(gamma, n, WeightFormula::Difference)
    }

    /// The same sum with weights `q^{(|σ(v,l)||σ(v,r)| - 2L)/4}`.
    pub fn eval_alt(&self, gamma: &Coloring, n: u32) -> QLaurent {
        self.eval_with(gamma, n, WeightFormula::Product)
    }

    /// Every state, grouped by flow; only nonzero entries are kept.
    pub fn table(&self, n: u32) -> BTreeMap<Coloring, QLaurent> {
        let mut out: BTreeMap<Coloring, QLaurent> = BTreeMap::new();
        self.visit(n, None, &mut |s| {
            let e = state_exponent(self.d, self.cycles, s, WeightFormula::Difference);
            out.entry(state_flow(self.d, self.cycles, s))
                .or_insert_with(QLaurent::zero)
                .add_term(e, BigInt::from(1));
        });
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn state_count(&self, n: u32) -> u64 {
        let mut k = 0;
        self.visit(n, None, &mut |_| k += 1);
        k
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Coloring(#[from] crate::diagram::ColoringError),
    #[error(transparent)]
    Cycles(#[from] crate::cycles::CycleError),
}

/// `⟨Γ, γ⟩_N(q)` by the state sum.
pub fn moy_eval(d: &PlanarDiagram, gamma: &Coloring, n: u32) -> Result<QLaurent, EvalError> {
    validate_coloring(d, gamma)?;
    let cycles = crate::cycles::all_cycles(d)?;
    Ok(StateSum::new(d, &cycles).eval(gamma, n))
}

/// `⟨Γ, γ⟩_N(q)` with the product form of the vertex weights.
pub fn moy_eval_alt(d: &PlanarDiagram, gamma: &Coloring, n: u32) -> Result<QLaurent, EvalError> {
    validate_coloring(d, gamma)?;
    let cycles = crate::cycles::all_cycles(d)?;
    Ok(StateSum::new(d, &cycles).eval_alt(gamma, n))
}

/// `⟨Γ, γ⟩_N(1)`.
pub fn classical_eval(d: &PlanarDiagram, gamma: &Coloring, n: u32) -> Result<BigInt, EvalError> {
    moy_eval(d, gamma, n).map(|p| p.eval_at_one())
}

pub fn eval_table(d: &PlanarDiagram, n: u32) -> Result<BTreeMap<Coloring, QLaurent>, EvalError> {
    let cycles = crate::cycles::all_cycles(d)?;
    Ok(StateSum::new(d, &cycles).table(n))
}
