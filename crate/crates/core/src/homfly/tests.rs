use super::graded::EXACT;
use super::*;
use crate::diagram::builtin;
use crate::genseries::{cycle_polynomial_at, pochhammer_n, variable_rots};
use crate::qexact::qbinom;
use num_bigint::BigInt;

fn t(max_degree: usize, q_order: i64) -> Truncation {
    Truncation {
        max_degree,
        q_order,
    }
}

fn unknot() -> PlanarDiagram {
    builtin("unknot").unwrap()
}

/// `1/(q;q)_n` as coefficients of `q^0, q^1, ...` up to `q^top`.
fn inv_qpoch(n: usize, top: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::from(0); top + 1];
    s[0] = BigInt::from(1);
    for k in 1..=n {
        for i in k..=top {
            let add = s[i - k].clone();
            s[i] += add;
        }
    }
    s
}

/// Unknot coefficient of `(zZ)^γ` in `(−X;q)_∞ / (−Y;q)_∞` with
/// `X = q^{1/2}a^{-1/2}zZ`, `Y = q^{1/2}a^{1/2}zZ`, through `v^q`.
fn unknot_closed_form(gamma: usize, q: i64) -> QALaurent {
    let top = (q / 4).max(0) as usize;
    let mut out = QALaurent::zero();
    for i in 0..=gamma {
        let j = gamma - i;
        let (pi, pj) = (inv_qpoch(i, top), inv_qpoch(j, top));
        let sign = if j.is_multiple_of(2) { 1 } else { -1 };
        for (x, cx) in pi.iter().enumerate() {
            for (y, cy) in pj.iter().enumerate() {
                let v = 2 * (i * i) as i64 + 2 * j as i64 + 4 * (x + y) as i64;
                out.add_term(v, 2 * j as i64 - 2 * i as i64, sign * cx * cy);
            }
        }
    }
    out.truncate_above(q)
}

#[test]
fn unknot_pochhammer_small() {
    let s = pochhammer_inf(&unknot(), false, t(2, 8)).unwrap();
    let mut want = QALaurent::monomial(2, -2, 1);
    want += &QALaurent::monomial(6, -2, 1);
    assert_eq!(s.layer(1).terms[&vec![1]], want);
    assert_eq!(s.layer(2).terms[&vec![2]], QALaurent::monomial(8, -4, 1));
    assert!(s.has_unit_constant());
    assert_eq!(s.min_precision(), 8);
}

#[test]
fn pochhammer_matches_long_finite_product() {
    for name in ["unknot", "theta"] {
        let d = builtin(name).unwrap();
        let cs = all_cycles(&d).unwrap();
        let sig = cycle_signature(&cs);
        for (inv, sigma) in [(false, 1), (true, -1)] {
            let q = 10;
            let s = pochhammer_inf(&d, inv, t(3, q)).unwrap();
            let p = cycle_polynomial_at(&cs, &sig, 1, 0, sigma);
            let long = pochhammer_n(&p, &variable_rots(&cs), 6);
            for (deg, exp, c) in s.terms() {
                assert!(deg <= 3);
                assert_eq!(c, &long.coeff(exp).truncate_above(q), "{name} {exp:?}");
            }
            for (exp, c) in long.terms() {
                let deg: u32 = exp.iter().sum();
                let c = c.truncate_above(q);
                if deg <= 3 && !c.is_zero() {
                    assert_eq!(
                        s.layer(deg as usize).terms.get(exp),
                        Some(&c),
                        "{name} {exp:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn b_exponent_signs() {
    let d = builtin("theta").unwrap();
    for (inv, sign) in [(false, -1), (true, 1)] {
        let s = pochhammer_inf(&d, inv, t(3, 12)).unwrap();
        for (_, _, c) in s.terms() {
            for (_, b, _) in c.terms() {
                assert!(b * sign >= 0);
            }
        }
    }
}

#[test]
fn degree_zero_is_one() {
    let s = pochhammer_inf(&unknot(), false, t(0, 8)).unwrap();
    assert_eq!(s.len(), 1);
    assert!(s.has_unit_constant());
    let f = homfly_series(&unknot(), t(0, 8)).unwrap();
    assert_eq!(f.table.len(), 1);
    assert!(check_fphi(&unknot(), t(0, 8)).unwrap().passed());
    assert!(check_shift(&unknot(), t(0, 8)).unwrap().passed());
}

#[test]
fn non_positive_rejected() {
    let d = builtin("tetrahedron").unwrap();
    assert!(matches!(
        homfly_series(&d, t(1, 4)),
        Err(HomflyError::NotPositive(_))
    ));
    assert!(matches!(
        pochhammer_inf(&d, true, t(1, 4)),
        Err(HomflyError::NotPositive(_))
    ));
}

#[test]
fn inverse_of_pochhammer() {
    let s = pochhammer_inf(&unknot(), true, t(2, 8)).unwrap();
    let inv = series_invert(&s).unwrap();
    let one = GradedSeries::one(s.signature(), s.kappa(), 2);
    assert!(inv.mul(&s).sub(&one).is_zero_as_known());
    assert!(s.mul(&inv).sub(&one).is_zero_as_known());
    let zero = GradedSeries::zero(s.signature(), 0, 2);
    assert!(matches!(
        series_invert(&zero),
        Err(HomflyError::NotInvertible)
    ));
}

#[test]
fn unknot_matches_closed_form() {
    let q = 12;
    let f = homfly_series(&unknot(), t(4, q)).unwrap();
    assert_eq!(f.series.min_precision(), q);
    for gamma in 0..=4usize {
        let key = Coloring::parse(&unknot(), &format!("0={gamma}")).unwrap();
        let got = f
            .table
            .get(&key)
            .map(|c| c.coeff.to_qalaurent())
            .unwrap_or_else(QALaurent::zero);
        assert_eq!(got, unknot_closed_form(gamma, q), "γ={gamma}");
    }
    assert_eq!(f.table.len(), 5);
    let u = unknot();
    let zero = &f.table[&Coloring::zero(&u)];
    assert!(zero.coeff.to_qalaurent().is_one());
}

#[test]
fn identity_checks() {
    let theta = builtin("theta").unwrap();
    for r in [
        check_fphi(&unknot(), t(4, 8)).unwrap(),
        check_fphi(&theta, t(3, 6)).unwrap(),
        check_shift(&unknot(), t(3, 6)).unwrap(),
        check_shift(&theta, t(2, 6)).unwrap(),
    ] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn coherence_under_larger_truncation() {
    let theta = builtin("theta").unwrap();
    let small = homfly_series(&theta, t(2, 6)).unwrap().series;
    let big = homfly_series(&theta, t(3, 10)).unwrap().series;
    assert_eq!(big.restrict(2).truncate(6), small);
}

#[test]
fn specialization() {
    let f = homfly_series(&unknot(), t(2, 12)).unwrap();
    let s = specialize_to_n(&f, 2).unwrap();
    let one = Coloring::parse(&unknot(), "0=1").unwrap();
    assert!(s[&one].agrees_with(&qbinom(2, 1).unwrap()));
    assert!(s[&one].covers(&qbinom(2, 1).unwrap()));
    assert_eq!(s[&one].window, 8);
    let u = unknot();
    assert!(s[&Coloring::zero(&u)].poly.is_one());
    assert!(matches!(
        specialize_to_n(&f, 4),
        Err(HomflyError::WindowTooSmall { needed: 16, .. })
    ));
    assert!(matches!(specialize_to_n(&f, 0), Err(HomflyError::ZeroN)));
}

#[test]
fn exact_layers_stay_exact() {
    let u = unknot();
    let ctx = Context::new(&u).unwrap();
    let p = ctx.factor(PArgs::PLAIN, 0, 3);
    assert!(p.layers().iter().all(|l| l.prec == EXACT));
    assert_eq!(ctx.mu_factor(PArgs::PLAIN, 3).len(), 2);
}
