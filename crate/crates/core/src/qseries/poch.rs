//! q-Pochhammer products over the truncated series ring.
//!
//! `(a; w)_inf = prod_{i>=0} (1 - a w^i)` and its finite/negative-order
//! variants `(a; w)_j`. Arguments are monomials `coef * x^(dexp/2)` with a
//! rational-function coefficient, so `t q^(1/2)` and `t^(-1) v` are both
//! expressible. All exponents are doubled.

use crate::error::{Error, Result};
use crate::ring::RationalFunction;

use super::{QSeries, Var};

/// Infinite product `(coef x^(dexp_a/2); x^(dstep/2))_inf` truncated at
/// doubled order `dorder`. The argument must be formal: `dexp_a > 0`, so
/// only finitely many factors reach any given order.
pub fn poch_inf(
    var: Var,
    coef_a: &RationalFunction,
    dexp_a: i64,
    dstep: i64,
    dorder: i64,
) -> Result<QSeries> {
    if dexp_a <= 0 {
        return Err(Error::NonFormalPochhammer(format!(
            "({})*x^({}/2)",
            coef_a.render(),
            dexp_a
        )));
    }
    assert!(dstep > 0, "Pochhammer step must be positive");
    let mut acc = QSeries::one(var, dorder);
    let mut e = dexp_a;
    while e <= dorder {
        acc = mul_binomial(&acc, &coef_a.neg(), e)?;
        e += dstep;
    }
    Ok(acc)
}

/// Multiply by the binomial `(1 + c x^(dexp/2))` without losing window.
pub(crate) fn mul_binomial(s: &QSeries, c: &RationalFunction, dexp: i64) -> Result<QSeries> {
    debug_assert!(dexp > 0);
    let shifted = s.mul_monomial(c, dexp).truncate(s.trunc());
    s.add(&shifted)
}

/// Divide by the binomial `(1 - c x^(dexp/2))` (dexp > 0) without a general
/// inverse: solve `out = s + c x^(dexp/2) out` forward. Exact on the window
/// of `s`.
pub(crate) fn div_binomial(s: &QSeries, c: &RationalFunction, dexp: i64) -> Result<QSeries> {
    debug_assert!(dexp > 0);
    let trunc = s.trunc();
    let lo = s.min_exp();
    let mut out: std::collections::BTreeMap<i64, RationalFunction> =
        std::collections::BTreeMap::new();
    for e in lo..=trunc {
        let mut v = s.coeff(e);
        if let Some(prev) = out.get(&(e - dexp)) {
            v = v.add(&c.mul(prev));
        }
        if !v.is_zero() {
            out.insert(e, v);
        }
    }
    Ok(QSeries::from_parts(s.var(), out, lo, trunc))
}

/// Finite product `(a; w)_j` for any integer j, truncated at `dorder`:
/// - j >= 0: `prod_{i=0}^{j-1} (1 - a w^i)` (a Laurent polynomial, exact);
/// - j < 0: `1 / prod_{i=1}^{|j|} (1 - a w^(-i))`, each factor inverted as
///   a (Laurent) unit series.
pub fn poch_int(
    var: Var,
    coef_a: &RationalFunction,
    dexp_a: i64,
    dstep: i64,
    j: i64,
    dorder: i64,
) -> Result<QSeries> {
    assert!(dstep > 0);
    if j >= 0 {
        let mut acc = QSeries::one(var, dorder);
        for i in 0..j {
            let e = dexp_a + i * dstep;
            acc = mul_factor(&acc, coef_a, e)?;
        }
        Ok(acc)
    } else {
        let mut acc = QSeries::one(var, dorder);
        for i in 1..=(-j) {
            let e = dexp_a - i * dstep;
            acc = div_factor(&acc, coef_a, e)?;
        }
        Ok(acc)
    }
}

/// Multiply by `(1 - c x^(e/2))` where e may be negative or zero.
pub(crate) fn mul_factor(s: &QSeries, c: &RationalFunction, e: i64) -> Result<QSeries> {
    if e == 0 {
        let k = RationalFunction::one().sub(c);
        return Ok(s.scale(&k));
    }
    if e > 0 {
        return mul_binomial(s, &c.neg(), e);
    }
    // (1 - c x^e) with e < 0: the product is a Laurent series; both parts
    // stay inside the (shifted) window.
    let shifted = s.mul_monomial(&c.neg(), e);
    let trunc = s.trunc().min(shifted.trunc());
    s.truncate(trunc).add(&shifted.truncate(trunc))
}

/// Divide by `(1 - c x^(e/2))` where e may be negative or zero. For e < 0
/// the factor is rewritten as `(-c x^e)(1 - c^(-1) x^(-e))` so that the
/// reciprocal expands as a formal series again.
pub(crate) fn div_factor(s: &QSeries, c: &RationalFunction, e: i64) -> Result<QSeries> {
    if c.is_zero() {
        return Ok(s.clone());
    }
    if e == 0 {
        let k = RationalFunction::one().sub(c);
        if k.is_zero() {
            return Err(Error::VanishingDenominator(format!("1 - {}", c.render())));
        }
        return Ok(s.scale(&k.inv().expect("nonzero checked")));
    }
    if e > 0 {
        return div_binomial(s, c, e);
    }
    let c_inv = c.inv().expect("nonzero coefficient");
    // 1/(1 - c x^e) = (-c^{-1} x^{-e}) * 1/(1 - c^{-1} x^{-e}),  -e > 0
    let shifted = s.mul_monomial(&c_inv.neg(), -e);
    div_binomial(&shifted, &c_inv, -e)
}
