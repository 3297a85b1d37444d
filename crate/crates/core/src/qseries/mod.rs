//! Truncated one-variable formal series over [`RationalFunction`]
//! coefficients, with exponents on the half-integer grid.
//!
//! Exponents are stored doubled (`2e`), so `q^(1/2)` is the key 1 and `q^3`
//! the key 6. Every series carries an explicit knowledge window:
//! coefficients are exact for doubled exponents in `[min_exp, trunc]`,
//! known to vanish below `min_exp`, and unknown above `trunc`. Arithmetic
//! propagates the window so that no operation claims precision it does not
//! have.

pub mod bilateral;
mod poch;

pub use poch::{poch_inf, poch_int};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::RationalFunction;

/// Variable tag. Purely documentary, but binary operations insist on
/// matching tags to catch accidental mixing of q- and v-expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    V,
    S,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => write!(f, "q"),
            Var::V => write!(f, "v"),
            Var::S => write!(f, "s"),
        }
    }
}

/// Truncated series with rational-function coefficients on the
/// half-integer exponent grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    var: Var,
    /// doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, RationalFunction>,
    /// Known to vanish below this doubled exponent.
    min_exp: i64,
    /// Coefficients are exact for doubled exponents <= trunc.
    trunc: i64,
}

impl QSeries {
    pub fn zero(var: Var, trunc: i64) -> Self {
        QSeries {
            var,
            terms: BTreeMap::new(),
            min_exp: 0,
            trunc,
        }
    }

    pub fn one(var: Var, trunc: i64) -> Self {
        QSeries::monomial(var, RationalFunction::one(), 0, trunc)
    }

    /// c * x^(dexp/2), window [min(dexp,0), trunc].
    pub fn monomial(var: Var, coef: RationalFunction, dexp: i64, trunc: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() && dexp <= trunc {
            terms.insert(dexp, coef);
        }
        QSeries {
            var,
            terms,
            min_exp: dexp.min(0),
            trunc,
        }
    }

    pub(crate) fn from_parts(
        var: Var,
        terms: BTreeMap<i64, RationalFunction>,
        min_exp: i64,
        trunc: i64,
    ) -> Self {
        debug_assert!(terms.keys().all(|&e| e >= min_exp && e <= trunc));
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        QSeries {
            var,
            terms,
            min_exp,
            trunc,
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at doubled exponent `dexp`. Panics beyond the window.
    pub fn coeff(&self, dexp: i64) -> RationalFunction {
        assert!(
            dexp <= self.trunc,
            "coefficient at doubled exponent {} requested, series known to {}",
            dexp,
            self.trunc
        );
        self.terms
            .get(&dexp)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    /// Lowest doubled exponent with a nonzero stored coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Nonzero terms in increasing doubled exponent.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn set_coeff(&mut self, dexp: i64, coef: RationalFunction) {
        debug_assert!(dexp >= self.min_exp && dexp <= self.trunc);
        if coef.is_zero() {
            self.terms.remove(&dexp);
        } else {
            self.terms.insert(dexp, coef);
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VarMismatch(self.var, other.var));
        }
        Ok(())
    }

    /// Drop knowledge above the given doubled exponent.
    pub fn truncate(&self, trunc: i64) -> Self {
        let mut out = self.clone();
        out.trunc = self.trunc.min(trunc);
        out.terms.retain(|&e, _| e <= out.trunc);
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries::zero(self.var, trunc);
        out.min_exp = self.min_exp.min(other.min_exp);
        for (&e, c) in self.terms.iter().chain(other.terms.iter()) {
            if e > trunc {
                continue;
            }
            let cur = out.terms.remove(&e).unwrap_or_else(RationalFunction::zero);
            let sum = cur.add(c);
            if !sum.is_zero() {
                out.terms.insert(e, sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    /// Multiply by c * x^(dexp/2): shifts the window.
    pub fn mul_monomial(&self, c: &RationalFunction, dexp: i64) -> Self {
        let mut out = QSeries::zero(self.var, self.trunc + dexp);
        out.min_exp = self.min_exp + dexp;
        if c.is_zero() {
            return out;
        }
        for (&e, v) in &self.terms {
            out.terms.insert(e + dexp, v.mul(c));
        }
        out
    }

    /// Truncated Cauchy product. The result is exact to
    /// min(a.trunc + b.min_exp, b.trunc + a.min_exp).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let trunc = (self.trunc + other.min_exp).min(other.trunc + self.min_exp);
        let mut out = QSeries::zero(self.var, trunc);
        out.min_exp = self.min_exp + other.min_exp;
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                let e = ea + eb;
                if e > trunc {
                    break;
                }
                let prod = ca.mul(cb);
                if prod.is_zero() {
                    continue;
                }
                let cur = out.terms.remove(&e).unwrap_or_else(RationalFunction::zero);
                let sum = cur.add(&prod);
                if !sum.is_zero() {
                    out.terms.insert(e, sum);
                }
            }
        }
        Ok(out)
    }

    /// Series inverse: requires a nonzero coefficient at the lowest stored
    /// exponent (a unit up to a monomial shift).
    pub fn inv(&self) -> Result<Self> {
        let lead_exp = match self.valuation() {
            Some(e) => e,
            None => return Err(Error::NonUnitSeries),
        };
        let lead = self.terms.get(&lead_exp).unwrap().clone();
        let lead_inv = lead.inv().map_err(|_| Error::NonUnitSeries)?;
        // u = self / (lead * x^lead_exp) has constant term 1; inverting u is
        // a triangular solve, and the monomial shift is undone at the end.
        let u = self.mul_monomial(&lead_inv, -lead_exp);
        let order = u.trunc;
        let mut inv_u = QSeries::zero(self.var, order);
        inv_u.min_exp = 0;
        // Solve u * inv_u = 1 coefficient by coefficient.
        let mut coeffs: BTreeMap<i64, RationalFunction> = BTreeMap::new();
        coeffs.insert(0, RationalFunction::one());
        for e in 1..=order {
            let mut acc = RationalFunction::zero();
            for (&k, uc) in u.terms.range(1..=e) {
                if let Some(prev) = coeffs.get(&(e - k)) {
                    acc = acc.add(&uc.mul(prev));
                }
            }
            if !acc.is_zero() {
                coeffs.insert(e, acc.neg());
            }
        }
        inv_u.terms = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(inv_u.mul_monomial(&lead_inv, -lead_exp))
    }

    /// Substitute x -> x^k (k >= 1): doubled exponents scale by k.
    pub fn substitute_power(&self, k: i64, new_var: Var) -> Self {
        assert!(k >= 1);
        let mut out = QSeries::zero(new_var, self.trunc * k);
        out.min_exp = self.min_exp * k;
        for (&e, c) in &self.terms {
            out.terms.insert(e * k, c.clone());
        }
        out
    }

    /// Split into (integer-exponent part, strictly half-integer part).
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = QSeries::zero(self.var, self.trunc);
        let mut odd = QSeries::zero(self.var, self.trunc);
        even.min_exp = self.min_exp;
        odd.min_exp = self.min_exp;
        for (&e, c) in &self.terms {
            if e.rem_euclid(2) == 0 {
                even.terms.insert(e, c.clone());
            } else {
                odd.terms.insert(e, c.clone());
            }
        }
        (even, odd)
    }

    /// First doubled exponent <= dorder where the two series differ, or
    /// None when they agree. Errors if either side is not known that far.
    pub fn first_mismatch(&self, other: &Self, dorder: i64) -> Result<Option<i64>> {
        self.check_var(other)?;
        for s in [self, other] {
            if s.trunc < dorder {
                return Err(Error::InsufficientOrder {
                    have: s.trunc,
                    want: dorder,
                });
            }
        }
        let lo = self.min_exp.min(other.min_exp);
        for e in lo..=dorder {
            if self.terms.get(&e) != other.terms.get(&e) {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// t-adic comparison: coefficients must agree modulo t^(t_order+1).
    /// Exact rational-function difference with t-valuation > t_order counts
    /// as agreement.
    pub fn first_mismatch_t_adic(
        &self,
        other: &Self,
        dorder: i64,
        t_order: i64,
    ) -> Result<Option<i64>> {
        self.check_var(other)?;
        for s in [self, other] {
            if s.trunc < dorder {
                return Err(Error::InsufficientOrder {
                    have: s.trunc,
                    want: dorder,
                });
            }
        }
        let lo = self.min_exp.min(other.min_exp);
        let zero = RationalFunction::zero();
        for e in lo..=dorder {
            let a = self.terms.get(&e).unwrap_or(&zero);
            let b = other.terms.get(&e).unwrap_or(&zero);
            let diff = a.sub(b);
            if let Some(val) = diff.t_valuation() {
                if val <= t_order {
                    return Ok(Some(e));
                }
            }
        }
        Ok(None)
    }

    /// JSON rendering with doubled exponents and a grid marker. Keys are
    /// alphabetical so that parsing and re-emitting through a canonical
    /// JSON writer reproduces the bytes exactly:
    /// `{"grid":2,"terms":[[2e,"coeff"],...],"trunc":2e_max,"var":"q"}`.
    pub fn render_json(&self) -> String {
        let mut out = String::from("{\"grid\":2,\"terms\":[");
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("[{},{}]", e, json_string(&c.render())));
        }
        out.push_str(&format!(
            "],\"trunc\":{},\"var\":\"{}\"}}",
            self.trunc, self.var
        ));
        out
    }
}

pub(crate) fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
