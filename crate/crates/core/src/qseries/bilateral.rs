//! Bilateral sums over the Weyl-group index, in two guises: the
//! principally specialized Hall-Littlewood sums F^l_p, and the classical
//! bilateral basic hypergeometric summations (the 1psi1 and the
//! very-well-poised 6psi6) as machine-checked identities.
//!
//! Truncation soundness is the main risk here, so every sum derives an
//! explicit lower bound on the valuation of the j-th term and only stops
//! once the first omitted term provably exceeds the requested order.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::report::{IdentityReport, Status};
use crate::ring::RationalFunction;

use super::poch::{div_factor, mul_factor};
use super::{QSeries, Var};

/// Monomial substitution `coef * t^t_pow * v^(v_dexp/2)` with rational coef.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coef: BigRational,
    pub t_pow: i64,
    pub v_dexp: i64,
}

impl Monomial {
    pub fn new(coef: BigRational, t_pow: i64, v_dexp: i64) -> Self {
        assert!(!coef.is_zero(), "monomial coefficient must be nonzero");
        Monomial {
            coef,
            t_pow,
            v_dexp,
        }
    }

    pub fn from_parts(num: i64, den: i64, t_pow: i64, v_dexp: i64) -> Self {
        Monomial::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            t_pow,
            v_dexp,
        )
    }

    pub fn one() -> Self {
        Monomial::from_parts(1, 1, 0, 0)
    }

    /// v^(dexp/2)
    pub fn v_pow(dexp: i64) -> Self {
        Monomial::from_parts(1, 1, 0, dexp)
    }

    /// t^k
    pub fn t_pow_mono(k: i64) -> Self {
        Monomial::from_parts(1, 1, k, 0)
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.t_pow == 0 && self.v_dexp == 0
    }

    pub fn neg(&self) -> Self {
        Monomial {
            coef: -self.coef.clone(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            coef: &self.coef * &other.coef,
            t_pow: self.t_pow + other.t_pow,
            v_dexp: self.v_dexp + other.v_dexp,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        Monomial {
            coef: &self.coef / &other.coef,
            t_pow: self.t_pow - other.t_pow,
            v_dexp: self.v_dexp - other.v_dexp,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut acc = Monomial::one();
        for _ in 0..k.abs() {
            acc = acc.mul(self);
        }
        if k < 0 {
            Monomial::one().div(&acc)
        } else {
            acc
        }
    }

    /// Square root when it stays a monomial on the grid.
    pub fn sqrt(&self) -> Option<Self> {
        if self.t_pow % 2 != 0 || self.v_dexp % 2 != 0 || self.coef.is_negative() {
            return None;
        }
        let sn = self.coef.numer().sqrt();
        let sd = self.coef.denom().sqrt();
        if &(&sn * &sn) != self.coef.numer() || &(&sd * &sd) != self.coef.denom() {
            return None;
        }
        Some(Monomial {
            coef: BigRational::new(sn, sd),
            t_pow: self.t_pow / 2,
            v_dexp: self.v_dexp / 2,
        })
    }

    /// The t-part as a rational function coefficient.
    pub fn coef_rf(&self) -> RationalFunction {
        RationalFunction::from_rational(&self.coef).mul(&RationalFunction::t_pow(self.t_pow))
    }

    pub fn render(&self) -> String {
        format!("({})*t^{}*v^({}/2)", self.coef, self.t_pow, self.v_dexp)
    }
}

/// F^l_p: the bilateral sum of v^(p j + l C(j,2)) t^j
/// (t^{-1} v; v^2)_j / (t v; v^2)_j, truncated at v^v_order.
///
/// For level >= 1 the j-range is finite because the v-valuation of the
/// j-th term grows quadratically. For level 0 every term starts at v^0 and
/// the sum only converges t-adically: coefficients are exact modulo
/// t^(t_order+1) after summing |j| <= t_order + v_order.
pub fn principal_sum(level: i64, p: i64, v_order: i64, t_order: Option<i64>) -> Result<QSeries> {
    if p < 0 || p > level {
        return Err(Error::InvalidP { p, level });
    }
    let t_order = if level == 0 {
        match t_order {
            Some(t) => Some(t),
            None => {
                return Err(Error::NonTruncatingSum(
                    "level 0 principal sum needs a t-order".into(),
                ))
            }
        }
    } else {
        None
    };
    let dorder = 2 * v_order;
    let t = RationalFunction::t();
    let t_inv = RationalFunction::t_pow(-1);
    // v-valuation of the +j / -j term prefactors
    let val_pos = |j: i64| p * j + level * (j * (j - 1) / 2);
    let val_neg = |j: i64| (level - p) * j + level * (j * (j - 1) / 2);
    let jmax = match t_order {
        Some(to) => to + v_order,
        None => {
            let mut j = 1;
            while val_pos(j) <= v_order || val_neg(j) <= v_order {
                j += 1;
            }
            j
        }
    };
    // first omitted term must provably exceed the requested order
    match t_order {
        Some(to) => debug_assert!(jmax + 1 - v_order > to),
        None => {
            assert!(val_pos(jmax + 1) > v_order && val_neg(jmax + 1) > v_order);
        }
    }
    let mut sum = QSeries::one(Var::V, dorder);
    // R_j = t^j (t^{-1} v; v^2)_j / (t v; v^2)_j, built incrementally
    let mut ratio = QSeries::one(Var::V, dorder);
    for j in 1..=jmax {
        let e = 4 * j - 2; // doubled exponent of v^(2j-1)
        ratio = mul_factor(&ratio, &t_inv, e)?;
        ratio = div_factor(&ratio, &t, e)?;
        ratio = ratio.scale(&t);
        for (val, keep) in [
            (val_pos(j), t_order.is_some() || val_pos(j) <= v_order),
            (val_neg(j), t_order.is_some() || val_neg(j) <= v_order),
        ] {
            if !keep {
                continue;
            }
            let shifted = ratio
                .mul_monomial(&RationalFunction::one(), 2 * val)
                .truncate(dorder);
            sum = sum.add(&shifted)?;
        }
    }
    Ok(sum)
}

/// One side of a bilateral basic hypergeometric sum:
/// sum_{n >= start} zeta^n prod_u (A_u; w)_n / prod_u (B_u; w)_n.
struct OneSided {
    upper: Vec<Monomial>,
    lower: Vec<Monomial>,
    zeta: Monomial,
    start: i64,
}

fn check_w(w: &Monomial) -> Result<i64> {
    if !w.coef.is_one() || w.t_pow != 0 || w.v_dexp <= 0 {
        return Err(Error::NonFormalPochhammer(format!(
            "base {} must be a positive power of v",
            w.render()
        )));
    }
    Ok(w.v_dexp)
}

/// Lower bound for the v-valuation contribution of one upper Pochhammer:
/// picking k of the factors costs at least k*A_v + Omega*C(k,2), a convex
/// function of k minimized near -A_v/Omega.
fn upper_min_valuation(a_v: i64, omega: i64) -> i64 {
    if a_v >= 0 {
        return 0;
    }
    let kmax = (-a_v) / omega + 2;
    let mut best = 0;
    for k in 1..=kmax {
        best = best.min(k * a_v + omega * (k * (k - 1) / 2));
    }
    best
}

impl OneSided {
    /// Largest n whose term can touch the window, with the proof obligation
    /// that the first omitted term's valuation exceeds the order.
    fn term_range(&self, omega: i64, dv_order: i64, t_order: Option<i64>) -> Result<i64> {
        if self.upper.iter().any(|a| a.is_one()) {
            // (1; w)_n = 0 for n >= 1: the side is empty
            return Ok(self.start.max(1) - 1);
        }
        let m_sum: i64 = self
            .upper
            .iter()
            .map(|a| upper_min_valuation(a.v_dexp, omega))
            .sum();
        let zv = self.zeta.v_dexp;
        let zt = self.zeta.t_pow;
        if zv > 0 {
            // v-adic convergence: n*zv + m_sum > dv_order excludes the tail
            // (m_sum <= 0, so the quotient is well defined)
            let nmax = (dv_order - m_sum) / zv;
            debug_assert!((nmax + 1) * zv + m_sum > dv_order);
            return Ok(nmax);
        }
        let t_order = match t_order {
            Some(t) if zv == 0 && zt > 0 => t,
            _ => {
                return Err(Error::NonTruncatingSum(format!(
                    "argument {} has no positive v- or t-valuation",
                    self.zeta.render()
                )))
            }
        };
        // t-adic convergence: bound how much negative t-power the Pochhammer
        // parts can contribute inside the v-window.
        let mut budget: i64 = 0;
        for a in &self.upper {
            if a.t_pow < 0 {
                if a.v_dexp <= 0 {
                    return Err(Error::NonTruncatingSum(format!(
                        "upper parameter {} mixes t^-1 with nonpositive v-power",
                        a.render()
                    )));
                }
                budget += (-a.t_pow) * (dv_order / a.v_dexp);
            }
        }
        for b in &self.lower {
            if b.t_pow < 0 {
                if b.v_dexp <= 0 {
                    return Err(Error::NonTruncatingSum(format!(
                        "lower parameter {} mixes t^-1 with nonpositive v-power",
                        b.render()
                    )));
                }
                budget += (-b.t_pow) * (dv_order / b.v_dexp);
            }
        }
        let nmax = (t_order + budget) / zt;
        debug_assert!((nmax + 1) * zt - budget > t_order);
        Ok(nmax)
    }

    /// Slack needed in the working window: upper factors with negative
    /// v-exponent temporarily lower the reach of the truncated product.
    fn window_slack(&self, omega: i64) -> i64 {
        let mut slack = 0;
        for a in &self.upper {
            let mut i = 0;
            while a.v_dexp + i * omega < 0 {
                slack += -(a.v_dexp + i * omega);
                i += 1;
            }
        }
        slack
    }

    fn sum(&self, w: &Monomial, dv_order: i64, t_order: Option<i64>) -> Result<QSeries> {
        let omega = check_w(w)?;
        let nmax = self.term_range(omega, dv_order, t_order)?;
        let work = dv_order + self.window_slack(omega);
        let mut total = QSeries::zero(Var::V, dv_order);
        let mut uppers: Vec<QSeries> = self
            .upper
            .iter()
            .map(|_| QSeries::one(Var::V, work))
            .collect();
        let mut lowers: Vec<QSeries> = self
            .lower
            .iter()
            .map(|_| QSeries::one(Var::V, work))
            .collect();
        let mut zeta_pow = Monomial::one();
        for n in 0..=nmax {
            if n > 0 {
                // extend every running Pochhammer by its (n-1)-th factor
                for (acc, a) in uppers.iter_mut().zip(&self.upper) {
                    let e = a.v_dexp + (n - 1) * omega;
                    *acc = mul_factor(acc, &a.coef_rf(), e)?;
                }
                for (acc, b) in lowers.iter_mut().zip(&self.lower) {
                    let e = b.v_dexp + (n - 1) * omega;
                    *acc = div_factor(acc, &b.coef_rf(), e)?;
                }
                zeta_pow = zeta_pow.mul(&self.zeta);
            }
            if n < self.start {
                continue;
            }
            let mut term: Option<QSeries> = None;
            for acc in uppers.iter().chain(lowers.iter()) {
                term = Some(match term {
                    None => acc.clone(),
                    Some(t) => t.mul(acc)?,
                });
            }
            let term = term
                .unwrap_or_else(|| QSeries::one(Var::V, work))
                .mul_monomial(&zeta_pow.coef_rf(), zeta_pow.v_dexp);
            total = total.add(&term.truncate(dv_order))?;
        }
        Ok(total)
    }
}

/// Expand a quotient of infinite Pochhammers `prod (n_i; w)_inf / prod
/// (d_j; w)_inf` after cancelling common arguments. Numerator arguments
/// may make the whole product vanish; denominator arguments must not.
pub(crate) fn poch_quotient(
    nums: &[Monomial],
    dens: &[Monomial],
    w: &Monomial,
    dv_order: i64,
) -> Result<QSeries> {
    let omega = check_w(w)?;
    let mut nums: Vec<Monomial> = nums.to_vec();
    let mut dens_left: Vec<Monomial> = Vec::new();
    'outer: for d in dens {
        for (i, n) in nums.iter().enumerate() {
            if n == d {
                nums.remove(i);
                continue 'outer;
            }
        }
        dens_left.push(d.clone());
    }
    let mut acc = QSeries::one(Var::V, dv_order);
    for n in &nums {
        acc = mul_poch_inf(&acc, n, omega, false)?;
    }
    for d in &dens_left {
        acc = mul_poch_inf(&acc, d, omega, true)?;
    }
    Ok(acc)
}

/// Multiply (or divide) by `(m; v^omega)_inf`.
fn mul_poch_inf(s: &QSeries, m: &Monomial, omega: i64, divide: bool) -> Result<QSeries> {
    if m.v_dexp < 0 {
        return Err(Error::NonFormalPochhammer(m.render()));
    }
    let mut acc = s.clone();
    let mut e = m.v_dexp;
    let c = m.coef_rf();
    while e <= acc.trunc().max(0) {
        if e == 0 && c.is_one() {
            return if divide {
                Err(Error::VanishingDenominator(m.render()))
            } else {
                // a vanishing factor annihilates the product
                Ok(QSeries::zero(Var::V, s.trunc()))
            };
        }
        acc = if divide {
            div_factor(&acc, &c, e)?
        } else {
            mul_factor(&acc, &c, e)?
        };
        e += omega;
    }
    Ok(acc)
}

/// The bilateral sum `sum_{j in Z} prod (A; w)_j / prod (B; w)_j z^j`.
/// The negative side is folded to positive indices through
/// `(A; w)_{-n} / (B; w)_{-n} = (B/A)^n (w/B; w)_n / (w/A; w)_n`.
fn bilateral_sum(
    upper: &[Monomial],
    lower: &[Monomial],
    w: &Monomial,
    z: &Monomial,
    dv_order: i64,
    t_order: Option<i64>,
) -> Result<QSeries> {
    let positive = OneSided {
        upper: upper.to_vec(),
        lower: lower.to_vec(),
        zeta: z.clone(),
        start: 0,
    };
    let mut ratio = Monomial::one();
    for b in lower {
        ratio = ratio.mul(b);
    }
    for a in upper {
        ratio = ratio.div(a);
    }
    let negative = OneSided {
        upper: lower.iter().map(|b| w.div(b)).collect(),
        lower: upper.iter().map(|a| w.div(a)).collect(),
        zeta: ratio.div(z),
        start: 1,
    };
    let pos = positive.sum(w, dv_order, t_order)?;
    let neg = negative.sum(w, dv_order, t_order)?;
    pos.add(&neg)
}

/// Check Ramanujan's bilateral summation at a monomial substitution:
/// `1psi1(a; b; w, z) = (w, b/a, az, w/(az); w) / (b, w/a, z, b/(az); w)`.
pub fn verify_1psi1(
    a: &Monomial,
    b: &Monomial,
    w: &Monomial,
    z: &Monomial,
    v_order: i64,
    t_order: Option<i64>,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let dv = 2 * v_order;
    let lhs = bilateral_sum(
        std::slice::from_ref(a),
        std::slice::from_ref(b),
        w,
        z,
        dv,
        t_order,
    )?;
    let rhs = one_psi_one_rhs(a, b, w, z, dv)?;
    let mismatch = match t_order {
        Some(to) => lhs.first_mismatch_t_adic(&rhs, dv, to)?,
        None => lhs.first_mismatch(&rhs, dv)?,
    };
    Ok(report("1PSI1", v_order, mismatch, started))
}

/// Right side of the 1psi1 summation; exposed separately so a deliberately
/// mutated instance can be checked to fail.
pub(crate) fn one_psi_one_rhs(
    a: &Monomial,
    b: &Monomial,
    w: &Monomial,
    z: &Monomial,
    dv_order: i64,
) -> Result<QSeries> {
    let az = a.mul(z);
    let nums = [w.clone(), b.div(a), az.clone(), w.div(&az)];
    let dens = [b.clone(), w.div(a), z.clone(), b.div(&az)];
    poch_quotient(&nums, &dens, w, dv_order)
}

/// Check Bailey's very-well-poised 6psi6 summation at a monomial
/// substitution. `a` must admit a monomial square root on the grid.
pub fn verify_6psi6(
    a: &Monomial,
    b: &Monomial,
    c: &Monomial,
    d: &Monomial,
    e: &Monomial,
    w: &Monomial,
    v_order: i64,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let dv = 2 * v_order;
    let lhs = six_psi_six_lhs(a, b, c, d, e, w, dv)?;
    let rhs = six_psi_six_rhs(a, b, c, d, e, w, dv)?;
    let mismatch = lhs.first_mismatch(&rhs, dv)?;
    Ok(report("6PSI6", v_order, mismatch, started))
}

pub(crate) fn six_psi_six_lhs(
    a: &Monomial,
    b: &Monomial,
    c: &Monomial,
    d: &Monomial,
    e: &Monomial,
    w: &Monomial,
    dv_order: i64,
) -> Result<QSeries> {
    let sq = a.sqrt().ok_or_else(|| {
        Error::NonFormalPochhammer(format!("{} has no monomial square root", a.render()))
    })?;
    let upper = [
        w.mul(&sq),
        w.mul(&sq).neg(),
        b.clone(),
        c.clone(),
        d.clone(),
        e.clone(),
    ];
    let lower = [
        sq.clone(),
        sq.neg(),
        a.mul(w).div(b),
        a.mul(w).div(c),
        a.mul(w).div(d),
        a.mul(w).div(e),
    ];
    let z = w.mul(a).mul(a).div(&b.mul(c).mul(d).mul(e));
    bilateral_sum(&upper, &lower, w, &z, dv_order, None)
}

pub(crate) fn six_psi_six_rhs(
    a: &Monomial,
    b: &Monomial,
    c: &Monomial,
    d: &Monomial,
    e: &Monomial,
    w: &Monomial,
    dv_order: i64,
) -> Result<QSeries> {
    let aw = a.mul(w);
    let nums = [
        aw.clone(),
        aw.div(&b.mul(c)),
        aw.div(&b.mul(d)),
        aw.div(&c.mul(d)),
        aw.div(&b.mul(e)),
        aw.div(&c.mul(e)),
        aw.div(&d.mul(e)),
        w.clone(),
        w.div(a),
    ];
    let dens = [
        aw.div(b),
        aw.div(c),
        aw.div(d),
        aw.div(e),
        w.div(b),
        w.div(c),
        w.div(d),
        w.div(e),
        w.mul(a).mul(a).div(&b.mul(c).mul(d).mul(e)),
    ];
    poch_quotient(&nums, &dens, w, dv_order)
}

fn report(id: &str, order: i64, mismatch: Option<i64>, started: Instant) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        order,
        status: if mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        first_mismatch: mismatch,
        elapsed: started.elapsed(),
    }
}
