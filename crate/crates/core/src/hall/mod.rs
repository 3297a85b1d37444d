//! Hall-Littlewood functions (two independent computation routes),
//! characters, Kostka-Foulkes tables, t-string functions, the Freudenthal
//! multiplicity oracle, and the named-identity catalog.

mod freudenthal;
mod kostka;
mod strings;
pub mod verify;

pub use freudenthal::{freudenthal_mult, FreudenthalTable};
pub use kostka::{kostka_table, KostkaEntry, KostkaTable};
pub use strings::{t_string, t_string_kostka_route};
pub use verify::{verify_all, verify_identity, IdentityId};

use num_rational::BigRational;
use num_traits::Zero;

use crate::affine::{stabilizer_poincare, weyl_act, weyl_s, DominantWeight, RootVector};
use crate::error::{Error, Result};
use crate::formal::{delta_tilde_inv, ConeSeries};
use crate::ring::RationalFunction;

/// Weyl elements whose orbit offset lands inside the box, as a list of j.
/// Duplicate offsets (stabilizer cosets) are kept: the routes sum over
/// group elements, not orbit points.
fn weyl_range(lambda: &DominantWeight, box_size: i64) -> Vec<i64> {
    let mut js = Vec::new();
    for sign in [1i64, -1] {
        let mut j = if sign == 1 { 0 } else { -1 };
        let mut misses = 0;
        loop {
            let off = weyl_act(j, lambda);
            if off.m <= box_size && off.n <= box_size {
                js.push(j);
                misses = 0;
            } else {
                // offsets grow quadratically with |j| at positive level
                misses += 1;
                if misses >= 2 {
                    break;
                }
            }
            j += sign;
        }
    }
    js.sort_unstable();
    js
}

/// Multiply by (t - e^{-alpha}) / (1 - t e^{-alpha}).
fn mul_pi_factor(s: &ConeSeries, alpha: &RootVector) -> ConeSeries {
    let t = RationalFunction::t();
    let num = s.scale(&t).sub(&s.shift(alpha));
    num.div_binomial(alpha, &t)
}

/// e^{-lambda} P_lambda via the inversion-set expansion: the deformed
/// denominator times the Hall-Littlewood function equals the Weyl sum of
/// e^{w lambda - lambda} pi(w), divided by the stabilizer Poincare series.
pub fn hl_pi_route(lambda: &DominantWeight, box_size: i64) -> Result<ConeSeries> {
    if lambda.level < 1 {
        return Err(Error::LevelZeroHallLittlewood);
    }
    let mut sum = ConeSeries::zero(box_size);
    for j in weyl_range(lambda, box_size) {
        let off = weyl_act(j, lambda);
        let mut term = ConeSeries::monomial(off, RationalFunction::one(), box_size);
        for alpha in weyl_s(j) {
            term = mul_pi_factor(&term, &alpha);
        }
        sum = sum.add(&term);
    }
    let w_inv = stabilizer_poincare(lambda)
        .inv()
        .expect("Poincare series is nonzero");
    Ok(sum.scale(&w_inv).mul(&delta_tilde_inv(box_size)))
}

/// e^{-lambda} P_lambda straight from the alternating Weyl-sum definition,
/// with the sign-twisted factors over the inversion set of each element.
/// Works at an enlarged internal box because the e^{+gamma} factors read
/// upward in the grid.
pub fn hl_weyl_route(lambda: &DominantWeight, box_size: i64) -> Result<ConeSeries> {
    if lambda.level < 1 {
        // At level 0 the Weyl sum never truncates: every group element
        // contributes t^len(w) to the constant cell, which only converges
        // t-adically. Level-0 content flows through the constant-term and
        // specialization routes instead.
        return Err(Error::LevelZeroHallLittlewood);
    }
    let lam_rho = DominantWeight::new(lambda.level + 2, lambda.p + 1)?;
    let js = weyl_range(lambda, box_size);
    let max_shift = js
        .iter()
        .map(|&j| weyl_s(j).iter().map(|g| g.m.max(g.n)).sum::<i64>())
        .max()
        .unwrap_or(0);
    let work_box = box_size + max_shift;
    let t = RationalFunction::t();
    let mut sum = ConeSeries::zero(work_box);
    for &j in &js {
        let off = weyl_act(j, &lam_rho);
        // the enlarged box covers every shifted starting monomial: the
        // rho-offset components are bounded by the inversion-set shift
        debug_assert!(off.m <= work_box && off.n <= work_box);
        let mut term = ConeSeries::monomial(off, RationalFunction::one(), work_box);
        for gamma in weyl_s(j) {
            // (1 - t e^{+gamma}) / (1 - t e^{-gamma})
            term = term.div_binomial(&gamma, &t);
            term = term.mul_binomial_up(&gamma, &t);
        }
        if j.rem_euclid(2) == 1 {
            term = term.neg();
        }
        sum = sum.add(&term);
    }
    debug_assert!(sum.known() >= box_size);
    let w_inv = stabilizer_poincare(lambda)
        .inv()
        .expect("Poincare series is nonzero");
    let full = sum.scale(&w_inv).mul(&delta_tilde_inv(work_box));
    Ok(full.restrict(box_size))
}

/// Formal character e^{-lambda} chi_lambda: the t = 0 specialization of a
/// Hall-Littlewood route. The zero-level character is the constant 1.
pub fn character(lambda: &DominantWeight, box_size: i64) -> Result<ConeSeries> {
    if lambda.level == 0 {
        return Ok(ConeSeries::one(box_size));
    }
    hl_pi_route(lambda, box_size)?.eval_t(&BigRational::zero())
}
