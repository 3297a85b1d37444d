//! t-string functions: generating functions of Kostka-Foulkes polynomials
//! along delta-strings, computed as constant terms of the deformed
//! denominator against the character.

use crate::affine::{DominantWeight, RootVector};
use crate::error::{Error, Result};
use crate::formal::delta_tilde;
use crate::qseries::{QSeries, Var};

use super::{character, KostkaTable};

/// a^lambda_mu(t, q) for mu = lambda - offset in Max(lambda), to q-order
/// `box_size - max(offset)`. Computed as the (offset-shifted) diagonal of
/// the deformed denominator times the character.
pub fn t_string(lambda: &DominantWeight, mu_offset: &RootVector, box_size: i64) -> Result<QSeries> {
    // mu must be dominant and in Max(lambda): offset on a wall of Q+
    let pa0 = lambda.pair_a0() - 2 * mu_offset.m + 2 * mu_offset.n;
    let pa1 = lambda.pair_a1() + 2 * mu_offset.m - 2 * mu_offset.n;
    let dominant = pa0 >= 0 && pa1 >= 0 && mu_offset.m >= 0 && mu_offset.n >= 0;
    if !dominant || (mu_offset.m != 0 && mu_offset.n != 0) {
        return Err(Error::NotInMax(mu_offset.m, mu_offset.n));
    }
    let chi = character(lambda, box_size)?;
    let product = delta_tilde(box_size).mul(&chi);
    Ok(product.diag_series(mu_offset.m, mu_offset.n))
}

/// The generating-function route: sum_k K_{lambda, mu - k delta}(t) q^k
/// read straight out of a Kostka table. Used to cross-check `t_string`.
pub fn t_string_kostka_route(table: &KostkaTable, mu_offset: &RootVector) -> QSeries {
    let kmax = (table.depth - mu_offset.ht()) / 2;
    let mut out = QSeries::zero(Var::Q, 2 * kmax.max(0));
    for k in 0..=kmax {
        let offset = RootVector::new(mu_offset.m + k, mu_offset.n + k);
        if let Some(entry) = table.get(&offset) {
            if !entry.poly.is_zero() {
                out.set_coeff(2 * k, entry.poly.clone());
            }
        }
    }
    out
}
