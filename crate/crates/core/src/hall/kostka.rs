//! Kostka-Foulkes tables by triangular solve: expand the character in the
//! Hall-Littlewood basis, peeling off one dominant weight at a time in
//! increasing height.

use std::collections::BTreeMap;

use crate::affine::{dominant_below, DominantWeight, RootVector};
use crate::error::Result;
use crate::ring::RationalFunction;

use super::{character, hl_pi_route};

#[derive(Clone, Debug)]
pub struct KostkaEntry {
    /// lambda - mu as (m, n).
    pub offset: RootVector,
    pub weight: DominantWeight,
    pub in_max: bool,
    /// K_{lambda mu}(t); always an integer polynomial.
    pub poly: RationalFunction,
}

#[derive(Debug)]
pub struct KostkaTable {
    pub lambda: DominantWeight,
    pub depth: i64,
    /// Ordered by (height, m).
    pub entries: Vec<KostkaEntry>,
    /// Observed negative coefficients (none are expected; reported, not fatal).
    pub warnings: Vec<String>,
}

impl KostkaTable {
    pub fn get(&self, offset: &RootVector) -> Option<&KostkaEntry> {
        self.entries.iter().find(|e| e.offset == *offset)
    }
}

/// Triangular solve for all dominant mu <= lambda with ht(lambda-mu) <= depth.
/// The box must be at least the depth so every extraction point is exact.
pub fn kostka_table(lambda: &DominantWeight, depth: i64, box_size: i64) -> Result<KostkaTable> {
    assert!(box_size >= depth, "box must cover the requested depth");
    let chi = character(lambda, box_size)?;
    let mut residual = chi;
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    // Hall-Littlewood series depend only on p(mu), so cache by it.
    let mut hl_cache: BTreeMap<i64, crate::formal::ConeSeries> = BTreeMap::new();
    for item in dominant_below(lambda, depth) {
        let k = residual.get(item.offset.m, item.offset.n);
        let poly = k.as_poly().unwrap_or_else(|| {
            panic!(
                "Kostka entry at offset {} is not an integer polynomial: {}",
                item.offset.render(),
                k.render()
            )
        });
        if poly.terms().any(|(_, c)| c < &num_bigint::BigInt::from(0)) {
            warnings.push(format!(
                "negative coefficient in K at offset {}: {}",
                item.offset.render(),
                poly.render()
            ));
        }
        if !k.is_zero() {
            let hl = match hl_cache.get(&item.weight.p) {
                Some(hl) => hl.clone(),
                None => {
                    let base = DominantWeight::new(lambda.level, item.weight.p)?;
                    let hl = hl_pi_route(&base, box_size)?;
                    hl_cache.insert(item.weight.p, hl.clone());
                    hl
                }
            };
            residual = residual.sub(&hl.shift(&item.offset).scale(&k));
        }
        entries.push(KostkaEntry {
            offset: item.offset,
            weight: item.weight,
            in_max: item.in_max,
            poly: k,
        });
    }
    Ok(KostkaTable {
        lambda: *lambda,
        depth,
        entries,
        warnings,
    })
}
