//! Freudenthal's recursion for weight multiplicities, used as the
//! independent brute-force oracle against Kostka-Foulkes values at t = 1.
//!
//! All pairings are derived from (level, p) and the Cartan matrix; the
//! difference |lambda+rho|^2 - |mu+rho|^2 is computed as
//! 2(lambda+rho, beta) - (beta, beta) for beta = lambda - mu, so no
//! absolute normalization of the form is ever needed.

use std::collections::BTreeMap;

use crate::affine::{DominantWeight, RootVector};
use crate::error::{Error, Result};

/// Memoized multiplicity table for one highest weight.
pub struct FreudenthalTable {
    level: i64,
    p: i64,
    memo: BTreeMap<(i64, i64), i64>,
}

impl FreudenthalTable {
    pub fn new(lambda: &DominantWeight) -> Self {
        let mut memo = BTreeMap::new();
        memo.insert((0, 0), 1);
        FreudenthalTable {
            level: lambda.level,
            p: lambda.p,
            memo,
        }
    }

    /// (lambda - gamma, alpha) for a root alpha = (a, b).
    fn pair_with_root(&self, gamma: &RootVector, alpha: &RootVector) -> i64 {
        let lam_part = alpha.m * self.p + alpha.n * (self.level - self.p);
        lam_part - gamma.pair_root(alpha)
    }

    /// Multiplicity of lambda - (m alpha_0 + n alpha_1) in L(lambda).
    pub fn mult(&mut self, m: i64, n: i64) -> Result<i64> {
        if m < 0 || n < 0 {
            return Ok(0);
        }
        if let Some(&v) = self.memo.get(&(m, n)) {
            return Ok(v);
        }
        let beta = RootVector::new(m, n);
        // 2(lambda + rho, beta) - (beta, beta); rho pairs to 1 with both
        // simple roots, so (rho, beta) = m + n.
        let denom = 2 * (m * (self.p + 1) + n * (self.level - self.p + 1)) - beta.pair_root(&beta);
        let mut rhs: i128 = 0;
        // positive real roots alpha with some k*alpha <= beta
        for (a, b) in real_roots_below(m, n) {
            let alpha = RootVector::new(a, b);
            let kmax =
                if a > 0 { m / a } else { i64::MAX }.min(if b > 0 { n / b } else { i64::MAX });
            for k in 1..=kmax {
                let gamma = RootVector::new(m - k * a, n - k * b);
                let mu_mult = self.mult(gamma.m, gamma.n)?;
                if mu_mult == 0 {
                    continue;
                }
                let pairing = self.pair_with_root(&gamma, &alpha);
                rhs += 2 * (mu_mult as i128) * (pairing as i128);
            }
        }
        // imaginary roots k*delta, each of multiplicity one; the pairing of
        // any level-l weight with k*delta is k*l
        if self.level > 0 {
            for k in 1..=m.min(n) {
                for j in 1.. {
                    let (gm, gn) = (m - j * k, n - j * k);
                    if gm < 0 || gn < 0 {
                        break;
                    }
                    let mu_mult = self.mult(gm, gn)?;
                    if mu_mult != 0 {
                        rhs += 2 * (mu_mult as i128) * (k as i128) * (self.level as i128);
                    }
                }
            }
        }
        let value = if denom == 0 {
            if rhs != 0 {
                return Err(Error::FreudenthalDegeneracy(m, n));
            }
            0
        } else {
            let q = rhs / (denom as i128);
            assert!(
                q * (denom as i128) == rhs && q >= 0,
                "Freudenthal recursion produced a non-integral or negative multiplicity at ({m},{n})"
            );
            q as i64
        };
        self.memo.insert((m, n), value);
        Ok(value)
    }
}

/// Real positive roots (a, b) with a <= m and b <= n:
/// alpha_0 + k delta = (k+1, k) and alpha_1 + k delta = (k, k+1).
fn real_roots_below(m: i64, n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for k in 0.. {
        if k + 1 > m || k > n {
            break;
        }
        out.push((k + 1, k));
    }
    for k in 0.. {
        if k > m || k + 1 > n {
            break;
        }
        out.push((k, k + 1));
    }
    out
}

/// One-shot multiplicity query.
pub fn freudenthal_mult(lambda: &DominantWeight, offset: &RootVector) -> Result<u64> {
    let mut table = FreudenthalTable::new(lambda);
    Ok(table.mult(offset.m, offset.n)? as u64)
}
