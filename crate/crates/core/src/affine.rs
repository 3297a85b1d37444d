//! The rank-one affine root system: weights, roots, the infinite dihedral
//! Weyl group, inversion sets, orbits, dominance and stabilizer Poincare
//! series.
//!
//! Weights never carry absolute coordinates. A dominant weight is stored as
//! `(level, p, dshift)` where `p = (lambda, alpha_0)`; every pairing the
//! rest of the crate needs is derived from these two integers and the
//! Cartan matrix `[[2,-2],[-2,2]]`. Root-lattice elements are integer
//! pairs `(m, n)` meaning `m*alpha_0 + n*alpha_1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ring::RationalFunction;

/// Element of the root lattice: m*alpha_0 + n*alpha_1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    pub m: i64,
    pub n: i64,
}

impl RootVector {
    pub fn new(m: i64, n: i64) -> Self {
        RootVector { m, n }
    }

    pub fn zero() -> Self {
        RootVector { m: 0, n: 0 }
    }

    /// The null root delta = alpha_0 + alpha_1.
    pub fn delta() -> Self {
        RootVector { m: 1, n: 1 }
    }

    pub fn ht(&self) -> i64 {
        self.m + self.n
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector::new(self.m + other.m, self.n + other.n)
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector::new(self.m * k, self.n * k)
    }

    /// Bilinear form on the root lattice:
    /// (a0,a0) = (a1,a1) = 2, (a0,a1) = -2.
    pub fn pair_root(&self, other: &Self) -> i64 {
        2 * self.m * other.m + 2 * self.n * other.n - 2 * self.m * other.n - 2 * self.n * other.m
    }

    /// Swap alpha_0 <-> alpha_1.
    pub fn hat(&self) -> Self {
        RootVector::new(self.n, self.m)
    }

    pub fn render(&self) -> String {
        format!("({},{})", self.m, self.n)
    }
}

/// Dominant integral weight, encoded by level, p = (lambda, alpha_0) and a
/// delta-shift below a chosen base weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight {
    pub level: i64,
    pub p: i64,
    pub dshift: i64,
}

impl DominantWeight {
    pub fn new(level: i64, p: i64) -> Result<Self> {
        if p < 0 || p > level {
            return Err(Error::NotDominant { level, p });
        }
        Ok(DominantWeight {
            level,
            p,
            dshift: 0,
        })
    }

    pub fn with_dshift(level: i64, p: i64, dshift: i64) -> Result<Self> {
        let mut w = DominantWeight::new(level, p)?;
        w.dshift = dshift;
        Ok(w)
    }

    /// The zero weight (base tag of cone series supported on -Q+).
    pub fn zero() -> Self {
        DominantWeight {
            level: 0,
            p: 0,
            dshift: 0,
        }
    }

    /// (lambda, alpha_0)
    pub fn pair_a0(&self) -> i64 {
        self.p
    }

    /// (lambda, alpha_1)
    pub fn pair_a1(&self) -> i64 {
        self.level - self.p
    }

    /// (lambda, m*alpha_0 + n*alpha_1) = m*p + n*(level-p).
    pub fn pair(&self, beta: &RootVector) -> i64 {
        beta.m * self.pair_a0() + beta.n * self.pair_a1()
    }

    /// Tag addition used when multiplying based series.
    pub fn tag_add(&self, other: &Self) -> Self {
        DominantWeight {
            level: self.level + other.level,
            p: self.p + other.p,
            dshift: self.dshift + other.dshift,
        }
    }

    /// Swap alpha_0 <-> alpha_1 (p <-> level - p).
    pub fn hat(&self) -> Self {
        DominantWeight {
            level: self.level,
            p: self.level - self.p,
            dshift: self.dshift,
        }
    }

    pub fn is_zero_tag(&self) -> bool {
        self.level == 0 && self.p == 0
    }

    pub fn render(&self) -> String {
        format!(
            "lΛ-composite (l={}, p={}, dshift={})",
            self.level, self.p, self.dshift
        )
    }
}

/// Weyl group element w_j of the infinite dihedral group; length |j|.
/// Positive j starts with the reflection r_0, negative with r_1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub j: i64,
}

impl WeylElement {
    pub fn new(j: i64) -> Self {
        WeylElement { j }
    }

    pub fn length(&self) -> i64 {
        self.j.abs()
    }

    /// Reduced word, leftmost letter first. Letters are 0 or 1.
    pub fn word(&self) -> Vec<u8> {
        let len = self.j.unsigned_abs() as usize;
        let first = if self.j >= 0 { 0u8 } else { 1u8 };
        (0..len).map(|i| (first + (i as u8 % 2)) % 2).collect()
    }

    pub fn inverse(&self) -> Self {
        // w_j^{-1} = w_j for odd j, w_{-j} for even j.
        if self.j.rem_euclid(2) == 1 {
            *self
        } else {
            WeylElement::new(-self.j)
        }
    }

    /// Compose two elements by concatenating and reducing words.
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word();
        word.extend(other.word());
        // cancel adjacent equal letters until reduced
        loop {
            let mut reduced = Vec::with_capacity(word.len());
            let mut changed = false;
            let mut i = 0;
            while i < word.len() {
                if i + 1 < word.len() && word[i] == word[i + 1] {
                    i += 2;
                    changed = true;
                } else {
                    reduced.push(word[i]);
                    i += 1;
                }
            }
            word = reduced;
            if !changed {
                break;
            }
        }
        if word.is_empty() {
            WeylElement::new(0)
        } else if word[0] == 0 {
            WeylElement::new(word.len() as i64)
        } else {
            WeylElement::new(-(word.len() as i64))
        }
    }
}

/// Inversion set S(w_j): the positive roots sent negative by w_j^{-1}.
/// `{alpha_0 + k*delta : 0 <= k < j}` for j > 0, the alpha_1 mirror for
/// j < 0, empty for j = 0.
pub fn weyl_s(j: i64) -> Vec<RootVector> {
    if j > 0 {
        (0..j).map(|k| RootVector::new(k + 1, k)).collect()
    } else {
        (0..-j).map(|k| RootVector::new(k, k + 1)).collect()
    }
}

/// lambda - w_j(lambda) as a root vector, computed by applying the reduced
/// word of w_j through the reflections r_i: mu -> mu - (mu, alpha_i) alpha_i.
pub fn weyl_act(j: i64, lambda: &DominantWeight) -> RootVector {
    // track mu = lambda - offset through pairings with alpha_0, alpha_1
    let mut offset = RootVector::zero();
    let mut pa0 = lambda.pair_a0();
    let mut pa1 = lambda.pair_a1();
    for &letter in WeylElement::new(j).word().iter().rev() {
        if letter == 0 {
            offset = offset.add(&RootVector::new(pa0, 0));
            // r_0: (mu,a0) -> -(mu,a0); (mu,a1) -> (mu,a1) + 2(mu,a0)
            let new_pa1 = pa1 + 2 * pa0;
            pa0 = -pa0;
            pa1 = new_pa1;
        } else {
            offset = offset.add(&RootVector::new(0, pa1));
            let new_pa0 = pa0 + 2 * pa1;
            pa1 = -pa1;
            pa0 = new_pa0;
        }
    }
    offset
}

/// Poincare series of the stabilizer of lambda inside the Weyl group:
/// 1 when the stabilizer is trivial, 1+t when lambda lies on one wall,
/// (1+t)/(1-t) for the zero-level fixed point (the whole group).
pub fn stabilizer_poincare(lambda: &DominantWeight) -> RationalFunction {
    let p = lambda.pair_a0();
    let q = lambda.pair_a1();
    if p != 0 && q != 0 {
        RationalFunction::one()
    } else if p == 0 && q == 0 {
        // full infinite dihedral group: 1 + 2t + 2t^2 + ... = (1+t)/(1-t)
        let one_plus = RationalFunction::one().add(&RationalFunction::t());
        let one_minus = RationalFunction::one().sub(&RationalFunction::t());
        one_plus.div(&one_minus).expect("1 - t is nonzero")
    } else {
        RationalFunction::one().add(&RationalFunction::t())
    }
}

/// Number of elements of the stabilizer, None when infinite (level 0).
pub fn stabilizer_order(lambda: &DominantWeight) -> Option<i64> {
    let p = lambda.pair_a0();
    let q = lambda.pair_a1();
    if p != 0 && q != 0 {
        Some(1)
    } else if p == 0 && q == 0 {
        None
    } else {
        Some(2)
    }
}

/// Distinct orbit offsets `lambda - w(lambda)` with both coordinates inside
/// the box, in lexicographic order.
pub fn orbit_offsets(lambda: &DominantWeight, box_size: i64) -> Vec<RootVector> {
    assert!(box_size >= 0);
    let mut seen = BTreeSet::new();
    if lambda.level == 0 {
        // the zero-level dominant weight is fixed by the whole group
        seen.insert(RootVector::zero());
        return seen.into_iter().collect();
    }
    for sign in [1i64, -1] {
        let mut j = if sign == 1 { 0 } else { -1 };
        let mut outside = 0;
        loop {
            let off = weyl_act(j, lambda);
            if off.m <= box_size && off.n <= box_size {
                seen.insert(off);
                outside = 0;
            } else {
                // offsets grow quadratically in j once past the stabilizer;
                // two consecutive misses mean the rest of this side is out
                outside += 1;
                if outside >= 2 {
                    break;
                }
            }
            debug_assert!(off.m >= 0 && off.n >= 0);
            j += sign;
        }
    }
    seen.into_iter().collect()
}

/// Dominant weights mu <= lambda with ht(lambda - mu) <= depth, each with
/// its Max(lambda) flag (mu + delta not <= lambda). Entries are returned as
/// offsets (m, n) with the derived weight, ordered by (ht, m).
pub struct DominantBelow {
    pub offset: RootVector,
    pub weight: DominantWeight,
    pub in_max: bool,
}

pub fn dominant_below(lambda: &DominantWeight, depth: i64) -> Vec<DominantBelow> {
    assert!(depth >= 0);
    let mut out = Vec::new();
    for h in 0..=depth {
        for m in 0..=h {
            let n = h - m;
            // (mu, alpha_0) = p - 2m + 2n, (mu, alpha_1) = (l-p) + 2m - 2n
            let pa0 = lambda.pair_a0() - 2 * m + 2 * n;
            let pa1 = lambda.pair_a1() + 2 * m - 2 * n;
            if pa0 < 0 || pa1 < 0 {
                continue;
            }
            let offset = RootVector::new(m, n);
            let weight = DominantWeight {
                level: lambda.level,
                p: pa0,
                dshift: lambda.dshift + m.min(n),
            };
            // mu + delta <= lambda fails exactly when the offset leaves Q+
            // after removing one delta, i.e. m = 0 or n = 0.
            let in_max = m == 0 || n == 0;
            out.push(DominantBelow {
                offset,
                weight,
                in_max,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(level: i64, p: i64) -> DominantWeight {
        DominantWeight::new(level, p).unwrap()
    }

    #[test]
    fn inversion_sets_match_the_dihedral_pattern() {
        assert!(weyl_s(0).is_empty());
        assert_eq!(
            weyl_s(2),
            vec![RootVector::new(1, 0), RootVector::new(2, 1)]
        );
        assert_eq!(weyl_s(-1), vec![RootVector::new(0, 1)]);
        for j in -5..=5i64 {
            assert_eq!(weyl_s(j).len() as i64, j.abs());
        }
    }

    #[test]
    fn rho_offsets_follow_the_closed_form() {
        // rho - w_j rho = j*alpha_0 + C(j,2)*delta for all j
        let rho = weight(2, 1);
        for j in -6..=6i64 {
            let off = weyl_act(j, &rho);
            let c2 = j * (j - 1) / 2;
            assert_eq!(off, RootVector::new(j + c2, c2), "j = {}", j);
        }
    }

    #[test]
    fn sum_of_inversion_set_is_the_rho_offset() {
        let rho = weight(2, 1);
        for j in -6..=6i64 {
            let total = weyl_s(j)
                .iter()
                .fold(RootVector::zero(), |acc, g| acc.add(g));
            assert_eq!(total, weyl_act(j, &rho));
        }
    }

    #[test]
    fn identity_and_stabilizer_cases() {
        let lam = weight(3, 0);
        assert_eq!(weyl_act(0, &lam), RootVector::zero());
        // (lambda, alpha_0) = 0 so r_0 fixes lambda
        assert_eq!(weyl_act(1, &lam), RootVector::zero());
    }

    #[test]
    fn action_composes_like_the_group() {
        // acting by w_j then w_k agrees with the composed element, checked
        // through the offset of the composed action on several weights
        let weights = [weight(1, 1), weight(2, 1), weight(3, 2), weight(4, 1)];
        for lam in &weights {
            for j in -4..=4i64 {
                for k in -4..=4i64 {
                    let wj = WeylElement::new(j);
                    let wk = WeylElement::new(k);
                    let combined = wj.compose(&wk);
                    // offset of (w_j w_k) acting on lambda, built from the
                    // two-step action: lambda - w_j w_k lambda
                    let step = apply_word_offset(&[j, k], lam);
                    assert_eq!(step, weyl_act(combined.j, lam), "j={} k={}", j, k);
                }
            }
        }
    }

    /// lambda - w_{js[0]} w_{js[1]} ... lambda via repeated reflection words.
    fn apply_word_offset(js: &[i64], lambda: &DominantWeight) -> RootVector {
        let mut word = Vec::new();
        for &j in js {
            word.extend(WeylElement::new(j).word());
        }
        let mut offset = RootVector::zero();
        let mut pa0 = lambda.pair_a0();
        let mut pa1 = lambda.pair_a1();
        for &letter in word.iter().rev() {
            if letter == 0 {
                offset = offset.add(&RootVector::new(pa0, 0));
                let new_pa1 = pa1 + 2 * pa0;
                pa0 = -pa0;
                pa1 = new_pa1;
            } else {
                offset = offset.add(&RootVector::new(0, pa1));
                let new_pa0 = pa0 + 2 * pa1;
                pa1 = -pa1;
                pa0 = new_pa0;
            }
        }
        offset
    }

    #[test]
    fn offset_height_matches_the_pairing_formula() {
        // ht(lambda - w_j lambda) = (lambda, rho - w_j^{-1} rho)
        //                        = p*j' + l*C(j',2) with j' = j or -j
        for (l, p) in [(1, 0), (1, 1), (2, 1), (2, 2), (4, 3)] {
            let lam = weight(l, p);
            for j in -6..=6i64 {
                let off = weyl_act(j, &lam);
                let jp = WeylElement::new(j).inverse().j;
                let expect = p * jp + l * (jp * (jp - 1) / 2);
                assert_eq!(off.ht(), expect, "l={} p={} j={}", l, p, j);
            }
        }
    }

    #[test]
    fn stabilizer_poincare_cases() {
        // interior weight
        assert!(stabilizer_poincare(&weight(2, 1)).is_one());
        // one wall: {1, r_1}
        let w = stabilizer_poincare(&weight(2, 2));
        assert_eq!(w.render(), "t + 1");
        // zero weight: cross-check (1+t)/(1-t) against enumerating W up to
        // length 3 (element counts by length: 1, 2, 2, 2)
        let full = stabilizer_poincare(&weight(0, 0));
        let mut counts = [0i64; 4];
        for j in -3..=3i64 {
            counts[WeylElement::new(j).length() as usize] += 1;
        }
        assert_eq!(counts, [1, 2, 2, 2]);
        let mut partial = RationalFunction::zero();
        for (len, &c) in counts.iter().enumerate() {
            let term = RationalFunction::t_pow(len as i64).mul(&RationalFunction::from_int(c));
            partial = partial.add(&term);
        }
        // the tail of the full series starts at t^4
        assert_eq!(full.sub(&partial).t_valuation(), Some(4));
    }

    #[test]
    fn orbit_examples() {
        // orbit of the zero weight is a single point
        assert_eq!(orbit_offsets(&weight(0, 0), 10), vec![RootVector::zero()]);
        // level 2, p = 2: offsets are the support of the doubled theta sum
        let offs = orbit_offsets(&weight(2, 2), 12);
        for j in -2..=2i64 {
            let pt = RootVector::new(2 * j * j, 2 * j * j - 2 * j);
            if pt.m <= 12 && pt.n <= 12 {
                assert!(offs.contains(&pt), "missing {:?}", pt);
            }
        }
        // stabilizer duplicates are collapsed: count matches the j-range
        let expected: BTreeSet<_> = (-3..=3i64)
            .map(|j| RootVector::new(2 * j * j, 2 * j * j - 2 * j))
            .filter(|r| r.m <= 12 && r.n <= 12)
            .collect();
        assert_eq!(offs, expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn dominant_below_and_max_flags() {
        // Max(Lambda_0 + Lambda_1) = {lambda}
        let lam11 = weight(2, 1);
        let below = dominant_below(&lam11, 4);
        let max: Vec<_> = below
            .iter()
            .filter(|e| e.in_max)
            .map(|e| e.offset)
            .collect();
        assert_eq!(max, vec![RootVector::zero()]);
        // Max(2 Lambda_0) = {2L0, 2L0 - alpha_0}
        let lam20 = weight(2, 2);
        let max: Vec<_> = dominant_below(&lam20, 4)
            .iter()
            .filter(|e| e.in_max)
            .map(|e| e.offset)
            .collect();
        assert_eq!(max, vec![RootVector::zero(), RootVector::new(1, 0)]);
        // Max(3 Lambda_0 + Lambda_1) = {lambda, lambda - alpha_0}
        let lam31 = weight(4, 3);
        let max: Vec<_> = dominant_below(&lam31, 4)
            .iter()
            .filter(|e| e.in_max)
            .map(|e| e.offset)
            .collect();
        assert_eq!(max, vec![RootVector::zero(), RootVector::new(1, 0)]);
    }

    #[test]
    fn dominant_below_entries_are_dominant() {
        let lam = weight(4, 3);
        for entry in dominant_below(&lam, 8) {
            assert!(entry.weight.p >= 0 && entry.weight.p <= lam.level);
            assert!(entry.offset.m >= 0 && entry.offset.n >= 0);
            // Max flag literal conditions: mu <= lambda and mu + delta !<= lambda
            let plus_delta_inside = entry.offset.m >= 1 && entry.offset.n >= 1;
            assert_eq!(entry.in_max, !plus_delta_inside);
        }
    }
}
