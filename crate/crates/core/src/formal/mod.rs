//! The working ring: truncated series supported on a shifted cone
//! `lambda - Q+`, realized as a dense grid of rational-function
//! coefficients indexed by `(m, n)` = coefficients of
//! `e^(lambda - m*alpha_0 - n*alpha_1)`.
//!
//! Truncation is by box, not total degree: coefficients are exact for all
//! `m, n <= known`. Because supports are cones, products of box-exact
//! series are box-exact, and both extraction maps (the constant term along
//! the diagonal and the principal specialization along anti-diagonals)
//! read exact data.

mod products;

pub use products::{
    delta_tilde, delta_tilde_im, delta_tilde_inv, mu_kernel, orbit_sum, theta, ThetaKind,
};

use num_rational::BigRational;

use crate::affine::{DominantWeight, RootVector};
use crate::error::{Error, Result};
use crate::qseries::{json_string, QSeries, Var};
use crate::ring::RationalFunction;

/// Truncated two-variable series supported on the nonnegative quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSeries {
    base: DominantWeight,
    size: usize,
    /// Coefficients are exact for m, n <= known.
    known: i64,
    grid: Vec<RationalFunction>,
}

impl ConeSeries {
    pub fn zero(box_size: i64) -> Self {
        assert!(box_size >= 0);
        let size = (box_size + 1) as usize;
        ConeSeries {
            base: DominantWeight::zero(),
            size,
            known: box_size,
            grid: vec![RationalFunction::zero(); size * size],
        }
    }

    pub fn one(box_size: i64) -> Self {
        let mut s = ConeSeries::zero(box_size);
        s.set(0, 0, RationalFunction::one());
        s
    }

    /// e^{-(m*alpha_0 + n*alpha_1)} scaled by `c`.
    pub fn monomial(offset: RootVector, c: RationalFunction, box_size: i64) -> Self {
        let mut s = ConeSeries::zero(box_size);
        if offset.m <= box_size && offset.n <= box_size {
            s.set(offset.m, offset.n, c);
        }
        s
    }

    pub fn base(&self) -> &DominantWeight {
        &self.base
    }

    pub fn with_base(mut self, base: DominantWeight) -> Self {
        self.base = base;
        self
    }

    pub fn known(&self) -> i64 {
        self.known
    }

    pub fn box_size(&self) -> i64 {
        self.size as i64 - 1
    }

    #[inline]
    fn idx(&self, m: i64, n: i64) -> usize {
        debug_assert!(m >= 0 && n >= 0);
        m as usize * self.size + n as usize
    }

    /// Coefficient at (m, n); zero outside the allocated quadrant. Panics
    /// when the cell lies beyond the known region.
    pub fn get(&self, m: i64, n: i64) -> RationalFunction {
        if m < 0 || n < 0 {
            return RationalFunction::zero();
        }
        assert!(
            m <= self.known && n <= self.known,
            "cell ({},{}) beyond known box {}",
            m,
            n,
            self.known
        );
        self.grid[self.idx(m, n)].clone()
    }

    fn get_ref(&self, m: i64, n: i64) -> Option<&RationalFunction> {
        if m < 0 || n < 0 || m >= self.size as i64 || n >= self.size as i64 {
            None
        } else {
            Some(&self.grid[m as usize * self.size + n as usize])
        }
    }

    pub fn set(&mut self, m: i64, n: i64, c: RationalFunction) {
        let i = self.idx(m, n);
        self.grid[i] = c;
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.size, other.size, "cone series box sizes differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        out.known = self.known.min(other.known);
        for (a, b) in out.grid.iter_mut().zip(other.grid.iter()) {
            if !b.is_zero() {
                *a = a.add(b);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.grid.iter_mut() {
            if !a.is_zero() {
                *a = a.neg();
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = self.clone();
        for a in out.grid.iter_mut() {
            if !a.is_zero() {
                *a = a.mul(c);
            }
        }
        out
    }

    /// Exact product on the common box; base tags add.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let known = self.known.min(other.known);
        let mut out = ConeSeries::zero(self.size as i64 - 1);
        out.known = known;
        out.base = self.base.tag_add(&other.base);
        // iterate nonzero entries of the sparser operand outermost
        let (lhs, rhs) = (self, other);
        for ma in 0..=known {
            for na in 0..=known {
                let ca = &lhs.grid[lhs.idx(ma, na)];
                if ca.is_zero() {
                    continue;
                }
                for mb in 0..=(known - ma) {
                    for nb in 0..=(known - na) {
                        let cb = &rhs.grid[rhs.idx(mb, nb)];
                        if cb.is_zero() {
                            continue;
                        }
                        let i = out.idx(ma + mb, na + nb);
                        out.grid[i] = out.grid[i].add(&ca.mul(cb));
                    }
                }
            }
        }
        out
    }

    /// Series inverse; requires a nonzero constant coefficient.
    pub fn inv(&self) -> Result<Self> {
        let c00 = &self.grid[0];
        if c00.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let c00_inv = c00.inv().expect("nonzero constant term");
        let mut out = ConeSeries::zero(self.size as i64 - 1);
        out.known = self.known;
        out.base = DominantWeight {
            level: -self.base.level,
            p: -self.base.p,
            dshift: -self.base.dshift,
        };
        out.set(0, 0, c00_inv.clone());
        for h in 1..=(2 * self.known) {
            for m in 0..=h.min(self.known) {
                let n = h - m;
                if n > self.known {
                    continue;
                }
                let mut acc = RationalFunction::zero();
                for i in 0..=m {
                    for j in 0..=n {
                        if i == 0 && j == 0 {
                            continue;
                        }
                        let a = &self.grid[self.idx(i, j)];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &out.grid[out.idx(m - i, n - j)];
                        if b.is_zero() {
                            continue;
                        }
                        acc = acc.add(&a.mul(b));
                    }
                }
                if !acc.is_zero() {
                    let i = out.idx(m, n);
                    out.grid[i] = acc.mul(&c00_inv).neg();
                }
            }
        }
        Ok(out)
    }

    /// Multiply by `(1 - c * e^{-gamma})` for a nonzero lattice vector.
    pub fn mul_binomial(&self, gamma: &RootVector, c: &RationalFunction) -> Self {
        debug_assert!(gamma.m >= 0 && gamma.n >= 0 && (gamma.m, gamma.n) != (0, 0));
        let mut out = self.clone();
        for m in (0..self.size as i64).rev() {
            for n in (0..self.size as i64).rev() {
                let below = self.get_ref(m - gamma.m, n - gamma.n);
                if let Some(b) = below {
                    if !b.is_zero() {
                        let i = out.idx(m, n);
                        out.grid[i] = out.grid[i].sub(&c.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Multiply by `1/(1 - c * e^{-gamma})`: forward recursion
    /// `out(m,n) = self(m,n) + c * out(m-gm, n-gn)`.
    pub fn div_binomial(&self, gamma: &RootVector, c: &RationalFunction) -> Self {
        debug_assert!(gamma.m >= 0 && gamma.n >= 0 && (gamma.m, gamma.n) != (0, 0));
        let mut out = self.clone();
        for m in 0..self.size as i64 {
            for n in 0..self.size as i64 {
                let prev = if m >= gamma.m && n >= gamma.n {
                    Some(
                        out.grid[((m - gamma.m) as usize) * self.size + (n - gamma.n) as usize]
                            .clone(),
                    )
                } else {
                    None
                };
                if let Some(p) = prev {
                    if !p.is_zero() {
                        let i = out.idx(m, n);
                        out.grid[i] = out.grid[i].add(&c.mul(&p));
                    }
                }
            }
        }
        out
    }

    /// Multiply by `(1 - c * e^{+gamma})`. This reads upward in the grid,
    /// so the known region shrinks by max(gamma.m, gamma.n).
    pub fn mul_binomial_up(&self, gamma: &RootVector, c: &RationalFunction) -> Self {
        debug_assert!(gamma.m >= 0 && gamma.n >= 0 && (gamma.m, gamma.n) != (0, 0));
        let mut out = self.clone();
        out.known = self.known - gamma.m.max(gamma.n);
        for m in 0..self.size as i64 {
            for n in 0..self.size as i64 {
                let above = self.get_ref(m + gamma.m, n + gamma.n);
                if let Some(a) = above {
                    if !a.is_zero() {
                        let i = out.idx(m, n);
                        out.grid[i] = out.grid[i].sub(&c.mul(a));
                    }
                }
            }
        }
        out
    }

    /// Shift the whole series by `e^{-(m0*alpha_0 + n0*alpha_1)}`.
    pub fn shift(&self, offset: &RootVector) -> Self {
        debug_assert!(offset.m >= 0 && offset.n >= 0);
        let mut out = ConeSeries::zero(self.size as i64 - 1);
        out.known = self.known;
        out.base = self.base;
        for m in 0..self.size as i64 - offset.m {
            for n in 0..self.size as i64 - offset.n {
                let c = &self.grid[self.idx(m, n)];
                if !c.is_zero() {
                    let i = out.idx(m + offset.m, n + offset.n);
                    out.grid[i] = c.clone();
                }
            }
        }
        out
    }

    /// Swap the two simple-root directions (transpose the grid).
    pub fn hat(&self) -> Self {
        let mut out = ConeSeries::zero(self.size as i64 - 1);
        out.known = self.known;
        out.base = self.base.hat();
        for m in 0..self.size {
            for n in 0..self.size {
                out.grid[n * self.size + m] = self.grid[m * self.size + n].clone();
            }
        }
        out
    }

    /// Exact substitution t = x in every coefficient.
    pub fn eval_t(&self, x: &BigRational) -> Result<Self> {
        let mut out = self.clone();
        for c in out.grid.iter_mut() {
            if !c.is_zero() {
                *c = RationalFunction::from_rational(&c.eval(x)?);
            }
        }
        Ok(out)
    }

    /// Read the shifted diagonal `(off_m + k, off_n + k)` as a q-series.
    pub fn diag_series(&self, off_m: i64, off_n: i64) -> QSeries {
        debug_assert!(off_m >= 0 && off_n >= 0);
        let kmax = self.known - off_m.max(off_n);
        let mut out = QSeries::zero(Var::Q, 2 * kmax);
        for k in 0..=kmax {
            let c = self.grid[self.idx(off_m + k, off_n + k)].clone();
            if !c.is_zero() {
                out.set_coeff(2 * k, c);
            }
        }
        out
    }

    /// Constant term: the diagonal, as a series in q = e^{-delta}.
    /// Requires the base tag to be delta-aligned.
    pub fn ct(&self) -> Result<QSeries> {
        if !self.base.is_zero_tag() {
            return Err(Error::BaseNotDeltaAligned(self.base.level, self.base.p));
        }
        Ok(self.diag_series(0, 0))
    }

    /// Principal specialization: coefficient of v^h is the sum of the
    /// anti-diagonal m + n = h.
    pub fn principal_spec(&self) -> QSeries {
        let mut out = QSeries::zero(Var::V, 2 * self.known);
        for h in 0..=self.known {
            let mut acc = RationalFunction::zero();
            for m in 0..=h {
                acc = acc.add(&self.grid[self.idx(m, h - m)]);
            }
            if !acc.is_zero() {
                out.set_coeff(2 * h, acc);
            }
        }
        out
    }

    /// First cell (ordered by height, then m) where the two series differ
    /// on the box, or None.
    pub fn first_mismatch(&self, other: &Self, box_size: i64) -> Result<Option<(i64, i64)>> {
        for s in [self, other] {
            if s.known < box_size {
                return Err(Error::InsufficientOrder {
                    have: 2 * s.known,
                    want: 2 * box_size,
                });
            }
        }
        for h in 0..=(2 * box_size) {
            for m in 0..=h.min(box_size) {
                let n = h - m;
                if n > box_size {
                    continue;
                }
                if self.grid[self.idx(m, n)] != other.grid[other.idx(m, n)] {
                    return Ok(Some((m, n)));
                }
            }
        }
        Ok(None)
    }

    /// Restrict to a smaller box (reallocates).
    pub fn restrict(&self, box_size: i64) -> Self {
        assert!(box_size <= self.known);
        let mut out = ConeSeries::zero(box_size);
        out.base = self.base;
        for m in 0..=box_size {
            for n in 0..=box_size {
                out.set(m, n, self.grid[self.idx(m, n)].clone());
            }
        }
        out
    }

    /// `{"base":{...},"box":N,"terms":[[m,n,"coeff"],...]}` sorted
    /// lexicographically by (m, n); keys alphabetical for canonical
    /// round-tripping.
    pub fn render_json(&self) -> String {
        let mut out = format!(
            "{{\"base\":{{\"dshift\":{},\"level\":{},\"p\":{}}},\"box\":{},\"terms\":[",
            self.base.dshift, self.base.level, self.base.p, self.known
        );
        let mut first = true;
        for m in 0..=self.known {
            for n in 0..=self.known {
                let c = &self.grid[self.idx(m, n)];
                if c.is_zero() {
                    continue;
                }
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&format!("[{},{},{}]", m, n, json_string(&c.render())));
            }
        }
        out.push_str("]}");
        out
    }
}
