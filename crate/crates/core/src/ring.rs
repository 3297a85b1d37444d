//! Exact scalar arithmetic: integer-coefficient polynomials in the
//! deformation parameter `t`, and canonical rational functions built from
//! them. These are the coefficients of every series in the crate.
//!
//! Invariants:
//! - `IntPoly` stores dense coefficients with a nonzero leading entry
//!   (the empty vector is the zero polynomial).
//! - `RationalFunction` is always in canonical form: gcd(num, den) = 1 and
//!   the denominator has a positive leading coefficient. Equality of values
//!   is therefore structural equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    /// coeffs[k] is the coefficient of t^k; the last entry is nonzero.
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// c * t^k
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The variable t itself.
    pub fn var() -> Self {
        IntPoly::monomial(1, BigInt::one())
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms as (exponent, coefficient), exponents strictly increasing.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// gcd of all coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division; None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        let lead = d.leading().unwrap();
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder of self by d (lead(d)^(deg difference + 1) * self mod d).
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            rem = rem.mul_scalar(&lead);
            let shifted = d.shift_up(rd - dd).mul_scalar(&top);
            rem = rem.sub(&shifted);
            debug_assert!(rem.degree().is_none_or(|r| r < rd));
        }
        rem
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact(&IntPoly::constant(c)).unwrap()
    }

    /// Polynomial gcd over the integers, normalized to positive leading
    /// coefficient, content included. Primitive PRS; monomial fast path.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive().mul_scalar(&b.content());
        }
        if b.is_zero() {
            return a.primitive().mul_scalar(&a.content());
        }
        let content = a.content().gcd(&b.content());
        // t^k fast path: common factor is t^min(valuations).
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        if a.terms().count() == 1 || b.terms().count() == 1 {
            return IntPoly::monomial(va.min(vb), content);
        }
        let v = va.min(vb);
        let mut p = a
            .primitive()
            .div_exact(&IntPoly::monomial(va, BigInt::one()))
            .unwrap();
        let mut q = b
            .primitive()
            .div_exact(&IntPoly::monomial(vb, BigInt::one()))
            .unwrap();
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let r = p.pseudo_rem(&q).primitive();
            p = q;
            q = r;
        }
        p.primitive().mul_scalar(&content).shift_up(v)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Renders terms in decreasing exponent, e.g. `2*t^3 - t + 1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => out.push_str(&mag.to_string()),
                (1, true) => out.push('t'),
                (1, false) => out.push_str(&format!("{}*t", mag)),
                (_, true) => out.push_str(&format!("t^{}", k)),
                (_, false) => out.push_str(&format!("{}*t^{}", mag, k)),
            }
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Canonical ratio of two integer polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Reduce num/den to canonical form. Errors when den = 0.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            });
        }
        let g = IntPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RationalFunction::new(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
        .expect("rational denominator is nonzero")
    }

    /// t itself.
    pub fn t() -> Self {
        RationalFunction::from_poly(IntPoly::var())
    }

    /// t^k for any integer k; negative k is represented as 1/t^|k|.
    pub fn t_pow(k: i64) -> Self {
        if k >= 0 {
            RationalFunction::from_poly(IntPoly::monomial(k as usize, BigInt::one()))
        } else {
            RationalFunction {
                num: IntPoly::one(),
                den: IntPoly::monomial((-k) as usize, BigInt::one()),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Some(&num) when the denominator is 1.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction::from_poly(self.num.add(&other.num));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalFunction::new(num, den).expect("nonzero denominator product")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction::from_poly(self.num.mul(&other.num));
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = IntPoly::gcd(&self.num, &other.den);
        let g2 = IntPoly::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RationalFunction::new(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator product")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = RationalFunction::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Exact substitution t = x; errors when the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    /// t-adic valuation: val(num) - val(den); None for the zero function.
    pub fn t_valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("denominator nonzero") as i64;
        Some(vn - vd)
    }

    /// Canonical text rendering: `num` or `(num)/(den)`, terms in
    /// decreasing exponent. Used verbatim in JSON/CSV output.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// rf_reduce from the module contract: canonicalize num/den.
pub fn rf_reduce(num: IntPoly, den: IntPoly) -> Result<RationalFunction> {
    RationalFunction::new(num, den)
}

/// rf_eval from the module contract: exact substitution.
pub fn rf_eval(f: &RationalFunction, x: &BigRational) -> Result<BigRational> {
    f.eval(x)
}
