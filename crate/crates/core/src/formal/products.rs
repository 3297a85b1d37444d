//! The distinguished elements of the working ring: the deformed Weyl
//! denominator, its real-root part (the Cherednik kernel), its imaginary
//! part, and the theta-type orbit sums.

use crate::affine::{orbit_offsets, DominantWeight, RootVector};
use crate::error::Result;
use crate::qseries::{poch_inf, QSeries, Var};
use crate::ring::RationalFunction;

use super::ConeSeries;

/// Positive real roots with a support point inside the box:
/// alpha_0 + k delta = (k+1, k) and alpha_1 + k delta = (k, k+1).
fn real_roots(box_size: i64) -> Vec<RootVector> {
    let mut roots = Vec::new();
    for k in 0..box_size {
        roots.push(RootVector::new(k + 1, k));
        roots.push(RootVector::new(k, k + 1));
    }
    roots
}

/// Positive imaginary roots inside the box: k delta = (k, k), k >= 1.
fn imaginary_roots(box_size: i64) -> Vec<RootVector> {
    (1..=box_size).map(|k| RootVector::new(k, k)).collect()
}

/// prod over the given roots of (1 - e^{-a}) / (1 - t e^{-a}).
fn root_product(roots: &[RootVector], box_size: i64) -> ConeSeries {
    let t = RationalFunction::t();
    let one = RationalFunction::one();
    let mut acc = ConeSeries::one(box_size);
    for a in roots {
        acc = acc.mul_binomial(a, &one).div_binomial(a, &t);
    }
    acc
}

/// prod of the reciprocal (1 - t e^{-a}) / (1 - e^{-a}).
fn root_product_inv(roots: &[RootVector], box_size: i64) -> ConeSeries {
    let t = RationalFunction::t();
    let one = RationalFunction::one();
    let mut acc = ConeSeries::one(box_size);
    for a in roots {
        acc = acc.mul_binomial(a, &t).div_binomial(a, &one);
    }
    acc
}

/// The deformed denominator over all positive roots (multiplicities 1).
pub fn delta_tilde(box_size: i64) -> ConeSeries {
    let mut roots = real_roots(box_size);
    roots.extend(imaginary_roots(box_size));
    root_product(&roots, box_size)
}

/// Its exact reciprocal, built factorwise (cheaper than a general inverse).
pub fn delta_tilde_inv(box_size: i64) -> ConeSeries {
    let mut roots = real_roots(box_size);
    roots.extend(imaginary_roots(box_size));
    root_product_inv(&roots, box_size)
}

/// The real-root part: the Cherednik kernel.
pub fn mu_kernel(box_size: i64) -> ConeSeries {
    root_product(&real_roots(box_size), box_size)
}

/// The imaginary part as a one-variable series: (q; q)_inf / (t q; q)_inf.
pub fn delta_tilde_im(dorder: i64) -> Result<QSeries> {
    let num = poch_inf(Var::Q, &RationalFunction::one(), 2, 2, dorder)?;
    let den = poch_inf(Var::Q, &RationalFunction::t(), 2, 2, dorder)?;
    num.mul(&den.inv()?)
}

/// Orbit sum e^{-lambda} m_lambda restricted to the box: one term per
/// distinct orbit point, all coefficients 1.
pub fn orbit_sum(lambda: &DominantWeight, box_size: i64) -> ConeSeries {
    let mut s = ConeSeries::zero(box_size);
    for off in orbit_offsets(lambda, box_size) {
        s.set(off.m, off.n, RationalFunction::one());
    }
    s
}

/// The theta-type lattice sums used by the identity catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    /// Root-lattice theta: sum_j x0^(j^2) x1^(j^2 - j).
    Theta1,
    /// Theta1 with doubled exponents: sum_j x0^(2j^2) x1^(2j^2-2j).
    Theta2,
    /// Theta2 with the two directions swapped.
    Theta2Hat,
    /// Ramanujan theta: sum_j x0^(j(j+1)/2) x1^(j(j-1)/2).
    ThetaR,
    /// Orbit sum of the level-4 weight with p = 3.
    Theta4,
}

pub fn theta(kind: ThetaKind, box_size: i64) -> ConeSeries {
    match kind {
        ThetaKind::Theta1 => lattice_sum(box_size, |j| (j * j, j * j - j)),
        ThetaKind::Theta2 => lattice_sum(box_size, |j| (2 * j * j, 2 * j * j - 2 * j)),
        ThetaKind::Theta2Hat => theta(ThetaKind::Theta2, box_size).hat(),
        ThetaKind::ThetaR => lattice_sum(box_size, |j| (j * (j + 1) / 2, j * (j - 1) / 2)),
        ThetaKind::Theta4 => {
            let lam = DominantWeight::new(4, 3).expect("3L0+L1 is dominant");
            orbit_sum(&lam, box_size)
        }
    }
}

fn lattice_sum(box_size: i64, point: impl Fn(i64) -> (i64, i64)) -> ConeSeries {
    let mut s = ConeSeries::zero(box_size);
    // exponents grow quadratically; 2*box+3 safely covers the support
    let jmax = 2 * box_size + 3;
    for j in -jmax..=jmax {
        let (m, n) = point(j);
        debug_assert!(m >= 0 && n >= 0);
        if m <= box_size && n <= box_size {
            s.set(m, n, RationalFunction::one());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    #[test]
    fn kernel_factorization() {
        // delta_tilde = mu_kernel * delta_tilde_im on box 8
        let box_size = 8;
        let dt = delta_tilde(box_size);
        let mu = mu_kernel(box_size);
        let im = delta_tilde_im(2 * box_size).unwrap();
        // embed the imaginary part along the diagonal
        let mut im_cone = ConeSeries::zero(box_size);
        for k in 0..=box_size {
            im_cone.set(k, k, im.coeff(2 * k));
        }
        let prod = mu.mul(&im_cone);
        assert_eq!(dt.first_mismatch(&prod, box_size).unwrap(), None);
    }

    #[test]
    fn delta_tilde_inverse_is_exact() {
        let dt = delta_tilde(6);
        let dti = delta_tilde_inv(6);
        let prod = dt.mul(&dti);
        assert_eq!(prod.first_mismatch(&ConeSeries::one(6), 6).unwrap(), None);
    }

    #[test]
    fn delta_tilde_specializations() {
        // at t = 1 every factor collapses to 1
        let dt = delta_tilde(6);
        let at_one = dt.eval_t(&BigRational::one()).unwrap();
        assert_eq!(at_one.first_mismatch(&ConeSeries::one(6), 6).unwrap(), None);
        // at t = 0 it is the plain product of (1 - e^{-a})
        let at_zero = dt.eval_t(&BigRational::zero()).unwrap();
        let one = RationalFunction::one();
        let mut plain = ConeSeries::one(6);
        let mut roots = real_roots(6);
        roots.extend(imaginary_roots(6));
        for a in &roots {
            plain = plain.mul_binomial(a, &one);
        }
        assert_eq!(at_zero.first_mismatch(&plain, 6).unwrap(), None);
    }

    #[test]
    fn delta_tilde_is_hat_invariant() {
        let dt = delta_tilde(7);
        assert_eq!(dt.hat().first_mismatch(&dt, 7).unwrap(), None);
    }

    #[test]
    fn principal_specialization_of_delta_tilde() {
        // F(delta_tilde) = (v, v, v^2; v^2) / (tv, tv, tv^2; v^2) to v^8
        let lhs = delta_tilde(8).principal_spec();
        let one = RationalFunction::one();
        let t = RationalFunction::t();
        let num = poch_inf(Var::V, &one, 2, 4, 16)
            .unwrap()
            .mul(&poch_inf(Var::V, &one, 2, 4, 16).unwrap())
            .unwrap()
            .mul(&poch_inf(Var::V, &one, 4, 4, 16).unwrap())
            .unwrap();
        let den = poch_inf(Var::V, &t, 2, 4, 16)
            .unwrap()
            .mul(&poch_inf(Var::V, &t, 2, 4, 16).unwrap())
            .unwrap()
            .mul(&poch_inf(Var::V, &t, 4, 4, 16).unwrap())
            .unwrap();
        let rhs = num.mul(&den.inv().unwrap()).unwrap();
        assert_eq!(lhs.first_mismatch(&rhs, 16).unwrap(), None);
    }

    #[test]
    fn theta_doubling_identity() {
        // Theta2(x0, x1) = Theta1(x0^2, x1^2) on box 12: every support point
        // of Theta2 is a doubled Theta1 point and vice versa.
        let t2 = theta(ThetaKind::Theta2, 12);
        let mut doubled = ConeSeries::zero(12);
        let jmax = 12;
        for j in -jmax..=jmax {
            let (m, n) = (j * j, j * j - j);
            if 2 * m <= 12 && 2 * n <= 12 {
                doubled.set(2 * m, 2 * n, RationalFunction::one());
            }
        }
        assert_eq!(t2.first_mismatch(&doubled, 12).unwrap(), None);
    }

    #[test]
    fn ramanujan_theta_alternate_form() {
        // Theta_R = sum_j q^(C(j,2)) (e^{-alpha_1})^j on box 10
        let tr = theta(ThetaKind::ThetaR, 10);
        let mut alt = ConeSeries::zero(10);
        for j in -10..=10i64 {
            let c2 = j * (j - 1) / 2;
            let (m, n) = (c2, c2 + j);
            if m >= 0 && n >= 0 && m <= 10 && n <= 10 {
                alt.set(m, n, RationalFunction::one());
            }
        }
        assert_eq!(tr.first_mismatch(&alt, 10).unwrap(), None);
    }

    #[test]
    fn theta_constant_terms() {
        // the j = 0 lattice point contributes the constant 1
        for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::ThetaR] {
            let th = theta(kind, 6);
            assert!(th.get(0, 0).is_one());
        }
    }

    #[test]
    fn orbit_sum_hat_symmetry() {
        // self-symmetric when p = l - p, the hat image of the p <-> l - p
        // partner otherwise
        let sym = orbit_sum(&DominantWeight::new(2, 1).unwrap(), 10);
        assert_eq!(sym.hat().first_mismatch(&sym, 10).unwrap(), None);
        for (l, p) in [(1i64, 0i64), (2, 0), (3, 1), (4, 3)] {
            let a = orbit_sum(&DominantWeight::new(l, p).unwrap(), 10);
            let b = orbit_sum(&DominantWeight::new(l, l - p).unwrap(), 10);
            assert_eq!(
                a.hat().first_mismatch(&b, 10).unwrap(),
                None,
                "l={} p={}",
                l,
                p
            );
        }
    }

    #[test]
    fn orbit_sum_matches_thetas() {
        // e^{-lambda} m_lambda for the level-2 interior weight is Theta_R
        let lam = DominantWeight::new(2, 1).unwrap();
        let m = orbit_sum(&lam, 10);
        let tr = theta(ThetaKind::ThetaR, 10);
        assert_eq!(m.first_mismatch(&tr, 10).unwrap(), None);
        // and for p = 2 it is Theta2
        let lam2 = DominantWeight::new(2, 2).unwrap();
        let m2 = orbit_sum(&lam2, 12);
        let t2 = theta(ThetaKind::Theta2, 12);
        assert_eq!(m2.first_mismatch(&t2, 12).unwrap(), None);
        // the zero weight has a one-point orbit
        let z = orbit_sum(&DominantWeight::zero(), 5);
        assert_eq!(z.first_mismatch(&ConeSeries::one(5), 5).unwrap(), None);
    }
}
