//! Acceptance suite: every closed-form identity in the catalog checked at
//! its contract order, plus the oracle-equivalence and structural-property
//! gates. Each criterion prints exactly one pass/fail line.
//!
//! All comparisons are exact: integer/rational arithmetic with canonical
//! forms, no tolerances.

use std::time::{Duration, Instant};

use ahl_core::affine::{DominantWeight, RootVector};
use ahl_core::formal::{delta_tilde, ConeSeries};
use ahl_core::hall::{
    character, freudenthal_mult, hl_pi_route, hl_weyl_route, kostka_table, t_string,
    t_string_kostka_route, verify_identity, IdentityId,
};
use ahl_core::qseries::{poch_inf, poch_int, QSeries, Var};
use ahl_core::ring::RationalFunction;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn weight(level: i64, p: i64) -> DominantWeight {
    DominantWeight::new(level, p).unwrap()
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str, budget_secs: u64) -> Self {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn check_identity(&mut self, id: IdentityId, order: i64) {
        match verify_identity(id, order) {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => self.failures.push(format!(
                "{} order {} first mismatch {:?}",
                rep.id, order, rep.first_mismatch
            )),
            Err(e) => self.failures.push(format!("{}: {}", id.as_str(), e)),
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let status = if self.failures.is_empty() {
            "pass"
        } else {
            "fail"
        };
        println!(
            "ACCEPTANCE {:<44} {}  ({} ms)",
            self.name,
            status,
            elapsed.as_millis()
        );
        assert!(
            self.failures.is_empty(),
            "{} failed: {:?}",
            self.name,
            self.failures
        );
        assert!(
            elapsed <= self.budget,
            "{} exceeded its time budget: {:?} > {:?}",
            self.name,
            elapsed,
            self.budget
        );
    }
}

#[test]
fn criterion_01_cherednik_constant_terms_to_q20() {
    let mut c = Criterion::new("1: Cherednik constant terms to q^20", 60);
    c.check_identity(IdentityId::CherCt1, 20);
    c.check_identity(IdentityId::CherCt2, 20);
    c.finish();
}

#[test]
fn criterion_02_level2_interior_string_to_q20() {
    let mut c = Criterion::new("2: level-2 interior t-string to q^20", 60);
    c.check_identity(IdentityId::Thm2, 20);
    c.finish();
}

#[test]
fn criterion_03_level2_wall_strings_to_q15() {
    let mut c = Criterion::new("3: level-2 wall t-strings to q^15", 60);
    c.check_identity(IdentityId::Thm3P1, 15);
    c.check_identity(IdentityId::Thm3P2, 15);
    c.finish();
}

#[test]
fn criterion_04_level4_strings_and_corollaries_to_q15() {
    let mut c = Criterion::new("4: level-4 strings and corollaries to q^15", 60);
    c.check_identity(IdentityId::Thm4P1, 15);
    c.check_identity(IdentityId::Thm4P2, 15);
    c.check_identity(IdentityId::CorCtLev4P1, 15);
    c.check_identity(IdentityId::CorCtLev4P2, 15);
    c.finish();
}

#[test]
fn criterion_05_level2_corollaries() {
    let mut c = Criterion::new("5: level-2 corollaries (q^12, box 8)", 120);
    c.check_identity(IdentityId::CorThetaR, 12);
    c.check_identity(IdentityId::CorCtLev2P1, 12);
    c.check_identity(IdentityId::CorCtLev2P2, 12);
    c.check_identity(IdentityId::CorHlL1L1, 8);
    c.check_identity(IdentityId::CorHl2L0, 8);
    c.finish();
}

#[test]
fn criterion_06_level0_and_level1_strings_to_q20() {
    let mut c = Criterion::new("6: level-0/1 string functions to q^20", 30);
    c.check_identity(IdentityId::MacdL0, 20);
    c.check_identity(IdentityId::MmL1, 20);
    c.finish();
}

#[test]
fn criterion_07_principal_specializations() {
    let mut c = Criterion::new("7: principal specializations (v^30 / v^20)", 120);
    c.check_identity(IdentityId::PsEq9, 30);
    c.check_identity(IdentityId::PsEq10, 30);
    c.check_identity(IdentityId::PsEq11, 30);
    c.check_identity(IdentityId::PsEq12, 30);
    c.check_identity(IdentityId::PsEq13, 30);
    c.check_identity(IdentityId::PsEq14, 20);
    c.check_identity(IdentityId::PsEq15, 20);
    c.check_identity(IdentityId::Ps2Lops, 20);
    c.finish();
}

#[test]
fn criterion_08_bilateral_summations_to_v25() {
    let mut c = Criterion::new("8: bilateral summations to v^25", 120);
    c.check_identity(IdentityId::App1Psi1, 25);
    c.check_identity(IdentityId::App6Psi6, 25);
    c.finish();
}

#[test]
fn criterion_09_kostka_oracle_equivalence() {
    let mut c = Criterion::new("9: Kostka vs Freudenthal to depth 8", 120);
    for (l, p) in [(1, 1), (2, 1), (2, 2), (4, 3)] {
        let lam = weight(l, p);
        let table = kostka_table(&lam, 8, 8).unwrap();
        for entry in &table.entries {
            let label = format!("l={} p={} offset={}", l, p, entry.offset.render());
            // integer polynomial
            let poly = entry.poly.as_poly();
            c.check(
                &format!("{label}: not an integer polynomial"),
                poly.is_some(),
            );
            // K(0) = delta
            let at0 = entry.poly.eval(&BigRational::zero()).unwrap();
            let expect0 = if entry.offset == RootVector::zero() {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            c.check(&format!("{label}: K(0) != delta"), at0 == expect0);
            // K(1) = Freudenthal multiplicity
            let at1 = entry.poly.eval(&BigRational::one()).unwrap();
            let mult = freudenthal_mult(&lam, &entry.offset).unwrap();
            c.check(
                &format!("{label}: K(1) != mult ({at1} vs {mult})"),
                at1 == BigRational::from_integer(mult.into()),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_10_structural_property_suite() {
    let mut c = Criterion::new("10: structural property suite", 120);

    // route agreement on box 8, levels 1, 2, 4, all admissible p
    for l in [1i64, 2, 4] {
        for p in 0..=l {
            let lam = weight(l, p);
            let a = hl_pi_route(&lam, 8).unwrap();
            let b = hl_weyl_route(&lam, 8).unwrap();
            c.check(
                &format!("route agreement l={l} p={p}"),
                a.first_mismatch(&b, 8).unwrap().is_none(),
            );
        }
    }

    // ct / hat / principal-specialization homomorphism properties on
    // deterministic pseudo-random cone series
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        seed >> 33
    };
    for round in 0..5 {
        let mut a = ConeSeries::one(6);
        let mut b = ConeSeries::one(6);
        for _ in 0..8 {
            let m = (next() % 7) as i64;
            let n = (next() % 7) as i64;
            let coef = RationalFunction::t_pow((next() % 3) as i64)
                .mul(&RationalFunction::from_int((next() % 5) as i64 - 2));
            a.set(m, n, coef.clone());
            b.set((next() % 7) as i64, (next() % 7) as i64, coef);
        }
        let ab = a.mul(&b);
        c.check(
            &format!("hat involution round {round}"),
            a.hat().hat().first_mismatch(&a, 6).unwrap().is_none(),
        );
        c.check(
            &format!("hat is multiplicative round {round}"),
            ab.hat()
                .first_mismatch(&a.hat().mul(&b.hat()), 6)
                .unwrap()
                .is_none(),
        );
        c.check(
            &format!("ct is hat-invariant round {round}"),
            a.ct()
                .unwrap()
                .first_mismatch(&a.hat().ct().unwrap(), 12)
                .unwrap()
                .is_none(),
        );
        let f_ab = ab.principal_spec();
        let f_a_f_b = a.principal_spec().mul(&b.principal_spec()).unwrap();
        let order = f_ab.trunc().min(f_a_f_b.trunc());
        c.check(
            &format!("F is multiplicative round {round}"),
            f_ab.first_mismatch(&f_a_f_b, order).unwrap().is_none(),
        );
        // ct multiplicativity over delta-supported factors
        let mut g = ConeSeries::one(6);
        g.set(1, 1, RationalFunction::t());
        g.set(2, 2, RationalFunction::from_int(-3));
        let lhs = a.mul(&g).ct().unwrap();
        let rhs = a.ct().unwrap().mul(&g.ct().unwrap()).unwrap();
        let order = lhs.trunc().min(rhs.trunc());
        c.check(
            &format!("ct multiplicativity round {round}"),
            lhs.first_mismatch(&rhs, order).unwrap().is_none(),
        );
    }

    // Pochhammer splitting identities
    let t = RationalFunction::t();
    for j in 0..=4i64 {
        let full = poch_inf(Var::Q, &t, 2, 2, 16).unwrap();
        let head = poch_int(Var::Q, &t, 2, 2, j, 16).unwrap();
        let tail = poch_inf(Var::Q, &t, 2 + 2 * j, 2, 16).unwrap();
        let prod = head.mul(&tail).unwrap();
        c.check(
            &format!("poch splitting j={j}"),
            full.first_mismatch(&prod, 16).unwrap().is_none(),
        );
    }
    for j in -4..=4i64 {
        let head = poch_int(Var::Q, &t, 2, 2, j, 24).unwrap();
        let tail = poch_int(Var::Q, &t, 2 + 2 * j, 2, -j, 24).unwrap();
        let prod = head.mul(&tail).unwrap();
        let order = prod.trunc().min(12);
        let one = QSeries::one(Var::Q, order);
        c.check(
            &format!("poch inverse j={j}"),
            prod.first_mismatch(&one, order).unwrap().is_none(),
        );
    }

    // t-string ct-route vs Kostka generating-function route to q^8
    for (l, p) in [(1, 1), (2, 1), (2, 2), (4, 3)] {
        let lam = weight(l, p);
        let depth = 17;
        let table = kostka_table(&lam, depth, depth).unwrap();
        for entry in table.entries.iter().filter(|e| e.in_max) {
            let via_kostka = t_string_kostka_route(&table, &entry.offset);
            let via_ct = t_string(&lam, &entry.offset, depth).unwrap();
            let order = via_kostka.trunc().min(16);
            c.check(
                &format!(
                    "t-string routes l={l} p={p} offset={}",
                    entry.offset.render()
                ),
                via_ct.first_mismatch(&via_kostka, order).unwrap().is_none(),
            );
        }
    }

    // deformed denominator interpolates the character at t = 0 and the
    // orbit count at t = 1 (smoke check that ties the suite together)
    let dt = delta_tilde(5);
    c.check(
        "delta_tilde at t=1 is 1",
        dt.eval_t(&BigRational::one())
            .unwrap()
            .first_mismatch(&ConeSeries::one(5), 5)
            .unwrap()
            .is_none(),
    );
    c.check(
        "character at box 5 is integral",
        character(&weight(2, 1), 5)
            .unwrap()
            .get(2, 2)
            .as_poly()
            .is_some(),
    );

    c.finish();
}
