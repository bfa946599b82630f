mod common;

use common::*;
use dgauge::diffpoly::{indet, DiffIndet, DiffPoly, IndetClass};
use dgauge::gaugegen::generic_indet;
use dgauge::rational::qi;
use dgauge::sl3case::*;
use dgauge::Error;

fn poly(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

fn n(k: i64) -> DiffPoly {
    DiffPoly::int(k)
}

/// Sets every derivative of the given indeterminates to zero.
fn kill(p: &DiffPoly, us: &[DiffIndet]) -> DiffPoly {
    p.substitute(&mut |d| us.contains(&d.indet).then(DiffPoly::zero))
}

#[test]
fn specialized_equation_matches_printed_polynomial() {
    let check = check_sigma().unwrap();
    assert!(check.passed, "{check:?}");
    assert_eq!(check.unit.as_deref(), Some(check.recorded_unit.as_str()));
    assert_eq!(check.recorded_unit, PRINTED_F3_UNIT.trim());

    let spec = Sl3Specialization::default();
    let computed = specialized_f3(&spec).unwrap();
    let printed = printed_f3().unwrap();
    let unit = constant_ratio(&computed, &printed).unwrap();
    assert_eq!(computed, printed.scale(&unit));

    let k = r1_dr2_coefficient(&computed, &spec).unwrap();
    assert_ne!(k, qi(0));
    // Read off the printed text directly: the only r₁·r₂′ term is −r_1*r_2'.
    assert_eq!(r1_dr2_coefficient(&printed, &spec), Some(qi(-1)));
}

#[test]
fn zero_auxiliaries_recover_the_unspecialized_equation() {
    let rep = sl3();
    let spec = Sl3Specialization::default();
    let f = sw_f3(&rep).unwrap();
    let s = specialized_f3(&spec).unwrap();
    assert_ne!(f, s);
    assert_eq!(kill(&s, &spec.r), f);
    assert_eq!(leader(&f), indet::b(3).order(1));
}

fn leader(p: &DiffPoly) -> dgauge::diffpoly::Derivative {
    p.derivatives().into_iter().filter(|d| d.indet.class == IndetClass::B).max_by_key(|d| d.order).unwrap()
}

#[test]
fn sigma_is_a_differential_homomorphism() {
    let rep = sl3();
    let spec = Sl3Specialization::default();
    let vars = derivs(&[indet::ap(1), indet::am(2), indet::a0(1), indet::ap(3), indet::b(3)], 1);
    let mut r = rng(73);
    for _ in 0..20 {
        let p = random_poly(&mut r, &vars, 3, 2);
        let q = random_poly(&mut r, &vars, 3, 2);
        let sp = spec.sigma(&rep, &p).unwrap();
        let sq = spec.sigma(&rep, &q).unwrap();
        assert_eq!(spec.sigma(&rep, &p.derive()).unwrap(), sp.derive());
        assert_eq!(spec.sigma(&rep, &(&p * &q)).unwrap(), &sp * &sq);
        assert_eq!(spec.sigma(&rep, &(&p + &q)).unwrap(), &sp + &sq);
    }
    assert_eq!(spec.sigma(&rep, &poly("b_3")).unwrap(), poly("b_3"));
}

#[test]
fn gauged_element_shape() {
    let rep = sl3();
    let spec = Sl3Specialization::default();
    let ar = spec.a_r(&rep).unwrap();
    let rs = [indet::r(1), indet::r(2)];
    for k in 0..rep.dim() {
        let u = generic_indet(&rep, k);
        let c = &ar.coords()[k];
        // Undo the auxiliaries: the slot returns to its own a-indeterminate.
        assert_eq!(kill(c, &rs), DiffPoly::indet(u), "slot {k}");
        if u.class != IndetClass::AMinus {
            // Derivatives of r only enter through the logarithmic derivative, which is lower.
            assert!(c.derivatives().iter().all(|d| !rs.contains(&d.indet) || d.order == 0), "slot {k}: {c}");
        }
    }
    // Conjugating by lower unipotents cannot reach the highest root.
    let top = (0..rep.dim()).find(|&k| generic_indet(&rep, k) == indet::ap(3)).unwrap();
    assert_eq!(ar.coords()[top], poly("ap_3"));
}

/// The displayed Σ_m as a hand transcription, with an explicit choice for the shifted index.
fn displayed_rhs(c: &[DiffPoly; 4], m: usize, k: usize, printed_shift: bool) -> DiffPoly {
    let (mi, ki) = (m as i64, k as i64);
    let y = |j: i64| sigma_var(m, j);
    let [c0, c1, c2, c3] = c;
    let shift = if printed_shift { y(mi - 3) } else { y(ki - 2) };
    let mut cubic = &(&n(2) * &y(mi - 2)) - &y(mi - 1).pow(2);
    cubic = &cubic * &y(ki);
    cubic = &cubic - &(&n(mi) * &shift);
    cubic = &cubic + &(&n(ki) * &y(ki - 2));
    cubic = &cubic + &(&y(mi - 1) * &y(ki - 1));
    cubic = &cubic - &(&n(2) * &y(ki - 2));
    let mut out = c3 * &cubic;
    out = &out + &(&(&(&(c2 * &y(mi - 1)) - &(c1 * &n(mi))) + &(c1 * &n(ki))) * &y(ki));
    out = &out + &(&(c2 * &n(ki - mi - 1)) * &y(ki - 1));
    &out + &(&(c0 * &n(ki + 1)) * &y(ki + 1))
}

#[test]
fn sigma_one_is_the_riccati_equation() {
    let c = generic_c();
    let sys = sigma_m_system(&c, 1).unwrap();
    assert_eq!(sys.rhs, [poly("-c_3*y_0^3 + c_2*y_0^2 - c_1*y_0 + c_0")]);
    assert_eq!(sys.equations()[0], g0(&c, &poly("y_0")));
    assert_eq!(g0(&c, &poly("y_0")), poly("y_0' + c_3*y_0^3 - c_2*y_0^2 + c_1*y_0 - c_0"));
    let red = generic_reduction(1).unwrap();
    assert_eq!(red.coefficients(indet::aux(0)), [g0(&c, &poly("y_0"))]);
}

#[test]
fn sigma_m_examples() {
    let c = [n(1), n(0), n(0), n(0)];
    let sys = sigma_m_system(&c, 2).unwrap();
    assert_eq!(last_equation_constant(&sys), n(2));
    assert_eq!(sys.rhs, [poly("y_1"), n(2)]);

    let c = generic_c();
    for m in 1..=5 {
        let sys = sigma_m_system(&c, m).unwrap();
        assert_eq!(sys.rhs.len(), m);
        assert_eq!(last_equation_constant(&sys), &n(m as i64) * &c[0]);
        for k in 0..m {
            let lin_c0 = sys.rhs[k].coeff_of_power(indet::coef(0).base(), 1);
            assert_eq!(lin_c0, &n(k as i64 + 1) * &sigma_var(m, k as i64 + 1), "m={m} k={k}");
        }
    }

    assert!(matches!(sigma_m_system(&c, 0), Err(Error::Invalid(_))));
    let bad = [n(0), n(1), n(1), n(1)];
    assert!(matches!(sigma_m_system(&bad, 2), Err(Error::Invalid(_))));
}

#[test]
fn first_and_last_display_lines() {
    let c = generic_c();
    // First line of the display, taken verbatim for m = 3.
    let printed = sigma_m_system_variant(&c, 3, SigmaVariant::Printed).unwrap();
    assert_eq!(printed.rhs[0], poly("c_3*((2*y_1 - y_2^2)*y_0 - 3*y_0) + (c_2*y_2 - 3*c_1)*y_0 + c_0*y_1"));

    // The last line of the display, in both variants.
    for m in 2..=5 {
        let mi = m as i64;
        let y = |j: i64| sigma_var(m, j);
        let [c0, c1, c2, c3] = &c;
        let cubic = &(&(&(&n(3) * &y(mi - 2)) - &y(mi - 1).pow(2)) * &y(mi - 1)) - &(&n(3) * &y(mi - 3));
        let want = &(&(&(c3 * &cubic) + &(&(&(c2 * &y(mi - 1)) - c1) * &y(mi - 1))) - &(&(&n(2) * c2) * &y(mi - 2)))
            + &(&n(mi) * c0);
        for variant in [SigmaVariant::Replayed, SigmaVariant::Printed] {
            let sys = sigma_m_system_variant(&c, m, variant).unwrap();
            assert_eq!(sys.rhs[m - 1], want, "m={m} {variant:?}");
        }
    }
}

#[test]
fn variants_differ_only_in_the_shifted_cubic_term() {
    let c = generic_c();
    for m in 1..=5 {
        let rep = sigma_m_system_variant(&c, m, SigmaVariant::Replayed).unwrap();
        let pr = sigma_m_system_variant(&c, m, SigmaVariant::Printed).unwrap();
        for k in 0..m {
            let (mi, ki) = (m as i64, k as i64);
            assert_eq!(rep.rhs[k], displayed_rhs(&c, m, k, false));
            assert_eq!(pr.rhs[k], displayed_rhs(&c, m, k, true));
            let diff = &(&n(mi) * &c[3]) * &(&sigma_var(m, ki - 2) - &sigma_var(m, mi - 3));
            assert_eq!(&pr.rhs[k] - &rep.rhs[k], diff, "m={m} k={k}");
        }
        if m <= 2 {
            assert_eq!(rep.rhs, pr.rhs);
        }
    }
    let rep = sigma_m_system(&c, 3).unwrap();
    let pr = sigma_m_system_variant(&c, 3, SigmaVariant::Printed).unwrap();
    assert_ne!(rep.rhs[0], pr.rhs[0]);
}

/// The final remainder as displayed, coefficient of y^k, with a_m = 1 and a_j = 0 for j < 0.
fn displayed_g4(a: &[DiffPoly], c: &[DiffPoly; 4], k: usize, printed_shift: bool) -> DiffPoly {
    let m = a.len() - 1;
    let (mi, ki) = (m as i64, k as i64);
    let at = |j: i64| if j < 0 { DiffPoly::zero() } else { a[j as usize].clone() };
    let [c0, c1, c2, c3] = c;
    let shift = if printed_shift { at(mi - 3) } else { at(ki - 2) };
    let mut inner = &(&at(mi - 1).pow(2) - &(&n(2) * &at(mi - 2))) * &at(ki);
    inner = &inner - &(&n(ki) * &at(ki - 2));
    inner = &inner - &(&at(mi - 1) * &at(ki - 1));
    inner = &inner + &(&shift * &n(mi));
    inner = &inner + &(&n(2) * &at(ki - 2));
    let mut out = &at(ki).derive() + &(&inner * c3);
    out = &out - &(&(&(&at(mi - 1) * c2) + &(c1 * &n(ki - mi))) * &at(ki));
    out = &out - &(&(c2 * &n(ki - mi - 1)) * &at(ki - 1));
    &out - &(&(c0 * &n(ki + 1)) * &at(ki + 1))
}

#[test]
fn reduction_chain_remainder() {
    let c = generic_c();
    let x = indet::aux(0);
    for m in 1..=4 {
        let (f, g, y) = generic_f_g(m);
        assert_eq!(y, x);
        let red = reduce_mod_f_g(&f, &g, y).unwrap();
        assert!(red.verify_membership(&f, &g));
        assert_eq!(red.g4.degree_in(x.base()) as usize, m - 1);
        let a: Vec<DiffPoly> = (0..m).map(|k| DiffPoly::indet(indet::y(k as u32))).chain([n(1)]).collect();
        let coeffs = red.coefficients(x);
        let sys = sigma_m_system(&c, m).unwrap();
        for k in 0..m {
            assert_eq!(coeffs[k], displayed_g4(&a, &c, k, false), "m={m} k={k}");
            assert_eq!(coeffs[k], sys.equations()[k], "m={m} k={k}");
        }
        if m == 2 {
            // Both readings of the shifted term coincide here; compare against the display as printed.
            for k in 0..m {
                assert_eq!(coeffs[k], displayed_g4(&a, &c, k, true));
            }
        }
    }
    // Intermediate degrees shrink by one per step.
    let red = generic_reduction(3).unwrap();
    let degs: Vec<u32> = [&red.g1, &red.g2, &red.g3, &red.g4].iter().map(|p| p.degree_in(x.base())).collect();
    assert_eq!(degs, [5, 4, 3, 2]);
}

#[test]
fn constant_roots_force_a_zero_remainder() {
    let y = indet::aux(0);
    let yv = DiffPoly::indet(y);
    let lin = |rho: i64| &yv - &n(rho);
    let cubic = &(&lin(1) * &lin(2)) * &lin(3);
    let f = &DiffPoly::var(y.order(1)) + &cubic.scale(&qi(2));
    assert_eq!(riccati_coefficients(&f, y).unwrap()[0], n(-12));

    let g = &lin(1) * &lin(2);
    let red = reduce_mod_f_g(&f, &g, y).unwrap();
    assert!(red.verify_membership(&f, &g));
    assert!(red.g4.is_zero());

    let g = &lin(1) * &lin(5);
    let red = reduce_mod_f_g(&f, &g, y).unwrap();
    assert!(red.verify_membership(&f, &g));
    assert!(!red.g4.is_zero());
    // The remainder still vanishes at the shared root.
    let at1 = red.g4.substitute(&mut |d| (d == y.base()).then(|| n(1)));
    assert!(at1.is_zero());

    let g = lin(4);
    assert!(!reduce_mod_f_g(&f, &g, y).unwrap().g4.is_zero());
    let g = lin(3);
    assert!(reduce_mod_f_g(&f, &g, y).unwrap().g4.is_zero());
}

#[test]
fn coefficient_extraction_rejects_bad_input() {
    let y = indet::aux(0);
    assert_eq!(riccati_coefficients(&poly("x_0' + 3*x_0^2 + c_0"), y).unwrap(), [poly("c_0"), n(0), n(3), n(0)]);
    for bad in ["2*x_0' + x_0", "x_0'^2 + x_0", "x_0' + x_0^4", "x_0' + x_0''", "x_0*x_0' + 1", "x_0^3"] {
        assert!(matches!(riccati_coefficients(&poly(bad), y), Err(Error::Invalid(_))), "{bad}");
    }
    assert_eq!(monic_coefficients(&poly("x_0^2 + c_1*x_0 + 3"), y).unwrap(), [n(3), poly("c_1"), n(1)]);
    for bad in ["2*x_0 + 1", "5", "x_0' + x_0", "c_1*x_0 + 1"] {
        assert!(matches!(monic_coefficients(&poly(bad), y), Err(Error::Invalid(_))), "{bad}");
    }
    let f = poly("x_0' + x_0^3 + 1");
    assert!(reduce_mod_f_g(&f, &poly("2*x_0"), y).is_err());
}

#[test]
fn order_lemma_examples() {
    let r2 = indet::r(2);
    assert_eq!(check_order_lemma(&poly("r_2^2"), &n(1), r2), OrderOutcome::Holds { d: 0 });
    assert_eq!(check_order_lemma(&poly("r_2'"), &poly("r_2"), r2), OrderOutcome::Holds { d: 1 });
    assert_eq!(check_order_lemma(&poly("r_2^2 + r_1"), &poly("r_2 + ap_1"), r2), OrderOutcome::Holds { d: 0 });
    assert_eq!(check_order_lemma(&poly("2*r_2"), &poly("r_2"), r2), OrderOutcome::Excluded);
    assert_eq!(check_order_lemma(&poly("r_2' * r_2"), &poly("r_2'"), r2), OrderOutcome::Excluded);
    assert_eq!(check_order_lemma(&poly("r_2"), &n(0), r2), OrderOutcome::Excluded);
    assert_eq!(check_order_lemma(&poly("r_1"), &poly("ap_1"), r2), OrderOutcome::Excluded);
}

#[test]
fn absence_lemma_examples() {
    let (r1, r2) = (indet::r(1), indet::r(2));
    let out = check_absence_lemma(&poly("r_2"), &n(1), r1, r2).unwrap();
    assert_eq!(out, AbsenceOutcome { no_dr1: true, in_e_r2: true });
    let out = check_absence_lemma(&poly("r_1"), &n(1), r1, r2).unwrap();
    assert_eq!(out, AbsenceOutcome { no_dr1: false, in_e_r2: false });
    let out = check_absence_lemma(&poly("r_1*r_2"), &poly("r_1"), r1, r2).unwrap();
    assert_eq!(out, AbsenceOutcome { no_dr1: true, in_e_r2: true });
    let out = check_absence_lemma(&poly("r_1 + r_2"), &poly("r_2"), r1, r2).unwrap();
    assert_eq!(out, AbsenceOutcome { no_dr1: false, in_e_r2: false });
    assert!(out.holds() && check_absence_lemma(&poly("r_1*ap_1"), &poly("r_1"), r1, r2).unwrap().holds());
    assert_eq!(check_absence_lemma(&poly("r_1'"), &n(1), r1, r2), None);
    assert_eq!(check_absence_lemma(&poly("r_1"), &n(0), r1, r2), None);

    let order_samples = vec![(poly("r_2^2"), n(1)), (poly("r_2"), poly("r_2"))];
    let absence_samples = vec![(poly("r_2"), n(1)), (poly("r_1"), n(1)), (poly("r_1'"), n(1))];
    let report = order_lemma_checks(&order_samples, &absence_samples);
    assert!(report.passed());
    assert_eq!((report.order_checked, report.order_excluded), (1, 1));
    assert_eq!((report.absence_checked, report.absence_in, report.absence_out), (2, 1, 1));
}
