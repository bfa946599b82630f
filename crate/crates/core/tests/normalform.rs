mod common;

use common::*;
use dgauge::diffpoly::{indet, DiffPoly, TriangularSystem, Ranking};
use dgauge::liealg::BasisLabel;
use dgauge::normalform::{
    check_tbar_structure, complementary_roots, normal_form_matrix, normal_form_pipeline, normal_form_pipeline_with, step1_gauge, step2_exponents,
    step3_symbolic, verify_in_original_coordinates, ExtRing, MonomialExtElem, OriginalCoordinates, PipelineOptions,
};
use dgauge::rational::{qf, qi};
use dgauge::ring::{evaluate, DiffRing, PolyRing, QuotientRing};
use dgauge::Q;
use num_integer::Integer;
use num_traits::One;
use std::sync::Arc;

fn poly(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

fn free_quotient() -> QuotientRing {
    QuotientRing::new(Arc::new(TriangularSystem::new(Vec::new(), Vec::new(), Ranking::orderly()).unwrap()))
}

#[test]
fn complementary_heights_are_the_exponents() {
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4"] {
        let rep = rep(name);
        let comp = complementary_roots(&rep).unwrap();
        let mut h = comp.heights.clone();
        h.sort();
        assert_eq!(h, known_exponents(name), "{name}");
        let rs = rep.root_system();
        for (&g, &ht) in comp.gamma.iter().zip(&comp.heights) {
            assert!(rs.is_positive(g));
            assert_eq!(rs.height(g), ht);
        }
        for cert in &comp.certificate {
            assert_eq!(cert.image_rank + cert.chosen.len(), cert.grade_dim, "{name} height {}", cert.height);
        }
    }
    let a2 = complementary_roots(&rep("A2")).unwrap();
    assert_eq!(a2.gamma, [0, 2]);
    assert_eq!(a2.heights, [1, 2]);
    assert_eq!(complementary_roots(&rep("A1")).unwrap().gamma, [0]);
}

#[test]
fn normal_form_matrix_examples() {
    let a1 = rep("A1");
    let comp = complementary_roots(&a1).unwrap();
    let zero = normal_form_matrix(&a1, &PolyRing, &comp, &[DiffPoly::zero()]).unwrap();
    assert_eq!(zero.materialize(&PolyRing).to_rows(), [vec![DiffPoly::zero(), DiffPoly::one()], vec![DiffPoly::zero(), DiffPoly::zero()]]);
    let t = poly("t_1");
    let m = normal_form_matrix(&a1, &PolyRing, &comp, &[t.clone()]).unwrap().materialize(&PolyRing);
    assert_eq!(m.to_rows(), [vec![DiffPoly::zero(), DiffPoly::one()], vec![t, DiffPoly::zero()]]);
    assert!(normal_form_matrix(&a1, &PolyRing, &comp, &[]).is_err());

    let a2 = rep("A2");
    let comp = complementary_roots(&a2).unwrap();
    let el = normal_form_matrix(&a2, &PolyRing, &comp, &[poly("t_1"), poly("t_2")]).unwrap();
    let nonzero: Vec<BasisLabel> = (0..a2.dim()).filter(|&k| !el.coords()[k].is_zero()).map(|k| a2.label(k)).collect();
    assert_eq!(nonzero, [BasisLabel::X(0), BasisLabel::X(1), BasisLabel::X(3), BasisLabel::X(5)]);
}

#[test]
fn step1_for_sl2() {
    // n(s₁) = [[0,1],[−1,0]] conjugates A to [[−a0, −am], [−ap, a0]].
    let a1 = rep("A1");
    let s1 = step1_gauge(&a1, &a1.root_system().longest_element()).unwrap();
    assert_eq!(*s1.h.x(0), poly("-am_1"));
    assert_eq!(*s1.h.x(1), poly("-ap_1"));
    assert_eq!(*s1.h.h(0), poly("-a0_1"));
    assert_eq!(s1.h_plus(), [poly("-am_1")]);
}

#[test]
fn step1_for_sl3() {
    let a2 = rep("A2");
    let s1 = step1_gauge(&a2, &a2.root_system().longest_element()).unwrap();
    assert!(s1.h.x(2).is_zero());
    assert!(s1.h_plus().iter().all(|h| !h.is_zero()));
    // The raw coordinate is nonzero before reduction and lies in the ideal.
    assert!(!s1.sw.gauged.x(2).is_zero());
    assert!(s1.system.is_zero_mod(s1.sw.gauged.x(2)));
    let s = a2.root_system().weyl_from_word(&[1]).unwrap();
    assert!(step1_gauge(&a2, &s).is_err());
}

#[test]
fn step2_exponent_matrices() {
    assert_eq!(step2_exponents(&system("A1")).unwrap().to_rows(), [vec![qf(-1, 2)]]);
    let a2 = step2_exponents(&system("A2")).unwrap();
    assert_eq!(a2.to_rows(), [vec![qf(-2, 3), qf(-1, 3)], vec![qf(-1, 3), qf(-2, 3)]]);
    for (name, det) in [("A1", 2), ("A2", 3), ("A3", 4), ("A4", 5), ("B2", 2), ("B3", 2), ("C3", 2), ("D4", 4)] {
        let rs = system(name);
        let q = step2_exponents(&rs).unwrap();
        assert_eq!(rs.cartan_q().determinant_q(), qi(det), "{name}");
        let l = rs.rank();
        for i in 0..l {
            for j in 0..l {
                let d = q.get(i, j).denom();
                assert!(num_bigint::BigInt::from(det).is_multiple_of(d), "{name}");
            }
        }
        // x_i = Π h_j^{Q_ij} solves h_j·Π_i x_i^{α_j(H_i)} = 1 on exponents.
        let c = rs.cartan_q();
        for j in 0..l {
            for k in 0..l {
                let s: Q = (0..l).map(|i| q.get(i, k) * c.get(i, j)).sum();
                assert_eq!(s, if j == k { qi(-1) } else { qi(0) }, "{name}");
            }
        }
    }
}

#[test]
fn symbolic_step3_for_sl2() {
    let a1 = rep("A1");
    let comp = complementary_roots(&a1).unwrap();
    let sym = step3_symbolic(&a1, &comp).unwrap();
    assert_eq!(sym.tbar, [poly("am_1 + a0_1^2 + a0_1'")]);
    assert_eq!(sym.params, [vec![(0, poly("a0_1"))]]);
    for name in ["A2", "A3", "B2", "C2", "B3", "C3", "D4"] {
        let rep = rep(name);
        let comp = complementary_roots(&rep).unwrap();
        let sym = step3_symbolic(&rep, &comp).unwrap();
        check_tbar_structure(&comp, &sym.tbar).unwrap();
        assert_eq!(sym.params.len() as i64, rep.root_system().max_height());
    }
}

fn random_ext_elem(r: &mut rand_chacha::ChaCha8Rng, ext: &ExtRing) -> MonomialExtElem {
    let vars = derivs(&[indet::hp(1), indet::hp(2), indet::hm(1), indet::h0(2)], 2);
    let q = vec![qf(rand::Rng::gen_range(r, -4..=4), 3), qf(rand::Rng::gen_range(r, -4..=4), 3)];
    ext.mul(&ext.hpow(&q), &ext.lift(&random_poly(r, &vars, 3, 2)))
}

#[test]
fn extension_ring_is_a_differential_ring() {
    let ext = ExtRing::new(free_quotient(), vec![poly("hp_1"), poly("hp_2")]).unwrap();
    let mut r = rng(23);
    for _ in 0..60 {
        let (f, g, h) = (random_ext_elem(&mut r, &ext), random_ext_elem(&mut r, &ext), random_ext_elem(&mut r, &ext));
        let lhs = ext.derive(&ext.mul(&f, &g));
        let rhs = ext.add(&ext.mul(&ext.derive(&f), &g), &ext.mul(&f, &ext.derive(&g)));
        assert!(ext.equal(&lhs, &rhs));
        assert!(ext.equal(&ext.derive(&ext.add(&f, &h)), &ext.add(&ext.derive(&f), &ext.derive(&h))));
        assert!(ext.equal(&ext.mul(&f, &ext.add(&g, &h)), &ext.add(&ext.mul(&f, &g), &ext.mul(&f, &h))));
        assert!(ext.is_zero(&ext.sub(&f, &f)));
    }
    // (h^q)′·h^{−q} = q₁·h₁′/h₁ + q₂·h₂′/h₂.
    for q in [[qf(1, 3), qf(-2, 3)], [qf(-1, 2), qi(0)], [qi(2), qf(5, 6)]] {
        let lhs = ext.mul(&ext.derive(&ext.hpow(&q)), &ext.hpow(&[-q[0].clone(), -q[1].clone()]));
        let mut rhs = ext.zero();
        for j in 0..2 {
            rhs = ext.add(&rhs, &ext.mul(&ext.lift(&DiffPoly::constant(q[j].clone())), &ext.log_derivative_of_bound(j)));
        }
        assert!(ext.equal(&lhs, &rhs), "{q:?}");
    }
    // Factors of a bound element move into the exponent, so the stored form is canonical.
    let h = ext.lift(&poly("3*hp_1^2*hm_1"));
    let terms: Vec<_> = h.terms().collect();
    assert_eq!(terms, [(&vec![qi(2), qi(0)], &poly("3*hm_1"))]);
    assert_eq!(ext.lift(&poly("hm_1")).as_poly(), Some(poly("hm_1")));
    let half = ext.hpow(&[qf(1, 2), qi(0)]);
    assert!(ext.equal(&ext.mul(&half, &half), &ext.lift(&poly("hp_1"))));
    let inv = ext.inverse(&half).unwrap();
    assert!(ext.equal(&ext.mul(&half, &inv), &ext.one()));
    assert!(ExtRing::new(free_quotient(), vec![DiffPoly::zero()]).is_err());
}

#[test]
fn extension_elements_parse_back() {
    let ext = ExtRing::new(free_quotient(), vec![poly("hp_1"), poly("hp_2")]).unwrap();
    let mut r = rng(29);
    for _ in 0..30 {
        let f = random_ext_elem(&mut r, &ext);
        let back = ext.parse(&f.to_string()).unwrap();
        assert!(ext.equal(&back, &f), "{f}");
    }
}

/// The SL₂ oracle in the chart: x = hp^{−1/2}, g⁰ = h0 − hp′/(2hp), g⁻ = hm·hp and
/// t̄ = g⁻ + (g⁰)² + (g⁰)′ = hp^{−2}·c with c below.
fn sl2_tbar_numerator() -> DiffPoly {
    poly("hm_1*hp_1^3 + h0_1^2*hp_1^2 + h0_1'*hp_1^2 - h0_1*hp_1'*hp_1 - 1/2*hp_1''*hp_1 + 3/4*hp_1'^2")
}

#[test]
fn sl2_pipeline_matches_the_hand_computation() {
    let a1 = rep("A1");
    let res = normal_form_pipeline(&a1).unwrap();
    assert!(res.verified(), "{:?}", res.checks);
    assert_eq!(res.step2.q.to_rows(), [vec![qf(-1, 2)]]);
    let ext = res.ext();
    let want = ext.mul(&ext.hpow(&[qi(-2)]), &ext.lift(&sl2_tbar_numerator()));
    assert!(ext.equal(&res.tbar()[0], &want), "{}", res.tbar()[0]);
    assert!(ext.equal(res.final_element.x(0), &ext.one()));

    // Back in the a-coordinates: hp ↦ −am, hm ↦ −ap, h0 ↦ −a0.
    let oc = OriginalCoordinates::new(&res.step1).unwrap();
    let c = evaluate(&PolyRing, &sl2_tbar_numerator(), &mut |u| match u {
        u if u == indet::hp(1) => poly("-am_1"),
        u if u == indet::hm(1) => poly("-ap_1"),
        u if u == indet::h0(1) => poly("-a0_1"),
        u => DiffPoly::indet(u),
    });
    let want = oc.ext.mul(&oc.ext.hpow(&[qi(-2)]), &oc.ext.lift(&c));
    assert!(oc.ext.equal(&oc.transport(&a1, &res.tbar()[0]), &want));
    assert!(verify_in_original_coordinates(&res).unwrap());
}

#[test]
fn sl3_pipeline() {
    let a2 = rep("A2");
    let res = normal_form_pipeline(&a2).unwrap();
    assert!(res.verified(), "{:?}", res.checks);
    let names: Vec<&str> = res.checks.iter().map(|c| c.name.as_str()).collect();
    for n in ["chart", "tbar-structure", "tbar-nonzero", "step3-gauge", "independent-regauge"] {
        assert!(names.contains(&n), "{n}");
    }
    let ext = res.ext();
    let nonzero = res.final_element.coords().iter().filter(|c| !ext.is_zero(c)).count();
    assert_eq!(nonzero, 4);
    assert_eq!(res.complementary.heights, [1, 2]);
    assert!(res.tbar().iter().all(|t| !ext.is_zero(t)));
    // g⁺ = (1, 1, 0) after step 2.
    for (r, want) in [(0, true), (1, true), (2, false)] {
        let v = res.step2.g.x(r);
        assert!(if want { ext.equal(v, &ext.one()) } else { ext.is_zero(v) });
    }
    assert!(verify_in_original_coordinates(&res).unwrap());

    let doc = res.document();
    let json = serde_json::to_value(&doc).unwrap();
    for key in ["root_system", "weyl_word", "sw_equations", "exponent_matrix", "complementary_heights", "tbar", "final_element", "checks", "verified"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["verified"], true);
    assert_eq!(doc.sw_equations.len(), 1);
    assert_eq!(doc.exponent_matrix, [vec!["-2/3", "-1/3"], vec!["-1/3", "-2/3"]]);
    // The printed t̄ parse back in the extension ring.
    for (t, s) in res.tbar().iter().zip(&doc.tbar) {
        assert!(ext.equal(&ext.parse(s).unwrap(), t));
    }
}

#[test]
fn c2_pipeline_shape() {
    let c2 = rep("C2");
    let res = normal_form_pipeline_with(&c2, PipelineOptions { regauge: false }).unwrap();
    assert!(res.verified(), "{:?}", res.checks);
    let ext = res.ext();
    assert_eq!(res.final_element.coords().iter().filter(|c| !ext.is_zero(c)).count(), 4);
    assert_eq!(res.complementary.heights, [1, 3]);
    let q = &res.step2.q;
    assert!((0..2).all(|i| (0..2).all(|j| q.get(i, j).denom().is_one() || *q.get(i, j).denom() == 2.into())));
    assert!(!res.checks.iter().any(|c| c.name == "independent-regauge"));
}
