mod common;

use common::*;
use dgauge::diffpoly::{DiffFrac, DiffPoly};
use dgauge::liealg::{
    adjoint, adjoint_string_coeffs, gauge, log_derivative, root_group_element, simple_reflection_rep, torus_element, weyl_action_from_matrix,
    weyl_representative, BasisLabel, GroupElement, LieElement,
};
use dgauge::matrix::{self, Matrix};
use dgauge::rational::{qf, qi};
use dgauge::ring::{DiffRing, FracRing, PolyRing, Rationals};
use dgauge::Q;
use num_traits::Zero;

const TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4"];

fn e(n: usize, i: usize, j: usize) -> Matrix<Q> {
    Matrix::from_fn(n, n, |r, c| if (r, c) == (i, j) { qi(1) } else { qi(0) })
}

fn poly(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

fn unit(rep: &std::sync::Arc<dgauge::liealg::LieRepresentation>, label: BasisLabel) -> LieElement<DiffPoly> {
    let mut coords = vec![DiffPoly::zero(); rep.dim()];
    coords[rep.index(label)] = DiffPoly::one();
    LieElement::new(rep.clone(), coords).unwrap()
}

#[test]
fn representation_sizes_and_dimensions() {
    for (name, size) in [("A1", 2), ("A2", 3), ("A3", 4), ("B2", 5), ("B3", 7), ("C2", 4), ("C3", 6), ("D3", 6), ("D4", 8)] {
        let rep = rep(name);
        assert_eq!(rep.size(), size, "{name}");
        assert_eq!(rep.dim(), rep.rank() + rep.root_system().num_roots());
    }
}

#[test]
fn chevalley_relations_hold() {
    for name in TYPES {
        let rep = rep(name);
        let rs = rep.root_system();
        let l = rep.rank();
        for i in 0..l {
            for j in 0..l {
                assert!(rep.h(i).bracket_q(rep.h(j)).is_zero_q());
            }
            for a in 0..rs.num_roots() {
                let want = rep.x(a).map(|v| v * qi(rs.pairing(a, i)));
                assert_eq!(rep.h(i).bracket_q(rep.x(a)), want, "{name} [H_{i}, X_{a}]");
            }
        }
        for a in 0..rs.num_roots() {
            let mut p = rep.x(a).clone();
            for _ in 0..rep.size() {
                p = p.mul_q(rep.x(a));
            }
            assert!(p.is_zero_q(), "{name}: X_{a} not nilpotent");
            let co = rep.coroot(a);
            let c = rep.coordinates_q(&co).expect("coroot in the algebra");
            assert!(c[l..].iter().all(|x| x.is_zero()), "{name}: [X_a, X_-a] leaves the Cartan");
            // ⟨α, α∨⟩ = 2.
            assert_eq!(co.bracket_q(rep.x(a)), rep.x(a).map(|v| v * qi(2)));
        }
        for k in 0..rep.dim() {
            let c = rep.coordinates_q(rep.basis(k)).unwrap();
            for (j, x) in c.iter().enumerate() {
                assert_eq!(*x, if j == k { qi(1) } else { qi(0) });
            }
        }
    }
}

#[test]
fn brackets_of_root_vectors_follow_root_addition() {
    for name in TYPES {
        let rep = rep(name);
        let rs = rep.root_system();
        for a in 0..rs.num_roots() {
            for b in 0..rs.num_roots() {
                if b == rs.negate(a) {
                    continue;
                }
                let br = rep.x(a).bracket_q(rep.x(b));
                match rs.add_roots(a, b) {
                    Some(s) => {
                        let n = rep.structure_constant(a, b).expect("root sum");
                        assert!(!n.is_zero());
                        // |N_{α,β}| = r + 1 for the β... string through α.
                        let (r, _) = rs.string_bounds(a, b);
                        assert_eq!(num_traits::Signed::abs(&n), qi(r + 1), "{name} N({a},{b})");
                        assert_eq!(br, rep.x(s).map(|v| v * &n));
                    }
                    None => {
                        assert!(br.is_zero_q());
                        assert!(rep.structure_constant(a, b).is_none());
                    }
                }
            }
        }
    }
}

#[test]
fn sl2_and_sl3_matrices() {
    let a1 = rep("A1");
    assert_eq!(a1.h(0).to_rows(), [vec![qi(1), qi(0)], vec![qi(0), qi(-1)]]);
    assert_eq!(*a1.x(0), e(2, 0, 1));
    assert_eq!(*a1.x(1), e(2, 1, 0));

    let a2 = rep("A2");
    assert_eq!(*a2.x(0), e(3, 0, 1));
    assert_eq!(*a2.x(1), e(3, 1, 2));
    assert_eq!(*a2.x(2), e(3, 0, 2));
    assert_eq!(a2.structure_constant(0, 1), Some(qi(1)));
    assert_eq!(a2.label(a2.index(BasisLabel::X(4))), BasisLabel::X(4));
    assert_eq!(a2.grade(a2.index(BasisLabel::X(5))), -2);
    assert_eq!(a2.grade(a2.index(BasisLabel::H(1))), 0);
}

#[test]
fn materialize_and_extract_round_trip() {
    let mut r = rng(5);
    for name in ["A2", "B2", "C3"] {
        let rep = rep(name);
        let vars = mixed_vars();
        let coords: Vec<DiffPoly> = (0..rep.dim()).map(|_| random_poly(&mut r, &vars, 2, 2)).collect();
        let el = LieElement::new(rep.clone(), coords.clone()).unwrap();
        let m = el.materialize(&PolyRing);
        let back = LieElement::extract(&rep, &PolyRing, &m).unwrap();
        assert_eq!(back.coords(), &coords[..]);
        assert!(back.equals(&PolyRing, &el));
    }
    let rep = rep("A2");
    assert!(LieElement::<DiffPoly>::new(rep.clone(), vec![DiffPoly::zero(); 3]).is_err());
    // The identity matrix is not traceless.
    assert!(LieElement::extract(&rep, &Rationals, &Matrix::identity_q(3)).is_err());
}

#[test]
fn root_group_examples() {
    let a1 = rep("A1");
    let id = root_group_element(&a1, &PolyRing, 0, &DiffPoly::zero());
    assert!(matrix::equal(&PolyRing, &id.matrix, &matrix::identity(&PolyRing, 2)));
    let b = poly("b_1");
    let u = root_group_element(&a1, &PolyRing, 1, &b);
    assert_eq!(u.matrix.to_rows(), [vec![DiffPoly::one(), DiffPoly::zero()], vec![b.clone(), DiffPoly::one()]]);
    assert!(u.check_inverse(&PolyRing));

    // exp(xX)·exp(yX) = exp((x+y)X) on every root of C4.
    let c4 = rep("C4");
    let (x, y) = (poly("t_1"), poly("t_2"));
    for a in 0..c4.root_system().num_roots() {
        let gx = root_group_element(&c4, &PolyRing, a, &x);
        let gy = root_group_element(&c4, &PolyRing, a, &y);
        let gxy = root_group_element(&c4, &PolyRing, a, &(&x + &y));
        assert!(matrix::equal(&PolyRing, &GroupElement::product(&PolyRing, &gx, &gy).matrix, &gxy.matrix));
    }
}

#[test]
fn torus_examples() {
    let x = DiffFrac::from_poly(poly("t_1"));
    let a1 = rep("A1");
    let t = torus_element(&a1, &FracRing, 0, &x).unwrap();
    let xinv = x.inverse().unwrap();
    assert!(FracRing.equal(t.matrix.get(0, 0), &x));
    assert!(FracRing.equal(t.matrix.get(1, 1), &xinv));
    assert!(FracRing.is_zero(t.matrix.get(0, 1)));
    assert!(t.check_inverse(&FracRing));

    let a2 = rep("A2");
    let t = torus_element(&a2, &FracRing, 0, &x).unwrap();
    let elem = |label| unit(&a2, label).map(|p| DiffFrac::from_poly(p.clone()));
    let img = adjoint(&FracRing, &t, &elem(BasisLabel::X(0))).unwrap();
    assert!(img.equals(&FracRing, &elem(BasisLabel::X(0)).map(|c| c.mul(&x).mul(&x))));
    let img = adjoint(&FracRing, &t, &elem(BasisLabel::X(1))).unwrap();
    assert!(img.equals(&FracRing, &elem(BasisLabel::X(1)).map(|c| c.mul(&xinv))));
    for i in 0..2 {
        let h = elem(BasisLabel::H(i));
        assert!(adjoint(&FracRing, &t, &h).unwrap().equals(&FracRing, &h));
    }
    assert!(torus_element(&a2, &FracRing, 2, &x).is_err());
    assert!(torus_element(&a2, &PolyRing, 0, &poly("t_1")).is_err());
}

#[test]
fn weyl_representative_examples() {
    let a1 = rep("A1");
    let n = simple_reflection_rep(&a1, 0);
    assert_eq!(n.matrix.to_rows(), [vec![qi(0), qi(1)], vec![qi(-1), qi(0)]]);
    let w = weyl_action_from_matrix(&a1, &n.matrix).unwrap();
    assert_eq!(w.apply(0), 1);

    let a2 = rep("A2");
    let rs = a2.root_system();
    let id = weyl_representative(&a2, &Rationals, &rs.identity());
    assert_eq!(id.matrix, Matrix::identity_q(3));
    let w0 = rs.longest_element();
    let n = weyl_representative(&a2, &Rationals, &w0);
    let img = n.matrix.mul_q(a2.x(2)).mul_q(&n.inverse);
    let minus = a2.x(5).map(|v| -v);
    assert!(img == *a2.x(5) || img == minus);
    assert_eq!(weyl_action_from_matrix(&a2, &Matrix::identity_q(3)).unwrap(), rs.identity());

    // n(w) realizes w on root spaces for every element of small Weyl groups.
    for name in ["A2", "B2", "C2", "A3"] {
        let rep = rep(name);
        for w in rep.root_system().all_weyl_elements() {
            let g = weyl_representative(&rep, &Rationals, &w);
            assert!(g.check_inverse(&Rationals));
            assert_eq!(weyl_action_from_matrix(&rep, &g.matrix).unwrap(), w, "{name} {:?}", w.word);
        }
    }
}

#[test]
fn weyl_action_rejects_non_normalizing_matrices() {
    let a2 = rep("A2");
    let u = root_group_element(&a2, &Rationals, 0, &qi(1));
    assert!(weyl_action_from_matrix(&a2, &u.matrix).is_err());
    assert!(weyl_action_from_matrix(&a2, &Matrix::identity_q(2)).is_err());
    assert!(weyl_action_from_matrix(&a2, &Matrix::zero_q(3, 3)).is_err());
}

#[test]
fn log_derivative_examples() {
    let a1 = rep("A1");
    let c = root_group_element(&a1, &PolyRing, 0, &DiffPoly::int(3));
    assert!(log_derivative(&a1, &PolyRing, &c).unwrap().coords().iter().all(|x| x.is_zero()));

    let b = poly("b_1");
    let u = root_group_element(&a1, &PolyRing, 1, &b);
    let l = log_derivative(&a1, &PolyRing, &u).unwrap();
    assert!(l.equals(&PolyRing, &unit(&a1, BasisLabel::X(1)).map(|c| c * &b.derive())));

    let x = DiffFrac::from_poly(poly("t_1"));
    let t = torus_element(&a1, &FracRing, 0, &x).unwrap();
    let l = log_derivative(&a1, &FracRing, &t).unwrap();
    let want = x.derive().mul(&x.inverse().unwrap());
    assert!(FracRing.equal(l.h(0), &want));
    assert!(FracRing.is_zero(l.x(0)) && FracRing.is_zero(l.x(1)));
}

#[test]
fn gauge_examples() {
    let a1 = rep("A1");
    // a⁰H + X_α + a⁻X_{−α}
    let a = LieElement::new(a1.clone(), vec![poly("a0_1"), DiffPoly::one(), poly("am_1")]).unwrap();
    let id = GroupElement::identity(&PolyRing, 2);
    assert!(gauge(&PolyRing, &id, &a).unwrap().equals(&PolyRing, &a));

    let p = poly("t_1");
    let g = root_group_element(&a1, &PolyRing, 1, &p);
    let out = gauge(&PolyRing, &g, &a).unwrap();
    // 2×2 oracle: [[1,0],[p,1]]·A·[[1,0],[−p,1]] + [[0,0],[p′,0]].
    assert_eq!(*out.h(0), poly("a0_1 - t_1"));
    assert_eq!(*out.x(1), poly("am_1 + 2*t_1*a0_1 - t_1^2 + t_1'"));
    assert!(out.x(0).is_one());

    // Ad(u_β(x))(X_{−β}) = X_{−β} + xH_β − x²X_β on every root of B2.
    let b2 = rep("B2");
    let rs = b2.root_system();
    let x = poly("x_0");
    for beta in 0..rs.num_roots() {
        let u = root_group_element(&b2, &PolyRing, beta, &x);
        let img = adjoint(&PolyRing, &u, &unit(&b2, BasisLabel::X(rs.negate(beta)))).unwrap();
        let hb = b2.coordinates_q(&b2.coroot(beta)).unwrap();
        for k in 0..b2.dim() {
            let want = match b2.label(k) {
                BasisLabel::H(_) => x.scale(&hb[k]),
                BasisLabel::X(a) if a == rs.negate(beta) => DiffPoly::one(),
                BasisLabel::X(a) if a == beta => -&(&x * &x),
                _ => DiffPoly::zero(),
            };
            assert_eq!(img.coords()[k], want, "{beta} {k}");
        }
    }
}

#[test]
fn string_coefficient_examples() {
    let a2 = rep("A2");
    let s = adjoint_string_coeffs(&a2, 1, 0).unwrap();
    assert_eq!((s.r, s.q), (0, 1));
    assert_eq!(s.coeffs[0], qi(1));
    assert_eq!(num_traits::Signed::abs(&s.coeffs[1]), qi(1));
    // q = 0: only c₀.
    let s = adjoint_string_coeffs(&a2, 0, 2).unwrap();
    assert_eq!(s.coeffs, [qi(1)]);

    let c2 = rep("C2");
    // β = α₁ (short) through α₂: α₂, α₁+α₂, 2α₁+α₂.
    let s = adjoint_string_coeffs(&c2, 0, 1).unwrap();
    assert_eq!((s.r, s.q), (0, 2));
    assert!(s.coeffs.iter().all(|c| num_traits::Signed::abs(c) == qi(1)));
    // β = α₁ through α₁+α₂: r = 1, q = 1, so |c₁| = 2.
    let s = adjoint_string_coeffs(&c2, 0, 2).unwrap();
    assert_eq!((s.r, s.q), (1, 1));
    assert_eq!(num_traits::Signed::abs(&s.coeffs[1]), qi(2));
    assert!(adjoint_string_coeffs(&c2, 0, 4).is_err());
    assert!(adjoint_string_coeffs(&c2, 0, 0).is_err());
}

#[test]
fn group_products_and_inverses() {
    let mut r = rng(17);
    for name in ["A2", "C2"] {
        let rep = rep(name);
        for _ in 0..20 {
            let g = random_group_element(&mut r, &rep);
            let h = random_group_element(&mut r, &rep);
            let gh = GroupElement::product(&PolyRing, &g, &h);
            assert!(gh.check_inverse(&PolyRing));
            let back = GroupElement::product(&PolyRing, &gh, &h.inverted());
            assert!(matrix::equal(&PolyRing, &back.matrix, &g.matrix));
            let lifted = GroupElement::<DiffPoly>::lift(&PolyRing, &simple_reflection_rep(&rep, 0));
            assert!(lifted.check_inverse(&PolyRing));
        }
    }
    let q: Q = qf(1, 2);
    let a1 = rep("A1");
    let t = torus_element(&a1, &Rationals, 0, &q).unwrap();
    assert_eq!(*t.matrix.get(1, 1), qi(2));
}
