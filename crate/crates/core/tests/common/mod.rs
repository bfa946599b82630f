#![allow(dead_code)]

use dgauge::diffpoly::{indet, Derivative, DiffIndet, DiffPoly, Monomial};
use dgauge::liealg::{root_group_element, torus_element, GroupElement, LieRepresentation};
use dgauge::matrix::Matrix;
use dgauge::rational::{qf, qi};
use dgauge::ring::PolyRing;
use dgauge::rootsys::{Family, RootSystem};
use dgauge::Q;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn system(name: &str) -> RootSystem {
    let family: Family = name[..1].parse().expect("family");
    let rank: usize = name[1..].parse().expect("rank");
    RootSystem::new(family, rank).expect("root system")
}

pub fn rep(name: &str) -> Arc<LieRepresentation> {
    Arc::new(LieRepresentation::new(&system(name)).expect("representation"))
}

/// Exponents of the simple Lie algebra, from the classification tables.
pub fn known_exponents(name: &str) -> Vec<i64> {
    let l: i64 = name[1..].parse().unwrap();
    let mut e: Vec<i64> = match &name[..1] {
        "A" => (1..=l).collect(),
        "B" | "C" => (1..=l).map(|i| 2 * i - 1).collect(),
        "D" => (1..l).map(|i| 2 * i - 1).chain([l - 1]).collect(),
        _ => unreachable!(),
    };
    e.sort();
    e
}

pub fn small_q(r: &mut ChaCha8Rng) -> Q {
    let n = r.gen_range(-5i64..=5);
    let d = r.gen_range(1i64..=3);
    qf(n, d)
}

pub fn nonzero_q(r: &mut ChaCha8Rng) -> Q {
    loop {
        let q = small_q(r);
        if q != qi(0) {
            return q;
        }
    }
}

/// Random polynomial in the given derivatives: up to `terms` terms, exponents up to `deg`.
pub fn random_poly(r: &mut ChaCha8Rng, vars: &[Derivative], terms: usize, deg: u32) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..r.gen_range(1..=terms) {
        let mut m = Monomial::one();
        for _ in 0..r.gen_range(0..=2) {
            let v = vars[r.gen_range(0..vars.len())];
            m = m.mul(&Monomial::power(v, r.gen_range(1..=deg)));
        }
        p.add_term(m, small_q(r));
    }
    p
}

pub fn derivs(us: &[DiffIndet], max_order: u32) -> Vec<Derivative> {
    us.iter().flat_map(|u| (0..=max_order).map(move |k| u.order(k))).collect()
}

/// A general pool of derivatives across several classes.
pub fn mixed_vars() -> Vec<Derivative> {
    derivs(&[indet::ap(1), indet::am(2), indet::a0(1), indet::b(3), indet::t(1), indet::aux(0)], 2)
}

/// Random element of G over C{t_1}: a product of root group elements with polynomial
/// parameters and torus elements with constant parameters.
pub fn random_group_element(r: &mut ChaCha8Rng, rep: &LieRepresentation) -> GroupElement<DiffPoly> {
    let rs = rep.root_system();
    let vars = derivs(&[indet::t(1)], 1);
    let n = r.gen_range(1..=3);
    let mut factors = Vec::with_capacity(n);
    for _ in 0..n {
        if r.gen_bool(0.25) {
            let i = r.gen_range(0..rs.rank());
            factors.push(torus_element(rep, &PolyRing, i, &DiffPoly::constant(nonzero_q(r))).expect("torus"));
        } else {
            let root = r.gen_range(0..rs.num_roots());
            let p = random_poly(r, &vars, 2, 2);
            factors.push(root_group_element(rep, &PolyRing, root, &p));
        }
    }
    GroupElement::product_all(&PolyRing, rep.size(), &factors)
}

/// The 8×8 signed permutation matrix from the SP8 remark, as printed.
pub fn sp8_matrix() -> Matrix<Q> {
    let rows: [[i64; 8]; 8] = [
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 0],
    ];
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/golden/{name}", env!("CARGO_MANIFEST_DIR"))).expect("golden file")
}

/// Highest order of u in p, by scanning the derivatives directly.
pub fn max_order(p: &DiffPoly, u: DiffIndet) -> Option<u32> {
    p.derivatives().iter().filter(|d| d.indet == u).map(|d| d.order).max()
}

/// sep(a)·b − a·sep(b) with sep the partial derivative in d. Zero exactly when a/b does not
/// depend on d.
pub fn partial_wronskian(a: &DiffPoly, b: &DiffPoly, d: Derivative) -> DiffPoly {
    &(&a.partial(d) * b) - &(a * &b.partial(d))
}
