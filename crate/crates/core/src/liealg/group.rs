use super::rep::LieRepresentation;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::rational::{qi, Q};
use crate::ring::{DiffRing, Rationals};
use crate::rootsys::WeylElement;
use num_traits::{One, Zero};
use serde::Serialize;

/// How a group element was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Identity,
    RootGroup { root: usize, param: String },
    Torus { index: usize, param: String },
    WeylRep { word: Vec<usize> },
    Product { factors: Vec<Provenance> },
    Matrix,
}

/// Invertible matrix with its inverse carried along.
#[derive(Clone, Debug)]
pub struct GroupElement<E> {
    pub matrix: Matrix<E>,
    pub inverse: Matrix<E>,
    pub provenance: Provenance,
}

impl<E: Clone> GroupElement<E> {
    pub fn identity<R: DiffRing<Elem = E>>(ring: &R, n: usize) -> Self {
        GroupElement { matrix: matrix::identity(ring, n), inverse: matrix::identity(ring, n), provenance: Provenance::Identity }
    }

    pub fn product<R: DiffRing<Elem = E>>(ring: &R, a: &Self, b: &Self) -> Self {
        let mut factors = Vec::new();
        for p in [&a.provenance, &b.provenance] {
            match p {
                Provenance::Identity => {}
                Provenance::Product { factors: f } => factors.extend(f.iter().cloned()),
                other => factors.push(other.clone()),
            }
        }
        GroupElement {
            matrix: matrix::mul(ring, &a.matrix, &b.matrix),
            inverse: matrix::mul(ring, &b.inverse, &a.inverse),
            provenance: if factors.is_empty() { Provenance::Identity } else { Provenance::Product { factors } },
        }
    }

    pub fn product_all<R: DiffRing<Elem = E>>(ring: &R, n: usize, items: &[Self]) -> Self {
        items.iter().fold(GroupElement::identity(ring, n), |acc, g| GroupElement::product(ring, &acc, g))
    }

    pub fn inverted(&self) -> Self {
        GroupElement { matrix: self.inverse.clone(), inverse: self.matrix.clone(), provenance: self.provenance.clone() }
    }

    pub fn lift<R: DiffRing<Elem = E>>(ring: &R, g: &GroupElement<Q>) -> Self {
        GroupElement { matrix: matrix::lift(ring, &g.matrix), inverse: matrix::lift(ring, &g.inverse), provenance: g.provenance.clone() }
    }

    /// Checks matrix·inverse = 1.
    pub fn check_inverse<R: DiffRing<Elem = E>>(&self, ring: &R) -> bool {
        let n = self.matrix.rows();
        matrix::equal(ring, &matrix::mul(ring, &self.matrix, &self.inverse), &matrix::identity(ring, n))
    }
}

fn nilpotent_powers(x: &Matrix<Q>) -> Vec<Matrix<Q>> {
    let n = x.rows();
    let mut out = vec![Matrix::identity_q(n)];
    loop {
        let next = out.last().expect("nonempty").mul_q(x);
        if next.is_zero_q() {
            return out;
        }
        assert!(out.len() <= n, "root vector is not nilpotent");
        out.push(next);
    }
}

fn exp_series<R: DiffRing>(ring: &R, powers: &[Matrix<Q>], c: &R::Elem) -> Matrix<R::Elem> {
    let n = powers[0].rows();
    let mut cp = vec![ring.one()];
    for j in 1..powers.len() {
        cp.push(ring.mul(&cp[j - 1], c));
    }
    let mut fact = Q::one();
    let mut coeffs = vec![];
    for (j, cj) in cp.iter().enumerate() {
        if j > 0 {
            fact *= qi(j as i64);
        }
        coeffs.push(ring.scale(cj, &fact.recip()));
    }
    Matrix::from_fn(n, n, |r, col| {
        let mut acc = ring.zero();
        for (j, p) in powers.iter().enumerate() {
            let w = p.get(r, col);
            if !w.is_zero() {
                acc = ring.add(&acc, &ring.scale(&coeffs[j], w));
            }
        }
        acc
    })
}

/// u_α(c) = exp(c·X_α), a finite sum.
pub fn root_group_element<R: DiffRing>(rep: &LieRepresentation, ring: &R, root: usize, c: &R::Elem) -> GroupElement<R::Elem> {
    let powers = nilpotent_powers(rep.x(root));
    GroupElement {
        matrix: exp_series(ring, &powers, c),
        inverse: exp_series(ring, &powers, &ring.neg(c)),
        provenance: Provenance::RootGroup { root, param: c.to_string() },
    }
}

/// t_i(x) = diag(x^{d_k}) where d_k are the diagonal entries of H_i.
pub fn torus_element<R: DiffRing>(rep: &LieRepresentation, ring: &R, i: usize, x: &R::Elem) -> Result<GroupElement<R::Elem>> {
    if i >= rep.rank() {
        return Err(Error::ReflectionIndex(i + 1));
    }
    let xinv = ring.inverse(x).ok_or_else(|| Error::NotInvertible(x.to_string()))?;
    let h = rep.h(i);
    let n = rep.size();
    let d: Vec<i64> = (0..n).map(|k| crate::rational::to_i64(h.get(k, k)).expect("integral Cartan element")).collect();
    let rs = rep.root_system();
    for j in 0..rs.rank() {
        let want = rs.cartan()[i][j];
        let xj = rep.x(j);
        for r in 0..n {
            for c in 0..n {
                if !xj.get(r, c).is_zero() && d[r] - d[c] != want {
                    return Err(Error::Verification(format!("torus weight mismatch on X_{}", j + 1)));
                }
            }
        }
    }
    let pw = |e: i64| if e >= 0 { ring.pow(x, e as u32) } else { ring.pow(&xinv, (-e) as u32) };
    let diag = |sign: i64| Matrix::from_fn(n, n, |r, c| if r == c { pw(sign * d[r]) } else { ring.zero() });
    Ok(GroupElement { matrix: diag(1), inverse: diag(-1), provenance: Provenance::Torus { index: i, param: x.to_string() } })
}

/// n_i = u_{α_i}(1)·u_{−α_i}(−1)·u_{α_i}(1).
pub fn simple_reflection_rep(rep: &LieRepresentation, i: usize) -> GroupElement<Q> {
    let m = rep.root_system().positive_count();
    let one = Q::one();
    let a = root_group_element(rep, &Rationals, i, &one);
    let b = root_group_element(rep, &Rationals, m + i, &-one.clone());
    let p = GroupElement::product(&Rationals, &GroupElement::product(&Rationals, &a, &b), &a);
    GroupElement { provenance: Provenance::WeylRep { word: vec![i + 1] }, ..p }
}

/// n(w): product of the n_i along the word of w.
pub fn weyl_representative<R: DiffRing>(rep: &LieRepresentation, ring: &R, w: &WeylElement) -> GroupElement<R::Elem> {
    let n = rep.size();
    let mut g = GroupElement::identity(&Rationals, n);
    for &i in &w.word {
        g = GroupElement::product(&Rationals, &g, &simple_reflection_rep(rep, i - 1));
    }
    g.provenance = Provenance::WeylRep { word: w.word.clone() };
    GroupElement::lift(ring, &g)
}
