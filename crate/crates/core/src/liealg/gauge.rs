use super::element::LieElement;
use super::group::{root_group_element, GroupElement};
use super::rep::{BasisLabel, LieRepresentation};
use crate::diffpoly::{indet, DiffPoly};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::rational::Q;
use crate::ring::{DiffRing, PolyRing, Rationals};
use crate::rootsys::WeylElement;
use num_traits::Zero;
use std::sync::Arc;

/// ℓδ(g) = g′·g⁻¹, extracted with a residual check.
pub fn log_derivative<R: DiffRing>(rep: &Arc<LieRepresentation>, ring: &R, g: &GroupElement<R::Elem>) -> Result<LieElement<R::Elem>> {
    let m = matrix::mul(ring, &matrix::derive(ring, &g.matrix), &g.inverse);
    LieElement::extract(rep, ring, &m)
}

/// Ad(g)(A) = g·A·g⁻¹.
pub fn adjoint<R: DiffRing>(ring: &R, g: &GroupElement<R::Elem>, a: &LieElement<R::Elem>) -> Result<LieElement<R::Elem>> {
    let m = a.materialize(ring);
    let c = matrix::mul(ring, &matrix::mul(ring, &g.matrix, &m), &g.inverse);
    LieElement::extract(a.rep(), ring, &c)
}

/// g·A = Ad(g)(A) + ℓδ(g).
pub fn gauge<R: DiffRing>(ring: &R, g: &GroupElement<R::Elem>, a: &LieElement<R::Elem>) -> Result<LieElement<R::Elem>> {
    let m = a.materialize(ring);
    let gm = matrix::add(ring, &matrix::mul(ring, &g.matrix, &m), &matrix::derive(ring, &g.matrix));
    let c = matrix::mul(ring, &gm, &g.inverse);
    LieElement::extract(a.rep(), ring, &c)
}

/// Coefficients of Ad(u_β(x))(X_α) = Σ c_i x^i X_{α+iβ}, with the β-string bounds through α.
#[derive(Clone, Debug, PartialEq)]
pub struct StringCoeffs {
    pub r: i64,
    pub q: i64,
    pub coeffs: Vec<Q>,
}

pub fn adjoint_string_coeffs(rep: &Arc<LieRepresentation>, beta: usize, alpha: usize) -> Result<StringCoeffs> {
    let rs = rep.root_system();
    if alpha == beta || alpha == rs.negate(beta) {
        return Err(Error::DependentRoots);
    }
    let x = DiffPoly::indet(indet::aux(0));
    let u = root_group_element(rep, &PolyRing, beta, &x);
    let mut coords = vec![DiffPoly::zero(); rep.dim()];
    coords[rep.index(BasisLabel::X(alpha))] = DiffPoly::one();
    let xa = LieElement::new(rep.clone(), coords)?;
    let img = adjoint(&PolyRing, &u, &xa)?;
    let (r, q) = rs.string_bounds(beta, alpha);
    let mut coeffs = Vec::new();
    let mut expected = vec![false; rep.dim()];
    let mut cur = alpha;
    for i in 0..=q {
        if i > 0 {
            cur = rs.add_roots(cur, beta).ok_or_else(|| Error::Verification("broken root string".into()))?;
        }
        let k = rep.index(BasisLabel::X(cur));
        expected[k] = true;
        let c = &img.coords()[k];
        let want = crate::diffpoly::Monomial::power(indet::aux(0).base(), i as u32);
        if c.num_terms() != 1 || c.coeff(&want).is_zero() {
            return Err(Error::Verification(format!("coefficient of X_{cur} is not a monomial of degree {i}")));
        }
        coeffs.push(c.coeff(&want));
    }
    for (k, c) in img.coords().iter().enumerate() {
        if !expected[k] && !c.is_zero() {
            return Err(Error::Verification("adjoint action leaves the root string".into()));
        }
    }
    Ok(StringCoeffs { r, q, coeffs })
}

/// Permutation of roots induced by conjugation with a torus-normalizing rational matrix.
pub fn weyl_action_from_matrix(rep: &LieRepresentation, m: &Matrix<Q>) -> Result<WeylElement> {
    let n = rep.size();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension { expected: n, got: m.rows() });
    }
    let inv = m.inverse_q().ok_or_else(|| Error::NotInvertible("matrix".into()))?;
    let rs = rep.root_system();
    let l = rep.rank();
    let mut action = Vec::with_capacity(rs.num_roots());
    for a in 0..rs.num_roots() {
        let c = m.mul_q(rep.x(a)).mul_q(&inv);
        let coords = rep.coordinates_q(&c).ok_or(Error::NotNormalizing)?;
        let nz: Vec<usize> = (0..coords.len()).filter(|&k| !coords[k].is_zero()).collect();
        match nz.as_slice() {
            [k] if *k >= l => action.push(k - l),
            _ => return Err(Error::NotNormalizing),
        }
    }
    rs.weyl_from_action(action)
}

/// Lifts a Weyl representative's conjugation check: Ad(n(w)) maps X_α into the w(α) root space.
pub fn weyl_rep_permutes(rep: &Arc<LieRepresentation>, w: &WeylElement) -> bool {
    let g = super::group::weyl_representative(rep, &Rationals, w);
    match weyl_action_from_matrix(rep, &g.matrix) {
        Ok(v) => v == *w,
        Err(_) => false,
    }
}
