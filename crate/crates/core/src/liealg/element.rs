use super::rep::{BasisLabel, LieRepresentation};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ring::DiffRing;
use std::sync::Arc;

/// Element of the Lie algebra in Chevalley coordinates: H_1..H_l, then X_α by root index.
#[derive(Clone, Debug)]
pub struct LieElement<E> {
    rep: Arc<LieRepresentation>,
    coords: Vec<E>,
}

impl<E: Clone> LieElement<E> {
    pub fn new(rep: Arc<LieRepresentation>, coords: Vec<E>) -> Result<Self> {
        if coords.len() != rep.dim() {
            return Err(Error::Dimension { expected: rep.dim(), got: coords.len() });
        }
        Ok(LieElement { rep, coords })
    }

    pub fn rep(&self) -> &Arc<LieRepresentation> {
        &self.rep
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }

    pub fn coord(&self, label: BasisLabel) -> &E {
        &self.coords[self.rep.index(label)]
    }

    pub fn h(&self, i: usize) -> &E {
        self.coord(BasisLabel::H(i))
    }

    pub fn x(&self, root: usize) -> &E {
        self.coord(BasisLabel::X(root))
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> LieElement<F> {
        LieElement { rep: self.rep.clone(), coords: self.coords.iter().map(f).collect() }
    }

    pub fn try_map<F: Clone>(&self, f: impl FnMut(&E) -> Result<F>) -> Result<LieElement<F>> {
        Ok(LieElement { rep: self.rep.clone(), coords: self.coords.iter().map(f).collect::<Result<_>>()? })
    }
}

impl<E: Clone> LieElement<E> {
    pub fn zero<R: DiffRing<Elem = E>>(rep: Arc<LieRepresentation>, ring: &R) -> Self {
        let coords = vec![ring.zero(); rep.dim()];
        LieElement { rep, coords }
    }

    pub fn materialize<R: DiffRing<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let n = self.rep.size();
        let mut m = matrix::zeros(ring, n, n);
        for (k, c) in self.coords.iter().enumerate() {
            if ring.is_trivially_zero(c) {
                continue;
            }
            for (r, col, w) in self.rep.basis_sparse(k) {
                let v = ring.add(m.get(*r, *col), &ring.scale(c, w));
                m.set(*r, *col, v);
            }
        }
        m
    }

    /// Coordinates of a matrix with a residual check; fails if the matrix leaves the algebra.
    pub fn extract<R: DiffRing<Elem = E>>(rep: &Arc<LieRepresentation>, ring: &R, m: &Matrix<E>) -> Result<Self> {
        let coords: Vec<E> = (0..rep.dim())
            .map(|k| {
                rep.functional(k).iter().fold(ring.zero(), |acc, (r, c, w)| {
                    let x = m.get(*r, *c);
                    if ring.is_trivially_zero(x) {
                        acc
                    } else {
                        ring.add(&acc, &ring.scale(x, w))
                    }
                })
            })
            .collect();
        let el = LieElement { rep: rep.clone(), coords };
        let back = el.materialize(ring);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let (a, b) = (m.get(r, c), back.get(r, c));
                if ring.is_trivially_zero(a) && ring.is_trivially_zero(b) {
                    continue;
                }
                if !ring.is_zero(&ring.sub(a, b)) {
                    return Err(Error::Residual { row: r, col: c });
                }
            }
        }
        Ok(el)
    }

    pub fn add<R: DiffRing<Elem = E>>(&self, ring: &R, o: &LieElement<E>) -> LieElement<E> {
        LieElement { rep: self.rep.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| ring.add(a, b)).collect() }
    }

    pub fn sub<R: DiffRing<Elem = E>>(&self, ring: &R, o: &LieElement<E>) -> LieElement<E> {
        LieElement { rep: self.rep.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| ring.sub(a, b)).collect() }
    }

    /// Coordinate-wise semantic equality.
    pub fn equals<R: DiffRing<Elem = E>>(&self, ring: &R, o: &LieElement<E>) -> bool {
        self.coords.iter().zip(&o.coords).all(|(a, b)| ring.equal(a, b))
    }

    /// Indices of coordinates that are not zero in the ring.
    pub fn support<R: DiffRing<Elem = E>>(&self, ring: &R) -> Vec<usize> {
        (0..self.coords.len()).filter(|&k| !ring.is_zero(&self.coords[k])).collect()
    }
}
