//! Differential coefficient rings used by the Lie-algebra layer.

use crate::diffpoly::{Derivative, DiffFrac, DiffIndet, DiffPoly, TriangularSystem};
use std::collections::HashMap;
use crate::rational::Q;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// A commutative differential ring given as an object acting on its elements.
pub trait DiffRing {
    type Elem: Clone + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn from_rational(&self, q: &Q) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
    /// Semantic zero test.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse when it exists in this ring.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn one(&self) -> Self::Elem {
        self.from_rational(&Q::one())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, a: &Self::Elem, q: &Q) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    /// Cheap structural test; may return false for elements that are semantically zero.
    fn is_trivially_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

/// The constants: derivation is zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl DiffRing for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn from_rational(&self, q: &Q) -> Q {
        q.clone()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a.clone()
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn derive(&self, _: &Q) -> Q {
        Q::zero()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// The free differential polynomial ring.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolyRing;

impl DiffRing for PolyRing {
    type Elem = DiffPoly;
    fn zero(&self) -> DiffPoly {
        DiffPoly::zero()
    }
    fn from_rational(&self, q: &Q) -> DiffPoly {
        DiffPoly::constant(q.clone())
    }
    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a + b
    }
    fn neg(&self, a: &DiffPoly) -> DiffPoly {
        -a
    }
    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a - b
    }
    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a * b
    }
    fn scale(&self, a: &DiffPoly, q: &Q) -> DiffPoly {
        a.scale(q)
    }
    fn derive(&self, a: &DiffPoly) -> DiffPoly {
        a.derive()
    }
    fn is_zero(&self, a: &DiffPoly) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &DiffPoly) -> Option<DiffPoly> {
        a.as_constant().filter(|c| !c.is_zero()).map(|c| DiffPoly::constant(c.recip()))
    }
    fn pow(&self, a: &DiffPoly, e: u32) -> DiffPoly {
        a.pow(e)
    }
}

/// The fraction field of the free differential polynomial ring.
#[derive(Clone, Copy, Debug, Default)]
pub struct FracRing;

impl DiffRing for FracRing {
    type Elem = DiffFrac;
    fn zero(&self) -> DiffFrac {
        DiffFrac::zero()
    }
    fn from_rational(&self, q: &Q) -> DiffFrac {
        DiffFrac::from_poly(DiffPoly::constant(q.clone()))
    }
    fn add(&self, a: &DiffFrac, b: &DiffFrac) -> DiffFrac {
        a.add(b)
    }
    fn neg(&self, a: &DiffFrac) -> DiffFrac {
        a.neg()
    }
    fn mul(&self, a: &DiffFrac, b: &DiffFrac) -> DiffFrac {
        a.mul(b)
    }
    fn derive(&self, a: &DiffFrac) -> DiffFrac {
        a.derive()
    }
    fn is_zero(&self, a: &DiffFrac) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &DiffFrac) -> Option<DiffFrac> {
        a.inverse().ok()
    }
}

/// Normal forms modulo a solved triangular system. The initials are constants, so the
/// quotient stays polynomial.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    sys: Arc<TriangularSystem>,
}

impl QuotientRing {
    pub fn new(sys: Arc<TriangularSystem>) -> Self {
        QuotientRing { sys }
    }

    pub fn system(&self) -> &Arc<TriangularSystem> {
        &self.sys
    }

    pub fn reduce(&self, p: &DiffPoly) -> DiffPoly {
        self.sys.normal_form(p)
    }
}

impl DiffRing for QuotientRing {
    type Elem = DiffPoly;
    fn zero(&self) -> DiffPoly {
        DiffPoly::zero()
    }
    fn from_rational(&self, q: &Q) -> DiffPoly {
        DiffPoly::constant(q.clone())
    }
    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a + b
    }
    fn neg(&self, a: &DiffPoly) -> DiffPoly {
        -a
    }
    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a - b
    }
    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a * b
    }
    fn derive(&self, a: &DiffPoly) -> DiffPoly {
        self.sys.normal_form(&a.derive())
    }
    fn is_zero(&self, a: &DiffPoly) -> bool {
        self.sys.normal_form(a).is_zero()
    }
    fn is_trivially_zero(&self, a: &DiffPoly) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &DiffPoly) -> Option<DiffPoly> {
        self.sys.normal_form(a).as_constant().filter(|c| !c.is_zero()).map(|c| DiffPoly::constant(c.recip()))
    }
}

/// Image of p under the differential homomorphism sending each indeterminate u to assign(u).
pub fn evaluate<R: DiffRing>(ring: &R, p: &DiffPoly, assign: &mut dyn FnMut(DiffIndet) -> R::Elem) -> R::Elem {
    let mut cache: HashMap<Derivative, R::Elem> = HashMap::new();
    let mut value = |d: Derivative, cache: &mut HashMap<Derivative, R::Elem>| -> R::Elem {
        if let Some(v) = cache.get(&d) {
            return v.clone();
        }
        let base = d.indet.order(0);
        let mut cur = match cache.get(&base) {
            Some(v) => v.clone(),
            None => {
                let v = assign(d.indet);
                cache.insert(base, v.clone());
                v
            }
        };
        for k in 1..=d.order {
            let dk = d.indet.order(k);
            cur = match cache.get(&dk) {
                Some(v) => v.clone(),
                None => {
                    let v = ring.derive(&cur);
                    cache.insert(dk, v.clone());
                    v
                }
            };
        }
        cur
    };
    let mut acc = ring.zero();
    for (m, c) in p.terms() {
        let mut t = ring.from_rational(c);
        for &(d, e) in m.factors() {
            let v = value(d, &mut cache);
            t = ring.mul(&t, &ring.pow(&v, e));
        }
        acc = ring.add(&acc, &t);
    }
    acc
}
