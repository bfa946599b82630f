use super::poly::DiffPoly;
use crate::error::{Error, Result};
use crate::rational::Q;
use num_traits::{One, Signed};

/// Fraction of differential polynomials; normalized by content and common monomial factor.
#[derive(Clone, Debug)]
pub struct DiffFrac {
    num: DiffPoly,
    den: DiffPoly,
}

impl DiffFrac {
    pub fn new(num: DiffPoly, den: DiffPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(DiffFrac::normalized(num, den))
    }

    pub fn from_poly(p: DiffPoly) -> Self {
        DiffFrac { num: p, den: DiffPoly::one() }
    }

    pub fn zero() -> Self {
        DiffFrac::from_poly(DiffPoly::zero())
    }

    pub fn one() -> Self {
        DiffFrac::from_poly(DiffPoly::one())
    }

    fn normalized(num: DiffPoly, den: DiffPoly) -> Self {
        if num.is_zero() {
            return DiffFrac::zero();
        }
        if let Some(c) = den.as_constant() {
            return DiffFrac { num: num.scale(&c.recip()), den: DiffPoly::one() };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_monomial(&g), den.div_monomial(&g)) };
        let mut c = den.content();
        if den.last_coefficient().is_some_and(|x| x.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            DiffFrac { num, den }
        } else {
            let inv = c.recip();
            DiffFrac { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &DiffPoly {
        &self.num
    }

    pub fn denom(&self) -> &DiffPoly {
        &self.den
    }

    pub fn into_parts(self) -> (DiffPoly, DiffPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is constant.
    pub fn as_poly(&self) -> Option<DiffPoly> {
        self.den.as_constant().map(|c| self.num.scale(&c.recip()))
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn add(&self, o: &DiffFrac) -> DiffFrac {
        if self.den == o.den {
            return DiffFrac::normalized(&self.num + &o.num, self.den.clone());
        }
        DiffFrac::normalized(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn neg(&self) -> DiffFrac {
        DiffFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &DiffFrac) -> DiffFrac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &DiffFrac) -> DiffFrac {
        DiffFrac::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inverse(&self) -> Result<DiffFrac> {
        DiffFrac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &DiffFrac) -> Result<DiffFrac> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn derive(&self) -> DiffFrac {
        if self.den.is_constant() {
            return DiffFrac::normalized(self.num.derive(), self.den.clone());
        }
        let n = &self.num.derive() * &self.den - &self.num * &self.den.derive();
        DiffFrac::normalized(n, &self.den * &self.den)
    }

    pub fn scale(&self, c: &Q) -> DiffFrac {
        DiffFrac::normalized(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for DiffFrac {
    fn eq(&self, o: &DiffFrac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl From<DiffPoly> for DiffFrac {
    fn from(p: DiffPoly) -> Self {
        DiffFrac::from_poly(p)
    }
}
