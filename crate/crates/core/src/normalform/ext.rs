//! Formal products h^q·c with rational exponent vectors q over bound elements h_1..h_l of the
//! quotient field, c a normal form modulo the triangular system.

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::rational::{floor_q, parse_q, qi, Q};
use crate::ring::{DiffRing, QuotientRing};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Finite sum of h^q·c. Normalized: at most one term per class of q modulo ℤ^l, and no
/// coefficient divisible by a nonconstant h_j.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialExtElem {
    terms: BTreeMap<Vec<Q>, DiffPoly>,
}

impl MonomialExtElem {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Q>, &DiffPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raw construction without normalization.
    pub fn from_raw(terms: impl IntoIterator<Item = (Vec<Q>, DiffPoly)>) -> Self {
        let mut out: BTreeMap<Vec<Q>, DiffPoly> = BTreeMap::new();
        for (q, c) in terms {
            *out.entry(q).or_default() += &c;
        }
        out.retain(|_, c| !c.is_zero());
        MonomialExtElem { terms: out }
    }

    /// The coefficient when the element is h^0·c.
    pub fn as_poly(&self) -> Option<DiffPoly> {
        match self.terms.len() {
            0 => Some(DiffPoly::zero()),
            1 => {
                let (q, c) = self.terms.iter().next().expect("one term");
                q.iter().all(|x| x.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Display for MonomialExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if q.iter().all(|x| x.is_zero()) {
                write!(f, "({c})")?;
            } else {
                let qs: Vec<String> = q.iter().map(|x| x.to_string()).collect();
                write!(f, "hpow({})*({c})", qs.join(","))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for MonomialExtElem {
    type Err = Error;

    /// Parses the printed form; exponent vectors of the terms must have equal length.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(MonomialExtElem::default());
        }
        let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let bytes = s.as_bytes();
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' if depth == 0 => {
                    parts.push((start, &s[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
            i += 1;
        }
        parts.push((start, &s[start..]));
        let mut terms = Vec::new();
        let mut len = None;
        for (pos, part) in parts {
            let part = part.trim();
            let (q, rest) = if let Some(r) = part.strip_prefix("hpow(") {
                let close = r.find(')').ok_or_else(|| perr(pos, "unclosed hpow"))?;
                let q = r[..close]
                    .split(',')
                    .map(|x| parse_q(x.trim()).ok_or_else(|| perr(pos, "bad exponent")))
                    .collect::<Result<Vec<Q>>>()?;
                let rest = r[close + 1..].strip_prefix('*').ok_or_else(|| perr(pos, "expected '*' after hpow"))?;
                (Some(q), rest)
            } else {
                (None, part)
            };
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| perr(pos, "coefficient must be parenthesized"))?;
            let c: DiffPoly = inner.parse()?;
            if let Some(q) = &q {
                if len.is_some_and(|l| l != q.len()) {
                    return Err(perr(pos, "exponent vectors differ in length"));
                }
                len = Some(q.len());
            }
            terms.push((q, c));
        }
        let l = len.unwrap_or(0);
        Ok(MonomialExtElem::from_raw(terms.into_iter().map(|(q, c)| (q.unwrap_or_else(|| vec![Q::zero(); l]), c))))
    }
}

#[derive(Debug)]
struct ExtContext {
    quotient: QuotientRing,
    h: Vec<DiffPoly>,
    dh: Vec<DiffPoly>,
}

/// The differential ring K(h^q) with the h_j bound to normal forms.
#[derive(Clone, Debug)]
pub struct ExtRing {
    ctx: Arc<ExtContext>,
}

impl ExtRing {
    /// Fails when some h_j is zero in the quotient.
    pub fn new(quotient: QuotientRing, h: Vec<DiffPoly>) -> Result<Self> {
        let h: Vec<DiffPoly> = h.iter().map(|p| quotient.reduce(p)).collect();
        if let Some(j) = h.iter().position(|p| p.is_zero()) {
            return Err(Error::NotInvertible(format!("bound element h_{} is zero", j + 1)));
        }
        let dh = h.iter().map(|p| quotient.derive(p)).collect();
        Ok(ExtRing { ctx: Arc::new(ExtContext { quotient, h, dh }) })
    }

    pub fn len(&self) -> usize {
        self.ctx.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.h.is_empty()
    }

    pub fn bound(&self) -> &[DiffPoly] {
        &self.ctx.h
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.ctx.quotient
    }

    /// h^q.
    pub fn hpow(&self, q: &[Q]) -> MonomialExtElem {
        assert_eq!(q.len(), self.len(), "exponent length");
        self.normalize(vec![(q.to_vec(), DiffPoly::one())])
    }

    /// h_j′/h_j.
    pub fn log_derivative_of_bound(&self, j: usize) -> MonomialExtElem {
        let mut q = vec![Q::zero(); self.len()];
        q[j] = qi(-1);
        self.normalize(vec![(q, self.ctx.dh[j].clone())])
    }

    /// Image of a polynomial of the base ring.
    pub fn lift(&self, p: &DiffPoly) -> MonomialExtElem {
        self.normalize(vec![(vec![Q::zero(); self.len()], self.ctx.quotient.reduce(p))])
    }

    /// Parses the printed form and normalizes it in this ring.
    pub fn parse(&self, s: &str) -> Result<MonomialExtElem> {
        let raw: MonomialExtElem = s.parse()?;
        if raw.terms.keys().any(|q| q.len() != self.len()) {
            return Err(Error::Dimension { expected: self.len(), got: raw.terms.keys().next().map_or(0, |q| q.len()) });
        }
        Ok(self.normalize(raw.terms.into_iter().map(|(q, c)| (q, self.ctx.quotient.reduce(&c))).collect()))
    }

    /// Coefficients are assumed reduced.
    fn normalize(&self, raw: Vec<(Vec<Q>, DiffPoly)>) -> MonomialExtElem {
        let mut classes: BTreeMap<Vec<Q>, Vec<(Vec<Q>, DiffPoly)>> = BTreeMap::new();
        for (q, c) in raw {
            if c.is_zero() {
                continue;
            }
            let key: Vec<Q> = q.iter().map(|x| x - floor_q(x)).collect();
            classes.entry(key).or_default().push((q, c));
        }
        let mut terms = BTreeMap::new();
        for (_, mut group) in classes {
            let (mut q, mut c) = if group.len() == 1 {
                group.pop().expect("one term")
            } else {
                let l = self.len();
                let qmin: Vec<Q> = (0..l).map(|j| group.iter().map(|(q, _)| q[j].clone()).min().expect("nonempty")).collect();
                let mut sum = DiffPoly::zero();
                for (q, c) in &group {
                    let mut t = c.clone();
                    for j in 0..l {
                        let k = crate::rational::to_i64(&(&q[j] - &qmin[j])).expect("integral shift");
                        if k > 0 {
                            t = &t * &self.ctx.h[j].pow(k as u32);
                        }
                    }
                    sum += &t;
                }
                (qmin, sum)
            };
            if c.is_zero() {
                continue;
            }
            for j in 0..self.len() {
                let hj = &self.ctx.h[j];
                if hj.is_constant() {
                    continue;
                }
                while let Some(d) = c.div_exact(hj) {
                    c = d;
                    q[j] += Q::one();
                }
            }
            terms.insert(q, c);
        }
        MonomialExtElem { terms }
    }
}

impl DiffRing for ExtRing {
    type Elem = MonomialExtElem;

    fn zero(&self) -> MonomialExtElem {
        MonomialExtElem::default()
    }

    fn from_rational(&self, q: &Q) -> MonomialExtElem {
        self.normalize(vec![(vec![Q::zero(); self.len()], DiffPoly::constant(q.clone()))])
    }

    fn add(&self, a: &MonomialExtElem, b: &MonomialExtElem) -> MonomialExtElem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        self.normalize(a.terms.iter().chain(&b.terms).map(|(q, c)| (q.clone(), c.clone())).collect())
    }

    fn neg(&self, a: &MonomialExtElem) -> MonomialExtElem {
        MonomialExtElem { terms: a.terms.iter().map(|(q, c)| (q.clone(), -c)).collect() }
    }

    fn mul(&self, a: &MonomialExtElem, b: &MonomialExtElem) -> MonomialExtElem {
        if a.is_zero() || b.is_zero() {
            return MonomialExtElem::default();
        }
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (qa, ca) in &a.terms {
            for (qb, cb) in &b.terms {
                let q = qa.iter().zip(qb).map(|(x, y)| x + y).collect();
                raw.push((q, ca * cb));
            }
        }
        self.normalize(raw)
    }

    fn scale(&self, a: &MonomialExtElem, q: &Q) -> MonomialExtElem {
        if q.is_zero() {
            return MonomialExtElem::default();
        }
        MonomialExtElem { terms: a.terms.iter().map(|(e, c)| (e.clone(), c.scale(q))).collect() }
    }

    /// (h^q·c)′ = h^q·c′ + Σ_j q_j·h^{q−e_j}·h_j′·c.
    fn derive(&self, a: &MonomialExtElem) -> MonomialExtElem {
        let mut raw = Vec::new();
        for (q, c) in &a.terms {
            raw.push((q.clone(), self.ctx.quotient.derive(c)));
            for (j, qj) in q.iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                let mut e = q.clone();
                e[j] -= Q::one();
                raw.push((e, (c * &self.ctx.dh[j]).scale(qj)));
            }
        }
        self.normalize(raw)
    }

    fn is_zero(&self, a: &MonomialExtElem) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &MonomialExtElem) -> Option<MonomialExtElem> {
        if a.terms.len() != 1 {
            return None;
        }
        let (q, c) = a.terms.iter().next().expect("one term");
        let c = c.as_constant().filter(|c| !c.is_zero())?;
        Some(MonomialExtElem { terms: BTreeMap::from([(q.iter().map(|x| -x).collect(), DiffPoly::constant(c.recip()))]) })
    }
}
