use super::indet::{Derivative, DiffIndet};
use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Product of powers of derivatives, sorted by derivative, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Derivative, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(d: Derivative) -> Self {
        Monomial(vec![(d, 1)])
    }

    pub fn power(d: Derivative, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(d, e)])
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    pub fn from_factors(factors: impl IntoIterator<Item = (Derivative, u32)>) -> Self {
        let mut map: BTreeMap<Derivative, u32> = BTreeMap::new();
        for (d, e) in factors {
            if e > 0 {
                *map.entry(d).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Derivative, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        match self.0.binary_search_by(|(x, _)| x.cmp(&d)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Replaces the exponent of d (0 removes it).
    pub fn with_degree(&self, d: Derivative, e: u32) -> Monomial {
        let mut v = self.0.clone();
        match v.binary_search_by(|(x, _)| x.cmp(&d)) {
            Ok(i) => {
                if e == 0 {
                    v.remove(i);
                } else {
                    v[i].1 = e;
                }
            }
            Err(i) => {
                if e > 0 {
                    v.insert(i, (d, e));
                }
            }
        }
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(d, e)| other.degree_in(d) >= e)
    }

    /// self / other; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for &(d, e) in &other.0 {
            let cur = m.degree_in(d);
            assert!(cur >= e, "monomial not divisible");
            m = m.with_degree(d, cur - e);
        }
        m
    }

    /// Pure lexicographic comparison, larger derivatives dominating. A monomial order.
    pub fn lex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        let (mut i, mut j) = (self.0.len(), other.0.len());
        while i > 0 && j > 0 {
            let (a, b) = (self.0[i - 1], other.0[j - 1]);
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                std::cmp::Ordering::Equal => {
                    i -= 1;
                    j -= 1;
                }
                o => return o,
            }
        }
        i.cmp(&j)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(d, e)| {
                    let f = other.degree_in(d).min(e);
                    (f > 0).then_some((d, f))
                })
                .collect(),
        )
    }
}

/// Sparse differential polynomial with rational coefficients. Storage is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        DiffPoly::constant(crate::rational::qi(n))
    }

    pub fn var(d: Derivative) -> Self {
        DiffPoly::monomial(Monomial::var(d), Q::one())
    }

    pub fn indet(u: DiffIndet) -> Self {
        DiffPoly::var(u.base())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if p is a constant (including zero).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut result = DiffPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal total derivative; constants differentiate to zero.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for &(d, e) in m.factors() {
                let lowered = m.with_degree(d, e - 1);
                let nd = d.derive();
                let bump = lowered.with_degree(nd, lowered.degree_in(nd) + 1);
                out.add_term(bump, c * crate::rational::qi(e as i64));
            }
        }
        out
    }

    pub fn derive_n(&self, k: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derive();
        }
        p
    }

    pub fn derivatives(&self) -> BTreeSet<Derivative> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|&(d, _)| d)).collect()
    }

    pub fn indets(&self) -> BTreeSet<DiffIndet> {
        self.derivatives().into_iter().map(|d| d.indet).collect()
    }

    pub fn contains_indet(&self, u: DiffIndet) -> bool {
        self.terms.keys().any(|m| m.factors().iter().any(|(d, _)| d.indet == u))
    }

    pub fn contains(&self, d: Derivative) -> bool {
        self.terms.keys().any(|m| m.degree_in(d) > 0)
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        self.terms.keys().map(|m| m.degree_in(d)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Coefficients of p viewed as a univariate polynomial in d: index k holds the coefficient of d^k.
    pub fn coefficients_in(&self, d: Derivative) -> Vec<DiffPoly> {
        let deg = self.degree_in(d) as usize;
        let mut out = vec![DiffPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(d);
            out[e as usize].add_term(m.with_degree(d, 0), c.clone());
        }
        out
    }

    pub fn coeff_of_power(&self, d: Derivative, k: u32) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if m.degree_in(d) == k {
                out.add_term(m.with_degree(d, 0), c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to one derivative treated as an algebraic variable.
    pub fn partial(&self, d: Derivative) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(d);
            if e > 0 {
                out.add_term(m.with_degree(d, e - 1), c * crate::rational::qi(e as i64));
            }
        }
        out
    }

    /// Highest order of u occurring in p; None plays the role of −∞.
    pub fn order_in(&self, u: DiffIndet) -> Option<u32> {
        self.derivatives().into_iter().filter(|d| d.indet == u).map(|d| d.order).max()
    }

    /// Algebraic substitution: each derivative d with f(d) = Some(q) is replaced by q.
    pub fn substitute(&self, f: &mut dyn FnMut(Derivative) -> Option<DiffPoly>) -> DiffPoly {
        let mut cache: BTreeMap<Derivative, Option<DiffPoly>> = BTreeMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = DiffPoly::constant(c.clone());
            for &(d, e) in m.factors() {
                let img = cache.entry(d).or_insert_with(|| f(d)).clone();
                match img {
                    Some(q) => acc = &acc * &q.pow(e),
                    None => kept = kept.mul(&Monomial::power(d, e)),
                }
            }
            if kept.is_one() {
                out += acc;
            } else {
                out += acc.mul_monomial(&kept, &Q::one());
            }
        }
        out
    }

    /// Renames indeterminates, keeping derivative orders.
    pub fn map_indets(&self, f: &dyn Fn(DiffIndet) -> DiffIndet) -> DiffPoly {
        DiffPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors().iter().map(|&(d, e)| (f(d.indet).order(d.order), e))),
                c.clone(),
            )
        }))
    }

    /// Positive rational c such that p/c has coprime integer coefficients.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        Q::new(num, den).abs()
    }

    /// Gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect() }
    }

    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &DiffPoly) -> Option<DiffPoly> {
        let lead = |p: &DiffPoly| p.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0)).map(|(m, c)| (m.clone(), c.clone()));
        let (dm, dc) = lead(d)?;
        let mut rem = self.clone();
        let mut quot = DiffPoly::zero();
        while let Some((m, c)) = lead(&rem) {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = c / &dc;
            rem -= &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Terms scaled by the lcm of the denominators, together with that lcm.
    fn integer_terms(&self) -> (Vec<(&Monomial, BigInt)>, BigInt) {
        let den = self.terms.values().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let terms = self.terms.iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect();
        (terms, den)
    }

    /// Coefficient of the largest monomial in storage order.
    pub fn last_coefficient(&self) -> Option<&Q> {
        self.terms.values().next_back()
    }
}

impl From<Q> for DiffPoly {
    fn from(c: Q) -> Self {
        DiffPoly::constant(c)
    }
}

impl From<Derivative> for DiffPoly {
    fn from(d: Derivative) -> Self {
        DiffPoly::var(d)
    }
}

impl From<DiffIndet> for DiffPoly {
    fn from(u: DiffIndet) -> Self {
        DiffPoly::indet(u)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(mut self) -> DiffPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        if self.is_zero() || rhs.is_zero() {
            return DiffPoly::zero();
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        if small.terms.len() == 1 {
            let (m, c) = small.terms.iter().next().expect("one term");
            return large.mul_monomial(m, c);
        }
        // Clear denominators so the inner loop only touches integers.
        let (a, da) = small.integer_terms();
        let (b, db) = large.integer_terms();
        let mut acc: std::collections::HashMap<Monomial, BigInt> = std::collections::HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (m1, c1) in &a {
            for (m2, c2) in &b {
                let prod = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                }
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Q::new(c, den.clone())))
            .collect();
        DiffPoly { terms }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: DiffPoly) -> DiffPoly { (&self).$f(&rhs) }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: &DiffPoly) -> DiffPoly { (&self).$f(rhs) }
        }
        impl $tr<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: DiffPoly) -> DiffPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
