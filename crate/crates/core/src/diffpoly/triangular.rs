use super::frac::DiffFrac;
use super::indet::{Derivative, DiffIndet};
use super::poly::{DiffPoly, Monomial};
use super::ranking::Ranking;
use super::reduce::{self, PseudoReduction};
use crate::error::{Error, Result};
use crate::rational::Q;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

/// An equation linear in its leader with constant initial: original = initial·(leader − rhs).
#[derive(Clone, Debug, PartialEq)]
pub struct SolvedEquation {
    pub leader: Derivative,
    pub rhs: DiffPoly,
    pub original: DiffPoly,
    pub initial: Q,
    pub separant: DiffPoly,
}

impl SolvedEquation {
    pub fn solved_rhs(&self) -> DiffFrac {
        DiffFrac::from_poly(self.rhs.clone())
    }
}

/// Solved triangular system; reduction by it gives canonical representatives modulo the
/// differential ideal it generates.
pub struct TriangularSystem {
    equations: Vec<SolvedEquation>,
    inequations: Vec<DiffPoly>,
    ranking: Ranking,
    by_indet: HashMap<DiffIndet, usize>,
    cache: Mutex<HashMap<Derivative, DiffPoly>>,
}

impl fmt::Debug for TriangularSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriangularSystem")
            .field("equations", &self.equations)
            .field("inequations", &self.inequations)
            .finish()
    }
}

impl Clone for TriangularSystem {
    fn clone(&self) -> Self {
        TriangularSystem {
            equations: self.equations.clone(),
            inequations: self.inequations.clone(),
            ranking: self.ranking.clone(),
            by_indet: self.by_indet.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache poisoned").clone()),
        }
    }
}

impl TriangularSystem {
    pub fn new(equations: Vec<DiffPoly>, inequations: Vec<DiffPoly>, ranking: Ranking) -> Result<Self> {
        let mut solved = Vec::with_capacity(equations.len());
        let mut by_indet = HashMap::new();
        for (i, e) in equations.into_iter().enumerate() {
            let ld = reduce::leader(&e, &ranking)?;
            if e.degree_in(ld) != 1 {
                return Err(Error::NotTriangular(format!("{e} is not linear in {ld}")));
            }
            let init = e.coeff_of_power(ld, 1);
            let Some(c) = init.as_constant().filter(|c| !num_traits::Zero::is_zero(c)) else {
                return Err(Error::NotTriangular(format!("initial of {e} is not a nonzero constant")));
            };
            if by_indet.insert(ld.indet, i).is_some() {
                return Err(Error::NotTriangular(format!("leader indeterminate {} repeated", ld.indet)));
            }
            let rest = e.coeff_of_power(ld, 0);
            let rhs = rest.scale(&(-c.recip()));
            solved.push(SolvedEquation { leader: ld, rhs, separant: init, original: e, initial: c });
        }
        for eq in &solved {
            for d in eq.rhs.derivatives() {
                if let Some(&j) = by_indet.get(&d.indet) {
                    if d.order >= solved[j].leader.order && !ranking.greater(eq.leader, d) {
                        return Err(Error::NotTriangular(format!("{} depends on {d}", eq.leader)));
                    }
                }
            }
        }
        Ok(TriangularSystem { equations: solved, inequations, ranking, by_indet, cache: Mutex::new(HashMap::new()) })
    }

    pub fn equations(&self) -> &[SolvedEquation] {
        &self.equations
    }

    pub fn inequations(&self) -> &[DiffPoly] {
        &self.inequations
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn originals(&self) -> Vec<DiffPoly> {
        self.equations.iter().map(|e| e.original.clone()).collect()
    }

    /// True when d is a leader or a proper derivative of one.
    pub fn is_reducible(&self, d: Derivative) -> bool {
        self.by_indet.get(&d.indet).is_some_and(|&i| d.order >= self.equations[i].leader.order)
    }

    fn nf_derivative(&self, d: Derivative) -> Option<DiffPoly> {
        let &i = self.by_indet.get(&d.indet)?;
        let lo = self.equations[i].leader.order;
        if d.order < lo {
            return None;
        }
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(&d) {
            return Some(p.clone());
        }
        let val = if d.order == lo {
            self.normal_form(&self.equations[i].rhs)
        } else {
            let below = self.nf_derivative(Derivative { indet: d.indet, order: d.order - 1 }).expect("reducible");
            self.normal_form(&below.derive())
        };
        self.cache.lock().expect("cache poisoned").insert(d, val.clone());
        Some(val)
    }

    /// Canonical normal form: leaders and their derivatives replaced by solved right-hand sides.
    pub fn normal_form(&self, p: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            if m.factors().iter().all(|&(d, _)| !self.is_reducible(d)) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut acc = DiffPoly::constant(c.clone());
            let mut kept = Monomial::one();
            for &(d, e) in m.factors() {
                match self.nf_derivative(d) {
                    Some(img) => acc = &acc * &img.pow(e),
                    None => kept = kept.mul(&Monomial::power(d, e)),
                }
            }
            out += acc.mul_monomial(&kept, &crate::rational::qi(1));
        }
        out
    }

    pub fn reduce_frac(&self, f: &DiffFrac) -> Result<DiffFrac> {
        let den = self.normal_form(f.denom());
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        DiffFrac::new(self.normal_form(f.numer()), den)
    }

    pub fn is_zero_mod(&self, p: &DiffPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn pseudo_reduce(&self, p: &DiffPoly) -> Result<PseudoReduction> {
        reduce::pseudo_reduce_by(p, &self.originals(), &self.ranking)
    }
}
