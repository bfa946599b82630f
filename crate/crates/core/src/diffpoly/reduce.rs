use super::indet::Derivative;
use super::poly::{DiffPoly, Monomial};
use super::ranking::Ranking;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

pub fn leader(p: &DiffPoly, rk: &Ranking) -> Result<Derivative> {
    rk.max(p.derivatives()).ok_or(Error::ConstantPolynomial)
}

pub fn initial(p: &DiffPoly, rk: &Ranking) -> Result<DiffPoly> {
    let v = leader(p, rk)?;
    Ok(p.coeff_of_power(v, p.degree_in(v)))
}

pub fn separant(p: &DiffPoly, rk: &Ranking) -> Result<DiffPoly> {
    let v = leader(p, rk)?;
    Ok(p.partial(v))
}

/// One summand c·∂^order(eq_equation) of a membership witness.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessTerm {
    pub equation: usize,
    pub order: u32,
    pub cofactor: DiffPoly,
}

/// Result of pseudo-reduction: multiplier·p − remainder = Σ cofactor·∂^order(eq).
#[derive(Clone, Debug)]
pub struct PseudoReduction {
    pub remainder: DiffPoly,
    pub multiplier: DiffPoly,
    pub witness: Vec<WitnessTerm>,
    pub steps: usize,
}

impl PseudoReduction {
    /// Re-checks the membership identity against the original equations.
    pub fn verify(&self, p: &DiffPoly, eqs: &[DiffPoly]) -> bool {
        let mut lhs = &self.multiplier * p - &self.remainder;
        for w in &self.witness {
            lhs -= &(&w.cofactor * &eqs[w.equation].derive_n(w.order));
        }
        lhs.is_zero()
    }
}

struct EqData {
    leader: Derivative,
    degree: u32,
    initial: DiffPoly,
}

fn eq_data(eqs: &[DiffPoly], rk: &Ranking) -> Result<Vec<EqData>> {
    eqs.iter()
        .map(|e| {
            let leader = leader(e, rk)?;
            let degree = e.degree_in(leader);
            Ok(EqData { leader, degree, initial: e.coeff_of_power(leader, degree) })
        })
        .collect()
}

/// Finds the reduction to apply to v, if any: (equation, prolongation order).
fn reducer(v: Derivative, deg: u32, data: &[EqData], skip: Option<usize>) -> Option<(usize, u32)> {
    for (i, d) in data.iter().enumerate() {
        if Some(i) == skip || v.indet != d.leader.indet || v.order < d.leader.order {
            continue;
        }
        let k = v.order - d.leader.order;
        if k > 0 || deg >= d.degree {
            return Some((i, k));
        }
    }
    None
}

/// True when some derivative of p can be pseudo-reduced by an equation other than `skip`.
pub fn is_reducible(p: &DiffPoly, eqs: &[DiffPoly], rk: &Ranking, skip: Option<usize>) -> Result<bool> {
    let data = eq_data(eqs, rk)?;
    Ok(p.derivatives().into_iter().any(|v| reducer(v, p.degree_in(v), &data, skip).is_some()))
}

/// Ritt-style pseudo-reduction of p modulo eqs and their derivatives.
pub fn pseudo_reduce_by(p: &DiffPoly, eqs: &[DiffPoly], rk: &Ranking) -> Result<PseudoReduction> {
    let data = eq_data(eqs, rk)?;
    let mut r = p.clone();
    let mut mult = DiffPoly::one();
    let mut wit: BTreeMap<(usize, u32), DiffPoly> = BTreeMap::new();
    let mut prolonged: BTreeMap<(usize, u32), DiffPoly> = BTreeMap::new();
    let mut steps = 0;
    loop {
        let mut ders: Vec<Derivative> = r.derivatives().into_iter().collect();
        rk.sort_desc(&mut ders);
        let Some((v, (i, k))) = ders.iter().find_map(|&v| reducer(v, r.degree_in(v), &data, None).map(|x| (v, x))) else {
            break;
        };
        let divisor = prolonged.entry((i, k)).or_insert_with(|| eqs[i].derive_n(k)).clone();
        let (s, dd) = if k > 0 { (divisor.coeff_of_power(v, 1), 1) } else { (data[i].initial.clone(), data[i].degree) };
        debug_assert!(k == 0 || divisor.degree_in(v) == 1);
        while r.degree_in(v) >= dd {
            let d = r.degree_in(v);
            let lc = r.coeff_of_power(v, d);
            let q = lc.mul_monomial(&Monomial::power(v, d - dd), &crate::rational::qi(1));
            if s.is_one() {
                r = &r - &(&q * &divisor);
            } else {
                r = &(&s * &r) - &(&q * &divisor);
                mult = &s * &mult;
                for c in wit.values_mut() {
                    *c = &s * &*c;
                }
            }
            *wit.entry((i, k)).or_default() += q;
            steps += 1;
        }
    }
    let witness = wit
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((equation, order), cofactor)| WitnessTerm { equation, order, cofactor })
        .collect();
    Ok(PseudoReduction { remainder: r, multiplier: mult, witness, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// No equation or inequation is constant.
    NonConstant,
    /// Leaders pairwise distinct.
    DistinctLeaders,
    /// Initials and separants do not vanish (checked by the constant surrogate).
    NonvanishingInitials,
    /// Equations pseudo-reduced with respect to each other.
    MutuallyReduced,
    /// Inequations equal their pseudo-remainders.
    InequationsReduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Simple,
    NotSimple,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub verdict: Verdict,
    pub violations: Vec<(Condition, String)>,
    pub undecided: Vec<(Condition, String)>,
    /// Stronger than condition 2: no derivative anywhere in an equation is reducible by another.
    pub fully_autoreduced: bool,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.verdict == Verdict::Simple
    }
}

pub fn is_simple(eqs: &[DiffPoly], ineqs: &[DiffPoly], rk: &Ranking) -> SimplicityReport {
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    let all: Vec<&DiffPoly> = eqs.iter().chain(ineqs.iter()).collect();
    for p in &all {
        if p.is_constant() {
            violations.push((Condition::NonConstant, format!("{p}")));
        }
    }
    if !violations.is_empty() {
        return SimplicityReport { verdict: Verdict::NotSimple, violations, undecided, fully_autoreduced: false };
    }
    let leaders: Vec<Derivative> = all.iter().map(|p| leader(p, rk).expect("nonconstant")).collect();
    for i in 0..leaders.len() {
        for j in i + 1..leaders.len() {
            if leaders[i] == leaders[j] {
                violations.push((Condition::DistinctLeaders, format!("{}", leaders[i])));
            }
        }
    }
    for p in &all {
        for (what, x) in [("initial", initial(p, rk)), ("separant", separant(p, rk))] {
            let x = x.expect("nonconstant");
            match pseudo_reduce_by(&x, eqs, rk) {
                Ok(red) => match red.remainder.as_constant() {
                    Some(c) if c == num_traits::Zero::zero() => {
                        violations.push((Condition::NonvanishingInitials, format!("{what} of {p} reduces to 0")))
                    }
                    Some(_) => {}
                    None => undecided.push((Condition::NonvanishingInitials, format!("{what} of {p} is {}", red.remainder))),
                },
                Err(e) => violations.push((Condition::NonvanishingInitials, e.to_string())),
            }
        }
    }
    // Pseudo-reduction of p by p_j applies when their leaders involve the same indeterminate.
    let data = eq_data(eqs, rk).expect("nonconstant");
    let leader_reducible = |p: &DiffPoly, ld: Derivative, skip: Option<usize>| reducer(ld, p.degree_in(ld), &data, skip).is_some();
    for (i, p) in eqs.iter().enumerate() {
        if leader_reducible(p, leaders[i], Some(i)) {
            violations.push((Condition::MutuallyReduced, format!("{p}")));
        }
    }
    for (j, q) in ineqs.iter().enumerate() {
        if leader_reducible(q, leaders[eqs.len() + j], None) {
            violations.push((Condition::InequationsReduced, format!("{q}")));
        }
    }
    let fully_autoreduced = eqs.iter().enumerate().all(|(i, p)| !is_reducible(p, eqs, rk, Some(i)).unwrap_or(true));
    let verdict = if !violations.is_empty() {
        Verdict::NotSimple
    } else if !undecided.is_empty() {
        Verdict::Undecided
    } else {
        Verdict::Simple
    };
    SimplicityReport { verdict, violations, undecided, fully_autoreduced }
}
