//! The generic element A, the unipotent products u_w(b_w), and the systems S_w.

use crate::diffpoly::{self, indet, DiffIndet, DiffPoly, Ranking, SimplicityReport, TriangularSystem};
use crate::error::{Error, Result};
use crate::liealg::{gauge, root_group_element, weyl_representative, BasisLabel, GroupElement, LieElement, LieRepresentation};
use crate::ring::PolyRing;
use crate::rootsys::{RootSystem, WeylElement};
use num_traits::Zero;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct GenericConnection {
    pub rep: Arc<LieRepresentation>,
    pub element: LieElement<DiffPoly>,
}

/// Indeterminate attached to a basis element of the generic element.
pub fn generic_indet(rep: &LieRepresentation, k: usize) -> DiffIndet {
    let m = rep.root_system().positive_count();
    match rep.label(k) {
        BasisLabel::H(i) => indet::a0(i as u32 + 1),
        BasisLabel::X(a) if a < m => indet::ap(a as u32 + 1),
        BasisLabel::X(a) => indet::am((a - m) as u32 + 1),
    }
}

/// A = Σ a⁺_i X_{α_i} + Σ a⁻_i X_{−α_i} + Σ a⁰_i H_i.
pub fn generic_element(rep: &Arc<LieRepresentation>) -> GenericConnection {
    let coords = (0..rep.dim()).map(|k| DiffPoly::indet(generic_indet(rep, k))).collect();
    GenericConnection { rep: rep.clone(), element: LieElement::new(rep.clone(), coords).expect("dimension") }
}

/// b_i attached to the negative root −α_i.
pub fn b_indet(rs: &RootSystem, neg_root: usize) -> DiffIndet {
    indet::b((rs.negate(neg_root)) as u32 + 1)
}

/// Negative roots carrying b-parameters: Ψ for resolving w, else w(Φ⁺) ∩ Φ⁻. Ascending.
pub fn u_w_roots(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    let chk = rs.is_resolving(w);
    match chk.psi {
        Some(psi) if chk.resolving => psi.into_iter().collect(),
        _ => rs.inversion_negatives(w),
    }
}

/// u_w(b_w) = Π u_{−α_i}(b_i) over u_w_roots, ascending root index.
pub fn u_w_product(rep: &Arc<LieRepresentation>, w: &WeylElement) -> GroupElement<DiffPoly> {
    let rs = rep.root_system();
    let factors: Vec<_> = u_w_roots(rs, w)
        .into_iter()
        .map(|beta| root_group_element(rep, &PolyRing, beta, &DiffPoly::indet(b_indet(rs, beta))))
        .collect();
    GroupElement::product_all(&PolyRing, rep.size(), &factors)
}

#[derive(Clone, Debug)]
pub struct SwSystem {
    pub w: WeylElement,
    pub resolving: bool,
    /// w⁻¹(Φ⁺∖Δ) when it lies in Φ⁻.
    pub psi: Option<Vec<usize>>,
    pub b_roots: Vec<usize>,
    /// (positive non-simple root index r, coefficient of X_{α_r}).
    pub equations: Vec<(usize, DiffPoly)>,
    pub gauged: LieElement<DiffPoly>,
    pub group: GroupElement<DiffPoly>,
    pub ranking: Ranking,
}

impl SwSystem {
    pub fn polys(&self) -> Vec<DiffPoly> {
        self.equations.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn triangular(&self) -> Result<TriangularSystem> {
        TriangularSystem::new(self.polys(), Vec::new(), self.ranking.clone())
    }
}

pub fn build_sw(rep: &Arc<LieRepresentation>, w: &WeylElement) -> Result<SwSystem> {
    let rs = rep.root_system();
    let chk = rs.is_resolving(w);
    let a = generic_element(rep);
    let g = GroupElement::product(&PolyRing, &weyl_representative(rep, &PolyRing, w), &u_w_product(rep, w));
    let gauged = gauge(&PolyRing, &g, &a.element)?;
    let equations = (rs.rank()..rs.positive_count()).map(|r| (r, gauged.x(r).clone())).collect();
    Ok(SwSystem {
        w: w.clone(),
        resolving: chk.resolving,
        psi: chk.psi.map(|s| s.into_iter().collect()),
        b_roots: u_w_roots(rs, w),
        equations,
        gauged,
        group: g,
        ranking: Ranking::adapted(rs),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StatementCheck {
    pub statement: u8,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub checks: Vec<StatementCheck>,
    pub simplicity: SimplicityReport,
    /// Whether the literal "no a⁻_j of smaller height" reading of statement 5 also holds.
    pub statement5_literal: bool,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks statements 1, 2, 3 and 5 of the structure theorem for S_w; statement 4 (primality)
/// is recorded as a cited fact.
pub fn verify_sw_theorem(rep: &Arc<LieRepresentation>, sys: &SwSystem) -> Result<TheoremReport> {
    if !sys.resolving {
        return Err(Error::NotResolving);
    }
    let rs = rep.root_system();
    let rk = &sys.ranking;
    let polys = sys.polys();
    let simplicity = diffpoly::is_simple(&polys, &[], rk);
    let mut checks = vec![StatementCheck {
        statement: 1,
        passed: simplicity.is_simple(),
        detail: format!("{:?}", simplicity.verdict),
    }];
    let inv = sys.w.inverse();
    let mut s2 = (true, String::new());
    let mut s3 = (true, String::new());
    let mut s5 = (true, String::new());
    let mut literal = true;
    for (r, f) in &sys.equations {
        let neg = inv.apply(*r);
        if rs.is_positive(neg) {
            return Err(Error::NotResolving);
        }
        let i = rs.negate(neg);
        let want = indet::b(i as u32 + 1).order(1);
        match diffpoly::leader(f, rk) {
            Ok(ld) if ld == want => {}
            Ok(ld) => s2 = (false, format!("leader of f_{} is {ld}, expected {want}", r + 1)),
            Err(e) => s2 = (false, format!("f_{}: {e}", r + 1)),
        }
        if f.degree_in(want) != 1 || f.coeff_of_power(want, 1).as_constant().is_none_or(|c| c.is_zero()) {
            s3 = (false, format!("f_{} is not linear in {want} with constant initial", r + 1));
        }
        let ai = indet::am(i as u32 + 1).base();
        let lin = f.degree_in(ai) == 1 && f.coeff_of_power(ai, 1).as_constant().is_some_and(|c| !c.is_zero());
        if !lin {
            s5 = (false, format!("f_{} does not contain {ai} linearly with constant coefficient", r + 1));
        }
        for u in f.indets() {
            if u.class == diffpoly::IndetClass::AMinus {
                let j = u.index as usize - 1;
                if j != i && rs.height(j) >= rs.height(i) {
                    s5 = (false, format!("f_{} contains {u}, not lower in height than {ai}", r + 1));
                }
                if rs.height(j) < rs.height(i) {
                    literal = false;
                }
            }
        }
    }
    checks.push(StatementCheck { statement: 2, passed: s2.0, detail: s2.1 });
    checks.push(StatementCheck { statement: 3, passed: s3.0, detail: s3.1 });
    checks.push(StatementCheck { statement: 4, passed: true, detail: "primality of the generated ideal is cited, not re-proved".into() });
    checks.push(StatementCheck { statement: 5, passed: s5.0, detail: s5.1 });
    Ok(TheoremReport { checks, simplicity, statement5_literal: literal })
}
