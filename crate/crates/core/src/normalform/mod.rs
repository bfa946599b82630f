//! Complementary roots, the normal form matrix, and the three-step gauge reduction of the
//! generic element to normal form.

mod ext;

pub use ext::{ExtRing, MonomialExtElem};

use crate::diffpoly::{indet, DiffIndet, DiffPoly, IndetClass, TriangularSystem};
use crate::error::{Error, Result};
use crate::gaugegen::{b_indet, build_sw, generic_element, u_w_roots, SwSystem};
use crate::liealg::{gauge, root_group_element, torus_element, weyl_representative, BasisLabel, GroupElement, LieElement, LieRepresentation, Provenance};
use crate::matrix::Matrix;
use crate::rational::Q;
use crate::ring::{evaluate, DiffRing, PolyRing, QuotientRing};
use crate::rootsys::{RootSystem, WeylElement};
use num_traits::{One, Zero};
use serde::Serialize;
use std::sync::Arc;

/// Rank data for one grade: the image of grade −(height+1) under ad(·)(A₀⁺) and the roots
/// chosen to complement it in grade −height.
#[derive(Clone, Debug, Serialize)]
pub struct GradeCertificate {
    pub height: i64,
    pub grade_dim: usize,
    pub image_rank: usize,
    pub chosen: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementarySet {
    /// Positive root indices, sorted by height then index.
    pub gamma: Vec<usize>,
    pub heights: Vec<i64>,
    pub certificate: Vec<GradeCertificate>,
}

/// Basis indices of grade −h (h ≥ 1: negative roots of height h; h = 0: the Cartan part).
fn grade_basis(rep: &LieRepresentation, h: i64) -> Vec<usize> {
    let rs = rep.root_system();
    let m = rs.positive_count();
    if h == 0 {
        return (0..rs.rank()).map(|i| rep.index(BasisLabel::H(i))).collect();
    }
    (0..m).filter(|&b| rs.height(b) == h).map(|b| rep.index(BasisLabel::X(m + b))).collect()
}

fn positive_of(rep: &LieRepresentation, k: usize) -> usize {
    let m = rep.root_system().positive_count();
    match rep.label(k) {
        BasisLabel::X(r) if r >= m => r - m,
        other => panic!("not a negative root vector: {other:?}"),
    }
}

fn a0_plus(rep: &LieRepresentation) -> Matrix<Q> {
    let n = rep.size();
    (0..rep.rank()).fold(Matrix::zero_q(n, n), |acc, i| {
        let x = rep.x(i);
        Matrix::from_fn(n, n, |r, c| acc.get(r, c) + x.get(r, c))
    })
}

/// Matrix of Y ↦ [Y, A₀⁺] from grade −(h+1) to grade −h in the grade bases.
fn grade_map(rep: &LieRepresentation, h: i64) -> Matrix<Q> {
    let target = grade_basis(rep, h);
    let source = grade_basis(rep, h + 1);
    let a = a0_plus(rep);
    let mut cols = Vec::with_capacity(source.len());
    for &s in &source {
        let br = rep.basis(s).bracket_q(&a);
        let co = rep.coordinates_q(&br).expect("bracket stays in the algebra");
        cols.push(target.iter().map(|&t| co[t].clone()).collect::<Vec<Q>>());
    }
    Matrix::from_fn(target.len(), source.len(), |r, c| cols[c][r].clone())
}

fn with_columns(m: &Matrix<Q>, extra: &[usize]) -> Matrix<Q> {
    Matrix::from_fn(m.rows(), m.cols() + extra.len(), |r, c| {
        if c < m.cols() {
            m.get(r, c).clone()
        } else if extra[c - m.cols()] == r {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

/// Complementary roots by exact rank computations per grade, lowest root index first.
pub fn complementary_roots(rep: &LieRepresentation) -> Result<ComplementarySet> {
    let rs = rep.root_system();
    let mut gamma = Vec::new();
    let mut certificate = Vec::new();
    for h in 0..=rs.max_height() {
        let target = grade_basis(rep, h);
        let l = grade_map(rep, h);
        let image_rank = l.rank();
        let mut chosen_pos: Vec<usize> = Vec::new();
        let mut rank = image_rank;
        if h > 0 {
            for pos in 0..target.len() {
                let mut trial = chosen_pos.clone();
                trial.push(pos);
                let r = with_columns(&l, &trial).rank();
                if r > rank {
                    rank = r;
                    chosen_pos = trial;
                }
            }
        }
        if rank != target.len() {
            return Err(Error::NoComplement(h));
        }
        let chosen: Vec<usize> = chosen_pos.iter().map(|&p| positive_of(rep, target[p])).collect();
        gamma.extend(chosen.iter().copied());
        certificate.push(GradeCertificate { height: h, grade_dim: target.len(), image_rank, chosen });
    }
    let heights: Vec<i64> = gamma.iter().map(|&g| rs.height(g)).collect();
    let mut exps = rs.exponents();
    exps.sort();
    if heights != exps {
        return Err(Error::Verification(format!("complementary heights {heights:?} differ from exponents {exps:?}")));
    }
    Ok(ComplementarySet { gamma, heights, certificate })
}

/// A₀⁺ + Σ t_i X_{−γ_i}.
pub fn normal_form_matrix<R: DiffRing>(rep: &Arc<LieRepresentation>, ring: &R, comp: &ComplementarySet, t: &[R::Elem]) -> Result<LieElement<R::Elem>> {
    if t.len() != comp.gamma.len() {
        return Err(Error::Dimension { expected: comp.gamma.len(), got: t.len() });
    }
    let m = rep.root_system().positive_count();
    let mut coords = vec![ring.zero(); rep.dim()];
    for i in 0..rep.rank() {
        coords[rep.index(BasisLabel::X(i))] = ring.one();
    }
    for (g, ti) in comp.gamma.iter().zip(t) {
        coords[rep.index(BasisLabel::X(m + g))] = ti.clone();
    }
    LieElement::new(rep.clone(), coords)
}

#[derive(Clone, Debug)]
pub struct Step1 {
    pub sw: SwSystem,
    pub system: Arc<TriangularSystem>,
    /// Coordinates of gauge(n(w)·u_w(b), A) reduced modulo S_w.
    pub h: LieElement<DiffPoly>,
}

impl Step1 {
    pub fn quotient(&self) -> QuotientRing {
        QuotientRing::new(self.system.clone())
    }

    /// h⁺_1..h⁺_l.
    pub fn h_plus(&self) -> Vec<DiffPoly> {
        (0..self.h.rep().rank()).map(|i| self.h.x(i).clone()).collect()
    }
}

pub fn step1_gauge(rep: &Arc<LieRepresentation>, w: &WeylElement) -> Result<Step1> {
    let sw = build_sw(rep, w)?;
    if !sw.resolving {
        return Err(Error::NotResolving);
    }
    let system = Arc::new(sw.triangular()?);
    let h = sw.gauged.map(|p| system.normal_form(p));
    let rs = rep.root_system();
    for r in rs.rank()..rs.positive_count() {
        if !h.x(r).is_zero() {
            return Err(Error::Verification(format!("positive non-simple coordinate {} does not vanish", r + 1)));
        }
    }
    for i in 0..rs.rank() {
        if h.x(i).is_zero() {
            return Err(Error::Verification(format!("h⁺_{} vanishes", i + 1)));
        }
    }
    Ok(Step1 { sw, system, h })
}

/// K as the fraction field of C{b_w, hp, hm, h0}: the coordinates of A expressed through the
/// reduced step-1 coordinates, with exact checks in both directions.
#[derive(Clone, Debug)]
pub struct Chart {
    /// A(hp, hm, h0) with the non-simple positive slots zero.
    pub h_element: LieElement<DiffPoly>,
    /// gauge((n(w)·u_w(b))⁻¹, h_element): the coordinates of A in the chart.
    pub a_element: LieElement<DiffPoly>,
    /// The free coefficient ring of the chart.
    pub coeffs: QuotientRing,
}

/// Chart symbol for basis element k.
pub fn chart_symbol(rep: &LieRepresentation, k: usize) -> Option<DiffIndet> {
    let rs = rep.root_system();
    let m = rs.positive_count();
    match rep.label(k) {
        BasisLabel::H(i) => Some(indet::h0(i as u32 + 1)),
        BasisLabel::X(a) if a < rs.rank() => Some(indet::hp(a as u32 + 1)),
        BasisLabel::X(a) if a < m => None,
        BasisLabel::X(a) => Some(indet::hm((a - m) as u32 + 1)),
    }
}

pub fn build_chart(rep: &Arc<LieRepresentation>, step1: &Step1) -> Result<Chart> {
    let coords: Vec<DiffPoly> = (0..rep.dim()).map(|k| chart_symbol(rep, k).map(DiffPoly::indet).unwrap_or_default()).collect();
    let h_element = LieElement::new(rep.clone(), coords)?;
    let a_element = gauge(&PolyRing, &step1.sw.group.inverted(), &h_element)?;
    let free = TriangularSystem::new(Vec::new(), Vec::new(), step1.sw.ranking.clone())?;
    let chart = Chart { h_element, a_element, coeffs: QuotientRing::new(Arc::new(free)) };

    // a ↦ a(b, η) annihilates S_w and sends the reduced h back to η.
    let generic = generic_element(rep);
    let mut to_chart = |u: DiffIndet| -> DiffPoly {
        match u.class {
            IndetClass::B => DiffPoly::indet(u),
            _ => {
                let k = generic.element.coords().iter().position(|p| *p == DiffPoly::indet(u)).expect("generic coordinate");
                chart.a_element.coords()[k].clone()
            }
        }
    };
    for (r, f) in &step1.sw.equations {
        if !evaluate(&PolyRing, f, &mut to_chart).is_zero() {
            return Err(Error::Verification(format!("chart does not annihilate f_{}", r + 1)));
        }
    }
    for k in 0..rep.dim() {
        if evaluate(&PolyRing, &step1.h.coords()[k], &mut to_chart) != chart.h_element.coords()[k] {
            return Err(Error::Verification(format!("chart does not invert step 1 at slot {}", slot_name(rep, k))));
        }
    }
    // η ↦ h(a, b) sends a(b, η) back to a modulo S_w.
    let quotient = step1.quotient();
    let mut from_chart = |u: DiffIndet| -> DiffPoly {
        match u.class {
            IndetClass::B => DiffPoly::indet(u),
            _ => {
                let k = (0..rep.dim()).find(|&k| chart_symbol(rep, k) == Some(u)).expect("chart symbol");
                step1.h.coords()[k].clone()
            }
        }
    };
    for k in 0..rep.dim() {
        let back = evaluate(&quotient, &chart.a_element.coords()[k], &mut from_chart);
        if !quotient.is_zero(&(&back - &generic.element.coords()[k])) {
            return Err(Error::Verification(format!("chart is not inverse to step 1 at slot {}", slot_name(rep, k))));
        }
    }
    Ok(chart)
}

/// Q = −(Cᵀ)⁻¹: x_i = Π_j h_j^{Q_ij} solves h_j·Π_i x_i^{α_j(H_i)} = 1.
pub fn step2_exponents(rs: &RootSystem) -> Result<Matrix<Q>> {
    let c = rs.cartan_q().transpose();
    let inv = c.inverse_q().ok_or_else(|| Error::NotInvertible("Cartan matrix".into()))?;
    Ok(inv.map(|x| -x))
}

#[derive(Clone, Debug)]
pub struct Step2 {
    pub q: Matrix<Q>,
    pub ext: ExtRing,
    /// x_1..x_l as elements h^{Q_i}.
    pub x: Vec<MonomialExtElem>,
    pub torus: GroupElement<MonomialExtElem>,
    pub g: LieElement<MonomialExtElem>,
}

/// Torus gauge of h = A(h⁺, h⁻, h⁰) over the coefficient ring `coeffs`, with the h⁺_j bound
/// as the base of the fractional powers.
pub fn step2_normalize(rep: &Arc<LieRepresentation>, coeffs: QuotientRing, h: &LieElement<DiffPoly>) -> Result<Step2> {
    let rs = rep.root_system();
    let l = rs.rank();
    let q = step2_exponents(rs)?;
    let ext = ExtRing::new(coeffs, (0..l).map(|i| h.x(i).clone()).collect())?;
    let x: Vec<MonomialExtElem> = (0..l).map(|i| ext.hpow(q.row(i))).collect();
    let factors = (0..l).map(|i| torus_element(rep, &ext, i, &x[i])).collect::<Result<Vec<_>>>()?;
    let torus = GroupElement::product_all(&ext, rep.size(), &factors);
    let h = h.map(|p| ext.lift(p));
    let g = gauge(&ext, &torus, &h)?;
    for i in 0..l {
        if !ext.equal(g.x(i), &ext.one()) {
            return Err(Error::NotNormalizing);
        }
        let predicted = (0..l).fold(h.h(i).clone(), |acc, j| ext.add(&acc, &ext.scale(&ext.log_derivative_of_bound(j), q.get(i, j))));
        if !ext.equal(g.h(i), &predicted) {
            return Err(Error::Verification(format!("Cartan coordinate {} differs from h⁰ + Σ Q·h′/h", i + 1)));
        }
    }
    for r in l..rs.positive_count() {
        if !ext.is_zero(g.x(r)) {
            return Err(Error::NotNormalizing);
        }
    }
    Ok(Step2 { q, ext, x, torus, g })
}

/// Symbols standing for the coordinates of A(g⁺, g⁻, g⁰) in the symbolic step-3 run.
pub fn g_minus_symbol(i: usize) -> DiffIndet {
    indet::am(i as u32 + 1)
}

pub fn g_zero_symbol(i: usize) -> DiffIndet {
    indet::a0(i as u32 + 1)
}

/// Step 3 with g⁻, g⁰ kept as the symbols am_i, a0_i and g⁺ = (1,…,1,0,…,0).
#[derive(Clone, Debug)]
pub struct Step3Symbolic {
    /// Per height k = 1..max height: (positive root β, parameter of u_{−β}).
    pub params: Vec<Vec<(usize, DiffPoly)>>,
    pub tbar: Vec<DiffPoly>,
    pub final_element: LieElement<DiffPoly>,
}

pub fn step3_symbolic(rep: &Arc<LieRepresentation>, comp: &ComplementarySet) -> Result<Step3Symbolic> {
    let rs = rep.root_system();
    let m = rs.positive_count();
    let mut coords = vec![DiffPoly::zero(); rep.dim()];
    for i in 0..rs.rank() {
        coords[rep.index(BasisLabel::X(i))] = DiffPoly::one();
        coords[rep.index(BasisLabel::H(i))] = DiffPoly::indet(g_zero_symbol(i));
    }
    for b in 0..m {
        coords[rep.index(BasisLabel::X(m + b))] = DiffPoly::indet(g_minus_symbol(b));
    }
    let mut e = LieElement::new(rep.clone(), coords)?;
    let mut params = Vec::new();
    for k in 1..=rs.max_height() {
        let target = grade_basis(rep, k - 1);
        let source = grade_basis(rep, k);
        let cert = &comp.certificate[(k - 1) as usize];
        let comp_pos: Vec<usize> = cert.chosen.iter().map(|&g| target.iter().position(|&t| t == rep.index(BasisLabel::X(m + g))).expect("in grade")).collect();
        let map = with_columns(&grade_map(rep, k - 1), &comp_pos);
        let pinv = map.right_inverse().ok_or(Error::Unsolvable(k))?;
        let v: Vec<DiffPoly> = target.iter().map(|&t| -e.coords()[t].clone()).collect();
        let mut step = Vec::with_capacity(source.len());
        let mut factors = Vec::with_capacity(source.len());
        for (si, &s) in source.iter().enumerate() {
            let p = v.iter().enumerate().fold(DiffPoly::zero(), |acc, (ti, vt)| acc + vt.scale(pinv.get(si, ti)));
            let beta = positive_of(rep, s);
            factors.push(root_group_element(rep, &PolyRing, m + beta, &p));
            step.push((beta, p));
        }
        let u = GroupElement::product_all(&PolyRing, rep.size(), &factors);
        e = gauge(&PolyRing, &u, &e)?;
        for (ti, &t) in target.iter().enumerate() {
            if !comp_pos.contains(&ti) && !e.coords()[t].is_zero() {
                return Err(Error::Unsolvable(k));
            }
        }
        params.push(step);
    }
    let tbar: Vec<DiffPoly> = comp.gamma.iter().map(|&g| e.x(m + g).clone()).collect();
    let expected = normal_form_matrix(rep, &PolyRing, comp, &tbar)?;
    if !expected.equals(&PolyRing, &e) {
        return Err(Error::Verification("step 3 did not reach the normal form shape".into()));
    }
    Ok(Step3Symbolic { params, tbar, final_element: e })
}

/// t̄_j is linear with constant coefficient in g⁻_{γ_j}, free of its proper derivatives and of
/// the later complementary slots.
pub fn check_tbar_structure(comp: &ComplementarySet, tbar: &[DiffPoly]) -> Result<()> {
    for (j, t) in tbar.iter().enumerate() {
        let own = g_minus_symbol(comp.gamma[j]);
        if t.order_in(own) != Some(0) {
            return Err(Error::Verification(format!("t̄_{} involves a proper derivative of {own} or not {own} at all", j + 1)));
        }
        let base = own.order(0);
        let lin = t.degree_in(base) == 1 && t.coeff_of_power(base, 1).as_constant().is_some_and(|c| !c.is_zero());
        if !lin {
            return Err(Error::Verification(format!("t̄_{} is not linear with constant coefficient in {own}", j + 1)));
        }
        for &later in &comp.gamma[j + 1..] {
            if t.contains_indet(g_minus_symbol(later)) {
                return Err(Error::Verification(format!("t̄_{} involves {}", j + 1, g_minus_symbol(later))));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Step3<E> {
    pub params: Vec<Vec<(usize, E)>>,
    pub tbar: Vec<E>,
    /// u_K ⋯ u_1.
    pub group: GroupElement<E>,
}

/// Instantiates the symbolic step 3 at the coordinates of g, which must satisfy
/// g⁺ = (1,…,1,0,…,0).
pub fn step3_transformation<R: DiffRing>(rep: &Arc<LieRepresentation>, ring: &R, g: &LieElement<R::Elem>, sym: &Step3Symbolic) -> Result<Step3<R::Elem>> {
    let rs = rep.root_system();
    let m = rs.positive_count();
    for r in 0..m {
        let want = if r < rs.rank() { ring.one() } else { ring.zero() };
        if !ring.equal(g.x(r), &want) {
            return Err(Error::NotNormalizing);
        }
    }
    let mut assign = |u: DiffIndet| match u.class {
        IndetClass::AMinus => g.x(m + u.index as usize - 1).clone(),
        IndetClass::AZero => g.h(u.index as usize - 1).clone(),
        _ => panic!("unexpected symbol {u} in step 3"),
    };
    let mut params = Vec::with_capacity(sym.params.len());
    let mut group = GroupElement::identity(ring, rep.size());
    for step in &sym.params {
        let vals: Vec<(usize, R::Elem)> = step.iter().map(|(b, p)| (*b, evaluate(ring, p, &mut assign))).collect();
        let factors: Vec<_> = vals.iter().map(|(b, p)| root_group_element(rep, ring, m + b, p)).collect();
        let u = GroupElement::product_all(ring, rep.size(), &factors);
        group = GroupElement::product(ring, &u, &group);
        params.push(vals);
    }
    let tbar = sym.tbar.iter().map(|p| evaluate(ring, p, &mut assign)).collect();
    Ok(Step3 { params, tbar, group })
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub rep: Arc<LieRepresentation>,
    pub w: WeylElement,
    pub complementary: ComplementarySet,
    pub step1: Step1,
    pub chart: Chart,
    pub step2: Step2,
    pub step3_symbolic: Step3Symbolic,
    pub step3: Step3<MonomialExtElem>,
    pub final_element: LieElement<MonomialExtElem>,
    /// u_K⋯u_1 · t(x) · n(w) · u_w(b) over the extension.
    pub accumulated: GroupElement<MonomialExtElem>,
    pub checks: Vec<PipelineCheck>,
}

impl NormalFormResult {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn tbar(&self) -> &[MonomialExtElem] {
        &self.step3.tbar
    }

    pub fn ext(&self) -> &ExtRing {
        &self.step2.ext
    }
}

/// Options for the pipeline; the independent re-gauge dominates the running time.
#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub regauge: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { regauge: true }
    }
}

pub fn normal_form_pipeline(rep: &Arc<LieRepresentation>) -> Result<NormalFormResult> {
    normal_form_pipeline_with(rep, PipelineOptions::default())
}

pub fn normal_form_pipeline_with(rep: &Arc<LieRepresentation>, opts: PipelineOptions) -> Result<NormalFormResult> {
    let rs = rep.root_system();
    let w = rs.longest_element();
    let complementary = complementary_roots(rep)?;
    let step1 = step1_gauge(rep, &w)?;
    let chart = build_chart(rep, &step1)?;
    let step2 = step2_normalize(rep, chart.coeffs.clone(), &chart.h_element)?;
    let ext = step2.ext.clone();
    let mut g = step2.g.clone();
    // Replace the normalized slots by their exact values.
    let m = rs.positive_count();
    let mut coords = g.coords().to_vec();
    for r in 0..m {
        coords[rep.index(BasisLabel::X(r))] = if r < rs.rank() { ext.one() } else { ext.zero() };
    }
    g = LieElement::new(rep.clone(), coords)?;
    let step3_symbolic = step3_symbolic(rep, &complementary)?;
    let step3 = step3_transformation(rep, &ext, &g, &step3_symbolic)?;
    let final_element = normal_form_matrix(rep, &ext, &complementary, &step3.tbar)?;

    let mut checks = vec![PipelineCheck {
        name: "chart".into(),
        passed: true,
        detail: "a(b, η) annihilates S_w and inverts step 1 in both directions".into(),
    }];
    let structure = check_tbar_structure(&complementary, &step3_symbolic.tbar);
    checks.push(PipelineCheck {
        name: "tbar-structure".into(),
        passed: structure.is_ok(),
        detail: structure.err().map(|e| e.to_string()).unwrap_or_default(),
    });
    let nonzero = step3.tbar.iter().all(|t| !ext.is_zero(t));
    checks.push(PipelineCheck { name: "tbar-nonzero".into(), passed: nonzero, detail: String::new() });
    let chained = gauge(&ext, &step3.group, &g)?;
    checks.push(PipelineCheck {
        name: "step3-gauge".into(),
        passed: chained.equals(&ext, &final_element),
        detail: "gauge(u_K⋯u_1, g) against A_G(t̄)".into(),
    });

    let nw: GroupElement<MonomialExtElem> = weyl_representative(rep, &ext, &w);
    let ub: Vec<GroupElement<MonomialExtElem>> = u_w_roots(rs, &w)
        .into_iter()
        .map(|beta| root_group_element(rep, &ext, beta, &ext.lift(&DiffPoly::indet(b_indet(rs, beta)))))
        .collect();
    let ub = GroupElement::product_all(&ext, rep.size(), &ub);
    let accumulated = GroupElement::product_all(&ext, rep.size(), &[step3.group.clone(), step2.torus.clone(), nw, ub]);
    if opts.regauge {
        let a = chart.a_element.map(|p| ext.lift(p));
        let direct = gauge(&ext, &accumulated, &a)?;
        checks.push(PipelineCheck {
            name: "independent-regauge".into(),
            passed: direct.equals(&ext, &final_element),
            detail: "gauge(accumulated, A) against A_G(t̄)".into(),
        });
    }
    Ok(NormalFormResult { rep: rep.clone(), w, complementary, step1, chart, step2, step3_symbolic, step3, final_element, accumulated, checks })
}

/// Transport from the chart to the original coordinates: η ↦ h(a, b), with the fractional
/// powers rebased on h⁺(a, b).
pub struct OriginalCoordinates {
    pub ext: ExtRing,
    h: Vec<DiffPoly>,
}

impl OriginalCoordinates {
    pub fn new(step1: &Step1) -> Result<Self> {
        let ext = ExtRing::new(step1.quotient(), step1.h_plus())?;
        Ok(OriginalCoordinates { ext, h: step1.h.coords().to_vec() })
    }

    pub fn transport(&self, rep: &LieRepresentation, x: &MonomialExtElem) -> MonomialExtElem {
        let q = self.ext.quotient();
        let mut assign = |u: DiffIndet| -> DiffPoly {
            match (0..rep.dim()).find(|&k| chart_symbol(rep, k) == Some(u)) {
                Some(k) => self.h[k].clone(),
                None => DiffPoly::indet(u),
            }
        };
        x.terms().fold(self.ext.zero(), |acc, (e, c)| {
            let c = evaluate(q, c, &mut assign);
            self.ext.add(&acc, &self.ext.mul(&self.ext.hpow(e), &self.ext.lift(&c)))
        })
    }
}

/// Re-gauges the generic A(a) in the original coordinates by the transported accumulated
/// element and compares with the transported normal form. Slow beyond rank 2.
pub fn verify_in_original_coordinates(res: &NormalFormResult) -> Result<bool> {
    let rep = &res.rep;
    let oc = OriginalCoordinates::new(&res.step1)?;
    let ext = &oc.ext;
    let tr = |m: &Matrix<MonomialExtElem>| m.map(|x| oc.transport(rep, x));
    let g = GroupElement { matrix: tr(&res.accumulated.matrix), inverse: tr(&res.accumulated.inverse), provenance: res.accumulated.provenance.clone() };
    let tbar: Vec<MonomialExtElem> = res.step3.tbar.iter().map(|t| oc.transport(rep, t)).collect();
    let target = normal_form_matrix(rep, ext, &res.complementary, &tbar)?;
    let a = generic_element(rep).element.map(|p| ext.lift(p));
    let direct = gauge(ext, &g, &a)?;
    Ok(direct.equals(ext, &target))
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotValue {
    pub slot: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepParam {
    pub height: usize,
    pub root: usize,
    pub value: String,
}

/// Self-describing serialization of a pipeline run.
#[derive(Clone, Debug, Serialize)]
pub struct NormalFormDocument {
    pub root_system: String,
    pub weyl_word: Vec<usize>,
    pub sw_equations: Vec<String>,
    /// h⁺_j in the original coordinates.
    pub bound_elements: Vec<String>,
    /// Coordinates of A in the chart variables hp, hm, h0 and b.
    pub chart: Vec<SlotValue>,
    pub complementary_roots: Vec<usize>,
    pub complementary_heights: Vec<i64>,
    pub exponent_matrix: Vec<Vec<String>>,
    pub step1_h: Vec<SlotValue>,
    pub step2_g: Vec<SlotValue>,
    pub step3_params: Vec<StepParam>,
    pub step3_params_symbolic: Vec<StepParam>,
    pub tbar: Vec<String>,
    pub tbar_symbolic: Vec<String>,
    pub final_element: Vec<SlotValue>,
    pub accumulated: Provenance,
    pub checks: Vec<PipelineCheck>,
    pub verified: bool,
}

fn slot_name(rep: &LieRepresentation, k: usize) -> String {
    let m = rep.root_system().positive_count();
    match rep.label(k) {
        BasisLabel::H(i) => format!("H_{}", i + 1),
        BasisLabel::X(r) if r < m => format!("X_{}", r + 1),
        BasisLabel::X(r) => format!("X_-{}", r - m + 1),
    }
}

fn slots<E: std::fmt::Display + Clone>(el: &LieElement<E>, skip_zero: impl Fn(&E) -> bool) -> Vec<SlotValue> {
    (0..el.coords().len())
        .filter(|&k| !skip_zero(&el.coords()[k]))
        .map(|k| SlotValue { slot: slot_name(el.rep(), k), value: el.coords()[k].to_string() })
        .collect()
}

impl NormalFormResult {
    pub fn document(&self) -> NormalFormDocument {
        let params = |ps: &[Vec<(usize, String)>]| {
            ps.iter()
                .enumerate()
                .flat_map(|(k, step)| step.iter().map(move |(b, v)| StepParam { height: k + 1, root: b + 1, value: v.clone() }))
                .collect::<Vec<_>>()
        };
        let num: Vec<Vec<(usize, String)>> = self.step3.params.iter().map(|s| s.iter().map(|(b, v)| (*b, v.to_string())).collect()).collect();
        let sym: Vec<Vec<(usize, String)>> = self.step3_symbolic.params.iter().map(|s| s.iter().map(|(b, v)| (*b, v.to_string())).collect()).collect();
        NormalFormDocument {
            root_system: self.rep.root_system().name(),
            weyl_word: self.w.word.clone(),
            sw_equations: self.step1.sw.equations.iter().map(|(_, p)| p.to_string()).collect(),
            bound_elements: self.step1.h_plus().iter().map(|p| p.to_string()).collect(),
            chart: slots(&self.chart.a_element, |p| p.is_zero()),
            complementary_roots: self.complementary.gamma.iter().map(|g| g + 1).collect(),
            complementary_heights: self.complementary.heights.clone(),
            exponent_matrix: self.step2.q.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            step1_h: slots(&self.step1.h, |p| p.is_zero()),
            step2_g: slots(&self.step2.g, |p| p.is_zero()),
            step3_params: params(&num),
            step3_params_symbolic: params(&sym),
            tbar: self.step3.tbar.iter().map(|t| t.to_string()).collect(),
            tbar_symbolic: self.step3_symbolic.tbar.iter().map(|t| t.to_string()).collect(),
            final_element: slots(&self.final_element, |p| p.is_zero()),
            accumulated: self.accumulated.provenance.clone(),
            checks: self.checks.clone(),
            verified: self.verified(),
        }
    }
}
