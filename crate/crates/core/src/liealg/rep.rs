use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{qi, Q};
use crate::rootsys::{euclidean_simple_roots, Family, RootSystem};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Label of a Chevalley basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    /// H_i, 0-based simple index.
    H(usize),
    /// X_α for a root index.
    X(usize),
}

type Sparse = Vec<(usize, usize, Q)>;

/// Chevalley basis of a classical Lie algebra as exact n×n matrices.
#[derive(Clone, Debug)]
pub struct LieRepresentation {
    rs: RootSystem,
    n: usize,
    basis: Vec<Matrix<Q>>,
    sparse: Vec<Sparse>,
    functionals: Vec<Sparse>,
}

fn sparse_of(m: &Matrix<Q>) -> Sparse {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                out.push((r, c, m.get(r, c).clone()));
            }
        }
    }
    out
}

/// Weights of the standard basis vectors, in the euclidean realization of the roots.
fn weights(family: Family, l: usize) -> Vec<Vec<i64>> {
    let unit = |dim: usize, i: usize, s: i64| {
        let mut v = vec![0; dim];
        v[i] = s;
        v
    };
    match family {
        Family::A => (0..=l).map(|k| unit(l + 1, k, 1)).collect(),
        Family::B => (0..2 * l + 1)
            .map(|k| match k.cmp(&l) {
                std::cmp::Ordering::Less => unit(l, k, 1),
                std::cmp::Ordering::Equal => vec![0; l],
                std::cmp::Ordering::Greater => unit(l, 2 * l - k, -1),
            })
            .collect(),
        Family::C | Family::D => {
            (0..2 * l).map(|k| if k < l { unit(l, k, 1) } else { unit(l, 2 * l - 1 - k, -1) }).collect()
        }
    }
}

/// Matrix of the invariant bilinear form (None for type A).
fn form(family: Family, l: usize, n: usize) -> Option<Matrix<Q>> {
    match family {
        Family::A => None,
        Family::B | Family::D => Some(Matrix::from_fn(n, n, |r, c| if r + c == n - 1 { Q::one() } else { Q::zero() })),
        Family::C => Some(Matrix::from_fn(n, n, |r, c| {
            if r + c != n - 1 {
                Q::zero()
            } else if r < l {
                Q::one()
            } else {
                -Q::one()
            }
        })),
    }
}

/// Primitive integer generator of a one-dimensional root space.
fn root_space(n: usize, wts: &[Vec<i64>], target: &[i64], j: Option<&Matrix<Q>>) -> Result<Matrix<Q>> {
    let mut pos = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let d: Vec<i64> = wts[a].iter().zip(&wts[b]).map(|(x, y)| x - y).collect();
            if d == target {
                pos.push((a, b));
            }
        }
    }
    if pos.is_empty() {
        return Err(Error::Verification("empty root space".into()));
    }
    let vec = match j {
        None if pos.len() == 1 => vec![Q::one()],
        None => return Err(Error::Verification("root space not one-dimensional".into())),
        Some(j) => {
            // X^T J + J X = 0, entry (a, b): Σ_k X_ka J_kb + Σ_k J_ak X_kb.
            let mut rows = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let row: Vec<Q> = pos
                        .iter()
                        .map(|&(p, q)| {
                            let mut v = Q::zero();
                            if q == a {
                                v += j.get(p, b);
                            }
                            if q == b {
                                v += j.get(a, p);
                            }
                            v
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let ns = if rows.is_empty() {
                (0..pos.len()).map(|k| (0..pos.len()).map(|t| if t == k { Q::one() } else { Q::zero() }).collect()).collect()
            } else {
                Matrix::from_rows(rows).nullspace()
            };
            if ns.len() != 1 {
                return Err(Error::Verification("root space not one-dimensional".into()));
            }
            ns.into_iter().next().expect("one vector")
        }
    };
    let lcm = vec.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Q> = vec.iter().map(|x| x * Q::from_integer(lcm.clone())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    let scale = Q::new(num_bigint::BigInt::from(sign), g);
    let mut m = Matrix::zero_q(n, n);
    for (&(a, b), x) in pos.iter().zip(&ints) {
        m.set(a, b, x * &scale);
    }
    Ok(m)
}

/// Scalar c with a = c·b, when it exists.
fn ratio(a: &Matrix<Q>, b: &Matrix<Q>) -> Option<Q> {
    let (r, c) = (0..b.rows()).flat_map(|r| (0..b.cols()).map(move |c| (r, c))).find(|&(r, c)| !b.get(r, c).is_zero())?;
    let s = a.get(r, c) / b.get(r, c);
    let ok = (0..b.rows()).all(|r| (0..b.cols()).all(|c| a.get(r, c) == &(&s * b.get(r, c))));
    ok.then_some(s)
}

impl LieRepresentation {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let family = rs.family();
        let l = rs.rank();
        let m = rs.positive_count();
        let n = match family {
            Family::A => l + 1,
            Family::B => 2 * l + 1,
            Family::C | Family::D => 2 * l,
        };
        let wts = weights(family, l);
        let j = form(family, l, n);
        let simple = euclidean_simple_roots(family, l);
        let eucl = |root: usize| -> Vec<i64> {
            let dim = simple[0].len();
            (0..dim)
                .map(|d| {
                    let v: Q = rs.root(root).iter().zip(&simple).map(|(c, s)| qi(*c) * &s[d]).sum();
                    crate::rational::to_i64(&v).expect("integral weight")
                })
                .collect()
        };
        let mut x: Vec<Option<Matrix<Q>>> = vec![None; 2 * m];
        for i in 0..l {
            x[i] = Some(root_space(n, &wts, &eucl(i), j.as_ref())?);
        }
        for g in l..m {
            let i = (0..l)
                .find(|&i| {
                    let v: Vec<i64> = rs.root(g).iter().zip(rs.root(i)).map(|(a, b)| a - b).collect();
                    rs.find(&v).is_some_and(|b| rs.is_positive(b))
                })
                .expect("non-simple positive root has a simple predecessor");
            let v: Vec<i64> = rs.root(g).iter().zip(rs.root(i)).map(|(a, b)| a - b).collect();
            let beta = rs.find(&v).expect("root");
            let (r, _) = rs.string_bounds(i, beta);
            let br = x[i].as_ref().expect("simple").bracket_q(x[beta].as_ref().expect("earlier root"));
            let inv = qi(r + 1).recip();
            let xg = br.map(|e| e * &inv);
            if xg.is_zero_q() {
                return Err(Error::Verification(format!("vanishing bracket for root {g}")));
            }
            x[g] = Some(xg);
        }
        for g in 0..m {
            let neg: Vec<i64> = eucl(g).iter().map(|v| -v).collect();
            let y = root_space(n, &wts, &neg, j.as_ref())?;
            let xg = x[g].as_ref().expect("positive");
            let z = xg.bracket_q(&y);
            let c = ratio(&z.bracket_q(xg), xg).ok_or_else(|| Error::Verification("bad coroot".into()))?;
            let s = qi(2) / c;
            x[m + g] = Some(y.map(|e| e * &s));
        }
        let x: Vec<Matrix<Q>> = x.into_iter().map(|o| o.expect("all roots")).collect();
        let h: Vec<Matrix<Q>> = (0..l).map(|i| x[i].bracket_q(&x[m + i])).collect();
        let mut basis = h;
        basis.extend(x);
        let sparse: Vec<Sparse> = basis.iter().map(sparse_of).collect();
        let d = basis.len();
        // Pivot positions give an invertible square minor S; functionals are rows of S⁻¹.
        let bt = Matrix::from_fn(d, n * n, |k, p| basis[k].get(p / n, p % n).clone());
        let (_, piv) = bt.rref();
        if piv.len() != d {
            return Err(Error::Verification("basis matrices are linearly dependent".into()));
        }
        let s = Matrix::from_fn(d, d, |r, k| bt.get(k, piv[r]).clone());
        let sinv = s.inverse_q().ok_or_else(|| Error::Verification("singular minor".into()))?;
        let functionals = (0..d)
            .map(|k| {
                (0..d)
                    .filter(|&r| !sinv.get(k, r).is_zero())
                    .map(|r| (piv[r] / n, piv[r] % n, sinv.get(k, r).clone()))
                    .collect()
            })
            .collect();
        let rep = LieRepresentation { rs: rs.clone(), n, basis, sparse, functionals };
        rep.check_invariants()?;
        Ok(rep)
    }

    fn check_invariants(&self) -> Result<()> {
        let l = self.rank();
        for i in 0..l {
            let hi = self.h(i);
            if (0..self.n).any(|r| (0..self.n).any(|c| r != c && !hi.get(r, c).is_zero())) {
                return Err(Error::Verification("Cartan element not diagonal".into()));
            }
            for a in 0..self.rs.num_roots() {
                let want = qi(self.rs.pairing(a, i));
                let br = hi.bracket_q(self.x(a));
                if ratio(&br, self.x(a)) != Some(want) && !(br.is_zero_q() && self.rs.pairing(a, i) == 0) {
                    return Err(Error::Verification(format!("[H_{}, X_{a}] has the wrong eigenvalue", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, label: BasisLabel) -> usize {
        match label {
            BasisLabel::H(i) => i,
            BasisLabel::X(a) => self.rank() + a,
        }
    }

    pub fn label(&self, k: usize) -> BasisLabel {
        if k < self.rank() {
            BasisLabel::H(k)
        } else {
            BasisLabel::X(k - self.rank())
        }
    }

    pub fn basis(&self, k: usize) -> &Matrix<Q> {
        &self.basis[k]
    }

    pub(crate) fn basis_sparse(&self, k: usize) -> &[(usize, usize, Q)] {
        &self.sparse[k]
    }

    pub(crate) fn functional(&self, k: usize) -> &[(usize, usize, Q)] {
        &self.functionals[k]
    }

    pub fn h(&self, i: usize) -> &Matrix<Q> {
        &self.basis[i]
    }

    pub fn x(&self, root: usize) -> &Matrix<Q> {
        &self.basis[self.rank() + root]
    }

    /// H_α = [X_α, X_{−α}].
    pub fn coroot(&self, root: usize) -> Matrix<Q> {
        self.x(root).bracket_q(self.x(self.rs.negate(root)))
    }

    /// Grade of a basis element: 0 on the Cartan part, the root height otherwise.
    pub fn grade(&self, k: usize) -> i64 {
        match self.label(k) {
            BasisLabel::H(_) => 0,
            BasisLabel::X(a) => self.rs.height(a),
        }
    }

    /// Coordinates of a rational matrix, or None when it is not in the algebra.
    pub fn coordinates_q(&self, m: &Matrix<Q>) -> Option<Vec<Q>> {
        let coords: Vec<Q> = (0..self.dim())
            .map(|k| self.functionals[k].iter().map(|(r, c, w)| w * m.get(*r, *c)).sum())
            .collect();
        let mut back = Matrix::zero_q(self.n, self.n);
        for (k, ck) in coords.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (r, c, w) in &self.sparse[k] {
                let v = back.get(*r, *c) + ck * w;
                back.set(*r, *c, v);
            }
        }
        (back == *m).then_some(coords)
    }

    /// N_{α,β} with [X_α, X_β] = N·X_{α+β}; None when α + β is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> Option<Q> {
        let s = self.rs.add_roots(a, b)?;
        ratio(&self.x(a).bracket_q(self.x(b)), self.x(s))
    }
}
