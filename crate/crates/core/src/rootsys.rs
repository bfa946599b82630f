//! Root systems of classical type in simple-root coordinates, and their Weyl groups.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{qi, to_i64, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Invalid(format!("unknown family {s:?}"))),
        }
    }
}

/// Roots are indexed 0..2m: index i < m is the i-th positive root, m + i its negative.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    roots: Vec<Vec<i64>>,
    heights: Vec<i64>,
    cartan: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, usize>,
    reflections: Vec<Vec<usize>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family && self.rank == o.rank
    }
}

/// Euclidean coordinates of the simple roots (one realization per family).
pub fn euclidean_simple_roots(family: Family, rank: usize) -> Vec<Vec<Q>> {
    let l = rank;
    let dim = if family == Family::A { l + 1 } else { l };
    let e = |i: usize, c: i64| {
        let mut v = vec![Q::zero(); dim];
        v[i] = qi(c);
        v
    };
    let diff = |i: usize, j: usize, s: i64| {
        let mut v = e(i, 1);
        v[j] += qi(s);
        v
    };
    (0..l)
        .map(|i| match family {
            Family::A => diff(i, i + 1, -1),
            _ if i + 1 < l => diff(i, i + 1, -1),
            Family::B => e(l - 1, 1),
            Family::C => e(l - 1, 2),
            Family::D => diff(l - 2, l - 1, 1),
        })
        .collect()
}

fn euclidean_positive_roots(family: Family, rank: usize) -> Vec<Vec<Q>> {
    let l = rank;
    let dim = if family == Family::A { l + 1 } else { l };
    let mut out = Vec::new();
    let vec_of = |pairs: &[(usize, i64)]| {
        let mut v = vec![Q::zero(); dim];
        for &(i, c) in pairs {
            v[i] += qi(c);
        }
        v
    };
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(vec_of(&[(i, 1), (j, -1)]));
            if family != Family::A {
                out.push(vec_of(&[(i, 1), (j, 1)]));
            }
        }
        match family {
            Family::B => out.push(vec_of(&[(i, 1)])),
            Family::C => out.push(vec_of(&[(i, 2)])),
            _ => {}
        }
    }
    out
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(Error::UnsupportedRootSystem { family: family.letter(), rank });
        }
        let l = rank;
        let simple = euclidean_simple_roots(family, l);
        let dim = simple[0].len();
        let st = Matrix::from_fn(dim, l, |r, c| simple[c][r].clone());
        let mut pos: Vec<Vec<i64>> = euclidean_positive_roots(family, l)
            .iter()
            .map(|v| {
                let c = st.solve_particular(v).expect("root in span of simple roots");
                c.iter().map(|x| to_i64(x).expect("integral root coordinates")).collect()
            })
            .collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let m = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let heights = roots.iter().map(|v| v.iter().sum()).collect();
        let cartan = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let v = qi(2) * dot(&simple[i], &simple[j]) / dot(&simple[i], &simple[i]);
                        to_i64(&v).expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let lookup = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut rs = RootSystem { family, rank: l, roots, heights, cartan, lookup, reflections: Vec::new() };
        rs.reflections = (0..l)
            .map(|i| {
                (0..2 * m)
                    .map(|k| {
                        let p = rs.pairing(k, i);
                        let mut v = rs.roots[k].clone();
                        v[i] -= p;
                        rs.find(&v).expect("reflection maps roots to roots")
                    })
                    .collect()
            })
            .collect();
        Ok(rs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Number m of positive roots.
    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Rows/columns indexed by simple roots; entry (i, j) is α_j(H_i) = 2(α_i, α_j)/(α_i, α_i).
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_q(&self) -> Matrix<Q> {
        Matrix::from_fn(self.rank, self.rank, |i, j| qi(self.cartan[i][j]))
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.positive_count()
    }

    pub fn is_simple(&self, i: usize) -> bool {
        i < self.rank
    }

    pub fn negate(&self, i: usize) -> usize {
        let m = self.positive_count();
        if i < m {
            i + m
        } else {
            i - m
        }
    }

    pub fn find(&self, v: &[i64]) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// β(H_i) for simple index i (0-based).
    pub fn pairing(&self, beta: usize, i: usize) -> i64 {
        self.roots[beta].iter().zip(&self.cartan[i]).map(|(c, a)| c * a).sum()
    }

    /// s_i(β) for simple index i (0-based).
    pub fn reflect(&self, i: usize, beta: usize) -> usize {
        self.reflections[i][beta]
    }

    pub fn add_roots(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.find(&v)
    }

    /// Largest r with β − rα a root, and largest q with β + qα a root.
    pub fn string_bounds(&self, alpha: usize, beta: usize) -> (i64, i64) {
        let step = |sign: i64| {
            let mut k = 0;
            loop {
                let v: Vec<i64> =
                    self.roots[beta].iter().zip(&self.roots[alpha]).map(|(b, a)| b + sign * (k + 1) * a).collect();
                if self.find(&v).is_none() {
                    return k;
                }
                k += 1;
            }
        };
        (step(-1), step(1))
    }

    /// Multiset of exponents read off from the height distribution of positive roots.
    pub fn exponents(&self) -> Vec<i64> {
        let h = self.max_height();
        let count = |k: i64| (0..self.positive_count()).filter(|&i| self.heights[i] == k).count() as i64;
        let mut out = Vec::new();
        for k in 1..=h {
            for _ in 0..(count(k) - count(k + 1)) {
                out.push(k);
            }
        }
        out
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { word: Vec::new(), action: (0..self.num_roots()).collect() }
    }

    /// Product of simple reflections s_{w[0]}⋯s_{w[k−1]}; indices are 1-based.
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut action: Vec<usize> = (0..self.num_roots()).collect();
        for &i in word.iter().rev() {
            if i == 0 || i > self.rank {
                return Err(Error::ReflectionIndex(i));
            }
            for a in action.iter_mut() {
                *a = self.reflect(i - 1, *a);
            }
        }
        Ok(WeylElement { word: word.to_vec(), action })
    }

    /// Shortest word with the given action, found by descent.
    pub fn reduced_word(&self, action: &[usize]) -> Result<Vec<usize>> {
        let mut cur = action.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| !self.is_positive(cur[i])) {
            word.push(i + 1);
            cur = (0..self.num_roots()).map(|k| cur[self.reflect(i, k)]).collect();
            if word.len() > self.positive_count() {
                return Err(Error::Invalid("action is not a Weyl group element".into()));
            }
        }
        if cur.iter().enumerate().any(|(k, &v)| k != v) {
            return Err(Error::Invalid("action is not a Weyl group element".into()));
        }
        word.reverse();
        Ok(word)
    }

    pub fn weyl_from_action(&self, action: Vec<usize>) -> Result<WeylElement> {
        if action.len() != self.num_roots() {
            return Err(Error::Dimension { expected: self.num_roots(), got: action.len() });
        }
        let word = self.reduced_word(&action)?;
        Ok(WeylElement { word, action })
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank).find(|&i| self.is_positive(w.action[i])) {
            w.action = (0..self.num_roots()).map(|k| w.action[self.reflect(i, k)]).collect();
            w.word.push(i + 1);
        }
        w
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.positive_count()).filter(|&a| !self.is_positive(w.action[a])).count()
    }

    /// Negative roots in w(Φ⁺), ascending.
    pub fn inversion_negatives(&self, w: &WeylElement) -> Vec<usize> {
        let set: BTreeSet<usize> =
            (0..self.positive_count()).map(|a| w.action[a]).filter(|&b| !self.is_positive(b)).collect();
        set.into_iter().collect()
    }

    pub fn is_resolving(&self, w: &WeylElement) -> ResolvingCheck {
        let inv = w.inverse();
        let psi: BTreeSet<usize> = (self.rank..self.positive_count()).map(|a| inv.action[a]).collect();
        let cond_a = psi.iter().all(|&b| !self.is_positive(b));
        if !cond_a {
            return ResolvingCheck { resolving: false, psi: None };
        }
        let cell: BTreeSet<usize> = self.inversion_negatives(w).into_iter().collect();
        let cond_b = psi.is_subset(&cell);
        ResolvingCheck { resolving: cond_b, psi: Some(psi) }
    }

    /// Every Weyl group element, by breadth-first search (desk-scale ranks only).
    pub fn all_weyl_elements(&self) -> Vec<WeylElement> {
        let id = self.identity();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(id.action.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let action: Vec<usize> = (0..self.num_roots()).map(|k| w.action[self.reflect(i, k)]).collect();
                if seen.insert(action.clone(), ()).is_none() {
                    let mut word = w.word.clone();
                    word.push(i + 1);
                    queue.push_back(WeylElement { word, action });
                }
            }
            out.push(w);
        }
        out
    }

    /// A resolving element: exhaustive search up to rank 3, the longest element beyond.
    pub fn find_resolving(&self) -> Option<WeylElement> {
        if self.rank <= 3 {
            self.all_weyl_elements().into_iter().find(|w| self.is_resolving(w).resolving)
        } else {
            let w = self.longest_element();
            self.is_resolving(&w).resolving.then_some(w)
        }
    }
}

/// Outcome of the resolving test; `psi` = w⁻¹(Φ⁺∖Δ) when it lies in Φ⁻.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvingCheck {
    pub resolving: bool,
    pub psi: Option<BTreeSet<usize>>,
}

/// Weyl group element: a word in 1-based simple reflections and its action on root indices.
#[derive(Clone, Debug, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub action: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.action == o.action
    }
}

impl WeylElement {
    pub fn apply(&self, root: usize) -> usize {
        self.action[root]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word, action: other.action.iter().map(|&k| self.action[k]).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut action = vec![0; self.action.len()];
        for (k, &v) in self.action.iter().enumerate() {
            action[v] = k;
        }
        WeylElement { word: self.word.iter().rev().copied().collect(), action }
    }

    pub fn is_identity(&self) -> bool {
        self.action.iter().enumerate().all(|(k, &v)| k == v)
    }
}
