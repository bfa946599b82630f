use crate::rational::Q;
use crate::ring::DiffRing;
use num_traits::{One, Zero};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<F: Clone>(&self, mut f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

pub fn identity<R: DiffRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { ring.one() } else { ring.zero() })
}

pub fn zeros<R: DiffRing>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| ring.zero())
}

pub fn lift<R: DiffRing>(ring: &R, m: &Matrix<Q>) -> Matrix<R::Elem> {
    m.map(|q| ring.from_rational(q))
}

pub fn mul<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix shape mismatch");
    let mut out = zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if ring.is_trivially_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if ring.is_trivially_zero(y) {
                    continue;
                }
                let p = ring.mul(x, y);
                let idx = i * out.cols + j;
                out.data[idx] = ring.add(&out.data[idx], &p);
            }
        }
    }
    out
}

pub fn add<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix shape mismatch");
    Matrix::from_fn(a.rows, a.cols, |r, c| ring.add(a.get(r, c), b.get(r, c)))
}

pub fn sub<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix shape mismatch");
    Matrix::from_fn(a.rows, a.cols, |r, c| ring.sub(a.get(r, c), b.get(r, c)))
}

pub fn scale<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, s: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(x, s))
}

pub fn derive<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.derive(x))
}

pub fn bracket<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    sub(ring, &mul(ring, a, b), &mul(ring, b, a))
}

pub fn is_zero<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

pub fn equal<R: DiffRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    a.rows == b.rows && a.cols == b.cols && is_zero(ring, &sub(ring, a, b))
}

// ---- exact linear algebra over Q ----

impl Matrix<Q> {
    pub fn zero_q(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Q::zero())
    }

    pub fn identity_q(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { Q::one() } else { Q::zero() })
    }

    pub fn mul_q(&self, other: &Matrix<Q>) -> Matrix<Q> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero_q(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + x * y;
                }
            }
        }
        out
    }

    pub fn bracket_q(&self, other: &Matrix<Q>) -> Matrix<Q> {
        let ab = self.mul_q(other);
        let ba = other.mul_q(self);
        Matrix::from_fn(self.rows, self.cols, |r, c| ab.get(r, c) - ba.get(r, c))
    }

    pub fn is_zero_q(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<Q>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse_q(&self) -> Option<Matrix<Q>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn determinant_q(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Q::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det *= &piv;
            for r in col + 1..n {
                let f = m.get(r, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (red, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = -red.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some x with self·x = b, free variables set to zero.
    pub fn solve_particular(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = red.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Matrix P with self·P·b = b for every b in the column space, free variables zero.
    /// Returns None when self is not surjective.
    pub fn right_inverse(&self) -> Option<Matrix<Q>> {
        let mut cols = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut e = vec![Q::zero(); self.rows];
            e[i] = Q::one();
            cols.push(self.solve_particular(&e)?);
        }
        Some(Matrix::from_fn(self.cols, self.rows, |r, c| cols[c][r].clone()))
    }
}

/// Whitespace-separated rationals, one row per nonempty line.
pub fn parse_q_matrix(text: &str) -> crate::Result<Matrix<Q>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for (ln, line) in text.split_inclusive('\n').enumerate() {
        let start = offset;
        offset += line.len();
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                let pos = start + (t.as_ptr() as usize - line.as_ptr() as usize);
                crate::rational::parse_q(t).ok_or_else(|| crate::Error::Parse { pos, msg: format!("bad rational {t:?} on line {}", ln + 1) })
            })
            .collect::<crate::Result<Vec<Q>>>()?;
        if let Some(first) = rows.first().map(|r: &Vec<Q>| r.len()) {
            if row.len() != first {
                return Err(crate::Error::Dimension { expected: first, got: row.len() });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(crate::Error::Invalid("empty matrix".into()));
    }
    Ok(Matrix::from_rows(rows))
}
