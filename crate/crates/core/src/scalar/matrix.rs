use std::collections::BTreeMap;

use super::gaussian::GR;

/// Sparse exact matrix over Q(i). Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), GR>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GR::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<GR>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Build from sparse columns given as `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, GR)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.add_at(*i, j, x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> GR {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: GR) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &GR) {
        let v = &self.get(i, j) + x;
        self.set(i, j, v);
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &GR)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for ((i, j), x) in &self.entries {
            t.entries.insert((*j, *i), x.clone());
        }
        t
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &GR)>> = BTreeMap::new();
        for ((i, j), x) in &o.entries {
            by_row.entry(*i).or_default().push((*j, x));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for ((i, k), a) in &self.entries {
            if let Some(r) = by_row.get(k) {
                for (j, b) in r {
                    out.add_at(*i, *j, &(a * *b));
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let mut out = self.clone();
        for ((i, j), x) in &o.entries {
            out.add_at(*i, *j, &(-x));
        }
        out
    }

    pub fn add(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let mut out = self.clone();
        for ((i, j), x) in &o.entries {
            out.add_at(*i, *j, x);
        }
        out
    }

    pub fn scale(&self, s: &GR) -> ExactMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        for ((i, j), x) in &self.entries {
            out.set(*i, *j, x * s);
        }
        out
    }

    pub fn dense_rows(&self) -> Vec<Vec<GR>> {
        let mut d = vec![vec![GR::zero(); self.cols]; self.rows];
        for ((i, j), x) in &self.entries {
            d[*i][*j] = x.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<GR> {
        let mut c = vec![GR::zero(); self.rows];
        for ((i, jj), x) in &self.entries {
            if *jj == j {
                c[*i] = x.clone();
            }
        }
        c
    }

    pub fn apply(&self, v: &[GR]) -> Vec<GR> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![GR::zero(); self.rows];
        for ((i, j), x) in &self.entries {
            if !v[*j].is_zero() {
                out[*i] += &(x * &v[*j]);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in self.dense_rows() {
            ech.insert(r);
        }
        ech.rank()
    }

    /// Basis of `{k : M k = 0}`.
    pub fn kernel(&self) -> Vec<Vec<GR>> {
        let mut ech = Echelon::new(self.cols);
        for r in self.dense_rows() {
            ech.insert(r);
        }
        let pivots: BTreeMap<usize, usize> = ech.rows.iter().enumerate().map(|(k, (p, _))| (*p, k)).collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains_key(c)) {
            let mut k = vec![GR::zero(); self.cols];
            k[free] = GR::one();
            for (p, idx) in &pivots {
                let coeff = &ech.rows[*idx].1[free];
                if !coeff.is_zero() {
                    k[*p] = -coeff;
                }
            }
            out.push(k);
        }
        out
    }
}

pub fn is_zero_vec(v: &[GR]) -> bool {
    v.iter().all(GR::is_zero)
}

/// Incremental reduced row echelon form over Q(i).
///
/// Each stored row has a pivot entry equal to one, and every pivot column is
/// zero in all other rows. A new row picks as its pivot the nonzero entry of
/// smallest bit size, ties going to the lowest column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub dim: usize,
    rows: Vec<(usize, Vec<GR>)>,
    /// For each stored row, its expression in terms of inserted vectors.
    combos: Option<Vec<Vec<GR>>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), combos: None, inserted: 0 }
    }

    /// Variant that records how each row arises from inserted vectors.
    pub fn tracking(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), combos: Some(Vec::new()), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<GR>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Residual of `v` after clearing all pivot columns, with the
    /// coefficients used (one per stored row).
    fn reduce_with(&self, v: &[GR]) -> (Vec<GR>, Vec<GR>) {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut r = v.to_vec();
        let mut used = vec![GR::zero(); self.rows.len()];
        for (k, (p, row)) in self.rows.iter().enumerate() {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            used[k] = f;
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[GR]) -> Vec<GR> {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &[GR]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Insert `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: Vec<GR>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut r, used) = self.reduce_with(&v);
        let pivot = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .min_by_key(|(j, x)| (x.bit_size(), *j))
            .map(|(j, _)| j);
        let Some(p) = pivot else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let mut combo = None;
        if let Some(combos) = &self.combos {
            // row r = (v - sum used_k row_k) * inv
            let mut c = vec![GR::zero(); self.inserted];
            c[idx] = GR::one();
            for (k, u) in used.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (t, y) in combos[k].iter().enumerate() {
                    c[t] -= &(u * y);
                }
            }
            for x in c.iter_mut() {
                *x = &*x * &inv;
            }
            combo = Some(c);
        }
        for k in 0..self.rows.len() {
            let f = self.rows[k].1[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[k].1.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            if let (Some(combos), Some(c)) = (&mut self.combos, &combo) {
                combos[k].resize(self.inserted, GR::zero());
                for (t, y) in c.iter().enumerate() {
                    if !y.is_zero() {
                        combos[k][t] -= &(&f * y);
                    }
                }
            }
        }
        self.rows.push((p, r));
        if let (Some(combos), Some(c)) = (&mut self.combos, combo) {
            combos.push(c);
        }
        true
    }

    /// Express `v` as a combination of the inserted vectors, if possible.
    pub fn decompose(&self, v: &[GR]) -> Option<Vec<GR>> {
        let combos = self.combos.as_ref().expect("decompose requires a tracking echelon");
        let (r, used) = self.reduce_with(v);
        if !is_zero_vec(&r) {
            return None;
        }
        let mut out = vec![GR::zero(); self.inserted];
        for (k, u) in used.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (t, y) in combos[k].iter().enumerate() {
                out[t] += &(u * y);
            }
        }
        Some(out)
    }
}

/// Exact coefficients of `v` over `basis`, or `None` if `v` is not in the span.
/// When the basis is dependent, some valid decomposition is returned.
pub fn span_membership(v: &[GR], basis: &[Vec<GR>]) -> Option<Vec<GR>> {
    let mut ech = Echelon::tracking(v.len());
    for b in basis {
        ech.insert(b.clone());
    }
    ech.decompose(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GR {
        GR::ints(re, im)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(3, 4).rank(), 0);
        let m = ExactMatrix::from_dense(&[vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(-1, 0)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn membership_examples() {
        let b1 = vec![g(1, 0), g(0, 0), g(2, 0)];
        let b2 = vec![g(0, 0), g(1, 0), g(0, 1)];
        let sum: Vec<GR> = b1.iter().zip(&b2).map(|(a, b)| a + b).collect();
        assert_eq!(span_membership(&sum, &[b1.clone(), b2.clone()]), Some(vec![g(1, 0), g(1, 0)]));
        let outside = vec![g(0, 0), g(0, 0), g(1, 0)];
        assert_eq!(span_membership(&outside, &[b1.clone(), b2.clone()]), None);
        let ib1: Vec<GR> = b1.iter().map(|x| x * &GR::i()).collect();
        assert_eq!(span_membership(&ib1, &[b1, b2]), Some(vec![g(0, 1), g(0, 0)]));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = ExactMatrix::from_dense(&[
            vec![g(1, 0), g(2, 0), g(3, 1)],
            vec![g(2, 0), g(4, 0), g(6, 2)],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&m.apply(v)));
        }
    }
}
