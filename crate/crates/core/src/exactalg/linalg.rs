use super::ff::{Fe, FiniteField};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq)]
pub struct FfMatrix {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl FfMatrix {
    pub fn zeros(field: &Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        FfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe(0); rows * cols],
        }
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe(1));
        }
        m
    }

    pub fn from_rows(field: &Arc<FiniteField>, rows: &[Vec<Fe>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe(0), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }
}

/// Result of [`ff_solve`]: one particular solution per right-hand side
/// (`None` when inconsistent) and a basis of the nullspace.
#[derive(Clone, Debug, PartialEq)]
pub struct FfSolution {
    pub solutions: Vec<Option<Vec<Fe>>>,
    pub nullspace: Vec<Vec<Fe>>,
    pub rank: usize,
}

/// Solves `M x = b` for every column `b` in `rhs` by exact row reduction.
pub fn ff_solve(m: &FfMatrix, rhs: &[Vec<Fe>]) -> Result<FfSolution> {
    let f = m.field.clone();
    let (r, c, k) = (m.rows, m.cols, rhs.len());
    for (i, b) in rhs.iter().enumerate() {
        if b.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "rhs {i} has length {}, matrix has {r} rows",
                b.len()
            )));
        }
    }
    let width = c + k;
    let mut a: Vec<Vec<Fe>> = (0..r)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend(rhs.iter().map(|b| b[i]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..c {
        let Some(pr) = (rank..r).find(|&i| a[i][col].0 != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = f.inv(a[rank][col]).expect("pivot nonzero");
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let prow = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[col].0 != 0 {
                let s = row[col];
                for j in 0..width {
                    row[j] = f.sub(row[j], f.mul(s, prow[j]));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let solutions = (0..k)
        .map(|bi| {
            if (rank..r).any(|i| a[i][c + bi].0 != 0) {
                return None;
            }
            let mut x = vec![Fe(0); c];
            for (ri, &pc) in pivots.iter().enumerate() {
                x[pc] = a[ri][c + bi];
            }
            Some(x)
        })
        .collect();
    let mut nullspace = Vec::new();
    let mut is_pivot = vec![false; c];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    for free in (0..c).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Fe(0); c];
        v[free] = Fe(1);
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(a[ri][free]);
        }
        nullspace.push(v);
    }
    Ok(FfSolution {
        solutions,
        nullspace,
        rank,
    })
}

/// Incrementally built reduced row-echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Arc<FiniteField>,
    ncols: usize,
    rows: Vec<Vec<Fe>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: &Arc<FiniteField>, ncols: usize) -> Self {
        Echelon {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn from_rows(field: &Arc<FiniteField>, ncols: usize, rows: impl IntoIterator<Item = Vec<Fe>>) -> Self {
        let mut e = Self::new(field, ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduces `v` in place against the basis; the residual is zero iff `v`
    /// lies in the row space.
    pub fn reduce(&self, v: &mut [Fe]) {
        let f = &self.field;
        for col in 0..self.ncols {
            if v[col].0 == 0 {
                continue;
            }
            if let Some(ri) = self.pivot_row[col] {
                let s = v[col];
                let row = &self.rows[ri];
                for j in col..self.ncols {
                    if row[j].0 != 0 {
                        v[j] = f.sub(v[j], f.mul(s, row[j]));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.0 == 0)
    }

    /// Adds `v` to the basis; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|x| x.0 != 0) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let s = row[pc];
            if s.0 != 0 {
                for j in pc..self.ncols {
                    row[j] = f.sub(row[j], f.mul(s, v[j]));
                }
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Basis rows sorted by pivot column.
    pub fn rows_sorted(&self) -> Vec<Vec<Fe>> {
        (0..self.ncols)
            .filter_map(|c| self.pivot_row[c].map(|r| self.rows[r].clone()))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Basis of `{x : r·x = 0 for every basis row r}`.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()) {
            let mut v = vec![Fe(0); self.ncols];
            v[free] = Fe(1);
            for (pc, ri) in self.pivot_row.iter().enumerate() {
                if let Some(ri) = ri {
                    v[pc] = f.neg(self.rows[*ri][free]);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of the intersection of two row spaces given by (independent or not) spanning sets.
pub fn intersect_spans(field: &Arc<FiniteField>, ncols: usize, a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let a = Echelon::from_rows(field, ncols, a.iter().cloned()).rows_sorted();
    let b = Echelon::from_rows(field, ncols, b.iter().cloned()).rows_sorted();
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // columns of the system are the vectors of a and -b
    let n = a.len() + b.len();
    let mut m = FfMatrix::zeros(field, ncols, n);
    for (j, v) in a.iter().enumerate() {
        for i in 0..ncols {
            m.set(i, j, v[i]);
        }
    }
    for (j, v) in b.iter().enumerate() {
        for i in 0..ncols {
            m.set(i, a.len() + j, field.neg(v[i]));
        }
    }
    let sol = ff_solve(&m, &[]).expect("dimensions agree");
    let mut out = Echelon::new(field, ncols);
    for z in sol.nullspace {
        let mut v = vec![Fe(0); ncols];
        for (j, av) in a.iter().enumerate() {
            if z[j].0 != 0 {
                for i in 0..ncols {
                    v[i] = field.add(v[i], field.mul(z[j], av[i]));
                }
            }
        }
        out.insert(v);
    }
    out.rows_sorted()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let f = FiniteField::prime(5).unwrap();
        let m = FfMatrix::identity(&f, 3);
        let s = ff_solve(&m, &[vec![Fe(1), Fe(0), Fe(0)]]).unwrap();
        assert_eq!(s.solutions[0], Some(vec![Fe(1), Fe(0), Fe(0)]));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let f = FiniteField::prime(2).unwrap();
        let m = FfMatrix::zeros(&f, 1, 2);
        let s = ff_solve(&m, &[vec![Fe(0)]]).unwrap();
        assert_eq!(s.nullspace.len(), 2);
        assert!(s.solutions[0].is_some());
    }

    #[test]
    fn inconsistent_and_mismatch() {
        let f = FiniteField::prime(3).unwrap();
        let m = FfMatrix::zeros(&f, 2, 2);
        let s = ff_solve(&m, &[vec![Fe(1), Fe(0)]]).unwrap();
        assert_eq!(s.solutions[0], None);
        assert!(matches!(ff_solve(&m, &[vec![Fe(1)]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn intersection_of_planes() {
        let f = FiniteField::prime(2).unwrap();
        let a = vec![vec![Fe(1), Fe(0), Fe(0)], vec![Fe(0), Fe(1), Fe(0)]];
        let b = vec![vec![Fe(0), Fe(1), Fe(0)], vec![Fe(0), Fe(0), Fe(1)]];
        assert_eq!(intersect_spans(&f, 3, &a, &b), vec![vec![Fe(0), Fe(1), Fe(0)]]);
    }
}
