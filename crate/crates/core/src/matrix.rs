//! Complex matrices indexed by maximal cliques.
//!
//! Rows are maximal Opponent cliques, columns maximal Player cliques, both in
//! canonical order. Entries are stored row-major.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{CliqueLabel, Move};
use crate::scalar::{self, Scalar, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyMatrix {
    rows: Vec<CliqueLabel>,
    cols: Vec<CliqueLabel>,
    entries: Vec<Scalar>,
}

impl StrategyMatrix {
    pub fn zeros(rows: Vec<CliqueLabel>, cols: Vec<CliqueLabel>) -> Self {
        let entries = vec![ZERO; rows.len() * cols.len()];
        Self { rows, cols, entries }
    }

    pub fn identity(labels: Vec<CliqueLabel>) -> Self {
        let mut m = Self::zeros(labels.clone(), labels);
        for i in 0..m.rows.len() {
            m.set(i, i, ONE);
        }
        m
    }

    /// Unlabelled matrix from rows of scalars; labels are synthetic basis names `e0..`.
    pub fn from_rows(data: &[Vec<Scalar>]) -> Self {
        let n = data.len();
        let m = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == m), "ragged matrix");
        let rows = (0..n).map(|i| CliqueLabel::synthetic(&format!("e{i}"))).collect();
        let cols = (0..m).map(|j| CliqueLabel::synthetic(&format!("e{j}"))).collect();
        Self { rows, cols, entries: data.iter().flatten().copied().collect() }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[CliqueLabel] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[CliqueLabel] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Scalar) {
        let n = self.cols.len();
        self.entries[i * n + j] = z;
    }

    pub fn add_at(&mut self, i: usize, j: usize, z: Scalar) {
        let n = self.cols.len();
        self.entries[i * n + j] += z;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        let n = self.cols.len();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n_rows()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn scale(&self, z: Scalar) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|e| *e *= z);
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols() != other.n_rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.n_rows(),
                self.n_cols(),
                other.n_rows(),
                other.n_cols()
            )));
        }
        if !labels_compatible(&self.cols, &other.rows) {
            return Err(Error::DimensionMismatch(
                "column labels of the left factor differ from row labels of the right factor".into(),
            ));
        }
        let mut out = Self::zeros(self.rows.clone(), other.cols.clone());
        for i in 0..self.n_rows() {
            for k in 0..self.n_cols() {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.n_cols() {
                    out.add_at(i, j, a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols.clone(), self.rows.clone());
        for i in 0..self.n_rows() {
            for j in 0..self.n_cols() {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product; the label of index `(a, b)` is the concatenation of
    /// the two labels, ordered lexicographically by `(a, b)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = pair_labels(&self.rows, &other.rows);
        let cols = pair_labels(&self.cols, &other.cols);
        let mut out = Self::zeros(rows, cols);
        let (p, q) = (other.n_rows(), other.n_cols());
        for i in 0..self.n_rows() {
            for j in 0..self.n_cols() {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Entrywise comparison within the global tolerance; labels are ignored.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n_rows() == other.n_rows()
            && self.n_cols() == other.n_cols()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| scalar::approx_eq(*a, *b))
    }

    pub fn approx_eq_rows(&self, rows: &[Vec<Scalar>]) -> bool {
        rows.len() == self.n_rows()
            && rows.iter().enumerate().all(|(i, r)| {
                r.len() == self.n_cols() && r.iter().enumerate().all(|(j, z)| scalar::approx_eq(self.get(i, j), *z))
            })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Option<f64> {
        if self.n_rows() != other.n_rows() || self.n_cols() != other.n_cols() {
            return None;
        }
        Some(self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// True iff the matrix is square and `A†A = AA† = I` within tolerance.
    pub fn is_unitary(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let adj = self.adjoint();
        let id = Self::identity(self.rows.clone());
        let left = adj.mul_unchecked(self);
        let right = self.mul_unchecked(&adj);
        left.approx_eq(&id) && right.approx_eq(&id)
    }

    /// At most one entry above tolerance in every row and every column.
    pub fn is_partial_monomial(&self) -> bool {
        let nz = |z: Scalar| !scalar::is_zero(z);
        (0..self.n_rows()).all(|i| self.row(i).iter().filter(|z| nz(**z)).count() <= 1)
            && (0..self.n_cols()).all(|j| (0..self.n_rows()).filter(|&i| nz(self.get(i, j))).count() <= 1)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|z| !scalar::is_zero(**z)).count()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows.clone(), other.cols.clone());
        for i in 0..self.n_rows() {
            for k in 0..self.n_cols() {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.n_cols() {
                    out.add_at(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n_rows() != other.n_rows() || self.n_cols() != other.n_cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n_rows(),
                self.n_cols(),
                other.n_rows(),
                other.n_cols()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows.iter().map(CliqueLabel::names).collect(),
            cols: self.cols.iter().map(CliqueLabel::names).collect(),
            entries: (0..self.n_rows()).map(|i| self.row(i).iter().map(|z| scalar::to_pair(*z)).collect()).collect(),
        }
    }
}

/// Serialized matrix: clique labels as move-name lists, entries as `[re, im]`.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: Vec<Vec<String>>,
    pub cols: Vec<Vec<String>>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

fn pair_labels(a: &[CliqueLabel], b: &[CliqueLabel]) -> Vec<CliqueLabel> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut moves: Vec<Move> = x.moves().to_vec();
            moves.extend_from_slice(y.moves());
            out.push(CliqueLabel::from_moves_unsorted(moves));
        }
    }
    out
}

fn labels_compatible(a: &[CliqueLabel], b: &[CliqueLabel]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| x.strip_side() == y.strip_side())
}

impl fmt::Display for StrategyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row_names: Vec<String> = self.rows.iter().map(|l| l.to_string()).collect();
        let col_names: Vec<String> = self.cols.iter().map(|l| l.to_string()).collect();
        let cells: Vec<Vec<String>> =
            (0..self.n_rows()).map(|i| self.row(i).iter().map(|z| scalar::format(*z)).collect()).collect();
        let w0 = row_names.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.n_cols())
            .map(|j| {
                let c = col_names[j].chars().count();
                cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0).max(c)
            })
            .collect();
        write!(f, "{:w0$}", "")?;
        for (j, c) in col_names.iter().enumerate() {
            write!(f, " | {:>w$}", c, w = widths[j])?;
        }
        writeln!(f)?;
        for (i, r) in row_names.iter().enumerate() {
            write!(f, "{:w0$}", r)?;
            for (j, c) in cells[i].iter().enumerate() {
                write!(f, " | {:>w$}", c, w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
