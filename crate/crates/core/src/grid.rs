//! `n x n` matrices over a structure-constant algebra `G`, stored as
//! `G`-coordinate vectors. A grid flattens to a vector in `k^(n*n*dim G)`,
//! entry `(i, j)` occupying the slice starting at `(i * n + j) * dim G`.

use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::matrix::axpy;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
    d: usize,
    entries: Vec<Scalar>,
}

impl Grid {
    pub fn zero(g: &Algebra, n: usize) -> Grid {
        Grid {
            n,
            d: g.dim(),
            entries: vec![g.field().zero(); n * n * g.dim()],
        }
    }

    pub fn identity(g: &Algebra, n: usize) -> Grid {
        let mut out = Grid::zero(g, n);
        let one = g.one();
        for i in 0..n {
            out.set(i, i, &one);
        }
        out
    }

    /// Builds a grid from rows of `G`-elements.
    pub fn from_rows(g: &Algebra, rows: &[Vec<Element>]) -> Option<Grid> {
        let n = rows.len();
        let mut out = Grid::zero(g, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (j, e) in row.iter().enumerate() {
                if e.0.len() != g.dim() {
                    return None;
                }
                out.set(i, j, e);
            }
        }
        Some(out)
    }

    pub fn from_flat(n: usize, d: usize, entries: Vec<Scalar>) -> Grid {
        assert_eq!(entries.len(), n * n * d, "flattened grid length");
        Grid { n, d, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff_dim(&self) -> usize {
        self.d
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_flat(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        let at = (i * self.n + j) * self.d;
        &self.entries[at..at + self.d]
    }

    pub fn element(&self, i: usize, j: usize) -> Element {
        Element(self.entry(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, e: &Element) {
        let at = (i * self.n + j) * self.d;
        self.entries[at..at + self.d].clone_from_slice(&e.0);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Grid) -> Grid {
        Grid {
            n: self.n,
            d: self.d,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Grid {
        Grid {
            n: self.n,
            d: self.d,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Matrix product with entries multiplied in `g`.
    pub fn mul(&self, other: &Grid, g: &Algebra) -> Grid {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Grid::zero(g, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = g.zero();
                for l in 0..n {
                    let a = self.element(i, l);
                    let b = other.element(l, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = g.add(&acc, &g.mul(&a, &b));
                }
                out.set(i, j, &acc);
            }
        }
        out
    }

    /// Linear combination of grids.
    pub fn combine(field: FieldSpec, basis: &[Grid], coords: &[Scalar], n: usize, d: usize) -> Grid {
        let mut entries = vec![field.zero(); n * n * d];
        for (c, b) in coords.iter().zip(basis) {
            axpy(&mut entries, c, &b.entries);
        }
        Grid { n, d, entries }
    }

    /// Indices into [`Grid::flat`] covering rows `rows` and columns `cols`,
    /// row-major, each entry contributing `d` consecutive positions.
    pub fn block_indices(n: usize, d: usize, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<usize> {
        let mut out = Vec::new();
        for i in rows {
            for j in cols.clone() {
                let at = (i * n + j) * d;
                out.extend(at..at + d);
            }
        }
        out
    }

    pub fn format_with(&self, g: &Algebra) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = (0..self.n).map(|j| g.format_element(&self.element(i, j))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = (0..self.n).map(|j| self.element(i, j).to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
