//! Embeddings `F ⊆ M_n(G)` with the standard matrix units, their corner
//! blocks, and the passage between 1-tight embeddings and extensions.
//!
//! For `a + b = n + 1` the corner block of `M` is the `a x b` block in rows
//! `0..a` and columns `a-1..n`. The embedding is `a`-tight when the linear
//! map sending an element of `F` to its corner block is onto.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::extension::{ExtensionError, ExtensionPresentation};
use crate::grid::Grid;
use crate::matrix::{Matrix, Rref, Subspace};
use crate::probe::{division_probe, ProbeConfig, ProbeReport, ProbeVerdict, EXHAUSTIVE_LIMIT};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TightnessError {
    #[error("malformed embedding: {0}")]
    Shape(String),
    #[error("image basis is linearly dependent")]
    LinearlyDependent,
    #[error("the identity matrix is not in the image")]
    MissingIdentity,
    #[error("product of image basis elements {0} and {1} leaves the image")]
    NotClosed(usize, usize),
    #[error("image is not a division ring: {element} has zero-divisor certificate {certificate}")]
    NotDivision { element: Grid, certificate: Grid },
    #[error("nonzero image element {0} has a vanishing corner block, so it is singular")]
    SingularElement(Grid),
    #[error("a = {a} out of range 1..={n}")]
    IndexOutOfRange { a: usize, n: usize },
    #[error("block has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("embedding is not 1-tight (rank {rank} < {required})")]
    NotOneTight { rank: usize, required: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// An `a x b` matrix over `G`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerBlock {
    pub a: usize,
    pub b: usize,
    entries: Vec<Element>,
}

impl CornerBlock {
    pub fn new(a: usize, b: usize, entries: Vec<Element>) -> Result<Self, TightnessError> {
        if entries.len() != a * b {
            return Err(TightnessError::Shape(format!("{} entries for a {a}x{b} block", entries.len())));
        }
        Ok(CornerBlock { a, b, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self, TightnessError> {
        let a = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != b) {
            return Err(TightnessError::Shape("ragged block".into()));
        }
        Self::new(a, b, rows.into_iter().flatten().collect())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.b + j]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn flat(&self) -> Vec<Scalar> {
        self.entries.iter().flat_map(|e| e.0.iter().cloned()).collect()
    }
}

pub fn corner_block(m: &Grid, a: usize) -> Result<CornerBlock, TightnessError> {
    let n = m.n();
    if a == 0 || a > n {
        return Err(TightnessError::IndexOutOfRange { a, n });
    }
    let entries = (0..a).flat_map(|i| (a - 1..n).map(move |j| m.element(i, j))).collect();
    CornerBlock::new(a, n + 1 - a, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATightness {
    pub a: usize,
    pub b: usize,
    pub tight: bool,
    pub rank: usize,
    pub required_rank: usize,
}

impl ATightness {
    pub fn deficit(&self) -> usize {
        self.required_rank - self.rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tightness {
    pub tight: bool,
    pub per_a: Vec<ATightness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSolution {
    /// The unique image element with the requested corner block.
    Found { coords: Vec<Scalar>, matrix: Grid },
    /// `obstruction` vanishes on every corner block in the image but not on
    /// the requested one.
    NoSolution { obstruction: Vec<Scalar> },
}

#[derive(Debug)]
pub struct EmbeddingModel {
    g: Arc<Algebra>,
    n: usize,
    image_basis: Vec<Grid>,
    image: Subspace,
    image_algebra: Arc<Algebra>,
    probe: ProbeReport,
    block_maps: Vec<OnceLock<Rref>>,
}

impl EmbeddingModel {
    /// Validates the image basis (shapes, independence, identity, closure)
    /// and probes the image for zero divisors.
    pub fn new(g: Arc<Algebra>, n: usize, image_basis: Vec<Grid>, cfg: ProbeConfig) -> Result<Self, TightnessError> {
        if n == 0 {
            return Err(TightnessError::Shape("n must be positive".into()));
        }
        let d = g.dim();
        let field = g.field();
        for (i, m) in image_basis.iter().enumerate() {
            if m.n() != n || m.coeff_dim() != d {
                return Err(TightnessError::Shape(format!("image basis element {i} is not {n}x{n} over G")));
            }
            if m.flat().iter().any(|x| x.field() != field) {
                return Err(TightnessError::Shape(format!("image basis element {i} is over the wrong field")));
            }
        }
        let ambient = n * n * d;
        let image = Subspace::span(field, ambient, image_basis.iter().map(|m| m.flat().to_vec()));
        if image.dim() != image_basis.len() {
            return Err(TightnessError::LinearlyDependent);
        }
        let columns: Vec<Vec<Scalar>> = image_basis.iter().map(|m| m.flat().to_vec()).collect();
        let coords_of = Matrix::from_columns(field, ambient, &columns).rref();
        let unit = coords_of
            .solve(Grid::identity(&g, n).flat())
            .ok_or(TightnessError::MissingIdentity)?;
        let mut entries = Vec::new();
        for (i, x) in image_basis.iter().enumerate() {
            for (j, y) in image_basis.iter().enumerate() {
                let c = coords_of.solve(x.mul(y, &g).flat()).ok_or(TightnessError::NotClosed(i, j))?;
                entries.push((i, j, c));
            }
        }
        let names = (0..image_basis.len()).map(|i| format!("b{i}")).collect();
        let image_algebra = Arc::new(Algebra::new(field, names, entries, Some(unit))?);
        let probe = division_probe(&image_algebra, cfg);
        let model = EmbeddingModel {
            g,
            n,
            image_basis,
            image,
            image_algebra,
            probe,
            block_maps: (0..n).map(|_| OnceLock::new()).collect(),
        };
        if let ProbeVerdict::CertifiedNotDivision { element, certificate, .. } = &model.probe.verdict {
            return Err(TightnessError::NotDivision {
                element: model.grid_of(&element.0),
                certificate: model.grid_of(&certificate.0),
            });
        }
        Ok(model)
    }

    pub fn g(&self) -> &Arc<Algebra> {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image_basis(&self) -> &[Grid] {
        &self.image_basis
    }

    /// The image as a subspace of `k^(n*n*dim G)`.
    pub fn image(&self) -> &Subspace {
        &self.image
    }

    /// The image as an algebra on the image basis.
    pub fn image_algebra(&self) -> &Arc<Algebra> {
        &self.image_algebra
    }

    pub fn probe(&self) -> &ProbeReport {
        &self.probe
    }

    /// The matrix with the given coordinates in the image basis.
    pub fn grid_of(&self, coords: &[Scalar]) -> Grid {
        Grid::combine(self.g.field(), &self.image_basis, coords, self.n, self.g.dim())
    }

    fn check_a(&self, a: usize) -> Result<usize, TightnessError> {
        if a == 0 || a > self.n {
            return Err(TightnessError::IndexOutOfRange { a, n: self.n });
        }
        Ok(self.n + 1 - a)
    }

    /// The corner-block map as a matrix with one column per image basis
    /// element, built once per `a`.
    pub fn block_map(&self, a: usize) -> Result<&Rref, TightnessError> {
        let b = self.check_a(a)?;
        Ok(self.block_maps[a - 1].get_or_init(|| {
            let idx = Grid::block_indices(self.n, self.g.dim(), 0..a, a - 1..self.n);
            let columns: Vec<Vec<Scalar>> = self
                .image_basis
                .iter()
                .map(|m| idx.iter().map(|&i| m.flat()[i].clone()).collect())
                .collect();
            debug_assert_eq!(idx.len(), a * b * self.g.dim());
            Matrix::from_columns(self.g.field(), idx.len(), &columns).rref()
        }))
    }

    pub fn is_a_tight(&self, a: usize) -> Result<ATightness, TightnessError> {
        let b = self.check_a(a)?;
        let map = self.block_map(a)?;
        if let Some(kernel) = map.nullspace().first() {
            return Err(TightnessError::SingularElement(self.grid_of(kernel)));
        }
        let required_rank = a * b * self.g.dim();
        Ok(ATightness {
            a,
            b,
            tight: map.rank() == required_rank,
            rank: map.rank(),
            required_rank,
        })
    }

    pub fn is_tight(&self) -> Result<Tightness, TightnessError> {
        let per_a = (1..=self.n).map(|a| self.is_a_tight(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Tightness {
            tight: per_a.iter().all(|t| t.tight),
            per_a,
        })
    }

    pub fn solve_for_block(&self, a: usize, block: &CornerBlock) -> Result<BlockSolution, TightnessError> {
        let b = self.check_a(a)?;
        if (block.a, block.b) != (a, b) {
            return Err(TightnessError::ShapeMismatch {
                expected: (a, b),
                found: (block.a, block.b),
            });
        }
        if block.entries.iter().any(|e| e.0.len() != self.g.dim()) {
            return Err(TightnessError::Shape("block entries are not elements of G".into()));
        }
        let target = block.flat();
        if target.iter().any(|x| x.field() != self.g.field()) {
            return Err(TightnessError::Shape("block over the wrong field".into()));
        }
        let map = self.block_map(a)?;
        Ok(match map.solve(&target) {
            Some(coords) => BlockSolution::Found {
                matrix: self.grid_of(&coords),
                coords,
            },
            None => BlockSolution::NoSolution {
                obstruction: map.obstruction(&target).expect("unsolvable system has an obstruction"),
            },
        })
    }

    /// Over a small prime field, counts how often each corner block occurs
    /// among all elements of the image. Returns `(blocks hit exactly once,
    /// total number of blocks)`, or `None` when enumeration is too large.
    pub fn exhaustive_block_census(&self, a: usize) -> Result<Option<(u64, u64)>, TightnessError> {
        let b = self.check_a(a)?;
        let Some(p) = self.g.field().order() else {
            return Ok(None);
        };
        let size = |exp: usize| (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&t| t <= EXHAUSTIVE_LIMIT));
        let (Some(elements), Some(blocks)) = (size(self.image_basis.len()), size(a * b * self.g.dim())) else {
            return Ok(None);
        };
        let mut hits = std::collections::HashMap::new();
        for code in 0..elements {
            let mut c = code;
            let coords: Vec<Scalar> = (0..self.image_basis.len())
                .map(|_| {
                    let digit = c % p;
                    c /= p;
                    self.g.field().from_i64(digit as i64)
                })
                .collect();
            let block = corner_block(&self.grid_of(&coords), a)?.flat();
            *hits.entry(block).or_insert(0u64) += 1;
        }
        let once = hits.values().filter(|&&h| h == 1).count() as u64;
        Ok(Some((once, blocks)))
    }
}

/// The embedding `a -> phi(a)` of an extension, with image basis the images
/// of the basis of `F`.
pub fn embed_from_extension(ext: &ExtensionPresentation, cfg: ProbeConfig) -> Result<EmbeddingModel, TightnessError> {
    EmbeddingModel::new(ext.subring_algebra().clone(), ext.n(), ext.phi_of_basis().to_vec(), cfg)
}

/// Recovers `G` as the image elements with first row `(g, 0, ..., 0)` and
/// `f_j` as the one with first row the `j`-th unit vector.
pub fn extension_from_tight(model: &EmbeddingModel) -> Result<ExtensionPresentation, TightnessError> {
    let t = model.is_a_tight(1)?;
    if !t.tight {
        return Err(TightnessError::NotOneTight {
            rank: t.rank,
            required: t.required_rank,
        });
    }
    let g = &model.g;
    let n = model.n;
    let first_row = |j: usize, x: &Element| -> Result<Element, TightnessError> {
        let mut entries = vec![g.zero(); n];
        entries[j] = x.clone();
        match model.solve_for_block(1, &CornerBlock::new(1, n, entries)?)? {
            BlockSolution::Found { coords, .. } => Ok(Element(coords)),
            BlockSolution::NoSolution { .. } => unreachable!("1-tight"),
        }
    };
    let g_copy = (0..g.dim()).map(|t| first_row(0, &g.basis(t))).collect::<Result<Vec<_>, _>>()?;
    let left_basis = (0..n).map(|j| first_row(j, &g.one())).collect::<Result<Vec<_>, _>>()?;
    Ok(ExtensionPresentation::with_subring_basis(
        model.image_algebra.clone(),
        g_copy,
        Some(left_basis),
    )?)
}

/// `(dim L_k, dim S_k, dim D_k)` over the ground field, for each `k`.
pub fn ladder_dimensions(ext: &ExtensionPresentation) -> Result<Vec<(usize, usize, usize)>, ExtensionError> {
    let l = ext.ladder()?;
    Ok((0..ext.n()).map(|k| (l.l[k].dim(), l.s[k].dim(), l.d[k].dim())).collect())
}

/// Model to extension and back; true when the image subspaces agree.
pub fn roundtrip_model(model: &EmbeddingModel, cfg: ProbeConfig) -> Result<bool, TightnessError> {
    let ext = extension_from_tight(model)?;
    let again = embed_from_extension(&ext, cfg)?;
    Ok(again.g.same_structure(&model.g) && again.image == model.image)
}

/// Extension to model and back; returns the ladder dimensions before and
/// after.
pub fn roundtrip_extension(ext: &ExtensionPresentation, cfg: ProbeConfig) -> Result<RoundTrip, TightnessError> {
    let model = embed_from_extension(ext, cfg)?;
    let back = extension_from_tight(&model)?;
    Ok(RoundTrip {
        original: ladder_dimensions(ext)?,
        recovered: ladder_dimensions(&back)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub original: Vec<(usize, usize, usize)>,
    pub recovered: Vec<(usize, usize, usize)>,
}

impl RoundTrip {
    pub fn agrees(&self) -> bool {
        self.original == self.recovered
    }
}
