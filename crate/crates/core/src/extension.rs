//! A division-ring extension `G ⊆ F` with a fixed left basis
//! `f_0 = 1, f_1, ..., f_{n-1}` of `F` over `G`.
//!
//! Everything is computed over the central ground field `k`: `G` is a
//! `k`-subspace of `F`, and the left `G`-span of a set `X` is the `k`-span of
//! `{g x : g in a k-basis of G, x in X}`.
//!
//! The embedding `phi: F -> M_n(G)` sends `a` to the matrix whose row `i`
//! holds the left `G`-coordinates of `f_i a`. The ladder is
//!
//! * `L_k` = left `G`-span of `f_0, ..., f_k`,
//! * `S_k = {a : L_k a ⊆ L_k}`, the rows `0..=k` of `phi(a)` vanishing in
//!   columns `k+1..n`,
//! * `D_k = {a : L_{k-1} a ⊆ L_k}` for `k >= 1` (rows `0..k`, same columns),
//!   and `D_0 = F`.
//!
//! "Dimension" of `D_k` over `S_k` always means the ratio of `k`-dimensions,
//! which is the right `S_k`-dimension whenever `S_k` is a division ring.

use std::ops::Range;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::grid::Grid;
use crate::matrix::{Matrix, Rref, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("G is not a subring of F: {0}")]
    NotASubring(String),
    #[error("F is not left free over G: left span has dimension {span_dim}, expected {expected}")]
    NotFree { span_dim: usize, expected: usize },
    #[error("invalid left basis: {0}")]
    InvalidLeftBasis(String),
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("{0} is not a left G-subspace")]
    NotLeftSubmodule(&'static str),
    #[error("subspaces have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("no nonzero a with H1 a ⊆ H2")]
    NoTransporter,
    #[error("D_{k} has k-dimension {d_dim}, not a multiple of dim S_{k} = {s_dim}")]
    IndivisibleLadder { k: usize, d_dim: usize, s_dim: usize },
    #[error("F is not a division ring: {element} * {certificate} = 0")]
    ZeroDivisor { element: Element, certificate: Element },
}

/// Left `G`-span of `xs`.
pub fn left_span(f: &Algebra, g: &Subspace, xs: &[Element]) -> Subspace {
    let gs: Vec<Element> = g.basis().iter().cloned().map(Element).collect();
    Subspace::span(
        f.field(),
        f.dim(),
        xs.iter().flat_map(|x| gs.iter().map(move |gb| f.mul(gb, x).0)),
    )
}

fn check_subring(f: &Algebra, g: &Subspace) -> Result<(), ExtensionError> {
    if g.ambient() != f.dim() {
        return Err(ExtensionError::NotASubring("subspace lives in another algebra".into()));
    }
    if !g.contains(&f.one().0) {
        return Err(ExtensionError::NotASubring("does not contain 1".into()));
    }
    if let Some(&(a, b)) = f.closure_defects(g).first() {
        return Err(ExtensionError::NotASubring(format!(
            "product of basis vectors {a} and {b} leaves G"
        )));
    }
    Ok(())
}

/// Greedy left basis: start from `1` and adjoin, in index order, each basis
/// vector of `F` outside the current left span.
pub fn compute_left_basis(f: &Algebra, g: &Subspace) -> Result<Vec<Element>, ExtensionError> {
    check_subring(f, g)?;
    let mut basis = vec![f.one()];
    let mut span = left_span(f, g, &basis);
    for t in 0..f.dim() {
        if span.dim() == f.dim() {
            break;
        }
        let e = f.basis(t);
        if !span.contains(&e.0) {
            basis.push(e);
            span = left_span(f, g, &basis);
        }
    }
    let expected = basis.len() * g.dim();
    if span.dim() != f.dim() || expected != f.dim() {
        return Err(ExtensionError::NotFree {
            span_dim: span.dim(),
            expected: f.dim(),
        });
    }
    Ok(basis)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderData {
    pub l: Vec<Subspace>,
    pub s: Vec<Subspace>,
    pub d: Vec<Subspace>,
    pub dims_over_s: Vec<usize>,
}

#[derive(Debug)]
pub struct ExtensionPresentation {
    f: Arc<Algebra>,
    g: Subspace,
    g_basis: Vec<Element>,
    g_algebra: Arc<Algebra>,
    left_basis: Vec<Element>,
    /// Inverse of the matrix whose column `j * dim G + b` is `g_b f_j`.
    left_coords: Matrix,
    /// `phi(e_t)` for each basis vector of `F`.
    phi_basis: Vec<Grid>,
    ladder: OnceLock<Result<LadderData, ExtensionError>>,
}

impl ExtensionPresentation {
    /// `G` is the subring generated by `g_generators`. Without an explicit
    /// left basis the greedy one is used.
    pub fn new(
        f: Arc<Algebra>,
        g_generators: &[Element],
        left_basis: Option<Vec<Element>>,
    ) -> Result<Self, ExtensionError> {
        for x in g_generators {
            f.element(x.0.clone())?;
        }
        let g = f.subring_closure(g_generators, true);
        Self::with_subring(f, g, left_basis)
    }

    pub fn with_subring(f: Arc<Algebra>, g: Subspace, left_basis: Option<Vec<Element>>) -> Result<Self, ExtensionError> {
        let g_basis = as_elements(&g);
        Self::with_subring_basis(f, g_basis, left_basis)
    }

    /// `G` given by a k-basis, which becomes the basis of
    /// [`ExtensionPresentation::subring_algebra`].
    pub fn with_subring_basis(
        f: Arc<Algebra>,
        g_basis: Vec<Element>,
        left_basis: Option<Vec<Element>>,
    ) -> Result<Self, ExtensionError> {
        for b in &g_basis {
            f.element(b.0.clone())?;
        }
        let g = Subspace::span(f.field(), f.dim(), g_basis.iter().map(|b| b.0.clone()));
        if g.dim() != g_basis.len() {
            return Err(ExtensionError::NotASubring("basis is linearly dependent".into()));
        }
        check_subring(&f, &g)?;
        let left_basis = match left_basis {
            None => compute_left_basis(&f, &g)?,
            Some(b) => {
                validate_left_basis(&f, &g, &b)?;
                b
            }
        };
        let g_algebra = Arc::new(f.subalgebra_on(&g_basis, "g")?);
        let columns: Vec<Vec<Scalar>> = left_basis
            .iter()
            .flat_map(|fj| g_basis.iter().map(|gb| f.mul(gb, fj).0))
            .collect();
        let lambda = Matrix::from_columns(f.field(), f.dim(), &columns);
        let rref = Rref::of(&lambda);
        debug_assert_eq!(rref.rank(), f.dim());
        let left_coords = rref.transform().clone();
        let mut ext = ExtensionPresentation {
            f,
            g,
            g_basis,
            g_algebra,
            left_basis,
            left_coords,
            phi_basis: Vec::new(),
            ladder: OnceLock::new(),
        };
        ext.phi_basis = (0..ext.f.dim()).map(|t| ext.phi_coords(&ext.f.basis(t))).collect();
        Ok(ext)
    }

    /// The trivial extension `F = G`.
    pub fn trivial(f: Arc<Algebra>) -> Self {
        let g = Subspace::full(f.field(), f.dim());
        Self::with_subring(f, g, None).expect("F is a subring of itself")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.f
    }

    pub fn subring(&self) -> &Subspace {
        &self.g
    }

    pub fn subring_basis(&self) -> &[Element] {
        &self.g_basis
    }

    /// `G` as an algebra on [`ExtensionPresentation::subring_basis`].
    pub fn subring_algebra(&self) -> &Arc<Algebra> {
        &self.g_algebra
    }

    pub fn left_basis(&self) -> &[Element] {
        &self.left_basis
    }

    /// Left dimension `n` of `F` over `G`.
    pub fn n(&self) -> usize {
        self.left_basis.len()
    }

    /// The element of `F` represented by `G`-coordinates.
    pub fn g_element(&self, coords: &[Scalar]) -> Element {
        let mut out = self.f.zero();
        for (c, b) in coords.iter().zip(&self.g_basis) {
            out = self.f.add(&out, &self.f.scale(c, b));
        }
        out
    }

    /// `x = sum_j a_j f_j` with `a_j` returned in `G`-coordinates.
    pub fn left_coordinates(&self, x: &Element) -> Vec<Element> {
        let c = self.left_coords.mul_vec(&x.0);
        c.chunks(self.g.dim()).map(|ch| Element(ch.to_vec())).collect()
    }

    /// `phi(a)` with entries in `G`-coordinates.
    pub fn phi_coords(&self, a: &Element) -> Grid {
        let n = self.n();
        let rows: Vec<Vec<Element>> = self
            .left_basis
            .iter()
            .map(|fi| self.left_coordinates(&self.f.mul(fi, a)))
            .collect();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        Grid::from_rows(&self.g_algebra, &rows).expect("square")
    }

    /// `phi(a)` with entries as elements of `F` lying in `G`.
    pub fn phi_embed(&self, a: &Element) -> Vec<Vec<Element>> {
        let grid = self.phi_coords(a);
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.g_element(grid.entry(i, j))).collect())
            .collect()
    }

    pub fn phi_of_basis(&self) -> &[Grid] {
        &self.phi_basis
    }

    /// Linear map `F -> k^N` reading the given block of `phi(a)`.
    pub fn phi_block_map(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        let idx = Grid::block_indices(self.n(), self.g.dim(), rows, cols);
        let columns: Vec<Vec<Scalar>> = self
            .phi_basis
            .iter()
            .map(|grid| idx.iter().map(|&i| grid.flat()[i].clone()).collect())
            .collect();
        Matrix::from_columns(self.f.field(), idx.len(), &columns)
    }

    fn block_kernel(&self, rows: Range<usize>, cols: Range<usize>) -> Subspace {
        let map = self.phi_block_map(rows, cols);
        Subspace::span(self.f.field(), self.f.dim(), map.rref().nullspace())
    }

    pub fn l_subspace(&self, k: usize) -> Subspace {
        left_span(&self.f, &self.g, &self.left_basis[..=k])
    }

    /// `S_k` and `D_k` from vanishing blocks of `phi`, plus the dimension
    /// ratios. Cached after the first call.
    pub fn ladder(&self) -> Result<&LadderData, ExtensionError> {
        self.ladder
            .get_or_init(|| self.compute_ladder())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_ladder(&self) -> Result<LadderData, ExtensionError> {
        let n = self.n();
        let l: Vec<Subspace> = (0..n).map(|k| self.l_subspace(k)).collect();
        let s: Vec<Subspace> = (0..n).map(|k| self.block_kernel(0..k + 1, k + 1..n)).collect();
        let d: Vec<Subspace> = (0..n)
            .map(|k| {
                if k == 0 {
                    Subspace::full(self.f.field(), self.f.dim())
                } else {
                    self.block_kernel(0..k, k + 1..n)
                }
            })
            .collect();
        let mut dims_over_s = Vec::with_capacity(n);
        for k in 0..n {
            let (dd, sd) = (d[k].dim(), s[k].dim());
            if sd == 0 || dd % sd != 0 {
                return Err(ExtensionError::IndivisibleLadder {
                    k,
                    d_dim: dd,
                    s_dim: sd,
                });
            }
            dims_over_s.push(dd / sd);
        }
        Ok(LadderData { l, s, d, dims_over_s })
    }

    /// `S_k` and `D_k` computed from the containments `L_k a ⊆ L_k` and
    /// `L_{k-1} a ⊆ L_k` directly, without `phi`.
    pub fn ladder_by_containment(&self) -> (Vec<Subspace>, Vec<Subspace>) {
        let n = self.n();
        let l: Vec<Subspace> = (0..n).map(|k| self.l_subspace(k)).collect();
        let s = (0..n).map(|k| self.f.right_transporters(&l[k], &l[k])).collect();
        let d = (0..n)
            .map(|k| {
                if k == 0 {
                    Subspace::full(self.f.field(), self.f.dim())
                } else {
                    self.f.right_transporters(&l[k - 1], &l[k])
                }
            })
            .collect();
        (s, d)
    }

    /// The element of `F` whose first `k` rows vanish in columns `k..n` and
    /// whose row `k` reads `0, 1, 0, ..., 0` there, if one exists.
    pub fn splitting_element(&self, k: usize) -> Option<Element> {
        let n = self.n();
        if k + 1 >= n {
            return None;
        }
        let map = self.phi_block_map(0..k + 1, k..n);
        let d = self.g.dim();
        let mut target = vec![self.f.field().zero(); map.rows()];
        // row k, column k+1 within the block
        let at = (k * (n - k) + 1) * d;
        let one = self.g_algebra.one();
        target[at..at + d].clone_from_slice(&one.0);
        map.rref().solve(&target).map(Element)
    }

    pub fn lemma_regular_check(&self, k: usize) -> Result<RegularCheck, ExtensionError> {
        let n = self.n();
        if k == 0 || k >= n {
            return Err(ExtensionError::IndexOutOfRange {
                index: k,
                min: 1,
                max: n.saturating_sub(1),
            });
        }
        let ladder = self.ladder()?;
        let l_prev = ladder.l[k - 1].clone();
        let fk_s: Vec<Vec<Scalar>> = ladder.s[k - 1]
            .basis()
            .iter()
            .map(|b| self.f.mul(&self.left_basis[k], &Element(b.clone())).0)
            .collect();
        let columns: Vec<Vec<Scalar>> = l_prev.basis().iter().cloned().chain(fk_s).collect();
        let system = Matrix::from_columns(self.f.field(), self.f.dim(), &columns).rref();
        let span_dim = system.rank();
        Ok(RegularCheck {
            k,
            holds: span_dim == self.f.dim(),
            span_dim,
            l_prev,
            s_prev: ladder.s[k - 1].clone(),
            system,
        })
    }

    /// A nonzero `a` with `H1 a = H2`, for left `G`-subspaces of equal
    /// dimension.
    pub fn transporter(&self, h1: &Subspace, h2: &Subspace) -> Result<Element, ExtensionError> {
        for (h, name) in [(h1, "H1"), (h2, "H2")] {
            if h.ambient() != self.f.dim() || !left_span(&self.f, &self.g, &as_elements(h)).eq(h) {
                return Err(ExtensionError::NotLeftSubmodule(name));
            }
        }
        if h1.dim() != h2.dim() {
            return Err(ExtensionError::DimensionMismatch(h1.dim(), h2.dim()));
        }
        let space = self.f.right_transporters(h1, h2);
        let Some(a) = space.basis().first().cloned().map(Element) else {
            return Err(ExtensionError::NoTransporter);
        };
        if self.f.right_multiple(h1, &a) != *h2 {
            // right multiplication by a is not injective on H1
            let columns: Vec<Vec<Scalar>> = h1.basis().iter().map(|x| self.f.mul(&Element(x.clone()), &a).0).collect();
            let kernel = Matrix::from_columns(self.f.field(), self.f.dim(), &columns).rref().nullspace();
            let c = kernel.first().expect("rank deficit");
            return Err(ExtensionError::ZeroDivisor {
                element: Element(h1.combine(c)),
                certificate: a,
            });
        }
        Ok(a)
    }
}

pub(crate) fn as_elements(v: &Subspace) -> Vec<Element> {
    v.basis().iter().cloned().map(Element).collect()
}

fn validate_left_basis(f: &Algebra, g: &Subspace, basis: &[Element]) -> Result<(), ExtensionError> {
    let Some(first) = basis.first() else {
        return Err(ExtensionError::InvalidLeftBasis("empty".into()));
    };
    for b in basis {
        f.element(b.0.clone())?;
    }
    if *first != f.one() {
        return Err(ExtensionError::InvalidLeftBasis("f_0 must be 1".into()));
    }
    let span = left_span(f, g, basis);
    if span.dim() != f.dim() {
        return Err(ExtensionError::InvalidLeftBasis(format!(
            "left span has dimension {}, F has {}",
            span.dim(),
            f.dim()
        )));
    }
    if basis.len() * g.dim() != f.dim() {
        return Err(ExtensionError::InvalidLeftBasis("elements are not left independent".into()));
    }
    Ok(())
}

/// Outcome of testing `F = L_{k-1} + f_k S_{k-1}`.
#[derive(Debug, Clone)]
pub struct RegularCheck {
    pub k: usize,
    pub holds: bool,
    pub span_dim: usize,
    l_prev: Subspace,
    s_prev: Subspace,
    system: Rref,
}

impl RegularCheck {
    /// Writes `x = a + f_k b` with `a` in `L_{k-1}` and `b` in `S_{k-1}`.
    pub fn decompose(&self, ext: &ExtensionPresentation, x: &Element) -> Option<(Element, Element)> {
        let c = self.system.solve(&x.0)?;
        let split = self.l_prev.dim();
        let a = Element(self.l_prev.combine(&c[..split]));
        let b = Element(self.s_prev.combine(&c[split..]));
        debug_assert_eq!(ext.f.add(&a, &ext.f.mul(&ext.left_basis[self.k], &b)), *x);
        Some((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cbrt2_field, hamilton, quadratic_field};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    pub(crate) fn sqrt2() -> ExtensionPresentation {
        ExtensionPresentation::new(Arc::new(quadratic_field(Q, 2)), &[], None).unwrap()
    }

    pub(crate) fn cbrt2() -> ExtensionPresentation {
        ExtensionPresentation::new(Arc::new(cbrt2_field(Q)), &[], None).unwrap()
    }

    pub(crate) fn quat() -> ExtensionPresentation {
        let h = Arc::new(hamilton(Q));
        let i = h.basis(1);
        ExtensionPresentation::new(h, &[i], None).unwrap()
    }

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    #[test]
    fn greedy_left_bases() {
        let e = sqrt2();
        assert_eq!(e.left_basis(), &[e.algebra().one(), e.algebra().basis(1)]);
        let e = quat();
        assert_eq!(e.n(), 2);
        assert_eq!(e.left_basis()[1], e.algebra().basis(2));
        let t = ExtensionPresentation::trivial(Arc::new(hamilton(Q)));
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn explicit_left_basis_validation() {
        let f = Arc::new(quadratic_field(Q, 2));
        let ok = ExtensionPresentation::new(f.clone(), &[], Some(vec![f.one(), f.from_ints(&[1, 1])]));
        assert!(ok.is_ok());
        let bad = ExtensionPresentation::new(f.clone(), &[], Some(vec![f.basis(1), f.one()]));
        assert!(matches!(bad, Err(ExtensionError::InvalidLeftBasis(_))));
        let short = ExtensionPresentation::new(f.clone(), &[], Some(vec![f.one()]));
        assert!(matches!(short, Err(ExtensionError::InvalidLeftBasis(_))));
    }

    #[test]
    fn non_subring_rejected() {
        let h = hamilton(Q);
        let v = Subspace::span(Q, 4, vec![h.one().0, h.basis(1).0, h.basis(2).0]);
        assert!(matches!(compute_left_basis(&h, &v), Err(ExtensionError::NotASubring(_))));
    }

    #[test]
    fn phi_of_sqrt2() {
        let e = sqrt2();
        let f = e.algebra();
        // a = x + y s with x = 3, y = 5
        let grid = e.phi_coords(&f.from_ints(&[3, 5]));
        let expected: Vec<Vec<Scalar>> = vec![vec![q(3)], vec![q(5)], vec![q(10)], vec![q(3)]];
        let got: Vec<Vec<Scalar>> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| grid.entry(i, j).to_vec()).collect();
        assert_eq!(got, expected);
        let id = e.phi_embed(&f.one());
        assert_eq!(id[0][0], f.one());
        assert!(id[0][1].is_zero());
    }

    #[test]
    fn phi_of_cube_root() {
        let e = cbrt2();
        let f = e.algebra();
        let (x, y, z) = (2, -1, 7);
        let grid = e.phi_coords(&f.from_ints(&[x, y, z]));
        let rows = [[x, y, z], [2 * z, x, y], [2 * y, 2 * z, x]];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(grid.entry(i, j), &[q(v)], "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn phi_of_quaternions() {
        // phi(a + bi + cj + dk) = [[a+bi, c+di], [-c+di, a-bi]] in G = Q(i)
        let e = quat();
        let grid = e.phi_coords(&e.algebra().from_ints(&[1, 2, 3, 4]));
        let g = e.subring_algebra();
        assert_eq!(grid.element(0, 0), g.from_ints(&[1, 2]));
        assert_eq!(grid.element(0, 1), g.from_ints(&[3, 4]));
        assert_eq!(grid.element(1, 0), g.from_ints(&[-3, 4]));
        assert_eq!(grid.element(1, 1), g.from_ints(&[1, -2]));
    }

    #[test]
    fn ladders() {
        let e = sqrt2();
        let l = e.ladder().unwrap();
        assert_eq!(l.dims_over_s, vec![2, 1]);
        assert_eq!(l.s[0].dim(), 1);
        assert_eq!(l.d[0].dim(), 2);

        let e = cbrt2();
        let f = e.algebra();
        let l = e.ladder().unwrap();
        assert_eq!(l.dims_over_s, vec![3, 2, 1]);
        assert_eq!(l.s[1], Subspace::span(Q, 3, vec![f.one().0]));
        assert_eq!(l.d[1], Subspace::span(Q, 3, vec![f.one().0, f.basis(1).0]));

        let t = ExtensionPresentation::trivial(Arc::new(quadratic_field(Q, 2)));
        let l = t.ladder().unwrap();
        assert_eq!(l.dims_over_s, vec![1]);
        assert_eq!(l.s[0].dim(), 2);
    }

    #[test]
    fn ladder_routes_agree() {
        for e in [sqrt2(), cbrt2(), quat()] {
            let l = e.ladder().unwrap();
            let (s, d) = e.ladder_by_containment();
            assert_eq!(l.s, s);
            assert_eq!(l.d, d);
            assert_eq!(l.s[0], *e.subring());
            assert_eq!(l.s[e.n() - 1].dim(), e.algebra().dim());
            for k in 0..e.n() {
                assert!(l.d[k].contains_subspace(&l.s[k]));
            }
        }
    }

    #[test]
    fn regular_checks() {
        let e = sqrt2();
        assert!(e.lemma_regular_check(1).unwrap().holds);
        let e = cbrt2();
        let c1 = e.lemma_regular_check(1).unwrap();
        assert!(!c1.holds);
        assert_eq!(c1.span_dim, 2);
        let c2 = e.lemma_regular_check(2).unwrap();
        assert!(c2.holds);
        let x = e.algebra().from_ints(&[4, -2, 9]);
        let (a, b) = c2.decompose(&e, &x).unwrap();
        let f = e.algebra();
        assert_eq!(f.add(&a, &f.mul(&e.left_basis()[2], &b)), x);
        assert!(matches!(e.lemma_regular_check(0), Err(ExtensionError::IndexOutOfRange { .. })));
        assert!(matches!(e.lemma_regular_check(3), Err(ExtensionError::IndexOutOfRange { .. })));
    }

    #[test]
    fn transporters() {
        let e = sqrt2();
        let f = e.algebra();
        let h1 = Subspace::span(Q, 2, vec![f.one().0]);
        let h2 = Subspace::span(Q, 2, vec![f.basis(1).0]);
        assert_eq!(e.transporter(&h1, &h2).unwrap(), f.basis(1));
        let full = Subspace::full(Q, 2);
        assert_eq!(e.transporter(&full, &full).unwrap(), f.one());
        assert!(matches!(e.transporter(&h1, &full), Err(ExtensionError::DimensionMismatch(1, 2))));

        let e = cbrt2();
        let f = e.algebra();
        let h1 = Subspace::span(Q, 3, vec![f.one().0]);
        let h2 = Subspace::span(Q, 3, vec![f.basis(1).0]);
        assert_eq!(e.transporter(&h1, &h2).unwrap(), f.basis(1));

        let e = quat();
        let f = e.algebra();
        let not_g_stable = Subspace::span(Q, 4, vec![f.one().0]);
        assert!(matches!(
            e.transporter(&not_g_stable, &not_g_stable),
            Err(ExtensionError::NotLeftSubmodule("H1"))
        ));
        let h1 = e.subring().clone();
        let h2 = left_span(f, e.subring(), &[f.basis(2)]);
        let a = e.transporter(&h1, &h2).unwrap();
        assert_eq!(f.right_multiple(&h1, &a), h2);
    }

    #[test]
    fn splitting_elements() {
        // in sqrt2, e for k = 0 has first row (0, 1): it is s itself
        let e = sqrt2();
        assert_eq!(e.splitting_element(0), Some(e.algebra().basis(1)));
        assert_eq!(e.splitting_element(1), None);
    }
}
