//! `(A, B)`-bimodules given by action matrices over the ground field, right
//! duals `Hom_B(M, B)` and right dimension sequences.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::extension::ExtensionPresentation;
use crate::matrix::{Matrix, Subspace};
use crate::probe::{division_probe, ProbeConfig, ProbeVerdict};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("malformed bimodule: {0}")]
    Shape(String),
    #[error("{side} ring is not a division ring: {element} has zero-divisor certificate {certificate}")]
    NotDivisionCertified {
        side: &'static str,
        element: Element,
        certificate: Element,
    },
    #[error("dimension {dim} is not a multiple of the ring dimension {ring_dim}")]
    Indivisible { dim: usize, ring_dim: usize },
    #[error("max_len must be at least 1")]
    EmptySequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleRep {
    left_ring: Arc<Algebra>,
    right_ring: Arc<Algebra>,
    dim: usize,
    /// `x -> e_i x` for each basis vector of the left ring.
    left_action: Vec<Matrix>,
    /// `x -> x e_j` for each basis vector of the right ring.
    right_action: Vec<Matrix>,
}

/// A failed bimodule axiom, by basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BimoduleDefect {
    LeftUnit,
    RightUnit,
    LeftProduct(usize, usize),
    RightProduct(usize, usize),
    NotCommuting(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleReport {
    pub defects: Vec<BimoduleDefect>,
}

impl BimoduleReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl BimoduleRep {
    pub fn new(
        left_ring: Arc<Algebra>,
        right_ring: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self, BimoduleError> {
        let field = left_ring.field();
        if right_ring.field() != field {
            return Err(BimoduleError::Shape("rings over different fields".into()));
        }
        for (name, ring, acts) in [("left", &left_ring, &left_action), ("right", &right_ring, &right_action)] {
            if acts.len() != ring.dim() {
                return Err(BimoduleError::Shape(format!(
                    "{name} action has {} matrices, ring has dimension {}",
                    acts.len(),
                    ring.dim()
                )));
            }
            if let Some(bad) = acts.iter().position(|m| m.rows() != dim || m.cols() != dim || m.field() != field) {
                return Err(BimoduleError::Shape(format!("{name} action matrix {bad} is not {dim}x{dim}")));
            }
        }
        Ok(BimoduleRep {
            left_ring,
            right_ring,
            dim,
            left_action,
            right_action,
        })
    }

    /// The zero `(A, B)`-bimodule.
    pub fn zero(left_ring: Arc<Algebra>, right_ring: Arc<Algebra>) -> Self {
        let field = left_ring.field();
        let left_action = vec![Matrix::zeros(field, 0, 0); left_ring.dim()];
        let right_action = vec![Matrix::zeros(field, 0, 0); right_ring.dim()];
        BimoduleRep {
            left_ring,
            right_ring,
            dim: 0,
            left_action,
            right_action,
        }
    }

    /// `F` as a `(G, F)`-bimodule.
    pub fn from_extension(ext: &ExtensionPresentation) -> Self {
        let f = ext.algebra().clone();
        let left_action = ext.subring_basis().iter().map(|g| f.left_regular_rep(g)).collect();
        let right_action = (0..f.dim()).map(|j| f.right_regular_rep(&f.basis(j))).collect();
        BimoduleRep {
            left_ring: ext.subring_algebra().clone(),
            right_ring: f.clone(),
            dim: f.dim(),
            left_action,
            right_action,
        }
    }

    /// A ring acting on itself from both sides.
    pub fn regular(ring: Arc<Algebra>) -> Self {
        let left_action = (0..ring.dim()).map(|i| ring.left_regular_rep(&ring.basis(i))).collect();
        let right_action = (0..ring.dim()).map(|j| ring.right_regular_rep(&ring.basis(j))).collect();
        BimoduleRep {
            left_ring: ring.clone(),
            right_ring: ring.clone(),
            dim: ring.dim(),
            left_action,
            right_action,
        }
    }

    pub fn left_ring(&self) -> &Arc<Algebra> {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &Arc<Algebra> {
        &self.right_ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn with_right_action(mut self, right_action: Vec<Matrix>) -> Result<Self, BimoduleError> {
        self.right_action = right_action;
        Self::new(self.left_ring, self.right_ring, self.dim, self.left_action, self.right_action)
    }

    fn combine(&self, acts: &[Matrix], coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.left_ring.field(), self.dim, self.dim);
        for (c, m) in coords.iter().zip(acts) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn verify(&self) -> BimoduleReport {
        let mut defects = Vec::new();
        let identity = Matrix::identity(self.left_ring.field(), self.dim);
        let (a, b) = (&self.left_ring, &self.right_ring);
        if self.combine(&self.left_action, &a.one().0) != identity {
            defects.push(BimoduleDefect::LeftUnit);
        }
        if self.combine(&self.right_action, &b.one().0) != identity {
            defects.push(BimoduleDefect::RightUnit);
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.combine(&self.left_action, a.product_of_basis(i, j));
                let rhs = self.left_action[i].mul(&self.left_action[j]).expect("square");
                if lhs != rhs {
                    defects.push(BimoduleDefect::LeftProduct(i, j));
                }
            }
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                // x (e_i e_j) = (x e_i) e_j
                let lhs = self.combine(&self.right_action, b.product_of_basis(i, j));
                let rhs = self.right_action[j].mul(&self.right_action[i]).expect("square");
                if lhs != rhs {
                    defects.push(BimoduleDefect::RightProduct(i, j));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.mul(r).expect("square") != r.mul(l).expect("square") {
                    defects.push(BimoduleDefect::NotCommuting(i, j));
                }
            }
        }
        BimoduleReport { defects }
    }
}

pub fn verify_bimodule(m: &BimoduleRep) -> BimoduleReport {
    m.verify()
}

fn certify(ring: &Algebra, side: &'static str, cfg: ProbeConfig) -> Result<(), BimoduleError> {
    match division_probe(ring, cfg).verdict {
        ProbeVerdict::CertifiedNotDivision { element, certificate, .. } => Err(BimoduleError::NotDivisionCertified {
            side,
            element,
            certificate,
        }),
        ProbeVerdict::NoCounterexampleFound { .. } => Ok(()),
    }
}

fn right_dim_of(m: &BimoduleRep) -> Result<usize, BimoduleError> {
    let ring_dim = m.right_ring.dim();
    if m.dim % ring_dim != 0 {
        return Err(BimoduleError::Indivisible { dim: m.dim, ring_dim });
    }
    Ok(m.dim / ring_dim)
}

/// Dimension of `M` as a right vector space over its right ring.
pub fn right_dim(m: &BimoduleRep, cfg: ProbeConfig) -> Result<usize, BimoduleError> {
    certify(&m.right_ring, "right", cfg)?;
    right_dim_of(m)
}

/// `Hom_B(M, B)` as a `(B, A)`-bimodule.
pub fn right_dual(m: &BimoduleRep, cfg: ProbeConfig) -> Result<BimoduleRep, BimoduleError> {
    certify(&m.right_ring, "right", cfg)?;
    Ok(dual_of(m))
}

fn dual_of(m: &BimoduleRep) -> BimoduleRep {
    let b = &m.right_ring;
    let field = b.field();
    let (db, dm) = (b.dim(), m.dim);
    // unknown phi[r][c] sits at r * dm + c
    let unknowns = db * dm;
    let mut rows = Vec::new();
    for (beta, rho) in m.right_action.iter().enumerate() {
        let rb = b.right_regular_rep(&b.basis(beta));
        for r in 0..db {
            for c in 0..dm {
                let mut row = vec![field.zero(); unknowns];
                for t in 0..dm {
                    let v = rho.get(t, c);
                    if !v.is_zero() {
                        row[r * dm + t] = &row[r * dm + t] + v;
                    }
                }
                for s in 0..db {
                    let v = rb.get(r, s);
                    if !v.is_zero() {
                        row[s * dm + c] = &row[s * dm + c] - v;
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows_with_cols(field, unknowns, rows).expect("row length");
    let space = Subspace::span(field, unknowns, system.rref().nullspace());
    let q = space.dim();
    let as_matrix = |v: &[Scalar]| {
        Matrix::from_rows_with_cols(field, dm, v.chunks(dm.max(1)).take(db).map(<[Scalar]>::to_vec).collect())
            .expect("shape")
    };
    let flatten = |mat: Matrix| mat.into_vec();
    let basis: Vec<Matrix> = space.basis().iter().map(|v| as_matrix(v)).collect();
    let action = |f: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|phi| space.coords(&flatten(f(phi))).expect("dual is stable under the actions"))
            .collect();
        Matrix::from_columns(field, q, &cols)
    };
    let left_action = (0..db)
        .map(|beta| {
            let lb = b.left_regular_rep(&b.basis(beta));
            action(&|phi: &Matrix| lb.mul(phi).expect("shape"))
        })
        .collect();
    let right_action = m
        .left_action
        .iter()
        .map(|la| action(&|phi: &Matrix| phi.mul(la).expect("shape")))
        .collect();
    BimoduleRep {
        left_ring: m.right_ring.clone(),
        right_ring: m.left_ring.clone(),
        dim: q,
        left_action,
        right_action,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSequence {
    pub entries: Vec<usize>,
    /// Minimal period, once the sequence has repeated in full twice.
    pub period: Option<usize>,
    pub truncated: bool,
}

impl DimensionSequence {
    /// The entries through two full periods, or all of them.
    pub fn two_cycles(&self) -> &[usize] {
        match self.period {
            Some(p) => &self.entries[..(2 * p).min(self.entries.len())],
            None => &self.entries,
        }
    }
}

/// `(dim M_B, dim (M^r)_A, dim (M^rr)_B, ...)` with at most `max_len` terms.
pub fn dimension_sequence(m: &BimoduleRep, max_len: usize, cfg: ProbeConfig) -> Result<DimensionSequence, BimoduleError> {
    if max_len == 0 {
        return Err(BimoduleError::EmptySequence);
    }
    certify(&m.left_ring, "left", cfg)?;
    certify(&m.right_ring, "right", cfg)?;
    let same_rings = m.left_ring.same_structure(&m.right_ring);
    let mut entries = Vec::with_capacity(max_len);
    let mut current = m.clone();
    loop {
        entries.push(right_dim_of(&current)?);
        if entries.len() == max_len {
            break;
        }
        current = dual_of(&current);
    }
    let state = |i: usize| (if same_rings { 0 } else { i % 2 }, entries[i]);
    let period = (1..=entries.len() / 2).find(|&p| (0..entries.len() - p).all(|j| state(j) == state(j + p)));
    Ok(DimensionSequence {
        entries,
        period,
        truncated: period.is_none(),
    })
}

pub fn bimodule_from_extension(ext: &ExtensionPresentation) -> BimoduleRep {
    BimoduleRep::from_extension(ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cbrt2_field, hamilton, quadratic_field, split_quaternions};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ext(f: Algebra, gens: &[Element]) -> ExtensionPresentation {
        ExtensionPresentation::new(Arc::new(f), gens, None).unwrap()
    }

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    #[test]
    fn sqrt2_bimodules() {
        let f = Arc::new(quadratic_field(Q, 2));
        let k = Arc::new(Algebra::ground(Q));
        let m = bimodule_from_extension(&ext(quadratic_field(Q, 2), &[]));
        assert!(m.verify().passed());
        assert_eq!(m.dim(), 2);
        assert_eq!(right_dim(&m, cfg()).unwrap(), 1);

        // F as an (F, Q)-bimodule
        let left_action = (0..2).map(|i| f.left_regular_rep(&f.basis(i))).collect();
        let right_action = vec![Matrix::identity(Q, 2)];
        let flipped = BimoduleRep::new(f.clone(), k, 2, left_action, right_action).unwrap();
        assert!(flipped.verify().passed());
        assert_eq!(right_dim(&flipped, cfg()).unwrap(), 2);

        let dual = right_dual(&m, cfg()).unwrap();
        assert_eq!(dual.dim(), 2);
        assert_eq!(dual.left_ring(), m.right_ring());
        assert_eq!(dual.right_ring(), m.left_ring());
        assert!(dual.verify().passed());
        assert_eq!(right_dim(&dual, cfg()).unwrap(), 2);
    }

    #[test]
    fn corrupted_right_action() {
        let m = bimodule_from_extension(&ext(quadratic_field(Q, 2), &[]));
        let mut acts = m.right_action().to_vec();
        acts[1] = Matrix::zeros(Q, 2, 2);
        let bad = m.clone().with_right_action(acts).unwrap();
        let report = bad.verify();
        assert!(!report.passed());
        assert!(report.defects.contains(&BimoduleDefect::RightProduct(1, 1)));
        let mut acts = m.right_action().to_vec();
        acts[0] = Matrix::zeros(Q, 2, 2);
        assert!(m.with_right_action(acts).unwrap().verify().defects.contains(&BimoduleDefect::RightUnit));
    }

    #[test]
    fn zero_module() {
        let f = Arc::new(quadratic_field(Q, 2));
        let z = BimoduleRep::zero(Arc::new(Algebra::ground(Q)), f);
        assert!(z.verify().passed());
        assert_eq!(right_dim(&z, cfg()).unwrap(), 0);
        let d = right_dual(&z, cfg()).unwrap();
        assert_eq!(d.dim(), 0);
    }

    #[test]
    fn sequences() {
        let s = dimension_sequence(&bimodule_from_extension(&ext(quadratic_field(Q, 2), &[])), 6, cfg()).unwrap();
        assert_eq!(s.entries, vec![1, 2, 1, 2, 1, 2]);
        assert_eq!(s.period, Some(2));
        assert!(!s.truncated);
        assert_eq!(s.two_cycles(), &[1, 2, 1, 2]);

        let s = dimension_sequence(&bimodule_from_extension(&ext(cbrt2_field(Q), &[])), 8, cfg()).unwrap();
        assert_eq!(s.entries, vec![1, 3, 1, 3, 1, 3, 1, 3]);
        assert_eq!(s.period, Some(2));

        let h = hamilton(Q);
        let i = h.basis(1);
        let m = bimodule_from_extension(&ext(h, &[i]));
        assert_eq!(m.left_ring().dim(), 2);
        let s = dimension_sequence(&m, DEFAULT_MAX_LEN, cfg()).unwrap();
        assert_eq!(s.two_cycles(), &[1, 2, 1, 2]);
        assert_eq!(s.entries.len(), DEFAULT_MAX_LEN);

        let short = dimension_sequence(&m, 3, cfg()).unwrap();
        assert_eq!(short.entries, vec![1, 2, 1]);
        assert!(short.truncated);
        assert!(matches!(dimension_sequence(&m, 0, cfg()), Err(BimoduleError::EmptySequence)));
    }

    #[test]
    fn trivial_extension_has_period_one() {
        let t = ExtensionPresentation::trivial(Arc::new(cbrt2_field(Q)));
        let s = dimension_sequence(&bimodule_from_extension(&t), 4, cfg()).unwrap();
        assert_eq!(s.entries, vec![1, 1, 1, 1]);
        assert_eq!(s.period, Some(1));
    }

    #[test]
    fn double_dual_dimension() {
        for m in [
            bimodule_from_extension(&ext(cbrt2_field(Q), &[])),
            bimodule_from_extension(&ext(hamilton(Q), &[hamilton(Q).basis(1)])),
        ] {
            let dd = dual_of(&dual_of(&m));
            assert_eq!(dd.dim(), m.dim());
            assert_eq!(dd.left_ring(), m.left_ring());
        }
    }

    #[test]
    fn zero_divisors_refused() {
        let s = Arc::new(split_quaternions(Q));
        let m = BimoduleRep::regular(s);
        assert!(m.verify().passed());
        assert!(matches!(
            right_dim(&m, cfg()),
            Err(BimoduleError::NotDivisionCertified { side: "right", .. })
        ));
    }
}
