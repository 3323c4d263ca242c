//! Finite-dimensional algebras over the ground field, presented by a basis
//! and a table of structure constants `e_i e_j = sum_l c[i][j][l] e_l`.

use std::fmt;

use thiserror::Error;

use crate::matrix::{axpy, unit_vector, Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras (dimension {expected} vs {found})")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("invalid structure table: {0}")]
    InvalidTable(String),
    #[error("table is not associative: (e{}*e{})*e{} != e{}*(e{}*e{})", .0.0, .0.1, .0.2, .0.0, .0.1, .0.2)]
    NotAssociative((usize, usize, usize)),
    #[error("unit does not act as identity on e{0}")]
    NotUnital(usize),
    #[error("cannot invert the zero element")]
    ZeroElement,
    #[error("element is a zero divisor (certificate {certificate})")]
    NotInvertible { certificate: Element, side: Side },
    #[error("subspace is not a subring: {0}")]
    NotASubring(String),
}

/// Which side a zero-divisor certificate annihilates from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `u * w = 0`
    Right,
    /// `w * u = 0`
    Left,
}

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Scalar>);

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    field: FieldSpec,
    names: Vec<String>,
    /// `table[i * dim + j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
}

pub type Algebra = StructureConstantAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub associative: bool,
    pub unital: bool,
    pub associativity_witnesses: Vec<(usize, usize, usize)>,
    pub unit_witnesses: Vec<usize>,
}

impl StructureConstantAlgebra {
    /// Builds the algebra from sparse `(i, j, coefficients)` entries and
    /// checks associativity and the unit. Omitted products are zero.
    pub fn new(
        field: FieldSpec,
        names: Vec<String>,
        entries: Vec<(usize, usize, Vec<Scalar>)>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        let a = Self::unchecked(field, names, entries, unit)?;
        let report = a.verify();
        if let Some(&w) = report.associativity_witnesses.first() {
            return Err(AlgebraError::NotAssociative(w));
        }
        if let Some(&w) = report.unit_witnesses.first() {
            return Err(AlgebraError::NotUnital(w));
        }
        Ok(a)
    }

    /// Shape checks only; use [`StructureConstantAlgebra::verify`] to test the
    /// algebra axioms.
    pub fn unchecked(
        field: FieldSpec,
        names: Vec<String>,
        entries: Vec<(usize, usize, Vec<Scalar>)>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        let m = names.len();
        if m == 0 {
            return Err(AlgebraError::InvalidTable("empty basis".into()));
        }
        let mut table: Vec<Option<Vec<Scalar>>> = vec![None; m * m];
        for (i, j, coeffs) in entries {
            if i >= m || j >= m {
                return Err(AlgebraError::InvalidTable(format!("index ({i}, {j}) out of range")));
            }
            if coeffs.len() != m {
                return Err(AlgebraError::InvalidTable(format!(
                    "product ({i}, {j}) has {} coefficients, expected {m}",
                    coeffs.len()
                )));
            }
            if coeffs.iter().any(|c| c.field() != field) {
                return Err(AlgebraError::InvalidTable(format!("product ({i}, {j}) over the wrong field")));
            }
            if table[i * m + j].replace(coeffs).is_some() {
                return Err(AlgebraError::InvalidTable(format!("product ({i}, {j}) given twice")));
            }
        }
        let unit = unit.unwrap_or_else(|| unit_vector(field, m, 0));
        if unit.len() != m || unit.iter().any(|c| c.field() != field) {
            return Err(AlgebraError::InvalidTable("unit has the wrong shape".into()));
        }
        Ok(StructureConstantAlgebra {
            field,
            names,
            table: table
                .into_iter()
                .map(|c| c.unwrap_or_else(|| vec![field.zero(); m]))
                .collect(),
            unit,
        })
    }

    /// Equality of field, table and unit, ignoring basis names.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table && self.unit == other.unit
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: FieldSpec) -> Self {
        Self::new(field, vec!["1".into()], vec![(0, 0, vec![field.one()])], None).expect("k is an algebra")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim() + j]
    }

    /// Every table entry with a nonzero product, in row-major order.
    pub fn table_entries(&self) -> impl Iterator<Item = (usize, usize, &[Scalar])> {
        let m = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
            .map(move |(idx, c)| (idx / m, idx % m, c.as_slice()))
    }

    /// Checks `(e_i e_j) e_l = e_i (e_j e_l)` for all triples and that the
    /// unit is a two-sided identity on the basis.
    pub fn verify(&self) -> AlgebraReport {
        let m = self.dim();
        let mut assoc = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let ij = Element(self.product_of_basis(i, j).to_vec());
                for l in 0..m {
                    let left = self.mul(&ij, &self.basis(l));
                    let jl = Element(self.product_of_basis(j, l).to_vec());
                    let right = self.mul(&self.basis(i), &jl);
                    if left != right {
                        assoc.push((i, j, l));
                    }
                }
            }
        }
        let one = self.one();
        let unit_w: Vec<usize> = (0..m)
            .filter(|&i| {
                let e = self.basis(i);
                self.mul(&one, &e) != e || self.mul(&e, &one) != e
            })
            .collect();
        AlgebraReport {
            associative: assoc.is_empty(),
            unital: unit_w.is_empty(),
            associativity_witnesses: assoc,
            unit_witnesses: unit_w,
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![self.field.zero(); self.dim()])
    }

    pub fn one(&self) -> Element {
        Element(self.unit.clone())
    }

    pub fn basis(&self, i: usize) -> Element {
        Element(unit_vector(self.field, self.dim(), i))
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        self.check(&coords)?;
        Ok(Element(coords))
    }

    pub fn from_ints(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim());
        Element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    fn check(&self, coords: &[Scalar]) -> Result<(), AlgebraError> {
        if coords.len() != self.dim() || coords.iter().any(|c| c.field() != self.field) {
            return Err(AlgebraError::AlgebraMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, u: &Element, v: &Element) -> Element {
        Element(u.0.iter().zip(&v.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, u: &Element, v: &Element) -> Element {
        Element(u.0.iter().zip(&v.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar, u: &Element) -> Element {
        Element(u.0.iter().map(|a| c * a).collect())
    }

    /// Checked product.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        self.check(&u.0)?;
        self.check(&v.0)?;
        Ok(self.mul(u, v))
    }

    /// Bilinear extension of the structure table; callers guarantee both
    /// operands come from this algebra.
    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        let m = self.dim();
        debug_assert_eq!(u.0.len(), m);
        debug_assert_eq!(v.0.len(), m);
        let mut out = vec![self.field.zero(); m];
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ui * vj), &self.table[i * m + j]);
            }
        }
        Element(out)
    }

    /// Matrix of `v -> u v`; column `j` holds the coordinates of `u e_j`.
    pub fn left_regular_rep(&self, u: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(u, &self.basis(j)).0).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `v -> v u`.
    pub fn right_regular_rep(&self, u: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(&self.basis(j), u).0).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Two-sided inverse, or a zero-divisor certificate.
    pub fn invert(&self, u: &Element) -> Result<Element, AlgebraError> {
        self.check(&u.0)?;
        if u.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let left = self.left_regular_rep(u).rref();
        let Some(v) = left.solve(&self.unit) else {
            let w = left.nullspace().into_iter().next().expect("singular map has a kernel");
            return Err(AlgebraError::NotInvertible {
                certificate: Element(w),
                side: Side::Right,
            });
        };
        let v = Element(v);
        if self.mul(&v, u) != self.one() {
            let right = self.right_regular_rep(u).rref();
            if let Some(w) = right.nullspace().into_iter().next() {
                return Err(AlgebraError::NotInvertible {
                    certificate: Element(w),
                    side: Side::Left,
                });
            }
            // right multiplication is bijective, so the right inverse is two-sided
            let r = right.solve(&self.unit).expect("bijective");
            return Err(AlgebraError::InvalidTable(format!(
                "one-sided inverses {v} and {} disagree",
                Element(r)
            )));
        }
        Ok(v)
    }

    /// Smallest subspace containing `generators` (and 1 when asked) that is
    /// closed under multiplication.
    pub fn subring_closure(&self, generators: &[Element], include_unit: bool) -> Subspace {
        let mut seed: Vec<Vec<Scalar>> = generators.iter().map(|g| g.0.clone()).collect();
        if include_unit {
            seed.push(self.unit.clone());
        }
        let mut current = Subspace::span(self.field, self.dim(), seed);
        // the dimension grows every round that does not reach the fixpoint
        for _ in 0..=self.dim() {
            let basis: Vec<Element> = current.basis().iter().cloned().map(Element).collect();
            let products = basis
                .iter()
                .flat_map(|a| basis.iter().map(move |b| (a, b)))
                .map(|(a, b)| self.mul(a, b).0);
            let next = Subspace::span(self.field, self.dim(), current.basis().iter().cloned().chain(products));
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
        current
    }

    /// Membership of `u` in `v`, with coordinates in `v`'s echelon basis.
    pub fn subspace_membership(&self, v: &Subspace, u: &Element) -> Result<Option<Vec<Scalar>>, AlgebraError> {
        self.check(&u.0)?;
        if v.ambient() != self.dim() || v.field() != self.field {
            return Err(AlgebraError::AlgebraMismatch {
                expected: self.dim(),
                found: v.ambient(),
            });
        }
        Ok(v.coords(&u.0))
    }

    /// `{a : x a in into for every x in from}`, solved as one linear system.
    pub fn right_transporters(&self, from: &Subspace, into: &Subspace) -> Subspace {
        let ann = into.annihilator();
        let m = self.dim();
        let mut rows = Matrix::zeros(self.field, 0, m);
        for x in from.basis() {
            let lx = self.left_regular_rep(&Element(x.clone()));
            rows = rows.vstack(&ann.mul(&lx).expect("shapes agree"));
        }
        Subspace::span(self.field, m, rows.rref().nullspace())
    }

    /// The subspace `v a = {x a : x in v}`.
    pub fn right_multiple(&self, v: &Subspace, a: &Element) -> Subspace {
        Subspace::span(
            self.field,
            self.dim(),
            v.basis().iter().map(|x| self.mul(&Element(x.clone()), a).0),
        )
    }

    /// The subspace `a v = {a x : x in v}`.
    pub fn left_multiple(&self, a: &Element, v: &Subspace) -> Subspace {
        Subspace::span(
            self.field,
            self.dim(),
            v.basis().iter().map(|x| self.mul(a, &Element(x.clone())).0),
        )
    }

    /// Products of basis vectors of `v` that fall outside `v`.
    pub fn closure_defects(&self, v: &Subspace) -> Vec<(usize, usize)> {
        let basis: Vec<Element> = v.basis().iter().cloned().map(Element).collect();
        let mut out = Vec::new();
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                if !v.contains(&self.mul(x, y).0) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A unital, multiplicatively closed subspace as an algebra in its own
    /// right, with basis the subspace's echelon basis.
    pub fn subalgebra(&self, v: &Subspace, name_prefix: &str) -> Result<Self, AlgebraError> {
        let basis: Vec<Element> = v.basis().iter().cloned().map(Element).collect();
        self.subalgebra_on(&basis, name_prefix)
    }

    /// Like [`StructureConstantAlgebra::subalgebra`], with a caller-chosen
    /// basis, which must be linearly independent.
    pub fn subalgebra_on(&self, basis: &[Element], name_prefix: &str) -> Result<Self, AlgebraError> {
        for b in basis {
            self.check(&b.0)?;
        }
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.0.clone()).collect();
        let system = Matrix::from_columns(self.field, self.dim(), &columns).rref();
        if system.rank() != basis.len() {
            return Err(AlgebraError::NotASubring("basis is linearly dependent".into()));
        }
        let unit = system
            .solve(&self.unit)
            .ok_or_else(|| AlgebraError::NotASubring("does not contain 1".into()))?;
        let mut entries = Vec::new();
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let c = system.solve(&self.mul(x, y).0).ok_or_else(|| {
                    AlgebraError::NotASubring(format!("product of basis vectors {a} and {b} leaves the subspace"))
                })?;
                entries.push((a, b, c));
            }
        }
        let names = (0..basis.len()).map(|i| format!("{name_prefix}{i}")).collect();
        Self::new(self.field, names, entries, Some(unit))
    }

    pub fn format_element(&self, u: &Element) -> String {
        let mut out = String::new();
        for (c, name) in u.0.iter().zip(&self.names).filter(|(c, _)| !c.is_zero()) {
            let s = c.to_string();
            let (negative, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s.as_str()),
            };
            let term = match (abs, name.as_str()) {
                (a, "1") => a.to_string(),
                ("1", n) => n.to_string(),
                (a, n) => format!("{a}*{n}"),
            };
            let sign = match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(sign);
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
