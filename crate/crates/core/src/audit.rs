//! Audits of finite fragments of the theories of extensions (`T`) and of
//! tight embeddings (`T_n`, `T_n^1`) against concrete models.
//!
//! Axioms quantifying over all elements of a possibly infinite ring (the
//! division-ring axioms) are checked by the zero-divisor probe: a failure is
//! exact, a pass is reported together with the probe policy that produced it.
//! Everything else is decided exactly by linear algebra.

use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::extension::{left_span, ExtensionError, ExtensionPresentation};
use crate::grid::Grid;
use crate::matrix::Subspace;
use crate::probe::{division_probe, ProbeConfig, ProbeReport, ProbeVerdict};
use crate::scalar::Scalar;
use crate::tightness::{corner_block, EmbeddingModel, TightnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotInterpretable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotInterpretable => "not-interpretable",
        }
    }
}

/// Named coordinate vectors refuting an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    pub vectors: Vec<(String, Vec<Scalar>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomId {
    pub theory: &'static str,
    pub axiom: usize,
    pub index: Option<usize>,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.theory, self.axiom)?;
        if let Some(k) = self.index {
            write!(f, "[k={k}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub id: AxiomId,
    pub verdict: Verdict,
    /// Present exactly when the verdict is [`Verdict::Fails`].
    pub witness: Option<Witness>,
    /// How a passing verdict was reached, when that is not plain exact
    /// computation.
    pub note: Option<String>,
}

impl AxiomVerdict {
    fn holds(id: AxiomId, note: Option<String>) -> Self {
        AxiomVerdict {
            id,
            verdict: Verdict::Holds,
            witness: None,
            note,
        }
    }

    fn fails(id: AxiomId, witness: Witness) -> Self {
        AxiomVerdict {
            id,
            verdict: Verdict::Fails,
            witness: Some(witness),
            note: None,
        }
    }

    fn not_interpretable(id: AxiomId, note: String) -> Self {
        AxiomVerdict {
            id,
            verdict: Verdict::NotInterpretable,
            witness: None,
            note: Some(note),
        }
    }
}

pub fn all_hold(verdicts: &[AxiomVerdict]) -> bool {
    verdicts.iter().all(|v| v.verdict != Verdict::Fails)
}

/// Membership of `x` in `D_k` and `S_k`, read off the left coordinates of
/// `f_j x` for `j <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DkSkMembership {
    pub k: usize,
    pub in_dk: bool,
    pub in_sk: bool,
    /// For each `j <= k`, the coefficients `a_0..a_k` (in `G`-coordinates)
    /// with `f_j x = sum a_i f_i`, when they exist.
    pub coefficients: Vec<Option<Vec<Element>>>,
}

pub fn eval_dk_sk(ext: &ExtensionPresentation, k: usize, x: &Element) -> Result<DkSkMembership, ExtensionError> {
    let n = ext.n();
    if k == 0 || k >= n {
        return Err(ExtensionError::IndexOutOfRange {
            index: k,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let f = ext.algebra();
    f.element(x.0.clone())?;
    let coefficients: Vec<Option<Vec<Element>>> = ext.left_basis()[..=k]
        .iter()
        .map(|fj| {
            let mut c = ext.left_coordinates(&f.mul(fj, x));
            if c[k + 1..].iter().all(Element::is_zero) {
                c.truncate(k + 1);
                Some(c)
            } else {
                None
            }
        })
        .collect();
    Ok(DkSkMembership {
        k,
        in_dk: coefficients[..k].iter().all(Option::is_some),
        in_sk: coefficients.iter().all(Option::is_some),
        coefficients,
    })
}

fn probe_note(report: &ProbeReport) -> String {
    match report.verdict {
        ProbeVerdict::NoCounterexampleFound { checked, exhaustive: true } => {
            format!("all {checked} nonzero elements inverted")
        }
        ProbeVerdict::NoCounterexampleFound { checked, .. } => format!(
            "no zero divisor among {checked} probed elements (seed {}, {} random trials)",
            report.seed, report.trials
        ),
        ProbeVerdict::CertifiedNotDivision { .. } => "zero divisor found".into(),
    }
}

fn division_verdict(id: AxiomId, ring: &Algebra, what: &str, cfg: ProbeConfig) -> AxiomVerdict {
    let report = division_probe(ring, cfg);
    division_verdict_from(id, &report, what, |e| e.0.clone())
}

fn division_verdict_from(
    id: AxiomId,
    report: &ProbeReport,
    what: &str,
    coords: impl Fn(&Element) -> Vec<Scalar>,
) -> AxiomVerdict {
    match &report.verdict {
        ProbeVerdict::CertifiedNotDivision {
            element, certificate, ..
        } => AxiomVerdict::fails(
            id,
            Witness {
                description: format!("{what} has a zero divisor"),
                vectors: vec![("element".into(), coords(element)), ("certificate".into(), coords(certificate))],
            },
        ),
        ProbeVerdict::NoCounterexampleFound { .. } => AxiomVerdict::holds(id, Some(probe_note(report))),
    }
}

/// An extension read as a structure for the language of `T`, with
/// constants `f_0..f_{n-1}` interpreted by the left basis.
#[derive(Debug, Clone, Copy)]
pub struct TFragmentModel<'a> {
    pub ext: &'a ExtensionPresentation,
    pub k_max: usize,
}

impl<'a> TFragmentModel<'a> {
    pub fn new(ext: &'a ExtensionPresentation, k_max: usize) -> Self {
        TFragmentModel { ext, k_max }
    }
}

fn t_id(axiom: usize, index: Option<usize>) -> AxiomId {
    AxiomId {
        theory: "T",
        axiom,
        index,
    }
}

/// Axioms (1)-(4) of `T` and the instances `k = 1..=k_max` of schemata (5)
/// and (6).
pub fn audit_t_fragment(model: &TFragmentModel<'_>, cfg: ProbeConfig) -> Result<Vec<AxiomVerdict>, ExtensionError> {
    let ext = model.ext;
    let f = ext.algebra();
    let n = ext.n();
    let g = ext.subring();
    let mut out = Vec::new();

    let f0 = &ext.left_basis()[0];
    out.push(if *f0 == f.one() {
        AxiomVerdict::holds(t_id(1, None), None)
    } else {
        AxiomVerdict::fails(
            t_id(1, None),
            Witness {
                description: "f_0 differs from 1".into(),
                vectors: vec![("f_0".into(), f0.0.clone())],
            },
        )
    });

    out.push(division_verdict(t_id(2, None), f, "F", cfg));

    let defects = f.closure_defects(g);
    out.push(if let Some(&(a, b)) = defects.first() {
        AxiomVerdict::fails(
            t_id(3, None),
            Witness {
                description: "product of two elements of G leaves G".into(),
                vectors: vec![("x".into(), g.basis()[a].clone()), ("y".into(), g.basis()[b].clone())],
            },
        )
    } else {
        division_verdict(t_id(3, None), ext.subring_algebra(), "G", cfg)
    });

    out.push(if n < 2 {
        AxiomVerdict::not_interpretable(t_id(4, None), "f_1 is not interpreted".into())
    } else {
        let f1 = &ext.left_basis()[1];
        let span = g.sum(&f.left_multiple(f1, g));
        match span.first_missing_unit() {
            None => AxiomVerdict::holds(t_id(4, None), None),
            Some(x) => AxiomVerdict::fails(
                t_id(4, None),
                Witness {
                    description: "x is not of the form a + f_1 b with a, b in G".into(),
                    vectors: vec![("x".into(), x)],
                },
            ),
        }
    });

    for k in 1..=model.k_max {
        if k >= n {
            let note = format!("f_{k} is not interpreted");
            out.push(AxiomVerdict::not_interpretable(t_id(5, Some(k)), note.clone()));
            out.push(AxiomVerdict::not_interpretable(t_id(6, Some(k)), note));
            continue;
        }
        let span = left_span(f, g, &ext.left_basis()[..=k]);
        out.push(if span.dim() == (k + 1) * g.dim() {
            AxiomVerdict::holds(t_id(5, Some(k)), None)
        } else {
            AxiomVerdict::fails(
                t_id(5, Some(k)),
                Witness {
                    description: format!(
                        "left span of f_0..f_{k} has dimension {} instead of {}",
                        span.dim(),
                        (k + 1) * g.dim()
                    ),
                    vectors: Vec::new(),
                },
            )
        });
        out.push(schema_six(ext, k)?);
    }
    Ok(out)
}

/// `D_k = S_k + b S_k` for some `b` in `D_k`.
fn schema_six(ext: &ExtensionPresentation, k: usize) -> Result<AxiomVerdict, ExtensionError> {
    let ladder = ext.ladder()?;
    let f = ext.algebra();
    let (d, s) = (&ladder.d[k], &ladder.s[k]);
    let id = t_id(6, Some(k));
    let ratio = ladder.dims_over_s[k];
    if ratio > 2 {
        return Ok(AxiomVerdict::fails(
            id,
            Witness {
                description: format!("D_{k} has dimension {ratio} over S_{k}, so no b gives D_{k} = S_{k} + b S_{k}"),
                vectors: vec![
                    ("dim_d".into(), vec![f.field().from_i64(d.dim() as i64)]),
                    ("dim_s".into(), vec![f.field().from_i64(s.dim() as i64)]),
                ],
            },
        ));
    }
    let b = if ratio == 1 {
        f.one()
    } else {
        ext.splitting_element(k)
            .filter(|e| d.contains(&e.0) && !s.contains(&e.0))
            .unwrap_or_else(|| {
                let outside = d.basis().iter().find(|v| !s.contains(v)).expect("D_k is larger than S_k");
                Element(outside.clone())
            })
    };
    let generated = s.sum(&f.left_multiple(&b, s));
    debug_assert_eq!(generated, *d);
    Ok(AxiomVerdict::holds(id, Some(format!("b = {b}"))))
}

fn tn_id(theory: &'static str, axiom: usize, index: Option<usize>) -> AxiomId {
    AxiomId { theory, axiom, index }
}

fn unit_grid(g: &Algebra, n: usize, i: usize, j: usize) -> Grid {
    let mut m = Grid::zero(g, n);
    m.set(i, j, &g.one());
    m
}

/// Axioms (1)-(4) of `T_n` and the `k`-tightness axioms for `ks`.
fn audit_embedding(
    theory: &'static str,
    model: &EmbeddingModel,
    ks: impl Iterator<Item = usize>,
    cfg: ProbeConfig,
) -> Result<Vec<AxiomVerdict>, TightnessError> {
    let g = model.g();
    let n = model.n();
    let mut out = Vec::new();

    let report = g.verify();
    out.push(if report.associative && report.unital {
        AxiomVerdict::holds(tn_id(theory, 1, None), None)
    } else {
        let (i, j, l) = report.associativity_witnesses.first().copied().unwrap_or((0, 0, 0));
        AxiomVerdict::fails(
            tn_id(theory, 1, None),
            Witness {
                description: "G is not an associative unital algebra".into(),
                vectors: [i, j, l].iter().map(|&t| (format!("e{t}"), g.basis(t).0)).collect(),
            },
        )
    });

    let mut sum = Grid::zero(g, n);
    let mut bad = None;
    for i in 0..n {
        sum = sum.add(&unit_grid(g, n, i, i));
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = unit_grid(g, n, i, j).mul(&unit_grid(g, n, k, l), g);
                    let expected = if j == k { unit_grid(g, n, i, l) } else { Grid::zero(g, n) };
                    if prod != expected && bad.is_none() {
                        bad = Some(prod);
                    }
                }
            }
        }
    }
    if sum != Grid::identity(g, n) {
        bad.get_or_insert(sum);
    }
    out.push(match bad {
        None => AxiomVerdict::holds(tn_id(theory, 2, None), Some("standard matrix units".into())),
        Some(m) => AxiomVerdict::fails(
            tn_id(theory, 2, None),
            Witness {
                description: "matrix unit identity violated".into(),
                vectors: vec![("product".into(), m.into_flat())],
            },
        ),
    });

    out.push(division_verdict(tn_id(theory, 3, None), g, "G", cfg));
    out.push(division_verdict_from(tn_id(theory, 4, None), model.probe(), "F", |e| {
        model.grid_of(&e.0).into_flat()
    }));

    for k in ks {
        let t = model.is_a_tight(k)?;
        let id = tn_id(theory, 5, Some(k));
        if t.tight {
            out.push(AxiomVerdict::holds(id, None));
            continue;
        }
        // a corner block outside the image of the block map
        let columns: Vec<Vec<Scalar>> = model
            .image_basis()
            .iter()
            .map(|m| corner_block(m, k).map(|c| c.flat()))
            .collect::<Result<_, _>>()?;
        let width = k * (n + 1 - k) * g.dim();
        let reached = Subspace::span(g.field(), width, columns);
        let missing = reached.first_missing_unit().expect("rank deficit");
        let mut x = Grid::zero(g, n);
        let d = g.dim();
        for (t, (i, j)) in (0..k).flat_map(|i| (k - 1..n).map(move |j| (i, j))).enumerate() {
            x.set(i, j, &Element(missing[t * d..(t + 1) * d].to_vec()));
        }
        out.push(AxiomVerdict::fails(
            id,
            Witness {
                description: format!("no element of F has the corner block of x (rank {} < {})", t.rank, t.required_rank),
                vectors: vec![("x".into(), x.into_flat()), ("corner_block".into(), missing)],
            },
        ));
    }
    Ok(out)
}

pub fn audit_tn(model: &EmbeddingModel, cfg: ProbeConfig) -> Result<Vec<AxiomVerdict>, TightnessError> {
    audit_embedding("T_n", model, 1..=model.n(), cfg)
}

/// Like [`audit_tn`] with only the 1-tightness axiom kept.
pub fn audit_tn1(model: &EmbeddingModel, cfg: ProbeConfig) -> Result<Vec<AxiomVerdict>, TightnessError> {
    audit_embedding("T_n^1", model, std::iter::once(1), cfg)
}
