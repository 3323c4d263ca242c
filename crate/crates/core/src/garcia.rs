//! Cross-check between the ladder condition "every `D_k` is 2-dimensional
//! over `S_k` for `k < n - 1`" and the right dimension sequence
//! `(1, 2, ..., 2, 1, n)` of the `(G, F)`-bimodule `F`.

use thiserror::Error;

use crate::bimodule::{bimodule_from_extension, dimension_sequence, BimoduleError, DEFAULT_MAX_LEN};
use crate::extension::{ExtensionError, ExtensionPresentation};
use crate::probe::ProbeConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GarciaError {
    #[error("the report needs n >= 2, got n = {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GarciaVerdict {
    ConsistentPositive,
    ConsistentNegative,
    /// The two conditions disagree, which would be a bug in this library.
    Inconsistent,
}

impl GarciaVerdict {
    pub fn label(self) -> &'static str {
        match self {
            GarciaVerdict::ConsistentPositive => "consistent-positive",
            GarciaVerdict::ConsistentNegative => "consistent-negative",
            GarciaVerdict::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GarciaReport {
    pub n: usize,
    /// `dim D_k / dim S_k == 2` for `0 <= k < n - 1`.
    pub condition2: Vec<bool>,
    pub dims_over_s: Vec<usize>,
    /// The computed sequence through two full periods.
    pub sequence: Vec<usize>,
    pub period: Option<usize>,
    pub target: Vec<usize>,
    pub sequence_match: bool,
    pub verdict: GarciaVerdict,
}

/// `(1, 2, ..., 2, 1, n)` of length `n + 2`.
pub fn target_sequence(n: usize) -> Vec<usize> {
    let mut t = vec![1];
    t.extend(std::iter::repeat_n(2, n - 1));
    t.extend([1, n]);
    t
}

pub fn garcia_report(ext: &ExtensionPresentation, cfg: ProbeConfig) -> Result<GarciaReport, GarciaError> {
    let n = ext.n();
    if n < 2 {
        return Err(GarciaError::TooSmall(n));
    }
    let ladder = ext.ladder()?;
    let condition2: Vec<bool> = ladder.dims_over_s[..n - 1].iter().map(|&d| d == 2).collect();
    let target = target_sequence(n);
    let seq = dimension_sequence(&bimodule_from_extension(ext), DEFAULT_MAX_LEN.max(n + 2), cfg)?;
    let sequence_match = seq.entries[..n + 2] == target[..];
    let verdict = match (condition2.iter().all(|&c| c), sequence_match) {
        (true, true) => GarciaVerdict::ConsistentPositive,
        (false, false) => GarciaVerdict::ConsistentNegative,
        _ => GarciaVerdict::Inconsistent,
    };
    Ok(GarciaReport {
        n,
        condition2,
        dims_over_s: ladder.dims_over_s.clone(),
        sequence: seq.two_cycles().to_vec(),
        period: seq.period,
        target,
        sequence_match,
        verdict,
    })
}

/// Dimension vectors `(1,0), (2,1), ..., (n,n-1), (1,1), (0,1)` of the
/// indecomposable modules in the finite-type case.
pub fn coxeter_catalog(n: usize) -> Vec<(usize, usize)> {
    (1..=n).map(|t| (t, t - 1)).chain([(1, 1), (0, 1)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cbrt2_field, hamilton, quadratic_field};
    use crate::scalar::FieldSpec;
    use std::sync::Arc;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn targets() {
        assert_eq!(target_sequence(2), vec![1, 2, 1, 2]);
        assert_eq!(target_sequence(3), vec![1, 2, 2, 1, 3]);
        assert_eq!(target_sequence(4), vec![1, 2, 2, 2, 1, 4]);
    }

    #[test]
    fn catalogs() {
        assert_eq!(coxeter_catalog(2), vec![(1, 0), (2, 1), (1, 1), (0, 1)]);
        let c4 = coxeter_catalog(4);
        assert_eq!(c4, vec![(1, 0), (2, 1), (3, 2), (4, 3), (1, 1), (0, 1)]);
        assert_eq!(c4.len(), 6);
    }

    #[test]
    fn reports() {
        let cfg = ProbeConfig::default();
        let e = ExtensionPresentation::new(Arc::new(quadratic_field(Q, 2)), &[], None).unwrap();
        let r = garcia_report(&e, cfg).unwrap();
        assert_eq!(r.condition2, vec![true]);
        assert_eq!(r.sequence, vec![1, 2, 1, 2]);
        assert_eq!(r.verdict, GarciaVerdict::ConsistentPositive);

        let e = ExtensionPresentation::new(Arc::new(cbrt2_field(Q)), &[], None).unwrap();
        let r = garcia_report(&e, cfg).unwrap();
        assert_eq!(r.condition2, vec![false, true]);
        assert_eq!(r.sequence, vec![1, 3, 1, 3]);
        assert!(!r.sequence_match);
        assert_eq!(r.verdict, GarciaVerdict::ConsistentNegative);

        let h = hamilton(Q);
        let i = h.basis(1);
        let e = ExtensionPresentation::new(Arc::new(h), &[i], None).unwrap();
        let r = garcia_report(&e, cfg).unwrap();
        assert_eq!(r.condition2, vec![true]);
        assert_eq!(r.verdict.label(), "consistent-positive");

        let t = ExtensionPresentation::trivial(Arc::new(cbrt2_field(Q)));
        assert_eq!(garcia_report(&t, cfg), Err(GarciaError::TooSmall(1)));
    }
}
