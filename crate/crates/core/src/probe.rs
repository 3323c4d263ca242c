//! Falsification probe for the division-ring property.
//!
//! Over the rationals a probe can only ever certify that an algebra is *not*
//! a division ring. Over a prime field with at most [`EXHAUSTIVE_LIMIT`]
//! elements every nonzero element is inverted and the verdict is definitive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraError, Element, Side};
use crate::scalar::FieldSpec;

pub const EXHAUSTIVE_LIMIT: u64 = 4096;
pub const DEFAULT_TRIALS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

impl ProbeConfig {
    pub fn with_seed(seed: u64) -> Self {
        ProbeConfig {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeVerdict {
    CertifiedNotDivision {
        element: Element,
        certificate: Element,
        side: Side,
    },
    NoCounterexampleFound {
        checked: usize,
        exhaustive: bool,
    },
}

impl ProbeVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ProbeVerdict::CertifiedNotDivision { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProbeVerdict::CertifiedNotDivision { .. } => "certified-not-division",
            ProbeVerdict::NoCounterexampleFound { .. } => "no-counterexample-found",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub seed: u64,
    pub trials: usize,
    pub verdict: ProbeVerdict,
}

/// Number of field elements in the algebra if it is small enough to enumerate.
fn exhaustive_size(a: &Algebra) -> Option<u64> {
    let p = a.field().order()?;
    let mut total: u64 = 1;
    for _ in 0..a.dim() {
        total = total.checked_mul(p)?;
        if total > EXHAUSTIVE_LIMIT {
            return None;
        }
    }
    Some(total)
}

fn random_element(a: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let field = a.field();
    loop {
        let coords = (0..a.dim())
            .map(|_| match field {
                FieldSpec::Rationals => field.from_i64(rng.random_range(-4..=4)),
                FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
            })
            .collect();
        let e = Element(coords);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Tries to invert basis elements, pairwise sums of distinct basis elements,
/// and `trials` seeded random elements, or every nonzero element when the
/// algebra is small and finite.
pub fn division_probe(a: &Algebra, config: ProbeConfig) -> ProbeReport {
    let mut checked = 0;
    let mut attempt = |u: Element| -> Option<ProbeVerdict> {
        checked += 1;
        match a.invert(&u) {
            Ok(_) | Err(AlgebraError::ZeroElement) => None,
            Err(AlgebraError::NotInvertible { certificate, side }) => Some(ProbeVerdict::CertifiedNotDivision {
                element: u,
                certificate,
                side,
            }),
            Err(e) => panic!("inversion inside a verified algebra failed: {e}"),
        }
    };
    let report = |verdict| ProbeReport {
        seed: config.seed,
        trials: config.trials,
        verdict,
    };

    if let Some(size) = exhaustive_size(a) {
        let p = a.field().order().expect("finite");
        for code in 1..size {
            let mut c = code;
            let coords = (0..a.dim())
                .map(|_| {
                    let digit = c % p;
                    c /= p;
                    a.field().from_i64(digit as i64)
                })
                .collect();
            if let Some(v) = attempt(Element(coords)) {
                return report(v);
            }
        }
        return report(ProbeVerdict::NoCounterexampleFound {
            checked: (size - 1) as usize,
            exhaustive: true,
        });
    }

    let m = a.dim();
    for i in 0..m {
        if let Some(v) = attempt(a.basis(i)) {
            return report(v);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if let Some(v) = attempt(a.add(&a.basis(i), &a.basis(j))) {
                return report(v);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.trials {
        if let Some(v) = attempt(random_element(a, &mut rng)) {
            return report(v);
        }
    }
    report(ProbeVerdict::NoCounterexampleFound {
        checked,
        exhaustive: false,
    })
}
