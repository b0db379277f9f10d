//! Analytic stretch classes ordered by divisibility.
//!
//! The class of `y -> y^p` is tighter than the class of `y -> y^q` when the
//! connecting germ `y -> y^(p/q)` is analytic, that is when `q` divides `p`.
//! The class `1` (no stretch) lies below every other one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stretch::StretchGerm;

/// Class of the stretch by `y -> y^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StretchClass(u32);

impl StretchClass {
    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::Precondition("stretch classes start at 1".into()));
        }
        Ok(StretchClass(p))
    }

    pub fn p(self) -> u32 {
        self.0
    }

    /// The canonical germ `y^p` at the given order.
    pub fn germ(self, order: u32) -> Result<StretchGerm> {
        StretchGerm::power(self.0, order)
    }
}

impl fmt::Display for StretchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[y^{}]", self.0)
    }
}

/// True when `a` is tighter than `b`, i.e. `b.p` divides `a.p`.
pub fn is_tighter(a: StretchClass, b: StretchClass) -> bool {
    a.0 % b.0 == 0
}

/// The germ connecting the canonical stretches of `a` and `b`, when it is
/// analytic: `y^(a/b)`.
pub fn connecting_germ(a: StretchClass, b: StretchClass, order: u32) -> Result<Option<StretchGerm>> {
    if !is_tighter(a, b) {
        return Ok(None);
    }
    StretchGerm::power(a.0 / b.0, order).map(Some)
}

/// Results of checking the partial-order axioms on a sample.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub sample_size: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub counterexample: Option<Vec<u32>>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

/// Exhaustive check of reflexivity, antisymmetry and transitivity.
pub fn partial_order_axioms(sample: &[StretchClass]) -> AxiomReport {
    let mut report = AxiomReport {
        sample_size: sample.len(),
        reflexive: true,
        antisymmetric: true,
        transitive: true,
        counterexample: None,
    };
    for &a in sample {
        if !is_tighter(a, a) {
            report.reflexive = false;
            report.counterexample.get_or_insert(vec![a.0]);
        }
    }
    for &a in sample {
        for &b in sample {
            if !(is_tighter(a, b) && is_tighter(b, a)) {
                continue;
            }
            if a != b {
                report.antisymmetric = false;
                report.counterexample.get_or_insert(vec![a.0, b.0]);
            }
        }
    }
    for &a in sample {
        for &b in sample.iter().filter(|&&b| is_tighter(a, b)) {
            for &c in sample.iter().filter(|&&c| is_tighter(b, c)) {
                if !is_tighter(a, c) {
                    report.transitive = false;
                    report.counterexample.get_or_insert(vec![a.0, b.0, c.0]);
                }
            }
        }
    }
    report
}

/// The element below every other one, if the sample has one.
pub fn tightest(sample: &[StretchClass]) -> Option<StretchClass> {
    sample
        .iter()
        .copied()
        .find(|&t| sample.iter().all(|&x| is_tighter(x, t)))
}

/// The first `k` classes `1..=k`.
pub fn enumerate_classes(k: u32) -> Result<Vec<StretchClass>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok((1..=k).map(StretchClass).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    NonConjugate,
    Conjugate,
    Inconclusive,
}

/// A serializable verdict on whether two stretches are conjugate, with the
/// chain of results it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub p: u32,
    pub q: u32,
    #[serde(rename = "condition_A")]
    pub condition_a: bool,
    pub justification: Vec<String>,
}

pub fn nonconjugacy_certificate(a: StretchClass, b: StretchClass, condition_a: bool) -> Certificate {
    let (p, q) = (a.0, b.0);
    let (kind, justification) = if p == q {
        (
            CertificateKind::Conjugate,
            vec![
                "identical stretch classes".to_string(),
                "conjugated by the trivial germ y -> y".to_string(),
            ],
        )
    } else if !condition_a {
        (
            CertificateKind::Inconclusive,
            vec![
                "condition (A) not established".to_string(),
                "the non-conjugacy criterion requires condition (A)".to_string(),
            ],
        )
    } else {
        let (hi, lo) = (p.max(q), p.min(q));
        let exponent = if hi % lo == 0 {
            format!("{}", hi / lo)
        } else {
            format!("({hi}/{lo})")
        };
        (
            CertificateKind::NonConjugate,
            vec![
                format!("valuations {p} and {q} differ"),
                format!("connecting germ y -> y^{exponent} is not a diffeomorphism at 0"),
                "condition (A): normalizer of the stabilizer equals stabilizer times center".to_string(),
                "common regularity of equivariant semi-conjugacies".to_string(),
                "stretches by non-equivalent stretching functions are not conjugate".to_string(),
            ],
        )
    };
    Certificate {
        kind,
        p,
        q,
        condition_a,
        justification,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32) -> StretchClass {
        StretchClass::new(p).unwrap()
    }

    fn cs(ps: &[u32]) -> Vec<StretchClass> {
        ps.iter().map(|&p| c(p)).collect()
    }

    #[test]
    fn tighter_examples() {
        assert!(is_tighter(c(4), c(2)));
        assert!(!is_tighter(c(2), c(3)));
        assert!(is_tighter(c(7), c(7)));
        assert!((1..30).all(|p| is_tighter(c(p), c(1))));
        assert!(StretchClass::new(0).is_err());
    }

    #[test]
    fn axioms_on_small_sample() {
        let r = partial_order_axioms(&enumerate_classes(50).unwrap());
        assert!(r.passed());
        assert!(r.counterexample.is_none());
        assert!(is_tighter(c(12), c(6)) && is_tighter(c(6), c(3)) && is_tighter(c(12), c(3)));
    }

    #[test]
    fn tightest_examples() {
        assert_eq!(tightest(&cs(&[1, 2, 3, 6])), Some(c(1)));
        assert_eq!(tightest(&cs(&[2, 3])), None);
        assert_eq!(tightest(&cs(&[4])), Some(c(4)));
        assert_eq!(tightest(&cs(&[6, 2, 4])), Some(c(2)));
        assert_eq!(tightest(&[]), None);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_classes(3).unwrap(), cs(&[1, 2, 3]));
        assert_eq!(enumerate_classes(1).unwrap(), cs(&[1]));
        assert!(enumerate_classes(0).is_err());
    }

    #[test]
    fn certificates() {
        assert_eq!(nonconjugacy_certificate(c(2), c(3), true).kind, CertificateKind::NonConjugate);
        assert_eq!(nonconjugacy_certificate(c(5), c(5), true).kind, CertificateKind::Conjugate);
        assert_eq!(nonconjugacy_certificate(c(2), c(3), false).kind, CertificateKind::Inconclusive);
        let json = serde_json::to_value(nonconjugacy_certificate(c(2), c(4), true)).unwrap();
        assert_eq!(json["kind"], "NonConjugate");
        assert_eq!(json["condition_A"], true);
        assert_eq!(json["q"], 4);
    }

    #[test]
    fn connecting_germs_compose() {
        let order = 20;
        let (a, b) = (c(6), c(2));
        let g = connecting_germ(a, b, order).unwrap().unwrap();
        assert_eq!(g.valuation(), 3);
        let composed = b.germ(order).unwrap().series().substitute_y(g.series()).unwrap();
        assert_eq!(&composed, a.germ(order).unwrap().series());
        assert!(connecting_germ(c(2), c(3), order).unwrap().is_none());
    }
}
