//! The full classification pipeline and its machine-readable report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canonical::{canonical_generators, canonical_hilbert_check, CanonicalModule};
use crate::document::SemigroupDocument;
use crate::error::{Error, Result};
use crate::invariants::{
    cokernel_data, h_vector, hilbert_function, is_almost_gorenstein, prop53_type_check,
    stanley_inequalities, theorem51_classifier, HVector,
};
use crate::semigroup::{AffineSemigroup, SemiStandard};
use crate::staircase::{build_staircase, Staircase};
use crate::trace::{
    corollary37_validator, is_nearly_gorenstein, theorem35_validator, MonomialIdeal,
};
use crate::verdict::Verdict;

/// A report field that may be unavailable; unavailable fields always carry
/// a machine-readable reason code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Maybe<T> {
    Value(T),
    Unavailable { unavailable: String },
}

impl<T> Maybe<T> {
    fn missing(reason: &str) -> Self {
        Maybe::Unavailable {
            unavailable: reason.to_string(),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Maybe::Value(v) => Some(v),
            Maybe::Unavailable { .. } => None,
        }
    }
}

/// The invariant and property bundle emitted by the CLI. Field names are
/// stable and part of the output format.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    pub dim: usize,
    pub extremal_rays: Vec<Vec<i64>>,
    pub is_pointed: bool,
    pub is_simplicial: bool,
    pub is_semi_standard: String,
    pub hilbert_prefix: Vec<usize>,
    pub h_vector: Maybe<Vec<i64>>,
    pub socle_degree: Maybe<i64>,
    pub a_invariant: Maybe<i64>,
    pub is_cohen_macaulay: Maybe<bool>,
    pub cm_experimental: bool,
    pub depth_at_least_two: Maybe<bool>,
    pub canonical_generators: Maybe<Vec<Vec<i64>>>,
    pub canonical_degrees: Maybe<Vec<i64>>,
    pub canonical_source: Maybe<String>,
    pub cm_type: Maybe<usize>,
    pub is_gorenstein: Maybe<bool>,
    pub is_level: Maybe<bool>,
    pub is_nearly_gorenstein: Maybe<bool>,
    pub is_almost_gorenstein: Maybe<bool>,
    pub stanley_inequalities: Maybe<Vec<bool>>,
    pub cokernel_numerator: Maybe<Vec<i64>>,
    pub validator_results: BTreeMap<String, String>,
    pub provenance_notes: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        fn fmt<T: std::fmt::Debug>(m: &Maybe<T>) -> String {
            match m {
                Maybe::Value(v) => format!("{v:?}"),
                Maybe::Unavailable { unavailable } => format!("unavailable ({unavailable})"),
            }
        }
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("name                : {}", self.name));
        line(format!("dim                 : {}", self.dim));
        line(format!("extremal rays       : {:?}", self.extremal_rays));
        line(format!("pointed             : {}", self.is_pointed));
        line(format!("simplicial          : {}", self.is_simplicial));
        line(format!("semi-standard       : {}", self.is_semi_standard));
        line(format!("hilbert prefix      : {:?}", self.hilbert_prefix));
        line(format!("h-vector            : {}", fmt(&self.h_vector)));
        line(format!("socle degree        : {}", fmt(&self.socle_degree)));
        line(format!("a-invariant         : {}", fmt(&self.a_invariant)));
        let cm_suffix = if self.cm_experimental {
            "  [experimental]"
        } else {
            ""
        };
        line(format!(
            "Cohen-Macaulay      : {}{}",
            fmt(&self.is_cohen_macaulay),
            cm_suffix
        ));
        line(format!(
            "depth >= 2          : {}",
            fmt(&self.depth_at_least_two)
        ));
        line(format!(
            "canonical gens      : {}",
            fmt(&self.canonical_generators)
        ));
        line(format!(
            "canonical degrees   : {}",
            fmt(&self.canonical_degrees)
        ));
        line(format!(
            "canonical source    : {}",
            fmt(&self.canonical_source)
        ));
        line(format!("CM type             : {}", fmt(&self.cm_type)));
        line(format!(
            "Gorenstein          : {}",
            fmt(&self.is_gorenstein)
        ));
        line(format!("level               : {}", fmt(&self.is_level)));
        line(format!(
            "nearly Gorenstein   : {}",
            fmt(&self.is_nearly_gorenstein)
        ));
        line(format!(
            "almost Gorenstein   : {}",
            fmt(&self.is_almost_gorenstein)
        ));
        line(format!(
            "Stanley inequalities: {}",
            fmt(&self.stanley_inequalities)
        ));
        line(format!(
            "cokernel numerator  : {}",
            fmt(&self.cokernel_numerator)
        ));
        for (k, v) in &self.validator_results {
            line(format!("validator {k:<9} : {v}"));
        }
        for note in &self.provenance_notes {
            line(format!("note: {note}"));
        }
        out
    }
}

/// Options of the classification pipeline.
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Staircase enumeration horizon; `None` derives it from the socle
    /// degree and escalates automatically on certification failure.
    pub max_degree: Option<i64>,
    /// Bound for the semi-standardness multiple search.
    pub multiple_bound: i64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_degree: None,
            multiple_bound: 64,
        }
    }
}

/// Where the canonical module came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalSource {
    Computed,
    External,
}

/// Everything the pipeline produced, including live objects for further
/// queries; `report` is the serializable snapshot.
#[derive(Debug)]
pub struct Classification {
    pub semigroup: AffineSemigroup,
    pub staircase: Option<Staircase>,
    pub hvector: Option<HVector>,
    pub canonical: Option<(CanonicalModule, CanonicalSource)>,
    pub report: ClassificationReport,
    /// Certification steps that failed after exhausting their retries
    /// (reason codes). The report still carries `unavailable` fields for
    /// them; the CLI maps a nonempty list to its internal-failure exit.
    pub certification_failures: Vec<String>,
}

/// Run the full pipeline on an input document.
///
/// Construction errors (inconsistent grading, unpointed input) propagate;
/// everything past construction degrades to `unavailable` fields with
/// reason codes instead of failing, except internal certification failures
/// which surface as errors after the automatic retries.
pub fn classify_document(
    doc: &SemigroupDocument,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    let s = doc.build()?;
    let dim = s.dim();
    let rays = s.cone().extremal_rays().to_vec();
    let is_simplicial = rays.len() == dim;
    let semi_standard = s.is_semi_standard(opts.multiple_bound);
    let mut notes: Vec<String> = Vec::new();

    // h-vector with socle-degree detection
    let hres = h_vector(&s);
    let hv = hres.as_ref().ok();
    let (h_field, socle_field): (Maybe<Vec<i64>>, Maybe<i64>) = match &hres {
        Ok(h) => (
            Maybe::Value(h.entries().to_vec()),
            Maybe::Value(h.socle_degree()),
        ),
        Err(e) => (Maybe::missing(e.code()), Maybe::missing(e.code())),
    };
    let hilbert_prefix = {
        let len = match hv {
            Some(h) => h.socle_degree() + dim as i64 + 2,
            None => 2 * s.max_generator_degree() + dim as i64 + 5,
        };
        hilbert_function(&s, len)
    };

    // staircase: simplicial with degree-1 extremal generators. An explicit
    // max_degree is a hard horizon; the derived default escalates on
    // certification failure.
    let mut certification_failures: Vec<String> = Vec::new();
    let mut staircase: Option<Staircase> = None;
    let mut staircase_reason = "NOT_SIMPLICIAL";
    if is_simplicial && dim >= 1 {
        if s.extremal_generators()
            .iter()
            .all(|e| s.degree(e) == Some(1))
        {
            let (mut horizon, attempts) = match opts.max_degree {
                Some(h) => (h, 1),
                None => {
                    let socle_estimate = hv
                        .map(|h| h.socle_degree())
                        .unwrap_or(2 * s.max_generator_degree());
                    (4 * (socle_estimate + dim as i64 + 5), 3)
                }
            };
            horizon = horizon.max(1);
            for _ in 0..attempts {
                match build_staircase(&s, horizon) {
                    Ok(t) => {
                        staircase = Some(t);
                        break;
                    }
                    Err(Error::HorizonTooSmall { .. }) => horizon *= 2,
                    Err(_) => break,
                }
            }
            if staircase.is_none() {
                staircase_reason = "HORIZON_TOO_SMALL";
                certification_failures.push("HORIZON_TOO_SMALL".into());
            }
        } else {
            staircase_reason = "RAYS_NOT_DEGREE_ONE";
        }
    }

    // Cohen-Macaulayness
    let cm_experimental = dim >= 3;
    if cm_experimental && staircase.is_some() {
        notes
            .push("cohen_macaulay: simplicial criterion beyond dimension 2 is experimental".into());
    }
    let cm: Maybe<bool> = if dim == 1 {
        // one-dimensional semigroup domains are always Cohen-Macaulay
        Maybe::Value(true)
    } else {
        match &staircase {
            Some(t) => match t.is_cohen_macaulay() {
                Ok(b) => Maybe::Value(b),
                Err(e) => Maybe::missing(e.code()),
            },
            None => Maybe::missing(staircase_reason),
        }
    };
    let cm_true = cm.value() == Some(&true);

    let depth2: Maybe<bool> = match &staircase {
        Some(t) if dim == 2 => match t.depth_at_least_two() {
            Ok(b) => Maybe::Value(b),
            Err(e) => Maybe::missing(e.code()),
        },
        Some(_) => Maybe::missing("UNSUPPORTED_DIMENSION"),
        None => Maybe::missing(staircase_reason),
    };

    // canonical module: externally supplied generators win, otherwise
    // computed from the staircase when the ring is Cohen-Macaulay
    let mut canonical: Option<(CanonicalModule, CanonicalSource)> = None;
    let mut canonical_reason = String::new();
    if let Some(ext) = doc.external_canonical() {
        let degrees: Result<Vec<i64>> = ext
            .iter()
            .map(|v| {
                s.degree(v).ok_or_else(|| {
                    Error::InvalidIdeal(format!(
                        "external canonical generator {v} outside the group"
                    ))
                })
            })
            .collect();
        match degrees {
            Ok(degs) => {
                canonical = Some((CanonicalModule::new(ext, degs), CanonicalSource::External));
                notes.push("canonical_source: external generators supplied by the input".into());
            }
            Err(e) => canonical_reason = e.code().to_string(),
        }
    } else if let (Some(t), Some(h), true, true) = (&staircase, hv, cm_true, dim >= 2) {
        let mut scale = 1i64;
        for _ in 0..3 {
            match canonical_generators(t, &s, h, scale) {
                Ok(m) => {
                    canonical = Some((m, CanonicalSource::Computed));
                    break;
                }
                Err(Error::BoxTooSmall) => scale *= 2,
                Err(e) => {
                    canonical_reason = e.code().to_string();
                    break;
                }
            }
        }
        if canonical.is_none() && canonical_reason.is_empty() {
            canonical_reason = Error::BoxTooSmall.code().to_string();
            certification_failures.push(canonical_reason.clone());
        }
    } else if !is_simplicial {
        canonical_reason = "NOT_SIMPLICIAL".into();
    } else if !cm_true {
        canonical_reason = "NOT_CM".into();
    } else {
        canonical_reason = "UNSUPPORTED_DIMENSION".into();
    }

    let (canon_gens, canon_degs, canon_src, cm_type, gorenstein, level): (
        Maybe<Vec<Vec<i64>>>,
        Maybe<Vec<i64>>,
        Maybe<String>,
        Maybe<usize>,
        Maybe<bool>,
        Maybe<bool>,
    ) = match &canonical {
        Some((m, src)) => (
            Maybe::Value(m.generators().iter().map(|v| v.coords().to_vec()).collect()),
            Maybe::Value(m.degrees().to_vec()),
            Maybe::Value(
                match src {
                    CanonicalSource::Computed => "computed",
                    CanonicalSource::External => "external",
                }
                .to_string(),
            ),
            Maybe::Value(m.cm_type()),
            Maybe::Value(m.is_gorenstein()),
            Maybe::Value(m.is_level()),
        ),
        None => (
            Maybe::missing(&canonical_reason),
            Maybe::missing(&canonical_reason),
            Maybe::missing(&canonical_reason),
            Maybe::missing(&canonical_reason),
            Maybe::missing(&canonical_reason),
            Maybe::missing(&canonical_reason),
        ),
    };

    // a-invariant: negative minimal canonical degree; for CM rings this
    // equals socle degree minus dimension
    let a_invariant: Maybe<i64> = match (&canonical, hv, cm_true) {
        (Some((m, _)), _, _) => Maybe::Value(m.a_invariant()),
        (None, Some(h), true) => Maybe::Value(h.socle_degree() - dim as i64),
        _ => Maybe::missing(if cm_true { "NO_H_VECTOR" } else { "NOT_CM" }),
    };

    // nearly Gorenstein via trace membership of every generator
    let ng: Maybe<bool> = match &canonical {
        Some((m, _)) => match MonomialIdeal::new(&s, m.generators().to_vec()) {
            Ok(ideal) => Maybe::Value(is_nearly_gorenstein(&s, &ideal)),
            Err(e) => Maybe::missing(e.code()),
        },
        None => Maybe::missing(&canonical_reason),
    };

    // almost Gorenstein from the h-vector and the type
    let ag: Maybe<bool> = match (hv, &cm_type) {
        (Some(h), Maybe::Value(r)) if cm_true => Maybe::Value(is_almost_gorenstein(h, *r)),
        (None, _) => Maybe::missing("NO_H_VECTOR"),
        (_, Maybe::Unavailable { unavailable }) => Maybe::missing(unavailable),
        _ => Maybe::missing("NOT_CM"),
    };

    let stanley: Maybe<Vec<bool>> = match hv {
        Some(h) => Maybe::Value(stanley_inequalities(h)),
        None => Maybe::missing("NO_H_VECTOR"),
    };
    let cokernel: Maybe<Vec<i64>> = match (hv, &cm_type) {
        (Some(h), Maybe::Value(r)) => Maybe::Value(cokernel_data(h, *r).numerator),
        (None, _) => Maybe::missing("NO_H_VECTOR"),
        (_, Maybe::Unavailable { unavailable }) => Maybe::missing(unavailable),
    };

    // per-instance validators
    let mut validators = BTreeMap::new();
    {
        let v35 = match (&staircase, &canonical) {
            (Some(t), Some((m, _))) if dim == 2 && m.cm_type() >= 2 => {
                match MonomialIdeal::new(&s, m.generators().to_vec()) {
                    Ok(ideal) => match theorem35_validator(&s, t, &ideal) {
                        Ok(v) => v.as_str().to_string(),
                        Err(e) => format!("VACUOUS ({})", e.code()),
                    },
                    Err(e) => format!("VACUOUS ({})", e.code()),
                }
            }
            _ => Verdict::Vacuous.as_str().to_string(),
        };
        validators.insert("3.5".to_string(), v35);

        let v36 = match (&ng, &gorenstein, hv) {
            (Maybe::Value(ng), Maybe::Value(gor), Some(h)) => Verdict::from_rule(
                semi_standard == SemiStandard::Yes && cm_true && !gor && *ng,
                h.last() >= 2,
            ),
            _ => Verdict::Vacuous,
        };
        validators.insert("3.6".to_string(), v36.as_str().to_string());

        let v37 = match (&ng, &cm_type, &level) {
            (Maybe::Value(ng), Maybe::Value(r), Maybe::Value(level)) => {
                corollary37_validator(*ng, *r, *level)
            }
            _ => Verdict::Vacuous,
        };
        validators.insert("3.7".to_string(), v37.as_str().to_string());

        let v51 = match (hv, &cm_type, &level, &gorenstein) {
            (Some(h), Maybe::Value(r), Maybe::Value(level), Maybe::Value(gor)) if cm_true => {
                theorem51_classifier(h, *r, *level, *gor).verdict
            }
            _ => Verdict::Vacuous,
        };
        validators.insert("5.1".to_string(), v51.as_str().to_string());

        let v53 = match (hv, &cm_type, &level) {
            (Some(h), Maybe::Value(r), Maybe::Value(level)) if cm_true => {
                match prop53_type_check(h, *r, *level) {
                    Ok(ok) => Verdict::from_rule(true, ok),
                    Err(_) => Verdict::Vacuous,
                }
            }
            _ => Verdict::Vacuous,
        };
        validators.insert("5.3".to_string(), v53.as_str().to_string());
    }

    notes.push("all verdicts are combinatorial and independent of the base field".to_string());

    let report = ClassificationReport {
        name: doc.name.clone(),
        dim,
        extremal_rays: rays.iter().map(|r| r.coords().to_vec()).collect(),
        is_pointed: true,
        is_simplicial,
        is_semi_standard: semi_standard.as_str().to_string(),
        hilbert_prefix,
        h_vector: h_field,
        socle_degree: socle_field,
        a_invariant,
        is_cohen_macaulay: cm,
        cm_experimental,
        depth_at_least_two: depth2,
        canonical_generators: canon_gens,
        canonical_degrees: canon_degs,
        canonical_source: canon_src,
        cm_type,
        is_gorenstein: gorenstein,
        is_level: level,
        is_nearly_gorenstein: ng,
        is_almost_gorenstein: ag,
        stanley_inequalities: stanley,
        cokernel_numerator: cokernel,
        validator_results: validators,
        provenance_notes: notes,
    };

    Ok(Classification {
        semigroup: s,
        staircase,
        hvector: hres.ok(),
        canonical,
        report,
        certification_failures,
    })
}

/// Consistency check of the canonical module against the Hilbert series,
/// re-exported here for cross-identity suites.
pub fn verify_canonical(c: &Classification) -> Option<bool> {
    match (&c.canonical, &c.hvector) {
        (Some((m, _)), Some(h)) => Some(canonical_hilbert_check(m, &c.semigroup, h)),
        _ => None,
    }
}
