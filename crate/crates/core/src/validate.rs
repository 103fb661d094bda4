//! Corpus-level theorem validators and the staircase/membership oracle.
//!
//! Each rule is checked instance by instance with three-valued verdicts;
//! a `FAIL` from any rule would falsify a proved statement and therefore
//! indicates a defect in the engine.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_document, Classification, ClassifyOptions, Maybe};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::semigroup::SemiStandard;
use crate::trace::{theorem35_validator, MonomialIdeal};
use crate::verdict::Verdict;

/// The built-in consistency rules, addressed by their stable identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// "3.5": depth >= 2 and all extremal generators in the trace of a
    /// non-principal ideal force a bottom graded piece of dimension >= 2.
    BottomDimension,
    /// "3.6": a semi-standard CM non-Gorenstein ring with all extremal
    /// generators in the trace of the canonical module has last h-entry
    /// >= 2 (in particular every non-Gorenstein nearly Gorenstein one).
    LastHEntry,
    /// "3.7": nearly Gorenstein with type 2 forces level.
    TypeTwoLevel,
    /// "5.1": for non-Gorenstein rings, almost Gorenstein and level
    /// together are equivalent to socle degree 1.
    SocleOne,
    /// "6.1": standard graded with socle degree >= 2: almost and nearly
    /// Gorenstein together force Gorenstein.
    StandardAgNg,
    /// "6.2": non-standard with dim = socle degree = 2: almost Gorenstein
    /// forces nearly Gorenstein.
    AgImpliesNg,
    /// "6.3": dim = socle degree = 2, non-level almost Gorenstein rings
    /// are nearly Gorenstein with h-vector (1, n-1, n); family members
    /// must reproduce the full expected bundle.
    NonLevelFamily,
}

impl TheoremId {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "3.5" => Ok(TheoremId::BottomDimension),
            "3.6" => Ok(TheoremId::LastHEntry),
            "3.7" => Ok(TheoremId::TypeTwoLevel),
            "5.1" => Ok(TheoremId::SocleOne),
            "6.1" => Ok(TheoremId::StandardAgNg),
            "6.2" => Ok(TheoremId::AgImpliesNg),
            "6.3" => Ok(TheoremId::NonLevelFamily),
            other => Err(Error::UnknownTheorem(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::BottomDimension => "3.5",
            TheoremId::LastHEntry => "3.6",
            TheoremId::TypeTwoLevel => "3.7",
            TheoremId::SocleOne => "5.1",
            TheoremId::StandardAgNg => "6.1",
            TheoremId::AgImpliesNg => "6.2",
            TheoremId::NonLevelFamily => "6.3",
        }
    }

    pub fn all() -> [TheoremId; 7] {
        [
            TheoremId::BottomDimension,
            TheoremId::LastHEntry,
            TheoremId::TypeTwoLevel,
            TheoremId::SocleOne,
            TheoremId::StandardAgNg,
            TheoremId::AgImpliesNg,
            TheoremId::NonLevelFamily,
        ]
    }
}

/// One classified instance queued for rule checking. `family` carries the
/// `(n, k)` parameters when the instance came from the built-in family
/// constructor, enabling the full expected-bundle check.
pub struct CheckInstance {
    pub name: String,
    pub classification: Classification,
    pub family: Option<(i64, i64)>,
}

impl CheckInstance {
    pub fn from_document(
        doc: &crate::document::SemigroupDocument,
        opts: &ClassifyOptions,
        family: Option<(i64, i64)>,
    ) -> Result<Self> {
        Ok(CheckInstance {
            name: doc.name.clone(),
            classification: classify_document(doc, opts)?,
            family,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub instance: String,
    pub verdict: Verdict,
    pub detail: String,
}

fn b(m: &Maybe<bool>) -> Option<bool> {
    m.value().copied()
}

/// Run one rule over the instances, one row per instance.
pub fn run_check(id: TheoremId, instances: &[CheckInstance]) -> Vec<CheckRow> {
    instances
        .iter()
        .map(|inst| {
            let (verdict, detail) = check_one(id, inst);
            CheckRow {
                instance: inst.name.clone(),
                verdict,
                detail,
            }
        })
        .collect()
}

fn check_one(id: TheoremId, inst: &CheckInstance) -> (Verdict, String) {
    let c = &inst.classification;
    let r = &c.report;
    let s = &c.semigroup;
    let hv = c.hvector.as_ref();
    let cm = b(&r.is_cohen_macaulay) == Some(true);
    let gor = b(&r.is_gorenstein);
    let level = b(&r.is_level);
    let ng = b(&r.is_nearly_gorenstein);
    let ag = b(&r.is_almost_gorenstein);
    let semi = r.is_semi_standard == SemiStandard::Yes.as_str();
    match id {
        TheoremId::BottomDimension => {
            let (Some(t), Some((m, _))) = (&c.staircase, &c.canonical) else {
                return (Verdict::Vacuous, "no canonical module".into());
            };
            if s.dim() != 2 {
                return (
                    Verdict::Vacuous,
                    "depth check supports dimension 2 only".into(),
                );
            }
            if m.cm_type() < 2 {
                return (Verdict::Vacuous, "principal canonical ideal".into());
            }
            let ideal = match MonomialIdeal::new(s, m.generators().to_vec()) {
                Ok(i) => i,
                Err(e) => return (Verdict::Vacuous, e.code().into()),
            };
            match theorem35_validator(s, t, &ideal) {
                Ok(v) => (v, format!("bottom degree {}", ideal.min_degree())),
                Err(e) => (Verdict::Vacuous, e.code().into()),
            }
        }
        TheoremId::LastHEntry => {
            let (Some(h), Some(ng), Some(gor)) = (hv, ng, gor) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            let hyp = semi && cm && !gor && ng;
            (
                Verdict::from_rule(hyp, h.last() >= 2),
                format!("h_s = {}", h.last()),
            )
        }
        TheoremId::TypeTwoLevel => {
            let (Some(ng), Some(level), Some(&ty)) = (ng, level, r.cm_type.value()) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            (
                Verdict::from_rule(ng && ty == 2, level),
                format!("type {ty}"),
            )
        }
        TheoremId::SocleOne => {
            let (Some(h), Some(gor), Some(level), Some(ag)) = (hv, gor, level, ag) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            if !cm || gor {
                return (Verdict::Vacuous, "Gorenstein or not CM".into());
            }
            let s1 = h.socle_degree() == 1;
            (
                Verdict::from_rule(true, (ag && level) == s1),
                format!("ag = {ag}, level = {level}, s = {}", h.socle_degree()),
            )
        }
        TheoremId::StandardAgNg => {
            let (Some(h), Some(gor), Some(ng), Some(ag)) = (hv, gor, ng, ag) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            let hyp = s.is_standard_graded() && h.socle_degree() >= 2 && cm && ag && ng;
            (
                Verdict::from_rule(hyp, gor),
                format!(
                    "standard = {}, s = {}",
                    s.is_standard_graded(),
                    h.socle_degree()
                ),
            )
        }
        TheoremId::AgImpliesNg => {
            let (Some(h), Some(ng), Some(ag)) = (hv, ng, ag) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            let hyp = !s.is_standard_graded()
                && semi
                && cm
                && s.dim() == 2
                && h.socle_degree() == 2
                && ag;
            (Verdict::from_rule(hyp, ng), format!("ag = {ag}, ng = {ng}"))
        }
        TheoremId::NonLevelFamily => {
            if let Some((n, _k)) = inst.family {
                // family members must reproduce the whole expected bundle
                let Some(h) = hv else {
                    return (Verdict::Fail, "family member without h-vector".into());
                };
                let expected_h = vec![1, n - 1, n];
                let ok = cm
                    && h.entries() == expected_h.as_slice()
                    && r.cm_type.value() == Some(&(2 * n as usize - 1))
                    && level == Some(false)
                    && ng == Some(true)
                    && ag == Some(true);
                return (
                    Verdict::from_rule(true, ok),
                    format!("expected h = {expected_h:?}, type {}", 2 * n - 1),
                );
            }
            // necessary direction on arbitrary instances: a non-level
            // almost Gorenstein ring with dim = s = 2 must be nearly
            // Gorenstein with h = (1, n-1, n); the isomorphism statement
            // itself is out of scope and not asserted
            let (Some(h), Some(level), Some(ng), Some(ag)) = (hv, level, ng, ag) else {
                return (Verdict::Vacuous, "missing canonical data".into());
            };
            let hyp = semi && cm && s.dim() == 2 && h.socle_degree() == 2 && !level && ag;
            let e = h.entries();
            let pattern = e.len() == 3 && e[0] == 1 && e[2] == e[1] + 1 && e[1] >= 1;
            (
                Verdict::from_rule(hyp, ng && pattern),
                format!("h = {:?}", h.entries()),
            )
        }
    }
}

/// Compare staircase membership with the direct membership oracle on
/// seeded pseudo-random vectors drawn from a box that straddles the cone
/// and the group lattice. Returns the disagreeing vectors (must be empty).
pub fn oracle_compare(c: &Classification, samples: usize, seed: u64) -> Vec<LatticeVector> {
    let Some(t) = &c.staircase else {
        return Vec::new();
    };
    let s = &c.semigroup;
    let dim = s.ambient_dim();
    let max_coord = s
        .generators()
        .iter()
        .flat_map(|g| g.coords().iter().copied())
        .max()
        .unwrap_or(1)
        .max(1);
    let lo = -max_coord - 1;
    let hi = 3 * max_coord + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let v = LatticeVector::new((0..dim).map(|_| rng.random_range(lo..=hi)).collect());
        if s.member(&v) != t.member(&v) {
            mismatches.push(v);
        }
    }
    mismatches
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::SemigroupDocument;
    use crate::families::{family_snk_document, fixture_catalog, FamilyParams};

    fn family_instance(n: i64, k: i64) -> CheckInstance {
        let doc = family_snk_document(FamilyParams::new(n, k).unwrap());
        CheckInstance::from_document(&doc, &ClassifyOptions::default(), Some((n, k))).unwrap()
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!(TheoremId::parse("3.5").unwrap(), TheoremId::BottomDimension);
        assert_eq!(TheoremId::parse("6.3").unwrap(), TheoremId::NonLevelFamily);
        assert!(matches!(
            TheoremId::parse("9.9"),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn family_bundle_passes_rule_6_3() {
        let inst = family_instance(2, 1);
        let rows = run_check(TheoremId::NonLevelFamily, &[inst]);
        assert_eq!(rows[0].verdict, Verdict::Pass);
    }

    #[test]
    fn fixtures_never_fail_any_rule() {
        let opts = ClassifyOptions::default();
        let instances: Vec<CheckInstance> = fixture_catalog()
            .iter()
            .map(|f| CheckInstance::from_document(&f.document, &opts, None).unwrap())
            .collect();
        for id in TheoremId::all() {
            for row in run_check(id, &instances) {
                assert_ne!(
                    row.verdict,
                    Verdict::Fail,
                    "rule {} failed on {}: {}",
                    id.as_str(),
                    row.instance,
                    row.detail
                );
            }
        }
    }

    #[test]
    fn oracle_agrees_on_the_orthant() {
        let doc = SemigroupDocument::new("orthant", vec![vec![1, 0], vec![0, 1]], vec![1, 1]);
        let c = classify_document(&doc, &ClassifyOptions::default()).unwrap();
        assert_eq!(oracle_compare(&c, 1000, 7), Vec::<LatticeVector>::new());
    }
}
