//! The two-parameter family of non-level almost Gorenstein semigroups, the
//! catalog of named fixtures, and the deterministic fuzz corpus.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::SemigroupDocument;
use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;

/// Parameters of the family: `n >= 2`, `1 <= k <= n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: i64,
    pub k: i64,
}

impl FamilyParams {
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if n < 2 || k < 1 || k > n + 1 {
            return Err(Error::BadParams(format!(
                "family requires n >= 2 and 1 <= k <= n + 1, got n = {n}, k = {k}"
            )));
        }
        Ok(FamilyParams { n, k })
    }
}

/// Input document of the family member: degree-1 generators
/// `(2i, 2n-2i)` for `0 <= i <= n` and degree-2 generators
/// `(2j+2k-1, 4n-2j-2k+1)` for `0 <= j <= n-1`, graded by
/// `(x + y) / 2n`.
pub fn family_snk_document(p: FamilyParams) -> SemigroupDocument {
    let FamilyParams { n, k } = p;
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..=n {
        generators.push(vec![2 * i, 2 * n - 2 * i]);
        degrees.push(1);
    }
    for j in 0..n {
        generators.push(vec![2 * j + 2 * k - 1, 4 * n - 2 * j - 2 * k + 1]);
        degrees.push(2);
    }
    SemigroupDocument::new(format!("family_n{n}_k{k}"), generators, degrees)
}

pub fn family_snk(n: i64, k: i64) -> Result<AffineSemigroup> {
    let p = FamilyParams::new(n, k)?;
    family_snk_document(p).build()
}

/// Where an expected fixture value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Stated in the literature for this example.
    Literature,
    /// Computed and frozen by this crate's own exact engine; used where
    /// the literature value is absent or known to be inconsistent.
    Oracle,
    /// Immediate from the definitions.
    Definition,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Literature => "literature",
            Source::Oracle => "oracle",
            Source::Definition => "definition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expect<T> {
    pub value: T,
    pub source: Source,
}

impl<T> Expect<T> {
    fn lit(value: T) -> Self {
        Expect {
            value,
            source: Source::Literature,
        }
    }
    fn oracle(value: T) -> Self {
        Expect {
            value,
            source: Source::Oracle,
        }
    }
    fn def(value: T) -> Self {
        Expect {
            value,
            source: Source::Definition,
        }
    }
}

/// Expected classification values for a fixture; absent fields are not
/// asserted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub h_vector: Option<Expect<Vec<i64>>>,
    pub h_last: Option<Expect<i64>>,
    pub cohen_macaulay: Option<Expect<bool>>,
    pub cm_type: Option<Expect<usize>>,
    pub gorenstein: Option<Expect<bool>>,
    pub level: Option<Expect<bool>>,
    pub nearly_gorenstein: Option<Expect<bool>>,
    pub almost_gorenstein: Option<Expect<bool>>,
    pub simplicial: Option<Expect<bool>>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub document: SemigroupDocument,
    pub expected: Expectations,
}

/// The named fixture catalog.
///
/// The literature source of the two `nearly_gorenstein_nonlevel_*`
/// fixtures calls both of them non-level with types 2 and 4; that is
/// internally impossible for the first one, because nearly Gorenstein
/// with type 2 forces level. The exact engine resolves the conflict: the
/// `wide` fixture is level with type 2 (its "non-level" label is the
/// erroneous datum) and the `sparse` one is non-level with type 4 exactly
/// as reported. Disputed values are frozen from the oracle and tagged so.
pub fn fixture_catalog() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "nearly_gorenstein_nonlevel_wide",
            document: SemigroupDocument::new(
                "nearly_gorenstein_nonlevel_wide",
                vec![
                    vec![0, 1],
                    vec![2, 1],
                    vec![4, 1],
                    vec![6, 1],
                    vec![8, 1],
                    vec![1, 2],
                    vec![3, 2],
                ],
                vec![1, 1, 1, 1, 1, 2, 2],
            ),
            expected: Expectations {
                nearly_gorenstein: Some(Expect::lit(true)),
                level: Some(Expect::oracle(true)),
                cm_type: Some(Expect::oracle(2)),
                cohen_macaulay: Some(Expect::oracle(true)),
                h_vector: Some(Expect::oracle(vec![1, 3, 2, 2])),
                gorenstein: Some(Expect::def(false)),
                simplicial: Some(Expect::def(true)),
                ..Default::default()
            },
        },
        Fixture {
            name: "nearly_gorenstein_nonlevel_sparse",
            document: SemigroupDocument::new(
                "nearly_gorenstein_nonlevel_sparse",
                vec![
                    vec![0, 1],
                    vec![3, 1],
                    vec![6, 1],
                    vec![9, 1],
                    vec![1, 2],
                    vec![4, 2],
                ],
                vec![1, 1, 1, 1, 2, 2],
            ),
            expected: Expectations {
                nearly_gorenstein: Some(Expect::lit(true)),
                level: Some(Expect::lit(false)),
                cm_type: Some(Expect::oracle(4)),
                cohen_macaulay: Some(Expect::oracle(true)),
                h_vector: Some(Expect::oracle(vec![1, 2, 2, 1, 3])),
                gorenstein: Some(Expect::def(false)),
                simplicial: Some(Expect::def(true)),
                ..Default::default()
            },
        },
        Fixture {
            name: "nearly_gorenstein_dim3_square",
            document: SemigroupDocument::new(
                "nearly_gorenstein_dim3_square",
                vec![
                    vec![0, 0, 1],
                    vec![2, 0, 1],
                    vec![0, 2, 1],
                    vec![2, 2, 1],
                    vec![1, 0, 2],
                    vec![3, 0, 2],
                ],
                vec![1, 1, 1, 1, 2, 2],
            ),
            expected: Expectations {
                nearly_gorenstein: Some(Expect::lit(true)),
                simplicial: Some(Expect::def(false)),
                ..Default::default()
            },
        },
        Fixture {
            name: "level_not_almost_gorenstein",
            document: SemigroupDocument::new(
                "level_not_almost_gorenstein",
                vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 6], vec![2, 5]],
                vec![1, 1, 1, 1, 2],
            ),
            expected: Expectations {
                h_vector: Some(Expect::lit(vec![1, 2, 3])),
                level: Some(Expect::lit(true)),
                almost_gorenstein: Some(Expect::lit(false)),
                cohen_macaulay: Some(Expect::lit(true)),
                cm_type: Some(Expect::oracle(3)),
                simplicial: Some(Expect::def(true)),
                ..Default::default()
            },
        },
        Fixture {
            name: "almost_gorenstein_socle3",
            document: SemigroupDocument::new(
                "almost_gorenstein_socle3",
                vec![vec![0, 1], vec![1, 1], vec![5, 1], vec![4, 2]],
                vec![1, 1, 1, 2],
            ),
            expected: Expectations {
                almost_gorenstein: Some(Expect::lit(true)),
                nearly_gorenstein: Some(Expect::lit(false)),
                h_last: Some(Expect::lit(1)),
                h_vector: Some(Expect::oracle(vec![1, 1, 2, 1])),
                cm_type: Some(Expect::oracle(2)),
                cohen_macaulay: Some(Expect::oracle(true)),
                simplicial: Some(Expect::def(true)),
                ..Default::default()
            },
        },
        Fixture {
            name: "almost_gorenstein_dim3",
            document: SemigroupDocument::new(
                "almost_gorenstein_dim3",
                vec![
                    vec![0, 0, 1],
                    vec![2, 0, 1],
                    vec![0, 2, 1],
                    vec![0, 4, 1],
                    vec![0, 1, 2],
                    vec![0, 3, 2],
                ],
                vec![1, 1, 1, 1, 2, 2],
            ),
            expected: Expectations {
                h_vector: Some(Expect::lit(vec![1, 1, 2])),
                almost_gorenstein: Some(Expect::lit(true)),
                nearly_gorenstein: Some(Expect::lit(false)),
                cm_type: Some(Expect::oracle(3)),
                cohen_macaulay: Some(Expect::oracle(true)),
                simplicial: Some(Expect::def(true)),
                ..Default::default()
            },
        },
    ]
}

/// Bounds for the deterministic corpus generator.
#[derive(Debug, Clone)]
pub struct CorpusBounds {
    pub count: usize,
    pub max_coord: i64,
    pub max_extra_gens: usize,
    pub max_extra_degree: i64,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        CorpusBounds {
            count: 100,
            max_coord: 12,
            max_extra_gens: 5,
            max_extra_degree: 3,
        }
    }
}

/// Deterministic pseudo-random 2-dimensional graded semigroups with
/// degree-1 extremal generators on the axes, filtered to instances whose
/// staircase certifies and whose ring is Cohen-Macaulay. Reproducible from
/// the seed.
pub fn corpus_generate(seed: u64, bounds: &CorpusBounds) -> Vec<SemigroupDocument> {
    use crate::invariants::h_vector;
    use crate::staircase::build_staircase;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    let max_attempts = 400 * bounds.count.max(1);
    while out.len() < bounds.count && attempts < max_attempts {
        attempts += 1;
        let a = rng.random_range(2..=bounds.max_coord); // vertical ray (0, a)
                                                        // equal ray scales make the degree slices dense in lattice points,
                                                        // which is where the non-normal, non-Gorenstein structure lives;
                                                        // unequal scales mostly produce free semigroups
        let b = if rng.random_range(0..4) < 3 {
            a
        } else {
            rng.random_range(1..=bounds.max_coord)
        };
        let mut generators = vec![vec![0, a], vec![b, 0]];
        let mut degrees = vec![1i64, 1];
        let extra = rng.random_range(1..=bounds.max_extra_gens.max(1));
        for _ in 0..extra {
            // bias towards degree 2: degree-1 extras tend to normalize
            // the semigroup and make the corpus mostly Gorenstein
            let weights = [1i64, 2, 2, 3];
            let deg = weights[rng.random_range(0..weights.len())].min(bounds.max_extra_degree);
            // points (x, y) with x/b + y/a = deg and integral coordinates,
            // kept only when they genuinely enlarge the semigroup so far
            let so_far = SemigroupDocument::new("tmp", generators.clone(), degrees.clone())
                .build()
                .expect("partial generator list is valid");
            let candidates: Vec<(i64, i64)> = (0..=(deg * b))
                .filter(|x| (a * x) % b == 0)
                .map(|x| (x, a * deg - a * x / b))
                .filter(|&(x, y)| !so_far.member(&crate::lattice::LatticeVector::new(vec![x, y])))
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let (x, y) = candidates[rng.random_range(0..candidates.len())];
            generators.push(vec![x, y]);
            degrees.push(deg);
        }
        let name = format!("corpus_{seed}_{:03}", out.len());
        let doc = SemigroupDocument::new(name, generators, degrees);
        let Ok(s) = doc.build() else { continue };
        if s.dim() != 2 {
            continue;
        }
        let Ok(h) = h_vector(&s) else { continue };
        let horizon = 4 * (h.socle_degree() + 2 + 5);
        let Ok(t) = build_staircase(&s, horizon).or_else(|_| build_staircase(&s, 2 * horizon))
        else {
            continue;
        };
        if !t.is_cohen_macaulay().expect("certified") {
            continue;
        }
        // re-emit the minimal generating set so documents are canonical
        let doc = SemigroupDocument::new(
            doc.name.clone(),
            s.generators().iter().map(|g| g.coords().to_vec()).collect(),
            s.generator_degrees().to_vec(),
        );
        out.push(doc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    #[test]
    fn family_instantiation() {
        let s = family_snk(2, 1).unwrap();
        let mut gens = s.generators().to_vec();
        gens.sort();
        let mut expected = vec![lv![0, 4], lv![2, 2], lv![4, 0], lv![1, 7], lv![3, 5]];
        expected.sort();
        assert_eq!(gens, expected);
        assert_eq!(s.degree(&lv![1, 7]), Some(2));
    }

    #[test]
    fn family_k_max() {
        let doc = family_snk_document(FamilyParams::new(2, 3).unwrap());
        assert!(doc.generators.contains(&vec![5, 3]));
        assert!(doc.generators.contains(&vec![7, 1]));
    }

    #[test]
    fn family_generator_counts() {
        assert_eq!(
            family_snk_document(FamilyParams::new(2, 1).unwrap())
                .generators
                .len(),
            5
        );
        assert_eq!(
            family_snk_document(FamilyParams::new(3, 4).unwrap())
                .generators
                .len(),
            7
        );
    }

    #[test]
    fn family_bad_params() {
        assert!(matches!(family_snk(1, 1), Err(Error::BadParams(_))));
        assert!(matches!(family_snk(2, 0), Err(Error::BadParams(_))));
        assert!(matches!(family_snk(2, 4), Err(Error::BadParams(_))));
    }

    #[test]
    fn catalog_is_well_formed() {
        let fixtures = fixture_catalog();
        assert_eq!(fixtures.len(), 6);
        for f in &fixtures {
            let s = f.document.build().expect("fixture builds");
            assert!(s.dim() >= 2);
            if let Some(exp) = &f.expected.simplicial {
                assert_eq!(
                    s.cone().extremal_rays().len() == s.dim(),
                    exp.value,
                    "simplicial mismatch for {}",
                    f.name
                );
            }
        }
    }

    #[test]
    fn shipped_fixture_documents_match_the_catalog() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/fixtures");
        for f in fixture_catalog() {
            let path = dir.join(format!("{}.json", f.name));
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let doc = SemigroupDocument::from_json(&text).unwrap();
            assert_eq!(doc, f.document, "shipped document for {} drifted", f.name);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let bounds = CorpusBounds {
            count: 8,
            ..Default::default()
        };
        let a = corpus_generate(1, &bounds);
        let b = corpus_generate(1, &bounds);
        assert_eq!(a.len(), 8);
        assert_eq!(a, b);
        let other = corpus_generate(2, &bounds);
        assert_ne!(a, other);
    }

    #[test]
    fn corpus_members_certify_and_are_cm() {
        use crate::invariants::h_vector;
        use crate::staircase::build_staircase;
        let bounds = CorpusBounds {
            count: 6,
            ..Default::default()
        };
        for doc in corpus_generate(3, &bounds) {
            let s = doc.build().unwrap();
            let h = h_vector(&s).unwrap();
            let t = build_staircase(&s, 4 * (h.socle_degree() + 7)).unwrap();
            assert!(t.is_certified());
            assert!(t.is_cohen_macaulay().unwrap());
        }
    }
}
