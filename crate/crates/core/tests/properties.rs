//! Property tests for the algebraic invariants the engine is built on.

use proptest::prelude::*;

use semigor::classify::{classify_document, ClassifyOptions};
use semigor::document::SemigroupDocument;
use semigor::families::{corpus_generate, family_snk_document, CorpusBounds, FamilyParams};
use semigor::invariants::{
    cokernel_data, h_vector, is_almost_gorenstein, stanley_inequalities, HVector,
};
use semigor::lattice::{
    coset_system, extremal_rays, hermite_basis, in_nonnegative_span, LatticeVector,
};
use semigor::semigroup::build_semigroup;
use semigor::staircase::build_staircase;
use semigor::trace::{theorem35_validator, trace_contains, MonomialIdeal};
use semigor::verdict::Verdict;

fn lv(coords: Vec<i64>) -> LatticeVector {
    LatticeVector::new(coords)
}

proptest! {
    #[test]
    fn hermite_is_idempotent_and_spans(
        rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..5)
    ) {
        let vectors: Vec<LatticeVector> = rows.iter().cloned().map(LatticeVector::new).collect();
        let l = hermite_basis(&vectors).unwrap();
        let l2 = hermite_basis(l.basis().to_vec().as_slice()).unwrap_or_else(|_| l.clone());
        // rebuilding from the basis returns the identical basis (rank 0
        // lattices have an empty basis and cannot be rebuilt)
        if !l.basis().is_empty() {
            prop_assert_eq!(&l, &l2);
        }
        for v in &vectors {
            prop_assert!(l.contains(v).unwrap());
        }
        // random integer combinations stay inside
        if let (Some(a), Some(b)) = (vectors.first(), vectors.last()) {
            let combo = &a.scale(3) - &b.scale(2);
            prop_assert!(l.contains(&combo).unwrap());
        }
    }

    #[test]
    fn extremal_rays_are_generator_directions(
        rows in prop::collection::vec((0i64..=9, 0i64..=9), 1..7)
    ) {
        let gens: Vec<LatticeVector> = rows
            .iter()
            .filter(|&&(x, y)| x != 0 || y != 0)
            .map(|&(x, y)| lv(vec![x, y]))
            .collect();
        prop_assume!(!gens.is_empty());
        let cone = extremal_rays(&gens).unwrap();
        for ray in cone.extremal_rays() {
            prop_assert!(
                gens.iter().any(|g| g.parallel_same_direction(ray)),
                "ray {} is not a generator direction",
                ray
            );
        }
        for g in &gens {
            prop_assert!(cone.contains(g).unwrap());
        }
    }

    #[test]
    fn facet_membership_agrees_with_feasibility(
        rows in prop::collection::vec((0i64..=7, 0i64..=7, 0i64..=7), 1..6),
        q in (-6i64..=14, -6i64..=14, -6i64..=14)
    ) {
        // two independent routes to cone membership: the halfspace
        // description against direct nonnegative-combination feasibility
        let gens: Vec<LatticeVector> = rows
            .iter()
            .filter(|&&(x, y, z)| x != 0 || y != 0 || z != 0)
            .map(|&(x, y, z)| lv(vec![x, y, z]))
            .collect();
        prop_assume!(!gens.is_empty());
        let cone = extremal_rays(&gens).unwrap();
        let v = lv(vec![q.0, q.1, q.2]);
        prop_assert_eq!(cone.contains(&v).unwrap(), in_nonnegative_span(&gens, &v));
    }

    #[test]
    fn coset_representatives_partition(seed_x in -20i64..=20, seed_y in -20i64..=20) {
        let l = hermite_basis(&[lv(vec![1, -1]), lv(vec![0, 4])]).unwrap();
        let rays = [lv(vec![0, 4]), lv(vec![4, 0])];
        let reps = coset_system(&l, &rays).unwrap();
        let ray_lattice = hermite_basis(&rays).unwrap();
        // pairwise non-congruent
        for (i, p) in reps.iter().enumerate() {
            for q in reps.iter().skip(i + 1) {
                prop_assert!(!ray_lattice.contains(&(p - q)).unwrap());
            }
        }
        // an arbitrary lattice element reduces to exactly one representative
        let v = &lv(vec![1, -1]).scale(seed_x) + &lv(vec![0, 4]).scale(seed_y);
        let matching = reps
            .iter()
            .filter(|p| ray_lattice.contains(&(&v - p)).unwrap())
            .count();
        prop_assert_eq!(matching, 1);
    }

    #[test]
    fn stanley_and_cokernel_agree_with_direct_sums(
        tail in prop::collection::vec(0i64..=6, 1..6),
        r in 1usize..8
    ) {
        let mut entries = vec![1i64];
        entries.extend(tail);
        prop_assume!(*entries.last().unwrap() != 0);
        let s = entries.len() - 1;
        let h = HVector::new(entries.clone(), 2);
        let verdicts = stanley_inequalities(&h);
        for (j, &v) in verdicts.iter().enumerate() {
            let top: i64 = (0..=j).map(|k| entries[s - k]).sum();
            let bottom: i64 = (0..=j).map(|k| entries[k]).sum();
            prop_assert_eq!(v, top >= bottom);
        }
        let c = cokernel_data(&h, r);
        prop_assert_eq!(c.numerator.len(), s);
        prop_assert_eq!(c.multiplicity, c.numerator.iter().sum::<i64>());
        prop_assert_eq!(c.expected_mu, r as i64 - 1);
        prop_assert_eq!(is_almost_gorenstein(&h, r), c.multiplicity == r as i64 - 1);
    }

    #[test]
    fn trace_never_fails_bottom_dimension_rule(
        picks in prop::collection::vec((0usize..12, 0usize..12), 2..4)
    ) {
        // random non-principal monomial ideals over the smallest family
        // member: the bottom-dimension rule must never FAIL
        let doc = family_snk_document(FamilyParams::new(2, 1).unwrap());
        let s = doc.build().unwrap();
        let t = build_staircase(&s, 12).unwrap();
        let mut pool = s.elements_of_degree(2);
        pool.extend(s.elements_of_degree(3));
        let gens: Vec<LatticeVector> = picks
            .iter()
            .map(|&(i, j)| &pool[i % pool.len()] + &pool[j % pool.len()])
            .collect();
        if let Ok(ideal) = MonomialIdeal::new(&s, gens) {
            if !ideal.is_principal() {
                let verdict = theorem35_validator(&s, &t, &ideal).unwrap();
                prop_assert_ne!(verdict, Verdict::Fail);
            }
        }
    }

    #[test]
    fn membership_is_additive_on_the_family(i in 0usize..30, j in 0usize..30) {
        let doc = family_snk_document(FamilyParams::new(3, 2).unwrap());
        let s = doc.build().unwrap();
        let layer2 = s.elements_of_degree(2);
        let layer3 = s.elements_of_degree(3);
        let a = &layer2[i % layer2.len()];
        let b = &layer3[j % layer3.len()];
        prop_assert!(s.member(&(a + b)));
    }
}

#[test]
fn staircase_membership_matches_oracle_across_the_corpus() {
    let bounds = CorpusBounds {
        count: 12,
        ..Default::default()
    };
    for doc in corpus_generate(11, &bounds) {
        let c = classify_document(&doc, &ClassifyOptions::default()).unwrap();
        let mismatches = semigor::validate::oracle_compare(&c, 400, 5);
        assert!(
            mismatches.is_empty(),
            "{}: staircase disagrees with the membership oracle at {:?}",
            doc.name,
            mismatches.first()
        );
    }
}

#[test]
fn principal_traces_contain_every_member() {
    let doc = family_snk_document(FamilyParams::new(2, 2).unwrap());
    let s = doc.build().unwrap();
    let principal = MonomialIdeal::new(&s, vec![lv(vec![2, 2])]).unwrap();
    for deg in 0..4 {
        for a in s.elements_of_degree(deg) {
            assert!(trace_contains(&s, &principal, &a).unwrap());
        }
    }
}

#[test]
fn prefix_symmetric_h_vectors_are_almost_gorenstein_on_the_corpus() {
    let bounds = CorpusBounds {
        count: 30,
        ..Default::default()
    };
    let opts = ClassifyOptions {
        multiple_bound: 256,
        ..Default::default()
    };
    let mut seen = 0;
    for doc in corpus_generate(7, &bounds) {
        let c = classify_document(&doc, &opts).unwrap();
        let (Some(h), Some(&r)) = (c.hvector.as_ref(), c.report.cm_type.value()) else {
            continue;
        };
        if h.is_prefix_symmetric() {
            seen += 1;
            assert!(
                is_almost_gorenstein(h, r),
                "{}: prefix-symmetric h {:?} with type {} must be almost Gorenstein",
                doc.name,
                h.entries(),
                r
            );
        }
    }
    assert!(seen > 0, "corpus must exercise the prefix-symmetric case");
}

#[test]
fn hole_free_staircases_are_exactly_the_normal_instances() {
    // holes(T, b) is empty at every bound iff the semigroup equals its
    // normalization; cross-check on a hole-rich and a hole-free instance
    let free = SemigroupDocument::new("free", vec![vec![1, 0], vec![0, 1]], vec![1, 1]);
    let s = free.build().unwrap();
    let t = build_staircase(&s, 8).unwrap();
    assert!(t.holes(6).unwrap().is_empty());

    let doc = family_snk_document(FamilyParams::new(2, 1).unwrap());
    let s = doc.build().unwrap();
    let t = build_staircase(&s, 12).unwrap();
    let holes = t.holes(3).unwrap();
    assert!(!holes.is_empty());
    for hole in &holes {
        assert!(!s.member(hole));
        assert!(s.group().contains(hole).unwrap());
        assert!(s.cone().contains(hole).unwrap());
    }
}

#[test]
fn gorenstein_corpus_members_have_symmetric_h_vectors() {
    let bounds = CorpusBounds {
        count: 25,
        ..Default::default()
    };
    let opts = ClassifyOptions::default();
    for doc in corpus_generate(13, &bounds) {
        let c = classify_document(&doc, &opts).unwrap();
        if c.report.is_gorenstein.value() == Some(&true) {
            let h = c
                .hvector
                .as_ref()
                .expect("Gorenstein verdict implies h-vector");
            assert!(
                h.is_symmetric(),
                "{}: Gorenstein with asymmetric h {:?}",
                doc.name,
                h.entries()
            );
        }
    }
}

#[test]
fn minimal_generators_are_never_redundant() {
    let doc = family_snk_document(FamilyParams::new(3, 1).unwrap());
    let s = doc.build().unwrap();
    for (i, g) in s.generators().iter().enumerate() {
        let rest: Vec<LatticeVector> = s
            .generators()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let degs: Vec<i64> = s
            .generator_degrees()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &d)| d)
            .collect();
        let smaller = build_semigroup(&rest, &degs).unwrap();
        assert!(!smaller.member(g));
    }
}

#[test]
fn h_vector_entries_nonnegative_on_cm_corpus() {
    let bounds = CorpusBounds {
        count: 20,
        ..Default::default()
    };
    for doc in corpus_generate(17, &bounds) {
        let s = doc.build().unwrap();
        let h = h_vector(&s).unwrap();
        assert!(
            h.entries().iter().all(|&x| x >= 0),
            "{}: {:?}",
            doc.name,
            h.entries()
        );
        assert_eq!(h.entries()[0], 1);
        // semi-standard instances always have degree-1 extremal generators
        if s.is_semi_standard(256) == semigor::semigroup::SemiStandard::Yes {
            assert!(s.extremal_degree_check(), "{}", doc.name);
        }
    }
}

#[test]
fn family_classification_extends_beyond_the_pinned_grid() {
    // one instance past the acceptance grid, same expected bundle
    let doc = family_snk_document(FamilyParams::new(5, 3).unwrap());
    let c = classify_document(&doc, &ClassifyOptions::default()).unwrap();
    let r = &c.report;
    assert_eq!(r.h_vector.value(), Some(&vec![1, 4, 5]));
    assert_eq!(r.cm_type.value(), Some(&9));
    assert_eq!(r.is_level.value(), Some(&false));
    assert_eq!(r.is_nearly_gorenstein.value(), Some(&true));
    assert_eq!(r.is_almost_gorenstein.value(), Some(&true));
}

#[test]
fn default_corpus_contains_non_gorenstein_instances() {
    // pinned observation for the default bounds at seed 1; the corpus
    // would be useless for the classification rules without these
    let docs = corpus_generate(1, &CorpusBounds::default());
    assert_eq!(docs.len(), 100);
    let opts = ClassifyOptions::default();
    let mut non_gorenstein = 0;
    let mut non_standard = 0;
    for doc in &docs {
        let c = classify_document(doc, &opts).unwrap();
        if c.report.is_gorenstein.value() == Some(&false) {
            non_gorenstein += 1;
        }
        if !c.semigroup.is_standard_graded() {
            non_standard += 1;
        }
    }
    assert!(
        non_gorenstein >= 1,
        "corpus lost its non-Gorenstein instances"
    );
    assert!(non_standard >= 1, "corpus lost its non-standard instances");
}
