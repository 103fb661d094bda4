//! Hilbert data: h-vectors, socle degree, Stanley inequalities, cokernel
//! numerators and the almost Gorenstein decision.

use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::verdict::Verdict;

/// Numerator coefficients of the Hilbert series over `(1-t)^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    entries: Vec<i64>,
    dim: usize,
}

impl HVector {
    pub fn new(entries: Vec<i64>, dim: usize) -> Self {
        debug_assert!(entries.first() == Some(&1));
        debug_assert!(entries.last() != Some(&0));
        HVector { entries, dim }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn socle_degree(&self) -> i64 {
        self.entries.len() as i64 - 1
    }

    pub fn last(&self) -> i64 {
        *self.entries.last().expect("h-vector is nonempty")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n / 2).all(|i| self.entries[i] == self.entries[n - 1 - i])
    }

    /// Prefix symmetry `h_i = h_{s-i}` for `i < floor(s/2)`, the
    /// sufficient condition for almost Gorensteinness in domains.
    pub fn is_prefix_symmetric(&self) -> bool {
        let s = self.entries.len() - 1;
        (0..s / 2).all(|i| self.entries[i] == self.entries[s - i])
    }
}

/// Hilbert function `dim R_i` for `i = 0..=i_max`.
pub fn hilbert_function(s: &AffineSemigroup, i_max: i64) -> Vec<usize> {
    (0..=i_max).map(|i| s.layer_size(i)).collect()
}

/// Extract the h-vector by multiplying the Hilbert series prefix with
/// `(1-t)^dim` and detecting stabilization of the numerator: the last
/// nonzero coefficient must be followed by `dim + 5` zeros. A negative
/// coefficient or a numerator that keeps moving signals either non
/// Cohen-Macaulay pathology or an insufficient margin, and the partial
/// data is carried in the error.
pub fn h_vector(s: &AffineSemigroup) -> Result<HVector> {
    let d = s.dim() as i64;
    let margin = d + 5;
    let mut horizon = (2 * s.max_generator_degree() + margin).max(margin + 2);
    let cap = 512;
    loop {
        let h = hilbert_function(s, horizon);
        let numer = series_times_one_minus_t_pow(&h, d as usize);
        if let Some(bad) = numer.iter().position(|&c| c < 0) {
            return Err(Error::NonpolynomialNumerator {
                partial: numer[..=bad].to_vec(),
            });
        }
        let last_nonzero = numer.iter().rposition(|&c| c != 0).unwrap_or(0);
        if (numer.len() - 1 - last_nonzero) as i64 >= margin {
            return Ok(HVector::new(numer[..=last_nonzero].to_vec(), s.dim()));
        }
        horizon *= 2;
        if horizon > cap {
            return Err(Error::NonpolynomialNumerator { partial: numer });
        }
    }
}

fn series_times_one_minus_t_pow(h: &[usize], d: usize) -> Vec<i64> {
    let mut out: Vec<i64> = h.iter().map(|&x| x as i64).collect();
    for _ in 0..d {
        // multiply by (1 - t)
        for i in (1..out.len()).rev() {
            out[i] -= out[i - 1];
        }
    }
    out
}

/// One verdict per `j = 0..=floor(s/2)` of the inequality
/// `h_s + ... + h_{s-j} >= h_0 + ... + h_j`.
pub fn stanley_inequalities(h: &HVector) -> Vec<bool> {
    let e = h.entries();
    let s = e.len() - 1;
    (0..=s / 2)
        .map(|j| {
            let top: i64 = (0..=j).map(|k| e[s - k]).sum();
            let bottom: i64 = (0..=j).map(|k| e[k]).sum();
            top >= bottom
        })
        .collect()
}

/// Hilbert data of the cokernel of a degree-0 embedding of the ring into
/// its shifted canonical module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelData {
    /// Numerator coefficients `c_j = (h_s+...+h_{s-j}) - (h_0+...+h_j)`.
    pub numerator: Vec<i64>,
    /// Multiplicity: the numerator total.
    pub multiplicity: i64,
    /// Minimal generator count of the cokernel: type minus one.
    pub expected_mu: i64,
}

pub fn cokernel_data(h: &HVector, cm_type: usize) -> CokernelData {
    let e = h.entries();
    let s = e.len() - 1;
    let numerator: Vec<i64> = (0..s)
        .map(|j| {
            let top: i64 = (0..=j).map(|k| e[s - k]).sum();
            let bottom: i64 = (0..=j).map(|k| e[k]).sum();
            top - bottom
        })
        .collect();
    let multiplicity = numerator.iter().sum();
    CokernelData {
        numerator,
        multiplicity,
        expected_mu: cm_type as i64 - 1,
    }
}

/// Almost Gorenstein decision for graded domains: the cokernel reaches the
/// forced bound `mu = e` iff its multiplicity equals `type - 1`.
pub fn is_almost_gorenstein(h: &HVector, cm_type: usize) -> bool {
    cokernel_data(h, cm_type).multiplicity == cm_type as i64 - 1
}

/// Outcome of the socle-degree-one consistency rule: for a non-Gorenstein
/// domain, almost Gorenstein and level together must be equivalent to
/// socle degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleOneOutcome {
    pub verdict: Verdict,
    pub almost_gorenstein: bool,
    pub level: bool,
    pub socle_degree_is_one: bool,
    pub gorenstein: bool,
}

pub fn theorem51_classifier(
    h: &HVector,
    cm_type: usize,
    level: bool,
    gorenstein: bool,
) -> SocleOneOutcome {
    let ag = is_almost_gorenstein(h, cm_type);
    let s1 = h.socle_degree() == 1;
    let verdict = if gorenstein {
        Verdict::Vacuous
    } else if (ag && level) == s1 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    SocleOneOutcome {
        verdict,
        almost_gorenstein: ag,
        level,
        socle_degree_is_one: s1,
        gorenstein,
    }
}

/// Socle-degree-2 type identity for non-level rings: the Cohen-Macaulay
/// type must equal `h_1 + h_2`. Errors when the precondition is unmet.
pub fn prop53_type_check(h: &HVector, cm_type: usize, level: bool) -> Result<bool> {
    if h.socle_degree() != 2 {
        return Err(Error::NotApplicable("socle degree must be 2"));
    }
    if level {
        return Err(Error::NotApplicable("ring must be non-level"));
    }
    let e = h.entries();
    Ok(cm_type as i64 == e[1] + e[2])
}

/// Sizes of the degree layers of the Artinian reduction by the degree-1
/// extremal generators: elements of degree `i` not divisible by any ray
/// generator. For Cohen-Macaulay rings these counts equal the h-vector.
pub fn artinian_counts(s: &AffineSemigroup, up_to: i64) -> Vec<usize> {
    let rays = s.extremal_generators();
    (0..=up_to)
        .map(|i| {
            s.elements_of_degree(i)
                .iter()
                .filter(|x| rays.iter().all(|e| !s.member(&(*x - e))))
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;
    use crate::semigroup::build_semigroup;

    fn s21() -> AffineSemigroup {
        build_semigroup(
            &[lv![0, 4], lv![2, 2], lv![4, 0], lv![1, 7], lv![3, 5]],
            &[1, 1, 1, 2, 2],
        )
        .unwrap()
    }

    fn n2() -> AffineSemigroup {
        build_semigroup(&[lv![1, 0], lv![0, 1]], &[1, 1]).unwrap()
    }

    fn remark55() -> AffineSemigroup {
        build_semigroup(
            &[lv![1, 0], lv![1, 1], lv![1, 2], lv![1, 6], lv![2, 5]],
            &[1, 1, 1, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn hilbert_prefixes() {
        assert_eq!(hilbert_function(&n2(), 3), vec![1, 2, 3, 4]);
        // degree 2: five distinct pairwise sums of the degree-1 layer
        // plus the two degree-2 generators
        assert_eq!(hilbert_function(&s21(), 2), vec![1, 3, 7]);
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&n2()).unwrap().entries(), &[1]);
        assert_eq!(h_vector(&s21()).unwrap().entries(), &[1, 1, 2]);
        assert_eq!(h_vector(&remark55()).unwrap().entries(), &[1, 2, 3]);
    }

    #[test]
    fn remark55_hilbert_is_consistent_with_h() {
        // the Hilbert prefix must reproduce (1,2,3) under (1-t)^2
        let h = hilbert_function(&remark55(), 2);
        assert_eq!(h[0], 1);
        assert_eq!(h[1] as i64 - 2, 2);
        assert_eq!(h[2] as i64 - 2 * h[1] as i64 + 1, 3);
    }

    #[test]
    fn stanley_examples() {
        let mk = |e: &[i64]| HVector::new(e.to_vec(), 2);
        assert_eq!(stanley_inequalities(&mk(&[1, 2, 3])), vec![true, true]);
        assert_eq!(stanley_inequalities(&mk(&[1, 1, 2])), vec![true, true]);
        // a symmetric h-vector meets every inequality with equality
        assert_eq!(stanley_inequalities(&mk(&[1, 3, 1])), vec![true, true]);
        // a genuinely failing case: top sums fall short
        assert_eq!(
            stanley_inequalities(&mk(&[1, 3, 3, 1, 1])),
            vec![true, false, false]
        );
    }

    #[test]
    fn cokernel_examples() {
        let h = HVector::new(vec![1, 1, 2], 2);
        let c = cokernel_data(&h, 3);
        assert_eq!(c.numerator, vec![1, 1]);
        assert_eq!(c.multiplicity, 2);
        assert_eq!(c.expected_mu, 2);
        assert!(is_almost_gorenstein(&h, 3));

        let h = HVector::new(vec![1], 2);
        let c = cokernel_data(&h, 1);
        assert_eq!(c.numerator, Vec::<i64>::new());
        assert_eq!(c.multiplicity, 0);
        assert_eq!(c.expected_mu, 0);
        assert!(is_almost_gorenstein(&h, 1));

        let h = HVector::new(vec![1, 2, 3], 2);
        let c = cokernel_data(&h, 3);
        assert_eq!(c.numerator, vec![2, 2]);
        assert_eq!(c.multiplicity, 4);
        assert_ne!(c.multiplicity, c.expected_mu);
        assert!(!is_almost_gorenstein(&h, 3));
    }

    #[test]
    fn socle_one_rule() {
        // s = 1 forces almost Gorenstein; level is automatic
        let h = HVector::new(vec![1, 3], 2);
        let out = theorem51_classifier(&h, 3, true, false);
        assert_eq!(out.verdict, Verdict::Pass);
        assert!(out.almost_gorenstein && out.socle_degree_is_one);

        // both sides false
        let h = HVector::new(vec![1, 1, 2], 2);
        let out = theorem51_classifier(&h, 3, false, false);
        assert_eq!(out.verdict, Verdict::Pass);
        assert!(out.almost_gorenstein && !out.level && !out.socle_degree_is_one);

        let h = HVector::new(vec![1, 2, 3], 2);
        let out = theorem51_classifier(&h, 3, true, false);
        assert_eq!(out.verdict, Verdict::Pass);
        assert!(!out.almost_gorenstein && out.level && !out.socle_degree_is_one);
    }

    #[test]
    fn type_identity_for_socle_two() {
        let h = HVector::new(vec![1, 1, 2], 2);
        assert!(prop53_type_check(&h, 3, false).unwrap());
        let h = HVector::new(vec![1, 2, 3], 2);
        assert!(prop53_type_check(&h, 5, false).unwrap());
        assert!(matches!(
            prop53_type_check(&h, 3, true),
            Err(Error::NotApplicable(_))
        ));
        let h1 = HVector::new(vec![1, 3], 2);
        assert!(matches!(
            prop53_type_check(&h1, 3, false),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn artinian_reduction_counts_match_h_vector() {
        for s in [n2(), s21(), remark55()] {
            let h = h_vector(&s).unwrap();
            let counts = artinian_counts(&s, h.socle_degree() + 3);
            let mut expected: Vec<usize> = h.entries().iter().map(|&x| x as usize).collect();
            expected.extend([0, 0, 0]);
            assert_eq!(counts, expected);
        }
    }
}
