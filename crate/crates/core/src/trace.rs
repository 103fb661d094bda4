//! Trace-ideal membership for monomial ideals and the nearly Gorenstein
//! decision.
//!
//! A monomial ideal is given by the exponent vectors of its minimal
//! generators, possibly shifted into the group lattice (fractional ideals
//! are allowed since every test below depends only on differences). The
//! membership criterion for the trace is purely additive: a monomial lies
//! in the trace iff it splits as a generator plus an element whose
//! translates by all generators land back in the semigroup.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::semigroup::AffineSemigroup;
use crate::staircase::Staircase;
use crate::verdict::Verdict;

/// Minimal monomial generators of a (fractional) monomial ideal: a
/// nonempty antichain in the group lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<LatticeVector>,
    degrees: Vec<i64>,
}

impl MonomialIdeal {
    pub fn new(s: &AffineSemigroup, generators: Vec<LatticeVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        let mut gens: Vec<LatticeVector> = generators;
        gens.sort();
        gens.dedup();
        let mut degrees = Vec::with_capacity(gens.len());
        for v in &gens {
            if !s.group().contains(v)? {
                return Err(Error::InvalidIdeal(format!(
                    "{v} is not in the group lattice"
                )));
            }
            degrees.push(s.degree(v).expect("in the group"));
        }
        for v in &gens {
            for w in &gens {
                if v != w && s.member(&(w - v)) {
                    return Err(Error::InvalidIdeal(format!("{v} divides {w}")));
                }
            }
        }
        Ok(MonomialIdeal {
            generators: gens,
            degrees,
        })
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn min_degree(&self) -> i64 {
        self.degrees.iter().copied().min().expect("nonempty")
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }
}

/// Membership in the dual: true iff `u + v` is a semigroup element for
/// every generator `v` of the ideal.
pub fn anti_ideal_member(
    s: &AffineSemigroup,
    ideal: &MonomialIdeal,
    u: &LatticeVector,
) -> Result<bool> {
    if !s.group().contains(u)? {
        return Err(Error::NotInGroup);
    }
    Ok(ideal.generators().iter().all(|v| s.member(&(u + v))))
}

/// Trace membership for `a` in the semigroup: true iff some generator `v`
/// splits `a = u + v` with `u` in the dual.
pub fn trace_contains(
    s: &AffineSemigroup,
    ideal: &MonomialIdeal,
    a: &LatticeVector,
) -> Result<bool> {
    if !s.member(a) {
        return Err(Error::NotInSemigroup);
    }
    for v in ideal.generators() {
        if anti_ideal_member(s, ideal, &(a - v))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Nearly Gorenstein: the trace of the canonical ideal contains every
/// generator of the semigroup (hence the whole graded maximal ideal).
pub fn is_nearly_gorenstein(s: &AffineSemigroup, canonical: &MonomialIdeal) -> bool {
    s.generators()
        .iter()
        .all(|a| trace_contains(s, canonical, a).expect("generators are members"))
}

/// Dimension of the degree-`b` graded piece of the ideal: the number of
/// distinct sums of a generator and a semigroup element landing in that
/// degree.
pub fn ideal_degree_dimension(s: &AffineSemigroup, ideal: &MonomialIdeal, b: i64) -> usize {
    let mut layer = BTreeSet::new();
    for (v, &dv) in ideal.generators().iter().zip(ideal.degrees()) {
        if b >= dv {
            for x in s.elements_of_degree(b - dv) {
                layer.insert(&x + v);
            }
        }
    }
    layer.len()
}

/// Validator for the bottom-dimension rule: if the ring has depth at least
/// 2 and the trace of a non-principal ideal contains all extremal
/// generators, then the bottom graded piece of the ideal has dimension at
/// least 2. A `Fail` would falsify the rule and must never occur.
pub fn theorem35_validator(
    s: &AffineSemigroup,
    t: &Staircase,
    ideal: &MonomialIdeal,
) -> Result<Verdict> {
    if ideal.is_principal() {
        return Err(Error::PrincipalIdeal);
    }
    let depth2 = t.depth_at_least_two()?;
    let mut extremal_in_trace = true;
    for e in s.extremal_generators() {
        if !trace_contains(s, ideal, &e)? {
            extremal_in_trace = false;
            break;
        }
    }
    let hypothesis = depth2 && extremal_in_trace;
    if !hypothesis {
        return Ok(Verdict::Vacuous);
    }
    let b = ideal.min_degree();
    Ok(Verdict::from_rule(
        true,
        ideal_degree_dimension(s, ideal, b) >= 2,
    ))
}

/// Type-2 levelness rule: nearly Gorenstein with Cohen-Macaulay type 2
/// forces level.
pub fn corollary37_validator(nearly_gorenstein: bool, cm_type: usize, level: bool) -> Verdict {
    Verdict::from_rule(nearly_gorenstein && cm_type == 2, level)
}
