//! Certified staircase representation of a simplicial graded affine
//! semigroup.
//!
//! The semigroup `S` sits inside its normalization, which splits into
//! finitely many cosets of the sublattice spanned by the degree-1 extremal
//! generators. Inside each coset, `S` cuts out a monomial up-set in ray
//! coordinates, recorded by its finite antichain of minimal elements. All
//! exact decision procedures (membership, holes, the translation-invariant
//! `C_i` sets, Cohen-Macaulayness, the depth criterion) reduce to threshold
//! comparisons against those antichains.
//!
//! Construction is heuristic (degree-layer enumeration up to a horizon) but
//! acceptance is not: a three-condition certificate checked against the
//! independent membership oracle proves that the represented set equals `S`
//! exactly. An uncertified staircase is never used for verdicts.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{adjugate_i128, coset_system, det_i128, GroupLattice, LatticeVector};
use crate::semigroup::{AffineSemigroup, Grading};

/// Per-coset monomial up-set representation of a simplicial graded affine
/// semigroup over its degree-1 extremal generators.
#[derive(Debug, Clone)]
pub struct Staircase {
    rays: Vec<LatticeVector>,
    residues: Vec<LatticeVector>,
    residue_index: HashMap<LatticeVector, usize>,
    /// For each residue, the antichain of minimal ray-coordinate vectors
    /// of semigroup elements in that coset.
    min_elements: Vec<Vec<Vec<i64>>>,
    group: GroupLattice,
    grading: Grading,
    adj: Vec<Vec<i128>>,
    det: i128,
    rank: usize,
    horizon: i64,
    certified: bool,
}

/// Build and certify; fails with `HORIZON_TOO_SMALL` when the enumeration
/// horizon did not reach a certifiable state (retry with a larger horizon).
pub fn build_staircase(s: &AffineSemigroup, horizon: i64) -> Result<Staircase> {
    let mut t = enumerate_staircase(s, horizon)?;
    if certify_staircase(&mut t, s) {
        Ok(t)
    } else {
        Err(Error::HorizonTooSmall { horizon })
    }
}

/// Enumerate the staircase up to `horizon` without certifying it.
pub fn enumerate_staircase(s: &AffineSemigroup, horizon: i64) -> Result<Staircase> {
    let rank = s.dim();
    let rays = s.extremal_generators();
    if rays.len() != rank {
        return Err(Error::NotSimplicial {
            rays: rays.len(),
            rank,
        });
    }
    for ray in &rays {
        if s.degree(ray) != Some(1) {
            return Err(Error::RaysNotDegreeOne);
        }
    }
    let group = s.group().clone();
    let residues = coset_system(&group, &rays)?;
    let residue_index: HashMap<LatticeVector, usize> = residues
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let ray_matrix: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| group.coordinates(r).expect("rays are in the group lattice"))
        .collect();
    let det = det_i128(&ray_matrix);
    let adj = adjugate_i128(&ray_matrix);
    let mut t = Staircase {
        rays,
        residues,
        residue_index,
        min_elements: Vec::new(),
        group,
        grading: s.grading().clone(),
        adj,
        det,
        rank,
        horizon,
        certified: false,
    };

    let mut points: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::new(); t.residues.len()];
    for deg in 0..=horizon {
        for v in s.elements_of_degree(deg) {
            let (idx, z) = t
                .decompose(&v)
                .expect("semigroup elements are in the group");
            debug_assert!(z.iter().all(|&c| c >= 0));
            points[idx].insert(z);
        }
    }
    // antichain minima: lexicographic iteration sees dominators after the
    // points they dominate
    t.min_elements = points
        .into_iter()
        .map(|set| {
            let mut mins: Vec<Vec<i64>> = Vec::new();
            for z in set {
                if !mins.iter().any(|m| leq(m, &z)) {
                    mins.push(z);
                }
            }
            mins
        })
        .collect();
    Ok(t)
}

/// The exactness certificate. True iff
///
/// 1. every represented minimal point is a semigroup member (checked with
///    the independent generator-subtraction oracle),
/// 2. zero and every generator are represented, and
/// 3. the represented set is closed under adding each generator at every
///    minimal point.
///
/// By the up-set structure these conditions imply that the represented set
/// equals the semigroup exactly; on success the staircase is marked
/// certified.
pub fn certify_staircase(t: &mut Staircase, s: &AffineSemigroup) -> bool {
    for (idx, mins) in t.min_elements.iter().enumerate() {
        for m in mins {
            if !s.member(&t.point(idx, m)) {
                return false;
            }
        }
    }
    if !t.represents(&LatticeVector::zero(t.group.dim())) {
        return false;
    }
    for g in s.generators() {
        if !t.represents(g) {
            return false;
        }
    }
    for (idx, mins) in t.min_elements.iter().enumerate() {
        for m in mins {
            let base = t.point(idx, m);
            for g in s.generators() {
                if !t.represents(&(&base + g)) {
                    return false;
                }
            }
        }
    }
    t.certified = true;
    true
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Staircase {
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn residues(&self) -> &[LatticeVector] {
        &self.residues
    }

    pub fn min_elements(&self, residue: usize) -> &[Vec<i64>] {
        &self.min_elements[residue]
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    /// Ambient point of ray-coordinates `z` in the coset of `residue`.
    pub fn point(&self, residue: usize, z: &[i64]) -> LatticeVector {
        let mut out = self.residues[residue].clone();
        for (ray, &c) in self.rays.iter().zip(z) {
            out = &out + &ray.scale(c);
        }
        out
    }

    /// Split `v` into its coset representative and integer ray
    /// coordinates; `None` when `v` is outside the group lattice.
    pub fn decompose(&self, v: &LatticeVector) -> Option<(usize, Vec<i64>)> {
        let c = self.group.coordinates(v)?;
        let mut z = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let mut num: i128 = 0;
            for k in 0..self.rank {
                num += c[k] as i128 * self.adj[k][j];
            }
            let (num, den) = if self.det > 0 {
                (num, self.det)
            } else {
                (-num, -self.det)
            };
            z.push(i64::try_from(num.div_euclid(den)).expect("ray coordinate overflow"));
        }
        let mut p = v.clone();
        for (ray, &m) in self.rays.iter().zip(&z) {
            p = &p - &ray.scale(m);
        }
        let idx = *self
            .residue_index
            .get(&p)
            .expect("reduction lands on a coset representative");
        Some((idx, z))
    }

    fn represents(&self, v: &LatticeVector) -> bool {
        match self.decompose(v) {
            None => false,
            Some((idx, z)) => {
                z.iter().all(|&c| c >= 0) && self.min_elements[idx].iter().any(|m| leq(m, &z))
            }
        }
    }

    /// Membership in the represented set. Agrees with
    /// [`AffineSemigroup::member`] on every vector once certified.
    pub fn member(&self, v: &LatticeVector) -> bool {
        self.represents(v)
    }

    /// Elements of the normalization not in the semigroup, up to the
    /// degree bound, in lexicographic order.
    pub fn holes(&self, degree_bound: i64) -> Result<Vec<LatticeVector>> {
        if !self.certified {
            return Err(Error::NotCertified);
        }
        let mut out = Vec::new();
        for (idx, p) in self.residues.iter().enumerate() {
            let base_deg = self.grading.degree(p).expect("residues are in the group");
            let budget = degree_bound - base_deg;
            if budget < 0 {
                continue;
            }
            let mut z = vec![0i64; self.rank];
            self.holes_rec(idx, 0, budget, &mut z, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn holes_rec(
        &self,
        idx: usize,
        pos: usize,
        budget: i64,
        z: &mut Vec<i64>,
        out: &mut Vec<LatticeVector>,
    ) {
        if pos == self.rank {
            if !self.min_elements[idx].iter().any(|m| leq(m, z)) {
                out.push(self.point(idx, z));
            }
            return;
        }
        for c in 0..=budget {
            z[pos] = c;
            self.holes_rec(idx, pos + 1, budget - c, z, out);
        }
        z[pos] = 0;
    }

    /// Membership in the set of group elements that never re-enter the
    /// semigroup under translation along ray `i`: true iff `w + m * e_i`
    /// is outside `S` for every `m >= 0`.
    pub fn c_set_member(&self, i: usize, w: &LatticeVector) -> Result<bool> {
        if !self.certified {
            return Err(Error::NotCertified);
        }
        let Some((idx, z)) = self.decompose(w) else {
            return Err(Error::NotInGroup);
        };
        Ok(self.c_set_on_coords(idx, i, &z))
    }

    /// Same predicate on pre-split coordinates. Along ray `i` the
    /// coordinate `z_i` grows without bound, so `w` escapes `S` forever
    /// iff every minimal element exceeds `z` in some other coordinate
    /// (negative coordinates included, since minima are nonnegative).
    fn c_set_on_coords(&self, idx: usize, i: usize, z: &[i64]) -> bool {
        self.min_elements[idx]
            .iter()
            .all(|m| (0..self.rank).any(|j| j != i && m[j] > z[j]))
    }

    /// True iff `w` stays outside `S` under every combined translation by
    /// rays other than `i`. In coset coordinates only coordinate `i` is
    /// frozen, so the escape holds iff every minimal element exceeds `z`
    /// there. For rank 2 this agrees with [`Staircase::c_set_member`] of
    /// the opposite ray; for higher rank it is strictly stronger than any
    /// single-ray escape.
    pub fn escapes_avoiding_ray(&self, i: usize, w: &LatticeVector) -> Result<bool> {
        if !self.certified {
            return Err(Error::NotCertified);
        }
        let Some((idx, z)) = self.decompose(w) else {
            return Err(Error::NotInGroup);
        };
        Ok(self.min_elements[idx].iter().all(|m| m[i] > z[i]))
    }

    fn covered(&self, idx: usize, z: &[i64]) -> bool {
        z.iter().all(|&c| c >= 0) && self.min_elements[idx].iter().any(|m| leq(m, z))
    }

    /// Cohen-Macaulayness via the simplicial criterion: the group lattice
    /// must be covered by `S` together with all the `C_i` sets.
    ///
    /// Decided finitely per coset by region decomposition: every predicate
    /// involved is a monotone boolean combination of threshold comparisons
    /// `z_j >= 0` and `z_j >= mu_j`, so it is constant on the cells of the
    /// grid cut out by those thresholds; one representative per cell
    /// (including the unbounded cells) decides the universal statement.
    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        if !self.certified {
            return Err(Error::NotCertified);
        }
        if self.rank < 2 {
            return Err(Error::UnsupportedDimension { dim: self.rank });
        }
        for idx in 0..self.residues.len() {
            let reps = self.region_representatives(idx);
            let ok = self.for_each_region(&reps, |z| {
                self.covered(idx, z) || (0..self.rank).any(|i| self.c_set_on_coords(idx, i, z))
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Depth >= 2 in dimension 2: every hole must lie on a full line of
    /// holes, i.e. dominance is blocked in a fixed coordinate no matter
    /// how far the other one travels.
    pub fn depth_at_least_two(&self) -> Result<bool> {
        if !self.certified {
            return Err(Error::NotCertified);
        }
        if self.rank != 2 {
            return Err(Error::UnsupportedDimension { dim: self.rank });
        }
        for idx in 0..self.residues.len() {
            let mins = &self.min_elements[idx];
            let reps = self.region_representatives(idx);
            let ok = self.for_each_region(&reps, |z| {
                let hole = z.iter().all(|&c| c >= 0) && !mins.iter().any(|m| leq(m, z));
                if !hole {
                    return true;
                }
                mins.iter().all(|m| m[0] > z[0]) || mins.iter().all(|m| m[1] > z[1])
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One test value per cell of the per-axis threshold grid.
    fn region_representatives(&self, idx: usize) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|j| {
                let mut ts: BTreeSet<i64> = [0].into_iter().collect();
                for m in &self.min_elements[idx] {
                    ts.insert(m[j]);
                }
                let ts: Vec<i64> = ts.into_iter().collect();
                let mut reps = vec![ts[0] - 1];
                reps.extend(ts);
                reps
            })
            .collect()
    }

    fn for_each_region<F: Fn(&[i64]) -> bool>(&self, reps: &[Vec<i64>], pred: F) -> bool {
        let mut idxs = vec![0usize; self.rank];
        let mut z = vec![0i64; self.rank];
        loop {
            for j in 0..self.rank {
                z[j] = reps[j][idxs[j]];
            }
            if !pred(&z) {
                return false;
            }
            let mut j = 0;
            loop {
                if j == self.rank {
                    return true;
                }
                idxs[j] += 1;
                if idxs[j] < reps[j].len() {
                    break;
                }
                idxs[j] = 0;
                j += 1;
            }
        }
    }

    /// Largest minimal-element threshold on each axis, over all cosets.
    pub(crate) fn max_thresholds(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for mins in &self.min_elements {
            for m in mins {
                for j in 0..self.rank {
                    out[j] = out[j].max(m[j]);
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn corrupt_first_nonzero_min(&mut self) {
        for mins in &mut self.min_elements {
            if let Some(pos) = mins.iter().position(|m| m.iter().any(|&c| c != 0)) {
                mins.remove(pos);
                return;
            }
        }
        panic!("nothing to corrupt");
    }
}
