//! Integer group lattices via row Hermite normal form.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// The group generated by a set of lattice vectors, stored as a basis in
/// row Hermite normal form: pivots are positive, entries above a pivot are
/// reduced into `[0, pivot)`, and pivot columns strictly increase. The form
/// is canonical, so two equal groups produce identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLattice {
    dim: usize,
    basis: Vec<LatticeVector>,
    pivots: Vec<usize>,
}

impl GroupLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    /// True iff `v` is an integer combination of the basis rows.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(self.coordinates(v).is_some())
    }

    /// Integer coordinates of `v` with respect to the basis rows, or `None`
    /// if `v` is not in the lattice. Back-substitution along the echelon
    /// structure; exact in 128-bit arithmetic.
    pub fn coordinates(&self, v: &LatticeVector) -> Option<Vec<i64>> {
        debug_assert_eq!(v.dim(), self.dim);
        let mut residual: Vec<i128> = v.coords().iter().map(|&c| c as i128).collect();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let pivot = row.coords()[p] as i128;
            if residual[p] % pivot != 0 {
                return None;
            }
            let c = residual[p] / pivot;
            for (r, &b) in residual.iter_mut().zip(row.coords()) {
                *r = r.checked_sub(c.checked_mul(b as i128)?)?;
            }
            coeffs.push(i64::try_from(c).ok()?);
        }
        if residual.iter().all(|&r| r == 0) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Reconstruct an ambient vector from basis coordinates.
    pub fn from_coordinates(&self, coeffs: &[i64]) -> LatticeVector {
        debug_assert_eq!(coeffs.len(), self.basis.len());
        let mut out = LatticeVector::zero(self.dim);
        for (row, &c) in self.basis.iter().zip(coeffs) {
            out = &out + &row.scale(c);
        }
        out
    }
}

/// Basis of the integer span of `vectors`, in canonical row HNF.
/// Intermediate elimination runs over arbitrary-precision integers; the
/// final basis entries are bounded by the pivots and fit in `i64`.
pub fn hermite_basis(vectors: &[LatticeVector]) -> Result<GroupLattice> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = vectors[0].dim();
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    let mut mat: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.coords().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let m = mat.len();
    let mut row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..dim {
        if row == m {
            break;
        }
        if !mat[row..].iter().any(|r| !r[col].is_zero()) {
            continue;
        }
        // gcd out the column below `row`
        loop {
            let best = (row..m)
                .filter(|&i| !mat[i][col].is_zero())
                .min_by_key(|&i| mat[i][col].abs())
                .expect("nonzero entry exists");
            mat.swap(row, best);
            let mut done = true;
            for i in (row + 1)..m {
                if mat[i][col].is_zero() {
                    continue;
                }
                let q = &mat[i][col] / &mat[row][col];
                if !q.is_zero() {
                    for j in 0..dim {
                        let t = &mat[i][j] - &q * &mat[row][j];
                        mat[i][j] = t;
                    }
                }
                if !mat[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if mat[row][col].is_negative() {
            for j in 0..dim {
                mat[row][j] = -mat[row][j].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..row {
            let q = mat[i][col].div_floor(&mat[row][col]);
            if !q.is_zero() {
                for j in 0..dim {
                    let t = &mat[i][j] - &q * &mat[row][j];
                    mat[i][j] = t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let basis = mat[..row]
        .iter()
        .map(|r| {
            LatticeVector::new(
                r.iter()
                    .map(|b| i64::try_from(b).expect("HNF basis entry overflows i64"))
                    .collect(),
            )
        })
        .collect();
    Ok(GroupLattice { dim, basis, pivots })
}

/// Representatives of `lattice` modulo the sublattice spanned by `rays`,
/// one per coset, each inside the half-open fundamental parallelepiped
/// `{sum of t_i * ray_i : 0 <= t_i < 1}`. Requires the simplicial full-rank
/// situation: as many rays as the lattice rank, all rays in the lattice.
pub fn coset_system(lattice: &GroupLattice, rays: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let r = lattice.rank();
    if rays.len() != r {
        return Err(Error::NotSimplicial {
            rays: rays.len(),
            rank: r,
        });
    }
    // rays in lattice coordinates
    let mut e = Vec::with_capacity(r);
    for ray in rays {
        if ray.dim() != lattice.dim() {
            return Err(Error::DimensionMismatch {
                expected: lattice.dim(),
                found: ray.dim(),
            });
        }
        match lattice.coordinates(ray) {
            Some(c) => e.push(c),
            None => return Err(Error::RayNotInGroup),
        }
    }
    let det = det_i128(&e);
    if det == 0 {
        return Err(Error::NotSimplicial {
            rays: rays.len(),
            rank: r,
        });
    }
    let adj = adjugate_i128(&e);
    let index = det.unsigned_abs() as usize;

    // Bounding box of the parallelepiped { t * E : t in [0,1)^r } in
    // lattice coordinates: coordinate j ranges over the subset sums of
    // column entries, bounded by summing the per-row min/max with 0.
    let mut lo = vec![0i64; r];
    let mut hi = vec![0i64; r];
    for j in 0..r {
        for row in &e {
            lo[j] += row[j].min(0);
            hi[j] += row[j].max(0);
        }
    }

    let mut reps = Vec::with_capacity(index);
    let mut c = lo.clone();
    'outer: loop {
        // t = c * adj / det must lie in [0,1)^r
        let mut inside = true;
        for j in 0..r {
            let mut num: i128 = 0;
            for k in 0..r {
                num += c[k] as i128 * adj[k][j];
            }
            // 0 <= num/det < 1  with sign of det folded in
            let (num, d) = if det > 0 { (num, det) } else { (-num, -det) };
            if num < 0 || num >= d {
                inside = false;
                break;
            }
        }
        if inside {
            reps.push(lattice.from_coordinates(&c));
        }
        // advance odometer
        for j in 0..r {
            c[j] += 1;
            if c[j] <= hi[j] {
                continue 'outer;
            }
            c[j] = lo[j];
        }
        break;
    }
    assert_eq!(
        reps.len(),
        index,
        "coset count must equal the lattice index"
    );
    reps.sort();
    Ok(reps)
}

pub(crate) fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        _ => {
            let mut det = 0i128;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                det += sign as i128 * m[0][j] as i128 * det_i128(&minor);
            }
            det
        }
    }
}

/// Adjugate: `E * adj(E) = adj(E) * E = det(E) * I`.
pub(crate) fn adjugate_i128(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1i128]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // cofactor transpose
            adj[j][i] = sign as i128 * det_i128(&minor);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    #[test]
    fn standard_basis() {
        let l = hermite_basis(&[lv![1, 0], lv![0, 1]]).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis(), &[lv![1, 0], lv![0, 1]]);
    }

    #[test]
    fn rank_two_sublattice() {
        let l = hermite_basis(&[lv![2, 2], lv![0, 4]]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&lv![2, 6]).unwrap());
        assert!(!l.contains(&lv![1, 1]).unwrap());
        assert!(l.contains(&lv![0, 0]).unwrap());
    }

    #[test]
    fn single_vector_is_not_gcd_normalized() {
        let l = hermite_basis(&[lv![2, 4]]).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis(), &[lv![2, 4]]);
        assert!(l.contains(&lv![4, 8]).unwrap());
        assert!(!l.contains(&lv![1, 2]).unwrap());
    }

    #[test]
    fn hermite_is_idempotent() {
        let l = hermite_basis(&[lv![2, 2], lv![0, 4], lv![6, 2]]).unwrap();
        let l2 = hermite_basis(l.basis()).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert_eq!(
            hermite_basis(&[lv![1, 0], lv![1, 0, 0]]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn coset_system_trivial() {
        let l = hermite_basis(&[lv![1, 0], lv![0, 1]]).unwrap();
        let reps = coset_system(&l, &[lv![1, 0], lv![0, 1]]).unwrap();
        assert_eq!(reps, vec![lv![0, 0]]);
    }

    #[test]
    fn coset_system_index_four_in_z2() {
        let l = hermite_basis(&[lv![1, 0], lv![0, 1]]).unwrap();
        let reps = coset_system(&l, &[lv![2, 0], lv![0, 2]]).unwrap();
        assert_eq!(reps, vec![lv![0, 0], lv![0, 1], lv![1, 0], lv![1, 1]]);
    }

    #[test]
    fn coset_system_in_proper_sublattice() {
        // lattice {(i, 4j - i)}: spanned by (1, -1) and (0, 4)
        let l = hermite_basis(&[lv![1, -1], lv![0, 4]]).unwrap();
        let reps = coset_system(&l, &[lv![0, 4], lv![4, 0]]).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps.contains(&lv![0, 0]));
        assert!(reps.contains(&lv![1, 3]));
    }

    #[test]
    fn coset_system_wrong_ray_count() {
        let l = hermite_basis(&[lv![1, 0], lv![0, 1]]).unwrap();
        assert!(matches!(
            coset_system(&l, &[lv![1, 0]]),
            Err(Error::NotSimplicial { rays: 1, rank: 2 })
        ));
    }

    #[test]
    fn coset_system_ray_outside_group() {
        let l = hermite_basis(&[lv![2, 0], lv![0, 2]]).unwrap();
        assert_eq!(
            coset_system(&l, &[lv![1, 0], lv![0, 2]]).unwrap_err(),
            Error::RayNotInGroup
        );
    }
}
