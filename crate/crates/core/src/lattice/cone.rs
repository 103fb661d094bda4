//! Rational polyhedral cones: extremal rays, facet normals, exact membership.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

type Rat = BigRational;

/// A pointed rational cone, described both by its primitive extremal ray
/// directions and by a halfspace representation. Membership is decided by
/// the halfspaces: `v` lies in the cone iff `eq . v = 0` for every span
/// equation and `n . v >= 0` for every facet normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    extremal_rays: Vec<LatticeVector>,
    facet_normals: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl Cone {
    pub fn extremal_rays(&self) -> &[LatticeVector] {
        &self.extremal_rays
    }

    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.extremal_rays[0].dim()
    }

    /// Exact membership test for an integer vector.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(self.equations.iter().all(|e| e.dot(v) == 0)
            && self.facet_normals.iter().all(|n| n.dot(v) >= 0))
    }

    /// Exact membership test for a rational vector.
    pub fn contains_rational(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let dot = |n: &LatticeVector| -> Rat {
            n.coords()
                .iter()
                .zip(v)
                .map(|(&a, b)| Rat::from(BigInt::from(a)) * b)
                .sum()
        };
        Ok(self.equations.iter().all(|e| dot(e).is_zero())
            && self.facet_normals.iter().all(|n| !dot(n).is_negative()))
    }
}

/// Extremal rays and halfspace description of the cone spanned by
/// `generators`. A generator is extremal iff it is not a nonnegative
/// rational combination of the generators outside its own ray; this and
/// pointedness are decided by exact Fourier-Motzkin feasibility.
pub fn extremal_rays(generators: &[LatticeVector]) -> Result<Cone> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = generators[0].dim();
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        if g.is_zero() {
            return Err(Error::NotPointed);
        }
    }
    // pointedness: no nontrivial nonnegative combination vanishes
    let zero = LatticeVector::zero(dim);
    for i in 0..generators.len() {
        let mut lower = vec![0i64; generators.len()];
        lower[i] = 1;
        if nonneg_combination_exists(generators, &zero, &lower) {
            return Err(Error::NotPointed);
        }
    }

    let mut rays: Vec<LatticeVector> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let others: Vec<LatticeVector> = generators
            .iter()
            .enumerate()
            .filter(|&(j, h)| j != i && !h.parallel_same_direction(g))
            .map(|(_, h)| h.clone())
            .collect();
        let extremal = if others.is_empty() {
            true
        } else {
            !nonneg_combination_exists(&others, g, &vec![0; others.len()])
        };
        if extremal {
            let p = g.primitive();
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
    }
    rays.sort();

    // span equations: kernel of { x : ray . x = 0 for all rays }
    let ray_rows: Vec<Vec<Rat>> = rays.iter().map(rat_row).collect();
    let mut equations: Vec<LatticeVector> = rational_kernel(&ray_rows, dim)
        .iter()
        .map(|k| primitive_integer(k))
        .collect();
    equations.sort();
    let span_rank = dim - equations.len();

    // facets: for each (span_rank - 1)-subset of rays, the orthogonal
    // direction inside the span, kept when all rays sit on one side
    let mut normals: HashSet<LatticeVector> = HashSet::new();
    for subset in subsets(rays.len(), span_rank.saturating_sub(1)) {
        let mut rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rat_row(&rays[i])).collect();
        for eq in &equations {
            rows.push(rat_row(eq));
        }
        let kernel = rational_kernel(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let n = primitive_integer(&kernel[0]);
        let dots: Vec<i128> = rays.iter().map(|r| n.dot(r)).collect();
        if dots.iter().all(|&d| d >= 0) {
            normals.insert(n);
        } else if dots.iter().all(|&d| d <= 0) {
            normals.insert(-&n);
        }
    }
    let mut facet_normals: Vec<LatticeVector> = normals.into_iter().collect();
    facet_normals.sort();

    let cone = Cone {
        extremal_rays: rays,
        facet_normals,
        equations,
    };
    debug_assert!(generators.iter().all(|g| cone.contains(g).unwrap()));
    Ok(cone)
}

fn rat_row(v: &LatticeVector) -> Vec<Rat> {
    v.coords()
        .iter()
        .map(|&c| Rat::from(BigInt::from(c)))
        .collect()
}

/// All `k`-element subsets of `{0, .., n-1}`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Basis of `{ x in Q^dim : row . x = 0 for every row }`.
pub(crate) fn rational_kernel(rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..dim {
        let Some(p) = (rank..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let inv = mat[rank][col].clone();
        for j in 0..dim {
            let t = &mat[rank][j] / &inv;
            mat[rank][j] = t;
        }
        for i in 0..mat.len() {
            if i != rank && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for j in 0..dim {
                    let t = &mat[i][j] - &f * &mat[rank][j];
                    mat[i][j] = t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in (0..dim).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); dim];
        v[free] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[r][free].clone();
        }
        kernel.push(v);
    }
    kernel
}

/// Clear denominators and divide by the gcd; first nonzero entry positive.
pub(crate) fn primitive_integer(v: &[Rat]) -> LatticeVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            let t = &*x / &gcd;
            *x = t;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                let t = -&*x;
                *x = t;
            }
        }
    }
    LatticeVector::new(
        ints.iter()
            .map(|b| i64::try_from(b).expect("primitive normal overflows i64"))
            .collect(),
    )
}

/// Does `target` lie in the rational span of `vectors`?
pub(crate) fn in_rational_span(vectors: &[LatticeVector], target: &LatticeVector) -> bool {
    solve_linear(vectors, target).is_some()
}

/// Does `target` lie in the nonnegative rational span of `vectors`?
/// This is the V-representation route; [`Cone::contains`] answers the same
/// question through facet normals.
pub fn in_nonnegative_span(vectors: &[LatticeVector], target: &LatticeVector) -> bool {
    nonneg_combination_exists(vectors, target, &vec![0; vectors.len()])
}

/// Decide whether `target = sum(lambda_i * vectors_i)` has a rational
/// solution with `lambda_i >= lower_i`. Equalities are removed by Gaussian
/// elimination; the remaining inequality system over the free variables is
/// projected by Fourier-Motzkin elimination, which is exact for
/// feasibility.
pub(crate) fn nonneg_combination_exists(
    vectors: &[LatticeVector],
    target: &LatticeVector,
    lower: &[i64],
) -> bool {
    debug_assert_eq!(vectors.len(), lower.len());
    // shift lambda_i = lower_i + nu_i with nu >= 0
    let mut shifted = target.clone();
    for (v, &lb) in vectors.iter().zip(lower) {
        if lb != 0 {
            shifted = &shifted - &v.scale(lb);
        }
    }
    let Some((particular, nullspace)) = solve_linear(vectors, &shifted) else {
        return false;
    };
    if nullspace.is_empty() {
        return particular.iter().all(|p| !p.is_negative());
    }
    // nu_i = particular_i + sum_f nullspace_f[i] * mu_f  >= 0
    let rows: Vec<(Vec<Rat>, Rat)> = (0..vectors.len())
        .map(|i| {
            let coef: Vec<Rat> = nullspace.iter().map(|nf| nf[i].clone()).collect();
            (coef, particular[i].clone())
        })
        .collect();
    fm_feasible(rows, nullspace.len())
}

/// Solve `sum(lambda_i * vectors_i) = target` over the rationals.
/// Returns a particular solution and a nullspace basis (each element a
/// coefficient vector over the lambdas), or `None` if inconsistent.
fn solve_linear(
    vectors: &[LatticeVector],
    target: &LatticeVector,
) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let m = vectors.len();
    let d = target.dim();
    // rows indexed by ambient coordinate, columns by lambda, augmented rhs
    let mut mat: Vec<Vec<Rat>> = (0..d)
        .map(|c| {
            let mut row: Vec<Rat> = vectors
                .iter()
                .map(|v| Rat::from(BigInt::from(v.coords()[c])))
                .collect();
            row.push(Rat::from(BigInt::from(target.coords()[c])));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..m {
        let Some(p) = (rank..d).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let inv = mat[rank][col].clone();
        for j in 0..=m {
            let t = &mat[rank][j] / &inv;
            mat[rank][j] = t;
        }
        for i in 0..d {
            if i != rank && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for j in 0..=m {
                    let t = &mat[i][j] - &f * &mat[rank][j];
                    mat[i][j] = t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    // consistency: zero rows must have zero rhs
    for row in mat.iter().skip(rank) {
        if !row[m].is_zero() {
            return None;
        }
    }
    let mut particular = vec![Rat::zero(); m];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = mat[r][m].clone();
    }
    let free_cols: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
    let nullspace: Vec<Vec<Rat>> = free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); m];
            v[fc] = Rat::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -mat[r][fc].clone();
            }
            v
        })
        .collect();
    Some((particular, nullspace))
}

/// Fourier-Motzkin elimination on `coef . mu + konst >= 0` rows.
fn fm_feasible(rows: Vec<(Vec<Rat>, Rat)>, nvars: usize) -> bool {
    let mut rows = match normalize_rows(rows, nvars) {
        Some(r) => r,
        None => return false,
    };
    for var in 0..nvars {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for row in rows {
            match row.0[var].cmp(&BigInt::zero()) {
                std::cmp::Ordering::Greater => pos.push(row),
                std::cmp::Ordering::Less => neg.push(row),
                std::cmp::Ordering::Equal => zero.push(row),
            }
        }
        let mut next: Vec<(Vec<BigInt>, BigInt)> = zero;
        for p in &pos {
            for n in &neg {
                let a = &p.0[var]; // > 0
                let b = &n.0[var]; // < 0
                let coef: Vec<BigInt> = (0..nvars)
                    .map(|j| {
                        if j == var {
                            BigInt::zero()
                        } else {
                            a * &n.0[j] - b * &p.0[j]
                        }
                    })
                    .collect();
                let konst = a * &n.1 - b * &p.1;
                next.push((coef, konst));
            }
        }
        let as_rat = next
            .into_iter()
            .map(|(c, k)| {
                (
                    c.into_iter().map(Rat::from).collect::<Vec<_>>(),
                    Rat::from(k),
                )
            })
            .collect();
        rows = match normalize_rows(as_rat, nvars) {
            Some(r) => r,
            None => return false,
        };
    }
    true
}

/// Scale rows to primitive integers, drop tautologies and duplicates.
/// Returns `None` on an immediate contradiction `0 >= positive`.
fn normalize_rows(rows: Vec<(Vec<Rat>, Rat)>, nvars: usize) -> Option<Vec<(Vec<BigInt>, BigInt)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (coef, konst) in rows {
        let mut all: Vec<Rat> = coef.clone();
        all.push(konst);
        let lcm = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = all.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !gcd.is_zero() && !gcd.is_one() {
            for x in &mut ints {
                let t = &*x / &gcd;
                *x = t;
            }
        }
        let konst = ints.pop().expect("constant term present");
        if ints.iter().all(|c| c.is_zero()) {
            if konst.is_negative() {
                return None;
            }
            continue;
        }
        if seen.insert((ints.clone(), konst.clone())) {
            out.push((ints, konst));
        }
    }
    debug_assert!(out.iter().all(|(c, _)| c.len() == nvars));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    #[test]
    fn positive_orthant() {
        let cone = extremal_rays(&[lv![1, 0], lv![0, 1]]).unwrap();
        assert_eq!(cone.extremal_rays(), &[lv![0, 1], lv![1, 0]]);
        assert!(cone.contains(&lv![3, 5]).unwrap());
        assert!(!cone.contains(&lv![-1, 7]).unwrap());
    }

    #[test]
    fn scaled_orthant_membership() {
        let cone = extremal_rays(&[lv![0, 4], lv![4, 0]]).unwrap();
        assert_eq!(cone.extremal_rays(), &[lv![0, 1], lv![1, 0]]);
        assert!(!cone.contains(&lv![-1, 7]).unwrap());
        assert!(cone.contains(&lv![0, 0]).unwrap());
    }

    #[test]
    fn slanted_cone_membership() {
        // cone over (0,1) and (8,1): x <= 8y in the upper halfplane
        let cone = extremal_rays(&[lv![0, 1], lv![8, 1]]).unwrap();
        assert!(cone.contains(&lv![8, 1]).unwrap());
        assert!(!cone.contains(&lv![9, 1]).unwrap());
        assert!(cone.contains(&lv![4, 1]).unwrap());
    }

    #[test]
    fn interior_generators_are_not_extremal() {
        let cone = extremal_rays(&[lv![0, 4], lv![2, 2], lv![4, 0], lv![1, 7], lv![3, 5]]).unwrap();
        assert_eq!(cone.extremal_rays(), &[lv![0, 1], lv![1, 0]]);
    }

    #[test]
    fn extreme_slopes() {
        let gens = [
            lv![0, 1],
            lv![2, 1],
            lv![4, 1],
            lv![6, 1],
            lv![8, 1],
            lv![1, 2],
            lv![3, 2],
        ];
        let cone = extremal_rays(&gens).unwrap();
        assert_eq!(cone.extremal_rays(), &[lv![0, 1], lv![8, 1]]);
        for g in &gens {
            assert!(cone.contains(g).unwrap());
        }
    }

    #[test]
    fn unpointed_is_rejected() {
        assert_eq!(
            extremal_rays(&[lv![1, 0], lv![-1, 0]]).unwrap_err(),
            Error::NotPointed
        );
        assert_eq!(
            extremal_rays(&[lv![1, 0], lv![0, 1], lv![-1, -1]]).unwrap_err(),
            Error::NotPointed
        );
    }

    #[test]
    fn low_dimensional_cone() {
        // single ray in Z^2: membership needs the span equation
        let cone = extremal_rays(&[lv![2, 4], lv![1, 2]]).unwrap();
        assert_eq!(cone.extremal_rays(), &[lv![1, 2]]);
        assert!(cone.contains(&lv![3, 6]).unwrap());
        assert!(!cone.contains(&lv![-1, -2]).unwrap());
        assert!(!cone.contains(&lv![1, 3]).unwrap());
    }

    #[test]
    fn three_dimensional_simplicial() {
        let cone =
            extremal_rays(&[lv![0, 0, 1], lv![2, 0, 1], lv![0, 4, 1], lv![0, 2, 1]]).unwrap();
        assert_eq!(
            cone.extremal_rays(),
            &[lv![0, 0, 1], lv![0, 4, 1], lv![2, 0, 1]]
        );
        assert!(cone.contains(&lv![1, 1, 1]).unwrap());
        assert!(!cone.contains(&lv![3, 0, 1]).unwrap());
        assert!(!cone.contains(&lv![0, 0, -1]).unwrap());
    }

    #[test]
    fn square_cone_in_three_dimensions() {
        // four extremal rays: not simplicial
        let cone =
            extremal_rays(&[lv![0, 0, 1], lv![2, 0, 1], lv![0, 2, 1], lv![2, 2, 1]]).unwrap();
        assert_eq!(cone.extremal_rays().len(), 4);
        assert!(cone.contains(&lv![1, 1, 1]).unwrap());
        assert!(!cone.contains(&lv![3, 1, 1]).unwrap());
    }

    #[test]
    fn rational_membership() {
        let cone = extremal_rays(&[lv![0, 1], lv![8, 1]]).unwrap();
        let half = |n: i64, d: i64| Rat::new(BigInt::from(n), BigInt::from(d));
        assert!(cone.contains_rational(&[half(1, 2), half(1, 2)]).unwrap());
        assert!(!cone.contains_rational(&[half(9, 2), half(1, 2)]).unwrap());
    }
}
