//! Double description: converting a polyhedral cone between its generator
//! (V) and inequality (H) descriptions, exactly.
//!
//! Both directions reduce to one primitive, [`dual_description`]: the extreme
//! rays of `{x : n·x ≥ 0 for all n}`. Polarity does the rest — the
//! inequalities of `cone(G)` are exactly the extreme rays of its dual cone,
//! which is the cone cut out by the "normals" `G`.
//!
//! The incremental step inserts constraints in lexicographic order and keeps
//! only combinations of adjacent ray pairs, where adjacency of `u, v` is
//! decided by a rank computation on the constraints tight at both. Lineality
//! is split off first (kernel of the constraint matrix), so the incremental
//! core always runs on a pointed cone of full rank.

use crate::error::{Error, Result};
use crate::matrix;
use crate::scalar::Scalar;
use crate::vector::{canonicalize_rays, RVector};

/// One side of a cone description.
#[derive(Clone, Debug, PartialEq)]
pub enum ConeRep<T> {
    /// Extreme rays (empty list = the zero cone).
    Generators(Vec<RVector<T>>),
    /// Homogeneous inequality normals `n·x ≥ 0` (empty list = the full space).
    Inequalities(Vec<RVector<T>>),
}

/// Converts between the two descriptions of the same cone. A `Generators`
/// input yields the irredundant `Inequalities` output and vice versa.
pub fn convert_representation<T: Scalar>(input: &ConeRep<T>, dim: usize) -> Result<ConeRep<T>> {
    match input {
        ConeRep::Generators(gens) => {
            Ok(ConeRep::Inequalities(dual_description(gens, dim)?))
        }
        ConeRep::Inequalities(normals) => {
            Ok(ConeRep::Generators(dual_description(normals, dim)?))
        }
    }
}

/// Extreme-ray description of `{x ∈ ℝ^dim : n·x ≥ 0 for all n ∈ normals}`.
///
/// The output is canonical: primitive ray representatives, lexicographically
/// sorted, irredundant. A cone with lineality is reported as the extreme rays
/// of its pointed part together with `±` a basis of the lineality space.
pub fn dual_description<T: Scalar>(
    normals: &[RVector<T>],
    dim: usize,
) -> Result<Vec<RVector<T>>> {
    if dim == 0 {
        return Err(Error::MalformedInput("zero-dimensional space".into()));
    }
    for n in normals {
        n.check_dim(dim)?;
    }
    let normals: Vec<RVector<T>> = normals.iter().filter(|n| !n.is_zero()).cloned().collect();

    // Lineality space and its orthogonal complement (the row space).
    let lineality = matrix::kernel_basis(&normals, dim);
    let complement = matrix::row_space_basis(&normals, dim);
    let k = complement.len();

    let mut generators: Vec<RVector<T>> = Vec::new();
    for l in &lineality {
        generators.push(l.clone());
        generators.push(-l);
    }

    if k > 0 {
        // Constraints expressed in complement coordinates (x = Σ yᵢ wᵢ).
        let projected: Vec<RVector<T>> = normals
            .iter()
            .map(|n| RVector::new(complement.iter().map(|w| n.dot(w)).collect()))
            .collect();
        let rays = pointed_extreme_rays(&projected, k);
        for ray in rays {
            let mut coords = vec![T::zero(); dim];
            for (y, w) in ray.iter().zip(complement.iter()) {
                for (c, wc) in coords.iter_mut().zip(w.iter()) {
                    if !y.is_zero() && !wc.is_zero() {
                        *c = c.clone() + y.clone() * wc.clone();
                    }
                }
            }
            generators.push(RVector::new(coords));
        }
    }

    Ok(canonicalize_rays(generators))
}

/// A ray of the working description plus the set of processed constraints
/// tight at it.
struct Ray<T> {
    dir: RVector<T>,
    tight: BitSet,
}

/// Extreme rays of a pointed full-rank cone `{y ∈ ℝ^k : M y ≥ 0}`.
///
/// Precondition (guaranteed by the caller): `rank(M) = k`, so the cone
/// contains no line.
fn pointed_extreme_rays<T: Scalar>(m: &[RVector<T>], k: usize) -> Vec<RVector<T>> {
    // Deterministic processing order.
    let mut rows: Vec<RVector<T>> = m.iter().map(|r| r.clone().canonicalized_ray()).collect();
    rows.sort_by(|a, b| a.cmp_lex(b));
    rows.dedup();
    let total = rows.len();

    // Greedily pick the first k independent rows as the initial simplicial cone.
    let mut initial: Vec<usize> = Vec::with_capacity(k);
    let mut picked: Vec<RVector<T>> = Vec::with_capacity(k);
    for (i, row) in rows.iter().enumerate() {
        if picked.len() == k {
            break;
        }
        picked.push(row.clone());
        if matrix::rank(&picked, k) == picked.len() {
            initial.push(i);
        } else {
            picked.pop();
        }
    }
    assert_eq!(initial.len(), k, "projected constraint matrix lost rank");

    // Rays of the simplicial cone: columns of M_I^{-1}.
    let inverse = matrix::invert(&picked).expect("independent rows invert");
    let mut rays: Vec<Ray<T>> = (0..k)
        .map(|j| {
            let dir = RVector::new(inverse.iter().map(|r| r[j].clone()).collect())
                .canonicalized_ray();
            let mut tight = BitSet::new(total);
            for &row_idx in &initial {
                if rows[row_idx].dot(&dir).is_zero() {
                    tight.set(row_idx);
                }
            }
            Ray { dir, tight }
        })
        .collect();

    let mut processed = BitSet::new(total);
    for &i in &initial {
        processed.set(i);
    }

    for t in 0..total {
        if processed.contains(t) {
            continue;
        }
        let row = rows[t].clone();
        let values: Vec<T> = rays.iter().map(|r| row.dot(&r.dir)).collect();
        let negatives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        processed.set(t);
        if negatives.is_empty() {
            for (ray, val) in rays.iter_mut().zip(values.iter()) {
                if val.is_zero() {
                    ray.tight.set(t);
                }
            }
            continue;
        }
        let positives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();

        let mut next: Vec<Ray<T>> = Vec::new();
        for &p in &positives {
            for &n in &negatives {
                if !adjacent(&rays[p], &rays[n], &rows, k) {
                    continue;
                }
                // Positive combination annihilating the new constraint.
                let dir = (&rays[n].dir.scale(&values[p]))
                    .sub_scaled(&rays[p].dir, &values[n])
                    .canonicalized_ray();
                let mut tight = BitSet::new(total);
                for i in processed.iter() {
                    if rows[i].dot(&dir).is_zero() {
                        tight.set(i);
                    }
                }
                next.push(Ray { dir, tight });
            }
        }
        for (i, mut ray) in rays.drain(..).enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                ray.tight.set(t);
            }
            next.push(ray);
        }
        rays = next;
    }

    rays.into_iter().map(|r| r.dir).collect()
}

/// Rays `u`, `v` are adjacent iff the constraints tight at both have rank
/// `k - 2` (they then span a common 2-face).
fn adjacent<T: Scalar>(u: &Ray<T>, v: &Ray<T>, rows: &[RVector<T>], k: usize) -> bool {
    let Some(target) = k.checked_sub(2) else {
        return false;
    };
    let common: Vec<RVector<T>> = u
        .tight
        .intersection(&v.tight)
        .map(|i| rows[i].clone())
        .collect();
    if common.len() < target {
        return false;
    }
    matrix::rank(&common, k) == target
}

impl<T: Scalar> RVector<T> {
    /// `self - factor · other`, used by the combination step above.
    fn sub_scaled(&self, other: &RVector<T>, factor: &T) -> RVector<T> {
        RVector::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.clone() - factor.clone() * b.clone())
                .collect(),
        )
    }
}

/// Fixed-capacity growable bitset over constraint indices.
#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(capacity: usize) -> Self {
        BitSet { words: vec![0; capacity.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter_map(move |b| {
                if bits & (1 << b) != 0 {
                    Some(w * 64 + b)
                } else {
                    None
                }
            })
        })
    }

    fn intersection<'a>(&'a self, other: &'a BitSet) -> impl Iterator<Item = usize> + 'a {
        self.words
            .iter()
            .zip(other.words.iter())
            .enumerate()
            .flat_map(|(w, (&a, &b))| {
                let bits = a & b;
                (0..64).filter_map(move |bit| {
                    if bits & (1 << bit) != 0 {
                        Some(w * 64 + bit)
                    } else {
                        None
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RationalVector;

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    fn vs(list: &[&[i64]]) -> Vec<RationalVector> {
        list.iter().map(|c| v(c)).collect()
    }

    #[test]
    fn orthant_is_self_described() {
        let gens = vs(&[&[1, 0], &[0, 1]]);
        let ineqs = dual_description(&gens, 2).unwrap();
        assert_eq!(ineqs, vs(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn halfplane_from_single_inequality() {
        // {x : x1 + x2 >= 0} has a lineality direction and three generators.
        let gens = dual_description(&vs(&[&[1, 1]]), 2).unwrap();
        assert_eq!(gens, vs(&[&[-1, 1], &[1, -1], &[1, 1]]));
    }

    #[test]
    fn diamond_cone_facets() {
        // Facets of cone{(±1,0,1),(0,±1,1)} are spanned by adjacent ray pairs.
        let gens = vs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let ineqs = dual_description(&gens, 3).unwrap();
        assert_eq!(
            ineqs,
            vs(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]])
        );
    }

    #[test]
    fn zero_cone_and_full_space() {
        // No generators: the zero cone, described by ±unit inequalities.
        let ineqs = dual_description(&[], 2).unwrap();
        assert_eq!(ineqs, vs(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
        // Opposed inequalities in R^1: only the origin.
        let gens = dual_description(&vs(&[&[1], &[-1]]), 1).unwrap();
        assert!(gens.is_empty());
    }

    #[test]
    fn convert_representation_roundtrip_direction() {
        let input = ConeRep::Generators(vs(&[&[1, 1]]));
        let out = convert_representation(&input, 2).unwrap();
        let ConeRep::Inequalities(normals) = out else {
            panic!("expected inequalities");
        };
        // Dual of a single ray is the halfplane it supports.
        assert_eq!(normals, vs(&[&[-1, 1], &[1, -1], &[1, 1]]));
    }

    #[test]
    fn rejects_mismatched_dimension() {
        let bad = dual_description(&vs(&[&[1, 0], &[1]]), 2);
        assert!(bad.is_err());
    }
}
