//! Closed convex polyhedral cones with both descriptions kept canonical, and
//! the distance-to-cone computations in their primal (nearest point) and dual
//! (supporting functional) forms.

use crate::error::{Error, Result};
use crate::kernel::lp::{LinearConstraint, LinearProgram, LpOutcome};
use crate::kernel::{dual_description, NormTag};
use crate::scalar::Scalar;
use crate::vector::{canonicalize_rays, RVector};

/// A polyhedral cone `K ⊆ ℝ^dim`, stored in both representations:
/// `K = cone(vrep) = {x : n·x ≥ 0 for all n ∈ hrep}`.
///
/// Constructors canonicalize both sides through the double description
/// method, so equal cones compare equal structurally and the inequality
/// normals of `K` are exactly the generators of its dual cone. That makes
/// [`PolyhedralCone::dual_cone`] a constant-time swap and the bipolar
/// identity (`K⁺⁺ = K` for closed cones) hold on the nose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone<T> {
    dim: usize,
    vrep: Vec<RVector<T>>,
    hrep: Vec<RVector<T>>,
}

impl<T: Scalar> PolyhedralCone<T> {
    /// The cone spanned by `generators` (an empty list gives `{0}`).
    pub fn from_generators(generators: Vec<RVector<T>>, dim: usize) -> Result<Self> {
        for g in &generators {
            g.check_dim(dim)?;
        }
        let hrep = dual_description(&generators, dim)?;
        let vrep = dual_description(&hrep, dim)?;
        Ok(PolyhedralCone { dim, vrep, hrep })
    }

    /// The cone `{x : n·x ≥ 0}` (an empty list gives the full space).
    pub fn from_inequalities(normals: Vec<RVector<T>>, dim: usize) -> Result<Self> {
        for n in &normals {
            n.check_dim(dim)?;
        }
        let vrep = dual_description(&normals, dim)?;
        let hrep = dual_description(&vrep, dim)?;
        Ok(PolyhedralCone { dim, vrep, hrep })
    }

    /// The nonnegative orthant `ℝ^dim₊`.
    pub fn orthant(dim: usize) -> Self {
        let units = canonicalize_rays((0..dim).map(|i| RVector::unit(dim, i)).collect());
        PolyhedralCone { dim, vrep: units.clone(), hrep: units }
    }

    /// The zero cone `{0}`.
    pub fn zero(dim: usize) -> Self {
        Self::from_generators(Vec::new(), dim).expect("zero cone is well formed")
    }

    /// The whole space as a cone.
    pub fn full_space(dim: usize) -> Self {
        Self::from_inequalities(Vec::new(), dim).expect("full space is well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical extreme-ray listing (pointed part plus `±` lineality basis).
    pub fn generators(&self) -> &[RVector<T>] {
        &self.vrep
    }

    /// Canonical irredundant inequality normals.
    pub fn inequalities(&self) -> &[RVector<T>] {
        &self.hrep
    }

    /// The positive polar cone `K⁺ = {f : f(x) ≥ 0 on K}`.
    ///
    /// Because both stored representations are canonical duals of each other,
    /// this is a swap, and `dual_cone` twice is the identity.
    pub fn dual_cone(&self) -> Self {
        PolyhedralCone { dim: self.dim, vrep: self.hrep.clone(), hrep: self.vrep.clone() }
    }

    /// The negation `-K` (used for negative polars / barrier cones).
    pub fn negated(&self) -> Self {
        PolyhedralCone {
            dim: self.dim,
            vrep: canonicalize_rays(self.vrep.iter().map(|v| -v).collect()),
            hrep: canonicalize_rays(self.hrep.iter().map(|n| -n).collect()),
        }
    }

    /// Exact membership test via the inequality description.
    pub fn contains(&self, x: &RVector<T>) -> Result<bool> {
        x.check_dim(self.dim)?;
        Ok(self.hrep.iter().all(|n| !n.dot(x).is_negative()))
    }

    /// Whether `K ∩ -K = {0}`.
    ///
    /// A nontrivial lineality direction forces the negation of at least one
    /// generator into the cone, so checking the generators suffices.
    pub fn is_pointed(&self) -> bool {
        self.vrep
            .iter()
            .all(|g| !self.contains(&(-g)).expect("dimensions agree"))
    }

    /// Whether the cone has nonempty interior, decided by the feasibility of
    /// `{x : n·x ≥ 1 for all normals n}`.
    pub fn is_full_dimensional(&self) -> bool {
        self.interior_point().is_some()
    }

    /// A strictly interior point, when one exists.
    pub fn interior_point(&self) -> Option<RVector<T>> {
        let mut lp = LinearProgram::minimize(RVector::zero(self.dim));
        lp.set_all_free();
        for n in &self.hrep {
            lp.push(LinearConstraint::ge(n.clone(), T::one()));
        }
        match lp.solve().expect("well-formed interior LP") {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
            LpOutcome::Infeasible => None,
        }
    }

    /// Strict membership in the interior. Requires a full-dimensional cone.
    pub fn contains_interior(&self, x: &RVector<T>) -> Result<bool> {
        x.check_dim(self.dim)?;
        if !self.is_full_dimensional() {
            return Err(Error::PreconditionViolated(
                "interior membership needs a full-dimensional cone".into(),
            ));
        }
        Ok(self.hrep.iter().all(|n| n.dot(x).is_positive()))
    }

    /// Whether `self ⊆ other`, via generator membership.
    pub fn subset_of(&self, other: &Self) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: other.dim, found: self.dim });
        }
        for g in &self.vrep {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The smallest cone containing `self` and the extra rays.
    pub fn hull_with(&self, extra: &[RVector<T>]) -> Result<Self> {
        let mut gens = self.vrep.clone();
        gens.extend_from_slice(extra);
        Self::from_generators(gens, self.dim)
    }
}

/// How a distance value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// Nearest-point linear program `min ‖x - k‖` over `k ∈ K`.
    PrimalLp,
    /// Supporting-functional program `max -f(x)` over `f ∈ K⁺` with dual norm
    /// at most one.
    DualFormula,
}

/// A certified distance `d(x, K)` under a polyhedral norm.
#[derive(Clone, Debug)]
pub struct DistanceResult<T> {
    pub value: T,
    pub mode: DistanceMode,
    /// Nearest cone point (primal) or maximizing functional (dual).
    pub witness: RVector<T>,
}

/// Distance from `x` to the cone under `norm`, computed by the requested
/// route. The two routes agree exactly; their agreement is the computable
/// form of the duality identity
/// `d(x, K) = sup{-f(x) : f ∈ K⁺, ‖f‖* ≤ 1}`.
pub fn cone_distance<T: Scalar>(
    x: &RVector<T>,
    cone: &PolyhedralCone<T>,
    norm: NormTag,
    mode: DistanceMode,
) -> Result<DistanceResult<T>> {
    x.check_dim(cone.dim())?;
    if !norm.is_exact() {
        return Err(Error::UnsupportedNorm(
            "Euclidean distances are served by the second-order cone oracle",
        ));
    }
    match mode {
        DistanceMode::PrimalLp => primal_distance(x, cone, norm),
        DistanceMode::DualFormula => dual_distance(x, cone, norm),
    }
}

/// `min ‖x - Gλ‖` over `λ ≥ 0`, as an LP in `(λ, t)`.
fn primal_distance<T: Scalar>(
    x: &RVector<T>,
    cone: &PolyhedralCone<T>,
    norm: NormTag,
) -> Result<DistanceResult<T>> {
    let n = cone.dim();
    let gens = cone.generators();
    let m = gens.len();
    let num_t = match norm {
        NormTag::Linf => 1,
        NormTag::L1 => n,
        NormTag::L2Approx => unreachable!(),
    };
    let nvars = m + num_t;

    let mut objective = vec![T::zero(); nvars];
    for obj in objective.iter_mut().skip(m) {
        *obj = T::one();
    }
    let mut lp = LinearProgram::minimize(RVector::new(objective));

    // ±((Gλ)_i - x_i) ≤ t_(i or 0)
    for i in 0..n {
        let t_col = m + if num_t == 1 { 0 } else { i };
        for sign in [1i64, -1] {
            let mut coeffs = vec![T::zero(); nvars];
            for (j, g) in gens.iter().enumerate() {
                if !g[i].is_zero() {
                    coeffs[j] = if sign > 0 { g[i].clone() } else { -g[i].clone() };
                }
            }
            coeffs[t_col] = -T::one();
            let rhs = if sign > 0 { x[i].clone() } else { -x[i].clone() };
            lp.push(LinearConstraint::le(RVector::new(coeffs), rhs));
        }
    }

    match lp.solve()? {
        LpOutcome::Optimal { value, point } => {
            let mut nearest = RVector::zero(n);
            for (j, g) in gens.iter().enumerate() {
                if !point[j].is_zero() {
                    nearest = &nearest + &g.scale(&point[j]);
                }
            }
            Ok(DistanceResult { value, mode: DistanceMode::PrimalLp, witness: nearest })
        }
        other => unreachable!("distance LP is feasible and bounded, got {other:?}"),
    }
}

/// `max -f(x)` over `f ∈ K⁺` with the dual-ball constraint; the dual ball of
/// `‖·‖∞` is the `‖·‖₁` ball and vice versa.
fn dual_distance<T: Scalar>(
    x: &RVector<T>,
    cone: &PolyhedralCone<T>,
    norm: NormTag,
) -> Result<DistanceResult<T>> {
    let n = cone.dim();
    let gens = cone.generators();

    // f is split as u - v with u, v ≥ 0; minimize x·(u - v) = -(-f(x)).
    let mut objective = Vec::with_capacity(2 * n);
    objective.extend(x.iter().cloned());
    objective.extend(x.iter().map(|c| -c.clone()));
    let mut lp = LinearProgram::minimize(RVector::new(objective));

    for g in gens {
        let mut coeffs = Vec::with_capacity(2 * n);
        coeffs.extend(g.iter().cloned());
        coeffs.extend(g.iter().map(|c| -c.clone()));
        lp.push(LinearConstraint::ge(RVector::new(coeffs), T::zero()));
    }
    match norm {
        NormTag::Linf => {
            // ‖f‖₁ ≤ 1
            lp.push(LinearConstraint::le(
                RVector::new(vec![T::one(); 2 * n]),
                T::one(),
            ));
        }
        NormTag::L1 => {
            // ‖f‖∞ ≤ 1
            for i in 0..n {
                for sign in [1i64, -1] {
                    let mut coeffs = vec![T::zero(); 2 * n];
                    coeffs[i] = T::from_int(sign);
                    coeffs[n + i] = T::from_int(-sign);
                    lp.push(LinearConstraint::le(RVector::new(coeffs), T::one()));
                }
            }
        }
        NormTag::L2Approx => unreachable!(),
    }

    match lp.solve()? {
        LpOutcome::Optimal { value, point } => {
            let functional = RVector::new(
                (0..n)
                    .map(|i| point[i].clone() - point[n + i].clone())
                    .collect(),
            );
            Ok(DistanceResult {
                value: -value,
                mode: DistanceMode::DualFormula,
                witness: functional,
            })
        }
        other => unreachable!("dual-ball LP is feasible and bounded, got {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, RationalCone, RationalVector};

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn orthant_is_self_dual() {
        let k = RationalCone::orthant(2);
        assert_eq!(k.dual_cone(), k);
        assert_eq!(k, RationalCone::from_generators(vec![v(&[1, 0]), v(&[0, 1])], 2).unwrap());
    }

    #[test]
    fn dual_of_a_ray_is_a_halfplane() {
        let k = RationalCone::from_generators(vec![v(&[1, 1])], 2).unwrap();
        let dual = k.dual_cone();
        let halfplane = RationalCone::from_inequalities(vec![v(&[1, 1])], 2).unwrap();
        assert_eq!(dual, halfplane);
        assert!(dual.contains(&v(&[2, -1])).unwrap());
        assert!(!dual.contains(&v(&[-2, 1])).unwrap());
    }

    #[test]
    fn diamond_cone_dual_generators() {
        let k = RationalCone::from_generators(
            vec![v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])],
            3,
        )
        .unwrap();
        let dual = k.dual_cone();
        let expected = RationalCone::from_generators(
            vec![v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1])],
            3,
        )
        .unwrap();
        assert_eq!(dual, expected);
    }

    #[test]
    fn bipolar_identity_on_canonical_forms() {
        for cone in [
            RationalCone::orthant(3),
            RationalCone::from_generators(vec![v(&[1, 1]), v(&[1, -1])], 2).unwrap(),
            RationalCone::from_inequalities(vec![v(&[1, 2, 3])], 3).unwrap(),
            RationalCone::zero(2),
            RationalCone::full_space(2),
        ] {
            assert_eq!(cone.dual_cone().dual_cone(), cone);
        }
    }

    #[test]
    fn membership_examples() {
        let orthant = RationalCone::orthant(2);
        assert!(orthant.contains(&v(&[1, 2])).unwrap());
        assert!(!orthant.contains(&v(&[-1, 2])).unwrap());
        let halfplane = RationalCone::from_inequalities(vec![v(&[1, 1])], 2).unwrap();
        assert!(halfplane.contains(&v(&[2, -1])).unwrap());
    }

    #[test]
    fn pointedness() {
        assert!(RationalCone::orthant(2).is_pointed());
        let halfplane = RationalCone::from_inequalities(vec![v(&[1, 0])], 2).unwrap();
        assert!(!halfplane.is_pointed());
        let line = RationalCone::from_generators(vec![v(&[1, 1]), v(&[-1, -1])], 2).unwrap();
        assert!(!line.is_pointed());
        assert!(RationalCone::zero(3).is_pointed());
    }

    #[test]
    fn interior_and_full_dimensionality() {
        let orthant = RationalCone::orthant(2);
        assert!(orthant.is_full_dimensional());
        assert!(orthant.contains_interior(&v(&[1, 1])).unwrap());
        assert!(!orthant.contains_interior(&v(&[1, 0])).unwrap());
        let ray = RationalCone::from_generators(vec![v(&[1, 0])], 2).unwrap();
        assert!(!ray.is_full_dimensional());
        assert!(ray.contains_interior(&v(&[1, 0])).is_err());
    }

    #[test]
    fn distance_inside_cone_is_zero() {
        let k = RationalCone::orthant(2);
        for mode in [DistanceMode::PrimalLp, DistanceMode::DualFormula] {
            for norm in [NormTag::Linf, NormTag::L1] {
                let d = cone_distance(&v(&[1, 1]), &k, norm, mode).unwrap();
                assert_eq!(d.value, q(0));
            }
        }
    }

    #[test]
    fn distance_to_orthant_in_linf() {
        let k = RationalCone::orthant(2);
        let x = v(&[-1, -2]);
        let primal = cone_distance(&x, &k, NormTag::Linf, DistanceMode::PrimalLp).unwrap();
        assert_eq!(primal.value, q(2));
        // The witness is a nearest cone point.
        assert!(k.contains(&primal.witness).unwrap());
        assert_eq!((&x - &primal.witness).norm_linf(), q(2));
        let dual = cone_distance(&x, &k, NormTag::Linf, DistanceMode::DualFormula).unwrap();
        assert_eq!(dual.value, q(2));
        // The witness functional lives in K⁺ ∩ the dual ball and attains -f(x) = 2.
        assert!(k.dual_cone().contains(&dual.witness).unwrap());
        assert!(dual.witness.norm_l1() <= q(1));
        assert_eq!(-dual.witness.dot(&x), q(2));
    }

    #[test]
    fn growing_negative_tail_distance() {
        // a^(3) = (9,9,9,-3,0,0) in R^6 has sup-norm distance 3 to the orthant.
        let k = RationalCone::orthant(6);
        let x = v(&[9, 9, 9, -3, 0, 0]);
        for mode in [DistanceMode::PrimalLp, DistanceMode::DualFormula] {
            let d = cone_distance(&x, &k, NormTag::Linf, mode).unwrap();
            assert_eq!(d.value, q(3));
        }
    }

    #[test]
    fn l2_is_rejected() {
        let k = RationalCone::orthant(2);
        let err = cone_distance(&v(&[1, 1]), &k, NormTag::L2Approx, DistanceMode::PrimalLp);
        assert!(matches!(err, Err(Error::UnsupportedNorm(_))));
    }

    #[test]
    fn distance_to_zero_cone_is_the_norm() {
        let k = RationalCone::zero(2);
        let x = v(&[3, -4]);
        let linf = cone_distance(&x, &k, NormTag::Linf, DistanceMode::PrimalLp).unwrap();
        assert_eq!(linf.value, q(4));
        let l1 = cone_distance(&x, &k, NormTag::L1, DistanceMode::DualFormula).unwrap();
        assert_eq!(l1.value, q(7));
    }
}
