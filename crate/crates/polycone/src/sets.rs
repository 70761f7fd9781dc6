//! Conic sets and their analysis.
//!
//! A [`ConicSet`] stores data `A` together with an ambient cone `K` and
//! *denotes* the conic inflation `Ã = cl conv(A + K)`. The inflation is never
//! materialized: every predicate is phrased at generator level, where the
//! closure and convex hull come for free, and decided by exact LPs.
//!
//! Three representations are supported: finite generator sets, H-polyhedra
//! `{x : n·x ≥ b}`, and truncated sequence families. The first two admit
//! exact decisions; families are analyzed by sampling windows and their
//! verdicts carry an explicit heuristic flag.

use crate::cones::{cone_distance, DistanceMode, PolyhedralCone};
use crate::error::{Error, Result};
use crate::kernel::lp::{LinearConstraint, LinearProgram, LpOutcome};
use crate::kernel::NormTag;
use crate::scalar::Scalar;
use crate::vector::{canonicalize_rays, RVector};

/// A value that is either finite or `-∞` (infima of unbounded-below images).
#[derive(Clone, Debug, PartialEq)]
pub enum InfValue<T> {
    MinusInfinity,
    Finite(T),
}

impl<T: Scalar> InfValue<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, InfValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            InfValue::Finite(v) => Some(v),
            InfValue::MinusInfinity => None,
        }
    }
}

/// A value that is either finite or `+∞` (excesses and Hausdorff distances).
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    PlusInfinity,
}

impl<T: Scalar> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::PlusInfinity => None,
        }
    }
}

/// Behaviour of a sampled quantity across truncation windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowTrend {
    Stable,
    Diverging,
}

/// The inf-support value `m_A(f) = inf f(A)` with its certificate.
#[derive(Clone, Debug)]
pub struct MValue<T> {
    pub value: InfValue<T>,
    /// Whether the infimum is attained by `argmin`.
    pub attained: bool,
    pub argmin: Option<RVector<T>>,
    /// Window comparison for sequence families, `None` otherwise.
    pub trend: Option<WindowTrend>,
}

/// Underlying data of a conic set.
#[derive(Clone, Debug)]
pub enum SetRep<T> {
    /// A finite point list.
    FiniteGen { points: Vec<RVector<T>> },
    /// `{x : normals[i] · x ≥ offsets[i]}`, certified nonempty.
    HPolyhedron { normals: Vec<RVector<T>>, offsets: Vec<T> },
    /// A truncated sequence `a^(1), ..., a^(N)`; `growth` is a free-form label
    /// documenting the intended rule.
    SequenceFamily { table: Vec<RVector<T>>, growth: String },
}

/// A set `A` paired with an ambient cone `K`, denoting `Ã = cl conv(A + K)`.
#[derive(Clone, Debug)]
pub struct ConicSet<T> {
    ambient: PolyhedralCone<T>,
    rep: SetRep<T>,
}

impl<T: Scalar> ConicSet<T> {
    /// A finitely generated conic set. The point list must be nonempty.
    pub fn finite(points: Vec<RVector<T>>, ambient: PolyhedralCone<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::MalformedInput("empty generator point list".into()));
        }
        for p in &points {
            p.check_dim(ambient.dim())?;
        }
        Ok(ConicSet { ambient, rep: SetRep::FiniteGen { points } })
    }

    /// The neutral representation `({0}, K)`, denoting `K` itself.
    pub fn zero_point(ambient: PolyhedralCone<T>) -> Self {
        let dim = ambient.dim();
        Self::finite(vec![RVector::zero(dim)], ambient).expect("origin is well formed")
    }

    /// An H-polyhedron `{x : n·x ≥ b}`; emptiness is rejected by one
    /// feasibility LP at construction.
    pub fn hpolyhedron(
        normals: Vec<RVector<T>>,
        offsets: Vec<T>,
        ambient: PolyhedralCone<T>,
    ) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(Error::MalformedInput(format!(
                "{} normals with {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        for n in &normals {
            n.check_dim(ambient.dim())?;
        }
        let mut lp = LinearProgram::minimize(RVector::zero(ambient.dim()));
        lp.set_all_free();
        for (n, b) in normals.iter().zip(offsets.iter()) {
            lp.push(LinearConstraint::ge(n.clone(), b.clone()));
        }
        if !lp.solve()?.is_feasible() {
            return Err(Error::MalformedInput("empty polyhedron".into()));
        }
        Ok(ConicSet { ambient, rep: SetRep::HPolyhedron { normals, offsets } })
    }

    /// A truncated sequence family.
    pub fn family(
        table: Vec<RVector<T>>,
        growth: impl Into<String>,
        ambient: PolyhedralCone<T>,
    ) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::MalformedInput("empty family table".into()));
        }
        for p in &table {
            p.check_dim(ambient.dim())?;
        }
        Ok(ConicSet { ambient, rep: SetRep::SequenceFamily { table, growth: growth.into() } })
    }

    pub fn ambient(&self) -> &PolyhedralCone<T> {
        &self.ambient
    }

    pub fn rep(&self) -> &SetRep<T> {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    /// Scales the set by a nonnegative factor (`0` collapses to `({0}, K)`).
    pub fn scale_nonneg(&self, factor: &T) -> Result<Self> {
        if factor.is_negative() {
            return Err(Error::InvalidArgument("negative scale factor".into()));
        }
        if factor.is_zero() {
            return Ok(Self::zero_point(self.ambient.clone()));
        }
        let rep = match &self.rep {
            SetRep::FiniteGen { points } => SetRep::FiniteGen {
                points: points.iter().map(|p| p.scale(factor)).collect(),
            },
            SetRep::HPolyhedron { normals, offsets } => SetRep::HPolyhedron {
                normals: normals.clone(),
                offsets: offsets.iter().map(|b| b.clone() * factor.clone()).collect(),
            },
            SetRep::SequenceFamily { table, growth } => SetRep::SequenceFamily {
                table: table.iter().map(|p| p.scale(factor)).collect(),
                growth: growth.clone(),
            },
        };
        Ok(ConicSet { ambient: self.ambient.clone(), rep })
    }
}

/// Vertex/ray decomposition of a polyhedral conic set: the denoted set equals
/// `conv(points) + cone(rays)`. Families have no V-form.
#[derive(Clone, Debug)]
pub(crate) struct VForm<T> {
    pub points: Vec<RVector<T>>,
    pub rays: Vec<RVector<T>>,
}

pub(crate) fn vform<T: Scalar>(set: &ConicSet<T>) -> Result<VForm<T>> {
    let dim = set.dim();
    match set.rep() {
        SetRep::FiniteGen { points } => Ok(VForm {
            points: points.clone(),
            rays: set.ambient().generators().to_vec(),
        }),
        SetRep::HPolyhedron { normals, offsets } => {
            // Homogenize: {(x, t) : Nx - bt ≥ 0, t ≥ 0}; generators with
            // positive last coordinate are vertices, the rest recession rays.
            let mut hnormals: Vec<RVector<T>> = normals
                .iter()
                .zip(offsets.iter())
                .map(|(n, b)| {
                    let mut coords = n.coords().to_vec();
                    coords.push(-b.clone());
                    RVector::new(coords)
                })
                .collect();
            hnormals.push(RVector::unit(dim + 1, dim));
            let gens = crate::kernel::dual_description(&hnormals, dim + 1)?;
            let mut points = Vec::new();
            let mut rays = set.ambient().generators().to_vec();
            for g in gens {
                let t = g[dim].clone();
                let coords: Vec<T> = g.coords()[..dim].to_vec();
                if t.is_zero() {
                    rays.push(RVector::new(coords));
                } else {
                    let inv = T::one() / t;
                    points.push(RVector::new(
                        coords.into_iter().map(|c| c * inv.clone()).collect(),
                    ));
                }
            }
            assert!(!points.is_empty(), "nonempty polyhedron yields a vertex");
            Ok(VForm { points, rays: canonicalize_rays(rays) })
        }
        SetRep::SequenceFamily { .. } => Err(Error::UnsupportedVariant(
            "sequence families are analyzed by sampling, not as polyhedra",
        )),
    }
}

/// Membership `p ∈ conv(points) + cone(rays)` by one feasibility LP.
pub(crate) fn vform_contains<T: Scalar>(vf: &VForm<T>, p: &RVector<T>) -> Result<bool> {
    let dim = p.dim();
    let np = vf.points.len();
    let nr = vf.rays.len();
    let nvars = np + nr;
    let mut lp = LinearProgram::minimize(RVector::zero(nvars));
    // Convex weights sum to one.
    let mut conv_row = vec![T::zero(); nvars];
    for c in conv_row.iter_mut().take(np) {
        *c = T::one();
    }
    lp.push(LinearConstraint::eq(RVector::new(conv_row), T::one()));
    for i in 0..dim {
        let mut coeffs = Vec::with_capacity(nvars);
        coeffs.extend(vf.points.iter().map(|q| q[i].clone()));
        coeffs.extend(vf.rays.iter().map(|r| r[i].clone()));
        lp.push(LinearConstraint::eq(RVector::new(coeffs), p[i].clone()));
    }
    Ok(lp.solve()?.is_feasible())
}

/// Distance from `p` to `conv(points) + cone(rays)` under a polyhedral norm.
pub(crate) fn distance_to_vform<T: Scalar>(
    p: &RVector<T>,
    vf: &VForm<T>,
    norm: NormTag,
) -> Result<T> {
    if !norm.is_exact() {
        return Err(Error::UnsupportedNorm(
            "polyhedral set distances are exact-norm only",
        ));
    }
    let dim = p.dim();
    let np = vf.points.len();
    let nr = vf.rays.len();
    let num_t = if norm == NormTag::Linf { 1 } else { dim };
    let nvars = np + nr + num_t;

    let mut objective = vec![T::zero(); nvars];
    for obj in objective.iter_mut().skip(np + nr) {
        *obj = T::one();
    }
    let mut lp = LinearProgram::minimize(RVector::new(objective));

    let mut conv_row = vec![T::zero(); nvars];
    for c in conv_row.iter_mut().take(np) {
        *c = T::one();
    }
    lp.push(LinearConstraint::eq(RVector::new(conv_row), T::one()));

    // ±((conv + cone)_i - p_i) ≤ t
    for i in 0..dim {
        let t_col = np + nr + if num_t == 1 { 0 } else { i };
        for sign in [1i64, -1] {
            let s = T::from_int(sign);
            let mut coeffs = Vec::with_capacity(nvars);
            coeffs.extend(vf.points.iter().map(|q| q[i].clone() * s.clone()));
            coeffs.extend(vf.rays.iter().map(|r| r[i].clone() * s.clone()));
            coeffs.resize(nvars, T::zero());
            coeffs[t_col] = -T::one();
            lp.push(LinearConstraint::le(
                RVector::new(coeffs),
                p[i].clone() * s.clone(),
            ));
        }
    }
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => unreachable!("set distance LP is feasible and bounded, got {other:?}"),
    }
}

/// `m_A(f) = inf f(Ã)`: `-∞` off the dual cone, otherwise the infimum over
/// the data (the `+K` part contributes nothing on `K⁺`).
pub fn m_value<T: Scalar>(set: &ConicSet<T>, f: &RVector<T>) -> Result<MValue<T>> {
    f.check_dim(set.dim())?;
    if !set.ambient().dual_cone().contains(f)? {
        return Ok(MValue {
            value: InfValue::MinusInfinity,
            attained: false,
            argmin: None,
            trend: None,
        });
    }
    match set.rep() {
        SetRep::FiniteGen { points } => {
            let (argmin, value) = min_by_dot(points, f);
            Ok(MValue {
                value: InfValue::Finite(value),
                attained: true,
                argmin: Some(argmin),
                trend: None,
            })
        }
        SetRep::HPolyhedron { normals, offsets } => {
            let mut lp = LinearProgram::minimize(f.clone());
            lp.set_all_free();
            for (n, b) in normals.iter().zip(offsets.iter()) {
                lp.push(LinearConstraint::ge(n.clone(), b.clone()));
            }
            match lp.solve()? {
                LpOutcome::Optimal { value, point } => Ok(MValue {
                    value: InfValue::Finite(value),
                    attained: true,
                    argmin: Some(point),
                    trend: None,
                }),
                LpOutcome::Unbounded { .. } => Ok(MValue {
                    value: InfValue::MinusInfinity,
                    attained: false,
                    argmin: None,
                    trend: None,
                }),
                LpOutcome::Infeasible => {
                    unreachable!("nonemptiness is certified at construction")
                }
            }
        }
        SetRep::SequenceFamily { table, .. } => {
            let (argmin, value) = min_by_dot(table, f);
            let half = (table.len() / 2).max(1);
            let (_, half_min) = min_by_dot(&table[..half], f);
            let trend = diverging_window(neg_part(&half_min), neg_part(&value), table.len());
            Ok(MValue {
                value: InfValue::Finite(value),
                attained: true,
                argmin: Some(argmin),
                trend: Some(trend),
            })
        }
    }
}

fn min_by_dot<T: Scalar>(points: &[RVector<T>], f: &RVector<T>) -> (RVector<T>, T) {
    let mut best: Option<(RVector<T>, T)> = None;
    for p in points {
        let v = f.dot(p);
        let replace = match &best {
            None => true,
            Some((_, bv)) => v.cmp_total(bv) == std::cmp::Ordering::Less,
        };
        if replace {
            best = Some((p.clone(), v));
        }
    }
    best.expect("nonempty point list")
}

fn neg_part<T: Scalar>(v: &T) -> T {
    if v.is_negative() {
        -v.clone()
    } else {
        T::zero()
    }
}

/// Window heuristic shared by the family analyses: a sampled magnitude counts
/// as diverging when the table is long enough (≥ 32 entries) and the
/// full-window magnitude exceeds the half-window magnitude by a factor of at
/// least 3/2.
fn diverging_window<T: Scalar>(half: T, full: T, table_len: usize) -> WindowTrend {
    if table_len >= 32
        && half.is_positive()
        && full * T::from_int(2) >= half * T::from_int(3)
    {
        WindowTrend::Diverging
    } else {
        WindowTrend::Stable
    }
}

/// The excess `e(f(A), f(K)) = sup_{a ∈ A} d(f(a), f(K))` of the scalar
/// images, by case analysis on where `f` sits relative to `K⁺` and `K⁻`.
/// Finite for every `f` exactly when the set is dually cone-bounded.
pub fn excess_on_functional<T: Scalar>(
    set: &ConicSet<T>,
    f: &RVector<T>,
) -> Result<ExtendedReal<T>> {
    f.check_dim(set.dim())?;
    let dual = set.ambient().dual_cone();
    let in_plus = dual.contains(f)?;
    let in_minus = dual.contains(&(-f))?;

    let lower_gap = |g: &RVector<T>| -> Result<ExtendedReal<T>> {
        // max(0, -inf g(A)).
        Ok(match m_value(set, g)?.value {
            InfValue::MinusInfinity => ExtendedReal::PlusInfinity,
            InfValue::Finite(m) => ExtendedReal::Finite(neg_part(&m)),
        })
    };

    match (in_plus, in_minus) {
        // f(K) = ℝ: every image point is at distance zero.
        (false, false) => Ok(ExtendedReal::Finite(T::zero())),
        // f(K) = [0, ∞): only values below zero contribute.
        (true, false) => lower_gap(f),
        // f(K) = (-∞, 0]: mirror image.
        (false, true) => lower_gap(&(-f)),
        // f ⊥ K, so f(K) = {0} and the excess is sup |f(A)|.
        (true, true) => {
            let down = m_value(set, f)?.value;
            let up = m_value(set, &(-f))?.value;
            match (down, up) {
                (InfValue::Finite(lo), InfValue::Finite(hi)) => {
                    let a = -lo;
                    let b = -hi;
                    Ok(ExtendedReal::Finite(
                        if a.cmp_total(&b) == std::cmp::Ordering::Less { b } else { a },
                    ))
                }
                _ => Ok(ExtendedReal::PlusInfinity),
            }
        }
    }
}

/// The recession cone of `Ã`. Since `Ã + K = Ã`, the ambient cone is always
/// included: finite data recedes exactly along `K`, and an H-polyhedron adds
/// its own homogenized directions.
pub fn recession_cone_of<T: Scalar>(set: &ConicSet<T>) -> Result<PolyhedralCone<T>> {
    match set.rep() {
        SetRep::FiniteGen { .. } | SetRep::SequenceFamily { .. } => Ok(set.ambient().clone()),
        SetRep::HPolyhedron { normals, .. } => {
            let own = PolyhedralCone::from_inequalities(normals.clone(), set.dim())?;
            own.hull_with(set.ambient().generators())
        }
    }
}

/// The barrier cone `bar Ã = {f : sup f(Ã) < ∞}`, which for polyhedral data
/// is exactly the negative polar of the recession cone.
pub fn barrier_cone_of<T: Scalar>(set: &ConicSet<T>) -> Result<PolyhedralCone<T>> {
    if matches!(set.rep(), SetRep::SequenceFamily { .. }) {
        return Err(Error::UnsupportedVariant(
            "barrier cones of sequence families are not finitely computable",
        ));
    }
    Ok(recession_cone_of(set)?.dual_cone().negated())
}

/// Decides `Ã₁ ⊆ Ã₂` exactly for polyhedral variants: every vertex of the
/// first lies in the second (one LP each) and the recession cones nest.
pub fn set_includes<T: Scalar>(s1: &ConicSet<T>, s2: &ConicSet<T>) -> Result<bool> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch { expected: s2.dim(), found: s1.dim() });
    }
    let rec1 = recession_cone_of(s1)?;
    let rec2 = recession_cone_of(s2)?;
    if !rec1.subset_of(&rec2)? {
        return Ok(false);
    }
    let vf1 = vform(s1)?;
    let vf2 = vform(s2)?;
    for p in &vf1.points {
        if !vform_contains(&vf2, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sum `Ã₁ ⊕ Ã₂ = (A₁ + A₂)~` for finitely generated sets: pairwise
/// point sums followed by irredundancy pruning (a point is dropped exactly
/// when it lies in the inflation of the remaining ones).
pub fn minkowski_add<T: Scalar>(s1: &ConicSet<T>, s2: &ConicSet<T>) -> Result<ConicSet<T>> {
    if s1.ambient() != s2.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let (SetRep::FiniteGen { points: p1 }, SetRep::FiniteGen { points: p2 }) =
        (s1.rep(), s2.rep())
    else {
        return Err(Error::UnsupportedVariant(
            "Minkowski sums are defined on finitely generated sets",
        ));
    };
    let mut sums: Vec<RVector<T>> = Vec::with_capacity(p1.len() * p2.len());
    for a in p1 {
        for b in p2 {
            sums.push(a + b);
        }
    }
    sums.sort_by(|a, b| a.cmp_lex(b));
    sums.dedup();
    let pruned = prune_redundant_points(sums, s1.ambient())?;
    ConicSet::finite(pruned, s1.ambient().clone())
}

/// Removes points lying in the inflation of the others; the surviving list
/// generates the same inflation and is irredundant.
pub(crate) fn prune_redundant_points<T: Scalar>(
    points: Vec<RVector<T>>,
    ambient: &PolyhedralCone<T>,
) -> Result<Vec<RVector<T>>> {
    let rays = ambient.generators().to_vec();
    let mut kept = points;
    let mut i = 0;
    while i < kept.len() {
        if kept.len() == 1 {
            break;
        }
        let candidate = kept.remove(i);
        let vf = VForm { points: kept.clone(), rays: rays.clone() };
        if vform_contains(&vf, &candidate)? {
            // Redundant: stays removed, index unchanged.
        } else {
            kept.insert(i, candidate);
            i += 1;
        }
    }
    Ok(kept)
}

/// A distance sequence certifying that a family escapes every `ℓ D + K`.
#[derive(Clone, Debug)]
pub struct DistanceDivergence<T> {
    pub indices: Vec<usize>,
    pub distances: Vec<T>,
}

/// Per-probe lower bound on the image of the set.
#[derive(Clone, Debug)]
pub struct ProbeBound<T> {
    pub probe: RVector<T>,
    pub lower_bound: InfValue<T>,
}

/// A probe whose image values drop without bound.
#[derive(Clone, Debug)]
pub struct ProbeDivergence<T> {
    pub probe: RVector<T>,
    pub values: Vec<T>,
}

/// Classification of a conic set against the boundedness hierarchy, each flag
/// carrying a certificate or a witness.
#[derive(Clone, Debug)]
pub struct BoundednessReport<T> {
    /// `A ⊆ ℓ D + K` for some finite `ℓ` (norm boundedness relative to `K`).
    pub k_bounded: bool,
    /// The certificate `ℓ` (max sup-norm distance to `K`) when `k_bounded`.
    pub k_bound_radius: Option<T>,
    pub k_divergence: Option<DistanceDivergence<T>>,
    /// Every functional of `K⁺` is bounded below on the set.
    pub dually_bounded: bool,
    pub probe_bounds: Vec<ProbeBound<T>>,
    pub dual_divergence: Option<ProbeDivergence<T>>,
    /// `Ã` sits inside a ball plus its own recession cone.
    pub hyperbolic: bool,
    /// The barrier cone of `Ã` equals the negative polar of its recession cone.
    pub pseudo_hyperbolic: bool,
    /// `rec Ã = K`.
    pub rec_equals_ambient: bool,
    /// True when any flag rests on window sampling rather than an exact LP.
    pub heuristic: bool,
}

/// Classifies `set` against the boundedness hierarchy.
///
/// `probes` must lie in `K⁺`; an empty slice defaults to the generators of
/// `K⁺`, which suffice: any functional of `K⁺` is a nonnegative combination
/// of them and `m` is superadditive, so finiteness on the generators forces
/// finiteness everywhere.
pub fn classify_boundedness<T: Scalar>(
    set: &ConicSet<T>,
    probes: &[RVector<T>],
) -> Result<BoundednessReport<T>> {
    let dual = set.ambient().dual_cone();
    let probes: Vec<RVector<T>> = if probes.is_empty() {
        dual.generators().to_vec()
    } else {
        for p in probes {
            p.check_dim(set.dim())?;
            if !dual.contains(p)? {
                return Err(Error::InvalidProbe);
            }
        }
        probes.to_vec()
    };

    match set.rep() {
        SetRep::FiniteGen { .. } | SetRep::HPolyhedron { .. } => classify_polyhedral(set, &probes),
        SetRep::SequenceFamily { table, .. } => classify_family(set, table, &probes),
    }
}

fn classify_polyhedral<T: Scalar>(
    set: &ConicSet<T>,
    probes: &[RVector<T>],
) -> Result<BoundednessReport<T>> {
    let ambient = set.ambient();
    let rec = recession_cone_of(set)?;
    let rec_equals_ambient = rec == *ambient;
    let vf = vform(set)?;

    let mut radius = T::zero();
    for p in &vf.points {
        let d = cone_distance(p, ambient, NormTag::Linf, DistanceMode::PrimalLp)?;
        if d.value.cmp_total(&radius) == std::cmp::Ordering::Greater {
            radius = d.value;
        }
    }

    let (k_bounded, k_bound_radius, k_divergence) = if rec_equals_ambient {
        (true, Some(radius), None)
    } else {
        // Walk along a recession direction outside K; distances escape.
        let escape = rec
            .generators()
            .iter()
            .find(|r| !ambient.contains(r).expect("dimensions agree"))
            .cloned()
            .expect("unequal recession cone has an escaping generator");
        let base = &vf.points[0];
        let mut indices = Vec::new();
        let mut distances = Vec::new();
        for (i, t) in [1i64, 2, 4, 8].into_iter().enumerate() {
            let sample = base + &escape.scale(&T::from_int(t));
            let d = cone_distance(&sample, ambient, NormTag::Linf, DistanceMode::PrimalLp)?;
            indices.push(i + 1);
            distances.push(d.value);
        }
        (false, None, Some(DistanceDivergence { indices, distances }))
    };

    let mut probe_bounds = Vec::new();
    let mut dual_divergence = None;
    let mut dually_bounded = true;
    for probe in probes {
        let m = m_value(set, probe)?;
        if !m.value.is_finite() {
            dually_bounded = false;
            if dual_divergence.is_none() {
                dual_divergence = Some(ProbeDivergence {
                    probe: probe.clone(),
                    values: escaping_values(probe, &vf),
                });
            }
        }
        probe_bounds.push(ProbeBound { probe: probe.clone(), lower_bound: m.value });
    }

    // Polyhedral inflations are always hyperbolic (Motzkin decomposition into
    // vertices plus recession cone) and pseudo-hyperbolic (closed barrier).
    Ok(BoundednessReport {
        k_bounded,
        k_bound_radius,
        k_divergence,
        dually_bounded,
        probe_bounds,
        dual_divergence,
        hyperbolic: true,
        pseudo_hyperbolic: true,
        rec_equals_ambient,
        heuristic: false,
    })
}

/// Sample values of `probe` along a recession direction that drives them down.
fn escaping_values<T: Scalar>(probe: &RVector<T>, vf: &VForm<T>) -> Vec<T> {
    let ray = vf
        .rays
        .iter()
        .find(|r| probe.dot(r).is_negative())
        .cloned()
        .expect("an unbounded image has a negative recession direction");
    let base = &vf.points[0];
    [1i64, 2, 4, 8]
        .into_iter()
        .map(|t| probe.dot(&(base + &ray.scale(&T::from_int(t)))))
        .collect()
}

fn classify_family<T: Scalar>(
    set: &ConicSet<T>,
    table: &[RVector<T>],
    probes: &[RVector<T>],
) -> Result<BoundednessReport<T>> {
    let ambient = set.ambient();
    let half = (table.len() / 2).max(1);

    let mut distances = Vec::with_capacity(table.len());
    for entry in table {
        distances
            .push(cone_distance(entry, ambient, NormTag::Linf, DistanceMode::PrimalLp)?.value);
    }
    let max_of = |slice: &[T]| -> T {
        let mut best = T::zero();
        for v in slice {
            if v.cmp_total(&best) == std::cmp::Ordering::Greater {
                best = v.clone();
            }
        }
        best
    };
    let dist_trend =
        diverging_window(max_of(&distances[..half]), max_of(&distances), table.len());
    let mut k_bounded = dist_trend == WindowTrend::Stable;
    let k_divergence = if k_bounded {
        None
    } else {
        Some(DistanceDivergence {
            indices: (1..=table.len()).collect(),
            distances: distances.clone(),
        })
    };

    let mut dually_bounded = true;
    let mut probe_bounds = Vec::new();
    let mut dual_divergence = None;
    for probe in probes {
        let m = m_value(set, probe)?;
        if m.trend == Some(WindowTrend::Diverging) {
            dually_bounded = false;
            if dual_divergence.is_none() {
                dual_divergence = Some(ProbeDivergence {
                    probe: probe.clone(),
                    values: table.iter().map(|a| probe.dot(a)).collect(),
                });
            }
        }
        probe_bounds.push(ProbeBound { probe: probe.clone(), lower_bound: m.value });
    }

    // Keep the reported flags consistent with the implication chain
    // k-bounded ⇒ dually bounded ⇒ (rec = K and pseudo-hyperbolic), and
    // k-bounded ⇔ (rec = K and hyperbolic).
    if !dually_bounded {
        k_bounded = false;
    }

    Ok(BoundednessReport {
        k_bounded,
        k_bound_radius: if k_bounded { Some(max_of(&distances)) } else { None },
        k_divergence,
        dually_bounded,
        probe_bounds,
        dual_divergence,
        hyperbolic: k_bounded,
        pseudo_hyperbolic: dually_bounded,
        rec_equals_ambient: dually_bounded,
        heuristic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, RationalCone, RationalVector};

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn orthant2() -> RationalCone {
        RationalCone::orthant(2)
    }

    fn finite(points: &[&[i64]], k: RationalCone) -> ConicSet<Rational> {
        ConicSet::finite(points.iter().map(|p| v(p)).collect(), k).unwrap()
    }

    #[test]
    fn m_value_at_origin() {
        let s = finite(&[&[0, 0]], orthant2());
        let m = m_value(&s, &v(&[1, 1])).unwrap();
        assert_eq!(m.value, InfValue::Finite(q(0, 1)));
        assert!(m.attained);
        assert_eq!(m.argmin.unwrap(), v(&[0, 0]));
    }

    #[test]
    fn m_value_on_hyperbola_samples() {
        // {(t, 1/t) : t = 2^j, j = -10..10}; at f = (1,1) the minimum is 2.
        let points: Vec<RationalVector> = (-10i32..=10)
            .map(|j| {
                let t = if j >= 0 { q(1i64 << j, 1) } else { q(1, 1i64 << (-j)) };
                RationalVector::new(vec![t.clone(), q(1, 1) / t])
            })
            .collect();
        let s = ConicSet::finite(points, orthant2()).unwrap();
        let m = m_value(&s, &v(&[1, 1])).unwrap();
        assert_eq!(m.value, InfValue::Finite(q(2, 1)));
        assert_eq!(m.argmin.unwrap(), v(&[1, 1]));
    }

    #[test]
    fn m_value_off_dual_cone_is_minus_infinity() {
        let s = finite(&[&[1, 0]], orthant2());
        let m = m_value(&s, &v(&[-1, 0])).unwrap();
        assert_eq!(m.value, InfValue::MinusInfinity);
        assert!(!m.attained);
    }

    #[test]
    fn excess_cases() {
        let k = orthant2();
        let inside = finite(&[&[1, 1]], k.clone());
        assert_eq!(
            excess_on_functional(&inside, &v(&[1, 0])).unwrap(),
            ExtendedReal::Finite(q(0, 1))
        );
        let below = finite(&[&[-3, 0]], k.clone());
        assert_eq!(
            excess_on_functional(&below, &v(&[1, 0])).unwrap(),
            ExtendedReal::Finite(q(3, 1))
        );
        let anywhere = finite(&[&[5, 5]], k.clone());
        assert_eq!(
            excess_on_functional(&anywhere, &v(&[1, -2])).unwrap(),
            ExtendedReal::Finite(q(0, 1))
        );
        // f in K⁻: mirror of the second case.
        assert_eq!(
            excess_on_functional(&anywhere, &v(&[-1, 0])).unwrap(),
            ExtendedReal::Finite(q(5, 1))
        );
    }

    #[test]
    fn excess_orthogonal_functional_on_a_ray_cone() {
        // K = cone{e1}: f = (0,1) is orthogonal to K, so f(K) = {0} and the
        // excess is sup |f(A)|.
        let k = RationalCone::from_generators(vec![v(&[1, 0])], 2).unwrap();
        let s = ConicSet::finite(vec![v(&[0, 5])], k).unwrap();
        assert_eq!(
            excess_on_functional(&s, &v(&[0, 1])).unwrap(),
            ExtendedReal::Finite(q(5, 1))
        );
    }

    #[test]
    fn recession_of_finite_data_is_ambient() {
        let s = finite(&[&[7, -7]], orthant2());
        assert_eq!(recession_cone_of(&s).unwrap(), orthant2());
    }

    #[test]
    fn recession_of_hpolyhedron_drops_offsets_and_keeps_ambient() {
        // {x1 >= 1, x2 >= -2} over the orthant recedes along the orthant.
        let s = ConicSet::hpolyhedron(
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![q(1, 1), q(-2, 1)],
            orthant2(),
        )
        .unwrap();
        assert_eq!(recession_cone_of(&s).unwrap(), orthant2());

        // {x1 + x2 >= 0} is already homogeneous and strictly contains the
        // orthant, so the recession cone is the halfplane itself.
        let hp = ConicSet::hpolyhedron(vec![v(&[1, 1])], vec![q(0, 1)], orthant2()).unwrap();
        let halfplane = RationalCone::from_inequalities(vec![v(&[1, 1])], 2).unwrap();
        assert_eq!(recession_cone_of(&hp).unwrap(), halfplane);
    }

    #[test]
    fn barrier_cones() {
        let s = finite(&[&[0, 0]], orthant2());
        let expected =
            RationalCone::from_generators(vec![v(&[-1, 0]), v(&[0, -1])], 2).unwrap();
        assert_eq!(barrier_cone_of(&s).unwrap(), expected);

        // Half-plane polyhedron {x1 >= 0} over the orthant: the barrier is
        // the ray of nonpositive multiples of e1.
        let hp = ConicSet::hpolyhedron(vec![v(&[1, 0])], vec![q(0, 1)], orthant2()).unwrap();
        let ray = RationalCone::from_generators(vec![v(&[-1, 0])], 2).unwrap();
        assert_eq!(barrier_cone_of(&hp).unwrap(), ray);

        // Full space: only the zero functional is bounded above.
        let full_ambient = RationalCone::full_space(2);
        let full = ConicSet::hpolyhedron(Vec::new(), Vec::new(), full_ambient).unwrap();
        assert_eq!(barrier_cone_of(&full).unwrap(), RationalCone::zero(2));
    }

    #[test]
    fn inclusion_examples() {
        let k = orthant2();
        let s22 = finite(&[&[2, 2]], k.clone());
        let s11 = finite(&[&[1, 1]], k.clone());
        let s00 = finite(&[&[0, 0]], k.clone());
        let axes = finite(&[&[1, 0], &[0, 1]], k.clone());
        assert!(set_includes(&s22, &s11).unwrap());
        assert!(!set_includes(&s00, &s11).unwrap());
        assert!(set_includes(&axes, &s00).unwrap());
    }

    #[test]
    fn inclusion_with_hpolyhedron() {
        let k = orthant2();
        // {x : x1 + x2 >= 2, x >= 0} sits inside ({(1,1)}, K)~ but not
        // conversely; and everything sits inside the upper halfplane slab.
        let p = ConicSet::hpolyhedron(
            vec![v(&[1, 1]), v(&[1, 0]), v(&[0, 1])],
            vec![q(2, 1), q(0, 1), q(0, 1)],
            k.clone(),
        )
        .unwrap();
        let s = finite(&[&[1, 1]], k.clone());
        assert!(set_includes(&p, &s).unwrap());
        assert!(!set_includes(&s, &p).unwrap());
        let slab = ConicSet::hpolyhedron(vec![v(&[0, 1])], vec![q(0, 1)], k.clone()).unwrap();
        assert!(set_includes(&s, &slab).unwrap());
    }

    #[test]
    fn minkowski_add_examples() {
        let k = orthant2();
        let a = finite(&[&[1, 0]], k.clone());
        let b = finite(&[&[0, 1]], k.clone());
        let sum = minkowski_add(&a, &b).unwrap();
        let SetRep::FiniteGen { points } = sum.rep() else { panic!() };
        assert_eq!(points, &vec![v(&[1, 1])]);

        // Neutral element.
        let zero = ConicSet::zero_point(k.clone());
        let same = minkowski_add(&a, &zero).unwrap();
        assert!(set_includes(&same, &a).unwrap() && set_includes(&a, &same).unwrap());

        // Cross sums: the midpoint (1,1) of (2,0) and (0,2) is pruned as
        // redundant, and the inflation is unchanged.
        let diag = finite(&[&[1, 0], &[0, 1]], k.clone());
        let doubled = minkowski_add(&diag, &diag).unwrap();
        let SetRep::FiniteGen { points } = doubled.rep() else { panic!() };
        assert_eq!(points, &vec![v(&[0, 2]), v(&[2, 0])]);
        let with_mid = finite(&[&[2, 0], &[1, 1], &[0, 2]], k.clone());
        assert!(set_includes(&doubled, &with_mid).unwrap());
        assert!(set_includes(&with_mid, &doubled).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = finite(&[&[1, 0]], orthant2());
        let other = RationalCone::from_generators(vec![v(&[1, 1])], 2).unwrap();
        let b = ConicSet::finite(vec![v(&[0, 1])], other).unwrap();
        assert!(matches!(minkowski_add(&a, &b), Err(Error::AmbientMismatch)));
    }

    #[test]
    fn classify_finite_set_inside_cone() {
        let s = finite(&[&[1, 0], &[0, 1]], orthant2());
        let report = classify_boundedness(&s, &[]).unwrap();
        assert!(report.k_bounded);
        assert_eq!(report.k_bound_radius, Some(q(0, 1)));
        assert!(report.dually_bounded);
        assert!(report.hyperbolic && report.pseudo_hyperbolic && report.rec_equals_ambient);
        assert!(!report.heuristic);
    }

    #[test]
    fn classify_halfplane_hpolyhedron_is_not_dually_bounded() {
        // {x2 >= 0} over the orthant: e1 drives the image to -infinity.
        let s = ConicSet::hpolyhedron(vec![v(&[0, 1])], vec![q(0, 1)], orthant2()).unwrap();
        let report = classify_boundedness(&s, &[]).unwrap();
        assert!(!report.k_bounded);
        assert!(!report.dually_bounded);
        assert!(!report.rec_equals_ambient);
        let div = report.dual_divergence.unwrap();
        assert!(div.values.windows(2).all(|w| w[1] < w[0]));
        let kdiv = report.k_divergence.unwrap();
        assert!(kdiv.distances.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn classify_family_unbounded_below() {
        // {-k e1 : k = 1..64} with probe e1: dually unbounded.
        let table: Vec<RationalVector> = (1..=64).map(|k| v(&[-k, 0])).collect();
        let s = ConicSet::family(table, "linear descent", orthant2()).unwrap();
        let report = classify_boundedness(&s, &[v(&[1, 0])]).unwrap();
        assert!(report.heuristic);
        assert!(!report.dually_bounded);
        assert!(!report.k_bounded);
        let div = report.dual_divergence.unwrap();
        assert_eq!(div.values.len(), 64);
        assert_eq!(div.values[63], q(-64, 1));
    }

    #[test]
    fn invalid_probe_is_rejected() {
        let s = finite(&[&[1, 1]], orthant2());
        assert!(matches!(
            classify_boundedness(&s, &[v(&[-1, 0])]),
            Err(Error::InvalidProbe)
        ));
    }

    #[test]
    fn scaling() {
        let s = finite(&[&[2, 4]], orthant2());
        let half = s.scale_nonneg(&q(1, 2)).unwrap();
        let SetRep::FiniteGen { points } = half.rep() else { panic!() };
        assert_eq!(points, &vec![v(&[1, 2])]);
        let zero = s.scale_nonneg(&q(0, 1)).unwrap();
        let SetRep::FiniteGen { points } = zero.rep() else { panic!() };
        assert_eq!(points, &vec![v(&[0, 0])]);
        assert!(s.scale_nonneg(&q(-1, 1)).is_err());
    }

    #[test]
    fn empty_hpolyhedron_is_rejected() {
        let bad = ConicSet::hpolyhedron(
            vec![v(&[1, 0]), v(&[-1, 0])],
            vec![q(1, 1), q(0, 1)],
            orthant2(),
        );
        assert!(matches!(bad, Err(Error::MalformedInput(_))));
    }
}
