//! Exact linear programming via the two-phase simplex method.
//!
//! The pivot rule is Bland's smallest-index rule, which guarantees
//! termination; over an exact scalar the solver is therefore a decision
//! procedure: `Optimal`, `Infeasible` and `Unbounded` are certified outcomes,
//! not numerical judgements. Witnesses (optimal point / unbounded ray) are
//! reported in the original variable space.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::RVector;

/// Row sense of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Per-variable domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    Free,
    NonNegative,
}

/// One constraint row `coeffs · x (≤|≥|=) rhs`.
#[derive(Clone, Debug)]
pub struct LinearConstraint<T> {
    pub coeffs: RVector<T>,
    pub sense: Sense,
    pub rhs: T,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn le(coeffs: RVector<T>, rhs: T) -> Self {
        LinearConstraint { coeffs, sense: Sense::Le, rhs }
    }

    pub fn ge(coeffs: RVector<T>, rhs: T) -> Self {
        LinearConstraint { coeffs, sense: Sense::Ge, rhs }
    }

    pub fn eq(coeffs: RVector<T>, rhs: T) -> Self {
        LinearConstraint { coeffs, sense: Sense::Eq, rhs }
    }
}

/// A minimization problem over finitely many linear constraints.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    objective: RVector<T>,
    constraints: Vec<LinearConstraint<T>>,
    bounds: Vec<VarBound>,
}

impl<T: Scalar> LinearProgram<T> {
    /// Starts `min objective · x` with all variables nonnegative.
    pub fn minimize(objective: RVector<T>) -> Self {
        let n = objective.dim();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBound::NonNegative; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn push(&mut self, constraint: LinearConstraint<T>) {
        self.constraints.push(constraint);
    }

    pub fn set_free(&mut self, var: usize) {
        self.bounds[var] = VarBound::Free;
    }

    pub fn set_all_free(&mut self) {
        self.bounds.fill(VarBound::Free);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::MalformedInput(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for c in &self.constraints {
            if c.coeffs.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.dim(),
                });
            }
        }
        Ok(())
    }

    /// Solves the program; see [`lp_solve`].
    pub fn solve(&self) -> Result<LpOutcome<T>> {
        lp_solve(self)
    }
}

/// Certified outcome of a linear program.
#[derive(Clone, Debug)]
pub enum LpOutcome<T> {
    /// Optimum attained at `point` with objective `value`.
    Optimal { value: T, point: RVector<T> },
    /// The constraint system has no solution.
    Infeasible,
    /// Feasible, with a recession direction of strictly decreasing objective.
    Unbounded { ray: RVector<T> },
}

impl<T: Scalar> LpOutcome<T> {
    /// Optimal value, or an error for the other outcomes.
    pub fn optimal_value(&self) -> Result<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => Err(Error::PreconditionViolated(
                "expected an optimal outcome, program is infeasible".into(),
            )),
            LpOutcome::Unbounded { .. } => Err(Error::PreconditionViolated(
                "expected an optimal outcome, program is unbounded".into(),
            )),
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// Solves `lp` exactly.
pub fn lp_solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>> {
    lp.validate()?;
    Ok(Simplex::new(lp).run())
}

/// Column bookkeeping: original variable `v` maps to `plus[v]` and, when
/// free, to a paired column `minus[v]` with `x_v = x_plus - x_minus`.
struct ColumnMap {
    plus: Vec<usize>,
    minus: Vec<Option<usize>>,
}

struct Simplex<'a, T> {
    lp: &'a LinearProgram<T>,
    cols: ColumnMap,
    /// Tableau rows; each has `ncols + 1` entries, the last being the rhs.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    ncols: usize,
    artificial_start: usize,
}

impl<'a, T: Scalar> Simplex<'a, T> {
    fn new(lp: &'a LinearProgram<T>) -> Self {
        let n = lp.num_vars();
        let mut plus = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        let mut ncols = 0;
        for b in &lp.bounds {
            plus.push(ncols);
            ncols += 1;
            match b {
                VarBound::Free => {
                    minus.push(Some(ncols));
                    ncols += 1;
                }
                VarBound::NonNegative => minus.push(None),
            }
        }
        let cols = ColumnMap { plus, minus };

        // Equality form with nonnegative rhs: Le rows gain a slack, Ge rows a
        // surplus; rows with negative rhs are negated afterwards.
        struct RowBuild<T> {
            dense: Vec<(usize, T)>,
            slack_sign: Option<i8>,
            rhs: T,
        }
        let mut builds: Vec<RowBuild<T>> = Vec::with_capacity(lp.constraints.len());
        for c in &lp.constraints {
            let mut dense: Vec<(usize, T)> = Vec::new();
            for (v, coeff) in c.coeffs.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                dense.push((cols.plus[v], coeff.clone()));
                if let Some(m) = cols.minus[v] {
                    dense.push((m, -coeff.clone()));
                }
            }
            let (slack_sign, mut rhs) = match c.sense {
                Sense::Le => (Some(1i8), c.rhs.clone()),
                Sense::Ge => (Some(-1i8), c.rhs.clone()),
                Sense::Eq => (None, c.rhs.clone()),
            };
            let mut slack_sign = slack_sign;
            let mut dense = dense;
            if rhs.is_negative() {
                rhs = -rhs;
                for (_, coeff) in dense.iter_mut() {
                    *coeff = -coeff.clone();
                }
                slack_sign = slack_sign.map(|s| -s);
            }
            builds.push(RowBuild { dense, slack_sign, rhs });
        }

        // Allocate slack columns.
        let mut slack_cols = Vec::with_capacity(builds.len());
        for b in &builds {
            if b.slack_sign.is_some() {
                slack_cols.push(Some(ncols));
                ncols += 1;
            } else {
                slack_cols.push(None);
            }
        }

        // Rows whose slack enters at +1 start basic on the slack; every other
        // row receives an artificial column.
        let artificial_start = ncols;
        let mut basis = Vec::with_capacity(builds.len());
        let mut artificial_cols = Vec::with_capacity(builds.len());
        for (i, b) in builds.iter().enumerate() {
            if b.slack_sign == Some(1) {
                basis.push(slack_cols[i].unwrap());
                artificial_cols.push(None);
            } else {
                artificial_cols.push(Some(ncols));
                basis.push(ncols);
                ncols += 1;
            }
        }

        let mut rows = Vec::with_capacity(builds.len());
        for (i, b) in builds.into_iter().enumerate() {
            let mut row = vec![T::zero(); ncols + 1];
            for (col, coeff) in b.dense {
                row[col] = row[col].clone() + coeff;
            }
            if let (Some(col), Some(sign)) = (slack_cols[i], b.slack_sign) {
                row[col] = if sign > 0 { T::one() } else { -T::one() };
            }
            if let Some(col) = artificial_cols[i] {
                row[col] = T::one();
            }
            row[ncols] = b.rhs;
            rows.push(row);
        }

        Simplex { lp, cols, rows, basis, ncols, artificial_start }
    }

    fn run(mut self) -> LpOutcome<T> {
        if self.artificial_start < self.ncols && !self.phase_one() {
            return LpOutcome::Infeasible;
        }
        self.phase_two()
    }

    /// Minimizes the sum of artificial variables. Returns false when the
    /// optimum is positive (original system infeasible).
    fn phase_one(&mut self) -> bool {
        let mut cost = vec![T::zero(); self.ncols + 1];
        for col in self.artificial_start..self.ncols {
            cost[col] = T::one();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.artificial_start {
                Self::subtract_row(&mut cost, &self.rows[i], &T::one());
            }
        }
        self.iterate(&mut cost, self.ncols);
        // cost[rhs] holds minus the phase-1 objective.
        if !(-cost[self.ncols].clone()).is_zero() {
            return false;
        }
        self.evict_artificials();
        true
    }

    /// Pivots zero-valued artificial variables out of the basis; rows that
    /// cannot be repaired are redundant and get dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.artificial_start {
                i += 1;
                continue;
            }
            let pivot_col = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero());
            match pivot_col {
                Some(j) => {
                    self.pivot_with_costs(i, j, &mut []);
                    i += 1;
                }
                None => {
                    self.rows.swap_remove(i);
                    self.basis.swap_remove(i);
                }
            }
        }
    }

    fn phase_two(mut self) -> LpOutcome<T> {
        // Reduced costs for the real objective, artificials banned.
        let mut cost = vec![T::zero(); self.ncols + 1];
        for (v, coeff) in self.lp.objective.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            cost[self.cols.plus[v]] = coeff.clone();
            if let Some(m) = self.cols.minus[v] {
                cost[m] = -coeff.clone();
            }
        }
        for i in 0..self.rows.len() {
            let c = cost[self.basis[i]].clone();
            if !c.is_zero() {
                Self::subtract_row(&mut cost, &self.rows[i], &c);
            }
        }
        match self.iterate(&mut cost, self.artificial_start) {
            Some(entering) => {
                // No positive pivot entry in the entering column: recession
                // direction with strictly decreasing objective.
                let mut dir = vec![T::zero(); self.ncols];
                dir[entering] = T::one();
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.artificial_start {
                        dir[b] = -self.rows[i][entering].clone();
                    }
                }
                LpOutcome::Unbounded { ray: self.assemble(&dir) }
            }
            None => {
                let mut std_point = vec![T::zero(); self.ncols];
                for (i, &b) in self.basis.iter().enumerate() {
                    std_point[b] = self.rows[i][self.ncols].clone();
                }
                let point = self.assemble(&std_point);
                let value = self.lp.objective.dot(&point);
                LpOutcome::Optimal { value, point }
            }
        }
    }

    /// Bland-rule simplex loop. Returns `Some(column)` when an entering
    /// column proves unboundedness, `None` at an optimum.
    fn iterate(&mut self, cost: &mut Vec<T>, col_limit: usize) -> Option<usize> {
        loop {
            let entering = (0..col_limit).find(|&j| cost[j].is_negative())?;
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let pivot_entry = &self.rows[i][entering];
                if !pivot_entry.is_positive() {
                    continue;
                }
                let ratio = self.rows[i][self.ncols].clone() / pivot_entry.clone();
                let better = match &leave {
                    None => true,
                    Some((best_i, best_ratio)) => match ratio.cmp_total(best_ratio) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => self.basis[i] < self.basis[*best_i],
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(entering),
                Some((row, _)) => {
                    self.pivot_with_costs(row, entering, &mut [&mut *cost]);
                }
            }
        }
    }

    fn pivot_with_costs(&mut self, prow: usize, pcol: usize, costs: &mut [&mut Vec<T>]) {
        let inv = T::one() / self.rows[prow][pcol].clone();
        if !(inv.clone() - T::one()).is_zero() {
            for entry in self.rows[prow].iter_mut() {
                if !entry.is_zero() {
                    *entry = entry.clone() * inv.clone();
                }
            }
        }
        // Touch only the pivot row's nonzero columns in every other row.
        let nz: Vec<usize> = (0..=self.ncols)
            .filter(|&j| !self.rows[prow][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[prow]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == prow {
                continue;
            }
            let factor = row[pcol].clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &nz {
                let delta = factor.clone() * pivot_row[j].clone();
                row[j] = row[j].clone() - delta;
            }
            row[pcol] = T::zero();
        }
        for cost in costs.iter_mut() {
            let factor = cost[pcol].clone();
            if !factor.is_zero() {
                for &j in &nz {
                    let delta = factor.clone() * pivot_row[j].clone();
                    cost[j] = cost[j].clone() - delta;
                }
                cost[pcol] = T::zero();
            }
        }
        self.rows[prow] = pivot_row;
        self.basis[prow] = pcol;
    }

    fn subtract_row(target: &mut [T], row: &[T], factor: &T) {
        for (t, r) in target.iter_mut().zip(row.iter()) {
            if !r.is_zero() {
                *t = t.clone() - factor.clone() * r.clone();
            }
        }
    }

    /// Maps a standard-form vector back to the original variables.
    fn assemble(&self, std_vals: &[T]) -> RVector<T> {
        let n = self.lp.num_vars();
        let mut coords = Vec::with_capacity(n);
        for v in 0..n {
            let mut val = std_vals[self.cols.plus[v]].clone();
            if let Some(m) = self.cols.minus[v] {
                val = val - std_vals[m].clone();
            }
            coords.push(val);
        }
        RVector::new(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::{Rational, RationalVector};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    #[test]
    fn nonnegativity_bound_alone() {
        // min x1 s.t. x1 >= 0
        let lp = LinearProgram::minimize(v(&[1]));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(0, 1));
                assert_eq!(point, v(&[0]));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn contradictory_constraints_are_infeasible() {
        // min x1 s.t. x1 <= -1, x1 >= 0
        let mut lp = LinearProgram::minimize(v(&[1]));
        lp.push(LinearConstraint::le(v(&[1]), q(-1, 1)));
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Infeasible));
    }

    #[test]
    fn free_descent_direction_is_unbounded() {
        // min -x1 s.t. x1 >= 0
        let lp = LinearProgram::minimize(v(&[-1]));
        match lp.solve().unwrap() {
            LpOutcome::Unbounded { ray } => assert_eq!(ray, v(&[1])),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn small_dense_program() {
        // min -x - y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::minimize(v(&[-1, -1]));
        lp.push(LinearConstraint::le(v(&[1, 2]), q(4, 1)));
        lp.push(LinearConstraint::le(v(&[3, 1]), q(6, 1)));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(point, RVector::new(vec![q(8, 5), q(6, 5)]));
                assert_eq!(value, q(-14, 5));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_free_variables() {
        // min x - y s.t. x + y = 2, x - y >= -4, x free, y free
        let mut lp = LinearProgram::minimize(v(&[1, -1]));
        lp.set_all_free();
        lp.push(LinearConstraint::eq(v(&[1, 1]), q(2, 1)));
        lp.push(LinearConstraint::ge(v(&[1, -1]), q(-4, 1)));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(-4, 1));
                assert_eq!(point, RVector::new(vec![q(-1, 1), q(3, 1)]));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_ray_respects_equalities() {
        // min -x - y s.t. x - y = 1
        let mut lp = LinearProgram::minimize(v(&[-1, -1]));
        lp.push(LinearConstraint::eq(v(&[1, -1]), q(1, 1)));
        match lp.solve().unwrap() {
            LpOutcome::Unbounded { ray } => {
                assert!(ray[0].is_positive() && ray[1].is_positive());
                assert_eq!(ray[0], ray[1]);
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        // x + y = 2 stated twice, plus its double.
        let mut lp = LinearProgram::minimize(v(&[1, 1]));
        lp.push(LinearConstraint::eq(v(&[1, 1]), q(2, 1)));
        lp.push(LinearConstraint::eq(v(&[1, 1]), q(2, 1)));
        lp.push(LinearConstraint::eq(v(&[2, 2]), q(4, 1)));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2, 1)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let mut lp = LinearProgram::minimize(v(&[1, 2]));
        lp.push(LinearConstraint::le(v(&[1]), q(0, 1)));
        assert!(matches!(
            lp.solve(),
            Err(crate::Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }
}
