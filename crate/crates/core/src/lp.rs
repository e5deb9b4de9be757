//! Dense two-phase primal simplex for the relaxations and fixed-assignment
//! timing subproblems.
//!
//! Variables carry finite lower bounds and optional upper bounds. Lower
//! bounds are shifted out, finite upper bounds become explicit rows and fixed
//! variables are substituted as constants before the tableau is built.

use crate::error::LpError;
use crate::model::{Domain, MilpModel, ObjectiveSense, Sense};

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub lower: Vec<f64>,
    /// `f64::INFINITY` when unbounded above.
    pub upper: Vec<f64>,
    pub rows: Vec<LpRow>,
    pub objective: Vec<(usize, f64)>,
    pub sense: ObjectiveSense,
}

impl LinearProgram {
    /// Program over `count` variables in `[0, inf)` with no rows.
    pub fn new(count: usize, sense: ObjectiveSense) -> Self {
        Self {
            lower: vec![0.0; count],
            upper: vec![f64::INFINITY; count],
            rows: Vec::new(),
            objective: Vec::new(),
            sense,
        }
    }

    pub fn var_count(&self) -> usize {
        self.lower.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        self.rows.push(LpRow { coeffs, sense, rhs });
    }

    pub fn validate(&self) -> Result<(), LpError> {
        self.validate_bounds(&self.lower, &self.upper)
    }

    fn validate_bounds(&self, lower: &[f64], upper: &[f64]) -> Result<(), LpError> {
        let count = self.var_count();
        if count == 0 {
            return Err(LpError::Empty);
        }
        if self.upper.len() != count || lower.len() != count || upper.len() != count {
            return Err(LpError::DimensionMismatch {
                row: 0,
                var: upper.len().max(lower.len()),
                count,
            });
        }
        for j in 0..count {
            if !lower[j].is_finite() || upper[j].is_nan() {
                return Err(LpError::NonFinite);
            }
            if lower[j] > upper[j] {
                return Err(LpError::InvertedBounds(j));
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            if !row.rhs.is_finite() {
                return Err(LpError::NonFinite);
            }
            for &(var, c) in &row.coeffs {
                if var >= count {
                    return Err(LpError::DimensionMismatch { row: r, var, count });
                }
                if !c.is_finite() {
                    return Err(LpError::NonFinite);
                }
            }
        }
        for &(var, c) in &self.objective {
            if var >= count {
                return Err(LpError::DimensionMismatch {
                    row: usize::MAX,
                    var,
                    count,
                });
            }
            if !c.is_finite() {
                return Err(LpError::NonFinite);
            }
        }
        Ok(())
    }

    /// Largest absolute row violation of `x`, including bound violations.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(j, c)| c * x[j]).sum();
            let v = match row.sense {
                Sense::Le => lhs - row.rhs,
                Sense::Ge => row.rhs - lhs,
                Sense::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (j, &xj) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - xj).max(xj - self.upper[j]);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, c)| c * x[j]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
    pub pivot_tol: f64,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub bland_after: usize,
    pub max_iterations: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-7,
            optimality_tol: 1e-9,
            pivot_tol: 1e-9,
            bland_after: 500,
            max_iterations: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Primal values; meaningful only when optimal.
    pub values: Vec<f64>,
    /// Objective in the program's own sense; meaningful only when optimal.
    pub objective: f64,
    pub iterations: usize,
}

/// Continuous relaxation: binaries relaxed to `[0, 1]`, rows and objective
/// copied verbatim.
pub fn relaxation_of(m: &MilpModel) -> LinearProgram {
    let mut p = LinearProgram::new(m.variables.len(), m.objective.sense);
    for (k, v) in m.variables.iter().enumerate() {
        p.upper[k] = match (v.domain, v.upper) {
            (Domain::Binary, _) => 1.0,
            (Domain::Continuous, Some(u)) => u,
            (Domain::Continuous, None) => f64::INFINITY,
        };
    }
    p.rows = m
        .constraints
        .iter()
        .map(|c| LpRow {
            coeffs: c.coeffs.clone(),
            sense: c.sense,
            rhs: c.rhs,
        })
        .collect();
    p.objective = m.objective.coeffs.clone();
    p
}

pub fn solve_lp(p: &LinearProgram) -> Result<LpOutcome, LpError> {
    solve_lp_with(p, &p.lower, &p.upper, &LpOptions::default())
}

/// Solves `p` with its bounds replaced by `lower`/`upper`.
pub fn solve_lp_with(
    p: &LinearProgram,
    lower: &[f64],
    upper: &[f64],
    opts: &LpOptions,
) -> Result<LpOutcome, LpError> {
    p.validate_bounds(lower, upper)?;
    warn_on_conditioning(p);
    let mut outcome = Tableau::build(p, lower, upper, opts).run(opts)?;
    if outcome.status == LpStatus::Optimal {
        outcome.objective = p.objective_value(&outcome.values);
        let violation = p.max_violation(&outcome.values);
        if violation > opts.feasibility_tol * 10.0 {
            log::warn!("simplex solution violates a row by {violation:e}");
        }
    }
    Ok(outcome)
}

fn warn_on_conditioning(p: &LinearProgram) {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for row in &p.rows {
        for &(_, c) in &row.coeffs {
            let a = c.abs();
            if a > 0.0 {
                lo = lo.min(a);
                hi = hi.max(a);
            }
        }
    }
    if hi > 0.0 && hi / lo > 1e10 {
        log::warn!("coefficient magnitude ratio {:e} exceeds 1e10", hi / lo);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural(usize),
    Slack,
    Artificial,
}

struct Tableau {
    m: usize,
    cols: usize,
    /// Row-major `m x (cols + 1)`; the last entry of each row is its rhs.
    a: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    /// Value of every original variable contributed by shifts and fixings.
    offset: Vec<f64>,
    /// Cost per tableau column, already in minimization sense.
    cost: Vec<f64>,
    infeasible_constant_row: bool,
    var_count: usize,
}

impl Tableau {
    fn build(p: &LinearProgram, lower: &[f64], upper: &[f64], opts: &LpOptions) -> Tableau {
        let nvars = p.var_count();
        let mut col_of: Vec<Option<usize>> = vec![None; nvars];
        let mut kinds = Vec::new();
        for j in 0..nvars {
            if upper[j] - lower[j] > 0.0 {
                col_of[j] = Some(kinds.len());
                kinds.push(ColKind::Structural(j));
            }
        }
        let offset: Vec<f64> = lower.to_vec();

        // Rows after substitution: coefficients over tableau columns.
        let mut rows: Vec<LpRow> = Vec::new();
        let mut infeasible_constant_row = false;
        for row in &p.rows {
            let mut rhs = row.rhs;
            let mut coeffs = Vec::with_capacity(row.coeffs.len());
            for &(j, c) in &row.coeffs {
                rhs -= c * offset[j];
                if let Some(col) = col_of[j] {
                    if c != 0.0 {
                        coeffs.push((col, c));
                    }
                }
            }
            if coeffs.is_empty() {
                let ok = match row.sense {
                    Sense::Le => rhs >= -opts.feasibility_tol,
                    Sense::Ge => rhs <= opts.feasibility_tol,
                    Sense::Eq => rhs.abs() <= opts.feasibility_tol,
                };
                infeasible_constant_row |= !ok;
                continue;
            }
            rows.push(LpRow {
                coeffs,
                sense: row.sense,
                rhs,
            });
        }
        for j in 0..nvars {
            if let Some(col) = col_of[j] {
                if upper[j].is_finite() {
                    rows.push(LpRow {
                        coeffs: vec![(col, 1.0)],
                        sense: Sense::Le,
                        rhs: upper[j] - lower[j],
                    });
                }
            }
        }
        for row in rows.iter_mut() {
            if row.rhs < 0.0 {
                row.rhs = -row.rhs;
                for c in row.coeffs.iter_mut() {
                    c.1 = -c.1;
                }
                row.sense = match row.sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }

        let m = rows.len();
        let structural = kinds.len();
        let slacks = rows.iter().filter(|r| r.sense != Sense::Eq).count();
        let artificials = rows.iter().filter(|r| r.sense != Sense::Le).count();
        let cols = structural + slacks + artificials;
        let stride = cols + 1;
        let mut a = vec![0.0; m * stride];
        let mut basis = vec![0; m];
        let (mut next_slack, mut next_art) = (structural, structural + slacks);
        kinds.resize(structural, ColKind::Slack);
        kinds.extend(std::iter::repeat_n(ColKind::Slack, slacks));
        kinds.extend(std::iter::repeat_n(ColKind::Artificial, artificials));
        for (r, LpRow { coeffs, sense, rhs }) in rows.iter().enumerate() {
            let base = r * stride;
            for &(col, c) in coeffs {
                a[base + col] += c;
            }
            a[base + cols] = *rhs;
            match sense {
                Sense::Le => {
                    a[base + next_slack] = 1.0;
                    basis[r] = next_slack;
                    next_slack += 1;
                }
                Sense::Ge => {
                    a[base + next_slack] = -1.0;
                    next_slack += 1;
                    a[base + next_art] = 1.0;
                    basis[r] = next_art;
                    next_art += 1;
                }
                Sense::Eq => {
                    a[base + next_art] = 1.0;
                    basis[r] = next_art;
                    next_art += 1;
                }
            }
        }

        let maximize = p.sense == ObjectiveSense::Maximize;
        let mut cost = vec![0.0; cols];
        for &(j, c) in &p.objective {
            if let Some(col) = col_of[j] {
                cost[col] += if maximize { -c } else { c };
            }
        }

        Tableau {
            m,
            cols,
            a,
            basis,
            kinds,
            offset,
            cost,
            infeasible_constant_row,
            var_count: nvars,
        }
    }

    fn stride(&self) -> usize {
        self.cols + 1
    }

    fn rhs(&self, r: usize) -> f64 {
        self.a[r * self.stride() + self.cols]
    }

    /// Reduced-cost row for the given column costs; last entry is `-z`.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let stride = self.stride();
        let mut z = vec![0.0; stride];
        z[..self.cols].copy_from_slice(cost);
        for r in 0..self.m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.a[r * stride..(r + 1) * stride];
                for (zj, &arj) in z.iter_mut().zip(row) {
                    *zj -= cb * arj;
                }
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [f64], pr: usize, pc: usize) {
        let stride = self.stride();
        let piv = self.a[pr * stride + pc];
        let inv = 1.0 / piv;
        {
            let row = &mut self.a[pr * stride..(pr + 1) * stride];
            for x in row.iter_mut() {
                *x *= inv;
            }
            row[pc] = 1.0;
        }
        let nz: Vec<usize> = (0..stride)
            .filter(|&j| self.a[pr * stride + j] != 0.0)
            .collect();
        let prow: Vec<f64> = nz.iter().map(|&j| self.a[pr * stride + j]).collect();
        for r in 0..self.m {
            if r == pr {
                continue;
            }
            let f = self.a[r * stride + pc];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.a[r * stride..(r + 1) * stride];
            for (&j, &pj) in nz.iter().zip(&prow) {
                row[j] -= f * pj;
            }
            row[pc] = 0.0;
            // Clean up round-off on the rhs.
            if row[stride - 1].abs() < 1e-13 {
                row[stride - 1] = 0.0;
            }
        }
        let f = z[pc];
        if f != 0.0 {
            for (&j, &pj) in nz.iter().zip(&prow) {
                z[j] -= f * pj;
            }
            z[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Primal simplex on the current basis. Returns `Ok(false)` if unbounded.
    fn optimize(
        &mut self,
        z: &mut [f64],
        allowed: &dyn Fn(usize) -> bool,
        opts: &LpOptions,
        iterations: &mut usize,
    ) -> Result<bool, LpError> {
        let stride = self.stride();
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= opts.bland_after;
            let mut enter = None;
            let mut best = -opts.optimality_tol;
            for (j, &zj) in z.iter().enumerate().take(self.cols) {
                if zj < best && allowed(j) {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = zj;
                }
            }
            let Some(q) = enter else {
                return Ok(true);
            };

            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for r in 0..self.m {
                let arq = self.a[r * stride + q];
                if arq > opts.pivot_tol {
                    let ratio = self.a[r * stride + self.cols] / arq;
                    match leave {
                        None => {
                            leave = Some(r);
                            best_ratio = ratio;
                        }
                        Some(l) => {
                            let tie =
                                (ratio - best_ratio).abs() <= 1e-12 * (1.0 + best_ratio.abs());
                            let better = if tie {
                                if bland {
                                    self.basis[r] < self.basis[l]
                                } else {
                                    let cur = self.a[l * stride + q];
                                    arq > cur || (arq == cur && self.basis[r] < self.basis[l])
                                }
                            } else {
                                ratio < best_ratio
                            };
                            if better {
                                leave = Some(r);
                                best_ratio = ratio;
                            }
                        }
                    }
                }
            }
            let Some(p) = leave else {
                return Ok(false);
            };
            if best_ratio <= opts.feasibility_tol * 1e-3 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(z, p, q);
            *iterations += 1;
            if *iterations > opts.max_iterations {
                return Err(LpError::IterationLimit);
            }
        }
    }

    fn run(mut self, opts: &LpOptions) -> Result<LpOutcome, LpError> {
        let fail = |status, iterations| LpOutcome {
            status,
            values: Vec::new(),
            objective: f64::NAN,
            iterations,
        };
        if self.infeasible_constant_row {
            return Ok(fail(LpStatus::Infeasible, 0));
        }
        let mut iterations = 0;
        let artificial: Vec<bool> = self
            .kinds
            .iter()
            .map(|k| *k == ColKind::Artificial)
            .collect();

        if artificial.iter().any(|&a| a) {
            let phase1: Vec<f64> = artificial
                .iter()
                .map(|&a| if a { 1.0 } else { 0.0 })
                .collect();
            let mut z = self.reduced_costs(&phase1);
            let bounded = self.optimize(&mut z, &|_| true, opts, &mut iterations)?;
            debug_assert!(bounded, "phase one is bounded below by zero");
            let infeasibility: f64 = (0..self.m)
                .filter(|&r| artificial[self.basis[r]])
                .map(|r| self.rhs(r))
                .sum();
            if infeasibility > opts.feasibility_tol {
                return Ok(fail(LpStatus::Infeasible, iterations));
            }
            // Drive zero-level artificials out of the basis where possible.
            let stride = self.stride();
            for r in 0..self.m {
                if !artificial[self.basis[r]] {
                    continue;
                }
                let col =
                    (0..self.cols).find(|&j| !artificial[j] && self.a[r * stride + j].abs() > 1e-7);
                if let Some(q) = col {
                    let mut scratch = vec![0.0; stride];
                    self.pivot(&mut scratch, r, q);
                    iterations += 1;
                }
            }
        }

        let mut z = self.reduced_costs(&self.cost.clone());
        let bounded = self.optimize(&mut z, &|j| !artificial[j], opts, &mut iterations)?;
        if !bounded {
            return Ok(fail(LpStatus::Unbounded, iterations));
        }

        let mut values = self.offset.clone();
        for r in 0..self.m {
            if let ColKind::Structural(j) = self.kinds[self.basis[r]] {
                values[j] += self.rhs(r);
            }
        }
        debug_assert_eq!(values.len(), self.var_count);
        Ok(LpOutcome {
            status: LpStatus::Optimal,
            values,
            objective: f64::NAN,
            iterations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(count: usize, sense: ObjectiveSense, obj: &[(usize, f64)]) -> LinearProgram {
        let mut p = LinearProgram::new(count, sense);
        p.objective = obj.to_vec();
        p
    }

    #[test]
    fn minimize_x_above_three() {
        let mut p = lp(1, ObjectiveSense::Minimize, &[(0, 1.0)]);
        p.add_row(vec![(0, 1.0)], Sense::Ge, 3.0);
        let out = solve_lp(&p).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.values[0] - 3.0).abs() < 1e-9);
        assert!((out.objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_program() {
        let mut p = lp(1, ObjectiveSense::Minimize, &[]);
        p.add_row(vec![(0, 1.0)], Sense::Le, -1.0);
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_program() {
        let mut p = lp(2, ObjectiveSense::Maximize, &[(0, 1.0)]);
        p.add_row(vec![(0, 1.0), (1, -1.0)], Sense::Le, 1.0);
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut p = lp(2, ObjectiveSense::Maximize, &[(0, 3.0), (1, 5.0)]);
        p.add_row(vec![(0, 1.0)], Sense::Le, 4.0);
        p.add_row(vec![(1, 2.0)], Sense::Le, 12.0);
        p.add_row(vec![(0, 3.0), (1, 2.0)], Sense::Le, 18.0);
        let out = solve_lp(&p).unwrap();
        assert!((out.objective - 36.0).abs() < 1e-9);
        assert!((out.values[0] - 2.0).abs() < 1e-9);
        assert!((out.values[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equalities_bounds_and_fixings() {
        // min x + y, x + y = 5, 1 <= x <= 2, y fixed at 3 via bounds -> x = 2
        let mut p = lp(2, ObjectiveSense::Minimize, &[(0, 1.0), (1, 1.0)]);
        p.add_row(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 5.0);
        let out = solve_lp_with(&p, &[1.0, 3.0], &[2.0, 3.0], &LpOptions::default()).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.values[0] - 2.0).abs() < 1e-9);
        assert_eq!(out.values[1], 3.0);
        let out = solve_lp_with(&p, &[1.0, 4.5], &[1.2, 4.5], &LpOptions::default()).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = lp(2, ObjectiveSense::Minimize, &[(0, 1.0), (1, 2.0)]);
        p.add_row(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 2.0);
        p.add_row(vec![(0, 2.0), (1, 2.0)], Sense::Eq, 4.0);
        let out = solve_lp(&p).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_errors() {
        let mut p = lp(1, ObjectiveSense::Minimize, &[]);
        p.add_row(vec![(3, 1.0)], Sense::Le, 1.0);
        assert!(matches!(
            solve_lp(&p),
            Err(LpError::DimensionMismatch { .. })
        ));
        let p = lp(0, ObjectiveSense::Minimize, &[]);
        assert_eq!(solve_lp(&p), Err(LpError::Empty));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under naive Dantzig pricing.
        let mut p = lp(
            4,
            ObjectiveSense::Minimize,
            &[(0, -0.75), (1, 150.0), (2, -0.02), (3, 6.0)],
        );
        p.add_row(
            vec![(0, 0.25), (1, -60.0), (2, -0.04), (3, 9.0)],
            Sense::Le,
            0.0,
        );
        p.add_row(
            vec![(0, 0.5), (1, -90.0), (2, -0.02), (3, 3.0)],
            Sense::Le,
            0.0,
        );
        p.add_row(vec![(2, 1.0)], Sense::Le, 1.0);
        let out = solve_lp(&p).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective + 0.05).abs() < 1e-9);
    }
}
