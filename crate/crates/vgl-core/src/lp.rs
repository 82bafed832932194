//! Dense two-phase simplex over exact rationals with Bland's pivoting
//! rule, which guarantees termination. The tropical spectral conditions
//! reduce to LPs with a handful of variables and constraints, so a dense
//! exact tableau is the right tool: verdicts must be exact for strictness.

use num_traits::{Signed, Zero};

use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl LpConstraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        LpConstraint {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        LpConstraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rat,
    pub point: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

/// Maximizes `objective . x` subject to the constraints and `x >= 0`.
pub fn maximize(objective: &[Rat], constraints: &[LpConstraint]) -> LpOutcome {
    Tableau::build(objective, constraints).solve(objective)
}

struct Tableau {
    rows: Vec<Vec<Rat>>, // each row: ncols coefficients then rhs
    bottom: Vec<Rat>,    // reduced costs then -objective value
    basis: Vec<usize>,
    ncols: usize,
    nvars: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(objective: &[Rat], constraints: &[LpConstraint]) -> Self {
        let nvars = objective.len();
        let m = constraints.len();
        // orient every row to a nonnegative rhs; Le rows with negative rhs
        // become Ge rows, which need a surplus column and an artificial
        #[derive(Clone, Copy, PartialEq)]
        enum Kind {
            Le,
            Ge,
            Eq,
        }
        let mut oriented: Vec<(Vec<Rat>, Kind, Rat)> = Vec::with_capacity(m);
        for c in constraints {
            assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
            let (coeffs, kind, rhs) = if c.rhs.is_negative() {
                (
                    c.coeffs.iter().map(|v| -v).collect(),
                    match c.rel {
                        Relation::Le => Kind::Ge,
                        Relation::Eq => Kind::Eq,
                    },
                    -&c.rhs,
                )
            } else {
                (
                    c.coeffs.clone(),
                    match c.rel {
                        Relation::Le => Kind::Le,
                        Relation::Eq => Kind::Eq,
                    },
                    c.rhs.clone(),
                )
            };
            oriented.push((coeffs, kind, rhs));
        }
        let n_slack = oriented
            .iter()
            .filter(|(_, k, _)| matches!(k, Kind::Le | Kind::Ge))
            .count();
        let n_art = oriented
            .iter()
            .filter(|(_, k, _)| matches!(k, Kind::Ge | Kind::Eq))
            .count();
        let first_artificial = nvars + n_slack;
        let ncols = first_artificial + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack_at = nvars;
        let mut art_at = first_artificial;
        for (coeffs, kind, rhs) in &oriented {
            let mut row = vec![Rat::zero(); ncols + 1];
            row[..nvars].clone_from_slice(coeffs);
            row[ncols] = rhs.clone();
            match kind {
                Kind::Le => {
                    row[slack_at] = Rat::from_integer(1.into());
                    basis.push(slack_at);
                    slack_at += 1;
                }
                Kind::Ge => {
                    row[slack_at] = Rat::from_integer((-1).into());
                    slack_at += 1;
                    row[art_at] = Rat::from_integer(1.into());
                    basis.push(art_at);
                    art_at += 1;
                }
                Kind::Eq => {
                    row[art_at] = Rat::from_integer(1.into());
                    basis.push(art_at);
                    art_at += 1;
                }
            }
            rows.push(row);
        }

        Tableau {
            rows,
            bottom: vec![Rat::zero(); ncols + 1],
            basis,
            ncols,
            nvars,
            first_artificial,
        }
    }

    fn solve(mut self, objective: &[Rat]) -> LpOutcome {
        if self.first_artificial < self.ncols {
            // phase 1: drive the artificial variables to zero
            self.bottom = vec![Rat::zero(); self.ncols + 1];
            for (i, row) in self.rows.iter().enumerate() {
                if self.basis[i] >= self.first_artificial {
                    for j in 0..=self.ncols {
                        self.bottom[j] += &row[j];
                    }
                }
            }
            for j in self.first_artificial..self.ncols {
                self.bottom[j] = Rat::zero();
            }
            if self.run_simplex(self.first_artificial).is_some() {
                unreachable!("phase 1 objective is bounded above by zero");
            }
            if !self.bottom[self.ncols].is_zero() {
                return LpOutcome::Infeasible;
            }
            self.evict_basic_artificials();
        }

        // phase 2 on the original objective; artificial columns never re-enter
        self.bottom = vec![Rat::zero(); self.ncols + 1];
        self.bottom[..self.nvars].clone_from_slice(objective);
        for (i, row) in self.rows.iter().enumerate() {
            let b = self.basis[i];
            if b < self.nvars && !objective[b].is_zero() {
                let cb = objective[b].clone();
                for (v, rv) in self.bottom.iter_mut().zip(row) {
                    *v -= &cb * rv;
                }
            }
        }
        if self.run_simplex(self.first_artificial).is_some() {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rat::zero(); self.nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nvars {
                point[b] = self.rows[i][self.ncols].clone();
            }
        }
        LpOutcome::Optimal(LpSolution {
            value: -self.bottom[self.ncols].clone(),
            point,
        })
    }

    /// Runs Bland pivoting until optimal (returns None) or unbounded
    /// (returns the entering column). Columns at `limit` and beyond never
    /// enter the basis.
    fn run_simplex(&mut self, limit: usize) -> Option<usize> {
        loop {
            let entering = (0..limit).find(|&j| self.bottom[j].is_positive());
            let Some(col) = entering else { return None };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if a.is_positive() {
                    let ratio = &self.rows[i][self.ncols] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return Some(col),
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
        if !self.bottom[c].is_zero() {
            let factor = self.bottom[c].clone();
            for (v, pv) in self.bottom.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        self.basis[r] = c;
    }

    /// After phase 1, pivots any artificial still in the basis out of it, or
    /// drops its row when the row is redundant.
    fn evict_basic_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                let col = (0..self.first_artificial)
                    .find(|&j| !self.rows[i][j].is_zero());
                match col {
                    Some(c) => self.pivot(i, c),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    fn opt(outcome: LpOutcome) -> LpSolution {
        match outcome {
            LpOutcome::Optimal(s) => s,
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn box_corner() {
        // max 3x + 2y st x <= 2, y <= 3, x + y <= 4
        let sol = opt(maximize(
            &[rat(3), rat(2)],
            &[
                LpConstraint::le(vec![rat(1), rat(0)], rat(2)),
                LpConstraint::le(vec![rat(0), rat(1)], rat(3)),
                LpConstraint::le(vec![rat(1), rat(1)], rat(4)),
            ],
        ));
        assert_eq!(sol.value, rat(10));
        assert_eq!(sol.point, vec![rat(2), rat(2)]);
    }

    #[test]
    fn equality_constraint_simplex() {
        // max b1 - b2 on the unit simplex
        let sol = opt(maximize(
            &[rat(1), rat(-1)],
            &[LpConstraint::eq(vec![rat(1), rat(1)], rat(1))],
        ));
        assert_eq!(sol.value, rat(1));
        assert_eq!(sol.point, vec![rat(1), rat(0)]);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y st 2x + y <= 1, x + 2y <= 1 -> (1/3, 1/3)
        let sol = opt(maximize(
            &[rat(1), rat(1)],
            &[
                LpConstraint::le(vec![rat(2), rat(1)], rat(1)),
                LpConstraint::le(vec![rat(1), rat(2)], rat(1)),
            ],
        ));
        assert_eq!(sol.value, rat_frac(2, 3));
        assert_eq!(sol.point, vec![rat_frac(1, 3), rat_frac(1, 3)]);
    }

    #[test]
    fn detects_infeasible() {
        // x <= -1 with x >= 0
        let out = maximize(
            &[rat(1)],
            &[LpConstraint::le(vec![rat(1)], rat(-1))],
        );
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let out = maximize(&[rat(1)], &[]);
        assert_eq!(out, LpOutcome::Unbounded);
        let out = maximize(
            &[rat(1), rat(0)],
            &[LpConstraint::le(vec![rat(0), rat(1)], rat(1))],
        );
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_normalization() {
        // x - y <= -2 means y >= x + 2; max x st also y <= 5 -> x = 3
        let sol = opt(maximize(
            &[rat(1), rat(0)],
            &[
                LpConstraint::le(vec![rat(1), rat(-1)], rat(-2)),
                LpConstraint::le(vec![rat(0), rat(1)], rat(5)),
            ],
        ));
        assert_eq!(sol.value, rat(3));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let sol = opt(maximize(
            &[rat(1), rat(1)],
            &[
                LpConstraint::eq(vec![rat(1), rat(1)], rat(1)),
                LpConstraint::eq(vec![rat(2), rat(2)], rat(2)),
            ],
        ));
        assert_eq!(sol.value, rat(1));
    }

    #[test]
    fn free_variable_split_pattern() {
        // max (tp - tm) st tp - tm <= 7: the free-variable encoding used by
        // the tropical checks must not report unbounded
        let sol = opt(maximize(
            &[rat(1), rat(-1)],
            &[LpConstraint::le(vec![rat(1), rat(-1)], rat(7))],
        ));
        assert_eq!(sol.value, rat(7));
    }
}
