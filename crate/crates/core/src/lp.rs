//! Phase-one simplex for `A x = b, x >= 0` feasibility.
//!
//! Dense tableau with Bland's rule. Over [`crate::Rational`] every pivot is
//! exact, so there is no tolerance to tune; problem sizes here are small
//! (a few dozen variables and constraints).

use crate::scalar::Scalar;

/// Equality-constrained system over non-negative variables.
#[derive(Clone, Debug)]
pub struct EqualitySystem<T> {
    vars: usize,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
}

impl<T: Scalar> EqualitySystem<T> {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coef · x_var = rhs` from sparse `(var, coef)` terms.
    pub fn add(&mut self, terms: impl IntoIterator<Item = (usize, T)>, rhs: T) {
        let mut row = vec![T::zero(); self.vars];
        for (var, coef) in terms {
            row[var] = row[var].clone() + coef;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Returns a non-negative solution when one exists.
    pub fn solve(&self) -> Option<Vec<T>> {
        Tableau::new(self).phase_one()
    }
}

struct Tableau<T> {
    // row-major, `cols` = vars + 1, last column holds the right-hand side
    cells: Vec<Vec<T>>,
    // basic variable per row; `None` marks a row still held by its artificial
    basis: Vec<Option<usize>>,
    // reduced costs of the phase-one objective, last entry is minus its value
    cost: Vec<T>,
    vars: usize,
}

impl<T: Scalar> Tableau<T> {
    fn new(system: &EqualitySystem<T>) -> Self {
        let vars = system.vars;
        let mut cells = Vec::with_capacity(system.rows.len());
        for (row, b) in system.rows.iter().zip(&system.rhs) {
            let mut r: Vec<T> = row.iter().cloned().chain(std::iter::once(b.clone())).collect();
            if b.is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            cells.push(r);
        }
        let mut cost = vec![T::zero(); vars + 1];
        for r in &cells {
            for (c, x) in cost.iter_mut().zip(r) {
                *c = c.clone() - x.clone();
            }
        }
        let basis = vec![None; cells.len()];
        Self { cells, basis, cost, vars }
    }

    fn phase_one(mut self) -> Option<Vec<T>> {
        // Bland's rule: lowest-index entering column, ties in the ratio test
        // broken by lowest basic index (artificials rank last by index).
        while let Some(col) = (0..self.vars).find(|&j| T::zero().definitely_gt(&self.cost[j])) {
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.cells.iter().enumerate() {
                let a = &row[col];
                if !a.definitely_gt(&T::zero()) {
                    continue;
                }
                let ratio = row[self.vars].clone() / a.clone();
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio.definitely_gt(&br) {
                            Some((bi, br))
                        } else if br.definitely_gt(&ratio) || self.basis_rank(i) < self.basis_rank(bi) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            // unbounded is impossible: the phase-one objective is bounded below by zero
            let (row, _) = best?;
            self.pivot(row, col);
        }

        let objective = -self.cost[self.vars].clone();
        if objective.definitely_gt(&T::zero()) {
            return None;
        }
        let mut x = vec![T::zero(); self.vars];
        for (i, b) in self.basis.iter().enumerate() {
            if let Some(var) = b {
                x[*var] = self.cells[i][self.vars].clone();
            }
        }
        Some(x)
    }

    fn basis_rank(&self, row: usize) -> usize {
        self.basis[row].unwrap_or(self.vars + row)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col].clone();
        if !p.is_one() {
            for x in self.cells[row].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / p.clone();
                }
            }
        }
        let pivot_row = self.cells[row].clone();
        let nonzero: Vec<usize> = (0..=self.vars).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |target: &mut Vec<T>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &nonzero {
                target[j] = target[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        };
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.cost);
        self.basis[row] = Some(col);
    }
}
