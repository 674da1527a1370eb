//! Bounded-variable primal simplex over exact rationals.
//!
//! Two phases with one artificial variable per row. Entering and leaving
//! variables follow Bland's smallest-index rule, which rules out cycling;
//! artificials rank before structural variables when leaving. An artificial
//! that leaves the basis is dropped for good, and any still basic after
//! phase one is pinned to zero.

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Rational, RationalMatrix};

/// `maximize objective·x  s.t.  a_eq·x = b_eq,  lower ≤ x ≤ upper`.
///
/// Lower bounds are finite; an upper bound of `None` means unbounded above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub a_eq: RationalMatrix,
    pub b_eq: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Option<Rational>>,
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.b_eq.len()
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        let mismatch = |what: &'static str| Err(LpError::DimensionMismatch(what));
        if self.a_eq.cols() != n {
            return mismatch("constraint matrix columns");
        }
        if self.a_eq.rows() != self.b_eq.len() {
            return mismatch("right-hand side length");
        }
        if self.lower.len() != n || self.upper.len() != n {
            return mismatch("bound vector length");
        }
        Ok(())
    }

    /// Exact feasibility of `x`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = x.iter().enumerate().all(|(j, v)| {
            *v >= self.lower[j] && self.upper[j].as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok && self.a_eq.mul_vec(x) == self.b_eq
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Empty unless optimal.
    pub values: Vec<Rational>,
    pub objective_value: Rational,
    /// Structural variables in the final basis, ascending.
    pub basis: Vec<usize>,
}

impl LpSolution {
    fn without_optimum(status: LpStatus) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective_value: Rational::zero(),
            basis: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Basic {
    Artificial(usize),
    Structural(usize),
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

struct Tableau {
    /// `B⁻¹A` restricted to structural columns.
    t: Vec<Vec<Rational>>,
    /// Current values of the basic variables, by row.
    beta: Vec<Rational>,
    basis: Vec<Basic>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    /// Width of each shifted variable's box, `upper - lower`.
    cap: Vec<Option<Rational>>,
    /// Reduced costs of the current phase.
    d: Vec<Rational>,
    /// Artificials are pinned to zero once phase one ends.
    artificials_pinned: bool,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.beta.len()
    }

    fn nonbasic_value(&self, j: usize) -> Rational {
        if self.at_upper[j] {
            self.cap[j].clone().expect("at upper implies finite bound")
        } else {
            Rational::zero()
        }
    }

    fn basic_upper(&self, row: usize) -> Option<Rational> {
        match self.basis[row] {
            Basic::Structural(j) => self.cap[j].clone(),
            Basic::Artificial(_) => self.artificials_pinned.then(Rational::zero),
        }
    }

    /// Bland order for leaving variables: artificials first, then structurals.
    fn leave_key(&self, row: usize) -> usize {
        match self.basis[row] {
            Basic::Artificial(i) => i,
            Basic::Structural(j) => self.rows() + j,
        }
    }

    fn entering(&self) -> Option<usize> {
        (0..self.d.len()).find(|&j| {
            if self.is_basic[j] {
                return false;
            }
            let dj = &self.d[j];
            if self.at_upper[j] {
                dj.is_negative()
            } else {
                dj.is_positive() && self.cap[j].as_ref().is_none_or(|c| !c.is_zero())
            }
        })
    }

    fn step(&mut self) -> Step {
        let Some(j) = self.entering() else {
            return Step::Optimal;
        };
        let increasing = !self.at_upper[j];
        // (step length, bland key, leaving row or None for a bound flip)
        let mut best: Option<(Rational, usize, Option<usize>)> = None;
        let mut consider = |theta: Rational, key: usize, row: Option<usize>| {
            let better = match &best {
                None => true,
                Some((b, k, _)) => theta < *b || (theta == *b && key < *k),
            };
            if better {
                best = Some((theta, key, row));
            }
        };
        if let Some(c) = &self.cap[j] {
            consider(c.clone(), self.rows() + j, None);
        }
        for i in 0..self.rows() {
            let coef = &self.t[i][j];
            if coef.is_zero() {
                continue;
            }
            // basic value moves by -theta * alpha
            let alpha = if increasing { coef.clone() } else { -coef };
            if alpha.is_positive() {
                consider(&self.beta[i] / &alpha, self.leave_key(i), Some(i));
            } else if let Some(ub) = self.basic_upper(i) {
                consider((ub - &self.beta[i]) / -alpha, self.leave_key(i), Some(i));
            }
        }
        let Some((theta, _, leaving)) = best else {
            return Step::Unbounded;
        };

        let delta = if increasing { theta.clone() } else { -theta.clone() };
        let entering_value = self.nonbasic_value(j) + &delta;
        if !delta.is_zero() {
            for i in 0..self.rows() {
                if !self.t[i][j].is_zero() {
                    let change = &delta * &self.t[i][j];
                    self.beta[i] -= change;
                }
            }
        }
        match leaving {
            None => self.at_upper[j] = increasing,
            Some(r) => {
                if let Basic::Structural(k) = self.basis[r] {
                    let at_upper = match &self.cap[k] {
                        Some(c) => self.beta[r] == *c && !c.is_zero(),
                        None => false,
                    };
                    self.is_basic[k] = false;
                    self.at_upper[k] = at_upper;
                }
                self.beta[r] = entering_value;
                self.pivot(r, j);
            }
        }
        Step::Moved
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.t[r][j].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        let nonzero: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();
        for i in 0..self.rows() {
            if i == r || self.t[i][j].is_zero() {
                continue;
            }
            let factor = self.t[i][j].clone();
            let row = &mut self.t[i];
            for &k in &nonzero {
                row[k] -= &factor * &prow[k];
            }
        }
        if !self.d[j].is_zero() {
            let factor = self.d[j].clone();
            for &k in &nonzero {
                self.d[k] -= &factor * &prow[k];
            }
        }
        self.basis[r] = Basic::Structural(j);
        self.is_basic[j] = true;
        self.at_upper[j] = false;
    }

    fn infeasibility(&self) -> Rational {
        (0..self.rows())
            .filter(|&i| matches!(self.basis[i], Basic::Artificial(_)))
            .map(|i| self.beta[i].clone())
            .sum()
    }
}

/// Maximizes and returns an exact basic optimum, or the reason there is none.
pub fn simplex_max(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    let n = p.num_vars();
    let m = p.num_rows();

    let mut cap = Vec::with_capacity(n);
    for j in 0..n {
        match &p.upper[j] {
            Some(u) if *u < p.lower[j] => return Ok(LpSolution::without_optimum(LpStatus::Infeasible)),
            Some(u) => cap.push(Some(u - &p.lower[j])),
            None => cap.push(None),
        }
    }

    // shift x = lower + x', then make every right-hand side nonnegative
    let shift = p.a_eq.mul_vec(&p.lower);
    let mut t = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    for i in 0..m {
        let rhs = &p.b_eq[i] - &shift[i];
        let row = p.a_eq.row(i);
        if rhs.is_negative() {
            t.push(row.iter().map(|x| -x).collect::<Vec<_>>());
            beta.push(-rhs);
        } else {
            t.push(row.to_vec());
            beta.push(rhs);
        }
    }

    // phase one maximizes minus the sum of artificials
    let d = (0..n)
        .map(|j| t.iter().map(|row: &Vec<Rational>| row[j].clone()).sum())
        .collect();
    let mut tab = Tableau {
        t,
        beta,
        basis: (0..m).map(Basic::Artificial).collect(),
        is_basic: vec![false; n],
        at_upper: vec![false; n],
        cap,
        d,
        artificials_pinned: false,
    };
    while !tab.infeasibility().is_zero() {
        match tab.step() {
            Step::Moved => {}
            Step::Optimal | Step::Unbounded => break,
        }
    }
    if !tab.infeasibility().is_zero() {
        return Ok(LpSolution::without_optimum(LpStatus::Infeasible));
    }
    tab.artificials_pinned = true;

    tab.d = (0..n)
        .map(|j| {
            let mut dj = p.objective[j].clone();
            for (i, b) in tab.basis.iter().enumerate() {
                if let Basic::Structural(k) = b {
                    if !tab.t[i][j].is_zero() && !p.objective[*k].is_zero() {
                        dj -= &p.objective[*k] * &tab.t[i][j];
                    }
                }
            }
            dj
        })
        .collect();
    loop {
        match tab.step() {
            Step::Moved => {}
            Step::Optimal => break,
            Step::Unbounded => return Ok(LpSolution::without_optimum(LpStatus::Unbounded)),
        }
    }

    let mut values: Vec<Rational> = (0..n).map(|j| tab.nonbasic_value(j)).collect();
    let mut basis = Vec::new();
    for (i, b) in tab.basis.iter().enumerate() {
        if let Basic::Structural(j) = *b {
            values[j] = tab.beta[i].clone();
            basis.push(j);
        }
    }
    for (v, l) in values.iter_mut().zip(&p.lower) {
        *v += l;
    }
    basis.sort_unstable();
    let objective_value = p.objective_at(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlp::rational;

    fn r(x: i64) -> Rational {
        rational(x)
    }

    fn problem(
        c: &[i64],
        a: &[&[i64]],
        b: &[i64],
        lower: &[i64],
        upper: &[Option<i64>],
    ) -> LpProblem {
        let a_eq = if a.is_empty() {
            RationalMatrix::zeros(0, c.len())
        } else {
            RationalMatrix::from_i64_rows(a)
        };
        LpProblem {
            objective: c.iter().map(|&x| r(x)).collect(),
            a_eq,
            b_eq: b.iter().map(|&x| r(x)).collect(),
            lower: lower.iter().map(|&x| r(x)).collect(),
            upper: upper.iter().map(|u| u.map(r)).collect(),
        }
    }

    #[test]
    fn box_constrained_single_variable() {
        let p = problem(&[1], &[], &[], &[0], &[Some(1)]);
        let s = simplex_max(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.values, vec![r(1)]);
        assert_eq!(s.objective_value, r(1));
    }

    #[test]
    fn unbounded_ray() {
        let p = problem(&[1], &[], &[], &[0], &[None]);
        assert_eq!(simplex_max(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        // x + y = 3 with x, y in [0, 1]
        let p = problem(&[1, 1], &[&[1, 1]], &[3], &[0, 0], &[Some(1), Some(1)]);
        assert_eq!(simplex_max(&p).unwrap().status, LpStatus::Infeasible);
        let p = problem(&[1], &[], &[], &[2], &[Some(1)]);
        assert_eq!(simplex_max(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn dimension_mismatch() {
        let mut p = problem(&[1, 1], &[&[1, 1]], &[1], &[0, 0], &[None, None]);
        p.b_eq.push(r(0));
        assert!(simplex_max(&p).is_err());
    }

    #[test]
    fn classic_two_variable_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 (slacks s1..s3)
        let p = problem(
            &[3, 5, 0, 0, 0],
            &[&[1, 0, 1, 0, 0], &[0, 2, 0, 1, 0], &[3, 2, 0, 0, 1]],
            &[4, 12, 18],
            &[0; 5],
            &[None; 5],
        );
        let s = simplex_max(&p).unwrap();
        assert_eq!(s.objective_value, r(36));
        assert_eq!(&s.values[..2], &[r(2), r(6)]);
        assert!(p.is_feasible(&s.values));
    }

    #[test]
    fn fractional_vertex_is_exact() {
        // max x + y, 2x + y <= 2, x + 2y <= 2  -> (2/3, 2/3)
        let p = problem(
            &[1, 1, 0, 0],
            &[&[2, 1, 1, 0], &[1, 2, 0, 1]],
            &[2, 2],
            &[0; 4],
            &[None; 4],
        );
        let s = simplex_max(&p).unwrap();
        let two_thirds = Rational::new(2.into(), 3.into());
        assert_eq!(&s.values[..2], &[two_thirds.clone(), two_thirds]);
        assert_eq!(s.objective_value, Rational::new(4.into(), 3.into()));
    }

    #[test]
    fn negative_lower_bounds_and_rhs() {
        // max -x with x - y = -3, x in [-5, 5], y in [0, 1]
        let p = problem(&[-1, 0], &[&[1, -1]], &[-3], &[-5, 0], &[Some(5), Some(1)]);
        let s = simplex_max(&p).unwrap();
        assert_eq!(s.values, vec![r(-3), r(0)]);
        assert_eq!(s.objective_value, r(3));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = problem(
            &[1, 1],
            &[&[1, 1], &[2, 2]],
            &[1, 2],
            &[0, 0],
            &[Some(1), Some(1)],
        );
        let s = simplex_max(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, r(1));
        assert!(p.is_feasible(&s.values));
    }

    #[test]
    fn upper_bounds_via_flips() {
        // max x1 + 2x2 + 3x3, x1 + x2 + x3 <= 2 (slack), all in [0,1]
        let p = problem(
            &[1, 2, 3, 0],
            &[&[1, 1, 1, 1]],
            &[2],
            &[0; 4],
            &[Some(1), Some(1), Some(1), None],
        );
        let s = simplex_max(&p).unwrap();
        assert_eq!(s.objective_value, r(5));
        assert_eq!(&s.values[..3], &[r(0), r(1), r(1)]);
    }
}
