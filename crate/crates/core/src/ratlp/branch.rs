//! Exact branch and bound over [`simplex_max`].

use num_traits::Zero;

use super::{is_integral, simplex_max, LpError, LpProblem, LpSolution, LpStatus, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    pub status: LpStatus,
    /// Empty unless optimal.
    pub values: Vec<Rational>,
    pub objective_value: Rational,
    /// Relaxations solved, the root included.
    pub nodes: usize,
}

/// Maximizes over the integral points of `p`.
///
/// The objective must be integral at integral points, so a node is pruned
/// as soon as the floor of its bound does not beat the incumbent. `root` is
/// the relaxation optimum if the caller already has it. With `target`, the
/// search stops at the first integral point reaching it.
pub fn integer_max(
    p: &LpProblem,
    root: Option<LpSolution>,
    target: Option<&Rational>,
) -> Result<IntegerSolution, LpError> {
    let mut nodes = 0;
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut stack = vec![(p.lower.clone(), p.upper.clone(), root)];
    while let Some((lower, upper, known)) = stack.pop() {
        let sol = match known {
            Some(s) => s,
            None => {
                let node = LpProblem {
                    lower: lower.clone(),
                    upper: upper.clone(),
                    ..p.clone()
                };
                simplex_max(&node)?
            }
        };
        nodes += 1;
        match sol.status {
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => {
                return Ok(IntegerSolution {
                    status: LpStatus::Unbounded,
                    values: Vec::new(),
                    objective_value: Rational::zero(),
                    nodes,
                })
            }
            LpStatus::Optimal => {}
        }
        let bound = sol.objective_value.floor();
        if best.as_ref().is_some_and(|(b, _)| bound <= *b) {
            continue;
        }
        match sol.values.iter().position(|v| !v.is_integer()) {
            None => {
                let reached = target.is_some_and(|t| sol.objective_value >= *t);
                best = Some((sol.objective_value, sol.values));
                if reached {
                    break;
                }
            }
            Some(j) => {
                let v = &sol.values[j];
                let mut down = upper.clone();
                down[j] = Some(v.floor());
                let mut up = lower.clone();
                up[j] = v.ceil();
                stack.push((lower, down, None));
                stack.push((up, upper, None));
            }
        }
    }
    Ok(match best {
        Some((objective_value, values)) => {
            debug_assert!(is_integral(&values));
            IntegerSolution {
                status: LpStatus::Optimal,
                values,
                objective_value,
                nodes,
            }
        }
        None => IntegerSolution {
            status: LpStatus::Infeasible,
            values: Vec::new(),
            objective_value: Rational::zero(),
            nodes,
        },
    })
}
