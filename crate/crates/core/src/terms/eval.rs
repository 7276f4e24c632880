//! Evaluation and exhaustive identity checking.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Identity, Term, TermError};
use crate::algebra::FiniteMGAlgebra;
use crate::config::Config;
use crate::lattice::Elem;

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Zero,
    One,
    Meet,
    Join,
    Imp,
    Not,
    Exists,
    Forall,
}

/// A term compiled to postfix form over numbered variable slots.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
    depth: usize,
}

impl Program {
    /// Compiles `term`; variables are numbered by their position in `vars`.
    pub fn compile(term: &Term, vars: &[String]) -> Result<Program, TermError> {
        let mut ops = Vec::new();
        emit(term, vars, &mut ops)?;
        let mut depth = 0usize;
        let mut max = 0usize;
        for op in &ops {
            match op {
                Op::Var(_) | Op::Zero | Op::One => depth += 1,
                Op::Meet | Op::Join | Op::Imp => depth -= 1,
                Op::Not | Op::Exists | Op::Forall => {}
            }
            max = max.max(depth);
        }
        Ok(Program { ops, depth: max })
    }

    pub fn run(&self, algebra: &FiniteMGAlgebra, values: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Var(i) => stack.push(values[i]),
                Op::Zero => stack.push(algebra.bottom()),
                Op::One => stack.push(algebra.top()),
                Op::Meet | Op::Join | Op::Imp => {
                    let b = stack.pop().expect("well-formed program");
                    let a = stack.pop().expect("well-formed program");
                    stack.push(match op {
                        Op::Meet => algebra.meet(a, b),
                        Op::Join => algebra.join(a, b),
                        _ => algebra.imp(a, b),
                    });
                }
                Op::Not | Op::Exists | Op::Forall => {
                    let a = stack.pop().expect("well-formed program");
                    stack.push(match op {
                        Op::Not => algebra.neg(a),
                        Op::Exists => algebra.exists(a),
                        _ => algebra.forall(a),
                    });
                }
            }
        }
        stack.pop().expect("well-formed program")
    }

    pub fn stack_depth(&self) -> usize {
        self.depth
    }
}

fn emit(term: &Term, vars: &[String], ops: &mut Vec<Op>) -> Result<(), TermError> {
    match term {
        Term::Var(v) => {
            let slot = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| TermError::UnboundVariable(v.clone()))?;
            ops.push(Op::Var(slot));
        }
        Term::Zero => ops.push(Op::Zero),
        Term::One => ops.push(Op::One),
        Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => {
            emit(a, vars, ops)?;
            emit(b, vars, ops)?;
            ops.push(match term {
                Term::Meet(..) => Op::Meet,
                Term::Join(..) => Op::Join,
                _ => Op::Imp,
            });
        }
        Term::Not(a) | Term::Exists(a) | Term::Forall(a) => {
            emit(a, vars, ops)?;
            ops.push(match term {
                Term::Not(..) => Op::Not,
                Term::Exists(..) => Op::Exists,
                _ => Op::Forall,
            });
        }
    }
    Ok(())
}

/// Value of `term` under `assignment`, which must bind every variable.
pub fn eval_term(
    algebra: &FiniteMGAlgebra,
    term: &Term,
    assignment: &HashMap<String, Elem>,
) -> Result<Elem, TermError> {
    let vars = term.variables();
    let mut values = Vec::with_capacity(vars.len());
    for v in &vars {
        let &x = assignment.get(v).ok_or_else(|| TermError::UnboundVariable(v.clone()))?;
        assert!(x < algebra.size(), "assignment value {x} outside the carrier");
        values.push(x);
    }
    let program = Program::compile(term, &vars)?;
    Ok(program.run(algebra, &values, &mut Vec::new()))
}

/// A failing assignment and the two sides' values there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, Elem)>,
    pub lhs: Elem,
    pub rhs: Elem,
}

/// Checks `identity` under every assignment with the default budget.
pub fn check_identity(algebra: &FiniteMGAlgebra, identity: &Identity) -> Option<Counterexample> {
    check_identity_with_budget(algebra, identity, Config::default().identity_budget)
        .expect("identity check exceeded the default budget")
}

/// Returns the first failing assignment in lexicographic order (first
/// variable most significant, elements by index), or `None` if the identity
/// holds. Work is split on the first variable; the lowest failing branch
/// wins, so the answer does not depend on scheduling.
pub fn check_identity_with_budget(
    algebra: &FiniteMGAlgebra,
    identity: &Identity,
    budget: u64,
) -> Result<Option<Counterexample>, TermError> {
    let vars = identity.variables();
    let n = algebra.size();
    let needed = (n as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(TermError::BudgetExceeded { needed, budget });
    }
    let lhs = Program::compile(&identity.lhs, &vars)?;
    let rhs = Program::compile(&identity.rhs, &vars)?;
    let k = vars.len();
    let scan = |first: Option<Elem>| -> Option<(Vec<Elem>, Elem, Elem)> {
        let mut values = vec![0; k];
        let start = usize::from(first.is_some());
        if let Some(f) = first {
            values[0] = f;
        }
        let mut stack = Vec::with_capacity(lhs.stack_depth().max(rhs.stack_depth()));
        loop {
            let l = lhs.run(algebra, &values, &mut stack);
            let r = rhs.run(algebra, &values, &mut stack);
            if l != r {
                return Some((values, l, r));
            }
            // Odometer over slots start..k, last slot fastest.
            let mut i = k;
            loop {
                if i == start {
                    return None;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < n {
                    break;
                }
                values[i] = 0;
            }
        }
    };
    let found = if k == 0 || (n as u128).pow(k as u32) < 4096 {
        scan(None)
    } else {
        (0..n).into_par_iter().find_map_first(|f| scan(Some(f)))
    };
    Ok(found.map(|(values, lhs, rhs)| Counterexample {
        assignment: vars.into_iter().zip(values).collect(),
        lhs,
        rhs,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::terms::{parse_identity, parse_term};

    fn chain(n: usize, image: &[Elem]) -> FiniteMGAlgebra {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_algebra(n, &pairs, image).unwrap()
    }

    fn at(pairs: &[(&str, Elem)]) -> HashMap<String, Elem> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn evaluation_examples() {
        let c11 = chain(3, &[0, 2]);
        assert_eq!(eval_term(&c11, &parse_term("A x").unwrap(), &at(&[("x", 1)])).unwrap(), 0);
        assert_eq!(eval_term(&c11, &parse_term("E 1").unwrap(), &at(&[])).unwrap(), 2);
        let c201 = chain(4, &[0, 1, 3]);
        assert_eq!(eval_term(&c201, &parse_term("!!x").unwrap(), &at(&[("x", 1)])).unwrap(), 3);
        assert_eq!(
            eval_term(&c201, &parse_term("x & y").unwrap(), &at(&[("x", 1)])).unwrap_err(),
            TermError::UnboundVariable("y".into())
        );
    }

    #[test]
    fn height_two_counterexample_on_three_chain() {
        let c = chain(3, &[0, 2]);
        let id = parse_identity("(x1 -> x2) | (x2 -> x3) = 1").unwrap();
        let cx = check_identity(&c, &id).unwrap();
        let expected: Vec<(String, Elem)> = vec![("x1".into(), 2), ("x2".into(), 1), ("x3".into(), 0)];
        assert_eq!(cx.assignment, expected);
        assert_eq!((cx.lhs, cx.rhs), (1, 2));
    }

    #[test]
    fn excluded_middle_on_two_elements() {
        let two = chain(2, &[0, 1]);
        assert!(check_identity(&two, &parse_identity("x | !x = 1").unwrap()).is_none());
    }

    #[test]
    fn natural_variable_order() {
        let id = parse_identity("x10 | x2 = x2 | x10").unwrap();
        assert_eq!(id.variables(), vec!["x2".to_string(), "x10".to_string()]);
    }

    #[test]
    fn parallel_split_keeps_first_counterexample() {
        // 6^6 assignments: large enough for the parallel path.
        let c = chain(6, &[0, 5]);
        let id = parse_identity("(x1 -> x2) | (x2 -> x3) | (x3 -> x4) | (x4 -> x5) | (x5 -> x6) = 1").unwrap();
        let cx = check_identity(&c, &id).unwrap();
        let values: Vec<Elem> = cx.assignment.iter().map(|(_, v)| *v).collect();
        assert_eq!(values, vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(cx.lhs, 4);
    }

    #[test]
    fn budget_is_enforced() {
        let c = chain(5, &[0, 4]);
        let id = parse_identity("x1 | x2 | x3 = x3 | x2 | x1").unwrap();
        assert_eq!(
            check_identity_with_budget(&c, &id, 100).unwrap_err(),
            TermError::BudgetExceeded { needed: 125, budget: 100 }
        );
    }
}
