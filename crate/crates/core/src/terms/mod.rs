//! Terms over ∧, ∨, →, ¬, ∃, ∀, 0, 1, their evaluation in finite algebras
//! and exhaustive identity checking.

mod catalog;
mod eval;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub use catalog::{
    alpha, axioms, catalog, catalog_by_label, discriminator, h_exists, h_height, lemma_laws, prelinearity,
};
pub use eval::{check_identity, check_identity_with_budget, eval_term, Counterexample, Program};
pub use parse::{parse_identity, parse_term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable {0} has no value")]
    UnboundVariable(String),
    #[error("unknown catalog entry {0}")]
    UnknownName(String),
    #[error("parameter {value} out of range for {name}")]
    BadParameter { name: String, value: usize },
    #[error("identity check needs {needed} assignments, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
    /// Abbreviates `t → 0`.
    Not(Box<Term>),
    Exists(Box<Term>),
    Forall(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Term, b: Term) -> Term {
        Term::Imp(Box::new(a), Box::new(b))
    }

    pub fn not(a: Term) -> Term {
        Term::Not(Box::new(a))
    }

    pub fn exists(a: Term) -> Term {
        Term::Exists(Box::new(a))
    }

    pub fn forall(a: Term) -> Term {
        Term::Forall(Box::new(a))
    }

    /// `(a → b) ∧ (b → a)`
    pub fn biimp(a: Term, b: Term) -> Term {
        Term::meet(Term::imp(a.clone(), b.clone()), Term::imp(b, a))
    }

    /// Meet of a nonempty list, associated to the left; `1` when empty.
    pub fn meet_all(items: Vec<Term>) -> Term {
        items.into_iter().reduce(Term::meet).unwrap_or(Term::One)
    }

    /// Join of a nonempty list, associated to the left; `0` when empty.
    pub fn join_all(items: Vec<Term>) -> Term {
        items.into_iter().reduce(Term::join).unwrap_or(Term::Zero)
    }

    /// Distinct variable names in natural order (`x2` before `x10`).
    pub fn variables(&self) -> Vec<String> {
        let mut names = Vec::new();
        self.collect_variables(&mut names);
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        names
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
            Term::Not(a) | Term::Exists(a) | Term::Forall(a) => a.collect_variables(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Imp(..) => 1,
            Term::Join(..) => 2,
            Term::Meet(..) => 3,
            _ => 4,
        }
    }
}

/// Orders names by alphabetic prefix, then by numeric suffix as a number.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (prefix, digits) = s.split_at(cut);
        (prefix, digits.parse().ok())
    }
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, t: &Term, min: u8| {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Meet(a, b) => {
                wrap(f, a, 3)?;
                write!(f, " & ")?;
                wrap(f, b, 4)
            }
            Term::Join(a, b) => {
                wrap(f, a, 2)?;
                write!(f, " | ")?;
                wrap(f, b, 3)
            }
            Term::Imp(a, b) => {
                wrap(f, a, 2)?;
                write!(f, " -> ")?;
                wrap(f, b, 1)
            }
            Term::Not(a) => {
                write!(f, "!")?;
                wrap(f, a, 4)
            }
            Term::Exists(a) => {
                write!(f, "E ")?;
                wrap(f, a, 4)
            }
            Term::Forall(a) => {
                write!(f, "A ")?;
                wrap(f, a, 4)
            }
        }
    }
}

/// An equation `lhs ≈ rhs` with a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        Identity { name: name.into(), lhs, rhs }
    }

    /// `t ≈ 1`
    pub fn holds(name: impl Into<String>, t: Term) -> Self {
        Identity::new(name, t, Term::One)
    }

    /// Variables of both sides in natural order.
    pub fn variables(&self) -> Vec<String> {
        let mut names = self.lhs.variables();
        names.extend(self.rhs.variables());
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        names
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
