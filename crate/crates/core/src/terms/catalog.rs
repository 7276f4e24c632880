//! Named identities: the axioms, the width and height equations, the
//! quantifier laws and the discriminator term.

use super::parse::{parse_identity, parse_term};
use super::{Identity, Term, TermError};

fn fixed(name: &str, text: &str) -> Identity {
    let mut id = parse_identity(text).expect("catalog entries parse");
    id.name = name.to_string();
    id
}

fn x(i: usize) -> Term {
    Term::Var(format!("x{i}"))
}

/// Several equations folded into one: `⋀ (l_i ↔ r_i) ≈ 1`.
fn conjunction(name: &str, parts: &[(&str, &str)]) -> Identity {
    let terms = parts
        .iter()
        .map(|(l, r)| Term::biimp(parse_term(l).unwrap(), parse_term(r).unwrap()))
        .collect();
    Identity::holds(name, Term::meet_all(terms))
}

/// M1 to M5 in order.
pub fn axioms() -> Vec<Identity> {
    vec![
        fixed("M1", "A x -> x = 1"),
        fixed("M2", "A(x -> A y) = E x -> A y"),
        fixed("M3", "A(A x -> y) = A x -> A y"),
        fixed("M4", "A(E x | y) = E x | A y"),
        fixed("M5", "E(x * x) = E x * E x"),
    ]
}

pub fn prelinearity() -> Identity {
    fixed("prelinearity", "(x -> y) | (y -> x) = 1")
}

/// `⋀_{i<j} ∀(x_i ∨ x_j) → ⋁_i ∀x_i ≈ 1` over `x_1..x_{k+1}`.
pub fn alpha(k: usize) -> Result<Identity, TermError> {
    if k == 0 {
        return Err(TermError::BadParameter { name: "alpha".into(), value: k });
    }
    let mut pairs = Vec::new();
    for i in 1..=k + 1 {
        for j in i + 1..=k + 1 {
            pairs.push(Term::forall(Term::join(x(i), x(j))));
        }
    }
    let joins = (1..=k + 1).map(|i| Term::forall(x(i))).collect();
    Ok(Identity::holds(format!("alpha_{k}"), Term::imp(Term::meet_all(pairs), Term::join_all(joins))))
}

/// `⋁_{i=1}^{n} (x_i → x_{i+1}) ≈ 1`.
pub fn h_height(n: usize) -> Result<Identity, TermError> {
    if n < 2 {
        return Err(TermError::BadParameter { name: "H".into(), value: n });
    }
    let terms = (1..=n).map(|i| Term::imp(x(i), x(i + 1))).collect();
    Ok(Identity::holds(format!("H_{n}"), Term::join_all(terms)))
}

/// `⋁_{i=1}^{n} (∃x_i → ∃x_{i+1}) ≈ 1`.
pub fn h_exists(n: usize) -> Result<Identity, TermError> {
    if n < 2 {
        return Err(TermError::BadParameter { name: "HE".into(), value: n });
    }
    let terms = (1..=n)
        .map(|i| Term::imp(Term::exists(x(i)), Term::exists(x(i + 1))))
        .collect();
    Ok(Identity::holds(format!("HE_{n}"), Term::join_all(terms)))
}

/// The fourteen quantifier laws, `L1` to `L14`. Image elements `c` are
/// written `E z`, inequalities `a ≤ b` as `a → b ≈ 1`, and monotonicity
/// uses `b := x ∨ y`.
pub fn lemma_laws() -> Vec<Identity> {
    vec![
        conjunction("L1", &[("A 1", "1"), ("E 1", "1"), ("A 0", "0"), ("E 0", "0")]),
        conjunction("L2", &[("A E z", "E z"), ("E E z", "E z")]),
        fixed("L3", "(A x -> x) & (x -> E x) = 1"),
        fixed("L4", "(A x -> A(x | y)) & (E x -> E(x | y)) = 1"),
        fixed("L5", "A(x | E z) = A x | E z"),
        fixed("L6", "E(x | y) = E x | E y"),
        fixed("L7", "A(x & y) = A x & A y"),
        fixed("L8", "E(x & E z) = E x & E z"),
        fixed("L9", "A(x -> E z) = E x -> E z"),
        fixed("L10", "E(x -> E z) -> (A x -> E z) = 1"),
        fixed("L11", "A(E z -> x) = E z -> A x"),
        fixed("L12", "E(E z -> x) -> (E z -> E x) = 1"),
        fixed("L13", "A !x = !E x"),
        fixed("L14", "E !x -> !A x = 1"),
    ]
}

/// `t(x,y,z) = (∀((x→y)∧(y→x)) ∧ z) ∨ (¬∀((x→y)∧(y→x)) ∧ x)`.
pub fn discriminator() -> Term {
    parse_term("(A((x -> y) & (y -> x)) & z) | (!A((x -> y) & (y -> x)) & x)").expect("parses")
}

/// Looks up an identity by family name and parameter. Names: `M1`..`M6`,
/// `prelinearity`, `alpha` (k ≥ 1), `H` and `HE` (n ≥ 2), `L1`..`L14`.
pub fn catalog(name: &str, param: Option<usize>) -> Result<Identity, TermError> {
    let needs = |p: Option<usize>| p.ok_or_else(|| TermError::BadParameter { name: name.into(), value: 0 });
    match name {
        "M1" | "M2" | "M3" | "M4" | "M5" => {
            let i: usize = name[1..].parse().unwrap();
            Ok(axioms().swap_remove(i - 1))
        }
        "M6" => Ok(fixed("M6", "A(x | y) = A x | A y")),
        "prelinearity" => Ok(prelinearity()),
        "alpha" => alpha(needs(param)?),
        "H" => h_height(needs(param)?),
        "HE" => h_exists(needs(param)?),
        _ => {
            if let Some(i) = name.strip_prefix('L').and_then(|d| d.parse::<usize>().ok()) {
                if (1..=14).contains(&i) {
                    return Ok(lemma_laws().swap_remove(i - 1));
                }
            }
            Err(TermError::UnknownName(name.to_string()))
        }
    }
}

/// Accepts labels such as `M3`, `alpha_2`, `H_4`, `HE_3`.
pub fn catalog_by_label(label: &str) -> Result<Identity, TermError> {
    match label.rsplit_once('_') {
        Some((name, p)) => {
            let value = p.parse().map_err(|_| TermError::UnknownName(label.to_string()))?;
            catalog(name, Some(value))
        }
        None => catalog(label, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_one_shape() {
        let a1 = alpha(1).unwrap();
        assert_eq!(a1.to_string(), "A (x1 | x2) -> A x1 | A x2 = 1");
        assert_eq!(a1.variables().len(), 2);
        assert_eq!(alpha(3).unwrap().variables().len(), 4);
    }

    #[test]
    fn height_shapes() {
        assert_eq!(h_height(2).unwrap().to_string(), "(x1 -> x2) | (x2 -> x3) = 1");
        assert_eq!(h_exists(3).unwrap().variables().len(), 4);
        assert!(h_height(1).is_err());
    }

    #[test]
    fn lookups() {
        assert_eq!(catalog("M1", None).unwrap().to_string(), "A x -> x = 1");
        assert_eq!(catalog_by_label("alpha_2").unwrap().name, "alpha_2");
        assert_eq!(catalog_by_label("L13").unwrap().name, "L13");
        assert_eq!(catalog("L15", None).unwrap_err(), TermError::UnknownName("L15".into()));
        assert!(matches!(catalog("alpha", None), Err(TermError::BadParameter { .. })));
        assert_eq!(lemma_laws().len(), 14);
    }
}
