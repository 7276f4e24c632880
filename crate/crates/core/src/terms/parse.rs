//! Recursive-descent parser.
//!
//! ```text
//! identity := term ('=' | '≈') term
//! term     := join ('->' term)?
//! join     := meet ('|' meet)*
//! meet     := unary ('&' unary)*
//! unary    := ('!' | 'E' | 'A') unary | atom
//! atom     := var | '0' | '1' | '(' term ')'
//! ```
//!
//! `*` and `∧` are accepted for `&`, `∨` for `|`, `→` for `->`, `¬` for
//! `!`, and `∃`/`∀` for `E`/`A`.

use super::{Identity, Term, TermError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Var(String),
    Zero,
    One,
    Meet,
    Join,
    Imp,
    Not,
    Exists,
    Forall,
    Open,
    Close,
    Equals,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, TermError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let single = match c {
            '&' | '*' | '∧' => Some(Token::Meet),
            '|' | '∨' => Some(Token::Join),
            '→' => Some(Token::Imp),
            '!' | '¬' => Some(Token::Not),
            'E' | '∃' => Some(Token::Exists),
            'A' | '∀' => Some(Token::Forall),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '=' | '≈' => Some(Token::Equals),
            '0' => Some(Token::Zero),
            '1' => Some(Token::One),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            if matches!(tok, Token::Zero | Token::One)
                && chars.peek().is_some_and(|&(_, d)| d.is_ascii_alphanumeric())
            {
                return Err(TermError::Syntax { position: pos, message: "malformed constant".into() });
            }
            tokens.push((pos, tok));
            continue;
        }
        if c.is_whitespace() {
            chars.next();
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => tokens.push((pos, Token::Imp)),
                _ => return Err(TermError::Syntax { position: pos, message: "expected '->'".into() }),
            }
        } else if c.is_ascii_lowercase() {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_lowercase() || d.is_ascii_digit() {
                    name.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push((pos, Token::Var(name)));
        } else {
            return Err(TermError::Syntax { position: pos, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: &str) -> Result<T, TermError> {
        Err(TermError::Syntax { position: self.position(), message: message.into() })
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.index += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let lhs = self.join()?;
        if self.eat(&Token::Imp) {
            Ok(Term::imp(lhs, self.term()?))
        } else {
            Ok(lhs)
        }
    }

    fn join(&mut self) -> Result<Term, TermError> {
        let mut acc = self.meet()?;
        while self.eat(&Token::Join) {
            acc = Term::join(acc, self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Term, TermError> {
        let mut acc = self.unary()?;
        while self.eat(&Token::Meet) {
            acc = Term::meet(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        if self.eat(&Token::Not) {
            return Ok(Term::not(self.unary()?));
        }
        if self.eat(&Token::Exists) {
            return Ok(Term::exists(self.unary()?));
        }
        if self.eat(&Token::Forall) {
            return Ok(Term::forall(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        self.index += 1;
        match tok {
            Token::Var(name) => Ok(Term::Var(name)),
            Token::Zero => Ok(Term::Zero),
            Token::One => Ok(Term::One),
            Token::Open => {
                let inner = self.term()?;
                if !self.eat(&Token::Close) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            _ => {
                self.index -= 1;
                self.error("expected a variable, constant or '('")
            }
        }
    }
}

fn parser(text: &str) -> Result<Parser, TermError> {
    Ok(Parser { tokens: tokenize(text)?, index: 0, end: text.len() })
}

pub fn parse_term(text: &str) -> Result<Term, TermError> {
    let mut p = parser(text)?;
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(t)
}

/// Parses `lhs = rhs`; the identity is labelled with the input text.
pub fn parse_identity(text: &str) -> Result<Identity, TermError> {
    let mut p = parser(text)?;
    let lhs = p.term()?;
    if !p.eat(&Token::Equals) {
        return p.error("expected '='");
    }
    let rhs = p.term()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(Identity::new(text.trim(), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn quantifier_prefixes() {
        assert_eq!(
            parse_term("A(x -> A y)").unwrap(),
            Term::forall(Term::imp(v("x"), Term::forall(v("y"))))
        );
        assert_eq!(parse_term("Ax").unwrap(), Term::forall(v("x")));
    }

    #[test]
    fn star_is_meet() {
        assert_eq!(
            parse_term("E x * E x").unwrap(),
            Term::meet(Term::exists(v("x")), Term::exists(v("x")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_term("(x -> y) | (y -> x)").unwrap(),
            Term::join(Term::imp(v("x"), v("y")), Term::imp(v("y"), v("x")))
        );
        assert_eq!(
            parse_term("x -> y -> z").unwrap(),
            Term::imp(v("x"), Term::imp(v("y"), v("z")))
        );
        assert_eq!(
            parse_term("!x & y | z -> 0").unwrap(),
            Term::imp(Term::join(Term::meet(Term::not(v("x")), v("y")), v("z")), Term::Zero)
        );
    }

    #[test]
    fn unicode_operators() {
        assert_eq!(parse_term("∀(x ∨ y)").unwrap(), parse_term("A(x | y)").unwrap());
        assert_eq!(parse_term("¬∃x → x ∧ 1").unwrap(), parse_term("!E x -> x & 1").unwrap());
    }

    #[test]
    fn identities() {
        let id = parse_identity("A(x|y) = Ax | Ay").unwrap();
        assert_eq!(id.lhs, Term::forall(Term::join(v("x"), v("y"))));
        assert_eq!(id.variables(), vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_term("x &").unwrap_err(),
            TermError::Syntax { position: 3, message: "unexpected end of input".into() }
        );
        assert!(matches!(parse_term("x - y"), Err(TermError::Syntax { position: 2, .. })));
        assert!(matches!(parse_term("(x"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_term("X"), Err(TermError::Syntax { position: 0, .. })));
        assert!(matches!(parse_identity("x"), Err(TermError::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["A(x -> A y)", "x -> y -> z", "(x -> y) -> z", "!(x | y) & E(z & 0)", "E !A x1"] {
            let t = parse_term(text).unwrap();
            assert_eq!(parse_term(&t.to_string()).unwrap(), t, "{text} printed as {t}");
        }
    }
}
