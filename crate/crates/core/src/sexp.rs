//! Minimal s-expression reader with source positions, shared by the problem
//! and proof-file parsers.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Span),
    List(Vec<Sexp>, Span),
}

impl Sexp {
    pub fn span(&self) -> Span {
        match self {
            Sexp::Atom(_, s) | Sexp::List(_, s) => *s,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// `(head ...)` with an atom in head position.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }
}

/// Single-line rendering with single spaces.
impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a, _) => write!(f, "{a}"),
            Sexp::List(items, _) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{span}: {message}")]
pub struct SexpError {
    pub span: Span,
    pub message: String,
}

/// Reads every top-level expression. `;` starts a comment running to end of line.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut stack: Vec<(Vec<Sexp>, Span)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let here = Span { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let (items, span) = stack.pop().ok_or_else(|| SexpError {
                    span: here,
                    message: "unbalanced `)`".into(),
                })?;
                let node = Sexp::List(items, span);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                    col += 1;
                }
                let node = Sexp::Atom(word, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
        }
    }
    if let Some((_, span)) = stack.pop() {
        return Err(SexpError {
            span,
            message: "unclosed `(`".into(),
        });
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let es = parse_all("(a (b c))\n ; note\n (d )").unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].to_string(), "(a (b c))");
        assert_eq!(es[1].span(), Span { line: 3, col: 2 });
        assert_eq!(es[1].to_string(), "(d)");
    }

    #[test]
    fn unicode_atoms() {
        let es = parse_all("(declare-sort 𝔽 0)").unwrap();
        assert_eq!(es[0].as_list().unwrap()[1].as_atom(), Some("𝔽"));
    }

    #[test]
    fn unbalanced() {
        assert!(parse_all("(a").is_err());
        assert!(parse_all("a)").is_err());
    }
}
