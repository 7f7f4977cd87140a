//! Minimal s-expression reader shared by the sheaf and space parsers.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unbalanced ')' at byte {0}")]
    Unbalanced(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
    #[error("expected {expected}, found `{found}`")]
    Expected { expected: String, found: String },
    #[error("bad integer `{0}`")]
    Int(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("{0}")]
    Invalid(String),
}

impl SExpr {
    pub fn atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a) => Some(a),
            SExpr::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(v) => Some(v),
            SExpr::Atom(_) => None,
        }
    }

    /// The head atom of a list form.
    pub fn head(&self) -> Option<&str> {
        self.list()?.first()?.atom()
    }

    pub fn int(&self) -> Result<i64, ParseError> {
        let a =
            self.atom().ok_or_else(|| ParseError::Expected { expected: "integer".into(), found: self.to_string() })?;
        a.parse::<i64>().map_err(|_| ParseError::Int(a.to_string()))
    }

    pub fn uint(&self) -> Result<u64, ParseError> {
        let v = self.int()?;
        u64::try_from(v).map_err(|_| ParseError::Int(v.to_string()))
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(a) => write!(f, "{a}"),
            SExpr::List(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn tokenize(src: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
            if !ch.is_whitespace() {
                out.push((i, ch.to_string()));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

/// Parse exactly one expression.
pub fn parse(src: &str) -> Result<SExpr, ParseError> {
    let toks = tokenize(src);
    let mut pos = 0;
    let e = read(&toks, &mut pos)?;
    if pos < toks.len() {
        return Err(ParseError::Trailing(toks[pos].0));
    }
    Ok(e)
}

/// Parse a whitespace-separated sequence of expressions.
pub fn parse_many(src: &str) -> Result<Vec<SExpr>, ParseError> {
    let toks = tokenize(src);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < toks.len() {
        out.push(read(&toks, &mut pos)?);
    }
    Ok(out)
}

fn read(toks: &[(usize, String)], pos: &mut usize) -> Result<SExpr, ParseError> {
    let (at, t) = toks.get(*pos).ok_or(ParseError::Eof)?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    None => return Err(ParseError::Eof),
                    Some((_, t)) if t == ")" => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(read(toks, pos)?),
                }
            }
        }
        ")" => Err(ParseError::Unbalanced(*at)),
        _ => Ok(SExpr::Atom(t.clone())),
    }
}
