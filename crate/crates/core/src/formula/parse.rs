use std::collections::BTreeMap;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("relation {name} used with arity {first} and {second}")]
    ArityConflict {
        name: String,
        first: usize,
        second: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            b'=' => {
                out.push((i, Tok::Word("=".into())));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!(
                        "unexpected character {:?}",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["and", "or", "not", "implies", "exists", "forall", "="];

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    arities: BTreeMap<String, usize>,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            Some((_, Tok::Close)) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err("expected ')'"),
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Word(w))) if !KEYWORDS.contains(&w.as_str()) => {
                self.at += 1;
                Ok(w)
            }
            Some((_, Tok::Word(w))) => self.err(format!("keyword {w:?} used as a variable")),
            _ => self.err("expected a variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some(Tok::Open) => {}
            Some(_) => {
                self.at -= 1;
                return self.err("expected '('");
            }
            None => return self.err("unexpected end of input"),
        }
        let head = match self.next() {
            Some(Tok::Word(w)) => w,
            _ => {
                self.at -= 1;
                return self.err("expected an operator or relation name");
            }
        };
        let f = match head.as_str() {
            "and" | "or" | "implies" => {
                let a = self.formula()?;
                let b = self.formula()?;
                match head.as_str() {
                    "and" => Formula::and(a, b),
                    "or" => Formula::or(a, b),
                    _ => Formula::implies(a, b),
                }
            }
            "not" => Formula::not(self.formula()?),
            "exists" | "forall" => {
                let v = self.variable()?;
                let body = self.formula()?;
                if head == "exists" {
                    Formula::exists(&v, body)
                } else {
                    Formula::forall(&v, body)
                }
            }
            "=" => {
                let x = self.variable()?;
                let y = self.variable()?;
                Formula::Eq(x, y)
            }
            name => {
                let mut args = Vec::new();
                while let Some((_, Tok::Word(_))) = self.toks.get(self.at) {
                    args.push(self.variable()?);
                }
                match self.arities.get(name) {
                    Some(&first) if first != args.len() => {
                        return Err(ParseError::ArityConflict {
                            name: name.to_string(),
                            first,
                            second: args.len(),
                        })
                    }
                    _ => {
                        self.arities.insert(name.to_string(), args.len());
                    }
                }
                Formula::Rel(name.to_string(), args)
            }
        };
        self.expect_close()?;
        Ok(f)
    }
}

/// Parses one formula; trailing tokens are an error.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        arities: BTreeMap::new(),
    };
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return p.err("trailing input after formula");
    }
    Ok(f)
}
