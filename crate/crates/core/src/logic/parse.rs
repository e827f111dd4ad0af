//! Text format for proofs.
//!
//! ```text
//! # optional size declarations, default size 1
//! var X1 size 2
//! (cut (ax X1 3 97) (ex (ax X1 97 23) 0 1))
//! ```
//!
//! Unlocated proofs use `(ax X1)`.

use std::collections::BTreeMap;

use super::formula::Basis;
use super::proof::{LocAxiom, MllProof, Proof, Tree};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

#[derive(Clone, Debug)]
struct Spanned<'a> {
    token: Token<'a>,
    line: usize,
    column: usize,
}

fn tokenize<'a>(text: &'a str) -> Vec<Spanned<'a>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut word: Option<(usize, usize)> = None;
        let flush = |word: &mut Option<(usize, usize)>, end: usize, out: &mut Vec<Spanned<'a>>| {
            if let Some((col, start)) = word.take() {
                out.push(Spanned {
                    token: Token::Word(&body[start..end]),
                    line: i + 1,
                    column: col + 1,
                });
            }
        };
        for (col, (byte, ch)) in body.char_indices().enumerate() {
            if ch.is_whitespace() || ch == '(' || ch == ')' {
                flush(&mut word, byte, &mut out);
                let token = match ch {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => continue,
                };
                out.push(Spanned {
                    token,
                    line: i + 1,
                    column: col + 1,
                });
            } else if word.is_none() {
                word = Some((col, byte));
            }
        }
        flush(&mut word, body.len(), &mut out);
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Spanned<'a>>,
    at: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Self {
            tokens: tokenize(text),
            at: 0,
            end: (lines, last + 1),
        }
    }

    fn peek(&self) -> Option<&Spanned<'a>> {
        self.tokens.get(self.at)
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.peek().map_or(self.end, |t| (t.line, t.column));
        Error::parse(line, column, message)
    }

    fn next(&mut self, what: &str) -> Result<Spanned<'a>> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error_here(format!("expected {what}, found end of input")))?;
        self.at += 1;
        Ok(t)
    }

    fn word(&mut self, what: &str) -> Result<(&'a str, usize, usize)> {
        let t = self.next(what)?;
        match t.token {
            Token::Word(w) => Ok((w, t.line, t.column)),
            _ => Err(Error::parse(t.line, t.column, format!("expected {what}"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let (w, line, column) = self.word(what)?;
        w.parse()
            .map_err(|_| Error::parse(line, column, format!("expected {what}, found `{w}`")))
    }

    fn close(&mut self) -> Result<()> {
        let t = self.next("`)`")?;
        match t.token {
            Token::Close => Ok(()),
            _ => Err(Error::parse(t.line, t.column, "expected `)`")),
        }
    }

    fn declarations(&mut self) -> Result<BTreeMap<String, u64>> {
        let mut sizes = BTreeMap::new();
        while matches!(
            self.peek(),
            Some(Spanned {
                token: Token::Word("var"),
                ..
            })
        ) {
            self.at += 1;
            let (name, line, column) = self.word("variable name")?;
            let (kw, kl, kc) = self.word("`size`")?;
            if kw != "size" {
                return Err(Error::parse(
                    kl,
                    kc,
                    format!("expected `size`, found `{kw}`"),
                ));
            }
            let (n, nl, nc) = self.word("size")?;
            let size: u64 = n.parse().ok().filter(|&s| s > 0).ok_or_else(|| {
                Error::parse(nl, nc, format!("expected a positive size, found `{n}`"))
            })?;
            if sizes.insert(name.to_string(), size).is_some() {
                return Err(Error::parse(
                    line,
                    column,
                    format!("variable {name} declared twice"),
                ));
            }
        }
        Ok(sizes)
    }

    fn tree<A>(&mut self, axiom: &mut impl FnMut(&mut Self) -> Result<A>) -> Result<Tree<A>> {
        let open = self.next("`(`")?;
        if open.token != Token::Open {
            return Err(Error::parse(open.line, open.column, "expected `(`"));
        }
        let (kw, line, column) = self.word("rule name")?;
        let t = match kw {
            "ax" => Tree::Ax(axiom(self)?),
            "one" => Tree::One,
            "bot" => Tree::bot(self.tree(axiom)?),
            "par" => Tree::par(self.tree(axiom)?),
            "tensor" | "cut" | "mix" => {
                let p = self.tree(axiom)?;
                let q = self.tree(axiom)?;
                match kw {
                    "tensor" => Tree::tensor(p, q),
                    "cut" => Tree::cut(p, q),
                    _ => Tree::mix(p, q),
                }
            }
            "ex" => {
                let p = self.tree(axiom)?;
                let i = self.number("position")?;
                let j = self.number("position")?;
                Tree::ex(p, i, j)
            }
            other => {
                return Err(Error::parse(
                    line,
                    column,
                    format!("unknown rule `{other}`"),
                ))
            }
        };
        self.close()?;
        Ok(t)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error_here("unexpected input after the proof")),
        }
    }
}

/// A parsed located proof with the basis built from its declarations.
#[derive(Clone, Debug)]
pub struct ProofFile {
    pub proof: Proof,
    pub basis: Basis,
}

pub fn parse_proof(text: &str) -> Result<ProofFile> {
    let mut parser = Parser::new(text);
    let sizes = parser.declarations()?;
    let proof = parser.tree(&mut |p: &mut Parser<'_>| {
        let (name, ..) = p.word("variable name")?;
        let pos = p.number("position")?;
        let neg = p.number("position")?;
        Ok(LocAxiom::new(name, pos, neg))
    })?;
    parser.finish()?;
    let basis = Basis::new(proof.axioms().iter().map(|a| a.name.as_str()), &sizes);
    Ok(ProofFile { proof, basis })
}

/// Writes a proof with a declaration for every name of `basis`, so that
/// reparsing gives the same indices and sizes.
pub fn write_proof(proof: &Proof, basis: &Basis) -> String {
    let mut out = String::new();
    for (name, info) in basis.names() {
        out.push_str(&format!("var {name} size {}\n", info.size));
    }
    out.push_str(&format!("{proof}\n"));
    out
}

pub fn parse_mll_proof(text: &str) -> Result<MllProof> {
    let mut parser = Parser::new(text);
    let proof =
        parser.tree(&mut |p: &mut Parser<'_>| Ok(p.word("variable name")?.0.to_string()))?;
    parser.finish()?;
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "var X1 size 2\n# a cut\n(cut (ax X1 3 97)\n  (ex (ax X1 97 23) 0 1))\n";
        let file = parse_proof(text).unwrap();
        assert_eq!(
            file.proof.to_string(),
            "(cut (ax X1 3 97) (ex (ax X1 97 23) 0 1))"
        );
        assert_eq!(file.basis.get("X1").unwrap().size, 2);
        assert_eq!(
            parse_proof(&file.proof.to_string()).unwrap().proof,
            file.proof
        );
    }

    #[test]
    fn error_positions() {
        match parse_proof("(tensor (ax X1 0 1)\n (foo))").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("{e}"),
        }
        match parse_proof("(ax X1 0 x)").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 10)),
            e => panic!("{e}"),
        }
        assert!(parse_proof("(one) (one)").is_err());
        assert!(parse_proof("(par (one)").is_err());
        assert!(parse_proof("var X1 size 0\n(one)").is_err());
    }

    #[test]
    fn written_files_reparse() {
        let file = parse_proof("var Y size 3\n(tensor (ax Y 0 1) (ax X4 0 1))").unwrap();
        let text = write_proof(&file.proof, &file.basis);
        assert_eq!(
            text,
            "var X4 size 1\nvar Y size 3\n(tensor (ax Y 0 1) (ax X4 0 1))\n"
        );
        let again = parse_proof(&text).unwrap();
        assert_eq!(again.proof, file.proof);
        assert_eq!(again.basis, file.basis);
    }

    #[test]
    fn unlocated() {
        let p = parse_mll_proof("(tensor (ax A) (ax B))").unwrap();
        assert_eq!(p.to_string(), "(tensor (ax A) (ax B))");
    }
}
