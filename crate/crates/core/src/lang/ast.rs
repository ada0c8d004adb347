//! Rule syntax trees, stored as a preorder sequence of productions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::grammar::{Nonterminal, Production, Side};

/// A derivation from `R`, flattened in preorder.
///
/// Each production's arity is fixed, so the flat sequence determines the
/// tree. Subtrees are contiguous ranges, which makes splicing and hashing
/// cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleAst {
    nodes: Vec<Production>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("rule parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// End (exclusive) of the subtree rooted at `start`.
pub fn subtree_end(nodes: &[Production], start: usize) -> usize {
    let mut pending = 1usize;
    let mut i = start;
    while pending > 0 {
        pending = pending - 1 + nodes[i].arity();
        i += 1;
    }
    i
}

/// Checks that `nodes` is exactly one well-typed derivation of `root`.
pub fn is_derivation(nodes: &[Production], root: Nonterminal) -> bool {
    let mut stack = vec![root];
    for p in nodes {
        match stack.pop() {
            Some(nt) if nt == p.nonterminal() => stack.extend(p.children().iter().rev()),
            _ => return false,
        }
    }
    stack.is_empty()
}

impl RuleAst {
    /// Wraps a preorder production sequence, checking it derives from `R`.
    pub fn from_preorder(nodes: Vec<Production>) -> Option<RuleAst> {
        is_derivation(&nodes, Nonterminal::R).then_some(RuleAst { nodes })
    }

    /// A rule with the given side and S-body (given in preorder).
    pub fn with_body(side: Side, body: &[Production]) -> Option<RuleAst> {
        let root = match side {
            Side::Left => Production::Left,
            Side::Right => Production::Right,
        };
        let mut nodes = Vec::with_capacity(body.len() + 1);
        nodes.push(root);
        nodes.extend_from_slice(body);
        RuleAst::from_preorder(nodes)
    }

    pub fn parse(text: &str) -> Result<RuleAst, ParseError> {
        Parser::new(text).rule()
    }

    pub fn nodes(&self) -> &[Production] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn side(&self) -> Side {
        self.nodes[0].side().expect("rules start with a side")
    }

    /// The S-expression under the side selector.
    pub fn body(&self) -> &[Production] {
        &self.nodes[1..]
    }

    pub fn subtree_end(&self, start: usize) -> usize {
        subtree_end(&self.nodes, start)
    }

    pub fn subtree(&self, start: usize) -> &[Production] {
        &self.nodes[start..self.subtree_end(start)]
    }

    /// Copy with the subtree at `start` replaced by `replacement`, which must
    /// derive from the same nonterminal.
    pub fn replace_subtree(&self, start: usize, replacement: &[Production]) -> RuleAst {
        debug_assert!(is_derivation(replacement, self.nodes[start].nonterminal()));
        let end = self.subtree_end(start);
        let mut nodes = Vec::with_capacity(self.nodes.len() - (end - start) + replacement.len());
        nodes.extend_from_slice(&self.nodes[..start]);
        nodes.extend_from_slice(replacement);
        nodes.extend_from_slice(&self.nodes[end..]);
        RuleAst { nodes }
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Production], i: usize) -> (usize, usize) {
            let mut next = i + 1;
            let mut deepest = 0;
            for _ in 0..nodes[i].arity() {
                let (d, n) = walk(nodes, next);
                deepest = deepest.max(d);
                next = n;
            }
            (deepest + 1, next)
        }
        walk(&self.nodes, 0).0
    }

    /// The same body under the other side selector.
    pub fn mirrored(&self) -> RuleAst {
        let mut nodes = self.nodes.clone();
        nodes[0] = match nodes[0] {
            Production::Left => Production::Right,
            _ => Production::Left,
        };
        RuleAst { nodes }
    }

    /// Canonical text of the body alone, e.g. `EXISTS(FIGURES)`.
    pub fn body_text(&self) -> String {
        let mut out = String::new();
        write_expr(&self.nodes, 1, &mut out);
        out
    }
}

fn write_expr(nodes: &[Production], i: usize, out: &mut String) -> usize {
    let p = nodes[i];
    out.push_str(p.name());
    let mut next = i + 1;
    if p.arity() > 0 {
        out.push('(');
        for k in 0..p.arity() {
            if k > 0 {
                out.push(',');
            }
            next = write_expr(nodes, next, out);
        }
        out.push(')');
    }
    next
}

impl fmt::Display for RuleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side(), self.body_text())
    }
}

impl FromStr for RuleAst {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleAst::parse(s)
    }
}

impl Serialize for RuleAst {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleAst {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        RuleAst::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Word(String),
    Open,
    Close,
    Comma,
    Colon,
    End,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    nodes: Vec<Production>,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let tok = match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '(' => Token::Open,
                ')' => Token::Close,
                ',' => Token::Comma,
                ':' => Token::Colon,
                c if c.is_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    tokens.push((Token::Word(chars[start..i].iter().collect()), column));
                    continue;
                }
                other => Token::Word(other.to_string()),
            };
            tokens.push((tok, column));
            i += 1;
        }
        tokens.push((Token::End, chars.len() + 1));
        Parser {
            tokens,
            pos: 0,
            nodes: Vec::new(),
        }
    }

    fn peek(&self) -> &(Token, usize) {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        let (tok, column) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Self::error(column, format!("expected {what}, found {}", describe(&tok)))
        }
    }

    fn rule(mut self) -> Result<RuleAst, ParseError> {
        let (tok, column) = self.bump();
        let side = match &tok {
            Token::Word(w) => match Production::from_name(w) {
                Some(p @ (Production::Left | Production::Right)) => p,
                _ => return Self::error(column, format!("expected LEFT or RIGHT, found {}", describe(&tok))),
            },
            _ => return Self::error(column, format!("expected LEFT or RIGHT, found {}", describe(&tok))),
        };
        self.nodes.push(side);
        self.expect(Token::Colon, "':' after the side")?;
        self.expr(Nonterminal::S)?;
        let (tok, column) = self.bump();
        if tok != Token::End {
            return Self::error(column, format!("unexpected {} after the rule", describe(&tok)));
        }
        Ok(RuleAst { nodes: self.nodes })
    }

    fn expr(&mut self, want: Nonterminal) -> Result<(), ParseError> {
        let (tok, column) = self.bump();
        let Token::Word(word) = &tok else {
            return Self::error(
                column,
                format!("expected {} expression, found {}", want, describe(&tok)),
            );
        };
        let p = if word.chars().all(|c| c.is_ascii_digit()) {
            if want != Nonterminal::N {
                return Self::error(column, format!("number {word} where {want} expression expected"));
            }
            match word
                .parse::<u64>()
                .ok()
                .and_then(|n| Production::all().find(|p| p.count() == Some(n as usize)))
            {
                Some(p) => p,
                None => return Self::error(column, format!("count {word} outside 1..4")),
            }
        } else {
            match Production::from_name(word) {
                Some(p) => p,
                None => return Self::error(column, format!("unknown functor {word}")),
            }
        };
        if p.nonterminal() != want {
            return Self::error(
                column,
                format!(
                    "{} is a {} symbol but {} is expected here",
                    p.name(),
                    p.nonterminal(),
                    want
                ),
            );
        }
        self.nodes.push(p);
        let children = p.children();
        if children.is_empty() {
            if self.peek().0 == Token::Open {
                return Self::error(self.peek().1, format!("{} takes no arguments", p.name()));
            }
            return Ok(());
        }
        self.expect(Token::Open, &format!("'(' after {}", p.name()))?;
        for (k, &child) in children.iter().enumerate() {
            if k > 0 {
                let (tok, column) = self.bump();
                if tok != Token::Comma {
                    return Self::error(
                        column,
                        format!(
                            "{} expects {} arguments, found {}",
                            p.name(),
                            children.len(),
                            describe(&tok)
                        ),
                    );
                }
            }
            if self.peek().0 == Token::Close {
                return Self::error(
                    self.peek().1,
                    format!("{} expects {} arguments, got {}", p.name(), children.len(), k),
                );
            }
            self.expr(child)?;
        }
        let (tok, column) = self.bump();
        if tok != Token::Close {
            return Self::error(
                column,
                format!(
                    "{} expects {} arguments, found {}",
                    p.name(),
                    children.len(),
                    describe(&tok)
                ),
            );
        }
        Ok(())
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Word(w) => format!("'{w}'"),
        Token::Open => "'('".into(),
        Token::Close => "')'".into(),
        Token::Comma => "','".into(),
        Token::Colon => "':'".into(),
        Token::End => "end of input".into(),
    }
}
