//! Tokens, syntax tree and parser for presentation documents.

use std::fmt;

use thiserror::Error;

/// A source position, 1-based. Positions never take part in equality so
/// that a reparsed document compares equal to the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

fn error<T>(span: Span, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        span,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub span: Span,
}

impl Ident {
    pub fn new(text: impl Into<String>) -> Self {
        Ident {
            text: text.into(),
            span: Span::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Lattice(LatticeDecl),
    Cover(CoverDecl),
    Command(Command),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDecl {
    pub name: Ident,
    pub elements: Vec<Ident>,
    pub leq: Vec<(Ident, Ident)>,
    pub pos: Option<Vec<Ident>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecl {
    pub name: Ident,
    pub base: Vec<Ident>,
    pub top: Option<Ident>,
    pub meet: Vec<(Ident, Ident, Ident)>,
    pub leq: Vec<(Ident, Ident)>,
    pub axioms: Vec<(Ident, Vec<Ident>)>,
    pub pos: Option<Vec<Ident>>,
}

/// What a command operates on: a declaration or a built-in instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Name(Ident),
    Chain(u64),
    Boolean(u64),
    Discrete(Vec<Ident>),
    Cantor,
    Baire,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Name(id) => f.write_str(&id.text),
            Target::Chain(n) => write!(f, "chain({n})"),
            Target::Boolean(k) => write!(f, "boolean({k})"),
            Target::Discrete(points) => {
                let names: Vec<&str> = points.iter().map(|p| p.text.as_str()).collect();
                write!(f, "discrete({})", names.join(" "))
            }
            Target::Cantor => f.write_str("Cantor"),
            Target::Baire => f.write_str("Baire"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Overt,
    Overlap,
    FormalCover,
    Lattice,
}

impl CheckKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CheckKind::Overt => "overt",
            CheckKind::Overlap => "overlap",
            CheckKind::FormalCover => "formalcover",
            CheckKind::Lattice => "lattice",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandKind {
    Check(CheckKind),
    Booleanize,
    Congruences,
    Derive {
        goal: Ident,
        cover: Vec<Ident>,
        budget: Option<u64>,
    },
    Envelope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub target: Target,
    pub span: Span,
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self.kind {
            CommandKind::Check(_) => "check",
            CommandKind::Booleanize => "booleanize",
            CommandKind::Congruences => "congruences",
            CommandKind::Derive { .. } => "derive",
            CommandKind::Envelope => "envelope",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// Characters allowed in names, besides alphanumerics.
pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '+' | '-')
}

const SYMBOLS: [&str; 11] = ["<=", "<|", "{", "}", ";", ":", ",", "(", ")", "*", "="];

fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (row, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span { line: row + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if is_name_char(c) {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), span));
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    match *s {
                        "{" => depth += 1,
                        "}" => depth = depth.saturating_sub(1),
                        _ => {}
                    }
                    out.push((Tok::Sym(s), span));
                    i += s.chars().count();
                }
                None => return error(span, format!("unexpected character `{c}`")),
            }
        }
        if depth == 0 {
            out.push((
                Tok::Newline,
                Span {
                    line: row + 1,
                    col: chars.len() + 1,
                },
            ));
        }
    }
    let end = Span {
        line: text.lines().count().max(1),
        col: text.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.at_sym(s) {
            self.bump();
            Ok(())
        } else {
            error(self.span(), format!("expected `{s}`, found {}", self.peek()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident, SyntaxError> {
        match self.bump() {
            (Tok::Word(text), span) => Ok(Ident { text, span }),
            (t, span) => error(span, format!("expected {what}, found {t}")),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, SyntaxError> {
        let id = self.ident(what)?;
        id.text
            .parse()
            .or_else(|_| error(id.span, format!("expected {what}, found `{}`", id.text)))
    }

    /// Names up to a symbol, a line end or one of `stop`.
    fn names(&mut self, stop: &[&str]) -> Vec<Ident> {
        let mut out = Vec::new();
        while let Tok::Word(w) = self.peek() {
            if stop.contains(&w.as_str()) {
                break;
            }
            out.push(self.ident("a name").expect("peeked a word"));
        }
        out
    }

    fn end_of_field(&mut self) -> Result<(), SyntaxError> {
        if self.at_sym("}") {
            return Ok(());
        }
        self.expect_sym(";")
    }

    fn end_of_item(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Newline | Tok::Eof => Ok(()),
            t => error(self.span(), format!("expected end of line, found {t}")),
        }
    }

    fn document(&mut self) -> Result<Document, SyntaxError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(Document { items }),
                Tok::Newline => {
                    self.bump();
                }
                _ => {
                    items.push(self.item()?);
                    self.end_of_item()?;
                }
            }
        }
    }

    fn item(&mut self) -> Result<Item, SyntaxError> {
        let head = self.ident("a declaration or command")?;
        match head.text.as_str() {
            "lattice" => self.lattice().map(Item::Lattice),
            "cover" => self.cover().map(Item::Cover),
            "check" | "booleanize" | "congruences" | "derive" | "envelope" => self.command(head).map(Item::Command),
            other => error(head.span, format!("unknown keyword `{other}`")),
        }
    }

    fn pairs(&mut self, what: &str) -> Result<Vec<(Ident, Ident)>, SyntaxError> {
        let mut out = Vec::new();
        while !self.at_sym(";") && !self.at_sym("}") {
            let a = self.ident(what)?;
            self.expect_sym("<=")?;
            let b = self.ident(what)?;
            out.push((a, b));
            if !self.at_sym(",") {
                break;
            }
            self.bump();
        }
        Ok(out)
    }

    /// `field:` header; returns the field name.
    fn field(&mut self, allowed: &[&str]) -> Result<Ident, SyntaxError> {
        let f = self.ident("a field name")?;
        if !allowed.contains(&f.text.as_str()) {
            return error(f.span, format!("unknown field `{}`, expected one of {}", f.text, allowed.join(", ")));
        }
        self.expect_sym(":")?;
        Ok(f)
    }

    fn once<T>(slot: &mut Option<T>, value: T, field: &Ident) -> Result<(), SyntaxError> {
        if slot.is_some() {
            return error(field.span, format!("field `{}` given twice", field.text));
        }
        *slot = Some(value);
        Ok(())
    }

    fn lattice(&mut self) -> Result<LatticeDecl, SyntaxError> {
        let name = self.ident("a lattice name")?;
        self.expect_sym("{")?;
        let (mut elements, mut pos, mut leq) = (None, None, Vec::new());
        while !self.at_sym("}") {
            let f = self.field(&["elements", "leq", "pos"])?;
            match f.text.as_str() {
                "elements" => {
                    let v = self.names(&[]);
                    Self::once(&mut elements, v, &f)?
                }
                "pos" => {
                    let v = self.names(&[]);
                    Self::once(&mut pos, v, &f)?
                }
                _ => leq.extend(self.pairs("an element")?),
            }
            self.end_of_field()?;
        }
        self.expect_sym("}")?;
        Ok(LatticeDecl {
            elements: elements.unwrap_or_default(),
            name,
            leq,
            pos,
        })
    }

    fn cover(&mut self) -> Result<CoverDecl, SyntaxError> {
        let name = self.ident("a cover name")?;
        self.expect_sym("{")?;
        let mut decl = CoverDecl {
            name,
            base: Vec::new(),
            top: None,
            meet: Vec::new(),
            leq: Vec::new(),
            axioms: Vec::new(),
            pos: None,
        };
        let mut base = None;
        while !self.at_sym("}") {
            let f = self.field(&["base", "top", "meet", "leq", "axiom", "pos"])?;
            match f.text.as_str() {
                "base" => {
                    let v = self.names(&[]);
                    Self::once(&mut base, v, &f)?
                }
                "top" => {
                    let t = self.ident("the top element")?;
                    Self::once(&mut decl.top, t, &f)?
                }
                "pos" => {
                    let v = self.names(&[]);
                    Self::once(&mut decl.pos, v, &f)?
                }
                "leq" => decl.leq.extend(self.pairs("a base element")?),
                "meet" => {
                    while !self.at_sym(";") && !self.at_sym("}") {
                        let a = self.ident("a base element")?;
                        self.expect_sym("*")?;
                        let b = self.ident("a base element")?;
                        self.expect_sym("=")?;
                        let c = self.ident("a base element")?;
                        decl.meet.push((a, b, c));
                        if !self.at_sym(",") {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => {
                    let head = self.ident("an axiom head")?;
                    self.expect_sym("<|")?;
                    let body = self.names(&[]);
                    decl.axioms.push((head, body));
                }
            }
            self.end_of_field()?;
        }
        self.expect_sym("}")?;
        decl.base = base.unwrap_or_default();
        Ok(decl)
    }

    fn target(&mut self) -> Result<Target, SyntaxError> {
        let id = self.ident("a target")?;
        let builtin = self.at_sym("(");
        if !builtin {
            return Ok(match id.text.as_str() {
                "Cantor" => Target::Cantor,
                "Baire" => Target::Baire,
                _ => Target::Name(id),
            });
        }
        self.bump();
        let t = match id.text.as_str() {
            "chain" => Target::Chain(self.number("a chain length")?),
            "boolean" => Target::Boolean(self.number("an atom count")?),
            "discrete" => Target::Discrete(self.names(&[])),
            other => return error(id.span, format!("unknown built-in `{other}`")),
        };
        self.expect_sym(")")?;
        Ok(t)
    }

    fn command(&mut self, head: Ident) -> Result<Command, SyntaxError> {
        let target = self.target()?;
        let kind = match head.text.as_str() {
            "check" => {
                let k = self.ident("a check kind")?;
                CommandKind::Check(match k.text.as_str() {
                    "overt" => CheckKind::Overt,
                    "overlap" => CheckKind::Overlap,
                    "formalcover" => CheckKind::FormalCover,
                    "lattice" => CheckKind::Lattice,
                    other => {
                        return error(
                            k.span,
                            format!("unknown check `{other}`, expected overt, overlap, formalcover or lattice"),
                        )
                    }
                })
            }
            "booleanize" => CommandKind::Booleanize,
            "congruences" => CommandKind::Congruences,
            "envelope" => CommandKind::Envelope,
            _ => {
                let goal = self.ident("a goal element")?;
                self.expect_sym("<|")?;
                let cover = self.names(&["budget"]);
                let budget = match self.peek() {
                    Tok::Word(w) if w == "budget" => {
                        self.bump();
                        Some(self.number("a budget")?)
                    }
                    _ => None,
                };
                CommandKind::Derive { goal, cover, budget }
            }
        };
        Ok(Command {
            kind,
            target,
            span: head.span,
        })
    }
}

/// Parses the syntax of a document. Names are not resolved here; see
/// [`crate::Program::load`].
pub fn parse(text: &str) -> Result<Document, SyntaxError> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0 }.document()
}

fn join(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.text.as_str()).collect::<Vec<_>>().join(" ")
}

fn join_pairs(pairs: &[(Ident, Ident)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{}<={}", a.text, b.text))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Lattice(l) => {
                    writeln!(f, "lattice {} {{", l.name.text)?;
                    writeln!(f, "  elements: {};", join(&l.elements))?;
                    if !l.leq.is_empty() {
                        writeln!(f, "  leq: {};", join_pairs(&l.leq))?;
                    }
                    if let Some(pos) = &l.pos {
                        writeln!(f, "  pos: {};", join(pos))?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Cover(c) => {
                    writeln!(f, "cover {} {{", c.name.text)?;
                    writeln!(f, "  base: {};", join(&c.base))?;
                    if let Some(top) = &c.top {
                        writeln!(f, "  top: {};", top.text)?;
                    }
                    if !c.meet.is_empty() {
                        let m: Vec<String> =
                            c.meet.iter().map(|(a, b, m)| format!("{}*{}={}", a.text, b.text, m.text)).collect();
                        writeln!(f, "  meet: {};", m.join(", "))?;
                    }
                    if !c.leq.is_empty() {
                        writeln!(f, "  leq: {};", join_pairs(&c.leq))?;
                    }
                    for (head, body) in &c.axioms {
                        if body.is_empty() {
                            writeln!(f, "  axiom: {} <|;", head.text)?;
                        } else {
                            writeln!(f, "  axiom: {} <| {};", head.text, join(body))?;
                        }
                    }
                    if let Some(pos) = &c.pos {
                        writeln!(f, "  pos: {};", join(pos))?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Command(c) => writeln!(f, "{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.keyword(), self.target)?;
        match &self.kind {
            CommandKind::Check(k) => write!(f, " {}", k.keyword()),
            CommandKind::Derive { goal, cover, budget } => {
                write!(f, " {} <|", goal.text)?;
                if !cover.is_empty() {
                    write!(f, " {}", join(cover))?;
                }
                match budget {
                    Some(b) => write!(f, " budget {b}"),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}
