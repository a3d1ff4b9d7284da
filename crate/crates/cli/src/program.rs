//! Name resolution and semantic validation of a parsed document.

use std::collections::BTreeMap;

use thiserror::Error;

use sigmaframe::booleanization::Positivity;
use sigmaframe::formal_cover::FiniteCover;
use sigmaframe::generators::Word;
use sigmaframe::DistributiveLattice;

use crate::syntax::{self, Command, CommandKind, CoverDecl, Ident, Item, LatticeDecl, Span, SyntaxError, Target};

/// A document error: syntax, an unresolved or duplicate name, or a
/// declaration the algebra rejects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct LoadError {
    pub span: Span,
    pub message: String,
}

impl From<SyntaxError> for LoadError {
    fn from(e: SyntaxError) -> Self {
        LoadError {
            span: e.span,
            message: e.message,
        }
    }
}

fn fail<T>(span: Span, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError {
        span,
        message: message.into(),
    })
}

/// A declared object, validated.
#[derive(Debug, Clone)]
pub enum Object {
    Lattice {
        lattice: DistributiveLattice,
        pos: Option<Positivity>,
    },
    Cover {
        cover: FiniteCover,
        pos: Option<Positivity>,
    },
}

/// A loaded document: declarations by name and commands in order.
#[derive(Debug, Clone)]
pub struct Program {
    pub objects: BTreeMap<String, Object>,
    pub commands: Vec<Command>,
}

const RESERVED: [&str; 2] = ["Cantor", "Baire"];

impl Program {
    /// Parses and validates a document.
    pub fn load(text: &str) -> Result<Program, LoadError> {
        Self::from_document(syntax::parse(text)?)
    }

    pub fn from_document(doc: syntax::Document) -> Result<Program, LoadError> {
        let mut objects = BTreeMap::new();
        let mut commands = Vec::new();
        for item in doc.items {
            let (name, object) = match item {
                Item::Command(c) => {
                    commands.push(c);
                    continue;
                }
                Item::Lattice(l) => (l.name.clone(), lattice(&l)?),
                Item::Cover(c) => (c.name.clone(), cover(&c)?),
            };
            if RESERVED.contains(&name.text.as_str()) {
                return fail(name.span, format!("`{}` names a built-in presentation", name.text));
            }
            if objects.insert(name.text.clone(), object).is_some() {
                return fail(name.span, format!("`{}` is declared twice", name.text));
            }
        }
        let program = Program { objects, commands };
        for c in &program.commands {
            program.resolve(c)?;
        }
        Ok(program)
    }

    fn resolve(&self, c: &Command) -> Result<(), LoadError> {
        let names: Option<Vec<String>> = match &c.target {
            Target::Name(id) => match self.objects.get(&id.text) {
                None => return fail(id.span, format!("unknown name `{}`", id.text)),
                Some(Object::Lattice { lattice, .. }) => Some(lattice.names().to_vec()),
                Some(Object::Cover { cover, .. }) => Some(cover.names().to_vec()),
            },
            Target::Discrete(points) => {
                let mut seen = Vec::new();
                for p in points {
                    if seen.contains(&&p.text) {
                        return fail(p.span, format!("point `{}` is listed twice", p.text));
                    }
                    seen.push(&p.text);
                }
                Some(discrete_names(points.iter().map(|p| p.text.as_str()).collect::<Vec<_>>().as_slice()))
            }
            _ => None,
        };
        if let CommandKind::Derive { goal, cover, .. } = &c.kind {
            for id in std::iter::once(goal).chain(cover) {
                let known = match (&c.target, &names) {
                    (Target::Cantor, _) => Word::parse_name(&id.text, true).is_some(),
                    (Target::Baire, _) => Word::parse_name(&id.text, false).is_some(),
                    (_, Some(names)) => names.contains(&id.text),
                    (_, None) => true,
                };
                if !known {
                    return fail(id.span, format!("`{}` is not an element of {}", id.text, c.target));
                }
            }
        }
        Ok(())
    }
}

/// Base element names of `discrete(..)` in documents: `_` for the empty
/// set and `x+y` for `{x, y}`, indexed by bitmask.
pub fn discrete_names(points: &[&str]) -> Vec<String> {
    (0..1usize << points.len())
        .map(|m| {
            if m == 0 {
                return "_".to_string();
            }
            let members: Vec<&str> = (0..points.len()).filter(|i| m >> i & 1 == 1).map(|i| points[i]).collect();
            members.join("+")
        })
        .collect()
}

fn index(names: &[Ident], id: &Ident, what: &str) -> Result<usize, LoadError> {
    match names.iter().position(|n| n.text == id.text) {
        Some(i) => Ok(i),
        None => fail(id.span, format!("unknown {what} `{}`", id.text)),
    }
}

fn unique(names: &[Ident]) -> Result<(), LoadError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].iter().any(|m| m.text == n.text) {
            return fail(n.span, format!("`{}` is listed twice", n.text));
        }
    }
    Ok(())
}

fn positivity(names: &[Ident], pos: &Option<Vec<Ident>>) -> Result<Option<Positivity>, LoadError> {
    let Some(pos) = pos else { return Ok(None) };
    let idx = pos.iter().map(|p| index(names, p, "element")).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(Positivity::from_elements(names.len(), &idx)))
}

fn lattice(decl: &LatticeDecl) -> Result<Object, LoadError> {
    unique(&decl.elements)?;
    let pairs = decl
        .leq
        .iter()
        .map(|(a, b)| Ok((index(&decl.elements, a, "element")?, index(&decl.elements, b, "element")?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let names = decl.elements.iter().map(|e| e.text.clone()).collect();
    let lattice = match DistributiveLattice::from_order_pairs(names, &pairs) {
        Ok(l) => l,
        Err(e) => return fail(decl.name.span, format!("lattice `{}`: {e}", decl.name.text)),
    };
    let pos = positivity(&decl.elements, &decl.pos)?;
    Ok(Object::Lattice { lattice, pos })
}

fn cover(decl: &CoverDecl) -> Result<Object, LoadError> {
    let base = &decl.base;
    unique(base)?;
    let n = base.len();
    let at = decl.name.span;
    let Some(top_id) = &decl.top else {
        return fail(at, format!("cover `{}` has no top", decl.name.text));
    };
    let top = index(base, top_id, "base element")?;
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for a in 0..n {
        table[a][a] = Some(a);
        table[a][top] = Some(a);
        table[top][a] = Some(a);
    }
    if !decl.leq.is_empty() {
        let mut pairs = decl
            .leq
            .iter()
            .map(|(a, b)| Ok((index(base, a, "base element")?, index(base, b, "base element")?)))
            .collect::<Result<Vec<_>, LoadError>>()?;
        pairs.extend((0..n).map(|a| (a, top)));
        let le = closure(n, &pairs);
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le[c][a] && le[c][b]).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| le[d][c]));
                match glb {
                    Some(c) => table[a][b] = Some(c),
                    None => {
                        return fail(
                            at,
                            format!("`{}` and `{}` have no greatest lower bound", base[a].text, base[b].text),
                        )
                    }
                }
            }
        }
    }
    for (a, b, m) in &decl.meet {
        let (a, b, m) = (index(base, a, "base element")?, index(base, b, "base element")?, index(base, m, "base element")?);
        for (x, y) in [(a, b), (b, a)] {
            match table[x][y] {
                Some(old) if old != m => {
                    return fail(
                        at,
                        format!(
                            "meet of `{}` and `{}` is given as both `{}` and `{}`",
                            base[x].text, base[y].text, base[old].text, base[m].text
                        ),
                    )
                }
                _ => table[x][y] = Some(m),
            }
        }
    }
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            match table[a][b] {
                Some(m) => meet[a][b] = m,
                None => return fail(at, format!("meet of `{}` and `{}` is not given", base[a].text, base[b].text)),
            }
        }
    }
    let axioms = decl
        .axioms
        .iter()
        .map(|(h, body)| {
            let h = index(base, h, "base element")?;
            let body = body.iter().map(|c| index(base, c, "base element")).collect::<Result<Vec<_>, _>>()?;
            Ok((h, body))
        })
        .collect::<Result<Vec<_>, LoadError>>()?;
    let names = base.iter().map(|b| b.text.clone()).collect();
    let cover = match FiniteCover::new(names, meet, top, axioms) {
        Ok(c) => c,
        Err(e) => return fail(at, format!("cover `{}`: {e}", decl.name.text)),
    };
    let pos = positivity(base, &decl.pos)?;
    Ok(Object::Cover { cover, pos })
}

fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    le
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry_violation_is_reported() {
        let err = Program::load("lattice L { elements: a b; leq: a<=b, b<=a; }").unwrap_err();
        assert!(err.message.contains("antisymmetry"), "{err}");
    }

    #[test]
    fn unresolved_and_duplicate_names() {
        let err = Program::load("check Nope overt").unwrap_err();
        assert_eq!(err.message, "unknown name `Nope`");
        let err = Program::load("lattice L { elements: a; }\nlattice L { elements: a; }").unwrap_err();
        assert_eq!(err.span.line, 2);
        let err = Program::load("lattice L { elements: a; pos: b; }").unwrap_err();
        assert!(err.message.contains("`b`"));
        assert!(Program::load("lattice Cantor { elements: a; }").is_err());
    }

    #[test]
    fn cover_meets_from_the_order() {
        let p = Program::load("cover C { base: x y z t; top: t; leq: z<=x, z<=y; axiom: t <| x y; }").unwrap();
        let Object::Cover { cover, .. } = &p.objects["C"] else { panic!() };
        assert_eq!(cover.meet(0, 1), 2);
        let err = Program::load("cover C { base: x y t; top: t; }").unwrap_err();
        assert!(err.message.contains("not given"), "{err}");
    }

    #[test]
    fn derive_elements_resolve() {
        assert!(Program::load("derive Cantor e <| s0 s1").is_ok());
        assert!(Program::load("derive Cantor e <| s2").is_err());
        assert!(Program::load("derive Baire e <| s2.7").is_ok());
        assert!(Program::load("derive discrete(x y) x+y <| x y").is_ok());
        assert!(Program::load("derive discrete(x y) z <| x").is_err());
    }
}
