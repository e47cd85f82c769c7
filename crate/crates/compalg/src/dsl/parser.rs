use std::collections::BTreeSet;

use compalg_core::algebra::AlgebraKind;
use compalg_core::model::{
    ElementSet, GroundSet, Measurement, MeasurementSequence, ModelError, Path,
};

use super::lexer::{lex, Tok, Token};
use super::{AssignmentDecl, Diagnostic, PathDecl, SequenceDecl, Span, Workspace};
use crate::assignment_file;

/// Parses a document, reading assignment files relative to the working directory.
pub fn parse(src: &str) -> Result<Workspace, Diagnostic> {
    parse_with(src, &mut |name| {
        std::fs::read_to_string(name).map_err(|e| e.to_string())
    })
}

/// Parses a document; `load` returns the contents of an assignment file.
pub fn parse_with(
    src: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<Workspace, Diagnostic> {
    let tokens = lex(src)?;
    let end = tokens.last().map(|t| t.span).unwrap_or(Span::new(1, 1, 1));
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
        ws: Workspace::default(),
        load,
    };
    while p.pos < p.tokens.len() {
        p.statement()?;
    }
    Ok(p.ws)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    /// Reported for a premature end of input: the last token.
    end: Span,
    ws: Workspace,
    load: &'a mut dyn FnMut(&str) -> Result<String, String>,
}

/// A `{a, b}` list with the span of each name and of the whole group.
struct Group {
    items: Vec<(String, Span)>,
    span: Span,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Token, Diagnostic> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(Diagnostic::parse(
                format!("expected {what}, found end of input"),
                self.end,
            )),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, Diagnostic> {
        let t = self.next(&tok.describe())?;
        if t.tok == tok {
            Ok(t.span)
        } else {
            Err(Diagnostic::parse(
                format!("expected {}, found {}", tok.describe(), t.tok.describe()),
                t.span,
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), Diagnostic> {
        let t = self.next(what)?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.span)),
            other => Err(Diagnostic::parse(
                format!("expected {what}, found {}", other.describe()),
                t.span,
            )),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        let t = self.next(&format!("`{kw}`"))?;
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(t.span),
            other => Err(Diagnostic::parse(
                format!("expected `{kw}`, found {}", other.describe()),
                t.span,
            )),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| t.tok == *tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `open item ("," item)* close`.
    fn list<T>(
        &mut self,
        open: Tok,
        close: Tok,
        mut item: impl FnMut(&mut Self) -> Result<T, Diagnostic>,
    ) -> Result<(Vec<T>, Span), Diagnostic> {
        let start = self.expect(open)?;
        let mut items = vec![item(self)?];
        while self.eat(&Tok::Comma) {
            items.push(item(self)?);
        }
        let stop = self.expect(close)?;
        Ok((items, start.to(stop)))
    }

    fn group(&mut self) -> Result<Group, Diagnostic> {
        let (items, span) = self.list(Tok::LBrace, Tok::RBrace, |p| p.ident("element name"))?;
        Ok(Group { items, span })
    }

    fn statement(&mut self) -> Result<(), Diagnostic> {
        let (kw, span) = self.ident("a declaration")?;
        match kw.as_str() {
            "elements" => self.elements(),
            "measurement" => self.measurement(),
            "sequence" => self.sequence(),
            "path" => self.path(),
            "assignment" => self.assignment(),
            _ => Err(Diagnostic::parse(
                format!("expected `elements`, `measurement`, `sequence`, `path` or `assignment`, found `{kw}`"),
                span,
            )),
        }
    }

    fn fresh(&self, taken: bool, kind: &str, name: &str, span: Span) -> Result<(), Diagnostic> {
        if taken {
            Err(Diagnostic::semantic(
                format!("{kind} `{name}` is already declared"),
                span,
            ))
        } else {
            Ok(())
        }
    }

    fn elements(&mut self) -> Result<(), Diagnostic> {
        let (name, nspan) = self.ident("a ground set name")?;
        self.fresh(
            self.ws.ground_sets.contains_key(&name),
            "ground set",
            &name,
            nspan,
        )?;
        self.expect(Tok::Eq)?;
        let g = self.group()?;
        let mut seen = BTreeSet::new();
        for (e, span) in &g.items {
            if !seen.insert(e.as_str()) {
                return Err(Diagnostic::semantic(
                    format!("element `{e}` is listed twice"),
                    *span,
                ));
            }
        }
        let ground = GroundSet::new(name.clone(), g.items.iter().map(|(e, _)| e.as_str()))
            .map_err(|e| Diagnostic::semantic(e.to_string(), g.span))?;
        self.ws.ground_sets.insert(name, ground);
        Ok(())
    }

    fn measurement(&mut self) -> Result<(), Diagnostic> {
        let (name, nspan) = self.ident("a measurement name")?;
        self.fresh(
            self.ws.measurements.contains_key(&name),
            "measurement",
            &name,
            nspan,
        )?;
        self.keyword("over")?;
        let (gname, gspan) = self.ident("a ground set name")?;
        let ground =
            self.ws.ground_sets.get(&gname).cloned().ok_or_else(|| {
                Diagnostic::semantic(format!("unknown ground set `{gname}`"), gspan)
            })?;
        self.expect(Tok::Eq)?;
        let (groups, span) = self.list(Tok::LBrace, Tok::RBrace, Self::group)?;
        let mut covered = ElementSet::EMPTY;
        let mut blocks = Vec::new();
        for g in &groups {
            let set = resolve(&ground, g)?;
            if !set.is_disjoint(covered) {
                return Err(Diagnostic::semantic(
                    "not a partition: blocks overlap",
                    g.span,
                ));
            }
            covered = covered.union(set);
            blocks.push(set);
        }
        if covered != ground.all() {
            let missing = ground.format_set(ground.all().difference(covered));
            return Err(Diagnostic::semantic(
                format!("not a partition: {missing} not covered"),
                span,
            ));
        }
        let m = Measurement::new(name.clone(), ground, blocks)
            .map_err(|e| Diagnostic::semantic(e.to_string(), span))?;
        self.ws.measurements.insert(name, m);
        Ok(())
    }

    fn sequence(&mut self) -> Result<(), Diagnostic> {
        let (name, nspan) = self.ident("a sequence name")?;
        self.fresh(
            self.ws.sequences.contains_key(&name),
            "sequence",
            &name,
            nspan,
        )?;
        self.expect(Tok::Eq)?;
        let (names, span) = self.list(Tok::LBracket, Tok::RBracket, |p| {
            p.ident("a measurement name")
        })?;
        let mut steps = Vec::new();
        for (m, mspan) in &names {
            let meas = self.ws.measurements.get(m).ok_or_else(|| {
                Diagnostic::semantic(format!("unknown measurement `{m}`"), *mspan)
            })?;
            steps.push(meas.clone());
        }
        let sequence = MeasurementSequence::new(steps).map_err(|e| {
            let at = match e {
                ModelError::NonAtomicEndpoint(j) => names[j].1,
                _ => span,
            };
            Diagnostic::semantic(e.to_string(), at)
        })?;
        let decl = SequenceDecl {
            steps: names.into_iter().map(|(n, _)| n).collect(),
            sequence,
        };
        self.ws.sequences.insert(name, decl);
        Ok(())
    }

    fn sequence_ref(&mut self) -> Result<String, Diagnostic> {
        let (s, span) = self.ident("a sequence name")?;
        if self.ws.sequences.contains_key(&s) {
            Ok(s)
        } else {
            Err(Diagnostic::semantic(
                format!("unknown sequence `{s}`"),
                span,
            ))
        }
    }

    fn path(&mut self) -> Result<(), Diagnostic> {
        let (name, nspan) = self.ident("a path name")?;
        self.fresh(self.ws.paths.contains_key(&name), "path", &name, nspan)?;
        self.keyword("over")?;
        let seq = self.sequence_ref()?;
        self.expect(Tok::Eq)?;
        let (groups, span) = self.list(Tok::LBracket, Tok::RBracket, Self::group)?;
        let s = &self.ws.sequences[&seq].sequence;
        if groups.len() != s.len() {
            return Err(Diagnostic::semantic(
                format!(
                    "sequence `{seq}` has {} steps but the path lists {} results",
                    s.len(),
                    groups.len()
                ),
                span,
            ));
        }
        let mut results = Vec::new();
        for (m, g) in s.steps().iter().zip(&groups) {
            let set = resolve(m.ground(), g)?;
            if !m.has_block(set) {
                return Err(Diagnostic::semantic(
                    format!(
                        "{} is not a block of measurement `{}`",
                        m.ground().format_set(set),
                        m.id()
                    ),
                    g.span,
                ));
            }
            results.push(set);
        }
        let path =
            Path::new(s.clone(), results).map_err(|e| Diagnostic::semantic(e.to_string(), span))?;
        self.ws.paths.insert(
            name,
            PathDecl {
                sequence: seq,
                path,
            },
        );
        Ok(())
    }

    fn assignment(&mut self) -> Result<(), Diagnostic> {
        let (name, nspan) = self.ident("an assignment name")?;
        self.fresh(
            self.ws.assignments.contains_key(&name),
            "assignment",
            &name,
            nspan,
        )?;
        self.keyword("over")?;
        let seq = self.sequence_ref()?;
        self.keyword("algebra")?;
        let (alg, aspan) = self.ident("an algebra")?;
        let algebra: AlgebraKind = alg
            .parse()
            .map_err(|e| Diagnostic::semantic(format!("{e}"), aspan))?;
        if !algebra.is_associative() {
            return Err(Diagnostic::semantic(
                format!("{algebra} is not associative and cannot carry an assignment"),
                aspan,
            ));
        }
        self.keyword("from")?;
        let t = self.next("a file name")?;
        let Tok::Str(file) = t.tok else {
            return Err(Diagnostic::parse(
                format!("expected a quoted file name, found {}", t.tok.describe()),
                t.span,
            ));
        };
        let text = (self.load)(&file)
            .map_err(|e| Diagnostic::semantic(format!("cannot read `{file}`: {e}"), t.span))?;
        let ws = &self.ws;
        let data = assignment_file::load(&text, algebra, |id| ws.resolve_ground(id))
            .map_err(|e| Diagnostic::semantic(format!("`{file}`: {e}"), t.span))?;
        self.ws.assignments.insert(
            name,
            AssignmentDecl {
                sequence: seq,
                algebra,
                file,
                data,
            },
        );
        Ok(())
    }
}

fn resolve(ground: &GroundSet, g: &Group) -> Result<ElementSet, Diagnostic> {
    let mut set = ElementSet::EMPTY;
    for (e, span) in &g.items {
        let i = ground.index_of(e).ok_or_else(|| {
            Diagnostic::semantic(
                format!("`{e}` is not an element of `{}`", ground.name()),
                *span,
            )
        })?;
        if set.contains(i) {
            return Err(Diagnostic::semantic(
                format!("element `{e}` is listed twice"),
                *span,
            ));
        }
        set = set.union(ElementSet::singleton(i));
    }
    Ok(set)
}
