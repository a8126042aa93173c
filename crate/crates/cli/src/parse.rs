//! Recursive-descent parser for session scripts.
//!
//! ```text
//! group G = <2, 3>;
//! field K = qp(2);
//! tate R = K{S/1};
//! present A = R / ();
//! present B = A{T/1} / (T^2 - T);
//! check sympathique B over A with fibers [(S = 0), (S = 1)];
//! ```

use std::collections::HashMap;

use thiserror::Error;

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => s.clone(),
            Tok::Sym(c) => c.to_string(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), pos));
        } else if "=;,()[]{}<>/^*+-".contains(c) {
            i += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(ParseError { pos, message: format!("unexpected character {c:?}") });
        }
        col += i - start;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Group,
    Field,
    Corpoid,
    Val,
    Tate,
    Present,
    Relative,
    Integral,
}

impl Kind {
    fn describe(&self) -> &'static str {
        match self {
            Kind::Group => "a group",
            Kind::Field => "a field",
            Kind::Corpoid => "a corpoid",
            Kind::Val => "a valuation",
            Kind::Tate => "a Tate algebra",
            Kind::Present => "a presentation",
            Kind::Relative => "a relative presentation",
            Kind::Integral => "an integral algebra",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    names: HashMap<String, (Kind, Pos)>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if t != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{c}', found {}", self.peek().text()))
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{w}', found {}", self.peek().text()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", t.text())),
        }
    }

    fn num(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.next();
                Ok(s)
            }
            t => self.err(format!("expected a number, found {}", t.text())),
        }
    }

    fn rat(&mut self) -> PResult<RatText> {
        let mut s = String::new();
        if self.is_sym('-') {
            self.next();
            s.push('-');
        }
        s.push_str(&self.num()?);
        if self.is_sym('/') && matches!(self.toks[self.i + 1].0, Tok::Num(_)) {
            self.next();
            s.push('/');
            s.push_str(&self.num()?);
        }
        Ok(s)
    }

    fn radius(&mut self) -> PResult<Radius> {
        let base = self.rat()?;
        let exp = if self.is_sym('^') {
            self.next();
            if self.is_sym('(') {
                self.next();
                let e = self.rat()?;
                self.sym(')')?;
                Some(e)
            } else {
                Some(self.rat()?)
            }
        } else {
            None
        };
        Ok(Radius { base, exp })
    }

    /// Name of a base field: `Q` or `F<q>`.
    fn field_name(&mut self) -> PResult<String> {
        let pos = self.pos();
        let s = self.ident()?;
        let ok = s == "Q" || (s.len() > 1 && s.starts_with('F') && s[1..].chars().all(|c| c.is_ascii_digit()));
        if !ok {
            return Err(ParseError { pos, message: format!("expected Q or F<q>, found {s}") });
        }
        Ok(s)
    }

    fn reference(&mut self, want: &[Kind]) -> PResult<String> {
        let pos = self.pos();
        let name = self.ident()?;
        match self.names.get(&name) {
            None => Err(ParseError { pos, message: format!("unresolved name {name}") }),
            Some((k, _)) if want.contains(k) => Ok(name),
            Some((k, _)) => Err(ParseError { pos, message: format!("type mismatch: {name} is {}, expected {}", k.describe(), want[0].describe()) }),
        }
    }

    fn kind_of(&self, name: &str) -> Option<Kind> {
        self.names.get(name).map(|(k, _)| *k)
    }

    /// A polynomial, kept as canonically spaced text; ends before a `,`,
    /// `)` or `]` at depth zero.
    fn expr(&mut self) -> PResult<String> {
        let mut depth = 0i32;
        let mut out = String::new();
        let mut prev: Option<Tok> = None;
        loop {
            let t = self.peek().clone();
            match &t {
                Tok::Eof | Tok::Sym(';') => break,
                Tok::Sym(',') | Tok::Sym(')') | Tok::Sym(']') if depth == 0 => break,
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                Tok::Sym(c) if "=[]{}<>".contains(*c) => return self.err(format!("unexpected '{c}' in a polynomial")),
                _ => {}
            }
            let binary = matches!(t, Tok::Sym('+') | Tok::Sym('-')) && matches!(prev, Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Sym(')')));
            if binary {
                out.push(' ');
                out.push_str(&t.text());
                out.push(' ');
            } else {
                out.push_str(&t.text());
            }
            prev = Some(t);
            self.next();
        }
        if out.is_empty() {
            return self.err("expected a polynomial");
        }
        Ok(out)
    }

    fn expr_list(&mut self) -> PResult<Vec<String>> {
        self.sym('(')?;
        let mut v = Vec::new();
        if !self.is_sym(')') {
            v.push(self.expr()?);
            while self.is_sym(',') {
                self.next();
                v.push(self.expr()?);
            }
        }
        self.sym(')')?;
        Ok(v)
    }

    fn radius_vars(&mut self, close: char) -> PResult<Vec<(String, Radius)>> {
        let mut v = Vec::new();
        if !self.is_sym(close) {
            loop {
                let name = self.ident()?;
                self.sym('/')?;
                v.push((name, self.radius()?));
                if !self.is_sym(',') {
                    break;
                }
                self.next();
            }
        }
        self.sym(close)?;
        Ok(v)
    }

    fn opt_group(&mut self) -> PResult<Option<String>> {
        if self.is_sym(',') {
            self.next();
            Ok(Some(self.reference(&[Kind::Group])?))
        } else {
            Ok(None)
        }
    }

    fn field_spec(&mut self) -> PResult<FieldSpec> {
        let pos = self.pos();
        let f = self.ident()?;
        self.sym('(')?;
        let spec = match f.as_str() {
            "trivial" => {
                let base = self.field_name()?;
                FieldSpec::Trivial { base, group: self.opt_group()? }
            }
            "qp" => {
                let npos = self.pos();
                let p = self.num()?.parse::<u64>().map_err(|_| ParseError { pos: npos, message: "prime out of range".into() })?;
                FieldSpec::PAdic { p, group: self.opt_group()? }
            }
            "laurent" => {
                let residue = self.field_name()?;
                self.sym(',')?;
                let var = self.ident()?;
                FieldSpec::Laurent { residue, var, group: self.opt_group()? }
            }
            _ => return Err(ParseError { pos, message: format!("unknown field constructor {f}; expected trivial, qp or laurent") }),
        };
        self.sym(')')?;
        Ok(spec)
    }

    fn decl(&mut self, kw: &str) -> PResult<(String, DeclKind, Kind)> {
        let name = self.ident()?;
        self.sym('=')?;
        let (kind, k) = match kw {
            "group" => {
                self.sym('<')?;
                let mut g = vec![self.rat()?];
                while self.is_sym(',') {
                    self.next();
                    g.push(self.rat()?);
                }
                self.sym('>')?;
                (DeclKind::Group(g), Kind::Group)
            }
            "field" => (DeclKind::Field(self.field_spec()?), Kind::Field),
            "corpoid" => {
                self.word("residue")?;
                self.sym('(')?;
                let field = self.reference(&[Kind::Field])?;
                self.sym(')')?;
                (DeclKind::Corpoid { field }, Kind::Corpoid)
            }
            "val" => {
                self.word("adic")?;
                self.sym('(')?;
                let residue = self.field_name()?;
                let mut params = Vec::new();
                while self.is_sym(',') {
                    self.next();
                    params.push(self.ident()?);
                }
                if params.is_empty() {
                    return self.err("a valuation needs at least one parameter");
                }
                self.sym(')')?;
                (DeclKind::Val { residue, params }, Kind::Val)
            }
            "tate" => {
                let field = self.reference(&[Kind::Field])?;
                self.sym('{')?;
                let vars = self.radius_vars('}')?;
                (DeclKind::Tate { field, vars }, Kind::Tate)
            }
            "present" => {
                let pos = self.pos();
                let target = self.ident()?;
                let Some(tk) = self.kind_of(&target) else {
                    return Err(ParseError { pos, message: format!("unresolved name {target}") });
                };
                let mismatch = |what: &str| ParseError { pos, message: format!("type mismatch: {target} is {}, expected {what}", tk.describe()) };
                if self.is_sym('{') {
                    if tk != Kind::Present {
                        return Err(mismatch("a presentation"));
                    }
                    self.next();
                    let vars = self.radius_vars('}')?;
                    self.sym('/')?;
                    let relators = self.expr_list()?;
                    (DeclKind::Present(PresentSpec::Relative { base: target, vars, relators }), Kind::Relative)
                } else if self.is_sym('[') {
                    if tk != Kind::Val {
                        return Err(mismatch("a valuation"));
                    }
                    self.next();
                    let mut vars = vec![self.ident()?];
                    while self.is_sym(',') {
                        self.next();
                        vars.push(self.ident()?);
                    }
                    self.sym(']')?;
                    self.sym('/')?;
                    let relators = self.expr_list()?;
                    (DeclKind::Present(PresentSpec::Integral { val: target, vars, relators }), Kind::Integral)
                } else {
                    if tk != Kind::Tate {
                        return Err(mismatch("a Tate algebra"));
                    }
                    self.sym('/')?;
                    let relators = self.expr_list()?;
                    (DeclKind::Present(PresentSpec::Tate { ring: target, relators }), Kind::Present)
                }
            }
            _ => unreachable!(),
        };
        Ok((name, kind, k))
    }

    fn point(&mut self) -> PResult<PointText> {
        self.sym('(')?;
        let mut v = Vec::new();
        loop {
            let var = self.ident()?;
            self.sym('=')?;
            v.push((var, self.expr()?));
            if !self.is_sym(',') {
                break;
            }
            self.next();
        }
        self.sym(')')?;
        Ok(v)
    }

    fn command(&mut self, kw: &str) -> PResult<Command> {
        let c = match kw {
            "reduce" => Command::Reduce { target: self.reference(&[Kind::Present])? },
            "check" => {
                let pos = self.pos();
                let k = self.ident()?;
                let kind = match k.as_str() {
                    "distinguished" => CheckKind::Distinguished,
                    "strong" => CheckKind::Strong,
                    "universal" => CheckKind::Universal,
                    "sympathique" => CheckKind::Sympathique,
                    _ => return Err(ParseError { pos, message: format!("unknown check {k}") }),
                };
                let want = if kind == CheckKind::Sympathique { Kind::Relative } else { Kind::Present };
                let target = self.reference(&[want])?;
                let mut over = None;
                if self.is_word("over") {
                    self.next();
                    over = Some(self.reference(&[Kind::Present])?);
                }
                let (mut fibers, mut witnesses) = (Vec::new(), Vec::new());
                while self.is_word("with") {
                    self.next();
                    let pos = self.pos();
                    match self.ident()?.as_str() {
                        "fibers" if kind == CheckKind::Sympathique => {
                            self.sym('[')?;
                            if !self.is_sym(']') {
                                fibers.push(self.point()?);
                                while self.is_sym(',') {
                                    self.next();
                                    fibers.push(self.point()?);
                                }
                            }
                            self.sym(']')?;
                        }
                        "witnesses" if kind == CheckKind::Universal => witnesses = self.expr_list()?,
                        w => return Err(ParseError { pos, message: format!("'with {w}' does not apply to check {}", kind.name()) }),
                    }
                }
                Command::Check { kind, target, over, fibers, witnesses }
            }
            "cover" => Command::Cover { target: self.reference(&[Kind::Integral, Kind::Relative])? },
            "model" => Command::Model { target: self.reference(&[Kind::Present])? },
            "basis" => {
                let field = self.reference(&[Kind::Field])?;
                self.word("radius")?;
                let radius = self.radius()?;
                let mut bound = None;
                if self.is_word("bound") {
                    self.next();
                    let pos = self.pos();
                    bound = Some(self.num()?.parse().map_err(|_| ParseError { pos, message: "bound out of range".into() })?);
                }
                Command::Basis { field, radius, bound }
            }
            _ => unreachable!(),
        };
        Ok(c)
    }
}

const DECLS: [&str; 6] = ["group", "field", "corpoid", "val", "tate", "present"];
const COMMANDS: [&str; 5] = ["reduce", "check", "cover", "model", "basis"];

pub fn parse_session(src: &str) -> Result<Session, ParseError> {
    let mut p = Parser { toks: lex(src)?, i: 0, names: HashMap::new() };
    let mut s = Session::default();
    while *p.peek() != Tok::Eof {
        let pos = p.pos();
        let kw = p.ident()?;
        if DECLS.contains(&kw.as_str()) {
            let npos = p.pos();
            let (name, kind, k) = p.decl(&kw)?;
            if let Some((_, first)) = p.names.get(&name) {
                return Err(ParseError { pos: npos, message: format!("duplicate name {name}: declared at {first} and again at {npos}") });
            }
            p.names.insert(name.clone(), (k, npos));
            s.items.push(Item::Decl { name, kind });
        } else if COMMANDS.contains(&kw.as_str()) {
            s.items.push(Item::Command(p.command(&kw)?));
        } else {
            return Err(ParseError { pos, message: format!("expected a declaration or a command, found {kw}") });
        }
        p.sym(';')?;
        s.positions.push(pos);
    }
    Ok(s)
}

/// A radius `q` or `q^(e)` on its own, as given to `--eps`.
pub fn parse_radius(src: &str) -> Result<Radius, ParseError> {
    let mut p = Parser { toks: lex(src)?, i: 0, names: HashMap::new() };
    let r = p.radius()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after the radius", p.peek().text()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_group() {
        let s = parse_session("group G = <2>;").unwrap();
        assert_eq!(s.items, vec![Item::Decl { name: "G".into(), kind: DeclKind::Group(vec!["2".into()]) }]);
    }

    #[test]
    fn duplicate_names_report_both_positions() {
        let e = parse_session("group G = <2>;\nfield G = qp(3);").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 7 });
        assert!(e.message.contains("1:7") && e.message.contains("2:7"), "{}", e.message);
    }

    #[test]
    fn unresolved_and_mismatched() {
        let e = parse_session("tate R = K{T/1};").unwrap_err();
        assert!(e.message.contains("unresolved name K"));
        let e = parse_session("group G = <2>;\ntate R = G{T/1};").unwrap_err();
        assert!(e.message.contains("type mismatch"));
        assert_eq!(e.pos, Pos { line: 2, col: 10 });
        let e = parse_session("field K = qp(2);\ntate R = K{T/1};\nreduce R;").unwrap_err();
        assert!(e.message.contains("type mismatch"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_session("field K = qp(2)\ntate R = K{T/1};").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 1 });
        let e = parse_session("group G = <2> $").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 15 });
    }

    #[test]
    fn expressions_are_canonical() {
        let s = parse_session("field K = qp(2);\ntate R = K{T/2^(1/2)};\npresent A = R / (T^2-2*T +  -1, (T-1)*(T+1));").unwrap();
        let printed = s.to_string();
        assert!(printed.contains("R / (T^2 - 2*T + -1, (T - 1)*(T + 1))"), "{printed}");
        assert!(printed.contains("K{T/2^(1/2)}"));
        assert_eq!(parse_session(&printed).unwrap(), s);
    }
}
