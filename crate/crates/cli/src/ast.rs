//! Session syntax tree and its canonical printer.

use std::fmt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A rational written `n` or `n/d`, kept as text.
pub type RatText = String;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radius {
    pub base: RatText,
    pub exp: Option<RatText>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Trivial { base: String, group: Option<String> },
    PAdic { p: u64, group: Option<String> },
    Laurent { residue: String, var: String, group: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentSpec {
    /// `R / (a, ...)` over a Tate ring.
    Tate { ring: String, relators: Vec<String> },
    /// `A{T/r, ...} / (a, ...)` over a presentation.
    Relative { base: String, vars: Vec<(String, Radius)>, relators: Vec<String> },
    /// `V[x, ...] / (f, ...)` over a valuation annuloid.
    Integral { val: String, vars: Vec<String>, relators: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Group(Vec<RatText>),
    Field(FieldSpec),
    Corpoid { field: String },
    /// Height-`h` chain on `residue(x_h)...(x_1)`, coarsest place first.
    Val { residue: String, params: Vec<String> },
    Tate { field: String, vars: Vec<(String, Radius)> },
    Present(PresentSpec),
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Group(_) => "group",
            DeclKind::Field(_) => "field",
            DeclKind::Corpoid { .. } => "corpoid",
            DeclKind::Val { .. } => "val",
            DeclKind::Tate { .. } => "tate",
            DeclKind::Present(_) => "present",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Distinguished,
    Strong,
    Universal,
    Sympathique,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Distinguished => "distinguished",
            CheckKind::Strong => "strong",
            CheckKind::Universal => "universal",
            CheckKind::Sympathique => "sympathique",
        }
    }
}

/// A fiber point `(S = c, ...)`.
pub type PointText = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce { target: String },
    Check { kind: CheckKind, target: String, over: Option<String>, fibers: Vec<PointText>, witnesses: Vec<String> },
    Cover { target: String },
    Model { target: String },
    Basis { field: String, radius: Radius, bound: Option<usize> },
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::Check { .. } => "check",
            Command::Cover { .. } => "cover",
            Command::Model { .. } => "model",
            Command::Basis { .. } => "basis",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Decl { name: String, kind: DeclKind },
    Command(Command),
}

/// Items in source order; positions are kept apart so that equality is on
/// structure only.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub items: Vec<Item>,
    pub positions: Vec<Pos>,
}

impl PartialEq for Session {
    fn eq(&self, o: &Session) -> bool {
        self.items == o.items
    }
}

impl Session {
    pub fn declarations(&self) -> impl Iterator<Item = (&String, &DeclKind)> {
        self.items.iter().filter_map(|i| match i {
            Item::Decl { name, kind } => Some((name, kind)),
            _ => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|i| match i {
            Item::Command(c) => Some(c),
            _ => None,
        })
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exp {
            None => write!(f, "{}", self.base),
            Some(e) => write!(f, "{}^({e})", self.base),
        }
    }
}

fn group_suffix(g: &Option<String>) -> String {
    g.as_ref().map(|g| format!(", {g}")).unwrap_or_default()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Trivial { base, group } => write!(f, "trivial({base}{})", group_suffix(group)),
            FieldSpec::PAdic { p, group } => write!(f, "qp({p}{})", group_suffix(group)),
            FieldSpec::Laurent { residue, var, group } => write!(f, "laurent({residue}, {var}{})", group_suffix(group)),
        }
    }
}

fn vars_list(vars: &[(String, Radius)]) -> String {
    vars.iter().map(|(v, r)| format!("{v}/{r}")).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for DeclKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclKind::Group(g) => write!(f, "<{}>", g.join(", ")),
            DeclKind::Field(s) => write!(f, "{s}"),
            DeclKind::Corpoid { field } => write!(f, "residue({field})"),
            DeclKind::Val { residue, params } => write!(f, "adic({residue}, {})", params.join(", ")),
            DeclKind::Tate { field, vars } => write!(f, "{field}{{{}}}", vars_list(vars)),
            DeclKind::Present(PresentSpec::Tate { ring, relators }) => write!(f, "{ring} / ({})", relators.join(", ")),
            DeclKind::Present(PresentSpec::Relative { base, vars, relators }) => write!(f, "{base}{{{}}} / ({})", vars_list(vars), relators.join(", ")),
            DeclKind::Present(PresentSpec::Integral { val, vars, relators }) => write!(f, "{val}[{}] / ({})", vars.join(", "), relators.join(", ")),
        }
    }
}

pub fn point_text(p: &PointText) -> String {
    let parts: Vec<String> = p.iter().map(|(v, c)| format!("{v} = {c}")).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Reduce { target } => write!(f, "reduce {target}"),
            Command::Check { kind, target, over, fibers, witnesses } => {
                write!(f, "check {} {target}", kind.name())?;
                if let Some(a) = over {
                    write!(f, " over {a}")?;
                }
                if !fibers.is_empty() {
                    let pts: Vec<String> = fibers.iter().map(point_text).collect();
                    write!(f, " with fibers [{}]", pts.join(", "))?;
                }
                if !witnesses.is_empty() {
                    write!(f, " with witnesses ({})", witnesses.join(", "))?;
                }
                Ok(())
            }
            Command::Cover { target } => write!(f, "cover {target}"),
            Command::Model { target } => write!(f, "model {target}"),
            Command::Basis { field, radius, bound } => {
                write!(f, "basis {field} radius {radius}")?;
                if let Some(b) = bound {
                    write!(f, " bound {b}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Decl { name, kind } => write!(f, "{} {name} = {kind};", kind.keyword()),
            Item::Command(c) => write!(f, "{c};"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}
