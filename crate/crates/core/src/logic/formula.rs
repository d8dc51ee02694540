use std::collections::BTreeSet;
use std::fmt;

/// Basic modal formulas. `And`, `Implies` and `Box` are kept as nodes so that
/// printed output stays close to what the user wrote; their meaning is the
/// usual definitional expansion (see [`Formula::to_core`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Falsum,
    Prop(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    /// `count` nested diamonds in front of `f`.
    pub fn diamonds(count: usize, f: Formula) -> Self {
        (0..count).fold(f, |acc, _| Formula::diamond(acc))
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Prop(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Diamond(a) | Formula::Box(a) => a.modal_depth() + 1,
        }
    }

    /// All subtrees, including `self`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        for child in self.children() {
            child.collect_subformulas(out);
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Falsum | Formula::Prop(_) => vec![],
            Formula::Not(a) | Formula::Diamond(a) | Formula::Box(a) => vec![a],
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) => vec![a, b],
        }
    }

    pub fn prop_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Prop(p) = self {
            out.insert(p.clone());
        }
        for child in self.children() {
            child.collect_vars(out);
        }
    }

    /// Rewrite into the primitive connectives `false`, `~`, `|`, `<>`.
    pub fn to_core(&self) -> Formula {
        match self {
            Formula::Falsum => Formula::Falsum,
            Formula::Prop(p) => Formula::Prop(p.clone()),
            Formula::Not(a) => Formula::not(a.to_core()),
            Formula::Or(a, b) => Formula::or(a.to_core(), b.to_core()),
            // a & b == ~(~a | ~b)
            Formula::And(a, b) => Formula::not(Formula::or(
                Formula::not(a.to_core()),
                Formula::not(b.to_core()),
            )),
            // a -> b == ~a | b
            Formula::Implies(a, b) => Formula::or(Formula::not(a.to_core()), b.to_core()),
            // []a == ~<>~a
            Formula::Box(a) => Formula::not(Formula::diamond(Formula::not(a.to_core()))),
            Formula::Diamond(a) => Formula::diamond(a.to_core()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Diamond(_) | Formula::Box(_) => 4,
            Formula::Falsum | Formula::Prop(_) => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

// Output is valid input for `parse_formula` and parses back to the same tree:
// `&` and `|` associate to the left, `->` to the right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        match self {
            Formula::Falsum => write!(f, "false"),
            Formula::Prop(p) => write!(f, "{p}"),
            Formula::Not(a) | Formula::Diamond(a) | Formula::Box(a) => {
                let op = match self {
                    Formula::Not(_) => "~",
                    Formula::Diamond(_) => "<>",
                    _ => "[]",
                };
                write!(f, "{op}")?;
                a.fmt_child(f, a.precedence() < prec)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let op = if matches!(self, Formula::Or(..)) { "|" } else { "&" };
                a.fmt_child(f, a.precedence() < prec)?;
                write!(f, " {op} ")?;
                b.fmt_child(f, b.precedence() <= prec)
            }
            Formula::Implies(a, b) => {
                a.fmt_child(f, a.precedence() <= prec)?;
                write!(f, " -> ")?;
                b.fmt_child(f, b.precedence() < prec)
            }
        }
    }
}
