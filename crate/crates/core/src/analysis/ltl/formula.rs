use std::fmt;

/// A linear temporal logic formula over named state propositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Always(Box<Formula>),
    Eventually(Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    /// Proposition names in order of first occurrence.
    pub fn props(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props<'a>(&'a self, out: &mut Vec<&'a str>) {
        use Formula::*;
        match self {
            True | False => {}
            Prop(p) => {
                if !out.contains(&p.as_str()) {
                    out.push(p);
                }
            }
            Not(a) | Always(a) | Eventually(a) | Next(a) => a.collect_props(out),
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    /// True if the formula contains no temporal operator.
    pub fn is_state_formula(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Prop(_) => true,
            Not(a) => a.is_state_formula(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.is_state_formula() && b.is_state_formula(),
            Always(_) | Eventually(_) | Next(_) | Until(..) => false,
        }
    }

    /// Value of a state formula given the value of each proposition.
    /// Temporal operators are rejected with `None`.
    pub fn eval_state(&self, prop: &mut impl FnMut(&str) -> bool) -> Option<bool> {
        use Formula::*;
        Some(match self {
            True => true,
            False => false,
            Prop(p) => prop(p),
            Not(a) => !a.eval_state(prop)?,
            And(a, b) => a.eval_state(prop)? & b.eval_state(prop)?,
            Or(a, b) => a.eval_state(prop)? | b.eval_state(prop)?,
            Implies(a, b) => !a.eval_state(prop)? | b.eval_state(prop)?,
            Always(_) | Eventually(_) | Next(_) | Until(..) => return None,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            True => write!(f, "True"),
            False => write!(f, "False"),
            Prop(p) => write!(f, "{p}"),
            Not(a) => write!(f, "~ {}", Paren(a)),
            Always(a) => write!(f, "[] {}", Paren(a)),
            Eventually(a) => write!(f, "<> {}", Paren(a)),
            Next(a) => write!(f, "O {}", Paren(a)),
            And(a, b) => write!(f, "{} /\\ {}", Paren(a), Paren(b)),
            Or(a, b) => write!(f, "{} \\/ {}", Paren(a), Paren(b)),
            Implies(a, b) => write!(f, "{} -> {}", Paren(a), Paren(b)),
            Until(a, b) => write!(f, "{} U {}", Paren(a), Paren(b)),
        }
    }
}

/// Prints atoms bare and everything else in parentheses.
struct Paren<'a>(&'a Formula);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::True | Formula::False | Formula::Prop(_) => write!(f, "{}", self.0),
            other => write!(f, "({other})"),
        }
    }
}
