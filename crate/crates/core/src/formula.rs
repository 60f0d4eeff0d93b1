//! NAE-3-SAT formulas.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Value under an assignment given as a bitmask (variable `i` is bit `i`).
    pub fn eval(self, assignment: u64) -> bool {
        (assignment >> self.var & 1 == 1) != self.negated
    }
}

/// Clauses of exactly three literals over variables `0..names.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    names: Vec<String>,
    clauses: Vec<[Literal; 3]>,
}

impl Formula {
    /// Variables are numbered by first appearance.
    pub fn new(names: Vec<String>, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::MalformedFormula("no clauses".to_string()));
        }
        if let Some(l) = clauses.iter().flatten().find(|l| l.var >= names.len()) {
            return Err(Error::MalformedFormula(format!("variable {} is not named", l.var)));
        }
        Ok(Formula { names, clauses })
    }

    /// Build from signed names such as `"x1"` or `"!x3"`.
    pub fn from_names<S: AsRef<str>>(clauses: &[[S; 3]]) -> Result<Self> {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut names = Vec::new();
        let mut out = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let mut lits = [Literal::pos(0); 3];
            for (slot, raw) in lits.iter_mut().zip(clause) {
                let raw = raw.as_ref().trim();
                let (negated, name) = match raw.strip_prefix('!').or_else(|| raw.strip_prefix('-')) {
                    Some(rest) => (true, rest.trim()),
                    None => (false, raw),
                };
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(Error::MalformedFormula(format!("bad literal `{raw}`")));
                }
                let var = *index.entry(name.to_string()).or_insert_with(|| {
                    names.push(name.to_string());
                    names.len() - 1
                });
                *slot = Literal { var, negated };
            }
            out.push(lits);
        }
        Formula::new(names, out)
    }

    /// Parse `"(x1,x2,!x3)(x1,!x2,x3)"`. Whitespace and `∨` separators are
    /// tolerated inside a clause.
    pub fn parse(text: &str) -> Result<Self> {
        let mut clauses: Vec<[String; 3]> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedFormula(format!("expected `(` at `{rest}`")))?;
            let close = body.find(')').ok_or_else(|| Error::MalformedFormula("missing `)`".to_string()))?;
            let parts: Vec<String> = body[..close]
                .split([',', '∨', '|'])
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let clause: [String; 3] = parts
                .try_into()
                .map_err(|p: Vec<String>| Error::MalformedFormula(format!("clause with {} literals", p.len())))?;
            clauses.push(clause);
            rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == '∧' || c == '&');
        }
        Formula::from_names(&clauses)
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// True when every clause has a true and a false literal.
    pub fn nae_satisfied(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            let trues = c.iter().filter(|l| l.eval(assignment)).count();
            trues == 1 || trues == 2
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            f.write_str("(")?;
            for (i, l) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                if l.negated {
                    f.write_str("!")?;
                }
                f.write_str(&self.names[l.var])?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let f = Formula::parse("(x1,x2,!x3)(x1, !x2, x3) (!x1,x2,x3)").unwrap();
        assert_eq!(f.variable_count(), 3);
        assert_eq!(f.clauses().len(), 3);
        assert_eq!(f.clauses()[0][2], Literal::neg(2));
        assert_eq!(f.to_string(), "(x1,x2,!x3)(x1,!x2,x3)(!x1,x2,x3)");
        assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Formula::parse("(x1,x2)").is_err());
        assert!(Formula::parse("(x1,x2,x3").is_err());
        assert!(Formula::parse("x1,x2,x3").is_err());
        assert!(Formula::parse("").is_err());
        assert!(Formula::parse("(x1,x2,x 3)").is_err());
    }

    #[test]
    fn nae_semantics() {
        let f = Formula::parse("(x,x,x)").unwrap();
        assert!(!f.nae_satisfied(0) && !f.nae_satisfied(1));
        let g = Formula::parse("(a,b,c)").unwrap();
        assert!(g.nae_satisfied(0b001));
        assert!(!g.nae_satisfied(0b111));
    }
}
