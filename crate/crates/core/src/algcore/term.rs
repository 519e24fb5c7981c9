use std::fmt;

use super::algebra::{tuple_index, FiniteAlgebra, Signature};
use crate::error::{Error, Result};

/// A term over named operation symbols and indexed variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(name.to_string(), args)
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.to_string(), Vec::new())
    }

    /// `op` applied `times` times to `inner`.
    pub fn iterate(op: &str, times: usize, inner: Term) -> Self {
        (0..times).fold(inner, |t, _| Term::app(op, vec![t]))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// One past the largest variable index occurring in the term.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    /// Checks symbols and arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.resolve(sig).map(|_| ())
    }

    pub(crate) fn resolve(&self, sig: &Signature) -> Result<ResolvedTerm> {
        match self {
            Term::Var(i) => Ok(ResolvedTerm::Var(*i)),
            Term::App(name, args) => {
                let op = sig
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let arity = sig.arity(op);
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: name.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                let args = args
                    .iter()
                    .map(|a| a.resolve(sig))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ResolvedTerm::App(op, args))
            }
        }
    }

    /// Evaluates the term in `alg` with variable `i` sent to `assignment[i]`.
    pub fn eval(&self, alg: &FiniteAlgebra, assignment: &[usize]) -> Result<usize> {
        let resolved = self.resolve(alg.signature())?;
        if let Some(&bad) = assignment.iter().find(|&&v| v >= alg.size()) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                size: alg.size(),
            });
        }
        resolved.eval(alg, assignment)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, names }
    }
}

/// A term with symbols resolved to operation indices.
#[derive(Debug, Clone)]
pub(crate) enum ResolvedTerm {
    Var(usize),
    App(usize, Vec<ResolvedTerm>),
}

impl ResolvedTerm {
    pub(crate) fn eval(&self, alg: &FiniteAlgebra, assignment: &[usize]) -> Result<usize> {
        match self {
            ResolvedTerm::Var(i) => assignment
                .get(*i)
                .copied()
                .ok_or(Error::UnassignedVariable(*i)),
            ResolvedTerm::App(op, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(a.eval(alg, assignment)?);
                }
                Ok(alg.table(*op)[tuple_index(alg.size(), &vals)])
            }
        }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => match self.names.get(*i) {
                Some(n) => f.write_str(n),
                None => write!(f, "v{}", i),
            },
            Term::App(name, args) => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (k, a) in args.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", a.display(self.names))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}
