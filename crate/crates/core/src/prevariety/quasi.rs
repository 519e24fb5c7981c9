use std::fmt;

use crate::algcore::{for_each_tuple, FiniteAlgebra, Signature, Term};
use crate::error::{Error, Result};

/// A Horn implication `l_1 = r_1 & .. & l_k = r_k => l = r` over finitely
/// many variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIdentity {
    pub variables: Vec<String>,
    pub premises: Vec<(Term, Term)>,
    pub conclusion: (Term, Term),
}

impl QuasiIdentity {
    /// Parses `a(a(x)) = x & a(y) = y => u = v`. Bare names that are
    /// zeroary symbols of `sig` denote constants; other bare names are
    /// variables, numbered by first occurrence. The premise side may be
    /// empty or the `=>` omitted altogether.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        let mut vars = Vec::new();
        let (prem_text, concl_text) = match text.split_once("=>") {
            Some((p, c)) => (p.trim(), c),
            None => ("", text),
        };
        let mut premises = Vec::new();
        if !prem_text.is_empty() {
            for part in prem_text.split('&') {
                premises.push(parse_equation(part, sig, &mut vars)?);
            }
        }
        let conclusion = parse_equation(concl_text, sig, &mut vars)?;
        Ok(QuasiIdentity {
            variables: vars,
            premises,
            conclusion,
        })
    }

    pub fn identity(variables: Vec<String>, lhs: Term, rhs: Term) -> Self {
        QuasiIdentity {
            variables,
            premises: Vec::new(),
            conclusion: (lhs, rhs),
        }
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.variables;
        for (i, (l, r)) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{} = {}", l.display(v), r.display(v))?;
        }
        if !self.premises.is_empty() {
            f.write_str(" => ")?;
        }
        let (l, r) = &self.conclusion;
        write!(f, "{} = {}", l.display(v), r.display(v))
    }
}

fn parse_equation(text: &str, sig: &Signature, vars: &mut Vec<String>) -> Result<(Term, Term)> {
    let (l, r) = text
        .split_once('=')
        .ok_or_else(|| Error::parse(format!("expected an equation, found `{}`", text.trim())))?;
    Ok((parse_term(l, sig, vars)?, parse_term(r, sig, vars)?))
}

/// Parses one term: `name`, `name(arg, ..)`, and for unary symbols also
/// `name t` and `name^k t`.
pub(crate) fn parse_term(text: &str, sig: &Signature, vars: &mut Vec<String>) -> Result<Term> {
    let mut p = TermParser {
        src: text.as_bytes(),
        pos: 0,
        sig,
        vars,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(format!("trailing input in `{}`", text.trim())));
    }
    t.check(sig)?;
    Ok(t)
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
    vars: &'a mut Vec<String>,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// A term, possibly wrapped in parentheses.
    fn operand(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b'(') {
            return self.term();
        }
        self.pos += 1;
        let t = self.term()?;
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b')') {
            return Err(Error::parse("expected `)`"));
        }
        self.pos += 1;
        Ok(t)
    }

    fn starts_operand(&self) -> bool {
        self.src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(format!("expected a name at offset {}", start)));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        self.skip_ws();
        let unary = self
            .sig
            .index_of(&name)
            .is_some_and(|op| self.sig.arity(op) == 1);
        if unary && self.src.get(self.pos) == Some(&b'^') {
            // `a^k t`: k-fold application.
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: usize = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::parse(format!("expected an exponent after `{}^`", name)))?;
            let inner = self.operand()?;
            return Ok(Term::iterate(&name, k, inner));
        }
        if unary && self.starts_operand() {
            // `a t`: juxtaposition.
            let inner = self.term()?;
            return Ok(Term::App(name, vec![inner]));
        }
        if self.src.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let mut args = Vec::new();
            loop {
                args.push(self.term()?);
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(Error::parse("expected `,` or `)`")),
                }
            }
            return Ok(Term::App(name, args));
        }
        let is_constant = self
            .sig
            .index_of(&name)
            .is_some_and(|op| self.sig.arity(op) == 0);
        if is_constant {
            return Ok(Term::App(name, Vec::new()));
        }
        if self.sig.index_of(&name).is_some() {
            return Err(Error::ArityMismatch {
                expected: self.sig.arity(self.sig.index_of(&name).unwrap()),
                symbol: name,
                found: 0,
            });
        }
        let idx = match self.vars.iter().position(|v| *v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name);
                self.vars.len() - 1
            }
        };
        Ok(Term::Var(idx))
    }
}

/// Brute force over all assignments of the variables.
pub fn quasi_identity_holds(alg: &FiniteAlgebra, q: &QuasiIdentity) -> Result<bool> {
    let sig = alg.signature();
    let resolve = |(l, r): &(Term, Term)| -> Result<_> { Ok((l.resolve(sig)?, r.resolve(sig)?)) };
    let premises = q.premises.iter().map(resolve).collect::<Result<Vec<_>>>()?;
    let conclusion = resolve(&q.conclusion)?;
    let nvars = q
        .variables
        .len()
        .max(q.premises.iter().map(|(l, r)| l.var_bound().max(r.var_bound())).max().unwrap_or(0))
        .max(q.conclusion.0.var_bound().max(q.conclusion.1.var_bound()));
    let mut holds = true;
    let mut err = None;
    for_each_tuple(alg.size(), nvars, |v| {
        if !holds || err.is_some() {
            return;
        }
        let check = || -> Result<bool> {
            for (l, r) in &premises {
                if l.eval(alg, v)? != r.eval(alg, v)? {
                    return Ok(true);
                }
            }
            Ok(conclusion.0.eval(alg, v)? == conclusion.1.eval(alg, v)?)
        };
        match check() {
            Ok(ok) => holds = ok,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(holds),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let sig = Signature::unary("a");
        for text in [
            "a(a(x)) = x & a(y) = y => x = y",
            "a(x) = x",
            "a(a(x)) = a(y) & x = y & y = z => a(z) = x",
        ] {
            let q = QuasiIdentity::parse(text, &sig).unwrap();
            assert_eq!(q.to_string(), text);
        }
        let q = QuasiIdentity::parse("=> a(x) = x", &sig).unwrap();
        assert!(q.premises.is_empty());
        let sig = Signature::new([("m", 2), ("e", 0)]).unwrap();
        let q = QuasiIdentity::parse("m(x, e) = x", &sig).unwrap();
        assert_eq!(q.variables, vec!["x".to_string()]);
        assert_eq!(q.to_string(), "m(x, e) = x");
    }

    #[test]
    fn parse_errors() {
        let sig = Signature::unary("a");
        assert!(QuasiIdentity::parse("a(x, y) = x", &sig).is_err());
        assert!(QuasiIdentity::parse("b(x) = x", &sig).is_err());
        assert!(QuasiIdentity::parse("a(x) x", &sig).is_err());
        assert!(QuasiIdentity::parse("a = x", &sig).is_err());
    }

    #[test]
    fn power_and_juxtaposition() {
        let sig = Signature::unary("a");
        let q = QuasiIdentity::parse("a^6 x = x", &sig).unwrap();
        assert_eq!(q.conclusion.0, Term::iterate("a", 6, Term::var(0)));
        let j = QuasiIdentity::parse("a a x = a(a(x))", &sig).unwrap();
        assert_eq!(j.conclusion.0, j.conclusion.1);
        let d = QuasiIdentity::parse("a^2 x = x => a^2(y) = y", &sig).unwrap();
        assert_eq!(d.to_string(), "a(a(x)) = x => a(a(y)) = y");
        assert!(QuasiIdentity::parse("a^ x = x", &sig).is_err());
    }

    #[test]
    fn holds_examples() {
        let sig = Signature::unary("a");
        let a6 = QuasiIdentity::identity(
            vec!["x".into()],
            Term::iterate("a", 6, Term::var(0)),
            Term::var(0),
        );
        assert!(quasi_identity_holds(&c(6), &a6).unwrap());
        let (u, _) = FiniteAlgebra::disjoint_union(&[&c(2), &c(3)]).unwrap();
        let only = QuasiIdentity::parse("a(a(x)) = x => a(a(y)) = y", &sig).unwrap();
        assert!(!quasi_identity_holds(&u, &only).unwrap());
        assert!(quasi_identity_holds(&c(1), &only).unwrap());
        assert!(quasi_identity_holds(&c(1), &a6).unwrap());
    }
}
