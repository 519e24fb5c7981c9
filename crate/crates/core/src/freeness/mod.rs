//! Normal forms for free algebras of two varieties with a constant `0`,
//! unary operations `p`, `q` and a ternary operation `t`.
//!
//! Both varieties satisfy `p0 = q0 = p t(..) = q t(..) = 0`, and
//! `t(u, v, w) = 0` whenever an argument is `0` or a `t`-value. On top of
//! that, [`Variety::V1`] kills every `t(a, b, c)` whose arguments lie in a
//! common two-generated subalgebra, while [`Variety::V0`] kills
//! `t(u, pv, qv)` and `t(a(u, v), u, v)` for binary terms `a`.
//!
//! Elements are `0`, a word over `{p, q}` applied to a generator, or a
//! surviving tag `t(u, v, w)` of three such words. Words are written with
//! the leftmost letter applied last, so `pqx` is `p(q(x))`.

mod lab;
pub mod oracle;

use std::fmt;

use crate::error::{Error, Result};

pub use lab::{
    no_free_triple_bounded, t_relation_obstruction, verify_free_pair, witness_triple_hom,
    FreePairCertificate, NoFreeTripleCertificate, TripleWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P,
    Q,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::P => 'p',
            Letter::Q => 'q',
        }
    }
}

/// An element of the free monoid on `p` and `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MWord(pub Vec<Letter>);

impl MWord {
    pub fn empty() -> Self {
        MWord(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "1" || text == "ε" {
            return Ok(MWord::empty());
        }
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'p' => Ok(Letter::P),
                'q' => Ok(Letter::Q),
                other => Err(Error::parse(format!("`{}` is not p or q", other))),
            })
            .collect::<Result<Vec<_>>>()
            .map(MWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · other`: apply `other` first, then `self`.
    pub fn concat(&self, other: &MWord) -> MWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MWord(v)
    }

    /// Whether `self = m · suffix` for some word `m`.
    pub fn ends_with(&self, suffix: &MWord) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// All words of length at most `max_len`, by length then
    /// lexicographically with `p < q`.
    pub fn all_up_to(max_len: usize) -> Vec<MWord> {
        let mut out = vec![MWord::empty()];
        let mut layer = vec![MWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for w in &layer {
                for l in [Letter::P, Letter::Q] {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(MWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for MWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    V1,
    V0,
}

/// A word applied to a generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordElem {
    pub word: MWord,
    pub gen: usize,
}

impl WordElem {
    pub fn new(word: MWord, gen: usize) -> Self {
        WordElem { word, gen }
    }

    pub fn gen(gen: usize) -> Self {
        WordElem {
            word: MWord::empty(),
            gen,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeElement {
    Zero,
    Word(WordElem),
    Tag(Box<[WordElem; 3]>),
}

impl FreeElement {
    pub fn word(word: MWord, gen: usize) -> Self {
        FreeElement::Word(WordElem { word, gen })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FreeElement::Zero)
    }

    pub fn is_tag(&self) -> bool {
        matches!(self, FreeElement::Tag(_))
    }

    pub fn as_word(&self) -> Option<&WordElem> {
        match self {
            FreeElement::Word(w) => Some(w),
            _ => None,
        }
    }
}

/// Names for `count` generators: `x, y, z` when at most three, otherwise
/// `x1, x2, ..`.
pub fn generator_names(count: usize) -> Vec<String> {
    if count <= 3 {
        ["x", "y", "z"][..count].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=count).map(|i| format!("x{}", i)).collect()
    }
}

/// A free algebra of one of the two varieties on a number of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTermContext {
    variety: Variety,
    names: Vec<String>,
}

/// A raw term over `0`, `p`, `q`, `t` and generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeTerm {
    Zero,
    Gen(usize),
    Apply(Letter, Box<FreeTerm>),
    T(Box<[FreeTerm; 3]>),
}

impl FreeTerm {
    pub fn t(a: FreeTerm, b: FreeTerm, c: FreeTerm) -> Self {
        FreeTerm::T(Box::new([a, b, c]))
    }

    pub fn apply(l: Letter, inner: FreeTerm) -> Self {
        FreeTerm::Apply(l, Box::new(inner))
    }

    pub fn word(w: &MWord, gen: usize) -> Self {
        w.0.iter()
            .rev()
            .fold(FreeTerm::Gen(gen), |acc, &l| FreeTerm::apply(l, acc))
    }

    pub fn depth(&self) -> usize {
        match self {
            FreeTerm::Zero | FreeTerm::Gen(_) => 0,
            FreeTerm::Apply(_, a) => 1 + a.depth(),
            FreeTerm::T(args) => 1 + args.iter().map(FreeTerm::depth).max().unwrap_or(0),
        }
    }
}

impl FreeTermContext {
    pub fn new(variety: Variety, generators: usize) -> Self {
        FreeTermContext {
            variety,
            names: generator_names(generators),
        }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Whether `t(u, v, w)` of three words is nonzero.
    pub fn tag_survives(&self, u: &WordElem, v: &WordElem, w: &WordElem) -> bool {
        match self.variety {
            // Killed exactly when two stems cover all three arguments, that
            // is when at most two generators occur.
            Variety::V1 => u.gen != v.gen && u.gen != w.gen && v.gen != w.gen,
            Variety::V0 => {
                let pv_qv = v.gen == w.gen
                    && matches!(v.word.0.first(), Some(Letter::P))
                    && matches!(w.word.0.first(), Some(Letter::Q))
                    && v.word.0[1..] == w.word.0[1..];
                let in_sub = |s: &WordElem| u.gen == s.gen && u.word.ends_with(&s.word);
                !(pv_qv || in_sub(v) || in_sub(w))
            }
        }
    }

    pub fn apply_letter(&self, l: Letter, e: &FreeElement) -> FreeElement {
        match e {
            FreeElement::Word(w) => {
                let mut word = vec![l];
                word.extend_from_slice(&w.word.0);
                FreeElement::word(MWord(word), w.gen)
            }
            _ => FreeElement::Zero,
        }
    }

    pub fn apply_word(&self, m: &MWord, e: &FreeElement) -> FreeElement {
        match e {
            FreeElement::Word(w) => FreeElement::word(m.concat(&w.word), w.gen),
            _ if m.is_empty() => e.clone(),
            _ => FreeElement::Zero,
        }
    }

    pub fn apply_t(&self, a: &FreeElement, b: &FreeElement, c: &FreeElement) -> FreeElement {
        match (a, b, c) {
            (FreeElement::Word(u), FreeElement::Word(v), FreeElement::Word(w)) => {
                if self.tag_survives(u, v, w) {
                    FreeElement::Tag(Box::new([u.clone(), v.clone(), w.clone()]))
                } else {
                    FreeElement::Zero
                }
            }
            _ => FreeElement::Zero,
        }
    }

    pub fn normal_form(&self, t: &FreeTerm) -> Result<FreeElement> {
        Ok(match t {
            FreeTerm::Zero => FreeElement::Zero,
            FreeTerm::Gen(g) => {
                if *g >= self.generators() {
                    return Err(Error::parse(format!(
                        "generator {} outside a context of {}",
                        g,
                        self.generators()
                    )));
                }
                FreeElement::Word(WordElem::gen(*g))
            }
            FreeTerm::Apply(l, inner) => self.apply_letter(*l, &self.normal_form(inner)?),
            FreeTerm::T(args) => {
                let a = self.normal_form(&args[0])?;
                let b = self.normal_form(&args[1])?;
                let c = self.normal_form(&args[2])?;
                self.apply_t(&a, &b, &c)
            }
        })
    }

    /// The normal form read back as a term.
    pub fn embed(&self, e: &FreeElement) -> FreeTerm {
        match e {
            FreeElement::Zero => FreeTerm::Zero,
            FreeElement::Word(w) => FreeTerm::word(&w.word, w.gen),
            FreeElement::Tag(ws) => FreeTerm::t(
                FreeTerm::word(&ws[0].word, ws[0].gen),
                FreeTerm::word(&ws[1].word, ws[1].gen),
                FreeTerm::word(&ws[2].word, ws[2].gen),
            ),
        }
    }

    pub fn parse(&self, text: &str) -> Result<FreeTerm> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            names: &self.names,
        };
        let t = p.term()?;
        if p.pos != tokens.len() {
            return Err(Error::parse(format!("trailing input in `{}`", text)));
        }
        Ok(t)
    }

    pub fn parse_nf(&self, text: &str) -> Result<FreeElement> {
        self.normal_form(&self.parse(text)?)
    }

    pub fn display<'a>(&'a self, e: &'a FreeElement) -> ElementDisplay<'a> {
        ElementDisplay { ctx: self, e }
    }

    fn fmt_word(&self, w: &WordElem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &w.word.0 {
            write!(f, "{}", l.as_char())?;
        }
        f.write_str(&self.names[w.gen])
    }

    /// Every normal form whose words have length at most `max_len`; tags
    /// use words of length at most `max_len - 1`. Ordered: zero, words,
    /// tags.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<FreeElement> {
        let words = self.words_up_to(max_len);
        let mut out = vec![FreeElement::Zero];
        out.extend(words.iter().cloned().map(FreeElement::Word));
        if max_len >= 1 {
            let short = self.words_up_to(max_len - 1);
            for u in &short {
                for v in &short {
                    for w in &short {
                        if self.tag_survives(u, v, w) {
                            out.push(FreeElement::Tag(Box::new([
                                u.clone(),
                                v.clone(),
                                w.clone(),
                            ])));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn words_up_to(&self, max_len: usize) -> Vec<WordElem> {
        let words = MWord::all_up_to(max_len);
        (0..self.generators())
            .flat_map(|g| words.iter().map(move |m| WordElem::new(m.clone(), g)))
            .collect()
    }
}

pub struct ElementDisplay<'a> {
    ctx: &'a FreeTermContext,
    e: &'a FreeElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e {
            FreeElement::Zero => f.write_str("0"),
            FreeElement::Word(w) => self.ctx.fmt_word(w, f),
            FreeElement::Tag(ws) => {
                f.write_str("t(")?;
                self.ctx.fmt_word(&ws[0], f)?;
                f.write_str(", ")?;
                self.ctx.fmt_word(&ws[1], f)?;
                f.write_str(", ")?;
                self.ctx.fmt_word(&ws[2], f)?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(Error::parse(format!("unexpected character `{}`", other))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn expect(&mut self, t: Token) -> Result<()> {
        if self.tokens.get(self.pos) == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(format!("expected {:?} at token {}", t, self.pos)))
        }
    }

    fn term(&mut self) -> Result<FreeTerm> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse("unexpected end of term"))?;
        self.pos += 1;
        match tok {
            Token::Open => {
                let t = self.term()?;
                self.expect(Token::Close)?;
                Ok(t)
            }
            Token::Ident(s) if s == "0" => Ok(FreeTerm::Zero),
            Token::Ident(s) if s == "t" && self.tokens.get(self.pos) == Some(&Token::Open) => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(Token::Comma)?;
                let b = self.term()?;
                self.expect(Token::Comma)?;
                let c = self.term()?;
                self.expect(Token::Close)?;
                Ok(FreeTerm::t(a, b, c))
            }
            Token::Ident(s) => {
                if let Some(g) = self.names.iter().position(|n| *n == s) {
                    return Ok(FreeTerm::Gen(g));
                }
                // A run of p/q letters, optionally glued to a generator name.
                let letters: String = s.chars().take_while(|&c| c == 'p' || c == 'q').collect();
                if letters.is_empty() {
                    return Err(Error::parse(format!("unknown name `{}`", s)));
                }
                let rest = &s[letters.len()..];
                let inner = if rest.is_empty() {
                    self.term()?
                } else if let Some(g) = self.names.iter().position(|n| n == rest) {
                    FreeTerm::Gen(g)
                } else {
                    return Err(Error::parse(format!("unknown name `{}`", s)));
                };
                let word = MWord::parse(&letters)?;
                Ok(word
                    .0
                    .iter()
                    .rev()
                    .fold(inner, |acc, &l| FreeTerm::apply(l, acc)))
            }
            other => Err(Error::parse(format!("unexpected token {:?}", other))),
        }
    }
}

/// A substitution of generators by normal forms of another context,
/// extended to a homomorphism.
#[derive(Debug, Clone)]
pub struct SubstHom {
    pub source: FreeTermContext,
    pub target: FreeTermContext,
    pub images: Vec<FreeElement>,
}

/// The homomorphism sending generator `i` of `source` to `images[i]`.
pub fn subst_hom(
    source: &FreeTermContext,
    target: &FreeTermContext,
    images: Vec<FreeElement>,
) -> Result<SubstHom> {
    if images.len() != source.generators() {
        return Err(Error::InvalidArgument(format!(
            "{} images for {} generators",
            images.len(),
            source.generators()
        )));
    }
    for e in &images {
        let gens: Vec<usize> = match e {
            FreeElement::Zero => vec![],
            FreeElement::Word(w) => vec![w.gen],
            FreeElement::Tag(ws) => ws.iter().map(|w| w.gen).collect(),
        };
        if gens.iter().any(|&g| g >= target.generators()) {
            return Err(Error::InvalidArgument("image outside the target context".into()));
        }
        if let FreeElement::Tag(ws) = e {
            if !target.tag_survives(&ws[0], &ws[1], &ws[2]) {
                return Err(Error::InvalidArgument("image tag is not a normal form".into()));
            }
        }
    }
    Ok(SubstHom {
        source: source.clone(),
        target: target.clone(),
        images,
    })
}

impl SubstHom {
    pub fn apply(&self, e: &FreeElement) -> FreeElement {
        let word = |w: &WordElem| self.target.apply_word(&w.word, &self.images[w.gen]);
        match e {
            FreeElement::Zero => FreeElement::Zero,
            FreeElement::Word(w) => word(w),
            FreeElement::Tag(ws) => self.target.apply_t(&word(&ws[0]), &word(&ws[1]), &word(&ws[2])),
        }
    }
}
