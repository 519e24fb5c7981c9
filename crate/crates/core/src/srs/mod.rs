//! String rewriting over a finite ordered alphabet with shortlex
//! Knuth–Bendix completion, and monoid presentations.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A word as a sequence of letter indices into an alphabet.
pub type Word = Vec<usize>;

/// Shortlex order: shorter words first, then lexicographic by letter index.
pub fn shortlex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn find(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| hay[i..i + needle.len()] == *needle)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &letters {
            if l.is_empty() || l == "1" || l.chars().any(|c| c.is_whitespace() || c == '=') {
                return Err(Error::parse(format!("invalid letter `{}`", l)));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::parse(format!("duplicate letter `{}`", l)));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    /// Parses a word: whitespace-separated chunks, each split greedily into
    /// the longest matching letters. `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            if chunk == "1" {
                continue;
            }
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .letters
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| rest.starts_with(l.as_str()))
                    .max_by_key(|(_, l)| l.len())
                    .ok_or_else(|| Error::parse(format!("unknown letter in `{}`", chunk)))?;
                out.push(best.0);
                rest = &rest[best.1.len()..];
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.letters.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            " "
        };
        w.iter()
            .map(|&i| self.letters[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|w| {
                    (0..self.len()).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
}

/// An overlap or containment of two left-hand sides with its two one-step
/// reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: Word,
    pub left: Word,
    pub right: Word,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        let mut rs = RewriteSystem {
            alphabet,
            rules: Vec::new(),
        };
        for (l, r) in rules {
            rs.push_rule(l, r)?;
        }
        Ok(rs)
    }

    fn push_rule(&mut self, lhs: Word, rhs: Word) -> Result<()> {
        let n = self.alphabet.len();
        if lhs.iter().chain(&rhs).any(|&a| a >= n) {
            return Err(Error::InvalidArgument("letter outside the alphabet".into()));
        }
        if lhs.is_empty() || shortlex(&lhs, &rhs) != Ordering::Greater {
            return Err(Error::InvalidArgument(format!(
                "rule {} -> {} is not shortlex-decreasing",
                self.alphabet.format_word(&lhs),
                self.alphabet.format_word(&rhs)
            )));
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// One rewriting step: the first rule, in order, with an occurrence in
    /// `w` is applied at its leftmost occurrence.
    fn step(&self, w: &[usize]) -> Option<Word> {
        self.rules.iter().find_map(|r| {
            find(w, &r.lhs).map(|i| {
                let mut out = w[..i].to_vec();
                out.extend_from_slice(&r.rhs);
                out.extend_from_slice(&w[i + r.lhs.len()..]);
                out
            })
        })
    }

    /// Rewrites to an irreducible word. Terminates since every rule
    /// decreases shortlex.
    pub fn reduce(&self, w: &[usize]) -> Word {
        let mut cur = w.to_vec();
        while let Some(next) = self.step(&cur) {
            cur = next;
        }
        cur
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.rules.iter().all(|r| find(w, &r.lhs).is_none())
    }

    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // A proper suffix of l1 is a proper prefix of l2.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut word = l1.clone();
                        word.extend_from_slice(&l2[k..]);
                        let mut left = r1.rhs.clone();
                        left.extend_from_slice(&l2[k..]);
                        let mut right = l1[..l1.len() - k].to_vec();
                        right.extend_from_slice(&r2.rhs);
                        out.push(CriticalPair { word, left, right });
                    }
                }
                // l2 occurs inside l1.
                if i != j && l2.len() <= l1.len() {
                    for s in 0..=l1.len() - l2.len() {
                        if l1[s..s + l2.len()] == l2[..] {
                            let mut right = l1[..s].to_vec();
                            right.extend_from_slice(&r2.rhs);
                            right.extend_from_slice(&l1[s + l2.len()..]);
                            out.push(CriticalPair {
                                word: l1.clone(),
                                left: r1.rhs.clone(),
                                right,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Critical pairs whose reducts have different normal forms.
    pub fn unjoinable_pairs(&self) -> Vec<CriticalPair> {
        self.critical_pairs()
            .into_iter()
            .filter(|cp| self.reduce(&cp.left) != self.reduce(&cp.right))
            .collect()
    }

    pub fn is_confluent(&self) -> bool {
        self.unjoinable_pairs().is_empty()
    }

    pub fn equal(&self, a: &[usize], b: &[usize]) -> bool {
        self.reduce(a) == self.reduce(b)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.alphabet.letters.join(" "))?;
        for r in &self.rules {
            writeln!(
                f,
                "{} -> {}",
                self.alphabet.format_word(&r.lhs),
                self.alphabet.format_word(&r.rhs)
            )?;
        }
        Ok(())
    }
}

/// A monoid presentation: an ordered alphabet and defining relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Self> {
        let n = alphabet.len();
        if relations.iter().flat_map(|(a, b)| a.iter().chain(b)).any(|&x| x >= n) {
            return Err(Error::InvalidArgument("letter outside the alphabet".into()));
        }
        Ok(Presentation { alphabet, relations })
    }

    /// Builds a presentation from letters and relation strings `lhs = rhs`.
    pub fn from_strs(letters: &[&str], relations: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(letters.iter().copied())?;
        let rels = relations
            .iter()
            .map(|r| parse_relation(&alphabet, r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, rels)
    }

    /// The file format: a line of letters, then one `lhs = rhs` per line.
    /// `1` is the empty word; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let head = lines
            .next()
            .ok_or_else(|| Error::parse("presentation has no alphabet line"))?;
        let alphabet = Alphabet::new(head.split_whitespace())?;
        let rels = lines
            .map(|l| parse_relation(&alphabet, l))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, rels)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.alphabet.letters.join(" ");
        s.push('\n');
        for (a, b) in &self.relations {
            s.push_str(&format!(
                "{} = {}\n",
                self.alphabet.format_word(a),
                self.alphabet.format_word(b)
            ));
        }
        s
    }

    /// Removes `letter` using a relation `letter = w` (either side) with `w`
    /// free of it, substituting `w` everywhere else.
    pub fn eliminate(&self, letter: &str) -> Result<Presentation> {
        let x = self
            .alphabet
            .index_of(letter)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown letter `{}`", letter)))?;
        let pos = self
            .relations
            .iter()
            .position(|(a, b)| {
                (a[..] == [x] && !b.contains(&x)) || (b[..] == [x] && !a.contains(&x))
            })
            .ok_or_else(|| {
                Error::InvalidArgument(format!("no relation defines `{}`", letter))
            })?;
        let (a, b) = &self.relations[pos];
        let def = if a[..] == [x] { b.clone() } else { a.clone() };
        let remap = |i: usize| if i > x { i - 1 } else { i };
        let subst = |w: &Word| -> Word {
            w.iter()
                .flat_map(|&c| {
                    if c == x {
                        def.iter().map(|&d| remap(d)).collect::<Vec<_>>()
                    } else {
                        vec![remap(c)]
                    }
                })
                .collect()
        };
        let letters: Vec<String> = self
            .alphabet
            .letters
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != x)
            .map(|(_, l)| l.clone())
            .collect();
        let relations = self
            .relations
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, (a, b))| (subst(a), subst(b)))
            .collect();
        Presentation::new(Alphabet::new(letters)?, relations)
    }
}

fn parse_relation(alphabet: &Alphabet, line: &str) -> Result<(Word, Word)> {
    let (l, r) = line
        .split_once('=')
        .ok_or_else(|| Error::parse(format!("relation `{}` has no `=`", line)))?;
    Ok((alphabet.parse_word(l)?, alphabet.parse_word(r)?))
}

/// Presentation of the coproduct: alphabets joined in order of first
/// appearance with the `shared` letters identified, relations concatenated.
/// Any other letter occurring in two factors is rejected.
pub fn coproduct_presentation(factors: &[Presentation], shared: &[&str]) -> Result<Presentation> {
    for (i, f) in factors.iter().enumerate() {
        for s in shared {
            if f.alphabet.index_of(s).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "shared letter `{}` missing from factor {}",
                    s, i
                )));
            }
        }
    }
    let mut letters: Vec<String> = Vec::new();
    let mut relations = Vec::new();
    for f in factors {
        let mut map = Vec::with_capacity(f.alphabet.len());
        for l in &f.alphabet.letters {
            match letters.iter().position(|m| m == l) {
                Some(i) if shared.contains(&l.as_str()) => map.push(i),
                Some(_) => {
                    return Err(Error::InvalidArgument(format!(
                        "letter `{}` occurs in two factors but is not shared",
                        l
                    )))
                }
                None => {
                    map.push(letters.len());
                    letters.push(l.clone());
                }
            }
        }
        for (a, b) in &f.relations {
            relations.push((
                a.iter().map(|&c| map[c]).collect(),
                b.iter().map(|&c| map[c]).collect(),
            ));
        }
    }
    Presentation::new(Alphabet::new(letters)?, relations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KbBudget {
    pub max_rules: usize,
    pub max_word_len: usize,
}

impl Default for KbBudget {
    fn default() -> Self {
        KbBudget {
            max_rules: 200,
            max_word_len: 40,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Completion {
    Complete(RewriteSystem),
    /// The budget ran out; `partial` is the system reached so far and is
    /// not known to be confluent.
    Exhausted { partial: RewriteSystem, reason: String },
}

impl Completion {
    pub fn system(&self) -> &RewriteSystem {
        match self {
            Completion::Complete(rs) => rs,
            Completion::Exhausted { partial, .. } => partial,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Completion::Complete(_))
    }
}

/// Orients `a = b` by shortlex, larger side on the left. `None` when equal.
fn orient(a: Word, b: Word) -> Option<(Word, Word)> {
    match shortlex(&a, &b) {
        Ordering::Greater => Some((a, b)),
        Ordering::Less => Some((b, a)),
        Ordering::Equal => None,
    }
}

/// Knuth–Bendix completion for shortlex with the declared alphabet order.
pub fn knuth_bendix(p: &Presentation, budget: KbBudget) -> Result<Completion> {
    if budget.max_rules == 0 || budget.max_word_len == 0 {
        return Err(Error::InvalidArgument("budgets must be positive".into()));
    }
    let mut rs = RewriteSystem {
        alphabet: p.alphabet.clone(),
        rules: Vec::new(),
    };
    let mut pending: Vec<(Word, Word)> = p.relations.iter().rev().cloned().collect();
    loop {
        while let Some((a, b)) = pending.pop() {
            let (a, b) = (rs.reduce(&a), rs.reduce(&b));
            let Some((lhs, rhs)) = orient(a, b) else {
                continue;
            };
            if lhs.len() > budget.max_word_len {
                return Ok(Completion::Exhausted {
                    partial: rs,
                    reason: format!("rule longer than {} letters", budget.max_word_len),
                });
            }
            // Interreduce: rules whose left side the new rule rewrites go
            // back to the queue; right sides are normalized.
            let new_rule = RewriteSystem {
                alphabet: rs.alphabet.clone(),
                rules: vec![Rule {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                }],
            };
            let mut kept = Vec::with_capacity(rs.rules.len() + 1);
            for r in rs.rules.drain(..) {
                if find(&r.lhs, &lhs).is_some() {
                    pending.push((r.lhs, r.rhs));
                } else {
                    kept.push(r);
                }
            }
            kept.push(Rule { lhs, rhs });
            rs.rules = kept;
            for i in 0..rs.rules.len() {
                let r = new_rule.reduce(&rs.rules[i].rhs);
                rs.rules[i].rhs = rs.reduce(&r);
            }
            if rs.rules.len() > budget.max_rules {
                return Ok(Completion::Exhausted {
                    partial: rs,
                    reason: format!("more than {} rules", budget.max_rules),
                });
            }
        }
        let mut fresh: Vec<(Word, Word)> = Vec::new();
        for cp in rs.critical_pairs() {
            let (a, b) = (rs.reduce(&cp.left), rs.reduce(&cp.right));
            if a != b && !fresh.iter().any(|(x, y)| (x, y) == (&a, &b) || (x, y) == (&b, &a)) {
                fresh.push((a, b));
            }
        }
        if fresh.is_empty() {
            // Left sides are pairwise incomparable here; sort for a stable
            // presentation.
            rs.rules.sort_by(|x, y| shortlex(&x.lhs, &y.lhs));
            return Ok(Completion::Complete(rs));
        }
        fresh.reverse();
        pending = fresh;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(letters: &[&str]) -> Alphabet {
        Alphabet::new(letters.iter().copied()).unwrap()
    }

    fn rs(letters: &[&str], rules: &[(&str, &str)]) -> RewriteSystem {
        let a = ab(letters);
        let rules = rules
            .iter()
            .map(|(l, r)| (a.parse_word(l).unwrap(), a.parse_word(r).unwrap()))
            .collect();
        RewriteSystem::new(a, rules).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let s = rs(&["x", "y"], &[("xy", "1")]);
        let w = s.alphabet().parse_word("xxy").unwrap();
        assert_eq!(s.alphabet().format_word(&s.reduce(&w)), "x");
        let e = rs(&["x", "y"], &[]);
        assert_eq!(e.reduce(&w), w);

        let s1 = rs(&["x", "y", "z"], &[("xy", "1"), ("zx", "1")]);
        let s2 = rs(&["x", "y", "z"], &[("zx", "1"), ("xy", "1")]);
        let w = s1.alphabet().parse_word("zxy").unwrap();
        assert_eq!(s1.alphabet().format_word(&s1.reduce(&w)), "z");
        assert_eq!(s2.alphabet().format_word(&s2.reduce(&w)), "y");
        assert!(!s1.is_confluent());
    }

    #[test]
    fn rejects_non_decreasing_rules() {
        let a = ab(&["x", "y"]);
        assert!(RewriteSystem::new(a.clone(), vec![(vec![0], vec![1])]).is_err());
        assert!(RewriteSystem::new(a, vec![(vec![], vec![])]).is_err());
    }

    #[test]
    fn critical_pair_examples() {
        let s = rs(&["x", "y", "z"], &[("xy", "1"), ("zx", "1")]);
        let cps = s.critical_pairs();
        let zxy = vec![2, 0, 1];
        assert!(cps.iter().any(|c| c.word == zxy
            && ((c.left == vec![1] && c.right == vec![2])
                || (c.left == vec![2] && c.right == vec![1]))));
        let a = rs(&["a"], &[("aa", "1")]);
        let cps = a.critical_pairs();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].word, vec![0, 0, 0]);
        assert_eq!((cps[0].left.clone(), cps[0].right.clone()), (vec![0], vec![0]));
        assert!(rs(&["a"], &[]).critical_pairs().is_empty());
    }

    #[test]
    fn inverses_fall_together() {
        let p = Presentation::from_strs(&["x", "y", "z"], &["xy = 1", "zx = 1"]).unwrap();
        let c = knuth_bendix(&p, KbBudget::default()).unwrap();
        assert!(c.is_complete());
        let s = c.system();
        assert!(s.rules().contains(&Rule {
            lhs: vec![2],
            rhs: vec![1]
        }));
        assert!(s.reduce(&[0, 1]).is_empty());
        assert!(s.reduce(&[2, 0]).is_empty());
        assert!(s.is_confluent());
    }

    #[test]
    fn involution() {
        let p = Presentation::from_strs(&["a"], &["aa = 1"]).unwrap();
        let c = knuth_bendix(&p, KbBudget::default()).unwrap();
        assert_eq!(c.system().rules(), &[Rule { lhs: vec![0, 0], rhs: vec![] }]);
    }

    #[test]
    fn distinguished_elements_example() {
        let b1 = Presentation::from_strs(&["u1", "x", "y"], &["y = x u1"]).unwrap();
        let b2 = Presentation::from_strs(&["u2", "x", "y"], &["y = x u2"]).unwrap();
        let cp = coproduct_presentation(&[b1.clone(), b2.clone()], &["x", "y"]).unwrap();
        let p = cp.eliminate("y").unwrap();
        assert_eq!(p.alphabet.letters(), &["u1", "x", "u2"]);
        assert_eq!(p.relations, vec![(vec![1, 0], vec![1, 2])]);
        let c = knuth_bendix(&p, KbBudget::default()).unwrap();
        let s = c.system();
        assert_eq!(s.rules(), &[Rule { lhs: vec![1, 2], rhs: vec![1, 0] }]);
        assert!(!s.equal(&[0], &[2]));

        let b3 = Presentation::from_strs(&["x", "y", "w"], &["xw = 1", "wx = 1"]).unwrap();
        let cp = coproduct_presentation(&[b1, b2, b3], &["x", "y"]).unwrap();
        let c = knuth_bendix(&cp, KbBudget::default()).unwrap();
        assert!(c.is_complete());
        let s = c.system();
        let a = s.alphabet();
        let w = |t: &str| a.parse_word(t).unwrap();
        assert!(s.equal(&w("u1"), &w("u2")));
        assert!(s.equal(&w("u1"), &w("w y")));
    }

    #[test]
    fn coproduct_edge_cases() {
        let b = Presentation::from_strs(&["x"], &["xx = x"]).unwrap();
        assert_eq!(coproduct_presentation(&[b.clone()], &[]).unwrap(), b);
        assert!(coproduct_presentation(&[b.clone()], &["y"]).is_err());
        assert!(coproduct_presentation(&[b.clone(), b], &[]).is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let text = "x y z\n# inverses\nxy = 1\nzx = 1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        assert!(Presentation::parse("x\nxy = 1").is_err());
        assert!(Presentation::parse("").is_err());
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        // The braid relation has no finite shortlex completion.
        let p = Presentation::from_strs(&["a", "b"], &["aba = bab"]).unwrap();
        let c = knuth_bendix(
            &p,
            KbBudget {
                max_rules: 3,
                max_word_len: 12,
            },
        )
        .unwrap();
        assert!(!c.is_complete());
        assert!(!c.system().rules().is_empty());
    }
}
