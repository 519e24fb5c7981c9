//! Free products of two finite groups with an amalgamated subgroup:
//! alternating normal forms, multiplication and torsion.

mod group;

pub use group::{group_signature, permutations, stabilizer_of_last, FiniteGroup};

use std::path::Path;

use serde_json::Value;

use crate::algcore::io;
use crate::error::{Error, Result};

/// A letter of a word: factor tag (0 or 1) and an element of that factor.
pub type Letter = (usize, usize);

/// A coset representative `(factor, element)` followed, after the whole
/// alternating string, by an element of the amalgamated subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmalgamElement {
    pub reps: Vec<Letter>,
    pub base: usize,
}

impl AmalgamElement {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// `G_1 *_B G_2` with fixed left transversals of `B` in each factor.
#[derive(Debug, Clone)]
pub struct AmalgamCtx {
    factors: [FiniteGroup; 2],
    base: FiniteGroup,
    embeddings: [Vec<usize>; 2],
    transversals: [Vec<usize>; 2],
    /// `split[i][s] = (r, b)` with `s = r emb_i(b)` and `r` in the transversal.
    split: [Vec<(usize, usize)>; 2],
}

impl AmalgamCtx {
    pub fn new(
        g1: FiniteGroup,
        g2: FiniteGroup,
        base: FiniteGroup,
        emb1: Vec<usize>,
        emb2: Vec<usize>,
    ) -> Result<Self> {
        let factors = [g1, g2];
        let embeddings = [emb1, emb2];
        for i in 0..2 {
            if !base.is_embedding_into(&factors[i], &embeddings[i]) {
                return Err(Error::InvalidArgument(format!(
                    "embedding into factor {} is not a one-to-one homomorphism",
                    i
                )));
            }
        }
        let mut transversals: [Vec<usize>; 2] = Default::default();
        let mut split: [Vec<(usize, usize)>; 2] = Default::default();
        for i in 0..2 {
            let g = &factors[i];
            // The identity represents B; other cosets take their least
            // element.
            let mut sp = vec![None; g.order()];
            let mut reps = Vec::new();
            for r in std::iter::once(g.identity()).chain(0..g.order()) {
                if sp[r].is_some() {
                    continue;
                }
                reps.push(r);
                for (b, &s) in embeddings[i].iter().enumerate() {
                    sp[g.mul(r, s)] = Some((r, b));
                }
            }
            transversals[i] = reps;
            split[i] = sp.into_iter().map(|x| x.expect("cosets cover")).collect();
        }
        Ok(AmalgamCtx {
            factors,
            base,
            embeddings,
            transversals,
            split,
        })
    }

    /// `Sym(n) *_{Stab(n)} Sym(n)`, where `Stab(n)` fixes the last point.
    pub fn symmetric_over_stabilizer(n: usize) -> Result<Self> {
        let s = FiniteGroup::symmetric(n)?;
        let (b, inc) = stabilizer_of_last(n)?;
        AmalgamCtx::new(s.clone(), s, b, inc.clone(), inc)
    }

    /// Reads a context file: `{"factors": [G1, G2], "base": B,
    /// "embeddings": [[..], [..]]}` with groups in the algebra file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let group = |v: &Value| -> Result<FiniteGroup> {
            FiniteGroup::from_algebra(io::from_json(&v.to_string())?)
        };
        let factors = v
            .get("factors")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::parse("`factors` must list two groups"))?;
        let base = v.get("base").ok_or_else(|| Error::parse("missing `base`"))?;
        let embs: Vec<Vec<usize>> = serde_json::from_value(
            v.get("embeddings")
                .cloned()
                .ok_or_else(|| Error::parse("missing `embeddings`"))?,
        )?;
        let [e1, e2]: [Vec<usize>; 2] = embs
            .try_into()
            .map_err(|_| Error::parse("`embeddings` must list two maps"))?;
        AmalgamCtx::new(group(&factors[0])?, group(&factors[1])?, group(base)?, e1, e2)
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("{}: {}", path.display(), e)))?;
        Self::from_json(&text)
    }

    pub fn factor(&self, i: usize) -> &FiniteGroup {
        &self.factors[i]
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn embedding(&self, i: usize) -> &[usize] {
        &self.embeddings[i]
    }

    pub fn transversal(&self, i: usize) -> &[usize] {
        &self.transversals[i]
    }

    pub fn identity(&self) -> AmalgamElement {
        AmalgamElement {
            reps: Vec::new(),
            base: self.base.identity(),
        }
    }

    fn check_letter(&self, (f, s): Letter) -> Result<()> {
        if f > 1 || s >= self.factors[f].order() {
            return Err(Error::InvalidArgument(format!(
                "letter ({}, {}) is not an element of a factor",
                f, s
            )));
        }
        Ok(())
    }

    /// `x · (reps, base)` for `x` in factor `f`.
    fn absorb(&self, f: usize, x: usize, reps: &[Letter], base: usize) -> AmalgamElement {
        let g = &self.factors[f];
        match reps.first() {
            None => {
                let (r, b) = self.split[f][g.mul(x, self.embeddings[f][base])];
                AmalgamElement {
                    reps: if r == g.identity() { vec![] } else { vec![(f, r)] },
                    base: b,
                }
            }
            Some(&(f0, r0)) if f0 == f => self.absorb(f, g.mul(x, r0), &reps[1..], base),
            Some(&(f0, _)) => {
                let (r, c) = self.split[f][x];
                let moved = self.embeddings[f0][c];
                if r == g.identity() {
                    self.absorb(f0, moved, reps, base)
                } else {
                    let tail = self.absorb(f0, moved, reps, base);
                    let mut out = vec![(f, r)];
                    out.extend(tail.reps);
                    AmalgamElement {
                        reps: out,
                        base: tail.base,
                    }
                }
            }
        }
    }

    /// Normal form of a product of factor elements, folded from the right.
    pub fn normal_form(&self, word: &[Letter]) -> Result<AmalgamElement> {
        let mut cur = self.identity();
        for &(f, s) in word.iter().rev() {
            self.check_letter((f, s))?;
            cur = self.absorb(f, s, &cur.reps, cur.base);
        }
        Ok(cur)
    }

    /// The element as a word: its representatives and then its base part,
    /// taken in the first factor.
    pub fn to_word(&self, e: &AmalgamElement) -> Vec<Letter> {
        let mut w = e.reps.clone();
        if e.base != self.base.identity() {
            w.push((0, self.embeddings[0][e.base]));
        }
        w
    }

    pub fn multiply(&self, a: &AmalgamElement, b: &AmalgamElement) -> AmalgamElement {
        let mut w = self.to_word(a);
        w.extend(self.to_word(b));
        self.normal_form(&w).expect("letters of normal forms are valid")
    }

    pub fn inverse(&self, e: &AmalgamElement) -> AmalgamElement {
        let w: Vec<Letter> = self
            .to_word(e)
            .into_iter()
            .rev()
            .map(|(f, s)| (f, self.factors[f].inv(s)))
            .collect();
        self.normal_form(&w).expect("letters of normal forms are valid")
    }

    pub fn power(&self, e: &AmalgamElement, k: usize) -> AmalgamElement {
        (0..k).fold(self.identity(), |acc, _| self.multiply(&acc, e))
    }

    /// The element with the given representatives and base part, checked to
    /// be a normal form.
    pub fn element(&self, reps: Vec<Letter>, base: usize) -> Result<AmalgamElement> {
        for w in reps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument(
                    "representatives must alternate between factors".into(),
                ));
            }
        }
        for &(f, r) in &reps {
            self.check_letter((f, r))?;
            if r == self.factors[f].identity() || !self.transversals[f].contains(&r) {
                return Err(Error::InvalidArgument(format!(
                    "{} is not a non-identity representative in factor {}",
                    r, f
                )));
            }
        }
        if base >= self.base.order() {
            return Err(Error::InvalidArgument("base element out of range".into()));
        }
        Ok(AmalgamElement { reps, base })
    }

    /// Conjugates away matching ends until the string has length at most
    /// one or its ends lie in different factors. Returns the conjugate.
    pub fn cyclically_reduce(&self, e: &AmalgamElement) -> AmalgamElement {
        let mut cur = e.clone();
        while cur.reps.len() >= 2 && cur.reps[0].0 == cur.reps[cur.reps.len() - 1].0 {
            let first = self.normal_form(&[cur.reps[0]]).expect("valid");
            cur = self.multiply(&self.multiply(&self.inverse(&first), &cur), &first);
        }
        cur
    }

    /// Finite order exactly when a cyclic reduction lies in a factor.
    pub fn is_torsion(&self, e: &AmalgamElement) -> bool {
        self.cyclically_reduce(e).reps.len() <= 1
    }

    /// The order of `e` if it is at most `limit`.
    pub fn order_up_to(&self, e: &AmalgamElement, limit: usize) -> Option<usize> {
        let id = self.identity();
        let mut x = e.clone();
        for k in 1..=limit {
            if x == id {
                return Some(k);
            }
            x = self.multiply(&x, e);
        }
        None
    }

    /// An order bound for torsion elements: any finite-order element is
    /// conjugate into a factor.
    pub fn torsion_order_bound(&self) -> usize {
        self.factors[0].order().max(self.factors[1].order())
    }

    /// All normal forms with at most `max_len` representatives.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<AmalgamElement> {
        let nonid = |f: usize| -> Vec<usize> {
            self.transversals[f]
                .iter()
                .copied()
                .filter(|&r| r != self.factors[f].identity())
                .collect()
        };
        let choices = [nonid(0), nonid(1)];
        let mut strings: Vec<Vec<Letter>> = vec![vec![]];
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for s in &layer {
                for f in 0..2 {
                    if s.last().map(|l| l.0) == Some(f) {
                        continue;
                    }
                    for &r in &choices[f] {
                        let mut t = s.clone();
                        t.push((f, r));
                        next.push(t);
                    }
                }
            }
            strings.extend(next.iter().cloned());
            layer = next;
        }
        strings
            .into_iter()
            .flat_map(|reps| {
                (0..self.base.order()).map(move |b| AmalgamElement {
                    reps: reps.clone(),
                    base: b,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CosetScan {
    /// Whether some element of the coset has finite order.
    pub torsion_found: bool,
    pub witness: Option<AmalgamElement>,
    pub checked: usize,
}

/// Scans the left coset `σ B` for elements of finite order.
pub fn coset_torsion_scan(ctx: &AmalgamCtx, sigma: &[Letter]) -> Result<CosetScan> {
    let mut checked = 0;
    for b in 0..ctx.base().order() {
        let e = ctx.element(sigma.to_vec(), b)?;
        checked += 1;
        if ctx.is_torsion(&e) {
            return Ok(CosetScan {
                torsion_found: true,
                witness: Some(e),
                checked,
            });
        }
    }
    Ok(CosetScan {
        torsion_found: false,
        witness: None,
        checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetWitness {
    /// Image of the last point under every element of the coset.
    pub image_of_last: usize,
    /// The least element of the coset, as a permutation.
    pub representative: Vec<usize>,
    /// An element of the coset of order at most two.
    pub witness: Vec<usize>,
    pub witness_order: usize,
}

#[derive(Debug, Clone)]
pub struct StabilizerSurvey {
    pub n: usize,
    pub cosets: Vec<CosetWitness>,
    pub all_have_witness: bool,
}

/// In `Sym(n)` with `B` the stabilizer of the last point, finds in every
/// left coset of `B` an element of order at most two: the identity for `B`
/// itself and otherwise the transposition moving the last point where the
/// coset sends it.
pub fn stabilizer_coset_survey(n: usize) -> Result<StabilizerSurvey> {
    if !(2..=6).contains(&n) {
        return Err(Error::SizeBound {
            what: "stabilizer survey points",
            size: n,
            bound: 6,
        });
    }
    let s = FiniteGroup::symmetric(n)?;
    let perms = permutations(n);
    let (_, inc) = stabilizer_of_last(n)?;
    let mut cosets: Vec<CosetWitness> = Vec::new();
    let mut seen = vec![false; perms.len()];
    for (i, p) in perms.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let members: Vec<usize> = inc.iter().map(|&b| s.mul(i, b)).collect();
        for &m in &members {
            seen[m] = true;
        }
        let y = p[n - 1];
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(y, n - 1);
        let ti = perms.binary_search(&t).expect("permutation");
        let order = s.element_order(ti);
        if !members.contains(&ti) || order > 2 {
            return Err(Error::VerificationFailed(format!(
                "no involution found in the coset sending {} to {}",
                n - 1,
                y
            )));
        }
        cosets.push(CosetWitness {
            image_of_last: y,
            representative: p.clone(),
            witness: t,
            witness_order: order,
        });
    }
    Ok(StabilizerSurvey {
        n,
        all_have_witness: cosets.len() == n,
        cosets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> AmalgamCtx {
        AmalgamCtx::symmetric_over_stabilizer(3).unwrap()
    }

    #[test]
    fn transversal_is_pinned() {
        let c = s3();
        // Sym(3) lexicographic: 0=012 1=021 2=102 3=120 4=201 5=210; B = {0, 2}.
        assert_eq!(c.embedding(0), &[0, 2]);
        assert_eq!(c.transversal(0), &[0, 1, 3]);
    }

    #[test]
    fn normal_form_examples() {
        let c = s3();
        let b = c.normal_form(&[(0, 2)]).unwrap();
        assert!(b.is_empty());
        assert_eq!(b.base, 1);
        let s = c.normal_form(&[(1, 4)]).unwrap();
        assert_eq!(s.len(), 1);
        let (r1, r2) = (1, 3);
        let g = &c.factors[0];
        let w = [(0, r1), (1, r2), (1, g.inv(r2)), (0, g.inv(r1))];
        assert_eq!(c.normal_form(&w).unwrap(), c.identity());
    }

    #[test]
    fn multiply_examples() {
        let c = s3();
        let e = c.normal_form(&[(0, 1), (1, 3), (0, 4)]).unwrap();
        assert_eq!(c.multiply(&e, &c.identity()), e);
        assert_eq!(c.multiply(&e, &c.inverse(&e)), c.identity());
        let a = c.normal_form(&[(0, 1)]).unwrap();
        let b = c.normal_form(&[(1, 1)]).unwrap();
        assert_eq!(c.multiply(&a, &b).len(), 2);
    }

    #[test]
    fn torsion_examples() {
        let c = s3();
        for b in 0..2 {
            assert!(c.is_torsion(&c.element(vec![], b).unwrap()));
        }
        let e = c.element(vec![(0, 1), (1, 1)], 0).unwrap();
        assert!(!c.is_torsion(&e));
        assert_eq!(c.order_up_to(&e, 200), None);
        let r = c.normal_form(&[(0, 1)]).unwrap();
        let mid = c.normal_form(&[(1, 3)]).unwrap();
        let conj = c.multiply(&c.multiply(&r, &mid), &c.inverse(&r));
        assert_eq!(conj.len(), 3);
        assert!(c.is_torsion(&conj));
        assert!(c.order_up_to(&conj, 6).is_some());
    }

    #[test]
    fn coset_scans() {
        let c = s3();
        assert!(coset_torsion_scan(&c, &[]).unwrap().torsion_found);
        assert!(coset_torsion_scan(&c, &[(0, 1)]).unwrap().torsion_found);
        let r = coset_torsion_scan(&c, &[(0, 1), (1, 3)]).unwrap();
        assert!(!r.torsion_found);
        assert_eq!(r.checked, 2);
        assert!(coset_torsion_scan(&c, &[(0, 1), (0, 3)]).is_err());
    }

    #[test]
    fn surveys() {
        for (n, k) in [(2, 2), (3, 3), (4, 4)] {
            let s = stabilizer_coset_survey(n).unwrap();
            assert_eq!(s.cosets.len(), k);
            assert!(s.all_have_witness);
            assert!(s.cosets.iter().all(|c| c.witness_order <= 2));
        }
        assert!(stabilizer_coset_survey(7).is_err());
    }

    #[test]
    fn json_context() {
        let c = s3();
        let g = io::to_json(c.factor(0).algebra());
        let b = io::to_json(c.base().algebra());
        let text = format!(
            "{{\"factors\": [{g}, {g}], \"base\": {b}, \"embeddings\": [[0, 2], [0, 2]]}}"
        );
        let d = AmalgamCtx::from_json(&text).unwrap();
        assert_eq!(d.transversal(1), c.transversal(1));
        let bad = format!("{{\"factors\": [{g}, {g}], \"base\": {b}, \"embeddings\": [[0, 3], [0, 2]]}}");
        assert!(AmalgamCtx::from_json(&bad).is_err());
    }
}
