use std::collections::{BTreeSet, VecDeque};

use super::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// Default bound on the carrier size for congruence enumeration.
pub const DEFAULT_CONGRUENCE_BOUND: usize = 12;

/// A congruence stored as canonical block labels: blocks are numbered in
/// order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
    blocks: usize,
}

fn canonical_labels(raw: &[usize]) -> (Vec<usize>, usize) {
    let mut remap = std::collections::HashMap::new();
    let labels = raw
        .iter()
        .map(|r| {
            let next = remap.len();
            *remap.entry(*r).or_insert(next)
        })
        .collect();
    (labels, remap.len())
}

impl Congruence {
    /// Validates that `labels` (any block labelling) is compatible with the
    /// operations of `alg`.
    pub fn new(alg: &FiniteAlgebra, labels: &[usize]) -> Result<Self> {
        if labels.len() != alg.size() {
            return Err(Error::InvalidArgument(format!(
                "partition has {} entries for an algebra of size {}",
                labels.len(),
                alg.size()
            )));
        }
        let (labels, blocks) = canonical_labels(labels);
        let c = Congruence { labels, blocks };
        if !c.is_compatible_with(alg) {
            return Err(Error::NotACongruence);
        }
        Ok(c)
    }

    pub(crate) fn from_labels_unchecked(raw: &[usize]) -> Self {
        let (labels, blocks) = canonical_labels(raw);
        Congruence { labels, blocks }
    }

    pub fn diagonal(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn full(n: usize) -> Self {
        Congruence {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks == self.labels.len()
    }

    pub fn is_full(&self) -> bool {
        self.blocks <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    /// Intersection of two equivalence relations.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        let mut index = std::collections::HashMap::new();
        let raw: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let next = index.len();
                *index.entry(*p).or_insert(next)
            })
            .collect();
        Congruence::from_labels_unchecked(&raw)
    }

    /// Whether `self` refines `other`.
    pub fn le(&self, other: &Congruence) -> bool {
        let mut img = vec![usize::MAX; self.blocks];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            if img[a] == usize::MAX {
                img[a] = b;
            } else if img[a] != b {
                return false;
            }
        }
        true
    }

    fn is_compatible_with(&self, alg: &FiniteAlgebra) -> bool {
        // Compatibility with every basic translation: changing one argument
        // within its block must not leave the block of the value.
        for (op, sym) in alg.signature().ops().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            let mut ok = true;
            let mut args = vec![0; sym.arity];
            let n = alg.size();
            for_each_tuple(n, sym.arity, |base| {
                if !ok {
                    return;
                }
                let v = self.labels[alg.apply(op, base)];
                for slot in 0..sym.arity {
                    args.copy_from_slice(base);
                    for alt in 0..n {
                        if self.labels[alt] == self.labels[base[slot]] {
                            args[slot] = alt;
                            if self.labels[alg.apply(op, &args)] != v {
                                ok = false;
                                return;
                            }
                        }
                    }
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns true if they were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// The least congruence containing `pairs`.
///
/// Union-find with a FIFO worklist of merged pairs. Each merged pair is pushed
/// through every operation and argument slot, with the remaining arguments
/// ranging over all tuples in lexicographic order.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = alg.size();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::ElementOutOfRange {
                element: a.max(b),
                size: n,
            });
        }
    }
    let mut uf = UnionFind::new(n);
    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            work.push_back((a, b));
        }
    }
    let mut args_a = Vec::new();
    let mut args_b = Vec::new();
    while let Some((a, b)) = work.pop_front() {
        for (op, sym) in alg.signature().ops().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            for slot in 0..sym.arity {
                for_each_tuple(n, sym.arity - 1, |rest| {
                    args_a.clear();
                    args_a.extend_from_slice(&rest[..slot]);
                    args_a.push(a);
                    args_a.extend_from_slice(&rest[slot..]);
                    args_b.clear();
                    args_b.extend_from_slice(&args_a);
                    args_b[slot] = b;
                    let (x, y) = (alg.apply(op, &args_a), alg.apply(op, &args_b));
                    if uf.union(x, y) {
                        work.push_back((x, y));
                    }
                });
            }
        }
    }
    Ok(Congruence::from_labels_unchecked(&uf.labels()))
}

fn join(a: &Congruence, b: &Congruence) -> Congruence {
    let mut uf = UnionFind::new(a.size());
    for c in [a, b] {
        let mut first = vec![usize::MAX; c.num_blocks()];
        for (x, &l) in c.labels().iter().enumerate() {
            if first[l] == usize::MAX {
                first[l] = x;
            } else {
                uf.union(first[l], x);
            }
        }
    }
    Congruence::from_labels_unchecked(&uf.labels())
}

fn check_bound(alg: &FiniteAlgebra, bound: usize) -> Result<()> {
    if alg.size() > bound {
        return Err(Error::SizeBound {
            what: "congruence enumeration",
            size: alg.size(),
            bound,
        });
    }
    Ok(())
}

/// Every congruence of `alg`, computed as the join-closure of the principal
/// congruences. Ordered by decreasing number of blocks, then by labels.
pub fn all_congruences(alg: &FiniteAlgebra, bound: usize) -> Result<Vec<Congruence>> {
    check_bound(alg, bound)?;
    let n = alg.size();
    let mut set: BTreeSet<Congruence> = BTreeSet::new();
    set.insert(Congruence::diagonal(n));
    let mut principal = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = congruence_generated(alg, &[(a, b)])?;
            if set.insert(c.clone()) {
                principal.push(c);
            }
        }
    }
    // Every congruence is a join of principal ones; close the list under
    // joining with a principal congruence.
    let mut frontier: Vec<Congruence> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = join(c, p);
                if set.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Congruence> = set.into_iter().collect();
    out.sort_by(|x, y| y.blocks.cmp(&x.blocks).then_with(|| x.labels.cmp(&y.labels)));
    Ok(out)
}

/// Subdirect irreducibility: the meet of all non-diagonal congruences is
/// non-diagonal. Returns that meet (the monolith) when it exists.
pub fn is_subdirectly_irreducible(
    alg: &FiniteAlgebra,
    bound: usize,
) -> Result<(bool, Option<Congruence>)> {
    if alg.size() < 2 {
        return Err(Error::TrivialAlgebra);
    }
    let all = all_congruences(alg, bound)?;
    Ok(monolith_of(alg.size(), all.iter()))
}

pub(crate) fn monolith_of<'a>(
    n: usize,
    congruences: impl Iterator<Item = &'a Congruence>,
) -> (bool, Option<Congruence>) {
    let mut meet = Congruence::full(n);
    for c in congruences.filter(|c| !c.is_diagonal()) {
        meet = meet.meet(c);
    }
    if meet.is_diagonal() {
        (false, None)
    } else {
        (true, Some(meet))
    }
}

impl FiniteAlgebra {
    /// The quotient by `c`; blocks become elements in label order. Returns the
    /// quotient algebra and the quotient map.
    pub fn quotient(&self, c: &Congruence) -> Result<(FiniteAlgebra, Vec<usize>)> {
        if c.size() != self.size() || !c.is_compatible_with(self) {
            return Err(Error::NotACongruence);
        }
        let reps: Vec<usize> = c.blocks().iter().map(|b| b[0]).collect();
        let labels = c.labels().to_vec();
        let q = FiniteAlgebra::from_fn(self.signature().clone(), c.num_blocks(), |op, args| {
            let lifted: Vec<usize> = args.iter().map(|&a| reps[a]).collect();
            labels[self.apply(op, &lifted)]
        })?;
        Ok((q, labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    #[test]
    fn generated_examples() {
        let g = congruence_generated(&c(4), &[(0, 2)]).unwrap();
        assert_eq!(g.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert!(congruence_generated(&c(4), &[]).unwrap().is_diagonal());
        assert!(congruence_generated(&c(4), &[(0, 1)]).unwrap().is_full());
    }

    #[test]
    fn enumeration_examples() {
        let all = all_congruences(&c(4), DEFAULT_CONGRUENCE_BOUND).unwrap();
        assert_eq!(all.len(), 3);
        let all = all_congruences(&c(6), DEFAULT_CONGRUENCE_BOUND).unwrap();
        assert_eq!(all.len(), 4);
        let blocks: Vec<usize> = all.iter().map(|c| c.num_blocks()).collect();
        assert_eq!(blocks, vec![6, 3, 2, 1]);
        let one = FiniteAlgebra::trivial(c(1).signature().clone());
        assert_eq!(all_congruences(&one, 12).unwrap().len(), 1);
        assert!(all_congruences(&c(13), 12).unwrap_err().is_budget());
    }

    #[test]
    fn si_examples() {
        let (si, mono) = is_subdirectly_irreducible(&c(4), 12).unwrap();
        assert!(si);
        assert_eq!(mono.unwrap().blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert!(!is_subdirectly_irreducible(&c(6), 12).unwrap().0);
        assert!(is_subdirectly_irreducible(&c(2), 12).unwrap().0);
        assert!(matches!(
            is_subdirectly_irreducible(&c(1), 12),
            Err(Error::TrivialAlgebra)
        ));
    }

    #[test]
    fn quotient_examples() {
        let g = congruence_generated(&c(4), &[(0, 2)]).unwrap();
        let (q, map) = c(4).quotient(&g).unwrap();
        assert_eq!(q, c(2));
        assert_eq!(map, vec![0, 1, 0, 1]);
        let (q, _) = c(5).quotient(&Congruence::diagonal(5)).unwrap();
        assert_eq!(q, c(5));
        let (q, _) = c(5).quotient(&Congruence::full(5)).unwrap();
        assert_eq!(q.size(), 1);
        assert!(Congruence::new(&c(4), &[0, 0, 1, 1]).is_err());
    }

    #[test]
    fn lattice_ops() {
        let a = Congruence::from_labels_unchecked(&[0, 0, 1, 1]);
        let b = Congruence::from_labels_unchecked(&[0, 1, 0, 1]);
        assert!(a.meet(&b).is_diagonal());
        assert!(join(&a, &b).is_full());
        assert!(Congruence::diagonal(4).le(&a));
        assert!(!a.le(&b));
    }
}
