//! Brute-force oracles shared by the integration tests. None of them call
//! the search or construction code they are used to check.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use unialg::algcore::{FiniteAlgebra, Signature};
use unialg::freeness::{Letter, MWord};

pub fn cyclic(d: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(Signature::unary("a"), d, vec![(0..d).map(|i| (i + 1) % d).collect()])
        .unwrap()
}

/// Disjoint union of cycles of the given lengths.
pub fn union(lengths: &[usize]) -> FiniteAlgebra {
    let mut t = Vec::new();
    for &d in lengths {
        let off = t.len();
        t.extend((0..d).map(|i| off + (i + 1) % d));
    }
    FiniteAlgebra::new(Signature::unary("a"), t.len(), vec![t]).unwrap()
}

pub fn random_unary(rng: &mut ChaCha8Rng, n: usize) -> FiniteAlgebra {
    let t = (0..n).map(|_| rng.gen_range(0..n)).collect();
    FiniteAlgebra::new(Signature::unary("a"), n, vec![t]).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, max: usize) -> MWord {
    let len = rng.gen_range(0..=max);
    MWord(
        (0..len)
            .map(|_| if rng.gen_bool(0.5) { Letter::P } else { Letter::Q })
            .collect(),
    )
}

pub fn iterate(t: &[usize], k: usize, x: usize) -> usize {
    (0..k).fold(x, |y, _| t[y])
}

pub fn orbit_len(t: &[usize], x: usize) -> usize {
    let mut seen = HashSet::new();
    let mut y = x;
    while seen.insert(y) {
        y = t[y];
    }
    seen.len()
}

/// `Some(n)` when the table is one cycle through all `n` points.
pub fn single_cycle(t: &[usize]) -> Option<usize> {
    let n = t.len();
    (n > 0 && orbit_len(t, 0) == n && iterate(t, n, 0) == 0).then_some(n)
}

fn arity(a: &FiniteAlgebra, op: usize) -> usize {
    a.signature().ops()[op].arity
}

/// Row-major index of an argument tuple.
fn index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &x| acc * n + x)
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[usize]) -> bool {
    (0..a.signature().ops().len()).all(|op| {
        let k = arity(a, op);
        tuples(a.size(), k).iter().all(|args| {
            let img: Vec<usize> = args.iter().map(|&x| h[x]).collect();
            h[a.table(op)[index(a.size(), args)]] == b.table(op)[index(b.size(), &img)]
        })
    })
}

/// Every homomorphism `a → b`, in lexicographic order.
pub fn brute_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let (n, m) = (a.size(), b.size());
    if n == 0 {
        return vec![vec![]];
    }
    if m == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut h = vec![0; n];
    loop {
        if is_hom(a, b, &h) {
            out.push(h.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            h[i] += 1;
            if h[i] < m {
                break;
            }
            h[i] = 0;
        }
    }
}

/// Membership in SP(gens) by separation of points.
pub fn brute_in_sp(a: &FiniteAlgebra, gens: &[&FiniteAlgebra]) -> bool {
    let homs: Vec<Vec<usize>> = gens.iter().flat_map(|g| brute_homs(a, g)).collect();
    (0..a.size()).all(|x| (0..x).all(|y| homs.iter().any(|h| h[x] != h[y])))
}

/// All partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max + 1 {
            if i == 0 && v > 0 {
                break;
            }
            cur.push(v);
            go(i + 1, n, cur, max.max(v), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// The quotient by a labelling when it is a congruence.
pub fn quotient(a: &FiniteAlgebra, labels: &[usize]) -> Option<FiniteAlgebra> {
    let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; blocks];
    for (x, &l) in labels.iter().enumerate() {
        if rep[l] == usize::MAX {
            rep[l] = x;
        }
    }
    let mut tables = Vec::new();
    for op in 0..a.signature().ops().len() {
        let k = arity(a, op);
        for args in tuples(a.size(), k) {
            let base: Vec<usize> = args.iter().map(|&x| rep[labels[x]]).collect();
            if labels[a.table(op)[index(a.size(), &args)]]
                != labels[a.table(op)[index(a.size(), &base)]]
            {
                return None;
            }
        }
        tables.push(
            tuples(blocks, k)
                .iter()
                .map(|bs| {
                    let args: Vec<usize> = bs.iter().map(|&b| rep[b]).collect();
                    labels[a.table(op)[index(a.size(), &args)]]
                })
                .collect(),
        );
    }
    FiniteAlgebra::new(a.signature().clone(), blocks, tables).ok()
}

/// Subdirect irreducibility relative to SP(gens), from all partitions.
pub fn brute_relative_si(a: &FiniteAlgebra, gens: &[&FiniteAlgebra]) -> bool {
    let n = a.size();
    let mut meet: Option<Vec<Vec<bool>>> = None;
    for p in partitions(n) {
        let diagonal = (0..n).all(|i| p[i] == i);
        if diagonal {
            continue;
        }
        let Some(q) = quotient(a, &p) else { continue };
        if !brute_in_sp(&q, gens) {
            continue;
        }
        let rel: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| p[x] == p[y]).collect()).collect();
        meet = Some(match meet {
            None => rel,
            Some(m) => (0..n).map(|x| (0..n).map(|y| m[x][y] && rel[x][y]).collect()).collect(),
        });
    }
    match meet {
        None => false,
        Some(m) => (0..n).any(|x| (0..n).any(|y| x != y && m[x][y])),
    }
}

/// Coproduct in SP(gens) of unary algebras: the image of their disjoint
/// union in the product over all homomorphisms into the generators. A map
/// on the union is a choice of one map per summand. Returns its size and
/// whether every summand embeds.
pub fn unary_coproduct_oracle(factors: &[&FiniteAlgebra], gens: &[&FiniteAlgebra]) -> (usize, bool) {
    // Each hom on the union as a list of per-summand maps.
    let mut homs: Vec<Vec<Vec<usize>>> = Vec::new();
    for g in gens {
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for f in factors {
            let hs = brute_homs(f, g);
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    hs.iter().map(move |h| {
                        let mut c = c.clone();
                        c.push(h.clone());
                        c
                    })
                })
                .collect();
        }
        homs.extend(combos);
    }
    let vector = |i: usize, x: usize| -> Vec<usize> { homs.iter().map(|h| h[i][x]).collect() };
    let mut all = HashSet::new();
    let mut injective = true;
    for (i, f) in factors.iter().enumerate() {
        let v: HashSet<Vec<usize>> = (0..f.size()).map(|x| vector(i, x)).collect();
        injective &= v.len() == f.size();
        all.extend(v);
    }
    (all.len(), injective)
}

/// Words reachable from `a` by replacing one side of a relation by the
/// other, through words of length at most `max_len`.
pub fn reachable(rels: &[(Vec<usize>, Vec<usize>)], a: &[usize], max_len: usize) -> HashSet<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::from([a.to_vec()]);
    seen.insert(a.to_vec());
    while let Some(w) = queue.pop_front() {
        for (l, r) in rels {
            for (from, to) in [(l, r), (r, l)] {
                if from.len() > w.len() {
                    continue;
                }
                for i in 0..=w.len() - from.len() {
                    if w[i..i + from.len()] == from[..] {
                        let mut next = w[..i].to_vec();
                        next.extend_from_slice(to);
                        next.extend_from_slice(&w[i + from.len()..]);
                        if next.len() <= max_len && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

pub fn connected(rels: &[(Vec<usize>, Vec<usize>)], a: &[usize], b: &[usize], max_len: usize) -> bool {
    reachable(rels, a, max_len).contains(b)
}
