use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::construct::amalgamated_coproduct;
use super::independence::is_compatible;
use super::{Budgets, PrevarietyCtx};
use crate::algcore::{is_subdirectly_irreducible, FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::homsearch::{are_isomorphic, find_embeddings, PartialMap};

/// Nontrivial algebras with a one-element subalgebra are exactly those with
/// an element idempotent for every operation; this reports whether such an
/// element exists.
pub fn has_trivial_subalgebra(alg: &FiniteAlgebra) -> bool {
    !alg.idempotents().is_empty()
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// An isomorphism invariant: element colours refined a few rounds through
/// the operations, collected as a sorted multiset.
fn invariant(alg: &FiniteAlgebra) -> (usize, Vec<u64>) {
    let n = alg.size();
    let sig = alg.signature();
    let mut colour: Vec<u64> = (0..n)
        .map(|x| {
            let flags: Vec<bool> = sig
                .ops()
                .iter()
                .enumerate()
                .map(|(op, s)| alg.apply(op, &vec![x; s.arity]) == x)
                .collect();
            hash_of(&flags)
        })
        .collect();
    for _ in 0..3 {
        let next: Vec<u64> = (0..n)
            .map(|x| {
                let mut parts: Vec<u64> = vec![colour[x]];
                for (op, s) in sig.ops().iter().enumerate() {
                    match s.arity {
                        1 => {
                            parts.push(colour[alg.apply(op, &[x])]);
                            let mut pre: Vec<u64> = (0..n)
                                .filter(|&y| alg.apply(op, &[y]) == x)
                                .map(|y| colour[y])
                                .collect();
                            pre.sort_unstable();
                            parts.push(hash_of(&pre));
                        }
                        2 => {
                            let mut row: Vec<(u64, u64, u64)> = (0..n)
                                .map(|y| {
                                    (
                                        colour[y],
                                        colour[alg.apply(op, &[x, y])],
                                        colour[alg.apply(op, &[y, x])],
                                    )
                                })
                                .collect();
                            row.sort_unstable();
                            parts.push(hash_of(&row));
                        }
                        _ => {}
                    }
                }
                hash_of(&parts)
            })
            .collect();
        colour = next;
    }
    colour.sort_unstable();
    (n, colour)
}

/// All algebras over `sig` with at most `max_size` elements, one per
/// isomorphism class, ordered by size and then by table enumeration order.
/// The empty algebra is included when `sig` has no constants.
pub fn enumerate_algebras(
    sig: &Signature,
    max_size: usize,
    budgets: &Budgets,
) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    let mut visited = 0usize;
    for n in 0..=max_size {
        if n == 0 && sig.has_constants() {
            continue;
        }
        let lens: Vec<usize> = sig
            .ops()
            .iter()
            .map(|s| n.checked_pow(s.arity as u32).unwrap_or(usize::MAX))
            .collect();
        let cells: usize = lens.iter().sum();
        // Number of candidate table sets: n^cells.
        let count = (n.max(1) as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
        let count = if n == 0 { 1 } else { count };
        if visited as u128 + count > budgets.max_candidates as u128 {
            return Err(Error::SizeBound {
                what: "algebra enumeration",
                size: n,
                bound: max_size,
            });
        }
        let mut buckets: HashMap<(usize, Vec<u64>), Vec<usize>> = HashMap::new();
        let mut flat = vec![0usize; cells];
        for _ in 0..count {
            visited += 1;
            let mut tables = Vec::with_capacity(lens.len());
            let mut off = 0;
            for &l in &lens {
                tables.push(flat[off..off + l].to_vec());
                off += l;
            }
            let alg = FiniteAlgebra::new(sig.clone(), n, tables)?;
            let key = invariant(&alg);
            let bucket = buckets.entry(key).or_default();
            let mut fresh = true;
            for &k in bucket.iter() {
                if are_isomorphic(&alg, &out[k])? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                bucket.push(out.len());
                out.push(alg);
            }
            // Odometer increment, last cell fastest.
            for cell in flat.iter_mut().rev() {
                *cell += 1;
                if *cell < n {
                    break;
                }
                *cell = 0;
            }
        }
    }
    Ok(out)
}

/// Members of P with at most `max_size` elements, up to isomorphism.
pub fn enumerate_members(ctx: &PrevarietyCtx, max_size: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for a in enumerate_algebras(ctx.signature(), max_size, ctx.budgets())? {
        if ctx.contains(&a)? {
            out.push(a);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AmalgamationOptions {
    /// Also use the empty algebra as the common subalgebra.
    pub include_empty_base: bool,
}

/// A square `b ↢ a ↣ c` with no amalgam in P.
#[derive(Debug, Clone)]
pub struct AmalgamationFailure {
    pub a: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub c: FiniteAlgebra,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AmalgamationReport {
    pub holds: bool,
    pub members: usize,
    pub squares: usize,
    pub counterexample: Option<AmalgamationFailure>,
}

/// Checks the amalgamation property on all members of P with at most `k`
/// elements. For each pair of embeddings `f: a ↣ b`, `g: a ↣ c` the
/// canonical amalgamated coproduct of `b` and `c` over `a` is built; the
/// square amalgamates in P exactly when both of its coprojections are
/// one-to-one, since any amalgam factors through it.
pub fn check_amalgamation_bounded(
    ctx: &PrevarietyCtx,
    k: usize,
    options: AmalgamationOptions,
) -> Result<AmalgamationReport> {
    let members = enumerate_members(ctx, k)?;
    let search = ctx.budgets().search;
    let mut squares = 0;
    for a in &members {
        if a.is_empty() && !options.include_empty_base {
            continue;
        }
        let mut targets: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for (bi, b) in members.iter().enumerate() {
            let embs = find_embeddings(a, b, &PartialMap::empty(a.size()), search)?;
            if !embs.is_empty() {
                targets.push((bi, embs));
            }
        }
        for (x, (bi, fs)) in targets.iter().enumerate() {
            for (ci, gs) in &targets[x..] {
                for f in fs {
                    for g in gs {
                        squares += 1;
                        let (b, c) = (&members[*bi], &members[*ci]);
                        let r = amalgamated_coproduct(
                            ctx,
                            a,
                            &[b.clone(), c.clone()],
                            &[f.clone(), g.clone()],
                        )?;
                        if !r.all_injective() {
                            return Ok(AmalgamationReport {
                                holds: false,
                                members: members.len(),
                                squares,
                                counterexample: Some(AmalgamationFailure {
                                    a: a.clone(),
                                    b: b.clone(),
                                    c: c.clone(),
                                    f: f.clone(),
                                    g: g.clone(),
                                }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(AmalgamationReport {
        holds: true,
        members: members.len(),
        squares,
        counterexample: None,
    })
}

#[derive(Debug, Clone)]
pub struct ConstantsCensus {
    pub kappa: usize,
    /// The subdirectly irreducible algebras with at most two elements.
    pub algebras: Vec<FiniteAlgebra>,
    /// `compatible[i][j]` for the prevariety generated by all of them.
    pub compatible: Vec<Vec<bool>>,
}

impl ConstantsCensus {
    pub fn count(&self) -> usize {
        self.algebras.len()
    }
}

/// Census of subdirectly irreducible algebras with at most two elements in
/// the signature of `kappa` constants, with their pairwise compatibility.
pub fn constants_si_census(kappa: usize) -> Result<ConstantsCensus> {
    const MAX_KAPPA: usize = 4;
    if kappa > MAX_KAPPA {
        return Err(Error::SizeBound {
            what: "constants census",
            size: kappa,
            bound: MAX_KAPPA,
        });
    }
    let sig = Signature::new((0..kappa).map(|i| (format!("c{}", i), 0)))?;
    let mut algebras = Vec::new();
    for a in enumerate_algebras(&sig, 2, &Budgets::default())? {
        if a.size() >= 2 && is_subdirectly_irreducible(&a, 2)?.0 {
            algebras.push(a);
        }
    }
    let mut compatible = vec![vec![true; algebras.len()]; algebras.len()];
    if !algebras.is_empty() {
        let ctx = PrevarietyCtx::new(algebras.clone())?;
        for i in 0..algebras.len() {
            for j in i + 1..algebras.len() {
                let v = is_compatible(&ctx, &[algebras[i].clone(), algebras[j].clone()])?;
                compatible[i][j] = v;
                compatible[j][i] = v;
            }
        }
    }
    Ok(ConstantsCensus {
        kappa,
        algebras,
        compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    #[test]
    fn unary_counts() {
        // Functional graphs up to isomorphism: 1, 1, 3, 7, 19 for sizes 0..4.
        let all = enumerate_algebras(&Signature::unary("a"), 4, &Budgets::default()).unwrap();
        assert_eq!(all.len(), 1 + 1 + 3 + 7 + 19);
    }

    #[test]
    fn trivial_subalgebra_examples() {
        assert!(has_trivial_subalgebra(&c(1)));
        assert!(!has_trivial_subalgebra(&c(2)));
        let (u, _) = FiniteAlgebra::disjoint_union(&[&c(2), &c(1)]).unwrap();
        assert!(has_trivial_subalgebra(&u));
    }

    #[test]
    fn amalgamation_examples() {
        let p = PrevarietyCtx::new(vec![c(2)]).unwrap();
        let r = check_amalgamation_bounded(&p, 4, AmalgamationOptions::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.members, 4);
        let t = PrevarietyCtx::new(vec![c(1)]).unwrap();
        let r = check_amalgamation_bounded(&t, 3, AmalgamationOptions::default()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn empty_base_breaks_amalgamation_for_c2() {
        let p = PrevarietyCtx::new(vec![c(2)]).unwrap();
        let opts = AmalgamationOptions {
            include_empty_base: true,
        };
        let r = check_amalgamation_bounded(&p, 4, opts).unwrap();
        assert!(!r.holds);
        let w = r.counterexample.unwrap();
        assert!(w.a.is_empty());
    }

    #[test]
    fn census_small_kappa() {
        assert_eq!(constants_si_census(1).unwrap().count(), 1);
        assert_eq!(constants_si_census(2).unwrap().count(), 2);
        assert!(constants_si_census(5).is_err());
    }
}
