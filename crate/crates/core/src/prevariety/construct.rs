use std::collections::HashMap;
use std::sync::Arc;

use super::{Budgets, PrevarietyCtx};
use crate::algcore::{tuple_index, FiniteAlgebra, Homomorphism, Signature};
use crate::error::{Error, Result};
use crate::homsearch::{find_homomorphisms, PartialMap};

/// One coordinate of a canonical product: a generator together with the
/// family of maps that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub generator: usize,
    /// One map per factor (for coproducts) or the single generator
    /// assignment (for free algebras).
    pub maps: Vec<Vec<usize>>,
}

/// The index set H of a canonical product construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomIndex {
    pub entries: Vec<IndexEntry>,
}

impl HomIndex {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn position(&self, generator: usize, maps: &[Vec<usize>]) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.generator == generator && e.maps == maps)
    }
}

/// The least subalgebra of a product containing some seed tuples.
pub(crate) struct TupleClosure {
    pub algebra: FiniteAlgebra,
    pub tuples: Vec<Vec<usize>>,
    /// Element index of each seed tuple.
    pub seeds: Vec<usize>,
}

fn size_bound(what: &'static str, size: usize, bound: usize) -> Error {
    Error::SizeBound { what, size, bound }
}

pub(crate) fn close_tuples(
    signature: &Signature,
    coords: &[&FiniteAlgebra],
    seeds: &[Vec<usize>],
    budgets: &Budgets,
) -> Result<TupleClosure> {
    let width = coords.len();
    let limit = if width == 0 {
        budgets.max_carrier
    } else {
        budgets.max_carrier.min(budgets.max_product_cells / width)
    };
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut insert = |t: Vec<usize>, tuples: &mut Vec<Vec<usize>>| -> Result<usize> {
        if let Some(&i) = index.get(&t) {
            return Ok(i);
        }
        if tuples.len() >= limit {
            return Err(size_bound("product closure", tuples.len() + 1, limit));
        }
        let i = tuples.len();
        index.insert(t.clone(), i);
        tuples.push(t);
        Ok(i)
    };

    let mut seed_ids = Vec::with_capacity(seeds.len());
    for s in seeds {
        seed_ids.push(insert(s.clone(), &mut tuples)?);
    }
    for (op, sym) in signature.ops().iter().enumerate() {
        if sym.arity == 0 {
            let t = coords.iter().map(|c| c.table(op)[0]).collect();
            insert(t, &mut tuples)?;
        }
    }

    let mut lo = 0;
    let mut args = Vec::new();
    let mut comp = Vec::new();
    while lo < tuples.len() {
        let hi = tuples.len();
        for (op, sym) in signature.ops().iter().enumerate() {
            let k = sym.arity;
            if k == 0 {
                continue;
            }
            let total = hi
                .checked_pow(k as u32)
                .filter(|&t| t <= budgets.max_product_cells.saturating_mul(16))
                .ok_or_else(|| size_bound("product closure", hi, limit))?;
            args.resize(k, 0);
            for t in 0..total {
                crate::algcore::decode_tuple(hi, t, &mut args);
                if args.iter().all(|&a| a < lo) {
                    continue;
                }
                let res: Vec<usize> = (0..width)
                    .map(|c| {
                        comp.clear();
                        comp.extend(args.iter().map(|&a| tuples[a][c]));
                        coords[c].table(op)[tuple_index(coords[c].size(), &comp)]
                    })
                    .collect();
                insert(res, &mut tuples)?;
            }
        }
        lo = hi;
    }

    let n = tuples.len();
    let table_cells: usize = signature
        .ops()
        .iter()
        .map(|s| n.saturating_pow(s.arity as u32))
        .sum();
    if table_cells > budgets.max_product_cells.saturating_mul(16) {
        return Err(size_bound("operation tables", table_cells, budgets.max_product_cells));
    }
    let algebra = FiniteAlgebra::from_fn(signature.clone(), n, |op, a| {
        let res: Vec<usize> = (0..width)
            .map(|c| {
                let comp: Vec<usize> = a.iter().map(|&x| tuples[x][c]).collect();
                coords[c].table(op)[tuple_index(coords[c].size(), &comp)]
            })
            .collect();
        index[&res]
    })?;
    Ok(TupleClosure {
        algebra,
        tuples,
        seeds: seed_ids,
    })
}

/// A canonical free algebra with its free generators.
#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    pub algebra: FiniteAlgebra,
    pub generators: Vec<usize>,
    pub index: HomIndex,
}

/// The free algebra of P on `n` generators, realized as the subalgebra of
/// the product over all pairs (generator A, assignment n → A) generated by
/// the projection tuples.
pub fn free_algebra(ctx: &PrevarietyCtx, n: usize) -> Result<FreeAlgebra> {
    let budgets = ctx.budgets();
    let mut entries = Vec::new();
    for (j, y) in ctx.generators().iter().enumerate() {
        let count = y
            .size()
            .checked_pow(n as u32)
            .filter(|&c| entries.len() + c <= budgets.max_product_cells)
            .ok_or_else(|| size_bound("free algebra index", usize::MAX, budgets.max_product_cells))?;
        let mut v = vec![0; n];
        for t in 0..count {
            crate::algcore::decode_tuple(y.size(), t, &mut v);
            entries.push(IndexEntry {
                generator: j,
                maps: vec![v.clone()],
            });
        }
    }
    let coords: Vec<&FiniteAlgebra> = entries
        .iter()
        .map(|e| &ctx.generators()[e.generator])
        .collect();
    let seeds: Vec<Vec<usize>> = (0..n)
        .map(|k| entries.iter().map(|e| e.maps[0][k]).collect())
        .collect();
    let closure = close_tuples(ctx.signature(), &coords, &seeds, budgets)?;
    Ok(FreeAlgebra {
        algebra: closure.algebra,
        generators: closure.seeds,
        index: HomIndex { entries },
    })
}

/// A canonical coproduct: the subalgebra of the product over `index`
/// generated by the images of the factors.
#[derive(Debug, Clone)]
pub struct CoproductResult {
    pub algebra: Arc<FiniteAlgebra>,
    pub coprojections: Vec<Homomorphism>,
    pub index: HomIndex,
    /// Coordinates of each element in the product over `index`.
    pub tuples: Vec<Vec<usize>>,
}

impl CoproductResult {
    pub fn all_injective(&self) -> bool {
        self.coprojections.iter().all(Homomorphism::is_injective)
    }
}

/// The coproduct of `factors` in P.
pub fn coproduct(ctx: &PrevarietyCtx, factors: &[FiniteAlgebra]) -> Result<CoproductResult> {
    colimit(ctx, factors, None)
}

/// The coproduct of `factors` amalgamating `base` along `maps[i]: base →
/// factors[i]`: the index ranges over families that agree on `base`.
pub fn amalgamated_coproduct(
    ctx: &PrevarietyCtx,
    base: &FiniteAlgebra,
    factors: &[FiniteAlgebra],
    maps: &[Vec<usize>],
) -> Result<CoproductResult> {
    if maps.len() != factors.len() {
        return Err(Error::InvalidArgument(
            "one base map per factor is required".into(),
        ));
    }
    for (f, m) in factors.iter().zip(maps) {
        if !base.is_homomorphism(f, m) {
            return Err(Error::NotAHomomorphism);
        }
    }
    colimit(ctx, factors, Some((base, maps)))
}

fn colimit(
    ctx: &PrevarietyCtx,
    factors: &[FiniteAlgebra],
    base: Option<(&FiniteAlgebra, &[Vec<usize>])>,
) -> Result<CoproductResult> {
    let budgets = ctx.budgets();
    for (i, f) in factors.iter().enumerate() {
        ctx.require_member(f, &format!("factor {}", i))?;
    }
    let mut entries = Vec::new();
    for (j, y) in ctx.generators().iter().enumerate() {
        let mut partial = Vec::new();
        enumerate_families(y, factors, base, budgets, &mut partial, &mut |maps| {
            if entries.len() >= budgets.max_families {
                return Err(size_bound("coproduct index", entries.len() + 1, budgets.max_families));
            }
            entries.push(IndexEntry {
                generator: j,
                maps: maps.to_vec(),
            });
            Ok(())
        })?;
    }
    let coords: Vec<&FiniteAlgebra> = entries
        .iter()
        .map(|e| &ctx.generators()[e.generator])
        .collect();
    let mut seeds = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for b in 0..f.size() {
            seeds.push(entries.iter().map(|e| e.maps[i][b]).collect());
        }
    }
    let closure = close_tuples(ctx.signature(), &coords, &seeds, budgets)?;
    let algebra = Arc::new(closure.algebra);
    let mut coprojections = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for f in factors {
        let map = closure.seeds[offset..offset + f.size()].to_vec();
        offset += f.size();
        coprojections.push(Homomorphism::new(Arc::new(f.clone()), algebra.clone(), map)?);
    }
    Ok(CoproductResult {
        algebra,
        coprojections,
        index: HomIndex { entries },
        tuples: closure.tuples,
    })
}

/// Calls `emit` on every family `(g_i: factors[i] → y)`, restricted to
/// families agreeing on the base when one is given.
pub(crate) fn enumerate_families(
    y: &FiniteAlgebra,
    factors: &[FiniteAlgebra],
    base: Option<(&FiniteAlgebra, &[Vec<usize>])>,
    budgets: &Budgets,
    partial: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]) -> Result<()>,
) -> Result<()> {
    let i = partial.len();
    if i == factors.len() {
        return emit(partial);
    }
    let f = &factors[i];
    let mut seed = PartialMap::empty(f.size());
    if let (Some((b, maps)), true) = (base, i > 0) {
        // g_i ∘ s_i must equal g_0 ∘ s_0.
        for s in 0..b.size() {
            let want = partial[0][maps[0][s]];
            if seed.get(maps[i][s]).is_some_and(|v| v != want) {
                return Ok(());
            }
            seed.set(maps[i][s], want)?;
        }
    }
    for h in find_homomorphisms(f, y, &seed, budgets.search)? {
        partial.push(h);
        enumerate_families(y, factors, base, budgets, partial, emit)?;
        partial.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsearch::are_isomorphic;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    fn du(parts: &[usize]) -> FiniteAlgebra {
        let algs: Vec<FiniteAlgebra> = parts.iter().map(|&d| c(d)).collect();
        let refs: Vec<&FiniteAlgebra> = algs.iter().collect();
        FiniteAlgebra::disjoint_union(&refs).unwrap().0
    }

    #[test]
    fn free_examples() {
        let p = PrevarietyCtx::new(vec![c(2), c(3)]).unwrap();
        let f = free_algebra(&p, 1).unwrap();
        assert_eq!(f.algebra.size(), 6);
        assert!(are_isomorphic(&f.algebra, &c(6)).unwrap());
        let p2 = PrevarietyCtx::new(vec![c(2)]).unwrap();
        assert_eq!(free_algebra(&p2, 0).unwrap().algebra.size(), 0);
        let f = free_algebra(&p2, 1).unwrap();
        assert!(are_isomorphic(&f.algebra, &c(2)).unwrap());
    }

    #[test]
    fn coproduct_examples() {
        let u = PrevarietyCtx::new(vec![du(&[2, 3])]).unwrap();
        let r = coproduct(&u, &[c(2), c(3)]).unwrap();
        assert_eq!(r.index.len(), 6);
        assert_eq!(r.algebra.size(), 5);
        assert!(r.all_injective());
        assert!(are_isomorphic(&r.algebra, &du(&[2, 3])).unwrap());

        let p = PrevarietyCtx::new(vec![c(2), c(3)]).unwrap();
        let r = coproduct(&p, &[c(2), c(3)]).unwrap();
        assert!(r.index.is_empty());
        assert_eq!(r.algebra.size(), 1);

        let p3 = PrevarietyCtx::new(vec![c(3)]).unwrap();
        let r = coproduct(&p3, &[c(3)]).unwrap();
        assert_eq!(r.algebra.size(), 3);
        assert!(r.all_injective());

        let r = coproduct(&p3, &[c(3), c(3)]).unwrap();
        assert_eq!(r.algebra.size(), 6);
    }

    #[test]
    fn coproduct_membership_error() {
        let p = PrevarietyCtx::new(vec![c(2), c(3)]).unwrap();
        let err = coproduct(&p, &[du(&[2, 3])]).unwrap_err();
        assert!(matches!(err, Error::NotInPrevariety { .. }));
    }

    #[test]
    fn empty_index_with_empty_factors() {
        let p = PrevarietyCtx::new(vec![c(2)]).unwrap();
        let e = FiniteAlgebra::empty(Signature::unary("a")).unwrap();
        let r = coproduct(&p, &[e.clone(), e]).unwrap();
        assert_eq!(r.algebra.size(), 0);
    }

    #[test]
    fn amalgamation_over_shared_summand() {
        let p = PrevarietyCtx::new(vec![c(2)]).unwrap();
        let b = du(&[2, 2]);
        let r = amalgamated_coproduct(&p, &c(2), &[b.clone(), b], &[vec![0, 1], vec![0, 1]])
            .unwrap();
        assert_eq!(r.algebra.size(), 6);
        assert!(r.all_injective());
    }
}
