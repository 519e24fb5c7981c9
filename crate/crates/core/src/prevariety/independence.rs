use std::collections::HashMap;
use std::sync::Arc;

use super::construct::{amalgamated_coproduct, coproduct, enumerate_families, CoproductResult};
use super::PrevarietyCtx;
use crate::algcore::{FiniteAlgebra, Homomorphism};
use crate::error::{Error, Result};
use crate::homsearch::{first_embedding, first_homomorphism, PartialMap};

/// Coproduct criterion: `b` lies in P, is generated by the images of the
/// maps, and every family of maps from the sources into a generator of P
/// extends along the maps to a homomorphism on `b`.
pub fn is_coproduct(ctx: &PrevarietyCtx, b: &FiniteAlgebra, maps: &[Homomorphism]) -> Result<bool> {
    for (i, m) in maps.iter().enumerate() {
        if m.target().as_ref() != b {
            return Err(Error::InvalidArgument(format!(
                "map {} does not target the candidate algebra",
                i
            )));
        }
        ctx.require_member(m.source(), &format!("source {}", i))?;
    }
    if !ctx.contains(b)? {
        return Ok(false);
    }
    let mut images: Vec<usize> = maps.iter().flat_map(|m| m.map().iter().copied()).collect();
    images.sort_unstable();
    images.dedup();
    if b.closure(&images)?.len() != b.size() {
        return Ok(false);
    }
    let sources: Vec<FiniteAlgebra> = maps.iter().map(|m| m.source().as_ref().clone()).collect();
    let budgets = ctx.budgets();
    for y in ctx.generators() {
        let mut ok = true;
        let mut partial = Vec::new();
        enumerate_families(y, &sources, None, budgets, &mut partial, &mut |family| {
            if !ok {
                return Ok(());
            }
            let mut seed = PartialMap::empty(b.size());
            for (m, g) in maps.iter().zip(family) {
                for (x, &fx) in m.map().iter().enumerate() {
                    if seed.get(fx).is_some_and(|v| v != g[x]) {
                        ok = false;
                        return Ok(());
                    }
                    seed.set(fx, g[x])?;
                }
            }
            if first_homomorphism(b, y, &seed, budgets.search)?.is_none() {
                ok = false;
            }
            Ok(())
        })?;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compatibility: every coprojection into the coproduct is one-to-one.
pub fn is_compatible(ctx: &PrevarietyCtx, algebras: &[FiniteAlgebra]) -> Result<bool> {
    if algebras.is_empty() {
        return Ok(true);
    }
    Ok(coproduct(ctx, algebras)?.all_injective())
}

/// Index of the first candidate into which every algebra embeds.
pub fn common_embedding_target(
    ctx: &PrevarietyCtx,
    algebras: &[FiniteAlgebra],
    candidates: &[FiniteAlgebra],
) -> Result<Option<usize>> {
    'cand: for (k, c) in candidates.iter().enumerate() {
        for a in algebras {
            if first_embedding(a, c, ctx.budgets().search)?.is_none() {
                continue 'cand;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Whether the coprojection of `a` into the coproduct of `a` and `b` is
/// one-to-one.
pub fn is_comfortable(ctx: &PrevarietyCtx, a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    let r = coproduct(ctx, &[a.clone(), b.clone()])?;
    Ok(r.coprojections[0].is_injective())
}

/// A partition of `algebras` into the fewest compatible blocks, the least
/// such partition in restricted-growth-string order. Blocks list indices.
pub fn minimum_compatible_cover(
    ctx: &PrevarietyCtx,
    algebras: &[FiniteAlgebra],
) -> Result<Vec<Vec<usize>>> {
    let n = algebras.len();
    if n > 16 {
        return Err(Error::SizeBound {
            what: "compatible cover",
            size: n,
            bound: 16,
        });
    }
    for (i, a) in algebras.iter().enumerate() {
        ctx.require_member(a, &format!("algebra {}", i))?;
    }
    let mut cache: HashMap<u32, bool> = HashMap::new();
    let mut compatible = |mask: u32| -> Result<bool> {
        if let Some(&v) = cache.get(&mask) {
            return Ok(v);
        }
        let members: Vec<FiniteAlgebra> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| algebras[i].clone())
            .collect();
        let v = is_compatible(ctx, &members)?;
        cache.insert(mask, v);
        Ok(v)
    };
    for k in 0..=n {
        let mut rgs = Vec::with_capacity(n);
        let mut masks = Vec::with_capacity(k);
        if cover_search(n, k, &mut rgs, &mut masks, &mut compatible)? {
            let mut blocks = vec![Vec::new(); masks.len()];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            return Ok(blocks);
        }
    }
    unreachable!("the partition into singletons is always compatible")
}

fn cover_search(
    n: usize,
    k: usize,
    rgs: &mut Vec<usize>,
    masks: &mut Vec<u32>,
    compatible: &mut dyn FnMut(u32) -> Result<bool>,
) -> Result<bool> {
    let i = rgs.len();
    if i == n {
        return Ok(true);
    }
    let open = masks.len();
    let limit = if open < k { open + 1 } else { open };
    for b in 0..limit {
        let mask = if b == open { 0 } else { masks[b] } | 1 << i;
        // Compatibility is inherited by subsets, so a failing block prunes.
        if !compatible(mask)? {
            continue;
        }
        if b == open {
            masks.push(mask);
        } else {
            masks[b] = mask;
        }
        rgs.push(b);
        if cover_search(n, k, rgs, masks, compatible)? {
            return Ok(true);
        }
        rgs.pop();
        if b == open {
            masks.pop();
        } else {
            masks[b] &= !(1 << i);
        }
    }
    Ok(false)
}

/// Whether the subalgebras of `ambient` on the given closed subsets are
/// independent: the subalgebra they generate, with the inclusions, is their
/// coproduct in P.
pub fn is_independent(
    ctx: &PrevarietyCtx,
    ambient: &FiniteAlgebra,
    subsets: &[Vec<usize>],
) -> Result<bool> {
    ctx.require_member(ambient, "ambient algebra")?;
    let (generated, maps) = inclusions(ambient, subsets)?;
    is_coproduct(ctx, &generated, &maps)
}

/// The subalgebra generated by the union of `subsets` and the inclusion of
/// each subset into it.
fn inclusions(
    ambient: &FiniteAlgebra,
    subsets: &[Vec<usize>],
) -> Result<(FiniteAlgebra, Vec<Homomorphism>)> {
    let subs = subsets
        .iter()
        .map(|s| ambient.subalgebra_on(s))
        .collect::<Result<Vec<_>>>()?;
    let union: Vec<usize> = subsets.iter().flatten().copied().collect();
    let generated = ambient.generated_subalgebra(&union)?;
    let target = Arc::new(generated.algebra.clone());
    let mut maps = Vec::with_capacity(subs.len());
    for s in subs {
        let map = s
            .inclusion
            .iter()
            .map(|&x| generated.index_of(x).expect("subset lies in the generated subalgebra"))
            .collect();
        maps.push(Homomorphism::new(Arc::new(s.algebra), target.clone(), map)?);
    }
    Ok((generated.algebra, maps))
}

/// One inductive step of the chain construction: the retraction `h` of
/// the subalgebra generated by `A_i` and `B_i` onto `A_i`.
#[derive(Debug, Clone)]
pub struct ChainStep {
    /// Carrier (in the ambient algebra) of the subalgebra generated by
    /// `A_i` and `B_i`.
    pub domain: Vec<usize>,
    /// Carrier of `A_i`.
    pub codomain: Vec<usize>,
    /// The retraction in local coordinates of `domain` and `codomain`.
    pub retraction: Homomorphism,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// `B_1, .., B_n` are independent.
    pub independent: bool,
    /// Every family `B_j → A_n` extends, by the composite of the
    /// retractions, to a map on the subalgebra generated by
    /// `A_n, B_1, .., B_n` that fixes `A_n`.
    pub almost_independent: bool,
    pub families_checked: usize,
    /// Retractions built for the first family, one per step.
    pub steps: Vec<ChainStep>,
    /// The composite `f` of the last step for the first family, as a map on
    /// the ambient carrier (`None` outside its domain).
    pub composite: Option<Vec<Option<usize>>>,
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

/// Verifies the chain theorem on a concrete chain `A_0 ⊇ A_1 ⊇ .. ⊇ A_n`
/// with `B_i ⊆ A_{i-1}`, taking P to be generated by `A_n`. `chain` lists
/// `A_1, .., A_n` and `bs` lists `B_1, .., B_n`, as subsets of the carrier
/// of `ambient = A_0`.
pub fn chain_independence(
    ambient: &FiniteAlgebra,
    chain: &[Vec<usize>],
    bs: &[Vec<usize>],
    budgets: &super::Budgets,
) -> Result<ChainReport> {
    if chain.len() != bs.len() {
        return Err(Error::InvalidArgument(
            "chain and family must have the same length".into(),
        ));
    }
    let n = chain.len();
    let all: Vec<usize> = (0..ambient.size()).collect();
    let a = |i: usize| -> &[usize] {
        if i == 0 {
            &all
        } else {
            &chain[i - 1]
        }
    };
    let hyp = |index: usize, reason: &str| Error::Hypothesis {
        index,
        reason: reason.to_string(),
    };
    for i in 1..=n {
        if !ambient.is_closed(a(i)) || !ambient.is_closed(&bs[i - 1]) {
            return Err(hyp(i, "subset is not a subalgebra"));
        }
        if !is_subset(a(i), a(i - 1)) || !is_subset(&bs[i - 1], a(i - 1)) {
            return Err(hyp(i, "subalgebras are not contained in the previous chain member"));
        }
    }
    let top = ambient.subalgebra_on(a(n))?;
    let ctx = PrevarietyCtx::new(vec![top.algebra.clone()])?.with_budgets(*budgets);
    if !ctx.contains(ambient)? {
        return Err(hyp(0, "ambient algebra is not in the prevariety generated by the last chain member"));
    }
    for i in 1..=n {
        if !is_independent(&ctx, ambient, &[a(i).to_vec(), bs[i - 1].clone()])? {
            return Err(hyp(i, "chain member and subalgebra are not independent"));
        }
    }

    // Families f_j: B_j → A_n, in ambient coordinates.
    let b_subs = bs
        .iter()
        .map(|b| ambient.subalgebra_on(b))
        .collect::<Result<Vec<_>>>()?;
    let b_algs: Vec<FiniteAlgebra> = b_subs.iter().map(|s| s.algebra.clone()).collect();
    let mut families: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut partial = Vec::new();
    enumerate_families(&top.algebra, &b_algs, None, budgets, &mut partial, &mut |fam| {
        if families.len() >= budgets.max_families {
            return Err(Error::SizeBound {
                what: "chain families",
                size: families.len() + 1,
                bound: budgets.max_families,
            });
        }
        families.push(
            fam.iter()
                .map(|g| g.iter().map(|&v| top.inclusion[v]).collect())
                .collect(),
        );
        Ok(())
    })?;

    let mut almost = true;
    let mut steps = Vec::new();
    let mut composite = None;
    for (k, fam) in families.iter().enumerate() {
        let record = k == 0;
        match run_chain(ambient, &a, bs, &b_subs, fam, budgets, record)? {
            Some((f, s)) => {
                if record {
                    steps = s;
                    composite = Some(f);
                }
            }
            None => {
                almost = false;
                break;
            }
        }
    }

    let independent = is_independent(&ctx, ambient, bs)?;
    Ok(ChainReport {
        independent,
        almost_independent: almost,
        families_checked: families.len(),
        steps,
        composite,
    })
}

type ChainRun = (Vec<Option<usize>>, Vec<ChainStep>);

/// Builds `f = h g` step by step for one family. Returns `None` when a
/// step of the construction fails.
fn run_chain<'a>(
    ambient: &FiniteAlgebra,
    a: &dyn Fn(usize) -> &'a [usize],
    bs: &[Vec<usize>],
    b_subs: &[crate::algcore::Subalgebra],
    fam: &[Vec<usize>],
    budgets: &super::Budgets,
    record: bool,
) -> Result<Option<ChainRun>> {
    let n = bs.len();
    let size = ambient.size();
    // f^{(0)} is the identity on A_0.
    let mut f: Vec<Option<usize>> = (0..size).map(Some).collect();
    let mut steps = Vec::new();
    for i in 1..=n {
        let mut seed_d: Vec<usize> = a(i).to_vec();
        for b in &bs[..i] {
            seed_d.extend_from_slice(b);
        }
        let d = ambient.closure(&seed_d)?;
        let mut seed_e = a(i).to_vec();
        seed_e.extend_from_slice(&bs[i - 1]);
        let e = ambient.generated_subalgebra(&seed_e)?;
        let ai = ambient.subalgebra_on(a(i))?;

        let mut seed = PartialMap::empty(e.algebra.size());
        let mut conflict = false;
        for &x in &ai.inclusion {
            seed.set(e.index_of(x).unwrap(), ai.index_of(x).unwrap())?;
        }
        for (local, &x) in b_subs[i - 1].inclusion.iter().enumerate() {
            let Some(target) = ai.index_of(fam[i - 1][local]) else {
                conflict = true;
                break;
            };
            let ex = e.index_of(x).unwrap();
            if seed.get(ex).is_some_and(|v| v != target) {
                conflict = true;
                break;
            }
            seed.set(ex, target)?;
        }
        if conflict {
            return Ok(None);
        }
        let Some(h) = first_homomorphism(&e.algebra, &ai.algebra, &seed, budgets.search)? else {
            return Ok(None);
        };

        let mut next = vec![None; size];
        for &x in &d {
            let Some(gx) = f[x] else {
                return Ok(None);
            };
            let Some(ex) = e.index_of(gx) else {
                return Ok(None);
            };
            next[x] = Some(ai.inclusion[h[ex]]);
        }
        if record {
            steps.push(ChainStep {
                domain: e.inclusion.clone(),
                codomain: ai.inclusion.clone(),
                retraction: Homomorphism::new(
                    Arc::new(e.algebra.clone()),
                    Arc::new(ai.algebra.clone()),
                    h,
                )?,
            });
        }
        f = next;
    }

    // Check the conclusion: a homomorphism on D_n fixing A_n and extending
    // every f_j.
    let mut seed_d: Vec<usize> = a(n).to_vec();
    for b in bs {
        seed_d.extend_from_slice(b);
    }
    let d = ambient.generated_subalgebra(&seed_d)?;
    let an = ambient.subalgebra_on(a(n))?;
    let mut local = Vec::with_capacity(d.algebra.size());
    for &x in &d.inclusion {
        match f[x].and_then(|v| an.index_of(v)) {
            Some(v) => local.push(v),
            None => return Ok(None),
        }
    }
    if !d.algebra.is_homomorphism(&an.algebra, &local) {
        return Ok(None);
    }
    if a(n).iter().any(|&x| f[x] != Some(x)) {
        return Ok(None);
    }
    for (j, b) in bs.iter().enumerate() {
        for &x in b {
            let local_idx = b_subs[j].index_of(x).unwrap();
            if f[x] != Some(fam[j][local_idx]) {
                return Ok(None);
            }
        }
    }
    Ok(Some((f, steps)))
}

/// Independence of a subfamily of an independent family, for P generated
/// by a single algebra. Hypotheses are checked and reported.
pub fn subfamily_independence_check(
    ctx: &PrevarietyCtx,
    ambient: &FiniteAlgebra,
    family: &[Vec<usize>],
    subfamily: &[usize],
) -> Result<bool> {
    if ctx.generators().len() != 1 {
        return Err(Error::Hypothesis {
            index: 0,
            reason: "prevariety must be generated by a single algebra".into(),
        });
    }
    if ambient.size() < 2 {
        return Err(Error::Hypothesis {
            index: 0,
            reason: "ambient algebra must be nontrivial".into(),
        });
    }
    let trivial_sub_available = ctx
        .generators()
        .iter()
        .any(|g| g.size() >= 2 && !g.idempotents().is_empty());
    for (i, b) in family.iter().enumerate() {
        if b.len() == 1 && !trivial_sub_available {
            return Err(Error::Hypothesis {
                index: i,
                reason: "trivial member while no nontrivial algebra has a trivial subalgebra"
                    .into(),
            });
        }
    }
    if !is_independent(ctx, ambient, family)? {
        return Err(Error::Hypothesis {
            index: 0,
            reason: "family is not independent".into(),
        });
    }
    let mut sub = Vec::with_capacity(subfamily.len());
    for &k in subfamily {
        let b = family.get(k).ok_or_else(|| {
            Error::InvalidArgument(format!("subfamily index {} out of range", k))
        })?;
        sub.push(b.clone());
    }
    is_independent(ctx, ambient, &sub)
}

/// One factor of a monotonicity instance: `base → a`, and an embedding
/// `a ↣ b`.
#[derive(Debug, Clone)]
pub struct MonotonePart {
    pub a: FiniteAlgebra,
    pub base_to_a: Vec<usize>,
    pub b: FiniteAlgebra,
    pub a_to_b: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MonotoneInstance {
    pub base: FiniteAlgebra,
    pub parts: Vec<MonotonePart>,
}

#[derive(Debug, Clone)]
pub struct MonotoneReport {
    pub injective: bool,
    /// The induced map between the amalgamated coproducts.
    pub induced: Vec<usize>,
    pub source_size: usize,
    pub target_size: usize,
}

/// Builds the amalgamated coproducts of the `a`s and of the `b`s over the
/// base and the induced map between them, and checks it is one-to-one.
pub fn check_coproduct_monotone_bounded(
    ctx: &PrevarietyCtx,
    instance: &MonotoneInstance,
) -> Result<MonotoneReport> {
    for (i, p) in instance.parts.iter().enumerate() {
        if !p.a.is_homomorphism(&p.b, &p.a_to_b) {
            return Err(Error::Hypothesis {
                index: i,
                reason: "map a → b is not a homomorphism".into(),
            });
        }
        let inj = Homomorphism::new(
            Arc::new(p.a.clone()),
            Arc::new(p.b.clone()),
            p.a_to_b.clone(),
        )?;
        if !inj.is_injective() {
            return Err(Error::Hypothesis {
                index: i,
                reason: "map a → b is not one-to-one".into(),
            });
        }
    }
    let a_algs: Vec<FiniteAlgebra> = instance.parts.iter().map(|p| p.a.clone()).collect();
    let b_algs: Vec<FiniteAlgebra> = instance.parts.iter().map(|p| p.b.clone()).collect();
    let a_maps: Vec<Vec<usize>> = instance.parts.iter().map(|p| p.base_to_a.clone()).collect();
    let b_maps: Vec<Vec<usize>> = instance
        .parts
        .iter()
        .map(|p| p.base_to_a.iter().map(|&x| p.a_to_b[x]).collect())
        .collect();
    let src = amalgamated_coproduct(ctx, &instance.base, &a_algs, &a_maps)?;
    let dst = amalgamated_coproduct(ctx, &instance.base, &b_algs, &b_maps)?;
    let induced = induced_map(instance, &src, &dst)?;
    if !src.algebra.is_homomorphism(&dst.algebra, &induced) {
        return Err(Error::VerificationFailed(
            "induced map between coproducts is not a homomorphism".into(),
        ));
    }
    let mut seen = vec![false; dst.algebra.size()];
    let injective = induced.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
    Ok(MonotoneReport {
        injective,
        induced,
        source_size: src.algebra.size(),
        target_size: dst.algebra.size(),
    })
}

/// `u(x)_{h'} = x_{h' ∘ f}` on canonical coordinates.
fn induced_map(
    instance: &MonotoneInstance,
    src: &CoproductResult,
    dst: &CoproductResult,
) -> Result<Vec<usize>> {
    let mut coord = Vec::with_capacity(dst.index.len());
    for e in &dst.index.entries {
        let pulled: Vec<Vec<usize>> = e
            .maps
            .iter()
            .zip(&instance.parts)
            .map(|(g, p)| p.a_to_b.iter().map(|&x| g[x]).collect())
            .collect();
        let k = src.index.position(e.generator, &pulled).ok_or_else(|| {
            Error::VerificationFailed("pulled-back family missing from the index".into())
        })?;
        coord.push(k);
    }
    let lookup: HashMap<&[usize], usize> = dst
        .tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    src.tuples
        .iter()
        .map(|t| {
            let image: Vec<usize> = coord.iter().map(|&k| t[k]).collect();
            lookup.get(image.as_slice()).copied().ok_or_else(|| {
                Error::VerificationFailed("induced tuple outside the target coproduct".into())
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prevariety::Budgets;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    fn du(parts: &[usize]) -> FiniteAlgebra {
        let algs: Vec<FiniteAlgebra> = parts.iter().map(|&d| c(d)).collect();
        let refs: Vec<&FiniteAlgebra> = algs.iter().collect();
        FiniteAlgebra::disjoint_union(&refs).unwrap().0
    }

    fn ctx(gens: Vec<FiniteAlgebra>) -> PrevarietyCtx {
        PrevarietyCtx::new(gens).unwrap()
    }

    fn inclusion(src: FiniteAlgebra, dst: &Arc<FiniteAlgebra>, offset: usize) -> Homomorphism {
        let map = (offset..offset + src.size()).collect();
        Homomorphism::new(Arc::new(src), dst.clone(), map).unwrap()
    }

    #[test]
    fn coproduct_criterion_examples() {
        let u = Arc::new(du(&[2, 3]));
        let p = ctx(vec![du(&[2, 3])]);
        let maps = [inclusion(c(2), &u, 0), inclusion(c(3), &u, 2)];
        assert!(is_coproduct(&p, &u, &maps).unwrap());

        let p3 = ctx(vec![c(3)]);
        let uu = Arc::new(du(&[3, 3]));
        assert!(!is_coproduct(&p3, &uu, &[inclusion(c(3), &uu, 0)]).unwrap());
        let c3 = Arc::new(c(3));
        assert!(is_coproduct(&p3, &c3, &[Homomorphism::identity(c3.clone())]).unwrap());
    }

    #[test]
    fn compatibility_examples() {
        assert!(is_compatible(&ctx(vec![du(&[2, 3])]), &[c(2), c(3)]).unwrap());
        assert!(!is_compatible(&ctx(vec![c(2), c(3)]), &[c(2), c(3)]).unwrap());
        assert!(is_compatible(&ctx(vec![c(2), c(3)]), &[c(6)]).unwrap());
        let cands = [c(6), du(&[2, 3])];
        let p = ctx(vec![du(&[2, 3])]);
        assert_eq!(common_embedding_target(&p, &[c(2), c(3)], &cands).unwrap(), Some(1));
    }

    #[test]
    fn comfortable_examples() {
        let p = ctx(vec![c(2)]);
        assert!(is_comfortable(&p, &c(1), &c(2)).unwrap());
        assert!(!is_comfortable(&p, &c(2), &c(1)).unwrap());
        assert!(is_comfortable(&ctx(vec![c(3)]), &c(3), &c(3)).unwrap());
    }

    #[test]
    fn cover_examples() {
        let p = ctx(vec![c(2), c(3)]);
        assert_eq!(
            minimum_compatible_cover(&p, &[c(2), c(3)]).unwrap(),
            vec![vec![0], vec![1]]
        );
        let q = ctx(vec![du(&[2, 3])]);
        assert_eq!(
            minimum_compatible_cover(&q, &[c(2), c(3)]).unwrap(),
            vec![vec![0, 1]]
        );
        assert!(minimum_compatible_cover(&p, &[]).unwrap().is_empty());
        assert_eq!(
            minimum_compatible_cover(&p, &[c(2), c(3), c(2), c(6)]).unwrap(),
            vec![vec![0, 2], vec![1], vec![3]]
        );
    }

    #[test]
    fn independence_examples() {
        let p = ctx(vec![du(&[2, 3])]);
        assert!(is_independent(&p, &du(&[2, 3]), &[vec![0, 1], vec![2, 3, 4]]).unwrap());
        let p3 = ctx(vec![c(3)]);
        assert!(is_independent(&p3, &du(&[3, 3]), &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap());
        assert!(is_independent(&p3, &du(&[3, 3]), &[vec![3, 4, 5]]).unwrap());
        assert!(matches!(
            is_independent(&p3, &du(&[3, 3]), &[vec![0, 1]]),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn chain_examples() {
        let b = Budgets::default();
        let r = chain_independence(&du(&[3, 3]), &[vec![0, 1, 2]], &[vec![3, 4, 5]], &b).unwrap();
        assert!(r.independent && r.almost_independent);
        assert_eq!(r.families_checked, 3);
        let step = &r.steps[0];
        assert_eq!(step.codomain, vec![0, 1, 2]);
        let h = step.retraction.map();
        assert_eq!(&h[..3], &[0, 1, 2]);

        let r = chain_independence(
            &du(&[3, 3, 3]),
            &[vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2]],
            &[vec![6, 7, 8], vec![3, 4, 5]],
            &b,
        )
        .unwrap();
        assert!(r.independent && r.almost_independent);
        assert_eq!(r.families_checked, 9);

        let r = chain_independence(&du(&[3]), &[], &[], &b).unwrap();
        assert!(r.independent);

        let err = chain_independence(&du(&[3, 3]), &[vec![0, 1, 2]], &[vec![0, 1, 2]], &b);
        assert!(matches!(err, Err(Error::Hypothesis { index: 1, .. })));
    }

    #[test]
    fn initial_algebra_is_empty() {
        let p = ctx(vec![c(3)]);
        assert!(is_independent(&p, &c(3), &[]).unwrap());
    }

    #[test]
    fn subfamily_examples() {
        let p = ctx(vec![c(3)]);
        let fam2 = [vec![0, 1, 2], vec![3, 4, 5]];
        assert!(subfamily_independence_check(&p, &du(&[3, 3]), &fam2, &[0]).unwrap());
        let fam3 = [vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(subfamily_independence_check(&p, &du(&[3, 3, 3]), &fam3, &pair).unwrap());
        }
        assert!(subfamily_independence_check(&p, &du(&[3, 3]), &fam2, &[]).unwrap());
    }

    #[test]
    fn monotone_examples() {
        let p = ctx(vec![c(2)]);
        let empty = FiniteAlgebra::empty(c(2).signature().clone()).unwrap();
        let inst = MonotoneInstance {
            base: empty.clone(),
            parts: vec![
                MonotonePart {
                    a: c(2),
                    base_to_a: vec![],
                    b: du(&[2, 2]),
                    a_to_b: vec![0, 1],
                },
                MonotonePart {
                    a: c(2),
                    base_to_a: vec![],
                    b: c(2),
                    a_to_b: vec![0, 1],
                },
            ],
        };
        let r = check_coproduct_monotone_bounded(&p, &inst).unwrap();
        assert!(r.injective);
        assert_eq!(r.source_size, 4);
        assert_eq!(r.target_size, 6);

        let ident = MonotoneInstance {
            base: c(2),
            parts: vec![
                MonotonePart {
                    a: du(&[2, 2]),
                    base_to_a: vec![0, 1],
                    b: du(&[2, 2]),
                    a_to_b: vec![0, 1, 2, 3],
                },
                MonotonePart {
                    a: c(2),
                    base_to_a: vec![0, 1],
                    b: c(2),
                    a_to_b: vec![0, 1],
                },
            ],
        };
        let r = check_coproduct_monotone_bounded(&p, &ident).unwrap();
        assert!(r.injective);
        assert_eq!(r.source_size, r.target_size);
        assert_eq!(r.induced, (0..r.source_size).collect::<Vec<_>>());
    }
}
