use std::collections::HashMap;

use super::{subst_hom, FreeElement, FreeTermContext, MWord, SubstHom, WordElem};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FreePairCertificate {
    pub free: bool,
    pub depth: usize,
    /// Normal forms of the two-generator free algebra that were compared.
    pub elements_checked: usize,
    /// Two distinct normal forms in `y, z` identified under `y ↦ px, z ↦ qx`.
    pub collision: Option<(FreeElement, FreeElement)>,
}

/// Checks that `px, qx` generate a free subalgebra of the one-generator free
/// algebra up to the given depth.
///
/// A relation between `px` and `qx` is a pair of terms `T1(y, z)`,
/// `T2(y, z)` whose values at `(px, qx)` agree. Evaluating at `(px, qx)`
/// factors through the normal forms in `y, z`, so every such relation holds
/// in the two-generator free algebra exactly when the substitution map is
/// one-to-one on normal forms of that depth.
pub fn verify_free_pair(ctx: &FreeTermContext, depth: usize) -> Result<FreePairCertificate> {
    if ctx.generators() != 1 {
        return Err(Error::InvalidArgument(
            "the free pair lives in the one-generator free algebra".into(),
        ));
    }
    let pair = FreeTermContext::new(ctx.variety(), 2);
    let px = FreeElement::word(MWord(vec![super::Letter::P]), 0);
    let qx = FreeElement::word(MWord(vec![super::Letter::Q]), 0);
    let phi = subst_hom(&pair, ctx, vec![px, qx])?;
    let elements = pair.elements_up_to(depth);
    let mut seen: HashMap<FreeElement, &FreeElement> = HashMap::with_capacity(elements.len());
    for e in &elements {
        if let Some(prev) = seen.insert(phi.apply(e), e) {
            return Ok(FreePairCertificate {
                free: false,
                depth,
                elements_checked: elements.len(),
                collision: Some((prev.clone(), e.clone())),
            });
        }
    }
    Ok(FreePairCertificate {
        free: true,
        depth,
        elements_checked: elements.len(),
        collision: None,
    })
}

#[derive(Debug, Clone)]
pub struct NoFreeTripleCertificate {
    pub bound: usize,
    pub triples_checked: usize,
    /// Triples containing `0` or a tag; `p` sends those to `0`, which never
    /// happens to a free generator.
    pub non_word_triples: usize,
    /// Triples of words on which `t` takes the value `0`.
    pub word_triples_with_zero_t: usize,
    /// A word triple with nonzero `t`, if one was found.
    pub counterexample: Option<[FreeElement; 3]>,
    /// Whether `t(x, y, z)` is nonzero in the three-generator free algebra,
    /// so that `t(x, y, z) = 0` is not an identity.
    pub t_xyz_survives: bool,
    pub holds: bool,
}

/// Shows that no triple of elements with words of length at most `bound`
/// freely generates a subalgebra of the one-generator free algebra.
pub fn no_free_triple_bounded(ctx: &FreeTermContext, bound: usize) -> Result<NoFreeTripleCertificate> {
    if ctx.generators() != 1 {
        return Err(Error::InvalidArgument(
            "the triple search runs in the one-generator free algebra".into(),
        ));
    }
    if bound == 0 {
        return Err(Error::InvalidArgument("length bound must be at least 1".into()));
    }
    let elements = ctx.elements_up_to(bound);
    let mut cert = NoFreeTripleCertificate {
        bound,
        triples_checked: 0,
        non_word_triples: 0,
        word_triples_with_zero_t: 0,
        counterexample: None,
        t_xyz_survives: t_xyz_survives(ctx),
        holds: false,
    };
    for a in &elements {
        for b in &elements {
            for c in &elements {
                cert.triples_checked += 1;
                if [a, b, c].iter().any(|e| e.as_word().is_none()) {
                    cert.non_word_triples += 1;
                } else if ctx.apply_t(a, b, c).is_zero() {
                    cert.word_triples_with_zero_t += 1;
                } else if cert.counterexample.is_none() {
                    cert.counterexample = Some([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    cert.holds = cert.t_xyz_survives && cert.counterexample.is_none();
    Ok(cert)
}

fn t_xyz_survives(ctx: &FreeTermContext) -> bool {
    let three = FreeTermContext::new(ctx.variety(), 3);
    let gens: Vec<FreeElement> = (0..3).map(|g| FreeElement::Word(WordElem::gen(g))).collect();
    three.apply_t(&gens[0], &gens[1], &gens[2]).is_tag()
}

/// Whether the given triple satisfies a relation that is not an identity,
/// and so does not freely generate its subalgebra: either some element is
/// killed by `p`, or `t` vanishes on the triple while `t(x, y, z)` does not
/// vanish in the free algebra.
pub fn t_relation_obstruction(ctx: &FreeTermContext, triple: &[FreeElement; 3]) -> bool {
    if triple.iter().any(|e| e.as_word().is_none()) {
        return true;
    }
    ctx.apply_t(&triple[0], &triple[1], &triple[2]).is_zero() && t_xyz_survives(ctx)
}

#[derive(Debug, Clone)]
pub struct TripleWitness {
    pub f: SubstHom,
    pub g: SubstHom,
    pub h: SubstHom,
    /// Images of `px, pqx, pqqx` under `h g f`.
    pub images: [FreeElement; 3],
}

/// Rewrites an element of the subalgebra generated by `px, qx` in terms of
/// those two generators, named `y` and `z`.
fn into_pair(e: &FreeElement) -> Result<FreeElement> {
    let word = |w: &WordElem| -> Result<WordElem> {
        match w.word.0.split_last() {
            Some((last, rest)) => Ok(WordElem::new(
                MWord(rest.to_vec()),
                match last {
                    super::Letter::P => 0,
                    super::Letter::Q => 1,
                },
            )),
            None => Err(Error::VerificationFailed(
                "element outside the subalgebra generated by px and qx".into(),
            )),
        }
    };
    Ok(match e {
        FreeElement::Zero => FreeElement::Zero,
        FreeElement::Word(w) => FreeElement::Word(word(w)?),
        FreeElement::Tag(ws) => FreeElement::Tag(Box::new([word(&ws[0])?, word(&ws[1])?, word(&ws[2])?])),
    })
}

/// Builds the maps `f`, `g`, `h` on the free pair `px, qx` and checks that
/// the composite `h g f` sends `(px, pqx, pqqx)` to `(a x, b x, c x)`.
pub fn witness_triple_hom(a: &MWord, b: &MWord, c: &MWord) -> Result<TripleWitness> {
    use super::{Letter, Variety};
    let one = FreeTermContext::new(Variety::V0, 1);
    let pair = FreeTermContext::new(Variety::V0, 2);
    let w = |m: MWord| FreeElement::word(m, 0);
    let lit = |ls: &[Letter]| MWord(ls.to_vec());
    let x = w(MWord::empty());

    let f = subst_hom(&pair, &one, vec![w(a.concat(&lit(&[Letter::Q, Letter::Q]))), x.clone()])?;
    let g = subst_hom(&pair, &one, vec![w(b.concat(&lit(&[Letter::Q]))), x.clone()])?;
    let h = subst_hom(&pair, &one, vec![w(c.clone()), x])?;

    let start = [
        w(lit(&[Letter::P])),
        w(lit(&[Letter::P, Letter::Q])),
        w(lit(&[Letter::P, Letter::Q, Letter::Q])),
    ];
    let step = |m: &SubstHom, e: &FreeElement| -> Result<FreeElement> { Ok(m.apply(&into_pair(e)?)) };
    let mut images = start.clone();
    for e in images.iter_mut() {
        let v = step(&f, e)?;
        let v = step(&g, &v)?;
        *e = step(&h, &v)?;
    }
    let expected = [w(a.clone()), w(b.clone()), w(c.clone())];
    if images != expected {
        return Err(Error::VerificationFailed(format!(
            "composite sends the triple to {}, {}, {}",
            one.display(&images[0]),
            one.display(&images[1]),
            one.display(&images[2])
        )));
    }
    Ok(TripleWitness { f, g, h, images })
}

#[cfg(test)]
mod tests {
    use super::super::Variety;
    use super::*;

    #[test]
    fn free_pair_both_varieties() {
        for v in [Variety::V0, Variety::V1] {
            let ctx = FreeTermContext::new(v, 1);
            for d in [3, 4] {
                let c = verify_free_pair(&ctx, d).unwrap();
                assert!(c.free, "{:?} depth {}: {:?}", v, d, c.collision);
            }
        }
    }

    #[test]
    fn no_free_triple_in_v1() {
        let ctx = FreeTermContext::new(Variety::V1, 1);
        for l in [1, 3] {
            let c = no_free_triple_bounded(&ctx, l).unwrap();
            assert!(c.holds);
            assert!(c.t_xyz_survives);
            assert!(c.word_triples_with_zero_t > 0);
        }
        assert!(no_free_triple_bounded(&ctx, 0).is_err());
    }

    #[test]
    fn v0_has_free_looking_word_triples() {
        let ctx = FreeTermContext::new(Variety::V0, 1);
        let c = no_free_triple_bounded(&ctx, 2).unwrap();
        assert!(!c.holds);
        let triple = [
            ctx.parse_nf("px").unwrap(),
            ctx.parse_nf("pqx").unwrap(),
            ctx.parse_nf("qqx").unwrap(),
        ];
        assert!(t_relation_obstruction(&ctx, &triple));
    }

    #[test]
    fn witness_examples() {
        let e = MWord::empty();
        let r = witness_triple_hom(&e, &e, &e).unwrap();
        let x = FreeElement::word(MWord::empty(), 0);
        assert_eq!(r.images, [x.clone(), x.clone(), x]);

        let m = |s: &str| MWord::parse(s).unwrap();
        let r = witness_triple_hom(&m("p"), &m("q"), &m("pq")).unwrap();
        assert_eq!(
            r.images,
            [
                FreeElement::word(m("p"), 0),
                FreeElement::word(m("q"), 0),
                FreeElement::word(m("pq"), 0)
            ]
        );
    }
}
