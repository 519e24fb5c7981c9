//! An independent check of the survival predicates: raw terms are reduced
//! bottom-up, and a `t`-term is killed only when it literally matches a
//! substitution instance of one of the identity schemas.

use super::{FreeTerm, FreeTermContext, Letter, Variety};

fn is_t(t: &FreeTerm) -> bool {
    matches!(t, FreeTerm::T(_))
}

/// Whether `t` is a term in the stems, i.e. `t = a(s1, s2, ..)` literally.
fn built_from(t: &FreeTerm, stems: &[&FreeTerm]) -> bool {
    if stems.contains(&t) {
        return true;
    }
    match t {
        FreeTerm::Zero => true,
        FreeTerm::Gen(_) => false,
        FreeTerm::Apply(_, inner) => built_from(inner, stems),
        FreeTerm::T(args) => args.iter().all(|a| built_from(a, stems)),
    }
}

fn subterms<'a>(t: &'a FreeTerm, out: &mut Vec<&'a FreeTerm>) {
    if !out.contains(&t) {
        out.push(t);
    }
    match t {
        FreeTerm::Apply(_, inner) => subterms(inner, out),
        FreeTerm::T(args) => args.iter().for_each(|a| subterms(a, out)),
        _ => {}
    }
}

/// Whether `t(a, b, c)` is an instance of a schema of `variety` that sets
/// a `t`-term to `0`.
fn matches_schema(variety: Variety, a: &FreeTerm, b: &FreeTerm, c: &FreeTerm) -> bool {
    match variety {
        Variety::V1 => {
            // t(a(x, y), b(x, y), c(x, y)) = 0
            let mut cands = Vec::new();
            for arg in [a, b, c] {
                subterms(arg, &mut cands);
            }
            cands.iter().any(|s1| {
                cands
                    .iter()
                    .any(|s2| [a, b, c].iter().all(|arg| built_from(arg, &[s1, s2])))
            })
        }
        Variety::V0 => {
            // t(u, pv, qv) = 0
            let pv_qv = matches!(
                (b, c),
                (FreeTerm::Apply(Letter::P, s), FreeTerm::Apply(Letter::Q, s2)) if s == s2
            );
            // t(a(u, v), u, v) = 0
            pv_qv || built_from(a, &[b, c])
        }
    }
}

/// Reduces a raw term with the identity schemas of `variety`: `0` absorbs
/// `p`, `q` and `t`, `p` and `q` kill `t`-values, `t` with a `t`-argument
/// is `0`, and remaining `t`-terms are `0` when they match a schema
/// instance.
pub fn reduce(variety: Variety, t: &FreeTerm) -> FreeTerm {
    match t {
        FreeTerm::Zero | FreeTerm::Gen(_) => t.clone(),
        FreeTerm::Apply(l, inner) => {
            let r = reduce(variety, inner);
            if r == FreeTerm::Zero || is_t(&r) {
                FreeTerm::Zero
            } else {
                FreeTerm::apply(*l, r)
            }
        }
        FreeTerm::T(args) => {
            let r: Vec<FreeTerm> = args.iter().map(|a| reduce(variety, a)).collect();
            if r.iter().any(|a| *a == FreeTerm::Zero || is_t(a)) {
                return FreeTerm::Zero;
            }
            if matches_schema(variety, &r[0], &r[1], &r[2]) {
                FreeTerm::Zero
            } else {
                FreeTerm::t(r[0].clone(), r[1].clone(), r[2].clone())
            }
        }
    }
}

/// All `t`-free terms over `generators` generators and `0` of depth at most
/// `depth`.
pub fn t_free_terms(generators: usize, depth: usize) -> Vec<FreeTerm> {
    let mut out: Vec<FreeTerm> = std::iter::once(FreeTerm::Zero)
        .chain((0..generators).map(FreeTerm::Gen))
        .collect();
    let mut layer = out.clone();
    for _ in 0..depth {
        let next: Vec<FreeTerm> = layer
            .iter()
            .flat_map(|t| [Letter::P, Letter::Q].map(|l| FreeTerm::apply(l, t.clone())))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Visits the bounded term universe of depth at most 4: all `t`-free terms
/// of depth 4; every `t(a, b, c)` with `t`-free arguments of depth 3; `p`
/// and `q` of every `t(a, b, c)` with `t`-free arguments of depth 2; and
/// every `t`-term with one argument a `t`-term of depth 1 and the other two
/// `t`-free of depth 1.
pub fn for_each_universe_term(generators: usize, mut visit: impl FnMut(&FreeTerm)) {
    for t in t_free_terms(generators, 4) {
        visit(&t);
    }
    let e3 = t_free_terms(generators, 3);
    for a in &e3 {
        for b in &e3 {
            for c in &e3 {
                visit(&FreeTerm::t(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let e2 = t_free_terms(generators, 2);
    for a in &e2 {
        for b in &e2 {
            for c in &e2 {
                let inner = FreeTerm::t(a.clone(), b.clone(), c.clone());
                for l in [Letter::P, Letter::Q] {
                    visit(&FreeTerm::apply(l, inner.clone()));
                }
            }
        }
    }
    let e0 = t_free_terms(generators, 0);
    let e1 = t_free_terms(generators, 1);
    for a in &e0 {
        for b in &e0 {
            for c in &e0 {
                let inner = FreeTerm::t(a.clone(), b.clone(), c.clone());
                for u in &e1 {
                    for v in &e1 {
                        visit(&FreeTerm::t(inner.clone(), u.clone(), v.clone()));
                        visit(&FreeTerm::t(u.clone(), inner.clone(), v.clone()));
                        visit(&FreeTerm::t(u.clone(), v.clone(), inner.clone()));
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AgreementReport {
    pub terms_checked: usize,
    /// `(term, normal form read back, oracle value)` for each disagreement,
    /// capped at a few entries.
    pub disagreements: Vec<(FreeTerm, FreeTerm, FreeTerm)>,
    pub disagreement_count: usize,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreement_count == 0
    }
}

/// Compares `normal_form` with the oracle on the bounded universe over
/// `generators` generators.
pub fn check_agreement(ctx: &FreeTermContext) -> AgreementReport {
    let mut report = AgreementReport::default();
    for_each_universe_term(ctx.generators(), |t| {
        report.terms_checked += 1;
        let nf = ctx
            .normal_form(t)
            .map(|e| ctx.embed(&e))
            .expect("universe terms use declared generators");
        let or = reduce(ctx.variety(), t);
        if nf != or {
            report.disagreement_count += 1;
            if report.disagreements.len() < 5 {
                report.disagreements.push((t.clone(), nf, or));
            }
        }
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_sizes() {
        assert_eq!(t_free_terms(1, 3).len(), 2 * 15);
        let mut n = 0;
        for_each_universe_term(1, |_| n += 1);
        assert_eq!(n, 62 + 30usize.pow(3) + 2 * 14usize.pow(3) + 3 * 8 * 36);
    }

    #[test]
    fn oracle_examples() {
        let c = FreeTermContext::new(Variety::V0, 1);
        let t = c.parse("t(x, p(qx), q(qx))").unwrap();
        assert_eq!(reduce(Variety::V0, &t), FreeTerm::Zero);
        let t = c.parse("t(x, qx, px)").unwrap();
        assert_eq!(reduce(Variety::V0, &t), t);
        let c3 = FreeTermContext::new(Variety::V1, 3);
        let t = c3.parse("t(x, y, z)").unwrap();
        assert_eq!(reduce(Variety::V1, &t), t);
    }

    #[test]
    fn agreement_one_generator() {
        for v in [Variety::V0, Variety::V1] {
            let r = check_agreement(&FreeTermContext::new(v, 1));
            assert!(r.agrees(), "{:?}: {:?}", v, r.disagreements);
        }
    }
}
