use super::PrevarietyCtx;
use crate::algcore::{all_congruences, monolith_of, Congruence, FiniteAlgebra};
use crate::error::{Error, Result};

/// Congruences of `a` whose quotient lies in P.
pub fn relative_congruences(ctx: &PrevarietyCtx, a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    ctx.require_member(a, "algebra")?;
    let mut out = Vec::new();
    for c in all_congruences(a, ctx.budgets().congruence_bound)? {
        let (q, _) = a.quotient(&c)?;
        if ctx.contains(&q)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Subdirect irreducibility relative to P: the non-diagonal relative
/// congruences have a non-diagonal meet, returned as the monolith.
pub fn is_p_subdirectly_irreducible(
    ctx: &PrevarietyCtx,
    a: &FiniteAlgebra,
) -> Result<(bool, Option<Congruence>)> {
    if a.size() < 2 {
        return Err(Error::TrivialAlgebra);
    }
    let rel = relative_congruences(ctx, a)?;
    Ok(monolith_of(a.size(), rel.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(d: usize) -> FiniteAlgebra {
        FiniteAlgebra::cyclic_unary(d).unwrap()
    }

    #[test]
    fn relative_examples() {
        let p = PrevarietyCtx::new(vec![c(2), c(3)]).unwrap();
        let rel = relative_congruences(&p, &c(6)).unwrap();
        let blocks: Vec<usize> = rel.iter().map(|c| c.num_blocks()).collect();
        assert_eq!(blocks, vec![6, 3, 2, 1]);
        assert_eq!(relative_congruences(&p, &c(1)).unwrap().len(), 1);
        let p2 = PrevarietyCtx::new(vec![c(2)]).unwrap();
        assert_eq!(relative_congruences(&p2, &c(2)).unwrap().len(), 2);
    }

    #[test]
    fn relative_si_examples() {
        let p = PrevarietyCtx::new(vec![c(2), c(3)]).unwrap();
        assert!(is_p_subdirectly_irreducible(&p, &c(2)).unwrap().0);
        assert!(is_p_subdirectly_irreducible(&p, &c(3)).unwrap().0);
        assert!(!is_p_subdirectly_irreducible(&p, &c(6)).unwrap().0);
        assert!(matches!(
            is_p_subdirectly_irreducible(&p, &c(1)),
            Err(Error::TrivialAlgebra)
        ));
    }
}
