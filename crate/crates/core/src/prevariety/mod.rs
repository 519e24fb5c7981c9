//! Prevarieties SP(Y) generated by finitely many finite algebras: canonical
//! free algebras and coproducts, compatibility, independence, relative
//! subdirect irreducibility and bounded amalgamation checks.

mod construct;
mod enumerate;
mod independence;
mod quasi;
mod relative;

pub use construct::{
    amalgamated_coproduct, coproduct, free_algebra, CoproductResult, FreeAlgebra, HomIndex,
    IndexEntry,
};
pub use enumerate::{
    check_amalgamation_bounded, constants_si_census, enumerate_algebras, enumerate_members,
    has_trivial_subalgebra, AmalgamationFailure, AmalgamationOptions, AmalgamationReport,
    ConstantsCensus,
};
pub use independence::{
    chain_independence, check_coproduct_monotone_bounded, common_embedding_target,
    is_comfortable, is_compatible, is_coproduct, is_independent, minimum_compatible_cover,
    subfamily_independence_check, ChainReport, ChainStep, MonotoneInstance, MonotonePart,
    MonotoneReport,
};
pub use quasi::{quasi_identity_holds, QuasiIdentity};
pub use relative::{is_p_subdirectly_irreducible, relative_congruences};

use crate::algcore::{FiniteAlgebra, Signature, DEFAULT_CONGRUENCE_BOUND};
use crate::error::{Error, Result};
use crate::homsearch::{separate_points, SearchBudget, Separation};

/// Size limits for the canonical constructions and searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Bound on index size times carrier size of a product closure.
    pub max_product_cells: usize,
    /// Bound on the carrier of a constructed algebra.
    pub max_carrier: usize,
    /// Carrier bound for congruence enumeration.
    pub congruence_bound: usize,
    /// Bound on the number of map families enumerated by a check.
    pub max_families: usize,
    /// Bound on the number of candidate tables visited by enumerations.
    pub max_candidates: usize,
    pub search: SearchBudget,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_product_cells: 1_000_000,
            max_carrier: 10_000,
            congruence_bound: DEFAULT_CONGRUENCE_BOUND,
            max_families: 100_000,
            max_candidates: 2_000_000,
            search: SearchBudget::default(),
        }
    }
}

/// The prevariety SP(Y) generated by a nonempty list of finite algebras.
#[derive(Debug, Clone)]
pub struct PrevarietyCtx {
    generators: Vec<FiniteAlgebra>,
    budgets: Budgets,
}

impl PrevarietyCtx {
    pub fn new(generators: Vec<FiniteAlgebra>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument(
                "a prevariety needs at least one generator".into(),
            ));
        };
        if generators.iter().any(|g| g.signature() != first.signature()) {
            return Err(Error::SignatureMismatch);
        }
        Ok(PrevarietyCtx {
            generators,
            budgets: Budgets::default(),
        })
    }

    pub fn with_budgets(mut self, budgets: Budgets) -> Self {
        self.budgets = budgets;
        self
    }

    pub fn generators(&self) -> &[FiniteAlgebra] {
        &self.generators
    }

    pub fn signature(&self) -> &Signature {
        self.generators[0].signature()
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    fn generator_refs(&self) -> Vec<&FiniteAlgebra> {
        self.generators.iter().collect()
    }

    /// Point-separation membership test.
    pub fn contains(&self, a: &FiniteAlgebra) -> Result<bool> {
        Ok(self.separation(a)?.is_separated())
    }

    pub fn separation(&self, a: &FiniteAlgebra) -> Result<Separation> {
        if a.signature() != self.signature() {
            return Err(Error::SignatureMismatch);
        }
        separate_points(a, &self.generator_refs(), self.budgets.search)
    }

    /// Fails with a membership error carrying an unseparated pair.
    pub fn require_member(&self, a: &FiniteAlgebra, what: &str) -> Result<()> {
        match self.separation(a)? {
            Separation::Separated(_) => Ok(()),
            Separation::Unseparated(x, y) => Err(Error::NotInPrevariety {
                what: what.to_string(),
                witness: (x, y),
            }),
        }
    }
}
