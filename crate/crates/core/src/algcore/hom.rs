use std::sync::Arc;

use super::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// A verified homomorphism between two shared algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if !source.is_homomorphism(&target, &map) {
            return Err(Error::NotAHomomorphism);
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(alg: Arc<FiniteAlgebra>) -> Self {
        let map = (0..alg.size()).collect();
        Homomorphism {
            source: alg.clone(),
            target: alg,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(Error::SignatureMismatch);
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}
