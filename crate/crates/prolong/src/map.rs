//! Monomial parametrizations of toric varieties.
//!
//! A [`MonomialMap`] sends each target coordinate to a monomial in the
//! parameters. Evaluating the images at a rational parameter vector yields a
//! point of the parametrized variety; those points feed the secant vanishing
//! checks and interpolation.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::varset::VarSet;
use crate::Q;
use num_traits::One;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMap {
    params: Arc<VarSet>,
    targets: Arc<VarSet>,
    /// One image monomial per target coordinate, in target order.
    images: Vec<Monomial>,
}

impl MonomialMap {
    pub fn new(
        params: Arc<VarSet>,
        targets: Arc<VarSet>,
        images: Vec<Monomial>,
    ) -> Result<MonomialMap> {
        if images.len() != targets.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} image monomials, got {}",
                targets.len(),
                images.len()
            )));
        }
        if images.iter().any(|m| m.nvars() != params.len()) {
            return Err(Error::VarSetMismatch);
        }
        Ok(MonomialMap {
            params,
            targets,
            images,
        })
    }

    pub fn params(&self) -> &Arc<VarSet> {
        &self.params
    }

    pub fn targets(&self) -> &Arc<VarSet> {
        &self.targets
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    /// Image of a parameter vector: each target coordinate is its image
    /// monomial evaluated at the parameters.
    pub fn evaluate(&self, params: &[Q]) -> Result<Vec<Q>> {
        if params.len() != self.params.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} parameter values, got {}",
                self.params.len(),
                params.len()
            )));
        }
        Ok(self
            .images
            .iter()
            .map(|m| {
                let mut v = Q::one();
                for i in 0..m.nvars() {
                    for _ in 0..m.exp(i) {
                        v *= &params[i];
                    }
                }
                v
            })
            .collect())
    }
}
