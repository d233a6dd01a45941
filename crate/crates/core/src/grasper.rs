//! Semisimple grasper families and theta embeddings.
//!
//! All four self-referential grasper families on a group element `h` are
//! isotopic to the simple grasper on `h + h⁻¹`; their classes are therefore
//! computed by one formula, [`sref_class`].

use crate::error::{Error, Result};
use crate::quotient::{GrasperClass, Mode, ReductionContext};
use crate::ring::RingElement;
use crate::word::Word;

/// Class of the semisimple family on `ξ`: the reduction of `ξ + ξ̄`.
pub fn sref_class(xi: &RingElement, rctx: &ReductionContext) -> Result<GrasperClass> {
    rctx.reduce(&xi.checked_add(&xi.bar())?)
}

/// A theta graph embedding, determined by two base-group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaData {
    g1: Word,
    g2: Word,
}

impl ThetaData {
    pub fn new(g1: Word, g2: Word) -> Result<ThetaData> {
        for g in [&g1, &g2] {
            if !g.is_base() {
                return Err(Error::NonBaseElement(g.to_string()));
            }
        }
        if g1.ctx() != g2.ctx() {
            return Err(Error::ContextMismatch);
        }
        Ok(ThetaData { g1, g2 })
    }

    pub fn g1(&self) -> &Word {
        &self.g1
    }

    pub fn g2(&self) -> &Word {
        &self.g2
    }

    /// `g₁ g₂⁻¹ t g₂`.
    pub fn guiding_element(&self, rctx: &ReductionContext) -> Result<Word> {
        self.g1
            .multiply(&self.g2.inverse())?
            .multiply(&rctx.t(1))?
            .multiply(&self.g2)
    }
}

/// Watanabe's theta class, `sref(g₁g₂⁻¹tg₂)`; the companion `-sref(g₁)` term
/// vanishes because `Z[G]` lies in the kernel, which needs [`Mode::Full`].
pub fn theta_class(d: &ThetaData, rctx: &ReductionContext) -> Result<GrasperClass> {
    if rctx.mode() != Mode::Full {
        return Err(Error::RequiresFullMode);
    }
    let h = d.guiding_element(rctx)?;
    sref_class(&RingElement::from_word(h), rctx)
}
