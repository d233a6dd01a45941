//! Integer group ring `Z[π]` over a free-product context.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::word::{same_ctx, Word};

/// Finite integer combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ctx: Arc<GroupSpec>,
    terms: BTreeMap<Word, i64>,
}

/// Sign of a double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

pub(crate) fn add_coeff(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::CoefficientOverflow)
}

pub(crate) fn mul_coeff(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::CoefficientOverflow)
}

impl RingElement {
    pub fn zero(ctx: &Arc<GroupSpec>) -> RingElement {
        RingElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<GroupSpec>) -> RingElement {
        RingElement::monomial(1, Word::identity(ctx))
    }

    pub fn from_word(w: Word) -> RingElement {
        RingElement::monomial(1, w)
    }

    pub fn monomial(coeff: i64, w: Word) -> RingElement {
        let mut terms = BTreeMap::new();
        let ctx = w.ctx().clone();
        if coeff != 0 {
            terms.insert(w, coeff);
        }
        RingElement { ctx, terms }
    }

    /// Sums `(coefficient, word)` pairs, combining equal words.
    pub fn from_terms<I>(ctx: &Arc<GroupSpec>, terms: I) -> Result<RingElement>
    where
        I: IntoIterator<Item = (i64, Word)>,
    {
        let mut out = RingElement::zero(ctx);
        for (c, w) in terms {
            if !same_ctx(ctx, w.ctx()) {
                return Err(Error::ContextMismatch);
            }
            out.add_term(c, w)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, c: i64, w: Word) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_coeff(*o.get(), c)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<GroupSpec> {
        &self.ctx
    }

    /// Terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// The single word when `self` is `1·w`.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, 1)) if self.terms.len() == 1 => Some(w),
            _ => None,
        }
    }

    fn check_ctx(&self, other: &RingElement) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*c, w.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<RingElement> {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Result<RingElement> {
        if k == 0 {
            return Ok(RingElement::zero(&self.ctx));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), mul_coeff(*c, k)?)))
            .collect::<Result<_>>()?;
        Ok(RingElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Convolution product.
    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ctx(other)?;
        let mut out = RingElement::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mul_coeff(*ca, *cb)?, a.multiply(b)?)?;
            }
        }
        Ok(out)
    }

    /// `Σ εᵢ hᵢ ↦ Σ εᵢ hᵢ⁻¹`.
    pub fn bar(&self) -> RingElement {
        RingElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.inverse(), *c)).collect(),
        }
    }

    /// Removes the coefficient at the identity word.
    pub fn drop_identity_coeff(&self) -> RingElement {
        let mut out = self.clone();
        out.terms.retain(|w, _| !w.is_identity());
        out
    }

    /// Ring homomorphism induced by a generator assignment.
    pub fn map_generators(&self, map: &GeneratorMap) -> Result<RingElement> {
        map.check_source(&self.ctx)?;
        let mut out = RingElement::zero(&map.target);
        for (w, c) in &self.terms {
            out.add_term(*c, map.apply(w)?)?;
        }
        Ok(out)
    }

    /// Signed sum of double-point loops, `Σ ε·h`.
    pub fn from_double_points(
        ctx: &Arc<GroupSpec>,
        points: &[(Sign, Word)],
    ) -> Result<RingElement> {
        RingElement::from_terms(ctx, points.iter().map(|(s, w)| (s.value(), w.clone())))
    }
}

/// Images of generators for an induced homomorphism between contexts.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    target: Arc<GroupSpec>,
    images: BTreeMap<String, Word>,
}

impl GeneratorMap {
    pub fn new(target: &Arc<GroupSpec>) -> GeneratorMap {
        GeneratorMap {
            target: target.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Sends every generator of `source` to the same-named generator of
    /// `target`, where one exists.
    pub fn by_name(source: &GroupSpec, target: &Arc<GroupSpec>) -> GeneratorMap {
        let mut map = GeneratorMap::new(target);
        for name in source.generator_names() {
            if let Ok(w) = Word::generator(target, name, 1) {
                map.images.insert(name.to_string(), w);
            }
        }
        map
    }

    pub fn set(&mut self, name: &str, image: Word) -> Result<&mut Self> {
        if !same_ctx(&self.target, image.ctx()) {
            return Err(Error::ContextMismatch);
        }
        self.images.insert(name.to_string(), image);
        Ok(self)
    }

    pub fn target(&self) -> &Arc<GroupSpec> {
        &self.target
    }

    fn check_source(&self, source: &GroupSpec) -> Result<()> {
        match source
            .generator_names()
            .find(|n| !self.images.contains_key(*n))
        {
            Some(n) => Err(Error::MissingImage(n.to_string())),
            None => Ok(()),
        }
    }

    /// Image of a single word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::identity(&self.target);
        for (g, e) in w.powers() {
            let name = w.ctx().generator_name(g);
            let image = self
                .images
                .get(name)
                .ok_or_else(|| Error::MissingImage(name.to_string()))?;
            out = out.multiply(&image.pow(e)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w, *c)))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

/// Renders `c₁w₁ + c₂w₂ - ...` in the ring grammar; `0` when empty.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Word, i64)>,
) -> fmt::Result {
    let mut first = true;
    for (w, c) in terms {
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if w.is_identity() {
            write!(f, "{mag}")?;
        } else if mag == 1 {
            write!(f, "{w}")?;
        } else {
            write!(f, "{mag}{w}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
