//! Normal forms modulo the grasper kernel.
//!
//! For `π = G * <t>` the kernel is generated by `1`, by `h + h⁻¹t⁻¹` for every
//! `h`, and (in [`Mode::Full`]) by `Z[G]`. Applying the second relation twice
//! gives `h ≡ t h t⁻¹`, so the quotient is presented by pairs of
//! `t`-conjugation orbits `{O(h), O(h⁻¹t⁻¹)}` carrying opposite signs. The
//! two orbits of a pair never coincide (their `t`-exponent sums `e` and
//! `-e-1` differ in parity), hence the quotient is free abelian on the
//! surviving pairs and each pair gets one canonical representative word.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FactorSpec, GroupSpec, Reserved};
use crate::ring::{add_coeff, mul_coeff, write_terms, RingElement};
use crate::word::{same_ctx, Element, Syllable, Word};

/// Which relations are imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Surgered-unknot setting `X = M # S¹×S³`: additionally `Z[G] ≡ 0`.
    Full,
    /// Only `1 ≡ 0` and `h ≡ -h⁻¹t⁻¹`.
    Weak,
}

#[derive(Debug, Clone)]
pub struct ReductionContext {
    ctx: Arc<GroupSpec>,
    mode: Mode,
    t_factor: usize,
    label: Option<String>,
}

impl PartialEq for ReductionContext {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && same_ctx(&self.ctx, &other.ctx)
    }
}

impl Eq for ReductionContext {}

impl ReductionContext {
    pub fn new(ctx: &Arc<GroupSpec>, mode: Mode) -> Result<ReductionContext> {
        let t_factor = ctx.reserved_factor(Reserved::T).ok_or(Error::NoTFactor)?;
        if mode == Mode::Weak && !matches!(ctx.factor(t_factor), FactorSpec::IntegerCyclic(_)) {
            return Err(Error::UnsupportedWeakContext);
        }
        Ok(ReductionContext {
            ctx: ctx.clone(),
            mode,
            t_factor,
            label: None,
        })
    }

    /// Full-mode context over `base * <t>`.
    pub fn surgered(base: Vec<FactorSpec>) -> Result<ReductionContext> {
        ReductionContext::new(&GroupSpec::new(base, &[Reserved::T])?, Mode::Full)
    }

    /// The 4-sphere: trivial base group, full mode.
    pub fn s4() -> ReductionContext {
        ReductionContext::surgered(vec![FactorSpec::Trivial])
            .expect("valid")
            .with_label("S4")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| self.ctx.describe_base())
    }

    pub fn ctx(&self) -> &Arc<GroupSpec> {
        &self.ctx
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_s4(&self) -> bool {
        self.ctx.base_is_trivial()
    }

    /// `G * <x> * <y>`: the context bar words live in.
    pub fn bar_ctx(&self) -> Arc<GroupSpec> {
        self.ctx.with_reserved(&[Reserved::X, Reserved::Y])
    }

    pub fn t(&self, exp: i64) -> Word {
        Word::reserved(&self.ctx, Reserved::T, exp).expect("t exists")
    }

    fn check(&self, w: &Word) -> Result<()> {
        if same_ctx(&self.ctx, w.ctx()) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn is_t(&self, s: &Syllable) -> bool {
        s.factor == self.t_factor
    }

    /// Representative of `{tᵏ h t⁻ᵏ}`: a pure `t`-power, or the unique member
    /// that starts with a non-`t` syllable.
    pub fn orbit_canonical_rep(&self, h: &Word) -> Result<Word> {
        self.check(h)?;
        let s = h.syllables();
        if h.pure_power_of(self.t_factor).is_some() {
            return Ok(h.clone());
        }
        let exp = |x: &Syllable| match x.element {
            Element::Power(e) => e,
            Element::Free(_) => unreachable!("t is cyclic"),
        };
        let (lead, start) = match s.first() {
            Some(x) if self.is_t(x) => (exp(x), 1),
            _ => (0, 0),
        };
        let (trail, end) = match s.last() {
            Some(x) if self.is_t(x) => (exp(x), s.len() - 1),
            _ => (0, s.len()),
        };
        let mut core = s[start..end].to_vec();
        let shift = crate::word::add_exp(lead, trail)?;
        if shift != 0 {
            core.push(Syllable {
                factor: self.t_factor,
                element: Element::Power(shift),
            });
        }
        Ok(Word::from_parts(self.ctx.clone(), core))
    }

    /// The involution `σ(h) = h⁻¹t⁻¹`, before canonicalisation.
    pub fn sigma(&self, h: &Word) -> Result<Word> {
        self.check(h)?;
        h.inverse().multiply(&self.t(-1))
    }

    /// Orbit representative of `σ(h)`; `h ≡ -σ(h)` in the quotient.
    pub fn sigma_partner(&self, h: &Word) -> Result<Word> {
        self.orbit_canonical_rep(&self.sigma(h)?)
    }

    fn kills(&self, rep: &Word) -> bool {
        match self.mode {
            Mode::Full => !rep.contains_factor(self.t_factor),
            Mode::Weak => rep.is_identity(),
        }
    }

    /// Image of a single word: `None` when it vanishes, otherwise the pair
    /// representative and the sign it carries.
    pub fn classify(&self, h: &Word) -> Result<Option<(Word, i64)>> {
        let r1 = self.orbit_canonical_rep(h)?;
        let r2 = self.sigma_partner(h)?;
        if self.kills(&r1) || self.kills(&r2) {
            return Ok(None);
        }
        Ok(Some(if r1 < r2 { (r1, 1) } else { (r2, -1) }))
    }

    pub fn reduce(&self, a: &RingElement) -> Result<GrasperClass> {
        if !same_ctx(&self.ctx, a.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = GrasperClass::zero(self);
        for (w, c) in a.terms() {
            if let Some((rep, sign)) = self.classify(w)? {
                out.add_term(rep, mul_coeff(c, sign)?)?;
            }
        }
        Ok(out)
    }

    /// Class of `1·h`.
    pub fn class_of(&self, h: &Word) -> Result<GrasperClass> {
        self.reduce(&RingElement::from_word(h.clone()))
    }
}

/// Element of `Z[π]/ker`, stored on canonical pair representatives.
#[derive(Clone, PartialEq, Eq)]
pub struct GrasperClass {
    rctx: ReductionContext,
    terms: BTreeMap<Word, i64>,
}

impl GrasperClass {
    pub fn zero(rctx: &ReductionContext) -> GrasperClass {
        GrasperClass {
            rctx: rctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, rep: Word, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(rep).or_insert(0);
        *slot = add_coeff(*slot, c)?;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn rctx(&self) -> &ReductionContext {
        &self.rctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coefficient(&self, rep: &Word) -> i64 {
        self.terms.get(rep).copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &GrasperClass) -> Result<GrasperClass> {
        if self.rctx != other.rctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Result<GrasperClass> {
        let mut out = GrasperClass::zero(&self.rctx);
        if k != 0 {
            for (w, c) in &self.terms {
                out.terms.insert(w.clone(), mul_coeff(*c, k)?);
            }
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<GrasperClass> {
        self.scale(-1)
    }

    /// The class as a ring element supported on representatives.
    pub fn to_ring(&self) -> RingElement {
        RingElement::from_terms(
            self.rctx.ctx(),
            self.terms.iter().map(|(w, c)| (*c, w.clone())),
        )
        .expect("representatives share the context and cannot collide")
    }
}

impl fmt::Display for GrasperClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w, *c)))
    }
}

impl fmt::Debug for GrasperClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrasperClass({self})")
    }
}
