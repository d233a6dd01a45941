//! Barbell bar words and their grasper classes.
//!
//! A bar word lives in `B * <y>` where `y` is the meridian of the second cuff
//! and `B = G * <x>` with `x` the meridian of the first cuff. Splitting the
//! `y`-powers into single letters gives `W = Π fᵢ y^{εᵢ} hᵢ`; with
//! `wᵢ = Π_{j≤i} fⱼhⱼ` and `w = w_r` the barbell diffeomorphism is the
//! semisimple family on `w Σ εᵢ fᵢ⁻¹ w_{i-1}⁻¹`, renamed by `x ↦ t`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grasper::sref_class;
use crate::group::{GenRef, GroupSpec, Reserved};
use crate::quotient::{GrasperClass, Mode, ReductionContext};
use crate::ring::{GeneratorMap, RingElement, Sign};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarWord {
    word: Word,
}

impl BarWord {
    pub fn new(word: Word) -> Result<BarWord> {
        if !word.ctx().has(Reserved::Y) {
            return Err(Error::InvalidGroupSpec(
                "bar words need a `y` factor".into(),
            ));
        }
        Ok(BarWord { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn ctx(&self) -> &Arc<GroupSpec> {
        self.word.ctx()
    }

    fn y(&self) -> GenRef {
        GenRef {
            factor: self.ctx().reserved_factor(Reserved::Y).expect("checked"),
            local: 0,
        }
    }

    /// True when the word uses no letters besides `x` and `y`.
    pub fn is_xy_only(&self) -> bool {
        let ctx = self.ctx();
        self.word.syllables().iter().all(|s| {
            matches!(
                ctx.reserved_at(s.factor),
                Some(Reserved::X) | Some(Reserved::Y)
            )
        })
    }
}

impl std::fmt::Display for BarWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.word.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarbellSpec {
    pub bar_word: BarWord,
    pub cuff1_unknotted: bool,
    pub cuff2_unknotted: bool,
}

impl BarbellSpec {
    pub fn unknotted(bar_word: BarWord) -> BarbellSpec {
        BarbellSpec {
            bar_word,
            cuff1_unknotted: true,
            cuff2_unknotted: true,
        }
    }
}

/// One `f y^ε h` block of a factorised bar word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarFactor {
    pub f: Word,
    pub sign: Sign,
    pub h: Word,
}

/// Canonical factorisation: `hᵢ = 1` for `i < r` and `h_r` is the tail.
pub fn barword_factorize(w: &BarWord) -> Result<Vec<BarFactor>> {
    let ctx = w.ctx();
    let y = w.y();
    let mut out: Vec<BarFactor> = Vec::new();
    let mut segment: Vec<(GenRef, i64)> = Vec::new();
    for (g, e) in w.word.powers() {
        if g != y {
            segment.push((g, e));
            continue;
        }
        let sign = if e > 0 { Sign::Plus } else { Sign::Minus };
        for _ in 0..e.unsigned_abs() {
            out.push(BarFactor {
                f: Word::from_powers(ctx, segment.drain(..))?,
                sign,
                h: Word::identity(ctx),
            });
        }
    }
    let tail = Word::from_powers(ctx, segment)?;
    match out.last_mut() {
        Some(last) => last.h = tail,
        None => return Err(Error::NoYLetter),
    }
    Ok(out)
}

/// `y ↦ 1`, `x ↦ t`, base generators (and `t`, if the bar context has it)
/// map to themselves.
fn cuff_collapse(source: &GroupSpec, target: &Arc<GroupSpec>) -> Result<GeneratorMap> {
    let t = Word::reserved(target, Reserved::T, 1).map_err(|_| Error::NoTFactor)?;
    let mut map = GeneratorMap::by_name(source, target);
    map.set("y", Word::identity(target))?;
    map.set("x", t)?;
    Ok(map)
}

/// The element `w Σ εᵢ fᵢ⁻¹ w_{i-1}⁻¹`, mapped into `target` by `x ↦ t`.
/// A bar word without `y` gives the empty sum.
pub fn barbell_sref_argument(spec: &BarbellSpec, target: &Arc<GroupSpec>) -> Result<RingElement> {
    if !spec.cuff2_unknotted {
        return Err(Error::CuffKnotted("the second cuff must be unknotted"));
    }
    let bar = &spec.bar_word;
    let ctx = bar.ctx();
    let factors = match barword_factorize(bar) {
        Ok(f) => f,
        Err(Error::NoYLetter) => return Ok(RingElement::zero(target)),
        Err(e) => return Err(e),
    };
    let mut partial = vec![Word::identity(ctx)];
    for bf in &factors {
        let next = partial
            .last()
            .expect("nonempty")
            .multiply(&bf.f)?
            .multiply(&bf.h)?;
        partial.push(next);
    }
    let w = partial.last().expect("nonempty").clone();
    let terms = factors
        .iter()
        .zip(&partial)
        .map(|(bf, w_prev)| {
            Ok((
                bf.sign.value(),
                w.multiply(&bf.f.inverse())?.multiply(&w_prev.inverse())?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let arg = RingElement::from_terms(ctx, terms)?;
    arg.map_generators(&cuff_collapse(ctx, target)?)
}

/// Barbell diffeomorphism as a grasper class.
pub fn barbell_class(spec: &BarbellSpec, rctx: &ReductionContext) -> Result<GrasperClass> {
    if !spec.cuff2_unknotted {
        return Err(Error::CuffKnotted("the second cuff must be unknotted"));
    }
    if rctx.mode() == Mode::Full && !spec.cuff1_unknotted {
        return Err(Error::CuffKnotted(
            "full reduction needs the first cuff unknotted",
        ));
    }
    sref_class(&barbell_sref_argument(spec, rctx.ctx())?, rctx)
}

/// Bar word of the same barbell with the cuffs exchanged: the letter
/// sequence read backwards with `x` and `y` swapped.
pub fn dual_bar_word(w: &BarWord) -> Result<BarWord> {
    let ctx = w.ctx();
    let (Some(x), Some(y)) = (
        ctx.reserved_factor(Reserved::X),
        ctx.reserved_factor(Reserved::Y),
    ) else {
        return Err(Error::BaseLettersPresent(w.to_string()));
    };
    if !w.is_xy_only() {
        return Err(Error::BaseLettersPresent(w.to_string()));
    }
    let swapped = w.word.powers().into_iter().rev().map(|(g, e)| {
        let factor = if g.factor == x { y } else { x };
        (GenRef { factor, local: 0 }, e)
    });
    BarWord::new(Word::from_powers(ctx, swapped)?)
}

/// Simple-null grasper class for a nullhomotopic leaf:
/// `W·dax·W⁻¹ - λ̄ - conj(λ̄)` mapped by `i_L` and reduced.
///
/// `λ̄` collects, for each letter `y^{εᵢ}`, the loop `W fᵢ⁻¹ Pᵢ⁻¹` with sign
/// `-εᵢ`, where `Pᵢ = Π_{j<i} fⱼ y^{εⱼ} hⱼ`. `dax_term` is the user-supplied
/// dax value of the bounding ball (zero when the ball is embedded), given in
/// the bar word's context.
pub fn simple_null_class(
    w: &BarWord,
    rctx: &ReductionContext,
    dax_term: &RingElement,
) -> Result<GrasperClass> {
    let ctx = w.ctx();
    let factors = match barword_factorize(w) {
        Ok(f) => f,
        Err(Error::NoYLetter) => Vec::new(),
        Err(e) => return Err(e),
    };
    let y = Word::reserved(ctx, Reserved::Y, 1)?;
    let mut lambda = RingElement::zero(ctx);
    let mut prefix = Word::identity(ctx);
    for bf in &factors {
        let loop_word = w
            .word
            .multiply(&bf.f.inverse())?
            .multiply(&prefix.inverse())?;
        lambda = lambda.checked_add(&RingElement::monomial(-bf.sign.value(), loop_word))?;
        prefix = prefix
            .multiply(&bf.f)?
            .multiply(&y.pow(bf.sign.value())?)?
            .multiply(&bf.h)?;
    }
    let lambda = lambda.drop_identity_coeff();
    let bar_w = RingElement::from_word(w.word.clone());
    let bar_w_inv = RingElement::from_word(w.word.inverse());
    let total = bar_w
        .checked_mul(dax_term)?
        .checked_mul(&bar_w_inv)?
        .checked_sub(&lambda)?
        .checked_sub(&lambda.bar())?;
    rctx.reduce(&total.map_generators(&cuff_collapse(ctx, rctx.ctx())?)?)
}
