//! Free-product normal forms.
//!
//! A [`Word`] is a reduced sequence of syllables, each a nontrivial element of
//! one factor, with adjacent syllables in distinct factors. Reduction happens
//! on construction, so structural equality is group equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FactorSpec, GenRef, GroupSpec, Reserved};

/// Nontrivial element of a single factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Exponent of a cyclic generator: nonzero for `Z`, in `1..k` for `Z/k`.
    Power(i64),
    /// Freely reduced nonempty run list `(generator, exponent)`; adjacent
    /// runs use distinct generators and no exponent is zero.
    Free(Vec<(usize, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub element: Element,
}

/// Sort key for exponents: 1, -1, 2, -2, ...
pub(crate) fn zigzag(e: i64) -> u128 {
    if e > 0 {
        2 * e as u128 - 1
    } else {
        2 * e.unsigned_abs() as u128
    }
}

fn cmp_element(a: &Element, b: &Element) -> Ordering {
    match (a, b) {
        (Element::Power(x), Element::Power(y)) => zigzag(*x).cmp(&zigzag(*y)),
        (Element::Free(x), Element::Free(y)) => x.len().cmp(&y.len()).then_with(|| {
            x.iter()
                .map(|&(g, e)| (g, zigzag(e)))
                .cmp(y.iter().map(|&(g, e)| (g, zigzag(e))))
        }),
        (Element::Power(_), Element::Free(_)) => Ordering::Less,
        (Element::Free(_), Element::Power(_)) => Ordering::Greater,
    }
}

impl Ord for Syllable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factor
            .cmp(&other.factor)
            .then_with(|| cmp_element(&self.element, &other.element))
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn add_exp(a: i64, b: i64) -> Result<i64> {
    match a.checked_add(b) {
        Some(i64::MIN) | None => Err(Error::ExponentOverflow),
        Some(s) => Ok(s),
    }
}

fn mul_exp(a: i64, b: i64) -> Result<i64> {
    match a.checked_mul(b) {
        Some(i64::MIN) | None => Err(Error::ExponentOverflow),
        Some(s) => Ok(s),
    }
}

/// Stack normalizer: appending one generator power at a time keeps the
/// syllable list reduced.
struct Reducer<'a> {
    ctx: &'a GroupSpec,
    syllables: Vec<Syllable>,
}

impl<'a> Reducer<'a> {
    fn new(ctx: &'a GroupSpec, syllables: Vec<Syllable>) -> Self {
        Reducer { ctx, syllables }
    }

    fn push(&mut self, g: GenRef, exp: i64) -> Result<()> {
        if exp == i64::MIN {
            return Err(Error::ExponentOverflow);
        }
        let factor = self.ctx.factor(g.factor);
        let exp = match factor {
            FactorSpec::Trivial => return Ok(()),
            FactorSpec::FiniteCyclic { order, .. } => {
                (exp as i128).rem_euclid(*order as i128) as i64
            }
            _ => exp,
        };
        if exp == 0 {
            return Ok(());
        }
        if let Some(top) = self.syllables.last_mut() {
            if top.factor == g.factor {
                let emptied = match (&mut top.element, factor) {
                    (Element::Power(e), FactorSpec::FiniteCyclic { order, .. }) => {
                        *e = ((*e as i128 + exp as i128).rem_euclid(*order as i128)) as i64;
                        *e == 0
                    }
                    (Element::Power(e), _) => {
                        *e = add_exp(*e, exp)?;
                        *e == 0
                    }
                    (Element::Free(runs), _) => {
                        match runs.last_mut() {
                            Some((last, e)) if *last == g.local => {
                                *e = add_exp(*e, exp)?;
                                if *e == 0 {
                                    runs.pop();
                                }
                            }
                            _ => runs.push((g.local, exp)),
                        }
                        runs.is_empty()
                    }
                };
                if emptied {
                    self.syllables.pop();
                }
                return Ok(());
            }
        }
        let element = if factor.is_free() {
            Element::Free(vec![(g.local, exp)])
        } else {
            Element::Power(exp)
        };
        self.syllables.push(Syllable {
            factor: g.factor,
            element,
        });
        Ok(())
    }

    fn push_syllable(&mut self, s: &Syllable) -> Result<()> {
        match &s.element {
            Element::Power(e) => self.push(
                GenRef {
                    factor: s.factor,
                    local: 0,
                },
                *e,
            ),
            Element::Free(runs) => {
                for &(local, e) in runs {
                    self.push(
                        GenRef {
                            factor: s.factor,
                            local,
                        },
                        e,
                    )?;
                }
                Ok(())
            }
        }
    }
}

/// Element of a free product in normal form.
///
/// Equality, hashing and ordering look at the syllables only; mixing words
/// from different contexts is caught by the checked operations.
#[derive(Clone)]
pub struct Word {
    ctx: Arc<GroupSpec>,
    syllables: Vec<Syllable>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.syllables.hash(state)
    }
}

impl Ord for Word {
    /// Syllable count first, then lexicographic by `(factor, encoding)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables
            .len()
            .cmp(&other.syllables.len())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn same_ctx(a: &Arc<GroupSpec>, b: &Arc<GroupSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Word {
    pub fn identity(ctx: &Arc<GroupSpec>) -> Word {
        Word {
            ctx: ctx.clone(),
            syllables: Vec::new(),
        }
    }

    /// `g^exp` for a named generator.
    pub fn generator(ctx: &Arc<GroupSpec>, name: &str, exp: i64) -> Result<Word> {
        let g = ctx.lookup(name).ok_or_else(|| Error::UnknownGenerator {
            name: name.to_string(),
            pos: Default::default(),
        })?;
        Word::from_powers(ctx, [(g, exp)])
    }

    /// The reserved generator `r` raised to `exp`.
    pub fn reserved(ctx: &Arc<GroupSpec>, r: Reserved, exp: i64) -> Result<Word> {
        Word::generator(ctx, r.name(), exp)
    }

    /// Normal form of a product of generator powers.
    pub fn from_powers<I>(ctx: &Arc<GroupSpec>, powers: I) -> Result<Word>
    where
        I: IntoIterator<Item = (GenRef, i64)>,
    {
        let mut r = Reducer::new(ctx, Vec::new());
        for (g, e) in powers {
            r.push(g, e)?;
        }
        Ok(Word {
            ctx: ctx.clone(),
            syllables: r.syllables,
        })
    }

    pub fn ctx(&self) -> &Arc<GroupSpec> {
        &self.ctx
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Generator powers in reading order, one per run.
    pub fn powers(&self) -> Vec<(GenRef, i64)> {
        let mut out = Vec::new();
        for s in &self.syllables {
            match &s.element {
                Element::Power(e) => out.push((
                    GenRef {
                        factor: s.factor,
                        local: 0,
                    },
                    *e,
                )),
                Element::Free(runs) => out.extend(runs.iter().map(|&(local, e)| {
                    (
                        GenRef {
                            factor: s.factor,
                            local,
                        },
                        e,
                    )
                })),
            }
        }
        out
    }

    fn check_ctx(&self, other: &Word) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_ctx(other)?;
        let mut r = Reducer::new(&self.ctx, self.syllables.clone());
        for s in &other.syllables {
            r.push_syllable(s)?;
        }
        Ok(Word {
            ctx: self.ctx.clone(),
            syllables: r.syllables,
        })
    }

    pub fn inverse(&self) -> Word {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| {
                let element = match &s.element {
                    Element::Power(e) => match self.ctx.factor(s.factor).finite_order() {
                        Some(k) => Element::Power(k as i64 - e),
                        None => Element::Power(-e),
                    },
                    Element::Free(runs) => {
                        Element::Free(runs.iter().rev().map(|&(g, e)| (g, -e)).collect())
                    }
                };
                Syllable {
                    factor: s.factor,
                    element,
                }
            })
            .collect();
        Word {
            ctx: self.ctx.clone(),
            syllables,
        }
    }

    /// `self^n` by repeated squaring; negative `n` uses the inverse.
    pub fn pow(&self, n: i64) -> Result<Word> {
        if n == i64::MIN {
            return Err(Error::ExponentOverflow);
        }
        // A single cyclic syllable is common and cheap to handle exactly.
        if let [Syllable {
            factor,
            element: Element::Power(e),
        }] = self.syllables.as_slice()
        {
            let g = GenRef {
                factor: *factor,
                local: 0,
            };
            let exp = match self.ctx.factor(*factor).finite_order() {
                Some(k) => ((*e as i128 * n as i128).rem_euclid(k as i128)) as i64,
                None => mul_exp(*e, n)?,
            };
            return Word::from_powers(&self.ctx, [(g, exp)]);
        }
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Word::identity(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sum of exponents over the syllables of one factor.
    pub fn exponent_sum(&self, factor: usize) -> Result<i64> {
        self.syllables
            .iter()
            .filter(|s| s.factor == factor)
            .try_fold(0i64, |acc, s| match &s.element {
                Element::Power(e) => add_exp(acc, *e),
                Element::Free(runs) => runs.iter().try_fold(acc, |a, &(_, e)| add_exp(a, e)),
            })
    }

    /// Total exponent of `t`; a homomorphism to `Z`.
    pub fn t_exponent_sum(&self) -> Result<i64> {
        let t = self
            .ctx
            .reserved_factor(Reserved::T)
            .ok_or(Error::NoTFactor)?;
        self.exponent_sum(t)
    }

    pub fn contains_factor(&self, factor: usize) -> bool {
        self.syllables.iter().any(|s| s.factor == factor)
    }

    pub fn contains_reserved(&self, r: Reserved) -> bool {
        self.ctx
            .reserved_factor(r)
            .is_some_and(|f| self.contains_factor(f))
    }

    /// True when every syllable belongs to a base factor.
    pub fn is_base(&self) -> bool {
        self.syllables
            .iter()
            .all(|s| !self.ctx.is_reserved_factor(s.factor))
    }

    /// The exponent `k` if the word is `g^k` for the cyclic factor `factor`
    /// (`Some(0)` for the identity).
    pub fn pure_power_of(&self, factor: usize) -> Option<i64> {
        match self.syllables.as_slice() {
            [] => Some(0),
            [Syllable {
                factor: f,
                element: Element::Power(e),
            }] if *f == factor => Some(*e),
            _ => None,
        }
    }

    /// Word order with a context check.
    pub fn compare(&self, other: &Word) -> Result<Ordering> {
        self.check_ctx(other)?;
        Ok(self.cmp(other))
    }

    pub(crate) fn from_parts(ctx: Arc<GroupSpec>, syllables: Vec<Syllable>) -> Word {
        Word { ctx, syllables }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.powers().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.ctx.generator_name(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FactorSpec;

    fn ctx() -> Arc<GroupSpec> {
        GroupSpec::new(
            vec![
                FactorSpec::FreeGroup(vec!["g1".into(), "g2".into()]),
                FactorSpec::FiniteCyclic {
                    name: "a".into(),
                    order: 3,
                },
                FactorSpec::IntegerCyclic("g".into()),
            ],
            &[Reserved::T],
        )
        .unwrap()
    }

    fn w(c: &Arc<GroupSpec>, ps: &[(&str, i64)]) -> Word {
        Word::from_powers(c, ps.iter().map(|(n, e)| (c.lookup(n).unwrap(), *e))).unwrap()
    }

    #[test]
    fn free_factor_is_one_syllable() {
        let c = ctx();
        let x = w(&c, &[("g1", 1), ("g2", -1), ("t", 1), ("g2", 1)]);
        assert_eq!(x.syllable_count(), 3);
        assert_eq!(x.powers().len(), 4);
        assert_eq!(x.to_string(), "g1*g2^-1*t*g2");
    }

    #[test]
    fn multiply_examples() {
        let c = ctx();
        let t = w(&c, &[("t", 1)]);
        assert!(t.multiply(&t.inverse()).unwrap().is_identity());
        let a = w(&c, &[("g", 1), ("t", 1)]);
        let b = w(&c, &[("t", -1), ("g", 1)]);
        assert_eq!(a.multiply(&b).unwrap(), w(&c, &[("g", 2)]));
        let g1 = w(&c, &[("g1", 1)]);
        let g2 = w(&c, &[("g2", 1)]);
        assert_eq!(g1.multiply(&g2).unwrap().to_string(), "g1*g2");
    }

    #[test]
    fn finite_cyclic_wraps() {
        let c = ctx();
        assert_eq!(w(&c, &[("a", 5)]).to_string(), "a^2");
        assert!(w(&c, &[("a", 3)]).is_identity());
        assert_eq!(w(&c, &[("a", -1)]).to_string(), "a^2");
        assert_eq!(w(&c, &[("a", 2)]).inverse().to_string(), "a");
        assert_eq!(w(&c, &[("a", 2)]).pow(5).unwrap().to_string(), "a");
    }

    #[test]
    fn inverse_examples() {
        let c = ctx();
        let x = w(&c, &[("g1", 1), ("g2", -1), ("t", 1), ("g2", 1)]);
        assert_eq!(x.inverse().to_string(), "g2^-1*t^-1*g2*g1^-1");
        assert!(Word::identity(&c).inverse().is_identity());
        assert_eq!(w(&c, &[("t", 3)]).inverse().to_string(), "t^-3");
    }

    #[test]
    fn t_exponent_sum_examples() {
        let c = ctx();
        assert_eq!(
            w(&c, &[("g", 2), ("t", 1), ("g", -1), ("t", -3)])
                .t_exponent_sum()
                .unwrap(),
            -2
        );
        assert_eq!(w(&c, &[("g1", 4)]).t_exponent_sum().unwrap(), 0);
        assert_eq!(w(&c, &[("t", 7)]).t_exponent_sum().unwrap(), 7);
        let no_t = GroupSpec::new(vec![FactorSpec::IntegerCyclic("g".into())], &[]).unwrap();
        assert_eq!(
            Word::identity(&no_t).t_exponent_sum(),
            Err(Error::NoTFactor)
        );
    }

    #[test]
    fn compare_examples() {
        let c = ctx();
        let one = Word::identity(&c);
        let t = w(&c, &[("t", 1)]);
        let t2 = w(&c, &[("t", 2)]);
        let tm1 = w(&c, &[("t", -1)]);
        assert_eq!(one.compare(&t).unwrap(), Ordering::Less);
        assert_eq!(t.compare(&t2).unwrap(), Ordering::Less);
        assert_eq!(t.compare(&tm1).unwrap(), Ordering::Less);
        assert_eq!(tm1.compare(&t2).unwrap(), Ordering::Less);
        assert_eq!(t.compare(&t).unwrap(), Ordering::Equal);
        // base factors come before t
        assert_eq!(w(&c, &[("g", 9)]).compare(&t).unwrap(), Ordering::Less);
    }

    #[test]
    fn context_mismatch() {
        let c = ctx();
        let other = GroupSpec::new(vec![], &[Reserved::T]).unwrap();
        let a = Word::identity(&c);
        let b = Word::identity(&other);
        assert_eq!(a.multiply(&b), Err(Error::ContextMismatch));
        assert_eq!(a.compare(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn overflow_is_reported() {
        let c = ctx();
        let big = w(&c, &[("t", i64::MAX)]);
        assert_eq!(big.multiply(&big), Err(Error::ExponentOverflow));
        assert_eq!(big.pow(2), Err(Error::ExponentOverflow));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let c = ctx();
        let x = w(&c, &[("g1", 1), ("t", 1), ("g2", -1)]);
        let mut acc = Word::identity(&c);
        for n in 0..6 {
            assert_eq!(x.pow(n).unwrap(), acc);
            assert_eq!(x.pow(-n).unwrap(), acc.inverse());
            acc = acc.multiply(&x).unwrap();
        }
    }
}
