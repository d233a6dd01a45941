#![allow(dead_code)]

use std::sync::Arc;

use grasper_core::{FactorSpec, GroupSpec, Mode, ReductionContext, Reserved, RingElement, Word};
use proptest::prelude::*;

pub fn zg() -> ReductionContext {
    ReductionContext::surgered(vec![FactorSpec::IntegerCyclic("g".into())]).unwrap()
}

pub fn f2_spec(reserved: &[Reserved]) -> Arc<GroupSpec> {
    GroupSpec::new(
        vec![FactorSpec::FreeGroup(vec!["g1".into(), "g2".into()])],
        reserved,
    )
    .unwrap()
}

pub fn f2() -> ReductionContext {
    ReductionContext::new(&f2_spec(&[Reserved::T]), Mode::Full).unwrap()
}

/// `Z/3 * F<a,b> * <t>`: every factor kind at once.
pub fn mixed() -> Arc<GroupSpec> {
    GroupSpec::new(
        vec![
            FactorSpec::FiniteCyclic {
                name: "c".into(),
                order: 3,
            },
            FactorSpec::FreeGroup(vec!["a".into(), "b".into()]),
        ],
        &[Reserved::T],
    )
    .unwrap()
}

pub fn word(ctx: Arc<GroupSpec>, max_len: usize) -> impl Strategy<Value = Word> + Clone {
    let names: Vec<String> = ctx.generator_names().map(String::from).collect();
    let n = names.len();
    prop::collection::vec((0..n, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len).prop_map(
        move |letters| {
            letters
                .into_iter()
                .fold(Word::identity(&ctx), |acc, (i, e)| {
                    acc.multiply(&Word::generator(&ctx, &names[i], e).unwrap())
                        .unwrap()
                })
        },
    )
}

pub fn ring(ctx: Arc<GroupSpec>, max_terms: usize) -> impl Strategy<Value = RingElement> {
    let c = ctx.clone();
    prop::collection::vec((-4i64..=4, word(ctx, 5)), 0..=max_terms)
        .prop_map(move |terms| RingElement::from_terms(&c, terms).unwrap())
}

/// Bar word over `x` and `y` only.
pub fn xy_bar_word(ctx: Arc<GroupSpec>, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (any::<bool>(), prop_oneof![-4i64..=-1, 1i64..=4]),
        1..=max_len,
    )
    .prop_map(move |letters| {
        letters
            .into_iter()
            .fold(Word::identity(&ctx), |acc, (is_y, e)| {
                let r = if is_y { Reserved::Y } else { Reserved::X };
                acc.multiply(&Word::reserved(&ctx, r, e).unwrap()).unwrap()
            })
    })
}
