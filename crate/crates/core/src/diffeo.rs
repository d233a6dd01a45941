//! Diffeomorphism expressions and their normal forms under `ps∘r̃`.
//!
//! `ps∘r̃` is a group homomorphism, so composition adds classes and inversion
//! negates them. An inverted barbell whose bar word only uses `x` and `y` may
//! also be evaluated through the dual bar word; every such alternative is kept
//! as a separate route. Rotation terms map to zero under `ps` and have no
//! node here.

use std::fmt;

use crate::barbell::{barbell_class, dual_bar_word, BarbellSpec};
use crate::error::{Error, Result};
use crate::grasper::{sref_class, theta_class, ThetaData};
use crate::quotient::{GrasperClass, ReductionContext};
use crate::ring::RingElement;

/// Upper bound on the number of routes carried through a composition.
const MAX_ROUTES: usize = 32;

/// The four self-referential families. They are isotopic, so they share one
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SrefVariant {
    R,
    L,
    RR,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffeoExpr {
    Identity,
    Wat(ThetaData),
    Bg(BarbellSpec),
    Sref(SrefVariant, RingElement),
    PsR(RingElement),
    Compose(Vec<DiffeoExpr>),
    Inverse(Box<DiffeoExpr>),
    Power(Box<DiffeoExpr>, i64),
}

impl DiffeoExpr {
    pub fn inverse(e: DiffeoExpr) -> DiffeoExpr {
        DiffeoExpr::Inverse(Box::new(e))
    }

    pub fn power(e: DiffeoExpr, n: i64) -> DiffeoExpr {
        DiffeoExpr::Power(Box::new(e), n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffeoNormalForm {
    /// Class along the primary (negation) route.
    pub class: GrasperClass,
    /// Every evaluation route, primary first, without duplicates.
    pub routes: Vec<GrasperClass>,
    pub manifold_tag: String,
    /// Image in `Z/2`, only for the 4-sphere.
    pub s4_scalar: Option<u8>,
}

impl fmt::Display for DiffeoNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s4_scalar {
            Some(s) => write!(f, "{} [mod 2: {}]", self.class, s),
            None => write!(f, "{}", self.class),
        }
    }
}

fn push_route(routes: &mut Vec<GrasperClass>, c: GrasperClass) {
    if routes.len() < MAX_ROUTES && !routes.contains(&c) {
        routes.push(c);
    }
}

fn eval_routes(e: &DiffeoExpr, rctx: &ReductionContext) -> Result<Vec<GrasperClass>> {
    Ok(match e {
        DiffeoExpr::Identity => vec![GrasperClass::zero(rctx)],
        DiffeoExpr::Wat(d) => vec![theta_class(d, rctx)?],
        DiffeoExpr::Bg(spec) => vec![barbell_class(spec, rctx)?],
        DiffeoExpr::Sref(_, xi) => vec![sref_class(xi, rctx)?],
        DiffeoExpr::PsR(xi) => vec![rctx.reduce(xi)?],
        DiffeoExpr::Compose(parts) => {
            let mut acc = vec![GrasperClass::zero(rctx)];
            for p in parts {
                let rs = eval_routes(p, rctx)?;
                let mut next = Vec::new();
                for a in &acc {
                    for r in &rs {
                        push_route(&mut next, a.checked_add(r)?);
                    }
                }
                acc = next;
            }
            acc
        }
        DiffeoExpr::Inverse(inner) => {
            let mut out = Vec::new();
            for r in eval_routes(inner, rctx)? {
                push_route(&mut out, r.checked_neg()?);
            }
            if let DiffeoExpr::Bg(spec) = inner.as_ref() {
                let dualizable =
                    spec.cuff1_unknotted && spec.cuff2_unknotted && spec.bar_word.is_xy_only();
                if dualizable {
                    let dual = BarbellSpec::unknotted(dual_bar_word(&spec.bar_word)?);
                    push_route(&mut out, barbell_class(&dual, rctx)?);
                }
            }
            out
        }
        DiffeoExpr::Power(inner, n) => {
            let base = if *n < 0 {
                eval_routes(&DiffeoExpr::Inverse(inner.clone()), rctx)?
            } else {
                eval_routes(inner, rctx)?
            };
            let mut out = Vec::new();
            for r in base {
                push_route(
                    &mut out,
                    r.scale(
                        n.unsigned_abs()
                            .try_into()
                            .map_err(|_| Error::CoefficientOverflow)?,
                    )?,
                );
            }
            out
        }
    })
}

pub fn eval_diffeo_expr(e: &DiffeoExpr, rctx: &ReductionContext) -> Result<DiffeoNormalForm> {
    let routes = eval_routes(e, rctx)?;
    let class = routes[0].clone();
    let s4_scalar = if rctx.is_s4() {
        let s = s4_ps_normal_form(&class)?;
        for r in &routes[1..] {
            if s4_ps_normal_form(r)? != s {
                return Err(Error::InconsistentRoutes(format!("{class} vs {r}")));
            }
        }
        Some(s)
    } else {
        None
    };
    Ok(DiffeoNormalForm {
        class,
        routes,
        manifold_tag: rctx.label(),
        s4_scalar,
    })
}

/// Image of a 4-sphere class in the quotient by the barbell-symmetry
/// relations. With `sref(tⁱ) = tⁱ - tⁱ⁻¹` and `sref(tⁱ) ≡ i·t` this quotient
/// is `Z/2`, and `tⁱ` maps to `i(i+1)/2 mod 2`.
pub fn s4_ps_normal_form(c: &GrasperClass) -> Result<u8> {
    let rctx = c.rctx();
    if !rctx.is_s4() {
        return Err(Error::NotS4Context);
    }
    let t_factor = rctx
        .ctx()
        .reserved_factor(crate::group::Reserved::T)
        .ok_or(Error::NoTFactor)?;
    let mut acc = 0u8;
    for (rep, coeff) in c.terms() {
        let i = rep
            .pure_power_of(t_factor)
            .expect("4-sphere representatives are powers of t");
        let odd_triangle = matches!(i.rem_euclid(4), 1 | 2);
        if odd_triangle && coeff.rem_euclid(2) == 1 {
            acc ^= 1;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    CertifiedEqual {
        lhs: String,
        rhs: String,
    },
    /// Nothing is claimed: `ps` may identify further classes.
    NotCertified {
        lhs: String,
        rhs: String,
    },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedEqual { .. })
    }
}

pub fn diffeo_equal(
    a: &DiffeoExpr,
    b: &DiffeoExpr,
    rctx: &ReductionContext,
) -> Result<Certificate> {
    let na = eval_diffeo_expr(a, rctx)?;
    let nb = eval_diffeo_expr(b, rctx)?;
    Ok(normal_forms_equal(&na, &nb))
}

pub fn normal_forms_equal(na: &DiffeoNormalForm, nb: &DiffeoNormalForm) -> Certificate {
    let equal = match (na.s4_scalar, nb.s4_scalar) {
        (Some(x), Some(y)) => x == y,
        _ => na.routes.iter().any(|r| nb.routes.contains(r)),
    };
    let (lhs, rhs) = (na.to_string(), nb.to_string());
    if equal {
        Certificate::CertifiedEqual { lhs, rhs }
    } else {
        Certificate::NotCertified { lhs, rhs }
    }
}
