//! Free products of simple base groups.
//!
//! A [`GroupSpec`] is an ordered list of factors: the declared base factors
//! (modelling the fundamental group of the ambient 4-manifold) followed by the
//! reserved infinite cyclic factors `t`, `x`, `y` when present. Factor order
//! is also the primary sort key used when comparing words.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// One factor of a free product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorSpec {
    Trivial,
    IntegerCyclic(String),
    FiniteCyclic { name: String, order: u64 },
    FreeGroup(Vec<String>),
}

impl FactorSpec {
    pub fn generator_names(&self) -> &[String] {
        match self {
            FactorSpec::Trivial => &[],
            FactorSpec::IntegerCyclic(name) => std::slice::from_ref(name),
            FactorSpec::FiniteCyclic { name, .. } => std::slice::from_ref(name),
            FactorSpec::FreeGroup(names) => names,
        }
    }

    /// Order of a finite cyclic factor, `None` otherwise.
    pub fn finite_order(&self) -> Option<u64> {
        match self {
            FactorSpec::FiniteCyclic { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, FactorSpec::FreeGroup(_))
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Trivial => write!(f, "1"),
            FactorSpec::IntegerCyclic(n) => write!(f, "Z<{n}>"),
            FactorSpec::FiniteCyclic { name, order } => write!(f, "Z/{order}<{name}>"),
            FactorSpec::FreeGroup(names) => write!(f, "F<{}>", names.join(",")),
        }
    }
}

/// The distinguished infinite cyclic generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reserved {
    /// Meridian of the surgery sphere; the basepoint class of the circle.
    T,
    /// Meridian of the first barbell cuff.
    X,
    /// Meridian of the second barbell cuff.
    Y,
}

impl Reserved {
    pub const ALL: [Reserved; 3] = [Reserved::T, Reserved::X, Reserved::Y];

    pub fn name(self) -> &'static str {
        match self {
            Reserved::T => "t",
            Reserved::X => "x",
            Reserved::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Reserved> {
        match name {
            "t" => Some(Reserved::T),
            "x" => Some(Reserved::X),
            "y" => Some(Reserved::Y),
            _ => None,
        }
    }
}

/// Location of a generator: factor index and index inside that factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenRef {
    pub factor: usize,
    pub local: usize,
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    factors: Vec<FactorSpec>,
    base_len: usize,
    reserved: [Option<usize>; 3],
    lookup: HashMap<String, GenRef>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.base_len == other.base_len
    }
}

impl Eq for GroupSpec {}

impl GroupSpec {
    /// Builds `base[0] * ... * base[n-1] * <t> * <x> * <y>`, keeping only the
    /// reserved factors listed in `reserved`.
    pub fn new(base: Vec<FactorSpec>, reserved: &[Reserved]) -> Result<Arc<GroupSpec>> {
        let mut lookup = HashMap::new();
        for (i, factor) in base.iter().enumerate() {
            match factor {
                FactorSpec::FiniteCyclic { order, .. }
                    if *order < 2 || *order > i64::MAX as u64 =>
                {
                    return Err(Error::InvalidGroupSpec(format!(
                        "finite cyclic factor needs order in 2..=i64::MAX, got {order}"
                    )))
                }
                FactorSpec::FreeGroup(names) if names.is_empty() => {
                    return Err(Error::InvalidGroupSpec(
                        "free factor needs at least one generator".into(),
                    ))
                }
                _ => {}
            }
            for (local, name) in factor.generator_names().iter().enumerate() {
                if !valid_identifier(name) {
                    return Err(Error::InvalidGroupSpec(format!(
                        "`{name}` is not a valid generator name"
                    )));
                }
                if Reserved::from_name(name).is_some() {
                    return Err(Error::InvalidGroupSpec(format!("`{name}` is reserved")));
                }
                if lookup
                    .insert(name.clone(), GenRef { factor: i, local })
                    .is_some()
                {
                    return Err(Error::InvalidGroupSpec(format!(
                        "generator `{name}` declared twice"
                    )));
                }
            }
        }
        let base_len = base.len();
        let mut factors = base;
        let mut slots = [None; 3];
        for r in Reserved::ALL {
            if reserved.contains(&r) {
                slots[r as usize] = Some(factors.len());
                lookup.insert(
                    r.name().to_string(),
                    GenRef {
                        factor: factors.len(),
                        local: 0,
                    },
                );
                factors.push(FactorSpec::IntegerCyclic(r.name().to_string()));
            }
        }
        Ok(Arc::new(GroupSpec {
            factors,
            base_len,
            reserved: slots,
            lookup,
        }))
    }

    /// Same base factors, different set of reserved factors.
    pub fn with_reserved(&self, reserved: &[Reserved]) -> Arc<GroupSpec> {
        GroupSpec::new(self.base_factors().to_vec(), reserved)
            .expect("base factors were validated already")
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn factor(&self, index: usize) -> &FactorSpec {
        &self.factors[index]
    }

    pub fn base_factors(&self) -> &[FactorSpec] {
        &self.factors[..self.base_len]
    }

    /// Factor index of a reserved generator, if present.
    pub fn reserved_factor(&self, r: Reserved) -> Option<usize> {
        self.reserved[r as usize]
    }

    pub fn has(&self, r: Reserved) -> bool {
        self.reserved_factor(r).is_some()
    }

    pub fn is_reserved_factor(&self, factor: usize) -> bool {
        factor >= self.base_len
    }

    /// Which reserved generator lives at `factor`, if any.
    pub fn reserved_at(&self, factor: usize) -> Option<Reserved> {
        Reserved::ALL
            .into_iter()
            .find(|r| self.reserved_factor(*r) == Some(factor))
    }

    pub fn lookup(&self, name: &str) -> Option<GenRef> {
        self.lookup.get(name).copied()
    }

    pub fn generator_name(&self, g: GenRef) -> &str {
        &self.factors[g.factor].generator_names()[g.local]
    }

    /// All generator names in factor order.
    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.factors
            .iter()
            .flat_map(|f| f.generator_names().iter().map(String::as_str))
    }

    /// True when every base factor is trivial (the 4-sphere setting).
    pub fn base_is_trivial(&self) -> bool {
        self.base_factors()
            .iter()
            .all(|f| matches!(f, FactorSpec::Trivial))
    }

    /// Human-readable name of the base group, e.g. `F<g1,g2> * Z/3<a>`.
    pub fn describe_base(&self) -> String {
        let parts: Vec<String> = self
            .base_factors()
            .iter()
            .filter(|f| !matches!(f, FactorSpec::Trivial))
            .map(|f| f.to_string())
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
