//! Grasper calculus on free products: words, group rings, the grasper
//! quotient and normal forms of barbell, theta and self-referential
//! diffeomorphisms.

pub mod barbell;
pub mod diffeo;
pub mod error;
pub mod grasper;
pub mod group;
pub mod quotient;
pub mod ring;
pub mod syntax;
pub mod word;

pub use barbell::{
    barbell_class, barbell_sref_argument, barword_factorize, dual_bar_word, simple_null_class,
    BarFactor, BarWord, BarbellSpec,
};
pub use diffeo::{
    diffeo_equal, eval_diffeo_expr, normal_forms_equal, s4_ps_normal_form, Certificate, DiffeoExpr,
    DiffeoNormalForm, SrefVariant,
};
pub use error::{Error, Pos, Result};
pub use grasper::{sref_class, theta_class, ThetaData};
pub use group::{FactorSpec, GenRef, GroupSpec, Reserved};
pub use quotient::{GrasperClass, Mode, ReductionContext};
pub use ring::{GeneratorMap, RingElement, Sign};
pub use syntax::{parse_ring, parse_word};
pub use word::{Element, Syllable, Word};
