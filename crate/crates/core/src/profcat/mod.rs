//! Finite categories, profunctors between them, and coend composition.

mod bimodule;
mod category;
pub mod json;
mod keyprop;
mod pcat;
mod profunctor;

use thiserror::Error;

pub use bimodule::{functor_to_monad, monad_to_functor, BimoduleMonad};
pub use category::{random_category, Cat, FiniteCategory, FiniteFunctor, Morphism};
pub use keyprop::{kleisli_unit_mult, verify_keyprop};
pub use pcat::{p_category, p_on_prof, PCategory};
pub use profunctor::{compose_prof, prof_iso, random_profunctor, FiniteProfunctor, ISO_SEARCH_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfError {
    #[error("not a category: {0}")]
    Category(String),
    #[error("not a functor: {0}")]
    Functor(String),
    #[error("not a profunctor: {0}")]
    Profunctor(String),
    #[error("not a monad: {0}")]
    Monad(String),
    #[error("mismatched categories: {0}")]
    Mismatch(String),
    #[error("too large: {0}")]
    TooLarge(String),
}
