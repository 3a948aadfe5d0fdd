//! Finite Waldhausen category data model, validation, the presentation
//! functor with its relator families, induced morphisms and homotopies, and
//! the K-theory wrappers.

mod category;
mod dstar;

pub use category::{
    CategoryError, CategoryFile, Cofiber, CofiberFile, Coproduct, CoproductFile,
    FiniteWaldhausenCategory, Morphism, MorphismFile, ValidationReport,
};
pub use dstar::{
    check_negative_one, check_tau, d_star, d_star_functor, d_star_homotopy, hopf, k0, k1,
    load_functor, load_transformation, validate_functor, size_oracle_annihilates, tau_candidates, Dstar,
    DstarError, ExactFunctorData, FunctorFile, NaturalWeakEquivalence, RelTag,
    TransformationFile,
};
#[allow(unused_imports)]
pub(crate) use dstar::d_star_unchecked;
