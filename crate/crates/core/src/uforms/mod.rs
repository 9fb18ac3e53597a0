//! The universal differential graded algebra `Ω^u_•(A)` in the word model
//! `Ω^u_n(A) ≅ A ⊗ Ā^{⊗n}`, its abelianization and de Rham homology.

mod ab;
mod cache;
mod form;
mod graded;
mod hom;
mod word;

pub use ab::{
    abelianization, all_pairs_commutator_span, de_rham_homology, descended_differential, is_exact_in_ab, project_ab,
    AbClass, AbProjection, DescendedDifferential, Homology,
};
pub(crate) use cache::FormCache;
pub use form::UForm;
pub use graded::GradedForm;
pub use hom::extend_hom;
pub use word::{dimension, reduced_pow, Word};
