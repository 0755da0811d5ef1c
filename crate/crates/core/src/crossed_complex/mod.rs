//! Finite crossed complexes, their morphisms, fibrations and exact sequences.

pub mod complex;
pub mod exact;
pub mod groupoid;
pub mod morphism;

pub use complex::{
    aut_crossed_module, aut_crossed_module_with_data, crossed_module, em_complex, normal_subgroup_crossed_module, product,
    twisted_em, CrossedComplex, Level, Subquotient, MAX_DIM,
};
pub use exact::{exact_sequence, fibre_subcomplex, ExactSequenceReport, Exactness, Fibre, SeqMap, Term, TermKind};
pub use groupoid::FiniteGroupoid;
pub use morphism::{coset_covering, em_morphism, to_fundamental_group, xi_zeta_split, CrsMorphism, Verdict, XiZeta};
