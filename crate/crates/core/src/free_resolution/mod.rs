//! Free crossed resolutions given by bases and formal boundaries, their
//! evaluation into finite crossed complexes, and lifting through trivial
//! fibrations.

pub mod evaluate;
pub mod formal;
pub mod lifting;

pub use evaluate::{boundary_composite_failure, check_morphism, eval_boundary, eval_crossed, eval_module, eval_word, induced_theta, target_boundary, MorphismAssignment, UNSET};
pub use formal::{
    cyclic_resolution, disc_sphere, standard_resolution, tuple_index, tuple_of, DiscSphere, FormalCrossedElement, FormalModuleSum, FormalWord,
    FreeCrsPresentation, MAX_DEPTH,
};
pub use lifting::{lift_through_trivial_fibration, rlp_check, rlp_profile, RlpReport, Square};
