//! Finite groups, automorphism groups, modules and small-group identification.

pub mod automorphism;
pub mod fingerprint;
pub mod group;
pub mod module;
pub mod presets;

pub use automorphism::{automorphism_group, center, AutData};
pub use fingerprint::{catalogue, group_fingerprint, identify, Fingerprint};
pub use group::{enumerate_homs, FiniteGroup, GroupHom, Quotient, Subgroup};
pub use module::GModule;
pub use presets::{preset_group, Preset, MAX_GROUP_ORDER};
