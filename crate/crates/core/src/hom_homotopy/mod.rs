//! Morphisms from free crossed resolutions, homotopies between them, and
//! cohomology with local coefficients by linear algebra over `Z/e`.

pub mod zmod;
pub mod cohomology;

pub use cohomology::{cohomology_group, CohomologyClass, CohomologyGroup, CyclicCoords};
pub mod morphisms;

pub use morphisms::{apply_homotopy, coefficient_data, enumerate_morphisms, homotopy_classes, is_homotopic, HomotopyAssignment};
