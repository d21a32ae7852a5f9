//! Finite fields, classical groups on vectors, the `Δ` family and the
//! explicit example constructions.

pub mod corpus;
pub mod examples;
pub mod family;
pub mod field;
pub mod space;

pub use family::{
    delta_action, expected_suborbits, rank3_family_predicate, scan_grid, CosetTag, DeltaSpace,
    FamilyContext, FamilyGroup, FamilyPredicate, FamilySpec, ScanRecord, SuborbitModel,
};
pub use field::Field;
pub use space::{linear_group_on_vectors, LinearKind, Semilinear, VectorSpace};
