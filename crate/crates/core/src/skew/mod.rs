//! Skew products over a base automorphism, their cocycles and recurrence sets.

mod product;
mod recurrence;

pub use product::{product_distance, CocycleWalk, SkewProduct};
pub use recurrence::{
    find_recurrence_witness, recurrence_profile, recurrence_profiles, recurrence_set, RecurrenceReport, Witness,
};
