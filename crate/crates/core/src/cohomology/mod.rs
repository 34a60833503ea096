//! Rokhlin towers, fiberwise conjugation and the simple cocycles that
//! certify recurrence.

mod conjugator;
mod simple;
mod tower;
mod trivialize;

pub use conjugator::{conjugate, FiberConjugator};
pub use simple::{certify_recurrence, certify_recurrence_within, simple_cocycle, RecurrenceCertificate, SimplePartition};
pub use tower::{build_tower, RokhlinTower};
pub use trivialize::{recurrentize, trivialize_on_tower, Recurrentized, Trivialization};
