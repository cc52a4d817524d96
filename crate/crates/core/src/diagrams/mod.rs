//! Pairings, permutations, crossing statistics, connected components and
//! exhaustive enumeration of crossing histograms.

mod components;
mod enumerate;
mod pairing;

pub use components::{decompose, is_connected, is_noncrossing, Component, Decomposition};
pub use enumerate::{
    enumerate_histogram, for_each_pairing, CrossingHistogram, Enumerator, PairingFamily,
    ALL_PAIRINGS_CEILING, PERMUTATION_CEILING,
};
pub use pairing::{
    blocks_cross, crossing_number, directed_crossing_number, pairing_to_permutation,
    permutation_to_pairing, Lexicographic, Pairing, Permutation,
};
