//! Haar digraphs over finite groups.
//!
//! The crate builds Cayley and Haar digraphs over explicitly tabulated
//! groups, computes full digraph automorphism groups with a partition
//! refinement search, decides the DRR/TRR/HDR/HGR properties, and
//! synthesizes certified Haar digraphical representations.

pub mod group;
pub mod digraph;
pub mod perm;
pub mod aut;
pub mod representations;
pub mod synthesis;
