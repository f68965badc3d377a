pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod canon;
pub mod chromatic;
pub mod brooks;
pub mod kempe;
pub mod harness;
