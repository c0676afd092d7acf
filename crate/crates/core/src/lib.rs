pub mod catalog;
pub mod feasibility;
pub mod fpgroup;
pub mod invariants;
pub mod mcg;
pub mod surface;
pub mod word;
