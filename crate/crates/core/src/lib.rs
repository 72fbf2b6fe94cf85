//! Topological complexity of motion planning: exact zero-divisor cup-length
//! lower bounds, a catalog of configuration spaces with their bounds, and
//! executable minimal motion planners for circles, spheres, tori and robot
//! arms together with a seeded verification harness.

pub mod algebra;
pub mod catalog;
pub mod planner;
pub mod verify;
