pub mod arith;
pub mod cark;
pub mod error;
pub mod geometry;
pub mod interface;
pub mod modular_group;
pub mod quadratic_forms;
pub mod reduction;
pub mod representation;
#[cfg(feature = "service")]
pub mod service;
pub mod sunburst;
