//! Command-line companion to the kernel: a presentation DSL, lowering
//! onto kernel structures, table emitters, and frozen golden tables.

pub mod dsl;
pub mod emit;
pub mod golden;
pub mod lower;
