//! Catalog, theorem verification, corpus runs and the command line.

pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod report;
pub mod theorems;
