//! Defining graphs of Artin groups, their 2-complete Artin complexes, and
//! bounded certificates for systolicity, weak malnormality and acylindricity.

pub mod complex;
pub mod criteria;
pub mod finite_type;
pub mod graph;
pub mod io;
pub mod report;
pub mod words;

#[cfg(test)]
mod testing;

pub use graph::{ComponentPartition, DefiningGraph, GenSet, GeneratorId, GraphError};
pub use report::{CertificateReport, Verdict, Witness};
pub use words::{OracleMode, Word, WordOracle};
