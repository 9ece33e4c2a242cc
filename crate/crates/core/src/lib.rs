pub mod scalars;
pub mod linalg;
pub mod algebra;
pub mod graded;
pub mod hopf;
pub mod ayd;
pub mod decompose;
pub mod dsl;
pub mod report;
