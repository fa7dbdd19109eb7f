pub mod error;
pub mod linalg;
pub mod padic;
pub mod cyclotomic;
pub mod iwasawa;
pub mod logmatrix;
pub mod block;
pub mod growth;
pub mod gen;
pub mod config;
pub mod report;
pub mod runner;
