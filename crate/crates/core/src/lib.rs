pub mod chains;
pub mod cli;
pub mod em;
pub mod f2;
pub mod models;
pub mod operations;
pub mod relations;
pub mod words;
