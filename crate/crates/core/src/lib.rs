pub mod cli;
pub mod field;
pub mod group;
pub mod projline;
pub mod psl2;
pub mod search;
pub mod verifier;
