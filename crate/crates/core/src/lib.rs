pub mod arbreal;
pub mod cli;
pub mod engine;
pub mod exactnum;
pub mod expr;
pub mod seriesdsl;
