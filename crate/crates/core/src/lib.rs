pub mod cli;
pub mod compile;
pub mod corpus;
pub mod empty;
pub mod env;
pub mod kernel;
pub mod perm;
pub mod search;
pub mod signature;
pub mod syntax;
pub mod term;
