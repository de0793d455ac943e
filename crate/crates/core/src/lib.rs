pub mod crystal;
pub mod lattice;
pub mod symtensor;
pub mod energy;
pub mod demazure;
pub mod chars;
pub mod cli;
