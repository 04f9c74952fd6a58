pub mod arith;
pub mod decomp;
pub mod exec;
pub mod f2;
pub mod local;
pub mod tower;
