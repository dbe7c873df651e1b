pub mod cli;
pub mod derivation;
pub mod genset;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod poset;
