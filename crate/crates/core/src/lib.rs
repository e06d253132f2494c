pub mod algebra;
pub mod error;
pub mod field;
pub mod linalg;
pub mod decompose;
pub mod poly;
pub mod builder;
pub mod module;
pub mod tilting;
pub mod dimension;
