#![no_std]
extern crate alloc;

pub mod bicrossed;
pub mod cohomology;
pub mod continuous;
pub mod cyclotomic;
pub mod fixtures;
pub mod group;
pub mod intmat;
pub mod matched;
pub mod operator;
pub mod phase;
pub mod quadrature;
