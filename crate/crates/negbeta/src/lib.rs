#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod numeric;
pub mod expansion;
pub mod order;
pub mod codes;
pub mod gaps;
pub mod measure;
