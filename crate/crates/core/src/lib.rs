//! Exact valuations, divisors and Kummer towers over rational function
//! fields, together with an engine that builds finite stages of a tower
//! construction and checks its invariants.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod construction;
pub mod lemmas;

pub use error::{Error, Result};
pub mod place;
pub mod ratfunc;
pub mod ruspec;
pub mod theory;
pub mod tower;

pub use place::{divisor_of, ord_at, weak_approx, Divisor, Place};
pub use ratfunc::RatFunc;
pub use ruspec::{order_of_r_at, OrderCase, RuSpec};
pub use tower::{Tower, TowerElement, TowerPlace};
