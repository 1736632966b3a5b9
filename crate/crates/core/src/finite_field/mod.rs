//! Arithmetic over the prime field F_p and its extensions GF(p^s).
//!
//! Extension elements are packed integers: the polynomial-basis coefficient of
//! x^i is the i-th base-p digit (x^0 least significant). For p = 2 this is the
//! familiar bit pattern, e.g. `0x011` is x^4 + 1.

mod extension;
mod prime;

pub use extension::{ExtElement, ExtField};
pub use prime::{is_prime, FpElement, FpOp, PrimeField};
