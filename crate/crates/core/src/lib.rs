//! Exact finite computation with pre-special groups.
//!
//! A pre-special group (PSG) is a multiplicative group of exponent two with a
//! distinguished element -1 and binary value sets `D(1, a)` describing which
//! elements the form <1, a> represents. This crate builds, for a finite PSG
//! given by its value sets, the associated Galois group `Gal(G) = W(B)/V(B)`
//! where `W(B)` is the C-free pro-2-group on a basis of `G` and `V(B)` is the
//! annihilator of the degree-2 k-theory relation module, and makes the
//! structure theory of that construction executable: orderings as involution
//! cosets, formally-real and Pythagorean criteria, Z4/D4 quotient detection,
//! standardness, functoriality, and low-degree cohomology with trivial
//! mod-2 coefficients.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `sg-galois` crate.
//!
//! ```
//! use sg_core::galois::GalGroup;
//! use sg_core::psg::catalog;
//!
//! let fan = catalog("FAN2").unwrap();
//! assert!(fan.validate().is_valid());
//!
//! let gal = GalGroup::new(&fan);
//! assert_eq!(gal.order().unwrap(), 8);
//! assert_eq!(gal.fingerprint_string(), "D4");
//! assert_eq!(gal.orderings().unwrap(), fan.orderings());
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohomology;
pub mod error;
pub mod galois;
pub mod gf2;
pub mod ktheory;
pub mod psg;
pub mod wgroup;

pub use error::Error;
pub use gf2::{BitVec, Gf2Matrix, Gf2Subspace};
pub use psg::{Character, Psg, PsgElement, PsgMorphism};
pub use wgroup::WElement;
