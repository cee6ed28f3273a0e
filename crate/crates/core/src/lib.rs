//! Exact product-set computations in finite and free groups.
//!
//! The crate builds concrete groups ([`group`]), computes products, powers
//! and inverses of finite subsets ([`setops`]), finds magnification ratios
//! ([`magnification`]) and Ruzsa coverings ([`covering`]), checks product-set
//! inequalities on concrete instances ([`verify`]) and runs randomized
//! campaigns over them ([`harness`]).
//!
//! ```
//! use setcalc::group::Group;
//! use setcalc::setops::{power, GSet};
//!
//! let g = Group::parse("zn:20").unwrap();
//! let b = GSet::parse(&g, "{0,1}").unwrap();
//! assert_eq!(power(&b, 3).unwrap().len(), 4);
//! ```

pub mod covering;
pub mod error;
pub mod flow;
pub mod group;
pub mod harness;
pub mod magnification;
pub mod rational;
pub mod setops;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Element, Group, GroupSpec};
pub use rational::Rational;
pub use setops::GSet;
