//! Cohit bases ("hit problem" minimal generators) of `P_n = F_2[u_1..u_n]`
//! over the mod-2 Steenrod algebra, with weight-vector subquotients, Kameko
//! maps, symmetric and general linear group invariants, and the divided-power
//! dual side.

pub mod data;
pub mod dual;
pub mod error;
pub mod gf2;
pub mod groups;
pub mod hit;
pub mod kameko;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod session;
pub mod steenrod;

pub use error::{Error, Result};
