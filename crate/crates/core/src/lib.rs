//! Exact counts of conjugacy classes of finite-order elements in the five
//! exceptional simply-connected complex Lie groups.

pub mod eigenposet;
pub mod engine;
pub mod error;
pub mod exactlin;
pub mod golden;
pub mod oracle;
pub mod ordercount;
pub mod quasipoly;
pub mod rootdata;
pub mod verify;
pub mod weylgroup;

pub use error::{Error, Result};
