pub mod ar;
pub mod catalog;
pub mod decompose;
pub mod error;
pub mod ids;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod rep;
pub mod seq;
pub mod tilt;
pub mod verify;

pub use error::{Error, Result};
