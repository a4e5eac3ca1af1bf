pub mod adjoint;
pub mod detrep;
pub mod error;
pub mod exactalg;
pub mod io;
pub mod plane;
pub mod polycon;

pub use error::{Error, Result};
