pub mod classify;
pub mod closedform;
pub mod error;
pub mod exactfield;
pub mod grid;
pub mod identities;
pub mod newton;
pub mod partition;
pub mod perfect;
pub mod sympoly;

pub use classify::{classify_window, Classification};
pub use error::{Error, Result};
pub use exactfield::{ParamPoly, QuadExt, RatFunc, Rational, Scalar, SqrtField, Var};
pub use grid::{Grid, GridFamily, GridSpec, IIIVariant, Window};
pub use partition::{Cell, Partition, ReverseTableau};
pub use perfect::VanishingReport;
pub use sympoly::SymPoly;
