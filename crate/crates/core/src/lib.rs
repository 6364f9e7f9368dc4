//! Exact computations in the Malvenuto-Reutenauer Hopf algebra of permutations and in the
//! Hopf algebra of quasi-symmetric functions.

pub mod config;
pub mod error;
pub mod format;
pub mod hopf;
pub mod linear;
pub mod perm;
pub mod qsym;
pub mod ssym;
pub mod structure;
pub mod subset;
pub mod verify;
pub mod weak_order;

pub use error::{Error, Result};
pub use linear::{Coeff, LinComb};
pub use perm::Permutation;
pub use qsym::{QSymExpansion, QSymTensor};
pub use ssym::{Basis, PermExpansion, TensorExpansion};
pub use subset::{Composition, Subset};
