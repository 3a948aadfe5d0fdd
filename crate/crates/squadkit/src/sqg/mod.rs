//! Square groups and quadratic pair modules, the restricted tensor product
//! with Z_nil[E] in central-extension normal form, biexact pairings with the
//! compatibility-cell verification, and the induced K-theory products.

mod pairing;
mod square;
mod tensor;

pub use pairing::{BiexactPairing, KProducts, PairingError, PairingFile};
pub use square::{check_square_group_laws, sg_from_squad, Sg1, SqgError, SquareGroup, ZeroFree, Znil};
pub use tensor::{TensorElem, TensorZnil, ZnilSide};
