pub mod factor;
pub mod field;
pub mod poly;

pub use factor::{factor, is_irreducible, qth_root_const, roots, squarefree, Factorization};
pub use field::{ConstField, Fe};
pub use poly::Poly;
