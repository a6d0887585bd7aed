pub mod characters;
pub mod closedform;
pub mod code;
pub mod cyclotomy;
pub mod field;
pub mod ghw;
pub mod linalg;
mod par;
pub mod subspace;
