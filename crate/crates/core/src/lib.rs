pub mod abelian;
pub mod catalogue;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod intertwiner;
pub mod io;
pub mod linalg;
pub mod modlin;
pub mod phase;
pub mod projrep;
pub mod two_group;
pub mod two_rep;
pub mod zoo;
