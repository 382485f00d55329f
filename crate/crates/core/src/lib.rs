//! Exact construction and verification of the SU(2)-equivariant
//! Clebsch-Gordan isometries `α_{m,n,h}` and the extreme covariant channels
//! `Φ_{m,n,h}(A) = Tr_{P_n}(α A α*)` they induce.

pub mod scalar;
pub mod space;
pub mod clebsch;
pub mod channels;
pub mod covariant;
pub mod io;
