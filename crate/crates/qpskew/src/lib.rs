//! Skew group algebras of quivers with potential under an order-2 action.

pub mod algebra;
pub mod cli;
pub mod ginzburg;
pub mod involution;
pub mod linalg;
pub mod skew;
pub mod surface;
pub mod groupoid;
pub mod io;
pub mod reps;
