pub mod braid;
pub mod coeff;
pub mod combinators;
mod memo;
pub mod ring;
pub mod scalar;
pub mod verify;
pub mod local_rep;
pub mod matrix;
pub mod tensor;
