//! Minimal dense neural-network substrate: forward/backward passes, Adam,
//! and a finite-difference gradient checker.

mod activation;
mod adam;
mod gradcheck;
mod network;

pub use activation::Activation;
pub use adam::{AdamParams, AdamState};
pub use gradcheck::grad_check;
pub use network::{DenseLayer, DenseNetwork, Gradients, LayerGrads, Tape};
