//! States, measurements, channels and entropies.

mod channel;
mod entropy;
mod measure;
mod povm;
pub mod random;
mod state;

pub use channel::KrausChannel;
pub use entropy::{
    classical_mutual_information, conditional_entropy, mutual_information, relative_entropy,
    shannon_entropy, von_neumann_entropy,
};
pub use measure::{measurement_channel, post_measurement_state, purify, register_coherence};
pub use povm::Povm;
pub use random::RandomSource;
pub use state::{fourier_matrix, DensityMatrix, OrthonormalBasis};
