//! Free-group words, integral group rings and Fox calculus.

mod calculus;
mod group_ring;
mod presentation;
mod word;

pub use calculus::fox_derivative;
pub use group_ring::GroupRingElement;
pub use presentation::Presentation;
pub use word::Word;
