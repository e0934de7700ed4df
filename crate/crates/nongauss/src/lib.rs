//! Quantifying how far fermionic many-body states are from Gaussian (free-fermion)
//! states, and certifying the inequalities that relate non-Gaussianity to the
//! particle-number distribution.
//!
//! The crate is organized around two complementary representations of an
//! `N`-mode fermionic state:
//!
//! * [`fock`] — dense computations on the full `2^N`-dimensional Fock space
//!   (practical for `N <= 14`). These are slow but exact and serve as the
//!   ground-truth oracle for everything else: state vectors, density matrices,
//!   charge distributions, twirling, relative entropy, trace distance.
//! * [`gaussian`] — the `2N x 2N` two-point correlation matrix, the complete
//!   description of a Gaussian state and the "Gaussian shadow" of any state.
//!   Entropies, charge moments, Majorana covariance and thermal-state
//!   construction all run at matrix scale, so hundreds of modes are cheap.
//!
//! On top of these sit:
//!
//! * [`counting`] — full counting statistics of the total charge for Gaussian
//!   states: the determinant generating function, its eigenvalue form, exact
//!   charge distributions by lattice convolution and by discrete Fourier
//!   inversion, and a Bernstein-type concentration bound on the tails.
//! * [`measures`] — the resource monotones: relative entropy of
//!   non-Gaussianity, particle-number Shannon entropy, and U(1) asymmetry.
//! * [`bounds`] — evaluators for the inequalities connecting the above
//!   (variance and Shannon-entropy caps for Gaussian states, a Pinsker-based
//!   bound, anti-concentration tail bounds, and the concentration-based lower
//!   bound on non-Gaussianity), each producing a [`bounds::BoundReport`].
//! * [`kink`] — a closed-form family of kink superpositions whose
//!   non-Gaussianity, asymmetry and correlation traces are known analytically,
//!   usable up to hundreds of modes.
//! * [`cli`] — reproducible experiment drivers behind the `nongauss` binary.
//!
//! Conventions used throughout:
//!
//! * all entropies and logarithms are in nats;
//! * mode `j` (1-based) maps to bit `j - 1` of a basis-state bitmask, so the
//!   particle number of a basis state is the popcount of its mask;
//! * operator signs follow from ordering creation operators by increasing
//!   mode index.
//!
//! ## Quick start
//!
//! The non-Gaussianity of a uniform superposition of four domain walls,
//! computed at matrix scale and verified against brute force on the
//! 64-dimensional Fock space:
//!
//! ```
//! use nongauss::{fock, kink};
//!
//! let params = kink::KinkParameters::new(6, 4)?;
//!
//! // closed form: diagonalize the 12 x 12 correlation matrix
//! let ng = kink::kink_ng(&params)?;
//!
//! // oracle: the dense relative entropy to the Gaussianification
//! let rho = kink::kink_state(&params)?.density()?;
//! let rho_g = fock::gaussianify_density(&kink::kink_correlation(&params))?;
//! let direct = rho.relative_entropy(&rho_g)?;
//!
//! assert!((ng - direct).abs() < 1e-8);
//! # Ok::<(), nongauss::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod counting;
mod error;
pub mod fock;
pub mod gaussian;
pub mod kink;
mod linalg;
pub mod measures;
mod textfmt;

pub use error::{Error, Result};
