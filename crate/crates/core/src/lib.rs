//! Phonon thermodynamics of harmonic oscillator networks.
//!
//! Atoms sit on the vertices of a simple connected graph and interact
//! harmonically along its edges, so the potential is `q . L q` with `L` the
//! graph Laplacian. The normal modes have frequencies `sqrt(lambda_i)` over the
//! nonzero Laplacian eigenvalues, and the phonon number and specific heat
//! are bounded by the average Wiener capacity (Kirchhoff index) of the graph.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | graph model, edge-list format, path/cycle/complete/circulant generators |
//! | [`spectral`] | eigendecomposition, pseudoinverse, normal-mode decomposition check |
//! | [`capacity`] | equilibrium measures, Wiener capacities, Kirchhoff index |
//! | [`circulant`] | closed-form spectra of `Ci(n, l)` |
//! | [`thermo`] | `<N>`, `<H>`, `c(beta)`, quantum-regime indicator |
//! | [`bounds`] | Lambert W, bound constants, bounds, family classification |
//! | [`sweep`] | circulant parameter sweeps |
//!
//! ```
//! use netphonon::{bounds, graph, spectral::Spectrum, thermo};
//!
//! let g = graph::generate(&"complete:2".parse()?)?;
//! let modes = Spectrum::of_graph(&g)?.modes();
//! let tp = thermo::thermo_point(&modes, 1.0)?;
//! let report = bounds::bound_report(&modes, 1.0)?;
//! assert!(report.holds_n && tp.avg_n <= report.phonon_bound);
//! # Ok::<(), netphonon::Error>(())
//! ```

pub mod bounds;
pub mod capacity;
pub mod circulant;
pub mod error;
pub mod graph;
mod numeric;
pub mod spectral;
pub mod sweep;
pub mod thermo;

pub use error::{Error, ParseErrorKind, Result};
pub use numeric::compensated_sum;
