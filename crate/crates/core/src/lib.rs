//! Conditional edge-distribution estimation in large undirected networks.
//!
//! The centerpiece is the Fiedler random graph (FRG) model: the conditional
//! probability that a node pair is linked, given its neighborhood, is modeled
//! through a single spectral statistic — the change in the neighborhood
//! Laplacian's smallest nonzero eigenvalue when the candidate edge is toggled
//! ([`spectral::fiedler_delta`]). Class-conditional densities of that
//! statistic are estimated nonparametrically with Epanechnikov kernels and
//! inverted into an edge posterior ([`frg`]).
//!
//! Four parametric conditional baselines are included for comparison
//! ([`baselines`]): Markov and higher-order exponential random graphs, a
//! conditional Watts-Strogatz model, and a conditional Barabási-Albert
//! model. The [`experiment`] module implements the link-prediction protocol
//! used to compare them: uniform pair sampling with disjoint train/test
//! splits, neighborhood induction, and ROC/AUC evaluation.

pub mod baselines;
pub mod experiment;
pub mod frg;
pub mod graph;
pub mod model_io;
pub mod numeric;
pub mod rng;
pub mod spectral;
pub mod synthetic;

pub use graph::{load_edge_list, LabeledSample, NodePair, UndirectedGraph};
pub use spectral::{fiedler_delta, fiedler_value, SolverOptions};
