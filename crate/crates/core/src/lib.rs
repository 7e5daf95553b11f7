//! Queue layouts of graphs.
//!
//! An ordered graph is a `k`-queue when its edges split into `k` classes with
//! no two nested edges in a class, which happens exactly when it has no
//! rainbow of `k + 1` pairwise nested edges. This crate computes rainbows and
//! optimal queue partitions, exact and heuristic queue-numbers of labelled
//! graphs, exhaustive censuses of small ordered graphs, random regular
//! graphs, and the counting bounds that relate them.
//!
//! ```
//! use queuelab::{max_rainbow, OrderedGraph};
//!
//! let g = OrderedGraph::new(6, [(1, 6), (2, 5), (3, 4)]).unwrap();
//! let (size, certificate) = max_rainbow(&g);
//! assert_eq!(size, 3);
//! assert!(certificate.is_valid());
//! ```

pub mod bounds;
pub mod census;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod graph;
pub mod layout;
pub mod rainbow;
pub mod randreg;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{are_nested, is_nested, normalize_edge, read_labelled, read_ordered, LabelledGraph, OrderedEdge, OrderedGraph};
pub use layout::{exact_queue_number, heuristic_queue_number, LayoutResult, SearchOptions};
pub use rainbow::{greedy_partition, max_rainbow, max_rainbow_size, nesting_depth, validate_assignment, QueueAssignment, RainbowCertificate};
pub use randreg::{degree_check, gen_regular, RegularSample};
pub use rng::SplitMix64;
