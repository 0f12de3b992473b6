//! Maximum-likelihood soft-decision decoding of binary linear block codes
//! through a supercode.
//!
//! Decoding runs in two phases. A backward Viterbi pass over the syndrome
//! trellis of a supercode `C̄ ⊇ C` yields, for every supertrellis state, the
//! least metric of any completion to the end of the block. A priority-first
//! search over the trellis of `C` itself then uses those values as an
//! admissible, consistent heuristic and returns a minimum-metric codeword.
//!
//! ```
//! use tpmlsd::{channel, codes, TwoPhaseDecoder};
//!
//! let pair = codes::rm_code_pair(1, 2, 4).unwrap();
//! let decoder = TwoPhaseDecoder::new(pair).unwrap();
//! let rx = channel::transmit(&tpmlsd::BinaryVector::zeros(16), 0.7, 11);
//! let report = decoder.decode(&rx.metrics()).unwrap();
//! assert!(report.codeword.is_zero() || report.metric <= channel::path_metric(
//!     &tpmlsd::BinaryVector::zeros(16), &rx.metrics()).unwrap());
//! ```

pub mod channel;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod oracle;
pub mod phase1;
pub mod phase2;
pub mod rng;
pub mod selftest;
pub mod trellis;
pub mod verify;

pub use channel::{BitMetrics, ChannelOutput};
pub use codes::{CodePair, LinearCode};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BinaryVector};
pub use phase1::CostToGoTable;
pub use phase2::{DecodeReport, TrellisMode, TwoPhaseDecoder};
pub use trellis::{Trellis, TrellisState};
