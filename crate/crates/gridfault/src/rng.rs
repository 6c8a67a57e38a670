//! Named, seeded RNG substreams.
//!
//! All randomness in the crate derives from a single root seed. A substream is
//! keyed by a label and an index path, so parallel and serial executions of
//! the same work plan draw identical values: a worker does not consume from a
//! shared stream, it derives its own.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use sha2::{Digest, Sha256};

/// Derive an independent RNG stream from `(root, label, path)`.
///
/// The key is the SHA-256 of the root seed, the label bytes, and the index
/// path, so distinct labels or paths give statistically independent streams.
pub fn stream(root: u64, label: &str, path: &[u64]) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(root.to_le_bytes());
    h.update([label.len() as u8]);
    h.update(label.as_bytes());
    for ix in path {
        h.update(ix.to_le_bytes());
    }
    let key: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(key)
}
