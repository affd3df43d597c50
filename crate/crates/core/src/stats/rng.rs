use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A global seed plus a stream number selecting an independent ChaCha
/// substream. Results depend only on this pair, never on scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamSeed {
    pub seed: u64,
    pub stream: u64,
}

impl StreamSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Substream for a labelled part of this stream's work.
    pub fn derive(self, label: &str) -> Self {
        Self { seed: self.seed, stream: stream_key(&[&self.stream.to_le_bytes(), label.as_bytes()]) }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

impl From<u64> for StreamSeed {
    fn from(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }
}

/// Stable 64-bit key for a tuple of byte strings (e.g. region id and
/// occupation code). Parts are length-prefixed so `("ab","c")` and
/// `("a","bc")` differ.
pub fn stream_key(parts: &[&[u8]]) -> u64 {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 digest has 32 bytes"))
}
