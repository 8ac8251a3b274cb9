use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Name of the generator behind every stream, recorded in provenance output.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha), seeded from SHA-256(seed, trial, tag, params)";

/// Seed of the stream owned by `(seed, trial, tag, params)`.
///
/// Streams are keyed by name rather than drawn in sequence, so adding a
/// mechanism or a parameter value never shifts the streams of the others.
pub fn stream_seed(seed: u64, trial: u64, tag: &str, params: &[f64]) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(trial.to_le_bytes());
    h.update((tag.len() as u64).to_le_bytes());
    h.update(tag.as_bytes());
    for p in params {
        h.update(p.to_bits().to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

pub fn stream_rng(seed: u64, trial: u64, tag: &str, params: &[f64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, trial, tag, params))
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
