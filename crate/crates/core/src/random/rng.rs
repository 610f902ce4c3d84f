use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere randomness is needed.
pub type StreamRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a base seed with a path of indices into one 64-bit stream key.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(seed), |h, &i| {
        splitmix64(h ^ splitmix64(i.wrapping_add(0x632b_e59b_d9b4_e019)))
    })
}

/// An independent ChaCha8 stream keyed by `(seed, path)`. Two calls with the same key
/// produce the same draws regardless of thread or call order.
pub fn stream_rng(seed: u64, path: &[u64]) -> StreamRng {
    let key = derive_seed(seed, path);
    let mut bytes = [0u8; 32];
    let mut h = key;
    for chunk in bytes.chunks_mut(8) {
        h = splitmix64(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4)
            .map(|_| 0)
            .scan(stream_rng(1, &[2, 3]), |r, _: u64| Some(r.gen()))
            .collect();
        let b: Vec<u64> = (0..4)
            .map(|_| 0)
            .scan(stream_rng(1, &[2, 3]), |r, _: u64| Some(r.gen()))
            .collect();
        let c: Vec<u64> = (0..4)
            .map(|_| 0)
            .scan(stream_rng(1, &[3, 2]), |r, _: u64| Some(r.gen()))
            .collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(derive_seed(0, &[]), derive_seed(0, &[0]));
    }
}
