//! Small combinatorial helpers: binomials, lexicographic k-subsets and their ranks.

/// Binomial coefficient C(n, k) in u64. Panics on overflow, which does not occur at the
/// sizes this crate enumerates.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Lexicographic iterator over the k-subsets of `0..n`, each yielded ascending.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n: n as u32,
            current: (0..k as u32).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // advance to the next subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) as u32 {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Rank of an ascending k-subset among all k-subsets of `0..n` in the colexicographic
/// (combinatorial number system) order. Ranks are dense in `0..C(n, k)`.
pub fn colex_rank(subset: &[u32]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1) as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 3), 9880);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn combinations_lexicographic_and_complete() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        let mut ranks: Vec<_> = Combinations::new(7, 3).map(|c| colex_rank(&c)).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..35).collect::<Vec<_>>());
    }
}
