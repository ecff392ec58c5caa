//! Small integer helpers shared across modules.

/// Deterministic primality test for `u64` by trial division (inputs here are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for task `index` of a run seeded with `master`; independent of scheduling.
#[inline]
pub fn task_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master) ^ index.wrapping_mul(0xd6e8_feb8_6659_fd93))
}

/// Binomial coefficient; saturates at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th `k`-subset of `0..n` in colexicographic order, as a bit mask.
pub fn unrank_subset(n: u32, k: u32, mut rank: u64) -> u64 {
    let mut mask = 0u64;
    let mut remaining = k;
    let mut top = n;
    while remaining > 0 {
        // largest c < top with C(c, remaining) <= rank
        let mut c = remaining - 1;
        while c + 1 < top && binomial((c + 1) as u64, remaining as u64) <= rank {
            c += 1;
        }
        rank -= binomial(c as u64, remaining as u64);
        mask |= 1u64 << c;
        top = c;
        remaining -= 1;
    }
    mask
}

/// Next mask with the same popcount (Gosper's hack); colexicographic successor.
#[inline]
pub fn next_subset(mask: u64) -> u64 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(3_033_169));
        assert!(!is_prime(9_099_507));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(32, 10), 64_512_240);
        assert_eq!(binomial(24, 8), 735_471);
        assert_eq!(binomial(5, 7), 0);
    }

    #[test]
    fn unrank_agrees_with_gosper() {
        let mut mask = (1u64 << 4) - 1;
        for rank in 0..binomial(9, 4) {
            assert_eq!(unrank_subset(9, 4, rank), mask, "rank {rank}");
            mask = next_subset(mask);
        }
    }

    #[test]
    fn task_seeds_differ() {
        assert_ne!(task_seed(1, 0), task_seed(1, 1));
        assert_ne!(task_seed(1, 0), task_seed(2, 0));
        assert_eq!(task_seed(7, 3), task_seed(7, 3));
    }
}
