//! Halton low-discrepancy points.

/// The first `n` primes, used as per-axis Halton bases.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(n);
    let mut candidate = 2u64;
    while primes.len() < n {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Van der Corput radical inverse of `index` in `base`, in `[0, 1)`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv_base = 1.0 / base as f64;
    let mut scale = inv_base;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv_base;
    }
    value
}

/// Iterator over points of the Halton sequence in the unit hypercube.
///
/// Point `k` (zero-based) uses sequence index `offset + k + 1`; index 0 is the
/// origin for every base and is skipped.
#[derive(Debug, Clone)]
pub struct Halton {
    bases: Vec<u64>,
    next: u64,
}

impl Halton {
    pub fn new(dimension: usize, offset: u64) -> Self {
        Halton {
            bases: first_primes(dimension),
            next: offset.saturating_add(1),
        }
    }
}

impl Iterator for Halton {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        let i = self.next;
        self.next = self.next.checked_add(1)?;
        Some(self.bases.iter().map(|&b| radical_inverse(i, b)).collect())
    }
}
