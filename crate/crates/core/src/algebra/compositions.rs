//! Weighted compositions: tuples `(i_1, ..., i_r)` of non-negative integers
//! with `i_1 + 2 i_2 + ... + r i_r = m`.

/// One weighted composition of a target weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedComposition {
    parts: Vec<u32>,
}

impl WeightedComposition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self { parts }
    }

    /// `parts[j-1]` is the multiplicity `i_j` of the part `j`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `sum_j j * i_j`.
    pub fn weight(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, &i)| (j as u32 + 1) * i)
            .sum()
    }

    /// `sum_j i_j`, the order of the multinomial term.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// Number of weighted compositions of `m` with `r` part sizes, by the
/// usual restricted-partition recurrence.
pub fn composition_count(m: u32, r: usize) -> u64 {
    let m = m as usize;
    let mut counts = vec![0u64; m + 1];
    counts[0] = 1;
    for j in 1..=r {
        for w in j..=m {
            counts[w] += counts[w - j];
        }
    }
    counts[m]
}

/// All weighted compositions of `m` into `r` part sizes, each exactly once.
///
/// Order is fixed: the multiplicity of the largest part varies slowest and
/// every multiplicity runs upward from zero, with `i_1` taking the remainder.
pub fn weighted_compositions(m: u32, r: usize) -> Vec<WeightedComposition> {
    assert!(r >= 1, "at least one part size is required");
    let mut out = Vec::with_capacity(composition_count(m, r) as usize);
    let mut parts = vec![0u32; r];
    descend(r, m, &mut parts, &mut out);
    out
}

fn descend(j: usize, remaining: u32, parts: &mut [u32], out: &mut Vec<WeightedComposition>) {
    if j == 1 {
        parts[0] = remaining;
        out.push(WeightedComposition::new(parts.to_vec()));
        parts[0] = 0;
        return;
    }
    let size = j as u32;
    for i in 0..=remaining / size {
        parts[j - 1] = i;
        descend(j - 1, remaining - i * size, parts, out);
    }
    parts[j - 1] = 0;
}
