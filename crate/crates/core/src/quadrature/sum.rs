//! Compensated, order-fixed summation.
//!
//! Work is cut into fixed-size chunks; each chunk is summed sequentially and
//! the chunk totals are combined left to right. The chunking never depends on
//! the worker count, so results are bit-identical for any thread pool.

use rayon::prelude::*;

/// Items per independently summed chunk.
pub const CHUNK: usize = 256;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

/// `Σ_i term(i)` for `i in 0..len`, where `term` may fail.
pub fn deterministic_sum<E, F>(len: usize, term: F) -> Result<f64, E>
where
    F: Fn(usize) -> Result<f64, E> + Sync,
    E: Send,
{
    let partials: Vec<f64> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = Neumaier::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                acc.add(term(i)?);
            }
            Ok(acc.total())
        })
        .collect::<Result<_, E>>()?;
    Ok(neumaier_sum(partials))
}

/// Vector-valued version: `term(i, out)` adds item `i`'s contribution to
/// `width` accumulators by writing into `out`, which is zeroed beforehand.
pub fn deterministic_sum_many<E, F>(len: usize, width: usize, term: F) -> Result<Vec<f64>, E>
where
    F: Fn(usize, &mut [f64]) -> Result<(), E> + Sync,
    E: Send,
{
    let partials: Vec<Vec<f64>> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![Neumaier::default(); width];
            let mut buf = vec![0.0; width];
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                buf.iter_mut().for_each(|b| *b = 0.0);
                term(i, &mut buf)?;
                for (a, &b) in acc.iter_mut().zip(&buf) {
                    a.add(b);
                }
            }
            Ok(acc.iter().map(Neumaier::total).collect())
        })
        .collect::<Result<_, E>>()?;
    let mut total = vec![Neumaier::default(); width];
    for part in &partials {
        for (t, &p) in total.iter_mut().zip(part) {
            t.add(p);
        }
    }
    Ok(total.iter().map(Neumaier::total).collect())
}
