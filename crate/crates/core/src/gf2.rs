//! Dense linear algebra over GF(2) on packed `u64` words.

use alloc::vec::Vec;

fn get(words: &[u64], bit: usize) -> bool {
    words[bit / 64] >> (bit % 64) & 1 == 1
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// A fully reduced echelon form of a square system, ready to express
/// targets in the original vectors.
#[derive(Clone, Debug)]
pub(crate) struct Gf2Basis {
    bits: usize,
    /// `(pivot column, reduced vector, combination of original vectors)`
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Gf2Basis {
    /// Returns `None` when the vectors are linearly dependent.
    pub(crate) fn new(vectors: &[Vec<u64>], bits: usize) -> Option<Self> {
        let words = bits.div_ceil(64);
        let combo_words = vectors.len().div_ceil(64);
        let mut pending: Vec<(Vec<u64>, Vec<u64>)> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut combo = alloc::vec![0u64; combo_words];
                combo[k / 64] |= 1u64 << (k % 64);
                let mut v = v.clone();
                v.resize(words, 0);
                (v, combo)
            })
            .collect();
        let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::with_capacity(vectors.len());
        for col in 0..bits {
            let Some(found) = pending.iter().position(|(v, _)| get(v, col)) else {
                continue;
            };
            let (pv, pc) = pending.swap_remove(found);
            for (v, c) in pending.iter_mut() {
                if get(v, col) {
                    xor_into(v, &pv);
                    xor_into(c, &pc);
                }
            }
            for (_, v, c) in rows.iter_mut() {
                if get(v, col) {
                    xor_into(v, &pv);
                    xor_into(c, &pc);
                }
            }
            rows.push((col, pv, pc));
        }
        // anything left reduced to zero
        if !pending.is_empty() {
            return None;
        }
        Some(Self { bits, rows })
    }

    /// Coefficients `e` with `Σ e_k v_k = target`, or `None` if the target
    /// lies outside the span.
    pub(crate) fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        let mut residual = target.to_vec();
        residual.resize(self.bits.div_ceil(64), 0);
        let mut coeffs = alloc::vec![0u64; self.rows.first().map_or(0, |r| r.2.len())];
        for (col, v, c) in &self.rows {
            if get(&residual, *col) {
                xor_into(&mut residual, v);
                xor_into(&mut coeffs, c);
            }
        }
        residual.iter().all(|&w| w == 0).then_some(coeffs)
    }
}
