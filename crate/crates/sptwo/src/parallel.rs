//! Data-parallel builders. Results keep input order regardless of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sptwo_core::numerics::{Half, JacobiZero};
use sptwo_core::operators::SWeights;
use sptwo_core::wigner::CplTable;
use sptwo_core::Result;

/// Rows per block when advancing S weights.
pub const ROW_BLOCK: usize = 256;

/// `c_p^ell` for `ell <= lmax`, one `|p|`-column per task.
pub fn cpl_table(lmax: Half) -> Result<CplTable> {
    let n = lmax.twice().max(0) as usize;
    let cols: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|p2| {
            let mut it = JacobiZero::new(p2 as u32);
            (0..=(n - p2) / 2).map(|_| it.next_value()).collect()
        })
        .collect();
    let mut rows: Vec<Vec<f64>> = (0..=n).map(|t| vec![0.0; t + 1]).collect();
    for (p2, col) in cols.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            let l2 = p2 + 2 * k;
            rows[l2][(l2 + p2) / 2] = *v;
            rows[l2][(l2 - p2) / 2] = *v;
        }
    }
    CplTable::from_rows(lmax, rows)
}

/// Appends `levels` to `weights`, advancing row blocks in parallel.
pub fn extend_weights(weights: &mut SWeights, levels: &[usize]) -> Result<()> {
    let mut blocks = weights.take_blocks(levels, ROW_BLOCK)?;
    blocks.par_iter_mut().for_each(|b| b.advance());
    weights.merge(blocks)
}

/// Generator for trial `index`: seeded from `root`, on stream `index`.
pub fn trial_rng(root: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(index);
    rng
}

/// `f(rng, i)` for `i < n` with independent per-trial generators.
pub fn trials<T, F>(root: u64, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(root, i), i))
        .collect()
}
