use alloc::vec;
use alloc::vec::Vec;

use super::{SchattenResult, Warning};
use crate::error::{Error, Result};
use crate::numerics::{tail_bound, Complex, Half, JacobiZero};
use crate::wigner::{fit_envelope, CplTable};

/// Spectrum of `S_theta`: `e^{2 i p theta} c_p^ell` with multiplicity `2 ell + 1`.
#[derive(Clone, Debug)]
pub struct SpectralModelS {
    table: CplTable,
}

impl SpectralModelS {
    pub fn new(table: CplTable) -> Self {
        SpectralModelS { table }
    }

    pub fn table(&self) -> &CplTable {
        &self.table
    }

    pub fn eigenvalue(&self, ell: Half, p: Half, theta: f64) -> Option<Complex> {
        let c = self.table.get(ell, p)?;
        Some(Complex::from_polar(c, 2.0 * p.to_f64() * theta))
    }

    pub fn multiplicity(&self, ell: Half) -> usize {
        ell.twice() as usize + 1
    }
}

/// Envelope constant fitted over `ell <= 100`.
pub fn fitted_envelope_constant() -> f64 {
    let lmax = Half::from_int(100);
    let table = CplTable::build(lmax).expect("non-negative lmax");
    fit_envelope(&table, Half::ZERO, lmax).constant
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SOptions {
    /// Required `tail <= rel_target * value^q`.
    pub rel_target: f64,
    /// Truncation at which certification is abandoned.
    pub cap: Half,
    /// Top of the initial ladder; beyond it levels are added on demand.
    pub sum_cap: Half,
    /// First truncation level; levels double from here.
    pub start: Half,
    /// Envelope constant; fitted on demand when `None`.
    pub envelope_constant: Option<f64>,
    pub safety: f64,
    /// Truncation used in operator-norm mode.
    pub op_lmax: Half,
}

impl Default for SOptions {
    fn default() -> Self {
        SOptions {
            rel_target: 1e-6,
            cap: Half::from_int(100_000),
            sum_cap: Half::from_int(16_384),
            start: Half::from_int(32),
            envelope_constant: None,
            safety: 1.1,
            op_lmax: Half::from_int(64),
        }
    }
}

impl SOptions {
    pub fn envelope_k(&self) -> f64 {
        self.safety
            * self
                .envelope_constant
                .unwrap_or_else(fitted_envelope_constant)
    }
}

/// Bound on `sum_{ell > lmax} sum_p (2 ell + 1) |(e^{2ip t1} - e^{2ip t2}) c_p^ell|^q`
/// from `|c_p^ell| <= k min((1+ell)^{-1/4}, ||p| - ell/sqrt 2|^{-1/2})`.
///
/// For fixed `ell`, splitting the `p` sum at distance `(1+ell)^{1/2}` from the
/// ridge gives `sum_p |c_p^ell|^q <= k^q a (1+ell)^{1/2 - q/4}` with
/// `a = 2 (5 + 2q/(q-2))`; the remaining `ell` sum runs over two unit lattices.
pub fn s_tail(q: f64, k: f64, lmax: f64) -> f64 {
    if !(q > 10.0) {
        return f64::INFINITY;
    }
    let a = 2.0 * (5.0 + 2.0 * q / (q - 2.0));
    match tail_bound(0.25 * q - 1.5, 1.0 + lmax) {
        Ok(tb) => libm::pow(2.0 * k, q) * 4.0 * a * tb.bound,
        Err(_) => f64::INFINITY,
    }
}

#[inline]
fn pow_q(x: f64, q: f64, qi: Option<i32>) -> f64 {
    match qi {
        Some(n) => powi(x, n),
        None => libm::pow(x, q),
    }
}

#[inline]
fn powi(mut x: f64, mut n: i32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= x;
        }
        x *= x;
        n >>= 1;
    }
    acc
}

fn integer_exponent(q: f64) -> Option<i32> {
    if q == libm::round(q) && q > 0.0 && q < 1024.0 {
        Some(q as i32)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Row {
    p2: usize,
    it: JacobiZero,
    acc: f64,
}

impl Row {
    fn new(p2: usize) -> Self {
        Row {
            p2,
            it: JacobiZero::new(p2 as u32),
            acc: 0.0,
        }
    }

    /// Accumulates `(2 ell + 1) |c|^q` for `2 ell <= l2`.
    #[inline]
    fn advance(&mut self, l2: usize, q: f64, qi: Option<i32>) {
        if l2 < self.p2 {
            return;
        }
        let last = (l2 - self.p2) / 2;
        let mut acc = self.acc;
        while self.it.degree() <= last {
            let n = self.it.degree();
            let a = libm::fabs(self.it.next_value());
            if a > 1e-300 {
                acc += ((self.p2 + 2 * n) as f64 + 1.0) * pow_q(a, q, qi);
            }
        }
        self.acc = acc;
    }
}

/// A contiguous run of rows taken out of [`SWeights`] to be advanced
/// independently, then merged back.
#[derive(Clone, Debug, PartialEq)]
pub struct SRowBlock {
    q: f64,
    levels: Vec<usize>,
    rows: Vec<Row>,
    values: Vec<f64>,
}

impl SRowBlock {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Runs every row up to each pending level.
    pub fn advance(&mut self) {
        let qi = integer_exponent(self.q);
        let nlev = self.levels.len();
        self.values = vec![0.0; self.rows.len() * nlev];
        for (r, row) in self.rows.iter_mut().enumerate() {
            for (j, &l2) in self.levels.iter().enumerate() {
                row.advance(l2, self.q, qi);
                self.values[r * nlev + j] = row.acc;
            }
        }
    }
}

/// Cumulative sums `W_q(p; L) = sum_{|p| <= ell <= L} (2 ell + 1) |c_p^ell|^q`
/// on a ladder of truncations `L`, extensible in place.
#[derive(Clone, Debug, PartialEq)]
pub struct SWeights {
    q: f64,
    levels: Vec<usize>,
    w: Vec<Vec<f64>>,
    rows: Vec<Row>,
}

impl SWeights {
    /// Twice-ell truncations `start, 2 start, ...` ending exactly at `cap`.
    pub fn ladder(start: Half, cap: Half) -> Vec<usize> {
        let cap2 = cap.twice().max(0) as usize;
        let mut l = (start.twice().max(1) as usize).min(cap2.max(1));
        let mut out = Vec::new();
        while l < cap2 {
            out.push(l);
            l *= 2;
        }
        out.push(cap2);
        out
    }

    pub fn empty(q: f64) -> Self {
        SWeights {
            q,
            levels: Vec::new(),
            w: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn build(q: f64, levels: Vec<usize>) -> Self {
        let mut w = SWeights::empty(q);
        w.extend(&levels).expect("ascending levels");
        w
    }

    /// Splits the rows needed for `new_levels` into blocks of at most
    /// `block` rows. Rows stay owned by the blocks until [`SWeights::merge`].
    pub fn take_blocks(&mut self, new_levels: &[usize], block: usize) -> Result<Vec<SRowBlock>> {
        let mut last = self.levels.last().copied();
        for &l in new_levels {
            if last.is_some_and(|x| l <= x) {
                return Err(Error::ShapeMismatch {
                    expected: last.unwrap_or(0) + 1,
                    found: l,
                });
            }
            last = Some(l);
        }
        let top = match new_levels.last() {
            Some(&t) => t,
            None => return Ok(Vec::new()),
        };
        let mut rows = core::mem::take(&mut self.rows);
        rows.extend((rows.len()..=top).map(Row::new));
        let block = block.max(1);
        let mut out = Vec::with_capacity(rows.len().div_ceil(block));
        let mut it = rows.into_iter().peekable();
        while it.peek().is_some() {
            let chunk: Vec<Row> = it.by_ref().take(block).collect();
            out.push(SRowBlock {
                q: self.q,
                levels: new_levels.to_vec(),
                rows: chunk,
                values: Vec::new(),
            });
        }
        Ok(out)
    }

    /// Reassembles advanced blocks, in the order returned by [`SWeights::take_blocks`].
    pub fn merge(&mut self, blocks: Vec<SRowBlock>) -> Result<()> {
        let new_levels = match blocks.first() {
            Some(b) => b.levels.clone(),
            None => return Ok(()),
        };
        let nlev = new_levels.len();
        let total: usize = blocks.iter().map(SRowBlock::len).sum();
        let expected = new_levels.last().map_or(0, |t| t + 1);
        if total != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: total,
            });
        }
        let mut cols: Vec<Vec<f64>> = new_levels
            .iter()
            .map(|&l| Vec::with_capacity(l + 1))
            .collect();
        let mut rows = Vec::with_capacity(total);
        for b in blocks {
            if b.levels != new_levels || b.values.len() != b.rows.len() * nlev {
                return Err(Error::ShapeMismatch {
                    expected: b.rows.len() * nlev,
                    found: b.values.len(),
                });
            }
            for (r, row) in b.rows.into_iter().enumerate() {
                if row.p2 != rows.len() {
                    return Err(Error::ShapeMismatch {
                        expected: rows.len(),
                        found: row.p2,
                    });
                }
                for (j, col) in cols.iter_mut().enumerate() {
                    if row.p2 <= new_levels[j] {
                        col.push(b.values[r * nlev + j]);
                    }
                }
                rows.push(row);
            }
        }
        self.rows = rows;
        self.levels.extend(new_levels);
        self.w.extend(cols);
        Ok(())
    }

    /// Appends ascending twice-ell truncations beyond the current top.
    pub fn extend(&mut self, new_levels: &[usize]) -> Result<()> {
        let mut blocks = self.take_blocks(new_levels, usize::MAX)?;
        for b in blocks.iter_mut() {
            b.advance();
        }
        self.merge(blocks)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_lmax(&self, k: usize) -> Half {
        Half::from_twice(self.levels[k] as i64)
    }

    pub fn level_of(&self, lmax: Half) -> Option<usize> {
        let l2 = lmax.twice();
        self.levels.iter().position(|&l| l as i64 == l2)
    }

    pub fn top(&self) -> Option<Half> {
        self.levels.last().map(|&l| Half::from_twice(l as i64))
    }

    /// `||S_t1 - S_t2||_{S^q}^q` truncated at level `k`.
    pub fn pow_sum(&self, theta1: f64, theta2: f64, k: usize) -> f64 {
        let qi = integer_exponent(self.q);
        let delta = theta1 - theta2;
        let mut total = 0.0;
        for (p2, w) in self.w[k].iter().enumerate().skip(1) {
            let alpha = 2.0 * libm::fabs(libm::sin(0.5 * p2 as f64 * delta));
            if alpha == 0.0 {
                continue;
            }
            total += 2.0 * pow_q(alpha, self.q, qi) * w;
        }
        total
    }
}

fn same_operator(theta1: f64, theta2: f64) -> bool {
    let d = (theta1 - theta2) / (2.0 * core::f64::consts::PI);
    d == libm::round(d)
}

/// Truncated `||S_t1 - S_t2||_{S^q}` at `lmax`, no certificate.
pub fn schatten_s_truncated(q: f64, theta1: f64, theta2: f64, lmax: Half) -> f64 {
    let w = SWeights::build(q, vec![lmax.twice().max(0) as usize]);
    libm::pow(w.pow_sum(theta1, theta2, 0), 1.0 / q)
}

/// `||S_t1 - S_t2||_{S^q}` with a certified tail; `q = inf` gives the operator norm.
pub fn schatten_s(q: f64, theta1: f64, theta2: f64, opts: &SOptions) -> Result<SchattenResult> {
    let k = opts.envelope_k();
    if q == f64::INFINITY {
        return s_operator_norm(theta1, theta2, opts.op_lmax, k);
    }
    check_exponent(q)?;
    if same_operator(theta1, theta2) {
        return Ok(SchattenResult::zero(q));
    }
    schatten_s_with(&mut SWeights::empty(q), theta1, theta2, k, opts)
}

fn check_exponent(q: f64) -> Result<Option<Warning>> {
    if !(q > 4.0) {
        return Err(Error::InvalidExponent { value: q, min: 4.0 });
    }
    Ok(if q > 10.0 {
        None
    } else {
        Some(Warning::ExponentBelowRange)
    })
}

/// Appends ascending twice-ell levels to a weight ladder.
pub type Extender<'a> = &'a mut dyn FnMut(&mut SWeights, &[usize]) -> Result<()>;

/// As [`schatten_s`] with shared weights and envelope constant `k`.
pub fn schatten_s_with(
    weights: &mut SWeights,
    theta1: f64,
    theta2: f64,
    k: f64,
    opts: &SOptions,
) -> Result<SchattenResult> {
    schatten_s_using(weights, theta1, theta2, k, opts, &mut |w, l| w.extend(l))
}

/// As [`schatten_s_with`], growing `weights` through `extend`.
///
/// Walks the existing levels, then adds the initial ladder up to
/// `opts.sum_cap` one level at a time. Past it, when the remainder bound
/// allows certification at `opts.cap`, the ladder is extended by doubling
/// until the tail bound meets the target or the cap is reached.
pub fn schatten_s_using(
    weights: &mut SWeights,
    theta1: f64,
    theta2: f64,
    k: f64,
    opts: &SOptions,
    extend: Extender<'_>,
) -> Result<SchattenResult> {
    let q = weights.q();
    let warning = check_exponent(q)?;
    if same_operator(theta1, theta2) {
        return Ok(SchattenResult::zero(q));
    }
    let ladder = SWeights::ladder(opts.start, opts.sum_cap);
    let point = |sum: f64, lmax: Half| {
        let tail = s_tail(q, k, lmax.to_f64());
        SchattenResult {
            q,
            value: libm::pow(sum, 1.0 / q),
            lmax,
            tail,
            certified: tail <= opts.rel_target * sum,
            warning,
        }
    };
    let mut partial = SchattenResult::zero(q);
    let mut sum = 0.0;
    let mut level = 0;
    loop {
        while level < weights.num_levels() {
            sum = weights.pow_sum(theta1, theta2, level);
            partial = point(sum, weights.level_lmax(level));
            if partial.certified {
                return Ok(partial);
            }
            level += 1;
        }
        let top = weights.top().map_or(0, |t| t.twice() as usize);
        if let Some(&next) = ladder.iter().find(|&&l| l > top) {
            extend(weights, &[next])?;
            continue;
        }
        match extension_levels(q, k, sum, partial.lmax, opts) {
            Some(levels) => extend(weights, &levels)?,
            None => break,
        }
    }
    if warning.is_some() {
        Ok(partial)
    } else {
        Err(Error::TruncationFailure { partial })
    }
}

/// Doubling levels past `top` up to the first one whose tail bound meets
/// the target against `sum`, or `None` when even the cap cannot certify
/// the largest sum compatible with the current tail.
fn extension_levels(q: f64, k: f64, sum: f64, top: Half, opts: &SOptions) -> Option<Vec<usize>> {
    let cap2 = opts.cap.twice().max(0) as usize;
    let top2 = top.twice().max(0) as usize;
    if top2 >= cap2 {
        return None;
    }
    let ceiling = sum + s_tail(q, k, top.to_f64());
    if !(s_tail(q, k, opts.cap.to_f64()) <= opts.rel_target * ceiling) {
        return None;
    }
    let mut out = Vec::new();
    let mut l2 = top2.max(1);
    while l2 < cap2 {
        l2 = (2 * l2).min(cap2);
        out.push(l2);
        if s_tail(q, k, 0.5 * l2 as f64) <= opts.rel_target * sum {
            break;
        }
    }
    Some(out)
}

/// `sup_{ell <= lmax, p} |e^{2ip t1} - e^{2ip t2}| |c_p^ell|`; `tail` bounds the rest.
pub fn s_operator_norm(theta1: f64, theta2: f64, lmax: Half, k: f64) -> Result<SchattenResult> {
    let table = CplTable::build(lmax)?;
    let delta = theta1 - theta2;
    let mut best: f64 = 0.0;
    for (_, p, c) in table.iter() {
        let alpha = 2.0 * libm::fabs(libm::sin(p.to_f64() * delta));
        best = best.max(alpha * libm::fabs(c));
    }
    let tail = 2.0 * k * libm::pow(1.0 + lmax.to_f64(), -0.25);
    Ok(SchattenResult {
        q: f64::INFINITY,
        value: best,
        lmax,
        tail,
        certified: tail <= best,
        warning: None,
    })
}
