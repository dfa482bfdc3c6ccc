use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{ln_factorial, Complex, DenseMatrix, Half};
use crate::su2::SU2Element;

/// `pi_ell(g)` in the orthonormal monomial basis.
///
/// Basis index `i = 0..=2 ell` holds `e_p` with `p = -ell + i`, the normalized
/// monomial `z1^{ell-p} z2^{ell+p}`. With this ordering `irrep(1/2, g) = g`
/// and `irrep(ell, d_theta)` is diagonal with entries `e^{-2 i p theta}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepMatrix {
    ell: Half,
    matrix: DenseMatrix,
}

impl IrrepMatrix {
    pub fn ell(&self) -> Half {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    /// The `(p, p')` entry.
    pub fn entry(&self, p: Half, p_prime: Half) -> Result<Complex> {
        let i = basis_index(self.ell, p)?;
        let j = basis_index(self.ell, p_prime)?;
        Ok(self.matrix[(i, j)])
    }
}

pub(crate) fn twice_ell(ell: Half) -> Result<usize> {
    if ell.twice() < 0 {
        return Err(Error::InvalidSpin { twice: ell.twice() });
    }
    Ok(ell.twice() as usize)
}

/// Position of `e_p` in the basis of `H_ell`.
pub fn basis_index(ell: Half, p: Half) -> Result<usize> {
    let n = twice_ell(ell)?;
    if p.abs() > ell || !p.same_lattice(ell) {
        return Err(Error::IndexMismatch { ell, p });
    }
    Ok(((p.twice() + n as i64) / 2) as usize)
}

/// `|| z1^{ell-p} z2^{ell+p} ||^2 = m! n! / (m+n)!`.
pub fn basis_norm_sq(ell: Half, p: Half) -> Result<f64> {
    let idx = basis_index(ell, p)? as u64;
    let n = ell.twice() as u64;
    Ok(libm::exp(
        ln_factorial(n - idx) + ln_factorial(idx) - ln_factorial(n),
    ))
}

struct Sqrts(Vec<f64>);

impl Sqrts {
    fn new(n: usize) -> Self {
        Sqrts((0..=n).map(|k| libm::sqrt(k as f64)).collect())
    }

    #[inline]
    fn ratio(&self, num: usize, den: usize) -> f64 {
        self.0[num] / self.0[den]
    }
}

/// Lifts one column from level `level - 1` to `level`.
///
/// `src` holds the column at level `level - 1` (length `level`), `dst` has
/// length `level + 1` and receives column `j`.
#[inline]
fn lift_column(
    g: &[[Complex; 2]; 2],
    sq: &Sqrts,
    level: usize,
    j: usize,
    src: &[Complex],
    dst: &mut [Complex],
) {
    let m = level - j;
    let (x, y, den) = if m >= j {
        (g[0][0], g[1][0], m)
    } else {
        (g[0][1], g[1][1], j)
    };
    for v in dst.iter_mut() {
        *v = Complex::new(0.0, 0.0);
    }
    for (l, &v) in src.iter().enumerate() {
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        dst[l] += x * (v * sq.ratio(level - l, den));
        dst[l + 1] += y * (v * sq.ratio(l + 1, den));
    }
}

#[inline]
fn source_column(level: usize, j: usize) -> usize {
    if level - j >= j {
        j
    } else {
        j - 1
    }
}

/// Matrix of `pi_ell(g)`, built level by level from `pi_0 = 1`.
pub fn irrep(ell: Half, g: &SU2Element) -> Result<IrrepMatrix> {
    let n = twice_ell(ell)?;
    let gm = g.matrix();
    let sq = Sqrts::new(n.max(1));
    // Column-major storage of the current level.
    let mut cur: Vec<Complex> = vec![Complex::new(1.0, 0.0)];
    for level in 1..=n {
        let mut next = vec![Complex::new(0.0, 0.0); (level + 1) * (level + 1)];
        for j in 0..=level {
            let s = source_column(level, j);
            let src = &cur[s * level..(s + 1) * level];
            let dst = &mut next[j * (level + 1)..(j + 1) * (level + 1)];
            lift_column(&gm, &sq, level, j, src, dst);
        }
        cur = next;
    }
    let dim = n + 1;
    let mut data = vec![Complex::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        for i in 0..dim {
            data[i * dim + j] = cur[j * dim + i];
        }
    }
    Ok(IrrepMatrix {
        ell,
        matrix: DenseMatrix::new(dim, dim, data)?,
    })
}

/// Column `j` of `pi_ell(g)` in `O(ell^2)` operations.
pub fn irrep_column(ell: Half, g: &SU2Element, j: usize) -> Result<Vec<Complex>> {
    let n = twice_ell(ell)?;
    if j > n {
        return Err(Error::IndexMismatch {
            ell,
            p: Half::from_twice(2 * j as i64 - n as i64),
        });
    }
    let mut path = vec![0usize; n + 1];
    path[n] = j;
    for level in (1..=n).rev() {
        path[level - 1] = source_column(level, path[level]);
    }
    let gm = g.matrix();
    let sq = Sqrts::new(n.max(1));
    let mut cur = vec![Complex::new(1.0, 0.0)];
    for level in 1..=n {
        let mut next = vec![Complex::new(0.0, 0.0); level + 1];
        lift_column(&gm, &sq, level, path[level], &cur, &mut next);
        cur = next;
    }
    Ok(cur)
}

/// `f^ell_{p,p'}(g) = <pi_ell(g) h_{p'}, h_p>` for the unnormalized monomials.
///
/// Equals the orthonormal entry scaled by `||h_p|| ||h_{p'}||`.
pub fn wigner_coeff(ell: Half, p: Half, p_prime: Half, g: &SU2Element) -> Result<Complex> {
    let j = basis_index(ell, p_prime)?;
    let i = basis_index(ell, p)?;
    let col = irrep_column(ell, g, j)?;
    let scale = libm::sqrt(basis_norm_sq(ell, p)? * basis_norm_sq(ell, p_prime)?);
    Ok(col[i] * scale)
}
