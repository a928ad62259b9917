use num_complex::Complex;

use crate::scalar::Real;

/// Condition estimate above which a Gram computation is flagged.
pub const ILL_CONDITIONED: f64 = 1e12;

/// Dense Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

/// Diagonally pivoted Cholesky factorization `Pᵀ G P = L Lᴴ`, stopped at the
/// numerical rank.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianFactorization<T> {
    pub rank: usize,
    /// `permutation[k]` is the original index of the `k`-th pivot.
    pub permutation: Vec<usize>,
    /// Pivot values `L_kk²`, non-increasing.
    pub pivots: Vec<T>,
    /// `n × rank`, column-major.
    pub lower: Vec<Complex<T>>,
    /// `pivots[0]/pivots[rank−1]`, infinite when rank-deficient.
    pub condition_estimate: T,
}

impl<T: Real> GramMatrix<T> {
    pub fn from_row_major(n: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), n * n, "Gram data must be n×n");
        Self { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// Largest `|G[i][j] − conj(G[j][i])|`.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `cᴴ G c`.
    pub fn quadratic_form(&self, c: &[Complex<T>]) -> Complex<T> {
        assert_eq!(c.len(), self.n);
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.n {
            let row: Complex<T> = (0..self.n).map(|j| self.get(i, j) * c[j]).sum();
            acc += c[i].conj() * row;
        }
        acc
    }

    pub fn factorize(&self) -> HermitianFactorization<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut lower = vec![Complex::new(T::zero(), T::zero()); n * n];
        let mut pivots = Vec::with_capacity(n);
        let max_diag = (0..n).map(|i| a[i * n + i].re).fold(T::zero(), T::max);
        let tol = T::from_usize_lossy(n.max(1)) * T::epsilon() * max_diag;

        let mut rank = 0;
        for k in 0..n {
            let (p, d) = (k..n).map(|j| (j, a[j * n + j].re)).fold((k, T::neg_infinity()), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
            if !(d > tol) {
                break;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                for i in 0..n {
                    a.swap(i * n + k, i * n + p);
                }
                perm.swap(k, p);
                for j in 0..k {
                    lower.swap(j * n + k, j * n + p);
                }
            }
            let lkk = d.sqrt();
            pivots.push(d);
            lower[k * n + k] = Complex::new(lkk, T::zero());
            for i in (k + 1)..n {
                lower[k * n + i] = a[i * n + k] / lkk;
            }
            for i in (k + 1)..n {
                let lik = lower[k * n + i];
                for j in (k + 1)..n {
                    let ljk = lower[k * n + j];
                    a[i * n + j] -= lik * ljk.conj();
                }
            }
            rank += 1;
        }
        lower.truncate(rank * n);
        let condition_estimate = if rank < n || rank == 0 { T::infinity() } else { pivots[0] / pivots[rank - 1] };
        HermitianFactorization { rank, permutation: perm, pivots, lower, condition_estimate }
    }
}

impl<T: Real> HermitianFactorization<T> {
    /// `‖Lᴴ Pᵀ c‖²`, the quadratic form restricted to the numerical rank.
    pub fn quadratic_form(&self, c: &[Complex<T>]) -> T {
        let n = self.permutation.len();
        assert_eq!(c.len(), n);
        let mut acc = T::zero();
        for k in 0..self.rank {
            let col = &self.lower[k * n..(k + 1) * n];
            let y: Complex<T> = (k..n).map(|i| col[i].conj() * c[self.permutation[i]]).sum();
            acc += y.norm_sqr();
        }
        acc
    }
}
