//! Lowest eigenvalues of a real symmetric tridiagonal matrix by
//! Sturm-sequence bisection.

/// Symmetric tridiagonal matrix: `diag` has length `m`, `off` length `m - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDL^T factorisation of `T - x I`).
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        // a zero pivot is nudged to -tiny and counted as negative
        let pivot = |q: f64| if q == 0.0 { -tiny } else { q };
        let mut q = pivot(self.diag[0] - x);
        let mut count = usize::from(q < 0.0);
        for (d, e) in self.diag[1..].iter().zip(&self.off) {
            q = pivot(d - x - e * e / q);
            count += usize::from(q < 0.0);
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let m = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < m { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k` smallest eigenvalues in increasing order, each to absolute
    /// accuracy `rel_tol * max(1, |lambda|)`.
    pub fn lowest(&self, k: usize, rel_tol: f64) -> Vec<f64> {
        let k = k.min(self.len());
        let (glo, ghi) = self.gershgorin();
        let mut out: Vec<f64> = Vec::with_capacity(k);
        for j in 0..k {
            let mut lo = out.last().copied().unwrap_or(glo).min(ghi);
            let mut hi = ghi;
            // widen slightly so rounding in the bounds cannot exclude an eigenvalue
            let pad = f64::EPSILON * (lo.abs() + hi.abs() + 1.0);
            lo -= pad;
            hi += pad;
            loop {
                let mid = 0.5 * (lo + hi);
                let tol = rel_tol * mid.abs().max(1.0);
                if hi - lo <= tol || mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }
}
