use crate::matrix::RealMatrix;

/// Pivots smaller than this fraction of the largest input entry are treated
/// as zero.
const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

/// Dense LU factorization with partial pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    n: usize,
    /// Unit lower factor below the diagonal, `U` on and above it.
    factors: Vec<f64>,
    /// Row interchanged with row `k` at step `k`.
    pivots: Vec<usize>,
    singular: bool,
    pivot_threshold: f64,
}

impl LuFactorization {
    pub fn new(m: &RealMatrix) -> Self {
        let n = m.order();
        let max_entry = m.data().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let pivot_threshold = SINGULAR_PIVOT_RATIO * max_entry;
        let mut lu = m.data().to_vec();
        let mut pivots: Vec<usize> = (0..n).collect();
        let mut singular = false;

        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| lu[x * n + k].abs().total_cmp(&lu[y * n + k].abs()))
                .expect("nonempty pivot range");
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 || pivot.abs() < pivot_threshold {
                singular = true;
                break;
            }
            for i in k + 1..n {
                let l = lu[i * n + k] / pivot;
                lu[i * n + k] = l;
                if l == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    lu[i * n + j] -= l * lu[k * n + j];
                }
            }
        }

        LuFactorization {
            n,
            factors: lu,
            pivots,
            singular,
            pivot_threshold,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn pivot_threshold(&self) -> f64 {
        self.pivot_threshold
    }

    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `L U`, to be compared against the row-permuted input.
    pub fn product(&self) -> RealMatrix {
        let n = self.n;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..=i.min(j) {
                    let l = if k == i { 1.0 } else { self.factors[i * n + k] };
                    s += l * self.factors[k * n + j];
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Applies the recorded row interchanges to `m`.
    pub fn permute_rows(&self, m: &RealMatrix) -> RealMatrix {
        let n = self.n;
        let mut data = m.data().to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if p != k {
                for j in 0..n {
                    data.swap(k * n + j, p * n + j);
                }
            }
        }
        RealMatrix::new(n, data).expect("same shape")
    }

    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        if self.singular || b.len() != self.n {
            return None;
        }
        let n = self.n;
        let mut x = b.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            x.swap(k, p);
        }
        for i in 0..n {
            let mut s = x[i];
            for (l, v) in self.factors[i * n..i * n + i].iter().zip(&x[..i]) {
                s -= l * v;
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for (u, v) in self.factors[i * n + i + 1..(i + 1) * n]
                .iter()
                .zip(&x[i + 1..])
            {
                s -= u * v;
            }
            x[i] = s / self.factors[i * n + i];
        }
        Some(x)
    }
}

/// `||M x - b||_inf <= 1e-9 ||M||_inf ||x||_inf`.
pub fn residual_within_bound(m: &RealMatrix, x: &[f64], b: &[f64]) -> bool {
    let mx = m.mul_vec(x);
    let residual = mx
        .iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max);
    let x_norm = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    residual <= 1e-9 * m.inf_norm() * x_norm
}

/// Solves `M X = B` column by column; `None` when `M` is numerically
/// singular.
pub fn lu_solve(m: &RealMatrix, rhs: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let lu = LuFactorization::new(m);
    rhs.iter()
        .map(|b| {
            let x = lu.solve(b)?;
            debug_assert!(
                residual_within_bound(m, &x, b),
                "LU residual bound violated"
            );
            Some(x)
        })
        .collect()
}
