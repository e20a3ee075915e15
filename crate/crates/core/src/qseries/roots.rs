//! Root data of sl_n and its untwisted affinisation, with `(alpha_i, alpha_i) = 2`.

use super::rat;
use num_rational::BigRational;
use num_traits::Zero;

/// `sign * (alpha_start + ... + alpha_end)`, simple roots indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteRoot {
    pub start: usize,
    pub end: usize,
    pub positive: bool,
}

impl FiniteRoot {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// Coefficients in the simple roots, length `n - 1`.
    pub fn coefficients(&self, n: usize) -> Vec<i64> {
        (1..n)
            .map(|i| if (self.start..=self.end).contains(&i) { self.sign() } else { 0 })
            .collect()
    }

    /// `(alpha, rho)`, the signed height.
    pub fn height(&self) -> i64 {
        self.sign() * (self.end - self.start + 1) as i64
    }

    /// `(alpha, sum_i mu_i omega_i)` for Dynkin labels `mu`.
    pub fn pair_dynkin(&self, mu: &[i64]) -> i64 {
        self.sign() * (self.start..=self.end).map(|i| mu[i - 1]).sum::<i64>()
    }
}

pub fn positive_roots(n: usize) -> Vec<FiniteRoot> {
    let mut out = Vec::new();
    for start in 1..n {
        for end in start..n {
            out.push(FiniteRoot {
                start,
                end,
                positive: true,
            });
        }
    }
    out
}

pub fn all_roots(n: usize) -> Vec<FiniteRoot> {
    positive_roots(n)
        .into_iter()
        .flat_map(|r| [r, FiniteRoot { positive: false, ..r }])
        .collect()
}

/// Positive affine roots `alpha + m delta` sharing one value of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRootLayer {
    pub n: usize,
    pub m: i64,
    pub roots: Vec<FiniteRoot>,
    /// Multiplicity of `m delta`; zero on layer 0.
    pub imaginary_multiplicity: usize,
}

impl AffineRootLayer {
    pub fn new(n: usize, m: i64) -> AffineRootLayer {
        assert!(n >= 2 && m >= 0);
        if m == 0 {
            AffineRootLayer {
                n,
                m,
                roots: positive_roots(n),
                imaginary_multiplicity: 0,
            }
        } else {
            AffineRootLayer {
                n,
                m,
                roots: all_roots(n),
                imaginary_multiplicity: n - 1,
            }
        }
    }
}

pub fn cartan(n: usize) -> Vec<Vec<i64>> {
    let r = n - 1;
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Inverse Cartan matrix, i.e. the Gram matrix `(omega_i, omega_j)`, by
/// exact Gauss-Jordan elimination.
pub fn inverse_cartan(n: usize) -> Vec<Vec<BigRational>> {
    let r = n - 1;
    let a = cartan(n);
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].iter().map(|&x| rat(x)).collect();
            row.extend((0..r).map(|j| rat((i == j) as i64)));
            row
        })
        .collect();
    for col in 0..r {
        let piv = (col..r).find(|&i| !m[i][col].is_zero()).expect("Cartan matrix is invertible");
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// `rho = sum_j omega_j` in the basis of simple roots.
pub fn rho_in_simple_roots(n: usize) -> Vec<BigRational> {
    inverse_cartan(n)
        .into_iter()
        .map(|row| row.into_iter().fold(BigRational::zero(), |a, b| a + b))
        .collect()
}

/// `(mu, rho)` for Dynkin labels `mu`.
pub fn pair_rho_dynkin(n: usize, mu: &[i64]) -> BigRational {
    rho_in_simple_roots(n)
        .into_iter()
        .zip(mu)
        .map(|(r, &m)| r * rat(m))
        .fold(BigRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_sizes() {
        for n in 2..6 {
            assert_eq!(AffineRootLayer::new(n, 0).roots.len(), n * (n - 1) / 2);
            let l = AffineRootLayer::new(n, 3);
            assert_eq!(l.roots.len(), n * (n - 1));
            assert_eq!(l.imaginary_multiplicity, n - 1);
        }
    }

    #[test]
    fn rho_coordinates_are_half_of_i_times_n_minus_i() {
        for n in 2..7 {
            let r = rho_in_simple_roots(n);
            for (i, x) in r.iter().enumerate() {
                let i = i as i64 + 1;
                assert_eq!(x * rat(2), rat(i * (n as i64 - i)));
            }
        }
    }

    #[test]
    fn heights_match_rho_pairing() {
        let n = 5;
        let rho = rho_in_simple_roots(n);
        let g = cartan(n);
        for a in all_roots(n) {
            // (alpha, rho) = c^T A r with A the Cartan matrix
            let c = a.coefficients(n);
            let mut s = BigRational::zero();
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    s += rat(c[i] * g[i][j]) * &rho[j];
                }
            }
            assert_eq!(s, rat(a.height()));
        }
    }
}
