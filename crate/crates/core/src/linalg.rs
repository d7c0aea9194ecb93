//! Dense complex 4x4 helpers: partially pivoted LU, solve, determinant and
//! a one-norm condition estimate. The matching system is tiny, so the
//! factorization is written out directly instead of pulling in a linear
//! algebra crate.

use crate::error::{Error, Result};
use crate::qalgebra::C64;

pub type Mat4 = [[C64; 4]; 4];
pub type Vec4 = [C64; 4];

/// LU factorization with row pivoting.
pub struct Lu {
    lu: Mat4,
    perm: [usize; 4],
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &Mat4) -> Self {
        let mut lu = *a;
        let mut perm = [0usize, 1, 2, 3];
        let mut sign = 1.0;
        let mut singular = false;

        for col in 0..4 {
            let mut pivot_row = col;
            let mut pivot_mag = lu[col][col].norm();
            for row in col + 1..4 {
                let mag = lu[row][col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_mag == 0.0 {
                singular = true;
                continue;
            }
            if pivot_row != col {
                lu.swap(col, pivot_row);
                perm.swap(col, pivot_row);
                sign = -sign;
            }
            let pivot = lu[col][col];
            for row in col + 1..4 {
                let factor = lu[row][col] / pivot;
                lu[row][col] = factor;
                for k in col + 1..4 {
                    let sub = factor * lu[col][k];
                    lu[row][k] -= sub;
                }
            }
        }

        Self {
            lu,
            perm,
            sign,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> C64 {
        if self.singular {
            return C64::new(0.0, 0.0);
        }
        let mut det = C64::new(self.sign, 0.0);
        for i in 0..4 {
            det *= self.lu[i][i];
        }
        det
    }

    /// Forward/backward substitution; meaningless if the matrix is singular.
    pub fn solve(&self, b: &Vec4) -> Vec4 {
        let mut x = [C64::new(0.0, 0.0); 4];
        for i in 0..4 {
            x[i] = b[self.perm[i]];
            for k in 0..i {
                let sub = self.lu[i][k] * x[k];
                x[i] -= sub;
            }
        }
        for i in (0..4).rev() {
            for k in i + 1..4 {
                let sub = self.lu[i][k] * x[k];
                x[i] -= sub;
            }
            x[i] /= self.lu[i][i];
        }
        x
    }
}

fn one_norm(a: &Mat4) -> f64 {
    (0..4)
        .map(|c| (0..4).map(|r| a[r][c].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve a*x = b with row pivoting; also returns the one-norm condition
/// estimate ||a||_1 * ||a^-1||_1 computed from the explicit inverse (cheap
/// at this size).
pub fn solve4(a: &Mat4, b: &Vec4) -> Result<(Vec4, f64)> {
    let lu = Lu::new(a);
    if lu.is_singular() {
        return Err(Error::SingularMatrix { cond: f64::INFINITY });
    }
    let mut inv_norm: f64 = 0.0;
    for c in 0..4 {
        let mut e = [C64::new(0.0, 0.0); 4];
        e[c] = C64::new(1.0, 0.0);
        let col = lu.solve(&e);
        inv_norm = inv_norm.max(col.iter().map(|z| z.norm()).sum());
    }
    let cond = one_norm(a) * inv_norm;
    Ok((lu.solve(b), cond))
}

/// Determinant through the pivoted factorization.
pub fn det4(a: &Mat4) -> C64 {
    Lu::new(a).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn mat_vec(a: &Mat4, x: &Vec4) -> Vec4 {
        let mut b = [c(0.0, 0.0); 4];
        for r in 0..4 {
            for k in 0..4 {
                b[r] += a[r][k] * x[k];
            }
        }
        b
    }

    fn random_mat(rng: &mut impl Rng) -> Mat4 {
        let mut a = [[c(0.0, 0.0); 4]; 4];
        for row in a.iter_mut() {
            for entry in row.iter_mut() {
                *entry = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            }
        }
        a
    }

    #[test]
    fn solves_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let a = random_mat(&mut rng);
            let x_true: Vec4 = std::array::from_fn(|_| {
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
            });
            let b = mat_vec(&a, &x_true);
            let (x, cond) = solve4(&a, &b).unwrap();
            assert!(cond >= 1.0);
            for i in 0..4 {
                assert!(
                    (x[i] - x_true[i]).norm() < 1e-11 * cond.max(1.0),
                    "component {i} off by {:.3e} (cond {cond:.1e})",
                    (x[i] - x_true[i]).norm()
                );
            }
        }
    }

    #[test]
    fn determinant_of_diagonal_and_permutation() {
        let zero = c(0.0, 0.0);
        let mut diag = [[zero; 4]; 4];
        diag[0][0] = c(2.0, 0.0);
        diag[1][1] = c(0.0, 1.0);
        diag[2][2] = c(-1.0, 0.0);
        diag[3][3] = c(3.0, 0.0);
        // det = 2 * i * (-1) * 3 = -6i
        assert!((det4(&diag) - c(0.0, -6.0)).norm() < 1e-14);

        let mut perm = [[zero; 4]; 4];
        perm[0][1] = c(1.0, 0.0);
        perm[1][0] = c(1.0, 0.0);
        perm[2][2] = c(1.0, 0.0);
        perm[3][3] = c(1.0, 0.0);
        assert!((det4(&perm) - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let zero = c(0.0, 0.0);
        let mut a = [[zero; 4]; 4];
        a[0][0] = c(1.0, 0.0);
        a[1][1] = c(1.0, 0.0);
        a[2][2] = c(1.0, 0.0);
        // Last row all zero.
        let b = [c(1.0, 0.0); 4];
        assert!(matches!(
            solve4(&a, &b),
            Err(Error::SingularMatrix { .. })
        ));
        assert_eq!(det4(&a), zero);
    }

    #[test]
    fn identity_has_unit_condition() {
        let zero = c(0.0, 0.0);
        let mut eye = [[zero; 4]; 4];
        for i in 0..4 {
            eye[i][i] = c(1.0, 0.0);
        }
        let b = [c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0), c(4.0, -1.0)];
        let (x, cond) = solve4(&eye, &b).unwrap();
        assert_eq!(x, b);
        assert!((cond - 1.0).abs() < 1e-14);
    }
}
