//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{DMatrix, DVector, Schur};

use crate::algebra::C64;

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank: singular values above `rel_tol` times the largest one.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

/// Orthonormal basis of the right nullspace of a square matrix, using the
/// singular-value threshold `rel_tol` relative to the largest singular value.
/// `scale` replaces the largest singular value when given (useful when the
/// matrix itself is nearly zero).
pub fn nullspace(m: &CMatrix, rel_tol: f64, scale: Option<f64>) -> Vec<CVector> {
    let n = m.ncols();
    // Pad to square so the SVD exposes all n right singular vectors.
    let sq = if m.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = scale.unwrap_or_else(|| svd.singular_values.iter().copied().fold(0.0, f64::max));
    let cut = rel_tol * top.max(f64::MIN_POSITIVE);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    Schur::new(m.clone()).eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

pub fn determinant(m: &CMatrix) -> C64 {
    m.clone().determinant()
}

/// Moore-Penrose pseudo-inverse via SVD.
pub fn pseudo_inverse(m: &CMatrix) -> CMatrix {
    m.clone().pseudo_inverse(1e-13).expect("svd pseudo-inverse")
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Group values whose distance is below `tol` (relative to `scale`), in input order.
pub fn cluster(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, usize)> = Vec::new();
    for v in values {
        let scale = v.norm().max(1.0);
        match groups.iter_mut().find(|(c, _)| (*c - *v).norm() <= tol * scale) {
            Some((c, k)) => {
                *c = (*c * (*k as f64) + v) / (*k as f64 + 1.0);
                *k += 1;
            }
            None => groups.push((*v, 1)),
        }
    }
    groups
}

pub fn from_rows(rows: &[[C64; 8]; 8]) -> CMatrix {
    CMatrix::from_fn(8, 8, |r, c| rows[r][c])
}

pub fn real_matrix(n: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(n, n, |r, c| C64::new(entries[r * n + c], 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = real_matrix(3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0]);
        let ns = nullspace(&m, 1e-10, None);
        assert_eq!(ns.len(), 1);
        assert!((&m * &ns[0]).iter().all(|z| z.norm() < 1e-12));
        assert_eq!(rank(&m, 1e-10), 2);
    }

    #[test]
    fn eigenvalues_of_rotation_generator() {
        let m = real_matrix(2, &[0.0, -1.0, 1.0, 0.0]);
        let mut ev = eigenvalues(&m);
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn clusters_close_values() {
        let v = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0 + 1e-12, 0.0)];
        let g = cluster(&v, 1e-9);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].1, 2);
    }
}
