//! Dense helpers over nalgebra shared by the element and transform code.

use nalgebra::DMatrix;

/// Singular values in descending order with the matching right singular vectors as rows.
pub(crate) fn svd_sorted(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let (m, n) = a.shape();
    // Pad to at least square so the full right singular basis is returned.
    let padded = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut rows = DMatrix::zeros(order.len(), n);
    for (r, &i) in order.iter().enumerate() {
        rows.row_mut(r).copy_from(&vt.row(i));
    }
    (sigma, rows)
}

/// Orthonormal basis of the null space of `a`, one vector per row.
///
/// Singular values at or below `rel_tol * sigma_max` count as zero.
pub(crate) fn null_space(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return DMatrix::identity(n, n);
    }
    let (sigma, vt) = svd_sorted(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let rank = sigma.iter().filter(|&&s| smax > 0.0 && s > rel_tol * smax).count();
    vt.rows(rank, n - rank).into_owned()
}

/// 2-norm condition number; infinite when singular.
pub(crate) fn condition_number(a: &DMatrix<f64>) -> f64 {
    let (sigma, _) = svd_sorted(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let smin = sigma.last().copied().unwrap_or(0.0);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Right singular vector of the smallest singular value.
pub(crate) fn near_null_vector(a: &DMatrix<f64>) -> Vec<f64> {
    let (_, vt) = svd_sorted(a);
    let last = vt.nrows() - 1;
    vt.row(last).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.nrows(), 2);
        for r in 0..2 {
            assert!((a.row(0).dot(&ns.row(r))).abs() < 1e-14);
        }
    }

    #[test]
    fn empty_constraints_give_identity() {
        let a = DMatrix::<f64>::zeros(0, 4);
        assert_eq!(null_space(&a, 1e-10).nrows(), 4);
    }

    #[test]
    fn condition_number_of_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0, 0.5]));
        assert!((condition_number(&a) - 8.0).abs() < 1e-12);
    }
}
