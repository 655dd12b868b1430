use crate::error::{Error, Result};
use crate::energystab::cubic::{cubic_roots, CubicRoots};
use crate::scalar::{i_pow, Cx, Real};
use crate::specfun::{value_and_deriv, CylinderKind};

pub(crate) fn i_value_and_deriv<T: Real>(m: u32, z: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    value_and_deriv(CylinderKind::I, m, z)
}

/// Boundary matrix with rows `ξ⁻¹I_m(√ξ)`, `I_m(√ξ)`, `√ξ I_m'(√ξ)`.
pub(crate) fn el_matrix<T: Real>(m: u32, roots: &CubicRoots<T>) -> Result<[[Cx<T>; 3]; 3]> {
    let mut mat = [[Cx::new(T::zero(), T::zero()); 3]; 3];
    let xis = roots.as_array();
    let s1 = xis[0].sqrt();
    let (i1, d1) = i_value_and_deriv(m, s1)?;
    let s2 = xis[1].sqrt();
    let (i2, d2) = i_value_and_deriv(m, s2)?;
    let cols = [(xis[0], s1, i1, d1), (xis[1], s2, i2, d2), (xis[2], s2.conj(), i2.conj(), d2.conj())];
    for (k, (xi, s, i, d)) in cols.into_iter().enumerate() {
        mat[0][k] = i / xi;
        mat[1][k] = i;
        mat[2][k] = s * d;
    }
    Ok(mat)
}

fn det3<T: Real>(a: &[[Cx<T>; 3]; 3]) -> Cx<T> {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Hadamard bound: product of the column 2-norms.
fn column_scale<T: Real>(mat: &[[Cx<T>; 3]; 3]) -> T {
    (0..3).fold(T::one(), |acc, k| acc * (0..3).fold(T::zero(), |s, i| s + mat[i][k].norm_sqr()).sqrt())
}

fn phase_stripped<T: Real>(m: u32, mat: &[[Cx<T>; 3]; 3]) -> Result<T> {
    let det = det3(mat) / i_pow::<T>(m as i64 + 1);
    if det.im.abs() > T::lit(1e-8) * det.norm().max(column_scale(mat)) {
        return Err(Error::BranchInconsistency(format!(
            "determinant is not i^(m+1) times a real number: {det}"
        )));
    }
    Ok(det.re)
}

/// The Euler–Lagrange boundary determinant divided by `i^{m+1}`.
///
/// The real-root column is `i^m` times real and the other two columns are
/// conjugate, so the quotient is real; a residual imaginary part above
/// `1e-8` of the Hadamard bound is reported as a branch inconsistency.
pub fn el_determinant<T: Real>(m: u32, reynolds: T, epsilon: T) -> Result<T> {
    let roots = cubic_roots(m, reynolds, epsilon)?;
    phase_stripped(m, &el_matrix(m, &roots)?)
}

/// [`el_determinant`] with every column scaled to unit max-norm; same sign and roots.
pub fn el_determinant_normalized<T: Real>(m: u32, reynolds: T, epsilon: T) -> Result<T> {
    let roots = cubic_roots(m, reynolds, epsilon)?;
    let mut mat = el_matrix(m, &roots)?;
    for k in 0..3 {
        let s = (0..3).fold(T::zero(), |acc, i| acc.max(mat[i][k].norm()));
        if s > T::zero() {
            for row in mat.iter_mut() {
                row[k] = row[k] / s;
            }
        }
    }
    phase_stripped(m, &mat)
}
