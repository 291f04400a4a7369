//! Small dense-vector kernels shared by the solvers.

use libm::sqrt;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub fn scale(a: &mut [f64], s: f64) {
    for x in a {
        *x *= s;
    }
}

/// Normalizes in place and returns the previous norm. Zero vectors are left alone.
pub fn normalize(a: &mut [f64]) -> f64 {
    let n = norm(a);
    if n > 0.0 {
        scale(a, 1.0 / n);
    }
    n
}

/// Two passes of modified Gram–Schmidt against an orthonormal set.
pub fn orthogonalize<'a, I>(r: &mut [f64], basis: I)
where
    I: Iterator<Item = &'a [f64]> + Clone,
{
    for _ in 0..2 {
        for b in basis.clone() {
            let c = dot(b, r);
            axpy(-c, b, r);
        }
    }
}
