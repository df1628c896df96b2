//! Small complex linear-algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub const TOL: f64 = 1e-9;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn scalar(z: Complex64) -> CMat {
    CMat::from_element(1, 1, z)
}

/// Largest entrywise modulus of `a - b`; infinite if shapes differ.
pub fn distance(a: &CMat, b: &CMat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn approx_eq(a: &CMat, b: &CMat, tol: f64) -> bool {
    distance(a, b) <= tol
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let sym = (m + m.adjoint()) * c(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = CMat::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

/// Orthonormal basis (as columns) of the null space of `a`.
pub fn null_space(a: &CMat, tol: f64) -> CMat {
    let gram = a.adjoint() * a;
    let (vals, vecs) = hermitian_eigen(&gram);
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let keep: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] <= tol * scale).collect();
    CMat::from_fn(a.ncols(), keep.len(), |r, k| vecs[(r, keep[k])])
}

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let a = CMat::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5)
}

pub fn block_diagonal(blocks: &[&CMat]) -> CMat {
    let (r, cc) = blocks.iter().fold((0, 0), |(r, cc), b| (r + b.nrows(), cc + b.ncols()));
    let mut out = CMat::zeros(r, cc);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r0, c0), (b.nrows(), b.ncols())).copy_from(b);
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    if a.nrows() == 0 {
        return Some(a.clone());
    }
    a.clone().try_inverse()
}

/// Rounds a real number to a multiple of `1e-6`, mapping `-0` to `0`, for
/// use in deterministic sort keys.
pub fn key(x: f64) -> i64 {
    (x * 1e6).round() as i64
}
