//! Independent radial-collocation oracle for the linear eigenvalue problem.
#![allow(dead_code)]

use nalgebra::DMatrix;

/// Chebyshev order; the 33 nodes with `x > 0` carry the parity-reduced unknowns.
pub const CHEB_N: usize = 65;

fn cheb_d(n: usize) -> (Vec<f64>, DMatrix<f64>) {
    let x: Vec<f64> = (0..=n).map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
    let c = |j: usize| (if j == 0 || j == n { 2.0 } else { 1.0 }) * if j % 2 == 0 { 1.0 } else { -1.0 };
    let mut d = DMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                d[(i, j)] = c(i) / c(j) / (x[i] - x[j]);
            }
        }
    }
    for i in 0..=n {
        let s: f64 = (0..=n).filter(|&j| j != i).map(|j| d[(i, j)]).sum();
        d[(i, i)] = -s;
    }
    (x, d)
}

/// `Δ_m` on the parity-reduced grid `r_i = x_i > 0`, and the radii.
pub fn reduced_laplacian(m: u32) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let n = CHEB_N;
    let (x, d1) = cheb_d(n);
    let d2 = &d1 * &d1;
    let half = (n + 1) / 2;
    let p = if m % 2 == 0 { 1.0 } else { -1.0 };
    let r: Vec<f64> = x[..half].to_vec();
    let mut lap = DMatrix::zeros(half, half);
    let mut der = DMatrix::zeros(half, half);
    let mf = m as f64;
    for i in 0..half {
        for k in 0..half {
            let a2 = d2[(i, k)] + p * d2[(i, n - k)];
            let a1 = d1[(i, k)] + p * d1[(i, n - k)];
            lap[(i, k)] = a2 + a1 / r[i];
            der[(i, k)] = a1;
        }
        lap[(i, i)] -= mf * mf / (r[i] * r[i]);
    }
    (r, lap, der)
}

/// Largest real eigenvalue `β_{m,1}` from collocation of `Nφ = βMφ`.
pub fn collocation_beta(m: u32, epsilon: f64, reynolds: f64) -> f64 {
    let (r, lap, der) = reduced_laplacian(m);
    let h = r.len();
    let id = DMatrix::<f64>::identity(h, h);
    let lap2 = &lap * &lap;
    let mr = m as f64 * reynolds;
    let mut a = DMatrix::zeros(2 * h, 2 * h);
    let mut b = DMatrix::zeros(2 * h, 2 * h);
    a.view_mut((0, 0), (h, h)).copy_from(&(&lap / reynolds));
    a.view_mut((0, h), (h, h)).copy_from(&(&id * mr));
    a.view_mut((h, 0), (h, h)).copy_from(&(&lap * (-epsilon * mr)));
    a.view_mut((h, h), (h, h)).copy_from(&(&lap2 * (-1.0 / reynolds)));
    b.view_mut((0, 0), (h, h)).copy_from(&(&id - &lap * epsilon));
    b.view_mut((h, h), (h, h)).copy_from(&(&lap2 * epsilon - &lap));
    // w(1) = 0, ψ(1) = 0, ψ'(1) = 0 replace the first rows of each block.
    for k in 0..2 * h {
        a[(0, k)] = 0.0;
        a[(h, k)] = 0.0;
        a[(h + 1, k)] = 0.0;
        b[(0, k)] = 0.0;
        b[(h, k)] = 0.0;
        b[(h + 1, k)] = 0.0;
    }
    a[(0, 0)] = 1.0;
    a[(h, h)] = 1.0;
    for k in 0..h {
        a[(h + 1, h + k)] = der[(0, k)];
    }
    let sigma = 1.0 + epsilon.sqrt() * mr;
    let shifted = &a - &b * sigma;
    let op = shifted.lu().solve(&b).expect("shifted pencil is regular");
    let nus = op.complex_eigenvalues();
    let top = nus.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let mut best = f64::NEG_INFINITY;
    for nu in nus.iter() {
        // ν ≈ 0 are the infinite eigenvalues of the singular pencil.
        if nu.norm() < 1e-8 * top {
            continue;
        }
        let beta = sigma + 1.0 / *nu;
        if beta.im.abs() < 1e-8 * (1.0 + beta.re.abs()) && beta.re > best {
            best = beta.re;
        }
    }
    best
}
