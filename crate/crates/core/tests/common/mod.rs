#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use segre_core::{Flattening, GaussRat, LocalState, PureState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn haar_state(rng: &mut impl Rng, dims: &[usize]) -> PureState<Complex64> {
    let n: usize = dims.iter().product();
    let amps = (0..n).map(|_| gaussian(rng)).collect();
    PureState::new(dims.to_vec(), amps).unwrap().normalize()
}

pub fn random_local(rng: &mut impl Rng, dim: usize) -> LocalState<Complex64> {
    LocalState::new((0..dim).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn random_factors(rng: &mut impl Rng, dims: &[usize]) -> Vec<LocalState<Complex64>> {
    dims.iter().map(|&d| random_local(rng, d)).collect()
}

/// Product state built by an explicit Kronecker loop, independent of `segre_map`.
pub fn kron_state(factors: &[LocalState<Complex64>]) -> PureState<Complex64> {
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().product();
    let mut amps = Vec::with_capacity(total);
    for offset in 0..total {
        let mut rest = offset;
        let mut value = Complex64::new(1.0, 0.0);
        for (j, f) in factors.iter().enumerate().rev() {
            value *= f.vec()[rest % dims[j]];
            rest /= dims[j];
        }
        amps.push(value);
    }
    PureState::new(dims, amps).unwrap()
}

pub fn random_rat(rng: &mut impl Rng) -> GaussRat {
    let (a, b) = (rng.random_range(-9..=9), rng.random_range(1..=9));
    let (c, d) = (rng.random_range(-9..=9), rng.random_range(1..=9));
    GaussRat::from_fracs(a, b, c, d)
}

pub fn random_rat_nonzero(rng: &mut impl Rng) -> GaussRat {
    loop {
        let g = random_rat(rng);
        if g != GaussRat::from_ints(0, 0) {
            return g;
        }
    }
}

pub fn random_rat_local(rng: &mut impl Rng, dim: usize) -> LocalState<GaussRat> {
    loop {
        let v: Vec<GaussRat> = (0..dim).map(|_| random_rat(rng)).collect();
        if let Ok(l) = LocalState::new(v) {
            return l;
        }
    }
}

pub fn random_rat_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Flattening<GaussRat> {
    Flattening::from_rows(rows, cols, (0..rows * cols).map(|_| random_rat(rng)).collect()).unwrap()
}

pub fn random_complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Flattening<Complex64> {
    Flattening::from_rows(rows, cols, (0..rows * cols).map(|_| gaussian(rng)).collect()).unwrap()
}

/// Haar-ish random unitary by Gram-Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    // cols[c][r] -> matrix[r][c]
    (0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect()
}

/// Applies `u` to mode `mode` (0-based) of the state.
pub fn apply_local(state: &PureState<Complex64>, mode: usize, u: &[Vec<Complex64>]) -> PureState<Complex64> {
    let dims = state.dims();
    let stride: usize = dims[mode + 1..].iter().product();
    let d = dims[mode];
    let amps = state.amps();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (offset, slot) in out.iter_mut().enumerate() {
        let i = (offset / stride) % d;
        let base = offset - i * stride;
        *slot = (0..d).map(|k| u[i][k] * amps[base + k * stride]).sum();
    }
    PureState::new(dims.to_vec(), out).unwrap()
}

/// Sum of |det|^2 over all 2x2 minors, written out longhand.
pub fn brute_minor_sum(rows: usize, cols: usize, at: impl Fn(usize, usize) -> Complex64) -> f64 {
    let mut total = 0.0;
    for r0 in 0..rows {
        for r1 in r0 + 1..rows {
            for c0 in 0..cols {
                for c1 in c0 + 1..cols {
                    total += (at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)).norm_sqr();
                }
            }
        }
    }
    total
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<GaussRat>]) -> GaussRat {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = GaussRat::from_ints(0, 0);
    for c in 0..n {
        let minor: Vec<Vec<GaussRat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][c].clone() * laplace_det(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

pub fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!("[{}] criterion {id}: {name} ({detail})", if ok { "PASS" } else { "FAIL" });
}
