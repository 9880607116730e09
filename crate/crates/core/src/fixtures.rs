//! Standard benchmark states.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{GaussRat, Scalar};
use crate::state::PureState;

fn qubit_state<T: Scalar>(m: usize, support: impl Fn(usize) -> bool) -> PureState<T> {
    let amps = (0..1usize << m)
        .map(|i| if support(i) { T::one() } else { T::zero() })
        .collect();
    PureState::new(vec![2; m], amps).expect("fixture states are valid")
}

/// `(|00> + |11>) / sqrt 2`.
pub fn bell() -> PureState<Complex64> {
    ghz(2).normalize()
}

/// `(|0...0> + |1...1>) / sqrt 2` on `m >= 1` qubits.
pub fn ghz(m: usize) -> PureState<Complex64> {
    ghz_exact(m).to_complex().normalize()
}

/// `|0...0> + |1...1>`, unnormalized.
pub fn ghz_exact(m: usize) -> PureState<GaussRat> {
    let last = (1usize << m) - 1;
    qubit_state(m, |i| i == 0 || i == last)
}

/// Uniform superposition of the `m` single-excitation basis states.
pub fn w(m: usize) -> PureState<Complex64> {
    w_exact(m).to_complex().normalize()
}

/// Sum of the single-excitation basis states, unnormalized.
pub fn w_exact(m: usize) -> PureState<GaussRat> {
    qubit_state(m, |i| i.count_ones() == 1)
}

/// The computational basis state `|bits>` with `bits` read mode 1 first.
pub fn basis(dims: &[usize], index: &[usize]) -> PureState<Complex64> {
    let total: usize = dims.iter().product();
    let mut amps = vec![Complex64::zero(); total];
    let offset = index.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i);
    amps[offset] = Complex64::one();
    PureState::new(dims.to_vec(), amps).expect("fixture states are valid")
}
