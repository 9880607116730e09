//! The Segre ideal and the entanglement measures built from its quadrics.
//!
//! A state is a product state exactly when every flattening has rank one, i.e.
//! when all 2x2 minors of all flattenings vanish. Those minors generate the
//! ideal; summing their squared moduli gives a measure of entanglement.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarId};
use crate::scalar::Scalar;
use crate::state::{flatten, flatten_offsets, index_of, Bipartition, Flattening, PureState};

/// Default cap on the amplitude count accepted by [`segre_generators`].
pub const DEFAULT_MAX_AMPS: usize = 1 << 12;

/// Default separability tolerance, applied to `sqrt(minor_sum)`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Matrices with at most this many 2x2 minors are summed by enumeration.
const ENUMERATION_LIMIT: usize = 1 << 12;

/// Below this fraction of `||M||_F^4` the Gram identity has lost too many
/// digits to cancellation and the singular-value route takes over.
const GRAM_CANCELLATION_GUARD: f64 = 1e-6;

/// The 2x2-minor generating family of the Segre variety for fixed mode dims.
#[derive(Clone, Debug, PartialEq)]
pub struct SegreIdeal {
    dims: Vec<usize>,
    gens: Vec<MultiPoly>,
}

impl SegreIdeal {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Generators, sign-canonical and sorted.
    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Each generator's value at the state's amplitudes.
    pub fn evaluate_at<T: Scalar>(&self, state: &PureState<T>) -> Result<Vec<T>> {
        if state.dims() != self.dims.as_slice() {
            return Err(Error::WrongShape(format!(
                "state dims {:?} do not match ideal dims {:?}",
                state.dims(),
                self.dims
            )));
        }
        self.gens
            .iter()
            .map(|g| {
                g.evaluate_with(|v| match v {
                    VarId::State(index) => state.amp(index).ok().cloned(),
                    VarId::Plu(_) => None,
                })
            })
            .collect()
    }

    /// True when every generator vanishes at the state, compared exactly.
    pub fn vanishes_at<T: Scalar>(&self, state: &PureState<T>) -> Result<bool> {
        Ok(self.evaluate_at(state)?.iter().all(|v| v.is_zero()))
    }
}

/// All distinct 2x2 minors of all canonical-bipartition flattenings.
pub fn segre_generators(dims: &[usize], max_amps: usize) -> Result<SegreIdeal> {
    if dims.len() < 2 {
        return Err(Error::TooFewModes {
            needed: 2,
            got: dims.len(),
        });
    }
    if let Some((mode, &dim)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
        return Err(Error::InvalidDimension { mode: mode + 1, dim });
    }
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if total > max_amps {
        return Err(Error::TooLarge {
            what: "amplitude count",
            size: total,
            cap: max_amps,
        });
    }

    let var = |offset: usize| MultiPoly::var(VarId::State(index_of(dims, offset)));
    let per_split: Vec<Vec<MultiPoly>> = Bipartition::all_canonical(dims.len())
        .par_iter()
        .map(|b| {
            let (rows, cols, offsets) = flatten_offsets(dims, b).expect("bipartition built for these dims");
            let at = |r: usize, c: usize| var(offsets[r * cols + c]);
            let mut gens = Vec::new();
            for r0 in 0..rows {
                for r1 in r0 + 1..rows {
                    for c0 in 0..cols {
                        for c1 in c0 + 1..cols {
                            let minor = &(&at(r0, c0) * &at(r1, c1)) - &(&at(r0, c1) * &at(r1, c0));
                            gens.push(minor.sign_canonical());
                        }
                    }
                }
            }
            gens
        })
        .collect();

    let gens: BTreeSet<MultiPoly> = per_split.into_iter().flatten().collect();
    Ok(SegreIdeal {
        dims: dims.to_vec(),
        gens: gens.into_iter().collect(),
    })
}

#[inline]
pub(crate) fn det2<T: Scalar>(a: &T, b: &T, c: &T, d: &T) -> T {
    a.clone() * d.clone() - b.clone() * c.clone()
}

/// `sum |det|^2` over all 2x2 minors, by direct enumeration.
pub fn minor_sum_enumerated<T: Scalar>(f: &Flattening<T>) -> T {
    let (rows, cols) = (f.rows(), f.cols());
    let mut total = T::zero();
    for r0 in 0..rows {
        for r1 in r0 + 1..rows {
            for c0 in 0..cols {
                for c1 in c0 + 1..cols {
                    let det = det2(f.get(r0, c0), f.get(r0, c1), f.get(r1, c0), f.get(r1, c1));
                    total = total + det.norm_sqr();
                }
            }
        }
    }
    total
}

/// `sum |det|^2` over all 2x2 minors via `(||M||_F^4 - ||M M^*||_F^2) / 2`.
///
/// Exact in the rational backend. In floating point it cancels badly when the
/// matrix is close to rank one; [`minor_sum`] guards against that.
pub fn minor_sum_gram<T: Scalar>(f: &Flattening<T>) -> T {
    let frob = frobenius_sqr(f);
    // Gram matrix on the smaller side; both sides have the same Frobenius norm.
    let g = if f.rows() <= f.cols() { f.clone() } else { f.transpose() };
    let (n, len) = (g.rows(), g.cols());
    let mut gram_sqr = T::zero();
    for i in 0..n {
        for j in i..n {
            let mut dot = T::zero();
            for c in 0..len {
                dot = dot + g.get(i, c).clone() * g.get(j, c).conj();
            }
            let w = dot.norm_sqr();
            gram_sqr = if i == j { gram_sqr + w } else { gram_sqr + w.clone() + w };
        }
    }
    let two = T::one() + T::one();
    (frob.clone() * frob - gram_sqr) / two
}

fn frobenius_sqr<T: Scalar>(f: &Flattening<T>) -> T {
    f.entries().iter().fold(T::zero(), |acc, x| acc + x.norm_sqr())
}

/// `sum_{i<j} s_i^2 s_j^2` over singular values, with only nonnegative terms.
fn minor_sum_singular(f: &Flattening<Complex64>) -> f64 {
    let m = DMatrix::from_row_slice(f.rows(), f.cols(), f.entries());
    let mut sq: Vec<f64> = m.singular_values().iter().map(|s| s * s).collect();
    sq.sort_by(|a, b| b.total_cmp(a));
    let mut tail = 0.0;
    let mut total = 0.0;
    for s in sq.iter().rev() {
        total += s * tail;
        tail += s;
    }
    total
}

/// Sum of squared moduli of all 2x2 minors of a complex matrix.
///
/// Small matrices are enumerated directly. Larger ones use the Gram identity,
/// falling back to singular values when the identity would cancel
/// catastrophically (near-rank-one input).
pub fn minor_sum(f: &Flattening<Complex64>) -> f64 {
    let (rows, cols) = (f.rows(), f.cols());
    if rows < 2 || cols < 2 {
        return 0.0;
    }
    let minors = (rows * (rows - 1) / 2).saturating_mul(cols * (cols - 1) / 2);
    if minors <= ENUMERATION_LIMIT {
        return minor_sum_enumerated(f).re;
    }
    let frob = frobenius_sqr(f).re;
    let gram = minor_sum_gram(f).re;
    if gram > GRAM_CANCELLATION_GUARD * frob * frob {
        gram
    } else {
        minor_sum_singular(f)
    }
}

/// A measure value with the per-bipartition minor sums it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub value: f64,
    /// Minor sum of each canonical flattening of the normalized state.
    pub per_bipartition: BTreeMap<Bipartition, f64>,
}

fn norm_sqr_f64(state: &PureState<Complex64>) -> f64 {
    state.amps().iter().map(|a| a.norm_sqr()).sum()
}

/// `2 * sqrt(mean over canonical bipartitions of minor_sum)` on the normalized
/// state. Zero exactly on product states; equals the two-qubit concurrence
/// when `m = 2`. A single-mode state has no bipartitions and reports 0.
pub fn generalized_concurrence(state: &PureState<Complex64>) -> MeasureReport {
    let splits = Bipartition::all_canonical(state.num_modes());
    if splits.is_empty() {
        return MeasureReport {
            value: 0.0,
            per_bipartition: BTreeMap::new(),
        };
    }
    // Work on raw amplitudes and divide by the norm once at the end; the result
    // is the same projective quantity with fewer roundings.
    let raw: Vec<f64> = splits
        .par_iter()
        .map(|b| minor_sum(&flatten(state, b).expect("canonical bipartition matches state")))
        .collect();
    let n2 = norm_sqr_f64(state);
    let total: f64 = raw.iter().sum();
    let value = 2.0 * (total / splits.len() as f64).sqrt() / n2;
    let per_bipartition = splits.into_iter().zip(raw).map(|(b, t)| (b, t / (n2 * n2))).collect();
    MeasureReport { value, per_bipartition }
}

/// `2 |a00 a11 - a01 a10|` on the normalized two-qubit state.
pub fn concurrence2(state: &PureState<Complex64>) -> Result<f64> {
    if state.dims() != [2, 2] {
        return Err(Error::WrongShape(format!(
            "concurrence needs dims [2, 2], got {:?}",
            state.dims()
        )));
    }
    let a = state.amps();
    let det = det2(&a[0], &a[1], &a[2], &a[3]);
    Ok(2.0 * det.norm_sqr().sqrt() / norm_sqr_f64(state))
}

/// Rank-one test of one flattening: `minor_sum <= tol^2` on the normalized state.
pub fn is_bipartite_separable(state: &PureState<Complex64>, b: &Bipartition, tol: f64) -> Result<bool> {
    let n2 = norm_sqr_f64(state);
    Ok(minor_sum(&flatten(state, b)?) / (n2 * n2) <= tol * tol)
}

/// True when every canonical bipartition is separable at `tol`.
pub fn is_fully_separable(state: &PureState<Complex64>, tol: f64) -> bool {
    Bipartition::all_canonical(state.num_modes())
        .iter()
        .all(|b| is_bipartite_separable(state, b, tol).expect("canonical bipartition matches state"))
}

/// Exact rank-one test of one flattening.
pub fn is_bipartite_separable_exact<T: Scalar>(state: &PureState<T>, b: &Bipartition) -> Result<bool> {
    Ok(minor_sum_gram(&flatten(state, b)?).is_zero())
}

/// Exact full-separability test: every canonical flattening has rank one.
pub fn is_fully_separable_exact<T: Scalar>(state: &PureState<T>) -> bool {
    Bipartition::all_canonical(state.num_modes())
        .iter()
        .all(|b| is_bipartite_separable_exact(state, b).expect("canonical bipartition matches state"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::GaussRat;
    use crate::state::{segre_map, LocalState};
    use num_traits::One;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn two_qubit_ideal_is_the_quadric() {
        let ideal = segre_generators(&[2, 2], DEFAULT_MAX_AMPS).unwrap();
        assert_eq!(ideal.len(), 1);
        assert_eq!(ideal.generators()[0].to_string(), "a[00]*a[11] - a[01]*a[10]");
    }

    #[test]
    fn generator_preconditions() {
        assert!(matches!(segre_generators(&[2], DEFAULT_MAX_AMPS), Err(Error::TooFewModes { .. })));
        assert!(matches!(segre_generators(&[2, 1], DEFAULT_MAX_AMPS), Err(Error::InvalidDimension { .. })));
        assert!(matches!(
            segre_generators(&[2; 13], DEFAULT_MAX_AMPS),
            Err(Error::TooLarge { size: 8192, cap: 4096, .. })
        ));
    }

    #[test]
    fn three_qubit_generators_vanish_on_product() {
        let ideal = segre_generators(&[2, 2, 2], DEFAULT_MAX_AMPS).unwrap();
        // Duplicates across flattenings are merged: 3 splits x 6 minors = 18 raw.
        assert!(ideal.len() < 18);
        let f = |x: i64, y: i64| LocalState::new(vec![GaussRat::from_ints(x, 0), GaussRat::from_ints(y, 0)]).unwrap();
        let s = segre_map(&[f(1, 2), f(3, 1), f(1, 1)]).unwrap();
        assert!(ideal.vanishes_at(&s).unwrap());
        for g in ideal.generators() {
            assert_eq!(g.is_homogeneous(), crate::poly::Homogeneity::Degree(2));
        }
        assert!(!ideal.vanishes_at(&fixtures::ghz_exact(3)).unwrap());
    }

    #[test]
    fn generators_vanish_formally_on_segre_parametrization() {
        // a[i1..im] -> prod_j x_{j, i_j} with x encoded as P[j+1, i+1]
        for dims in [vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![3, 2, 2]] {
            let ideal = segre_generators(&dims, DEFAULT_MAX_AMPS).unwrap();
            for g in ideal.generators() {
                let image = g.substitute(|v| match v {
                    VarId::State(index) => index
                        .iter()
                        .enumerate()
                        .map(|(j, &i)| MultiPoly::var(VarId::Plu(vec![j + 1, i + 1])))
                        .fold(MultiPoly::constant(GaussRat::one()), |acc, x| &acc * &x),
                    VarId::Plu(_) => unreachable!(),
                });
                assert!(image.is_zero(), "{g} does not vanish on the parametrization");
            }
        }
    }

    #[test]
    fn generators_are_sign_canonical_and_unique() {
        let ideal = segre_generators(&[2, 3, 2], DEFAULT_MAX_AMPS).unwrap();
        for g in ideal.generators() {
            assert_eq!(&g.sign_canonical(), g);
        }
        let unique: BTreeSet<&MultiPoly> = ideal.generators().iter().collect();
        assert_eq!(unique.len(), ideal.len());
    }

    #[test]
    fn minor_sum_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = Flattening::from_rows(2, 2, vec![c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((minor_sum(&bell) - 0.25).abs() < 1e-15);
        assert!((minor_sum_gram(&bell).re - 0.25).abs() < 1e-15);

        let rank1 = Flattening::from_rows(2, 3, vec![c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0)]).unwrap();
        assert_eq!(minor_sum(&rank1), 0.0);

        let ghz = fixtures::ghz(3);
        let f = flatten(&ghz, &Bipartition::new(vec![1], 3).unwrap()).unwrap();
        assert!((minor_sum(&f) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn minor_sum_exact_paths_agree() {
        let entries: Vec<GaussRat> = (0..12).map(|k| GaussRat::from_fracs(k * k - 7, 3, 2 - k, 5)).collect();
        let f = Flattening::from_rows(3, 4, entries).unwrap();
        assert_eq!(minor_sum_gram(&f), minor_sum_enumerated(&f));
        assert_eq!(minor_sum_gram(&f.transpose()), minor_sum_enumerated(&f));
    }

    #[test]
    fn large_near_rank_one_uses_stable_route() {
        // 2 x 256 rank-one matrix: beyond the enumeration limit, Gram cancels.
        let u = [c(0.6), Complex64::new(0.0, 0.8)];
        let v: Vec<Complex64> = (0..256).map(|k| Complex64::from_polar(1.0 / 16.0, k as f64 * 0.37)).collect();
        let entries: Vec<Complex64> = u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect();
        let f = Flattening::from_rows(2, 256, entries).unwrap();
        assert!(minor_sum(&f) < 1e-28, "{}", minor_sum(&f));
    }

    #[test]
    fn large_generic_matrix_matches_enumeration() {
        let entries: Vec<Complex64> = (0..2 * 300)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos()))
            .collect();
        let f = Flattening::from_rows(2, 300, entries).unwrap();
        let fast = minor_sum(&f);
        let slow = minor_sum_enumerated(&f).re;
        assert!((fast - slow).abs() <= 1e-9 * slow);
        assert!((minor_sum_singular(&f) - slow).abs() <= 1e-9 * slow);
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence2(&fixtures::bell()).unwrap(), 1.0);
        let s01 = PureState::new(vec![2, 2], vec![c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(concurrence2(&s01).unwrap(), 0.0);
        let plus = PureState::new(vec![2, 2], vec![c(0.5); 4]).unwrap();
        assert_eq!(concurrence2(&plus).unwrap(), 0.0);
        assert!(matches!(concurrence2(&fixtures::ghz(3)), Err(Error::WrongShape(_))));
    }

    #[test]
    fn generalized_concurrence_golden_values() {
        let ghz = generalized_concurrence(&fixtures::ghz(3));
        assert!((ghz.value - 1.0).abs() < 1e-12);
        for term in ghz.per_bipartition.values() {
            assert!((term - 0.25).abs() < 1e-15);
        }
        let w = generalized_concurrence(&fixtures::w(3));
        assert!((w.value - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
        for term in w.per_bipartition.values() {
            assert!((term - 2.0 / 9.0).abs() < 1e-15);
        }
        assert_eq!(w.per_bipartition.len(), 3);
        let bell = fixtures::bell();
        assert_eq!(generalized_concurrence(&bell).value, concurrence2(&bell).unwrap());
    }

    #[test]
    fn single_mode_has_zero_measure() {
        let s = PureState::new(vec![3], vec![c(1.0), c(2.0), c(0.5)]).unwrap();
        let r = generalized_concurrence(&s);
        assert_eq!(r.value, 0.0);
        assert!(r.per_bipartition.is_empty());
    }

    #[test]
    fn separability_examples() {
        let bell = fixtures::bell();
        let b1 = Bipartition::new(vec![1], 2).unwrap();
        assert!(!is_bipartite_separable(&bell, &b1, 1e-10).unwrap());

        let psi = PureState::new(
            vec![2, 2, 2],
            vec![c(1.0), Complex64::new(0.3, -0.2), c(-2.0), c(0.5), c(0.0), c(0.0), c(0.0), c(0.0)],
        )
        .unwrap();
        assert!(is_bipartite_separable(&psi, &Bipartition::new(vec![1], 3).unwrap(), 1e-10).unwrap());
        assert!(!is_fully_separable(&psi, 1e-10));

        let ghz = fixtures::ghz(3);
        assert!(!is_bipartite_separable(&ghz, &Bipartition::new(vec![1, 2], 3).unwrap(), 1e-10).unwrap());
        assert!(!is_fully_separable(&fixtures::w(3), 1e-10));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell_zero = PureState::new(
            vec![2, 2, 2],
            vec![c(h), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0), c(h), c(0.0)],
        )
        .unwrap();
        assert!(!is_fully_separable(&bell_zero, 1e-10));
        assert!(!is_bipartite_separable(&bell_zero, &Bipartition::new(vec![1], 3).unwrap(), 1e-10).unwrap());
        assert!(is_bipartite_separable(&bell_zero, &Bipartition::new(vec![1, 2], 3).unwrap(), 1e-10).unwrap());
    }

    #[test]
    fn exact_separability() {
        let f = |x: i64, y: i64| LocalState::new(vec![GaussRat::from_ints(x, y), GaussRat::from_ints(y, -x)]).unwrap();
        let s = segre_map(&[f(1, 2), f(3, 1), f(0, 1)]).unwrap();
        assert!(is_fully_separable_exact(&s));
        assert!(!is_fully_separable_exact(&fixtures::ghz_exact(3)));
        let mut amps = s.amps().to_vec();
        amps[5] = amps[5].clone() + GaussRat::from_fracs(1, 1_000_000, 0, 1);
        assert!(!is_fully_separable_exact(&PureState::new(vec![2, 2, 2], amps).unwrap()));
    }
}
