//! Plücker coordinates, quadratic Plücker relations and the Plücker measure.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, VarId};
use crate::scalar::{GaussRat, Scalar};
use crate::segre::det2;
use crate::state::{flatten, Bipartition, Flattening, PureState};

/// Default cap on `C(N, k)` for relation generation.
pub const DEFAULT_MAX_CHOOSE: usize = 10_000;

/// `C(n, k)`, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All strictly increasing `k`-subsets of `1..=n`, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Rightmost position that can still move up.
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - (k - 1 - p)) else {
            return out;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

/// Sorts an index sequence, returning the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // Insertion sort; each adjacent swap flips the sign.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Determinant by elimination with largest-modulus pivoting.
pub fn determinant<T: Scalar>(m: &Flattening<T>) -> Result<T> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::WrongShape(format!("determinant of a {}x{} matrix", n, m.cols())));
    }
    match n {
        0 => return Ok(T::one()),
        1 => return Ok(m.get(0, 0).clone()),
        2 => return Ok(det2(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1))),
        _ => {}
    }
    let mut a: Vec<T> = m.entries().to_vec();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r * n + col].is_zero())
            .max_by(|&r, &s| a[r * n + col].modulus().total_cmp(&a[s * n + col].modulus()));
        let Some(p) = pivot else {
            return Ok(T::zero());
        };
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
            }
            det = -det;
        }
        let piv = a[col * n + col].clone();
        det = det * piv.clone();
        for r in col + 1..n {
            let factor = a[r * n + col].clone() / piv.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = factor.clone() * a[col * n + c].clone();
                a[r * n + c] = a[r * n + c].clone() - delta;
            }
        }
    }
    Ok(det)
}

/// The maximal minors `P_I` of a `k x N` matrix, keyed by increasing `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerSet<T> {
    k: usize,
    n: usize,
    coords: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> PlueckerSet<T> {
    /// Wraps explicit coordinates; every increasing `k`-subset of `1..=n` must be present.
    pub fn from_coords(k: usize, n: usize, coords: BTreeMap<Vec<usize>, T>) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::WrongShape(format!("need 0 < k < N, got k={k}, N={n}")));
        }
        let expected = binomial(n, k);
        let valid = coords.len() == expected
            && coords
                .keys()
                .all(|i| i.len() == k && i.windows(2).all(|w| w[0] < w[1]) && i[0] >= 1 && i[k - 1] <= n);
        if !valid {
            return Err(Error::WrongShape(format!(
                "Pluecker set for k={k}, N={n} needs exactly the {expected} increasing subsets"
            )));
        }
        Ok(PlueckerSet { k, n, coords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinates sorted by subset.
    pub fn coords(&self) -> &BTreeMap<Vec<usize>, T> {
        &self.coords
    }

    /// `P` at an arbitrary index sequence: the sorted coordinate times the
    /// permutation sign, or zero when an index repeats.
    pub fn get(&self, indices: &[usize]) -> Result<T> {
        if indices.len() != self.k || indices.iter().any(|&i| i == 0 || i > self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "Pluecker index {indices:?} for k={}, N={}",
                self.k, self.n
            )));
        }
        Ok(match sort_with_sign(indices) {
            None => T::zero(),
            Some((sorted, sign)) => {
                let v = self.coords[&sorted].clone();
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
        })
    }
}

/// Maximal minors of a `k x N` matrix (`k < N`).
pub fn pluecker_coordinates<T: Scalar>(m: &Flattening<T>) -> Result<PlueckerSet<T>> {
    let (k, n) = (m.rows(), m.cols());
    if k == 0 || k >= n {
        return Err(Error::WrongShape(format!("Pluecker coordinates need k < N, got {k}x{n}")));
    }
    Ok(maximal_minors(m))
}

/// Maximal minors for any `k <= N`; the square case has the single minor `P_{1..k}`.
fn maximal_minors<T: Scalar>(m: &Flattening<T>) -> PlueckerSet<T> {
    let (k, n) = (m.rows(), m.cols());
    let subsets = k_subsets(n, k);
    let values: Vec<T> = subsets
        .par_iter()
        .map(|cols| {
            let entries = (0..k)
                .flat_map(|r| cols.iter().map(move |&c| m.get(r, c - 1).clone()))
                .collect();
            let sub = Flattening::from_rows(k, k, entries).expect("square submatrix");
            determinant(&sub).expect("square submatrix")
        })
        .collect();
    PlueckerSet {
        k,
        n,
        coords: subsets.into_iter().zip(values).collect(),
    }
}

/// Which `(I, J)` pairs enter relation generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IndexRange {
    /// `i_{k-1} < j_1`: every index of `I` below every index of `J`. Too thin
    /// for `k >= 3` (empty for `G(3, 5)`).
    Ordered,
    /// Any increasing `I` and `J`.
    #[default]
    All,
}

/// One quadratic relation `sum_t (-1)^t P_{I j_t} P_{J \ j_t}`, sign-canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerRelation {
    pub poly: MultiPoly,
    /// The `(k-1)`-sequence of the first pair that produced this relation.
    pub i: Vec<usize>,
    /// The `(k+1)`-sequence of that pair.
    pub j: Vec<usize>,
}

/// A coordinate at an unsorted sequence as a signed monomial, or `None` when
/// an index repeats.
fn signed_var(indices: &[usize]) -> Option<(Monomial, i8)> {
    let (sorted, sign) = sort_with_sign(indices)?;
    Some((Monomial::var(VarId::Plu(sorted)), sign))
}

fn relation_poly(i: &[usize], j: &[usize]) -> MultiPoly {
    let mut terms = Vec::with_capacity(j.len());
    for t in 0..j.len() {
        let mut left = i.to_vec();
        left.push(j[t]);
        let right: Vec<usize> = j.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &x)| x).collect();
        let (Some((lm, ls)), Some((rm, rs))) = (signed_var(&left), signed_var(&right)) else {
            continue;
        };
        // (-1)^t with t counted from 1
        let sign = if (t + 1) % 2 == 0 { 1 } else { -1 } * ls as i64 * rs as i64;
        let m = Monomial::from_factors(lm.factors().iter().chain(rm.factors()).cloned());
        terms.push((m, GaussRat::from_ints(sign, 0)));
    }
    MultiPoly::from_terms(terms)
}

/// The quadratic Plücker relations of `G(k, N)` over the default index range.
pub fn pluecker_relations(k: usize, n: usize, max_choose: usize) -> Result<Vec<PlueckerRelation>> {
    pluecker_relations_with(k, n, max_choose, IndexRange::default())
}

/// Relations for every `(I, J)` in `range`, with zero relations dropped and
/// duplicates (up to sign) merged; sorted by polynomial.
pub fn pluecker_relations_with(
    k: usize,
    n: usize,
    max_choose: usize,
    range: IndexRange,
) -> Result<Vec<PlueckerRelation>> {
    if k == 0 || k >= n {
        return Err(Error::WrongShape(format!("need 1 <= k < N, got k={k}, N={n}")));
    }
    let size = binomial(n, k);
    if size > max_choose {
        return Err(Error::TooLarge {
            what: "C(N, k)",
            size,
            cap: max_choose,
        });
    }
    let js = k_subsets(n, k + 1);
    let per_i: Vec<Vec<PlueckerRelation>> = k_subsets(n, k - 1)
        .into_par_iter()
        .map(|i| {
            let floor = i.last().copied().unwrap_or(0);
            js.iter()
                .filter(|j| range == IndexRange::All || j[0] > floor)
                .filter_map(|j| {
                    let poly = relation_poly(&i, j);
                    (!poly.is_zero()).then(|| PlueckerRelation {
                        poly: poly.sign_canonical(),
                        i: i.clone(),
                        j: j.clone(),
                    })
                })
                .collect()
        })
        .collect();

    let mut seen = BTreeSet::new();
    let mut out: Vec<PlueckerRelation> = per_i
        .into_iter()
        .flatten()
        .filter(|r| seen.insert(r.poly.clone()))
        .collect();
    out.sort_by(|a, b| a.poly.cmp(&b.poly));
    Ok(out)
}

/// Values of the relations at the given coordinates.
pub fn relation_values<T: Scalar>(ps: &PlueckerSet<T>, relations: &[PlueckerRelation]) -> Result<Vec<T>> {
    relations
        .iter()
        .map(|r| {
            r.poly.evaluate_with(|v| match v {
                VarId::Plu(subset) => ps.coords.get(subset).cloned(),
                VarId::State(_) => None,
            })
        })
        .collect()
}

/// Largest `|relation|` over all generated relations; 0 when there are none.
/// Exactly 0 in the rational backend for minor-derived coordinates.
pub fn check_relations<T: Scalar>(ps: &PlueckerSet<T>) -> Result<f64> {
    let relations = pluecker_relations(ps.k, ps.n, usize::MAX)?;
    Ok(relation_values(ps, &relations)?
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.modulus().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max))
}

/// `2 * sqrt(sum_I |P_I|^2)` of the normalized state's single-mode flattening
/// at `pivot` (1-based), read as a `2 x 2^(m-1)` matrix.
///
/// The coordinates of a two-row matrix are exactly its 2x2 minors, so this is
/// the single-split term of the minor-sum measure; for two qubits it equals
/// the concurrence.
pub fn pluecker_measure(state: &PureState<Complex64>, pivot: usize) -> Result<f64> {
    if state.num_modes() < 2 || state.dims().iter().any(|&d| d != 2) {
        return Err(Error::WrongShape(format!(
            "Pluecker measure needs at least two qubits, got dims {:?}",
            state.dims()
        )));
    }
    let b = Bipartition::new(vec![pivot], state.num_modes())?;
    // Two qubits give a square 2x2 matrix whose only coordinate is its determinant.
    let ps = maximal_minors(&flatten(state, &b)?);
    let total: f64 = ps.coords.values().map(|p| p.norm_sqr()).sum();
    let n2: f64 = state.amps().iter().map(|a| a.norm_sqr()).sum();
    Ok(2.0 * total.sqrt() / n2)
}

/// Human-readable record of the conventions behind [`pluecker_measure`].
pub const PLUECKER_MEASURE_CONVENTION: &str =
    "2*sqrt(sum_I |P_I|^2) over the 2x2 minors of the single-mode flattening at the pivot, normalized state";
