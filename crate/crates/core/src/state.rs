//! Multipartite pure states, bipartitions, flattenings and the Segre map.
//!
//! Amplitudes are stored flat in row-major order with mode 1 most significant:
//! the multi-index `(i1, ..., im)` lives at offset `sum_j i_j * prod_{l>j} dims_l`.
//! States are projective points and are never normalized implicitly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::TooFewModes { needed: 1, got: 0 });
    }
    let mut total: usize = 1;
    for (mode, &dim) in dims.iter().enumerate() {
        if dim < 2 {
            return Err(Error::InvalidDimension { mode: mode + 1, dim });
        }
        total = total.checked_mul(dim).ok_or(Error::TooLarge {
            what: "amplitude count",
            size: usize::MAX,
            cap: usize::MAX,
        })?;
    }
    Ok(total)
}

/// Row-major offset of a multi-index. The caller guarantees the index is in range.
pub(crate) fn offset_of(dims: &[usize], index: &[usize]) -> usize {
    index.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub(crate) fn index_of(dims: &[usize], mut offset: usize) -> Vec<usize> {
    let mut index = vec![0; dims.len()];
    for (slot, &d) in index.iter_mut().zip(dims).rev() {
        *slot = offset % d;
        offset /= d;
    }
    index
}

/// Odometer increment of a row-major multi-index. Returns false on wrap-around.
pub(crate) fn advance(index: &mut [usize], dims: &[usize]) -> bool {
    for (slot, &d) in index.iter_mut().zip(dims).rev() {
        *slot += 1;
        if *slot < d {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A nonzero amplitude tensor over `m` modes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T> {
    dims: Vec<usize>,
    amps: Vec<T>,
}

impl<T: Scalar> PureState<T> {
    /// Validates and wraps the amplitudes without rescaling them.
    pub fn new(dims: Vec<usize>, amps: Vec<T>) -> Result<Self> {
        let expected = check_dims(&dims)?;
        if amps.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amps.len(),
            });
        }
        if let Some(index) = amps.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if amps.iter().all(|a| a.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(PureState { dims, amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[T] {
        &self.amps
    }

    pub fn num_modes(&self) -> usize {
        self.dims.len()
    }

    pub fn offset(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.dims.len() || index.iter().zip(&self.dims).any(|(&i, &d)| i >= d) {
            return Err(Error::IndexOutOfRange(format!(
                "multi-index {index:?} for dims {:?}",
                self.dims
            )));
        }
        Ok(offset_of(&self.dims, index))
    }

    pub fn amp(&self, index: &[usize]) -> Result<&T> {
        Ok(&self.amps[self.offset(index)?])
    }

    /// `sum |a_i|^2`, carried in the backend.
    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// The backend's canonical representative of this projective point.
    pub fn projective_rep(&self) -> PureState<T> {
        PureState {
            dims: self.dims.clone(),
            amps: T::projective_rep(&self.amps),
        }
    }

    pub fn scale(&self, factor: &T) -> Result<PureState<T>> {
        PureState::new(
            self.dims.clone(),
            self.amps.iter().map(|a| a.clone() * factor.clone()).collect(),
        )
    }

    /// Reorders modes so that new mode `k` is old mode `perm[k]` (0-based).
    pub fn permute_modes(&self, perm: &[usize]) -> Result<PureState<T>> {
        let m = self.dims.len();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::IndexOutOfRange(format!(
                "{perm:?} is not a permutation of {m} modes"
            )));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut amps = Vec::with_capacity(self.amps.len());
        let mut new_index = vec![0; m];
        let mut old_index = vec![0; m];
        loop {
            for (k, &p) in perm.iter().enumerate() {
                old_index[p] = new_index[k];
            }
            amps.push(self.amps[offset_of(&self.dims, &old_index)].clone());
            if !advance(&mut new_index, &new_dims) {
                break;
            }
        }
        Ok(PureState {
            dims: new_dims,
            amps,
        })
    }

    pub fn to_complex(&self) -> PureState<Complex64> {
        PureState {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(Scalar::to_complex).collect(),
        }
    }
}

impl PureState<Complex64> {
    /// Unit 2-norm representative with the same direction.
    pub fn normalize(&self) -> PureState<Complex64> {
        let norm = self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        PureState {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a / norm).collect(),
        }
    }
}

/// One mode's amplitude vector; the basis labels are its positions.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalState<T> {
    vec: Vec<T>,
}

impl<T: Scalar> LocalState<T> {
    pub fn new(vec: Vec<T>) -> Result<Self> {
        check_dims(&[vec.len()])?;
        if let Some(index) = vec.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if vec.iter().all(|a| a.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(LocalState { vec })
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vec(&self) -> &[T] {
        &self.vec
    }

    pub fn into_vec(self) -> Vec<T> {
        self.vec
    }
}

/// Tensor product of local states: amplitude `(i1..im)` is `prod_j f_j[i_j]`.
pub fn segre_map<T: Scalar>(factors: &[LocalState<T>]) -> Result<PureState<T>> {
    if factors.len() < 2 {
        return Err(Error::TooFewModes {
            needed: 2,
            got: factors.len(),
        });
    }
    let dims: Vec<usize> = factors.iter().map(LocalState::dim).collect();
    let mut amps = vec![T::one()];
    for factor in factors {
        amps = amps
            .iter()
            .flat_map(|a| factor.vec.iter().map(move |f| a.clone() * f.clone()))
            .collect();
    }
    PureState::new(dims, amps)
}

/// Recovers local factors of a product state by max-pivot fiber extraction.
///
/// The fiber of mode `j` through the largest-modulus amplitude is proportional
/// to factor `j`. The reconstruction residual is measured on the backend's
/// projective representative (unit norm for floats); exceeding `tol` yields
/// [`Error::NotProduct`]. In the exact backend a zero `tol` demands exact
/// reconstruction.
pub fn local_factors<T: Scalar>(state: &PureState<T>, tol: f64) -> Result<Vec<LocalState<T>>> {
    let rep = state.projective_rep();
    let dims = &rep.dims;
    let amps = &rep.amps;

    let mut pivot = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, a) in amps.iter().enumerate() {
        let modulus = if a.is_zero() { -1.0 } else { a.modulus() };
        if modulus > best {
            best = modulus;
            pivot = i;
        }
    }
    let pivot_index = index_of(dims, pivot);
    let pivot_amp = amps[pivot].clone();

    let fibers: Vec<Vec<T>> = (0..dims.len())
        .map(|j| {
            let mut index = pivot_index.clone();
            (0..dims[j])
                .map(|i| {
                    index[j] = i;
                    amps[offset_of(dims, &index)].clone() / pivot_amp.clone()
                })
                .collect()
        })
        .collect();

    let mut residual: f64 = 0.0;
    let mut index = vec![0; dims.len()];
    for a in amps {
        let product = index
            .iter()
            .enumerate()
            .fold(pivot_amp.clone(), |acc, (j, &i)| acc * fibers[j][i].clone());
        let diff = product - a.clone();
        if !diff.is_zero() {
            residual = residual.max(diff.modulus().max(f64::MIN_POSITIVE));
        }
        advance(&mut index, dims);
    }
    if residual > tol {
        return Err(Error::NotProduct { residual });
    }

    fibers
        .into_iter()
        .map(|f| LocalState::new(T::projective_rep(&f)))
        .collect()
}

/// An unordered split of modes `{1..m}` into `(A, A^c)`, both nonempty.
///
/// `left` holds `A` as 1-based strictly increasing mode numbers. Any proper
/// nonempty `A` is accepted; the canonical form is the one with `1 ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    left: Vec<usize>,
    modes: usize,
}

impl Bipartition {
    pub fn new(left: Vec<usize>, modes: usize) -> Result<Self> {
        let bad = |why: &str| Err(Error::IndexOutOfRange(format!("bipartition {left:?} of {modes} modes: {why}")));
        if left.is_empty() {
            return bad("left side is empty");
        }
        if left.windows(2).any(|w| w[0] >= w[1]) {
            return bad("modes must be strictly increasing");
        }
        if left[0] < 1 || *left.last().unwrap() > modes {
            return bad("mode out of range");
        }
        if left.len() == modes {
            return bad("left side covers every mode");
        }
        Ok(Bipartition { left, modes })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> Vec<usize> {
        (1..=self.modes).filter(|k| !self.left.contains(k)).collect()
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn is_canonical(&self) -> bool {
        self.left[0] == 1
    }

    /// The same split with mode 1 on the left.
    pub fn canonical(&self) -> Bipartition {
        if self.is_canonical() {
            self.clone()
        } else {
            Bipartition {
                left: self.right(),
                modes: self.modes,
            }
        }
    }

    /// The same split with the sides swapped.
    pub fn complement(&self) -> Bipartition {
        Bipartition {
            left: self.right(),
            modes: self.modes,
        }
    }

    /// Relabels modes under `perm` (new mode `k` is old mode `perm[k]`, 0-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Bipartition> {
        let mut left: Vec<usize> = (0..perm.len())
            .filter(|&k| perm.get(k).is_some_and(|&p| self.left.contains(&(p + 1))))
            .map(|k| k + 1)
            .collect();
        left.sort_unstable();
        Bipartition::new(left, self.modes)
    }

    /// All `2^(m-1) - 1` canonical bipartitions of `m >= 2` modes, sorted.
    pub fn all_canonical(modes: usize) -> Vec<Bipartition> {
        if modes < 2 {
            return Vec::new();
        }
        let rest = modes - 1;
        let mut out: Vec<Bipartition> = (0u64..(1u64 << rest) - 1)
            .map(|mask| {
                let mut left = vec![1];
                left.extend((0..rest).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
                Bipartition { left, modes }
            })
            .collect();
        out.sort();
        out
    }
}

/// The matrix view of a state under a bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct Flattening<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Flattening<T> {
    /// Builds a matrix from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::WrongShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Flattening { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Flattening<T> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Flattening {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Flattening<U> {
        Flattening {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Offsets into the state's amplitude list laid out as the flattening matrix.
pub(crate) fn flatten_offsets(dims: &[usize], b: &Bipartition) -> Result<(usize, usize, Vec<usize>)> {
    if b.modes() != dims.len() {
        return Err(Error::IndexOutOfRange(format!(
            "bipartition of {} modes applied to a {}-mode state",
            b.modes(),
            dims.len()
        )));
    }
    let left: Vec<usize> = b.left().iter().map(|k| k - 1).collect();
    let right: Vec<usize> = b.right().iter().map(|k| k - 1).collect();
    let left_dims: Vec<usize> = left.iter().map(|&k| dims[k]).collect();
    let right_dims: Vec<usize> = right.iter().map(|&k| dims[k]).collect();
    let rows: usize = left_dims.iter().product();
    let cols: usize = right_dims.iter().product();

    let mut offsets = Vec::with_capacity(rows * cols);
    let mut full = vec![0; dims.len()];
    let mut r_index = vec![0; left.len()];
    loop {
        for (&k, &i) in left.iter().zip(&r_index) {
            full[k] = i;
        }
        let mut c_index = vec![0; right.len()];
        loop {
            for (&k, &i) in right.iter().zip(&c_index) {
                full[k] = i;
            }
            offsets.push(offset_of(dims, &full));
            if !advance(&mut c_index, &right_dims) {
                break;
            }
        }
        if !advance(&mut r_index, &left_dims) {
            break;
        }
    }
    Ok((rows, cols, offsets))
}

/// Rows indexed by the modes of `A` (row-major in increasing mode order),
/// columns by the modes of `A^c`.
pub fn flatten<T: Scalar>(state: &PureState<T>, b: &Bipartition) -> Result<Flattening<T>> {
    let (rows, cols, offsets) = flatten_offsets(state.dims(), b)?;
    Ok(Flattening {
        rows,
        cols,
        entries: offsets.into_iter().map(|o| state.amps[o].clone()).collect(),
    })
}
