//! Type specifications: per-class count vectors and their enumeration.
//!
//! A specification prescribes, for each type class, how many elements take
//! part in an exchange. The search enumerates radius vectors delta with
//! total between 1 and k, each clipped to its class size, in lexicographic
//! order and without duplicates.

use crate::partition::TypePartition;

/// A per-class count vector of length tau.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TypeSpec {
    counts: Vec<usize>,
}

impl TypeSpec {
    pub fn new(counts: Vec<usize>) -> Self {
        TypeSpec { counts }
    }

    pub fn zero(tau: usize) -> Self {
        TypeSpec {
            counts: vec![0; tau],
        }
    }

    /// Unit vector selecting one element of class `j`.
    pub fn unit(tau: usize, j: usize) -> Self {
        let mut counts = vec![0; tau];
        counts[j] += 1;
        TypeSpec { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, j: usize) -> usize {
        self.counts[j]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &TypeSpec) -> bool {
        self.counts.len() == other.counts.len()
            && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; `None` if any component would go negative.
    pub fn checked_sub(&self, other: &TypeSpec) -> Option<TypeSpec> {
        if other.le(self) {
            Some(TypeSpec {
                counts: self
                    .counts
                    .iter()
                    .zip(&other.counts)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }
}

impl std::fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Subtractive and additive compatibility of a removal/insertion pair with
/// a bin content: the content must hold `p_j` elements of each class and
/// its complement must hold `q_j`.
pub fn is_compatible(
    p: &TypeSpec,
    q: &TypeSpec,
    bin_contents: &[usize],
    types: &TypePartition,
) -> bool {
    let hist = types.histogram(bin_contents);
    hist_compatible(p, q, &hist, types.class_sizes())
}

/// Compatibility phrased on a precomputed content histogram.
pub(crate) fn hist_compatible(
    p: &TypeSpec,
    q: &TypeSpec,
    hist: &[usize],
    class_sizes: &[usize],
) -> bool {
    debug_assert_eq!(p.len(), hist.len());
    debug_assert_eq!(q.len(), hist.len());
    (0..hist.len()).all(|j| p.get(j) <= hist[j] && q.get(j) <= class_sizes[j] - hist[j])
}

/// Lexicographically ascending stream of radius vectors: every delta with
/// `1 <= total <= k` and `delta_j <= |class j|`, each exactly once.
pub fn enumerate_deltas(types: &TypePartition, k: usize) -> DeltaIter {
    let caps: Vec<usize> = types.class_sizes().iter().map(|&s| s.min(k)).collect();
    DeltaIter {
        caps,
        k,
        current: vec![0; types.tau()],
        sum: 0,
        done: k == 0 || types.tau() == 0,
    }
}

/// Iterator produced by [`enumerate_deltas`].
#[derive(Clone, Debug)]
pub struct DeltaIter {
    caps: Vec<usize>,
    k: usize,
    current: Vec<usize>,
    sum: usize,
    done: bool,
}

impl Iterator for DeltaIter {
    type Item = TypeSpec;

    fn next(&mut self) -> Option<TypeSpec> {
        if self.done {
            return None;
        }
        // Advance the odometer: bumping position i and zeroing the suffix
        // produces the lexicographic successor with the smallest tail; if
        // that already violates a bound, no tail completion can help, so
        // carry further left.
        let tau = self.current.len();
        let mut i = tau;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.sum -= self.current[i..].iter().sum::<usize>() - self.current[i];
            // Suffix right of i is now conceptually zero.
            for c in &mut self.current[i + 1..] {
                *c = 0;
            }
            self.current[i] += 1;
            self.sum += 1;
            if self.current[i] <= self.caps[i] && self.sum <= self.k {
                return Some(TypeSpec::new(self.current.clone()));
            }
            self.sum -= self.current[i];
            self.current[i] = 0;
        }
    }
}

/// Calls `body` for every vector `v <= bound` componentwise, in
/// lexicographically ascending order, including the zero vector.
pub(crate) fn for_each_below(bound: &[usize], mut body: impl FnMut(&[usize])) {
    let tau = bound.len();
    let mut v = vec![0usize; tau];
    loop {
        body(&v);
        let mut i = tau;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < bound[i] {
                v[i] += 1;
                for c in &mut v[i + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}
