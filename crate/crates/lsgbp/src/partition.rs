//! Partitions of the element set: solution candidates and type classes.
//!
//! A solution assigns each of the `n` elements to one of `b` bins; bins are
//! numbered `1..=b` to match the on-disk solution format. The flip metric
//! between two assignments counts the elements they place differently.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An assignment of elements `0..n` to bins `1..=b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BPartition {
    assign: Vec<usize>,
    bins: usize,
}

impl BPartition {
    /// Builds a partition, validating every entry against the bin count.
    pub fn new(assign: Vec<usize>, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidInput("bin count must be at least 1".into()));
        }
        for (x, &i) in assign.iter().enumerate() {
            if i == 0 || i > bins {
                return Err(Error::InvalidInput(format!(
                    "element {x} assigned to bin {i}, outside 1..={bins}"
                )));
            }
        }
        Ok(BPartition { assign, bins })
    }

    /// All elements in bin 1 (handy for single-bin setups).
    pub fn constant(n: usize, bins: usize) -> Result<Self> {
        Self::new(vec![1; n], bins)
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    /// Bin of element `x`.
    pub fn bin_of(&self, x: usize) -> usize {
        self.assign[x]
    }

    /// Elements mapped to `bin`, ascending.
    pub fn preimage(&self, bin: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.assign[x] == bin).collect()
    }

    /// Preimages of all bins; index 0 holds bin 1.
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.bins];
        for (x, &i) in self.assign.iter().enumerate() {
            out[i - 1].push(x);
        }
        out
    }

    /// Copy with element `x` moved to `bin`.
    pub fn with_move(&self, x: usize, bin: usize) -> Result<Self> {
        if bin == 0 || bin > self.bins {
            return Err(Error::InvalidInput(format!(
                "bin {bin} outside 1..={}",
                self.bins
            )));
        }
        let mut assign = self.assign.clone();
        assign[x] = bin;
        Ok(BPartition {
            assign,
            bins: self.bins,
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.bins != other.bins {
            return Err(Error::DimensionMismatch(format!(
                "partitions over n={}, b={} and n={}, b={} are not comparable",
                self.n(),
                self.bins,
                other.n(),
                other.bins
            )));
        }
        Ok(())
    }
}

/// Elements on which the two assignments disagree.
pub fn flip_set(f: &BPartition, g: &BPartition) -> Result<BTreeSet<usize>> {
    f.check_same_shape(g)?;
    Ok((0..f.n()).filter(|&x| f.assign[x] != g.assign[x]).collect())
}

/// Size of the flip set.
pub fn flip_distance(f: &BPartition, g: &BPartition) -> Result<usize> {
    f.check_same_shape(g)?;
    Ok((0..f.n()).filter(|&x| f.assign[x] != g.assign[x]).count())
}

/// A partition of the elements into target-equivalence classes.
///
/// Classes are numbered `0..tau` in order of first occurrence, so equal
/// inputs always produce the identical labeling. The partition need not be
/// the coarsest valid one; any refinement of a valid type partition is
/// itself valid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypePartition {
    class_of: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl TypePartition {
    /// Builds from an element-to-class map; classes must be exactly
    /// `0..tau` with every index used.
    pub fn new(class_of: Vec<usize>) -> Result<Self> {
        let tau = match class_of.iter().max() {
            Some(&m) => m + 1,
            None => 0,
        };
        let mut class_sizes = vec![0usize; tau];
        for &c in &class_of {
            class_sizes[c] += 1;
        }
        if let Some(j) = class_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidInput(format!(
                "class {j} is empty; classes must be contiguous from 0"
            )));
        }
        Ok(TypePartition {
            class_of,
            class_sizes,
        })
    }

    /// Normalizes arbitrary labels to first-occurrence order.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = remap.len();
            let c = *remap.entry(l).or_insert(next);
            class_of.push(c);
        }
        Self::new(class_of).expect("first-occurrence labels are contiguous")
    }

    /// One class per element.
    pub fn singletons(n: usize) -> Self {
        Self::new((0..n).collect()).expect("singleton labels are contiguous")
    }

    /// A single class containing every element.
    pub fn uniform(n: usize) -> Self {
        Self::new(vec![0; n]).expect("uniform labels are contiguous")
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    /// Number of classes.
    pub fn tau(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Members of each class, ascending within a class.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.tau()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Per-class element counts of `subset`.
    pub fn histogram(&self, subset: &[usize]) -> Vec<usize> {
        let mut h = vec![0usize; self.tau()];
        for &x in subset {
            h[self.class_of[x]] += 1;
        }
        h
    }
}
