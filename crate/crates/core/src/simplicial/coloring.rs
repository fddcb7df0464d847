use std::fmt;

use crate::error::{Error, Result};

use super::complex::{Simplex, VertexId};

/// Vertex labels in `{±1, ..., ±N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceColoring {
    labels: Vec<i32>,
    n_colors: u32,
}

impl NiceColoring {
    /// `n_colors` defaults to the largest absolute label. Axioms are checked
    /// by validation; this only rejects obviously malformed labels.
    pub fn new(labels: Vec<i32>, n_colors: Option<u32>) -> Result<Self> {
        let max_abs = labels.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0);
        let n_colors = n_colors.unwrap_or(max_abs);
        if n_colors == 0 && !labels.is_empty() {
            return Err(Error::Input("coloring needs at least one color".into()));
        }
        Ok(Self { labels, n_colors })
    }

    pub fn label(&self, v: VertexId) -> i32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    /// Number of colors `N`.
    pub fn n_colors(&self) -> u32 {
        self.n_colors
    }

    pub fn labels_of<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = i32> + 'a {
        s.vertices().iter().map(|v| self.labels[*v])
    }

    /// Alternating number of a simplex.
    pub fn alt(&self, s: &Simplex) -> usize {
        alt_number(self.labels_of(s))
    }

    /// Image of a simplex under the induced map to the cross-polytope boundary.
    pub fn lambda_image(&self, s: &Simplex) -> Result<SignedIndexSet> {
        SignedIndexSet::new(self.labels_of(s).collect())
    }
}

/// Number of sign changes of the labels ordered by absolute value.
///
/// Repeated labels collapse first, so the count does not depend on how
/// vertices with equal labels are ordered. The empty sequence has `Alt = 0`.
pub fn alt_number(labels: impl IntoIterator<Item = i32>) -> usize {
    let mut ls: Vec<i32> = labels.into_iter().collect();
    ls.sort_by_key(|l| (l.unsigned_abs(), *l));
    ls.dedup();
    ls.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count()
}

/// A face of the boundary of the cross-polytope: nonzero integers with
/// pairwise distinct absolute values, kept sorted by absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedIndexSet(Vec<i32>);

impl SignedIndexSet {
    pub fn new(mut labels: Vec<i32>) -> Result<Self> {
        labels.sort_by_key(|l| (l.unsigned_abs(), *l));
        labels.dedup();
        if labels.contains(&0) {
            return Err(Error::Input("label 0 is not a cross-polytope vertex".into()));
        }
        if let Some(w) = labels.windows(2).find(|w| w[0] == -w[1]) {
            return Err(Error::Input(format!("labels {} and {} are antipodal", w[0], w[1])));
        }
        Ok(Self(labels))
    }

    pub fn labels(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alt(&self) -> usize {
        alt_number(self.0.iter().copied())
    }

    /// Sign vector of length `n`: entry `|l| - 1` carries the sign of `l`.
    pub fn sign_vector(&self, n: usize) -> Vec<i8> {
        let mut out = vec![0i8; n];
        for l in &self.0 {
            out[l.unsigned_abs() as usize - 1] = if *l > 0 { 1 } else { -1 };
        }
        out
    }
}

impl fmt::Display for SignedIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| format!("{l:+}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_numbers() {
        assert_eq!(alt_number([-1, 2, 2, 3, -4]), 2);
        assert_eq!(alt_number([-1, 2, -3, 4]), 3);
        assert_eq!(alt_number([1, 5, 3]), 0);
        assert_eq!(alt_number([]), 0);
        assert_eq!(alt_number([4, -1, 3, 2, 2]), 1);
        assert_eq!(alt_number([4, -1, -3, 2, 2]), 3);
    }

    #[test]
    fn image_collapses_duplicates() {
        let img = SignedIndexSet::new(vec![-1, 2, 2, 3, -4]).unwrap();
        assert_eq!(img.labels(), &[-1, 2, 3, -4]);
        assert_eq!(img.alt(), 2);
        assert_eq!(img.to_string(), "{-1,+2,+3,-4}");
        assert_eq!(img.sign_vector(5), vec![-1, 1, 1, -1, 0]);
        assert!(SignedIndexSet::new(vec![3, 1, -3]).is_err());
        assert!(SignedIndexSet::new(vec![0]).is_err());
    }

    #[test]
    fn default_color_count() {
        let c = NiceColoring::new(vec![1, -3, 2], None).unwrap();
        assert_eq!(c.n_colors(), 3);
        let c = NiceColoring::new(vec![1, -1], Some(4)).unwrap();
        assert_eq!(c.n_colors(), 4);
    }
}
