use std::collections::BTreeMap;

use super::labeled::LabeledComplex;

/// Counts of simplices keyed by `(dimension, Alt)`.
pub type AltHistogram = BTreeMap<(usize, usize), usize>;

/// Census of all nonempty simplices by dimension and alternating number.
/// With `paired`, each antipodal pair is counted once.
pub fn alt_histogram(lc: &LabeledComplex, paired: bool) -> AltHistogram {
    let mut hist = AltHistogram::new();
    for s in lc.complex.simplices() {
        if paired && !lc.is_pair_representative(s) {
            continue;
        }
        *hist.entry((s.len() - 1, lc.alt(s))).or_insert(0) += 1;
    }
    hist
}

pub fn max_alt(lc: &LabeledComplex) -> usize {
    lc.complex.simplices().iter().map(|s| lc.alt(s)).max().unwrap_or(0)
}

/// Outcome of the Ky Fan parity count on an `n`-sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KyFanParity {
    pub n: usize,
    /// `α(k_1, -k_2, k_3, ...)` for every pattern that occurs.
    pub alpha: BTreeMap<Vec<i32>, usize>,
    /// Sum of all `α`, i.e. the number of alternating antipodal pairs.
    pub total: usize,
    pub parity: u8,
    /// Set when `n + 1 > N`, in which case no pattern can exist.
    pub obstruction: Option<String>,
}

/// Counts `n`-simplices bijectively colored by `k_1, -k_2, k_3, ..., (-1)^n k_{n+1}`
/// with `k_1 < ... < k_{n+1}`.
///
/// Patterns start with a positive label, so of each antipodal pair exactly the
/// member whose smallest-magnitude label is positive is counted.
pub fn kyfan_parity(lc: &LabeledComplex, n: usize) -> KyFanParity {
    let n_colors = lc.coloring.n_colors() as usize;
    if n + 1 > n_colors {
        return KyFanParity {
            n,
            alpha: BTreeMap::new(),
            total: 0,
            parity: 0,
            obstruction: Some(format!(
                "n + 1 = {} exceeds the number of colors N = {n_colors}; a nice coloring forces n < N",
                n + 1
            )),
        };
    }
    let mut alpha = BTreeMap::new();
    for s in lc.complex.simplices_of_dim(n) {
        let mut labels: Vec<i32> = lc.coloring.labels_of(s).collect();
        labels.sort_by_key(|l| l.unsigned_abs());
        let bijective = labels.windows(2).all(|w| w[0].unsigned_abs() < w[1].unsigned_abs());
        let alternating = labels
            .iter()
            .enumerate()
            .all(|(idx, l)| (*l > 0) == (idx % 2 == 0));
        if bijective && alternating {
            *alpha.entry(labels).or_insert(0) += 1;
        }
    }
    let total = alpha.values().sum::<usize>();
    KyFanParity { n, alpha, total, parity: (total % 2) as u8, obstruction: None }
}
