//! Zero-set cell complexes `Z_i = Λ^{-1}(e_{n+i-1})`.
//!
//! A simplex `σ` of the total space is mapped linearly onto the cross-polytope
//! by its labels. Points of `σ` are barycentric vectors `b >= 0, Σb = 1`, and
//! `b` lies over `e_j` iff `A b = 0`, where column `v` of `A` is
//! `sgn(label v) · col_{|label v|}(M_j)`. Everything is solved in these
//! coordinates, so repeated labels need no special treatment.

use std::collections::{BTreeMap, BTreeSet};

use crate::flag::{closed_face_meets_plane, GenericFlag, SignVector};
use crate::linalg::{LinearSystem, Matrix};
use crate::scalar::Scalar;
use crate::simplicial::{LabeledComplex, NiceColoring, Simplex};
use crate::z2::height_of_t;

/// `Z_i ∩ σ` for one carrier simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct ZCell<T> {
    pub carrier: Simplex,
    pub level: usize,
    /// Affine dimension of the polytope.
    pub dim: usize,
    /// Carrier vertices whose barycentric coordinate is positive somewhere on the cell.
    pub positive_vertices: Vec<usize>,
    /// A point of the cell in barycentric coordinates of the carrier, positive
    /// exactly on `positive_vertices`.
    pub point: Vec<T>,
}

impl<T> ZCell<T> {
    /// Whether the cell meets the relative interior of its carrier.
    pub fn is_interior(&self) -> bool {
        self.positive_vertices.len() == self.carrier.len()
    }
}

/// `Alt(σ) >= n + i`.
pub fn is_effective(simplex: &Simplex, coloring: &NiceColoring, n: usize, i: usize) -> bool {
    coloring.alt(simplex) >= n + i
}

/// The matrix `A` with `b ∈ Z_i ∩ σ` iff `A b = 0` (plus `b >= 0, Σb = 1`).
pub fn barycentric_matrix<T: Scalar>(
    simplex: &Simplex,
    coloring: &NiceColoring,
    flag: &GenericFlag<T>,
    j: usize,
) -> Matrix<T> {
    let cols: Vec<Vec<T>> = coloring
        .labels_of(simplex)
        .map(|l| {
            let col = flag.column(j, l.unsigned_abs() as usize - 1);
            if l > 0 {
                col
            } else {
                col.into_iter().map(|v| -v).collect()
            }
        })
        .collect();
    Matrix::from_columns(&cols)
}

/// The closed cell `Z_i ∩ σ`, or `None` when it is empty. Requires `n + i >= 1`
/// and a flag reaching level `n + i - 1`.
pub fn zcell_of<T: Scalar>(
    simplex: &Simplex,
    coloring: &NiceColoring,
    flag: &GenericFlag<T>,
    n: usize,
    i: usize,
) -> Option<ZCell<T>> {
    assert!(n + i >= 1, "level n + i must be positive");
    let j = n + i - 1;
    let a = barycentric_matrix(simplex, coloring, flag, j);
    let m = simplex.len();

    // U: coordinates that can be positive. Each probe solves the cone
    // {A b = 0, b >= 0, b_v >= 1}; witnesses mark further coordinates for free.
    let mut positive = vec![false; m];
    let mut point = vec![T::zero(); m];
    for v in 0..m {
        if positive[v] {
            continue;
        }
        let mut sys = LinearSystem::new(m);
        for r in 0..a.rows() {
            sys.equal(a.row(r).to_vec(), T::zero());
        }
        for u in 0..m {
            sys.var_at_least(u, if u == v { T::one() } else { T::zero() });
        }
        if let Some(w) = sys.solve() {
            for (u, wu) in w.iter().enumerate() {
                if wu.is_positive() && !wu.is_negligible() {
                    positive[u] = true;
                }
                point[u] = point[u].clone() + wu.clone();
            }
        }
    }
    let support: Vec<usize> = (0..m).filter(|v| positive[*v]).collect();
    if support.is_empty() {
        return None;
    }
    let total = point.iter().fold(T::zero(), |acc, v| acc + v.clone());
    let point = point.into_iter().map(|v| v / total.clone()).collect();

    let mut rows: Vec<Vec<T>> = (0..a.rows()).map(|r| support.iter().map(|c| a[(r, *c)].clone()).collect()).collect();
    rows.push(vec![T::one(); support.len()]);
    let rank = Matrix::from_rows(rows).rank();

    Some(ZCell { carrier: simplex.clone(), level: i, dim: support.len() - rank, positive_vertices: support, point })
}

/// Cells of `Z_i` indexed by carriers whose relative interior meets the preimage.
#[derive(Debug, Clone, PartialEq)]
pub struct ZComplex<T> {
    pub level: usize,
    pub cells: BTreeMap<Simplex, ZCell<T>>,
    /// Why the complex is empty without any computation, if it is.
    pub note: Option<String>,
}

impl<T: Scalar> ZComplex<T> {
    pub fn from_cells(level: usize, cells: impl IntoIterator<Item = ZCell<T>>) -> Self {
        Self { level, cells: cells.into_iter().map(|c| (c.carrier.clone(), c)).collect(), note: None }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.values().map(|c| c.dim).max()
    }

    pub fn counts_by_dim(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in self.cells.values() {
            *out.entry(c.dim).or_insert(0) += 1;
        }
        out
    }

    /// Cells whose carrier is a codimension-one face of `carrier`.
    pub fn facets_of(&self, carrier: &Simplex) -> Vec<&ZCell<T>> {
        carrier.boundary().filter_map(|f| self.cells.get(&f)).collect()
    }

    /// Number of cells whose carrier has `carrier` as a codimension-one face.
    pub fn cofacet_counts(&self) -> BTreeMap<Simplex, usize> {
        let mut out: BTreeMap<Simplex, usize> = self.cells.keys().map(|k| (k.clone(), 0)).collect();
        for c in self.cells.keys() {
            for f in c.boundary() {
                if let Some(n) = out.get_mut(&f) {
                    *n += 1;
                }
            }
        }
        out
    }
}

/// Builds `Z_i` from every simplex whose relative interior meets `Λ^{-1}(e_{n+i-1})`.
///
/// When `n + i >= N` no simplex can reach `Alt >= n + i`, so the complex is empty
/// and the flag is not consulted.
pub fn build_z_complex<T: Scalar>(lc: &LabeledComplex, flag: &GenericFlag<T>, i: usize) -> crate::Result<ZComplex<T>> {
    let n = lc.meta.n;
    let n_colors = lc.coloring.n_colors() as usize;
    if n + i == 0 {
        return Err(crate::Error::Input("Z_i needs n + i >= 1".into()));
    }
    if n + i >= n_colors {
        return Ok(ZComplex {
            level: i,
            cells: BTreeMap::new(),
            note: Some(format!(
                "empty: n + i = {} but Alt never exceeds N - 1 = {} with N = {n_colors} colors",
                n + i,
                n_colors.saturating_sub(1)
            )),
        });
    }
    let j = n + i - 1;
    if flag.dimension() != n_colors || flag.j_max() < j {
        return Err(crate::Error::InvalidFlag(format!(
            "Z_{i} needs a flag in dimension {n_colors} reaching level {j}, got dimension {} and depth {}",
            flag.dimension(),
            flag.j_max()
        )));
    }
    let cells = lc
        .complex
        .simplices()
        .iter()
        .filter_map(|s| zcell_of(s, &lc.coloring, flag, n, i))
        .filter(ZCell::is_interior);
    Ok(ZComplex::from_cells(i, cells))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PseudomanifoldReport {
    pub expected_dim: usize,
    /// Maximal cells of the wrong dimension, with their dimension.
    pub purity_violations: Vec<(Simplex, usize)>,
    /// Cells of dimension `expected_dim - 1` with a cofacet count other than two.
    pub cofacet_violations: Vec<(Simplex, usize)>,
}

impl PseudomanifoldReport {
    pub fn is_pure(&self) -> bool {
        self.purity_violations.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.purity_violations.is_empty() && self.cofacet_violations.is_empty()
    }
}

pub fn pseudomanifold_check<T: Scalar>(z: &ZComplex<T>, expected_dim: usize) -> PseudomanifoldReport {
    let cofacets = z.cofacet_counts();
    let mut report = PseudomanifoldReport { expected_dim, ..Default::default() };
    for (carrier, cell) in &z.cells {
        let count = cofacets[carrier];
        if count == 0 && cell.dim != expected_dim {
            report.purity_violations.push((carrier.clone(), cell.dim));
        }
        if expected_dim > 0 && cell.dim == expected_dim - 1 && count != 2 {
            report.cofacet_violations.push((carrier.clone(), count));
        }
    }
    report
}

/// Cells whose dimension differs from `dim σ - n - i`, and effective
/// simplices missing from the complex, and carriers that are not effective.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub checked: usize,
    pub wrong_dimension: Vec<(Simplex, usize)>,
    pub missing_cells: Vec<Simplex>,
    pub ineffective_carriers: Vec<Simplex>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.wrong_dimension.is_empty() && self.missing_cells.is_empty() && self.ineffective_carriers.is_empty()
    }
}

pub fn dimension_lemma_check<T: Scalar>(lc: &LabeledComplex, z: &ZComplex<T>) -> LemmaReport {
    let (n, i) = (lc.meta.n, z.level);
    let mut report = LemmaReport::default();
    for s in lc.complex.simplices() {
        let effective = is_effective(s, &lc.coloring, n, i);
        match (z.cells.get(s), effective) {
            (Some(cell), true) => {
                report.checked += 1;
                if cell.dim as isize != s.dim() - (n + i) as isize {
                    report.wrong_dimension.push((s.clone(), cell.dim));
                }
            }
            (Some(_), false) => report.ineffective_carriers.push(s.clone()),
            (None, true) => report.missing_cells.push(s.clone()),
            (None, false) => {}
        }
    }
    report
}

/// Simplices where the three descriptions of `Z_i ∩ σ ≠ ∅` disagree: the
/// barycentric cell, the closed image face against the flag, and `Alt >= n + i`.
pub fn three_way_disagreements<T: Scalar>(lc: &LabeledComplex, flag: &GenericFlag<T>, i: usize) -> Vec<Simplex> {
    let n = lc.meta.n;
    let j = n + i - 1;
    lc.complex
        .simplices()
        .iter()
        .filter(|s| {
            let cell = zcell_of(s, &lc.coloring, flag, n, i).is_some();
            let labels: Vec<i32> = lc.coloring.labels_of(s).collect();
            let face = SignVector::from_labels(flag.dimension(), &labels).expect("nice coloring");
            let meets = closed_face_meets_plane(&face, flag, j);
            let alt = is_effective(s, &lc.coloring, n, i);
            !(cell == meets && meets == alt)
        })
        .cloned()
        .collect()
}

/// Whether `t^{n+i} != 0` in the cohomology of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightHypothesis {
    Holds,
    Fails,
    /// No bundle class was supplied.
    Unknown,
}

impl HeightHypothesis {
    pub fn for_level(lc: &LabeledComplex, i: usize) -> Self {
        match &lc.bundle_class {
            None => Self::Unknown,
            Some(w) => {
                let h = height_of_t(w, lc.meta.n as u32, lc.meta.k as u32) as usize;
                if h >= lc.meta.n + i {
                    Self::Holds
                } else {
                    Self::Fails
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVerdict {
    Pass,
    Fail,
    /// The height hypothesis does not hold or is unknown.
    NotAsserted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveCount {
    pub level: usize,
    /// Dimension `n + i` of the counted simplices.
    pub dim: usize,
    /// Antipodal pairs of `(n+i)`-simplices with `Alt >= n + i`.
    pub pairs: usize,
    /// `k + 1 - i`.
    pub bound: i64,
    pub hypothesis: HeightHypothesis,
    pub verdict: BoundVerdict,
    /// One counted simplex, when any.
    pub witness: Option<Simplex>,
}

pub fn effective_counts(lc: &LabeledComplex, i: usize, hypothesis: HeightHypothesis) -> EffectiveCount {
    let (n, k) = (lc.meta.n, lc.meta.k);
    let dim = n + i;
    let counted: Vec<&Simplex> = lc
        .complex
        .simplices_of_dim(dim)
        .filter(|s| lc.is_pair_representative(s) && is_effective(s, &lc.coloring, n, i))
        .collect();
    let bound = k as i64 + 1 - i as i64;
    let verdict = match hypothesis {
        HeightHypothesis::Holds if counted.len() as i64 >= bound => BoundVerdict::Pass,
        HeightHypothesis::Holds => BoundVerdict::Fail,
        _ => BoundVerdict::NotAsserted,
    };
    EffectiveCount {
        level: i,
        dim,
        pairs: counted.len(),
        bound,
        hypothesis,
        verdict,
        witness: counted.first().map(|s| (*s).clone()),
    }
}

/// Carriers of `Z_{i+1}` that are not carriers of `Z_i`.
pub fn nesting_violations<T: Scalar>(outer: &ZComplex<T>, inner: &ZComplex<T>) -> Vec<Simplex> {
    let outer: BTreeSet<&Simplex> = outer.cells.keys().collect();
    inner.cells.keys().filter(|s| !outer.contains(s)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::build_flag;
    use crate::Rational;

    fn flag(n: usize, j: usize) -> GenericFlag<Rational> {
        build_flag(n, j, None).unwrap()
    }

    #[test]
    fn effectiveness() {
        let c = NiceColoring::new(vec![-1, 2], None).unwrap();
        let s = Simplex::new(vec![0, 1]);
        assert!(is_effective(&s, &c, 1, 0));
        assert!(!is_effective(&s, &c, 1, 1));
        let c = NiceColoring::new(vec![1, -2, 3, -4], None).unwrap();
        assert!(is_effective(&Simplex::new(vec![0, 1, 2, 3]), &c, 3, 0));
        let c = NiceColoring::new(vec![1, -2, 3], None).unwrap();
        assert!(is_effective(&Simplex::new(vec![0, 1, 2]), &c, 1, 1));
    }

    #[test]
    fn edge_gives_a_point() {
        let c = NiceColoring::new(vec![-1, 2], None).unwrap();
        let cell = zcell_of(&Simplex::new(vec![0, 1]), &c, &flag(2, 0), 1, 0).unwrap();
        assert_eq!(cell.dim, 0);
        assert!(cell.is_interior());
        let half = Rational::from_ratio(1, 2);
        assert_eq!(cell.point, vec![half.clone(), half]);
    }

    #[test]
    fn collapsed_triangle_gives_a_segment() {
        let c = NiceColoring::new(vec![-1, 2, 2], None).unwrap();
        let cell = zcell_of(&Simplex::new(vec![0, 1, 2]), &c, &flag(2, 0), 1, 0).unwrap();
        assert_eq!(cell.dim, 1);
        assert!(cell.is_interior());
    }

    #[test]
    fn no_effective_face_means_no_cell() {
        let c = NiceColoring::new(vec![1, 2, 3], None).unwrap();
        assert!(zcell_of(&Simplex::new(vec![0, 1, 2]), &c, &flag(3, 1), 1, 0).is_none());
        // an effective edge makes every coface effective, so the cell is interior
        let c = NiceColoring::new(vec![1, 2, -3], None).unwrap();
        let cell = zcell_of(&Simplex::new(vec![0, 1, 2]), &c, &flag(3, 1), 1, 0).unwrap();
        assert!(cell.is_interior());
        assert_eq!(cell.dim, 1);
    }

    #[test]
    fn isolated_point_is_impure() {
        let cell = ZCell {
            carrier: Simplex::new(vec![0, 1]),
            level: 0,
            dim: 0,
            positive_vertices: vec![0, 1],
            point: vec![Rational::from_ratio(1, 2); 2],
        };
        let z = ZComplex::from_cells(0, [cell]);
        let r = pseudomanifold_check(&z, 1);
        assert!(!r.is_pure());
        assert_eq!(r.purity_violations.len(), 1);
    }
}
