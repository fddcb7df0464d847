use std::fmt;

use crate::error::{Error, Result};
use crate::z2::TotalClass;

use super::coloring::NiceColoring;
use super::complex::{Simplex, SimplicialComplex, VertexId};

/// Vertex pairing of a free simplicial involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    image: Vec<VertexId>,
}

impl Involution {
    pub fn new(image: Vec<VertexId>) -> Self {
        Self { image }
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.image[v]
    }

    pub fn apply_simplex(&self, s: &Simplex) -> Simplex {
        s.map(|v| self.image[v])
    }

    pub fn image(&self) -> &[VertexId] {
        &self.image
    }
}

/// Fiber sphere dimension `n` and base dimension `k`. Trusted metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleMeta {
    pub n: usize,
    pub k: usize,
}

/// Colored total space of a sphere bundle.
#[derive(Debug, Clone)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    pub involution: Involution,
    pub coloring: NiceColoring,
    pub meta: BundleMeta,
    /// Total Stiefel-Whitney class of the underlying vector bundle, when known.
    pub bundle_class: Option<TotalClass>,
}

impl LabeledComplex {
    pub fn new(
        complex: SimplicialComplex,
        involution: Involution,
        coloring: NiceColoring,
        meta: BundleMeta,
    ) -> Result<Self> {
        let nv = complex.vertex_count();
        if involution.image.len() != nv {
            return Err(Error::Input(format!(
                "involution covers {} vertices, complex has {nv}",
                involution.image.len()
            )));
        }
        if let Some(v) = involution.image.iter().find(|v| **v >= nv) {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if coloring.labels().len() != nv {
            return Err(Error::Input(format!(
                "coloring covers {} vertices, complex has {nv}",
                coloring.labels().len()
            )));
        }
        Ok(Self { complex, involution, coloring, meta, bundle_class: None })
    }

    pub fn with_bundle_class(mut self, w: TotalClass) -> Result<Self> {
        if w.rank() as usize != self.meta.n + 1 {
            return Err(Error::InvalidTotalClass(format!(
                "bundle class rank {} does not match fiber dimension n = {}",
                w.rank(),
                self.meta.n
            )));
        }
        self.bundle_class = Some(w);
        Ok(self)
    }

    pub fn alt(&self, s: &Simplex) -> usize {
        self.coloring.alt(s)
    }

    /// Representative of the antipodal pair `{s, inv(s)}`.
    pub fn is_pair_representative(&self, s: &Simplex) -> bool {
        *s < self.involution.apply_simplex(s)
    }

    pub fn fmt_simplex(&self, s: &Simplex) -> String {
        let parts: Vec<&str> = s.vertices().iter().map(|v| self.complex.name(*v)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// A violated axiom, with the offending vertices or simplices by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyFacet,
    NestedFacet { inner: String, outer: String },
    UnusedVertex(String),
    NotAnInvolution { vertex: String, image: String, back: String },
    FixedVertex(String),
    ImageNotASimplex { facet: String, image: String },
    InvariantSimplex { edge: String },
    Antipodality { vertex: String, label: i32, partner: String, partner_label: i32 },
    AntipodalEdge { edge: String, labels: (i32, i32) },
    LabelOutOfRange { vertex: String, label: i32, n_colors: u32 },
    DimensionMismatch { n: usize, k: usize, dim: isize },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Self::EmptyFacet | Self::NestedFacet { .. } | Self::UnusedVertex(_) => "facet closure",
            Self::NotAnInvolution { .. }
            | Self::FixedVertex(_)
            | Self::ImageNotASimplex { .. }
            | Self::InvariantSimplex { .. } => "free simplicial involution",
            Self::Antipodality { .. } | Self::LabelOutOfRange { .. } => "antipodal labels",
            Self::AntipodalEdge { .. } => "no antipodal edge",
            Self::DimensionMismatch { .. } => "bundle metadata",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyFacet => write!(f, "empty facet"),
            Self::NestedFacet { inner, outer } => write!(f, "facet {inner} lies inside facet {outer}"),
            Self::UnusedVertex(v) => write!(f, "vertex {v} is in no facet"),
            Self::NotAnInvolution { vertex, image, back } => {
                write!(f, "inv({vertex}) = {image} but inv({image}) = {back}")
            }
            Self::FixedVertex(v) => write!(f, "vertex {v} is fixed by the involution"),
            Self::ImageNotASimplex { facet, image } => {
                write!(f, "image {image} of facet {facet} is not a simplex")
            }
            Self::InvariantSimplex { edge } => write!(f, "simplex {edge} is invariant under the involution"),
            Self::Antipodality { vertex, label, partner, partner_label } => write!(
                f,
                "label({vertex}) = {label} but label(inv) = label({partner}) = {partner_label}"
            ),
            Self::AntipodalEdge { edge, labels } => {
                write!(f, "edge {edge} carries opposite labels {} and {}", labels.0, labels.1)
            }
            Self::LabelOutOfRange { vertex, label, n_colors } => {
                write!(f, "label({vertex}) = {label} is outside ±1..±{n_colors}")
            }
            Self::DimensionMismatch { n, k, dim } => {
                write!(f, "n + k = {} but the complex has dimension {dim}", n + k)
            }
        }
    }
}

/// Every violated axiom; empty means the coloring is nice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_nice(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when only coloring axioms fail.
    pub fn structure_ok(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::Antipodality { .. } | Violation::AntipodalEdge { .. } | Violation::LabelOutOfRange { .. }))
    }
}

pub fn validate(lc: &LabeledComplex) -> ValidationReport {
    let mut out = Vec::new();
    let k = &lc.complex;
    let inv = &lc.involution;
    let name = |v: VertexId| k.name(v).to_string();

    // facet closure
    let mut used = vec![false; k.vertex_count()];
    for (i, f) in k.facets().iter().enumerate() {
        if f.is_empty() {
            out.push(Violation::EmptyFacet);
        }
        for v in f.vertices() {
            used[*v] = true;
        }
        for (j, g) in k.facets().iter().enumerate() {
            if i != j && !f.is_empty() && f.is_face_of(g) && (f != g || i > j) {
                out.push(Violation::NestedFacet { inner: lc.fmt_simplex(f), outer: lc.fmt_simplex(g) });
                break;
            }
        }
    }
    for (v, u) in used.iter().enumerate() {
        if !u {
            out.push(Violation::UnusedVertex(name(v)));
        }
    }

    // involution
    let mut involutive = true;
    for v in 0..k.vertex_count() {
        let w = inv.apply(v);
        if w == v {
            out.push(Violation::FixedVertex(name(v)));
            involutive = false;
        } else if inv.apply(w) != v {
            out.push(Violation::NotAnInvolution { vertex: name(v), image: name(w), back: name(inv.apply(w)) });
            involutive = false;
        }
    }
    for f in k.facets() {
        let img = inv.apply_simplex(f);
        if !k.contains(&img) {
            out.push(Violation::ImageNotASimplex { facet: lc.fmt_simplex(f), image: lc.fmt_simplex(&img) });
        }
    }
    if involutive {
        for f in k.facets() {
            if let Some(v) = f.vertices().iter().find(|v| f.contains_vertex(inv.apply(**v))) {
                let edge = Simplex::new(vec![*v, inv.apply(*v)]);
                out.push(Violation::InvariantSimplex { edge: lc.fmt_simplex(&edge) });
            }
        }
        out.dedup();
    }

    // coloring
    let col = &lc.coloring;
    for v in 0..k.vertex_count() {
        let l = col.label(v);
        if l == 0 || l.unsigned_abs() > col.n_colors() {
            out.push(Violation::LabelOutOfRange { vertex: name(v), label: l, n_colors: col.n_colors() });
        }
        let w = inv.apply(v);
        if v < w || inv.apply(w) != v {
            let lw = col.label(w);
            if lw != -l {
                out.push(Violation::Antipodality { vertex: name(v), label: l, partner: name(w), partner_label: lw });
            }
        }
    }
    let adj = k.adjacency();
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs.range(u + 1..) {
            if col.label(u) == -col.label(v) {
                let edge = Simplex::new(vec![u, v]);
                out.push(Violation::AntipodalEdge { edge: lc.fmt_simplex(&edge), labels: (col.label(u), col.label(v)) });
            }
        }
    }

    let dim = k.dim();
    if (lc.meta.n + lc.meta.k) as isize != dim {
        out.push(Violation::DimensionMismatch { n: lc.meta.n, k: lc.meta.k, dim });
    }
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Square with vertices +1, +2, -1, -2 (indices 0..4).
    fn square(labels: Vec<i32>) -> LabeledComplex {
        let names = ["+1", "+2", "-1", "-2"].iter().map(|s| s.to_string()).collect();
        let facets = [[0, 1], [1, 2], [2, 3], [3, 0]].iter().map(|f| Simplex::new(f.to_vec())).collect();
        let k = SimplicialComplex::new(names, facets).unwrap();
        LabeledComplex::new(
            k,
            Involution::new(vec![2, 3, 0, 1]),
            NiceColoring::new(labels, Some(2)).unwrap(),
            BundleMeta { n: 1, k: 0 },
        )
        .unwrap()
    }

    #[test]
    fn tautological_square_is_nice() {
        assert!(validate(&square(vec![1, 2, -1, -2])).is_nice());
    }

    #[test]
    fn negated_label_breaks_antipodality() {
        let r = validate(&square(vec![1, 2, 1, -2]));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Antipodality { vertex, .. } if vertex == "+1")));
        assert!(r.structure_ok());
    }

    #[test]
    fn opposite_labels_on_an_edge() {
        let mut lc = square(vec![3, -3, -3, 3]);
        lc.coloring = NiceColoring::new(vec![3, -3, -3, 3], Some(3)).unwrap();
        let r = validate(&lc);
        let edges: Vec<_> = r
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::AntipodalEdge { edge, .. } => Some(edge.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(edges.len(), 2);
        assert!(edges.contains(&"[+1, +2]".to_string()));
    }

    #[test]
    fn fixed_points_and_invariant_simplices() {
        let mut lc = square(vec![1, 2, -1, -2]);
        lc.involution = Involution::new(vec![0, 3, 2, 1]);
        let r = validate(&lc);
        assert!(r.violations.contains(&Violation::FixedVertex("+1".into())));

        // swapping neighbours makes edges invariant
        lc.involution = Involution::new(vec![1, 0, 3, 2]);
        let r = validate(&lc);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::InvariantSimplex { .. })));
    }

    #[test]
    fn facet_closure_problems() {
        let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let facets = vec![Simplex::new(vec![0, 1, 2]), Simplex::new(vec![0, 1])];
        let k = SimplicialComplex::new(names, facets).unwrap();
        let lc = LabeledComplex::new(
            k,
            Involution::new(vec![3, 2, 1, 0]),
            NiceColoring::new(vec![1, 2, -2, -1], None).unwrap(),
            BundleMeta { n: 2, k: 0 },
        )
        .unwrap();
        let r = validate(&lc);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NestedFacet { .. })));
        assert!(r.violations.contains(&Violation::UnusedVertex("d".into())));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::ImageNotASimplex { .. })));
    }

    #[test]
    fn metadata_must_match_dimension() {
        let mut lc = square(vec![1, 2, -1, -2]);
        lc.meta = BundleMeta { n: 1, k: 1 };
        let r = validate(&lc);
        assert_eq!(r.violations, vec![Violation::DimensionMismatch { n: 1, k: 1, dim: 1 }]);
    }
}
