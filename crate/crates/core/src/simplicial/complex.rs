use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A simplex as a sorted set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension; `-1` for the empty simplex.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// All nonempty faces, the simplex itself included.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 64, "simplex too large to enumerate faces");
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }

    /// Codimension-one faces.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).filter(move |_| self.0.len() > 1).map(move |skip| {
            Simplex(self.0.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect())
        })
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Simplex {
        Simplex::new(self.0.iter().map(|v| f(*v)).collect())
    }
}

/// Finite simplicial complex given by its facets.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    names: Vec<String>,
    facets: Vec<Simplex>,
    simplices: OnceLock<Vec<Simplex>>,
    lookup: OnceLock<HashSet<Simplex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.facets == other.facets
    }
}

impl SimplicialComplex {
    /// Facets may be given in any order; vertex indices must be in range.
    /// Axioms (no nested facets, every vertex used) are checked by
    /// validation, not here.
    pub fn new(names: Vec<String>, facets: Vec<Simplex>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Input(format!("duplicate vertex name `{name}`")));
            }
        }
        for f in &facets {
            if let Some(v) = f.vertices().iter().find(|v| **v >= names.len()) {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        Ok(Self { names, facets, simplices: OnceLock::new(), lookup: OnceLock::new() })
    }

    /// Complex with vertices named by their index.
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<VertexId>>) -> Result<Self> {
        let names = (0..vertex_count).map(|v| v.to_string()).collect();
        Self::new(names, facets.into_iter().map(Simplex::new).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    /// Every nonempty simplex, sorted by dimension then lexicographically.
    pub fn simplices(&self) -> &[Simplex] {
        self.simplices.get_or_init(|| {
            let mut all = BTreeSet::new();
            for f in &self.facets {
                all.extend(f.faces());
            }
            let mut v: Vec<Simplex> = all.into_iter().collect();
            v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            v
        })
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices().iter().filter(move |s| s.len() == d + 1)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.lookup.get_or_init(|| self.simplices().iter().cloned().collect()).contains(s)
    }

    /// f-vector `(f_0, f_1, ...)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for s in self.simplices() {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { *c as i64 } else { -(*c as i64) })
            .sum()
    }

    /// Neighbours of every vertex along edges.
    pub fn adjacency(&self) -> Vec<BTreeSet<VertexId>> {
        let mut adj = vec![BTreeSet::new(); self.names.len()];
        for f in &self.facets {
            for &u in f.vertices() {
                for &v in f.vertices() {
                    if u != v {
                        adj[u].insert(v);
                    }
                }
            }
        }
        adj
    }

    /// Number of facets containing each codimension-one simplex.
    pub fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let top = self.dim();
        let mut out = BTreeMap::new();
        for f in self.facets.iter().filter(|f| f.dim() == top) {
            for r in f.boundary() {
                *out.entry(r).or_insert(0) += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_triangle() {
        let k = SimplicialComplex::from_facets(3, vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(k.simplices().len(), 7);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(k.contains(&Simplex::new(vec![1, 2])));
        assert!(!k.contains(&Simplex::new(vec![3])));
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn boundary_and_faces() {
        let s = Simplex::new(vec![4, 1, 1, 7]);
        assert_eq!(s.vertices(), &[1, 4, 7]);
        assert_eq!(s.boundary().count(), 3);
        assert_eq!(s.faces().count(), 7);
        assert!(Simplex::new(vec![1, 7]).is_face_of(&s));
        assert_eq!(Simplex::new(vec![]).dim(), -1);
        assert_eq!(Simplex::new(vec![3]).boundary().count(), 0);
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        assert!(SimplicialComplex::from_facets(2, vec![vec![0, 2]]).is_err());
        let names = vec!["a".to_string(), "a".to_string()];
        assert!(SimplicialComplex::new(names, vec![]).is_err());
    }

    #[test]
    fn ridge_degrees_of_a_circle() {
        let k = SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(k.ridge_degrees().values().all(|d| *d == 2));
        assert_eq!(k.euler_characteristic(), 0);
    }
}
