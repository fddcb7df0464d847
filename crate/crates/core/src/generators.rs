//! Fixture total spaces with free involutions and colorings.
//!
//! Non-simplicial constructions (products, mapping tori) are built as regular
//! cell complexes whose cells are determined by their vertex sets, then
//! triangulated by an equivariant barycentric subdivision.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::simplicial::{
    validate, BundleMeta, Involution, LabeledComplex, NiceColoring, Simplex, SimplicialComplex,
};
use crate::z2::{GradedRing, RingElement, TotalClass};

/// Whether a fixture's coloring passed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringStatus {
    Nice,
    /// Produced by a heuristic and failing at least one axiom.
    Candidate,
}

impl ColoringStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nice => "nice",
            Self::Candidate => "candidate",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub lc: LabeledComplex,
    pub status: ColoringStatus,
    pub description: String,
}

impl Fixture {
    fn new(lc: LabeledComplex, description: impl Into<String>) -> Self {
        let status = if validate(&lc).is_nice() { ColoringStatus::Nice } else { ColoringStatus::Candidate };
        Self { lc, status, description: description.into() }
    }
}

/// A cell given by its sorted vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// Regular cell complex with labeled vertices and a vertex involution that
/// permutes cells freely.
#[derive(Debug, Clone)]
pub struct CellComplex {
    pub names: Vec<String>,
    pub labels: Vec<i32>,
    pub vertex_involution: Vec<usize>,
    /// Closed under faces; sorted by dimension, then vertex set.
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new(names: Vec<String>, labels: Vec<i32>, vertex_involution: Vec<usize>, mut cells: Vec<Cell>) -> Self {
        for c in cells.iter_mut() {
            c.vertices.sort_unstable();
        }
        cells.sort();
        cells.dedup();
        Self { names, labels, vertex_involution, cells }
    }

    /// Every simplex of a labeled complex as a cell.
    pub fn from_labeled(lc: &LabeledComplex) -> Self {
        let cells = lc
            .complex
            .simplices()
            .iter()
            .map(|s| Cell { dim: s.len() - 1, vertices: s.vertices().to_vec() })
            .collect();
        Self::new(
            lc.complex.names().to_vec(),
            lc.coloring.labels().to_vec(),
            lc.involution.image().to_vec(),
            cells,
        )
    }

    /// Labels available to the barycenter of a cell: those of its vertices.
    pub fn carrier_colors(&self, cell: &Cell) -> Vec<i32> {
        let mut out: Vec<i32> = cell.vertices.iter().map(|v| self.labels[*v]).collect();
        out.sort_by_key(|l| (l.unsigned_abs(), -*l));
        out.dedup();
        out
    }

    fn cell_name(&self, cell: &Cell) -> String {
        let parts: Vec<&str> = cell.vertices.iter().map(|v| self.names[*v].as_str()).collect();
        format!("<{}>", parts.join("|"))
    }
}

/// Label with the smallest absolute value, positive first on ties.
pub fn smallest_label(colors: &[i32]) -> i32 {
    *colors.iter().min_by_key(|l| (l.unsigned_abs(), -**l)).expect("nonempty color set")
}

/// Order complex of the face poset, with the barycenter of each orbit
/// representative colored by `choose(carrier colors)` and its partner by the
/// negated label.
pub fn barycentric_equivariant(
    cells: &CellComplex,
    mut choose: impl FnMut(&[i32]) -> i32,
) -> Result<(SimplicialComplex, Involution, NiceColoring)> {
    let index: HashMap<&[usize], usize> =
        cells.cells.iter().enumerate().map(|(i, c)| (c.vertices.as_slice(), i)).collect();

    let mut cell_inv = Vec::with_capacity(cells.cells.len());
    for c in &cells.cells {
        let mut img: Vec<usize> = c.vertices.iter().map(|v| cells.vertex_involution[*v]).collect();
        img.sort_unstable();
        let Some(&j) = index.get(img.as_slice()) else {
            return Err(Error::Input(format!("image of cell {} is not a cell", cells.cell_name(c))));
        };
        if cell_inv.len() == j {
            return Err(Error::Input(format!("cell {} is invariant under the involution", cells.cell_name(c))));
        }
        cell_inv.push(j);
    }

    // codimension-one faces of each cell
    let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.cells.iter().enumerate() {
        by_dim.entry(c.dim).or_default().push(i);
    }
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_ok());
    let mut facets_of: Vec<Vec<usize>> = vec![Vec::new(); cells.cells.len()];
    let mut is_maximal = vec![true; cells.cells.len()];
    for (i, c) in cells.cells.iter().enumerate() {
        if c.dim == 0 {
            continue;
        }
        for &f in by_dim.get(&(c.dim - 1)).into_iter().flatten() {
            if subset(&cells.cells[f].vertices, &c.vertices) {
                facets_of[i].push(f);
                is_maximal[f] = false;
            }
        }
    }

    let mut chains = Vec::new();
    for top in (0..cells.cells.len()).filter(|i| is_maximal[*i]) {
        let mut stack = vec![vec![top]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("nonempty chain");
            if facets_of[last].is_empty() {
                chains.push(Simplex::new(chain));
                continue;
            }
            for &f in &facets_of[last] {
                let mut next = chain.clone();
                next.push(f);
                stack.push(next);
            }
        }
    }

    let mut labels = vec![0i32; cells.cells.len()];
    for (i, c) in cells.cells.iter().enumerate() {
        if i < cell_inv[i] {
            let colors = cells.carrier_colors(c);
            if colors.is_empty() {
                return Err(Error::Input(format!("cell {} has no available colors", cells.cell_name(c))));
            }
            let l = choose(&colors);
            labels[i] = l;
            labels[cell_inv[i]] = -l;
        }
    }

    let names = cells.cells.iter().map(|c| cells.cell_name(c)).collect();
    let n_colors = cells.labels.iter().map(|l| l.unsigned_abs()).max().unwrap_or(1);
    Ok((
        SimplicialComplex::new(names, chains)?,
        Involution::new(cell_inv),
        NiceColoring::new(labels, Some(n_colors))?,
    ))
}

/// Subdivides a labeled complex with the deterministic smallest-label rule.
pub fn subdivide(lc: &LabeledComplex) -> Result<LabeledComplex> {
    let (c, inv, col) = barycentric_equivariant(&CellComplex::from_labeled(lc), smallest_label)?;
    let out = LabeledComplex::new(c, inv, col, lc.meta)?;
    match &lc.bundle_class {
        Some(w) => out.with_bundle_class(w.clone()),
        None => Ok(out),
    }
}

/// Subdivides with barycenter labels drawn uniformly from the carrier colors.
pub fn random_subdivision<R: Rng>(lc: &LabeledComplex, rng: &mut R) -> Result<LabeledComplex> {
    let (c, inv, col) =
        barycentric_equivariant(&CellComplex::from_labeled(lc), |colors| colors[rng.random_range(0..colors.len())])?;
    LabeledComplex::new(c, inv, col, lc.meta)
}

fn signed_name(l: i32) -> String {
    format!("{l:+}")
}

/// Class `1` of the trivial rank-`rank` bundle over a point.
fn trivial_class(rank: u32) -> TotalClass {
    let ring = GradedRing::new(Vec::new()).expect("empty ring");
    TotalClass::trivial(&ring, rank)
}

/// `∂♦^{n+1}` with the tautological coloring, as a bundle over a point.
pub fn cross_polytope_sphere(n: usize) -> Fixture {
    let dim = n + 1;
    let labels: Vec<i32> = (1..=dim as i32).flat_map(|i| [i, -i]).collect();
    let names = labels.iter().map(|l| signed_name(*l)).collect();
    let vertex = |l: i32| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
    let facets = (0u32..1 << dim)
        .map(|mask| {
            Simplex::new(
                (0..dim).map(|i| vertex(if mask >> i & 1 == 1 { -(i as i32 + 1) } else { i as i32 + 1 })).collect(),
            )
        })
        .collect();
    let complex = SimplicialComplex::new(names, facets).expect("cross-polytope");
    let involution = Involution::new((0..2 * dim).map(|v| v ^ 1).collect());
    let coloring = NiceColoring::new(labels, Some(dim as u32)).expect("labels");
    let lc = LabeledComplex::new(complex, involution, coloring, BundleMeta { n, k: 0 })
        .and_then(|lc| lc.with_bundle_class(trivial_class(dim as u32)))
        .expect("consistent fixture");
    Fixture::new(lc, format!("boundary of the {dim}-dimensional cross-polytope, tautological coloring"))
}

/// Cell complex of `∂♦^{n+1}`: cells are the faces, named by signed labels.
fn cross_polytope_cells(n: usize) -> (Vec<i32>, Vec<Vec<i32>>) {
    let dim = n + 1;
    let vertices: Vec<i32> = (1..=dim as i32).flat_map(|i| [i, -i]).collect();
    let mut faces = Vec::new();
    for code in 0..3u64.pow(dim as u32) {
        let mut c = code;
        let mut face = Vec::new();
        for i in 1..=dim as i32 {
            match c % 3 {
                1 => face.push(i),
                2 => face.push(-i),
                _ => {}
            }
            c /= 3;
        }
        if !face.is_empty() {
            faces.push(face);
        }
    }
    (vertices, faces)
}

/// Named pure base complexes: `point`, `circle<m>` (`m >= 3`), `s2`.
pub fn builtin_base(name: &str) -> Result<SimplicialComplex> {
    let named = |count: usize, facets: Vec<Vec<usize>>| {
        SimplicialComplex::new((0..count).map(|i| format!("p{i}")).collect(), facets.into_iter().map(Simplex::new).collect())
    };
    match name {
        "point" => named(1, vec![vec![0]]),
        "s2" => named(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]),
        _ => {
            let m: usize = name
                .strip_prefix("circle")
                .and_then(|s| s.parse().ok())
                .filter(|m| *m >= 3)
                .ok_or_else(|| Error::Input(format!("unknown base `{name}` (expected point, s2 or circle<m> with m >= 3)")))?;
            named(m, (0..m).map(|i| vec![i, (i + 1) % m]).collect())
        }
    }
}

/// `B × ∂♦^{n+1}` as products of a base simplex and a cross-polytope face,
/// barycentrically subdivided. Only labels `±1..±(n+1)` occur.
pub fn trivial_bundle(base: &SimplicialComplex, n: usize) -> Result<Fixture> {
    let k = base.dim();
    if k < 0 || base.facets().iter().any(|f| f.dim() != k) {
        return Err(Error::Input("base complex must be pure and nonempty".into()));
    }
    let k = k as usize;
    let (fiber_vertices, fiber_faces) = cross_polytope_cells(n);
    let nf = fiber_vertices.len();
    let fiber_index = |l: i32| fiber_vertices.iter().position(|x| *x == l).expect("fiber vertex");
    let vid = |b: usize, l: i32| b * nf + fiber_index(l);

    let mut names = Vec::new();
    let mut labels = Vec::new();
    let mut involution = Vec::new();
    for b in 0..base.vertex_count() {
        for l in &fiber_vertices {
            names.push(format!("{}:{}", base.name(b), signed_name(*l)));
            labels.push(*l);
            involution.push(vid(b, -*l));
        }
    }
    let mut cells = Vec::new();
    for s in base.simplices() {
        for f in &fiber_faces {
            let vertices = s.vertices().iter().flat_map(|b| f.iter().map(move |l| (*b, *l))).map(|(b, l)| vid(b, l)).collect();
            cells.push(Cell { dim: s.len() - 1 + f.len() - 1, vertices });
        }
    }
    let cc = CellComplex::new(names, labels, involution, cells);
    let (complex, inv, coloring) = barycentric_equivariant(&cc, smallest_label)?;
    let lc = LabeledComplex::new(complex, inv, coloring, BundleMeta { n, k })?
        .with_bundle_class(trivial_class(n as u32 + 1))?;
    Ok(Fixture::new(lc, format!("trivial S^{n}-bundle over a {k}-dimensional base, product cells subdivided")))
}

/// Facets of the subdivided product fixture:
/// `f_k(B) · 2^{n+1} · (k+1)! (n+1)! C(k+n, k)`.
pub fn product_facet_count(base_facets: usize, k: usize, n: usize) -> usize {
    let fact = |m: usize| (1..=m).product::<usize>();
    let binom = fact(k + n) / (fact(k) * fact(n));
    base_facets * (1 << (n + 1)) * fact(k + 1) * fact(n + 1) * binom
}

/// Mapping torus of the square `∂♦^2` over a circle of `m` segments, glued by
/// `±1 ↦ ±1, ±2 ↦ ∓2`. The total space is a Klein bottle and the underlying
/// plane bundle has `w = 1 + a`.
///
/// The barycentric coloring is only a candidate: the gluing prisms put `+2` and
/// `-2` in one cell. Use a coloring search for a nice coloring.
pub fn klein_bundle(m: usize) -> Result<Fixture> {
    if m < 3 {
        return Err(Error::Input(format!("klein bundle needs at least 3 base segments, got {m}")));
    }
    let fiber = [1, -1, 2, -2];
    let flip = |l: i32| if l.unsigned_abs() == 2 { -l } else { l };
    let fi = |l: i32| fiber.iter().position(|x| *x == l).expect("fiber vertex");
    let vid = |s: usize, l: i32| s * 4 + fi(l);
    let mut names = Vec::new();
    let mut labels = Vec::new();
    let mut involution = Vec::new();
    for s in 0..m {
        for l in fiber {
            names.push(format!("p{s}:{}", signed_name(l)));
            labels.push(l);
            involution.push(vid(s, -l));
        }
    }
    let square: Vec<Vec<i32>> = vec![
        vec![1],
        vec![-1],
        vec![2],
        vec![-2],
        vec![1, 2],
        vec![2, -1],
        vec![-1, -2],
        vec![-2, 1],
    ];
    let mut cells = Vec::new();
    for s in 0..m {
        let next = (s + 1) % m;
        let glue = |l: i32| if next == 0 { flip(l) } else { l };
        for f in &square {
            cells.push(Cell { dim: f.len() - 1, vertices: f.iter().map(|l| vid(s, *l)).collect() });
            let mut prism: Vec<usize> = f.iter().map(|l| vid(s, *l)).collect();
            prism.extend(f.iter().map(|l| vid(next, glue(*l))));
            cells.push(Cell { dim: f.len(), vertices: prism });
        }
    }
    let cc = CellComplex::new(names, labels, involution, cells);
    let (complex, inv, coloring) = barycentric_equivariant(&cc, smallest_label)?;
    let ring = GradedRing::truncated("a", 1, 2)?;
    let w = TotalClass::from_total(&RingElement::parse(&ring, "1 + a")?, 2)?;
    let lc = LabeledComplex::new(complex, inv, coloring, BundleMeta { n: 1, k: 1 })?.with_bundle_class(w)?;
    Ok(Fixture::new(lc, format!("supplementary fixture: twisted circle bundle over a {m}-segment circle (Klein bottle)")))
}

/// `∂♦^4 ≅ S^3` as the total space of the Hopf bundle over `S^2`, with the
/// tautological coloring; `w = 1 + b` with `b` in degree 2.
pub fn hopf_s3() -> Fixture {
    let sphere = cross_polytope_sphere(3);
    let ring: Arc<GradedRing> = GradedRing::truncated("b", 2, 2).expect("ring");
    let w = TotalClass::from_total(&RingElement::parse(&ring, "1 + b").expect("element"), 2).expect("class");
    let mut lc = sphere.lc;
    lc.meta = BundleMeta { n: 1, k: 2 };
    lc.bundle_class = None;
    let lc = lc.with_bundle_class(w).expect("rank 2");
    Fixture::new(lc, "boundary of the 4-dimensional cross-polytope as the Hopf bundle total space")
}
