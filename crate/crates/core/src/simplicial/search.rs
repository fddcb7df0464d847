//! Backtracking search for nice colorings of a complex with a free involution.

use rand::seq::SliceRandom;
use rand::Rng;

use super::coloring::NiceColoring;
use super::complex::SimplicialComplex;
use super::labeled::Involution;

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(NiceColoring),
    /// The whole search space was explored.
    Exhausted,
    /// The node budget ran out first.
    Aborted,
}

/// Finds an antipodal labeling in `{±1, ..., ±n_colors}` with no edge carrying
/// opposite labels. Label order at each orbit is shuffled by `rng`; pass a
/// seeded generator for reproducible output.
///
/// The involution must be a fixed-point free involution with no edge `{v, inv v}`.
pub fn search_nice_coloring<R: Rng>(
    complex: &SimplicialComplex,
    involution: &Involution,
    n_colors: u32,
    rng: &mut R,
    node_budget: Option<u64>,
) -> SearchOutcome {
    let nv = complex.vertex_count();
    let adj = complex.adjacency();
    // most constrained orbits first
    let mut reps: Vec<usize> = (0..nv).filter(|v| *v < involution.apply(*v)).collect();
    reps.sort_by_key(|v| std::cmp::Reverse(adj[*v].len() + adj[involution.apply(*v)].len()));

    let palette: Vec<i32> = (1..=n_colors as i32).flat_map(|c| [c, -c]).collect();
    let orders: Vec<Vec<i32>> = reps
        .iter()
        .map(|_| {
            let mut p = palette.clone();
            p.shuffle(rng);
            p
        })
        .collect();

    let mut labels = vec![0i32; nv];
    let mut cursor = vec![0usize; reps.len()];
    let mut depth = 0usize;
    let mut nodes = 0u64;

    let fits = |labels: &[i32], v: usize, l: i32| adj[v].iter().all(|u| labels[*u] != -l);

    loop {
        if depth == reps.len() {
            return SearchOutcome::Found(
                NiceColoring::new(labels, Some(n_colors)).expect("labels in range"),
            );
        }
        let v = reps[depth];
        let w = involution.apply(v);
        labels[v] = 0;
        labels[w] = 0;
        let mut placed = false;
        while cursor[depth] < orders[depth].len() {
            let l = orders[depth][cursor[depth]];
            cursor[depth] += 1;
            nodes += 1;
            if node_budget.is_some_and(|b| nodes > b) {
                return SearchOutcome::Aborted;
            }
            if fits(&labels, v, l) && fits(&labels, w, -l) {
                labels[v] = l;
                labels[w] = -l;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
        } else {
            cursor[depth] = 0;
            if depth == 0 {
                return SearchOutcome::Exhausted;
            }
            depth -= 1;
        }
    }
}
