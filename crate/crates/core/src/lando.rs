//! The extreme-grading side: Lando graph, independence complex, its
//! augmented cochain complex, and the Alexander dual of the mirror's complex.
//! Nothing here enumerates the cube; work is bounded by the number of faces.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{BigradedComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::homology::{cohomology, GradedAbelianGroup};
use crate::oracle::jmin;
use crate::pd::LinkDiagram;
use crate::resolution::{ChordEnd, Resolver, State};

/// Default bound on the number of faces enumerated for one complex.
pub const DEFAULT_FACE_LIMIT: usize = 1 << 22;

/// Vertices are crossings whose chord in `D(0)` has both ends on one circle;
/// two are adjacent when their endpoints alternate around that circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LandoGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl LandoGraph {
    /// Build from chord endpoints, one `(crossing, ends)` per chord.
    pub fn from_chords(chords: &[(usize, [ChordEnd; 2])]) -> Self {
        let mut selfchords: Vec<(usize, usize, usize, usize)> = chords
            .iter()
            .filter(|(_, [p, q])| p.circle == q.circle)
            .map(|&(k, [p, q])| {
                let (lo, hi) = if p.position < q.position {
                    (p.position, q.position)
                } else {
                    (q.position, p.position)
                };
                (k, p.circle, lo, hi)
            })
            .collect();
        selfchords.sort_unstable();
        let vertices = selfchords.iter().map(|c| c.0).collect();
        let mut edges = Vec::new();
        for (t, &(u, cu, a, b)) in selfchords.iter().enumerate() {
            for &(w, cw, x, y) in &selfchords[t + 1..] {
                if cu == cw && ((a < x && x < b) != (a < y && y < b)) {
                    edges.push((u, w));
                }
            }
        }
        LandoGraph { vertices, edges }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// One edge per line, preceded by a comment listing every vertex.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::from("# vertices:");
        for v in &self.vertices {
            write!(out, " {v}").expect("writing to a String");
        }
        out.push('\n');
        for (a, b) in &self.edges {
            writeln!(out, "{a} {b}").expect("writing to a String");
        }
        out
    }
}

/// Lando graph of `D`, read off the all-zero resolution.
pub fn lando_graph(d: &LinkDiagram) -> LandoGraph {
    let r = Resolver::new(d).resolve(&State::zero(d.n()));
    let ends = r.chord_endpoints.expect("all-zero resolution records chords");
    let chords: Vec<(usize, [ChordEnd; 2])> = ends.into_iter().enumerate().collect();
    LandoGraph::from_chords(&chords)
}

/// Finite abstract simplicial complex. Faces are sorted vertex lists, sorted
/// by size and then lexicographically; a complex with no faces at all is the
/// void complex, distinct from `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Faces are normalized (sorted, deduplicated); panics if the family is
    /// not downward closed or uses vertices outside `vertices`.
    pub fn from_faces(vertices: Vec<usize>, faces: Vec<Vec<usize>>) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        faces.dedup();
        let c = SimplicialComplex { vertices, faces };
        assert!(c.is_downward_closed(), "face family is not downward closed");
        c
    }

    pub fn void(vertices: Vec<usize>) -> Self {
        Self::from_faces(vertices, Vec::new())
    }

    /// The full simplex on `vertices`, every subset a face.
    pub fn simplex(vertices: Vec<usize>) -> Self {
        let faces = (0..1u64 << vertices.len())
            .map(|m| subset(&vertices, m))
            .collect();
        Self::from_faces(vertices, faces)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face size minus one; `-1` for `{∅}`, `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.faces.last().map(|f| f.len() as i64 - 1)
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces
            .binary_search_by(|f| (f.len(), f.as_slice()).cmp(&(face.len(), face)))
            .is_ok()
    }

    pub fn is_downward_closed(&self) -> bool {
        let vertex_set: HashSet<usize> = self.vertices.iter().copied().collect();
        self.faces.iter().all(|f| {
            f.iter().all(|v| vertex_set.contains(v))
                && (0..f.len()).all(|t| {
                    let mut g = f.clone();
                    g.remove(t);
                    self.contains(&g)
                })
        })
    }

    /// Augmented cochain complex; a face with `k` vertices sits in degree
    /// `k + shift`.
    pub fn cochain_complex(&self, shift: i64, quantum: i64) -> BigradedComplex<Vec<usize>> {
        let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
        for f in &self.faces {
            if by_size.len() <= f.len() {
                by_size.resize(f.len() + 1, Vec::new());
            }
            by_size[f.len()].push(f.clone());
        }
        let index: Vec<HashMap<&[usize], usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
            .collect();
        let mut differentials = std::collections::BTreeMap::new();
        for k in 0..by_size.len().saturating_sub(1) {
            let triplets: Vec<(usize, usize, i64)> = by_size[k + 1]
                .par_iter()
                .enumerate()
                .flat_map_iter(|(row, tau)| {
                    let index = &index[k];
                    (0..tau.len()).map(move |t| {
                        let mut sigma = tau.clone();
                        sigma.remove(t);
                        let col = index[sigma.as_slice()];
                        (row, col, if t % 2 == 0 { 1 } else { -1 })
                    })
                })
                .collect();
            differentials.insert(
                k as i64 + shift,
                SparseMatrix::from_triplets(by_size[k + 1].len(), by_size[k].len(), triplets),
            );
        }
        let generators = by_size
            .into_iter()
            .enumerate()
            .map(|(k, fs)| (k as i64 + shift, fs))
            .collect();
        BigradedComplex::new(quantum, generators, differentials)
    }

    /// Reduced cohomology, the empty face in degree -1.
    ///
    /// The void complex has no cochains; on an empty vertex set it is given
    /// `Z` in degree -2, the Alexander dual of `H̃^{-1}({∅}) = Z` inside the
    /// empty ground set. On a nonempty vertex set it is zero.
    pub fn reduced_cohomology(&self) -> GradedAbelianGroup {
        if self.is_void() {
            return if self.vertices.is_empty() {
                GradedAbelianGroup::z_at(-2)
            } else {
                GradedAbelianGroup::zero()
            };
        }
        cohomology(&self.cochain_complex(-1, 0)).expect("simplicial coboundary squares to zero")
    }

    /// Reduced homology, computed from the transposed complex. The void
    /// complex follows the same convention as [`Self::reduced_cohomology`].
    pub fn reduced_homology(&self) -> GradedAbelianGroup {
        if self.is_void() {
            return self.reduced_cohomology();
        }
        // chains in degree k are cochains of the dual complex in degree -k
        let cochains = self.cochain_complex(-1, 0);
        let mut generators = std::collections::BTreeMap::new();
        let mut differentials = std::collections::BTreeMap::new();
        if let Some((lo, hi)) = cochains.degree_range() {
            for i in lo..=hi {
                generators.insert(-i, vec![(); cochains.rank(i)]);
                differentials.insert(-i - 1, cochains.differential(i).transpose());
            }
        }
        let chains = BigradedComplex::new(0, generators, differentials);
        let h = cohomology(&chains).expect("boundary squares to zero");
        let mut out = GradedAbelianGroup::zero();
        for (i, g) in h.iter() {
            out.insert(-i, g.clone());
        }
        out
    }

    /// `{vertices, faces}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

fn subset(vertices: &[usize], mask: u64) -> Vec<usize> {
    vertices
        .iter()
        .enumerate()
        .filter(|(t, _)| mask >> t & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

/// Faces are the independent vertex sets of `g`, the empty set included.
pub fn independence_complex(g: &LandoGraph, face_limit: usize) -> Result<SimplicialComplex> {
    let m = g.vertices.len();
    let pos: HashMap<usize, usize> = g.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adjacent = vec![vec![false; m]; m];
    for (a, b) in &g.edges {
        adjacent[pos[a]][pos[b]] = true;
        adjacent[pos[b]][pos[a]] = true;
    }
    let count = AtomicUsize::new(1);
    let too_many = || Error::TooManyFaces {
        limit: face_limit,
        enumerated: count.load(Ordering::Relaxed),
        vertices: m,
    };
    if face_limit == 0 {
        return Err(too_many());
    }

    fn grow(
        face: &mut Vec<usize>,
        candidates: &[usize],
        adjacent: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
        count: &AtomicUsize,
        limit: usize,
    ) -> bool {
        for (t, &c) in candidates.iter().enumerate() {
            if count.fetch_add(1, Ordering::Relaxed) >= limit {
                return false;
            }
            face.push(c);
            out.push(face.clone());
            let next: Vec<usize> = candidates[t + 1..]
                .iter()
                .copied()
                .filter(|&x| !adjacent[c][x])
                .collect();
            let ok = grow(face, &next, adjacent, out, count, limit);
            face.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    // one branch per smallest vertex
    let branches: Vec<Option<Vec<Vec<usize>>>> = (0..m)
        .into_par_iter()
        .map(|root| {
            if count.fetch_add(1, Ordering::Relaxed) >= face_limit {
                return None;
            }
            let mut out = vec![vec![root]];
            let candidates: Vec<usize> = (root + 1..m).filter(|&x| !adjacent[root][x]).collect();
            let mut face = vec![root];
            grow(&mut face, &candidates, &adjacent, &mut out, &count, face_limit).then_some(out)
        })
        .collect();
    let mut faces = vec![Vec::new()];
    for b in branches {
        let b = b.ok_or_else(too_many)?;
        faces.extend(b.into_iter().map(|f| f.into_iter().map(|i| g.vertices[i]).collect()));
    }
    faces.sort_by(|a: &Vec<usize>, b: &Vec<usize>| (a.len(), a).cmp(&(b.len(), b)));
    Ok(SimplicialComplex {
        vertices: g.vertices.clone(),
        faces,
    })
}

/// `X_D`.
pub fn x_complex(d: &LinkDiagram, face_limit: usize) -> Result<SimplicialComplex> {
    independence_complex(&lando_graph(d), face_limit)
}

/// Augmented cochain complex of `X_D`, a face with `k` vertices in degree
/// `k - n_-`. Vertex order is crossing order, so the coboundary sign of adding
/// crossing `w` to a face is `(-1)^{#face vertices < w}`, the sign of the
/// corresponding cube edge.
pub fn extreme_complex(d: &LinkDiagram, face_limit: usize) -> Result<BigradedComplex<Vec<usize>>> {
    let x = x_complex(d, face_limit)?;
    Ok(x.cochain_complex(-(d.n_minus() as i64), jmin(d)))
}

/// `Kh^{*, jmin}` computed from `X_D` alone.
pub fn extreme_homology(d: &LinkDiagram, face_limit: usize) -> Result<GradedAbelianGroup> {
    cohomology(&extreme_complex(d, face_limit)?)
}

/// States whose support is a face of `X_D`.
pub fn smin_faces(d: &LinkDiagram, face_limit: usize) -> Result<BTreeSet<State>> {
    let x = x_complex(d, face_limit)?;
    Ok(x.faces().iter().map(|f| State::from_support(f, d.n())).collect())
}

/// Faces are the `σ ⊆ V` whose complement is not a face of `x`.
pub fn alexander_dual(x: &SimplicialComplex, face_limit: usize) -> Result<SimplicialComplex> {
    let v = x.vertices();
    let m = v.len();
    if m >= 63 || (1usize << m) > face_limit {
        return Err(Error::TooManyFaces {
            limit: face_limit,
            enumerated: 0,
            vertices: m,
        });
    }
    let pos: HashMap<usize, usize> = v.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let present: HashSet<u64> = x
        .faces()
        .iter()
        .map(|f| f.iter().fold(0u64, |acc, u| acc | 1 << pos[u]))
        .collect();
    let full = (1u64 << m) - 1;
    let faces: Vec<Vec<usize>> = (0..=full)
        .filter(|sigma| !present.contains(&(full & !sigma)))
        .map(|sigma| subset(v, sigma))
        .collect();
    Ok(SimplicialComplex::from_faces(v.to_vec(), faces))
}

/// `Y_D`: the Alexander dual of `X_{D*}`.
pub fn y_complex(d: &LinkDiagram, face_limit: usize) -> Result<SimplicialComplex> {
    alexander_dual(&x_complex(&d.mirror(), face_limit)?, face_limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: Vec<usize>, edges: Vec<(usize, usize)>) -> LandoGraph {
        LandoGraph { vertices, edges }
    }

    fn at(circle: usize, position: usize) -> ChordEnd {
        ChordEnd { circle, position }
    }

    #[test]
    fn alternation_rule() {
        let nested = [(0, [at(0, 1), at(0, 7)]), (1, [at(0, 3), at(0, 5)])];
        let g = LandoGraph::from_chords(&nested);
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 0));
        let crossed = [(0, [at(0, 1), at(0, 5)]), (1, [at(0, 3), at(0, 7)])];
        let g = LandoGraph::from_chords(&crossed);
        assert_eq!(g.edges, vec![(0, 1)]);
        let apart = [(0, [at(0, 1), at(1, 1)]), (1, [at(0, 3), at(0, 5)])];
        let g = LandoGraph::from_chords(&apart);
        assert_eq!(g.vertices, vec![1]);
    }

    #[test]
    fn trefoil_has_empty_lando_graph() {
        let d: LinkDiagram = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".parse().unwrap();
        let g = lando_graph(&d);
        assert!(g.vertices.is_empty());
        let x = independence_complex(&g, DEFAULT_FACE_LIMIT).unwrap();
        assert_eq!(x.faces(), &[Vec::<usize>::new()]);
        assert_eq!(x.dim(), Some(-1));
        let h = extreme_homology(&d, DEFAULT_FACE_LIMIT).unwrap();
        assert_eq!(h, GradedAbelianGroup::z_at(-3));
    }

    #[test]
    fn negative_kink_has_one_vertex() {
        let d: LinkDiagram = "X[2,1,1,2]".parse().unwrap();
        let g = lando_graph(&d);
        assert_eq!(g.vertices, vec![0]);
        assert!(g.edges.is_empty());
        assert!(extreme_homology(&d, DEFAULT_FACE_LIMIT).unwrap().is_zero());
    }

    #[test]
    fn independence_complexes() {
        let empty = independence_complex(&graph(vec![], vec![]), 10).unwrap();
        assert_eq!(empty.face_count(), 1);
        let discrete = independence_complex(&graph(vec![0, 1, 2, 3], vec![]), 100).unwrap();
        assert_eq!(discrete.face_count(), 16);
        assert_eq!(discrete, SimplicialComplex::simplex(vec![0, 1, 2, 3]));
        assert!(discrete.reduced_cohomology().is_zero());
        let hexagon = graph(
            (0..6).collect(),
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
        );
        let x = independence_complex(&hexagon, 100).unwrap();
        // 1 + 6 + 9 + 2 faces
        assert_eq!(x.face_count(), 18);
        // a wedge of two circles
        let mut wedge = GradedAbelianGroup::zero();
        wedge.insert(1, crate::homology::AbelianGroup::free(2));
        assert_eq!(x.reduced_cohomology(), wedge);
    }

    #[test]
    fn face_limit() {
        let discrete = graph((0..10).collect(), vec![]);
        let err = independence_complex(&discrete, 100).unwrap_err();
        assert!(matches!(err, Error::TooManyFaces { limit: 100, .. }));
    }

    #[test]
    fn alexander_duals() {
        let point = SimplicialComplex::from_faces(vec![], vec![vec![]]);
        let dual = alexander_dual(&point, 16).unwrap();
        assert!(dual.is_void());
        assert_eq!(dual.dim(), None);

        let triangle_boundary = SimplicialComplex::from_faces(
            vec![0, 1, 2],
            vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]],
        );
        let dual = alexander_dual(&triangle_boundary, 16).unwrap();
        assert_eq!(dual.faces(), &[Vec::<usize>::new()]);
        assert_eq!(alexander_dual(&dual, 16).unwrap(), triangle_boundary);
    }

    #[test]
    fn edge_list_export() {
        let g = graph(vec![1, 4, 6], vec![(1, 4)]);
        assert_eq!(g.to_edge_list(), "# vertices: 1 4 6\n1 4\n");
    }

    #[test]
    fn homology_and_cohomology_of_a_circle() {
        let circle = SimplicialComplex::from_faces(
            vec![0, 1, 2],
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0], vec![1], vec![2], vec![]],
        );
        assert_eq!(circle.reduced_homology(), GradedAbelianGroup::z_at(1));
        assert_eq!(circle.reduced_cohomology(), GradedAbelianGroup::z_at(1));
    }
}
