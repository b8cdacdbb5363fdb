//! Abstract simplicial 2-complexes used as mesh connectivity.
//!
//! A [`ConnectivityComplex`] is stored by its oriented triangles only; the
//! vertices and edges are derived. Vertex ids are 0-based here and 1-based
//! in files and in [`ConnectivityComplex::connectivity_matrix`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

/// Unordered edge key, stored with the smaller id first.
pub type Edge = [usize; 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex needs at least one vertex and one triangle")]
    Empty,
    #[error(
        "triangle {triangle} references vertex {vertex}, but only {num_vertices} vertices exist"
    )]
    VertexOutOfRange {
        triangle: usize,
        vertex: usize,
        num_vertices: usize,
    },
    #[error("triangle {triangle} repeats vertex {vertex}")]
    RepeatedVertex { triangle: usize, vertex: usize },
    #[error("triangles {first} and {second} span the same vertex set")]
    DuplicateTriangle { first: usize, second: usize },
    #[error("face {0:?} is not part of the complex")]
    UnknownFace(Vec<usize>),
}

/// Sorted edge key for two vertex ids.
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Rotate an oriented triple so that its smallest id comes first. Even
/// permutations of the same triple map to the same canonical form.
pub fn canonical_orientation(t: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| t[k]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

/// The three directed edges induced by an oriented triangle `[a, b, c]`:
/// `(b, c)`, `(c, a)`, `(a, b)`. Entry `l` is the edge opposite vertex `l`.
pub fn induced_edges(t: [usize; 3]) -> [(usize, usize); 3] {
    [(t[1], t[2]), (t[2], t[0]), (t[0], t[1])]
}

fn contains_directed(t: [usize; 3], from: usize, to: usize) -> bool {
    induced_edges(t).iter().any(|&(a, b)| a == from && b == to)
}

/// Pure abstract simplicial 2-complex with oriented 2-faces.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityComplex {
    num_vertices: usize,
    triangles: Vec<[usize; 3]>,
    edge_triangles: BTreeMap<Edge, Vec<usize>>,
}

impl ConnectivityComplex {
    /// Build a complex from 0-based oriented triangles.
    pub fn new(num_vertices: usize, triangles: Vec<[usize; 3]>) -> Result<Self, ComplexError> {
        if num_vertices == 0 || triangles.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for (k, t) in triangles.iter().enumerate() {
            for &v in t {
                if v >= num_vertices {
                    return Err(ComplexError::VertexOutOfRange {
                        triangle: k,
                        vertex: v,
                        num_vertices,
                    });
                }
            }
            if t[0] == t[1] || t[0] == t[2] {
                return Err(ComplexError::RepeatedVertex {
                    triangle: k,
                    vertex: t[0],
                });
            }
            if t[1] == t[2] {
                return Err(ComplexError::RepeatedVertex {
                    triangle: k,
                    vertex: t[1],
                });
            }
            let mut key = *t;
            key.sort_unstable();
            if let Some(&first) = seen.get(&key) {
                return Err(ComplexError::DuplicateTriangle { first, second: k });
            }
            seen.insert(key, k);
        }
        let mut edge_triangles: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (k, t) in triangles.iter().enumerate() {
            for (a, b) in induced_edges(*t) {
                edge_triangles.entry(edge(a, b)).or_default().push(k);
            }
        }
        Ok(Self {
            num_vertices,
            triangles,
            edge_triangles,
        })
    }

    /// Build a complex from a 1-based connectivity matrix given column by column.
    pub fn from_matrix(num_vertices: usize, columns: &[[usize; 3]]) -> Result<Self, ComplexError> {
        let mut triangles = Vec::with_capacity(columns.len());
        for (k, c) in columns.iter().enumerate() {
            let mut t = [0; 3];
            for l in 0..3 {
                if c[l] == 0 || c[l] > num_vertices {
                    return Err(ComplexError::VertexOutOfRange {
                        triangle: k,
                        vertex: c[l],
                        num_vertices,
                    });
                }
                t[l] = c[l] - 1;
            }
            triangles.push(t);
        }
        Self::new(num_vertices, triangles)
    }

    /// 1-based connectivity matrix, one column per triangle in stored orientation.
    pub fn connectivity_matrix(&self) -> Vec<[usize; 3]> {
        self.triangles
            .iter()
            .map(|t| [t[0] + 1, t[1] + 1, t[2] + 1])
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, k: usize) -> [usize; 3] {
        self.triangles[k]
    }

    /// All edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_triangles.keys().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_triangles.len()
    }

    /// Triangles incident to an edge, in triangle order.
    pub fn edge_triangles(&self, e: Edge) -> &[usize] {
        self.edge_triangles
            .get(&edge(e[0], e[1]))
            .map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_triangles.contains_key(&edge(a, b))
    }

    /// Same complex with every vertex id `v` replaced by `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, ComplexError> {
        let triangles = self
            .triangles
            .iter()
            .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]])
            .collect();
        Self::new(self.num_vertices, triangles)
    }

    /// Same complex with the given triangle orientations replaced.
    pub fn with_orientations(&self, triangles: Vec<[usize; 3]>) -> Result<Self, ComplexError> {
        Self::new(self.num_vertices, triangles)
    }

    fn triangle_neighbors(&self, k: usize) -> Vec<usize> {
        let t = self.triangles[k];
        let mut out = Vec::new();
        for (a, b) in induced_edges(t) {
            for &j in self.edge_triangles(edge(a, b)) {
                if j != k && !out.contains(&j) {
                    out.push(j);
                }
            }
        }
        out
    }

    /// Purity, 2-path connectedness and edge incidence counts.
    pub fn validate(&self) -> ValidationReport {
        let mut used = vec![false; self.num_vertices];
        for t in &self.triangles {
            for &v in t {
                used[v] = true;
            }
        }
        let unused_vertices: Vec<usize> = (0..self.num_vertices).filter(|&v| !used[v]).collect();

        let mut visited = vec![false; self.triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(k) = queue.pop_front() {
            for j in self.triangle_neighbors(k) {
                if !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let edge_incidence: Vec<(Edge, usize)> = self
            .edge_triangles
            .iter()
            .map(|(e, ts)| (*e, ts.len()))
            .collect();
        let overloaded_edges = edge_incidence
            .iter()
            .filter(|(_, n)| *n > 2)
            .map(|(e, _)| *e)
            .collect();
        ValidationReport {
            pure: unused_vertices.is_empty(),
            two_path_connected: visited.iter().all(|&v| v),
            unused_vertices,
            edge_incidence,
            overloaded_edges,
        }
    }

    /// True when every pair of triangles sharing an edge induces opposite
    /// orientations on it, using the stored orientations.
    pub fn is_consistently_oriented(&self) -> bool {
        self.edge_triangles
            .iter()
            .all(|(e, ts)| match ts.as_slice() {
                [_] => true,
                [a, b] => {
                    let (ta, tb) = (self.triangles[*a], self.triangles[*b]);
                    let forward_a = contains_directed(ta, e[0], e[1]);
                    let forward_b = contains_directed(tb, e[0], e[1]);
                    forward_a != forward_b
                }
                _ => false,
            })
    }

    /// Search for a consistent orientation by propagation from a seed
    /// triangle in each 2-path component. The seed keeps its stored
    /// orientation.
    pub fn check_orientable(&self) -> Orientability {
        if self.edge_triangles.values().any(|ts| ts.len() > 2) {
            return Orientability {
                orientable: false,
                assignment: None,
            };
        }
        let n = self.triangles.len();
        let mut assigned: Vec<Option<[usize; 3]>> = vec![None; n];
        for seed in 0..n {
            if assigned[seed].is_some() {
                continue;
            }
            assigned[seed] = Some(self.triangles[seed]);
            let mut queue = VecDeque::from([seed]);
            while let Some(k) = queue.pop_front() {
                let tk = assigned[k].unwrap();
                for (a, b) in induced_edges(tk) {
                    for &j in self.edge_triangles(edge(a, b)) {
                        if j == k {
                            continue;
                        }
                        // j must traverse the shared edge as (b, a).
                        let stored = self.triangles[j];
                        let wanted = if contains_directed(stored, b, a) {
                            stored
                        } else {
                            [stored[1], stored[0], stored[2]]
                        };
                        match assigned[j] {
                            None => {
                                assigned[j] = Some(wanted);
                                queue.push_back(j);
                            }
                            Some(existing) => {
                                if !contains_directed(existing, b, a) {
                                    return Orientability {
                                        orientable: false,
                                        assignment: None,
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
        Orientability {
            orientable: true,
            assignment: Some(assigned.into_iter().map(Option::unwrap).collect()),
        }
    }

    /// Boundary / interior classification of all faces.
    pub fn classify_faces(&self) -> FaceClassification {
        let mut boundary_edges = BTreeSet::new();
        let mut interior_edges = BTreeSet::new();
        for (e, ts) in &self.edge_triangles {
            if ts.len() == 1 {
                boundary_edges.insert(*e);
            } else {
                interior_edges.insert(*e);
            }
        }
        let boundary_vertices: BTreeSet<usize> = boundary_edges
            .iter()
            .flat_map(|e| e.iter().copied())
            .collect();
        let interior_vertices = (0..self.num_vertices)
            .filter(|v| !boundary_vertices.contains(v))
            .collect();
        let mut boundary_triangles = BTreeSet::new();
        let mut interior_triangles = BTreeSet::new();
        for (k, t) in self.triangles.iter().enumerate() {
            let on_boundary = induced_edges(*t)
                .iter()
                .any(|&(a, b)| boundary_edges.contains(&edge(a, b)));
            if on_boundary {
                boundary_triangles.insert(k);
            } else {
                interior_triangles.insert(k);
            }
        }
        FaceClassification {
            boundary_vertices,
            interior_vertices,
            boundary_edges,
            interior_edges,
            boundary_triangles,
            interior_triangles,
        }
    }

    /// Every face of the complex as a sorted vertex list.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for t in &self.triangles {
            for face in subfaces(t) {
                out.insert(face);
            }
        }
        out
    }

    fn require_face(&self, face: &[usize]) -> Result<Vec<usize>, ComplexError> {
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let known = !sorted.is_empty()
            && sorted.len() == face.len()
            && self
                .triangles
                .iter()
                .any(|t| sorted.iter().all(|v| t.contains(v)));
        if known {
            Ok(sorted)
        } else {
            Err(ComplexError::UnknownFace(face.to_vec()))
        }
    }

    /// Faces having `face` as a subset.
    pub fn star(&self, face: &[usize]) -> Result<BTreeSet<Vec<usize>>, ComplexError> {
        let sigma = self.require_face(face)?;
        Ok(self
            .faces()
            .into_iter()
            .filter(|f| sigma.iter().all(|v| f.contains(v)))
            .collect())
    }

    /// Smallest subcomplex containing the star.
    pub fn closed_star(&self, face: &[usize]) -> Result<BTreeSet<Vec<usize>>, ComplexError> {
        let star = self.star(face)?;
        let mut out = BTreeSet::new();
        for f in &star {
            for sub in subsets(f) {
                out.insert(sub);
            }
        }
        Ok(out)
    }

    /// Faces of the closed star sharing no vertex with `face`.
    pub fn link(&self, face: &[usize]) -> Result<BTreeSet<Vec<usize>>, ComplexError> {
        let sigma = self.require_face(face)?;
        Ok(self
            .closed_star(&sigma)?
            .into_iter()
            .filter(|f| f.iter().all(|v| !sigma.contains(v)))
            .collect())
    }

    /// The link of a vertex read as a polygonal chain.
    pub fn vertex_link_chain(&self, vertex: usize) -> Result<LinkChain, ComplexError> {
        let link = self.link(&[vertex])?;
        let vertices: Vec<usize> = link.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        let edges: Vec<Edge> = link
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| [f[0], f[1]])
            .collect();
        let mut degree: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        for e in &edges {
            *degree.get_mut(&e[0]).unwrap() += 1;
            *degree.get_mut(&e[1]).unwrap() += 1;
        }
        // connectivity over link vertices
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &edges {
            adjacency.entry(e[0]).or_default().push(e[1]);
            adjacency.entry(e[1]).or_default().push(e[0]);
        }
        let mut seen = BTreeSet::new();
        if let Some(&start) = vertices.first() {
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if seen.insert(v) {
                    stack.extend(adjacency.get(&v).into_iter().flatten().copied());
                }
            }
        }
        let max_degree = degree.values().copied().max().unwrap_or(0);
        let connected = seen.len() == vertices.len();
        let closed = connected && !vertices.is_empty() && degree.values().all(|&d| d == 2);
        Ok(LinkChain {
            vertices,
            edges,
            max_degree,
            connected,
            closed,
        })
    }
}

fn subfaces(t: &[usize; 3]) -> Vec<Vec<usize>> {
    let mut s = *t;
    s.sort_unstable();
    subsets(&s)
}

/// Non-empty subsets of a sorted vertex list, each sorted.
fn subsets(f: &[usize]) -> Vec<Vec<usize>> {
    let n = f.len();
    (1u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| f[i])
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Every vertex id belongs to some triangle.
    pub pure: bool,
    pub two_path_connected: bool,
    pub unused_vertices: Vec<usize>,
    pub edge_incidence: Vec<(Edge, usize)>,
    /// Edges with three or more incident triangles.
    pub overloaded_edges: Vec<Edge>,
}

impl ValidationReport {
    pub fn is_connectivity_complex(&self) -> bool {
        self.pure && self.two_path_connected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientability {
    pub orientable: bool,
    pub assignment: Option<Vec<[usize; 3]>>,
}

/// Boundary and interior faces. Edges with one incident triangle are
/// boundary; all others (two or more) are interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClassification {
    pub boundary_vertices: BTreeSet<usize>,
    pub interior_vertices: BTreeSet<usize>,
    pub boundary_edges: BTreeSet<Edge>,
    pub interior_edges: BTreeSet<Edge>,
    pub boundary_triangles: BTreeSet<usize>,
    pub interior_triangles: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkChain {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub max_degree: usize,
    pub connected: bool,
    pub closed: bool,
}

impl LinkChain {
    /// Connected with no branching.
    pub fn is_simple_chain(&self) -> bool {
        self.connected && self.max_degree <= 2
    }
}
