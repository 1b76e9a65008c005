//! Finite abstract simplicial complexes over a labelled, totally ordered
//! ground set.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::graph;

/// A ground-set element: its label and its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex<'a> {
    pub index: usize,
    pub label: &'a str,
}

/// Face counts `f_{-1}, f_0, ..., f_{dim}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Largest `i` with a stored entry (`dim` of the complex).
    pub fn top(&self) -> isize {
        self.0.len() as isize - 2
    }

    /// Sum of `f_i` over `i >= 0`, the number of nonempty faces.
    pub fn nonempty_faces(&self) -> u64 {
        self.0.iter().skip(1).sum()
    }

    /// The h-vector determined by
    /// `sum_i h_i t^(d-i) = sum_i f_(i-1) (t-1)^(d-i)` with `d = dim + 1`.
    pub fn to_h(&self) -> HVector {
        if self.0.is_empty() {
            return HVector(Vec::new());
        }
        let d = self.0.len().saturating_sub(1);
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, k - i) as i128 * self.0[i] as i128
                    })
                    .sum::<i128>() as i64
            })
            .collect();
        HVector(h)
    }
}

/// `h_0, ..., h_{dim+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    /// Inverse of [`FVector::to_h`]: `f_(k-1) = sum_(i<=k) C(d-i, k-i) h_i`.
    pub fn to_f(&self) -> FVector {
        if self.0.is_empty() {
            return FVector(Vec::new());
        }
        let d = self.0.len().saturating_sub(1);
        let f = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| binomial(d - i, k - i) as i128 * self.0[i] as i128)
                    .sum::<i128>() as u64
            })
            .collect();
        FVector(f)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// An immutable simplicial complex.
///
/// Faces are [`Face`] bitsets over dense vertex indices `0..n`. The face
/// family is closed eagerly at construction. The void complex (no faces at
/// all) and the complex `{∅}` are distinct values.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Face>,
    /// `faces[k]` holds the faces with `k` vertices, sorted.
    faces: Vec<Vec<Face>>,
    face_set: HashSet<Face>,
}

impl SimplicialComplex {
    /// Builds a complex from labelled facets.
    ///
    /// Non-maximal and repeated facets are dropped. Every label must occur in
    /// some facet, and vertex indices follow the order of `labels`.
    pub fn from_facets<L, F, S>(labels: &[L], facets: &[F]) -> Result<Self>
    where
        L: AsRef<str>,
        F: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let mut faces = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut f = Face::empty();
            for s in facet.as_ref() {
                let i = index
                    .get(s.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))?;
                f.insert(*i);
            }
            faces.push(f);
        }
        let covered = faces.iter().fold(Face::empty(), |acc, f| acc.union(f));
        if let Some(i) = (0..labels.len()).find(|i| !covered.contains(*i)) {
            return Err(Error::IsolatedLabel(labels[i].as_ref().to_string()));
        }
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Ok(Self::from_index_facets(labels, faces))
    }

    /// Builds from facets given as index sets over `labels`. Callers must
    /// ensure every index is covered by some facet.
    pub(crate) fn from_index_facets(labels: Vec<String>, facets: Vec<Face>) -> Self {
        let facets = maximal(facets);
        let mut face_set = HashSet::new();
        for facet in &facets {
            let members: Vec<usize> = facet.iter().collect();
            for mask in 0u64..(1u64 << members.len()) {
                let sub: Face = members
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                face_set.insert(sub);
            }
        }
        let top = facets.iter().map(Face::len).max();
        let mut faces = vec![Vec::new(); top.map_or(0, |t| t + 1)];
        for f in &face_set {
            faces[f.len()].push(f.clone());
        }
        for layer in &mut faces {
            layer.sort();
        }
        SimplicialComplex {
            labels,
            facets,
            faces,
            face_set,
        }
    }

    /// The full simplex on the given labels.
    pub fn simplex<L: AsRef<str>>(labels: &[L]) -> Self {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let all = (0..labels.len()).collect();
        Self::from_index_facets(labels, vec![all])
    }

    /// The complex with no faces at all.
    pub fn void() -> Self {
        Self::from_index_facets(Vec::new(), Vec::new())
    }

    /// The complex `{∅}`.
    pub fn empty_face_only() -> Self {
        Self::from_index_facets(Vec::new(), vec![Face::empty()])
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of vertices, `f_0`.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex<'_>> {
        self.labels
            .iter()
            .enumerate()
            .map(|(index, label)| Vertex { index, label })
    }

    /// Face over this complex's indices from a list of labels.
    pub fn face_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        labels
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
            })
            .collect()
    }

    /// Dimension; `-1` for `{∅}` and `-2` for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_face(&self, f: &Face) -> bool {
        self.face_set.contains(f)
    }

    /// Faces of dimension `d`, in canonical order.
    pub fn faces_of_dim(&self, d: isize) -> &[Face] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|k| self.faces.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// All faces, by increasing dimension.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.face_set.len()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() as isize - 1 == self.dim())
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(|l| l.len() as u64).collect())
    }

    pub fn h_vector(&self) -> HVector {
        self.f_vector().to_h()
    }

    /// Renders a face as `{a,b,c}` with member labels sorted.
    pub fn render_face(&self, f: &Face) -> String {
        let mut names: Vec<&str> = f.iter().map(|v| self.label(v)).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }

    /// All facets, rendered and space-separated; `void` for the void complex.
    pub fn render_facets(&self) -> String {
        if self.is_void() {
            return "void".into();
        }
        let facets: Vec<String> = self.facets.iter().map(|x| self.render_face(x)).collect();
        facets.join(" ")
    }

    /// Barycentric subdivision: vertices are the nonempty faces, faces are
    /// chains under strict inclusion.
    ///
    /// Vertices are indexed in canonical face order (by size, then
    /// lexicographically) and labelled by [`render_face`](Self::render_face).
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        if self.is_void() {
            return Self::void();
        }
        let verts: Vec<&Face> = self.faces.iter().skip(1).flatten().collect();
        let position: HashMap<&Face, usize> =
            verts.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let labels = verts.iter().map(|f| self.render_face(f)).collect();

        // Maximal chains are the orderings of each facet's vertices.
        let mut chains = Vec::new();
        for facet in &self.facets {
            let members: Vec<usize> = facet.iter().collect();
            if members.is_empty() {
                chains.push(Face::empty());
                continue;
            }
            for perm in permutations(&members) {
                let mut prefix = Face::empty();
                let mut chain = Face::empty();
                for v in perm {
                    prefix.insert(v);
                    chain.insert(position[&prefix]);
                }
                chains.push(chain);
            }
        }
        Self::from_index_facets(labels, chains)
    }

    /// `lk(F) = {G : G ∩ F = ∅, G ∪ F ∈ Δ}` on the vertices it uses.
    pub fn link(&self, f: &Face) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::NotAFace);
        }
        let parts: Vec<Face> = self
            .facets
            .iter()
            .filter(|h| f.is_subset(h))
            .map(|h| h.difference(f))
            .collect();
        Ok(self.reindexed(parts))
    }

    /// `Δ_W = {F ∈ Δ : F ⊆ W}`; every vertex of `W` survives.
    pub fn restriction(&self, w: &Face) -> Result<SimplicialComplex> {
        if let Some(v) = w.iter().find(|&v| v >= self.n()) {
            return Err(Error::UnknownVertex(v));
        }
        if self.is_void() {
            return Ok(Self::void());
        }
        let parts: Vec<Face> = self.facets.iter().map(|h| h.intersection(w)).collect();
        Ok(self.reindexed(parts))
    }

    /// `∂F`, the complex of all proper subsets of `F` (which need not be a
    /// face of this complex, only a subset of its ground set). For a single
    /// vertex there are no proper nonempty subsets and the result is void.
    pub fn boundary_of_face(&self, f: &Face) -> Result<SimplicialComplex> {
        if f.is_empty() {
            return Err(Error::EmptyFace);
        }
        if let Some(v) = f.iter().find(|&v| v >= self.n()) {
            return Err(Error::UnknownVertex(v));
        }
        if f.len() == 1 {
            return Ok(Self::void());
        }
        let parts = f.iter().map(|v| f.without(v)).collect();
        Ok(self.reindexed(parts))
    }

    /// Restricts the labels to the vertices covered by `parts` and rebuilds.
    fn reindexed(&self, parts: Vec<Face>) -> SimplicialComplex {
        let used = parts.iter().fold(Face::empty(), |acc, p| acc.union(p));
        let old: Vec<usize> = used.iter().collect();
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let labels = old.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = parts
            .iter()
            .map(|p| p.iter().map(|v| new_index[v]).collect())
            .collect();
        Self::from_index_facets(labels, facets)
    }

    /// Inclusion-minimal vertex sets that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        if self.is_void() {
            return vec![Face::empty()];
        }
        let mut out: Vec<Face> = (0..self.n())
            .map(Face::singleton)
            .filter(|s| !self.is_face(s))
            .collect();
        for f in self.faces() {
            let start = f.max_vertex().map_or(0, |m| m + 1);
            for v in start..self.n() {
                let g = f.with(v);
                if !self.is_face(&g) && g.iter().all(|w| self.is_face(&g.without(w))) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out
    }

    /// True iff every minimal nonface has two elements.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|f| f.len() == 2)
    }

    /// Adjacency lists of the 1-skeleton.
    pub fn one_skeleton(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in self.faces_of_dim(1) {
            let mut it = e.iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Ordinary chordality: every cycle of length at least 4 has a chord.
    pub fn one_skeleton_is_chordal(&self) -> bool {
        graph::is_chordal(&self.one_skeleton())
    }

    pub fn one_skeleton_is_forest(&self) -> bool {
        graph::is_forest(&self.one_skeleton())
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex[{}]", self.render_facets())
    }
}

/// Inclusion-maximal members, deduplicated and sorted.
fn maximal(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort();
    faces.dedup();
    // Sorted by size, so a face can only be contained in a later one.
    let keep: Vec<bool> = (0..faces.len())
        .map(|i| !faces[i + 1..].iter().any(|g| faces[i].is_subset(g)))
        .collect();
    faces
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
