//! Pure weighted simplicial complexes.
//!
//! A complex is given by its facets (all of the same size `n`, the rank) and
//! a probability distribution `π` on them. Every subset of a facet is a face;
//! level `j` is the set `X^(j)` of faces of size `j` and carries the marginal
//!
//! ```text
//! π_j(α) = (1 / C(n, j)) · Σ_{β ⊇ α} π(β),
//! ```
//!
//! i.e. the law of a uniformly random `j`-subset of a `π`-random facet.
//!
//! Vertices are dense integer ids assigned in first-appearance order. In the
//! partite case every vertex also belongs to a side, and the type of a face
//! is the set of sides it meets. Links keep the vertex table of their parent,
//! so a face of a link can be joined back to the pinned face directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::WalkOperator;
use crate::subsets::{binomial_f64, combinations};

pub type VertexId = usize;

/// Normalized weights below this are rejected as numerically unsupported.
pub const MIN_WEIGHT: f64 = 1e-15;

/// A face, stored as a sorted list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face(Vec<VertexId>);

impl Face {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
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

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Face::new(v)
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug)]
struct VertexTable {
    labels: Vec<String>,
    side_of: Option<Vec<usize>>,
}

/// One level `X^(j)` with its marginal and, for each face, the facets that
/// contain it.
#[derive(Clone, Debug)]
pub struct Level {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    containing: Vec<Vec<usize>>,
    marginal: Vec<f64>,
}

impl Level {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Facet indices containing the `i`-th face.
    pub fn containing(&self, i: usize) -> &[usize] {
        &self.containing[i]
    }

    pub fn marginal(&self) -> &[f64] {
        &self.marginal
    }
}

/// The random-walk matrix `M_w` on the vertices of a link, with its
/// stationary law `π_1^(w)`.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub pinned: Face,
    /// Vertex ids in the order of the rows of `walk`.
    pub vertices: Vec<VertexId>,
    pub walk: WalkOperator,
}

#[derive(Clone, Debug)]
pub struct Complex {
    vertices: Arc<VertexTable>,
    /// Sides still free in this complex; `None` when not partite.
    sides: Option<Vec<usize>>,
    rank: usize,
    facets: Vec<Face>,
    pi: Vec<f64>,
    levels: Vec<OnceLock<Level>>,
}

impl Complex {
    /// Builds a complex from labelled facets.
    ///
    /// In partite mode each assignment is an `n`-tuple and position `i` is
    /// side `i`, so the same label on two sides names two vertices. Otherwise
    /// an assignment is a set of labels. Facets that coincide as sets are
    /// merged and their weights added.
    pub fn from_labels(facets: &[(Vec<String>, f64)], partite: bool) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let n = facets[0].0.len();
        if n == 0 {
            return Err(Error::InvalidComplex("facets must be non-empty".into()));
        }
        let mut ids: HashMap<(usize, &str), VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut side_of = Vec::new();
        let mut faces = Vec::with_capacity(facets.len());
        let mut weights = Vec::with_capacity(facets.len());
        for (fi, (assignment, w)) in facets.iter().enumerate() {
            if assignment.len() != n {
                return Err(Error::InvalidComplex(format!(
                    "facet {fi} has {} vertices, expected {n}",
                    assignment.len()
                )));
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidComplex(format!(
                    "facet {fi} has non-positive weight {w}"
                )));
            }
            let mut face = Vec::with_capacity(n);
            for (pos, label) in assignment.iter().enumerate() {
                let side = if partite { pos } else { 0 };
                let id = *ids.entry((side, label.as_str())).or_insert_with(|| {
                    labels.push(label.clone());
                    side_of.push(side);
                    labels.len() - 1
                });
                if face.contains(&id) {
                    return Err(Error::InvalidComplex(format!(
                        "facet {fi} repeats vertex {label:?}"
                    )));
                }
                face.push(id);
            }
            faces.push(Face::new(face));
            weights.push(*w);
        }
        let table = VertexTable {
            labels,
            side_of: partite.then_some(side_of),
        };
        let sides = partite.then(|| (0..n).collect());
        Complex::from_faces(Arc::new(table), sides, faces, weights)
    }

    fn from_faces(
        vertices: Arc<VertexTable>,
        sides: Option<Vec<usize>>,
        faces: Vec<Face>,
        weights: Vec<f64>,
    ) -> Result<Complex> {
        let rank = faces[0].len();
        let mut order: HashMap<Face, usize> = HashMap::new();
        let mut facets = Vec::new();
        let mut pi: Vec<f64> = Vec::new();
        for (face, w) in faces.into_iter().zip(weights) {
            match order.get(&face) {
                Some(&i) => pi[i] += w,
                None => {
                    order.insert(face.clone(), facets.len());
                    facets.push(face);
                    pi.push(w);
                }
            }
        }
        let total: f64 = pi.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidComplex("total weight is not positive".into()));
        }
        for (i, p) in pi.iter_mut().enumerate() {
            *p /= total;
            if *p < MIN_WEIGHT {
                return Err(Error::InvalidComplex(format!(
                    "facet {i} has normalized weight {p:.3e} below {MIN_WEIGHT:e}"
                )));
            }
        }
        let levels = (0..=rank).map(|_| OnceLock::new()).collect();
        Ok(Complex {
            vertices,
            sides,
            rank,
            facets,
            pi,
            levels,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// The facet distribution `π`.
    pub fn weights(&self) -> &[f64] {
        &self.pi
    }

    pub fn is_partite(&self) -> bool {
        self.sides.is_some()
    }

    /// Free sides of a partite complex, in increasing order.
    pub fn sides(&self) -> Option<&[usize]> {
        self.sides.as_deref()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.vertices.labels[v]
    }

    pub fn side_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.side_of.as_ref().map(|s| s[v])
    }

    pub fn face_labels(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|&v| self.label(v).to_string())
            .collect()
    }

    /// Sorted list of sides met by `face`.
    pub fn typ(&self, face: &Face) -> Result<Vec<usize>> {
        let side_of = self.vertices.side_of.as_ref().ok_or(Error::NotPartite)?;
        let mut t: Vec<usize> = face.vertices().iter().map(|&v| side_of[v]).collect();
        t.sort_unstable();
        Ok(t)
    }

    /// The part of `face` lying on the given sides.
    pub fn restrict(&self, face: &Face, sides: &[usize]) -> Result<Face> {
        let side_of = self.vertices.side_of.as_ref().ok_or(Error::NotPartite)?;
        Ok(Face(
            face.vertices()
                .iter()
                .copied()
                .filter(|&v| sides.contains(&side_of[v]))
                .collect(),
        ))
    }

    /// Partite with sides `0..rank`, as required by the expanderized walks.
    pub fn require_top_partite(&self) -> Result<()> {
        match &self.sides {
            Some(s) if s.iter().copied().eq(0..self.rank) => Ok(()),
            _ => Err(Error::NotPartite),
        }
    }

    /// Level `X^(j)`, materialized on first use.
    pub fn level(&self, j: usize) -> Result<&Level> {
        if j > self.rank {
            return Err(Error::LevelOutOfRange {
                level: j,
                rank: self.rank,
            });
        }
        Ok(self.levels[j].get_or_init(|| self.build_level(j)))
    }

    fn build_level(&self, j: usize) -> Level {
        let mut faces = Vec::new();
        let mut index = HashMap::new();
        let mut containing: Vec<Vec<usize>> = Vec::new();
        for (fi, facet) in self.facets.iter().enumerate() {
            for sub in combinations(facet.vertices(), j) {
                let face = Face(sub);
                let i = *index.entry(face.clone()).or_insert_with(|| {
                    faces.push(face);
                    containing.push(Vec::new());
                    faces.len() - 1
                });
                containing[i].push(fi);
            }
        }
        let c = binomial_f64(self.rank, j);
        let marginal = containing
            .iter()
            .map(|fs| fs.iter().map(|&f| self.pi[f]).sum::<f64>() / c)
            .collect();
        Level {
            faces,
            index,
            containing,
            marginal,
        }
    }

    pub fn level_size(&self, j: usize) -> Result<usize> {
        Ok(self.level(j)?.len())
    }

    /// `π_j` in the order of `level(j)`.
    pub fn marginal(&self, j: usize) -> Result<&[f64]> {
        Ok(self.level(j)?.marginal())
    }

    /// `π_j` obtained by pushing `π` down one level at a time:
    /// `π_j(α) = (1/(j+1)) Σ_{β ⊃ α, |β| = j+1} π_{j+1}(β)`.
    pub fn marginal_by_recursion(&self, j: usize) -> Result<Vec<f64>> {
        if j > self.rank {
            return Err(Error::LevelOutOfRange {
                level: j,
                rank: self.rank,
            });
        }
        let mut current: Vec<f64> = self.pi.clone();
        let mut upper = self.level(self.rank)?;
        for i in (j..self.rank).rev() {
            let lower = self.level(i)?;
            let mut next = vec![0.0; lower.len()];
            for (b, beta) in upper.faces().iter().enumerate() {
                for sub in combinations(beta.vertices(), i) {
                    let a = lower.index[&Face(sub)];
                    next[a] += current[b] / (i + 1) as f64;
                }
            }
            current = next;
            upper = lower;
        }
        Ok(current)
    }

    /// Facets containing `face`, with their conditional probabilities.
    pub fn conditional(&self, face: &Face) -> Result<Vec<(usize, f64)>> {
        let level = self.level(face.len())?;
        let i = level
            .index_of(face)
            .ok_or_else(|| Error::NotAFace(face.vertices().to_vec()))?;
        let fs = level.containing(i);
        let z: f64 = fs.iter().map(|&f| self.pi[f]).sum();
        Ok(fs.iter().map(|&f| (f, self.pi[f] / z)).collect())
    }

    /// The link `X_w = {β \ w : w ⊆ β}` with `π^(w) ∝ π` on facets containing `w`.
    pub fn pin(&self, w: &Face) -> Result<Complex> {
        if w.len() >= self.rank {
            return Err(Error::PinningTooDeep {
                depth: w.len(),
                max: self.rank.saturating_sub(1),
            });
        }
        let cond = self.conditional(w)?;
        let faces = cond.iter().map(|&(f, _)| self.facets[f].minus(w)).collect();
        let weights = cond.iter().map(|&(_, p)| p).collect();
        let sides = match &self.sides {
            Some(s) => {
                let t = self.typ(w)?;
                Some(s.iter().copied().filter(|x| !t.contains(x)).collect())
            }
            None => None,
        };
        Complex::from_faces(self.vertices.clone(), sides, faces, weights)
    }

    /// The link graph `M_w` for `|w| ≤ n - 2`.
    pub fn link_graph(&self, w: &Face) -> Result<LinkGraph> {
        if w.len() + 2 > self.rank {
            return Err(Error::PinningTooDeep {
                depth: w.len(),
                max: self.rank.saturating_sub(2),
            });
        }
        let link = self.pin(w)?;
        let l1 = link.level(1)?;
        let l2 = link.level(2)?;
        let m = l1.len();
        let mut walk = nalgebra::DMatrix::zeros(m, m);
        for (e, edge) in l2.faces().iter().enumerate() {
            let (x, y) = (edge.vertices()[0], edge.vertices()[1]);
            let ix = l1.index[&Face(vec![x])];
            let iy = l1.index[&Face(vec![y])];
            let p2 = l2.marginal[e];
            walk[(ix, iy)] += p2 / (2.0 * l1.marginal[ix]);
            walk[(iy, ix)] += p2 / (2.0 * l1.marginal[iy]);
        }
        let pi1 = l1.marginal().to_vec();
        Ok(LinkGraph {
            pinned: w.clone(),
            vertices: l1.faces().iter().map(|f| f.vertices()[0]).collect(),
            walk: WalkOperator::new(walk, pi1.clone(), pi1),
        })
    }

    /// All chains `∅ ⊊ ω¹ ⊊ … ⊊ ω^ℓ` with `ω^i ∈ X^(i)`.
    pub fn chains(&self, ell: usize) -> Result<Vec<Vec<Face>>> {
        let top = self.level(ell)?;
        let mut out = Vec::new();
        for face in top.faces() {
            permutations(face.vertices(), &mut Vec::new(), &mut out);
        }
        Ok(out)
    }

    /// Wire form of the complex, with facets written back as labels.
    pub fn to_file(&self) -> ComplexFile {
        let facets = self
            .facets
            .iter()
            .zip(&self.pi)
            .map(|(f, &w)| {
                let mut vs = f.vertices().to_vec();
                if let Some(side_of) = &self.vertices.side_of {
                    vs.sort_by_key(|&v| side_of[v]);
                }
                FacetEntry {
                    assignment: vs
                        .iter()
                        .map(|&v| Label(self.label(v).to_string()))
                        .collect(),
                    weight: w,
                }
            })
            .collect();
        ComplexFile {
            n: self.rank,
            partite: self.is_partite(),
            sides: None,
            facets,
        }
    }
}

fn permutations(rest: &[VertexId], prefix: &mut Vec<VertexId>, out: &mut Vec<Vec<Face>>) {
    if rest.is_empty() {
        let chain = (1..=prefix.len())
            .map(|i| Face::new(prefix[..i].to_vec()))
            .collect();
        out.push(chain);
        return;
    }
    for i in 0..rest.len() {
        let mut r = rest.to_vec();
        let v = r.remove(i);
        prefix.push(v);
        permutations(&r, prefix, out);
        prefix.pop();
    }
}

/// Labels may be written as JSON strings or numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "LabelRepr", into = "String")]
pub struct Label(pub String);

#[derive(Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl From<LabelRepr> for Label {
    fn from(r: LabelRepr) -> Self {
        Label(match r {
            LabelRepr::Str(s) => s,
            LabelRepr::Int(i) => i.to_string(),
            LabelRepr::Float(x) => x.to_string(),
            LabelRepr::Bool(b) => b.to_string(),
        })
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetEntry {
    pub assignment: Vec<Label>,
    pub weight: f64,
}

/// `{"n", "partite", "sides"?, "facets": [{"assignment", "weight"}]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    #[serde(default)]
    pub partite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<Vec<Vec<Label>>>,
    pub facets: Vec<FacetEntry>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<Complex> {
        for (i, f) in self.facets.iter().enumerate() {
            if f.assignment.len() != self.n {
                return Err(Error::InvalidComplex(format!(
                    "facet {i} has {} vertices, expected n = {}",
                    f.assignment.len(),
                    self.n
                )));
            }
        }
        if let Some(sides) = &self.sides {
            if !self.partite {
                return Err(Error::InvalidComplex(
                    "sides given for a non-partite complex".into(),
                ));
            }
            if sides.len() != self.n {
                return Err(Error::InvalidComplex(format!(
                    "{} sides listed, expected {}",
                    sides.len(),
                    self.n
                )));
            }
            for (i, f) in self.facets.iter().enumerate() {
                for (s, label) in f.assignment.iter().enumerate() {
                    if !sides[s].contains(label) {
                        return Err(Error::InvalidComplex(format!(
                            "facet {i} uses {:?} which is not on side {s}",
                            label.0
                        )));
                    }
                }
            }
            for (s, side) in sides.iter().enumerate() {
                for label in side {
                    if !self.facets.iter().any(|f| &f.assignment[s] == label) {
                        return Err(Error::InvalidComplex(format!(
                            "vertex {:?} on side {s} lies in no facet, so the complex is not pure",
                            label.0
                        )));
                    }
                }
            }
        }
        let facets: Vec<(Vec<String>, f64)> = self
            .facets
            .into_iter()
            .map(|f| (f.assignment.into_iter().map(|l| l.0).collect(), f.weight))
            .collect();
        Complex::from_labels(&facets, self.partite)
    }
}

pub fn complex_from_json(text: &str) -> Result<Complex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    file.into_complex()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    /// Proper colorings of a triangle with three colors, uniform weights.
    pub(crate) fn k3_colorings() -> Complex {
        let mut facets = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        facets.push((vec![a.to_string(), b.to_string(), c.to_string()], 1.0));
                    }
                }
            }
        }
        Complex::from_labels(&facets, true).unwrap()
    }

    pub(crate) fn product_2x2() -> Complex {
        let f = vec![
            (s(&["a0", "b0"]), 1.0),
            (s(&["a0", "b1"]), 1.0),
            (s(&["a1", "b0"]), 1.0),
            (s(&["a1", "b1"]), 1.0),
        ];
        Complex::from_labels(&f, true).unwrap()
    }

    #[test]
    fn k3_levels() {
        let x = k3_colorings();
        assert_eq!(x.rank(), 3);
        assert_eq!(x.facets().len(), 6);
        assert_eq!(x.level_size(1).unwrap(), 9);
        for &p in x.marginal(1).unwrap() {
            assert!((p - 1.0 / 9.0).abs() < 1e-15);
        }
        assert_eq!(x.level_size(0).unwrap(), 1);
        assert!((x.marginal(0).unwrap()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn marginal_routes_agree() {
        let f = vec![
            (s(&["a", "b", "c"]), 0.5),
            (s(&["a", "b", "d"]), 2.0),
            (s(&["b", "c", "e"]), 1.25),
        ];
        let x = Complex::from_labels(&f, false).unwrap();
        for j in 0..=3 {
            let direct = x.marginal(j).unwrap();
            let rec = x.marginal_by_recursion(j).unwrap();
            for (a, b) in direct.iter().zip(&rec) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!((direct.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn duplicate_facets_merge() {
        let f = vec![
            (s(&["a", "b"]), 1.0),
            (s(&["b", "a"]), 1.0),
            (s(&["a", "c"]), 2.0),
        ];
        let x = Complex::from_labels(&f, false).unwrap();
        assert_eq!(x.facets().len(), 2);
        assert!((x.weights()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Complex::from_labels(&[], false).is_err());
        let ragged = vec![(s(&["a", "b"]), 1.0), (s(&["a"]), 1.0)];
        assert!(Complex::from_labels(&ragged, false).is_err());
        let neg = vec![(s(&["a", "b"]), -1.0)];
        assert!(Complex::from_labels(&neg, false).is_err());
        let rep = vec![(s(&["a", "a"]), 1.0)];
        assert!(Complex::from_labels(&rep, false).is_err());
        let tiny = vec![(s(&["a", "b"]), 1.0), (s(&["a", "c"]), 1e-17)];
        assert!(Complex::from_labels(&tiny, false).is_err());
    }

    #[test]
    fn non_pure_file_rejected() {
        let text = r#"{"n":2,"partite":true,"sides":[["x","y"],["u","v"]],
            "facets":[{"assignment":["x","u"],"weight":1}]}"#;
        let err = complex_from_json(text).unwrap_err();
        assert!(err.to_string().contains("not pure"));
    }

    #[test]
    fn numeric_labels_load() {
        let text = r#"{"n":2,"partite":true,"facets":[
            {"assignment":[0,1],"weight":1},{"assignment":[1,0],"weight":3}]}"#;
        let x = complex_from_json(text).unwrap();
        assert_eq!(x.level_size(1).unwrap(), 4);
        assert!((x.weights()[1] - 0.75).abs() < 1e-15);
        let back = serde_json::to_string(&x.to_file()).unwrap();
        let y = complex_from_json(&back).unwrap();
        assert_eq!(y.weights(), x.weights());
    }

    #[test]
    fn product_chains() {
        let x = product_2x2();
        let chains = x.chains(2).unwrap();
        assert_eq!(chains.len(), 8);
        for c in &chains {
            assert_eq!(c.len(), 2);
            assert!(c[0].is_subset_of(&c[1]));
        }
    }

    #[test]
    fn pinning_matches_marginal_identity() {
        let f = vec![
            (s(&["a", "b", "c"]), 0.5),
            (s(&["a", "b", "d"]), 2.0),
            (s(&["a", "c", "d"]), 1.0),
            (s(&["b", "c", "e"]), 1.25),
        ];
        let x = Complex::from_labels(&f, false).unwrap();
        let n = x.rank();
        for j in 0..n {
            let lj = x.level(j).unwrap();
            for (ai, alpha) in lj.faces().iter().enumerate() {
                let link = x.pin(alpha).unwrap();
                for l in 0..=(n - j) {
                    let ll = link.level(l).unwrap();
                    let upper = x.level(j + l).unwrap();
                    for (ti, tau) in ll.faces().iter().enumerate() {
                        let joined = alpha.union(tau);
                        let pj = upper.marginal()[upper.index_of(&joined).unwrap()];
                        let expect = pj / (binomial_f64(j + l, l) * lj.marginal()[ai]);
                        assert!((ll.marginal()[ti] - expect).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn link_graph_is_reversible_with_zero_diagonal() {
        let x = k3_colorings();
        let g = x.link_graph(&Face::empty()).unwrap();
        let m = &g.walk.matrix;
        let pi = &g.walk.mu_in;
        for i in 0..m.nrows() {
            assert_eq!(m[(i, i)], 0.0);
            assert!((m.row(i).sum() - 1.0).abs() < 1e-12);
            for j in 0..m.ncols() {
                assert!((pi[i] * m[(i, j)] - pi[j] * m[(j, i)]).abs() < 1e-12);
            }
        }
        assert!(x.link_graph(&x.facets()[0].clone()).is_err());
    }

    #[test]
    fn typed_restriction() {
        let x = k3_colorings();
        let facet = &x.facets()[0];
        assert_eq!(x.typ(facet).unwrap(), vec![0, 1, 2]);
        let r = x.restrict(facet, &[0, 2]).unwrap();
        assert_eq!(x.typ(&r).unwrap(), vec![0, 2]);
        let link = x.pin(&r).unwrap();
        assert_eq!(link.sides().unwrap(), &[1]);
    }
}
