//! Path categories of directed graphs and of k-graph skeletons.
//!
//! An edge `e` goes from `s(e)` to `r(e)`; a path `e₁e₂⋯eₙ` needs
//! `s(eᵢ) = r(eᵢ₊₁)`, so it composes like morphisms in the category. Length
//! preserving relations (the factorization squares of a k-graph) identify
//! paths; the resulting classes are the morphisms.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::category::{Lcsc, LcscBuilder, MorphismId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("graph has a cycle through vertex `{0}`")]
    Cyclic(String),
    #[error("relation {0}: {1}")]
    BadRelation(usize, String),
    #[error("degree vectors must all have the same positive length")]
    BadDegree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub range: usize,
    pub source: usize,
    pub degree: Vec<u32>,
}

/// Vertices, edges and length-preserving relations `lhs = rhs` between
/// edge words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathPresentation {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl PathPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> Result<usize, PathError> {
        if self.vertices.iter().any(|v| v == name) || self.edges.iter().any(|e| e.name == name) {
            return Err(PathError::Duplicate(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize, PathError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PathError::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<usize, PathError> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| PathError::UnknownEdge(name.to_string()))
    }

    /// Adds an edge from `source` to `range`. An empty degree means a plain
    /// graph edge (degree 1 in ℕ).
    pub fn edge(&mut self, name: &str, range: &str, source: &str, degree: Vec<u32>) -> Result<usize, PathError> {
        if self.vertices.iter().any(|v| v == name) || self.edges.iter().any(|e| e.name == name) {
            return Err(PathError::Duplicate(name.to_string()));
        }
        let range = self.vertex_id(range)?;
        let source = self.vertex_id(source)?;
        self.edges.push(Edge { name: name.to_string(), range, source, degree });
        Ok(self.edges.len() - 1)
    }

    pub fn relation(&mut self, lhs: &[&str], rhs: &[&str]) -> Result<(), PathError> {
        let l = lhs.iter().map(|e| self.edge_id(e)).collect::<Result<Vec<_>, _>>()?;
        let r = rhs.iter().map(|e| self.edge_id(e)).collect::<Result<Vec<_>, _>>()?;
        self.relations.push((l, r));
        Ok(())
    }

    fn rank(&self) -> Result<Option<usize>, PathError> {
        let with: Vec<usize> = self.edges.iter().map(|e| e.degree.len()).collect();
        if with.iter().all(|&k| k == 0) {
            return Ok(None);
        }
        let k = with[0];
        if k == 0 || with.iter().any(|&j| j != k) {
            return Err(PathError::BadDegree);
        }
        Ok(Some(k))
    }

    fn edge_degree(&self, e: usize) -> Vec<u32> {
        if self.edges[e].degree.is_empty() {
            vec![1]
        } else {
            self.edges[e].degree.clone()
        }
    }

    fn word_ends(&self, word: &[usize]) -> Option<(usize, usize)> {
        let first = word.first()?;
        let last = word.last()?;
        for w in word.windows(2) {
            if self.edges[w[0]].source != self.edges[w[1]].range {
                return None;
            }
        }
        Some((self.edges[*first].range, self.edges[*last].source))
    }

    fn check_relations(&self) -> Result<(), PathError> {
        for (i, (l, r)) in self.relations.iter().enumerate() {
            if l.len() != r.len() || l.is_empty() {
                return Err(PathError::BadRelation(i, "sides must be nonempty and of equal length".into()));
            }
            let (Some(le), Some(re)) = (self.word_ends(l), self.word_ends(r)) else {
                return Err(PathError::BadRelation(i, "a side is not a path".into()));
            };
            if le != re {
                return Err(PathError::BadRelation(i, "sides have different endpoints".into()));
            }
            if self.degree_of(l) != self.degree_of(r) {
                return Err(PathError::BadRelation(i, "sides have different degrees".into()));
            }
        }
        Ok(())
    }

    fn degree_of(&self, word: &[usize]) -> Vec<u32> {
        let k = self.rank().ok().flatten().unwrap_or(1);
        let mut d = vec![0; k];
        for &e in word {
            for (x, y) in d.iter_mut().zip(self.edge_degree(e)) {
                *x += y;
            }
        }
        d
    }

    /// A vertex lying on a directed cycle, if any.
    pub fn find_cycle(&self) -> Option<usize> {
        // Kahn's algorithm on edges source → range.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.range] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = vec![false; n];
        while let Some(v) = stack.pop() {
            done[v] = true;
            for e in self.edges.iter().filter(|e| e.source == v) {
                indeg[e.range] -= 1;
                if indeg[e.range] == 0 {
                    stack.push(e.range);
                }
            }
        }
        (0..n).find(|&v| !done[v])
    }

    /// All composable edge words with at most `max_len` edges, sorted by
    /// length then lexicographically.
    fn words(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..self.edges.len()).map(|e| vec![e]).collect();
        let mut len = 1;
        while !layer.is_empty() && len <= max_len {
            out.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for w in &layer {
                let s = self.edges[*w.last().unwrap()].source;
                for (e, edge) in self.edges.iter().enumerate() {
                    if edge.range == s {
                        let mut v = w.clone();
                        v.push(e);
                        next.push(v);
                    }
                }
            }
            layer = next;
            len += 1;
        }
        out
    }

    /// Partition of the words into classes under the relations. Returns the
    /// class representative (the least word) for each word.
    fn classes(&self, words: &[Vec<usize>]) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let index: BTreeMap<&Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, w) in words.iter().enumerate() {
            for (l, r) in &self.relations {
                if l.len() > w.len() {
                    continue;
                }
                for pos in 0..=(w.len() - l.len()) {
                    if &w[pos..pos + l.len()] == l.as_slice() {
                        let mut v = w.clone();
                        v.splice(pos..pos + l.len(), r.iter().copied());
                        if let Some(&j) = index.get(&v) {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            // Keep the smaller index (least word) as root.
                            if a < b {
                                parent[b] = a;
                            } else {
                                parent[a] = b;
                            }
                        }
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            let root = find(&mut parent, i);
            out.insert(w.clone(), words[root].clone());
        }
        out
    }

    fn word_name(&self, word: &[usize]) -> String {
        word.iter().map(|&e| self.edges[e].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// The finite path category. Vertices get ids `0..|V|` in input order;
    /// path classes follow, ordered by length and then by least word.
    pub fn to_category(&self) -> Result<Lcsc, PathError> {
        if let Some(v) = self.find_cycle() {
            return Err(PathError::Cyclic(self.vertices[v].clone()));
        }
        let rank = self.rank()?;
        self.check_relations()?;
        let words = self.words(self.vertices.len());
        let classes = self.classes(&words);
        let reps: BTreeSet<&Vec<usize>> = classes.values().collect();
        let mut reps: Vec<&Vec<usize>> = reps.into_iter().collect();
        reps.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));

        let mut b = LcscBuilder::new();
        let k = rank.unwrap_or(1);
        let nv = self.vertices.len();
        for v in &self.vertices {
            let id = b.object(v.clone());
            b.degree(id, vec![0; k]);
        }
        let mut id_of: BTreeMap<Vec<usize>, MorphismId> = BTreeMap::new();
        for rep in &reps {
            let (r, s) = self.word_ends(rep).expect("enumerated words are paths");
            let id = b.morphism(self.word_name(rep), r, s);
            b.degree(id, self.degree_of(rep));
            id_of.insert((*rep).clone(), id);
        }
        let class_id = |w: &Vec<usize>| id_of[&classes[w]];
        // Units.
        for v in 0..nv {
            b.compose(v, v, v);
        }
        for w in &words {
            let (r, s) = self.word_ends(w).unwrap();
            let id = class_id(w);
            b.compose(r, id, id).compose(id, s, id);
        }
        let rep_list: Vec<(&Vec<usize>, MorphismId)> = reps.iter().map(|r| (*r, id_of[*r])).collect();
        for &(x, xi) in &rep_list {
            let (_, xs) = self.word_ends(x).unwrap();
            for &(y, yi) in &rep_list {
                let (yr, _) = self.word_ends(y).unwrap();
                if xs == yr {
                    let mut w = x.clone();
                    w.extend_from_slice(y);
                    b.compose(xi, yi, class_id(&w));
                }
            }
        }
        b.build().map_err(|e| PathError::BadRelation(0, e.to_string()))
    }

    /// Right-ideal membership for graphs with cycles, answered only up to a
    /// path-length bound.
    pub fn bounded(&self, depth: usize) -> Result<BoundedPaths, PathError> {
        self.rank()?;
        self.check_relations()?;
        let words = self.words(depth);
        let classes = self.classes(&words);
        Ok(BoundedPaths { presentation: self.clone(), depth, classes })
    }
}

/// Path classes of length at most `depth`, for presentations that may have
/// cycles and hence infinitely many morphisms.
#[derive(Debug, Clone)]
pub struct BoundedPaths {
    presentation: PathPresentation,
    depth: usize,
    classes: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl BoundedPaths {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Class representatives of the nonempty paths within the bound.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let set: BTreeSet<&Vec<usize>> = self.classes.values().collect();
        let mut v: Vec<Vec<usize>> = set.into_iter().cloned().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    pub fn name(&self, word: &[usize]) -> String {
        self.presentation.word_name(word)
    }

    pub fn parse_word(&self, names: &[&str]) -> Result<Vec<usize>, PathError> {
        names.iter().map(|n| self.presentation.edge_id(n)).collect()
    }

    /// `αΛ` truncated to paths of length at most the depth bound (the
    /// vertex ideal `vΛ` is requested with an empty word and a vertex).
    pub fn right_ideal(&self, word: &[usize], vertex: Option<usize>) -> Result<Vec<Vec<usize>>, PathError> {
        let start_source = match (word.is_empty(), vertex) {
            (true, Some(v)) if v < self.presentation.vertices.len() => v,
            (true, _) => return Err(PathError::UnknownVertex(format!("{vertex:?}"))),
            (false, _) => {
                let w = word.to_vec();
                if !self.classes.contains_key(&w) {
                    return Err(PathError::UnknownEdge(self.name(word)));
                }
                self.presentation.word_ends(word).unwrap().1
            }
        };
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        if !word.is_empty() {
            out.insert(self.classes[&word.to_vec()].clone());
        }
        for (w, rep) in &self.classes {
            if w.len() > word.len() && w.starts_with(word) {
                let tail_start = self.presentation.edges[w[word.len()]].range;
                if tail_start == start_source {
                    out.insert(rep.clone());
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge() -> PathPresentation {
        let mut p = PathPresentation::new();
        p.vertex("v").unwrap();
        p.vertex("w").unwrap();
        p.edge("e", "v", "w", vec![]).unwrap();
        p
    }

    #[test]
    fn single_edge_graph_has_three_morphisms() {
        let cat = one_edge().to_category().unwrap();
        assert_eq!(cat.len(), 3);
        assert!(cat.validate(true).passed);
        assert_eq!(cat.degree(2), Some(&[1u32][..]));
        assert_eq!(cat.right_ideal(0).unwrap().elements, BTreeSet::from([0, 2]));
    }

    #[test]
    fn square_identifies_the_two_diagonals() {
        let mut p = PathPresentation::new();
        for v in ["A", "B", "C", "D"] {
            p.vertex(v).unwrap();
        }
        p.edge("a", "A", "B", vec![1, 0]).unwrap();
        p.edge("b", "A", "C", vec![0, 1]).unwrap();
        p.edge("c", "B", "D", vec![0, 1]).unwrap();
        p.edge("d'", "C", "D", vec![1, 0]).unwrap();
        let unrelated = p.to_category().unwrap();
        assert_eq!(unrelated.len(), 10);
        p.relation(&["a", "c"], &["b", "d'"]).unwrap();
        let cat = p.to_category().unwrap();
        assert_eq!(cat.len(), 9);
        assert!(cat.validate_degree().unwrap().passed);
        assert!(!unrelated.validate_degree().unwrap().passed);
    }

    #[test]
    fn cycles_are_rejected_for_finite_expansion() {
        let mut p = PathPresentation::new();
        p.vertex("v").unwrap();
        p.edge("f", "v", "v", vec![]).unwrap();
        assert_eq!(p.to_category().unwrap_err(), PathError::Cyclic("v".into()));
    }

    #[test]
    fn bounded_loop_ideals() {
        let mut p = PathPresentation::new();
        p.vertex("v").unwrap();
        p.edge("f", "v", "v", vec![]).unwrap();
        let b = p.bounded(3).unwrap();
        assert_eq!(b.paths().len(), 3);
        let ff = b.right_ideal(&[0, 0], None).unwrap();
        assert_eq!(ff, vec![vec![0, 0], vec![0, 0, 0]]);
        assert_eq!(b.right_ideal(&[], Some(0)).unwrap().len(), 3);
    }

    #[test]
    fn relation_endpoints_are_checked() {
        let mut p = one_edge();
        p.vertex("u").unwrap();
        p.edge("g", "v", "u", vec![]).unwrap();
        p.relation(&["e"], &["g"]).unwrap();
        assert!(matches!(p.to_category(), Err(PathError::BadRelation(0, _))));
    }
}
