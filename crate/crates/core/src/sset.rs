//! Dimension-truncated finite simplicial sets in generator/face normal form.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::simplex::{coface, mask_of_surjection, surjection_masks, Gen, SimplexRef, MAX_DIM};

/// A finite simplicial set known up to dimension `max_dim`.
///
/// Only non-degenerate simplices (generators) are stored, each with its list
/// of faces; degenerate simplices are computed on demand. Nothing above
/// `max_dim` is ever read or produced.
#[derive(Clone)]
pub struct SimplicialSet {
    max_dim: usize,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, Gen>,
    vertices: Vec<Vec<Vec<u32>>>,
    by_vertex_set: OnceLock<Option<HashMap<Vec<u32>, Gen>>>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.max_dim == other.max_dim && self.names == other.names && self.faces == other.faces
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialSet")
            .field("max_dim", &self.max_dim)
            .field("counts", &self.counts())
            .finish()
    }
}

/// One violated invariant found by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.generator, self.message)
    }
}

/// Identifiers are non-empty, contain no whitespace, `:` or `=`, and do not
/// start with a digit or with `s<digit>` (which would read as a degeneracy).
pub fn is_valid_identifier(name: &str) -> bool {
    let bytes = name.as_bytes();
    if bytes.is_empty() || bytes[0].is_ascii_digit() || bytes[0] == b'#' {
        return false;
    }
    if bytes[0] == b's' && bytes.len() > 1 && bytes[1].is_ascii_digit() {
        return false;
    }
    !name.chars().any(|c| c.is_whitespace() || c == ':' || c == '=')
}

impl SimplicialSet {
    pub fn empty(max_dim: usize) -> Self {
        SimplicialSetBuilder::new(max_dim).build_unvalidated()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of generators in dimension `k` (zero above the truncation).
    pub fn count(&self, k: usize) -> usize {
        self.names.get(k).map_or(0, Vec::len)
    }

    /// Generator counts for dimensions `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|k| self.count(k)).collect()
    }

    /// Highest dimension carrying a generator.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.max_dim).rev().find(|&k| self.count(k) > 0)
    }

    pub fn is_empty(&self) -> bool {
        self.count(0) == 0
    }

    pub fn gens(&self, k: usize) -> impl Iterator<Item = Gen> + '_ {
        (0..self.count(k)).map(move |i| Gen::new(k, i))
    }

    /// All generators in dimension order.
    pub fn all_gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..=self.max_dim).flat_map(move |k| self.gens(k))
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.dim()][g.index()]
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.lookup.get(name).copied()
    }

    pub fn vertex(&self, index: usize) -> SimplexRef {
        SimplexRef::nondegenerate(Gen::new(0, index))
    }

    /// Stored faces `d_0 g, ..., d_k g` of a generator.
    pub fn gen_faces(&self, g: Gen) -> &[SimplexRef] {
        &self.faces[g.dim()][g.index()]
    }

    /// Vertex indices of a generator, in order.
    pub fn gen_vertices(&self, g: Gen) -> &[u32] {
        &self.vertices[g.dim()][g.index()]
    }

    /// Vertex indices of any simplex, in order (with repetitions for degenerate ones).
    pub fn vertices_of(&self, x: SimplexRef) -> Vec<u32> {
        let base = self.gen_vertices(x.gen);
        x.surjection().into_iter().map(|i| base[i]).collect()
    }

    pub fn contains(&self, x: SimplexRef) -> bool {
        x.gen.dim() <= self.max_dim
            && x.gen.index() < self.count(x.gen.dim())
            && x.dim() <= self.max_dim
            && (x.mask >> x.dim().min(31)) == 0
    }

    /// Applies the simplicial operator `φ : [m] → [dim x]` (given by its images,
    /// which must be non-decreasing) to `x`.
    pub fn apply_op(&self, x: SimplexRef, phi: &[usize]) -> SimplexRef {
        debug_assert!(phi.windows(2).all(|w| w[0] <= w[1]));
        let theta = x.surjection();
        let psi: Vec<usize> = phi.iter().map(|&p| theta[p]).collect();
        let k = x.gen.dim();
        let mut image: Vec<usize> = Vec::with_capacity(k + 1);
        for &v in &psi {
            if image.last() != Some(&v) {
                image.push(v);
            }
        }
        if image.len() == k + 1 {
            return SimplexRef { gen: x.gen, mask: mask_of_surjection(&psi) };
        }
        let face = self.restrict_gen(x.gen, &image);
        let reindexed: Vec<usize> =
            psi.iter().map(|v| image.binary_search(v).expect("image member")).collect();
        self.apply_op(face, &reindexed)
    }

    /// The face of a generator spanned by the (strictly increasing) vertex positions.
    fn restrict_gen(&self, g: Gen, keep: &[usize]) -> SimplexRef {
        let k = g.dim();
        if keep.len() == k + 1 {
            return SimplexRef::nondegenerate(g);
        }
        let missing = (0..=k).rev().find(|v| keep.binary_search(v).is_err()).expect("missing vertex");
        let face = self.faces[k][g.index()][missing];
        let shifted: Vec<usize> = keep.iter().map(|&u| if u > missing { u - 1 } else { u }).collect();
        self.apply_op(face, &shifted)
    }

    /// `d_j x`, unchecked.
    pub fn face_of(&self, x: SimplexRef, j: usize) -> SimplexRef {
        if x.mask == 0 {
            return self.faces[x.gen.dim()][x.gen.index()][j];
        }
        self.apply_op(x, &coface(x.dim(), j))
    }

    /// `d_j x` in canonical form.
    pub fn apply_face(&self, x: SimplexRef, j: usize) -> Result<SimplexRef> {
        if !self.contains(x) {
            return Err(Error::UnknownGenerator(format!("{x}")));
        }
        let dim = x.dim();
        if dim == 0 || j > dim {
            return Err(Error::FaceIndex { index: j, dim });
        }
        Ok(self.face_of(x, j))
    }

    /// `s_j x`, refusing to leave the truncation.
    pub fn apply_degeneracy(&self, x: SimplexRef, j: usize) -> Result<SimplexRef> {
        let dim = x.dim();
        if j > dim {
            return Err(Error::FaceIndex { index: j, dim });
        }
        if dim + 1 > self.max_dim {
            return Err(Error::BeyondTruncation { requested: dim + 1, max_dim: self.max_dim });
        }
        Ok(x.degenerate(j))
    }

    /// The `i`-th vertex of `x`.
    pub fn vertex_of(&self, x: SimplexRef, i: usize) -> u32 {
        let theta = x.surjection();
        self.gen_vertices(x.gen)[theta[i]]
    }

    /// All `k`-simplices in internal order (generator order, then mask).
    pub fn simplices(&self, k: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for m in 0..=k.min(self.max_dim) {
            let masks = surjection_masks(k, m);
            for g in self.gens(m) {
                out.extend(masks.iter().map(|&mask| SimplexRef { gen: g, mask }));
            }
        }
        out
    }

    /// All `k`-simplices, each in canonical form, ordered by serialization.
    pub fn enumerate_simplices(&self, k: usize) -> Result<Vec<SimplexRef>> {
        if k > self.max_dim {
            return Err(Error::BeyondTruncation { requested: k, max_dim: self.max_dim });
        }
        let mut out: Vec<(String, SimplexRef)> =
            self.simplices(k).into_iter().map(|x| (self.ref_to_string(x), x)).collect();
        out.sort();
        Ok(out.into_iter().map(|(_, x)| x).collect())
    }

    /// Lists every violated simplicial identity or malformed face.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        for k in 1..=self.max_dim {
            for g in self.gens(k) {
                let faces = self.gen_faces(g);
                if faces.len() != k + 1 {
                    report.push(Violation {
                        generator: self.name(g).to_string(),
                        message: format!("expected {} faces, found {}", k + 1, faces.len()),
                    });
                    continue;
                }
                let mut well_formed = true;
                for (j, &f) in faces.iter().enumerate() {
                    if f.dim() != k - 1 || !self.contains(f) || f.gen.dim() >= k {
                        report.push(Violation {
                            generator: self.name(g).to_string(),
                            message: format!("face d{j} does not resolve to a {}-simplex", k - 1),
                        });
                        well_formed = false;
                    }
                }
                if !well_formed || k < 2 {
                    continue;
                }
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = self.face_of(faces[j], i);
                        let rhs = self.face_of(faces[i], j - 1);
                        if lhs != rhs {
                            report.push(Violation {
                                generator: self.name(g).to_string(),
                                message: format!(
                                    "d{i} d{j} = {} but d{} d{i} = {}",
                                    self.ref_to_string(lhs),
                                    j - 1,
                                    self.ref_to_string(rhs)
                                ),
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Canonical text of a simplex: `s<j1>s<j2>...<id>` with decreasing `j`.
    pub fn ref_to_string(&self, x: SimplexRef) -> String {
        let mut s = String::new();
        for j in x.degeneracies() {
            s.push('s');
            s.push_str(&j.to_string());
        }
        s.push_str(self.name(x.gen));
        s
    }

    /// Parses `s<j1>s<j2>...<id>`; the word must be strictly decreasing and
    /// each index valid at its point of application.
    pub fn parse_ref(&self, text: &str) -> std::result::Result<SimplexRef, String> {
        let (word, id) = split_degeneracy_word(text)?;
        let gen = self.gen_by_name(id).ok_or_else(|| format!("unknown generator `{id}`"))?;
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(format!("degeneracy word in `{text}` is not strictly decreasing"));
        }
        let x = SimplexRef::from_word(gen, &word)
            .ok_or_else(|| format!("degeneracy index out of range in `{text}`"))?;
        if x.dim() > self.max_dim {
            return Err(format!("`{text}` lies beyond truncation {}", self.max_dim));
        }
        Ok(x)
    }

    /// True when every non-degenerate simplex has distinct vertices and is
    /// determined by its vertex set (an ordered simplicial complex).
    pub fn is_complex_like(&self) -> bool {
        self.vertex_set_index().is_some()
    }

    fn vertex_set_index(&self) -> Option<&HashMap<Vec<u32>, Gen>> {
        self.by_vertex_set
            .get_or_init(|| {
                let mut map = HashMap::new();
                for g in self.all_gens() {
                    let mut vs = self.gen_vertices(g).to_vec();
                    vs.sort_unstable();
                    if vs.windows(2).any(|w| w[0] == w[1]) {
                        return None;
                    }
                    if map.insert(vs, g).is_some() {
                        return None;
                    }
                }
                Some(map)
            })
            .as_ref()
    }

    /// For complex-like sets: the simplex with the given vertex sequence, if any.
    pub fn simplex_with_vertices(&self, tuple: &[u32]) -> Option<SimplexRef> {
        let index = self.vertex_set_index()?;
        if tuple.is_empty() || tuple.len() > self.max_dim + 1 {
            return None;
        }
        let mut distinct: Vec<u32> = Vec::with_capacity(tuple.len());
        for &v in tuple {
            if distinct.last() != Some(&v) {
                distinct.push(v);
            }
        }
        let mut key = distinct.clone();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let g = *index.get(&key)?;
        if self.gen_vertices(g) != distinct.as_slice() {
            return None;
        }
        let positions: Vec<usize> =
            tuple.iter().map(|v| distinct.iter().position(|d| d == v).unwrap()).collect();
        Some(SimplexRef { gen: g, mask: mask_of_surjection(&positions) })
    }

    /// Canonical "SSET v1" text.
    pub fn to_text(&self) -> String {
        crate::format::write_sset(self)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        crate::format::parse_sset(text)
    }

    /// Re-declares the truncation level. Lowering it drops generators above the
    /// new level; raising it adds no generators.
    pub fn with_max_dim(&self, max_dim: usize) -> Self {
        let mut b = SimplicialSetBuilder::new(max_dim);
        for k in 0..=max_dim.min(self.max_dim) {
            for g in self.gens(k) {
                b.add(self.name(g), self.gen_faces(g).to_vec()).expect("copy");
            }
        }
        b.build_unvalidated()
    }
}

/// Splits `s3s1foo` into `([3, 1], "foo")`.
pub(crate) fn split_degeneracy_word(text: &str) -> std::result::Result<(Vec<usize>, &str), String> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut word = Vec::new();
    while pos + 1 < bytes.len() && bytes[pos] == b's' && bytes[pos + 1].is_ascii_digit() {
        let start = pos + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let j: usize = text[start..end].parse().map_err(|_| format!("bad index in `{text}`"))?;
        if j >= MAX_DIM {
            return Err(format!("degeneracy index {j} too large"));
        }
        word.push(j);
        pos = end;
    }
    let id = &text[pos..];
    if id.is_empty() {
        return Err(format!("missing generator in `{text}`"));
    }
    Ok((word, id))
}

/// Incremental constructor for [`SimplicialSet`]. Generators must be added
/// after their faces.
#[derive(Clone, Debug)]
pub struct SimplicialSetBuilder {
    max_dim: usize,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, Gen>,
    vertices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialSetBuilder {
    pub fn new(max_dim: usize) -> Self {
        assert!(max_dim < MAX_DIM, "truncation {max_dim} exceeds supported maximum");
        SimplicialSetBuilder {
            max_dim,
            names: vec![Vec::new(); max_dim + 1],
            faces: vec![Vec::new(); max_dim + 1],
            lookup: HashMap::new(),
            vertices: vec![Vec::new(); max_dim + 1],
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.names.get(k).map_or(0, Vec::len)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.lookup.get(name).copied()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<Gen> {
        self.add(name, Vec::new())
    }

    /// Adds a generator of dimension `faces.len() - 1` (or a vertex when
    /// `faces` is empty).
    pub fn add(&mut self, name: impl Into<String>, faces: Vec<SimplexRef>) -> Result<Gen> {
        let name = name.into();
        if !is_valid_identifier(&name) {
            return Err(Error::InvalidIdentifier(name));
        }
        if self.lookup.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        let dim = faces.len().saturating_sub(1);
        if faces.len() == 1 {
            return Err(Error::Invalid(format!("`{name}`: a generator cannot have exactly one face")));
        }
        if dim > self.max_dim {
            return Err(Error::BeyondTruncation { requested: dim, max_dim: self.max_dim });
        }
        for (j, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim || f.gen.dim() >= dim || f.gen.index() >= self.count(f.gen.dim()) {
                return Err(Error::Invalid(format!("`{name}`: face d{j} does not resolve")));
            }
        }
        let verts = if dim == 0 {
            vec![self.count(0) as u32]
        } else {
            let mut vs = self.ref_vertices(faces[dim]);
            let last = *self.ref_vertices(faces[0]).last().expect("non-empty");
            vs.push(last);
            vs
        };
        let gen = Gen::new(dim, self.count(dim));
        self.names[dim].push(name.clone());
        self.faces[dim].push(faces);
        self.vertices[dim].push(verts);
        self.lookup.insert(name, gen);
        Ok(gen)
    }

    fn ref_vertices(&self, x: SimplexRef) -> Vec<u32> {
        let base = &self.vertices[x.gen.dim()][x.gen.index()];
        x.surjection().into_iter().map(|i| base[i]).collect()
    }

    /// Builds and checks all simplicial identities.
    pub fn build(self) -> Result<SimplicialSet> {
        let set = self.build_unvalidated();
        let report = set.validate();
        if let Some(v) = report.first() {
            return Err(Error::Invalid(v.to_string()));
        }
        Ok(set)
    }

    pub fn build_unvalidated(self) -> SimplicialSet {
        SimplicialSet {
            max_dim: self.max_dim,
            names: self.names,
            faces: self.faces,
            lookup: self.lookup,
            vertices: self.vertices,
            by_vertex_set: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn face_of_degenerate_vertex() {
        let d1 = builders::standard(1, 2).unwrap();
        let v0 = d1.vertex(0);
        let s0 = d1.apply_degeneracy(v0, 0).unwrap();
        assert_eq!(d1.apply_face(s0, 0).unwrap(), v0);
        assert_eq!(d1.apply_face(s0, 1).unwrap(), v0);
        // d2 s1 s0 v0 = s0 v0
        let s1s0 = d1.apply_degeneracy(s0, 1).unwrap();
        assert_eq!(d1.ref_to_string(s1s0), "s1s0v0");
        assert_eq!(d1.apply_face(s1s0, 2).unwrap(), s0);
    }

    #[test]
    fn face_of_standard_triangle() {
        let d2 = builders::standard(2, 2).unwrap();
        let top = SimplexRef::nondegenerate(Gen::new(2, 0));
        let d1 = d2.apply_face(top, 1).unwrap();
        assert_eq!(d2.vertices_of(d1), vec![0, 2]);
        assert_eq!(d2.ref_to_string(d1), "e02");
    }

    #[test]
    fn face_errors() {
        let d1 = builders::standard(1, 1).unwrap();
        assert!(matches!(d1.apply_face(d1.vertex(0), 0), Err(Error::FaceIndex { .. })));
        let e = SimplexRef::nondegenerate(Gen::new(1, 0));
        assert!(matches!(d1.apply_face(e, 2), Err(Error::FaceIndex { .. })));
        let bogus = SimplexRef::nondegenerate(Gen::new(1, 7));
        assert!(matches!(d1.apply_face(bogus, 0), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn enumerate_counts() {
        let d0 = builders::standard(0, 2).unwrap();
        assert_eq!(d0.enumerate_simplices(2).unwrap().len(), 1);
        let d1 = builders::standard(1, 1).unwrap();
        assert_eq!(d1.enumerate_simplices(1).unwrap().len(), 3);
        let bd2 = builders::boundary(2, 2).unwrap();
        assert_eq!(bd2.enumerate_simplices(1).unwrap().len(), 6);
        assert!(matches!(d1.enumerate_simplices(2), Err(Error::BeyondTruncation { .. })));
    }

    #[test]
    fn enumeration_is_sorted_by_text() {
        let d2 = builders::standard(2, 3).unwrap();
        let xs = d2.enumerate_simplices(2).unwrap();
        let texts: Vec<String> = xs.iter().map(|&x| d2.ref_to_string(x)).collect();
        let mut sorted = texts.clone();
        sorted.sort();
        assert_eq!(texts, sorted);
    }

    #[test]
    fn validate_flags_bad_identity() {
        // a triangle whose faces do not agree on vertices
        let mut b = SimplicialSetBuilder::new(2);
        let v: Vec<Gen> = (0..3).map(|i| b.add_vertex(format!("v{i}")).unwrap()).collect();
        let r = |g: Gen| SimplexRef::nondegenerate(g);
        let e01 = b.add("e01", vec![r(v[1]), r(v[0])]).unwrap();
        let e02 = b.add("e02", vec![r(v[2]), r(v[0])]).unwrap();
        let e12 = b.add("e12", vec![r(v[2]), r(v[1])]).unwrap();
        // d0 should be e12; use e02 instead: d0 d1 = v2 but d0 d0 = v2, d1 d0 = v0 vs d0 d2 = v1
        b.add("t", vec![r(e02), r(e02), r(e01)]).unwrap();
        let _ = e12;
        let set = b.build_unvalidated();
        let report = set.validate();
        assert_eq!(report.len(), 1, "{report:?}");
        assert!(builders::standard(3, 3).unwrap().validate().is_empty());
    }

    #[test]
    fn identifiers() {
        assert!(is_valid_identifier("v0"));
        assert!(is_valid_identifier("(s0v0,e01)"));
        assert!(!is_valid_identifier("s0v"));
        assert!(!is_valid_identifier("0a"));
        assert!(!is_valid_identifier("a:b"));
        assert!(!is_valid_identifier(""));
    }

    #[test]
    fn parse_ref_rejects_non_decreasing_words() {
        let d1 = builders::standard(1, 3).unwrap();
        assert!(d1.parse_ref("s0s1v0").is_err());
        assert_eq!(d1.ref_to_string(d1.parse_ref("s1s0v0").unwrap()), "s1s0v0");
        assert!(d1.parse_ref("s2v0").is_err());
    }

    #[test]
    fn complex_like_lookup() {
        let d2 = builders::standard(2, 3).unwrap();
        assert!(d2.is_complex_like());
        let x = d2.simplex_with_vertices(&[0, 0, 2]).unwrap();
        assert_eq!(d2.ref_to_string(x), "s0e02");
        assert!(d2.simplex_with_vertices(&[2, 0]).is_none());
        let d = builders::quotient_d(3).unwrap();
        assert!(!d.is_complex_like());
    }
}
