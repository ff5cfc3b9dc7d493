//! Finite covers of complex-like sets, the nerve of the cover category, and
//! refinements between covers.
//!
//! Members are unions of open simplices, represented by the set of
//! non-degenerate simplices they contain. A vertex star is the set of all
//! simplices containing the vertex; a subcomplex member is closed under faces.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::builders::{poset_nerve, standard};
use crate::error::{Error, Result};
use crate::format::Container;
use crate::homology::{homology, HomologyReport};
use crate::map::SimplicialMap;
use crate::simplex::{Gen, SimplexRef};
use crate::sset::{SimplicialSet, SimplicialSetBuilder};
use crate::subdivide::{sd, sd_tower, Subdivision};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemberKind {
    /// Open star of a vertex.
    Star(u32),
    /// Closure of the listed simplices.
    Subcomplex(Vec<Gen>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub kind: MemberKind,
    pub support: BTreeSet<Gen>,
}

#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub base: Arc<SimplicialSet>,
    pub members: Vec<Member>,
}

fn is_subset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn sorted_vertices(k: &SimplicialSet, g: Gen) -> Vec<u32> {
    let mut v = k.gen_vertices(g).to_vec();
    v.sort_unstable();
    v
}

fn closure(k: &SimplicialSet, gens: &[Gen]) -> BTreeSet<Gen> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Gen> = gens.to_vec();
    while let Some(g) = stack.pop() {
        if out.insert(g) && g.dim() > 0 {
            stack.extend(k.gen_faces(g).iter().map(|f| f.gen));
        }
    }
    out
}

impl CoverSpec {
    pub fn new(base: Arc<SimplicialSet>, members: Vec<(String, MemberKind)>) -> Result<Self> {
        if !base.is_complex_like() {
            return Err(Error::Precondition("covers need a complex-like base".into()));
        }
        let mut out = Vec::with_capacity(members.len());
        for (name, kind) in members {
            let support = match &kind {
                MemberKind::Star(v) => {
                    if *v as usize >= base.count(0) {
                        return Err(Error::Invalid(format!("member `{name}`: no vertex {v}")));
                    }
                    base.all_gens().filter(|&g| base.gen_vertices(g).contains(v)).collect()
                }
                MemberKind::Subcomplex(gens) => {
                    if let Some(g) = gens.iter().find(|g| g.dim() > base.max_dim() || g.index() >= base.count(g.dim())) {
                        return Err(Error::Invalid(format!("member `{name}`: no simplex {g:?}")));
                    }
                    closure(&base, gens)
                }
            };
            out.push(Member { name, kind, support });
        }
        let c = CoverSpec { base, members: out };
        if let Some(g) = c.base.all_gens().find(|g| c.members.iter().all(|m| !m.support.contains(g))) {
            return Err(Error::Invalid(format!("`{}` is not covered", c.base.name(g))));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `U_S` for a set of member indices.
    pub fn intersection(&self, s: &[usize]) -> BTreeSet<Gen> {
        let mut it = s.iter();
        let Some(&first) = it.next() else { return BTreeSet::new() };
        let mut cur = self.members[first].support.clone();
        for &i in it {
            cur.retain(|g| self.members[i].support.contains(g));
        }
        cur
    }

    /// Base plus one `member` line per member: `name : star v` or
    /// `name : sub x y …`.
    pub fn to_container(&self) -> Container {
        let mut c = Container::new("COVER");
        c.add_set("K", self.base.clone());
        for m in &self.members {
            let body = match &m.kind {
                MemberKind::Star(v) => format!("star {}", self.base.name(Gen::new(0, *v as usize))),
                MemberKind::Subcomplex(gens) => format!("sub {}", gens.iter().map(|&g| self.base.name(g)).join(" ")),
            };
            c.add_meta("member", format!("{} : {body}", m.name));
        }
        c
    }

    pub fn from_container(c: &Container) -> Result<Self> {
        let base = c.set("K").cloned().ok_or_else(|| Error::Invalid("cover lacks the set `K`".into()))?;
        let mut members = Vec::new();
        for (k, v) in &c.meta {
            if k != "member" {
                continue;
            }
            let (name, body) = v.split_once(" : ").ok_or_else(|| Error::Invalid(format!("bad member `{v}`")))?;
            let mut words = body.split_whitespace();
            let lookup = |w: &str| base.gen_by_name(w).ok_or_else(|| Error::UnknownGenerator(w.into()));
            let kind = match words.next() {
                Some("star") => {
                    let g = lookup(words.next().unwrap_or(""))?;
                    if g.dim() != 0 {
                        return Err(Error::Invalid(format!("member `{name}`: a star needs a vertex")));
                    }
                    MemberKind::Star(g.index() as u32)
                }
                Some("sub") => MemberKind::Subcomplex(words.map(lookup).collect::<Result<_>>()?),
                _ => return Err(Error::Invalid(format!("bad member `{v}`"))),
            };
            members.push((name.to_string(), kind));
        }
        CoverSpec::new(base, members)
    }
}

/// One member per vertex of `K`, the open star of that vertex.
pub fn star_cover(k: &Arc<SimplicialSet>) -> Result<CoverSpec> {
    if !k.is_complex_like() {
        return Err(Error::Precondition("star covers need a complex-like set".into()));
    }
    let members = k.gens(0).map(|v| (k.name(v).to_string(), MemberKind::Star(v.index() as u32))).collect();
    CoverSpec::new(k.clone(), members)
}

/// A non-empty intersection `U_S` with its connected components.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub index_set: Vec<usize>,
    pub support: Vec<Gen>,
    /// Component label of each element of `support`.
    pub label: Vec<usize>,
    pub components: usize,
}

impl Intersection {
    fn new(base: &SimplicialSet, index_set: Vec<usize>, support: BTreeSet<Gen>) -> Self {
        let support: Vec<Gen> = support.into_iter().collect();
        let pos: HashMap<Gen, usize> = support.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut parent: Vec<usize> = (0..support.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, &g) in support.iter().enumerate() {
            if g.dim() == 0 {
                continue;
            }
            for f in base.gen_faces(g) {
                if let Some(&j) = pos.get(&f.gen) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut names = HashMap::new();
        let label = (0..support.len())
            .map(|i| {
                let r = find(&mut parent, i);
                let n = names.len();
                *names.entry(r).or_insert(n)
            })
            .collect();
        Intersection { index_set, support, label, components: names.len() }
    }

    pub fn component_of(&self, g: Gen) -> Option<usize> {
        self.support.binary_search(&g).ok().map(|i| self.label[i])
    }

    fn representative(&self, c: usize) -> Gen {
        self.support[self.label.iter().position(|&l| l == c).expect("component")]
    }
}

/// All non-empty intersections, ordered by index set size then lexicographically.
pub fn intersections(c: &CoverSpec) -> Vec<Intersection> {
    let mut found: Vec<(Vec<usize>, BTreeSet<Gen>)> = Vec::new();
    let mut level: Vec<(Vec<usize>, BTreeSet<Gen>)> =
        (0..c.len()).map(|i| (vec![i], c.members[i].support.clone())).filter(|(_, s)| !s.is_empty()).collect();
    while !level.is_empty() {
        let next: Vec<(Vec<usize>, BTreeSet<Gen>)> = level
            .par_iter()
            .flat_map_iter(|(s, u)| {
                let last = *s.last().unwrap();
                (last + 1..c.len()).filter_map(move |j| {
                    let v: BTreeSet<Gen> = u.iter().copied().filter(|g| c.members[j].support.contains(g)).collect();
                    (!v.is_empty()).then(|| {
                        let mut t = s.clone();
                        t.push(j);
                        (t, v)
                    })
                })
            })
            .collect();
        found.extend(level);
        level = next;
    }
    found.into_par_iter().map(|(s, u)| Intersection::new(&c.base, s, u)).collect()
}

/// The flattened nerve of the cover category.
#[derive(Clone, Debug)]
pub struct CoverNerve {
    pub cover: Arc<CoverSpec>,
    pub object: Arc<SimplicialSet>,
    pub intersections: Vec<Intersection>,
    /// Vertex `v` is `(intersection index, component)`.
    pub objects: Vec<(usize, usize)>,
    pub components: bool,
    lookup: HashMap<Vec<usize>, usize>,
}

impl CoverNerve {
    pub fn all_connected(&self) -> bool {
        self.intersections.iter().all(|x| x.components == 1)
    }

    /// Whether the nerve faithfully represents the cover category: always
    /// with components, otherwise only when every intersection is connected.
    pub fn surrogate_valid(&self) -> bool {
        self.components || self.all_connected()
    }

    pub fn intersection_of(&self, s: &[usize]) -> Option<&Intersection> {
        self.lookup.get(s).map(|&i| &self.intersections[i])
    }

    /// Index set and component of a vertex.
    pub fn object(&self, v: usize) -> (&[usize], usize) {
        let (i, c) = self.objects[v];
        (&self.intersections[i].index_set, c)
    }

    fn vertex_of(&self, s: &[usize], g: Gen) -> Option<usize> {
        let i = *self.lookup.get(s)?;
        let c = if self.components { self.intersections[i].component_of(g)? } else { 0 };
        self.objects.iter().position(|&o| o == (i, c))
    }
}

/// Chains `R₀ ⊊ ⋯ ⊊ R_k` of index sets with `U_{R_k}` non-empty, one copy per
/// component of `U_{R_k}` when `components` is set. Truncated at the base's
/// dimension.
pub fn category_nerve(c: &Arc<CoverSpec>, components: bool) -> Result<CoverNerve> {
    let xs = intersections(c);
    let lookup: HashMap<Vec<usize>, usize> = xs.iter().enumerate().map(|(i, x)| (x.index_set.clone(), i)).collect();
    let member_names = |s: &[usize]| s.iter().map(|&i| c.members[i].name.as_str()).join(",");
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let copies = if components { x.components } else { 1 };
        for comp in 0..copies {
            objects.push((i, comp));
            if copies == 1 {
                names.push(format!("U({})", member_names(&x.index_set)));
            } else {
                names.push(format!("U({})/{comp}", member_names(&x.index_set)));
            }
        }
    }
    let le = |a: usize, b: usize| {
        let ((ia, ca), (ib, cb)) = (objects[a], objects[b]);
        let (r, s) = (&xs[ia], &xs[ib]);
        if !is_subset(&r.index_set, &s.index_set) {
            return false;
        }
        !components || r.component_of(s.representative(cb)) == Some(ca)
    };
    let trunc = c.base.max_dim();
    let object = Arc::new(poset_nerve(&names, le, trunc)?);
    Ok(CoverNerve { cover: c.clone(), object, intersections: xs, objects, components, lookup })
}

/// Homology of `U_S`, modeled by the nerve of its poset of simplices.
pub fn intersection_homology(c: &CoverSpec, x: &Intersection) -> Result<HomologyReport> {
    let base = &c.base;
    let verts: Vec<Vec<u32>> = x.support.iter().map(|&g| sorted_vertices(base, g)).collect();
    let names: Vec<String> = x.support.iter().map(|&g| base.name(g).to_string()).collect();
    let d = base.max_dim();
    let nerve = poset_nerve(&names, |a, b| is_subset(&verts[a], &verts[b]), d + 1)?;
    homology(&nerve, d)
}

/// Whether every component of `U_S` has the homology of a point.
pub fn components_contractible(c: &CoverSpec, x: &Intersection) -> Result<bool> {
    let h = intersection_homology(c, x)?;
    Ok(h.degrees.iter().enumerate().all(|(k, d)| d.torsion.is_empty() && d.betti == if k == 0 { x.components } else { 0 }))
}

#[derive(Clone, Debug)]
pub struct StarNerveReport {
    pub nerve: CoverNerve,
    pub subdivision: Subdivision,
    /// `N ≅ sd^{i+1} Δ[n]`.
    pub iso: SimplicialMap,
    pub is_isomorphism: bool,
    pub intersections_checked: usize,
    pub all_contractible: bool,
    /// The nerves with and without components coincide.
    pub components_agree: bool,
}

impl StarNerveReport {
    pub fn passed(&self) -> bool {
        self.is_isomorphism && self.all_contractible && self.components_agree
    }
}

pub const STAR_NERVE_BOUNDS: (usize, usize) = (3, 2);

/// The nerve of the star cover of `sdⁱ Δ[n]` and its isomorphism onto
/// `sd^{i+1} Δ[n]`, sending `U_S` to the barycenter of the simplex spanned by `S`.
pub fn star_nerve_iso_check(n: usize, i: usize) -> Result<StarNerveReport> {
    if n > STAR_NERVE_BOUNDS.0 || i > STAR_NERVE_BOUNDS.1 {
        return Err(Error::Precondition(format!(
            "star nerve check is bounded by n ≤ {}, i ≤ {}",
            STAR_NERVE_BOUNDS.0, STAR_NERVE_BOUNDS.1
        )));
    }
    let simplex = Arc::new(standard(n, n)?);
    let k = sd_tower(&simplex, i).last().map_or(simplex.clone(), |t| t.object.clone());
    let subdivision = sd(&k);
    let cover = Arc::new(star_cover(&k)?);
    let nerve = category_nerve(&cover, true)?;
    let plain = category_nerve(&cover, false)?;
    let iso = nerve_iso(&nerve, &subdivision)?;
    let is_isomorphism = iso.is_isomorphism();
    let checks: Vec<bool> = nerve
        .intersections
        .par_iter()
        .map(|x| Ok(x.components == 1 && components_contractible(&cover, x)?))
        .collect::<Result<_>>()?;
    let components_agree = plain.object.to_text() == nerve.object.to_text();
    Ok(StarNerveReport {
        intersections_checked: checks.len(),
        all_contractible: checks.iter().all(|&b| b),
        nerve,
        subdivision,
        iso,
        is_isomorphism,
        components_agree,
    })
}

/// `N(star_cover K) → sd K` for a star cover, sending `U_S` to the barycenter
/// of the simplex spanned by `S`.
pub fn nerve_iso(nerve: &CoverNerve, sub: &Subdivision) -> Result<SimplicialMap> {
    let k = &sub.source;
    let stars = nerve.cover.members.iter().enumerate().all(|(i, m)| m.kind == MemberKind::Star(i as u32));
    if !stars || nerve.cover.len() != k.count(0) || nerve.cover.base.to_text() != k.to_text() {
        return Err(Error::Precondition("not the star cover of the subdivided set".into()));
    }
    let by_vertices: HashMap<Vec<u32>, Gen> = k.all_gens().map(|g| (sorted_vertices(k, g), g)).collect();
    let vm = nerve
        .objects
        .iter()
        .map(|&(x, _)| {
            let s: Vec<u32> = nerve.intersections[x].index_set.iter().map(|&v| v as u32).collect();
            let g = by_vertices.get(&s).ok_or_else(|| Error::Invalid("an index set spans no simplex".into()))?;
            Ok(sub.barycenter(*g).index() as u32)
        })
        .collect::<Result<Vec<u32>>>()?;
    SimplicialMap::from_vertex_map(nerve.object.clone(), sub.object.clone(), &vm)
}

/// The canonical refinement `star_cover(sd K) → star_cover(K)` for
/// `K = sdⁱ Δ[n]`, read through the nerve isomorphisms as a vertex function
/// `sd² K → sd K`.
#[derive(Clone, Debug)]
pub struct CanonicalRefinementReport {
    pub induced: Vec<u32>,
    /// `sd γ_K`.
    pub subdivided_last_vertex: Vec<u32>,
    /// `γ_{sd K}`.
    pub last_vertex: Vec<u32>,
    /// First vertex of `sd² K` where `induced` and `γ_{sd K}` differ.
    pub last_vertex_mismatch: Option<String>,
}

impl CanonicalRefinementReport {
    pub fn matches_subdivided_last_vertex(&self) -> bool {
        self.induced == self.subdivided_last_vertex
    }
}

pub fn canonical_refinement_check(n: usize, i: usize) -> Result<CanonicalRefinementReport> {
    let simplex = Arc::new(standard(n, n)?);
    let tower = sd_tower(&simplex, i + 2);
    let k = if i == 0 { simplex } else { tower[i - 1].object.clone() };
    let (sub, sub2) = (&tower[i], &tower[i + 1]);
    debug_assert_eq!(sub.source.to_text(), k.to_text());
    let r = canonical_refinement(sub)?;
    let src = category_nerve(&r.source, true)?;
    let tgt = category_nerve(&r.target, true)?;
    let m = refinement_nerve_map(&r, &src, &tgt)?;
    let (iso_src, iso_tgt) = (nerve_iso(&src, sub2)?, nerve_iso(&tgt, sub)?);
    let forward = iso_src.vertex_map();
    let mut inverse = vec![0u32; forward.len()];
    for (v, &w) in forward.iter().enumerate() {
        inverse[w as usize] = v as u32;
    }
    let (mv, tv) = (m.vertex_map(), iso_tgt.vertex_map());
    let induced: Vec<u32> = inverse.iter().map(|&v| tv[mv[v as usize] as usize]).collect();
    let subdivided_last_vertex = sub2.map(&sub.last_vertex(), sub)?.vertex_map();
    let last_vertex = sub2.last_vertex().vertex_map();
    let last_vertex_mismatch = (0..induced.len())
        .find(|&w| induced[w] != last_vertex[w])
        .map(|w| sub2.object.name(Gen::new(0, w)).to_string());
    Ok(CanonicalRefinementReport { induced, subdivided_last_vertex, last_vertex, last_vertex_mismatch })
}

/// `α : I → J` with `U_i ⊆ V_{α(i)}`. Covers on different bases are compared
/// through a carrier sending each simplex of the source base to the simplex
/// of the target base whose interior contains it.
#[derive(Clone, Debug)]
pub struct RefinementMap {
    pub source: Arc<CoverSpec>,
    pub target: Arc<CoverSpec>,
    pub alpha: Vec<usize>,
    carrier: Vec<Vec<Gen>>,
}

impl RefinementMap {
    /// A refinement between covers of the same base.
    pub fn new(source: Arc<CoverSpec>, target: Arc<CoverSpec>, alpha: Vec<usize>) -> Result<Self> {
        if source.base.to_text() != target.base.to_text() {
            return Err(Error::Precondition("covers of different bases need a carrier".into()));
        }
        let carrier = (0..=source.base.max_dim()).map(|k| source.base.gens(k).collect()).collect();
        Self::with_carrier(source, target, alpha, carrier)
    }

    /// A refinement from a cover of `sd K` to a cover of `K`.
    pub fn along(sub: &Subdivision, source: Arc<CoverSpec>, target: Arc<CoverSpec>, alpha: Vec<usize>) -> Result<Self> {
        if source.base.to_text() != sub.object.to_text() || target.base.to_text() != sub.source.to_text() {
            return Err(Error::Precondition("covers do not match the subdivision".into()));
        }
        let carrier = (0..=source.base.max_dim()).map(|k| source.base.gens(k).map(|g| sub.origin(g).0).collect()).collect();
        Self::with_carrier(source, target, alpha, carrier)
    }

    fn with_carrier(source: Arc<CoverSpec>, target: Arc<CoverSpec>, alpha: Vec<usize>, carrier: Vec<Vec<Gen>>) -> Result<Self> {
        if alpha.len() != source.len() {
            return Err(Error::InvalidMap(format!("α has {} entries for {} members", alpha.len(), source.len())));
        }
        let r = RefinementMap { source, target, alpha, carrier };
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<()> {
        for (i, m) in self.source.members.iter().enumerate() {
            let j = self.alpha[i];
            let t = self.target.members.get(j).ok_or_else(|| Error::InvalidMap(format!("α({i}) = {j} is out of range")))?;
            if let Some(&g) = m.support.iter().find(|&&g| !t.support.contains(&self.carry(g))) {
                return Err(Error::InvalidMap(format!(
                    "member `{}` is not contained in `{}`: `{}` lies outside",
                    m.name,
                    t.name,
                    self.source.base.name(g)
                )));
            }
        }
        Ok(())
    }

    pub fn carry(&self, g: Gen) -> Gen {
        self.carrier[g.dim()][g.index()]
    }

    pub fn identity(c: Arc<CoverSpec>) -> Self {
        let alpha = (0..c.len()).collect();
        let carrier = (0..=c.base.max_dim()).map(|k| c.base.gens(k).collect()).collect();
        RefinementMap { source: c.clone(), target: c, alpha, carrier }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RefinementMap) -> Result<Self> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::Precondition("refinements are not composable".into()));
        }
        let alpha = self.alpha.iter().map(|&j| next.alpha[j]).collect();
        let carrier = self.carrier.iter().map(|l| l.iter().map(|&g| next.carry(g)).collect()).collect();
        Self::with_carrier(self.source.clone(), next.target.clone(), alpha, carrier)
    }
}

/// `star_cover(sd K) → star_cover(K)` sending the star of `b(σ)` to the star of
/// the last vertex of `σ`.
pub fn canonical_refinement(sub: &Subdivision) -> Result<RefinementMap> {
    let source = Arc::new(star_cover(&sub.object)?);
    let target = Arc::new(star_cover(&sub.source)?);
    let alpha = sub.last_vertex().vertex_map().into_iter().map(|v| v as usize).collect();
    RefinementMap::along(sub, source, target, alpha)
}

/// Every refinement between two covers, in lexicographic order of `α`.
pub fn all_refinements(template: &RefinementMap) -> Vec<RefinementMap> {
    let (s, t) = (&template.source, &template.target);
    let choices: Vec<Vec<usize>> = s
        .members
        .iter()
        .map(|m| {
            (0..t.len())
                .filter(|&j| m.support.iter().all(|&g| t.members[j].support.contains(&template.carry(g))))
                .collect()
        })
        .collect();
    choices
        .iter()
        .map(|c| c.iter().copied())
        .multi_cartesian_product()
        .map(|alpha| RefinementMap { source: s.clone(), target: t.clone(), alpha, carrier: template.carrier.clone() })
        .collect()
}

/// The mapping object between two covers: its `k`-simplices are
/// `(k+1)`-tuples of refinements, degenerate where consecutive entries agree.
pub fn refinement_space(refinements: &[RefinementMap], trunc: usize) -> Result<SimplicialSet> {
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut ids: HashMap<Vec<usize>, Gen> = HashMap::new();
    for i in 0..refinements.len() {
        ids.insert(vec![i], b.add_vertex(format!("r{i}"))?);
    }
    let mut level: Vec<Vec<usize>> = (0..refinements.len()).map(|i| vec![i]).collect();
    for _ in 1..=trunc {
        let next: Vec<Vec<usize>> = level
            .iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                (0..refinements.len()).filter(move |&j| j != last).map(move |j| {
                    let mut u = t.clone();
                    u.push(j);
                    u
                })
            })
            .collect();
        for t in &next {
            let faces = (0..t.len())
                .map(|j| {
                    let mut f = t.clone();
                    f.remove(j);
                    let mask = (0..f.len() - 1).filter(|&a| f[a] == f[a + 1]).fold(0u32, |m, a| m | 1 << a);
                    f.dedup();
                    SimplexRef { gen: ids[&f], mask }
                })
                .collect();
            let g = b.add(format!("r({})", t.iter().join(",")), faces)?;
            ids.insert(t.clone(), g);
        }
        level = next;
    }
    Ok(b.build_unvalidated())
}

/// `N𝒰 → N𝒱` induced by a refinement: `(S, x) ↦ (α(S), x)`.
pub fn refinement_nerve_map(r: &RefinementMap, source: &CoverNerve, target: &CoverNerve) -> Result<SimplicialMap> {
    if !Arc::ptr_eq(&r.source, &source.cover) || !Arc::ptr_eq(&r.target, &target.cover) {
        return Err(Error::Precondition("the nerves are not those of the refinement's covers".into()));
    }
    r.check()?;
    let vm = source
        .objects
        .iter()
        .map(|&(xi, comp)| {
            let x = &source.intersections[xi];
            let image: Vec<usize> = x.index_set.iter().map(|&i| r.alpha[i]).sorted().dedup().collect();
            let g = x.representative(comp);
            target
                .vertex_of(&image, r.carry(g))
                .map(|v| v as u32)
                .ok_or_else(|| Error::InvalidMap("an intersection is not carried into its image".into()))
        })
        .collect::<Result<Vec<u32>>>()?;
    SimplicialMap::from_vertex_map(source.object.clone(), target.object.clone(), &vm)
}
