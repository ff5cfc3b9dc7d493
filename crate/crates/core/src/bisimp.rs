//! Bisimplicial sets, the diagonal, and the functors δ and d_!.
//!
//! The first index `p` is horizontal and the second `q` vertical; δ is
//! constant in the vertical direction. A bisimplex is stored in bi-normal
//! form `(s_α s'_β x)` with `x` non-degenerate in both directions.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::builders::compress;
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{coface, compose, mask_of_surjection, surjection_masks, surjection_of_mask, Gen, SimplexRef};
use crate::sset::{is_valid_identifier, SimplicialSet, SimplicialSetBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiGen {
    pub p: u32,
    pub q: u32,
    pub index: u32,
}

impl BiGen {
    pub fn new(p: usize, q: usize, index: usize) -> Self {
        BiGen { p: p as u32, q: q as u32, index: index as u32 }
    }
}

/// `x` degenerated by the horizontal surjection `hmask` and the vertical
/// surjection `vmask`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiRef {
    pub gen: BiGen,
    pub hmask: u32,
    pub vmask: u32,
}

impl BiRef {
    pub fn nondegenerate(gen: BiGen) -> Self {
        BiRef { gen, hmask: 0, vmask: 0 }
    }

    pub fn hdim(self) -> usize {
        self.gen.p as usize + self.hmask.count_ones() as usize
    }

    pub fn vdim(self) -> usize {
        self.gen.q as usize + self.vmask.count_ones() as usize
    }

    pub fn is_degenerate(self) -> bool {
        self.hmask != 0 || self.vmask != 0
    }
}

fn full_mask(k: usize) -> u32 {
    if k == 0 {
        0
    } else {
        (1u32 << k) - 1
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

fn dedup_sorted(v: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(v.len());
    for &x in v {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

fn degeneracy_text(mask: u32, letter: char, out: &mut String) {
    for j in (0..32).rev().filter(|j| mask & (1 << j) != 0) {
        out.push(letter);
        out.push_str(&j.to_string());
    }
}

/// Identifiers of bisimplicial generators may not read as `t<j>` either.
pub fn is_valid_bi_identifier(name: &str) -> bool {
    let b = name.as_bytes();
    is_valid_identifier(name) && !(b[0] == b't' && b.len() > 1 && b[1].is_ascii_digit())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSimplicialSet {
    hmax: usize,
    vmax: usize,
    /// `[p][q][index]`
    names: Vec<Vec<Vec<String>>>,
    hfaces: Vec<Vec<Vec<Vec<BiRef>>>>,
    vfaces: Vec<Vec<Vec<Vec<BiRef>>>>,
    lookup: HashMap<String, BiGen>,
}

impl BiSimplicialSet {
    pub fn hmax(&self) -> usize {
        self.hmax
    }

    pub fn vmax(&self) -> usize {
        self.vmax
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.names.get(p).and_then(|r| r.get(q)).map_or(0, |v| v.len())
    }

    pub fn gens(&self, p: usize, q: usize) -> impl Iterator<Item = BiGen> + '_ {
        (0..self.count(p, q)).map(move |i| BiGen::new(p, q, i))
    }

    /// All generators in `(p, q, index)` order.
    pub fn all_gens(&self) -> impl Iterator<Item = BiGen> + '_ {
        (0..=self.hmax).flat_map(move |p| (0..=self.vmax).flat_map(move |q| self.gens(p, q)))
    }

    pub fn total(&self) -> usize {
        self.all_gens().count()
    }

    pub fn name(&self, g: BiGen) -> &str {
        &self.names[g.p as usize][g.q as usize][g.index as usize]
    }

    pub fn gen_by_name(&self, name: &str) -> Option<BiGen> {
        self.lookup.get(name).copied()
    }

    pub fn hfaces(&self, g: BiGen) -> &[BiRef] {
        &self.hfaces[g.p as usize][g.q as usize][g.index as usize]
    }

    pub fn vfaces(&self, g: BiGen) -> &[BiRef] {
        &self.vfaces[g.p as usize][g.q as usize][g.index as usize]
    }

    /// `X(φ_h, φ_v) x` for monotone `φ_h : [m'] → [hdim]`, `φ_v : [n'] → [vdim]`.
    pub fn apply(&self, x: BiRef, ph: &[usize], pv: &[usize]) -> BiRef {
        let th = surjection_of_mask(x.hmask, x.hdim());
        let tv = surjection_of_mask(x.vmask, x.vdim());
        let psi_h = compose(&th, ph);
        let psi_v = compose(&tv, pv);
        let ih = dedup_sorted(&psi_h);
        let iv = dedup_sorted(&psi_v);
        if ih.len() == x.gen.p as usize + 1 && iv.len() == x.gen.q as usize + 1 {
            return BiRef { gen: x.gen, hmask: mask_of_surjection(&psi_h), vmask: mask_of_surjection(&psi_v) };
        }
        let face = self.restrict_gen(x.gen, &ih, &iv);
        let rh: Vec<usize> = psi_h.iter().map(|v| ih.binary_search(v).expect("image")).collect();
        let rv: Vec<usize> = psi_v.iter().map(|v| iv.binary_search(v).expect("image")).collect();
        self.apply(face, &rh, &rv)
    }

    fn restrict_gen(&self, g: BiGen, kh: &[usize], kv: &[usize]) -> BiRef {
        let (p, q) = (g.p as usize, g.q as usize);
        if kh.len() < p + 1 {
            let missing = (0..=p).rev().find(|v| kh.binary_search(v).is_err()).expect("missing");
            let shifted: Vec<usize> = kh.iter().map(|&u| if u > missing { u - 1 } else { u }).collect();
            return self.apply(self.hfaces(g)[missing], &shifted, kv);
        }
        if kv.len() < q + 1 {
            let missing = (0..=q).rev().find(|v| kv.binary_search(v).is_err()).expect("missing");
            let shifted: Vec<usize> = kv.iter().map(|&u| if u > missing { u - 1 } else { u }).collect();
            return self.apply(self.vfaces(g)[missing], kh, &shifted);
        }
        BiRef::nondegenerate(g)
    }

    pub fn face_h(&self, x: BiRef, j: usize) -> BiRef {
        self.apply(x, &coface(x.hdim(), j), &identity(x.vdim()))
    }

    pub fn face_v(&self, x: BiRef, j: usize) -> BiRef {
        self.apply(x, &identity(x.hdim()), &coface(x.vdim(), j))
    }

    /// `s<j>…t<j>…<id>`: horizontal degeneracies `s`, vertical `t`.
    pub fn ref_to_string(&self, x: BiRef) -> String {
        let mut s = String::new();
        degeneracy_text(x.hmask, 's', &mut s);
        degeneracy_text(x.vmask, 't', &mut s);
        s.push_str(self.name(x.gen));
        s
    }

    /// Every violated face identity, as text.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for g in self.all_gens() {
            let (p, q) = (g.p as usize, g.q as usize);
            let (hf, vf) = (self.hfaces(g), self.vfaces(g));
            let name = self.name(g);
            if hf.len() != if p == 0 { 0 } else { p + 1 } || vf.len() != if q == 0 { 0 } else { q + 1 } {
                out.push(format!("`{name}`: wrong number of faces"));
                continue;
            }
            if hf.iter().any(|f| f.hdim() + 1 != p || f.vdim() != q) || vf.iter().any(|f| f.hdim() != p || f.vdim() + 1 != q) {
                out.push(format!("`{name}`: a face has the wrong bidegree"));
                continue;
            }
            for j in 0..if p >= 2 { hf.len() } else { 0 } {
                for i in 0..j {
                    if self.face_h(hf[j], i) != self.face_h(hf[i], j - 1) {
                        out.push(format!("`{name}`: d{i} d{j} ≠ d{} d{i} horizontally", j - 1));
                    }
                }
            }
            for j in 0..if q >= 2 { vf.len() } else { 0 } {
                for i in 0..j {
                    if self.face_v(vf[j], i) != self.face_v(vf[i], j - 1) {
                        out.push(format!("`{name}`: d{i} d{j} ≠ d{} d{i} vertically", j - 1));
                    }
                }
            }
            for (i, &h) in hf.iter().enumerate() {
                for (j, &v) in vf.iter().enumerate() {
                    if self.face_v(h, j) != self.face_h(v, i) {
                        out.push(format!("`{name}`: horizontal d{i} and vertical d{j} do not commute"));
                    }
                }
            }
        }
        out
    }

    /// No generator has `q > 0`.
    pub fn is_vertically_discrete(&self) -> bool {
        self.all_gens().all(|g| g.q == 0)
    }
}

/// Assembles a bisimplicial set one generator at a time; faces must exist.
pub struct BiSimplicialSetBuilder {
    set: BiSimplicialSet,
}

impl BiSimplicialSetBuilder {
    pub fn new(hmax: usize, vmax: usize) -> Self {
        let faces = || vec![vec![Vec::new(); vmax + 1]; hmax + 1];
        BiSimplicialSetBuilder {
            set: BiSimplicialSet {
                hmax,
                vmax,
                names: vec![vec![Vec::new(); vmax + 1]; hmax + 1],
                hfaces: faces(),
                vfaces: faces(),
                lookup: HashMap::new(),
            },
        }
    }

    pub fn gen_by_name(&self, name: &str) -> Option<BiGen> {
        self.set.gen_by_name(name)
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.set.count(p, q)
    }

    pub fn add(&mut self, name: impl Into<String>, p: usize, q: usize, hfaces: Vec<BiRef>, vfaces: Vec<BiRef>) -> Result<BiGen> {
        let name = name.into();
        if !is_valid_bi_identifier(&name) {
            return Err(Error::InvalidIdentifier(name));
        }
        if self.set.lookup.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        if p > self.set.hmax || q > self.set.vmax {
            return Err(Error::BeyondTruncation { requested: p.max(q), max_dim: if p > self.set.hmax { self.set.hmax } else { self.set.vmax } });
        }
        let expect = |k: usize| if k == 0 { 0 } else { k + 1 };
        if hfaces.len() != expect(p) || vfaces.len() != expect(q) {
            return Err(Error::Invalid(format!("`{name}`: bidegree ({p},{q}) needs {} and {} faces", expect(p), expect(q))));
        }
        for f in hfaces.iter().chain(&vfaces) {
            if (f.gen.index as usize) >= self.set.count(f.gen.p as usize, f.gen.q as usize) {
                return Err(Error::UnknownGenerator(format!("{:?}", f.gen)));
            }
        }
        let g = BiGen::new(p, q, self.set.count(p, q));
        self.set.names[p][q].push(name.clone());
        self.set.hfaces[p][q].push(hfaces);
        self.set.vfaces[p][q].push(vfaces);
        self.set.lookup.insert(name, g);
        Ok(g)
    }

    pub fn build(self) -> Result<BiSimplicialSet> {
        if let Some(v) = self.set.validate().into_iter().next() {
            return Err(Error::Invalid(v));
        }
        Ok(self.set)
    }

    pub fn build_unvalidated(self) -> BiSimplicialSet {
        self.set
    }
}

/// A map of bisimplicial sets, by the image of each generator.
#[derive(Clone, Debug)]
pub struct BiSimplicialMap {
    domain: Arc<BiSimplicialSet>,
    codomain: Arc<BiSimplicialSet>,
    images: HashMap<BiGen, BiRef>,
    hmax: usize,
    vmax: usize,
}

impl BiSimplicialMap {
    /// Builds from a closure on generators within the common truncation, and validates.
    pub fn from_fn(domain: Arc<BiSimplicialSet>, codomain: Arc<BiSimplicialSet>, f: impl Fn(BiGen) -> BiRef) -> Result<Self> {
        let hmax = domain.hmax.min(codomain.hmax);
        let vmax = domain.vmax.min(codomain.vmax);
        let images = domain.all_gens().filter(|g| g.p as usize <= hmax && g.q as usize <= vmax).map(|g| (g, f(g))).collect();
        let m = BiSimplicialMap { domain, codomain, images, hmax, vmax };
        if let Some(v) = m.validate().into_iter().next() {
            return Err(Error::InvalidMap(v));
        }
        Ok(m)
    }

    pub fn identity(set: Arc<BiSimplicialSet>) -> Self {
        let images = set.all_gens().map(|g| (g, BiRef::nondegenerate(g))).collect();
        BiSimplicialMap { hmax: set.hmax, vmax: set.vmax, domain: set.clone(), codomain: set, images }
    }

    pub fn domain(&self) -> &Arc<BiSimplicialSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<BiSimplicialSet> {
        &self.codomain
    }

    /// Bidegrees `(p, q)` with `p ≤ hmax`, `q ≤ vmax` are defined.
    pub fn defined(&self) -> (usize, usize) {
        (self.hmax, self.vmax)
    }

    pub fn image(&self, g: BiGen) -> BiRef {
        self.images[&g]
    }

    pub fn apply(&self, x: BiRef) -> BiRef {
        let y = self.image(x.gen);
        let hs = compose(&surjection_of_mask(y.hmask, y.hdim()), &surjection_of_mask(x.hmask, x.hdim()));
        let vs = compose(&surjection_of_mask(y.vmask, y.vdim()), &surjection_of_mask(x.vmask, x.vdim()));
        BiRef { gen: y.gen, hmask: mask_of_surjection(&hs), vmask: mask_of_surjection(&vs) }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (s, t) = (&self.domain, &self.codomain);
        for (&g, &y) in &self.images {
            let name = s.name(g);
            if y.hdim() != g.p as usize || y.vdim() != g.q as usize || y.gen.index as usize >= t.count(y.gen.p as usize, y.gen.q as usize) {
                out.push(format!("`{name}` has an image of the wrong bidegree"));
                continue;
            }
            for (j, &f) in s.hfaces(g).iter().enumerate() {
                if self.apply(f) != t.face_h(y, j) {
                    out.push(format!("`{name}`: image does not commute with horizontal d{j}"));
                }
            }
            for (j, &f) in s.vfaces(g).iter().enumerate() {
                if self.apply(f) != t.face_v(y, j) {
                    out.push(format!("`{name}`: image does not commute with vertical d{j}"));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_monomorphism(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.values().all(|y| !y.is_degenerate() && seen.insert(*y))
    }
}

/// `δX`: `X_p` in every vertical degree.
pub fn delta_embed(x: &SimplicialSet) -> BiSimplicialSet {
    let d = x.max_dim();
    let mut b = BiSimplicialSetBuilder::new(d, d);
    let lift = |r: SimplexRef| BiRef { gen: BiGen::new(r.gen.dim(), 0, r.gen.index()), hmask: r.mask, vmask: 0 };
    for p in 0..=d {
        for g in x.gens(p) {
            let hf = x.gen_faces(g).iter().map(|&r| lift(r)).collect();
            b.add(x.name(g), p, 0, hf, Vec::new()).expect("copy of a valid set");
        }
    }
    b.build_unvalidated()
}

/// `δf`.
pub fn delta_map(f: &SimplicialMap, src: &Arc<BiSimplicialSet>, tgt: &Arc<BiSimplicialSet>) -> Result<BiSimplicialMap> {
    let top = f.defined_dim();
    BiSimplicialMap::from_fn(src.clone(), tgt.clone(), |g| {
        let r = if (g.p as usize) <= top { f.image(Gen::new(g.p as usize, g.index as usize)) } else { SimplexRef::nondegenerate(Gen::new(0, 0)) };
        BiRef { gen: BiGen::new(r.gen.dim(), 0, r.gen.index()), hmask: r.mask, vmask: 0 }
    })
}

/// `d_!X`, whose bisimplices are classes `(x, α, β)` with `x ∈ X_k`,
/// `α : [p] → [k]`, `β : [q] → [k]`; the generators are the classes with `x`
/// non-degenerate and `α`, `β` injective and jointly surjective.
#[derive(Clone, Debug)]
pub struct DShriek {
    pub object: Arc<BiSimplicialSet>,
    pub source: Arc<SimplicialSet>,
    lookup: HashMap<(Gen, Vec<usize>, Vec<usize>), BiGen>,
}

fn digits(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).join(",")
}

impl DShriek {
    /// The generator and degeneracies representing `(z, α, β)`.
    pub fn normal_form(&self, z: SimplexRef, alpha: &[usize], beta: &[usize]) -> BiRef {
        let x = &self.source;
        let (mut z, mut a, mut b) = (z, alpha.to_vec(), beta.to_vec());
        loop {
            if z.mask != 0 {
                let s = z.surjection();
                a = compose(&s, &a);
                b = compose(&s, &b);
                z = SimplexRef::nondegenerate(z.gen);
            }
            let mut used: Vec<usize> = a.iter().chain(&b).copied().collect();
            used.sort_unstable();
            used.dedup();
            if used.len() == z.gen.dim() + 1 {
                break;
            }
            z = x.apply_op(z, &used);
            a = a.iter().map(|v| used.binary_search(v).expect("used")).collect();
            b = b.iter().map(|v| used.binary_search(v).expect("used")).collect();
        }
        let ai = dedup_sorted(&a);
        let bi = dedup_sorted(&b);
        let ha: Vec<usize> = a.iter().map(|v| ai.binary_search(v).expect("image")).collect();
        let hb: Vec<usize> = b.iter().map(|v| bi.binary_search(v).expect("image")).collect();
        let (hmask, vmask) = (mask_of_surjection(&ha), mask_of_surjection(&hb));
        BiRef { gen: self.lookup[&(z.gen, ai, bi)], hmask, vmask }
    }

    /// The class of a generator, `(x, α, β)`.
    pub fn class_of(&self, g: BiGen) -> (Gen, Vec<usize>, Vec<usize>) {
        self.lookup.iter().find(|(_, &v)| v == g).map(|(k, _)| k.clone()).expect("generator")
    }
}

/// `d_!X` in bidegrees `p, q ≤ t`, where `2t + 1 ≤ X.max_dim` (a generator
/// in bidegree `(p, q)` may come from a simplex of dimension `p + q + 1`).
pub fn d_shriek(x: &Arc<SimplicialSet>) -> Result<DShriek> {
    if x.max_dim() == 0 {
        return Err(Error::TruncationInsufficient { needed: 1, have: 0 });
    }
    let t = (x.max_dim() - 1) / 2;
    let mut b = BiSimplicialSetBuilder::new(t, t);
    let mut d = DShriek { object: Arc::new(BiSimplicialSet::empty(t, t)), source: x.clone(), lookup: HashMap::new() };
    for p in 0..=t {
        for q in 0..=t {
            for k in p.max(q)..=(p + q + 1).min(x.max_dim()) {
                for y in x.gens(k) {
                    for a in (0..=k).combinations(p + 1) {
                        for bb in (0..=k).combinations(q + 1) {
                            let covered = (0..=k).all(|v| a.contains(&v) || bb.contains(&v));
                            if !covered {
                                continue;
                            }
                            let z = SimplexRef::nondegenerate(y);
                            let hf = if p == 0 {
                                Vec::new()
                            } else {
                                (0..=p).map(|j| d.normal_form(z, &compose(&a, &coface(p, j)), &bb)).collect()
                            };
                            let vf = if q == 0 {
                                Vec::new()
                            } else {
                                (0..=q).map(|j| d.normal_form(z, &a, &compose(&bb, &coface(q, j)))).collect()
                            };
                            let name = format!("({}|{}|{})", x.name(y), digits(&a), digits(&bb));
                            let g = b.add(name, p, q, hf, vf)?;
                            d.lookup.insert((y, a.clone(), bb.clone()), g);
                        }
                    }
                }
            }
        }
    }
    d.object = Arc::new(b.build_unvalidated());
    Ok(d)
}

impl BiSimplicialSet {
    pub fn empty(hmax: usize, vmax: usize) -> Self {
        BiSimplicialSetBuilder::new(hmax, vmax).build_unvalidated()
    }
}

/// `d_!f`.
pub fn d_shriek_map(f: &SimplicialMap, src: &DShriek, tgt: &DShriek) -> Result<BiSimplicialMap> {
    let classes: HashMap<BiGen, (Gen, Vec<usize>, Vec<usize>)> = src.lookup.iter().map(|(k, &v)| (v, k.clone())).collect();
    BiSimplicialMap::from_fn(src.object.clone(), tgt.object.clone(), |g| {
        let (y, a, b) = &classes[&g];
        tgt.normal_form(f.image(*y), a, b)
    })
}

/// `d_!X → δX`, `(x, α, β) ↦ α^*x` placed vertically constant.
pub fn comparison_map(d: &DShriek, delta: &Arc<BiSimplicialSet>) -> Result<BiSimplicialMap> {
    let x = &d.source;
    let classes: HashMap<BiGen, (Gen, Vec<usize>, Vec<usize>)> = d.lookup.iter().map(|(k, &v)| (v, k.clone())).collect();
    BiSimplicialMap::from_fn(d.object.clone(), delta.clone(), |g| {
        let (y, a, _) = &classes[&g];
        let z = x.apply_op(SimplexRef::nondegenerate(*y), a);
        BiRef { gen: BiGen::new(z.gen.dim(), 0, z.gen.index()), hmask: z.mask, vmask: full_mask(g.q as usize) }
    })
}

/// The diagonal simplicial set with the bisimplex behind each generator.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub object: Arc<SimplicialSet>,
    pub source: Arc<BiSimplicialSet>,
    /// `[n][index]`
    pub sources: Vec<Vec<BiRef>>,
    lookup: HashMap<BiRef, Gen>,
}

impl Diagonal {
    /// The diagonal simplex of a bisimplex of bidegree `(n, n)`.
    pub fn simplex_of(&self, x: BiRef) -> SimplexRef {
        debug_assert_eq!(x.hdim(), x.vdim());
        let n = x.hdim();
        let c = x.hmask & x.vmask;
        let key = BiRef { gen: x.gen, hmask: compress(x.hmask, c, n), vmask: compress(x.vmask, c, n) };
        SimplexRef { gen: self.lookup[&key], mask: c }
    }
}

/// Diagonal through `min(hmax, vmax)`.
pub fn diagonal(b: &Arc<BiSimplicialSet>) -> Result<Diagonal> {
    diagonal_to(b, b.hmax.min(b.vmax))
}

pub fn diagonal_to(b: &Arc<BiSimplicialSet>, d: usize) -> Result<Diagonal> {
    let have = b.hmax.min(b.vmax);
    if d > have {
        return Err(Error::TruncationInsufficient { needed: d, have });
    }
    let mut out = Diagonal { object: Arc::new(SimplicialSet::empty(d)), source: b.clone(), sources: vec![Vec::new(); d + 1], lookup: HashMap::new() };
    let mut sb = SimplicialSetBuilder::new(d);
    for n in 0..=d {
        for p in 0..=n {
            for q in 0..=n {
                for g in b.gens(p, q) {
                    for hm in surjection_masks(n, p) {
                        for vm in surjection_masks(n, q) {
                            if hm & vm != 0 {
                                continue;
                            }
                            let x = BiRef { gen: g, hmask: hm, vmask: vm };
                            let faces: Vec<SimplexRef> = if n == 0 {
                                Vec::new()
                            } else {
                                (0..=n).map(|j| out.simplex_of(b.apply(x, &coface(n, j), &coface(n, j)))).collect()
                            };
                            // a generator constant in a direction where it has degree 0 keeps its name
                            let plain = (hm == 0 || p == 0) && (vm == 0 || q == 0);
                            let name = if plain { b.name(g).to_string() } else { format!("({})", b.ref_to_string(x)) };
                            let gen = sb.add(name, faces)?;
                            out.lookup.insert(x, gen);
                            out.sources[n].push(x);
                        }
                    }
                }
            }
        }
    }
    out.object = Arc::new(sb.build_unvalidated());
    Ok(out)
}

/// The diagonal of `f`, between the given diagonals.
pub fn diagonal_map(f: &BiSimplicialMap, src: &Diagonal, tgt: &Diagonal) -> Result<SimplicialMap> {
    let (hm, vm) = f.defined();
    let top = src.object.max_dim().min(tgt.object.max_dim()).min(hm).min(vm);
    let images = (0..=top).map(|n| src.sources[n].iter().map(|&x| tgt.simplex_of(f.apply(x))).collect()).collect();
    SimplicialMap::new(src.object.clone(), tgt.object.clone(), images)
}

/// A row (`q` fixed, horizontal simplicial set) or column (`p` fixed,
/// vertical simplicial set) of a bisimplicial set.
#[derive(Clone, Debug)]
pub struct Level {
    pub object: Arc<SimplicialSet>,
    pub source: Arc<BiSimplicialSet>,
    pub horizontal: bool,
    pub degree: usize,
    lookup: HashMap<(BiGen, u32), Gen>,
}

impl Level {
    pub fn simplex_of(&self, x: BiRef) -> SimplexRef {
        let (fixed, moving) = if self.horizontal { (x.vmask, x.hmask) } else { (x.hmask, x.vmask) };
        SimplexRef { gen: self.lookup[&(x.gen, fixed)], mask: moving }
    }

    /// The bisimplex behind a level generator.
    pub fn bisimplex(&self, g: Gen) -> BiRef {
        let (&(bg, fixed), _) = self.lookup.iter().find(|(_, &v)| v == g).expect("generator");
        if self.horizontal {
            BiRef { gen: bg, hmask: 0, vmask: fixed }
        } else {
            BiRef { gen: bg, hmask: fixed, vmask: 0 }
        }
    }
}

/// `X_{•,q}`.
pub fn row(b: &Arc<BiSimplicialSet>, q: usize) -> Result<Level> {
    level(b, q, true)
}

/// `X_{p,•}`.
pub fn column(b: &Arc<BiSimplicialSet>, p: usize) -> Result<Level> {
    level(b, p, false)
}

fn level(b: &Arc<BiSimplicialSet>, degree: usize, horizontal: bool) -> Result<Level> {
    let (top, fixed_max) = if horizontal { (b.hmax, b.vmax) } else { (b.vmax, b.hmax) };
    if degree > fixed_max {
        return Err(Error::TruncationInsufficient { needed: degree, have: fixed_max });
    }
    let mut out = Level { object: Arc::new(SimplicialSet::empty(top)), source: b.clone(), horizontal, degree, lookup: HashMap::new() };
    let mut sb = SimplicialSetBuilder::new(top);
    for k in 0..=top {
        for f in (0..=degree).rev() {
            let (p, q) = if horizontal { (k, f) } else { (f, k) };
            for g in b.gens(p, q) {
                for m in surjection_masks(degree, f) {
                    let x = if horizontal { BiRef { gen: g, hmask: 0, vmask: m } } else { BiRef { gen: g, hmask: m, vmask: 0 } };
                    let faces: Vec<SimplexRef> = if k == 0 {
                        Vec::new()
                    } else if horizontal {
                        (0..=k).map(|j| out.simplex_of(b.face_h(x, j))).collect()
                    } else {
                        (0..=k).map(|j| out.simplex_of(b.face_v(x, j))).collect()
                    };
                    let name = if m == 0 { b.name(g).to_string() } else { format!("({})", b.ref_to_string(x)) };
                    let gen = sb.add(name, faces)?;
                    out.lookup.insert((g, m), gen);
                }
            }
        }
    }
    out.object = Arc::new(sb.build_unvalidated());
    Ok(out)
}

/// `f` restricted to one row or column.
pub fn level_map(f: &BiSimplicialMap, src: &Level, tgt: &Level) -> Result<SimplicialMap> {
    let top = src.object.max_dim().min(tgt.object.max_dim());
    let (hm, vm) = f.defined();
    let top = top.min(if src.horizontal { hm } else { vm });
    let mut images = Vec::with_capacity(top + 1);
    for k in 0..=top {
        images.push(src.object.gens(k).map(|g| tgt.simplex_of(f.apply(src.bisimplex(g)))).collect());
    }
    SimplicialMap::new(src.object.clone(), tgt.object.clone(), images)
}
