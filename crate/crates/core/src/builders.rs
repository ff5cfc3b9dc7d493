//! Standard shapes and finite (co)limits.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{mask_of_surjection, surjection_masks, Gen, SimplexRef};
use crate::sset::{SimplicialSet, SimplicialSetBuilder};
use crate::subdivide;

/// Name of the face of `Δ[n]` spanned by `subset`.
pub fn simplex_name(subset: &[usize], n: usize) -> String {
    if subset.len() == 1 {
        return format!("v{}", subset[0]);
    }
    let sep = if n >= 10 { "_" } else { "" };
    format!("e{}", subset.iter().map(|i| i.to_string()).join(sep))
}

/// A complex given by ordered facets over named vertices, closed under faces.
/// Each facet lists vertex indices in increasing order.
pub fn ordered_complex(
    vertex_names: &[String],
    facets: &[Vec<u32>],
    trunc: usize,
    mut name: impl FnMut(&[u32]) -> String,
) -> Result<SimplicialSet> {
    let mut all: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for f in facets {
        if f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v as usize >= vertex_names.len()) {
            return Err(Error::Shape(format!("facet {f:?} is not an increasing vertex list")));
        }
        if f.len() > trunc + 1 {
            return Err(Error::TruncationInsufficient { needed: f.len() - 1, have: trunc });
        }
        for size in 2..=f.len() {
            for sub in f.iter().copied().combinations(size) {
                all.insert((size, sub));
            }
        }
    }
    let mut b = SimplicialSetBuilder::new(trunc);
    for v in vertex_names {
        b.add_vertex(v.clone())?;
    }
    let mut ids: HashMap<Vec<u32>, Gen> = HashMap::new();
    for (size, sub) in all {
        let faces = (0..size)
            .map(|j| {
                let mut face = sub.clone();
                face.remove(j);
                if face.len() == 1 {
                    SimplexRef::nondegenerate(Gen::new(0, face[0] as usize))
                } else {
                    SimplexRef::nondegenerate(ids[&face])
                }
            })
            .collect();
        let g = b.add(name(&sub), faces)?;
        ids.insert(sub, g);
    }
    Ok(b.build_unvalidated())
}

fn faces_of_simplex(n: usize, keep: impl Fn(&[usize]) -> bool, trunc: usize) -> Result<SimplicialSet> {
    if trunc < n {
        return Err(Error::TruncationInsufficient { needed: n, have: trunc });
    }
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut ids: HashMap<Vec<usize>, Gen> = HashMap::new();
    for size in 1..=n + 1 {
        for sub in (0..=n).combinations(size) {
            if !keep(&sub) {
                continue;
            }
            let faces = if size == 1 {
                Vec::new()
            } else {
                (0..size)
                    .map(|j| {
                        let mut face = sub.clone();
                        face.remove(j);
                        SimplexRef::nondegenerate(ids[&face])
                    })
                    .collect()
            };
            let g = b.add(simplex_name(&sub, n), faces)?;
            ids.insert(sub, g);
        }
    }
    Ok(b.build_unvalidated())
}

/// `Δ[n]` truncated at `trunc ≥ n`.
pub fn standard(n: usize, trunc: usize) -> Result<SimplicialSet> {
    faces_of_simplex(n, |_| true, trunc)
}

/// `∂Δ[n]`.
pub fn boundary(n: usize, trunc: usize) -> Result<SimplicialSet> {
    faces_of_simplex(n, |s| s.len() <= n, trunc)
}

/// `Λ_k[n]`: the boundary with the face opposite `k` removed.
pub fn horn(n: usize, k: usize, trunc: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(Error::Shape(format!("invalid horn index Λ_{k}[{n}]")));
    }
    faces_of_simplex(n, |s| s.len() <= n && !(s.len() == n && !s.contains(&k)), trunc)
}

pub fn point(trunc: usize) -> SimplicialSet {
    standard(0, trunc).expect("point")
}

/// Inclusion of a sub-simplicial set, matching generators by name.
pub fn inclusion(sub: &Arc<SimplicialSet>, sup: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let top = sub.max_dim().min(sup.max_dim());
    let mut images = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut level = Vec::with_capacity(sub.count(k));
        for g in sub.gens(k) {
            let h = sup
                .gen_by_name(sub.name(g))
                .filter(|h| h.dim() == k)
                .ok_or_else(|| Error::InvalidMap(format!("`{}` is missing from the target", sub.name(g))))?;
            level.push(SimplexRef::nondegenerate(h));
        }
        images.push(level);
    }
    SimplicialMap::new(sub.clone(), sup.clone(), images)
}

/// The sub-simplicial set generated by `keep` (closed under faces), with its inclusion.
pub fn generated_subset(
    set: &Arc<SimplicialSet>,
    keep: impl IntoIterator<Item = Gen>,
) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    let mut closed: HashSet<Gen> = HashSet::new();
    let mut stack: Vec<Gen> = keep.into_iter().collect();
    while let Some(g) = stack.pop() {
        if closed.insert(g) {
            for f in set.gen_faces(g) {
                stack.push(f.gen);
            }
        }
    }
    let mut b = SimplicialSetBuilder::new(set.max_dim());
    let mut new_id: HashMap<Gen, Gen> = HashMap::new();
    for g in set.all_gens().filter(|g| closed.contains(g)) {
        let faces = set
            .gen_faces(g)
            .iter()
            .map(|f| SimplexRef { gen: new_id[&f.gen], mask: f.mask })
            .collect();
        new_id.insert(g, b.add(set.name(g), faces)?);
    }
    let sub = Arc::new(b.build_unvalidated());
    let inc = inclusion(&sub, set)?;
    Ok((sub, inc))
}

/// The quotient `Δ²/d₀`: the face opposite vertex 0 collapsed to a point.
pub fn quotient_d(trunc: usize) -> Result<SimplicialSet> {
    let d2 = Arc::new(standard(2, trunc)?);
    let edge = Arc::new(standard(1, trunc)?);
    let face = SimplicialMap::from_vertex_map(edge.clone(), d2, &[1, 2])?;
    let pt = Arc::new(point(trunc));
    let collapse = SimplicialMap::terminal(edge, pt)?;
    let po = pushout(&face, &collapse)?;
    Ok((*po.object).clone())
}

/// Nerve of a finite group given by its multiplication table (element 0 is
/// the identity), truncated at `trunc`.
pub fn group_nerve(table: &[Vec<usize>], trunc: usize) -> Result<SimplicialSet> {
    let order = table.len();
    if order == 0 || table.iter().any(|r| r.len() != order) || (0..order).any(|g| table[0][g] != g || table[g][0] != g) {
        return Err(Error::Shape("multiplication table must be square with identity 0".into()));
    }
    let mut b = SimplicialSetBuilder::new(trunc);
    b.add_vertex("*")?;
    let mut ids: HashMap<Vec<usize>, Gen> = HashMap::new();
    ids.insert(Vec::new(), Gen::new(0, 0));
    let normal = |tuple: &[usize], ids: &HashMap<Vec<usize>, Gen>| -> SimplexRef {
        let kept: Vec<usize> = tuple.iter().copied().filter(|&g| g != 0).collect();
        let mut mask = 0u32;
        for (i, &g) in tuple.iter().enumerate() {
            if g == 0 {
                mask |= 1 << i;
            }
        }
        SimplexRef { gen: ids[&kept], mask }
    };
    for k in 1..=trunc {
        for tuple in (0..k).map(|_| 1..order).multi_cartesian_product() {
            let mut faces = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let face: Vec<usize> = if j == 0 {
                    tuple[1..].to_vec()
                } else if j == k {
                    tuple[..k - 1].to_vec()
                } else {
                    let mut f = tuple[..j - 1].to_vec();
                    f.push(table[tuple[j - 1]][tuple[j]]);
                    f.extend_from_slice(&tuple[j + 1..]);
                    f
                };
                faces.push(normal(&face, &ids));
            }
            let name = format!("g({})", tuple.iter().join(","));
            let g = b.add(name, faces)?;
            ids.insert(tuple, g);
        }
    }
    b.build()
}

/// Multiplication table of `ℤ/n`.
pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// The join of a complex-like base with a new last vertex.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: Arc<SimplicialSet>,
    pub base_inclusion: SimplicialMap,
    pub apex: Gen,
}

pub fn cone(base: &Arc<SimplicialSet>, apex_name: &str, trunc: usize) -> Result<Cone> {
    if !base.is_complex_like() {
        return Err(Error::Precondition("cone needs a complex-like base".into()));
    }
    if let Some(top) = base.top_dim() {
        if trunc < top + 1 {
            return Err(Error::TruncationInsufficient { needed: top + 1, have: trunc });
        }
    }
    let mut b = SimplicialSetBuilder::new(trunc);
    for k in 0..=base.max_dim().min(trunc) {
        for g in base.gens(k) {
            b.add(base.name(g), base.gen_faces(g).to_vec())?;
        }
    }
    let apex = b.add_vertex(apex_name)?;
    let apex_ref = SimplexRef::nondegenerate(apex);
    let mut coned: HashMap<Gen, Gen> = HashMap::new();
    for k in 0..base.max_dim().min(trunc.saturating_sub(1)) + 1 {
        for g in base.gens(k) {
            let mut faces = Vec::with_capacity(k + 2);
            if k == 0 {
                faces.push(apex_ref);
            } else {
                for f in base.gen_faces(g) {
                    faces.push(SimplexRef::nondegenerate(coned[&f.gen]));
                }
            }
            faces.push(SimplexRef::nondegenerate(g));
            let c = b.add(format!("c({})", base.name(g)), faces)?;
            coned.insert(g, c);
        }
    }
    let object = Arc::new(b.build_unvalidated());
    let base_inclusion = inclusion(base, &object)?;
    Ok(Cone { object, base_inclusion, apex })
}

/// Nerve of a finite poset; `le(a, b)` must be a partial order.
pub fn poset_nerve(names: &[String], le: impl Fn(usize, usize) -> bool, trunc: usize) -> Result<SimplicialSet> {
    let n = names.len();
    let mut b = SimplicialSetBuilder::new(trunc);
    for v in names {
        b.add_vertex(v.clone())?;
    }
    let above: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&c| c != a && le(a, c)).collect()).collect();
    let mut level: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    let mut ids: HashMap<Vec<usize>, Gen> = (0..n).map(|a| (vec![a], Gen::new(0, a))).collect();
    for _k in 1..=trunc {
        let mut next = Vec::new();
        for chain in &level {
            for &c in &above[*chain.last().unwrap()] {
                let mut longer = chain.clone();
                longer.push(c);
                next.push(longer);
            }
        }
        next.sort();
        for chain in &next {
            let faces = (0..chain.len())
                .map(|j| {
                    let mut f = chain.clone();
                    f.remove(j);
                    SimplexRef::nondegenerate(ids[&f])
                })
                .collect();
            let name = format!("ch({})", chain.iter().map(|&i| names[i].as_str()).join("<"));
            let g = b.add(name, faces)?;
            ids.insert(chain.clone(), g);
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(b.build_unvalidated())
}

/// Removes the degeneracy positions in `common` from `mask`.
/// Deletes the bits of `common` from `mask`, closing up the gaps.
pub(crate) fn compress(mask: u32, common: u32, dim: usize) -> u32 {
    let mut out = 0;
    let mut pos = 0;
    for j in 0..dim {
        if common & (1 << j) != 0 {
            continue;
        }
        if mask & (1 << j) != 0 {
            out |= 1 << pos;
        }
        pos += 1;
    }
    out
}

/// The categorical product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<SimplicialSet>,
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    index: HashMap<(SimplexRef, SimplexRef), Gen>,
}

impl Product {
    /// The simplex `(x, y)` for simplices of equal dimension.
    pub fn pair(&self, x: SimplexRef, y: SimplexRef) -> SimplexRef {
        debug_assert_eq!(x.dim(), y.dim());
        let dim = x.dim();
        let common = x.mask & y.mask;
        let a = SimplexRef { gen: x.gen, mask: compress(x.mask, common, dim) };
        let b = SimplexRef { gen: y.gen, mask: compress(y.mask, common, dim) };
        SimplexRef { gen: self.index[&(a, b)], mask: common }
    }

    /// `(u, v) : Z → S × T`.
    pub fn pairing(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let dom = u.domain().clone();
        let top = u.defined_dim().min(v.defined_dim()).min(self.object.max_dim());
        let images = (0..=top)
            .map(|k| dom.gens(k).map(|g| self.pair(u.image(g), v.image(g))).collect())
            .collect();
        SimplicialMap::new(dom, self.object.clone(), images)
    }

    /// `u × v : S' × T' → S × T` where `self` is `S × T` and `source` is `S' × T'`.
    pub fn product_map(&self, source: &Product, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let pl = source.proj_left.then(u)?;
        let pr = source.proj_right.then(v)?;
        self.pairing(&pl, &pr)
    }
}

pub fn product(s: &Arc<SimplicialSet>, t: &Arc<SimplicialSet>) -> Product {
    let trunc = s.max_dim().min(t.max_dim());
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut index: HashMap<(SimplexRef, SimplexRef), Gen> = HashMap::new();
    let mut left_images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
    let mut right_images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
    for k in 0..=trunc {
        for p in 0..=k {
            for q in (k - p)..=k {
                let mp = surjection_masks(k, p);
                let mq = surjection_masks(k, q);
                for a in s.gens(p) {
                    for bgen in t.gens(q) {
                        for &alpha in &mp {
                            for &beta in &mq {
                                if alpha & beta != 0 {
                                    continue;
                                }
                                let x = SimplexRef { gen: a, mask: alpha };
                                let y = SimplexRef { gen: bgen, mask: beta };
                                let faces = if k == 0 {
                                    Vec::new()
                                } else {
                                    (0..=k)
                                        .map(|j| {
                                            let fx = s.face_of(x, j);
                                            let fy = t.face_of(y, j);
                                            let common = fx.mask & fy.mask;
                                            let ka = SimplexRef { gen: fx.gen, mask: compress(fx.mask, common, k - 1) };
                                            let kb = SimplexRef { gen: fy.gen, mask: compress(fy.mask, common, k - 1) };
                                            SimplexRef { gen: index[&(ka, kb)], mask: common }
                                        })
                                        .collect()
                                };
                                let name = format!("({},{})", s.ref_to_string(x), t.ref_to_string(y));
                                let g = b.add(name, faces).expect("product generator");
                                index.insert((x, y), g);
                                left_images[k].push(x);
                                right_images[k].push(y);
                            }
                        }
                    }
                }
            }
        }
    }
    // generators were added grouped by (p, q); the builder numbers them in
    // insertion order per dimension, which matches the image lists
    let object = Arc::new(b.build_unvalidated());
    let proj_left = SimplicialMap::new_unchecked(object.clone(), s.clone(), left_images);
    let proj_right = SimplicialMap::new_unchecked(object.clone(), t.clone(), right_images);
    Product { object, left: s.clone(), right: t.clone(), proj_left, proj_right, index }
}

/// Which summand of a pushout a representative comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `B ⊔_A C` with its legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    reps: Vec<Vec<(Side, Gen)>>,
}

impl Pushout {
    /// The map `P → Z` induced by `u : B → Z` and `v : C → Z` agreeing on `A`.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let top = self.object.max_dim().min(u.codomain().max_dim());
        let images = (0..=top)
            .map(|k| {
                self.reps[k]
                    .iter()
                    .map(|&(side, g)| match side {
                        Side::Left => u.image(g),
                        Side::Right => v.image(g),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(self.object.clone(), u.codomain().clone(), images)
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn unique_name(taken: &HashSet<String>, name: &str) -> String {
    let mut n = name.to_string();
    while taken.contains(&n) {
        n = format!("r({n})");
    }
    n
}

/// Pushout of `f : A → B` and `g : A → C`, computed levelwise on all
/// simplices and re-expressed in generator form.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if !(Arc::ptr_eq(f.domain(), g.domain()) || **f.domain() == **g.domain()) {
        return Err(Error::InvalidMap("pushout legs need a common domain".into()));
    }
    let a = f.domain();
    let (bset, cset) = (f.codomain(), g.codomain());
    let trunc = f.defined_dim().min(g.defined_dim()).min(bset.max_dim()).min(cset.max_dim());
    let mut builder = SimplicialSetBuilder::new(trunc);
    let mut taken: HashSet<String> = HashSet::new();
    let mut reps: Vec<Vec<(Side, Gen)>> = Vec::new();
    // per level: reference of every simplex of B and C in the pushout
    let mut level_refs: Vec<(HashMap<SimplexRef, SimplexRef>, HashMap<SimplexRef, SimplexRef>)> = Vec::new();
    let mut left_images = Vec::new();
    let mut right_images = Vec::new();
    for k in 0..=trunc {
        let bs = bset.simplices(k);
        let cs = cset.simplices(k);
        let nb = bs.len();
        let bidx: HashMap<SimplexRef, u32> = bs.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let cidx: HashMap<SimplexRef, u32> = cs.iter().enumerate().map(|(i, &x)| (x, (nb + i) as u32)).collect();
        let mut uf = UnionFind::new(nb + cs.len());
        for x in a.simplices(k) {
            uf.union(bidx[&f.apply(x)], cidx[&g.apply(x)]);
        }
        let members: Vec<(Side, SimplexRef)> = bs
            .iter()
            .map(|&x| (Side::Left, x))
            .chain(cs.iter().map(|&x| (Side::Right, x)))
            .collect();
        let mut degenerate_class: HashMap<u32, usize> = HashMap::new();
        for (i, (_, x)) in members.iter().enumerate() {
            if x.is_degenerate() {
                degenerate_class.entry(uf.find(i as u32)).or_insert(i);
            }
        }
        let mut class_ref: HashMap<u32, SimplexRef> = HashMap::new();
        let mut level_reps = Vec::new();
        for (i, &(side, x)) in members.iter().enumerate() {
            let root = uf.find(i as u32);
            if class_ref.contains_key(&root) {
                continue;
            }
            let r = if let Some(&d) = degenerate_class.get(&root) {
                let (dside, dx) = members[d];
                let lower = &level_refs[dx.gen.dim()];
                let base = SimplexRef::nondegenerate(dx.gen);
                let r = match dside {
                    Side::Left => lower.0[&base],
                    Side::Right => lower.1[&base],
                };
                let theta = dx.surjection();
                let psi = r.surjection();
                let comp: Vec<usize> = theta.iter().map(|&t| psi[t]).collect();
                SimplexRef { gen: r.gen, mask: mask_of_surjection(&comp) }
            } else {
                let set = match side {
                    Side::Left => bset,
                    Side::Right => cset,
                };
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    let lower = &level_refs[k - 1];
                    (0..=k)
                        .map(|j| {
                            let y = set.face_of(x, j);
                            match side {
                                Side::Left => lower.0[&y],
                                Side::Right => lower.1[&y],
                            }
                        })
                        .collect()
                };
                let name = unique_name(&taken, set.name(x.gen));
                taken.insert(name.clone());
                let gen = builder.add(name, faces)?;
                level_reps.push((side, x.gen));
                SimplexRef::nondegenerate(gen)
            };
            class_ref.insert(root, r);
        }
        let mut bmap = HashMap::with_capacity(nb);
        let mut cmap = HashMap::with_capacity(cs.len());
        for (i, &(side, x)) in members.iter().enumerate() {
            let r = class_ref[&uf.find(i as u32)];
            match side {
                Side::Left => bmap.insert(x, r),
                Side::Right => cmap.insert(x, r),
            };
        }
        left_images.push(bset.gens(k).map(|g| bmap[&SimplexRef::nondegenerate(g)]).collect::<Vec<_>>());
        right_images.push(cset.gens(k).map(|g| cmap[&SimplexRef::nondegenerate(g)]).collect::<Vec<_>>());
        level_refs.push((bmap, cmap));
        reps.push(level_reps);
    }
    let object = Arc::new(builder.build_unvalidated());
    let left = SimplicialMap::new_unchecked(bset.clone(), object.clone(), left_images);
    let right = SimplicialMap::new_unchecked(cset.clone(), object.clone(), right_images);
    Ok(Pushout { object, left, right, reps })
}

/// Strict pullback `X ×_Z Y` with its legs.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

impl Pullback {
    /// The map `W → X ×_Z Y` induced by `u : W → X` and `v : W → Y`.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let (x, y) = (self.left.codomain(), self.right.codomain());
        let w = u.domain();
        let top = u.defined_dim().min(v.defined_dim()).min(self.object.max_dim());
        let mut images = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut level = Vec::with_capacity(w.count(k));
            for g in w.gens(k) {
                let (a, c) = (u.image(g), v.image(g));
                let common = a.mask & c.mask;
                let ka = SimplexRef { gen: a.gen, mask: compress(a.mask, common, k) };
                let kc = SimplexRef { gen: c.gen, mask: compress(c.mask, common, k) };
                let name = format!("({},{})", x.ref_to_string(ka), y.ref_to_string(kc));
                let gen = self
                    .object
                    .gen_by_name(&name)
                    .ok_or_else(|| Error::InvalidMap(format!("`{}` does not land in the pullback", w.name(g))))?;
                level.push(SimplexRef { gen, mask: common });
            }
            images.push(level);
        }
        SimplicialMap::new(w.clone(), self.object.clone(), images)
    }
}

/// Pullback of `f : X → Z` and `g : Y → Z`: the pairs `(x, y)` with
/// `f(x) = g(y)` and no common degeneracy.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback> {
    if !(Arc::ptr_eq(f.codomain(), g.codomain()) || **f.codomain() == **g.codomain()) {
        return Err(Error::InvalidMap("pullback legs need a common codomain".into()));
    }
    let (x, y) = (f.domain(), g.domain());
    let trunc = f.defined_dim().min(g.defined_dim());
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut index: HashMap<(SimplexRef, SimplexRef), Gen> = HashMap::new();
    let mut left_images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
    let mut right_images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
    for k in 0..=trunc {
        let mut over: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
        for ys in y.simplices(k) {
            over.entry(g.apply(ys)).or_default().push(ys);
        }
        let mut pairs: Vec<(SimplexRef, SimplexRef)> = Vec::new();
        for xs in x.simplices(k) {
            if let Some(list) = over.get(&f.apply(xs)) {
                for &ys in list {
                    if xs.mask & ys.mask == 0 {
                        pairs.push((xs, ys));
                    }
                }
            }
        }
        pairs.sort_by_key(|&(a, c)| (a.gen, c.gen, a.mask, c.mask));
        for (xs, ys) in pairs {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|j| {
                        let fx = x.face_of(xs, j);
                        let fy = y.face_of(ys, j);
                        let common = fx.mask & fy.mask;
                        let ka = SimplexRef { gen: fx.gen, mask: compress(fx.mask, common, k - 1) };
                        let kb = SimplexRef { gen: fy.gen, mask: compress(fy.mask, common, k - 1) };
                        SimplexRef { gen: index[&(ka, kb)], mask: common }
                    })
                    .collect()
            };
            let name = format!("({},{})", x.ref_to_string(xs), y.ref_to_string(ys));
            let gen = b.add(name, faces)?;
            index.insert((xs, ys), gen);
            left_images[k].push(xs);
            right_images[k].push(ys);
        }
    }
    let object = Arc::new(b.build_unvalidated());
    let left = SimplicialMap::new_unchecked(object.clone(), x.clone(), left_images);
    let right = SimplicialMap::new_unchecked(object.clone(), y.clone(), right_images);
    Ok(Pullback { object, left, right })
}

/// Fiber of `f : X → Y` over the vertex `v` of `Y`.
pub fn fiber(f: &SimplicialMap, v: usize) -> Result<Pullback> {
    let pt = Arc::new(point(f.codomain().max_dim()));
    let inc = SimplicialMap::constant(pt, f.codomain().clone(), v);
    pullback(f, &inc)
}

/// The mapping cylinder `M(i) = B ⊔_{A×{1}} A × I` where `I = sd^h Δ[1]`.
///
/// A homotopy `H : A × I → X` from a map on `A × {0}` to `ℓ ∘ i` on `A × {1}`
/// together with `ℓ : B → X` is exactly a map `M(i) → X`.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub object: Arc<SimplicialSet>,
    pub interval: Arc<SimplicialSet>,
    pub product: Product,
    /// `A → M(i)` at the free end `A × {0}`.
    pub free_end: SimplicialMap,
    /// `B → M(i)`.
    pub inclusion_b: SimplicialMap,
    /// `A × I → M(i)`.
    pub from_product: SimplicialMap,
    /// `π(i) : M(i) → B`.
    pub projection: SimplicialMap,
    pub end0: Gen,
    pub end1: Gen,
}

fn constant_ref(v: Gen, k: usize) -> SimplexRef {
    SimplexRef { gen: v, mask: if k == 0 { 0 } else { (1u32 << k) - 1 } }
}

pub fn mapping_cylinder(i: &SimplicialMap, homotopy_level: usize) -> Result<MappingCylinder> {
    let a = i.domain().clone();
    let bset = i.codomain().clone();
    let need = a.top_dim().map_or(1, |t| t + 1);
    if a.max_dim() < need {
        return Err(Error::TruncationInsufficient { needed: need, have: a.max_dim() });
    }
    if bset.max_dim() < need {
        return Err(Error::TruncationInsufficient { needed: need, have: bset.max_dim() });
    }
    let (interval, end0, end1) = subdivide::subdivided_interval(homotopy_level, a.max_dim())?;
    let interval = Arc::new(interval);
    let prod = product(&a, &interval);
    let top = prod.object.max_dim();
    let at_end = |end: Gen| -> Vec<Vec<SimplexRef>> {
        (0..=top)
            .map(|k| a.gens(k).map(|g| prod.pair(SimplexRef::nondegenerate(g), constant_ref(end, k))).collect())
            .collect()
    };
    let glue = SimplicialMap::new(a.clone(), prod.object.clone(), at_end(end1))?;
    let free = SimplicialMap::new(a.clone(), prod.object.clone(), at_end(end0))?;
    let po = pushout(i, &glue)?;
    let free_end = free.then(&po.right)?;
    let collapse = prod.proj_left.then(i)?;
    let projection = po.induced(&SimplicialMap::identity(bset.clone()), &collapse)?;
    Ok(MappingCylinder {
        object: po.object.clone(),
        interval,
        product: prod,
        free_end,
        inclusion_b: po.left.clone(),
        from_product: po.right.clone(),
        projection,
        end0,
        end1,
    })
}

/// `S ⊔ T` with both injections; clashing names on the right are renamed.
pub fn disjoint_union(
    s: &Arc<SimplicialSet>,
    t: &Arc<SimplicialSet>,
) -> Result<(Arc<SimplicialSet>, SimplicialMap, SimplicialMap)> {
    let trunc = s.max_dim().min(t.max_dim());
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut taken: HashSet<String> = HashSet::new();
    let offset: Vec<usize> = (0..=trunc).map(|k| s.count(k)).collect();
    for k in 0..=trunc {
        for g in s.gens(k) {
            taken.insert(s.name(g).to_string());
            b.add(s.name(g), s.gen_faces(g).to_vec())?;
        }
    }
    for k in 0..=trunc {
        for g in t.gens(k) {
            let faces = t
                .gen_faces(g)
                .iter()
                .map(|f| SimplexRef { gen: Gen::new(f.gen.dim(), f.gen.index() + offset[f.gen.dim()]), mask: f.mask })
                .collect();
            let name = unique_name(&taken, t.name(g));
            taken.insert(name.clone());
            b.add(name, faces)?;
        }
    }
    let u = Arc::new(b.build_unvalidated());
    let inj_s = SimplicialMap::from_fn(s.clone(), u.clone(), SimplexRef::nondegenerate)?;
    let inj_t = SimplicialMap::from_fn(t.clone(), u.clone(), |g| {
        SimplexRef::nondegenerate(Gen::new(g.dim(), g.index() + offset[g.dim()]))
    })?;
    Ok((u, inj_s, inj_t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology;

    fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(s)
    }

    #[test]
    fn shape_counts() {
        assert_eq!(boundary(2, 2).unwrap().counts(), vec![3, 3, 0]);
        assert_eq!(horn(2, 1, 2).unwrap().counts(), vec![3, 2, 0]);
        assert!(horn(2, 3, 2).is_err());
        assert_eq!(quotient_d(2).unwrap().counts(), vec![2, 2, 1]);
        assert!(quotient_d(3).unwrap().validate().is_empty());
    }

    #[test]
    fn horn_omits_face_opposite_k() {
        let h = horn(2, 1, 2).unwrap();
        assert!(h.gen_by_name("e02").is_none());
        assert!(h.gen_by_name("e01").is_some());
    }

    #[test]
    fn product_counts() {
        let d1 = arc(standard(1, 2).unwrap());
        let sq = product(&d1, &d1);
        assert_eq!(sq.object.counts(), vec![4, 5, 2]);
        assert!(sq.object.validate().is_empty());
        let h = arc(horn(2, 1, 3).unwrap());
        let d1 = arc(standard(1, 3).unwrap());
        assert_eq!(product(&h, &d1).object.counts(), vec![6, 9, 4, 0]);
    }

    #[test]
    fn shuffle_count_oracle() {
        // non-degenerate k-simplices of Δ[p] × Δ[q] counted as lattice paths
        fn paths(p: usize, q: usize, k: usize) -> usize {
            // count strictly increasing chains in [p]×[q] of length k+1
            let pts: Vec<(usize, usize)> = (0..=p).cartesian_product(0..=q).collect();
            let mut count = 0;
            for chain in pts.iter().combinations(k + 1) {
                if chain.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && w[0] != w[1]) {
                    count += 1;
                }
            }
            count
        }
        for (p, q) in [(1, 1), (2, 1), (2, 2)] {
            let a = arc(standard(p, p + q).unwrap());
            let b = arc(standard(q, p + q).unwrap());
            let prod = product(&a, &b);
            for k in 0..=p + q {
                assert_eq!(prod.object.count(k), paths(p, q, k), "p={p} q={q} k={k}");
            }
        }
    }

    #[test]
    fn product_with_point_is_identity() {
        let pt = arc(point(2));
        let s = arc(boundary(2, 2).unwrap());
        let prod = product(&pt, &s);
        assert_eq!(prod.object.counts(), s.counts());
        assert!(prod.proj_right.is_isomorphism());
    }

    #[test]
    fn pushout_identities() {
        let s = arc(boundary(2, 2).unwrap());
        let id = SimplicialMap::identity(s.clone());
        let po = pushout(&id, &id).unwrap();
        assert_eq!(*po.object, *s);
    }

    #[test]
    fn pushout_sphere() {
        let bd = arc(boundary(2, 3).unwrap());
        let d2 = arc(standard(2, 3).unwrap());
        let inc = inclusion(&bd, &d2).unwrap();
        let collapse = SimplicialMap::terminal(bd, arc(point(3))).unwrap();
        let po = pushout(&inc, &collapse).unwrap();
        let h = homology::homology(&po.object, 2).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 1]);
    }

    #[test]
    fn two_triangles_along_a_horn() {
        let h = arc(horn(2, 1, 2).unwrap());
        let d2 = arc(standard(2, 2).unwrap());
        let inc = inclusion(&h, &d2).unwrap();
        let po = pushout(&inc, &inc).unwrap();
        let expected: Vec<usize> = (0..=2).map(|k| 2 * d2.count(k) - h.count(k)).collect();
        assert_eq!(po.object.counts(), expected);
        assert_eq!(expected, vec![3, 4, 2]);
        assert!(po.object.validate().is_empty());
    }

    #[test]
    fn pullback_fiber_of_product_projection() {
        let bd = arc(boundary(2, 2).unwrap());
        let d1 = arc(standard(1, 2).unwrap());
        let prod = product(&bd, &d1);
        let fib = fiber(&prod.proj_right, 0).unwrap();
        assert_eq!(fib.object.counts(), bd.counts());
        let id = SimplicialMap::identity(bd.clone());
        assert_eq!(pullback(&id, &id).unwrap().object.counts(), bd.counts());
    }

    #[test]
    fn mapping_cylinder_counts() {
        let h = arc(horn(2, 1, 2).unwrap());
        let d2 = arc(standard(2, 2).unwrap());
        let inc = inclusion(&h, &d2).unwrap();
        let cyl = mapping_cylinder(&inc, 0).unwrap();
        assert_eq!(cyl.object.counts(), vec![6, 10, 5]);
        assert!(cyl.object.validate().is_empty());
        let back = cyl.inclusion_b.then(&cyl.projection).unwrap();
        assert_eq!(back, SimplicialMap::identity(d2.clone()));
        assert_eq!(cyl.free_end.then(&cyl.projection).unwrap(), inc);

        let pt = arc(point(1));
        let cyl = mapping_cylinder(&SimplicialMap::identity(pt), 0).unwrap();
        assert_eq!(cyl.object.counts(), vec![2, 1]);
    }

    #[test]
    fn group_nerve_z2() {
        let n = group_nerve(&cyclic_group(2), 3).unwrap();
        assert_eq!(n.counts(), vec![1, 1, 1, 1]);
        let g = n.gen_by_name("g(1,1)").unwrap();
        // d1 (g, g) = g·g = e = s0 *
        assert_eq!(n.ref_to_string(n.gen_faces(g)[1]), "s0*");
    }

    #[test]
    fn disjoint_union_renames() {
        let a = arc(standard(1, 1).unwrap());
        let (u, l, r) = disjoint_union(&a, &a).unwrap();
        assert_eq!(u.counts(), vec![4, 2]);
        assert!(l.is_monomorphism() && r.is_monomorphism());
    }
}
