//! Hom-set enumeration and Kan's `Ex` functor.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rayon::prelude::*;

use crate::builders::{product, standard, Product};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::search::{DomainPlan, Search, SearchOutcome, TargetIndex, DEFAULT_BUDGET};
use crate::simplex::{codegeneracy, coface, Gen, SimplexRef};
use crate::sset::{SimplicialSet, SimplicialSetBuilder};
use crate::subdivide::{sd, Subdivision};

/// All maps `K → X`, in search order.
#[derive(Clone, Debug)]
pub struct HomEnumeration {
    pub domain: Arc<SimplicialSet>,
    pub codomain: Arc<SimplicialSet>,
    pub maps: Vec<SimplicialMap>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
}

pub fn hom_enumerate(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>) -> Result<HomEnumeration> {
    hom_enumerate_with_budget(k, x, DEFAULT_BUDGET)
}

pub fn hom_enumerate_with_budget(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, budget: u64) -> Result<HomEnumeration> {
    let top = k.top_dim().unwrap_or(0);
    if x.max_dim() < top {
        return Err(Error::TruncationInsufficient { needed: top, have: x.max_dim() });
    }
    let index = TargetIndex::new(x.clone(), top)?;
    let plan = DomainPlan::new(k.clone(), &[])?;
    let prescribed = HashMap::new();
    let search = Search { plan: &plan, target: &index, prescribed: &prescribed, over: None, injective: false, budget };
    let mut maps = Vec::new();
    let complete = match search.all(usize::MAX)? {
        SearchOutcome::Found(v) => {
            maps = v;
            true
        }
        SearchOutcome::Exhausted => true,
        SearchOutcome::BudgetExceeded => false,
    };
    Ok(HomEnumeration { domain: k.clone(), codomain: x.clone(), maps, complete })
}

/// A truncated cosimplicial simplicial set `[n] ↦ C[n]`, `n ≤ d`, given by
/// its cofaces and codegeneracies.
pub struct Cosimplicial {
    pub trunc: usize,
    pub objects: Vec<Arc<SimplicialSet>>,
    /// `cofaces[n][j] : C[n−1] → C[n]`
    pub cofaces: Vec<Vec<SimplicialMap>>,
    /// `codegeneracies[n][j] : C[n] → C[n−1]`
    pub codegeneracies: Vec<Vec<SimplicialMap>>,
    /// `C[n] → Δ[n]` when `C = sd Δ[•]`: the last-vertex maps.
    pub last_vertex: Vec<SimplicialMap>,
    /// `Δ[n] → C[n]` at either end when `C = Δ[•] × Δ[1]`.
    pub ends: Vec<[SimplicialMap; 2]>,
    /// `C[n] → Δ[n]` when `C = Δ[•] × Δ[1]`.
    pub projections: Vec<SimplicialMap>,
}

fn standard_simplices(d: usize, trunc: usize) -> Result<Vec<Arc<SimplicialSet>>> {
    (0..=d).map(|n| standard(n, trunc).map(Arc::new)).collect()
}

fn vertex_op(simplices: &[Arc<SimplicialSet>], from: usize, to: usize, verts: Vec<usize>) -> Result<SimplicialMap> {
    let verts: Vec<u32> = verts.into_iter().map(|v| v as u32).collect();
    SimplicialMap::from_vertex_map(simplices[from].clone(), simplices[to].clone(), &verts)
}

impl Cosimplicial {
    /// `sd Δ[•]`, truncated at `d`.
    fn subdivided(d: usize) -> Result<Self> {
        let simplices = standard_simplices(d, d)?;
        let subs: Vec<Subdivision> = simplices.iter().map(sd).collect();
        let mut cofaces = vec![Vec::new()];
        let mut codegeneracies = vec![Vec::new()];
        for n in 1..=d {
            let cf = (0..=n)
                .map(|j| subs[n - 1].map(&vertex_op(&simplices, n - 1, n, coface(n, j))?, &subs[n]))
                .collect::<Result<_>>()?;
            let cd = (0..n)
                .map(|j| subs[n].map(&vertex_op(&simplices, n, n - 1, codegeneracy(n - 1, j))?, &subs[n - 1]))
                .collect::<Result<_>>()?;
            cofaces.push(cf);
            codegeneracies.push(cd);
        }
        let last_vertex = subs.iter().map(Subdivision::last_vertex).collect();
        let objects = subs.iter().map(|s| s.object.clone()).collect();
        Ok(Cosimplicial { trunc: d, objects, cofaces, codegeneracies, last_vertex, ends: Vec::new(), projections: Vec::new() })
    }

    /// `Δ[•] × Δ[1]`, with levels `n ≤ d` (each of dimension `n + 1`).
    fn cylinders(d: usize) -> Result<Self> {
        let simplices = standard_simplices(d, d + 1)?;
        let interval = Arc::new(standard(1, d + 1)?);
        let prods: Vec<Product> = simplices.iter().map(|s| product(s, &interval)).collect();
        let id = SimplicialMap::identity(interval.clone());
        let mut cofaces = vec![Vec::new()];
        let mut codegeneracies = vec![Vec::new()];
        for n in 1..=d {
            let cf = (0..=n)
                .map(|j| prods[n].product_map(&prods[n - 1], &vertex_op(&simplices, n - 1, n, coface(n, j))?, &id))
                .collect::<Result<_>>()?;
            let cd = (0..n)
                .map(|j| prods[n - 1].product_map(&prods[n], &vertex_op(&simplices, n, n - 1, codegeneracy(n - 1, j))?, &id))
                .collect::<Result<_>>()?;
            cofaces.push(cf);
            codegeneracies.push(cd);
        }
        let ends = (0..=d)
            .map(|n| -> Result<[SimplicialMap; 2]> {
                let at = |e: usize| -> Result<SimplicialMap> {
                    let c = SimplicialMap::constant(simplices[n].clone(), interval.clone(), e);
                    prods[n].pairing(&SimplicialMap::identity(simplices[n].clone()), &c)
                };
                Ok([at(0)?, at(1)?])
            })
            .collect::<Result<_>>()?;
        let objects = prods.iter().map(|p| p.object.clone()).collect();
        let projections = prods.iter().map(|p| p.proj_left.clone()).collect();
        Ok(Cosimplicial { trunc: d, objects, cofaces, codegeneracies, last_vertex: Vec::new(), ends, projections })
    }

    fn cached(d: usize, cylinder: bool) -> Result<Arc<Cosimplicial>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<Cosimplicial>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().expect("cache").get(&(d, cylinder)) {
            return Ok(c.clone());
        }
        let built = Arc::new(if cylinder { Cosimplicial::cylinders(d)? } else { Cosimplicial::subdivided(d)? });
        Ok(cache.lock().expect("cache").entry((d, cylinder)).or_insert(built).clone())
    }

    /// Shared `sd Δ[•]` truncated at `d`.
    pub fn sd_simplices(d: usize) -> Result<Arc<Cosimplicial>> {
        Self::cached(d, false)
    }

    /// Shared `Δ[•] × Δ[1]` for levels up to `d`.
    pub fn cylinder_simplices(d: usize) -> Result<Arc<Cosimplicial>> {
        Self::cached(d, true)
    }

    fn level_top(&self, n: usize) -> usize {
        self.objects[n].top_dim().unwrap_or(0)
    }
}

type Key = Vec<Vec<SimplexRef>>;

/// The simplicial set `[n] ↦ Hom(C[n], X)` truncated at `d`, remembering which
/// map each simplex is. `Ex X` is the case `C = sd Δ[•]`.
pub struct LevelwiseHom {
    pub object: Arc<SimplicialSet>,
    pub source: Arc<SimplicialSet>,
    pub cos: Arc<Cosimplicial>,
    lookup: Vec<HashMap<Key, SimplexRef>>,
    elements: Vec<Vec<Key>>,
}

/// `Ex X` truncated at `d`.
pub type Ex = LevelwiseHom;

fn compose_key(first: &SimplicialMap, then: &Key, top: usize) -> Key {
    first
        .images()
        .iter()
        .take(top + 1)
        .map(|level| level.iter().map(|&y| apply_key(then, y)).collect())
        .collect()
}

fn apply_key(images: &Key, x: SimplexRef) -> SimplexRef {
    let y = images[x.gen.dim()][x.gen.index()];
    if x.mask == 0 {
        return y;
    }
    if y.mask == 0 {
        return SimplexRef { gen: y.gen, mask: x.mask };
    }
    let theta = x.surjection();
    let psi = y.surjection();
    let comp: Vec<usize> = theta.iter().map(|&t| psi[t]).collect();
    SimplexRef { gen: y.gen, mask: crate::simplex::mask_of_surjection(&comp) }
}

fn trim(mut key: Key, top: usize) -> Key {
    key.truncate(top + 1);
    key
}

impl LevelwiseHom {
    /// `Ex X` truncated at `d`; needs `X.max_dim ≥ d`.
    pub fn new(x: &Arc<SimplicialSet>, d: usize) -> Result<Self> {
        let cos = Cosimplicial::sd_simplices(d)?;
        Self::build(cos, x, "ex")
    }

    /// `X^{Δ[1]}` truncated at `d`; needs `X.max_dim ≥ d + 1`.
    pub fn paths(x: &Arc<SimplicialSet>, d: usize) -> Result<Self> {
        let cos = Cosimplicial::cylinder_simplices(d)?;
        Self::build(cos, x, "p")
    }

    pub fn build(cos: Arc<Cosimplicial>, x: &Arc<SimplicialSet>, prefix: &str) -> Result<Self> {
        let d = cos.trunc;
        let need = cos.level_top(d);
        if x.max_dim() < need {
            return Err(Error::TruncationInsufficient { needed: need, have: x.max_dim() });
        }
        let levels: Vec<Vec<Key>> = (0..=d)
            .into_par_iter()
            .map(|n| -> Result<Vec<Key>> {
                let e = hom_enumerate(&cos.objects[n], x)?;
                if !e.complete {
                    return Err(Error::Precondition(format!("level {n} exceeded the search budget")));
                }
                Ok(e.maps.into_iter().map(|m| trim(m.images().to_vec(), cos.level_top(n))).collect())
            })
            .collect::<Result<_>>()?;
        let mut b = SimplicialSetBuilder::new(d);
        let mut lookup: Vec<HashMap<Key, SimplexRef>> = Vec::with_capacity(d + 1);
        let mut elements: Vec<Vec<Key>> = Vec::with_capacity(d + 1);
        for (n, level) in levels.into_iter().enumerate() {
            let top = cos.level_top(n);
            let mut table: HashMap<Key, SimplexRef> = HashMap::new();
            if n > 0 {
                for (key, &r) in &lookup[n - 1] {
                    for (j, sigma) in cos.codegeneracies[n].iter().enumerate() {
                        table.insert(compose_key(sigma, key, top), r.degenerate(j));
                    }
                }
            }
            let mut gens = Vec::new();
            for key in level {
                if table.contains_key(&key) {
                    continue;
                }
                let name = if top == 0 {
                    x.name(key[0][0].gen).to_string()
                } else {
                    let tops = key[top].iter().map(|&y| x.ref_to_string(y)).join(",");
                    format!("{prefix}({tops})")
                };
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    let below = cos.level_top(n - 1);
                    cos.cofaces[n]
                        .iter()
                        .map(|delta| {
                            let fk = compose_key(delta, &key, below);
                            lookup[n - 1]
                                .get(&fk)
                                .copied()
                                .ok_or_else(|| Error::Invalid("face of a levelwise-hom simplex not found".into()))
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let g = b.add(name, faces)?;
                table.insert(key.clone(), SimplexRef::nondegenerate(g));
                gens.push(key);
            }
            lookup.push(table);
            elements.push(gens);
        }
        Ok(LevelwiseHom { object: Arc::new(b.build_unvalidated()), source: x.clone(), cos, lookup, elements })
    }

    pub fn trunc(&self) -> usize {
        self.cos.trunc
    }

    /// The map `C[n] → X` corresponding to a generator.
    pub fn element(&self, g: Gen) -> SimplicialMap {
        let n = g.dim();
        SimplicialMap::new_unchecked(self.cos.objects[n].clone(), self.source.clone(), self.elements[n][g.index()].clone())
    }

    /// The simplex given by a map `C[n] → X`.
    pub fn simplex_of(&self, m: &SimplicialMap) -> Option<SimplexRef> {
        let n = self.cos.objects.iter().position(|o| Arc::ptr_eq(o, m.domain()) || **o == **m.domain())?;
        self.lookup.get(n)?.get(&trim(m.images().to_vec(), self.cos.level_top(n))).copied()
    }

    /// Post-composition with `f : X → Y`, into the same construction on `Y`.
    pub fn map(&self, f: &SimplicialMap, target: &LevelwiseHom) -> Result<SimplicialMap> {
        let d = self.trunc().min(target.trunc());
        let images = (0..=d)
            .map(|n| {
                self.elements[n]
                    .iter()
                    .map(|key| {
                        let pushed: Key = key.iter().map(|l| l.iter().map(|&y| f.apply(y)).collect()).collect();
                        target.lookup[n]
                            .get(&pushed)
                            .copied()
                            .ok_or_else(|| Error::InvalidMap("image left the target".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.object.clone(), target.object.clone(), images)
    }

    /// The unit `γ* : X → Ex X`, precomposition with the last-vertex map.
    pub fn gamma(&self) -> Result<SimplicialMap> {
        if self.cos.last_vertex.is_empty() {
            return Err(Error::Precondition("γ* is defined on Ex".into()));
        }
        let x = &self.source;
        let d = self.trunc();
        let images = (0..=d)
            .map(|n| {
                let last = &self.cos.last_vertex[n];
                let simplex = last.codomain();
                x.gens(n)
                    .map(|g| {
                        let key: Key = last
                            .images()
                            .iter()
                            .take(n + 1)
                            .map(|level| {
                                level
                                    .iter()
                                    .map(|&y| {
                                        let theta: Vec<usize> =
                                            simplex.vertices_of(y).into_iter().map(|v| v as usize).collect();
                                        x.apply_op(SimplexRef::nondegenerate(g), &theta)
                                    })
                                    .collect()
                            })
                            .collect();
                        self.lookup[n]
                            .get(&key)
                            .copied()
                            .ok_or_else(|| Error::Invalid("γ* image not found".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(x.clone(), self.object.clone(), images)
    }

    /// Evaluation `X^{Δ[1]} → X` at the end `e ∈ {0, 1}`.
    pub fn evaluation(&self, e: usize) -> Result<SimplicialMap> {
        if self.cos.ends.is_empty() {
            return Err(Error::Precondition("evaluation is defined on path spaces".into()));
        }
        let images = (0..=self.trunc())
            .map(|n| {
                let end = &self.cos.ends[n][e];
                let top = SimplexRef::nondegenerate(Gen::new(n, 0));
                let at = end.apply(top);
                self.elements[n].iter().map(|key| apply_key(key, at)).collect()
            })
            .collect();
        SimplicialMap::new(self.object.clone(), self.source.clone(), images)
    }

    /// `X → X^{Δ[1]}`, constant paths.
    pub fn constants(&self) -> Result<SimplicialMap> {
        if self.cos.ends.is_empty() {
            return Err(Error::Precondition("constant paths are defined on path spaces".into()));
        }
        let x = &self.source;
        let images = (0..=self.trunc())
            .map(|n| {
                let proj = &self.cos.projections[n];
                let simplex = proj.codomain();
                x.gens(n)
                    .map(|g| {
                        let key: Key = proj
                            .images()
                            .iter()
                            .take(n + 2)
                            .map(|level| {
                                level
                                    .iter()
                                    .map(|&t| {
                                        let theta: Vec<usize> =
                                            simplex.vertices_of(t).into_iter().map(|v| v as usize).collect();
                                        x.apply_op(SimplexRef::nondegenerate(g), &theta)
                                    })
                                    .collect()
                            })
                            .collect();
                        self.lookup[n].get(&key).copied().ok_or_else(|| Error::Invalid("constant path not found".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(x.clone(), self.object.clone(), images)
    }
}

/// `Exⁱ X` truncated at `d`.
pub fn ex_apply(x: &Arc<SimplicialSet>, iterations: usize, d: usize) -> Result<Arc<SimplicialSet>> {
    Ok(ex_tower(x, iterations, d)?.last().map_or_else(|| x.clone(), |e| e.object.clone()))
}

/// `Ex X, Ex² X, …, Exⁱ X`, each truncated at `d`.
pub fn ex_tower(x: &Arc<SimplicialSet>, iterations: usize, d: usize) -> Result<Vec<Ex>> {
    let mut out: Vec<Ex> = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let cur = out.last().map_or_else(|| x.clone(), |e| e.object.clone());
        out.push(Ex::new(&cur, d)?);
    }
    Ok(out)
}

/// `γ* : X → Ex X` truncated at `d`.
pub fn gamma_star(x: &Arc<SimplicialSet>, d: usize) -> Result<SimplicialMap> {
    Ex::new(x, d)?.gamma()
}

/// `Exⁱ f` between towers built over its domain and codomain.
pub fn ex_map_iterate(f: &SimplicialMap, source: &[Ex], target: &[Ex]) -> Result<SimplicialMap> {
    let mut cur = f.clone();
    for (s, t) in source.iter().zip(target) {
        cur = s.map(&cur, t)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary, cyclic_group, group_nerve, point, standard};
    use crate::homology::{homology, induced_iso_check};

    fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(s)
    }

    #[test]
    fn ex_of_circle() {
        let bd = arc(boundary(2, 2).unwrap());
        let ex = Ex::new(&bd, 1).unwrap();
        assert_eq!(ex.object.counts(), vec![3, 11]);
        assert!(ex.object.validate().is_empty());
        let ex2 = Ex::new(&bd, 2).unwrap();
        assert!(ex2.object.validate().is_empty());
        assert_eq!(ex2.object.gens(0).map(|g| ex2.object.name(g).to_string()).collect::<Vec<_>>(), vec!["v0", "v1", "v2"]);
        let ex3 = ex_apply(&arc(boundary(2, 3).unwrap()), 1, 3).unwrap();
        assert_eq!(homology(&ex3, 2).unwrap().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn gamma_on_circle() {
        let bd = arc(boundary(2, 2).unwrap());
        let ex = Ex::new(&bd, 2).unwrap();
        let g = ex.gamma().unwrap();
        assert_eq!(g.vertex_map(), vec![0, 1, 2]);
        let e01 = bd.gen_by_name("e01").unwrap();
        assert_eq!(ex.object.ref_to_string(g.image(e01)), "ex(e01,s0v1)");
        let ex3 = Ex::new(&arc(boundary(2, 3).unwrap()), 3).unwrap();
        assert_eq!(ex3.gamma().unwrap().then(&SimplicialMap::identity(ex3.object.clone())).unwrap().validate(), Vec::<String>::new());
        assert_eq!(induced_iso_check(&ex3.gamma().unwrap(), 1).unwrap(), vec![true, true]);
    }

    #[test]
    fn ex_of_point_and_naturality() {
        let p = arc(point(2));
        assert_eq!(ex_apply(&p, 1, 2).unwrap().counts(), vec![1, 0, 0]);
        let bd = arc(boundary(2, 2).unwrap());
        let f = SimplicialMap::terminal(bd.clone(), p.clone()).unwrap();
        let (ex, ey) = (Ex::new(&bd, 2).unwrap(), Ex::new(&p, 2).unwrap());
        let exf = ex.map(&f, &ey).unwrap();
        let lhs = ex.gamma().unwrap().then(&exf).unwrap();
        let rhs = f.then(&ey.gamma().unwrap()).unwrap();
        assert_eq!(lhs.images(), rhs.images());
    }

    #[test]
    fn ex_of_group_nerve_counts() {
        // maps sd Δ[n] → BG are 1-cocycles: |G|^(vertices − 1)
        let n = arc(group_nerve(&cyclic_group(2), 2).unwrap());
        let ex = Ex::new(&n, 2).unwrap();
        let total = |k: usize| ex.object.enumerate_simplices(k).unwrap().len();
        assert_eq!((total(0), total(1), total(2)), (1, 4, 64));
    }

    #[test]
    fn path_space() {
        let p = arc(point(3));
        let pp = LevelwiseHom::paths(&p, 2).unwrap();
        assert_eq!(pp.object.counts(), vec![1, 0, 0]);
        let d1 = arc(standard(1, 3).unwrap());
        let paths = LevelwiseHom::paths(&d1, 2).unwrap();
        assert!(paths.object.validate().is_empty());
        // vertices are the 1-simplices of Δ[1]: s0v0, e01, s0v1
        assert_eq!(paths.object.count(0), 3);
        let ev0 = paths.evaluation(0).unwrap();
        let ev1 = paths.evaluation(1).unwrap();
        let c = paths.constants().unwrap();
        let id = SimplicialMap::identity(d1);
        assert_eq!(c.then(&ev0).unwrap().images()[..3], id.images()[..3]);
        assert_eq!(c.then(&ev1).unwrap().images()[..3], id.images()[..3]);
    }

    #[test]
    fn element_round_trip() {
        let bd = arc(boundary(2, 2).unwrap());
        let ex = Ex::new(&bd, 2).unwrap();
        for g in ex.object.all_gens() {
            let m = ex.element(g);
            assert!(m.validate().is_empty());
            assert_eq!(ex.simplex_of(&m), Some(SimplexRef::nondegenerate(g)));
        }
    }
}
