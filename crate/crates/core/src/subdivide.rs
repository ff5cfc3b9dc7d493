//! Barycentric subdivision, the last-vertex map and the cone-subdivision.
//!
//! A non-degenerate `k`-simplex of `sd S` is a pair `(x, c)` where `x` is a
//! non-degenerate `n`-simplex of `S` and `c = (σ₀ ⊊ ⋯ ⊊ σ_k = [n])` is a chain
//! of vertex subsets of `[n]` ending at `[n]`. Subsets are stored as bit masks.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::builders::{self, generated_subset};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{Gen, SimplexRef};
use crate::sset::{SimplicialSet, SimplicialSetBuilder};

/// `sd S` together with the origin `(x, chain)` of each of its generators.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub object: Arc<SimplicialSet>,
    pub source: Arc<SimplicialSet>,
    origin: Vec<Vec<(Gen, Vec<u32>)>>,
    lookup: HashMap<(Gen, Vec<u32>), Gen>,
}

fn full(n: usize) -> u32 {
    (1u32 << (n + 1)) - 1
}

fn subset_label(mask: u32, n: usize) -> String {
    let sep = if n >= 10 { "." } else { "" };
    (0..=n).filter(|i| mask & (1 << i) != 0).map(|i| i.to_string()).join(sep)
}

/// Chains `σ₀ ⊊ ⋯ ⊊ σ_k = [n]` of non-empty subsets, in lexicographic order.
fn chains_ending_at_top(n: usize, k: usize) -> Vec<Vec<u32>> {
    let top = full(n);
    let mut out = Vec::new();
    // build backwards from the top by removing non-empty sets of elements
    fn extend(cur: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k + 1 {
            let mut c = cur.clone();
            c.reverse();
            out.push(c);
            return;
        }
        let last = *cur.last().unwrap();
        // proper non-empty subsets of `last`
        let mut sub = (last - 1) & last;
        while sub != 0 {
            cur.push(sub);
            extend(cur, k, out);
            cur.pop();
            sub = (sub - 1) & last;
        }
    }
    extend(&mut vec![top], k, &mut out);
    out.sort();
    out
}

/// Reindexes a subset of `[n]` into the coordinates of `within` (a subset of `[n]`).
fn reindex(mask: u32, within: u32) -> u32 {
    let mut out = 0;
    let mut pos = 0;
    for i in 0..32 {
        if within & (1 << i) != 0 {
            if mask & (1 << i) != 0 {
                out |= 1 << pos;
            }
            pos += 1;
        }
    }
    out
}

fn positions(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl Subdivision {
    /// Origin `(x, chain)` of a generator of `sd S`.
    pub fn origin(&self, g: Gen) -> (Gen, &[u32]) {
        let (x, c) = &self.origin[g.dim()][g.index()];
        (*x, c)
    }

    /// Barycenter vertex of a non-degenerate simplex of `S`.
    pub fn barycenter(&self, x: Gen) -> Gen {
        self.lookup[&(x, vec![full(x.dim())])]
    }

    /// The simplex of `sd S` given by a (possibly degenerate) simplex `x` of
    /// `S` and a chain in `[dim x]` ending at `[dim x]`, repetitions allowed.
    pub fn simplex_of(&self, x: SimplexRef, chain: &[u32]) -> SimplexRef {
        canonical(&self.lookup, x, chain)
    }

    fn face_of_origin(source: &SimplicialSet, x: Gen, chain: &[u32], j: usize) -> (SimplexRef, Vec<u32>) {
        let k = chain.len() - 1;
        if j < k {
            let mut c = chain.to_vec();
            c.remove(j);
            return (SimplexRef::nondegenerate(x), c);
        }
        let face = chain[k - 1];
        let y = source.apply_op(SimplexRef::nondegenerate(x), &positions(face));
        let c = chain[..k].iter().map(|&s| reindex(s, face)).collect();
        (y, c)
    }

    /// `sd f : sd S → sd T`.
    pub fn map(&self, f: &SimplicialMap, target: &Subdivision) -> Result<SimplicialMap> {
        let top = self.object.max_dim().min(target.object.max_dim()).min(f.defined_dim());
        let images = (0..=top)
            .map(|k| {
                self.object
                    .gens(k)
                    .map(|g| {
                        let (x, chain) = self.origin(g);
                        target.simplex_of(f.image(x), chain)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(self.object.clone(), target.object.clone(), images)
    }

    /// The last-vertex map `γ : sd S → S`.
    pub fn last_vertex(&self) -> SimplicialMap {
        let s = &self.source;
        let top = self.object.max_dim();
        let images = (0..=top)
            .map(|k| {
                self.object
                    .gens(k)
                    .map(|g| {
                        let (x, chain) = self.origin(g);
                        let phi: Vec<usize> = chain.iter().map(|&c| 31 - c.leading_zeros() as usize).collect();
                        s.apply_op(SimplexRef::nondegenerate(x), &phi)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new_unchecked(self.object.clone(), s.clone(), images)
    }
}

fn sd_impl(source: &Arc<SimplicialSet>, poset_faces: bool) -> Subdivision {
    let s = source;
    let trunc = s.max_dim();
    let mut b = SimplicialSetBuilder::new(trunc);
    let mut origin: Vec<Vec<(Gen, Vec<u32>)>> = vec![Vec::new(); trunc + 1];
    let mut lookup: HashMap<(Gen, Vec<u32>), Gen> = HashMap::new();
    let by_vertices: Option<HashMap<Vec<u32>, Gen>> = poset_faces.then(|| {
        s.all_gens()
            .map(|g| {
                let mut v = s.gen_vertices(g).to_vec();
                v.sort_unstable();
                (v, g)
            })
            .collect()
    });
    for k in 0..=trunc {
        for x in s.all_gens().filter(|x| x.dim() >= k) {
            let n = x.dim();
            for chain in chains_ending_at_top(n, k) {
                let faces: Vec<SimplexRef> = if k == 0 {
                    Vec::new()
                } else if let Some(index) = &by_vertices {
                    // nerve of the face poset: a chain of faces of x, named by vertex sets
                    let verts = s.gen_vertices(x);
                    (0..=k)
                        .map(|j| {
                            let mut c = chain.clone();
                            c.remove(j);
                            let top = *c.last().unwrap();
                            let mut key: Vec<u32> = positions(top).into_iter().map(|i| verts[i]).collect();
                            key.sort_unstable();
                            let y = index[&key];
                            let yv = s.gen_vertices(y);
                            let c: Vec<u32> = c
                                .iter()
                                .map(|&m| {
                                    positions(m).into_iter().fold(0u32, |acc, i| {
                                        acc | (1 << yv.iter().position(|&w| w == verts[i]).unwrap())
                                    })
                                })
                                .collect();
                            SimplexRef::nondegenerate(lookup[&(y, c)])
                        })
                        .collect()
                } else {
                    (0..=k)
                        .map(|j| {
                            let (y, c) = Subdivision::face_of_origin(s, x, &chain, j);
                            canonical(&lookup, y, &c)
                        })
                        .collect()
                };
                let name = if k == 0 {
                    format!("b({})", s.name(x))
                } else {
                    format!("b({}|{})", s.name(x), chain.iter().map(|&c| subset_label(c, n)).join(","))
                };
                let g = b.add(name, faces).expect("subdivision generator");
                origin[k].push((x, chain.clone()));
                lookup.insert((x, chain), g);
            }
        }
    }
    Subdivision { object: Arc::new(b.build_unvalidated()), source: s.clone(), origin, lookup }
}

fn canonical(lookup: &HashMap<(Gen, Vec<u32>), Gen>, x: SimplexRef, chain: &[u32]) -> SimplexRef {
    let theta = x.surjection();
    let pushed: Vec<u32> = chain
        .iter()
        .map(|&s| positions(s).into_iter().fold(0u32, |acc, i| acc | (1 << theta[i])))
        .collect();
    let mut distinct = Vec::with_capacity(pushed.len());
    let mut mask = 0u32;
    for (i, &s) in pushed.iter().enumerate() {
        if i > 0 && pushed[i - 1] == s {
            mask |= 1 << (i - 1);
        } else {
            distinct.push(s);
        }
    }
    SimplexRef { gen: lookup[&(x.gen, distinct)], mask }
}

/// `sd S`, truncated at `S.max_dim`. Complex-like inputs use the face-poset
/// nerve; others the general colimit description.
pub fn sd(s: &Arc<SimplicialSet>) -> Subdivision {
    sd_impl(s, s.is_complex_like())
}

/// `sd S` through the general colimit description, regardless of shape.
pub fn sd_generic(s: &Arc<SimplicialSet>) -> Subdivision {
    sd_impl(s, false)
}

/// `sd S` as the nerve of the face poset; `S` must be complex-like.
pub fn sd_poset(s: &Arc<SimplicialSet>) -> Result<Subdivision> {
    if !s.is_complex_like() {
        return Err(Error::Precondition("face-poset subdivision needs a complex-like set".into()));
    }
    Ok(sd_impl(s, true))
}

/// `[S, sd S, sd² S, …, sdⁱ S]`, each step with its origin data.
pub fn sd_tower(s: &Arc<SimplicialSet>, iterations: usize) -> Vec<Subdivision> {
    let mut out: Vec<Subdivision> = Vec::with_capacity(iterations);
    let mut cur = s.clone();
    for _ in 0..iterations {
        let next = sd(&cur);
        cur = next.object.clone();
        out.push(next);
    }
    out
}

/// `sdⁱ S`.
pub fn sd_iterate(s: &Arc<SimplicialSet>, iterations: usize) -> Arc<SimplicialSet> {
    sd_tower(s, iterations).last().map_or_else(|| s.clone(), |t| t.object.clone())
}

/// `sdⁱ f` along precomputed towers for the domain and codomain.
pub fn sd_map_iterate(f: &SimplicialMap, source: &[Subdivision], target: &[Subdivision]) -> Result<SimplicialMap> {
    let mut cur = f.clone();
    for (s, t) in source.iter().zip(target) {
        cur = s.map(&cur, t)?;
    }
    Ok(cur)
}

/// `γⁱ : sdⁱ S → S` along a tower.
pub fn last_vertex_iterate(tower: &[Subdivision]) -> Result<SimplicialMap> {
    let mut maps = tower.iter().rev().map(Subdivision::last_vertex);
    let mut cur = match maps.next() {
        Some(m) => m,
        None => return Err(Error::Precondition("empty subdivision tower".into())),
    };
    for m in maps {
        cur = cur.then(&m)?;
    }
    Ok(cur)
}

/// `sd^h Δ[1]` with its two end vertices.
pub fn subdivided_interval(h: usize, trunc: usize) -> Result<(SimplicialSet, Gen, Gen)> {
    let d1 = Arc::new(builders::standard(1, trunc.max(1))?);
    let tower = sd_tower(&d1, h);
    let mut e0 = Gen::new(0, 0);
    let mut e1 = Gen::new(0, 1);
    for step in &tower {
        e0 = step.barycenter(e0);
        e1 = step.barycenter(e1);
    }
    let object = tower.last().map_or_else(|| (*d1).clone(), |t| (*t.object).clone());
    Ok((object, e0, e1))
}

/// The section `Δ[n] → sd Δ[n]`, `i ↦ {0, …, i}`, of the last-vertex map.
pub fn section(sub: &Subdivision) -> Result<SimplicialMap> {
    let s = &sub.source;
    let n = s.top_dim().unwrap_or(0);
    let top = s.gens(n).next().ok_or_else(|| Error::Shape("empty set".into()))?;
    if s.counts().iter().sum::<usize>() != (1usize << (n + 1)) - 1 || s.count(n) != 1 {
        return Err(Error::Precondition("section is defined on standard simplices".into()));
    }
    let verts: Vec<u32> = (0..=n).map(|i| sub.barycenter(initial_face(s, top, i).gen).index).collect();
    SimplicialMap::from_vertex_map(s.clone(), sub.object.clone(), &verts)
}

fn initial_face(s: &SimplicialSet, top: Gen, i: usize) -> SimplexRef {
    s.apply_op(SimplexRef::nondegenerate(top), &(0..=i).collect::<Vec<_>>())
}

/// `T = cone(sd Δ[n−1])`, its sub-complex `T′` without the barycenter `c` of
/// the top simplex, the inclusion `i_T`, and the collapse `r_T` sending `c` to
/// the cone vertex `v`.
#[derive(Clone, Debug)]
pub struct ConeSubdivision {
    pub t: Arc<SimplicialSet>,
    pub t_prime: Arc<SimplicialSet>,
    pub i_t: SimplicialMap,
    pub r_t: SimplicialMap,
    pub c: Gen,
    pub v: Gen,
}

pub fn cone_subdivision(n: usize) -> Result<ConeSubdivision> {
    if n == 0 {
        return Err(Error::Shape("cone subdivision needs n ≥ 1".into()));
    }
    let face = Arc::new(builders::standard(n - 1, n)?);
    let sub = sd(&face);
    let top = face.gens(n - 1).next().expect("top simplex");
    let c_base = sub.barycenter(top);
    let cone = builders::cone(&sub.object, "v", n)?;
    let t = cone.object.clone();
    let c = t.gen_by_name(sub.object.name(c_base)).expect("barycenter");
    let v = cone.apex;
    let keep: Vec<Gen> = t.all_gens().filter(|&g| !t.gen_vertices(g).contains(&c.index)).collect();
    let (t_prime, i_t) = generated_subset(&t, keep)?;
    let vertex_map: Vec<u32> = t
        .gens(0)
        .map(|g| {
            let target = if g == c { v } else { g };
            t_prime.gen_by_name(t.name(target)).expect("vertex of T′").index
        })
        .collect();
    let r_t = SimplicialMap::from_vertex_map(t.clone(), t_prime.clone(), &vertex_map)?;
    Ok(ConeSubdivision { t, t_prime, i_t, r_t, c, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary, standard};
    use crate::homology;

    fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(s)
    }

    #[test]
    fn sd_counts() {
        let d1 = arc(standard(1, 1).unwrap());
        assert_eq!(sd(&d1).object.counts(), vec![3, 2]);
        let d2 = arc(standard(2, 2).unwrap());
        assert_eq!(sd(&d2).object.counts(), vec![7, 12, 6]);
        let bd = arc(boundary(2, 2).unwrap());
        let s = sd(&bd);
        assert_eq!(s.object.counts(), vec![6, 6, 0]);
        assert_eq!(homology::homology(&s.object, 1).unwrap().betti(), vec![1, 1]);
    }

    #[test]
    fn chains_of_subsets_oracle() {
        // number of chains ending at [n] with k+1 members is k! S(n+1, k+1) ... counted by brute force
        for n in 0..4usize {
            for k in 0..=n {
                let sets: Vec<u32> = (1..=full(n)).collect();
                let brute = sets
                    .iter()
                    .copied()
                    .combinations(k)
                    .flat_map(|c| c.into_iter().permutations(k).collect::<Vec<_>>())
                    .filter(|c| {
                        let mut all = c.clone();
                        all.push(full(n));
                        all.windows(2).all(|w| w[0] & w[1] == w[0] && w[0] != w[1])
                    })
                    .count();
                assert_eq!(chains_ending_at_top(n, k).len(), brute, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn generic_and_poset_paths_agree() {
        for s in [standard(2, 2).unwrap(), boundary(3, 3).unwrap(), builders::horn(3, 1, 3).unwrap()] {
            let s = arc(s);
            let a = sd_generic(&s);
            let b = sd_poset(&s).unwrap();
            assert_eq!(*a.object, *b.object);
            assert!(a.object.validate().is_empty());
        }
    }

    #[test]
    fn sd_of_quotient_is_valid() {
        let d = arc(builders::quotient_d(2).unwrap());
        let s = sd(&d);
        assert!(s.object.validate().is_empty());
        assert_eq!(homology::homology(&s.object, 1).unwrap().betti(), vec![1, 0]);
    }

    #[test]
    fn last_vertex_values() {
        let d2 = arc(standard(2, 2).unwrap());
        let s = sd(&d2);
        let g = s.last_vertex();
        assert!(g.validate().is_empty());
        let top = s.object.gen_by_name("b(e012)").unwrap();
        assert_eq!(d2.name(g.image(top).gen), "v2");
        let d1 = arc(standard(1, 1).unwrap());
        let s1 = sd(&d1);
        let g1 = s1.last_vertex();
        assert_eq!(d1.name(g1.image(s1.object.gen_by_name("b(e01)").unwrap()).gen), "v1");
    }

    #[test]
    fn last_vertex_is_natural() {
        let d1 = arc(standard(1, 2).unwrap());
        let d2 = arc(standard(2, 2).unwrap());
        let e = SimplicialMap::from_vertex_map(d1.clone(), d2.clone(), &[0, 1]).unwrap();
        let (s1, s2) = (sd(&d1), sd(&d2));
        let left = s1.map(&e, &s2).unwrap().then(&s2.last_vertex()).unwrap();
        let right = s1.last_vertex().then(&e).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn section_of_last_vertex() {
        for n in 0..=3 {
            let d = arc(standard(n, n).unwrap());
            let s = sd(&d);
            let sec = section(&s).unwrap();
            assert_eq!(sec.then(&s.last_vertex()).unwrap(), SimplicialMap::identity(d));
        }
    }

    #[test]
    fn top_simplex_counts() {
        for n in 1..=3usize {
            let d = arc(standard(n, n).unwrap());
            let fact: usize = (1..=n + 1).product();
            let s1 = sd_iterate(&d, 1);
            let s2 = sd_iterate(&d, 2);
            assert_eq!(s1.count(n), fact);
            assert_eq!(s2.count(n), fact * fact);
        }
    }

    #[test]
    fn cone_subdivision_small() {
        let b = cone_subdivision(2).unwrap();
        assert_eq!(b.t.counts(), vec![4, 5, 2]);
        assert_eq!(b.t_prime.counts(), vec![3, 2, 0]);
        assert_eq!(b.i_t.then(&b.r_t).unwrap(), SimplicialMap::identity(b.t_prime.clone()));
        let b3 = cone_subdivision(3).unwrap();
        assert_eq!(b3.t.count(0), 8);
        assert!(cone_subdivision(0).is_err());
    }

    #[test]
    fn interval_ends() {
        let (i, e0, e1) = subdivided_interval(2, 1).unwrap();
        assert_eq!(i.counts(), vec![5, 4]);
        assert_eq!(i.name(e0), "b(b(v0))");
        assert_eq!(i.name(e1), "b(b(v1))");
    }
}
