//! Backtracking search for simplicial maps `K → X`.
//!
//! Generators of `K` are assigned in a fixed order: prescribed generators
//! first, then free vertices in breadth-first order from the prescribed ones,
//! then free higher generators in attachment order (see [`DomainPlan`]). A generator's candidates are the
//! simplices of `X` with the required faces, tried in order of canonical text.
//! "Least" solutions are least for this order.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{mask_of_surjection, Gen, SimplexRef};
use crate::sset::SimplicialSet;

/// Candidate tables for a fixed target.
pub struct TargetIndex {
    set: Arc<SimplicialSet>,
    top: usize,
    vertices: Vec<SimplexRef>,
    by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
    tuples: Vec<HashSet<Vec<u32>>>,
}

impl TargetIndex {
    /// Indexes all simplices of `set` in dimensions `0..=top`.
    pub fn new(set: Arc<SimplicialSet>, top: usize) -> Result<Self> {
        if top > set.max_dim() {
            return Err(Error::TruncationInsufficient { needed: top, have: set.max_dim() });
        }
        let vertices = set.enumerate_simplices(0)?;
        let mut by_faces = vec![HashMap::new()];
        let mut tuples = vec![vertices.iter().map(|&v| vec![v.gen.index]).collect::<HashSet<_>>()];
        for k in 1..=top {
            let mut table: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            let mut seen = HashSet::new();
            for y in set.enumerate_simplices(k)? {
                let faces: Vec<SimplexRef> = (0..=k).map(|j| set.face_of(y, j)).collect();
                table.entry(faces).or_default().push(y);
                seen.insert(set.vertices_of(y));
            }
            by_faces.push(table);
            tuples.push(seen);
        }
        Ok(TargetIndex { set, top, vertices, by_faces, tuples })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Simplices with the given faces, in canonical order.
    pub fn with_faces(&self, faces: &[SimplexRef]) -> &[SimplexRef] {
        let k = faces.len() - 1;
        self.by_faces.get(k).and_then(|t| t.get(faces)).map_or(&[], |v| v.as_slice())
    }

    pub fn realizable(&self, tuple: &[u32]) -> bool {
        self.tuples.get(tuple.len() - 1).is_some_and(|t| t.contains(tuple))
    }
}

/// Free generators of positive dimension, each placed once its faces are:
/// highest dimension first, then the one whose least complete coface misses
/// the fewest faces, then generator order. On shellable domains this attaches
/// simplices along horns, so Kan targets extend without backtracking.
fn attachment_order(domain: &SimplicialSet, placed: &HashSet<Gen>) -> Vec<Gen> {
    let free: Vec<Gen> = domain.all_gens().filter(|g| g.dim() > 0 && !placed.contains(g)).collect();
    let pos: HashMap<Gen, usize> = free.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let faces: Vec<Vec<usize>> = free
        .iter()
        .map(|&g| {
            let mut f: Vec<usize> = domain.gen_faces(g).iter().filter_map(|f| pos.get(&f.gen).copied()).collect();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); free.len()];
    for (h, fs) in faces.iter().enumerate() {
        for &f in fs {
            cofaces[f].push(h);
        }
    }
    let mut missing: Vec<usize> = faces.iter().map(|f| f.len()).collect();
    type Key = (Reverse<usize>, usize, Gen, usize);
    let key = |i: usize, missing: &[usize]| -> Key {
        let best = cofaces[i].iter().map(|&h| missing[h]).min().unwrap_or(usize::MAX);
        (Reverse(free[i].dim()), best, free[i], i)
    };
    let mut ready: BTreeSet<Key> = BTreeSet::new();
    let mut keys: Vec<Option<Key>> = vec![None; free.len()];
    for i in 0..free.len() {
        if missing[i] == 0 {
            let k = key(i, &missing);
            ready.insert(k);
            keys[i] = Some(k);
        }
    }
    let mut order = Vec::with_capacity(free.len());
    while let Some(k) = ready.pop_first() {
        let i = k.3;
        keys[i] = None;
        order.push(free[i]);
        for &h in &cofaces[i] {
            missing[h] -= 1;
            if missing[h] == 0 {
                let kh = key(h, &missing);
                ready.insert(kh);
                keys[h] = Some(kh);
            }
            for &f in &faces[h] {
                if let Some(old) = keys[f] {
                    ready.remove(&old);
                    let new = key(f, &missing);
                    ready.insert(new);
                    keys[f] = Some(new);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), free.len());
    order
}

/// Assignment order and forward checks for a domain and a set of prescribed generators.
pub struct DomainPlan {
    domain: Arc<SimplicialSet>,
    order: Vec<Gen>,
    /// simplices whose vertex tuple is checked right after a vertex is assigned
    vertex_checks: HashMap<Gen, Vec<Gen>>,
    /// cofaces whose candidate set is checked right after a generator is assigned
    coface_checks: HashMap<Gen, Vec<Gen>>,
}

impl DomainPlan {
    pub fn new(domain: Arc<SimplicialSet>, prescribed: &[Gen]) -> Result<Self> {
        let pset: HashSet<Gen> = prescribed.iter().copied().collect();
        for &g in prescribed {
            if domain.gen_faces(g).iter().any(|f| !pset.contains(&f.gen)) {
                return Err(Error::Precondition(format!(
                    "prescribed generator `{}` has a free face",
                    domain.name(g)
                )));
            }
        }
        let mut order: Vec<Gen> = domain.all_gens().filter(|g| pset.contains(g)).collect();
        // free vertices, breadth first from what is already placed
        let nv = domain.count(0);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        if domain.max_dim() >= 1 {
            for e in domain.gens(1) {
                let v = domain.gen_vertices(e);
                let (a, b) = (v[0] as usize, v[1] as usize);
                if a != b {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut placed = vec![false; nv];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for g in &order {
            if g.dim() == 0 {
                placed[g.index()] = true;
                queue.push_back(g.index());
            }
        }
        let mut free_vertices = Vec::new();
        let mut next_root = 0;
        loop {
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !placed[w] {
                        placed[w] = true;
                        free_vertices.push(Gen::new(0, w));
                        queue.push_back(w);
                    }
                }
            }
            while next_root < nv && placed[next_root] {
                next_root += 1;
            }
            if next_root == nv {
                break;
            }
            placed[next_root] = true;
            free_vertices.push(Gen::new(0, next_root));
            queue.push_back(next_root);
        }
        order.extend(free_vertices);
        let placed: HashSet<Gen> = order.iter().copied().collect();
        order.extend(attachment_order(&domain, &placed));
        let position: HashMap<Gen, usize> = order.iter().enumerate().map(|(i, &g)| (g, i)).collect();

        let mut vertex_checks: HashMap<Gen, Vec<Gen>> = HashMap::new();
        let mut coface_checks: HashMap<Gen, Vec<Gen>> = HashMap::new();
        for g in domain.all_gens().filter(|g| g.dim() > 0) {
            let last_vertex = domain
                .gen_vertices(g)
                .iter()
                .map(|&v| Gen::new(0, v as usize))
                .max_by_key(|v| position[v])
                .expect("vertex");
            vertex_checks.entry(last_vertex).or_default().push(g);
            let last_face = domain.gen_faces(g).iter().map(|f| f.gen).max_by_key(|f| position[f]).expect("face");
            if last_face.dim() + 1 == g.dim() && position[&last_face] < position[&g] {
                coface_checks.entry(last_face).or_default().push(g);
            }
        }
        Ok(DomainPlan { domain, order, vertex_checks, coface_checks })
    }

    pub fn domain(&self) -> &Arc<SimplicialSet> {
        &self.domain
    }
}

/// Restriction of candidates to those lying over a given map: `f(y) = bottom(g)`.
#[derive(Clone, Copy)]
pub struct Over<'a> {
    pub f: &'a SimplicialMap,
    pub bottom: &'a SimplicialMap,
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Exhausted,
    BudgetExceeded,
}

/// One search instance: plan, target, prescribed values and options.
pub struct Search<'a> {
    pub plan: &'a DomainPlan,
    pub target: &'a TargetIndex,
    pub prescribed: &'a HashMap<Gen, SimplexRef>,
    pub over: Option<Over<'a>>,
    /// Only non-degenerate, pairwise distinct images (used for isomorphisms).
    pub injective: bool,
    pub budget: u64,
}

struct State {
    images: Vec<Vec<Option<SimplexRef>>>,
    used: HashSet<Gen>,
}

impl State {
    fn image(&self, x: SimplexRef) -> Option<SimplexRef> {
        let y = self.images[x.gen.dim()][x.gen.index()]?;
        if x.mask == 0 {
            return Some(y);
        }
        if y.mask == 0 {
            return Some(SimplexRef { gen: y.gen, mask: x.mask });
        }
        let theta = x.surjection();
        let psi = y.surjection();
        let comp: Vec<usize> = theta.iter().map(|&t| psi[t]).collect();
        Some(SimplexRef { gen: y.gen, mask: mask_of_surjection(&comp) })
    }
}

impl<'a> Search<'a> {
    fn check_setup(&self) -> Result<()> {
        let d = &self.plan.domain;
        if let Some(top) = d.top_dim() {
            if top > self.target.top {
                return Err(Error::TruncationInsufficient { needed: top, have: self.target.top });
            }
        }
        Ok(())
    }

    fn candidates(&self, st: &State, g: Gen) -> Vec<SimplexRef> {
        let d = &self.plan.domain;
        let base: Vec<SimplexRef> = if g.dim() == 0 {
            self.target.vertices.clone()
        } else {
            let faces: Vec<SimplexRef> = d.gen_faces(g).iter().map(|&f| st.image(f).expect("face assigned")).collect();
            self.target.with_faces(&faces).to_vec()
        };
        let mut out: Vec<SimplexRef> = match self.over {
            Some(o) => {
                let want = o.bottom.image(g);
                base.into_iter().filter(|&y| o.f.apply(y) == want).collect()
            }
            None => base,
        };
        if self.injective {
            out.retain(|y| y.mask == 0 && !st.used.contains(&y.gen));
        }
        if let Some(&p) = self.prescribed.get(&g) {
            out.retain(|&y| y == p);
        }
        out
    }

    fn forward_ok(&self, st: &State, g: Gen) -> bool {
        let d = &self.plan.domain;
        if let Some(list) = self.plan.vertex_checks.get(&g) {
            for &s in list {
                let tuple: Vec<u32> = d
                    .gen_vertices(s)
                    .iter()
                    .map(|&v| st.images[0][v as usize].expect("vertex assigned").gen.index)
                    .collect();
                if !self.target.realizable(&tuple) {
                    return false;
                }
            }
        }
        if let Some(list) = self.plan.coface_checks.get(&g) {
            for &h in list {
                let faces: Vec<SimplexRef> = d.gen_faces(h).iter().map(|&f| st.image(f).expect("assigned")).collect();
                let cands = self.target.with_faces(&faces);
                let ok = match self.over {
                    Some(o) => {
                        let want = o.bottom.image(h);
                        cands.iter().any(|&y| o.f.apply(y) == want)
                    }
                    None => !cands.is_empty(),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Runs the search, handing each solution to `visit`; stops when it returns false.
    fn run(&self, mut visit: impl FnMut(&State) -> bool) -> Result<SearchOutcome<()>> {
        self.check_setup()?;
        let d = &self.plan.domain;
        let mut st = State {
            images: (0..=d.max_dim()).map(|k| vec![None; d.count(k)]).collect(),
            used: HashSet::new(),
        };
        let order = &self.plan.order;
        let n = order.len();
        let mut found_any = false;
        if n == 0 {
            visit(&st);
            return Ok(SearchOutcome::Found(()));
        }
        let mut nodes: u64 = 0;
        let mut frames: Vec<(Vec<SimplexRef>, usize)> = vec![(self.candidates(&st, order[0]), 0)];
        while !frames.is_empty() {
            let depth = frames.len() - 1;
            let frame = &mut frames[depth];
            let g = order[depth];
            if let Some(prev) = st.images[g.dim()][g.index()].take() {
                st.used.remove(&prev.gen);
            }
            if frame.1 >= frame.0.len() {
                frames.pop();
                continue;
            }
            let y = frame.0[frame.1];
            frame.1 += 1;
            nodes += 1;
            if nodes > self.budget {
                return Ok(SearchOutcome::BudgetExceeded);
            }
            st.images[g.dim()][g.index()] = Some(y);
            if self.injective {
                st.used.insert(y.gen);
            }
            if !self.forward_ok(&st, g) {
                continue;
            }
            if depth + 1 == n {
                found_any = true;
                if !visit(&st) {
                    return Ok(SearchOutcome::Found(()));
                }
                continue;
            }
            let next = self.candidates(&st, order[depth + 1]);
            frames.push((next, 0));
        }
        Ok(if found_any { SearchOutcome::Found(()) } else { SearchOutcome::Exhausted })
    }

    fn to_map(&self, st: &State) -> SimplicialMap {
        let images = st.images.iter().map(|l| l.iter().map(|y| y.expect("complete")).collect()).collect();
        SimplicialMap::new_unchecked(self.plan.domain.clone(), self.target.set.clone(), images)
    }

    /// The least solution, if any.
    pub fn first(&self) -> Result<SearchOutcome<SimplicialMap>> {
        let mut out = None;
        let r = self.run(|st| {
            out = Some(self.to_map(st));
            false
        })?;
        Ok(match (r, out) {
            (_, Some(m)) => SearchOutcome::Found(m),
            (SearchOutcome::BudgetExceeded, None) => SearchOutcome::BudgetExceeded,
            _ => SearchOutcome::Exhausted,
        })
    }

    /// All solutions in search order (at most `limit`); `BudgetExceeded` if the
    /// node budget ran out or the limit was hit before the search finished.
    pub fn all(&self, limit: usize) -> Result<SearchOutcome<Vec<SimplicialMap>>> {
        let mut out = Vec::new();
        let mut truncated = false;
        let r = self.run(|st| {
            if out.len() >= limit {
                truncated = true;
                return false;
            }
            out.push(self.to_map(st));
            true
        })?;
        Ok(match r {
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
            _ if truncated => SearchOutcome::BudgetExceeded,
            _ => SearchOutcome::Found(out),
        })
    }

    /// Number of solutions.
    pub fn count(&self) -> Result<SearchOutcome<usize>> {
        let mut c = 0usize;
        let r = self.run(|_| {
            c += 1;
            true
        })?;
        Ok(match r {
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
            _ => SearchOutcome::Found(c),
        })
    }
}

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// All maps `K → X` in search order.
pub fn all_maps(domain: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>) -> Result<Vec<SimplicialMap>> {
    let top = domain.top_dim().unwrap_or(0);
    let index = TargetIndex::new(target.clone(), top)?;
    let plan = DomainPlan::new(domain.clone(), &[])?;
    let prescribed = HashMap::new();
    let s = Search { plan: &plan, target: &index, prescribed: &prescribed, over: None, injective: false, budget: DEFAULT_BUDGET };
    match s.all(usize::MAX)? {
        SearchOutcome::Found(v) => Ok(v),
        _ => Err(Error::Precondition("search budget exhausted".into())),
    }
}

/// An isomorphism `S → T`, if one exists.
pub fn find_isomorphism(s: &Arc<SimplicialSet>, t: &Arc<SimplicialSet>) -> Result<Option<SimplicialMap>> {
    if s.counts() != t.counts() {
        return Ok(None);
    }
    let top = s.top_dim().unwrap_or(0);
    let index = TargetIndex::new(t.clone(), top)?;
    let plan = DomainPlan::new(s.clone(), &[])?;
    let prescribed = HashMap::new();
    let search = Search { plan: &plan, target: &index, prescribed: &prescribed, over: None, injective: true, budget: DEFAULT_BUDGET };
    Ok(match search.first()? {
        SearchOutcome::Found(m) => Some(m),
        _ => None,
    })
}
