//! Sequences of elementary expansions: each step attaches one simplex along
//! a horn, adding the simplex and exactly one of its faces.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::format::Container;
use crate::map::SimplicialMap;
use crate::search::SearchOutcome;
use crate::simplex::Gen;
use crate::sset::SimplicialSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    /// The attached simplex, a generator of the larger set.
    pub simplex: Gen,
    /// Index of its free face.
    pub face: usize,
}

#[derive(Clone, Debug)]
pub struct ExpansionSequence {
    /// `A ↪ B`.
    pub inclusion: SimplicialMap,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub accepted: bool,
    /// Step index (or the step count, for an incomplete sequence) and reason.
    pub failure: Option<(usize, String)>,
}

fn check_pair(inc: &SimplicialMap) -> Result<()> {
    if !inc.is_monomorphism() {
        return Err(Error::Precondition("expansions need a subcomplex inclusion".into()));
    }
    if !inc.domain().is_complex_like() || !inc.codomain().is_complex_like() {
        return Err(Error::Precondition("expansions need complex-like sets".into()));
    }
    Ok(())
}

struct State<'a> {
    b: &'a SimplicialSet,
    present: Vec<Vec<bool>>,
    missing: Vec<Vec<u32>>,
    cofaces: Vec<Vec<Vec<(Gen, usize)>>>,
    /// `(Reverse(dim), name, face, simplex)`
    candidates: BTreeSet<(Reverse<usize>, String, usize, Gen)>,
}

impl<'a> State<'a> {
    fn new(inc: &'a SimplicialMap) -> Self {
        let b: &SimplicialSet = inc.codomain();
        let d = b.max_dim();
        let mut present: Vec<Vec<bool>> = (0..=d).map(|k| vec![false; b.count(k)]).collect();
        for k in 0..=inc.defined_dim() {
            for g in inc.domain().gens(k) {
                let y = inc.image(g).gen;
                present[y.dim()][y.index()] = true;
            }
        }
        let mut cofaces: Vec<Vec<Vec<(Gen, usize)>>> = (0..=d).map(|k| vec![Vec::new(); b.count(k)]).collect();
        let mut missing: Vec<Vec<u32>> = (0..=d).map(|k| vec![0; b.count(k)]).collect();
        for k in 1..=d {
            for g in b.gens(k) {
                for (j, f) in b.gen_faces(g).iter().enumerate() {
                    cofaces[k - 1][f.gen.index()].push((g, j));
                    if !present[k - 1][f.gen.index()] {
                        missing[k][g.index()] += 1;
                    }
                }
            }
        }
        let mut s = State { b, present, missing, cofaces, candidates: BTreeSet::new() };
        for g in b.all_gens() {
            s.refresh(g);
        }
        s
    }

    fn is_present(&self, g: Gen) -> bool {
        self.present[g.dim()][g.index()]
    }

    fn key(&self, g: Gen, face: usize) -> (Reverse<usize>, String, usize, Gen) {
        (Reverse(g.dim()), self.b.name(g).to_string(), face, g)
    }

    /// Recomputes whether `g` can be attached, and along which face.
    fn refresh(&mut self, g: Gen) {
        if g.dim() == 0 {
            return;
        }
        for j in 0..=g.dim() {
            self.candidates.remove(&self.key(g, j));
        }
        if self.is_present(g) || self.missing[g.dim()][g.index()] != 1 {
            return;
        }
        let j = self.b.gen_faces(g).iter().position(|f| !self.is_present(f.gen)).expect("missing face");
        self.candidates.insert(self.key(g, j));
    }

    fn set(&mut self, x: Gen, on: bool) {
        self.present[x.dim()][x.index()] = on;
        let cofaces = self.cofaces[x.dim()][x.index()].clone();
        for (c, _) in &cofaces {
            let m = &mut self.missing[c.dim()][c.index()];
            if on {
                *m -= 1;
            } else {
                *m += 1;
            }
        }
        self.refresh(x);
        for (c, _) in cofaces {
            self.refresh(c);
        }
    }

    fn apply(&mut self, s: Step) {
        let face = self.b.gen_faces(s.simplex)[s.face].gen;
        self.set(face, true);
        self.set(s.simplex, true);
    }

    fn undo(&mut self, s: Step) {
        let face = self.b.gen_faces(s.simplex)[s.face].gen;
        self.set(s.simplex, false);
        self.set(face, false);
    }

    fn complete(&self) -> bool {
        self.present.iter().all(|l| l.iter().all(|&p| p))
    }
}

/// Depth-first search for an expansion from `A` to `B`, attaching the highest
/// dimensional simplex first and breaking ties by name, then face index.
pub fn find_expansion(inc: &SimplicialMap, budget: u64) -> Result<SearchOutcome<ExpansionSequence>> {
    check_pair(inc)?;
    let mut state = State::new(inc);
    let remaining: usize = state.present.iter().map(|l| l.iter().filter(|&&p| !p).count()).sum();
    if remaining % 2 == 1 {
        return Ok(SearchOutcome::Exhausted);
    }
    let mut frames: Vec<(Vec<Step>, usize)> = Vec::new();
    let mut path: Vec<Step> = Vec::new();
    let mut nodes = 0u64;
    let snapshot = |s: &State| s.candidates.iter().map(|&(_, _, face, simplex)| Step { simplex, face }).collect::<Vec<_>>();
    frames.push((snapshot(&state), 0));
    loop {
        if state.complete() {
            return Ok(SearchOutcome::Found(ExpansionSequence { inclusion: inc.clone(), steps: path }));
        }
        let Some((options, next)) = frames.last_mut() else {
            return Ok(SearchOutcome::Exhausted);
        };
        if *next >= options.len() {
            frames.pop();
            match path.pop() {
                Some(s) => state.undo(s),
                None => return Ok(SearchOutcome::Exhausted),
            }
            continue;
        }
        let step = options[*next];
        *next += 1;
        nodes += 1;
        if nodes > budget {
            return Ok(SearchOutcome::BudgetExceeded);
        }
        state.apply(step);
        path.push(step);
        frames.push((snapshot(&state), 0));
    }
}

/// Replays `seq` from `A`, reporting the first step that is not an
/// elementary expansion, or a sequence that stops short of `B`.
pub fn verify_expansion(seq: &ExpansionSequence) -> ExpansionReport {
    let fail = |i: usize, why: String| ExpansionReport { accepted: false, failure: Some((i, why)) };
    if let Err(e) = check_pair(&seq.inclusion) {
        return fail(0, e.to_string());
    }
    let b = seq.inclusion.codomain();
    let mut state = State::new(&seq.inclusion);
    for (i, s) in seq.steps.iter().enumerate() {
        let g = s.simplex;
        if g.dim() == 0 || g.dim() > b.max_dim() || g.index() >= b.count(g.dim()) || s.face > g.dim() {
            return fail(i, "no such simplex or face".into());
        }
        let name = b.name(g);
        if state.is_present(g) {
            return fail(i, format!("`{name}` is already present"));
        }
        let faces = b.gen_faces(g);
        if faces[s.face].is_degenerate() {
            return fail(i, format!("face d{} of `{name}` is degenerate", s.face));
        }
        if state.is_present(faces[s.face].gen) {
            return fail(i, format!("face d{} of `{name}` is already present", s.face));
        }
        if let Some(j) = (0..faces.len()).find(|&j| j != s.face && !state.is_present(faces[j].gen)) {
            return fail(i, format!("face d{j} of `{name}` is missing"));
        }
        state.apply(*s);
    }
    if !state.complete() {
        return fail(seq.steps.len(), "the sequence does not reach the larger set".into());
    }
    ExpansionReport { accepted: true, failure: None }
}

impl ExpansionSequence {
    pub fn subset(&self) -> &Arc<SimplicialSet> {
        self.inclusion.domain()
    }

    pub fn superset(&self) -> &Arc<SimplicialSet> {
        self.inclusion.codomain()
    }

    /// `name face` per step.
    pub fn step_lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| format!("{} {}", self.superset().name(s.simplex), s.face)).collect()
    }

    pub fn to_container(&self) -> Container {
        let mut c = Container::new("EXPANSION");
        c.add_set("A", self.subset().clone());
        c.add_set("B", self.superset().clone());
        c.add_map("i", "A", "B", self.inclusion.clone());
        for line in self.step_lines() {
            c.add_meta("step", line);
        }
        c
    }

    pub fn from_container(c: &Container) -> Result<Self> {
        let inclusion = c.map("i").cloned().ok_or_else(|| Error::Invalid("expansion lacks the map `i`".into()))?;
        let b = inclusion.codomain().clone();
        let mut steps = Vec::new();
        for (k, v) in &c.meta {
            if k != "step" {
                continue;
            }
            let (name, face) = v.rsplit_once(' ').ok_or_else(|| Error::Invalid(format!("bad step `{v}`")))?;
            let simplex = b.gen_by_name(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
            let face = face.parse().map_err(|_| Error::Invalid(format!("bad face index in `{v}`")))?;
            steps.push(Step { simplex, face });
        }
        Ok(ExpansionSequence { inclusion, steps })
    }
}
