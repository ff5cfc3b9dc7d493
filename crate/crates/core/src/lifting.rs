//! Lifting problems and the Kan, weak Kan and relative homotopy lifting checks.
//!
//! Every check quantifies over finitely many problems, bounded by explicit
//! parameters, and answers verified (to that bound), refuted (with a replayable
//! witness) or undecided (a search budget ran out). Problems are ordered by
//! their parameters, then by bottom map, then by top map, each in search
//! order; a refutation always reports the least failing problem.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::bisimp::{column, delta_embed, delta_map, diagonal, diagonal_map, level_map, row, BiRef, BiSimplicialMap};
use crate::builders::{self, mapping_cylinder, product, MappingCylinder, Product};
use crate::error::{Error, Result};
use crate::ex::{hom_enumerate_with_budget, LevelwiseHom};
use crate::format::Container;
use crate::homology::{induced_iso_check, pi0};
use crate::map::SimplicialMap;
use crate::search::{DomainPlan, Over, Search, SearchOutcome, TargetIndex, DEFAULT_BUDGET};
use crate::simplex::{Gen, SimplexRef};
use crate::sset::SimplicialSet;
use crate::subdivide::{self, sd_map_iterate, sd_tower};

/// A commutative square `f ∘ top = bottom ∘ i`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: SimplicialMap,
    pub f: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

fn same_set(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn agree(u: &SimplicialMap, v: &SimplicialMap) -> bool {
    let top = u.defined_dim().min(v.defined_dim());
    u.images()[..=top] == v.images()[..=top]
}

impl LiftingProblem {
    pub fn new(i: SimplicialMap, f: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        if !same_set(i.domain(), top.domain())
            || !same_set(i.codomain(), bottom.domain())
            || !same_set(top.codomain(), f.domain())
            || !same_set(f.codomain(), bottom.codomain())
        {
            return Err(Error::InvalidMap("lifting problem maps do not form a square".into()));
        }
        for m in [&i, &f, &top, &bottom] {
            if let Some(v) = m.validate().into_iter().next() {
                return Err(Error::InvalidMap(v));
            }
        }
        if !agree(&top.then(&f)?, &i.then(&bottom)?) {
            return Err(Error::InvalidMap("square does not commute".into()));
        }
        Ok(LiftingProblem { i, f, top, bottom })
    }
}

/// A lift with its vertical homotopy `H : A × I → X`, `I = sdʰ Δ[1]`, from
/// `top` at the end `end0` to `lift ∘ i` at `end1`.
#[derive(Clone, Debug)]
pub struct WeakLiftCertificate {
    pub lift: SimplicialMap,
    pub homotopy: SimplicialMap,
    pub product: Product,
    pub end0: Gen,
    pub end1: Gen,
}

fn at_end(prod: &Product, end: Gen) -> Result<SimplicialMap> {
    let a = prod.left.clone();
    let c = SimplicialMap::constant(a.clone(), prod.right.clone(), end.index());
    prod.pairing(&SimplicialMap::identity(a), &c)
}

impl WeakLiftCertificate {
    /// Every way in which the certificate fails to solve `p`; empty when valid.
    pub fn violations(&self, p: &LiftingProblem, vertex_constant: bool) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (what, m) in [("lift", &self.lift), ("homotopy", &self.homotopy)] {
            for v in m.validate() {
                out.push(format!("{what}: {v}"));
            }
        }
        if !agree(&self.lift.then(&p.f)?, &p.bottom) {
            out.push("f ∘ lift differs from bottom".into());
        }
        if !agree(&at_end(&self.product, self.end0)?.then(&self.homotopy)?, &p.top) {
            out.push("homotopy does not start at top".into());
        }
        if !agree(&at_end(&self.product, self.end1)?.then(&self.homotopy)?, &p.i.then(&self.lift)?) {
            out.push("homotopy does not end at lift ∘ i".into());
        }
        let vertical = self.product.proj_left.then(&p.i)?.then(&p.bottom)?;
        if !agree(&self.homotopy.then(&p.f)?, &vertical) {
            out.push("homotopy is not vertical".into());
        }
        if vertex_constant {
            let a = &self.product.left;
            let interval = &self.product.right;
            for v in a.gens(0) {
                let want = p.top.image(v);
                for k in 0..=interval.max_dim().min(1) {
                    for t in interval.gens(k) {
                        let mask = if k == 0 { 0 } else { 1 };
                        let x = self.product.pair(SimplexRef { gen: v, mask }, SimplexRef::nondegenerate(t));
                        if self.homotopy.apply(x) != (SimplexRef { gen: want.gen, mask }) {
                            out.push(format!("homotopy moves the vertex `{}`", a.name(v)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Three-valued result of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Verified,
    Refuted,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified-to-bound",
            Verdict::Refuted => "refuted",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a refutation points at.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A lifting problem against `sdⁱ Λ_k[n] → sdⁱ Δ[n]` with no (weak) solution.
    Horn { subdivision: usize, n: usize, k: usize, problem: LiftingProblem },
    /// A square `sdʲ ∂Δ[n] → sdʲ Δ[n]` with no relative homotopy lift.
    Boundary { subdivision: usize, n: usize, problem: LiftingProblem },
    /// Pullbacks over `Δ[m]` and over one of its vertices that are not
    /// homology equivalent.
    Rezk { m: usize, simplex: String, vertex: usize, detail: String },
}

/// Which search a witness was produced by, for replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Weak { homotopy_level: usize, vertex_constant: bool },
    Relative { homotopy_level: usize },
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub bound: String,
    pub mode: Option<Mode>,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
    /// Number of problems decided (informational).
    pub problems: u64,
}

impl CheckOutcome {
    fn new(verdict: Verdict, bound: String, mode: Option<Mode>) -> Self {
        CheckOutcome { verdict, bound, mode, witness: None, notes: Vec::new(), problems: 0 }
    }
}

/// Parameters shared by the checks.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Node budget for each individual search.
    pub budget: u64,
    /// Homotopies use `sdʰ Δ[1]` in place of `Δ[1]`.
    pub homotopy_level: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: DEFAULT_BUDGET, homotopy_level: 0 }
    }
}

/// Solves strict lifting problems along a fixed monomorphism `i : A → B`
/// into a fixed `X`.
pub struct StrictSolver {
    plan: DomainPlan,
    index: Arc<TargetIndex>,
    links: Vec<(Gen, Gen)>,
}

fn mono_links(i: &SimplicialMap) -> Result<Vec<(Gen, Gen)>> {
    if !i.is_monomorphism() {
        return Err(Error::Precondition("the left map must be a monomorphism".into()));
    }
    Ok(i.domain().all_gens().filter(|g| g.dim() <= i.defined_dim()).map(|a| (a, i.image(a).gen)).collect())
}

impl StrictSolver {
    pub fn new(i: &SimplicialMap, x: &Arc<SimplicialSet>) -> Result<Self> {
        let top = i.codomain().top_dim().unwrap_or(0);
        Self::with_index(i, Arc::new(TargetIndex::new(x.clone(), top)?))
    }

    pub fn with_index(i: &SimplicialMap, index: Arc<TargetIndex>) -> Result<Self> {
        let links = mono_links(i)?;
        let prescribed: Vec<Gen> = links.iter().map(|&(_, b)| b).collect();
        let plan = DomainPlan::new(i.codomain().clone(), &prescribed)?;
        Ok(StrictSolver { plan, index, links })
    }

    /// The least lift `B → X` with `lift ∘ i = top` and `f ∘ lift = bottom`.
    pub fn solve(&self, f: &SimplicialMap, top: &SimplicialMap, bottom: &SimplicialMap, budget: u64) -> Result<SearchOutcome<SimplicialMap>> {
        let prescribed: HashMap<Gen, SimplexRef> = self.links.iter().map(|&(a, b)| (b, top.image(a))).collect();
        Search { plan: &self.plan, target: &self.index, prescribed: &prescribed, over: Some(Over { f, bottom }), injective: false, budget }.first()
    }
}

pub fn solve_strict(p: &LiftingProblem, budget: u64) -> Result<SearchOutcome<SimplicialMap>> {
    StrictSolver::new(&p.i, p.f.domain())?.solve(&p.f, &p.top, &p.bottom, budget)
}

enum Fixed {
    Top(Gen),
    /// `top(v)` degenerated to dimension `k`
    TopVertex(Gen, usize),
}

/// Solves weak lifting problems along `i` into `X` by searching maps out of
/// the mapping cylinder. Strict lifts (with constant homotopy) are tried
/// first, so they are preferred whenever one exists.
pub struct WeakSolver {
    strict: StrictSolver,
    pub cylinder: MappingCylinder,
    plan: DomainPlan,
    index: Arc<TargetIndex>,
    fixed: Vec<(Gen, Fixed)>,
    vertex_constant: bool,
    /// The same problem with a one-step homotopy, tried first; its homotopies
    /// pull back along `A × I → A × Δ[1]`.
    coarse: Option<(Box<WeakSolver>, SimplicialMap)>,
}

impl WeakSolver {
    pub fn new(i: &SimplicialMap, x: &Arc<SimplicialSet>, homotopy_level: usize, vertex_constant: bool) -> Result<Self> {
        let cylinder = mapping_cylinder(i, homotopy_level)?;
        let top = cylinder.object.top_dim().unwrap_or(0);
        let index = Arc::new(TargetIndex::new(x.clone(), top)?);
        let strict_index = if i.codomain().top_dim().unwrap_or(0) <= top {
            index.clone()
        } else {
            Arc::new(TargetIndex::new(x.clone(), i.codomain().top_dim().unwrap_or(0))?)
        };
        let strict = StrictSolver::with_index(i, strict_index)?;
        let a = i.domain();
        let mut fixed: Vec<(Gen, Fixed)> = Vec::new();
        for g in a.all_gens().filter(|g| g.dim() <= cylinder.free_end.defined_dim()) {
            let y = cylinder.free_end.image(g);
            if y.is_degenerate() {
                return Err(Error::Invalid("free end of the cylinder is not embedded".into()));
            }
            fixed.push((y.gen, Fixed::Top(g)));
        }
        if vertex_constant {
            let prod = &cylinder.product;
            for v in a.gens(0) {
                for k in 0..=cylinder.interval.max_dim().min(1) {
                    for t in cylinder.interval.gens(k) {
                        let mask = if k == 0 { 0 } else { 1 };
                        let x = prod.pair(SimplexRef { gen: v, mask }, SimplexRef::nondegenerate(t));
                        let y = cylinder.from_product.apply(x);
                        if !y.is_degenerate() {
                            fixed.push((y.gen, Fixed::TopVertex(v, k)));
                        }
                    }
                }
            }
        }
        let mut gens: Vec<Gen> = fixed.iter().map(|&(g, _)| g).collect();
        gens.sort_unstable();
        gens.dedup();
        let plan = DomainPlan::new(cylinder.object.clone(), &gens)?;
        let coarse = if homotopy_level == 0 {
            None
        } else {
            let c = WeakSolver::new(i, x, 0, vertex_constant)?;
            let (fine, rough) = (&cylinder, &c.cylinder);
            let vm: Vec<u32> = fine
                .interval
                .gens(0)
                .map(|v| if v == fine.end0 { rough.end0.index } else { rough.end1.index })
                .collect();
            let squash = SimplicialMap::from_vertex_map(fine.interval.clone(), rough.interval.clone(), &vm)?;
            let pull = rough.product.product_map(&fine.product, &SimplicialMap::identity(a.clone()), &squash)?;
            Some((Box::new(c), pull))
        };
        Ok(WeakSolver { strict, cylinder, plan, index, fixed, vertex_constant, coarse })
    }

    fn constant_certificate(&self, top: &SimplicialMap, lift: SimplicialMap) -> Result<WeakLiftCertificate> {
        let prod = &self.cylinder.product;
        Ok(WeakLiftCertificate {
            lift,
            homotopy: prod.proj_left.then(top)?,
            product: prod.clone(),
            end0: self.cylinder.end0,
            end1: self.cylinder.end1,
        })
    }

    /// Strict lifts only.
    pub fn solve_strict(&self, f: &SimplicialMap, top: &SimplicialMap, bottom: &SimplicialMap, budget: u64) -> Result<SearchOutcome<SimplicialMap>> {
        self.strict.solve(f, top, bottom, budget)
    }

    pub fn solve(&self, f: &SimplicialMap, top: &SimplicialMap, bottom: &SimplicialMap, budget: u64) -> Result<SearchOutcome<WeakLiftCertificate>> {
        let strict = self.strict.solve(f, top, bottom, budget)?;
        if let SearchOutcome::Found(lift) = strict {
            return Ok(SearchOutcome::Found(self.constant_certificate(top, lift)?));
        }
        if let Some((c, pull)) = &self.coarse {
            if let SearchOutcome::Found(cert) = c.solve_cylinder(f, top, bottom, budget)? {
                return Ok(SearchOutcome::Found(WeakLiftCertificate {
                    lift: cert.lift,
                    homotopy: pull.then(&cert.homotopy)?,
                    product: self.cylinder.product.clone(),
                    end0: self.cylinder.end0,
                    end1: self.cylinder.end1,
                }));
            }
        }
        Ok(match self.solve_cylinder(f, top, bottom, budget)? {
            SearchOutcome::Exhausted if matches!(strict, SearchOutcome::BudgetExceeded) => SearchOutcome::BudgetExceeded,
            out => out,
        })
    }

    fn solve_cylinder(&self, f: &SimplicialMap, top: &SimplicialMap, bottom: &SimplicialMap, budget: u64) -> Result<SearchOutcome<WeakLiftCertificate>> {
        let mut prescribed: HashMap<Gen, SimplexRef> = HashMap::new();
        for (g, how) in &self.fixed {
            let value = match *how {
                Fixed::Top(a) => top.image(a),
                Fixed::TopVertex(v, k) => {
                    let y = top.image(v);
                    SimplexRef { gen: y.gen, mask: if k == 0 { 0 } else { 1 } }
                }
            };
            if let Some(old) = prescribed.insert(*g, value) {
                if old != value {
                    return Ok(SearchOutcome::Exhausted);
                }
            }
        }
        let over_bottom = self.cylinder.projection.then(bottom)?;
        let search = Search {
            plan: &self.plan,
            target: &self.index,
            prescribed: &prescribed,
            over: Some(Over { f, bottom: &over_bottom }),
            injective: false,
            budget,
        };
        let out = match search.first()? {
            SearchOutcome::Found(m) => SearchOutcome::Found(WeakLiftCertificate {
                lift: self.cylinder.inclusion_b.then(&m)?,
                homotopy: self.cylinder.from_product.then(&m)?,
                product: self.cylinder.product.clone(),
                end0: self.cylinder.end0,
                end1: self.cylinder.end1,
            }),
            SearchOutcome::Exhausted => SearchOutcome::Exhausted,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        };
        let _ = self.vertex_constant;
        Ok(out)
    }
}

pub fn solve_weak(p: &LiftingProblem, opts: CheckOptions, vertex_constant: bool) -> Result<SearchOutcome<WeakLiftCertificate>> {
    WeakSolver::new(&p.i, p.f.domain(), opts.homotopy_level, vertex_constant)?.solve(&p.f, &p.top, &p.bottom, opts.budget)
}

/// `sdⁱ Λ_k[n] → sdⁱ Δ[n]`, truncated at `n`, shared across calls.
pub fn subdivided_horn(n: usize, k: usize, i: usize) -> Result<SimplicialMap> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), SimplicialMap>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache").get(&(n, k, i)) {
        return Ok(m.clone());
    }
    let a = Arc::new(builders::horn(n, k, n)?);
    let b = Arc::new(builders::standard(n, n)?);
    let m = subdivide_inclusion(&a, &b, i)?;
    Ok(cache.lock().expect("cache").entry((n, k, i)).or_insert(m).clone())
}

/// `sdʲ ∂Δ[n] → sdʲ Δ[n]`, truncated at `n + 1`.
pub fn subdivided_boundary(n: usize, j: usize) -> Result<SimplicialMap> {
    let a = Arc::new(builders::boundary(n, n + 1)?);
    let b = Arc::new(builders::standard(n, n + 1)?);
    subdivide_inclusion(&a, &b, j)
}

fn subdivide_inclusion(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, i: usize) -> Result<SimplicialMap> {
    let inc = builders::inclusion(a, b)?;
    if i == 0 {
        return Ok(inc);
    }
    sd_map_iterate(&inc, &sd_tower(a, i), &sd_tower(b, i))
}

struct Family {
    problems: u64,
    refuted: Option<LiftingProblem>,
    undecided: bool,
}

/// Runs `solve` over every square from `inc` to `f`: bottoms in search order,
/// then tops over each bottom in search order.
fn run_family<S>(inc: &SimplicialMap, f: &SimplicialMap, budget: u64, solve: S) -> Result<Family>
where
    S: Fn(&SimplicialMap, &SimplicialMap) -> Result<SearchOutcome<()>> + Sync,
{
    let (a, b) = (inc.domain(), inc.codomain());
    let (x, y) = (f.domain(), f.codomain());
    let bottoms = hom_enumerate_with_budget(b, y, budget)?;
    let undecided = AtomicBool::new(!bottoms.complete);
    let counts: Vec<AtomicU64> = bottoms.maps.iter().map(|_| AtomicU64::new(0)).collect();
    let index = TargetIndex::new(x.clone(), a.top_dim().unwrap_or(0))?;
    let plan = DomainPlan::new(a.clone(), &[])?;
    let none = HashMap::new();
    let found = bottoms
        .maps
        .par_iter()
        .enumerate()
        .map(|(j, bottom)| -> Result<Option<(usize, LiftingProblem)>> {
            let restricted = inc.then(bottom)?;
            let search = Search { plan: &plan, target: &index, prescribed: &none, over: Some(Over { f, bottom: &restricted }), injective: false, budget };
            let tops = match search.all(usize::MAX)? {
                SearchOutcome::Found(v) => v,
                SearchOutcome::Exhausted => Vec::new(),
                SearchOutcome::BudgetExceeded => {
                    undecided.store(true, Ordering::Relaxed);
                    return Ok(None);
                }
            };
            for top in tops {
                counts[j].fetch_add(1, Ordering::Relaxed);
                match solve(&top, bottom)? {
                    SearchOutcome::Found(()) => {}
                    SearchOutcome::Exhausted => {
                        return Ok(Some((j, LiftingProblem { i: inc.clone(), f: f.clone(), top, bottom: bottom.clone() })));
                    }
                    SearchOutcome::BudgetExceeded => undecided.store(true, Ordering::Relaxed),
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    // Bottoms after the failing one may have been partly processed; they are
    // left out so the count does not depend on scheduling.
    let (last, refuted) = match found {
        Some(r) => {
            let (j, p) = r?.expect("found");
            (j + 1, Some(p))
        }
        None => (counts.len(), None),
    };
    let problems = counts[..last].iter().map(|c| c.load(Ordering::Relaxed)).sum();
    Ok(Family { problems, refuted, undecided: undecided.load(Ordering::Relaxed) })
}

fn need_trunc(s: &SimplicialSet, n: usize) -> Result<()> {
    if s.max_dim() < n {
        return Err(Error::TruncationInsufficient { needed: n, have: s.max_dim() });
    }
    Ok(())
}

fn terminal_of(x: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
    SimplicialMap::terminal(x.clone(), Arc::new(builders::point(x.max_dim())))
}

/// Strict lifting against every `Λ_k[n] → Δ[n]`, `1 ≤ n ≤ n_max`.
pub fn kan_fibration_check(f: &SimplicialMap, n_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    need_trunc(f.domain(), n_max)?;
    need_trunc(f.codomain(), n_max)?;
    let bound = format!("n_max={n_max}");
    let mut total = 0;
    let mut undecided = false;
    for n in 1..=n_max {
        for k in 0..=n {
            let inc = subdivided_horn(n, k, 0)?;
            let solver = StrictSolver::new(&inc, f.domain())?;
            let fam = run_family(&inc, f, opts.budget, |top, bottom| {
                Ok(match solver.solve(f, top, bottom, opts.budget)? {
                    SearchOutcome::Found(_) => SearchOutcome::Found(()),
                    SearchOutcome::Exhausted => SearchOutcome::Exhausted,
                    SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
                })
            })?;
            total += fam.problems;
            undecided |= fam.undecided;
            if let Some(problem) = fam.refuted {
                let mut out = CheckOutcome::new(Verdict::Refuted, bound, Some(Mode::Strict));
                out.witness = Some(Witness::Horn { subdivision: 0, n, k, problem });
                out.problems = total;
                return Ok(out);
            }
        }
    }
    let mut out = CheckOutcome::new(if undecided { Verdict::Undecided } else { Verdict::Verified }, bound, Some(Mode::Strict));
    out.problems = total;
    Ok(out)
}

pub fn kan_check(x: &Arc<SimplicialSet>, n_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    kan_fibration_check(&terminal_of(x)?, n_max, opts)
}

fn weak_check(f: &SimplicialMap, n_max: usize, i_max: usize, opts: CheckOptions, vertex_constant: bool) -> Result<CheckOutcome> {
    need_trunc(f.domain(), n_max)?;
    need_trunc(f.codomain(), n_max)?;
    let bound = format!("n_max={n_max} i_max={i_max} homotopy_level={}", opts.homotopy_level);
    let mode = Mode::Weak { homotopy_level: opts.homotopy_level, vertex_constant };
    let mut total = 0;
    let mut undecided = false;
    for i in 0..=i_max {
        for n in 1..=n_max {
            for k in 0..=n {
                let inc = subdivided_horn(n, k, i)?;
                let solver = WeakSolver::new(&inc, f.domain(), opts.homotopy_level, vertex_constant)?;
                let fam = run_family(&inc, f, opts.budget, |top, bottom| {
                    Ok(match solver.solve(f, top, bottom, opts.budget)? {
                        SearchOutcome::Found(_) => SearchOutcome::Found(()),
                        SearchOutcome::Exhausted => SearchOutcome::Exhausted,
                        SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
                    })
                })?;
                total += fam.problems;
                undecided |= fam.undecided;
                if let Some(problem) = fam.refuted {
                    let mut out = CheckOutcome::new(Verdict::Refuted, bound, Some(mode));
                    out.witness = Some(Witness::Horn { subdivision: i, n, k, problem });
                    out.problems = total;
                    if vertex_constant {
                        out.notes.push(VERTEX_CONSTANT_NOTE.into());
                    }
                    return Ok(out);
                }
            }
        }
    }
    let mut out = CheckOutcome::new(if undecided { Verdict::Undecided } else { Verdict::Verified }, bound, Some(mode));
    out.problems = total;
    if vertex_constant {
        out.notes.push(VERTEX_CONSTANT_NOTE.into());
    }
    Ok(out)
}

const VERTEX_CONSTANT_NOTE: &str = "homotopies are required to be constant on every vertex of the horn";

/// Weak lifting against every `sdⁱ Λ_k[n] → sdⁱ Δ[n]`, `i ≤ i_max`, `n ≤ n_max`.
pub fn weak_kan_fibration_check(f: &SimplicialMap, n_max: usize, i_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    weak_check(f, n_max, i_max, opts, false)
}

/// As `weak_kan_fibration_check` for `X → Δ[0]`, with homotopies constant on
/// the vertices of the horn.
pub fn weak_kan_complex_check(x: &Arc<SimplicialSet>, n_max: usize, i_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    weak_check(&terminal_of(x)?, n_max, i_max, opts, true)
}

/// Relative homotopy lifting for one boundary inclusion `inc : A → B` into `f`.
struct RelativeSolver {
    lifts: StrictSolver,
    /// search for `H : B × I → Y` with both ends and `A × I` prescribed
    plan: DomainPlan,
    index: Arc<TargetIndex>,
    end0: SimplicialMap,
    end1: SimplicialMap,
    side: SimplicialMap,
    side_product: Product,
    b: Arc<SimplicialSet>,
}

impl RelativeSolver {
    fn new(inc: &SimplicialMap, f: &SimplicialMap, level: usize) -> Result<Self> {
        let (a, b) = (inc.domain(), inc.codomain());
        let trunc = b.max_dim();
        let (interval, e0, e1) = subdivide::subdivided_interval(level, trunc)?;
        let interval = Arc::new(interval);
        let bi = product(b, &interval);
        let ai = product(a, &interval);
        let end0 = at_end(&bi, e0)?;
        let end1 = at_end(&bi, e1)?;
        let side = bi.product_map(&ai, inc, &SimplicialMap::identity(interval.clone()))?;
        let mut gens: Vec<Gen> = Vec::new();
        for m in [&end0, &end1, &side] {
            for level in m.images() {
                gens.extend(level.iter().filter(|y| !y.is_degenerate()).map(|y| y.gen));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let plan = DomainPlan::new(bi.object.clone(), &gens)?;
        let index = Arc::new(TargetIndex::new(f.codomain().clone(), bi.object.top_dim().unwrap_or(0))?);
        let lifts = StrictSolver::new(inc, f.domain())?;
        Ok(RelativeSolver { lifts, plan, index, end0, end1, side, side_product: ai, b: b.clone() })
    }

    fn solve(&self, inc: &SimplicialMap, f: &SimplicialMap, u: &SimplicialMap, v: &SimplicialMap, budget: u64) -> Result<SearchOutcome<()>> {
        let links = mono_links(inc)?;
        let prescribed_lift: HashMap<Gen, SimplexRef> = links.iter().map(|&(a, b)| (b, u.image(a))).collect();
        let lift_search = Search {
            plan: &self.lifts.plan,
            target: &self.lifts.index,
            prescribed: &prescribed_lift,
            over: None,
            injective: false,
            budget,
        };
        let lifts = match lift_search.all(usize::MAX)? {
            SearchOutcome::Found(v) => v,
            SearchOutcome::Exhausted => Vec::new(),
            SearchOutcome::BudgetExceeded => return Ok(SearchOutcome::BudgetExceeded),
        };
        let fu_side = self.side_product.proj_left.then(u)?.then(f)?;
        let mut undecided = false;
        for lift in lifts {
            let fl = lift.then(f)?;
            let mut prescribed: HashMap<Gen, SimplexRef> = HashMap::new();
            let mut consistent = true;
            let mut put = |g: SimplexRef, value: SimplexRef| {
                if g.is_degenerate() {
                    return;
                }
                if let Some(old) = prescribed.insert(g.gen, value) {
                    consistent &= old == value;
                }
            };
            for x in self.b.all_gens().filter(|g| g.dim() <= self.end0.defined_dim()) {
                put(self.end0.image(x), fl.image(x));
                put(self.end1.image(x), v.image(x));
            }
            for x in self.side_product.object.all_gens().filter(|g| g.dim() <= self.side.defined_dim()) {
                put(self.side.image(x), fu_side.image(x));
            }
            if !consistent {
                continue;
            }
            let search = Search { plan: &self.plan, target: &self.index, prescribed: &prescribed, over: None, injective: false, budget };
            match search.first()? {
                SearchOutcome::Found(_) => return Ok(SearchOutcome::Found(())),
                SearchOutcome::Exhausted => {}
                SearchOutcome::BudgetExceeded => undecided = true,
            }
        }
        Ok(if undecided { SearchOutcome::BudgetExceeded } else { SearchOutcome::Exhausted })
    }
}

/// Relative homotopy lifting against `sdʲ ∂Δ[n] → sdʲ Δ[n]`, `n ≤ n_max`:
/// every square has a lift fixing the boundary whose lower triangle commutes
/// up to a homotopy `sdʲ Δ[n] × sdʲ Δ[1] → Y` fixed on the boundary.
/// Both sides must pass `kan_check` to `n_max + 1`.
pub fn rhlp_check(f: &SimplicialMap, n_max: usize, sd_level: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    let kan_bound = n_max + 1;
    need_trunc(f.domain(), kan_bound)?;
    need_trunc(f.codomain(), kan_bound)?;
    for side in [f.domain(), f.codomain()] {
        if kan_check(side, kan_bound, opts)?.verdict != Verdict::Verified {
            return Err(Error::Precondition("RHLP requires Kan inputs".into()));
        }
    }
    let bound = format!("n_max={n_max} sd_level={sd_level}");
    let mode = Mode::Relative { homotopy_level: sd_level };
    let mut total = 0;
    let mut undecided = false;
    for n in 0..=n_max {
        let inc = subdivided_boundary(n, sd_level)?;
        let solver = RelativeSolver::new(&inc, f, sd_level)?;
        // squares: tops into X, then bottoms extending f ∘ top
        let tops = hom_enumerate_with_budget(inc.domain(), f.domain(), opts.budget)?;
        undecided |= !tops.complete;
        let bottoms_solver = StrictSolver::new(&inc, f.codomain())?;
        let id_y = SimplicialMap::identity(f.codomain().clone());
        let problems = AtomicU64::new(0);
        let any_undecided = AtomicBool::new(false);
        let found = tops
            .maps
            .par_iter()
            .map(|u| -> Result<Option<LiftingProblem>> {
                let fu = u.then(f)?;
                let links = mono_links(&inc)?;
                let prescribed: HashMap<Gen, SimplexRef> = links.iter().map(|&(a, b)| (b, fu.image(a))).collect();
                let search = Search {
                    plan: &bottoms_solver.plan,
                    target: &bottoms_solver.index,
                    prescribed: &prescribed,
                    over: None,
                    injective: false,
                    budget: opts.budget,
                };
                let bottoms = match search.all(usize::MAX)? {
                    SearchOutcome::Found(v) => v,
                    SearchOutcome::Exhausted => Vec::new(),
                    SearchOutcome::BudgetExceeded => {
                        any_undecided.store(true, Ordering::Relaxed);
                        return Ok(None);
                    }
                };
                let _ = &id_y;
                for v in bottoms {
                    problems.fetch_add(1, Ordering::Relaxed);
                    match solver.solve(&inc, f, u, &v, opts.budget)? {
                        SearchOutcome::Found(()) => {}
                        SearchOutcome::Exhausted => {
                            return Ok(Some(LiftingProblem { i: inc.clone(), f: f.clone(), top: u.clone(), bottom: v }))
                        }
                        SearchOutcome::BudgetExceeded => any_undecided.store(true, Ordering::Relaxed),
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        total += problems.load(Ordering::Relaxed);
        undecided |= any_undecided.load(Ordering::Relaxed);
        if let Some(r) = found {
            if let Some(problem) = r? {
                let mut out = CheckOutcome::new(Verdict::Refuted, bound, Some(mode));
                out.witness = Some(Witness::Boundary { subdivision: sd_level, n, problem });
                out.problems = total;
                return Ok(out);
            }
        }
    }
    let mut out = CheckOutcome::new(if undecided { Verdict::Undecided } else { Verdict::Verified }, bound, Some(mode));
    out.problems = total;
    Ok(out)
}

/// Whether a relative homotopy lift exists for one boundary square.
pub fn solve_relative(p: &LiftingProblem, homotopy_level: usize, budget: u64) -> Result<SearchOutcome<()>> {
    RelativeSolver::new(&p.i, &p.f, homotopy_level)?.solve(&p.i, &p.f, &p.top, &p.bottom, budget)
}

/// `X ×_Z Z^{Δ[1]} ×_Z Y`, the homotopy pullback of `f : X → Z` and
/// `g : Y → Z`; `Z` must pass `kan_check` to `kan_bound`.
pub fn ho_pullback(f: &SimplicialMap, g: &SimplicialMap, kan_bound: usize) -> Result<Arc<SimplicialSet>> {
    let z = f.codomain();
    if !same_set(z, g.codomain()) {
        return Err(Error::InvalidMap("homotopy pullback legs need a common codomain".into()));
    }
    if kan_check(z, kan_bound, CheckOptions::default())?.verdict != Verdict::Verified {
        return Err(Error::Precondition("the base of a homotopy pullback must be Kan".into()));
    }
    let d = f.defined_dim().min(g.defined_dim()).min(z.max_dim().saturating_sub(1));
    let paths = LevelwiseHom::paths(z, d)?;
    let ev0 = paths.evaluation(0)?.with_sets(paths.object.clone(), z.clone())?;
    let ev1 = paths.evaluation(1)?.with_sets(paths.object.clone(), z.clone())?;
    let first = builders::pullback(f, &ev0)?;
    let to_z = first.right.then(&ev1)?;
    Ok(builders::pullback(&to_z, g)?.object)
}

const REEDY_NOTE: &str = "bisimplicial input reduced through the diagonal";

/// `weak_kan_fibration_check` on the diagonal of a bisimplicial map.
pub fn weak_kan_fibration_check_bi(f: &BiSimplicialMap, n_max: usize, i_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    let (ds, dt) = (diagonal(f.domain())?, diagonal(f.codomain())?);
    let mut out = weak_kan_fibration_check(&diagonal_map(f, &ds, &dt)?, n_max, i_max, opts)?;
    out.notes.push(REEDY_NOTE.into());
    Ok(out)
}

/// Levelwise discrete, or every column a Kan fibration to its truncation.
fn rezk_precondition(f: &BiSimplicialMap, opts: CheckOptions) -> Result<std::result::Result<String, String>> {
    if f.domain().is_vertically_discrete() && f.codomain().is_vertically_discrete() {
        return Ok(Ok("levelwise discrete: strict pullbacks are homotopy pullbacks".into()));
    }
    let (hmax, vmax) = f.defined();
    for p in 0..=hmax {
        let (cs, ct) = (column(f.domain(), p)?, column(f.codomain(), p)?);
        let m = level_map(f, &cs, &ct)?;
        let out = kan_fibration_check(&m, vmax, opts)?;
        if out.verdict != Verdict::Verified {
            return Ok(Err(format!("column {p} is not verified to be a Kan fibration ({})", out.verdict)));
        }
    }
    Ok(Ok(format!("levelwise Kan fibration to bound {vmax}: strict pullbacks are homotopy pullbacks")))
}

/// For every `m ≤ m_max`, every `y ∈ Y_{m,0}` and every vertex of `Δ[m]`,
/// the pullback of the diagonal of `f` over that vertex must include into the
/// pullback over `Δ[m]` as a π₀ bijection and homology isomorphism through
/// one below the diagonal's truncation.
pub fn rezk_check(f: &BiSimplicialMap, m_max: usize, opts: CheckOptions) -> Result<CheckOutcome> {
    let bound = format!("m_max={m_max}");
    let note = match rezk_precondition(f, opts)? {
        Ok(note) => note,
        Err(why) => {
            let mut out = CheckOutcome::new(Verdict::Undecided, bound, None);
            out.notes.push(why);
            return Ok(out);
        }
    };
    let (ds, dt) = (diagonal(f.domain())?, diagonal(f.codomain())?);
    let df = diagonal_map(f, &ds, &dt)?;
    let d = df.defined_dim();
    if d < 1 || m_max > d {
        return Err(Error::TruncationInsufficient { needed: m_max.max(1), have: d });
    }
    let y = f.codomain();
    let bottom = row(y, 0)?;
    let point = Arc::new(builders::point(d));
    let mut problems = 0;
    for m in 0..=m_max {
        let simplex = Arc::new(builders::standard(m, d)?);
        for ym in bottom.object.enumerate_simplices(m)? {
            let base = bottom.bisimplex(ym.gen);
            let base = BiRef { hmask: ym.mask, ..base };
            let images: Vec<Vec<SimplexRef>> = (0..=d)
                .map(|k| {
                    simplex
                        .gens(k)
                        .map(|g| {
                            let verts: Vec<usize> = simplex.gen_vertices(g).iter().map(|&v| v as usize).collect();
                            dt.simplex_of(y.apply(base, &verts, &vec![0; verts.len()]))
                        })
                        .collect()
                })
                .collect();
            let over = SimplicialMap::new(simplex.clone(), dt.object.clone(), images)?;
            let whole = builders::pullback(&df, &over)?;
            for v in 0..=m {
                problems += 1;
                let corner = SimplicialMap::constant(point.clone(), simplex.clone(), v);
                let at = builders::pullback(&df, &corner.then(&over)?)?;
                let inc = whole.induced(&at.left, &at.right.then(&corner)?)?;
                let (a, b) = (pi0(&at.object).0, pi0(&whole.object).0);
                let detail = if a != b {
                    Some(format!("π₀ = {a} vs {b}"))
                } else {
                    induced_iso_check(&inc, d - 1)?.iter().position(|ok| !ok).map(|k| format!("H{k} is not an isomorphism"))
                };
                if let Some(detail) = detail {
                    let mut out = CheckOutcome::new(Verdict::Refuted, bound, None);
                    out.witness = Some(Witness::Rezk { m, simplex: bottom.object.ref_to_string(ym), vertex: v, detail });
                    out.notes.push(note);
                    out.problems = problems;
                    return Ok(out);
                }
            }
        }
    }
    let mut out = CheckOutcome::new(Verdict::Verified, bound, None);
    out.notes.push(note);
    out.problems = problems;
    Ok(out)
}

/// Serializes a horn or boundary witness for replay.
pub fn witness_container(outcome: &CheckOutcome) -> Option<Container> {
    let (problem, kind_meta) = match outcome.witness.as_ref()? {
        Witness::Horn { subdivision, n, k, problem } => {
            (problem, vec![("shape", "horn".to_string()), ("subdivision", subdivision.to_string()), ("n", n.to_string()), ("k", k.to_string())])
        }
        Witness::Boundary { subdivision, n, problem } => {
            (problem, vec![("shape", "boundary".to_string()), ("subdivision", subdivision.to_string()), ("n", n.to_string())])
        }
        Witness::Rezk { .. } => return None,
    };
    let mut c = Container::new("WITNESS");
    for (k, v) in kind_meta {
        c.add_meta(k, v);
    }
    match outcome.mode? {
        Mode::Strict => c.add_meta("mode", "strict"),
        Mode::Weak { homotopy_level, vertex_constant } => {
            c.add_meta("mode", "weak");
            c.add_meta("homotopy_level", homotopy_level.to_string());
            c.add_meta("vertex_constant", vertex_constant.to_string());
        }
        Mode::Relative { homotopy_level } => {
            c.add_meta("mode", "relative");
            c.add_meta("homotopy_level", homotopy_level.to_string());
        }
    }
    c.add_meta("bound", outcome.bound.clone());
    c.add_set("A", problem.i.domain().clone());
    c.add_set("B", problem.i.codomain().clone());
    c.add_set("X", problem.f.domain().clone());
    c.add_set("Y", problem.f.codomain().clone());
    c.add_map("i", "A", "B", problem.i.clone());
    c.add_map("f", "X", "Y", problem.f.clone());
    c.add_map("top", "A", "X", problem.top.clone());
    c.add_map("bottom", "B", "Y", problem.bottom.clone());
    Some(c)
}

/// Serializes a Rezk refutation of `δ f`, together with `f`, for replay.
pub fn rezk_witness_container(f: &SimplicialMap, outcome: &CheckOutcome) -> Option<Container> {
    let Some(Witness::Rezk { m, simplex, vertex, detail }) = &outcome.witness else { return None };
    let mut c = Container::new("WITNESS");
    c.add_meta("shape", "rezk");
    c.add_meta("mode", "rezk");
    c.add_meta("bound", outcome.bound.clone());
    c.add_meta("m", m.to_string());
    c.add_meta("simplex", simplex.clone());
    c.add_meta("vertex", vertex.to_string());
    c.add_meta("detail", detail.clone());
    c.add_set("X", f.domain().clone());
    c.add_set("Y", f.codomain().clone());
    c.add_map("f", "X", "Y", f.clone());
    Some(c)
}

/// `δ f` as a map of vertically discrete bisimplicial sets.
pub fn delta_of(f: &SimplicialMap) -> Result<BiSimplicialMap> {
    let (s, t) = (Arc::new(delta_embed(f.domain())), Arc::new(delta_embed(f.codomain())));
    delta_map(f, &s, &t)
}

fn replay_rezk(c: &Container, budget: u64) -> Result<bool> {
    let f = c.map("f").cloned().ok_or_else(|| Error::Invalid("witness lacks the map `f`".into()))?;
    let m_max: usize = c
        .meta("bound")
        .and_then(|b| b.strip_prefix("m_max="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Invalid("bad `bound`".into()))?;
    let out = rezk_check(&delta_of(&f)?, m_max, CheckOptions { budget, homotopy_level: 0 })?;
    let Some(Witness::Rezk { m, simplex, vertex, detail }) = out.witness else { return Ok(false) };
    Ok(c.meta("m") == Some(m.to_string().as_str())
        && c.meta("simplex") == Some(simplex.as_str())
        && c.meta("vertex") == Some(vertex.to_string().as_str())
        && c.meta("detail") == Some(detail.as_str()))
}

/// Re-solves a serialized witness; `Ok(true)` when it is still unsolvable.
pub fn replay_witness(c: &Container, budget: u64) -> Result<bool> {
    if c.meta("shape") == Some("rezk") {
        return replay_rezk(c, budget);
    }
    let get = |name: &str| c.map(name).cloned().ok_or_else(|| Error::Invalid(format!("witness lacks the map `{name}`")));
    let p = LiftingProblem::new(get("i")?, get("f")?, get("top")?, get("bottom")?)?;
    let level = |key: &str| -> Result<usize> {
        c.meta(key).unwrap_or("0").parse().map_err(|_| Error::Invalid(format!("bad `{key}`")))
    };
    let outcome = match c.meta("mode") {
        Some("strict") => match solve_strict(&p, budget)? {
            SearchOutcome::Found(_) => SearchOutcome::Found(()),
            SearchOutcome::Exhausted => SearchOutcome::Exhausted,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        },
        Some("weak") => {
            let opts = CheckOptions { budget, homotopy_level: level("homotopy_level")? };
            match solve_weak(&p, opts, c.meta("vertex_constant") == Some("true"))? {
                SearchOutcome::Found(_) => SearchOutcome::Found(()),
                SearchOutcome::Exhausted => SearchOutcome::Exhausted,
                SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
            }
        }
        Some("relative") => solve_relative(&p, level("homotopy_level")?, budget)?,
        _ => return Err(Error::Invalid("unknown witness mode".into())),
    };
    match outcome {
        SearchOutcome::Exhausted => Ok(true),
        SearchOutcome::Found(()) => Ok(false),
        SearchOutcome::BudgetExceeded => Err(Error::Precondition("replay exceeded the search budget".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary, cyclic_group, group_nerve, horn, point, standard};
    use crate::homology::pi0;

    fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(s)
    }

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn kan_fixtures() {
        assert_eq!(kan_check(&arc(point(3)), 3, opts()).unwrap().verdict, Verdict::Verified);
        let out = kan_check(&arc(standard(1, 2).unwrap()), 2, opts()).unwrap();
        assert_eq!(out.verdict, Verdict::Refuted);
        let Some(Witness::Horn { n: 2, k: 0, problem, .. }) = out.witness else { panic!("witness") };
        let a = problem.i.domain();
        let x = problem.f.domain();
        let name = |e: &str| x.ref_to_string(problem.top.image(a.gen_by_name(e).unwrap()));
        assert_eq!((name("e01"), name("e02")), ("e01".to_string(), "s0v0".to_string()));
        let nerve = arc(group_nerve(&cyclic_group(2), 3).unwrap());
        assert_eq!(kan_check(&nerve, 2, opts()).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn strict_fillers() {
        let h = arc(horn(2, 1, 2).unwrap());
        let d2 = arc(standard(2, 2).unwrap());
        let i = builders::inclusion(&h, &d2).unwrap();
        let pt = arc(point(2));
        let f = SimplicialMap::terminal(d2.clone(), pt.clone()).unwrap();
        let bottom = SimplicialMap::terminal(d2.clone(), pt).unwrap();
        let p = LiftingProblem::new(i.clone(), f, i, bottom).unwrap();
        let SearchOutcome::Found(lift) = solve_strict(&p, DEFAULT_BUDGET).unwrap() else { panic!() };
        assert!(lift.is_isomorphism());
        let SearchOutcome::Found(cert) = solve_weak(&p, opts(), false).unwrap() else { panic!() };
        assert!(cert.violations(&p, true).unwrap().is_empty());
    }

    #[test]
    fn weak_kan_complex_fixtures() {
        assert_eq!(weak_kan_complex_check(&arc(point(2)), 2, 1, opts()).unwrap().verdict, Verdict::Verified);
        let h = arc(horn(2, 1, 2).unwrap());
        let out = weak_kan_complex_check(&h, 2, 0, opts()).unwrap();
        assert_eq!(out.verdict, Verdict::Refuted);
        let c = witness_container(&out).unwrap();
        assert!(replay_witness(&Container::parse(&c.to_text()).unwrap(), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn rhlp_fixtures() {
        let nerve = arc(group_nerve(&cyclic_group(2), 3).unwrap());
        let id = SimplicialMap::identity(nerve.clone());
        assert_eq!(rhlp_check(&id, 1, 0, opts()).unwrap().verdict, Verdict::Verified);
        let pt = arc(point(3));
        let c = SimplicialMap::constant(pt.clone(), nerve.clone(), 0);
        let out = rhlp_check(&c, 1, 0, opts()).unwrap();
        assert_eq!(out.verdict, Verdict::Refuted);
        assert!(matches!(out.witness, Some(Witness::Boundary { n: 1, .. })));
        let trivial = arc(group_nerve(&cyclic_group(1), 3).unwrap());
        let t = SimplicialMap::terminal(trivial, pt).unwrap();
        assert_eq!(rhlp_check(&t, 1, 0, opts()).unwrap().verdict, Verdict::Verified);
        let bd = arc(boundary(2, 3).unwrap());
        let g = subdivide::sd(&bd).last_vertex();
        assert!(matches!(rhlp_check(&g, 1, 0, opts()), Err(Error::Precondition(_))));
    }

    #[test]
    fn rezk_fixtures() {
        use crate::bisimp::{delta_embed, delta_map};
        let delta = |f: &SimplicialMap| {
            let (s, t) = (Arc::new(delta_embed(f.domain())), Arc::new(delta_embed(f.codomain())));
            delta_map(f, &s, &t).unwrap()
        };
        let d1 = arc(standard(1, 2).unwrap());
        let t = SimplicialMap::terminal(d1.clone(), arc(point(2))).unwrap();
        assert_eq!(rezk_check(&delta(&t), 1, opts()).unwrap().verdict, Verdict::Verified);
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let x = arc(builders::ordered_complex(&names, &[vec![0, 1], vec![2, 3], vec![0, 2]], 2, |v| format!("e{}{}", v[0], v[1])).unwrap());
        let f = SimplicialMap::from_vertex_map(x, d1.clone(), &[0, 1, 0, 1]).unwrap();
        let out = rezk_check(&delta(&f), 1, opts()).unwrap();
        assert_eq!(out.verdict, Verdict::Refuted);
        let Some(Witness::Rezk { m, simplex, vertex, detail }) = out.witness else { panic!("witness") };
        assert_eq!((m, simplex.as_str(), vertex, detail.as_str()), (1, "e01", 1, "π₀ = 2 vs 1"));
        let f2 = SimplicialMap::from_vertex_map(f.domain().clone(), d1.clone(), &[0, 1, 0, 1]).unwrap();
        let out = rezk_check(&delta_of(&f2).unwrap(), 1, opts()).unwrap();
        let c = rezk_witness_container(&f2, &out).unwrap();
        assert!(replay_witness(&Container::parse(&c.to_text()).unwrap(), DEFAULT_BUDGET).unwrap());
        let bd = arc(boundary(2, 2).unwrap());
        let prod = product(&bd, &d1);
        assert_eq!(rezk_check(&delta(&prod.proj_right), 1, opts()).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn homotopy_pullbacks() {
        let pt = arc(point(3));
        let id = SimplicialMap::identity(pt.clone());
        assert_eq!(ho_pullback(&id, &id, 2).unwrap().counts(), vec![1, 0, 0]);
        let nerve = arc(group_nerve(&cyclic_group(2), 3).unwrap());
        let base = SimplicialMap::constant(pt.clone(), nerve.clone(), 0);
        let loops = ho_pullback(&base, &base, 2).unwrap();
        assert_eq!(pi0(&loops).0, 2);
    }
}
