//! Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
//! arguments to run a subset.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use kanlift::bisimp::{comparison_map, d_shriek, delta_embed, diagonal, diagonal_map, diagonal_to};
use kanlift::builders::{
    boundary, cyclic_group, fiber, group_nerve, horn, mapping_cylinder, point, standard,
};
use kanlift::cover::{canonical_refinement_check, category_nerve, star_cover, star_nerve_iso_check};
use kanlift::ex::{ex_map_iterate, ex_tower, gamma_star, Ex};
use kanlift::expansion::{find_expansion, verify_expansion};
use kanlift::fixtures::{self, Fixture};
use kanlift::format::Document;
use kanlift::homology::{homology, induced_iso_check, pi0};
use kanlift::lifting::{
    delta_of, kan_check, kan_fibration_check, rezk_check, rezk_witness_container, rhlp_check, solve_strict,
    subdivided_horn, weak_kan_fibration_check, witness_container, CheckOptions, LiftingProblem, Verdict,
    Witness,
};
use kanlift::search::{SearchOutcome, DEFAULT_BUDGET};
use kanlift::subdivide::{cone_subdivision, sd, sd_tower};
use kanlift::{SimplicialMap, SimplicialSet};

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(s)
}

fn level(h: usize) -> CheckOptions {
    CheckOptions { homotopy_level: h, ..CheckOptions::default() }
}

#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Verdicts shared between criteria 2 and 3.
#[derive(Default)]
struct Shared {
    weak: Option<BTreeMap<&'static str, Verdict>>,
}

fn weak_corpus_verdicts(shared: &mut Shared, corpus: &[Fixture]) -> Res<BTreeMap<&'static str, Verdict>> {
    if let Some(w) = &shared.weak {
        return Ok(w.clone());
    }
    let mut out = BTreeMap::new();
    for fx in corpus {
        out.insert(fx.name, weak_kan_fibration_check(&fx.map, 2, 2, level(1))?.verdict);
    }
    shared.weak = Some(out.clone());
    Ok(out)
}

// Maps Δ[2] → X for a 1-dimensional ordered complex X are vertex triples
// spanning at most one edge, in order.
fn horn_fillers_by_hand(p: &LiftingProblem) -> usize {
    let x = p.f.domain();
    let edges: BTreeSet<(u32, u32)> = x.gens(1).map(|g| (x.gen_vertices(g)[0], x.gen_vertices(g)[1])).collect();
    let horn_to_simplex = p.i.vertex_map();
    let top = p.top.vertex_map();
    let bottom = p.bottom.vertex_map();
    let f = p.f.vertex_map();
    let nv = x.count(0) as u32;
    let mut count = 0;
    for a in 0..nv {
        for b in 0..nv {
            for c in 0..nv {
                let l = [a, b, c];
                let distinct: BTreeSet<u32> = l.iter().copied().collect();
                let simplicial = distinct.len() <= 2
                    && (0..3).all(|i| (i + 1..3).all(|j| l[i] == l[j] || edges.contains(&(l[i], l[j]))));
                let over = (0..3).all(|j| f[l[j] as usize] == bottom[j]);
                let extends = horn_to_simplex.iter().zip(&top).all(|(&s, &t)| l[s as usize] == t);
                if simplicial && over && extends {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion1(t: &mut Tally) -> Res<()> {
    let f = fixtures::counterexample()?;
    let x = f.domain().clone();
    t.expect(x.counts() == vec![4, 3, 0], || format!("X counts {:?}", x.counts()));

    let strict = kan_fibration_check(&f, 2, CheckOptions::default())?;
    t.expect(strict.verdict == Verdict::Refuted, || format!("strict check {}", strict.verdict));
    match &strict.witness {
        Some(Witness::Horn { subdivision: 0, n: 2, k, problem }) => {
            let by_hand = horn_fillers_by_hand(problem);
            t.expect(by_hand == 0, || format!("hand enumeration finds {by_hand} fillers for Λ²_{k}"));
            let replay = solve_strict(problem, DEFAULT_BUDGET)?;
            t.expect(matches!(replay, SearchOutcome::Exhausted), || "strict witness does not replay".into());
            t.note(format!("(a) no filler for Λ²_{k}"));
        }
        w => t.expect(false, || format!("strict witness {w:?}")),
    }

    let b0 = weak_kan_fibration_check(&f, 2, 0, level(0))?;
    let b1 = weak_kan_fibration_check(&f, 2, 0, level(1))?;
    t.expect(b1.verdict == Verdict::Verified, || format!("weak (2,0) at homotopy level 1: {}", b1.verdict));
    t.note(format!("(b) weak (2,0): level 1 {}, level 0 {}", b1.verdict, b0.verdict));

    let c = weak_kan_fibration_check(&f, 2, 2, level(1))?;
    t.expect(c.verdict == Verdict::Refuted, || format!("weak (2,2): {}", c.verdict));
    if let Some(Witness::Horn { subdivision, n, k, .. }) = &c.witness {
        t.note(format!("(c) weak (2,2) refuted at i={subdivision} n={n} k={k}"));
    }

    let fib = fiber(&f, 1)?;
    let (fiber_pi0, x_pi0) = (pi0(&fib.object).0, pi0(&x).0);
    t.expect(fiber_pi0 == 2 && x_pi0 == 1, || format!("π₀ fiber {fiber_pi0}, π₀ X {x_pi0}"));
    t.note(format!("(d) π₀ fiber {fiber_pi0}, π₀ X {x_pi0}"));

    let e = rezk_check(&delta_of(&f)?, 1, CheckOptions::default())?;
    t.expect(e.verdict == Verdict::Refuted, || format!("rezk: {}", e.verdict));
    t.note(format!("(e) rezk {}", e.verdict));
    Ok(())
}

fn criterion2(t: &mut Tally, shared: &mut Shared) -> Res<()> {
    let corpus = fixtures::corpus()?;
    t.expect(corpus.len() >= 25, || format!("corpus has {} maps", corpus.len()));
    let weak = weak_corpus_verdicts(shared, &corpus)?;
    let (mut verified, mut refuted, mut violations) = (0, 0, 0);
    for fx in &corpus {
        let w = weak[fx.name];
        let r = rezk_check(&delta_of(&fx.map)?, 2, CheckOptions::default())?.verdict;
        t.expect(w != Verdict::Undecided, || format!("{}: weak check undecided", fx.name));
        match w {
            Verdict::Verified => {
                verified += 1;
                t.expect(r == Verdict::Verified, || format!("{}: weak verified, rezk {r}", fx.name));
                if r == Verdict::Refuted {
                    violations += 1;
                }
            }
            Verdict::Refuted => refuted += 1,
            Verdict::Undecided => {}
        }
    }
    t.note(format!("{} maps, {verified} weak-verified, {refuted} weak-refuted, {violations} violations", corpus.len()));
    Ok(())
}

fn fixture_sets(corpus: &[Fixture]) -> Vec<Arc<SimplicialSet>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for fx in corpus {
        for s in [fx.map.domain(), fx.map.codomain()] {
            if seen.insert(s.to_text()) {
                out.push(s.clone());
            }
        }
    }
    out
}

fn ex_of(f: &SimplicialMap) -> Res<SimplicialMap> {
    let s = ex_tower(f.domain(), 1, 2)?;
    let d = ex_tower(f.codomain(), 1, 2)?;
    Ok(ex_map_iterate(f, &s, &d)?)
}

fn criterion3(t: &mut Tally, shared: &mut Shared) -> Res<()> {
    let corpus = fixtures::corpus()?;
    let sets = fixture_sets(&corpus);
    for x in &sets {
        let ex = Ex::new(x, 2)?;
        let g = ex.gamma()?;
        let same_names = x.gens(0).all(|v| ex.object.name(g.image(v).gen) == x.name(v));
        let ex_names: BTreeSet<String> = ex.object.gens(0).map(|v| ex.object.name(v).to_string()).collect();
        let x_names: BTreeSet<String> = x.gens(0).map(|v| x.name(v).to_string()).collect();
        t.expect(ex_names == x_names && same_names, || format!("Ex X₀ {ex_names:?} vs X₀ {x_names:?}"));
    }
    t.note(format!("Ex X₀ = X₀ on {} sets", sets.len()));

    let d2 = arc(standard(2, 2)?);
    for (name, x) in [
        ("∂Δ[2]", arc(boundary(2, 2)?)),
        ("sd Δ[2]", sd(&d2).object.clone()),
        ("Λ³₁", arc(horn(3, 1, 3)?)),
    ] {
        let iso = induced_iso_check(&gamma_star(&x, 2)?, 1)?;
        t.expect(iso == vec![true, true], || format!("γ* on {name}: {iso:?}"));
    }

    let weak = weak_corpus_verdicts(shared, &corpus)?;
    let (mut kan_kept, mut weak_kept) = (0, 0);
    for fx in &corpus {
        let kan = kan_fibration_check(&fx.map, 2, CheckOptions::default())?.verdict;
        let w = weak[fx.name];
        if kan != Verdict::Verified && w != Verdict::Verified {
            continue;
        }
        let ef = ex_of(&fx.map)?;
        if kan == Verdict::Verified {
            let v = kan_fibration_check(&ef, 2, CheckOptions::default())?.verdict;
            t.expect(v == Verdict::Verified, || format!("Ex {}: kan {v}", fx.name));
            kan_kept += 1;
        }
        if w == Verdict::Verified {
            let v = weak_kan_fibration_check(&ef, 2, 1, level(1))?.verdict;
            t.expect(v == Verdict::Verified, || format!("Ex {}: weak {v}", fx.name));
            weak_kept += 1;
        }
    }
    t.note(format!("{kan_kept} kan-verified and {weak_kept} weak-verified maps checked after Ex"));
    Ok(())
}

fn criterion4(t: &mut Tally) -> Res<()> {
    for (name, x) in [
        ("Δ[0]", point(5)),
        ("Δ[1]", standard(1, 5)?),
        ("∂Δ[2]", boundary(2, 5)?),
        ("Λ²₁", horn(2, 1, 5)?),
    ] {
        let x = arc(x);
        let ds = d_shriek(&x)?;
        let delta = Arc::new(delta_embed(&x));
        let m = comparison_map(&ds, &delta)?;
        let src = diagonal(&ds.object)?;
        let tgt = diagonal_to(&delta, src.object.max_dim())?;
        let dm = diagonal_map(&m, &src, &tgt)?;
        let iso = induced_iso_check(&dm, 1)?;
        t.expect(iso == vec![true, true], || format!("{name}: {iso:?}"));
        let betti = homology(&src.object, 1)?.betti();
        t.expect(betti == homology(&x, 1)?.betti(), || format!("{name}: diagonal betti {betti:?}"));
    }
    t.note("comparison diagonals are homology isomorphisms in degrees ≤ 1");
    Ok(())
}

fn criterion5(t: &mut Tally) -> Res<()> {
    let mut found = 0;
    for n in 1..=3 {
        for i in 0..=2 {
            for k in 0..=n {
                let inc = subdivided_horn(n, k, i)?;
                let total = |s: &SimplicialSet| s.counts().iter().sum::<usize>();
                // each step adds a simplex and its free face
                let expected = (total(inc.codomain()) - total(inc.domain())) / 2;
                match find_expansion(&inc, DEFAULT_BUDGET)? {
                    SearchOutcome::Found(seq) => {
                        let report = verify_expansion(&seq);
                        t.expect(report.accepted, || format!("(n={n}, k={k}, i={i}) rejected: {:?}", report.failure));
                        t.expect(seq.steps.len() == expected, || {
                            format!("(n={n}, k={k}, i={i}) {} steps, expected {expected}", seq.steps.len())
                        });
                        if (n, k, i) == (2, 1, 1) {
                            t.expect(seq.steps.len() == 8, || format!("sd Λ²₁: {} steps", seq.steps.len()));
                        }
                        found += 1;
                    }
                    _ => t.expect(false, || format!("(n={n}, k={k}, i={i}) no expansion")),
                }
            }
        }
    }
    t.note(format!("{found} expansions found and verified"));
    Ok(())
}

fn stirling2(n: usize, k: usize) -> usize {
    if n == 0 || k == 0 {
        return usize::from(n == k);
    }
    k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

// k-simplices of sd Δ[m] are chains of k+1 non-empty subsets of [m]; those
// ending at [m] are ordered partitions of [m] into k+1 blocks.
fn cone_counts(n: usize) -> (Vec<usize>, Vec<usize>) {
    let m = n - 1;
    let sd_k = |k: usize| if k > m { 0 } else { factorial(k + 1) * stirling2(m + 2, k + 2) };
    let top_k = |k: usize| if k > m { 0 } else { factorial(k + 1) * stirling2(m + 1, k + 1) };
    let t: Vec<usize> = (0..=n).map(|k| sd_k(k) + if k == 0 { 1 } else { sd_k(k - 1) }).collect();
    let with_c: Vec<usize> = (0..=n).map(|k| top_k(k) + if k == 0 { 0 } else { top_k(k - 1) }).collect();
    let t_prime = t.iter().zip(&with_c).map(|(a, b)| a - b).collect();
    (t, t_prime)
}

fn criterion6(t: &mut Tally) -> Res<()> {
    for n in 1..=4 {
        let c = cone_subdivision(n)?;
        let round = c.i_t.then(&c.r_t)?;
        let id = SimplicialMap::identity(c.t_prime.clone());
        t.expect(round.images() == id.images(), || format!("n={n}: r_T ∘ i_T is not the identity"));
        let deg = n - 1;
        t.expect(homology(&c.t, deg)?.is_point(), || format!("n={n}: T not homology-contractible"));
        t.expect(homology(&c.t_prime, deg)?.is_point(), || format!("n={n}: T′ not homology-contractible"));
        let (ct, ctp) = cone_counts(n);
        t.expect(c.t.counts() == ct && c.t_prime.counts() == ctp, || {
            format!("n={n}: counts {:?}/{:?}, expected {ct:?}/{ctp:?}", c.t.counts(), c.t_prime.counts())
        });
        if n == 2 {
            t.expect(c.t.counts() == vec![4, 5, 2] && c.t_prime.counts() == vec![3, 2, 0], || "n=2 counts".into());
        }
    }
    t.note("n ≤ 4: r_T ∘ i_T = id, T and T′ acyclic, counts match");
    Ok(())
}

fn criterion7(t: &mut Tally) -> Res<()> {
    let mut intersections = 0;
    for n in 0..=3 {
        for i in 0..=2 {
            let r = star_nerve_iso_check(n, i)?;
            t.expect(r.passed(), || {
                format!("star nerve ({n},{i}): iso {} contractible {} components {}", r.is_isomorphism, r.all_contractible, r.components_agree)
            });
            t.expect(r.iso.is_isomorphism(), || format!("star nerve ({n},{i}): explicit map is not an isomorphism"));
            intersections += r.intersections_checked;
        }
    }
    t.note(format!("star nerves n ≤ 3, i ≤ 2: {intersections} intersections contractible"));
    for n in 0..=2 {
        for i in 0..=1 {
            let r = canonical_refinement_check(n, i)?;
            t.expect(r.matches_subdivided_last_vertex(), || format!("refinement ({n},{i}) is not sd γ"));
            if let Some(m) = &r.last_vertex_mismatch {
                t.note(format!("({n},{i}) differs from γ_sd at {m}"));
            }
        }
    }
    Ok(())
}

fn criterion8(t: &mut Tally) -> Res<()> {
    let opts = CheckOptions::default();
    let pt = arc(point(3));
    let a = kan_check(&pt, 3, opts)?;
    t.expect(a.verdict == Verdict::Verified, || format!("Δ[0]: {}", a.verdict));

    let b = kan_check(&arc(standard(1, 2)?), 2, opts)?;
    t.expect(b.verdict == Verdict::Refuted, || format!("Δ[1]: {}", b.verdict));
    let witness = match &b.witness {
        Some(Witness::Horn { subdivision, n, k, .. }) => (*subdivision, *n, *k),
        _ => (usize::MAX, 0, 0),
    };
    t.expect(witness == (0, 2, 0), || format!("Δ[1] witness {witness:?}"));

    let z2 = arc(group_nerve(&cyclic_group(2), 3)?);
    let c = kan_check(&z2, 2, opts)?;
    t.expect(c.verdict == Verdict::Verified, || format!("N(Z/2): {}", c.verdict));

    let constant = SimplicialMap::constant(pt, z2, 0);
    let d = rhlp_check(&constant, 1, 0, opts)?;
    t.expect(d.verdict == Verdict::Refuted, || format!("rhlp Δ[0] → N(Z/2): {}", d.verdict));
    t.note(format!("Δ[0] {}, Δ[1] {} at Λ²₀, N(Z/2) {}, rhlp {}", a.verdict, b.verdict, c.verdict, d.verdict));
    Ok(())
}

fn corpus_files(dir: &Path, out: &mut Vec<PathBuf>) -> Res<()> {
    for e in fs::read_dir(dir)? {
        let p = e?.path();
        if p.is_dir() {
            corpus_files(&p, out)?;
        } else {
            out.push(p);
        }
    }
    Ok(())
}

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Res<T> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?.install(job))
}

fn witness_texts() -> kanlift::Result<Vec<String>> {
    let f = fixtures::counterexample()?;
    let weak = weak_kan_fibration_check(&f, 2, 2, level(1))?;
    let kan = kan_check(&arc(standard(1, 2)?), 2, CheckOptions::default())?;
    let rezk = rezk_check(&delta_of(&f)?, 1, CheckOptions::default())?;
    let mut out = Vec::new();
    out.extend(witness_container(&weak).map(|c| c.to_text()));
    out.extend(witness_container(&kan).map(|c| c.to_text()));
    out.extend(rezk_witness_container(&f, &rezk).map(|c| c.to_text()));
    out.push(format!("{} {} {}", weak.problems, kan.problems, rezk.problems));
    Ok(out)
}

fn criterion9(t: &mut Tally) -> Res<()> {
    let root = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"));
    let mut files = Vec::new();
    corpus_files(root, &mut files)?;
    files.sort();
    for p in &files {
        let text = fs::read_to_string(p)?;
        let doc = Document::parse(&text)?;
        let again = doc.to_text();
        t.expect(again == text, || format!("{} does not round-trip", p.display()));
        t.expect(Document::parse(&again)?.to_text() == again, || format!("{} is not stable", p.display()));
    }
    let corpus = fixtures::corpus()?;
    for fx in &corpus {
        let committed = fs::read_to_string(root.join(fx.file_name())).unwrap_or_default();
        t.expect(committed == fx.to_container().to_text(), || format!("{} differs from its committed file", fx.name));
    }

    let mut sets: Vec<(String, Arc<SimplicialSet>)> = Vec::new();
    let mut maps: Vec<(String, SimplicialMap)> = Vec::new();
    for fx in &corpus {
        maps.push((fx.name.to_string(), fx.map.clone()));
    }
    for x in fixture_sets(&corpus) {
        sets.push((format!("fixture set {}", x.counts().len()), x));
    }
    let d2 = arc(standard(2, 2)?);
    for (j, s) in sd_tower(&d2, 2).iter().enumerate() {
        sets.push((format!("sd^{} Δ[2]", j + 1), s.object.clone()));
        maps.push((format!("γ on sd^{} Δ[2]", j + 1), s.last_vertex()));
    }
    for x in [arc(boundary(2, 2)?), arc(horn(2, 1, 2)?)] {
        let ex = Ex::new(&x, 2)?;
        sets.push(("Ex".into(), ex.object.clone()));
        maps.push(("γ*".into(), ex.gamma()?));
    }
    let mut bisets = 0;
    for x in [arc(standard(1, 5)?), arc(boundary(2, 5)?)] {
        let ds = d_shriek(&x)?;
        t.expect(ds.object.validate().is_empty(), || "d_! fails validation".into());
        let delta = Arc::new(delta_embed(&x));
        t.expect(delta.validate().is_empty(), || "δ fails validation".into());
        let m = comparison_map(&ds, &delta)?;
        t.expect(m.validate().is_empty(), || "comparison map fails validation".into());
        bisets += 2;
    }
    for n in 1..=2 {
        let k = sd(&arc(standard(n, n)?)).object.clone();
        let nerve = category_nerve(&Arc::new(star_cover(&k)?), true)?;
        sets.push((format!("star nerve {n}"), nerve.object.clone()));
    }
    for n in 1..=4 {
        let c = cone_subdivision(n)?;
        sets.push((format!("T {n}"), c.t.clone()));
        sets.push((format!("T′ {n}"), c.t_prime.clone()));
        maps.push((format!("i_T {n}"), c.i_t.clone()));
        maps.push((format!("r_T {n}"), c.r_t.clone()));
    }
    for h in 0..=1 {
        let cyl = mapping_cylinder(&subdivided_horn(2, 1, 1)?, h)?;
        sets.push((format!("M(i) level {h}"), cyl.object.clone()));
        maps.push((format!("π(i) level {h}"), cyl.projection.clone()));
    }
    for (name, s) in &sets {
        let v = s.validate();
        t.expect(v.is_empty(), || format!("{name}: {v:?}"));
    }
    for (name, m) in &maps {
        let v = m.validate();
        t.expect(v.is_empty(), || format!("{name}: {v:?}"));
        t.expect(m.domain().validate().is_empty() && m.codomain().validate().is_empty(), || format!("{name}: ends"));
    }

    let one = in_pool(1, witness_texts)??;
    let four = in_pool(4, witness_texts)??;
    t.expect(one == four, || "witnesses differ between 1 and 4 threads".into());
    t.expect(one.len() == 4, || format!("{} witnesses", one.len() - 1));
    t.note(format!(
        "{} files round-trip, {} sets, {} maps, {bisets} bisimplicial objects valid, witnesses stable",
        files.len(),
        sets.len(),
        maps.len()
    ));
    Ok(())
}

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "counterexample suite", limit: Duration::from_secs(5 * 60) },
    Criterion { id: 2, title: "implication audit", limit: Duration::from_secs(20 * 60) },
    Criterion { id: 3, title: "Ex suite", limit: Duration::from_secs(10 * 60) },
    Criterion { id: 4, title: "d_!/δ comparison", limit: Duration::from_secs(5 * 60) },
    Criterion { id: 5, title: "expansions", limit: Duration::from_secs(15 * 60) },
    Criterion { id: 6, title: "cone subdivision", limit: Duration::from_secs(5 * 60) },
    Criterion { id: 7, title: "nerve identification", limit: Duration::from_secs(15 * 60) },
    Criterion { id: 8, title: "Kan fixtures", limit: Duration::from_secs(5 * 60) },
    Criterion { id: 9, title: "infrastructure laws", limit: Duration::from_secs(5 * 60) },
];

fn main() {
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut shared = Shared::default();
    let mut failed = 0;
    let mut timings: HashMap<usize, Duration> = HashMap::new();
    for c in CRITERIA.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let mut t = Tally::default();
        let start = Instant::now();
        let run = match c.id {
            1 => criterion1(&mut t),
            2 => criterion2(&mut t, &mut shared),
            3 => criterion3(&mut t, &mut shared),
            4 => criterion4(&mut t),
            5 => criterion5(&mut t),
            6 => criterion6(&mut t),
            7 => criterion7(&mut t),
            8 => criterion8(&mut t),
            _ => criterion9(&mut t),
        };
        let elapsed = start.elapsed();
        timings.insert(c.id, elapsed);
        if let Err(e) = run {
            t.failures.push(format!("error: {e}"));
        }
        t.expect(elapsed < c.limit, || format!("took {elapsed:.1?}, limit {:?}", c.limit));
        let status = if t.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {status} {} ({:.1} s, limit {} s): {}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            t.notes.join("; ")
        );
        for f in &t.failures {
            println!("    {f}");
        }
        if !t.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
