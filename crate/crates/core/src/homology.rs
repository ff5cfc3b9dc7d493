//! Integral homology of normalized chains, induced maps, and π₀.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlin::{kernel_basis, rank, smith_invariants, SparseMatrix, SparseVec};
use crate::map::SimplicialMap;
use crate::simplex::Gen;
use crate::sset::SimplicialSet;

/// Homology in one degree: free rank and torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Homology in degrees `0..=deg_max`, valid up to `valid_bound = max_dim − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub valid_bound: usize,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn torsion(&self, k: usize) -> &[BigInt] {
        &self.degrees[k].torsion
    }

    /// True when the report is that of a point.
    pub fn is_point(&self) -> bool {
        self.degrees.iter().enumerate().all(|(k, d)| d.torsion.is_empty() && d.betti == usize::from(k == 0))
    }

    /// Stable text table, one line per degree.
    pub fn to_table(&self) -> String {
        let mut out = String::from("degree  group\n");
        for (k, d) in self.degrees.iter().enumerate() {
            out.push_str(&format!("H{k}      {}\n", group_text(d)));
        }
        out
    }
}

fn group_text(d: &DegreeHomology) -> String {
    let mut parts: Vec<String> = Vec::new();
    match d.betti {
        0 => {}
        1 => parts.push("Z".into()),
        b => parts.push(format!("Z^{b}")),
    }
    for t in &d.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}

/// The normalized boundary `∂_k : C_k → C_{k−1}` on non-degenerate bases.
pub fn boundary_matrix(s: &SimplicialSet, k: usize) -> SparseMatrix {
    if k == 0 {
        let mut m = SparseMatrix::new(0);
        for _ in 0..s.count(0) {
            m.push_column(SparseVec::new());
        }
        return m;
    }
    let mut m = SparseMatrix::new(s.count(k - 1));
    for g in s.gens(k) {
        let mut col = SparseVec::new();
        for (j, f) in s.gen_faces(g).iter().enumerate() {
            if f.is_degenerate() {
                continue;
            }
            let e = col.entry(f.gen.index()).or_insert_with(|| BigInt::from(0));
            if j % 2 == 0 {
                *e += 1;
            } else {
                *e -= 1;
            }
        }
        m.push_column(col);
    }
    m
}

/// Matrix of `f_k` on normalized chains.
pub fn chain_map_matrix(f: &SimplicialMap, k: usize) -> SparseMatrix {
    let mut m = SparseMatrix::new(f.codomain().count(k));
    for g in f.domain().gens(k) {
        let y = f.image(g);
        let mut col = SparseVec::new();
        if !y.is_degenerate() {
            col.insert(y.gen.index(), BigInt::one());
        }
        m.push_column(col);
    }
    m
}

fn check_truncation(s: &SimplicialSet, deg_max: usize) -> Result<()> {
    if s.max_dim() < deg_max + 1 {
        return Err(Error::TruncationInsufficient { needed: deg_max + 1, have: s.max_dim() });
    }
    Ok(())
}

/// Homology in degrees `0..=deg_max`; needs `max_dim ≥ deg_max + 1`.
pub fn homology(s: &SimplicialSet, deg_max: usize) -> Result<HomologyReport> {
    check_truncation(s, deg_max)?;
    let boundaries: Vec<Vec<BigInt>> =
        (0..=deg_max + 1).into_par_iter().map(|k| smith_invariants(&boundary_matrix(s, k))).collect();
    let degrees = (0..=deg_max)
        .map(|k| {
            let rank_out = boundaries[k].len();
            let rank_in = boundaries[k + 1].len();
            DegreeHomology {
                betti: s.count(k) - rank_out - rank_in,
                torsion: boundaries[k + 1].iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect();
    Ok(HomologyReport { valid_bound: s.max_dim() - 1, degrees })
}

/// For each degree `k ≤ deg_max`, whether `H_k(f)` is an isomorphism.
///
/// `H_k(f)` is onto iff the image of the cycles of the domain together with
/// the boundaries of the codomain is all of the codomain's cycles; since
/// finitely generated abelian groups are Hopfian, onto plus abstractly
/// isomorphic groups means isomorphism.
pub fn induced_iso_check(f: &SimplicialMap, deg_max: usize) -> Result<Vec<bool>> {
    let (s, t) = (f.domain(), f.codomain());
    check_truncation(s, deg_max)?;
    check_truncation(t, deg_max)?;
    if f.defined_dim() < deg_max + 1 {
        return Err(Error::TruncationInsufficient { needed: deg_max + 1, have: f.defined_dim() });
    }
    let hs = homology(s, deg_max)?;
    let ht = homology(t, deg_max)?;
    let out = (0..=deg_max)
        .into_par_iter()
        .map(|k| {
            if hs.degrees[k] != ht.degrees[k] {
                return false;
            }
            let cycles = kernel_basis(&boundary_matrix(s, k));
            let fk = chain_map_matrix(f, k);
            let mut gens = SparseMatrix::new(t.count(k));
            for z in &cycles {
                gens.push_column(fk.apply(z));
            }
            for c in boundary_matrix(t, k + 1).columns {
                gens.push_column(c);
            }
            let z_rank = t.count(k) - rank(&boundary_matrix(t, k));
            let inv = smith_invariants(&gens);
            inv.len() == z_rank && inv.iter().all(|x| x.abs().is_one())
        })
        .collect();
    Ok(out)
}

/// Connected components: the count and a component label per vertex.
pub fn pi0(s: &SimplicialSet) -> (usize, Vec<usize>) {
    let n = s.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    if s.max_dim() >= 1 {
        for g in s.gens(1) {
            let v = s.gen_vertices(g);
            let (a, b) = (find(&mut parent, v[0] as usize), find(&mut parent, v[1] as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut root_label = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_label[r] == usize::MAX {
            root_label[r] = count;
            count += 1;
        }
        labels[v] = root_label[r];
    }
    (count, labels)
}

/// Vertex components restricted to generators: label of each generator.
pub fn component_of(s: &SimplicialSet, labels: &[usize], g: Gen) -> usize {
    labels[s.gen_vertices(g)[0] as usize]
}

/// Alternating count of generators in dimensions `0..=top`.
pub fn euler_characteristic(s: &SimplicialSet) -> i64 {
    (0..=s.max_dim()).map(|k| if k % 2 == 0 { s.count(k) as i64 } else { -(s.count(k) as i64) }).sum()
}
