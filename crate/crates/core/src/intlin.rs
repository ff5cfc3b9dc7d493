//! Exact sparse integer linear algebra: Smith invariants, rank, kernels.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse column vector.
pub type SparseVec = BTreeMap<usize, BigInt>;

/// A sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, columns: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn push_column(&mut self, col: SparseVec) {
        debug_assert!(col.keys().all(|&r| r < self.rows));
        self.columns.push(col.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    /// `self · v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&c, a) in v {
            for (&r, b) in &self.columns[c] {
                let e = out.entry(r).or_insert_with(BigInt::zero);
                *e += a * b;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows);
        for c in &other.columns {
            out.push_column(self.apply(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

/// Non-zero Smith invariants in divisibility order (all positive).
pub fn smith_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (c, col) in m.columns.iter().enumerate() {
        for (&r, v) in col {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
    }
    let mut diagonal: Vec<BigInt> = Vec::new();
    loop {
        // pick a pivot of least absolute value, preferring sparse rows and columns
        let mut best: Option<(usize, usize, BigInt, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                let a = v.abs();
                let cost = (row.len() - 1) * (cols[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((_, _, ba, bc)) => a < *ba || (a == *ba && cost < *bc),
                };
                if better {
                    best = Some((r, c, a, cost));
                }
            }
            if let Some((_, _, a, 0)) = &best {
                if a.is_one() {
                    break;
                }
            }
        }
        let Some((mut pr, mut pc, _, _)) = best else { break };
        loop {
            let p = rows[pr][&pc].clone();
            let mut smaller: Option<(usize, usize)> = None;
            // clear the pivot column with row operations
            let others: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in others {
                let a = rows[r][&pc].clone();
                let q = a.div_floor(&p);
                add_row_multiple(&mut rows, &mut cols, r, pr, &(-q));
                if rows[r].contains_key(&pc) {
                    smaller = Some((r, pc));
                }
            }
            // clear the pivot row with column operations
            let others: Vec<usize> = rows[pr].keys().copied().filter(|&c| c != pc).collect();
            for c in others {
                let a = rows[pr][&c].clone();
                let q = a.div_floor(&p);
                add_col_multiple(&mut rows, &mut cols, c, pc, &(-q));
                if rows[pr].contains_key(&c) && smaller.is_none() {
                    smaller = Some((pr, c));
                }
            }
            match smaller {
                Some((r, c)) => {
                    pr = r;
                    pc = c;
                }
                None => break,
            }
        }
        let p = rows[pr].remove(&pc).expect("pivot");
        cols[pc].remove(&pr);
        debug_assert!(rows[pr].is_empty() && cols[pc].is_empty());
        diagonal.push(p.abs());
    }
    normalize_diagonal(diagonal)
}

fn add_row_multiple(
    rows: &mut [BTreeMap<usize, BigInt>],
    cols: &mut [BTreeSet<usize>],
    target: usize,
    source: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    let src: Vec<(usize, BigInt)> = rows[source].iter().map(|(&c, v)| (c, v.clone())).collect();
    for (c, v) in src {
        let e = rows[target].entry(c).or_insert_with(BigInt::zero);
        *e += q * v;
        if e.is_zero() {
            rows[target].remove(&c);
            cols[c].remove(&target);
        } else {
            cols[c].insert(target);
        }
    }
}

fn add_col_multiple(
    rows: &mut [BTreeMap<usize, BigInt>],
    cols: &mut [BTreeSet<usize>],
    target: usize,
    source: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    let src: Vec<usize> = cols[source].iter().copied().collect();
    for r in src {
        let v = rows[r][&source].clone();
        let e = rows[r].entry(target).or_insert_with(BigInt::zero);
        *e += q * v;
        if e.is_zero() {
            rows[r].remove(&target);
            cols[target].remove(&r);
        } else {
            cols[target].insert(r);
        }
    }
}

/// Turns a diagonal into Smith form: sorted, each entry dividing the next.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let (mut ones, mut rest): (Vec<BigInt>, Vec<BigInt>) = d.drain(..).partition(|x| x.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let (more_ones, rest): (Vec<BigInt>, Vec<BigInt>) = rest.into_iter().partition(|x| x.is_one());
    ones.extend(more_ones);
    ones.extend(rest);
    ones
}

pub fn rank(m: &SparseMatrix) -> usize {
    smith_invariants(m).len()
}

/// A basis of the integer kernel of `m`, by unimodular column reduction.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let n = m.cols();
    let mut work: Vec<SparseVec> = m.columns.clone();
    let mut transform: Vec<SparseVec> = (0..n).map(|c| SparseVec::from([(c, BigInt::one())])).collect();
    let mut by_row: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in work.iter().enumerate() {
        for &r in col.keys() {
            by_row[r].insert(c);
        }
    }
    let mut active = vec![true; n];
    for r in 0..m.rows {
        loop {
            let cands: Vec<usize> = by_row[r].iter().copied().filter(|&c| active[c]).collect();
            if cands.len() <= 1 {
                if let Some(&c) = cands.first() {
                    active[c] = false;
                }
                break;
            }
            let pivot = *cands
                .iter()
                .min_by(|&&a, &&b| work[a][&r].abs().cmp(&work[b][&r].abs()).then(a.cmp(&b)))
                .unwrap();
            let p = work[pivot][&r].clone();
            for &c in &cands {
                if c == pivot {
                    continue;
                }
                let q = work[c][&r].div_floor(&p);
                let (src, tsrc) = (work[pivot].clone(), transform[pivot].clone());
                axpy(&mut work[c], &src, &(-&q), Some((&mut by_row, c)));
                axpy(&mut transform[c], &tsrc, &(-&q), None);
            }
        }
    }
    (0..n).filter(|&c| active[c]).map(|c| transform[c].clone()).collect()
}

fn axpy(y: &mut SparseVec, x: &SparseVec, a: &BigInt, mut index: Option<(&mut Vec<BTreeSet<usize>>, usize)>) {
    if a.is_zero() {
        return;
    }
    for (&r, v) in x {
        let e = y.entry(r).or_insert_with(BigInt::zero);
        *e += a * v;
        let zero = e.is_zero();
        if zero {
            y.remove(&r);
        }
        if let Some((by_row, c)) = index.as_mut() {
            if zero {
                by_row[r].remove(c);
            } else {
                by_row[r].insert(*c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(nr);
        for c in 0..nc {
            m.push_column((0..nr).map(|r| (r, BigInt::from(rows[r][c]))).collect());
        }
        m
    }

    #[test]
    fn smith_of_small_matrices() {
        let m = dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let inv: Vec<i64> = smith_invariants(&m).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
        let m = dense(&[&[2, 0], &[0, 3]]);
        let inv: Vec<i64> = smith_invariants(&m).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(inv, vec![1, 6]);
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_is_kernel() {
        let m = dense(&[&[1, 1, 0, 2], &[0, 2, 2, 4]]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).is_empty());
        }
        // the kernel basis spans a saturated lattice
        let mut k = SparseMatrix::new(4);
        for v in ker {
            k.push_column(v);
        }
        assert!(smith_invariants(&k).iter().all(|x| x.is_one()));
    }
}
