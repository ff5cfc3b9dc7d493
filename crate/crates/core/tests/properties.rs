use std::sync::Arc;

use proptest::prelude::*;

use kanlift::builders::ordered_complex;
use kanlift::ex::Ex;
use kanlift::homology::{euler_characteristic, homology, induced_iso_check};
use kanlift::subdivide::sd;
use kanlift::SimplicialSet;

const TRUNC: usize = 3;

fn complex(nv: usize, masks: &[u32]) -> SimplicialSet {
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<u32>> = masks
        .iter()
        .map(|m| (0..nv as u32).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|f| !f.is_empty() && f.len() <= 3)
        .collect();
    ordered_complex(&names, &facets, TRUNC, |v| format!("e{}", v.iter().map(|i| i.to_string()).collect::<String>())).unwrap()
}

fn complexes() -> impl Strategy<Value = SimplicialSet> {
    (1usize..=5, prop::collection::vec(1u32..32, 0..6)).prop_map(|(nv, masks)| complex(nv, &masks))
}

fn components(s: &SimplicialSet) -> usize {
    let mut parent: Vec<usize> = (0..s.count(0)).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in s.gens(1) {
        let v = s.gen_vertices(e);
        let (a, b) = (find(&mut parent, v[0] as usize), find(&mut parent, v[1] as usize));
        parent[a] = b;
    }
    (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count()
}

fn stirling2(n: usize, k: usize) -> usize {
    if n == 0 || k == 0 {
        return usize::from(n == k);
    }
    k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
}

// k-simplices of sd X: chains of k+1 faces ending at some simplex σ, i.e.
// ordered partitions of the vertices of σ into k+1 blocks
fn sd_counts(s: &SimplicialSet) -> Vec<usize> {
    let fact = |n: usize| (1..=n).product::<usize>();
    (0..=s.max_dim())
        .map(|k| (0..=s.max_dim()).map(|d| s.count(d) * fact(k + 1) * stirling2(d + 1, k + 1)).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_round_trip(x in complexes()) {
        prop_assert!(x.validate().is_empty());
        let back = SimplicialSet::from_text(&x.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), x.to_text());
        prop_assert!(back == x);
    }

    #[test]
    fn subdivision_invariants(x in complexes()) {
        let x = Arc::new(x);
        let s = sd(&x);
        prop_assert!(s.object.validate().is_empty());
        prop_assert_eq!(s.object.counts(), sd_counts(&x));
        prop_assert_eq!(euler_characteristic(&s.object), euler_characteristic(&x));
        let h = homology(&x, 2).unwrap();
        let betti = h.betti();
        prop_assert_eq!(betti[0], components(&x));
        prop_assert_eq!(betti[0] as i64 - betti[1] as i64 + betti[2] as i64, euler_characteristic(&x));
        prop_assert_eq!(homology(&s.object, 2).unwrap().betti(), betti);
        let gamma = s.last_vertex();
        prop_assert!(gamma.validate().is_empty());
        prop_assert_eq!(induced_iso_check(&gamma, 2).unwrap(), vec![true, true, true]);
    }

    #[test]
    fn ex_keeps_vertices(x in complexes()) {
        let x = Arc::new(x);
        let ex = Ex::new(&x, 1).unwrap();
        prop_assert!(ex.object.validate().is_empty());
        prop_assert_eq!(ex.object.count(0), x.count(0));
        let gamma = ex.gamma().unwrap();
        prop_assert!(gamma.validate().is_empty());
        prop_assert_eq!(induced_iso_check(&gamma, 0).unwrap(), vec![true]);
    }
}
