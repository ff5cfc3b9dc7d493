use std::sync::Arc;

use kanlift::builders::{cyclic_group, group_nerve, standard};
use kanlift::cover::{canonical_refinement, category_nerve, refinement_nerve_map, star_cover, RefinementMap};
use kanlift::ex::ex_apply;
use kanlift::search::all_maps;
use kanlift::subdivide::{last_vertex_iterate, sd_iterate, sd_tower};
use kanlift::{SimplicialMap, SimplicialSet};

fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(s)
}

// Hom(N(star cover of sdⁱΔ[n]), C) ≅ Hom(sd^{i+1}Δ[n], C) = Ex^{i+1}(C)_n
#[test]
fn nerve_maps_count_ex_simplices() {
    for (n, i) in [(0, 0), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)] {
        let base = sd_iterate(&arc(standard(n, n).unwrap()), i);
        let nerve = category_nerve(&Arc::new(star_cover(&base).unwrap()), true).unwrap();
        for c in [standard(1, n.max(1)).unwrap(), group_nerve(&cyclic_group(2), n.max(1)).unwrap()] {
            let c = arc(c);
            let homs = all_maps(&nerve.object, &c).unwrap().len();
            let ex = ex_apply(&c, i + 1, n).unwrap();
            assert_eq!(homs, ex.enumerate_simplices(n).unwrap().len(), "n={n} i={i}");
        }
    }
}

#[test]
fn composed_canonical_refinement() {
    for n in 1..=2 {
        let k = arc(standard(n, n).unwrap());
        let tower = sd_tower(&k, 2);
        let covers: Vec<_> = [&k, &tower[0].object, &tower[1].object]
            .iter()
            .map(|b| Arc::new(star_cover(b).unwrap()))
            .collect();
        let nerves: Vec<_> = covers.iter().map(|c| category_nerve(c, true).unwrap()).collect();
        let lower = RefinementMap::along(
            &tower[0],
            covers[1].clone(),
            covers[0].clone(),
            canonical_refinement(&tower[0]).unwrap().alpha,
        )
        .unwrap();
        let upper = RefinementMap::along(
            &tower[1],
            covers[2].clone(),
            covers[1].clone(),
            canonical_refinement(&tower[1]).unwrap().alpha,
        )
        .unwrap();
        let both = upper.then(&lower).unwrap();

        let gamma2 = last_vertex_iterate(&tower).unwrap();
        let alpha: Vec<u32> = both.alpha.iter().map(|&a| a as u32).collect();
        assert_eq!(alpha, gamma2.vertex_map());

        let direct = refinement_nerve_map(&both, &nerves[2], &nerves[0]).unwrap();
        let stepwise = refinement_nerve_map(&upper, &nerves[2], &nerves[1])
            .unwrap()
            .then(&refinement_nerve_map(&lower, &nerves[1], &nerves[0]).unwrap())
            .unwrap();
        assert_eq!(direct.images(), stepwise.images());
        assert!(direct.validate().is_empty());

        let id = RefinementMap::identity(covers[1].clone());
        let m = refinement_nerve_map(&id, &nerves[1], &nerves[1]).unwrap();
        assert_eq!(m.images(), SimplicialMap::identity(nerves[1].object.clone()).images());
    }
}
