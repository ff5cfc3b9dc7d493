//! A small corpus of maps between finite simplicial sets, all truncated at
//! dimension 2, used by the audits and the corpus runner. Every map is small
//! enough that the weak Kan check at `n ≤ 2`, `i ≤ 2` finishes in seconds.

use std::sync::Arc;

use crate::builders::{
    boundary, cyclic_group, group_nerve, horn, inclusion, ordered_complex, point, quotient_d, standard,
};
use crate::error::Result;
use crate::format::Container;
use crate::map::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::subdivide::sd;

pub const FIXTURE_TRUNC: usize = 2;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub map: SimplicialMap,
}

fn arc(s: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(s)
}

fn edge_name(v: &[u32]) -> String {
    v.iter().map(|i| i.to_string()).fold("e".to_string(), |s, t| s + &t)
}

/// Four vertices `a, b, c, d` and the edges `ab`, `cd`, `ac`.
pub fn three_edges() -> Result<SimplicialSet> {
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    ordered_complex(&names, &[vec![0, 1], vec![2, 3], vec![0, 2]], FIXTURE_TRUNC, edge_name)
}

/// `X → Δ[1]` sending `a, c` to 0 and `b, d` to 1.
pub fn counterexample() -> Result<SimplicialMap> {
    let y = arc(standard(1, FIXTURE_TRUNC)?);
    SimplicialMap::from_vertex_map(arc(three_edges()?), y, &[0, 1, 0, 1])
}

fn to_point(x: SimplicialSet) -> Result<SimplicialMap> {
    SimplicialMap::terminal(arc(x), arc(point(FIXTURE_TRUNC)))
}

fn vertex_map(x: SimplicialSet, y: SimplicialSet, vm: &[u32]) -> Result<SimplicialMap> {
    SimplicialMap::from_vertex_map(arc(x), arc(y), vm)
}

/// The full corpus in a fixed order.
pub fn corpus() -> Result<Vec<Fixture>> {
    let t = FIXTURE_TRUNC;
    let d0 = || point(t);
    let d1 = || standard(1, t);
    let d2 = || standard(2, t);
    let z2 = || group_nerve(&cyclic_group(2), t);
    let z3 = || group_nerve(&cyclic_group(3), t);
    let fx = |name: &'static str, map: SimplicialMap| Fixture { name, map };

    let two_edges = {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        ordered_complex(&names, &[vec![0, 1], vec![2, 3]], t, edge_name)?
    };
    let two_points = {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        ordered_complex(&names, &[vec![0], vec![1]], t, edge_name)?
    };
    let sd1 = sd(&arc(d1()?));

    let out = vec![
        fx("id_point", SimplicialMap::identity(arc(d0()))),
        fx("id_interval", SimplicialMap::identity(arc(d1()?))),
        fx("interval_to_point", to_point(d1()?)?),
        fx("triangle_to_point", to_point(d2()?)?),
        fx("boundary2_to_point", to_point(boundary(2, t)?)?),
        fx("horn21_to_point", to_point(horn(2, 1, t)?)?),
        fx("horn21_into_triangle", inclusion(&arc(horn(2, 1, t)?), &arc(d2()?))?),
        fx("horn20_into_triangle", inclusion(&arc(horn(2, 0, t)?), &arc(d2()?))?),
        fx("boundary2_into_triangle", inclusion(&arc(boundary(2, t)?), &arc(d2()?))?),
        fx("interval_constant", vertex_map(d1()?, d1()?, &[0, 0])?),
        fx("vertex_into_interval", vertex_map(d0(), d1()?, &[0])?),
        fx("edge_into_triangle", vertex_map(d1()?, d2()?, &[0, 1])?),
        fx("counterexample", counterexample()?),
        fx("two_edges_over_interval", vertex_map(two_edges.clone(), d1()?, &[0, 1, 0, 1])?),
        fx("two_edges_to_point", to_point(two_edges)?),
        fx("three_edges_to_point", to_point(three_edges()?)?),
        fx("horn21_into_boundary2", inclusion(&arc(horn(2, 1, t)?), &arc(boundary(2, t)?))?),
        fx("two_points_to_point", to_point(two_points)?),
        fx("boundary1_into_interval", inclusion(&arc(boundary(1, t)?), &arc(d1()?))?),
        fx("z2_over_interval", SimplicialMap::constant(arc(z2()?), arc(d1()?), 0)),
        fx("z2_to_point", to_point(z2()?)?),
        fx("z3_to_point", to_point(z3()?)?),
        fx("point_into_z2", SimplicialMap::constant(arc(d0()), arc(z2()?), 0)),
        fx("last_vertex_interval", sd1.last_vertex()),
        fx("sd_interval_to_point", to_point(sd1.object.as_ref().clone())?),
        fx("boundary2_fold", vertex_map(boundary(2, t)?, d1()?, &[0, 1, 1])?),
        fx("quotient_d_to_point", to_point(quotient_d(t)?)?),
        fx("vertex_into_boundary2", vertex_map(d0(), boundary(2, t)?, &[0])?),
    ];
    Ok(out)
}

impl Fixture {
    /// A `MAP v1` container with sets `X`, `Y` and the map `f : X → Y`.
    pub fn to_container(&self) -> Container {
        let mut c = Container::new("MAP");
        c.add_set("X", self.map.domain().clone());
        c.add_set("Y", self.map.codomain().clone());
        c.add_map("f", "X", "Y", self.map.clone());
        c.add_meta("name", self.name);
        c
    }

    pub fn file_name(&self) -> String {
        format!("{}.sset", self.name)
    }
}

/// Looks a fixture up by name.
pub fn fixture(name: &str) -> Result<Option<Fixture>> {
    Ok(corpus()?.into_iter().find(|f| f.name == name))
}
