//! Simplicial maps between finite simplicial sets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::{mask_of_surjection, Gen, SimplexRef};
use crate::sset::SimplicialSet;

/// A simplicial map, given by the image of every domain generator up to
/// `min(domain.max_dim, codomain.max_dim)`.
#[derive(Clone)]
pub struct SimplicialMap {
    domain: Arc<SimplicialSet>,
    codomain: Arc<SimplicialSet>,
    images: Vec<Vec<SimplexRef>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain)
            && (Arc::ptr_eq(&self.codomain, &other.codomain) || self.codomain == other.codomain)
    }
}

impl Eq for SimplicialMap {}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for g in self.domain.all_gens().filter(|g| g.dim() <= self.defined_dim()) {
            m.entry(&self.domain.name(g), &self.codomain.ref_to_string(self.image(g)));
        }
        m.finish()
    }
}

impl SimplicialMap {
    /// Builds and validates a map from per-dimension image lists.
    pub fn new(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        let map = Self::new_unchecked(domain, codomain, images);
        if let Some(problem) = map.validate().into_iter().next() {
            return Err(Error::InvalidMap(problem));
        }
        Ok(map)
    }

    pub fn new_unchecked(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        mut images: Vec<Vec<SimplexRef>>,
    ) -> Self {
        let top = domain.max_dim().min(codomain.max_dim());
        images.resize(top + 1, Vec::new());
        SimplicialMap { domain, codomain, images }
    }

    /// Builds a map from a closure on generators.
    pub fn from_fn(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        mut f: impl FnMut(Gen) -> SimplexRef,
    ) -> Result<Self> {
        let top = domain.max_dim().min(codomain.max_dim());
        let images = (0..=top).map(|k| domain.gens(k).map(&mut f).collect()).collect();
        Self::new(domain, codomain, images)
    }

    /// The map determined by a vertex function; the codomain must be
    /// complex-like and every simplex must land on a simplex.
    pub fn from_vertex_map(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        vertex_map: &[u32],
    ) -> Result<Self> {
        if !codomain.is_complex_like() {
            return Err(Error::Precondition("vertex maps need a complex-like codomain".into()));
        }
        let top = domain.max_dim().min(codomain.max_dim());
        let mut images = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut level = Vec::with_capacity(domain.count(k));
            for g in domain.gens(k) {
                let tuple: Vec<u32> =
                    domain.gen_vertices(g).iter().map(|&v| vertex_map[v as usize]).collect();
                let y = codomain.simplex_with_vertices(&tuple).ok_or_else(|| {
                    Error::InvalidMap(format!("`{}` has no image simplex", domain.name(g)))
                })?;
                level.push(y);
            }
            images.push(level);
        }
        Self::new(domain, codomain, images)
    }

    pub fn identity(set: Arc<SimplicialSet>) -> Self {
        let images = (0..=set.max_dim())
            .map(|k| set.gens(k).map(SimplexRef::nondegenerate).collect())
            .collect();
        SimplicialMap { domain: set.clone(), codomain: set, images }
    }

    /// The unique map to a one-point set.
    pub fn terminal(domain: Arc<SimplicialSet>, point: Arc<SimplicialSet>) -> Result<Self> {
        if point.count(0) != 1 || point.all_gens().count() != 1 {
            return Err(Error::Precondition("codomain is not a point".into()));
        }
        let v = SimplexRef::nondegenerate(Gen::new(0, 0));
        let top = domain.max_dim().min(point.max_dim());
        let images = (0..=top)
            .map(|k| {
                let deg = if k == 0 { 0 } else { (1u32 << k) - 1 };
                vec![SimplexRef { gen: v.gen, mask: deg }; domain.count(k)]
            })
            .collect();
        Ok(SimplicialMap { domain, codomain: point, images })
    }

    /// The constant map at a vertex.
    pub fn constant(domain: Arc<SimplicialSet>, codomain: Arc<SimplicialSet>, vertex: usize) -> Self {
        let top = domain.max_dim().min(codomain.max_dim());
        let images = (0..=top)
            .map(|k| {
                let mask = if k == 0 { 0 } else { (1u32 << k) - 1 };
                vec![SimplexRef { gen: Gen::new(0, vertex), mask }; domain.count(k)]
            })
            .collect();
        SimplicialMap { domain, codomain, images }
    }

    pub fn domain(&self) -> &Arc<SimplicialSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialSet> {
        &self.codomain
    }

    /// Highest dimension on which the map is defined.
    pub fn defined_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn images(&self) -> &[Vec<SimplexRef>] {
        &self.images
    }

    pub fn image(&self, g: Gen) -> SimplexRef {
        self.images[g.dim()][g.index()]
    }

    /// Image of an arbitrary simplex of the domain.
    pub fn apply(&self, x: SimplexRef) -> SimplexRef {
        let y = self.image(x.gen);
        if x.mask == 0 {
            return y;
        }
        if y.mask == 0 {
            return SimplexRef { gen: y.gen, mask: x.mask };
        }
        let theta = x.surjection();
        let psi = y.surjection();
        let composite: Vec<usize> = theta.iter().map(|&t| psi[t]).collect();
        SimplexRef { gen: y.gen, mask: mask_of_surjection(&composite) }
    }

    /// Vertex function, by domain vertex index.
    pub fn vertex_map(&self) -> Vec<u32> {
        self.images[0].iter().map(|y| y.gen.index).collect()
    }

    /// Lists every generator on which faces fail to commute or whose image is malformed.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for (k, level) in self.images.iter().enumerate() {
            if level.len() != self.domain.count(k) {
                report.push(format!(
                    "dimension {k}: {} images for {} generators",
                    level.len(),
                    self.domain.count(k)
                ));
                return report;
            }
        }
        for (k, level) in self.images.iter().enumerate() {
            for (idx, &y) in level.iter().enumerate() {
                let g = Gen::new(k, idx);
                if y.dim() != k || !self.codomain.contains(y) {
                    report.push(format!("`{}` has an image of the wrong shape", self.domain.name(g)));
                    continue;
                }
                if k == 0 {
                    continue;
                }
                for (j, &face) in self.domain.gen_faces(g).iter().enumerate() {
                    let lhs = self.apply(face);
                    let rhs = self.codomain.face_of(y, j);
                    if lhs != rhs {
                        report.push(format!(
                            "`{}`: f(d{j}) = {} but d{j} f = {}",
                            self.domain.name(g),
                            self.codomain.ref_to_string(lhs),
                            self.codomain.ref_to_string(rhs)
                        ));
                    }
                }
            }
        }
        report
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if !(Arc::ptr_eq(&self.codomain, &next.domain) || *self.codomain == *next.domain) {
            return Err(Error::InvalidMap("composite of non-composable maps".into()));
        }
        let top = self.domain.max_dim().min(next.codomain.max_dim()).min(self.defined_dim());
        let top = top.min(next.defined_dim());
        let images = (0..=top)
            .map(|k| self.images[k].iter().map(|&y| next.apply(y)).collect())
            .collect();
        Ok(SimplicialMap::new_unchecked(self.domain.clone(), next.codomain.clone(), images))
    }

    /// Restriction along a map into the domain: `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        first.then(self)
    }

    /// True when the map is injective on generators and never sends a
    /// non-degenerate simplex to a degenerate one.
    pub fn is_monomorphism(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|y| y.mask == 0 && seen.insert(y.gen))
    }

    /// True when every codomain generator (up to the defined dimension) is hit
    /// by exactly one domain generator, non-degenerately.
    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism()
            && (0..=self.defined_dim()).all(|k| self.images[k].len() == self.codomain.count(k))
            && (self.defined_dim() + 1..=self.codomain.max_dim()).all(|k| self.codomain.count(k) == 0)
            && (self.defined_dim() + 1..=self.domain.max_dim()).all(|k| self.domain.count(k) == 0)
    }

    /// Same images, with a replacement codomain of identical structure
    /// (used to re-anchor maps to a shared `Arc`).
    pub fn with_sets(&self, domain: Arc<SimplicialSet>, codomain: Arc<SimplicialSet>) -> Result<Self> {
        if *domain != *self.domain || *codomain != *self.codomain {
            return Err(Error::InvalidMap("replacement sets differ".into()));
        }
        Ok(SimplicialMap { domain, codomain, images: self.images.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn identity_validates_and_composes() {
        let d2 = Arc::new(builders::standard(2, 3).unwrap());
        let id = SimplicialMap::identity(d2.clone());
        assert!(id.validate().is_empty());
        assert_eq!(id.then(&id).unwrap(), id);
    }

    #[test]
    fn vertex_map_into_standard() {
        let d1 = Arc::new(builders::standard(1, 2).unwrap());
        let d2 = Arc::new(builders::standard(2, 2).unwrap());
        let f = SimplicialMap::from_vertex_map(d1.clone(), d2.clone(), &[0, 2]).unwrap();
        assert_eq!(d2.ref_to_string(f.image(Gen::new(1, 0))), "e02");
        let g = SimplicialMap::from_vertex_map(d1, d2.clone(), &[1, 1]).unwrap();
        assert_eq!(d2.ref_to_string(g.image(Gen::new(1, 0))), "s0v1");
    }

    #[test]
    fn bad_map_is_rejected() {
        let d1 = Arc::new(builders::standard(1, 1).unwrap());
        let images = vec![
            vec![SimplexRef::nondegenerate(Gen::new(0, 0)); 2],
            vec![SimplexRef::nondegenerate(Gen::new(1, 0))],
        ];
        assert!(SimplicialMap::new(d1.clone(), d1, images).is_err());
    }
}
