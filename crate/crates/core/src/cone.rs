//! The polyhedral cone of a Hibi toric variety: its generators indexed
//! by covers and maximal elements of the join-irreducible poset, the 0/1
//! functionals attached to Birkhoff ideals, face generator sets, the
//! face ↔ embedded-sublattice correspondence, distinguished points, the
//! marked subposet H(τ), and face/orbit dimensions.

use thiserror::Error;

use crate::dlattice::DistributiveLattice;
use crate::poset::{Elem, Grading};
use crate::smoothness::rational_rank;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("subset is not an embedded sublattice")]
    NotEmbedded,
    #[error("vector is not a cone generator: {0}")]
    NotGenerators(String),
    #[error("face sublattice is not graded: {0}")]
    GradingMismatch(String),
}

/// Integer vector in the lattice N, indexed by the join-irreducibles
/// (positions into `Cone::j_elements`).
pub type NVector = Vec<i64>;

/// A cone generator, recorded by provenance rather than coordinates.
/// Indices are positions in the join-irreducible poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// e_lower − e_upper for a cover (upper, lower) of the J-poset.
    CoverDiff { upper: usize, lower: usize },
    /// e_z for a maximal element z of the J-poset.
    MaxElem(usize),
}

/// The subposet H(τ) of the join-irreducibles spanned by the generators
/// of a face: its Hasse edges are exactly the surviving cover
/// differences, and vertices carrying a surviving e_z are marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoset {
    /// J-poset indices present, sorted.
    pub vertices: Vec<usize>,
    /// Surviving covers as (upper, lower) J-poset indices, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Vertices whose e_z generator survives, sorted.
    pub marked: Vec<usize>,
    /// Connected components (sorted vertex lists, ordered by minimum).
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceGeometry {
    /// Rank over the rationals of the face generators.
    pub face_dim: usize,
    /// Number of elements in a maximal chain of the face's sublattice.
    pub orbit_dim: usize,
    /// Number of join-irreducibles of the ambient lattice.
    pub ambient_dim: usize,
}

/// A face keyed canonically by its embedded sublattice D.
#[derive(Debug, Clone)]
pub struct Face {
    /// Sorted lattice-element indices of D.
    pub d: Vec<usize>,
    pub w: Vec<Gen>,
    pub geometry: FaceGeometry,
    pub h: HPoset,
}

/// The cone σ of X(L) with its generator list and the evaluation table
/// of every functional f_{I_α} against every generator.
pub struct Cone<'a> {
    lat: &'a DistributiveLattice,
    /// Join-irreducibles as lattice-element indices, in J-poset label
    /// order (ascending element index).
    j_elements: Vec<usize>,
    gens: Vec<Gen>,
    /// ideal[α][p] = true iff j_elements[p] ≤ α in L.
    ideal: Vec<Vec<bool>>,
}

impl<'a> Cone<'a> {
    pub fn new(lat: &'a DistributiveLattice) -> Self {
        let jp = lat.j_poset();
        let jn = jp.len();
        let j_elements: Vec<usize> = (0..jn)
            .map(|p| lat.poset().index_of(jp.label(p)).expect("J label in L"))
            .collect();

        // Deterministic generator order: covers of the J-poset sorted
        // along a linear extension, then maximal elements.
        let mut jpos_rank = vec![0usize; jn];
        for (k, &v) in jp.linear_extension().iter().enumerate() {
            jpos_rank[v] = k;
        }
        let mut covers: Vec<(usize, usize)> = jp.covers().to_vec();
        covers.sort_by_key(|&(u, l)| (jpos_rank[l], jpos_rank[u]));
        let mut gens: Vec<Gen> = covers
            .into_iter()
            .map(|(u, l)| Gen::CoverDiff { upper: u, lower: l })
            .collect();
        let mut maxs = jp.maximal_elements();
        maxs.sort_by_key(|&v| jpos_rank[v]);
        gens.extend(maxs.into_iter().map(Gen::MaxElem));

        let ideal: Vec<Vec<bool>> = (0..lat.len())
            .map(|alpha| {
                j_elements
                    .iter()
                    .map(|&z| lat.poset().leq(z, alpha))
                    .collect()
            })
            .collect();

        Cone {
            lat,
            j_elements,
            gens,
            ideal,
        }
    }

    pub fn lattice(&self) -> &DistributiveLattice {
        self.lat
    }

    /// Join-irreducibles as lattice-element indices, in J-poset order.
    pub fn j_elements(&self) -> &[usize] {
        &self.j_elements
    }

    pub fn ambient_dim(&self) -> usize {
        self.j_elements.len()
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    /// Coordinates of a generator in the basis e_z, z ∈ J.
    pub fn vector(&self, g: Gen) -> NVector {
        let mut v = vec![0i64; self.ambient_dim()];
        match g {
            Gen::CoverDiff { upper, lower } => {
                v[lower] = 1;
                v[upper] = -1;
            }
            Gen::MaxElem(z) => v[z] = 1,
        }
        v
    }

    pub fn vectors(&self, gens: &[Gen]) -> Vec<NVector> {
        gens.iter().map(|&g| self.vector(g)).collect()
    }

    /// f_{I_α}(v) = Σ_{z ∈ I_α} v(z) for an arbitrary vector.
    pub fn functional_eval(&self, alpha: usize, v: &[i64]) -> i64 {
        self.ideal[alpha]
            .iter()
            .zip(v)
            .filter(|(inside, _)| **inside)
            .map(|(_, x)| *x)
            .sum()
    }

    fn eval_gen(&self, alpha: usize, g: Gen) -> i64 {
        let row = &self.ideal[alpha];
        match g {
            Gen::CoverDiff { upper, lower } => row[lower] as i64 - row[upper] as i64,
            Gen::MaxElem(z) => row[z] as i64,
        }
    }

    fn require_embedded(&self, d: &[usize]) -> Result<(), ConeError> {
        if self.lat.is_embedded_sublattice(d) {
            Ok(())
        } else {
            Err(ConeError::NotEmbedded)
        }
    }

    /// W(τ) for the face keyed by the embedded sublattice D: the cone
    /// generators on which every f_{I_α}, α ∈ D, vanishes.
    pub fn face_generators(&self, d: &[usize]) -> Result<Vec<Gen>, ConeError> {
        self.require_embedded(d)?;
        Ok(self
            .gens
            .iter()
            .copied()
            .filter(|&g| d.iter().all(|&alpha| self.eval_gen(alpha, g) == 0))
            .collect())
    }

    /// The largest D whose functionals vanish on the given generators;
    /// inverse of `face_generators`.
    pub fn face_support(&self, gens: &[Gen]) -> Result<Vec<usize>, ConeError> {
        for g in gens {
            if !self.gens.contains(g) {
                return Err(ConeError::NotGenerators(format!("{g:?}")));
            }
        }
        let d: Vec<usize> = (0..self.lat.len())
            .filter(|&alpha| gens.iter().all(|&g| self.eval_gen(alpha, g) == 0))
            .collect();
        debug_assert!(self.lat.is_embedded_sublattice(&d));
        Ok(d)
    }

    /// The 0/1 coordinates of the distinguished point P_τ, indexed by the
    /// lattice: the characteristic vector of D.
    pub fn distinguished_point(&self, d: &[usize]) -> Result<Vec<u8>, ConeError> {
        self.require_embedded(d)?;
        let mut point = vec![0u8; self.lat.len()];
        for &alpha in d {
            point[alpha] = 1;
        }
        Ok(point)
    }

    fn h_poset_of_gens(&self, w: &[Gen]) -> HPoset {
        let jn = self.ambient_dim();
        let mut edges = Vec::new();
        let mut marked = Vec::new();
        let mut present = vec![false; jn];
        for &g in w {
            match g {
                Gen::CoverDiff { upper, lower } => {
                    edges.push((upper, lower));
                    present[upper] = true;
                    present[lower] = true;
                }
                Gen::MaxElem(z) => {
                    marked.push(z);
                    present[z] = true;
                }
            }
        }
        edges.sort_unstable();
        marked.sort_unstable();
        let vertices: Vec<usize> = (0..jn).filter(|&v| present[v]).collect();

        // Union-find over the undirected edge set.
        let mut parent: Vec<usize> = (0..jn).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(u, l) in &edges {
            let (ru, rl) = (find(&mut parent, u), find(&mut parent, l));
            parent[ru] = rl;
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; jn];
        for &v in &vertices {
            let r = find(&mut parent, v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = components.len();
                components.push(Vec::new());
            }
            components[root_slot[r]].push(v);
        }
        components.sort_by_key(|c| c[0]);

        HPoset {
            vertices,
            edges,
            marked,
            components,
        }
    }

    pub fn h_poset(&self, d: &[usize]) -> Result<HPoset, ConeError> {
        let w = self.face_generators(d)?;
        Ok(self.h_poset_of_gens(&w))
    }

    pub fn face_geometry(&self, d: &[usize]) -> Result<FaceGeometry, ConeError> {
        let w = self.face_generators(d)?;
        let face_dim = rational_rank(&self.vectors(&w));
        let orbit_dim = if d.is_empty() {
            0
        } else {
            let sub = self.lat.poset().induced(d);
            match sub.grading() {
                Grading::Graded(r) => r + 1,
                Grading::NotGraded(why) => return Err(ConeError::GradingMismatch(why)),
            }
        };
        Ok(FaceGeometry {
            face_dim,
            orbit_dim,
            ambient_dim: self.ambient_dim(),
        })
    }

    /// Full face record for the embedded sublattice D.
    pub fn face(&self, d: &[usize]) -> Result<Face, ConeError> {
        let mut d = d.to_vec();
        d.sort_unstable();
        d.dedup();
        let w = self.face_generators(&d)?;
        let geometry = self.face_geometry(&d)?;
        let h = self.h_poset_of_gens(&w);
        Ok(Face { d, w, geometry, h })
    }

    /// Human-readable form of a generator, e.g. "e(1,3)-e(2,3)" or
    /// "e(3,4)".
    pub fn gen_label(&self, g: Gen) -> String {
        let name = |p: usize| self.lat.poset().label(self.j_elements[p]).to_string();
        match g {
            Gen::CoverDiff { upper, lower } => format!("e{}-e{}", name(lower), name(upper)),
            Gen::MaxElem(z) => format!("e{}", name(z)),
        }
    }

    /// Looks up the generator e_lower − e_upper or e_z by labels.
    pub fn gen_by_labels(&self, positive: &Elem, negative: Option<&Elem>) -> Option<Gen> {
        let pos_of = |e: &Elem| {
            let v = self.lat.poset().index_of(e)?;
            self.j_elements.iter().position(|&z| z == v)
        };
        let p = pos_of(positive)?;
        let g = match negative {
            Some(neg) => Gen::CoverDiff {
                lower: p,
                upper: pos_of(neg)?,
            },
            None => Gen::MaxElem(p),
        };
        self.gens.contains(&g).then_some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dlattice::DistributiveLattice;
    use crate::grassmann::{counterexample_lattice, idn};
    use crate::poset::Poset;

    fn chain_lattice(k: usize) -> DistributiveLattice {
        let elements: Vec<Elem> = (0..k).map(|i| Elem::name(&format!("c{i}"))).collect();
        let covers = (1..k)
            .map(|i| (Elem::name(&format!("c{i}")), Elem::name(&format!("c{}", i - 1))))
            .collect();
        DistributiveLattice::from_poset(Poset::new(elements, covers).unwrap()).unwrap()
    }

    fn diamond_lattice() -> DistributiveLattice {
        let e = |s: &str| Elem::name(s);
        let p = Poset::new(
            vec![e("0"), e("a"), e("b"), e("1")],
            vec![
                (e("a"), e("0")),
                (e("b"), e("0")),
                (e("1"), e("a")),
                (e("1"), e("b")),
            ],
        )
        .unwrap();
        DistributiveLattice::from_poset(p).unwrap()
    }

    #[test]
    fn chain_generators_are_independent() {
        for k in 1..6 {
            let l = chain_lattice(k);
            let cone = Cone::new(&l);
            assert_eq!(cone.generators().len(), k);
            let vecs = cone.vectors(cone.generators());
            assert_eq!(rational_rank(&vecs), k);
        }
    }

    #[test]
    fn diamond_generators() {
        let l = diamond_lattice();
        let cone = Cone::new(&l);
        // J = {0, a, b}; covers (a,0), (b,0); maximal a, b.
        assert_eq!(cone.generators().len(), 4);
        let vecs = cone.vectors(cone.generators());
        assert_eq!(rational_rank(&vecs), 3);
        let diffs = cone
            .generators()
            .iter()
            .filter(|g| matches!(g, Gen::CoverDiff { .. }))
            .count();
        assert_eq!(diffs, 2);
    }

    #[test]
    fn i24_generator_counts() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        assert_eq!(cone.ambient_dim(), 5);
        assert_eq!(cone.generators().len(), 6);
        let maxs = cone
            .generators()
            .iter()
            .filter(|g| matches!(g, Gen::MaxElem(_)))
            .count();
        assert_eq!(maxs, 1);
    }

    #[test]
    fn functional_eval_examples() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let top = l.top();
        for &g in cone.generators() {
            if let Gen::MaxElem(_) = g {
                assert_eq!(cone.functional_eval(top, &cone.vector(g)), 1);
            }
        }
        let g = cone
            .gen_by_labels(&Elem::tuple(&[1, 3]), Some(&Elem::tuple(&[2, 3])))
            .unwrap();
        let v = cone.vector(g);
        let a12 = l.poset().index_of(&Elem::tuple(&[1, 2])).unwrap();
        let a13 = l.poset().index_of(&Elem::tuple(&[1, 3])).unwrap();
        assert_eq!(cone.functional_eval(a12, &v), 0);
        assert_eq!(cone.functional_eval(a13, &v), 1);
    }

    #[test]
    fn face_generators_extremes() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let all: Vec<usize> = (0..l.len()).collect();
        assert_eq!(cone.face_generators(&all).unwrap(), vec![]);
        assert_eq!(
            cone.face_generators(&[]).unwrap(),
            cone.generators().to_vec()
        );
    }

    #[test]
    fn face_generators_rejects_non_embedded() {
        let l = diamond_lattice();
        let cone = Cone::new(&l);
        let a = l.poset().index_of(&Elem::name("a")).unwrap();
        let b = l.poset().index_of(&Elem::name("b")).unwrap();
        assert_eq!(cone.face_generators(&[a, b]), Err(ConeError::NotEmbedded));
    }

    #[test]
    fn window_face_of_i24() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let d = l
            .indices_of(&[Elem::tuple(&[1, 2]), Elem::tuple(&[3, 4])])
            .unwrap();
        let w = cone.face_generators(&d).unwrap();
        let mut labels: Vec<String> = w.iter().map(|&g| cone.gen_label(g)).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![
                "e(1,3)-e(1,4)",
                "e(1,3)-e(2,3)",
                "e(1,4)-e(3,4)",
                "e(2,3)-e(3,4)"
            ]
        );
        let geom = cone.face_geometry(&d).unwrap();
        assert_eq!(geom, FaceGeometry { face_dim: 3, orbit_dim: 2, ambient_dim: 5 });
        // Round trip back to D.
        assert_eq!(cone.face_support(&w).unwrap(), d);
        // H(τ) is a single 4-vertex, 4-edge diamond with no marks.
        let h = cone.h_poset(&d).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.edges.len(), 4);
        assert!(h.marked.is_empty());
        assert_eq!(h.components.len(), 1);
    }

    #[test]
    fn face_support_extremes() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let all: Vec<usize> = (0..l.len()).collect();
        assert_eq!(cone.face_support(&[]).unwrap(), all);
        assert_eq!(
            cone.face_support(&cone.generators().to_vec()).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn distinguished_points_lie_on_the_variety() {
        for l in [diamond_lattice(), idn(2, 4).unwrap()] {
            let cone = Cone::new(&l);
            for d in l.enumerate_embedded_sublattices().unwrap() {
                let p = cone.distinguished_point(&d).unwrap();
                assert!(l.binomial_violations_01(&p).is_empty());
            }
        }
    }

    #[test]
    fn round_trip_on_all_embedded_sublattices() {
        for l in [chain_lattice(4), diamond_lattice(), idn(2, 4).unwrap(), idn(2, 5).unwrap()] {
            let cone = Cone::new(&l);
            for d in l.enumerate_embedded_sublattices().unwrap() {
                let w = cone.face_generators(&d).unwrap();
                assert_eq!(cone.face_support(&w).unwrap(), d);
            }
        }
    }

    #[test]
    fn face_dim_plus_orbit_dim_is_ambient() {
        for l in [chain_lattice(3), diamond_lattice(), idn(2, 4).unwrap()] {
            let cone = Cone::new(&l);
            for d in l.enumerate_embedded_sublattices().unwrap() {
                if d.is_empty() {
                    continue;
                }
                let g = cone.face_geometry(&d).unwrap();
                assert_eq!(g.face_dim + g.orbit_dim, g.ambient_dim, "D={d:?}");
            }
        }
    }

    #[test]
    fn full_lattice_face_geometry() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let all: Vec<usize> = (0..l.len()).collect();
        let g = cone.face_geometry(&all).unwrap();
        assert_eq!(g, FaceGeometry { face_dim: 0, orbit_dim: 5, ambient_dim: 5 });
        assert!(cone.h_poset(&all).unwrap().vertices.is_empty());
    }

    #[test]
    fn counterexample_face_w() {
        let l = counterexample_lattice();
        let cone = Cone::new(&l);
        let d = l.indices_of(&[Elem::tuple(&[1, 5, 6])]).unwrap();
        let w = cone.face_generators(&d).unwrap();
        let mut labels: Vec<String> = w.iter().map(|&g| cone.gen_label(g)).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![
                "e(1,3,4)-e(1,3,5)",
                "e(1,3,5)-e(1,3,6)",
                "e(1,3,5)-e(1,4,5)",
                "e(1,3,6)-e(1,5,6)",
                "e(1,4,5)-e(1,5,6)",
                "e(2,3,4)"
            ]
        );
        let geom = cone.face_geometry(&d).unwrap();
        assert_eq!(geom, FaceGeometry { face_dim: 5, orbit_dim: 1, ambient_dim: 6 });
        // The five difference generators alone already span only rank 4.
        let diffs: Vec<NVector> = w
            .iter()
            .filter(|g| matches!(g, Gen::CoverDiff { .. }))
            .map(|&g| cone.vector(g))
            .collect();
        assert_eq!(diffs.len(), 5);
        assert_eq!(rational_rank(&diffs), 4);
    }

    #[test]
    fn generator_entries_are_signed_units() {
        let l = idn(3, 6).unwrap();
        let cone = Cone::new(&l);
        for &g in cone.generators() {
            let v = cone.vector(g);
            assert!(v.iter().all(|&x| (-1..=1).contains(&x)));
            match g {
                Gen::CoverDiff { .. } => {
                    assert_eq!(v.iter().filter(|&&x| x == 1).count(), 1);
                    assert_eq!(v.iter().filter(|&&x| x == -1).count(), 1);
                }
                Gen::MaxElem(_) => {
                    assert_eq!(v.iter().filter(|&&x| x != 0).count(), 1);
                }
            }
        }
    }
}
