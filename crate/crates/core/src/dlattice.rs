//! Distributive lattices over the poset kernel: meet/join tables,
//! join/meet irreducibles, the Birkhoff correspondence, embedded
//! sublattices, diamonds, and the defining binomial equations of the
//! associated Hibi toric variety.


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poset::{Elem, Poset, PosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("not a lattice: {0} and {1} have no unique meet/join")]
    NotALattice(String, String),
    #[error("not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("({0}, {1}) is not a cover")]
    NotACover(String, String),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("subset is not an embedded sublattice")]
    NotEmbedded,
}

/// The join/meet-irreducible structure of a lattice. The bottom element
/// is counted among the join-irreducibles, so `#J` equals the number of
/// elements in any maximal chain.
#[derive(Debug, Clone)]
pub struct IrreducibleSets {
    /// Join-irreducibles as element indices, in linear-extension order.
    pub join_irr: Vec<usize>,
    /// Meet-irreducibles, in linear-extension order.
    pub meet_irr: Vec<usize>,
    /// Their intersection.
    pub both: Vec<usize>,
}

/// A diamond: an incomparable pair together with its join and meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub tau: usize,
    pub phi: usize,
    pub join: usize,
    pub meet: usize,
}

/// A finite bounded distributive lattice. Meet and join are total; the
/// lattice axioms and distributivity are verified at construction.
#[derive(Debug, Clone)]
pub struct DistributiveLattice {
    poset: Poset,
    bottom: usize,
    top: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
    irr: IrreducibleSets,
    /// Position in `irr.join_irr` for each join-irreducible element.
    jpos: Vec<Option<usize>>,
    /// Induced poset on the join-irreducibles (same label set).
    jposet: Poset,
    /// Birkhoff ideal of each element, as sorted positions into
    /// `irr.join_irr`.
    ideals: Vec<Vec<usize>>,
    /// Incomparable pairs (a, b, meet, join) with a < b as indices.
    incomparable: Vec<(usize, usize, usize, usize)>,
}

impl DistributiveLattice {
    /// Computes meet and join by order search, verifies the lattice axioms
    /// and distributivity, and assembles the Birkhoff data.
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let n = poset.len();
        let (bottom, top) = poset.bounds()?;
        let topo = poset.linear_extension().to_vec();
        let mut topo_pos = vec![0usize; n];
        for (k, &v) in topo.iter().enumerate() {
            topo_pos[v] = k;
        }

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = Self::extremum(&poset, &topo, a, b, true).ok_or_else(|| {
                    LatticeError::NotALattice(
                        poset.label(a).to_string(),
                        poset.label(b).to_string(),
                    )
                })?;
                let j = Self::extremum(&poset, &topo, a, b, false).ok_or_else(|| {
                    LatticeError::NotALattice(
                        poset.label(a).to_string(),
                        poset.label(b).to_string(),
                    )
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }

        let at = |t: &Vec<u32>, a: usize, b: usize| t[a * n + b] as usize;

        // Distributivity: full cubic scan up to 200 elements, a fixed
        // pseudorandom sample beyond.
        let check_triple = |x: usize, y: usize, z: usize| -> bool {
            at(&meet, x, at(&join, y, z)) == at(&join, at(&meet, x, y), at(&meet, x, z))
                && at(&join, x, at(&meet, y, z)) == at(&meet, at(&join, x, y), at(&join, x, z))
        };
        if n <= 200 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check_triple(x, y, z) {
                            return Err(LatticeError::NotDistributive(
                                poset.label(x).to_string(),
                                poset.label(y).to_string(),
                                poset.label(z).to_string(),
                            ));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..2_000_000 {
                let x = (next() % n as u64) as usize;
                let y = (next() % n as u64) as usize;
                let z = (next() % n as u64) as usize;
                if !check_triple(x, y, z) {
                    return Err(LatticeError::NotDistributive(
                        poset.label(x).to_string(),
                        poset.label(y).to_string(),
                        poset.label(z).to_string(),
                    ));
                }
            }
        }

        // Irreducibles by cover count; the bottom (zero lower covers) is a
        // join-irreducible, the top a meet-irreducible.
        let mut join_irr: Vec<usize> = topo
            .iter()
            .copied()
            .filter(|&v| poset.lower_covers(v).len() <= 1)
            .collect();
        let mut meet_irr: Vec<usize> = topo
            .iter()
            .copied()
            .filter(|&v| poset.upper_covers(v).len() <= 1)
            .collect();
        join_irr.sort_by_key(|&v| topo_pos[v]);
        meet_irr.sort_by_key(|&v| topo_pos[v]);
        let both: Vec<usize> = join_irr
            .iter()
            .copied()
            .filter(|v| meet_irr.contains(v))
            .collect();

        let mut jpos = vec![None; n];
        for (p, &v) in join_irr.iter().enumerate() {
            jpos[v] = Some(p);
        }
        let jposet = poset.induced(&join_irr);

        let ideals: Vec<Vec<usize>> = (0..n)
            .map(|alpha| {
                join_irr
                    .iter()
                    .enumerate()
                    .filter(|&(_, &z)| poset.leq(z, alpha))
                    .map(|(p, _)| p)
                    .collect()
            })
            .collect();

        let mut incomparable = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !poset.comparable(a, b) {
                    incomparable.push((a, b, at(&meet, a, b), at(&join, a, b)));
                }
            }
        }

        let irr = IrreducibleSets {
            join_irr,
            meet_irr,
            both,
        };
        Ok(DistributiveLattice {
            poset,
            bottom,
            top,
            meet,
            join,
            irr,
            jpos,
            jposet,
            ideals,
            incomparable,
        })
    }

    /// Unique greatest lower bound (or least upper bound) of a and b,
    /// if it exists.
    fn extremum(poset: &Poset, topo: &[usize], a: usize, b: usize, lower: bool) -> Option<usize> {
        let mut candidate = None;
        if lower {
            for &z in topo.iter().rev() {
                if poset.leq(z, a) && poset.leq(z, b) {
                    candidate = Some(z);
                    break;
                }
            }
            let c = candidate?;
            for z in 0..poset.len() {
                if poset.leq(z, a) && poset.leq(z, b) && !poset.leq(z, c) {
                    return None;
                }
            }
        } else {
            for &z in topo.iter() {
                if poset.leq(a, z) && poset.leq(b, z) {
                    candidate = Some(z);
                    break;
                }
            }
            let c = candidate?;
            for z in 0..poset.len() {
                if poset.leq(a, z) && poset.leq(b, z) && !poset.leq(c, z) {
                    return None;
                }
            }
        }
        candidate
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn irreducibles(&self) -> &IrreducibleSets {
        &self.irr
    }

    /// Number of join-irreducibles; equals the dimension of the Hibi
    /// variety and the element count of any maximal chain.
    pub fn dim(&self) -> usize {
        self.irr.join_irr.len()
    }

    /// The induced poset on the join-irreducibles.
    pub fn j_poset(&self) -> &Poset {
        &self.jposet
    }

    /// Position of element v within the join-irreducibles, if any.
    pub fn j_position(&self, v: usize) -> Option<usize> {
        self.jpos[v]
    }

    /// Birkhoff ideal of alpha: sorted positions (into `join_irr`) of the
    /// join-irreducibles below alpha.
    pub fn ideal_of(&self, alpha: usize) -> &[usize] {
        &self.ideals[alpha]
    }

    /// Inverse Birkhoff map: the element whose ideal is exactly the given
    /// set of join-irreducible positions, i.e. the join of its members
    /// (when the set is a nonempty downward-closed subset of J).
    pub fn element_of_ideal(&self, ideal: &[usize]) -> Option<usize> {
        if ideal.is_empty() {
            return None;
        }
        let mut acc = self.irr.join_irr[ideal[0]];
        for &p in &ideal[1..] {
            acc = self.join(acc, self.irr.join_irr[p]);
        }
        if self.ideals[acc] == ideal {
            Some(acc)
        } else {
            None
        }
    }

    /// The unique join-irreducible beta with I_tau = I_lambda ∪ {beta},
    /// for a cover (tau, lambda).
    pub fn cover_delta(&self, tau: usize, lambda: usize) -> Result<usize, LatticeError> {
        if !self.poset.covers().contains(&(tau, lambda)) {
            return Err(LatticeError::NotACover(
                self.poset.label(tau).to_string(),
                self.poset.label(lambda).to_string(),
            ));
        }
        let upper = &self.ideals[tau];
        let lower = &self.ideals[lambda];
        let diff: Vec<usize> = upper.iter().copied().filter(|p| !lower.contains(p)).collect();
        debug_assert_eq!(diff.len(), 1);
        Ok(self.irr.join_irr[diff[0]])
    }

    /// Incomparable pairs (a, b, meet, join), a < b by index.
    pub fn incomparable_pairs(&self) -> &[(usize, usize, usize, usize)] {
        &self.incomparable
    }

    /// True iff `subset` is closed under meet and join and has the
    /// pull-back property: whenever both the join and the meet of a pair
    /// lie in the subset, so does the pair. The empty set qualifies.
    pub fn is_embedded_sublattice(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &v in subset {
            member[v] = true;
        }
        // Comparable pairs are trivially fine; only incomparable pairs
        // carry a condition (in both directions).
        for &(a, b, m, j) in &self.incomparable {
            let pair_in = member[a] && member[b];
            let mj_in = member[m] && member[j];
            if pair_in != mj_in {
                return false;
            }
        }
        true
    }

    /// Every embedded sublattice, as sorted element-index lists in
    /// ascending bitmask order (so the empty set comes first and the full
    /// lattice last). Bitmask scan; requires at most 24 elements.
    pub fn enumerate_embedded_sublattices(&self) -> Result<Vec<Vec<usize>>, LatticeError> {
        let n = self.len();
        if n > 24 {
            return Err(LatticeError::SizeLimitExceeded(format!(
                "{n} elements; embedded-sublattice scan supports at most 24"
            )));
        }
        let pair_masks: Vec<(u32, u32)> = self
            .incomparable
            .iter()
            .map(|&(a, b, m, j)| ((1u32 << a) | (1 << b), (1u32 << m) | (1 << j)))
            .collect();
        let total: u64 = 1u64 << n;
        let workers = worker_count();
        let scan = |lo: u64, hi: u64| -> Vec<u32> {
            let mut found = Vec::new();
            'mask: for mask in lo..hi {
                let mask = mask as u32;
                for &(abm, mjm) in &pair_masks {
                    if (mask & abm == abm) != (mask & mjm == mjm) {
                        continue 'mask;
                    }
                }
                found.push(mask);
            }
            found
        };
        let masks: Vec<u32> = if workers <= 1 || total < 1 << 16 {
            scan(0, total)
        } else {
            let chunk = total.div_ceil(workers as u64);
            let mut results: Vec<Vec<u32>> = Vec::new();
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers as u64)
                    .map(|w| {
                        let lo = w * chunk;
                        let hi = (lo + chunk).min(total);
                        s.spawn(move || scan(lo, hi))
                    })
                    .collect();
                for h in handles {
                    results.push(h.join().expect("scan worker panicked"));
                }
            });
            results.concat()
        };
        Ok(masks
            .into_iter()
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
            .collect())
    }

    /// The 0/1 characteristic point of an element subset, as exact
    /// rationals indexed by the lattice.
    pub fn characteristic_point(&self, subset: &[usize]) -> Vec<BigRational> {
        let mut point = vec![BigRational::zero(); self.len()];
        for &v in subset {
            point[v] = BigRational::one();
        }
        point
    }

    /// All diamonds on which the point violates x_tau * x_phi =
    /// x_{tau v phi} * x_{tau ^ phi}. An empty result means the point lies
    /// on the Hibi variety.
    pub fn binomial_violations(&self, point: &[BigRational]) -> Vec<Diamond> {
        let mut out = Vec::new();
        for &(a, b, m, j) in &self.incomparable {
            let lhs = &point[a] * &point[b];
            let rhs = &point[j] * &point[m];
            if lhs != rhs {
                out.push(Diamond {
                    tau: a,
                    phi: b,
                    join: j,
                    meet: m,
                });
            }
        }
        out
    }

    /// Integer variant of `binomial_violations` for 0/1 points.
    pub fn binomial_violations_01(&self, point: &[u8]) -> Vec<Diamond> {
        let rational: Vec<BigRational> = point
            .iter()
            .map(|&x| BigRational::from(BigInt::from(x)))
            .collect();
        self.binomial_violations(&rational)
    }

    /// Looks up element indices for a list of labels.
    pub fn indices_of(&self, labels: &[Elem]) -> Option<Vec<usize>> {
        labels.iter().map(|e| self.poset.index_of(e)).collect()
    }
}

/// Worker count for exhaustive scans, from the HIBI_WORKERS environment
/// variable (default 1). Results are merged deterministically.
pub(crate) fn worker_count() -> usize {
    std::env::var("HIBI_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
        .min(64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Elem;

    pub(crate) fn chain_lattice(k: usize) -> DistributiveLattice {
        let elements: Vec<Elem> = (0..k).map(|i| Elem::name(&format!("c{i}"))).collect();
        let covers = (1..k)
            .map(|i| (Elem::name(&format!("c{i}")), Elem::name(&format!("c{}", i - 1))))
            .collect();
        DistributiveLattice::from_poset(Poset::new(elements, covers).unwrap()).unwrap()
    }

    pub(crate) fn diamond_lattice() -> DistributiveLattice {
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
    fn chain_is_a_lattice() {
        let l = chain_lattice(3);
        assert_eq!(l.dim(), 3);
        assert_eq!(l.irreducibles().join_irr.len(), 3);
    }

    #[test]
    fn diamond_is_distributive() {
        let l = diamond_lattice();
        assert_eq!(l.dim(), 3); // bottom, a, b
        let a = l.poset().index_of(&Elem::name("a")).unwrap();
        let b = l.poset().index_of(&Elem::name("b")).unwrap();
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(a, b), l.bottom());
    }

    #[test]
    fn pentagon_not_distributive() {
        // N5: 0 < a < 1 and 0 < b < c < 1.
        let e = |s: &str| Elem::name(s);
        let p = Poset::new(
            vec![e("0"), e("a"), e("b"), e("c"), e("1")],
            vec![
                (e("a"), e("0")),
                (e("b"), e("0")),
                (e("c"), e("b")),
                (e("1"), e("a")),
                (e("1"), e("c")),
            ],
        )
        .unwrap();
        assert!(matches!(
            DistributiveLattice::from_poset(p),
            Err(LatticeError::NotDistributive(_, _, _))
        ));
    }

    #[test]
    fn birkhoff_roundtrip_on_diamond() {
        let l = diamond_lattice();
        for alpha in 0..l.len() {
            let ideal = l.ideal_of(alpha).to_vec();
            assert_eq!(l.element_of_ideal(&ideal), Some(alpha));
        }
    }

    #[test]
    fn birkhoff_respects_join_and_meet() {
        let l = diamond_lattice();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let union: Vec<usize> = {
                    let mut u = l.ideal_of(a).to_vec();
                    u.extend_from_slice(l.ideal_of(b));
                    u.sort_unstable();
                    u.dedup();
                    u
                };
                let inter: Vec<usize> = l
                    .ideal_of(a)
                    .iter()
                    .copied()
                    .filter(|p| l.ideal_of(b).contains(p))
                    .collect();
                assert_eq!(l.ideal_of(l.join(a, b)), union.as_slice());
                assert_eq!(l.ideal_of(l.meet(a, b)), inter.as_slice());
            }
        }
    }

    #[test]
    fn cover_delta_on_chain() {
        let l = chain_lattice(3);
        let top = l.top();
        let prev = l.poset().lower_covers(top)[0];
        assert_eq!(l.cover_delta(top, prev).unwrap(), top);
        assert!(matches!(
            l.cover_delta(prev, top),
            Err(LatticeError::NotACover(_, _))
        ));
    }

    #[test]
    fn embedded_sublattices_of_chain_are_all_subsets() {
        let l = chain_lattice(4);
        let all = l.enumerate_embedded_sublattices().unwrap();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn embedded_enumeration_matches_definition_on_diamond() {
        let l = diamond_lattice();
        let listed = l.enumerate_embedded_sublattices().unwrap();
        let mut count = 0usize;
        for mask in 0u32..16 {
            let subset: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            if l.is_embedded_sublattice(&subset) {
                count += 1;
                assert!(listed.contains(&subset));
            }
        }
        assert_eq!(listed.len(), count);
        assert!(listed.contains(&vec![]));
        assert!(listed.contains(&vec![0, 1, 2, 3]));
    }

    #[test]
    fn binomial_violations_of_all_ones_point_is_empty() {
        let l = diamond_lattice();
        let all: Vec<usize> = (0..l.len()).collect();
        let p = l.characteristic_point(&all);
        assert!(l.binomial_violations(&p).is_empty());
    }

    #[test]
    fn characteristic_vector_detects_non_embedded_subsets() {
        let l = diamond_lattice();
        for sub in l.enumerate_embedded_sublattices().unwrap() {
            let p = l.characteristic_point(&sub);
            assert!(l.binomial_violations(&p).is_empty());
        }
        // {a, b} is not embedded: join and meet are outside.
        let a = l.poset().index_of(&Elem::name("a")).unwrap();
        let b = l.poset().index_of(&Elem::name("b")).unwrap();
        let p = l.characteristic_point(&[a, b]);
        assert!(!l.binomial_violations(&p).is_empty());
    }
}
