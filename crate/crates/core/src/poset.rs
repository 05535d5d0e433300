//! Finite poset kernel: Hasse covers, order relation, chains, ranks,
//! intervals, and order ideals.
//!
//! Elements are opaque tokens (`Elem`): either a name or a strictly
//! increasing integer tuple. All operations are pure; a `Poset` is
//! immutable once built.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque element identifier. Serializes as a JSON string or an array of
/// integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Name(String),
    Tuple(Vec<u32>),
}

impl Elem {
    pub fn name(s: &str) -> Self {
        Elem::Name(s.to_string())
    }

    pub fn tuple(entries: &[u32]) -> Self {
        Elem::Tuple(entries.to_vec())
    }

    pub fn as_tuple(&self) -> Option<&[u32]> {
        match self {
            Elem::Tuple(t) => Some(t),
            Elem::Name(_) => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Name(s) => write!(f, "{s}"),
            Elem::Tuple(t) => {
                write!(f, "(")?;
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element: {0}")]
    DuplicateElement(String),
    #[error("cover references undeclared element: {0}")]
    UnknownElement(String),
    #[error("cover ({0}, {1}) relates an element to itself")]
    SelfCover(String, String),
    #[error("cover relation contains a directed cycle")]
    CycleDetected,
    #[error("cover ({0}, {1}) is implied by transitivity")]
    RedundantCover(String, String),
    #[error("poset is not bounded: {0}")]
    Unbounded(String),
    #[error("elements not comparable: {0} and {1}")]
    NotComparable(String, String),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
}

/// Result of the grading check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grading {
    /// All maximal chains have this length (number of covers).
    Graded(usize),
    NotGraded(String),
}

/// JSON schema for posets: `{"elements": [...], "covers": [[upper, lower], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<Elem>,
    pub covers: Vec<(Elem, Elem)>,
}

/// A finite poset given by its Hasse diagram. The order relation is the
/// reflexive-transitive closure of the covers.
#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<Elem>,
    index: HashMap<Elem, usize>,
    /// (upper, lower) pairs, by element index.
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    /// Row a = bitset of {x | x <= a}, in 64-bit blocks.
    down: Vec<Vec<u64>>,
    /// Linear extension: minimal elements first.
    topo: Vec<usize>,
}

fn block_count(n: usize) -> usize {
    n.div_ceil(64)
}

fn bit_get(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn bit_set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

impl Poset {
    /// Builds a validated poset. Rejects duplicate elements, unknown cover
    /// endpoints, cycles, and cover pairs implied by transitivity.
    pub fn new(elements: Vec<Elem>, cover_pairs: Vec<(Elem, Elem)>) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.to_string()));
            }
        }
        let mut covers = Vec::with_capacity(cover_pairs.len());
        for (upper, lower) in &cover_pairs {
            let u = *index
                .get(upper)
                .ok_or_else(|| PosetError::UnknownElement(upper.to_string()))?;
            let l = *index
                .get(lower)
                .ok_or_else(|| PosetError::UnknownElement(lower.to_string()))?;
            if u == l {
                return Err(PosetError::SelfCover(upper.to_string(), lower.to_string()));
            }
            covers.push((u, l));
        }
        Self::from_index_covers(elements, index, covers, true)
    }

    /// Internal constructor over element indices. When `check_irreducible`
    /// is false the covers are trusted to be a Hasse diagram.
    pub(crate) fn from_index_covers(
        labels: Vec<Elem>,
        index: HashMap<Elem, usize>,
        covers: Vec<(usize, usize)>,
        check_irreducible: bool,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(u, l) in &covers {
            lower_covers[u].push(l);
            upper_covers[l].push(u);
        }

        // Kahn topological sort on the upward digraph lower -> upper.
        let mut indeg: Vec<usize> = (0..n).map(|v| lower_covers[v].len()).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        queue.sort_unstable();
        let mut topo = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            topo.push(v);
            for &u in &upper_covers[v] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    queue.push(u);
                }
            }
        }
        if topo.len() != n {
            return Err(PosetError::CycleDetected);
        }

        let blocks = block_count(n);
        let mut down = vec![vec![0u64; blocks]; n];
        for &v in &topo {
            let mut row = vec![0u64; blocks];
            for &l in &lower_covers[v] {
                for (a, b) in row.iter_mut().zip(&down[l]) {
                    *a |= *b;
                }
            }
            bit_set(&mut row, v);
            down[v] = row;
        }

        if check_irreducible {
            for &(u, l) in &covers {
                // (u, l) is redundant iff some z distinct from both sits
                // strictly between them.
                for z in 0..n {
                    if z != u && z != l && bit_get(&down[u], z) && bit_get(&down[z], l) {
                        return Err(PosetError::RedundantCover(
                            labels[u].to_string(),
                            labels[l].to_string(),
                        ));
                    }
                }
            }
        }

        for lc in lower_covers.iter_mut() {
            lc.sort_unstable();
        }
        for uc in upper_covers.iter_mut() {
            uc.sort_unstable();
        }
        let mut covers = covers;
        covers.sort_unstable();

        Ok(Poset {
            labels,
            index,
            covers,
            lower_covers,
            upper_covers,
            down,
            topo,
        })
    }

    pub fn from_spec(spec: PosetSpec) -> Result<Self, PosetError> {
        Self::new(spec.elements, spec.covers)
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(u, l)| (self.labels[u].clone(), self.labels[l].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Elem {
        &self.labels[i]
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Cover pairs as (upper, lower) indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower_covers[v]
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.upper_covers[v]
    }

    /// a <= b in the order relation.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        bit_get(&self.down[b], a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// A linear extension (minimal elements first).
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.lower_covers[v].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.upper_covers[v].is_empty())
            .collect()
    }

    /// Unique (bottom, top) if the poset is bounded.
    pub fn bounds(&self) -> Result<(usize, usize), PosetError> {
        let mins = self.minimal_elements();
        let maxs = self.maximal_elements();
        if self.is_empty() {
            return Err(PosetError::Unbounded("poset is empty".into()));
        }
        if mins.len() != 1 {
            return Err(PosetError::Unbounded(format!(
                "{} minimal elements",
                mins.len()
            )));
        }
        if maxs.len() != 1 {
            return Err(PosetError::Unbounded(format!(
                "{} maximal elements",
                maxs.len()
            )));
        }
        Ok((mins[0], maxs[0]))
    }

    /// Graded(r) iff the poset is bounded and every maximal chain has
    /// length r.
    pub fn grading(&self) -> Grading {
        let (_, top) = match self.bounds() {
            Ok(b) => b,
            Err(e) => return Grading::NotGraded(e.to_string()),
        };
        // A bounded poset is graded iff a rank function compatible with
        // every cover exists.
        let mut rank = vec![usize::MAX; self.len()];
        for &v in &self.topo {
            let r = if self.lower_covers[v].is_empty() {
                0
            } else {
                let r0 = rank[self.lower_covers[v][0]] + 1;
                for &l in &self.lower_covers[v] {
                    if rank[l] + 1 != r0 {
                        return Grading::NotGraded(format!(
                            "element {} has lower covers of different ranks",
                            self.labels[v]
                        ));
                    }
                }
                r0
            };
            rank[v] = r;
        }
        // Every maximal chain ends at the top in a bounded poset, so rank
        // consistency plus equal rank at maximal-below-top elements is
        // exactly "all maximal chains have the same length".
        Grading::Graded(rank[top])
    }

    /// Rank of each element when the poset is graded.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        match self.grading() {
            Grading::Graded(_) => {
                let mut rank = vec![0usize; self.len()];
                for &v in &self.topo {
                    for &l in &self.lower_covers[v] {
                        rank[v] = rank[l] + 1;
                    }
                }
                Some(rank)
            }
            Grading::NotGraded(_) => None,
        }
    }

    /// Exact number of maximal chains from bottom to top, by dynamic
    /// programming over a linear extension.
    pub fn maximal_chain_count(&self) -> Result<BigUint, PosetError> {
        let (bottom, top) = self.bounds()?;
        let mut ways = vec![BigUint::zero(); self.len()];
        ways[bottom] = BigUint::one();
        for &v in &self.topo {
            if v == bottom {
                continue;
            }
            let mut acc = BigUint::zero();
            for &l in &self.lower_covers[v] {
                acc += &ways[l];
            }
            ways[v] = acc;
        }
        Ok(ways[top].clone())
    }

    /// The induced subposet {tau | mu <= tau <= lambda}.
    pub fn interval(&self, mu: usize, lambda: usize) -> Result<Poset, PosetError> {
        if !self.leq(mu, lambda) {
            return Err(PosetError::NotComparable(
                self.labels[mu].to_string(),
                self.labels[lambda].to_string(),
            ));
        }
        let subset: Vec<usize> = (0..self.len())
            .filter(|&v| self.leq(mu, v) && self.leq(v, lambda))
            .collect();
        Ok(self.induced(&subset))
    }

    /// Induced subposet on an element subset, with covers recomputed as the
    /// transitive reduction of the induced order.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let labels: Vec<Elem> = subset.iter().map(|&v| self.labels[v].clone()).collect();
        let index: HashMap<Elem, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let m = subset.len();
        let mut covers = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a == b || !self.leq(subset[a], subset[b]) {
                    continue;
                }
                let strictly_between = (0..m).any(|z| {
                    z != a
                        && z != b
                        && self.leq(subset[a], subset[z])
                        && self.leq(subset[z], subset[b])
                });
                if !strictly_between {
                    covers.push((b, a)); // (upper, lower)
                }
            }
        }
        Poset::from_index_covers(labels, index, covers, false)
            .expect("induced subposet of a poset is a poset")
    }

    /// All downward-closed subsets (including the empty set) as sorted
    /// index lists, in lexicographically canonical order. Guarded against
    /// outputs larger than 2^24 ideals.
    pub fn order_ideals(&self) -> Result<Vec<Vec<usize>>, PosetError> {
        const LIMIT: usize = 1 << 24;
        let n = self.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut member = vec![false; n];
        // Decide membership along a linear extension; an element may be
        // included only if all its lower covers already are.
        fn rec(
            p: &Poset,
            k: usize,
            member: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) -> Result<(), PosetError> {
            if k == p.topo.len() {
                if out.len() >= LIMIT {
                    return Err(PosetError::SizeLimitExceeded(format!(
                        "more than {LIMIT} order ideals"
                    )));
                }
                let mut ideal: Vec<usize> =
                    (0..p.len()).filter(|&v| member[v]).collect();
                ideal.sort_unstable();
                out.push(ideal);
                return Ok(());
            }
            let v = p.topo[k];
            // Exclude v.
            rec(p, k + 1, member, out)?;
            // Include v if permitted.
            if p.lower_covers[v].iter().all(|&l| member[l]) {
                member[v] = true;
                rec(p, k + 1, member, out)?;
                member[v] = false;
            }
            Ok(())
        }
        rec(self, 0, &mut member, &mut out)?;
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(k: usize) -> Poset {
        let elements: Vec<Elem> = (0..k).map(|i| Elem::name(&format!("c{i}"))).collect();
        let covers = (1..k)
            .map(|i| (Elem::name(&format!("c{i}")), Elem::name(&format!("c{}", i - 1))))
            .collect();
        Poset::new(elements, covers).unwrap()
    }

    pub(crate) fn diamond() -> Poset {
        let e = |s: &str| Elem::name(s);
        Poset::new(
            vec![e("0"), e("a"), e("b"), e("1")],
            vec![
                (e("a"), e("0")),
                (e("b"), e("0")),
                (e("1"), e("a")),
                (e("1"), e("b")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = Poset::new(vec![Elem::name("x")], vec![]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.grading(), Grading::Graded(0));
        assert_eq!(p.maximal_chain_count().unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn diamond_builds_and_grades() {
        let p = diamond();
        assert_eq!(p.grading(), Grading::Graded(2));
        assert_eq!(p.maximal_chain_count().unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn redundant_cover_rejected() {
        let e = |s: &str| Elem::name(s);
        let err = Poset::new(
            vec![e("0"), e("a"), e("1")],
            vec![(e("a"), e("0")), (e("1"), e("a")), (e("1"), e("0"))],
        )
        .unwrap_err();
        assert_eq!(err, PosetError::RedundantCover("1".into(), "0".into()));
    }

    #[test]
    fn cycle_rejected() {
        let e = |s: &str| Elem::name(s);
        let err = Poset::new(
            vec![e("a"), e("b")],
            vec![(e("a"), e("b")), (e("b"), e("a"))],
        )
        .unwrap_err();
        assert_eq!(err, PosetError::CycleDetected);
    }

    #[test]
    fn chain_of_four_graded() {
        assert_eq!(chain(4).grading(), Grading::Graded(3));
    }

    #[test]
    fn unequal_chain_lengths_not_graded() {
        // 0 < a < 1 and 0 < b < c < 1.
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
        assert!(matches!(p.grading(), Grading::NotGraded(_)));
    }

    #[test]
    fn chain_has_one_maximal_chain() {
        for k in 1..6 {
            assert_eq!(chain(k).maximal_chain_count().unwrap(), BigUint::one());
        }
    }

    #[test]
    fn interval_of_full_range_is_identity() {
        let p = diamond();
        let (b, t) = p.bounds().unwrap();
        let q = p.interval(b, t).unwrap();
        assert_eq!(q.len(), p.len());
        assert_eq!(q.covers().len(), p.covers().len());
    }

    #[test]
    fn interval_point_is_singleton() {
        let p = diamond();
        let a = p.index_of(&Elem::name("a")).unwrap();
        let q = p.interval(a, a).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn interval_incomparable_errors() {
        let p = diamond();
        let a = p.index_of(&Elem::name("a")).unwrap();
        let b = p.index_of(&Elem::name("b")).unwrap();
        assert!(matches!(
            p.interval(a, b),
            Err(PosetError::NotComparable(_, _))
        ));
    }

    #[test]
    fn order_ideal_counts() {
        // Antichain of 2: all four subsets.
        let e = |s: &str| Elem::name(s);
        let anti = Poset::new(vec![e("x"), e("y")], vec![]).unwrap();
        assert_eq!(anti.order_ideals().unwrap().len(), 4);
        // Chain of 3: four ideals.
        assert_eq!(chain(3).order_ideals().unwrap().len(), 4);
        // Diamond: six ideals.
        let ideals = diamond().order_ideals().unwrap();
        assert_eq!(ideals.len(), 6);
        assert!(ideals.contains(&vec![]));
    }

    #[test]
    fn order_ideals_closed_under_union_and_intersection() {
        let p = diamond();
        let ideals = p.order_ideals().unwrap();
        let as_set = |v: &Vec<usize>| v.iter().copied().collect::<std::collections::BTreeSet<_>>();
        let all: std::collections::BTreeSet<_> = ideals.iter().map(as_set).collect();
        for a in &all {
            for b in &all {
                let union: std::collections::BTreeSet<_> = a.union(b).copied().collect();
                let inter: std::collections::BTreeSet<_> = a.intersection(b).copied().collect();
                assert!(all.contains(&union));
                assert!(all.contains(&inter));
            }
        }
    }
}
