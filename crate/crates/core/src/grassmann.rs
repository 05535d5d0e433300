//! Constructors and classifiers for the lattice I_{d,n} of strictly
//! increasing d-tuples in [1, n]: the lattice itself, the segment
//! classification of irreducibles, the singular windows, J-block faces
//! (d = 2), and the 12-element interval lattice used as the criterion
//! counter-example.

use std::collections::HashMap;

use thiserror::Error;

use crate::dlattice::{DistributiveLattice, LatticeError};
use crate::poset::{Elem, Poset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("bad parameters: require 1 <= d < n, got d={0}, n={1}")]
    BadParameters(u32, u32),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("J-blocks must be pairwise non-intersecting and non-consecutive")]
    BlocksOverlapOrTouch,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A strictly increasing d-tuple in [1, n].
pub type GrassTuple = Vec<u32>;

/// How an element of I_{d,n} sits among the irreducibles, by the segment
/// criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    JoinIrr,
    MeetIrr,
    Both,
    Neither,
}

/// The window data of the singular face sigma_{ij}.
#[derive(Debug, Clone)]
pub struct SingularWindow {
    pub d: u32,
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub mu: GrassTuple,
    pub lambda: GrassTuple,
    /// The two covers of mu in the poset of join-irreducibles
    /// (a is the lexicographically larger one) and their join c.
    pub a: GrassTuple,
    pub b: GrassTuple,
    pub c: GrassTuple,
    /// The embedded sublattice L \ [mu, lambda], as tuples.
    pub lij: Vec<GrassTuple>,
}

/// A J-block specification in I_{2,n}: the face sigma_{i,1} ∪ ... ∪
/// sigma_{i+k,1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JBlockSpec {
    pub n: u32,
    pub i: u32,
    pub k: u32,
}

fn tuples(d: u32, n: u32) -> Vec<GrassTuple> {
    // All strictly increasing d-tuples in lexicographic order, which is a
    // linear extension of the componentwise order.
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=d).collect();
    loop {
        out.push(cur.clone());
        // Next combination.
        let d = d as usize;
        let mut k = d;
        while k > 0 && cur[k - 1] == n - (d - k) as u32 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        cur[k - 1] += 1;
        for t in k..d {
            cur[t] = cur[t - 1] + 1;
        }
    }
    out
}

fn leq_tuple(x: &[u32], y: &[u32]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

/// The distributive lattice I_{d,n}, with join and meet the componentwise
/// maximum and minimum.
pub fn idn(d: u32, n: u32) -> Result<DistributiveLattice, GrassmannError> {
    if d < 1 || d >= n {
        return Err(GrassmannError::BadParameters(d, n));
    }
    let ts = tuples(d, n);
    let labels: Vec<Elem> = ts.iter().map(|t| Elem::Tuple(t.clone())).collect();
    let index: HashMap<Elem, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    // The entry sum grades the lattice, so covers are exactly the
    // componentwise-<= pairs whose sums differ by one.
    let mut covers = Vec::new();
    for (bi, b) in ts.iter().enumerate() {
        for (ai, a) in ts.iter().enumerate() {
            if ai == bi {
                continue;
            }
            let sa: u32 = a.iter().sum();
            let sb: u32 = b.iter().sum();
            if sa + 1 == sb && leq_tuple(a, b) {
                covers.push((bi, ai));
            }
        }
    }
    let poset = Poset::from_index_covers(labels, index, covers, false)
        .expect("componentwise order on tuples is a poset");
    Ok(DistributiveLattice::from_poset(poset)?)
}

/// Maximal runs of consecutive integers in a strictly increasing tuple.
pub fn segments(x: &[u32]) -> Vec<Vec<u32>> {
    let mut segs: Vec<Vec<u32>> = Vec::new();
    for &v in x {
        match segs.last_mut() {
            Some(s) if *s.last().unwrap() + 1 == v => s.push(v),
            _ => segs.push(vec![v]),
        }
    }
    segs
}

/// Segment classification of an element of I_{d,n}: a single segment is
/// both join- and meet-irreducible; two segments are join-irreducible
/// when the first starts at 1 and meet-irreducible when the second ends
/// at n.
pub fn classify_element(d: u32, n: u32, x: &[u32]) -> Result<Classification, GrassmannError> {
    validate_tuple(d, n, x)?;
    let segs = segments(x);
    let (join, meet) = match segs.len() {
        1 => (true, true),
        2 => (segs[0][0] == 1, *segs[1].last().unwrap() == n),
        _ => (false, false),
    };
    Ok(match (join, meet) {
        (true, true) => Classification::Both,
        (true, false) => Classification::JoinIrr,
        (false, true) => Classification::MeetIrr,
        (false, false) => Classification::Neither,
    })
}

fn validate_tuple(d: u32, n: u32, x: &[u32]) -> Result<(), GrassmannError> {
    let ok = x.len() == d as usize
        && x.windows(2).all(|w| w[0] < w[1])
        && x.first().is_some_and(|&a| a >= 1)
        && x.last().is_some_and(|&b| b <= n);
    if ok {
        Ok(())
    } else {
        Err(GrassmannError::IndexOutOfRange(format!(
            "{x:?} is not a strictly increasing {d}-tuple in [1, {n}]"
        )))
    }
}

/// mu_{ij} = (1..j, i+j+1..i+d).
pub fn window_mu(d: u32, i: u32, j: u32) -> GrassTuple {
    let mut t: Vec<u32> = (1..=j).collect();
    t.extend(i + j + 1..=i + d);
    t
}

/// lambda_{ij} = (i+1..i+j, n+1+j-d..n).
pub fn window_lambda(d: u32, n: u32, i: u32, j: u32) -> GrassTuple {
    let mut t: Vec<u32> = (i + 1..=i + j).collect();
    t.extend(n + 1 + j - d..=n);
    t
}

/// Builds the singular window sigma_{ij} data inside a prebuilt I_{d,n}.
pub fn singular_window_in(
    lat: &DistributiveLattice,
    d: u32,
    n: u32,
    i: u32,
    j: u32,
) -> Result<SingularWindow, GrassmannError> {
    if !(1 <= i && i <= n.saturating_sub(d + 1) && 1 <= j && j <= d.saturating_sub(1)) {
        return Err(GrassmannError::IndexOutOfRange(format!(
            "require 1 <= i <= n-d-1 and 1 <= j <= d-1, got i={i}, j={j} for (d,n)=({d},{n})"
        )));
    }
    let mu = window_mu(d, i, j);
    let lambda = window_lambda(d, n, i, j);
    let jp = lat.j_poset();
    let mu_j = jp
        .index_of(&Elem::Tuple(mu.clone()))
        .expect("mu is join-irreducible");
    // The two covers of mu in the join-irreducible poset.
    let mut ups: Vec<GrassTuple> = jp
        .upper_covers(mu_j)
        .iter()
        .map(|&v| jp.label(v).as_tuple().unwrap().to_vec())
        .collect();
    ups.sort();
    debug_assert_eq!(ups.len(), 2);
    let b = ups[0].clone();
    let a = ups[1].clone();
    // c = join of a and b within the join-irreducible poset: the unique
    // minimal common upper bound.
    let ai = jp.index_of(&Elem::Tuple(a.clone())).unwrap();
    let bi = jp.index_of(&Elem::Tuple(b.clone())).unwrap();
    let mut uppers: Vec<usize> = (0..jp.len())
        .filter(|&v| jp.leq(ai, v) && jp.leq(bi, v))
        .collect();
    uppers.retain(|&v| {
        !(0..jp.len()).any(|z| z != v && jp.leq(ai, z) && jp.leq(bi, z) && jp.leq(z, v))
    });
    debug_assert_eq!(uppers.len(), 1);
    let c = jp.label(uppers[0]).as_tuple().unwrap().to_vec();

    let mu_l = lat.poset().index_of(&Elem::Tuple(mu.clone())).unwrap();
    let lambda_l = lat.poset().index_of(&Elem::Tuple(lambda.clone())).unwrap();
    let lij: Vec<GrassTuple> = (0..lat.len())
        .filter(|&v| !(lat.poset().leq(mu_l, v) && lat.poset().leq(v, lambda_l)))
        .map(|v| lat.poset().label(v).as_tuple().unwrap().to_vec())
        .collect();
    debug_assert!({
        let idx: Vec<usize> = lij
            .iter()
            .map(|t| lat.poset().index_of(&Elem::Tuple(t.clone())).unwrap())
            .collect();
        lat.is_embedded_sublattice(&idx)
    });
    Ok(SingularWindow {
        d,
        n,
        i,
        j,
        mu,
        lambda,
        a,
        b,
        c,
        lij,
    })
}

/// Convenience constructor that builds I_{d,n} internally.
pub fn singular_window(d: u32, n: u32, i: u32, j: u32) -> Result<SingularWindow, GrassmannError> {
    let lat = idn(d, n)?;
    singular_window_in(&lat, d, n, i, j)
}

fn interval_tuples(n: u32, lo: (u32, u32), hi: (u32, u32)) -> Vec<GrassTuple> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in a + 1..=n {
            if a >= lo.0 && b >= lo.1 && a <= hi.0 && b <= hi.1 {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

/// The embedded sublattice D_tau of a single J-block in I_{2,n}:
/// [(1,2),(i,i+1)] ∪ [(i+k+2,i+k+3),(n-1,n)].
pub fn jblock_face(n: u32, i: u32, k: u32) -> Result<Vec<GrassTuple>, GrassmannError> {
    jblock_union_face(n, &[(i, k)])
}

/// The embedded sublattice of a union of pairwise non-intersecting,
/// non-consecutive J-blocks in I_{2,n}: consecutive intervals
/// [(1,2),(i_1,i_1+1)] ∪ [(i_1+k_1+2, i_1+k_1+3),(i_2,i_2+1)] ∪ ... ∪
/// [(i_s+k_s+2, i_s+k_s+3),(n-1,n)].
pub fn jblock_union_face(n: u32, blocks: &[(u32, u32)]) -> Result<Vec<GrassTuple>, GrassmannError> {
    if n < 4 || blocks.is_empty() {
        return Err(GrassmannError::IndexOutOfRange(format!(
            "need n >= 4 and at least one block, got n={n}"
        )));
    }
    for &(i, k) in blocks {
        if !(1 <= i && i <= n - 3 && k <= n - i - 3) {
            return Err(GrassmannError::IndexOutOfRange(format!(
                "block (i={i}, k={k}) out of range for n={n}"
            )));
        }
    }
    for w in blocks.windows(2) {
        let (i1, k1) = w[0];
        let (i2, _) = w[1];
        if i1 + k1 + 1 >= i2 {
            return Err(GrassmannError::BlocksOverlapOrTouch);
        }
    }
    let mut d = Vec::new();
    let (i1, _) = blocks[0];
    d.extend(interval_tuples(n, (1, 2), (i1, i1 + 1)));
    for t in 0..blocks.len() {
        let (it, kt) = blocks[t];
        let lo = (it + kt + 2, it + kt + 3);
        let hi = if t + 1 < blocks.len() {
            let (inext, _) = blocks[t + 1];
            (inext, inext + 1)
        } else {
            (n - 1, n)
        };
        d.extend(interval_tuples(n, lo, hi));
    }
    d.sort();
    d.dedup();
    Ok(d)
}

/// Enumerates all valid J-block-union specifications for I_{2,n} with at
/// most `max_blocks` blocks, with their face sublattices.
pub fn enumerate_jblock_unions(
    n: u32,
    max_blocks: usize,
) -> Vec<(Vec<(u32, u32)>, Vec<GrassTuple>)> {
    fn rec(
        n: u32,
        start: u32,
        left: usize,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<(Vec<(u32, u32)>, Vec<GrassTuple>)>,
    ) {
        if !cur.is_empty() {
            if let Ok(face) = jblock_union_face(n, cur) {
                out.push((cur.clone(), face));
            }
        }
        if left == 0 {
            return;
        }
        for i in start..=n.saturating_sub(3) {
            for k in 0..=(n - i - 3) {
                cur.push((i, k));
                rec(n, i + k + 2, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n, 1, max_blocks, &mut cur, &mut out);
    out
}

/// If `d_tuples` is exactly the face of some J-block union in I_{2,n},
/// returns its blocks.
pub fn recognize_jblock_union(n: u32, d_tuples: &[GrassTuple]) -> Option<Vec<(u32, u32)>> {
    let mut target = d_tuples.to_vec();
    target.sort();
    for (blocks, face) in enumerate_jblock_unions(n, 4) {
        if face == target {
            return Some(blocks);
        }
    }
    None
}

/// The 12-element interval [(1,3,4), (2,5,6)] of I_{3,6}, the smallest
/// known lattice on which the join-meet-irreducible interval criterion
/// disagrees with the basis test for smoothness.
pub fn counterexample_lattice() -> DistributiveLattice {
    let big = idn(3, 6).expect("I_{3,6} exists");
    let lo = big
        .poset()
        .index_of(&Elem::tuple(&[1, 3, 4]))
        .expect("(1,3,4) in I_{3,6}");
    let hi = big
        .poset()
        .index_of(&Elem::tuple(&[2, 5, 6]))
        .expect("(2,5,6) in I_{3,6}");
    let interval = big.poset().interval(lo, hi).expect("comparable");
    DistributiveLattice::from_poset(interval).expect("interval of a distributive lattice")
}
