//! Smooth/singular verdicts for faces and the full singular locus of
//! X_{d,n}: exact integer rank and Smith normal form, irredundant
//! generator pruning by exact rational linear programming, the
//! join-meet-irreducible interval criterion, and a harness grouping
//! faces by the marked poset H(τ).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError, FaceGeometry, Gen, HPoset};
use crate::dlattice::{DistributiveLattice, LatticeError};
use crate::grassmann::{
    idn, recognize_jblock_union, singular_window_in, GrassmannError, SingularWindow,
};
use crate::multiplicity::{face_mult, fixed_point_mult, FaceMultSpec, MultError};
use crate::poset::Elem;

#[derive(Debug, Error)]
pub enum SmoothError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Mult(#[from] MultError),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
}

/// Integer matrix with generators as rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMatrix {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
/// Intermediate values are minors of the input, kept in 128 bits; the
/// library only feeds it ±1 matrices of modest size.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let x = a[i][j]
                    .checked_mul(a[rank][col])
                    .and_then(|t| a[i][col].checked_mul(a[rank][j]).and_then(|u| t.checked_sub(u)))
                    .expect("rank computation overflow");
                a[i][j] = x / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a {
            row.swap(x, y);
        }
    }
}

/// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix, exact,
/// with a minimum-magnitude pivot rule to limit entry growth.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigUint> {
    let mut a = m.rows.clone();
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let mut piv: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if a[i][j].is_zero() {
                    continue;
                }
                if piv.is_none_or(|(pi, pj)| a[i][j].magnitude() < a[pi][pj].magnitude()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        'reduce: loop {
            // Clear column t below the pivot.
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for j in t..c {
                        a[i][j] -= &q * &pivot_row[j];
                    }
                }
                if !a[i][t].is_zero() {
                    // Remainder is smaller than the pivot; promote it.
                    a.swap(i, t);
                    continue 'reduce;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    continue 'reduce;
                }
            }
            // Divisibility: the pivot must divide the residual block.
            for i in t + 1..r {
                for j in t + 1..c {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        let row_i = a[i].clone();
                        for (j2, x) in row_i.iter().enumerate().skip(t) {
                            a[t][j2] += x;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        factors.push(a[t][t].magnitude().clone());
        t += 1;
    }
    factors
}

fn rat(x: i64) -> BigRational {
    BigRational::from(BigInt::from(x))
}

/// Exact feasibility of target ∈ cone(gens), by phase-1 simplex with
/// Bland's rule over rationals.
fn cone_contains(gens: &[Vec<i64>], target: &[i64]) -> bool {
    let m = target.len();
    let n = gens.len();
    if n == 0 {
        return target.iter().all(|&x| x == 0);
    }
    let cols = n + m;
    // Tableau [A | I | b] with b made nonnegative row by row.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let s: i64 = if target[i] < 0 { -1 } else { 1 };
        let mut row: Vec<BigRational> = Vec::with_capacity(cols + 1);
        for g in gens {
            row.push(rat(s * g[i]));
        }
        for j in 0..m {
            row.push(rat((j == i) as i64));
        }
        row.push(rat(s * target[i]));
        rows.push(row);
    }
    let mut basis: Vec<usize> = (n..cols).collect();
    // Reduced-cost row for minimizing the artificial sum; the rhs cell
    // holds minus the current objective.
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| {
            let mut acc = BigRational::zero();
            for row in &rows {
                acc += &row[j];
            }
            let c_j = if (n..cols).contains(&j) {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            c_j - acc
        })
        .collect();
    loop {
        // Bland: first column with negative reduced cost.
        let Some(e) = (0..cols).find(|&j| cost[j] < BigRational::zero()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if rows[i][e] <= BigRational::zero() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(li) => {
                    let cur = &rows[li][cols] / &rows[li][e];
                    let ratio = &rows[i][cols] / &rows[i][e];
                    ratio < cur || (ratio == cur && basis[i] < basis[li])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(li) = leave else {
            break; // phase 1 is bounded; defensive
        };
        let piv = rows[li][e].clone();
        for x in rows[li].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = rows[li].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == li {
                continue;
            }
            let f = row[e].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        let f = cost[e].clone();
        if !f.is_zero() {
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[li] = e;
    }
    cost[cols].is_zero()
}

/// Indices of the generators kept after removing, in index order, each
/// vector lying in the rational cone of the surviving others.
/// Idempotent. At most 64 vectors in dimension at most 64.
pub fn irredundant_generators(vectors: &[Vec<i64>]) -> Result<Vec<usize>, SmoothError> {
    let n = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    if n > 64 || dim > 64 {
        return Err(SmoothError::SizeLimitExceeded(format!(
            "{n} vectors in dimension {dim}; pruning supports at most 64"
        )));
    }
    let mut active = vec![true; n];
    for i in 0..n {
        active[i] = false;
        let others: Vec<Vec<i64>> = (0..n)
            .filter(|&k| active[k])
            .map(|k| vectors[k].clone())
            .collect();
        if !cone_contains(&others, &vectors[i]) {
            active[i] = true;
        }
    }
    Ok((0..n).filter(|&i| active[i]).collect())
}

/// A nontrivial integer combination of the rows summing to zero, if the
/// rows are linearly dependent.
pub fn integer_dependency(rows: &[Vec<i64>]) -> Option<Vec<BigInt>> {
    let k = rows.len();
    if k == 0 {
        return None;
    }
    let n = rows[0].len();
    // Row reduce [A | I]; a zero row in the A block exposes its
    // provenance in the I block.
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| rat(x)).collect();
            row.extend((0..k).map(|j| rat((j == i) as i64)));
            row
        })
        .collect();
    let mut pr = 0;
    for col in 0..n {
        let Some(p) = (pr..k).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let pivot_row = m[pr].clone();
        for row in m.iter_mut().skip(pr + 1) {
            let f = &row[col] / &pivot_row[col];
            if f.is_zero() {
                continue;
            }
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        pr += 1;
        if pr == k {
            break;
        }
    }
    if pr == k {
        return None;
    }
    let tail = &m[pr][n..];
    let lcm = tail
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = tail
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    debug_assert!((0..n).all(|j| {
        ints.iter()
            .zip(rows)
            .map(|(c, r)| c * BigInt::from(r[j]))
            .sum::<BigInt>()
            .is_zero()
    }));
    Some(ints)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Smooth,
    Singular,
}

/// Smoothness verdict at the distinguished point of a face, with
/// replayable evidence.
#[derive(Debug, Clone)]
pub struct SmoothnessVerdict {
    pub status: Status,
    /// W(τ), in cone generator order.
    pub generators: Vec<Gen>,
    /// Positions into `generators` kept after redundancy pruning.
    pub kept: Vec<usize>,
    /// Positions removed as redundant (empty on all paper families).
    pub pruned: Vec<usize>,
    /// Rational rank of the kept generators.
    pub rank: usize,
    /// Invariant factors of the kept generator matrix.
    pub invariant_factors: Vec<BigUint>,
    /// When rank-deficient: integer coefficients over the kept
    /// generators summing to the zero vector.
    pub dependency: Option<Vec<BigInt>>,
}

/// Decides smoothness at P_τ for the face keyed by D: smooth iff the
/// irredundant generators of W(τ) are linearly independent and form
/// part of a lattice basis (all invariant factors 1).
pub fn is_smooth_face(cone: &Cone, d: &[usize]) -> Result<SmoothnessVerdict, SmoothError> {
    let generators = cone.face_generators(d)?;
    let vecs = cone.vectors(&generators);
    let full_rank = rational_rank(&vecs);
    let (kept, pruned): (Vec<usize>, Vec<usize>) = if full_rank == vecs.len() {
        ((0..vecs.len()).collect(), Vec::new())
    } else {
        let kept = irredundant_generators(&vecs)?;
        let pruned = (0..vecs.len()).filter(|i| !kept.contains(i)).collect();
        (kept, pruned)
    };
    let kept_vecs: Vec<Vec<i64>> = kept.iter().map(|&i| vecs[i].clone()).collect();
    let rank = if pruned.is_empty() {
        full_rank
    } else {
        rational_rank(&kept_vecs)
    };
    let invariant_factors = smith_normal_form(&IntMatrix::from_i64(&kept_vecs));
    let (status, dependency) = if rank < kept_vecs.len() {
        (Status::Singular, integer_dependency(&kept_vecs))
    } else if invariant_factors.iter().all(One::is_one) {
        (Status::Smooth, None)
    } else {
        (Status::Singular, None)
    };
    Ok(SmoothnessVerdict {
        status,
        generators,
        kept,
        pruned,
        rank,
        invariant_factors,
        dependency,
    })
}

/// The interval criterion: P_τ is predicted smooth iff every
/// incomparable pair (θ, δ) of join-meet irreducibles has some element
/// of D in the interval [θ∧δ, θ∨δ].
pub fn gl_criterion(lat: &DistributiveLattice, d: &[usize]) -> Result<bool, SmoothError> {
    if !lat.is_embedded_sublattice(d) {
        return Err(ConeError::NotEmbedded.into());
    }
    let jm = &lat.irreducibles().both;
    for (x, &a) in jm.iter().enumerate() {
        for &b in &jm[x + 1..] {
            if lat.poset().comparable(a, b) {
                continue;
            }
            let m = lat.meet(a, b);
            let j = lat.join(a, b);
            if !d
                .iter()
                .any(|&g| lat.poset().leq(m, g) && lat.poset().leq(g, j))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One verified window σ_{ij} of the singular locus.
#[derive(Debug, Clone)]
pub struct WindowVerification {
    pub window: SingularWindow,
    pub w_labels: Vec<String>,
    /// Whether the filter reproduced the four-generator diamond
    /// {e_μ−e_A, e_μ−e_B, e_A−e_C, e_B−e_C} exactly.
    pub matches_diamond: bool,
    pub geometry: FaceGeometry,
    pub verdict: SmoothnessVerdict,
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone)]
pub struct SingularLocus {
    pub d: u32,
    pub n: u32,
    pub windows: Vec<WindowVerification>,
    /// All windows have face_dim 3 (orbit closures of codimension 3).
    pub pure_codim3: bool,
}

/// The full singular locus of X_{d,n}: all (n−d−1)(d−1) windows with
/// their generators, dimensions, verdicts, and multiplicity 2.
pub fn singular_locus_idn(d: u32, n: u32) -> Result<SingularLocus, SmoothError> {
    if d < 1 || d >= n {
        return Err(GrassmannError::BadParameters(d, n).into());
    }
    if d * (n - d) > 28 {
        return Err(SmoothError::SizeLimitExceeded(format!(
            "d(n-d) = {} exceeds the face-check guard of 28",
            d * (n - d)
        )));
    }
    let lat = idn(d, n)?;
    let cone = Cone::new(&lat);
    let jp = lat.j_poset();
    let mut windows = Vec::new();
    if d >= 2 && n >= d + 2 {
        for i in 1..=(n - d - 1) {
            for j in 1..=(d - 1) {
                let w = singular_window_in(&lat, d, n, i, j)?;
                let d_labels: Vec<Elem> = w.lij.iter().map(|t| Elem::Tuple(t.clone())).collect();
                let d_idx = lat.indices_of(&d_labels).expect("window sublattice in L");
                let gens = cone.face_generators(&d_idx)?;
                let jpos = |t: &[u32]| {
                    jp.index_of(&Elem::tuple(t))
                        .expect("window corner is join-irreducible")
                };
                let (pm, pa, pb, pc) = (jpos(&w.mu), jpos(&w.a), jpos(&w.b), jpos(&w.c));
                let expected = [
                    Gen::CoverDiff { upper: pa, lower: pm },
                    Gen::CoverDiff { upper: pb, lower: pm },
                    Gen::CoverDiff { upper: pc, lower: pa },
                    Gen::CoverDiff { upper: pc, lower: pb },
                ];
                let matches_diamond =
                    gens.len() == 4 && expected.iter().all(|g| gens.contains(g));
                let geometry = cone.face_geometry(&d_idx)?;
                let verdict = is_smooth_face(&cone, &d_idx)?;
                let multiplicity = face_mult(&FaceMultSpec::Window { d, n, i, j })?;
                windows.push(WindowVerification {
                    window: w,
                    w_labels: gens.iter().map(|&g| cone.gen_label(g)).collect(),
                    matches_diamond,
                    geometry,
                    verdict,
                    multiplicity,
                });
            }
        }
    }
    let pure_codim3 = windows.iter().all(|w| {
        w.geometry.face_dim == 3
            && w.geometry.face_dim + w.geometry.orbit_dim == w.geometry.ambient_dim
    });
    Ok(SingularLocus {
        d,
        n,
        windows,
        pure_codim3,
    })
}

/// One face where the three singularity characterizations disagree.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub d: Vec<usize>,
    pub d_labels: Vec<String>,
    pub smooth: bool,
    pub window_free: bool,
    pub criterion: bool,
}

#[derive(Debug, Clone)]
pub struct EquivalenceScan {
    pub d: u32,
    pub n: u32,
    pub faces: usize,
    pub smooth_faces: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Exhaustively tests, over every embedded sublattice of I_{d,n}, that
/// the basis test, window containment, and the interval criterion give
/// the same smooth/singular answer.
pub fn smoothness_equivalence_scan(d: u32, n: u32) -> Result<EquivalenceScan, SmoothError> {
    let lat = idn(d, n)?;
    let cone = Cone::new(&lat);
    // Window sublattices L_{ij} as bitmasks; a face contains σ_{ij}
    // exactly when its D is a subset of L_{ij}.
    let mut window_masks: Vec<u32> = Vec::new();
    if d >= 2 {
        for i in 1..=(n - d).saturating_sub(1) {
            for j in 1..=(d - 1) {
                let w = singular_window_in(&lat, d, n, i, j)?;
                let mask = w.lij.iter().fold(0u32, |m, t| {
                    m | 1 << lat.poset().index_of(&Elem::Tuple(t.clone())).unwrap()
                });
                window_masks.push(mask);
            }
        }
    }
    let mut faces = 0usize;
    let mut smooth_faces = 0usize;
    let mut disagreements = Vec::new();
    for dset in lat.enumerate_embedded_sublattices()? {
        faces += 1;
        let dmask = dset.iter().fold(0u32, |m, &v| m | 1 << v);
        let window_free = !window_masks.iter().any(|&wm| dmask & wm == dmask);
        let smooth = is_smooth_face(&cone, &dset)?.status == Status::Smooth;
        let criterion = gl_criterion(&lat, &dset)?;
        if smooth {
            smooth_faces += 1;
        }
        if smooth != window_free || window_free != criterion {
            disagreements.push(Disagreement {
                d_labels: dset.iter().map(|&v| lat.poset().label(v).to_string()).collect(),
                d: dset,
                smooth,
                window_free,
                criterion,
            });
        }
    }
    Ok(EquivalenceScan {
        d,
        n,
        faces,
        smooth_faces,
        disagreements,
    })
}

/// Exact isomorphism of marked subposets H(τ): a bijection of vertices
/// carrying edges to edges (with orientation) and marks to marks.
pub fn h_isomorphic(a: &HPoset, b: &HPoset) -> bool {
    let (na, nb) = (a.vertices.len(), b.vertices.len());
    if na != nb || a.edges.len() != b.edges.len() || a.marked.len() != b.marked.len() {
        return false;
    }
    if na > 24 {
        // Outside the supported range; treat distinct instances apart.
        return a == b;
    }
    let relabel = |h: &HPoset| -> (Vec<(usize, usize)>, Vec<bool>) {
        let pos: HashMap<usize, usize> = h
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let edges = h.edges.iter().map(|&(u, l)| (pos[&u], pos[&l])).collect();
        let mut marked = vec![false; h.vertices.len()];
        for &v in &h.marked {
            marked[pos[&v]] = true;
        }
        (edges, marked)
    };
    let (ea, ma) = relabel(a);
    let (eb, mb) = relabel(b);
    let adj = |edges: &[(usize, usize)], n: usize| -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; n]; n];
        for &(u, l) in edges {
            m[u][l] = true;
        }
        m
    };
    let aa = adj(&ea, na);
    let ab = adj(&eb, nb);
    let degs = |adjm: &Vec<Vec<bool>>, marked: &[bool], v: usize| -> (usize, usize, bool) {
        let out = adjm[v].iter().filter(|&&x| x).count();
        let inn = adjm.iter().filter(|row| row[v]).count();
        (out, inn, marked[v])
    };
    // Backtracking over vertex assignments with degree/mark signatures.
    fn go(
        v: usize,
        na: usize,
        aa: &Vec<Vec<bool>>,
        ab: &Vec<Vec<bool>>,
        siga: &[(usize, usize, bool)],
        sigb: &[(usize, usize, bool)],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == na {
            return true;
        }
        for w in 0..na {
            if used[w] || siga[v] != sigb[w] {
                continue;
            }
            let ok = (0..v).all(|u| {
                let mu = map[u].unwrap();
                aa[v][u] == ab[w][mu] && aa[u][v] == ab[mu][w]
            });
            if !ok {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            if go(v + 1, na, aa, ab, siga, sigb, map, used) {
                return true;
            }
            map[v] = None;
            used[w] = false;
        }
        false
    }
    let siga: Vec<_> = (0..na).map(|v| degs(&aa, &ma, v)).collect();
    let sigb: Vec<_> = (0..nb).map(|v| degs(&ab, &mb, v)).collect();
    {
        let mut sa = siga.clone();
        let mut sb = sigb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }
    go(
        0,
        na,
        &aa,
        &ab,
        &siga,
        &sigb,
        &mut vec![None; na],
        &mut vec![false; na],
    )
}

/// If the lattice is exactly I_{2,n} for some n, returns n.
pub fn detect_idn2(lat: &DistributiveLattice) -> Option<u32> {
    let mut n = 0u32;
    for label in lat.poset().labels() {
        let t = label.as_tuple()?;
        if t.len() != 2 {
            return None;
        }
        n = n.max(t[1]);
    }
    let expected = (n as usize) * (n as usize - 1) / 2;
    (n >= 2 && lat.len() == expected).then_some(n)
}

/// An isomorphism class of marked posets H(τ) among the faces of one
/// lattice.
#[derive(Debug, Clone)]
pub struct HarnessClass {
    pub representative_d: Vec<usize>,
    pub h: HPoset,
    pub faces: usize,
    pub smooth: usize,
    pub singular: usize,
    /// Distinct multiplicities of class members with a proven value.
    pub known_mults: Vec<BigUint>,
    /// Members outside every proven multiplicity family.
    pub unsupported: usize,
}

#[derive(Debug, Clone)]
pub struct HarnessReport {
    pub lattice_size: usize,
    pub faces: usize,
    pub classes: Vec<HarnessClass>,
    /// D-sets where the interval criterion and the basis test disagree.
    pub criterion_disagreements: Vec<Vec<usize>>,
    /// Class indices holding members with unequal known multiplicities,
    /// or mixing smooth and singular members.
    pub inconsistent_classes: Vec<usize>,
}

fn known_mult(
    lat: &DistributiveLattice,
    idn2_n: Option<u32>,
    dset: &[usize],
    smooth: bool,
) -> Option<BigUint> {
    if dset.len() == lat.len() {
        return Some(BigUint::one());
    }
    if dset.is_empty() {
        return Some(fixed_point_mult(lat));
    }
    if smooth {
        return Some(BigUint::one());
    }
    let n = idn2_n?;
    let tuples: Vec<Vec<u32>> = dset
        .iter()
        .map(|&v| lat.poset().label(v).as_tuple().map(<[u32]>::to_vec))
        .collect::<Option<_>>()?;
    let blocks = recognize_jblock_union(n, &tuples)?;
    face_mult(&FaceMultSpec::JBlockUnion { n, blocks }).ok()
}

/// Surveys every face of a small lattice: groups them by H(τ)
/// isomorphism class, records smooth/singular verdicts and interval
/// criterion agreement, and attaches multiplicities where a proven
/// formula applies. Reports findings without asserting any conjecture.
pub fn conjecture_harness(lat: &DistributiveLattice) -> Result<HarnessReport, SmoothError> {
    if lat.len() > 16 {
        return Err(SmoothError::SizeLimitExceeded(format!(
            "{} elements; the harness supports at most 16",
            lat.len()
        )));
    }
    let cone = Cone::new(lat);
    let idn2_n = detect_idn2(lat);
    let mut classes: Vec<HarnessClass> = Vec::new();
    let mut criterion_disagreements = Vec::new();
    let mut faces = 0usize;
    for dset in lat.enumerate_embedded_sublattices()? {
        faces += 1;
        let h = cone.h_poset(&dset)?;
        let verdict = is_smooth_face(&cone, &dset)?;
        let smooth = verdict.status == Status::Smooth;
        if gl_criterion(lat, &dset)? != smooth {
            criterion_disagreements.push(dset.clone());
        }
        let mult = known_mult(lat, idn2_n, &dset, smooth);
        let class = classes.iter_mut().find(|c| h_isomorphic(&c.h, &h));
        let class = match class {
            Some(c) => c,
            None => {
                classes.push(HarnessClass {
                    representative_d: dset.clone(),
                    h,
                    faces: 0,
                    smooth: 0,
                    singular: 0,
                    known_mults: Vec::new(),
                    unsupported: 0,
                });
                classes.last_mut().unwrap()
            }
        };
        class.faces += 1;
        if smooth {
            class.smooth += 1;
        } else {
            class.singular += 1;
        }
        match mult {
            Some(m) => {
                if !class.known_mults.contains(&m) {
                    class.known_mults.push(m);
                }
            }
            None => class.unsupported += 1,
        }
    }
    let inconsistent_classes = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.known_mults.len() > 1 || (c.smooth > 0 && c.singular > 0))
        .map(|(i, _)| i)
        .collect();
    Ok(HarnessReport {
        lattice_size: lat.len(),
        faces,
        classes,
        criterion_disagreements,
        inconsistent_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::counterexample_lattice;
    use crate::poset::Poset;

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

    fn chain_lattice(k: usize) -> DistributiveLattice {
        let elements: Vec<Elem> = (0..k).map(|i| Elem::name(&format!("c{i}"))).collect();
        let covers = (1..k)
            .map(|i| (Elem::name(&format!("c{i}")), Elem::name(&format!("c{}", i - 1))))
            .collect();
        DistributiveLattice::from_poset(Poset::new(elements, covers).unwrap()).unwrap()
    }

    #[test]
    fn snf_identity_and_diag() {
        let id3 = IntMatrix::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_normal_form(&id3), vec![BigUint::one(); 3]);
        let d22 = IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(smith_normal_form(&d22), vec![BigUint::from(2u32); 2]);
    }

    #[test]
    fn snf_window_matrix() {
        // W(σ_{1,1}) of I_{2,4} in coordinates (12),(13),(14),(23),(34).
        let m = IntMatrix::from_i64(&[
            vec![0, 1, 0, -1, 0],
            vec![0, 1, -1, 0, 0],
            vec![0, 0, 0, 1, -1],
            vec![0, 0, 1, 0, -1],
        ]);
        assert_eq!(smith_normal_form(&m), vec![BigUint::one(); 3]);
    }

    #[test]
    fn snf_permutation_invariant() {
        let base = vec![
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, 4, 16],
        ];
        let reference = smith_normal_form(&IntMatrix::from_i64(&base));
        let mut permuted = base.clone();
        permuted.swap(0, 2);
        for row in &mut permuted {
            row.swap(0, 1);
        }
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&permuted)), reference);
        // Oracle by determinantal divisors: d1 = gcd of entries = 2,
        // d1·d2 = gcd of 2×2 minors = 4, d1·d2·d3 = |det| = 624.
        assert_eq!(
            reference,
            vec![BigUint::from(2u32), BigUint::from(2u32), BigUint::from(156u32)]
        );
    }

    #[test]
    fn rank_matches_snf_length() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rational_rank(&rows), 2);
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&rows)).len(),
            2
        );
    }

    #[test]
    fn irredundant_drops_positive_combinations() {
        let vecs = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(irredundant_generators(&vecs).unwrap(), vec![0, 1]);
        // Independent sets are untouched, and pruning is idempotent.
        let indep = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(irredundant_generators(&indep).unwrap(), vec![0, 1, 2]);
        let quad = vec![
            vec![1, -1, 0, 0],
            vec![1, 0, -1, 0],
            vec![0, 1, 0, -1],
            vec![0, 0, 1, -1],
        ];
        assert_eq!(irredundant_generators(&quad).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cone_membership_edge_cases() {
        assert!(cone_contains(&[], &[0, 0]));
        assert!(!cone_contains(&[], &[1, 0]));
        assert!(cone_contains(&[vec![1, 1]], &[2, 2]));
        assert!(!cone_contains(&[vec![1, 1]], &[-1, -1]));
        assert!(!cone_contains(&[vec![1, 0], vec![0, 1]], &[1, -1]));
    }

    #[test]
    fn dependency_detection() {
        let rows = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        let dep = integer_dependency(&rows).unwrap();
        assert!(dep.iter().any(|c| !c.is_zero()));
        assert!(integer_dependency(&[vec![1, 0], vec![0, 1]]).is_none());
    }

    #[test]
    fn torus_point_is_smooth() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let all: Vec<usize> = (0..l.len()).collect();
        let v = is_smooth_face(&cone, &all).unwrap();
        assert_eq!(v.status, Status::Smooth);
        assert!(v.generators.is_empty());
    }

    #[test]
    fn window_face_is_singular_with_dependency() {
        let l = idn(2, 4).unwrap();
        let cone = Cone::new(&l);
        let d = l
            .indices_of(&[Elem::tuple(&[1, 2]), Elem::tuple(&[3, 4])])
            .unwrap();
        let v = is_smooth_face(&cone, &d).unwrap();
        assert_eq!(v.status, Status::Singular);
        assert!(v.pruned.is_empty(), "all four window generators are extreme");
        assert_eq!(v.rank, 3);
        let dep = v.dependency.as_ref().unwrap();
        assert_eq!(dep.len(), 4);
        assert!(dep.iter().all(|c| c.magnitude().is_one()));
    }

    #[test]
    fn counterexample_disagreement() {
        let l = counterexample_lattice();
        let cone = Cone::new(&l);
        let d = l.indices_of(&[Elem::tuple(&[1, 5, 6])]).unwrap();
        let v = is_smooth_face(&cone, &d).unwrap();
        assert_eq!(v.status, Status::Singular);
        assert!(v.pruned.is_empty());
        assert_eq!(v.rank, 5);
        assert_eq!(v.generators.len(), 6);
        assert!(gl_criterion(&l, &d).unwrap());
    }

    #[test]
    fn criterion_examples() {
        let l = idn(2, 4).unwrap();
        let all: Vec<usize> = (0..l.len()).collect();
        assert!(gl_criterion(&l, &all).unwrap());
        let d = l
            .indices_of(&[Elem::tuple(&[1, 2]), Elem::tuple(&[3, 4])])
            .unwrap();
        assert!(!gl_criterion(&l, &d).unwrap());
    }

    #[test]
    fn singular_locus_counts() {
        assert_eq!(singular_locus_idn(2, 4).unwrap().windows.len(), 1);
        assert_eq!(singular_locus_idn(2, 5).unwrap().windows.len(), 2);
        assert_eq!(singular_locus_idn(3, 7).unwrap().windows.len(), 6);
        let locus = singular_locus_idn(2, 5).unwrap();
        assert!(locus.pure_codim3);
        for w in &locus.windows {
            assert!(w.matches_diamond);
            assert_eq!(w.verdict.status, Status::Singular);
            assert_eq!(w.multiplicity, BigUint::from(2u32));
        }
    }

    #[test]
    fn equivalence_scan_small() {
        for (d, n) in [(1, 4), (2, 4), (2, 5)] {
            let scan = smoothness_equivalence_scan(d, n).unwrap();
            assert!(scan.disagreements.is_empty(), "(d,n)=({d},{n})");
            assert!(scan.faces > 0);
        }
    }

    #[test]
    fn h_isomorphism_basic() {
        let a = HPoset {
            vertices: vec![0, 1],
            edges: vec![(1, 0)],
            marked: vec![1],
            components: vec![vec![0, 1]],
        };
        let b = HPoset {
            vertices: vec![3, 7],
            edges: vec![(7, 3)],
            marked: vec![7],
            components: vec![vec![3, 7]],
        };
        let c = HPoset {
            vertices: vec![3, 7],
            edges: vec![(7, 3)],
            marked: vec![3],
            components: vec![vec![3, 7]],
        };
        assert!(h_isomorphic(&a, &b));
        assert!(!h_isomorphic(&a, &c));
    }

    #[test]
    fn harness_on_chain_and_counterexample() {
        let chain = chain_lattice(4);
        let r = conjecture_harness(&chain).unwrap();
        assert!(r.criterion_disagreements.is_empty());
        assert_eq!(r.faces, 16);
        assert!(r.classes.iter().all(|c| c.singular == 0));

        let ce = counterexample_lattice();
        let r = conjecture_harness(&ce).unwrap();
        assert!(!r.criterion_disagreements.is_empty());
    }

    #[test]
    fn harness_on_i24() {
        let l = idn(2, 4).unwrap();
        let r = conjecture_harness(&l).unwrap();
        assert!(r.criterion_disagreements.is_empty());
        assert!(r.inconsistent_classes.is_empty());
        let total: usize = r.classes.iter().map(|c| c.faces).sum();
        assert_eq!(total, r.faces);
    }

    #[test]
    fn detect_idn2_works() {
        assert_eq!(detect_idn2(&idn(2, 5).unwrap()), Some(5));
        assert_eq!(detect_idn2(&idn(3, 5).unwrap()), None);
        assert_eq!(detect_idn2(&diamond_lattice()), None);
    }
}
