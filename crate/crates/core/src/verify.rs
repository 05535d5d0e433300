//! Executable invariant suites. Each check recomputes a structural
//! property two independent ways (or against a brute-force oracle) and
//! reports pass/fail; the CLI `verify` command aggregates them.

use num_bigint::BigUint;
use num_traits::One;

use crate::cone::{Cone, Gen};
use crate::dlattice::DistributiveLattice;
use crate::grassmann::{counterexample_lattice, idn};
use crate::multiplicity::{
    catalan, face_mult, fixed_point_mult, hook_mult, lattice_hilbert_crosscheck, sqfree_hilbert,
    stanley_reisner_ideal, FaceMultSpec,
};
use crate::poset::{Elem, Poset};
use crate::smoothness::{
    is_smooth_face, smith_normal_form, smoothness_equivalence_scan, IntMatrix, Status,
};

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(out: &mut Vec<Check>, suite: &'static str, name: &str, passed: bool, detail: String) {
    out.push(Check {
        suite,
        name: name.to_string(),
        passed,
        detail,
    });
}

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

/// Small lattices exercised by every suite.
fn corpus(max_size: usize) -> Vec<(String, DistributiveLattice)> {
    let mut out: Vec<(String, DistributiveLattice)> = vec![
        ("chain-3".into(), chain_lattice(3)),
        ("chain-5".into(), chain_lattice(5)),
        ("diamond".into(), diamond_lattice()),
        ("idn-2-4".into(), idn(2, 4).unwrap()),
        ("idn-2-5".into(), idn(2, 5).unwrap()),
        ("counterexample".into(), counterexample_lattice()),
    ];
    if max_size >= 15 {
        out.push(("idn-2-6".into(), idn(2, 6).unwrap()));
    }
    out.retain(|(_, l)| l.len() <= max_size.max(12));
    out
}

/// Independent maximal-chain count by depth-first search.
fn chain_count_dfs(p: &Poset) -> BigUint {
    fn go(p: &Poset, v: usize, top: usize) -> BigUint {
        if v == top {
            return BigUint::one();
        }
        p.upper_covers(v)
            .iter()
            .map(|&u| go(p, u, top))
            .sum()
    }
    let (bottom, top) = p.bounds().unwrap();
    go(p, bottom, top)
}

fn suite_poset(out: &mut Vec<Check>, max_size: usize) {
    for (name, l) in corpus(max_size) {
        let dp = l.poset().maximal_chain_count().unwrap();
        let dfs = chain_count_dfs(l.poset());
        check(
            out,
            "poset",
            &format!("chain-count-dp-vs-dfs/{name}"),
            dp == dfs,
            format!("dp={dp} dfs={dfs}"),
        );
    }
    for (name, l) in corpus(max_size.min(12)) {
        if l.len() > 12 {
            continue;
        }
        let ideals = l.poset().order_ideals().unwrap();
        let sets: Vec<Vec<bool>> = ideals
            .iter()
            .map(|i| {
                let mut m = vec![false; l.len()];
                for &v in i {
                    m[v] = true;
                }
                m
            })
            .collect();
        let closed = sets.iter().all(|a| {
            sets.iter().all(|b| {
                let union: Vec<usize> = (0..l.len()).filter(|&v| a[v] || b[v]).collect();
                let inter: Vec<usize> = (0..l.len()).filter(|&v| a[v] && b[v]).collect();
                ideals.binary_search(&union).is_ok() && ideals.binary_search(&inter).is_ok()
            })
        });
        check(
            out,
            "poset",
            &format!("ideals-closed-under-union-intersection/{name}"),
            closed,
            format!("{} ideals", ideals.len()),
        );
    }
}

fn suite_lattice(out: &mut Vec<Check>, max_size: usize) {
    for (name, l) in corpus(max_size) {
        let roundtrip = (0..l.len()).all(|alpha| {
            l.element_of_ideal(&l.ideal_of(alpha).to_vec()) == Some(alpha)
        });
        check(
            out,
            "lattice",
            &format!("birkhoff-roundtrip/{name}"),
            roundtrip,
            format!("{} elements", l.len()),
        );
        let respects = (0..l.len()).all(|a| {
            (0..l.len()).all(|b| {
                let mut union = l.ideal_of(a).to_vec();
                union.extend_from_slice(l.ideal_of(b));
                union.sort_unstable();
                union.dedup();
                let inter: Vec<usize> = l
                    .ideal_of(a)
                    .iter()
                    .copied()
                    .filter(|p| l.ideal_of(b).contains(p))
                    .collect();
                l.ideal_of(l.join(a, b)) == union.as_slice()
                    && l.ideal_of(l.meet(a, b)) == inter.as_slice()
            })
        });
        check(
            out,
            "lattice",
            &format!("birkhoff-respects-meet-join/{name}"),
            respects,
            String::new(),
        );
    }
    // Enumeration agrees with the definitional test.
    let l = idn(2, 4).unwrap();
    let listed = l.enumerate_embedded_sublattices().unwrap();
    let brute: Vec<Vec<usize>> = (0u32..1 << l.len())
        .map(|mask| (0..l.len()).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| l.is_embedded_sublattice(s))
        .collect();
    check(
        out,
        "lattice",
        "embedded-enumeration-vs-definition/idn-2-4",
        listed.len() == brute.len() && brute.iter().all(|s| listed.contains(s)),
        format!("{} sublattices", listed.len()),
    );
}

fn suite_cone(out: &mut Vec<Check>, max_size: usize) {
    for (name, l) in corpus(max_size) {
        if l.len() > 16 {
            continue;
        }
        let cone = Cone::new(&l);
        let subs = l.enumerate_embedded_sublattices().unwrap();
        let mut roundtrip = true;
        let mut dims = true;
        let mut binomials = true;
        for d in &subs {
            let w = cone.face_generators(d).unwrap();
            roundtrip &= cone.face_support(&w).unwrap() == *d;
            if !d.is_empty() {
                let g = cone.face_geometry(d).unwrap();
                dims &= g.face_dim + g.orbit_dim == g.ambient_dim;
            }
            let p = cone.distinguished_point(d).unwrap();
            binomials &= l.binomial_violations_01(&p).is_empty();
        }
        check(
            out,
            "cone",
            &format!("face-support-roundtrip/{name}"),
            roundtrip,
            format!("{} faces", subs.len()),
        );
        check(
            out,
            "cone",
            &format!("face-dim-plus-orbit-dim/{name}"),
            dims,
            String::new(),
        );
        check(
            out,
            "cone",
            &format!("distinguished-point-binomials/{name}"),
            binomials,
            String::new(),
        );
        let entries_ok = cone.generators().iter().all(|&g| {
            let v = cone.vector(g);
            v.iter().all(|&x| (-1..=1).contains(&x))
                && match g {
                    Gen::CoverDiff { .. } => {
                        v.iter().filter(|&&x| x == 1).count() == 1
                            && v.iter().filter(|&&x| x == -1).count() == 1
                    }
                    Gen::MaxElem(_) => v.iter().filter(|&&x| x != 0).count() == 1,
                }
        });
        check(
            out,
            "cone",
            &format!("generator-entries-signed-units/{name}"),
            entries_ok,
            String::new(),
        );
    }
}

fn suite_smoothness(out: &mut Vec<Check>, max_size: usize) {
    // Window generator sets across the full (d, n) range.
    let mut windows_ok = true;
    let mut windows_detail = String::new();
    for n in 4..=9u32 {
        for d in 2..n.min(5) {
            let locus = match crate::smoothness::singular_locus_idn(d, n) {
                Ok(l) => l,
                Err(e) => {
                    windows_ok = false;
                    windows_detail = format!("({d},{n}): {e}");
                    continue;
                }
            };
            let expected = ((n - d - 1) * (d - 1)) as usize;
            if locus.windows.len() != expected
                || !locus.pure_codim3
                || !locus.windows.iter().all(|w| {
                    w.matches_diamond
                        && w.verdict.status == Status::Singular
                        && w.multiplicity == BigUint::from(2u32)
                })
            {
                windows_ok = false;
                windows_detail = format!("({d},{n})");
            }
        }
    }
    check(
        out,
        "smoothness",
        "window-diamonds-d-le-4-n-le-9",
        windows_ok,
        windows_detail,
    );

    // Three-way equivalence on the lattices small enough to enumerate.
    let mut scans: Vec<(u32, u32)> = vec![(2, 4), (2, 5), (3, 5)];
    if max_size >= 15 {
        scans.push((2, 6));
    }
    if max_size >= 20 {
        scans.push((3, 6));
    }
    for (d, n) in scans {
        let scan = smoothness_equivalence_scan(d, n).unwrap();
        check(
            out,
            "smoothness",
            &format!("three-way-equivalence/idn-{d}-{n}"),
            scan.disagreements.is_empty(),
            format!("{} faces, {} smooth", scan.faces, scan.smooth_faces),
        );
    }

    // Every rank-deficient singular face carries an explicit integer
    // dependency: nontrivial, summing to zero, supported on a cycle of
    // at least four cover differences.
    for (d, n) in [(2u32, 4u32), (2, 5), (3, 5)] {
        let lat = idn(d, n).unwrap();
        let cone = Cone::new(&lat);
        let mut ok = true;
        for dset in lat.enumerate_embedded_sublattices().unwrap() {
            let v = is_smooth_face(&cone, &dset).unwrap();
            if v.status != Status::Singular {
                continue;
            }
            let Some(dep) = &v.dependency else {
                ok = false;
                break;
            };
            let support: Vec<usize> = v
                .kept
                .iter()
                .zip(dep)
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(&k, _)| k)
                .collect();
            let mut total = vec![num_bigint::BigInt::from(0); cone.ambient_dim()];
            for (&k, c) in v.kept.iter().zip(dep) {
                for (t, &x) in total.iter_mut().zip(&cone.vector(v.generators[k])) {
                    *t += c * x;
                }
            }
            ok &= support.len() >= 4
                && total.iter().all(num_traits::Zero::is_zero)
                && support
                    .iter()
                    .all(|&k| matches!(v.generators[k], Gen::CoverDiff { .. }));
            if !ok {
                break;
            }
        }
        check(
            out,
            "smoothness",
            &format!("singular-dependency-is-a-cover-cycle/idn-{d}-{n}"),
            ok,
            String::new(),
        );
    }

    // Determinism of the normal form under permutations.
    let base = vec![vec![0, 1, -1, 0], vec![1, -1, 0, 0], vec![1, 0, -1, 0], vec![0, 0, 1, -1]];
    let reference = smith_normal_form(&IntMatrix::from_i64(&base));
    let mut permuted = base.clone();
    permuted.reverse();
    for row in &mut permuted {
        row.swap(1, 3);
    }
    check(
        out,
        "smoothness",
        "snf-permutation-invariance",
        smith_normal_form(&IntMatrix::from_i64(&permuted)) == reference,
        format!("{reference:?}"),
    );
}

fn suite_multiplicity(out: &mut Vec<Check>, max_size: usize) {
    let n_hi = if max_size >= 15 { 12 } else { 8 };
    let mut catalan_ok = true;
    for n in 4..=n_hi {
        if fixed_point_mult(&idn(2, n).unwrap()) != catalan(u64::from(n) - 2) {
            catalan_ok = false;
        }
    }
    check(
        out,
        "multiplicity",
        &format!("catalan-vs-chain-count-n-le-{n_hi}"),
        catalan_ok,
        String::new(),
    );

    let area_hi = if max_size >= 15 { 24 } else { 16 };
    let mut hook_ok = true;
    for n in 2..=12u32 {
        for d in 1..n {
            if d * (n - d) > area_hi {
                continue;
            }
            if hook_mult(d, n).unwrap() != fixed_point_mult(&idn(d, n).unwrap())
                || hook_mult(d, n).unwrap() != hook_mult(n - d, n).unwrap()
            {
                hook_ok = false;
            }
        }
    }
    check(
        out,
        "multiplicity",
        &format!("hook-vs-chain-count-area-le-{area_hi}"),
        hook_ok,
        String::new(),
    );

    let mut jblock_ok = true;
    for n in 5..=9u32 {
        for i in 1..=(n - 3) {
            for k in 0..=(n - i - 3) {
                if face_mult(&FaceMultSpec::JBlock { n, i, k }).unwrap()
                    != catalan(u64::from(k) + 2)
                {
                    jblock_ok = false;
                }
            }
        }
    }
    check(
        out,
        "multiplicity",
        "jblock-mult-depends-only-on-k",
        jblock_ok,
        String::new(),
    );

    for (name, l) in corpus(max_size) {
        let h = sqfree_hilbert(&stanley_reisner_ideal(&l)).unwrap();
        check(
            out,
            "multiplicity",
            &format!("sr-degree-and-dim/{name}"),
            h.degree == fixed_point_mult(&l) && h.krull_dim == l.dim(),
            format!("degree={} dim={}", h.degree, h.krull_dim),
        );
        if l.len() <= 12 {
            let r = lattice_hilbert_crosscheck(&l, 3).unwrap();
            check(
                out,
                "multiplicity",
                &format!("hilbert-three-way/{name}"),
                r.all_equal,
                format!("{:?}", r.rows.last().map(|x| x.multichains.clone())),
            );
        }
    }
}

/// Runs the selected suite ("all" for everything). `max_size` caps the
/// lattice sizes used in exhaustive parts.
pub fn run_suites(suite: &str, max_size: usize) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, "all" | "poset") {
        suite_poset(&mut out, max_size);
    }
    if matches!(suite, "all" | "lattice") {
        suite_lattice(&mut out, max_size);
    }
    if matches!(suite, "all" | "cone") {
        suite_cone(&mut out, max_size);
    }
    if matches!(suite, "all" | "smoothness") {
        suite_smoothness(&mut out, max_size);
    }
    if matches!(suite, "all" | "multiplicity") {
        suite_multiplicity(&mut out, max_size);
    }
    out
}

pub fn suite_names() -> &'static [&'static str] {
    &["poset", "lattice", "cone", "smoothness", "multiplicity"]
}
