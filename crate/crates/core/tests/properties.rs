//! Property-based tests: randomized structures checked against
//! independent recomputations.

use num_bigint::BigInt;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hibi_toric::cone::{Cone, Gen};
use hibi_toric::dlattice::DistributiveLattice;
use hibi_toric::grassmann::idn;
use hibi_toric::multiplicity::catalan;
use hibi_toric::poset::Poset;
use hibi_toric::smoothness::{
    integer_dependency, irredundant_generators, smith_normal_form, IntMatrix,
};

/// Random graded-ish poset as a layered DAG, returned as a Poset.
fn arb_poset() -> impl Strategy<Value = Poset> {
    // Layer sizes, then edges between adjacent layers; a bottom and top
    // element keep every lattice-building path simple.
    (1..4usize, proptest::collection::vec(1..4usize, 1..4), any::<u64>()).prop_map(
        |(first, rest, seed)| {
            let mut sizes = vec![1, first];
            sizes.extend(rest);
            sizes.push(1);
            let mut ids: Vec<Vec<usize>> = Vec::new();
            let mut next = 0;
            for &s in &sizes {
                ids.push((next..next + s).collect());
                next += s;
            }
            let mut state = seed | 1;
            let mut rand = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let name = |i: usize| hibi_toric::poset::Elem::name(&format!("v{i}"));
            let mut covers: Vec<(hibi_toric::poset::Elem, hibi_toric::poset::Elem)> = Vec::new();
            for layer in 1..ids.len() {
                for &u in &ids[layer] {
                    // Each element covers at least one of the previous layer.
                    let lows = &ids[layer - 1];
                    let forced = lows[(rand() % lows.len() as u64) as usize];
                    covers.push((name(u), name(forced)));
                    for &l in lows {
                        if l != forced && rand() % 3 == 0 {
                            covers.push((name(u), name(l)));
                        }
                    }
                }
            }
            Poset::new((0..next).map(name).collect(), covers).unwrap()
        },
    )
}

/// Random distributive lattice: the ideal lattice of a random poset.
fn arb_lattice() -> impl Strategy<Value = DistributiveLattice> {
    arb_poset().prop_filter_map("ideal lattice small enough", |p| {
        if p.len() > 7 {
            return None;
        }
        let ideals = p.order_ideals().ok()?;
        if ideals.len() > 16 {
            return None;
        }
        let elements: Vec<hibi_toric::poset::Elem> = ideals
            .iter()
            .map(|i| {
                hibi_toric::poset::Elem::name(&format!(
                    "I{}",
                    i.iter().map(ToString::to_string).collect::<Vec<_>>().join("_")
                ))
            })
            .collect();
        let mut covers = Vec::new();
        for (x, a) in ideals.iter().enumerate() {
            for (y, b) in ideals.iter().enumerate() {
                if a.len() + 1 == b.len() && a.iter().all(|v| b.contains(v)) {
                    covers.push((elements[y].clone(), elements[x].clone()));
                }
            }
        }
        let poset = Poset::new(elements, covers).ok()?;
        DistributiveLattice::from_poset(poset).ok()
    })
}

fn dfs_chain_count(p: &Poset) -> BigUint {
    fn go(p: &Poset, v: usize, top: usize) -> BigUint {
        if v == top {
            return BigUint::one();
        }
        p.upper_covers(v).iter().map(|&u| go(p, u, top)).sum()
    }
    let (b, t) = p.bounds().unwrap();
    go(p, b, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_count_matches_dfs(l in arb_lattice()) {
        prop_assert_eq!(l.poset().maximal_chain_count().unwrap(), dfs_chain_count(l.poset()));
    }

    #[test]
    fn face_roundtrip_and_geometry(l in arb_lattice()) {
        let cone = Cone::new(&l);
        for d in l.enumerate_embedded_sublattices().unwrap() {
            let w = cone.face_generators(&d).unwrap();
            prop_assert_eq!(cone.face_support(&w).unwrap(), d.clone());
            if !d.is_empty() {
                let g = cone.face_geometry(&d).unwrap();
                prop_assert_eq!(g.face_dim + g.orbit_dim, g.ambient_dim);
            }
            let p = cone.distinguished_point(&d).unwrap();
            prop_assert!(l.binomial_violations_01(&p).is_empty());
        }
    }

    #[test]
    fn generator_entries_are_signed_units(l in arb_lattice()) {
        let cone = Cone::new(&l);
        for &g in cone.generators() {
            let v = cone.vector(g);
            let nonzero = v.iter().filter(|&&x| x != 0).count();
            match g {
                Gen::CoverDiff { .. } => prop_assert_eq!(nonzero, 2),
                Gen::MaxElem(_) => prop_assert_eq!(nonzero, 1),
            }
            prop_assert!(v.iter().all(|&x| (-1..=1).contains(&x)));
        }
    }

    #[test]
    fn snf_invariant_under_row_column_permutation(
        rows in proptest::collection::vec(
            proptest::collection::vec(-5i64..=5, 4), 1..5),
        row_swap in (0usize..4, 0usize..4),
        col_swap in (0usize..4, 0usize..4),
    ) {
        let reference = smith_normal_form(&IntMatrix::from_i64(&rows));
        let mut permuted = rows.clone();
        let (r1, r2) = row_swap;
        if r1 < permuted.len() && r2 < permuted.len() {
            permuted.swap(r1, r2);
        }
        for row in &mut permuted {
            row.swap(col_swap.0, col_swap.1);
        }
        prop_assert_eq!(smith_normal_form(&IntMatrix::from_i64(&permuted)), reference);
    }

    #[test]
    fn dependency_replays_to_zero(
        rows in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 4), 2..6),
    ) {
        if let Some(dep) = integer_dependency(&rows) {
            prop_assert!(dep.iter().any(|c| !c.is_zero()));
            for col in 0..4 {
                let total: BigInt = rows
                    .iter()
                    .zip(&dep)
                    .map(|(r, c)| c * r[col])
                    .sum();
                prop_assert!(total.is_zero());
            }
        }
    }

    #[test]
    fn irredundant_pruning_is_idempotent(
        rows in proptest::collection::vec(
            proptest::collection::vec(-2i64..=2, 3), 1..6),
    ) {
        let kept = irredundant_generators(&rows).unwrap();
        let reduced: Vec<Vec<i64>> = kept.iter().map(|&i| rows[i].clone()).collect();
        let again = irredundant_generators(&reduced).unwrap();
        prop_assert_eq!(again.len(), reduced.len());
    }

    #[test]
    fn catalan_satisfies_segner_recurrence(m in 1u64..12) {
        let direct = catalan(m);
        let convolution: BigUint = (0..m).map(|i| catalan(i) * catalan(m - 1 - i)).sum();
        prop_assert_eq!(direct, convolution);
    }
}

#[test]
fn idn_is_reachable_from_random_generator_shapes() {
    // Anchors the random-lattice strategy: the structured lattices it
    // should resemble satisfy the same invariants it tests.
    for (d, n) in [(2u32, 4u32), (2, 5)] {
        let l = idn(d, n).unwrap();
        let cone = Cone::new(&l);
        for dset in l.enumerate_embedded_sublattices().unwrap() {
            let w = cone.face_generators(&dset).unwrap();
            assert_eq!(cone.face_support(&w).unwrap(), dset);
        }
    }
}
