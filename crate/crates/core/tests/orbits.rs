use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use weighted_catalan::catalan::enumerate_dyck_paths;
use weighted_catalan::trees::odd_double_factorial;
use weighted_catalan::*;

/// Trees reachable by swapping the two subtrees at a single vertex.
fn single_swaps(t: &BinaryTree) -> Vec<BinaryTree> {
    let Some((l, r)) = t.children() else {
        return Vec::new();
    };
    let mut out = vec![BinaryTree::node(r.clone(), l.clone())];
    for l2 in single_swaps(l) {
        out.push(BinaryTree::node(l2, r.clone()));
    }
    for r2 in single_swaps(r) {
        out.push(BinaryTree::node(l.clone(), r2));
    }
    out
}

fn swap_closure(t: &BinaryTree) -> HashSet<BinaryTree> {
    let mut seen = HashSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in single_swaps(&u) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

fn orbits_by_shape(n: u32) -> HashMap<TreeShape, Vec<BinaryTree>> {
    let mut m: HashMap<TreeShape, Vec<BinaryTree>> = HashMap::new();
    for t in enumerate_trees(n, 14).unwrap() {
        m.entry(canonical_shape(&t)).or_default().push(t);
    }
    m
}

#[test]
fn path_bijection() {
    for n in 0..=10u32 {
        let trees = enumerate_trees(n, 14).unwrap();
        let images: BTreeSet<DyckPath> = trees.iter().map(tree_to_path).collect();
        assert_eq!(images.len(), trees.len(), "injective at n={n}");
        let all: BTreeSet<DyckPath> = enumerate_dyck_paths(n, 14).unwrap().into_iter().collect();
        assert_eq!(images, all, "onto at n={n}");
        for t in &trees {
            let mut depths = t.left_depths();
            let mut heights = tree_to_path(t).ascent_heights();
            depths.sort();
            heights.sort();
            assert_eq!(depths, heights);
        }
    }
}

#[test]
fn swap_closure_equals_shape_classes() {
    for n in 0..=5u32 {
        let classes = orbits_by_shape(n);
        for t in enumerate_trees(n, 14).unwrap() {
            let closure = swap_closure(&t);
            let class: HashSet<BinaryTree> =
                classes[&canonical_shape(&t)].iter().cloned().collect();
            assert_eq!(closure, class, "n={n}, tree {t}");
        }
    }
}

#[test]
fn orbit_sizes_match_class_cardinalities() {
    for n in 0..=6u32 {
        for (shape, members) in orbits_by_shape(n) {
            assert_eq!(shape.orbit_size(), BigInt::from(members.len()), "{shape}");
        }
        let census = shape_census(n, 18).unwrap();
        assert_eq!(census.records.len(), orbits_by_shape(n).len());
    }
}

#[test]
fn census_sizes_partition_trees() {
    for n in 0..=12u32 {
        let c = shape_census(n, 18).unwrap();
        assert_eq!(c.total_size(), catalan(n));
        assert!(c
            .records
            .iter()
            .all(|r| r.size == BigInt::from(1) << r.size_exponent));
    }
}

#[test]
fn shape_counts() {
    // unordered pairs of optional subshapes, counted by an independent recurrence
    let mut a: Vec<u64> = vec![1];
    for n in 1..=14usize {
        let m = n - 1;
        let mut t = 0;
        for i in 0..=m / 2 {
            let j = m - i;
            t += if i < j {
                a[i] * a[j]
            } else {
                a[i] * (a[i] + 1) / 2
            };
        }
        a.push(t);
    }
    for n in 0..=14u32 {
        assert_eq!(
            shape_census(n, 18).unwrap().records.len() as u64,
            a[n as usize]
        );
    }
}

#[test]
fn minimal_orbits() {
    for n in 0..=14u32 {
        let c = shape_census(n, 18).unwrap();
        let s = (n + 1).count_ones() - 1;
        assert_eq!(c.min_exponent(), s, "n={n}");
        assert_eq!(
            BigInt::from(c.minimal_count()),
            odd_double_factorial(s),
            "n={n}"
        );
    }
}

#[test]
fn weight_transport() {
    let battery = [
        WeightSequence::constant(1),
        WeightSequence::OddSquares,
        WeightSequence::geometric(5),
        WeightSequence::geometric(3),
        WeightSequence::polynomial([1, 4]),
        WeightSequence::table([3, -5, 7, 11, -13, 1, 9, 15, 21, 5]),
    ];
    for n in 0..=10u32 {
        for t in enumerate_trees(n, 14).unwrap() {
            let p = tree_to_path(&t);
            for b in &battery {
                assert_eq!(p.weight(b).unwrap(), tree_weight(&t, b, 0).unwrap());
            }
        }
    }
}

#[test]
fn reduced_weights_match_orbit_sums() {
    let width = 5usize;
    for b in [WeightSequence::OddSquares, WeightSequence::geometric(5)] {
        for n in 0..=8u32 {
            let census = orbit_census(n, &b, width, 18).unwrap();
            let by_shape: BTreeMap<_, _> = census
                .records
                .iter()
                .map(|r| (r.shape.clone(), r.reduced_weight.clone().unwrap()))
                .collect();
            for (shape, members) in orbits_by_shape(n) {
                let size = BigInt::from(members.len());
                let standalone = reduced_weight(&shape, &b, 0, width).unwrap();
                for x in 0..width as u64 {
                    let total: BigInt =
                        members.iter().map(|t| tree_weight(t, &b, x).unwrap()).sum();
                    let (q, r) = total.div_rem(&size);
                    assert!(r == BigInt::from(0));
                    assert_eq!(by_shape[&shape].get(x), Some(&q), "{b} {shape} x={x}");
                    assert_eq!(standalone.get(x), Some(&q));
                }
            }
        }
    }
}

#[test]
fn reduced_weights_are_odd() {
    for b in [
        WeightSequence::OddSquares,
        WeightSequence::geometric(5),
        WeightSequence::geometric(-3),
        WeightSequence::polynomial([1, 4]),
        WeightSequence::constant(3),
    ] {
        for n in 0..=10u32 {
            let census = orbit_census(n, &b, 9, 18).unwrap();
            for r in &census.records {
                let w = r.reduced_weight.as_ref().unwrap();
                assert_eq!(w.len(), 9);
                assert!(
                    w.values().iter().all(|v| v.is_odd()),
                    "{b} n={n} {}",
                    r.shape
                );
            }
        }
    }
}

#[test]
fn reduced_weight_windows_are_members() {
    use weighted_catalan::weight::check_window;
    let census = orbit_census(6, &WeightSequence::OddSquares, 24, 18).unwrap();
    for r in &census.records {
        let verdict = check_window(r.reduced_weight.as_ref().unwrap(), 6).unwrap();
        assert!(!verdict.is_rejected(), "{}", r.shape);
    }
}
