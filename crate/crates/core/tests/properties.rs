use monodec::{
    canonical_code, embeds, equivalence_partition, isomorphic, monomorphic_partition,
    ramsey_subset, PairColoring, Partition, Signature, Structure,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Binary structures with `rels` relations; relation 0 is the natural order when `ordered`.
fn structure(max_n: usize, rels: usize, ordered: bool) -> impl Strategy<Value = Structure> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(any::<bool>(), rels * n * n).prop_map(move |bits| {
            let mut relations: Vec<Vec<Vec<usize>>> = (0..rels)
                .map(|r| {
                    (0..n * n)
                        .filter(|&i| bits[r * n * n + i])
                        .map(|i| vec![i / n, i % n])
                        .collect()
                })
                .collect();
            if ordered {
                relations[0] = monodec::natural_order(n);
            }
            Structure::new(Signature::binary(rels), n, relations, ordered).unwrap()
        })
    })
}

fn with_permutation(s: Structure) -> impl Strategy<Value = (Structure, Vec<usize>)> {
    let n = s.n();
    (Just(s), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn relabeling_preserves_isomorphism_type((s, perm) in structure(6, 2, false).prop_flat_map(with_permutation)) {
        let t = s.relabel(&perm).unwrap();
        prop_assert!(isomorphic(&s, &t).unwrap());
        prop_assert!(isomorphic(&t, &s).unwrap());
        prop_assert_eq!(canonical_code(&s), canonical_code(&t));
    }

    #[test]
    fn code_equality_iff_isomorphic(a in structure(4, 1, false), b in structure(4, 1, false)) {
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn ordered_code_equality_iff_isomorphic(a in structure(5, 2, true), b in structure(5, 2, true)) {
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn code_decodes_to_an_isomorphic_structure(s in structure(5, 2, false)) {
        let code = canonical_code(&s);
        let back = code.decode(s.signature()).unwrap();
        prop_assert!(isomorphic(&s, &back).unwrap());
    }

    #[test]
    fn embedding_is_a_preorder(
        s in structure(6, 1, false),
        outer in subsequence((0..6).collect::<Vec<usize>>(), 0..=6),
        inner in subsequence((0..6).collect::<Vec<usize>>(), 0..=6),
    ) {
        prop_assert!(embeds(&s, &s).unwrap());
        let outer: Vec<usize> = outer.into_iter().filter(|&v| v < s.n()).collect();
        let mid = s.induced(&outer).unwrap();
        let inner: Vec<usize> = inner.into_iter().filter(|&v| v < mid.n()).collect();
        let low = mid.induced(&inner).unwrap();
        prop_assert!(embeds(&mid, &s).unwrap());
        prop_assert!(embeds(&low, &mid).unwrap());
        prop_assert!(embeds(&low, &s).unwrap());
    }

    #[test]
    fn induced_composes(
        s in structure(6, 2, true),
        outer in subsequence((0..6).collect::<Vec<usize>>(), 0..=6),
        inner in subsequence((0..6).collect::<Vec<usize>>(), 0..=6),
    ) {
        let outer: Vec<usize> = outer.into_iter().filter(|&v| v < s.n()).collect();
        let inner: Vec<usize> = inner.into_iter().filter(|&v| v < outer.len()).collect();
        let twice = s.induced(&outer).unwrap().induced(&inner).unwrap();
        let composed: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        prop_assert_eq!(twice, s.induced(&composed).unwrap());
    }

    #[test]
    fn levels_refine_as_k_grows(s in structure(7, 1, false)) {
        prop_assume!(s.n() >= 3);
        let full = monomorphic_partition(&s).unwrap();
        let mut previous = Partition::from_blocks(s.n(), vec![(0..s.n()).collect()]).unwrap();
        for k in 0..=s.n() - 2 {
            let p = equivalence_partition(&s, k).unwrap();
            prop_assert!(p.refines(&previous));
            prop_assert!(full.refines(&p));
            previous = p;
        }
        prop_assert_eq!(previous, full);
    }

    #[test]
    fn ramsey_subsets_are_monochromatic(
        m in 2usize..14,
        palette in 1usize..4,
        seed in any::<u64>(),
        target in 2usize..4,
    ) {
        let coloring = PairColoring::from_fn(m, |i, j| {
            (seed.rotate_left((i * 13 + j * 7) as u32) ^ (i * j) as u64) % palette as u64
        });
        if let Ok(set) = ramsey_subset(&coloring, target) {
            prop_assert_eq!(set.len(), target);
            prop_assert!(set.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(coloring.is_monochromatic(&set));
        }
    }

    #[test]
    fn two_colorings_of_eighteen_points_contain_a_monochromatic_four(bits in proptest::collection::vec(any::<bool>(), 153)) {
        let coloring = PairColoring::from_fn(18, |i, j| {
            let (i, j) = (i.min(j), i.max(j));
            bits[j * (j - 1) / 2 + i]
        });
        let set = ramsey_subset(&coloring, 4).unwrap();
        prop_assert!(coloring.is_monochromatic(&set));
    }

    #[test]
    fn structure_json_round_trips(s in structure(6, 2, true)) {
        let text = s.to_json();
        let back = Structure::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn partition_json_round_trips(s in structure(6, 1, false)) {
        let p = monomorphic_partition(&s).unwrap();
        let back: Partition = serde_json::from_str(&p.to_json()).unwrap();
        prop_assert_eq!(back, p);
    }
}
