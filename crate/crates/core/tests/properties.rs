use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flowgcm::flow::{decompose, decompose_with_rng, max_flow, recompose, validate_flow};
use flowgcm::oracle::{brute_force_flows, generate, random_flow, InstanceSpec, DEFAULT_FLOW_BUDGET};
use flowgcm::path::induced_flow;
use flowgcm::quantities::{
    delta_pair, enumerate_max_sequences, lambda_pair, phi_pair, LambdaMode, DEFAULT_BUDGET,
};
use flowgcm::{ArcDisjointSequence, Flow, Network, VertexSet};

fn instance(max_n: usize) -> impl Strategy<Value = Network> {
    (2..=max_n, 1u64..=2, 1u32..=3, any::<u64>()).prop_map(|(n, cap, p, seed)| {
        generate(&InstanceSpec {
            vertex_count: n,
            max_capacity: cap,
            arc_probability: (p, 4),
            seed,
        })
        .unwrap()
    })
}

/// Network plus two distinct endpoints and a vertex set given as a bitmask.
fn with_pair(max_n: usize) -> impl Strategy<Value = (Network, usize, usize, VertexSet)> {
    instance(max_n).prop_flat_map(|net| {
        let n = net.vertex_count();
        (Just(net), 0..n, 1..n, any::<u8>()).prop_map(move |(net, y, shift, mask)| {
            let z = (y + shift) % n;
            let set = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            (net, y, z, set)
        })
    })
}

fn max_sequences(net: &Network, y: usize, z: usize) -> HashSet<ArcDisjointSequence> {
    enumerate_max_sequences(net, y, z, DEFAULT_BUDGET)
        .unwrap()
        .map(Result::unwrap)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn restriction_is_idempotent_and_antitone((net, _, _, set) in with_pair(5), extra in 0usize..5) {
        let once = net.restrict(&set).unwrap();
        prop_assert_eq!(once.restrict(&set).unwrap(), once.clone());
        let mut bigger = set.clone();
        bigger.insert(extra % net.vertex_count());
        let more = net.restrict(&bigger).unwrap();
        for (a, c) in net.arcs() {
            prop_assert!(more.capacity(a) <= once.capacity(a));
            prop_assert!(once.capacity(a) <= c);
            prop_assert_eq!(once.capacity(a) == 0, c == 0 || set.touches(a));
        }
    }

    #[test]
    fn network_text_roundtrip(net in instance(6)) {
        let text = net.to_string();
        prop_assert_eq!(Network::parse(&text).unwrap(), net);
    }

    #[test]
    fn flow_text_roundtrip((net, y, z, _) in with_pair(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_flow(&net, y, z, &mut rng).unwrap();
        prop_assert_eq!(validate_flow(&net, &f), Ok(()));
        prop_assert_eq!(Flow::parse(&net, &f.render(&net)).unwrap(), f);
    }

    #[test]
    fn pair_quantities_are_monotone((net, y, z, set) in with_pair(5), extra in 0usize..5) {
        let mut bigger = set.clone();
        bigger.insert(extra % net.vertex_count());
        let p = (phi_pair(&net, y, z, &set).unwrap(), phi_pair(&net, y, z, &bigger).unwrap());
        prop_assert!(p.0 <= p.1);
        let l = |s: &VertexSet| lambda_pair(&net, y, z, s, LambdaMode::Exact, DEFAULT_BUDGET).unwrap().value;
        prop_assert!(l(&set) <= l(&bigger));
        prop_assert!(delta_pair(&net, y, z, &set).unwrap() <= delta_pair(&net, y, z, &bigger).unwrap());
    }

    #[test]
    fn inequality_chain_and_boundary((net, y, z, set) in with_pair(5)) {
        let phi = max_flow(&net, y, z).unwrap().0;
        let p = phi_pair(&net, y, z, &set).unwrap();
        let l = lambda_pair(&net, y, z, &set, LambdaMode::Exact, DEFAULT_BUDGET).unwrap().value;
        let d = delta_pair(&net, y, z, &set).unwrap();
        prop_assert!(p <= l && l <= d.min(phi), "{p} {l} {d} {phi}");
        if set.contains(y) || set.contains(z) {
            prop_assert_eq!((p, l), (phi, phi));
        }
    }

    #[test]
    fn single_vertex_quantities_coincide((net, y, z, _) in with_pair(5), x in 0usize..5) {
        let x = x % net.vertex_count();
        let s = VertexSet::singleton(x);
        let p = phi_pair(&net, y, z, &s).unwrap();
        let l = lambda_pair(&net, y, z, &s, LambdaMode::Exact, DEFAULT_BUDGET).unwrap().value;
        let d = delta_pair(&net, y, z, &s).unwrap();
        prop_assert_eq!((p, l), (d, d));
        if x != y && x != z {
            let rest: VertexSet = (0..net.vertex_count()).filter(|&v| v != x).collect();
            let bound = net.capacity_of_set(&s).unwrap().min(net.capacity_of_set(&rest).unwrap());
            prop_assert!(l <= bound);
        }
    }

    #[test]
    fn lambda_zero_iff_no_path((net, y, z, _) in with_pair(5)) {
        let phi = max_flow(&net, y, z).unwrap().0;
        let everything = net.full_set();
        let l = lambda_pair(&net, y, z, &everything, LambdaMode::Exact, DEFAULT_BUDGET).unwrap().value;
        prop_assert_eq!(l == 0, phi == 0);
    }

    #[test]
    fn maximum_flows_carry_at_least_lambda((net, y, z, _) in with_pair(4)) {
        let oracle = brute_force_flows(&net, y, z, DEFAULT_FLOW_BUDGET).unwrap();
        for x in 0..net.vertex_count() {
            let s = VertexSet::singleton(x);
            let l = lambda_pair(&net, y, z, &s, LambdaMode::Exact, DEFAULT_BUDGET).unwrap().value;
            for f in &oracle.maximum_flows {
                prop_assert!(f.through_vertex(x) >= l as i64);
            }
        }
    }

    #[test]
    fn enumerated_sequences_induce_flows((net, y, z, _) in with_pair(5)) {
        let phi = max_flow(&net, y, z).unwrap().0;
        for seq in max_sequences(&net, y, z) {
            prop_assert_eq!(seq.len() as u64, phi);
            seq.check_arc_disjoint(&net).unwrap();
            let f = induced_flow(&net, &seq).unwrap();
            prop_assert_eq!(validate_flow(&net, &f), Ok(()));
            prop_assert_eq!(f.value(), phi as i64);
            for x in 0..net.vertex_count() {
                prop_assert_eq!(f.through_vertex(x), seq.passage_count(&VertexSet::singleton(x)) as i64);
            }
            // Every subsequence stays arc-disjoint.
            if seq.len() > 1 {
                let shorter = ArcDisjointSequence::new(y, z, seq.paths()[1..].to_vec()).unwrap();
                shorter.check_arc_disjoint(&net).unwrap();
            }
        }
    }

    #[test]
    fn decomposition_roundtrip((net, y, z, _) in with_pair(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_flow(&net, y, z, &mut rng).unwrap();
        for d in [decompose(&net, &f).unwrap(), decompose_with_rng(&net, &f, &mut rng).unwrap()] {
            prop_assert_eq!(recompose(&d), f.clone());
            prop_assert_eq!(d.paths.len() as i64, f.value());
            d.paths.check_arc_disjoint(&net).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Reducing capacities keeps the maximum value exactly when every
    /// maximum flow of the reduced network is maximum in the original.
    #[test]
    fn capacity_reduction_equivalence((net, y, z, _) in with_pair(4), cuts in any::<u32>()) {
        let mut k = 0;
        let reduced = net.map_capacities(|_, c| {
            k += 1;
            if cuts & (1 << (k % 32)) != 0 { c - 1 } else { c }
        });
        let full = brute_force_flows(&net, y, z, DEFAULT_FLOW_BUDGET).unwrap();
        let small = brute_force_flows(&reduced, y, z, DEFAULT_FLOW_BUDGET).unwrap();
        let same_value = small.max_value == full.max_value;
        let all_maximal = small.maximum_flows.iter().all(|f| full.maximum_flows.contains(f));
        prop_assert_eq!(same_value, all_maximal);
    }

    /// Decomposing maximum flows recovers exactly the enumerated maximum
    /// sequences, and vice versa.
    #[test]
    fn decompositions_match_enumeration((net, y, z, _) in with_pair(4), seed in any::<u64>()) {
        let oracle = brute_force_flows(&net, y, z, DEFAULT_FLOW_BUDGET).unwrap();
        let enumerated = max_sequences(&net, y, z);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for f in oracle.maximum_flows.iter().take(40) {
            for _ in 0..20 {
                let d = decompose_with_rng(&net, f, &mut rng).unwrap();
                prop_assert!(enumerated.contains(&d.paths.canonical()));
            }
        }
        for seq in &enumerated {
            let f = induced_flow(&net, seq).unwrap();
            prop_assert!(enumerated.contains(&decompose(&net, &f).unwrap().paths.canonical()));
        }
    }
}
