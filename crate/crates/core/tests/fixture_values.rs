//! Fixture values computed independently by exhaustive enumeration and
//! compared with the solvers.

use flowgcm::centrality::{full_flow_betweenness, full_flow_vitality};
use flowgcm::flow::{max_flow_value, min_cost_max_flow, validate_flow};
use flowgcm::oracle::{brute_force_delta, brute_force_flows, DEFAULT_FLOW_BUDGET};
use flowgcm::path::induced_flow;
use flowgcm::quantities::{delta_pair, pair_report, LambdaMode, PairOptions, DEFAULT_BUDGET};
use flowgcm::{fixtures, ArcDisjointSequence, Arc, Network, Rational, VertexSet};

fn load(text: &str) -> (Network, usize, usize) {
    let n = Network::parse(text).unwrap();
    let y = n.index_of("y").unwrap();
    let z = n.index_of("z").unwrap();
    (n, y, z)
}

#[test]
fn fig1_exhaustive_delta_of_x() {
    let (n, y, z) = load(fixtures::FIG1);
    let x = n.vertex_set(&["x"]).unwrap();
    let oracle = brute_force_flows(&n, y, z, DEFAULT_FLOW_BUDGET).unwrap();
    assert_eq!(oracle.max_value, 3);
    assert!(oracle.maximum_flows.iter().all(|f| validate_flow(&n, f).is_ok()));
    let min = oracle.maximum_flows.iter().map(|f| f.through(&x)).min().unwrap();
    assert_eq!(min, 2);
    assert_eq!(delta_pair(&n, y, z, &x).unwrap(), 2);
}

#[test]
fn fig1_restricted_value() {
    let (n, y, z) = load(fixtures::FIG1);
    let x = n.vertex_set(&["x"]).unwrap();
    let r = pair_report(&n, y, z, &x, &PairOptions::default()).unwrap();
    assert_eq!(r.phi_restricted, 1);
    let restricted = n.restrict(&x).unwrap();
    assert_eq!(brute_force_flows(&restricted, y, z, DEFAULT_FLOW_BUDGET).unwrap().max_value, 1);
}

#[test]
fn fig1_induced_flow_of_first_class() {
    let (n, y, z) = load(fixtures::FIG1);
    let seq = ArcDisjointSequence::parse(&n, y, z, "(y-u-z,y-v-u-x-z,y-v-x-z)").unwrap();
    let f = induced_flow(&n, &seq).unwrap();
    let ix = |t| n.index_of(t).unwrap();
    let expected = [
        ("y", "v", 2),
        ("v", "u", 1),
        ("u", "x", 1),
        ("v", "x", 1),
        ("y", "u", 1),
        ("u", "z", 1),
        ("x", "z", 2),
    ];
    for (t, h, v) in expected {
        assert_eq!(f.get(Arc::new(ix(t), ix(h))), v, "{t}{h}");
    }
    assert_eq!(f.support_len(), expected.len());
    assert_eq!(f.value(), 3);
}

#[test]
fn fig3_exhaustive_maximum() {
    let (n, y, z) = load(fixtures::FIG3);
    let oracle = brute_force_flows(&n, y, z, DEFAULT_FLOW_BUDGET).unwrap();
    assert_eq!(oracle.max_value, 2);
    assert_eq!(max_flow_value(&n, y, z).unwrap(), 2);
}

#[test]
fn fig6_min_cost_and_exhaustive_delta() {
    let (n, y, z) = load(fixtures::FIG6);
    let x = n.vertex_set(&["x1", "x2"]).unwrap();
    let (value, cost, _) = min_cost_max_flow(&n, y, z, |a| u64::from(x.contains(a.tail))).unwrap();
    assert_eq!((value, cost), (1, 2));
    assert_eq!(brute_force_delta(&n, y, z, &x, DEFAULT_FLOW_BUDGET).unwrap(), 2);
    let oracle = brute_force_flows(&n, y, z, DEFAULT_FLOW_BUDGET).unwrap();
    assert_eq!(oracle.maximum_flows.len(), 1);
}

#[test]
fn fig2_min_cost_on_arcs_leaving_v() {
    let (n, y, z) = load(fixtures::FIG2);
    let v = n.vertex_set(&["v"]).unwrap();
    let (value, cost, f) = min_cost_max_flow(&n, y, z, |a| u64::from(v.contains(a.tail))).unwrap();
    assert_eq!((value, cost), (2, 1));
    assert_eq!(f.through(&v), 1);
    assert_eq!(brute_force_delta(&n, y, z, &v, DEFAULT_FLOW_BUDGET).unwrap(), 1);
}

#[test]
fn fig6_all_pairs_total() {
    let n = Network::parse(fixtures::FIG6).unwrap();
    let x = n.vertex_set(&["x1", "x2"]).unwrap();
    let mut positive = 0;
    for y in 0..n.vertex_count() {
        for z in 0..n.vertex_count() {
            if y != z && brute_force_flows(&n, y, z, DEFAULT_FLOW_BUDGET).unwrap().max_value > 0 {
                positive += 1;
            }
        }
    }
    assert_eq!(positive, 10);
    let ten = Rational::from_integer(10.into());
    assert_eq!(full_flow_vitality(&n, &x).unwrap(), ten);
    assert_eq!(full_flow_betweenness(&n, &x, LambdaMode::Exact, DEFAULT_BUDGET).unwrap(), ten);
    assert_eq!(full_flow_vitality(&n, &n.full_set()).unwrap(), ten);
}

#[test]
fn empty_set_is_zero_everywhere() {
    for text in fixtures::NETWORKS {
        let (n, y, z) = load(text);
        let r = pair_report(&n, y, z, &VertexSet::new(), &PairOptions::default()).unwrap();
        assert_eq!((r.phi_x, r.lambda_x, r.delta_x), (0, Some(0), Some(0)));
        assert_eq!(brute_force_delta(&n, y, z, &VertexSet::new(), DEFAULT_FLOW_BUDGET).unwrap(), 0);
    }
}
