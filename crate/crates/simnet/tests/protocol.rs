//! Protocol-level checks: message accounting, locality of the per-agent
//! step functions, and the single-iteration degenerate case.

use std::collections::BTreeMap;

use geomedian::GeoMedianInstance;
use proptest::prelude::*;
use simnet::{
    argmax_step, dual_step, hat_step, run_distributed_logged, AgentLocal, AgentState, MessageLog,
    Phase,
};
use solver_core::{HomotopyConfig, HorizonSchedule, StepSizeMode};

fn small_config(stages: usize, horizon: usize) -> HomotopyConfig {
    HomotopyConfig {
        epsilon0: 2.0,
        epsilon: 2.0 / (1 << (stages - 1)) as f64,
        num_stages: stages,
        horizon: HorizonSchedule::Constant(horizon),
        step_mode: StepSizeMode::Verbatim,
        observe_every: 1,
    }
}

#[test]
fn message_count_is_two_exchanges_of_every_edge_per_iteration() {
    let instance = GeoMedianInstance::generate(6, 2, 0.5, 10.0, 13, (0.0, 10.0)).unwrap();
    let degree_sum: usize = (0..6).map(|i| instance.graph().degree(i)).sum();
    assert_eq!(degree_sum, 2 * instance.graph().edge_count());

    let mut log = MessageLog::new();
    let config = small_config(2, 5);
    let outcome =
        run_distributed_logged(&instance, &config, None, None, Some(&mut log)).unwrap();

    let iterations = 2 * 5;
    assert_eq!(outcome.iterations, iterations);
    assert_eq!(outcome.messages_sent, iterations * 2 * degree_sum);
    assert_eq!(log.len(), outcome.messages_sent);

    // Per-round accounting: each round carries one lambda_hat and one x
    // exchange of every directed edge.
    for round in 1..=iterations {
        let in_round: Vec<_> = log.rows.iter().filter(|r| r.round == round).collect();
        assert_eq!(in_round.len(), 2 * degree_sum, "round {round}");
        let hats = in_round.iter().filter(|r| r.phase == Phase::LambdaHat).count();
        assert_eq!(hats, degree_sum, "round {round}");
    }

    // Every logged message travels along a graph edge.
    for row in &log.rows {
        assert!(
            instance.graph().contains_edge(row.from, row.to),
            "message {} -> {} is not an edge",
            row.from,
            row.to
        );
    }
}

#[test]
fn first_iteration_from_zero_multiplier_returns_the_data_points() {
    // lambda = 0 makes every prox center equal the anchor, and the anchor
    // starts at the data, so each agent's first primal block is its own
    // point exactly.
    let instance = GeoMedianInstance::generate(5, 3, 0.5, 10.0, 99, (0.0, 10.0)).unwrap();
    let config = small_config(1, 1);
    let trace =
        simnet::run_distributed(&instance, &config, None, None).unwrap();
    assert_eq!(trace.final_x, instance.points());
    assert_eq!(trace.records.len(), 1);
    assert_eq!(trace.records[0].objective, 0.0);
}

/// Runs one full protocol iteration by hand on a path graph (0-1-2-3-4)
/// and returns agent 0's primal block and updated multiplier.
fn one_round_agent0(states: &mut Vec<AgentState>, locals: &[AgentLocal]) -> (Vec<f64>, Vec<f64>) {
    let n = states.len();
    let mu = 0.125;
    let step = mu;
    let theta = 1.0;
    let coeff = 0.0;

    for state in states.iter_mut() {
        hat_step(state, coeff);
    }
    let hats: Vec<Vec<f64>> = states.iter().map(|s| s.lambda_hat.clone()).collect();
    for i in 0..n {
        states[i].inbox = BTreeMap::new();
        for &j in &locals[i].neighbors {
            states[i].inbox.insert(j, hats[j].clone());
        }
    }
    for i in 0..n {
        argmax_step(&locals[i], &mut states[i], mu).unwrap();
    }
    let xs: Vec<Vec<f64>> = states.iter().map(|s| s.x_local.clone()).collect();
    for i in 0..n {
        states[i].inbox = BTreeMap::new();
        for &j in &locals[i].neighbors {
            states[i].inbox.insert(j, xs[j].clone());
        }
    }
    for i in 0..n {
        dual_step(&locals[i], &mut states[i], step, theta).unwrap();
    }
    (states[0].x_local.clone(), states[0].lambda_curr.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Locality canary: corrupting the entire state of a non-neighbor
    /// before the round cannot change what a distant agent computes. On
    /// the path 0-1-2-3-4, node 4 is no neighbor of node 0, and one round
    /// moves information by at most one hop.
    #[test]
    fn non_neighbor_state_cannot_influence_an_agent(
        lambda in prop::collection::vec(-5.0f64..5.0, 10),
        canary in prop::collection::vec(-100.0f64..100.0, 2),
    ) {
        let graph =
            geomedian::NetworkGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let points = vec![0.0, 0.0, 4.0, 0.0, 0.0, 3.0, 8.0, 8.0, 1.0, 7.0];
        let instance =
            GeoMedianInstance::new(points, 5, 2, 10.0, graph, 0, 0.5).unwrap();
        let mixing = instance.mixing();
        let locals: Vec<AgentLocal> = (0..5)
            .map(|i| AgentLocal {
                id: i,
                neighbors: mixing.neighbors(i).to_vec(),
                weights: mixing.weights(i).to_vec(),
                point: instance.point(i).to_vec(),
                radius: instance.radius(),
            })
            .collect();
        let fresh_states = || -> Vec<AgentState> {
            (0..5)
                .map(|i| {
                    let mut s = AgentState::new(i, instance.point(i));
                    s.lambda_curr = lambda[i * 2..(i + 1) * 2].to_vec();
                    s.lambda_prev = s.lambda_curr.clone();
                    s
                })
                .collect()
        };

        let mut clean = fresh_states();
        let clean_result = one_round_agent0(&mut clean, &locals);

        let mut tampered = fresh_states();
        tampered[4].lambda_curr = canary.clone();
        tampered[4].lambda_prev = vec![-1e6, 1e6];
        tampered[4].lambda_hat = canary.clone();
        tampered[4].x_anchor = vec![999.0, -999.0];
        tampered[4].x_local = canary.clone();
        let tampered_result = one_round_agent0(&mut tampered, &locals);

        prop_assert_eq!(&clean_result.0, &tampered_result.0);
        prop_assert_eq!(&clean_result.1, &tampered_result.1);

        // A direct neighbor's multiplier, by contrast, does reach agent 0
        // within the round through the prox center; sanity-check that the
        // canary actually bites somewhere so the test cannot pass vacuously.
        let mut neighbor_tampered = fresh_states();
        neighbor_tampered[1].lambda_curr = vec![1e4, -1e4];
        neighbor_tampered[1].lambda_prev = neighbor_tampered[1].lambda_curr.clone();
        let neighbor_result = one_round_agent0(&mut neighbor_tampered, &locals);
        prop_assert_ne!(&clean_result.1, &neighbor_result.1);
    }
}

#[test]
fn log_is_deterministic_across_runs() {
    let instance = GeoMedianInstance::generate(5, 2, 0.6, 10.0, 4, (0.0, 10.0)).unwrap();
    let config = small_config(2, 4);
    let mut log_a = MessageLog::new();
    let mut log_b = MessageLog::new();
    run_distributed_logged(&instance, &config, None, None, Some(&mut log_a)).unwrap();
    run_distributed_logged(&instance, &config, None, None, Some(&mut log_b)).unwrap();
    assert_eq!(log_a.rows, log_b.rows);
    assert_eq!(log_a.to_csv(), log_b.to_csv());
}
