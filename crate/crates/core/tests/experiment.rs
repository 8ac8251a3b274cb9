use std::path::Path;

use privmst::clustering::DbmstcluConfig;
use privmst::experiment::{
    cluster_exact, cluster_graph, generate_shape_dataset, render, run_error_experiment, run_experiment, stream_rng,
    ExperimentConfig, Mechanism, OutputFormat, PipelineParams, Shape,
};
use privmst::graph::epsilon_graph;
use privmst::Error;

fn docs() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs"))
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(docs().join("experiment-config.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn example_configs_match_schema_and_parser() {
    let validator = schema();
    for name in ["error-table.json", "blobs-clustering.json"] {
        let text = std::fs::read_to_string(docs().join("examples").join(name)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(validator.is_valid(&value), "{name}");
        ExperimentConfig::from_json(&text).unwrap();
    }
}

#[test]
fn report_config_round_trips_through_schema() {
    let cfg = ExperimentConfig::from_json(
        r#"{"kind":"clustering","graph":{"source":"shape","shape":{"kind":"circles"},"n":40,"noise_scale":0.2,"radius":12},
            "epsilons":[1.0],"trials":2,"seed":3,"mechanisms":["pamst"]}"#,
    )
    .unwrap();
    let report = run_experiment(&cfg, None, None).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&render(&report, OutputFormat::Json).unwrap()).unwrap();
    assert!(schema().is_valid(&json["config"]));
    let back: ExperimentConfig = serde_json::from_value(json["config"].clone()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn schema_rejects_what_the_parser_rejects() {
    let validator = schema();
    for text in [
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":10},"epsilons":[1],"trials":1,"seed":1,"mechanisms":["pamst"]}"#,
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":10},"epsilons":[0],"densities":[0.5],"trials":1,"seed":1,"mechanisms":["pamst"]}"#,
        r#"{"kind":"clustering","graph":{"source":"erdos_renyi","nodes":10},"epsilons":[1],"trials":1,"seed":1,"mechanisms":["pamst"]}"#,
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":10},"epsilons":[1],"densities":[0.5],"trials":1,"seed":1,"mechanisms":["pamst","pamst"]}"#,
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":10},"epsilons":[1],"densities":[0.5],"trials":0,"seed":1,"mechanisms":["pamst"]}"#,
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":10,"extra":1},"epsilons":[1],"densities":[0.5],"trials":1,"seed":1,"mechanisms":["pamst"]}"#,
    ] {
        assert!(!validator.is_valid(&serde_json::from_str(text).unwrap()), "{text}");
        assert!(matches!(ExperimentConfig::from_json(text), Err(Error::Config(_))), "{text}");
    }
}

#[test]
fn noiseless_blobs_disconnect_at_small_radius() {
    let cloud = generate_shape_dataset(&Shape::Blobs { separation: 20.0, radius: 2.0 }, 100, 0.0, 1).unwrap();
    assert!(matches!(epsilon_graph(&cloud, 5.0), Err(Error::RadiusTooSmall { .. })));
}

#[test]
fn moons_are_reproducible() {
    let a = generate_shape_dataset(&Shape::moons(), 1000, 1.0, 42).unwrap();
    let b = generate_shape_dataset(&Shape::moons(), 1000, 1.0, 42).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, generate_shape_dataset(&Shape::moons(), 1000, 1.0, 43).unwrap());
}

fn separated_blobs() -> (privmst::Graph, Vec<usize>) {
    let cloud = generate_shape_dataset(&Shape::Blobs { separation: 20.0, radius: 1.0 }, 100, 0.0, 7).unwrap();
    let labels = cloud.labels().unwrap().to_vec();
    (epsilon_graph(&cloud, 25.0).unwrap(), labels)
}

#[test]
fn exact_mst_recovers_blob_labels() {
    let (graph, labels) = separated_blobs();
    let out = cluster_exact(&graph, Some(&labels), DbmstcluConfig::default()).unwrap();
    assert_eq!(out.metrics.ari, Some(1.0));
}

#[test]
fn zero_noise_limit_matches_exact_clustering() {
    let (graph, labels) = separated_blobs();
    let exact = cluster_exact(&graph, Some(&labels), DbmstcluConfig::default()).unwrap();
    for mechanism in [Mechanism::Pamst, Mechanism::LaplaceMst] {
        let params =
            PipelineParams { epsilon: 1e12, mechanism, normalize: true, clustering: DbmstcluConfig::default() };
        let mut rng = stream_rng(1, 0, mechanism.tag(), &[]);
        let out = cluster_graph(&graph, Some(&labels), &params, &mut rng).unwrap();
        assert_eq!(out.partition.labels(), exact.partition.labels(), "{mechanism}");
    }
}

#[test]
fn laplace_branch_recovers_well_separated_blobs() {
    let cloud = generate_shape_dataset(&Shape::Blobs { separation: 20.0, radius: 1.0 }, 100, 0.1, 11).unwrap();
    let graph = epsilon_graph(&cloud, 25.0).unwrap();
    let labels = cloud.labels().unwrap();
    let params = PipelineParams {
        epsilon: 1.0,
        mechanism: Mechanism::LaplaceMst,
        normalize: true,
        clustering: DbmstcluConfig::default(),
    };
    let recovered = (0..50u64)
        .filter(|&t| {
            let mut rng = stream_rng(11, t, "laplace_mst", &[1.0]);
            cluster_graph(&graph, Some(labels), &params, &mut rng).unwrap().metrics.ari.unwrap() >= 0.9
        })
        .count();
    assert!(recovered > 25, "{recovered}/50");
}

#[test]
fn desk_scale_cell_separates_mechanisms() {
    let cfg = ExperimentConfig::from_json(
        r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":300},"epsilons":[1.0],
            "densities":[0.3],"trials":100,"seed":30,"mechanisms":["pamst","laplace_mst"]}"#,
    )
    .unwrap();
    let rows = run_error_experiment(&cfg).unwrap();
    let (p, l) = (&rows[0], &rows[1]);
    assert_eq!((p.mechanism, l.mechanism), (Mechanism::Pamst, Mechanism::LaplaceMst));
    assert!(p.mean_error + p.ci_half_width < l.mean_error - l.ci_half_width);
}
