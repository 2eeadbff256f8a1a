use mrpals::airplane::{self, AirplaneParams, LawVersion, Scenario};
use mrpals::analysis::{check_graph, explore, parse_formula, ExploreOptions};

// Layer sizes from an independent reimplementation of the model.
#[test]
fn pilot_rules_layers() {
    let sys = airplane::build_system(
        &AirplaneParams::default(),
        &Scenario::zeros(6),
        LawVersion::V2,
        Some(&[0.0, 10.0, -10.0, 60.0, -60.0]),
    )
    .unwrap();
    let g = explore(&sys, 4200, &ExploreOptions::default()).unwrap();
    assert_eq!(g.layer_sizes(), &[1, 5, 25, 125, 575, 2575, 11395, 9933]);
    assert_eq!(g.len(), 24_634);

    // Turns are still in progress at this bound, so only safety is checked.
    let f = parse_formula("[] safeYaw").unwrap();
    assert!(check_graph(&g, &f, &airplane::propositions())
        .unwrap()
        .holds());
}
