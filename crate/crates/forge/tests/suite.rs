use constraint_forge::report::{exit_code, to_json};
use constraint_forge::suite::{run_suite, Group, Mutation, SuiteConfig};
use constraint_forge_core::Status;

fn small(group: Group) -> SuiteConfig {
    SuiteConfig { group, trials: 3, grid: 512, ..SuiteConfig::default() }
}

fn strip_times(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn default_suite_passes_and_is_deterministic() {
    let cfg = small(Group::All);
    let a = run_suite(&cfg);
    assert_eq!(exit_code(&a), 0, "{}", to_json(&a));
    assert_eq!(a[0].name, "conventions");
    let b = run_suite(&cfg);
    assert_eq!(strip_times(&to_json(&a)), strip_times(&to_json(&b)));
}

#[test]
fn every_mutation_fails() {
    for m in Mutation::ALL {
        let r = run_suite(&SuiteConfig { mutation: Some(m), ..small(Group::All) });
        assert_eq!(exit_code(&r), 1, "{}", m.name());
    }
}

#[test]
fn groups_select_steps() {
    let brst = run_suite(&small(Group::Brst));
    assert!(brst.iter().all(|r| r.name == "conventions" || r.name.contains("BRST") || r.name.contains("ghost") || r.name.contains("negative")));
    let numeric = run_suite(&small(Group::Numeric));
    assert!(numeric.iter().any(|r| r.name.starts_with("oracle d0=5")));
    assert!(numeric.iter().all(|r| r.status != Status::Fail));
}

#[test]
fn seed_changes_points_only() {
    let a = run_suite(&SuiteConfig { seed: 1, ..small(Group::Numeric) });
    let b = run_suite(&SuiteConfig { seed: 2, ..small(Group::Numeric) });
    let names = |r: &[constraint_forge::report::CheckReport]| r.iter().skip(1).map(|x| x.name.clone()).collect::<Vec<_>>();
    assert_eq!(names(&a), names(&b));
    assert_ne!(a[0].residual, b[0].residual);
}
