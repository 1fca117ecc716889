use pisot_minweight::cli::{run, Outcome};

fn cli(args: &str) -> Outcome {
    run(std::iter::once("pisot-minweight").chain(args.split_whitespace()))
}

fn first_line(o: &Outcome) -> &str {
    o.stdout.lines().next().unwrap_or("")
}

#[test]
fn expand_examples() {
    let o = cli("expand --base golden --greedy 2");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(first_line(&o), "10.01");
    assert_eq!(first_line(&cli("expand --base golden --tau 2")), "100.T");
    assert_eq!(first_line(&cli("expand --base golden --tau 0")), "0");
    assert_eq!(first_line(&cli("expand --base golden -3")), "T00.0T");
    assert_eq!(first_line(&cli("expand --base tribonacci --greedy 2")), "10.001");
    assert_eq!(first_line(&cli("expand --base golden --of-word 1001")), "100T0.");
}

#[test]
fn expand_json() {
    let o = cli("expand --base smallest-pisot --greedy 2 --format json");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["word"], "100.00001");
    assert_eq!(v["weight"], 2);
    assert_eq!(v["point"], 3);
}

#[test]
fn check_examples() {
    assert_eq!(first_line(&cli("check --base golden 11")), "heavy; lighter: 1");
    assert_eq!(first_line(&cli("check --base golden 100T")), "minimal");
    assert_eq!(first_line(&cli("check --base golden 0")), "minimal");
    let o = cli("check --base golden 1111 --oracle");
    assert!(o.stdout.contains("oracle: minimum weight 2"), "{}", o.stdout);
    let o = cli("check --system T T1 --oracle");
    assert_eq!(first_line(&o), "heavy; lighter: T");
    let o = cli("check --system S 10001");
    assert_eq!(first_line(&o), "minimal");
}

#[test]
fn automaton_examples() {
    assert_eq!(first_line(&cli("automaton --base golden --which M --compare explicit")), "EQUAL");
    assert_eq!(first_line(&cli("automaton --base golden --which H --compare explicit")), "EQUAL");
    let o = cli("automaton --base golden --which S --stats");
    assert_eq!(first_line(&o), "states: 160");
    let o = cli("automaton --base golden --which A");
    assert!(o.stdout.starts_with("digraph"));
    let states = o.stdout.lines().filter(|l| l.trim_start().starts_with('q') && !l.contains("->")).count();
    assert_eq!(states, 29);
    let o = cli("automaton --base golden --which A --format json");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v.is_object());
    assert_eq!(first_line(&cli("automaton --which MF --compare beta")), "EQUAL");
    assert!(first_line(&cli("automaton --which MT --compare beta")).starts_with("DIFFERENT"));
}

#[test]
fn intrep_examples() {
    assert_eq!(first_line(&cli("intrep --system F --minform 12")), "10000T");
    assert_eq!(first_line(&cli("intrep --system F --n 12 --minform")), "10000T");
    assert_eq!(first_line(&cli("intrep --system F --n 12")), "10000T");
    assert_eq!(first_line(&cli("intrep --system F --n 12 --greedy")), "greedy: 10101");
    assert_eq!(first_line(&cli("intrep --system T --value 10T")), "value: 3");
    let o = cli("intrep --system F --bounds 5");
    assert_eq!(o.stdout, "g_6: 10\nG_5: 9\n");
}

#[test]
fn stats_and_cost() {
    let o = cli("stats --system F --M 10000");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("constant 1/5"), "{}", o.stdout);
    let o = cli("stats --M 200 --format csv");
    assert_eq!(o.stdout.lines().count(), 4);
    let o = cli("cost --r 20");
    assert!(o.stdout.contains("S 7.156 < F 7.202"), "{}", o.stdout);
    let o = cli("cost --r 10");
    assert!(o.stdout.contains("F 4.321 < 2^n 4.333"), "{}", o.stdout);
    let o = cli("cost --r 10 --format json");
    let rows: Vec<serde_json::Value> = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(rows.len(), 6);
}

#[test]
fn enumerate_golden_two() {
    assert_eq!(cli("enumerate --base golden 2").stdout, "100.T\n10.01\n");
}

#[test]
fn exit_codes() {
    assert_eq!(cli("expand --base golden 1.5").code, 2);
    assert_eq!(cli("nonsense").code, 2);
    assert_eq!(cli("check --base golden 12").code, 3);
    assert_eq!(cli("automaton --poly 1,0,-2 --which A").code, 3);
    assert_eq!(cli("expand --poly 1,x").code, 2);
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn deterministic_output() {
    for args in ["automaton --base tribonacci --which M", "enumerate --base golden 9", "cost --r 3 --format csv"] {
        assert_eq!(cli(args), cli(args), "{args}");
    }
}

#[test]
fn binary_reports_state_limit() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_pisot-minweight"))
        .args(["automaton", "--base", "golden", "--which", "S", "--stats"])
        .env("MINWEIGHT_MAX_STATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("state limit"));
}
