use syzlab_cli::{run, strip_timings, thread_cap, THREADS_ENV};

fn cli(args: &str) -> syzlab_cli::Outcome {
    run(std::iter::once("syzlab").chain(args.split_whitespace())).unwrap()
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let args = "verify torsion-bundle --genus 8 --level 3 --k 1 --seed 42";
    let mut a = cli(args).json;
    let mut b = cli(args).json;
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(a.get("timings").is_none());
    let c = cli("verify torsion-bundle --genus 8 --level 3 --k 1 --seed 43").json;
    assert_ne!(a["trials"][0]["seed"], c["trials"][0]["seed"]);
}

#[test]
fn exit_codes() {
    assert_eq!(cli("verify prym-green --genus 6 --level 3").exit_code, 0);
    assert_eq!(
        cli("verify prym-green --genus 8 --level 2 --quiet").exit_code,
        2
    );
    assert_eq!(cli("verify prym-green --genus 7 --level 3").exit_code, 1);
    assert_eq!(
        cli("verify torsion-bundle --genus 8 --level 3 --k 2").exit_code,
        1
    );
    assert!(run(["syzlab", "verify", "prym-green"]).is_err());
}

#[test]
fn json_file_and_parameters() {
    let path = std::env::temp_dir().join(format!("syzlab-test-{}.json", std::process::id()));
    let out = cli(&format!(
        "verify canonical --genus 7 --level 2 --trials 2 --json {}",
        path.display()
    ));
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, out.json);
    let p = &written["parameters"];
    assert_eq!(p["prime"], 10007);
    assert_eq!(p["root"], 10006);
    assert_eq!(p["trials"], 2);
    assert_eq!(p["path"], "auto");
    assert_eq!(p["prime_range"], serde_json::json!([10001, 29999]));
    assert_eq!(written["verdict"], "verified");
}

#[test]
fn explicit_prime() {
    let out = cli("verify prym-green --genus 6 --level 3 --prime 31 --trials 2");
    assert_eq!(out.json["parameters"]["prime"], 31);
    let bad = cli("verify prym-green --genus 6 --level 3 --prime 29");
    assert_eq!(bad.exit_code, 1);
}

#[test]
fn betti_command() {
    let out = cli("betti --genus 10 --level 3 --kind torsion --k 1");
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.json["computed"]["rows"][0][4], 1);
    assert!(out.text.contains("total: 9 54 126 127 127 126 54 9"));
    let out = cli("betti --genus 8 --level 2");
    assert_eq!(out.exit_code, 2);
    let out = cli("betti --genus 9 --level 3 --kind canonical");
    assert_eq!(out.exit_code, 0);
    let out = cli("betti --genus 10 --level 3 --expected-only");
    assert!(out.text.contains(" total: 1 18 42 126 210 162 63 10"));
}

#[test]
fn divclass_command() {
    let out = cli("divclass u --genus 7 --level 3 --derive");
    let closed = cli("divclass u --genus 7 --level 3");
    assert_eq!(out.json["class"], closed.json["class"]);
    let out = cli("divclass --combo-odd 5");
    assert_eq!(out.json["combo_odd"]["bigness"], "boundary");
    assert_eq!(out.json["combo_odd"]["lambda_coefficient"], "13");
    let out = cli("divclass --combo-g12");
    assert_eq!(out.json["combo_g12"]["reproduces_target"], true);
    assert_eq!(out.json["combo_g12"]["formula_scalar_match"], false);
    assert!(run(["syzlab", "divclass", "u", "--genus", "6", "--level", "2"]).is_err());
}

#[test]
fn small_experiment_two_torsion() {
    let out = cli("experiment g8 --samples 12 --prime 10007 --two-torsion");
    assert_eq!(out.json["hits"], 12);
    assert_eq!(out.json["rank6"], 12);
    assert_eq!(out.json["verdict"], "verified");
}

#[test]
fn thread_cap_reads_environment() {
    // the only test touching this variable
    std::env::set_var(THREADS_ENV, "2");
    assert_eq!(thread_cap(), Some(2));
    std::env::set_var(THREADS_ENV, "0");
    assert_eq!(thread_cap(), None);
    std::env::remove_var(THREADS_ENV);
    assert_eq!(thread_cap(), None);
}
