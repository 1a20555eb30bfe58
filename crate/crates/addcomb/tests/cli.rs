use std::fs;
use std::process::{Command, Output};

fn addcomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addcomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bohr_reports_csv() {
    let o = addcomb(&[
        "bohr", "--group", "101", "--freqs", "1;7", "--width", "1.0", "--csv", "-",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "group,frequencies,rank,width,size,lower_bound,bound_holds,regular,irregular_at"
    );
    assert!(lines.next().unwrap().starts_with("101,1;7,2,1,"));
}

#[test]
fn regularize_gives_regular_set() {
    let o = addcomb(&[
        "bohr",
        "--group",
        "3,5",
        "--freqs",
        "1,2",
        "--width",
        "1.5",
        "--regularize",
        "--csv",
        "-",
    ]);
    assert!(o.status.success());
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[7], "true");
}

#[test]
fn malformed_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1,2\nnot a number\n").unwrap();
    let o = addcomb(&[
        "count-configs",
        "--group",
        "3,5",
        "--set-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[invalid-config]:"));
}

#[test]
fn missing_file_and_bad_scope_exit_2() {
    let o = addcomb(&["gridnorm", "--table-file", "/nonexistent/table.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = addcomb(&["verify", "--scope", "nothing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn even_order_group_is_rejected() {
    let o = addcomb(&["count-configs", "--group", "4", "--density", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_limit_exit_3() {
    let o = addcomb(&["sumfree-m", "--size", "20", "--universe", "60"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error[resource-limit]:"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "--seed", "5", "sift", "--group", "63", "--p", "6", "--csv", "-",
    ];
    let (a, b) = (addcomb(&args), addcomb(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = addcomb(&[
        "--seed", "6", "sift", "--group", "63", "--p", "6", "--csv", "-",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn csv_to_file_and_set_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("behrend.txt");
    let csv = dir.path().join("report.csv");
    let o = addcomb(&[
        "behrend",
        "--n",
        "1000",
        "--out",
        set.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let report = fs::read_to_string(&csv).unwrap();
    assert!(report.starts_with("n,size,density\n1000,"));
    let o = addcomb(&["sumfree-greedy", "--set-file", set.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn count_hom_from_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    fs::write(
        &path,
        r#"{"vertices":3,"edges":[[0,1],[0,2],[1,2]],"set_sizes":[2,2,2],"tables":[["10","00"],["11","11"],["11","11"]]}"#,
    )
    .unwrap();
    let o = addcomb(&[
        "count-hom",
        "--instance-file",
        path.to_str().unwrap(),
        "--csv",
        "-",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("2,8,"));
}

#[test]
fn interval_embedding_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    fs::write(&path, "1\n2\n3\n5\n8\n").unwrap();
    let o = addcomb(&[
        "embed",
        "--interval",
        "10",
        "--set-file",
        path.to_str().unwrap(),
        "--k",
        "2",
        "--csv",
        "-",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",true"));
}

#[test]
fn freiman_embedding_finds_image() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    fs::write(&path, "1\n4\n9\n16\n25\n").unwrap();
    let o = addcomb(&[
        "embed-freiman",
        "--set-file",
        path.to_str().unwrap(),
        "--csv",
        "-",
    ]);
    assert!(o.status.success());
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert_eq!(row.split(',').nth(2), Some("true"));
}

#[test]
fn random_increment_set_is_drawn_inside_the_bohr_set() {
    let o = addcomb(&[
        "increment-search",
        "--group",
        "401",
        "--density",
        "0.3",
        "--freqs",
        "1",
        "--width",
        "1.0",
        "--csv",
        "-",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
