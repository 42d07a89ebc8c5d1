use std::io::Write;
use std::process::{Command, Output, Stdio};

fn racks(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_racks"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FLIP: &str = "rack 2\n1 0\n1 0\n";

#[test]
fn eval_words() {
    let o = racks(&["eval", "(x > x)"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(stdout(&racks(&["eval", "((x <| x) <| (x > x))"], None)), "0\n");
    assert_eq!(racks(&["eval", "(x > (x > x))", "--window", "1"], None).status.code(), Some(3));
    assert_eq!(racks(&["eval", "(x >"], None).status.code(), Some(2));
}

#[test]
fn census_stream() {
    let o = racks(&["census", "--order", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\track\t2\t2\n");

    let o = racks(&["census", "--order", "3", "--kind", "quandle", "--emit-tables", "--workers", "4"], None);
    let text = stdout(&o);
    let mut parts = text.splitn(2, '\n');
    assert_eq!(parts.next().unwrap(), "3\tquandle\t5\t3");
    // the emitted blocks form a valid file
    let blocks = &parts.next().unwrap()[1..];
    let v = racks(&["validate", "-"], Some(blocks));
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).lines().count(), 3);
    assert!(stdout(&v).lines().all(|l| l.contains("quandle=true")));

    let o = racks(&["census", "--order", "3", "--labeled", "--emit-tables"], None);
    assert!(stdout(&o).starts_with("3\track\t13\t6\n"));
    assert_eq!(stdout(&o).matches("rack 3").count(), 13);

    assert_eq!(racks(&["census", "--order", "9"], None).status.code(), Some(3));
    assert_eq!(racks(&["census", "--order", "2", "--kind", "group"], None).status.code(), Some(2));
}

#[test]
fn census_is_deterministic_across_workers() {
    let one = stdout(&racks(&["census", "--order", "5", "--kind", "quandle", "--emit-tables", "--workers", "1"], None));
    let eight = stdout(&racks(&["census", "--order", "5", "--kind", "quandle", "--emit-tables", "--workers", "8"], None));
    assert_eq!(one, eight);
    assert!(one.starts_with("5\tquandle\t404\t22\n"));
}

#[test]
fn transform_flip_rack() {
    let o = racks(&["transform", "-", "--op", "psi", "-m", "2"], Some(FLIP));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rack 2\n0 1\n0 1\n");

    let o = racks(&["transform", "-", "--op", "psi", "-m", "-1"], Some(FLIP));
    assert_eq!(stdout(&o), FLIP);

    let o = racks(&["transform", "-", "--op", "canon-perm"], Some(FLIP));
    assert_eq!(stdout(&o), "perm 2\n1 0\n");
    let back = racks(&["transform", "-", "--op", "perm-rack"], Some(&stdout(&o)));
    assert_eq!(stdout(&back), FLIP);

    let o = racks(&["transform", "-", "--op", "quandleify"], Some(FLIP));
    assert_eq!(stdout(&o), "rack 2\n0 1\n0 1\n");

    assert_eq!(racks(&["transform", "-", "--op", "psi"], Some(FLIP)).status.code(), Some(2));
}

#[test]
fn validate_reports_and_exit_codes() {
    let o = racks(&["validate", "-"], Some(FLIP));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rack order=2 quandle=false involutary=true kei=false"));

    // bijective rows, not self-distributive
    let o = racks(&["validate", "-"], Some("rack 2\n0 1\n1 0\n"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("block 1"));

    let o = racks(&["validate", "-"], Some("rack 2\n0 1\n1 7\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 3"));

    assert_eq!(racks(&["validate", "-", "--no-validate"], Some("rack 2\n0 1\n1 0\n")).status.code(), Some(0));
    assert_eq!(racks(&["validate", "/nonexistent/file"], None).status.code(), Some(2));
}

#[test]
fn check_and_center() {
    let o = racks(&["check", "-"], Some("rack 3\n0 2 1\n2 1 0\n1 0 2\n\nperm 3\n1 2 0\n"));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = racks(&["center", "--max-order", "2", "--composition"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("objects\t3\n"));
    assert!(text.contains("f_order\t2\n"));
    assert!(text.contains("f_powers_in_center\ttrue\n"));
    assert!(text.contains("compose\t0\t"));

    let o = racks(&["center", "--max-order", "3", "--kind", "quandle"], None);
    assert!(stdout(&o).contains("families\t1\n"));
    assert_eq!(racks(&["center", "--max-order", "5"], None).status.code(), Some(3));
}

#[test]
fn print_parse_round_trip() {
    let text = stdout(&racks(&["census", "--order", "4", "--kind", "involutary", "--emit-tables"], None));
    let blocks = text.split_once('\n').unwrap().1[1..].to_string();
    let again = racks(&["transform", "-", "--op", "psi", "-m", "1"], Some(&blocks));
    assert_eq!(stdout(&again), blocks);
}
