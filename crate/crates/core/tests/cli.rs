use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use exroute::format::{parse_exceptions, parse_graph, write_exceptions, write_graph};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn exroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn detour(cmd: &str, extra: &[&str]) -> Output {
    let g = data("detour.graph");
    let x = data("detour.exc");
    let mut args = vec![
        cmd,
        "--graph",
        g.to_str().unwrap(),
        "--exceptions",
        x.to_str().unwrap(),
        "--undirected",
        "--source",
        "s",
    ];
    args.extend_from_slice(extra);
    exroute(&args)
}

#[test]
fn route_detour() {
    let o = detour("route", &["--target", "t"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PATH s c a b t\nLENGTH 4\n");

    let o = detour("route", &["--target", "t", "--stats"]);
    assert_eq!(
        stdout(&o),
        "PATH s c a b t\nLENGTH 4\nITERATIONS 1\nQUERIES 2\nREPLICAS 2\n"
    );

    let o = detour("route", &["--target", "t", "--oracle", "any"]);
    assert_eq!(stdout(&o), "PATH s c a b t\nLENGTH 4\n");
}

#[test]
fn route_all_and_weak_agree() {
    let all = detour("route-all", &[]);
    assert_eq!(all.status.code(), Some(0));
    let expected = "\
TO s LENGTH 0 PATH s
TO a LENGTH 1 PATH s a
TO b LENGTH 2 PATH s a b
TO t LENGTH 4 PATH s c a b t
TO c LENGTH 1 PATH s c
";
    assert_eq!(stdout(&all), expected);
    let weak = detour("route-weak", &[]);
    assert_eq!(stdout(&weak), expected);
    let weak_any = detour("route-weak", &["--oracle", "any"]);
    assert_eq!(stdout(&weak_any), expected);
}

#[test]
fn input_errors_exit_two() {
    let o = detour("route", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--target"));

    let o = detour("route-all", &["--target", "t"]);
    assert_eq!(o.status.code(), Some(2));

    let o = detour("route", &["--target", "nowhere"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown vertex `nowhere`"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "2 1\na b -1\n").unwrap();
    let o = exroute(&[
        "route",
        "--graph",
        bad.to_str().unwrap(),
        "--source",
        "a",
        "--target",
        "b",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let exc = dir.path().join("bad.exc");
    std::fs::write(&exc, "a a\n").unwrap();
    let g = data("detour.graph");
    let o = exroute(&[
        "route-all",
        "--graph",
        g.to_str().unwrap(),
        "--exceptions",
        exc.to_str().unwrap(),
        "--source",
        "s",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn infeasible_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("line.graph");
    let x = dir.path().join("line.exc");
    std::fs::write(&g, "3 2\na b 1\nb c 1\n").unwrap();
    std::fs::write(&x, "a b c\n").unwrap();
    let args = [
        "--graph",
        g.to_str().unwrap(),
        "--exceptions",
        x.to_str().unwrap(),
        "--source",
        "a",
    ];
    let o = exroute(&[&["route"][..], &args, &["--target", "c"]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "INFEASIBLE\n");

    let o = exroute(&[&["route-all"][..], &args].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "TO a LENGTH 0 PATH a\nTO b LENGTH 1 PATH a b\nTO c INFEASIBLE\n"
    );
}

#[test]
fn verify_bundled_instances() {
    let dir = data("random");
    let mut checked = 0;
    for i in 0..100 {
        let g = dir.join(format!("{i:03}.graph"));
        let x = dir.join(format!("{i:03}.exc"));
        for oracle in ["earliest", "any"] {
            let o = exroute(&[
                "verify",
                "--graph",
                g.to_str().unwrap(),
                "--exceptions",
                x.to_str().unwrap(),
                "--source",
                "v0",
                "--oracle",
                oracle,
            ]);
            assert_eq!(stdout(&o), "MATCH\n", "instance {i:03} with {oracle}");
            assert_eq!(o.status.code(), Some(0));
        }
        checked += 1;
    }
    assert_eq!(checked, 100);
}

#[test]
fn verify_catches_in_edge_deletion() {
    let g = data("regrowth.graph");
    let x = data("regrowth.exc");
    let base = [
        "verify",
        "--graph",
        g.to_str().unwrap(),
        "--exceptions",
        x.to_str().unwrap(),
        "--source",
        "v0",
    ];
    let o = exroute(&base);
    assert_eq!(stdout(&o), "MATCH\n");
    let o = exroute(&[&base[..], &["--prune", "delete"]].concat());
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("MISMATCH"), "{}", stdout(&o));
}

#[test]
fn canonical_round_trip_of_bundled_files() {
    for i in 0..100 {
        let gtext = std::fs::read_to_string(data("random").join(format!("{i:03}.graph"))).unwrap();
        let xtext = std::fs::read_to_string(data("random").join(format!("{i:03}.exc"))).unwrap();
        let named = parse_graph(&gtext, false).unwrap();
        let canon = write_graph(&named);
        let again = parse_graph(&canon, false).unwrap();
        assert_eq!(write_graph(&again), canon);
        assert_eq!(again.graph.edge_count(), named.graph.edge_count());
        let store = parse_exceptions(&xtext, &named).unwrap();
        assert_eq!(write_exceptions(&store, &named.symbols), xtext);
    }
}
