use std::path::PathBuf;
use std::process::{Command, Output};

use sgrid::braid::grid_to_braid;
use sgrid::closure::to_pd;
use sgrid::legendrian::thurston_bennequin;
use sgrid::moves::{stabilize, StabKind};
use sgrid::GridDiagram;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn sgrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgrid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn load(name: &str) -> GridDiagram {
    GridDiagram::parse(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn tb_and_braid_of_the_unknot() {
    let o = sgrid(&["tb", &data("unknot2.grid")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1");
    let o = sgrid(&["braid", &data("unknot2.grid")]);
    assert_eq!(stdout(&o), "braid 1\n\n");
}

#[test]
fn resolving_a_corner_is_a_validation_error() {
    let o = sgrid(&["resolve", "--at", "2,2", "--eta", "0", &data("unknot2.grid")]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(2,2)"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(sgrid(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(sgrid(&["tb"]).status.code(), Some(64));
    assert_eq!(sgrid(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_match_the_library() {
    for name in ["unknot2.grid", "trefoil.grid", "pinched_trefoil.grid", "two_circles.grid"] {
        let g = load(name);
        assert_eq!(stdout(&sgrid(&["tb", &data(name)])).trim(), thurston_bennequin(&g).to_string());
        assert_eq!(stdout(&sgrid(&["braid", &data(name)])).trim_end(), grid_to_braid(&g).serialize().trim_end());
        assert_eq!(stdout(&sgrid(&["pd", &data(name)])).trim_end(), to_pd(&g).to_text().trim_end());
    }
}

#[test]
fn moves_then_equivalence() {
    let dir = std::env::temp_dir().join(format!("sgrid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = sgrid(&["move", &data("unknot2.grid"), "stab:SE:1,1:0"]);
    assert_eq!(o.status.code(), Some(0));
    let h = GridDiagram::parse(&stdout(&o)).unwrap();
    assert_eq!(h, stabilize(&load("unknot2.grid"), StabKind::SE, 1, 1, 0).unwrap());
    let f = dir.join("se.grid");
    std::fs::write(&f, stdout(&o)).unwrap();
    let f = f.to_string_lossy();
    let sl = sgrid(&["equiv", &data("unknot2.grid"), &f, "--cat", "sl"]);
    assert_eq!(sl.status.code(), Some(1));
    assert!(stdout(&sl).contains("tb"));
    let st = sgrid(&["equiv", &data("unknot2.grid"), &f, "--cat", "st", "--json"]);
    assert_eq!(st.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&st)).unwrap();
    assert_eq!(v["command"], "equiv");
    assert_eq!(v["result"]["outcome"], "equivalent");
    assert_eq!(v["input-hash"].as_str().unwrap().len(), 64);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn closure_round_trips_a_braid() {
    let o = sgrid(&["closure", &data("mixed3.braid")]);
    let g = GridDiagram::parse(&stdout(&o)).unwrap();
    assert_eq!(grid_to_braid(&g).serialize(), std::fs::read_to_string(data("mixed3.braid")).unwrap());
    assert_eq!(stdout(&o), std::fs::read_to_string(data("mixed3.closure.grid")).unwrap());
}
