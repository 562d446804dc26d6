use std::fs;
use std::path::Path;
use std::process::Command;

use toric_matroids::catalog::uniform;
use toric_matroids::exchange::symmetric_exchange_set;
use toric_matroids::oracle::matroid_toric_gb;
use toric_matroids::BinomialSet;

fn run(args: &[String], threads: Option<usize>) -> (Option<i32>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mtoric"));
    if let Some(n) = threads {
        cmd.arg("--threads").arg(n.to_string());
    }
    let out = cmd.args(args).output().expect("mtoric runs");
    (out.status.code(), out.stdout)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

pub fn cli_determinism() -> String {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let u24 = uniform(2, 4).unwrap();
    let mtx = write(d, "u24.json", &u24.to_json());
    let graph = write(d, "k4.json", r#"{"edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
    let weight = write(d, "w.json", "[3, 0, 1, 4, 1, 5]");
    let full = matroid_toric_gb(&u24).unwrap();
    let gb = write(d, "gb.json", &full.to_json());
    let one = BinomialSet::new(full.ambient().clone(), full.iter().take(1).cloned()).unwrap();
    let one = write(d, "one.json", &one.to_json());
    let ex = write(d, "ex.json", &symmetric_exchange_set(&u24).binomials.to_json());
    let wo = format!("weight:{weight}");

    let commands: Vec<Vec<&str>> = vec![
        vec!["matroid", "validate", &mtx],
        vec!["matroid", "info", &graph],
        vec!["matroid", "dual", "u:2,5"],
        vec!["matroid", "delete", &mtx, "--at", "2"],
        vec!["matroid", "contract", "W3", "--at", "1"],
        vec!["matroid", "direct-sum", &mtx, "u:1,2"],
        vec!["matroid", "connectivity", "P6"],
        vec!["matroid", "connectivity", "u:1,2", "--n", "2"],
        vec!["ideal", "gens", &mtx],
        vec!["ideal", "gens", &mtx, "--order", &wo],
        vec!["ideal", "gens", "MK4", "--method", "oracle", "--order", "lex"],
        vec!["ideal", "gb", &mtx, "--order", &wo],
        vec!["ideal", "gb", "u:2,5", "--method", "exchange"],
        vec!["ideal", "equal", &gb, &ex],
        vec!["ideal", "equal", &gb, &one],
        vec!["white", "check-gen", &graph],
        vec!["white", "check-gb", "u:3,5"],
        vec!["construct", "series-ext", &mtx, "--at", "4"],
        vec!["construct", "parallel-ext", "u:2,3", "--at", "1", "--method", "exchange"],
        vec!["construct", "series-conn", &mtx, "u:2,3", "--at", "4", "--at", "1"],
        vec!["construct", "parallel-conn", "u:1,2", "u:2,3", "--at", "1", "--at", "2"],
        vec!["construct", "two-sum", &mtx, "u:2,3", "--at", "1", "--at", "3"],
        vec!["construct", "two-sum", "u:2,3", "u:1,1", "--at", "1", "--at", "1"],
        vec!["construct", "sp-sequence", "u:1,2", "--steps", "s1,p3,s2", "--no-verify"],
        vec!["minor", "has", "W3", "u:2,4"],
        vec!["minor", "excluded-free", "Q6"],
        vec!["catalog", "P6"],
        vec!["catalog", &graph],
        vec!["matroid", "validate", "missing-file.json"],
    ];
    let mut codes = [0usize; 3];
    for args in &commands {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let first = run(&args, None);
        assert_eq!(first, run(&args, None), "{args:?}: repeated runs differ");
        assert_eq!(first, run(&args, Some(2)), "{args:?}: differs with two threads");
        let code = first.0.expect("exit code");
        codes[code.min(2) as usize] += 1;
    }
    let out = d.join("out.json");
    let to_file = |n: usize| {
        let args = ["--out", out.to_str().unwrap(), "construct", "series-conn", "u:2,4", "u:2,4", "--at", "1", "--at", "2"];
        let status = Command::new(env!("CARGO_BIN_EXE_mtoric"))
            .args(args)
            .args(["--threads", &n.to_string()])
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(&out).unwrap()
    };
    assert_eq!(to_file(1), to_file(2), "--out files differ");
    format!(
        "{} commands run three times each, byte-identical (exit 0: {}, 1: {}, 2: {}); --out file identical",
        commands.len(),
        codes[0],
        codes[1],
        codes[2]
    )
}
