use std::io::Write;
use std::process::{Command, Output, Stdio};

const FIBONACCI: &str = "a[n+2] = a[n+1] + a[n]; a[1]=1; a[2]=1";
const BINET: &str = "((1+sqrt(5))^n - (1-sqrt(5))^n)/(2^n*sqrt(5))";

fn sumtrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumtrans"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn solve_fibonacci() {
    let out = sumtrans(&["solve", "-e", FIBONACCI]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains(&format!("closed form: a[n] = {BINET}")),
        "{text}"
    );
    assert!(text.contains("values:      1, 1, 2, 3, 5, 8, 13, 21, 34, 55"));
    assert!(text.contains("transform:   e^s/(e^(2s) - e^s - 1)"));
}

#[test]
fn solve_affine_unit_slope() {
    let out = sumtrans(&[
        "solve",
        "-e",
        "a[n+1]=a[n]+3; a[1]=2",
        "--terms",
        "4",
        "--display",
        "t",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("closed form: a[n] = 2 + 3*(n-1)"), "{text}");
    assert!(text.contains("values:      2, 5, 8, 11\n"));
    assert!(text.contains("transform:   (2*t + 1)/(t - 1)^2"));
}

#[test]
fn unsupported_cubic_exits_with_two() {
    let out = sumtrans(&[
        "solve",
        "-e",
        "a[n+3] = a[n+2] + a[n]; a[1]=1; a[2]=1; a[3]=1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unsupported factorization"));
}

#[test]
fn resonant_forcing_exits_with_two() {
    let out = sumtrans(&["solve", "-e", "a[n+1] = 2*a[n] + 2^n; a[1]=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("resonates with a characteristic root"));
}

#[test]
fn input_errors_exit_with_one() {
    let out = sumtrans(&["solve", "-e", "a[n+2] = a[n]; a[1]=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("missing initial value a[2]"));

    let out = sumtrans(&["solve", "-e", "a[n+1] = a[n] +\n * 2; a[1] = 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("line 2, column 2"),
        "{}",
        stderr(&out)
    );

    let out = sumtrans(&["solve", "-e", "a[n+1] = a[n]; a[1] = 1; colour = red"]);
    assert_eq!(out.status.code(), Some(1));

    let out = sumtrans(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_fibonacci() {
    let out = sumtrans(&["verify", "-e", FIBONACCI, "--upto", "60", "--expect", BINET]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("exact:       pass (n <= 60)"));
    assert_eq!(text.matches("numeric:     pass").count(), 3);
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn verify_tampered_initial_fails() {
    let tampered = "a[n+2] = a[n+1] + a[n]; a[1]=1; a[2]=2";
    let out = sumtrans(&["verify", "-e", tampered, "--expect", BINET]);
    assert_eq!(out.status.code(), Some(3));
    let out = sumtrans(&["verify", "-e", tampered, "--expect-values", "1,1,2,3,5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("values:      FAIL at n = 2"));
}

#[test]
fn verify_affine() {
    let out = sumtrans(&[
        "verify",
        "-e",
        "a[n+1] = 2*a[n] + 1; a[1] = 1",
        "--upto",
        "40",
        "--expect-values",
        "1, 3, 7, 15",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_skips_divergent_grid_points() {
    // 5^(n-1) growth: the series only converges for s > ln 5
    let out = sumtrans(&[
        "verify",
        "-e",
        "a[n+1] = 5*a[n]; a[1] = 1",
        "--s-grid",
        "1.0,2.0,3.0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("skipped s = 1"));
    let out = sumtrans(&[
        "verify",
        "-e",
        "a[n+1] = 5*a[n]; a[1] = 1",
        "--s-grid",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_json() {
    let out = sumtrans(&["verify", "-e", FIBONACCI, "--json", "--s-grid", "1.2"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["exact"]["checked_upto"], 64);
    let check = &json["numeric"]["checks"][0];
    assert_eq!(check["s"], 1.2);
    assert!(check["discrepancy"].as_f64().unwrap() < 1e-9);
    assert!(check["terms"].as_u64().unwrap() >= 1);
}

#[test]
fn solve_json_schema() {
    let out = sumtrans(&["solve", "-e", FIBONACCI, "--json", "--terms", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let values: Vec<&str> = json["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "1", "2", "3", "5", "8", "13", "21", "34"]);
    assert_eq!(json["verified_upto"], 64);
    assert_eq!(json["closed_form"]["rendered"], BINET);
    let terms = json["closed_form"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for term in terms {
        assert_eq!(term["root"]["rational"], "1/2");
        assert_eq!(term["root"]["radicand"], "5");
        assert_eq!(term["multiplicity"], 1);
    }
    let numerator: Vec<&str> = json["transform"]["numerator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["rational"].as_str().unwrap())
        .collect();
    assert_eq!(numerator, ["0", "1"]);

    let out = sumtrans(&[
        "solve",
        "-e",
        "a[n+1] = 1/2*a[n] + 1; a[1] = 1/3",
        "--json",
        "--terms",
        "3",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["values"], serde_json::json!(["1/3", "7/6", "19/12"]));
    assert!(json["coefficient_decomposition"].is_null());
}

#[test]
fn reads_file_and_stdin() {
    let dir = std::env::temp_dir().join(format!("sumtrans-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fib.rec");
    std::fs::write(
        &path,
        "# Fibonacci\na[n+2] = a[n+1] + a[n];\na[1] = 1;\na[2] = 1;\nterms = 5;\n",
    )
    .unwrap();
    let out = sumtrans(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("values:      1, 1, 2, 3, 5\n"));
    std::fs::remove_dir_all(&dir).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_sumtrans"))
        .args(["solve", "--terms", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"a[n+1] = 3*a[n] + 1; a[1] = 1")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("values:      1, 4, 13\n"));
}

#[test]
fn table_is_stable() {
    let first = sumtrans(&["table"]);
    let second = sumtrans(&["table"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert_eq!(text, stdout(&second));
    assert!(text.contains("5^(n-1) <-> 1/(e^s - 5)\n"));
    assert!(text.contains("(f*g)(n) <-> F(s)G(s)\n"));
    assert!(text.contains("1/n <-> s - ln(e^s - 1)\n"));
    let t = stdout(&sumtrans(&["table", "--display", "t"]));
    assert_eq!(t.lines().count(), text.lines().count());
    assert!(t.contains("5^(n-1) <-> 1/(t - 5)\n"));
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/../../docs/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, args: &[&str]) {
    let out = sumtrans(args);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&json)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
}

#[test]
fn json_output_matches_documented_schema() {
    let solution = schema("solution.schema.json");
    for program in [
        FIBONACCI,
        "a[n+1] = 1/2*a[n] + 1; a[1] = 1/3",
        "a[n+2] = 2*a[n+1] - a[n] + n; a[1] = 1; a[2] = 3",
        "a[n+3] = a[n+1]; a[1] = 1; a[2] = 0; a[3] = 5",
    ] {
        assert_valid(&solution, &["solve", "-e", program, "--json"]);
        assert_valid(
            &solution,
            &["solve", "-e", program, "--json", "--display", "t"],
        );
    }
    let mut tampered: serde_json::Value =
        serde_json::from_slice(&sumtrans(&["solve", "-e", FIBONACCI, "--json"]).stdout).unwrap();
    tampered["values"][0] = serde_json::json!(1.0);
    assert!(!solution.is_valid(&tampered));

    let verify = schema("verify.schema.json");
    assert_valid(
        &verify,
        &["verify", "-e", FIBONACCI, "--json", "--expect", BINET],
    );
    assert_valid(
        &verify,
        &[
            "verify",
            "-e",
            "a[n+1] = 5*a[n]; a[1] = 1",
            "--json",
            "--s-grid",
            "1",
            "--expect-values",
            "1,5",
        ],
    );
    assert_valid(
        &verify,
        &[
            "verify",
            "-e",
            "a[n+2] = a[n+1] + a[n]; a[1]=1; a[2]=2",
            "--json",
            "--expect-values",
            "1,1,2",
        ],
    );
}
