use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use walgebra::format::{CellJson, QSeriesJson, ReportJson, RootSystemJson, SliceJson, VermaJson};
use walgebra::run;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn walgebra(args: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("walgebra").chain(args.split_whitespace());
    let code = run(argv, &mut out, &mut err);
    Output { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Violations of `docs/schemas/<name>`, sibling references resolved offline.
fn schema_errors(name: &str, doc: &Value) -> Vec<String> {
    let base = "file:///schemas/";
    let mut registry = jsonschema::Registry::new();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_str().unwrap().to_string();
        let contents: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        registry = registry.add(format!("{base}{file}"), contents).unwrap();
    }
    let registry = registry.prepare().unwrap();
    let schema = serde_json::json!({ "$ref": format!("{base}{name}") });
    let v = jsonschema::options().with_registry(&registry).build(&schema).unwrap();
    v.iter_errors(doc).map(|e| e.to_string()).collect()
}

fn assert_schema(name: &str, doc: &Value) {
    let errors = schema_errors(name, doc);
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn schemas_reject_decimals_and_extra_fields() {
    let good = serde_json::json!({"lead_exp": "-1/48", "coeffs": ["1", "0"], "order": 1});
    assert!(schema_errors("qseries.schema.json", &good).is_empty());
    let decimal = serde_json::json!({"lead_exp": "-0.02", "coeffs": ["1"], "order": 0});
    assert!(!schema_errors("qseries.schema.json", &decimal).is_empty());
    let extra = serde_json::json!({"classical": ["0"], "level": "1", "delta": "0", "x": 1});
    assert!(!schema_errors("affine-weight.schema.json", &extra).is_empty());
}

#[test]
fn central_charge_of_ising_level() {
    let o = walgebra("cc --type A1 --level -5/4");
    assert_eq!((o.code, o.out.as_str()), (0, "1/2\n"));
    let o = walgebra("cc --type A --rank 1 --level -5/4 --format json");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["central_charge"], "1/2");
    assert_schema("scalar.schema.json", &v);
}

#[test]
fn three_ising_cells() {
    let o = walgebra("admissible-list --type A1 --pq 3/4 --format json");
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("cells.schema.json", &v);
    let cells: Vec<CellJson> = serde_json::from_value(v.clone()).unwrap();
    let mut deltas: Vec<&str> = cells.iter().map(|c| c.delta_weight.as_str()).collect();
    deltas.sort();
    assert_eq!(deltas, ["0", "1/16", "1/2"]);
    assert!(cells.iter().all(|c| c.central_charge == "1/2"));
    assert_eq!(serde_json::to_value(&cells).unwrap(), v);
}

#[test]
fn brst_generic_order_six_passes() {
    let o = walgebra("brst-verify --type A1 --level generic --order 6 --format json");
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("report.schema.json", &v);
    let r: ReportJson = serde_json::from_value(v.clone()).unwrap();
    assert!(r.pass);
    assert_eq!(r.slices.iter().map(|s| s.cohomology[0]).collect::<Vec<_>>(), [1, 0, 1, 1, 2, 2, 4]);
    assert_eq!(serde_json::to_value(ReportJson::from(&r.to_report())).unwrap(), v);
    // one progress line per slice on the log channel
    assert_eq!(o.err.lines().filter(|l| l.starts_with("slice")).count(), 7);
    let tsv = walgebra("brst-verify --type A1 --level generic --order 6");
    assert_eq!(tsv.out.lines().last(), Some("PASS"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = walgebra("brst-verify --type A2 --level 7/3 --order 3 --jobs 1 --format json");
    let b = walgebra("brst-verify --type A2 --level 7/3 --order 3 --jobs 4 --format json");
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let c = walgebra("kostant-verify --type A2 --max-dim 15 --jobs 3");
    let d = walgebra("kostant-verify --type A2 --max-dim 15 --jobs 1");
    assert_eq!(c.out, d.out);
}

#[test]
fn critical_level_exits_three() {
    for args in
        ["cc --type A1 --level -2", "brst-verify --type A2 --level -3 --order 1", "char-verma --type A1 --level -2"]
    {
        let o = walgebra(args);
        assert_eq!(o.code, 3, "{args}");
        assert!(o.err.contains("k = -h∨"), "{}", o.err);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "cc --type A1 --level generic",
        "cc --type A1",
        "cc --type Q1 --level 1",
        "cc --type A1 --rank 2 --level 1",
        "cc --type A1 --level 1/0",
        "admissible-list --type A1 --pq 1/4",
        "delta --type A2 --level 1 --weight 1",
        "kostant-verify --type A1 --weight 1/2",
        "kostant-verify --type A1",
        "frobnicate --type A1",
    ] {
        assert_eq!(walgebra(args).code, 2, "{args}");
    }
}

#[test]
fn characters_as_json() {
    let o = walgebra("char-vacuum --type A1 --order 10 --format json");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("qseries.schema.json", &v);
    let s: QSeriesJson = serde_json::from_value(v).unwrap();
    assert_eq!(s.coeffs, ["1", "0", "1", "1", "2", "2", "4", "4", "7", "8", "12"]);

    let o = walgebra("char-irrep --type A1 --pq 3/4 --order 6 --format json");
    let s: QSeriesJson = serde_json::from_str(&o.out).unwrap();
    assert_eq!(s.lead_exp, "-1/48");
    assert_eq!(s.coeffs, ["1", "0", "1", "1", "2", "2", "3"]);

    let o = walgebra("char-irrep --type A1 --pq 3/4 --mu 1 --order 3");
    assert_eq!(o.out, "1/24\t1\n25/24\t1\n49/24\t1\n73/24\t2\n");

    let o = walgebra("char-verma --type A2 --level 1/2 --weight 1,-1/3 --order 3 --format json");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("qseries.schema.json", &v);
    let s: QSeriesJson = serde_json::from_value(v).unwrap();
    assert_eq!(s.coeffs, ["1", "2", "5", "10"]);
    assert_eq!(QSeriesJson::from(&s.to_series().unwrap()), s);
}

#[test]
fn conformal_weights() {
    assert_eq!(walgebra("delta --type A1 --pq 3/4 --mu 1").out, "1/16\n");
    assert_eq!(walgebra("delta --type A1 --level -5/4 --weight -3/2").out, "1/16\n");
    assert_eq!(walgebra("delta --type A1 --level -5/4 --weight -3/4").out, "0\n");
}

#[test]
fn kostant_outputs() {
    let o = walgebra("kostant-verify --type A2 --max-dim 10 --format json");
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("report-list.schema.json", &v);
    let reps: Vec<ReportJson> = serde_json::from_value(v).unwrap();
    // 1, 3, 3̄, 6, 6̄, 8, 10, 10̄
    assert_eq!(reps.len(), 8);

    let o = walgebra("kostant-verify --type A2 --verma --weight 1/3,-2/5 --order 4 --format json");
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("verma.schema.json", &v);
    let r: VermaJson = serde_json::from_value(v).unwrap();
    assert!(r.pass && r.coinvariants == 1);
}

#[test]
fn slice_and_roots_dumps() {
    let o = walgebra("slice --type A1 --level generic --delta 2 --format json");
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_schema("slice.schema.json", &v);
    let s: SliceJson = serde_json::from_value(v).unwrap();
    assert_eq!(s.bases.iter().map(Vec::len).collect::<Vec<_>>(), [3, 2]);
    assert_eq!(s.matrices[0].entries.len(), 5);

    let o = walgebra("slice --type A1 --level -5/4 --delta 1 --format json");
    let s: SliceJson = serde_json::from_str(&o.out).unwrap();
    assert_eq!(s.level, "-5/4");
    assert_eq!(s.matrices[0].entries, [(0, 0, "2".to_string())]);

    for t in ["A1", "A3", "B3", "G2", "F4"] {
        let o = walgebra(&format!("roots --type {t} --format json"));
        let v: Value = serde_json::from_str(&o.out).unwrap();
        assert_schema("root-system.schema.json", &v);
        let r: RootSystemJson = serde_json::from_value(v).unwrap();
        assert_eq!(r.heights.len(), r.positive_roots.len());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.tsv");
    let o = walgebra(&format!("admissible-list --type A1 --pq 3/4 --out {}", path.display()));
    assert_eq!((o.code, o.out.as_str()), (0, ""));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("lambda\tmu\tLambda\tdelta_weight\tcentral_charge\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_walgebra");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = st(&["cc", "--type", "A1", "--level", "-5/4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1/2\n");
    assert_eq!(st(&["cc", "--type", "A1", "--level", "-2"]).status.code(), Some(3));
    assert_eq!(st(&["cc", "--type", "A1", "--level", "generic"]).status.code(), Some(2));
    assert_eq!(st(&["--help"]).status.code(), Some(0));
}
