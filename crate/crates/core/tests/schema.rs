use std::path::PathBuf;

fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/config.schema.json")
}

/// Regenerate with `UPDATE_SCHEMA=1 cargo test --test schema`.
#[test]
fn shipped_schema_matches_arguments() {
    let generated = serde_json::to_string_pretty(&arithdyn::cli::config_schema()).unwrap() + "\n";
    let path = schema_path();
    if std::env::var_os("UPDATE_SCHEMA").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &generated).unwrap();
    }
    let shipped = std::fs::read_to_string(&path).expect("schema/config.schema.json is missing");
    assert_eq!(shipped, generated, "schema is stale; rerun with UPDATE_SCHEMA=1");
}

#[test]
fn example_configs_parse() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/examples");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mut argv = vec!["arithdyn".to_string()];
        argv.extend(arithdyn::cli::config_to_args(&value).unwrap());
        argv.push("--dry-run".into());
        assert_eq!(arithdyn::cli::run(argv), 0, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 3);
}
