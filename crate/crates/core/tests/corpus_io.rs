use partition_theta::corpus::{load_corpus, parse_corpus, validate_entry, Corpus};
use partition_theta::Error;

fn shipped_json() -> serde_json::Value {
    serde_json::from_str(&Corpus::shipped().to_json()).unwrap()
}

#[test]
fn round_trip_is_semantic_identity() {
    let text = include_str!("../data/corpus.json");
    let original: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(shipped_json(), original);
    let reparsed = parse_corpus(&Corpus::shipped().to_json()).unwrap();
    assert_eq!(reparsed, Corpus::shipped());
}

#[test]
fn load_from_disk() {
    let path = std::env::temp_dir().join(format!("corpus-{}.json", std::process::id()));
    std::fs::write(&path, Corpus::shipped().to_json()).unwrap();
    let c = load_corpus(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(c.entries.len(), 238);
    assert!(matches!(
        load_corpus("/definitely/not/here.json"),
        Err(Error::Io(_))
    ));
}

#[test]
fn duplicate_label_rejected() {
    let mut v = shipped_json();
    let entries = v["entries"].as_array_mut().unwrap();
    let label = entries[0]["label"].clone();
    entries[1]["label"] = label;
    let err = parse_corpus(&v.to_string()).unwrap_err();
    assert_eq!(err, Error::DuplicateLabel("Thm-32.1".into()));
}

#[test]
fn residue_beyond_half_modulus_rejected() {
    let mut v = shipped_json();
    v["entries"][0]["S"][11] = serde_json::json!(17);
    assert!(matches!(
        parse_corpus(&v.to_string()),
        Err(Error::SchemaViolation { .. })
    ));
}

#[test]
fn manifest_mismatch_rejected() {
    let mut v = shipped_json();
    v["manifest"]["per_modulus"]["46"] = serde_json::json!(12);
    assert!(parse_corpus(&v.to_string()).is_err());
}

#[test]
fn malformed_json_reports_position() {
    let text = "{\n  \"manifest\": {\"total\": 0, \"per_modulus\": {}},\n  \"entries\": [,]\n}";
    match parse_corpus(text) {
        Err(Error::Parse { location, .. }) => assert!(location.contains('3'), "{location}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn corrupted_entry_reports_failing_coefficient() {
    let corpus = Corpus::shipped();
    let mut entry = corpus.get("Thm-46.1-i").unwrap().clone();
    let fresh = (1..=23).find(|r| !entry.s.contains(r)).unwrap();
    entry.s[11] = fresh;
    entry.s.sort();
    let report = validate_entry(&entry, 500);
    assert!(!report.pass);
    let first = report.verify.unwrap().first_failure.unwrap();
    assert!(first <= 100, "{first}");
    assert!(report
        .details
        .iter()
        .any(|d| d.starts_with(&format!("fails at n = {first}"))));
}
