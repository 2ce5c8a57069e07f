use qunimodal::cli::parse_certificate;
use qunimodal_core::certify::{build_base_registry, certify, verify, Member, Node};
use serde_json::json;

#[test]
fn schema_field_names() {
    let registry = build_base_registry().unwrap();
    let cert = certify(8, 24, &registry).unwrap();
    let value = serde_json::to_value(&cert).unwrap();
    assert_eq!(value["conclusion"], json!({"ell": 8, "m": 24}));
    assert_eq!(value["transposed"], false);
    let add = &value["node"]["add"];
    assert_eq!(add["ell"], 8);
    assert_eq!(add["right"], json!({"base": {"ell": 8, "m": 8}}));
    assert_eq!(add["even_witness"], "ell");
    assert!(add["left"]["add"].is_object());
}

#[test]
fn accepts_hand_written_file() {
    let text = r#"{
        "conclusion": {"ell": 5, "m": 23},
        "node": {"add": {
            "ell": 5,
            "left": {"base": {"ell": 5, "m": 15}},
            "right": {"base": {"ell": 5, "m": 8}},
            "even_witness": "m2",
            "geq3_witness": "m1"
        }},
        "transposed": false
    }"#;
    let cert = parse_certificate(text).unwrap();
    let Node::Add { even_witness, .. } = &cert.node else {
        panic!("expected an addition");
    };
    assert_eq!(*even_witness, Member::M2);
    assert!(verify(&cert).accepted);

    let transposed = r#"{"conclusion":{"ell":23,"m":5},
        "node":{"transpose":{"base":{"ell":9,"m":5}}},"transposed":true}"#;
    let cert = parse_certificate(transposed).unwrap();
    let v = verify(&cert);
    assert!(!v.accepted);
    assert_eq!(v.failure.unwrap().path, "node");
}

#[test]
fn rejects_other_schemas() {
    for text in [
        r#"{"conclusion":{"ell":8,"m":8},"node":{"base":{"ell":8,"m":8}},"transposed":false,"extra":1}"#,
        r#"{"conclusion":{"ell":8,"m":8},"node":{"leaf":{"ell":8,"m":8}},"transposed":false}"#,
        r#"{"conclusion":{"ell":8,"m":8},"node":{"base":{"ell":8,"m":8}}}"#,
        r#"{"conclusion":{"ell":8,"m":8},"node":{"base":{"ell":8,"m":8}},"transposed":false} trailing"#,
        r#"{"conclusion":{"ell":8,"m":16},"node":{"add":{"ell":8,"left":{"base":{"ell":8,"m":8}},"right":{"base":{"ell":8,"m":8}},"even_witness":"both","geq3_witness":"ell"}},"transposed":false}"#,
    ] {
        assert!(parse_certificate(text).is_err(), "{text}");
    }
}

#[test]
fn deep_certificates_round_trip() {
    let registry = build_base_registry().unwrap();
    // Tens of thousands of nested additions, far past serde_json's default
    // recursion limit of 128.
    let handle = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || {
            let cert = certify(11, 400_003, &registry).unwrap();
            let text = serde_json::to_string(&cert).unwrap();
            assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, cert);
            assert!(verify(&back).accepted);
        })
        .unwrap();
    handle.join().unwrap();
}
