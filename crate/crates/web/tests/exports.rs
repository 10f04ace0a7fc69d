use serde_json::Value;
use tangles_web::{browse_free, free_representatives, render_document, table};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn renders_a_document() {
    let v = parse(&render_document(r#"{"edges": [[0,0,"E"]]}"#, 1.0, true, false));
    assert_eq!(v["arcs"], 8);
    assert_eq!(v["c"], 2);
    assert_eq!(v["smooth_and_simple"], true);
    assert!(v["svg"].as_str().unwrap().contains("<path"));
}

#[test]
fn reports_errors_as_json() {
    let v = parse(&render_document("{", 1.0, false, false));
    assert!(v["error"].as_str().unwrap().contains("malformed"));
    let v = parse(&render_document(r#"{"edges": [[0,0,"E"]]}"#, -1.0, false, false));
    assert!(v["error"].is_string());
}

#[test]
fn small_table() {
    assert_eq!(table(2), "m,c,fixed,one_sided,free\n0,1,1,1,1\n1,2,2,1,1\n2,3,6,2,2\n");
    assert_eq!(table(99).lines().count(), table(8).lines().count());
}

#[test]
fn free_counts_match_the_table() {
    assert_eq!(free_representatives(4, 5).len(), 15);
    assert_eq!(free_representatives(4, 3).len(), 1);
    assert_eq!(free_representatives(7, 4).len(), 1);
    assert_eq!(free_representatives(0, 1).len(), 1);
    let v = parse(&browse_free(3, 4, 7, 1.0));
    assert_eq!((v["total"].as_u64(), v["index"].as_u64()), (Some(5), Some(2)));
    assert!(parse(&browse_free(3, 3, 0, 1.0))["error"].is_string());
}
