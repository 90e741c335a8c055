use std::fs;

use permcode::census::{class_file_name, write_census};
use permcode::search::canonical_augmentation;
use permcode::{Code, SearchConfig};

#[test]
fn census_directory_is_reproducible() {
    let r = canonical_augmentation(4, 3, &SearchConfig::default()).unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let written = write_census(a.path(), &r, false).unwrap();
    write_census(b.path(), &r, false).unwrap();
    assert_eq!(written.len(), r.total());
    for path in &written {
        let name = path.file_name().unwrap();
        let text = fs::read_to_string(path).unwrap();
        assert_eq!(text, fs::read_to_string(b.path().join(name)).unwrap());
        let parsed = Code::from_text(&text).unwrap();
        assert!(r.classes.iter().any(|c| c.code == parsed && class_file_name(c) == name.to_str().unwrap()));
    }
    let csv = fs::read_to_string(a.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("size,count\n1,1\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["classes"], r.total());
    assert_eq!(manifest["maximal"], 4);
    assert_eq!(manifest["certificate_version"], 1);
    assert_eq!(manifest["status"]["state"], "complete");

    let c = tempfile::tempdir().unwrap();
    assert_eq!(write_census(c.path(), &r, true).unwrap().len(), 4);
    assert_eq!(fs::read_to_string(c.path().join("summary.csv")).unwrap(), "size,count\n4,1\n5,1\n7,1\n12,1\n");
}
