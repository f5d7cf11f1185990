use cherednik_ffi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::ptr;

unsafe fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    cherednik_string_free(ptr);
    s
}

unsafe fn last_error() -> String {
    let ptr = cherednik_last_error();
    assert!(!ptr.is_null());
    CStr::from_ptr(ptr).to_str().unwrap().to_string()
}

#[test]
fn build_query_and_free() {
    unsafe {
        let mut model: *mut CherednikModel = ptr::null_mut();
        assert_eq!(cherednik_model_build(4, 3, &mut model), CHEREDNIK_OK);
        assert!(!model.is_null());

        let mut dim = 0u64;
        assert_eq!(cherednik_model_dimension(model, &mut dim), CHEREDNIK_OK);
        assert_eq!(dim, 16);

        let mut mu = 0u32;
        assert_eq!(cherednik_model_mu(model, &mut mu), CHEREDNIK_OK);
        assert_eq!(mu, 3);

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(cherednik_model_json(model, &mut json), CHEREDNIK_OK);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["total_dim"], 16);
        assert_eq!(doc["c"], "4/3");

        cherednik_model_free(model);
    }
}

#[test]
fn rejected_parameters_set_the_error_message() {
    unsafe {
        let mut model: *mut CherednikModel = ptr::null_mut();
        assert_eq!(
            cherednik_model_build(4, 2, &mut model),
            CHEREDNIK_INVALID_PARAMETER
        );
        assert!(model.is_null());
        assert!(last_error().contains("coprime"));

        assert_eq!(
            cherednik_model_build(4, 3, ptr::null_mut()),
            CHEREDNIK_NULL_POINTER
        );

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            cherednik_catalan_json(6, 3, &mut json),
            CHEREDNIK_INVALID_PARAMETER
        );
    }
}

#[test]
fn filtration_and_character_tables() {
    unsafe {
        let mut model: *mut CherednikModel = ptr::null_mut();
        assert_eq!(cherednik_model_build(4, 3, &mut model), CHEREDNIK_OK);

        let mut json: *mut c_char = ptr::null_mut();
        let kind = CString::new("a").unwrap();
        assert_eq!(
            cherednik_filtration_json(model, kind.as_ptr(), &mut json),
            CHEREDNIK_OK
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["kind"], "a");
        assert_eq!(doc["levels"], 4);

        let bad = CString::new("geom").unwrap();
        assert_eq!(
            cherednik_filtration_json(model, bad.as_ptr(), &mut json),
            CHEREDNIK_INVALID_PARAMETER
        );

        assert_eq!(
            cherednik_character_json(model, kind.as_ptr(), &mut json),
            CHEREDNIK_OK
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["invariant"].as_array().unwrap().len(), 5);

        cherednik_model_free(model);
    }
}

#[test]
fn inductive_kind_needs_m_above_n() {
    unsafe {
        let mut model: *mut CherednikModel = ptr::null_mut();
        assert_eq!(cherednik_model_build(3, 4, &mut model), CHEREDNIK_OK);
        let mut json: *mut c_char = ptr::null_mut();
        let kind = CString::new("ind").unwrap();
        assert_eq!(
            cherednik_filtration_json(model, kind.as_ptr(), &mut json),
            CHEREDNIK_INVALID_PARAMETER
        );
        assert!(last_error().contains("m > n"));
        cherednik_model_free(model);
    }
}

#[test]
fn catalan_and_lattice_reports() {
    unsafe {
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(cherednik_catalan_json(4, 3, &mut json), CHEREDNIK_OK);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["count"], 5);
        assert_eq!(doc["formula"], "5");

        assert_eq!(cherednik_lattice_json(5, 3, &mut json), CHEREDNIK_OK);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert!(doc["counterexample"].is_null());
        assert!(!doc["identities"].as_array().unwrap().is_empty());

        assert_eq!(
            cherednik_lattice_json(7, 3, &mut json),
            CHEREDNIK_INVALID_PARAMETER
        );
    }
}

#[test]
fn verify_suite_runs_over_the_boundary() {
    unsafe {
        let mut json: *mut c_char = ptr::null_mut();
        let suite = CString::new("catalan").unwrap();
        assert_eq!(cherednik_verify_json(suite.as_ptr(), &mut json), CHEREDNIK_OK);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert!(doc.as_array().unwrap().iter().all(|r| r["passed"] == true));

        let bad = CString::new("everything").unwrap();
        assert_eq!(
            cherednik_verify_json(bad.as_ptr(), &mut json),
            CHEREDNIK_INVALID_PARAMETER
        );
    }
}

#[test]
fn committed_header_matches_the_generated_one() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file(Path::new(crate_dir).join("cbindgen.toml")).unwrap();
    let header = cbindgen::Builder::new()
        .with_crate(crate_dir)
        .with_config(config)
        .generate()
        .unwrap();
    let mut buf = Vec::new();
    header.write(&mut buf);
    let generated = String::from_utf8(buf).unwrap();
    let path = Path::new(crate_dir).join("include/cherednik.h");
    if std::env::var("CHEREDNIK_WRITE_HEADER").is_ok() {
        std::fs::write(&path, &generated).unwrap();
        return;
    }
    let committed = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        committed, generated,
        "include/cherednik.h is stale, rerun with CHEREDNIK_WRITE_HEADER=1"
    );
}
