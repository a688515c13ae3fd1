use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use uqsln_ffi::*;

const CONFIG: &str = r#"{
    "N": 2, "m": 3,
    "classes": [{"id": "a", "base": [0.1, 0.2]}, {"id": "b", "base": 0.3}, {"id": "c", "base": [0.05, -0.1]}],
    "top_row": [["a", 0], ["b", 0]],
    "seed_lower_rows": [[["c", 0]]]
}"#;

fn last_error() -> String {
    unsafe { CStr::from_ptr(uq_last_error_message()) }.to_str().unwrap().to_string()
}

fn build(config: &str) -> Result<*mut UqModule, (UqStatus, String)> {
    let text = CString::new(config).unwrap();
    let mut module = ptr::null_mut();
    let status = unsafe { uq_module_from_json(text.as_ptr(), &mut module) };
    if status == UqStatus::Ok {
        Ok(module)
    } else {
        Err((status, last_error()))
    }
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { uq_string_free(s) };
    text
}

#[test]
fn module_lifecycle() {
    let module = build(CONFIG).unwrap();
    let mut dim = 0;
    let mut n = 0;
    unsafe {
        assert_eq!(uq_module_dim(module, &mut dim), UqStatus::Ok);
        assert_eq!(uq_module_n(module, &mut n), UqStatus::Ok);
    }
    assert_eq!((dim, n), (3, 2));

    let mut nnz = 0;
    assert_eq!(unsafe { uq_module_nnz(module, UqGenerator::F, 1, &mut nnz) }, UqStatus::Ok);
    assert!(nnz > 0);
    let (mut rows, mut cols, mut re, mut im) = (vec![0; nnz], vec![0; nnz], vec![0.0; nnz], vec![0.0; nnz]);
    let status = unsafe {
        uq_module_triplets(
            module,
            UqGenerator::F,
            1,
            rows.as_mut_ptr(),
            cols.as_mut_ptr(),
            re.as_mut_ptr(),
            im.as_mut_ptr(),
            nnz,
        )
    };
    assert_eq!(status, UqStatus::Ok);
    assert!(rows.iter().chain(&cols).all(|&k| k < dim));
    assert!(re.iter().zip(&im).all(|(a, b)| a.hypot(*b) > 0.0));

    let status = unsafe {
        uq_module_triplets(
            module,
            UqGenerator::F,
            1,
            rows.as_mut_ptr(),
            cols.as_mut_ptr(),
            re.as_mut_ptr(),
            im.as_mut_ptr(),
            nnz - 1,
        )
    };
    assert_eq!(status, UqStatus::BufferTooSmall);

    let mut residual = 1.0;
    assert_eq!(unsafe { uq_module_relation_residual(module, &mut residual) }, UqStatus::Ok);
    assert!(residual < 1e-9);

    let mut report = ptr::null_mut();
    assert_eq!(unsafe { uq_module_classify_json(module, 32, 0, &mut report) }, UqStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(report["family"], "periodic");

    unsafe { uq_module_free(module) };
}

#[test]
fn errors_map_to_status_codes() {
    let (status, message) = build(&CONFIG.replace("\"m\": 3", "\"m\": 3, \"eta\": 0.3")).unwrap_err();
    assert_eq!(status, UqStatus::InvalidConfig);
    assert!(message.contains("eta"), "{message}");

    assert_eq!(build("{").unwrap_err().0, UqStatus::InvalidConfig);

    let mut module = ptr::null_mut();
    assert_eq!(unsafe { uq_module_from_json(ptr::null(), &mut module) }, UqStatus::NullPointer);

    let mut dim = 0;
    assert_eq!(unsafe { uq_module_dim(ptr::null(), &mut dim) }, UqStatus::NullPointer);

    let module = build(CONFIG).unwrap();
    let mut nnz = 0;
    assert_eq!(unsafe { uq_module_nnz(module, UqGenerator::E, 2, &mut nnz) }, UqStatus::InvalidArgument);
    assert!(last_error().contains("outside"));
    unsafe { uq_module_free(module) };

    let mut out = 0u64;
    assert_eq!(unsafe { uq_sl3_flat_dimension(5, 9, &mut out) }, UqStatus::InvalidArgument);
}

#[test]
fn free_functions() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { uq_sympoly(1, 5, 2, &mut s) }, UqStatus::Ok);
    assert_eq!(take_string(s), "c1^5 - 5*c1^3 + 5*c1");
    let dims: Vec<u64> = (1..=5)
        .map(|p| {
            let mut d = 0;
            assert_eq!(unsafe { uq_sl3_flat_dimension(5, p, &mut d) }, UqStatus::Ok);
            d
        })
        .collect();
    assert_eq!(dims, vec![15, 18, 19, 18, 15]);
    unsafe {
        uq_string_free(ptr::null_mut());
        uq_module_free(ptr::null_mut());
    }
}

/// Compile and run a small C client against the generated header and the
/// static library built alongside this test.
#[test]
fn c_client() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("uqsln.h").exists());
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    // target/<profile>/deps/ffi-xxxx -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libuqsln_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("client.c");
    std::fs::write(
        &source,
        r#"
#include <stdio.h>
#include "uqsln.h"

int main(void) {
    const char *config =
        "{\"N\": 2, \"m\": 5, \"classes\": [{\"id\": \"a\", \"base\": 0.13}, {\"id\": \"b\", \"base\": 0.31},"
        " {\"id\": \"c\", \"base\": 0.22}], \"top_row\": [[\"a\", 0], [\"b\", 0]], \"seed_lower_rows\": [[[\"c\", 0]]]}";
    UqModule *module = NULL;
    if (uq_module_from_json(config, &module) != UQ_STATUS_OK) {
        fprintf(stderr, "%s\n", uq_last_error_message());
        return 1;
    }
    size_t dim = 0;
    double residual = 1.0;
    uq_module_dim(module, &dim);
    uq_module_relation_residual(module, &residual);
    uq_module_free(module);
    printf("%zu %d\n", dim, residual < 1e-9);
    if (uq_module_from_json("{", &module) != UQ_STATUS_INVALID_CONFIG) return 2;
    return 0;
}
"#,
    )
    .unwrap();
    let binary = dir.path().join("client");
    let status = Command::new(&cc)
        .arg(&source)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let output = Command::new(&binary).output().unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "5 1");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
