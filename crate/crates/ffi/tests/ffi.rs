//! The C ABI driven from Rust, plus a C program compiled against the
//! generated header and the static library.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cmpairs_ffi::*;

const EX: &str = "\
ring R = poly(x,y)/(x*y);
ideal I = (x);
module M = quotient(R, I);
module N = coker(R, [[x]], shifts=[(0,1)]);
pair P = (M, N) wrt I;
pair Q = (R, N) wrt I;
";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cmp_last_error()).to_string_lossy().into_owned() }
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s).to_string_lossy().into_owned() };
    unsafe { cmp_string_free(s) };
    out
}

fn load(src: &str) -> *mut CmpDocument {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { cmp_document_load(c(src).as_ptr(), &mut doc) }, CmpStatus::Ok, "{}", last_error());
    doc
}

#[test]
fn pair_invariants_through_the_abi() {
    let doc = load(EX);
    unsafe {
        assert_eq!(cmp_document_pair_count(doc), 2);
        assert_eq!(take(cmp_document_pair_name(doc, 1)), "Q");
        assert!(cmp_document_pair_name(doc, 2).is_null());

        let mut v = CmpExtNat { kind: CmpExtKind::NegInfinite, value: 99 };
        assert_eq!(cmp_pair_depth(doc, c("P").as_ptr(), &mut v), CmpStatus::Ok);
        assert_eq!(v, CmpExtNat { kind: CmpExtKind::Finite, value: 0 });
        assert_eq!(cmp_pair_cd(doc, c("P").as_ptr(), &mut v), CmpStatus::Ok);
        assert_eq!(v.kind, CmpExtKind::Infinite);
        assert_eq!(cmp_pair_cd(doc, c("Q").as_ptr(), &mut v), CmpStatus::Ok);
        assert_eq!(v, CmpExtNat { kind: CmpExtKind::Finite, value: 0 });

        let mut s = ptr::null_mut();
        assert_eq!(cmp_pair_verdict(doc, c("P").as_ptr(), &mut s), CmpStatus::Ok);
        assert_eq!(take(s), "No: depth=0, cd=Infinite(period 2)");

        assert_eq!(cmp_pair_report_json(doc, c("P").as_ptr(), 0, &mut s), CmpStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report["cd"]["value"]["kind"], "infinite");
        assert_eq!(report["verdict"]["verdict"], "No");

        let mut flag = -1;
        assert_eq!(cmp_module_is_semidualizing(doc, c("R").as_ptr(), 4, &mut flag), CmpStatus::Ok);
        assert_eq!(flag, 1);
        assert_eq!(cmp_module_is_semidualizing(doc, c("M").as_ptr(), 4, &mut flag), CmpStatus::Ok);
        assert_eq!(flag, 0);
        cmp_document_free(doc);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut doc = ptr::null_mut();
        let bad = c("ring R = poly(x,y)/(x*y);\nmodule Bad = coker(R, [[x + 1]]);\n");
        assert_eq!(cmp_document_load(bad.as_ptr(), &mut doc), CmpStatus::Parse);
        assert!(doc.is_null());
        assert!(last_error().contains("2:25"), "{}", last_error());
        assert_eq!(cmp_document_load(ptr::null(), &mut doc), CmpStatus::NullArgument);
        assert_eq!(cmp_document_load(bad.as_ptr(), ptr::null_mut()), CmpStatus::NullArgument);
        assert_eq!(cmp_document_load_file(c("/nonexistent.cm").as_ptr(), &mut doc), CmpStatus::Io);

        let doc = load(EX);
        let mut v = CmpExtNat { kind: CmpExtKind::Finite, value: 0 };
        assert_eq!(cmp_pair_cd(doc, c("Z").as_ptr(), &mut v), CmpStatus::NotFound);
        assert!(last_error().contains("`Z`"));
        assert_eq!(cmp_pair_cd(ptr::null(), c("P").as_ptr(), &mut v), CmpStatus::NullArgument);
        let invalid = [0xffu8, 0];
        assert_eq!(cmp_pair_cd(doc, invalid.as_ptr().cast(), &mut v), CmpStatus::InvalidUtf8);
        assert_eq!(cmp_pair_cd(doc, c("P").as_ptr(), &mut v), CmpStatus::Ok);
        assert_eq!(last_error(), "");
        cmp_document_free(doc);
        cmp_document_free(ptr::null_mut());
        cmp_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex.cm");
    std::fs::write(&path, format!("{EX}expect P.cd = infinite [paper];\nexpect Q.verdict = yes(0) [paper];\n")).unwrap();
    let (mut json, mut passed) = (ptr::null_mut(), -1);
    let p = c(path.to_str().unwrap());
    assert_eq!(unsafe { cmp_verify(p.as_ptr(), &mut json, &mut passed) }, CmpStatus::Ok, "{}", last_error());
    assert_eq!(passed, 1);
    let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(report["entries"].as_array().unwrap().len(), 2);
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libcmpairs_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "No: depth=0, cd=Infinite(period 2)");
}
