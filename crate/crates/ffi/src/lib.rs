//! C ABI over `cmpairs`.
//!
//! Every function returns a [`CmpStatus`]; results go through out-pointers
//! that are written only on success. A document handle owns the rings,
//! modules and pairs of one parsed `.cm` source and is read-only after
//! loading, so it may be shared between threads. Strings returned to the
//! caller are NUL-terminated UTF-8 owned by the caller and released with
//! [`cmp_string_free`]. The message of the last failure on the calling
//! thread is available from [`cmp_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use cmpairs::dsl::{self, Env, PairDef};
use cmpairs::error::Error;
use cmpairs::homological::ExtendedNat;
use cmpairs::pair::{cd_pair, depth_pair, is_semidualizing, PairCaps};
use cmpairs::verifier::{self, SuiteOptions};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The source did not parse or elaborate; the message has `line:column`.
    Parse = 3,
    /// No pair or module of the given name.
    NotFound = 4,
    /// The computation failed or its hypotheses were not met.
    Computation = 5,
    /// A file could not be read.
    Io = 6,
    /// A bug: the library panicked. The handle stays valid.
    Internal = 7,
}

/// Kind of an extended natural number.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpExtKind {
    Finite = 0,
    /// Certified infinite.
    Infinite = 1,
    /// Nonzero at `value`, undecided above it.
    AtLeast = 2,
    /// The zero module.
    NegInfinite = 3,
}

/// `value` is meaningful for `Finite` and `AtLeast`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmpExtNat {
    pub kind: CmpExtKind,
    pub value: u64,
}

/// Opaque handle to a loaded document.
pub struct CmpDocument {
    env: Env,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CmpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => CmpStatus::Parse,
            _ => CmpStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, recording failures and containing panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CmpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            CmpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(&format!("internal error: {}", msg.unwrap_or_default()));
            CmpStatus::Internal
        }
    }
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(CmpStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(CmpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `doc` is null or a live handle from `cmp_document_load*`.
unsafe fn document<'a>(doc: *const CmpDocument) -> Result<&'a CmpDocument, Failure> {
    doc.as_ref().ok_or_else(|| Failure(CmpStatus::NullArgument, "document is null".into()))
}

fn out<T>(p: *mut T) -> Result<*mut T, Failure> {
    if p.is_null() { Err(Failure(CmpStatus::NullArgument, "output pointer is null".into())) } else { Ok(p) }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn pair<'a>(doc: &'a CmpDocument, name: &str) -> Result<&'a PairDef, Failure> {
    doc.env.pair(name).ok_or_else(|| Failure(CmpStatus::NotFound, format!("no pair named `{name}`")))
}

fn ext_nat(v: &ExtendedNat) -> CmpExtNat {
    match v {
        ExtendedNat::Finite(n) => CmpExtNat { kind: CmpExtKind::Finite, value: *n as u64 },
        ExtendedNat::Infinite(_) => CmpExtNat { kind: CmpExtKind::Infinite, value: 0 },
        ExtendedNat::AtLeast(n) => CmpExtNat { kind: CmpExtKind::AtLeast, value: *n as u64 },
        ExtendedNat::NegInfinite => CmpExtNat { kind: CmpExtKind::NegInfinite, value: 0 },
    }
}

fn load(src: &str, out_doc: *mut *mut CmpDocument) -> Result<(), Failure> {
    let env = dsl::load(src)?;
    // SAFETY: checked non-null by the caller.
    unsafe { *out_doc = Box::into_raw(Box::new(CmpDocument { env })) };
    Ok(())
}

/// Parses and elaborates `.cm` source text.
///
/// # Safety
/// `source` is a NUL-terminated string; `out_doc` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cmp_document_load(source: *const c_char, out_doc: *mut *mut CmpDocument) -> CmpStatus {
    guard(|| {
        let src = text(source, "source")?;
        load(src, out(out_doc)?)
    })
}

/// Reads, parses and elaborates a `.cm` file.
///
/// # Safety
/// `path` is a NUL-terminated string; `out_doc` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cmp_document_load_file(path: *const c_char, out_doc: *mut *mut CmpDocument) -> CmpStatus {
    guard(|| {
        let path = text(path, "path")?;
        let out_doc = out(out_doc)?;
        let src = std::fs::read_to_string(path).map_err(|e| Failure(CmpStatus::Io, format!("{path}: {e}")))?;
        load(&src, out_doc)
    })
}

/// Releases a document. Null is ignored.
///
/// # Safety
/// `doc` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmp_document_free(doc: *mut CmpDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// `depth_I(M, N)` of the named pair.
///
/// # Safety
/// `doc` is a live handle, `pair_name` a NUL-terminated string, `out_value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cmp_pair_depth(
    doc: *const CmpDocument,
    pair_name: *const c_char,
    out_value: *mut CmpExtNat,
) -> CmpStatus {
    guard(|| {
        let (doc, name, out_value) = (document(doc)?, text(pair_name, "pair name")?, out(out_value)?);
        let p = pair(doc, name)?;
        let d = depth_pair(&p.ideal, &p.m, &p.n)?;
        *out_value = ext_nat(&d);
        Ok(())
    })
}

/// `cd_I(M, N)` of the named pair with the default caps.
///
/// # Safety
/// As for [`cmp_pair_depth`].
#[no_mangle]
pub unsafe extern "C" fn cmp_pair_cd(
    doc: *const CmpDocument,
    pair_name: *const c_char,
    out_value: *mut CmpExtNat,
) -> CmpStatus {
    guard(|| {
        let (doc, name, out_value) = (document(doc)?, text(pair_name, "pair name")?, out(out_value)?);
        let p = pair(doc, name)?;
        *out_value = ext_nat(&cd_pair(&p.ideal, &p.m, &p.n)?.cd.value);
        Ok(())
    })
}

/// The Cohen-Macaulay verdict line, e.g. `No: depth=0, cd=Infinite(period 2)`.
///
/// # Safety
/// `doc` is a live handle, `pair_name` a NUL-terminated string, `out_text`
/// writable. Free the result with [`cmp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cmp_pair_verdict(
    doc: *const CmpDocument,
    pair_name: *const c_char,
    out_text: *mut *mut c_char,
) -> CmpStatus {
    guard(|| {
        let (doc, name, out_text) = (document(doc)?, text(pair_name, "pair name")?, out(out_text)?);
        let p = pair(doc, name)?;
        let r = cd_pair(&p.ideal, &p.m, &p.n)?;
        *out_text = owned_string(format!("{}: depth={}, cd={}", r.verdict, r.depth, r.cd.value));
        Ok(())
    })
}

/// The full invariant report of the pair as JSON. `ext_cap` of 0 keeps the
/// default Ext cap.
///
/// # Safety
/// As for [`cmp_pair_verdict`].
#[no_mangle]
pub unsafe extern "C" fn cmp_pair_report_json(
    doc: *const CmpDocument,
    pair_name: *const c_char,
    ext_cap: u32,
    out_json: *mut *mut c_char,
) -> CmpStatus {
    guard(|| {
        let (doc, name, out_json) = (document(doc)?, text(pair_name, "pair name")?, out(out_json)?);
        let p = pair(doc, name)?;
        let mut caps = PairCaps::for_ring(&p.ideal.ring);
        if ext_cap > 0 {
            caps.ext = ext_cap as usize;
        }
        let r = cmpairs::pair::cd_pair_with(&p.ideal, &p.m, &p.n, &caps)?;
        let json = serde_json::to_string(&r).map_err(|e| Failure(CmpStatus::Internal, e.to_string()))?;
        *out_json = owned_string(json);
        Ok(())
    })
}

/// Whether the named module (or ring) is semidualizing for Ext indices up
/// to `cap`: writes 1 or 0.
///
/// # Safety
/// `doc` is a live handle, `module_name` a NUL-terminated string,
/// `out_flag` writable.
#[no_mangle]
pub unsafe extern "C" fn cmp_module_is_semidualizing(
    doc: *const CmpDocument,
    module_name: *const c_char,
    cap: u32,
    out_flag: *mut i32,
) -> CmpStatus {
    guard(|| {
        let (doc, name, out_flag) = (document(doc)?, text(module_name, "module name")?, out(out_flag)?);
        let m = doc
            .env
            .module_named(name)
            .ok_or_else(|| Failure(CmpStatus::NotFound, format!("no module named `{name}`")))?;
        *out_flag = i32::from(is_semidualizing(&m, cap as usize)?.is_yes());
        Ok(())
    })
}

/// Runs the property suite over a `.cm` file or directory and returns the
/// JSON report. `out_passed` receives 1 when nothing failed.
///
/// # Safety
/// `path` is a NUL-terminated string; `out_json` and `out_passed` writable.
#[no_mangle]
pub unsafe extern "C" fn cmp_verify(path: *const c_char, out_json: *mut *mut c_char, out_passed: *mut i32) -> CmpStatus {
    guard(|| {
        let (path, out_json, out_passed) = (text(path, "path")?, out(out_json)?, out(out_passed)?);
        let corpus = verifier::load_corpus(&[PathBuf::from(path)])?;
        let report = verifier::run_suite(&corpus, &SuiteOptions::default())?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(CmpStatus::Internal, e.to_string()))?;
        *out_passed = i32::from(report.passed());
        *out_json = owned_string(json);
        Ok(())
    })
}

/// Number of pairs in the document.
///
/// # Safety
/// `doc` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmp_document_pair_count(doc: *const CmpDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.env.pairs.len())
}

/// Name of the pair at `index`, or null when out of range. Free with
/// [`cmp_string_free`].
///
/// # Safety
/// `doc` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmp_document_pair_name(doc: *const CmpDocument, index: usize) -> *mut c_char {
    doc.as_ref().and_then(|d| d.env.pairs.get(index)).map_or(ptr::null_mut(), |p| owned_string(p.name.clone()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cmp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The library version, a static string.
#[no_mangle]
pub extern "C" fn cmp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
