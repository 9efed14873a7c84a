use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use polygroup_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    pg_string_free(s);
    out
}

#[test]
fn groups_and_elements() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pg_group_parse(c("freeprod").as_ptr(), &mut g), PgStatus::Ok);
        assert_eq!(take(pg_group_describe(g)), "freeprod");
        let (mut x, mut y, mut xy) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(pg_element_parse(g, c("a b^2").as_ptr(), &mut x), PgStatus::Ok);
        assert_eq!(pg_element_parse(g, c("b^-2 a").as_ptr(), &mut y), PgStatus::Ok);
        assert_eq!(pg_element_mul(x, y, &mut xy), PgStatus::Ok);
        assert_eq!(take(pg_element_format(xy)), "e");
        for h in [x, y, xy] {
            pg_element_free(h);
        }
        pg_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pg_group_parse(c("no-such-group").as_ptr(), &mut g), PgStatus::Parse);
        assert!(g.is_null());
        assert!(!take(pg_last_error()).is_empty());
        assert_eq!(pg_group_parse(ptr::null(), &mut g), PgStatus::NullPointer);
        assert_eq!(pg_group_parse(c("int:2").as_ptr(), ptr::null_mut()), PgStatus::NullPointer);
        assert_eq!(pg_report_passed(ptr::null()), -1);
        let mut f = ptr::null_mut();
        assert_eq!(pg_function_builtin(c("heisenberg").as_ptr(), &mut f), PgStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(pg_check(f, 7, 1, c("(1,0,0)").as_ptr(), c("e").as_ptr(), &mut r), PgStatus::InvalidArgument);
        pg_function_free(f);
        // freeing null is a no-op
        pg_group_free(ptr::null_mut());
        pg_string_free(ptr::null_mut());
    }
}

#[test]
fn heisenberg_check_through_the_abi() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(pg_function_builtin(c("heisenberg").as_ptr(), &mut f), PgStatus::Ok);
        let steps = c("(1,0,0); (0,1,0)");
        let bases = c("(0,0,0); (1,2,3)");
        let mut r = ptr::null_mut();
        assert_eq!(pg_check(f, 1, 1, steps.as_ptr(), bases.as_ptr(), &mut r), PgStatus::Ok);
        assert_eq!(pg_report_passed(r), 1);
        pg_report_free(r);
        assert_eq!(pg_check(f, 0, 1, steps.as_ptr(), bases.as_ptr(), &mut r), PgStatus::Ok);
        assert_eq!(pg_report_passed(r), 0);
        assert!(pg_report_witness_count(r) > 0);
        let json: serde_json::Value = serde_json::from_str(&take(pg_report_to_json(r))).unwrap();
        assert_eq!(json["verdict"], "fail");
        pg_report_free(r);

        let mut g = ptr::null_mut();
        let mut x = ptr::null_mut();
        pg_group_parse(c("heisenberg").as_ptr(), &mut g);
        pg_element_parse(g, c("(1,1,1)").as_ptr(), &mut x);
        let mut v = ptr::null_mut();
        assert_eq!(pg_function_eval(f, x, &mut v), PgStatus::Ok);
        assert_eq!(take(v), "-1");
        pg_element_free(x);
        pg_group_free(g);
        pg_function_free(f);
    }
}

#[test]
fn config_runs() {
    let cfg = r#"{"group": "int:1", "function": {"poly": [{"coeff": "1", "exps": [3]}]},
                  "check": {"kind": "poly", "degree": 3, "radius": 3, "coeff_bound": 3}}"#;
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(pg_check_config(c(cfg).as_ptr(), &mut r), PgStatus::Ok);
        assert_eq!(pg_report_passed(r), 1);
        pg_report_free(r);
        assert_eq!(pg_check_config(c("{\"group\": 1}").as_ptr(), &mut r), PgStatus::Parse);
    }
}

#[test]
fn representations() {
    let text = "dim 3\ngen x\n1 1 0\n0 1 0\n0 0 1\ngen y\n1 0 0\n0 1 1\n0 0 1\n";
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(pg_rep_parse(c(text).as_ptr(), &mut rep), PgStatus::Ok);
        let mut d = 0usize;
        assert_eq!(pg_rep_p_dim(rep, 1, &mut d), PgStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(pg_rep_sp_dim(rep, 2, 3, &mut d), PgStatus::Ok);
        assert_eq!(d, 3);
        let mut ok = false;
        assert_eq!(pg_rep_certify_degree(rep, 2, &mut ok), PgStatus::Ok);
        assert!(ok);
        assert_eq!(pg_rep_certify_degree(rep, 1, &mut ok), PgStatus::Ok);
        assert!(!ok);
        let mut f = ptr::null_mut();
        assert_eq!(pg_function_matrix_element(rep, c("0,0,1").as_ptr(), c("1,0,0").as_ptr(), &mut f), PgStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(
            pg_check(f, 0, 2, c("x; y; x^-1; y^-1").as_ptr(), c("e; x y; y^2 x^-1").as_ptr(), &mut r),
            PgStatus::Ok
        );
        assert_eq!(pg_report_passed(r), 1);
        pg_report_free(r);
        assert_eq!(
            pg_function_matrix_element(rep, c("0,1").as_ptr(), c("1,0,0").as_ptr(), &mut f),
            PgStatus::InvalidArgument
        );
        pg_rep_free(rep);
        assert_eq!(pg_rep_parse(c("dim 2\ngen s\n1 2\n2 4\n").as_ptr(), &mut rep), PgStatus::InvalidArgument);
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/polygroup.h")
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct PgGroup PgGroup",
        "typedef struct PgReport PgReport",
        "PG_STATUS_PANIC",
        "pg_check_config",
        "pg_rep_certify_degree",
        "pg_string_free",
        "pg_last_error",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

/// Compiles a C client against the header and the static library when a C
/// compiler and the archive are available.
#[test]
fn c_client_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let archive = profile_dir.join("libpolygroup_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "polygroup.h"
int main(void) {
    PgFunction *f = NULL;
    PgReport *r = NULL;
    if (pg_function_builtin("heisenberg", &f) != PG_STATUS_OK) return 10;
    if (pg_check(f, 1, 1, "(1,0,0); (0,1,0)", "(0,0,0)", &r) != PG_STATUS_OK) return 11;
    int passed = pg_report_passed(r);
    pg_report_free(r);
    pg_function_free(f);
    PgGroup *g = NULL;
    if (pg_group_parse("bogus", &g) != PG_STATUS_PARSE) return 12;
    char *msg = pg_last_error();
    if (msg == NULL) return 13;
    pg_string_free(msg);
    return passed == 1 ? 0 : 14;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to build");
    assert_eq!(Command::new(&bin).status().unwrap().code(), Some(0));
}
