use std::ffi::{CStr, CString};
use std::ptr;

use transversal_lab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tl_last_error()) }.to_string_lossy().into_owned()
}

fn catalog(key: &str) -> *mut TlGroup {
    let key = CString::new(key).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { tl_group_catalog(key.as_ptr(), &mut g) }, TL_OK);
    g
}

#[test]
fn parse_and_query_a_group() {
    let text = CString::new("degree 4\ngen (1 2 3 4)\ngen (1 2)\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(tl_group_parse(text.as_ptr(), &mut g), TL_OK);
        assert_eq!(tl_group_degree(g), 4);
        let mut s = ptr::null_mut();
        assert_eq!(tl_group_order(g, &mut s), TL_OK);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "24");
        tl_string_free(s);
        let mut count = 0usize;
        assert_eq!(tl_orbit_count(g, 2, &mut count), TL_OK);
        assert_eq!(count, 1);
        tl_group_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("degree 3\ngen 2 2 1\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(tl_group_parse(bad.as_ptr(), &mut g), TL_ERR_PARSE);
        assert!(g.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());
        let sz = CString::new("Sz,32").unwrap();
        assert_eq!(tl_group_catalog(sz.as_ptr(), &mut g), TL_ERR_UNAVAILABLE);
        assert_eq!(tl_group_parse(ptr::null(), &mut g), TL_ERR_NULL);
        let mut v = 0;
        assert_eq!(tl_ket(ptr::null(), 2, 0, &mut v), TL_ERR_NULL);
    }
}

#[test]
fn verdicts_through_the_c_interface() {
    let agl = catalog("AGL,4,2");
    let mut v = -1;
    unsafe {
        for (k, want) in [(4, TL_YES), (5, TL_NO)] {
            assert_eq!(tl_ket(agl, k, 0, &mut v), TL_OK);
            assert_eq!(v, want);
        }
        assert_eq!(tl_kut(agl, 4, 0, &mut v), TL_OK);
        assert_eq!(v, TL_NO);
        // a cap of one node leaves M24 at k=8 undecided
        let m24 = catalog("M24");
        assert_eq!(tl_ket(m24, 8, 1, &mut v), TL_OK);
        assert_eq!(v, TL_UNKNOWN);
        assert!(last_error().contains("node cap"));
        tl_group_free(m24);
        let b = [1usize, 2];
        assert_eq!(tl_regular(agl, b.as_ptr(), b.len(), &mut v), TL_OK);
        assert_eq!(v, TL_YES);
        let out = [0usize, 2];
        assert_eq!(tl_regular(agl, out.as_ptr(), out.len(), &mut v), TL_ERR_INVALID_ARGUMENT);
        tl_group_free(agl);
    }
}

#[test]
fn run_and_verify_a_report() {
    let args: Vec<CString> = ["regular", "--catalog", "PSL,3,3", "--image-set-witness", "4", "--deterministic"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut json = ptr::null_mut();
    let mut exit = -1;
    unsafe {
        assert_eq!(tl_run(ptrs.len(), ptrs.as_ptr(), &mut json, &mut exit), TL_OK);
        assert_eq!(exit, 0);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        assert!(text.contains("\"verdict\": \"not-regular\""));
        assert_eq!(tl_verify_report(json), TL_OK);
        tl_string_free(json);
        let forged = CString::new(text.replace("\"not-regular\"", "\"regular\"")).unwrap();
        assert_eq!(tl_verify_report(forged.as_ptr()), TL_ERR_INVALID_CERTIFICATE);
    }
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/transversal_lab.h")).unwrap();
    for name in ["tl_group_parse", "tl_ket", "tl_regular", "tl_run", "tl_verify_report", "TL_ERR_INVALID_CERTIFICATE", "typedef struct TlGroup TlGroup"] {
        assert!(h.contains(name), "{} missing from header", name);
    }
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = std::env::temp_dir().join(format!("tl_header_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"transversal_lab.h\"\nint main(void) { TlGroup *g = 0; int v; return tl_ket(g, 2, 0, &v) == TL_ERR_NULL ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(&cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipped"),
    }
}
