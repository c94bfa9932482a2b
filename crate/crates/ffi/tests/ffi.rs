use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hardy_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hardy_last_error()) }.to_string_lossy().into_owned()
}

fn compact() -> *mut HardyCandidateSet {
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { hardy_candidate_set_compact(0.25, 0.1, &mut set) }, HardyStatus::Ok);
    set
}

#[test]
fn scalar_functions() {
    let mut d = 0.0;
    unsafe {
        assert_eq!(hardy_pseudo_distance(0.5, 0.0, -0.5, 0.0, &mut d), HardyStatus::Ok);
        assert!((d - 0.8).abs() < 1e-15);
        assert_eq!(hardy_alpha_star(0.5, &mut d), HardyStatus::Ok);
        assert!((d - (0.8f64.ln() / 0.5f64.ln())).abs() < 1e-14);

        let (re, im) = ([0.5], [0.0]);
        assert_eq!(hardy_blaschke_log_abs(re.as_ptr(), im.as_ptr(), 1, 0.0, 0.0, &mut d), HardyStatus::Ok);
        assert!((d - 0.5f64.ln()).abs() < 1e-15);

        let (s, e) = ([0.0], [std::f64::consts::PI]);
        assert_eq!(hardy_harmonic_omega(s.as_ptr(), e.as_ptr(), 1, 0.0, 0.0, &mut d), HardyStatus::Ok);
        assert!((d - 0.5).abs() < 1e-14);
    }
    let v = unsafe { CStr::from_ptr(hardy_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn coefficients_reproduce_constants() {
    let (re, im) = ([0.1, -0.3, 0.0], [0.2, 0.1, -0.4]);
    let (mut cr, mut ci) = ([0.0; 3], [0.0; 3]);
    for p in [2.0, f64::INFINITY] {
        let st = unsafe {
            hardy_interp_coefficients(re.as_ptr(), im.as_ptr(), 3, p, 0.2, 0.3, cr.as_mut_ptr(), ci.as_mut_ptr())
        };
        assert_eq!(st, HardyStatus::Ok);
        assert!(cr.iter().chain(&ci).all(|x| x.is_finite()));
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut d = 0.0;
    unsafe {
        assert_eq!(hardy_pseudo_distance(1.0, 0.0, 0.0, 0.0, &mut d), HardyStatus::OutsideDisk);
        assert!(!last_error().is_empty());
        assert_eq!(hardy_alpha_star(0.5, ptr::null_mut()), HardyStatus::NullPointer);
        assert!(last_error().contains("null"));

        let (re, im) = ([0.1, 0.1], [0.0, 0.0]);
        let mut set = ptr::null_mut();
        let st = hardy_candidate_set_new(re.as_ptr(), im.as_ptr(), 2, ptr::null(), 0, &mut set);
        assert_eq!(st, HardyStatus::DuplicatePoint);
        assert!(set.is_null());

        let path = CString::new("/nonexistent/points.json").unwrap();
        assert_eq!(hardy_candidate_set_load(path.as_ptr(), &mut set), HardyStatus::Io);

        assert_eq!(hardy_candidate_set_len(ptr::null()), 0);
        hardy_candidate_set_free(ptr::null_mut());
        hardy_scan_free(ptr::null_mut());
    }
}

#[test]
fn scan_and_sandwich() {
    let set = compact();
    unsafe {
        assert_eq!(hardy_candidate_set_len(set), 21);
        let mut scan = ptr::null_mut();
        assert_eq!(hardy_scan(set, 5, true, 100_000, &mut scan), HardyStatus::Ok);
        assert_eq!(hardy_scan_len(scan), 5);
        let mut rec = HardyRecord::default();
        for i in 0..5 {
            assert_eq!(hardy_scan_record(scan, i, &mut rec), HardyStatus::Ok);
            assert_eq!(rec.n, i + 1);
            assert_eq!(rec.method, HardyMethod::BruteForce as u32);
            assert!(rec.log_m.is_finite());
        }
        assert_eq!(hardy_scan_record(scan, 5, &mut rec), HardyStatus::InvalidArgument);

        // brute force needs C(21, n) within the budget
        let mut small = ptr::null_mut();
        assert_eq!(hardy_scan(set, 5, true, 100, &mut small), HardyStatus::BudgetExceeded);
        assert!(small.is_null());

        assert_eq!(hardy_scan_record(scan, 0, &mut rec), HardyStatus::Ok);
        let eps = 0.5 * rec.log_m.exp();
        let mut b = HardySandwich::default();
        let st = hardy_sandwich(set, scan, eps.min(0.1), 0.5, 2.0, 7, 100_000, &mut b);
        assert_eq!(st, HardyStatus::Ok, "{}", last_error());
        assert!(b.lower_log <= b.upper_certified_log + 1e-9);
        assert!(b.lower_feasible);

        hardy_scan_free(scan);
        hardy_candidate_set_free(set);
    }
}

/// Builds the C smoke program against the generated header and the static
/// library, when both a C compiler and the archive are available.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libhardy_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("n=4"));
    assert!(stdout.trim_end().ends_with(env!("CARGO_PKG_VERSION")));
}
