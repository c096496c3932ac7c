//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "selberg_periods.h"

int main(void) {
    double norms[] = {4.0}, wr[] = {1.0}, wi[] = {0.0};
    SpSpectrum *h = NULL;
    if (sp_spectrum_from_norms(norms, wr, wi, 1, &h) != SP_STATUS_OK) return 10;
    SpSeriesValue v;
    SpComplex s = {2.0, 0.0};
    if (sp_eval_xi(h, 1, s, 1e-12, &v) != SP_STATUS_OK) return 11;
    s.re = 0.5;
    if (sp_eval_xi(h, 1, s, 1e-12, &v) != SP_STATUS_DOMAIN) return 12;
    char buf[128];
    sp_last_error_message(buf, sizeof buf);
    sp_spectrum_free(h);
    s.re = 2.0;
    sp_spectrum_from_norms(norms, wr, wi, 1, &h);
    sp_eval_xi(h, 1, s, 1e-12, &v);
    sp_spectrum_free(h);
    printf("%.17g\n", v.value.re);
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let target = dir.parent()?;
    let mut cmd = Command::new(env!("CARGO"));
    cmd.args(["build", "-q", "-p", "selberg_periods_ffi", "--lib", "--target-dir"])
        .arg(target);
    if dir.file_name()? == "release" {
        cmd.arg("--release");
    }
    if !cmd.status().ok()?.success() {
        return None;
    }
    let lib = dir.join("libselberg_periods_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("could not build the static library; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("client.c");
    let bin = tmp.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let v: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((v - 1.0 / 15.0).abs() < 1e-16);
}
