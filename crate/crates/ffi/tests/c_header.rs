//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "sinegap.h"

int main(void) {
    SgContext *ctx = sg_context_new();
    SgResult r;
    if (sg_log_det(ctx, 1.0, 0.5, &r) != SG_STATUS_OK) return 1;
    if (fabs(r.ln_d + 0.3698024040266) > 1e-10) return 2;
    if (sg_log_det(ctx, -1.0, 0.5, &r) != SG_STATUS_DOMAIN) return 3;
    if (sg_last_error_message() == NULL) return 4;
    sg_context_free(ctx);
    printf("%s\n", sg_status_name(SG_STATUS_REGIME));
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libsinegap_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "regime");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("sinegap-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
