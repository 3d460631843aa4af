//! The documented command-line invocations and their frozen outputs.

use std::path::PathBuf;
use std::process::Command;

const T12: &str = "64,0,0,0,0,0,0,0,0,0,0,0,1";
const T14: &str = "128,0,0,0,0,0,0,0,0,0,0,0,0,0,1";
const POWER_ACCEPTED: &str = "562949953421312,61572651155456,33672543600640,2961379950592,835471802368,58731266048,11184431104,614899840,87378368,3584672,398384,11032,980,14,1";
const POWER_REJECTED: &str = "128,448,1120,1904,2632,2884,2674,2045,1337,721,329,119,35,7,1";

pub fn cases() -> Vec<(&'static str, Vec<String>)> {
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("check_weil_t2_plus_2", v(&["check-weil", "--q", "2", "2,0,1"])),
        ("check_weil_negative", v(&["check-weil", "--q", "2", "2,3,1"])),
        ("check_weil_t12_plus_64", v(&["check-weil", "--q", "2", T12])),
        ("check_weil_symmetric_form", v(&["check-weil", "q=3^1; a=1,3"])),
        ("check_weil_parse_error", v(&["check-weil", "--q", "2", "2,x,1"])),
        ("bounds12_zero", v(&["bounds12", "--q", "2", "--a", "0,0,0,0,0,0"])),
        ("classify14_ordinary", v(&["classify14", "q=2^1; a=1,0,0,0,0,0,1"])),
        ("classify14_unit_root_cubic", v(&["classify14", "q=2^1; a=1,0,-1,0,0,0,0"])),
        ("classify14_power_accepted", v(&["classify14", "--q", "2^7", POWER_ACCEPTED])),
        ("classify14_power_rejected", v(&["classify14", "--q", "2", POWER_REJECTED])),
        ("classify14_binomial", v(&["classify14", "--q", "2", T14])),
        ("polygon_supersingular", v(&["polygon", "--p", "2", T14])),
        ("polygon_ordinary", v(&["polygon", "--q", "2", "q=2^1; a=1,0,0,0,0,0,1"])),
        ("polygon_embedded_q", v(&["polygon", "q=2^1; a=1,0,-1,0,0,0,0"])),
        ("enumerate_q3", v(&["enumerate", "--degree", "2", "--q", "3", "--box", "-4:4", "--filter", "weil"])),
        (
            "enumerate_q2_json",
            v(&["enumerate", "--degree", "2", "--q", "2", "--box", "-3:3", "--filter", "weil", "--format", "json"]),
        ),
        ("cross_check_degree4", v(&["cross-check", "--degree", "4", "--q", "2", "--box", "-3:3", "--filter", "weil"])),
        // read-only and never populated, so the result is Skipped
        ("lmfdb_cold_cache", v(&["lmfdb", "--g", "1", "--q", "2", "--cache-dir", "tests/golden/no-cache"])),
    ]
}

pub fn render(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_weilpoly"))
        .args(args)
        .output()
        .expect("binary runs");
    format!(
        "$ weilpoly {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

/// Names of the invocations whose output differs from the stored golden;
/// with `update` the goldens are rewritten instead.
pub fn stale(update: bool) -> Vec<&'static str> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut stale = Vec::new();
    for (name, args) in cases() {
        let path = dir.join(format!("{name}.txt"));
        let got = render(&args);
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            stale.push(name);
        }
    }
    stale
}
