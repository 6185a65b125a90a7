//! Rewrites setup files in canonical form.

use wrapcat_core::io::SetupFile;

fn main() {
    let mut failed = false;
    for path in std::env::args().skip(1) {
        match SetupFile::read(std::path::Path::new(&path)) {
            Ok(f) => std::fs::write(&path, f.to_json_string()).expect("write"),
            Err(e) => {
                eprintln!("{path}: {e}");
                failed = true;
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
