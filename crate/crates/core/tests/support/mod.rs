#![allow(dead_code)]

pub mod integer;
pub mod paths;

use std::path::PathBuf;

use wrapcat_core::io::SetupFile;
use wrapcat_core::setup::{choose_compatible_collection, CompatibleCollection, Strategy};
use wrapcat_core::wrap::ContinuationSystem;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> SetupFile {
    SetupFile::read(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub struct Loaded {
    pub file: SetupFile,
    pub delta: CompatibleCollection,
    pub cs: ContinuationSystem,
}

pub fn load(name: &str) -> Loaded {
    let file = fixture(name);
    let delta = choose_compatible_collection(&file.setup, Strategy::Lexicographic).unwrap();
    let cs = ContinuationSystem::build(&file.setup, &delta, file.continuation.as_ref().expect("continuation block")).unwrap();
    Loaded { file, delta, cs }
}
