//! Shared helpers for integration tests.

pub mod golden_eh;

use std::path::PathBuf;

use center_scope::exact_linalg::IntMatrix;
use center_scope::fusion_data::TwoCategoryData;
use center_scope::io;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> TwoCategoryData {
    let file = match io::read_input(&fixture_path(name)).unwrap() {
        io::InputFile::Fusion(f) => f,
        io::InputFile::Problem(_) => panic!("{name} is not fusion data"),
    };
    io::to_two_category(&file).unwrap()
}

pub fn int_matrix<const R: usize, const C: usize>(rows: &[[i64; C]; R]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    IntMatrix::from_i64_rows(&rows).unwrap()
}
